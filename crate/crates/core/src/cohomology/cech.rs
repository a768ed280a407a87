//! Hypercohomology of line-bundle complexes through the Čech complex of
//! the standard cover, truncated to Laurent monomials with exponents
//! `>= -bound`.
//!
//! The Čech total complex splits, term by term, into finite face
//! complexes indexed by exponent vectors. On each of them we fix an acyclic
//! matching (iterated element matchings over the charts), and reduce the
//! total complex to its critical cells. Differentials between critical
//! cells are computed by following gradient paths, which only move forward
//! in the term index, so no cell outside the truncation is ever touched.

use std::collections::HashMap;

use crate::algebra::{Field, Matrix};
use crate::forms::{AmbientSpace, Degree};

use super::complex::LineBundleComplex;
use super::CohomologyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Invalid,
    Critical,
    /// Matched with a larger face.
    Lower,
    /// Matched with the smaller face `down`; `sign` is the Čech coefficient
    /// from `down` to this face.
    Upper {
        down: u8,
        sign: i8,
    },
}

/// Face structure of the cover and the matching for every sign pattern.
struct Cover {
    nvars: usize,
    charts: Vec<u8>,
    /// roles[s][face] for negative-variable mask `s`.
    roles: Vec<Vec<Role>>,
}

fn coface_sign(face: u8, j: usize) -> i8 {
    if (face & ((1u8 << j) - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl Cover {
    fn new(space: AmbientSpace) -> Cover {
        let charts = space.charts();
        let nc = charts.len();
        let nvars = space.nvars();
        let nfaces = 1usize << nc;
        let inv = |face: usize| -> u8 {
            (0..nc)
                .filter(|&c| face & (1 << c) != 0)
                .fold(0u8, |acc, c| acc | charts[c])
        };
        let mut roles = Vec::with_capacity(1 << nvars);
        for s in 0..(1u8 << nvars) {
            let valid = |face: usize| face != 0 && (s & !inv(face)) == 0;
            let mut role = vec![Role::Invalid; nfaces];
            let mut free: Vec<bool> = (0..nfaces).map(valid).collect();
            for v in 0..nc {
                for face in 0..nfaces {
                    let up = face | (1 << v);
                    if face & (1 << v) != 0 || !free[face] || !free[up] {
                        continue;
                    }
                    free[face] = false;
                    free[up] = false;
                    role[face] = Role::Lower;
                    role[up] = Role::Upper {
                        down: face as u8,
                        sign: coface_sign(face as u8, v),
                    };
                }
            }
            for face in 0..nfaces {
                if free[face] {
                    role[face] = Role::Critical;
                }
            }
            roles.push(role);
        }
        Cover { nvars, charts, roles }
    }

    fn role(&self, exps: &[i32; 4], face: u8) -> Role {
        let s = (0..self.nvars).fold(0u8, |acc, i| if exps[i] < 0 { acc | (1 << i) } else { acc });
        self.roles[s as usize][face as usize]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Cell {
    term: u16,
    copy: u32,
    exps: [i32; 4],
    face: u8,
}

type Column<E> = Vec<(u32, Vec<([i32; 4], E)>)>;

struct Engine<'a, F: Field> {
    field: &'a F,
    cover: Cover,
    offset: i32,
    /// columns[t][a]: nonzero entries of map t in column a, with monomials.
    columns: Vec<Vec<Column<F::Elem>>>,
}

fn pad(e: &[u32]) -> [i32; 4] {
    let mut out = [0i32; 4];
    for (o, &x) in out.iter_mut().zip(e) {
        *o = x as i32;
    }
    out
}

impl<'a, F: Field> Engine<'a, F> {
    fn new(field: &'a F, c: &LineBundleComplex<F>) -> Engine<'a, F> {
        let columns = c
            .maps()
            .iter()
            .map(|m| {
                (0..m.cols())
                    .map(|a| {
                        (0..m.rows())
                            .filter(|&b| !m.get(b, a).is_zero())
                            .map(|b| {
                                let terms = m.get(b, a).terms().iter().map(|(e, v)| (pad(e), v.clone())).collect();
                                (b as u32, terms)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Engine {
            field,
            cover: Cover::new(c.space()),
            offset: c.offset(),
            columns,
        }
    }

    fn degree_of(&self, cell: &Cell) -> i32 {
        self.offset + cell.term as i32 + cell.face.count_ones() as i32 - 1
    }

    /// Adds `coeff * d(cell)` to `w`, skipping cells matched upwards.
    fn add_boundary(
        &self,
        cell: &Cell,
        coeff: &F::Elem,
        skip: Option<u8>,
        w: &mut [HashMap<Cell, F::Elem>],
        queue: &mut [Vec<Cell>],
    ) {
        let f = self.field;
        let nc = self.cover.charts.len();
        for j in 0..nc {
            if cell.face & (1 << j) != 0 {
                continue;
            }
            let face = cell.face | (1 << j);
            if Some(face) == skip {
                continue;
            }
            let target = Cell { face, ..*cell };
            let c = if coface_sign(cell.face, j) > 0 {
                coeff.clone()
            } else {
                f.neg(coeff)
            };
            self.accumulate(target, c, w, queue);
        }
        let t = cell.term as usize;
        if t < self.columns.len() {
            let neg = cell.face.count_ones().is_multiple_of(2);
            let sc = if neg { f.neg(coeff) } else { coeff.clone() };
            for (b, monos) in &self.columns[t][cell.copy as usize] {
                for (delta, v) in monos {
                    let mut exps = cell.exps;
                    for k in 0..4 {
                        exps[k] += delta[k];
                    }
                    let target = Cell {
                        term: cell.term + 1,
                        copy: *b,
                        exps,
                        face: cell.face,
                    };
                    self.accumulate(target, f.mul(&sc, v), w, queue);
                }
            }
        }
    }

    fn accumulate(&self, target: Cell, c: F::Elem, w: &mut [HashMap<Cell, F::Elem>], queue: &mut [Vec<Cell>]) {
        let f = self.field;
        let role = self.cover.role(&target.exps, target.face);
        match role {
            Role::Lower | Role::Invalid => {}
            Role::Critical | Role::Upper { .. } => {
                let slot = &mut w[target.term as usize];
                match slot.get_mut(&target) {
                    Some(v) => *v = f.add(v, &c),
                    None => {
                        slot.insert(target, c);
                        if matches!(role, Role::Upper { .. }) {
                            queue[target.term as usize].push(target);
                        }
                    }
                }
            }
        }
    }

    /// Column of the reduced differential leaving the critical cell `start`.
    fn flow(&self, start: &Cell, nterms: usize) -> Result<Vec<(Cell, F::Elem)>, CohomologyError> {
        let f = self.field;
        let mut w: Vec<HashMap<Cell, F::Elem>> = vec![HashMap::new(); nterms];
        let mut queue: Vec<Vec<Cell>> = vec![Vec::new(); nterms];
        self.add_boundary(start, &f.one(), None, &mut w, &mut queue);
        let mut steps = 0usize;
        for t in start.term as usize..nterms {
            while let Some(y) = queue[t].pop() {
                let Some(lambda) = w[t].remove(&y) else {
                    continue;
                };
                if f.is_zero(&lambda) {
                    continue;
                }
                let Role::Upper { down, sign } = self.cover.role(&y.exps, y.face) else {
                    unreachable!("only upper cells are queued");
                };
                let x = Cell { face: down, ..y };
                // w -= (lambda / sign) d(x); the y-component cancels exactly.
                let factor = if sign > 0 { f.neg(&lambda) } else { lambda };
                self.add_boundary(&x, &factor, Some(y.face), &mut w, &mut queue);
                steps += 1;
                if steps > 50_000_000 {
                    return Err(CohomologyError::Internal("gradient flow does not terminate".into()));
                }
            }
        }
        let mut out = Vec::new();
        for slot in w {
            for (cell, v) in slot {
                if !f.is_zero(&v) && self.cover.role(&cell.exps, cell.face) == Role::Critical {
                    out.push((cell, v));
                }
            }
        }
        Ok(out)
    }
}

/// Exponent vectors of multidegree `d` with all entries `>= -bound`.
fn exponents(space: AmbientSpace, d: Degree, bound: u32) -> Vec<[i32; 4]> {
    let b = bound as i32;
    let mut acc: Vec<Vec<i32>> = vec![Vec::new()];
    for (g, dg) in space.groups().into_iter().zip(d.parts()) {
        let k = g.len();
        let total = dg + b * k as i32;
        if total < 0 {
            return Vec::new();
        }
        let mut block = Vec::new();
        compositions(k, total, &mut Vec::new(), &mut block);
        acc = acc
            .iter()
            .flat_map(|p| {
                block.iter().map(move |c: &Vec<i32>| {
                    let mut v = p.clone();
                    v.extend(c.iter().map(|x| x - b));
                    v
                })
            })
            .collect();
    }
    acc.into_iter()
        .map(|v| {
            let mut e = [0i32; 4];
            e[..v.len()].copy_from_slice(&v);
            e
        })
        .collect()
}

fn compositions(k: usize, total: i32, prefix: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
    if k == 1 {
        let mut v = prefix.clone();
        v.push(total);
        out.push(v);
        return;
    }
    for first in 0..=total {
        prefix.push(first);
        compositions(k - 1, total - first, prefix, out);
        prefix.pop();
    }
}

/// Dimensions of the hypercohomology groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypercohomology {
    pub min_degree: i32,
    pub dims: Vec<usize>,
    pub bound: u32,
}

impl Hypercohomology {
    pub fn get(&self, k: i32) -> usize {
        if k < self.min_degree {
            return 0;
        }
        self.dims.get((k - self.min_degree) as usize).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &h)| {
                if (self.min_degree + i as i32).rem_euclid(2) == 0 {
                    h as i64
                } else {
                    -(h as i64)
                }
            })
            .sum()
    }
}

/// Smallest truncation bound for which the truncated Čech complex of every
/// term computes its cohomology.
pub fn minimal_bound<F: Field>(c: &LineBundleComplex<F>) -> u32 {
    let space = c.space();
    let sizes: Vec<i32> = space.groups().iter().map(|g| g.len() as i32).collect();
    c.terms()
        .iter()
        .flatten()
        .flat_map(|d| {
            d.parts()
                .into_iter()
                .zip(sizes.clone())
                .map(|(dg, k)| -dg - (k - 1))
                .collect::<Vec<_>>()
        })
        .max()
        .unwrap_or(0)
        .max(0) as u32
}

/// Truncated hypercohomology at a fixed bound, without stability checks.
pub fn truncated_hypercohomology<F: Field>(
    c: &LineBundleComplex<F>,
    bound: u32,
) -> Result<Hypercohomology, CohomologyError> {
    let field = c.field();
    let engine = Engine::new(field, c);
    let nterms = c.len();
    let nc = engine.cover.charts.len();
    let min_degree = c.offset();
    let ndeg = nterms + nc - 1;
    let mut crit: Vec<Vec<Cell>> = vec![Vec::new(); ndeg];
    let mut index: HashMap<Cell, usize> = HashMap::new();
    for (t, twists) in c.terms().iter().enumerate() {
        for (a, &d) in twists.iter().enumerate() {
            for exps in exponents(c.space(), d, bound) {
                for face in 1u8..(1 << nc) {
                    if engine.cover.role(&exps, face) == Role::Critical {
                        let cell = Cell {
                            term: t as u16,
                            copy: a as u32,
                            exps,
                            face,
                        };
                        let k = (engine.degree_of(&cell) - min_degree) as usize;
                        index.insert(cell, crit[k].len());
                        crit[k].push(cell);
                    }
                }
            }
        }
    }
    let mut ranks = vec![0usize; ndeg];
    for k in 0..ndeg - 1 {
        if crit[k].is_empty() || crit[k + 1].is_empty() {
            continue;
        }
        let mut m = Matrix::zeros(field, crit[k + 1].len(), crit[k].len());
        for (j, cell) in crit[k].iter().enumerate() {
            for (target, v) in engine.flow(cell, nterms)? {
                let i = *index
                    .get(&target)
                    .ok_or_else(|| CohomologyError::Internal("gradient path left the truncation".into()))?;
                m.set(i, j, v);
            }
        }
        ranks[k] = m.rank();
    }
    let dims = (0..ndeg)
        .map(|k| crit[k].len() - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
        .collect();
    Ok(Hypercohomology {
        min_degree,
        dims,
        bound,
    })
}

/// Hypercohomology through the truncated Čech complex. The default bound
/// is [`minimal_bound`]; the result is recomputed at `bound + 1` and both
/// must agree, and the Euler characteristic must match the terms.
pub fn cech_hypercohomology<F: Field>(
    c: &LineBundleComplex<F>,
    bound: Option<u32>,
) -> Result<Hypercohomology, CohomologyError> {
    let b = bound.unwrap_or_else(|| minimal_bound(c));
    let h = truncated_hypercohomology(c, b)?;
    let h2 = truncated_hypercohomology(c, b + 1)?;
    if h.dims != h2.dims {
        return Err(CohomologyError::Unstable { bound: b });
    }
    let expected = c.euler_characteristic();
    let found = h.euler_characteristic();
    if expected != found {
        return Err(CohomologyError::EulerMismatch { expected, found });
    }
    Ok(h)
}
