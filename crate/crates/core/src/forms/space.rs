//! Ambient spaces, their gradings and monomial bases.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::FormError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AmbientSpace {
    P3,
    P2,
    P1,
    /// The smooth quadric P1 x P1 with coordinates (s0, s1; t0, t1).
    Quadric,
}

/// A degree: an integer on projective spaces, a bidegree on the quadric.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Degree {
    Single(i32),
    Bi(i32, i32),
}

impl Degree {
    pub fn parts(self) -> Vec<i32> {
        match self {
            Degree::Single(d) => vec![d],
            Degree::Bi(a, b) => vec![a, b],
        }
    }

    pub fn from_parts(parts: &[i32]) -> Degree {
        match parts {
            [d] => Degree::Single(*d),
            [a, b] => Degree::Bi(*a, *b),
            _ => panic!("degrees have one or two parts"),
        }
    }

    pub fn single(self) -> Option<i32> {
        match self {
            Degree::Single(d) => Some(d),
            Degree::Bi(..) => None,
        }
    }

    fn zip(self, other: Degree, f: impl Fn(i32, i32) -> i32) -> Degree {
        match (self, other) {
            (Degree::Single(a), Degree::Single(b)) => Degree::Single(f(a, b)),
            (Degree::Bi(a, b), Degree::Bi(c, d)) => Degree::Bi(f(a, c), f(b, d)),
            _ => panic!("mixing single degrees and bidegrees"),
        }
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, o: Degree) -> Degree {
        self.zip(o, |a, b| a + b)
    }
}

impl Sub for Degree {
    type Output = Degree;
    fn sub(self, o: Degree) -> Degree {
        self.zip(o, |a, b| a - b)
    }
}

impl Neg for Degree {
    type Output = Degree;
    fn neg(self) -> Degree {
        match self {
            Degree::Single(a) => Degree::Single(-a),
            Degree::Bi(a, b) => Degree::Bi(-a, -b),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Single(d) => write!(f, "{d}"),
            Degree::Bi(a, b) => write!(f, "({a};{b})"),
        }
    }
}

impl std::str::FromStr for Degree {
    type Err = FormError;
    fn from_str(s: &str) -> Result<Degree, FormError> {
        let bad = || FormError::BadDegree(s.to_string());
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
            let (a, b) = inner.split_once([';', ',']).ok_or_else(bad)?;
            return Ok(Degree::Bi(
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ));
        }
        t.parse().map(Degree::Single).map_err(|_| bad())
    }
}

/// Monomial exponent vector.
pub type Exponent = Vec<u32>;

impl AmbientSpace {
    pub fn nvars(self) -> usize {
        match self {
            AmbientSpace::P3 | AmbientSpace::Quadric => 4,
            AmbientSpace::P2 => 3,
            AmbientSpace::P1 => 2,
        }
    }

    /// Index ranges of the variable groups (one per grading component).
    pub fn groups(self) -> Vec<std::ops::Range<usize>> {
        match self {
            AmbientSpace::Quadric => vec![0..2, 2..4],
            s => vec![0..s.nvars()],
        }
    }

    /// Complex dimension, which is also the top cohomological degree.
    pub fn dim(self) -> usize {
        match self {
            AmbientSpace::P3 => 3,
            AmbientSpace::P2 | AmbientSpace::Quadric => 2,
            AmbientSpace::P1 => 1,
        }
    }

    pub fn canonical(self) -> Degree {
        match self {
            AmbientSpace::Quadric => Degree::Bi(-2, -2),
            s => Degree::Single(-(s.nvars() as i32)),
        }
    }

    pub fn zero_degree(self) -> Degree {
        match self {
            AmbientSpace::Quadric => Degree::Bi(0, 0),
            _ => Degree::Single(0),
        }
    }

    /// The degree `k` pulled back along the standard maps from P3: an
    /// integer on projective spaces, the diagonal bidegree on the quadric.
    pub fn degree(self, k: i32) -> Degree {
        match self {
            AmbientSpace::Quadric => Degree::Bi(k, k),
            _ => Degree::Single(k),
        }
    }

    pub fn check_degree(self, d: Degree) -> Result<(), FormError> {
        match (self, d) {
            (AmbientSpace::Quadric, Degree::Bi(..)) => Ok(()),
            (AmbientSpace::Quadric, _) | (_, Degree::Bi(..)) => {
                Err(FormError::DegreeSpaceMismatch { space: self, degree: d })
            }
            _ => Ok(()),
        }
    }

    pub fn var_names(self) -> Vec<&'static str> {
        match self {
            AmbientSpace::P3 => vec!["z1", "z2", "z3", "z4"],
            AmbientSpace::P2 => vec!["y1", "y2", "y3"],
            AmbientSpace::P1 => vec!["x0", "x1"],
            AmbientSpace::Quadric => vec!["s0", "s1", "t0", "t1"],
        }
    }

    pub fn degree_of(self, e: &[u32]) -> Degree {
        let parts: Vec<i32> = self
            .groups()
            .into_iter()
            .map(|g| e[g].iter().map(|&x| x as i32).sum())
            .collect();
        Degree::from_parts(&parts)
    }

    /// Charts of the standard affine cover, each given by the bitmask of
    /// variables it inverts.
    pub fn charts(self) -> Vec<u8> {
        match self {
            AmbientSpace::Quadric => {
                vec![0b0101, 0b1001, 0b0110, 0b1010]
            }
            s => (0..s.nvars()).map(|i| 1u8 << i).collect(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AmbientSpace::P3 => "P3",
            AmbientSpace::P2 => "P2",
            AmbientSpace::P1 => "P1",
            AmbientSpace::Quadric => "Q",
        }
    }
}

impl fmt::Display for AmbientSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Monomials of degree `d` in `k` variables, lexicographically descending.
fn monomials_in(k: usize, d: i32) -> Vec<Exponent> {
    if d < 0 {
        return Vec::new();
    }
    if k == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if k == 1 {
        return vec![vec![d as u32]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_in(k - 1, d - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

/// Basis of H^0(O(d)), lexicographically descending (on the quadric,
/// s-part major).
pub fn monomial_basis(space: AmbientSpace, d: Degree) -> Vec<Exponent> {
    let parts = d.parts();
    let groups = space.groups();
    assert_eq!(parts.len(), groups.len(), "degree does not match {space}");
    let mut acc: Vec<Exponent> = vec![Vec::new()];
    for (g, &dg) in groups.iter().zip(&parts) {
        let block = monomials_in(g.len(), dg);
        acc = acc
            .iter()
            .flat_map(|prefix| {
                block.iter().map(move |m| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(m);
                    v
                })
            })
            .collect();
    }
    acc
}

/// Dimension of H^0(O(d)).
pub fn h0_dim(space: AmbientSpace, d: Degree) -> usize {
    space
        .groups()
        .iter()
        .zip(d.parts())
        .map(|(g, dg)| binomial_or_zero(dg + g.len() as i32 - 1, g.len() as i32 - 1))
        .product()
}

fn binomial_or_zero(n: i32, k: i32) -> usize {
    if n < k || k < 0 || n < 0 {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    acc as usize
}

pub(crate) fn binomial(n: i32, k: i32) -> usize {
    binomial_or_zero(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_linear_basis_order() {
        let b = monomial_basis(AmbientSpace::P3, Degree::Single(1));
        assert_eq!(
            b,
            vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]
        );
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(monomial_basis(AmbientSpace::P3, Degree::Single(2)).len(), 10);
        assert_eq!(monomial_basis(AmbientSpace::Quadric, Degree::Bi(1, 2)).len(), 6);
        assert!(monomial_basis(AmbientSpace::P2, Degree::Single(-1)).is_empty());
        assert_eq!(monomial_basis(AmbientSpace::P2, Degree::Single(0)), vec![vec![0, 0, 0]]);
        for d in -2..6 {
            assert_eq!(
                monomial_basis(AmbientSpace::P3, Degree::Single(d)).len(),
                h0_dim(AmbientSpace::P3, Degree::Single(d))
            );
        }
    }

    #[test]
    fn degree_strings() {
        assert_eq!("(1;-2)".parse::<Degree>().unwrap(), Degree::Bi(1, -2));
        assert_eq!("-3".parse::<Degree>().unwrap(), Degree::Single(-3));
        assert_eq!(Degree::Bi(2, 0).to_string(), "(2;0)");
    }
}
