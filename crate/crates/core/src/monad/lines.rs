//! Lines, splitting types and framings.

use std::fmt;

use rand::Rng;

use crate::algebra::{random_small, Field, Matrix};
use crate::cohomology::cech_hypercohomology;
use crate::forms::{AmbientSpace, Substitution};

use super::{Monad, MonadError};

/// Line spanned by the two columns of a `nvars × 2` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Line<F: Field> {
    space: AmbientSpace,
    basis: Matrix<F>,
}

impl<F: Field> Line<F> {
    pub fn from_matrix(space: AmbientSpace, basis: Matrix<F>) -> Result<Line<F>, MonadError> {
        if space == AmbientSpace::Quadric || space == AmbientSpace::P1 {
            return Err(MonadError::Space(space));
        }
        if basis.rows() != space.nvars() || basis.cols() != 2 || basis.rank() != 2 {
            return Err(MonadError::Invalid("a line needs two independent points".into()));
        }
        Ok(Line { space, basis })
    }

    pub fn through(field: &F, space: AmbientSpace, p: &[F::Elem], q: &[F::Elem]) -> Result<Line<F>, MonadError> {
        let basis = Matrix::from_fn(
            field,
            p.len(),
            2,
            |i, j| if j == 0 { p[i].clone() } else { q[i].clone() },
        );
        Line::from_matrix(space, basis)
    }

    /// Line through two points with random small integer coordinates.
    pub fn random<R: Rng>(field: &F, space: AmbientSpace, rng: &mut R) -> Line<F> {
        loop {
            let basis = Matrix::from_fn(field, space.nvars(), 2, |_, _| random_small(field, rng, 5));
            if let Ok(l) = Line::from_matrix(space, basis) {
                return l;
            }
        }
    }

    /// `{z3 = z4 = 0}` in P3.
    pub fn z3_z4(field: &F) -> Line<F> {
        let basis = Matrix::from_fn(field, 4, 2, |i, j| if i == j { field.one() } else { field.zero() });
        Line {
            space: AmbientSpace::P3,
            basis,
        }
    }

    pub fn space(&self) -> AmbientSpace {
        self.space
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn point(&self, s: &F::Elem, t: &F::Elem) -> Vec<F::Elem> {
        self.basis.mul_vec(&[s.clone(), t.clone()])
    }

    pub fn substitution(&self) -> Substitution<F> {
        Substitution::linear(self.space, AmbientSpace::P1, &self.basis).expect("basis has rank 2")
    }

    pub fn contains(&self, p: &[F::Elem]) -> bool {
        let f = self.basis.field();
        let col = Matrix::from_fn(f, p.len(), 1, |i, _| p[i].clone());
        self.basis.hstack(&col).map(|m| m.rank() == 2).unwrap_or(false)
    }

    /// Same set of points.
    pub fn same_as(&self, other: &Line<F>) -> bool {
        self.space == other.space && self.contains(&other.basis.column(0)) && self.contains(&other.basis.column(1))
    }

    /// An invertible matrix `M` whose first two columns span the line, so
    /// that under `z = M w` the line becomes `{w3 = w4 = 0}`.
    pub fn adapted_coordinates<R: Rng>(&self, rng: &mut R) -> Matrix<F> {
        let f = self.basis.field();
        let extra = self.space.nvars() - 2;
        loop {
            let rest = Matrix::from_fn(f, self.space.nvars(), extra, |_, _| random_small(f, rng, 3));
            let m = self.basis.hstack(&rest).expect("same height");
            if m.is_invertible() {
                return m;
            }
        }
    }
}

/// Degrees `a_i` of `F_λ ≅ ⊕ O(a_i)`, in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingType(pub Vec<i32>);

impl SplittingType {
    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn sum(&self) -> i32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A trivialization of `F` along a line: `r` independent constant
/// sections of the middle term lying in the kernel of `q` on the line,
/// combined through the `r × r` matrix `basis`.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame<F: Field> {
    pub line: Line<F>,
    /// `(r+2n) × r`, the canonical kernel basis.
    pub sections: Matrix<F>,
    pub basis: Matrix<F>,
}

impl<F: Field> Frame<F> {
    /// The frame changed by `g ∈ GL(r)`.
    pub fn rebase(&self, g: &Matrix<F>) -> Result<Frame<F>, MonadError> {
        if !g.is_invertible() || g.rows() != self.basis.rows() {
            return Err(MonadError::Invalid(
                "frame change must be an invertible r×r matrix".into(),
            ));
        }
        Ok(Frame {
            basis: self.basis.mul(g)?,
            ..self.clone()
        })
    }

    /// Sections in the chosen basis, as columns.
    pub fn framed_sections(&self) -> Matrix<F> {
        self.sections.mul(&self.basis).expect("compatible shapes")
    }
}

impl<F: Field> Monad<F> {
    /// `h^0(F_λ(k))` from the restricted complex on P1.
    pub fn line_h0(&self, line: &Line<F>, k: i32) -> Result<usize, MonadError> {
        let c = self.restrict(&line.substitution())?.twist_by(k);
        Ok(cech_hypercohomology(&c, None)?.get(0))
    }

    pub fn is_trivializing(&self, line: &Line<F>) -> Result<bool, MonadError> {
        Ok(self.line_h0(line, -1)? == 0)
    }

    /// Splitting type on a line, read off from the jumps of
    /// `h^0(F_λ(k))` for `k = -n..n`. All degrees lie in `[-n, n]` since
    /// `F_λ` is a subbundle of a globally generated bundle of degree `n`
    /// and, dually, a quotient of one of degree `-n`.
    pub fn splitting_type(&self, line: &Line<F>) -> Result<SplittingType, MonadError> {
        let n = self.n as i32;
        // c[k + n] = #{a_i >= -k}
        let mut counts = Vec::with_capacity(2 * self.n + 1);
        let mut prev = 0usize;
        for k in -n..=n {
            let h = self.line_h0(line, k)?;
            counts.push(
                h.checked_sub(prev)
                    .ok_or_else(|| MonadError::Invalid(format!("h0 of the restriction drops at twist {k}")))?,
            );
            prev = h;
        }
        let mut degrees = Vec::with_capacity(self.r);
        let mut below = 0usize;
        for k in -n..=n {
            let c = counts[(k + n) as usize];
            let a = -k;
            for _ in below..c {
                degrees.push(a);
            }
            below = below.max(c);
        }
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        if degrees.len() != self.r || degrees.iter().sum::<i32>() != 0 {
            return Err(MonadError::Invalid(format!(
                "inconsistent splitting data {degrees:?} for rank {}",
                self.r
            )));
        }
        Ok(SplittingType(degrees))
    }

    /// First of `trials` random lines on which `F` is trivial.
    pub fn find_trivializing_line<R: Rng>(&self, rng: &mut R, trials: usize) -> Result<Option<Line<F>>, MonadError> {
        for _ in 0..trials {
            let line = Line::random(&self.field, self.space, rng);
            if self.is_trivializing(&line)? {
                return Ok(Some(line));
            }
        }
        Ok(None)
    }

    /// `H^0(F_λ)` on a trivializing line: the constant vectors killed by
    /// both coefficient matrices of `q|λ`.
    pub fn frame_along_line(&self, line: &Line<F>) -> Result<Frame<F>, MonadError> {
        if !self.is_trivializing(line)? {
            return Err(MonadError::NotTrivializing(self.splitting_type(line)?));
        }
        let q = self.q.substitute(&line.substitution())?;
        let stacked = q.coefficient_matrix(0)?.vstack(&q.coefficient_matrix(1)?)?;
        let sections = stacked.kernel();
        if sections.cols() != self.r {
            return Err(MonadError::Invalid(format!(
                "{} sections on a trivializing line, expected {}",
                sections.cols(),
                self.r
            )));
        }
        Ok(Frame {
            line: line.clone(),
            sections,
            basis: Matrix::identity(&self.field, self.r),
        })
    }
}
