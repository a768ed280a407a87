//! Cohomology of the middle sheaf of a three-term complex
//! `⊕O(a) → ⊕O(b) → ⊕O(c)` that is exact except in the middle.
//!
//! On P^N with N ≥ 2 only the rows q = 0 and q = N of the hypercohomology
//! spectral sequence are nonzero and no higher differential connects them,
//! so everything is read off the induced maps on H^0 and H^N.

use crate::algebra::Field;
use crate::forms::{mult_map, serre_dual_map, AmbientSpace, Degree, FormMatrix};

use super::CohomologyError;

pub fn three_term_cohomology<F: Field>(
    eps: &FormMatrix<F>,
    q: &FormMatrix<F>,
    middle: Degree,
) -> Result<Vec<usize>, CohomologyError> {
    let space = eps.space();
    let n = space.dim();
    if space == AmbientSpace::Quadric || n < 2 {
        return Err(CohomologyError::DisplayUnsupported(space));
    }
    let one = Degree::Single(1);
    let left = middle - one;
    let h0_eps = mult_map(eps, left)?;
    let h0_q = mult_map(q, middle)?;
    let top_eps = serre_dual_map(eps, left)?;
    let top_q = serre_dual_map(q, middle)?;

    let r0e = h0_eps.rank();
    let r0q = h0_q.rank();
    let rte = top_eps.rank();
    let rtq = top_q.rank();

    if h0_eps.cols() != r0e {
        return Err(CohomologyError::NotAMonad(
            "the first map is not injective on sections".into(),
        ));
    }
    if top_q.rows() != rtq {
        return Err(CohomologyError::NotAMonad(
            "top cohomology of the last term is not hit".into(),
        ));
    }
    let mut h = vec![0usize; n + 1];
    h[0] += (h0_q.cols() - r0q) - r0e;
    h[1] += h0_q.rows() - r0q;
    h[n - 1] += top_eps.cols() - rte;
    h[n] += (top_q.cols() - rtq) - rte;
    Ok(h)
}
