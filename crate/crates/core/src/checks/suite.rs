//! Batch runs of every checker over a grid of `(r, n)`.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::monad::sample_instanton;

use super::{
    check_end_dims, check_instanton_condition, check_koszul_dims, check_mayer_vietoris, check_quadric_splitting,
    check_tangent_dimension, check_tensor_vanishing, CheckContext, CheckError, CheckReport, Status,
};

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOptions {
    pub grid: Vec<(usize, usize)>,
    pub seed: u64,
    /// Samples per grid cell.
    pub samples: usize,
    pub bound: Option<u32>,
    /// Resamples with an incremented seed when a sample is not simple.
    pub retries: u64,
    /// Skip the restriction checks above this charge.
    pub mayer_vietoris_max_charge: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            grid: vec![(2, 1), (2, 2), (3, 3)],
            seed: 1,
            samples: 1,
            bound: None,
            retries: 3,
            mayer_vietoris_max_charge: 2,
        }
    }
}

fn cell(opts: &SuiteOptions, r: usize, n: usize, seed: u64) -> Result<Vec<CheckReport>, CheckError> {
    let ctx = CheckContext::new(seed).with_bound(opts.bound);
    let mut sample_seed = seed;
    let (m, end) = loop {
        let m = sample_instanton(r, n, sample_seed)?;
        let end = check_end_dims(&ctx, &m)?;
        if end.status != Status::Skipped || sample_seed >= seed + opts.retries {
            break (m, end);
        }
        sample_seed += 1;
    };
    let mut out = Vec::new();
    let tag = |mut rep: CheckReport| {
        rep.set_input("r", r);
        rep.set_input("n", n);
        rep.set_input("sample_seed", sample_seed);
        rep
    };
    out.push(tag(check_instanton_condition(&m)));
    let h1 = end
        .computed
        .get("h(End F)")
        .and_then(|v| v[1].as_u64())
        .map(|x| x as usize);
    out.push(tag(end));
    out.push(tag(check_tangent_dimension(&ctx, &m, h1)?));
    out.push(tag(check_koszul_dims(&ctx, &m)?));
    if n <= opts.mayer_vietoris_max_charge {
        out.push(tag(check_mayer_vietoris(&ctx, &m)?));
    }
    out.push(tag(check_quadric_splitting(&ctx, &m)?));
    if n <= 2 {
        out.push(tag(check_tensor_vanishing(&ctx, &m, &m.dual())?));
    }
    Ok(out)
}

/// Every checker on `samples` instantons per grid cell. Cells run in
/// parallel when the `parallel` feature is on; the reports come back in grid order.
pub fn run_suite(opts: &SuiteOptions) -> Result<Vec<CheckReport>, CheckError> {
    let cells: Vec<(usize, usize, u64)> = opts
        .grid
        .iter()
        .flat_map(|&(r, n)| (0..opts.samples as u64).map(move |i| (r, n, opts.seed + 100 * i)))
        .collect();
    #[cfg(feature = "parallel")]
    let results: Vec<_> = cells.par_iter().map(|&(r, n, s)| cell(opts, r, n, s)).collect();
    #[cfg(not(feature = "parallel"))]
    let results: Vec<_> = cells.iter().map(|&(r, n, s)| cell(opts, r, n, s)).collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}
