//! Browser bindings: three small explorations of sampled instantons.
//! Every function takes plain numbers and returns a JSON string.

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use instanton::algebra::{Field, Rationals};
use instanton::hirzebruch::{build_quadric_bundle, cohomology_grid, ExtensionData};
use instanton::io::monad_to_json;
use instanton::monad::{sample_instanton, Line};

const MAX_CHARGE: usize = 3;

fn check_range(r: usize, n: usize) -> Result<(), String> {
    if n > MAX_CHARGE || r > 3 {
        return Err(format!("the page computes up to rank 3 and charge {MAX_CHARGE}"));
    }
    Ok(())
}

/// `h^i(F(k))` for `k` in `kmin..=kmax` of the monad sampled from `seed`.
pub fn cohomology_json(r: usize, n: usize, seed: u64, kmin: i32, kmax: i32) -> Result<Value, String> {
    check_range(r, n)?;
    if kmin > kmax || kmax - kmin > 12 {
        return Err("choose at most 13 twists".into());
    }
    let m = sample_instanton(r, n, seed).map_err(|e| e.to_string())?;
    let rows = (kmin..=kmax)
        .map(|k| m.cohomology(k).map(|h| json!({"k": k, "h": h})))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let monad: Value = serde_json::from_str(&monad_to_json(&m)).expect("canonical JSON");
    Ok(json!({"r": r, "n": n, "seed": seed, "rows": rows, "monad": monad}))
}

/// Splitting types of the sampled monad on `trials` random lines.
pub fn splitting_json(r: usize, n: usize, seed: u64, trials: usize) -> Result<Value, String> {
    check_range(r, n)?;
    let m = sample_instanton(r, n, seed).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x11ae);
    let f = Rationals;
    let mut lines = Vec::new();
    for _ in 0..trials.min(40) {
        let l = Line::random(&f, m.space(), &mut rng);
        let t = m.splitting_type(&l).map_err(|e| e.to_string())?;
        let pts: Vec<Vec<String>> = (0..2)
            .map(|j| l.basis().column(j).iter().map(|x: &BigRational| f.format(x)).collect())
            .collect();
        lines.push(json!({"line": pts, "splitting": t.0}));
    }
    Ok(json!({"r": r, "n": n, "seed": seed, "lines": lines}))
}

/// `h^i(V(k1, k2))` on the quadric for random extension data of rank `r`
/// with `m` points, for `k1` in `-2..=3` and `k2` in `-3..=2`.
pub fn quadric_json(r: usize, m: usize, seed: u64) -> Result<Value, String> {
    if r < 2 || m < r || m > 8 {
        return Err("need 2 <= r <= m <= 8".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = ExtensionData::random(&Rationals, r, m, &mut rng, 5).map_err(|e| e.to_string())?;
    let p = build_quadric_bundle(e).map_err(|e| e.to_string())?;
    let grid = cohomology_grid(&p, -2..=3, -3..=2);
    Ok(json!({"r": r, "m": m, "seed": seed, "k1": [-2, 3], "k2": [-3, 2], "h": grid}))
}

fn to_js(v: Result<Value, String>) -> Result<String, JsError> {
    v.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn cohomology(r: usize, n: usize, seed: u64, kmin: i32, kmax: i32) -> Result<String, JsError> {
    to_js(cohomology_json(r, n, seed, kmin, kmax))
}

#[wasm_bindgen]
pub fn splitting(r: usize, n: usize, seed: u64, trials: usize) -> Result<String, JsError> {
    to_js(splitting_json(r, n, seed, trials))
}

#[wasm_bindgen]
pub fn quadric(r: usize, m: usize, seed: u64) -> Result<String, JsError> {
    to_js(quadric_json(r, m, seed))
}
