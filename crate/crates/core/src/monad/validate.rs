//! Validation of monads: the complex condition, fibrewise ranks, an exact
//! certificate for injectivity of ε and surjectivity of q, the instanton
//! condition and a trivializing line.

use rand::Rng;
use serde::Serialize;

use crate::algebra::primes::random_prime;
use crate::algebra::{PrimeField, ReduceMod};
use crate::forms::{mult_map, AmbientSpace, Degree, FormMatrix};

use super::{Monad, MonadError};

/// Itemized outcome of [`Monad::validate`]. Fibre ranks are checked at
/// random points and are only probabilistic evidence; the surjectivity
/// degrees are exact certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub rank: usize,
    pub charge: usize,
    pub complex: bool,
    pub prime: u64,
    pub points_checked: usize,
    pub fibre_failures: usize,
    /// Some `k` with `H^0(O(k)^m) → H^0(O(k+1)^n)` onto under `q`.
    pub q_certificate: Option<i32>,
    /// The same for `εᵀ`, certifying that ε is injective on every fibre.
    pub epsilon_certificate: Option<i32>,
    /// `h^i(F(-2))`.
    pub h_minus2: Vec<usize>,
    /// Two spanning points of a trivializing line, if one was found.
    pub trivializing_line: Option<Vec<Vec<String>>>,
    pub issues: Vec<String>,
}

impl ValidationReport {
    pub fn instanton_condition(&self) -> bool {
        self.h_minus2.len() > 2 && self.h_minus2[1] == 0 && self.h_minus2[2] == 0
    }

    pub fn is_valid(&self) -> bool {
        self.complex
            && self.fibre_failures == 0
            && self.q_certificate.is_some()
            && self.epsilon_certificate.is_some()
            && self.instanton_condition()
            && self.trivializing_line.is_some()
    }
}

/// Smallest `k` in `-1..=kmax` for which multiplication by `a` maps
/// `H^0(O(k))^cols` onto `H^0(O(k+1))^rows`. Such a `k` forces the sheaf
/// map to be surjective, since the cokernel module then vanishes in all
/// degrees above `k`.
pub fn surjectivity_degree(a: &FormMatrix<PrimeField>, kmax: i32) -> Option<i32> {
    (-1..=kmax).find(|&k| {
        let m = mult_map(a, Degree::Single(k)).expect("linear matrix");
        m.rank() == m.rows()
    })
}

/// `trials` random points together with the coordinate points and a
/// point on each coordinate line.
pub fn fibre_points<R: Rng>(space: AmbientSpace, fp: &PrimeField, rng: &mut R, trials: usize) -> Vec<Vec<u64>> {
    let nv = space.nvars();
    let p = fp.modulus();
    let mut out = Vec::new();
    for i in 0..nv {
        let mut e = vec![0; nv];
        e[i] = 1;
        out.push(e);
    }
    for i in 0..nv {
        for j in i + 1..nv {
            let mut e = vec![0; nv];
            e[i] = 1;
            e[j] = rng.random_range(1..p);
            out.push(e);
        }
    }
    for _ in 0..trials {
        loop {
            let v: Vec<u64> = (0..nv).map(|_| rng.random_range(0..p)).collect();
            if v.iter().any(|&x| x != 0) {
                out.push(v);
                break;
            }
        }
    }
    out
}

const CERTIFICATE_DEGREE: i32 = 8;
const LINE_TRIALS: usize = 50;

impl<F: ReduceMod> Monad<F> {
    /// Runs every check and itemizes the failures; errors are reserved for
    /// malformed input.
    pub fn validate<R: Rng>(&self, trials: usize, rng: &mut R) -> Result<ValidationReport, MonadError> {
        let mut issues = Vec::new();
        let complex = self.q.mul(&self.epsilon)?.is_zero();
        if !complex {
            issues.push("q·epsilon is not zero".to_string());
        }
        let (fp, reduced) = loop {
            let fp = PrimeField::new(random_prime(rng))?;
            if let Ok(m) = self.reduce(&fp) {
                break (fp, m);
            }
        };
        let points = fibre_points(self.space, &fp, rng, trials);
        let mut failures = 0;
        for p in &points {
            let e = reduced.epsilon.evaluate(p);
            let q = reduced.q.evaluate(p);
            if e.rank() != self.n || q.rank() != self.n {
                failures += 1;
            }
        }
        if failures > 0 {
            issues.push(format!("fibre rank drops at {failures} of {} points", points.len()));
        }
        let q_cert = surjectivity_degree(&reduced.q, CERTIFICATE_DEGREE);
        let e_cert = surjectivity_degree(&reduced.epsilon.transpose(), CERTIFICATE_DEGREE);
        if q_cert.is_none() {
            issues.push("no surjectivity certificate for q".to_string());
        }
        if e_cert.is_none() {
            issues.push("no injectivity certificate for epsilon".to_string());
        }
        let fibrewise = complex && failures == 0 && q_cert.is_some() && e_cert.is_some();
        let h_minus2 = if fibrewise { self.cohomology(-2)? } else { Vec::new() };
        if fibrewise && (h_minus2[1] != 0 || h_minus2[2] != 0) {
            issues.push(format!("instanton condition fails: h(F(-2)) = {h_minus2:?}"));
        }
        let line = if fibrewise {
            self.find_trivializing_line(rng, LINE_TRIALS)?
        } else {
            None
        };
        if fibrewise && line.is_none() {
            issues.push(format!("no trivializing line among {LINE_TRIALS} random lines"));
        }
        let f = self.field.clone();
        let trivializing_line = line.map(|l| {
            (0..2)
                .map(|j| l.basis().column(j).iter().map(|x| f.format(x)).collect())
                .collect()
        });
        Ok(ValidationReport {
            rank: self.r,
            charge: self.n,
            complex,
            prime: fp.modulus(),
            points_checked: points.len(),
            fibre_failures: failures,
            q_certificate: q_cert,
            epsilon_certificate: e_cert,
            h_minus2,
            trivializing_line,
            issues,
        })
    }

    /// Exact certificate that ε is fibrewise injective and q fibrewise
    /// surjective, computed modulo `fp`.
    pub fn certificate(&self, fp: &PrimeField) -> Result<Option<(i32, i32)>, MonadError> {
        let m = self.reduce(fp)?;
        let q = surjectivity_degree(&m.q, CERTIFICATE_DEGREE);
        let e = surjectivity_degree(&m.epsilon.transpose(), CERTIFICATE_DEGREE);
        Ok(q.zip(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Matrix, Rationals};
    use crate::monad::sample_instanton;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for &(r, n) in &[(2, 1), (2, 2)] {
            let m = sample_instanton(r, n, 3).unwrap();
            let rep = m.validate(16, &mut rng).unwrap();
            assert!(rep.is_valid(), "{rep:?}");
            assert_eq!(rep.h_minus2, vec![0, 0, 0, 0]);
            assert_eq!(rep.points_checked, 16 + 4 + 6);
        }
    }

    #[test]
    fn repeated_column_fails_everywhere() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = sample_instanton(2, 2, 3).unwrap();
        let mut e = m.epsilon_coefficients();
        for c in &mut e {
            for i in 0..c.rows() {
                let v = c.get(i, 0).clone();
                c.set(i, 1, v);
            }
        }
        let eps = FormMatrix::linear(&Rationals, AmbientSpace::P3, &e).unwrap();
        let zero_q: Vec<Matrix<Rationals>> = (0..4).map(|_| Matrix::zeros(&Rationals, 2, 6)).collect();
        let q = FormMatrix::linear(&Rationals, AmbientSpace::P3, &zero_q).unwrap();
        let bad = Monad::general(eps, q).unwrap();
        let rep = bad.validate(8, &mut rng).unwrap();
        assert_eq!(rep.fibre_failures, rep.points_checked);
        assert!(!rep.is_valid());
    }
}
