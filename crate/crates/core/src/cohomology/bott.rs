//! Cohomology of line bundles.

use crate::forms::{binomial, AmbientSpace, Degree};

fn projective(n: i32, d: i32) -> Vec<usize> {
    let mut h = vec![0; n as usize + 1];
    if d >= 0 {
        h[0] = binomial(d + n, n);
    }
    if d < -n {
        h[n as usize] = binomial(-d - 1, n);
    }
    h
}

/// `h^i(O(d))` for `i = 0..=dim`.
pub fn line_bundle_cohomology(space: AmbientSpace, d: Degree) -> Vec<usize> {
    match (space, d) {
        (AmbientSpace::Quadric, Degree::Bi(a, b)) => {
            let (x, y) = (projective(1, a), projective(1, b));
            let mut h = vec![0; 3];
            for p in 0..2 {
                for q in 0..2 {
                    h[p + q] += x[p] * y[q];
                }
            }
            h
        }
        (s, Degree::Single(k)) if s != AmbientSpace::Quadric => projective(s.dim() as i32, k),
        _ => panic!("degree {d} does not live on {space}"),
    }
}

pub fn line_bundle_euler(space: AmbientSpace, d: Degree) -> i64 {
    line_bundle_cohomology(space, d)
        .iter()
        .enumerate()
        .map(|(i, &h)| if i % 2 == 0 { h as i64 } else { -(h as i64) })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_values() {
        assert_eq!(
            line_bundle_cohomology(AmbientSpace::P3, Degree::Single(-4)),
            vec![0, 0, 0, 1]
        );
        assert_eq!(
            line_bundle_cohomology(AmbientSpace::P3, Degree::Single(2)),
            vec![10, 0, 0, 0]
        );
        assert_eq!(line_bundle_cohomology(AmbientSpace::P3, Degree::Single(-2)), vec![0; 4]);
        assert_eq!(
            line_bundle_cohomology(AmbientSpace::P3, Degree::Single(-6)),
            vec![0, 0, 0, 10]
        );
    }

    #[test]
    fn quadric_kunneth() {
        assert_eq!(
            line_bundle_cohomology(AmbientSpace::Quadric, Degree::Bi(-2, 0)),
            vec![0, 1, 0]
        );
        assert_eq!(
            line_bundle_cohomology(AmbientSpace::Quadric, Degree::Bi(-3, -2)),
            vec![0, 0, 2]
        );
        assert_eq!(
            line_bundle_cohomology(AmbientSpace::Quadric, Degree::Bi(1, 1)),
            vec![4, 0, 0]
        );
    }

    #[test]
    fn euler_polynomial() {
        for d in -8..8 {
            let chi = line_bundle_euler(AmbientSpace::P3, Degree::Single(d));
            let d = d as i64;
            assert_eq!(chi * 6, (d + 1) * (d + 2) * (d + 3));
        }
    }
}
