//! Branch-complete closed forms for monic complex quadratics, cubics and
//! quartics.
//!
//! Root order is part of the contract: position in `roots` is the branch
//! index downstream code reports, so every solver orders its output by a
//! fixed rule rather than by magnitude or argument.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::kernel::{find_all_roots, principal_root, unit_root, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Quadratic,
    Cardano,
    Ferrari,
    /// Degenerate quartic split; roots came from the iterative root finder.
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverResult {
    pub roots: Vec<Complex64>,
    pub method: Method,
    /// `max |p(r)|` on the monic input polynomial.
    pub max_residual: f64,
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn guard(coeffs: &[Complex64]) -> f64 {
    1e-12 * (1.0 + coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max))
}

fn monic_residual(lower: &[Complex64], roots: &[Complex64]) -> f64 {
    roots
        .iter()
        .map(|&z| {
            lower
                .iter()
                .rev()
                .fold(Complex64::new(1.0, 0.0), |acc, &c| acc * z + c)
                .norm()
        })
        .fold(0.0, f64::max)
}

/// Roots of `z^2 + b z + c`, `(-b + sqrt(b^2 - 4c)) / 2` first.
///
/// Whichever of the two is formed by cancellation is recovered from the
/// product of the roots instead.
pub fn solve_quadratic(b: Complex64, c: Complex64) -> Result<SolverResult> {
    let roots = quadratic_roots(b, c)?;
    let max_residual = monic_residual(&[c, b], &roots);
    Ok(SolverResult {
        roots: roots.to_vec(),
        method: Method::Quadratic,
        max_residual,
    })
}

fn quadratic_roots(b: Complex64, c: Complex64) -> Result<[Complex64; 2]> {
    let s = principal_root(b * b - 4.0 * c, 2)?;
    let mut plus = (-b + s) / 2.0;
    let mut minus = (-b - s) / 2.0;
    if plus.norm() < minus.norm() {
        if minus.norm() > 0.0 {
            plus = c / minus;
        }
    } else if plus.norm() > 0.0 {
        minus = c / plus;
    }
    Ok([plus, minus])
}

/// Intermediate quantities of Cardano's method for `z^3 + b z^2 + c z + d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CardanoParts {
    /// Depressed cubic `t^3 + p t + q` with `t = z + b/3`.
    pub p: Complex64,
    pub q: Complex64,
    pub u0: Complex64,
    pub v0: Complex64,
}

/// Depresses the cubic and fixes the paired cube roots `u0`, `v0`.
///
/// `u0` is the principal cube root of whichever of `-q/2 +- sqrt(q^2/4 + p^3/27)`
/// has the larger modulus, and `v0 = -p / (3 u0)` so that `u0 v0 = -p/3`
/// holds by construction. Only when `u0` vanishes (which forces `p = 0`) is
/// `v0` taken as an independent cube root.
pub fn cardano_parts(b: Complex64, c: Complex64, d: Complex64) -> Result<CardanoParts> {
    let b3 = b / 3.0;
    let p = c - b * b3;
    let q = 2.0 * b3 * b3 * b3 - b3 * c + d;
    let s = principal_root(q * q / 4.0 + p * p * p / 27.0, 2)?;
    let first = -q / 2.0 + s;
    let second = -q / 2.0 - s;
    let (major, minor) = if first.norm() >= second.norm() {
        (first, second)
    } else {
        (second, first)
    };
    let u0 = principal_root(major, 3)?;
    let v0 = if u0.norm() > guard(&[b, c, d]) {
        -p / (3.0 * u0)
    } else {
        principal_root(minor, 3)?
    };
    Ok(CardanoParts { p, q, u0, v0 })
}

/// Roots of `z^3 + b z^2 + c z + d`, branch `k` being
/// `u0 w^k + v0 w^-k - b/3` with `w = e^{i 2 pi / 3}`.
pub fn solve_cubic(b: Complex64, c: Complex64, d: Complex64) -> Result<SolverResult> {
    let parts = cardano_parts(b, c, d)?;
    let shift = b / 3.0;
    let roots: Vec<Complex64> = (0..3)
        .map(|k| parts.u0 * unit_root(k, 3) + parts.v0 * unit_root(3 - k, 3) - shift)
        .collect();
    let max_residual = monic_residual(&[d, c, b], &roots);
    Ok(SolverResult {
        roots,
        method: Method::Cardano,
        max_residual,
    })
}

/// Roots of `z^4 + b z^3 + c z^2 + d z + e` by Ferrari's method.
///
/// With `z = t - b/4` the depressed quartic `t^4 + p t^2 + q t + r` is split
/// as `(t^2 + y)^2 = (s t - q/(2s))^2`, `s^2 = 2y - p`, where `y` is the
/// resolvent-cubic root maximising `|2y - p|`. The two factors
/// `t^2 -+ s t + y +- q/(2s)` are solved in that order, each yielding its
/// `+` root first, so branches run `(+,+), (+,-), (-,+), (-,-)`.
pub fn solve_quartic(
    b: Complex64,
    c: Complex64,
    d: Complex64,
    e: Complex64,
) -> Result<SolverResult> {
    let lower = [e, d, c, b];
    let shift = b / 4.0;
    let b2 = b * b;
    let p = c - 3.0 * b2 / 8.0;
    let q = d - b * c / 2.0 + b2 * b / 8.0;
    let r = e - b * d / 4.0 + b2 * c / 16.0 - 3.0 * b2 * b2 / 256.0;

    let resolvent = solve_cubic(-p / 2.0, -r, p * r / 2.0 - q * q / 8.0)?;
    let y = resolvent
        .roots
        .iter()
        .copied()
        .max_by(|x, z| (2.0 * x - p).norm().total_cmp(&(2.0 * z - p).norm()))
        .unwrap_or_else(zero);
    let s = principal_root(2.0 * y - p, 2)?;

    if s.norm() < guard(&lower) {
        let poly = Polynomial::monic(&lower)?;
        let set = find_all_roots(&poly, 1e-15)?;
        let max_residual = monic_residual(&lower, &set.roots);
        return Ok(SolverResult {
            roots: set.roots,
            method: Method::Numeric,
            max_residual,
        });
    }

    let half_ratio = q / (2.0 * s);
    let upper = quadratic_roots(-s, y + half_ratio)?;
    let lower_pair = quadratic_roots(s, y - half_ratio)?;
    let roots: Vec<Complex64> = upper
        .iter()
        .chain(lower_pair.iter())
        .map(|t| t - shift)
        .collect();
    let max_residual = monic_residual(&lower, &roots);
    Ok(SolverResult {
        roots,
        method: Method::Ferrari,
        max_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{find_all_roots, matching_distance};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn r(x: f64) -> Complex64 {
        c(x, 0.0)
    }

    fn oracle(lower: &[Complex64]) -> Vec<Complex64> {
        find_all_roots(&Polynomial::monic(lower).unwrap(), 1e-15)
            .unwrap()
            .roots
    }

    #[test]
    fn quadratic_examples() {
        let res = solve_quadratic(r(0.0), r(-1.0)).unwrap();
        assert_eq!(res.roots, vec![r(1.0), r(-1.0)]);

        // 2 xi^2 - xi = 0 in monic form
        let res = solve_quadratic(r(-0.5), r(0.0)).unwrap();
        assert_eq!(res.roots, vec![r(0.5), r(0.0)]);

        let res = solve_quadratic(r(-2.0), r(1.0)).unwrap();
        assert_eq!(res.roots, vec![r(1.0), r(1.0)]);
        assert_eq!(res.method, Method::Quadratic);
    }

    #[test]
    fn quadratic_keeps_plus_branch_first_under_cancellation() {
        // b^2 >> c: the '+' root is the tiny one
        let res = solve_quadratic(r(1e8), r(1.0)).unwrap();
        assert_abs_diff_eq!(res.roots[0].re, -1e-8, epsilon = 1e-22);
        assert_abs_diff_eq!(res.roots[1].re, -1e8, epsilon = 1e-6);
    }

    #[test]
    fn cubic_roots_of_unity_in_branch_order() {
        let res = solve_cubic(r(0.0), r(0.0), r(-1.0)).unwrap();
        for k in 0..3 {
            let want = Complex64::from_polar(1.0, 2.0 * PI * f64::from(k) / 3.0);
            assert_abs_diff_eq!((res.roots[k as usize] - want).norm(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn cubic_on_c_side_equation() {
        // 2 xi^3 - xi = 0
        let res = solve_cubic(r(0.0), r(-0.5), r(0.0)).unwrap();
        let expected = [r(0.0), r(0.5f64.sqrt()), r(-(0.5f64.sqrt()))];
        assert!(matching_distance(&res.roots, &expected) < 1e-15);
    }

    #[test]
    fn cubic_against_oracle() {
        let lower = [r(2.0), c(1.0, 1.0), r(0.0)];
        let res = solve_cubic(lower[2], lower[1], lower[0]).unwrap();
        assert!(res.max_residual < 1e-10);
        assert!(matching_distance(&res.roots, &oracle(&lower)) < 1e-10);
    }

    #[test]
    fn cardano_pairing_holds() {
        let parts = cardano_parts(c(0.3, -1.2), c(2.0, 0.5), c(-1.0, 4.0)).unwrap();
        let product = parts.u0 * parts.v0;
        assert!((product + parts.p / 3.0).norm() <= 1e-12 * (parts.p / 3.0).norm());
    }

    #[test]
    fn cubic_with_vanishing_u0() {
        // (z - 2)^3
        let res = solve_cubic(r(-6.0), r(12.0), r(-8.0)).unwrap();
        for root in res.roots {
            assert_abs_diff_eq!((root - r(2.0)).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn quartic_examples() {
        let res = solve_quartic(r(0.0), r(0.0), r(0.0), r(-1.0)).unwrap();
        let expected = [r(1.0), c(0.0, 1.0), r(-1.0), c(0.0, -1.0)];
        assert!(matching_distance(&res.roots, &expected) < 1e-15);

        // 2 xi^4 - xi = 0
        let res = solve_quartic(r(0.0), r(0.0), r(-0.5), r(0.0)).unwrap();
        let rho = 0.5f64.cbrt();
        let expected = [
            r(0.0),
            r(rho),
            Complex64::from_polar(rho, 2.0 * PI / 3.0),
            Complex64::from_polar(rho, 4.0 * PI / 3.0),
        ];
        assert!(matching_distance(&res.roots, &expected) < 1e-14);
        for x in &res.roots {
            assert!((2.0 * x.powu(4) - x).norm() < 1e-14);
        }
    }

    #[test]
    fn quartic_quadruple_root_falls_back() {
        // (z + 1)^4
        let res = solve_quartic(r(4.0), r(6.0), r(4.0), r(1.0)).unwrap();
        assert_eq!(res.method, Method::Numeric);
        for root in res.roots {
            assert!((root + r(1.0)).norm() < 1e-3);
        }
    }

    #[test]
    fn branch_order_is_deterministic() {
        let args = (c(0.1, 0.2), c(-0.7, 0.3), c(1.5, -2.0), c(0.25, 0.0));
        let first = solve_quartic(args.0, args.1, args.2, args.3).unwrap();
        let second = solve_quartic(args.0, args.1, args.2, args.3).unwrap();
        assert_eq!(first.roots, second.roots);
    }

    fn complex_in_box(limit: f64) -> impl Strategy<Value = Complex64> {
        (-limit..limit, -limit..limit).prop_map(|(re, im)| Complex64::new(re, im))
    }

    proptest! {
        #[test]
        fn quadratic_matches_oracle(b in complex_in_box(7.0), cc in complex_in_box(7.0)) {
            let res = solve_quadratic(b, cc).unwrap();
            prop_assert!(matching_distance(&res.roots, &oracle(&[cc, b])) < 1e-8);
        }

        #[test]
        fn cubic_matches_oracle(b in complex_in_box(7.0), cc in complex_in_box(7.0), d in complex_in_box(7.0)) {
            let res = solve_cubic(b, cc, d).unwrap();
            prop_assert!(res.max_residual <= 1e-9 * (1.0 + b.norm().max(cc.norm()).max(d.norm())));
            prop_assert!(matching_distance(&res.roots, &oracle(&[d, cc, b])) < 1e-8);
        }

        #[test]
        fn quartic_matches_oracle(
            b in complex_in_box(7.0), cc in complex_in_box(7.0),
            d in complex_in_box(7.0), e in complex_in_box(7.0),
        ) {
            let res = solve_quartic(b, cc, d, e).unwrap();
            prop_assert!(matching_distance(&res.roots, &oracle(&[e, d, cc, b])) < 1e-8);
        }
    }
}
