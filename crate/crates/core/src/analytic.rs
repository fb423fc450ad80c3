//! Complex-plane evaluation of the interpolating q-zeta function, the
//! generating function of the modified q-Euler polynomials, and the l-series
//! attached to Dirichlet characters.
//!
//! The defining series sum (-1)^n [n+x]_q^{-s} does not converge termwise for
//! |q| < 1 (the terms approach (1-q)^s), so evaluation goes through the
//! binomial rearrangement
//!
//!   zeta_q(s,x) = [2]_q (1-q)^s sum_{j>=0} r_j(s) q^{jx} / (1 + q^j),
//!
//! where r_j is the rising-factorial ratio Gamma(s+j)/(Gamma(s) j!). The
//! j = 0 weight 1/(1+q^0) = 1/2 is precisely the Abel value of the divergent
//! alternating sum, and at s = -n the series truncates at j = n, reproducing
//! the q-Euler polynomials exactly.

use num_complex::Complex64;

use crate::characters::{generalized_euler, DirichletCharacter};
use crate::error::{Error, Result};

/// Evaluation request for the q-zeta function.
#[derive(Debug, Clone)]
pub struct ZetaParams {
    /// Complex q with 0 < |q| < 1, off the negative real axis.
    pub q: Complex64,
    /// Real x >= 0; required positive unless s is a nonpositive integer.
    pub x: f64,
    pub s: Complex64,
    pub tolerance: f64,
    pub max_terms: usize,
}

impl ZetaParams {
    pub fn new(q: Complex64, x: f64, s: Complex64) -> ZetaParams {
        ZetaParams {
            q,
            x,
            s,
            tolerance: 1e-12,
            max_terms: 20_000,
        }
    }
}

/// Result with enough metadata to report how the value was produced.
#[derive(Debug, Clone, Copy)]
pub struct SeriesValue {
    pub value: Complex64,
    pub terms: usize,
    /// True when s was a nonpositive integer and the series terminated
    /// exactly rather than by tail bound.
    pub exact_truncation: bool,
}

fn validate_q(q: Complex64) -> Result<()> {
    let r = q.norm();
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "q must satisfy 0 < |q| < 1, got |q| = {r}"
        )));
    }
    if q.im == 0.0 && q.re < 0.0 {
        return Err(Error::InvalidParameter(
            "q on the negative real axis breaks the principal branch".into(),
        ));
    }
    Ok(())
}

/// s = -n for a nonnegative integer n?
fn as_nonpositive_integer(s: Complex64) -> Option<usize> {
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 {
        Some((-s.re) as usize)
    } else {
        None
    }
}

/// The q-zeta function zeta_q(s, x); at s = -n this reproduces the modified
/// q-Euler polynomial value exactly (up to rounding).
pub fn zeta_q(params: &ZetaParams) -> Result<SeriesValue> {
    let ZetaParams {
        q,
        x,
        s,
        tolerance,
        max_terms,
    } = *params;
    validate_q(q)?;
    if x < 0.0 {
        return Err(Error::InvalidParameter("x must be >= 0".into()));
    }
    let exact_n = as_nonpositive_integer(s);
    if exact_n.is_none() && x == 0.0 {
        return Err(Error::SeriesUndefinedAtZero);
    }
    let ln_q = q.ln();
    // principal branches for (1-q)^s and q^{jx}
    let prefactor = (Complex64::new(1.0, 0.0) + q) * ((Complex64::new(1.0, 0.0) - q).ln() * s).exp();
    let gamma = q.norm().powf(x); // |q^x|
    let qx = (ln_q * x).exp(); // q^x
    let s_abs = s.norm();

    let mut sum = Complex64::new(0.0, 0.0);
    let mut r = Complex64::new(1.0, 0.0); // r_0
    let mut qjx = Complex64::new(1.0, 0.0); // q^{jx}
    let mut qj = Complex64::new(1.0, 0.0); // q^j
    let mut j = 0usize;
    loop {
        let term = r * qjx / (Complex64::new(1.0, 0.0) + qj);
        sum += term;
        // advance to j+1
        let next_r = r * (s + j as f64) / (j as f64 + 1.0);
        j += 1;
        r = next_r;
        qjx *= qx;
        qj *= q;
        match exact_n {
            Some(n) => {
                // r_{n+1} vanishes identically; the sum is a polynomial.
                if j > n || r.norm() == 0.0 {
                    return Ok(SeriesValue {
                        value: prefactor * sum,
                        terms: j,
                        exact_truncation: true,
                    });
                }
            }
            None => {
                // Tail bound: once rho = |q|^x (j+|s|)/(j+1) < 1 the
                // numerators |r_k q^{kx}| decay geometrically, and the
                // 1/(1+q^k) factors are bounded by 1/(1-|q|).
                let a_next = r.norm() * gamma.powi(j as i32);
                let rho = gamma * ((j as f64 + s_abs) / (j as f64 + 1.0));
                if rho < 1.0 {
                    let tail = a_next / ((1.0 - rho) * (1.0 - q.norm()));
                    if tail < tolerance {
                        return Ok(SeriesValue {
                            value: prefactor * sum,
                            terms: j,
                            exact_truncation: false,
                        });
                    }
                }
                if j >= max_terms {
                    let partial = prefactor * sum;
                    return Err(Error::ToleranceUnreachable {
                        re: partial.re,
                        im: partial.im,
                    });
                }
            }
        }
    }
}

/// The generating function F_q(t, x) = [2]_q sum_k (-1)^k e^{[k+x]_q t},
/// evaluated through the everywhere-convergent rearrangement
/// [2]_q e^{t/(1-q)} sum_j (-t/(1-q))^j q^{jx} / (j! (1 + q^j)).
pub fn gen_fn(t: Complex64, x: f64, q: Complex64, tolerance: f64, max_terms: usize) -> Result<Complex64> {
    validate_q(q)?;
    if x < 0.0 {
        return Err(Error::InvalidParameter("x must be >= 0".into()));
    }
    let ln_q = q.ln();
    let u = -t / (Complex64::new(1.0, 0.0) - q);
    let qx = (ln_q * x).exp();
    let prefactor = (Complex64::new(1.0, 0.0) + q) * (-u).exp();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut term_core = Complex64::new(1.0, 0.0); // u^j q^{jx} / j!
    let mut qj = Complex64::new(1.0, 0.0);
    for j in 0..max_terms {
        sum += term_core / (Complex64::new(1.0, 0.0) + qj);
        term_core = term_core * u * qx / (j as f64 + 1.0);
        qj *= q;
        let ratio = (u * qx).norm() / (j as f64 + 2.0);
        if term_core.norm() / (1.0 - q.norm()) / (1.0 - ratio.min(0.5)) < tolerance && j > 2 {
            return Ok(prefactor * sum);
        }
    }
    let partial = prefactor * sum;
    Err(Error::ToleranceUnreachable {
        re: partial.re,
        im: partial.im,
    })
}

/// n-th Taylor coefficient of t -> gen_fn(t, x, q) times n!, extracted by a
/// discrete Cauchy integral on a circle of radius `radius` with `samples`
/// points. Independent of the symbolic coefficient route.
pub fn gen_fn_taylor_coeff(
    n: usize,
    x: f64,
    q: Complex64,
    radius: f64,
    samples: usize,
) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..samples {
        let angle = std::f64::consts::TAU * k as f64 / samples as f64;
        let t = Complex64::from_polar(radius, angle);
        let f = gen_fn(t, x, q, 1e-15, 10_000)?;
        acc += f * Complex64::from_polar(1.0, -(n as f64) * angle);
    }
    Ok(acc / (samples as f64 * radius.powi(n as i32)))
}

/// The l-series attached to a Dirichlet character, through the d-fold
/// decomposition into q^d-zeta values:
/// l_q(s, chi) = [d]_q^{-s} ([2]_q/[2]_{q^d}) sum_a chi(a) (-1)^a zeta_{q^d}(s, a/d).
/// For the trivial modulus the index shift gives l_q(s, chi) = -zeta_q(s, 1).
pub fn l_series(
    chi: &DirichletCharacter,
    s: Complex64,
    q: Complex64,
    tolerance: f64,
    max_terms: usize,
) -> Result<SeriesValue> {
    validate_q(q)?;
    let d = chi.modulus();
    if d == 1 {
        let inner = zeta_q(&ZetaParams {
            q,
            x: 1.0,
            s,
            tolerance,
            max_terms,
        })?;
        return Ok(SeriesValue {
            value: -inner.value,
            ..inner
        });
    }
    let qd = q.powi(d as i32);
    let one = Complex64::new(1.0, 0.0);
    let d_q = (one - qd) / (one - q); // [d]_q
    let prefactor = ((-s) * d_q.ln()).exp() * (one + q) / (one + qd);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut terms = 0usize;
    let mut exact = true;
    for a in 1..d {
        let chi_a = chi.value(a);
        if chi_a.is_zero() {
            continue;
        }
        let inner = zeta_q(&ZetaParams {
            q: qd,
            x: a as f64 / d as f64,
            s,
            tolerance,
            max_terms,
        })?;
        terms += inner.terms;
        exact &= inner.exact_truncation;
        let chi_val = chi_a.embed_at(q)?;
        let sign = if a % 2 == 1 { -1.0 } else { 1.0 };
        sum += chi_val * sign * inner.value;
    }
    Ok(SeriesValue {
        value: prefactor * sum,
        terms,
        exact_truncation: exact,
    })
}

/// Numeric embedding of a generalized q-Euler number at complex q.
pub fn generalized_euler_numeric(
    chi: &DirichletCharacter,
    n: usize,
    q: Complex64,
) -> Result<Complex64> {
    generalized_euler(chi, n).value.embed_at(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::character;
    use crate::polynomials::build_xpoly;
    use crate::sequences::FamilyTag;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn s_zero_gives_half_two_q() {
        for x in [0.0, 0.5, 2.0] {
            let v = zeta_q(&ZetaParams::new(c(0.5, 0.0), x, c(0.0, 0.0))).unwrap();
            assert!(v.exact_truncation);
            assert!((v.value - c(0.75, 0.0)).norm() < 1e-14, "x={x}");
        }
    }

    #[test]
    fn negative_integer_interpolation_anchors() {
        // zeta(-1, 0) at q = 1/2 is E_{1,1/2} = -1/2
        let v = zeta_q(&ZetaParams::new(c(0.5, 0.0), 0.0, c(-1.0, 0.0))).unwrap();
        assert!((v.value - c(-0.5, 0.0)).norm() < 1e-13);
        // zeta(-2, 0) at q = 1/2 is (q-1)/(2(1+q^2)) = -0.2
        let v = zeta_q(&ZetaParams::new(c(0.5, 0.0), 0.0, c(-2.0, 0.0))).unwrap();
        assert!((v.value - c(-0.2, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn interpolation_matches_xpoly_grid() {
        for &q in &[c(0.3, 0.0), c(0.5, 0.2)] {
            for n in 0..=5usize {
                for &x in &[0.0f64, 0.5, 1.0, 2.0] {
                    let zeta = zeta_q(&ZetaParams::new(q, x, c(-(n as f64), 0.0)))
                        .unwrap()
                        .value;
                    let exact = build_xpoly(FamilyTag::ModifiedEuler, n)
                        .eval_complex(x, q)
                        .unwrap();
                    assert!(
                        (zeta - exact).norm() < 1e-10,
                        "q={q} n={n} x={x}: {zeta} vs {exact}"
                    );
                }
            }
        }
    }

    #[test]
    fn truncation_independent_of_budget_at_negative_integers() {
        let base = ZetaParams::new(c(0.4, 0.1), 0.5, c(-4.0, 0.0));
        let v1 = zeta_q(&ZetaParams {
            max_terms: 5,
            ..base.clone()
        })
        .unwrap();
        let v2 = zeta_q(&ZetaParams {
            max_terms: 5000,
            ..base
        })
        .unwrap();
        assert_eq!(v1.value, v2.value);
        assert_eq!(v1.terms, v2.terms);
    }

    #[test]
    fn series_mode_matches_exact_mode_nearby() {
        // s = -n +- eps approaches the exact value (smooth-parameter sanity).
        let q = c(0.5, 0.0);
        for n in [1.0f64, 3.0] {
            let exact = zeta_q(&ZetaParams::new(q, 1.0, c(-n, 0.0))).unwrap().value;
            for eps in [1e-6, -1e-6] {
                let near = zeta_q(&ZetaParams::new(q, 1.0, c(-n + eps, 0.0)))
                    .unwrap()
                    .value;
                assert!((near - exact).norm() < 1e-4, "n={n} eps={eps}");
            }
        }
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            zeta_q(&ZetaParams::new(c(0.5, 0.0), 0.0, c(0.5, 0.0))),
            Err(Error::SeriesUndefinedAtZero)
        ));
        assert!(zeta_q(&ZetaParams::new(c(1.5, 0.0), 1.0, c(0.0, 0.0))).is_err());
        assert!(zeta_q(&ZetaParams::new(c(-0.5, 0.0), 1.0, c(0.0, 0.0))).is_err());
        // unreachable tolerance reports the partial value
        let out = zeta_q(&ZetaParams {
            q: c(0.99, 0.0),
            x: 1e-3,
            s: c(2.0, 0.0),
            tolerance: 1e-30,
            max_terms: 8,
        });
        assert!(matches!(out, Err(Error::ToleranceUnreachable { .. })));
    }

    #[test]
    fn gen_fn_at_zero_and_first_coefficient() {
        let q = c(0.5, 0.0);
        // F(0, x) = [2]_q * (Abel value 1/2) = [2]_q/2
        let f0 = gen_fn(c(0.0, 0.0), 0.0, q, 1e-14, 1000).unwrap();
        assert!((f0 - c(0.75, 0.0)).norm() < 1e-12);
        // coefficient of t^1 at x = 0 equals E_{1,q} = -1/2
        let c1 = gen_fn_taylor_coeff(1, 0.0, q, 0.5, 64).unwrap();
        assert!((c1 - c(-0.5, 0.0)).norm() < 1e-10, "{c1}");
    }

    #[test]
    fn gen_fn_taylor_matches_xpoly() {
        let q = c(0.3, 0.0);
        let x = 1.0;
        for n in 0..=8usize {
            let coeff = gen_fn_taylor_coeff(n, x, q, 1.0, 128).unwrap();
            // multiply by n! to compare with the polynomial value
            let fact: f64 = (1..=n).map(|k| k as f64).product::<f64>().max(1.0);
            let exact = build_xpoly(FamilyTag::ModifiedEuler, n)
                .eval_complex(x, q)
                .unwrap();
            assert!(
                (coeff * fact - exact).norm() < 1e-9,
                "n={n}: {} vs {exact}",
                coeff * fact
            );
        }
    }

    #[test]
    fn l_series_anchor_mod3() {
        let chi = character(3, 1).unwrap();
        let v = l_series(&chi, c(0.0, 0.0), c(0.5, 0.0), 1e-12, 10_000).unwrap();
        assert!((v.value - c(-1.5, 0.0)).norm() < 1e-12, "{}", v.value);
    }

    #[test]
    fn l_series_interpolates_generalized_numbers() {
        let q = c(0.4, 0.0);
        for d in [3u64, 5] {
            for chi in crate::characters::enumerate_characters(d).unwrap() {
                for n in 0..=4usize {
                    let l = l_series(&chi, c(-(n as f64), 0.0), q, 1e-12, 10_000)
                        .unwrap()
                        .value;
                    let g = generalized_euler_numeric(&chi, n, q).unwrap();
                    assert!(
                        (l - g).norm() < 1e-9,
                        "d={d} chi={} n={n}: {l} vs {g}",
                        chi.index()
                    );
                }
            }
        }
    }

    #[test]
    fn principal_modulus_one_sign_relation() {
        let q = c(0.5, 0.0);
        let chi = character(1, 0).unwrap();
        let s = c(0.7, 0.3);
        let l = l_series(&chi, s, q, 1e-12, 10_000).unwrap().value;
        let z = zeta_q(&ZetaParams::new(q, 1.0, s)).unwrap().value;
        assert!((l + z).norm() < 1e-12);
    }
}
