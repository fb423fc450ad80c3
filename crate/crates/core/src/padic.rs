//! Truncated p-adic arithmetic and the finite-level Riemann sums that
//! realize the two p-adic q-integrals, with machinery to measure how fast
//! the sums converge to the exact symbolic values.
//!
//! Numbers are kept in unit-valuation form (p^v times a unit known to M
//! digits) so that differences of nearly equal sums retain meaningful
//! valuation information instead of collapsing into noise.

use std::fmt;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::{int_valuation, BigRat, LExt, QPoly, QRat};
use crate::identities::{integral_monomial, IntegralKind};
use crate::sequences::{closed_value, FamilyTag};

/// A truncated p-adic number.
#[derive(Clone, PartialEq, Eq)]
pub enum PadicNum {
    /// Indistinguishable from zero modulo p^abs_prec; `None` marks an exact
    /// zero.
    Zero { p: u64, abs_prec: Option<i64> },
    /// p^val * unit with the unit known modulo p^prec (relative precision).
    NonZero {
        p: u64,
        val: i64,
        unit: BigUint,
        prec: u32,
    },
}

fn p_pow(p: u64, e: u32) -> BigUint {
    BigUint::from(p).pow(e)
}

fn uint_valuation(x: &BigUint, p: u64) -> Option<u64> {
    int_valuation(&BigInt::from(x.clone()), p)
}

fn mod_inverse_big(a: &BigUint, modulus: &BigUint) -> Option<BigUint> {
    let a = BigInt::from(a.clone());
    let m = BigInt::from(modulus.clone());
    let ext = a.extended_gcd(&m);
    if !ext.gcd.is_one() {
        return None;
    }
    Some(ext.x.mod_floor(&m).to_biguint().unwrap())
}

impl PadicNum {
    pub fn exact_zero(p: u64) -> PadicNum {
        PadicNum::Zero { p, abs_prec: None }
    }

    pub fn zero_mod(p: u64, abs_prec: i64) -> PadicNum {
        PadicNum::Zero {
            p,
            abs_prec: Some(abs_prec),
        }
    }

    /// A residue r known modulo p^abs_prec, converted to unit-valuation form.
    pub fn from_residue(r: BigUint, p: u64, abs_prec: u32) -> PadicNum {
        let modulus = p_pow(p, abs_prec);
        let r = r % &modulus;
        if r.is_zero() {
            return PadicNum::zero_mod(p, abs_prec as i64);
        }
        let t = uint_valuation(&r, p).unwrap() as u32;
        let unit = r / p_pow(p, t);
        PadicNum::NonZero {
            p,
            val: t as i64,
            unit,
            prec: abs_prec - t,
        }
    }

    pub fn from_bigint(n: &BigInt, p: u64, prec: u32) -> PadicNum {
        if n.is_zero() {
            return PadicNum::exact_zero(p);
        }
        let v = int_valuation(n, p).unwrap() as i64;
        let shifted = n / BigInt::from(p_pow(p, v as u32));
        let modulus = BigInt::from(p_pow(p, prec));
        let unit = shifted.mod_floor(&modulus).to_biguint().unwrap();
        PadicNum::NonZero {
            p,
            val: v,
            unit,
            prec,
        }
    }

    pub fn from_u64(n: u64, p: u64, prec: u32) -> PadicNum {
        PadicNum::from_bigint(&BigInt::from(n), p, prec)
    }

    /// Exact rational input; the denominator contributes its (negated)
    /// valuation and inverted unit.
    pub fn from_rational(r: &BigRat, p: u64, prec: u32) -> Result<PadicNum> {
        if r.is_zero() {
            return Ok(PadicNum::exact_zero(p));
        }
        let num = PadicNum::from_bigint(r.numer(), p, prec);
        let den = PadicNum::from_bigint(r.denom(), p, prec);
        num.div(&den)
    }

    pub fn prime(&self) -> u64 {
        match self {
            PadicNum::Zero { p, .. } | PadicNum::NonZero { p, .. } => *p,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, PadicNum::Zero { .. })
    }

    /// Valuation of a nonzero number.
    pub fn valuation(&self) -> Option<i64> {
        match self {
            PadicNum::Zero { .. } => None,
            PadicNum::NonZero { val, .. } => Some(*val),
        }
    }

    /// What is known about the valuation: exact for a visible unit, a lower
    /// bound for a value that vanished at the working precision.
    pub fn valuation_bound(&self) -> ValuationBound {
        match self {
            PadicNum::Zero { abs_prec: None, .. } => ValuationBound::ExactZero,
            PadicNum::Zero {
                abs_prec: Some(a), ..
            } => ValuationBound::AtLeast(*a),
            PadicNum::NonZero { val, .. } => ValuationBound::Exact(*val),
        }
    }

    /// Absolute precision: the value is pinned down modulo p^(this).
    fn abs_prec(&self) -> Option<i64> {
        match self {
            PadicNum::Zero { abs_prec, .. } => *abs_prec,
            PadicNum::NonZero { val, prec, .. } => Some(val + *prec as i64),
        }
    }

    fn check_prime(&self, other: &PadicNum) -> Result<()> {
        if self.prime() != other.prime() {
            return Err(Error::PrimeMismatch(self.prime(), other.prime()));
        }
        Ok(())
    }

    pub fn add(&self, other: &PadicNum) -> Result<PadicNum> {
        self.check_prime(other)?;
        let p = self.prime();
        match (self, other) {
            (PadicNum::Zero { abs_prec: a, .. }, PadicNum::Zero { abs_prec: b, .. }) => {
                Ok(PadicNum::Zero {
                    p,
                    abs_prec: match (a, b) {
                        (None, x) => *x,
                        (x, None) => *x,
                        (Some(a), Some(b)) => Some(*a.min(b)),
                    },
                })
            }
            (PadicNum::Zero { abs_prec, .. }, x) | (x, PadicNum::Zero { abs_prec, .. }) => {
                match abs_prec {
                    None => Ok(x.clone()),
                    Some(a) => {
                        let (val, unit, prec) = match x {
                            PadicNum::NonZero {
                                val, unit, prec, ..
                            } => (*val, unit, *prec),
                            PadicNum::Zero { .. } => unreachable!(),
                        };
                        if val >= *a {
                            return Ok(PadicNum::zero_mod(p, *a));
                        }
                        let new_prec = ((val + prec as i64).min(*a) - val) as u32;
                        Ok(PadicNum::NonZero {
                            p,
                            val,
                            unit: unit % p_pow(p, new_prec),
                            prec: new_prec,
                        })
                    }
                }
            }
            (
                PadicNum::NonZero {
                    val: va,
                    unit: ua,
                    prec: ka,
                    ..
                },
                PadicNum::NonZero {
                    val: vb,
                    unit: ub,
                    prec: kb,
                    ..
                },
            ) => {
                let abs = (va + *ka as i64).min(vb + *kb as i64);
                let v = (*va).min(*vb);
                let window = (abs - v) as u32;
                let modulus = p_pow(p, window);
                let lift = |val: i64, unit: &BigUint| -> BigUint {
                    (unit * p_pow(p, (val - v) as u32)) % &modulus
                };
                let s = (lift(*va, ua) + lift(*vb, ub)) % &modulus;
                Ok(PadicNum::from_shifted_residue(s, p, v, window))
            }
        }
    }

    fn from_shifted_residue(s: BigUint, p: u64, base_val: i64, window: u32) -> PadicNum {
        if s.is_zero() {
            return PadicNum::zero_mod(p, base_val + window as i64);
        }
        let t = uint_valuation(&s, p).unwrap() as u32;
        PadicNum::NonZero {
            p,
            val: base_val + t as i64,
            unit: s / p_pow(p, t),
            prec: window - t,
        }
    }

    pub fn neg(&self) -> PadicNum {
        match self {
            PadicNum::Zero { .. } => self.clone(),
            PadicNum::NonZero { p, val, unit, prec } => {
                let modulus = p_pow(*p, *prec);
                PadicNum::NonZero {
                    p: *p,
                    val: *val,
                    unit: (&modulus - unit % &modulus) % &modulus,
                    prec: *prec,
                }
            }
        }
    }

    pub fn sub(&self, other: &PadicNum) -> Result<PadicNum> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PadicNum) -> Result<PadicNum> {
        self.check_prime(other)?;
        let p = self.prime();
        match (self, other) {
            (PadicNum::Zero { abs_prec: a, .. }, PadicNum::Zero { abs_prec: b, .. }) => {
                Ok(PadicNum::Zero {
                    p,
                    abs_prec: match (a, b) {
                        (None, _) | (_, None) => None,
                        (Some(a), Some(b)) => Some(a + b),
                    },
                })
            }
            (PadicNum::Zero { abs_prec, .. }, x) | (x, PadicNum::Zero { abs_prec, .. }) => {
                match abs_prec {
                    None => Ok(PadicNum::exact_zero(p)),
                    Some(a) => Ok(PadicNum::Zero {
                        p,
                        abs_prec: Some(a + x.valuation().unwrap()),
                    }),
                }
            }
            (
                PadicNum::NonZero {
                    val: va,
                    unit: ua,
                    prec: ka,
                    ..
                },
                PadicNum::NonZero {
                    val: vb,
                    unit: ub,
                    prec: kb,
                    ..
                },
            ) => {
                let prec = (*ka).min(*kb);
                let modulus = p_pow(p, prec);
                Ok(PadicNum::NonZero {
                    p,
                    val: va + vb,
                    unit: (ua * ub) % &modulus,
                    prec,
                })
            }
        }
    }

    pub fn div(&self, other: &PadicNum) -> Result<PadicNum> {
        self.check_prime(other)?;
        let p = self.prime();
        match other {
            PadicNum::Zero { .. } => Err(Error::DivisionByZero),
            PadicNum::NonZero {
                val: vb,
                unit: ub,
                prec: kb,
                ..
            } => match self {
                PadicNum::Zero { abs_prec, .. } => Ok(PadicNum::Zero {
                    p,
                    abs_prec: abs_prec.map(|a| a - vb),
                }),
                PadicNum::NonZero {
                    val: va,
                    unit: ua,
                    prec: ka,
                    ..
                } => {
                    let prec = (*ka).min(*kb);
                    let modulus = p_pow(p, prec);
                    let inv = mod_inverse_big(&(ub % &modulus), &modulus)
                        .ok_or(Error::DivisionByZero)?;
                    Ok(PadicNum::NonZero {
                        p,
                        val: va - vb,
                        unit: (ua * inv) % &modulus,
                        prec,
                    })
                }
            },
        }
    }

    pub fn pow(&self, e: u64) -> PadicNum {
        let p = self.prime();
        if e == 0 {
            return PadicNum::NonZero {
                p,
                val: 0,
                unit: BigUint::one(),
                prec: match self {
                    PadicNum::NonZero { prec, .. } => *prec,
                    PadicNum::Zero { .. } => 1,
                },
            };
        }
        match self {
            PadicNum::Zero { abs_prec, .. } => PadicNum::Zero {
                p,
                abs_prec: abs_prec.map(|a| a * e as i64),
            },
            PadicNum::NonZero { p, val, unit, prec } => {
                let modulus = p_pow(*p, *prec);
                PadicNum::NonZero {
                    p: *p,
                    val: val * e as i64,
                    unit: unit.modpow(&BigUint::from(e), &modulus),
                    prec: *prec,
                }
            }
        }
    }

    /// Iwasawa logarithm restricted to 1-units: log(1 + z) by the alternating
    /// series; valuation growth of z^k/k guarantees termination.
    pub fn log(&self) -> Result<PadicNum> {
        let p = self.prime();
        let one = PadicNum::from_u64(1, p, self.rel_prec_or(1));
        let z = self.sub(&one)?;
        match &z {
            PadicNum::Zero { abs_prec, .. } => {
                // log(1 + z) = z * unit: zero to the same precision.
                return Ok(PadicNum::Zero {
                    p,
                    abs_prec: *abs_prec,
                });
            }
            PadicNum::NonZero { val, .. } => {
                if *val < 1 {
                    return Err(Error::PadicLogDomain);
                }
            }
        }
        let target = z.abs_prec().expect("nonzero z has finite precision");
        let vz = z.valuation().unwrap();
        let mut acc = PadicNum::exact_zero(p);
        let mut z_pow = z.clone();
        let mut k: u64 = 1;
        loop {
            let term = z_pow.div(&PadicNum::from_u64(k, p, (target + 4) as u32))?;
            let term = if k % 2 == 0 { term.neg() } else { term };
            acc = acc.add(&term)?;
            k += 1;
            let next_val = k as i64 * vz - (64 - k.leading_zeros()) as i64;
            if next_val > target {
                break;
            }
            z_pow = z_pow.mul(&z)?;
        }
        Ok(acc)
    }

    fn rel_prec_or(&self, default: u32) -> u32 {
        match self {
            PadicNum::NonZero { prec, .. } => *prec,
            PadicNum::Zero { .. } => default,
        }
    }

    /// Truncates the relative precision (used by precision-propagation
    /// comparisons).
    pub fn truncate_prec(&self, new_prec: u32) -> PadicNum {
        match self {
            PadicNum::Zero { .. } => self.clone(),
            PadicNum::NonZero { p, val, unit, prec } => {
                let prec = (*prec).min(new_prec);
                PadicNum::NonZero {
                    p: *p,
                    val: *val,
                    unit: unit % p_pow(*p, prec),
                    prec,
                }
            }
        }
    }

    /// Agreement on all digits both numbers actually carry.
    pub fn agrees_with(&self, other: &PadicNum) -> bool {
        match (self, other) {
            (PadicNum::Zero { .. }, PadicNum::Zero { .. }) => true,
            (PadicNum::NonZero { .. }, PadicNum::Zero { abs_prec, .. })
            | (PadicNum::Zero { abs_prec, .. }, PadicNum::NonZero { .. }) => {
                let x = if matches!(self, PadicNum::NonZero { .. }) {
                    self
                } else {
                    other
                };
                match abs_prec {
                    None => false,
                    Some(a) => x.valuation().unwrap() >= *a,
                }
            }
            (
                PadicNum::NonZero {
                    val: va,
                    unit: ua,
                    prec: ka,
                    ..
                },
                PadicNum::NonZero {
                    val: vb,
                    unit: ub,
                    prec: kb,
                    ..
                },
            ) => {
                if va != vb {
                    return false;
                }
                let shared = (*ka).min(*kb);
                let modulus = p_pow(self.prime(), shared);
                ua % &modulus == ub % &modulus
            }
        }
    }
}

impl fmt::Display for PadicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicNum::Zero { p, abs_prec: None } => write!(f, "0 (exact, p={p})"),
            PadicNum::Zero {
                p,
                abs_prec: Some(a),
            } => write!(f, "O({p}^{a})"),
            PadicNum::NonZero { p, val, unit, prec } => {
                let mut digits = Vec::new();
                let mut rest = unit.clone();
                let pb = BigUint::from(*p);
                for _ in 0..(*prec).min(12) {
                    let (q, r) = rest.div_rem(&pb);
                    digits.push(r.to_u64().unwrap());
                    rest = q;
                }
                write!(f, "{p}^{val} * ({}", digits[0])?;
                for (i, d) in digits.iter().enumerate().skip(1) {
                    if *d != 0 {
                        write!(f, " + {d}*{p}^{i}")?;
                    }
                }
                write!(f, " + O({p}^{prec}))")
            }
        }
    }
}

impl fmt::Debug for PadicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PadicNum({self})")
    }
}

/// What a convergence measurement learned about one difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ValuationBound {
    /// Difference is exactly zero.
    ExactZero,
    /// Nonzero with this exact valuation.
    Exact(i64),
    /// Vanished at working precision; valuation is at least this.
    AtLeast(i64),
}

impl ValuationBound {
    pub fn at_least(&self, bound: i64) -> bool {
        match self {
            ValuationBound::ExactZero => true,
            ValuationBound::Exact(v) => *v >= bound,
            ValuationBound::AtLeast(a) => *a >= bound,
        }
    }
}

impl fmt::Display for ValuationBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuationBound::ExactZero => write!(f, "exact-zero"),
            ValuationBound::Exact(v) => write!(f, "{v}"),
            ValuationBound::AtLeast(a) => write!(f, ">={a}"),
        }
    }
}

// --- evaluation of symbolic values at a p-adic q -----------------------------

pub fn eval_qpoly_padic(poly: &QPoly, q: &PadicNum) -> Result<PadicNum> {
    let p = q.prime();
    let prec = q.rel_prec_or(1);
    let mut acc = PadicNum::exact_zero(p);
    for c in poly.coeffs().iter().rev() {
        acc = acc.mul(q)?;
        acc = acc.add(&PadicNum::from_rational(c, p, prec)?)?;
    }
    Ok(acc)
}

pub fn eval_qrat_padic(x: &QRat, q: &PadicNum) -> Result<PadicNum> {
    let num = eval_qpoly_padic(x.num(), q)?;
    let den = eval_qpoly_padic(x.den(), q)?;
    num.div(&den)
}

/// Evaluates plain + logpart * L with L = (q-1)/log q computed through the
/// p-adic logarithm.
pub fn eval_lext_padic(x: &LExt, q: &PadicNum) -> Result<PadicNum> {
    let plain = eval_qrat_padic(x.plain(), q)?;
    if !x.has_logpart() {
        return Ok(plain);
    }
    let p = q.prime();
    let one = PadicNum::from_u64(1, p, q.rel_prec_or(1));
    let l = q.sub(&one)?.div(&q.log()?)?;
    plain.add(&eval_qrat_padic(x.logpart(), q)?.mul(&l)?)
}

// --- Riemann sums -------------------------------------------------------------

/// What gets integrated: a plain monomial q^{jx}, or one of the four family
/// integrands q^{wx} [x]_q^n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrand {
    Monomial { kind: IntegralKind, exponent: i64 },
    Family { tag: FamilyTag, n: usize },
}

impl Integrand {
    /// (kind, combined exponent of q^x per step beyond the measure weight,
    /// power of [x]_q).
    fn decompose(&self) -> Result<(IntegralKind, i64, usize)> {
        match self {
            Integrand::Monomial { kind, exponent } => Ok((*kind, *exponent, 0)),
            Integrand::Family { tag, n } => {
                let (kind, w) = match tag {
                    FamilyTag::ModifiedEuler => (IntegralKind::Fermionic, -1),
                    FamilyTag::KimEuler => (IntegralKind::Fermionic, 0),
                    FamilyTag::CarlitzBernoulli => (IntegralKind::Bosonic, 0),
                    FamilyTag::ModifiedBernoulli => (IntegralKind::Bosonic, -1),
                    other => {
                        return Err(Error::InvalidParameter(format!(
                            "family {other} has no p-adic integral representation"
                        )))
                    }
                };
                Ok((kind, w, *n))
            }
        }
    }

    /// The exact symbolic value the level sums converge to.
    pub fn exact_value(&self) -> Result<LExt> {
        match self {
            Integrand::Monomial { kind, exponent } => Ok(integral_monomial(*kind, *exponent)),
            Integrand::Family { tag, n } => closed_value(*tag, *n).ok_or_else(|| {
                Error::InvalidParameter(format!("family {tag} has no integral closed form"))
            }),
        }
    }
}

/// Finite-level Riemann sum configuration.
#[derive(Debug, Clone)]
pub struct RiemannSumConfig {
    pub p: u64,
    /// Rational q with v_p(q - 1) >= 1 (the default choice elsewhere is 1+p).
    pub q: BigRat,
    /// Level N: the sum runs over 0..p^N.
    pub level: u32,
    /// Target digits of the result.
    pub precision: u32,
    pub integrand: Integrand,
}

/// Work cap: p^N may not exceed this many points per sum.
pub const MAX_POINTS: u64 = 1_000_000;

fn validate(cfg: &RiemannSumConfig) -> Result<u64> {
    if cfg.p < 3 || cfg.p % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "p must be an odd prime, got {}",
            cfg.p
        )));
    }
    let diff = &cfg.q - BigRat::one();
    if !diff.is_zero() {
        let vnum = int_valuation(diff.numer(), cfg.p).unwrap();
        let vden = int_valuation(diff.denom(), cfg.p).unwrap();
        if (vnum as i64 - vden as i64) < 1 {
            return Err(Error::InvalidParameter(format!(
                "q = {} is not congruent to 1 mod {}",
                cfg.q, cfg.p
            )));
        }
    }
    let points = (cfg.p as f64).powi(cfg.level as i32);
    if points > MAX_POINTS as f64 {
        return Err(Error::InvalidParameter(format!(
            "p^N = {}^{} exceeds the work cap of {} points",
            cfg.p, cfg.level, MAX_POINTS
        )));
    }
    Ok((cfg.p as u64).pow(cfg.level))
}

/// S_N = (1/[p^N]_{+-q}) sum_{x<p^N} f(x) (+-q)^x computed exactly modulo a
/// working power of p, with incremental power updates.
pub fn riemann_sum(cfg: &RiemannSumConfig) -> Result<PadicNum> {
    let points = validate(cfg)?;
    let (kind, w, n) = cfg.integrand.decompose()?;
    let p = cfg.p;
    // Margin: the bosonic normalizer [p^N]_q carries valuation about N, and
    // q-integer powers can shift a few more digits.
    let work = cfg.precision + 2 * cfg.level + 8;
    let modulus = p_pow(p, work);
    let q_res = {
        let num = cfg.q.numer().mod_floor(&BigInt::from(modulus.clone()));
        let den = cfg.q.denom().mod_floor(&BigInt::from(modulus.clone()));
        let den_inv = mod_inverse_big(&den.to_biguint().unwrap(), &modulus)
            .ok_or(Error::DivisionByZero)?;
        (num.to_biguint().unwrap() * den_inv) % &modulus
    };
    // Per-step multiplier for q^{(1+w)x} (the measure's q^x combined with the
    // integrand weight); 1 + w is 0 or 1 in scope, and 1 + j >= 0 for the
    // monomials the oracle covers.
    let step_exp = 1 + w;
    if step_exp < 0 {
        return Err(Error::InvalidParameter(format!(
            "combined exponent q^{{{step_exp}x}} not supported"
        )));
    }
    let step = q_res.modpow(&BigUint::from(step_exp as u64), &modulus);
    let fermionic = kind == IntegralKind::Fermionic;

    let mut weighted = BigUint::zero(); // sum f(x) (+-q)^x
    let mut normalizer = BigUint::zero(); // [p^N]_{+-q}
    let mut pw = BigUint::one(); // q^{(1+w)x}
    let mut qx = BigUint::one(); // q^x
    let mut qint = BigUint::zero(); // [x]_q
    for x in 0..points {
        let term = if n == 0 {
            pw.clone()
        } else {
            (&pw * qint.modpow(&BigUint::from(n), &modulus)) % &modulus
        };
        let negate = fermionic && x % 2 == 1;
        if negate {
            weighted = (&weighted + &modulus - term) % &modulus;
            normalizer = (&normalizer + &modulus - &qx) % &modulus;
        } else {
            weighted = (&weighted + term) % &modulus;
            normalizer = (&normalizer + &qx) % &modulus;
        }
        pw = (&pw * &step) % &modulus;
        qint = (&qint + &qx) % &modulus;
        qx = (&qx * &q_res) % &modulus;
    }
    let sum = PadicNum::from_residue(weighted, p, work);
    let norm = PadicNum::from_residue(normalizer, p, work);
    sum.div(&norm)
}

/// One measured level of a convergence run.
#[derive(Debug, Clone, Serialize)]
pub struct LevelReport {
    pub level: u32,
    pub points: u64,
    pub valuation: ValuationBound,
    pub wall_ms: f64,
}

/// Valuations of S_N minus the exact integral across a range of levels,
/// with the fitted constant c such that valuation >= N - c throughout.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceProfile {
    pub p: u64,
    pub integrand_label: String,
    pub levels: Vec<LevelReport>,
    /// max over levels of (N - measured valuation); None when every level
    /// was exact zero.
    pub c: Option<i64>,
}

impl ConvergenceProfile {
    pub fn valuations_nondecreasing(&self) -> bool {
        let vals: Vec<i64> = self
            .levels
            .iter()
            .map(|l| match l.valuation {
                ValuationBound::ExactZero => i64::MAX,
                ValuationBound::Exact(v) => v,
                ValuationBound::AtLeast(a) => a,
            })
            .collect();
        vals.windows(2).all(|w| w[1] >= w[0])
    }
}

pub fn integrand_label(integrand: &Integrand) -> String {
    match integrand {
        Integrand::Monomial { kind, exponent } => format!(
            "{}-monomial j={exponent}",
            if *kind == IntegralKind::Fermionic {
                "fermionic"
            } else {
                "bosonic"
            }
        ),
        Integrand::Family { tag, n } => format!("{tag} n={n}"),
    }
}

/// Runs the Riemann sum at each level and measures the valuation of the
/// difference to the exact symbolic value evaluated at the p-adic q.
pub fn convergence_profile(
    cfg: &RiemannSumConfig,
    levels: impl IntoIterator<Item = u32>,
) -> Result<ConvergenceProfile> {
    let exact = cfg.integrand.exact_value()?;
    // Extra digits so the exact target never limits the comparison.
    let target_prec = cfg.precision + 2 * cfg.level.max(6) + 8;
    let q_padic = PadicNum::from_rational(&cfg.q, cfg.p, target_prec)?;
    let exact_padic = eval_lext_padic(&exact, &q_padic)?;
    let mut reports = Vec::new();
    let mut c: Option<i64> = None;
    for level in levels {
        let t0 = Instant::now();
        let mut level_cfg = cfg.clone();
        level_cfg.level = level;
        let s = riemann_sum(&level_cfg)?;
        let diff = s.sub(&exact_padic)?;
        let valuation = diff.valuation_bound();
        if let ValuationBound::Exact(v) = valuation {
            c = Some(c.map_or(level as i64 - v, |c| c.max(level as i64 - v)));
        }
        reports.push(LevelReport {
            level,
            points: (cfg.p as u64).pow(level),
            valuation,
            wall_ms: t0.elapsed().as_secs_f64() * 1e3,
        });
    }
    Ok(ConvergenceProfile {
        p: cfg.p,
        integrand_label: integrand_label(&cfg.integrand),
        levels: reports,
        c,
    })
}
