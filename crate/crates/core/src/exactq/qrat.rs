use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::bigrat::{format_rat, parse_rat, BigRat};
use super::qpoly::QPoly;
use crate::error::{Error, Result};

/// Element of the rational function field Q(q), kept canonical at all times:
/// gcd(num, den) = 1, den monic, content folded into the numerator. Equality
/// of values is therefore equality of representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    num: QPoly,
    den: QPoly,
}

impl QRat {
    /// Canonicalizing constructor; the only way values enter the field.
    ///
    /// Reduction runs on primitive integer polynomials (the rational content
    /// is split off up front), which keeps the gcd and the two cofactor
    /// divisions in fast integer arithmetic.
    pub fn new(num: QPoly, den: QPoly) -> Result<QRat> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        if num.is_zero() {
            return Ok(QRat {
                num: QPoly::zero(),
                den: QPoly::one(),
            });
        }
        let (num_int, num_content) = num.primitive_parts();
        let (den_int, den_content) = den.primitive_parts();
        let split = super::modgcd::gcd_split_int(&num_int, &den_int);
        // num/den = (num_content/den_content) * left/right with right primitive;
        // divide through by right's leading coefficient to make it monic.
        let lc = BigRat::from(split.right.last().unwrap().clone());
        let num_scale = num_content / (den_content * &lc);
        let num = QPoly::new(
            split
                .left
                .iter()
                .map(|c| BigRat::from(c.clone()) * &num_scale)
                .collect(),
        );
        let den = QPoly::new(
            split
                .right
                .iter()
                .map(|c| BigRat::from(c.clone()) / &lc)
                .collect(),
        );
        Ok(QRat { num, den })
    }

    /// Constructor for operands already known to be reduced with monic
    /// denominator (internal fast path).
    fn from_reduced(num: QPoly, den: QPoly) -> QRat {
        debug_assert!(den.is_monic() || (num.is_zero() && den.is_one()));
        QRat { num, den }
    }

    pub fn from_poly(p: QPoly) -> QRat {
        QRat {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn from_rat(c: BigRat) -> QRat {
        QRat::from_poly(QPoly::constant(c))
    }

    pub fn from_int(c: i64) -> QRat {
        QRat::from_poly(QPoly::from_int(c))
    }

    pub fn zero() -> QRat {
        QRat::from_poly(QPoly::zero())
    }

    pub fn one() -> QRat {
        QRat::from_poly(QPoly::one())
    }

    /// The indeterminate q.
    pub fn var() -> QRat {
        QRat::from_poly(QPoly::var())
    }

    /// `q^k` for any integer k (negative exponents give 1/q^|k|).
    pub fn var_pow(k: i64) -> QRat {
        if k >= 0 {
            QRat::from_poly(QPoly::monomial(BigRat::one(), k as usize))
        } else {
            QRat::from_reduced(QPoly::one(), QPoly::monomial(BigRat::one(), (-k) as usize))
        }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<BigRat> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Multiplication by a rational constant (no reduction needed).
    pub fn scale_rat(&self, c: &BigRat) -> QRat {
        if c.is_zero() {
            return QRat::zero();
        }
        QRat::from_reduced(self.num.scale(c), self.den.clone())
    }

    pub fn recip(&self) -> Result<QRat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc_inv = self.num.leading_coeff().unwrap().recip();
        Ok(QRat::from_reduced(
            self.den.scale(&lc_inv),
            self.num.scale(&lc_inv),
        ))
    }

    pub fn checked_div(&self, rhs: &QRat) -> Result<QRat> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, e: i64) -> Result<QRat> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        let mut acc = QRat::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Ring homomorphism `q -> q^d`.
    pub fn subst_power(&self, d: u32) -> QRat {
        if d == 1 {
            return self.clone();
        }
        // Substitution preserves reducedness: gcd(f(q^d), g(q^d)) = gcd(f,g)(q^d).
        let num = self.num.subst_power(d);
        let den = self.den.subst_power(d);
        let lc_inv = den.leading_coeff().unwrap().recip();
        QRat::from_reduced(num.scale(&lc_inv), den.scale(&lc_inv))
    }

    /// Relabels the indeterminate as the d-th root: the result is the same
    /// element written over Q with q = Q^d. Coefficient-wise this is the same
    /// spreading map as [`subst_power`]; the difference is purely in how the
    /// caller interprets the variable (Q^a stands for q^{a/d}).
    ///
    /// [`subst_power`]: QRat::subst_power
    pub fn subst_root(&self, d: u32) -> QRat {
        self.subst_power(d)
    }

    /// Exact evaluation; errors on poles.
    pub fn eval_exact(&self, q0: &BigRat) -> Result<BigRat> {
        let den = self.den.eval(q0);
        if den.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(q0) / den)
    }

    pub fn eval_complex(&self, q0: Complex64) -> Result<Complex64> {
        let den = self.den.eval_complex(q0);
        if den.norm() == 0.0 {
            return Err(Error::Pole);
        }
        Ok(self.num.eval_complex(q0) / den)
    }

    /// Exact limit as q -> 1, computed from the Taylor expansions of
    /// numerator and denominator at q = 1.
    pub fn limit_q_to_1(&self) -> Result<BigRat> {
        if self.is_zero() {
            return Ok(BigRat::zero());
        }
        let num = self.num.shift_to_one();
        let den = self.den.shift_to_one();
        let u = num.iter().position(|c| !c.is_zero());
        let v = den
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero denominator");
        match u {
            None => Ok(BigRat::zero()),
            Some(u) if u < v => Err(Error::DivergentAtOne),
            Some(u) if u > v => Ok(BigRat::zero()),
            Some(u) => Ok(num[u].clone() / den[v].clone()),
        }
    }
}

impl Add for &QRat {
    type Output = QRat;
    fn add(self, rhs: &QRat) -> QRat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // Henrici's scheme: with g = gcd(b, d), b = g b1, d = g d1, the sum
        // (a d1 + c b1) / (g b1 d1) only needs a reduction against g.
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            let den = &self.den * &rhs.den;
            return QRat::from_reduced_unchecked_monic(num, den);
        }
        let b1 = self.den.exact_div(&g).unwrap();
        let d1 = rhs.den.exact_div(&g).unwrap();
        let t = &(&self.num * &d1) + &(&rhs.num * &b1);
        if t.is_zero() {
            return QRat::zero();
        }
        let g2 = t.gcd(&g);
        if g2.is_one() {
            let den = &self.den * &d1;
            QRat::from_reduced_unchecked_monic(t, den)
        } else {
            let num = t.exact_div(&g2).unwrap();
            let den = &self.den.exact_div(&g2).unwrap() * &d1;
            QRat::from_reduced_unchecked_monic(num, den)
        }
    }
}

impl QRat {
    /// num/den already coprime; only the monic normalization may be missing.
    fn from_reduced_unchecked_monic(num: QPoly, den: QPoly) -> QRat {
        if num.is_zero() {
            return QRat::zero();
        }
        if den.is_monic() {
            return QRat::from_reduced(num, den);
        }
        let lc_inv = den.leading_coeff().unwrap().recip();
        QRat::from_reduced(num.scale(&lc_inv), den.scale(&lc_inv))
    }
}

impl Sub for &QRat {
    type Output = QRat;
    fn sub(self, rhs: &QRat) -> QRat {
        self + &(-rhs)
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat::from_reduced(-&self.num, self.den.clone())
    }
}

impl Mul for &QRat {
    type Output = QRat;
    fn mul(self, rhs: &QRat) -> QRat {
        if self.is_zero() || rhs.is_zero() {
            return QRat::zero();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.exact_div(&g1).unwrap() * &rhs.num.exact_div(&g2).unwrap();
        let den = &self.den.exact_div(&g2).unwrap() * &rhs.den.exact_div(&g1).unwrap();
        QRat::from_reduced_unchecked_monic(num, den)
    }
}

impl Div for &QRat {
    type Output = QRat;
    fn div(self, rhs: &QRat) -> QRat {
        self.checked_div(rhs).expect("division by zero QRat")
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for QRat {
            type Output = QRat;
            fn $method(self, rhs: QRat) -> QRat {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QRat> for QRat {
            type Output = QRat;
            fn $method(self, rhs: &QRat) -> QRat {
                (&self).$method(rhs)
            }
        }
        impl $trait<QRat> for &QRat {
            type Output = QRat;
            fn $method(self, rhs: QRat) -> QRat {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRat({self})")
    }
}

// --- JSON form: {"num": ["a/b", ...], "den": ["a/b", ...]}, ascending degree.

pub(crate) fn poly_to_strings(p: &QPoly) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".to_string()];
    }
    p.coeffs().iter().map(format_rat).collect()
}

pub(crate) fn poly_from_strings(strings: &[String]) -> Result<QPoly> {
    let coeffs = strings
        .iter()
        .map(|s| parse_rat(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(QPoly::new(coeffs))
}

impl Serialize for QRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("QRat", 2)?;
        s.serialize_field("num", &poly_to_strings(&self.num))?;
        s.serialize_field("den", &poly_to_strings(&self.den))?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for QRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct QRatVisitor;

        impl<'de> Visitor<'de> for QRatVisitor {
            type Value = QRat;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object with \"num\" and \"den\" coefficient arrays")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<QRat, A::Error> {
                let mut num: Option<Vec<String>> = None;
                let mut den: Option<Vec<String>> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "num" => num = Some(map.next_value()?),
                        "den" => den = Some(map.next_value()?),
                        other => {
                            return Err(de::Error::unknown_field(other, &["num", "den"]));
                        }
                    }
                }
                let num = num.ok_or_else(|| de::Error::missing_field("num"))?;
                let den = den.ok_or_else(|| de::Error::missing_field("den"))?;
                let num = poly_from_strings(&num).map_err(de::Error::custom)?;
                let den = poly_from_strings(&den).map_err(de::Error::custom)?;
                QRat::new(num, den).map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_map(QRatVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::super::bigrat::{rat, rat_int};
    use super::*;

    fn poly(coeffs: &[i64]) -> QPoly {
        QPoly::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    fn qr(num: &[i64], den: &[i64]) -> QRat {
        QRat::new(poly(num), poly(den)).unwrap()
    }

    #[test]
    fn normalization_examples() {
        // (q^2 - 1)/(q - 1) -> q + 1
        assert_eq!(qr(&[-1, 0, 1], &[-1, 1]), qr(&[1, 1], &[1]));
        // (0, q + 1) -> 0/1
        let z = qr(&[], &[1, 1]);
        assert!(z.is_zero());
        assert!(z.den().is_one());
        // (2q + 2, 2) -> q + 1 with monic denominator
        let r = qr(&[2, 2], &[2]);
        assert_eq!(r, qr(&[1, 1], &[1]));
        assert!(r.den().is_one());
        // zero denominator rejected
        assert_eq!(
            QRat::new(poly(&[1]), QPoly::zero()).unwrap_err(),
            Error::DivisionByZeroPolynomial
        );
    }

    #[test]
    fn field_arithmetic() {
        let one_minus_q = qr(&[1, -1], &[1]);
        let inv = qr(&[1], &[1, -1]); // 1/(1-q): monic den is q-1, so num -1
        assert_eq!(&inv * &one_minus_q, QRat::one());
        // 1/(1+q) + q/(1+q) = 1
        assert_eq!(&qr(&[1], &[1, 1]) + &qr(&[0, 1], &[1, 1]), QRat::one());
        // [2]_q / 2 = (q+1)/2
        let half_two = &qr(&[1, 1], &[1]) / &qr(&[2], &[1]);
        assert_eq!(half_two, qr(&[1, 1], &[2]));
        assert!(qr(&[1], &[1]).checked_div(&QRat::zero()).is_err());
    }

    #[test]
    fn subst_power_examples() {
        assert_eq!(qr(&[1, 1], &[1]).subst_power(3), qr(&[1, 0, 0, 1], &[1]));
        let half_two = qr(&[1, 1], &[2]);
        assert_eq!(half_two.subst_power(1), half_two);
        let inv = qr(&[1], &[1, -1]);
        assert_eq!(inv.subst_power(2), qr(&[1], &[1, 0, -1]));
    }

    #[test]
    fn subst_root_examples() {
        assert_eq!(qr(&[1, 1], &[1]).subst_root(2), qr(&[1, 0, 1], &[1]));
        let c = qr(&[5], &[3]);
        assert_eq!(c.subst_root(4), c);
    }

    #[test]
    fn subst_root_matches_fractional_power_numerically() {
        // Relabeling over Q = q^{1/3} and evaluating at Q0 = (1/2)^{1/3}
        // reproduces direct evaluation at q = 1/2; Q^2 plays q^{2/3}.
        let q0 = 0.5f64;
        let root = Complex64::new(q0.powf(1.0 / 3.0), 0.0);
        let f = qr(&[1, 1], &[1, 0, -2]);
        let direct = f.eval_complex(Complex64::new(q0, 0.0)).unwrap();
        let via_root = f.subst_root(3).eval_complex(root).unwrap();
        assert!((direct - via_root).norm() < 1e-12);

        let q_pow = QRat::var_pow(2);
        let frac_pow = q_pow.eval_complex(root).unwrap();
        assert!((frac_pow.re - q0.powf(2.0 / 3.0)).abs() < 1e-12);
        assert!(frac_pow.im.abs() < 1e-15);
    }

    #[test]
    fn eval_and_limits() {
        let r = qr(&[1, 1], &[2]); // (q+1)/2
        assert_eq!(r.eval_exact(&rat_int(1)).unwrap(), rat_int(1));
        let pole = qr(&[1], &[1, -1]);
        assert_eq!(pole.eval_exact(&rat_int(1)).unwrap_err(), Error::Pole);
        assert_eq!(
            qr(&[1], &[1, 0, 1]).eval_exact(&rat(1, 2)).unwrap(),
            rat(4, 5)
        );
        // limit of (q-1)/(2(1+q^2)) at q=1 is 0
        assert_eq!(
            qr(&[-1, 1], &[2, 0, 2]).limit_q_to_1().unwrap(),
            rat_int(0)
        );
        // genuine pole: 1/(1-q)
        assert_eq!(pole.limit_q_to_1().unwrap_err(), Error::DivergentAtOne);
        // removable: (q^2-1)/(q-1) -> 2 (already cancelled by canonical form)
        assert_eq!(qr(&[-1, 0, 1], &[-1, 1]).limit_q_to_1().unwrap(), rat_int(2));
    }

    #[test]
    fn json_round_trip() {
        let r = qr(&[1, 1], &[2]);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"num":["1/2","1/2"],"den":["1"]}"#);
        let back: QRat = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
