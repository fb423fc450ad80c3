use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::bigrat::BigRat;
use super::qrat::{poly_from_strings, poly_to_strings, QRat};
use crate::error::{Error, Result};

/// Rank-2 module element `plain + logpart * L` over Q(q), where L stands for
/// the constant (q-1)/log q. Addition and Q(q)-scaling are componentwise; a
/// product of two elements that both carry a log-part does not exist in the
/// module and is rejected.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LExt {
    plain: QRat,
    logpart: QRat,
}

impl LExt {
    pub fn new(plain: QRat, logpart: QRat) -> LExt {
        LExt { plain, logpart }
    }

    pub fn from_qrat(plain: QRat) -> LExt {
        LExt {
            plain,
            logpart: QRat::zero(),
        }
    }

    pub fn from_int(c: i64) -> LExt {
        LExt::from_qrat(QRat::from_int(c))
    }

    pub fn zero() -> LExt {
        LExt::from_qrat(QRat::zero())
    }

    pub fn one() -> LExt {
        LExt::from_qrat(QRat::one())
    }

    /// The formal constant L = (q-1)/log q.
    pub fn l_symbol() -> LExt {
        LExt {
            plain: QRat::zero(),
            logpart: QRat::one(),
        }
    }

    pub fn plain(&self) -> &QRat {
        &self.plain
    }

    pub fn logpart(&self) -> &QRat {
        &self.logpart
    }

    pub fn is_zero(&self) -> bool {
        self.plain.is_zero() && self.logpart.is_zero()
    }

    pub fn has_logpart(&self) -> bool {
        !self.logpart.is_zero()
    }

    /// Scalar multiplication by a field element.
    pub fn scale(&self, s: &QRat) -> LExt {
        LExt {
            plain: &self.plain * s,
            logpart: &self.logpart * s,
        }
    }

    pub fn div_qrat(&self, s: &QRat) -> Result<LExt> {
        let inv = s.recip()?;
        Ok(self.scale(&inv))
    }

    /// Module product: defined only when at most one factor carries L.
    pub fn checked_mul(&self, rhs: &LExt) -> Result<LExt> {
        if self.has_logpart() && rhs.has_logpart() {
            return Err(Error::LogPartProduct);
        }
        Ok(LExt {
            plain: &self.plain * &rhs.plain,
            logpart: &(&self.plain * &rhs.logpart) + &(&self.logpart * &rhs.plain),
        })
    }

    /// Exact evaluation. With a log-part present this is only defined at
    /// q = 1, where the L factor takes its limit value 1.
    pub fn eval_exact(&self, q0: &BigRat) -> Result<BigRat> {
        if !self.has_logpart() {
            return self.plain.eval_exact(q0);
        }
        if q0.is_one() {
            Ok(self.plain.eval_exact(q0)? + self.logpart.eval_exact(q0)?)
        } else {
            Err(Error::TranscendentalEval)
        }
    }

    /// Numeric evaluation with the principal logarithm; at q0 = 1 the L
    /// factor is 1 by the limit convention.
    pub fn eval_complex(&self, q0: Complex64) -> Result<Complex64> {
        let plain = self.plain.eval_complex(q0)?;
        if !self.has_logpart() {
            return Ok(plain);
        }
        let l = l_value(q0)?;
        Ok(plain + self.logpart.eval_complex(q0)? * l)
    }

    /// Like [`eval_complex`], but with exact rational evaluation of the two
    /// components (one rounding each); only the L factor itself is floating.
    ///
    /// [`eval_complex`]: LExt::eval_complex
    pub fn eval_complex_stable(&self, q0: Complex64) -> Result<Complex64> {
        let plain = self.plain.eval_complex_stable(q0)?;
        if !self.has_logpart() {
            return Ok(plain);
        }
        let l = l_value(q0)?;
        Ok(plain + self.logpart.eval_complex_stable(q0)? * l)
    }

    /// Exact limit as q -> 1 of plain + logpart * L, by Taylor expansion of
    /// everything at q = 1 (L = 1 + e/2 - e^2/12 + ...).
    pub fn limit_q_to_1(&self) -> Result<BigRat> {
        if !self.has_logpart() {
            return self.plain.limit_q_to_1();
        }
        if self.is_zero() {
            return Ok(BigRat::zero());
        }
        // Over the common denominator D1*D2 the numerator is A + B*L with
        // A = N1*D2 and B = N2*D1; a nonzero combination of that shape can
        // vanish at worst to order deg A + deg B + 1 (else L would be a
        // rational function), so expanding a little past that bound always
        // exhibits the leading coefficient.
        let a = (self.plain.num() * self.logpart.den()).shift_to_one();
        let b = (self.logpart.num() * self.plain.den()).shift_to_one();
        let d = (self.plain.den() * self.logpart.den()).shift_to_one();
        let v = d.iter().position(|c| !c.is_zero()).expect("den nonzero");
        let t = a.len() + b.len() + v + 2;
        let lser = l_series(t + 1);
        let mut c = vec![BigRat::zero(); t + 1];
        for (i, ai) in a.iter().enumerate() {
            c[i] += ai;
        }
        for (i, bi) in b.iter().enumerate() {
            if bi.is_zero() {
                continue;
            }
            for (k, lk) in lser.iter().enumerate() {
                if i + k > t {
                    break;
                }
                c[i + k] += bi * lk;
            }
        }
        let u = c.iter().position(|x| !x.is_zero());
        match u {
            None => unreachable!("A + B*L cannot vanish identically past the expansion bound"),
            Some(u) if u < v => Err(Error::DivergentAtOne),
            Some(u) if u > v => Ok(BigRat::zero()),
            Some(u) => Ok(c[u].clone() / d[v].clone()),
        }
    }
}

/// Numeric L(q) = (q-1)/log q, principal branch; L(1) = 1.
pub fn l_value(q0: Complex64) -> Result<Complex64> {
    if q0 == Complex64::new(1.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if q0.norm() == 0.0 || (q0.im == 0.0 && q0.re <= 0.0) {
        return Err(Error::InvalidEvalPoint(format!(
            "L undefined at q = {q0} (principal log)"
        )));
    }
    Ok((q0 - 1.0) / q0.ln())
}

/// Taylor coefficients of L = e/log(1+e) around e = 0, up to `len` terms.
pub(crate) fn l_series(len: usize) -> Vec<BigRat> {
    // log(1+e)/e has coefficients m_k = (-1)^k/(k+1); invert the series.
    let mut l = Vec::with_capacity(len);
    l.push(BigRat::one());
    for n in 1..len {
        let mut acc = BigRat::zero();
        for k in 1..=n {
            let mk = BigRat::new(
                if k % 2 == 0 { 1.into() } else { (-1).into() },
                (k as i64 + 1).into(),
            );
            acc += mk * &l[n - k];
        }
        l.push(-acc);
    }
    l
}

impl Add for &LExt {
    type Output = LExt;
    fn add(self, rhs: &LExt) -> LExt {
        LExt {
            plain: &self.plain + &rhs.plain,
            logpart: &self.logpart + &rhs.logpart,
        }
    }
}

impl Sub for &LExt {
    type Output = LExt;
    fn sub(self, rhs: &LExt) -> LExt {
        LExt {
            plain: &self.plain - &rhs.plain,
            logpart: &self.logpart - &rhs.logpart,
        }
    }
}

impl Neg for &LExt {
    type Output = LExt;
    fn neg(self) -> LExt {
        LExt {
            plain: -&self.plain,
            logpart: -&self.logpart,
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for LExt {
            type Output = LExt;
            fn $method(self, rhs: LExt) -> LExt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LExt> for LExt {
            type Output = LExt;
            fn $method(self, rhs: &LExt) -> LExt {
                (&self).$method(rhs)
            }
        }
        impl $trait<LExt> for &LExt {
            type Output = LExt;
            fn $method(self, rhs: LExt) -> LExt {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);

impl Neg for LExt {
    type Output = LExt;
    fn neg(self) -> LExt {
        -&self
    }
}

impl fmt::Display for LExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.has_logpart() {
            return write!(f, "{}", self.plain);
        }
        if self.plain.is_zero() {
            if self.logpart.is_one() {
                return write!(f, "L");
            }
            return write!(f, "({}) * L", self.logpart);
        }
        write!(f, "{} + ({}) * L", self.plain, self.logpart)
    }
}

impl fmt::Debug for LExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LExt({self})")
    }
}

// JSON: the plain part's num/den at top level plus a "logpart" object;
// "logpart" may be omitted on input when zero.
impl Serialize for LExt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("LExt", 3)?;
        s.serialize_field("num", &poly_to_strings(self.plain.num()))?;
        s.serialize_field("den", &poly_to_strings(self.plain.den()))?;
        s.serialize_field("logpart", &self.logpart)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for LExt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct LExtVisitor;

        impl<'de> Visitor<'de> for LExtVisitor {
            type Value = LExt;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object with \"num\", \"den\" and optional \"logpart\"")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<LExt, A::Error> {
                let mut num: Option<Vec<String>> = None;
                let mut den: Option<Vec<String>> = None;
                let mut logpart: Option<QRat> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "num" => num = Some(map.next_value()?),
                        "den" => den = Some(map.next_value()?),
                        "logpart" => logpart = Some(map.next_value()?),
                        other => {
                            return Err(de::Error::unknown_field(
                                other,
                                &["num", "den", "logpart"],
                            ));
                        }
                    }
                }
                let num = num.ok_or_else(|| de::Error::missing_field("num"))?;
                let den = den.ok_or_else(|| de::Error::missing_field("den"))?;
                let num = poly_from_strings(&num).map_err(de::Error::custom)?;
                let den = poly_from_strings(&den).map_err(de::Error::custom)?;
                let plain = QRat::new(num, den).map_err(de::Error::custom)?;
                Ok(LExt::new(plain, logpart.unwrap_or_else(QRat::zero)))
            }
        }

        deserializer.deserialize_map(LExtVisitor)
    }
}
