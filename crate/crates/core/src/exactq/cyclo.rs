use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt;
use std::sync::Mutex;

use num_complex::Complex64;
use once_cell::sync::Lazy;
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::bigrat::BigRat;
use super::qpoly::QPoly;
use super::qrat::QRat;
use crate::error::{Error, Result};

pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

static CYCLO_CACHE: Lazy<Mutex<HashMap<u64, QPoly>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// The m-th cyclotomic polynomial (integer coefficients, stored over Q).
pub fn cyclotomic_polynomial(m: u64) -> QPoly {
    if let Some(p) = CYCLO_CACHE.lock().unwrap().get(&m) {
        return p.clone();
    }
    // (q^m - 1) / prod of the lower cyclotomic factors.
    let mut coeffs = vec![BigRat::from_integer((-1).into())];
    coeffs.extend(std::iter::repeat_n(BigRat::from_integer(0.into()), m as usize - 1));
    coeffs.push(BigRat::from_integer(1.into()));
    let mut num = QPoly::new(coeffs);
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = num.exact_div(&phi_d).expect("cyclotomic factor divides");
        }
    }
    CYCLO_CACHE.lock().unwrap().insert(m, num.clone());
    num
}

/// Element of the m-th cyclotomic ring over Q(q), written in the power basis
/// 1, z, ..., z^{phi(m)-1} modulo the m-th cyclotomic polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloElem {
    order: u64,
    coords: Vec<QRat>,
}

impl CycloElem {
    pub fn zero(order: u64) -> CycloElem {
        assert!(order >= 1);
        CycloElem {
            order,
            coords: vec![QRat::zero(); euler_phi(order) as usize],
        }
    }

    pub fn one(order: u64) -> CycloElem {
        let mut e = CycloElem::zero(order);
        e.coords[0] = QRat::one();
        e
    }

    /// z^k reduced into the power basis (k taken modulo the order).
    pub fn root_power(order: u64, k: i64) -> CycloElem {
        let k = k.rem_euclid(order as i64) as usize;
        let poly = QPoly::monomial(BigRat::from_integer(1.into()), k);
        CycloElem::from_poly(order, &poly)
    }

    /// Reduces an arbitrary polynomial in the root of unity into the basis.
    pub fn from_poly(order: u64, poly: &QPoly) -> CycloElem {
        let dim = euler_phi(order) as usize;
        let (_, rem) = poly
            .div_rem(&cyclotomic_polynomial(order))
            .expect("cyclotomic polynomial is nonzero");
        let mut coords = vec![QRat::zero(); dim];
        for (i, c) in rem.coeffs().iter().enumerate() {
            coords[i] = QRat::from_rat(c.clone());
        }
        CycloElem { order, coords }
    }

    pub fn from_coords(order: u64, coords: Vec<QRat>) -> Result<CycloElem> {
        if coords.len() != euler_phi(order) as usize {
            return Err(Error::InvalidParameter(format!(
                "expected {} coordinates for order {}, got {}",
                euler_phi(order),
                order,
                coords.len()
            )));
        }
        Ok(CycloElem { order, coords })
    }

    pub fn from_qrat(order: u64, value: QRat) -> CycloElem {
        let mut e = CycloElem::zero(order);
        e.coords[0] = value;
        e
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coords(&self) -> &[QRat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// The single rational-function component of a rank-1 element.
    pub fn as_scalar(&self) -> Option<&QRat> {
        if self.coords.len() == 1 {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn check_order(&self, other: &CycloElem) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &CycloElem) -> Result<CycloElem> {
        self.check_order(other)?;
        Ok(CycloElem {
            order: self.order,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &CycloElem) -> Result<CycloElem> {
        self.check_order(other)?;
        Ok(CycloElem {
            order: self.order,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mul(&self, other: &CycloElem) -> Result<CycloElem> {
        self.check_order(other)?;
        let n = self.coords.len();
        let mut conv = vec![QRat::zero(); 2 * n];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] = &conv[i + j] + &(a * b);
                }
            }
        }
        Ok(reduce_coords(self.order, conv))
    }

    pub fn scale(&self, s: &QRat) -> CycloElem {
        CycloElem {
            order: self.order,
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    /// Numeric embedding z -> exp(2 pi i / m), coordinates evaluated at q0.
    pub fn embed_at(&self, q0: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = TAU * j as f64 / self.order as f64;
            acc += c.eval_complex(q0)? * Complex64::new(angle.cos(), angle.sin());
        }
        Ok(acc)
    }
}

/// Reduce power-basis coordinates that may extend past phi(m) back into the
/// basis, using the cyclotomic relation.
fn reduce_coords(order: u64, conv: Vec<QRat>) -> CycloElem {
    let dim = euler_phi(order) as usize;
    let phi = cyclotomic_polynomial(order);
    // The high coordinates multiply reductions of z^k; fold them down by
    // repeatedly replacing z^deg with the lower-degree tail of Phi_m.
    let mut work = conv;
    let mut top = work.len();
    while top > dim {
        top -= 1;
        let c = work[top].clone();
        if c.is_zero() {
            continue;
        }
        work[top] = QRat::zero();
        // z^top = z^(top-dim) * z^dim, z^dim = -(phi - z^dim)
        for (i, pc) in phi.coeffs().iter().take(dim).enumerate() {
            let contrib = &c * &QRat::from_rat(-pc.clone());
            let idx = top - dim + i;
            work[idx] = &work[idx] + &contrib;
        }
    }
    work.truncate(dim);
    work.resize(dim, QRat::zero());
    CycloElem {
        order,
        coords: work,
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "] (zeta_{})", self.order)
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElem({self})")
    }
}

impl Serialize for CycloElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CycloElem", 2)?;
        s.serialize_field("order", &self.order)?;
        s.serialize_field("coords", &self.coords)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for CycloElem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct CycloVisitor;

        impl<'de> Visitor<'de> for CycloVisitor {
            type Value = CycloElem;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object with \"order\" and \"coords\"")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<CycloElem, A::Error> {
                let mut order: Option<u64> = None;
                let mut coords: Option<Vec<QRat>> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "order" => order = Some(map.next_value()?),
                        "coords" => coords = Some(map.next_value()?),
                        other => {
                            return Err(de::Error::unknown_field(other, &["order", "coords"]));
                        }
                    }
                }
                let order = order.ok_or_else(|| de::Error::missing_field("order"))?;
                let coords = coords.ok_or_else(|| de::Error::missing_field("coords"))?;
                CycloElem::from_coords(order, coords).map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_map(CycloVisitor)
    }
}
