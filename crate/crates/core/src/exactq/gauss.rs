use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::bigrat::BigRat;
use super::qpoly::QPoly;
use super::qrat::QRat;
use crate::error::{Error, Result};

/// Complex number with exact rational parts. Every f64 is a dyadic rational,
/// so evaluation points coming from floating input are represented exactly;
/// this keeps polynomial evaluation free of cancellation error, with a
/// single rounding at the final conversion back to f64.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussRat {
    pub re: BigRat,
    pub im: BigRat,
}

impl GaussRat {
    pub fn new(re: BigRat, im: BigRat) -> GaussRat {
        GaussRat { re, im }
    }

    pub fn from_complex64(z: Complex64) -> Option<GaussRat> {
        Some(GaussRat {
            re: BigRat::from_float(z.re)?,
            im: BigRat::from_float(z.im)?,
        })
    }

    pub fn zero() -> GaussRat {
        GaussRat {
            re: BigRat::zero(),
            im: BigRat::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, other: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }

    pub fn mul(&self, other: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn div(&self, other: &GaussRat) -> Result<GaussRat> {
        let norm = &other.re * &other.re + &other.im * &other.im;
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let conj = GaussRat {
            re: other.re.clone(),
            im: -other.im.clone(),
        };
        let prod = self.mul(&conj);
        Ok(GaussRat {
            re: prod.re / &norm,
            im: prod.im / &norm,
        })
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl QPoly {
    /// Horner evaluation over exact complex rationals.
    pub fn eval_gauss(&self, z: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for c in self.coeffs().iter().rev() {
            acc = acc.mul(z);
            acc.re += c;
        }
        acc
    }
}

impl QRat {
    /// Exact evaluation at a complex rational point; only the final f64
    /// conversion rounds.
    pub fn eval_gauss(&self, z: &GaussRat) -> Result<GaussRat> {
        let den = self.den().eval_gauss(z);
        if den.is_zero() {
            return Err(Error::Pole);
        }
        self.num().eval_gauss(z).div(&den)
    }

    /// Numerically stable complex evaluation: exact arithmetic inside,
    /// rounded once at the end. Falls back to plain f64 Horner only if the
    /// input is not finite.
    pub fn eval_complex_stable(&self, q0: Complex64) -> Result<Complex64> {
        match GaussRat::from_complex64(q0) {
            Some(z) => Ok(self.eval_gauss(&z)?.to_complex64()),
            None => self.eval_complex(q0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::bigrat::{rat, rat_int};
    use super::*;

    #[test]
    fn exact_complex_arithmetic() {
        let a = GaussRat::new(rat(1, 2), rat(1, 5));
        let b = GaussRat::new(rat(3, 1), rat(-1, 2));
        let prod = a.mul(&b);
        // (1/2 + i/5)(3 - i/2) = 3/2 + 1/10 + i(3/5 - 1/4)
        assert_eq!(prod.re, rat(8, 5));
        assert_eq!(prod.im, rat(7, 20));
        let back = prod.div(&b).unwrap();
        assert_eq!(back, a);
        assert!(a.div(&GaussRat::zero()).is_err());
    }

    #[test]
    fn stable_eval_matches_plain_on_easy_input() {
        let r = QRat::new(
            QPoly::new(vec![rat_int(1), rat_int(1)]),
            QPoly::new(vec![rat_int(2)]),
        )
        .unwrap();
        let q0 = Complex64::new(0.5, 0.25);
        let plain = r.eval_complex(q0).unwrap();
        let stable = r.eval_complex_stable(q0).unwrap();
        assert!((plain - stable).norm() < 1e-15);
    }
}
