//! Polynomial versions of the number families, represented as polynomials in
//! X = q^x. Every closed form depends on x only through powers q^{xl}, so
//! working in X makes evaluation at fractional arguments a base change
//! (q -> q^d, then X = q^a) instead of a branch cut.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactq::{binomial_rat, rat_int, LExt, QPoly, QRat};
use crate::sequences::{family_recurrence, q_int, two_q, FamilyTag, QIntSign};

/// A family polynomial in X = q^{base * x} with coefficients in the
/// L-extension of Q(q). `base` records the power of q the coefficients live
/// over after a base change (1 until `subst_base` is applied).
#[derive(Clone, PartialEq, Eq)]
pub struct XPoly {
    tag: FamilyTag,
    n: usize,
    base: u32,
    coeffs: BTreeMap<usize, LExt>,
}

impl XPoly {
    pub fn tag(&self) -> FamilyTag {
        self.tag
    }

    pub fn index(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn coeff(&self, power: usize) -> LExt {
        self.coeffs.get(&power).cloned().unwrap_or_else(LExt::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, LExt> {
        &self.coeffs
    }

    pub fn x_degree(&self) -> usize {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    fn insert(coeffs: &mut BTreeMap<usize, LExt>, power: usize, value: LExt) {
        if value.is_zero() {
            return;
        }
        match coeffs.entry(power) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &value;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Coefficient field base change q -> q^d. X afterwards stands for
    /// (q^d)^x; the polynomial becomes the same family member over q^d.
    pub fn subst_base(&self, d: u32) -> XPoly {
        XPoly {
            tag: self.tag,
            n: self.n,
            base: self.base * d,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&p, c)| {
                    (
                        p,
                        LExt::new(c.plain().subst_power(d), c.logpart().subst_power(d)),
                    )
                })
                .collect(),
        }
    }

    /// Evaluates at integer x = k by substituting X = q^{base * k}.
    pub fn eval_at_integer(&self, k: u64) -> LExt {
        let mut acc = LExt::zero();
        for (&p, c) in &self.coeffs {
            let power = QRat::var_pow((self.base as u64 * k * p as u64) as i64);
            acc = &acc + &c.scale(&power);
        }
        acc
    }

    /// Evaluates at the fraction x = a/d. The polynomial must already be
    /// base-changed to exactly q^d so that X = q^{d * (a/d)} = q^a stays a
    /// true power of q.
    pub fn eval_at_fraction(&self, a: u64, d: u32) -> Result<LExt> {
        if self.base != d {
            return Err(Error::FractionalPower {
                base: self.base,
                requested: d,
            });
        }
        let mut acc = LExt::zero();
        for (&p, c) in &self.coeffs {
            let power = QRat::var_pow((a * p as u64) as i64);
            acc = &acc + &c.scale(&power);
        }
        Ok(acc)
    }

    /// Numeric evaluation at real x >= 0 and complex q with principal
    /// branches: X = q^{base * x}. Coefficients are evaluated in exact
    /// rational arithmetic so that the canonicalized numerator/denominator
    /// polynomials do not leak cancellation error into the sum.
    pub fn eval_complex(&self, x: f64, q0: num_complex::Complex64) -> Result<num_complex::Complex64> {
        let ln_q = q0.ln();
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (&p, c) in &self.coeffs {
            let xpow = (ln_q * (self.base as f64 * x * p as f64)).exp();
            acc += c.eval_complex_stable(q0)? * xpow;
        }
        Ok(acc)
    }

    /// Scales every coefficient.
    pub fn scale(&self, s: &QRat) -> XPoly {
        let mut coeffs = BTreeMap::new();
        for (&p, c) in &self.coeffs {
            Self::insert(&mut coeffs, p, c.scale(s));
        }
        XPoly {
            tag: self.tag,
            n: self.n,
            base: self.base,
            coeffs,
        }
    }

}

/// Builds the degree-n member of a family as a polynomial in X = q^x.
///
/// The Euler-type families come straight from their closed forms (the
/// coefficient of X^l). The Bernoulli-type families are expanded through
/// [x+y]_q^n = sum_i C(n,i) q^{xi} [y]_q^i [x]_q^{n-i} under the integral,
/// with [x]_q rewritten as (1 - X)/(1 - q).
pub fn build_xpoly(tag: FamilyTag, n: usize) -> XPoly {
    let mut coeffs = BTreeMap::new();
    match tag {
        FamilyTag::ModifiedEuler | FamilyTag::KimEuler => {
            let shift = if tag == FamilyTag::KimEuler { 1 } else { 0 };
            let prefactor = &two_q()
                / &QRat::from_poly(QPoly::new(vec![rat_int(1), rat_int(-1)]).pow(n as u32));
            for l in 0..=n {
                let denom = QRat::from_poly(
                    QPoly::monomial(rat_int(1), l + shift) + QPoly::one(),
                );
                let mut c = &prefactor * &denom.recip().unwrap();
                c = c.scale_rat(&binomial_rat(n as u64, l as u64));
                if l % 2 == 1 {
                    c = -c;
                }
                XPoly::insert(&mut coeffs, l, LExt::from_qrat(c));
            }
        }
        FamilyTag::CarlitzBernoulli | FamilyTag::ModifiedBernoulli => {
            // sum_i C(n,i) X^i family_i * ((1 - X)/(1 - q))^{n-i}
            let one_minus_q_inv = QRat::new(
                QPoly::one(),
                QPoly::new(vec![rat_int(1), rat_int(-1)]),
            )
            .unwrap();
            for i in 0..=n {
                let fam_i = family_recurrence(tag, i);
                let outer = fam_i.scale(&QRat::from_rat(binomial_rat(n as u64, i as u64)));
                let m = n - i;
                let scalar = one_minus_q_inv.pow(m as i64).unwrap();
                // (1 - X)^m expands over X
                for t in 0..=m {
                    let mut w = binomial_rat(m as u64, t as u64);
                    if t % 2 == 1 {
                        w = -w;
                    }
                    let contrib = outer.scale(&scalar.scale_rat(&w));
                    XPoly::insert(&mut coeffs, i + t, contrib);
                }
            }
        }
        FamilyTag::CarlitzXi | FamilyTag::ClassicalEuler => {
            panic!("no polynomial version is defined for {tag}");
        }
    }
    XPoly {
        tag,
        n,
        base: 1,
        coeffs,
    }
}

/// The right side of the distribution relation for the modified q-Euler
/// polynomials: [d]_q^n ([2]_q/[2]_{q^d}) sum_a (-1)^a E_{n,q^d}((x+a)/d),
/// assembled as an XPoly in X = q^x. Requires odd d; equals
/// `build_xpoly(ModifiedEuler, n)` exactly.
pub fn distribution_rhs(n: usize, d: u32) -> Result<XPoly> {
    if d % 2 == 0 {
        return Err(Error::EvenDistributionIndex);
    }
    let base_poly = build_xpoly(FamilyTag::ModifiedEuler, n).subst_base(d);
    // E_{n,q^d}((x+a)/d): substituting X_d = q^{d * (x+a)/d} = q^a * X turns
    // the coefficient of X_d^l into q^{al} * coefficient of X^l.
    let d_q_pow = q_int(d as i64, QIntSign::Plus)
        .pow(n as i64)
        .unwrap();
    let two_qd = QRat::one() + QRat::var_pow(d as i64);
    let prefactor = &(&d_q_pow * &two_q()) / &two_qd;
    let mut coeffs = BTreeMap::new();
    for a in 0..d as u64 {
        for (&l, c) in base_poly.coeffs.iter() {
            let mut s = &prefactor * &QRat::var_pow((a * l as u64) as i64);
            if a % 2 == 1 {
                s = -s;
            }
            XPoly::insert(&mut coeffs, l, c.scale(&s));
        }
    }
    Ok(XPoly {
        tag: FamilyTag::ModifiedEuler,
        n,
        base: 1,
        coeffs,
    })
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match p {
                0 => write!(f, "[{c}]")?,
                1 => write!(f, "[{c}]*X")?,
                _ => write!(f, "[{c}]*X^{p}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "XPoly({} n={} base={}: {})",
            self.tag, self.n, self.base, self
        )
    }
}

/// JSON form: a map from the X-power (as a string) to the coefficient.
impl Serialize for XPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (p, c) in &self.coeffs {
            map.serialize_entry(&p.to_string(), c)?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::rat_int;
    use crate::sequences::{modified_euler_closed, q_int, QIntSign};

    fn qr(num: &[i64], den: &[i64]) -> QRat {
        QRat::new(
            QPoly::new(num.iter().map(|&c| rat_int(c)).collect()),
            QPoly::new(den.iter().map(|&c| rat_int(c)).collect()),
        )
        .unwrap()
    }

    #[test]
    fn modified_euler_poly_coefficients() {
        // E_{1,q}(x): coeff(X^0) = [2]_q/(2(1-q)), coeff(X^1) = -1/(1-q)
        let p = build_xpoly(FamilyTag::ModifiedEuler, 1);
        assert_eq!(p.coeff(0).plain(), &qr(&[1, 1], &[2, -2]));
        assert_eq!(p.coeff(1).plain(), &qr(&[-1], &[1, -1]));
        assert_eq!(p.x_degree(), 1);
    }

    #[test]
    fn value_at_zero_recovers_numbers() {
        for tag in FamilyTag::Q_FAMILIES {
            for n in 0..=6 {
                let p = build_xpoly(tag, n);
                assert_eq!(
                    p.eval_at_integer(0),
                    family_recurrence(tag, n),
                    "{tag} n={n}"
                );
            }
        }
    }

    #[test]
    fn modified_euler_at_small_integers() {
        let p = build_xpoly(FamilyTag::ModifiedEuler, 1);
        // E_{1,q}(1) = 1/2 (from the k=1 odd case of the alternating power
        // sum identity), E_{1,q}(2) = (1+2q)/2.
        assert_eq!(p.eval_at_integer(1).plain(), &qr(&[1], &[2]));
        assert_eq!(p.eval_at_integer(2).plain(), &qr(&[1, 2], &[2]));
    }

    #[test]
    fn modified_bernoulli_poly_n0_is_l() {
        let p = build_xpoly(FamilyTag::ModifiedBernoulli, 0);
        assert_eq!(p.coeff(0), LExt::l_symbol());
        assert_eq!(p.x_degree(), 0);
    }

    #[test]
    fn fraction_evaluation_requires_matching_base() {
        let p = build_xpoly(FamilyTag::ModifiedEuler, 2);
        assert!(matches!(
            p.eval_at_fraction(1, 3),
            Err(Error::FractionalPower { base: 1, requested: 3 })
        ));
        let p3 = p.subst_base(3);
        // constant family member: E_{0,q^3}(a/3) = [2]_{q^3}/2 for any a
        let c = build_xpoly(FamilyTag::ModifiedEuler, 0).subst_base(3);
        let v = c.eval_at_fraction(2, 3).unwrap();
        assert_eq!(v.plain(), &qr(&[1, 0, 0, 1], &[2]));
        // d = 1 fraction evaluation agrees with integer evaluation
        let p1 = build_xpoly(FamilyTag::ModifiedEuler, 2);
        assert_eq!(
            p1.eval_at_fraction(2, 1).unwrap(),
            p1.eval_at_integer(2)
        );
        // base-changed polynomial at x = 0 gives the q^3 number
        assert_eq!(
            p3.eval_at_integer(0),
            LExt::from_qrat(modified_euler_closed(2).subst_power(3))
        );
    }

    #[test]
    fn distribution_identity_small() {
        // d = 1 is the identity transformation.
        let lhs = build_xpoly(FamilyTag::ModifiedEuler, 3);
        assert_eq!(distribution_rhs(3, 1).unwrap(), lhs);
        // d = 3, n = 0 collapses to [2]_q/2 by hand.
        let rhs = distribution_rhs(0, 3).unwrap();
        assert_eq!(rhs.coeff(0).plain(), &qr(&[1, 1], &[2]));
        assert_eq!(rhs.x_degree(), 0);
        // even d rejected
        assert!(matches!(
            distribution_rhs(2, 2),
            Err(Error::EvenDistributionIndex)
        ));
    }

    #[test]
    fn distribution_matches_direct_construction() {
        for d in [1u32, 3, 5] {
            for n in 0..=4 {
                assert_eq!(
                    distribution_rhs(n, d).unwrap(),
                    build_xpoly(FamilyTag::ModifiedEuler, n),
                    "d={d} n={n}"
                );
            }
        }
    }

    #[test]
    fn xpoly_json_is_a_power_map() {
        let p = build_xpoly(FamilyTag::ModifiedEuler, 1);
        let json = serde_json::to_value(&p).unwrap();
        let obj = json.as_object().unwrap();
        assert_eq!(obj.len(), 2);
        // coeff(X^0) = (1+q)/(2(1-q)), canonically (-1/2 - q/2)/(q - 1)
        assert_eq!(obj["0"]["num"][0], "-1/2");
        assert_eq!(obj["0"]["num"][1], "-1/2");
        assert_eq!(obj["0"]["den"][0], "-1");
        assert_eq!(obj["0"]["den"][1], "1");
        assert!(obj.contains_key("1"));
    }

    #[test]
    fn q_int_in_distribution_prefactor() {
        // [3]_q^2 * [2]_q / [2]_{q^3} at q = 1 equals 9 * 2 / 2 = 9.
        let v = (&(&q_int(3, QIntSign::Plus).pow(2).unwrap() * &two_q())
            / &(QRat::one() + QRat::var_pow(3)))
            .limit_q_to_1()
            .unwrap();
        assert_eq!(v, rat_int(9));
    }
}
