//! The q-analog number families as memoized sequences over Q(q) (with an
//! L-part for the modified Bernoulli family), each computable two independent
//! ways: by solving its defining recurrence for the top index, and by a
//! closed form coming from the geometric-sum values of the p-adic integrals.

use std::fmt;
use std::sync::Mutex;

use num_traits::One;
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::exactq::{binomial_rat, BigRat, LExt, QPoly, QRat};

/// The number families handled by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyTag {
    /// Modified q-Euler numbers with E_0 = [2]_q / 2.
    ModifiedEuler,
    /// The earlier q-Euler numbers with E_0 = 1 and prefactor q in the
    /// recurrence.
    KimEuler,
    /// Carlitz q-Bernoulli numbers beta_n.
    CarlitzBernoulli,
    /// Modified q-Bernoulli numbers with B_0 = (q-1)/log q.
    ModifiedBernoulli,
    /// Carlitz's first q-extension xi_k (tabulated only; not finite at q=1).
    CarlitzXi,
    /// Ordinary Euler numbers from 2/(e^t + 1).
    ClassicalEuler,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 6] = [
        FamilyTag::ModifiedEuler,
        FamilyTag::KimEuler,
        FamilyTag::CarlitzBernoulli,
        FamilyTag::ModifiedBernoulli,
        FamilyTag::CarlitzXi,
        FamilyTag::ClassicalEuler,
    ];

    /// The four q-deformed families that come with both a recurrence and a
    /// closed form.
    pub const Q_FAMILIES: [FamilyTag; 4] = [
        FamilyTag::ModifiedEuler,
        FamilyTag::KimEuler,
        FamilyTag::CarlitzBernoulli,
        FamilyTag::ModifiedBernoulli,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FamilyTag::ModifiedEuler => "modified-euler",
            FamilyTag::KimEuler => "kim-euler",
            FamilyTag::CarlitzBernoulli => "carlitz-bernoulli",
            FamilyTag::ModifiedBernoulli => "modified-bernoulli",
            FamilyTag::CarlitzXi => "carlitz-xi",
            FamilyTag::ClassicalEuler => "classical-euler",
        }
    }

    fn index(&self) -> usize {
        match self {
            FamilyTag::ModifiedEuler => 0,
            FamilyTag::KimEuler => 1,
            FamilyTag::CarlitzBernoulli => 2,
            FamilyTag::ModifiedBernoulli => 3,
            FamilyTag::CarlitzXi => 4,
            FamilyTag::ClassicalEuler => 5,
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for FamilyTag {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyTag::ALL
            .iter()
            .copied()
            .find(|t| t.name() == s)
            .ok_or_else(|| crate::Error::InvalidParameter(format!("unknown family {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QIntSign {
    Plus,
    Minus,
}

/// The q-integer [n]_q = (1 - q^n)/(1 - q), or its alternating companion
/// [n]_{-q} = (1 - (-q)^n)/(1 + q). For n >= 0 both are polynomials;
/// negative n extends through the same formula.
pub fn q_int(n: i64, sign: QIntSign) -> QRat {
    if n >= 0 {
        let coeffs = (0..n as usize)
            .map(|k| match sign {
                QIntSign::Plus => BigRat::one(),
                QIntSign::Minus => {
                    if k % 2 == 0 {
                        BigRat::one()
                    } else {
                        -BigRat::one()
                    }
                }
            })
            .collect();
        QRat::from_poly(QPoly::new(coeffs))
    } else {
        let q_pow = QRat::var_pow(n);
        match sign {
            QIntSign::Plus => {
                let num = QRat::one() - q_pow;
                let den = QRat::one() - QRat::var();
                &num / &den
            }
            QIntSign::Minus => {
                let signed = if n % 2 == 0 { q_pow } else { -q_pow };
                let num = QRat::one() - signed;
                let den = QRat::one() + QRat::var();
                &num / &den
            }
        }
    }
}

/// [2]_q = 1 + q, the ubiquitous normalizer.
pub fn two_q() -> QRat {
    q_int(2, QIntSign::Plus)
}

// --- closed forms ----------------------------------------------------------

/// Shared assembly for sums of the shape
///   prefactor * (1-q)^{-n} * sum_l C(n,l) (-1)^l * num_l / den_l
/// where den_l are the small per-term denominators. Terms are combined over
/// the product denominator by exact division, which keeps the big gcd out of
/// the inner loop.
fn alternating_binomial_sum(
    n: usize,
    term_num: impl Fn(usize) -> QPoly,
    term_den: impl Fn(usize) -> QPoly,
) -> QRat {
    let mut denom = QPoly::one();
    for l in 0..=n {
        denom = &denom * &term_den(l);
    }
    let mut num = QPoly::zero();
    for l in 0..=n {
        let cofactor = denom.exact_div(&term_den(l)).expect("factor divides");
        let mut coeff = binomial_rat(n as u64, l as u64);
        if l % 2 == 1 {
            coeff = -coeff;
        }
        let term = (&cofactor * &term_num(l)).scale(&coeff);
        num = &num + &term;
    }
    let one_minus_q_pow = QPoly::new(vec![BigRat::one(), -BigRat::one()]).pow(n as u32);
    QRat::new(num, &one_minus_q_pow * &denom).expect("nonzero denominator")
}

/// Modified q-Euler number: [2]_q (1-q)^{-n} sum_l C(n,l) (-1)^l / (1 + q^l).
pub fn modified_euler_closed(n: usize) -> QRat {
    let sum = alternating_binomial_sum(
        n,
        |_| QPoly::one(),
        |l| QPoly::monomial(BigRat::one(), l) + QPoly::one(),
    );
    &two_q() * &sum
}

/// Kim q-Euler number: [2]_q (1-q)^{-n} sum_l C(n,l) (-1)^l / (1 + q^{l+1}).
pub fn kim_euler_closed(n: usize) -> QRat {
    let sum = alternating_binomial_sum(
        n,
        |_| QPoly::one(),
        |l| QPoly::monomial(BigRat::one(), l + 1) + QPoly::one(),
    );
    &two_q() * &sum
}

/// Carlitz q-Bernoulli number from the geometric-sum values of the bosonic
/// integral: (1-q)^{-n} sum_l C(n,l) (-1)^l (l+1)(1-q)/(1 - q^{l+1}).
pub fn carlitz_bernoulli_closed(n: usize) -> QRat {
    alternating_binomial_sum(
        n,
        |l| {
            let one_minus_q = QPoly::new(vec![BigRat::one(), -BigRat::one()]);
            one_minus_q.scale(&BigRat::from_integer(((l + 1) as i64).into()))
        },
        |l| QPoly::one() - QPoly::monomial(BigRat::one(), l + 1),
    )
}

/// Modified q-Bernoulli number: the l = 0 integral carries L, the rest are
/// plain: (1-q)^{-n} [ L + sum_{l>=1} C(n,l)(-1)^l l (1-q)/(1 - q^l) ].
pub fn modified_bernoulli_closed(n: usize) -> LExt {
    let one_minus_q = QPoly::new(vec![BigRat::one(), -BigRat::one()]);
    let one_minus_q_pow_inv = QRat::new(QPoly::one(), one_minus_q.pow(n as u32)).unwrap();
    if n == 0 {
        return LExt::l_symbol();
    }
    // Plain part over the common denominator prod_{l=1..n} (1 - q^l).
    let mut denom = QPoly::one();
    for l in 1..=n {
        denom = &denom * &(QPoly::one() - QPoly::monomial(BigRat::one(), l));
    }
    let mut num = QPoly::zero();
    for l in 1..=n {
        let factor = QPoly::one() - QPoly::monomial(BigRat::one(), l);
        let cofactor = denom.exact_div(&factor).expect("factor divides");
        let mut coeff = binomial_rat(n as u64, l as u64) * BigRat::from_integer((l as i64).into());
        if l % 2 == 1 {
            coeff = -coeff;
        }
        num = &num + &(&cofactor * &one_minus_q).scale(&coeff);
    }
    let plain = &QRat::new(num, denom).expect("nonzero denominator") * &one_minus_q_pow_inv;
    LExt::new(plain, one_minus_q_pow_inv)
}

/// Closed-form route for the four q-families.
pub fn closed_value(tag: FamilyTag, n: usize) -> Option<LExt> {
    match tag {
        FamilyTag::ModifiedEuler => Some(LExt::from_qrat(modified_euler_closed(n))),
        FamilyTag::KimEuler => Some(LExt::from_qrat(kim_euler_closed(n))),
        FamilyTag::CarlitzBernoulli => Some(LExt::from_qrat(carlitz_bernoulli_closed(n))),
        FamilyTag::ModifiedBernoulli => Some(modified_bernoulli_closed(n)),
        FamilyTag::CarlitzXi | FamilyTag::ClassicalEuler => None,
    }
}

/// Ordinary Euler numbers in the 2/(e^t + 1) convention (E_1 = -1/2).
pub fn classical_euler(n: usize) -> BigRat {
    let table = table_for(FamilyTag::ClassicalEuler);
    table
        .value(n)
        .plain()
        .as_constant()
        .expect("classical Euler numbers are rational constants")
}

/// Ordinary Bernoulli numbers (B_1 = -1/2), the q -> 1 limits of both
/// Bernoulli-type families.
pub fn classical_bernoulli(n: usize) -> BigRat {
    // (B+1)^{k+1} - B_{k+1} = 0 for k >= 1 in umbral form, i.e.
    // B_k = -1/(k+1) * sum_{j<k} C(k+1, j) B_j.
    let mut values: Vec<BigRat> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if k == 0 {
            values.push(BigRat::one());
            continue;
        }
        let mut acc = BigRat::from_integer(0.into());
        for (j, bj) in values.iter().enumerate() {
            acc += binomial_rat(k as u64 + 1, j as u64) * bj;
        }
        values.push(-acc / BigRat::from_integer(((k + 1) as i64).into()));
    }
    values[n].clone()
}

// --- recurrence route with memoization --------------------------------------

/// Append-only memoized table of one family's values. Readers always see a
/// completed prefix; computing a new index is idempotent.
pub struct NumberTable {
    tag: FamilyTag,
    values: Mutex<Vec<LExt>>,
}

impl NumberTable {
    pub fn new(tag: FamilyTag) -> NumberTable {
        NumberTable {
            tag,
            values: Mutex::new(Vec::new()),
        }
    }

    pub fn tag(&self) -> FamilyTag {
        self.tag
    }

    /// The n-th value by the defining recurrence, memoized.
    pub fn value(&self, n: usize) -> LExt {
        let mut values = self.values.lock().unwrap();
        while values.len() <= n {
            let next = recurrence_step(self.tag, values.len(), &values);
            values.push(next);
        }
        values[n].clone()
    }

    pub fn prefix(&self, n: usize) -> Vec<LExt> {
        let mut values = self.values.lock().unwrap();
        while values.len() <= n {
            let next = recurrence_step(self.tag, values.len(), &values);
            values.push(next);
        }
        values[..=n].to_vec()
    }
}

/// Solves the family's umbral recurrence for index n given all earlier
/// values. Each recurrence expands (c E + 1)^n with E^j replaced by the j-th
/// value and isolates the top index; the leading coefficient is a nonzero
/// polynomial in every case.
fn recurrence_step(tag: FamilyTag, n: usize, prev: &[LExt]) -> LExt {
    let q = QRat::var();
    match (tag, n) {
        (FamilyTag::ModifiedEuler, 0) => {
            return LExt::from_qrat(&two_q() / &QRat::from_int(2));
        }
        (FamilyTag::KimEuler | FamilyTag::CarlitzBernoulli | FamilyTag::CarlitzXi, 0) => {
            return LExt::one();
        }
        (FamilyTag::ModifiedBernoulli, 0) => return LExt::l_symbol(),
        (FamilyTag::ClassicalEuler, 0) => return LExt::one(),
        _ => {}
    }
    // sum_{j<n} C(n,j) c^j * value_j with the family's base c (q or 1).
    let weighted_tail = |base_is_q: bool| -> LExt {
        let mut acc = LExt::zero();
        for (j, vj) in prev.iter().enumerate() {
            let w = binomial_rat(n as u64, j as u64);
            let scale = if base_is_q {
                QRat::from_poly(QPoly::monomial(w, j))
            } else {
                QRat::from_rat(w)
            };
            acc = &acc + &vj.scale(&scale);
        }
        acc
    };
    match tag {
        // (1 + q^n) E_n = -sum_{j<n} C(n,j) q^j E_j
        FamilyTag::ModifiedEuler => {
            let lead = QRat::one() + q.pow(n as i64).unwrap();
            (-&weighted_tail(true)).div_qrat(&lead).unwrap()
        }
        // (1 + q^{n+1}) E_n = -q sum_{j<n} C(n,j) q^j E_j
        FamilyTag::KimEuler => {
            let lead = QRat::one() + q.pow(n as i64 + 1).unwrap();
            (-&weighted_tail(true).scale(&q)).div_qrat(&lead).unwrap()
        }
        // (q^{n+1} - 1) beta_n = delta_{n,1} - q sum_{j<n} C(n,j) q^j beta_j
        FamilyTag::CarlitzBernoulli => {
            let lead = q.pow(n as i64 + 1).unwrap() - QRat::one();
            let delta = if n == 1 { LExt::one() } else { LExt::zero() };
            (&delta - &weighted_tail(true).scale(&q))
                .div_qrat(&lead)
                .unwrap()
        }
        // (q^n - 1) B_n = delta_{n,1} - sum_{j<n} C(n,j) q^j B_j
        FamilyTag::ModifiedBernoulli | FamilyTag::CarlitzXi => {
            let lead = q.pow(n as i64).unwrap() - QRat::one();
            let delta = if n == 1 { LExt::one() } else { LExt::zero() };
            (&delta - &weighted_tail(true)).div_qrat(&lead).unwrap()
        }
        // 2 E_n = -sum_{j<n} C(n,j) E_j
        FamilyTag::ClassicalEuler => {
            (-&weighted_tail(false)).div_qrat(&QRat::from_int(2)).unwrap()
        }
    }
}

static TABLES: Lazy<[NumberTable; 6]> = Lazy::new(|| {
    [
        NumberTable::new(FamilyTag::ModifiedEuler),
        NumberTable::new(FamilyTag::KimEuler),
        NumberTable::new(FamilyTag::CarlitzBernoulli),
        NumberTable::new(FamilyTag::ModifiedBernoulli),
        NumberTable::new(FamilyTag::CarlitzXi),
        NumberTable::new(FamilyTag::ClassicalEuler),
    ]
});

fn table_for(tag: FamilyTag) -> &'static NumberTable {
    &TABLES[tag.index()]
}

/// The n-th member of a family by its recurrence, from the process-wide
/// memoized table.
pub fn family_recurrence(tag: FamilyTag, n: usize) -> LExt {
    table_for(tag).value(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{rat, rat_int};
    use crate::Error;

    fn qr(num: &[i64], den: &[i64]) -> QRat {
        QRat::new(
            QPoly::new(num.iter().map(|&c| rat_int(c)).collect()),
            QPoly::new(den.iter().map(|&c| rat_int(c)).collect()),
        )
        .unwrap()
    }

    #[test]
    fn q_int_examples() {
        assert_eq!(q_int(3, QIntSign::Plus), qr(&[1, 1, 1], &[1]));
        assert!(q_int(0, QIntSign::Plus).is_zero());
        assert_eq!(q_int(3, QIntSign::Minus), qr(&[1, -1, 1], &[1]));
        // negative index through the formula: [-1]_q = (1 - q^{-1})/(1 - q) = -1/q
        assert_eq!(q_int(-1, QIntSign::Plus), qr(&[-1], &[0, 1]));
    }

    #[test]
    fn modified_euler_anchors() {
        assert_eq!(modified_euler_closed(0), qr(&[1, 1], &[2]));
        assert_eq!(modified_euler_closed(1), qr(&[-1], &[2]));
        assert_eq!(modified_euler_closed(2), qr(&[-1, 1], &[2, 0, 2]));
        for n in 0..=2 {
            assert_eq!(
                family_recurrence(FamilyTag::ModifiedEuler, n),
                LExt::from_qrat(modified_euler_closed(n))
            );
        }
    }

    #[test]
    fn kim_euler_anchor() {
        // E_1 = -q/(1+q^2)
        assert_eq!(kim_euler_closed(1), qr(&[0, -1], &[1, 0, 1]));
        assert_eq!(
            family_recurrence(FamilyTag::KimEuler, 1),
            LExt::from_qrat(qr(&[0, -1], &[1, 0, 1]))
        );
    }

    #[test]
    fn carlitz_bernoulli_anchors() {
        // beta_1 = -1/(1+q)
        assert_eq!(carlitz_bernoulli_closed(1), qr(&[-1], &[1, 1]));
        // beta_2 = q/((1+q)(1+q+q^2))
        let beta2 = family_recurrence(FamilyTag::CarlitzBernoulli, 2);
        assert_eq!(beta2.plain(), &qr(&[0, 1], &[1, 2, 2, 1]));
        assert_eq!(beta2.plain().limit_q_to_1().unwrap(), rat(1, 6));
    }

    #[test]
    fn modified_bernoulli_anchors() {
        assert_eq!(modified_bernoulli_closed(0), LExt::l_symbol());
        // B_1 = (1 - L)/(q - 1): plain 1/(q-1), logpart -1/(q-1)
        let b1 = modified_bernoulli_closed(1);
        assert_eq!(b1.plain(), &qr(&[1], &[-1, 1]));
        assert_eq!(b1.logpart(), &qr(&[-1], &[-1, 1]));
        assert_eq!(family_recurrence(FamilyTag::ModifiedBernoulli, 1), b1);
        assert_eq!(b1.limit_q_to_1().unwrap(), rat(-1, 2));
    }

    #[test]
    fn recurrence_matches_closed_forms_smoke() {
        for tag in FamilyTag::Q_FAMILIES {
            for n in 0..=10 {
                assert_eq!(
                    family_recurrence(tag, n),
                    closed_value(tag, n).unwrap(),
                    "family {tag} index {n}"
                );
            }
        }
    }

    #[test]
    fn classical_euler_values() {
        let expected = [
            rat_int(1),
            rat(-1, 2),
            rat_int(0),
            rat(1, 4),
            rat_int(0),
            rat(-1, 2),
            rat_int(0),
            rat(17, 8),
        ];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(&classical_euler(n), e, "E_{n}");
        }
    }

    #[test]
    fn classical_bernoulli_values() {
        assert_eq!(classical_bernoulli(0), rat_int(1));
        assert_eq!(classical_bernoulli(1), rat(-1, 2));
        assert_eq!(classical_bernoulli(2), rat(1, 6));
        assert_eq!(classical_bernoulli(4), rat(-1, 30));
        assert_eq!(classical_bernoulli(3), rat_int(0));
        assert_eq!(classical_bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn limits_reduce_to_classical() {
        for n in 0..=8 {
            let en = classical_euler(n);
            assert_eq!(
                family_recurrence(FamilyTag::ModifiedEuler, n)
                    .limit_q_to_1()
                    .unwrap(),
                en
            );
            assert_eq!(
                family_recurrence(FamilyTag::KimEuler, n)
                    .limit_q_to_1()
                    .unwrap(),
                en
            );
            let bn = classical_bernoulli(n);
            assert_eq!(
                family_recurrence(FamilyTag::CarlitzBernoulli, n)
                    .limit_q_to_1()
                    .unwrap(),
                bn
            );
            assert_eq!(
                family_recurrence(FamilyTag::ModifiedBernoulli, n)
                    .limit_q_to_1()
                    .unwrap(),
                bn
            );
        }
    }

    #[test]
    fn xi_distinct_from_beta_and_divergent_at_one() {
        // xi_1 = 0, xi_2 = 1/(1 - q^2)
        assert!(family_recurrence(FamilyTag::CarlitzXi, 1).is_zero());
        let xi2 = family_recurrence(FamilyTag::CarlitzXi, 2);
        assert_eq!(xi2.plain(), &qr(&[-1], &[-1, 0, 1]));
        let divergent = (1..=6).any(|k| {
            matches!(
                family_recurrence(FamilyTag::CarlitzXi, k).limit_q_to_1(),
                Err(Error::DivergentAtOne)
            )
        });
        assert!(divergent);
    }

    #[test]
    fn modified_bernoulli_logpart_structure() {
        // The log-part of B_n is exactly (1-q)^{-n}.
        for n in 0..=8 {
            let b = family_recurrence(FamilyTag::ModifiedBernoulli, n);
            let expected = QRat::new(
                QPoly::one(),
                QPoly::new(vec![rat_int(1), rat_int(-1)]).pow(n as u32),
            )
            .unwrap();
            assert_eq!(b.logpart(), &expected, "n = {n}");
        }
    }

    #[test]
    fn modified_euler_denominator_structure() {
        // (1-q)^n * prod_{l=0..n} (1+q^l) clears the denominator of E_n.
        for n in 0..=10 {
            let e = modified_euler_closed(n);
            let mut clearing = QPoly::new(vec![rat_int(1), rat_int(-1)]).pow(n as u32);
            for l in 0..=n {
                clearing = &clearing * &(QPoly::monomial(rat_int(1), l) + QPoly::one());
            }
            let cleared = &e * &QRat::from_poly(clearing);
            assert!(cleared.is_polynomial(), "n = {n}");
        }
    }
}
