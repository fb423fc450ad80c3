//! Exact verification engine for the displayed identities, powered by a
//! stateless oracle giving the closed values of the two p-adic q-integrals
//! on the monomial basis f(x) = q^{jx}.
//!
//! Every check computes left side minus right side in the L-extension of
//! Q(q); a pass is the canonical zero, and a failure carries the exact
//! symbolic difference as its counterexample.

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exactq::{binomial_rat, LExt, QPoly, QRat};
use crate::polynomials::{build_xpoly, distribution_rhs, XPoly};
use crate::sequences::{
    closed_value, kim_euler_closed, modified_euler_closed, q_int, two_q, FamilyTag, QIntSign,
};

/// Which of the two p-adic q-integrals the oracle answers for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralKind {
    /// I_q: weight q^x, normalizer [p^N]_q; generates Bernoulli-type numbers.
    Bosonic,
    /// I_{-q}: weight (-q)^x, normalizer [p^N]_{-q}; generates Euler-type numbers.
    Fermionic,
}

/// Exact value of the integral of q^{jx}, from the geometric sum of the
/// finite Riemann sums and the p-adic limit q^{p^N} -> 1:
///
/// * bosonic:   (j+1)(1-q)/(1 - q^{j+1}) for j != -1, and L at j = -1;
/// * fermionic: [2]_q/(1 + q^{j+1}) for every j (j = -1 gives [2]_q/2).
pub fn integral_monomial(kind: IntegralKind, j: i64) -> LExt {
    match kind {
        IntegralKind::Bosonic => {
            if j == -1 {
                LExt::l_symbol()
            } else {
                let num = QRat::from_int(j + 1) * (QRat::one() - QRat::var());
                let den = QRat::one() - QRat::var_pow(j + 1);
                LExt::from_qrat(&num / &den)
            }
        }
        IntegralKind::Fermionic => {
            let den = QRat::one() + QRat::var_pow(j + 1);
            LExt::from_qrat(&two_q() / &den)
        }
    }
}

/// Integral of q^{wx} [x]_q^n by binomial expansion of [x]_q^n into
/// monomials: returns beta_n (bosonic, w = 0), B_{n,q} (bosonic, w = -1),
/// E_{n,q} (fermionic, w = 0) and the modified Euler numbers (fermionic,
/// w = -1).
pub fn integral_exact(kind: IntegralKind, weight_exponent: i64, n: usize) -> LExt {
    let mut acc = LExt::zero();
    for l in 0..=n as i64 {
        let mut c = binomial_rat(n as u64, l as u64);
        if l % 2 == 1 {
            c = -c;
        }
        acc = &acc + &integral_monomial(kind, l + weight_exponent).scale(&QRat::from_rat(c));
    }
    let one_minus_q_pow = QRat::from_poly(QPoly::new(vec![
        crate::exactq::rat_int(1),
        crate::exactq::rat_int(-1),
    ]))
    .pow(n as i64)
    .unwrap();
    acc.div_qrat(&one_minus_q_pow).unwrap()
}

// --- reports -----------------------------------------------------------------

/// One failing instance: the parameter values and the canonical nonzero
/// difference left - right.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub params: Vec<(String, i64)>,
    pub diff: String,
}

/// Outcome of sweeping one identity over its parameter ranges.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub identity: String,
    pub params: String,
    pub total: usize,
    pub failures: Vec<Counterexample>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn first_counterexample(&self) -> Option<&Counterexample> {
        self.failures.first()
    }
}

impl Serialize for IdentityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("IdentityReport", 5)?;
        s.serialize_field("identity", &self.identity)?;
        s.serialize_field("params", &self.params)?;
        s.serialize_field("status", self.status())?;
        s.serialize_field("total", &self.total)?;
        s.serialize_field("failures", &self.failures)?;
        s.end()
    }
}

/// Sweeps `instances` in parallel, collecting failures in parameter order.
fn sweep<I, F>(identity: &str, params: String, instances: Vec<I>, check: F) -> IdentityReport
where
    I: Send + Sync,
    F: Fn(&I) -> Option<Counterexample> + Send + Sync,
{
    let total = instances.len();
    let failures: Vec<Counterexample> = instances.par_iter().filter_map(check).collect();
    IdentityReport {
        identity: identity.to_string(),
        params,
        total,
        failures,
    }
}

fn fail_if_nonzero(diff: LExt, params: Vec<(String, i64)>) -> Option<Counterexample> {
    if diff.is_zero() {
        None
    } else {
        Some(Counterexample {
            params,
            diff: diff.to_string(),
        })
    }
}

/// [l]_q^e with the empty-product convention [0]_q^0 = 1.
fn q_int_pow(l: i64, e: usize) -> QRat {
    if e == 0 {
        QRat::one()
    } else {
        q_int(l, QIntSign::Plus).pow(e as i64).unwrap()
    }
}

// --- functional equations on monomials ----------------------------------------

/// The displayed integral equations, checked on f(x) = q^{jx}. The formal
/// derivative enters only through L * f'(l) = j (q-1) q^{jl}, which stays
/// inside the module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionalEq {
    /// q I_q(f_1) = I_q(f) + (q-1) f(0) + L f'(0)
    ShiftOnceBosonic,
    /// q^n I_q(f_n) = I_q(f) + (q-1) sum q^l f(l) + L sum q^l f'(l)
    ShiftManyBosonic,
    /// I_q(q^{-x} f_1) = I_q(q^{-x} f) + L f'(0)
    WeightedShiftOnceBosonic,
    /// I_q(q^{-x} f_n) = I_q(q^{-x} f) + L sum f'(l)
    WeightedShiftManyBosonic,
    /// q I_{-q}(f_1) + I_{-q}(f) = [2]_q f(0)
    ShiftOnceFermionic,
    /// q^n I_{-q}(f_n) + (-1)^{n-1} I_{-q}(f) = [2]_q sum (-1)^{n-1-l} q^l f(l)
    ShiftManyFermionic,
    /// odd n: q^n I_{-q}(f_n) + I_{-q}(f) = [2]_q sum (-1)^l q^l f(l)
    ShiftOddFermionic,
    /// even n: q^n I_{-q}(f_n) - I_{-q}(f) = [2]_q sum (-1)^{l-1} q^l f(l)
    ShiftEvenFermionic,
    /// I_{-q}(q^{-x} f_1) + I_{-q}(q^{-x} f) = [2]_q f(0)
    WeightedShiftOnceFermionic,
    /// I_{-q}(q^{-x} f_n) + (-1)^{n-1} I_{-q}(q^{-x} f) = [2]_q sum (-1)^{n-l-1} f(l)
    WeightedShiftManyFermionic,
}

impl FunctionalEq {
    pub const ALL: [FunctionalEq; 10] = [
        FunctionalEq::ShiftOnceBosonic,
        FunctionalEq::ShiftManyBosonic,
        FunctionalEq::WeightedShiftOnceBosonic,
        FunctionalEq::WeightedShiftManyBosonic,
        FunctionalEq::ShiftOnceFermionic,
        FunctionalEq::ShiftManyFermionic,
        FunctionalEq::ShiftOddFermionic,
        FunctionalEq::ShiftEvenFermionic,
        FunctionalEq::WeightedShiftOnceFermionic,
        FunctionalEq::WeightedShiftManyFermionic,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            FunctionalEq::ShiftOnceBosonic => "eq5",
            FunctionalEq::ShiftManyBosonic => "eq8",
            FunctionalEq::WeightedShiftOnceBosonic => "eq12",
            FunctionalEq::WeightedShiftManyBosonic => "eq13",
            FunctionalEq::ShiftOnceFermionic => "eq15",
            FunctionalEq::ShiftManyFermionic => "eq16",
            FunctionalEq::ShiftOddFermionic => "eq17",
            FunctionalEq::ShiftEvenFermionic => "eq18",
            FunctionalEq::WeightedShiftOnceFermionic => "eq19",
            FunctionalEq::WeightedShiftManyFermionic => "eq20",
        }
    }

    fn uses_shift(&self) -> bool {
        matches!(
            self,
            FunctionalEq::ShiftManyBosonic
                | FunctionalEq::WeightedShiftManyBosonic
                | FunctionalEq::ShiftManyFermionic
                | FunctionalEq::ShiftOddFermionic
                | FunctionalEq::ShiftEvenFermionic
                | FunctionalEq::WeightedShiftManyFermionic
        )
    }

    fn shift_allowed(&self, n: usize) -> bool {
        match self {
            FunctionalEq::ShiftOddFermionic => n % 2 == 1,
            FunctionalEq::ShiftEvenFermionic => n % 2 == 0 && n > 0,
            _ => n >= 1,
        }
    }
}

/// q^{jl}
fn monomial_at(j: i64, l: i64) -> QRat {
    QRat::var_pow(j * l)
}

/// L * f'(l) for f = q^{jx}: the combination j (q-1) q^{jl}.
fn l_times_fprime(j: i64, l: i64) -> QRat {
    QRat::from_int(j) * (QRat::var() - QRat::one()) * monomial_at(j, l)
}

/// Left minus right of one functional equation on f = q^{jx} with shift n.
pub fn functional_eq_defect(eq: FunctionalEq, j: i64, n: usize) -> LExt {
    use FunctionalEq::*;
    let q = QRat::var();
    let bos = |e: i64| integral_monomial(IntegralKind::Bosonic, e);
    let ferm = |e: i64| integral_monomial(IntegralKind::Fermionic, e);
    let sign = |s: i64| if s.rem_euclid(2) == 0 { QRat::one() } else { -QRat::one() };
    match eq {
        ShiftOnceBosonic => {
            let lhs = bos(j).scale(&(QRat::var_pow(j) * &q));
            let rhs = &bos(j)
                + &LExt::from_qrat((&q - &QRat::one()) + l_times_fprime(j, 0));
            &lhs - &rhs
        }
        ShiftManyBosonic => {
            let lhs = bos(j).scale(&QRat::var_pow(j * n as i64 + n as i64));
            let mut tail = QRat::zero();
            for l in 0..n as i64 {
                let ql = QRat::var_pow(l);
                tail = tail
                    + &ql * &((&q - &QRat::one()) * monomial_at(j, l) + l_times_fprime(j, l));
            }
            &lhs - &(&bos(j) + &LExt::from_qrat(tail))
        }
        WeightedShiftOnceBosonic => {
            let lhs = bos(j - 1).scale(&QRat::var_pow(j));
            let rhs = &bos(j - 1) + &LExt::from_qrat(l_times_fprime(j, 0));
            &lhs - &rhs
        }
        WeightedShiftManyBosonic => {
            let lhs = bos(j - 1).scale(&QRat::var_pow(j * n as i64));
            let mut tail = QRat::zero();
            for l in 0..n as i64 {
                tail = tail + l_times_fprime(j, l);
            }
            &lhs - &(&bos(j - 1) + &LExt::from_qrat(tail))
        }
        ShiftOnceFermionic => {
            let lhs = &ferm(j).scale(&(QRat::var_pow(j) * &q)) + &ferm(j);
            &lhs - &LExt::from_qrat(two_q())
        }
        ShiftManyFermionic => {
            let lhs = &ferm(j).scale(&QRat::var_pow(j * n as i64 + n as i64))
                + &ferm(j).scale(&sign(n as i64 - 1));
            let mut rhs = QRat::zero();
            for l in 0..n as i64 {
                rhs = rhs + &sign(n as i64 - 1 - l) * &(QRat::var_pow(l) * monomial_at(j, l));
            }
            &lhs - &LExt::from_qrat(&two_q() * &rhs)
        }
        ShiftOddFermionic | ShiftEvenFermionic => {
            let second_sign = if eq == ShiftOddFermionic {
                QRat::one()
            } else {
                -QRat::one()
            };
            let lhs = &ferm(j).scale(&QRat::var_pow(j * n as i64 + n as i64))
                + &ferm(j).scale(&second_sign);
            let mut rhs = QRat::zero();
            let offset = if eq == ShiftOddFermionic { 0 } else { 1 };
            for l in 0..n as i64 {
                rhs = rhs + &sign(l - offset) * &(QRat::var_pow(l) * monomial_at(j, l));
            }
            &lhs - &LExt::from_qrat(&two_q() * &rhs)
        }
        WeightedShiftOnceFermionic => {
            let lhs = &ferm(j - 1).scale(&QRat::var_pow(j)) + &ferm(j - 1);
            &lhs - &LExt::from_qrat(two_q())
        }
        WeightedShiftManyFermionic => {
            let lhs = &ferm(j - 1).scale(&QRat::var_pow(j * n as i64))
                + &ferm(j - 1).scale(&sign(n as i64 - 1));
            let mut rhs = QRat::zero();
            for l in 0..n as i64 {
                rhs = rhs + &sign(n as i64 - l - 1) * &monomial_at(j, l);
            }
            &lhs - &LExt::from_qrat(&two_q() * &rhs)
        }
    }
}

/// Checks every functional equation on monomials q^{jx} for the given
/// exponents and shifts up to `max_shift`.
pub fn verify_functional_equations(max_shift: usize, exponents: &[i64]) -> IdentityReport {
    let mut instances: Vec<(FunctionalEq, i64, usize)> = Vec::new();
    for eq in FunctionalEq::ALL {
        for &j in exponents {
            if eq.uses_shift() {
                for n in 1..=max_shift {
                    if eq.shift_allowed(n) {
                        instances.push((eq, j, n));
                    }
                }
            } else {
                instances.push((eq, j, 1));
            }
        }
    }
    let params = format!("j in {exponents:?}, shifts 1..={max_shift}");
    sweep("functional-eqs", params, instances, |&(eq, j, n)| {
        let diff = functional_eq_defect(eq, j, n);
        fail_if_nonzero(
            diff,
            vec![
                (format!("{}(j)", eq.label()), j),
                ("n".to_string(), n as i64),
            ],
        )
    })
}

// --- recurrence identity (Theorem 6 shape) -------------------------------------

/// sum_j C(n,j) q^j values[j] + values[n] minus ([2]_q if n = 0 else 0),
/// on caller-supplied values (kept separate so tests can corrupt an entry).
pub fn modified_euler_recurrence_defect(values: &[QRat], n: usize) -> QRat {
    let mut acc = QRat::zero();
    for (j, v) in values.iter().enumerate().take(n + 1) {
        let w = QRat::from_poly(QPoly::monomial(binomial_rat(n as u64, j as u64), j));
        acc = acc + &w * v;
    }
    acc = acc + &values[n];
    if n == 0 {
        acc - two_q()
    } else {
        acc
    }
}

/// The defining recurrence of the modified q-Euler numbers, checked on
/// closed-form values (independent of the recurrence solver).
pub fn verify_theorem6(n_max: usize) -> IdentityReport {
    let closed: Vec<QRat> = (0..=n_max).map(modified_euler_closed).collect();
    let instances: Vec<usize> = (0..=n_max).collect();
    sweep(
        "theorem6",
        format!("n <= {n_max}"),
        instances,
        |&n| {
            let diff = modified_euler_recurrence_defect(&closed, n);
            fail_if_nonzero(LExt::from_qrat(diff), vec![("n".to_string(), n as i64)])
        },
    )
}

// --- alternating power sums (Theorem 7) ----------------------------------------

/// Theorem 7 defect: E_n -+ E_n(k) - [2]_q sum_{l<k} (-1)^l [l]_q^n, with
/// "-" for even k and "+" for odd k.
pub fn theorem7_defect(n: usize, k: u64) -> QRat {
    let number = modified_euler_closed(n);
    let poly_at_k = build_xpoly(FamilyTag::ModifiedEuler, n)
        .eval_at_integer(k)
        .plain()
        .clone();
    let lhs = if k % 2 == 0 {
        number - poly_at_k
    } else {
        number + poly_at_k
    };
    let mut sum = QRat::zero();
    for l in 0..k as i64 {
        let term = q_int_pow(l, n);
        sum = if l % 2 == 0 { sum + term } else { sum - term };
    }
    lhs - &two_q() * &sum
}

pub fn verify_theorem7(n_max: usize, k_max: u64) -> IdentityReport {
    let mut instances = Vec::new();
    for n in 0..=n_max {
        for k in 0..=k_max {
            instances.push((n, k));
        }
    }
    sweep(
        "theorem7",
        format!("n <= {n_max}, k <= {k_max}"),
        instances,
        |&(n, k)| {
            fail_if_nonzero(
                LExt::from_qrat(theorem7_defect(n, k)),
                vec![("n".to_string(), n as i64), ("k".to_string(), k as i64)],
            )
        },
    )
}

// --- Lemma 4: corrected and verbatim forms --------------------------------------

/// Corrected Lemma 4 defect. For odd n:
/// q^n E_m(n) + E_m - [2]_q sum_{l<n} (-1)^l q^l [l]_q^m; for even n the
/// second sign flips on both sides as displayed.
pub fn lemma4_defect(m: usize, n: u64, corrected: bool) -> QRat {
    let number = kim_euler_closed(m);
    let poly_at_n = build_xpoly(FamilyTag::KimEuler, m)
        .eval_at_integer(n)
        .plain()
        .clone();
    let qn = QRat::var_pow(n as i64);
    let even = n % 2 == 0;
    let lhs = if even && corrected {
        &qn * &poly_at_n - &number
    } else {
        &qn * &poly_at_n + &number
    };
    let mut sum = QRat::zero();
    for l in 0..n as i64 {
        let term = QRat::var_pow(l) * q_int_pow(l, m);
        let negate = if corrected {
            if even { l % 2 == 0 } else { l % 2 == 1 }
        } else {
            false
        };
        sum = if negate { sum - term } else { sum + term };
    }
    lhs - &two_q() * &sum
}

/// Corrected Lemma 4 over both parities (the (-1)^l factor the displayed
/// equations force).
pub fn verify_lemma4(m_max: usize, n_max: u64) -> IdentityReport {
    let mut instances = Vec::new();
    for m in 0..=m_max {
        for n in 1..=n_max {
            instances.push((m, n));
        }
    }
    sweep(
        "lemma4",
        format!("m <= {m_max}, n <= {n_max}"),
        instances,
        |&(m, n)| {
            fail_if_nonzero(
                LExt::from_qrat(lemma4_defect(m, n, true)),
                vec![("m".to_string(), m as i64), ("n".to_string(), n as i64)],
            )
        },
    )
}

/// The statement exactly as printed (unsigned summand, "+" on the number
/// term), swept over m >= 1 and all shifts: documented erratum, expected to
/// fail from (m, n) = (1, 2) on.
pub fn verify_lemma4_verbatim(m_max: usize, n_max: u64) -> IdentityReport {
    let mut instances = Vec::new();
    for m in 1..=m_max {
        for n in 1..=n_max {
            instances.push((m, n));
        }
    }
    sweep(
        "lemma4-verbatim",
        format!("1 <= m <= {m_max}, n <= {n_max}"),
        instances,
        |&(m, n)| {
            fail_if_nonzero(
                LExt::from_qrat(lemma4_defect(m, n, false)),
                vec![("m".to_string(), m as i64), ("n".to_string(), n as i64)],
            )
        },
    )
}

// --- Bernoulli power sums (Proposition 2 and the modified variant) -------------

/// Proposition 2 defect:
/// q^n beta_k(n) - beta_k - (q-1) sum_{l<n} q^l [l]_q^k - k sum_{l<n} q^{2l} [l]_q^{k-1}.
pub fn prop2_defect(k: usize, n: u64) -> QRat {
    let beta_k = closed_value(FamilyTag::CarlitzBernoulli, k)
        .unwrap()
        .plain()
        .clone();
    let poly_at_n = build_xpoly(FamilyTag::CarlitzBernoulli, k)
        .eval_at_integer(n)
        .plain()
        .clone();
    let lhs = &QRat::var_pow(n as i64) * &poly_at_n - beta_k;
    let mut rhs = QRat::zero();
    for l in 0..n as i64 {
        rhs = rhs + &(QRat::var() - QRat::one()) * &(QRat::var_pow(l) * q_int_pow(l, k));
        if k > 0 {
            rhs = rhs
                + &QRat::from_int(k as i64) * &(QRat::var_pow(2 * l) * q_int_pow(l, k - 1));
        }
    }
    lhs - rhs
}

/// Modified Bernoulli power sum defect:
/// B_k(n) - B_k - k sum_{l<n} q^l [l]_q^{k-1}; the L-parts on the left
/// cancel identically.
pub fn eq14_defect(k: usize, n: u64) -> LExt {
    let b_k = closed_value(FamilyTag::ModifiedBernoulli, k).unwrap();
    let poly_at_n = build_xpoly(FamilyTag::ModifiedBernoulli, k).eval_at_integer(n);
    let lhs = &poly_at_n - &b_k;
    let mut rhs = QRat::zero();
    if k > 0 {
        for l in 0..n as i64 {
            rhs = rhs + QRat::var_pow(l) * q_int_pow(l, k - 1);
        }
        rhs = &QRat::from_int(k as i64) * &rhs;
    }
    &lhs - &LExt::from_qrat(rhs)
}

pub fn verify_prop2(k_max: usize, n_max: u64) -> IdentityReport {
    let mut instances = Vec::new();
    for k in 0..=k_max {
        for n in 1..=n_max {
            instances.push((k, n));
        }
    }
    sweep(
        "prop2",
        format!("k <= {k_max}, n <= {n_max}"),
        instances,
        |&(k, n)| {
            fail_if_nonzero(
                LExt::from_qrat(prop2_defect(k, n)),
                vec![("k".to_string(), k as i64), ("n".to_string(), n as i64)],
            )
        },
    )
}

pub fn verify_eq14(k_max: usize, n_max: u64) -> IdentityReport {
    let mut instances = Vec::new();
    for k in 0..=k_max {
        for n in 1..=n_max {
            instances.push((k, n));
        }
    }
    sweep(
        "eq14",
        format!("k <= {k_max}, n <= {n_max}"),
        instances,
        |&(k, n)| {
            fail_if_nonzero(
                eq14_defect(k, n),
                vec![("k".to_string(), k as i64), ("n".to_string(), n as i64)],
            )
        },
    )
}

// --- distribution relation (Theorem 11) -----------------------------------------

/// First differing coefficient of the two sides, if any.
fn xpoly_diff(lhs: &XPoly, rhs: &XPoly) -> Option<(usize, LExt)> {
    let top = lhs.x_degree().max(rhs.x_degree());
    for p in 0..=top {
        let d = &lhs.coeff(p) - &rhs.coeff(p);
        if !d.is_zero() {
            return Some((p, d));
        }
    }
    None
}

pub fn verify_theorem11(n_max: usize, d_values: &[u32]) -> IdentityReport {
    let mut instances = Vec::new();
    for &d in d_values {
        for n in 0..=n_max {
            instances.push((d, n));
        }
    }
    sweep(
        "theorem11",
        format!("n <= {n_max}, d in {d_values:?}"),
        instances,
        |&(d, n)| match distribution_rhs(n, d) {
            Err(e) => Some(Counterexample {
                params: vec![("d".to_string(), d as i64), ("n".to_string(), n as i64)],
                diff: format!("error: {e}"),
            }),
            Ok(rhs) => {
                let lhs = build_xpoly(FamilyTag::ModifiedEuler, n);
                xpoly_diff(&lhs, &rhs).map(|(p, diff)| Counterexample {
                    params: vec![("d".to_string(), d as i64), ("n".to_string(), n as i64)],
                    diff: format!("coeff X^{p}: {diff}"),
                })
            }
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::rat_int;

    fn qr(num: &[i64], den: &[i64]) -> QRat {
        QRat::new(
            QPoly::new(num.iter().map(|&c| rat_int(c)).collect()),
            QPoly::new(den.iter().map(|&c| rat_int(c)).collect()),
        )
        .unwrap()
    }

    #[test]
    fn oracle_values() {
        // fermionic at j = -1: [2]_q / 2
        assert_eq!(
            integral_monomial(IntegralKind::Fermionic, -1),
            LExt::from_qrat(qr(&[1, 1], &[2]))
        );
        // bosonic at j = -1: L
        assert_eq!(integral_monomial(IntegralKind::Bosonic, -1), LExt::l_symbol());
        // bosonic at j = 0: 1
        assert_eq!(integral_monomial(IntegralKind::Bosonic, 0), LExt::one());
        // bosonic at j = 1: 2(1-q)/(1-q^2) = 2/(1+q)
        assert_eq!(
            integral_monomial(IntegralKind::Bosonic, 1),
            LExt::from_qrat(qr(&[2], &[1, 1]))
        );
    }

    #[test]
    fn integral_exact_reproduces_families() {
        // (fermionic, -1, n) = modified Euler; (fermionic, 0, n) = Kim Euler;
        // (bosonic, 0, n) = Carlitz Bernoulli; (bosonic, -1, n) = modified
        // Bernoulli.
        for n in 0..=8 {
            assert_eq!(
                integral_exact(IntegralKind::Fermionic, -1, n),
                closed_value(FamilyTag::ModifiedEuler, n).unwrap()
            );
            assert_eq!(
                integral_exact(IntegralKind::Fermionic, 0, n),
                closed_value(FamilyTag::KimEuler, n).unwrap()
            );
            assert_eq!(
                integral_exact(IntegralKind::Bosonic, 0, n),
                closed_value(FamilyTag::CarlitzBernoulli, n).unwrap()
            );
            assert_eq!(
                integral_exact(IntegralKind::Bosonic, -1, n),
                closed_value(FamilyTag::ModifiedBernoulli, n).unwrap()
            );
        }
        // beta_1 = -1/(1+q) through the oracle expansion
        assert_eq!(
            integral_exact(IntegralKind::Bosonic, 0, 1),
            LExt::from_qrat(qr(&[-1], &[1, 1]))
        );
    }

    #[test]
    fn functional_equations_sweep() {
        let report = verify_functional_equations(5, &[-1, 0, 1, 2, 3, 4]);
        assert!(report.passed(), "{:?}", report.first_counterexample());
        assert!(report.total > 100);
    }

    #[test]
    fn eq5_intermediate_value() {
        // For j != -1 the two integral terms of eq. 5 differ by exactly
        // (j+1)(q-1).
        for j in [1i64, 2, 5] {
            let shifted = integral_monomial(IntegralKind::Bosonic, j)
                .scale(&(QRat::var_pow(j) * QRat::var()));
            let diff = &shifted - &integral_monomial(IntegralKind::Bosonic, j);
            let expected = QRat::from_int(j + 1) * (QRat::var() - QRat::one());
            assert_eq!(diff, LExt::from_qrat(expected));
        }
    }

    #[test]
    fn theorem6_sweep_and_mutation() {
        let report = verify_theorem6(12);
        assert!(report.passed());
        assert_eq!(report.total, 13);
        // a corrupted value produces a nonzero canonical difference
        let mut values: Vec<QRat> = (0..=4).map(modified_euler_closed).collect();
        values[2] = &values[2] + &QRat::one();
        let defect = modified_euler_recurrence_defect(&values, 4);
        assert!(!defect.is_zero());
        // and the genuine values do not
        let good: Vec<QRat> = (0..=4).map(modified_euler_closed).collect();
        assert!(modified_euler_recurrence_defect(&good, 4).is_zero());
    }

    #[test]
    fn theorem7_hand_instance() {
        // n=1, k=2: E_1 - E_1(2) = -(1+q) = [2]_q (0 - [1]_q)
        assert!(theorem7_defect(1, 2).is_zero());
        let report = verify_theorem7(6, 5);
        assert!(report.passed(), "{:?}", report.first_counterexample());
    }

    #[test]
    fn lemma4_corrected_passes_verbatim_fails() {
        let good = verify_lemma4(6, 5);
        assert!(good.passed(), "{:?}", good.first_counterexample());
        let verbatim = verify_lemma4_verbatim(3, 3);
        assert!(!verbatim.passed());
        let first = verbatim.first_counterexample().unwrap();
        assert_eq!(
            first.params,
            vec![("m".to_string(), 1), ("n".to_string(), 2)]
        );
        // m = 0, n = 1 works in both readings: [2]_q = q E_0(1) + E_0
        assert!(lemma4_defect(0, 1, true).is_zero());
        assert!(lemma4_defect(0, 1, false).is_zero());
    }

    #[test]
    fn prop2_and_eq14() {
        assert!(verify_prop2(6, 6).passed());
        assert!(verify_eq14(6, 6).passed());
        // k = 0 degenerate case of Proposition 2: q^n - 1 = (q-1)[n]_q
        assert!(prop2_defect(0, 4).is_zero());
        // Eq. 14 at k = 1: B_1(n) - B_1 = [n]_q, L-parts cancel
        let lhs = &build_xpoly(FamilyTag::ModifiedBernoulli, 1).eval_at_integer(3)
            - &closed_value(FamilyTag::ModifiedBernoulli, 1).unwrap();
        assert!(lhs.logpart().is_zero());
        assert_eq!(lhs.plain(), &q_int(3, QIntSign::Plus));
    }

    #[test]
    fn theorem11_small_sweep() {
        let report = verify_theorem11(4, &[1, 3]);
        assert!(report.passed(), "{:?}", report.first_counterexample());
        // even d is rejected and reported as a failure
        let bad = verify_theorem11(1, &[2]);
        assert!(!bad.passed());
        assert!(bad.failures[0].diff.contains("odd"));
    }

    #[test]
    fn report_json_shape() {
        let report = verify_theorem6(2);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["identity"], "theorem6");
        assert_eq!(json["status"], "pass");
        assert_eq!(json["total"], 3);
    }
}
