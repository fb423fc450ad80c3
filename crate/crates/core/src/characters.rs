//! Dirichlet characters of odd modulus and the generalized modified q-Euler
//! numbers attached to them.
//!
//! Characters are built from the cyclic decomposition of the unit group:
//! for odd d = prod p_i^{e_i} each factor (Z/p_i^{e_i})^* is cyclic, so a
//! character is a choice of exponent k_i for each generator. Values live in
//! the cyclotomic ring of the character's exact order.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::{CycloElem, QRat};
use crate::polynomials::build_xpoly;
use crate::sequences::{q_int, two_q, FamilyTag, QIntSign};

/// A Dirichlet character mod an odd d, tabulated on all residues. Values are
/// exact roots of unity in the power basis of the character's order; zero on
/// non-units.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirichletCharacter {
    modulus: u64,
    index: u64,
    order: u64,
    conductor: u64,
    values: Vec<CycloElem>,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Position in the deterministic enumeration; 0 is the principal
    /// character.
    pub fn index(&self) -> u64 {
        self.index
    }

    /// Exact multiplicative order of the character.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Smallest modulus the character factors through; equal to the modulus
    /// exactly for primitive characters.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_principal(&self) -> bool {
        self.index == 0
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    pub fn is_real(&self) -> bool {
        self.order <= 2
    }

    /// chi(a), reduced mod the modulus.
    pub fn value(&self, a: u64) -> &CycloElem {
        &self.values[(a % self.modulus) as usize]
    }

    pub fn values(&self) -> &[CycloElem] {
        &self.values
    }
}

fn factor_odd(mut d: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 3;
    while p * p <= d {
        if d % p == 0 {
            let mut e = 0;
            while d % p == 0 {
                d /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 2;
    }
    if d > 1 {
        out.push((d, 1));
    }
    out
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest generator of the cyclic group (Z/p^e)^*, p odd.
fn primitive_root(pe: u64, group_order: u64) -> u64 {
    let factors = prime_factors(group_order);
    'candidate: for g in 2..pe {
        if g.gcd(&pe) != 1 {
            continue;
        }
        for &f in &factors {
            if pow_mod(g, group_order / f, pe) == 1 {
                continue 'candidate;
            }
        }
        return g;
    }
    unreachable!("cyclic group has a generator");
}

/// Cyclic decomposition data for (Z/d)^*: per prime power, the modulus, the
/// group order, and a discrete-log table base the chosen generator.
struct UnitGroup {
    modulus: u64,
    factors: Vec<UnitFactor>,
    exponent: u64, // lcm of the factor orders
}

struct UnitFactor {
    prime_power: u64,
    order: u64,
    dlog: Vec<Option<u64>>, // residue mod prime_power -> exponent of generator
}

impl UnitGroup {
    fn new(d: u64) -> UnitGroup {
        let mut factors = Vec::new();
        let mut exponent = 1u64;
        for (p, e) in factor_odd(d) {
            let pe = p.pow(e);
            let order = pe / p * (p - 1);
            let g = primitive_root(pe, order);
            let mut dlog = vec![None; pe as usize];
            let mut acc = 1u64;
            for k in 0..order {
                dlog[acc as usize] = Some(k);
                acc = (acc as u128 * g as u128 % pe as u128) as u64;
            }
            exponent = exponent.lcm(&order);
            factors.push(UnitFactor {
                prime_power: pe,
                order,
                dlog,
            });
        }
        UnitGroup {
            modulus: d,
            factors,
            exponent,
        }
    }

    fn group_size(&self) -> u64 {
        self.factors.iter().map(|f| f.order).product()
    }

    /// Exponent of chi(a) in zeta_M (M = group exponent) for the character
    /// picked by `ks`, or None for non-units.
    fn chi_exponent(&self, ks: &[u64], a: u64) -> Option<u64> {
        let mut acc = 0u64;
        for (f, &k) in self.factors.iter().zip(ks) {
            let r = a % f.prime_power;
            let dl = f.dlog[r as usize]?;
            let weight = self.exponent / f.order;
            acc = (acc + weight * k % self.exponent * (dl % f.order) % self.exponent)
                % self.exponent;
        }
        Some(acc)
    }
}

fn character_from_ks(group: &UnitGroup, index: u64, ks: &[u64]) -> DirichletCharacter {
    let d = group.modulus;
    let m_big = group.exponent;
    // Raw exponents in zeta_M, then the exact order m = M / gcd(M, all of them).
    let mut raw: Vec<Option<u64>> = Vec::with_capacity(d as usize);
    let mut g0 = 0u64;
    for a in 0..d {
        let e = group.chi_exponent(ks, a);
        if let Some(e) = e {
            g0 = g0.gcd(&e);
        }
        raw.push(e);
    }
    let order = m_big / m_big.gcd(&g0);
    let scale = m_big / order;
    let values: Vec<CycloElem> = raw
        .iter()
        .map(|e| match e {
            None => CycloElem::zero(order),
            Some(e) => CycloElem::root_power(order, (e / scale) as i64),
        })
        .collect();
    let conductor = conductor_of(d, &values);
    DirichletCharacter {
        modulus: d,
        index,
        order,
        conductor,
        values,
    }
}

fn conductor_of(d: u64, values: &[CycloElem]) -> u64 {
    let one = CycloElem::one(values[1 % d as usize].order());
    'f: for f in 1..=d {
        if d % f != 0 {
            continue;
        }
        for a in 0..d {
            if a % f == 1 % f && a.gcd(&d) == 1 && values[a as usize] != one {
                continue 'f;
            }
        }
        return f;
    }
    d
}

/// All phi(d) characters of odd modulus d, deterministically indexed
/// (mixed-radix over the cyclic factors; index 0 is principal).
pub fn enumerate_characters(d: u64) -> Result<Vec<DirichletCharacter>> {
    if d == 0 || d % 2 == 0 {
        return Err(Error::EvenModulus(d));
    }
    let group = UnitGroup::new(d);
    let total = group.group_size();
    let mut out = Vec::with_capacity(total as usize);
    for index in 0..total {
        let mut ks = Vec::with_capacity(group.factors.len());
        let mut rest = index;
        for f in &group.factors {
            ks.push(rest % f.order);
            rest /= f.order;
        }
        out.push(character_from_ks(&group, index, &ks));
    }
    Ok(out)
}

/// The character of modulus d with the given enumeration index.
pub fn character(d: u64, index: u64) -> Result<DirichletCharacter> {
    let all = enumerate_characters(d)?;
    all.into_iter()
        .nth(index as usize)
        .ok_or(Error::NoSuchCharacter { modulus: d, index })
}

/// Generalized modified q-Euler number attached to a character, as a vector
/// over Q(q) in the power basis of the character's order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneralizedNumber {
    pub n: usize,
    pub modulus: u64,
    pub char_index: u64,
    pub value: CycloElem,
}

/// E_{n,chi,q} through the d-fold decomposition
/// [d]_q^n ([2]_q/[2]_{q^d}) sum_a chi(a) (-1)^a E_{n,q^d}(a/d); the base
/// change runs through q -> q^d and X = q^a.
pub fn generalized_euler(chi: &DirichletCharacter, n: usize) -> GeneralizedNumber {
    let d = chi.modulus();
    let poly = build_xpoly(FamilyTag::ModifiedEuler, n).subst_base(d as u32);
    let mut acc = CycloElem::zero(chi.order());
    for a in 0..d {
        let chi_a = chi.value(a);
        if chi_a.is_zero() {
            continue;
        }
        let mut scalar = poly
            .eval_at_fraction(a, d as u32)
            .expect("base matches d")
            .plain()
            .clone();
        if a % 2 == 1 {
            scalar = -scalar;
        }
        acc = acc.add(&chi_a.scale(&scalar)).expect("same order");
    }
    let d_pow = q_int(d as i64, QIntSign::Plus).pow(n as i64).unwrap();
    let two_qd = QRat::one() + QRat::var_pow(d as i64);
    let prefactor = &(&d_pow * &two_q()) / &two_qd;
    GeneralizedNumber {
        n,
        modulus: d,
        char_index: chi.index(),
        value: acc.scale(&prefactor),
    }
}
