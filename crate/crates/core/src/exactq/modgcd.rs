//! Polynomial gcd over the rationals via modular images.
//!
//! Euclidean remainder sequences over Q blow up coefficient sizes quickly at
//! the degrees this crate reaches (several hundred), so gcds run on primitive
//! integer polynomials: images modulo word-size primes, CRT lifting, and a
//! certifying trial division that also hands back both cofactors. A
//! degree-zero image is already a proof of coprimality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use std::sync::Mutex;

use super::bigrat::BigRat;
use super::qpoly::QPoly;

/// Monic gcd of two rational polynomials; gcd(0, 0) = 0.
pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_zero() {
        return b.make_monic();
    }
    if b.is_zero() {
        return a.make_monic();
    }
    let (ai, _) = a.primitive_parts();
    let (bi, _) = b.primitive_parts();
    int_poly_to_monic(&gcd_split_int(&ai, &bi).gcd)
}

/// A certified gcd over Z together with both cofactors:
/// `a = gcd * left`, `b = gcd * right`.
pub struct GcdSplit {
    pub gcd: Vec<BigInt>,
    pub left: Vec<BigInt>,
    pub right: Vec<BigInt>,
}

/// Primitive gcd with cofactors for primitive integer polynomials (both
/// nonzero, positive leading coefficients).
pub fn gcd_split_int(a: &[BigInt], b: &[BigInt]) -> GcdSplit {
    debug_assert!(!a.is_empty() && !b.is_empty());
    if a.len() == 1 || b.len() == 1 {
        // Primitive constants are 1.
        return GcdSplit {
            gcd: vec![BigInt::one()],
            left: a.to_vec(),
            right: b.to_vec(),
        };
    }
    modular_gcd(a, b).unwrap_or_else(|| {
        // Unreachable in practice; kept as a correct last resort.
        let g = euclid_gcd_int(a, b);
        let left = div_exact_int(a, &g).expect("gcd divides");
        let right = div_exact_int(b, &g).expect("gcd divides");
        GcdSplit { gcd: g, left, right }
    })
}

/// Plain Euclidean algorithm over Q, reduced back to a primitive integer
/// polynomial. Only used if the modular engine gives up.
fn euclid_gcd_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let to_poly = |c: &[BigInt]| QPoly::new(c.iter().map(|x| BigRat::from(x.clone())).collect());
    let mut x = to_poly(a).make_monic();
    let mut y = to_poly(b).make_monic();
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y).expect("nonzero divisor");
        x = y;
        y = r.make_monic();
    }
    x.primitive_parts().0
}

fn int_poly_to_monic(g: &[BigInt]) -> QPoly {
    QPoly::new(g.iter().map(|c| BigRat::from(c.clone())).collect()).make_monic()
}

/// Exact division of integer polynomials; `None` when the division does not
/// come out exact over Z. Fails as soon as a leading coefficient is not
/// divisible, so mismatches are cheap.
pub fn div_exact_int(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    if f.len() < g.len() {
        return None;
    }
    let lc = g.last().unwrap();
    let dg = g.len() - 1;
    let mut rem = f.to_vec();
    let qlen = f.len() - dg;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let top = std::mem::take(&mut rem[k + dg]);
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lc);
        if !r.is_zero() {
            return None;
        }
        for (i, gc) in g.iter().take(dg).enumerate() {
            if !gc.is_zero() {
                rem[k + i] -= &c * gc;
            }
        }
        quot[k] = c;
    }
    if rem.iter().take(dg).all(|c| c.is_zero()) {
        Some(quot)
    } else {
        None
    }
}

fn modular_gcd(a: &[BigInt], b: &[BigInt]) -> Option<GcdSplit> {
    let lc_gcd: BigInt = a.last().unwrap().gcd(b.last().unwrap());
    let mut primes = PrimeSource::new();
    let mut best_deg = usize::MAX;
    let mut crt_mod = BigInt::one();
    let mut crt_coeffs: Vec<BigInt> = Vec::new();
    let mut tries_since_new_prime = 0;

    for _ in 0..200 {
        let p = primes.next_prime();
        if (a.last().unwrap() % BigInt::from(p)).is_zero()
            || (b.last().unwrap() % BigInt::from(p)).is_zero()
        {
            continue;
        }
        let ap = reduce_mod(a, p);
        let bp = reduce_mod(b, p);
        let mut gp = gcd_mod_p(ap, bp, p);
        let dp = gp.len() - 1;
        if dp == 0 {
            // Coprimality certificate: the image degree only ever exceeds
            // the true gcd degree.
            return Some(GcdSplit {
                gcd: vec![BigInt::one()],
                left: a.to_vec(),
                right: b.to_vec(),
            });
        }
        if dp > best_deg {
            continue; // unlucky prime
        }
        let scale = mod_reduce_bigint(&lc_gcd, p);
        for c in gp.iter_mut() {
            *c = mul_mod(*c, scale, p);
        }
        if dp < best_deg {
            best_deg = dp;
            crt_mod = BigInt::from(p);
            crt_coeffs = gp.iter().map(|&c| BigInt::from(c)).collect();
        } else {
            crt_combine(&mut crt_coeffs, &mut crt_mod, &gp, p);
        }
        tries_since_new_prime += 1;
        // Try to certify; 62-bit primes mean one image usually suffices.
        if tries_since_new_prime <= 4 || tries_since_new_prime % 4 == 0 {
            let candidate = primitive_int(&symmetric_lift(&crt_coeffs, &crt_mod));
            if candidate.len() == best_deg + 1 {
                if let Some(left) = div_exact_int(a, &candidate) {
                    if let Some(right) = div_exact_int(b, &candidate) {
                        return Some(GcdSplit {
                            gcd: candidate,
                            left,
                            right,
                        });
                    }
                }
            }
        }
    }
    None
}

fn reduce_mod(a: &[BigInt], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().map(|c| mod_reduce_bigint(c, p)).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn mod_reduce_bigint(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits u64")
}

fn crt_combine(acc: &mut [BigInt], acc_mod: &mut BigInt, img: &[u64], p: u64) {
    // x = acc + acc_mod * t with t = (img - acc) / acc_mod (mod p)
    let pb = BigInt::from(p);
    let inv = mod_inverse(mod_reduce_bigint(acc_mod, p), p);
    for (i, slot) in acc.iter_mut().enumerate() {
        let cur = mod_reduce_bigint(slot, p);
        let target = if i < img.len() { img[i] } else { 0 };
        let diff = (target + p - cur) % p;
        let t = mul_mod(diff, inv, p);
        *slot += &*acc_mod * BigInt::from(t);
    }
    *acc_mod *= pb;
}

fn symmetric_lift(coeffs: &[BigInt], modulus: &BigInt) -> Vec<BigInt> {
    let half = modulus / 2;
    let mut out: Vec<BigInt> = coeffs
        .iter()
        .map(|c| {
            let r = c.mod_floor(modulus);
            if r > half {
                r - modulus
            } else {
                r
            }
        })
        .collect();
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn primitive_int(coeffs: &[BigInt]) -> Vec<BigInt> {
    if coeffs.is_empty() {
        return Vec::new();
    }
    let mut content = BigInt::zero();
    for c in coeffs {
        content = content.gcd(c);
    }
    if content.is_zero() {
        return coeffs.to_vec();
    }
    if coeffs.last().unwrap().is_negative() {
        content = -content;
    }
    coeffs.iter().map(|c| c / &content).collect()
}

// --- arithmetic in Z/p for word-size primes -------------------------------

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Monic gcd in Z/p[q]; both inputs nonzero.
fn gcd_mod_p(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        rem_mod_p(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    let lc_inv = mod_inverse(*a.last().unwrap(), p);
    for c in a.iter_mut() {
        *c = mul_mod(*c, lc_inv, p);
    }
    a
}

fn rem_mod_p(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let lc_inv = mod_inverse(*b.last().unwrap(), p);
    while a.len() > db {
        let factor = mul_mod(*a.last().unwrap(), lc_inv, p);
        let shift = a.len() - 1 - db;
        if factor != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let idx = shift + i;
                let sub = mul_mod(factor, bc, p);
                a[idx] = (a[idx] + p - sub) % p;
            }
        }
        a.pop();
        while a.last() == Some(&0) {
            a.pop();
        }
        if a.is_empty() {
            return;
        }
    }
}

// --- prime source ----------------------------------------------------------

static PRIME_CACHE: Lazy<Mutex<Vec<u64>>> = Lazy::new(|| Mutex::new(Vec::new()));

struct PrimeSource {
    index: usize,
}

impl PrimeSource {
    fn new() -> Self {
        PrimeSource { index: 0 }
    }

    fn next_prime(&mut self) -> u64 {
        let mut cache = PRIME_CACHE.lock().unwrap();
        while cache.len() <= self.index {
            let start = cache.last().map(|&p| p - 2).unwrap_or((1 << 62) - 1);
            let mut n = start;
            while !is_prime_u64(n) {
                n -= 2;
            }
            cache.push(n);
        }
        let p = cache[self.index];
        self.index += 1;
        p
    }
}

/// Deterministic Miller-Rabin for u64 (the 12 smallest prime witnesses
/// decide primality for every 64-bit integer).
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &sp in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == sp {
            return true;
        }
        if n % sp == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &w in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
