//! Shared test oracles, kept independent of the implementation paths they
//! check.

use qeuler::characters::DirichletCharacter;
use qeuler::exactq::{binomial_rat, rat_int, BigRat, CycloElem, QPoly, QRat};
use qeuler::sequences::two_q;

/// Generalized modified q-Euler number through the character-twisted
/// alternating series [2]_q sum_{m>=1} chi(m) (-1)^m [m]_q^n, with the
/// divergent pieces taken at their Abel values.
///
/// Expanding [m]_q^n binomially reduces everything to the twisted geometric
/// sums S_l = sum_{m>=1} chi(m) (-1)^m q^{lm}. Over one period of length 2d
/// (d odd) the signed character values cancel, so
/// S_l = P(q^l) / (1 - q^{2dl}) with P(x) = sum_{a=1..2d} chi(a) (-1)^a x^a,
/// and the l = 0 value is the Abel limit (P/(1-x))(1) / 2d. This route never
/// touches the d-fold decomposition or the polynomial machinery.
pub fn generalized_euler_abel_oracle(chi: &DirichletCharacter, n: usize) -> CycloElem {
    let d = chi.modulus();
    let period = 2 * d;
    let dim = chi.value(1).coords().len();
    let order = chi.value(1).order();

    // Per-coordinate signed period polynomial P_i(x).
    let coord_polys: Vec<QPoly> = (0..dim)
        .map(|i| {
            let mut coeffs = vec![BigRat::from_integer(0.into()); period as usize + 1];
            for a in 1..=period {
                let coord = chi.value(a % d).coords()[i]
                    .as_constant()
                    .expect("character values have constant coordinates");
                let signed = if a % 2 == 1 { -coord } else { coord };
                coeffs[a as usize] += signed;
            }
            QPoly::new(coeffs)
        })
        .collect();

    // S_l per coordinate: l = 0 by the Abel limit, l >= 1 by substitution.
    let twisted_sum = |l: usize| -> Vec<QRat> {
        coord_polys
            .iter()
            .map(|p| {
                if l == 0 {
                    let one_minus_x = QPoly::new(vec![rat_int(1), rat_int(-1)]);
                    let reduced = p.exact_div(&one_minus_x).expect("P(1) = 0 for odd d");
                    QRat::from_rat(
                        reduced.eval(&rat_int(1)) / BigRat::from_integer((period as i64).into()),
                    )
                } else {
                    let num = p.subst_power(l as u32);
                    let den = QPoly::one() - QPoly::monomial(BigRat::from_integer(1.into()),
                        (period as usize) * l);
                    QRat::new(num, den).unwrap()
                }
            })
            .collect()
    };

    let mut acc = CycloElem::zero(order);
    for l in 0..=n {
        let mut w = binomial_rat(n as u64, l as u64);
        if l % 2 == 1 {
            w = -w;
        }
        let coords = twisted_sum(l);
        let term = CycloElem::from_coords(
            order,
            coords.iter().map(|c| c.scale_rat(&w)).collect(),
        )
        .unwrap();
        acc = acc.add(&term).unwrap();
    }
    let prefactor = &two_q()
        / &QRat::from_poly(QPoly::new(vec![rat_int(1), rat_int(-1)]).pow(n as u32));
    acc.scale(&prefactor)
}
