//! q-integers `[k] = (q^k - q^{-k})/(q - q^{-1})` as exact series.

use fxxz_exactalg::{QSeries, QrTerm, RPoly};

/// `[k] = Σ_{j<k} q^{1-k+2j}`, exact (a Laurent polynomial).
pub fn qint(k: i32, max_order: i32) -> QSeries {
    assert!(k >= 1);
    let mut s = QSeries::zero(max_order);
    for j in 0..k {
        s.add_at(1 - k + 2 * j, &RPoly::one());
    }
    s
}

/// `1/[k] = q^{k-1} (1 - q²) / (1 - q^{2k})`
pub fn qint_inv(k: i32, max_order: i32) -> QSeries {
    assert!(k >= 1);
    let base = QSeries::monomial(RPoly::one(), k - 1, max_order);
    base.mul_one_minus(&QrTerm::unit(2, 0))
        .div_one_minus(&QrTerm::unit(2 * k, 0))
        .expect("positive order")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_contract() {
        for k in 1..6 {
            let p = &qint(k, 40) * &qint_inv(k, 40);
            assert!(p.agrees_with(&QSeries::one(p.max_order())), "k={k}");
            assert_eq!(p.max_order(), 41 - k);
        }
    }
}
