//! Values checked against computations that share no code with the crate.

use kleinprym::algebra::{Polynomial, Rational};
use kleinprym::family::{j_invariant, HyperellipticModel};
use kleinprym::periods::elliptic_periods_agm;

/// `int_0^1 2 du / sqrt(1 - u^4)` after `u = sin t`, by composite Simpson.
fn lemniscate_constant() -> f64 {
    let n = 4000;
    let h = std::f64::consts::FRAC_PI_2 / n as f64;
    let f = |t: f64| 2.0 / (1.0 + t.sin().powi(2)).sqrt();
    let inner: f64 = (1..n).map(|k| f(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 }).sum();
    h / 3.0 * (f(0.0) + inner + f(std::f64::consts::FRAC_PI_2))
}

#[test]
fn square_lattice_matches_quadrature() {
    // y^2 = x^3 - x has real period 2 * int_1^inf dx/y and the lattice is square.
    let varpi = lemniscate_constant();
    let m = HyperellipticModel::new(Polynomial::from_ints(&[0, -1, 0, 1])).unwrap();
    let pp = elliptic_periods_agm(&m, 256).unwrap();
    let (w1, w2) = ((pp.omega1.re_f64(), pp.omega1.im_f64()), (pp.omega2.re_f64(), pp.omega2.im_f64()));
    let covolume = (w1.0 * w2.1 - w1.1 * w2.0).abs();
    assert!((covolume - (2.0 * varpi).powi(2)).abs() < 1e-10, "{covolume}");
    // 2 varpi = m w1 + n w2 for integers m, n
    let det = w1.0 * w2.1 - w1.1 * w2.0;
    let m_coef = (2.0 * varpi * w2.1) / det;
    let n_coef = (-2.0 * varpi * w1.1) / det;
    assert!((m_coef - m_coef.round()).abs() < 1e-9 && (n_coef - n_coef.round()).abs() < 1e-9);
}

#[test]
fn quartic_j_matches_textbook_value() {
    // y^2 = x^4 - 1 is isomorphic to y^2 = x^3 - 4x, so j = 1728.
    let m = HyperellipticModel::new(Polynomial::from_ints(&[-1, 0, 0, 0, 1])).unwrap();
    assert_eq!(j_invariant(&m).unwrap(), Rational::from_integer(1728.into()));
}
