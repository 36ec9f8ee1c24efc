//! Period lattices of genus-one models through the complex AGM, the analytic
//! j-invariant, and the polarized period matrix of the Prym surface.

use std::cmp::Ordering;

use astro_float::BigFloat;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::complex::{check_precision, real_abs, real_cmp, real_pow2, real_to_f64};
use crate::algebra::{format_rational, ComplexApprox, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::family::{curve_equation, j_invariant, CurveLabel, FamilyParams, HyperellipticModel};

/// Extra bits carried internally and dropped from every returned value.
pub const GUARD_BITS: usize = 32;

/// Low-order bits of the working precision treated as rounding noise when
/// testing an iteration for convergence.
const NOISE_BITS: i32 = 16;

/// Decimal rendering of a complex value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexValue {
    pub re: String,
    pub im: String,
}

impl From<&ComplexApprox> for ComplexValue {
    fn from(z: &ComplexApprox) -> Self {
        let (re, im) = z.to_decimal_strings();
        ComplexValue { re, im }
    }
}

fn values(row: &[ComplexApprox]) -> Vec<ComplexValue> {
    row.iter().map(ComplexValue::from).collect()
}

fn exp_bits(p: usize) -> i32 {
    p as i32
}

/// A lattice basis `(omega1, omega2)` of the differential `dx/y`, oriented so
/// that `tau = omega2/omega1` lies in the upper half-plane.
#[derive(Clone, Debug)]
pub struct PeriodPair {
    pub omega1: ComplexApprox,
    pub omega2: ComplexApprox,
    pub tau: ComplexApprox,
}

impl Serialize for PeriodPair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PeriodPair", 3)?;
        st.serialize_field("omega1", &ComplexValue::from(&self.omega1))?;
        st.serialize_field("omega2", &ComplexValue::from(&self.omega2))?;
        st.serialize_field("tau", &ComplexValue::from(&self.tau))?;
        st.end()
    }
}

fn eval(coeffs: &[ComplexApprox], z: &ComplexApprox) -> ComplexApprox {
    let p = z.precision_bits();
    coeffs.iter().rev().fold(ComplexApprox::zero(p), |acc, c| &(&acc * z) + c)
}

/// `2^(-p/2) max(1, |x|, |y|)`, below which two coordinates count as equal.
fn tie_bound(x: &ComplexApprox, y: &ComplexApprox) -> BigFloat {
    let p = x.precision_bits().max(y.precision_bits());
    let scale = x.abs().max(&y.abs()).max(&BigFloat::from_u8(1, p));
    scale.mul(&real_pow2(-exp_bits(p) / 2, p), p, astro_float::RoundingMode::ToEven)
}

/// Orders by real part, then imaginary part, treating real parts within
/// rounding noise as equal so the order does not depend on the precision.
fn cmp_complex(x: &ComplexApprox, y: &ComplexApprox) -> Ordering {
    let p = x.precision_bits().max(y.precision_bits());
    let gap = real_abs(&x.re().sub(y.re(), p, astro_float::RoundingMode::ToEven));
    if real_cmp(&gap, &tie_bound(x, y)) != Ordering::Greater {
        real_cmp(x.im(), y.im())
    } else {
        real_cmp(x.re(), y.re())
    }
}

/// Whether `b` lies on the same side as `a`: `Re(b conj(a)) > 0`, or, when
/// that is within rounding noise of zero, `Im(b conj(a)) >= 0`.
fn same_side(a: &ComplexApprox, b: &ComplexApprox) -> bool {
    let s = b * &a.conj();
    let p = s.precision_bits();
    let bound = s.abs().mul(&real_pow2(-exp_bits(p) / 2, p), p, astro_float::RoundingMode::ToEven);
    let re = real_abs(s.re());
    if real_cmp(&re, &bound) == Ordering::Greater {
        s.re().is_positive()
    } else {
        !s.im().is_negative()
    }
}

/// All complex roots of a squarefree polynomial by Durand-Kerner iteration,
/// sorted by real then imaginary part.
pub fn polynomial_roots(f: &Polynomial, p: usize) -> Result<Vec<ComplexApprox>> {
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::Degree("root finding needs a nonconstant polynomial".into())),
    };
    let lead = f.leading_coefficient().cloned().unwrap_or_else(Rational::zero);
    let monic: Vec<ComplexApprox> = f.coeffs().iter().map(|c| ComplexApprox::from_rational(&(c / &lead), p)).collect();
    let radius = 1.0 + monic[..d].iter().map(|c| c.abs_f64()).fold(0.0, f64::max);
    let mut z: Vec<ComplexApprox> = (0..d)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / d as f64 + 0.4;
            ComplexApprox::from_f64(radius * angle.cos(), radius * angle.sin(), p)
        })
        .collect();
    let one = ComplexApprox::one(p);
    let tol = real_pow2(NOISE_BITS - exp_bits(p), p);
    let mut polish = 0;
    for _ in 0..(64 + 4 * p) {
        let mut converged = true;
        for k in 0..d {
            let mut den = one.clone();
            for j in 0..d {
                if j != k {
                    den = &den * &(&z[k] - &z[j]);
                }
            }
            let step = eval(&monic, &z[k])
                .checked_div(&den)
                .map_err(|_| Error::Precision("root iteration met coincident approximations".into()))?;
            let scale = z[k].abs().max(&BigFloat::from_u8(1, p));
            if real_cmp(&step.abs(), &scale.mul(&tol, p, astro_float::RoundingMode::ToEven)) == Ordering::Greater {
                converged = false;
            }
            z[k] = &z[k] - &step;
        }
        if converged {
            polish += 1;
            if polish == 2 {
                z.sort_by(cmp_complex);
                return Ok(z);
            }
        }
    }
    Err(Error::Precision(format!("root iteration did not converge at {p} bits")))
}

/// Arithmetic-geometric mean with the optimal branch: each geometric mean is
/// the square root on the same side as the arithmetic mean, so
/// `|a_n - b_n| <= |a_n + b_n|`.
pub fn agm(a: &ComplexApprox, b: &ComplexApprox) -> Result<ComplexApprox> {
    let p = a.precision_bits().max(b.precision_bits());
    if a.is_zero() || b.is_zero() || (a + b).is_zero() {
        return Err(Error::DegenerateConfiguration("AGM of a degenerate pair".into()));
    }
    let half = ComplexApprox::from_f64(0.5, 0.0, p);
    let tol = real_pow2(NOISE_BITS - exp_bits(p), p);
    let (mut x, mut y) = (a.clone(), b.clone());
    for _ in 0..(8 * p) {
        let bound = x.abs().mul(&tol, p, astro_float::RoundingMode::ToEven);
        if real_cmp(&(&x - &y).abs(), &bound) != Ordering::Greater {
            return Ok(x);
        }
        let m = &(&x + &y) * &half;
        let mut g = (&x * &y).sqrt();
        if !same_side(&m, &g) {
            g = -&g;
        }
        x = m;
        y = g;
    }
    Err(Error::Precision(format!("AGM did not converge within {} iterations", 8 * p)))
}

fn oriented(a: &ComplexApprox, b: ComplexApprox) -> ComplexApprox {
    if same_side(a, &b) {
        b
    } else {
        -&b
    }
}

/// Periods of `dx/y` on `y^2 = f(x)` with `deg f` equal to 3 or 4.
///
/// A quartic is first moved to a cubic by sending its largest root to
/// infinity; the cubic `y^2 = L (x - e1)(x - e2)(x - e3)` then has periods
/// `2 pi / (sqrt(L) M(a, b))` and `2 pi i / (sqrt(L) M(a, c))` with
/// `a^2 = e1 - e3`, `b^2 = e1 - e2`, `c^2 = e2 - e3`.
pub fn elliptic_periods_agm(model: &HyperellipticModel, precision_bits: usize) -> Result<PeriodPair> {
    let p = check_precision(precision_bits)?;
    let wp = p + GUARD_BITS;
    let f = model.rhs();
    let deg = f.degree().unwrap_or(0);
    if deg != 3 && deg != 4 {
        return Err(Error::Degree(format!("periods need a cubic or quartic model, got degree {deg}")));
    }
    let roots = polynomial_roots(f, wp)?;
    let (lead, e) = if deg == 4 {
        let r4 = &roots[3];
        let df: Vec<ComplexApprox> =
            f.derivative().coeffs().iter().map(|c| ComplexApprox::from_rational(c, wp)).collect();
        let e = roots[..3].iter().map(|r| (r - r4).recip()).collect::<Result<Vec<_>>>()?;
        (eval(&df, r4), e)
    } else {
        let l = f.leading_coefficient().cloned().unwrap_or_else(Rational::zero);
        (ComplexApprox::from_rational(&l, wp), roots)
    };
    let a = (&e[0] - &e[2]).sqrt();
    let b = oriented(&a, (&e[0] - &e[1]).sqrt());
    let c = oriented(&a, (&e[1] - &e[2]).sqrt());
    let two_pi = ComplexApprox::from_real(
        crate::algebra::complex::real_pi(wp).mul(&BigFloat::from_u8(2, wp), wp, astro_float::RoundingMode::ToEven),
        wp,
    );
    let root_lead = lead.sqrt();
    let omega1 = two_pi.checked_div(&(&root_lead * &agm(&a, &b)?))?;
    let mut omega2 = two_pi.mul_i().checked_div(&(&root_lead * &agm(&a, &c)?))?;
    let mut tau = omega2.checked_div(&omega1)?;
    if tau.im().is_negative() {
        omega2 = -&omega2;
        tau = -&tau;
    }
    if !tau.im().is_positive() || tau.abs_le_pow2(-exp_bits(p)) {
        return Err(Error::InternalInvariant("period ratio is real".into()));
    }
    Ok(PeriodPair { omega1: omega1.with_precision(p), omega2: omega2.with_precision(p), tau: tau.with_precision(p) })
}

fn require_upper_half_plane(tau: &ComplexApprox) -> Result<()> {
    if tau.is_finite() && tau.im().is_positive() && !tau.im().is_zero() {
        Ok(())
    } else {
        Err(Error::OutOfDomain("tau must lie in the upper half-plane".into()))
    }
}

/// Moves `tau` into the standard fundamental domain `|Re tau| <= 1/2`,
/// `|tau| >= 1`.
pub fn reduce_tau(tau: &ComplexApprox) -> Result<ComplexApprox> {
    require_upper_half_plane(tau)?;
    let p = tau.precision_bits();
    let one = BigFloat::from_u8(1, p);
    let mut t = tau.clone();
    for _ in 0..(64 + 8 * p) {
        let shift = (real_to_f64(t.re()) + 0.5).floor();
        if shift != 0.0 {
            t = &t - &ComplexApprox::from_f64(shift, 0.0, p);
        }
        if real_cmp(&t.norm_sqr(), &one) == Ordering::Less {
            t = -&t.recip()?;
        } else {
            return Ok(t);
        }
    }
    Err(Error::Precision("fundamental domain reduction did not terminate".into()))
}

/// `j(tau) = 1728 E4^3 / (E4^3 - E6^2)` from the Lambert series of the
/// Eisenstein series, evaluated after reduction to the fundamental domain.
pub fn analytic_j(tau: &ComplexApprox, precision_bits: usize) -> Result<ComplexApprox> {
    let p = check_precision(precision_bits)?;
    let wp = p + GUARD_BITS;
    let t = reduce_tau(&tau.with_precision(wp))?;
    let two_pi = ComplexApprox::pi(wp).scale_rational(&Rational::from_integer(2.into()));
    let q = (&two_pi * &t).mul_i().exp();
    let one = ComplexApprox::one(wp);
    let tol = -exp_bits(wp) - 8;
    let (mut s4, mut s6) = (ComplexApprox::zero(wp), ComplexApprox::zero(wp));
    let mut qn = q.clone();
    let mut n: u64 = 1;
    loop {
        let term = qn.checked_div(&(&one - &qn))?;
        let n3 = ComplexApprox::from_f64((n * n * n) as f64, 0.0, wp);
        let n5 = ComplexApprox::from_f64((n * n * n * n * n) as f64, 0.0, wp);
        let t5 = &n5 * &term;
        s4 = &s4 + &(&n3 * &term);
        s6 = &s6 + &t5;
        if t5.abs_le_pow2(tol) {
            break;
        }
        if n > 16 * wp as u64 {
            return Err(Error::Precision("Eisenstein series did not converge".into()));
        }
        qn = &qn * &q;
        n += 1;
    }
    let e4 = &one + &s4.scale_rational(&Rational::from_integer(240.into()));
    let e6 = &one - &s6.scale_rational(&Rational::from_integer(504.into()));
    let e4_cubed = e4.pow_u(3);
    let den = &e4_cubed - &(&e6 * &e6);
    let j = e4_cubed.scale_rational(&Rational::from_integer(1728.into())).checked_div(&den)?;
    Ok(j.with_precision(p))
}

fn complex_rows(rows: &[Vec<ComplexApprox>]) -> Vec<Vec<ComplexValue>> {
    rows.iter().map(|r| values(r)).collect()
}

/// A `2 x 4` period matrix `(Z | D)` with polarization type `D = diag(d1, d2)`.
#[derive(Clone, Debug)]
pub struct PeriodMatrix {
    pub rows: Vec<Vec<ComplexApprox>>,
    pub polarization: [u32; 2],
}

impl Serialize for PeriodMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PeriodMatrix", 2)?;
        st.serialize_field("rows", &complex_rows(&self.rows))?;
        st.serialize_field("polarization", &self.polarization)?;
        st.end()
    }
}

fn int(n: i64, p: usize) -> ComplexApprox {
    ComplexApprox::from_f64(n as f64, 0.0, p)
}

/// `((z1, z1, 1, 0), (z1, z1 + z2, 0, 2))` with polarization `(1, 2)`.
pub fn prym_period_matrix(z1: &ComplexApprox, z2: &ComplexApprox) -> Result<PeriodMatrix> {
    require_upper_half_plane(z1)?;
    require_upper_half_plane(z2)?;
    let p = z1.precision_bits().max(z2.precision_bits());
    Ok(PeriodMatrix {
        rows: vec![vec![z1.clone(), z1.clone(), int(1, p), int(0, p)], vec![z1.clone(), z1 + z2, int(0, p), int(2, p)]],
        polarization: [1, 2],
    })
}

/// Residuals of the Riemann bilinear relations for a `(Z | D)` period matrix.
#[derive(Clone, Debug, Serialize)]
pub struct RiemannCheck {
    /// Largest entry of `Pi E^-1 Pi^T`; zero exactly when `Z` is symmetric.
    pub symmetry_residual: f64,
    /// Smallest eigenvalue of the Hermitian form `i Pi E^-1 conj(Pi)^T`.
    pub min_eigenvalue: f64,
    pub satisfied: bool,
}

fn mat_mul(a: &[Vec<ComplexApprox>], b: &[Vec<ComplexApprox>]) -> Vec<Vec<ComplexApprox>> {
    let p = a[0][0].precision_bits();
    (0..a.len())
        .map(|i| {
            (0..b[0].len())
                .map(|j| (0..b.len()).fold(ComplexApprox::zero(p), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

fn transpose(a: &[Vec<ComplexApprox>]) -> Vec<Vec<ComplexApprox>> {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn riemann_check(m: &PeriodMatrix) -> RiemannCheck {
    let p = m.rows[0][0].precision_bits();
    let [d1, d2] = m.polarization;
    let inv = |d: u32| ComplexApprox::from_f64(1.0 / d as f64, 0.0, p);
    let zero = ComplexApprox::zero(p);
    // E = ((0, D), (-D, 0)), so E^-1 = ((0, -D^-1), (D^-1, 0)).
    let mut e_inv = vec![vec![zero.clone(); 4]; 4];
    e_inv[0][2] = -&inv(d1);
    e_inv[1][3] = -&inv(d2);
    e_inv[2][0] = inv(d1);
    e_inv[3][1] = inv(d2);
    let left = mat_mul(&m.rows, &e_inv);
    let sym = mat_mul(&left, &transpose(&m.rows));
    let conj_t: Vec<Vec<ComplexApprox>> =
        transpose(&m.rows).iter().map(|r| r.iter().map(|z| z.conj()).collect()).collect();
    let herm: Vec<Vec<ComplexApprox>> =
        mat_mul(&left, &conj_t).iter().map(|r| r.iter().map(|z| z.mul_i()).collect()).collect();

    let residual = sym.iter().flatten().map(|z| z.abs()).fold(BigFloat::from_u8(0, p), |a, b| a.max(&b));
    let half = ComplexApprox::from_f64(0.5, 0.0, p);
    let h11 = ComplexApprox::from_real(herm[0][0].re().clone(), p);
    let h22 = ComplexApprox::from_real(herm[1][1].re().clone(), p);
    let mean = &(&h11 + &h22) * &half;
    let gap = &(&h11 - &h22) * &half;
    let radius =
        ComplexApprox::from_real(gap.norm_sqr().add(&herm[0][1].norm_sqr(), p, astro_float::RoundingMode::ToEven), p)
            .sqrt();
    let min_eig = &mean - &radius;
    let scale = m.rows.iter().flatten().map(|z| z.abs()).fold(BigFloat::from_u8(1, p), |a, b| a.max(&b));
    let bound = scale.mul(&scale, p, astro_float::RoundingMode::ToEven).mul(
        &real_pow2(16 - exp_bits(p), p),
        p,
        astro_float::RoundingMode::ToEven,
    );
    let satisfied =
        real_cmp(&residual, &bound) != Ordering::Greater && min_eig.re().is_positive() && !min_eig.re().is_zero();
    RiemannCheck { symmetry_residual: real_to_f64(&residual), min_eigenvalue: real_to_f64(min_eig.re()), satisfied }
}

pub type IntMatrix4 = [[i64; 4]; 4];

/// Basis change of `Z^4` taking the product lattice towards the Prym lattice.
pub const BASIS_CHANGE: IntMatrix4 = [[1, -1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 1, 1]];
const BASIS_CHANGE_INV: IntMatrix4 = [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, -1, 1]];
/// Form of the product polarization `((0, 2I), (-2I, 0))`.
pub const PRODUCT_FORM: IntMatrix4 = [[0, 0, 2, 0], [0, 0, 0, 2], [-2, 0, 0, 0], [0, -2, 0, 0]];

fn int_mul(a: &IntMatrix4, b: &IntMatrix4) -> IntMatrix4 {
    let mut c = [[0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            c[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn int_transpose(a: &IntMatrix4) -> IntMatrix4 {
    let mut t = [[0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            t[i][j] = a[j][i];
        }
    }
    t
}

fn identity4() -> IntMatrix4 {
    let mut id = [[0; 4]; 4];
    for (i, row) in id.iter_mut().enumerate() {
        row[i] = 1;
    }
    id
}

/// Each stage of the passage from the product period matrix of
/// `E_t x E_st` to the Prym period matrix.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub product_matrix: PeriodMatrix,
    pub basis_change: IntMatrix4,
    pub basis_change_is_symplectic: bool,
    pub after_basis_change: Vec<Vec<ComplexApprox>>,
    /// Third column halved: the quotient by the half of the third lattice vector.
    pub after_quotient: Vec<Vec<ComplexApprox>>,
    /// Whether the halved matrix is `((z1, z1, 1, 0), (0, z2, -1, 2))`.
    pub after_quotient_matches_expected: bool,
    pub row_operation: [[i64; 2]; 2],
    pub final_matrix: PeriodMatrix,
    pub matches_prym_matrix: bool,
}

impl Serialize for ReductionTrace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ReductionTrace", 9)?;
        st.serialize_field("product_matrix", &self.product_matrix)?;
        st.serialize_field("basis_change", &self.basis_change)?;
        st.serialize_field("basis_change_is_symplectic", &self.basis_change_is_symplectic)?;
        st.serialize_field("after_basis_change", &complex_rows(&self.after_basis_change))?;
        st.serialize_field("after_quotient", &complex_rows(&self.after_quotient))?;
        st.serialize_field("after_quotient_matches_expected", &self.after_quotient_matches_expected)?;
        st.serialize_field("row_operation", &self.row_operation)?;
        st.serialize_field("final_matrix", &self.final_matrix)?;
        st.serialize_field("matches_prym_matrix", &self.matches_prym_matrix)?;
        st.end()
    }
}

fn rows_close(a: &[Vec<ComplexApprox>], b: &[Vec<ComplexApprox>], k: i32) -> bool {
    a.iter().flatten().zip(b.iter().flatten()).all(|(x, y)| (x - y).abs_le_pow2(k))
}

pub fn product_to_prym_reduction(z1: &ComplexApprox, z2: &ComplexApprox) -> Result<ReductionTrace> {
    let prym = prym_period_matrix(z1, z2)?;
    let p = z1.precision_bits().max(z2.precision_bits());
    let product = PeriodMatrix {
        rows: vec![
            vec![z1.clone(), int(0, p), int(2, p), int(0, p)],
            vec![int(0, p), z2.clone(), int(0, p), int(2, p)],
        ],
        polarization: [2, 2],
    };
    let t = BASIS_CHANGE;
    if int_mul(&t, &BASIS_CHANGE_INV) != identity4() {
        return Err(Error::InternalInvariant("basis change inverse is wrong".into()));
    }
    let symplectic = int_mul(&int_mul(&int_transpose(&t), &PRODUCT_FORM), &t) == PRODUCT_FORM;
    let t_inv: Vec<Vec<ComplexApprox>> =
        BASIS_CHANGE_INV.iter().map(|r| r.iter().map(|&v| int(v, p)).collect()).collect();
    let after_basis_change = mat_mul(&product.rows, &t_inv);
    let half = ComplexApprox::from_f64(0.5, 0.0, p);
    let mut after_quotient = after_basis_change.clone();
    for row in after_quotient.iter_mut() {
        row[2] = &row[2] * &half;
    }
    let expected =
        vec![vec![z1.clone(), z1.clone(), int(1, p), int(0, p)], vec![int(0, p), z2.clone(), int(-1, p), int(2, p)]];
    let after_quotient_matches_expected = rows_close(&after_quotient, &expected, 8 - exp_bits(p));
    let row_operation = [[1, 0], [1, 1]];
    let op: Vec<Vec<ComplexApprox>> = row_operation.iter().map(|r| r.iter().map(|&v| int(v, p)).collect()).collect();
    let final_rows = mat_mul(&op, &after_quotient);
    let matches = rows_close(&final_rows, &prym.rows, 8 - exp_bits(p));
    Ok(ReductionTrace {
        product_matrix: product,
        basis_change: t,
        basis_change_is_symplectic: symplectic,
        after_basis_change,
        after_quotient,
        after_quotient_matches_expected,
        row_operation,
        final_matrix: PeriodMatrix { rows: final_rows, polarization: [1, 2] },
        matches_prym_matrix: matches,
    })
}

/// Analytic and exact j-invariants of one elliptic quotient.
#[derive(Clone, Debug, Serialize)]
pub struct CurvePeriods {
    pub label: &'static str,
    pub periods: PeriodPair,
    pub tau_reduced: ComplexValue,
    pub j_exact: String,
    pub j_analytic: ComplexValue,
    pub j_abs_error: f64,
    pub j_agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodsReport {
    pub params: FamilyParams,
    pub precision_bits: usize,
    pub curves: Vec<CurvePeriods>,
    pub prym_period_matrix: PeriodMatrix,
    pub riemann: RiemannCheck,
    pub reduction: ReductionTrace,
}

/// Whether `|approx - exact| <= 2^(-p/2) max(1, |exact|)`.
pub fn j_agrees(approx: &ComplexApprox, exact: &Rational, p: usize) -> bool {
    let e = ComplexApprox::from_rational(exact, approx.precision_bits());
    let scale = e.abs().max(&BigFloat::from_u8(1, approx.precision_bits()));
    let bound = scale.mul(
        &real_pow2(-(exp_bits(p) / 2), approx.precision_bits()),
        approx.precision_bits(),
        astro_float::RoundingMode::ToEven,
    );
    real_cmp(&(approx - &e).abs(), &bound) != Ordering::Greater
}

pub fn curve_periods(label: CurveLabel, params: &FamilyParams, p: usize) -> Result<(CurvePeriods, ComplexApprox)> {
    let model = curve_equation(label, params)?;
    let exact = j_invariant(&model)?;
    let periods = elliptic_periods_agm(&model, p)?;
    let reduced = reduce_tau(&periods.tau)?;
    let j = analytic_j(&reduced, p)?;
    let err = (&j - &ComplexApprox::from_rational(&exact, p)).abs_f64();
    let agrees = j_agrees(&j, &exact, p);
    Ok((
        CurvePeriods {
            label: label.name(),
            periods,
            tau_reduced: ComplexValue::from(&reduced),
            j_exact: format_rational(&exact),
            j_analytic: ComplexValue::from(&j),
            j_abs_error: err,
            j_agrees: agrees,
        },
        reduced,
    ))
}

/// Periods of all elliptic quotients, and the Prym period matrix built from
/// the reduced period ratios of `E_t` and `E_st`.
pub fn periods_report(params: &FamilyParams, precision_bits: usize) -> Result<PeriodsReport> {
    let p = check_precision(precision_bits)?;
    let mut curves = Vec::new();
    let (mut z1, mut z2) = (None, None);
    for label in CurveLabel::ELLIPTIC {
        let (c, reduced) = curve_periods(label, params, p)?;
        match label {
            CurveLabel::ET => z1 = Some(reduced),
            CurveLabel::ESt => z2 = Some(reduced),
            _ => {}
        }
        curves.push(c);
    }
    let missing = || Error::InternalInvariant("elliptic quotient list lacks E_t or E_st".into());
    let (z1, z2) = (z1.ok_or_else(missing)?, z2.ok_or_else(missing)?);
    let prym = prym_period_matrix(&z1, &z2)?;
    let riemann = riemann_check(&prym);
    let reduction = product_to_prym_reduction(&z1, &z2)?;
    Ok(PeriodsReport {
        params: params.clone(),
        precision_bits: p,
        curves,
        prym_period_matrix: prym,
        riemann,
        reduction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::check_domain_ints;

    fn cubic(c: &[i64]) -> HyperellipticModel {
        HyperellipticModel::new(Polynomial::from_ints(c)).unwrap()
    }

    #[test]
    fn roots_of_a_cubic() {
        let r = polynomial_roots(&Polynomial::from_ints(&[-6, 11, -6, 1]), 128).unwrap();
        for (z, k) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!(z.close_to(&ComplexApprox::from_f64(k, 0.0, 128), 1e-30));
        }
    }

    #[test]
    fn tau_of_square_lattice() {
        let pp = elliptic_periods_agm(&cubic(&[0, -1, 0, 1]), 256).unwrap();
        let t = reduce_tau(&pp.tau).unwrap();
        assert!(t.close_to(&ComplexApprox::i(256), 1e-60));
        let j = analytic_j(&pp.tau, 256).unwrap();
        assert!(j.close_to(&ComplexApprox::from_f64(1728.0, 0.0, 256), 1e-50));
    }

    #[test]
    fn j_at_cube_root_of_unity() {
        let p = 192;
        let rho = ComplexApprox::from_f64(-0.5, 0.0, p);
        let s3 = ComplexApprox::from_f64(3.0, 0.0, p).sqrt().scale_rational(&crate::algebra::ratio(1, 2));
        let tau = &rho + &s3.mul_i();
        assert!(analytic_j(&tau, p).unwrap().abs_f64() < 1e-40);
    }

    #[test]
    fn quartic_matches_exact_j() {
        let params = check_domain_ints(0, 1).unwrap();
        for label in CurveLabel::ELLIPTIC {
            let (c, _) = curve_periods(label, &params, 256).unwrap();
            assert!(c.j_agrees, "{}: {}", c.label, c.j_abs_error);
        }
    }

    #[test]
    fn non_upper_half_plane_is_rejected() {
        let t = ComplexApprox::from_f64(0.3, -1.0, 128);
        assert!(matches!(analytic_j(&t, 128), Err(Error::OutOfDomain(_))));
        let z = ComplexApprox::i(128);
        assert!(prym_period_matrix(&z, &t).is_err());
    }

    #[test]
    fn reduction_reaches_prym_matrix() {
        let z1 = ComplexApprox::from_f64(0.1, 1.3, 128);
        let z2 = ComplexApprox::from_f64(-0.2, 0.9, 128);
        let tr = product_to_prym_reduction(&z1, &z2).unwrap();
        assert!(tr.basis_change_is_symplectic);
        assert!(tr.matches_prym_matrix);
        assert!(tr.after_quotient_matches_expected);
        let expect_m1 =
            [[z1.clone(), z1.clone(), int(1, 128), int(0, 128)], [int(0, 128), z2.clone(), int(-1, 128), int(2, 128)]];
        let expect_m1: Vec<Vec<ComplexApprox>> = expect_m1.iter().map(|r| r.to_vec()).collect();
        assert!(rows_close(&tr.after_quotient, &expect_m1, -100));
        let rc = riemann_check(&prym_period_matrix(&z1, &z2).unwrap());
        assert!(rc.satisfied);
        assert!(rc.min_eigenvalue > 0.0);
        assert_eq!(rc.symmetry_residual, 0.0);
    }

    #[test]
    fn riemann_eigenvalues() {
        let p = 128;
        let i = ComplexApprox::i(p);
        let rc = riemann_check(&prym_period_matrix(&i, &i).unwrap());
        assert!((rc.min_eigenvalue - (3.0 - 5f64.sqrt())).abs() < 1e-12);
        let two_i = ComplexApprox::from_f64(0.0, 2.0, p);
        assert!(riemann_check(&prym_period_matrix(&i, &two_i).unwrap()).satisfied);
        let mut m = prym_period_matrix(&i, &i).unwrap();
        m.rows[1][1] = ComplexApprox::zero(p);
        let rc = riemann_check(&m);
        assert!(rc.min_eigenvalue < 0.0);
        assert!(!rc.satisfied);
    }

    #[test]
    fn asymmetric_matrix_fails_riemann() {
        let p = 128;
        let z = ComplexApprox::i(p);
        let mut m = prym_period_matrix(&z, &z).unwrap();
        m.rows[0][1] = &m.rows[0][1] + &ComplexApprox::from_f64(0.25, 0.0, p);
        assert!(!riemann_check(&m).satisfied);
    }

    #[test]
    fn degree_is_checked() {
        let m = HyperellipticModel::new(Polynomial::from_ints(&[1, 0, 0, 0, 0, 1])).unwrap();
        assert!(matches!(elliptic_periods_agm(&m, 128), Err(Error::Degree(_))));
        assert!(matches!(elliptic_periods_agm(&cubic(&[0, -1, 0, 1]), 32), Err(Error::Precision(_))));
    }
}
