//! The genus-3 family `y^2 = (x^4 + a x^2 + 1)(x^4 + b x^2 + 1)`, its
//! involutions, its nine quotient curves and their j-invariants.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{format_rational, rat, Polynomial, Rational};
use crate::error::{Error, Result};

/// A validated parameter pair: `a != b`, `a^2 != 4`, `b^2 != 4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyParams {
    a: Rational,
    b: Rational,
}

impl FamilyParams {
    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// The same curve with the two quartic factors exchanged.
    pub fn swapped(&self) -> FamilyParams {
        FamilyParams { a: self.b.clone(), b: self.a.clone() }
    }

    pub fn negated(&self) -> FamilyParams {
        FamilyParams { a: -self.a.clone(), b: -self.b.clone() }
    }

    /// `a + b != 0`; the deck involution on parameters needs it.
    pub fn phi_defined(&self) -> bool {
        !(&self.a + &self.b).is_zero()
    }

    /// `b = -a`, where the two elliptic quotients by `tau` and `sigma tau`
    /// become isomorphic.
    pub fn e_tau_iso_e_st(&self) -> bool {
        !self.phi_defined()
    }

    pub fn flags(&self) -> DomainFlags {
        DomainFlags { phi_defined: self.phi_defined(), e_tau_iso_e_st: self.e_tau_iso_e_st() }
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.a), format_rational(&self.b))
    }
}

impl Serialize for FamilyParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FamilyParams", 2)?;
        st.serialize_field("a", &format_rational(&self.a))?;
        st.serialize_field("b", &format_rational(&self.b))?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DomainFlags {
    pub phi_defined: bool,
    pub e_tau_iso_e_st: bool,
}

pub fn check_domain(a: &Rational, b: &Rational) -> Result<FamilyParams> {
    let four = rat(4);
    let reason = if a == b {
        Some("a = b")
    } else if a * a == four {
        Some("a^2 = 4")
    } else if b * b == four {
        Some("b^2 = 4")
    } else {
        None
    };
    match reason {
        Some(r) => Err(Error::Domain { reason: r.into(), a: format_rational(a), b: format_rational(b) }),
        None => Ok(FamilyParams { a: a.clone(), b: b.clone() }),
    }
}

pub fn check_domain_ints(a: i64, b: i64) -> Result<FamilyParams> {
    check_domain(&rat(a), &rat(b))
}

/// `a = -t1^2 - 1/t1^2`, `b = -t2^2 - 1/t2^2`; the curve then has
/// Weierstrass roots `±t1, ±t2, ±1/t1, ±1/t2`.
pub fn params_from_roots(t1: &Rational, t2: &Rational) -> Result<FamilyParams> {
    let coord = |t: &Rational| -> Result<Rational> {
        if t.is_zero() {
            return Err(Error::Argument("root parameter must be nonzero".into()));
        }
        let t2 = t * t;
        Ok(-(&t2 + t2.recip()))
    };
    check_domain(&coord(t1)?, &coord(t2)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveLabel {
    Ctilde,
    CIs,
    CIt,
    CIst,
    ES,
    ET,
    ESt,
    EIsT,
    ESIt,
    EIsIt,
}

impl CurveLabel {
    pub const ALL: [CurveLabel; 10] = [
        CurveLabel::Ctilde,
        CurveLabel::CIs,
        CurveLabel::CIt,
        CurveLabel::CIst,
        CurveLabel::ES,
        CurveLabel::ET,
        CurveLabel::ESt,
        CurveLabel::EIsT,
        CurveLabel::ESIt,
        CurveLabel::EIsIt,
    ];

    /// The nine quotients of the genus-3 curve.
    pub const QUOTIENTS: [CurveLabel; 9] = [
        CurveLabel::CIs,
        CurveLabel::CIt,
        CurveLabel::CIst,
        CurveLabel::ES,
        CurveLabel::ET,
        CurveLabel::ESt,
        CurveLabel::EIsT,
        CurveLabel::ESIt,
        CurveLabel::EIsIt,
    ];

    pub const ELLIPTIC: [CurveLabel; 6] =
        [CurveLabel::ES, CurveLabel::ET, CurveLabel::ESt, CurveLabel::EIsT, CurveLabel::ESIt, CurveLabel::EIsIt];

    pub fn name(&self) -> &'static str {
        match self {
            CurveLabel::Ctilde => "Ctilde",
            CurveLabel::CIs => "C_is",
            CurveLabel::CIt => "C_it",
            CurveLabel::CIst => "C_ist",
            CurveLabel::ES => "E_s",
            CurveLabel::ET => "E_t",
            CurveLabel::ESt => "E_st",
            CurveLabel::EIsT => "E_is_t",
            CurveLabel::ESIt => "E_s_it",
            CurveLabel::EIsIt => "E_is_it",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown curve label {s:?}")))
    }

    pub fn expected_genus(&self) -> usize {
        match self {
            CurveLabel::Ctilde => 3,
            CurveLabel::CIs | CurveLabel::CIt | CurveLabel::CIst => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CurveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for CurveLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// `y^2 = rhs(x)` with squarefree `rhs` of degree at least 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticModel {
    rhs: Polynomial,
    genus: usize,
}

impl HyperellipticModel {
    pub fn new(rhs: Polynomial) -> Result<Self> {
        let deg = rhs.degree().ok_or_else(|| Error::Degree("zero right-hand side".into()))?;
        if deg < 3 {
            return Err(Error::Degree(format!("right-hand side of degree {deg} < 3")));
        }
        if !rhs.is_squarefree()? {
            return Err(Error::Degree(format!("right-hand side {rhs} is not squarefree")));
        }
        Ok(HyperellipticModel { genus: deg.div_ceil(2) - 1, rhs })
    }

    pub fn rhs(&self) -> &Polynomial {
        &self.rhs
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Number of branch points: the finite roots plus infinity for odd degree.
    pub fn branch_point_count(&self) -> usize {
        let deg = self.rhs.degree().unwrap_or(0);
        deg + deg % 2
    }
}

fn quad(c2: Rational, c1: Rational, c0: Rational) -> Polynomial {
    Polynomial::new(vec![c0, c1, c2])
}

/// The right-hand side of the displayed equation for `label`.
pub fn curve_rhs(label: CurveLabel, params: &FamilyParams) -> Polynomial {
    let (a, b) = (params.a(), params.b());
    let one = Rational::one();
    let zero = Rational::zero;
    let lin = |c: &Rational| Polynomial::new(vec![c.clone(), one.clone()]);
    let shifted_sq = |c: Rational| quad(one.clone(), zero(), c);
    match label {
        CurveLabel::Ctilde => {
            let fa = Polynomial::new(vec![one.clone(), zero(), a.clone(), zero(), one.clone()]);
            let fb = Polynomial::new(vec![one.clone(), zero(), b.clone(), zero(), one.clone()]);
            &fa * &fb
        }
        CurveLabel::ES => &quad(one.clone(), a.clone(), one.clone()) * &quad(one.clone(), b.clone(), one.clone()),
        CurveLabel::CIs => {
            let e = curve_rhs(CurveLabel::ES, params);
            &e * &Polynomial::x()
        }
        CurveLabel::ET => &shifted_sq(a - rat(2)) * &shifted_sq(b - rat(2)),
        CurveLabel::ESt => &shifted_sq(a + rat(2)) * &shifted_sq(b + rat(2)),
        CurveLabel::CIt => &shifted_sq(rat(-4)) * &curve_rhs(CurveLabel::ET, params),
        CurveLabel::CIst => &shifted_sq(rat(4)) * &curve_rhs(CurveLabel::ESt, params),
        CurveLabel::EIsT => Polynomial::product([&lin(a), &lin(b), &lin(&rat(2))]),
        CurveLabel::ESIt => Polynomial::product([&lin(a), &lin(b), &lin(&rat(-2)), &lin(&rat(2))]),
        CurveLabel::EIsIt => Polynomial::product([&lin(a), &lin(b), &lin(&rat(-2))]),
    }
}

pub fn curve_equation(label: CurveLabel, params: &FamilyParams) -> Result<HyperellipticModel> {
    let rhs = curve_rhs(label, params);
    HyperellipticModel::new(rhs)
        .map_err(|e| Error::InternalInvariant(format!("{label} at {params} is singular inside the domain: {e}")))
}

/// `(x, y) -> (U(x), y W(x))` from the genus-3 curve onto `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMapData {
    pub source: CurveLabel,
    pub target: CurveLabel,
    pub u_num: Polynomial,
    pub u_den: Polynomial,
    pub w_num: Polynomial,
    pub w_den: Polynomial,
}

fn mono(c: i64, d: usize) -> Polynomial {
    Polynomial::monomial(rat(c), d)
}

pub fn quotient_map(label: CurveLabel) -> Result<QuotientMapData> {
    let x = Polynomial::x;
    let one = Polynomial::one;
    let x2p1 = || Polynomial::from_ints(&[1, 0, 1]);
    let x2m1 = || Polynomial::from_ints(&[-1, 0, 1]);
    let x4p1 = || Polynomial::from_ints(&[1, 0, 0, 0, 1]);
    // (u_num, u_den, w_num, w_den)
    let (u_num, u_den, w_num, w_den) = match label {
        CurveLabel::Ctilde => return Err(Error::Argument("the genus-3 curve is not a quotient of itself".into())),
        CurveLabel::ES => (mono(1, 2), one(), one(), one()),
        CurveLabel::ET => (x2p1(), x(), one(), mono(1, 2)),
        CurveLabel::ESt => (x2m1(), x(), one(), mono(1, 2)),
        CurveLabel::CIs => (mono(1, 2), one(), x(), one()),
        CurveLabel::CIt => (x2p1(), x(), x2m1(), mono(1, 3)),
        CurveLabel::CIst => (x2m1(), x(), x2p1(), mono(1, 3)),
        CurveLabel::EIsT => (x4p1(), mono(1, 2), x2p1(), mono(1, 3)),
        CurveLabel::ESIt => (x4p1(), mono(1, 2), Polynomial::from_ints(&[-1, 0, 0, 0, 1]), mono(1, 4)),
        CurveLabel::EIsIt => (x4p1(), mono(1, 2), x2m1(), mono(1, 3)),
    };
    Ok(QuotientMapData { source: CurveLabel::Ctilde, target: label, u_num, u_den, w_num, w_den })
}

/// Checks `W^2 f_source = f_target(U)` after clearing denominators.
pub fn verify_quotient_identity_with(q: &QuotientMapData, f_source: &Polynomial, f_target: &Polynomial) -> bool {
    let Ok((g, k)) = f_target.substitute_rational_map(&q.u_num, &q.u_den) else {
        return false;
    };
    let lhs = Polynomial::product([&q.w_num, &q.w_num, &q.u_den.pow(k), f_source]);
    let rhs = Polynomial::product([&q.w_den, &q.w_den, &g]);
    lhs == rhs
}

pub fn verify_quotient_identity(q: &QuotientMapData, params: &FamilyParams) -> bool {
    verify_quotient_identity_with(q, &curve_rhs(q.source, params), &curve_rhs(q.target, params))
}

/// Whether the `(x + 2)` variant of the `E_is_it` equation would also satisfy
/// the quotient identity. It never does; the answer is reported as a check.
pub fn e_is_it_plus_two_variant_holds(params: &FamilyParams) -> bool {
    let lin = |c: Rational| Polynomial::new(vec![c, Rational::one()]);
    let variant = Polynomial::product([&lin(params.a().clone()), &lin(params.b().clone()), &lin(rat(2))]);
    let q = quotient_map(CurveLabel::EIsIt).expect("quotient label");
    verify_quotient_identity_with(&q, &curve_rhs(CurveLabel::Ctilde, params), &variant)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvolutionLabel {
    Iota,
    Sigma,
    Tau,
    SigmaTau,
    IotaSigma,
    IotaTau,
    IotaSigmaTau,
}

impl InvolutionLabel {
    pub const ALL: [InvolutionLabel; 7] = [
        InvolutionLabel::Iota,
        InvolutionLabel::Sigma,
        InvolutionLabel::Tau,
        InvolutionLabel::SigmaTau,
        InvolutionLabel::IotaSigma,
        InvolutionLabel::IotaTau,
        InvolutionLabel::IotaSigmaTau,
    ];

    /// The six involutions whose fixed-point counts determine the quotients.
    pub const PROFILE: [InvolutionLabel; 6] = [
        InvolutionLabel::Sigma,
        InvolutionLabel::Tau,
        InvolutionLabel::SigmaTau,
        InvolutionLabel::IotaSigma,
        InvolutionLabel::IotaTau,
        InvolutionLabel::IotaSigmaTau,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            InvolutionLabel::Iota => "iota",
            InvolutionLabel::Sigma => "sigma",
            InvolutionLabel::Tau => "tau",
            InvolutionLabel::SigmaTau => "sigma_tau",
            InvolutionLabel::IotaSigma => "iota_sigma",
            InvolutionLabel::IotaTau => "iota_tau",
            InvolutionLabel::IotaSigmaTau => "iota_sigma_tau",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown involution {s:?}")))
    }

    /// `x -> (m11 x + m12)/(m21 x + m22)`, `y -> sign * y * c_num(x)/c_den(x)`.
    fn lift(&self) -> ([i64; 4], i64, Polynomial, Polynomial) {
        use InvolutionLabel::*;
        let sign = match self {
            Iota | IotaSigma | IotaTau | IotaSigmaTau => -1,
            _ => 1,
        };
        let x4 = Polynomial::monomial(Rational::one(), 4);
        match self {
            Iota => ([1, 0, 0, 1], sign, Polynomial::one(), Polynomial::one()),
            Sigma | IotaSigma => ([-1, 0, 0, 1], sign, Polynomial::one(), Polynomial::one()),
            Tau | IotaTau => ([0, 1, 1, 0], sign, Polynomial::one(), x4),
            SigmaTau | IotaSigmaTau => ([0, -1, 1, 0], sign, Polynomial::one(), x4),
        }
    }
}

impl Serialize for InvolutionLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A set of fixed points sharing an x-locus.
///
/// `x_locus` is a monic polynomial whose roots are the x-coordinates (the
/// chart coordinate `t = 1/x` at infinity), and `y_squared` is the value of
/// `y^2` (resp. `w^2`) there, reduced modulo `x_locus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedLocus {
    pub chart: &'static str,
    pub x_locus: String,
    pub y_squared: String,
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPointData {
    pub involution: InvolutionLabel,
    pub count: usize,
    pub loci: Vec<FixedLocus>,
}

fn deg(p: &Polynomial) -> usize {
    p.degree().unwrap_or(0)
}

/// Fixed points of an involution lift on the smooth model, including the two
/// points at infinity seen in the chart `(t, w) = (1/x, y/x^4)`.
pub fn fixed_point_count(inv: InvolutionLabel, params: &FamilyParams) -> FixedPointData {
    let f = curve_rhs(CurveLabel::Ctilde, params);
    let ([m11, m12, m21, m22], sign, c_num, c_den) = inv.lift();
    let signed_num = c_num.scale(&rat(sign));
    let keep = &signed_num - &c_den;
    let flip = &signed_num + &c_den;
    let fixed_x = Polynomial::from_ints(&[-m12, m22 - m11, m21]);
    let mut loci = Vec::new();
    let reduce = |p: &Polynomial| -> String { f.div_rem(p).map(|(_, r)| r.to_string()).unwrap_or_default() };

    // x-coordinates over which y is kept: every point is fixed.
    // x-coordinates over which y is negated: only the points with y = 0.
    let (keep_x, flip_x) = if fixed_x.is_zero() {
        let all = if keep.is_zero() { Some(Polynomial::x()) } else { None };
        (all, if flip.is_zero() { Some(f.monic()) } else { None })
    } else {
        (Some(fixed_x.gcd(&keep)), Some(fixed_x.gcd(&flip)))
    };
    if let Some(kx) = keep_x.filter(|p| deg(p) > 0) {
        let points = 2 * deg(&kx) - deg(&kx.gcd(&f));
        loci.push(FixedLocus { chart: "affine", x_locus: kx.to_string(), y_squared: reduce(&kx), points });
    }
    if let Some(fx) = flip_x {
        let zeros = fx.gcd(&f);
        if deg(&zeros) > 0 {
            loci.push(FixedLocus {
                chart: "affine",
                x_locus: zeros.to_string(),
                y_squared: "0".into(),
                points: deg(&zeros),
            });
        }
    }

    // x = inf is fixed iff m21 = 0; there w -> sign * lim c(x) x^4 / M(x)^4 * w.
    if m21 == 0 {
        let lim = if deg(&c_num) == deg(&c_den) {
            c_num.leading_coefficient().unwrap() / c_den.leading_coefficient().unwrap()
        } else {
            Rational::zero()
        };
        let ratio = rat(m22) / rat(m11);
        let factor = rat(sign) * lim * ratio.clone() * ratio.clone() * ratio.clone() * ratio;
        let lc = f.leading_coefficient().cloned().unwrap_or_else(Rational::zero);
        let points = if factor.is_one() {
            2
        } else if (-factor).is_one() && lc.is_zero() {
            1
        } else {
            0
        };
        if points > 0 {
            loci.push(FixedLocus { chart: "infinity", x_locus: "t".into(), y_squared: format_rational(&lc), points });
        }
    }
    let count = loci.iter().map(|l| l.points).sum();
    FixedPointData { involution: inv, count, loci }
}

/// Counts for `(sigma, tau, sigma_tau, iota_sigma, iota_tau, iota_sigma_tau)`.
pub fn fixed_point_profile(params: &FamilyParams) -> [usize; 6] {
    InvolutionLabel::PROFILE.map(|inv| fixed_point_count(inv, params).count)
}

/// Classical invariants `(I, J)` of `a x^4 + b x^3 + c x^2 + d x + e`.
pub fn quartic_invariants(f: &Polynomial) -> (Rational, Rational) {
    let [e, d, c, b, a] = [0, 1, 2, 3, 4].map(|i| f.coeff(i));
    let r = |n: i64| rat(n);
    let i = r(12) * &a * &e - r(3) * &b * &d + &c * &c;
    let j =
        r(72) * &a * &c * &e + r(9) * &b * &c * &d - r(27) * &a * &d * &d - r(27) * &e * &b * &b - r(2) * &c * &c * &c;
    (i, j)
}

/// Coefficients `(a2, a4, a6)` of `y^2 = x^3 + a2 x^2 + a4 x + a6` isomorphic
/// to `y^2 = alpha x^3 + beta x^2 + gamma x + delta`.
pub fn monic_cubic_model(f: &Polynomial) -> (Rational, Rational, Rational) {
    let [d, g, b, a] = [0, 1, 2, 3].map(|i| f.coeff(i));
    (b, &a * &g, &a * &a * &d)
}

/// `c4^3 / Delta` for `y^2 = x^3 + a2 x^2 + a4 x + a6`.
pub fn j_from_long_weierstrass(a2: &Rational, a4: &Rational, a6: &Rational) -> Result<Rational> {
    let r = |n: i64| rat(n);
    let b2 = r(4) * a2;
    let b4 = r(2) * a4;
    let b6 = r(4) * a6;
    let b8 = r(4) * a2 * a6 - a4 * a4;
    let c4 = &b2 * &b2 - r(24) * &b4;
    let delta = -(&b2 * &b2 * &b8) - r(8) * &b4 * &b4 * &b4 - r(27) * &b6 * &b6 + r(9) * &b2 * &b4 * &b6;
    if delta.is_zero() {
        return Err(Error::Singular("zero discriminant".into()));
    }
    Ok(&c4 * &c4 * &c4 / delta)
}

/// `(p, q)` of a short model `y^2 = x^3 + p x + q` with the same j-invariant.
pub fn short_model_coefficients(m: &HyperellipticModel) -> Result<(Rational, Rational)> {
    match m.rhs().degree() {
        Some(4) => {
            let (i, j) = quartic_invariants(m.rhs());
            Ok((rat(-27) * i, rat(-27) * j))
        }
        Some(3) => {
            let (a2, a4, a6) = monic_cubic_model(m.rhs());
            // x -> x - a2/3
            let s = &a2 / rat(3);
            let p = &a4 - &a2 * &s;
            let q = &a6 - &a4 * &s + rat(2) * &s * &s * &s;
            Ok((p, q))
        }
        _ => Err(Error::Argument(format!("genus {} model has no j-invariant", m.genus()))),
    }
}

pub fn j_invariant(m: &HyperellipticModel) -> Result<Rational> {
    match m.rhs().degree() {
        Some(4) => {
            let (p, q) = short_model_coefficients(m)?;
            j_from_long_weierstrass(&Rational::zero(), &p, &q)
        }
        Some(3) => {
            let (a2, a4, a6) = monic_cubic_model(m.rhs());
            j_from_long_weierstrass(&a2, &a4, &a6)
        }
        _ => Err(Error::Argument(format!("genus {} model has no j-invariant", m.genus()))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveReport {
    pub label: CurveLabel,
    pub rhs: String,
    pub rhs_coefficients: Vec<String>,
    pub genus: usize,
    pub branch_points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<String>,
}

pub fn curve_report(label: CurveLabel, params: &FamilyParams) -> Result<CurveReport> {
    let m = curve_equation(label, params)?;
    let j = if m.genus() == 1 { Some(format_rational(&j_invariant(&m)?)) } else { None };
    Ok(CurveReport {
        label,
        rhs: m.rhs().to_string(),
        rhs_coefficients: m.rhs().coefficient_strings(),
        genus: m.genus(),
        branch_points: m.branch_point_count(),
        j,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;

    fn p01() -> FamilyParams {
        check_domain_ints(0, 1).unwrap()
    }

    #[test]
    fn domain_checks() {
        assert!(p01().phi_defined());
        let p = check_domain_ints(1, -1).unwrap();
        assert!(!p.phi_defined() && p.e_tau_iso_e_st());
        match check_domain_ints(2, 3) {
            Err(Error::Domain { reason, .. }) => assert_eq!(reason, "a^2 = 4"),
            other => panic!("{other:?}"),
        }
        assert!(check_domain_ints(3, 3).is_err());
        assert!(check_domain_ints(3, -2).is_err());
    }

    #[test]
    fn displayed_equations() {
        let p = p01();
        assert_eq!(curve_rhs(CurveLabel::Ctilde, &p), Polynomial::from_ints(&[1, 0, 1, 0, 2, 0, 1, 0, 1]));
        assert_eq!(curve_rhs(CurveLabel::ET, &p), Polynomial::from_ints(&[2, 0, -3, 0, 1]));
        assert_eq!(curve_rhs(CurveLabel::EIsIt, &p), Polynomial::from_ints(&[0, -2, -1, 1]));
        for label in CurveLabel::ALL {
            let m = curve_equation(label, &p).unwrap();
            assert_eq!(m.genus(), label.expected_genus(), "{label}");
        }
    }

    #[test]
    fn quotient_identities_at_base_point() {
        let p = p01();
        for label in CurveLabel::QUOTIENTS {
            assert!(verify_quotient_identity(&quotient_map(label).unwrap(), &p), "{label}");
        }
        assert!(quotient_map(CurveLabel::Ctilde).is_err());
        assert!(!e_is_it_plus_two_variant_holds(&p));
    }

    #[test]
    fn altered_target_fails() {
        let p = p01();
        let q = quotient_map(CurveLabel::ET).unwrap();
        let lin = |c: i64| Polynomial::from_ints(&[c, 0, 1]);
        // the target with a and b shifted by 2
        let wrong = &lin(2) * &lin(-1);
        assert!(!verify_quotient_identity_with(&q, &curve_rhs(CurveLabel::Ctilde, &p), &wrong));
    }

    #[test]
    fn fixed_points() {
        let p = p01();
        let s = fixed_point_count(InvolutionLabel::Sigma, &p);
        assert_eq!(s.count, 4);
        assert_eq!(s.loci[0].x_locus, "x");
        assert_eq!(s.loci[0].y_squared, "1");
        assert_eq!(s.loci[1].chart, "infinity");
        let t = fixed_point_count(InvolutionLabel::Tau, &p);
        assert_eq!(t.count, 4);
        assert_eq!(t.loci[0].x_locus, "x^2 - 1");
        assert_eq!(t.loci[0].y_squared, "6");
        let st = fixed_point_count(InvolutionLabel::SigmaTau, &p);
        assert_eq!(st.loci[0].y_squared, "2");
        assert_eq!(fixed_point_profile(&p), [4, 4, 4, 0, 0, 0]);
        assert_eq!(fixed_point_count(InvolutionLabel::Iota, &p).count, 8);
    }

    #[test]
    fn roots_parametrization() {
        let p = params_from_roots(&rat(2), &rat(3)).unwrap();
        assert_eq!(p.a(), &ratio(-17, 4));
        assert_eq!(p.b(), &ratio(-82, 9));
        assert!(matches!(params_from_roots(&rat(1), &rat(3)), Err(Error::Domain { .. })));
        assert!(matches!(params_from_roots(&rat(0), &rat(3)), Err(Error::Argument(_))));
        let f = curve_rhs(CurveLabel::Ctilde, &p);
        for r in [rat(2), rat(-2), rat(3), rat(-3), ratio(1, 2), ratio(-1, 2), ratio(1, 3), ratio(-1, 3)] {
            assert!(f.eval(&r).is_zero());
        }
    }

    #[test]
    fn j_values() {
        let j = |c: &[i64]| j_invariant(&HyperellipticModel::new(Polynomial::from_ints(c)).unwrap()).unwrap();
        assert_eq!(j(&[-1, 0, 0, 0, 1]), rat(1728));
        assert_eq!(j(&[2, 0, -3, 0, 1]), rat(287496));
        assert_eq!(j(&[0, -2, -1, 1]), ratio(21952, 9));
        assert_eq!(quartic_invariants(&Polynomial::from_ints(&[2, 0, -3, 0, 1])), (rat(33), rat(-378)));
        let g2 = HyperellipticModel::new(Polynomial::from_ints(&[1, 0, 0, 0, 0, 1])).unwrap();
        assert!(matches!(j_invariant(&g2), Err(Error::Argument(_))));
    }

    #[test]
    fn legendre_oracle_for_cubic_route() {
        // y^2 = x(x - 1)(x - λ) has j = 256 (λ^2 - λ + 1)^3 / (λ^2 (λ - 1)^2)
        for (n, d) in [(-2, 1), (3, 1), (5, 7), (-4, 9)] {
            let l = ratio(n, d);
            let f = Polynomial::product([
                &Polynomial::x(),
                &Polynomial::linear_root(&rat(1)),
                &Polynomial::linear_root(&l),
            ]);
            let expected = {
                let u = &l * &l - &l + rat(1);
                rat(256) * &u * &u * &u / (&l * &l * (&l - rat(1)) * (&l - rat(1)))
            };
            assert_eq!(j_invariant(&HyperellipticModel::new(f).unwrap()).unwrap(), expected);
        }
    }
}
