//! Short Weierstrass curves over the rationals, Vélu quotients by rational
//! cyclic subgroups, and the self-duality certificate for `E x F/<(P, Q)>`.

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{format_rational, parse_rational, rat, Rational};
use crate::error::{Error, Result};
use crate::family::{short_model_coefficients, HyperellipticModel};

pub const MAX_KERNEL_ORDER: u32 = 12;

/// `y^2 = x^3 + p x + q` with `4 p^3 + 27 q^2 != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    p: Rational,
    q: Rational,
}

impl WeierstrassCurve {
    pub fn new(p: Rational, q: Rational) -> Result<Self> {
        let disc = rat(4) * &p * &p * &p + rat(27) * &q * &q;
        if disc.is_zero() {
            return Err(Error::Singular(format!(
                "y^2 = x^3 + ({})x + ({}) has 4p^3 + 27q^2 = 0",
                format_rational(&p),
                format_rational(&q)
            )));
        }
        Ok(WeierstrassCurve { p, q })
    }

    pub fn from_ints(p: i64, q: i64) -> Result<Self> {
        Self::new(rat(p), rat(q))
    }

    /// Parses `"p,q"`.
    pub fn parse(s: &str) -> Result<Self> {
        let (p, q) = s.split_once(',').ok_or_else(|| Error::Parse(format!("curve must look like p,q, got {s:?}")))?;
        Self::new(parse_rational(p)?, parse_rational(q)?)
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn contains(&self, pt: &CurvePoint) -> bool {
        match pt {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => y * y == x * x * x + &self.p * x + &self.q,
        }
    }

    pub fn add(&self, a: &CurvePoint, b: &CurvePoint) -> CurvePoint {
        let (x1, y1, x2, y2) = match (a, b) {
            (CurvePoint::Infinity, _) => return b.clone(),
            (_, CurvePoint::Infinity) => return a.clone(),
            (CurvePoint::Affine(x1, y1), CurvePoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return CurvePoint::Infinity;
            }
            (rat(3) * x1 * x1 + &self.p) / (rat(2) * y1)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = &lambda * &lambda - x1 - x2;
        let y3 = &lambda * (x1 - &x3) - y1;
        CurvePoint::Affine(x3, y3)
    }

    pub fn multiple(&self, pt: &CurvePoint, k: u32) -> CurvePoint {
        (0..k).fold(CurvePoint::Infinity, |acc, _| self.add(&acc, pt))
    }

    /// Order of `pt` if it is at most `bound`.
    pub fn order_up_to(&self, pt: &CurvePoint, bound: u32) -> Option<u32> {
        let mut acc = pt.clone();
        for k in 1..=bound {
            if acc == CurvePoint::Infinity {
                return Some(k);
            }
            acc = self.add(&acc, pt);
        }
        None
    }

    pub fn to_strings(&self) -> [String; 2] {
        [format_rational(&self.p), format_rational(&self.q)]
    }
}

impl Serialize for WeierstrassCurve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("WeierstrassCurve", 2)?;
        st.serialize_field("p", &format_rational(&self.p))?;
        st.serialize_field("q", &format_rational(&self.q))?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurvePoint {
    Infinity,
    Affine(Rational, Rational),
}

impl CurvePoint {
    pub fn from_ints(x: i64, y: i64) -> Self {
        CurvePoint::Affine(rat(x), rat(y))
    }

    pub fn neg(&self) -> CurvePoint {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(x.clone(), -y.clone()),
        }
    }

    /// Parses `"x,y"` or `"inf"`.
    pub fn parse(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("inf") {
            return Ok(CurvePoint::Infinity);
        }
        let (x, y) = s.split_once(',').ok_or_else(|| Error::Parse(format!("point must look like x,y, got {s:?}")))?;
        Ok(CurvePoint::Affine(parse_rational(x)?, parse_rational(y)?))
    }
}

impl Serialize for CurvePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CurvePoint::Infinity => s.serialize_str("inf"),
            CurvePoint::Affine(x, y) => [format_rational(x), format_rational(y)].serialize(s),
        }
    }
}

/// A rational point of exact order `order` on a given curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelPoint {
    pub point: CurvePoint,
    pub order: u32,
}

impl KernelPoint {
    pub fn new(curve: &WeierstrassCurve, point: CurvePoint) -> Result<Self> {
        if !curve.contains(&point) {
            return Err(Error::Point("point is not on the curve".into()));
        }
        let order = curve
            .order_up_to(&point, MAX_KERNEL_ORDER)
            .ok_or_else(|| Error::Order(format!("point has infinite order or order above {MAX_KERNEL_ORDER}")))?;
        Ok(KernelPoint { point, order })
    }

    /// Checks a claimed order against the computed one.
    pub fn with_order(curve: &WeierstrassCurve, point: CurvePoint, order: u32) -> Result<Self> {
        let k = Self::new(curve, point)?;
        if k.order != order {
            return Err(Error::Order(format!("claimed order {order}, actual order {}", k.order)));
        }
        Ok(k)
    }
}

pub fn j_weierstrass(e: &WeierstrassCurve) -> Rational {
    let p3 = rat(4) * &e.p * &e.p * &e.p;
    rat(1728) * &p3 / (&p3 + rat(27) * &e.q * &e.q)
}

pub fn quartic_to_weierstrass(m: &HyperellipticModel) -> Result<WeierstrassCurve> {
    let (p, q) = short_model_coefficients(m)?;
    WeierstrassCurve::new(p, q)
}

/// Per-point data `(x_Q, y_Q, g^x_Q, v_Q, u_Q)` for the nonzero kernel points
/// up to sign.
fn velu_data(e: &WeierstrassCurve, k: &KernelPoint) -> Vec<[Rational; 5]> {
    let mut out: Vec<[Rational; 5]> = Vec::new();
    let mut acc = k.point.clone();
    for _ in 1..k.order {
        if let CurvePoint::Affine(x, y) = &acc {
            if !out.iter().any(|d| &d[0] == x) {
                let gx = rat(3) * x * x + &e.p;
                let two_torsion = y.is_zero();
                let v = if two_torsion { gx.clone() } else { rat(2) * &gx };
                let u = rat(4) * y * y;
                out.push([x.clone(), y.clone(), gx, v, u]);
            }
        }
        acc = e.add(&acc, &k.point);
    }
    out
}

/// Vélu's quotient `E/<P>` in short form.
pub fn velu_quotient(e: &WeierstrassCurve, k: &KernelPoint) -> Result<WeierstrassCurve> {
    if !e.contains(&k.point) {
        return Err(Error::Point("kernel point is not on the curve".into()));
    }
    if e.order_up_to(&k.point, MAX_KERNEL_ORDER) != Some(k.order) {
        return Err(Error::Order(format!("kernel point does not have order {}", k.order)));
    }
    let data = velu_data(e, k);
    let v: Rational = data.iter().map(|d| d[3].clone()).sum();
    let w: Rational = data.iter().map(|d| &d[4] + &d[0] * &d[3]).sum();
    WeierstrassCurve::new(&e.p - rat(5) * v, &e.q - rat(7) * w)
}

/// Image of a point under the Vélu isogeny with kernel `<P>`.
pub fn velu_image(e: &WeierstrassCurve, k: &KernelPoint, pt: &CurvePoint) -> Result<CurvePoint> {
    let (x, y) = match pt {
        CurvePoint::Infinity => return Ok(CurvePoint::Infinity),
        CurvePoint::Affine(x, y) => (x, y),
    };
    let data = velu_data(e, k);
    if data.iter().any(|d| &d[0] == x) {
        return Ok(CurvePoint::Infinity);
    }
    let mut big_x = x.clone();
    let mut big_y = y.clone();
    for [xq, yq, gx, v, u] in &data {
        let dx = x - xq;
        let dx2 = &dx * &dx;
        let gy = rat(-2) * yq;
        big_x += v / &dx + u / &dx2;
        big_y -= rat(2) * u * y / (&dx2 * &dx) + v * (y - yq) / &dx2 - gx * &gy / &dx2;
    }
    Ok(CurvePoint::Affine(big_x, big_y))
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityCertificate {
    pub curve_e: WeierstrassCurve,
    pub curve_f: WeierstrassCurve,
    pub d: u32,
    pub quotient_e: WeierstrassCurve,
    pub quotient_f: WeierstrassCurve,
    pub j_e: String,
    pub j_e_quotient: String,
    pub j_f: String,
    pub j_f_quotient: String,
    pub premise_holds: bool,
    /// Weak evidence only: distinct j-invariants rule out isomorphism, not isogeny.
    pub j_e_differs_from_j_f: bool,
    pub nonisogenous_asserted: bool,
    pub conclusion: &'static str,
}

/// Whether `E x F/<(P, Q)>` is certified not isomorphic to its dual: the
/// premise is `E/P ≇ E` or `F/Q ≇ F` (compared by j-invariant), and
/// non-isogeny of `E` and `F` must be asserted by the caller.
pub fn dual_nonisomorphism_check(
    e: &WeierstrassCurve,
    p: &KernelPoint,
    f: &WeierstrassCurve,
    q: &KernelPoint,
    nonisogenous_asserted: bool,
) -> Result<DualityCertificate> {
    if p.order != q.order {
        return Err(Error::Order(format!("orders {} and {} differ", p.order, q.order)));
    }
    if p.order < 2 {
        return Err(Error::Order("kernel points must have order at least 2".into()));
    }
    let ep = velu_quotient(e, p)?;
    let fq = velu_quotient(f, q)?;
    let (je, jep, jf, jfq) = (j_weierstrass(e), j_weierstrass(&ep), j_weierstrass(f), j_weierstrass(&fq));
    let premise_holds = je != jep || jf != jfq;
    let conclusion = if !nonisogenous_asserted {
        "hypothesis-unverified"
    } else if premise_holds {
        "not-isomorphic-to-dual"
    } else {
        "premise-fails"
    };
    Ok(DualityCertificate {
        curve_e: e.clone(),
        curve_f: f.clone(),
        d: p.order,
        quotient_e: ep,
        quotient_f: fq,
        j_e: format_rational(&je),
        j_e_quotient: format_rational(&jep),
        j_f: format_rational(&jf),
        j_f_quotient: format_rational(&jfq),
        premise_holds,
        j_e_differs_from_j_f: je != jf,
        nonisogenous_asserted,
        conclusion,
    })
}
