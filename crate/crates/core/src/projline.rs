//! The projective line over the rationals: points, Möbius maps, cross-ratios
//! and marked five-point configurations.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{format_rational, parse_rational, rat, Rational};
use crate::error::{Error, Result};
use crate::family::{check_domain, FamilyParams};

/// A point `[x:y]`, stored as `[x:1]` or `[1:0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    x: Rational,
    y: Rational,
}

impl ProjectivePoint {
    pub fn new(x: Rational, y: Rational) -> Result<Self> {
        if y.is_zero() {
            if x.is_zero() {
                return Err(Error::DegenerateConfiguration("[0:0] is not a point".into()));
            }
            return Ok(Self::infinity());
        }
        Ok(ProjectivePoint { x: x / &y, y: Rational::one() })
    }

    pub fn finite(x: Rational) -> Self {
        ProjectivePoint { x, y: Rational::one() }
    }

    pub fn from_int(x: i64) -> Self {
        Self::finite(rat(x))
    }

    pub fn infinity() -> Self {
        ProjectivePoint { x: Rational::one(), y: Rational::zero() }
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    /// The affine coordinate, `None` at infinity.
    pub fn affine(&self) -> Option<&Rational> {
        if self.is_infinity() {
            None
        } else {
            Some(&self.x)
        }
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    /// Parses a rational or `inf`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            Ok(Self::infinity())
        } else {
            Ok(Self::finite(parse_rational(s)?))
        }
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.affine() {
            Some(x) => write!(f, "{}", format_rational(x)),
            None => write!(f, "inf"),
        }
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `x_p * y_q - x_q * y_p`; zero iff the points coincide.
fn det(p: &ProjectivePoint, q: &ProjectivePoint) -> Rational {
    &p.x * &q.y - &q.x * &p.y
}

fn require_distinct(points: &[&ProjectivePoint]) -> Result<()> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Err(Error::DegenerateConfiguration(format!("repeated point {}", points[i])));
            }
        }
    }
    Ok(())
}

/// `[x:y] -> [m11 x + m12 y : m21 x + m22 y]`, scaled so that the first
/// nonzero entry of `(m11, m12, m21, m22)` is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MobiusMap {
    m: [Rational; 4],
}

impl MobiusMap {
    pub fn new(m11: Rational, m12: Rational, m21: Rational, m22: Rational) -> Result<Self> {
        if (&m11 * &m22 - &m12 * &m21).is_zero() {
            return Err(Error::DegenerateConfiguration("singular Möbius matrix".into()));
        }
        let mut m = [m11, m12, m21, m22];
        let lead = m.iter().find(|e| !e.is_zero()).cloned().unwrap_or_else(Rational::one);
        for e in m.iter_mut() {
            *e = &*e / &lead;
        }
        Ok(MobiusMap { m })
    }

    pub fn from_ints(m11: i64, m12: i64, m21: i64, m22: i64) -> Result<Self> {
        Self::new(rat(m11), rat(m12), rat(m21), rat(m22))
    }

    pub fn identity() -> Self {
        MobiusMap { m: [Rational::one(), Rational::zero(), Rational::zero(), Rational::one()] }
    }

    pub fn entries(&self) -> &[Rational; 4] {
        &self.m
    }

    pub fn determinant(&self) -> Rational {
        &self.m[0] * &self.m[3] - &self.m[1] * &self.m[2]
    }

    pub fn apply(&self, p: &ProjectivePoint) -> ProjectivePoint {
        let [a, b, c, d] = &self.m;
        let x = a * &p.x + b * &p.y;
        let y = c * &p.x + d * &p.y;
        ProjectivePoint::new(x, y).expect("a nonsingular map sends points to points")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &other.m;
        MobiusMap::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
            .expect("product of nonsingular matrices")
    }

    pub fn inverse(&self) -> MobiusMap {
        let [a, b, c, d] = &self.m;
        MobiusMap::new(d.clone(), -b.clone(), -c.clone(), a.clone()).expect("adjugate of a nonsingular matrix")
    }

    pub fn entry_strings(&self) -> [[String; 2]; 2] {
        let s = |i: usize| format_rational(&self.m[i]);
        [[s(0), s(1)], [s(2), s(3)]]
    }
}

impl Serialize for MobiusMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entry_strings().serialize(s)
    }
}

/// The cross-ratio normalized so that `(0, 1, inf, λ) -> λ`.
pub fn cross_ratio(
    p1: &ProjectivePoint,
    p2: &ProjectivePoint,
    p3: &ProjectivePoint,
    p4: &ProjectivePoint,
) -> Result<ProjectivePoint> {
    require_distinct(&[p1, p2, p3, p4])?;
    ProjectivePoint::new(det(p4, p1) * det(p2, p3), det(p4, p3) * det(p2, p1))
}

/// The map sending `s` to `(0, 1, inf)`.
fn frame_map(s: &[ProjectivePoint; 3]) -> MobiusMap {
    let d23 = det(&s[1], &s[2]);
    let d21 = det(&s[1], &s[0]);
    MobiusMap::new(&d23 * &s[0].y, -(&d23 * &s[0].x), &d21 * &s[2].y, -(&d21 * &s[2].x))
        .expect("three distinct points give a nonsingular frame")
}

/// The unique Möbius map with `src[i] -> dst[i]`.
pub fn mobius_through(src: &[ProjectivePoint; 3], dst: &[ProjectivePoint; 3]) -> Result<MobiusMap> {
    require_distinct(&[&src[0], &src[1], &src[2]])?;
    require_distinct(&[&dst[0], &dst[1], &dst[2]])?;
    Ok(frame_map(dst).inverse().compose(&frame_map(src)))
}

pub fn apply_mobius(m: &MobiusMap, p: &ProjectivePoint) -> ProjectivePoint {
    m.apply(p)
}

/// `[x:y] -> [x^4 + y^4 : x^2 y^2]`, the quotient by `x -> -x`, `x -> 1/x`.
pub fn klein_h_map(p: &ProjectivePoint) -> ProjectivePoint {
    let x2 = &p.x * &p.x;
    let y2 = &p.y * &p.y;
    ProjectivePoint::new(&x2 * &x2 + &y2 * &y2, x2 * y2).expect("x^4 + y^4 vanishes only at 0")
}

/// Which parts of a marked tuple carry an order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MarkingConvention {
    pub pair_ordered: bool,
    pub triple_tail_ordered: bool,
}

impl MarkingConvention {
    pub const ORDERED: Self = MarkingConvention { pair_ordered: true, triple_tail_ordered: true };
    pub const PAIR_UNORDERED: Self = MarkingConvention { pair_ordered: false, triple_tail_ordered: true };
    pub const ALL_UNORDERED: Self = MarkingConvention { pair_ordered: false, triple_tail_ordered: false };

    pub const NAMED: [(&'static str, Self); 3] =
        [("ordered", Self::ORDERED), ("pair-unordered", Self::PAIR_UNORDERED), ("all-unordered", Self::ALL_UNORDERED)];

    pub fn name(&self) -> &'static str {
        match (self.pair_ordered, self.triple_tail_ordered) {
            (true, true) => "ordered",
            (false, true) => "pair-unordered",
            (false, false) => "all-unordered",
            (true, false) => "tail-unordered",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::NAMED
            .iter()
            .find(|(n, _)| *n == s)
            .map(|(_, c)| *c)
            .ok_or_else(|| Error::Argument(format!("unknown convention {s:?}")))
    }
}

impl Default for MarkingConvention {
    fn default() -> Self {
        Self::PAIR_UNORDERED
    }
}

/// Five distinct points: a pair and a triple with one distinguished entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedTuple {
    pair: [ProjectivePoint; 2],
    triple: [ProjectivePoint; 3],
    distinguished: usize,
}

impl MarkedTuple {
    pub fn new(pair: [ProjectivePoint; 2], triple: [ProjectivePoint; 3], distinguished: usize) -> Result<Self> {
        if distinguished > 2 {
            return Err(Error::Argument(format!("distinguished index {distinguished} outside 0..=2")));
        }
        require_distinct(&[&pair[0], &pair[1], &triple[0], &triple[1], &triple[2]])?;
        Ok(MarkedTuple { pair, triple, distinguished })
    }

    pub fn pair(&self) -> &[ProjectivePoint; 2] {
        &self.pair
    }

    pub fn triple(&self) -> &[ProjectivePoint; 3] {
        &self.triple
    }

    pub fn distinguished_index(&self) -> usize {
        self.distinguished
    }

    pub fn distinguished(&self) -> &ProjectivePoint {
        &self.triple[self.distinguished]
    }

    /// The two non-distinguished triple points, in index order.
    pub fn tail(&self) -> [&ProjectivePoint; 2] {
        let mut it = (0..3).filter(|&i| i != self.distinguished).map(|i| &self.triple[i]);
        [it.next().unwrap(), it.next().unwrap()]
    }

    /// Image of every point under `m`; the marking is carried along.
    pub fn push(&self, m: &MobiusMap) -> MarkedTuple {
        MarkedTuple {
            pair: [m.apply(&self.pair[0]), m.apply(&self.pair[1])],
            triple: [m.apply(&self.triple[0]), m.apply(&self.triple[1]), m.apply(&self.triple[2])],
            distinguished: self.distinguished,
        }
    }

    /// Parses `x1,x2;p,q,r!k`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("tuple must look like x1,x2;p,q,r!k, got {s:?}"));
        let (body, k) = s.trim().split_once('!').ok_or_else(bad)?;
        let k: usize = k.trim().parse().map_err(|_| bad())?;
        let (pair, triple) = body.split_once(';').ok_or_else(bad)?;
        let pair = pair.split(',').map(ProjectivePoint::parse).collect::<Result<Vec<_>>>()?;
        let triple = triple.split(',').map(ProjectivePoint::parse).collect::<Result<Vec<_>>>()?;
        let pair: [ProjectivePoint; 2] = pair.try_into().map_err(|_| bad())?;
        let triple: [ProjectivePoint; 3] = triple.try_into().map_err(|_| bad())?;
        Self::new(pair, triple, k)
    }
}

impl fmt::Display for MarkedTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{};{},{},{}!{}",
            self.pair[0], self.pair[1], self.triple[0], self.triple[1], self.triple[2], self.distinguished
        )
    }
}

impl Serialize for MarkedTuple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `([-a], [-b]; inf, 2, -2)` with `inf` distinguished.
pub fn tuple_of_params(params: &FamilyParams) -> MarkedTuple {
    MarkedTuple {
        pair: [ProjectivePoint::finite(-params.a().clone()), ProjectivePoint::finite(-params.b().clone())],
        triple: [ProjectivePoint::infinity(), ProjectivePoint::from_int(2), ProjectivePoint::from_int(-2)],
        distinguished: 0,
    }
}

/// The canonical frame `(inf, 2, -2)` of the triple.
pub fn canonical_frame() -> [ProjectivePoint; 3] {
    [ProjectivePoint::infinity(), ProjectivePoint::from_int(2), ProjectivePoint::from_int(-2)]
}

/// Parameters of a tuple together with the map bringing it to canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Normalization {
    pub params: FamilyParams,
    pub map: MobiusMap,
}

/// All parameter pairs the convention allows for `t`, each with its witness.
///
/// The first entry always uses the tail assignment in index order. With an
/// unordered tail the swapped assignment follows; with an unordered pair the
/// parameters are sorted.
pub fn normalize_tuple(t: &MarkedTuple, conv: MarkingConvention) -> Result<Vec<Normalization>> {
    let [t1, t2] = t.tail();
    let mut assignments = vec![[t1.clone(), t2.clone()]];
    if !conv.triple_tail_ordered {
        assignments.push([t2.clone(), t1.clone()]);
    }
    let mut out: Vec<Normalization> = Vec::new();
    for [u, v] in assignments {
        let src = [t.distinguished().clone(), u, v];
        let map = mobius_through(&src, &canonical_frame())?;
        let coord = |p: &ProjectivePoint| -> Result<Rational> {
            map.apply(p)
                .affine()
                .map(|x| -x.clone())
                .ok_or_else(|| Error::InternalInvariant("pair point sent to the distinguished point".into()))
        };
        let mut a = coord(&t.pair[0])?;
        let mut b = coord(&t.pair[1])?;
        if !conv.pair_ordered && b < a {
            std::mem::swap(&mut a, &mut b);
        }
        let params = check_domain(&a, &b)?;
        if !out.iter().any(|n| n.params == params) {
            out.push(Normalization { params, map });
        }
    }
    Ok(out)
}

/// Whether some Möbius map respecting `conv` sends `t1` to `t2`.
pub fn tuples_equivalent(t1: &MarkedTuple, t2: &MarkedTuple, conv: MarkingConvention) -> Result<bool> {
    let n1 = normalize_tuple(t1, conv)?;
    let n2 = normalize_tuple(t2, conv)?;
    Ok(n1.iter().any(|x| n2.iter().any(|y| x.params == y.params)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;

    fn pt(x: i64) -> ProjectivePoint {
        ProjectivePoint::from_int(x)
    }

    #[test]
    fn cross_ratio_frame() {
        let inf = ProjectivePoint::infinity();
        let lam = ProjectivePoint::finite(ratio(7, 3));
        assert_eq!(cross_ratio(&pt(0), &pt(1), &inf, &lam).unwrap(), lam);
        let m = MobiusMap::from_ints(1, 1, 0, 1).unwrap();
        let moved: Vec<_> = [pt(0), pt(1), inf.clone(), pt(2)].iter().map(|p| m.apply(p)).collect();
        assert_eq!(cross_ratio(&moved[0], &moved[1], &moved[2], &moved[3]).unwrap(), pt(2));
        assert!(matches!(cross_ratio(&pt(0), &pt(0), &inf, &pt(2)), Err(Error::DegenerateConfiguration(_))));
    }

    #[test]
    fn cross_ratio_direct_formula() {
        // (z4 - z1)(z2 - z3) / ((z4 - z3)(z2 - z1)); with z3 = inf this is (z4 - z1)/(z2 - z1)
        let (z1, z2, z4) = (rat(-1), rat(-3), rat(2));
        let expected = (&z4 - &z1) / (&z2 - &z1);
        let inf = ProjectivePoint::infinity();
        let direct = cross_ratio(&pt(-1), &pt(-3), &inf, &pt(2)).unwrap();
        assert_eq!(direct, ProjectivePoint::finite(expected));
        // a double transposition of the arguments leaves the value unchanged
        let permuted = cross_ratio(&pt(-3), &pt(-1), &pt(2), &inf).unwrap();
        assert_eq!(direct, permuted);
    }

    #[test]
    fn mobius_through_affine_example() {
        let inf = ProjectivePoint::infinity();
        let m = mobius_through(&[inf.clone(), pt(-6), pt(-2)], &canonical_frame()).unwrap();
        assert_eq!(m, MobiusMap::from_ints(-1, -4, 0, 1).unwrap());
        let id = mobius_through(&[pt(0), pt(1), inf.clone()], &[pt(0), pt(1), inf]).unwrap();
        assert_eq!(id, MobiusMap::identity());
    }

    #[test]
    fn apply_examples() {
        assert_eq!(MobiusMap::identity().apply(&pt(5)), pt(5));
        let m = MobiusMap::from_ints(4, 16, 0, -4).unwrap();
        assert_eq!(m.apply(&pt(-3)), pt(-1));
        let swap = MobiusMap::from_ints(0, 1, 1, 0).unwrap();
        assert_eq!(swap.apply(&ProjectivePoint::infinity()), pt(0));
    }

    #[test]
    fn h_map_values() {
        assert_eq!(klein_h_map(&ProjectivePoint::infinity()), ProjectivePoint::infinity());
        assert_eq!(klein_h_map(&pt(1)), pt(2));
        let t = ratio(3, 2);
        let expected = &t * &t + (&t * &t).recip();
        assert_eq!(klein_h_map(&ProjectivePoint::finite(t)), ProjectivePoint::finite(expected));
    }

    #[test]
    fn tuple_text_round_trip() {
        let t = MarkedTuple::parse("-3,-5;inf,2,-2!0").unwrap();
        assert_eq!(t.to_string(), "-3,-5;inf,2,-2!0");
        assert!(matches!(MarkedTuple::parse("1,1;inf,2,-2!0"), Err(Error::DegenerateConfiguration(_))));
        assert!(MarkedTuple::parse("1,3;inf,2,-2!3").is_err());
        assert!(MarkedTuple::parse("1,3;inf,2").is_err());
    }

    #[test]
    fn canonical_tuple_normalizes_to_identity() {
        let p = check_domain(&rat(3), &rat(5)).unwrap();
        let t = tuple_of_params(&p);
        assert_eq!(t.to_string(), "-3,-5;inf,2,-2!0");
        let n = normalize_tuple(&t, MarkingConvention::ORDERED).unwrap();
        assert_eq!(n.len(), 1);
        assert_eq!(n[0].params, p);
        assert_eq!(n[0].map, MobiusMap::identity());
    }

    #[test]
    fn unordered_tail_gives_negated_pair() {
        let p = check_domain(&rat(0), &rat(1)).unwrap();
        let n = normalize_tuple(&tuple_of_params(&p), MarkingConvention::ALL_UNORDERED).unwrap();
        let got: Vec<_> = n.iter().map(|n| n.params.clone()).collect();
        assert_eq!(got, vec![p, check_domain(&rat(-1), &rat(0)).unwrap()]);
    }

    #[test]
    fn inequivalent_under_ordered_convention() {
        let t1 = tuple_of_params(&check_domain(&rat(0), &rat(1)).unwrap());
        let t2 = tuple_of_params(&check_domain(&rat(-6), &rat(-10)).unwrap());
        assert!(!tuples_equivalent(&t1, &t2, MarkingConvention::ORDERED).unwrap());
        assert!(tuples_equivalent(&t1, &t1, MarkingConvention::ORDERED).unwrap());
        let m = MobiusMap::from_ints(2, 1, 1, 1).unwrap();
        assert!(tuples_equivalent(&t1, &t1.push(&m), MarkingConvention::ORDERED).unwrap());
    }
}
