//! Finite symplectic calculus on `(Q/Z)^4`, the torsion of a product of two
//! elliptic curves with coordinates ordered `(e_E, f_E, e_F, f_F)`.
//!
//! Groups are enumerated outright. Levels are capped at [`MAX_LEVEL`], which
//! keeps the full level-`N` torsion below 21 000 elements.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::algebra::{format_rational, Rational};
use crate::error::{Error, Result};

pub const MAX_LEVEL: u32 = 12;

pub type Coords = [u32; 4];

/// A point of `(1/N Z / Z)^4`, stored as residues mod `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionPoint {
    level: u32,
    c: Coords,
}

impl TorsionPoint {
    pub fn new(level: u32, c: [i64; 4]) -> Result<Self> {
        if level == 0 {
            return Err(Error::Level("level must be positive".into()));
        }
        let n = level as i64;
        Ok(TorsionPoint { level, c: c.map(|x| x.rem_euclid(n) as u32) })
    }

    pub fn zero(level: u32) -> Self {
        TorsionPoint { level, c: [0; 4] }
    }

    /// From coordinates in `Q`, all of whose denominators divide `level`.
    pub fn from_rationals(level: u32, c: &[Rational; 4]) -> Result<Self> {
        let n = Rational::from_integer(level.into());
        let mut out = [0i64; 4];
        for (o, x) in out.iter_mut().zip(c) {
            let scaled = x * &n;
            if !scaled.is_integer() {
                return Err(Error::Level(format!(
                    "coordinate {} has denominator not dividing {level}",
                    format_rational(x)
                )));
            }
            *o = scaled.to_integer().try_into().map_err(|_| Error::Level("coordinate out of range".into()))?;
        }
        Self::new(level, out)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn residues(&self) -> Coords {
        self.c
    }

    pub fn coords(&self) -> [Rational; 4] {
        self.c.map(|x| Rational::new(x.into(), self.level.into()))
    }

    pub fn is_zero(&self) -> bool {
        self.c == [0; 4]
    }

    fn check_level(&self, other: &Self) -> Result<()> {
        if self.level != other.level {
            return Err(Error::Level(format!("levels {} and {} differ", self.level, other.level)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        Ok(self.add_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let n = self.level;
        let c = std::array::from_fn(|i| (self.c[i] + other.c[i]) % n);
        TorsionPoint { level: n, c }
    }

    pub fn neg(&self) -> Self {
        let n = self.level;
        TorsionPoint { level: n, c: self.c.map(|x| (n - x) % n) }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        let n = self.level as i64;
        TorsionPoint { level: self.level, c: self.c.map(|x| (x as i64 * k).rem_euclid(n) as u32) }
    }

    /// Additive order.
    pub fn order(&self) -> u32 {
        (1..=self.level).find(|&k| self.scale(k as i64).is_zero()).unwrap_or(self.level)
    }

    /// The same point seen at a multiple of its level.
    pub fn lift(&self, new_level: u32) -> Result<Self> {
        if new_level == 0 || new_level % self.level != 0 {
            return Err(Error::Level(format!("{new_level} is not a multiple of {}", self.level)));
        }
        let k = new_level / self.level;
        Ok(TorsionPoint { level: new_level, c: self.c.map(|x| x * k) })
    }

    pub fn to_strings(&self) -> [String; 4] {
        self.coords().map(|x| format_rational(&x))
    }
}

impl fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(","))
    }
}

impl Serialize for TorsionPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// `x1 y2 - x2 y1 + x3 y4 - x4 y3`, read in `(1/N)Z / Z` and returned in `[0, 1)`.
pub fn weil_pairing(x: &TorsionPoint, y: &TorsionPoint) -> Result<Rational> {
    x.check_level(y)?;
    let n = x.level;
    Ok(Rational::new(pairing_residue(n, &x.c, &y.c).into(), n.into()))
}

fn pairing_residue(n: u32, x: &Coords, y: &Coords) -> u32 {
    let n = n as i64;
    let [x1, x2, x3, x4] = x.map(i64::from);
    let [y1, y2, y3, y4] = y.map(i64::from);
    (x1 * y2 - x2 * y1 + x3 * y4 - x4 * y3).rem_euclid(n) as u32
}

fn check_cap(level: u32) -> Result<()> {
    if level == 0 || level > MAX_LEVEL {
        return Err(Error::Level(format!("level {level} outside 1..={MAX_LEVEL}")));
    }
    Ok(())
}

/// A finite subgroup of level-`N` torsion, stored as its sorted element set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionSubgroup {
    level: u32,
    generators: Vec<TorsionPoint>,
    elements: BTreeSet<Coords>,
}

impl TorsionSubgroup {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[TorsionPoint] {
        &self.generators
    }

    pub fn contains(&self, p: &TorsionPoint) -> bool {
        p.level == self.level && self.elements.contains(&p.c)
    }

    pub fn elements(&self) -> impl Iterator<Item = TorsionPoint> + '_ {
        self.elements.iter().map(move |&c| TorsionPoint { level: self.level, c })
    }

    pub fn is_subgroup_of(&self, other: &TorsionSubgroup) -> bool {
        self.level == other.level && self.elements.is_subset(&other.elements)
    }

    pub fn is_isotropic(&self) -> bool {
        self.generators.iter().all(|x| self.generators.iter().all(|y| pairing_residue(self.level, &x.c, &y.c) == 0))
    }

    pub fn intersection(&self, other: &TorsionSubgroup) -> Result<TorsionSubgroup> {
        if self.level != other.level {
            return Err(Error::Level("intersection across levels".into()));
        }
        let elements: BTreeSet<Coords> = self.elements.intersection(&other.elements).copied().collect();
        Ok(Self::from_elements(self.level, elements))
    }

    fn from_elements(level: u32, elements: BTreeSet<Coords>) -> TorsionSubgroup {
        let generators = minimal_generators(level, &elements);
        TorsionSubgroup { level, generators, elements }
    }

    /// The same subgroup inside the torsion of a multiple level.
    pub fn lift(&self, new_level: u32) -> Result<TorsionSubgroup> {
        let lift = |c: &Coords| TorsionPoint { level: self.level, c: *c }.lift(new_level).map(|p| p.c);
        Ok(TorsionSubgroup {
            level: new_level,
            generators: self.generators.iter().map(|g| g.lift(new_level)).collect::<Result<_>>()?,
            elements: self.elements.iter().map(lift).collect::<Result<_>>()?,
        })
    }

    /// Whether some element has order equal to the group order.
    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.elements().any(|p| p.order() as usize == n)
    }

    /// `|proj_E(H)| / |H ∩ (E x 0)|`.
    pub fn factor_intersection_order(&self) -> usize {
        let proj: BTreeSet<[u32; 2]> = self.elements.iter().map(|c| [c[0], c[1]]).collect();
        let on_e = self.elements.iter().filter(|c| c[2] == 0 && c[3] == 0).count();
        proj.len() / on_e
    }

    pub fn element_strings(&self) -> Vec<[String; 4]> {
        self.elements().map(|p| p.to_strings()).collect()
    }
}

impl Serialize for TorsionSubgroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TorsionSubgroup", 4)?;
        st.serialize_field("level", &self.level)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("generators", &self.generators)?;
        st.serialize_field("elements", &self.element_strings())?;
        st.end()
    }
}

/// Greedy generating set: repeatedly add the least element not yet spanned.
fn minimal_generators(level: u32, elements: &BTreeSet<Coords>) -> Vec<TorsionPoint> {
    let mut gens = Vec::new();
    let mut spanned: BTreeSet<Coords> = BTreeSet::from([[0; 4]]);
    for &c in elements {
        if !spanned.contains(&c) {
            gens.push(TorsionPoint { level, c });
            spanned = closure(level, &gens);
        }
    }
    gens
}

fn closure(level: u32, gens: &[TorsionPoint]) -> BTreeSet<Coords> {
    let zero = TorsionPoint::zero(level);
    let mut seen = BTreeSet::from([zero.c]);
    let mut queue = VecDeque::from([zero]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = p.add_unchecked(g);
            if seen.insert(q.c) {
                queue.push_back(q);
            }
        }
    }
    seen
}

/// The subgroup generated by `gens`, all of level `level`.
pub fn span_at(level: u32, gens: &[TorsionPoint]) -> Result<TorsionSubgroup> {
    check_cap(level)?;
    if let Some(g) = gens.iter().find(|g| g.level != level) {
        return Err(Error::Level(format!("generator {g} has level {}, expected {level}", g.level)));
    }
    Ok(TorsionSubgroup { level, generators: gens.to_vec(), elements: closure(level, gens) })
}

/// The subgroup generated by a nonempty list of points of one level.
pub fn span(gens: &[TorsionPoint]) -> Result<TorsionSubgroup> {
    let level = gens.first().ok_or_else(|| Error::Level("cannot infer the level of an empty span".into()))?.level;
    span_at(level, gens)
}

pub fn full_group(level: u32) -> Result<TorsionSubgroup> {
    check_cap(level)?;
    let gens: Vec<_> = (0..4)
        .map(|i| {
            let mut c = [0i64; 4];
            c[i] = 1;
            pt(level, c)
        })
        .collect();
    span_at(level, &gens)
}

fn all_coords(level: u32) -> impl Iterator<Item = Coords> {
    (0..level).flat_map(move |a| {
        (0..level).flat_map(move |b| (0..level).flat_map(move |c| (0..level).map(move |d| [a, b, c, d])))
    })
}

/// The symplectic complement inside the full level-`N` torsion.
pub fn perp(s: &TorsionSubgroup) -> Result<TorsionSubgroup> {
    let n = s.level;
    check_cap(n)?;
    let elements: BTreeSet<Coords> =
        all_coords(n).filter(|v| s.generators.iter().all(|g| pairing_residue(n, v, &g.c) == 0)).collect();
    Ok(TorsionSubgroup::from_elements(n, elements))
}

/// A subgroup of a quotient `(level-N torsion)/K`, each class stored by its
/// lexicographically least representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetGroup {
    modulus: TorsionSubgroup,
    reps: BTreeSet<Coords>,
}

impl CosetGroup {
    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn level(&self) -> u32 {
        self.modulus.level
    }

    pub fn modulus(&self) -> &TorsionSubgroup {
        &self.modulus
    }

    pub fn representatives(&self) -> impl Iterator<Item = TorsionPoint> + '_ {
        let level = self.modulus.level;
        self.reps.iter().map(move |&c| TorsionPoint { level, c })
    }

    pub fn contains_class_of(&self, p: &TorsionPoint) -> bool {
        p.level == self.modulus.level && self.reps.contains(&canonical_rep(&self.modulus, p).c)
    }

    /// The set of classes of `points`, compared as a set with this group.
    pub fn equals_classes_of(&self, points: &[TorsionPoint]) -> bool {
        let other: BTreeSet<Coords> = points.iter().map(|p| canonical_rep(&self.modulus, p).c).collect();
        other == self.reps
    }

    /// Order of the class of `p` in the quotient.
    pub fn class_order(&self, p: &TorsionPoint) -> u32 {
        (1..=p.level).find(|&k| self.modulus.contains(&p.scale(k as i64))).unwrap_or(p.level)
    }

    pub fn representative_strings(&self) -> Vec<[String; 4]> {
        self.representatives().map(|p| p.to_strings()).collect()
    }
}

impl Serialize for CosetGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CosetGroup", 4)?;
        st.serialize_field("level", &self.level())?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("modulo", &self.modulus.generators)?;
        st.serialize_field("representatives", &self.representative_strings())?;
        st.end()
    }
}

/// The least element of `p + K`.
pub fn canonical_rep(k: &TorsionSubgroup, p: &TorsionPoint) -> TorsionPoint {
    k.elements().map(|x| p.add_unchecked(&x)).min().unwrap_or(*p)
}

/// The image of `(ker mu)^perp` in the quotient by `ker mu`.
pub fn ker_phi_h(kernel_mu: &TorsionSubgroup) -> Result<CosetGroup> {
    if !kernel_mu.is_isotropic() {
        return Err(Error::NotIsotropic(format!(
            "generators {:?} pair nontrivially",
            kernel_mu.generators.iter().map(ToString::to_string).collect::<Vec<_>>()
        )));
    }
    let complement = perp(kernel_mu)?;
    let reps = complement.elements().map(|p| canonical_rep(kernel_mu, &p).c).collect();
    Ok(CosetGroup { modulus: kernel_mu.clone(), reps })
}

fn pt(level: u32, c: [i64; 4]) -> TorsionPoint {
    TorsionPoint::new(level, c).expect("positive level")
}

/// `P = (1/d, 0, 0, 0)` and `Q = (0, 0, 1/d, 0)` at level `d`.
pub fn standard_points(d: u32) -> (TorsionPoint, TorsionPoint) {
    (pt(d, [1, 0, 0, 0]), pt(d, [0, 0, 1, 0]))
}

fn check_d(d: u32) -> Result<()> {
    if !(2..=8).contains(&d) {
        return Err(Error::Argument(format!("d = {d} outside 2..=8")));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionReport {
    pub d: u32,
    pub ker_mu: TorsionSubgroup,
    pub ker_phi_h: CosetGroup,
    pub ker_phi_h_order_is_d_squared: bool,
    pub e_cap_ker_phi_h: TorsionSubgroup,
    pub f_cap_ker_phi_h: TorsionSubgroup,
    pub e_cap_is_generated_by_p: bool,
    pub f_cap_is_generated_by_q: bool,
}

/// The factor intersections of `ker phi_H` for `A = (E x F)/<(P, Q)>`.
pub fn factor_intersections(d: u32) -> Result<IntersectionReport> {
    check_d(d)?;
    let (p, q) = standard_points(d);
    let k = span(&[p.add(&q)?])?;
    let kp = ker_phi_h(&k)?;
    // (E x 0) meets K trivially, so a point of E lies in ker phi_H iff it lies in K^perp.
    let complement = perp(&k)?;
    let e_factor = span(&[pt(d, [1, 0, 0, 0]), pt(d, [0, 1, 0, 0])])?;
    let f_factor = span(&[pt(d, [0, 0, 1, 0]), pt(d, [0, 0, 0, 1])])?;
    let e_cap = complement.intersection(&e_factor)?;
    let f_cap = complement.intersection(&f_factor)?;
    Ok(IntersectionReport {
        d,
        ker_phi_h_order_is_d_squared: kp.order() == (d * d) as usize,
        e_cap_is_generated_by_p: e_cap.same_elements(&span(&[p])?),
        f_cap_is_generated_by_q: f_cap.same_elements(&span(&[q])?),
        ker_mu: k,
        ker_phi_h: kp,
        e_cap_ker_phi_h: e_cap,
        f_cap_ker_phi_h: f_cap,
    })
}

impl TorsionSubgroup {
    pub fn same_elements(&self, other: &TorsionSubgroup) -> bool {
        self.level == other.level && self.elements == other.elements
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub d: u32,
    pub working_level: u32,
    pub ker_mu: TorsionSubgroup,
    /// Kernel over `E x F` of `A -> A/<P>`.
    pub quotient_by_p_kernel: TorsionSubgroup,
    pub quotient_by_p_kernel_is_product: bool,
    pub ker_phi_h_order: usize,
    /// `ker phi_H / <P>`, as classes modulo the kernel above.
    pub g: CosetGroup,
    pub g_order: usize,
    pub g_is_cyclic: bool,
    pub g_generator: TorsionPoint,
    pub g_generator_order: u32,
    /// `G` in the coordinates of `E' x F' = E/<P> x F/<Q>`.
    pub dual_kernel: TorsionSubgroup,
    pub a_factor_intersection_order: usize,
    pub dual_factor_intersection_order: usize,
    pub a_e_cap_ker_phi_order: usize,
    pub dual_e_cap_ker_phi_order: usize,
    /// The groups above viewed inside the level `d^2` torsion.
    pub lifted_ker_mu: TorsionSubgroup,
    pub lifted_quotient_by_p_kernel: TorsionSubgroup,
}

/// `A = (E x F)/<(P, Q)>`, `A/P = E' x F'`, and the dual `E' x F'/G` with
/// `G = <(P', -Q')>`.
///
/// Every group in the chain is `d`-torsion, so the enumeration runs at level
/// `d`; the two kernels over `E x F` are also reported inside level `d^2`.
pub fn duality_chain(d: u32) -> Result<DualityReport> {
    check_d(d)?;
    let (p, q) = standard_points(d);
    let pq = p.add(&q)?;
    let k = span(&[pq])?;
    let k1 = span(&[pq, p])?;
    let product = span(&[p, q])?;
    let complement = perp(&k)?;
    let kp = ker_phi_h(&k)?;

    let reps: BTreeSet<Coords> = complement.elements().map(|x| canonical_rep(&k1, &x).c).collect();
    let g = CosetGroup { modulus: k1.clone(), reps };
    let generator = pt(d, [0, 1, 0, -1]);
    let g_generator_order = g.class_order(&generator);

    // E' = E/<P> has lattice basis (e/d, f): the e-coordinate is multiplied by d.
    let rescale = |x: &TorsionPoint| {
        let c = x.residues();
        pt(d, [0, c[1] as i64, 0, c[3] as i64])
    };
    let dual_gens: Vec<_> = complement.elements().map(|x| rescale(&x)).collect();
    let dual_kernel = span(&dual_gens)?;
    let dual_kernel = TorsionSubgroup::from_elements(d, dual_kernel.elements.clone());

    let e_factor = span(&[pt(d, [1, 0, 0, 0]), pt(d, [0, 1, 0, 0])])?;
    let a_e_cap = complement.intersection(&e_factor)?.order();
    let dual_e_cap = perp(&dual_kernel)?.intersection(&e_factor)?.order();

    Ok(DualityReport {
        d,
        working_level: d * d,
        quotient_by_p_kernel_is_product: k1.same_elements(&product),
        ker_phi_h_order: kp.order(),
        g_order: g.order(),
        g_is_cyclic: g.order() as u32 == g_generator_order,
        g_generator: generator,
        g_generator_order,
        a_factor_intersection_order: k.factor_intersection_order(),
        dual_factor_intersection_order: dual_kernel.factor_intersection_order(),
        a_e_cap_ker_phi_order: a_e_cap,
        dual_e_cap_ker_phi_order: dual_e_cap,
        lifted_ker_mu: k.lift(d * d)?,
        lifted_quotient_by_p_kernel: k1.lift(d * d)?,
        ker_mu: k,
        quotient_by_p_kernel: k1,
        g,
        dual_kernel,
    })
}

/// `alpha = ((0, -1), (1, 0))` acting on `(Q/Z)^2`.
pub fn alpha(x: [i64; 2]) -> [i64; 2] {
    [-x[1], x[0]]
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedClass {
    pub name: &'static str,
    pub point: TorsionPoint,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientKernel {
    pub divided_by: &'static str,
    pub kernel_over_product: TorsionSubgroup,
    pub expected: &'static str,
    pub matches_expected: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AutomorphismExampleReport {
    pub e: [String; 2],
    pub f: [String; 2],
    pub alpha_fixes_e: bool,
    pub alpha_sends_f_to_e_plus_f: bool,
    pub alpha_sends_e_plus_f_to_f: bool,
    pub ker_mu: TorsionSubgroup,
    pub factor_images_meet_in: Vec<[String; 4]>,
    pub factor_images_meet_as_expected: bool,
    pub diagonal_meets_antidiagonal_in: Vec<[String; 4]>,
    pub diagonal_intersection_as_expected: bool,
    pub alpha_graph_meets_minus_alpha_graph_in: Vec<[String; 4]>,
    pub alpha_graph_intersection_as_expected: bool,
    pub ker_phi_a: CosetGroup,
    pub ker_phi_a_named: Vec<NamedClass>,
    pub ker_phi_a_matches_list: bool,
    pub quotient_kernels: Vec<QuotientKernel>,
}

/// `mu(X) ∩ mu(Y)` for two graphs `{(A s, B s)}` inside `E x E`, where the
/// graph maps are invertible endomorphisms and `K` is 2-torsion. A common
/// point forces `s` into `E[4]`, so the search runs at level 4. Returns the
/// classes modulo `K` as level-4 representatives.
fn graph_intersection(
    k: &TorsionSubgroup,
    g1: impl Fn([i64; 2]) -> [i64; 4],
    g2: impl Fn([i64; 2]) -> [i64; 4],
) -> Result<BTreeSet<Coords>> {
    let k4 = k.lift(4)?;
    let torsion: Vec<[i64; 2]> = (0..4).flat_map(|a| (0..4).map(move |b| [a, b])).collect();
    let mut out = BTreeSet::new();
    for &s in &torsion {
        let x = pt(4, g1(s));
        for &t in &torsion {
            if k4.contains(&x.sub(&pt(4, g2(t)))?) {
                out.insert(canonical_rep(&k4, &x).c);
            }
        }
    }
    Ok(out)
}

fn coset_strings(reps: &BTreeSet<Coords>, level: u32) -> Vec<[String; 4]> {
    reps.iter().map(|&c| TorsionPoint { level, c }.to_strings()).collect()
}

fn classes_at_level_4(k: &TorsionSubgroup, points: &[TorsionPoint]) -> Result<BTreeSet<Coords>> {
    let k4 = k.lift(4)?;
    points.iter().map(|p| Ok(canonical_rep(&k4, &p.lift(4)?).c)).collect()
}

/// The order-4 automorphism example on `E x E` with `E: y^2 = x^3 + x`.
pub fn automorphism_example_report() -> Result<AutomorphismExampleReport> {
    let e = [1i64, 1];
    let f = [1i64, 0];
    let add2 = |u: [i64; 2], v: [i64; 2]| [u[0] + v[0], u[1] + v[1]];
    let eq2 = |u: [i64; 2], v: [i64; 2]| (u[0] - v[0]).rem_euclid(2) == 0 && (u[1] - v[1]).rem_euclid(2) == 0;
    let ef = add2(e, f);
    let pair = |u: [i64; 2], v: [i64; 2]| pt(2, [u[0], u[1], v[0], v[1]]);
    let o = [0, 0];

    let k = span(&[pair(e, e)])?;
    let kp = ker_phi_h(&k)?;
    let named = vec![
        NamedClass { name: "0", point: pair(o, o) },
        NamedClass { name: "mu(e1)", point: pair(e, o) },
        NamedClass { name: "mu(f1,f2)", point: pair(f, f) },
        NamedClass { name: "mu(e1+f1,f2)", point: pair(ef, f) },
    ];
    let named_points: Vec<_> = named.iter().map(|n| n.point).collect();
    let ker_phi_a_matches_list = kp.equals_classes_of(&named_points);

    // graphs at level 4: a level-2 coordinate u corresponds to 2u
    let x4 = |s: [i64; 2], t: [i64; 2]| [s[0], s[1], t[0], t[1]];
    let neg = |s: [i64; 2]| [-s[0], -s[1]];
    let factors = graph_intersection(&k, |s| x4(s, o), |s| x4(o, s))?;
    let diag = graph_intersection(&k, |s| x4(s, s), |s| x4(s, neg(s)))?;
    let alph = graph_intersection(&k, |s| x4(s, alpha(s)), |s| x4(s, neg(alpha(s))))?;

    let kernel = |gens: &[TorsionPoint]| span(gens);
    let quotient_kernels = vec![
        QuotientKernel {
            divided_by: "mu(e1)",
            kernel_over_product: kernel(&[pair(e, e), pair(e, o)])?,
            expected: "<(e1,0),(0,e2)>",
            matches_expected: kernel(&[pair(e, e), pair(e, o)])?.same_elements(&kernel(&[pair(e, o), pair(o, e)])?),
        },
        QuotientKernel {
            divided_by: "mu(f1,f2)",
            kernel_over_product: kernel(&[pair(e, e), pair(f, f)])?,
            expected: "E_Delta[2]",
            matches_expected: kernel(&[pair(e, e), pair(f, f)])?.same_elements(&kernel(&[
                pair(e, e),
                pair(f, f),
                pair(ef, ef),
            ])?),
        },
        QuotientKernel {
            divided_by: "mu(e1+f1,f2)",
            kernel_over_product: kernel(&[pair(e, e), pair(ef, f)])?,
            expected: "E_alpha[2]",
            matches_expected: {
                let graph: Vec<_> = [e, f, ef].iter().map(|&s| pair(s, alpha(s))).collect();
                kernel(&[pair(e, e), pair(ef, f)])?.same_elements(&kernel(&graph)?)
            },
        },
    ];

    Ok(AutomorphismExampleReport {
        e: ["1/2".into(), "1/2".into()],
        f: ["1/2".into(), "0".into()],
        alpha_fixes_e: eq2(alpha(e), e),
        alpha_sends_f_to_e_plus_f: eq2(alpha(f), ef),
        alpha_sends_e_plus_f_to_f: eq2(alpha(ef), f),
        factor_images_meet_as_expected: factors == classes_at_level_4(&k, &[pair(o, o), pair(e, o)])?,
        diagonal_intersection_as_expected: diag == classes_at_level_4(&k, &[pair(o, o), pair(f, f)])?,
        alpha_graph_intersection_as_expected: alph == classes_at_level_4(&k, &[pair(o, o), pair(ef, f)])?,
        factor_images_meet_in: coset_strings(&factors, 4),
        diagonal_meets_antidiagonal_in: coset_strings(&diag, 4),
        alpha_graph_meets_minus_alpha_graph_in: coset_strings(&alph, 4),
        ker_mu: k,
        ker_phi_a: kp,
        ker_phi_a_named: named,
        ker_phi_a_matches_list,
        quotient_kernels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    #[test]
    fn pairing_values() {
        let x = pt(2, [1, 0, 0, 0]);
        let y = pt(2, [0, 1, 0, 0]);
        assert_eq!(weil_pairing(&x, &y).unwrap(), ratio(1, 2));
        assert_eq!(weil_pairing(&x, &x).unwrap(), rat(0));
        let a = pt(3, [1, 0, 1, 0]);
        let b = pt(3, [0, 1, 0, -1]);
        assert_eq!(weil_pairing(&a, &b).unwrap(), rat(0));
        assert!(matches!(weil_pairing(&x, &a), Err(Error::Level(_))));
    }

    #[test]
    fn span_orders() {
        assert_eq!(span(&[pt(2, [1, 0, 1, 0])]).unwrap().order(), 2);
        assert_eq!(span(&[pt(3, [1, 0, 1, 0])]).unwrap().order(), 3);
        assert_eq!(span(&[pt(2, [1, 0, 0, 0]), pt(2, [0, 0, 1, 0])]).unwrap().order(), 4);
        assert!(span(&[pt(13, [1, 0, 0, 0])]).is_err());
    }

    #[test]
    fn perp_brute_force() {
        let s = span(&[pt(2, [1, 0, 1, 0])]).unwrap();
        let c = perp(&s).unwrap();
        assert_eq!(c.order(), 8);
        // oracle: v2 + v4 even
        for v in all_coords(2) {
            assert_eq!(c.contains(&TorsionPoint { level: 2, c: v }), (v[1] + v[3]) % 2 == 0);
        }
        assert_eq!(perp(&full_group(3).unwrap()).unwrap().order(), 1);
    }

    #[test]
    fn ker_phi_h_at_two() {
        let k = span(&[pt(2, [1, 0, 1, 0])]).unwrap();
        let kp = ker_phi_h(&k).unwrap();
        assert_eq!(kp.order(), 4);
        let listed = [pt(2, [0, 0, 0, 0]), pt(2, [1, 0, 0, 0]), pt(2, [0, 1, 0, 1]), pt(2, [1, 1, 0, 1])];
        assert!(kp.equals_classes_of(&listed));
        let bad = span(&[pt(2, [1, 0, 0, 0]), pt(2, [0, 1, 0, 0])]).unwrap();
        assert!(matches!(ker_phi_h(&bad), Err(Error::NotIsotropic(_))));
    }

    #[test]
    fn intersections_and_duality() {
        for d in 2..=8 {
            let r = factor_intersections(d).unwrap();
            assert!(
                r.ker_phi_h_order_is_d_squared && r.e_cap_is_generated_by_p && r.f_cap_is_generated_by_q,
                "d = {d}"
            );
        }
        for d in 2..=6 {
            let r = duality_chain(d).unwrap();
            assert!(r.quotient_by_p_kernel_is_product);
            assert_eq!(r.g_order, d as usize);
            assert!(r.g_is_cyclic);
            assert_eq!(r.a_factor_intersection_order, d as usize);
            assert_eq!(r.dual_factor_intersection_order, d as usize);
            assert_eq!(r.dual_e_cap_ker_phi_order, d as usize);
        }
        assert!(duality_chain(9).is_err());
    }

    #[test]
    fn order_four_automorphism_example() {
        let r = automorphism_example_report().unwrap();
        assert!(r.alpha_fixes_e && r.alpha_sends_f_to_e_plus_f && r.alpha_sends_e_plus_f_to_f);
        assert!(r.ker_phi_a_matches_list);
        assert_eq!(r.ker_phi_a.order(), 4);
        assert!(r.factor_images_meet_as_expected);
        assert!(r.diagonal_intersection_as_expected);
        assert!(r.alpha_graph_intersection_as_expected);
        assert!(r.quotient_kernels.iter().all(|q| q.matches_expected));
    }
}
