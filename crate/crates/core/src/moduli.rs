//! The deck involution on the parameter space and its fiber invariants.

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{format_rational, rat, Rational};
use crate::error::{Error, Result};
use crate::family::{check_domain, curve_equation, j_invariant, CurveLabel, FamilyParams};
use crate::projline::{
    canonical_frame, normalize_tuple, tuple_of_params, tuples_equivalent, MarkedTuple, MarkingConvention, MobiusMap,
    ProjectivePoint,
};

/// `((2b - 2a - 8)/(a + b), (2a - 2b - 8)/(a + b))`.
pub fn phi_params(params: &FamilyParams) -> Result<FamilyParams> {
    let (a, b) = (params.a(), params.b());
    let s = a + b;
    if s.is_zero() {
        return Err(Error::PhiUndefined);
    }
    let a2 = (rat(2) * b - rat(2) * a - rat(8)) / &s;
    let b2 = (rat(2) * a - rat(2) * b - rat(8)) / &s;
    check_domain(&a2, &b2).map_err(|e| Error::InternalInvariant(format!("involution left the domain at {params}: {e}")))
}

fn canonical_params(t: &MarkedTuple) -> Result<(Rational, Rational)> {
    let not_canonical = || Error::Argument(format!("tuple {t} is not in the canonical frame"));
    if t.triple() != &canonical_frame() || t.distinguished_index() != 0 {
        return Err(not_canonical());
    }
    let a = t.pair()[0].affine().ok_or_else(not_canonical)?;
    let b = t.pair()[1].affine().ok_or_else(not_canonical)?;
    Ok((-a.clone(), -b.clone()))
}

/// `([-b], [-a]; inf, [-2 - a - b], [-2])`, before any renormalization.
pub fn phi_tuple_raw(t: &MarkedTuple) -> Result<MarkedTuple> {
    let (a, b) = canonical_params(t)?;
    MarkedTuple::new(
        [ProjectivePoint::finite(-b.clone()), ProjectivePoint::finite(-a.clone())],
        [ProjectivePoint::infinity(), ProjectivePoint::finite(rat(-2) - &a - &b), ProjectivePoint::from_int(-2)],
        0,
    )
}

/// `((4, 8 + 2a + 2b), (0, -a - b))`, the frame change accompanying the raw
/// tuple form.
pub fn frame_matrix(params: &FamilyParams) -> Result<MobiusMap> {
    let (a, b) = (params.a(), params.b());
    MobiusMap::new(rat(4), rat(8) + rat(2) * a + rat(2) * b, rat(0), -(a + b)).map_err(|_| Error::PhiUndefined)
}

fn sorted_pair(x: Rational, y: Rational) -> [Rational; 2] {
    if y < x {
        [y, x]
    } else {
        [x, y]
    }
}

/// Unordered j-pairs `{j(E_t), j(E_st)}` and `{j(E_is_t), j(E_is_it)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrymFiberInvariants {
    pub j_pair_top: [Rational; 2],
    pub j_pair_bottom: [Rational; 2],
}

impl Serialize for PrymFiberInvariants {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PrymFiberInvariants", 2)?;
        st.serialize_field("j_pair_top", &self.j_pair_top.iter().map(format_rational).collect::<Vec<_>>())?;
        st.serialize_field("j_pair_bottom", &self.j_pair_bottom.iter().map(format_rational).collect::<Vec<_>>())?;
        st.end()
    }
}

pub fn j_of(label: CurveLabel, params: &FamilyParams) -> Result<Rational> {
    j_invariant(&curve_equation(label, params)?)
}

pub fn prym_fiber_invariants(params: &FamilyParams) -> Result<PrymFiberInvariants> {
    Ok(PrymFiberInvariants {
        j_pair_top: sorted_pair(j_of(CurveLabel::ET, params)?, j_of(CurveLabel::ESt, params)?),
        j_pair_bottom: sorted_pair(j_of(CurveLabel::EIsT, params)?, j_of(CurveLabel::EIsIt, params)?),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConventionOutcome {
    pub convention: &'static str,
    /// Parameters of the raw tuple form after normalization.
    pub tuple_form_params: Vec<FamilyParams>,
    /// Whether the tuple of `params` is equivalent to the tuple of `phi(params)`.
    pub equivalent_to_image: bool,
    /// Whether the tuple of `params` is equivalent to the tuple of `(-a, -b)`.
    pub equivalent_to_negation: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyCheck {
    pub name: &'static str,
    pub flagged: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiConsistencyReport {
    pub params: FamilyParams,
    pub phi_params: FamilyParams,
    pub selected_convention: &'static str,
    pub raw_tuple: MarkedTuple,
    pub frame_matrix: MobiusMap,
    pub frame_matrix_params: FamilyParams,
    pub ordered_normalizer: MobiusMap,
    pub conventions: Vec<ConventionOutcome>,
    pub j_pair_top: Vec<String>,
    pub j_pair_bottom: Vec<String>,
    pub checks: Vec<ConsistencyCheck>,
    pub inconsistency_flags: Vec<&'static str>,
}

/// Compares the closed form of the involution with the raw tuple form and
/// with the frame matrix, and records equivalence verdicts per convention.
pub fn phi_consistency_report(params: &FamilyParams, conv: MarkingConvention) -> Result<PhiConsistencyReport> {
    let image = phi_params(params)?;
    let t = tuple_of_params(params);
    let raw = phi_tuple_raw(&t)?;
    let m = frame_matrix(params)?;

    let pushed = raw.push(&m);
    let frame_sends_to_canonical = pushed.triple() == &canonical_frame();
    let frame_params = check_domain(
        &-pushed.pair()[0].affine().cloned().unwrap_or_else(Rational::zero),
        &-pushed.pair()[1].affine().cloned().unwrap_or_else(Rational::zero),
    )?;

    let ordered = normalize_tuple(&raw, MarkingConvention::ORDERED)?;
    let ordered_params = ordered[0].params.clone();
    let ordered_normalizer = ordered[0].map.clone();

    let image_tuple = tuple_of_params(&image);
    let neg_tuple = tuple_of_params(&check_domain(&-params.a().clone(), &-params.b().clone())?);
    let mut conventions = Vec::new();
    for (name, c) in MarkingConvention::NAMED {
        conventions.push(ConventionOutcome {
            convention: name,
            tuple_form_params: normalize_tuple(&raw, c)?.into_iter().map(|n| n.params).collect(),
            equivalent_to_image: tuples_equivalent(&t, &image_tuple, c)?,
            equivalent_to_negation: tuples_equivalent(&t, &neg_tuple, c)?,
        });
    }

    let inv_here = prym_fiber_invariants(params)?;
    let inv_image = prym_fiber_invariants(&image)?;
    let twice = phi_params(&image)?;

    let checks = vec![
        ConsistencyCheck {
            name: "tuple_form_disagrees_with_closed_form",
            flagged: ordered_params != image,
            detail: format!("ordered normalization of the raw tuple gives {ordered_params}, closed form gives {image}"),
        },
        ConsistencyCheck {
            name: "frame_matrix_disagrees_with_closed_form",
            flagged: frame_params != image,
            detail: format!("frame matrix applied to the raw tuple gives {frame_params}, closed form gives {image}"),
        },
        ConsistencyCheck {
            name: "frame_matrix_misses_canonical_triple",
            flagged: !frame_sends_to_canonical,
            detail: format!("frame matrix sends the raw tuple to {pushed}"),
        },
        ConsistencyCheck {
            name: "closed_form_not_an_involution",
            flagged: twice != params.swapped(),
            detail: format!("applying the closed form twice gives {twice}"),
        },
        ConsistencyCheck {
            name: "fiber_invariants_differ",
            flagged: inv_here != inv_image,
            detail: "unordered j-pairs compared at both points".into(),
        },
    ];
    let inconsistency_flags = checks.iter().filter(|c| c.flagged).map(|c| c.name).collect();

    Ok(PhiConsistencyReport {
        params: params.clone(),
        phi_params: image,
        selected_convention: conv.name(),
        raw_tuple: raw,
        frame_matrix: m,
        frame_matrix_params: frame_params,
        ordered_normalizer,
        conventions,
        j_pair_top: inv_here.j_pair_top.iter().map(format_rational).collect(),
        j_pair_bottom: inv_here.j_pair_bottom.iter().map(format_rational).collect(),
        checks,
        inconsistency_flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use crate::family::check_domain_ints;

    #[test]
    fn phi_values() {
        assert_eq!(phi_params(&check_domain_ints(0, 1).unwrap()).unwrap(), check_domain_ints(-6, -10).unwrap());
        assert_eq!(phi_params(&check_domain_ints(1, 3).unwrap()).unwrap(), check_domain_ints(-1, -3).unwrap());
        assert_eq!(phi_params(&check_domain_ints(1, -1).unwrap()), Err(Error::PhiUndefined));
    }

    #[test]
    fn raw_tuple_form() {
        let t = tuple_of_params(&check_domain_ints(1, 3).unwrap());
        assert_eq!(phi_tuple_raw(&t).unwrap().to_string(), "-3,-1;inf,-6,-2!0");
        let t = tuple_of_params(&check_domain_ints(0, 1).unwrap());
        assert_eq!(phi_tuple_raw(&t).unwrap().to_string(), "-1,0;inf,-3,-2!0");
        let t = tuple_of_params(&check_domain_ints(1, -1).unwrap());
        assert!(matches!(phi_tuple_raw(&t), Err(Error::DegenerateConfiguration(_))));
        let off = MarkedTuple::parse("0,1;2,inf,-2!1").unwrap();
        assert!(matches!(phi_tuple_raw(&off), Err(Error::Argument(_))));
    }

    #[test]
    fn fiber_invariants_at_anchor_points() {
        let bottom = [rat(1728), ratio(21952, 9)];
        let here = prym_fiber_invariants(&check_domain_ints(0, 1).unwrap()).unwrap();
        let there = prym_fiber_invariants(&check_domain_ints(-6, -10).unwrap()).unwrap();
        assert_eq!(here.j_pair_bottom, bottom);
        assert_eq!(there.j_pair_bottom, bottom);
        assert!(here.j_pair_top.contains(&rat(287496)));
        assert_eq!(here, there);
    }

    #[test]
    fn report_at_one_three() {
        let r = phi_consistency_report(&check_domain_ints(1, 3).unwrap(), MarkingConvention::ORDERED).unwrap();
        assert_eq!(r.conventions[0].tuple_form_params, vec![check_domain_ints(1, 3).unwrap()]);
        assert_eq!(r.phi_params, check_domain_ints(-1, -3).unwrap());
        assert_eq!(
            r.inconsistency_flags,
            vec!["tuple_form_disagrees_with_closed_form", "frame_matrix_disagrees_with_closed_form"]
        );
        assert_eq!(r.frame_matrix, r.ordered_normalizer);
    }

    #[test]
    fn report_at_zero_one() {
        let r = phi_consistency_report(&check_domain_ints(0, 1).unwrap(), MarkingConvention::ORDERED).unwrap();
        let ordered = &r.conventions[0];
        assert!(!ordered.equivalent_to_image);
        assert!(!ordered.equivalent_to_negation);
        let all = &r.conventions[2];
        assert!(all.equivalent_to_negation);
    }
}
