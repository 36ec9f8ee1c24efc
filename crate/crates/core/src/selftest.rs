//! The acceptance suite: nine timed criteria over seeded random samples and
//! fixed anchor computations.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::algebra::{rat, ratio};
use crate::error::{Error, Result};
use crate::family::{
    check_domain, check_domain_ints, fixed_point_profile, quotient_map, verify_quotient_identity, CurveLabel,
};
use crate::isogeny::{dual_nonisomorphism_check, CurvePoint, KernelPoint, WeierstrassCurve};
use crate::moduli::{j_of, phi_consistency_report, phi_params, prym_fiber_invariants};
use crate::periods::periods_report;
use crate::projline::{normalize_tuple, tuple_of_params, MarkingConvention};
use crate::sampling::{random_domain_point, random_mobius, random_phi_point, random_rational, rng};
use crate::torsion::{automorphism_example_report, duality_chain, factor_intersections};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub checks_passed: bool,
    pub within_time_limit: bool,
    pub passed: bool,
    pub elapsed_ms: u128,
    pub limit_ms: u128,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub criteria: Vec<CriterionResult>,
    pub all_passed: bool,
}

type Check = fn() -> Result<(bool, String)>;

pub const CRITERIA: [(u32, &str, u64, Check); 9] = [
    (1, "normalization_round_trip", 5, normalization_round_trip),
    (2, "quotient_identities", 5, quotient_identities),
    (3, "fixed_point_profile", 2, fixed_point_profiles),
    (4, "deck_involution", 1, deck_involution),
    (5, "fiber_invariance", 10, fiber_invariance),
    (6, "torsion_kernels", 30, torsion_kernels),
    (7, "velu_duality", 1, velu_duality),
    (8, "periods", 60, periods),
    (9, "consistency_diagnostics", 1, consistency_diagnostics),
];

fn fail(detail: &mut Vec<String>, ok: &mut bool, cond: bool, msg: impl FnOnce() -> String) {
    if !cond {
        *ok = false;
        detail.push(msg());
    }
}

fn summary(ok: bool, detail: Vec<String>, success: &str) -> (bool, String) {
    if ok {
        (true, success.to_string())
    } else {
        (false, detail.join("; "))
    }
}

fn normalization_round_trip() -> Result<(bool, String)> {
    let mut r = rng(1);
    let (mut ok, mut detail) = (true, Vec::new());
    for _ in 0..200 {
        let p = random_domain_point(&mut r);
        let m = random_mobius(&mut r);
        let n = normalize_tuple(&tuple_of_params(&p).push(&m), MarkingConvention::ORDERED)?;
        fail(&mut detail, &mut ok, n.len() == 1 && n[0].params == p, || format!("{p} under {m:?}"));
    }
    Ok(summary(ok, detail, "200 pushed tuples normalized back to their parameters"))
}

fn quotient_identities() -> Result<(bool, String)> {
    let mut r = rng(2);
    let (mut ok, mut detail) = (true, Vec::new());
    for _ in 0..25 {
        let p = random_domain_point(&mut r);
        for label in CurveLabel::QUOTIENTS {
            let q = quotient_map(label)?;
            fail(&mut detail, &mut ok, verify_quotient_identity(&q, &p), || format!("{} at {p}", label.name()));
        }
    }
    Ok(summary(ok, detail, "nine identities at 25 points"))
}

fn fixed_point_profiles() -> Result<(bool, String)> {
    let mut r = rng(3);
    let (mut ok, mut detail) = (true, Vec::new());
    for _ in 0..50 {
        let p = random_domain_point(&mut r);
        let prof = fixed_point_profile(&p);
        fail(&mut detail, &mut ok, prof == [4, 4, 4, 0, 0, 0], || format!("{prof:?} at {p}"));
    }
    Ok(summary(ok, detail, "profile (4, 4, 4, 0, 0, 0) at 50 points"))
}

fn deck_involution() -> Result<(bool, String)> {
    let mut r = rng(4);
    let (mut ok, mut detail) = (true, Vec::new());
    for _ in 0..200 {
        let p = random_phi_point(&mut r);
        let twice = phi_params(&phi_params(&p)?)?;
        fail(&mut detail, &mut ok, twice == p.swapped(), || format!("twice at {p} gives {twice}"));
    }
    let anchors = [((0, 1), (-6, -10)), ((1, 3), (-1, -3))];
    for ((a, b), (c, d)) in anchors {
        let got = phi_params(&check_domain_ints(a, b)?)?;
        fail(&mut detail, &mut ok, got == check_domain_ints(c, d)?, || format!("phi({a}, {b}) = {got}"));
    }
    let mut on_line = 0;
    while on_line < 50 {
        let a = random_rational(&mut r);
        if let Ok(p) = check_domain(&a, &-a.clone()) {
            on_line += 1;
            fail(&mut detail, &mut ok, phi_params(&p) == Err(Error::PhiUndefined), || format!("no error at {p}"));
        }
    }
    Ok(summary(ok, detail, "involutive on 200 points, anchors match, undefined exactly on a + b = 0"))
}

fn fiber_invariance() -> Result<(bool, String)> {
    let mut r = rng(5);
    let (mut ok, mut detail) = (true, Vec::new());
    for _ in 0..100 {
        let p = random_phi_point(&mut r);
        let same = prym_fiber_invariants(&p)? == prym_fiber_invariants(&phi_params(&p)?)?;
        fail(&mut detail, &mut ok, same, || format!("j-pairs differ at {p}"));
    }
    let here = check_domain_ints(0, 1)?;
    let there = check_domain_ints(-6, -10)?;
    let bottom = [rat(1728), ratio(21952, 9)];
    fail(&mut detail, &mut ok, prym_fiber_invariants(&here)?.j_pair_bottom == bottom, || {
        "bottom pair at (0, 1)".into()
    });
    fail(&mut detail, &mut ok, prym_fiber_invariants(&there)?.j_pair_bottom == bottom, || {
        "bottom pair at (-6, -10)".into()
    });
    fail(&mut detail, &mut ok, j_of(CurveLabel::ET, &here)? == rat(287496), || "j(E_t) at (0, 1)".into());
    fail(&mut detail, &mut ok, j_of(CurveLabel::ESt, &there)? == rat(287496), || "j(E_st) at (-6, -10)".into());
    Ok(summary(ok, detail, "j-pairs agree at 100 points and at the anchors"))
}

fn torsion_kernels() -> Result<(bool, String)> {
    let (mut ok, mut detail) = (true, Vec::new());
    let ex = automorphism_example_report()?;
    fail(&mut detail, &mut ok, ex.ker_phi_a_matches_list, || "ker phi_A list".into());
    for d in 2..=8 {
        let l = factor_intersections(d)?;
        fail(&mut detail, &mut ok, l.e_cap_is_generated_by_p && l.f_cap_is_generated_by_q, || {
            format!("factor intersections at d = {d}")
        });
        fail(&mut detail, &mut ok, l.ker_phi_h_order_is_d_squared, || format!("|ker phi_H| at d = {d}"));
    }
    for d in 2..=6 {
        let c = duality_chain(d)?;
        let good =
            c.quotient_by_p_kernel_is_product && c.g_is_cyclic && c.g_order == d as usize && c.g_generator_order == d;
        fail(&mut detail, &mut ok, good, || format!("duality chain at d = {d}"));
    }
    Ok(summary(ok, detail, "ker phi_A list, intersections for d = 2..8, duality chain for d = 2..6"))
}

fn velu_duality() -> Result<(bool, String)> {
    let (mut ok, mut detail) = (true, Vec::new());
    let e = WeierstrassCurve::from_ints(1, 0)?;
    let p = KernelPoint::new(&e, CurvePoint::from_ints(0, 0))?;
    let c = dual_nonisomorphism_check(&e, &p, &e, &p, true)?;
    fail(&mut detail, &mut ok, c.j_e_quotient == "1728" && !c.premise_holds, || "CM quotient".into());
    // (x + 6)(x + 1)(x - 7) and (x - 1)(x - 2)(x + 3)
    let e = WeierstrassCurve::from_ints(-43, -42)?;
    let f = WeierstrassCurve::from_ints(-7, 6)?;
    let p = KernelPoint::new(&e, CurvePoint::from_ints(-1, 0))?;
    let q = KernelPoint::new(&f, CurvePoint::from_ints(1, 0))?;
    let c = dual_nonisomorphism_check(&e, &p, &f, &q, true)?;
    fail(&mut detail, &mut ok, c.premise_holds, || "generic 2-torsion pair".into());
    Ok(summary(ok, detail, "CM premise fails, generic premise holds"))
}

fn periods() -> Result<(bool, String)> {
    let mut r = rng(8);
    let (mut ok, mut detail) = (true, Vec::new());
    let mut worst = 0f64;
    for _ in 0..20 {
        let p = random_domain_point(&mut r);
        let rep = periods_report(&p, 256)?;
        for c in &rep.curves {
            worst = worst.max(c.j_abs_error);
            fail(&mut detail, &mut ok, c.j_abs_error < 1e-8, || format!("{} at {p}: {}", c.label, c.j_abs_error));
        }
        let rc = &rep.riemann;
        fail(&mut detail, &mut ok, rc.satisfied && rc.symmetry_residual == 0.0, || format!("Riemann at {p}"));
        let tr = &rep.reduction;
        let good = tr.basis_change_is_symplectic && tr.after_quotient_matches_expected && tr.matches_prym_matrix;
        fail(&mut detail, &mut ok, good, || format!("reduction trace at {p}"));
    }
    Ok(summary(ok, detail, &format!("20 points at 256 bits, largest j error {worst:e}")))
}

fn consistency_diagnostics() -> Result<(bool, String)> {
    let (mut ok, mut detail) = (true, Vec::new());
    let r = phi_consistency_report(&check_domain_ints(1, 3)?, MarkingConvention::ORDERED)?;
    let ordered = &r.conventions[0];
    fail(&mut detail, &mut ok, ordered.tuple_form_params == vec![check_domain_ints(1, 3)?], || {
        "tuple form under ordered normalization".into()
    });
    fail(&mut detail, &mut ok, r.phi_params == check_domain_ints(-1, -3)?, || "closed form".into());
    let expected = vec!["tuple_form_disagrees_with_closed_form", "frame_matrix_disagrees_with_closed_form"];
    fail(&mut detail, &mut ok, r.inconsistency_flags == expected, || format!("flags {:?}", r.inconsistency_flags));
    Ok(summary(ok, detail, "tuple form gives (1, 3), closed form (-1, -3), frame matrix flagged"))
}

pub fn run_criterion(id: u32) -> Result<CriterionResult> {
    let &(id, name, secs, check) =
        CRITERIA.iter().find(|c| c.0 == id).ok_or_else(|| Error::Argument(format!("no criterion {id}")))?;
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(secs);
    let (checks_passed, detail) = match outcome {
        Ok(v) => v,
        Err(Error::InternalInvariant(m)) => return Err(Error::InternalInvariant(m)),
        Err(e) => (false, format!("error: {e}")),
    };
    let within = elapsed < limit;
    Ok(CriterionResult {
        id,
        name,
        checks_passed,
        within_time_limit: within,
        passed: checks_passed && within,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: limit.as_millis(),
        detail,
    })
}

pub fn run_all() -> Result<SelftestReport> {
    let criteria = CRITERIA.iter().map(|c| run_criterion(c.0)).collect::<Result<Vec<_>>>()?;
    let all_passed = criteria.iter().all(|c| c.passed);
    Ok(SelftestReport { criteria, all_passed })
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {} {}: {} ({} ms, limit {} ms) {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed_ms,
            self.limit_ms,
            self.detail
        )
    }
}
