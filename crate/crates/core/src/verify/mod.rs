//! Verification suites: every construction formula, exclusion, round trip,
//! and oracle-equivalence check runs here, one named check at a time. The
//! acceptance test target and the command-line `verify` command both drive
//! these functions.

pub mod gen;
pub mod oracle;

use crate::budget::Budget;
use crate::connectivity::{
    kappa, lambda, linking_minor, nested_linking_minor, standard_tangle, TangleOutcome,
};
use crate::error::Result;
use crate::extremal::{
    dowling_density_check, extremal_search, heller_instance_check, kung_bound, DensityVerdict,
    Forbidden,
};
use crate::geometries::{
    complete_graph_matroid, cyclic_dowling_matrix, dowling, fano, lift_extension_point,
    lift_geometry, projective_geometry,
};
use crate::glgraph::{balanced_cycles, complete_labeled_graph, recover_group_labeling};
use crate::groups::{group_isomorphic, FiniteGroup};
use crate::matroid::{is_isomorphic, find_representation, same_restriction, Backend, Matroid};
use crate::modular::{
    delta_contract, delta_delete, delta_of, line_minor_bound_check, reduce_upper_triangular,
    IntegerMatrix,
};
use crate::set::ElemSet;
use crate::structures::{free_spike, has_reid_minor, is_cycle_of_length, is_star, make_star,
    reid_geometry, reid_incidence_graph};
use rand::Rng;

/// Outcome of one named check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, pass: bool, lhs: impl ToString, rhs: impl ToString) -> Self {
        CheckResult { name: name.into(), pass, lhs: lhs.to_string(), rhs: rhs.to_string() }
    }

    fn eq<T: PartialEq + ToString>(name: impl Into<String>, lhs: T, rhs: T) -> Self {
        let pass = lhs == rhs;
        CheckResult::new(name, pass, lhs, rhs)
    }

    /// One line in the report format: `CHECK <name> <verdict> <lhs> <rhs>`.
    pub fn report_line(&self) -> String {
        format!(
            "CHECK {} {} {} {}",
            self.name,
            if self.pass { "PASS" } else { "FAIL" },
            self.lhs,
            self.rhs
        )
    }
}

/// Desk-scale runs everything; quick trims sample counts and the largest
/// instances for smoke testing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Desk,
    Quick,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Sizes,
    Representability,
    Tangles,
    Linking,
    Reid,
    Delta,
    Extremal,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        match s {
            "sizes" => Some(Suite::Sizes),
            "representability" => Some(Suite::Representability),
            "tangles" => Some(Suite::Tangles),
            "linking" => Some(Suite::Linking),
            "reid" => Some(Suite::Reid),
            "delta" => Some(Suite::Delta),
            "extremal" => Some(Suite::Extremal),
            "all" => Some(Suite::All),
            _ => None,
        }
    }

    pub fn names() -> &'static [&'static str] {
        &["sizes", "representability", "tangles", "linking", "reid", "delta", "extremal", "all"]
    }
}

pub fn run_suite(suite: Suite, scale: Scale, budget: &Budget) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Sizes {
        out.extend(criterion_size_formulas(scale, budget)?);
        out.extend(criterion_identifications(budget)?);
        out.extend(criterion_minor_exclusions(scale, budget)?);
        out.extend(criterion_circuit_rank_equivalence(scale, budget)?);
    }
    if all || suite == Suite::Representability {
        out.extend(criterion_representability(budget)?);
        out.extend(criterion_group_recovery(scale, budget)?);
    }
    if all || suite == Suite::Tangles {
        out.extend(criterion_tangle_threshold(scale, budget)?);
    }
    if all || suite == Suite::Linking {
        out.extend(criterion_linking(scale, budget)?);
    }
    if all || suite == Suite::Reid {
        out.extend(criterion_star_structure(budget)?);
        out.extend(criterion_reid(budget)?);
    }
    if all || suite == Suite::Delta {
        out.extend(criterion_delta(scale, budget)?);
    }
    if all || suite == Suite::Extremal {
        out.extend(criterion_kung(budget)?);
        out.extend(criterion_heller(budget)?);
    }
    Ok(out)
}

/// Size formulas `|DG(k,G)| = |G| C(k,2) + k` and
/// `|LG+(k,G)| = |G| C(k,2) + 1` across the catalog.
pub fn criterion_size_formulas(scale: Scale, budget: &Budget) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let kmax = if scale == Scale::Quick { 4 } else { 6 };
    for group in gen::small_group_catalog() {
        for k in 3..=kmax {
            let choose2 = k * (k - 1) / 2;
            let (dg, _) = dowling(k, &group, budget)?;
            out.push(CheckResult::eq(
                format!("size-dg-{k}-{}", group.name()),
                dg.matroid.size(),
                group.order() * choose2 + k,
            ));
            let (lg, _) = lift_geometry(k, &group, true, budget)?;
            out.push(CheckResult::eq(
                format!("size-lgplus-{k}-{}", group.name()),
                lg.size(),
                group.order() * choose2 + 1,
            ));
        }
    }
    Ok(out)
}

/// The named identifications, with explicit isomorphism
/// witnesses.
pub fn criterion_identifications(budget: &Budget) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let z1 = crate::groups::cyclic_group(1);
    let z2 = crate::groups::cyclic_group(2);

    let (dg1, _) = dowling(3, &z1, budget)?;
    let (k4, _) = complete_graph_matroid(4, budget)?;
    out.push(CheckResult::new(
        "iso-dg3-trivial-mk4",
        is_isomorphic(&dg1.matroid, &k4, budget)?.is_some(),
        "DG(3,{1})",
        "M(K4)",
    ));

    let (lgp, _) = lift_geometry(3, &z2, true, budget)?;
    let f7 = fano(budget)?;
    out.push(CheckResult::new(
        "iso-lgplus3-z2-fano",
        is_isomorphic(&lgp, &f7, budget)?.is_some(),
        "LG+(3,Z2)",
        "F7",
    ));

    let (dg4, _) = dowling(4, &z2, budget)?;
    let (dg3, _) = dowling(3, &z2, budget)?;
    let mut all_contract = true;
    for e in dg4.matroid.ground().iter() {
        let si = dg4.matroid.contract(ElemSet::singleton(e)).simplify().matroid;
        if is_isomorphic(&si, &dg3.matroid, budget)?.is_none() {
            all_contract = false;
            break;
        }
    }
    out.push(CheckResult::new("iso-si-dg4-z2-contract", all_contract, "si(DG(4,Z2)/e)", "DG(3,Z2)"));

    let (lg4, label4) = lift_geometry(4, &z2, true, budget)?;
    let e0 = lift_extension_point(&label4).unwrap();
    let mut all_lift = true;
    for e in lg4.ground().iter() {
        if e == e0 {
            continue;
        }
        let si = lg4.contract(ElemSet::singleton(e)).simplify().matroid;
        if is_isomorphic(&si, &lgp, budget)?.is_none() {
            all_lift = false;
            break;
        }
    }
    out.push(CheckResult::new(
        "iso-si-lgplus4-z2-contract",
        all_lift,
        "si(LG+(4,Z2)/e)",
        "LG+(3,Z2)",
    ));
    Ok(out)
}

/// Line-minor thresholds of Dowling geometries and PG(2,2).
pub fn criterion_minor_exclusions(scale: Scale, budget: &Budget) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let kmax = if scale == Scale::Quick { 4 } else { 5 };
    for t in 1..=3usize {
        let group = crate::groups::cyclic_group(t);
        for k in 3..=kmax {
            let (dg, _) = dowling(k, &group, budget)?;
            let has_t2 = dg.matroid.has_line_minor(t + 2, budget)?;
            let has_t3 = dg.matroid.has_line_minor(t + 3, budget)?;
            out.push(CheckResult::new(
                format!("line-minor-dg-{k}-z{t}"),
                has_t2 && !has_t3,
                format!("U(2,{}) {} / U(2,{}) {}", t + 2, has_t2, t + 3, has_t3),
                "true / false",
            ));
        }
    }
    let (pg, _) = projective_geometry(2, 2, budget)?;
    out.push(CheckResult::eq("line-minor-pg22", pg.has_line_minor(4, budget)?, false));
    Ok(out)
}

/// Independence by the circuit-rule oracle equals independence
/// by the frame and lift rank formulas, on seeded random biased graphs.
pub fn criterion_circuit_rank_equivalence(scale: Scale, budget: &Budget) -> Result<Vec<CheckResult>> {
    let count = if scale == Scale::Quick { 25 } else { 100 };
    let mut r = gen::rng(0x5eed_0009);
    let mut mismatches = 0usize;
    let mut graphs = 0usize;
    while graphs < count {
        let g = gen::random_labeled_graph(&mut r)?;
        let bias = balanced_cycles(&g, budget)?;
        let frame = Matroid::from_backend(Backend::frame(bias.clone()))?;
        let lift = Matroid::from_backend(Backend::lift(bias.clone(), false))?;
        for x in frame.ground().subsets() {
            let frame_formula = frame.is_independent(x);
            let lift_formula = lift.is_independent(x);
            if frame_formula != oracle::frame_independent(&bias, x)
                || lift_formula != oracle::lift_independent(&bias, x)
            {
                mismatches += 1;
            }
        }
        graphs += 1;
    }
    Ok(vec![CheckResult::eq(
        format!("circuit-rank-equivalence-{count}-graphs"),
        mismatches,
        0,
    )])
}

/// Representability of DG(3,Z2) and LG+(3,Z2) over small
/// fields; exhaustive absence counts as proof.
pub fn criterion_representability(budget: &Budget) -> Result<Vec<CheckResult>> {
    let z2 = crate::groups::cyclic_group(2);
    let (dg, _) = dowling(3, &z2, budget)?;
    let (lg, _) = lift_geometry(3, &z2, true, budget)?;
    let mut out = Vec::new();
    for (m, name, q, expect) in [
        (&dg.matroid, "dg3-z2", 2usize, false),
        (&dg.matroid, "dg3-z2", 3, true),
        (&dg.matroid, "dg3-z2", 5, true),
        (&lg, "lgplus3-z2", 2, true),
        (&lg, "lgplus3-z2", 4, true),
        (&lg, "lgplus3-z2", 3, false),
        (&lg, "lgplus3-z2", 5, false),
    ] {
        let found = find_representation(m, q, budget)?;
        let witnessed = found.is_some();
        let faithful = found.is_none_or(|w| {
            // the witness must reproduce the matroid exactly
            let back = w.to_matroid().unwrap();
            let order: Vec<usize> = m.ground().iter().collect();
            m.ground().subsets().all(|s| {
                let mapped: ElemSet =
                    s.iter().map(|e| order.iter().position(|&x| x == e).unwrap()).collect();
                m.rank(s) == back.rank(mapped)
            })
        });
        out.push(CheckResult::new(
            format!("representable-{name}-gf{q}"),
            witnessed == expect && faithful,
            format!("{}{}", found_str(witnessed), if faithful { "" } else { " (unfaithful)" }),
            found_str(expect),
        ));
    }
    Ok(out)
}

fn found_str(b: bool) -> &'static str {
    if b {
        "witness"
    } else {
        "none"
    }
}

/// Group recovery round trip on the bias of the fully labeled
/// complete graph.
pub fn criterion_group_recovery(scale: Scale, budget: &Budget) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let ms: &[usize] = if scale == Scale::Quick { &[4] } else { &[4, 5] };
    for group in gen::small_group_catalog() {
        for &m in ms {
            let g = complete_labeled_graph(m, &group);
            let bias = balanced_cycles(&g, budget)?;
            let (recovered, labeled) = recover_group_labeling(&bias, group.order(), budget)?;
            let iso = group_isomorphic(&recovered, &group)?;
            let same_bias =
                balanced_cycles(&labeled, budget)?.balanced_family() == bias.balanced_family();
            out.push(CheckResult::new(
                format!("recover-{}-m{m}", group.name()),
                iso && same_bias,
                format!("group iso {iso}, bias equal {same_bias}"),
                "true, true",
            ));
        }
    }
    Ok(out)
}

/// The standard tangle of DG(n, Z2) exists exactly for
/// `3 <= k <= ceil(2n/3) + 1`.
pub fn criterion_tangle_threshold(scale: Scale, budget: &Budget) -> Result<Vec<CheckResult>> {
    let z2 = crate::groups::cyclic_group(2);
    let ns: &[usize] = if scale == Scale::Quick { &[4, 5] } else { &[4, 5, 6] };
    let mut out = Vec::new();
    for &n in ns {
        let (dg, _) = dowling(n, &z2, budget)?;
        let threshold = (2 * n).div_ceil(3) + 1; // ceil(2n/3) + 1
        let mut boundary_ok = true;
        let mut detail = String::new();
        for k in 3..=n {
            let exists = matches!(standard_tangle(&dg.matroid, k, budget)?, TangleOutcome::Tangle(_));
            let expected = k <= threshold;
            if exists != expected {
                boundary_ok = false;
            }
            detail.push_str(&format!("k{k}:{} ", if exists { "yes" } else { "no" }));
        }
        out.push(CheckResult::new(
            format!("tangle-threshold-dg{n}-z2"),
            boundary_ok,
            detail.trim(),
            format!("exists iff k <= {threshold}"),
        ));
    }
    Ok(out)
}

/// Linking minors on seeded random matroids always satisfy
/// the postconditions against the exhaustive separation oracle.
pub fn criterion_linking(scale: Scale, budget: &Budget) -> Result<Vec<CheckResult>> {
    let count = if scale == Scale::Quick { 40 } else { 200 };
    let mut r = gen::rng(0x5eed_0008);
    let mut single_fail = 0usize;
    let mut nested_fail = 0usize;
    for _ in 0..count {
        let m = gen::random_gf_matroid(&mut r)?;
        let elems: Vec<usize> = m.ground().iter().collect();
        let xs = r.gen_range(2..=3);
        let ys = r.gen_range(2..=3);
        let x: ElemSet = elems[..xs].iter().copied().collect();
        let y: ElemSet = elems[xs..xs + ys].iter().copied().collect();
        let target = kappa(&m, x, y, budget)?;
        let n = linking_minor(&m, x, y, budget)?;
        if n.ground() != x.union(y)
            || kappa(&n, x, y, budget)? != target
            || !same_restriction(&n, &m, x)
            || !same_restriction(&n, &m, y)
        {
            single_fail += 1;
        }
        // nested chain of length two
        let y1: ElemSet = elems[xs..xs + 1].iter().copied().collect();
        let y2: ElemSet = elems[xs..xs + ys].iter().copied().collect();
        let t1 = kappa(&m, x, y1, budget)?;
        let t2 = kappa(&m, x, y2, budget)?;
        let nn = nested_linking_minor(&m, x, &[y1, y2], budget)?;
        if nn.ground() != x.union(y2)
            || kappa(&nn, x, y1, budget)? != t1
            || kappa(&nn, x, y2, budget)? != t2
            || !same_restriction(&nn, &m, x)
            || !same_restriction(&nn, &m, y1)
        {
            nested_fail += 1;
        }
    }
    Ok(vec![
        CheckResult::eq(format!("linking-single-{count}"), single_fail, 0),
        CheckResult::eq(format!("linking-nested-{count}"), nested_fail, 0),
    ])
}

/// Star circuit structure, and the failure of the rank-5
/// free spike to be a star at any tip.
pub fn criterion_star_structure(budget: &Budget) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let profiles: [&[usize]; 6] =
        [&[3, 3], &[3, 4], &[4, 4], &[3, 3, 3], &[3, 4, 4], &[3, 3, 3, 3]];
    let mut all_ok = true;
    for profile in profiles {
        let (s, tip) = make_star(profile)?;
        debug_assert!(s.size() <= 12);
        let lines = s.lines(budget)?;
        let tip_lines: Vec<ElemSet> = lines.iter().copied().filter(|l| l.contains(tip)).collect();
        for c in s.circuits(None, budget)? {
            let covered = tip_lines.iter().enumerate().any(|(i, &l1)| {
                tip_lines[i..].iter().any(|&l2| c.is_subset(l1.union(l2).with(tip)))
            });
            if c.len() >= 5 || !covered {
                all_ok = false;
            }
        }
    }
    out.push(CheckResult::new("star-circuit-structure", all_ok, "all circuits on two tip-lines, size < 5", "true"));

    let (spike, _) = free_spike(5)?;
    let mut no_tip_works = true;
    for t in spike.ground().iter() {
        if is_star(&spike, t, budget)? {
            no_tip_works = false;
        }
    }
    out.push(CheckResult::new("rank5-spike-not-a-star", no_tip_works, "no candidate tip", "true"));
    Ok(out)
}

/// Reid incidence cycles and the R(2) restriction of
/// LG+(3, Z2).
pub fn criterion_reid(budget: &Budget) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for p in [2usize, 3, 5] {
        let (rg, _) = reid_geometry(p)?;
        let l1: ElemSet = ElemSet::from_iter((0..p).map(|i| 3 + i)).with(0);
        let l2: ElemSet = ElemSet::from_iter((0..p).map(|i| 3 + p + i)).with(0);
        let (graph, _) = reid_incidence_graph(&rg, l1, l2, 0, 1, 2)?;
        out.push(CheckResult::new(
            format!("reid-incidence-cycle-r{p}"),
            is_cycle_of_length(&graph, 2 * p),
            format!("I(R({p}))"),
            format!("{}-cycle", 2 * p),
        ));
    }
    let z2 = crate::groups::cyclic_group(2);
    let (lg, _) = lift_geometry(3, &z2, true, budget)?;
    let found = has_reid_minor(&lg, 2..=4, budget)?;
    out.push(CheckResult::new(
        "reid-minor-of-lgplus3-z2",
        found == Some(2),
        format!("{found:?}"),
        "Some(2)",
    ));
    Ok(out)
}

/// Delta-modular checks: exact certification of the real cyclic matrices,
/// reduction invariance, line bounds, and matroid-minor commutation.
pub fn criterion_delta(scale: Scale, budget: &Budget) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for m in [3usize, 4, 5] {
        let a = cyclic_dowling_matrix(m, 1)?;
        out.push(CheckResult::eq(
            format!("delta-cyclic-{m}-1"),
            delta_of(&a, budget)?,
            1,
        ));
    }

    let samples = if scale == Scale::Quick { 25 } else { 100 };
    let mut r = gen::rng(0x5eed_0012);
    let mut preserved = true;
    for _ in 0..samples {
        let a = gen::random_int_matrix(&mut r, 3, 5, 2, true)?;
        // a random independent column pair
        let m = Matroid::from_backend(Backend::from_int_matrix(a.clone()))?;
        let mut cols: Vec<usize> = Vec::new();
        for e in m.ground().iter() {
            if m.rank(ElemSet::from_iter(cols.iter().copied().chain([e]))) > cols.len() {
                cols.push(e);
            }
            if cols.len() == 2 {
                break;
            }
        }
        if cols.len() < 2 {
            continue;
        }
        let before = delta_of(&a, budget)?;
        let after = delta_of(&reduce_upper_triangular(&a, &cols)?, budget)?;
        if before != after {
            preserved = false;
        }
    }
    out.push(CheckResult::new(
        format!("delta-reduce-preserves-{samples}"),
        preserved,
        "delta before == after",
        "true",
    ));

    for d in [1u64, 2] {
        let rep = line_minor_bound_check(d, budget)?;
        out.push(CheckResult::new(
            format!("delta-line-bound-{d}"),
            rep.holds,
            format!("max line {} and GF({}) line {}", rep.max_simple_line, rep.prime, rep.projective_line_points),
            format!("both <= {}", 2 * d + 1),
        ));
    }

    let pairs = if scale == Scale::Quick { 15 } else { 50 };
    let mut r2 = gen::rng(0x5eed_0112);
    let mut commute = true;
    for _ in 0..pairs {
        let a = gen::random_int_matrix(&mut r2, 3, 6, 2, false)?;
        let ma = Matroid::from_backend(Backend::from_int_matrix(a.clone()))?;
        let e = r2.gen_range(0..a.cols());
        if a.column(e).iter().all(|&v| v == 0) {
            continue;
        }
        // contraction: column matroid of the contracted matrix equals the
        // matroid contraction, under the index shift
        let contracted = delta_contract(&a, e)?;
        let mc = Matroid::from_backend(Backend::from_int_matrix(contracted))?;
        let ground_after: Vec<usize> = (0..a.cols()).filter(|&c| c != e).collect();
        let mm = ma.contract(ElemSet::singleton(e));
        for s in mm.ground().subsets() {
            let mapped: ElemSet = s
                .iter()
                .map(|x| ground_after.iter().position(|&g| g == x).unwrap())
                .collect();
            if mm.rank(s) != mc.rank(mapped) {
                commute = false;
            }
        }
        // deletion commutes trivially but is checked the same way
        let drop = ElemSet::singleton(e);
        let md = Matroid::from_backend(Backend::from_int_matrix(delta_delete(&a, drop)))?;
        let mdel = ma.delete(drop);
        for s in mdel.ground().subsets() {
            let mapped: ElemSet = s
                .iter()
                .map(|x| ground_after.iter().position(|&g| g == x).unwrap())
                .collect();
            if mdel.rank(s) != md.rank(mapped) {
                commute = false;
            }
        }
    }
    out.push(CheckResult::new(
        format!("delta-minors-commute-{pairs}"),
        commute,
        "column matroid of contraction == contraction of column matroid",
        "true",
    ));
    Ok(out)
}

/// Kung's bound over a catalog, with equality exactly at the
/// projective planes.
pub fn criterion_kung(budget: &Budget) -> Result<Vec<CheckResult>> {
    let z2 = crate::groups::cyclic_group(2);
    let z3 = crate::groups::cyclic_group(3);
    let mut catalog: Vec<(String, Matroid, u64, bool)> = Vec::new();
    let (pg22, _) = projective_geometry(2, 2, budget)?;
    catalog.push(("pg22-l2".into(), pg22, 2, true));
    let (pg23, _) = projective_geometry(2, 3, budget)?;
    catalog.push(("pg23-l3".into(), pg23, 3, true));
    let (dg32, _) = dowling(3, &z2, budget)?;
    catalog.push(("dg3-z2-l3".into(), dg32.matroid, 3, false));
    let (dg42, _) = dowling(4, &z2, budget)?;
    catalog.push(("dg4-z2-l3".into(), dg42.matroid, 3, false));
    let (dg33, _) = dowling(3, &z3, budget)?;
    catalog.push(("dg3-z3-l4".into(), dg33.matroid, 4, false));
    let (k4, _) = complete_graph_matroid(4, budget)?;
    catalog.push(("mk4-l2".into(), k4, 2, false));
    let (k5, _) = complete_graph_matroid(5, budget)?;
    catalog.push(("mk5-l2".into(), k5, 2, false));
    let (lg42, _) = lift_geometry(4, &z2, true, budget)?;
    catalog.push(("lgplus4-z2-l3".into(), lg42, 3, false));

    let mut out = Vec::new();
    for (name, m, ell, expect_equal) in catalog {
        let holds = crate::extremal::kung_bound_holds(&m, ell, budget)?;
        let eps = m.simplify().matroid.epsilon() as u64;
        let bound = kung_bound(ell, m.full_rank() as u32);
        let equal = eps == bound;
        out.push(CheckResult::new(
            format!("kung-{name}"),
            holds && equal == expect_equal,
            format!("{eps} <= {bound}, equality {equal}"),
            format!("bound holds, equality {expect_equal}"),
        ));
    }
    Ok(out)
}

/// The exhaustive binary rank-3 extremal instance.
pub fn criterion_heller(budget: &Budget) -> Result<Vec<CheckResult>> {
    let rep = heller_instance_check(budget)?;
    Ok(vec![CheckResult::new(
        "heller-pg22",
        rep.max_points == 6 && rep.unique_class && rep.witness_is_k4 && rep.formula == 6,
        format!(
            "max {} unique {} k4 {} formula {}",
            rep.max_points, rep.unique_class, rep.witness_is_k4, rep.formula
        ),
        "max 6 unique true k4 true formula 6",
    )])
}

/// Extra density checks shared by the library tests and the CLI: every
/// catalog Dowling geometry meets its density formula exactly.
pub fn dowling_density_catalog(budget: &Budget) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for group in gen::small_group_catalog() {
        for k in 3..=5usize {
            let (dg, _) = dowling(k, &group, budget)?;
            let verdict = dowling_density_check(&dg.matroid, group.order());
            out.push(CheckResult::new(
                format!("density-dg-{k}-{}", group.name()),
                verdict == DensityVerdict::Equal,
                format!("{verdict:?}"),
                "Equal",
            ));
        }
    }
    Ok(out)
}

/// A delta-certification report for a user-supplied matrix, shared by the
/// `delta` command and the delta suite.
#[derive(Clone, Debug)]
pub struct DeltaReport {
    pub delta_value: u64,
    pub rank: usize,
    pub distinct_columns: usize,
    pub certified: Option<bool>,
    pub bound_for_c: Option<(u64, u64)>,
}

pub fn delta_report(a: &IntegerMatrix, claimed: Option<u64>, c: Option<u64>, budget: &Budget) -> Result<DeltaReport> {
    let delta_value = delta_of(a, budget)?;
    let rank = a.rank();
    let distinct = crate::modular::distinct_columns(a);
    let certified = claimed.map(|d| delta_value <= d);
    let bound_for_c = c.map(|c| {
        let m = rank as u64;
        (distinct as u64, m * m + c * m)
    });
    Ok(DeltaReport { delta_value, rank, distinct_columns: distinct, certified, bound_for_c })
}

/// Sanity check used by tests: lambda in a matroid is symmetric.
pub fn lambda_symmetric(m: &Matroid) -> bool {
    m.ground().subsets().all(|s| lambda(m, s) == lambda(m, m.ground().difference(s)))
}

/// The extremal search over a small ambient, re-exported for the CLI.
pub fn extremal_over(ambient: &Matroid, forbid_line: usize, budget: &Budget) -> Result<usize> {
    Ok(extremal_search(ambient, &[Forbidden::Line(forbid_line)], budget)?.max_points)
}

/// Groups used by the recovery criterion; exposed for the CLI's build help.
pub fn recovery_groups() -> Vec<FiniteGroup> {
    gen::small_group_catalog()
}
