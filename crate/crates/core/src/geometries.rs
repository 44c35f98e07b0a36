//! Named geometries and biased-graph constructions: frame and lift matroids,
//! Dowling geometries DG(k, G) and their frameless deletions, lift
//! geometries LG/LG+, complete-graph and projective geometries, cyclic
//! Dowling matrices, and the identification predicates that recover a group
//! from matroid structure.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::gf::SmallField;
use crate::glgraph::{
    balanced_cycles, complete_labeled_graph, recover_group_labeling, theta_property_holds,
    BiasedGraph, GroupLabeledGraph,
};
use crate::graph::MultiGraph;
use crate::groups::{cyclic_group, FiniteGroup};
use crate::matroid::{Backend, Matroid};
use crate::modular::IntegerMatrix;
use crate::set::ElemSet;

/// What each ground element of a constructed geometry is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementRole {
    /// Edge between distinct vertices `i < j` with a group label.
    Edge { i: usize, j: usize, label: usize },
    /// Unbalanced loop at a vertex (a frame element).
    Joint { vertex: usize },
    /// The lift extension point `e0`.
    ExtensionPoint,
    /// Generic point (projective geometries, matrices).
    Point { index: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeometryKind {
    Dowling,
    DowlingMinus,
    Lift,
    LiftPlus,
    CompleteGraph,
    Projective,
    CyclicDowlingMatrix,
    Reid,
}

impl GeometryKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            GeometryKind::Dowling => "dg",
            GeometryKind::DowlingMinus => "dg-minus",
            GeometryKind::Lift => "lg",
            GeometryKind::LiftPlus => "lg-plus",
            GeometryKind::CompleteGraph => "mkn",
            GeometryKind::Projective => "pg",
            GeometryKind::CyclicDowlingMatrix => "cyclic-matrix",
            GeometryKind::Reid => "reid",
        }
    }

    pub fn parse(s: &str) -> Option<GeometryKind> {
        match s {
            "dg" => Some(GeometryKind::Dowling),
            "dg-minus" => Some(GeometryKind::DowlingMinus),
            "lg" => Some(GeometryKind::Lift),
            "lg-plus" => Some(GeometryKind::LiftPlus),
            "mkn" => Some(GeometryKind::CompleteGraph),
            "pg" => Some(GeometryKind::Projective),
            "cyclic-matrix" => Some(GeometryKind::CyclicDowlingMatrix),
            "reid" => Some(GeometryKind::Reid),
            _ => None,
        }
    }
}

/// Construction metadata carried alongside a built geometry.
#[derive(Clone, Debug)]
pub struct GeometryLabel {
    pub kind: GeometryKind,
    pub k: usize,
    pub group: Option<String>,
    pub field: Option<usize>,
    pub annotations: Vec<ElementRole>,
}

/// A matroid with a designated frame: a basis such that every element is
/// spanned by at most two of its members.
#[derive(Clone, Debug)]
pub struct FramedMatroid {
    pub matroid: Matroid,
    pub frame: ElemSet,
}

impl FramedMatroid {
    /// Frame invariants: the frame is a basis and every element lies on the
    /// closure of at most two frame elements.
    pub fn is_valid(&self) -> bool {
        let m = &self.matroid;
        if !self.frame.is_subset(m.ground())
            || m.rank(self.frame) != self.frame.len()
            || self.frame.len() != m.full_rank()
        {
            return false;
        }
        let frame: Vec<usize> = self.frame.iter().collect();
        'outer: for e in m.ground().difference(self.frame).iter() {
            for (i, &b1) in frame.iter().enumerate() {
                if m.rank(ElemSet::from_iter([b1, e])) <= 1 {
                    continue 'outer;
                }
                for &b2 in &frame[i + 1..] {
                    if m.rank(ElemSet::from_iter([b1, b2, e])) <= 2 {
                        continue 'outer;
                    }
                }
            }
            if m.rank(ElemSet::singleton(e)) == 0 {
                continue; // loops are spanned by the empty subset
            }
            return false;
        }
        true
    }
}

/// Frame matroid of a biased graph. The bias must satisfy the theta
/// property; biases built from labelings satisfy it by construction.
pub fn frame_matroid_of(b: &BiasedGraph, budget: &Budget) -> Result<Matroid> {
    if !b.theta_by_construction() && !theta_property_holds(b, budget)? {
        return Err(Error::ThetaViolated);
    }
    Matroid::from_backend(Backend::frame(b.clone()))
}

/// Lift matroid of a biased graph; `extended` appends the element `e0`
/// (largest id) whose contraction gives the graphic matroid.
pub fn lift_matroid_of(b: &BiasedGraph, extended: bool, budget: &Budget) -> Result<Matroid> {
    if !b.theta_by_construction() && !theta_property_holds(b, budget)? {
        return Err(Error::ThetaViolated);
    }
    Matroid::from_backend(Backend::lift(b.clone(), extended))
}

/// Cycle matroid of the complete graph on `n` vertices.
pub fn complete_graph_matroid(n: usize, budget: &Budget) -> Result<(Matroid, GeometryLabel)> {
    let g = complete_labeled_graph(n, &cyclic_group(1));
    let bias = balanced_cycles(&g, budget)?;
    let m = frame_matroid_of(&bias, budget)?;
    let mut annotations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            annotations.push(ElementRole::Edge { i, j, label: 0 });
        }
    }
    let label = GeometryLabel {
        kind: GeometryKind::CompleteGraph,
        k: n,
        group: None,
        field: None,
        annotations,
    };
    Ok((m, label))
}

/// The rank-k Dowling geometry over a finite group: the complete fully
/// labeled graph plus one unbalanced loop per vertex (the frame). For the
/// trivial group the loops stay unbalanced while every nonloop cycle is
/// balanced, realized by labeling loops with the involution of Z_2; this
/// is the bias whose frame matroid is the complete-graph matroid one rank
/// higher, with the size formula `|G| * C(k,2) + k` intact.
pub fn dowling(k: usize, group: &FiniteGroup, budget: &Budget) -> Result<(FramedMatroid, GeometryLabel)> {
    if group.order() >= 2 && k < 3 {
        return Err(Error::Precondition(format!(
            "Dowling geometries over a nontrivial group need rank >= 3, got {k}"
        )));
    }
    if k < 1 {
        return Err(Error::Precondition("Dowling geometries need rank >= 1".into()));
    }
    let t = group.order();
    let mut annotations = Vec::new();
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for l in 0..t {
                edges.push((i, j, l));
                annotations.push(ElementRole::Edge { i, j, label: l });
            }
        }
    }
    let loop_label = if t >= 2 { 1 } else { 0 };
    for v in 0..k {
        edges.push((v, v, loop_label));
        annotations.push(ElementRole::Joint { vertex: v });
    }
    let matroid = if t >= 2 {
        let labeled = GroupLabeledGraph::new(k, edges, group.clone())?;
        frame_matroid_of(&balanced_cycles(&labeled, budget)?, budget)?
    } else {
        // trivial group: all cross edges identity, loops forced unbalanced
        let z2 = cyclic_group(2);
        let relabeled: Vec<(usize, usize, usize)> =
            edges.iter().map(|&(a, b, _)| (a, b, usize::from(a == b))).collect();
        let labeled = GroupLabeledGraph::new(k, relabeled, z2)?;
        frame_matroid_of(&balanced_cycles(&labeled, budget)?, budget)?
    };
    let cross = t * k * (k - 1) / 2;
    let frame = ElemSet::from_iter(cross..cross + k);
    let label = GeometryLabel {
        kind: GeometryKind::Dowling,
        k,
        group: Some(group.name().to_string()),
        field: None,
        annotations,
    };
    Ok((FramedMatroid { matroid, frame }, label))
}

/// DG(k, G) with the frame deleted.
pub fn dowling_minus(k: usize, group: &FiniteGroup, budget: &Budget) -> Result<(Matroid, GeometryLabel)> {
    let (framed, label) = dowling(k, group, budget)?;
    let m = framed.matroid.delete(framed.frame);
    let annotations = label
        .annotations
        .iter()
        .filter(|r| matches!(r, ElementRole::Edge { .. }))
        .cloned()
        .collect();
    Ok((
        m,
        GeometryLabel { kind: GeometryKind::DowlingMinus, annotations, ..label },
    ))
}

/// The rank-k lift geometry LG(k, G), or the extended lift LG+(k, G) with
/// its extension point `e0` as the last element. For the trivial group the
/// plain lift geometry is the cycle matroid of `K_{k+1}`.
pub fn lift_geometry(
    k: usize,
    group: &FiniteGroup,
    extended: bool,
    budget: &Budget,
) -> Result<(Matroid, GeometryLabel)> {
    if k < 3 {
        return Err(Error::Precondition(format!("lift geometries need rank >= 3, got {k}")));
    }
    if group.is_trivial() && !extended {
        let (m, mut label) = complete_graph_matroid(k + 1, budget)?;
        label.kind = GeometryKind::Lift;
        label.k = k;
        label.group = Some(group.name().to_string());
        return Ok((m, label));
    }
    let labeled = complete_labeled_graph(k, group);
    let bias = balanced_cycles(&labeled, budget)?;
    let m = lift_matroid_of(&bias, extended, budget)?;
    let mut annotations = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for l in 0..group.order() {
                annotations.push(ElementRole::Edge { i, j, label: l });
            }
        }
    }
    if extended {
        annotations.push(ElementRole::ExtensionPoint);
    }
    let label = GeometryLabel {
        kind: if extended { GeometryKind::LiftPlus } else { GeometryKind::Lift },
        k,
        group: Some(group.name().to_string()),
        field: None,
        annotations,
    };
    Ok((m, label))
}

/// Element id of `e0` in an extended lift geometry built here.
pub fn lift_extension_point(label: &GeometryLabel) -> Option<usize> {
    label.annotations.iter().position(|r| matches!(r, ElementRole::ExtensionPoint))
}

/// The rank-(dim+1) projective geometry PG(dim, q): one column per point.
pub fn projective_geometry(dim: usize, q: usize, budget: &Budget) -> Result<(Matroid, GeometryLabel)> {
    let _ = budget;
    let field = SmallField::new(q)?;
    let r = dim + 1;
    let mut points: Vec<Vec<u8>> = Vec::new();
    let mut stack = vec![0usize; r];
    'outer: loop {
        let v: Vec<u8> = stack.iter().map(|&x| x as u8).collect();
        if let Some(lead) = v.iter().position(|&x| x != 0) {
            if v[lead] == 1 {
                points.push(v.clone());
            }
        }
        for i in (0..r).rev() {
            if stack[i] + 1 < q {
                stack[i] += 1;
                continue 'outer;
            }
            stack[i] = 0;
            if i == 0 {
                break 'outer;
            }
        }
    }
    let n = points.len();
    let mut entries = vec![0u8; r * n];
    for (c, p) in points.iter().enumerate() {
        for row in 0..r {
            entries[row * n + c] = p[row];
        }
    }
    let m = Matroid::from_gf_matrix(field, r, n, entries)?;
    let annotations = (0..n).map(|i| ElementRole::Point { index: i }).collect();
    let label = GeometryLabel {
        kind: GeometryKind::Projective,
        k: r,
        group: None,
        field: Some(q),
        annotations,
    };
    Ok((m, label))
}

/// The Fano plane PG(2, 2).
pub fn fano(budget: &Budget) -> Result<Matroid> {
    Ok(projective_geometry(2, 2, budget)?.0)
}

/// Real cyclic Dowling matrix: standard basis vectors plus all `b_i - z^s b_j`
/// for a primitive (t-1)-st root of unity `z`. Only `t - 1 in {1, 2}` keeps
/// the entries real (z in {1, -1}); larger orders are served by [`dowling`].
pub fn cyclic_dowling_matrix(r: usize, t_minus_1: usize) -> Result<IntegerMatrix> {
    if !(t_minus_1 == 1 || t_minus_1 == 2) {
        return Err(Error::Unsupported(
            "cyclic Dowling matrices with complex roots are out of numeric scope; use dowling()".into(),
        ));
    }
    if r < 1 {
        return Err(Error::Precondition("rank must be positive".into()));
    }
    let cols = r + t_minus_1 * r * (r - 1) / 2;
    let mut m = IntegerMatrix::new(r, cols, vec![0; r * cols])?;
    for i in 0..r {
        m.set(i, i, 1);
    }
    let mut c = r;
    for i in 0..r {
        for j in i + 1..r {
            for s in 0..t_minus_1 {
                // z = -1 when t-1 = 2, z = 1 when t-1 = 1; column b_i - z^s b_j
                let z_pow: i64 = if t_minus_1 == 2 && s == 1 { -1 } else { 1 };
                m.set(i, c, 1);
                m.set(j, c, -z_pow);
                c += 1;
            }
        }
    }
    Ok(m)
}

/// Each pair of frame elements lies on a common long line (three or more
/// points).
pub fn is_b_clique(f: &FramedMatroid, _budget: &Budget) -> Result<bool> {
    if !f.is_valid() {
        return Ok(false);
    }
    let m = &f.matroid;
    let frame: Vec<usize> = f.frame.iter().collect();
    for (i, &b1) in frame.iter().enumerate() {
        for &b2 in &frame[i + 1..] {
            let line = m.closure(ElemSet::from_iter([b1, b2]));
            let points = m.restrict(line).epsilon();
            if points < 3 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `si(M/e)` is a complete-graph matroid and every parallel class of `M/e`
/// has exactly two elements.
pub fn is_doubled_clique(m: &Matroid, e: usize, budget: &Budget) -> Result<bool> {
    if !m.ground().contains(e) || !m.is_simple() {
        return Ok(false);
    }
    let contracted = m.contract(ElemSet::singleton(e));
    if contracted.parallel_classes().iter().any(|c| c.len() != 2) {
        return Ok(false);
    }
    let si = contracted.simplify().matroid;
    let n = si.full_rank() + 1;
    if n < 3 {
        return Ok(false);
    }
    let (kn, _) = complete_graph_matroid(n, budget)?;
    Ok(crate::matroid::is_isomorphic(&si, &kn, budget)?.is_some())
}

/// Why the Kahn-Kung hypotheses reject a framed matroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KahnKungRefutation {
    RankBelowFour,
    NotSimple,
    NotFramed,
    /// some cross line has the wrong number of points
    CrossLineLength { b1: usize, b2: usize, got: usize, expected: usize },
    /// contracting `e` exposes a line with `t + 3` points
    ContractionLongLine { e: usize },
}

#[derive(Clone, Debug)]
pub enum KahnKungOutcome {
    Group(FiniteGroup),
    Refuted(KahnKungRefutation),
}

/// Kahn-Kung identification: a simple rank->=4 B-clique whose cross lines
/// all have `t + 2` points and whose single-element contractions have no
/// `(t+3)`-point line is a Dowling geometry; the group is recovered from
/// the induced biased graph.
pub fn kahn_kung_identify(
    f: &FramedMatroid,
    t: usize,
    budget: &Budget,
) -> Result<KahnKungOutcome> {
    use KahnKungRefutation::*;
    let m = &f.matroid;
    if m.full_rank() < 4 {
        return Ok(KahnKungOutcome::Refuted(RankBelowFour));
    }
    if !m.is_simple() {
        return Ok(KahnKungOutcome::Refuted(NotSimple));
    }
    if !f.is_valid() {
        return Ok(KahnKungOutcome::Refuted(NotFramed));
    }
    let frame: Vec<usize> = f.frame.iter().collect();
    let vertex_of = |b: usize| frame.iter().position(|&x| x == b).unwrap();
    // cross lines carry exactly t + 2 elements (the two joints plus t more)
    for (i, &b1) in frame.iter().enumerate() {
        for &b2 in &frame[i + 1..] {
            let line = m.closure(ElemSet::from_iter([b1, b2]));
            if line.len() != t + 2 {
                return Ok(KahnKungOutcome::Refuted(CrossLineLength {
                    b1,
                    b2,
                    got: line.len(),
                    expected: t + 2,
                }));
            }
        }
    }
    // no single-element contraction exposes a (t+3)-point line
    for e in m.ground().iter() {
        let si = m.contract(ElemSet::singleton(e)).simplify().matroid;
        let longest = si.lines(budget)?.iter().map(|l| l.len()).max().unwrap_or(0);
        if longest >= t + 3 {
            return Ok(KahnKungOutcome::Refuted(ContractionLongLine { e }));
        }
    }
    // induced biased graph on the frame: each non-frame element is an edge
    // between the unique frame pair spanning it
    let mut edge_elems: Vec<usize> = Vec::new();
    let mut endpoints: Vec<(usize, usize)> = Vec::new();
    for e in m.ground().difference(f.frame).iter() {
        let mut found = None;
        'pairs: for (i, &b1) in frame.iter().enumerate() {
            for &b2 in &frame[i + 1..] {
                if m.rank(ElemSet::from_iter([b1, b2, e])) == 2 {
                    found = Some((vertex_of(b1), vertex_of(b2)));
                    break 'pairs;
                }
            }
        }
        match found {
            Some(pair) => {
                endpoints.push(pair);
                edge_elems.push(e);
            }
            None => return Ok(KahnKungOutcome::Refuted(NotFramed)),
        }
    }
    let graph = MultiGraph::new(frame.len(), endpoints)?;
    let all_cycles = graph.all_cycles(budget)?;
    let mut family = Vec::new();
    for c in &all_cycles {
        let elems: ElemSet = c.edges.iter().map(|i| edge_elems[i]).collect();
        // a cycle is balanced exactly when its element set is a circuit
        if m.rank(elems) == elems.len() - 1 {
            family.push(c.edges);
        }
    }
    let bias = BiasedGraph::from_family(graph, &family, budget)?;
    let (group, _) = recover_group_labeling(&bias, t, budget)?;
    Ok(KahnKungOutcome::Group(group))
}

/// Frame recovery after deleting the frame: contracting two elements of one
/// cross line of DG(k, G) leaves a matroid whose simplification is the
/// rank-(k-2) Dowling geometry; for the trivial group nothing needs to be
/// contracted.
pub fn jointless_recovery_check(k: usize, group: &FiniteGroup, budget: &Budget) -> Result<bool> {
    if group.is_trivial() {
        let (g, _) = dowling_minus(k, group, budget)?;
        let (target, _) = dowling(k - 1, group, budget)?;
        return Ok(crate::matroid::is_isomorphic(&g, &target.matroid, budget)?.is_some());
    }
    if k < 5 {
        return Err(Error::Precondition("frame recovery check needs rank >= 5".into()));
    }
    let (g, label) = dowling_minus(k, group, budget)?;
    // the first two parallel edges between vertices 0 and 1
    let pair: Vec<usize> = label
        .annotations
        .iter()
        .enumerate()
        .filter(|(_, role)| matches!(role, ElementRole::Edge { i: 0, j: 1, .. }))
        .map(|(e, _)| e)
        .take(2)
        .collect();
    let contracted = g.contract(ElemSet::from_iter(pair.iter().copied()));
    let si = contracted.simplify().matroid;
    if si.full_rank() != k - 2 {
        return Ok(false);
    }
    let (target, _) = dowling(k - 2, group, budget)?;
    Ok(crate::matroid::is_isomorphic(&si, &target.matroid, budget)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{direct_product, group_isomorphic};
    use crate::matroid::is_isomorphic;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn all_balanced_bias_gives_cycle_matroid() {
        let g = complete_labeled_graph(4, &cyclic_group(1));
        let bias = balanced_cycles(&g, &b()).unwrap();
        let m = frame_matroid_of(&bias, &b()).unwrap();
        assert_eq!(m.full_rank(), 3);
        let circuits = m.circuits(None, &b()).unwrap();
        assert_eq!(circuits.len(), 7); // 4 triangles + 3 four-cycles of K_4
        let lifted = lift_matroid_of(&bias, false, &b()).unwrap();
        for s in m.ground().subsets() {
            assert_eq!(m.rank(s), lifted.rank(s));
        }
    }

    #[test]
    fn isolated_unbalanced_loops_frame_vs_lift() {
        // two unbalanced loops at distinct vertices: independent in the
        // frame matroid, a circuit in the lift matroid
        let g = GroupLabeledGraph::new(2, vec![(0, 0, 1), (1, 1, 1)], cyclic_group(2)).unwrap();
        let bias = balanced_cycles(&g, &b()).unwrap();
        let frame = frame_matroid_of(&bias, &b()).unwrap();
        assert_eq!(frame.full_rank(), 2);
        let lift = lift_matroid_of(&bias, false, &b()).unwrap();
        assert_eq!(lift.rank(ElemSet::full(2)), 1);
        assert_eq!(lift.circuits(None, &b()).unwrap(), vec![ElemSet::full(2)]);
    }

    #[test]
    fn two_loops_at_one_vertex_are_a_frame_circuit() {
        let g = GroupLabeledGraph::new(1, vec![(0, 0, 1), (0, 0, 2)], cyclic_group(3)).unwrap();
        let bias = balanced_cycles(&g, &b()).unwrap();
        let m = frame_matroid_of(&bias, &b()).unwrap();
        assert_eq!(m.circuits(None, &b()).unwrap(), vec![ElemSet::full(2)]);
    }

    #[test]
    fn frame_construction_rejects_theta_violations() {
        let g = MultiGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap();
        let fam = vec![ElemSet::from_iter([0, 1]), ElemSet::from_iter([0, 2])];
        let bias = BiasedGraph::from_family(g, &fam, &b()).unwrap();
        assert!(matches!(frame_matroid_of(&bias, &b()), Err(Error::ThetaViolated)));
        assert!(matches!(lift_matroid_of(&bias, false, &b()), Err(Error::ThetaViolated)));
    }

    #[test]
    fn extended_lift_contracts_to_graphic() {
        let (m, label) = lift_geometry(3, &cyclic_group(2), true, &b()).unwrap();
        let e0 = lift_extension_point(&label).unwrap();
        let contracted = m.contract(ElemSet::singleton(e0)).simplify().matroid;
        let (k3, _) = complete_graph_matroid(3, &b()).unwrap();
        assert!(is_isomorphic(&contracted, &k3, &b()).unwrap().is_some());
    }

    #[test]
    fn dowling_size_formula() {
        let z3 = cyclic_group(3);
        let (f, _) = dowling(4, &z3, &b()).unwrap();
        assert_eq!(f.matroid.size(), 3 * 6 + 4);
        assert_eq!(f.matroid.full_rank(), 4);
        assert!(f.matroid.is_simple());
    }

    #[test]
    fn trivial_dowling_is_complete_graph() {
        let (f, _) = dowling(3, &cyclic_group(1), &b()).unwrap();
        let (k4, _) = complete_graph_matroid(4, &b()).unwrap();
        assert!(is_isomorphic(&f.matroid, &k4, &b()).unwrap().is_some());
    }

    #[test]
    fn dowling_contraction_collapses_rank() {
        // si(DG(4, Z2)/e) is DG(3, Z2) for any element e
        let z2 = cyclic_group(2);
        let (f, _) = dowling(4, &z2, &b()).unwrap();
        let (target, _) = dowling(3, &z2, &b()).unwrap();
        let e = f.matroid.ground().min().unwrap();
        let si = f.matroid.contract(ElemSet::singleton(e)).simplify().matroid;
        assert!(is_isomorphic(&si, &target.matroid, &b()).unwrap().is_some());
    }

    #[test]
    fn dowling_minus_of_trivial_group_is_smaller_clique() {
        let (g, _) = dowling_minus(4, &cyclic_group(1), &b()).unwrap();
        let (k4, _) = complete_graph_matroid(4, &b()).unwrap();
        assert!(is_isomorphic(&g, &k4, &b()).unwrap().is_some());
    }

    #[test]
    fn dowling_minus_balanced_circuits_avoid_frame_closure() {
        // circuits of DG-(3, Z2) are balanced exactly when their closure in
        // DG(3, Z2) misses the frame
        let z2 = cyclic_group(2);
        let (f, label) = dowling(3, &z2, &b()).unwrap();
        let cross: ElemSet = label
            .annotations
            .iter()
            .enumerate()
            .filter(|(_, r)| matches!(r, ElementRole::Edge { .. }))
            .map(|(e, _)| e)
            .collect();
        let g = f.matroid.restrict(cross);
        for c in g.circuits(None, &b()).unwrap() {
            let balanced = g.rank(c) == c.len() - 1 && c.len() == 3; // triangles are the balanced circuits here
            let closure_in_dg = f.matroid.closure(c);
            let meets_frame = !closure_in_dg.is_disjoint(f.frame);
            if balanced {
                assert!(!meets_frame, "balanced circuit {c} spans a joint");
            } else {
                assert!(meets_frame, "unbalanced circuit {c} misses the frame");
            }
        }
    }

    #[test]
    fn lift_geometry_sizes() {
        let z2 = cyclic_group(2);
        let (m, _) = lift_geometry(3, &z2, true, &b()).unwrap();
        assert_eq!(m.size(), 2 * 3 + 1);
        assert_eq!(m.full_rank(), 3);
        let (plain, _) = lift_geometry(4, &z2, false, &b()).unwrap();
        assert_eq!(plain.size(), 2 * 6);
    }

    #[test]
    fn trivial_lift_geometry_is_a_clique() {
        let (m, _) = lift_geometry(3, &cyclic_group(1), false, &b()).unwrap();
        let (k4, _) = complete_graph_matroid(4, &b()).unwrap();
        assert!(is_isomorphic(&m, &k4, &b()).unwrap().is_some());
    }

    #[test]
    fn lift_plus_z2_rank3_is_fano() {
        let (m, _) = lift_geometry(3, &cyclic_group(2), true, &b()).unwrap();
        let f7 = fano(&b()).unwrap();
        assert!(is_isomorphic(&m, &f7, &b()).unwrap().is_some());
    }

    #[test]
    fn projective_plane_sizes() {
        let (pg22, _) = projective_geometry(2, 2, &b()).unwrap();
        assert_eq!(pg22.size(), 7);
        assert_eq!(pg22.epsilon(), 7);
        let lines = pg22.lines(&b()).unwrap();
        assert_eq!(lines.len(), 7);
        assert!(lines.iter().all(|l| l.len() == 3));
        let (pg23, _) = projective_geometry(2, 3, &b()).unwrap();
        assert_eq!(pg23.size(), 13);
    }

    #[test]
    fn cyclic_matrix_shapes_and_matroids() {
        let m31 = cyclic_dowling_matrix(3, 1).unwrap();
        assert_eq!(m31.cols(), 6);
        let mat = Matroid::from_backend(Backend::from_int_matrix(m31)).unwrap();
        let (k4, _) = complete_graph_matroid(4, &b()).unwrap();
        assert!(is_isomorphic(&mat, &k4, &b()).unwrap().is_some());

        let m32 = cyclic_dowling_matrix(3, 2).unwrap();
        assert_eq!(m32.cols(), 3 + 6);
        let mat2 = Matroid::from_backend(Backend::from_int_matrix(m32)).unwrap();
        let (dg, _) = dowling(3, &cyclic_group(2), &b()).unwrap();
        assert!(is_isomorphic(&mat2, &dg.matroid, &b()).unwrap().is_some());

        assert_eq!(cyclic_dowling_matrix(4, 2).unwrap().cols(), 4 + 2 * 6);
        assert!(cyclic_dowling_matrix(3, 3).is_err());
    }

    #[test]
    fn dowling_is_a_b_clique() {
        let (f, _) = dowling(3, &cyclic_group(2), &b()).unwrap();
        assert!(is_b_clique(&f, &b()).unwrap());
    }

    #[test]
    fn free_matroid_is_not_a_b_clique() {
        let m = Matroid::uniform(3, 3);
        let f = FramedMatroid { matroid: m, frame: ElemSet::full(3) };
        assert!(!is_b_clique(&f, &b()).unwrap());
    }

    #[test]
    fn lift_plus_is_doubled_clique_at_e0() {
        let (m, label) = lift_geometry(3, &cyclic_group(2), true, &b()).unwrap();
        let e0 = lift_extension_point(&label).unwrap();
        assert!(is_doubled_clique(&m, e0, &b()).unwrap());
    }

    #[test]
    fn kahn_kung_roundtrip_z2() {
        let z2 = cyclic_group(2);
        let (f, _) = dowling(4, &z2, &b()).unwrap();
        match kahn_kung_identify(&f, 2, &b()).unwrap() {
            KahnKungOutcome::Group(g) => assert!(group_isomorphic(&g, &z2).unwrap()),
            KahnKungOutcome::Refuted(r) => panic!("unexpected refutation {r:?}"),
        }
    }

    #[test]
    fn kahn_kung_roundtrip_trivial() {
        let (f, _) = dowling(4, &cyclic_group(1), &b()).unwrap();
        match kahn_kung_identify(&f, 1, &b()).unwrap() {
            KahnKungOutcome::Group(g) => assert_eq!(g.order(), 1),
            KahnKungOutcome::Refuted(r) => panic!("unexpected refutation {r:?}"),
        }
    }

    #[test]
    fn kahn_kung_detects_missing_cross_element() {
        let z3 = cyclic_group(3);
        let (f, label) = dowling(4, &z3, &b()).unwrap();
        let victim = label
            .annotations
            .iter()
            .position(|r| matches!(r, ElementRole::Edge { .. }))
            .unwrap();
        let m = f.matroid.delete(ElemSet::singleton(victim));
        let framed = FramedMatroid { matroid: m, frame: f.frame };
        match kahn_kung_identify(&framed, 3, &b()).unwrap() {
            KahnKungOutcome::Refuted(KahnKungRefutation::CrossLineLength { got, expected, .. }) => {
                assert_eq!(got + 1, expected);
            }
            other => panic!("expected a cross-line refutation, got {other:?}"),
        }
    }

    #[test]
    fn jointless_recovery_small_cases() {
        assert!(jointless_recovery_check(5, &cyclic_group(2), &b()).unwrap());
        assert!(jointless_recovery_check(5, &cyclic_group(1), &b()).unwrap());
    }

    #[test]
    fn subgroup_gives_dowling_restriction() {
        // Z2 inside Z4: the restriction to edges labeled by the subgroup
        // plus all joints is DG(3, Z2)
        let z4 = cyclic_group(4);
        let (f, label) = dowling(3, &z4, &b()).unwrap();
        let keep: ElemSet = label
            .annotations
            .iter()
            .enumerate()
            .filter(|(_, r)| match r {
                ElementRole::Edge { label, .. } => *label == 0 || *label == 2,
                ElementRole::Joint { .. } => true,
                _ => false,
            })
            .map(|(e, _)| e)
            .collect();
        let sub = f.matroid.restrict(keep);
        let (dg2, _) = dowling(3, &cyclic_group(2), &b()).unwrap();
        assert!(is_isomorphic(&sub, &dg2.matroid, &b()).unwrap().is_some());
    }

    #[test]
    fn dowling_groups_distinguish_matroids() {
        // DG(3, Z4) and DG(3, Z2 x Z2) are not isomorphic
        let z4 = cyclic_group(4);
        let v4 = direct_product(&cyclic_group(2), &cyclic_group(2)).unwrap();
        let (a, _) = dowling(3, &z4, &b()).unwrap();
        let (c, _) = dowling(3, &v4, &b()).unwrap();
        assert!(is_isomorphic(&a.matroid, &c.matroid, &b()).unwrap().is_none());
    }
}
