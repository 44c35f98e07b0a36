//! Structural predicates: spikes, porcupines, stars and star-partitions,
//! stacks, and Reid geometries with their incidence graphs.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::geometries::{ElementRole, GeometryKind, GeometryLabel};
use crate::gf::SmallField;
use crate::graph::MultiGraph;
use crate::matroid::Matroid;
use crate::set::ElemSet;

/// Simple matroid with a tip whose contraction simplifies to a single
/// circuit, all parallel classes of the contraction having size two.
pub fn is_spike(m: &Matroid, tip: usize) -> bool {
    if !m.ground().contains(tip) || !m.is_simple() {
        return false;
    }
    let c = m.contract(ElemSet::singleton(tip));
    if c.parallel_classes().iter().any(|cls| cls.len() != 2) {
        return false;
    }
    let si = c.simplify().matroid;
    // a single circuit: the whole ground is dependent, everything else free
    si.size() >= 1
        && si.full_rank() == si.size() - 1
        && si
            .ground()
            .subsets_of_size(si.size() - 1)
            .iter()
            .all(|&s| si.rank(s) == s.len())
}

/// The rank-r free spike: tip `0`, legs `(i, r+i)` for `i in 1..=r`, with
/// no transversal dependencies. Built over GF(p) for the smallest prime
/// `p > r + 1`, where unit leg coefficients keep every transversal free.
pub fn free_spike(r: usize) -> Result<(Matroid, usize)> {
    if r < 3 {
        return Err(Error::Precondition("spikes need rank >= 3".into()));
    }
    let p = (r + 2..).find(|&n| (2..n).all(|d| n % d != 0)).unwrap();
    let field = SmallField::new(p)?;
    let cols = 1 + 2 * r;
    let mut entries = vec![0u8; r * cols];
    for row in 0..r {
        entries[row * cols] = 1; // tip: all-ones column
        entries[row * cols + 1 + row] = 1; // x_i = e_i
        for row2 in 0..r {
            // y_i = z + e_i
            entries[row2 * cols + 1 + r + row] = if row2 == row { 2 } else { 1 };
        }
    }
    let m = Matroid::from_gf_matrix(field, r, cols, entries)?;
    Ok((m, 0))
}

/// Preporcupine: every line through the tip has at least three points and
/// the simplified contraction has girth at least `g`.
pub fn is_g_preporcupine(m: &Matroid, tip: usize, g: usize, budget: &Budget) -> Result<bool> {
    if !m.ground().contains(tip) {
        return Ok(false);
    }
    for line in m.lines(budget)? {
        if line.contains(tip) && m.restrict(line).epsilon() < 3 {
            return Ok(false);
        }
    }
    let si = m.contract(ElemSet::singleton(tip)).simplify().matroid;
    Ok(si.girth(budget)?.is_none_or(|girth| girth >= g))
}

/// Porcupine: a simple preporcupine whose tip-lines have exactly three
/// points and whose simplified contraction has no coloops.
pub fn is_g_porcupine(m: &Matroid, tip: usize, g: usize, budget: &Budget) -> Result<bool> {
    if !m.ground().contains(tip) || !m.is_simple() {
        return Ok(false);
    }
    for line in m.lines(budget)? {
        if line.contains(tip) && line.len() != 3 {
            return Ok(false);
        }
    }
    let si = m.contract(ElemSet::singleton(tip)).simplify().matroid;
    if !si.coloops().is_empty() {
        return Ok(false);
    }
    Ok(si.girth(budget)?.is_none_or(|girth| girth >= g))
}

/// Corank of the simplified tip contraction.
pub fn porcupine_d(m: &Matroid, tip: usize) -> usize {
    let si = m.contract(ElemSet::singleton(tip)).simplify().matroid;
    si.size() - si.full_rank()
}

/// Star: some basis `B + {t}` has every element on a line through `t` and a
/// basis element. Exhaustive over bases extending the tip.
pub fn is_star(m: &Matroid, tip: usize, budget: &Budget) -> Result<bool> {
    if !m.ground().contains(tip) {
        return Ok(false);
    }
    let r = m.full_rank();
    let tipset = ElemSet::singleton(tip);
    if m.rank(tipset) == 0 {
        return Ok(false);
    }
    if r == 1 {
        // every element is parallel to the tip
        return Ok(m.ground().iter().all(|e| m.rank(tipset.with(e)) <= 1));
    }
    let rest = m.ground().without(tip);
    for b in rest.subsets_of_size(r - 1) {
        budget.charge("star search", 1)?;
        if m.rank(b.with(tip)) != r {
            continue;
        }
        let covered = m.ground().iter().all(|e| {
            b.iter().any(|bb| m.rank(ElemSet::from_iter([tip, bb, e])) <= 2)
        });
        if covered {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Star with given line lengths through a shared tip, as a GF(p) matroid.
/// Returns the matroid and its tip (element 0).
pub fn make_star(line_lengths: &[usize]) -> Result<(Matroid, usize)> {
    if line_lengths.is_empty() || line_lengths.iter().any(|&l| l < 2) {
        return Err(Error::Precondition("each star line needs at least two points".into()));
    }
    let max_len = *line_lengths.iter().max().unwrap();
    let p = (max_len.max(4)..).find(|&n| (2..n).all(|d| n % d != 0)).unwrap();
    let field = SmallField::new(p)?;
    let k = line_lengths.len();
    let r = k + 1;
    let cols = 1 + line_lengths.iter().map(|&l| l - 1).sum::<usize>();
    let mut entries = vec![0u8; r * cols];
    entries[0] = 1; // tip = e_0
    let mut c = 1;
    for (i, &len) in line_lengths.iter().enumerate() {
        // basis point of line i
        entries[(i + 1) * cols + c] = 1;
        c += 1;
        for extra in 1..len - 1 {
            // further points e_{i+1} + extra * e_0
            entries[(i + 1) * cols + c] = 1;
            entries[c] = extra as u8;
            c += 1;
        }
    }
    let m = Matroid::from_gf_matrix(field, r, cols, entries)?;
    Ok((m, 0))
}

/// Partition of the ground set into a rank-at-most-one part and pairwise
/// coplanar line flats.
#[derive(Clone, Debug)]
pub struct StarPartition {
    pub x: ElemSet,
    pub lines: Vec<ElemSet>,
}

/// Structural validity: `r(X) <= 1`, the lines partition `E - X`, each
/// `L + X` is a flat of rank at most two, and any two lines are coplanar.
pub fn star_partition_valid(m: &Matroid, sp: &StarPartition) -> bool {
    if m.rank(sp.x) > 1 {
        return false;
    }
    let mut seen = sp.x;
    for l in &sp.lines {
        if l.is_empty() || !l.is_disjoint(seen) {
            return false;
        }
        seen = seen.union(*l);
        let lx = l.union(sp.x);
        if m.rank(lx) > 2 || m.closure(lx) != lx {
            return false;
        }
    }
    if seen != m.ground() {
        return false;
    }
    for (i, &l1) in sp.lines.iter().enumerate() {
        for &l2 in &sp.lines[i + 1..] {
            if m.rank(l1.union(l2)) > 3 {
                return false;
            }
        }
    }
    true
}

/// Every circuit lies inside `X + L + L'` for some two lines.
pub fn star_partition_covers_circuits(
    m: &Matroid,
    sp: &StarPartition,
    budget: &Budget,
) -> Result<bool> {
    for c in m.circuits(None, budget)? {
        let covered = sp.lines.iter().enumerate().any(|(i, &l1)| {
            sp.lines[i..].iter().any(|&l2| c.is_subset(sp.x.union(l1).union(l2)))
        });
        if !covered {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Search for a star-partition whose two-line unions cover every circuit:
/// first a partition around an element on two long lines, then partitions
/// from a parallel-pair of a circuit, as in restrictions of stars.
pub fn find_star_partition(m: &Matroid, budget: &Budget) -> Result<Option<StarPartition>> {
    if m.full_rank() <= 2 {
        let sp = StarPartition { x: ElemSet::EMPTY, lines: vec![m.ground()] };
        if star_partition_valid(m, &sp) && star_partition_covers_circuits(m, &sp, budget)? {
            return Ok(Some(sp));
        }
    }
    let lines = m.lines(budget)?;
    // an element on two long lines pins X = {x}
    for x in m.ground().iter() {
        let long_through: Vec<ElemSet> = lines
            .iter()
            .copied()
            .filter(|l| l.contains(x) && m.restrict(*l).epsilon() >= 3)
            .collect();
        if long_through.len() < 2 {
            continue;
        }
        let part: Vec<ElemSet> = lines
            .iter()
            .filter(|l| l.contains(x))
            .map(|l| l.without(x))
            .filter(|l| !l.is_empty())
            .collect();
        let sp = StarPartition { x: ElemSet::singleton(x), lines: part };
        if star_partition_valid(m, &sp) && star_partition_covers_circuits(m, &sp, budget)? {
            return Ok(Some(sp));
        }
    }
    // pairs inside a circuit pin X = {} with the pair's closure as one line
    for c in m.circuits(None, budget)? {
        let elems: Vec<usize> = c.iter().collect();
        for (i, &e) in elems.iter().enumerate() {
            for &e2 in &elems[i + 1..] {
                budget.charge("star partition search", 1)?;
                let pair_line = m.closure(ElemSet::from_iter([e, e2]));
                let rest = m.contract(ElemSet::from_iter([e, e2]));
                let mut part = vec![pair_line];
                part.extend(rest.parallel_classes());
                let sp = StarPartition { x: ElemSet::EMPTY, lines: part };
                if star_partition_valid(m, &sp) && star_partition_covers_circuits(m, &sp, budget)? {
                    return Ok(Some(sp));
                }
            }
        }
    }
    Ok(None)
}

/// An ordered chain of disjoint pieces claimed to form a stack.
#[derive(Clone, Debug)]
pub struct StackWitness {
    pub parts: Vec<ElemSet>,
    pub rank_cap: usize,
}

/// Verify a stack witness: disjoint parts spanning the host, each piece
/// (after contracting its predecessors) of rank at most the cap and outside
/// the forbidden class according to `not_in_class`.
pub fn is_stack<F>(m: &Matroid, w: &StackWitness, mut not_in_class: F) -> Result<bool>
where
    F: FnMut(&Matroid) -> Result<bool>,
{
    if w.parts.is_empty() {
        return Ok(false);
    }
    let mut union = ElemSet::EMPTY;
    for p in &w.parts {
        if !p.is_disjoint(union) || !p.is_subset(m.ground()) {
            return Ok(false);
        }
        union = union.union(*p);
    }
    if m.rank(union) != m.full_rank() {
        return Ok(false);
    }
    let mut contracted = ElemSet::EMPTY;
    for p in &w.parts {
        let piece = m.contract(contracted).restrict(*p);
        if piece.full_rank() > w.rank_cap || !not_in_class(&piece)? {
            return Ok(false);
        }
        contracted = contracted.union(*p);
    }
    Ok(true)
}

/// The Reid geometry R(p): three concurrent lines, the third of length
/// three, whose incidence graph is the 2p-cycle. Elements: x=0, y=1, z=2,
/// then the p points of the first long line, then the p points of the
/// second.
pub fn reid_geometry(p: usize) -> Result<(Matroid, GeometryLabel)> {
    if p < 2 {
        return Err(Error::Precondition("Reid geometries need p >= 2".into()));
    }
    let n = 3 + 2 * p;
    let a = |i: usize| 3 + (i % p);
    let b = |i: usize| 3 + p + (i % p);
    let mut lines: Vec<ElemSet> = Vec::new();
    lines.push(ElemSet::from_iter((0..p).map(a)).with(0)); // L1
    lines.push(ElemSet::from_iter((0..p).map(b)).with(0)); // L2
    lines.push(ElemSet::from_iter([0, 1, 2])); // L3
    for i in 0..p {
        lines.push(ElemSet::from_iter([a(i), b(i), 1]));
        lines.push(ElemSet::from_iter([b(i), a(i + 1), 2]));
    }
    for (i, &l1) in lines.iter().enumerate() {
        for &l2 in &lines[i + 1..] {
            debug_assert!(l1.intersection(l2).len() <= 1, "lines must meet in at most a point");
        }
    }
    // rank-3 matroid of the line arrangement: dependent triples are the
    // collinear ones, and any quad free of them is a circuit
    let mut circuits: Vec<ElemSet> = Vec::new();
    for l in &lines {
        circuits.extend(l.subsets_of_size(3));
    }
    for quad in ElemSet::full(n).subsets_of_size(4) {
        if !circuits.iter().any(|&c| c.is_subset(quad)) {
            circuits.push(quad);
        }
    }
    let m = Matroid::from_circuits(n, circuits)?;
    let mut annotations = vec![
        ElementRole::Point { index: 0 },
        ElementRole::Point { index: 1 },
        ElementRole::Point { index: 2 },
    ];
    annotations.extend((3..n).map(|i| ElementRole::Point { index: i }));
    let label = GeometryLabel {
        kind: GeometryKind::Reid,
        k: p,
        group: None,
        field: None,
        annotations,
    };
    Ok((m, label))
}

/// Incidence graph of a Reid geometry presented by its three concurrent
/// lines and the two short-line points: vertices are the non-apex points of
/// the two long lines, adjacent when collinear with `y` or with `z`.
/// Returns the graph and the element id of each vertex.
pub fn reid_incidence_graph(
    m: &Matroid,
    l1: ElemSet,
    l2: ElemSet,
    x: usize,
    y: usize,
    z: usize,
) -> Result<(MultiGraph, Vec<usize>)> {
    if !l1.contains(x) || !l2.contains(x) {
        return Err(Error::Precondition("both long lines must pass through the apex".into()));
    }
    let side1: Vec<usize> = l1.without(x).iter().collect();
    let side2: Vec<usize> = l2.without(x).iter().collect();
    let vertices: Vec<usize> = side1.iter().chain(side2.iter()).copied().collect();
    let mut edges = Vec::new();
    for (i, &a) in side1.iter().enumerate() {
        for (j, &bb) in side2.iter().enumerate() {
            for w in [y, z] {
                if m.rank(ElemSet::from_iter([a, bb, w])) == 2 {
                    edges.push((i, side1.len() + j));
                }
            }
        }
    }
    Ok((MultiGraph::new(vertices.len(), edges)?, vertices))
}

/// Is the graph a single cycle on all its vertices of the given length?
pub fn is_cycle_of_length(g: &MultiGraph, len: usize) -> bool {
    if g.vertex_count() != len || g.edge_count() != len {
        return false;
    }
    let mut deg = vec![0usize; g.vertex_count()];
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        if u == v {
            return false;
        }
        deg[u] += 1;
        deg[v] += 1;
    }
    if deg.iter().any(|&d| d != 2) {
        return false;
    }
    g.components(g.all_edges()).len() == 1
}

/// Smallest `p` in the range for which `m` has an R(p)-minor.
pub fn has_reid_minor(
    m: &Matroid,
    range: std::ops::RangeInclusive<usize>,
    budget: &Budget,
) -> Result<Option<usize>> {
    for p in range {
        let (r, _) = reid_geometry(p)?;
        if r.size() > m.size() {
            continue;
        }
        if m.has_minor(&r, budget)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometries::{fano, lift_geometry};
    use crate::groups::cyclic_group;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn free_spike_rank3_is_a_spike() {
        let (s, tip) = free_spike(3).unwrap();
        assert!(is_spike(&s, tip));
        assert_eq!(s.size(), 7);
        assert_eq!(s.full_rank(), 3);
    }

    #[test]
    fn fano_is_a_binary_spike() {
        let f7 = fano(&b()).unwrap();
        for t in f7.ground().iter() {
            assert!(is_spike(&f7, t), "tip {t} fails");
        }
    }

    #[test]
    fn uniform_is_not_a_spike() {
        let m = Matroid::uniform(2, 4);
        for t in m.ground().iter() {
            assert!(!is_spike(&m, t));
        }
    }

    #[test]
    fn spike_is_porcupine_with_d_one() {
        let (s, tip) = free_spike(4).unwrap();
        assert!(is_g_porcupine(&s, tip, 3, &b()).unwrap());
        assert_eq!(porcupine_d(&s, tip), 1);
    }

    #[test]
    fn single_element_is_trivial_porcupine() {
        let m = Matroid::uniform(1, 1);
        assert!(is_g_porcupine(&m, 0, 5, &b()).unwrap());
        assert_eq!(porcupine_d(&m, 0), 0);
    }

    #[test]
    fn porcupine_girth_cutoff() {
        // rank-4 free spike: si(S/t) = U_{3,4}, girth 4
        let (s, tip) = free_spike(4).unwrap();
        let si = s.contract(ElemSet::singleton(tip)).simplify().matroid;
        let girth = si.girth(&b()).unwrap().unwrap();
        assert_eq!(girth, 4);
        assert!(is_g_porcupine(&s, tip, girth, &b()).unwrap());
        assert!(!is_g_porcupine(&s, tip, girth + 1, &b()).unwrap());
    }

    #[test]
    fn stars_recognized() {
        let (s, tip) = make_star(&[3, 3, 2]).unwrap();
        assert!(is_star(&s, tip, &b()).unwrap());
        // a single line through the tip
        let (line, tip2) = make_star(&[4]).unwrap();
        assert!(is_star(&line, tip2, &b()).unwrap());
    }

    #[test]
    fn fano_is_not_a_star() {
        let f7 = fano(&b()).unwrap();
        for t in f7.ground().iter() {
            assert!(!is_star(&f7, t, &b()).unwrap());
        }
    }

    #[test]
    fn star_circuits_live_on_two_lines() {
        let (s, tip) = make_star(&[3, 4, 3]).unwrap();
        let lines = s.lines(&b()).unwrap();
        let tip_lines: Vec<ElemSet> =
            lines.iter().copied().filter(|l| l.contains(tip)).collect();
        for c in s.circuits(None, &b()).unwrap() {
            assert!(c.len() < 5, "star circuit of size {}", c.len());
            let covered = tip_lines.iter().enumerate().any(|(i, &l1)| {
                tip_lines[i..].iter().any(|&l2| c.is_subset(l1.union(l2).with(tip)))
            });
            assert!(covered, "circuit {c} escapes every tip-line pair");
        }
    }

    #[test]
    fn star_partition_from_two_long_lines() {
        let (s, tip) = make_star(&[3, 3]).unwrap();
        let sub = s.delete(ElemSet::EMPTY); // simple restriction containing tip
        let sp = find_star_partition(&sub, &b()).unwrap().expect("partition exists");
        assert!(star_partition_valid(&sub, &sp));
        assert_eq!(sp.x, ElemSet::singleton(tip));
    }

    #[test]
    fn star_partition_absent_for_uniform_u36() {
        let m = Matroid::uniform(3, 6);
        assert!(find_star_partition(&m, &b()).unwrap().is_none());
    }

    #[test]
    fn star_partition_with_empty_x() {
        // a tipless star restriction: two disjoint lines of a star
        let (s, tip) = make_star(&[3, 3]).unwrap();
        let sub = s.delete(ElemSet::singleton(tip));
        let sp = find_star_partition(&sub, &b()).unwrap().expect("partition exists");
        assert!(star_partition_valid(&sub, &sp));
        assert!(star_partition_covers_circuits(&sub, &sp, &b()).unwrap());
    }

    #[test]
    fn stack_witness_accepts_simple_chain() {
        let m = Matroid::uniform(2, 4);
        let w = StackWitness { parts: vec![m.ground()], rank_cap: 2 };
        assert!(is_stack(&m, &w, |_| Ok(true)).unwrap());
    }

    #[test]
    fn stack_witness_rejects_overlap() {
        let m = Matroid::uniform(2, 4);
        let w = StackWitness {
            parts: vec![ElemSet::from_iter([0, 1]), ElemSet::from_iter([1, 2, 3])],
            rank_cap: 2,
        };
        assert!(!is_stack(&m, &w, |_| Ok(true)).unwrap());
    }

    #[test]
    fn reid_incidence_is_a_cycle() {
        for p in [2, 3, 5] {
            let (r, _) = reid_geometry(p).unwrap();
            assert_eq!(r.full_rank(), 3);
            assert_eq!(r.size(), 3 + 2 * p);
            let l1 = ElemSet::from_iter((0..p).map(|i| 3 + i)).with(0);
            let l2 = ElemSet::from_iter((0..p).map(|i| 3 + p + i)).with(0);
            let (g, _) = reid_incidence_graph(&r, l1, l2, 0, 1, 2).unwrap();
            assert!(is_cycle_of_length(&g, 2 * p), "I(R({p})) is not a 2p-cycle");
            // max degree two
            let mut deg = vec![0; g.vertex_count()];
            for e in 0..g.edge_count() {
                let (u, v) = g.endpoints(e);
                deg[u] += 1;
                deg[v] += 1;
            }
            assert!(deg.iter().all(|&d| d <= 2));
        }
    }

    #[test]
    fn reid_r2_is_fano() {
        let (r2, _) = reid_geometry(2).unwrap();
        assert_eq!(r2.size(), 7);
        let f7 = fano(&b()).unwrap();
        assert!(crate::matroid::is_isomorphic(&r2, &f7, &b()).unwrap().is_some());
    }

    #[test]
    fn lift_plus_z2_has_r2_restriction() {
        let (m, _) = lift_geometry(3, &cyclic_group(2), true, &b()).unwrap();
        assert_eq!(has_reid_minor(&m, 2..=4, &b()).unwrap(), Some(2));
    }

    #[test]
    fn graphic_k4_has_no_reid_minor() {
        let (k4, _) = crate::geometries::complete_graph_matroid(4, &b()).unwrap();
        assert_eq!(has_reid_minor(&k4, 2..=4, &b()).unwrap(), None);
    }

    #[test]
    fn rank5_free_spike_fails_star_everywhere() {
        let (s, _) = free_spike(5).unwrap();
        for t in s.ground().iter() {
            assert!(!is_star(&s, t, &b()).unwrap(), "tip {t} wrongly accepted");
        }
    }

    #[test]
    fn dowling_cross_lines_form_a_stack() {
        // cross lines of disjoint frame pairs: each piece survives the
        // contraction of its predecessors as a (t+2)-point line
        let (f, _) = crate::geometries::dowling(4, &cyclic_group(3), &b()).unwrap();
        let m = &f.matroid;
        let frame: Vec<usize> = f.frame.iter().collect();
        let p1 = m.closure(ElemSet::from_iter([frame[0], frame[1]]));
        let p2 = m.closure(ElemSet::from_iter([frame[2], frame[3]]));
        let w = StackWitness { parts: vec![p1, p2], rank_cap: 2 };
        let ok = is_stack(m, &w, |piece| piece.has_line_minor(4, &b())).unwrap();
        assert!(ok);
    }
}
