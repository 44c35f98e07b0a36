//! Independence oracles built directly from the biased-graph circuit rules,
//! kept independent of the rank-formula backends they cross-check. Only the
//! stored cycle list and connectivity are consulted.

use crate::glgraph::BiasedGraph;
use crate::graph::Cycle;
use crate::set::ElemSet;

fn cycles_within(b: &BiasedGraph, x: ElemSet) -> (Vec<&Cycle>, Vec<&Cycle>) {
    let mut balanced = Vec::new();
    let mut unbalanced = Vec::new();
    for (c, is_balanced) in b
        .cycles()
        .iter()
        .map(|c| (c, b.is_balanced_cycle(c.edges).unwrap()))
    {
        if c.edges.is_subset(x) {
            if is_balanced {
                balanced.push(c);
            } else {
                unbalanced.push(c);
            }
        }
    }
    (balanced, unbalanced)
}

fn same_component(b: &BiasedGraph, x: ElemSet, c1: &Cycle, c2: &Cycle) -> bool {
    b.graph()
        .components(x)
        .iter()
        .any(|(_, verts)| c1.vertices.is_subset(*verts) && c2.vertices.is_subset(*verts))
}

/// Dependence by the frame circuit rules: a balanced cycle; two unbalanced
/// cycles with a connecting path; two unbalanced cycles sharing one vertex;
/// or a theta with all cycles unbalanced. Two unbalanced cycles sharing two
/// or more vertices contain a theta whose cycles are all within `x`, and
/// with no balanced cycle in `x` that theta is fully unbalanced.
pub fn frame_independent(b: &BiasedGraph, x: ElemSet) -> bool {
    let (balanced, unbalanced) = cycles_within(b, x);
    if !balanced.is_empty() {
        return false;
    }
    for (i, c1) in unbalanced.iter().enumerate() {
        for c2 in &unbalanced[i + 1..] {
            if !c1.vertices.is_disjoint(c2.vertices) {
                return false; // tight handcuff or an all-unbalanced theta
            }
            if same_component(b, x, c1, c2) {
                return false; // loose handcuff
            }
        }
    }
    true
}

/// Dependence by the lift circuit rules: as for frames, except vertex-
/// disjoint unbalanced cycles need no connecting path.
pub fn lift_independent(b: &BiasedGraph, x: ElemSet) -> bool {
    let (balanced, unbalanced) = cycles_within(b, x);
    balanced.is_empty() && unbalanced.len() <= 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::glgraph::{balanced_cycles, GroupLabeledGraph};
    use crate::groups::cyclic_group;

    #[test]
    fn handcuff_cases() {
        // two unbalanced loops at the ends of a path
        let g = GroupLabeledGraph::new(
            2,
            vec![(0, 0, 1), (1, 1, 1), (0, 1, 0)],
            cyclic_group(2),
        )
        .unwrap();
        let b = balanced_cycles(&g, &Budget::default()).unwrap();
        let loops_only = ElemSet::from_iter([0, 1]);
        assert!(frame_independent(&b, loops_only));
        assert!(!lift_independent(&b, loops_only));
        let with_path = ElemSet::full(3);
        assert!(!frame_independent(&b, with_path));
    }

    #[test]
    fn balanced_cycle_is_dependent_everywhere() {
        let g = GroupLabeledGraph::new(3, vec![(0, 1, 0), (1, 2, 0), (0, 2, 0)], cyclic_group(2))
            .unwrap();
        let b = balanced_cycles(&g, &Budget::default()).unwrap();
        assert!(!frame_independent(&b, ElemSet::full(3)));
        assert!(!lift_independent(&b, ElemSet::full(3)));
        assert!(frame_independent(&b, ElemSet::from_iter([0, 1])));
    }
}
