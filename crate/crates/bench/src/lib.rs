//! Shared fixtures for the criterion benchmarks.

use matroid_forge_core::budget::Budget;
use matroid_forge_core::geometries::{dowling, FramedMatroid};
use matroid_forge_core::groups::cyclic_group;
use matroid_forge_core::matroid::Matroid;
use matroid_forge_core::set::ElemSet;

pub fn dowling_4_z3() -> FramedMatroid {
    let budget = Budget::default();
    dowling(4, &cyclic_group(3), &budget).expect("catalog geometry builds").0
}

pub fn fano() -> Matroid {
    matroid_forge_core::geometries::fano(&Budget::default()).expect("fano builds")
}

/// A deterministic mid-size query set over a ground set.
pub fn query_sets(ground: ElemSet, count: usize) -> Vec<ElemSet> {
    let elems: Vec<usize> = ground.iter().collect();
    (0..count)
        .map(|i| {
            ElemSet::from_iter(
                elems.iter().enumerate().filter(|(j, _)| (i * 7 + j * 13) % 3 != 0).map(|(_, &e)| e),
            )
        })
        .collect()
}
