//! Seeded instance generators for the verification suites. Everything is
//! deterministic given the seed.

use crate::error::Result;
use crate::gf::SmallField;
use crate::glgraph::GroupLabeledGraph;
use crate::groups::{cyclic_group, direct_product, FiniteGroup};
use crate::matroid::Matroid;
use crate::modular::IntegerMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small groups used by the desk-scale suites.
pub fn small_group_catalog() -> Vec<FiniteGroup> {
    let z2 = cyclic_group(2);
    let mut out: Vec<FiniteGroup> = (1..=4).map(cyclic_group).collect();
    out.push(direct_product(&z2, &z2).unwrap());
    out
}

/// Random column matroid over GF(2) or GF(3) with 7..=9 elements and rank
/// at least 2.
pub fn random_gf_matroid(rng: &mut ChaCha8Rng) -> Result<Matroid> {
    loop {
        let q = if rng.gen_bool(0.5) { 2 } else { 3 };
        let rows = rng.gen_range(3..=4);
        let cols = rng.gen_range(7..=9);
        let entries: Vec<u8> = (0..rows * cols).map(|_| rng.gen_range(0..q as u8)).collect();
        let m = Matroid::from_gf_matrix(SmallField::new(q)?, rows, cols, entries)?;
        if m.full_rank() >= 2 {
            return Ok(m);
        }
    }
}

/// Random group-labeled multigraph with at most 6 vertices and 12 edges.
/// Loops appear with small probability.
pub fn random_labeled_graph(rng: &mut ChaCha8Rng) -> Result<GroupLabeledGraph> {
    let groups = small_group_catalog();
    let group = groups[rng.gen_range(0..groups.len())].clone();
    let n = rng.gen_range(3..=6);
    let m = rng.gen_range(4..=12);
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let u = rng.gen_range(0..n);
        let v = if rng.gen_bool(0.1) { u } else { rng.gen_range(0..n) };
        let label = rng.gen_range(0..group.order());
        edges.push((u.min(v), u.max(v), label));
    }
    GroupLabeledGraph::new(n, edges, group)
}

/// Random integer matrix with entries in `[-bound, bound]`; optionally
/// resampled until it has full row rank.
pub fn random_int_matrix(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    bound: i64,
    full_row_rank: bool,
) -> Result<IntegerMatrix> {
    loop {
        let entries: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-bound..=bound)).collect();
        let m = IntegerMatrix::new(rows, cols, entries)?;
        if !full_row_rank || m.rank() == rows {
            return Ok(m);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let mut r1 = rng(42);
        let mut r2 = rng(42);
        let a = random_gf_matroid(&mut r1).unwrap();
        let c = random_gf_matroid(&mut r2).unwrap();
        assert_eq!(a.size(), c.size());
        assert_eq!(a.full_rank(), c.full_rank());
        for s in a.ground().subsets() {
            assert_eq!(a.rank(s), c.rank(s));
        }
    }
}
