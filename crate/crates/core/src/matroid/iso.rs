//! Matroid isomorphism by circuit matching: backtracking over element maps
//! with invariant pruning. Sound and complete because a bijection is an
//! isomorphism exactly when it carries the circuit family onto the other.

use super::Matroid;
use crate::budget::Budget;
use crate::error::Result;
use crate::set::{ElemSet, MAX_ELEMENTS};
use std::collections::HashSet;

/// Search for a ground-set bijection carrying independent sets to
/// independent sets. Returns the mapping as `(element of m1, element of m2)`
/// pairs, or `None` when the matroids are not isomorphic.
pub fn is_isomorphic(
    m1: &Matroid,
    m2: &Matroid,
    budget: &Budget,
) -> Result<Option<Vec<(usize, usize)>>> {
    if m1.size() != m2.size() || m1.full_rank() != m2.full_rank() {
        return Ok(None);
    }
    if m1.size() == 0 {
        return Ok(Some(Vec::new()));
    }
    let c1 = m1.circuits(None, budget)?;
    let c2 = m2.circuits(None, budget)?;
    if c1.len() != c2.len() {
        return Ok(None);
    }
    let mut sizes1: Vec<usize> = c1.iter().map(|c| c.len()).collect();
    let mut sizes2: Vec<usize> = c2.iter().map(|c| c.len()).collect();
    sizes1.sort_unstable();
    sizes2.sort_unstable();
    if sizes1 != sizes2 {
        return Ok(None);
    }

    // per-element profile: how many circuits of each size pass through it
    let profile = |elem: usize, circuits: &[ElemSet]| -> Vec<(usize, usize)> {
        let mut counts: std::collections::BTreeMap<usize, usize> = Default::default();
        for c in circuits.iter().filter(|c| c.contains(elem)) {
            *counts.entry(c.len()).or_default() += 1;
        }
        counts.into_iter().collect()
    };
    let e1: Vec<usize> = m1.ground().iter().collect();
    let e2: Vec<usize> = m2.ground().iter().collect();
    let p1: Vec<_> = e1.iter().map(|&e| profile(e, &c1)).collect();
    let p2: Vec<_> = e2.iter().map(|&e| profile(e, &c2)).collect();
    {
        let mut s1 = p1.clone();
        let mut s2 = p2.clone();
        s1.sort();
        s2.sort();
        if s1 != s2 {
            return Ok(None);
        }
    }

    // most-constrained-first: rarest profile, then most circuits
    let mut order: Vec<usize> = (0..e1.len()).collect();
    order.sort_by_key(|&i| {
        let rarity = p2.iter().filter(|p| **p == p1[i]).count();
        let weight: usize = p1[i].iter().map(|&(_, c)| c).sum();
        (rarity, usize::MAX - weight)
    });

    let set2: HashSet<ElemSet> = c2.iter().copied().collect();
    let set1: HashSet<ElemSet> = c1.iter().copied().collect();
    let mut map = [usize::MAX; MAX_ELEMENTS];
    let mut inv = [usize::MAX; MAX_ELEMENTS];
    let mut mapped1 = ElemSet::EMPTY;
    let mut mapped2 = ElemSet::EMPTY;

    struct Ctx<'a> {
        e1: &'a [usize],
        e2: &'a [usize],
        p1: &'a [Vec<(usize, usize)>],
        p2: &'a [Vec<(usize, usize)>],
        c1: &'a [ElemSet],
        c2: &'a [ElemSet],
        set1: &'a HashSet<ElemSet>,
        set2: &'a HashSet<ElemSet>,
        order: &'a [usize],
        budget: &'a Budget,
    }

    fn image(map: &[usize; MAX_ELEMENTS], s: ElemSet) -> ElemSet {
        ElemSet::from_iter(s.iter().map(|e| map[e]))
    }

    fn preimage(inv: &[usize; MAX_ELEMENTS], s: ElemSet) -> ElemSet {
        ElemSet::from_iter(s.iter().map(|e| inv[e]))
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        ctx: &Ctx,
        depth: usize,
        map: &mut [usize; MAX_ELEMENTS],
        inv: &mut [usize; MAX_ELEMENTS],
        mapped1: &mut ElemSet,
        mapped2: &mut ElemSet,
    ) -> Result<bool> {
        ctx.budget.charge("isomorphism search", 1)?;
        if depth == ctx.order.len() {
            return Ok(true);
        }
        let i = ctx.order[depth];
        let a = ctx.e1[i];
        for (j, &b) in ctx.e2.iter().enumerate() {
            if mapped2.contains(b) || ctx.p1[i] != ctx.p2[j] {
                continue;
            }
            map[a] = b;
            inv[b] = a;
            mapped1.insert(a);
            mapped2.insert(b);
            // fully-mapped circuits through a must land on circuits, and
            // fully-covered circuits through b must pull back to circuits
            let ok = ctx
                .c1
                .iter()
                .filter(|c| c.contains(a) && c.is_subset(*mapped1))
                .all(|&c| ctx.set2.contains(&image(map, c)))
                && ctx
                    .c2
                    .iter()
                    .filter(|c| c.contains(b) && c.is_subset(*mapped2))
                    .all(|&c| ctx.set1.contains(&preimage(inv, c)));
            if ok && rec(ctx, depth + 1, map, inv, mapped1, mapped2)? {
                return Ok(true);
            }
            map[a] = usize::MAX;
            inv[b] = usize::MAX;
            mapped1.remove(a);
            mapped2.remove(b);
        }
        Ok(false)
    }

    let ctx = Ctx {
        e1: &e1,
        e2: &e2,
        p1: &p1,
        p2: &p2,
        c1: &c1,
        c2: &c2,
        set1: &set1,
        set2: &set2,
        order: &order,
        budget,
    };
    if rec(&ctx, 0, &mut map, &mut inv, &mut mapped1, &mut mapped2)? {
        let pairs: Vec<(usize, usize)> = e1.iter().map(|&a| (a, map[a])).collect();
        debug_assert!(c1.iter().all(|&c| set2.contains(&image(&map, c))));
        Ok(Some(pairs))
    } else {
        Ok(None)
    }
}
