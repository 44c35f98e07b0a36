//! Connectivity functionals and tangles: the connectivity function, local
//! connectivity, exact minimum separations by branch-and-bound, linking
//! minors (single and nested targets), vertical connectivity, roundness,
//! and tangles with their induced matroid rank.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::matroid::{same_restriction, Matroid};
use crate::set::ElemSet;
use std::collections::BTreeSet;

/// Connectivity function: `r(X) + r(E - X) - r(M)`.
pub fn lambda(m: &Matroid, x: ElemSet) -> usize {
    m.rank(x) + m.rank(m.ground().difference(x)) - m.full_rank()
}

/// Local connectivity between two (not necessarily disjoint) sets.
pub fn local_conn(m: &Matroid, a: ElemSet, b: ElemSet) -> usize {
    m.rank(a) + m.rank(b) - m.rank(a.union(b))
}

/// Minimum of `lambda(Z)` over all `Z` with `a` inside and `b` outside.
/// Exact branch-and-bound: partial side ranks give a valid lower bound
/// because rank is monotone.
pub fn kappa(m: &Matroid, a: ElemSet, b: ElemSet, budget: &Budget) -> Result<usize> {
    if !a.is_disjoint(b) {
        return Err(Error::Precondition("kappa needs disjoint sets".into()));
    }
    let free: Vec<usize> = m.ground().difference(a).difference(b).iter().collect();
    let mut best = lambda(m, m.ground().difference(b));
    best = best.min(lambda(m, a));
    fn rec(
        m: &Matroid,
        free: &[usize],
        idx: usize,
        z: ElemSet,
        w: ElemSet,
        best: &mut usize,
        budget: &Budget,
    ) -> Result<()> {
        budget.charge("kappa search", 1)?;
        let bound = (m.rank(z) + m.rank(w)).saturating_sub(m.full_rank());
        if bound >= *best {
            return Ok(());
        }
        if idx == free.len() {
            *best = (*best).min(m.rank(z) + m.rank(w) - m.full_rank());
            return Ok(());
        }
        let e = free[idx];
        rec(m, free, idx + 1, z.with(e), w, best, budget)?;
        rec(m, free, idx + 1, z, w.with(e), best, budget)
    }
    rec(m, &free, 0, a, b, &mut best, budget)?;
    Ok(best)
}

/// Tutte linking: a minor on exactly `x` and `y` preserving their
/// separation and both restrictions. Greedy elimination, preferring
/// deletion; each step keeps an operation that provably exists.
pub fn linking_minor(m: &Matroid, x: ElemSet, y: ElemSet, budget: &Budget) -> Result<Matroid> {
    nested_linking_minor(m, x, &[y], budget)
}

/// Linking against a nested chain `y_1 <= y_2 <= ... <= y_k`: the returned
/// minor has ground set `x` union the largest target, preserves every
/// separation `kappa(x, y_i)`, and restricts to the originals on `x` and
/// on the smallest target.
pub fn nested_linking_minor(
    m: &Matroid,
    x: ElemSet,
    ys: &[ElemSet],
    budget: &Budget,
) -> Result<Matroid> {
    if ys.is_empty() {
        return Err(Error::Precondition("empty target chain".into()));
    }
    for w in ys.windows(2) {
        if !w[0].is_subset(w[1]) {
            return Err(Error::Precondition("targets must form an increasing chain".into()));
        }
    }
    let y_max = *ys.last().unwrap();
    if !x.is_disjoint(y_max) {
        return Err(Error::Precondition("x meets the target chain".into()));
    }
    let y_min = ys[0];
    let targets: Vec<usize> =
        ys.iter().map(|&y| kappa(m, x, y, budget)).collect::<Result<_>>()?;
    let mut current = m.clone();
    while current.ground() != x.union(y_max) {
        let free = current.ground().difference(x).difference(y_max);
        let mut acted = false;
        'scan: for e in free.iter() {
            let single = ElemSet::singleton(e);
            let deleted = current.delete(single);
            if preserves(&deleted, x, ys, &targets, budget)? {
                current = deleted;
                acted = true;
                break 'scan;
            }
            let contracted = current.contract(single);
            if same_restriction(&contracted, &current, x)
                && same_restriction(&contracted, &current, y_min)
                && preserves(&contracted, x, ys, &targets, budget)?
            {
                current = contracted;
                acted = true;
                break 'scan;
            }
        }
        // the linking theorem guarantees a working operation at every step
        assert!(acted, "no separation-preserving operation exists; this contradicts the linking theorem");
    }
    debug_assert!(same_restriction(&current, m, x));
    debug_assert!(same_restriction(&current, m, y_min));
    Ok(current)
}

fn preserves(
    n: &Matroid,
    x: ElemSet,
    ys: &[ElemSet],
    targets: &[usize],
    budget: &Budget,
) -> Result<bool> {
    for (&y, &t) in ys.iter().zip(targets) {
        if kappa(n, x, y, budget)? != t {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No partition `(X, Y)` with `lambda < j` and both sides of rank at least
/// `j`, for any `j < k`. Exhaustive over partitions.
pub fn is_vertically_k_connected(m: &Matroid, k: usize, budget: &Budget) -> Result<bool> {
    let elems: Vec<usize> = m.ground().iter().collect();
    if elems.is_empty() {
        return Ok(true);
    }
    // fix the first element on one side
    let rest = ElemSet::from_iter(elems[1..].iter().copied());
    for s in rest.subsets() {
        budget.charge("vertical connectivity", 1)?;
        let xside = s.with(elems[0]);
        let yside = m.ground().difference(xside);
        let l = lambda(m, xside);
        if l < k - 1 && l < m.rank(xside).min(m.rank(yside)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The exact vertical connectivity: the largest `k` for which the matroid
/// is vertically `k`-connected (capped at the rank).
pub fn vertical_connectivity(m: &Matroid, budget: &Budget) -> Result<usize> {
    let mut k = 1;
    while k < m.full_rank() && is_vertically_k_connected(m, k + 1, budget)? {
        k += 1;
    }
    Ok(k)
}

/// Round: the ground set is not the union of two hyperplanes.
pub fn is_round(m: &Matroid, budget: &Budget) -> Result<bool> {
    let hyperplanes = m.hyperplanes(budget)?;
    for (i, &h1) in hyperplanes.iter().enumerate() {
        for &h2 in &hyperplanes[i + 1..] {
            budget.charge("roundness", 1)?;
            if h1.union(h2) == m.ground() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A tangle: an order plus the family of small sides. Families are stored
/// explicitly for small hosts and as a rank bound for the standard tangle
/// of a round matroid.
#[derive(Clone, Debug)]
pub struct Tangle {
    order: usize,
    host: Matroid,
    family: TangleFamily,
}

#[derive(Clone, Debug)]
enum TangleFamily {
    /// members are exactly the sets of rank at most `order - 2`
    RankBound,
    Explicit(BTreeSet<ElemSet>),
}

/// Which tangle axiom a candidate family violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TangleAxiom {
    /// axiom 1: every small-side of a separation or its complement belongs
    Completeness,
    /// axiom 2: no three members cover the ground set
    TripleCover,
    /// axiom 3: no member is the complement of a single element
    NoNearGround,
}

impl std::fmt::Display for TangleAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TangleAxiom::Completeness => write!(f, "axiom 1 (completeness)"),
            TangleAxiom::TripleCover => write!(f, "axiom 2 (three members cover E)"),
            TangleAxiom::NoNearGround => write!(f, "axiom 3 (E minus a point is small)"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum TangleOutcome {
    Tangle(Tangle),
    Violated(TangleAxiom),
}

impl Tangle {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn host(&self) -> &Matroid {
        &self.host
    }

    pub fn is_small(&self, z: ElemSet) -> bool {
        match &self.family {
            TangleFamily::RankBound => self.host.rank(z) <= self.order - 2,
            TangleFamily::Explicit(set) => set.contains(&z),
        }
    }

    /// The family as a sorted list. Explicit families list every member;
    /// rank-bound families are enumerated (budgeted, intended for debugging
    /// on small hosts).
    pub fn small_sets(&self, budget: &Budget) -> Result<Vec<ElemSet>> {
        match &self.family {
            TangleFamily::Explicit(set) => Ok(set.iter().copied().collect()),
            TangleFamily::RankBound => {
                let mut out = Vec::new();
                for z in self.host.ground().subsets() {
                    budget.charge("tangle export", 1)?;
                    if self.is_small(z) {
                        out.push(z);
                    }
                }
                Ok(out)
            }
        }
    }
}

/// The standard tangle of a round matroid: the sets of rank at most
/// `k - 2`, when they form a tangle. Roundness makes axioms 1 and 3
/// automatic; axiom 2 reduces to a scan over pairs of rank-(k-2) flats,
/// since members may be enlarged to flats. Reports the violated axiom
/// otherwise.
pub fn standard_tangle(m: &Matroid, k: usize, budget: &Budget) -> Result<TangleOutcome> {
    if !(3 <= k && k <= m.full_rank()) {
        return Err(Error::Precondition(format!(
            "tangle order {k} outside 3..=rank ({})",
            m.full_rank()
        )));
    }
    if !is_round(m, budget)? {
        return Err(Error::Precondition("standard tangle requires a round host".into()));
    }
    // axiom 3 directly
    for e in m.ground().iter() {
        if m.rank(m.ground().without(e)) <= k - 2 {
            return Ok(TangleOutcome::Violated(TangleAxiom::NoNearGround));
        }
    }
    // axiom 2: three members cover E iff two rank-(k-2) flats leave a
    // remainder of rank at most k-2
    let flats = m.flats(k - 2, budget)?;
    for (i, &f1) in flats.iter().enumerate() {
        for &f2 in flats.iter().skip(i) {
            budget.charge("tangle axiom 2", 1)?;
            let rest = m.ground().difference(f1.union(f2));
            if m.rank(rest) <= k - 2 {
                return Ok(TangleOutcome::Violated(TangleAxiom::TripleCover));
            }
        }
    }
    Ok(TangleOutcome::Tangle(Tangle { order: k, host: m.clone(), family: TangleFamily::RankBound }))
}

/// Tangle matroid rank: the least `lambda` over members containing `x`,
/// capped at `order - 1`. Members may be enlarged to closures, so for the
/// standard tangle only flats of rank at most `order - 2` matter.
pub fn tangle_rank(t: &Tangle, x: ElemSet, budget: &Budget) -> Result<usize> {
    let cap = t.order - 1;
    match &t.family {
        TangleFamily::RankBound => {
            if t.host.rank(x) > t.order - 2 {
                return Ok(cap);
            }
            let mut best = cap;
            for j in 0..=t.order - 2 {
                for f in t.host.flats(j, budget)? {
                    if x.is_subset(f) {
                        best = best.min(lambda(&t.host, f));
                    }
                }
            }
            Ok(best)
        }
        TangleFamily::Explicit(set) => {
            let mut best = cap;
            for &z in set {
                if x.is_subset(z) {
                    best = best.min(lambda(&t.host, z));
                }
            }
            Ok(best)
        }
    }
}

/// Validate the three tangle axioms for an explicit family on a small host.
pub fn validate_tangle_family(
    m: &Matroid,
    order: usize,
    members: &BTreeSet<ElemSet>,
    budget: &Budget,
) -> Result<Option<TangleAxiom>> {
    // members are small sides; completeness over every separation
    for z in m.ground().subsets() {
        budget.charge("tangle validation", 1)?;
        if members.contains(&z) && lambda(m, z) >= order - 1 {
            return Ok(Some(TangleAxiom::Completeness));
        }
        if lambda(m, z) < order - 1
            && !members.contains(&z)
            && !members.contains(&m.ground().difference(z))
        {
            return Ok(Some(TangleAxiom::Completeness));
        }
    }
    for e in m.ground().iter() {
        if members.contains(&m.ground().without(e)) {
            return Ok(Some(TangleAxiom::NoNearGround));
        }
    }
    // triples of maximal members suffice for the cover check
    let maximal: Vec<ElemSet> = members
        .iter()
        .copied()
        .filter(|&a| !members.iter().any(|&b| a != b && a.is_subset(b)))
        .collect();
    for &a in &maximal {
        for &b in &maximal {
            for &c in &maximal {
                budget.charge("tangle validation", 1)?;
                if a.union(b).union(c) == m.ground() {
                    return Ok(Some(TangleAxiom::TripleCover));
                }
            }
        }
    }
    Ok(None)
}

/// The tangle on `m` induced by a tangle on a minor `n` of `m` (shared
/// element ids): sets that are small in `m` and trace to a small set of the
/// minor's tangle. The family is materialized and the axioms re-validated;
/// a violation reports the offending axiom.
pub fn induced_tangle(m: &Matroid, t_minor: &Tangle, budget: &Budget) -> Result<Tangle> {
    let order = t_minor.order;
    let minor_ground = t_minor.host.ground();
    if !minor_ground.is_subset(m.ground()) {
        return Err(Error::Precondition("tangle host is not a minor of the matroid".into()));
    }
    let mut members = BTreeSet::new();
    for z in m.ground().subsets() {
        budget.charge("induced tangle", 1)?;
        if lambda(m, z) < order - 1 && t_minor.is_small(z.intersection(minor_ground)) {
            members.insert(z);
        }
    }
    if let Some(axiom) = validate_tangle_family(m, order, &members, budget)? {
        return Err(Error::Precondition(format!("induced family violates {axiom}")));
    }
    Ok(Tangle { order, host: m.clone(), family: TangleFamily::Explicit(members) })
}
