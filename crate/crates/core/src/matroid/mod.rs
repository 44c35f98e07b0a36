//! The matroid kernel: a rank oracle over several backends, with minors,
//! simplification, closure/flat machinery, circuits, and uniform-line-minor
//! detection. Element ids stay stable across minors; ground sets are bitsets.

mod backend;
pub mod io;
mod iso;
mod repr;

pub use backend::Backend;
pub use iso::is_isomorphic;
pub use repr::find_representation;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::set::ElemSet;
use std::sync::{Arc, Mutex};

/// A matroid: a ground set plus a rank oracle. Minors are views that share
/// the backend; deletion shrinks the ground set and contraction accumulates
/// into a contract set, so rank queries stay one formula deep.
#[derive(Clone)]
pub struct Matroid {
    ground: ElemSet,
    contracted: ElemSet,
    contracted_rank: usize,
    full_rank: usize,
    backend: Arc<Backend>,
    caches: Arc<Caches>,
}

#[derive(Default)]
struct Caches {
    lattice: Mutex<LatticeCache>,
}

#[derive(Default)]
struct LatticeCache {
    // levels[k] = all flats of rank k, sorted; built lazily level by level
    levels: Vec<Vec<ElemSet>>,
}

/// Deletions and contractions to apply at once.
#[derive(Clone, Copy, Debug, Default)]
pub struct MinorSpec {
    pub contract: ElemSet,
    pub delete: ElemSet,
}

/// Result of simplification: loops dropped and one representative (the
/// smallest id) kept per parallel class.
#[derive(Clone, Debug)]
pub struct Simplification {
    pub matroid: Matroid,
    pub loops: ElemSet,
    /// `(kept representative, full parallel class including it)`
    pub classes: Vec<(usize, ElemSet)>,
}

impl Matroid {
    pub fn from_backend(backend: Backend) -> Result<Matroid> {
        let n = backend.universe_size();
        if n > crate::set::MAX_ELEMENTS {
            return Err(Error::GroundTooLarge { size: n, max: crate::set::MAX_ELEMENTS });
        }
        let ground = ElemSet::full(n);
        let full_rank = backend.raw_rank(ground);
        Ok(Matroid {
            ground,
            contracted: ElemSet::EMPTY,
            contracted_rank: 0,
            full_rank,
            backend: Arc::new(backend),
            caches: Arc::new(Caches::default()),
        })
    }

    /// Matroid given by its circuit list on ground `0..n`.
    pub fn from_circuits(n: usize, circuits: Vec<ElemSet>) -> Result<Matroid> {
        Matroid::from_backend(Backend::circuits(n, circuits)?)
    }

    /// Column matroid of a matrix over a small finite field.
    pub fn from_gf_matrix(field: crate::gf::SmallField, rows: usize, cols: usize, entries: Vec<u8>) -> Result<Matroid> {
        Matroid::from_backend(Backend::linear(field, rows, cols, entries)?)
    }

    /// Explicit basis-list backend.
    pub fn from_bases(n: usize, bases: Vec<ElemSet>) -> Result<Matroid> {
        Matroid::from_backend(Backend::bases(n, bases)?)
    }

    /// The rank-`a` uniform matroid on `b` elements.
    pub fn uniform(a: usize, b: usize) -> Matroid {
        let ground = ElemSet::full(b);
        let circuits = if a < b { ground.subsets_of_size(a + 1) } else { Vec::new() };
        Matroid::from_circuits(b, circuits).expect("uniform matroid is valid")
    }

    pub fn ground(&self) -> ElemSet {
        self.ground
    }

    pub fn size(&self) -> usize {
        self.ground.len()
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    /// True when this matroid is the whole backend, with nothing deleted
    /// or contracted.
    pub fn is_pristine(&self) -> bool {
        self.contracted.is_empty() && self.ground == ElemSet::full(self.backend.universe_size())
    }

    /// Rank of a subset of the ground set.
    pub fn rank(&self, x: ElemSet) -> usize {
        debug_assert!(x.is_subset(self.ground), "rank query outside ground set");
        if self.contracted.is_empty() {
            self.backend.raw_rank(x)
        } else {
            self.backend.raw_rank(x.union(self.contracted)) - self.contracted_rank
        }
    }

    pub fn full_rank(&self) -> usize {
        self.full_rank
    }

    pub fn corank(&self) -> usize {
        self.size() - self.full_rank
    }

    pub fn is_independent(&self, x: ElemSet) -> bool {
        self.rank(x) == x.len()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank(ElemSet::singleton(e)) == 0
    }

    pub fn loops(&self) -> ElemSet {
        ElemSet::from_iter(self.ground.iter().filter(|&e| self.is_loop(e)))
    }

    pub fn coloops(&self) -> ElemSet {
        ElemSet::from_iter(
            self.ground.iter().filter(|&e| self.rank(self.ground.without(e)) < self.full_rank),
        )
    }

    /// `r(X) = |X|` whenever `|X| <= 2`: no loops and no parallel pairs.
    pub fn is_simple(&self) -> bool {
        if !self.loops().is_empty() {
            return false;
        }
        let elems: Vec<usize> = self.ground.iter().collect();
        for (i, &e) in elems.iter().enumerate() {
            for &f in &elems[i + 1..] {
                if self.rank(ElemSet::from_iter([e, f])) < 2 {
                    return false;
                }
            }
        }
        true
    }

    pub fn minor(&self, spec: MinorSpec) -> Result<Matroid> {
        if !spec.contract.is_disjoint(spec.delete) {
            return Err(Error::Precondition("contract and delete sets overlap".into()));
        }
        if !spec.contract.union(spec.delete).is_subset(self.ground) {
            return Err(Error::Precondition("minor spec leaves the ground set".into()));
        }
        let contracted = self.contracted.union(spec.contract);
        let contracted_rank = self.backend.raw_rank(contracted);
        let ground = self.ground.difference(spec.contract).difference(spec.delete);
        let full_rank = self.backend.raw_rank(ground.union(contracted)) - contracted_rank;
        Ok(Matroid {
            ground,
            contracted,
            contracted_rank,
            full_rank,
            backend: Arc::clone(&self.backend),
            caches: Arc::new(Caches::default()),
        })
    }

    pub fn delete(&self, x: ElemSet) -> Matroid {
        self.minor(MinorSpec { contract: ElemSet::EMPTY, delete: x }).expect("delete is valid")
    }

    pub fn contract(&self, x: ElemSet) -> Matroid {
        self.minor(MinorSpec { contract: x, delete: ElemSet::EMPTY }).expect("contract is valid")
    }

    pub fn restrict(&self, keep: ElemSet) -> Matroid {
        self.delete(self.ground.difference(keep))
    }

    /// Closure: all elements whose addition does not raise the rank.
    pub fn closure(&self, x: ElemSet) -> ElemSet {
        let r0 = self.rank(x);
        let mut out = x;
        for e in self.ground.difference(x).iter() {
            if self.rank(x.with(e)) == r0 {
                out.insert(e);
            }
        }
        out
    }

    /// Partition of the non-loop elements into parallel classes, each sorted
    /// by smallest element.
    pub fn parallel_classes(&self) -> Vec<ElemSet> {
        let mut out = Vec::new();
        let mut assigned = self.loops();
        for e in self.ground.iter() {
            if assigned.contains(e) {
                continue;
            }
            let cls = self.closure(ElemSet::singleton(e));
            let cls = cls.difference(self.loops()).intersection(self.ground);
            assigned = assigned.union(cls);
            out.push(cls);
        }
        out
    }

    /// Number of points (rank-1 flats).
    pub fn epsilon(&self) -> usize {
        self.parallel_classes().len()
    }

    pub fn simplify(&self) -> Simplification {
        let loops = self.loops();
        let classes: Vec<(usize, ElemSet)> = self
            .parallel_classes()
            .into_iter()
            .map(|cls| (cls.min().expect("parallel class is nonempty"), cls))
            .collect();
        let keep = ElemSet::from_iter(classes.iter().map(|&(rep, _)| rep));
        Simplification { matroid: self.restrict(keep), loops, classes }
    }

    /// All circuits, optionally only those of size at most `max_size`.
    pub fn circuits(&self, max_size: Option<usize>, budget: &Budget) -> Result<Vec<ElemSet>> {
        let cap = max_size.unwrap_or(self.full_rank + 1).min(self.full_rank + 1);
        let mut found: Vec<ElemSet> = Vec::new();
        for k in 1..=cap.min(self.size()) {
            for s in self.ground.subsets_of_size(k) {
                budget.charge("circuit enumeration", 1)?;
                if found.iter().any(|&c| c.is_subset(s)) {
                    continue;
                }
                if self.rank(s) < k {
                    found.push(s);
                }
            }
        }
        Ok(found)
    }

    /// Size of the smallest circuit, or `None` for a free matroid.
    pub fn girth(&self, budget: &Budget) -> Result<Option<usize>> {
        for k in 1..=self.size() {
            for s in self.ground.subsets_of_size(k) {
                budget.charge("girth search", 1)?;
                if self.rank(s) < k {
                    return Ok(Some(k));
                }
            }
            if k > self.full_rank {
                break;
            }
        }
        Ok(None)
    }

    /// All flats of the given rank (sorted). Levels are cached per matroid.
    pub fn flats(&self, rank: usize, budget: &Budget) -> Result<Vec<ElemSet>> {
        if rank > self.full_rank {
            return Ok(Vec::new());
        }
        let mut cache = self.caches.lattice.lock().unwrap();
        while cache.levels.len() <= rank {
            let next = match cache.levels.last() {
                None => vec![self.closure(ElemSet::EMPTY)],
                Some(prev) => {
                    let mut out: Vec<ElemSet> = Vec::new();
                    for &f in prev {
                        for e in self.ground.difference(f).iter() {
                            budget.charge("flat lattice", 1)?;
                            let g = self.closure(f.with(e));
                            if !out.contains(&g) {
                                out.push(g);
                            }
                        }
                    }
                    out.sort();
                    out
                }
            };
            cache.levels.push(next);
        }
        Ok(cache.levels[rank].clone())
    }

    /// Rank-2 flats.
    pub fn lines(&self, budget: &Budget) -> Result<Vec<ElemSet>> {
        self.flats(2, budget)
    }

    pub fn hyperplanes(&self, budget: &Budget) -> Result<Vec<ElemSet>> {
        if self.full_rank == 0 {
            return Ok(Vec::new());
        }
        self.flats(self.full_rank - 1, budget)
    }

    /// Sorted point counts of every line, on the simplification.
    pub fn line_length_multiset(&self, budget: &Budget) -> Result<Vec<usize>> {
        let si = self.simplify().matroid;
        let mut lens: Vec<usize> = si.lines(budget)?.iter().map(|l| l.len()).collect();
        lens.sort_unstable();
        Ok(lens)
    }

    /// True iff some minor is a line with at least `n` points, i.e. a
    /// `U_{2,n}`-minor exists. Contracts flats only (closure invariance) and
    /// counts, for each flat pair `F1 < F2` two ranks apart, the points of
    /// the line `F2/F1`.
    pub fn has_line_minor(&self, n: usize, budget: &Budget) -> Result<bool> {
        if n <= self.max_line_threshold_bounded(Some(n), budget)? {
            return Ok(true);
        }
        Ok(false)
    }

    /// The largest `n` for which a `U_{2,n}`-minor exists (0 when rank < 2).
    pub fn max_line_threshold(&self, budget: &Budget) -> Result<usize> {
        self.max_line_threshold_bounded(None, budget)
    }

    fn max_line_threshold_bounded(
        &self,
        early_stop: Option<usize>,
        budget: &Budget,
    ) -> Result<usize> {
        let r = self.full_rank;
        if r < 2 {
            return Ok(0);
        }
        let mut best = 0;
        for j in 0..=r - 2 {
            let level_j = self.flats(j, budget)?;
            let level_j2 = self.flats(j + 2, budget)?;
            for &f1 in &level_j {
                budget.charge("line minor search", 1)?;
                // bucket each outside element by its cover flat over f1
                let mut covers: Vec<ElemSet> = Vec::new();
                let mut cover_of = vec![usize::MAX; crate::set::MAX_ELEMENTS];
                for e in self.ground.difference(f1).iter() {
                    let c = self.closure(f1.with(e));
                    let id = match covers.iter().position(|&x| x == c) {
                        Some(i) => i,
                        None => {
                            covers.push(c);
                            covers.len() - 1
                        }
                    };
                    cover_of[e] = id;
                }
                for &f2 in &level_j2 {
                    if !f1.is_subset(f2) || f1 == f2 {
                        continue;
                    }
                    let mut hit = vec![false; covers.len()];
                    let mut count = 0;
                    for e in f2.difference(f1).iter() {
                        let id = cover_of[e];
                        if !hit[id] {
                            hit[id] = true;
                            count += 1;
                        }
                    }
                    if count > best {
                        best = count;
                        if let Some(stop) = early_stop {
                            if best >= stop {
                                return Ok(best);
                            }
                        }
                    }
                }
            }
        }
        Ok(best)
    }

    /// Exhaustive minor test: does `self` have a minor isomorphic to `n`?
    /// Contracts independent representatives of flats, then scans ground
    /// subsets of the right size with invariant pruning.
    pub fn has_minor(&self, n: &Matroid, budget: &Budget) -> Result<bool> {
        if n.size() > self.size() || n.full_rank() > self.full_rank {
            return Ok(false);
        }
        let target_size = n.size();
        let max_contract = self.full_rank - n.full_rank();
        for j in 0..=max_contract {
            for f in self.flats(j, budget)? {
                // contract a basis of the flat; remaining loops stay available
                let mut basis = ElemSet::EMPTY;
                for e in f.iter() {
                    if self.rank(basis.with(e)) > self.rank(basis) {
                        basis.insert(e);
                    }
                }
                if basis.len() != j {
                    continue;
                }
                let contracted = self.contract(basis);
                if contracted.size() < target_size {
                    continue;
                }
                if contracted.has_restriction(n, budget)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Does some restriction realize `n` up to isomorphism? Recursive
    /// subset build with rank pruning.
    pub fn has_restriction(&self, n: &Matroid, budget: &Budget) -> Result<bool> {
        restriction_matches(self, n, budget)
    }
}

/// Does some restriction of `m` to `|E(n)|` elements realize `n` up to
/// isomorphism? Recursive subset build with rank pruning.
fn restriction_matches(m: &Matroid, n: &Matroid, budget: &Budget) -> Result<bool> {
    let elems: Vec<usize> = m.ground().iter().collect();
    let mut chosen = ElemSet::EMPTY;
    fn rec(
        m: &Matroid,
        n: &Matroid,
        elems: &[usize],
        start: usize,
        chosen: &mut ElemSet,
        budget: &Budget,
    ) -> Result<bool> {
        budget.charge("minor search", 1)?;
        let picked = chosen.len();
        let want = n.size();
        if picked == want {
            let sub = m.restrict(*chosen);
            if sub.full_rank() != n.full_rank() {
                return Ok(false);
            }
            return Ok(is_isomorphic(&sub, n, budget)?.is_some());
        }
        if elems.len() - start < want - picked {
            return Ok(false);
        }
        for i in start..elems.len() {
            let e = elems[i];
            chosen.insert(e);
            if m.rank(*chosen) <= n.full_rank() && rec(m, n, elems, i + 1, chosen, budget)? {
                return Ok(true);
            }
            chosen.remove(e);
        }
        Ok(false)
    }
    rec(m, n, &elems, 0, &mut chosen, budget)
}

/// Restrictions agree: equal rank on every subset of `x` in both matroids.
/// Intended for small `x`.
pub fn same_restriction(m1: &Matroid, m2: &Matroid, x: ElemSet) -> bool {
    if !x.is_subset(m1.ground()) || !x.is_subset(m2.ground()) {
        return false;
    }
    x.subsets().all(|s| m1.rank(s) == m2.rank(s))
}

impl std::fmt::Debug for Matroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Matroid(|E|={}, r={}, backend={})",
            self.size(),
            self.full_rank,
            self.backend.kind_name()
        )
    }
}
