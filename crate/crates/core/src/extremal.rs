//! Desk-scale extremal checks: Kung's exponential bound, the quadratic
//! Dowling density formula, and exhaustive extremal searches over the
//! restrictions of a small ambient geometry.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::matroid::{is_isomorphic, Matroid};
use crate::set::ElemSet;
use rayon::prelude::*;

/// `(ell^r - 1) / (ell - 1)`: the maximum point count of a simple rank-r
/// matroid with no `(ell+2)`-point line minor.
pub fn kung_bound(ell: u64, r: u32) -> u64 {
    assert!(ell >= 2);
    (ell.pow(r) - 1) / (ell - 1)
}

/// Check the bound for a matroid that avoids the `(ell+2)`-point line
/// minor; applied to the simplification. Errors when the line-minor
/// hypothesis fails.
pub fn kung_bound_holds(m: &Matroid, ell: u64, budget: &Budget) -> Result<bool> {
    let si = m.simplify().matroid;
    if si.has_line_minor(ell as usize + 2, budget)? {
        return Err(Error::Precondition(format!(
            "matroid has a U_{{2,{}}}-minor; Kung's bound does not apply",
            ell + 2
        )));
    }
    Ok(si.epsilon() as u64 <= kung_bound(ell, si.full_rank() as u32))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityVerdict {
    Below,
    Equal,
    Above,
}

/// Compare the point count against `t * C(r,2) + r`.
pub fn dowling_density_check(m: &Matroid, t: usize) -> DensityVerdict {
    let r = m.full_rank();
    let target = t * r * (r - 1) / 2 + r;
    match m.epsilon().cmp(&target) {
        std::cmp::Ordering::Less => DensityVerdict::Below,
        std::cmp::Ordering::Equal => DensityVerdict::Equal,
        std::cmp::Ordering::Greater => DensityVerdict::Above,
    }
}

/// A structure to exclude during the extremal search.
#[derive(Clone, Debug)]
pub enum Forbidden {
    /// a `U_{2,n}`-minor (fast path)
    Line(usize),
    Minor(Matroid),
    Restriction(Matroid),
}

#[derive(Clone, Debug)]
pub struct ExtremalOutcome {
    pub max_points: usize,
    /// every maximizing restriction, sorted
    pub maximizers: Vec<ElemSet>,
    /// one representative per isomorphism class of maximizer
    pub classes: Vec<ElemSet>,
}

fn allowed(m: &Matroid, forbidden: &[Forbidden], budget: &Budget) -> Result<bool> {
    for f in forbidden {
        let hit = match f {
            Forbidden::Line(n) => m.has_line_minor(*n, budget)?,
            Forbidden::Minor(n) => m.has_minor(n, budget)?,
            Forbidden::Restriction(n) => m.has_restriction(n, budget)?,
        };
        if hit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhaustive search over full-rank restrictions of the ambient matroid
/// that avoid every forbidden structure; returns the maximum point count
/// and all maximizers, deduplicated up to isomorphism.
pub fn extremal_search(
    ambient: &Matroid,
    forbidden: &[Forbidden],
    budget: &Budget,
) -> Result<ExtremalOutcome> {
    let r = ambient.full_rank();
    let subsets: Vec<ElemSet> = ambient.ground().subsets().collect();
    let evaluated: Vec<(usize, ElemSet)> = subsets
        .par_iter()
        .map(|&s| -> Result<Option<(usize, ElemSet)>> {
            budget.charge("extremal search", 1)?;
            if ambient.rank(s) != r {
                return Ok(None);
            }
            let sub = ambient.restrict(s);
            if !allowed(&sub, forbidden, budget)? {
                return Ok(None);
            }
            Ok(Some((sub.epsilon(), s)))
        })
        .filter_map(|r| r.transpose())
        .collect::<Result<_>>()?;
    let max_points = evaluated.iter().map(|&(e, _)| e).max().unwrap_or(0);
    let mut maximizers: Vec<ElemSet> =
        evaluated.into_iter().filter(|&(e, _)| e == max_points).map(|(_, s)| s).collect();
    maximizers.sort();
    let mut classes: Vec<ElemSet> = Vec::new();
    for &s in &maximizers {
        let sub = ambient.restrict(s);
        let mut fresh = true;
        for &c in &classes {
            if is_isomorphic(&sub, &ambient.restrict(c), budget)?.is_some() {
                fresh = false;
                break;
            }
        }
        if fresh {
            classes.push(s);
        }
    }
    Ok(ExtremalOutcome { max_points, maximizers, classes })
}

#[derive(Clone, Debug)]
pub struct HellerReport {
    pub max_points: usize,
    pub formula: usize,
    pub unique_class: bool,
    pub witness_is_k4: bool,
}

/// The binary rank-3 instance: among rank-3 restrictions of PG(2,2) with no
/// Fano restriction, the maximum point count is attained uniquely by
/// M(K_4), matching `1 * C(3,2) + 3`.
pub fn heller_instance_check(budget: &Budget) -> Result<HellerReport> {
    let fano = crate::geometries::fano(budget)?;
    let out = extremal_search(&fano, &[Forbidden::Restriction(fano.clone())], budget)?;
    let (k4, _) = crate::geometries::complete_graph_matroid(4, budget)?;
    let unique_class = out.classes.len() == 1;
    let witness_is_k4 = match out.classes.first() {
        Some(&s) => is_isomorphic(&fano.restrict(s), &k4, budget)?.is_some(),
        None => false,
    };
    Ok(HellerReport { max_points: out.max_points, formula: 3 * (3 - 1) / 2 + 3, unique_class, witness_is_k4 })
}
