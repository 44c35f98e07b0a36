//! Exhaustive search for a linear representation over a small finite field.
//! Absence is a proof: a lexicographically first basis is pinned to the
//! identity, which loses no generality, and every projective point is tried
//! for the remaining elements.

use super::Matroid;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::gf::SmallField;
use crate::set::ElemSet;
use std::collections::HashMap;

/// A witness representation: columns are listed in ground-set order.
#[derive(Clone, Debug)]
pub struct GfRepresentation {
    pub q: usize,
    pub rows: usize,
    /// `(element id, column vector)` in ascending element order
    pub columns: Vec<(usize, Vec<u8>)>,
}

impl GfRepresentation {
    /// Rebuild the represented matroid (column order = ground order).
    pub fn to_matroid(&self) -> Result<Matroid> {
        let field = SmallField::new(self.q)?;
        let cols = self.columns.len();
        let mut entries = vec![0u8; self.rows * cols];
        for (c, (_, v)) in self.columns.iter().enumerate() {
            for r in 0..self.rows {
                entries[r * cols + c] = v[r];
            }
        }
        Matroid::from_gf_matrix(field, self.rows, cols, entries)
    }
}

const MAX_REPR_RANK: usize = 4;
const MAX_REPR_GROUND: usize = 12;

/// Find a GF(q) representation of `m`, or prove there is none.
pub fn find_representation(
    m: &Matroid,
    q: usize,
    budget: &Budget,
) -> Result<Option<GfRepresentation>> {
    let field = SmallField::new(q)?;
    if q > 9 {
        return Err(Error::Unsupported(format!("representation search capped at GF(9), got GF({q})")));
    }
    let r = m.full_rank();
    let n = m.size();
    if r > MAX_REPR_RANK || n > MAX_REPR_GROUND {
        return Err(Error::Precondition(format!(
            "representation search supports rank <= {MAX_REPR_RANK} and ground <= {MAX_REPR_GROUND}, got rank {r} on {n} elements"
        )));
    }
    if r == 0 {
        // all loops: the zero matrix works
        let columns = m.ground().iter().map(|e| (e, vec![0u8; 1])).collect();
        return Ok(Some(GfRepresentation { q, rows: 1, columns }));
    }

    // ranks of all small subsets, precomputed once
    let mut want: HashMap<ElemSet, usize> = HashMap::new();
    for k in 0..=(r + 1).min(n) {
        for s in m.ground().subsets_of_size(k) {
            want.insert(s, m.rank(s));
        }
    }

    // lexicographically first basis is pinned to the standard basis
    let mut basis: Vec<usize> = Vec::new();
    let mut bset = ElemSet::EMPTY;
    for e in m.ground().iter() {
        if m.rank(bset.with(e)) > m.rank(bset) {
            basis.push(e);
            bset.insert(e);
        }
    }
    debug_assert_eq!(basis.len(), r);

    // candidate columns: zero plus all projective representatives (first
    // nonzero coordinate scaled to 1)
    let mut points: Vec<Vec<u8>> = Vec::new();
    let mut stack = vec![0usize; r];
    'outer: loop {
        let v: Vec<u8> = stack.iter().map(|&x| x as u8).collect();
        if v.iter().any(|&x| x != 0) {
            let lead = v.iter().position(|&x| x != 0).unwrap();
            if v[lead] == 1 {
                points.push(v);
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

    let elems: Vec<usize> = m.ground().iter().collect();
    let mut assigned: HashMap<usize, Vec<u8>> = HashMap::new();
    for (i, &b) in basis.iter().enumerate() {
        let mut v = vec![0u8; r];
        v[i] = 1;
        assigned.insert(b, v);
    }

    // verify the pinned basis against every constraint involving only basis
    // elements (they always hold: the identity has the right subset ranks)
    let rest: Vec<usize> = elems.iter().copied().filter(|e| !bset.contains(*e)).collect();

    fn gf_rank(field: &SmallField, vecs: &[&[u8]]) -> usize {
        let rows = vecs.first().map_or(0, |v| v.len());
        let mut m: Vec<Vec<usize>> = (0..rows)
            .map(|r| vecs.iter().map(|v| v[r] as usize).collect())
            .collect();
        let cols = vecs.len();
        let mut rank = 0;
        for c in 0..cols {
            let piv = (rank..rows).find(|&i| m[i][c] != 0);
            let Some(p) = piv else { continue };
            m.swap(rank, p);
            let inv = field.inv(m[rank][c]);
            for j in c..cols {
                m[rank][j] = field.mul(m[rank][j], inv);
            }
            for i in 0..rows {
                if i != rank && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in c..cols {
                        let s = field.mul(f, m[rank][j]);
                        m[i][j] = field.sub(m[i][j], s);
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    struct Ctx<'a> {
        field: &'a SmallField,
        want: &'a HashMap<ElemSet, usize>,
        points: &'a [Vec<u8>],
        rest: &'a [usize],
        r: usize,
        budget: &'a Budget,
    }

    fn rec(ctx: &Ctx, idx: usize, assigned: &mut HashMap<usize, Vec<u8>>) -> Result<bool> {
        if idx == ctx.rest.len() {
            return Ok(true);
        }
        let e = ctx.rest[idx];
        let placed: ElemSet = ElemSet::from_iter(assigned.keys().copied());
        let is_loop = ctx.want[&ElemSet::singleton(e)] == 0;
        let zero = vec![0u8; ctx.r];
        let candidates: Vec<&Vec<u8>> = if is_loop {
            vec![&zero]
        } else {
            ctx.points.iter().collect()
        };
        let candidates: Vec<Vec<u8>> = candidates.into_iter().cloned().collect();
        for cand in candidates {
            ctx.budget.charge("representation search", 1)?;
            assigned.insert(e, cand);
            // every small subset through e must have matching rank
            let mut ok = true;
            'check: for k in 0..=(ctx.r + 1).min(placed.len() + 1) {
                if k == 0 {
                    continue;
                }
                for sub in placed.subsets_of_size(k - 1) {
                    let s = sub.with(e);
                    let vecs: Vec<&[u8]> = s.iter().map(|x| assigned[&x].as_slice()).collect();
                    if gf_rank(ctx.field, &vecs) != ctx.want[&s] {
                        ok = false;
                        break 'check;
                    }
                }
            }
            if ok && rec(ctx, idx + 1, assigned)? {
                return Ok(true);
            }
            assigned.remove(&e);
        }
        Ok(false)
    }

    let ctx = Ctx { field: &field, want: &want, points: &points, rest: &rest, r, budget };
    if rec(&ctx, 0, &mut assigned)? {
        let columns: Vec<(usize, Vec<u8>)> =
            elems.iter().map(|&e| (e, assigned[&e].clone())).collect();
        Ok(Some(GfRepresentation { q, rows: r, columns }))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u24_not_binary_but_ternary() {
        let m = Matroid::uniform(2, 4);
        assert!(find_representation(&m, 2, &Budget::default()).unwrap().is_none());
        let w = find_representation(&m, 3, &Budget::default()).unwrap().unwrap();
        let back = w.to_matroid().unwrap();
        assert_eq!(back.full_rank(), 2);
        assert_eq!(back.epsilon(), 4);
    }

    #[test]
    fn u25_needs_a_four_element_field() {
        let m = Matroid::uniform(2, 5);
        assert!(find_representation(&m, 3, &Budget::default()).unwrap().is_none());
        assert!(find_representation(&m, 4, &Budget::default()).unwrap().is_some());
    }

    #[test]
    fn witness_reproduces_the_matroid() {
        let m = Matroid::uniform(3, 6);
        let w = find_representation(&m, 7, &Budget::default()).unwrap().unwrap();
        let back = w.to_matroid().unwrap();
        // same element ids in the same order, so ranks must agree everywhere
        for s in m.ground().subsets() {
            let cols: ElemSet = s
                .iter()
                .map(|e| w.columns.iter().position(|&(x, _)| x == e).unwrap())
                .collect();
            assert_eq!(m.rank(s), back.rank(cols));
        }
    }

    #[test]
    fn loops_map_to_zero() {
        let m = Matroid::from_circuits(3, vec![ElemSet::singleton(1)]).unwrap();
        let w = find_representation(&m, 2, &Budget::default()).unwrap().unwrap();
        let (_, col) = w.columns.iter().find(|&&(e, _)| e == 1).unwrap();
        assert!(col.iter().all(|&x| x == 0));
    }
}
