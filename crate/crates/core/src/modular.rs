//! Delta-modular integer matrix analysis: exact determinants via
//! fraction-free elimination, the Euclidean row reduction that certifies
//! minor-closedness, and the bounded-line exclusion check.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::set::ElemSet;
use rayon::prelude::*;

/// Dense exact-integer matrix. All arithmetic is overflow-checked i128.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i64>) -> Result<IntegerMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::Precondition(format!(
                "matrix has {} entries, expected {rows}x{cols}",
                entries.len()
            )));
        }
        Ok(IntegerMatrix { rows, cols, entries })
    }

    pub fn identity(n: usize) -> IntegerMatrix {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        IntegerMatrix { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// Rank over the rationals of the selected columns (all rows).
    pub fn column_rank(&self, x: ElemSet) -> usize {
        let cols: Vec<usize> = x.iter().collect();
        if cols.is_empty() {
            return 0;
        }
        let mut m: Vec<Vec<i128>> = (0..self.rows)
            .map(|r| cols.iter().map(|&c| self.get(r, c) as i128).collect())
            .collect();
        fraction_free_rank(&mut m)
    }

    pub fn rank(&self) -> usize {
        self.column_rank(ElemSet::full(self.cols))
    }

    /// Determinant of the square submatrix on the given rows and columns.
    pub fn submatrix_det(&self, rows: &[usize], cols: &[usize]) -> Result<i128> {
        debug_assert_eq!(rows.len(), cols.len());
        let mut m: Vec<Vec<i128>> = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| self.get(r, c) as i128).collect())
            .collect();
        bareiss_det(&mut m)
    }

    pub fn delete_columns(&self, drop: ElemSet) -> IntegerMatrix {
        let keep: Vec<usize> = (0..self.cols).filter(|&c| !drop.contains(c)).collect();
        let entries = (0..self.rows)
            .flat_map(|r| keep.iter().map(move |&c| (r, c)))
            .map(|(r, c)| self.get(r, c))
            .collect();
        IntegerMatrix { rows: self.rows, cols: keep.len(), entries }
    }

    fn delete_row_and_column(&self, row: usize, col: usize) -> IntegerMatrix {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in 0..self.rows {
            if r == row {
                continue;
            }
            for c in 0..self.cols {
                if c == col {
                    continue;
                }
                entries.push(self.get(r, c));
            }
        }
        IntegerMatrix { rows: self.rows - 1, cols: self.cols - 1, entries }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            self.set(r, c, -self.get(r, c));
        }
    }

    /// row i -= row j
    fn subtract_row(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            let v = self.get(i, c).checked_sub(self.get(j, c)).expect("row op overflow");
            self.set(i, c, v);
        }
    }
}

impl std::fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntegerMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Bareiss fraction-free elimination; returns the exact determinant.
fn bareiss_det(m: &mut [Vec<i128>]) -> Result<i128> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[k][k].checked_mul(m[i][j]).ok_or(overflow())?;
                let b = m[i][k].checked_mul(m[k][j]).ok_or(overflow())?;
                m[i][j] = a.checked_sub(b).ok_or(overflow())? / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Ok(sign * m[n - 1][n - 1])
}

fn fraction_free_rank(m: &mut [Vec<i128>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| m[r][col] != 0);
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let a = m[rank][col].checked_mul(m[i][j]).expect("rank overflow");
                let b = m[i][col].checked_mul(m[rank][j]).expect("rank overflow");
                m[i][j] = (a - b) / prev;
            }
            m[i][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn overflow() -> Error {
    Error::Unsupported("determinant arithmetic overflowed 128 bits".into())
}

/// Max |det| over all rank(A) x rank(A) submatrices. Column subsets of
/// deficient rank are skipped; enumeration is parallel over column subsets.
pub fn delta_of(a: &IntegerMatrix, budget: &Budget) -> Result<u64> {
    let r = a.rank();
    if r == 0 {
        return Err(Error::Precondition("delta is undefined for the zero matrix".into()));
    }
    let col_sets = ElemSet::full(a.cols()).subsets_of_size(r);
    let row_sets: Vec<Vec<usize>> = ElemSet::full(a.rows())
        .subsets_of_size(r)
        .into_iter()
        .map(|s| s.iter().collect())
        .collect();
    let best = col_sets
        .par_iter()
        .map(|&cset| -> Result<u64> {
            budget.charge("delta enumeration", row_sets.len() as u64)?;
            if a.column_rank(cset) < r {
                return Ok(0);
            }
            let cols: Vec<usize> = cset.iter().collect();
            let mut local = 0u64;
            for rows in &row_sets {
                let d = a.submatrix_det(rows, &cols)?.unsigned_abs();
                let d: u64 = d.try_into().map_err(|_| overflow())?;
                local = local.max(d);
            }
            Ok(local)
        })
        .try_reduce(|| 0, |x, y| Ok(x.max(y)))?;
    Ok(best)
}

pub fn is_delta_modular(a: &IntegerMatrix, delta: u64, budget: &Budget) -> Result<bool> {
    Ok(delta_of(a, budget)? <= delta)
}

/// Row-reduce `a` so the columns of `x` become upper-triangular once
/// all-zero rows are dropped, using only row swaps, negation, and integer
/// row subtractions. Every full-rank minor keeps its absolute determinant,
/// so delta is preserved exactly.
pub fn reduce_upper_triangular(a: &IntegerMatrix, x: &[usize]) -> Result<IntegerMatrix> {
    if a.rank() < a.rows() {
        return Err(Error::Precondition("matrix must have full row rank".into()));
    }
    let xset = ElemSet::from_iter(x.iter().copied());
    if a.column_rank(xset) < x.len() {
        return Err(Error::Precondition("column set is dependent".into()));
    }
    let mut m = a.clone();
    let mut pivot_of: Vec<usize> = Vec::new(); // pivot row of each x column, in order
    for &col in x {
        let free: Vec<usize> = (0..m.rows()).filter(|r| !pivot_of.contains(r)).collect();
        euclidean_clear_column(&mut m, col, &free)?;
        let pivot = free
            .into_iter()
            .find(|&r| m.get(r, col) != 0)
            .expect("independent column keeps a nonzero free entry");
        pivot_of.push(pivot);
    }
    // permute pivot rows first, in x order
    let mut order = pivot_of.clone();
    for r in 0..m.rows() {
        if !order.contains(&r) {
            order.push(r);
        }
    }
    let entries = order
        .iter()
        .flat_map(|&r| (0..m.cols()).map(move |c| (r, c)))
        .map(|(r, c)| m.get(r, c))
        .collect();
    IntegerMatrix::new(m.rows(), m.cols(), entries)
}

/// Euclidean elimination from the minor-closure argument: repeatedly
/// subtract rows until the column has a single nonzero entry among `free`
/// rows. No scaling other than negation.
fn euclidean_clear_column(m: &mut IntegerMatrix, col: usize, free: &[usize]) -> Result<()> {
    for &r in free {
        if m.get(r, col) < 0 {
            m.negate_row(r);
        }
    }
    loop {
        let active: Vec<usize> = free.iter().copied().filter(|&r| m.get(r, col) != 0).collect();
        if active.len() <= 1 {
            return Ok(());
        }
        let lead = active[0];
        let a1 = m.get(lead, col);
        if active[1..].iter().all(|&r| m.get(r, col) == a1) {
            for &r in &active[1..] {
                m.subtract_row(r, lead);
            }
            return Ok(());
        }
        if active[1..].iter().all(|&r| m.get(r, col) >= a1) {
            // the lead entry is minimal: pull every larger entry into (0, a1]
            for &r in &active[1..] {
                while m.get(r, col) > a1 {
                    m.subtract_row(r, lead);
                }
            }
        } else {
            let small = active[1..]
                .iter()
                .copied()
                .find(|&r| m.get(r, col) < a1)
                .expect("previous branch handled the all-ge case");
            while m.get(lead, col) > m.get(small, col) {
                m.subtract_row(lead, small);
            }
        }
    }
}

/// Contract a column of the represented matroid: clear the column to a
/// single nonzero entry by row operations, then drop that row and column.
pub fn delta_contract(a: &IntegerMatrix, e: usize) -> Result<IntegerMatrix> {
    if a.column(e).iter().all(|&v| v == 0) {
        return Err(Error::Precondition(format!("column {e} is zero; contraction needs a non-loop")));
    }
    let mut m = a.clone();
    let free: Vec<usize> = (0..m.rows()).collect();
    euclidean_clear_column(&mut m, e, &free)?;
    let pivot = (0..m.rows()).find(|&r| m.get(r, e) != 0).expect("column was nonzero");
    Ok(m.delete_row_and_column(pivot, e))
}

/// Delete columns of the represented matroid.
pub fn delta_delete(a: &IntegerMatrix, cols: ElemSet) -> IntegerMatrix {
    a.delete_columns(cols)
}

/// Number of exactly-equal column classes. Parallel but unequal columns
/// count separately.
pub fn distinct_columns(a: &IntegerMatrix) -> usize {
    let mut seen: Vec<Vec<i64>> = Vec::new();
    for c in 0..a.cols() {
        let col = a.column(c);
        if !seen.contains(&col) {
            seen.push(col);
        }
    }
    seen.len()
}

/// Result of the exclusion check for long lines in delta-modular matrices.
#[derive(Clone, Debug)]
pub struct LineBoundReport {
    pub delta: u64,
    /// longest simple line realizable with entries in `[-delta, delta]`
    pub max_simple_line: usize,
    /// a prime p with delta < p <= 2*delta, for the residue argument
    pub prime: u64,
    pub projective_line_points: u64,
    pub holds: bool,
}

/// Verify that no simple delta-modular rank-2 matrix has `2*delta + 2`
/// pairwise non-parallel columns: exhaustive over columns with entries in
/// `[-delta, delta]` (up to sign), plus the residue argument over GF(p) for
/// a prime `delta < p <= 2*delta`, which caps any realization at `p + 1`
/// points regardless of entry size.
pub fn line_minor_bound_check(delta: u64, budget: &Budget) -> Result<LineBoundReport> {
    if delta > 3 {
        return Err(Error::Unsupported("line bound check supports delta <= 3".into()));
    }
    let d = delta as i64;
    let mut candidates: Vec<(i64, i64)> = Vec::new();
    for a in 0..=d {
        for b in -d..=d {
            if (a, b) == (0, 0) || (a == 0 && b < 0) {
                continue;
            }
            candidates.push((a, b));
        }
    }
    let n = candidates.len();
    let compatible = |u: (i64, i64), v: (i64, i64)| -> bool {
        let det = (u.0 * v.1 - u.1 * v.0).unsigned_abs();
        det != 0 && det <= delta
    };
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i != j && compatible(candidates[i], candidates[j])).collect())
        .collect();
    // branch-and-bound max clique
    fn grow(
        adj: &[Vec<bool>],
        allowed: &[usize],
        size: usize,
        best: &mut usize,
        budget: &Budget,
    ) -> Result<()> {
        budget.charge("line bound clique", 1)?;
        if size + allowed.len() <= *best {
            return Ok(());
        }
        if allowed.is_empty() {
            *best = (*best).max(size);
            return Ok(());
        }
        for (idx, &v) in allowed.iter().enumerate() {
            let next: Vec<usize> =
                allowed[idx + 1..].iter().copied().filter(|&w| adj[v][w]).collect();
            grow(adj, &next, size + 1, best, budget)?;
        }
        *best = (*best).max(size);
        Ok(())
    }
    let mut best = 0;
    grow(&adj, &(0..n).collect::<Vec<_>>(), 0, &mut best, budget)?;

    let prime = (delta + 1..=2 * delta)
        .find(|&p| p >= 2 && (2..p).all(|q| p % q != 0))
        .ok_or_else(|| Error::Unsupported(format!("no prime in ({delta}, {}]", 2 * delta)))?;
    let projective_line_points = prime + 1;
    let bound = 2 * delta + 1;
    let holds = (best as u64) <= bound && projective_line_points <= bound;
    Ok(LineBoundReport { delta, max_simple_line: best, prime, projective_line_points, holds })
}

/// Parse comma-separated integer rows. Rejects ragged rows and non-integer
/// tokens with a line diagnostic.
pub fn parse_csv(text: &str) -> Result<IntegerMatrix> {
    let mut entries = Vec::new();
    let mut cols = None;
    let mut rows = 0;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row: Vec<i64> = line
            .split(',')
            .enumerate()
            .map(|(j, tok)| {
                tok.trim().parse::<i64>().map_err(|_| Error::Parse {
                    line: i + 1,
                    msg: format!("column {}: `{}` is not an integer", j + 1, tok.trim()),
                })
            })
            .collect::<Result<_>>()?;
        match cols {
            None => cols = Some(row.len()),
            Some(c) if c != row.len() => {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("row has {} entries, expected {c}", row.len()),
                })
            }
            _ => {}
        }
        entries.extend(row);
        rows += 1;
    }
    if rows == 0 {
        return Err(Error::Parse { line: 0, msg: "empty matrix".into() });
    }
    IntegerMatrix::new(rows, cols.unwrap(), entries)
}

pub fn write_csv(a: &IntegerMatrix) -> String {
    (0..a.rows())
        .map(|r| {
            (0..a.cols()).map(|c| a.get(r, c).to_string()).collect::<Vec<_>>().join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}
