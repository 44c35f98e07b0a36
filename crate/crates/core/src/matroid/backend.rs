//! Rank backends. Each answers raw rank queries over its full universe of
//! element ids; the `Matroid` wrapper layers ground sets and contractions on
//! top.

use crate::error::{Error, Result};
use crate::gf::SmallField;
use crate::glgraph::BiasedGraph;
use crate::modular::IntegerMatrix;
use crate::set::ElemSet;

#[derive(Clone, Debug)]
pub enum Backend {
    /// Minimal dependent sets; no member contains another.
    Circuits { n: usize, circuits: Vec<ElemSet> },
    /// Columns of a matrix over a small finite field.
    Linear { field: SmallField, rows: usize, cols: usize, entries: Vec<u8> },
    /// Columns of an exact integer matrix, ranked over the rationals.
    LinearInt { matrix: IntegerMatrix },
    /// Frame matroid of a biased graph: per component, vertices minus one
    /// when balanced, vertices otherwise.
    Frame { bias: BiasedGraph },
    /// Lift matroid of a biased graph, optionally extended by `e0` (the
    /// last element id).
    Lift { bias: BiasedGraph, extended: bool },
    /// Explicit basis list.
    Bases { n: usize, bases: Vec<ElemSet> },
}

impl Backend {
    pub fn circuits(n: usize, circuits: Vec<ElemSet>) -> Result<Backend> {
        let universe = ElemSet::full(n);
        for (i, &c) in circuits.iter().enumerate() {
            if !c.is_subset(universe) {
                return Err(Error::Precondition(format!("circuit {c} outside ground 0..{n}")));
            }
            if c.is_empty() {
                return Err(Error::Precondition("empty circuit".into()));
            }
            for (j, &d) in circuits.iter().enumerate() {
                if i != j && c.is_subset(d) {
                    return Err(Error::Precondition(format!(
                        "circuit {c} contains circuit {d}; list is not an antichain"
                    )));
                }
            }
        }
        Ok(Backend::Circuits { n, circuits })
    }

    pub fn linear(field: SmallField, rows: usize, cols: usize, entries: Vec<u8>) -> Result<Backend> {
        if entries.len() != rows * cols {
            return Err(Error::Precondition(format!(
                "matrix has {} entries, expected {rows}x{cols}",
                entries.len()
            )));
        }
        if entries.iter().any(|&x| (x as usize) >= field.order()) {
            return Err(Error::Precondition("matrix entry outside field".into()));
        }
        Ok(Backend::Linear { field, rows, cols, entries })
    }

    pub fn bases(n: usize, bases: Vec<ElemSet>) -> Result<Backend> {
        if bases.is_empty() {
            return Err(Error::Precondition("basis list is empty".into()));
        }
        let universe = ElemSet::full(n);
        let sz = bases[0].len();
        if bases.iter().any(|b| b.len() != sz || !b.is_subset(universe)) {
            return Err(Error::Precondition("bases must be equicardinal subsets of the ground".into()));
        }
        Ok(Backend::Bases { n, bases })
    }

    pub fn universe_size(&self) -> usize {
        match self {
            Backend::Circuits { n, .. } | Backend::Bases { n, .. } => *n,
            Backend::Linear { cols, .. } => *cols,
            Backend::LinearInt { matrix } => matrix.cols(),
            Backend::Frame { bias } => bias.edge_count(),
            Backend::Lift { bias, extended } => bias.edge_count() + usize::from(*extended),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Backend::Circuits { .. } => "circuits",
            Backend::Linear { .. } => "linear",
            Backend::LinearInt { .. } => "linear-int",
            Backend::Frame { .. } => "frame",
            Backend::Lift { extended: false, .. } => "lift",
            Backend::Lift { extended: true, .. } => "lift-extended",
            Backend::Bases { .. } => "bases",
        }
    }

    pub fn raw_rank(&self, x: ElemSet) -> usize {
        match self {
            Backend::Circuits { circuits, .. } => {
                // greedy basis of x; valid because circuits define a matroid
                let mut indep = ElemSet::EMPTY;
                let mut size = 0;
                for e in x.iter() {
                    let cand = indep.with(e);
                    if !circuits.iter().any(|&c| c.is_subset(cand)) {
                        indep = cand;
                        size += 1;
                    }
                }
                size
            }
            Backend::Linear { field, rows, cols, entries } => {
                gf_column_rank(field, *rows, *cols, entries, x)
            }
            Backend::LinearInt { matrix } => matrix.column_rank(x),
            Backend::Frame { bias } => {
                let p = bias.profile(x);
                p.vertices - p.components + p.unbalanced_components
            }
            Backend::Lift { bias, extended } => {
                let e0 = bias.edge_count();
                let edges = if *extended { x.without(e0) } else { x };
                let p = bias.profile(edges);
                let base = p.vertices - p.components;
                let lifted = p.unbalanced_components > 0 || (*extended && x.contains(e0));
                base + usize::from(lifted)
            }
            Backend::Bases { bases, .. } => {
                bases.iter().map(|&b| b.intersection(x).len()).max().unwrap_or(0)
            }
        }
    }
}

fn gf_column_rank(field: &SmallField, rows: usize, cols: usize, entries: &[u8], x: ElemSet) -> usize {
    // gather the selected columns and eliminate
    let selected: Vec<usize> = x.iter().collect();
    if selected.is_empty() {
        return 0;
    }
    let mut mat: Vec<Vec<usize>> = (0..rows)
        .map(|r| selected.iter().map(|&c| entries[r * cols + c] as usize).collect())
        .collect();
    let ncols = selected.len();
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..rows).find(|&r| mat[r][col] != 0);
        let Some(p) = pivot else { continue };
        mat.swap(rank, p);
        let inv = field.inv(mat[rank][col]);
        for c in col..ncols {
            mat[rank][c] = field.mul(mat[rank][c], inv);
        }
        for r in 0..rows {
            if r != rank && mat[r][col] != 0 {
                let factor = mat[r][col];
                for c in col..ncols {
                    let sub = field.mul(factor, mat[rank][c]);
                    mat[r][c] = field.sub(mat[r][c], sub);
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

impl Backend {
    pub fn from_int_matrix(matrix: IntegerMatrix) -> Backend {
        Backend::LinearInt { matrix }
    }

    pub fn frame(bias: BiasedGraph) -> Backend {
        Backend::Frame { bias }
    }

    pub fn lift(bias: BiasedGraph, extended: bool) -> Backend {
        Backend::Lift { bias, extended }
    }
}
