//! Multigraphs with loops and parallel edges, plus exhaustive cycle
//! enumeration at desk scale. Edges carry dense ids; cycles are edge-id sets.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::set::ElemSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    vertex_count: usize,
    // endpoint pairs in input order; loops have u == v
    endpoints: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(vertex_count: usize, endpoints: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &endpoints {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) has an endpoint outside 0..{vertex_count}"
                )));
            }
        }
        if endpoints.len() > crate::set::MAX_ELEMENTS {
            return Err(Error::GroundTooLarge {
                size: endpoints.len(),
                max: crate::set::MAX_ELEMENTS,
            });
        }
        Ok(MultiGraph { vertex_count, endpoints })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.endpoints[e]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, v) = self.endpoints[e];
        u == v
    }

    pub fn all_edges(&self) -> ElemSet {
        ElemSet::full(self.edge_count())
    }

    /// Vertices incident to at least one edge of `x`.
    pub fn incident_vertices(&self, x: ElemSet) -> Vec<usize> {
        let mut seen = vec![false; self.vertex_count];
        for e in x.iter() {
            let (u, v) = self.endpoints[e];
            seen[u] = true;
            seen[v] = true;
        }
        (0..self.vertex_count).filter(|&v| seen[v]).collect()
    }

    /// Nonloop edges of `x` between distinct vertices `u != v`, and loops at `u` when `u == v`.
    pub fn edges_between(&self, x: ElemSet, u: usize, v: usize) -> Vec<usize> {
        x.iter()
            .filter(|&e| {
                let (a, b) = self.endpoints[e];
                (a, b) == (u, v) || (a, b) == (v, u)
            })
            .collect()
    }

    /// All simple cycles, as edge sets: loops (size 1), parallel pairs
    /// (size 2), and vertex cycles (size >= 3). Exhaustive; budgeted.
    pub fn all_cycles(&self, budget: &Budget) -> Result<Vec<Cycle>> {
        let mut out = Vec::new();
        // loops
        for e in 0..self.edge_count() {
            if self.is_loop(e) {
                let v = self.endpoints[e].0;
                out.push(Cycle {
                    edges: ElemSet::singleton(e),
                    vertices: ElemSet::singleton(v),
                });
            }
        }
        // parallel pairs
        for e in 0..self.edge_count() {
            if self.is_loop(e) {
                continue;
            }
            let (u, v) = self.endpoints[e];
            for f in e + 1..self.edge_count() {
                let (a, b) = self.endpoints[f];
                if (a, b) == (u, v) || (a, b) == (v, u) {
                    budget.charge("cycle enumeration", 1)?;
                    out.push(Cycle {
                        edges: ElemSet::from_iter([e, f]),
                        vertices: ElemSet::from_iter([u, v]),
                    });
                }
            }
        }
        // vertex cycles of length >= 3: DFS from the minimum vertex of the
        // cycle; canonical direction has second vertex < last vertex
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.vertex_count];
        for (e, &(u, v)) in self.endpoints.iter().enumerate() {
            if u != v {
                adj[u].push((v, e));
                adj[v].push((u, e));
            }
        }
        let mut path_v = Vec::new();
        let mut path_e = Vec::new();
        for start in 0..self.vertex_count {
            path_v.clear();
            path_v.push(start);
            self.cycle_dfs(start, &adj, &mut path_v, &mut path_e, &mut out, budget)?;
        }
        Ok(out)
    }

    fn cycle_dfs(
        &self,
        start: usize,
        adj: &[Vec<(usize, usize)>],
        path_v: &mut Vec<usize>,
        path_e: &mut Vec<usize>,
        out: &mut Vec<Cycle>,
        budget: &Budget,
    ) -> Result<()> {
        budget.charge("cycle enumeration", 1)?;
        let u = *path_v.last().unwrap();
        for &(w, e) in &adj[u] {
            if path_e.contains(&e) {
                continue;
            }
            if w == start {
                if path_e.len() >= 2 && path_v[1] < u {
                    let mut edges = ElemSet::from_iter(path_e.iter().copied());
                    edges.insert(e);
                    out.push(Cycle {
                        edges,
                        vertices: ElemSet::from_iter(path_v.iter().copied()),
                    });
                }
            } else if w > start && !path_v.contains(&w) {
                path_v.push(w);
                path_e.push(e);
                self.cycle_dfs(start, adj, path_v, path_e, out, budget)?;
                path_v.pop();
                path_e.pop();
            }
        }
        Ok(())
    }

    /// Partition the edge set `x` into connected components; returns for each
    /// component its edge set and vertex set.
    pub fn components(&self, x: ElemSet) -> Vec<(ElemSet, ElemSet)> {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(parent: &mut Vec<usize>, v: usize) -> usize {
            if parent[v] != v {
                let r = find(parent, parent[v]);
                parent[v] = r;
            }
            parent[v]
        }
        for e in x.iter() {
            let (u, v) = self.endpoints[e];
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
            }
        }
        let mut comps: std::collections::BTreeMap<usize, (ElemSet, ElemSet)> = Default::default();
        for e in x.iter() {
            let (u, v) = self.endpoints[e];
            let r = find(&mut parent, u);
            let entry = comps.entry(r).or_default();
            entry.0.insert(e);
            entry.1.insert(u);
            entry.1.insert(v);
        }
        comps.into_values().collect()
    }
}

/// A simple cycle, stored as its edge-id set plus incident vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub edges: ElemSet,
    pub vertices: ElemSet,
}

/// Recover a closed traversal of a cycle given as an edge set: returns the
/// edge ids in traversal order together with the orientation sign of each
/// step (+1 when traversed tail->head). Loops traverse forward.
pub fn traverse_cycle(g: &MultiGraph, cycle: ElemSet) -> Result<Vec<(usize, bool)>> {
    let edges: Vec<usize> = cycle.iter().collect();
    match edges.len() {
        0 => Ok(Vec::new()),
        1 => {
            if !g.is_loop(edges[0]) {
                return Err(Error::InvalidGraph("single nonloop edge is not a cycle".into()));
            }
            Ok(vec![(edges[0], true)])
        }
        _ => {
            // walk the 2-regular subgraph starting from the first edge, tail side
            let first = edges[0];
            let (start, mut at) = g.endpoints(first);
            let mut order = vec![(first, true)];
            let mut used = ElemSet::singleton(first);
            while at != start {
                let next = cycle
                    .difference(used)
                    .iter()
                    .find(|&e| {
                        let (u, v) = g.endpoints(e);
                        u == at || v == at
                    })
                    .ok_or_else(|| Error::InvalidGraph("edge set is not a closed cycle".into()))?;
                let (u, v) = g.endpoints(next);
                let forward = u == at;
                at = if forward { v } else { u };
                order.push((next, forward));
                used.insert(next);
            }
            if used != cycle {
                return Err(Error::InvalidGraph("edge set is not a single cycle".into()));
            }
            Ok(order)
        }
    }
}
