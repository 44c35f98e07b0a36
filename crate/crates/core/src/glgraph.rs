//! Group-labeled graphs and biased graphs: walk values, balanced-cycle
//! families, the theta property, and recovery of a group labeling from a
//! bias that satisfies the triangle-completion condition.

use crate::budget::Budget;
use crate::error::{Error, RecoverFailure, Result};
use crate::graph::{traverse_cycle, Cycle, MultiGraph};
use crate::groups::FiniteGroup;
use crate::set::ElemSet;
use std::collections::HashMap;

/// An oriented multigraph with group-labeled edges.
#[derive(Clone, Debug)]
pub struct GroupLabeledGraph {
    graph: MultiGraph,
    labels: Vec<usize>,
    group: FiniteGroup,
}

impl GroupLabeledGraph {
    pub fn new(
        vertex_count: usize,
        edges: Vec<(usize, usize, usize)>,
        group: FiniteGroup,
    ) -> Result<Self> {
        let endpoints: Vec<(usize, usize)> = edges.iter().map(|&(t, h, _)| (t, h)).collect();
        let labels: Vec<usize> = edges.iter().map(|&(_, _, l)| l).collect();
        if let Some(&l) = labels.iter().find(|&&l| l >= group.order()) {
            return Err(Error::InvalidGraph(format!("label {l} outside group of order {}", group.order())));
        }
        Ok(GroupLabeledGraph { graph: MultiGraph::new(vertex_count, endpoints)?, labels, group })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn label(&self, e: usize) -> usize {
        self.labels[e]
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Tail, head, and label of an edge.
    pub fn edge(&self, e: usize) -> (usize, usize, usize) {
        let (t, h) = self.graph.endpoints(e);
        (t, h, self.labels[e])
    }
}

/// A walk given as its vertex sequence and the edges between consecutive
/// vertices. Loop edges are always traversed forward.
#[derive(Clone, Debug)]
pub struct Walk {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Walk {
    pub fn empty(at: usize) -> Self {
        Walk { vertices: vec![at], edges: Vec::new() }
    }
}

/// Product of edge labels along the walk, with exponent -1 for edges
/// traversed against their orientation.
pub fn walk_value(g: &GroupLabeledGraph, walk: &Walk) -> Result<usize> {
    if walk.vertices.len() != walk.edges.len() + 1 {
        return Err(Error::InvalidWalk(format!(
            "{} vertices with {} edges",
            walk.vertices.len(),
            walk.edges.len()
        )));
    }
    let gr = g.group();
    let mut value = gr.identity();
    for (i, &e) in walk.edges.iter().enumerate() {
        if e >= g.edge_count() {
            return Err(Error::InvalidWalk(format!("edge id {e} out of range")));
        }
        let (t, h, label) = g.edge(e);
        let (from, to) = (walk.vertices[i], walk.vertices[i + 1]);
        let step = if (from, to) == (t, h) {
            label
        } else if (from, to) == (h, t) {
            gr.inverse(label)
        } else {
            return Err(Error::InvalidWalk(format!(
                "edge {e} = ({t},{h}) does not join walk vertices ({from},{to})"
            )));
        };
        value = gr.op(value, step);
    }
    Ok(value)
}

/// Value of a closed traversal of a cycle, given as `(edge, forward)` steps.
fn traversal_value(g: &GroupLabeledGraph, order: &[(usize, bool)]) -> usize {
    let gr = g.group();
    let mut value = gr.identity();
    for &(e, forward) in order {
        let label = g.label(e);
        let step = if forward { label } else { gr.inverse(label) };
        value = gr.op(value, step);
    }
    value
}

/// How a biased graph decides balance. `Labeled` and `AllUnbalanced` admit
/// fast component checks; `Explicit` falls back to the stored cycle list.
#[derive(Clone, Debug)]
enum BalanceRule {
    Labeled(GroupLabeledGraph),
    AllUnbalanced,
    Explicit,
}

/// A multigraph together with its family of balanced cycles.
#[derive(Clone, Debug)]
pub struct BiasedGraph {
    graph: MultiGraph,
    cycles: Vec<Cycle>,
    balanced: Vec<bool>,
    cycle_index: HashMap<ElemSet, usize>,
    rule: BalanceRule,
}

/// Per-component summary of an edge subset, used by the frame and lift rank
/// formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BalanceProfile {
    pub vertices: usize,
    pub components: usize,
    pub unbalanced_components: usize,
}

/// The biased graph `(G, B_phi)` of a group labeling: a cycle is balanced
/// when some (equivalently, every) simple closed walk around it has value 1.
pub fn balanced_cycles(g: &GroupLabeledGraph, budget: &Budget) -> Result<BiasedGraph> {
    let cycles = g.graph().all_cycles(budget)?;
    let mut balanced = Vec::with_capacity(cycles.len());
    for c in &cycles {
        let order = traverse_cycle(g.graph(), c.edges)?;
        balanced.push(traversal_value(g, &order) == g.group().identity());
    }
    let cycle_index = cycles.iter().enumerate().map(|(i, c)| (c.edges, i)).collect();
    Ok(BiasedGraph {
        graph: g.graph().clone(),
        cycles,
        balanced,
        cycle_index,
        rule: BalanceRule::Labeled(g.clone()),
    })
}

impl BiasedGraph {
    /// Biased graph with an explicitly given balanced family. Every member
    /// must be a cycle of the graph; the theta property is not checked here
    /// (see [`theta_property_holds`]).
    pub fn from_family(
        graph: MultiGraph,
        family: &[ElemSet],
        budget: &Budget,
    ) -> Result<BiasedGraph> {
        let cycles = graph.all_cycles(budget)?;
        let cycle_index: HashMap<ElemSet, usize> =
            cycles.iter().enumerate().map(|(i, c)| (c.edges, i)).collect();
        let mut balanced = vec![false; cycles.len()];
        for m in family {
            match cycle_index.get(m) {
                Some(&i) => balanced[i] = true,
                None => {
                    return Err(Error::InvalidGraph(format!(
                        "balanced family member {m} is not a cycle"
                    )))
                }
            }
        }
        Ok(BiasedGraph { graph, cycles, balanced, cycle_index, rule: BalanceRule::Explicit })
    }

    /// Biased graph in which every cycle is unbalanced.
    pub fn all_unbalanced(graph: MultiGraph, budget: &Budget) -> Result<BiasedGraph> {
        let cycles = graph.all_cycles(budget)?;
        let cycle_index = cycles.iter().enumerate().map(|(i, c)| (c.edges, i)).collect();
        let balanced = vec![false; cycles.len()];
        Ok(BiasedGraph { graph, cycles, balanced, cycle_index, rule: BalanceRule::AllUnbalanced })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// The balanced family, sorted for deterministic output.
    pub fn balanced_family(&self) -> Vec<ElemSet> {
        let mut fam: Vec<ElemSet> = self
            .cycles
            .iter()
            .zip(&self.balanced)
            .filter(|(_, &b)| b)
            .map(|(c, _)| c.edges)
            .collect();
        fam.sort();
        fam
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn is_balanced_cycle(&self, edges: ElemSet) -> Option<bool> {
        self.cycle_index.get(&edges).map(|&i| self.balanced[i])
    }

    /// The labeling this bias was computed from, if any.
    pub fn source_labeling(&self) -> Option<&GroupLabeledGraph> {
        match &self.rule {
            BalanceRule::Labeled(g) => Some(g),
            _ => None,
        }
    }

    /// True for biases constructed from a labeling or as all-unbalanced,
    /// which satisfy the theta property by construction.
    pub fn theta_by_construction(&self) -> bool {
        !matches!(self.rule, BalanceRule::Explicit)
    }

    /// Component count, incident-vertex count, and unbalanced-component count
    /// of an edge subset.
    pub fn profile(&self, x: ElemSet) -> BalanceProfile {
        match &self.rule {
            BalanceRule::Labeled(g) => labeled_profile(g, x),
            BalanceRule::AllUnbalanced => {
                let comps = self.graph.components(x);
                let mut unbalanced = 0;
                let mut vertices = 0;
                for (edges, verts) in &comps {
                    vertices += verts.len();
                    // a component with any cycle has an unbalanced cycle here
                    if edges.len() >= verts.len() {
                        unbalanced += 1;
                    }
                }
                BalanceProfile { vertices, components: comps.len(), unbalanced_components: unbalanced }
            }
            BalanceRule::Explicit => {
                let comps = self.graph.components(x);
                let mut unbalanced = 0;
                let mut vertices = 0;
                for (edges, verts) in &comps {
                    vertices += verts.len();
                    let bad = self
                        .cycles
                        .iter()
                        .zip(&self.balanced)
                        .any(|(c, &b)| !b && c.edges.is_subset(*edges));
                    if bad {
                        unbalanced += 1;
                    }
                }
                BalanceProfile { vertices, components: comps.len(), unbalanced_components: unbalanced }
            }
        }
    }
}

/// Gain union-find: potentials compose along find paths so each component
/// can be checked for a consistent vertex potential.
fn labeled_profile(g: &GroupLabeledGraph, x: ElemSet) -> BalanceProfile {
    let n = g.vertex_count();
    let gr = g.group().clone();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut pot: Vec<usize> = vec![gr.identity(); n]; // value of walk v -> parent(v)
    let mut unbalanced = vec![false; n];

    fn find(parent: &mut [usize], pot: &mut [usize], gr: &FiniteGroup, v: usize) -> (usize, usize) {
        if parent[v] == v {
            return (v, gr.identity());
        }
        let (root, up) = find(parent, pot, gr, parent[v]);
        pot[v] = gr.op(pot[v], up);
        parent[v] = root;
        (root, pot[v])
    }

    for e in x.iter() {
        let (t, h, label) = g.edge(e);
        if t == h {
            let (r, _) = find(&mut parent, &mut pot, &gr, t);
            if label != gr.identity() {
                unbalanced[r] = true;
            }
            continue;
        }
        let (rt, gt) = find(&mut parent, &mut pot, &gr, t);
        let (rh, gh) = find(&mut parent, &mut pot, &gr, h);
        if rt == rh {
            // closed walk t -> h -> root -> t has value label * gh * gt^-1
            if gr.op(gr.op(label, gh), gr.inverse(gt)) != gr.identity() {
                unbalanced[rt] = true;
            }
        } else {
            // phi(rh -> rt) = gh^-1 * label^-1 * gt
            parent[rh] = rt;
            pot[rh] = gr.op(gr.op(gr.inverse(gh), gr.inverse(label)), gt);
            if unbalanced[rh] {
                unbalanced[rt] = true;
            }
        }
    }

    let mut vertices = 0;
    let mut seen = vec![false; n];
    for e in x.iter() {
        let (t, h) = g.graph().endpoints(e);
        for v in [t, h] {
            if !seen[v] {
                seen[v] = true;
                vertices += 1;
            }
        }
    }
    let mut root_seen = vec![false; n];
    let mut components = 0;
    let mut bad = 0;
    for v in 0..n {
        if seen[v] {
            let (r, _) = find(&mut parent, &mut pot, &gr, v);
            if !root_seen[r] {
                root_seen[r] = true;
                components += 1;
                if unbalanced[r] {
                    bad += 1;
                }
            }
        }
    }
    BalanceProfile { vertices, components, unbalanced_components: bad }
}

/// Check that no theta subgraph contains exactly two balanced cycles.
/// Exhaustive over cycle pairs whose intersection is a path.
pub fn theta_property_holds(b: &BiasedGraph, budget: &Budget) -> Result<bool> {
    let n = b.cycles.len();
    for i in 0..n {
        if b.cycles[i].edges.len() < 2 {
            continue;
        }
        for j in i + 1..n {
            budget.charge("theta enumeration", 1)?;
            let (ci, cj) = (&b.cycles[i], &b.cycles[j]);
            if cj.edges.len() < 2 {
                continue;
            }
            let shared = ci.edges.intersection(cj.edges);
            if shared.is_empty() {
                continue;
            }
            let third = ci.edges.symmetric_difference(cj.edges);
            let Some(&k) = b.cycle_index.get(&third) else { continue };
            if !is_path(&b.graph, shared) {
                continue;
            }
            let count = [i, j, k].iter().filter(|&&c| b.balanced[c]).count();
            if count == 2 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True when the edge set forms a single simple path (connected, acyclic,
/// max degree two).
fn is_path(g: &MultiGraph, edges: ElemSet) -> bool {
    if edges.is_empty() {
        return false;
    }
    let comps = g.components(edges);
    if comps.len() != 1 {
        return false;
    }
    let (es, vs) = &comps[0];
    if es.len() != vs.len() - 1 {
        return false;
    }
    let mut deg = HashMap::new();
    for e in es.iter() {
        let (u, v) = g.endpoints(e);
        *deg.entry(u).or_insert(0usize) += 1;
        *deg.entry(v).or_insert(0usize) += 1;
    }
    deg.values().all(|&d| d <= 2)
}

/// Recover a group of order `t` and a labeling from a biased graph on at
/// least four vertices with exactly `t` parallel edges between each vertex
/// pair, no balanced cycle of size below three, and the triangle-completion
/// condition. The returned labeling reproduces the input bias exactly.
pub fn recover_group_labeling(
    b: &BiasedGraph,
    t: usize,
    budget: &Budget,
) -> Result<(FiniteGroup, GroupLabeledGraph)> {
    let m = b.graph.vertex_count();
    if m < 4 {
        return Err(RecoverFailure::TooFewVertices { got: m, need: 4 }.into());
    }
    if (0..b.graph.edge_count()).any(|e| b.graph.is_loop(e)) {
        return Err(Error::Precondition("labeling recovery requires a loopless graph".into()));
    }
    // exactly t parallel edges between each pair
    let all = b.graph.all_edges();
    let mut lines: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); m]; m];
    for u in 0..m {
        for v in u + 1..m {
            let es = b.graph.edges_between(all, u, v);
            if es.len() != t {
                return Err(RecoverFailure::ParallelCount { u, v, got: es.len(), expected: t }.into());
            }
            lines[u][v] = es;
        }
    }
    // balanced cycles all have size >= 3
    for (c, &bal) in b.cycles.iter().zip(&b.balanced) {
        if bal && c.edges.len() < 3 {
            return Err(RecoverFailure::SmallBalancedCycle { size: c.edges.len() }.into());
        }
    }
    let balanced_triangle = |a: usize, x: usize, c: usize| {
        b.is_balanced_cycle(ElemSet::from_iter([a, x, c])).unwrap_or(false)
    };
    // triangle completion: the unique third edge closing a balanced triangle
    let complete = |a: usize, x: usize, uv: &[usize]| -> Option<usize> {
        uv.iter().copied().find(|&c| balanced_triangle(a, x, c))
    };
    // condition (*)
    for b1 in 0..m {
        for b2 in 0..m {
            for b3 in b2 + 1..m {
                if b1 == b2 || b1 == b3 {
                    continue;
                }
                let l12 = &lines[b1.min(b2)][b1.max(b2)];
                let l13 = &lines[b1.min(b3)][b1.max(b3)];
                let l23 = &lines[b2][b3];
                for &a in l12 {
                    for &x in l13 {
                        budget.charge("labeling recovery", 1)?;
                        if complete(a, x, l23).is_none() {
                            return Err(RecoverFailure::StarCondition { b1, b2, b3 }.into());
                        }
                    }
                }
            }
        }
    }

    let eps = 0usize;
    let mut f: Vec<Option<usize>> = vec![None; b.graph.edge_count()];
    // L_{01}: bijection in edge order, with the epsilon edge first
    for (idx, &e) in lines[0][1].iter().enumerate() {
        f[e] = Some(idx);
    }
    let eps_edge_01 = lines[0][1][0];
    // provisional epsilon edges on every L_{0j}
    let mut eps_0: Vec<usize> = vec![usize::MAX; m];
    eps_0[1] = eps_edge_01;
    for j in 2..m {
        eps_0[j] = lines[0][j][0];
    }
    // step 1: epsilon edges on L_{jk} for 1 <= j < k, completing the two
    // epsilon edges through vertex 0
    let mut eps_jk: Vec<Vec<usize>> = vec![vec![usize::MAX; m]; m];
    for j in 1..m {
        for k in j + 1..m {
            let c = complete(eps_0[j], eps_0[k], &lines[j][k]).expect("(*) was verified");
            eps_jk[j][k] = c;
            f[c] = Some(eps);
        }
    }
    // step 2: label all of L_{0k} for k >= 2 by completion against L_{01}
    // and the epsilon edge of L_{1k}
    for k in 2..m {
        for &a01 in &lines[0][1] {
            let alpha = f[a01].unwrap();
            let c = complete(a01, eps_jk[1][k], &lines[0][k]).expect("(*) was verified");
            if let Some(prev) = f[c] {
                if prev != alpha {
                    return Err(RecoverFailure::BiasMismatch.into());
                }
            }
            f[c] = Some(alpha);
        }
        if lines[0][k].iter().any(|&e| f[e].is_none()) {
            return Err(RecoverFailure::BiasMismatch.into());
        }
    }
    // step 3: label L_{jk} for 1 <= j < k by completion against the epsilon
    // edge of L_{0j} and labeled edges of L_{0k}
    for j in 1..m {
        for k in j + 1..m {
            for &a0k in &lines[0][k] {
                let alpha = f[a0k].unwrap();
                let c = complete(eps_0[j], a0k, &lines[j][k]).expect("(*) was verified");
                if let Some(prev) = f[c] {
                    if prev != alpha {
                        return Err(RecoverFailure::BiasMismatch.into());
                    }
                }
                f[c] = Some(alpha);
            }
        }
    }
    // every line must now be bijectively labeled
    for u in 0..m {
        for v in u + 1..m {
            let mut seen = vec![false; t];
            for &e in &lines[u][v] {
                match f[e] {
                    Some(l) if !seen[l] => seen[l] = true,
                    _ => return Err(RecoverFailure::BiasMismatch.into()),
                }
            }
        }
    }

    // group operation from the (0,1,2) facet: alpha o beta = gamma when the
    // triangle {alpha_01, beta_12, gamma_02} is balanced
    let edge_with_label = |u: usize, v: usize, l: usize| -> usize {
        *lines[u][v].iter().find(|&&e| f[e] == Some(l)).unwrap()
    };
    let mut op = vec![0u8; t * t];
    for alpha in 0..t {
        for beta in 0..t {
            let a = edge_with_label(0, 1, alpha);
            let x = edge_with_label(1, 2, beta);
            let c = complete(a, x, &lines[0][2]).expect("(*) was verified");
            op[alpha * t + beta] = f[c].unwrap() as u8;
        }
    }
    let group = FiniteGroup::from_table(t, op, format!("recovered-{t}"))
        .map_err(|_| Error::Recover(RecoverFailure::Associativity))?;

    // rebuild the labeling on the same edge ids, oriented low -> high
    let mut labeled_edges = vec![(0usize, 0usize, 0usize); b.graph.edge_count()];
    for u in 0..m {
        for v in u + 1..m {
            for &e in &lines[u][v] {
                labeled_edges[e] = (u, v, f[e].unwrap());
            }
        }
    }
    let labeled = GroupLabeledGraph::new(m, labeled_edges, group.clone())?;

    // the recovered bias must equal the input bias
    let recovered = balanced_cycles(&labeled, budget)?;
    if recovered.balanced_family() != b.balanced_family() {
        return Err(RecoverFailure::BiasMismatch.into());
    }
    Ok((group, labeled))
}

/// Serialize a labeled graph: `glgraph <n> <m>` header, one `tail head
/// label` line per edge, then the group in its own format.
pub fn write_glgraph(g: &GroupLabeledGraph) -> String {
    let mut out = format!("glgraph {} {}\n", g.vertex_count(), g.edge_count());
    for e in 0..g.edge_count() {
        let (t, h, l) = g.edge(e);
        out.push_str(&format!("{t} {h} {l}\n"));
    }
    out.push_str(&crate::groups::write_group(g.group()));
    out
}

pub fn read_glgraph(text: &str) -> Result<GroupLabeledGraph> {
    let lines: Vec<&str> = text.lines().collect();
    let header = lines.first().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "glgraph" {
        return Err(Error::Parse { line: 1, msg: format!("bad header `{header}`") });
    }
    let n: usize = toks[1]
        .parse()
        .map_err(|_| Error::Parse { line: 1, msg: format!("bad vertex count `{}`", toks[1]) })?;
    let m: usize = toks[2]
        .parse()
        .map_err(|_| Error::Parse { line: 1, msg: format!("bad edge count `{}`", toks[2]) })?;
    let mut edges = Vec::with_capacity(m);
    for i in 0..m {
        let line = lines
            .get(1 + i)
            .ok_or(Error::Parse { line: 2 + i, msg: "edge list ended early".into() })?;
        let parts: Vec<usize> = line
            .split_whitespace()
            .map(|t| {
                t.parse().map_err(|_| Error::Parse {
                    line: 2 + i,
                    msg: format!("bad edge token `{t}`"),
                })
            })
            .collect::<Result<_>>()?;
        if parts.len() != 3 {
            return Err(Error::Parse { line: 2 + i, msg: "expected `tail head label`".into() });
        }
        edges.push((parts[0], parts[1], parts[2]));
    }
    let (group, _) = crate::groups::read_group(&lines[1 + m..], 2 + m)?;
    GroupLabeledGraph::new(n, edges, group)
}

/// Serialize the balanced family of a biased graph as sorted edge-id lists,
/// one cycle per line, preceded by a `balanced <count>` header.
pub fn write_balanced_family(b: &BiasedGraph) -> String {
    let fam = b.balanced_family();
    let mut out = format!("balanced {}\n", fam.len());
    for c in fam {
        let ids: Vec<String> = c.iter().map(|e| e.to_string()).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}

/// The complete labeled graph on `k` vertices: between each pair `i < j`
/// there are `|group|` parallel edges oriented `i -> j`, one per label.
pub fn complete_labeled_graph(k: usize, group: &FiniteGroup) -> GroupLabeledGraph {
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for l in 0..group.order() {
                edges.push((i, j, l));
            }
        }
    }
    GroupLabeledGraph::new(k, edges, group.clone()).expect("complete labeled graph is valid")
}
