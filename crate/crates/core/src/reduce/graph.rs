//! Bounded reduction graphs with nodes identified up to alpha-equivalence.

use std::collections::{HashMap, VecDeque};
use std::fmt::{self, Write as _};

use super::classify::{is_defined, is_value};
use super::rules::RuleSet;
use super::step::{is_normal, one_step_reducts, Redex};
use crate::syntax::{AlphaKey, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphBudget {
    pub max_nodes: usize,
    pub max_depth: usize,
}

impl Default for GraphBudget {
    fn default() -> Self {
        GraphBudget {
            max_nodes: 500,
            max_depth: 60,
        }
    }
}

impl GraphBudget {
    pub fn new(max_nodes: usize, max_depth: usize) -> Self {
        GraphBudget {
            max_nodes,
            max_depth,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    NodeBudget,
    DepthBudget,
    /// Every node was expanded but the graph has a cycle, so reduction
    /// sequences are unbounded and exceed any depth budget.
    Cycle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphStatus {
    Complete,
    Truncated(Truncation),
}

impl fmt::Display for GraphStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphStatus::Complete => f.write_str("complete"),
            GraphStatus::Truncated(Truncation::NodeBudget) => {
                f.write_str("truncated (node budget)")
            }
            GraphStatus::Truncated(Truncation::DepthBudget) => {
                f.write_str("truncated (depth budget)")
            }
            GraphStatus::Truncated(Truncation::Cycle) => f.write_str("truncated (cycle)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub source: usize,
    pub redex: Redex,
    pub target: usize,
}

#[derive(Clone, Debug)]
pub struct ReductionGraph {
    rules: RuleSet,
    nodes: Vec<Term>,
    depth: Vec<usize>,
    expanded: Vec<bool>,
    edges: Vec<Edge>,
    index: HashMap<AlphaKey, usize>,
    status: GraphStatus,
}

impl ReductionGraph {
    pub fn nodes(&self) -> &[Term] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn rules(&self) -> RuleSet {
        self.rules
    }

    pub fn root(&self) -> &Term {
        &self.nodes[0]
    }

    pub fn status(&self) -> GraphStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == GraphStatus::Complete
    }

    /// BFS distance of node `i` from the root.
    pub fn depth_of(&self, i: usize) -> usize {
        self.depth[i]
    }

    pub fn index_of(&self, t: &Term) -> Option<usize> {
        self.index.get(&AlphaKey::of(t)).copied()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.index_of(t).is_some()
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .filter(move |e| e.source == i)
            .map(|e| e.target)
    }

    /// Expanded nodes without outgoing edges, i.e. normal forms.
    pub fn sinks(&self) -> Vec<usize> {
        let mut has_out = vec![false; self.nodes.len()];
        for e in &self.edges {
            has_out[e.source] = true;
        }
        (0..self.nodes.len())
            .filter(|&i| self.expanded[i] && !has_out[i])
            .collect()
    }

    /// Whether `target` is reachable from `source` by at least one step.
    pub fn reaches_in_one_or_more(&self, source: usize, target: usize) -> bool {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack: Vec<usize> = self.successors(source).collect();
        while let Some(i) = stack.pop() {
            if i == target {
                return true;
            }
            if !std::mem::replace(&mut seen[i], true) {
                stack.extend(self.successors(i));
            }
        }
        false
    }

    fn has_cycle(&self) -> bool {
        let n = self.nodes.len();
        let mut adjacency = vec![Vec::new(); n];
        for e in &self.edges {
            adjacency[e.source].push(e.target);
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; n];
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            state[start] = 1;
            while let Some(&mut (node, ref mut next)) = stack.last_mut() {
                if let Some(&succ) = adjacency[node].get(*next) {
                    *next += 1;
                    match state[succ] {
                        0 => {
                            state[succ] = 1;
                            stack.push((succ, 0));
                        }
                        1 => return true,
                        _ => {}
                    }
                } else {
                    state[node] = 2;
                    stack.pop();
                }
            }
        }
        false
    }

    /// Graphviz rendering. Sinks are doubly outlined and truncated graphs
    /// carry a `// truncated` comment line.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph reduction {\n");
        if !self.is_complete() {
            out.push_str("  // truncated\n");
        }
        let sinks = self.sinks();
        for (i, t) in self.nodes.iter().enumerate() {
            let label = escape_dot(&t.to_string());
            if sinks.contains(&i) {
                let _ = writeln!(out, "  n{i} [label=\"{label}\", peripheries=2];");
            } else {
                let _ = writeln!(out, "  n{i} [label=\"{label}\"];");
            }
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  n{} -> n{} [label=\"{}\"];",
                e.source,
                e.target,
                escape_dot(&e.redex.to_string())
            );
        }
        out.push_str("}\n");
        out
    }
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Breadth-first expansion of the reducts of `t`.
///
/// The graph is complete when every node was expanded within the budget and
/// it is acyclic; a complete graph therefore certifies strong normalisation.
pub fn reduction_graph(t: &Term, rules: RuleSet, budget: GraphBudget) -> ReductionGraph {
    let mut g = ReductionGraph {
        rules,
        nodes: vec![t.clone()],
        depth: vec![0],
        expanded: vec![false],
        edges: Vec::new(),
        index: HashMap::from([(AlphaKey::of(t), 0)]),
        status: GraphStatus::Complete,
    };
    let mut truncated = None;
    let mut queue = VecDeque::from([0usize]);
    'bfs: while let Some(i) = queue.pop_front() {
        if g.depth[i] >= budget.max_depth {
            if !is_normal(&g.nodes[i], rules) {
                truncated.get_or_insert(Truncation::DepthBudget);
            }
            continue;
        }
        for (redex, reduct) in one_step_reducts(&g.nodes[i], rules) {
            let key = AlphaKey::of(&reduct);
            let target = match g.index.get(&key) {
                Some(&j) => j,
                None => {
                    if g.nodes.len() >= budget.max_nodes {
                        truncated = Some(Truncation::NodeBudget);
                        break 'bfs;
                    }
                    let j = g.nodes.len();
                    g.nodes.push(reduct);
                    g.depth.push(g.depth[i] + 1);
                    g.expanded.push(false);
                    g.index.insert(key, j);
                    queue.push_back(j);
                    j
                }
            };
            g.edges.push(Edge {
                source: i,
                redex,
                target,
            });
        }
        g.expanded[i] = true;
    }
    if truncated.is_none() && g.has_cycle() {
        truncated = Some(Truncation::Cycle);
    }
    if let Some(reason) = truncated {
        g.status = GraphStatus::Truncated(reason);
    }
    g
}

/// Values reachable from `t` in its (possibly truncated) LC_MINUS graph.
#[derive(Clone, Debug)]
pub struct ValueSet {
    pub values: Vec<Term>,
    pub complete: bool,
}

impl ValueSet {
    pub fn contains(&self, t: &Term) -> bool {
        let key = AlphaKey::of(t);
        self.values.iter().any(|v| AlphaKey::of(v) == key)
    }

    pub fn is_subset_of(&self, other: &ValueSet) -> bool {
        self.values.iter().all(|v| other.contains(v))
    }
}

pub fn values_of(t: &Term, budget: GraphBudget) -> ValueSet {
    values_in(&reduction_graph(t, RuleSet::LC_MINUS, budget))
}

pub fn values_in(g: &ReductionGraph) -> ValueSet {
    ValueSet {
        values: g.nodes().iter().filter(|n| is_value(n)).cloned().collect(),
        complete: g.is_complete(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

/// Bounded check of perfect normalisation (strongly normalising and every
/// reduct defined) under LC_MINUS.
pub fn perfectly_normalising(t: &Term, budget: GraphBudget) -> Verdict {
    verdict_of(&reduction_graph(t, RuleSet::LC_MINUS, budget))
}

pub fn verdict_of(g: &ReductionGraph) -> Verdict {
    if !g.nodes().iter().all(is_defined) {
        return Verdict::No;
    }
    match g.status() {
        GraphStatus::Complete => Verdict::Yes,
        GraphStatus::Truncated(Truncation::Cycle) => Verdict::No,
        GraphStatus::Truncated(_) => Verdict::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id() -> Term {
        Term::lam("x", Term::var("x"))
    }

    #[test]
    fn constructor_graph_is_a_single_node() {
        for rules in [RuleSet::FULL, RuleSet::LC_MINUS, RuleSet::LCOM, RuleSet::LB] {
            let g = reduction_graph(&Term::constr("C"), rules, GraphBudget::default());
            assert_eq!(g.nodes().len(), 1);
            assert!(g.edges().is_empty());
            assert!(g.is_complete());
        }
    }

    #[test]
    fn omega_is_cyclic() {
        let delta = Term::lam("x", Term::app(Term::var("x"), Term::var("x")));
        let omega = Term::app(delta.clone(), delta);
        let g = reduction_graph(&omega, RuleSet::LC_MINUS, GraphBudget::default());
        assert_eq!(g.status(), GraphStatus::Truncated(Truncation::Cycle));
        assert_eq!(g.nodes().len(), 1);
        assert_eq!(
            perfectly_normalising(&omega, GraphBudget::default()),
            Verdict::No
        );
    }

    #[test]
    fn node_budget_truncates() {
        // (\x. x x x) (\x. x x x) grows without bound
        let d3 = Term::lam(
            "x",
            Term::apps(Term::var("x"), [Term::var("x"), Term::var("x")]),
        );
        let t = Term::app(d3.clone(), d3);
        let g = reduction_graph(&t, RuleSet::LC_MINUS, GraphBudget::new(20, 1000));
        assert_eq!(g.status(), GraphStatus::Truncated(Truncation::NodeBudget));
        assert!(g.nodes().len() <= 20);
        for e in g.edges() {
            let r = crate::reduce::contract(&g.nodes()[e.source], &e.redex).unwrap();
            assert!(crate::syntax::alpha_eq(&r, &g.nodes()[e.target]));
        }
    }

    #[test]
    fn values_of_examples() {
        let c = Term::constr("C");
        let v = values_of(&c, GraphBudget::default());
        assert!(v.complete && v.values == vec![c.clone()]);
        let v = values_of(&Term::Daimon, GraphBudget::default());
        assert!(v.complete && v.values.is_empty());
        let v = values_of(&Term::app(id(), c.clone()), GraphBudget::default());
        assert!(v.complete && v.values == vec![c]);
    }

    #[test]
    fn dot_marks_sinks() {
        let g = reduction_graph(
            &Term::app(id(), Term::constr("C")),
            RuleSet::LC_MINUS,
            GraphBudget::default(),
        );
        let dot = g.to_dot();
        assert!(dot.contains("n1 [label=\"C\", peripheries=2];"), "{dot}");
        assert!(dot.contains("n0 -> n1 [label=\"AL @ root\"];"), "{dot}");
        assert!(!dot.contains("// truncated"));
    }
}
