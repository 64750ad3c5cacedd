//! Lasso search on explicit labelled graphs: the common core of UP-word
//! membership, emptiness and the evaluator's track-extension checks.

use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

/// Successor lists with an edge label per edge.
pub(crate) struct LabelledGraph<L> {
    succ: Vec<Vec<(usize, L)>>,
}

impl<L: Copy> LabelledGraph<L> {
    pub fn new(nodes: usize) -> Self {
        LabelledGraph { succ: vec![Vec::new(); nodes] }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, label: L) {
        self.succ[from].push((to, label));
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    /// Breadth-first reachability; returns parent pointers (node, label) and visit order.
    fn bfs(&self, roots: &[usize], allowed: impl Fn(usize) -> bool) -> (Vec<Option<(usize, L)>>, Vec<bool>, Vec<usize>) {
        let n = self.len();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        for &r in roots {
            if !seen[r] && allowed(r) {
                seen[r] = true;
                queue.push_back(r);
            }
        }
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &(w, l) in &self.succ[v] {
                if !seen[w] && allowed(w) {
                    seen[w] = true;
                    parent[w] = Some((v, l));
                    queue.push_back(w);
                }
            }
        }
        (parent, seen, order)
    }

    fn path_to(parent: &[Option<(usize, L)>], target: usize) -> Vec<L> {
        let mut labels = Vec::new();
        let mut v = target;
        while let Some((p, l)) = parent[v] {
            labels.push(l);
            v = p;
        }
        labels.reverse();
        labels
    }

    /// Nodes reachable from `roots`.
    pub fn reachable(&self, roots: &[usize]) -> Vec<bool> {
        self.bfs(roots, |_| true).1
    }

    /// Finds a reachable cycle through an accepting node. Returns the labels
    /// of a shortest path to that node and of a cycle back to it.
    pub fn accepting_lasso(&self, roots: &[usize], accepting: impl Fn(usize) -> bool) -> Option<(Vec<L>, Vec<L>)> {
        let (parent, seen, order) = self.bfs(roots, |_| true);
        let mut g: DiGraph<usize, ()> = DiGraph::with_capacity(order.len(), 0);
        let mut idx = vec![NodeIndex::end(); self.len()];
        for &v in &order {
            idx[v] = g.add_node(v);
        }
        for &v in &order {
            for &(w, _) in &self.succ[v] {
                if seen[w] {
                    g.add_edge(idx[v], idx[w], ());
                }
            }
        }
        let mut comp = vec![usize::MAX; self.len()];
        let sccs = tarjan_scc(&g);
        for (ci, scc) in sccs.iter().enumerate() {
            for &ni in scc {
                comp[g[ni]] = ci;
            }
        }
        // Prefer the accepting node found earliest by the BFS (shortest stem).
        for &a in &order {
            if !accepting(a) {
                continue;
            }
            let c = comp[a];
            let nontrivial = sccs[c].len() > 1 || self.succ[a].iter().any(|&(w, _)| w == a);
            if !nontrivial {
                continue;
            }
            let stem = Self::path_to(&parent, a);
            // Cycle: one edge out of `a` inside the component, then back to `a`.
            let mut best: Option<Vec<L>> = None;
            for &(w, l) in &self.succ[a] {
                if comp[w] != c {
                    continue;
                }
                if w == a {
                    best = Some(vec![l]);
                    break;
                }
                let (par, seen_c, _) = self.bfs(&[w], |x| comp[x] == c);
                if seen_c[a] {
                    let mut cyc = vec![l];
                    cyc.extend(Self::path_to(&par, a));
                    if best.as_ref().is_none_or(|b| cyc.len() < b.len()) {
                        best = Some(cyc);
                    }
                }
            }
            if let Some(cycle) = best {
                return Some((stem, cycle));
            }
        }
        None
    }

    /// Nodes from which some accepting node on a cycle is reachable.
    pub fn live_nodes(&self, accepting: impl Fn(usize) -> bool) -> Vec<bool> {
        let n = self.len();
        let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, 0);
        for _ in 0..n {
            g.add_node(());
        }
        let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            for &(w, _) in &self.succ[v] {
                g.add_edge(NodeIndex::new(v), NodeIndex::new(w), ());
                pred[w].push(v);
            }
        }
        let mut live = vec![false; n];
        let mut queue = VecDeque::new();
        for scc in tarjan_scc(&g) {
            let nontrivial = scc.len() > 1 || self.succ[scc[0].index()].iter().any(|&(w, _)| w == scc[0].index());
            if nontrivial && scc.iter().any(|v| accepting(v.index())) {
                for v in scc {
                    if !live[v.index()] {
                        live[v.index()] = true;
                        queue.push_back(v.index());
                    }
                }
            }
        }
        while let Some(v) = queue.pop_front() {
            for &p in &pred[v] {
                if !live[p] {
                    live[p] = true;
                    queue.push_back(p);
                }
            }
        }
        live
    }
}
