//! Elementary circuits of a digraph (Johnson's algorithm).
//!
//! A circuit is reported as the vertex sequence `[v0, …, vk]` with the closing
//! arc `vk → v0` implied, rotated so that `v0` is its smallest vertex.
//! Self-loops are circuits of length one.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

pub fn elementary_circuit_paths(arcs: &[(usize, usize)], budget: usize) -> Result<Vec<Vec<usize>>> {
    let mut vertices: BTreeSet<usize> = BTreeSet::new();
    let mut out_arcs: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    let mut circuits = Vec::new();
    for &(a, b) in arcs {
        vertices.insert(a);
        vertices.insert(b);
        if a == b {
            continue;
        }
        out_arcs.entry(a).or_default().insert(b);
    }
    let loops: BTreeSet<usize> = arcs.iter().filter(|(a, b)| a == b).map(|(a, _)| *a).collect();
    for v in loops {
        circuits.push(vec![v]);
    }
    if circuits.len() > budget {
        return Err(over_budget(circuits.len(), budget));
    }

    // dense relabelling
    let verts: Vec<usize> = vertices.into_iter().collect();
    let pos: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = verts.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            out_arcs
                .get(&verts[i])
                .map(|succ| succ.iter().map(|w| pos[w]).collect())
                .unwrap_or_default()
        })
        .collect();

    let mut search = Search {
        adj: &adj,
        member: vec![false; n],
        blocked: vec![false; n],
        blocked_by: vec![Vec::new(); n],
        stack: Vec::new(),
        start: 0,
        found: Vec::new(),
        limit: budget - circuits.len(),
        overflow: false,
    };
    for s in 0..n {
        let component = strong_component_of(&adj, s);
        if component.len() < 2 {
            continue;
        }
        search.start = s;
        for i in 0..n {
            search.member[i] = false;
            search.blocked[i] = false;
            search.blocked_by[i].clear();
        }
        for &v in &component {
            search.member[v] = true;
        }
        search.circuit(s);
        if search.overflow {
            return Err(over_budget(circuits.len() + search.found.len(), budget));
        }
    }
    circuits.extend(search.found.into_iter().map(|c| c.into_iter().map(|i| verts[i]).collect()));
    Ok(circuits)
}

fn over_budget(count: usize, budget: usize) -> Error {
    Error::Budget { what: "circuit count", count: count as u128, budget: budget as u128 }
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    member: Vec<bool>,
    blocked: Vec<bool>,
    blocked_by: Vec<Vec<usize>>,
    stack: Vec<usize>,
    start: usize,
    found: Vec<Vec<usize>>,
    limit: usize,
    overflow: bool,
}

impl Search<'_> {
    fn circuit(&mut self, v: usize) -> bool {
        let mut closed = false;
        self.stack.push(v);
        self.blocked[v] = true;
        for &w in &self.adj[v] {
            if self.overflow {
                break;
            }
            if !self.member[w] {
                continue;
            }
            if w == self.start {
                if self.found.len() == self.limit {
                    self.overflow = true;
                    break;
                }
                self.found.push(self.stack.clone());
                closed = true;
            } else if !self.blocked[w] && self.circuit(w) {
                closed = true;
            }
        }
        if closed {
            self.unblock(v);
        } else {
            for &w in &self.adj[v] {
                if self.member[w] && !self.blocked_by[w].contains(&v) {
                    self.blocked_by[w].push(v);
                }
            }
        }
        self.stack.pop();
        closed
    }

    fn unblock(&mut self, u: usize) {
        self.blocked[u] = false;
        let waiting = std::mem::take(&mut self.blocked_by[u]);
        for w in waiting {
            if self.blocked[w] {
                self.unblock(w);
            }
        }
    }
}

/// Strong component containing `s` in the subgraph induced by vertices `>= s`.
fn strong_component_of(adj: &[Vec<usize>], s: usize) -> Vec<usize> {
    let forward = reach(adj.len(), s, |v| adj[v].iter().copied().filter(|&w| w >= s).collect());
    let mut reverse_adj = vec![Vec::new(); adj.len()];
    for (v, succ) in adj.iter().enumerate() {
        for &w in succ {
            reverse_adj[w].push(v);
        }
    }
    let backward = reach(adj.len(), s, |v| reverse_adj[v].iter().copied().filter(|&w| w >= s).collect());
    (s..adj.len()).filter(|&v| forward[v] && backward[v]).collect()
}

fn reach(n: usize, s: usize, next: impl Fn(usize) -> Vec<usize>) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut todo = vec![s];
    seen[s] = true;
    while let Some(v) = todo.pop() {
        for w in next(v) {
            if !seen[w] {
                seen[w] = true;
                todo.push(w);
            }
        }
    }
    seen
}
