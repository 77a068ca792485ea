//! Associated digraph, strongly connected components and the Frobenius
//! normal form.
//!
//! Edge `i → j` exists exactly when `a_ij ≠ 0` with `j ≠ i`. Structural
//! zeros are exact zeros; no tolerance is applied here, because dropping a
//! tiny entry can change irreducibility.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    adjacency: Vec<Vec<usize>>,
}

impl Digraph {
    /// Builds the graph with an edge `i → j` (`i ≠ j`) wherever `nonzero(i, j)`.
    pub fn from_pattern(n: usize, nonzero: impl Fn(usize, usize) -> bool) -> Self {
        let adjacency = (0..n)
            .map(|i| (0..n).filter(|&j| j != i && nonzero(i, j)).collect())
            .collect();
        Self { adjacency }
    }

    /// Builds a graph from an explicit edge list; self-loops are dropped.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(i, j) in edges {
            if i != j {
                adjacency[i].push(j);
            }
        }
        for out in &mut adjacency {
            out.sort_unstable();
            out.dedup();
        }
        Self { adjacency }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, out)| out.iter().map(move |&j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    /// Subgraph induced on `vertices`, relabeled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut local = vec![usize::MAX; self.n()];
        for (k, &v) in vertices.iter().enumerate() {
            local[v] = k;
        }
        let adjacency = vertices
            .iter()
            .map(|&v| {
                let mut out: Vec<usize> = self.adjacency[v]
                    .iter()
                    .filter(|&&w| local[w] != usize::MAX)
                    .map(|&w| local[w])
                    .collect();
                out.sort_unstable();
                out
            })
            .collect();
        Self { adjacency }
    }

    pub fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.n() <= 1 || strongly_connected_components(self).len() == 1
    }
}

pub fn associated_digraph(a: &ComplexMatrix) -> Digraph {
    Digraph::from_pattern(a.n(), |i, j| {
        let z = a[(i, j)];
        z.re != 0.0 || z.im != 0.0
    })
}

/// Tarjan's algorithm with an explicit call stack.
///
/// Components are emitted in reverse topological order of the condensation:
/// every edge between two components points from a later one to an earlier
/// one. Each component is sorted ascending.
pub fn strongly_connected_components(g: &Digraph) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let n = g.n();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next_index = 0usize;
    // (vertex, position in its successor list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let succ = g.successors(v);
            if *pos < succ.len() {
                let w = succ[*pos];
                *pos += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps
}

/// Permutation to block lower triangular form with irreducible diagonal blocks.
///
/// Blocks `0..independent_count` are the independent ones: their rows have
/// no entries outside the block. Every later block has at least one nonzero
/// coupling block to the left.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusForm {
    /// `permutation[old] = new`.
    pub permutation: Vec<usize>,
    /// Original indices of each block, ascending; blocks appear in permuted order.
    pub blocks: Vec<Vec<usize>>,
    pub independent: Vec<bool>,
    pub independent_count: usize,
    pub dependent_count: usize,
}

impl FrobeniusForm {
    pub fn n(&self) -> usize {
        self.permutation.len()
    }

    /// `order[new] = old`.
    pub fn order(&self) -> Vec<usize> {
        let mut order = vec![0; self.n()];
        for (old, &new) in self.permutation.iter().enumerate() {
            order[new] = old;
        }
        order
    }

    /// Positions occupied by block `p` after permutation.
    pub fn block_range(&self, p: usize) -> Range<usize> {
        let start: usize = self.blocks[..p].iter().map(Vec::len).sum();
        start..start + self.blocks[p].len()
    }

    /// Block index of every original vertex.
    pub fn block_of(&self) -> Vec<usize> {
        let mut of = vec![0; self.n()];
        for (p, block) in self.blocks.iter().enumerate() {
            for &v in block {
                of[v] = p;
            }
        }
        of
    }
}

pub fn frobenius_normal_form(a: &ComplexMatrix) -> FrobeniusForm {
    frobenius_form_of(&associated_digraph(a))
}

/// Frobenius form of an arbitrary digraph.
///
/// Independent blocks (condensation sinks) come first in ascending order of
/// their smallest vertex. Dependent blocks follow in a topological order that
/// places a block only after every block it points to, breaking ties by the
/// smallest vertex.
pub fn frobenius_form_of(g: &Digraph) -> FrobeniusForm {
    let n = g.n();
    let comps = strongly_connected_components(g);
    let mut comp_of = vec![0usize; n];
    for (c, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = c;
        }
    }
    let k = comps.len();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (u, v) in g.edges() {
        let (cu, cv) = (comp_of[u], comp_of[v]);
        if cu != cv {
            out[cu].push(cv);
            preds[cv].push(cu);
        }
    }
    for list in out.iter_mut().chain(preds.iter_mut()) {
        list.sort_unstable();
        list.dedup();
    }

    let min_vertex = |c: usize| comps[c][0];
    let mut sinks: Vec<usize> = (0..k).filter(|&c| out[c].is_empty()).collect();
    sinks.sort_by_key(|&c| min_vertex(c));

    let mut remaining: Vec<usize> = out.iter().map(Vec::len).collect();
    let mut ordered = sinks.clone();
    let mut ready = BinaryHeap::new();
    let release = |c: usize, remaining: &mut Vec<usize>, ready: &mut BinaryHeap<_>| {
        for &p in &preds[c] {
            remaining[p] -= 1;
            if remaining[p] == 0 {
                ready.push(Reverse((min_vertex(p), p)));
            }
        }
    };
    for &c in &sinks {
        release(c, &mut remaining, &mut ready);
    }
    while let Some(Reverse((_, c))) = ready.pop() {
        ordered.push(c);
        release(c, &mut remaining, &mut ready);
    }
    debug_assert_eq!(ordered.len(), k);

    let mut permutation = vec![0usize; n];
    let mut next = 0;
    let blocks: Vec<Vec<usize>> = ordered.iter().map(|&c| comps[c].clone()).collect();
    for block in &blocks {
        for &v in block {
            permutation[v] = next;
            next += 1;
        }
    }
    let independent_count = sinks.len();
    let independent = (0..k).map(|p| p < independent_count).collect();
    FrobeniusForm {
        permutation,
        blocks,
        independent,
        independent_count,
        dependent_count: k - independent_count,
    }
}

/// `PᵀAP`: entry `(new_i, new_j)` of the result is `a[old_i][old_j]`.
pub fn permute(a: &ComplexMatrix, form: &FrobeniusForm) -> Result<ComplexMatrix> {
    if form.n() != a.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            actual: form.n(),
        });
    }
    let order = form.order();
    Ok(ComplexMatrix::from_fn(a.n(), |i, j| a[(order[i], order[j])]))
}
