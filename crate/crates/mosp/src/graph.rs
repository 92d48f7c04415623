//! Directed multigraphs with multi-dimensional nonnegative integer arc costs.
//!
//! Storage is forward-star: one offset array plus flat arrays for heads and
//! cost components, so scanning the out-arcs of a node touches contiguous
//! memory. Parallel arcs are allowed, self-loops are not (they can never lie
//! on a cost-minimal simple path and the search strategies rely on their
//! absence).

use thiserror::Error;

/// A single cost component. Costs are nonnegative integers; fractional
/// inputs must be scaled by the caller before graph construction.
pub type Cost = u64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("arc {arc}: node index {index} out of range for {node_count} nodes")]
    NodeOutOfRange {
        arc: usize,
        index: u32,
        node_count: usize,
    },
    #[error("arc {arc}: cost vector has {found} components, expected {expected}")]
    DimensionMismatch {
        arc: usize,
        expected: usize,
        found: usize,
    },
    #[error("arc {arc}: self-loop at node {node}")]
    SelfLoop { arc: usize, node: u32 },
    #[error("cost dimension must be at least 1")]
    ZeroDimension,
    #[error("node count {0} exceeds the supported maximum of {max}", max = u32::MAX)]
    TooManyNodes(usize),
}

/// Immutable arc-list graph in forward-star layout.
#[derive(Debug, Clone)]
pub struct Graph {
    dim: usize,
    /// `first_out[u]..first_out[u + 1]` are the arc ids with tail `u`.
    first_out: Vec<u32>,
    head: Vec<u32>,
    /// Arc `a` stores its components at `a * dim..(a + 1) * dim`.
    cost: Vec<Cost>,
    /// Tails, kept so arcs can be enumerated without a node scan.
    tail: Vec<u32>,
}

impl Graph {
    /// Builds a graph from `(tail, head, cost)` triples.
    ///
    /// `dim` must be given explicitly (it cannot be inferred when `arcs` is
    /// empty). Arcs keep their relative order within each tail's out-list.
    pub fn build(
        node_count: usize,
        dim: usize,
        arcs: &[(u32, u32, Vec<Cost>)],
    ) -> Result<Graph, GraphError> {
        if dim == 0 {
            return Err(GraphError::ZeroDimension);
        }
        if node_count > u32::MAX as usize {
            return Err(GraphError::TooManyNodes(node_count));
        }
        for (i, (t, h, c)) in arcs.iter().enumerate() {
            for &endpoint in [t, h] {
                if endpoint as usize >= node_count {
                    return Err(GraphError::NodeOutOfRange {
                        arc: i,
                        index: endpoint,
                        node_count,
                    });
                }
            }
            if t == h {
                return Err(GraphError::SelfLoop { arc: i, node: *t });
            }
            if c.len() != dim {
                return Err(GraphError::DimensionMismatch {
                    arc: i,
                    expected: dim,
                    found: c.len(),
                });
            }
        }

        // Stable counting sort by tail keeps per-node insertion order.
        let mut first_out = vec![0u32; node_count + 1];
        for (t, _, _) in arcs {
            first_out[*t as usize + 1] += 1;
        }
        for u in 0..node_count {
            first_out[u + 1] += first_out[u];
        }
        let mut next = first_out.clone();
        let mut head = vec![0u32; arcs.len()];
        let mut tail = vec![0u32; arcs.len()];
        let mut cost = vec![0; arcs.len() * dim];
        for (t, h, c) in arcs {
            let slot = next[*t as usize] as usize;
            next[*t as usize] += 1;
            head[slot] = *h;
            tail[slot] = *t;
            cost[slot * dim..(slot + 1) * dim].copy_from_slice(c);
        }

        Ok(Graph {
            dim,
            first_out,
            head,
            cost,
            tail,
        })
    }

    pub fn node_count(&self) -> usize {
        self.first_out.len() - 1
    }

    pub fn arc_count(&self) -> usize {
        self.head.len()
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn out_degree(&self, u: u32) -> usize {
        let u = u as usize;
        assert!(u < self.node_count(), "node {u} out of range");
        (self.first_out[u + 1] - self.first_out[u]) as usize
    }

    /// Iterates `(head, cost)` over the out-arcs of `u` in insertion order.
    ///
    /// Panics if `u` is out of range; callers validate endpoints once at the
    /// API boundary.
    pub fn out_arcs(&self, u: u32) -> OutArcs<'_> {
        let u = u as usize;
        assert!(u < self.node_count(), "node {u} out of range");
        OutArcs {
            graph: self,
            next: self.first_out[u] as usize,
            end: self.first_out[u + 1] as usize,
        }
    }

    /// Iterates all arcs as `(tail, head, cost)`, grouped by tail.
    pub fn arcs(&self) -> impl Iterator<Item = (u32, u32, &[Cost])> + '_ {
        (0..self.arc_count()).map(move |a| {
            (
                self.tail[a],
                self.head[a],
                &self.cost[a * self.dim..(a + 1) * self.dim],
            )
        })
    }
}

pub struct OutArcs<'g> {
    graph: &'g Graph,
    next: usize,
    end: usize,
}

impl<'g> Iterator for OutArcs<'g> {
    type Item = (u32, &'g [Cost]);

    fn next(&mut self) -> Option<Self::Item> {
        if self.next == self.end {
            return None;
        }
        let a = self.next;
        self.next += 1;
        let d = self.graph.dim;
        Some((self.graph.head[a], &self.graph.cost[a * d..(a + 1) * d]))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rem = self.end - self.next;
        (rem, Some(rem))
    }
}

impl<'g> ExactSizeIterator for OutArcs<'g> {}
