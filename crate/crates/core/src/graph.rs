//! The undirected graph `𝒢_A` of a matrix and the permutations derived from it.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::error::{Error, Predicate, Result};
use crate::qmatrix::QMatrix;

pub use crate::permutation::Permutation;

/// Adjacency structure of `𝒢_A`: an edge `{i, j}` whenever `a_ij` or `a_ji`
/// is nonzero, and a loop at `i` whenever `a_ii` is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjGraph {
    n: usize,
    adj: Vec<bool>,
    components: Vec<Vec<usize>>,
    edge_count: usize,
    loop_count: usize,
}

impl AdjGraph {
    /// Builds a graph from an undirected edge list (loops allowed).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = alloc::vec![false; n * n];
        for &(i, j) in edges {
            adj[i * n + j] = true;
            adj[j * n + i] = true;
        }
        Self::from_adjacency(n, adj)
    }

    fn from_adjacency(n: usize, adj: Vec<bool>) -> Self {
        let mut edge_count = 0;
        let mut loop_count = 0;
        for i in 0..n {
            if adj[i * n + i] {
                loop_count += 1;
            }
            for j in i + 1..n {
                if adj[i * n + j] {
                    edge_count += 1;
                }
            }
        }
        let mut g = Self {
            n,
            adj,
            components: Vec::new(),
            edge_count,
            loop_count,
        };
        g.components = g.search_components();
        g
    }

    fn search_components(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut seen = alloc::vec![false; n];
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for w in 0..n {
                    if w != v && self.adj[v * n + w] && !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `A_δ[i][j]`.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    /// Number of edges between distinct vertices.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn loop_count(&self) -> usize {
        self.loop_count
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&w| w != v && self.has_edge(v, w))
    }

    /// Edges (`i < j`) inside a vertex set.
    pub fn edges_within(&self, vertices: &[usize]) -> usize {
        let mut e = 0;
        for (a, &i) in vertices.iter().enumerate() {
            for &j in &vertices[a + 1..] {
                if self.has_edge(i, j) {
                    e += 1;
                }
            }
        }
        e
    }

    /// The 0/1 adjacency matrix `A_δ`, row-major.
    pub fn adjacency_matrix(&self) -> Vec<u8> {
        self.adj.iter().map(|&b| b as u8).collect()
    }
}

/// `𝒢_A` with the default scale-aware zero threshold.
pub fn build_graph(a: &QMatrix) -> AdjGraph {
    build_graph_with_threshold(a, a.zero_threshold())
}

/// `𝒢_A` treating entries of norm `<= threshold` as zero.
pub fn build_graph_with_threshold(a: &QMatrix, threshold: f64) -> AdjGraph {
    let n = a.n();
    let nz = |i: usize, j: usize| a[(i, j)].norm() > threshold;
    let mut adj = alloc::vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            adj[i * n + j] = nz(i, j) || nz(j, i);
        }
    }
    AdjGraph::from_adjacency(n, adj)
}

/// No cycles: no loops and every component on `v` vertices has `v − 1` edges.
pub fn is_cycle_free(g: &AdjGraph) -> bool {
    g.loop_count == 0
        && g
            .components
            .iter()
            .all(|c| g.edges_within(c) + 1 == c.len())
}

/// Connected and cycle-free.
pub fn is_tree(g: &AdjGraph) -> bool {
    g.loop_count == 0 && g.components.len() == 1 && g.edge_count + 1 == g.n
}

/// Groups every component contiguously, components in order of their
/// smallest vertex. `PᵀAP` is then block diagonal with connected blocks.
pub fn component_permutation(g: &AdjGraph) -> Permutation {
    let order: Vec<usize> = g.components.iter().flatten().copied().collect();
    Permutation::new(order).expect("components partition the vertex set")
}

/// A permutation making a nilpotent tree matrix strictly upper triangular.
///
/// Peels leaves, smallest index first. A leaf `v` hanging from `u` goes to
/// the back when only `a_uv` is nonzero and to the front when only `a_vu` is;
/// a leaf with both entries nonzero is skipped until it is the last choice.
pub fn tree_triangularizing_permutation(a: &QMatrix, g: &AdjGraph, tol: f64) -> Result<Permutation> {
    if !is_tree(g) {
        return Err(Error::Precondition(Predicate::Tree));
    }
    if !a.is_nilpotent(tol) {
        return Err(Error::Precondition(Predicate::Nilpotent));
    }
    let n = g.n();
    if a.n() != n {
        return Err(Error::Dimension { expected: n, got: a.n() });
    }
    let nz = |i: usize, j: usize| !a.is_zero_entry(i, j);
    let mut alive = alloc::vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.neighbors(v).count()).collect();
    let mut front = Vec::with_capacity(n);
    let mut back = Vec::with_capacity(n);
    for _ in 0..n {
        let mut placed = false;
        for v in 0..n {
            if !alive[v] || degree[v] > 1 {
                continue;
            }
            let parent = g.neighbors(v).find(|&w| alive[w]);
            match parent {
                None => {
                    // Last vertex standing.
                    front.push(v);
                }
                Some(u) => match (nz(u, v), nz(v, u)) {
                    (true, false) => back.push(v),
                    (false, true) => front.push(v),
                    _ => continue,
                },
            }
            alive[v] = false;
            if let Some(u) = parent {
                degree[u] -= 1;
            }
            placed = true;
            break;
        }
        if !placed {
            return Err(Error::Internal("no admissible leaf while peeling a nilpotent tree"));
        }
    }
    front.extend(back.into_iter().rev());
    let p = Permutation::new(front)?;
    if !a.permute(&p)?.is_strictly_upper_triangular() {
        return Err(Error::Internal("leaf peeling produced a non-triangular ordering"));
    }
    Ok(p)
}

/// A permutation making `PᵀAP` strictly upper triangular, found by a
/// topological sort (smallest index first) of the directed support of `A`.
/// Fails when the support has a directed cycle or a loop.
pub fn triangularizing_permutation(a: &QMatrix) -> Result<Permutation> {
    let n = a.n();
    let nz = |i: usize, j: usize| !a.is_zero_entry(i, j);
    if (0..n).any(|i| nz(i, i)) {
        return Err(Error::Precondition(Predicate::StrictlyUpperTriangular));
    }
    let mut indeg: Vec<usize> = (0..n).map(|j| (0..n).filter(|&i| nz(i, j)).count()).collect();
    let mut done = alloc::vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .find(|&v| !done[v] && indeg[v] == 0)
            .ok_or(Error::Precondition(Predicate::StrictlyUpperTriangular))?;
        done[v] = true;
        order.push(v);
        for w in 0..n {
            if nz(v, w) {
                indeg[w] -= 1;
            }
        }
    }
    Permutation::new(order)
}
