use crate::gf2::{BitVector, SparseBitMatrix};

/// Bipartite graph of a parity-check matrix with edges stored check-major.
///
/// Edges of check `i` are `check_start[i]..check_start[i + 1]`; the edges of variable `j`
/// are `var_edges[var_start[j]..var_start[j + 1]]`.
#[derive(Clone, Debug)]
pub struct TannerGraph {
    n: usize,
    m: usize,
    edge_check: Vec<usize>,
    edge_var: Vec<usize>,
    check_start: Vec<usize>,
    var_start: Vec<usize>,
    var_edges: Vec<usize>,
}

impl TannerGraph {
    pub fn new(h: &SparseBitMatrix) -> Self {
        let (m, n) = (h.rows(), h.cols());
        let mut edge_check = Vec::with_capacity(h.nnz());
        let mut edge_var = Vec::with_capacity(h.nnz());
        let mut check_start = Vec::with_capacity(m + 1);
        check_start.push(0);
        for (i, row) in h.iter_rows().enumerate() {
            for &j in row {
                edge_check.push(i);
                edge_var.push(j);
            }
            check_start.push(edge_check.len());
        }
        let mut var_start = vec![0; n + 1];
        for &j in &edge_var {
            var_start[j + 1] += 1;
        }
        for j in 0..n {
            var_start[j + 1] += var_start[j];
        }
        let mut fill = var_start.clone();
        let mut var_edges = vec![0; edge_var.len()];
        // edges are visited in check order, so each variable's list is sorted by check
        for (e, &j) in edge_var.iter().enumerate() {
            var_edges[fill[j]] = e;
            fill[j] += 1;
        }
        Self {
            n,
            m,
            edge_check,
            edge_var,
            check_start,
            var_start,
            var_edges,
        }
    }

    /// Variable-node count.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Check-node count.
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_var.len()
    }

    #[inline]
    pub fn edge_check(&self, e: usize) -> usize {
        self.edge_check[e]
    }

    #[inline]
    pub fn edge_var(&self, e: usize) -> usize {
        self.edge_var[e]
    }

    /// Edge range of check `i`.
    #[inline]
    pub fn check_edges(&self, i: usize) -> std::ops::Range<usize> {
        self.check_start[i]..self.check_start[i + 1]
    }

    /// Edge indices incident to variable `j`.
    #[inline]
    pub fn var_edges(&self, j: usize) -> &[usize] {
        &self.var_edges[self.var_start[j]..self.var_start[j + 1]]
    }

    /// N(i): variables adjacent to check `i`.
    pub fn check_neighbors(&self, i: usize) -> &[usize] {
        &self.edge_var[self.check_edges(i)]
    }

    /// N(j): checks adjacent to variable `j`.
    pub fn var_neighbors(&self, j: usize) -> Vec<usize> {
        self.var_edges(j).iter().map(|&e| self.edge_check[e]).collect()
    }

    pub fn check_degree(&self, i: usize) -> usize {
        self.check_start[i + 1] - self.check_start[i]
    }

    pub fn var_degree(&self, j: usize) -> usize {
        self.var_start[j + 1] - self.var_start[j]
    }

    /// Syndrome bit of check `i` for estimate `x`.
    #[inline]
    pub fn check_parity(&self, i: usize, x: &BitVector) -> bool {
        self.check_neighbors(i)
            .iter()
            .fold(false, |acc, &j| acc ^ x.get(j))
    }

    pub fn syndrome(&self, x: &BitVector) -> BitVector {
        let mut s = BitVector::zeros(self.m);
        for i in 0..self.m {
            if self.check_parity(i, x) {
                s.set(i, true);
            }
        }
        s
    }
}

pub fn build_graph(h: &SparseBitMatrix) -> TannerGraph {
    TannerGraph::new(h)
}
