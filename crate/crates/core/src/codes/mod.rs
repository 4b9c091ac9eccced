//! Parity-check matrices as Tanner graphs.
//!
//! A code is held as a bipartite adjacency structure between variable nodes
//! (codeword bits, columns of H) and check nodes (parity constraints, rows of
//! H), with a dense edge numbering shared by all message-passing decoders.
//! Graphs are immutable once built and safe to share across worker threads.

mod alist;
mod construction;
mod encoder;

pub use alist::{parse_alist, write_alist};
pub use construction::{
    construct_regular_code, construct_regular_code_detailed, RegularConstruction,
};
pub use encoder::SystematicEncoder;

use crate::bits::BitVector;
use crate::error::{Error, Result};

/// Parameters of a regular LDPC code.
///
/// `n` codeword bits, `m = n - k` parity checks, every variable node of
/// degree `dv` and every check node of degree `dc`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub dv: usize,
    pub dc: usize,
}

impl CodeSpec {
    /// Validates the regular-code constraints and derives `k = n - m`.
    pub fn new(n: usize, m: usize, dv: usize, dc: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidSpec(format!(
                "code dimensions must be positive, got n={n}, m={m}"
            )));
        }
        if m >= n {
            return Err(Error::InvalidSpec(format!(
                "need m < n for a positive-rate code, got n={n}, m={m}"
            )));
        }
        if dv < 2 || dc < 2 {
            return Err(Error::InvalidSpec(format!(
                "node degrees must be at least 2, got dv={dv}, dc={dc}"
            )));
        }
        if n * dv != m * dc {
            return Err(Error::InvalidSpec(format!(
                "edge counts disagree: n*dv = {} but m*dc = {}",
                n * dv,
                m * dc
            )));
        }
        if dc > n || dv > m {
            return Err(Error::InvalidSpec(format!(
                "degrees exceed graph dimensions: dv={dv} (m={m}), dc={dc} (n={n})"
            )));
        }
        Ok(CodeSpec {
            n,
            m,
            k: n - m,
            dv,
            dc,
        })
    }

    /// Code rate `k/n`.
    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    /// Total edge count `n * dv` (= `m * dc`).
    pub fn edges(&self) -> usize {
        self.n * self.dv
    }
}

/// Bipartite Tanner graph of a binary parity-check matrix.
///
/// Adjacency lists are kept in canonical form (ascending counterpart index),
/// and every edge carries a dense id in `[0, E)`. Edge ids are assigned in
/// check-major order: all edges of check 0 first, then check 1, and so on,
/// each block ordered by variable index.
#[derive(Clone, Debug, PartialEq)]
pub struct TannerGraph {
    num_vars: usize,
    num_checks: usize,
    /// Per check, ascending variable indices.
    check_neighbors: Vec<Vec<usize>>,
    /// Per variable, ascending check indices.
    var_neighbors: Vec<Vec<usize>>,
    /// First edge id of each check (length `num_checks + 1`).
    check_edge_start: Vec<usize>,
    /// Per variable, edge ids aligned with `var_neighbors`.
    var_edge_ids: Vec<Vec<usize>>,
    /// Per edge, its variable node.
    edge_var: Vec<usize>,
    /// Per edge, its check node.
    edge_check: Vec<usize>,
    /// Regular-construction parameters, when the graph came from one.
    spec: Option<CodeSpec>,
}

impl TannerGraph {
    /// Builds a graph from per-check adjacency (variable indices, any order;
    /// duplicates within a check are rejected).
    pub fn from_check_adjacency(
        num_vars: usize,
        mut check_neighbors: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let num_checks = check_neighbors.len();
        for (c, vars) in check_neighbors.iter_mut().enumerate() {
            vars.sort_unstable();
            if vars.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidSpec(format!(
                    "check {c} lists a variable twice; H must be 0/1"
                )));
            }
            if let Some(&v) = vars.last() {
                if v >= num_vars {
                    return Err(Error::InvalidSpec(format!(
                        "check {c} references variable {v}, but n = {num_vars}"
                    )));
                }
            }
        }

        let mut var_neighbors = vec![Vec::new(); num_vars];
        let mut var_edge_ids = vec![Vec::new(); num_vars];
        let mut check_edge_start = Vec::with_capacity(num_checks + 1);
        let mut edge_var = Vec::new();
        let mut edge_check = Vec::new();

        check_edge_start.push(0);
        for (c, vars) in check_neighbors.iter().enumerate() {
            for &v in vars {
                let e = edge_var.len();
                edge_var.push(v);
                edge_check.push(c);
                var_neighbors[v].push(c);
                var_edge_ids[v].push(e);
            }
            check_edge_start.push(edge_var.len());
        }
        // Check-major assignment visits each variable's checks in ascending
        // order, so var_neighbors is already canonical.

        Ok(TannerGraph {
            num_vars,
            num_checks,
            check_neighbors,
            var_neighbors,
            check_edge_start,
            var_edge_ids,
            edge_var,
            edge_check,
            spec: None,
        })
    }

    pub(crate) fn with_spec(mut self, spec: CodeSpec) -> Self {
        self.spec = Some(spec);
        self
    }

    /// Number of variable nodes (codeword length n).
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Number of check nodes (parity constraints m).
    pub fn num_checks(&self) -> usize {
        self.num_checks
    }

    /// Total number of edges E.
    pub fn num_edges(&self) -> usize {
        self.edge_var.len()
    }

    /// Regular-code parameters when this graph came from
    /// [`construct_regular_code`].
    pub fn spec(&self) -> Option<&CodeSpec> {
        self.spec.as_ref()
    }

    /// Variable neighbors of check `c`, ascending.
    pub fn check_neighbors(&self, c: usize) -> &[usize] {
        &self.check_neighbors[c]
    }

    /// Check neighbors of variable `v`, ascending.
    pub fn var_neighbors(&self, v: usize) -> &[usize] {
        &self.var_neighbors[v]
    }

    /// Edge ids incident to check `c`, aligned with `check_neighbors(c)`.
    pub fn check_edges(&self, c: usize) -> std::ops::Range<usize> {
        self.check_edge_start[c]..self.check_edge_start[c + 1]
    }

    /// Edge ids incident to variable `v`, aligned with `var_neighbors(v)`.
    pub fn var_edges(&self, v: usize) -> &[usize] {
        &self.var_edge_ids[v]
    }

    /// Variable endpoint of edge `e`.
    pub fn edge_var(&self, e: usize) -> usize {
        self.edge_var[e]
    }

    /// Check endpoint of edge `e`.
    pub fn edge_check(&self, e: usize) -> usize {
        self.edge_check[e]
    }

    pub fn var_degree(&self, v: usize) -> usize {
        self.var_neighbors[v].len()
    }

    pub fn check_degree(&self, c: usize) -> usize {
        self.check_neighbors[c].len()
    }

    /// Largest variable-node degree in the graph.
    pub fn max_var_degree(&self) -> usize {
        self.var_neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Largest check-node degree in the graph.
    pub fn max_check_degree(&self) -> usize {
        self.check_neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `(dv, dc)` when all variable and check degrees are uniform.
    pub fn regular_degrees(&self) -> Option<(usize, usize)> {
        let dv = self.var_neighbors.first()?.len();
        let dc = self.check_neighbors.first()?.len();
        if self.var_neighbors.iter().all(|l| l.len() == dv)
            && self.check_neighbors.iter().all(|l| l.len() == dc)
        {
            Some((dv, dc))
        } else {
            None
        }
    }

    /// Syndrome `s = H x^T` over GF(2): `s[c]` is the XOR of `x` over the
    /// neighbors of check `c`.
    pub fn syndrome(&self, x_hat: &BitVector) -> Result<BitVector> {
        if x_hat.len() != self.num_vars {
            return Err(Error::Dimension {
                what: "syndrome input",
                expected: self.num_vars,
                actual: x_hat.len(),
            });
        }
        let mut s = BitVector::zeros(self.num_checks);
        for c in 0..self.num_checks {
            let mut acc = 0u8;
            for &v in &self.check_neighbors[c] {
                acc ^= x_hat.get(v);
            }
            s.set(c, acc);
        }
        Ok(s)
    }

    /// True iff `H c^T = 0 (mod 2)`.
    pub fn is_codeword(&self, c: &BitVector) -> Result<bool> {
        Ok(self.syndrome(c)?.is_zero())
    }

    /// Edge list as `check_id,var_id` CSV, one edge per line, for debugging.
    pub fn to_edge_csv(&self) -> String {
        let mut out = String::from("check_id,var_id\n");
        for c in 0..self.num_checks {
            for &v in &self.check_neighbors[c] {
                out.push_str(&format!("{c},{v}\n"));
            }
        }
        out
    }

    /// True when some pair of variables shares two checks.
    pub fn has_four_cycle(&self) -> bool {
        // A 4-cycle is a pair of checks whose neighbor lists intersect twice.
        for v in 0..self.num_vars {
            let checks = &self.var_neighbors[v];
            for (i, &a) in checks.iter().enumerate() {
                for &b in &checks[i + 1..] {
                    if intersection_count_exceeds(
                        &self.check_neighbors[a],
                        &self.check_neighbors[b],
                        1,
                    ) {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// True iff |a ∩ b| > bound, for ascending-sorted slices.
fn intersection_count_exceeds(a: &[usize], b: &[usize], bound: usize) -> bool {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                if count > bound {
                    return true;
                }
                i += 1;
                j += 1;
            }
        }
    }
    false
}
