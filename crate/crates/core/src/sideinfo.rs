//! Receiver side information.
//!
//! Two representations are supported:
//!
//! - [`LinearSideInfo`]: receiver `i` knows the row space of `A_i^j` applied
//!   to the packets of receiver `j`, for every ordered pair `(i, j)`.
//! - [`InformationGraph`]: All-or-Nothing knowledge. Edge `(i, j)` means
//!   receiver `i` knows every packet of receiver `j`.
//!
//! Nodes and receivers are numbered from 0. Graph neighbourhoods are `u64`
//! bitmasks, which caps graphs at 64 nodes (exhaustive routines impose much
//! smaller limits anyway).

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::GfMatrix;

/// Packet counts `k_i`, one per receiver.
pub type DemandVector = Vec<usize>;

pub const MAX_GRAPH_NODES: usize = 64;

/// All-or-Nothing side information as a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InformationGraph {
    n: usize,
    out: Vec<u64>,
    directed: bool,
}

impl InformationGraph {
    pub fn empty(n: usize, directed: bool) -> Result<Self> {
        if n > MAX_GRAPH_NODES {
            return Err(Error::Size {
                what: "graph nodes",
                got: n,
                limit: MAX_GRAPH_NODES,
            });
        }
        Ok(InformationGraph {
            n,
            out: vec![0; n],
            directed,
        })
    }

    /// Builds a graph from an edge list. Undirected graphs store both
    /// orientations of every link; duplicate edges are harmless.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], directed: bool) -> Result<Self> {
        let mut g = InformationGraph::empty(n, directed)?;
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(Error::Domain(format!(
                "edge ({i}, {j}) references a node outside 0..{}",
                self.n
            )));
        }
        if i == j {
            return Err(Error::Domain(format!("self-loop at node {i}")));
        }
        self.out[i] |= 1 << j;
        if !self.directed {
            self.out[j] |= 1 << i;
        }
        Ok(())
    }

    /// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn directed_cycle(n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        InformationGraph::from_edges(n, &edges, true)
    }

    /// Undirected cycle `0 - 1 - ... - n-1 - 0`, `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("a cycle needs at least 3 nodes, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        InformationGraph::from_edges(n, &edges, false)
    }

    /// Complement of the cycle on `n >= 3` nodes.
    pub fn antihole(n: usize) -> Result<Self> {
        InformationGraph::cycle(n)?.complement()
    }

    /// Undirected path `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        InformationGraph::from_edges(n, &edges, false)
    }

    /// Complement with the same orientation mode.
    pub fn complement(&self) -> Result<Self> {
        let mut g = InformationGraph::empty(self.n, self.directed)?;
        for i in 0..self.n {
            g.out[i] = self.all_mask() & !self.out[i] & !(1 << i);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Bitmask of all nodes.
    pub fn all_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.out[i] >> j & 1 == 1
    }

    /// Nodes whose message `i` knows, as a bitmask.
    pub fn out_mask(&self, i: usize) -> u64 {
        self.out[i]
    }

    pub fn out_neighbors(&self, i: usize) -> Vec<usize> {
        bits(self.out[i]).collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.out[i].count_ones() as usize
    }

    /// Stored ordered pairs; undirected links appear once as `(i, j)`, `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for i in 0..self.n {
            for j in bits(self.out[i]) {
                if self.directed || i < j {
                    e.push((i, j));
                }
            }
        }
        e
    }

    /// Whether every edge appears in both orientations.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| bits(self.out[i]).all(|j| self.has_edge(j, i)))
    }

    /// Whether the induced subgraph on `mask` has no directed cycle. For
    /// undirected graphs every link is a 2-cycle, so this means independent.
    pub fn induces_acyclic(&self, mask: u64) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let Some(v) = bits(rest).find(|&v| self.out[v] & rest == 0) else {
                return false;
            };
            rest &= !(1 << v);
        }
        true
    }
}

/// Iterates the set bits of a mask in increasing order.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let b = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(b)
    })
}

/// Linear side information: `mats[i][j]` is `A_i^j`, a `l_i^j x k_j` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSideInfo {
    field: &'static Field,
    demands: DemandVector,
    mats: Vec<Vec<GfMatrix>>,
}

impl LinearSideInfo {
    pub fn new(field: &'static Field, demands: DemandVector, mats: Vec<Vec<GfMatrix>>) -> Result<Self> {
        let n = demands.len();
        if mats.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: mats.len(),
            });
        }
        for (i, row) in mats.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, m) in row.iter().enumerate() {
                if m.field() != field {
                    return Err(Error::FieldMismatch);
                }
                if m.cols() != demands[j] {
                    return Err(Error::schema(format!(
                        "A[{i}][{j}] has {} columns but receiver {j} demands {} packets",
                        m.cols(),
                        demands[j]
                    )));
                }
            }
        }
        Ok(LinearSideInfo { field, demands, mats })
    }

    /// No side information: every `A_i^j` is a `1 x k_j` zero matrix.
    pub fn none(field: &'static Field, demands: DemandVector) -> Self {
        let mats = (0..demands.len())
            .map(|_| demands.iter().map(|&k| GfMatrix::zeros(field, 1, k)).collect())
            .collect();
        LinearSideInfo { field, demands, mats }
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn n_receivers(&self) -> usize {
        self.demands.len()
    }

    pub fn demands(&self) -> &[usize] {
        &self.demands
    }

    /// `A_i^j`: what receiver `i` knows about the packets of receiver `j`.
    pub fn mat(&self, i: usize, j: usize) -> &GfMatrix {
        &self.mats[i][j]
    }

    pub fn set_mat(&mut self, i: usize, j: usize, m: GfMatrix) -> Result<()> {
        if m.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        if m.cols() != self.demands[j] {
            return Err(Error::Dimension {
                expected: self.demands[j],
                found: m.cols(),
            });
        }
        self.mats[i][j] = m;
        Ok(())
    }

    /// Rank of `[A_{s_1}^j; A_{s_2}^j; ...]` for the receivers in `knowers`.
    pub fn joint_rank(&self, knowers: &[usize], j: usize) -> usize {
        if knowers.is_empty() {
            return 0;
        }
        let parts: Vec<&GfMatrix> = knowers.iter().map(|&s| &self.mats[s][j]).collect();
        GfMatrix::vstack(&parts).expect("blocks share field and width").rank()
    }

    /// Block-diagonal replication: receiver `j`'s block is copied `copies[j]` times.
    pub fn replicate(&self, copies: &[usize]) -> Result<LinearSideInfo> {
        if copies.len() != self.n_receivers() {
            return Err(Error::Dimension {
                expected: self.n_receivers(),
                found: copies.len(),
            });
        }
        let n = self.n_receivers();
        let demands = (0..n).map(|j| self.demands[j] * copies[j]).collect();
        let mats = (0..n)
            .map(|i| (0..n).map(|j| self.mats[i][j].block_diagonal(copies[j])).collect())
            .collect();
        Ok(LinearSideInfo {
            field: self.field,
            demands,
            mats,
        })
    }
}

/// All-or-Nothing graph as linear side information: `A_i^j` is the `k_j x k_j`
/// identity when `(i, j)` is an edge and a `1 x k_j` zero matrix otherwise.
pub fn graph_to_linear(
    g: &InformationGraph,
    k: &[usize],
    field: &'static Field,
) -> Result<LinearSideInfo> {
    if k.len() != g.n() {
        return Err(Error::Dimension {
            expected: g.n(),
            found: k.len(),
        });
    }
    let mut si = LinearSideInfo::none(field, k.to_vec());
    for (i, j) in g.edges() {
        si.mats[i][j] = GfMatrix::identity(field, k[j]);
        if !g.is_directed() {
            si.mats[j][i] = GfMatrix::identity(field, k[i]);
        }
    }
    Ok(si)
}

/// `(rho(A_i^i), rho([A_i^i; A_j^i]))` for receivers `i != j`.
pub fn rho_hats(si: &LinearSideInfo, i: usize, j: usize) -> Result<(usize, usize)> {
    let n = si.n_receivers();
    if i >= n || j >= n {
        return Err(Error::Domain(format!("receiver out of range for {n} receivers")));
    }
    if i == j {
        return Err(Error::precondition("rho_hats needs two distinct receivers"));
    }
    Ok((si.joint_rank(&[i], i), si.joint_rank(&[i, j], i)))
}

pub fn out_neighbors(g: &InformationGraph, i: usize) -> Vec<usize> {
    g.out_neighbors(i)
}

/// Side information that can be re-instantiated at scaled demands.
///
/// All-or-Nothing graphs scale trivially. A user-supplied linear instance is
/// scaled by block-diagonal replication, which requires every scaled demand
/// to be a whole multiple of the base demand; ranks then scale by the same
/// factor.
#[derive(Clone, Debug)]
pub enum ScalableSideInfo {
    AllOrNothing(InformationGraph),
    Replicated(LinearSideInfo),
}

impl ScalableSideInfo {
    pub fn n_receivers(&self) -> usize {
        match self {
            ScalableSideInfo::AllOrNothing(g) => g.n(),
            ScalableSideInfo::Replicated(si) => si.n_receivers(),
        }
    }

    /// Replication factor per receiver for the target demands.
    pub fn copies_for(&self, demands: &[usize]) -> Result<Vec<usize>> {
        let ScalableSideInfo::Replicated(base) = self else {
            return Ok(vec![1; demands.len()]);
        };
        if demands.len() != base.n_receivers() {
            return Err(Error::Dimension {
                expected: base.n_receivers(),
                found: demands.len(),
            });
        }
        base.demands()
            .iter()
            .zip(demands)
            .enumerate()
            .map(|(j, (&k0, &k))| match (k0, k) {
                (0, 0) => Ok(0),
                (0, _) => Err(Error::schema(format!(
                    "receiver {j} has no packets in the base instance but {k} are demanded"
                ))),
                _ if k % k0 == 0 => Ok(k / k0),
                _ => Err(Error::schema(format!(
                    "demand {k} of receiver {j} is not a multiple of the base demand {k0}"
                ))),
            })
            .collect()
    }

    /// Materializes the instance at the given demands.
    pub fn instantiate(&self, demands: &[usize], field: &'static Field) -> Result<LinearSideInfo> {
        match self {
            ScalableSideInfo::AllOrNothing(g) => graph_to_linear(g, demands, field),
            ScalableSideInfo::Replicated(base) => base.replicate(&self.copies_for(demands)?),
        }
    }

    /// `rho([A_s^j : s in knowers])` at the given demands, without building
    /// the scaled matrices.
    pub fn joint_rank_at(&self, knowers: &[usize], j: usize, demands: &[usize]) -> Result<usize> {
        match self {
            ScalableSideInfo::AllOrNothing(g) => {
                Ok(if knowers.iter().any(|&s| g.has_edge(s, j)) {
                    demands[j]
                } else {
                    0
                })
            }
            ScalableSideInfo::Replicated(base) => {
                let copies = self.copies_for(demands)?;
                Ok(copies[j] * base.joint_rank(knowers, j))
            }
        }
    }

    /// Normalized rank `r_j * rho / k_j`, independent of the scale.
    pub fn normalized_rank(&self, knowers: &[usize], j: usize, r: &[f64]) -> f64 {
        match self {
            ScalableSideInfo::AllOrNothing(g) => {
                if knowers.iter().any(|&s| g.has_edge(s, j)) {
                    r[j]
                } else {
                    0.0
                }
            }
            ScalableSideInfo::Replicated(base) => normalized_rank(base, knowers, j, r),
        }
    }
}

/// `r_j * rho([A_s^j : s in knowers]) / k_j`, zero when `k_j = 0`.
pub fn normalized_rank(si: &LinearSideInfo, knowers: &[usize], j: usize, r: &[f64]) -> f64 {
    let k = si.demands()[j];
    if k == 0 {
        return 0.0;
    }
    r[j] * si.joint_rank(knowers, j) as f64 / k as f64
}
