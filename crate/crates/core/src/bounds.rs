//! Outer bounds and completion-time formulas.
//!
//! All comparisons use an absolute tolerance of [`TOLERANCE`]. A prefix set
//! whose joint erasure probability is one makes the corresponding bound
//! vacuous; such reports carry `unbounded = true` and an infinite right-hand
//! side.

use serde::Serialize;

use crate::channel::ChannelConfig;
use crate::error::{Error, Result};
use crate::sideinfo::{bits, InformationGraph, LinearSideInfo, ScalableSideInfo};

pub const TOLERANCE: f64 = 1e-9;
/// Largest N for permutation-based bounds.
pub const MAX_PERMUTATION_NODES: usize = 10;
/// Largest N for subset enumeration.
pub const MAX_SUBSET_NODES: usize = 20;

/// Rates `r_i` in packets per channel use.
pub type RateVector = Vec<f64>;

/// One evaluated permutation inequality `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub permutation: Vec<usize>,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    /// `rhs - lhs`.
    pub slack: f64,
    pub unbounded: bool,
}

/// `num / den` for a probability complement `den`; a zero denominator gives
/// `+inf` for positive numerators and 0 otherwise.
fn ratio(num: f64, den: f64) -> f64 {
    if den <= 0.0 {
        if num <= 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        num / den
    }
}

fn check_rates(r: &[f64], n: usize) -> Result<()> {
    if r.len() != n {
        return Err(Error::Dimension {
            expected: n,
            found: r.len(),
        });
    }
    if let Some(bad) = r.iter().find(|x| !x.is_finite() || **x < 0.0) {
        return Err(Error::Domain(format!("rate {bad} is not a finite nonnegative number")));
    }
    Ok(())
}

fn check_permutation(pi: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if pi.len() != n {
        return Err(Error::Domain(format!("{pi:?} is not a permutation of 0..{n}")));
    }
    for &p in pi {
        if p >= n || seen[p] {
            return Err(Error::Domain(format!("{pi:?} is not a permutation of 0..{n}")));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Evaluates one permutation inequality given the normalized ranks
/// `rho_hat(i)` of the knowledge that prefix `pi[..=i]` holds about `pi[i]`.
fn permutation_report(
    r: &[f64],
    cfg: &ChannelConfig,
    pi: &[usize],
    mut rho_hat: impl FnMut(usize) -> f64,
) -> BoundReport {
    let mut lhs = 0.0;
    let mut rhs = 1.0;
    let mut unbounded = false;
    let mut prefix = 0u64;
    for (i, &p) in pi.iter().enumerate() {
        prefix |= 1 << p;
        let den = 1.0 - cfg.eps_mask(prefix);
        if den <= 0.0 {
            unbounded = true;
        }
        lhs += ratio(r[p], den);
        rhs += ratio(rho_hat(i), den);
    }
    if unbounded {
        rhs = f64::INFINITY;
    }
    let slack = if unbounded { f64::INFINITY } else { rhs - lhs };
    BoundReport {
        permutation: pi.to_vec(),
        lhs,
        rhs,
        satisfied: unbounded || lhs <= rhs + TOLERANCE,
        slack,
        unbounded,
    }
}

/// The outer-bound inequality for permutation `pi`:
/// `sum_i r_{pi_i}/(1 - eps_{B_i}) <= 1 + sum_i rho_hat_i/(1 - eps_{B_i})`
/// with `B_i = {pi_0..pi_i}` and `rho_hat_i` the normalized rank of
/// `[A_{pi_0}^{pi_i}; ...; A_{pi_i}^{pi_i}]`.
pub fn outer_bound(
    r: &[f64],
    si: &LinearSideInfo,
    cfg: &ChannelConfig,
    pi: &[usize],
) -> Result<BoundReport> {
    let n = si.n_receivers();
    check_instance(r, n, cfg)?;
    check_permutation(pi, n)?;
    Ok(permutation_report(r, cfg, pi, |i| {
        crate::sideinfo::normalized_rank(si, &pi[..=i], pi[i], r)
    }))
}

/// Same as [`outer_bound`] for scalable side information.
pub fn outer_bound_scalable(
    r: &[f64],
    si: &ScalableSideInfo,
    cfg: &ChannelConfig,
    pi: &[usize],
) -> Result<BoundReport> {
    let n = si.n_receivers();
    check_instance(r, n, cfg)?;
    check_permutation(pi, n)?;
    Ok(permutation_report(r, cfg, pi, |i| {
        si.normalized_rank(&pi[..=i], pi[i], r)
    }))
}

fn check_instance(r: &[f64], n: usize, cfg: &ChannelConfig) -> Result<()> {
    check_rates(r, n)?;
    if cfg.n_receivers() != n {
        return Err(Error::Dimension {
            expected: n,
            found: cfg.n_receivers(),
        });
    }
    Ok(())
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Result<Vec<Vec<usize>>> {
    if n > MAX_PERMUTATION_NODES {
        return Err(Error::Size {
            what: "receivers for permutation enumeration",
            got: n,
            limit: MAX_PERMUTATION_NODES,
        });
    }
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // Next lexicographic permutation.
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    Ok(out)
}

/// Every permutation inequality plus the index of the binding one (least
/// slack, first in lexicographic order on ties).
#[derive(Clone, Debug, Serialize)]
pub struct BoundSweep {
    pub reports: Vec<BoundReport>,
    pub binding: usize,
}

impl BoundSweep {
    pub fn binding_report(&self) -> &BoundReport {
        &self.reports[self.binding]
    }

    pub fn all_satisfied(&self) -> bool {
        self.reports.iter().all(|r| r.satisfied)
    }
}

fn sweep(reports: Vec<BoundReport>) -> BoundSweep {
    let mut binding = 0;
    for (i, r) in reports.iter().enumerate() {
        if r.slack < reports[binding].slack {
            binding = i;
        }
    }
    BoundSweep { reports, binding }
}

pub fn outer_bound_all(r: &[f64], si: &ScalableSideInfo, cfg: &ChannelConfig) -> Result<BoundSweep> {
    let reports = permutations(si.n_receivers())?
        .iter()
        .map(|pi| outer_bound_scalable(r, si, cfg, pi))
        .collect::<Result<_>>()?;
    Ok(sweep(reports))
}

/// The two two-receiver inequalities (identity and swapped order).
pub fn two_receiver_outer_bound(r: &[f64], si: &ScalableSideInfo, cfg: &ChannelConfig) -> Result<[BoundReport; 2]> {
    if si.n_receivers() != 2 {
        return Err(Error::precondition("the two-receiver bound needs exactly 2 receivers"));
    }
    Ok([
        outer_bound_scalable(r, si, cfg, &[0, 1])?,
        outer_bound_scalable(r, si, cfg, &[1, 0])?,
    ])
}

/// Two-receiver completion time per channel use,
/// `max{(r_1 - rho_11)/(1 - e_1) + (r_2 - rho_12^2)/(1 - e_12),
///      (r_2 - rho_22)/(1 - e_2) + (r_1 - rho_12^1)/(1 - e_12)}`,
/// with normalized ranks. Returns `+inf` when a needed denominator vanishes.
pub fn that_two_receiver(r: &[f64], si: &ScalableSideInfo, cfg: &ChannelConfig) -> Result<f64> {
    if si.n_receivers() != 2 {
        return Err(Error::precondition("the completion-time formula needs exactly 2 receivers"));
    }
    check_instance(r, 2, cfg)?;
    let e1 = cfg.eps_mask(0b01);
    let e2 = cfg.eps_mask(0b10);
    let e12 = cfg.eps_mask(0b11);
    let own = |i: usize| si.normalized_rank(&[i], i, r);
    let joint = |i: usize| si.normalized_rank(&[i, 1 - i], i, r);
    let a = ratio(r[0] - own(0), 1.0 - e1) + ratio(r[1] - joint(1), 1.0 - e12);
    let b = ratio(r[1] - own(1), 1.0 - e2) + ratio(r[0] - joint(0), 1.0 - e12);
    Ok(a.max(b))
}

/// The best permutation and its value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PermutationBound {
    pub value: f64,
    pub permutation: Vec<usize>,
}

/// `max_pi sum_i r~_{pi_i}/(1 - eps_{B_i})` for All-or-Nothing side
/// information, where `r~_{pi_i} = 0` if some earlier receiver in `pi` knows
/// the message of `pi_i`.
///
/// The term for `pi_i` depends only on the set `B_{i-1}` and `pi_i`, so the
/// maximum is found by dynamic programming over subsets. Ties are resolved
/// towards the lexicographically smallest permutation.
pub fn permutation_bound_allornothing(
    g: &InformationGraph,
    r: &[f64],
    cfg: &ChannelConfig,
) -> Result<PermutationBound> {
    let n = g.n();
    if n > MAX_PERMUTATION_NODES {
        return Err(Error::Size {
            what: "receivers for the permutation bound",
            got: n,
            limit: MAX_PERMUTATION_NODES,
        });
    }
    check_instance(r, n, cfg)?;
    let eps = cfg.eps_table()?;
    let size = 1usize << n;
    let full = size - 1;
    // knows[v]: mask of nodes that know v's message.
    let knows: Vec<u64> = (0..n)
        .map(|v| (0..n).filter(|&u| g.has_edge(u, v)).fold(0, |m, u| m | 1 << u))
        .collect();
    let term = |prefix: usize, v: usize| -> f64 {
        let rv = if knows[v] & prefix as u64 != 0 { 0.0 } else { r[v] };
        ratio(rv, 1.0 - eps[prefix | 1 << v])
    };
    // best[s]: best completion value once the nodes of s are placed.
    let mut best = vec![0.0f64; size];
    for s in (0..full).rev() {
        best[s] = (0..n)
            .filter(|&v| s >> v & 1 == 0)
            .map(|v| term(s, v) + best[s | 1 << v])
            .fold(f64::NEG_INFINITY, f64::max);
    }
    let mut permutation = Vec::with_capacity(n);
    let mut s = 0usize;
    while s != full {
        let target = best[s];
        let v = (0..n)
            .filter(|&v| s >> v & 1 == 0)
            .find(|&v| {
                let val = term(s, v) + best[s | 1 << v];
                val == target || (val - target).abs() <= 1e-12 * target.abs().max(1.0)
            })
            .expect("the maximum is attained");
        permutation.push(v);
        s |= 1 << v;
    }
    Ok(PermutationBound {
        value: best[0],
        permutation,
    })
}

/// Maximum-weight acyclic induced subgraph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mwais {
    pub weight: f64,
    pub witness: Vec<usize>,
}

/// Acyclicity of every induced subgraph, indexed by node mask.
pub fn acyclic_subsets(g: &InformationGraph) -> Result<Vec<bool>> {
    let n = g.n();
    if n > MAX_SUBSET_NODES {
        return Err(Error::Size {
            what: "nodes for subset enumeration",
            got: n,
            limit: MAX_SUBSET_NODES,
        });
    }
    let size = 1usize << n;
    let mut ok = vec![false; size];
    ok[0] = true;
    for s in 1..size {
        // A subset is acyclic iff it has a sink whose removal leaves an acyclic set.
        if let Some(v) = bits(s as u64).find(|&v| g.out_mask(v) & s as u64 == 0) {
            ok[s] = ok[s & !(1 << v)];
        }
    }
    Ok(ok)
}

/// Exhaustive MWAIS with real weights. For undirected graphs the feasible
/// sets are the independent sets. The witness is the lexicographically
/// smallest sorted node list among the optimal sets.
pub fn mwais_weighted(g: &InformationGraph, w: &[f64]) -> Result<Mwais> {
    if w.len() != g.n() {
        return Err(Error::Dimension {
            expected: g.n(),
            found: w.len(),
        });
    }
    if let Some(bad) = w.iter().find(|x| !x.is_finite() || **x < 0.0) {
        return Err(Error::Domain(format!("weight {bad} is not a finite nonnegative number")));
    }
    let ok = acyclic_subsets(g)?;
    let size = ok.len();
    let mut weight = vec![0.0f64; size];
    let mut best = 0.0f64;
    for s in 1..size {
        let low = s.trailing_zeros() as usize;
        weight[s] = weight[s & (s - 1)] + w[low];
        if ok[s] && weight[s] > best {
            best = weight[s];
        }
    }
    let tol = 1e-12 * best.max(1.0);
    let mut witness: Option<Vec<usize>> = None;
    for s in 0..size {
        if ok[s] && weight[s] >= best - tol {
            let cand: Vec<usize> = bits(s as u64).collect();
            if witness.as_ref().is_none_or(|cur| cand < *cur) {
                witness = Some(cand);
            }
        }
    }
    Ok(Mwais {
        weight: best,
        witness: witness.expect("the empty set is always feasible"),
    })
}

/// MWAIS with integer demands as weights.
pub fn mwais(g: &InformationGraph, k: &[usize]) -> Result<Mwais> {
    let w: Vec<f64> = k.iter().map(|&x| x as f64).collect();
    mwais_weighted(g, &w)
}

/// `W_k*` as an integer.
pub fn mwais_value(g: &InformationGraph, k: &[usize]) -> Result<usize> {
    Ok(mwais(g, k)?.weight.round() as usize)
}

/// MWAIS evaluated directly at real rates, the limit of `W*_{ceil(nr)}/n`.
pub fn mwais_rate_limit(g: &InformationGraph, r: &[f64]) -> Result<f64> {
    Ok(mwais_weighted(g, r)?.weight)
}

/// `ceil(n r_i)` with a small guard against representation error in `n r_i`.
pub fn scaled_demands(r: &[f64], n: u64) -> Vec<usize> {
    r.iter()
        .map(|&x| (x * n as f64 - 1e-9).ceil().max(0.0) as usize)
        .collect()
}
