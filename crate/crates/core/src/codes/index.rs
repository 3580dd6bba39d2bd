//! Errorless index codes for special information graphs.
//!
//! Every code here is XOR-only. A slot is a list of `(node, packet)` pairs
//! and carries the XOR of those packets; [`XorSchedule::to_transmission`]
//! turns it into an explicit coefficient vector. Most codes consume packets
//! in order, one fresh packet per node per slot; the directed-cycle code
//! reuses a packet in two consecutive slots.
//!
//! Cycle and antihole codes take demands listed in cycle order, position `c`
//! being adjacent (on the cycle) to `c - 1` and `c + 1` modulo `N`; the
//! returned slots use the same positions. The family dispatcher maps
//! positions back to graph labels. Codes that need the minimum-demand node at
//! a particular position rotate internally and undo the rotation.

use serde::Serialize;

use super::schedule::TransmissionSchedule;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::sideinfo::{bits, InformationGraph};

/// Slots as lists of `(node, packet_index)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct XorSchedule {
    pub slots: Vec<Vec<(usize, usize)>>,
}

impl XorSchedule {
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Nodes involved in slot `t`.
    pub fn nodes(&self, t: usize) -> Vec<usize> {
        self.slots[t].iter().map(|&(v, _)| v).collect()
    }

    /// Renames node `v` to `map[v]` in every slot.
    pub fn relabel(&self, map: &[usize]) -> XorSchedule {
        XorSchedule {
            slots: self
                .slots
                .iter()
                .map(|s| s.iter().map(|&(v, l)| (map[v], l)).collect())
                .collect(),
        }
    }

    /// Checks that every referenced packet exists.
    pub fn check_packets(&self, k: &[usize]) -> Result<()> {
        for (t, s) in self.slots.iter().enumerate() {
            for &(v, l) in s {
                if v >= k.len() || l >= k[v] {
                    return Err(Error::Invariant(format!(
                        "slot {t} references packet {l} of node {v}, which does not exist"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Explicit coefficient vectors over the global packet space.
    pub fn to_transmission(&self, k: &[usize], field: &'static Field) -> Result<TransmissionSchedule> {
        self.check_packets(k)?;
        let mut out = TransmissionSchedule::new(field, k.to_vec());
        for s in &self.slots {
            out.push_xor(s)?;
        }
        Ok(out)
    }
}

/// Residual weights plus the slots emitted so far. `w[v]` counts packets of
/// `v` not yet used; fresh packets are taken in index order.
struct Plan {
    k: Vec<usize>,
    w: Vec<usize>,
    slots: Vec<Vec<(usize, usize)>>,
}

impl Plan {
    fn new(k: &[usize]) -> Self {
        Plan {
            k: k.to_vec(),
            w: k.to_vec(),
            slots: Vec::new(),
        }
    }

    /// XOR of the next fresh packet of each node.
    fn send(&mut self, nodes: Vec<usize>) -> Result<()> {
        if nodes.is_empty() {
            return Err(Error::Invariant("attempted to send an empty slot".into()));
        }
        let mut slot = Vec::with_capacity(nodes.len());
        for &v in &nodes {
            if self.w[v] == 0 {
                return Err(Error::Invariant(format!("node {v} has no packet left to send")));
            }
            slot.push((v, self.k[v] - self.w[v]));
            self.w[v] -= 1;
        }
        self.slots.push(slot);
        Ok(())
    }

    fn positive_mask(&self) -> u64 {
        self.w
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    fn done(&self) -> bool {
        self.w.iter().all(|&x| x == 0)
    }

    fn finish(self) -> XorSchedule {
        XorSchedule { slots: self.slots }
    }
}

/// Position `c` of a rotated cycle maps to `(c + shift) mod n`.
fn rotation(n: usize, shift: usize) -> Vec<usize> {
    (0..n).map(|c| (c + shift) % n).collect()
}

fn rotate_weights(k: &[usize], map: &[usize]) -> Vec<usize> {
    map.iter().map(|&v| k[v]).collect()
}

fn argmin(k: &[usize]) -> usize {
    (0..k.len()).min_by_key(|&i| (k[i], i)).expect("nonempty")
}

fn cycle_adjacency(n: usize) -> Vec<u64> {
    (0..n)
        .map(|i| 1u64 << ((i + 1) % n) | 1u64 << ((i + n - 1) % n))
        .collect()
}

fn check_len(k: &[usize], n: usize) -> Result<()> {
    if k.len() != n {
        return Err(Error::Dimension {
            expected: n,
            found: k.len(),
        });
    }
    Ok(())
}

/// Uncoded transmission of every packet; requires an acyclic graph.
pub fn code_acyclic(g: &InformationGraph, k: &[usize]) -> Result<XorSchedule> {
    check_len(k, g.n())?;
    if !g.induces_acyclic(g.all_mask()) {
        return Err(Error::precondition("the information graph has a cycle"));
    }
    let mut plan = Plan::new(k);
    for (v, &kv) in k.iter().enumerate() {
        for _ in 0..kv {
            plan.send(vec![v])?;
        }
    }
    Ok(plan.finish())
}

/// Directed cycle `0 -> 1 -> ... -> N-1 -> 0` (position `c` knows `c + 1`).
///
/// With the minimum-demand node rotated to the last position, each round
/// sends `p_c + p_{c+1}` for `c = 0..N-2`, delivering one packet to every
/// node in `N - 1` slots. After `min k` rounds the rest goes uncoded.
pub fn code_directed_cycle(k: &[usize]) -> Result<XorSchedule> {
    let n = k.len();
    if n < 2 {
        return Err(Error::precondition("a directed cycle needs at least 2 nodes"));
    }
    let m = argmin(k);
    let map = rotation(n, m + 1);
    let w = rotate_weights(k, &map);
    let rounds = w[n - 1];
    let mut plan = Plan::new(&w);
    for round in 0..rounds {
        for c in 0..n - 1 {
            plan.slots.push(vec![(c, round), (c + 1, round)]);
        }
    }
    for v in plan.w.iter_mut() {
        *v -= rounds;
    }
    for c in 0..n {
        while plan.w[c] > 0 {
            plan.send(vec![c])?;
        }
    }
    Ok(plan.finish().relabel(&map))
}

fn forest_into(plan: &mut Plan, adj: &[u64]) -> Result<()> {
    loop {
        let pos = plan.positive_mask();
        if pos == 0 {
            return Ok(());
        }
        // A forest restricted to positive nodes always has a node with at
        // most one positive neighbour.
        let Some(i0) = bits(pos).find(|&i| (adj[i] & pos).count_ones() <= 1) else {
            return Err(Error::Invariant("positive subgraph of a forest has no leaf".into()));
        };
        match bits(adj[i0] & pos).next() {
            None => plan.send(vec![i0])?,
            Some(i1) => plan.send(vec![i0, i1])?,
        }
    }
}

/// Whether an undirected graph has no cycle.
pub fn is_forest(g: &InformationGraph) -> bool {
    if g.is_directed() {
        return false;
    }
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, j) in g.edges() {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Undirected forest. Repeatedly takes the lowest-index positive node with
/// at most one positive neighbour and sends it alone or XORed with that
/// neighbour. Achieves `T = W*`.
pub fn code_tree(g: &InformationGraph, k: &[usize]) -> Result<XorSchedule> {
    check_len(k, g.n())?;
    if !is_forest(g) {
        return Err(Error::precondition("the information graph is not an undirected forest"));
    }
    let adj: Vec<u64> = (0..g.n()).map(|i| g.out_mask(i)).collect();
    let mut plan = Plan::new(k);
    forest_into(&mut plan, &adj)?;
    Ok(plan.finish())
}

/// Cycle with a zero-demand node: removing it leaves a path.
fn zero_node_into(plan: &mut Plan) -> Result<()> {
    let n = plan.w.len();
    let Some(z) = plan.w.iter().position(|&x| x == 0) else {
        return Err(Error::precondition("no node with zero demand"));
    };
    let mut adj = cycle_adjacency(n);
    for v in [(z + 1) % n, (z + n - 1) % n] {
        adj[v] &= !(1 << z);
    }
    adj[z] = 0;
    forest_into(plan, &adj)
}

fn check_cycle_len(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::precondition(format!("a cycle needs at least 3 nodes, got {n}")));
    }
    if n > crate::bounds::MAX_SUBSET_NODES {
        return Err(Error::Size {
            what: "cycle length",
            got: n,
            limit: crate::bounds::MAX_SUBSET_NODES,
        });
    }
    Ok(())
}

/// Undirected cycle in which some node has zero demand. `T = W*`.
pub fn code_cycle_zero_node(k: &[usize]) -> Result<XorSchedule> {
    check_cycle_len(k.len())?;
    let mut plan = Plan::new(k);
    zero_node_into(&mut plan)?;
    Ok(plan.finish())
}

/// Node masks of all independent sets of the cycle `C_n`.
fn cycle_independent_sets(n: usize) -> Vec<u64> {
    let adj = cycle_adjacency(n);
    (0..1u64 << n)
        .filter(|&s| bits(s).all(|v| adj[v] & s == 0))
        .collect()
}

/// Even cycle. While every node is positive, look for a maximum-weight
/// independent set with two cyclic gaps of exactly three; if one exists,
/// cut the two middle edges of those gaps and finish with the forest code.
/// Otherwise XOR the pair `(0, 1)` once and re-examine. A zero node switches
/// to the zero-node code. `T = W*`.
pub fn code_even_cycle(k: &[usize]) -> Result<XorSchedule> {
    let n = k.len();
    check_cycle_len(n)?;
    if n % 2 != 0 {
        return Err(Error::precondition(format!("cycle length {n} is not even")));
    }
    let sets = cycle_independent_sets(n);
    let mut plan = Plan::new(k);
    loop {
        if plan.done() {
            break;
        }
        if plan.w.contains(&0) {
            zero_node_into(&mut plan)?;
            break;
        }
        if let Some((a, b)) = gap_three_witness(&plan.w, &sets)? {
            let mut adj = cycle_adjacency(n);
            for x in [a, b] {
                let (u, v) = ((x + 1) % n, (x + 2) % n);
                adj[u] &= !(1 << v);
                adj[v] &= !(1 << u);
            }
            forest_into(&mut plan, &adj)?;
            break;
        }
        plan.send(vec![0, 1])?;
    }
    Ok(plan.finish())
}

/// Scans maximum-weight independent sets in lexicographic order for one
/// with at least two gaps of exactly three; returns the starting nodes of
/// the first two such gaps.
fn gap_three_witness(w: &[usize], sets: &[u64]) -> Result<Option<(usize, usize)>> {
    let n = w.len();
    let weight = |s: u64| bits(s).map(|v| w[v]).sum::<usize>();
    let best = sets.iter().map(|&s| weight(s)).max().unwrap_or(0);
    let mut optimal: Vec<Vec<usize>> = sets
        .iter()
        .filter(|&&s| weight(s) == best)
        .map(|&s| bits(s).collect())
        .collect();
    optimal.sort();
    for s in &optimal {
        let gaps: Vec<usize> = (0..s.len())
            .filter(|&t| {
                let next = s[(t + 1) % s.len()];
                (next + n - s[t]) % n == 3
            })
            .map(|t| s[t])
            .collect();
        match gaps.len() {
            0 => {}
            1 => {
                return Err(Error::Invariant(format!(
                    "maximum-weight set {s:?} has a single gap of three on an even cycle"
                )))
            }
            _ => return Ok(Some((gaps[0], gaps[1]))),
        }
    }
    Ok(None)
}

/// Odd cycle `N = 2g + 1 >= 5`. With the minimum node `m` rotated to
/// position 0, sends `p_0 + p_1` and `p_0 + p_{N-1}` for `floor(k_m / 2)`
/// rounds, one more `p_0 + p_1` if `k_m` is odd, then the zero-node code.
/// `W* <= T <= W* + ceil(min k / 2)`.
pub fn code_odd_cycle(k: &[usize]) -> Result<XorSchedule> {
    let n = k.len();
    check_cycle_len(n)?;
    if n % 2 == 0 || n < 5 {
        return Err(Error::precondition(format!("odd-cycle code needs odd N >= 5, got {n}")));
    }
    let m = argmin(k);
    let map = rotation(n, m);
    let w = rotate_weights(k, &map);
    let mut plan = Plan::new(&w);
    if w[0] > 0 {
        for _ in 0..w[0] / 2 {
            plan.send(vec![0, 1])?;
            plan.send(vec![0, n - 1])?;
        }
        if w[0] % 2 == 1 {
            plan.send(vec![0, 1])?;
        }
    }
    zero_node_into(&mut plan)?;
    Ok(plan.finish().relabel(&map))
}

/// `max_i (w_i + w_{i+1})`, the maximum-weight independent set of an antihole.
pub fn antihole_w_star(w: &[usize]) -> usize {
    let n = w.len();
    (0..n).map(|i| w[i] + w[(i + 1) % n]).max().unwrap_or(0)
}

fn check_antihole_len(n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::precondition(format!("an antihole needs at least 4 nodes, got {n}")));
    }
    Ok(())
}

/// One slot for an antihole in which some node has zero demand. The slot
/// XORs a set of pairwise non-consecutive positive nodes that meets every
/// maximum-weight consecutive pair, so `W*` drops by exactly one.
fn antihole_general_step(plan: &mut Plan) -> Result<()> {
    let n = plan.w.len();
    let Some(z) = plan.w.iter().position(|&x| x == 0) else {
        return Err(Error::precondition("no node with zero demand"));
    };
    // Rotated view with the zero node at position 0.
    let w: Vec<usize> = (0..n).map(|c| plan.w[(c + z) % n]).collect();
    let wstar = antihole_w_star(&w);
    let mut chosen = vec![false; n];
    if w.contains(&wstar) {
        for c in 0..n {
            if w[c] == wstar {
                chosen[c] = true;
            }
        }
        for j in 1..n - 1 {
            if w[j] > 0 && w[j + 1] > 0 && w[j] + w[j + 1] == wstar && !chosen[j] && !chosen[j + 1] {
                chosen[j + 1] = true;
            }
        }
    } else {
        let last = if n % 2 == 0 { n - 2 } else { n - 1 };
        for c in (2..=last).step_by(2) {
            if w[c] > 0 {
                chosen[c] = true;
            }
        }
    }
    let nodes: Vec<usize> = (0..n).filter(|&c| chosen[c]).map(|c| (c + z) % n).collect();
    plan.send(nodes)
}

fn antihole_general_into(plan: &mut Plan) -> Result<()> {
    while !plan.done() {
        antihole_general_step(plan)?;
    }
    Ok(())
}

/// Antihole with some zero-demand node. `T = W*`.
pub fn code_antihole_general(k: &[usize]) -> Result<XorSchedule> {
    check_antihole_len(k.len())?;
    let mut plan = Plan::new(k);
    if !plan.done() {
        antihole_general_into(&mut plan)?;
    }
    Ok(plan.finish())
}

/// Even antihole `N = 2g >= 4`. While all nodes are positive, XOR one packet
/// from each of positions `0, 2, ..., N-2`; otherwise take a zero-node step.
/// `T = W* = max_i (k_i + k_{i+1})`.
pub fn code_even_antihole(k: &[usize]) -> Result<XorSchedule> {
    let n = k.len();
    check_antihole_len(n)?;
    if n % 2 != 0 {
        return Err(Error::precondition(format!("antihole size {n} is not even")));
    }
    let mut plan = Plan::new(k);
    while !plan.done() {
        if plan.w.contains(&0) {
            antihole_general_step(&mut plan)?;
        } else {
            plan.send((0..n).step_by(2).collect())?;
        }
    }
    Ok(plan.finish())
}

/// Bookkeeping of the odd-antihole rounds, in rotated positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddAntiholeTrace {
    /// Position `c` of the rotated antihole is graph position `(c + shift) mod N`.
    pub shift: usize,
    pub g: usize,
    pub full_rounds: usize,
    pub partial_slots: usize,
    /// Rotated demands before the rounds.
    pub initial: Vec<usize>,
    /// Residual demands after each full round.
    pub after_round: Vec<Vec<usize>>,
    /// Residual demands after the partial round (equal to the last full-round
    /// residual when there is none).
    pub after_partial: Vec<usize>,
    /// Node sets of the first full round, rotated positions.
    pub first_round: Vec<Vec<usize>>,
}

/// Node set of slot `m` (1-based) in a round: the 1-based labels
/// `(2m + 2l) mod N` for `l = 1..=g`, with 0 read as `N`, returned 0-based.
pub fn odd_antihole_slot(n: usize, m: usize) -> Vec<usize> {
    let g = (n - 1) / 2;
    (1..=g)
        .map(|l| {
            let x = (2 * m + 2 * l) % n;
            if x == 0 {
                n - 1
            } else {
                x - 1
            }
        })
        .collect()
}

/// Odd antihole `N = 2g + 1 >= 5`. With the minimum node rotated to
/// position 0, runs `floor(k_0 / g)` rounds of the `g` slots from
/// [`odd_antihole_slot`], then `k_0 mod g` slots of a partial round, then
/// zero-node steps. `W* <= T <= W* + ceil(min k / g)`.
pub fn code_odd_antihole(k: &[usize]) -> Result<(XorSchedule, OddAntiholeTrace)> {
    let n = k.len();
    check_antihole_len(n)?;
    if n % 2 == 0 {
        return Err(Error::precondition(format!("antihole size {n} is not odd")));
    }
    let g = (n - 1) / 2;
    let shift = argmin(k);
    let map = rotation(n, shift);
    let w = rotate_weights(k, &map);
    let mut plan = Plan::new(&w);
    let full_rounds = w[0] / g;
    let partial_slots = w[0] % g;
    let mut after_round = Vec::with_capacity(full_rounds);
    let mut first_round = Vec::new();
    for round in 0..full_rounds {
        for m in 1..=g {
            let slot = odd_antihole_slot(n, m);
            if round == 0 {
                first_round.push(slot.clone());
            }
            plan.send(slot)?;
        }
        after_round.push(plan.w.clone());
    }
    for m in 1..=partial_slots {
        plan.send(odd_antihole_slot(n, m))?;
    }
    let after_partial = plan.w.clone();
    antihole_general_into(&mut plan)?;
    let trace = OddAntiholeTrace {
        shift,
        g,
        full_rounds,
        partial_slots,
        initial: w,
        after_round,
        after_partial,
        first_round,
    };
    Ok((plan.finish().relabel(&map), trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::mwais_value;

    fn cycle_w(k: &[usize]) -> usize {
        mwais_value(&InformationGraph::cycle(k.len()).unwrap(), k).unwrap()
    }

    #[test]
    fn acyclic_is_uncoded() {
        let dag = InformationGraph::from_edges(3, &[(0, 1), (1, 2)], true).unwrap();
        assert!(code_acyclic(&dag, &[0, 0, 0]).unwrap().is_empty());
        assert_eq!(code_acyclic(&dag, &[1, 1, 1]).unwrap().len(), 3);
        let cyc = InformationGraph::directed_cycle(3).unwrap();
        assert!(code_acyclic(&cyc, &[1, 1, 1]).is_err());
    }

    #[test]
    fn directed_cycle_lengths() {
        assert_eq!(code_directed_cycle(&[2, 3, 4]).unwrap().len(), 7);
        assert_eq!(code_directed_cycle(&[1, 1]).unwrap().len(), 1);
        assert_eq!(code_directed_cycle(&[4, 2, 3]).unwrap().len(), 7);
        assert!(code_directed_cycle(&[3]).is_err());
    }

    #[test]
    fn directed_cycle_min_last_layout() {
        let s = code_directed_cycle(&[2, 3, 1]).unwrap();
        assert_eq!(s.slots[0], vec![(0, 0), (1, 0)]);
        assert_eq!(s.slots[1], vec![(1, 0), (2, 0)]);
    }

    #[test]
    fn tree_examples() {
        assert_eq!(code_tree(&InformationGraph::empty(1, false).unwrap(), &[4]).unwrap().len(), 4);
        let edge = InformationGraph::path(2).unwrap();
        let s = code_tree(&edge, &[2, 3]).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.slots.iter().filter(|x| x.len() == 2).count(), 2);
        let star = InformationGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)], false).unwrap();
        assert_eq!(code_tree(&star, &[5, 1, 1, 1]).unwrap().len(), 5);
        assert!(code_tree(&InformationGraph::cycle(3).unwrap(), &[1, 1, 1]).is_err());
        assert!(code_tree(&InformationGraph::directed_cycle(2).unwrap(), &[1, 1]).is_err());
    }

    #[test]
    fn zero_node_cycles() {
        assert!(code_cycle_zero_node(&[0; 5]).unwrap().is_empty());
        assert_eq!(code_cycle_zero_node(&[0, 2, 1, 2, 1]).unwrap().len(), 4);
        assert!(code_cycle_zero_node(&[1; 5]).is_err());
    }

    #[test]
    fn even_cycle_examples() {
        assert_eq!(code_even_cycle(&[1, 2, 3, 4]).unwrap().len(), 6);
        assert_eq!(code_even_cycle(&[1, 1, 1, 1]).unwrap().len(), 2);
        for k in [[3, 1, 2, 5, 1, 4], [2, 2, 2, 2, 2, 2], [5, 1, 1, 5, 1, 1]] {
            assert_eq!(code_even_cycle(&k).unwrap().len(), cycle_w(&k), "k = {k:?}");
        }
        assert!(code_even_cycle(&[1, 1, 1, 1, 1]).is_err());
    }

    #[test]
    fn odd_cycle_bounds() {
        let s = code_odd_cycle(&[1; 5]).unwrap();
        assert!(s.len() >= 2 && s.len() <= 3);
        let k = [2, 0, 3, 1, 2];
        assert_eq!(code_odd_cycle(&k).unwrap().len(), cycle_w(&k));
        assert!(code_odd_cycle(&[1, 1, 1]).is_err());
    }

    #[test]
    fn even_antihole_examples() {
        assert_eq!(code_even_antihole(&[1; 6]).unwrap().len(), 2);
        assert_eq!(code_even_antihole(&[1, 2, 3, 4]).unwrap().len(), 7);
        assert!(code_even_antihole(&[1; 5]).is_err());
    }

    #[test]
    fn general_step_odd_case_two() {
        // Only even rotated positions up to N - 1 meet every heavy pair.
        let s = code_antihole_general(&[0, 1, 1, 1, 1]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.nodes(0), vec![2, 4]);
    }

    #[test]
    fn odd_antihole_slot_sets() {
        // 1-based {4,6,8,1} -> 0-based {3,5,7,0}.
        assert_eq!(odd_antihole_slot(9, 1), vec![3, 5, 7, 0]);
        assert_eq!(odd_antihole_slot(9, 4), vec![0, 2, 4, 6]);
    }

    #[test]
    fn odd_antihole_zero_min() {
        let (s, t) = code_odd_antihole(&[3, 0, 2, 2, 1]).unwrap();
        assert_eq!(t.full_rounds, 0);
        assert_eq!(s.len(), antihole_w_star(&[3, 0, 2, 2, 1]));
    }

    #[test]
    fn packet_checks_and_transmission() {
        let s = XorSchedule {
            slots: vec![vec![(0, 0), (1, 0)], vec![(1, 1)]],
        };
        assert!(s.check_packets(&[1, 2]).is_ok());
        assert!(s.check_packets(&[1, 1]).is_err());
        let t = s.to_transmission(&[1, 2], Field::gf2()).unwrap();
        let sparse = t.to_sparse();
        assert_eq!(sparse[0].coeffs, vec![(0, 0, 1), (1, 0, 1)]);
        assert_eq!(sparse[1].coeffs, vec![(1, 1, 1)]);
    }
}
