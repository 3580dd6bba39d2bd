//! Independent reference implementations used as test oracles.
//!
//! Nothing here calls into the library's arithmetic, elimination or search
//! routines; only plain data types are shared.

#![allow(dead_code)]

use becsc::channel::ChannelConfig;
use becsc::sideinfo::InformationGraph;
use rand::seq::SliceRandom;
use rand::Rng;

/// Shift-and-reduce multiplication in GF(2^l) modulo `poly`.
pub fn clmul(a: u32, b: u32, poly: u32, l: u8) -> u32 {
    let mut acc = 0u32;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> l & 1 == 1 {
            a ^= poly;
        }
    }
    acc
}

/// Determinant by permutation expansion (characteristic 2, so no signs).
pub fn leibniz_det(m: &[Vec<u32>], mul: &impl Fn(u32, u32) -> u32) -> u32 {
    let n = m.len();
    let mut total = 0u32;
    for p in all_permutations(n) {
        let mut prod = 1u32;
        for (r, &c) in p.iter().enumerate() {
            prod = mul(prod, m[r][c]);
            if prod == 0 {
                break;
            }
        }
        total ^= prod;
    }
    total
}

/// k-subsets of `0..n` in lexicographic order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
        .collect()
}

/// Rank as the size of the largest independent row subset; a subset of
/// size `s` is independent iff one of its `s x s` minors is nonzero.
pub fn subset_rank(rows: &[Vec<u32>], cols: usize, mul: &impl Fn(u32, u32) -> u32) -> usize {
    let r = rows.len();
    let mut best = 0;
    for mask in 1u32..1 << r {
        let s = mask.count_ones() as usize;
        if s <= best || s > cols {
            continue;
        }
        let chosen: Vec<&Vec<u32>> = (0..r).filter(|i| mask >> i & 1 == 1).map(|i| &rows[i]).collect();
        let independent = subsets_of_size(cols, s).into_iter().any(|cs| {
            let minor: Vec<Vec<u32>> = chosen.iter().map(|row| cs.iter().map(|&c| row[c]).collect()).collect();
            leibniz_det(&minor, mul) != 0
        });
        if independent {
            best = s;
        }
    }
    best
}

/// Every vector in the GF(2) span of `rows` (entries 0/1, packed as bits).
pub fn gf2_span(rows: &[Vec<u32>]) -> std::collections::HashSet<u64> {
    let packed: Vec<u64> = rows
        .iter()
        .map(|r| r.iter().enumerate().fold(0u64, |m, (i, &x)| m | (x as u64 & 1) << i))
        .collect();
    (0u64..1 << packed.len())
        .map(|sel| (0..packed.len()).filter(|i| sel >> i & 1 == 1).fold(0u64, |acc, i| acc ^ packed[i]))
        .collect()
}

/// All permutations of `0..n` (Heap's algorithm).
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Whether the subgraph induced by `nodes` has a directed cycle (DFS colouring).
pub fn has_cycle(g: &InformationGraph, nodes: &[usize]) -> bool {
    let n = g.n();
    let inside: Vec<bool> = (0..n).map(|v| nodes.contains(&v)).collect();
    let mut colour = vec![0u8; n];
    fn dfs(g: &InformationGraph, v: usize, inside: &[bool], colour: &mut [u8]) -> bool {
        colour[v] = 1;
        for u in 0..g.n() {
            if !inside[u] || !g.has_edge(v, u) {
                continue;
            }
            if colour[u] == 1 || (colour[u] == 0 && dfs(g, u, inside, colour)) {
                return true;
            }
        }
        colour[v] = 2;
        false
    }
    nodes.iter().any(|&v| colour[v] == 0 && dfs(g, v, &inside, &mut colour))
}

/// Maximum weight of a node set inducing an acyclic subgraph (brute force).
pub fn brute_w_star(g: &InformationGraph, w: &[f64]) -> f64 {
    let n = g.n();
    let mut best = 0.0f64;
    for mask in 0u32..1 << n {
        let nodes: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let weight: f64 = nodes.iter().map(|&v| w[v]).sum();
        if weight > best && !has_cycle(g, &nodes) {
            best = weight;
        }
    }
    best
}

pub fn brute_w_star_int(g: &InformationGraph, k: &[usize]) -> usize {
    let w: Vec<f64> = k.iter().map(|&x| x as f64).collect();
    brute_w_star(g, &w).round() as usize
}

/// `max_pi sum_i r~_{pi_i} / (1 - eps_{B_i})` by enumerating permutations.
pub fn brute_permutation_bound(g: &InformationGraph, r: &[f64], cfg: &ChannelConfig) -> f64 {
    let n = g.n();
    let mut best = f64::NEG_INFINITY;
    for p in all_permutations(n) {
        let mut total = 0.0;
        for i in 0..n {
            let known = p[..i].iter().any(|&u| g.has_edge(u, p[i]));
            let prefix: Vec<usize> = p[..=i].to_vec();
            let eps = cfg.eps_of(&prefix).unwrap();
            let ri = if known { 0.0 } else { r[p[i]] };
            total += ri / (1.0 - eps);
        }
        best = best.max(total);
    }
    best
}

/// Random directed graph with edge probability `p`.
pub fn random_digraph(rng: &mut impl Rng, n: usize, p: f64) -> InformationGraph {
    let mut g = InformationGraph::empty(n, true).unwrap();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(p) {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    g
}

/// Random undirected forest: each node attaches to an earlier node with
/// probability 0.8.
pub fn random_forest(rng: &mut impl Rng, n: usize) -> InformationGraph {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut g = InformationGraph::empty(n, false).unwrap();
    for t in 1..n {
        if rng.gen_bool(0.8) {
            let parent = rng.gen_range(0..t);
            g.add_edge(labels[t], labels[parent]).unwrap();
        }
    }
    g
}

/// Random DAG: edges only from lower to higher rank in a random order.
pub fn random_dag(rng: &mut impl Rng, n: usize, p: f64) -> InformationGraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut g = InformationGraph::empty(n, true).unwrap();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(order[a], order[b]).unwrap();
            }
        }
    }
    g
}

pub fn random_demands(rng: &mut impl Rng, n: usize, max: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..=max)).collect()
}

/// Undirected cycle through `order`.
pub fn cycle_through(order: &[usize]) -> InformationGraph {
    let n = order.len();
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    InformationGraph::from_edges(n, &edges, false).unwrap()
}

/// Antihole whose complement is the cycle through `order`.
pub fn antihole_through(order: &[usize]) -> InformationGraph {
    let n = order.len();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut g = InformationGraph::empty(n, false).unwrap();
    for a in 0..n {
        for b in a + 1..n {
            let d = (pos[a] + n - pos[b]) % n;
            if d != 1 && d != n - 1 {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

/// Directed cycle following `order`.
pub fn directed_cycle_through(order: &[usize]) -> InformationGraph {
    let n = order.len();
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    InformationGraph::from_edges(n, &edges, true).unwrap()
}

pub fn shuffled(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}
