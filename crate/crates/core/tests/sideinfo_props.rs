mod common;

use becsc::gf::{Field, REDUCTION_POLYNOMIALS};
use becsc::linalg::GfMatrix;
use becsc::sideinfo::{graph_to_linear, rho_hats, InformationGraph, LinearSideInfo, ScalableSideInfo};
use common::{clmul, random_digraph, subset_rank};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Receiver 0 knows 1 and 2, receiver 1 knows 2, receiver 2 knows 0 and 1.
fn three_receiver_graph() -> InformationGraph {
    InformationGraph::from_edges(3, &[(0, 1), (0, 2), (1, 2), (2, 0), (2, 1)], true).unwrap()
}

#[test]
fn three_receiver_example() {
    let g = three_receiver_graph();
    assert_eq!(g.out_neighbors(0), vec![1, 2]);
    assert_eq!(g.out_neighbors(1), vec![2]);
    assert_eq!(g.out_neighbors(2), vec![0, 1]);
    assert!(!g.has_edge(1, 0));
    let si = graph_to_linear(&g, &[2, 3, 1], Field::gf2()).unwrap();
    assert_eq!(si.mat(0, 1).rank(), 3);
    assert_eq!(si.mat(1, 0).rank(), 0);
    assert_eq!(si.joint_rank(&[1, 2], 0), 2);
    assert_eq!(si.joint_rank(&[], 0), 0);
    assert_eq!(rho_hats(&si, 1, 0).unwrap(), (0, 3));
    assert_eq!(rho_hats(&si, 0, 1).unwrap(), (0, 0));
    assert_eq!(rho_hats(&si, 0, 2).unwrap(), (0, 2));
    assert!(rho_hats(&si, 0, 0).is_err());
}

#[test]
fn all_or_nothing_ranks_follow_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..100 {
        let g = random_digraph(&mut rng, 5, 0.4);
        let k = common::random_demands(&mut rng, 5, 4);
        let si = graph_to_linear(&g, &k, Field::get(3).unwrap()).unwrap();
        let r: Vec<f64> = k.iter().map(|&x| x as f64 / 10.0).collect();
        let scalable = ScalableSideInfo::AllOrNothing(g.clone());
        for i in 0..5 {
            for j in 0..5 {
                let rank = si.mat(i, j).rank();
                if i != j && g.has_edge(i, j) {
                    assert_eq!(rank, k[j]);
                } else {
                    assert_eq!(rank, 0);
                }
            }
            // The knowers of j contribute all k_j packets as soon as one of them has an edge.
            for mask in 0u32..32 {
                let knowers: Vec<usize> = (0..5).filter(|s| mask >> s & 1 == 1).collect();
                let hit = knowers.iter().any(|&s| g.has_edge(s, i));
                assert_eq!(si.joint_rank(&knowers, i), if hit { k[i] } else { 0 });
                let want = if hit { r[i] } else { 0.0 };
                assert_eq!(scalable.normalized_rank(&knowers, i, &r), want);
            }
        }
    }
}

fn linear_instance() -> impl Strategy<Value = (u8, Vec<usize>, Vec<Vec<Vec<Vec<u32>>>>)> {
    (prop_oneof![Just(1u8), Just(2u8)], proptest::collection::vec(1usize..=3, 2..=3)).prop_flat_map(|(l, k)| {
        let n = k.len();
        let q = 1u32 << l;
        let blocks = (0..n)
            .map(|_| {
                k.iter()
                    .map(|&kj| proptest::collection::vec(proptest::collection::vec(0..q, kj), 1..=3))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>();
        (Just(l), Just(k), blocks)
    })
}

fn build(l: u8, k: &[usize], blocks: &[Vec<Vec<Vec<u32>>>]) -> LinearSideInfo {
    let f = Field::get(l).unwrap();
    let mats = blocks
        .iter()
        .map(|row| row.iter().zip(k).map(|(b, &kj)| GfMatrix::from_u32_rows(f, kj, b).unwrap()).collect())
        .collect();
    LinearSideInfo::new(f, k.to_vec(), mats).unwrap()
}

proptest! {
    #[test]
    fn rank_inequalities((l, k, blocks) in linear_instance()) {
        let si = build(l, &k, &blocks);
        let n = k.len();
        let poly = REDUCTION_POLYNOMIALS[l as usize];
        let mul = |a, b| clmul(a, b, poly, l);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (own, joint) = rho_hats(&si, i, j).unwrap();
                prop_assert!(own <= joint && joint <= k[i]);
                prop_assert!(si.joint_rank(&[j], i) <= joint);
                let stacked: Vec<Vec<u32>> = blocks[i][i].iter().chain(&blocks[j][i]).cloned().collect();
                prop_assert_eq!(joint, subset_rank(&stacked, k[i], &mul));
            }
        }
    }

    #[test]
    fn replication_scales_ranks((l, k, blocks) in linear_instance(), c in proptest::collection::vec(1usize..=3, 3)) {
        let si = build(l, &k, &blocks);
        let n = k.len();
        let copies = &c[..n];
        let big = si.replicate(copies).unwrap();
        let scalable = ScalableSideInfo::Replicated(si.clone());
        let demands: Vec<usize> = k.iter().zip(copies).map(|(a, b)| a * b).collect();
        prop_assert_eq!(big.demands(), &demands[..]);
        for j in 0..n {
            for mask in 1u32..1 << n {
                let knowers: Vec<usize> = (0..n).filter(|s| mask >> s & 1 == 1).collect();
                let want = copies[j] * si.joint_rank(&knowers, j);
                prop_assert_eq!(big.joint_rank(&knowers, j), want);
                prop_assert_eq!(scalable.joint_rank_at(&knowers, j, &demands).unwrap(), want);
            }
        }
    }
}

#[test]
fn replication_needs_whole_multiples() {
    let f = Field::gf2();
    let si = LinearSideInfo::none(f, vec![2, 3]);
    let s = ScalableSideInfo::Replicated(si);
    assert_eq!(s.copies_for(&[4, 9]).unwrap(), vec![2, 3]);
    assert!(s.copies_for(&[3, 9]).is_err());
    assert!(s.copies_for(&[4]).is_err());
}

#[test]
fn construction_is_validated() {
    let f = Field::gf2();
    let bad = vec![vec![GfMatrix::zeros(f, 1, 2), GfMatrix::zeros(f, 1, 1)]; 2];
    assert!(LinearSideInfo::new(f, vec![2, 2], bad).is_err());
    let other = vec![vec![GfMatrix::zeros(Field::gf256(), 1, 1); 2]; 2];
    assert!(LinearSideInfo::new(f, vec![1, 1], other).is_err());
    let mut si = LinearSideInfo::none(f, vec![2, 2]);
    assert!(si.set_mat(0, 1, GfMatrix::zeros(f, 1, 3)).is_err());
    assert!(InformationGraph::from_edges(2, &[(0, 0)], true).is_err());
    assert!(InformationGraph::from_edges(2, &[(0, 2)], true).is_err());
}

#[test]
fn complement_of_cycle_is_antihole() {
    for n in 4..9 {
        let c = InformationGraph::cycle(n).unwrap();
        assert_eq!(c.complement().unwrap(), InformationGraph::antihole(n).unwrap());
        assert!(c.is_symmetric());
        assert_eq!(c.edges().len(), n);
    }
}
