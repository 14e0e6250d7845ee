//! The brute-force oracles checked against each other and against
//! independent characterisations.

use planecut::exact::{solve, Method};
use planecut::oracle::{
    apsp, brute_cuts, brute_optimum, count_cycles_by_edge_subsets, enumerate_simple_cycles,
    linkage_simulate, mst_weights, set_distance, Budget, Linkage, SetMode,
};
use planecut::planar::gen::{self, RandomSpec};
use planecut::{Embedding, Error, Objective};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random(seed: u64, n: usize) -> Embedding {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let keep = rng.gen_range(0.3..1.0);
    gen::random_planar(
        RandomSpec {
            n,
            max_cost: 9,
            max_weight: 4,
            keep,
        },
        &mut rng,
    )
}

#[test]
fn apsp_is_a_metric_bounded_by_edges() {
    for seed in 0..40 {
        let g = random(seed, 3 + seed as usize % 9);
        let d = apsp(&g, &Budget::default()).unwrap();
        let n = g.num_vertices();
        for x in 0..n {
            assert_eq!(d[x][x], 0);
            for y in 0..n {
                assert_eq!(d[x][y], d[y][x]);
                for z in 0..n {
                    assert!(d[x][z] <= d[x][y] + d[y][z]);
                }
            }
        }
        for e in 0..g.num_edges() {
            let (x, y) = g.endpoints(e);
            assert!(d[x][y] <= g.cost(e));
        }
    }
}

#[test]
fn single_linkage_merges_follow_the_spanning_tree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let n = rng.gen_range(2..=10);
        let g = random(rng.gen(), n);
        let d = apsp(&g, &Budget::default()).unwrap();
        let mut merged: Vec<i64> = linkage_simulate(&d, Linkage::Single, &Budget::default())
            .unwrap()
            .iter()
            .map(|m| {
                assert_eq!(*m.value().denom(), 1);
                *m.value().numer() as i64
            })
            .collect();
        merged.sort_unstable();
        assert_eq!(merged, mst_weights(&d));
    }
}

#[test]
fn linkage_modes_on_collinear_points() {
    // points at 0, 1, 3
    let d = vec![vec![0, 1, 3], vec![1, 0, 2], vec![3, 2, 0]];
    let b = Budget::default();
    let vals = |mode| {
        linkage_simulate(&d, mode, &b)
            .unwrap()
            .iter()
            .map(|m| m.value().to_string())
            .collect::<Vec<_>>()
    };
    assert_eq!(vals(Linkage::Single), ["1", "2"]);
    assert_eq!(vals(Linkage::Complete), ["1", "3"]);
    assert_eq!(vals(Linkage::Average), ["1", "5/2"]);
    assert_eq!(set_distance(&d, &[0, 1], &[2], SetMode::Max), 3);
    assert_eq!(set_distance(&d, &[0, 1], &[2], SetMode::Sum), 5);
}

#[test]
fn cycle_counts_on_small_families() {
    let b = Budget::default();
    let count = |g: &Embedding| enumerate_simple_cycles(g, &b).unwrap().len();
    assert_eq!(count(&gen::path(&[1, 2, 3], &[1, 1, 1, 1])), 0);
    assert_eq!(count(&gen::star(5, 1, 1)), 0);
    assert_eq!(count(&gen::cycle(&[1, 1, 1], &[1, 1, 1])), 1);
    // 3x3 vertex grid: 4 squares, 4 dominoes, 4 L-shapes, 1 outer ring
    assert_eq!(count(&gen::unit_grid(3)), 13);
}

#[test]
fn cycle_enumeration_matches_edge_subsets() {
    let mut checked = 0;
    for seed in 0..60 {
        let g = random(100 + seed, 8);
        if g.num_edges() > 16 {
            continue;
        }
        let cycles = enumerate_simple_cycles(&g, &Budget::default()).unwrap();
        assert_eq!(
            cycles.len(),
            count_cycles_by_edge_subsets(&g).unwrap(),
            "seed {seed}"
        );
        for c in &cycles {
            assert!(c.cycle.is_closed(&g));
        }
        checked += 1;
    }
    assert!(checked >= 20);
}

#[test]
fn repeated_calls_are_identical() {
    let g = random(3, 9);
    let b = Budget::default();
    assert_eq!(brute_cuts(&g, &b).unwrap(), brute_cuts(&g, &b).unwrap());
    let d = apsp(&g, &b).unwrap();
    assert_eq!(d, apsp(&g, &b).unwrap());
    for mode in [Linkage::Single, Linkage::Complete, Linkage::Average] {
        assert_eq!(
            linkage_simulate(&d, mode, &b).unwrap(),
            linkage_simulate(&d, mode, &b).unwrap()
        );
    }
    let darts = |g: &Embedding| {
        enumerate_simple_cycles(g, &b)
            .unwrap()
            .into_iter()
            .map(|c| c.cycle.darts)
            .collect::<Vec<_>>()
    };
    assert_eq!(darts(&g), darts(&g));
}

#[test]
fn brute_optimum_is_the_minimum_row_and_bounds_the_solvers() {
    let b = Budget::default();
    for seed in 0..40 {
        let g = random(500 + seed, 2 + seed as usize % 9);
        let rows = brute_cuts(&g, &b).unwrap();
        for objective in [Objective::Quotient, Objective::Sparsity] {
            let best = rows.iter().filter_map(|r| r.value(objective)).min();
            let opt = brute_optimum(&g, objective, &b).unwrap().map(|x| x.0);
            assert_eq!(opt, best);
            match solve(&g, objective, Method::Separator) {
                Ok(c) => assert!(opt.unwrap() <= c.value),
                Err(Error::NoCut) => assert_eq!(opt, None),
                Err(e) => panic!("{e}"),
            }
        }
    }
}
