//! Exact minimum bisection for small graphs.
//!
//! Degree-one vertices are grouped into classes of interchangeable pendants
//! (same neighbor, cost and weight); only the remaining core is enumerated,
//! and the number of pendants placed across from their neighbor is chosen
//! by a knapsack over weight offsets.

use std::collections::{BTreeMap, HashMap};

use crate::cut::evaluate;
use crate::error::{Error, Result};
use crate::planar::Embedding;

pub const MAX_CORE: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bisection {
    /// Vertex 0 is never in S.
    pub in_side: Vec<bool>,
    pub cost: i64,
    pub cut_edges: Vec<usize>,
}

struct Class {
    parent: usize,
    cost: i64,
    weight: i64,
    members: Vec<usize>,
}

/// knapsack over weight offsets in `[-total, total]`: min cost and the
/// number of pendants moved per class
fn knapsack(
    classes: &[Class],
    parent_in_side: &dyn Fn(usize) -> bool,
    total: i64,
) -> Vec<Option<(i64, Vec<usize>)>> {
    let size = (2 * total + 1) as usize;
    let mut dp: Vec<Option<(i64, Vec<usize>)>> = vec![None; size];
    dp[total as usize] = Some((0, vec![0; classes.len()]));
    for (ci, c) in classes.iter().enumerate() {
        if c.weight == 0 {
            continue;
        }
        let step = if parent_in_side(c.parent) {
            -c.weight
        } else {
            c.weight
        };
        let mut next = dp.clone();
        for (idx, cell) in dp.iter().enumerate() {
            let Some((base, moved)) = cell else { continue };
            for k in 1..=c.members.len() as i64 {
                let j = idx as i64 + k * step;
                if j < 0 || j >= size as i64 {
                    break;
                }
                let cost = base + k * c.cost;
                let slot = &mut next[j as usize];
                if slot.as_ref().is_none_or(|(b, _)| cost < *b) {
                    let mut m = moved.clone();
                    m[ci] = k as usize;
                    *slot = Some((cost, m));
                }
            }
        }
        dp = next;
    }
    dp
}

pub fn min_bisection_small(g: &Embedding) -> Result<Bisection> {
    let n = g.num_vertices();
    let total = g.total_vertex_weight();
    if total % 2 != 0 {
        return Err(Error::OddTotalWeight(total));
    }
    let pendant: Vec<bool> = (0..n)
        .map(|v| {
            g.degree(v) == 1 && {
                let d = g.darts_at(v).next().unwrap();
                g.degree(g.head(d)) > 1
            }
        })
        .collect();
    let core: Vec<usize> = (0..n).filter(|&v| !pendant[v]).collect();
    if core.len() > MAX_CORE {
        return Err(Error::BudgetExceeded {
            size: core.len(),
            budget: MAX_CORE,
        });
    }
    let mut grouped: BTreeMap<(usize, i64, i64), Vec<usize>> = BTreeMap::new();
    for v in (0..n).filter(|&v| pendant[v]) {
        let d = g.darts_at(v).next().unwrap();
        grouped
            .entry((g.head(d), g.dart_cost(d), g.vertex_weight(v)))
            .or_default()
            .push(v);
    }
    let classes: Vec<Class> = grouped
        .into_iter()
        .map(|((parent, cost, weight), members)| Class {
            parent,
            cost,
            weight,
            members,
        })
        .collect();
    let parents: Vec<usize> = {
        let mut p: Vec<usize> = classes.iter().map(|c| c.parent).collect();
        p.dedup();
        p.sort_unstable();
        p.dedup();
        p
    };
    let mut core_index = vec![usize::MAX; n];
    for (i, &v) in core.iter().enumerate() {
        core_index[v] = i;
    }
    // pendant weight hanging off each parent
    let mut hanging = vec![0i64; n];
    for c in &classes {
        hanging[c.parent] += c.weight * c.members.len() as i64;
    }
    let core_edges: Vec<(usize, usize, i64)> = (0..g.num_edges())
        .filter_map(|e| {
            let (a, b) = g.endpoints(e);
            (!pendant[a] && !pendant[b]).then(|| (core_index[a], core_index[b], g.cost(e)))
        })
        .collect();
    let mut tables: HashMap<u64, Vec<Option<(i64, Vec<usize>)>>> = HashMap::new();
    let mut best: Option<(i64, u64)> = None;
    let c = core.len();
    for mask in 0u64..(1u64 << c) {
        if mask & 1 == 1 && c > 0 {
            continue; // by symmetry keep the first core vertex out of S
        }
        let mut cost = 0;
        for &(a, b, w) in &core_edges {
            if (mask >> a & 1) != (mask >> b & 1) {
                cost += w;
            }
        }
        let ws: i64 = core
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| g.vertex_weight(v) + hanging[v])
            .sum();
        let key: u64 = parents
            .iter()
            .enumerate()
            .map(|(i, &p)| (mask >> core_index[p] & 1) << i)
            .sum();
        let table = tables
            .entry(key)
            .or_insert_with(|| knapsack(&classes, &|p| mask >> core_index[p] & 1 == 1, total));
        let offset = total / 2 - ws;
        let Some(Some((extra, _))) = table.get((offset + total) as usize) else {
            continue;
        };
        let cand = cost + extra;
        if best.is_none_or(|(b, _)| cand < b) {
            best = Some((cand, mask));
        }
    }
    let (_, mask) = best.ok_or(Error::NoBalancedCut)?;
    let mut side = vec![false; n];
    for (i, &v) in core.iter().enumerate() {
        side[v] = mask >> i & 1 == 1;
    }
    let ws: i64 = core
        .iter()
        .filter(|&&v| side[v])
        .map(|&v| g.vertex_weight(v) + hanging[v])
        .sum();
    let table = knapsack(&classes, &|p| side[p], total);
    let (_, moved) = table[(total / 2 - ws + total) as usize].clone().unwrap();
    for (ci, cl) in classes.iter().enumerate() {
        for (j, &v) in cl.members.iter().enumerate() {
            side[v] = side[cl.parent] != (j < moved[ci]);
        }
    }
    if side[0] {
        side.iter_mut().for_each(|x| *x = !*x);
    }
    let (cost, a, b, cut_edges) = evaluate(g, &side);
    debug_assert_eq!(a, b);
    Ok(Bisection {
        in_side: side,
        cost,
        cut_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::gen;

    #[test]
    fn four_cycle() {
        let g = gen::cycle(&[1; 4], &[1; 4]);
        assert_eq!(min_bisection_small(&g).unwrap().cost, 2);
    }

    #[test]
    fn two_triangles_joined_by_an_edge() {
        let edges = [
            (0, 1, 1),
            (1, 2, 1),
            (2, 0, 1),
            (3, 4, 1),
            (4, 5, 1),
            (5, 3, 1),
            (2, 3, 1),
        ];
        let pts = [
            (0.0, 0.0),
            (0.0, 2.0),
            (1.0, 1.0),
            (3.0, 1.0),
            (4.0, 2.0),
            (4.0, 0.0),
        ];
        let g = crate::planar::gen::from_straight_line(&pts, &edges, &[1; 6]).unwrap();
        assert_eq!(min_bisection_small(&g).unwrap().cost, 1);
    }

    #[test]
    fn odd_weight_is_rejected() {
        let g = gen::path(&[1, 1], &[1, 1, 1]);
        assert_eq!(min_bisection_small(&g), Err(Error::OddTotalWeight(3)));
    }

    #[test]
    fn pendants_match_brute_force() {
        // star with heavy center: compressed leaves must still balance
        let g = gen::star(7, 2, 1);
        let b = crate::oracle::brute_bisection(&g, &Default::default())
            .unwrap()
            .unwrap();
        assert_eq!(min_bisection_small(&g).unwrap().cost, b);
    }
}
