//! The rooted search: given a trimmed region around a root vertex `s`, look
//! for a cycle of small quotient among heavy-dart fundamental cycles and
//! negative cycles of the modified cost `cost - lambda * weight`, shrinking
//! overweight negative cycles with the weight-reduction loop.

use serde::Serialize;

use super::negcycle::find_negative_cycle;
use super::params::ApproxParams;
use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::planar::{
    balanced_infinite_face, pp_dart_weights, shortest_path_tree, Cycle, Embedding, Tree,
};

/// Rational `lambda = num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lambda {
    pub num: i128,
    pub den: i128,
}

impl Lambda {
    pub fn frac(&self) -> Frac {
        Frac::new(self.num, self.den)
    }
}

/// `cost / den <= target * lambda`, exactly.
pub fn meets_target(cost: i64, den: i64, lambda: Lambda, params: &ApproxParams) -> bool {
    den > 0 && Frac::new(cost as i128, den as i128) <= params.target * lambda.frac()
}

/// A region prepared for repeated searches with different `lambda`.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub emb: Embedding,
    /// dart of the region -> dart of the graph it was cut from
    pub dart_map: Vec<usize>,
    pub s: usize,
    pub tree: Tree,
    pub f_inf: usize,
    pub weight: Vec<i64>,
    pub heavy: Vec<bool>,
    /// Best heavy fundamental cycle: (cost, min side weight, darts).
    pub heavy_best: Option<(i64, i64, Vec<usize>)>,
}

/// Weight on the non-infinite side of a near-simple ccw walk.
fn walk_weight(weight: &[i64], darts: &[usize]) -> i64 {
    darts.iter().map(|&d| weight[d]).sum()
}

fn walk_cost(emb: &Embedding, darts: &[usize]) -> i64 {
    darts.iter().map(|&d| emb.dart_cost(d)).sum()
}

impl Prepared {
    /// `emb` carries face weights summing to the full total; `s` is the root.
    pub fn new(emb: Embedding, dart_map: Vec<usize>, s: usize, params: &ApproxParams) -> Prepared {
        let tree = shortest_path_tree(&emb, s);
        let f_inf = balanced_infinite_face(&emb, &tree, emb.outer());
        let pp = pp_dart_weights(&emb, &tree, f_inf);
        let total = emb.total_face_weight();
        debug_assert!(
            pp.weight.iter().all(|&w| 2 * w <= total),
            "fundamental cycle encloses more than half"
        );
        let heavy: Vec<bool> = pp
            .weight
            .iter()
            .map(|&w| w > 0 && params.is_heavy(w, total))
            .collect();
        let mut heavy_best: Option<(i64, i64, Vec<usize>)> = None;
        for d in (0..emb.num_darts()).filter(|&d| heavy[d]) {
            let c = tree
                .fundamental_cycle(&emb, d)
                .expect("heavy darts are nontree");
            let cost = c.cost(&emb);
            let den = pp.weight[d].min(total - pp.weight[d]);
            if heavy_best.as_ref().is_none_or(|(bc, bd, _)| {
                (cost as i128) * (*bd as i128) < (*bc as i128) * (den as i128)
            }) {
                heavy_best = Some((cost, den, c.darts));
            }
        }
        Prepared {
            emb,
            dart_map,
            s,
            tree,
            f_inf,
            weight: pp.weight,
            heavy,
            heavy_best,
        }
    }

    pub fn total(&self) -> i64 {
        self.emb.total_face_weight()
    }

    /// One search for a given `lambda`. Returns the best candidate found,
    /// as (cost, min side weight, darts of the source graph), and whether it
    /// meets `target * lambda`.
    pub fn search(
        &self,
        lambda: Lambda,
        params: &ApproxParams,
        stats: &mut RootedStats,
    ) -> Option<Candidate> {
        stats.calls += 1;
        stats.region_size += self.emb.num_vertices() as u64;
        let total = self.total();
        let mut best: Option<Candidate> = None;
        let offer = |cost: i64, den: i64, darts: &[usize], best: &mut Option<Candidate>| {
            if den <= 0 {
                return;
            }
            if best
                .as_ref()
                .is_none_or(|b| (cost as i128) * (b.den as i128) < (b.cost as i128) * (den as i128))
            {
                *best = Some(Candidate {
                    cost,
                    den,
                    darts: darts.iter().map(|&d| self.dart_map[d]).collect(),
                    success: meets_target(cost, den, lambda, params),
                });
            }
        };
        if let Some((c, d, darts)) = &self.heavy_best {
            offer(*c, *d, darts, &mut best);
        }
        let len: Vec<i128> = (0..self.emb.num_darts())
            .map(|d| {
                self.emb.dart_cost(d) as i128 * lambda.den - lambda.num * self.weight[d] as i128
            })
            .collect();
        let allowed: Vec<bool> = self.heavy.iter().map(|&h| !h).collect();
        if let Some(neg) = find_negative_cycle(&self.emb, &len, &allowed) {
            stats.negative += 1;
            let enclosed = walk_weight(&self.weight, &neg);
            debug_assert!(enclosed > 0);
            let cycle = if params.within_alpha(enclosed, total) {
                neg
            } else {
                stats.reductions += 1;
                let c0 = attach_root(&self.emb, &self.tree, &neg);
                let (c, trace) = weight_reduction(&self.emb, &self.tree, &self.weight, c0, params)
                    .expect("weight reduction keeps a positive dart while overweight");
                stats.reduction_steps += trace.steps.len() as u64;
                if !trace.ok() {
                    stats.invariant_failures += 1;
                }
                c
            };
            for core in simple_parts(&self.emb, &cycle) {
                let e = walk_weight(&self.weight, &core).abs();
                offer(
                    walk_cost(&self.emb, &core),
                    e.min(total - e),
                    &core,
                    &mut best,
                );
            }
        }
        if best.as_ref().is_some_and(|b| b.success) {
            stats.successes += 1;
        }
        best
    }
}

#[derive(Debug, Clone)]
pub struct Candidate {
    pub cost: i64,
    pub den: i64,
    pub darts: Vec<usize>,
    pub success: bool,
}

#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct RootedStats {
    pub calls: u64,
    pub successes: u64,
    pub negative: u64,
    pub reductions: u64,
    pub reduction_steps: u64,
    pub invariant_failures: u64,
    /// Sum of region sizes (vertices) over all calls.
    pub region_size: u64,
}

/// Simple cycles of a closed walk, dropping immediate back-and-forth pairs.
pub fn simple_parts(emb: &Embedding, walk: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut pos = std::collections::HashMap::new();
    let Some(&first) = walk.first() else {
        return out;
    };
    pos.insert(emb.tail(first), 0usize);
    let mut verts = vec![emb.tail(first)];
    for &d in walk {
        stack.push(d);
        let h = emb.head(d);
        if let Some(&p) = pos.get(&h) {
            let cyc: Vec<usize> = stack.drain(p..).collect();
            for x in verts.drain(p + 1..) {
                pos.remove(&x);
            }
            if !(cyc.len() == 2 && cyc[0] == cyc[1] ^ 1) {
                out.push(cyc);
            }
        } else {
            pos.insert(h, verts.len());
            verts.push(h);
        }
    }
    out
}

/// Turns a simple cycle into a closed walk through the tree root: the tree
/// path from the root to the nearest cycle vertex, around the cycle, and
/// back along the same path.
pub fn attach_root(emb: &Embedding, tree: &Tree, cycle: &[usize]) -> Vec<usize> {
    let (k, _) = cycle
        .iter()
        .enumerate()
        .min_by_key(|&(i, &d)| (tree.dist[emb.tail(d)], i))
        .expect("nonempty cycle");
    let x = emb.tail(cycle[k]);
    let path = tree.path_from_root(emb, x);
    let mut out = path.clone();
    out.extend(cycle[k..].iter().chain(&cycle[..k]));
    out.extend(path.iter().rev().map(|&d| d ^ 1));
    out
}

/// One step of the weight-reduction loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub cost_before: i64,
    pub cost_after: i64,
    pub weight_before: i64,
    pub weight_after: i64,
    pub near_simple: bool,
    /// Weight of the positive dart that was removed.
    pub dart_weight: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    /// beta * W, rounded down: every drop must stay below it.
    pub heavy_limit_num: i128,
    pub heavy_limit_den: i128,
    pub start_weight: i64,
    pub final_weight: i64,
    pub start_near_simple: bool,
}

impl ReductionTrace {
    /// Cost never increases, each drop is below beta W, every walk is near-simple.
    pub fn ok(&self) -> bool {
        self.start_near_simple
            && self.steps.iter().all(|s| {
                s.cost_after <= s.cost_before
                    && ((s.weight_before - s.weight_after) as i128) * self.heavy_limit_den
                        < self.heavy_limit_num
                    && s.near_simple
            })
    }
}

/// Shrinks a near-simple ccw walk through the root that encloses more than
/// alpha W: repeatedly take the last positive dart `xy`, find the closest
/// tree ancestor `u` of `x` among the vertices after it, and replace the
/// stretch from `x` to `u` by the tree path.
pub fn weight_reduction(
    emb: &Embedding,
    tree: &Tree,
    weight: &[i64],
    mut walk: Vec<usize>,
    params: &ApproxParams,
) -> Result<(Vec<usize>, ReductionTrace)> {
    let total = emb.total_face_weight();
    let limit = params.beta * Frac::from_integer(total as i128);
    let root = tree.root;
    let mut trace = ReductionTrace {
        heavy_limit_num: *limit.numer(),
        heavy_limit_den: *limit.denom(),
        start_weight: walk_weight(weight, &walk),
        start_near_simple: Cycle::new(walk.clone()).is_near_simple(emb, root),
        ..Default::default()
    };
    let mut w = trace.start_weight;
    let n = emb.num_vertices();
    while !params.within_alpha(w, total) {
        let i = walk
            .iter()
            .rposition(|&d| weight[d] > 0)
            .ok_or(Error::NoPositiveDart)?;
        let x = emb.tail(walk[i]);
        // first occurrence of each vertex in the part after x (from y on)
        let mut first = vec![usize::MAX; n];
        for j in (i + 1..walk.len()).rev() {
            first[emb.tail(walk[j])] = j;
        }
        first[root] = first[root].min(walk.len());
        let mut u = x;
        while first[u] == usize::MAX {
            u = tree
                .parent_vertex(emb, u)
                .expect("the root closes the walk");
        }
        let j = first[u];
        let mut down = tree.path_from_root(emb, x);
        down.drain(..tree.depth[u]);
        let mut next: Vec<usize> = walk[..i].to_vec();
        next.extend(down.iter().rev().map(|&d| d ^ 1));
        next.extend_from_slice(&walk[j..]);
        let next = cancel_backtracks(next);
        let nw = walk_weight(weight, &next);
        trace.steps.push(ReductionStep {
            cost_before: walk_cost(emb, &walk),
            cost_after: walk_cost(emb, &next),
            weight_before: w,
            weight_after: nw,
            near_simple: Cycle::new(next.clone()).is_near_simple(emb, root),
            dart_weight: weight[walk[i]],
        });
        walk = next;
        w = nw;
    }
    trace.final_weight = w;
    Ok((walk, trace))
}

/// Removes immediate reversals `d, rev d`; weight is unchanged, cost drops.
fn cancel_backtracks(walk: Vec<usize>) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(walk.len());
    for d in walk {
        if out.last() == Some(&(d ^ 1)) {
            out.pop();
        } else {
            out.push(d);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{enumerate_simple_cycles, Budget};
    use crate::planar::gen;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_region(rng: &mut ChaCha8Rng) -> Embedding {
        let n = rng.gen_range(7..11);
        let g = gen::random_triangulation(n, rng).dual();
        // near-uniform weights: light darts, so overweight cycles avoiding heavy darts exist
        let w: Vec<i64> = (0..g.num_faces()).map(|_| rng.gen_range(2..4)).collect();
        g.with_face_weights(w).unwrap()
    }

    #[test]
    fn reduction_invariants_on_planted_heavy_cycles() {
        let params = ApproxParams::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut cases = 0;
        while cases < 100 {
            let g = random_region(&mut rng);
            let total = g.total_face_weight();
            if total < 2 {
                continue;
            }
            let s = rng.gen_range(0..g.num_vertices());
            let p = Prepared::new(g.clone(), (0..g.num_darts()).collect(), s, &params);
            let budget = Budget {
                max_cycle_vertices: 20,
                ..Budget::default()
            };
            for c in enumerate_simple_cycles(&g, &budget).unwrap() {
                let darts = c.cycle.darts.clone();
                let e = walk_weight(&p.weight, &darts);
                let darts = if e < 0 {
                    c.cycle.reversed().darts
                } else {
                    darts
                };
                let e = e.abs();
                if params.within_alpha(e, total) || darts.iter().any(|&d| p.heavy[d]) {
                    continue;
                }
                let c0 = attach_root(&g, &p.tree, &darts);
                assert_eq!(walk_weight(&p.weight, &c0), e);
                let sides = Cycle::new(c0.clone()).sides(&g, p.f_inf).unwrap();
                assert_eq!(sides.enclosed, e);
                let (fin, trace) =
                    weight_reduction(&g, &p.tree, &p.weight, c0.clone(), &params).unwrap();
                assert!(
                    trace.ok(),
                    "{trace:?}\nc0 {:?}\nverts {:?}\nfin {:?}\nverts {:?}\nw {:?}\nparents {:?}",
                    c0,
                    Cycle::new(c0.clone()).vertices(&g),
                    fin,
                    Cycle::new(fin.clone()).vertices(&g),
                    c0.iter().map(|&d| p.weight[d]).collect::<Vec<_>>(),
                    (0..g.num_vertices())
                        .map(|v| p.tree.parent_vertex(&g, v))
                        .collect::<Vec<_>>()
                );
                let lo = (params.alpha - params.beta) * Frac::from_integer(total as i128);
                assert!(Frac::from_integer(trace.final_weight as i128) >= lo);
                assert!(params.within_alpha(trace.final_weight, total));
                assert_eq!(
                    Cycle::new(fin).sides(&g, p.f_inf).unwrap().enclosed,
                    trace.final_weight
                );
                cases += 1;
            }
        }
    }

    #[test]
    fn attach_root_is_identity_when_root_on_cycle() {
        let g = gen::cycle(&[1; 5], &[1; 5])
            .with_face_weights(vec![3, 4])
            .unwrap();
        let t = shortest_path_tree(&g, 0);
        let c: Vec<usize> = g.face(0).to_vec();
        let k = c.iter().position(|&d| g.tail(d) == 0).unwrap();
        let rotated: Vec<usize> = c[k..].iter().chain(&c[..k]).copied().collect();
        assert_eq!(attach_root(&g, &t, &c), rotated);
    }
}
