//! The approximation driver: a geometric binary search over `lambda`, where
//! each feasibility test runs the rooted search on small regions cut out
//! around net vertices of the decomposition's intersection paths.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use serde::Serialize;

use super::annuli::{tau_net, Annuli};
use super::cluster::{ClusterOptions, ClusterStats, ClusterTree};
use super::params::{ApproxParams, TauGrid};
use super::rooted::{Lambda, Prepared, RootedStats};
use crate::cut::{CutResult, Objective};
use crate::error::{Error, Result};
use crate::exact::cycle_cuts;
use crate::frac::{to_f64, Frac};
use crate::planar::{edge_of, Embedding};

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct LambdaStep {
    pub num: i128,
    pub den: i128,
    pub success: bool,
    /// Scales tried before the outcome was known.
    pub taus_tried: usize,
}

#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct ApproxTrace {
    pub eps_inv: i64,
    pub clusters: ClusterStats,
    pub rooted: RootedStats,
    pub taus: Vec<i64>,
    /// Distinct regions built, and the sum of their vertex counts.
    pub regions: usize,
    pub region_vertices: u64,
    pub steps: Vec<LambdaStep>,
}

#[derive(Debug, Clone)]
pub struct ApproxResult {
    pub cut: CutResult,
    pub trace: ApproxTrace,
}

/// Costs of all scales to try, in increasing order.
fn tau_values(g: &Embedding, grid: TauGrid, eps_inv: i64) -> Vec<i64> {
    let Some(&min) = g.costs().iter().min() else {
        return Vec::new();
    };
    let total = g.total_cost();
    let mut out = vec![min];
    let mut t = min;
    while 2 * t < total {
        t = match grid {
            TauGrid::Doubling => 2 * t,
            TauGrid::Fine => (t + (t + eps_inv - 1) / eps_inv).max(t + 1),
        };
        out.push(t);
    }
    out
}

struct Incumbent<'a> {
    g: &'a Embedding,
    best: CutResult,
}

impl Incumbent<'_> {
    fn offer_cycle(&mut self, darts: &[usize]) {
        for c in cycle_cuts(self.g, darts, Objective::Quotient) {
            if c.value < self.best.value {
                self.best = c;
            }
        }
    }
}

/// Rooted regions for one scale, built lazily and shared across `lambda`.
struct Regions<'a> {
    dual: &'a Embedding,
    tree: &'a ClusterTree,
    params: &'a ApproxParams,
    prepared: Vec<Prepared>,
    index: HashMap<(usize, Vec<usize>), usize>,
    per_tau: HashMap<i64, Vec<usize>>,
}

impl Regions<'_> {
    fn for_tau(&mut self, tau: i64) -> Vec<usize> {
        if let Some(v) = self.per_tau.get(&tau) {
            return v.clone();
        }
        let ids = self.build(tau);
        self.per_tau.insert(tau, ids.clone());
        ids
    }

    fn build(&mut self, tau: i64) -> Vec<usize> {
        let d = self.dual;
        let k = self.params.eps_inv;
        let ann = Annuli::new(tau, k);
        let dr = &self.tree.dist;
        let mut ids = Vec::new();
        let mut in_parent = vec![false; d.num_edges()];
        for p in &self.tree.clusters {
            if p.is_leaf() {
                continue;
            }
            for &e in &p.edges {
                in_parent[e] = true;
            }
            // net vertex -> annulus windows (shift, index) it must serve
            let mut windows: HashMap<usize, Vec<(i64, i64)>> = HashMap::new();
            let mut seen_paths = std::collections::HashSet::new();
            for &qi in &p.children {
                for &sid in &self.tree.clusters[qi].scars {
                    if !seen_paths.insert(sid) {
                        continue;
                    }
                    let scar = &self.tree.scars[sid as usize];
                    for side in 0..2 {
                        let verts = scar.path_vertices(d, side);
                        let darts = &scar.paths[side];
                        for i in 0..ann.shifts() {
                            let mut start = 0;
                            while start < verts.len() {
                                let Some(j) = ann.annulus(i, dr[verts[start]]) else {
                                    start += 1;
                                    continue;
                                };
                                let mut end = start;
                                while end < darts.len()
                                    && in_parent[edge_of(darts[end])]
                                    && ann.annulus(i, dr[verts[end + 1]]) == Some(j)
                                {
                                    end += 1;
                                }
                                let costs: Vec<i64> =
                                    darts[start..end].iter().map(|&x| d.dart_cost(x)).collect();
                                for pos in tau_net(&costs, tau, k) {
                                    windows.entry(verts[start + pos]).or_default().push((i, j));
                                }
                                start = end + 1;
                            }
                        }
                    }
                }
            }
            let mut nets: Vec<usize> = windows.keys().copied().collect();
            nets.sort_unstable();
            for s in nets {
                if p.vertices.binary_search(&s).is_err() {
                    continue;
                }
                for set in self.regions_at(s, tau, &windows[&s], &in_parent) {
                    if let Some(id) = self.region(s, set, &in_parent) {
                        ids.push(id);
                    }
                }
            }
            for &e in &p.edges {
                in_parent[e] = false;
            }
        }
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Distinct vertex sets: the part of each window reachable from `s`
    /// within `(1 + eps) tau`.
    fn regions_at(
        &self,
        s: usize,
        tau: i64,
        wins: &[(i64, i64)],
        in_parent: &[bool],
    ) -> Vec<Vec<usize>> {
        let k = self.params.eps_inv;
        let ann = Annuli::new(tau, k);
        let dr = &self.tree.dist;
        let ball = ball(self.dual, s, tau, k, in_parent, |_| true);
        let mut by_dist: Vec<i64> = ball.iter().map(|&(v, _)| dr[v]).collect();
        by_dist.sort_unstable();
        by_dist.dedup();
        let mut ranges: Vec<(usize, usize)> = wins
            .iter()
            .map(|&(i, j)| {
                let (lo, hi) = ann.scaled_bounds(i, j);
                let a = by_dist.partition_point(|&x| (x as i128) * (k as i128) < lo);
                let b = by_dist.partition_point(|&x| (x as i128) * (k as i128) < hi);
                (a, b)
            })
            .collect();
        ranges.sort_unstable();
        ranges.dedup();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (a, b) in ranges {
            if a >= b {
                continue;
            }
            let (lo, hi) = (by_dist[a], by_dist[b - 1]);
            let mut set: Vec<usize> = ball_vertices(self.dual, s, tau, k, in_parent, |v| {
                dr[v] >= lo && dr[v] <= hi
            });
            set.sort_unstable();
            out.push(set);
        }
        out.sort();
        out.dedup();
        out
    }

    fn region(&mut self, s: usize, set: Vec<usize>, in_parent: &[bool]) -> Option<usize> {
        if set.len() < 2 {
            return None;
        }
        let d = self.dual;
        let mut keep = vec![false; d.num_vertices()];
        for &v in &set {
            keep[v] = true;
        }
        // the kept edges determine the region
        let mut edges: Vec<usize> = set
            .iter()
            .flat_map(|&v| d.darts_at(v))
            .filter(|&x| in_parent[edge_of(x)] && keep[d.head(x)])
            .map(edge_of)
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let key = (s, edges);
        if let Some(&id) = self.index.get(&key) {
            return Some(id);
        }
        let r = d.restrict(&keep, Some(in_parent)).ok()?;
        if r.emb.num_edges() == 0 {
            return None;
        }
        let s_local = r.vertex_map.iter().position(|&v| v == s)?;
        let dart_map: Vec<usize> = (0..r.emb.num_darts()).map(|x| r.parent_dart(x)).collect();
        let id = self.prepared.len();
        self.prepared
            .push(Prepared::new(r.emb, dart_map, s_local, self.params));
        self.index.insert(key, id);
        Some(id)
    }
}

/// Dijkstra from `s` over edges with `in_parent`, through vertices passing
/// `keep`, up to distance `(1 + 1/k) tau`. Returns (vertex, distance).
fn ball(
    g: &Embedding,
    s: usize,
    tau: i64,
    k: i64,
    in_parent: &[bool],
    keep: impl Fn(usize) -> bool,
) -> Vec<(usize, i64)> {
    let limit = (k as i128 + 1) * tau as i128;
    let mut dist: HashMap<usize, i64> = HashMap::new();
    let mut out = Vec::new();
    let mut heap = BinaryHeap::new();
    dist.insert(s, 0);
    heap.push(Reverse((0i64, s)));
    while let Some(Reverse((dv, v))) = heap.pop() {
        if dist.get(&v).is_some_and(|&x| x < dv) {
            continue;
        }
        out.push((v, dv));
        for x in g.darts_at(v) {
            if !in_parent[edge_of(x)] {
                continue;
            }
            let h = g.head(x);
            let nd = dv + g.dart_cost(x);
            if (nd as i128) * (k as i128) > limit || !keep(h) {
                continue;
            }
            if dist.get(&h).is_none_or(|&o| nd < o) {
                dist.insert(h, nd);
                heap.push(Reverse((nd, h)));
            }
        }
    }
    out
}

fn ball_vertices(
    g: &Embedding,
    s: usize,
    tau: i64,
    k: i64,
    in_parent: &[bool],
    keep: impl Fn(usize) -> bool,
) -> Vec<usize> {
    ball(g, s, tau, k, in_parent, keep)
        .into_iter()
        .map(|(v, _)| v)
        .collect()
}

/// Constant-factor approximation of the minimum quotient cut of `g`.
pub fn approx_min_quotient(g: &Embedding, params: &ApproxParams) -> Result<ApproxResult> {
    params.check()?;
    let n = g.num_vertices();
    let total = g.total_vertex_weight();
    if n < 2 || total < 2 {
        return Err(Error::NoCut);
    }
    let mut trace = ApproxTrace {
        eps_inv: params.eps_inv,
        ..Default::default()
    };
    // singletons seed the incumbent
    let mut best: Option<CutResult> = None;
    let mut side = vec![false; n];
    for v in 0..n {
        side[v] = true;
        if let Ok(c) = CutResult::from_side(g, &side, Objective::Quotient) {
            if best.as_ref().is_none_or(|b| c.value < b.value) {
                best = Some(c);
            }
        }
        side[v] = false;
    }
    let mut inc = Incumbent {
        g,
        best: best.ok_or(Error::NoCut)?,
    };

    let dual = g.dual();
    let tree = ClusterTree::build(&dual, 0, ClusterOptions::default());
    trace.clusters = tree.stats.clone();
    for c in &tree.clusters {
        if let Some(cyc) = &c.leaf_best {
            inc.offer_cycle(cyc);
        }
    }
    let taus = tau_values(g, params.tau_grid, params.eps_inv);
    trace.taus = taus.clone();
    let mut regions = Regions {
        dual: &dual,
        tree: &tree,
        params,
        prepared: Vec::new(),
        index: HashMap::new(),
        per_tau: HashMap::new(),
    };

    // lo < optimum is kept by failed tests; best <= target * hi always
    let den = 1024 * total as i128;
    let mut lo = Frac::new(1, total as i128);
    loop {
        let hi = inc.best.value / params.target;
        if hi <= params.slack * lo {
            break;
        }
        let mid = (to_f64(&lo) * to_f64(&hi)).sqrt();
        let lambda = Lambda {
            num: (mid * den as f64).round() as i128,
            den,
        };
        let lf = lambda.frac();
        if lf <= lo || lf >= hi {
            break;
        }
        let mut tried = 0;
        let mut success = false;
        for &tau in &taus {
            // a cycle of quotient <= lambda costs at most lambda W / 2
            if (tau as i128) * lambda.den > lambda.num * total as i128 {
                break;
            }
            tried += 1;
            for id in regions.for_tau(tau) {
                let p = &regions.prepared[id];
                if let Some(c) = p.search(lambda, params, &mut trace.rooted) {
                    if Frac::new(c.cost as i128, c.den as i128) < inc.best.value {
                        inc.offer_cycle(&c.darts);
                    }
                    if c.success {
                        success = true;
                        break;
                    }
                }
            }
            if success {
                break;
            }
        }
        trace.steps.push(LambdaStep {
            num: lambda.num,
            den: lambda.den,
            success,
            taus_tried: tried,
        });
        if !success {
            lo = lf;
        }
    }
    trace.regions = regions.prepared.len();
    trace.region_vertices = regions
        .prepared
        .iter()
        .map(|p| p.emb.num_vertices() as u64)
        .sum();
    Ok(ApproxResult {
        cut: inc.best,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{solve, Method};
    use crate::frac::frac;
    use crate::planar::gen::{self, RandomSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn within_factor_of_exact() {
        let params = ApproxParams::default();
        let bound = params.target * params.slack;
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..25 {
            let n = rng.gen_range(4..60);
            let spec = RandomSpec {
                n,
                max_cost: 20,
                max_weight: 3,
                keep: rng.gen_range(0.2..0.9),
            };
            let g = gen::random_planar(spec, &mut rng);
            if g.total_vertex_weight() < 2 {
                continue;
            }
            let ex = solve(&g, Objective::Quotient, Method::Separator).unwrap();
            let ap = approx_min_quotient(&g, &params).unwrap();
            assert!(ap.cut.verify(&g));
            assert!(ap.cut.value >= ex.value);
            assert!(
                ap.cut.value <= bound * ex.value,
                "{} vs {}",
                ap.cut.value,
                ex.value
            );
        }
    }

    #[test]
    fn unit_grid_finds_middle_cut() {
        let g = gen::unit_grid(8);
        let ap = approx_min_quotient(&g, &ApproxParams::default()).unwrap();
        assert!(ap.cut.value <= frac(329, 400));
        assert!(ap.trace.steps.len() > 3);
        assert!(serde_json::to_string(&ap.trace).is_ok());
    }

    #[test]
    fn fine_grid_lists_more_scales() {
        let g = gen::unit_grid(5);
        let d = tau_values(&g, TauGrid::Doubling, 268);
        let f = tau_values(&g, TauGrid::Fine, 268);
        assert_eq!(d[0], 1);
        assert!(f.len() > d.len());
        assert!(2 * d.last().unwrap() >= g.total_cost());
    }

    #[test]
    fn no_cut_without_weight() {
        let g = gen::path(&[1], &[1, 0]);
        assert!(approx_min_quotient(&g, &ApproxParams::default()).is_err());
    }
}
