//! Brute-force reference computations, deliberately naive and independent of
//! the solvers they check.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::cut::{evaluate, Objective};
use crate::error::{Error, Result};
use crate::frac::{frac, Frac};
use crate::planar::{rev, Cycle, Embedding};

#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_cut_vertices: usize,
    pub max_apsp_nodes: usize,
    pub max_linkage_nodes: usize,
    pub max_cycle_vertices: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_cut_vertices: 20,
            max_apsp_nodes: 4096,
            max_linkage_nodes: 2048,
            max_cycle_vertices: 12,
        }
    }
}

fn check(size: usize, budget: usize) -> Result<()> {
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutRow {
    /// Bit `v` set iff vertex `v` is in S (vertex 0 never is).
    pub mask: u64,
    pub cost: i64,
    pub weight_side: i64,
    pub weight_other: i64,
    pub balanced: bool,
}

impl CutRow {
    pub fn value(&self, objective: Objective) -> Option<Frac> {
        objective.value(self.cost, self.weight_side, self.weight_other)
    }
}

/// Every bipartition `{S, V - S}` with `S` nonempty and `0 ∉ S`.
pub fn brute_cuts(g: &Embedding, budget: &Budget) -> Result<Vec<CutRow>> {
    let n = g.num_vertices();
    check(n, budget.max_cut_vertices)?;
    let mut rows = Vec::new();
    let mut side = vec![false; n];
    for half in 1u64..(1u64 << (n - 1)) {
        let mask = half << 1;
        for (v, s) in side.iter_mut().enumerate() {
            *s = mask >> v & 1 == 1;
        }
        let (cost, ws, wo, _) = evaluate(g, &side);
        rows.push(CutRow {
            mask,
            cost,
            weight_side: ws,
            weight_other: wo,
            balanced: ws == wo,
        });
    }
    Ok(rows)
}

/// Optimal value and one optimal mask (smallest mask among ties), or `None`
/// if no bipartition has two positively weighted sides.
pub fn brute_optimum(
    g: &Embedding,
    objective: Objective,
    budget: &Budget,
) -> Result<Option<(Frac, u64)>> {
    let rows = brute_cuts(g, budget)?;
    Ok(rows
        .iter()
        .filter_map(|r| r.value(objective).map(|v| (v, r.mask)))
        .min())
}

/// Minimum cost of a perfectly balanced bipartition.
pub fn brute_bisection(g: &Embedding, budget: &Budget) -> Result<Option<i64>> {
    Ok(brute_cuts(g, budget)?
        .iter()
        .filter(|r| r.balanced)
        .map(|r| r.cost)
        .min())
}

/// Dijkstra from every vertex using edge costs as lengths.
pub fn apsp(g: &Embedding, budget: &Budget) -> Result<Vec<Vec<i64>>> {
    let n = g.num_vertices();
    check(n, budget.max_apsp_nodes)?;
    let mut adj = vec![Vec::new(); n];
    for e in 0..g.num_edges() {
        let (a, b) = g.endpoints(e);
        adj[a].push((b, g.cost(e)));
        adj[b].push((a, g.cost(e)));
    }
    let mut out = Vec::with_capacity(n);
    for s in 0..n {
        let mut dist = vec![i64::MAX; n];
        let mut heap = BinaryHeap::new();
        dist[s] = 0;
        heap.push(Reverse((0i64, s)));
        while let Some(Reverse((d, v))) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            for &(h, c) in &adj[v] {
                if d + c < dist[h] {
                    dist[h] = d + c;
                    heap.push(Reverse((d + c, h)));
                }
            }
        }
        out.push(dist);
    }
    Ok(out)
}

/// Hop distances (every edge counts one).
pub fn hop_diameter(g: &Embedding) -> usize {
    let n = g.num_vertices();
    let mut best = 0;
    for s in 0..n {
        let t = crate::planar::bfs_tree(g, s);
        best = best.max(t.dist.iter().copied().max().unwrap_or(0) as usize);
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetMode {
    Max,
    Sum,
}

pub fn set_distance(dist: &[Vec<i64>], a: &[usize], b: &[usize], mode: SetMode) -> i64 {
    let pairs = a.iter().flat_map(|&x| b.iter().map(move |&y| dist[x][y]));
    match mode {
        SetMode::Max => pairs.max().unwrap_or(0),
        SetMode::Sum => pairs.sum(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Linkage {
    Single,
    Complete,
    Average,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Merge {
    /// Surviving cluster id (the smaller of the two).
    pub keep: usize,
    pub absorbed: usize,
    pub value_num: i128,
    pub value_den: i128,
    pub size: usize,
}

impl Merge {
    pub fn value(&self) -> Frac {
        frac(self.value_num, self.value_den)
    }
}

/// Naive agglomerative clustering of the points `0..dist.len()`. Clusters
/// are named by their smallest member; among equally close pairs the
/// lexicographically smallest `(id, id)` pair merges first.
pub fn linkage_simulate(dist: &[Vec<i64>], mode: Linkage, budget: &Budget) -> Result<Vec<Merge>> {
    let n = dist.len();
    check(n, budget.max_linkage_nodes)?;
    // pairwise aggregate: min, max, or sum of distances
    let mut agg: Vec<Vec<i128>> = dist
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut size = vec![1usize; n];
    let mut alive = vec![true; n];
    let mut merges = Vec::with_capacity(n.saturating_sub(1));
    let value = |agg: &Vec<Vec<i128>>, size: &[usize], i: usize, j: usize| -> (i128, i128) {
        match mode {
            Linkage::Average => (agg[i][j], (size[i] * size[j]) as i128),
            _ => (agg[i][j], 1),
        }
    };
    for _ in 1..n {
        let mut best: Option<(usize, usize, (i128, i128))> = None;
        for i in 0..n {
            if !alive[i] {
                continue;
            }
            for j in i + 1..n {
                if !alive[j] {
                    continue;
                }
                let v = value(&agg, &size, i, j);
                let better = match best {
                    None => true,
                    Some((_, _, b)) => (v.0 * b.1).cmp(&(b.0 * v.1)) == Ordering::Less,
                };
                if better {
                    best = Some((i, j, v));
                }
            }
        }
        let (i, j, v) = best.unwrap();
        for k in 0..n {
            if !alive[k] || k == i || k == j {
                continue;
            }
            let x = match mode {
                Linkage::Single => agg[i][k].min(agg[j][k]),
                Linkage::Complete => agg[i][k].max(agg[j][k]),
                Linkage::Average => agg[i][k] + agg[j][k],
            };
            agg[i][k] = x;
            agg[k][i] = x;
        }
        alive[j] = false;
        size[i] += size[j];
        let f = frac(v.0, v.1);
        merges.push(Merge {
            keep: i,
            absorbed: j,
            value_num: *f.numer(),
            value_den: *f.denom(),
            size: size[i],
        });
    }
    Ok(merges)
}

/// Edge weights (sorted) of a minimum spanning tree of the complete distance graph.
pub fn mst_weights(dist: &[Vec<i64>]) -> Vec<i64> {
    let n = dist.len();
    let mut in_tree = vec![false; n];
    let mut best = vec![i64::MAX; n];
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    best[0] = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !in_tree[v])
            .min_by_key(|&v| best[v])
            .unwrap();
        in_tree[v] = true;
        out.push(best[v]);
        for u in 0..n {
            if !in_tree[u] && dist[v][u] < best[u] {
                best[u] = dist[v][u];
            }
        }
    }
    out.remove(0);
    out.sort_unstable();
    out
}

#[derive(Debug, Clone)]
pub struct CycleInfo {
    /// Oriented counterclockwise with respect to the outer face.
    pub cycle: Cycle,
    pub cost: i64,
    pub enclosed: i64,
}

/// All simple cycles (each undirected cycle once), by depth-first search
/// from the smallest vertex on the cycle.
pub fn enumerate_simple_cycles(g: &Embedding, budget: &Budget) -> Result<Vec<CycleInfo>> {
    let n = g.num_vertices();
    check(n, budget.max_cycle_vertices)?;
    let mut raw: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        let mut on_path = vec![false; n];
        on_path[s] = true;
        let mut path = Vec::new();
        dfs(g, s, s, &mut on_path, &mut path, &mut raw);
    }
    raw.into_iter()
        .map(|darts| {
            let c = Cycle::new(darts);
            let sides = c.sides(g, g.outer())?;
            let c = if sides.ccw { c } else { c.reversed() };
            Ok(CycleInfo {
                cost: c.cost(g),
                enclosed: sides.enclosed,
                cycle: c,
            })
        })
        .collect()
}

fn dfs(
    g: &Embedding,
    s: usize,
    v: usize,
    on_path: &mut [bool],
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    for d in g.darts_at(v) {
        let h = g.head(d);
        if h == s {
            let ok = match path.first() {
                // self-loop: take one of its two darts
                None => d & 1 == 0,
                Some(&f) => f >> 1 < d >> 1,
            };
            if ok {
                let mut c = path.clone();
                c.push(d);
                out.push(c);
            }
            continue;
        }
        if h < s || on_path[h] {
            continue;
        }
        on_path[h] = true;
        path.push(d);
        dfs(g, s, h, on_path, path, out);
        path.pop();
        on_path[h] = false;
    }
}

/// Number of simple cycles, counted independently as the edge subsets that
/// induce a connected 2-regular subgraph (self-loops count alone).
pub fn count_cycles_by_edge_subsets(g: &Embedding) -> Result<usize> {
    let m = g.num_edges();
    check(m, 24)?;
    let n = g.num_vertices();
    let mut count = 0;
    for mask in 1u32..(1u32 << m) {
        let edges: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
        if edges.len() == 1 {
            let (a, b) = g.endpoints(edges[0]);
            count += usize::from(a == b);
            continue;
        }
        let mut deg = vec![0; n];
        let mut dsu = crate::planar::Dsu::new(n);
        let mut loops = false;
        for &e in &edges {
            let (a, b) = g.endpoints(e);
            loops |= a == b;
            deg[a] += 1;
            deg[b] += 1;
            dsu.union(a, b);
        }
        if loops || deg.iter().any(|&d| d != 0 && d != 2) {
            continue;
        }
        let (a, _) = g.endpoints(edges[0]);
        let root = dsu.find(a);
        if (0..n).all(|v| deg[v] == 0 || dsu.find(v) == root) {
            count += 1;
        }
    }
    Ok(count)
}

/// Whether some simple directed cycle over the allowed darts has negative
/// total length, by trying every simple cycle in both orientations.
pub fn negative_cycle_exists(
    g: &Embedding,
    len: &[i128],
    allowed: &[bool],
    budget: &Budget,
) -> Result<bool> {
    for c in enumerate_simple_cycles(g, budget)? {
        for darts in [c.cycle.darts.clone(), c.cycle.reversed().darts] {
            if darts.iter().all(|&d| allowed[d]) && darts.iter().map(|&d| len[d]).sum::<i128>() < 0
            {
                return Ok(true);
            }
        }
    }
    // a dart and its reverse form a closed walk too
    Ok((0..g.num_darts()).any(|d| allowed[d] && allowed[rev(d)] && len[d] + len[rev(d)] < 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::gen;

    #[test]
    fn single_edge_cut() {
        let g = gen::path(&[6], &[2, 3]);
        let rows = brute_cuts(&g, &Budget::default()).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].value(Objective::Quotient), Some(frac(3, 1)));
    }

    #[test]
    fn small_optima() {
        let b = Budget::default();
        let sq = gen::cycle(&[1; 4], &[1; 4]);
        assert_eq!(
            brute_optimum(&sq, Objective::Quotient, &b)
                .unwrap()
                .unwrap()
                .0,
            frac(1, 1)
        );
        let tri = gen::cycle(&[1; 3], &[1; 3]);
        assert_eq!(
            brute_optimum(&tri, Objective::Quotient, &b)
                .unwrap()
                .unwrap()
                .0,
            frac(2, 1)
        );
        assert_eq!(brute_bisection(&sq, &b).unwrap(), Some(2));
    }

    #[test]
    fn budget_is_enforced() {
        let g = gen::unit_grid(5);
        assert!(matches!(
            brute_cuts(&g, &Budget::default()),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn apsp_path() {
        let g = gen::path(&[2, 3], &[1, 1, 1]);
        let d = apsp(&g, &Budget::default()).unwrap();
        assert_eq!(d[0][2], 5);
        assert_eq!(d[2][0], 5);
    }

    #[test]
    fn set_distances_of_singletons() {
        let d = vec![vec![0, 4], vec![4, 0]];
        assert_eq!(set_distance(&d, &[0], &[1], SetMode::Max), 4);
        assert_eq!(set_distance(&d, &[0], &[1], SetMode::Sum), 4);
    }

    #[test]
    fn two_points_merge_once() {
        let d = vec![vec![0, 7], vec![7, 0]];
        for mode in [Linkage::Single, Linkage::Complete, Linkage::Average] {
            let m = linkage_simulate(&d, mode, &Budget::default()).unwrap();
            assert_eq!(m.len(), 1);
            assert_eq!(m[0].value(), frac(7, 1));
        }
    }

    #[test]
    fn cycle_counts() {
        let b = Budget::default();
        assert!(enumerate_simple_cycles(&gen::star(3, 1, 1), &b)
            .unwrap()
            .is_empty());
        assert_eq!(
            enumerate_simple_cycles(&gen::cycle(&[1; 3], &[1; 3]), &b)
                .unwrap()
                .len(),
            1
        );
        let g = gen::unit_grid(3);
        assert_eq!(
            enumerate_simple_cycles(&g, &b).unwrap().len(),
            count_cycles_by_edge_subsets(&g).unwrap()
        );
    }
}
