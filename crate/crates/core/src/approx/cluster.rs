//! Recursive decomposition of a plane graph into clusters.
//!
//! Each internal cluster is split along a fundamental cycle of a shortest
//! path tree (in a triangulation of its real faces). The part on one side,
//! plus the cycle, becomes a child; everything across the cycle collapses
//! into a single face, a *scar*, which remembers the two tree paths bounding
//! it. Any cycle of the input lying partly inside a cluster must cross one of
//! the paths of the cluster's scars. Degree-two vertices on the cut cycle are
//! spliced into compound edges.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::exact::triangulate;
use crate::planar::{edge_of, pp_dart_weights, rev, shortest_path_tree, Embedding, Tree};

#[derive(Debug, Clone, Copy)]
pub struct ClusterOptions {
    /// Clusters with at most this many real faces are leaves.
    pub leaf_faces: usize,
    pub max_scars: usize,
    /// Keep vertex/edge sets and leaf solutions (needed for searching).
    pub keep: bool,
    /// Simple cycles enumerated per leaf before giving up.
    pub leaf_cycle_cap: usize,
}

impl Default for ClusterOptions {
    fn default() -> Self {
        ClusterOptions {
            leaf_faces: 12,
            max_scars: 6,
            keep: true,
            leaf_cycle_cap: 1_000_000,
        }
    }
}

/// The two tree paths bounding a scar, as darts of the input graph running
/// from the branch point outwards.
#[derive(Debug, Clone)]
pub struct Scar {
    /// Input vertex where both paths start.
    pub apex: usize,
    pub paths: [Vec<usize>; 2],
}

impl Scar {
    /// Vertex sequence of path `i`, starting at the apex.
    pub fn path_vertices(&self, g: &Embedding, i: usize) -> Vec<usize> {
        std::iter::once(self.apex)
            .chain(self.paths[i].iter().map(|&d| g.head(d)))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct Cluster {
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub depth: usize,
    pub faces: usize,
    pub real_faces: usize,
    /// Number of scar faces.
    pub scar_faces: usize,
    /// Ids of the scars merged into this cluster's scar faces; their paths
    /// are the cluster's intersection paths.
    pub scars: Vec<u32>,
    /// Input vertices of the cluster, sorted (empty unless kept).
    pub vertices: Vec<usize>,
    /// Input edges of the cluster, sorted (empty unless kept).
    pub edges: Vec<usize>,
    /// Best simple cycle of a leaf, as input darts.
    pub leaf_best: Option<Vec<usize>>,
}

impl Cluster {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct ClusterStats {
    pub clusters: usize,
    pub leaves: usize,
    pub depth: usize,
    /// Most scar faces in one cluster.
    pub max_scars: usize,
    /// Most intersection paths in one cluster.
    pub max_paths: usize,
    pub max_leaf_faces: usize,
    /// Sum over clusters of their face counts.
    pub total_size: usize,
    pub input_faces: usize,
    /// Leaves whose cycle enumeration hit the cap.
    pub truncated_leaves: usize,
}

#[derive(Debug, Clone)]
pub struct ClusterTree {
    pub root_vertex: usize,
    /// Shortest-path distances from the root vertex.
    pub dist: Vec<i64>,
    pub clusters: Vec<Cluster>,
    pub scars: Vec<Scar>,
    pub stats: ClusterStats,
    input_tail: Vec<usize>,
}

/// A cluster under construction: a spliced sub-embedding of the input.
struct Work {
    h: Embedding,
    /// per edge of `h`, the input darts its even dart stands for
    expand: Vec<Vec<u32>>,
    /// vertex of `h` -> input vertex
    vmap: Vec<usize>,
    /// per face of `h`, the scars merged into it
    scars: Vec<Vec<u32>>,
}

fn expand_dart(expand: &[Vec<u32>], d: usize) -> Vec<u32> {
    let e = &expand[edge_of(d)];
    if d & 1 == 0 {
        e.clone()
    } else {
        e.iter().rev().map(|&x| x ^ 1).collect()
    }
}

/// Input darts of a cycle or path of `h`.
fn expand_walk(expand: &[Vec<u32>], darts: &[usize]) -> Vec<usize> {
    darts
        .iter()
        .flat_map(|&d| expand_dart(expand, d))
        .map(|x| x as usize)
        .collect()
}

impl ClusterTree {
    /// Builds the decomposition of `g` (face weights matter) using shortest
    /// paths from `root`.
    pub fn build(g: &Embedding, root: usize, opts: ClusterOptions) -> ClusterTree {
        let dist = shortest_path_tree(g, root).dist;
        let mut t = ClusterTree {
            root_vertex: root,
            dist,
            clusters: Vec::new(),
            scars: Vec::new(),
            input_tail: (0..g.num_darts()).map(|d| g.tail(d)).collect(),
            stats: ClusterStats {
                input_faces: g.num_faces(),
                ..Default::default()
            },
        };
        let work = Work {
            h: g.clone(),
            expand: (0..g.num_edges()).map(|e| vec![2 * e as u32]).collect(),
            vmap: (0..g.num_vertices()).collect(),
            scars: vec![Vec::new(); g.num_faces()],
        };
        let depth_cap = 4 * (usize::BITS - g.num_faces().leading_zeros()) as usize + 64;
        let mut stack = vec![(work, None, 0usize)];
        while let Some((w, parent, depth)) = stack.pop() {
            let id = t.add_cluster(&w, parent, depth, &opts);
            if t.clusters[id].real_faces <= opts.leaf_faces || depth >= depth_cap {
                t.finish_leaf(id, &w, &opts);
                continue;
            }
            match t.split(&w, depth, &opts) {
                Some((a, b)) => {
                    stack.push((b, Some(id), depth + 1));
                    stack.push((a, Some(id), depth + 1));
                }
                None => t.finish_leaf(id, &w, &opts),
            }
        }
        t.stats.clusters = t.clusters.len();
        t
    }

    fn add_cluster(
        &mut self,
        w: &Work,
        parent: Option<usize>,
        depth: usize,
        opts: &ClusterOptions,
    ) -> usize {
        let id = self.clusters.len();
        let scars: BTreeSet<u32> = w.scars.iter().flatten().copied().collect();
        let real_faces = w.scars.iter().filter(|s| s.is_empty()).count();
        let (mut vertices, mut edges) = (Vec::new(), Vec::new());
        if opts.keep {
            let mut vs: BTreeSet<usize> = w.vmap.iter().copied().collect();
            let mut es = BTreeSet::new();
            for ex in &w.expand {
                for &d in ex {
                    es.insert(edge_of(d as usize));
                }
            }
            // interior vertices of compound edges
            for ex in &w.expand {
                for &d in ex.iter().skip(1) {
                    vs.insert(self.input_tail[d as usize]);
                }
            }
            vertices = vs.into_iter().collect();
            edges = es.into_iter().collect();
        }
        if let Some(p) = parent {
            self.clusters[p].children.push(id);
        }
        self.clusters.push(Cluster {
            parent,
            children: Vec::new(),
            depth,
            faces: w.h.num_faces(),
            real_faces,
            scar_faces: w.h.num_faces() - real_faces,
            scars: scars.into_iter().collect(),
            vertices,
            edges,
            leaf_best: None,
        });
        let s = &mut self.stats;
        s.depth = s.depth.max(depth);
        s.max_scars = s.max_scars.max(self.clusters[id].scar_faces);
        s.max_paths = s.max_paths.max(2 * self.clusters[id].scars.len());
        s.total_size += w.h.num_faces();
        id
    }

    fn finish_leaf(&mut self, id: usize, w: &Work, opts: &ClusterOptions) {
        self.stats.leaves += 1;
        self.stats.max_leaf_faces = self.stats.max_leaf_faces.max(self.clusters[id].real_faces);
        if !opts.keep {
            return;
        }
        let (best, complete) = best_leaf_cycle(&w.h, opts.leaf_cycle_cap);
        if !complete {
            self.stats.truncated_leaves += 1;
        }
        self.clusters[id].leaf_best = best.map(|c| expand_walk(&w.expand, &c));
    }

    /// Splits a cluster along the best fundamental cycle; `None` if no cycle
    /// leaves real faces on both sides.
    fn split(&mut self, w: &Work, depth: usize, opts: &ClusterOptions) -> Option<(Work, Work)> {
        let h = &w.h;
        let root = (0..h.num_vertices()).min_by_key(|&v| (self.dist[w.vmap[v]], v))?;
        let tree = shortest_path_tree(h, root);
        let ht = triangulate(h);
        let m_real = h.num_edges();
        let is_tree = |e: usize| e < m_real && tree.contains_edge(e);

        // weights and scars of the triangulation's faces; every triangle of a
        // scar face carries its ids
        let nf = ht.num_faces();
        let mut fw = vec![0i64; nf];
        let mut fscars: Vec<Vec<u32>> = vec![Vec::new(); nf];
        let mut real = vec![true; nf];
        for f in 0..h.num_faces() {
            fw[ht.face_of(h.face(f)[0])] = h.face_weight(f);
            if !w.scars[f].is_empty() {
                for &d in h.face(f) {
                    let tf = ht.face_of(d);
                    fscars[tf] = w.scars[f].clone();
                    real[tf] = false;
                }
            }
        }
        // one bit per scar face of h, set on each of its triangles
        let mut mask = vec![0u64; nf];
        let mut k = 0;
        for f in 0..h.num_faces() {
            if !w.scars[f].is_empty() {
                for &d in h.face(f) {
                    mask[ht.face_of(d)] |= 1u64 << k.min(63);
                }
                k += 1;
            }
        }

        // cotree over the triangulation's faces, rooted at face 0
        let mut parent_edge: Vec<Option<usize>> = vec![None; nf];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); nf];
        let mut seen = vec![false; nf];
        let mut order = vec![0usize];
        seen[0] = true;
        let mut i = 0;
        while i < order.len() {
            let f = order[i];
            i += 1;
            for &d in ht.face(f) {
                let e = edge_of(d);
                if is_tree(e) {
                    continue;
                }
                let g = ht.face_of(rev(d));
                if !seen[g] {
                    seen[g] = true;
                    parent_edge[g] = Some(e);
                    children[f].push(g);
                    order.push(g);
                }
            }
        }
        let mut count: Vec<usize> = real.iter().map(|&r| r as usize).collect();
        let mut smask = mask.clone();
        for &f in order.iter().rev() {
            for &c in &children[f] {
                count[f] += count[c];
                smask[f] |= smask[c];
            }
        }
        let total = count[0];
        // scars outside each subtree: preorder intervals with prefix/suffix ORs
        let mut tin = vec![0usize; nf];
        let mut tout = vec![0usize; nf];
        let mut pre = Vec::with_capacity(nf);
        let mut st = vec![(0usize, false)];
        while let Some((f, done)) = st.pop() {
            if done {
                tout[f] = pre.len();
                continue;
            }
            tin[f] = pre.len();
            pre.push(f);
            st.push((f, true));
            st.extend(children[f].iter().rev().map(|&c| (c, false)));
        }
        let mut prefix = vec![0u64; nf + 1];
        let mut suffix = vec![0u64; nf + 1];
        for i in 0..nf {
            prefix[i + 1] = prefix[i] | mask[pre[i]];
        }
        for i in (0..nf).rev() {
            suffix[i] = suffix[i + 1] | mask[pre[i]];
        }
        // (larger side faces, larger side scars, edge, face)
        let mut cands: Vec<(usize, usize, usize, usize)> = Vec::new();
        for c in 1..nf {
            let (fa, ma) = (count[c], smask[c]);
            let fb = total - fa;
            if fa == 0 || fb == 0 {
                continue;
            }
            let mb = prefix[tin[c]] | suffix[tout[c]];
            // a scar cut by the cycle merges into the new one on both sides
            let scars = ((ma & !mb).count_ones() as usize).max((mb & !ma).count_ones() as usize);
            cands.push((fa.max(fb), scars, parent_edge[c].unwrap(), c));
        }
        let c = choose(&cands, depth.is_multiple_of(2), total, opts.max_scars)?;

        // side A: the cotree subtree below c
        let mut in_a = vec![false; nf];
        let mut st = vec![c];
        while let Some(f) = st.pop() {
            in_a[f] = true;
            st.extend(children[f].iter().copied());
        }
        let e = parent_edge[c].unwrap();
        let (x, y) = ht.endpoints(e);
        let l = tree.lca(h, x, y);
        let sid = self.scars.len() as u32;
        // a real closing edge may be compound: its inner vertices lie on the
        // cycle too, so it extends the first path
        let mut p1 = tree.path_between(h, l, x);
        if e < m_real {
            p1.push(2 * e);
        }
        self.scars.push(Scar {
            apex: w.vmap[l],
            paths: [
                expand_walk(&w.expand, &p1),
                expand_walk(&w.expand, &tree.path_between(h, l, y)),
            ],
        });
        let mut on_cycle = vec![false; h.num_vertices()];
        on_cycle[x] = true;
        on_cycle[y] = true;
        for d in tree.path_between(h, x, y) {
            on_cycle[ht.tail(d)] = true;
        }
        let htw = ht.with_face_weights(fw).ok()?;
        let a = side(w, &htw, m_real, &in_a, true, &fscars, sid, &on_cycle)?;
        let b = side(w, &htw, m_real, &in_a, false, &fscars, sid, &on_cycle)?;
        Some((a, b))
    }
}

/// Picks the cut: on face steps the most balanced cut whose children keep
/// few scars (with some headroom when that costs little balance), on scar
/// steps the cut leaving the fewest scars.
fn choose(
    cands: &[(usize, usize, usize, usize)],
    face_step: bool,
    total: usize,
    max_scars: usize,
) -> Option<usize> {
    let by_scars = cands
        .iter()
        .min_by_key(|&&(f, s, e, _)| (s, f, e))
        .map(|x| x.3);
    if !face_step {
        return by_scars;
    }
    for slack in [2, 1, 0] {
        let best = cands
            .iter()
            .filter(|&&(_, s, _, _)| s + 1 + slack <= max_scars)
            .min_by_key(|&&(f, s, e, _)| (f, s, e));
        if let Some(&(f, _, _, c)) = best {
            if slack == 0 || 4 * f <= 3 * total {
                return Some(c);
            }
        }
    }
    by_scars
}

/// The child on one side of the cut cycle, with the other side collapsed
/// into a new scar and degree-two cycle vertices spliced out.
#[allow(clippy::too_many_arguments)]
fn side(
    w: &Work,
    ht: &Embedding,
    m_real: usize,
    in_a: &[bool],
    want: bool,
    fscars: &[Vec<u32>],
    sid: u32,
    on_cycle: &[bool],
) -> Option<Work> {
    let keep_edge: Vec<bool> = (0..ht.num_edges())
        .map(|e| {
            e < m_real && (in_a[ht.face_of(2 * e)] == want || in_a[ht.face_of(2 * e + 1)] == want)
        })
        .collect();
    let mut keep_vertex = vec![false; ht.num_vertices()];
    for e in (0..ht.num_edges()).filter(|&e| keep_edge[e]) {
        let (a, b) = ht.endpoints(e);
        keep_vertex[a] = true;
        keep_vertex[b] = true;
    }
    let r = ht.restrict(&keep_vertex, Some(&keep_edge)).ok()?;
    let mut scars: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); r.emb.num_faces()];
    for f in 0..ht.num_faces() {
        let cf = r.face_class[f];
        if in_a[f] == want {
            scars[cf].extend(fscars[f].iter().copied());
        } else {
            // scars across the cycle are swallowed by the new one
            scars[cf].insert(sid);
        }
    }
    let child = Work {
        expand: r.edge_map.iter().map(|&e| w.expand[e].clone()).collect(),
        vmap: r.vertex_map.iter().map(|&v| w.vmap[v]).collect(),
        scars: scars.into_iter().map(|s| s.into_iter().collect()).collect(),
        h: r.emb,
    };
    let cand: Vec<bool> = r.vertex_map.iter().map(|&v| on_cycle[v]).collect();
    Some(splice(child, &cand))
}

/// Replaces chains through degree-two candidate vertices by compound edges.
fn splice(w: Work, cand: &[bool]) -> Work {
    let h = &w.h;
    let n = h.num_vertices();
    let mut sp: Vec<bool> = (0..n)
        .map(|v| {
            cand[v] && h.degree(v) == 2 && {
                let d = h.darts_at(v).next().unwrap();
                edge_of(d) != edge_of(h.sigma(d))
            }
        })
        .collect();
    if sp.iter().all(|&x| x) {
        sp[0] = false;
    }
    if !sp.iter().any(|&x| x) {
        return w;
    }
    let mut nid = vec![usize::MAX; n];
    let mut vmap = Vec::new();
    let mut vw = Vec::new();
    for v in (0..n).filter(|&v| !sp[v]) {
        nid[v] = vmap.len();
        vmap.push(w.vmap[v]);
        vw.push(h.vertex_weight(v));
    }
    let nd = h.num_darts();
    let mut new_dart = vec![usize::MAX; nd];
    let mut start = Vec::new();
    let mut cost = Vec::new();
    let mut expand = Vec::new();
    for d in 0..nd {
        if sp[h.tail(d)] || new_dart[d] != usize::MAX {
            continue;
        }
        let mut chain = vec![d];
        while sp[h.head(*chain.last().unwrap())] {
            let back = rev(*chain.last().unwrap());
            chain.push(h.sigma(back));
        }
        let k = cost.len();
        new_dart[d] = 2 * k;
        new_dart[rev(*chain.last().unwrap())] = 2 * k + 1;
        start.push(d);
        start.push(rev(*chain.last().unwrap()));
        cost.push(chain.iter().map(|&x| h.dart_cost(x)).sum::<i64>());
        expand.push(
            chain
                .iter()
                .flat_map(|&x| expand_dart(&w.expand, x))
                .collect(),
        );
    }
    let tail: Vec<usize> = start.iter().map(|&d| nid[h.tail(d)]).collect();
    let sigma: Vec<usize> = start.iter().map(|&d| new_dart[h.sigma(d)]).collect();
    let emb = Embedding::from_darts(vmap.len(), tail, sigma, cost, vw)
        .expect("splicing keeps the embedding valid");
    let old_face: Vec<usize> = emb.faces().iter().map(|f| h.face_of(start[f[0]])).collect();
    let emb = emb
        .with_face_weights(old_face.iter().map(|&f| h.face_weight(f)).collect())
        .expect("face count preserved");
    Work {
        scars: old_face.iter().map(|&f| w.scars[f].clone()).collect(),
        h: emb,
        expand,
        vmap,
    }
}

/// Minimum-quotient simple cycle of a small embedding, by enumeration.
/// Returns the cycle (if any cycle separates weight) and whether the
/// enumeration finished within `cap` cycles.
pub fn best_leaf_cycle(h: &Embedding, cap: usize) -> (Option<Vec<usize>>, bool) {
    let total = h.total_face_weight();
    let n = h.num_vertices();
    if h.num_darts() == 0 || total < 2 {
        return (None, true);
    }
    let tree: Tree = shortest_path_tree(h, 0);
    let pp = pp_dart_weights(h, &tree, h.outer());
    let mut best: Option<(i64, i64, Vec<usize>)> = None;
    let mut seen = 0usize;
    let mut consider = |darts: &[usize]| {
        let enc: i64 = darts.iter().map(|&d| pp.weight[d]).sum::<i64>().abs();
        let den = enc.min(total - enc);
        if den <= 0 {
            return;
        }
        let c: i64 = darts.iter().map(|&d| h.dart_cost(d)).sum();
        if best
            .as_ref()
            .is_none_or(|(bc, bd, _)| (c as i128) * (*bd as i128) < (*bc as i128) * (den as i128))
        {
            best = Some((c, den, darts.to_vec()));
        }
    };
    let mut on_path = vec![false; n];
    for s in 0..n {
        // self-loops at s
        for d in h.darts_at(s) {
            if h.head(d) == s && d % 2 == 0 {
                consider(&[d]);
                seen += 1;
            }
        }
        // cycles whose smallest vertex is s: iterative DFS over darts
        let mut path: Vec<usize> = Vec::new();
        let mut iters: Vec<Vec<usize>> = vec![h.darts_at(s).collect()];
        on_path[s] = true;
        while let Some(top) = iters.last_mut() {
            if seen > cap {
                return (best.map(|b| b.2), false);
            }
            let Some(d) = top.pop() else {
                iters.pop();
                if let Some(d) = path.pop() {
                    on_path[h.head(d)] = false;
                }
                continue;
            };
            let x = h.head(d);
            if x == s {
                // closing dart; each cycle once: first edge < last edge
                if !path.is_empty() && edge_of(path[0]) < edge_of(d) {
                    path.push(d);
                    consider(&path);
                    path.pop();
                    seen += 1;
                }
                continue;
            }
            if x < s || on_path[x] {
                continue;
            }
            on_path[x] = true;
            path.push(d);
            iters.push(h.darts_at(x).collect());
        }
        on_path[s] = false;
    }
    (best.map(|b| b.2), true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::gen;

    fn weighted_dual(k: usize) -> Embedding {
        // dual of a grid: face weights are the grid's vertex weights
        gen::unit_grid(k).dual()
    }

    #[test]
    fn grid_tree_invariants() {
        for k in [3, 6, 10] {
            let g = weighted_dual(k);
            let t = ClusterTree::build(&g, 0, ClusterOptions::default());
            let s = &t.stats;
            assert!(s.max_scars <= 6, "k={k}: {s:?}");
            assert!(s.max_leaf_faces <= 12);
            for c in &t.clusters {
                assert!(c.is_leaf() || c.children.len() == 2);
                if c.is_leaf() {
                    assert!(c.leaf_best.is_some() || c.real_faces == 0);
                }
            }
        }
    }

    #[test]
    fn leaf_cycle_matches_oracle() {
        use crate::oracle::{enumerate_simple_cycles, Budget};
        let g = gen::unit_grid(3).dual();
        let (best, done) = best_leaf_cycle(&g, 1_000_000);
        assert!(done);
        let best = best.unwrap();
        let total = g.total_face_weight();
        let q = |c: i64, e: i64| crate::frac::frac(c as i128, e.min(total - e) as i128);
        let cyc = crate::planar::Cycle::new(best);
        let got = q(cyc.cost(&g), cyc.sides(&g, g.outer()).unwrap().enclosed);
        let want = enumerate_simple_cycles(&g, &Budget::default())
            .unwrap()
            .iter()
            .filter(|c| c.enclosed > 0 && c.enclosed < total)
            .map(|c| q(c.cost, c.enclosed))
            .min()
            .unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn partial_cycles_cross_scar_paths() {
        use crate::oracle::{enumerate_simple_cycles, Budget};
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let opts = ClusterOptions {
            leaf_faces: 1,
            ..Default::default()
        };
        for _ in 0..150 {
            let n = rng.gen_range(5..9);
            let g = gen::random_triangulation(n, &mut rng).dual();
            let t = ClusterTree::build(&g, rng.gen_range(0..g.num_vertices()), opts);
            let cycles = enumerate_simple_cycles(&g, &Budget::default()).unwrap();
            for q in &t.clusters {
                let mut on_path = vec![false; g.num_vertices()];
                for &sid in &q.scars {
                    for i in 0..2 {
                        for v in t.scars[sid as usize].path_vertices(&g, i) {
                            on_path[v] = true;
                        }
                    }
                }
                for c in &cycles {
                    let inside = c
                        .cycle
                        .darts
                        .iter()
                        .filter(|&&d| q.edges.binary_search(&edge_of(d)).is_ok())
                        .count();
                    if inside > 0 && inside < c.cycle.len() {
                        assert!(
                            c.cycle.vertices(&g).iter().any(|&v| on_path[v]),
                            "cycle {:?} leaves cluster {:?} without meeting its scar paths",
                            c.cycle.darts,
                            q.vertices
                        );
                    }
                }
            }
        }
    }
}
