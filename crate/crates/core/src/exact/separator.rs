//! Balanced vertex separators and the separator-accelerated exact solver.

use super::layered::Search;
use crate::cut::{CutResult, Objective};
use crate::error::{Error, Result};
use crate::planar::{bfs_tree, rev, Embedding, Tree, INF_COST, UNREACHED};

/// Graphs with at most this many vertices are searched from every vertex.
pub const RECURSION_CUTOFF: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separator {
    pub sep: Vec<usize>,
    pub part1: Vec<usize>,
    pub part2: Vec<usize>,
    /// The whole vertex set had to be used.
    pub degenerate: bool,
}

impl Separator {
    pub fn max_part(&self) -> usize {
        self.part1.len().max(self.part2.len())
    }
}

/// Adds chords fanning out from one corner of every face with more than
/// three sides. New edges get cost [`INF_COST`] and ids after the originals.
pub fn triangulate(h: &Embedding) -> Embedding {
    triangulate_except(h, &vec![false; h.num_faces()])
}

/// Like [`triangulate`], leaving faces with `skip[f]` untouched.
pub fn triangulate_except(h: &Embedding, skip: &[bool]) -> Embedding {
    let nd = h.num_darts();
    let mut tail: Vec<usize> = (0..nd).map(|d| h.tail(d)).collect();
    let mut sigma: Vec<usize> = (0..nd).map(|d| h.sigma(d)).collect();
    let mut cost: Vec<i64> = h.costs().to_vec();
    for f in 0..h.num_faces() {
        let face = h.face(f);
        if face.len() <= 3 || skip[f] {
            continue;
        }
        // face darts d0..d(k-1); cut off triangles (d0', d_i, chord) one at a time
        let k = face.len();
        let mut first = face[0];
        for i in 1..k - 2 {
            let di = face[i];
            let last = face[k - 1];
            let x = tail.len();
            let v0 = tail[first];
            let vi1 = tail[rev(di)];
            // new edge from v(i+1) back to v0, dart x: v0 -> v(i+1), x+1 reverse
            tail.push(v0);
            tail.push(vi1);
            sigma.push(0);
            sigma.push(0);
            cost.push(INF_COST);
            // at v0: rev(last) -> x -> first
            sigma[rev(last)] = x;
            sigma[x] = first;
            // at v(i+1): rev(di) -> x+1 -> d(i+1)
            sigma[rev(di)] = x + 1;
            sigma[x + 1] = face[i + 1];
            first = x;
        }
    }
    let vw = h.vertex_weights().to_vec();
    Embedding::from_darts(h.num_vertices(), tail, sigma, cost, vw)
        .expect("triangulation keeps connectivity")
}

fn components_without(h: &Embedding, removed: &[bool]) -> Vec<Vec<usize>> {
    let n = h.num_vertices();
    let mut seen = removed.to_vec();
    let mut comps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for d in h.darts_at(v) {
                let x = h.head(d);
                if !seen[x] {
                    seen[x] = true;
                    comp.push(x);
                }
            }
        }
        comps.push(comp);
    }
    comps
}

fn pack(h: &Embedding, sep: Vec<usize>) -> Separator {
    let mut removed = vec![false; h.num_vertices()];
    for &v in &sep {
        removed[v] = true;
    }
    let mut comps = components_without(h, &removed);
    comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    let (mut p1, mut p2) = (Vec::new(), Vec::new());
    for c in comps {
        if p1.len() <= p2.len() {
            p1.extend(c);
        } else {
            p2.extend(c);
        }
    }
    p1.sort_unstable();
    p2.sort_unstable();
    let mut sep = sep;
    sep.sort_unstable();
    Separator {
        sep,
        part1: p1,
        part2: p2,
        degenerate: false,
    }
}

fn farthest(t: &Tree) -> usize {
    *t.order.last().unwrap()
}

/// A vertex separator leaving parts of at most two thirds of the vertices
/// each, chosen as the smallest among BFS levels and fundamental cycles of a
/// BFS tree in a triangulation. Falls back to the whole vertex set.
pub fn balanced_separator(h: &Embedding) -> Separator {
    let n = h.num_vertices();
    if n < 3 {
        return Separator {
            sep: (0..n).collect(),
            part1: vec![],
            part2: vec![],
            degenerate: true,
        };
    }
    let a = farthest(&bfs_tree(h, 0));
    let ta = bfs_tree(h, a);
    let b = farthest(&ta);
    let mid = {
        let path = ta.ancestors(h, b);
        path[path.len() / 2]
    };
    let t = bfs_tree(h, mid);
    let ok = |s: &Separator| 3 * s.max_part() <= 2 * n && !s.part2.is_empty();
    let mut best: Option<Separator> = None;
    let mut consider = |s: Separator| {
        if ok(&s)
            && best
                .as_ref()
                .is_none_or(|b| (s.sep.len(), s.max_part()) < (b.sep.len(), b.max_part()))
        {
            best = Some(s);
        }
    };
    let depth = t
        .dist
        .iter()
        .filter(|&&d| d != UNREACHED)
        .max()
        .copied()
        .unwrap_or(0) as usize;
    let mut levels = vec![Vec::new(); depth + 1];
    for v in 0..n {
        levels[t.dist[v] as usize].push(v);
    }
    for lv in levels {
        consider(pack(h, lv));
    }
    let tri = triangulate(h);
    let tt = bfs_tree(&tri, mid);
    let m = tri.num_edges();
    let step = (m / 2048).max(1);
    for e in (0..m).step_by(step) {
        if tt.contains_edge(e) {
            continue;
        }
        let (x, y) = tri.endpoints(e);
        let mut sep: Vec<usize> = tt
            .path_between(&tri, x, y)
            .iter()
            .map(|&d| tri.tail(d))
            .collect();
        sep.push(y);
        sep.sort_unstable();
        sep.dedup();
        consider(pack(h, sep));
    }
    best.unwrap_or_else(|| Separator {
        sep: (0..n).collect(),
        part1: vec![],
        part2: vec![],
        degenerate: true,
    })
}

/// Exact optimum: search from the separator vertices, then recurse into
/// the components that remain.
pub fn exact_mqc_separator(g: &Embedding, objective: Objective) -> Result<CutResult> {
    let dual = g.dual();
    let mut s = Search::new(g, objective);
    s.seed_singletons();
    let map: Vec<usize> = (0..dual.num_darts()).collect();
    recurse(&mut s, &dual, &map);
    s.best.ok_or(Error::NoCut)
}

fn recurse(s: &mut Search, h: &Embedding, map: &[usize]) {
    if h.num_darts() == 0 {
        return;
    }
    let n = h.num_vertices();
    if n <= RECURSION_CUTOFF {
        let all: Vec<usize> = (0..n).collect();
        s.run(h, map, &all);
        return;
    }
    let sep = balanced_separator(h);
    s.run(h, map, &sep.sep);
    if sep.degenerate {
        return;
    }
    let mut removed = vec![false; n];
    for &v in &sep.sep {
        removed[v] = true;
    }
    for comp in components_without(h, &removed) {
        let mut keep = vec![false; n];
        for &v in &comp {
            keep[v] = true;
        }
        let r = h.restrict(&keep, None).expect("component is connected");
        let sub_map: Vec<usize> = (0..r.emb.num_darts())
            .map(|d| map[r.parent_dart(d)])
            .collect();
        recurse(s, &r.emb, &sub_map);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::gen;

    #[test]
    fn path_separator_is_middle_vertex() {
        let g = gen::path(&[1; 6], &[1; 7]);
        let s = balanced_separator(&g);
        assert_eq!(s.sep, vec![3]);
        assert_eq!(s.max_part(), 3);
    }

    #[test]
    fn grid_separator_is_small_and_balanced() {
        for k in [4, 6, 10, 15] {
            let g = gen::unit_grid(k);
            let s = balanced_separator(&g);
            assert!(!s.degenerate);
            assert!(s.sep.len() <= 3 * k, "k={k}: |S|={}", s.sep.len());
            assert!(3 * s.max_part() <= 2 * k * k);
            assert!(!s.part1.is_empty() && !s.part2.is_empty());
        }
    }

    #[test]
    fn triangulation_has_triangular_faces() {
        let g = gen::unit_grid(4).dual();
        let t = triangulate(&g);
        t.check_planar().unwrap();
        assert!(t.faces().iter().all(|f| f.len() <= 3));
    }
}
