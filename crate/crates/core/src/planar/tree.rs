use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use super::cycle::Cycle;
use super::embedding::{edge_of, rev, Embedding};
use crate::error::{Error, Result};

/// Distance label of a vertex the search never reached.
pub const UNREACHED: i64 = i64::MAX;

/// A rooted spanning tree (of the reachable part) given by parent darts.
/// `parent[v]` is the dart entering `v` from its parent.
#[derive(Debug, Clone)]
pub struct Tree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub dist: Vec<i64>,
    pub depth: Vec<usize>,
    /// Reached vertices in nondecreasing distance order (root first).
    pub order: Vec<usize>,
    in_tree: Vec<bool>,
}

impl Tree {
    pub fn reached(&self, v: usize) -> bool {
        self.dist[v] != UNREACHED
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.in_tree[e]
    }

    pub fn parent_vertex(&self, emb: &Embedding, v: usize) -> Option<usize> {
        self.parent[v].map(|d| emb.tail(d))
    }

    /// Darts from the root down to `v`.
    pub fn path_from_root(&self, emb: &Embedding, v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.depth[v]);
        let mut x = v;
        while let Some(d) = self.parent[x] {
            out.push(d);
            x = emb.tail(d);
        }
        out.reverse();
        out
    }

    /// Vertices from `v` up to the root, inclusive.
    pub fn ancestors(&self, emb: &Embedding, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut x = v;
        while let Some(d) = self.parent[x] {
            x = emb.tail(d);
            out.push(x);
        }
        out
    }

    pub fn lca(&self, emb: &Embedding, mut a: usize, mut b: usize) -> usize {
        while self.depth[a] > self.depth[b] {
            a = emb.tail(self.parent[a].unwrap());
        }
        while self.depth[b] > self.depth[a] {
            b = emb.tail(self.parent[b].unwrap());
        }
        while a != b {
            a = emb.tail(self.parent[a].unwrap());
            b = emb.tail(self.parent[b].unwrap());
        }
        a
    }

    /// Darts of the tree path from `a` to `b`.
    pub fn path_between(&self, emb: &Embedding, a: usize, b: usize) -> Vec<usize> {
        let l = self.lca(emb, a, b);
        let mut out = Vec::new();
        let mut x = a;
        while x != l {
            let d = self.parent[x].unwrap();
            out.push(rev(d));
            x = emb.tail(d);
        }
        let mut down = Vec::new();
        let mut y = b;
        while y != l {
            let d = self.parent[y].unwrap();
            down.push(d);
            y = emb.tail(d);
        }
        down.reverse();
        out.extend(down);
        out
    }

    /// The cycle formed by a nontree dart `d = (u, v)` and the tree path
    /// from `v` back to `u`.
    pub fn fundamental_cycle(&self, emb: &Embedding, d: usize) -> Result<Cycle> {
        if self.in_tree[edge_of(d)] {
            return Err(Error::DartInTree(d));
        }
        let (u, v) = (emb.tail(d), emb.head(d));
        let mut darts = vec![d];
        darts.extend(self.path_between(emb, v, u));
        Ok(Cycle::new(darts))
    }
}

fn finish(
    emb: &Embedding,
    root: usize,
    parent: Vec<Option<usize>>,
    dist: Vec<i64>,
    order: Vec<usize>,
) -> Tree {
    let mut in_tree = vec![false; emb.num_edges()];
    let mut depth = vec![0; emb.num_vertices()];
    for &v in &order {
        if let Some(d) = parent[v] {
            in_tree[edge_of(d)] = true;
            depth[v] = depth[emb.tail(d)] + 1;
        }
    }
    Tree {
        root,
        parent,
        dist,
        depth,
        order,
        in_tree,
    }
}

/// Dijkstra from `root` using the embedding's edge costs.
pub fn shortest_path_tree(emb: &Embedding, root: usize) -> Tree {
    shortest_path_tree_by(emb, root, |d| Some(emb.dart_cost(d)))
}

/// Dijkstra with a per-dart length; `None` marks a dart as unusable.
/// Ties are broken by vertex id so the tree is deterministic.
pub fn shortest_path_tree_by(
    emb: &Embedding,
    root: usize,
    len: impl Fn(usize) -> Option<i64>,
) -> Tree {
    let n = emb.num_vertices();
    let mut dist = vec![UNREACHED; n];
    let mut parent = vec![None; n];
    let mut done = vec![false; n];
    let mut order = Vec::new();
    let mut heap = BinaryHeap::new();
    dist[root] = 0;
    heap.push(Reverse((0i64, root)));
    while let Some(Reverse((dv, v))) = heap.pop() {
        if done[v] || dv != dist[v] {
            continue;
        }
        done[v] = true;
        order.push(v);
        for d in emb.darts_at(v) {
            let Some(c) = len(d) else { continue };
            let h = emb.head(d);
            let nd = dv.saturating_add(c);
            if nd < dist[h] {
                dist[h] = nd;
                parent[h] = Some(d);
                heap.push(Reverse((nd, h)));
            }
        }
    }
    finish(emb, root, parent, dist, order)
}

/// Breadth-first tree (hop distances).
pub fn bfs_tree(emb: &Embedding, root: usize) -> Tree {
    let n = emb.num_vertices();
    let mut dist = vec![UNREACHED; n];
    let mut parent = vec![None; n];
    let mut order = Vec::new();
    let mut q = VecDeque::new();
    dist[root] = 0;
    q.push_back(root);
    while let Some(v) = q.pop_front() {
        order.push(v);
        for d in emb.darts_at(v) {
            let h = emb.head(d);
            if dist[h] == UNREACHED {
                dist[h] = dist[v] + 1;
                parent[h] = Some(d);
                q.push_back(h);
            }
        }
    }
    finish(emb, root, parent, dist, order)
}
