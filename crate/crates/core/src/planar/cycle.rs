use std::collections::{HashSet, VecDeque};

use super::embedding::{edge_of, rev, Embedding};
use super::tree::Tree;
use crate::error::{Error, Result};

/// A closed walk given by its darts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub darts: Vec<usize>,
}

/// Where a closed walk puts the faces of its embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sides {
    /// `inside[f]` is true for faces on the side without the infinite face.
    pub inside: Vec<bool>,
    pub enclosed: i64,
    pub outside: i64,
    /// Whether the enclosed side lies left of the walk's darts.
    pub ccw: bool,
}

impl Cycle {
    pub fn new(darts: Vec<usize>) -> Cycle {
        Cycle { darts }
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn cost(&self, emb: &Embedding) -> i64 {
        self.darts.iter().map(|&d| emb.dart_cost(d)).sum()
    }

    pub fn reversed(&self) -> Cycle {
        Cycle::new(self.darts.iter().rev().map(|&d| rev(d)).collect())
    }

    pub fn vertices(&self, emb: &Embedding) -> Vec<usize> {
        self.darts.iter().map(|&d| emb.tail(d)).collect()
    }

    pub fn is_closed(&self, emb: &Embedding) -> bool {
        let k = self.darts.len();
        k > 0 && (0..k).all(|i| emb.head(self.darts[i]) == emb.tail(self.darts[(i + 1) % k]))
    }

    /// No vertex and no edge repeated.
    pub fn is_simple(&self, emb: &Embedding) -> bool {
        let mut vs = HashSet::new();
        let mut es = HashSet::new();
        self.darts
            .iter()
            .all(|&d| vs.insert(emb.tail(d)) && es.insert(edge_of(d)))
    }

    /// A simple cycle, possibly preceded by a path from `root` that the
    /// walk traverses out and back. The walk must start at `root`.
    pub fn is_near_simple(&self, emb: &Embedding, root: usize) -> bool {
        let k = self.darts.len();
        if k == 0 || emb.tail(self.darts[0]) != root || !self.is_closed(emb) {
            return false;
        }
        let mut p = 0;
        while 2 * p + 2 <= k && self.darts[p] == rev(self.darts[k - 1 - p]) {
            p += 1;
        }
        if 2 * p >= k {
            return false;
        }
        let core = Cycle::new(self.darts[p..k - p].to_vec());
        if !core.is_simple(emb) {
            return false;
        }
        let core_vs: HashSet<usize> = core.vertices(emb).into_iter().collect();
        let mut seen = HashSet::new();
        for &d in &self.darts[..p] {
            let t = emb.tail(d);
            if core_vs.contains(&t) || !seen.insert(t) {
                return false;
            }
        }
        true
    }

    /// Splits the faces by this closed walk. Edges traversed equally often in
    /// both directions are transparent; every other edge must be traversed
    /// exactly once net, and the walk must separate consistently.
    pub fn sides(&self, emb: &Embedding, f_inf: usize) -> Result<Sides> {
        let mut net = vec![0i64; emb.num_edges()];
        for &d in &self.darts {
            net[edge_of(d)] += if d & 1 == 0 { 1 } else { -1 };
        }
        if net.iter().any(|x| x.abs() > 1) {
            return Err(Error::SelfCrossingCycle);
        }
        let nf = emb.num_faces();
        let mut reach = vec![false; nf];
        let mut q = VecDeque::new();
        reach[f_inf] = true;
        q.push_back(f_inf);
        while let Some(f) = q.pop_front() {
            for &d in emb.face(f) {
                if net[edge_of(d)] != 0 {
                    continue;
                }
                let g = emb.face_of(rev(d));
                if !reach[g] {
                    reach[g] = true;
                    q.push_back(g);
                }
            }
        }
        let mut left_inside = None;
        for (e, &x) in net.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let d = if x > 0 { 2 * e } else { 2 * e + 1 };
            let (l, r) = (emb.face_of(d), emb.face_of(rev(d)));
            if reach[l] == reach[r] {
                return Err(Error::SelfCrossingCycle);
            }
            let li = !reach[l];
            if *left_inside.get_or_insert(li) != li {
                return Err(Error::SelfCrossingCycle);
            }
        }
        let total = emb.total_face_weight();
        let outside: i64 = (0..nf)
            .filter(|&f| reach[f])
            .map(|f| emb.face_weight(f))
            .sum();
        Ok(Sides {
            inside: reach.iter().map(|r| !r).collect(),
            enclosed: total - outside,
            outside,
            ccw: left_inside.unwrap_or(true),
        })
    }

    pub fn enclosed_weight(&self, emb: &Embedding, f_inf: usize) -> Result<i64> {
        Ok(self.sides(emb, f_inf)?.enclosed)
    }
}

/// Signed enclosed-weight labels for the darts of `emb` relative to a
/// spanning tree and an infinite face: tree darts weigh zero, and a nontree
/// dart weighs the enclosed weight of its fundamental cycle, positive when
/// that cycle runs counterclockwise through it.
#[derive(Debug, Clone)]
pub struct TransferWeights {
    pub weight: Vec<i64>,
    pub f_inf: usize,
    /// Dual tree over faces: the edge to the parent face.
    pub cotree_parent: Vec<Option<usize>>,
    /// Total face weight of each face's cotree subtree.
    pub subtree: Vec<i64>,
}

/// Builds the cotree of the faces (nontree edges of `tree`) rooted at `root`,
/// returning parent edges, BFS order and subtree weights.
fn cotree(emb: &Embedding, tree: &Tree, root: usize) -> (Vec<Option<usize>>, Vec<usize>, Vec<i64>) {
    let nf = emb.num_faces();
    let mut parent = vec![None; nf];
    let mut seen = vec![false; nf];
    let mut order = vec![root];
    seen[root] = true;
    let mut i = 0;
    while i < order.len() {
        let f = order[i];
        i += 1;
        for &d in emb.face(f) {
            let e = edge_of(d);
            if tree.contains_edge(e) {
                continue;
            }
            let g = emb.face_of(rev(d));
            if !seen[g] {
                seen[g] = true;
                parent[g] = Some(e);
                order.push(g);
            }
        }
    }
    let mut sub: Vec<i64> = emb.face_weights().to_vec();
    for &f in order.iter().rev() {
        if let Some(e) = parent[f] {
            let (a, b) = (emb.face_of(2 * e), emb.face_of(2 * e + 1));
            let p = if a == f { b } else { a };
            sub[p] += sub[f];
        }
    }
    (parent, order, sub)
}

pub fn pp_dart_weights(emb: &Embedding, tree: &Tree, f_inf: usize) -> TransferWeights {
    let (parent, _, sub) = cotree(emb, tree, f_inf);
    let mut weight = vec![0i64; emb.num_darts()];
    for (c, p) in parent.iter().enumerate() {
        if let Some(e) = *p {
            let d = if emb.face_of(2 * e) == c {
                2 * e
            } else {
                2 * e + 1
            };
            weight[d] = sub[c];
            weight[rev(d)] = -sub[c];
        }
    }
    TransferWeights {
        weight,
        f_inf,
        cotree_parent: parent,
        subtree: sub,
    }
}

/// The face deepest in the cotree (rooted at `root`) whose subtree weight
/// exceeds half the total; rooted there, every fundamental cycle encloses at
/// most half the weight. Ties go to the smallest face id.
pub fn balanced_infinite_face(emb: &Embedding, tree: &Tree, root: usize) -> usize {
    let (parent, order, sub) = cotree(emb, tree, root);
    let total = emb.total_face_weight();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); emb.num_faces()];
    for &f in &order {
        if let Some(e) = parent[f] {
            let (a, b) = (emb.face_of(2 * e), emb.face_of(2 * e + 1));
            children[if a == f { b } else { a }].push(f);
        }
    }
    let mut f = root;
    loop {
        let next = children[f]
            .iter()
            .copied()
            .filter(|&c| 2 * sub[c] > total)
            .min();
        match next {
            Some(c) => f = c,
            None => return f,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::tree::shortest_path_tree;

    // Square 0-1-2-3 with a chord 0-2, laid out counterclockwise.
    fn square_with_chord() -> Embedding {
        let edges = [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1), (0, 2, 1)];
        let rot = vec![vec![0, 4, 3], vec![1, 0], vec![2, 4, 1], vec![3, 2]];
        Embedding::from_rotation(4, &edges, &rot, &[1; 4]).unwrap()
    }

    #[test]
    fn single_face_cycle_encloses_that_face() {
        let g = square_with_chord();
        let g = g.clone().with_face_weights(vec![5, 7, 11]).unwrap();
        for f in 0..3 {
            if f == g.outer() {
                continue;
            }
            let c = Cycle::new(g.face(f).to_vec());
            let s = c.sides(&g, g.outer()).unwrap();
            assert_eq!(s.enclosed, g.face_weight(f));
            assert!(s.ccw);
            assert_eq!(s.enclosed + s.outside, 23);
            assert!(!c.reversed().sides(&g, g.outer()).unwrap().ccw);
        }
    }

    #[test]
    fn doubled_edge_is_transparent() {
        let g = square_with_chord();
        let c = Cycle::new(vec![8, 9]);
        assert_eq!(c.enclosed_weight(&g, 0).unwrap(), 0);
        assert!(!c.is_near_simple(&g, 0));
    }

    #[test]
    fn pp_weights_sum_to_enclosed() {
        let g = square_with_chord()
            .with_face_weights(vec![2, 3, 4])
            .unwrap();
        let t = shortest_path_tree(&g, 0);
        for f_inf in 0..3 {
            let pp = pp_dart_weights(&g, &t, f_inf);
            for e in 0..g.num_edges() {
                if t.contains_edge(e) {
                    assert_eq!(pp.weight[2 * e], 0);
                }
                assert_eq!(pp.weight[2 * e], -pp.weight[2 * e + 1]);
            }
            for f in 0..3 {
                let c = Cycle::new(g.face(f).to_vec());
                let s = c.sides(&g, f_inf).unwrap();
                let sum: i64 = c.darts.iter().map(|&d| pp.weight[d]).sum();
                assert_eq!(sum, if s.ccw { s.enclosed } else { -s.enclosed });
            }
        }
    }

    #[test]
    fn near_simple_detection() {
        // triangle 0-1-2 plus pendant 3 attached at 0
        let edges = [(0, 1, 1), (1, 2, 1), (2, 0, 1), (3, 0, 1)];
        let rot = vec![vec![0, 2, 3], vec![1, 0], vec![2, 1], vec![3]];
        let g = Embedding::from_rotation(4, &edges, &rot, &[1; 4]).unwrap();
        let c = Cycle::new(vec![6, 0, 2, 4, 7]);
        assert!(c.is_closed(&g));
        assert!(c.is_near_simple(&g, 3));
        assert!(!c.is_simple(&g));
        let tri = Cycle::new(vec![0, 2, 4]);
        assert!(tri.is_simple(&g));
        assert!(tri.is_near_simple(&g, 0));
    }
}
