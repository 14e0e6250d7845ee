//! Combinatorial planar embeddings stored as rotation systems over darts.
//!
//! Edge `e` owns darts `2e` (from its first endpoint to its second) and
//! `2e + 1` (the reverse). `sigma[d]` is the next dart counterclockwise around
//! `tail(d)`; faces are the orbits of `phi(d) = sigma(rev(d))`. The face
//! reached by tracing from `d` is called the face *left* of `d`; a cycle is
//! counterclockwise when the side it encloses lies left of its darts.

use crate::error::{Error, Result};

/// Cost used for structural edges that no real cut may use.
pub const INF_COST: i64 = i64::MAX / 8;

#[inline]
pub fn rev(d: usize) -> usize {
    d ^ 1
}

#[inline]
pub fn edge_of(d: usize) -> usize {
    d >> 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    n: usize,
    tail: Vec<usize>,
    sigma: Vec<usize>,
    cost: Vec<i64>,
    first: Vec<Option<usize>>,
    vertex_weight: Vec<i64>,
    face_of: Vec<usize>,
    faces: Vec<Vec<usize>>,
    face_weight: Vec<i64>,
    outer: usize,
}

impl Embedding {
    /// Builds an embedding from an edge list and per-vertex cyclic orders of
    /// incident edge ids. A self-loop appears twice in its vertex's list; the
    /// first occurrence is taken as the dart leaving along the loop.
    pub fn from_rotation(
        n: usize,
        edges: &[(usize, usize, i64)],
        rotation: &[Vec<usize>],
        vertex_weight: &[i64],
    ) -> Result<Embedding> {
        if rotation.len() != n || vertex_weight.len() != n {
            return Err(Error::InvalidRotation(format!(
                "expected {n} rotation lists and weights"
            )));
        }
        for (e, &(u, v, c)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidRotation(format!(
                    "edge {e} has an endpoint out of range"
                )));
            }
            if c < 1 {
                return Err(Error::NonpositiveCost { edge: e, cost: c });
            }
        }
        for (v, &w) in vertex_weight.iter().enumerate() {
            if w < 0 {
                return Err(Error::NegativeWeight {
                    vertex: v,
                    weight: w,
                });
            }
        }
        let mut darts_at: Vec<Vec<usize>> = Vec::with_capacity(n);
        let mut seen = vec![false; 2 * edges.len()];
        for (v, list) in rotation.iter().enumerate() {
            let mut out = Vec::with_capacity(list.len());
            for &e in list {
                let Some(&(a, b, _)) = edges.get(e) else {
                    return Err(Error::InvalidRotation(format!(
                        "vertex {v} lists unknown edge {e}"
                    )));
                };
                let d = if a == v && b == v {
                    if seen[2 * e] {
                        2 * e + 1
                    } else {
                        2 * e
                    }
                } else if a == v {
                    2 * e
                } else if b == v {
                    2 * e + 1
                } else {
                    return Err(Error::InvalidRotation(format!(
                        "edge {e} listed at vertex {v} but not incident to it"
                    )));
                };
                if seen[d] {
                    return Err(Error::InvalidRotation(format!(
                        "edge {e} listed twice at vertex {v}"
                    )));
                }
                seen[d] = true;
                out.push(d);
            }
            darts_at.push(out);
        }
        if let Some(d) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidRotation(format!(
                "edge {} missing from the rotation of one endpoint",
                edge_of(d)
            )));
        }
        let mut tail = vec![0; 2 * edges.len()];
        for (e, &(u, v, _)) in edges.iter().enumerate() {
            tail[2 * e] = u;
            tail[2 * e + 1] = v;
        }
        let mut sigma = vec![0; 2 * edges.len()];
        for list in &darts_at {
            for (i, &d) in list.iter().enumerate() {
                sigma[d] = list[(i + 1) % list.len()];
            }
        }
        let cost = edges.iter().map(|e| e.2).collect();
        let emb = Embedding::from_darts(n, tail, sigma, cost, vertex_weight.to_vec())?;
        emb.check_planar()?;
        Ok(emb)
    }

    /// Low-level constructor: faces are traced and the connectivity checked,
    /// but planarity is left to the caller (see [`Embedding::check_planar`]).
    pub fn from_darts(
        n: usize,
        tail: Vec<usize>,
        sigma: Vec<usize>,
        cost: Vec<i64>,
        vertex_weight: Vec<i64>,
    ) -> Result<Embedding> {
        debug_assert_eq!(tail.len(), sigma.len());
        debug_assert_eq!(tail.len(), 2 * cost.len());
        let mut first = vec![None; n];
        for d in 0..tail.len() {
            let t = tail[d];
            if first[t].is_none_or(|f| d < f) {
                first[t] = Some(d);
            }
        }
        let mut emb = Embedding {
            n,
            tail,
            sigma,
            cost,
            first,
            vertex_weight,
            face_of: Vec::new(),
            faces: Vec::new(),
            face_weight: Vec::new(),
            outer: 0,
        };
        emb.trace_faces();
        emb.check_connected()?;
        Ok(emb)
    }

    fn trace_faces(&mut self) {
        let nd = self.tail.len();
        let mut face_of = vec![usize::MAX; nd];
        let mut faces = Vec::new();
        for start in 0..nd {
            if face_of[start] != usize::MAX {
                continue;
            }
            let f = faces.len();
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = f;
                walk.push(d);
                d = self.sigma[rev(d)];
                if d == start {
                    break;
                }
            }
            faces.push(walk);
        }
        if faces.is_empty() {
            // a lone vertex bounds a single empty face
            faces.push(Vec::new());
        }
        let mut outer = 0;
        for (f, w) in faces.iter().enumerate() {
            if w.len() > faces[outer].len() {
                outer = f;
            }
        }
        self.face_weight = vec![0; faces.len()];
        self.face_of = face_of;
        self.faces = faces;
        self.outer = outer;
    }

    fn check_connected(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::DisconnectedGraph);
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for d in self.darts_at(v) {
                let h = self.head(d);
                if !seen[h] {
                    seen[h] = true;
                    count += 1;
                    stack.push(h);
                }
            }
        }
        if count != self.n {
            return Err(Error::DisconnectedGraph);
        }
        Ok(())
    }

    /// Euler's formula for a connected embedding on the sphere.
    pub fn check_planar(&self) -> Result<()> {
        let euler = self.n as i64 - self.num_edges() as i64 + self.num_faces() as i64;
        if euler != 2 {
            return Err(Error::NonPlanarEmbedding { euler });
        }
        Ok(())
    }

    pub fn with_face_weights(mut self, w: Vec<i64>) -> Result<Embedding> {
        if w.len() != self.faces.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} face weights, got {}",
                self.faces.len(),
                w.len()
            )));
        }
        if let Some(f) = w.iter().position(|&x| x < 0) {
            return Err(Error::NegativeWeight {
                vertex: f,
                weight: w[f],
            });
        }
        self.face_weight = w;
        Ok(self)
    }

    pub fn with_outer(mut self, f: usize) -> Result<Embedding> {
        if f >= self.faces.len() {
            return Err(Error::InvalidParameter(format!(
                "outer face {f} out of range"
            )));
        }
        self.outer = f;
        Ok(self)
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }
    pub fn num_edges(&self) -> usize {
        self.cost.len()
    }
    pub fn num_darts(&self) -> usize {
        self.tail.len()
    }
    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }
    #[inline]
    pub fn tail(&self, d: usize) -> usize {
        self.tail[d]
    }
    #[inline]
    pub fn head(&self, d: usize) -> usize {
        self.tail[rev(d)]
    }
    #[inline]
    pub fn sigma(&self, d: usize) -> usize {
        self.sigma[d]
    }
    #[inline]
    pub fn phi(&self, d: usize) -> usize {
        self.sigma[rev(d)]
    }
    #[inline]
    pub fn cost(&self, e: usize) -> i64 {
        self.cost[e]
    }
    #[inline]
    pub fn dart_cost(&self, d: usize) -> i64 {
        self.cost[edge_of(d)]
    }
    pub fn costs(&self) -> &[i64] {
        &self.cost
    }
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        (self.tail[2 * e], self.tail[2 * e + 1])
    }
    #[inline]
    pub fn face_of(&self, d: usize) -> usize {
        self.face_of[d]
    }
    pub fn face(&self, f: usize) -> &[usize] {
        &self.faces[f]
    }
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }
    pub fn vertex_weight(&self, v: usize) -> i64 {
        self.vertex_weight[v]
    }
    pub fn vertex_weights(&self) -> &[i64] {
        &self.vertex_weight
    }
    pub fn face_weight(&self, f: usize) -> i64 {
        self.face_weight[f]
    }
    pub fn face_weights(&self) -> &[i64] {
        &self.face_weight
    }
    pub fn outer(&self) -> usize {
        self.outer
    }
    pub fn total_vertex_weight(&self) -> i64 {
        self.vertex_weight.iter().sum()
    }
    pub fn total_face_weight(&self) -> i64 {
        self.face_weight.iter().sum()
    }
    pub fn total_cost(&self) -> i64 {
        self.cost.iter().fold(0i64, |a, &c| a.saturating_add(c))
    }
    pub fn degree(&self, v: usize) -> usize {
        self.darts_at(v).count()
    }

    /// Darts leaving `v` in counterclockwise order.
    pub fn darts_at(&self, v: usize) -> DartsAt<'_> {
        DartsAt {
            emb: self,
            start: self.first[v],
            cur: self.first[v],
        }
    }

    /// Edge ids around `v` in rotation order (self-loops appear twice).
    pub fn rotation_edges(&self, v: usize) -> Vec<usize> {
        self.darts_at(v).map(edge_of).collect()
    }

    /// The dual: one vertex per face (weighted by the face weight), one edge
    /// per edge, and one face per vertex (weighted by the vertex weight).
    /// Dart ids are shared: dual dart `d` leaves the face left of `d`.
    pub fn dual(&self) -> Embedding {
        let tail: Vec<usize> = (0..self.num_darts()).map(|d| self.face_of[d]).collect();
        let sigma: Vec<usize> = (0..self.num_darts()).map(|d| self.phi(d)).collect();
        let mut dual = Embedding::from_darts(
            self.faces.len(),
            tail,
            sigma,
            self.cost.clone(),
            self.face_weight.clone(),
        )
        .expect("dual of a connected embedding is connected");
        let mut fw = vec![0; dual.faces.len()];
        if self.num_darts() == 0 {
            fw[0] = self.vertex_weight[0];
        } else {
            for (f, darts) in dual.faces.iter().enumerate() {
                fw[f] = self.vertex_weight[self.tail[darts[0]]];
            }
        }
        dual.face_weight = fw;
        // the dual's outer face is the one corresponding to a primal vertex on the outer face
        if let Some(&d) = self.faces[self.outer].first() {
            dual.outer = dual.face_of[d];
        }
        dual
    }

    /// The dual face that corresponds to primal vertex `v`, when this
    /// embedding was produced by [`Embedding::dual`].
    pub fn dual_face_to_primal_vertex(&self, primal: &Embedding) -> Vec<usize> {
        if self.num_darts() == 0 {
            return vec![0];
        }
        self.faces.iter().map(|f| primal.tail(f[0])).collect()
    }

    /// Induced sub-embedding on the kept vertices, further dropping the
    /// edges with `keep_edge[e] == false`. Faces that merge because of the
    /// deletions receive the sum of the merged weights, so the total face
    /// weight is preserved. The kept subgraph must be connected.
    pub fn restrict(
        &self,
        keep_vertex: &[bool],
        keep_edge: Option<&[bool]>,
    ) -> Result<Restriction> {
        let mut new_id = vec![usize::MAX; self.n];
        let mut vertex_map = Vec::new();
        for v in 0..self.n {
            if keep_vertex[v] {
                new_id[v] = vertex_map.len();
                vertex_map.push(v);
            }
        }
        if vertex_map.is_empty() {
            return Err(Error::DisconnectedGraph);
        }
        let mut new_edge = vec![usize::MAX; self.num_edges()];
        let mut edge_map = Vec::new();
        for e in 0..self.num_edges() {
            let (a, b) = self.endpoints(e);
            let kept = keep_vertex[a] && keep_vertex[b] && keep_edge.is_none_or(|k| k[e]);
            if kept {
                new_edge[e] = edge_map.len();
                edge_map.push(e);
            }
        }
        let nd = 2 * edge_map.len();
        let mut tail = vec![0; nd];
        let mut sigma = vec![0; nd];
        for (ne, &e) in edge_map.iter().enumerate() {
            for side in 0..2 {
                let d = 2 * e + side;
                let nd_ = 2 * ne + side;
                tail[nd_] = new_id[self.tail[d]];
                let mut s = self.sigma[d];
                while new_edge[edge_of(s)] == usize::MAX {
                    s = self.sigma[s];
                }
                sigma[nd_] = 2 * new_edge[edge_of(s)] + (s & 1);
            }
        }
        let cost = edge_map.iter().map(|&e| self.cost[e]).collect();
        let vw = vertex_map.iter().map(|&v| self.vertex_weight[v]).collect();
        let mut emb = Embedding::from_darts(vertex_map.len(), tail, sigma, cost, vw)?;

        let mut dsu = Dsu::new(self.faces.len());
        for e in 0..self.num_edges() {
            if new_edge[e] == usize::MAX {
                dsu.union(self.face_of[2 * e], self.face_of[2 * e + 1]);
            }
        }
        let mut class_weight = vec![0i64; self.faces.len()];
        for f in 0..self.faces.len() {
            class_weight[dsu.find(f)] += self.face_weight[f];
        }
        let mut fw = vec![0; emb.faces.len()];
        let mut face_map = vec![usize::MAX; emb.faces.len()];
        if nd == 0 {
            fw[0] = self.face_weight.iter().sum();
            face_map[0] = dsu.find(self.outer);
        } else {
            for (f, darts) in emb.faces.iter().enumerate() {
                let old = 2 * edge_map[edge_of(darts[0])] + (darts[0] & 1);
                let root = dsu.find(self.face_of[old]);
                fw[f] = class_weight[root];
                face_map[f] = self.face_of[old];
            }
        }
        emb.face_weight = fw;
        let mut root_face = vec![usize::MAX; self.faces.len()];
        for (f, &of) in face_map.iter().enumerate() {
            if of != usize::MAX {
                root_face[dsu.find(of)] = f;
            }
        }
        let face_class = (0..self.faces.len())
            .map(|f| root_face[dsu.find(f)])
            .collect();
        let outer_root = dsu.find(self.outer);
        if let Some(f) = face_map
            .iter()
            .position(|&of| of != usize::MAX && dsu.find(of) == outer_root)
        {
            emb.outer = f;
        }
        Ok(Restriction {
            emb,
            vertex_map,
            edge_map,
            face_map,
            face_class,
        })
    }
}

pub struct DartsAt<'a> {
    emb: &'a Embedding,
    start: Option<usize>,
    cur: Option<usize>,
}

impl Iterator for DartsAt<'_> {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        let d = self.cur?;
        let nx = self.emb.sigma[d];
        self.cur = if Some(nx) == self.start {
            None
        } else {
            Some(nx)
        };
        Some(d)
    }
}

/// A sub-embedding together with the maps back to its parent.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub emb: Embedding,
    /// new vertex -> parent vertex
    pub vertex_map: Vec<usize>,
    /// new edge -> parent edge
    pub edge_map: Vec<usize>,
    /// new face -> some parent face merged into it
    pub face_map: Vec<usize>,
    /// Old face -> the new face it was merged into.
    pub face_class: Vec<usize>,
}

impl Restriction {
    pub fn parent_dart(&self, d: usize) -> usize {
        2 * self.edge_map[edge_of(d)] + (d & 1)
    }
}

/// Union-find with path halving.
#[derive(Debug, Clone)]
pub struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n).collect(),
        }
    }
    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Embedding {
        let edges = [(0, 1, 1), (1, 2, 1), (2, 0, 1)];
        let rot = vec![vec![0, 2], vec![1, 0], vec![2, 1]];
        Embedding::from_rotation(3, &edges, &rot, &[1, 1, 1]).unwrap()
    }

    #[test]
    fn triangle_has_two_faces() {
        let g = triangle();
        assert_eq!(g.num_faces(), 2);
        assert_eq!(g.face(0).len() + g.face(1).len(), 6);
    }

    #[test]
    fn single_edge_has_one_face() {
        let g = Embedding::from_rotation(2, &[(0, 1, 3)], &[vec![0], vec![0]], &[1, 2]).unwrap();
        assert_eq!(g.num_faces(), 1);
    }

    #[test]
    fn lone_vertex() {
        let g = Embedding::from_rotation(1, &[], &[vec![]], &[5]).unwrap();
        assert_eq!(g.num_faces(), 1);
        let d = g.dual();
        assert_eq!(d.num_vertices(), 1);
        assert_eq!(d.total_face_weight(), 5);
    }

    #[test]
    fn k5_rotation_is_rejected() {
        // every rotation system of K5 has genus >= 1; try the lexicographic one
        let mut edges = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                edges.push((a, b, 1));
            }
        }
        let mut rot = vec![Vec::new(); 5];
        for (e, &(a, b, _)) in edges.iter().enumerate() {
            rot[a].push(e);
            rot[b].push(e);
        }
        let err = Embedding::from_rotation(5, &edges, &rot, &[1; 5]).unwrap_err();
        assert!(matches!(err, Error::NonPlanarEmbedding { .. }));
    }

    #[test]
    fn errors_on_bad_input() {
        let err =
            Embedding::from_rotation(2, &[(0, 1, 0)], &[vec![0], vec![0]], &[1, 1]).unwrap_err();
        assert!(matches!(err, Error::NonpositiveCost { .. }));
        let err =
            Embedding::from_rotation(3, &[(0, 1, 1)], &[vec![0], vec![0], vec![]], &[1, 1, 1])
                .unwrap_err();
        assert_eq!(err, Error::DisconnectedGraph);
    }

    #[test]
    fn triangle_dual_is_three_parallel_edges() {
        let g = triangle();
        let d = g.dual();
        assert_eq!(d.num_vertices(), 2);
        assert_eq!(d.num_edges(), 3);
        for e in 0..3 {
            let (a, b) = d.endpoints(e);
            assert_ne!(a, b);
        }
        assert_eq!(d.num_faces(), 3);
        assert_eq!(d.total_face_weight(), 3);
    }

    #[test]
    fn dual_of_dual_restores_rotation() {
        let g = triangle();
        let dd = g.dual().dual();
        assert_eq!(dd.num_vertices(), g.num_vertices());
        for d in 0..g.num_darts() {
            assert_eq!(dd.sigma(d), g.sigma(d));
        }
    }

    #[test]
    fn four_cycle_dual() {
        let edges = [(0, 1, 1), (1, 2, 2), (2, 3, 3), (3, 0, 4)];
        let rot = vec![vec![0, 3], vec![1, 0], vec![2, 1], vec![3, 2]];
        let g = Embedding::from_rotation(4, &edges, &rot, &[1, 1, 1, 1]).unwrap();
        let d = g.dual();
        assert_eq!(d.num_vertices(), 2);
        assert_eq!(d.num_edges(), 4);
        assert_eq!(d.costs(), &[1, 2, 3, 4]);
    }

    #[test]
    fn restriction_merges_face_weights() {
        let g = triangle().dual().dual();
        let g = g.clone().with_face_weights(vec![3, 4]).unwrap();
        let r = g.restrict(&[true, true, false], None).unwrap();
        assert_eq!(r.emb.num_faces(), 1);
        assert_eq!(r.emb.face_weight(0), 7);
    }
}
