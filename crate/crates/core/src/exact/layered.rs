//! Shortest paths in the layered graph whose nodes are (dual vertex, signed
//! enclosed weight so far). A path from `(u, 0)` back to `(u, y)` is a closed
//! walk in the dual whose transfer weights sum to `y`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::cut::{CutResult, Objective};
use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::planar::{bfs_tree, edge_of, pp_dart_weights, Cycle, Embedding};

/// Keeps the best cut found so far and runs layered searches for it.
pub(crate) struct Search<'a> {
    pub primal: &'a Embedding,
    pub objective: Objective,
    pub total: i64,
    pub best: Option<CutResult>,
    /// Number of (vertex, layer) nodes settled, for statistics.
    pub settled: u64,
    dist: Vec<i64>,
    parent: Vec<u32>,
    touched: Vec<usize>,
}

const NO_PARENT: u32 = u32::MAX;

impl<'a> Search<'a> {
    pub fn new(primal: &'a Embedding, objective: Objective) -> Search<'a> {
        Search {
            primal,
            objective,
            total: primal.total_vertex_weight(),
            best: None,
            settled: 0,
            dist: Vec::new(),
            parent: Vec::new(),
            touched: Vec::new(),
        }
    }

    /// Seeds the incumbent with every single-vertex cut.
    pub fn seed_singletons(&mut self) {
        let n = self.primal.num_vertices();
        let mut side = vec![false; n];
        for v in 0..n {
            side[v] = true;
            if let Ok(c) = CutResult::from_side(self.primal, &side, self.objective) {
                self.offer(c);
            }
            side[v] = false;
        }
    }

    fn offer(&mut self, c: CutResult) {
        if self.best.as_ref().is_none_or(|b| c.value < b.value) {
            self.best = Some(c);
        }
    }

    fn denominator(&self, y: i64) -> i128 {
        let w = self.total;
        match self.objective {
            Objective::Quotient => y.min(w - y) as i128,
            Objective::Sparsity => y as i128 * (w - y) as i128,
        }
    }

    fn max_denominator(&self) -> i128 {
        let w = self.total as i128;
        match self.objective {
            Objective::Quotient => w / 2,
            Objective::Sparsity => (w / 2) * (w - w / 2),
        }
    }

    /// `len / den` cannot beat the incumbent.
    fn hopeless(&self, len: i64, den: i128) -> bool {
        match &self.best {
            None => false,
            Some(b) => len as i128 * b.value.denom() >= b.value.numer() * den,
        }
    }

    /// Runs a search from `(u, 0)` for each source `u` of `h`, a connected
    /// subgraph of the dual whose face weights sum to the primal total.
    /// `dart_map[d]` is the dual (= primal) dart of `h`'s dart `d`.
    pub fn run(&mut self, h: &Embedding, dart_map: &[usize], sources: &[usize]) {
        let w = self.total;
        if w < 2 || h.num_darts() == 0 {
            return;
        }
        debug_assert_eq!(h.total_face_weight(), w);
        let tree = bfs_tree(h, 0);
        let pp = pp_dart_weights(h, &tree, h.outer());
        let layers = (2 * w + 1) as usize;
        let size = h.num_vertices() * layers;
        if self.dist.len() < size {
            self.dist.resize(size, i64::MAX);
            self.parent.resize(size, NO_PARENT);
        }
        let maxden = self.max_denominator();
        for &u in sources {
            let mut heap = BinaryHeap::new();
            let start = u * layers + w as usize;
            self.dist[start] = 0;
            self.touched.push(start);
            heap.push(Reverse((0i64, start)));
            while let Some(Reverse((d, node))) = heap.pop() {
                if d > self.dist[node] {
                    continue;
                }
                if self.hopeless(d, maxden) {
                    break;
                }
                self.settled += 1;
                let v = node / layers;
                let y = (node % layers) as i64 - w;
                if v == u && y > 0 && y < w {
                    let den = self.denominator(y);
                    if !self.hopeless(d, den) {
                        let walk = self.walk_to(h, &pp.weight, node, start, layers);
                        let darts: Vec<usize> = walk.iter().map(|&x| dart_map[x]).collect();
                        if let Some(c) = self.best_simple_cut(&darts) {
                            debug_assert!(c.value <= Frac::new(d as i128, den));
                            self.offer(c);
                        }
                    }
                }
                for dart in h.darts_at(v) {
                    let ny = y + pp.weight[dart];
                    if ny < -w || ny > w {
                        continue;
                    }
                    let nd = d + h.dart_cost(dart);
                    let next = h.head(dart) * layers + (ny + w) as usize;
                    if nd < self.dist[next] && !self.hopeless(nd, maxden) {
                        if self.dist[next] == i64::MAX {
                            self.touched.push(next);
                        }
                        self.dist[next] = nd;
                        self.parent[next] = dart as u32;
                        heap.push(Reverse((nd, next)));
                    }
                }
            }
            for &x in &self.touched {
                self.dist[x] = i64::MAX;
                self.parent[x] = NO_PARENT;
            }
            self.touched.clear();
        }
    }

    fn walk_to(
        &self,
        h: &Embedding,
        weight: &[i64],
        mut node: usize,
        start: usize,
        layers: usize,
    ) -> Vec<usize> {
        let w = self.total;
        let mut darts = Vec::new();
        while node != start {
            let d = self.parent[node] as usize;
            darts.push(d);
            let y = (node % layers) as i64 - w - weight[d];
            node = h.tail(d) * layers + (y + w) as usize;
        }
        darts.reverse();
        darts
    }

    /// Splits a closed dual walk into simple cycles and returns the best cut
    /// among the corresponding primal bipartitions.
    fn best_simple_cut(&self, walk: &[usize]) -> Option<CutResult> {
        let mut best: Option<CutResult> = None;
        for cyc in split_simple(self.primal, walk) {
            for c in cycle_cuts(self.primal, &cyc, self.objective) {
                if best.as_ref().is_none_or(|b| c.value < b.value) {
                    best = Some(c);
                }
            }
        }
        best
    }
}

/// Decomposes a closed walk in the dual of `primal` (dual darts are primal
/// dart ids; the dual tail of dart `d` is the face left of `d`) into simple
/// cycles, dropping immediate back-and-forth pairs.
pub(crate) fn split_simple(primal: &Embedding, walk: &[usize]) -> Vec<Vec<usize>> {
    let tail = |d: usize| primal.face_of(d);
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut pos = std::collections::HashMap::new();
    if walk.is_empty() {
        return out;
    }
    pos.insert(tail(walk[0]), 0usize);
    let mut verts = vec![tail(walk[0])];
    for &d in walk {
        stack.push(d);
        let h = primal.face_of(d ^ 1);
        if let Some(&p) = pos.get(&h) {
            let cyc: Vec<usize> = stack.drain(p..).collect();
            for x in verts.drain(p + 1..) {
                pos.remove(&x);
            }
            let is_backtrack = cyc.len() == 2 && cyc[0] == cyc[1] ^ 1;
            if !is_backtrack {
                out.push(cyc);
            }
        } else {
            pos.insert(h, verts.len());
            verts.push(h);
        }
    }
    out
}

/// The bipartitions cut out by a simple dual cycle: its edges, removed from
/// the primal, leave two components.
pub(crate) fn cycle_cuts(
    primal: &Embedding,
    cycle: &[usize],
    objective: Objective,
) -> Vec<CutResult> {
    let n = primal.num_vertices();
    let mut cut = vec![false; primal.num_edges()];
    for &d in cycle {
        cut[edge_of(d)] = true;
    }
    let mut comp = vec![usize::MAX; n];
    let mut ncomp = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = ncomp;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for d in primal.darts_at(v) {
                if cut[edge_of(d)] {
                    continue;
                }
                let h = primal.head(d);
                if comp[h] == usize::MAX {
                    comp[h] = ncomp;
                    stack.push(h);
                }
            }
        }
        ncomp += 1;
    }
    let mut out = Vec::new();
    for c in 1..ncomp {
        let side: Vec<bool> = comp.iter().map(|&x| x == c).collect();
        if let Ok(mut r) = CutResult::from_side(primal, &side, objective) {
            r.witness = Some(Cycle::new(cycle.to_vec()));
            out.push(r);
        }
    }
    out
}

/// Exact optimum by running the layered search from every dual vertex.
pub fn exact_mqc_layered(g: &Embedding, objective: Objective) -> Result<CutResult> {
    let dual = g.dual();
    let mut s = Search::new(g, objective);
    s.seed_singletons();
    let map: Vec<usize> = (0..dual.num_darts()).collect();
    let sources: Vec<usize> = (0..dual.num_vertices()).collect();
    s.run(&dual, &map, &sources);
    s.best.ok_or(Error::NoCut)
}
