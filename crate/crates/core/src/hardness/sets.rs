//! Closest-pair-of-sets gadgets: each binary vector becomes a set of 2d
//! nodes hanging between two hubs ℓ and r, with edge weights chosen so that
//! set distances encode orthogonality or Hamming distance.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::Report;
use crate::error::{Error, Result};
use crate::frac::{frac, Frac};
use crate::oracle::{apsp, linkage_simulate, set_distance, Budget, Linkage, SetMode};
use crate::planar::gen::from_straight_line;
use crate::planar::Embedding;

pub const SETS_M: i64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetsVariant {
    /// Max-distance encodes orthogonality.
    Maxdist,
    /// Sum-distance encodes Hamming distance.
    Sumdist,
    /// Max-distance gadget prepared for complete linkage.
    Complete,
    /// Sum-distance gadget prepared for average linkage.
    Average,
}

impl std::str::FromStr for SetsVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<SetsVariant> {
        match s {
            "maxdist" => Ok(SetsVariant::Maxdist),
            "sumdist" => Ok(SetsVariant::Sumdist),
            "complete" => Ok(SetsVariant::Complete),
            "average" => Ok(SetsVariant::Average),
            _ => Err(Error::InvalidParameter(format!(
                "unknown sets variant `{s}`"
            ))),
        }
    }
}

impl SetsVariant {
    fn linkage(self) -> bool {
        matches!(self, SetsVariant::Complete | SetsVariant::Average)
    }

    /// Edges to r carry the complement bit.
    fn complement(self) -> bool {
        matches!(self, SetsVariant::Sumdist | SetsVariant::Average)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetsOptions {
    /// Subdivide every edge into unit edges (base variants only).
    pub unweighted: bool,
    /// Copies per node for average linkage; `None` means 32d² + 1.
    pub copies: Option<usize>,
    /// Order of the primed nodes along each set's path: u_d is joined to
    /// u′_d (mirrored) instead of u′_1.
    pub mirrored: bool,
}

impl Default for SetsOptions {
    fn default() -> Self {
        SetsOptions {
            unweighted: false,
            copies: None,
            mirrored: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetsMeta {
    pub vectors: Vec<Vec<u8>>,
    pub variant: SetsVariant,
    pub options: SetsOptions,
    pub m: i64,
    /// Added to every hub edge in the linkage variants.
    pub shift: i64,
    /// Copies per node (1 unless average linkage).
    pub copies: usize,
    /// Factor applied to every weight except copy edges (average linkage).
    pub scale: i64,
    /// (2d + 1) M + 1 for max-distance.
    pub threshold: i64,
    pub orthogonal_pair: Option<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct SetsInstance {
    pub meta: SetsMeta,
    pub graph: Embedding,
    pub sets: Vec<Vec<usize>>,
    pub l: usize,
    pub r: usize,
}

fn hamming(a: &[u8], b: &[u8]) -> i64 {
    a.iter().zip(b).filter(|(x, y)| x != y).count() as i64
}

fn max_overlap(a: &[u8], b: &[u8]) -> i64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x + y) as i64)
        .max()
        .unwrap_or(0)
}

pub fn gen_sets(
    vectors: &[Vec<u8>],
    variant: SetsVariant,
    options: SetsOptions,
) -> Result<SetsInstance> {
    let n = vectors.len();
    let d = vectors.first().map_or(0, |v| v.len());
    if n < 2 || d == 0 {
        return Err(Error::InvalidParameter(
            "need at least two nonempty vectors".into(),
        ));
    }
    if vectors.iter().any(|v| v.len() != d) {
        return Err(Error::LengthMismatch);
    }
    if vectors.iter().flatten().any(|&x| x > 1) {
        return Err(Error::InvalidParameter("vectors must be binary".into()));
    }
    if options.unweighted && variant.linkage() {
        return Err(Error::InvalidParameter(
            "linkage gadgets are weighted only".into(),
        ));
    }
    let m = SETS_M;
    let d64 = d as i64;
    let shift = if variant.linkage() { 11 * d64 } else { 0 };
    let copies = match variant {
        SetsVariant::Average => options.copies.unwrap_or(32 * d * d + 1).max(1),
        _ => 1,
    };
    let scale = if variant == SetsVariant::Average {
        100 * d64 * copies as i64
    } else {
        1
    };

    // line order within a set: u_1..u_d, then the primed nodes
    let mut line: Vec<(usize, usize, bool)> = Vec::new();
    for k in 0..n {
        for j in 1..=d {
            line.push((k, j, false));
        }
        for t in 1..=d {
            let j = if options.mirrored { d + 1 - t } else { t };
            line.push((k, j, true));
        }
    }
    let total = line.len() * copies;
    let (l, r) = (total, total + 1);
    let mut pts: Vec<(f64, f64)> = (0..total).map(|i| (0.0, -(i as f64))).collect();
    let mid = -(total as f64) / 2.0;
    pts.push((-1.0, mid));
    pts.push((1.0, mid));
    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    let mut sets = vec![Vec::new(); n];
    for (pos, &(k, j, primed)) in line.iter().enumerate() {
        let bit = vectors[k][j - 1] as i64;
        let rbit = if variant.complement() { 1 - bit } else { bit };
        let j64 = j as i64;
        let (wl, wr) = if primed {
            ((2 * d64 + 1 - j64) * m + bit, j64 * m + rbit)
        } else {
            (j64 * m + bit, (2 * d64 + 1 - j64) * m + rbit)
        };
        for c in 0..copies {
            let id = pos * copies + c;
            sets[k].push(id);
            edges.push((id, l, (wl + shift) * scale));
            edges.push((id, r, (wr + shift) * scale));
            if c > 0 {
                edges.push((id - 1, id, 1));
            }
        }
        let first_of_set = pos % (2 * d) == 0;
        if variant.linkage() && !first_of_set {
            edges.push((pos * copies - 1, pos * copies, (m + 1) * scale));
        }
    }
    let mut weights = vec![1i64; total + 2];
    if options.unweighted {
        let mut sub = Vec::new();
        for &(x, y, w) in &edges {
            let mut prev = x;
            for s in 1..w {
                let f = s as f64 / w as f64;
                let p = (
                    pts[x].0 + f * (pts[y].0 - pts[x].0),
                    pts[x].1 + f * (pts[y].1 - pts[x].1),
                );
                pts.push(p);
                weights.push(1);
                let id = pts.len() - 1;
                sub.push((prev, id, 1));
                prev = id;
            }
            sub.push((prev, y, 1));
        }
        edges = sub;
    }
    let graph = from_straight_line(&pts, &edges, &weights)?;
    let mut orthogonal_pair = None;
    'outer: for a in 0..n {
        for b in a + 1..n {
            if max_overlap(&vectors[a], &vectors[b]) <= 1 {
                orthogonal_pair = Some((a, b));
                break 'outer;
            }
        }
    }
    Ok(SetsInstance {
        meta: SetsMeta {
            vectors: vectors.to_vec(),
            variant,
            options,
            m,
            shift,
            copies,
            scale,
            threshold: (2 * d64 + 1) * m + 1,
            orthogonal_pair,
        },
        graph,
        sets,
        l,
        r,
    })
}

impl SetsInstance {
    pub fn from_meta(meta: &SetsMeta) -> Result<SetsInstance> {
        gen_sets(&meta.vectors, meta.variant, meta.options)
    }
}

/// Shortest-path distances between the given nodes (Dijkstra from each).
fn distances_among(g: &Embedding, nodes: &[usize]) -> Vec<Vec<i64>> {
    let n = g.num_vertices();
    let mut index = vec![usize::MAX; n];
    for (i, &x) in nodes.iter().enumerate() {
        index[x] = i;
    }
    nodes
        .iter()
        .map(|&s| {
            let mut dist = vec![i64::MAX; n];
            let mut heap = BinaryHeap::new();
            dist[s] = 0;
            heap.push(Reverse((0i64, s)));
            while let Some(Reverse((dv, v))) = heap.pop() {
                if dv > dist[v] {
                    continue;
                }
                for e in g.darts_at(v) {
                    let h = g.head(e);
                    let nd = dv + g.dart_cost(e);
                    if nd < dist[h] {
                        dist[h] = nd;
                        heap.push(Reverse((nd, h)));
                    }
                }
            }
            nodes.iter().map(|&t| dist[t]).collect()
        })
        .collect()
}

pub fn verify_sets(inst: &SetsInstance) -> Result<Report> {
    let meta = &inst.meta;
    let (n, d) = (meta.vectors.len(), meta.vectors[0].len());
    if n > 16 || d > 8 {
        return Err(Error::BudgetExceeded {
            size: n.max(d),
            budget: 16,
        });
    }
    let g = &inst.graph;
    let v = &meta.vectors;
    let mut rep = Report::new(match meta.variant {
        SetsVariant::Maxdist => "maxdist",
        SetsVariant::Sumdist => "sumdist",
        SetsVariant::Complete => "complete",
        SetsVariant::Average => "average",
    });
    let base_nodes = 2 * n * d * meta.copies + 2;
    if meta.options.unweighted {
        rep.check(
            "unweighted: every edge has cost 1",
            g.costs().iter().all(|&c| c == 1),
            String::new(),
        );
    } else {
        rep.check(
            "node count",
            g.num_vertices() == base_nodes,
            format!("{} (expected {base_nodes})", g.num_vertices()),
        );
    }
    if !meta.variant.linkage() && !meta.options.unweighted {
        let hubs_only = inst.sets.iter().flatten().all(|&x| {
            let mut nb: Vec<usize> = g.darts_at(x).map(|e| g.head(e)).collect();
            nb.sort_unstable();
            nb == vec![inst.l, inst.r]
        });
        rep.check(
            "set nodes adjacent to exactly l and r",
            hubs_only,
            String::new(),
        );
    }

    // distances among set nodes, then the hubs
    let mut nodes: Vec<usize> = inst.sets.iter().flatten().copied().collect();
    nodes.push(inst.l);
    nodes.push(inst.r);
    let budget = Budget::default();
    let local = if g.num_vertices() <= budget.max_apsp_nodes {
        let all = apsp(g, &budget)?;
        nodes
            .iter()
            .map(|&x| nodes.iter().map(|&y| all[x][y]).collect())
            .collect()
    } else {
        distances_among(g, &nodes)
    };
    let mut offset = vec![0; n + 1];
    for k in 0..n {
        offset[k + 1] = offset[k] + inst.sets[k].len();
    }
    let members = |k: usize| -> Vec<usize> { (offset[k]..offset[k + 1]).collect() };
    let m = meta.m;
    let d64 = d as i64;

    match meta.variant {
        SetsVariant::Maxdist | SetsVariant::Complete => {
            let shift = 2 * meta.shift;
            let mut formula_ok = true;
            let mut detail = String::new();
            let mut below = false;
            for a in 0..n {
                for b in a + 1..n {
                    let got = set_distance(&local, &members(a), &members(b), SetMode::Max);
                    let want = (2 * d64 + 1) * m + max_overlap(&v[a], &v[b]) + shift;
                    if got != want && formula_ok {
                        formula_ok = false;
                        detail = format!("Max-Dist(S{a}, S{b}) = {got}, formula {want}");
                    }
                    below |= got <= meta.threshold + shift;
                }
            }
            rep.check(
                "Max-Dist = (2d+1)M + max_i(v_a[i] + v_b[i])",
                formula_ok,
                detail,
            );
            rep.check(
                "some pair within threshold iff an orthogonal pair exists",
                below == meta.orthogonal_pair.is_some(),
                format!("orthogonal pair {:?}", meta.orthogonal_pair),
            );
        }
        SetsVariant::Sumdist | SetsVariant::Average => {
            let c2 = (meta.copies * meta.copies) as i64;
            let mut offsets = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    let got = set_distance(&local, &members(a), &members(b), SetMode::Sum);
                    offsets.push(got - 2 * c2 * hamming(&v[a], &v[b]) * meta.scale);
                }
            }
            let same = offsets.windows(2).all(|w| w[0] == w[1]);
            rep.check(
                "Sum-Dist differences = 2 x Hamming differences",
                same,
                format!("offset f = {:?}", offsets.first()),
            );
        }
    }

    if meta.variant.linkage() {
        linkage_checks(inst, &local, &offset, &mut rep, &budget)?;
    }
    Ok(rep)
}

/// Runs the linkage oracle on all nodes and checks that after the
/// absorption phase each set is one cluster and the next merge joins a
/// closest pair of vectors.
fn linkage_checks(
    inst: &SetsInstance,
    local: &[Vec<i64>],
    offset: &[usize],
    rep: &mut Report,
    budget: &Budget,
) -> Result<()> {
    let meta = &inst.meta;
    let v = &meta.vectors;
    let n = v.len();
    let mode = if meta.variant == SetsVariant::Complete {
        Linkage::Complete
    } else {
        Linkage::Average
    };
    let merges = linkage_simulate(local, mode, budget)?;
    let total = local.len();
    let monotone = merges.windows(2).all(|w| w[0].value() <= w[1].value());
    rep.check("merge values never decrease", monotone, String::new());

    let owner = |x: usize| (0..n).find(|&k| x >= offset[k] && x < offset[k + 1]);
    let mut cluster: Vec<usize> = (0..total).collect();
    let stage = total - n;
    for mg in &merges[..stage] {
        for c in cluster.iter_mut() {
            if *c == mg.absorbed {
                *c = mg.keep;
            }
        }
    }
    // each cluster holds exactly one whole set
    let mut set_of_cluster = std::collections::HashMap::new();
    let mut ok = true;
    for x in 0..offset[n] {
        let k = owner(x).unwrap();
        match set_of_cluster.insert(cluster[x], k) {
            Some(prev) if prev != k => ok = false,
            _ => {}
        }
    }
    ok &= set_of_cluster.len() == n;
    rep.check(
        "after absorption each set is its own cluster",
        ok,
        String::new(),
    );
    if !ok {
        return Ok(());
    }
    let next = &merges[stage];
    let (a, b) = (set_of_cluster[&next.keep], set_of_cluster[&next.absorbed]);
    let score = |x: usize, y: usize| -> i64 {
        match mode {
            Linkage::Complete => max_overlap(&v[x], &v[y]),
            _ => hamming(&v[x], &v[y]),
        }
    };
    let best = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .map(|(x, y)| score(x, y))
        .min()
        .unwrap();
    rep.check(
        "next merge joins a closest pair",
        score(a, b) == best,
        format!(
            "merged S{a}, S{b} at {} (score {}, best {best})",
            next.value(),
            score(a, b)
        ),
    );
    if mode == Linkage::Average {
        // special clusters only look closer by a bounded factor
        let side = (2 * meta.copies * v[0].len()) as i128;
        let factor: Frac = Frac::from_integer(1) - frac(2 * side + 4, (side + 2) * (side + 2));
        let plain = frac(
            set_distance(
                local,
                &(offset[a]..offset[a + 1]).collect::<Vec<_>>(),
                &(offset[b]..offset[b + 1]).collect::<Vec<_>>(),
                SetMode::Sum,
            ) as i128,
            side * side,
        );
        rep.check(
            "merge value at least (1 - (4kd+4)/(2kd+2)^2) x plain average",
            next.value() >= factor * plain,
            format!("{} vs {}", next.value(), factor * plain),
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_weights_and_census() {
        let inst = gen_sets(
            &[vec![1], vec![0]],
            SetsVariant::Maxdist,
            SetsOptions::default(),
        )
        .unwrap();
        let g = &inst.graph;
        assert_eq!(g.num_vertices(), (2 * 2) + 2);
        let cost = |x: usize| {
            (0..g.num_edges())
                .find(|&e| g.endpoints(e) == (x, inst.l))
                .map(|e| g.cost(e))
        };
        assert_eq!(cost(inst.sets[0][0]), Some(5));
        assert_eq!(cost(inst.sets[1][0]), Some(4));
    }

    #[test]
    fn max_dist_example() {
        let inst = gen_sets(
            &[vec![1], vec![1]],
            SetsVariant::Maxdist,
            SetsOptions::default(),
        )
        .unwrap();
        let dist = apsp(&inst.graph, &Budget::default()).unwrap();
        assert_eq!(
            set_distance(&dist, &inst.sets[0], &inst.sets[1], SetMode::Max),
            14
        );
        assert!(verify_sets(&inst).unwrap().pass());
    }
}
