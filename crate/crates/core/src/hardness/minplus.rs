//! Cut instances encoding a (min,+)-convolution upper-bound question: three
//! u–v paths carry the sequences, so a balanced three-edge cut through
//! positions (i, j, k) exists iff i + j = k and costs 3β + T + aᵢ + b_j − c_k.

use serde::{Deserialize, Serialize};

use super::Report;
use crate::cut::{CutResult, Objective};
use crate::error::{Error, Result};
use crate::exact::{exact_mqc_layered, min_bisection_small};
use crate::frac::{frac, Frac, FracRepr};
use crate::oracle::{brute_bisection, brute_optimum, Budget};
use crate::planar::gen::from_straight_line;
use crate::planar::Embedding;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinPlusMeta {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
    pub unit_weight: bool,
    /// β = beta_factor · T n²; the construction uses 4.
    #[serde(default = "default_beta_factor")]
    pub beta_factor: i64,
    pub t: i64,
    pub beta: i64,
    pub heavy: i64,
    pub threshold_quotient: FracRepr,
    pub threshold_sparsity: FracRepr,
    pub threshold_bisection: i64,
    /// 1-based (i, j, k) with i + j = k and aᵢ + b_j < c_k, if any.
    pub witness: Option<(usize, usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct MinPlusInstance {
    pub meta: MinPlusMeta,
    pub graph: Embedding,
    pub u: usize,
    pub v: usize,
    /// Path vertices in index order.
    pub path_a: Vec<usize>,
    pub path_b: Vec<usize>,
    pub path_c: Vec<usize>,
    /// `cut_a[i - 1]` is the edge whose removal leaves a₁..aᵢ on v's side.
    pub cut_a: Vec<usize>,
    pub cut_b: Vec<usize>,
    /// `cut_c[k - 1]` leaves c_{k+1}..c_n on v's side.
    pub cut_c: Vec<usize>,
    /// e_A, e_B, e_C and, in the unit-weight variant, the pendant edges.
    pub heavy_edges: Vec<usize>,
}

/// Multiplier in β = factor · T n² used by [`gen_minplus`].
pub const BETA_FACTOR: i64 = 4;

/// Smallest multiplier for which the sparsity threshold separates unbalanced
/// cuts: a cut off balance by one has denominator (12n)² − 1, so the claim
/// needs 3β ≥ 144n²(T − 1) − T, which 4Tn² does not give.
pub const SAFE_BETA_FACTOR: i64 = 48;

fn default_beta_factor() -> i64 {
    BETA_FACTOR
}

pub fn has_witness(a: &[i64], b: &[i64], c: &[i64]) -> Option<(usize, usize, usize)> {
    let n = a.len();
    for k in 1..=n {
        for i in 1..k {
            let j = k - i;
            if a[i - 1] + b[j - 1] < c[k - 1] {
                return Some((i, j, k));
            }
        }
    }
    None
}

pub fn gen_minplus(a: &[i64], b: &[i64], c: &[i64], unit_weight: bool) -> Result<MinPlusInstance> {
    gen_minplus_with(a, b, c, unit_weight, BETA_FACTOR)
}

/// As [`gen_minplus`] with β = beta_factor · T n².
pub fn gen_minplus_with(
    a: &[i64],
    b: &[i64],
    c: &[i64],
    unit_weight: bool,
    beta_factor: i64,
) -> Result<MinPlusInstance> {
    let n = a.len();
    if beta_factor < 1 {
        return Err(Error::InvalidParameter(
            "beta factor must be positive".into(),
        ));
    }
    if b.len() != n || c.len() != n {
        return Err(Error::LengthMismatch);
    }
    if n < 2 {
        return Err(Error::InvalidParameter(
            "sequences need length at least 2".into(),
        ));
    }
    if a.iter().chain(b).chain(c).any(|&x| x < 1) {
        return Err(Error::InvalidParameter(
            "sequences must be positive integers".into(),
        ));
    }
    let n64 = n as i64;
    let t: i64 = a.iter().chain(b).chain(c).sum();
    let beta = beta_factor * t * n64 * n64;
    let heavy = 1210 * n64 * n64 * (2 * beta + t);

    let (u, v) = (0, 1);
    let va = |i: usize| 2 + i;
    let vb = |i: usize| 2 + n + i;
    let vc = |i: usize| 2 + 2 * n + i;
    let mut pts: Vec<(f64, f64)> = vec![(0.0, 0.0), (0.0, (n + 1) as f64)];
    let mut weights = if unit_weight {
        vec![1, 1]
    } else {
        vec![10 * n64, 11 * n64]
    };
    for i in 0..n {
        pts.push((-1.0, (n - i) as f64));
    }
    for i in 0..n {
        pts.push((0.0, (n - i) as f64));
    }
    for i in 0..n {
        pts.push((1.0, (i + 1) as f64));
    }
    weights.extend(std::iter::repeat_n(1, 3 * n));

    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    let push = |edges: &mut Vec<(usize, usize, i64)>, x: usize, y: usize, w: i64| {
        edges.push((x, y, w));
        edges.len() - 1
    };
    let mut cut_a = Vec::new();
    let mut cut_b = Vec::new();
    let mut cut_c = Vec::new();
    for i in 0..n {
        let next = if i + 1 < n { va(i + 1) } else { u };
        cut_a.push(push(&mut edges, va(i), next, beta + a[i]));
    }
    for i in 0..n {
        let next = if i + 1 < n { vb(i + 1) } else { u };
        cut_b.push(push(&mut edges, vb(i), next, beta + b[i]));
    }
    for i in 0..n {
        // the edge into v follows the same rule as the inner ones
        let next = if i + 1 < n { vc(i + 1) } else { v };
        cut_c.push(push(&mut edges, vc(i), next, beta + t - c[i]));
    }
    let mut heavy_edges = vec![
        push(&mut edges, v, va(0), heavy),
        push(&mut edges, v, vb(0), heavy),
        push(&mut edges, u, vc(0), heavy),
    ];
    if unit_weight {
        for (hub, count, y) in [(u, 10 * n - 1, -1.0), (v, 11 * n - 1, (n + 2) as f64)] {
            for p in 0..count {
                let id = pts.len();
                pts.push((-4.0 + 8.0 * (p + 1) as f64 / (count + 1) as f64, y));
                weights.push(1);
                heavy_edges.push(push(&mut edges, hub, id, heavy));
            }
        }
    }
    let graph = from_straight_line(&pts, &edges, &weights)?;
    let w = 24 * n64;
    let half = (w / 2) as i128;
    let bound = (3 * beta + t) as i128;
    let meta = MinPlusMeta {
        a: a.to_vec(),
        b: b.to_vec(),
        c: c.to_vec(),
        unit_weight,
        beta_factor,
        t,
        beta,
        heavy,
        threshold_quotient: (&frac(bound, half)).into(),
        threshold_sparsity: (&frac(bound, half * half)).into(),
        threshold_bisection: 3 * beta + t,
        witness: has_witness(a, b, c),
    };
    Ok(MinPlusInstance {
        meta,
        graph,
        u,
        v,
        path_a: (0..n).map(va).collect(),
        path_b: (0..n).map(vb).collect(),
        path_c: (0..n).map(vc).collect(),
        cut_a,
        cut_b,
        cut_c,
        heavy_edges,
    })
}

impl MinPlusInstance {
    pub fn from_meta(meta: &MinPlusMeta) -> Result<MinPlusInstance> {
        gen_minplus_with(
            &meta.a,
            &meta.b,
            &meta.c,
            meta.unit_weight,
            meta.beta_factor,
        )
    }

    /// The (i, j, k) positions of a cut that crosses each path exactly once
    /// and no heavy edge.
    fn positions(&self, cut_edges: &[usize]) -> Option<(usize, usize, usize)> {
        if cut_edges.iter().any(|e| self.heavy_edges.contains(e)) {
            return None;
        }
        let pick = |path: &[usize]| {
            let hits: Vec<usize> = (0..path.len())
                .filter(|&i| cut_edges.contains(&path[i]))
                .collect();
            (hits.len() == 1).then(|| hits[0] + 1)
        };
        let i = pick(&self.cut_a)?;
        let j = pick(&self.cut_b)?;
        let k = pick(&self.cut_c)?;
        (cut_edges.len() == 3).then_some((i, j, k))
    }

    /// Side of v for the cut at (i, j, k): v's pendants, v, a₁..aᵢ,
    /// b₁..b_j and c_{k+1}..c_n.
    fn v_side(&self, (i, j, k): (usize, usize, usize)) -> Vec<bool> {
        let g = &self.graph;
        let mut side = vec![false; g.num_vertices()];
        side[self.v] = true;
        for d in g.darts_at(self.v) {
            let h = g.head(d);
            if g.degree(h) == 1 {
                side[h] = true;
            }
        }
        for &x in &self.path_a[..i] {
            side[x] = true;
        }
        for &x in &self.path_b[..j] {
            side[x] = true;
        }
        for &x in &self.path_c[k..] {
            side[x] = true;
        }
        side
    }

    fn structure(&self, report: &mut Report, label: &str, in_side: &[bool], cut_edges: &[usize]) {
        match self.positions(cut_edges) {
            None => report.check(
                &format!("{label}: crosses each path once, no heavy edge"),
                false,
                format!("cut edges {cut_edges:?}"),
            ),
            Some(pos) => {
                report.check(
                    &format!("{label}: crosses each path once, no heavy edge"),
                    true,
                    format!("{pos:?}"),
                );
                let want = self.v_side(pos);
                let same = want.iter().zip(in_side).all(|(a, b)| a == b)
                    || want.iter().zip(in_side).all(|(a, b)| a != b);
                report.check(
                    &format!("{label}: sides follow the cut positions"),
                    same,
                    format!("{pos:?}"),
                );
            }
        }
    }
}

pub fn verify_minplus(inst: &MinPlusInstance) -> Result<Report> {
    let meta = &inst.meta;
    let n = meta.a.len();
    if n > 6 {
        return Err(Error::BudgetExceeded { size: n, budget: 6 });
    }
    let g = &inst.graph;
    let n64 = n as i64;
    let mut r = Report::new("minplus");
    let want_vertices = if meta.unit_weight { 24 * n } else { 3 * n + 2 };
    r.check(
        "vertex count",
        g.num_vertices() == want_vertices,
        format!("{} (expected {want_vertices})", g.num_vertices()),
    );
    r.check(
        "total weight 24n",
        g.total_vertex_weight() == 24 * n64,
        g.total_vertex_weight().to_string(),
    );
    r.check(
        &format!("beta = {}Tn^2", meta.beta_factor),
        meta.beta == meta.beta_factor * meta.t * n64 * n64,
        meta.beta.to_string(),
    );
    r.check(
        "heavy = 1210 n^2 (2 beta + T)",
        meta.heavy == 1210 * n64 * n64 * (2 * meta.beta + meta.t),
        meta.heavy.to_string(),
    );
    r.check(
        "three disjoint paths between u and v",
        three_paths(inst),
        String::new(),
    );

    let witness = meta.witness.is_some();
    let tq = meta
        .threshold_quotient
        .to_frac()
        .ok_or(Error::InvalidParameter("threshold".into()))?;
    let ts = meta
        .threshold_sparsity
        .to_frac()
        .ok_or(Error::InvalidParameter("threshold".into()))?;

    let budget = Budget::default();
    for (objective, threshold) in [(Objective::Quotient, tq), (Objective::Sparsity, ts)] {
        let opt = exact_mqc_layered(g, objective)?;
        if g.num_vertices() <= budget.max_cut_vertices {
            let brute = brute_optimum(g, objective, &budget)?.map(|x| x.0);
            r.check(
                &format!("{objective}: solver equals brute force"),
                brute == Some(opt.value),
                format!("{:?} vs {}", brute, opt.value),
            );
        }
        threshold_check(
            &mut r,
            &objective.to_string(),
            opt.value,
            threshold,
            witness,
        );
        inst.structure(&mut r, &objective.to_string(), &opt.in_side, &opt.cut_edges);
    }

    let bis = min_bisection_small(g)?;
    if g.num_vertices() <= budget.max_cut_vertices {
        let brute = brute_bisection(g, &budget)?;
        r.check(
            "bisection: solver equals brute force",
            brute == Some(bis.cost),
            format!("{brute:?} vs {}", bis.cost),
        );
    }
    threshold_check(
        &mut r,
        "bisection",
        Frac::from_integer(bis.cost as i128),
        Frac::from_integer(meta.threshold_bisection as i128),
        witness,
    );
    inst.structure(&mut r, "bisection", &bis.in_side, &bis.cut_edges);
    if let Some((i, j, k)) = inst.positions(&bis.cut_edges) {
        r.check(
            "bisection: i + j = k",
            i + j == k,
            format!("({i}, {j}, {k})"),
        );
        let c = CutResult::from_side(g, &bis.in_side, Objective::Quotient)?;
        let expected = 3 * meta.beta + meta.t + meta.a[i - 1] + meta.b[j - 1] - meta.c[k - 1];
        r.check(
            "bisection: cost 3 beta + T + a_i + b_j - c_k",
            c.cost == expected,
            format!("{} vs {expected}", c.cost),
        );
    }
    Ok(r)
}

fn threshold_check(r: &mut Report, label: &str, value: Frac, threshold: Frac, witness: bool) {
    r.check(
        &format!("{label}: below threshold iff witness"),
        (value < threshold) == witness,
        format!("optimum {value}, threshold {threshold}, witness {witness}"),
    );
}

/// Removing u, v and the pendants leaves exactly the three index paths.
fn three_paths(inst: &MinPlusInstance) -> bool {
    let g = &inst.graph;
    let mut on_path = vec![None; g.num_vertices()];
    for (p, path) in [&inst.path_a, &inst.path_b, &inst.path_c]
        .into_iter()
        .enumerate()
    {
        for &x in path {
            on_path[x] = Some(p);
        }
    }
    let mut inner = 0;
    for e in 0..g.num_edges() {
        let (x, y) = g.endpoints(e);
        match (on_path[x], on_path[y]) {
            (Some(p), Some(q)) if p == q => inner += 1,
            (Some(_), Some(_)) => return false,
            _ => {}
        }
    }
    let consecutive = [&inst.path_a, &inst.path_b, &inst.path_c]
        .iter()
        .all(|path| {
            path.windows(2)
                .all(|w| g.darts_at(w[0]).any(|d| g.head(d) == w[1]))
        });
    inner == 3 * (inst.path_a.len() - 1) && consecutive
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_and_constants() {
        let inst = gen_minplus(&[1, 1], &[1, 1], &[1, 1], false).unwrap();
        assert_eq!(inst.meta.t, 6);
        assert_eq!(inst.meta.beta, 96);
        assert_eq!(inst.meta.heavy, 958_320);
        assert_eq!(inst.graph.num_vertices(), 8);
        assert_eq!(inst.graph.total_vertex_weight(), 48);
        let unit = gen_minplus(&[1, 1], &[1, 1], &[1, 1], true).unwrap();
        assert_eq!(unit.graph.num_vertices(), 48);
        assert_eq!(unit.graph.total_vertex_weight(), 48);
        assert!(gen_minplus(&[1, 1], &[1], &[1, 1], false).is_err());
    }

    #[test]
    fn unbalanced_cut_undercuts_sparsity_threshold() {
        // cut at (1, 2, 2): i + j != k, one unit off balance, 2200 / (23 * 25)
        let (a, b, c) = ([8, 5], [6, 1], [11, 14]);
        assert_eq!(has_witness(&a, &b, &c), None);
        let r = verify_minplus(&gen_minplus(&a, &b, &c, false).unwrap()).unwrap();
        let failed: Vec<_> = r
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(failed, ["sparsity: below threshold iff witness"]);
        let safe = gen_minplus_with(&a, &b, &c, false, SAFE_BETA_FACTOR).unwrap();
        assert!(verify_minplus(&safe).unwrap().pass());
    }

    #[test]
    fn witness_scan() {
        assert_eq!(has_witness(&[1, 1], &[1, 1], &[9, 9]), Some((1, 1, 2)));
        assert_eq!(has_witness(&[5, 5], &[5, 5], &[1, 1]), None);
    }

    #[test]
    fn claim_holds_on_examples() {
        for (a, b, c) in [([1, 1], [1, 1], [9, 9]), ([5, 5], [5, 5], [1, 1])] {
            for unit in [false, true] {
                let inst = gen_minplus(&a, &b, &c, unit).unwrap();
                let r = verify_minplus(&inst).unwrap();
                assert!(r.pass(), "{r:#?}");
            }
        }
    }
}
