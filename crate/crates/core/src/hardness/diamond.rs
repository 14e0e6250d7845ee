//! The diamond gadget: two bit strings become a planar graph whose weighted
//! diameter reveals whether the strings intersect.

use serde::{Deserialize, Serialize};

use super::Report;
use crate::error::{Error, Result};
use crate::oracle::{apsp, hop_diameter, Budget};
use crate::planar::gen::from_straight_line;
use crate::planar::Embedding;

pub const DIAMOND_M: i64 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiamondMeta {
    pub a: Vec<u8>,
    pub b: Vec<u8>,
    pub m: i64,
    /// Some i with A[i] = B[i] = 1.
    pub intersecting: bool,
    /// (n + 2) M + 2 when intersecting, else the bound (n + 2) M + 1.
    pub claimed_diameter: i64,
}

#[derive(Debug, Clone)]
pub struct DiamondInstance {
    pub meta: DiamondMeta,
    pub graph: Embedding,
    pub a_nodes: Vec<usize>,
    pub b_nodes: Vec<usize>,
    /// ℓ, r (Alice) and ℓ′, r′ (Bob).
    pub l: usize,
    pub r: usize,
    pub l2: usize,
    pub r2: usize,
}

pub fn gen_diamond(a: &[u8], b: &[u8]) -> Result<DiamondInstance> {
    let n = a.len();
    if b.len() != n {
        return Err(Error::LengthMismatch);
    }
    if n == 0 || a.iter().chain(b).any(|&x| x > 1) {
        return Err(Error::InvalidParameter("need nonempty bit strings".into()));
    }
    let m = DIAMOND_M;
    let n64 = n as i64;
    let (l, r, l2, r2) = (2 * n, 2 * n + 1, 2 * n + 2, 2 * n + 3);
    // a₁..a_n, then the four hubs, then b₁..b_n down a vertical line
    let mut pts = Vec::new();
    for i in 0..n {
        pts.push((0.0, -((i + 1) as f64)));
    }
    for j in 0..n {
        pts.push((0.0, -((n + 3 + j) as f64)));
    }
    pts.push((-1.0, -((n + 1) as f64)));
    pts.push((1.0, -((n + 1) as f64)));
    pts.push((-1.0, -((n + 2) as f64)));
    pts.push((1.0, -((n + 2) as f64)));

    let mut edges = Vec::new();
    for i in 0..n {
        let (k, bit) = (i as i64 + 1, a[i] as i64);
        edges.push((i, l, k * m + bit));
        edges.push((i, r, (n64 + 1 - k) * m + bit));
    }
    for j in 0..n {
        let (k, bit) = (j as i64 + 1, b[j] as i64);
        edges.push((n + j, l2, (n64 + 1 - k) * m + bit));
        edges.push((n + j, r2, k * m + bit));
    }
    edges.push((l, l2, m));
    edges.push((r, r2, m));
    let graph = from_straight_line(&pts, &edges, &vec![1; 2 * n + 4])?;
    let intersecting = a.iter().zip(b).any(|(&x, &y)| x == 1 && y == 1);
    let base = (n64 + 2) * m;
    Ok(DiamondInstance {
        meta: DiamondMeta {
            a: a.to_vec(),
            b: b.to_vec(),
            m,
            intersecting,
            claimed_diameter: if intersecting { base + 2 } else { base + 1 },
        },
        graph,
        a_nodes: (0..n).collect(),
        b_nodes: (n..2 * n).collect(),
        l,
        r,
        l2,
        r2,
    })
}

impl DiamondInstance {
    pub fn from_meta(meta: &DiamondMeta) -> Result<DiamondInstance> {
        gen_diamond(&meta.a, &meta.b)
    }
}

pub fn verify_diamond(inst: &DiamondInstance) -> Result<Report> {
    let meta = &inst.meta;
    let n = meta.a.len();
    if n > 512 {
        return Err(Error::BudgetExceeded {
            size: n,
            budget: 512,
        });
    }
    let g = &inst.graph;
    let mut rep = Report::new("diamond");
    rep.check(
        "census: 2n + 4 nodes, 4n + 2 edges",
        g.num_vertices() == 2 * n + 4 && g.num_edges() == 4 * n + 2,
        format!("{} nodes, {} edges", g.num_vertices(), g.num_edges()),
    );
    let alice = |x: usize| x < n || x == inst.l || x == inst.r;
    let crossing = (0..g.num_edges())
        .filter(|&e| {
            let (x, y) = g.endpoints(e);
            alice(x) != alice(y)
        })
        .count();
    rep.check(
        "two edges cross the partition",
        crossing == 2,
        crossing.to_string(),
    );
    let hops = hop_diameter(g);
    rep.check("hop-diameter 3", hops == 3, hops.to_string());

    let dist = apsp(g, &Budget::default())?;
    let m = meta.m;
    let base = (n as i64 + 2) * m;
    let mut pairs_ok = true;
    let mut others_ok = true;
    let mut hubs_ok = true;
    let mut detail = String::new();
    for x in 0..g.num_vertices() {
        for y in x + 1..g.num_vertices() {
            let special = x < n && y == n + x;
            if special {
                let want = base + (meta.a[x] + meta.b[x]) as i64;
                if dist[x][y] != want {
                    pairs_ok = false;
                    detail = format!("d(a{}, b{}) = {} != {want}", x + 1, x + 1, dist[x][y]);
                }
            } else if x >= 2 * n && y >= 2 * n {
                // hub pairs such as (ℓ, r′) are not covered by the
                // (n+1)M + 2 bound but must stay within the claimed diameter
                hubs_ok &= dist[x][y] <= meta.claimed_diameter;
            } else if dist[x][y] > base - m + 2 {
                others_ok = false;
            }
        }
    }
    rep.check("d(a_i, b_i) = (n+2)M + A[i] + B[i]", pairs_ok, detail);
    rep.check(
        "other node pairs within (n+1)M + 2",
        others_ok,
        String::new(),
    );
    rep.check(
        "hub pairs within the claimed diameter",
        hubs_ok,
        String::new(),
    );
    let diameter = dist.iter().flatten().copied().max().unwrap_or(0);
    let ok = if meta.intersecting {
        diameter == base + 2
    } else {
        diameter <= base + 1
    };
    rep.check(
        "diameter reveals intersection",
        ok,
        format!("diameter {diameter}, intersecting {}", meta.intersecting),
    );
    Ok(rep)
}
