//! Instance builders: straight-line drawings, grids and random planar graphs.

use rand::seq::SliceRandom;
use rand::Rng;

use super::embedding::{Dsu, Embedding};
use crate::error::Result;

/// Embeds a straight-line drawing: each vertex's rotation is its incident
/// edges sorted by angle. The drawing must be crossing-free and have no
/// parallel edges.
pub fn from_straight_line(
    points: &[(f64, f64)],
    edges: &[(usize, usize, i64)],
    weights: &[i64],
) -> Result<Embedding> {
    let mut rot: Vec<Vec<(f64, usize)>> = vec![Vec::new(); points.len()];
    for (e, &(u, v, _)) in edges.iter().enumerate() {
        let ang = |a: usize, b: usize| (points[b].1 - points[a].1).atan2(points[b].0 - points[a].0);
        rot[u].push((ang(u, v), e));
        rot[v].push((ang(v, u), e));
    }
    let rot: Vec<Vec<usize>> = rot
        .into_iter()
        .map(|mut r| {
            r.sort_by(|a, b| a.0.total_cmp(&b.0));
            r.into_iter().map(|x| x.1).collect()
        })
        .collect();
    Embedding::from_rotation(points.len(), edges, &rot, weights)
}

/// `rows x cols` grid; vertex `(i, j)` has id `i * cols + j`.
pub fn grid(
    rows: usize,
    cols: usize,
    cost: impl Fn(usize) -> i64,
    weight: impl Fn(usize) -> i64,
) -> Embedding {
    let mut pts = Vec::with_capacity(rows * cols);
    let mut edges = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            pts.push((j as f64, i as f64));
            let v = i * cols + j;
            if j + 1 < cols {
                edges.push((v, v + 1, cost(edges.len())));
            }
            if i + 1 < rows {
                edges.push((v, v + cols, cost(edges.len())));
            }
        }
    }
    let w: Vec<i64> = (0..rows * cols).map(weight).collect();
    from_straight_line(&pts, &edges, &w).expect("grid drawing is planar")
}

pub fn unit_grid(k: usize) -> Embedding {
    grid(k, k, |_| 1, |_| 1)
}

/// Edge list and rotation system of a random stacked triangulation on
/// `n >= 3` vertices: start from a triangle and repeatedly insert a vertex
/// into a uniformly random inner face.
pub fn stacked_triangulation<R: Rng>(
    n: usize,
    rng: &mut R,
) -> (Vec<(usize, usize)>, Vec<Vec<usize>>) {
    assert!(n >= 3);
    let mut edges = vec![(0, 1), (1, 2), (2, 0)];
    let mut rot: Vec<Vec<usize>> = vec![vec![0, 2], vec![1, 0], vec![2, 1]];
    // inner faces as counterclockwise vertex triples with their edges (ab, bc, ca)
    let mut faces = vec![([0usize, 1, 2], [0usize, 1, 2])];
    for x in 3..n {
        let fi = rng.gen_range(0..faces.len());
        let ([a, b, c], [ab, bc, ca]) = faces[fi];
        let (xa, xb, xc) = (edges.len(), edges.len() + 1, edges.len() + 2);
        edges.extend([(x, a), (x, b), (x, c)]);
        let insert_after = |r: &mut Vec<usize>, after: usize, new: usize| {
            let p = r.iter().position(|&e| e == after).unwrap();
            r.insert(p + 1, new);
        };
        insert_after(&mut rot[a], ab, xa);
        insert_after(&mut rot[b], bc, xb);
        insert_after(&mut rot[c], ca, xc);
        rot.push(vec![xa, xb, xc]);
        faces[fi] = ([a, b, x], [ab, xb, xa]);
        faces.push(([b, c, x], [bc, xc, xb]));
        faces.push(([c, a, x], [ca, xa, xc]));
    }
    (edges, rot)
}

#[derive(Debug, Clone, Copy)]
pub struct RandomSpec {
    pub n: usize,
    pub max_cost: i64,
    pub max_weight: i64,
    /// Probability of keeping each edge outside a random spanning tree.
    pub keep: f64,
}

/// Connected random planar graph: a stacked triangulation thinned by
/// deleting random non-spanning-tree edges, with random costs and weights.
pub fn random_planar<R: Rng>(spec: RandomSpec, rng: &mut R) -> Embedding {
    let n = spec.n.max(1);
    let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=spec.max_weight)).collect();
    if n < 3 {
        let edges: Vec<(usize, usize, i64)> = if n == 2 {
            vec![(0, 1, rng.gen_range(1..=spec.max_cost))]
        } else {
            vec![]
        };
        let rot = if n == 2 {
            vec![vec![0], vec![0]]
        } else {
            vec![vec![]]
        };
        return Embedding::from_rotation(n, &edges, &rot, &weights).unwrap();
    }
    let (edges, rot) = stacked_triangulation(n, rng);
    let mut idx: Vec<usize> = (0..edges.len()).collect();
    idx.shuffle(rng);
    let mut dsu = Dsu::new(n);
    let mut keep = vec![false; edges.len()];
    for &e in &idx {
        let (a, b) = edges[e];
        if dsu.union(a, b) || rng.gen_bool(spec.keep) {
            keep[e] = true;
        }
    }
    let costed: Vec<(usize, usize, i64)> = edges
        .iter()
        .map(|&(a, b)| (a, b, rng.gen_range(1..=spec.max_cost)))
        .collect();
    let full = Embedding::from_rotation(n, &costed, &rot, &weights).unwrap();
    let r = full.restrict(&vec![true; n], Some(&keep)).unwrap();
    let sub = r.emb;
    let faces = sub.num_faces();
    sub.with_face_weights(vec![0; faces]).unwrap()
}

/// Random triangulation with unit costs and unit vertex weights.
pub fn random_triangulation<R: Rng>(n: usize, rng: &mut R) -> Embedding {
    let (edges, rot) = stacked_triangulation(n, rng);
    let costed: Vec<_> = edges.iter().map(|&(a, b)| (a, b, 1)).collect();
    Embedding::from_rotation(n, &costed, &rot, &vec![1; n]).unwrap()
}

pub fn path(costs: &[i64], weights: &[i64]) -> Embedding {
    let n = weights.len();
    let edges: Vec<_> = costs
        .iter()
        .enumerate()
        .map(|(i, &c)| (i, i + 1, c))
        .collect();
    let rot: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut r = Vec::new();
            if v > 0 {
                r.push(v - 1);
            }
            if v + 1 < n {
                r.push(v);
            }
            r
        })
        .collect();
    Embedding::from_rotation(n, &edges, &rot, weights).unwrap()
}

/// Cycle `0 - 1 - ... - (n-1) - 0` drawn counterclockwise.
pub fn cycle(costs: &[i64], weights: &[i64]) -> Embedding {
    let n = weights.len();
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, costs[i])).collect();
    let rot: Vec<Vec<usize>> = (0..n).map(|v| vec![v, (v + n - 1) % n]).collect();
    Embedding::from_rotation(n, &edges, &rot, weights).unwrap()
}

/// Star with center 0 and `leaves` leaves.
pub fn star(leaves: usize, cost: i64, weight: i64) -> Embedding {
    let edges: Vec<_> = (0..leaves).map(|i| (0, i + 1, cost)).collect();
    let mut rot = vec![(0..leaves).collect::<Vec<_>>()];
    rot.extend((0..leaves).map(|i| vec![i]));
    Embedding::from_rotation(leaves + 1, &edges, &rot, &vec![weight; leaves + 1]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn grid_census() {
        let g = unit_grid(5);
        assert_eq!(g.num_vertices(), 25);
        assert_eq!(g.num_edges(), 40);
        assert_eq!(g.num_faces(), 17);
        assert_eq!(g.face(g.outer()).len(), 16);
    }

    #[test]
    fn stacked_triangulations_are_triangulated() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 3..40 {
            let g = random_triangulation(n, &mut rng);
            assert_eq!(g.num_edges(), 3 * n - 6);
            assert!(g.faces().iter().all(|f| f.len() == 3));
        }
    }

    #[test]
    fn random_planar_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..30 {
            let g = random_planar(
                RandomSpec {
                    n,
                    max_cost: 9,
                    max_weight: 4,
                    keep: 0.5,
                },
                &mut rng,
            );
            assert_eq!(g.num_vertices(), n);
            g.check_planar().unwrap();
        }
    }

    #[test]
    fn cycle_and_star() {
        assert_eq!(cycle(&[1; 4], &[1; 4]).num_faces(), 2);
        assert_eq!(star(3, 1, 1).num_faces(), 1);
        assert_eq!(path(&[2, 3], &[1, 1, 1]).num_faces(), 1);
    }
}
