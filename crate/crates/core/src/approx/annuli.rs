//! Shifted annulus decompositions and eps-tau nets, all in exact integer
//! arithmetic scaled by `k = 1/eps`.

use crate::planar::Embedding;

/// The decompositions D_0..D_k for one cost scale: with delta = tau/k and
/// sigma = (1 + 2/k) tau, D_i consists of the annuli
/// `[i delta + j sigma, i delta + (j + 1) sigma)`, j >= 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Annuli {
    pub tau: i64,
    pub k: i64,
}

impl Annuli {
    pub fn new(tau: i64, k: i64) -> Annuli {
        Annuli { tau, k }
    }

    /// Number of decompositions, `1/eps + 1`.
    pub fn shifts(&self) -> i64 {
        self.k + 1
    }

    /// Index of the annulus of D_i containing distance `d`; `None` below
    /// the first annulus.
    pub fn annulus(&self, i: i64, d: i64) -> Option<i64> {
        let (t, k) = (self.tau as i128, self.k as i128);
        let x = d as i128 * k - i as i128 * t;
        if x < 0 {
            return None;
        }
        Some((x / ((k + 2) * t)) as i64)
    }

    /// Bounds of annulus `j` of D_i, scaled by `k`: `[lo, hi)`.
    pub fn scaled_bounds(&self, i: i64, j: i64) -> (i128, i128) {
        let (t, k) = (self.tau as i128, self.k as i128);
        let lo = (i as i128 + j as i128 * (k + 2)) * t;
        (lo, lo + (k + 2) * t)
    }

    pub fn contains(&self, i: i64, j: i64, d: i64) -> bool {
        let (lo, hi) = self.scaled_bounds(i, j);
        let x = d as i128 * self.k as i128;
        lo <= x && x < hi
    }
}

/// Positions along a path (given by its vertex sequence and the costs of
/// its edges) forming an eps-tau net: a vertex is taken once the cost since
/// the last taken vertex reaches `tau / k`; both ends are always taken.
pub fn tau_net(edge_costs: &[i64], tau: i64, k: i64) -> Vec<usize> {
    let mut out = vec![0];
    let mut acc: i128 = 0;
    for (i, &c) in edge_costs.iter().enumerate() {
        acc += c as i128;
        if acc * k as i128 >= tau as i128 {
            out.push(i + 1);
            acc = 0;
        }
    }
    if *out.last().unwrap() != edge_costs.len() {
        out.push(edge_costs.len());
    }
    out
}

/// Costs of the edges of a path given by darts.
pub fn path_costs(g: &Embedding, darts: &[usize]) -> Vec<i64> {
    darts.iter().map(|&d| g.dart_cost(d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annuli_partition_the_covered_range() {
        for (tau, k) in [(1, 1), (3, 4), (10, 268), (7, 5)] {
            let a = Annuli::new(tau, k);
            for i in 0..a.shifts() {
                for d in 0..2000 {
                    let guess = a.annulus(i, d).unwrap_or(0);
                    let hits: Vec<i64> = (guess - 2..=guess + 2)
                        .filter(|&j| j >= 0 && a.contains(i, j, d))
                        .collect();
                    match a.annulus(i, d) {
                        Some(j) => assert_eq!(hits, vec![j]),
                        None => {
                            assert!(hits.is_empty() && (d as i128 * k as i128) < (i * tau) as i128)
                        }
                    }
                }
                // width is exactly sigma = (k + 2) tau / k
                let (lo, hi) = a.scaled_bounds(i, 3);
                assert_eq!(hi - lo, (k as i128 + 2) * tau as i128);
            }
        }
    }

    #[test]
    fn net_covers_path() {
        let costs = [1, 1, 5, 1, 1, 1, 1, 2];
        let net = tau_net(&costs, 2, 1);
        assert_eq!(net.first(), Some(&0));
        assert_eq!(net.last(), Some(&costs.len()));
        // every vertex within tau/k = 2 of some net vertex along the path
        let pos: Vec<i64> = std::iter::once(0)
            .chain(costs.iter().scan(0, |s, &c| {
                *s += c;
                Some(*s)
            }))
            .collect();
        for p in &pos {
            assert!(net.iter().any(|&i| (pos[i] - p).abs() <= 2));
        }
    }
}
