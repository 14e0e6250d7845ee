//! Vertex bipartitions and their objective values.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frac::{frac, Frac};
use crate::planar::{Cycle, Embedding};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    /// cost / min(w(S), w(V - S))
    Quotient,
    /// cost / (w(S) * w(V - S))
    Sparsity,
}

impl std::str::FromStr for Objective {
    type Err = Error;
    fn from_str(s: &str) -> Result<Objective> {
        match s {
            "quotient" => Ok(Objective::Quotient),
            "sparsity" => Ok(Objective::Sparsity),
            _ => Err(Error::InvalidParameter(format!("unknown objective `{s}`"))),
        }
    }
}

impl std::fmt::Display for Objective {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Objective::Quotient => "quotient",
            Objective::Sparsity => "sparsity",
        })
    }
}

impl Objective {
    /// `None` when a side has zero weight.
    pub fn value(self, cost: i64, ws: i64, wo: i64) -> Option<Frac> {
        let den = match self {
            Objective::Quotient => ws.min(wo) as i128,
            Objective::Sparsity => ws as i128 * wo as i128,
        };
        (den > 0).then(|| frac(cost as i128, den))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    pub objective: Objective,
    /// `in_side[v]` marks the side S; vertex 0 is never in S.
    pub in_side: Vec<bool>,
    pub cost: i64,
    pub weight_side: i64,
    pub weight_other: i64,
    pub value: Frac,
    pub cut_edges: Vec<usize>,
    /// Dual cycle certifying the cut, when the solver produced one
    /// (dual dart ids coincide with primal dart ids).
    pub witness: Option<Cycle>,
}

impl CutResult {
    /// Evaluates the bipartition from scratch.
    pub fn from_side(g: &Embedding, in_side: &[bool], objective: Objective) -> Result<CutResult> {
        let mut side: Vec<bool> = in_side.to_vec();
        if side[0] {
            side.iter_mut().for_each(|x| *x = !*x);
        }
        let (cost, ws, wo, cut_edges) = evaluate(g, &side);
        if !side.iter().any(|&x| x) {
            return Err(Error::NoCut);
        }
        let value = objective.value(cost, ws, wo).ok_or(Error::NoCut)?;
        Ok(CutResult {
            objective,
            in_side: side,
            cost,
            weight_side: ws,
            weight_other: wo,
            value,
            cut_edges,
            witness: None,
        })
    }

    pub fn side(&self) -> Vec<usize> {
        (0..self.in_side.len())
            .filter(|&v| self.in_side[v])
            .collect()
    }

    pub fn quotient(&self) -> Option<Frac> {
        Objective::Quotient.value(self.cost, self.weight_side, self.weight_other)
    }

    pub fn sparsity(&self) -> Option<Frac> {
        Objective::Sparsity.value(self.cost, self.weight_side, self.weight_other)
    }

    /// Recomputes everything from the side set and compares.
    pub fn verify(&self, g: &Embedding) -> bool {
        match CutResult::from_side(g, &self.in_side, self.objective) {
            Ok(r) => r.value == self.value && r.cost == self.cost && r.cut_edges == self.cut_edges,
            Err(_) => false,
        }
    }
}

/// (cost, w(S), w(V - S), crossing edges)
pub fn evaluate(g: &Embedding, in_side: &[bool]) -> (i64, i64, i64, Vec<usize>) {
    let mut cost = 0i64;
    let mut edges = Vec::new();
    for e in 0..g.num_edges() {
        let (a, b) = g.endpoints(e);
        if in_side[a] != in_side[b] {
            cost += g.cost(e);
            edges.push(e);
        }
    }
    let ws: i64 = (0..g.num_vertices())
        .filter(|&v| in_side[v])
        .map(|v| g.vertex_weight(v))
        .sum();
    (cost, ws, g.total_vertex_weight() - ws, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::gen;

    #[test]
    fn star_leaf_cut() {
        let g = gen::star(3, 1, 1);
        let r =
            CutResult::from_side(&g, &[false, true, false, false], Objective::Quotient).unwrap();
        assert_eq!(r.value, frac(1, 1));
        assert_eq!(r.sparsity(), Some(frac(1, 3)));
        assert!(r.verify(&g));
    }

    #[test]
    fn side_is_normalized_away_from_vertex_zero() {
        let g = gen::path(&[1, 1], &[1, 1, 1]);
        let r = CutResult::from_side(&g, &[true, false, false], Objective::Quotient).unwrap();
        assert_eq!(r.side(), vec![1, 2]);
    }
}
