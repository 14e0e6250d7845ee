//! Exact minimum quotient cut and sparsest cut.

mod bisection;
mod layered;
mod separator;

pub use bisection::{min_bisection_small, Bisection, MAX_CORE};
pub(crate) use layered::cycle_cuts;
pub use layered::exact_mqc_layered;
pub use separator::{
    balanced_separator, exact_mqc_separator, triangulate, triangulate_except, Separator,
    RECURSION_CUTOFF,
};

use crate::cut::{CutResult, Objective};
use crate::error::{Error, Result};
use crate::planar::Embedding;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Layered,
    Separator,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Method> {
        match s {
            "layered" => Ok(Method::Layered),
            "separator" => Ok(Method::Separator),
            _ => Err(Error::InvalidParameter(format!("unknown method `{s}`"))),
        }
    }
}

pub fn solve(g: &Embedding, objective: Objective, method: Method) -> Result<CutResult> {
    match method {
        Method::Layered => exact_mqc_layered(g, objective),
        Method::Separator => exact_mqc_separator(g, objective),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frac::frac;
    use crate::oracle::{brute_optimum, Budget};
    use crate::planar::gen::{self, RandomSpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_known_optima() {
        let sq = gen::cycle(&[1; 4], &[1; 4]);
        assert_eq!(
            exact_mqc_layered(&sq, Objective::Quotient).unwrap().value,
            frac(1, 1)
        );
        let star = gen::star(3, 1, 1);
        assert_eq!(
            exact_mqc_layered(&star, Objective::Quotient).unwrap().value,
            frac(1, 1)
        );
        let tri = gen::cycle(&[1; 3], &[1; 3]);
        assert_eq!(
            exact_mqc_separator(&tri, Objective::Quotient)
                .unwrap()
                .value,
            frac(2, 1)
        );
    }

    #[test]
    fn single_vertex_has_no_cut() {
        let g = Embedding::from_rotation(1, &[], &[vec![]], &[3]).unwrap();
        assert_eq!(
            exact_mqc_layered(&g, Objective::Quotient),
            Err(Error::NoCut)
        );
    }

    #[test]
    fn matches_brute_force_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for i in 0..60 {
            let spec = RandomSpec {
                n: 2 + i % 9,
                max_cost: 20,
                max_weight: 5,
                keep: 0.6,
            };
            let g = gen::random_planar(spec, &mut rng);
            for obj in [Objective::Quotient, Objective::Sparsity] {
                let want = brute_optimum(&g, obj, &Budget::default())
                    .unwrap()
                    .map(|x| x.0);
                for m in [Method::Layered, Method::Separator] {
                    let got = solve(&g, obj, m).ok();
                    assert_eq!(
                        got.as_ref().map(|c| c.value),
                        want,
                        "instance {i} {obj} {m:?}"
                    );
                    if let Some(c) = got {
                        assert!(c.verify(&g));
                    }
                }
            }
        }
    }

    #[test]
    fn grid_methods_agree() {
        let g = gen::grid(7, 7, |e| 1 + (e as i64 * 7) % 5, |v| (v as i64 * 3) % 4);
        for obj in [Objective::Quotient, Objective::Sparsity] {
            let a = exact_mqc_layered(&g, obj).unwrap();
            let b = exact_mqc_separator(&g, obj).unwrap();
            assert_eq!(a.value, b.value);
        }
    }
}
