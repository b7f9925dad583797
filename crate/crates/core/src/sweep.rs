//! Exhaustive search for vanishing discriminants on the five-vertex path.

use serde::{Deserialize, Serialize};

use crate::cartan::CartanMatrix;
use crate::families::FormulaFamily;
use crate::field::{v_p, Field, FieldElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolutionStatus {
    /// One of the three published solutions.
    Known,
    /// A known solution read from the other end of the path.
    Mirror,
    Additional,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSolution {
    pub labels: [u32; 4],
    /// Alpha values as field expressions in `theta`.
    pub alphas: [String; 4],
    pub status: SolutionStatus,
}

const KNOWN: [([u32; 4], [&str; 4]); 3] = [
    ([4, 3, 3, 4], ["2", "1", "1", "2"]),
    ([3, 5, 5, 3], ["1", "theta", "3-theta", "1"]),
    ([5, 3, 3, 5], ["theta", "1", "1", "3-theta"]),
];

/// All label tuples in `labels⁴` and root choices with `Δ = 0`, over `Q(τ)`.
/// Each hit is confirmed against the determinant.
pub fn sweep_path5(labels: &[u32]) -> Vec<SweepSolution> {
    let k = Field::golden();
    let roots: Vec<(u32, Vec<FieldElement>)> = labels
        .iter()
        .map(|&p| (p, v_p(p).and_then(|lp| lp.roots_in(&k)).unwrap_or_default()))
        .collect();
    let known: Vec<([u32; 4], [String; 4])> = KNOWN
        .iter()
        .map(|(l, a)| (*l, a.map(|s| crate::graph::parse_expr(&k, s).expect("valid").to_expr())))
        .collect();

    let mut out = Vec::new();
    let mut idx = [0usize; 4];
    let total = roots.len().pow(4);
    for code in 0..total {
        let mut c = code;
        for slot in idx.iter_mut().rev() {
            *slot = c % roots.len();
            c /= roots.len();
        }
        let choices: Vec<&Vec<FieldElement>> = idx.iter().map(|&i| &roots[i].1).collect();
        if choices.iter().any(|r| r.is_empty()) {
            continue;
        }
        let lab = idx.map(|i| roots[i].0);
        let mut pick = [0usize; 4];
        loop {
            let alphas: Vec<FieldElement> = (0..4).map(|t| choices[t][pick[t]].clone()).collect();
            let d = FormulaFamily::Path5.discriminant_formula(&k, &alphas);
            if d.is_zero() {
                let g = FormulaFamily::Path5.graph(&k, &alphas).expect("path graph");
                assert!(CartanMatrix::from_graph(&g).expect("cartan").discriminant().is_zero());
                let a: [String; 4] = std::array::from_fn(|t| alphas[t].to_expr());
                let mut rl = lab;
                rl.reverse();
                let mut ra = a.clone();
                ra.reverse();
                let status = if known.iter().any(|(l, ka)| *l == lab && *ka == a) {
                    SolutionStatus::Known
                } else if known.iter().any(|(l, ka)| *l == rl && *ka == ra) {
                    SolutionStatus::Mirror
                } else {
                    SolutionStatus::Additional
                };
                out.push(SweepSolution { labels: lab, alphas: a, status });
            }
            let mut t = 3;
            loop {
                pick[t] += 1;
                if pick[t] < choices[t].len() {
                    break;
                }
                pick[t] = 0;
                if t == 0 {
                    break;
                }
                t -= 1;
            }
            if pick.iter().all(|&x| x == 0) {
                break;
            }
        }
    }
    out
}
