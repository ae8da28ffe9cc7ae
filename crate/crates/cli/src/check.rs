//! Randomized soundness run for the rearrangement bounds.

use halfdisk::rearrangement::{
    self, bound_corollary_first, bound_corollary_second, bound_theorem_first, bound_theorem_second_best,
    max_norm_over_permutations, sampled_max_norm, zonotope_max_norm, MAX_PERMUTATION_N, MAX_SUBSET_N,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Slack allowed before a ratio above one counts as a violation.
pub const SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckParams {
    pub trials: usize,
    pub n_max: usize,
    pub d: usize,
    pub seed: u64,
}

impl Default for CheckParams {
    fn default() -> Self {
        Self {
            trials: 1000,
            n_max: 8,
            d: 2,
            seed: 0,
        }
    }
}

/// The bounds compared against the largest rearranged sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    MedianShift,
    HalfSum,
    Zonotope,
    CeilHalf,
}

pub const BOUNDS: [BoundName; 4] = [
    BoundName::MedianShift,
    BoundName::HalfSum,
    BoundName::Zonotope,
    BoundName::CeilHalf,
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundSummary {
    pub bound: BoundName,
    /// Largest `lhs / bound` seen (0 when both sides vanish).
    pub max_ratio: f64,
    pub violations: usize,
}

/// An instance where one bound is strictly smaller than the other.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncomparabilityWitness {
    pub trial: usize,
    pub vectors: Vec<Vec<f64>>,
    pub alphas: Vec<f64>,
    pub median_shift_bound: f64,
    pub zonotope_bound: f64,
    pub zonotope_j: usize,
    pub zonotope_gamma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub trials: usize,
    pub n_max: usize,
    pub d: usize,
    pub seed: u64,
    /// Trials whose maximum was estimated by sampling rather than enumerated.
    pub sampled_trials: usize,
    pub bounds: Vec<BoundSummary>,
    /// Largest `max_W ||s(W)|| / (sum ||v_i|| / 2)`.
    pub zonotope_max_ratio: f64,
    pub zonotope_violations: usize,
    pub median_shift_better: Option<IncomparabilityWitness>,
    pub zonotope_better: Option<IncomparabilityWitness>,
}

impl CheckSummary {
    pub fn violations(&self) -> usize {
        self.bounds.iter().map(|b| b.violations).sum::<usize>() + self.zonotope_violations
    }
}

struct Trial {
    sampled: bool,
    /// `(lhs, bound)` per entry of [`BOUNDS`].
    pairs: [(f64, f64); 4],
    zonotope: (f64, f64),
    witness: IncomparabilityWitness,
}

fn ratio(lhs: f64, bound: f64) -> f64 {
    if bound > 0.0 {
        lhs / bound
    } else if lhs <= SLACK {
        0.0
    } else {
        f64::INFINITY
    }
}

fn run_trial(index: usize, n: usize, d: usize, seed: u64) -> CliResult<Trial> {
    let (v, _) = rearrangement::random_zero_sum_config::<f64>(n, d, seed)?.sorted_by_norm();
    let a = rearrangement::random_coeff_seq::<f64>(n, seed.rotate_left(32) ^ 0x9e37_79b9_7f4a_7c15);
    let (lhs, sampled) = if n <= MAX_PERMUTATION_N {
        (max_norm_over_permutations(&v, &a)?.0, false)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (sampled_max_norm(&v, &a, 10 * n, &mut rng)?.0, true)
    };
    let first = bound_theorem_first(&v, &a)?;
    let second = bound_theorem_second_best(&v, &a)?;
    Ok(Trial {
        sampled,
        pairs: [
            (lhs, first),
            (lhs, bound_corollary_first(&v, &a)?),
            (lhs, second.bound),
            (lhs, bound_corollary_second(&v, &a)?),
        ],
        zonotope: (zonotope_max_norm(&v)?, 0.5 * v.total_norm()),
        witness: IncomparabilityWitness {
            trial: index,
            vectors: v.vectors().to_vec(),
            alphas: a.alphas().to_vec(),
            median_shift_bound: first,
            zonotope_bound: second.bound,
            zonotope_j: second.j,
            zonotope_gamma: second.gamma,
        },
    })
}

/// Runs `trials` seeded trials in parallel; results are merged in trial
/// order, so the summary depends only on the parameters.
pub fn check_inequalities(p: CheckParams) -> CliResult<CheckSummary> {
    if p.trials == 0 {
        return Err(CliError::input("--trials must be at least 1"));
    }
    if !(2..=MAX_SUBSET_N).contains(&p.n_max) {
        return Err(CliError::input(format!("--n-max must lie in 2..={MAX_SUBSET_N}, got {}", p.n_max)));
    }
    if p.d == 0 {
        return Err(CliError::input("--d must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let plan: Vec<(usize, u64)> = (0..p.trials)
        .map(|_| (rng.gen_range(2..=p.n_max), rng.gen()))
        .collect();
    let results: Vec<Trial> = plan
        .par_iter()
        .enumerate()
        .map(|(i, &(n, seed))| run_trial(i, n, p.d, seed))
        .collect::<CliResult<_>>()?;

    let mut bounds: Vec<BoundSummary> = BOUNDS
        .iter()
        .map(|&bound| BoundSummary {
            bound,
            max_ratio: 0.0,
            violations: 0,
        })
        .collect();
    let mut summary = CheckSummary {
        trials: p.trials,
        n_max: p.n_max,
        d: p.d,
        seed: p.seed,
        sampled_trials: 0,
        bounds: Vec::new(),
        zonotope_max_ratio: 0.0,
        zonotope_violations: 0,
        median_shift_better: None,
        zonotope_better: None,
    };
    for t in results {
        summary.sampled_trials += usize::from(t.sampled);
        for (b, &(lhs, bound)) in bounds.iter_mut().zip(&t.pairs) {
            b.max_ratio = b.max_ratio.max(ratio(lhs, bound));
            b.violations += usize::from(lhs > bound + SLACK);
        }
        let (z, half) = t.zonotope;
        summary.zonotope_max_ratio = summary.zonotope_max_ratio.max(ratio(z, half));
        summary.zonotope_violations += usize::from(z > half + SLACK);

        let w = &t.witness;
        if w.median_shift_bound < w.zonotope_bound - SLACK && summary.median_shift_better.is_none() {
            summary.median_shift_better = Some(t.witness.clone());
        } else if w.zonotope_bound < w.median_shift_bound - SLACK && summary.zonotope_better.is_none() {
            summary.zonotope_better = Some(t.witness.clone());
        }
    }
    summary.bounds = bounds;
    Ok(summary)
}
