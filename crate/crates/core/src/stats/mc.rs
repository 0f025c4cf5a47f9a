//! Seeded Monte-Carlo checks of the probabilistic estimates on random braids.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::descent::{DescentBound, Fixed, Scalar};
use super::random::{random_permutation, sample_with, trial_rng, PRNG_NAME};
use crate::canonical::CanonicalBraid;
use crate::error::{Error, Result};
use crate::perm::PermutationBraid;
use crate::summit::{
    self, cycling, generate_invariant_set, is_cyclically_weighted, CandidatePolicy,
    InvariantSetOptions, SetKind,
};

pub const MC_SCHEMA_VERSION: u32 = 1;

/// Range of `u` for experiments stated for `Δ^u x₁⋯x_k`.
pub const DELTA_RANGE: (i64, i64) = (-2, 2);

/// Element budget for USS generation inside `orbit-structure`.
pub const ORBIT_BUDGET: usize = 20_000;

/// Number of `a` sampled by `cut-head` when `n! > CUT_HEAD_ALL`.
pub const CUT_HEAD_ALL: usize = 720;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    /// `H(x) = H(xa)` for a random simple `a`.
    HeadStability,
    /// `T(ax) = T(x)` for every simple `a`.
    CutHead,
    /// `Δ^u x₁⋯x_k` is weakly cyclically weighted.
    Wcw,
    /// `Δ^u x₁⋯x_k` is already in its super summit set.
    Sss,
    /// Some `c^j(x)`, `j ≤ ⌊k/2⌋`, is cyclically weighted.
    CwAfterCycling,
    /// The minimal cut-head conjugator of a cyclically weighted `y` is `τ^u(H(y))`.
    MinimalConjugator,
    /// `USS(x) = O(y) ∪ O(τ(y))`.
    OrbitStructure,
    /// Mean number of descents of `x₁⋯x_k`.
    DescentCount,
    /// Per-generator descent rates `D(n,k,i)`.
    DescentProfile,
}

impl Experiment {
    pub const ALL: [Experiment; 9] = [
        Experiment::HeadStability,
        Experiment::CutHead,
        Experiment::Wcw,
        Experiment::Sss,
        Experiment::CwAfterCycling,
        Experiment::MinimalConjugator,
        Experiment::OrbitStructure,
        Experiment::DescentCount,
        Experiment::DescentProfile,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::HeadStability => "head-stability",
            Experiment::CutHead => "cut-head",
            Experiment::Wcw => "wcw",
            Experiment::Sss => "sss",
            Experiment::CwAfterCycling => "cw-after-cycling",
            Experiment::MinimalConjugator => "minimal-conjugator",
            Experiment::OrbitStructure => "orbit-structure",
            Experiment::DescentCount => "descent-count",
            Experiment::DescentProfile => "descent-profile",
        }
    }

    fn uses_delta(self) -> bool {
        matches!(
            self,
            Experiment::Wcw
                | Experiment::Sss
                | Experiment::CwAfterCycling
                | Experiment::MinimalConjugator
                | Experiment::OrbitStructure
        )
    }

    /// `(multiplier c, k')` for a stated success bound `1 − min(c·d(n,k'), 1)`.
    fn bound_shape(self, k: usize) -> Option<(f64, usize)> {
        match self {
            Experiment::HeadStability => Some((1.0, k)),
            Experiment::CutHead | Experiment::Wcw if k >= 3 => Some((2.0, k)),
            Experiment::Sss if k >= 3 => Some((4.0, k)),
            Experiment::CwAfterCycling | Experiment::OrbitStructure if k >= 12 => {
                Some((2.0, k / 4))
            }
            Experiment::MinimalConjugator if k >= 3 => Some((2.0, k - 1)),
            _ => None,
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::UnknownExperiment(s.to_string()))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct McReport {
    pub schema_version: u32,
    pub experiment: Experiment,
    pub n: usize,
    pub k: usize,
    pub samples: u64,
    pub seed: u64,
    pub prng: String,
    /// Samples violating `inf = u`, `sup = u + k`.
    pub violations: u64,
    /// Samples the statistic was computed over.
    pub used: u64,
    pub successes: u64,
    /// Success rate, or the mean for `descent-count`.
    pub estimate: Estimate,
    /// Standard error of `estimate`.
    pub std_error: f64,
    /// The stated lower bound on the success rate, or for `descent-count`
    /// the upper bound `(n−1)·D̄(n,k)`.
    pub theory: Option<f64>,
    pub clears_theory: Option<bool>,
    /// Success rate over the samples with `inf = u`, `sup = u + k`.
    pub conditioned: Option<Estimate>,
    pub profile: Option<Vec<Estimate>>,
    pub note: Option<String>,
}

enum Outcome {
    /// Precondition of the experiment not met; not counted.
    Skipped,
    Pass(bool),
    Count(u32),
    Profile(Vec<bool>),
}

pub const Z95: f64 = 1.959_963_984_540_054;

/// Wilson score interval at 95 %.
pub fn wilson(successes: u64, trials: u64) -> Estimate {
    if trials == 0 {
        return Estimate {
            value: f64::NAN,
            ci_low: 0.0,
            ci_high: 1.0,
        };
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / (1.0 + z2 / n);
    Estimate {
        value: p,
        ci_low: (centre - half).max(0.0),
        ci_high: (centre + half).min(1.0),
    }
}

/// Runs a named experiment; identical inputs give identical reports
/// regardless of thread count.
pub fn mc_experiment(
    experiment: Experiment,
    n: usize,
    k: usize,
    samples: u64,
    seed: u64,
) -> Result<McReport> {
    if n < 2 {
        return Err(Error::IndexTooSmall(n));
    }
    if samples == 0 || k == 0 {
        return Err(Error::InvalidArgument(
            "samples and k must be positive".into(),
        ));
    }
    let outcomes: Vec<(bool, Outcome)> = (0..samples)
        .into_par_iter()
        .map(|t| trial(experiment, n, k, &mut trial_rng(seed, t)))
        .collect();

    let mut violations = 0u64;
    let mut used = 0u64;
    let mut successes = 0u64;
    let mut sum = 0f64;
    let mut sum_sq = 0f64;
    let mut profile_hits = vec![0u64; n - 1];
    let (mut cond_used, mut cond_successes) = (0u64, 0u64);
    for (violated, o) in &outcomes {
        violations += *violated as u64;
        match o {
            Outcome::Skipped => {}
            Outcome::Pass(ok) => {
                used += 1;
                successes += *ok as u64;
                if !violated {
                    cond_used += 1;
                    cond_successes += *ok as u64;
                }
            }
            Outcome::Count(c) => {
                used += 1;
                sum += *c as f64;
                sum_sq += (*c as f64).powi(2);
            }
            Outcome::Profile(hits) => {
                used += 1;
                for (acc, &h) in profile_hits.iter_mut().zip(hits) {
                    *acc += h as u64;
                }
            }
        }
    }

    let bound = DescentBound::<Fixed>::new(n, k);
    let d = |kk: usize| bound.d_estimate(n, kk).as_f64();
    let mut note = None;
    let conditioned = outcomes
        .iter()
        .any(|(_, o)| matches!(o, Outcome::Pass(_)))
        .then(|| wilson(cond_successes, cond_used));
    let (estimate, std_error, theory, clears, profile) = match experiment {
        Experiment::DescentCount => {
            let m = used.max(1) as f64;
            let mean = sum / m;
            let var = (sum_sq / m - mean * mean).max(0.0) * m / (m - 1.0).max(1.0);
            let se = (var / m).sqrt();
            let est = Estimate {
                value: mean,
                ci_low: mean - Z95 * se,
                ci_high: mean + Z95 * se,
            };
            let upper = (n - 1) as f64 * bound.value(n, k).as_f64();
            let clears = est.ci_low <= upper;
            (est, se, Some(upper), Some(clears), None)
        }
        Experiment::DescentProfile => {
            let rates: Vec<Estimate> = profile_hits.iter().map(|&h| wilson(h, used)).collect();
            let total: f64 = rates.iter().map(|e| e.value).sum();
            let se = (total * (1.0 - total / (n - 1) as f64).max(0.0) / used.max(1) as f64).sqrt();
            let est = Estimate {
                value: total,
                ci_low: total - Z95 * se,
                ci_high: total + Z95 * se,
            };
            let upper = bound.value(n, k).as_f64();
            let clears = rates.iter().all(|e| e.ci_low <= upper);
            (est, se, Some(upper), Some(clears), Some(rates))
        }
        _ => {
            let est = wilson(successes, used);
            let p = est.value;
            let se = (p * (1.0 - p) / used.max(1) as f64).sqrt();
            let theory = experiment
                .bound_shape(k)
                .filter(|&(_, kk)| kk >= 1)
                .map(|(c, kk)| 1.0 - (c * d(kk)).min(1.0));
            if theory.is_none() {
                note = Some("stated bound needs a larger k".to_string());
            }
            if experiment == Experiment::CutHead && factorial_exceeds(n, CUT_HEAD_ALL) {
                note = Some(format!("{CUT_HEAD_ALL} sampled a per braid"));
            }
            let clears = theory.map(|t| est.ci_low >= t);
            (est, se, theory, clears, None)
        }
    };

    Ok(McReport {
        schema_version: MC_SCHEMA_VERSION,
        experiment,
        n,
        k,
        samples,
        seed,
        prng: PRNG_NAME.to_string(),
        violations,
        used,
        successes,
        estimate,
        std_error,
        theory,
        clears_theory: clears,
        conditioned,
        profile,
        note,
    })
}

fn factorial_exceeds(n: usize, limit: usize) -> bool {
    let mut f = 1usize;
    for i in 2..=n {
        f = f.saturating_mul(i);
    }
    f > limit
}

fn descents_of(x: &CanonicalBraid) -> Vec<bool> {
    let n = x.n();
    if x.inf() > 0 {
        return vec![true; n - 1];
    }
    let mut out = vec![false; n - 1];
    if let Some(h) = x.factors().first() {
        for g in h.starting_set() {
            out[g.get() - 1] = true;
        }
    }
    out
}

/// `x ∧ Δ` for a braid with `inf ≥ 0`.
fn head(x: &CanonicalBraid) -> PermutationBraid {
    match x.factors().first() {
        _ if x.inf() > 0 => PermutationBraid::delta(x.n()),
        Some(h) => h.clone(),
        None => PermutationBraid::identity(x.n()),
    }
}

/// Last factor of the left-weighted form of a braid with `inf ≥ 0`.
fn tail(x: &CanonicalBraid) -> PermutationBraid {
    match x.factors().last() {
        Some(t) => t.clone(),
        None if x.inf() > 0 => PermutationBraid::delta(x.n()),
        None => PermutationBraid::identity(x.n()),
    }
}

/// Runs one trial; the flag records whether `inf = u`, `sup = u + k` fails.
fn trial<R: Rng>(e: Experiment, n: usize, k: usize, rng: &mut R) -> (bool, Outcome) {
    let range = if e.uses_delta() { DELTA_RANGE } else { (0, 0) };
    let sample = sample_with(n, k, range, rng);
    let x = sample.braid;
    let u = sample.delta_power;
    let violated = x.inf() != u || x.sup() != u + k as i64;
    let outcome = match e {
        Experiment::DescentCount => {
            Outcome::Count(descents_of(&x).iter().filter(|&&b| b).count() as u32)
        }
        Experiment::DescentProfile => Outcome::Profile(descents_of(&x)),
        Experiment::HeadStability => {
            let a = random_permutation(n, rng);
            let mut xa = x.clone();
            xa.mul_simple(&a);
            Outcome::Pass(head(&x) == head(&xa))
        }
        Experiment::CutHead => {
            let t = tail(&x);
            let tails_agree = |a: PermutationBraid| {
                let ax = CanonicalBraid::from_factors(
                    n,
                    0,
                    std::iter::once(a).chain(sample.factors.iter().cloned()),
                );
                tail(&ax) == t
            };
            let ok = if factorial_exceeds(n, CUT_HEAD_ALL) {
                (0..CUT_HEAD_ALL).all(|_| tails_agree(random_permutation(n, rng)))
            } else {
                PermutationBraid::all(n).all(tails_agree)
            };
            Outcome::Pass(ok)
        }
        Experiment::Wcw => Outcome::Pass(summit::is_weakly_cyclically_weighted(&x)),
        Experiment::Sss => {
            let (y, _) = summit::reduce_to_sss(&x);
            Outcome::Pass(y.inf() == x.inf() && y.sup() == x.sup())
        }
        Experiment::CwAfterCycling => Outcome::Pass(cycle_to_cw(&x, k / 2).is_some()),
        Experiment::MinimalConjugator => match cycle_to_cw(&x, k / 2) {
            Some(y) if !y.is_empty() => Outcome::Pass(cut_head_is_minimal(&y)),
            _ => Outcome::Skipped,
        },
        Experiment::OrbitStructure => {
            let opts = InvariantSetOptions::new(SetKind::Uss)
                .policy(CandidatePolicy::Restricted)
                .budget(ORBIT_BUDGET);
            let Ok(uss) = generate_invariant_set(&x, opts) else {
                return (violated, Outcome::Pass(false));
            };
            let y = uss.orbits[0].elements[0].clone();
            let mut expected: std::collections::HashSet<CanonicalBraid> =
                summit::cycling_orbit(&y).elements.into_iter().collect();
            expected.extend(summit::cycling_orbit(&y.tau_conjugate(1)).elements);
            let ok =
                expected.len() == uss.element_count() && expected.iter().all(|e| uss.contains(e));
            Outcome::Pass(ok)
        }
    };
    (violated, outcome)
}

fn cycle_to_cw(x: &CanonicalBraid, max_j: usize) -> Option<CanonicalBraid> {
    let mut y = x.clone();
    for j in 0..=max_j {
        if is_cyclically_weighted(&y) {
            return Some(y);
        }
        if j < max_j {
            y = cycling(&y).0;
        }
    }
    None
}

/// No proper non-trivial prefix of `τ^u(H(y))` conjugates `y` into its USS.
fn cut_head_is_minimal(y: &CanonicalBraid) -> bool {
    let t = y.factors()[0].tau(y.inf());
    t.left_prefixes()
        .into_iter()
        .filter(|g| !g.is_identity() && *g != t)
        .all(|g| {
            let z = y.conjugate_by_simple(&g);
            !(z.inf() == y.inf() && z.sup() == y.sup() && summit::is_cycling_periodic(&z))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for e in Experiment::ALL {
            assert_eq!(e.name().parse::<Experiment>().unwrap(), e);
        }
        assert!(matches!(
            "nope".parse::<Experiment>(),
            Err(Error::UnknownExperiment(_))
        ));
    }

    #[test]
    fn wilson_interval() {
        let e = wilson(50, 100);
        assert!((e.value - 0.5).abs() < 1e-12);
        assert!((e.ci_low - 0.4038).abs() < 1e-3 && (e.ci_high - 0.5962).abs() < 1e-3);
        let z = wilson(0, 10);
        assert_eq!(z.ci_low, 0.0);
        assert!(z.ci_high > 0.2);
    }

    #[test]
    fn reproducible() {
        let a = mc_experiment(Experiment::HeadStability, 6, 5, 500, 9).unwrap();
        let b = mc_experiment(Experiment::HeadStability, 6, 5, 500, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn one_factor_descents() {
        let r = mc_experiment(Experiment::DescentCount, 7, 1, 20_000, 3).unwrap();
        assert!((r.estimate.value - 3.0).abs() < 4.0 * r.std_error, "{r:?}");
        let p = mc_experiment(Experiment::DescentProfile, 5, 1, 20_000, 4).unwrap();
        for e in p.profile.unwrap() {
            assert!(e.ci_low < 0.5 && 0.5 < e.ci_high, "{e:?}");
        }
    }

    #[test]
    fn every_experiment_runs() {
        for e in Experiment::ALL {
            let r = mc_experiment(e, 4, 12, 40, 1).unwrap();
            assert_eq!(r.experiment, e);
            assert!(r.used <= 40 && r.violations <= 40);
        }
    }
}
