//! Fast USS generation for generic braids and the conjugacy decision.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::CanonicalBraid;
use crate::error::{check_same_index, Error, Result};
use crate::stats::random::{sample_with, trial_rng};
use crate::summit::{
    cycling, generate_invariant_set, is_cyclically_weighted, reduce_to_sss, uss_representative,
    CandidatePolicy, InvariantSetOptions, InvariantSetResult, SetKind,
};

#[derive(Debug, Clone)]
pub struct FastUssResult {
    pub valid: bool,
    pub set: InvariantSetResult,
    /// `y = c^j(x)`.
    pub base: CanonicalBraid,
    pub cyclings_used: usize,
}

impl FastUssResult {
    pub fn contains(&self, y: &CanonicalBraid) -> bool {
        self.set.contains(y)
    }
}

/// The candidate USS `{c^i(y), τ(c^i(y))}` (even `inf`) or `{c^i(y)}`,
/// `i < 2ℓ` (odd `inf`), where `y = c^{⌊ℓ/2⌋}(x)`, plus validation.
///
/// If `y` is not yet cyclically weighted up to `ℓ` further cyclings are
/// tried; all are counted in `cyclings_used`.
pub fn fast_uss(x: &CanonicalBraid) -> FastUssResult {
    let n = x.n();
    let l = x.len();
    let mut y = x.clone();
    let mut w = CanonicalBraid::identity(n);
    let mut used = 0;
    let step = |y: &mut CanonicalBraid, w: &mut CanonicalBraid| {
        let (next, t) = cycling(y);
        w.mul_simple(&t);
        *y = next;
    };
    for _ in 0..l / 2 {
        step(&mut y, &mut w);
        used += 1;
    }
    let mut extra = 0;
    while !is_cyclically_weighted(&y) && extra < l {
        step(&mut y, &mut w);
        used += 1;
        extra += 1;
    }

    let mut members: HashMap<CanonicalBraid, CanonicalBraid> = HashMap::new();
    let delta = CanonicalBraid::delta_power(n, 1);
    let mut cur = y.clone();
    let mut wc = w;
    let even = y.inf().rem_euclid(2) == 0;
    let rounds = if even { l } else { 2 * l }.max(1);
    for _ in 0..rounds {
        members.entry(cur.clone()).or_insert_with(|| wc.clone());
        if even {
            members
                .entry(cur.tau_conjugate(1))
                .or_insert_with(|| wc.mul(&delta));
        }
        step(&mut cur, &mut wc);
    }

    let valid = is_cyclically_weighted(&y)
        && members.keys().all(|e| {
            e.inf() == y.inf()
                && e.sup() == y.sup()
                && is_cyclically_weighted(e)
                && members.contains_key(&cycling(e).0)
                && members.contains_key(&e.tau_conjugate(1))
        });
    FastUssResult {
        valid,
        set: InvariantSetResult::from_members(SetKind::Uss, members),
        base: y,
        cyclings_used: used,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Fast,
    Exact,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Conjugate,
    NotConjugate,
    /// Both fast sets validated and are disjoint; not a proof.
    NotConjugateFast,
    Unresolved,
}

/// Summit invariants `(inf_c, sup_c)` of both inputs when they differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub x: (i64, i64),
    pub y: (i64, i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetReport {
    pub explored: usize,
    pub limit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyCertificate {
    pub verdict: Verdict,
    /// `w` with `w⁻¹ x w = y`, checked by multiplication.
    pub witness: Option<CanonicalBraid>,
    pub separation: Option<Separation>,
    /// Stage that produced the verdict: `Fast` or `Exact`.
    pub mode: Mode,
    pub budget: Option<BudgetReport>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy)]
pub struct ConjugacyOptions {
    pub mode: Mode,
    /// Element budget for exact USS generation.
    pub budget: usize,
}

impl ConjugacyOptions {
    pub fn new(mode: Mode) -> Self {
        ConjugacyOptions {
            mode,
            budget: 1_000_000,
        }
    }
}

pub fn decide_conjugacy(
    x: &CanonicalBraid,
    y: &CanonicalBraid,
    mode: Mode,
) -> Result<ConjugacyCertificate> {
    decide_conjugacy_with(x, y, ConjugacyOptions::new(mode))
}

pub fn decide_conjugacy_with(
    x: &CanonicalBraid,
    y: &CanonicalBraid,
    opts: ConjugacyOptions,
) -> Result<ConjugacyCertificate> {
    check_same_index(x.n(), y.n())?;
    let start = Instant::now();
    let cert = |verdict, witness, separation, mode, budget| ConjugacyCertificate {
        verdict,
        witness,
        separation,
        mode,
        budget,
        elapsed: start.elapsed(),
    };
    let first_stage = if opts.mode == Mode::Exact {
        Mode::Exact
    } else {
        Mode::Fast
    };

    let (sx, wx) = reduce_to_sss(x);
    let (sy, wy) = reduce_to_sss(y);
    if (sx.inf(), sx.sup()) != (sy.inf(), sy.sup()) {
        let sep = Separation {
            x: (sx.inf(), sx.sup()),
            y: (sy.inf(), sy.sup()),
        };
        return Ok(cert(
            Verdict::NotConjugate,
            None,
            Some(sep),
            first_stage,
            None,
        ));
    }

    if opts.mode != Mode::Exact {
        let fx = fast_uss(&sx);
        let fy = fast_uss(&sy);
        let meet = if fx.contains(&fy.base) {
            Some(fy.base.clone())
        } else if fy.contains(&fx.base) {
            Some(fx.base.clone())
        } else {
            None
        };
        if let Some(m) = meet {
            // x ~ sx ~ m via wx·ux, and likewise for y.
            let tx = wx.mul(fx.set.witness(&m).expect("member"));
            let ty = wy.mul(fy.set.witness(&m).expect("member"));
            let w = tx.mul(&ty.invert());
            if x.conjugate(&w)? == *y {
                return Ok(cert(Verdict::Conjugate, Some(w), None, Mode::Fast, None));
            }
        } else if fx.valid && fy.valid && opts.mode == Mode::Fast {
            return Ok(cert(
                Verdict::NotConjugateFast,
                None,
                None,
                Mode::Fast,
                None,
            ));
        }
        if opts.mode == Mode::Fast {
            return Ok(cert(Verdict::Unresolved, None, None, Mode::Fast, None));
        }
    }

    let uss = match generate_invariant_set(
        &sx,
        InvariantSetOptions::new(SetKind::Uss)
            .policy(CandidatePolicy::Restricted)
            .budget(opts.budget),
    ) {
        Ok(u) => u,
        Err(Error::BudgetExhausted { explored, limit }) => {
            let report = BudgetReport { explored, limit };
            return Ok(cert(
                Verdict::Unresolved,
                None,
                None,
                Mode::Exact,
                Some(report),
            ));
        }
        Err(e) => return Err(e),
    };
    let (ry, wry) = uss_representative(&sy);
    match uss.witness(&ry) {
        Some(u) => {
            let w = wx.mul(u).mul(&wy.mul(&wry).invert());
            if x.conjugate(&w)? == *y {
                Ok(cert(Verdict::Conjugate, Some(w), None, Mode::Exact, None))
            } else {
                Ok(cert(Verdict::Unresolved, None, None, Mode::Exact, None))
            }
        }
        None => Ok(cert(Verdict::NotConjugate, None, None, Mode::Exact, None)),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ProbeRow {
    pub k: usize,
    pub trials: usize,
    /// Mean seconds per `fast_uss` call.
    pub fast_uss_mean: f64,
    pub fast_uss_max: f64,
    /// Mean seconds per fast-mode decision on `(x, w⁻¹xw)`.
    pub decide_mean: f64,
    pub decide_max: f64,
    pub valid_rate: f64,
    /// `decide_mean` relative to the previous row.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RuntimeReport {
    pub n: usize,
    pub seed: u64,
    pub rows: Vec<ProbeRow>,
}

/// Times `fast_uss` and fast decisions on seeded random braids for
/// `k, 2k, …, 2^doublings·k`. Trials run sequentially so timings are
/// not distorted by contention.
pub fn runtime_probe(
    n: usize,
    k: usize,
    trials: usize,
    seed: u64,
    doublings: u32,
) -> RuntimeReport {
    assert!(trials >= 1 && k >= 1 && n >= 2);
    let mut rows: Vec<ProbeRow> = Vec::new();
    for d in 0..=doublings {
        let kk = k << d;
        let times: Vec<(f64, f64, bool)> = (0..trials)
            .map(|t| {
                let mut rng = trial_rng(seed ^ kk as u64, t as u64);
                let x = sample_with(n, kk, (0, 0), &mut rng).braid;
                let w = sample_with(n, kk, (0, 0), &mut rng).braid;
                let y = x.conjugate(&w).expect("same index");
                let t0 = Instant::now();
                let f = fast_uss(&x);
                let t1 = Instant::now();
                let _ = decide_conjugacy(&x, &y, Mode::Fast);
                let t2 = Instant::now();
                ((t1 - t0).as_secs_f64(), (t2 - t1).as_secs_f64(), f.valid)
            })
            .collect();
        let mean = |v: &mut dyn Iterator<Item = f64>| v.sum::<f64>() / trials as f64;
        let decide_mean = mean(&mut times.iter().map(|t| t.1));
        rows.push(ProbeRow {
            k: kk,
            trials,
            fast_uss_mean: mean(&mut times.iter().map(|t| t.0)),
            fast_uss_max: times.iter().map(|t| t.0).fold(0.0, f64::max),
            decide_mean,
            decide_max: times.iter().map(|t| t.1).fold(0.0, f64::max),
            valid_rate: times.iter().filter(|t| t.2).count() as f64 / trials as f64,
            ratio: rows.last().map(|r| decide_mean / r.decide_mean),
        });
    }
    RuntimeReport { n, seed, rows }
}

/// Decides many pairs in parallel; output order follows input order.
pub fn decide_batch(
    pairs: &[(CanonicalBraid, CanonicalBraid)],
    opts: ConjugacyOptions,
) -> Vec<Result<ConjugacyCertificate>> {
    pairs
        .par_iter()
        .map(|(x, y)| decide_conjugacy_with(x, y, opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{normalize, BraidWord};

    fn b(n: usize, letters: &[i64]) -> CanonicalBraid {
        normalize(&BraidWord::from_signed(n, letters).unwrap())
    }

    #[test]
    fn fast_uss_examples() {
        let r = fast_uss(&b(3, &[1, 1]));
        assert!(r.valid);
        assert_eq!(r.set.element_count(), 2);
        assert!(r.contains(&b(3, &[2, 2])));

        let r = fast_uss(&b(3, &[2, 1, 1]));
        assert!(r.valid);
        assert_eq!(r.base, CanonicalBraid::delta_power(3, 1));
        assert_eq!(r.set.element_count(), 1);
    }

    #[test]
    fn fast_witnesses_conjugate() {
        let x = b(
            5,
            &[
                1, 2, 3, 4, 2, 1, 3, 2, 4, 3, 1, 2, 1, 4, 3, 2, 1, 3, 4, 2, 1,
            ],
        );
        let r = fast_uss(&x);
        for e in r.set.elements() {
            assert_eq!(&x.conjugate(r.set.witness(e).unwrap()).unwrap(), e);
        }
    }

    #[test]
    fn decision_examples() {
        let x = b(3, &[1, 1]);
        let y = b(3, &[2, 2]);
        for mode in [Mode::Fast, Mode::Exact, Mode::Auto] {
            let c = decide_conjugacy(&x, &y, mode).unwrap();
            assert_eq!(c.verdict, Verdict::Conjugate, "{mode:?}");
            assert_eq!(x.conjugate(c.witness.as_ref().unwrap()).unwrap(), y);
        }
        let c = decide_conjugacy(&x, &b(3, &[1, 1, 1]), Mode::Auto).unwrap();
        assert_eq!(c.verdict, Verdict::NotConjugate);
        assert!(c.separation.is_some());
    }

    #[test]
    fn exact_negative_without_separation() {
        // Equal summit invariants, but a 4-cycle and a transposition.
        let x = b(4, &[1, 2, 3, 1, 1]);
        let z = b(4, &[1, 1, 2, 3, 3]);
        let c = decide_conjugacy(&x, &z, Mode::Auto).unwrap();
        assert_eq!(c.verdict, Verdict::NotConjugate);
        assert!(c.separation.is_none());
        assert_eq!(c.mode, Mode::Exact);
        let w = b(4, &[2, -1, 3, 3, -2]);
        let y = x.conjugate(&w).unwrap();
        let c = decide_conjugacy(&x, &y, Mode::Exact).unwrap();
        assert_eq!(c.verdict, Verdict::Conjugate);
        assert_eq!(x.conjugate(c.witness.as_ref().unwrap()).unwrap(), y);
    }

    #[test]
    fn mismatched_index() {
        assert!(decide_conjugacy(&b(3, &[1]), &b(4, &[1]), Mode::Auto).is_err());
    }
}
