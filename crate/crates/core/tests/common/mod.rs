//! Seeded generators and property checks shared by the integration tests
//! and the acceptance harness.

#![allow(dead_code)]

use garside::stats::random::sample_with;
use garside::stats::trial_rng;
use garside::summit::{
    cycling, decycling, generate_invariant_set, is_cyclically_weighted, reduce_to_sss,
    uss_representative, InvariantSetOptions, SetKind,
};
use garside::{normalize, BraidWord, CanonicalBraid, Letter, PermutationBraid, Side};
use rand::Rng;

pub type Check = Result<(), String>;

pub fn random_word<R: Rng>(n: usize, len: usize, rng: &mut R) -> BraidWord {
    let letters = (0..len)
        .map(|_| {
            if rng.random_range(0..12) == 0 {
                Letter::Delta {
                    inverse: rng.random(),
                }
            } else {
                Letter::Sigma {
                    index: rng.random_range(1..n),
                    inverse: rng.random(),
                }
            }
        })
        .collect();
    BraidWord::new(n, letters).expect("indices in range")
}

/// `Δ^u x₁⋯x_k` with `u ∈ [-2, 2]`.
pub fn random_braid(seed: u64, trial: u64, n: usize, k: usize) -> CanonicalBraid {
    sample_with(n, k, (-2, 2), &mut trial_rng(seed, trial)).braid
}

fn concat(a: &BraidWord, b: &BraidWord) -> BraidWord {
    let letters = a.letters().iter().chain(b.letters()).cloned().collect();
    BraidWord::new(a.n(), letters).unwrap()
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Meet/join laws and `τ`-equivariance over all of `S_n`.
pub fn lattice_laws(n: usize) -> Check {
    let all: Vec<PermutationBraid> = PermutationBraid::all(n).collect();
    let meet = |a: &PermutationBraid, b: &PermutationBraid| a.meet(b, Side::Left).unwrap();
    let join = |a: &PermutationBraid, b: &PermutationBraid| a.join(b, Side::Left).unwrap();
    for a in &all {
        for b in &all {
            let (m, j) = (meet(a, b), join(a, b));
            ensure!(
                m == meet(b, a) && j == join(b, a),
                "commutativity at {a:?} {b:?}"
            );
            ensure!(
                meet(a, &j) == *a && join(a, &m) == *a,
                "absorption at {a:?} {b:?}"
            );
            ensure!(
                m.is_left_subword(a).unwrap() && m.is_left_subword(b).unwrap(),
                "meet is not below its arguments at {a:?} {b:?}"
            );
            ensure!(m.tau(1) == meet(&a.tau(1), &b.tau(1)), "tau at {a:?} {b:?}");
            for c in &all {
                ensure!(meet(&m, c) == meet(a, &meet(b, c)), "meet associativity");
                ensure!(join(&j, c) == join(a, &join(b, c)), "join associativity");
            }
        }
    }
    Ok(())
}

/// Associativity, inverses, idempotence of normalization and
/// `inf(x⁻¹) = −sup(x)` on `count` random word triples.
pub fn group_laws(count: u64, seed: u64) -> Check {
    for t in 0..count {
        let mut rng = trial_rng(seed, t);
        let n = rng.random_range(3..=7);
        let words: Vec<BraidWord> = (0..3)
            .map(|_| {
                let len = rng.random_range(0..=40);
                random_word(n, len, &mut rng)
            })
            .collect();
        let [a, b, c] = [0, 1, 2].map(|i| normalize(&words[i]));
        let ab_c = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let a_bc = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        ensure!(ab_c == a_bc, "associativity fails for trial {t}");
        ensure!(
            normalize(&concat(&words[0], &words[1])) == a.multiply(&b).unwrap(),
            "product of words, trial {t}"
        );
        ensure!(
            a.multiply(&a.invert()).unwrap().is_identity(),
            "x·x⁻¹ ≠ e, trial {t}"
        );
        ensure!(
            a.invert().multiply(&a).unwrap().is_identity(),
            "x⁻¹·x ≠ e, trial {t}"
        );
        ensure!(
            normalize(&a.to_word()) == a,
            "normalize is not idempotent, trial {t}"
        );
        ensure!(a.invert().inf() == -a.sup(), "inf/sup duality, trial {t}");
        for x in [&a, &ab_c, &a.invert()] {
            x.validate()
                .map_err(|e| format!("invalid form, trial {t}: {e}"))?;
        }
    }
    Ok(())
}

/// Every reported conjugator conjugates as claimed.
pub fn witness_identities(count: u64, seed: u64) -> Check {
    for t in 0..count {
        let n = 3 + (t % 4) as usize;
        let x = random_braid(seed, t, n, 2 + (t % 7) as usize);
        let (c, g) = cycling(&x);
        ensure!(
            x.conjugate(&CanonicalBraid::from_simple(&g)).unwrap() == c,
            "cycling witness, trial {t}"
        );
        let (d, w) = decycling(&x);
        ensure!(
            x.conjugate(&w).unwrap() == d,
            "decycling witness, trial {t}"
        );
        let (s, w) = reduce_to_sss(&x);
        ensure!(x.conjugate(&w).unwrap() == s, "SSS witness, trial {t}");
        ensure!(
            s.inf() >= x.inf() && s.sup() <= x.sup(),
            "SSS reduction widened, trial {t}"
        );
        let (u, w) = uss_representative(&x);
        ensure!(x.conjugate(&w).unwrap() == u, "USS witness, trial {t}");
        let delta = CanonicalBraid::delta_power(n, 1);
        ensure!(
            x.conjugate(&delta).unwrap() == x.tau_conjugate(1),
            "tau vs Δ-conjugation, trial {t}"
        );
        ensure!(
            x.tau_conjugate(2) == x.conjugate(&delta.pow(2)).unwrap(),
            "tau², trial {t}"
        );
    }
    Ok(())
}

/// Cyclically weighted braids with `ℓ ≥ 2` in `B_4`–`B_6`, obtained by
/// cycling seeded random braids.
pub fn random_cyclically_weighted(count: usize, seed: u64) -> Vec<CanonicalBraid> {
    let mut out = Vec::new();
    let mut t = 0u64;
    while out.len() < count {
        let n = 4 + (t % 3) as usize;
        let mut y = random_braid(seed, t, n, 4 + (t % 5) as usize);
        t += 1;
        for _ in 0..=y.len() {
            if is_cyclically_weighted(&y) {
                break;
            }
            y = cycling(&y).0;
        }
        if is_cyclically_weighted(&y) && y.len() >= 2 {
            out.push(y);
        }
    }
    out
}

/// Every element of `RSSS(x)` is cyclically weighted.
pub fn cycling_closure(x: &CanonicalBraid) -> Check {
    let r = generate_invariant_set(x, InvariantSetOptions::new(SetKind::Rsss))
        .map_err(|e| e.to_string())?;
    let bad = r.elements().find(|y| !is_cyclically_weighted(y)).cloned();
    match bad {
        Some(y) => Err(format!("RSSS element {y:?} is not cyclically weighted")),
        None => Ok(()),
    }
}

pub const B7_WORD: [i64; 16] = [2, 1, 3, 2, 5, 2, 5, 6, 2, 6, 5, 2, 5, 4, 6, 5];

pub fn b7_example() -> CanonicalBraid {
    normalize(&BraidWord::from_signed(7, &B7_WORD).unwrap())
}
