//! Cycling, decycling, summit-set reduction and generation of USS / RSSS.

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::CanonicalBraid;
use crate::error::{Error, Result};
use crate::perm::{self, PermutationBraid};

/// `c(x)` and the simple conjugator `t` with `t⁻¹ x t = c(x)`.
///
/// For a pure `Δ`-power this is a no-op with conjugator `e`.
pub fn cycling(x: &CanonicalBraid) -> (CanonicalBraid, PermutationBraid) {
    let n = x.n();
    let Some(first) = x.factors().first() else {
        return (x.clone(), PermutationBraid::identity(n));
    };
    let t = first.tau(x.inf());
    let mut y = CanonicalBraid::from_parts(n, x.inf(), x.factors()[1..].to_vec());
    y.mul_simple(&t);
    (y, t)
}

/// `d(x)` and its conjugator `T(x)⁻¹`.
pub fn decycling(x: &CanonicalBraid) -> (CanonicalBraid, CanonicalBraid) {
    let (y, tail) = decycling_step(x);
    let mut w = CanonicalBraid::identity(x.n());
    w.mul_simple_inverse(&tail);
    (y, w)
}

/// `d(x)` together with the tail `T(x)` (identity for a `Δ`-power).
fn decycling_step(x: &CanonicalBraid) -> (CanonicalBraid, PermutationBraid) {
    let n = x.n();
    let Some(last) = x.factors().last() else {
        return (x.clone(), PermutationBraid::identity(n));
    };
    let k = x.len();
    let front = last.tau(x.inf());
    let mut y = CanonicalBraid::from_parts(n, x.inf(), vec![front]);
    for f in &x.factors()[..k - 1] {
        y.mul_simple(f);
    }
    (y, last.clone())
}

/// `x_k ⌈ τ^u(x₁)`. Pure `Δ`-powers count as cyclically weighted.
pub fn is_cyclically_weighted(x: &CanonicalBraid) -> bool {
    match (x.factors().first(), x.factors().last()) {
        (Some(h), Some(t)) => perm::weighted(t, &h.tau(x.inf())),
        _ => true,
    }
}

/// `H(x·τ^u(x₁)) = x₁`, read with `inf` unchanged.
pub fn is_weakly_cyclically_weighted(x: &CanonicalBraid) -> bool {
    let Some(h) = x.factors().first() else {
        return true;
    };
    let mut z = x.clone();
    z.mul_simple(&h.tau(x.inf()));
    z.inf() == x.inf() && z.factors().first() == Some(h)
}

#[derive(Clone, Copy)]
enum Move {
    Cycle,
    Decycle,
}

fn apply_move(
    m: Move,
    x: &CanonicalBraid,
    witness: &mut Vec<(PermutationBraid, bool)>,
) -> CanonicalBraid {
    match m {
        Move::Cycle => {
            let (y, t) = cycling(x);
            witness.push((t, false));
            y
        }
        Move::Decycle => {
            let (y, t) = decycling_step(x);
            witness.push((t, true));
            y
        }
    }
}

fn fold(w: &mut CanonicalBraid, steps: impl IntoIterator<Item = (PermutationBraid, bool)>) {
    for (p, inverse) in steps {
        if inverse {
            w.mul_simple_inverse(&p);
        } else {
            w.mul_simple(&p);
        }
    }
}

/// Conjugates into the super summit set by alternating cycling and
/// decycling phases; returns `(y, w)` with `w⁻¹ x w = y`.
pub fn reduce_to_sss(x: &CanonicalBraid) -> (CanonicalBraid, CanonicalBraid) {
    let mut best = x.clone();
    let mut witness = CanonicalBraid::identity(x.n());
    loop {
        let up = phase(Move::Cycle, &mut best, &mut witness);
        let down = phase(Move::Decycle, &mut best, &mut witness);
        if !up && !down {
            return (best, witness);
        }
    }
}

fn phase(m: Move, best: &mut CanonicalBraid, witness: &mut CanonicalBraid) -> bool {
    let mut improved = false;
    let mut cur = best.clone();
    let mut seen = HashSet::from([cur.clone()]);
    let mut pending = Vec::new();
    while !cur.is_empty() {
        let next = apply_move(m, &cur, &mut pending);
        if next.inf() > best.inf() || next.sup() < best.sup() {
            fold(witness, pending.drain(..));
            *best = next.clone();
            seen.clear();
            seen.insert(next.clone());
            improved = true;
        } else if !seen.insert(next.clone()) {
            break;
        }
        cur = next;
    }
    improved
}

/// The periodic part of the cycling sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclingOrbit {
    pub elements: Vec<CanonicalBraid>,
}

impl CyclingOrbit {
    pub fn period(&self) -> usize {
        self.elements.len()
    }
}

struct Trace {
    elements: Vec<CanonicalBraid>,
    steps: Vec<(PermutationBraid, bool)>,
    period_start: usize,
}

fn trace(m: Move, y: &CanonicalBraid) -> Trace {
    let mut elements = vec![y.clone()];
    let mut index = HashMap::from([(y.clone(), 0usize)]);
    let mut steps = Vec::new();
    loop {
        let next = apply_move(m, elements.last().unwrap(), &mut steps);
        if let Some(&j) = index.get(&next) {
            return Trace {
                elements,
                steps,
                period_start: j,
            };
        }
        index.insert(next.clone(), elements.len());
        elements.push(next);
    }
}

/// Iterates cycling until a repeat and returns the periodic part.
pub fn cycling_orbit(y: &CanonicalBraid) -> CyclingOrbit {
    let t = trace(Move::Cycle, y);
    CyclingOrbit {
        elements: t.elements[t.period_start..].to_vec(),
    }
}

/// Moves `(y, w)` to the first periodic element of its `m`-trace.
fn to_periodic(m: Move, y: &CanonicalBraid, w: &mut CanonicalBraid) -> CanonicalBraid {
    let t = trace(m, y);
    fold(w, t.steps[..t.period_start].iter().cloned());
    t.elements[t.period_start].clone()
}

fn is_periodic(m: Move, y: &CanonicalBraid, known: impl Fn(&CanonicalBraid) -> bool) -> bool {
    let mut cur = y.clone();
    let mut seen = HashSet::new();
    let mut sink = Vec::new();
    loop {
        let next = apply_move(m, &cur, &mut sink);
        sink.clear();
        if next == *y {
            return true;
        }
        if next.inf() != y.inf() || next.sup() != y.sup() || known(&next) {
            return false;
        }
        if !seen.insert(next.clone()) {
            return false;
        }
        cur = next;
    }
}

pub fn is_cycling_periodic(y: &CanonicalBraid) -> bool {
    is_periodic(Move::Cycle, y, |_| false)
}

pub fn is_decycling_periodic(y: &CanonicalBraid) -> bool {
    is_periodic(Move::Decycle, y, |_| false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SetKind {
    Uss,
    Rsss,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CandidatePolicy {
    /// Every non-trivial simple element.
    Full,
    /// Prefixes of `τ^inf(H(y))` and of `T(y)*`.
    Restricted,
}

#[derive(Debug, Clone, Copy)]
pub struct InvariantSetOptions {
    pub kind: SetKind,
    pub policy: CandidatePolicy,
    /// Maximum number of set elements.
    pub budget: usize,
}

impl InvariantSetOptions {
    pub fn new(kind: SetKind) -> Self {
        InvariantSetOptions {
            kind,
            policy: CandidatePolicy::Restricted,
            budget: 1_000_000,
        }
    }

    pub fn policy(mut self, policy: CandidatePolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }
}

#[derive(Debug, Clone)]
pub struct InvariantSetResult {
    pub kind: SetKind,
    /// `None` for sets produced by the fast path.
    pub policy: Option<CandidatePolicy>,
    pub summit_inf: i64,
    pub summit_sup: i64,
    /// Orbits rotated to start at their least element, sorted.
    pub orbits: Vec<CyclingOrbit>,
    /// Conjugators tested over the whole closure.
    pub candidates_tested: usize,
    witnesses: HashMap<CanonicalBraid, CanonicalBraid>,
}

impl InvariantSetResult {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn element_count(&self) -> usize {
        self.witnesses.len()
    }

    pub fn contains(&self, y: &CanonicalBraid) -> bool {
        self.witnesses.contains_key(y)
    }

    /// `w` with `w⁻¹ x w = y` for the input `x`.
    pub fn witness(&self, y: &CanonicalBraid) -> Option<&CanonicalBraid> {
        self.witnesses.get(y)
    }

    /// All elements in output order.
    pub fn elements(&self) -> impl Iterator<Item = &CanonicalBraid> {
        self.orbits.iter().flat_map(|o| o.elements.iter())
    }
}

/// Generates `USS(x)` or `RSSS(x)` by closure under simple conjugators.
pub fn generate_invariant_set(
    x: &CanonicalBraid,
    opts: InvariantSetOptions,
) -> Result<InvariantSetResult> {
    let (entry, w) = match opts.kind {
        SetKind::Uss => uss_entry(x),
        SetKind::Rsss => rsss_entry(x, opts)?,
    };
    Closure::run(entry, w, opts)
}

/// A USS element `y` conjugate to `x`, with `w⁻¹ x w = y`.
pub fn uss_representative(x: &CanonicalBraid) -> (CanonicalBraid, CanonicalBraid) {
    uss_entry(x)
}

fn uss_entry(x: &CanonicalBraid) -> (CanonicalBraid, CanonicalBraid) {
    let (s, mut w) = reduce_to_sss(x);
    let y = to_periodic(Move::Cycle, &s, &mut w);
    (y, w)
}

fn rsss_entry(
    x: &CanonicalBraid,
    opts: InvariantSetOptions,
) -> Result<(CanonicalBraid, CanonicalBraid)> {
    let (mut y, mut w) = uss_entry(x);
    let mut visited = HashSet::new();
    while visited.insert(y.clone()) {
        if is_decycling_periodic(&y) {
            return Ok((y, w));
        }
        y = to_periodic(Move::Decycle, &y, &mut w);
        if is_cycling_periodic(&y) && is_decycling_periodic(&y) {
            return Ok((y, w));
        }
        y = to_periodic(Move::Cycle, &y, &mut w);
    }
    let uss = generate_invariant_set(
        x,
        InvariantSetOptions {
            kind: SetKind::Uss,
            ..opts
        },
    )?;
    let y = uss
        .elements()
        .find(|e| is_decycling_periodic(e))
        .expect("a USS always meets the RSSS")
        .clone();
    let w = uss.witness(&y).unwrap().clone();
    Ok((y, w))
}

struct Closure {
    opts: InvariantSetOptions,
    inf: i64,
    sup: i64,
    members: HashMap<CanonicalBraid, CanonicalBraid>,
    orbits: Vec<Vec<CanonicalBraid>>,
    queue: VecDeque<CanonicalBraid>,
    all_simples: Vec<PermutationBraid>,
    tested: usize,
}

impl Closure {
    fn run(
        entry: CanonicalBraid,
        w: CanonicalBraid,
        opts: InvariantSetOptions,
    ) -> Result<InvariantSetResult> {
        let all_simples = match opts.policy {
            CandidatePolicy::Full => PermutationBraid::all(entry.n())
                .filter(|p| !p.is_identity())
                .collect(),
            CandidatePolicy::Restricted => Vec::new(),
        };
        let mut c = Closure {
            opts,
            inf: entry.inf(),
            sup: entry.sup(),
            members: HashMap::new(),
            orbits: Vec::new(),
            queue: VecDeque::new(),
            all_simples,
            tested: 0,
        };
        c.add_orbit(entry, w)?;
        while let Some(y) = c.queue.pop_front() {
            let wy = c.members[&y].clone();
            let candidates = c.candidates(&y);
            c.tested += candidates.len();
            let found: Vec<(usize, CanonicalBraid)> = candidates
                .par_iter()
                .enumerate()
                .filter_map(|(i, g)| {
                    let z = y.conjugate_by_simple(g);
                    (!c.members.contains_key(&z) && c.is_member(&z)).then_some((i, z))
                })
                .collect();
            for (i, z) in found {
                if !c.members.contains_key(&z) {
                    let mut wz = wy.clone();
                    wz.mul_simple(&candidates[i]);
                    c.add_orbit(z, wz)?;
                }
            }
        }
        Ok(c.finish())
    }

    fn candidates(&self, y: &CanonicalBraid) -> Vec<PermutationBraid> {
        match self.opts.policy {
            CandidatePolicy::Full => self.all_simples.clone(),
            CandidatePolicy::Restricted => {
                let (Some(h), Some(t)) = (y.factors().first(), y.factors().last()) else {
                    return Vec::new();
                };
                let mut out: Vec<PermutationBraid> = h.tau(y.inf()).left_prefixes();
                let seen: HashSet<PermutationBraid> = out.iter().cloned().collect();
                out.extend(
                    t.right_complement()
                        .left_prefixes()
                        .into_iter()
                        .filter(|p| !seen.contains(p)),
                );
                out.retain(|p| !p.is_identity());
                out
            }
        }
    }

    fn is_member(&self, z: &CanonicalBraid) -> bool {
        if z.inf() != self.inf || z.sup() != self.sup {
            return false;
        }
        // An orbit that runs into a known member without returning to z
        // means z is pre-periodic (or, for RSSS, was filtered out).
        let known = |b: &CanonicalBraid| self.members.contains_key(b);
        if !is_periodic(Move::Cycle, z, known) {
            return false;
        }
        match self.opts.kind {
            SetKind::Uss => true,
            SetKind::Rsss => is_decycling_periodic(z),
        }
    }

    fn add_orbit(&mut self, z: CanonicalBraid, w: CanonicalBraid) -> Result<()> {
        let mut orbit = Vec::new();
        let mut cur = z.clone();
        let mut wc = w;
        loop {
            let keep = match self.opts.kind {
                SetKind::Uss => true,
                SetKind::Rsss => is_decycling_periodic(&cur),
            };
            if keep && !self.members.contains_key(&cur) {
                self.members.insert(cur.clone(), wc.clone());
                self.queue.push_back(cur.clone());
                orbit.push(cur.clone());
                if self.members.len() > self.opts.budget {
                    return Err(Error::BudgetExhausted {
                        explored: self.members.len(),
                        limit: self.opts.budget,
                    });
                }
            }
            let (next, t) = cycling(&cur);
            wc.mul_simple(&t);
            if next == z {
                break;
            }
            cur = next;
        }
        if !orbit.is_empty() {
            self.orbits.push(orbit);
        }
        Ok(())
    }

    fn finish(self) -> InvariantSetResult {
        InvariantSetResult {
            kind: self.opts.kind,
            policy: Some(self.opts.policy),
            summit_inf: self.inf,
            summit_sup: self.sup,
            orbits: canonical_orbits(self.orbits),
            candidates_tested: self.tested,
            witnesses: self.members,
        }
    }
}

/// Rotates each orbit to its least element and sorts the orbits.
fn canonical_orbits(orbits: Vec<Vec<CanonicalBraid>>) -> Vec<CyclingOrbit> {
    let mut out: Vec<CyclingOrbit> = orbits
        .into_iter()
        .map(|mut o| {
            let m = (0..o.len()).min_by(|&a, &b| o[a].cmp(&o[b])).unwrap();
            o.rotate_left(m);
            CyclingOrbit { elements: o }
        })
        .collect();
    out.sort_by(|a, b| a.elements[0].cmp(&b.elements[0]));
    out
}

impl InvariantSetResult {
    /// Wraps a set with known witnesses, grouping it into cycling orbits.
    /// Elements whose cycling leaves the set end their orbit early.
    pub(crate) fn from_members(
        kind: SetKind,
        members: HashMap<CanonicalBraid, CanonicalBraid>,
    ) -> Self {
        let mut keys: Vec<&CanonicalBraid> = members.keys().collect();
        keys.sort();
        let mut placed: HashSet<CanonicalBraid> = HashSet::new();
        let mut orbits = Vec::new();
        for start in keys {
            if placed.contains(start) {
                continue;
            }
            let mut orbit = Vec::new();
            let mut cur = start.clone();
            while members.contains_key(&cur) && placed.insert(cur.clone()) {
                orbit.push(cur.clone());
                cur = cycling(&cur).0;
            }
            orbits.push(orbit);
        }
        let (summit_inf, summit_sup) = members.keys().next().map_or((0, 0), |b| (b.inf(), b.sup()));
        InvariantSetResult {
            kind,
            policy: None,
            summit_inf,
            summit_sup,
            orbits: canonical_orbits(orbits),
            candidates_tested: 0,
            witnesses: members,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerCycleOptions {
    pub max_power: usize,
    /// Explicit cycling cap; `None` uses `min(n!·ℓ, DEFAULT_CYCLING_CAP)`.
    pub max_cyclings: Option<usize>,
}

pub const DEFAULT_CYCLING_CAP: usize = 100_000;

fn garside_d(n: usize) -> usize {
    n * (n - 1) / 2
}

impl PowerCycleOptions {
    /// `M ≤ 2D²`, `D = n(n−1)/2`.
    pub fn for_index(n: usize) -> Self {
        let d = garside_d(n);
        PowerCycleOptions {
            max_power: 2 * d * d,
            max_cyclings: None,
        }
    }

    /// The looser `M ≤ D³`, `N ≤ D⁴ℓ(x)` scope.
    pub fn loose(x: &CanonicalBraid) -> Self {
        let d = garside_d(x.n());
        PowerCycleOptions {
            max_power: d.pow(3),
            max_cyclings: Some(d.pow(4).saturating_mul(x.len().max(1))),
        }
    }

    fn cycling_limit(&self, z: &CanonicalBraid) -> usize {
        self.max_cyclings.unwrap_or_else(|| {
            let fact = (2..=z.n()).try_fold(1usize, |a, b| a.checked_mul(b));
            fact.and_then(|f| f.checked_mul(z.len().max(1)))
                .unwrap_or(usize::MAX)
                .min(DEFAULT_CYCLING_CAP)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerCycleResult {
    pub power: usize,
    pub cyclings: usize,
    pub braid: CanonicalBraid,
    /// `w` with `w⁻¹ x^power w = braid`.
    pub witness: CanonicalBraid,
}

/// Least `M` such that cycling the summit reduction of `x^M` reaches a
/// cyclically weighted braid within the cycling cap.
pub fn power_and_cycle(x: &CanonicalBraid, opts: PowerCycleOptions) -> Option<PowerCycleResult> {
    let mut power = CanonicalBraid::identity(x.n());
    for m in 1..=opts.max_power {
        power = power.mul(x);
        if is_cyclically_weighted(&power) {
            return Some(PowerCycleResult {
                power: m,
                cyclings: 0,
                braid: power,
                witness: CanonicalBraid::identity(x.n()),
            });
        }
        let (mut y, mut w) = reduce_to_sss(&power);
        let limit = opts.cycling_limit(&y);
        let mut seen = HashSet::new();
        for n_cyc in 0..=limit {
            if is_cyclically_weighted(&y) {
                return Some(PowerCycleResult {
                    power: m,
                    cyclings: n_cyc,
                    braid: y,
                    witness: w,
                });
            }
            if n_cyc == limit || !seen.insert(y.clone()) {
                break;
            }
            let (next, t) = cycling(&y);
            w.mul_simple(&t);
            y = next;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{normalize, BraidWord};

    fn b(n: usize, letters: &[i64]) -> CanonicalBraid {
        normalize(&BraidWord::from_signed(n, letters).unwrap())
    }

    fn b7() -> CanonicalBraid {
        b(7, &[2, 1, 3, 2, 5, 2, 5, 6, 2, 6, 5, 2, 5, 4, 6, 5])
    }

    #[test]
    fn cycling_examples() {
        let x = b(3, &[2, 1, 1]);
        assert_eq!(x.len(), 2);
        let (c, t) = cycling(&x);
        assert_eq!(c, CanonicalBraid::delta_power(3, 1));
        assert_eq!(t, PermutationBraid::from_word(3, &[2, 1]).unwrap());
        let sq = b(3, &[1, 1]);
        assert_eq!(cycling(&sq).0, sq);
        assert_eq!(decycling(&sq).0, sq);
        let d = CanonicalBraid::delta_power(3, 2);
        assert_eq!(cycling(&d), (d.clone(), PermutationBraid::identity(3)));
    }

    #[test]
    fn witnesses_conjugate() {
        let x = b(5, &[1, -2, 3, 3, 4, -1, 2, 2, -4, 3, 1]);
        let (c, t) = cycling(&x);
        assert_eq!(x.conjugate_by_simple(&t), c);
        let (d, w) = decycling(&x);
        assert_eq!(x.conjugate(&w).unwrap(), d);
        let (s, w) = reduce_to_sss(&x);
        assert_eq!(x.conjugate(&w).unwrap(), s);
    }

    #[test]
    fn predicates() {
        let sq = b(3, &[1, 1]);
        assert!(is_cyclically_weighted(&sq));
        assert!(is_weakly_cyclically_weighted(&sq));
        let x = b(3, &[1, 2, 1, 2]);
        assert!(!is_cyclically_weighted(&x));
        assert!(is_cyclically_weighted(&CanonicalBraid::delta_power(4, 3)));
        assert!(is_cyclically_weighted(&b7()));
        assert!(is_weakly_cyclically_weighted(&b7()));
    }

    #[test]
    fn sss_reduction_examples() {
        let (y, _) = reduce_to_sss(&b(3, &[2, 1, 1]));
        assert_eq!(y, CanonicalBraid::delta_power(3, 1));
        let x = b7();
        assert_eq!(reduce_to_sss(&x).0, x);
    }

    #[test]
    fn orbit_examples() {
        let sq = b(3, &[1, 1]);
        assert_eq!(cycling_orbit(&sq).elements, vec![sq]);
        let o = cycling_orbit(&b7());
        let last = o.elements.last().unwrap();
        assert_eq!(cycling(last).0, o.elements[0]);
    }

    #[test]
    fn rsss_of_sigma1_squared() {
        let sq = b(3, &[1, 1]);
        for policy in [CandidatePolicy::Full, CandidatePolicy::Restricted] {
            let r =
                generate_invariant_set(&sq, InvariantSetOptions::new(SetKind::Rsss).policy(policy))
                    .unwrap();
            assert_eq!(r.element_count(), 2);
            assert_eq!(r.orbit_count(), 2);
            assert!(r.contains(&b(3, &[2, 2])));
            for e in r.elements() {
                assert_eq!(&sq.conjugate(r.witness(e).unwrap()).unwrap(), e);
            }
        }
    }

    #[test]
    fn b7_rsss_has_ten_orbits() {
        let x = b7();
        assert_eq!(x.len(), 4);
        let r = generate_invariant_set(&x, InvariantSetOptions::new(SetKind::Rsss)).unwrap();
        assert_eq!(r.orbit_count(), 10);
        assert!(r.elements().all(is_cyclically_weighted));
        let s5 = PermutationBraid::generator(7, 5).unwrap();
        assert!(is_cyclically_weighted(&x.conjugate_by_simple(&s5)));
    }

    #[test]
    fn budget_is_reported() {
        let x = b(5, &[1, 2, 3, 4, 1, 2, -3, 4, 4, 2, 1]);
        let r = generate_invariant_set(&x, InvariantSetOptions::new(SetKind::Uss).budget(1));
        assert!(matches!(r, Err(Error::BudgetExhausted { .. })));
    }

    #[test]
    fn power_and_cycle_examples() {
        let x = b7();
        let r = power_and_cycle(&x, PowerCycleOptions::for_index(7)).unwrap();
        assert_eq!((r.power, r.cyclings), (1, 0));
        let r = power_and_cycle(&b(3, &[2, 1, 1]), PowerCycleOptions::for_index(3)).unwrap();
        assert_eq!(r.power, 1);
        assert!(r.braid.is_empty());
    }
}
