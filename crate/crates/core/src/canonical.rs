//! Braid words and the left-weighted canonical form `Δ^u x₁⋯x_k`.

use std::fmt;

use crate::error::{check_same_index, Error, Result};
use crate::perm::{self, PermutationBraid};

/// One token of a braid word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    /// `σ_i` or `σ_i⁻¹`.
    Sigma { index: usize, inverse: bool },
    /// `Δ` or `Δ⁻¹`.
    Delta { inverse: bool },
}

/// A raw word in the generators and `Δ^{±1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self> {
        if n < 2 {
            return Err(Error::IndexTooSmall(n));
        }
        for l in &letters {
            if let Letter::Sigma { index, inverse } = *l {
                if index == 0 || index >= n {
                    let signed = if inverse {
                        -(index as i64)
                    } else {
                        index as i64
                    };
                    return Err(Error::GeneratorOutOfRange { index: signed, n });
                }
            }
        }
        Ok(BraidWord { n, letters })
    }

    /// Word from signed generator indices (`-3` is `σ₃⁻¹`).
    pub fn from_signed(n: usize, letters: &[i64]) -> Result<Self> {
        let letters = letters
            .iter()
            .map(|&l| {
                if l == 0 {
                    Err(Error::GeneratorOutOfRange { index: 0, n })
                } else {
                    Ok(Letter::Sigma {
                        index: l.unsigned_abs() as usize,
                        inverse: l < 0,
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, letters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }
}

/// A braid in left-weighted form: `Δ^inf` followed by factors in
/// `S_n \ {e, Δ}`, each consecutive pair left-weighted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalBraid {
    n: usize,
    inf: i64,
    factors: Vec<PermutationBraid>,
}

impl CanonicalBraid {
    pub fn identity(n: usize) -> Self {
        CanonicalBraid {
            n,
            inf: 0,
            factors: Vec::new(),
        }
    }

    pub fn delta_power(n: usize, power: i64) -> Self {
        CanonicalBraid {
            n,
            inf: power,
            factors: Vec::new(),
        }
    }

    pub fn from_simple(p: &PermutationBraid) -> Self {
        Self::from_factors(p.n(), 0, std::iter::once(p.clone()))
    }

    pub fn generator(n: usize, i: usize) -> Result<Self> {
        Ok(Self::from_simple(&PermutationBraid::generator(n, i)?))
    }

    /// Normal form of `Δ^inf · f₁ ⋯ f_m` for arbitrary simple `f_j`
    /// (identity and `Δ` allowed).
    pub fn from_factors<I>(n: usize, inf: i64, factors: I) -> Self
    where
        I: IntoIterator<Item = PermutationBraid>,
    {
        let mut x = Self::identity(n);
        x.inf = inf;
        for f in factors {
            x.push_simple(f);
        }
        x
    }

    /// Builds from an already left-weighted factor list, checking it.
    pub fn from_weighted(n: usize, inf: i64, factors: Vec<PermutationBraid>) -> Result<Self> {
        let x = CanonicalBraid { n, inf, factors };
        x.validate().map_err(Error::InvalidArgument)?;
        Ok(x)
    }

    pub(crate) fn from_parts(n: usize, inf: i64, factors: Vec<PermutationBraid>) -> Self {
        CanonicalBraid { n, inf, factors }
    }

    /// `self · p`.
    pub(crate) fn mul_simple(&mut self, p: &PermutationBraid) {
        self.push_simple(p.clone());
    }

    /// `self · p⁻¹`, using `p⁻¹ = p*·Δ⁻¹`.
    pub(crate) fn mul_simple_inverse(&mut self, p: &PermutationBraid) {
        self.push_simple(p.right_complement());
        self.shift_delta(-1);
    }

    /// Right-multiplies by a simple element with one backward sliding pass.
    pub(crate) fn push_simple(&mut self, p: PermutationBraid) {
        debug_assert_eq!(p.n(), self.n);
        if p.is_identity() {
            return;
        }
        if p.is_delta() {
            self.shift_delta(1);
            return;
        }
        self.factors.push(p);
        let mut i = self.factors.len() - 1;
        while i > 0 {
            let (left, right) = self.factors.split_at_mut(i);
            if !perm::left_weight(&mut left[i - 1], &mut right[0]) {
                break;
            }
            i -= 1;
        }
        // Deltas can only surface at the front and identities at the back.
        let leading = self.factors.iter().take_while(|f| f.is_delta()).count();
        if leading > 0 {
            self.factors.drain(..leading);
            self.inf += leading as i64;
        }
        while self
            .factors
            .last()
            .is_some_and(PermutationBraid::is_identity)
        {
            self.factors.pop();
        }
    }

    /// `self · Δ^m`.
    pub(crate) fn shift_delta(&mut self, m: i64) {
        self.inf += m;
        if m % 2 != 0 {
            for f in &mut self.factors {
                *f = f.tau(1);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn inf(&self) -> i64 {
        self.inf
    }

    pub fn sup(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }

    /// Canonical length `ℓ`.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    pub fn factors(&self) -> &[PermutationBraid] {
        &self.factors
    }

    pub fn head(&self) -> Result<&PermutationBraid> {
        self.factors
            .first()
            .ok_or(Error::PureDeltaPower { op: "head" })
    }

    pub fn tail(&self) -> Result<&PermutationBraid> {
        self.factors
            .last()
            .ok_or(Error::PureDeltaPower { op: "tail" })
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        check_same_index(self.n, other.n)?;
        Ok(self.mul(other))
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        // Δ^u X Δ^v Y = Δ^{u+v} τ^v(X) Y, and τ keeps X weighted.
        let mut out = self.clone();
        out.shift_delta(other.inf);
        for f in &other.factors {
            out.push_simple(f.clone());
        }
        out
    }

    pub fn invert(&self) -> Self {
        // x⁻¹ = Δ^{-u-k} τ^{u+k}(x_k*) τ^{u+k-1}(x_{k-1}*) ⋯ τ^{u+1}(x_1*)
        let k = self.factors.len() as i64;
        let factors = self
            .factors
            .iter()
            .enumerate()
            .rev()
            .map(|(j, f)| f.right_complement().tau(self.inf + j as i64 + 1));
        Self::from_factors(self.n, -self.inf - k, factors)
    }

    /// `Δ^{-p} x Δ^{p}`, which is `τ^p` applied factorwise.
    pub fn tau_conjugate(&self, power: i64) -> Self {
        if power.rem_euclid(2) == 0 {
            return self.clone();
        }
        CanonicalBraid {
            n: self.n,
            inf: self.inf,
            factors: self.factors.iter().map(|f| f.tau(1)).collect(),
        }
    }

    /// `p⁻¹ · self · p`.
    pub fn conjugate_by_simple(&self, p: &PermutationBraid) -> Self {
        let mut out = Self::from_simple(p).invert().mul(self);
        out.push_simple(p.clone());
        out
    }

    /// `w⁻¹ · self · w`.
    pub fn conjugate(&self, w: &Self) -> Result<Self> {
        check_same_index(self.n, w.n)?;
        Ok(w.invert().mul(self).mul(w))
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.invert() } else { self.clone() };
        let mut acc = Self::identity(self.n);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Structural equality, which is group equality by uniqueness of the form.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        check_same_index(self.n, other.n)?;
        Ok(self == other)
    }

    /// Checks the factor invariants; returns a description of the first
    /// violation.
    pub fn validate(&self) -> std::result::Result<(), String> {
        for (i, f) in self.factors.iter().enumerate() {
            if f.n() != self.n {
                return Err(format!("factor {i} has index {}", f.n()));
            }
            if f.is_identity() || f.is_delta() {
                return Err(format!("factor {i} is trivial or Delta"));
            }
        }
        for (i, w) in self.factors.windows(2).enumerate() {
            if !perm::weighted(&w[0], &w[1]) {
                return Err(format!("factors {i},{} not left-weighted", i + 1));
            }
        }
        Ok(())
    }

    /// Re-expands into letters: `Δ` tokens then each factor's reduced word.
    pub fn to_word(&self) -> BraidWord {
        let inverse = self.inf < 0;
        let mut letters: Vec<Letter> = (0..self.inf.unsigned_abs())
            .map(|_| Letter::Delta { inverse })
            .collect();
        for f in &self.factors {
            letters.extend(f.reduced_word().into_iter().map(|g| Letter::Sigma {
                index: g.get(),
                inverse: false,
            }));
        }
        BraidWord { n: self.n, letters }
    }
}

/// The left-weighted form of a word.
pub fn normalize(word: &BraidWord) -> CanonicalBraid {
    let n = word.n;
    // Every letter is (simple element)·Δ^e: σ_i⁻¹ = σ_i*·Δ⁻¹. Pulling all
    // Δ powers to the front applies τ^r to a simple with r Δ's to its right.
    let mut items: Vec<(Option<PermutationBraid>, i64)> = Vec::with_capacity(word.letters.len());
    for l in &word.letters {
        match *l {
            Letter::Sigma { index, inverse } => {
                let g = PermutationBraid::generator(n, index).expect("validated word");
                if inverse {
                    items.push((Some(g.right_complement()), -1));
                } else {
                    items.push((Some(g), 0));
                }
            }
            Letter::Delta { inverse } => items.push((None, if inverse { -1 } else { 1 })),
        }
    }
    let mut suffix = 0i64;
    let mut simples = Vec::with_capacity(items.len());
    for (p, e) in items.into_iter().rev() {
        suffix += e;
        if let Some(p) = p {
            // this simple's own Δ power sits to its right
            simples.push(p.tau(suffix));
        }
    }
    simples.reverse();
    CanonicalBraid::from_factors(n, suffix, simples)
}

impl fmt::Debug for CanonicalBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}", self.inf)?;
        for x in &self.factors {
            write!(f, " {x}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(n: usize, letters: &[i64]) -> CanonicalBraid {
        normalize(&BraidWord::from_signed(n, letters).unwrap())
    }

    fn p(images: &[usize]) -> PermutationBraid {
        PermutationBraid::from_images(images).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let d = nf(3, &[1, 2, 1]);
        assert_eq!((d.inf(), d.len()), (1, 0));
        let x = nf(3, &[1, 2, 1, 2]);
        assert_eq!(x.inf(), 1);
        assert_eq!(x.factors(), &[PermutationBraid::generator(3, 2).unwrap()]);
        let y = nf(3, &[-1]);
        assert_eq!(y.inf(), -1);
        assert_eq!(y.factors(), &[p(&[3, 1, 2])]);
    }

    #[test]
    fn generator_out_of_range() {
        assert!(matches!(
            BraidWord::from_signed(3, &[1, 3]),
            Err(Error::GeneratorOutOfRange { index: 3, n: 3 })
        ));
        assert!(BraidWord::from_signed(3, &[-4]).is_err());
    }

    #[test]
    fn multiply_examples() {
        let x = nf(4, &[1, -3, 2, 2, -1]);
        assert!(x.mul(&x.invert()).is_identity());
        let s1 = nf(3, &[1]);
        let sq = s1.mul(&s1);
        assert_eq!(sq.inf(), 0);
        assert_eq!(sq.factors(), &[p(&[2, 1, 3]), p(&[2, 1, 3])]);
        let d2 = CanonicalBraid::delta_power(3, 3);
        let y = nf(3, &[1, 1, 2]);
        let z = d2.mul(&y);
        assert_eq!(z.inf(), 3 + y.inf());
        assert_eq!(z.factors(), y.factors());
        let w = y.mul(&d2);
        assert_eq!(w.factors(), y.tau_conjugate(1).factors());
    }

    #[test]
    fn invert_examples() {
        assert_eq!(
            CanonicalBraid::delta_power(4, 3).invert(),
            CanonicalBraid::delta_power(4, -3)
        );
        let inv = nf(3, &[1]).invert();
        assert_eq!(inv, nf(3, &[-1]));
        assert_eq!(inv.inf(), -1);
        assert_eq!(inv.factors(), &[p(&[3, 1, 2])]);
    }

    #[test]
    fn accessors() {
        let x = nf(3, &[1, 2, 1, 2]);
        let s2 = PermutationBraid::generator(3, 2).unwrap();
        assert_eq!(x.head().unwrap(), &s2);
        assert_eq!(x.tail().unwrap(), &s2);
        assert_eq!((x.inf(), x.sup(), x.len()), (1, 2, 1));
        let e = CanonicalBraid::identity(3);
        assert_eq!((e.inf(), e.sup(), e.len()), (0, 0, 0));
        assert!(matches!(
            CanonicalBraid::delta_power(3, 2).head(),
            Err(Error::PureDeltaPower { op: "head" })
        ));
        assert!(CanonicalBraid::delta_power(3, 2).tail().is_err());
    }

    #[test]
    fn tau_conjugate_examples() {
        let x = nf(3, &[1, 1]);
        assert_eq!(x.tau_conjugate(1), nf(3, &[2, 2]));
        let d = CanonicalBraid::delta_power(3, 1);
        let by_delta = d.invert().mul(&x).mul(&d);
        assert_eq!(x.tau_conjugate(1), by_delta);
        assert_eq!(x.tau_conjugate(1).len(), x.len());
    }

    #[test]
    fn equality_examples() {
        assert_eq!(nf(3, &[1, 2, 1]), nf(3, &[2, 1, 2]));
        assert_ne!(nf(3, &[1, 2]), nf(3, &[2, 1]));
        assert_eq!(nf(4, &[1, 3, 2]), nf(4, &[1, 2, -2, 3, 2]));
        assert!(nf(3, &[1]).equals(&nf(4, &[1])).is_err());
    }

    #[test]
    fn word_render_round_trip() {
        let x = nf(5, &[1, -2, 3, 4, -4, -1, 2, 2, 3]);
        let again = normalize(&x.to_word());
        assert_eq!(again, x);
        let neg = CanonicalBraid::delta_power(5, -2).mul(&x);
        assert_eq!(normalize(&neg.to_word()), neg);
    }

    #[test]
    fn from_weighted_rejects_bad_lists() {
        let s1 = PermutationBraid::generator(3, 1).unwrap();
        let s2 = PermutationBraid::generator(3, 2).unwrap();
        assert!(CanonicalBraid::from_weighted(3, 0, vec![s1.clone(), s1.clone()]).is_ok());
        assert!(CanonicalBraid::from_weighted(3, 0, vec![s1, s2]).is_err());
        assert!(CanonicalBraid::from_weighted(3, 0, vec![PermutationBraid::delta(3)]).is_err());
    }
}
