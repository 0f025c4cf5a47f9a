//! Permutation braids: the simple elements of the Garside structure on `B_n`.
//!
//! A permutation braid is stored by its one-line image array. Strands are
//! tracked positionally: `images[i]` is where the strand starting at position
//! `i` ends, and for a product `a·b` (read left to right)
//! `(ab)[i] = b[a[i]]`. With this convention the inversion set of `a` is
//! exactly the set of strand pairs that cross, the word length is the
//! inversion count, and the prefix order `≺` is inclusion of inversion sets.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{check_same_index, Error, Result};

/// An element of `S_n`, the positive braids that are left subwords of `Δ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermutationBraid {
    img: Box<[u16]>,
}

/// Index `i` of a generator `σ_i`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorIndex(u16);

impl GeneratorIndex {
    pub fn new(i: usize, n: usize) -> Result<Self> {
        if i >= 1 && i < n {
            Ok(GeneratorIndex(i as u16))
        } else {
            Err(Error::GeneratorOutOfRange { index: i as i64, n })
        }
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for GeneratorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which of the two subword orders a lattice operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl PermutationBraid {
    pub fn identity(n: usize) -> Self {
        Self::from_raw((0..n as u16).collect())
    }

    /// The half twist, the order-reversing permutation.
    pub fn delta(n: usize) -> Self {
        Self::from_raw((0..n as u16).rev().collect())
    }

    /// The generator `σ_i` (1-based).
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        GeneratorIndex::new(i, n)?;
        let mut img: Vec<u16> = (0..n as u16).collect();
        img.swap(i - 1, i);
        Ok(Self::from_raw(img))
    }

    /// Builds a permutation braid from 1-based one-line images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n < 2 {
            return Err(Error::IndexTooSmall(n));
        }
        if n > u16::MAX as usize {
            return Err(Error::InvalidPermutation {
                n,
                detail: "braid index too large".into(),
            });
        }
        let mut seen = vec![false; n];
        let mut img = Vec::with_capacity(n);
        for &p in images {
            if p == 0 || p > n || seen[p - 1] {
                return Err(Error::InvalidPermutation {
                    n,
                    detail: format!("{images:?}"),
                });
            }
            seen[p - 1] = true;
            img.push((p - 1) as u16);
        }
        Ok(Self::from_raw(img))
    }

    /// Product of a generator word, all letters positive.
    pub fn from_word(n: usize, letters: &[usize]) -> Result<Self> {
        let mut acc = Self::identity(n);
        for &i in letters {
            acc = acc.product(&Self::generator(n, i)?);
        }
        Ok(acc)
    }

    pub(crate) fn from_raw(img: Vec<u16>) -> Self {
        PermutationBraid {
            img: img.into_boxed_slice(),
        }
    }

    pub fn n(&self) -> usize {
        self.img.len()
    }

    /// 1-based one-line images.
    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|&p| p as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    pub fn is_delta(&self) -> bool {
        let n = self.n();
        self.img
            .iter()
            .enumerate()
            .all(|(i, &p)| p as usize == n - 1 - i)
    }

    pub(crate) fn inverse_images(&self) -> Vec<u16> {
        let mut inv = vec![0u16; self.n()];
        for (i, &p) in self.img.iter().enumerate() {
            inv[p as usize] = i as u16;
        }
        inv
    }

    /// The permutation braid spelled by the reversed word; as a permutation
    /// this is the inverse.
    pub fn reversed(&self) -> Self {
        Self::from_raw(self.inverse_images())
    }

    /// Group product in `Σ_n`, with no check that lengths add.
    pub(crate) fn product(&self, other: &Self) -> Self {
        Self::from_raw(self.img.iter().map(|&p| other.img[p as usize]).collect())
    }

    /// The `z` with `prefix · z = self` in `Σ_n`.
    pub(crate) fn left_quotient(&self, prefix: &Self) -> Self {
        let inv = prefix.inverse_images();
        Self::from_raw(inv.iter().map(|&q| self.img[q as usize]).collect())
    }

    /// The `z` with `z · suffix = self` in `Σ_n`.
    pub(crate) fn right_quotient(&self, suffix: &Self) -> Self {
        let inv = suffix.inverse_images();
        Self::from_raw(self.img.iter().map(|&p| inv[p as usize]).collect())
    }

    /// Word length, equal to the number of crossing strand pairs.
    pub fn length(&self) -> usize {
        let n = self.n();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.img[i] > self.img[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `a·b` as a permutation braid, or `None` when the product is not
    /// simple (the lengths do not add).
    pub fn compose_in_sn(&self, other: &Self) -> Result<Option<Self>> {
        check_same_index(self.n(), other.n())?;
        let p = self.product(other);
        Ok((p.length() == self.length() + other.length()).then_some(p))
    }

    /// `self ≺ other`.
    pub fn is_left_subword(&self, other: &Self) -> Result<bool> {
        check_same_index(self.n(), other.n())?;
        let rest = other.left_quotient(self);
        Ok(self.length() + rest.length() == other.length())
    }

    /// `self ≺_R other`.
    pub fn is_right_subword(&self, other: &Self) -> Result<bool> {
        check_same_index(self.n(), other.n())?;
        let rest = other.right_quotient(self);
        Ok(self.length() + rest.length() == other.length())
    }

    pub fn meet(&self, other: &Self, side: Side) -> Result<Self> {
        check_same_index(self.n(), other.n())?;
        Ok(match side {
            Side::Left => left_meet(self, other),
            Side::Right => left_meet(&self.reversed(), &other.reversed()).reversed(),
        })
    }

    /// Both arguments lie below `Δ`, so the join always exists in `S_n`.
    pub fn join(&self, other: &Self, side: Side) -> Result<Self> {
        check_same_index(self.n(), other.n())?;
        Ok(match side {
            Side::Left => left_join(self, other),
            Side::Right => left_join(&self.reversed(), &other.reversed()).reversed(),
        })
    }

    /// `a*` with `a·a* = Δ`.
    pub fn right_complement(&self) -> Self {
        let n = self.n() as u16;
        Self::from_raw(self.inverse_images().iter().map(|&q| n - 1 - q).collect())
    }

    /// `*a` with `(*a)·a = Δ`.
    pub fn left_complement(&self) -> Self {
        let inv = self.inverse_images();
        let n = self.n();
        Self::from_raw((0..n).map(|i| inv[n - 1 - i]).collect())
    }

    /// The flip `σ_i ↦ σ_{n-i}` applied `power` times.
    pub fn tau(&self, power: i64) -> Self {
        if power.rem_euclid(2) == 0 {
            return self.clone();
        }
        let n = self.n();
        let top = n as u16 - 1;
        Self::from_raw((0..n).map(|i| top - self.img[n - 1 - i]).collect())
    }

    /// `S(a) = {i : σ_i ≺ a}`.
    pub fn starting_set(&self) -> Vec<GeneratorIndex> {
        descents(&self.img)
    }

    /// `F(a) = {i : σ_i ≺_R a}`.
    pub fn finishing_set(&self) -> Vec<GeneratorIndex> {
        descents(&self.inverse_images())
    }

    /// `a ⌈ b`, decided as `S(b) ⊆ F(a)`.
    pub fn is_weighted_pair(&self, other: &Self) -> Result<bool> {
        check_same_index(self.n(), other.n())?;
        Ok(weighted(self, other))
    }

    /// Lexicographically smallest reduced word.
    pub fn reduced_word(&self) -> Vec<GeneratorIndex> {
        let mut img = self.img.to_vec();
        let mut word = Vec::with_capacity(self.length());
        'outer: loop {
            for i in 0..img.len().saturating_sub(1) {
                if img[i] > img[i + 1] {
                    img.swap(i, i + 1);
                    word.push(GeneratorIndex(i as u16 + 1));
                    continue 'outer;
                }
            }
            break;
        }
        word
    }

    /// Every `z` with `z ≺ self`, found by walking descents of the
    /// remaining quotient. Includes `e` and `self`.
    pub fn left_prefixes(&self) -> Vec<Self> {
        let n = self.n();
        let mut seen: HashSet<PermutationBraid> = HashSet::new();
        let mut out = Vec::new();
        let mut stack = vec![(Self::identity(n), self.clone())];
        seen.insert(Self::identity(n));
        while let Some((z, rest)) = stack.pop() {
            for i in 0..n - 1 {
                if rest.img[i] > rest.img[i + 1] {
                    let mut zi = z.img.to_vec();
                    // z·σ_i: swap the targets of the strands now at i, i+1
                    for p in zi.iter_mut() {
                        if *p as usize == i {
                            *p = i as u16 + 1;
                        } else if *p as usize == i + 1 {
                            *p = i as u16;
                        }
                    }
                    let next = Self::from_raw(zi);
                    if seen.insert(next.clone()) {
                        let mut ri = rest.img.to_vec();
                        ri.swap(i, i + 1);
                        stack.push((next, Self::from_raw(ri)));
                    }
                }
            }
            out.push(z);
        }
        out
    }

    /// All of `S_n` in lexicographic order of images.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some((0..n as u16).collect()),
        }
    }
}

pub struct AllPermutations {
    next: Option<Vec<u16>>,
}

impl Iterator for AllPermutations {
    type Item = PermutationBraid;

    fn next(&mut self) -> Option<PermutationBraid> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let n = succ.len();
        if n >= 2 {
            if let Some(i) = (0..n - 1).rev().find(|&i| succ[i] < succ[i + 1]) {
                let j = (i + 1..n).rev().find(|&j| succ[j] > succ[i]).unwrap();
                succ.swap(i, j);
                succ[i + 1..].reverse();
                self.next = Some(succ);
            }
        }
        Some(PermutationBraid::from_raw(cur))
    }
}

fn descents(img: &[u16]) -> Vec<GeneratorIndex> {
    img.windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(i, _)| GeneratorIndex(i as u16 + 1))
        .collect()
}

pub(crate) fn weighted(a: &PermutationBraid, b: &PermutationBraid) -> bool {
    let inv_a = a.inverse_images();
    b.img
        .windows(2)
        .enumerate()
        .all(|(i, w)| w[0] < w[1] || inv_a[i] > inv_a[i + 1])
}

/// Replaces `(a, b)` by `(a·s, s⁻¹·b)` with `s = a* ∧ b`, making the pair
/// left-weighted. Returns whether anything moved.
pub(crate) fn left_weight(a: &mut PermutationBraid, b: &mut PermutationBraid) -> bool {
    if weighted(a, b) {
        return false;
    }
    let s = left_meet(&a.right_complement(), b);
    *a = a.product(&s);
    *b = b.left_quotient(&s);
    true
}

/// Strand-pair crossing sets as an upper-triangular bit matrix: bit `j` of
/// row `i` (for `i < j`) is set when strands `i` and `j` cross.
struct CrossingSet {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl CrossingSet {
    fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        CrossingSet {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    /// Crossing pairs when `crossing` is true, non-crossing pairs otherwise.
    fn of(p: &PermutationBraid, crossing: bool) -> Self {
        let n = p.n();
        let mut s = Self::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                if (p.img[i] > p.img[j]) == crossing {
                    s.set(i, j);
                }
            }
        }
        s
    }

    fn union_with(&mut self, other: &Self) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= *b;
        }
    }

    /// Transitive closure. Edges only point forward, so rows are finished
    /// from the bottom up.
    fn close(&mut self) {
        let w = self.words;
        let mut direct = vec![0u64; w];
        for i in (0..self.n).rev() {
            direct.copy_from_slice(self.row(i));
            for (wi, &word) in direct.iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let j = wi * 64 + word.trailing_zeros() as usize;
                    word &= word - 1;
                    for t in 0..w {
                        let v = self.bits[j * w + t];
                        self.bits[i * w + t] |= v;
                    }
                }
            }
        }
    }

    /// Rebuilds the permutation from its crossing set (`crossing`) or from
    /// the complement of it.
    #[allow(clippy::needless_range_loop)]
    fn to_perm(&self, crossing: bool) -> PermutationBraid {
        let n = self.n;
        let mut crossed_from_left = vec![0usize; n];
        let mut crossed_to_right = vec![0usize; n];
        for i in 0..n {
            for j in i + 1..n {
                let bit = self.row(i)[j / 64] >> (j % 64) & 1 == 1;
                if bit == crossing {
                    crossed_from_left[j] += 1;
                    crossed_to_right[i] += 1;
                }
            }
        }
        // Strands ending left of strand i: earlier strands it does not
        // cross plus later strands it does cross.
        PermutationBraid::from_raw(
            (0..n)
                .map(|i| (i - crossed_from_left[i] + crossed_to_right[i]) as u16)
                .collect(),
        )
    }
}

pub(crate) fn left_join(a: &PermutationBraid, b: &PermutationBraid) -> PermutationBraid {
    let mut s = CrossingSet::of(a, true);
    s.union_with(&CrossingSet::of(b, true));
    s.close();
    s.to_perm(true)
}

pub(crate) fn left_meet(a: &PermutationBraid, b: &PermutationBraid) -> PermutationBraid {
    // Complementing crossing sets reverses the order, so the meet is the
    // complement of the join of the complements.
    let mut s = CrossingSet::of(a, false);
    s.union_with(&CrossingSet::of(b, false));
    s.close();
    s.to_perm(false)
}

impl fmt::Display for PermutationBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.img.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p + 1)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for PermutationBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PermutationBraid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse {
                line: 1,
                column: 1,
                message: format!("expected [p1,...,pn], got {s:?}"),
            })?;
        let images = inner
            .split(',')
            .map(|t| {
                t.trim().parse::<usize>().map_err(|e| Error::Parse {
                    line: 1,
                    column: 1,
                    message: format!("bad image {t:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(&images)
    }
}
