//! Vertices of a symmetric graph of type `k` and order `r`, modeled as reduced
//! words in the free product of `r` copies of `Z/kZ`.
//!
//! The polygon distance between two vertices is the syllable count of
//! `x⁻¹y`. For `k = 2` the same model (free product of `r` copies of `Z/2Z`)
//! gives the homogeneous tree of degree `2r` with the correct metric data.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// `(k, r)` together with the derived constants used everywhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphParams {
    k: u32,
    r: u32,
}

impl GraphParams {
    pub fn new(k: u32, r: u32) -> Result<Self> {
        if k < 2 || r < 2 {
            return Err(Error::InvalidParams {
                k,
                r,
                reason: "k and r must both be at least 2",
            });
        }
        if k > 255 || r > 255 {
            return Err(Error::InvalidParams {
                k,
                r,
                reason: "k and r are limited to 255",
            });
        }
        Ok(GraphParams { k, r })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `Q = (r−1)(k−1)`.
    pub fn q(&self) -> u64 {
        u64::from(self.r - 1) * u64::from(self.k - 1)
    }

    /// `σ = k − 2`.
    pub fn sigma(&self) -> i64 {
        i64::from(self.k) - 2
    }

    /// `r(k−1)`, the number of vertices at polygon distance one.
    pub fn degree(&self) -> u64 {
        u64::from(self.r) * u64::from(self.k - 1)
    }

    /// Spectral period `τ = 2π / ln Q`; `None` when `Q = 1`.
    pub fn tau(&self) -> Option<f64> {
        (self.q() >= 2).then(|| 2.0 * std::f64::consts::PI / (self.q() as f64).ln())
    }

    pub fn require_spectral(&self) -> Result<()> {
        if self.q() < 2 {
            return Err(Error::SpectralUnavailable { q: self.q() });
        }
        Ok(())
    }

    /// Size of the sphere of radius `n`: `1` for `n = 0`, else `r(k−1)Q^{n−1}`.
    pub fn delta(&self, n: usize) -> u128 {
        if n == 0 {
            return 1;
        }
        let q = u128::from(self.q());
        let exp = u32::try_from(n - 1).expect("radius too large");
        u128::from(self.degree())
            .checked_mul(q.checked_pow(exp).expect("sphere size overflows u128"))
            .expect("sphere size overflows u128")
    }

    pub fn delta_rational(&self, n: usize) -> BigRational {
        BigRational::from_integer(BigInt::from(self.delta(n)))
    }

    /// Multiplies and reduces: adjacent equal generators merge with exponents
    /// added mod `k`; zero exponents vanish.
    pub fn mul(&self, x: &ReducedWord, y: &ReducedWord) -> ReducedWord {
        let k = self.k as u8;
        let mut out = x.syllables.clone();
        for s in &y.syllables {
            match out.last() {
                Some(last) if last.generator == s.generator => {
                    let e =
                        ((u32::from(last.exponent) + u32::from(s.exponent)) % u32::from(k)) as u8;
                    out.pop();
                    if e != 0 {
                        out.push(Syllable::new(s.generator, e));
                    }
                }
                _ => out.push(*s),
            }
        }
        ReducedWord { syllables: out }
    }

    pub fn inv(&self, x: &ReducedWord) -> ReducedWord {
        let k = self.k as u8;
        ReducedWord {
            syllables: x
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.generator, k - s.exponent))
                .collect(),
        }
    }

    /// The `r(k−1)` vertices at polygon distance one from `x`, i.e. `x·a_i^e`.
    pub fn neighbors<'a>(&'a self, x: &'a ReducedWord) -> impl Iterator<Item = ReducedWord> + 'a {
        let k = self.k as u8;
        (0..self.r as u8).flat_map(move |i| {
            (1..k).map(move |e| {
                let mut out = x.clone();
                match out.syllables.last().copied() {
                    Some(last) if last.generator == i => {
                        out.syllables.pop();
                        let ne = (last.exponent + e) % k;
                        if ne != 0 {
                            out.syllables.push(Syllable::new(i, ne));
                        }
                    }
                    _ => out.syllables.push(Syllable::new(i, e)),
                }
                out
            })
        })
    }

    /// Polygon distance `|x⁻¹y|`.
    pub fn distance(&self, x: &ReducedWord, y: &ReducedWord) -> usize {
        // Only the part after the common prefix matters.
        let common = x
            .syllables
            .iter()
            .zip(&y.syllables)
            .take_while(|(a, b)| a == b)
            .count();
        let xs = &x.syllables[common..];
        let ys = &y.syllables[common..];
        match (xs.first(), ys.first()) {
            // Diverging at a syllable with the same generator: the two
            // syllables merge into one (never cancel, since they differ).
            (Some(a), Some(b)) if a.generator == b.generator => xs.len() + ys.len() - 1,
            _ => xs.len() + ys.len(),
        }
    }

    /// All words of exactly `n` syllables, depth-first and lexicographic in
    /// `(generator, exponent)`.
    pub fn sphere(&self, n: usize) -> SphereIter {
        SphereIter::new(*self, n)
    }

    /// `S(x, n) = x · S(o, n)`.
    pub fn sphere_about<'a>(
        &'a self,
        x: &'a ReducedWord,
        n: usize,
    ) -> impl Iterator<Item = ReducedWord> + 'a {
        self.sphere(n).map(move |w| self.mul(x, &w))
    }

    /// The ball `B(o, n)` as concatenated spheres.
    pub fn ball(&self, n: usize) -> impl Iterator<Item = ReducedWord> + '_ {
        (0..=n).flat_map(move |m| self.sphere(m))
    }

    pub fn ball_about<'a>(
        &'a self,
        x: &'a ReducedWord,
        n: usize,
    ) -> impl Iterator<Item = ReducedWord> + 'a {
        (0..=n).flat_map(move |m| self.sphere_about(x, m))
    }

    /// Parses `a0^1.a1^2` (or `e` for the identity), checking reducedness.
    pub fn parse_word(&self, s: &str) -> Result<ReducedWord> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(ReducedWord::identity());
        }
        let mut syllables = SmallVec::new();
        for part in s.split('.') {
            let bad = || Error::Parse(format!("bad syllable `{part}` in `{s}`"));
            let body = part.strip_prefix('a').ok_or_else(bad)?;
            let (g, e) = body.split_once('^').unwrap_or((body, "1"));
            let g: u32 = g.parse().map_err(|_| bad())?;
            let e: u32 = e.parse().map_err(|_| bad())?;
            if g >= self.r || e == 0 || e >= self.k {
                return Err(Error::Parse(format!(
                    "syllable `{part}` out of range for k={}, r={}",
                    self.k, self.r
                )));
            }
            syllables.push(Syllable::new(g as u8, e as u8));
        }
        let word = ReducedWord { syllables };
        if !word.is_reduced() {
            return Err(Error::Parse(format!("`{s}` is not reduced")));
        }
        Ok(word)
    }
}

/// One factor `a_i^e` of a reduced word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub generator: u8,
    pub exponent: u8,
}

impl Syllable {
    pub fn new(generator: u8, exponent: u8) -> Self {
        Syllable {
            generator,
            exponent,
        }
    }
}

/// A group element / vertex, stored as its reduced syllable sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    syllables: SmallVec<[Syllable; 8]>,
}

impl ReducedWord {
    pub fn identity() -> Self {
        ReducedWord::default()
    }

    /// Builds a word from `(generator, exponent)` pairs; the caller keeps the
    /// pairs reduced for the intended `(k, r)`.
    pub fn from_pairs(pairs: &[(u8, u8)]) -> Self {
        let w = ReducedWord {
            syllables: pairs.iter().map(|&(g, e)| Syllable::new(g, e)).collect(),
        };
        debug_assert!(w.is_reduced());
        w
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// `|x|`, the syllable count.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.syllables.iter().all(|s| s.exponent != 0)
            && self
                .syllables
                .windows(2)
                .all(|w| w[0].generator != w[1].generator)
    }

    /// First `m` syllables.
    pub fn prefix(&self, m: usize) -> ReducedWord {
        ReducedWord {
            syllables: self.syllables[..m.min(self.len())]
                .iter()
                .copied()
                .collect(),
        }
    }

    pub fn push(&mut self, s: Syllable) {
        self.syllables.push(s);
        debug_assert!(self.is_reduced());
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("e");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "a{}^{}", s.generator, s.exponent)?;
        }
        Ok(())
    }
}

/// Odometer over reduced words of fixed length.
pub struct SphereIter {
    params: GraphParams,
    current: Option<Vec<Syllable>>,
}

impl SphereIter {
    fn new(params: GraphParams, n: usize) -> Self {
        let mut first = Vec::with_capacity(n);
        for i in 0..n {
            first.push(Syllable::new((i % 2) as u8, 1));
        }
        SphereIter {
            params,
            current: Some(first),
        }
    }

    /// Smallest valid syllable at a position whose predecessor has generator `prev`.
    fn smallest_after(prev: Option<u8>) -> Syllable {
        match prev {
            Some(0) => Syllable::new(1, 1),
            _ => Syllable::new(0, 1),
        }
    }

    fn advance(&mut self) {
        let k = self.params.k as u8;
        let r = self.params.r as u8;
        let Some(cur) = self.current.as_mut() else {
            return;
        };
        let mut pos = cur.len();
        loop {
            if pos == 0 {
                self.current = None;
                return;
            }
            pos -= 1;
            let prev = if pos == 0 {
                None
            } else {
                Some(cur[pos - 1].generator)
            };
            let s = cur[pos];
            if s.exponent + 1 < k {
                cur[pos] = Syllable::new(s.generator, s.exponent + 1);
                break;
            }
            let mut g = s.generator + 1;
            if Some(g) == prev {
                g += 1;
            }
            if g < r {
                cur[pos] = Syllable::new(g, 1);
                break;
            }
        }
        for i in pos + 1..cur.len() {
            let prev = Some(cur[i - 1].generator);
            cur[i] = Self::smallest_after(prev);
        }
    }
}

impl Iterator for SphereIter {
    type Item = ReducedWord;

    fn next(&mut self) -> Option<ReducedWord> {
        let out = ReducedWord {
            syllables: self.current.as_ref()?.iter().copied().collect(),
        };
        self.advance();
        Some(out)
    }
}
