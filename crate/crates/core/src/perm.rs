//! Permutations of `{1..n}` in one-line notation.
//!
//! Products are read left to right: `(αβ)(i) = β(α(i))`. This is the only
//! composition exposed, so `σ^k ξ` and `ξ σ^l` always mean "σ^k first" and
//! "ξ first" respectively.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::zn::lcm;

/// An element of `S_n`. Points are 1-based in the public API.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "degree must be at least 1");
        Permutation {
            map: (0..n).collect(),
        }
    }

    /// The shift `i ↦ i + 1 (mod n)`, i.e. `[2 3 ... n 1]`. For `n = 1`
    /// this is the identity.
    pub fn shift(n: usize) -> Self {
        assert!(n >= 1, "degree must be at least 1");
        Permutation {
            map: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    /// Build from 1-based images `[α(1), ..., α(n)]`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty image list".into()));
        }
        let mut seen = vec![false; n];
        let mut map = images;
        for x in map.iter_mut() {
            if *x == 0 || *x > n {
                return Err(Error::InvalidPermutation(format!(
                    "image {x} is outside 1..={n}"
                )));
            }
            *x -= 1;
            if std::mem::replace(&mut seen[*x], true) {
                return Err(Error::InvalidPermutation(format!(
                    "image {} appears twice",
                    *x + 1
                )));
            }
        }
        Ok(Permutation { map })
    }

    /// Build from 0-based images without validation beyond a debug check.
    pub(crate) fn from_zero_based(map: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = map.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &x)| i == x)
        });
        Permutation { map }
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    /// `α(i)` for a 1-based point. Panics when `i` is outside `1..=n`.
    pub fn image(&self, i: usize) -> usize {
        self.map[i - 1] + 1
    }

    /// 1-based one-line notation.
    pub fn images(&self) -> Vec<usize> {
        self.map.iter().map(|&x| x + 1).collect()
    }

    pub(crate) fn zero_based(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self · other`, i.e. apply `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { map: inv }
    }

    /// `self^e` by repeated squaring.
    pub fn power(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least 2, each starting at its smallest
    /// point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.map[i];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// The least `m >= 1` with `self^m = ε`.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Whether the permutation is a single cycle through all `n` points.
    /// The identity of `S_1` counts as one.
    pub fn is_full_cycle(&self) -> bool {
        let n = self.degree();
        let mut len = 1;
        let mut i = self.map[0];
        while i != 0 {
            i = self.map[i];
            len += 1;
        }
        len == n
    }

    pub fn cycle_notation(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("({})", body.join(" "))
            })
            .collect()
    }

    /// Lexicographic rank of the one-line notation in `0..n!`.
    pub fn rank(&self) -> usize {
        let n = self.degree();
        let mut rank = 0;
        for i in 0..n {
            let smaller_after = self.map[i + 1..]
                .iter()
                .filter(|&&x| x < self.map[i])
                .count();
            rank = rank * (n - i) + smaller_after;
        }
        rank
    }

    /// Inverse of [`rank`](Self::rank).
    pub fn unrank(n: usize, mut rank: usize) -> Permutation {
        let mut digits = vec![0; n];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut pool: Vec<usize> = (0..n).collect();
        let map = digits.into_iter().map(|d| pool.remove(d)).collect();
        Permutation { map }
    }
}

/// The canonical full cycle `[2 3 ... n 1]`.
pub fn canonical_sigma(n: usize) -> Permutation {
    Permutation::shift(n)
}

/// `n!` as a `usize`, for enumeration bounds.
pub(crate) fn factorial_usize(n: usize) -> usize {
    (1..=n).product()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", x + 1)?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(serializer)
    }
}
