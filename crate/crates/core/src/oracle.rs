//! Brute-force ground truth. Everything here walks all of `S_n` and checks
//! definitions directly, so it is only usable for small `n`.

use std::collections::{BTreeMap, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{canonical_sigma, factorial_usize, Permutation};
use crate::solver::{min_left_exponent, EquationInstance};
use crate::Nat;

pub const DEFAULT_ORACLE_BOUND: usize = 8;
/// Hard ceiling for the configurable bound; `10!` visited flags is the
/// largest table this module will allocate.
pub const MAX_ORACLE_BOUND: usize = 10;
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// One class of the partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassInfo {
    /// lexicographically smallest member
    pub representative: Permutation,
    pub size: u64,
    /// `(k, l)` of the representative, `None` for classes of size `n²`
    pub min_left_exponent: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub n: usize,
    pub sigma: Permutation,
    #[serde(serialize_with = "as_decimal")]
    pub class_count: Nat,
    /// class size -> number of classes of that size
    pub size_histogram: BTreeMap<u64, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_class: Option<Vec<ClassInfo>>,
}

fn as_decimal<S: serde::Serializer>(v: &Nat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl ClassReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Class labels for every element of `S_n`, indexed by lexicographic rank.
#[derive(Debug, Clone)]
pub struct ClassPartition {
    n: usize,
    labels: Vec<u32>,
    sizes: Vec<u64>,
}

impl ClassPartition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn label_of(&self, xi: &Permutation) -> u32 {
        self.labels[xi.rank()]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    /// Members of each class, in rank order.
    pub fn members(&self) -> Vec<Vec<Permutation>> {
        let mut out = vec![Vec::new(); self.sizes.len()];
        for (rank, &label) in self.labels.iter().enumerate() {
            out[label as usize].push(Permutation::unrank(self.n, rank));
        }
        out
    }
}

/// Brute-force runner with a size guard.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    bound: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            bound: DEFAULT_ORACLE_BOUND,
        }
    }
}

impl Oracle {
    pub fn with_bound(bound: usize) -> Result<Self> {
        if bound == 0 || bound > MAX_ORACLE_BOUND {
            return Err(Error::InvalidArgument(format!(
                "oracle bound must lie in 1..={MAX_ORACLE_BOUND}, got {bound}"
            )));
        }
        Ok(Oracle { bound })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    fn guard(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        if n > self.bound {
            return Err(Error::BoundExceeded {
                n,
                bound: self.bound,
            });
        }
        Ok(())
    }

    fn check_sigma(&self, sigma: &Permutation) -> Result<usize> {
        let n = sigma.degree();
        self.guard(n)?;
        if !sigma.is_full_cycle() {
            return Err(Error::NotFullCycle(n));
        }
        Ok(n)
    }

    /// Flood-fill the orbits of `ξ ↦ σξ` and `ξ ↦ ξσ` over all of `S_n`.
    pub fn partition(&self, sigma: &Permutation) -> Result<ClassPartition> {
        let n = self.check_sigma(sigma)?;
        let total = factorial_usize(n);
        const UNSEEN: u32 = u32::MAX;
        let mut labels = vec![UNSEEN; total];
        let mut sizes = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..total {
            if labels[start] != UNSEEN {
                continue;
            }
            let label = sizes.len() as u32;
            labels[start] = label;
            let mut size = 0u64;
            queue.push_back(Permutation::unrank(n, start));
            while let Some(xi) = queue.pop_front() {
                size += 1;
                for next in [sigma.compose_unchecked(&xi), xi.compose_unchecked(sigma)] {
                    let r = next.rank();
                    if labels[r] == UNSEEN {
                        labels[r] = label;
                        queue.push_back(next);
                    }
                }
            }
            sizes.push(size);
        }
        Ok(ClassPartition { n, labels, sizes })
    }

    /// Partition `S_n` into classes and summarize. With `detailed`, each
    /// class is listed with its smallest member and that member's exponents.
    pub fn enumerate_classes(&self, sigma: &Permutation, detailed: bool) -> Result<ClassReport> {
        let part = self.partition(sigma)?;
        let mut size_histogram = BTreeMap::new();
        for &s in part.sizes() {
            *size_histogram.entry(s).or_insert(0) += 1;
        }
        let per_class = if detailed {
            // labels are assigned in rank order, so the first rank seen for a
            // label is its smallest member
            let mut reps: Vec<Option<usize>> = vec![None; part.class_count()];
            for (rank, &label) in part.labels().iter().enumerate() {
                reps[label as usize].get_or_insert(rank);
            }
            let mut infos = Vec::with_capacity(reps.len());
            for (label, rank) in reps.into_iter().enumerate() {
                let representative = Permutation::unrank(part.n(), rank.expect("nonempty class"));
                let min = min_left_exponent(&representative, sigma)?;
                infos.push(ClassInfo {
                    representative,
                    size: part.sizes()[label],
                    min_left_exponent: min,
                });
            }
            Some(infos)
        } else {
            None
        };
        Ok(ClassReport {
            n: part.n(),
            sigma: sigma.clone(),
            class_count: Nat::from(part.class_count()),
            size_histogram,
            per_class,
        })
    }

    /// Count `ξ ∈ S_n` with `σ^k ξ = ξ σ^l` by testing every element.
    pub fn count_equation_solutions(
        &self,
        sigma: &Permutation,
        k: usize,
        l: usize,
    ) -> Result<Nat> {
        let n = self.check_sigma(sigma)?;
        let inst = EquationInstance::new(sigma.clone(), k, l)?;
        let count = (0..factorial_usize(n))
            .filter(|&r| inst.holds(&Permutation::unrank(n, r)))
            .count();
        Ok(Nat::from(count))
    }

    /// The full cycles used by the σ-independence check: the shift, its
    /// inverse and up to `extra` distinct random conjugates of the shift.
    pub fn sample_full_cycles(&self, n: usize, seed: u64, extra: usize) -> Result<Vec<Permutation>> {
        self.guard(n)?;
        let shift = canonical_sigma(n);
        let mut out = vec![shift.clone()];
        let inv = shift.inverse();
        if !out.contains(&inv) {
            out.push(inv);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut added = 0;
        let mut attempts = 0;
        while added < extra && attempts < 64 * (extra + 1) {
            attempts += 1;
            let mut images: Vec<usize> = (1..=n).collect();
            images.shuffle(&mut rng);
            let h = Permutation::from_images(images).expect("shuffle is a bijection");
            let conj = h.compose_unchecked(&shift).compose_unchecked(&h.inverse());
            if !out.contains(&conj) {
                out.push(conj);
                added += 1;
            }
        }
        Ok(out)
    }

    /// Run the class enumeration for several full cycles and report whether
    /// all of them produce the same count and size histogram.
    pub fn sigma_independence_check(&self, n: usize, seed: u64) -> Result<bool> {
        let sigmas = self.sample_full_cycles(n, seed, 3)?;
        let mut reference: Option<ClassReport> = None;
        for s in &sigmas {
            let r = self.enumerate_classes(s, false)?;
            match &reference {
                None => reference = Some(r),
                Some(first) => {
                    if first.class_count != r.class_count
                        || first.size_histogram != r.size_histogram
                    {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// [`Oracle::enumerate_classes`] with the default bound and no per-class detail.
pub fn enumerate_classes(sigma: &Permutation) -> Result<ClassReport> {
    Oracle::default().enumerate_classes(sigma, false)
}

/// [`Oracle::count_equation_solutions`] with the default bound.
pub fn count_equation_solutions(sigma: &Permutation, k: usize, l: usize) -> Result<Nat> {
    Oracle::default().count_equation_solutions(sigma, k, l)
}

/// [`Oracle::sigma_independence_check`] with the default bound.
pub fn sigma_independence_check(n: usize, seed: u64) -> Result<bool> {
    Oracle::default().sigma_independence_check(n, seed)
}
