//! Constructive solutions of `σ^k ξ = ξ σ^l` for a full cycle `σ`.
//!
//! Writing `ξ = [x_1 ... x_n]`, the equation is the system
//! `x_{σ^k(r)} = σ^l(x_r)`. The points split into `k` blocks
//! `A_i = {σ^{tk}(m_i)}` of size `n/k`. Choosing the value of `x` at the
//! anchor `m_i` of each block fixes the whole block, and the admissible
//! choices are: send the blocks bijectively onto blocks, and pick any
//! element of the target block as the anchor value. That gives
//! `k! (n/k)^k` solutions.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::zn::gcd;

/// Why a pair `(k, l)` admits no solution with minimal left exponent `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionFailure {
    /// `k` or `l` is outside `1..=n`
    OutOfRange,
    /// `k ∤ n`
    KDoesNotDivideN,
    /// `k ∤ l`
    KDoesNotDivideL,
    /// no `s` with `gcd(s, n) = 1`, `1 <= s < n` and `l ≡ s·k (mod n)`
    NoCoprimeMultiplier,
    /// `k = n` only pairs with `l = n`
    TopVertexNeedsLEqualN,
}

impl fmt::Display for ConditionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConditionFailure::OutOfRange => "k and l must lie in 1..=n",
            ConditionFailure::KDoesNotDivideN => "k does not divide n",
            ConditionFailure::KDoesNotDivideL => "k does not divide l",
            ConditionFailure::NoCoprimeMultiplier => {
                "l is not s*k mod n for any s coprime to n"
            }
            ConditionFailure::TopVertexNeedsLEqualN => "k = n requires l = n",
        };
        f.write_str(s)
    }
}

/// Check the admissibility conditions for `(k, l)` directly, including the
/// search for a multiplier `s` coprime to `n` with `l = s ⊙ k`. The pair
/// `(n, n)` is admissible and stands for the trivial equation `ξ = ξ`.
pub fn check_conditions(n: usize, k: usize, l: usize) -> Result<(), ConditionFailure> {
    if n == 0 || k == 0 || l == 0 || k > n || l > n {
        return Err(ConditionFailure::OutOfRange);
    }
    if !n.is_multiple_of(k) {
        return Err(ConditionFailure::KDoesNotDivideN);
    }
    if k == n {
        return if l == n {
            Ok(())
        } else {
            Err(ConditionFailure::TopVertexNeedsLEqualN)
        };
    }
    if !l.is_multiple_of(k) {
        return Err(ConditionFailure::KDoesNotDivideL);
    }
    let found = (1..n)
        .filter(|&s| gcd(s as u64, n as u64) == 1)
        .any(|s| {
            let r = s * k % n;
            (if r == 0 { n } else { r }) == l
        });
    if found {
        Ok(())
    } else {
        Err(ConditionFailure::NoCoprimeMultiplier)
    }
}

/// `σ^k ξ = ξ σ^l` over a fixed full cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationInstance {
    sigma: Permutation,
    k: usize,
    l: usize,
    sigma_k: Permutation,
    sigma_l: Permutation,
}

impl EquationInstance {
    pub fn new(sigma: Permutation, k: usize, l: usize) -> Result<Self> {
        let n = sigma.degree();
        if !sigma.is_full_cycle() {
            return Err(Error::NotFullCycle(n));
        }
        if k == 0 || l == 0 || k > n || l > n {
            return Err(Error::InvalidArgument(format!(
                "exponents must lie in 1..={n}, got k={k}, l={l}"
            )));
        }
        let sigma_k = sigma.power(k as u64);
        let sigma_l = sigma.power(l as u64);
        Ok(EquationInstance {
            sigma,
            k,
            l,
            sigma_k,
            sigma_l,
        })
    }

    pub fn n(&self) -> usize {
        self.sigma.degree()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    /// Test the equation by explicit composition.
    pub fn holds(&self, xi: &Permutation) -> bool {
        xi.degree() == self.n()
            && self.sigma_k.compose_unchecked(xi) == xi.compose_unchecked(&self.sigma_l)
    }
}

/// The blocks `A_1..A_k` with their anchors `m_1..m_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    k: usize,
    /// 1-based points; block i lists m_i, σ^k(m_i), σ^{2k}(m_i), ...
    blocks: Vec<Vec<usize>>,
}

impl BlockPartition {
    pub fn new(sigma: &Permutation, k: usize) -> Result<Self> {
        let n = sigma.degree();
        if k == 0 || !n.is_multiple_of(k) {
            return Err(Error::NotADivisor {
                k: k as u64,
                n: n as u64,
            });
        }
        if !sigma.is_full_cycle() {
            return Err(Error::NotFullCycle(n));
        }
        let step = sigma.power(k as u64);
        let mut covered = vec![false; n];
        let mut blocks = Vec::with_capacity(k);
        for _ in 0..k {
            let anchor = covered.iter().position(|&c| !c).expect("k blocks cover n points");
            let mut block = Vec::with_capacity(n / k);
            let mut p = anchor;
            for _ in 0..n / k {
                covered[p] = true;
                block.push(p + 1);
                p = step.zero_based()[p];
            }
            blocks.push(block);
        }
        Ok(BlockPartition { k, blocks })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn anchors(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b[0]).collect()
    }

    /// Index of the block containing the 1-based point `x`.
    pub fn block_of(&self, x: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&x))
    }
}

/// The unique solution of `σ ξ = ξ σ^l` with `ξ(1) = a`, obtained by
/// unrolling `x_{σ^t(1)} = σ^{tl}(a)`.
pub fn solve_base(sigma: &Permutation, l: usize, a: usize) -> Result<Permutation> {
    let n = sigma.degree();
    if !sigma.is_full_cycle() {
        return Err(Error::NotFullCycle(n));
    }
    if l == 0 {
        return Err(Error::InvalidArgument("l must be positive".into()));
    }
    if a == 0 || a > n {
        return Err(Error::InvalidArgument(format!("a={a} is outside 1..={n}")));
    }
    if gcd(l as u64, n as u64) != 1 {
        return Err(Error::NoSolution { n, l });
    }
    let sigma_l = sigma.power(l as u64);
    let mut x = vec![usize::MAX; n];
    let mut pos = 0;
    let mut val = a - 1;
    for _ in 0..n {
        x[pos] = val;
        pos = sigma.zero_based()[pos];
        val = sigma_l.zero_based()[val];
    }
    Ok(Permutation::from_zero_based(x))
}

/// Lazily enumerates all solutions of an admissible instance, ordered by
/// block bijection (lexicographic) and then by anchor values (lexicographic).
#[derive(Debug, Clone)]
pub struct Solutions {
    n: usize,
    /// 0-based blocks, each listed in σ^k order from its anchor
    blocks: Vec<Vec<usize>>,
    /// 0-based blocks sorted ascending, used as anchor value choices
    targets: Vec<Vec<usize>>,
    sigma_k: Vec<usize>,
    sigma_l: Vec<usize>,
    assignment: Vec<usize>,
    choice: Vec<usize>,
    done: bool,
}

impl Solutions {
    fn new(inst: &EquationInstance) -> Result<Self> {
        let (n, k, l) = (inst.n(), inst.k(), inst.l());
        check_conditions(n, k, l).map_err(|reason| Error::InvalidParameters { n, k, l, reason })?;
        let part = BlockPartition::new(inst.sigma(), k)?;
        let blocks: Vec<Vec<usize>> = part
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&x| x - 1).collect())
            .collect();
        let targets = blocks
            .iter()
            .map(|b| {
                let mut s = b.clone();
                s.sort_unstable();
                s
            })
            .collect();
        Ok(Solutions {
            n,
            blocks,
            targets,
            sigma_k: inst.sigma_k.zero_based().to_vec(),
            sigma_l: inst.sigma_l.zero_based().to_vec(),
            assignment: (0..k).collect(),
            choice: vec![0; k],
            done: false,
        })
    }

    fn current(&self) -> Permutation {
        let mut x = vec![usize::MAX; self.n];
        for (i, block) in self.blocks.iter().enumerate() {
            let mut pos = block[0];
            let mut val = self.targets[self.assignment[i]][self.choice[i]];
            for _ in 0..block.len() {
                x[pos] = val;
                pos = self.sigma_k[pos];
                val = self.sigma_l[val];
            }
        }
        Permutation::from_zero_based(x)
    }

    fn advance(&mut self) {
        let size = self.n / self.blocks.len();
        for c in self.choice.iter_mut().rev() {
            *c += 1;
            if *c < size {
                return;
            }
            *c = 0;
        }
        if !next_permutation(&mut self.assignment) {
            self.done = true;
        }
    }
}

impl Iterator for Solutions {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let out = self.current();
        self.advance();
        Some(out)
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("a larger element exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Stream the solutions of an admissible instance.
pub fn solutions(inst: &EquationInstance) -> Result<Solutions> {
    Solutions::new(inst)
}

/// All solutions of an admissible instance, in deterministic order.
///
/// Fails with [`Error::InvalidParameters`] when `(k, l)` violates the
/// admissibility conditions; such pairs carry no solutions with minimal
/// left exponent `k`.
pub fn enumerate_solutions(inst: &EquationInstance) -> Result<Vec<Permutation>> {
    Ok(solutions(inst)?.collect())
}

/// The least `k` in `1..n` for which some `l` in `1..n` gives
/// `σ^k ξ = ξ σ^l`, with that `l`. `None` when no such pair exists, which
/// is the case of a class of size `n²`.
pub fn min_left_exponent(xi: &Permutation, sigma: &Permutation) -> Result<Option<(usize, usize)>> {
    let n = sigma.degree();
    if xi.degree() != n {
        return Err(Error::DegreeMismatch {
            left: xi.degree(),
            right: n,
        });
    }
    if !sigma.is_full_cycle() {
        return Err(Error::NotFullCycle(n));
    }
    let mut powers = Vec::with_capacity(n);
    let mut p = Permutation::identity(n);
    for _ in 0..n {
        powers.push(p.clone());
        p = p.compose_unchecked(sigma);
    }
    let right: Vec<Permutation> = powers.iter().map(|s| xi.compose_unchecked(s)).collect();
    for (k, pk) in powers.iter().enumerate().skip(1) {
        let left = pk.compose_unchecked(xi);
        if let Some(l) = (1..n).find(|&l| right[l] == left) {
            return Ok(Some((k, l)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::canonical_sigma;

    fn p(v: &[usize]) -> Permutation {
        Permutation::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn solve_base_examples() {
        let s5 = canonical_sigma(5);
        let xi = solve_base(&s5, 2, 1).unwrap();
        assert_eq!(xi, p(&[1, 3, 5, 2, 4]));
        // σξ = ξσ² by hand: σξ = [3 5 2 4 1], ξσ² = [3 5 2 4 1]
        assert_eq!(
            s5.compose(&xi).unwrap().images(),
            xi.compose(&s5.power(2)).unwrap().images()
        );
        assert!(solve_base(&s5, 1, 1).unwrap().is_identity());
        assert_eq!(
            solve_base(&canonical_sigma(6), 2, 1),
            Err(Error::NoSolution { n: 6, l: 2 })
        );
        assert!(solve_base(&s5, 2, 0).is_err());
        assert!(solve_base(&s5, 2, 6).is_err());
        assert!(solve_base(&Permutation::identity(3), 1, 1).is_err());
    }

    #[test]
    fn solve_base_distinct_anchors_give_distinct_solutions() {
        let s = canonical_sigma(7);
        for l in 1..7 {
            let sols: Vec<_> = (1..=7).map(|a| solve_base(&s, l, a).unwrap()).collect();
            for (i, a) in sols.iter().enumerate() {
                for b in &sols[i + 1..] {
                    assert_ne!(a, b);
                }
            }
        }
    }

    #[test]
    fn conditions() {
        assert_eq!(check_conditions(4, 2, 2), Ok(()));
        assert_eq!(check_conditions(12, 2, 10), Ok(()));
        assert_eq!(check_conditions(12, 2, 6), Err(ConditionFailure::NoCoprimeMultiplier));
        assert_eq!(check_conditions(12, 5, 5), Err(ConditionFailure::KDoesNotDivideN));
        assert_eq!(check_conditions(12, 2, 3), Err(ConditionFailure::KDoesNotDivideL));
        assert_eq!(check_conditions(12, 2, 12), Err(ConditionFailure::NoCoprimeMultiplier));
        assert_eq!(check_conditions(12, 12, 12), Ok(()));
        assert_eq!(check_conditions(12, 12, 1), Err(ConditionFailure::TopVertexNeedsLEqualN));
        assert_eq!(check_conditions(12, 0, 1), Err(ConditionFailure::OutOfRange));
        assert_eq!(check_conditions(6, 1, 2), Err(ConditionFailure::NoCoprimeMultiplier));
        assert_eq!(check_conditions(1, 1, 1), Ok(()));
    }

    #[test]
    fn block_partition_shape() {
        let part = BlockPartition::new(&canonical_sigma(12), 4).unwrap();
        assert_eq!(
            part.blocks(),
            &[vec![1, 5, 9], vec![2, 6, 10], vec![3, 7, 11], vec![4, 8, 12]]
        );
        assert_eq!(part.anchors(), vec![1, 2, 3, 4]);
        assert_eq!(part.block_of(10), Some(1));
        assert!(BlockPartition::new(&canonical_sigma(12), 5).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let inst = EquationInstance::new(canonical_sigma(4), 2, 2).unwrap();
        let sols = enumerate_solutions(&inst).unwrap();
        assert_eq!(sols.len(), 8);
        assert!(sols.iter().all(|x| inst.holds(x)));

        let inst = EquationInstance::new(canonical_sigma(3), 1, 2).unwrap();
        let sols = enumerate_solutions(&inst).unwrap();
        assert_eq!(sols.len(), 3);
        assert!(sols.iter().all(|x| inst.holds(x)));

        let inst = EquationInstance::new(canonical_sigma(2), 2, 2).unwrap();
        let sols = enumerate_solutions(&inst).unwrap();
        assert_eq!(sols, vec![p(&[1, 2]), p(&[2, 1])]);
    }

    #[test]
    fn enumerate_rejects_inadmissible_pairs() {
        let inst = EquationInstance::new(canonical_sigma(6), 1, 2).unwrap();
        assert_eq!(
            enumerate_solutions(&inst),
            Err(Error::InvalidParameters {
                n: 6,
                k: 1,
                l: 2,
                reason: ConditionFailure::NoCoprimeMultiplier
            })
        );
        assert!(EquationInstance::new(Permutation::identity(3), 1, 1).is_err());
        assert!(EquationInstance::new(canonical_sigma(3), 0, 1).is_err());
        assert!(EquationInstance::new(canonical_sigma(3), 1, 4).is_err());
    }

    #[test]
    fn enumeration_order_is_lexicographic_in_choices() {
        let inst = EquationInstance::new(canonical_sigma(5), 1, 2).unwrap();
        let sols = enumerate_solutions(&inst).unwrap();
        let base: Vec<_> = (1..=5).map(|a| solve_base(inst.sigma(), 2, a).unwrap()).collect();
        assert_eq!(sols, base);
    }

    #[test]
    fn min_left_exponent_examples() {
        assert_eq!(
            min_left_exponent(&Permutation::identity(5), &canonical_sigma(5)).unwrap(),
            Some((1, 1))
        );
        assert_eq!(
            min_left_exponent(&p(&[1, 3, 5, 2, 4]), &canonical_sigma(5)).unwrap(),
            Some((1, 2))
        );
        // σξ = [1 4 3 2] = ξσ³, so the reflection already relates at k = 1
        assert_eq!(
            min_left_exponent(&p(&[2, 1, 4, 3]), &canonical_sigma(4)).unwrap(),
            Some((1, 3))
        );
        // σ²ξ = [3 6 5 2 1 4] = ξσ², and no k = 1 relation holds
        assert_eq!(
            min_left_exponent(&p(&[1, 4, 3, 6, 5, 2]), &canonical_sigma(6)).unwrap(),
            Some((2, 2))
        );
        // [1 3 2 4]: σ²ξ = [2 4 1 3] is not ξσ^l for any l
        assert_eq!(
            min_left_exponent(&p(&[1, 3, 2, 4]), &canonical_sigma(4)).unwrap(),
            None
        );
        assert!(min_left_exponent(&Permutation::identity(3), &canonical_sigma(4)).is_err());
    }

    #[test]
    fn next_permutation_walks_all_orders() {
        let mut v = vec![0, 1, 2];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen.last().unwrap(), &vec![2, 1, 0]);
    }
}
