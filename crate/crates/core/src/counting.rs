//! Exact class counts.
//!
//! For a divisor `k` of `n`, `h(n, k)` is the number of classes attached to
//! any one vertex `⟨k, l⟩` of the graph. It satisfies `h(n, 1) = 1` and
//!
//! ```text
//! k · h(n, k) = (k-1)! (n/k)^(k-1) - Σ_{r | k, r < k} r · τ(n, k, r) · h(n, r)
//! ```
//!
//! and the number of classes is `Σ_{k | n} φ(n/k) · h(n, k)`. All of this is
//! generic over [`CountScalar`]; every division is checked for exactness.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::GammaGraph;
use crate::scalar::{factorial, pow, CountScalar};
use crate::zn::{divisors, is_prime, totient};

/// `p(n, k) = k! (n/k)^k`: the number of solutions of `σ^k ξ = ξ σ^l` for
/// any admissible `l`.
pub fn p_count<T: CountScalar>(n: u64, k: u64) -> Result<T> {
    if n == 0 || k == 0 || !n.is_multiple_of(k) {
        return Err(Error::NotADivisor { k, n });
    }
    let f: T = factorial(k)?;
    f.mul_checked(&pow(n / k, k)?, "p(n,k)")
}

/// h(n, r) for every divisor `r` of `upto`, filled in ascending order.
fn h_memo<T: CountScalar>(g: &GammaGraph, upto: u64) -> Result<BTreeMap<u64, T>> {
    let n = g.n();
    let mut memo: BTreeMap<u64, T> = BTreeMap::new();
    for k in divisors(upto) {
        if k == 1 {
            memo.insert(1, T::one());
            continue;
        }
        let ctx = format!("h({n},{k})");
        let head: T = factorial::<T>(k - 1)?.mul_checked(&pow(n / k, k - 1)?, &ctx)?;
        let mut subtrahend = T::zero();
        for (&r, h_r) in memo.iter().filter(|(&r, _)| k % r == 0) {
            let tau = g.tau(k, r)?;
            let term = T::from_u64_checked(r, &ctx)?
                .mul_checked(&T::from_u64_checked(tau, &ctx)?, &ctx)?
                .mul_checked(h_r, &ctx)?;
            subtrahend = subtrahend.add_checked(&term, &ctx)?;
        }
        let h = head.sub_nonneg(&subtrahend, &ctx)?.div_exactly(k, &ctx)?;
        memo.insert(k, h);
    }
    Ok(memo)
}

/// h(n, k) for a divisor `k` of `n = g.n()`.
pub fn h_count<T: CountScalar>(g: &GammaGraph, k: u64) -> Result<T> {
    let n = g.n();
    if k == 0 || !n.is_multiple_of(k) {
        return Err(Error::NotADivisor { k, n });
    }
    let mut memo = h_memo::<T>(g, k)?;
    Ok(memo.remove(&k).expect("k is its own divisor"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column<T> {
    pub k: u64,
    /// φ(n/k): number of vertices with first coordinate `k`
    pub phi: T,
    pub h: T,
    pub product: T,
}

/// The four-row tabulation (divisors, φ(n/k), h(n,k), product) with its
/// column sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable<T> {
    n: u64,
    columns: Vec<Column<T>>,
    total: T,
}

impl<T: CountScalar> CountTable<T> {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// One column per divisor of `n`, ascending.
    pub fn columns(&self) -> &[Column<T>] {
        &self.columns
    }

    pub fn total(&self) -> &T {
        &self.total
    }

    pub fn into_total(self) -> T {
        self.total
    }

    pub fn column(&self, k: u64) -> Option<&Column<T>> {
        self.columns.iter().find(|c| c.k == k)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct ColumnJson {
            k: u64,
            phi: String,
            h: String,
            product: String,
        }
        #[derive(Serialize)]
        struct TableJson {
            n: u64,
            columns: Vec<ColumnJson>,
            total: String,
        }
        let t = TableJson {
            n: self.n,
            columns: self
                .columns
                .iter()
                .map(|c| ColumnJson {
                    k: c.k,
                    phi: c.phi.to_string(),
                    h: c.h.to_string(),
                    product: c.product.to_string(),
                })
                .collect(),
            total: self.total.to_string(),
        };
        serde_json::to_string(&t).expect("table serializes")
    }

    /// Four labelled, right-aligned rows followed by the total.
    pub fn to_text(&self) -> String {
        let labels = ["k|n", "phi(n/k)", "h(n,k)", "product"];
        let cells: Vec<[String; 4]> = self
            .columns
            .iter()
            .map(|c| {
                [
                    c.k.to_string(),
                    c.phi.to_string(),
                    c.h.to_string(),
                    c.product.to_string(),
                ]
            })
            .collect();
        let label_width = labels.iter().map(|l| l.len()).max().unwrap_or(0);
        let widths: Vec<usize> = cells
            .iter()
            .map(|col| col.iter().map(String::len).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for (row, label) in labels.iter().enumerate() {
            let _ = write!(out, "{label:<label_width$}");
            for (col, w) in cells.iter().zip(&widths) {
                let _ = write!(out, "  {:>w$}", col[row], w = *w);
            }
            out.push('\n');
        }
        let _ = writeln!(out, "total {}", self.total);
        out
    }

    /// `k,phi,h,product` rows and a closing `total` row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,phi,h,product\n");
        for c in &self.columns {
            let _ = writeln!(out, "{},{},{},{}", c.k, c.phi, c.h, c.product);
        }
        let _ = writeln!(out, "total,,,{}", self.total);
        out
    }
}

/// Fill the count table using an already built graph.
pub fn count_table_for_graph<T: CountScalar>(g: &GammaGraph) -> Result<CountTable<T>> {
    let n = g.n();
    let memo = h_memo::<T>(g, n)?;
    let mut total = T::zero();
    let mut columns = Vec::with_capacity(memo.len());
    for (k, h) in memo {
        let ctx = format!("column k={k} of n={n}");
        let phi = T::from_u64_checked(totient(n / k), &ctx)?;
        let product = phi.mul_checked(&h, &ctx)?;
        total = total.add_checked(&product, &ctx)?;
        columns.push(Column { k, phi, h, product });
    }
    Ok(CountTable { n, columns, total })
}

pub fn count_table<T: CountScalar>(n: u64) -> Result<CountTable<T>> {
    count_table_for_graph(&GammaGraph::build(n)?)
}

/// The number of classes of `S_n`.
pub fn q_count<T: CountScalar>(n: u64) -> Result<T> {
    Ok(count_table::<T>(n)?.into_total())
}

/// Closed form for prime `n`: `((n-1)! + (n-1)^2) / n`.
pub fn q_prime<T: CountScalar>(n: u64) -> Result<T> {
    if !is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    let ctx = format!("closed form for n={n}");
    let numerator = factorial::<T>(n - 1)?.add_checked(&pow(n - 1, 2)?, &ctx)?;
    numerator.div_exactly(n, &ctx)
}

/// Whether `(n-1)! + 1 ≡ 0 (mod n)`. False for `n < 2`.
pub fn wilson_check(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let m = n as u128;
    let fact = (2..n as u128).fold(1u128 % m, |acc, i| acc * i % m);
    (fact + 1) % m == 0
}
