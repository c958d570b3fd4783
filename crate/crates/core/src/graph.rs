//! The oriented graph on pairs `⟨k, l⟩` that indexes families of classes
//! by their minimal left exponent `k` and matching right exponent `l`.
//!
//! Vertices are seeded with `⟨1, l⟩` for every `l < n` coprime to `n`.
//! Every built vertex `⟨k, l⟩` then gets an arc to `⟨kp, l⊙p⟩` for each
//! prime `p | n` with `kp | n`, until nothing new appears. The maximum
//! element is `⟨n, n⟩`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::zn::{gcd, normalize, prime_divisors};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Vertex {
    pub k: u64,
    pub l: u64,
}

impl Vertex {
    pub const fn new(k: u64, l: u64) -> Self {
        Vertex { k, l }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", self.k, self.l)
    }
}

#[derive(Debug, Clone)]
pub struct GammaGraph {
    n: u64,
    /// sorted by (k, l)
    vertices: Vec<Vertex>,
    index: BTreeMap<Vertex, usize>,
    /// sorted, deduplicated pairs of vertex indices
    arcs: Vec<(usize, usize)>,
    successors: Vec<Vec<usize>>,
    /// reach[a][b]: a directed path of length >= 1 runs from a to b
    reach: Vec<Vec<bool>>,
}

impl GammaGraph {
    pub fn build(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        let primes = prime_divisors(n);
        let mut built: BTreeSet<Vertex> = BTreeSet::new();
        let mut arc_set: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
        let mut worklist: Vec<Vertex> = Vec::new();

        if n == 1 {
            built.insert(Vertex::new(1, 1));
        } else {
            for l in (1..n).filter(|&l| gcd(l, n) == 1) {
                let v = Vertex::new(1, l);
                built.insert(v);
                worklist.push(v);
            }
        }

        while let Some(v) = worklist.pop() {
            for &p in &primes {
                let kp = v.k * p;
                if !n.is_multiple_of(kp) {
                    continue;
                }
                let w = Vertex::new(kp, normalize(v.l * p, n));
                arc_set.insert((v, w));
                if built.insert(w) {
                    worklist.push(w);
                }
            }
        }

        let vertices: Vec<Vertex> = built.into_iter().collect();
        let index: BTreeMap<Vertex, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let arcs: Vec<(usize, usize)> = arc_set
            .into_iter()
            .map(|(a, b)| (index[&a], index[&b]))
            .collect();
        let mut successors = vec![Vec::new(); vertices.len()];
        for &(a, b) in &arcs {
            successors[a].push(b);
        }
        let reach = (0..vertices.len())
            .map(|start| {
                let mut seen = vec![false; vertices.len()];
                let mut stack: Vec<usize> = successors[start].clone();
                while let Some(v) = stack.pop() {
                    if !seen[v] {
                        seen[v] = true;
                        stack.extend(&successors[v]);
                    }
                }
                seen
            })
            .collect();

        Ok(GammaGraph {
            n,
            vertices,
            index,
            arcs,
            successors,
            reach,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Vertices sorted by `(k, l)`.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Arcs sorted by `(source, target)`.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.arcs
            .iter()
            .map(|&(a, b)| (self.vertices[a], self.vertices[b]))
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.index.contains_key(&v)
    }

    fn idx(&self, v: Vertex) -> Result<usize> {
        self.index
            .get(&v)
            .copied()
            .ok_or(Error::VertexNotInGraph { k: v.k, l: v.l })
    }

    pub fn successors(&self, v: Vertex) -> Result<Vec<Vertex>> {
        let i = self.idx(v)?;
        Ok(self.successors[i].iter().map(|&j| self.vertices[j]).collect())
    }

    pub fn out_degree(&self, v: Vertex) -> Result<usize> {
        Ok(self.successors[self.idx(v)?].len())
    }

    pub fn in_degree(&self, v: Vertex) -> Result<usize> {
        let i = self.idx(v)?;
        Ok(self.arcs.iter().filter(|&&(_, b)| b == i).count())
    }

    /// Strict path order: a directed path of length at least one runs from
    /// `a` to `b`.
    pub fn precedes(&self, a: Vertex, b: Vertex) -> Result<bool> {
        let (i, j) = (self.idx(a)?, self.idx(b)?);
        Ok(self.reach[i][j])
    }

    /// All vertices that strictly precede `target`, sorted.
    pub fn predecessors(&self, target: Vertex) -> Result<Vec<Vertex>> {
        let j = self.idx(target)?;
        Ok((0..self.vertices.len())
            .filter(|&i| self.reach[i][j])
            .map(|i| self.vertices[i])
            .collect())
    }

    /// Number of vertices with first coordinate `r` strictly preceding `target`.
    pub fn predecessor_count(&self, target: Vertex, r: u64) -> Result<u64> {
        let j = self.idx(target)?;
        Ok(self
            .vertices
            .iter()
            .enumerate()
            .filter(|&(i, v)| v.k == r && self.reach[i][j])
            .count() as u64)
    }

    /// τ(n, k, r): vertices `⟨r, s⟩` with `⟨r, s⟩ ≺ ⟨k, k⟩`.
    pub fn tau(&self, k: u64, r: u64) -> Result<u64> {
        let n = self.n;
        if k == 0 || !n.is_multiple_of(k) {
            return Err(Error::NotADivisor { k, n });
        }
        if r == 0 || !k.is_multiple_of(r) {
            return Err(Error::NotADivisor { k: r, n: k });
        }
        if r >= k {
            return Err(Error::InvalidArgument(format!(
                "tau needs r < k, got r={r}, k={k}"
            )));
        }
        self.predecessor_count(Vertex::new(k, k), r)
    }

    /// Vertices with no incoming arc.
    pub fn sources(&self) -> Vec<Vertex> {
        let mut has_in = vec![false; self.vertices.len()];
        for &(_, b) in &self.arcs {
            has_in[b] = true;
        }
        self.vertices
            .iter()
            .zip(has_in)
            .filter(|(_, h)| !h)
            .map(|(&v, _)| v)
            .collect()
    }

    /// Vertices with no outgoing arc.
    pub fn sinks(&self) -> Vec<Vertex> {
        self.vertices
            .iter()
            .zip(&self.successors)
            .filter(|(_, s)| s.is_empty())
            .map(|(&v, _)| v)
            .collect()
    }

    /// Connectivity of the underlying undirected graph.
    pub fn is_weakly_connected(&self) -> bool {
        let m = self.vertices.len();
        let mut adj = vec![Vec::new(); m];
        for &(a, b) in &self.arcs {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; m];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Number of vertices per first coordinate.
    pub fn vertex_counts_by_k(&self) -> BTreeMap<u64, u64> {
        let mut out = BTreeMap::new();
        for v in &self.vertices {
            *out.entry(v.k).or_insert(0) += 1;
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph gamma_{} {{", self.n);
        for v in &self.vertices {
            let _ = writeln!(s, "  \"{v}\";");
        }
        for (a, b) in self.arcs() {
            let _ = writeln!(s, "  \"{a}\" -> \"{b}\";");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct GraphJson {
            n: u64,
            vertices: Vec<[u64; 2]>,
            arcs: Vec<[[u64; 2]; 2]>,
        }
        let g = GraphJson {
            n: self.n,
            vertices: self.vertices.iter().map(|v| [v.k, v.l]).collect(),
            arcs: self
                .arcs()
                .map(|(a, b)| [[a.k, a.l], [b.k, b.l]])
                .collect(),
        };
        serde_json::to_string(&g).expect("graph serializes")
    }

    /// Plain listing: one vertex per line followed by one arc per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "n={} vertices={} arcs={}",
            self.n,
            self.vertices.len(),
            self.arcs.len()
        );
        for v in &self.vertices {
            let _ = writeln!(s, "{v}");
        }
        for (a, b) in self.arcs() {
            let _ = writeln!(s, "{a} -> {b}");
        }
        s
    }
}

/// Build Γ_n.
pub fn build_gamma(n: u64) -> Result<GammaGraph> {
    GammaGraph::build(n)
}

/// Render Γ_n in DOT.
pub fn export_dot(g: &GammaGraph) -> String {
    g.to_dot()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(k: u64, l: u64) -> Vertex {
        Vertex::new(k, l)
    }

    /// Transitive closure by Warshall's algorithm over the arc list, kept
    /// separate from the DFS the graph uses.
    fn warshall(g: &GammaGraph) -> BTreeSet<(Vertex, Vertex)> {
        let vs = g.vertices().to_vec();
        let m = vs.len();
        let pos = |x: Vertex| vs.iter().position(|&y| y == x).unwrap();
        let mut r = vec![vec![false; m]; m];
        for (a, b) in g.arcs() {
            r[pos(a)][pos(b)] = true;
        }
        for mid in 0..m {
            for i in 0..m {
                if r[i][mid] {
                    let via = r[mid].clone();
                    for (cell, reach) in r[i].iter_mut().zip(via) {
                        *cell |= reach;
                    }
                }
            }
        }
        let mut out = BTreeSet::new();
        for i in 0..m {
            for j in 0..m {
                if r[i][j] {
                    out.insert((vs[i], vs[j]));
                }
            }
        }
        out
    }

    #[test]
    fn gamma_12_vertices() {
        let g = build_gamma(12).unwrap();
        let expected = vec![
            v(1, 1),
            v(1, 5),
            v(1, 7),
            v(1, 11),
            v(2, 2),
            v(2, 10),
            v(3, 3),
            v(3, 9),
            v(4, 4),
            v(4, 8),
            v(6, 6),
            v(12, 12),
        ];
        assert_eq!(g.vertices(), expected.as_slice());
    }

    #[test]
    fn gamma_12_arcs_match_the_drawing() {
        let g = build_gamma(12).unwrap();
        let expected: BTreeSet<(Vertex, Vertex)> = [
            (v(1, 1), v(2, 2)),
            (v(1, 7), v(2, 2)),
            (v(1, 5), v(2, 10)),
            (v(1, 11), v(2, 10)),
            (v(1, 1), v(3, 3)),
            (v(1, 5), v(3, 3)),
            (v(1, 7), v(3, 9)),
            (v(1, 11), v(3, 9)),
            (v(2, 2), v(4, 4)),
            (v(2, 2), v(6, 6)),
            (v(2, 10), v(4, 8)),
            (v(2, 10), v(6, 6)),
            (v(3, 3), v(6, 6)),
            (v(3, 9), v(6, 6)),
            (v(4, 4), v(12, 12)),
            (v(4, 8), v(12, 12)),
            (v(6, 6), v(12, 12)),
        ]
        .into_iter()
        .collect();
        assert_eq!(g.arcs().collect::<BTreeSet<_>>(), expected);
        assert_eq!(g.arc_count(), 17);
    }

    #[test]
    fn prime_and_degenerate_graphs() {
        let g = build_gamma(7).unwrap();
        let mut expected: Vec<Vertex> = (1..7).map(|l| v(1, l)).collect();
        expected.push(v(7, 7));
        assert_eq!(g.vertices(), expected.as_slice());
        let arcs: Vec<_> = g.arcs().collect();
        assert_eq!(arcs.len(), 6);
        assert!(arcs.iter().all(|&(a, b)| a.k == 1 && b == v(7, 7)));

        let g1 = build_gamma(1).unwrap();
        assert_eq!(g1.vertices(), &[v(1, 1)]);
        assert_eq!(g1.arc_count(), 0);

        assert!(build_gamma(0).is_err());
    }

    #[test]
    fn precedes_examples() {
        let g = build_gamma(12).unwrap();
        assert!(g.precedes(v(1, 1), v(12, 12)).unwrap());
        assert!(!g.precedes(v(2, 10), v(4, 4)).unwrap());
        for &x in g.vertices() {
            assert!(!g.precedes(x, x).unwrap());
        }
        assert_eq!(
            g.precedes(v(5, 5), v(12, 12)),
            Err(Error::VertexNotInGraph { k: 5, l: 5 })
        );
    }

    #[test]
    fn reachability_matches_warshall() {
        for n in 1..=60 {
            let g = build_gamma(n).unwrap();
            let closure = warshall(&g);
            for &a in g.vertices() {
                for &b in g.vertices() {
                    assert_eq!(
                        g.precedes(a, b).unwrap(),
                        closure.contains(&(a, b)),
                        "n={n} {a} {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn tau_examples() {
        let g = build_gamma(12).unwrap();
        assert_eq!(g.tau(2, 1).unwrap(), 2);
        assert_eq!(g.tau(6, 1).unwrap(), 4);
        assert_eq!(g.tau(4, 2).unwrap(), 1);
        assert_eq!(g.tau(6, 2).unwrap(), 2);
        assert_eq!(g.tau(6, 3).unwrap(), 2);
        assert_eq!(g.tau(12, 1).unwrap(), 4);
    }

    #[test]
    fn tau_precondition_errors() {
        let g = build_gamma(12).unwrap();
        assert!(matches!(g.tau(5, 1), Err(Error::NotADivisor { .. })));
        assert!(matches!(g.tau(6, 4), Err(Error::NotADivisor { .. })));
        assert!(matches!(g.tau(6, 6), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn degrees() {
        let g = build_gamma(12).unwrap();
        assert_eq!(g.out_degree(v(12, 12)).unwrap(), 0);
        assert_eq!(g.in_degree(v(1, 5)).unwrap(), 0);
        assert_eq!(g.in_degree(v(6, 6)).unwrap(), 4);
        assert_eq!(g.successors(v(2, 10)).unwrap(), vec![v(4, 8), v(6, 6)]);
        assert_eq!(g.sinks(), vec![v(12, 12)]);
        assert_eq!(g.sources(), vec![v(1, 1), v(1, 5), v(1, 7), v(1, 11)]);
        assert!(g.is_weakly_connected());
    }

    #[test]
    fn dot_export() {
        let count = |s: &str| {
            let nodes = s.lines().filter(|l| l.ends_with("\";")).filter(|l| !l.contains("->")).count();
            let edges = s.lines().filter(|l| l.contains("->")).count();
            (nodes, edges)
        };
        let d12 = export_dot(&build_gamma(12).unwrap());
        assert_eq!(count(&d12), (12, 17));
        assert!(d12.starts_with("digraph gamma_12 {\n"));
        let d2 = export_dot(&build_gamma(2).unwrap());
        assert_eq!(
            d2,
            "digraph gamma_2 {\n  \"<1,1>\";\n  \"<2,2>\";\n  \"<1,1>\" -> \"<2,2>\";\n}\n"
        );
        assert_eq!(count(&export_dot(&build_gamma(1).unwrap())), (1, 0));
    }

    #[test]
    fn json_export() {
        let g = build_gamma(2).unwrap();
        assert_eq!(
            g.to_json(),
            r#"{"n":2,"vertices":[[1,1],[2,2]],"arcs":[[[1,1],[2,2]]]}"#
        );
    }
}
