use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geometry::vertices::Combinations;

/// A simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.edges.insert((u, v));
            }
        }
        g
    }

    /// Graph number `mask` on `n` vertices: bit `i` selects the `i`-th pair in
    /// lexicographic order. Useful for exhaustive enumeration.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut g = Graph::new(n);
        for (i, pair) in Combinations::new(n, 2).enumerate() {
            if mask >> i & 1 == 1 {
                g.edges.insert((pair[0], pair[1]));
            }
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
        }
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidArgument(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.n
            )));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Unordered pairs `{u, v}`, `u < v`, that are not edges.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        Combinations::new(self.n, 2)
            .map(|c| (c[0], c[1]))
            .filter(|&(u, v)| !self.has_edge(u, v))
            .collect()
    }

    /// The same graph with isolated vertices appended up to `n` vertices.
    pub fn padded(&self, n: usize) -> Graph {
        Graph {
            n: n.max(self.n),
            edges: self.edges.clone(),
        }
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    /// Parses the DIMACS edge format: `p edge n m`, then `m` lines `e u v`
    /// with 1-based vertices. Lines starting with `c` or `#` are comments.
    pub fn parse_dimacs(text: &str) -> Result<Graph> {
        let mut graph: Option<(Graph, usize)> = None;
        let mut seen = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens[0] {
                "p" => {
                    if graph.is_some() {
                        return Err(err("duplicate problem line".into()));
                    }
                    if tokens.len() != 4 {
                        return Err(err("expected `p edge <n> <m>`".into()));
                    }
                    let n = parse_count(tokens[2]).map_err(&err)?;
                    let m = parse_count(tokens[3]).map_err(&err)?;
                    graph = Some((Graph::new(n), m));
                }
                "e" => {
                    let (g, _) = graph
                        .as_mut()
                        .ok_or_else(|| err("edge before problem line".into()))?;
                    if tokens.len() != 3 {
                        return Err(err("expected `e <u> <v>`".into()));
                    }
                    let u = parse_count(tokens[1]).map_err(&err)?;
                    let v = parse_count(tokens[2]).map_err(&err)?;
                    if u == 0 || v == 0 {
                        return Err(err("vertices are 1-based".into()));
                    }
                    g.add_edge(u - 1, v - 1).map_err(|e| err(e.to_string()))?;
                    seen += 1;
                }
                other => return Err(err(format!("unknown line type `{other}`"))),
            }
        }
        let (g, m) = graph.ok_or(Error::Parse {
            line: 0,
            msg: "missing problem line".into(),
        })?;
        if seen != m {
            return Err(Error::Parse {
                line: 0,
                msg: format!("problem line announces {m} edges, found {seen}"),
            });
        }
        Ok(g)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n, self.edges.len());
        for (u, v) in &self.edges {
            out.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
        out
    }
}

fn parse_count(token: &str) -> std::result::Result<usize, String> {
    token
        .parse()
        .map_err(|_| format!("expected a nonnegative integer, found `{token}`"))
}

/// Exhaustive clique search over all `k`-subsets. Intended as ground truth
/// for small graphs (`n <= 16`).
pub fn clique_oracle(g: &Graph, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    Combinations::new(g.n(), k).any(|s| g.is_clique(&s))
}

/// Size of a largest clique, by the same exhaustive search.
pub fn clique_number(g: &Graph) -> usize {
    (1..=g.n()).rev().find(|&k| clique_oracle(g, k)).unwrap_or(0)
}
