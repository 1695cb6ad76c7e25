//! Simple undirected graphs, the named families used throughout the crate,
//! and the rewrite operations that drive deletion–contraction.
//!
//! Graphs are immutable values: every operation returns a new graph. Vertices
//! are always numbered `0..n`; removing a vertex shifts every higher index
//! down by one.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// A simple undirected graph stored as bitset adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<Vec<u64>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            rows: vec![vec![0; words_for(n)]; n],
        }
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.link(u, v);
            }
        }
        g
    }

    /// Builds a graph from an edge list. Self-loops, duplicate edges and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Parameter(format!(
                    "edge {u}-{v} out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::Parameter(format!("self-loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::Parameter(format!("duplicate edge {u}-{v}")));
            }
            g.link(u, v);
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.iter().map(|w| w.count_ones() as usize).sum::<usize>())
            .sum::<usize>()
            / 2
    }

    /// Number of vertex pairs that are not adjacent.
    pub fn missing_edge_count(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2 - self.edge_count()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u][v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i * WORD + b)
            })
        })
    }

    /// Number of vertices adjacent to both `u` and `v`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.rows[u]
            .iter()
            .zip(&self.rows[v])
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Sorted (descending) degree sequence.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn is_complete(&self) -> bool {
        self.missing_edge_count() == 0
    }

    fn link(&mut self, u: usize, v: usize) {
        self.rows[u][v / WORD] |= 1 << (v % WORD);
        self.rows[v][u / WORD] |= 1 << (u % WORD);
    }

    fn unlink(&mut self, u: usize, v: usize) {
        self.rows[u][v / WORD] &= !(1 << (v % WORD));
        self.rows[v][u / WORD] &= !(1 << (u % WORD));
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::Usage(format!(
                "vertex {v} out of range for {} vertices",
                self.n
            )));
        }
        Ok(())
    }

    /// `G - uv`: the same graph without the edge `{u, v}`.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v || !self.has_edge(u, v) {
            return Err(Error::Usage(format!("{u} and {v} are not adjacent")));
        }
        let mut g = self.clone();
        g.unlink(u, v);
        Ok(g)
    }

    /// `G + uv`: the same graph with the edge `{u, v}` added.
    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Usage(format!("cannot link vertex {u} to itself")));
        }
        if self.has_edge(u, v) {
            return Err(Error::Usage(format!("{u} and {v} are already adjacent")));
        }
        let mut g = self.clone();
        g.link(u, v);
        Ok(g)
    }

    /// `G - v`: removes `v` and its incident edges, shifting higher indices down.
    pub fn remove_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let mut g = Graph::empty(self.n - 1);
        let shift = |x: usize| if x > v { x - 1 } else { x };
        for (a, b) in self.edges() {
            if a != v && b != v {
                g.link(shift(a), shift(b));
            }
        }
        Ok(g)
    }

    /// `G|uv`: identifies `u` and `v`. The merged vertex keeps the smaller
    /// index and is adjacent to the union of both neighbourhoods; parallel
    /// edges collapse and an edge between `u` and `v` disappears.
    pub fn merge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Usage(format!("cannot merge vertex {u} with itself")));
        }
        let (keep, gone) = (u.min(v), u.max(v));
        let mut g = self.clone();
        let absorbed: Vec<usize> = self.neighbors(gone).filter(|&w| w != keep).collect();
        for w in absorbed {
            g.link(keep, w);
        }
        if g.has_edge(keep, gone) {
            g.unlink(keep, gone);
        }
        g.remove_vertex(gone)
    }

    /// Renumbers vertices so that old vertex `order[i]` becomes vertex `i`.
    pub fn relabel(&self, order: &[usize]) -> Graph {
        debug_assert_eq!(order.len(), self.n);
        let mut position = vec![0; self.n];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let mut g = Graph::empty(self.n);
        for (a, b) in self.edges() {
            g.link(position[a], position[b]);
        }
        g
    }

    /// Disjoint union with `p` isolated vertices appended after the existing ones.
    pub fn with_isolated(&self, p: usize) -> Graph {
        let mut g = Graph::empty(self.n + p);
        for (a, b) in self.edges() {
            g.link(a, b);
        }
        g
    }

    /// Whether the given vertices are pairwise adjacent.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &a)| vertices[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    pub fn classify_vertex(&self, v: usize) -> Result<VertexKind> {
        self.check_vertex(v)?;
        let deg = self.degree(v);
        if deg + 1 == self.n {
            return Ok(VertexKind::Dominating);
        }
        let nbrs: Vec<usize> = self.neighbors(v).collect();
        if self.is_clique(&nbrs) {
            Ok(VertexKind::Simplicial(deg))
        } else {
            Ok(VertexKind::Neither)
        }
    }

    /// Reads the edge-list text format: a header line `n m`, then `m` lines
    /// `u v` with 0-based endpoints. Anything after `#` on a line is ignored.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing \"n m\" header".into(),
        })?;
        let [n, m] = parse_pair(hline, header)?;

        let mut edges = Vec::with_capacity(m);
        for (lineno, line) in lines {
            if edges.len() == m {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("more than the declared {m} edges"),
                });
            }
            let [u, v] = parse_pair(lineno, line)?;
            let bad = if u == v {
                Some(format!("self-loop at vertex {u}"))
            } else if u >= n || v >= n {
                Some(format!("endpoint out of range for n = {n}"))
            } else if edges
                .iter()
                .any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
            {
                Some(format!("duplicate edge {u} {v}"))
            } else {
                None
            };
            if let Some(msg) = bad {
                return Err(Error::Parse { line: lineno, msg });
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: hline,
                msg: format!("declared {m} edges but found {}", edges.len()),
            });
        }
        Graph::from_edges(n, &edges)
    }

    /// Writes the graph in the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

/// Erdős–Rényi graph on `n` vertices with edge probability `prob`.
pub fn random_graph<R: rand::Rng + ?Sized>(n: usize, prob: f64, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(prob) {
                g.link(u, v);
            }
        }
    }
    g
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse {
            line,
            msg: format!("expected two integers, got {:?}", text),
        });
    }
    let parse = |s: &str| {
        s.parse::<usize>().map_err(|e| Error::Parse {
            line,
            msg: format!("{s:?}: {e}"),
        })
    };
    Ok([parse(fields[0])?, parse(fields[1])?])
}

/// How a vertex sits in its graph; dominating takes precedence over simplicial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Dominating,
    /// Neighbourhood is a clique of the given size.
    Simplicial(usize),
    Neither,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Empty,
    Complete,
    Path,
    Cycle,
    Star,
    /// Tree of order `n` whose spine is a path on `r` vertices, remaining
    /// vertices hung as leaves on the spine round-robin.
    CaterpillarTree,
    /// Cycle `C_n` with a pendant path of `r` vertices attached to vertex 0.
    HnR,
}

impl FamilyKind {
    fn keyword(self) -> &'static str {
        match self {
            FamilyKind::Empty => "empty",
            FamilyKind::Complete => "complete",
            FamilyKind::Path => "path",
            FamilyKind::Cycle => "cycle",
            FamilyKind::Star => "star",
            FamilyKind::CaterpillarTree => "caterpillar",
            FamilyKind::HnR => "h",
        }
    }

    fn takes_r(self) -> bool {
        matches!(self, FamilyKind::CaterpillarTree | FamilyKind::HnR)
    }
}

/// A named graph family plus `p` appended isolated vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: usize,
    pub r: usize,
    pub p: usize,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, n: usize) -> FamilySpec {
        FamilySpec {
            kind,
            n,
            r: 0,
            p: 0,
        }
    }

    pub fn path(n: usize, p: usize) -> FamilySpec {
        FamilySpec {
            kind: FamilyKind::Path,
            n,
            r: 0,
            p,
        }
    }

    pub fn cycle(n: usize, p: usize) -> FamilySpec {
        FamilySpec {
            kind: FamilyKind::Cycle,
            n,
            r: 0,
            p,
        }
    }

    pub fn hnr(n: usize, r: usize, p: usize) -> FamilySpec {
        FamilySpec {
            kind: FamilyKind::HnR,
            n,
            r,
            p,
        }
    }

    pub fn with_isolated(mut self, p: usize) -> FamilySpec {
        self.p = p;
        self
    }

    /// Total number of vertices of the built graph.
    pub fn order(&self) -> usize {
        match self.kind {
            FamilyKind::HnR => self.n + self.r + self.p,
            _ => self.n + self.p,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Parameter(msg));
        match self.kind {
            FamilyKind::Cycle | FamilyKind::HnR if self.n < 3 => bad(format!(
                "{} requires n >= 3, got n = {}",
                self.kind.keyword(),
                self.n
            )),
            FamilyKind::Path | FamilyKind::Star if self.n < 1 => {
                bad(format!("{} requires n >= 1", self.kind.keyword()))
            }
            FamilyKind::CaterpillarTree if self.r < 1 || self.r > self.n => bad(format!(
                "caterpillar spine length must satisfy 1 <= r <= n, got n = {}, r = {}",
                self.n, self.r
            )),
            _ => Ok(()),
        }
    }

    /// The labeled graph of this family.
    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        let n = self.n;
        let mut g = Graph::empty(self.order());
        match self.kind {
            FamilyKind::Empty => {}
            FamilyKind::Complete => {
                for u in 0..n {
                    for v in u + 1..n {
                        g.link(u, v);
                    }
                }
            }
            FamilyKind::Path => {
                for v in 1..n {
                    g.link(v - 1, v);
                }
            }
            FamilyKind::Cycle => {
                for v in 0..n {
                    g.link(v, (v + 1) % n);
                }
            }
            FamilyKind::Star => {
                for v in 1..n {
                    g.link(0, v);
                }
            }
            FamilyKind::CaterpillarTree => {
                let spine = self.r;
                for v in 1..spine {
                    g.link(v - 1, v);
                }
                for leaf in spine..n {
                    g.link((leaf - spine) % spine, leaf);
                }
            }
            FamilyKind::HnR => {
                for v in 0..n {
                    g.link(v, (v + 1) % n);
                }
                let mut prev = 0;
                for t in n..n + self.r {
                    g.link(prev, t);
                    prev = t;
                }
            }
        }
        Ok(g)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind.keyword(), self.n)?;
        if self.kind.takes_r() {
            write!(f, ",{}", self.r)?;
        }
        if self.p > 0 {
            write!(f, ",{}", self.p)?;
        }
        Ok(())
    }
}

/// Parses `path:n[,p]`, `cycle:n[,p]`, `star:n[,p]`, `caterpillar:n,r[,p]`,
/// `h:n,r[,p]`, `empty:n[,p]` and `complete:n[,p]`.
impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilySpec> {
        let bad = || Error::Parameter(format!("unrecognised family spec {s:?}"));
        let (name, args) = s.trim().split_once(':').ok_or_else(bad)?;
        let kind = match name.trim().to_ascii_lowercase().as_str() {
            "empty" => FamilyKind::Empty,
            "complete" => FamilyKind::Complete,
            "path" => FamilyKind::Path,
            "cycle" => FamilyKind::Cycle,
            "star" => FamilyKind::Star,
            "caterpillar" => FamilyKind::CaterpillarTree,
            "h" | "hnr" => FamilyKind::HnR,
            _ => return Err(bad()),
        };
        let nums = args
            .split(',')
            .map(|a| a.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<usize>>>()?;
        let spec = match (kind.takes_r(), nums.as_slice()) {
            (false, [n]) => FamilySpec {
                kind,
                n: *n,
                r: 0,
                p: 0,
            },
            (false, [n, p]) => FamilySpec {
                kind,
                n: *n,
                r: 0,
                p: *p,
            },
            (true, [n, r]) => FamilySpec {
                kind,
                n: *n,
                r: *r,
                p: 0,
            },
            (true, [n, r, p]) => FamilySpec {
                kind,
                n: *n,
                r: *r,
                p: *p,
            },
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}
