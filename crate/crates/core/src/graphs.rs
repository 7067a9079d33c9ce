//! Simple undirected graphs, 4-cycle detection, polarity graphs of
//! projective planes, and the prime-interval search that places a
//! polarity graph size inside [n, 7n].
//!
//! The polarity graph on PG(2, p) has the p²+p+1 projective classes of
//! 𝔽_p³∖{0} as vertices and joins two distinct classes when their
//! representatives are orthogonal. It is 4-cycle-free with every degree
//! in {p, p+1}, which is exactly what the code construction needs.

use thiserror::Error;

use crate::exec;
use crate::gf2::{parse_two_ints, BitMatrix, BitVector, ParseError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({i}, {j}) is a self-loop")]
    SelfLoop { i: usize, j: usize },
    #[error("edge ({i}, {j}) out of range for {n} vertices")]
    OutOfRange { i: usize, j: usize, n: usize },
    #[error("duplicate edge ({i}, {j})")]
    DuplicateEdge { i: usize, j: usize },
    #[error("edge ({i}, {j}) must list the smaller endpoint first")]
    UnorderedEdge { i: usize, j: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no prime q with q²+q+1 < {0}: need n > 7")]
    IntervalTooSmall(u64),
    #[error("edge list not sorted at line {line}")]
    UnsortedEdges { line: usize },
    #[error("expected `<i> <j>` on line {line}")]
    BadEdgeLine { line: usize },
    #[error(transparent)]
    Header(#[from] ParseError),
}

/// A simple undirected graph stored as a symmetric adjacency matrix
/// with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adjacency: BitMatrix,
    degrees: Vec<usize>,
}

impl SimpleGraph {
    /// Builds a graph on n vertices from edges given as (i, j) with
    /// i < j.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut rows = vec![BitVector::zeros(n); n];
        for &(i, j) in edges {
            if i == j {
                return Err(GraphError::SelfLoop { i, j });
            }
            if i > j {
                return Err(GraphError::UnorderedEdge { i, j });
            }
            if j >= n {
                return Err(GraphError::OutOfRange { i, j, n });
            }
            if rows[i].get(j) {
                return Err(GraphError::DuplicateEdge { i, j });
            }
            rows[i].set(j, true);
            rows[j].set(i, true);
        }
        let degrees = rows.iter().map(|r| r.weight()).collect();
        Ok(SimpleGraph {
            adjacency: BitMatrix::from_rows(rows, n),
            degrees,
        })
    }

    #[cfg(test)]
    pub(crate) fn from_adjacency_rows(rows: Vec<BitVector>) -> Self {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "adjacency matrix must be square");
            assert!(!row.get(i), "adjacency diagonal must be zero");
        }
        for i in 0..n {
            for j in i + 1..n {
                assert_eq!(
                    rows[i].get(j),
                    rows[j].get(i),
                    "adjacency must be symmetric"
                );
            }
        }
        let degrees = rows.iter().map(|r| r.weight()).collect();
        SimpleGraph {
            adjacency: BitMatrix::from_rows(rows, n),
            degrees,
        }
    }

    pub fn n(&self) -> usize {
        self.adjacency.num_rows()
    }

    pub fn num_edges(&self) -> usize {
        self.degrees.iter().sum::<usize>() / 2
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adjacency
    }

    /// The i-th column u^i of the adjacency matrix, equal to the i-th
    /// row by symmetry.
    pub fn adjacency_column(&self, i: usize) -> &BitVector {
        self.adjacency.row(i)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency.row(i).get(j)
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn min_degree(&self) -> usize {
        *self
            .degrees
            .iter()
            .min()
            .expect("min_degree needs at least one vertex")
    }

    /// |supp(u^i) ∩ supp(u^j)|, the number of common neighbours.
    pub fn common_neighbors(&self, i: usize, j: usize) -> usize {
        self.adjacency.row(i).overlap(self.adjacency.row(j))
    }

    /// True iff some vertex pair has at least two common neighbours.
    pub fn has_four_cycle(&self) -> bool {
        let n = self.n() as u64;
        exec::find_map_first(0..n, |i| {
            let i = i as usize;
            let row = self.adjacency.row(i);
            (i + 1..self.n())
                .any(|j| row.overlap(self.adjacency.row(j)) >= 2)
                .then_some(())
        })
        .is_some()
    }

    /// Edges as (i, j) pairs with i < j, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.num_edges());
        for i in 0..self.n() {
            for j in self.adjacency.row(i).support() {
                if j > i {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Renders the text form: `<n> <num_edges>` then one sorted `i j`
    /// line per edge.
    pub fn render(&self) -> String {
        let mut s = format!("{} {}\n", self.n(), self.num_edges());
        for (i, j) in self.edges() {
            s.push_str(&format!("{i} {j}\n"));
        }
        s
    }

    /// Parses the [`render`](Self::render) format, rejecting loops,
    /// duplicates, and unsorted edge lists.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(ParseError::MissingHeader)?;
        let (n, num_edges) = parse_two_ints(header, "<n> <num_edges>")?;
        let mut edges = Vec::with_capacity(num_edges);
        let mut prev: Option<(usize, usize)> = None;
        for _ in 0..num_edges {
            let (line, text) = lines
                .next()
                .ok_or(GraphError::Header(ParseError::RowCount {
                    expected: num_edges,
                    found: edges.len(),
                }))?;
            let (i, j) =
                parse_two_ints(text, "<i> <j>").map_err(|_| GraphError::BadEdgeLine { line })?;
            if prev.is_some_and(|p| p >= (i, j)) {
                return Err(GraphError::UnsortedEdges { line });
            }
            prev = Some((i, j));
            edges.push((i, j));
        }
        if let Some((_, extra)) = lines.next() {
            return Err(GraphError::Header(ParseError::TrailingContent(
                extra.to_string(),
            )));
        }
        Self::from_edges(n, &edges)
    }
}

/// Canonical projective representatives of 𝔽_p³∖{0}: the (1, y, z)
/// block in lexicographic (y, z) order, then (0, 1, z), then (0, 0, 1).
pub fn projective_points(p: u64) -> Result<Vec<[u64; 3]>, GraphError> {
    if !is_prime(p) {
        return Err(GraphError::NotPrime(p));
    }
    let mut points = Vec::with_capacity((p * p + p + 1) as usize);
    for y in 0..p {
        for z in 0..p {
            points.push([1, y, z]);
        }
    }
    for z in 0..p {
        points.push([0, 1, z]);
    }
    points.push([0, 0, 1]);
    Ok(points)
}

fn dot_mod(a: &[u64; 3], b: &[u64; 3], p: u64) -> u64 {
    (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]) % p
}

/// Whether a projective point is orthogonal to itself; such points lose
/// their would-be self-loop and have degree p instead of p+1.
pub fn is_absolute(point: &[u64; 3], p: u64) -> bool {
    dot_mod(point, point, p) == 0
}

/// The polarity graph of PG(2, p): one vertex per projective class,
/// an edge between distinct classes with orthogonal representatives.
pub fn polarity_graph(p: u64) -> Result<SimpleGraph, GraphError> {
    let points = projective_points(p)?;
    let m = points.len();
    let mut edges = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if dot_mod(&points[i], &points[j], p) == 0 {
                edges.push((i, j));
            }
        }
    }
    Ok(SimpleGraph::from_edges(m, &edges).expect("construction yields sorted simple edges"))
}

/// Trial-division primality test, sufficient for the desk-scale search
/// ranges used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Finds (m, p) with p prime, m = p²+p+1, and n ≤ m ≤ 7n: take the
/// largest prime q with q²+q+1 < n, then the next prime after it.
pub fn find_m(n: u64) -> Result<(u64, u64), GraphError> {
    if n <= 7 {
        return Err(GraphError::IntervalTooSmall(n));
    }
    let mut p = 3;
    while p * p + p + 1 < n {
        p += 1;
        while !is_prime(p) {
            p += 1;
        }
    }
    Ok((p * p + p + 1, p))
}
