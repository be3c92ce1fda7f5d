//! Connection sets, Cayley graphs, quotients, orbital graphs and graph I/O.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::metagroup::{Element, GroupSpec};
use crate::perm::Perm;

/// A 4-element, identity-free, inverse-closed subset `{x, x^-1, y, y^-1}`.
///
/// Elements are kept sorted by vertex index so two sets compare equal iff
/// they are equal as sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConnectionSet {
    elements: [Element; 4],
}

impl ConnectionSet {
    pub fn new(elements: [Element; 4], spec: &GroupSpec) -> Result<Self> {
        let mut sorted = elements;
        for e in &sorted {
            if !spec.contains(e) {
                return Err(Error::InvalidConnectionSet(format!("{e} is not reduced for {spec}")));
            }
            if e.is_identity() {
                return Err(Error::InvalidConnectionSet("contains the identity".into()));
            }
        }
        sorted.sort_by_key(|e| spec.index(e));
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidConnectionSet("elements are not distinct".into()));
        }
        for e in &sorted {
            if !sorted.contains(&spec.inv(e)) {
                return Err(Error::InvalidConnectionSet(format!("not inverse-closed at {e}")));
            }
        }
        Ok(ConnectionSet { elements: sorted })
    }

    /// `{x, x^-1, y, y^-1}`.
    pub fn from_pair(x: Element, y: Element, spec: &GroupSpec) -> Result<Self> {
        ConnectionSet::new([x, spec.inv(&x), y, spec.inv(&y)], spec)
    }

    /// Builds a set from vertex indices, validating as in [`ConnectionSet::new`].
    pub fn from_indices(indices: [usize; 4], spec: &GroupSpec) -> Result<Self> {
        if let Some(&i) = indices.iter().find(|&&i| i as u64 >= spec.order()) {
            return Err(Error::InvalidConnectionSet(format!("index {i} out of range")));
        }
        ConnectionSet::new(indices.map(|i| spec.element_at(i)), spec)
    }

    pub fn elements(&self) -> &[Element; 4] {
        &self.elements
    }

    pub fn indices(&self, spec: &GroupSpec) -> [usize; 4] {
        self.elements.map(|e| spec.index(&e))
    }

    pub fn triples(&self) -> Vec<[u32; 3]> {
        self.elements.iter().map(Element::triple).collect()
    }

    pub fn generates(&self, spec: &GroupSpec) -> bool {
        spec.closure(&self.elements) as u64 == spec.order()
    }
}

/// `{c b^j, c^-1 a b^j, c^-1 b^-j, c (a b^j)^-1}`; with `ell = 1` this is
/// `{b^j, a b^j, b^-j, (a b^j)^-1}`. Requires `1 <= j < n0` and `gcd(j, n) = 1`.
pub fn standard_connection_set(j: u64, spec: &GroupSpec) -> Result<ConnectionSet> {
    if j == 0 || j >= spec.n0() {
        return Err(Error::InvalidArgument(format!("j = {j} must satisfy 1 <= j < n0 = {}", spec.n0())));
    }
    if gcd(j, spec.n()) != 1 {
        return Err(Error::InvalidArgument(format!("gcd(j, n) = gcd({j}, {}) != 1", spec.n())));
    }
    let c = spec.c();
    let c_inv = spec.inv(&c);
    let bj = spec.element(0, j as i64, 0);
    let abj = spec.mul(&spec.a(), &bj);
    let x = spec.mul(&c, &bj);
    let y = spec.mul(&c_inv, &abj);
    ConnectionSet::new(
        [x, y, spec.mul(&c_inv, &spec.inv(&bj)), spec.mul(&c, &spec.inv(&abj))],
        spec,
    )
}

/// A finite simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct AdjacencyDump {
    n: usize,
    adj: Vec<Vec<u32>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a simple graph; loops are rejected and repeated edges collapsed.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::PointOutOfRange { point: u.max(v), degree: n });
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        Graph::from_edges(n, (0..n).map(|u| (u, (u + 1) % n))).unwrap()
    }

    pub fn n_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .map(|&v| v as usize)
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.adj.iter().all(|l| l.len() == k)
    }

    /// Breadth-first reachability from vertex 0.
    pub fn is_connected(&self) -> bool {
        self.component_sizes().len() <= 1
    }

    pub fn component_sizes(&self) -> Vec<usize> {
        let n = self.n_vertices();
        let mut seen = vec![false; n];
        let mut sizes = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            let mut size = 0;
            while let Some(x) = queue.pop_front() {
                size += 1;
                for &y in &self.adj[x] {
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        queue.push_back(y as usize);
                    }
                }
            }
            sizes.push(size);
        }
        sizes
    }

    /// The graph with vertex `v` renamed to `p(v)`.
    pub fn relabel(&self, p: &Perm) -> Graph {
        Graph::from_edges(self.n_vertices(), self.edges().map(|(u, v)| (p.apply(u), p.apply(v))))
            .expect("relabeling keeps the graph simple")
    }

    /// Whether `p` maps edges to edges.
    pub fn is_automorphism(&self, p: &Perm) -> bool {
        p.degree() == self.n_vertices()
            && self.edges().all(|(u, v)| self.has_edge(p.apply(u), p.apply(v)))
    }

    pub fn to_graph6(&self) -> String {
        let n = self.n_vertices();
        let mut bits = vec![false; n * n.saturating_sub(1) / 2];
        for (u, v) in self.edges() {
            bits[v * (v - 1) / 2 + u] = true;
        }
        encode_graph6(n, &bits)
    }

    pub fn from_graph6(text: &str) -> Result<Graph> {
        let text = text.trim();
        let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
        let bytes = text.as_bytes();
        if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
            return Err(Error::Graph6("byte outside 63..=126".into()));
        }
        let (n, body) = match bytes {
            [126, 126, rest @ ..] => {
                if rest.len() < 6 {
                    return Err(Error::Graph6("truncated 8-byte size".into()));
                }
                (rest[..6].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize), &rest[6..])
            }
            [126, rest @ ..] => {
                if rest.len() < 3 {
                    return Err(Error::Graph6("truncated 4-byte size".into()));
                }
                (rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize), &rest[3..])
            }
            [first, rest @ ..] => ((*first - 63) as usize, rest),
            [] => return Err(Error::Graph6("empty input".into())),
        };
        let nbits = n * n.saturating_sub(1) / 2;
        if body.len() != nbits.div_ceil(6) {
            return Err(Error::Graph6(format!(
                "expected {} data bytes for {n} vertices, found {}",
                nbits.div_ceil(6),
                body.len()
            )));
        }
        let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
        let mut edges = Vec::new();
        let mut k = 0;
        for v in 1..n {
            for u in 0..v {
                if bit(k) {
                    edges.push((u, v));
                }
                k += 1;
            }
        }
        Graph::from_edges(n, edges)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n_vertices() {
            out.push_str(&format!("  {v};\n"));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }

    /// `{"n": ..., "adj": [[...], ...]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&AdjacencyDump { n: self.n_vertices(), adj: self.adj.clone() })
            .expect("adjacency lists serialize")
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        let dump: AdjacencyDump = serde_json::from_str(text)?;
        if dump.adj.len() != dump.n {
            return Err(Error::InvalidArgument("adjacency length differs from n".into()));
        }
        let edges: Vec<_> = dump
            .adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().map(move |&v| (u, v as usize)))
            .collect();
        let g = Graph::from_edges(dump.n, edges)?;
        if g.adj != dump.adj {
            return Err(Error::InvalidArgument("adjacency is not symmetric and sorted".into()));
        }
        Ok(g)
    }
}

/// Packs upper-triangle bits (column-major, `x(0,1) x(0,2) x(1,2) ...`) into graph6.
pub(crate) fn encode_graph6(n: usize, bits: &[bool]) -> String {
    let mut out = Vec::with_capacity(8 + bits.len() / 6 + 1);
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            if b {
                byte |= 1 << (5 - i);
            }
        }
        out.push(byte + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

/// `Cay(G, S)`: `x ~ y` iff `y x^-1` lies in `S`, i.e. the neighbours of `x` are `s x`.
pub fn build_cayley(set: &ConnectionSet, spec: &GroupSpec) -> Graph {
    let n = spec.order() as usize;
    let adj = (0..n)
        .map(|i| {
            let x = spec.element_at(i);
            let mut list: Vec<u32> = set
                .elements()
                .iter()
                .map(|s| spec.index(&spec.mul(s, &x)) as u32)
                .collect();
            list.sort_unstable();
            list
        })
        .collect();
    Graph { adj }
}

/// Graph on the blocks of a vertex partition; blocks are adjacent iff some
/// edge joins them. Loops and multiple edges are dropped.
pub fn quotient_graph(g: &Graph, blocks: &[Vec<usize>]) -> Result<Graph> {
    let n = g.n_vertices();
    let mut block_of = vec![usize::MAX; n];
    for (b, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::InvalidArgument(format!("block {b} is empty")));
        }
        for &v in block {
            if v >= n {
                return Err(Error::PointOutOfRange { point: v, degree: n });
            }
            if block_of[v] != usize::MAX {
                return Err(Error::InvalidArgument(format!("vertex {v} lies in two blocks")));
            }
            block_of[v] = b;
        }
    }
    if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
        return Err(Error::InvalidArgument(format!("vertex {v} lies in no block")));
    }
    let edges: BTreeSet<(usize, usize)> = g
        .edges()
        .map(|(u, v)| (block_of[u], block_of[v]))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    Graph::from_edges(blocks.len(), edges)
}

/// The digraph whose arc set is the orbit of a seed pair under a permutation group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitalGraph {
    out: Vec<Vec<u32>>,
    pub self_paired: bool,
}

impl OrbitalGraph {
    pub fn out_neighbors(&self, v: usize) -> &[u32] {
        &self.out[v]
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().map(move |&v| (u, v as usize)))
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// The underlying undirected graph, available when the orbital is self-paired.
    pub fn undirected(&self) -> Option<Graph> {
        self.self_paired
            .then(|| Graph::from_edges(self.out.len(), self.arcs()).expect("orbital arcs are loop-free"))
    }
}

pub fn orbital_graph(gens: &[Perm], degree: usize, seed: (usize, usize)) -> Result<OrbitalGraph> {
    let (s0, s1) = seed;
    if s0 >= degree || s1 >= degree {
        return Err(Error::PointOutOfRange { point: s0.max(s1), degree });
    }
    if let Some(p) = gens.iter().find(|p| p.degree() != degree) {
        return Err(Error::InvalidArgument(format!("generator of degree {} on {degree} points", p.degree())));
    }
    let mut seen = BTreeSet::from([seed]);
    let mut queue = VecDeque::from([seed]);
    while let Some((x, y)) = queue.pop_front() {
        for p in gens {
            let arc = (p.apply(x), p.apply(y));
            if seen.insert(arc) {
                queue.push_back(arc);
            }
        }
    }
    let self_paired = seen.contains(&(s1, s0));
    let mut out = vec![Vec::new(); degree];
    for &(x, y) in &seen {
        out[x].push(y as u32);
    }
    Ok(OrbitalGraph { out, self_paired })
}
