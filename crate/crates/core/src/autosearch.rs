//! Graph automorphism groups and canonical forms by colour refinement and
//! individualization, with automorphism pruning.
//!
//! The search tree is walked depth first. Every leaf is a discrete colouring,
//! i.e. a labeling; its certificate is the graph6 string of the relabeled
//! graph. Two leaves with equal certificates differ by an automorphism, and
//! the least certificate over all leaves is the canonical form.

use crate::cayley::{encode_graph6, Graph};
use crate::perm::Perm;
use crate::permengine::PermGroup;

/// An ordered vertex colouring: colours `0..n_cells`, where the order of the
/// colours is determined by graph invariants only, never by vertex labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u32>,
    n_cells: usize,
}

impl Coloring {
    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn is_discrete(&self) -> bool {
        self.n_cells == self.colors.len()
    }

    /// Vertices grouped by colour, in colour order.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        let mut cells = vec![Vec::new(); self.n_cells];
        for (v, &c) in self.colors.iter().enumerate() {
            cells[c as usize].push(v);
        }
        cells
    }

    /// Whether every vertex of a cell sees the same number of neighbours in each cell.
    pub fn is_equitable(&self, g: &Graph) -> bool {
        let counts = |v: usize| {
            let mut c = vec![0u32; self.n_cells];
            for &w in g.neighbors(v) {
                c[self.colors[w as usize] as usize] += 1;
            }
            c
        };
        self.cells().iter().all(|cell| {
            let first = counts(cell[0]);
            cell[1..].iter().all(|&v| counts(v) == first)
        })
    }

    // Renumbers by sorting on `key`; ties keep a common colour.
    fn from_keys<K: Ord>(keys: Vec<K>) -> Coloring {
        let n = keys.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut colors = vec![0u32; n];
        let mut next = 0u32;
        for (i, &v) in order.iter().enumerate() {
            if i > 0 && keys[v] != keys[order[i - 1]] {
                next += 1;
            }
            colors[v] = next;
        }
        Coloring { colors, n_cells: if n == 0 { 0 } else { next as usize + 1 } }
    }
}

/// Degree plus the multiset of degrees of the vertices at distance exactly two.
pub fn initial_coloring(g: &Graph) -> Coloring {
    let n = g.n_vertices();
    let mut mark = vec![usize::MAX; n];
    let keys = (0..n)
        .map(|v| {
            mark[v] = v;
            for &w in g.neighbors(v) {
                mark[w as usize] = v;
            }
            let mut second = Vec::new();
            for &w in g.neighbors(v) {
                for &x in g.neighbors(w as usize) {
                    if mark[x as usize] != v {
                        mark[x as usize] = v;
                        second.push(g.degree(x as usize));
                    }
                }
            }
            second.sort_unstable();
            (g.degree(v), second)
        })
        .collect();
    Coloring::from_keys(keys)
}

/// Coarsest equitable refinement of `c`. Cells split by the sorted list of
/// neighbour colours, so relabeling the input relabels the output.
pub fn refine(g: &Graph, c: &Coloring) -> Coloring {
    let mut cur = c.clone();
    loop {
        let keys: Vec<(u32, Vec<u32>)> = (0..g.n_vertices())
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&w| cur.colors[w as usize]).collect();
                nb.sort_unstable();
                (cur.colors[v], nb)
            })
            .collect();
        let next = Coloring::from_keys(keys);
        if next.n_cells == cur.n_cells {
            return next;
        }
        cur = next;
    }
}

pub fn equitable_refinement(g: &Graph) -> Coloring {
    refine(g, &initial_coloring(g))
}

fn individualize(c: &Coloring, v: usize) -> Coloring {
    let target = c.colors[v];
    let colors = c
        .colors
        .iter()
        .enumerate()
        .map(|(w, &col)| if col > target || (col == target && w != v) { col + 1 } else { col })
        .collect();
    Coloring { colors, n_cells: c.n_cells + 1 }
}

// First smallest non-singleton cell.
fn target_cell(c: &Coloring) -> Vec<usize> {
    let cells = c.cells();
    let size = cells.iter().map(Vec::len).filter(|&s| s > 1).min().expect("coloring is not discrete");
    cells.into_iter().find(|cell| cell.len() == size).unwrap()
}

/// Result of one search: automorphism group generators and the canonical labeling.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub generators: Vec<Perm>,
    /// Maps each vertex to its position in the canonical relabeling.
    pub labeling: Perm,
    pub canonical_form: String,
}

struct Leaf {
    path: Vec<usize>,
    labeling: Perm,
    cert: String,
}

struct Search<'a> {
    g: &'a Graph,
    generators: Vec<Perm>,
    first: Option<Leaf>,
    best: Option<Leaf>,
}

impl Search<'_> {
    fn certificate(&self, labeling: &Perm) -> String {
        let n = self.g.n_vertices();
        let mut bits = vec![false; n * n.saturating_sub(1) / 2];
        for (u, v) in self.g.edges() {
            let (a, b) = (labeling.apply(u), labeling.apply(v));
            let (lo, hi) = (a.min(b), a.max(b));
            bits[hi * (hi - 1) / 2 + lo] = true;
        }
        encode_graph6(n, &bits)
    }

    fn add_generator(&mut self, from: &Perm, to: &Perm) -> bool {
        // vertex at position i in `from` goes to the vertex at position i in `to`
        let gamma = from.then(&to.inverse());
        if gamma.is_identity() {
            return false;
        }
        debug_assert!(self.g.is_automorphism(&gamma));
        self.generators.push(gamma);
        true
    }

    // Returns the tree level to unwind to, if a discovered automorphism makes
    // the rest of the current subtree redundant.
    fn visit(&mut self, c: Coloring, path: &mut Vec<usize>) -> Option<usize> {
        if c.is_discrete() {
            return self.leaf(c, path);
        }
        let cell = target_cell(&c);
        let depth = path.len();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if self.equivalent_to_explored(path, &cell, v, &explored) {
                continue;
            }
            explored.push(v);
            path.push(v);
            let child = refine(self.g, &individualize(&c, v));
            let jump = self.visit(child, path);
            path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn equivalent_to_explored(&self, path: &[usize], cell: &[usize], v: usize, explored: &[usize]) -> bool {
        if explored.is_empty() {
            return false;
        }
        let fixing: Vec<&Perm> = self
            .generators
            .iter()
            .filter(|g| path.iter().all(|&p| g.fixes(p)))
            .collect();
        if fixing.is_empty() {
            return false;
        }
        // orbit of v under the pointwise stabilizer of the path, which stays inside `cell`
        let n = self.g.n_vertices();
        let mut seen = vec![false; n];
        seen[v] = true;
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for g in &fixing {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        debug_assert!((0..n).filter(|&x| seen[x]).all(|x| cell.contains(&x)));
        explored.iter().any(|&e| seen[e])
    }

    fn leaf(&mut self, c: Coloring, path: &[usize]) -> Option<usize> {
        let labeling = Perm::from_images_unchecked(c.colors);
        let cert = self.certificate(&labeling);
        let leaf = Leaf { path: path.to_vec(), labeling, cert };
        let Some(first) = &self.first else {
            self.best = Some(Leaf { path: leaf.path.clone(), labeling: leaf.labeling.clone(), cert: leaf.cert.clone() });
            self.first = Some(leaf);
            return None;
        };
        if leaf.cert == first.cert {
            let level = common_prefix(&first.path, &leaf.path);
            let from = first.labeling.clone();
            self.add_generator(&from, &leaf.labeling);
            return Some(level);
        }
        let best = self.best.as_ref().unwrap();
        match leaf.cert.cmp(&best.cert) {
            std::cmp::Ordering::Equal => {
                let level = common_prefix(&best.path, &leaf.path);
                let from = best.labeling.clone();
                self.add_generator(&from, &leaf.labeling);
                Some(level)
            }
            std::cmp::Ordering::Less => {
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Greater => None,
        }
    }
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Runs the full search on `g`.
pub fn search(g: &Graph) -> SearchResult {
    let n = g.n_vertices();
    let mut s = Search { g, generators: Vec::new(), first: None, best: None };
    let root = equitable_refinement(g);
    if n > 0 {
        s.visit(root, &mut Vec::new());
    }
    match s.best {
        Some(best) => SearchResult { generators: s.generators, labeling: best.labeling, canonical_form: best.cert },
        None => SearchResult {
            generators: Vec::new(),
            labeling: Perm::identity(0),
            canonical_form: encode_graph6(0, &[]),
        },
    }
}

pub fn automorphism_group(g: &Graph) -> PermGroup {
    PermGroup::new(g.n_vertices(), search(g).generators).expect("generators act on the vertex set")
}

/// graph6 of the canonical relabeling: equal for two graphs iff they are isomorphic.
pub fn canonical_form(g: &Graph) -> String {
    search(g).canonical_form
}

pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    g1.n_vertices() == g2.n_vertices()
        && g1.edge_count() == g2.edge_count()
        && canonical_form(g1) == canonical_form(g2)
}

/// A vertex bijection `p` with `g1.relabel(p) == g2`, if one exists.
pub fn isomorphism(g1: &Graph, g2: &Graph) -> Option<Perm> {
    if g1.n_vertices() != g2.n_vertices() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let (s1, s2) = (search(g1), search(g2));
    (s1.canonical_form == s2.canonical_form).then(|| s1.labeling.then(&s2.labeling.inverse()))
}
