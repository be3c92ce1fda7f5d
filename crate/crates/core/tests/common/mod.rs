// Independent oracles: nothing here calls the search, chain or arithmetic
// code under test except to read inputs.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use metacirc_core::{Graph, GroupSpec, Perm};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn adjacency_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n_vertices();
    let mut a = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Counts bijections `V(g1) -> V(g2)` preserving adjacency and non-adjacency.
fn count_isomorphisms(g1: &Graph, g2: &Graph, stop_at_first: bool) -> u64 {
    let n = g1.n_vertices();
    if n != g2.n_vertices() {
        return 0;
    }
    let (a, b) = (adjacency_matrix(g1), adjacency_matrix(g2));
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        k: usize,
        a: &[Vec<bool>],
        b: &[Vec<bool>],
        image: &mut [usize],
        used: &mut [bool],
        stop: bool,
    ) -> u64 {
        let n = a.len();
        if k == n {
            return 1;
        }
        let mut total = 0;
        for t in 0..n {
            if used[t] || (0..k).any(|i| a[i][k] != b[image[i]][t]) {
                continue;
            }
            image[k] = t;
            used[t] = true;
            total += rec(k + 1, a, b, image, used, stop);
            used[t] = false;
            if stop && total > 0 {
                return total;
            }
        }
        total
    }
    rec(0, &a, &b, &mut image, &mut used, stop_at_first)
}

pub fn brute_force_aut_order(g: &Graph) -> u64 {
    count_isomorphisms(g, g, false)
}

pub fn brute_force_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    count_isomorphisms(g1, g2, true) > 0
}

/// Order of the group generated by `gens`, by closing under right multiplication.
pub fn closure_order(degree: usize, gens: &[Perm]) -> usize {
    let compose = |p: &[u32], q: &[u32]| -> Vec<u32> { p.iter().map(|&x| q[x as usize]).collect() };
    let id: Vec<u32> = (0..degree as u32).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = compose(&p, g.images());
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len()
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_perm(rng: &mut impl Rng, n: usize) -> Perm {
    let mut images: Vec<u32> = (0..n as u32).collect();
    images.shuffle(rng);
    Perm::from_images(images).unwrap()
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::from_edges(10, edges).unwrap()
}

/// Minimal graph6 reader written from the format description: size byte(s),
/// then upper-triangle bits column by column, six per byte, high bit first.
pub fn parse_graph6(s: &str) -> (usize, Vec<(usize, usize)>) {
    let bytes: Vec<u32> = s.bytes().map(|b| b as u32 - 63).collect();
    let (n, rest) = if bytes[0] == 63 {
        ((bytes[1] << 12 | bytes[2] << 6 | bytes[3]) as usize, &bytes[4..])
    } else {
        (bytes[0] as usize, &bytes[1..])
    };
    let bits: Vec<bool> = rest.iter().flat_map(|&b| (0..6).rev().map(move |i| b >> i & 1 == 1)).collect();
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    (n, edges)
}

/// Faithful affine model of `G`: `a^u b^v c^w` acts on `Z_m` as
/// `x -> r^v (x + u)` and carries `(v mod n, w mod ell)` alongside.
/// Products compose left to right, matching `x^(gh) = (x^g)^h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Affine {
    pub alpha: u64,
    pub beta: u64,
    pub v: u64,
    pub w: u64,
}

pub struct AffineModel {
    pub m: u64,
    pub n: u64,
    pub r: u64,
    pub ell: u64,
}

impl AffineModel {
    pub fn new(spec: &GroupSpec) -> Self {
        AffineModel { m: spec.m(), n: spec.n(), r: spec.r(), ell: spec.ell() }
    }

    fn r_pow(&self, v: u64) -> u64 {
        let mut x = 1 % self.m;
        for _ in 0..v {
            x = x * self.r % self.m;
        }
        x
    }

    pub fn of(&self, u: u64, v: u64, w: u64) -> Affine {
        let rv = self.r_pow(v);
        Affine { alpha: rv, beta: u * rv % self.m, v: v % self.n, w: w % self.ell }
    }

    /// `f` then `g`.
    pub fn compose(&self, f: Affine, g: Affine) -> Affine {
        Affine {
            alpha: f.alpha * g.alpha % self.m,
            beta: (f.beta * g.alpha + g.beta) % self.m,
            v: (f.v + g.v) % self.n,
            w: (f.w + g.w) % self.ell,
        }
    }

    pub fn identity(&self) -> Affine {
        self.of(0, 0, 0)
    }
}
