//! Permutation groups via stabilizer chains (base and strong generating set),
//! and the orbit counts used to classify graph symmetry.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::cayley::Graph;
use crate::error::{Error, Result};
use crate::metagroup::GroupSpec;
use crate::perm::Perm;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    // slot[x] indexes `reps` when x is in the basic orbit
    slot: Vec<u32>,
    orbit: Vec<usize>,
    reps: Vec<Perm>,
    reps_inv: Vec<Perm>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut slot = vec![NONE; degree];
        slot[base] = 0;
        Level {
            base,
            gens: Vec::new(),
            slot,
            orbit: vec![base],
            reps: vec![Perm::identity(degree)],
            reps_inv: vec![Perm::identity(degree)],
        }
    }
}

/// Deterministic incremental Schreier-Sims.
#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn new(degree: usize, base_prefix: &[usize]) -> Self {
        StabChain {
            degree,
            levels: base_prefix.iter().map(|&b| Level::new(degree, b)).collect(),
        }
    }

    fn build(degree: usize, base_prefix: &[usize], gens: &[Perm]) -> Self {
        let mut chain = StabChain::new(degree, base_prefix);
        for g in gens {
            if !g.is_identity() {
                chain.insert(g.clone(), 0);
            }
        }
        chain
    }

    /// Sifts `g` through levels `k..`; true iff it reduces to the identity.
    fn contains_from(&self, g: &Perm, k: usize) -> bool {
        let mut g = g.clone();
        for level in &self.levels[k..] {
            let slot = level.slot[g.apply(level.base)];
            if slot == NONE {
                return false;
            }
            g = g.then(&level.reps_inv[slot as usize]);
        }
        g.is_identity()
    }

    // `g` fixes the first k base points.
    fn insert(&mut self, g: Perm, k: usize) {
        if self.contains_from(&g, k) {
            return;
        }
        if k == self.levels.len() {
            let base = g.first_moved_point().expect("non-member is not the identity");
            self.levels.push(Level::new(self.degree, base));
        }
        self.levels[k].gens.push(g.clone());
        let existing = self.levels[k].reps.clone();
        for t in existing {
            self.extend(k, t.then(&g));
        }
    }

    fn extend(&mut self, k: usize, p: Perm) {
        let mut stack = vec![p];
        while let Some(p) = stack.pop() {
            let level = &self.levels[k];
            let y = p.apply(level.base);
            let slot = level.slot[y];
            if slot != NONE {
                let schreier = p.then(&level.reps_inv[slot as usize]);
                if !schreier.is_identity() {
                    self.insert(schreier, k + 1);
                }
            } else {
                let level = &mut self.levels[k];
                level.slot[y] = level.reps.len() as u32;
                level.orbit.push(y);
                level.reps_inv.push(p.inverse());
                for g in &level.gens {
                    stack.push(p.then(g));
                }
                level.reps.push(p);
            }
        }
    }

    fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    fn strong_generators_from(&self, k: usize) -> Vec<Perm> {
        self.levels[k..].iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    fn for_each_element(&self, f: &mut dyn FnMut(&Perm)) {
        fn rec(levels: &[Level], acc: Perm, f: &mut dyn FnMut(&Perm)) {
            match levels.split_last() {
                None => f(&acc),
                Some((last, rest)) => {
                    for rep in &last.reps {
                        rec(rest, acc.then(rep), f);
                    }
                }
            }
        }
        rec(&self.levels, Perm::identity(self.degree), f);
    }
}

/// A permutation group given by generators, with a stabilizer chain built on
/// first use. After construction the group is read-only and can be shared.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: OnceLock<StabChain>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        if let Some(p) = generators.iter().find(|p| p.degree() != degree) {
            return Err(Error::InvalidArgument(format!(
                "generator of degree {} in a group of degree {degree}",
                p.degree()
            )));
        }
        Ok(PermGroup { degree, generators, chain: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, generators: Vec::new(), chain: OnceLock::new() }
    }

    /// Builds the chain with `base_prefix` as its first base points.
    pub fn with_base(degree: usize, generators: Vec<Perm>, base_prefix: &[usize]) -> Result<Self> {
        let group = PermGroup::new(degree, generators)?;
        if let Some(&p) = base_prefix.iter().find(|&&p| p >= degree) {
            return Err(Error::PointOutOfRange { point: p, degree });
        }
        let chain = StabChain::build(degree, base_prefix, &group.generators);
        group.chain.set(chain).expect("fresh group");
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &[], &self.generators))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().base()
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        self.chain().strong_generators_from(0)
    }

    pub fn contains(&self, p: &Perm) -> bool {
        p.degree() == self.degree && self.chain().contains_from(p, 0)
    }

    fn check_point(&self, point: usize) -> Result<()> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange { point, degree: self.degree });
        }
        Ok(())
    }

    /// Orbit of `point`, sorted.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        self.check_point(point)?;
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut queue = VecDeque::from([point]);
        let mut orbit = vec![point];
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        orbit.sort_unstable();
        Ok(orbit)
    }

    /// All orbits, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.degree);
        for g in &self.generators {
            for x in 0..self.degree {
                uf.union(x, g.apply(x));
            }
        }
        uf.classes()
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }

    /// The stabilizer of `point`, read off a chain whose first base point is `point`.
    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup> {
        self.check_point(point)?;
        let chain = StabChain::build(self.degree, &[point], &self.generators);
        let sub = StabChain { degree: self.degree, levels: chain.levels[1..].to_vec() };
        let group = PermGroup {
            degree: self.degree,
            generators: sub.strong_generators_from(0),
            chain: OnceLock::new(),
        };
        group.chain.set(sub).expect("fresh group");
        Ok(group)
    }

    /// Calls `f` once for every group element.
    pub fn for_each_element(&self, mut f: impl FnMut(&Perm)) {
        self.chain().for_each_element(&mut f);
    }

    pub fn elements(&self, bound: u64) -> Result<Vec<Perm>> {
        let order = self.order();
        if order > BigUint::from(bound) {
            return Err(Error::BoundExceeded {
                what: "group order",
                value: order.to_u128().unwrap_or(u128::MAX),
                bound: bound as u128,
            });
        }
        let mut out = Vec::new();
        self.for_each_element(|p| out.push(p.clone()));
        Ok(out)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }

    fn classes(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for x in 0..self.parent.len() {
            let r = self.find(x);
            by_root.entry(r).or_default().push(x);
        }
        let mut out: Vec<_> = by_root.into_values().collect();
        out.sort();
        out
    }
}

/// Fails if some generator is not an automorphism of `graph`.
pub fn check_acts_on(group: &PermGroup, graph: &Graph) -> Result<()> {
    if group.degree() != graph.n_vertices() {
        return Err(Error::InvalidArgument(format!(
            "group of degree {} acting on {} vertices",
            group.degree(),
            graph.n_vertices()
        )));
    }
    match group.generators().iter().position(|g| !graph.is_automorphism(g)) {
        Some(index) => Err(Error::NotAnAutomorphism { index }),
        None => Ok(()),
    }
}

/// Number of orbits of the group on the `s`-arcs of `graph` (non-backtracking
/// walks `v0 .. vs`). `s = 0` counts vertex orbits, `s = 1` arc orbits.
pub fn s_arc_orbit_count(group: &PermGroup, graph: &Graph, s: usize) -> Result<usize> {
    check_acts_on(group, graph)?;
    let mut walks: Vec<Vec<u32>> = (0..graph.n_vertices() as u32).map(|v| vec![v]).collect();
    for _ in 0..s {
        walks = walks
            .into_iter()
            .flat_map(|w| {
                let last = *w.last().unwrap() as usize;
                let prev = (w.len() >= 2).then(|| w[w.len() - 2]);
                graph
                    .neighbors(last)
                    .iter()
                    .filter(move |&&x| Some(x) != prev)
                    .map(move |&x| {
                        let mut next = w.clone();
                        next.push(x);
                        next
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    let index: HashMap<&[u32], usize> = walks.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let mut uf = UnionFind::new(walks.len());
    let mut image = Vec::with_capacity(s + 1);
    for g in group.generators() {
        for (i, w) in walks.iter().enumerate() {
            image.clear();
            image.extend(w.iter().map(|&x| g.apply(x as usize) as u32));
            uf.union(i, index[image.as_slice()]);
        }
    }
    Ok(uf.count())
}

/// Orbits on edges `{u, v}`.
pub fn edge_orbit_count(group: &PermGroup, graph: &Graph) -> Result<usize> {
    check_acts_on(group, graph)?;
    let edges: Vec<(usize, usize)> = graph.edges().collect();
    let index: HashMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut uf = UnionFind::new(edges.len());
    for g in group.generators() {
        for (i, &(u, v)) in edges.iter().enumerate() {
            let (x, y) = (g.apply(u), g.apply(v));
            uf.union(i, index[&(x.min(y), x.max(y))]);
        }
    }
    Ok(uf.count())
}

pub fn arc_orbit_count(group: &PermGroup, graph: &Graph) -> Result<usize> {
    s_arc_orbit_count(group, graph, 1)
}

/// Largest `s <= cap` such that the group is transitive on `s`-arcs; 0 when
/// not transitive on arcs.
pub fn max_s_arc_transitive(group: &PermGroup, graph: &Graph, cap: usize) -> Result<usize> {
    let mut s = 0;
    for k in 1..=cap {
        if s_arc_orbit_count(group, graph, k)? != 1 {
            break;
        }
        s = k;
    }
    Ok(s)
}

/// Order of the normalizer of the right-regular copy of `G` inside `aut`,
/// found by testing every element of `aut`.
pub fn normalizer_of_regular(aut: &PermGroup, spec: &GroupSpec) -> Result<u64> {
    const BOUND: u64 = 10_000_000;
    let n = spec.order() as usize;
    if aut.degree() != n {
        return Err(Error::InvalidArgument(format!(
            "group of degree {} does not act on |G| = {n} points",
            aut.degree()
        )));
    }
    let order = aut.order();
    if order > BigUint::from(BOUND) {
        return Err(Error::BoundExceeded {
            what: "automorphism group order",
            value: order.to_u128().unwrap_or(u128::MAX),
            bound: BOUND as u128,
        });
    }
    let regular: Vec<Perm> = spec.elements().map(|h| spec.right_multiplication(&h)).collect();
    let gens = spec.regular_representation();
    let mut count = 0u64;
    aut.for_each_element(|x| {
        let x_inv = x.inverse();
        let normalizes = gens.iter().all(|g| {
            let conj = x_inv.then(g).then(x);
            conj == regular[conj.apply(0)]
        });
        if normalizes {
            count += 1;
        }
    });
    Ok(count)
}
