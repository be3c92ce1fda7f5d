//! Automorphisms of `G = <c> x (<a> : <b>)`.
//!
//! Under the standing hypothesis (Sylow-cyclic, non-abelian, no central Sylow
//! subgroup of `<b>`), every automorphism is
//!
//! ```text
//! a -> a^s,  b -> a^t b^(1 + l n0),  c -> c^sc
//! ```
//!
//! with `gcd(s, m) = 1`, `t` mod `m`, `0 <= l < n / n0` and `gcd(sc, ell) = 1`.
//! Cyclic groups use the same shape with `t = 0` and `1 + l` a unit mod `n`.
//! Anything else falls back to [`brute_force_automorphisms`].

use std::collections::HashSet;

use rayon::prelude::*;

use crate::arith::{gcd, units};
use crate::cayley::ConnectionSet;
use crate::error::{Error, Result};
use crate::metagroup::{Element, GroupSpec};

/// Parameters `(s, t, l, s_c)` of an automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AutoMap {
    pub s: u64,
    pub t: u64,
    pub l: u64,
    pub s_c: u64,
}

/// A homomorphism given by the images of `a`, `b`, `c`. Two automorphisms are
/// equal iff they agree on the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    pub a: Element,
    pub b: Element,
    pub c: Element,
}

impl AutoMap {
    pub const IDENTITY: AutoMap = AutoMap { s: 1, t: 0, l: 0, s_c: 1 };

    pub fn images(&self, spec: &GroupSpec) -> Automorphism {
        let b_exp = 1 + self.l * spec.n0();
        Automorphism {
            a: spec.element(self.s as i64, 0, 0),
            b: spec.element(self.t as i64, b_exp as i64, 0),
            c: spec.element(0, 0, self.s_c as i64),
        }
    }

    pub fn apply(&self, g: &Element, spec: &GroupSpec) -> Element {
        self.images(spec).apply(g, spec)
    }

    pub fn same_action(&self, other: &AutoMap, spec: &GroupSpec) -> bool {
        self.images(spec) == other.images(spec)
    }
}

impl Automorphism {
    pub fn identity(spec: &GroupSpec) -> Self {
        Automorphism { a: spec.a(), b: spec.b(), c: spec.c() }
    }

    /// Image of `a^u b^v c^w` as `(image a)^u (image b)^v (image c)^w`.
    pub fn apply(&self, g: &Element, spec: &GroupSpec) -> Element {
        let x = spec.pow(&self.a, g.u as i64);
        let y = spec.pow(&self.b, g.v as i64);
        let z = spec.pow(&self.c, g.w as i64);
        spec.mul(&spec.mul(&x, &y), &z)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Automorphism, spec: &GroupSpec) -> Automorphism {
        Automorphism {
            a: other.apply(&self.a, spec),
            b: other.apply(&self.b, spec),
            c: other.apply(&self.c, spec),
        }
    }

    pub fn is_identity(&self, spec: &GroupSpec) -> bool {
        *self == Automorphism::identity(spec)
    }

    /// Whether the images satisfy every defining relation of `G`, so that the
    /// assignment extends to a homomorphism.
    pub fn preserves_relations(&self, spec: &GroupSpec) -> bool {
        let (x, y, z) = (&self.a, &self.b, &self.c);
        spec.pow(x, spec.m() as i64).is_identity()
            && spec.pow(y, spec.n() as i64).is_identity()
            && spec.pow(z, spec.ell() as i64).is_identity()
            && spec.mul(&spec.inv(y), &spec.mul(x, y)) == spec.pow(x, spec.r() as i64)
            && spec.mul(x, z) == spec.mul(z, x)
            && spec.mul(y, z) == spec.mul(z, y)
    }

    pub fn is_automorphism(&self, spec: &GroupSpec) -> bool {
        self.preserves_relations(spec) && spec.closure(&[self.a, self.b, self.c]) as u64 == spec.order()
    }

    /// Recovers `(s, t, l, s_c)` when the images have the parametrized shape.
    pub fn params(&self, spec: &GroupSpec) -> Option<AutoMap> {
        let n0 = spec.n0();
        let e = self.b.v as u64;
        if self.a.v != 0 || self.a.w != 0 || self.b.w != 0 || self.c.u != 0 || self.c.v != 0 {
            return None;
        }
        if !((e + spec.n() - 1) % spec.n()).is_multiple_of(n0) {
            return None;
        }
        Some(AutoMap {
            s: self.a.u as u64,
            t: self.b.u as u64,
            l: ((e + spec.n() - 1) % spec.n()) / n0,
            s_c: self.c.w as u64,
        })
    }
}

/// Whether `enumerate_aut` has a closed-form parametrization for `spec`.
pub fn has_parametrization(spec: &GroupSpec) -> bool {
    (spec.hypothesis_star() && !spec.is_abelian()) || spec.is_cyclic()
}

/// Every automorphism of `G` in parametrized form.
///
/// Non-abelian specs satisfying the hypothesis give `phi(m) m (n/n0) phi(ell)`
/// maps; cyclic specs give `phi(m) phi(n) phi(ell)`. Other specs are rejected.
pub fn enumerate_aut(spec: &GroupSpec) -> Result<Vec<AutoMap>> {
    let (m, n, ell, n0) = (spec.m(), spec.n(), spec.ell(), spec.n0());
    let cyclic = spec.is_cyclic();
    if !has_parametrization(spec) {
        return Err(Error::Unsupported(format!(
            "{spec} is neither cyclic nor a non-abelian group satisfying the hypothesis"
        )));
    }
    let ts: Vec<u64> = if cyclic { vec![0] } else { (0..m).collect() };
    let ls: Vec<u64> = (0..n / n0).filter(|&l| gcd((1 + l * n0) % n, n) == 1).collect();
    let mut out = Vec::new();
    for s in units(m) {
        for &t in &ts {
            for &l in &ls {
                for s_c in units(ell) {
                    let f = AutoMap { s, t, l, s_c };
                    debug_assert!(f.images(spec).preserves_relations(spec));
                    out.push(f);
                }
            }
        }
    }
    Ok(out)
}

/// Searches all images of `(a, b, c)` satisfying the relations and generating `G`.
pub fn brute_force_automorphisms(spec: &GroupSpec) -> Vec<Automorphism> {
    let of_order_dividing = |k: u64| -> Vec<Element> {
        spec.elements().filter(|x| spec.pow(x, k as i64).is_identity()).collect()
    };
    let xs = of_order_dividing(spec.m());
    let ys = of_order_dividing(spec.n());
    let zs: Vec<Element> = of_order_dividing(spec.ell())
        .into_iter()
        .filter(|z| spec.elements().all(|g| spec.mul(z, &g) == spec.mul(&g, z)))
        .collect();
    xs.par_iter()
        .flat_map_iter(|x| {
            let xr = spec.pow(x, spec.r() as i64);
            let zs = &zs;
            ys.iter()
                .filter(move |y| spec.mul(&spec.inv(y), &spec.mul(x, y)) == xr)
                .flat_map(move |y| zs.iter().map(move |z| Automorphism { a: *x, b: *y, c: *z }))
                .filter(|f| f.is_automorphism(spec))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// `Aut(G)` as generator images, parametrized when possible.
pub fn automorphisms(spec: &GroupSpec) -> Vec<Automorphism> {
    match enumerate_aut(spec) {
        Ok(maps) => maps.iter().map(|f| f.images(spec)).collect(),
        Err(_) => brute_force_automorphisms(spec),
    }
}

/// The parametrized automorphisms of order exactly 2.
pub fn involutions(spec: &GroupSpec) -> Result<Vec<AutoMap>> {
    Ok(enumerate_aut(spec)?
        .into_iter()
        .filter(|f| {
            let img = f.images(spec);
            !img.is_identity(spec) && img.then(&img, spec).is_identity(spec)
        })
        .collect())
}

/// `Aut(G)` tabulated as permutations of element indices, for fast set images.
#[derive(Debug, Clone)]
pub struct AutGroupAction {
    spec: GroupSpec,
    maps: Vec<Automorphism>,
    tables: Vec<Vec<u32>>,
}

impl AutGroupAction {
    pub fn new(spec: &GroupSpec) -> Self {
        Self::from_automorphisms(spec, automorphisms(spec))
    }

    pub fn from_automorphisms(spec: &GroupSpec, maps: Vec<Automorphism>) -> Self {
        let tables = maps
            .par_iter()
            .map(|f| spec.elements().map(|g| spec.index(&f.apply(&g, spec)) as u32).collect())
            .collect();
        AutGroupAction { spec: *spec, maps, tables }
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[Automorphism] {
        &self.maps
    }

    fn image_indices(&self, k: usize, set: &[usize; 4]) -> [usize; 4] {
        let mut img = set.map(|i| self.tables[k][i] as usize);
        img.sort_unstable();
        img
    }

    /// Automorphisms fixing the set setwise.
    pub fn stabilizer(&self, set: &ConnectionSet) -> Vec<Automorphism> {
        let idx = set.indices(&self.spec);
        (0..self.maps.len())
            .filter(|&k| self.image_indices(k, &idx) == idx)
            .map(|k| self.maps[k])
            .collect()
    }

    /// Lexicographically least sorted index tuple in the `Aut(G)`-orbit of the set.
    pub fn canonical_indices(&self, set: &ConnectionSet) -> [usize; 4] {
        let idx = set.indices(&self.spec);
        (0..self.maps.len())
            .map(|k| self.image_indices(k, &idx))
            .min()
            .unwrap_or(idx)
    }

    pub fn canonical(&self, set: &ConnectionSet) -> ConnectionSet {
        ConnectionSet::from_indices(self.canonical_indices(set), &self.spec)
            .expect("automorphic image of a connection set is a connection set")
    }

    /// The full orbit of a set, as sorted index tuples.
    pub fn orbit(&self, set: &ConnectionSet) -> HashSet<[usize; 4]> {
        let idx = set.indices(&self.spec);
        (0..self.maps.len()).map(|k| self.image_indices(k, &idx)).collect()
    }
}

/// `Aut(G, S)`.
pub fn aut_stabilizer(set: &ConnectionSet, spec: &GroupSpec) -> Vec<Automorphism> {
    AutGroupAction::new(spec).stabilizer(set)
}

/// Canonical representative of the `Aut(G)`-orbit of `S`.
pub fn set_orbit_canonical(set: &ConnectionSet, spec: &GroupSpec) -> ConnectionSet {
    AutGroupAction::new(spec).canonical(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::standard_connection_set;

    fn z7z3() -> GroupSpec {
        GroupSpec::new(7, 3, 2, 1).unwrap()
    }

    #[test]
    fn apply_examples() {
        let g = z7z3();
        let ab = g.element(1, 1, 0);
        assert_eq!(AutoMap::IDENTITY.apply(&ab, &g), ab);
        let f = AutoMap { s: 6, t: 0, l: 0, s_c: 1 };
        assert_eq!(f.apply(&ab, &g), g.element(6, 1, 0));
        for f in enumerate_aut(&g).unwrap() {
            assert!(f.apply(&g.identity(), &g).is_identity());
        }
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_aut(&z7z3()).unwrap().len(), 42);
        assert_eq!(enumerate_aut(&GroupSpec::new(23, 11, 2, 1).unwrap()).unwrap().len(), 506);
        assert_eq!(enumerate_aut(&GroupSpec::new(5, 1, 1, 1).unwrap()).unwrap().len(), 4);
        assert_eq!(enumerate_aut(&GroupSpec::new(7, 9, 2, 1).unwrap()).unwrap().len(), 126);
        assert_eq!(enumerate_aut(&GroupSpec::new(7, 3, 2, 5).unwrap()).unwrap().len(), 168);
    }

    #[test]
    fn rejects_abelian_non_cyclic() {
        let g = GroupSpec::new(3, 3, 1, 1).unwrap();
        assert!(enumerate_aut(&g).is_err());
        // GL(2, 3) has order 48
        assert_eq!(brute_force_automorphisms(&g).len(), 48);
    }

    #[test]
    fn brute_force_agrees_on_z7z3() {
        let g = z7z3();
        let mut brute = brute_force_automorphisms(&g);
        let mut param: Vec<_> = enumerate_aut(&g).unwrap().iter().map(|f| f.images(&g)).collect();
        brute.sort();
        param.sort();
        assert_eq!(brute, param);
    }

    #[test]
    fn params_round_trip() {
        let g = GroupSpec::new(7, 9, 2, 1).unwrap();
        for f in enumerate_aut(&g).unwrap() {
            assert_eq!(f.images(&g).params(&g), Some(f));
        }
    }

    #[test]
    fn involution_examples() {
        let g = z7z3();
        let inv = involutions(&g).unwrap();
        assert_eq!(inv.len(), 7);
        let flip = AutoMap { s: 6, t: 0, l: 0, s_c: 1 };
        assert!(inv.iter().any(|f| f.same_action(&flip, &g)));
        assert!(!inv.iter().any(|f| f.same_action(&AutoMap::IDENTITY, &g)));
        for f in &inv {
            assert_eq!(f.l, 0);
            assert_eq!(f.s * f.s % 7, 1);
        }
    }

    #[test]
    fn stabilizer_examples() {
        let g = z7z3();
        let s1 = standard_connection_set(1, &g).unwrap();
        assert_eq!(aut_stabilizer(&s1, &g).len(), 2);

        let z5 = GroupSpec::new(5, 1, 1, 1).unwrap();
        let all = ConnectionSet::from_indices([1, 2, 3, 4], &z5).unwrap();
        assert_eq!(aut_stabilizer(&all, &z5).len(), 4);

        // {a, a^-1, b, b^-1}: an automorphism fixing it must fix <a> and so
        // fix {a, a^-1} and {b, b^-1}; b -> b^-1 is impossible.
        let s = ConnectionSet::from_pair(g.a(), g.b(), &g).unwrap();
        assert_eq!(aut_stabilizer(&s, &g).len(), 2);
        let s = ConnectionSet::from_pair(g.element(1, 1, 0), g.element(3, 2, 0), &g).unwrap();
        let brute: Vec<_> = brute_force_automorphisms(&g)
            .into_iter()
            .filter(|f| {
                let mut img = s.elements().map(|e| g.index(&f.apply(&e, &g)));
                img.sort();
                img == s.indices(&g)
            })
            .collect();
        assert_eq!(aut_stabilizer(&s, &g).len(), brute.len());
    }

    #[test]
    fn canonical_examples() {
        let g = z7z3();
        let action = AutGroupAction::new(&g);
        let s1 = standard_connection_set(1, &g).unwrap();
        let a3b = g.element(3, 1, 0);
        let s = ConnectionSet::from_pair(g.b(), a3b, &g).unwrap();
        assert_eq!(action.canonical(&s), action.canonical(&s1));
        let c = action.canonical(&s1);
        assert_eq!(action.canonical(&c), c);
        for f in action.maps() {
            let img = ConnectionSet::new(s1.elements().map(|e| f.apply(&e, &g)), &g).unwrap();
            assert_eq!(action.canonical(&img), c);
        }
    }
}
