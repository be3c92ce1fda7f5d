//! Exact arithmetic in split metacyclic groups of odd order
//!
//! `G = <c> x (<a> : <b>)` with `a^m = b^n = c^ell = 1`, `b^-1 a b = a^r` and `c`
//! central. Every element is kept in the normal form `a^u b^v c^w` with each
//! exponent reduced into its range, so equality is a field compare.
//!
//! Vertex indexing `u + m*v + m*n*w` is fixed: reports and graphs refer to
//! elements by this index.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, geometric_sum, inv_mod, multiplicative_order, pow_mod, prime_factors};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Presentation parameters `(m, n, r, ell)` plus the derived order `n0` of `r` mod `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupSpec {
    m: u64,
    n: u64,
    r: u64,
    ell: u64,
    n0: u64,
}

#[derive(Deserialize)]
struct RawSpec {
    m: u64,
    n: u64,
    r: u64,
    ell: u64,
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSpec::deserialize(d)?;
        GroupSpec::new(raw.m, raw.n, raw.r, raw.ell).map_err(serde::de::Error::custom)
    }
}

/// `a^u b^v c^w` in normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element {
    pub u: u32,
    pub v: u32,
    pub w: u32,
}

impl Element {
    pub const IDENTITY: Element = Element { u: 0, v: 0, w: 0 };

    pub fn is_identity(&self) -> bool {
        *self == Element::IDENTITY
    }

    pub fn triple(&self) -> [u32; 3] {
        [self.u, self.v, self.w]
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a^{} b^{} c^{}", self.u, self.v, self.w)
    }
}

impl GroupSpec {
    /// Validates `(m, n, r, ell)`: all moduli odd and positive, `gcd(r, m) = 1`
    /// and `r^n = 1 (mod m)`. `r` is stored reduced mod `m`.
    pub fn new(m: u64, n: u64, r: u64, ell: u64) -> Result<Self> {
        for (name, value) in [("m", m), ("n", n), ("ell", ell)] {
            if value == 0 || value % 2 == 0 {
                return Err(Error::InvalidSpec(format!("{name} = {value} must be a positive odd integer")));
            }
            if value > u32::MAX as u64 {
                return Err(Error::InvalidSpec(format!("{name} = {value} is too large")));
            }
        }
        let r = r % m;
        if gcd(r, m) != 1 {
            return Err(Error::InvalidSpec(format!("gcd(r, m) = gcd({r}, {m}) != 1")));
        }
        if pow_mod(r, n, m) != 1 % m {
            return Err(Error::InvalidSpec(format!("r^n = {r}^{n} is not 1 mod {m}")));
        }
        let order = (m as u128) * (n as u128) * (ell as u128);
        if order > u32::MAX as u128 {
            return Err(Error::InvalidSpec(format!("group order {order} is too large")));
        }
        let n0 = multiplicative_order(r, m).expect("r is a unit");
        Ok(GroupSpec { m, n, r, ell, n0 })
    }

    pub fn m(&self) -> u64 {
        self.m
    }
    pub fn n(&self) -> u64 {
        self.n
    }
    pub fn r(&self) -> u64 {
        self.r
    }
    pub fn ell(&self) -> u64 {
        self.ell
    }
    pub fn n0(&self) -> u64 {
        self.n0
    }

    pub fn order(&self) -> u64 {
        self.m * self.n * self.ell
    }

    pub fn is_abelian(&self) -> bool {
        self.n0 == 1
    }

    /// `gcd(m, n) = 1` and `gcd(ell, m n) = 1`: every Sylow subgroup is cyclic.
    pub fn sylow_cyclic(&self) -> bool {
        gcd(self.m, self.n) == 1 && gcd(self.ell, self.m * self.n) == 1
    }

    /// Abelian with cyclic Sylow subgroups, hence cyclic of order `m n ell`.
    pub fn is_cyclic(&self) -> bool {
        self.is_abelian() && self.sylow_cyclic()
    }

    /// Non-abelian, Sylow-cyclic, `<a>` meets the centre trivially (`gcd(r - 1, m) = 1`), and
    /// no Sylow `p`-subgroup of `<b>` is central: for `p^k || n`,
    /// `r^(n / p^k) != 1 (mod m)`.
    pub fn hypothesis_star(&self) -> bool {
        if self.is_abelian() || !self.sylow_cyclic() {
            return false;
        }
        if self.m > 1 && gcd((self.r + self.m - 1) % self.m, self.m) != 1 {
            return false;
        }
        prime_factors(self.n).into_iter().all(|p| {
            let mut p_part = 1;
            while (self.n / p_part).is_multiple_of(p) {
                p_part *= p;
            }
            pow_mod(self.r, self.n / p_part, self.m) != 1 % self.m
        })
    }

    pub fn identity(&self) -> Element {
        Element::IDENTITY
    }

    /// `a^u b^v c^w` with exponents reduced (negative exponents allowed).
    pub fn element(&self, u: i64, v: i64, w: i64) -> Element {
        Element {
            u: u.rem_euclid(self.m as i64) as u32,
            v: v.rem_euclid(self.n as i64) as u32,
            w: w.rem_euclid(self.ell as i64) as u32,
        }
    }

    pub fn a(&self) -> Element {
        self.element(1, 0, 0)
    }
    pub fn b(&self) -> Element {
        self.element(0, 1, 0)
    }
    pub fn c(&self) -> Element {
        self.element(0, 0, 1)
    }

    pub fn contains(&self, g: &Element) -> bool {
        (g.u as u64) < self.m && (g.v as u64) < self.n && (g.w as u64) < self.ell
    }

    pub fn index(&self, g: &Element) -> usize {
        (g.u as u64 + self.m * g.v as u64 + self.m * self.n * g.w as u64) as usize
    }

    pub fn element_at(&self, index: usize) -> Element {
        let i = index as u64;
        Element {
            u: (i % self.m) as u32,
            v: ((i / self.m) % self.n) as u32,
            w: (i / (self.m * self.n)) as u32,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order() as usize).map(move |i| self.element_at(i))
    }

    /// `r^e (mod m)` for a signed exponent; `r^n = 1` makes this well defined.
    fn r_pow(&self, e: i64) -> u64 {
        pow_mod(self.r, e.rem_euclid(self.n as i64) as u64, self.m)
    }

    /// Product `g h`. Moving `a^u2` left across `b^v1` multiplies its exponent by `r^(-v1)`.
    pub fn mul(&self, g: &Element, h: &Element) -> Element {
        let m = self.m;
        let twist = self.r_pow(-(g.v as i64));
        Element {
            u: ((g.u as u64 + crate::arith::mul_mod(h.u as u64, twist, m)) % m) as u32,
            v: ((g.v as u64 + h.v as u64) % self.n) as u32,
            w: ((g.w as u64 + h.w as u64) % self.ell) as u32,
        }
    }

    pub fn inv(&self, g: &Element) -> Element {
        let m = self.m;
        let u = crate::arith::mul_mod(g.u as u64, self.r_pow(g.v as i64), m);
        Element {
            u: ((m - u) % m) as u32,
            v: ((self.n - g.v as u64) % self.n) as u32,
            w: ((self.ell - g.w as u64) % self.ell) as u32,
        }
    }

    /// `g^k` via the closed form `(a^u b^v)^k = b^(kv) a^(u (r^v + r^2v + ... + r^kv))`,
    /// with the geometric sum accumulated term by term (mod m) and the result
    /// moved back to `a`-first form.
    pub fn pow(&self, g: &Element, k: i64) -> Element {
        if k < 0 {
            return self.pow(&self.inv(g), -k);
        }
        let k = k as u64 % self.order();
        let m = self.m;
        let rv = self.r_pow(g.v as i64);
        let exponent = crate::arith::mul_mod(g.u as u64, geometric_sum(rv, k, m), m);
        let kv = (k % self.n) * g.v as u64 % self.n;
        let u = crate::arith::mul_mod(exponent, self.r_pow(-(kv as i64)), m);
        Element {
            u: u as u32,
            v: kv as u32,
            w: ((k % self.ell) * g.w as u64 % self.ell) as u32,
        }
    }

    /// Least `k >= 1` with `g^k = 1`.
    pub fn element_order(&self, g: &Element) -> u64 {
        crate::arith::divisors(self.order())
            .into_iter()
            .find(|&d| self.pow(g, d as i64).is_identity())
            .expect("g^|G| is the identity")
    }

    /// `x + x^2 + ... + x^k (mod m)`.
    pub fn rsum(&self, x: u64, k: u64) -> u64 {
        geometric_sum(x, k, self.m)
    }

    /// Size of `<gens>`, by breadth-first closure under right multiplication.
    pub fn closure(&self, gens: &[Element]) -> usize {
        let mut seen = vec![false; self.order() as usize];
        let mut queue = VecDeque::from([Element::IDENTITY]);
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.mul(&x, g);
                let i = self.index(&y);
                if !seen[i] {
                    seen[i] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count
    }

    /// Closed-form test for `<a^i1 b^j, a^i2 b^j> = <a, b>`: `gcd(j, n) = 1` and
    /// `gcd(i2 - i1, i1 [r]_n, m) = 1`, where `[r]_n = r + r^2 + ... + r^n`.
    /// Only the `<a, b>` factor is considered, so this decides generation of
    /// `G` exactly when `ell = 1`.
    pub fn is_generating_pair(&self, i1: i64, i2: i64, j: i64) -> bool {
        let m = self.m as i64;
        if gcd(j.rem_euclid(self.n as i64) as u64, self.n) != 1 {
            return false;
        }
        let diff = (i2 - i1).rem_euclid(m) as u64;
        let tail = crate::arith::mul_mod(
            i1.rem_euclid(m) as u64,
            self.rsum(self.r, self.n),
            self.m,
        );
        gcd(gcd(diff, tail), self.m) == 1
    }

    /// Permutation of the element indices induced by `x -> x g`.
    pub fn right_multiplication(&self, g: &Element) -> Perm {
        let images = self
            .elements()
            .map(|x| self.index(&self.mul(&x, g)) as u32)
            .collect();
        Perm::from_images_unchecked(images)
    }

    /// Right-regular permutations of the standard generators `[a, b, c]`.
    pub fn regular_representation(&self) -> Vec<Perm> {
        [self.a(), self.b(), self.c()]
            .iter()
            .map(|g| self.right_multiplication(g))
            .collect()
    }

    /// Inverse of `r` modulo `m`.
    pub fn r_inverse(&self) -> u64 {
        inv_mod(self.r, self.m).expect("r is a unit")
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m={}, n={}, r={}, ell={})", self.m, self.n, self.r, self.ell)
    }
}

/// All `(m, n, r)` with `ell = 1`, `m n <= max_order`, both odd, satisfying
/// the presentation constraints. `r` runs over all admissible residues.
pub fn specs_up_to(max_order: u64) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for n in (1..=max_order).step_by(2) {
        for m in (1..=max_order / n).step_by(2) {
            for r in 0..m {
                if gcd(r, m) == 1 && pow_mod(r, n, m) == 1 % m {
                    if let Ok(spec) = GroupSpec::new(m, n, r, 1) {
                        out.push(spec);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z7z3() -> GroupSpec {
        GroupSpec::new(7, 3, 2, 1).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(GroupSpec::new(6, 3, 1, 1).is_err());
        assert!(GroupSpec::new(7, 2, 1, 1).is_err());
        assert!(GroupSpec::new(7, 3, 2, 4).is_err());
        assert!(GroupSpec::new(7, 3, 3, 1).is_err()); // 3^3 = 27 = 6 mod 7
        assert!(GroupSpec::new(9, 3, 3, 1).is_err()); // gcd(3, 9) = 3
    }

    #[test]
    fn derived_fields() {
        let g = z7z3();
        assert_eq!(g.n0(), 3);
        assert_eq!(g.order(), 21);
        assert!(g.hypothesis_star());
        assert!(g.sylow_cyclic());

        let k5 = GroupSpec::new(5, 1, 1, 1).unwrap();
        assert_eq!(k5.n0(), 1);
        assert!(k5.is_abelian());
        assert!(k5.is_cyclic());
        assert!(!k5.hypothesis_star());

        let trivial_a = GroupSpec::new(1, 3, 5, 1).unwrap();
        assert_eq!(trivial_a.r(), 0);
        assert_eq!(trivial_a.n0(), 1);

        // <b> has order 9, b^3 central, but the Sylow 3-subgroup <b> is not.
        let g = GroupSpec::new(7, 9, 2, 1).unwrap();
        assert_eq!(g.n0(), 3);
        assert!(g.hypothesis_star());

        // a^13 central: G = Z7 x (Z13 : Z3) written with a single <a>.
        let r = (1..91).find(|&r| r % 7 == 1 && r % 13 == 3).unwrap();
        assert!(!GroupSpec::new(91, 3, r, 1).unwrap().hypothesis_star());
    }

    #[test]
    fn mul_examples() {
        let g = z7z3();
        let ab = g.element(1, 1, 0);
        assert_eq!(g.mul(&g.identity(), &ab), ab);
        assert_eq!(g.mul(&ab, &ab), g.element(5, 2, 0));
        assert_eq!(g.mul(&g.element(3, 0, 0), &g.element(5, 0, 0)), g.element(1, 0, 0));
    }

    #[test]
    fn inv_examples() {
        let g = z7z3();
        assert_eq!(g.inv(&g.identity()), g.identity());
        assert_eq!(g.inv(&g.element(1, 1, 0)), g.element(5, 2, 0));
        assert_eq!(g.inv(&g.element(4, 0, 0)), g.element(3, 0, 0));
        // exhaustive: the inverse is the unique element multiplying to 1
        let x = g.element(1, 1, 0);
        let found: Vec<_> = g.elements().filter(|y| g.mul(&x, y).is_identity()).collect();
        assert_eq!(found, vec![g.element(5, 2, 0)]);
    }

    #[test]
    fn pow_examples() {
        let g = z7z3();
        let ab = g.element(1, 1, 0);
        assert_eq!(g.pow(&ab, 1), ab);
        assert_eq!(g.pow(&ab, 3), g.identity());
        assert_eq!(g.pow(&ab, 2), g.element(5, 2, 0));
        assert_eq!(g.pow(&ab, -1), g.inv(&ab));
        assert_eq!(g.pow(&ab, 0), g.identity());
    }

    #[test]
    fn order_examples() {
        let g = z7z3();
        assert_eq!(g.element_order(&g.b()), 3);
        assert_eq!(g.element_order(&g.identity()), 1);
        assert_eq!(g.element_order(&g.element(3, 1, 0)), 3);
        assert_eq!(g.element_order(&g.a()), 7);
    }

    #[test]
    fn rsum_examples() {
        assert_eq!(z7z3().rsum(2, 3), 0);
        let g13 = GroupSpec::new(13, 3, 3, 1).unwrap();
        assert_eq!(g13.rsum(3, 3), 0);
        for k in 0..40 {
            assert_eq!(g13.rsum(1, k), k % 13);
        }
    }

    #[test]
    fn closure_examples() {
        let g = z7z3();
        assert_eq!(g.closure(&[g.a()]), 7);
        assert_eq!(g.closure(&[g.b(), g.element(1, 1, 0)]), 21);
        assert_eq!(g.closure(&[g.identity()]), 1);
    }

    #[test]
    fn generating_pair_examples() {
        let g = z7z3();
        assert!(g.is_generating_pair(0, 1, 1));
        assert!(!g.is_generating_pair(0, 7, 1));
        assert!(!g.is_generating_pair(1, 1, 2));
    }

    #[test]
    fn regular_representation_examples() {
        let z5 = GroupSpec::new(5, 1, 1, 1).unwrap();
        let rep = z5.regular_representation();
        assert_eq!(rep[0], Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap());

        let g = z7z3();
        let rep = g.regular_representation();
        assert_eq!(rep[1].order(), 3);
        for p in &rep {
            assert!(p.is_identity() || (0..p.degree()).all(|x| !p.fixes(x)));
        }
    }

    #[test]
    fn serde_round_trip() {
        let g = z7z3();
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"m":7,"n":3,"r":2,"ell":1,"n0":3}"#);
        let back: GroupSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
    }
}
