//! Small integer helpers. Every modulus used in this crate fits in 32 bits, so
//! products are formed in `u128` only to keep `mul_mod` total.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut base = base % m;
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// `x + x^2 + ... + x^k (mod m)`, by doubling. No division is involved, so the
/// result is exact even when `x - 1` is not invertible modulo `m`.
pub fn geometric_sum(x: u64, k: u64, m: u64) -> u64 {
    fn go(x: u64, k: u64, m: u64) -> (u64, u64) {
        // returns (sum_{i=1..k} x^i, x^k)
        if k == 0 {
            return (0, 1 % m);
        }
        if k % 2 == 1 {
            let (s, p) = go(x, k - 1, m);
            let p = mul_mod(p, x, m);
            ((s + p) % m, p)
        } else {
            let (s, p) = go(x, k / 2, m);
            ((s + mul_mod(p, s, m)) % m, mul_mod(p, p, m))
        }
    }
    go(x % m, k, m).0
}

/// Multiplicative order of `r` modulo `m` (1 when `m = 1`).
pub fn multiplicative_order(r: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd(r % m, m) != 1 {
        return None;
    }
    let mut acc = r % m;
    let mut k = 1;
    while acc != 1 {
        acc = mul_mod(acc, r, m);
        k += 1;
    }
    Some(k)
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// Residues in `[0, m)` coprime to `m`. For `m = 1` this is `[0]`.
pub fn units(m: u64) -> impl Iterator<Item = u64> {
    (0..m).filter(move |&x| gcd(x, m) == 1)
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
