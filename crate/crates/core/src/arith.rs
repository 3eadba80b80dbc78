//! Integer helpers: primality, factorization, multiplicative orders and
//! linear congruences.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn pow_mod(base: u64, mut e: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `a` modulo `n`; `None` when `gcd(a, n) != 1`.
pub fn mult_order(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    if gcd(a % n, n) != 1 {
        return None;
    }
    let mut k = 1;
    let mut x = a % n;
    while x != 1 {
        x = (x as u128 * a as u128 % n as u128) as u64;
        k += 1;
    }
    Some(k)
}

/// Splits `n` as `m * l` where `m` is the largest power of `r` dividing `n`
/// and `gcd(l, r) = 1`.
pub fn rpart_decompose(n: u64, r: u64) -> (u64, u64) {
    assert!(n >= 1 && r >= 2);
    let mut m = 1;
    let mut l = n;
    while l.is_multiple_of(r) {
        l /= r;
        m *= r;
    }
    (m, l)
}

/// Extended Euclid: returns `(g, x)` with `a*x ≡ g (mod n)`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Smallest nonnegative `x` with `a*x ≡ b (mod n)`, if any.
pub fn solve_linear_congruence(a: u64, b: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (a, b) = (a % n, b % n);
    let g = gcd(a, n);
    if b % g != 0 {
        return None;
    }
    let n_red = n / g;
    let (_, inv, _) = ext_gcd((a / g) as i128, n_red as i128);
    let inv = inv.rem_euclid(n_red as i128);
    Some(((b / g) as i128 * inv).rem_euclid(n_red as i128) as u64)
}

/// `p^e`, failing on overflow.
pub fn checked_pow(p: u64, e: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rpart_examples() {
        assert_eq!(rpart_decompose(6, 3), (3, 2));
        assert_eq!(rpart_decompose(12, 3), (3, 4));
        assert_eq!(rpart_decompose(4, 3), (1, 4));
    }

    #[test]
    fn rpart_sweep() {
        for r in [2, 3, 5, 7] {
            for n in 1..=10_000u64 {
                let (m, l) = rpart_decompose(n, r);
                assert_eq!(m * l, n);
                assert_ne!(l % r, 0);
                // m is a power of r
                let mut mm = m;
                while mm % r == 0 {
                    mm /= r;
                }
                assert_eq!(mm, 1);
            }
        }
    }

    #[test]
    fn orders() {
        assert_eq!(mult_order(7, 4), Some(2));
        assert_eq!(mult_order(13, 4), Some(1));
        assert_eq!(mult_order(3, 6), None);
        assert_eq!(mult_order(3, 5), Some(4));
    }

    #[test]
    fn congruences_match_brute_force() {
        for n in 1..40u64 {
            for a in 0..n {
                for b in 0..n {
                    let brute = (0..n).find(|x| (a * x) % n == b);
                    assert_eq!(solve_linear_congruence(a, b, n), brute, "{a}x={b} mod {n}");
                }
            }
        }
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(48), vec![2, 3]);
        assert_eq!(prime_factors(97), vec![97]);
        assert!(is_prime(2) && is_prime(13) && !is_prime(1) && !is_prime(9));
    }
}
