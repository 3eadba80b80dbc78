//! Dense univariate polynomials over a [`GfField`], coefficients low to high.
//!
//! The zero polynomial is the empty vector; every other value is trimmed so
//! its last coefficient is nonzero.

use crate::ffield::{Fe, GfField};
use crate::linalg::Matrix;

pub type Poly = Vec<Fe>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[Fe]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn monomial(c: Fe, d: usize) -> Poly {
    if c == 0 {
        return Vec::new();
    }
    let mut v = vec![0; d + 1];
    v[d] = c;
    v
}

pub fn add(f: &GfField, a: &[Fe], b: &[Fe]) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

pub fn sub(f: &GfField, a: &[Fe], b: &[Fe]) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

pub fn mul(f: &GfField, a: &[Fe], b: &[Fe]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x != 0 {
            f.axpy(&mut out[i..i + b.len()], x, b);
        }
    }
    trim(out)
}

pub fn scale(f: &GfField, a: &[Fe], c: Fe) -> Poly {
    trim(a.iter().map(|&x| f.mul(x, c)).collect())
}

/// `(quotient, remainder)`; panics on division by the zero polynomial.
pub fn divrem(f: &GfField, a: &[Fe], b: &[Fe]) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let mut r = trim(a.to_vec());
    let Some(da) = degree(&r) else {
        return (Vec::new(), Vec::new());
    };
    if da < db {
        return (Vec::new(), r);
    }
    let lead_inv = f.inv(b[db]).unwrap();
    let mut q = vec![0; da - db + 1];
    for i in (0..=da - db).rev() {
        let c = f.mul(r[i + db], lead_inv);
        if c != 0 {
            q[i] = c;
            f.axpy(&mut r[i..=i + db], f.neg(c), &b[..=db]);
        }
    }
    (trim(q), trim(r))
}

pub fn rem(f: &GfField, a: &[Fe], b: &[Fe]) -> Poly {
    divrem(f, a, b).1
}

pub fn monic(f: &GfField, a: &[Fe]) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => scale(f, a, f.inv(a[d]).unwrap()),
    }
}

/// Monic greatest common divisor (zero when both inputs are zero).
pub fn gcd(f: &GfField, a: &[Fe], b: &[Fe]) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn lcm(f: &GfField, a: &[Fe], b: &[Fe]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let g = gcd(f, a, b);
    monic(f, &mul(f, &divrem(f, a, &g).0, b))
}

pub fn eval(f: &GfField, a: &[Fe], x: Fe) -> Fe {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

pub fn derivative(f: &GfField, a: &[Fe]) -> Poly {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| f.mul(f.from_int(i as i64), c)).collect())
}

/// `base^e mod modulus`.
pub fn powmod(f: &GfField, base: &[Fe], mut e: u64, modulus: &[Fe]) -> Poly {
    let mut acc = rem(f, &[1], modulus);
    let mut b = rem(f, base, modulus);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), modulus);
        }
        b = rem(f, &mul(f, &b, &b), modulus);
        e >>= 1;
    }
    acc
}

/// Roots in the coefficient field with multiplicities, by exhaustive search
/// and repeated division. Roots are listed by increasing encoding.
pub fn roots(f: &GfField, a: &[Fe]) -> Vec<(Fe, usize)> {
    let mut out = Vec::new();
    let mut rest = trim(a.to_vec());
    if rest.is_empty() {
        return out;
    }
    for x in f.elements() {
        let lin = vec![f.neg(x), 1];
        let mut mult = 0;
        loop {
            let (q, r) = divrem(f, &rest, &lin);
            if !r.is_empty() {
                break;
            }
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            out.push((x, mult));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// `(d, product of all irreducible factors of degree d)`.
pub fn distinct_degree(f: &GfField, a: &[Fe]) -> Vec<(usize, Poly)> {
    let q = f.size() as u64;
    let mut out = Vec::new();
    let mut rest = monic(f, a);
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    while degree(&rest).unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > degree(&rest).unwrap() {
            out.push((degree(&rest).unwrap(), rest.clone()));
            break;
        }
        h = powmod(f, &h, q, &rest);
        let g = gcd(f, &rest, &sub(f, &h, &x));
        if degree(&g).unwrap_or(0) > 0 {
            rest = divrem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
            out.push((d, g));
        }
    }
    out
}

/// Squarefree decomposition-free helper: the distinct monic irreducible
/// factors of `a` (each listed once), by splitting every distinct-degree
/// block with a deterministic search over small-degree trial polynomials.
pub fn irreducible_factors(f: &GfField, a: &[Fe]) -> Vec<Poly> {
    let a = monic(f, a);
    if degree(&a).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let rad = radical(f, &a);
    let mut out = Vec::new();
    for (d, block) in distinct_degree(f, &rad) {
        equal_degree_split(f, &block, d, &mut out);
    }
    out.sort();
    out
}

/// Product of the distinct irreducible factors of `a`.
fn radical(f: &GfField, a: &[Fe]) -> Poly {
    let da = derivative(f, a);
    if da.is_empty() {
        // a = b(x^p): take the p-th root of the coefficients
        let p = f.characteristic() as usize;
        let deg_frob = f.size() as u64 / f.characteristic() as u64;
        let root: Poly = a
            .iter()
            .step_by(p)
            .map(|&c| f.pow(c, deg_frob))
            .collect();
        return radical(f, &trim(root));
    }
    let g = gcd(f, a, &da);
    if degree(&g).unwrap_or(0) == 0 {
        return monic(f, a);
    }
    let part = divrem(f, a, &g).0;
    // part holds every factor of a; g may hold factors with multiplicity
    // divisible by p that part misses
    let extra = radical(f, &g);
    let combined = lcm(f, &part, &extra);
    monic(f, &combined)
}

fn equal_degree_split(f: &GfField, a: &[Fe], d: usize, out: &mut Vec<Poly>) {
    let n = degree(a).unwrap_or(0);
    if n == 0 {
        return;
    }
    if n == d {
        out.push(monic(f, a));
        return;
    }
    let q = f.size() as u64;
    // Trial polynomials enumerated deterministically by integer encoding.
    let mut counter: u64 = 1;
    loop {
        let mut t = Vec::new();
        let mut c = counter;
        while c > 0 {
            t.push((c % q) as Fe);
            c /= q;
        }
        counter += 1;
        let t = rem(f, &trim(t), a);
        if degree(&t).unwrap_or(0) == 0 {
            continue;
        }
        let splitter = if q % 2 == 1 {
            let e = (q.pow(d as u32) - 1) / 2;
            sub(f, &powmod(f, &t, e, a), &[1])
        } else {
            // trace map t + t^2 + ... + t^(2^(k d - 1)) with q = 2^k
            let bits = f.degree() as usize * d;
            let mut acc = t.clone();
            let mut cur = t.clone();
            for _ in 1..bits {
                cur = powmod(f, &cur, 2, a);
                acc = add(f, &acc, &cur);
            }
            acc
        };
        let g = gcd(f, a, &splitter);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let other = divrem(f, a, &g).0;
            equal_degree_split(f, &g, d, out);
            equal_degree_split(f, &other, d, out);
            return;
        }
    }
}

/// Characteristic polynomial `det(xI - A)` via reduction to Hessenberg form.
pub fn char_poly(a: &Matrix) -> Poly {
    assert!(a.is_square());
    let f = a.field().clone();
    let n = a.rows();
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h.get(i, m - 1) != 0) else {
            continue;
        };
        if i != m {
            for k in 0..n {
                let (x, y) = (h.get(i, k), h.get(m, k));
                h.set(i, k, y);
                h.set(m, k, x);
            }
            for k in 0..n {
                let (x, y) = (h.get(k, i), h.get(k, m));
                h.set(k, i, y);
                h.set(k, m, x);
            }
        }
        let t_inv = f.inv(h.get(m, m - 1)).unwrap();
        for i in m + 1..n {
            let u = f.mul(h.get(i, m - 1), t_inv);
            if u == 0 {
                continue;
            }
            // row_i -= u row_m ; col_m += u col_i
            for k in 0..n {
                let v = f.sub(h.get(i, k), f.mul(u, h.get(m, k)));
                h.set(i, k, v);
            }
            for k in 0..n {
                let v = f.add(h.get(k, m), f.mul(u, h.get(k, i)));
                h.set(k, m, v);
            }
        }
    }
    // p_k = (x - h_kk) p_{k-1} - Σ_{i<k} h_ik (Π_{j=i+1..k} h_{j,j-1}) p_{i-1}
    let mut ps: Vec<Poly> = vec![vec![1]];
    for k in 0..n {
        let mut pk = mul(&f, &[f.neg(h.get(k, k)), 1], &ps[k]);
        let mut prod = 1;
        for i in (0..k).rev() {
            prod = f.mul(prod, h.get(i + 1, i));
            if prod == 0 {
                break;
            }
            let c = f.mul(h.get(i, k), prod);
            if c != 0 {
                pk = sub(&f, &pk, &scale(&f, &ps[i], c));
            }
        }
        ps.push(pk);
    }
    ps.pop().unwrap()
}

/// Formats with `x` as the variable, highest degree first.
pub fn format(f: &GfField, a: &[Fe]) -> String {
    if a.is_empty() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (i, &c) in a.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let cs = f.format(c);
        let cs = if f.degree() > 1 && cs.contains('+') { format!("({cs})") } else { cs };
        let coeff = if c == 1 && i > 0 { String::new() } else { cs };
        terms.push(match i {
            0 => coeff,
            1 => format!("{coeff}x"),
            _ => format!("{coeff}x^{i}"),
        });
    }
    terms.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{construct_field, Field};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_poly(f: &Field, deg: usize, rng: &mut ChaCha8Rng) -> Poly {
        trim((0..=deg).map(|_| rng.gen_range(0..f.size())).collect())
    }

    #[test]
    fn division_identity() {
        let f = construct_field(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = random_poly(&f, 8, &mut rng);
            let b = random_poly(&f, 3, &mut rng);
            if b.is_empty() {
                continue;
            }
            let (q, r) = divrem(&f, &a, &b);
            assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
            assert!(degree(&r).is_none_or(|d| d < degree(&b).unwrap()));
        }
    }

    #[test]
    fn char_poly_matches_determinant() {
        // oracle: det(λI - A) evaluated pointwise over a field with more
        // elements than the dimension
        for (p, m) in [(7, 1), (5, 2), (2, 3), (13, 1)] {
            let f = construct_field(p, m).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p * 10 + m as u64);
            for n in 1..=6usize {
                for _ in 0..10 {
                    let rows: Vec<Vec<Fe>> =
                        (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..f.size())).collect()).collect();
                    // sparsify so Hessenberg pivot search is exercised
                    let rows: Vec<Vec<Fe>> = rows
                        .into_iter()
                        .map(|r| r.into_iter().map(|x| if rng.gen_bool(0.4) { 0 } else { x }).collect())
                        .collect();
                    let a = Matrix::from_rows(&f, &rows);
                    let cp = char_poly(&a);
                    assert_eq!(degree(&cp), Some(n));
                    for x in f.elements() {
                        let neg = a.scaled(f.neg(1)).shift(f.neg(x));
                        assert_eq!(eval(&f, &cp, x), neg.det(), "p={p} m={m} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn cayley_hamilton() {
        let f = construct_field(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let rows: Vec<Vec<Fe>> = (0..7).map(|_| (0..7).map(|_| rng.gen_range(0..4)).collect()).collect();
            let a = Matrix::from_rows(&f, &rows);
            assert!(a.eval_poly(&char_poly(&a)).is_zero());
        }
    }

    #[test]
    fn factorization_multiplies_back() {
        for (p, m) in [(2, 1), (3, 1), (7, 1), (2, 2), (5, 2)] {
            let f = construct_field(p, m).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p + 100 * m as u64);
            for _ in 0..40 {
                let a = monic(&f, &random_poly(&f, 9, &mut rng));
                if degree(&a).unwrap_or(0) == 0 {
                    continue;
                }
                let factors = irreducible_factors(&f, &a);
                // each factor divides a and is irreducible: no root-free
                // proper factor check, compare against the radical instead
                let prod = factors.iter().fold(vec![1], |acc, g| mul(&f, &acc, g));
                assert_eq!(prod, radical(&f, &a));
                for g in &factors {
                    assert!(rem(&f, &a, g).is_empty());
                    // irreducible: x^(q^d) ≡ x and no smaller-degree factor
                    let d = degree(g).unwrap();
                    let q = f.size() as u64;
                    let mut h = vec![0, 1];
                    for k in 1..=d {
                        h = powmod(&f, &h, q, g);
                        let gg = gcd(&f, g, &sub(&f, &h, &[0, 1]));
                        if k < d {
                            assert_eq!(degree(&gg), Some(0), "{:?}", g);
                        } else {
                            assert_eq!(gg, *g);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn roots_of_product() {
        let f = construct_field(7, 1).unwrap();
        let a = mul(&f, &mul(&f, &[6, 1], &[6, 1]), &[2, 1]); // (x-1)^2 (x+2)
        assert_eq!(roots(&f, &a), vec![(1, 2), (5, 1)]);
    }
}
