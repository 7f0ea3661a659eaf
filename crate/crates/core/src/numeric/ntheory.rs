//! Integer helpers: gcds, totients, Legendre symbols, squares in unit groups.

use crate::error::{Error, Result};

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a as i64
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a as i64, b as i64) as u64 * b
}

/// Least nonnegative residue.
pub fn modn(a: i64, n: u64) -> u64 {
    a.rem_euclid(n as i64) as u64
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

pub fn mod_inv(a: i64, m: u64) -> Result<u64> {
    if m == 1 {
        return Ok(0);
    }
    let (mut r0, mut r1) = (m as i128, modn(a, m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::NotCoprime { a, m });
    }
    Ok(t0.rem_euclid(m as i128) as u64)
}

/// Prime factorization as (prime, exponent) pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

pub fn is_squarefree(m: u64) -> bool {
    m >= 1 && factorize(m).iter().all(|&(_, e)| e == 1)
}

pub fn euler_phi(m: u64) -> u64 {
    factorize(m)
        .iter()
        .fold(m, |acc, &(p, _)| acc / p * (p - 1))
}

/// Order of the subgroup of squares in (Z/m)^×, built multiplicatively.
pub fn phi2(m: u64) -> u64 {
    assert!(m >= 1, "phi2 needs m >= 1");
    factorize(m)
        .iter()
        .map(|&(p, e)| {
            if p == 2 {
                if e >= 3 {
                    1 << (e - 3)
                } else {
                    1
                }
            } else {
                (p - 1) * p.pow(e - 1) / 2
            }
        })
        .product()
}

pub fn legendre(a: i64, p: u64) -> Result<i8> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not an odd prime")));
    }
    let r = mod_pow(modn(a, p), (p - 1) / 2, p);
    Ok(match r {
        0 => 0,
        1 => 1,
        _ => -1,
    })
}

/// Units of Z/n in increasing order.
pub fn units(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&a| gcd(a as i64, n as i64) == 1).collect()
}

/// Multiplicative order of a unit `a` modulo `n`.
pub fn mult_order(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = (x as u128 * a as u128 % n as u128) as u64;
        k += 1;
    }
    k
}

/// Order of exp(2πi·e/n).
pub fn root_order(e: i64, n: u64) -> u64 {
    let e = modn(e, n);
    n / gcd(e as i64, n as i64) as u64
}

/// Generators of (Z/n)^× as a small generating set (not necessarily minimal).
pub fn unit_generators(n: u64) -> Vec<u64> {
    if n <= 2 {
        return vec![1 % n.max(1)];
    }
    let all = units(n);
    let mut gens: Vec<u64> = Vec::new();
    let mut reached = vec![false; n as usize];
    reached[1] = true;
    let mut members = vec![1u64];
    for &a in &all {
        if reached[a as usize] {
            continue;
        }
        gens.push(a);
        let mut frontier = members.clone();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = (x as u128 * g as u128 % n as u128) as u64;
                if !reached[y as usize] {
                    reached[y as usize] = true;
                    members.push(y);
                    frontier.push(y);
                }
            }
        }
        if members.len() == all.len() {
            break;
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(euler_phi(12), 4);
        assert_eq!(phi2(5), 2);
        assert_eq!(phi2(8), 1);
        assert_eq!(phi2(1), 1);
        assert_eq!(legendre(2, 5).unwrap(), -1);
        assert!(legendre(2, 9).is_err());
        assert_eq!(mod_inv(7, 5).unwrap(), 3);
        assert!(is_squarefree(35) && !is_squarefree(45));
    }

    #[test]
    fn phi2_brute_force() {
        for m in 1..=500u64 {
            let mut sq: Vec<u64> = units(m).iter().map(|&a| a * a % m).collect();
            sq.sort();
            sq.dedup();
            assert_eq!(phi2(m), sq.len() as u64, "m = {m}");
        }
    }

    #[test]
    fn generators_generate() {
        for n in [1u64, 2, 8, 12, 35, 70, 770] {
            let gens = unit_generators(n);
            let mut seen = std::collections::BTreeSet::from([1 % n]);
            let mut stack = vec![1 % n];
            while let Some(x) = stack.pop() {
                for &g in &gens {
                    let y = x * g % n;
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            assert_eq!(seen.len() as u64, euler_phi(n).max(1), "n = {n}");
        }
    }
}
