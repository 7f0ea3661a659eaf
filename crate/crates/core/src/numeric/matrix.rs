//! Dense matrices over cyclotomic fields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::cyclo::CyclotomicNumber;
use super::ntheory::lcm;

pub type Matrix = Vec<Vec<CyclotomicNumber>>;

pub fn identity(n: usize, m: u32) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| CyclotomicNumber::from_int(m, (i == j) as i64))
                .collect()
        })
        .collect()
}

pub fn conductor_of(a: &Matrix) -> u32 {
    a.iter()
        .flatten()
        .fold(1u64, |acc, x| lcm(acc, x.conductor() as u64)) as u32
}

pub fn promote(a: &Matrix, m: u32) -> Matrix {
    a.iter()
        .map(|row| row.iter().map(|x| x.promote(m)).collect())
        .collect()
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let p = b.first().map_or(0, |r| r.len());
    let m = lcm(conductor_of(a) as u64, conductor_of(b) as u64) as u32;
    let (a, b) = (promote(a, m), promote(b, m));
    let mut out = vec![vec![CyclotomicNumber::zero(m); p]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..p {
                if !b[l][j].is_zero() {
                    out[i][j] = out[i][j].add(&a[i][l].mul(&b[l][j]));
                }
            }
        }
    }
    out
}

pub fn scale(a: &Matrix, c: &CyclotomicNumber) -> Matrix {
    a.iter()
        .map(|row| row.iter().map(|x| x.mul(c)).collect())
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let p = a.first().map_or(0, |r| r.len());
    (0..p)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn is_symmetric(a: &Matrix) -> bool {
    (0..a.len()).all(|i| (0..i).all(|j| a[i][j] == a[j][i]))
}

pub fn is_identity(a: &Matrix) -> bool {
    a.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
    })
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for ra in a {
        for rb in b {
            out.push(
                ra.iter()
                    .flat_map(|x| rb.iter().map(move |y| x.mul(y)))
                    .collect(),
            );
        }
    }
    out
}

/// Scale a row so its entries have integer coefficients with trivial content.
fn make_primitive(row: &mut [CyclotomicNumber]) {
    let parts: Vec<(Vec<BigInt>, BigInt)> = row.iter().map(|x| x.big_parts()).collect();
    let den = parts.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
    let mut g = BigInt::zero();
    for (num, d) in &parts {
        let f = &den / d;
        for x in num {
            if !x.is_zero() {
                g = g.gcd(&(x * &f));
            }
        }
    }
    if g.is_zero() {
        return;
    }
    let factor = num_rational::BigRational::new(den, g);
    if !factor.is_one() {
        for x in row.iter_mut() {
            *x = x.scale_rational(&factor);
        }
    }
}

/// Exact rank by fraction-free elimination with content removal.
pub fn rank(a: &Matrix) -> usize {
    let m = conductor_of(a);
    let mut rows = promote(a, m);
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..ncols {
        let pivot = (r..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| {
                rows[i][col]
                    .canonical_coeffs()
                    .iter()
                    .filter(|c| !c.is_zero())
                    .count()
            });
        let Some(p) = pivot else { continue };
        rows.swap(r, p);
        make_primitive(&mut rows[r]);
        let pr = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[col].is_zero() {
                continue;
            }
            let a = row[col].clone();
            for j in col..ncols {
                row[j] = row[j].mul(&pr[col]).sub(&a.mul(&pr[j]));
            }
            make_primitive(row);
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::zeta(m, k)
    }

    #[test]
    fn rank_of_vandermonde_and_degenerate() {
        let v: Matrix = (0..3)
            .map(|i| (0..3).map(|j| z(5, i * j)).collect())
            .collect();
        assert_eq!(rank(&v), 3);
        let mut d = v.clone();
        d[2] = d[0].iter().zip(&d[1]).map(|(a, b)| a.add(&b.mul(&z(5, 2)))).collect();
        assert_eq!(rank(&d), 2);
        assert_eq!(rank(&vec![vec![CyclotomicNumber::zero(3); 2]; 2]), 0);
    }

    #[test]
    fn kron_and_mul() {
        let a = vec![vec![z(1, 0), z(4, 1)], vec![z(4, 1), z(1, 0)]];
        let i2 = identity(2, 1);
        assert_eq!(mul(&a, &i2), a);
        assert_eq!(kron(&i2, &a).len(), 4);
        assert!(is_identity(&kron(&i2, &i2)));
    }
}
