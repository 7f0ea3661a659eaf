//! Cyclotomic polynomials with integer coefficients (lowest degree first).

use std::collections::HashMap;

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m % d == 0).collect()
}

/// Exact division of integer polynomials; the divisor must be monic.
fn div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let qlen = num.len() - dd;
    let mut q = vec![0i128; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact division");
    q
}

fn phi_rec(m: u64, memo: &mut HashMap<u64, Vec<i128>>) -> Vec<i128> {
    if let Some(p) = memo.get(&m) {
        return p.clone();
    }
    let mut num = vec![0i128; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in divisors(m) {
        if d < m {
            let pd = phi_rec(d, memo);
            num = div_exact(&num, &pd);
        }
    }
    memo.insert(m, num.clone());
    num
}

/// The M-th cyclotomic polynomial, by recursive exact division of x^M − 1.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    assert!(m >= 1, "conductor must be positive");
    let mut memo = HashMap::new();
    phi_rec(m, &mut memo)
        .into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ntheory::euler_phi;

    #[test]
    fn known_polys() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn degree_is_totient() {
        for m in 1..=200u64 {
            assert_eq!(cyclotomic_polynomial(m).len() as u64 - 1, euler_phi(m));
        }
    }
}
