//! Exact arithmetic in cyclotomic fields and the number theory around it.

pub mod cyclo;
pub mod embed;
pub mod matrix;
pub mod ntheory;
pub mod poly;
pub mod serial;
mod tables;

pub use cyclo::CyclotomicNumber;
pub use embed::ComplexBall;
pub use matrix::Matrix;
pub use ntheory::{euler_phi, is_squarefree, legendre, phi2};
pub use poly::cyclotomic_polynomial;

use crate::error::{Error, Result};

pub fn cyc_add(x: &CyclotomicNumber, y: &CyclotomicNumber) -> CyclotomicNumber {
    x.add(y)
}

pub fn cyc_mul(x: &CyclotomicNumber, y: &CyclotomicNumber) -> CyclotomicNumber {
    x.mul(y)
}

pub fn cyc_inv(x: &CyclotomicNumber) -> Result<CyclotomicNumber> {
    x.inv()
}

pub fn cyc_galois(x: &CyclotomicNumber, a: i64) -> Result<CyclotomicNumber> {
    x.galois(a)
}

pub fn cyc_embed(x: &CyclotomicNumber, precision: u32) -> ComplexBall {
    x.embed(precision)
}

/// [n]_ζ = ζ^{n−1} + ζ^{n−3} + … + ζ^{−(n−1)}, for ζ a root of unity other than ±1.
pub fn quantum_integer(n: i64, root: &CyclotomicNumber) -> Result<CyclotomicNumber> {
    let (e, ord) = root
        .as_root_of_unity()
        .ok_or_else(|| Error::InvalidParameter("quantum integer base is not a root of unity".into()))?;
    if ord <= 2 {
        return Err(Error::InvalidParameter("quantum integer base is ±1".into()));
    }
    let m = root.conductor();
    // Work with exponents of ζ_L where L = lcm(2, m) contains the root.
    let l = ntheory::lcm(2, m as u64);
    let step = e * (l / ord) as i64;
    let sign = if n < 0 { -1 } else { 1 };
    let mut coeffs = vec![0i64; l as usize];
    for j in 0..n.abs() {
        let k = (n.abs() - 1 - 2 * j) * step;
        coeffs[ntheory::modn(k, l) as usize] += sign;
    }
    Ok(CyclotomicNumber::from_int_coeffs(l as u32, &coeffs, 1).promote(ntheory::lcm(l, m as u64) as u32))
}

/// Σ_{t=1}^{p−1} (t/p)·ζ_p^t; squares to p when p ≡ 1 (mod 4) and to −p otherwise.
pub fn gauss_sum_sqrt(p: u64) -> Result<CyclotomicNumber> {
    let mut coeffs = vec![0i64; p as usize];
    for t in 1..p {
        coeffs[t as usize] = legendre(t as i64, p)? as i64;
    }
    Ok(CyclotomicNumber::from_int_coeffs(p as u32, &coeffs, 1))
}
