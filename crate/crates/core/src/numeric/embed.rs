//! Rigorous complex embeddings at arbitrary precision.
//!
//! Values are fixed-point integers scaled by 2^bits, with an error radius in
//! the same units. Trigonometric values come from Taylor series on an angle
//! reduced to |ψ| ≤ π/4, with π from Machin's formula.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::cyclo::CyclotomicNumber;
use super::ntheory::modn;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: BigInt,
    pub im: BigInt,
    /// Bound on |true − stored| for each of re and im, in units of 2^-bits.
    pub rad: BigInt,
    pub bits: u32,
}

fn to_f64_scaled(v: &BigInt, bits: u32) -> f64 {
    let shift = v.bits().saturating_sub(60);
    let head = (v >> shift).to_f64().unwrap_or(0.0);
    head * 2f64.powi(shift as i32 - bits as i32)
}

impl ComplexBall {
    pub fn re_f64(&self) -> f64 {
        to_f64_scaled(&self.re, self.bits)
    }

    pub fn im_f64(&self) -> f64 {
        to_f64_scaled(&self.im, self.bits)
    }

    pub fn radius_f64(&self) -> f64 {
        to_f64_scaled(&self.rad, self.bits)
    }

    /// Sign of the real part when the ball excludes zero on that axis.
    pub fn re_sign(&self) -> Option<i8> {
        if self.re.abs() <= self.rad {
            None
        } else if self.re.is_positive() {
            Some(1)
        } else {
            Some(-1)
        }
    }
}

/// atan(1/n)·2^w, truncated, with an error bound in ulps.
fn atan_inv(n: u64, w: u32) -> (BigInt, u64) {
    let one = BigInt::from(1) << w;
    let n2 = BigInt::from(n * n);
    let mut power = one / n;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    let mut err = 1u64;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &n2;
        k += 1;
        err += 2;
    }
    (sum, err + 1)
}

fn pi_fixed(w: u32) -> (BigInt, u64) {
    let (a, ea) = atan_inv(5, w);
    let (b, eb) = atan_inv(239, w);
    (a * 16 - b * 4, 16 * ea + 4 * eb)
}

/// cos ψ, sin ψ for |ψ| ≤ π/4 given as a fixed-point value with error `epsi`.
fn cos_sin_small(psi: &BigInt, epsi: u64, w: u32) -> (BigInt, BigInt, u64) {
    let one = BigInt::from(1) << w;
    let psi2 = (psi * psi) >> w;
    let mut cos = one.clone();
    let mut sin = psi.clone();
    let mut cterm = one;
    let mut sterm = psi.clone();
    let mut n = 0u64;
    let mut steps = 0u64;
    loop {
        cterm = -(&cterm * &psi2 >> w) / ((n + 1) * (n + 2));
        sterm = -(&sterm * &psi2 >> w) / ((n + 2) * (n + 3));
        n += 2;
        steps += 1;
        if cterm.is_zero() && sterm.is_zero() {
            break;
        }
        cos += &cterm;
        sin += &sterm;
    }
    // Derivatives are bounded by 1, so the angle error carries through once;
    // each series step adds at most a few ulps of truncation.
    (cos, sin, epsi + 4 * steps + 4)
}

impl CyclotomicNumber {
    /// Complex value with a rigorous error radius, at `precision` bits (≥ 53).
    pub fn embed(&self, precision: u32) -> ComplexBall {
        let prec = precision.max(53);
        let w = prec + 32;
        let m = self.conductor() as u64;
        let (pi, epi) = pi_fixed(w);
        let coeffs = self.canonical_coeffs();
        let den = coeffs
            .iter()
            .fold(BigInt::from(1), |acc, c| num_integer::lcm(acc, c.denom().clone()));
        let mut re = BigInt::zero();
        let mut im = BigInt::zero();
        let mut err = BigInt::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let num = c.numer() * (&den / c.denom());
            // 2πk/M = qπ/2 + ψ with ψ = π(4k − qM)/(2M).
            let q = ((8 * k as u64 + m) / (2 * m)) as i64;
            let nn = 4 * k as i64 - q * m as i64;
            let psi = &pi * nn / (2 * m as i64);
            let epsi = epi * nn.unsigned_abs() / (2 * m) + 1;
            let (c_psi, s_psi, e) = cos_sin_small(&psi, epsi, w);
            let (cr, sr) = match modn(q, 4) {
                0 => (c_psi, s_psi),
                1 => (-s_psi, c_psi),
                2 => (-c_psi, -s_psi),
                _ => (s_psi, -c_psi),
            };
            re += &num * cr;
            im += &num * sr;
            err += num.abs() * e;
        }
        let rad = err / &den + 2;
        ComplexBall {
            re: re / &den,
            im: im / &den,
            rad,
            bits: w,
        }
    }

    /// Sign of a conjugation-fixed nonzero element, by interval refinement.
    /// `None` if the element is not real or is zero.
    pub fn real_sign(&self) -> Option<i8> {
        if self.is_zero() || !self.is_real() {
            return None;
        }
        let mut prec = 64;
        loop {
            if let Some(s) = self.embed(prec).re_sign() {
                return Some(s);
            }
            prec *= 2;
        }
    }

    pub fn is_positive_real(&self) -> bool {
        self.real_sign() == Some(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn embeddings_match_f64_and_are_rigorous() {
        for m in [1u32, 2, 3, 5, 8, 12, 35] {
            for k in 0..m as i64 {
                let z = CyclotomicNumber::zeta(m, k);
                let th = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
                let b = z.embed(53);
                assert!((b.re_f64() - th.cos()).abs() < 1e-14);
                assert!((b.im_f64() - th.sin()).abs() < 1e-14);
                assert!(b.radius_f64() < 1e-15);
            }
        }
    }

    #[test]
    fn high_precision_sqrt5() {
        let g = crate::numeric::gauss_sum_sqrt(5).unwrap();
        let b = g.embed(200);
        // √5 to 200 bits: compare against an integer square root.
        let scale = BigInt::from(5) << (2 * b.bits);
        let want = scale.sqrt();
        assert!((&b.re - want).abs() <= &b.rad + 1);
    }

    #[test]
    fn signs_of_tiny_reals() {
        // (√5 − 2.236) is positive but small.
        let g = crate::numeric::gauss_sum_sqrt(5).unwrap();
        let c = CyclotomicNumber::from_rational(5, &BigRational::new(2236.into(), 1000.into()));
        assert_eq!(g.sub(&c).real_sign(), Some(1));
        assert_eq!(c.sub(&g).real_sign(), Some(-1));
        assert_eq!(CyclotomicNumber::zeta(5, 1).real_sign(), None);
    }
}
