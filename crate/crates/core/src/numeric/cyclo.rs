//! Elements of Q(ζ_M) in canonical power-basis form.
//!
//! An element is stored as integer numerators of 1, ζ, …, ζ^{φ(M)−1} over a
//! single positive common denominator, reduced modulo Φ_M. Values whose
//! numerators fit in `i64` use a machine-word fast path (products accumulate
//! in `i128` with overflow checks); anything larger falls back to `BigInt`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ntheory::{gcd, lcm, modn};
use super::tables::{tables, FieldTables};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
enum Coeffs {
    Small { num: Vec<i64>, den: i64 },
    Big { num: Vec<BigInt>, den: BigInt },
}

#[derive(Clone, Debug)]
pub struct CyclotomicNumber {
    m: u32,
    c: Coeffs,
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn fits(v: i128) -> Option<i64> {
    if v > i64::MAX as i128 || v < -(i64::MAX as i128) {
        None
    } else {
        Some(v as i64)
    }
}

fn bits(v: &[i64]) -> u32 {
    v.iter()
        .map(|x| 64 - x.unsigned_abs().leading_zeros())
        .max()
        .unwrap_or(0)
}

/// Long division by Φ_M, in place; returns false on overflow.
fn reduce_small(acc: &mut Vec<i128>, t: &FieldTables) -> bool {
    let phi = t.phi;
    for k in (phi..acc.len()).rev() {
        let c = acc[k];
        if c == 0 {
            continue;
        }
        acc[k] = 0;
        let base = k - phi;
        for &(j, p) in &t.low_terms {
            let Some(d) = c.checked_mul(p as i128) else {
                return false;
            };
            let Some(v) = acc[base + j].checked_sub(d) else {
                return false;
            };
            acc[base + j] = v;
        }
    }
    acc.resize(phi, 0);
    true
}

fn reduce_i64(acc: &mut Vec<i64>, t: &FieldTables) -> bool {
    let phi = t.phi;
    for k in (phi..acc.len()).rev() {
        let c = acc[k];
        if c == 0 {
            continue;
        }
        acc[k] = 0;
        let base = k - phi;
        for &(j, p) in &t.low_terms {
            let Some(d) = c.checked_mul(p) else {
                return false;
            };
            let Some(v) = acc[base + j].checked_sub(d) else {
                return false;
            };
            acc[base + j] = v;
        }
    }
    acc.resize(phi, 0);
    true
}

fn reduce_big(acc: &mut Vec<BigInt>, t: &FieldTables) {
    let phi = t.phi;
    for k in (phi..acc.len()).rev() {
        if acc[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut acc[k]);
        let base = k - phi;
        for &(j, p) in &t.low_terms {
            acc[base + j] -= &c * p;
        }
    }
    acc.resize(phi, BigInt::zero());
}

impl CyclotomicNumber {
    fn from_small(m: u32, mut num: Vec<i128>, mut den: i128) -> Self {
        if den < 0 {
            if num.iter().any(|&x| x == i128::MIN) || den == i128::MIN {
                return Self::from_big(
                    m,
                    num.into_iter().map(BigInt::from).collect(),
                    BigInt::from(den),
                );
            }
            num.iter_mut().for_each(|x| *x = -*x);
            den = -den;
        }
        if den != 1 {
            let mut g = den as u128;
            for &x in &num {
                if g == 1 {
                    break;
                }
                g = gcd_u128(g, x.unsigned_abs());
            }
            if g > 1 {
                let g = g as i128;
                num.iter_mut().for_each(|x| *x /= g);
                den /= g;
            }
        }
        let small: Option<Vec<i64>> = num.iter().map(|&x| fits(x)).collect();
        match (small, fits(den)) {
            (Some(num), Some(den)) => CyclotomicNumber {
                m,
                c: Coeffs::Small { num, den },
            },
            _ => Self::from_big(
                m,
                num.into_iter().map(BigInt::from).collect(),
                BigInt::from(den),
            ),
        }
    }

    fn from_big(m: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            num.iter_mut().for_each(|x| *x = -std::mem::take(x));
            den = -den;
        }
        if !den.is_one() {
            let mut g = den.clone();
            for x in &num {
                if g.is_one() {
                    break;
                }
                if !x.is_zero() {
                    g = g.gcd(x);
                }
            }
            if !g.is_one() {
                num.iter_mut().for_each(|x| *x /= &g);
                den /= &g;
            }
        }
        let small: Option<Vec<i64>> = num
            .iter()
            .map(|x| x.to_i64().filter(|&v| v != i64::MIN))
            .collect();
        match (small, den.to_i64()) {
            (Some(num), Some(den)) => CyclotomicNumber {
                m,
                c: Coeffs::Small { num, den },
            },
            _ => CyclotomicNumber {
                m,
                c: Coeffs::Big { num, den },
            },
        }
    }

    pub(crate) fn big_parts(&self) -> (Vec<BigInt>, BigInt) {
        match &self.c {
            Coeffs::Small { num, den } => (
                num.iter().map(|&x| BigInt::from(x)).collect(),
                BigInt::from(*den),
            ),
            Coeffs::Big { num, den } => (num.clone(), den.clone()),
        }
    }

    /// Build from coefficients of ζ_M^i (any length; exponents wrap mod M).
    pub fn from_coeffs(m: u32, coeffs: &[BigRational]) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut acc = vec![BigInt::zero(); (m as usize).max(1)];
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc[i % m as usize] += c.numer() * (&den / c.denom());
            }
        }
        let t = tables(m);
        reduce_big(&mut acc, &t);
        Self::from_big(m, acc, den)
    }

    /// Build from integer coefficients of ζ_M^i over a common denominator.
    pub fn from_int_coeffs(m: u32, coeffs: &[i64], den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let t = tables(m);
        let mut acc = vec![0i128; (m as usize).max(t.phi)];
        for (i, &c) in coeffs.iter().enumerate() {
            acc[i % m as usize] += c as i128;
        }
        if reduce_small(&mut acc, &t) {
            Self::from_small(m, acc, den as i128)
        } else {
            let v: Vec<BigRational> = coeffs
                .iter()
                .map(|&c| BigRational::new(c.into(), den.into()))
                .collect();
            Self::from_coeffs(m, &v)
        }
    }

    pub fn zero(m: u32) -> Self {
        Self::from_int(m, 0)
    }

    pub fn one(m: u32) -> Self {
        Self::from_int(m, 1)
    }

    pub fn from_int(m: u32, v: i64) -> Self {
        Self::from_ratio(m, v, 1)
    }

    pub fn from_ratio(m: u32, n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        let phi = tables(m).phi;
        let mut num = vec![0i128; phi];
        num[0] = n as i128;
        Self::from_small(m, num, d as i128)
    }

    pub fn from_rational(m: u32, r: &BigRational) -> Self {
        let phi = tables(m).phi;
        let mut num = vec![BigInt::zero(); phi];
        num[0] = r.numer().clone();
        Self::from_big(m, num, r.denom().clone())
    }

    /// ζ_M^k for any integer k.
    pub fn zeta(m: u32, k: i64) -> Self {
        let mut c = vec![0i64; m as usize];
        c[modn(k, m as u64) as usize] = 1;
        Self::from_int_coeffs(m, &c, 1)
    }

    /// exp(2πi·e/n), placed in Q(ζ_n).
    pub fn root_of_unity(e: i64, n: u64) -> Self {
        Self::zeta(n as u32, e)
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        match &self.c {
            Coeffs::Small { num, .. } => num.iter().all(|&x| x == 0),
            Coeffs::Big { num, .. } => num.iter().all(|x| x.is_zero()),
        }
    }

    pub fn is_small(&self) -> bool {
        matches!(self.c, Coeffs::Small { .. })
    }

    /// Canonical coefficients (length φ(M)).
    pub fn canonical_coeffs(&self) -> Vec<BigRational> {
        let (num, den) = self.big_parts();
        num.into_iter()
            .map(|n| BigRational::new(n, den.clone()))
            .collect()
    }

    /// Canonical coefficients padded with zeros to length M.
    pub fn coefficients(&self) -> Vec<BigRational> {
        let mut v = self.canonical_coeffs();
        v.resize(self.m as usize, BigRational::zero());
        v
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        let (num, den) = self.big_parts();
        if num.iter().skip(1).all(|x| x.is_zero()) {
            Some(BigRational::new(num[0].clone(), den))
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.c {
            Coeffs::Small { num, den } if *den == 1 && num.iter().skip(1).all(|&x| x == 0) => {
                Some(num[0])
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.to_i64() == Some(1)
    }

    /// Express in Q(ζ_{M'}) for a multiple M' of M.
    pub fn promote(&self, m2: u32) -> Self {
        if m2 == self.m {
            return self.clone();
        }
        assert!(m2 % self.m == 0, "cannot promote {} to {}", self.m, m2);
        let r = (m2 / self.m) as usize;
        let t = tables(m2);
        if let Coeffs::Small { num, den } = &self.c {
            let mut acc = vec![0i128; (m2 as usize).max(t.phi)];
            for (i, &x) in num.iter().enumerate() {
                acc[(i * r) % m2 as usize] += x as i128;
            }
            if reduce_small(&mut acc, &t) {
                return Self::from_small(m2, acc, *den as i128);
            }
        }
        let (num, den) = self.big_parts();
        let mut acc = vec![BigInt::zero(); (m2 as usize).max(t.phi)];
        for (i, x) in num.into_iter().enumerate() {
            acc[(i * r) % m2 as usize] += x;
        }
        reduce_big(&mut acc, &t);
        Self::from_big(m2, acc, den)
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let m = lcm(self.m as u64, other.m as u64) as u32;
        (self.promote(m), other.promote(m))
    }

    fn add_same(&self, other: &Self, negate: bool) -> Self {
        let m = self.m;
        if let (Coeffs::Small { num: a, den: da }, Coeffs::Small { num: b, den: db }) =
            (&self.c, &other.c)
        {
            let g = gcd(*da, *db) as i128;
            let (da, db) = (*da as i128, *db as i128);
            let (fa, fb) = (db / g, da / g);
            let den = da * fa;
            let sign = if negate { -1 } else { 1 };
            let num: Vec<i128> = a
                .iter()
                .zip(b)
                .map(|(&x, &y)| x as i128 * fa + sign * (y as i128) * fb)
                .collect();
            return Self::from_small(m, num, den);
        }
        let (a, da) = self.big_parts();
        let (b, db) = other.big_parts();
        let l = da.lcm(&db);
        let (fa, fb) = (&l / &da, &l / &db);
        let num = a
            .into_iter()
            .zip(b)
            .map(|(x, y)| {
                if negate {
                    x * &fa - y * &fb
                } else {
                    x * &fa + y * &fb
                }
            })
            .collect();
        Self::from_big(m, num, l)
    }

    fn mul_same(&self, other: &Self) -> Self {
        let m = self.m;
        let t = tables(m);
        let phi = t.phi;
        if let (Coeffs::Small { num: a, den: da }, Coeffs::Small { num: b, den: db }) =
            (&self.c, &other.c)
        {
            let headroom = bits(a) + bits(b) + (usize::BITS - phi.leading_zeros());
            if headroom < 60 {
                let mut acc = vec![0i64; 2 * phi - 1];
                for (i, &x) in a.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in b.iter().enumerate() {
                        acc[i + j] += x * y;
                    }
                }
                if reduce_i64(&mut acc, &t) {
                    let num = acc.into_iter().map(|x| x as i128).collect();
                    return Self::from_small(m, num, *da as i128 * *db as i128);
                }
            }
            if headroom < 125 {
                let mut acc = vec![0i128; 2 * phi - 1];
                for (i, &x) in a.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    let x = x as i128;
                    for (j, &y) in b.iter().enumerate() {
                        acc[i + j] += x * y as i128;
                    }
                }
                if reduce_small(&mut acc, &t) {
                    return Self::from_small(m, acc, *da as i128 * *db as i128);
                }
            }
        }
        let (a, da) = self.big_parts();
        let (b, db) = other.big_parts();
        let mut acc = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    acc[i + j] += x * y;
                }
            }
        }
        reduce_big(&mut acc, &t);
        Self::from_big(m, acc, da * db)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.m == other.m {
            self.add_same(other, false)
        } else {
            let (a, b) = self.aligned(other);
            a.add_same(&b, false)
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        if self.m == other.m {
            self.add_same(other, true)
        } else {
            let (a, b) = self.aligned(other);
            a.add_same(&b, true)
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.m == other.m {
            self.mul_same(other)
        } else {
            let (a, b) = self.aligned(other);
            a.mul_same(&b)
        }
    }

    pub fn neg(&self) -> Self {
        let c = match &self.c {
            Coeffs::Small { num, den } => Coeffs::Small {
                num: num.iter().map(|x| -x).collect(),
                den: *den,
            },
            Coeffs::Big { num, den } => Coeffs::Big {
                num: num.iter().map(|x| -x).collect(),
                den: den.clone(),
            },
        };
        CyclotomicNumber { m: self.m, c }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.mul(&Self::from_int(self.m, k))
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        let (num, den) = self.big_parts();
        Self::from_big(
            self.m,
            num.into_iter().map(|x| x * r.numer()).collect(),
            den * r.denom(),
        )
    }

    /// Multiply by ζ_M^k.
    pub fn mul_zeta(&self, k: i64) -> Self {
        self.mul(&Self::zeta(self.m, k))
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(self.m);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Image under ζ_M ↦ ζ_M^a.
    pub fn galois(&self, a: i64) -> Result<Self> {
        let m = self.m as u64;
        if gcd(a, m as i64) != 1 {
            return Err(Error::NotCoprime { a, m });
        }
        let a = modn(a, m) as usize;
        if a == 1 % m as usize || m <= 2 {
            return Ok(self.clone());
        }
        let t = tables(self.m);
        if let Coeffs::Small { num, den } = &self.c {
            let mut acc = vec![0i128; m as usize];
            for (i, &x) in num.iter().enumerate() {
                acc[i * a % m as usize] = x as i128;
            }
            if reduce_small(&mut acc, &t) {
                return Ok(Self::from_small(self.m, acc, *den as i128));
            }
        }
        let (num, den) = self.big_parts();
        let mut acc = vec![BigInt::zero(); m as usize];
        for (i, x) in num.into_iter().enumerate() {
            acc[i * a % m as usize] = x;
        }
        reduce_big(&mut acc, &t);
        Ok(Self::from_big(self.m, acc, den))
    }

    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is always a unit")
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_M.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(Self::from_rational(self.m, &r.recip()));
        }
        let (num, den) = self.big_parts();
        let t = tables(self.m);
        let inv_num = poly_inverse(&num, &t);
        Ok(Self::from_coeffs(self.m, &inv_num).scale_rational(&BigRational::from(den)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Double-precision complex value at ζ_M = exp(2πi/M).
    pub fn approx(&self) -> Complex64 {
        let t = tables(self.m);
        match &self.c {
            Coeffs::Small { num, den } => {
                let (mut re, mut im) = (0.0, 0.0);
                for (i, &x) in num.iter().enumerate() {
                    if x != 0 {
                        re += x as f64 * t.cos[i];
                        im += x as f64 * t.sin[i];
                    }
                }
                Complex64::new(re / *den as f64, im / *den as f64)
            }
            Coeffs::Big { .. } => {
                let (mut re, mut im) = (0.0, 0.0);
                for (i, c) in self.canonical_coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        let x = c.to_f64().unwrap_or(f64::NAN);
                        re += x * t.cos[i];
                        im += x * t.sin[i];
                    }
                }
                Complex64::new(re, im)
            }
        }
    }

    /// If this is a root of unity, its order n and exponent e (value ζ_n^e, 0 ≤ e < n).
    pub fn as_root_of_unity(&self) -> Option<(i64, u64)> {
        let z = self.approx();
        if (z.norm() - 1.0).abs() > 1e-6 {
            return None;
        }
        let l = lcm(2, self.m as u64);
        let turns = z.arg() / (2.0 * std::f64::consts::PI);
        let e = modn((turns * l as f64).round() as i64, l);
        if Self::zeta(l as u32, e as i64) == *self {
            let g = gcd(e as i64, l as i64).max(1) as u64;
            let n = l / g;
            Some(((e / g) as i64 % n as i64, n))
        } else {
            None
        }
    }
}

/// Inverse of a(x) modulo Φ_M over Q, via a primitive pseudo-remainder
/// sequence carrying the Bezout cofactor of a.
fn poly_inverse(a: &[BigInt], t: &FieldTables) -> Vec<BigRational> {
    fn trim(p: &mut Vec<BigInt>) {
        while p.len() > 1 && p.last().is_some_and(|x| x.is_zero()) {
            p.pop();
        }
    }
    fn content(p: &[BigInt]) -> BigInt {
        p.iter()
            .fold(BigInt::zero(), |g, x| if x.is_zero() { g } else { g.gcd(x) })
    }
    // Cofactor polynomials carry a common denominator: (num, den).
    let reduce_mod = |p: Vec<BigInt>| -> Vec<BigInt> {
        let mut p = p;
        if p.len() < t.phi {
            p.resize(t.phi, BigInt::zero());
        }
        reduce_big(&mut p, t);
        p
    };
    let mut phi_poly = vec![BigInt::zero(); t.phi + 1];
    for &(j, c) in &t.low_terms {
        phi_poly[j] = BigInt::from(c);
    }
    phi_poly[t.phi] = BigInt::one();

    let mut r0 = phi_poly;
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0: (Vec<BigInt>, BigInt) = (vec![BigInt::zero()], BigInt::one());
    let mut s1: (Vec<BigInt>, BigInt) = (vec![BigInt::one()], BigInt::one());
    loop {
        if r1.len() == 1 {
            // s1·a ≡ r1 (constant) mod Φ.
            let c = &r1[0];
            let den = &s1.1 * c;
            let mut num = s1.0.clone();
            num.resize(t.phi, BigInt::zero());
            return num
                .into_iter()
                .map(|x| BigRational::new(x, den.clone()))
                .collect();
        }
        // Pseudo-division: lc^{δ+1}·r0 = q·r1 + rem.
        let d1 = r1.len() - 1;
        let lc = r1[d1].clone();
        let delta = r0.len() - 1 - d1;
        let mut rem = r0.clone();
        let mut q = vec![BigInt::zero(); delta + 1];
        for k in (0..=delta).rev() {
            let c = rem[k + d1].clone();
            rem.iter_mut().for_each(|x| *x *= &lc);
            q.iter_mut().for_each(|x| *x *= &lc);
            if !c.is_zero() {
                for (j, y) in r1.iter().enumerate() {
                    rem[k + j] -= &c * y;
                }
                q[k] += c;
            }
        }
        let scale = lc.pow(delta as u32 + 1);
        rem.truncate(d1.max(1));
        trim(&mut rem);
        let g = content(&rem);
        let g = if g.is_zero() { BigInt::one() } else { g };
        rem.iter_mut().for_each(|x| *x /= &g);
        // s2 = (scale·s0 − q·s1)/g, with denominators tracked.
        let mut qs1 = vec![BigInt::zero(); q.len() + s1.0.len() - 1];
        for (i, x) in q.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in s1.0.iter().enumerate() {
                qs1[i + j] += x * y;
            }
        }
        let l = s0.1.lcm(&s1.1);
        let f0 = &l / &s0.1 * &scale;
        let f1 = &l / &s1.1;
        let len = qs1.len().max(s0.0.len());
        let mut s2 = vec![BigInt::zero(); len];
        for (i, x) in s0.0.iter().enumerate() {
            s2[i] += x * &f0;
        }
        for (i, x) in qs1.iter().enumerate() {
            s2[i] -= x * &f1;
        }
        let s2 = reduce_mod(s2);
        let mut den = l * &g;
        let c = content(&s2).gcd(&den);
        let s2 = if c.is_one() || c.is_zero() {
            s2
        } else {
            den /= &c;
            s2.into_iter().map(|x| x / &c).collect()
        };
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, (s2, den));
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.m != other.m {
            let (a, b) = self.aligned(other);
            return a == b;
        }
        match (&self.c, &other.c) {
            (Coeffs::Small { num: a, den: da }, Coeffs::Small { num: b, den: db }) => {
                da == db && a == b
            }
            (Coeffs::Big { num: a, den: da }, Coeffs::Big { num: b, den: db }) => {
                da == db && a == b
            }
            _ => false,
        }
    }
}

impl Eq for CyclotomicNumber {}

macro_rules! binop {
    ($tr:ident, $f:ident) => {
        impl $tr<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $f(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                CyclotomicNumber::$f(self, rhs)
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber::neg(self)
    }
}

impl fmt::Display for CyclotomicNumber {
    /// GAP-style rendering, e.g. `1 + E(5)^2 - 1/2*E(5)^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.canonical_coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => format!("E({})", self.m),
                _ => format!("E({})^{}", self.m, i),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::zeta(m, k)
    }

    #[test]
    fn sum_of_primitive_fifth_roots() {
        let s = (1..5).fold(CyclotomicNumber::zero(5), |acc, k| acc.add(&z(5, k)));
        assert_eq!(s, CyclotomicNumber::from_int(5, -1));
        assert_eq!(&z(5, 1) + &CyclotomicNumber::zero(5), z(5, 1));
    }

    #[test]
    fn rationals_and_i() {
        let half = CyclotomicNumber::from_ratio(1, 1, 2);
        let third = CyclotomicNumber::from_ratio(1, 1, 3);
        assert_eq!(&half + &third, CyclotomicNumber::from_ratio(1, 5, 6));
        assert_eq!(&z(4, 1) * &z(4, 1), CyclotomicNumber::from_int(4, -1));
    }

    #[test]
    fn inverses() {
        for m in [5u32, 12, 7, 20] {
            for k in 0..m as i64 {
                assert_eq!(z(m, k).inv().unwrap(), z(m, m as i64 - k));
            }
        }
        let x = CyclotomicNumber::one(5).add(&z(5, 1));
        assert!(x.inv().unwrap().mul(&x).is_one());
        assert_eq!(CyclotomicNumber::zero(5).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_conductors_promote() {
        let a = z(3, 1);
        let b = z(4, 1);
        let p = a.mul(&b);
        assert_eq!(p.conductor(), 12);
        assert_eq!(p, z(12, 7));
        assert_eq!(z(6, 2), z(3, 1));
    }

    #[test]
    fn galois_basics() {
        assert_eq!(z(5, 1).galois(2).unwrap(), z(5, 2));
        assert!(z(10, 1).galois(5).is_err());
        assert_eq!(z(7, 3).conj(), z(7, 4));
    }

    #[test]
    fn big_fallback_matches_small() {
        let mut x = CyclotomicNumber::one(7).add(&z(7, 1).scale_int(3));
        for _ in 0..6 {
            x = x.mul(&x);
        }
        assert!(!x.is_small());
        let y = x.inv().unwrap();
        assert!(x.mul(&y).is_one());
    }

    #[test]
    fn root_of_unity_detection() {
        assert_eq!(z(10, 4).as_root_of_unity(), Some((2, 5)));
        assert_eq!(z(5, 1).neg().as_root_of_unity(), Some((7, 10)));
        assert_eq!(z(5, 1).add(&z(5, 2)).as_root_of_unity(), None);
        assert_eq!(CyclotomicNumber::one(7).as_root_of_unity(), Some((0, 1)));
    }

    #[test]
    fn display() {
        let half = BigRational::new(1.into(), 2.into());
        let x = CyclotomicNumber::one(5).add(&z(5, 2)).sub(&z(5, 3).scale_rational(&half));
        assert_eq!(x.to_string(), "1 + E(5)^2 - 1/2*E(5)^3");
        assert_eq!(CyclotomicNumber::zero(3).to_string(), "0");
    }
}
