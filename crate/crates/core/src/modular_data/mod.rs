//! Modular data (S, T) over cyclotomic fields, fusion rings and the standard
//! constructions built on them.

mod build;
mod equiv;
mod fusion;
mod subcat;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::ntheory::{gcd, lcm, modn, root_order};
use crate::numeric::{matrix, CyclotomicNumber, Matrix};

pub use build::{
    build_pointed, build_sl2, build_sl2_adjoint, build_svec, deligne_product, fibonacci,
    sl2_adjoint_any, trivial, QuadraticForm,
};
pub use equiv::data_equivalent;
pub use fusion::{
    fp_dims, validate_modular, verlinde_fusion, FpDims, FusionRing, ValidationReport,
};
pub use subcat::{
    all_fusion_subcategories, centralizer, centralizer_within, closure, is_modular_subcategory, is_prime,
    prime_factorization, prime_factorization_among, prime_factorization_ordered, tensor_generated,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularData {
    pub rank: usize,
    pub labels: Vec<String>,
    pub conductor: u32,
    #[serde(rename = "S")]
    pub s: Matrix,
    /// θ_X = ζ_conductor^{e_X}.
    pub theta_exponents: Vec<i64>,
    pub dual_perm: Vec<usize>,
}

impl ModularData {
    /// Assemble data, promoting all entries to a common conductor that also
    /// carries the twists. Only shapes are checked here; see `validate_modular`.
    pub fn new(
        labels: Vec<String>,
        conductor: u32,
        s: Matrix,
        theta_exponents: Vec<i64>,
        dual_perm: Vec<usize>,
    ) -> Result<Self> {
        let r = labels.len();
        if r == 0 {
            return Err(Error::InvalidParameter("empty label set".into()));
        }
        if s.len() != r || s.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidParameter("S is not rank×rank".into()));
        }
        if theta_exponents.len() != r || dual_perm.len() != r {
            return Err(Error::InvalidParameter("twist or duality length mismatch".into()));
        }
        if dual_perm.iter().any(|&d| d >= r) {
            return Err(Error::InvalidParameter("dual_perm out of range".into()));
        }
        let m = lcm(conductor as u64, matrix::conductor_of(&s) as u64) as u32;
        let theta_exponents = theta_exponents
            .iter()
            .map(|&e| modn(e * (m / conductor) as i64, m as u64) as i64)
            .collect();
        Ok(ModularData {
            rank: r,
            labels,
            conductor: m,
            s: matrix::promote(&s, m),
            theta_exponents,
            dual_perm,
        })
    }

    /// Re-express at a multiple of the current conductor.
    pub fn promote(&self, m: u32) -> Self {
        let f = (m / self.conductor) as i64;
        ModularData {
            rank: self.rank,
            labels: self.labels.clone(),
            conductor: m,
            s: matrix::promote(&self.s, m),
            theta_exponents: self.theta_exponents.iter().map(|e| e * f).collect(),
            dual_perm: self.dual_perm.clone(),
        }
    }

    /// Canonicalize entries after deserialization (conductor, exponent ranges).
    pub fn normalized(self) -> Result<Self> {
        ModularData::new(
            self.labels,
            self.conductor,
            self.s,
            self.theta_exponents,
            self.dual_perm,
        )
    }

    pub fn dim(&self, x: usize) -> &CyclotomicNumber {
        &self.s[0][x]
    }

    pub fn dims(&self) -> Vec<CyclotomicNumber> {
        self.s[0].clone()
    }

    pub fn theta(&self, x: usize) -> CyclotomicNumber {
        CyclotomicNumber::zeta(self.conductor, self.theta_exponents[x])
    }

    /// θ_X as a reduced fraction e/n of a full turn.
    pub fn theta_fraction(&self, x: usize) -> (i64, u64) {
        let m = self.conductor as u64;
        let e = modn(self.theta_exponents[x], m);
        let g = gcd(e as i64, m as i64).max(1) as u64;
        ((e / g) as i64, m / g)
    }

    pub fn ord_t(&self) -> u64 {
        self.theta_exponents
            .iter()
            .fold(1, |acc, &e| lcm(acc, root_order(e, self.conductor as u64)))
    }

    pub fn global_dim(&self) -> CyclotomicNumber {
        self.s[0]
            .iter()
            .fold(CyclotomicNumber::zero(self.conductor), |acc, d| acc.add(&d.mul(d)))
    }

    /// τ_m = Σ d_X² θ_X^m.
    pub fn gauss_sum(&self, m: i64) -> CyclotomicNumber {
        let mut coeffs = CyclotomicNumber::zero(self.conductor);
        for x in 0..self.rank {
            let d = &self.s[0][x];
            let th = CyclotomicNumber::zeta(self.conductor, self.theta_exponents[x] * m);
            coeffs = coeffs.add(&d.mul(d).mul(&th));
        }
        coeffs
    }

    /// α_m = τ_m / conj(τ_m), certified to be a root of unity.
    pub fn anomaly(&self, m: i64) -> Result<CyclotomicNumber> {
        let n = self.ord_t();
        if gcd(m, n as i64) != 1 {
            return Err(Error::NotCoprime { a: m, m: n });
        }
        let tau = self.gauss_sum(m);
        if tau.is_zero() {
            return Err(Error::TauZero);
        }
        let tau_bar = tau.conj();
        let l = lcm(2, self.conductor as u64);
        let z = tau.approx() / tau_bar.approx();
        let turns = z.arg() / (2.0 * std::f64::consts::PI);
        let e = (turns * l as f64).round() as i64;
        let guess = CyclotomicNumber::zeta(l as u32, e);
        if guess.mul(&tau_bar) == tau {
            return Ok(guess);
        }
        let exact = tau.div(&tau_bar)?;
        if exact.as_root_of_unity().is_some() {
            Ok(exact)
        } else {
            Err(Error::NotModular("anomaly is not a root of unity".into()))
        }
    }

    /// Full subcategory on the given labels (assumed closed under fusion and duals).
    pub fn restrict(&self, labels: &[usize]) -> Result<Self> {
        let pos = |x: usize| labels.iter().position(|&y| y == x);
        let dual = labels
            .iter()
            .map(|&x| {
                pos(self.dual_perm[x])
                    .ok_or_else(|| Error::InvalidParameter("label set not closed under duals".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        ModularData::new(
            labels.iter().map(|&x| self.labels[x].clone()).collect(),
            self.conductor,
            labels
                .iter()
                .map(|&x| labels.iter().map(|&y| self.s[x][y].clone()).collect())
                .collect(),
            labels.iter().map(|&x| self.theta_exponents[x]).collect(),
            dual,
        )
    }

    /// Relabel by a permutation: new label i is old label perm[i].
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let inv = invert(perm);
        ModularData {
            rank: self.rank,
            labels: perm.iter().map(|&x| self.labels[x].clone()).collect(),
            conductor: self.conductor,
            s: perm
                .iter()
                .map(|&x| perm.iter().map(|&y| self.s[x][y].clone()).collect())
                .collect(),
            theta_exponents: perm.iter().map(|&x| self.theta_exponents[x]).collect(),
            dual_perm: perm.iter().map(|&x| inv[self.dual_perm[x]]).collect(),
        }
    }
}

pub(crate) fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_basics() {
        let fib = build_sl2_adjoint(3, 1).unwrap();
        assert_eq!(fib.rank, 2);
        assert_eq!(fib.ord_t(), 5);
        let phi = fib.dim(1).clone();
        assert_eq!(phi.mul(&phi), phi.add(&CyclotomicNumber::one(10)));
        assert_eq!(fib.s[1][1], CyclotomicNumber::from_int(10, -1));
        // dim = 1 + φ² = (5 + √5)/2
        let sqrt5 = crate::numeric::gauss_sum_sqrt(5).unwrap();
        let want = sqrt5.add(&CyclotomicNumber::from_int(5, 5)).scale_rational(&num_rational::BigRational::new(1.into(), 2.into()));
        assert_eq!(fib.global_dim(), want);
        assert!(trivial().global_dim().is_one());
    }

    #[test]
    fn anomaly_of_adjoint_family() {
        for k in (1..=11i64).step_by(2) {
            let c = build_sl2_adjoint(k as u32, 1).unwrap();
            let a = c.anomaly(1).unwrap();
            let want = CyclotomicNumber::zeta(4 * (k as u32 + 2), (1 - k) * k);
            assert_eq!(a, want, "k = {k}");
        }
    }

    #[test]
    fn anomaly_orders_for_primes() {
        for p in [5u64, 7, 11, 13] {
            for l in crate::numeric::ntheory::units(2 * p) {
                let c = build_sl2_adjoint(p as u32 - 2, l as i64).unwrap();
                let (_, n) = c.anomaly(1).unwrap().as_root_of_unity().unwrap();
                assert!(n == p || n == 2 * p, "p = {p}, l = {l}, order {n}");
            }
        }
    }

    #[test]
    fn restriction_and_permutation() {
        let c = deligne_product(&fibonacci(), &build_svec(1));
        let sub = c.restrict(&[0, 2]).unwrap();
        assert_eq!(sub.rank, 2);
        let p = c.permuted(&[0, 2, 1, 3]);
        assert_eq!(p.permuted(&[0, 2, 1, 3]), c);
    }
}
