//! Linear representations of SL2(Z): lifts of modular data, the building
//! blocks χ_x and η^p_j, minimality, irreducibility, Galois symmetries g_σ
//! and isotypic decompositions.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{galois_group, galois_permutation, Permutation};
use crate::modular_data::ModularData;
use crate::numeric::ntheory::{
    factorize, gcd, is_prime, lcm, legendre, mod_inv, modn, phi2, root_order, units,
};
use crate::numeric::{matrix, CyclotomicNumber, Matrix};

/// Exact pair (s, t) with t = diag(ζ_conductor^{t_exponents}).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SL2ZRep {
    pub dim: usize,
    pub conductor: u32,
    pub s: Matrix,
    pub t_exponents: Vec<i64>,
    pub level: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedPermutationMatrix {
    /// Row X has its nonzero entry in column permutation[X].
    pub permutation: Permutation,
    pub signs: Vec<i8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeFactor {
    pub p: u64,
    pub l: u64,
    pub j: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalTypeDescriptor {
    pub level: u64,
    pub l: u64,
    pub d: u64,
    pub l0: u64,
    pub factors: Vec<PrimeFactor>,
}

impl SL2ZRep {
    /// Assemble and verify s⁴ = 1, (st)³ = s² and symmetry of s.
    pub fn new(s: Matrix, t_exponents: Vec<i64>, conductor: u32) -> Result<Self> {
        let rep = Self::unchecked(s, t_exponents, conductor)?;
        rep.verify_relations()?;
        Ok(rep)
    }

    fn unchecked(s: Matrix, t_exponents: Vec<i64>, conductor: u32) -> Result<Self> {
        let dim = t_exponents.len();
        if s.len() != dim || s.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidParameter("s and t sizes differ".into()));
        }
        let m = lcm(conductor as u64, matrix::conductor_of(&s) as u64) as u32;
        let f = (m / conductor) as i64;
        let t_exponents: Vec<i64> = t_exponents
            .iter()
            .map(|&e| modn(e * f, m as u64) as i64)
            .collect();
        let level = t_exponents
            .iter()
            .fold(1, |acc, &e| lcm(acc, root_order(e, m as u64)));
        Ok(SL2ZRep {
            dim,
            conductor: m,
            s: matrix::promote(&s, m),
            t_exponents,
            level,
        })
    }

    pub fn t_matrix(&self) -> Matrix {
        let m = self.conductor;
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        if i == j {
                            CyclotomicNumber::zeta(m, self.t_exponents[i])
                        } else {
                            CyclotomicNumber::zero(m)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// s·diag(ζ^{e}) with e given per column.
    fn times_diag(&self, a: &Matrix, exps: &[i64]) -> Matrix {
        a.iter()
            .map(|row| row.iter().zip(exps).map(|(x, &e)| x.mul_zeta(e)).collect())
            .collect()
    }

    fn diag_times(&self, exps: &[i64], a: &Matrix) -> Matrix {
        a.iter()
            .zip(exps)
            .map(|(row, &e)| row.iter().map(|x| x.mul_zeta(e)).collect())
            .collect()
    }

    fn t_power(&self, k: i64) -> Vec<i64> {
        self.t_exponents.iter().map(|e| e * k).collect()
    }

    pub fn verify_relations(&self) -> Result<()> {
        if !matrix::is_symmetric(&self.s) {
            return Err(Error::LiftFailure("s is not symmetric".into()));
        }
        let s2 = matrix::mul(&self.s, &self.s);
        if !matrix::is_identity(&matrix::mul(&s2, &s2)) {
            return Err(Error::LiftFailure("s^4 ≠ 1".into()));
        }
        let st = self.times_diag(&self.s, &self.t_exponents);
        let st3 = matrix::mul(&matrix::mul(&st, &st), &st);
        if st3 != s2 {
            return Err(Error::LiftFailure("(st)^3 ≠ s^2".into()));
        }
        Ok(())
    }

    /// Every entry of s lies in Q_level.
    pub fn entries_in_level_field(&self) -> bool {
        let n = self.level;
        let m = self.conductor as u64;
        let fixers: Vec<i64> = units(m)
            .into_iter()
            .filter(|&a| a % n.max(1) == 1 % n.max(1))
            .map(|a| a as i64)
            .collect();
        self.s
            .iter()
            .flatten()
            .all(|x| fixers.iter().all(|&a| x.galois(a).is_ok_and(|g| g == *x)))
    }

    pub fn promote(&self, m: u32) -> Self {
        let f = (m / self.conductor) as i64;
        SL2ZRep {
            dim: self.dim,
            conductor: m,
            s: matrix::promote(&self.s, m),
            t_exponents: self.t_exponents.iter().map(|e| e * f).collect(),
            level: self.level,
        }
    }

    /// Tensor product with another representation.
    pub fn tensor(&self, other: &SL2ZRep) -> SL2ZRep {
        let m = lcm(self.conductor as u64, other.conductor as u64) as u32;
        let (a, b) = (self.promote(m), other.promote(m));
        let mut t = Vec::with_capacity(a.dim * b.dim);
        for x in &a.t_exponents {
            for y in &b.t_exponents {
                t.push(x + y);
            }
        }
        Self::unchecked(matrix::kron(&a.s, &b.s), t, m).expect("shapes agree")
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &SL2ZRep) -> SL2ZRep {
        let m = lcm(self.conductor as u64, other.conductor as u64) as u32;
        let (a, b) = (self.promote(m), other.promote(m));
        let n = a.dim + b.dim;
        let mut s = vec![vec![CyclotomicNumber::zero(m); n]; n];
        for i in 0..a.dim {
            for j in 0..a.dim {
                s[i][j] = a.s[i][j].clone();
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                s[a.dim + i][a.dim + j] = b.s[i][j].clone();
            }
        }
        let t = a.t_exponents.iter().chain(&b.t_exponents).copied().collect();
        Self::unchecked(s, t, m).expect("shapes agree")
    }
}

impl SignedPermutationMatrix {
    pub fn identity(n: usize) -> Self {
        SignedPermutationMatrix {
            permutation: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    /// Matrix product self · other.
    pub fn compose(&self, other: &Self) -> Self {
        let permutation = self.permutation.iter().map(|&y| other.permutation[y]).collect();
        let signs = (0..self.signs.len())
            .map(|x| self.signs[x] * other.signs[self.permutation[x]])
            .collect();
        SignedPermutationMatrix { permutation, signs }
    }

    pub fn to_matrix(&self, m: u32) -> Matrix {
        let n = self.permutation.len();
        (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let v = if self.permutation[x] == y { self.signs[x] as i64 } else { 0 };
                        CyclotomicNumber::from_int(m, v)
                    })
                    .collect()
            })
            .collect()
    }

    fn from_matrix(a: &Matrix) -> Result<Self> {
        let n = a.len();
        let mut permutation = vec![usize::MAX; n];
        let mut signs = vec![0i8; n];
        let mut used = vec![false; n];
        for (x, row) in a.iter().enumerate() {
            for (y, v) in row.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let sign = match v.to_i64() {
                    Some(1) => 1,
                    Some(-1) => -1,
                    _ => return Err(Error::NotSignedPermutation(format!("entry ({x},{y}) = {v}"))),
                };
                if permutation[x] != usize::MAX || used[y] {
                    return Err(Error::NotSignedPermutation(format!("row {x} or column {y} repeats")));
                }
                permutation[x] = y;
                signs[x] = sign;
                used[y] = true;
            }
            if permutation[x] == usize::MAX {
                return Err(Error::NotSignedPermutation(format!("row {x} vanishes")));
            }
        }
        Ok(SignedPermutationMatrix { permutation, signs })
    }
}

/// The positive square root of dim(C), as τ_1 times a root of unity.
pub fn sqrt_global_dim(c: &ModularData) -> Result<CyclotomicNumber> {
    let (sqrt_d, _) = sqrt_dim_and_central_charge(c)?;
    Ok(sqrt_d)
}

/// (√dim, ξ_1) with ξ_1 = τ_1/√dim.
fn sqrt_dim_and_central_charge(c: &ModularData) -> Result<(CyclotomicNumber, CyclotomicNumber)> {
    let alpha = c.anomaly(1)?;
    let (e, k) = alpha
        .as_root_of_unity()
        .ok_or_else(|| Error::NotFound("anomaly is not a root of unity".into()))?;
    let tau = c.gauss_sum(1);
    let phase = tau.approx() / tau.approx().norm();
    // ξ² = α, so ξ = ±ζ_{2k}^e.
    let root = CyclotomicNumber::root_of_unity(e, 2 * k);
    let xi = if (root.approx() - phase).norm() < (root.approx() + phase).norm() {
        root
    } else {
        root.neg()
    };
    let sqrt_d = tau.mul(&xi.conj());
    let dim = c.global_dim();
    if !sqrt_d.is_real() || sqrt_d.mul(&sqrt_d) != dim || !sqrt_d.is_positive_real() {
        return Err(Error::NotFound(format!(
            "τ_1·conj(ξ) with ξ = {xi} is not the positive square root of dim"
        )));
    }
    Ok((sqrt_d, xi))
}

/// The 12 lifts (x⁻³s, x·t), x = ζ_12^i, of the base lift s = S/√dim,
/// t = γ⁻¹T with γ³ = ξ_1.
pub fn lift_projective(c: &ModularData) -> Result<Vec<SL2ZRep>> {
    let (sqrt_d, xi) = sqrt_dim_and_central_charge(c)?;
    let (e, k) = xi
        .as_root_of_unity()
        .ok_or_else(|| Error::LiftFailure("central charge is not a root of unity".into()))?;
    let inv = sqrt_d.inv()?;
    let s = matrix::scale(&c.s, &inv);
    let m = lcm(
        lcm(c.conductor as u64, 3 * k),
        lcm(12, matrix::conductor_of(&s) as u64),
    ) as u32;
    let s = matrix::promote(&s, m);
    let f = (m / c.conductor) as i64;
    // γ = ζ_{3k}^e
    let gamma_exp = e * (m as i64 / (3 * k as i64));
    let twelfth = m as i64 / 12;
    let base_t: Vec<i64> = c.theta_exponents.iter().map(|&x| x * f - gamma_exp).collect();
    let base = SL2ZRep::unchecked(s, base_t, m)?;
    base.verify_relations()?;
    Ok((0..12)
        .map(|i| {
            let x = i * twelfth;
            SL2ZRep::unchecked(
                base.s.iter().map(|row| row.iter().map(|v| v.mul_zeta(-3 * x)).collect()).collect(),
                base.t_exponents.iter().map(|t| t + x).collect(),
                m,
            )
            .expect("shapes agree")
        })
        .collect())
}

/// χ_x for x = ζ_12^i: s = x⁻³, t = x.
pub fn chi_rep(i: i64) -> SL2ZRep {
    let s = vec![vec![CyclotomicNumber::zeta(12, -3 * i)]];
    SL2ZRep::new(s, vec![i], 12).expect("characters satisfy the relations")
}

/// η^p_j on indices x = 1..(p−1)/2, using the least a with (a/p) = j.
pub fn eta_rep(p: u64, j: i8) -> Result<SL2ZRep> {
    if p <= 3 || !is_prime(p) {
        return Err(Error::InvalidParameter(format!("p = {p} must be a prime > 3")));
    }
    if j != 1 && j != -1 {
        return Err(Error::InvalidParameter(format!("j = {j} must be ±1")));
    }
    let a = (1..p as i64)
        .find(|&a| legendre(a, p) == Ok(j))
        .expect("both residue classes are inhabited");
    let g_inv = crate::numeric::gauss_sum_sqrt(p)?.inv()?;
    let h = (p as i64 - 1) / 2;
    let m = p as u32;
    let s = (1..=h)
        .map(|x| {
            (1..=h)
                .map(|y| {
                    let e = 2 * a * x * y;
                    CyclotomicNumber::zeta(m, -e)
                        .sub(&CyclotomicNumber::zeta(m, e))
                        .mul(&g_inv)
                        .scale_int(j as i64)
                })
                .collect()
        })
        .collect();
    let t = (1..=h).map(|x| a * x * x).collect();
    SL2ZRep::new(s, t, m)
}

pub fn rep_level(rho: &SL2ZRep) -> u64 {
    rho.level
}

/// ζ_n^l = ζ_d^{l0}·Π ζ_p^{l_p} with d | 12 and distinct primes p ≥ 5.
pub fn minimal_decomposition(n: u64, l: u64) -> Result<MinimalTypeDescriptor> {
    if n == 0 || gcd(l as i64, n as i64) != 1 {
        return Err(Error::InvalidParameter(format!("l = {l} is not a unit mod {n}")));
    }
    let mut d = 1;
    let mut primes = Vec::new();
    for (p, e) in factorize(n) {
        match p {
            2 if e >= 3 => return Err(Error::ShapeError(format!("8 divides {n}"))),
            3 if e >= 2 => return Err(Error::ShapeError(format!("9 divides {n}"))),
            2 | 3 => d *= p.pow(e),
            _ if e >= 2 => return Err(Error::ShapeError(format!("{p}^2 divides {n}"))),
            _ => primes.push(p),
        }
    }
    let part = |q: u64| -> Result<u64> {
        if q == 1 {
            return Ok(0);
        }
        Ok(modn(l as i64 * mod_inv((n / q) as i64, q)? as i64, q))
    };
    let factors = primes
        .iter()
        .map(|&p| {
            let lp = part(p)?;
            Ok(PrimeFactor { p, l: lp, j: legendre(lp as i64, p)? })
        })
        .collect::<Result<_>>()?;
    Ok(MinimalTypeDescriptor {
        level: n,
        l: modn(l as i64, n),
        d,
        l0: part(d)?,
        factors,
    })
}

/// Minimal iff dim = φ₂(n) and the t-spectrum is {a²l : a ∈ (Z/n)^×}, each once.
pub fn is_minimal(rho: &SL2ZRep) -> Option<MinimalTypeDescriptor> {
    let n = rho.level;
    if rho.dim as u64 != phi2(n) {
        return None;
    }
    let m = rho.conductor as u64;
    let exps: Vec<u64> = rho
        .t_exponents
        .iter()
        .map(|&e| modn(e, m) / (m / n))
        .collect();
    let set: BTreeSet<u64> = exps.iter().copied().collect();
    if set.len() != exps.len() {
        return None;
    }
    let l = *set.iter().next()?;
    if gcd(l as i64, n as i64) != 1 {
        return None;
    }
    let orbit: BTreeSet<u64> = units(n).iter().map(|&a| (a * a % n.max(1)) * l % n.max(1)).collect();
    if orbit != set {
        return None;
    }
    minimal_decomposition(n, l).ok()
}

/// The commutant {M : Ms = sM, Mt = tM} has dimension 1.
pub fn is_irreducible(rho: &SL2ZRep) -> bool {
    commutant_dimension(rho) == 1
}

pub fn commutant_dimension(rho: &SL2ZRep) -> usize {
    let n = rho.dim;
    let m = rho.conductor as u64;
    let mut blocks: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, &e) in rho.t_exponents.iter().enumerate() {
        blocks.entry(modn(e, m)).or_default().push(i);
    }
    if blocks.values().all(|b| b.len() == 1) {
        // Diagonal commutant: one free scalar per connected component of s.
        let mut seen = vec![false; n];
        let mut components = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            components += 1;
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(x) = queue.pop_front() {
                for y in 0..n {
                    if !seen[y] && !rho.s[x][y].is_zero() {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        return components;
    }
    let unknowns: Vec<(usize, usize)> = blocks
        .values()
        .flat_map(|b| b.iter().flat_map(move |&u| b.iter().map(move |&v| (u, v))))
        .collect();
    let zero = CyclotomicNumber::zero(rho.conductor);
    let mut system: Matrix = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            // (Ms − sM)_{x,y} = Σ M_{x,z}s_{z,y} − s_{x,z}M_{z,y}
            let row: Vec<CyclotomicNumber> = unknowns
                .iter()
                .map(|&(u, v)| {
                    let mut c = zero.clone();
                    if u == x {
                        c = c.add(&rho.s[v][y]);
                    }
                    if v == y {
                        c = c.sub(&rho.s[x][u]);
                    }
                    c
                })
                .collect();
            if row.iter().any(|c| !c.is_zero()) {
                system.push(row);
            }
        }
    }
    unknowns.len() - matrix::rank(&system)
}

/// A residue ≡ a (mod n) that is a unit modulo `m` as well.
fn lift_residue(a: u64, n: u64, m: u64) -> Result<i64> {
    let l = lcm(n, m);
    let mut b = modn(a as i64, n);
    while b < l + n {
        if gcd(b as i64, l as i64) == 1 {
            return Ok(b as i64);
        }
        b += n;
    }
    Err(Error::NotCoprime { a: a as i64, m: n })
}

/// g_σ = ρ(t^a s t^b s t^a s⁻¹) for σ(ζ_n) = ζ_n^a, b = a⁻¹ mod n, verified to
/// be a signed permutation satisfying σ(s) = g s = s g⁻¹ and σ²(t) = g t g⁻¹.
pub fn g_sigma(rho: &SL2ZRep, a: u64) -> Result<SignedPermutationMatrix> {
    let n = rho.level;
    if gcd(a as i64, n as i64) != 1 {
        return Err(Error::NotCoprime { a: a as i64, m: n });
    }
    let a = modn(a as i64, n.max(1));
    let b = mod_inv(a as i64, n.max(1))?;
    let s_inv = s_inverse(rho);
    let inner = matrix::mul(&rho.s, &rho.diag_times(&rho.t_power(b as i64), &rho.s));
    let word = matrix::mul(&rho.times_diag(&inner, &rho.t_power(a as i64)), &s_inv);
    let word = rho.diag_times(&rho.t_power(a as i64), &word);
    let g = SignedPermutationMatrix::from_matrix(&word)?;
    verify_gs(rho, a, &g)?;
    Ok(g)
}

fn s_inverse(rho: &SL2ZRep) -> Matrix {
    let s2 = matrix::mul(&rho.s, &rho.s);
    matrix::mul(&s2, &rho.s)
}

fn verify_gs(rho: &SL2ZRep, a: u64, g: &SignedPermutationMatrix) -> Result<()> {
    let m = rho.conductor as u64;
    let ar = lift_residue(a, rho.level, m)?;
    let n = rho.dim;
    for x in 0..n {
        for y in 0..n {
            let sig = rho.s[x][y].galois(ar)?;
            // (g s)_{x,y} = ε(x) s_{π(x),y};  (s g⁻¹)_{x,y} = ε(y) s_{x,π(y)}
            let gs = rho.s[g.permutation[x]][y].scale_int(g.signs[x] as i64);
            let sg = rho.s[x][g.permutation[y]].scale_int(g.signs[y] as i64);
            if sig != gs || sig != sg {
                return Err(Error::Inconsistent(format!(
                    "σ_{a}(s) ≠ g s or s g⁻¹ at ({x},{y})"
                )));
            }
        }
        let lhs = modn(rho.t_exponents[x] * ar * ar, m);
        let rhs = modn(rho.t_exponents[g.permutation[x]], m);
        if lhs != rhs {
            return Err(Error::Inconsistent(format!("σ_{a}²(t) ≠ g t g⁻¹ at {x}")));
        }
    }
    Ok(())
}

/// ε_σ(X) = σ(s_{X,Y})/s_{σ̂(X),Y} for a column Y where the denominator is
/// nonzero, cross-checked against the signs of g_σ.
pub fn epsilon_signs(rho: &SL2ZRep, a: u64) -> Result<Vec<i8>> {
    let g = g_sigma(rho, a)?;
    let ar = lift_residue(a, rho.level, rho.conductor as u64)?;
    (0..rho.dim)
        .map(|x| {
            let px = g.permutation[x];
            let y = (0..rho.dim)
                .find(|&y| !rho.s[px][y].is_zero())
                .ok_or_else(|| Error::Inconsistent("s has a zero row".into()))?;
            let sig = rho.s[x][y].galois(ar)?;
            let eps = if sig == rho.s[px][y] {
                1
            } else if sig == rho.s[px][y].neg() {
                -1
            } else {
                return Err(Error::Inconsistent(format!("σ_{a}(s_{{{x},{y}}}) is not ±s")));
            };
            if eps != g.signs[x] {
                return Err(Error::Inconsistent(format!(
                    "sign of g_σ at {x} disagrees with the ratio"
                )));
            }
            Ok(eps)
        })
        .collect()
}

/// The permutation part of g_σ agrees with σ̂ on the underlying data.
pub fn g_sigma_matches_galois(c: &ModularData, rho: &SL2ZRep, a: u64) -> Result<bool> {
    let g = g_sigma(rho, a)?;
    let m = crate::galois::ambient_modulus(c);
    let ar = lift_residue(a, rho.level, m)?;
    Ok(g.permutation == galois_permutation(c, ar)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotypicComponent {
    /// χ(h) for each residue h of the chosen section H̃.
    pub character: Vec<(u64, i8)>,
    pub dim: usize,
    pub invariant: bool,
}

/// Residues in Ω₂^n forming a subgroup H̃ mapped isomorphically onto H_C:
/// the group generated by the least involution residues whose images span H_C.
pub fn two_group_section(c: &ModularData, n: u64) -> Result<Vec<u64>> {
    let profile = galois_group(c)?;
    let m = profile.ambient_modulus;
    let target: BTreeSet<Permutation> = profile.h2_group.iter().cloned().collect();
    let id: Permutation = (0..c.rank).collect();
    let mut span: BTreeMap<Permutation, u64> = BTreeMap::from([(id, 1 % n.max(1))]);
    for a in units(n.max(1)) {
        if span.len() == target.len() {
            break;
        }
        if a * a % n.max(1) != 1 % n.max(1) {
            continue;
        }
        let p = profile
            .perm(lift_residue(a, n, m)?)
            .ok_or_else(|| Error::Inconsistent(format!("no σ̂ for residue {a}")))?
            .clone();
        if span.contains_key(&p) {
            continue;
        }
        let mut extra = Vec::new();
        for (q, &r) in &span {
            let composed: Permutation = q.iter().map(|&x| p[x]).collect();
            extra.push((composed, (r as u128 * a as u128 % n as u128) as u64));
        }
        span.extend(extra);
    }
    if span.len() != target.len() || span.keys().any(|p| !target.contains(p)) {
        return Err(Error::Inconsistent("involutions do not map onto H_C".into()));
    }
    let mut out: Vec<u64> = span.into_values().collect();
    out.sort_unstable();
    Ok(out)
}

/// Isotypic components of ρ under H̃, via P_χ = (1/|H̃|) Σ χ(h) g_h.
pub fn isotypic_decomposition(rho: &SL2ZRep, c: &ModularData) -> Result<Vec<IsotypicComponent>> {
    let section = two_group_section(c, rho.level)?;
    let gs: Vec<SignedPermutationMatrix> =
        section.iter().map(|&h| g_sigma(rho, h)).collect::<Result<_>>()?;
    // Characters of an elementary 2-group, indexed by subsets of a basis.
    let n = rho.level.max(1);
    let mut basis: Vec<u64> = Vec::new();
    let mut span: BTreeSet<u64> = BTreeSet::from([1 % n]);
    for &h in &section {
        if !span.contains(&h) {
            let new: Vec<u64> = span.iter().map(|&x| (x as u128 * h as u128 % n as u128) as u64).collect();
            span.extend(new);
            basis.push(h);
        }
    }
    let coords = |h: u64| -> Vec<bool> {
        // Express h as a product of basis elements.
        for mask in 0..(1u32 << basis.len()) {
            let mut x = 1 % n;
            for (i, &b) in basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    x = (x as u128 * b as u128 % n as u128) as u64;
                }
            }
            if x == h {
                return (0..basis.len()).map(|i| mask >> i & 1 == 1).collect();
            }
        }
        unreachable!("section is spanned by its basis")
    };
    let hc: Vec<Vec<bool>> = section.iter().map(|&h| coords(h)).collect();
    let m = rho.conductor;
    let dim = rho.dim;
    let mut out = Vec::new();
    for chi in 0..(1u32 << basis.len()) {
        let value = |k: usize| -> i8 {
            let flips = hc[k].iter().enumerate().filter(|&(i, &b)| b && chi >> i & 1 == 1).count();
            if flips % 2 == 0 { 1 } else { -1 }
        };
        let mut p = vec![vec![0i64; dim]; dim];
        for (k, g) in gs.iter().enumerate() {
            let v = value(k) as i64;
            for x in 0..dim {
                p[x][g.permutation[x]] += v * g.signs[x] as i64;
            }
        }
        let pm: Matrix = p
            .iter()
            .map(|row| row.iter().map(|&v| CyclotomicNumber::from_int(m, v)).collect())
            .collect();
        let r = matrix::rank(&pm);
        if r == 0 {
            continue;
        }
        let invariant = matrix::mul(&pm, &rho.s) == matrix::mul(&rho.s, &pm)
            && (0..dim).all(|x| {
                (0..dim).all(|y| p[x][y] == 0 || modn(rho.t_exponents[x] - rho.t_exponents[y], m as u64) == 0)
            });
        out.push(IsotypicComponent {
            character: section.iter().enumerate().map(|(k, &h)| (h, value(k))).collect(),
            dim: r,
            invariant,
        });
    }
    Ok(out)
}

/// Signed permutation U with s′ = U s Uᵀ and t′ = U t Uᵀ: U maps basis
/// vector i of ρ to signs[i]·e_{permutation[i]} of ρ′.
pub fn reps_equivalent(rho: &SL2ZRep, other: &SL2ZRep) -> Result<Option<SignedPermutationMatrix>> {
    let m = lcm(rho.conductor as u64, other.conductor as u64) as u32;
    let (a, b) = (rho.promote(m), other.promote(m));
    let distinct = |r: &SL2ZRep| {
        let set: BTreeSet<u64> = r.t_exponents.iter().map(|&e| modn(e, m as u64)).collect();
        set.len() == r.dim
    };
    if !distinct(&a) || !distinct(&b) {
        return Err(Error::MultiplicityError);
    }
    if a.dim != b.dim {
        return Ok(None);
    }
    let n = a.dim;
    let mut perm = vec![usize::MAX; n];
    for i in 0..n {
        match (0..n).find(|&j| modn(b.t_exponents[j] - a.t_exponents[i], m as u64) == 0) {
            Some(j) => perm[i] = j,
            None => return Ok(None),
        }
    }
    let mut signs = vec![0i8; n];
    for start in 0..n {
        if signs[start] != 0 {
            continue;
        }
        signs[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if a.s[i][j].is_zero() || signs[j] != 0 {
                    continue;
                }
                let target = &b.s[perm[i]][perm[j]];
                signs[j] = if *target == a.s[i][j] {
                    signs[i]
                } else if *target == a.s[i][j].neg() {
                    -signs[i]
                } else {
                    return Ok(None);
                };
                queue.push_back(j);
            }
        }
    }
    let ok = (0..n).all(|i| {
        (0..n).all(|j| b.s[perm[i]][perm[j]] == a.s[i][j].scale_int((signs[i] * signs[j]) as i64))
    });
    Ok(ok.then_some(SignedPermutationMatrix {
        permutation: perm,
        signs,
    }))
}

/// χ_{ζ_d^{l0}} ⊗ ⊗_p η^p_{j_p} for a minimal type.
pub fn model_rep(desc: &MinimalTypeDescriptor) -> Result<SL2ZRep> {
    let mut rho = chi_rep((desc.l0 * (12 / desc.d)) as i64);
    for f in &desc.factors {
        rho = rho.tensor(&eta_rep(f.p, f.j)?);
    }
    Ok(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular_data::*;

    #[test]
    fn sqrt_dim_examples() {
        let fib = fibonacci();
        let r = sqrt_global_dim(&fib).unwrap();
        assert_eq!(r.mul(&r), fib.global_dim());
        assert!(sqrt_global_dim(&trivial()).unwrap().is_one());
        let z5 = build_pointed(&QuadraticForm::diagonal(&[5], 5, &[1])).unwrap();
        assert_eq!(sqrt_global_dim(&z5).unwrap(), crate::numeric::gauss_sum_sqrt(5).unwrap());
    }

    #[test]
    fn lifts_of_fibonacci() {
        let lifts = lift_projective(&fibonacci()).unwrap();
        assert_eq!(lifts.len(), 12);
        for rho in &lifts {
            rho.verify_relations().unwrap();
            assert!(is_minimal(rho).is_some());
            assert!(is_irreducible(rho));
        }
        assert!(lifts.iter().any(|r| r.level == 5 && r.dim == 2));
    }

    #[test]
    fn lifts_of_trivial_are_characters() {
        let lifts = lift_projective(&trivial()).unwrap();
        for (i, rho) in lifts.iter().enumerate() {
            let chi = chi_rep(i as i64);
            assert_eq!(rho.promote(lcm(rho.conductor as u64, 12) as u32).s, chi.promote(lcm(rho.conductor as u64, 12) as u32).s);
            assert_eq!(rho.level, chi.level);
        }
    }

    #[test]
    fn eta_examples() {
        let e = eta_rep(5, 1).unwrap();
        let mut t: Vec<u64> = e.t_exponents.iter().map(|&x| modn(x, 5)).collect();
        t.sort_unstable();
        assert_eq!(t, vec![1, 4]);
        for p in [5u64, 7, 11, 13, 17] {
            for j in [1i8, -1] {
                let e = eta_rep(p, j).unwrap();
                assert_eq!(e.dim as u64, phi2(p));
                let d = is_minimal(&e).unwrap();
                assert_eq!(d.factors, vec![PrimeFactor { p, l: d.l, j }]);
                assert!(is_irreducible(&e));
            }
        }
        assert!(chi_rep(0).s[0][0].is_one());
        assert!(eta_rep(4, 1).is_err());
    }

    #[test]
    fn reducible_sums() {
        let (a, b) = (eta_rep(5, 1).unwrap(), eta_rep(5, -1).unwrap());
        assert_eq!(commutant_dimension(&a.direct_sum(&b)), 2);
        let aa = a.direct_sum(&a);
        assert!(is_minimal(&aa).is_none());
        assert_eq!(commutant_dimension(&aa), 4);
        for i in 0..12 {
            assert!(is_minimal(&chi_rep(i)).is_some());
            assert!(is_irreducible(&chi_rep(i)));
        }
    }

    #[test]
    fn minimal_decomposition_examples() {
        let d = minimal_decomposition(35, 1).unwrap();
        assert_eq!((d.factors[0].l, d.factors[1].l), (3, 3));
        let d = minimal_decomposition(5, 2).unwrap();
        assert_eq!((d.d, d.factors[0].j), (1, -1));
        let d = minimal_decomposition(12, 1).unwrap();
        assert_eq!((d.d, d.factors.len()), (12, 0));
        for n in [8u64, 9, 25, 49] {
            assert!(matches!(minimal_decomposition(n, 1), Err(Error::ShapeError(_))));
        }
    }

    #[test]
    fn g_sigma_properties() {
        let e = eta_rep(5, 1).unwrap();
        for a in 1..5 {
            g_sigma(&e, a).unwrap();
        }
        assert_eq!(g_sigma(&e, 1).unwrap(), SignedPermutationMatrix::identity(2));
        let fib = fibonacci();
        for rho in lift_projective(&fib).unwrap() {
            let n = rho.level;
            let gs: BTreeMap<u64, SignedPermutationMatrix> =
                units(n).into_iter().map(|a| (a, g_sigma(&rho, a).unwrap())).collect();
            for (&a, ga) in &gs {
                assert!(g_sigma_matches_galois(&fib, &rho, a).unwrap());
                epsilon_signs(&rho, a).unwrap();
                for (&b, gb) in &gs {
                    assert_eq!(ga.compose(gb), gs[&(a * b % n)]);
                }
            }
        }
    }

    #[test]
    fn pointed_epsilon_routes_agree() {
        let z5 = build_pointed(&QuadraticForm::diagonal(&[5], 5, &[1])).unwrap();
        for rho in lift_projective(&z5).unwrap() {
            let a = rho.level - 1;
            epsilon_signs(&rho, a).unwrap();
            assert!(g_sigma_matches_galois(&z5, &rho, a).unwrap());
        }
    }

    #[test]
    fn isotypic_examples() {
        let z5 = build_pointed(&QuadraticForm::diagonal(&[5], 5, &[1])).unwrap();
        let rho = &lift_projective(&z5).unwrap()[0];
        let comps = isotypic_decomposition(rho, &z5).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps.iter().map(|c| c.dim).sum::<usize>(), 5);
        assert!(comps.iter().all(|c| c.invariant));
        let fib = fibonacci();
        let comps = isotypic_decomposition(&lift_projective(&fib).unwrap()[0], &fib).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].dim, 2);
        let t = trivial();
        let comps = isotypic_decomposition(&lift_projective(&t).unwrap()[0], &t).unwrap();
        assert_eq!((comps.len(), comps[0].dim), (1, 1));
    }

    #[test]
    fn equivalences() {
        let e = eta_rep(7, 1).unwrap();
        assert_eq!(reps_equivalent(&e, &e).unwrap(), Some(SignedPermutationMatrix::identity(3)));
        assert_eq!(reps_equivalent(&eta_rep(5, 1).unwrap(), &eta_rep(5, -1).unwrap()).unwrap(), None);
        let fib = fibonacci();
        let rho = lift_projective(&fib).unwrap().into_iter().find(|r| r.level == 5).unwrap();
        let desc = is_minimal(&rho).unwrap();
        let j = desc.factors[0].j;
        assert!(reps_equivalent(&rho, &eta_rep(5, j).unwrap()).unwrap().is_some());
        let aa = eta_rep(5, 1).unwrap().direct_sum(&eta_rep(5, 1).unwrap());
        assert_eq!(reps_equivalent(&aa, &aa), Err(Error::MultiplicityError));
    }

    #[test]
    fn lifts_match_their_models() {
        for c in [fibonacci(), build_sl2_adjoint(5, 3).unwrap(), deligne_product(&fibonacci(), &build_sl2_adjoint(5, 1).unwrap())] {
            for rho in lift_projective(&c).unwrap() {
                let desc = is_minimal(&rho).expect("transitive lifts are minimal");
                let model = model_rep(&desc).unwrap();
                assert!(reps_equivalent(&rho, &model).unwrap().is_some());
                assert!(rho.entries_in_level_field());
            }
        }
    }
}
