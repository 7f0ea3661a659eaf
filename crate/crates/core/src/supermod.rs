//! Super-modular data: premodular data whose Müger center is {1, f} with f a
//! fermion, analysed through a basic subset Π and the reduced S-matrix Ŝ.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{is_algebraic_unit_pm1, orbits_of, Permutation};
use crate::modular_data::{
    all_fusion_subcategories, build_sl2, build_svec, centralizer_within, deligne_product,
    fibonacci, is_modular_subcategory, sl2_adjoint_any, verlinde_fusion, FusionRing, ModularData,
};
use crate::numeric::ntheory::{lcm, modn, unit_generators};
use crate::numeric::{matrix, CyclotomicNumber, Matrix};
use crate::report::Report;

/// Split detection is exhaustive up to this rank.
pub const SPLIT_SEARCH_MAX_RANK: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperModularData {
    pub underlying: ModularData,
    pub fusion: FusionRing,
    pub fermion: usize,
    /// d_f = ±1.
    pub epsilon: i8,
    /// Π: one label from each orbit {X, f⊗X}, unit first, closed under duals.
    pub basic_subset: Vec<usize>,
    #[serde(rename = "reduced_S")]
    pub reduced_s: Matrix,
}

fn sign_of(x: &CyclotomicNumber) -> Option<i8> {
    match x.to_i64() {
        Some(1) => Some(1),
        Some(-1) => Some(-1),
        _ => None,
    }
}

/// The unique transparent fermion, with ε = d_f.
pub fn detect_fermion(c: &ModularData, fusion: &FusionRing) -> Result<(usize, i8)> {
    let transparent: Vec<usize> = (1..c.rank)
        .filter(|&x| (0..c.rank).all(|y| c.s[x][y] == c.dim(x).mul(c.dim(y))))
        .collect();
    match transparent.as_slice() {
        [] => Err(Error::NoFermion),
        &[f] => {
            let eps = sign_of(c.dim(f)).ok_or(Error::NoFermion)?;
            let self_inverse = fusion.support(f, f) == [fusion.unit] && fusion.get(f, f, fusion.unit) == 1;
            let fermionic = c.theta(f) == CyclotomicNumber::from_int(c.conductor, -(eps as i64));
            if self_inverse && fermionic {
                Ok((f, eps))
            } else {
                Err(Error::NoFermion)
            }
        }
        _ => Err(Error::MultipleFermions(transparent)),
    }
}

/// x ↦ f ⊗ x.
pub fn fermion_partner(fusion: &FusionRing, f: usize) -> Result<Vec<usize>> {
    (0..fusion.rank)
        .map(|x| match fusion.support(f, x).as_slice() {
            &[y] if y != x && fusion.get(f, x, y) == 1 => Ok(y),
            _ => Err(Error::InvalidParameter(format!("f ⊗ {x} is not a simple object other than {x}"))),
        })
        .collect()
}

/// Greedy basic subset: smallest label of each unchosen orbit, taken together
/// with its dual so that Π is closed under duality.
pub fn basic_subset(c: &ModularData, fusion: &FusionRing, f: usize) -> Result<Vec<usize>> {
    let partner = fermion_partner(fusion, f)?;
    let mut handled = vec![false; c.rank];
    let mut pi = Vec::new();
    for x in 0..c.rank {
        if handled[x] {
            continue;
        }
        let xd = c.dual_perm[x];
        if xd == partner[x] {
            return Err(Error::InvalidParameter(format!(
                "the dual of {} is its fermion partner; no dual-closed basic subset",
                c.labels[x]
            )));
        }
        for y in [x, xd] {
            if !handled[y] {
                handled[y] = true;
                handled[partner[y]] = true;
                pi.push(y);
            }
        }
    }
    Ok(pi)
}

impl SuperModularData {
    pub fn new(underlying: ModularData, fusion: FusionRing) -> Result<Self> {
        let (f, _) = detect_fermion(&underlying, &fusion)?;
        let pi = basic_subset(&underlying, &fusion, f)?;
        Self::with_basic_subset(underlying, fusion, pi)
    }

    /// Build with a prescribed basic subset; all invariants are checked exactly.
    pub fn with_basic_subset(underlying: ModularData, fusion: FusionRing, pi: Vec<usize>) -> Result<Self> {
        if fusion.rank != underlying.rank {
            return Err(Error::InvalidParameter("fusion ring rank differs from data rank".into()));
        }
        let (f, epsilon) = detect_fermion(&underlying, &fusion)?;
        let partner = fermion_partner(&fusion, f)?;
        if pi.first() != Some(&0) {
            return Err(Error::InvalidParameter("basic subset must start with the unit".into()));
        }
        let mut covered = BTreeSet::new();
        for &x in &pi {
            if !covered.insert(x) || !covered.insert(partner[x]) {
                return Err(Error::InvalidParameter("basic subset meets an orbit twice".into()));
            }
        }
        if covered.len() != underlying.rank {
            return Err(Error::InvalidParameter("basic subset misses an orbit".into()));
        }
        if pi.iter().any(|&x| !pi.contains(&underlying.dual_perm[x])) {
            return Err(Error::InvalidParameter("basic subset is not closed under duals".into()));
        }
        let reduced_s: Matrix = pi
            .iter()
            .map(|&x| pi.iter().map(|&y| underlying.s[x][y].clone()).collect())
            .collect();
        let out = SuperModularData {
            underlying,
            fusion,
            fermion: f,
            epsilon,
            basic_subset: pi,
            reduced_s,
        };
        if out.block_form() != out.underlying.permuted(&out.induced_order()).s {
            return Err(Error::Inconsistent("S is not in block form over Π".into()));
        }
        if matrix::rank(&out.reduced_s) != out.basic_subset.len() {
            return Err(Error::SingularS);
        }
        Ok(out)
    }

    /// Π followed by f ⊗ Π.
    pub fn induced_order(&self) -> Vec<usize> {
        let partner = fermion_partner(&self.fusion, self.fermion).expect("checked at construction");
        let mut order = self.basic_subset.clone();
        order.extend(self.basic_subset.iter().map(|&x| partner[x]));
        order
    }

    /// [[Ŝ, εŜ], [εŜ, Ŝ]].
    pub fn block_form(&self) -> Matrix {
        let n = self.basic_subset.len();
        (0..2 * n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        let x = self.reduced_s[i % n][j % n].clone();
                        if (i >= n) != (j >= n) && self.epsilon < 0 {
                            x.neg()
                        } else {
                            x
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn pi_labels(&self) -> Vec<String> {
        self.basic_subset.iter().map(|&x| self.underlying.labels[x].clone()).collect()
    }

    /// The same category with the representatives of all nontrivial orbits swapped.
    pub fn alternative_basic_subset(&self) -> Result<Self> {
        let partner = fermion_partner(&self.fusion, self.fermion)?;
        let pi = self
            .basic_subset
            .iter()
            .map(|&x| if x == 0 { 0 } else { partner[x] })
            .collect();
        Self::with_basic_subset(self.underlying.clone(), self.fusion.clone(), pi)
    }

    /// Σ_{Y∈Π} d_Y², half the global dimension.
    pub fn reduced_dim(&self) -> CyclotomicNumber {
        let m = self.underlying.conductor;
        self.reduced_s[0]
            .iter()
            .fold(CyclotomicNumber::zero(m), |acc, d| acc.add(&d.mul(d)))
    }
}

/// A^{(0)}_{4k+2,l}: even labels of C(sl2, 4k+2, q^l), fermion V_{4k+2},
/// Π = {V_0, V_2, …, V_{2k}}.
pub fn build_sl2_super(k: u32, l: i64) -> Result<SuperModularData> {
    let level = 4 * k + 2;
    let underlying = sl2_adjoint_any(level, l)?;
    let even: Vec<usize> = (0..=level as usize).step_by(2).collect();
    let fusion = verlinde_fusion(&build_sl2(level, l)?)?.restrict(&even);
    let c = SuperModularData::with_basic_subset(underlying, fusion, (0..=k as usize).collect())?;
    debug_assert_eq!(c.fermion, 2 * k as usize + 1);
    Ok(c)
}

fn z2_fusion() -> FusionRing {
    FusionRing {
        rank: 2,
        coefficients: vec![1, 0, 0, 1, 0, 1, 1, 0],
        unit: 0,
        dual_perm: vec![0, 1],
    }
}

pub fn svec_super(eps: i8) -> Result<SuperModularData> {
    SuperModularData::new(build_svec(eps), z2_fusion())
}

/// D ⊠ sVec_ε for modular D.
pub fn split_super(d: &ModularData, eps: i8) -> Result<SuperModularData> {
    let fusion = verlinde_fusion(d)?.product(&z2_fusion());
    SuperModularData::new(deligne_product(d, &build_svec(eps)), fusion)
}

/// A ⊠_sVec B. Simple objects are (X, w) with X ∈ Irr(A), w ∈ Π_B, where
/// (X, f_B w) is identified with (f_A X, w); S = S_A ⊗ Ŝ_B and twists multiply.
pub fn svec_product(a: &SuperModularData, b: &SuperModularData) -> Result<SuperModularData> {
    if a.epsilon != b.epsilon {
        return Err(Error::EpsilonMismatch(a.epsilon, b.epsilon));
    }
    let m = lcm(a.underlying.conductor as u64, b.underlying.conductor as u64) as u32;
    let (ua, ub) = (a.underlying.promote(m), b.underlying.promote(m));
    let pb = &b.basic_subset;
    let nb = pb.len();
    let pos_b: BTreeMap<usize, usize> = pb.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let partner_a = fermion_partner(&a.fusion, a.fermion)?;
    let partner_b = fermion_partner(&b.fusion, b.fermion)?;
    let r = ua.rank * nb;
    let idx = |x: usize, w: usize| x * nb + w;
    let split = |i: usize| (i / nb, pb[i % nb]);
    // class of (X, Y) for arbitrary Y ∈ Irr(B)
    let class = |x: usize, y: usize| match pos_b.get(&y) {
        Some(&w) => idx(x, w),
        None => idx(partner_a[x], pos_b[&partner_b[y]]),
    };
    let mut labels = Vec::with_capacity(r);
    let mut s = Vec::with_capacity(r);
    let mut theta = Vec::with_capacity(r);
    let mut dual = Vec::with_capacity(r);
    for i in 0..r {
        let (x, y) = split(i);
        labels.push(format!("({},{})", ua.labels[x], ub.labels[y]));
        s.push(
            (0..r)
                .map(|j| {
                    let (x2, y2) = split(j);
                    ua.s[x][x2].mul(&ub.s[y][y2])
                })
                .collect(),
        );
        theta.push(ua.theta_exponents[x] + ub.theta_exponents[y]);
        dual.push(class(ua.dual_perm[x], ub.dual_perm[y]));
    }
    let mut coefficients = vec![0u32; r * r * r];
    for i in 0..r {
        let (x1, y1) = split(i);
        for j in 0..r {
            let (x2, y2) = split(j);
            for x3 in a.fusion.support(x1, x2) {
                for y3 in b.fusion.support(y1, y2) {
                    let k = class(x3, y3);
                    coefficients[(i * r + j) * r + k] += a.fusion.get(x1, x2, x3) * b.fusion.get(y1, y2, y3);
                }
            }
        }
    }
    let fusion = FusionRing {
        rank: r,
        coefficients,
        unit: 0,
        dual_perm: dual.clone(),
    };
    let underlying = ModularData::new(labels, m, s, theta, dual)?;
    let pi = a
        .basic_subset
        .iter()
        .flat_map(|&x| (0..nb).map(move |w| idx(x, w)))
        .collect();
    SuperModularData::with_basic_subset(underlying, fusion, pi)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperGaloisProfile {
    pub ambient_modulus: u64,
    /// (a, σ̂_a on positions of Π) for the unit generators a.
    pub generators: Vec<(u64, Permutation)>,
    /// Distinct elements of G_C with their smallest inducing residue.
    pub elements: Vec<(u64, Permutation)>,
    pub group_order: usize,
    /// Orbits on positions of Π.
    pub orbits: Vec<Vec<usize>>,
    pub transitive: bool,
}

fn compose(p: &[usize], q: &[usize]) -> Permutation {
    q.iter().map(|&x| p[x]).collect()
}

/// σ̂_a on Π: σ_a(Ŝ_{X,Y}/Ŝ_{1,Y}) = Ŝ_{X,σ̂(Y)}/Ŝ_{1,σ̂(Y)} for all X.
pub fn super_galois_permutation(c: &SuperModularData, a: u64) -> Result<Permutation> {
    let s = &c.reduced_s;
    let n = s.len();
    let gs: Vec<Vec<CyclotomicNumber>> = s
        .iter()
        .map(|row| row.iter().map(|x| x.galois(a as i64)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let mut perm = Vec::with_capacity(n);
    for y in 0..n {
        let hits: Vec<usize> = (0..n)
            .filter(|&y2| (0..n).all(|x| gs[x][y].mul(&s[0][y2]) == s[x][y2].mul(&gs[0][y])))
            .collect();
        match hits.as_slice() {
            &[y2] => perm.push(y2),
            _ => {
                return Err(Error::NoMatch(format!(
                    "σ_{a} of reduced column {y} matches {} columns",
                    hits.len()
                )))
            }
        }
    }
    Ok(perm)
}

pub fn super_galois_orbits(c: &SuperModularData) -> Result<SuperGaloisProfile> {
    let m = c.underlying.conductor as u64;
    let n = c.basic_subset.len();
    let generators: Vec<(u64, Permutation)> = unit_generators(m)
        .into_iter()
        .map(|g| Ok((g, super_galois_permutation(c, g)?)))
        .collect::<Result<_>>()?;
    let mut table: BTreeMap<u64, Permutation> = BTreeMap::new();
    table.insert(1 % m.max(2), (0..n).collect());
    let mut queue: Vec<u64> = table.keys().copied().collect();
    while let Some(a) = queue.pop() {
        let pa = table[&a].clone();
        for (g, pg) in &generators {
            let b = modn((a * g) as i64, m);
            if let std::collections::btree_map::Entry::Vacant(e) = table.entry(b) {
                e.insert(compose(pg, &pa));
                queue.push(b);
            }
        }
    }
    let mut elements: BTreeMap<Permutation, u64> = BTreeMap::new();
    for (a, p) in table {
        elements.entry(p).or_insert(a);
    }
    let perms: Vec<&Permutation> = elements.keys().collect();
    let orbits = orbits_of(n, &perms);
    Ok(SuperGaloisProfile {
        ambient_modulus: m,
        generators,
        group_order: elements.len(),
        transitive: orbits.len() == 1,
        orbits,
        elements: elements.into_iter().map(|(p, a)| (a, p)).collect(),
    })
}

/// Transitivity, cross-checked against a second basic subset.
pub fn is_super_transitive(c: &SuperModularData) -> Result<bool> {
    let p = super_galois_orbits(c)?;
    if c.basic_subset.len() > 1 {
        let q = super_galois_orbits(&c.alternative_basic_subset()?)?;
        if p.orbits != q.orbits {
            return Err(Error::Inconsistent(
                "orbit structure depends on the basic subset".into(),
            ));
        }
    }
    Ok(p.transitive)
}

fn is_pointed(f: &FusionRing) -> bool {
    (0..f.rank).all(|x| f.support(x, f.dual_perm[x]) == [f.unit] && f.get(x, f.dual_perm[x], f.unit) == 1)
}

/// Fusion subcategories D ∋ f whose Müger center is exactly {1, f}.
pub fn super_modular_subcategories(c: &SuperModularData) -> Vec<Vec<usize>> {
    let center = vec![0, c.fermion];
    all_fusion_subcategories(&c.fusion)
        .into_iter()
        .filter(|d| d.contains(&c.fermion) && centralizer_within(&c.underlying, d, d) == center)
        .collect()
}

/// No super-modular subcategory other than sVec and C, and not pointed.
pub fn is_s_simple(c: &SuperModularData) -> bool {
    !is_pointed(&c.fusion)
        && super_modular_subcategories(c)
            .iter()
            .all(|d| d.len() == 2 || d.len() == c.underlying.rank)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitResult {
    /// A modular subcategory D with Irr = Irr(D) ⊔ f⊗Irr(D).
    Split(Vec<usize>),
    NonSplit,
    Undetermined,
}

pub fn split_check(c: &SuperModularData) -> SplitResult {
    let r = c.underlying.rank;
    if r > SPLIT_SEARCH_MAX_RANK {
        return SplitResult::Undetermined;
    }
    all_fusion_subcategories(&c.fusion)
        .into_iter()
        .find(|d| 2 * d.len() == r && is_modular_subcategory(&c.underlying, d))
        .map_or(SplitResult::NonSplit, SplitResult::Split)
}

/// Restriction to a super-modular subcategory.
pub fn restrict_super(c: &SuperModularData, d: &[usize]) -> Result<SuperModularData> {
    SuperModularData::new(c.underlying.restrict(d)?, c.fusion.restrict(d))
}

/// The s-simple super-modular subcategories of C.
pub fn s_simple_subcategories(c: &SuperModularData) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for d in super_modular_subcategories(c) {
        if d.len() > 2 && is_s_simple(&restrict_super(c, &d)?) {
            out.push(d);
        }
    }
    Ok(out)
}

/// Decomposition into s-simple factors: the s-simple subcategories must
/// centralize each other and their reduced ranks must multiply to |Π|.
pub fn super_factorization(c: &SuperModularData) -> Result<Vec<Vec<usize>>> {
    let factors = s_simple_subcategories(c)?;
    let product: usize = factors.iter().map(|d| d.len() / 2).product();
    if product != c.basic_subset.len() {
        return Err(Error::FactorizationFailure(format!(
            "reduced ranks of s-simple factors multiply to {product}, expected {}",
            c.basic_subset.len()
        )));
    }
    for (i, d) in factors.iter().enumerate() {
        for e in &factors[i + 1..] {
            if centralizer_within(&c.underlying, e, d).len() != e.len() {
                return Err(Error::FactorizationFailure(format!(
                    "factors {d:?} and {e:?} do not centralize each other"
                )));
            }
        }
    }
    Ok(factors)
}

/// Exact structure checks for transitive super-modular data.
pub fn super_structure_checks(c: &SuperModularData) -> Result<Report> {
    let mut rep = Report::new("super-modular structure");
    let g = super_galois_orbits(c)?;
    let s = &c.reduced_s;
    let n = s.len();
    let mut units_ok = true;
    for row in s {
        for x in row {
            units_ok &= x.is_real() && is_algebraic_unit_pm1(x)?;
        }
    }
    rep.push("reduced S entries totally real units", units_ok, "");
    let squares: Vec<CyclotomicNumber> = s[0].iter().map(|d| d.mul(d)).collect();
    let distinct = (0..n).all(|i| (i + 1..n).all(|j| squares[i] != squares[j]));
    rep.push("distinct d^2 on basic subset", distinct, "");
    let dim = c.reduced_dim();
    let mut stab_ok = true;
    let mut unit_dims = true;
    for (a, p) in &g.elements {
        let fixes = dim.galois(*a as i64)? == dim;
        stab_ok &= !fixes || p.iter().enumerate().all(|(i, &x)| i == x);
        unit_dims &= is_algebraic_unit_pm1(&s[0][p[0]])?;
    }
    rep.push("stabilizer of dim trivial", stab_ok, "");
    rep.push("d of the image of the unit is a unit", unit_dims, "");
    rep.push("|G_C| = |basic subset|", g.group_order == n, format!("|G_C| = {}, |Π| = {n}", g.group_order));
    let center = vec![0, c.fermion];
    let mut subs_ok = true;
    for d in all_fusion_subcategories(&c.fusion) {
        let z = centralizer_within(&c.underlying, &d, &d);
        subs_ok &= z == [0] || z == center;
    }
    rep.push("fusion subcategories modular or super-modular", subs_ok, "");
    Ok(rep)
}

/// Transitivity of A^{(0)}_{4k+2,l} for k ≤ kmax against the power-of-two rule,
/// structure checks for the transitive members, split products and a small
/// super factorization.
pub fn verify_super_theorems(kmax: u32) -> Result<Report> {
    let mut rep = Report::new(format!("super-modular theorems, k ≤ {kmax}"));
    for k in 1..=kmax {
        let modulus = 8 * (k as i64 + 1);
        let ls: Vec<i64> = (1..modulus)
            .filter(|&l| crate::numeric::ntheory::gcd(l, modulus) == 1)
            .take(2)
            .collect();
        for l in ls {
            let c = build_sl2_super(k, l)?;
            let transitive = is_super_transitive(&c)?;
            let expected = (k + 1).is_power_of_two();
            rep.push(
                format!("k = {k}, l = {l}: transitive iff k+1 is a power of 2"),
                transitive == expected,
                format!("transitive {transitive}"),
            );
            rep.push(format!("k = {k}, l = {l}: s-simple"), is_s_simple(&c), "");
            rep.push(
                format!("k = {k}, l = {l}: non-split"),
                split_check(&c) == SplitResult::NonSplit,
                "",
            );
            if transitive {
                rep.absorb(&format!("k = {k}, l = {l}"), super_structure_checks(&c)?);
            }
        }
    }
    let fib = fibonacci();
    for eps in [1i8, -1] {
        let c = split_super(&fib, eps)?;
        rep.push(format!("Fib ⊠ sVec_{eps}: transitive"), is_super_transitive(&c)?, "");
        rep.push(
            format!("Fib ⊠ sVec_{eps}: split"),
            matches!(split_check(&c), SplitResult::Split(_)),
            "",
        );
    }
    let prod = svec_product(&split_super(&fib, 1)?, &build_sl2_super(1, 1)?)?;
    rep.push("(Fib ⊠ sVec) ⊠_sVec A(6,1): transitive", is_super_transitive(&prod)?, "");
    match super_factorization(&prod) {
        Ok(factors) => {
            let sizes: Vec<usize> = factors.iter().map(|d| d.len()).collect();
            rep.push("super factorization into two s-simple factors", sizes == [4, 4], format!("{sizes:?}"));
        }
        Err(e) => rep.push("super factorization into two s-simple factors", false, e.to_string()),
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperSummary {
    pub epsilon: i8,
    pub pi_labels: Vec<String>,
    #[serde(rename = "reduced_S")]
    pub reduced_s: Matrix,
    pub transitive: bool,
    pub s_simple: bool,
    pub split: SplitResult,
}

pub fn summarize(c: &SuperModularData) -> Result<SuperSummary> {
    Ok(SuperSummary {
        epsilon: c.epsilon,
        pi_labels: c.pi_labels(),
        reduced_s: c.reduced_s.clone(),
        transitive: is_super_transitive(c)?,
        s_simple: is_s_simple(c),
        split: split_check(c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2(m: u32) -> CyclotomicNumber {
        let z = CyclotomicNumber::zeta(8, 1);
        z.add(&z.pow(7)).promote(m)
    }

    #[test]
    fn reduced_matrix_k1() {
        let c = build_sl2_super(1, 1).unwrap();
        let m = c.underlying.conductor;
        let a = CyclotomicNumber::one(m).add(&sqrt2(m));
        let one = CyclotomicNumber::one(m);
        assert_eq!(c.reduced_s, vec![vec![one.clone(), a.clone()], vec![a, one.neg()]]);
        assert_eq!(c.pi_labels(), vec!["V0", "V2"]);
        assert_eq!((c.fermion, c.epsilon), (3, 1));
        let g = super_galois_orbits(&c).unwrap();
        assert_eq!(g.group_order, 2);
        assert!(g.transitive);
    }

    #[test]
    fn k_zero_is_svec() {
        let c = build_sl2_super(0, 1).unwrap();
        assert_eq!(c.underlying.rank, 2);
        assert!(c.underlying.dims().iter().all(|d| sign_of(d).is_some()));
        assert!(!is_s_simple(&c));
    }

    #[test]
    fn fermions() {
        for k in 1..=4 {
            let c = build_sl2_super(k, 1).unwrap();
            assert_eq!(c.underlying.labels[c.fermion], format!("V{}", 4 * k + 2));
        }
        let fib = fibonacci();
        let ff = verlinde_fusion(&fib).unwrap();
        assert_eq!(detect_fermion(&fib, &ff), Err(Error::NoFermion));
        for eps in [1, -1] {
            let c = split_super(&fib, eps).unwrap();
            assert_eq!((c.fermion, c.epsilon), (1, eps));
        }
    }

    #[test]
    fn transitivity_pattern() {
        for (k, expected) in [(1, true), (2, false), (3, true), (4, false)] {
            assert_eq!(is_super_transitive(&build_sl2_super(k, 1).unwrap()).unwrap(), expected, "k = {k}");
        }
        let c = build_sl2_super(3, 1).unwrap();
        assert_eq!(super_galois_orbits(&c).unwrap().group_order, 4);
        assert!(super_structure_checks(&c).unwrap().passed());
    }

    #[test]
    fn products() {
        let a = build_sl2_super(1, 1).unwrap();
        let p = svec_product(&a, &a).unwrap();
        assert_eq!(p.reduced_s, matrix::kron(&a.reduced_s, &a.reduced_s));
        assert_eq!(super_galois_orbits(&p).unwrap().orbits.len(), 2);
        let unit = svec_super(1).unwrap();
        let q = svec_product(&a, &unit).unwrap();
        assert_eq!(q.reduced_s, a.reduced_s);
        assert_eq!(q.underlying.s, a.underlying.s);
        assert!(matches!(
            svec_product(&a, &svec_super(-1).unwrap()),
            Err(Error::EpsilonMismatch(1, -1))
        ));
        assert!(p.fusion.check_axioms().is_ok());
    }

    #[test]
    fn simplicity_and_splitting() {
        for k in 1..=3 {
            let c = build_sl2_super(k, 1).unwrap();
            assert!(is_s_simple(&c), "k = {k}");
            assert_eq!(split_check(&c), SplitResult::NonSplit);
        }
        let c = split_super(&fibonacci(), -1).unwrap();
        assert_eq!(split_check(&c), SplitResult::Split(vec![0, 2]));
        assert!(is_super_transitive(&c).unwrap());
    }

    #[test]
    fn theorems_small() {
        let rep = verify_super_theorems(3).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
    }
}
