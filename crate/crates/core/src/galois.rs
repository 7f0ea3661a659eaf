//! Galois action on simple objects: the permutations σ̂_a, the group G_C they
//! form, orbits, regularity and the characteristic 2-group H_C.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular_data::{fp_dims, ModularData};
use crate::numeric::ntheory::{gcd, lcm, modn, unit_generators, units};
use crate::numeric::CyclotomicNumber;
use crate::report::Report;

pub type Permutation = Vec<usize>;

/// lcm of the data conductor and ord(T); every σ̂ factors through its units.
pub fn ambient_modulus(c: &ModularData) -> u64 {
    lcm(c.conductor as u64, c.ord_t())
}

fn compose(p: &[usize], q: &[usize]) -> Permutation {
    q.iter().map(|&x| p[x]).collect()
}

fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x)
}

/// σ̂_a: the unique Y′ with σ_a(S_{X,Y}/d_Y) = S_{X,Y′}/d_{Y′} for all X.
///
/// Since Q(S) ⊂ Q_N with N = ord(T), only a mod N matters; a residue coprime
/// to N is first moved to a unit of the ambient modulus in the same class.
pub fn galois_permutation(c: &ModularData, a: i64) -> Result<Permutation> {
    let m = ambient_modulus(c);
    let n = c.ord_t();
    if gcd(a, n as i64) != 1 {
        return Err(Error::NotCoprime { a, m: n });
    }
    let a = (0..m as i64)
        .map(|k| modn(a, n) as i64 + k * n as i64)
        .find(|&b| gcd(b, m as i64) == 1)
        .expect("units surject onto units of a divisor");
    let r = c.rank;
    let ar = modn(a, c.conductor as u64) as i64;
    let s = &c.s;
    let approx: Vec<Vec<Complex64>> = s.iter().map(|row| row.iter().map(|x| x.approx()).collect()).collect();
    // ratio[Y][X] = S_{X,Y}/d_Y
    let ratio: Vec<Vec<Complex64>> = (0..r)
        .map(|y| (0..r).map(|x| approx[x][y] / approx[0][y]).collect())
        .collect();
    let gs: Vec<Vec<CyclotomicNumber>> = s
        .iter()
        .map(|row| row.iter().map(|x| x.galois(ar)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let exact_match = |y: usize, y2: usize| {
        (0..r).all(|x| gs[x][y].mul(&s[0][y2]) == s[x][y2].mul(&gs[0][y]))
    };
    let mut perm = vec![usize::MAX; r];
    for y in 0..r {
        let gd = gs[0][y].approx();
        let v: Vec<Complex64> = (0..r).map(|x| gs[x][y].approx() / gd).collect();
        let scale = v.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let close: Vec<usize> = (0..r)
            .filter(|&y2| (0..r).all(|x| (v[x] - ratio[y2][x]).norm() < 1e-7 * scale))
            .collect();
        let mut hits: Vec<usize> = close.iter().copied().filter(|&y2| exact_match(y, y2)).collect();
        if hits.is_empty() {
            hits = (0..r).filter(|y2| !close.contains(y2) && exact_match(y, *y2)).collect();
        }
        match hits.as_slice() {
            [y2] => perm[y] = *y2,
            [] => return Err(Error::NoMatch(format!("no column matches σ_{a} of column {y}"))),
            _ => {
                return Err(Error::NoMatch(format!(
                    "columns {hits:?} all match σ_{a} of column {y}"
                )))
            }
        }
    }
    let mut seen = vec![false; r];
    for &y in &perm {
        if std::mem::replace(&mut seen[y], true) {
            return Err(Error::NoMatch(format!("σ_{a} is not a permutation")));
        }
    }
    Ok(perm)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisProfile {
    pub ambient_modulus: u64,
    /// (a, σ̂_a) for every unit residue a, ascending.
    pub action_table: Vec<(u64, Permutation)>,
    pub group_order: usize,
    pub orbits: Vec<Vec<usize>>,
    pub transitive: bool,
    pub regular: bool,
    pub h2_group: Vec<Permutation>,
}

impl GaloisProfile {
    pub fn perm(&self, a: i64) -> Option<&Permutation> {
        let a = modn(a, self.ambient_modulus);
        self.action_table
            .binary_search_by_key(&a, |(b, _)| *b)
            .ok()
            .map(|i| &self.action_table[i].1)
    }

    /// Distinct elements of G_C, sorted.
    pub fn elements(&self) -> Vec<Permutation> {
        let set: BTreeSet<&Permutation> = self.action_table.iter().map(|(_, p)| p).collect();
        set.into_iter().cloned().collect()
    }

    /// Smallest residue inducing each element of G_C.
    pub fn representatives(&self) -> BTreeMap<Permutation, u64> {
        let mut out = BTreeMap::new();
        for (a, p) in &self.action_table {
            out.entry(p.clone()).or_insert(*a);
        }
        out
    }

    /// Smallest residue a with σ̂_a(1) = x, if any.
    pub fn residue_sending_unit_to(&self, x: usize) -> Option<u64> {
        self.action_table.iter().find(|(_, p)| p[0] == x).map(|(a, _)| *a)
    }
}

/// σ̂_a for every unit a of the ambient modulus, obtained exactly on
/// generators of the unit group and extended multiplicatively.
pub fn action_table(c: &ModularData) -> Result<Vec<(u64, Permutation)>> {
    let m = ambient_modulus(c);
    let id: Permutation = (0..c.rank).collect();
    if m <= 2 {
        return Ok(vec![(1 % m, id)]);
    }
    let gens: Vec<(u64, Permutation)> = unit_generators(m)
        .into_iter()
        .map(|g| Ok((g, galois_permutation(c, g as i64)?)))
        .collect::<Result<_>>()?;
    let mut table: BTreeMap<u64, Permutation> = BTreeMap::new();
    table.insert(1, id);
    let mut queue = vec![1u64];
    while let Some(a) = queue.pop() {
        let pa = table[&a].clone();
        for (g, pg) in &gens {
            let b = (a as u128 * *g as u128 % m as u128) as u64;
            if let std::collections::btree_map::Entry::Vacant(e) = table.entry(b) {
                e.insert(compose(pg, &pa));
                queue.push(b);
            }
        }
    }
    Ok(table.into_iter().collect())
}

pub(crate) fn orbits_of(rank: usize, perms: &[&Permutation]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..rank).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for p in perms {
        for x in 0..rank {
            let (a, b) = (find(&mut parent, x), find(&mut parent, p[x]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..rank {
        let root = find(&mut parent, x);
        groups.entry(root).or_default().push(x);
    }
    groups.into_values().collect()
}

pub fn galois_group(c: &ModularData) -> Result<GaloisProfile> {
    let table = action_table(c)?;
    let elements: BTreeSet<&Permutation> = table.iter().map(|(_, p)| p).collect();
    let perms: Vec<&Permutation> = elements.iter().copied().collect();
    let orbits = orbits_of(c.rank, &perms);
    let transitive = orbits.len() == 1;
    let regular = transitive
        && perms
            .iter()
            .filter(|p| !is_identity(p))
            .all(|p| p.iter().enumerate().all(|(i, &x)| i != x));
    let group_order = elements.len();
    let mut profile = GaloisProfile {
        ambient_modulus: ambient_modulus(c),
        action_table: table,
        group_order,
        orbits,
        transitive,
        regular,
        h2_group: Vec::new(),
    };
    profile.h2_group = characteristic_two_group_with(c, &profile)?;
    Ok(profile)
}

pub fn is_transitive(c: &ModularData) -> Result<bool> {
    Ok(galois_group(c)?.transitive)
}

pub fn check_regularity(c: &ModularData) -> Result<bool> {
    Ok(galois_group(c)?.regular)
}

/// Image in G_C of {a : a² ≡ 1 (mod n)}, for a lift of level n.
pub fn two_group_at_level(profile: &GaloisProfile, n: u64) -> Vec<Permutation> {
    let m = profile.ambient_modulus;
    let l = lcm(m, n.max(1));
    let mut out = BTreeSet::new();
    for a in units(l) {
        if (a as u128 * a as u128) % n.max(1) as u128 == 1 % n.max(1) as u128 {
            if let Some(p) = profile.perm(a as i64) {
                out.insert(p.clone());
            }
        }
    }
    out.into_iter().collect()
}

fn characteristic_two_group_with(c: &ModularData, profile: &GaloisProfile) -> Result<Vec<Permutation>> {
    let n = c.ord_t();
    if n % 4 != 0 {
        return Ok(two_group_at_level(profile, n));
    }
    let level = crate::sl2z::lift_projective(c)?[0].level;
    Ok(two_group_at_level(profile, level))
}

/// H_C: through ord(T) when 4 ∤ ord(T), otherwise through the level of a lift.
pub fn characteristic_two_group(c: &ModularData) -> Result<Vec<Permutation>> {
    Ok(galois_group(c)?.h2_group)
}

/// H_C computed through the level of each of the 12 lifts; all must agree.
pub fn characteristic_two_group_via_lifts(c: &ModularData) -> Result<Vec<Permutation>> {
    let profile = galois_group(c)?;
    let lifts = crate::sl2z::lift_projective(c)?;
    let first = two_group_at_level(&profile, lifts[0].level);
    for rho in &lifts[1..] {
        if two_group_at_level(&profile, rho.level) != first {
            return Err(Error::Inconsistent(format!(
                "H_C differs between lifts of level {} and {}",
                lifts[0].level, rho.level
            )));
        }
    }
    Ok(first)
}

/// Product of all conjugates σ_a(x) over the units of x's conductor.
pub fn conjugate_product(x: &CyclotomicNumber) -> Result<CyclotomicNumber> {
    let m = x.conductor();
    let mut acc = CyclotomicNumber::one(m);
    for a in units(m as u64) {
        acc = acc.mul(&x.galois(a as i64)?);
    }
    Ok(acc)
}

pub fn is_algebraic_unit_pm1(x: &CyclotomicNumber) -> Result<bool> {
    let n = conjugate_product(x)?;
    Ok(n.is_one() || n.neg().is_one())
}

/// Structural consequences of transitivity, checked exactly.
pub fn transitive_structure_checks(c: &ModularData) -> Result<Report> {
    let profile = galois_group(c)?;
    let mut rep = Report::new("transitive structure");
    let r = c.rank;
    rep.push("transitive", profile.transitive, format!("{} orbits", profile.orbits.len()));
    if !profile.transitive {
        return Ok(rep);
    }
    let residues: Vec<u64> = (0..r)
        .map(|x| profile.residue_sending_unit_to(x).expect("transitive action"))
        .collect();
    let ratio_ok = (0..r).all(|x| {
        (0..r).all(|y| {
            let a = residues[x] as i64 % c.conductor as i64;
            let b = residues[y] as i64 % c.conductor as i64;
            let lhs = c.dim(y).galois(a).map(|g| g.mul(c.dim(x)));
            let rhs = c.dim(x).galois(b).map(|g| g.mul(c.dim(y)));
            matches!((lhs, rhs), (Ok(l), Ok(rr)) if l == c.s[x][y] && rr == c.s[x][y])
        })
    });
    rep.push("S from dimensions", ratio_ok, "S_{σ,μ} = σ(d_μ)d_σ = μ(d_σ)d_μ");
    rep.push("self-dual", c.dual_perm.iter().enumerate().all(|(i, &d)| i == d), "");
    let squares: Vec<CyclotomicNumber> = c.dims().iter().map(|d| d.mul(d)).collect();
    let distinct = (0..r).all(|x| (x + 1..r).all(|y| squares[x] != squares[y]));
    rep.push("distinct d^2", distinct, "");
    let invertibles: Vec<usize> = (1..r).filter(|&x| squares[x].is_one()).collect();
    rep.push("no nontrivial invertibles", invertibles.is_empty(), format!("{invertibles:?}"));
    let dim = c.global_dim();
    let mut stab = 0;
    for (p, a) in profile.representatives() {
        if dim.galois(modn(a as i64, c.conductor as u64) as i64)? == dim {
            stab += 1;
            if !is_identity(&p) {
                break;
            }
        }
    }
    rep.push("stabilizer of dim trivial", stab == 1, "");
    let mut units_ok = true;
    for d in c.dims() {
        units_ok &= d.is_real() && is_algebraic_unit_pm1(&d)?;
    }
    rep.push("dims are totally real units", units_ok, "");
    rep.push("regular", profile.regular && profile.group_order == r, format!("|G| = {}", profile.group_order));
    let fp = fp_dims(c)?;
    let fp_ok = match fp.realizer {
        Some(y) => {
            let a = residues[y] as i64 % c.conductor as i64;
            let mut ok = true;
            for x in 0..r {
                let v = c.dim(x).galois(a)?.approx();
                ok &= (v.re - fp.values[x]).abs() < 1e-8 * fp.values[x].max(1.0);
            }
            ok
        }
        None => false,
    };
    rep.push("FP dimensions realized by a conjugate", fp_ok, format!("{:?}", fp.realizer));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular_data::*;

    fn z5() -> ModularData {
        build_pointed(&QuadraticForm::diagonal(&[5], 5, &[1])).unwrap()
    }

    #[test]
    fn fibonacci_group() {
        let fib = fibonacci();
        assert_eq!(galois_permutation(&fib, 2).unwrap(), vec![1, 0]);
        assert_eq!(galois_permutation(&fib, 1).unwrap(), vec![0, 1]);
        let g = galois_group(&fib).unwrap();
        assert_eq!(g.group_order, 2);
        assert!(g.transitive && g.regular);
        assert_eq!(g.h2_group.len(), 1);
        assert!(transitive_structure_checks(&fib).unwrap().passed());
    }

    #[test]
    fn pointed_z5() {
        let c = z5();
        let p = galois_permutation(&c, 2).unwrap();
        // σ_2(ζ^{-2ab}) = ζ^{-4ab}: column b goes to column 2b.
        for b in 0..5 {
            assert_eq!(p[b], (2 * b) % 5);
        }
        let g = galois_group(&c).unwrap();
        assert_eq!(g.orbits, vec![vec![0], vec![1, 2, 3, 4]]);
        assert_eq!(g.group_order, 4);
        assert!(!g.transitive);
        assert_eq!(g.h2_group.len(), 2);
    }

    #[test]
    fn trivial_and_semion() {
        let g = galois_group(&trivial()).unwrap();
        assert_eq!(g.group_order, 1);
        assert!(g.transitive);
        let semion = build_pointed(&QuadraticForm::diagonal(&[2], 4, &[1])).unwrap();
        assert_eq!(characteristic_two_group(&semion).unwrap().len(), 1);
        assert!(transitive_structure_checks(&trivial()).unwrap().passed());
    }

    #[test]
    fn homomorphism_exhaustive() {
        for c in [fibonacci(), z5(), build_sl2(4, 1).unwrap(), build_sl2_adjoint(7, 5).unwrap()] {
            let m = ambient_modulus(&c);
            assert!(m <= 120);
            let direct: BTreeMap<u64, Permutation> = units(m)
                .into_iter()
                .map(|a| (a, galois_permutation(&c, a as i64).unwrap()))
                .collect();
            let table = action_table(&c).unwrap();
            for (a, p) in &table {
                assert_eq!(&direct[a], p);
            }
            for (&a, pa) in &direct {
                for (&b, pb) in &direct {
                    assert_eq!(direct[&(a * b % m)], compose(pa, pb));
                }
            }
        }
    }

    #[test]
    fn prime_family_is_transitive() {
        for p in [5u64, 7, 11, 13] {
            for l in units(2 * p) {
                let c = build_sl2_adjoint(p as u32 - 2, l as i64).unwrap();
                let g = galois_group(&c).unwrap();
                assert!(g.transitive && g.regular, "p = {p}, l = {l}");
                assert_eq!(g.group_order as u64, (p - 1) / 2);
            }
        }
    }

    #[test]
    fn conjugate_product_is_not_transitive() {
        let c = deligne_product(&fibonacci(), &build_sl2_adjoint(3, 3).unwrap());
        let g = galois_group(&c).unwrap();
        assert!(!g.transitive);
        assert_eq!(g.orbits.len(), 2);
    }

    #[test]
    fn non_transitive_structure_fails() {
        let c = build_sl2(3, 1).unwrap();
        let rep = transitive_structure_checks(&c).unwrap();
        assert!(!rep.passed());
        // Invertible V_3 has d² = 1.
        assert_eq!(c.dim(3).mul(c.dim(3)), CyclotomicNumber::one(c.conductor));
    }

    #[test]
    fn two_group_routes_agree() {
        for c in [fibonacci(), z5(), build_sl2_adjoint(5, 1).unwrap()] {
            assert_eq!(
                characteristic_two_group(&c).unwrap(),
                characteristic_two_group_via_lifts(&c).unwrap()
            );
        }
    }

    #[test]
    fn dims_of_transitive_examples_are_units() {
        for k in [3u32, 5, 9, 11] {
            let c = build_sl2_adjoint(k, 1).unwrap();
            for d in c.dims() {
                assert!(is_algebraic_unit_pm1(&d).unwrap());
            }
        }
    }
}
