//! Structure theorems for transitive modular data, checked exactly, and the
//! enumeration of transitive categories by ord(T).

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{galois_group, GaloisProfile};
use crate::modular_data::{
    all_fusion_subcategories, build_sl2_adjoint, data_equivalent, deligne_product,
    is_modular_subcategory, is_prime, prime_factorization_among, trivial, validate_modular,
    verlinde_fusion, ModularData,
};
use crate::numeric::ntheory::{factorize, is_prime as is_prime_number, is_squarefree, units};
use crate::numeric::CyclotomicNumber;
use crate::report::Report;
use crate::sl2z::{is_irreducible, is_minimal, lift_projective};

/// Largest product rank `classify_transitive` will build.
pub const MAX_CATALOG_RANK: usize = 64;
/// Largest number of catalog entries `classify_transitive` will build.
pub const MAX_CATALOG_ENTRIES: usize = 5000;

pub fn verify_transitivity_theorems(c: &ModularData) -> Result<Report> {
    let mut rep = Report::new("transitivity theorems");
    let profile = galois_group(c)?;
    rep.push("transitive", profile.transitive, format!("{} orbits", profile.orbits.len()));
    if !profile.transitive {
        return Ok(rep);
    }
    let n = c.ord_t();
    let primes: Vec<u64> = factorize(n).iter().map(|&(p, _)| p).collect();
    rep.push("ord(T) odd", n % 2 == 1, format!("ord(T) = {n}"));
    rep.push("ord(T) square-free", is_squarefree(n), format!("ord(T) = {n}"));
    rep.push("prime factors > 3", primes.iter().all(|&p| p > 3), format!("{primes:?}"));
    rep.push("H_C trivial", profile.h2_group.len() == 1, format!("|H_C| = {}", profile.h2_group.len()));
    let lifts = lift_projective(c)?;
    let bad: Vec<usize> = lifts
        .iter()
        .enumerate()
        .filter(|(_, r)| is_minimal(r).is_none() || !is_irreducible(r))
        .map(|(i, _)| i)
        .collect();
    rep.push("lifts minimal and irreducible", bad.is_empty(), format!("failing lifts {bad:?}"));
    let f = verlinde_fusion(c)?;
    let mut sub_ok = true;
    let mut detail = String::new();
    for d in all_fusion_subcategories(&f) {
        let modular = is_modular_subcategory(c, &d);
        let transitive = modular && galois_group(&c.restrict(&d)?)?.transitive;
        if !(modular && transitive) {
            sub_ok = false;
            detail = format!("subcategory {d:?}: modular {modular}, transitive {transitive}");
            break;
        }
    }
    rep.push("fusion subcategories modular and transitive", sub_ok, detail);
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductTransitivity {
    pub order_a: usize,
    pub order_b: usize,
    pub order_product: usize,
    /// [F:Q] = |G_A|·|G_B| / |G_{A⊠B}|.
    pub field_degree: usize,
    pub orbits_a: usize,
    pub orbits_b: usize,
    pub orbits_product: usize,
    /// |Orb(A⊠B)| = [F:Q] (asserted when A and B are transitive).
    pub orbit_law: bool,
    /// |Orb(A)|·|Orb(B)| ≤ |Orb(A⊠B)|.
    pub orbit_bound: bool,
}

pub fn product_transitivity(a: &ModularData, b: &ModularData) -> Result<ProductTransitivity> {
    let ga = galois_group(a)?;
    let gb = galois_group(b)?;
    let gab = galois_group(&deligne_product(a, b))?;
    let num = ga.group_order * gb.group_order;
    if num % gab.group_order != 0 {
        return Err(Error::Inconsistent(format!(
            "|G_A||G_B| = {num} is not a multiple of |G_AB| = {}",
            gab.group_order
        )));
    }
    let field_degree = num / gab.group_order;
    let transitive = ga.transitive && gb.transitive;
    Ok(ProductTransitivity {
        order_a: ga.group_order,
        order_b: gb.group_order,
        order_product: gab.group_order,
        field_degree,
        orbits_a: ga.orbits.len(),
        orbits_b: gb.orbits.len(),
        orbits_product: gab.orbits.len(),
        orbit_law: !transitive || gab.orbits.len() == field_degree,
        orbit_bound: ga.orbits.len() * gb.orbits.len() <= gab.orbits.len(),
    })
}

pub fn check_prime_transitive_catalog(p: u64) -> Result<Report> {
    if p <= 3 || !is_prime_number(p) {
        return Err(Error::InvalidParameter(format!("p = {p} must be a prime > 3")));
    }
    let mut rep = Report::new(format!("prime transitive catalog, p = {p}"));
    let mut members = Vec::new();
    for l in units(2 * p) {
        let c = build_sl2_adjoint(p as u32 - 2, l as i64)?;
        let g = galois_group(&c)?;
        rep.push(format!("l = {l}: modular"), validate_modular(&c).passed(), "");
        rep.push(format!("l = {l}: prime"), is_prime(&c)?, "");
        rep.push(
            format!("l = {l}: transitive and regular"),
            g.transitive && g.regular,
            format!("{} orbits", g.orbits.len()),
        );
        rep.push(
            format!("l = {l}: |G_C| = (p-1)/2"),
            g.group_order as u64 == (p - 1) / 2,
            format!("|G_C| = {}", g.group_order),
        );
        rep.push(format!("l = {l}: ord(T) = p"), c.ord_t() == p, format!("ord(T) = {}", c.ord_t()));
        let alpha = c.anomaly(1)?;
        let order = alpha.as_root_of_unity().map(|(_, n)| n);
        rep.push(
            format!("l = {l}: anomaly order p or 2p"),
            order == Some(p) || order == Some(2 * p),
            format!("{order:?}"),
        );
        members.push((l, c, alpha));
    }
    let mut equivalent = Vec::new();
    let mut same_anomaly = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if data_equivalent(&members[i].1, &members[j].1).is_some() {
                equivalent.push((members[i].0, members[j].0));
            }
            if members[i].2 == members[j].2 {
                same_anomaly.push((members[i].0, members[j].0));
            }
        }
    }
    rep.push("pairwise data-inequivalent", equivalent.is_empty(), format!("{equivalent:?}"));
    rep.push("anomalies pairwise distinct", same_anomaly.is_empty(), format!("{same_anomaly:?}"));
    rep.push(
        "count = phi(2p)",
        members.len() as u64 == p - 1,
        format!("{} categories", members.len()),
    );
    Ok(rep)
}

/// Prime factorization of a transitive category: every factor prime and
/// transitive, supports independent of the enumeration order.
pub fn unique_factorization_check(c: &ModularData, seeds: &[u64]) -> Result<Report> {
    let mut rep = Report::new("unique prime factorization");
    let f = verlinde_fusion(c)?;
    let subcats = all_fusion_subcategories(&f);
    let natural: Vec<usize> = (0..c.rank).collect();
    let factors = prime_factorization_among(c, &subcats, &natural)?;
    let sizes: Vec<usize> = factors.iter().map(|d| d.len()).collect();
    rep.push("factorization found", true, format!("factor ranks {sizes:?}"));
    for d in &factors {
        let sub = c.restrict(d)?;
        rep.push(format!("factor {d:?} prime"), is_prime(&sub)?, "");
        rep.push(format!("factor {d:?} transitive"), galois_group(&sub)?.transitive, "");
    }
    let reference: BTreeSet<Vec<usize>> = factors.iter().cloned().collect();
    for &seed in seeds {
        let mut order = natural.clone();
        order[1..].shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let other: BTreeSet<Vec<usize>> =
            prime_factorization_among(c, &subcats, &order)?.into_iter().collect();
        rep.push(format!("seed {seed}: same supports"), other == reference, "");
    }
    Ok(rep)
}

/// Deligne product of A^{(0)}_{p−2, l_p} over the given (p, l_p).
pub fn product_category(primes: &[u64], ls: &[u64]) -> Result<ModularData> {
    let mut c = trivial();
    for (&p, &l) in primes.iter().zip(ls) {
        c = deligne_product(&c, &build_sl2_adjoint(p as u32 - 2, l as i64)?);
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    #[serde(rename = "N")]
    pub n: u64,
    pub primes: Vec<u64>,
    pub ls: Vec<u64>,
    pub rank: usize,
    /// α_1 = exp(2πi·e/d), as "e/d".
    pub anomaly: String,
}

impl CatalogEntry {
    pub fn data(&self) -> Result<ModularData> {
        product_category(&self.primes, &self.ls)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub max_n: u64,
    pub max_prime: u64,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// (N, number of entries) in ascending N.
    pub fn counts(&self) -> Vec<(u64, usize)> {
        let mut out: Vec<(u64, usize)> = Vec::new();
        for e in &self.entries {
            match out.last_mut() {
                Some((n, k)) if *n == e.n => *k += 1,
                _ => out.push((e.n, 1)),
            }
        }
        out
    }
}

/// Square-free N ≤ max_n whose prime factors lie in (3, max_prime].
pub fn admissible_orders(max_n: u64, max_prime: u64) -> Vec<Vec<u64>> {
    let primes: Vec<u64> = (5..=max_prime.min(max_n)).filter(|&p| is_prime_number(p)).collect();
    let mut out = vec![Vec::new()];
    fn extend(primes: &[u64], start: usize, cur: &mut Vec<u64>, prod: u64, max_n: u64, out: &mut Vec<Vec<u64>>) {
        for i in start..primes.len() {
            let next = prod * primes[i];
            if next > max_n {
                break;
            }
            cur.push(primes[i]);
            out.push(cur.clone());
            extend(primes, i + 1, cur, next, max_n, out);
            cur.pop();
        }
    }
    extend(&primes, 0, &mut Vec::new(), 1, max_n, &mut out);
    out.sort_by_key(|ps| (ps.iter().product::<u64>(), ps.clone()));
    out
}

fn tuples(primes: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &p in primes {
        out = out
            .into_iter()
            .flat_map(|t| {
                units(2 * p).into_iter().map(move |l| {
                    let mut t = t.clone();
                    t.push(l);
                    t
                })
            })
            .collect();
    }
    out
}

fn anomaly_string(alpha: &CyclotomicNumber) -> Result<String> {
    let (e, n) = alpha
        .as_root_of_unity()
        .ok_or_else(|| Error::Inconsistent("anomaly is not a root of unity".into()))?;
    Ok(format!("{e}/{n}"))
}

/// Every transitive category with ord(T) = N for the admissible N: Deligne
/// products of A^{(0)}_{p−2,l}, checked transitive and deduplicated.
pub fn classify_transitive(max_n: u64, max_prime: u64) -> Result<Catalog> {
    let orders = admissible_orders(max_n, max_prime);
    let mut planned = 0usize;
    for ps in &orders {
        let rank: usize = ps.iter().map(|p| ((p - 1) / 2) as usize).product();
        if rank > MAX_CATALOG_RANK {
            return Err(Error::ResourceBound(format!(
                "N = {} needs rank {rank} > {MAX_CATALOG_RANK}",
                ps.iter().product::<u64>()
            )));
        }
        planned += ps.iter().map(|p| (p - 1) as usize).product::<usize>();
    }
    if planned > MAX_CATALOG_ENTRIES {
        return Err(Error::ResourceBound(format!(
            "{planned} catalog entries exceed {MAX_CATALOG_ENTRIES}"
        )));
    }
    let mut entries = Vec::new();
    for ps in orders {
        let n: u64 = ps.iter().product();
        let mut kept: Vec<(CatalogEntry, ModularData, CyclotomicNumber)> = Vec::new();
        for ls in tuples(&ps) {
            let c = product_category(&ps, &ls)?;
            if c.ord_t() != n {
                return Err(Error::Inconsistent(format!("ord(T) = {} for N = {n}", c.ord_t())));
            }
            if !galois_group(&c)?.transitive {
                return Err(Error::Inconsistent(format!("{ps:?} {ls:?} is not transitive")));
            }
            let alpha = c.anomaly(1)?;
            let duplicate = kept
                .iter()
                .any(|(_, d, a)| *a == alpha && data_equivalent(d, &c).is_some());
            if duplicate {
                continue;
            }
            let entry = CatalogEntry {
                n,
                primes: ps.clone(),
                ls,
                rank: c.rank,
                anomaly: anomaly_string(&alpha)?,
            };
            kept.push((entry, c, alpha));
        }
        entries.extend(kept.into_iter().map(|(e, _, _)| e));
    }
    Ok(Catalog {
        max_n,
        max_prime,
        entries,
    })
}

/// Summary used by reports and the CLI.
pub fn profile_summary(p: &GaloisProfile) -> String {
    format!(
        "|G| = {}, {} orbits, transitive {}, regular {}, |H| = {}",
        p.group_order,
        p.orbits.len(),
        p.transitive,
        p.regular,
        p.h2_group.len()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular_data::fibonacci;

    #[test]
    fn theorems_for_small_examples() {
        let a5 = build_sl2_adjoint(5, 1).unwrap();
        let rep = verify_transitivity_theorems(&a5).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(a5.ord_t(), 7);
        let prod = deligne_product(&fibonacci(), &a5);
        assert_eq!(prod.ord_t(), 35);
        assert!(verify_transitivity_theorems(&prod).unwrap().passed());
        assert!(verify_transitivity_theorems(&trivial()).unwrap().passed());
    }

    #[test]
    fn product_laws() {
        let fib = fibonacci();
        let r = product_transitivity(&fib, &build_sl2_adjoint(5, 1).unwrap()).unwrap();
        assert_eq!((r.field_degree, r.orbits_product), (1, 1));
        let r = product_transitivity(&fib, &build_sl2_adjoint(3, 3).unwrap()).unwrap();
        assert_eq!((r.field_degree, r.orbits_product), (2, 2));
        assert!(r.orbit_law && r.orbit_bound);
        let r = product_transitivity(&fib, &trivial()).unwrap();
        assert_eq!(r.orbits_product, r.orbits_a);
    }

    #[test]
    fn prime_catalogs() {
        for p in [5u64, 7] {
            let rep = check_prime_transitive_catalog(p).unwrap();
            assert!(rep.passed(), "{:?}", rep.failures());
        }
    }

    #[test]
    fn admissible_order_sets() {
        let ns = |max_n, max_p| -> Vec<u64> {
            admissible_orders(max_n, max_p).iter().map(|ps| ps.iter().product()).collect()
        };
        assert_eq!(ns(7, 13), vec![1, 5, 7]);
        assert_eq!(ns(35, 13), vec![1, 5, 7, 11, 13, 35]);
        assert_eq!(ns(4, 13), vec![1]);
        assert_eq!(ns(40, 13), vec![1, 5, 7, 11, 13, 35]);
    }

    #[test]
    fn small_catalog() {
        let cat = classify_transitive(7, 13).unwrap();
        assert_eq!(cat.counts(), vec![(1, 1), (5, 4), (7, 6)]);
        assert_eq!(classify_transitive(4, 13).unwrap().entries.len(), 1);
        let cat = classify_transitive(35, 13).unwrap();
        assert_eq!(
            cat.counts(),
            vec![(1, 1), (5, 4), (7, 6), (11, 10), (13, 12), (35, 24)]
        );
        assert!(matches!(classify_transitive(100_000, 100), Err(Error::ResourceBound(_))));
    }

    #[test]
    fn factorization_is_order_independent() {
        let c = deligne_product(&fibonacci(), &build_sl2_adjoint(5, 3).unwrap());
        let rep = unique_factorization_check(&c, &[1, 2, 3]).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
        let rep = unique_factorization_check(&fibonacci(), &[7]).unwrap();
        assert!(rep.passed());
    }
}
