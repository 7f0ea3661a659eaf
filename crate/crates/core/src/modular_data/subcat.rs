use std::collections::BTreeSet;

use super::{FusionRing, ModularData};
use crate::error::{Error, Result};

/// Smallest label set containing `seed` and 1, closed under fusion and duals.
pub fn closure(f: &FusionRing, seed: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; f.rank];
    let mut members = vec![f.unit];
    inside[f.unit] = true;
    let add = |x: usize, inside: &mut Vec<bool>, members: &mut Vec<usize>| {
        if !inside[x] {
            inside[x] = true;
            members.push(x);
        }
    };
    for &x in seed {
        add(x, &mut inside, &mut members);
    }
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        add(f.dual_perm[x], &mut inside, &mut members);
        for j in 0..=i {
            let y = members[j];
            for z in f.support(x, y) {
                add(z, &mut inside, &mut members);
            }
        }
        i += 1;
    }
    members.sort_unstable();
    members
}

pub fn tensor_generated(f: &FusionRing, x: usize) -> Vec<usize> {
    closure(f, &[x])
}

/// Every fusion subcategory, as sorted label sets ordered by size then lexicographically.
pub fn all_fusion_subcategories(f: &FusionRing) -> Vec<Vec<usize>> {
    let singles: BTreeSet<Vec<usize>> = (0..f.rank).map(|x| tensor_generated(f, x)).collect();
    let mut all = singles.clone();
    let mut frontier: Vec<Vec<usize>> = singles.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for b in &singles {
                if b.iter().all(|x| a.binary_search(x).is_ok()) {
                    continue;
                }
                let mut seed = a.clone();
                seed.extend(b);
                let c = closure(f, &seed);
                if all.insert(c.clone()) {
                    next.push(c);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Vec<usize>> = all.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Labels of `within` that centralize every label of `d`: S_{X,Y} = d_X d_Y.
pub fn centralizer_within(c: &ModularData, within: &[usize], d: &[usize]) -> Vec<usize> {
    within
        .iter()
        .copied()
        .filter(|&x| d.iter().all(|&y| c.s[x][y] == c.dim(x).mul(c.dim(y))))
        .collect()
}

pub fn centralizer(c: &ModularData, d: &[usize]) -> Vec<usize> {
    let all: Vec<usize> = (0..c.rank).collect();
    centralizer_within(c, &all, d)
}

/// A fusion subcategory is modular iff its Müger center is trivial.
pub fn is_modular_subcategory(c: &ModularData, d: &[usize]) -> bool {
    centralizer_within(c, d, d) == [0]
}

/// Nontrivial with no modular fusion subcategory besides {1} and itself.
pub fn is_prime(c: &ModularData) -> Result<bool> {
    if c.rank == 1 {
        return Ok(false);
    }
    let f = super::verlinde_fusion(c)?;
    Ok(all_fusion_subcategories(&f)
        .iter()
        .filter(|d| d.len() > 1 && d.len() < c.rank)
        .all(|d| !is_modular_subcategory(c, d)))
}

pub fn prime_factorization(c: &ModularData) -> Result<Vec<Vec<usize>>> {
    let order: Vec<usize> = (0..c.rank).collect();
    prime_factorization_ordered(c, &order)
}

/// Split off a minimal nontrivial modular subcategory, pass to its
/// centralizer and repeat. Ties between minimal candidates are broken by the
/// positions of their labels in `order`.
pub fn prime_factorization_ordered(c: &ModularData, order: &[usize]) -> Result<Vec<Vec<usize>>> {
    let f = super::verlinde_fusion(c)?;
    prime_factorization_among(c, &all_fusion_subcategories(&f), order)
}

/// As `prime_factorization_ordered`, with the fusion subcategories supplied.
pub fn prime_factorization_among(
    c: &ModularData,
    subcategories: &[Vec<usize>],
    order: &[usize],
) -> Result<Vec<Vec<usize>>> {
    let mut pos = vec![usize::MAX; c.rank];
    for (i, &x) in order.iter().enumerate() {
        if x < c.rank {
            pos[x] = i;
        }
    }
    let key = |d: &Vec<usize>| {
        let mut k: Vec<usize> = d.iter().map(|&x| pos[x]).collect();
        k.sort_unstable();
        (d.len(), k)
    };
    let mut subcats: Vec<Vec<usize>> =
        subcategories.iter().filter(|d| d.len() > 1).cloned().collect();
    subcats.sort_by_key(key);
    let mut rest: Vec<usize> = (0..c.rank).collect();
    let mut factors = Vec::new();
    while rest.len() > 1 {
        let factor = subcats
            .iter()
            .find(|d| {
                d.iter().all(|x| rest.binary_search(x).is_ok()) && is_modular_subcategory(c, d)
            })
            .ok_or_else(|| {
                Error::FactorizationFailure(format!("no modular subcategory inside {rest:?}"))
            })?
            .clone();
        rest = centralizer_within(c, &rest, &factor);
        factors.push(factor);
    }
    let product: usize = factors.iter().map(|d| d.len()).product();
    if product != c.rank {
        return Err(Error::FactorizationFailure(format!(
            "factor ranks multiply to {product}, expected {}",
            c.rank
        )));
    }
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i + 1..] {
            if centralizer_within(c, a, b).len() != a.len() {
                return Err(Error::FactorizationFailure(
                    "factors do not centralize each other".into(),
                ));
            }
        }
    }
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular_data::*;

    #[test]
    fn fibonacci_subcategories() {
        let fib = fibonacci();
        let f = verlinde_fusion(&fib).unwrap();
        assert_eq!(tensor_generated(&f, 1), vec![0, 1]);
        assert_eq!(all_fusion_subcategories(&f), vec![vec![0], vec![0, 1]]);
        assert_eq!(centralizer(&fib, &[0, 1]), vec![0]);
        assert!(is_prime(&fib).unwrap());
        assert!(!is_prime(&trivial()).unwrap());
    }

    #[test]
    fn adjoint_objects_generate() {
        for k in [5u32, 9, 11] {
            let c = build_sl2_adjoint(k, 1).unwrap();
            let f = verlinde_fusion(&c).unwrap();
            for x in 1..c.rank {
                assert_eq!(tensor_generated(&f, x).len(), c.rank);
            }
            assert!(is_prime(&c).unwrap());
        }
    }

    #[test]
    fn factorization_of_products() {
        let c = deligne_product(&fibonacci(), &build_sl2_adjoint(5, 1).unwrap());
        let factors = prime_factorization(&c).unwrap();
        let mut ranks: Vec<usize> = factors.iter().map(|d| d.len()).collect();
        ranks.sort_unstable();
        assert_eq!(ranks, vec![2, 3]);
        assert!(!is_prime(&c).unwrap());
        assert!(prime_factorization(&trivial()).unwrap().is_empty());
    }

    #[test]
    fn sl2_level_one_subcategories() {
        // C(sl2,3) = Fib ⊠ semion-like pointed part: {V0,V3} is modular.
        let c = build_sl2(3, 1).unwrap();
        let f = verlinde_fusion(&c).unwrap();
        let subs = all_fusion_subcategories(&f);
        assert!(subs.contains(&vec![0, 2]));
        assert!(subs.contains(&vec![0, 3]));
        assert!(is_modular_subcategory(&c, &[0, 3]));
        assert_eq!(prime_factorization(&c).unwrap().len(), 2);
    }
}
