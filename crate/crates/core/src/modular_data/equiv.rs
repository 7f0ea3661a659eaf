use super::ModularData;
use crate::numeric::ntheory::lcm;

/// A relabeling π (label x of `a` ↦ label π[x] of `b`) fixing the unit and
/// carrying S and θ of `a` exactly onto those of `b`.
pub fn data_equivalent(a: &ModularData, b: &ModularData) -> Option<Vec<usize>> {
    if a.rank != b.rank {
        return None;
    }
    let m = lcm(a.conductor as u64, b.conductor as u64) as u32;
    let (a, b) = (a.promote(m), b.promote(m));
    let r = a.rank;
    let em = m as i64;
    let candidates: Vec<Vec<usize>> = (0..r)
        .map(|x| {
            (0..r)
                .filter(|&y| {
                    (x == 0) == (y == 0)
                        && (a.theta_exponents[x] - b.theta_exponents[y]).rem_euclid(em) == 0
                        && a.dim(x) == b.dim(y)
                })
                .collect()
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return None;
    }
    // Most constrained labels first.
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by_key(|&x| candidates[x].len());
    let mut perm = vec![usize::MAX; r];
    let mut used = vec![false; r];
    if search(&a, &b, &candidates, &order, 0, &mut perm, &mut used) {
        Some(perm)
    } else {
        None
    }
}

fn search(
    a: &ModularData,
    b: &ModularData,
    candidates: &[Vec<usize>],
    order: &[usize],
    depth: usize,
    perm: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return (0..a.rank).all(|x| perm[a.dual_perm[x]] == b.dual_perm[perm[x]]);
    }
    let x = order[depth];
    for &y in &candidates[x] {
        if used[y] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .chain(std::iter::once(&x))
            .all(|&z| a.s[x][z] == b.s[y][if z == x { y } else { perm[z] }]);
        if !consistent {
            continue;
        }
        perm[x] = y;
        used[y] = true;
        if search(a, b, candidates, order, depth + 1, perm, used) {
            return true;
        }
        used[y] = false;
        perm[x] = usize::MAX;
    }
    false
}
