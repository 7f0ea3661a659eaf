use serde::{Deserialize, Serialize};

use super::ModularData;
use crate::error::{Error, Result};
use crate::numeric::ntheory::{gcd, lcm, modn};
use crate::numeric::{matrix, quantum_integer, CyclotomicNumber};

pub fn trivial() -> ModularData {
    ModularData::new(
        vec!["1".into()],
        1,
        vec![vec![CyclotomicNumber::one(1)]],
        vec![0],
        vec![0],
    )
    .expect("trivial data is well formed")
}

fn check_level(k: u32, l: i64) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("level k must be positive".into()));
    }
    if gcd(l, 2 * (k as i64 + 2)) != 1 {
        return Err(Error::InvalidParameter(format!(
            "l = {l} is not coprime to 2(k+2) = {}",
            2 * (k + 2)
        )));
    }
    Ok(())
}

/// C(sl2, k, q^l): S_{a,b} = [(a+1)(b+1)]_{q^l}, θ_a = q^{l·a(a+2)/2}, q = e^{πi/(k+2)}.
pub fn build_sl2(k: u32, l: i64) -> Result<ModularData> {
    check_level(k, l)?;
    let m = 4 * (k + 2);
    let ql = CyclotomicNumber::zeta(m, 2 * l);
    let r = k as usize + 1;
    let s = (0..r)
        .map(|a| {
            (0..r)
                .map(|b| quantum_integer(((a + 1) * (b + 1)) as i64, &ql))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let theta = (0..r as i64).map(|a| l * a * (a + 2)).collect();
    ModularData::new(
        (0..r).map(|a| format!("V{a}")).collect(),
        m,
        s,
        theta,
        (0..r).collect(),
    )
}

/// Adjoint (even-label) subcategory of C(sl2, k, q^l) for any k:
/// labels V_{2j}, S_{j,m} = [(2j+1)(2m+1)]_{q^l}, θ_j = q^{2l·j(j+1)}.
pub fn sl2_adjoint_any(k: u32, l: i64) -> Result<ModularData> {
    check_level(k, l)?;
    let m = 2 * (k + 2);
    let ql = CyclotomicNumber::zeta(m, l);
    let r = k as usize / 2 + 1;
    let s = (0..r)
        .map(|a| {
            (0..r)
                .map(|b| quantum_integer(((2 * a + 1) * (2 * b + 1)) as i64, &ql))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let theta = (0..r as i64).map(|j| 2 * l * j * (j + 1)).collect();
    ModularData::new(
        (0..r).map(|j| format!("V{}", 2 * j)).collect(),
        m,
        s,
        theta,
        (0..r).collect(),
    )
}

/// A^{(0)}_{k,l} for odd k.
pub fn build_sl2_adjoint(k: u32, l: i64) -> Result<ModularData> {
    if k % 2 == 0 {
        return Err(Error::InvalidParameter(format!("k = {k} must be odd")));
    }
    sl2_adjoint_any(k, l)
}

pub fn fibonacci() -> ModularData {
    build_sl2_adjoint(3, 1).expect("Fibonacci parameters are valid")
}

/// A quadratic form on a finite abelian group Z/n_1 × … × Z/n_r, given by
/// q(a) = ζ_modulus^{values[idx(a)]}. Elements are indexed in mixed radix
/// with the last component varying fastest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticForm {
    pub orders: Vec<u32>,
    pub modulus: u32,
    pub values: Vec<i64>,
}

impl QuadraticForm {
    /// q(a) = ζ_modulus^{Σ c_i a_i²}.
    pub fn diagonal(orders: &[u32], modulus: u32, coeffs: &[i64]) -> Self {
        let size: usize = orders.iter().map(|&n| n as usize).product();
        let values = (0..size)
            .map(|idx| {
                element(orders, idx)
                    .iter()
                    .zip(coeffs)
                    .map(|(&a, &c)| c * (a as i64) * (a as i64))
                    .sum()
            })
            .collect();
        QuadraticForm {
            orders: orders.to_vec(),
            modulus,
            values,
        }
    }

    pub fn size(&self) -> usize {
        self.orders.iter().map(|&n| n as usize).product()
    }
}

fn element(orders: &[u32], mut idx: usize) -> Vec<u32> {
    let mut out = vec![0; orders.len()];
    for i in (0..orders.len()).rev() {
        out[i] = (idx % orders[i] as usize) as u32;
        idx /= orders[i] as usize;
    }
    out
}

fn index(orders: &[u32], a: &[u32]) -> usize {
    a.iter()
        .zip(orders)
        .fold(0, |acc, (&x, &n)| acc * n as usize + (x % n) as usize)
}

/// Pointed modular data: S_{a,b} = q(a)q(b)/q(a+b), θ_a = q(a).
pub fn build_pointed(form: &QuadraticForm) -> Result<ModularData> {
    let orders = &form.orders;
    let size = form.size();
    if form.values.len() != size || form.modulus == 0 || orders.contains(&0) {
        return Err(Error::InvalidParameter("quadratic form shape mismatch".into()));
    }
    let m = form.modulus as u64;
    let add = |x: usize, y: usize| -> usize {
        let (a, b) = (element(orders, x), element(orders, y));
        let s: Vec<u32> = a.iter().zip(&b).map(|(p, q)| p + q).collect();
        index(orders, &s)
    };
    let neg = |x: usize| -> usize {
        let a = element(orders, x);
        let s: Vec<u32> = a.iter().zip(orders).map(|(&p, &n)| (n - p) % n).collect();
        index(orders, &s)
    };
    let e = |x: usize| form.values[x];
    // b(a, c) = q(a+c)/(q(a)q(c)) must be a symmetric bicharacter.
    let bi = |x: usize, y: usize| modn(e(add(x, y)) - e(x) - e(y), m) as i64;
    if modn(e(0), m) != 0 {
        return Err(Error::InvalidParameter("q(0) must be 1".into()));
    }
    for x in 0..size {
        for y in 0..size {
            for z in 0..size {
                if modn(bi(add(x, y), z) - bi(x, z) - bi(y, z), m) != 0 {
                    return Err(Error::InvalidParameter(
                        "q does not induce a bicharacter".into(),
                    ));
                }
            }
        }
    }
    for x in 1..size {
        if (0..size).all(|y| bi(x, y) == 0) {
            return Err(Error::Degenerate(format!(
                "element {:?} pairs trivially with everything",
                element(orders, x)
            )));
        }
    }
    let s = (0..size)
        .map(|x| {
            (0..size)
                .map(|y| CyclotomicNumber::zeta(form.modulus, -bi(x, y)))
                .collect()
        })
        .collect();
    let labels = (0..size)
        .map(|x| {
            let a = element(orders, x);
            if a.len() == 1 {
                a[0].to_string()
            } else {
                format!(
                    "({})",
                    a.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
                )
            }
        })
        .collect();
    ModularData::new(
        labels,
        form.modulus,
        s,
        form.values.clone(),
        (0..size).map(neg).collect(),
    )
}

/// sVec_ε: S = [[1, ε],[ε, 1]], θ_f = −ε (degenerate).
pub fn build_svec(eps: i8) -> ModularData {
    assert!(eps == 1 || eps == -1, "epsilon must be ±1");
    let e = CyclotomicNumber::from_int(2, eps as i64);
    let one = CyclotomicNumber::one(2);
    ModularData::new(
        vec!["1".into(), "f".into()],
        2,
        vec![vec![one.clone(), e.clone()], vec![e, one]],
        vec![0, if eps == 1 { 1 } else { 0 }],
        vec![0, 1],
    )
    .expect("sVec data is well formed")
}

/// A ⊠ B: Kronecker product of S, twists multiply, labels are pairs.
pub fn deligne_product(a: &ModularData, b: &ModularData) -> ModularData {
    let m = lcm(a.conductor as u64, b.conductor as u64) as u32;
    let (a, b) = (a.promote(m), b.promote(m));
    let mut labels = Vec::new();
    let mut theta = Vec::new();
    let mut dual = Vec::new();
    for i in 0..a.rank {
        for j in 0..b.rank {
            labels.push(format!("({},{})", a.labels[i], b.labels[j]));
            theta.push(a.theta_exponents[i] + b.theta_exponents[j]);
            dual.push(a.dual_perm[i] * b.rank + b.dual_perm[j]);
        }
    }
    ModularData::new(labels, m, matrix::kron(&a.s, &b.s), theta, dual)
        .expect("product of well-formed data is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_small_cases() {
        let c = build_sl2(1, 1).unwrap();
        assert!(c.dim(1).is_one());
        let c3 = build_sl2(3, 1).unwrap();
        assert_eq!(c3.s[0][2], fibonacci().s[0][1]);
        for k in 1..=8 {
            let c = build_sl2(k, 1).unwrap();
            assert!(crate::numeric::matrix::is_symmetric(&c.s));
        }
        assert!(build_sl2(3, 5).is_err());
        assert!(build_sl2_adjoint(2, 1).is_err());
    }

    #[test]
    fn adjoint_examples() {
        let fib = fibonacci();
        assert_eq!(fib.theta(1), CyclotomicNumber::zeta(5, 2));
        assert_eq!(build_sl2_adjoint(1, 1).unwrap().rank, 1);
        assert_eq!(build_sl2_adjoint(3, 7).unwrap().ord_t(), 5);
    }

    #[test]
    fn pointed_examples() {
        let z5 = build_pointed(&QuadraticForm::diagonal(&[5], 5, &[1])).unwrap();
        for a in 0..5i64 {
            for b in 0..5i64 {
                assert_eq!(z5.s[a as usize][b as usize], CyclotomicNumber::zeta(5, -2 * a * b));
            }
        }
        assert_eq!(z5.dual_perm, vec![0, 4, 3, 2, 1]);
        let semion = build_pointed(&QuadraticForm::diagonal(&[2], 4, &[1])).unwrap();
        assert_eq!(semion.ord_t(), 4);
        assert!(semion.s.iter().flatten().all(|x| x.to_rational().is_some()));
        let deg = QuadraticForm::diagonal(&[2], 2, &[1]);
        assert!(matches!(build_pointed(&deg), Err(Error::Degenerate(_))));
        let t = build_pointed(&QuadraticForm { orders: vec![], modulus: 1, values: vec![0] }).unwrap();
        assert_eq!(t.rank, 1);
    }

    #[test]
    fn svec_and_products() {
        let sv = build_svec(1);
        assert_eq!(sv.theta_exponents, vec![0, 1]);
        assert_eq!(build_svec(-1).theta(1), CyclotomicNumber::one(2));
        let fib = fibonacci();
        let ff = deligne_product(&fib, &fib);
        assert_eq!(ff.rank, 4);
        assert_eq!(ff.ord_t(), 5);
        assert_eq!(deligne_product(&fib, &trivial()).s, fib.s);
        assert_eq!(ff.global_dim(), fib.global_dim().mul(&fib.global_dim()));
    }
}
