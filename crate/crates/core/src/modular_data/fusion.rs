use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ModularData;
use crate::error::{Error, Result};
use crate::numeric::{matrix, CyclotomicNumber};
use crate::report::Check;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionRing {
    pub rank: usize,
    /// N_{X,Y}^Z at index (X·rank + Y)·rank + Z.
    pub coefficients: Vec<u32>,
    pub unit: usize,
    pub dual_perm: Vec<usize>,
}

impl FusionRing {
    pub fn get(&self, x: usize, y: usize, z: usize) -> u32 {
        self.coefficients[(x * self.rank + y) * self.rank + z]
    }

    /// Simple summands of X ⊗ Y.
    pub fn support(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.rank).filter(|&z| self.get(x, y, z) > 0).collect()
    }

    /// Fusion matrix (N_X)_{Y,Z} = N_{X,Y}^Z.
    pub fn fusion_matrix(&self, x: usize) -> Vec<Vec<u32>> {
        (0..self.rank)
            .map(|y| (0..self.rank).map(|z| self.get(x, y, z)).collect())
            .collect()
    }

    /// Fusion ring of a product category.
    pub fn product(&self, other: &FusionRing) -> FusionRing {
        let (ra, rb) = (self.rank, other.rank);
        let r = ra * rb;
        let mut coefficients = vec![0; r * r * r];
        for x in 0..r {
            for y in 0..r {
                for z in 0..r {
                    coefficients[(x * r + y) * r + z] = self.get(x / rb, y / rb, z / rb)
                        * other.get(x % rb, y % rb, z % rb);
                }
            }
        }
        FusionRing {
            rank: r,
            coefficients,
            unit: self.unit * rb + other.unit,
            dual_perm: (0..r)
                .map(|x| self.dual_perm[x / rb] * rb + other.dual_perm[x % rb])
                .collect(),
        }
    }

    /// Restriction to a subset of labels closed under fusion and duals.
    pub fn restrict(&self, labels: &[usize]) -> FusionRing {
        let r = labels.len();
        let pos = |x: usize| labels.iter().position(|&y| y == x).expect("closed label set");
        let mut coefficients = vec![0; r * r * r];
        for (i, &x) in labels.iter().enumerate() {
            for (j, &y) in labels.iter().enumerate() {
                for (k, &z) in labels.iter().enumerate() {
                    coefficients[(i * r + j) * r + k] = self.get(x, y, z);
                }
            }
        }
        FusionRing {
            rank: r,
            coefficients,
            unit: pos(self.unit),
            dual_perm: labels.iter().map(|&x| pos(self.dual_perm[x])).collect(),
        }
    }

    /// Unit, commutativity, Frobenius reciprocity and (for rank ≤ 12) associativity.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let r = self.rank;
        let d = &self.dual_perm;
        for x in 0..r {
            if d[d[x]] != x {
                return Err(format!("duality is not an involution at {x}"));
            }
            for y in 0..r {
                if self.get(self.unit, x, y) != (x == y) as u32 {
                    return Err(format!("unit axiom fails at ({x},{y})"));
                }
                for z in 0..r {
                    let n = self.get(x, y, z);
                    if n != self.get(y, x, z) {
                        return Err(format!("not commutative at ({x},{y},{z})"));
                    }
                    if n != self.get(d[x], z, y) {
                        return Err(format!("Frobenius reciprocity fails at ({x},{y},{z})"));
                    }
                }
            }
        }
        if r <= 12 {
            for x in 0..r {
                for y in 0..r {
                    for z in 0..r {
                        for v in 0..r {
                            let lhs: u32 = (0..r).map(|w| self.get(x, y, w) * self.get(w, z, v)).sum();
                            let rhs: u32 = (0..r).map(|w| self.get(y, z, w) * self.get(x, w, v)).sum();
                            if lhs != rhs {
                                return Err(format!("not associative at ({x},{y},{z},{v})"));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Perron–Frobenius dimension of each label, by power iteration.
    pub fn fp_dims(&self) -> Vec<f64> {
        (0..self.rank)
            .map(|x| {
                let nx = self.fusion_matrix(x);
                let mut v = vec![1.0f64; self.rank];
                let mut lambda = 0.0;
                for _ in 0..20000 {
                    // Shift by the identity so periodic matrices still converge.
                    let w: Vec<f64> = (0..self.rank)
                        .map(|y| v[y] + (0..self.rank).map(|z| nx[y][z] as f64 * v[z]).sum::<f64>())
                        .collect();
                    let norm = w.iter().cloned().fold(0.0, f64::max);
                    lambda = norm - 1.0;
                    let next: Vec<f64> = w.iter().map(|t| t / norm).collect();
                    let moved = next.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                    v = next;
                    if moved < 1e-15 {
                        break;
                    }
                }
                lambda
            })
            .collect()
    }
}

/// Exact Verlinde coefficients. When S is symmetric, duality-compatible and
/// S² = dim·C, integer candidates from a floating evaluation are certified
/// through the character identity S_{X,W}S_{Y,W} = S_{1,W}·Σ_Z N_{X,Y}^Z S_{Z,W};
/// otherwise (or where certification fails) the formula is evaluated directly.
pub fn verlinde_fusion(c: &ModularData) -> Result<FusionRing> {
    let r = c.rank;
    let s = &c.s;
    let dual = &c.dual_perm;
    if s[0].iter().any(|d| d.is_zero()) {
        return Err(Error::NotModular("a quantum dimension vanishes".into()));
    }
    let dim = c.global_dim();
    let fast = matrix::is_symmetric(s)
        && (0..r).all(|x| (0..r).all(|y| s[dual[x]][dual[y]] == s[x][y]))
        && s_squared_is_charge_conjugation(c, &dim);
    if !fast {
        if matrix::rank(s) < r {
            return Err(Error::SingularS);
        }
        return verlinde_direct(c, &dim);
    }
    let sf: Vec<Vec<Complex64>> = s.iter().map(|row| row.iter().map(|x| x.approx()).collect()).collect();
    let dimf = dim.approx();
    let mut coefficients = vec![0u32; r * r * r];
    for x in 0..r {
        for y in x..r {
            let mut cand = vec![0i64; r];
            for z in 0..r {
                let v: Complex64 = (0..r)
                    .map(|w| sf[x][w] * sf[y][w] * sf[dual[z]][w] / sf[0][w])
                    .sum::<Complex64>()
                    / dimf;
                cand[z] = v.re.round() as i64;
            }
            let ok = cand.iter().all(|&n| n >= 0)
                && (0..r).all(|w| {
                    let lhs = s[x][w].mul(&s[y][w]);
                    let mut acc = CyclotomicNumber::zero(c.conductor);
                    for z in 0..r {
                        if cand[z] != 0 {
                            acc = acc.add(&s[z][w].scale_int(cand[z]));
                        }
                    }
                    lhs == s[0][w].mul(&acc)
                });
            let row = if ok {
                cand.iter().map(|&n| n as u32).collect()
            } else {
                exact_row(c, &dim, x, y)?
            };
            for z in 0..r {
                coefficients[(x * r + y) * r + z] = row[z];
                coefficients[(y * r + x) * r + z] = row[z];
            }
        }
    }
    Ok(FusionRing {
        rank: r,
        coefficients,
        unit: 0,
        dual_perm: dual.clone(),
    })
}

fn s_squared_is_charge_conjugation(c: &ModularData, dim: &CyclotomicNumber) -> bool {
    let r = c.rank;
    for x in 0..r {
        for y in x..r {
            let mut acc = CyclotomicNumber::zero(c.conductor);
            for w in 0..r {
                acc = acc.add(&c.s[x][w].mul(&c.s[w][y]));
            }
            let want = if c.dual_perm[x] == y {
                dim.clone()
            } else {
                CyclotomicNumber::zero(c.conductor)
            };
            if acc != want {
                return false;
            }
        }
    }
    true
}

fn exact_row(c: &ModularData, dim: &CyclotomicNumber, x: usize, y: usize) -> Result<Vec<u32>> {
    let r = c.rank;
    let inv_dim = dim.inv()?;
    let inv_d: Vec<CyclotomicNumber> = c.s[0].iter().map(|d| d.inv()).collect::<Result<_>>()?;
    (0..r)
        .map(|z| {
            let zs = c.dual_perm[z];
            let mut acc = CyclotomicNumber::zero(c.conductor);
            for w in 0..r {
                acc = acc.add(&c.s[x][w].mul(&c.s[y][w]).mul(&c.s[zs][w]).mul(&inv_d[w]));
            }
            let v = acc.mul(&inv_dim);
            match v.to_integer() {
                Some(n) if n >= 0.into() => u32::try_from(n)
                    .map_err(|_| Error::NotModular("fusion coefficient too large".into())),
                _ => Err(Error::NotModular(format!(
                    "N_{{{x},{y}}}^{{{z}}} = {v} is not a nonnegative integer"
                ))),
            }
        })
        .collect()
}

fn verlinde_direct(c: &ModularData, dim: &CyclotomicNumber) -> Result<FusionRing> {
    let r = c.rank;
    let mut coefficients = vec![0u32; r * r * r];
    for x in 0..r {
        for y in 0..r {
            let row = exact_row(c, dim, x, y)?;
            for z in 0..r {
                coefficients[(x * r + y) * r + z] = row[z];
            }
        }
    }
    Ok(FusionRing {
        rank: r,
        coefficients,
        unit: 0,
        dual_perm: c.dual_perm.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FpDims {
    pub values: Vec<f64>,
    /// Label Y whose column ratios S_{X,Y}/S_{1,Y} reproduce the FP dimensions;
    /// Y = 1 (index 0) exactly when the given dimensions are already FP.
    pub realizer: Option<usize>,
}

/// FPdim of every label, and the Galois-conjugate column realizing them.
pub fn fp_dims(c: &ModularData) -> Result<FpDims> {
    let f = verlinde_fusion(c)?;
    let values = f.fp_dims();
    let realizer = (0..c.rank).find(|&y| {
        let d = c.s[0][y].approx();
        (0..c.rank).all(|x| {
            let v = c.s[x][y].approx() / d;
            (v.re - values[x]).abs() < 1e-8 * values[x].max(1.0) && v.im.abs() < 1e-8
        })
    });
    Ok(FpDims { values, realizer })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub ord_t: u64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.warning)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &str, passed: bool, warning: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            warning,
            detail: detail.into(),
        });
    }
}

/// Exact modularity checks; failures are listed rather than raised.
pub fn validate_modular(c: &ModularData) -> ValidationReport {
    let r = c.rank;
    let s = &c.s;
    let mut rep = ValidationReport {
        checks: Vec::new(),
        ord_t: c.ord_t(),
    };
    rep.push("S symmetric", matrix::is_symmetric(s), false, "");
    let d = &c.dual_perm;
    let dual_ok = d[0] == 0
        && (0..r).all(|x| d[d[x]] == x)
        && (0..r).all(|x| (0..r).all(|y| s[d[x]][d[y]] == s[x][y]));
    rep.push("duality", dual_ok, false, "involution fixing 1 with S_{X*,Y*} = S_{X,Y}");
    let unit_ok = s[0][0].is_one() && c.theta_exponents[0] % c.conductor as i64 == 0;
    rep.push("unit normalization", unit_ok, false, "d_1 = 1 and θ_1 = 1");
    let nonsingular = matrix::rank(s) == r;
    rep.push("S invertible", nonsingular, false, "");
    let dim = c.global_dim();
    rep.push(
        "S^2 = dim C",
        s_squared_is_charge_conjugation(c, &dim),
        false,
        "S² equals dim(C) times charge conjugation",
    );
    rep.push("theta finite order", true, false, format!("ord(T) = {}", rep.ord_t));
    let fusion = if nonsingular { Some(verlinde_fusion(c)) } else { None };
    match &fusion {
        Some(Ok(f)) => {
            rep.push("Verlinde integrality", true, false, "");
            let axioms = f.check_axioms();
            rep.push(
                "fusion axioms",
                axioms.is_ok(),
                false,
                axioms.err().unwrap_or_default(),
            );
            let bal = balancing_holds(c, f);
            rep.push(
                "balancing",
                bal.is_ok(),
                true,
                bal.err().unwrap_or_default(),
            );
        }
        Some(Err(e)) => rep.push("Verlinde integrality", false, false, e.to_string()),
        None => rep.push("Verlinde integrality", false, false, "S is singular"),
    }
    rep
}

/// S_{X,Y}·θ_Xθ_Y = Σ_Z N_{X*,Y}^Z θ_Z d_Z.
fn balancing_holds(c: &ModularData, f: &FusionRing) -> std::result::Result<(), String> {
    let r = c.rank;
    let thetas: Vec<CyclotomicNumber> = (0..r).map(|x| c.theta(x)).collect();
    for x in 0..r {
        for y in x..r {
            let lhs = c.s[x][y].mul(&thetas[x]).mul(&thetas[y]);
            let mut rhs = CyclotomicNumber::zero(c.conductor);
            for z in 0..r {
                let n = f.get(c.dual_perm[x], y, z);
                if n > 0 {
                    rhs = rhs.add(&thetas[z].mul(&c.s[0][z]).scale_int(n as i64));
                }
            }
            if lhs != rhs {
                return Err(format!("balancing fails at ({x},{y})"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular_data::*;

    /// N_{a,b}^c = 1 iff |a−b| ≤ c ≤ min(a+b, 2k−a−b) and c ≡ a+b (mod 2).
    fn sl2_rule(k: usize, a: usize, b: usize, c: usize) -> u32 {
        let lo = a.abs_diff(b);
        let hi = (a + b).min(2 * k - a - b);
        (lo <= c && c <= hi && (a + b + c) % 2 == 0) as u32
    }

    #[test]
    fn fibonacci_fusion() {
        let f = verlinde_fusion(&fibonacci()).unwrap();
        assert_eq!((f.get(1, 1, 0), f.get(1, 1, 1)), (1, 1));
        assert_eq!(verlinde_fusion(&trivial()).unwrap().coefficients, vec![1]);
    }

    #[test]
    fn sl2_fusion_matches_closed_form() {
        for k in 1..=8u32 {
            for l in [1i64, -1] {
                let f = verlinde_fusion(&build_sl2(k, l).unwrap()).unwrap();
                let k = k as usize;
                for a in 0..=k {
                    for b in 0..=k {
                        for c in 0..=k {
                            assert_eq!(f.get(a, b, c), sl2_rule(k, a, b, c));
                        }
                    }
                }
                f.check_axioms().unwrap();
            }
        }
    }

    #[test]
    fn pointed_fusion_is_group_law() {
        let z5 = build_pointed(&QuadraticForm::diagonal(&[5], 5, &[1])).unwrap();
        let f = verlinde_fusion(&z5).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(f.support(a, b), vec![(a + b) % 5]);
            }
        }
    }

    #[test]
    fn validation_reports() {
        for p in [5u32, 7, 11] {
            for l in crate::numeric::ntheory::units(2 * p as u64) {
                let rep = validate_modular(&build_sl2_adjoint(p - 2, l as i64).unwrap());
                assert!(rep.passed(), "{p} {l}: {rep:?}");
                assert!(rep.check("balancing").unwrap().passed);
            }
        }
        let sv = validate_modular(&build_svec(1));
        assert!(!sv.check("S invertible").unwrap().passed);
        let mut bad = fibonacci();
        bad.s[1][1] = CyclotomicNumber::from_int(10, -2);
        let rep = validate_modular(&bad);
        assert!(!rep.check("Verlinde integrality").unwrap().passed);
        assert!(!rep.passed());
    }

    #[test]
    fn singular_s_is_reported() {
        assert_eq!(verlinde_fusion(&build_svec(1)), Err(Error::SingularS));
    }

    #[test]
    fn fp_dims_of_fibonacci() {
        let f = verlinde_fusion(&fibonacci()).unwrap();
        let d = f.fp_dims();
        assert!((d[1] - 1.618033988749895).abs() < 1e-12);
        assert_eq!(fp_dims(&fibonacci()).unwrap().realizer, Some(0));
    }

    #[test]
    fn fp_dims_of_conjugate() {
        let c = build_sl2_adjoint(3, 3).unwrap();
        let fp = fp_dims(&c).unwrap();
        assert!((fp.values[1] - 1.618033988749895).abs() < 1e-12);
        assert_eq!(fp.realizer, Some(1));
        let z5 = build_pointed(&QuadraticForm::diagonal(&[5], 5, &[1])).unwrap();
        let fp = fp_dims(&z5).unwrap();
        assert!(fp.values.iter().all(|v| (v - 1.0).abs() < 1e-12));
        assert_eq!(fp.realizer, Some(0));
    }

    #[test]
    fn fp_dims_of_products() {
        let c = deligne_product(&fibonacci(), &build_sl2_adjoint(5, 1).unwrap());
        let fp = fp_dims(&c).unwrap();
        assert_eq!(fp.realizer, Some(0));
        assert!((fp.values[2] - 1.8019377358048383).abs() < 1e-12);
    }
}
