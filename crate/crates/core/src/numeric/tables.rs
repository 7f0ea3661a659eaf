//! Per-conductor lookup data shared by all field elements.
//!
//! Tables are pure functions of the conductor, so they are memoized in a
//! process-wide cache and handed out behind `Arc`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::ntheory::euler_phi;
use super::poly::cyclotomic_polynomial;

#[derive(Debug)]
pub struct FieldTables {
    pub phi: usize,
    /// Nonzero terms (j, c_j) of Φ_M with j < φ(M); the leading term is 1.
    pub low_terms: Vec<(usize, i64)>,
    /// cos/sin of 2πk/M for k < φ(M).
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

fn build(m: u32) -> FieldTables {
    let poly = cyclotomic_polynomial(m as u64);
    let phi = euler_phi(m as u64) as usize;
    let low_terms = poly[..phi]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| (j, c))
        .collect();
    let step = 2.0 * std::f64::consts::PI / m as f64;
    let cos = (0..phi).map(|k| (step * k as f64).cos()).collect();
    let sin = (0..phi).map(|k| (step * k as f64).sin()).collect();
    FieldTables {
        phi,
        low_terms,
        cos,
        sin,
    }
}

pub fn tables(m: u32) -> Arc<FieldTables> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = cache.read().expect("table cache poisoned").get(&m) {
        return t.clone();
    }
    let t = Arc::new(build(m));
    cache
        .write()
        .expect("table cache poisoned")
        .entry(m)
        .or_insert(t)
        .clone()
}
