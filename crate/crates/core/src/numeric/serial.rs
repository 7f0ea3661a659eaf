//! JSON form of cyclotomic numbers: `{conductor, coefficients: ["n/d", …]}`,
//! coefficients in canonical form padded to length M.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclo::CyclotomicNumber;

#[derive(Serialize, Deserialize)]
struct Wire {
    conductor: u32,
    coefficients: Vec<String>,
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if d == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(n, d))
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        Wire {
            conductor: self.conductor(),
            coefficients: self
                .coefficients()
                .iter()
                .map(|c| format!("{}/{}", c.numer(), c.denom()))
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(de)?;
        if w.conductor == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let coeffs = w
            .coefficients
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CyclotomicNumber::from_coeffs(w.conductor, &coeffs))
    }
}
