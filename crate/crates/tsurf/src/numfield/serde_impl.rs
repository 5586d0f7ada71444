//! JSON form `{"order": N, "coeffs": ["p/q", …]}`.

use super::cycnum::{CycNum, RealCyc};
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
struct Wire {
    order: u64,
    coeffs: Vec<String>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire { order: self.order(), coeffs: self.coeffs().iter().map(|c| c.to_string()).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        if w.order == 0 {
            return Err(D::Error::custom("order must be positive"));
        }
        let coeffs = w
            .coeffs
            .iter()
            .map(|s| s.trim().parse::<BigRational>().map_err(|e| D::Error::custom(format!("bad rational {s:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.iter().any(|c| c.denom() == &0.into()) {
            return Err(D::Error::custom("zero denominator"));
        }
        CycNum::from_coeffs(w.order, &coeffs).map_err(D::Error::custom)
    }
}

impl Serialize for RealCyc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RealCyc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = CycNum::deserialize(d)?;
        RealCyc::new(v).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let x = CycNum::zeta(12, 5).scale(&BigRational::new(3.into(), 7.into())) + CycNum::frac(-1, 2);
        let s = serde_json::to_string(&x).unwrap();
        let y: CycNum = serde_json::from_str(&s).unwrap();
        assert_eq!(x.order(), y.order());
        assert_eq!(x, y);
        assert!(serde_json::from_str::<CycNum>(r#"{"order":5,"coeffs":["1"]}"#).is_err());
        assert!(serde_json::from_str::<RealCyc>(r#"{"order":4,"coeffs":["0","1"]}"#).is_err());
    }
}
