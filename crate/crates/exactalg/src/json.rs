use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::rpoly::RPoly;
use crate::series::QSeries;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RTermJson {
    pub r: i32,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CoeffJson {
    pub q: i32,
    pub r_poly: Vec<RTermJson>,
}

/// Wire form of a truncated series; big integers travel as decimal strings.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SeriesJson {
    pub var: String,
    pub min_order: i32,
    pub max_order: i32,
    pub coeffs: Vec<CoeffJson>,
}

impl From<&QSeries> for SeriesJson {
    fn from(s: &QSeries) -> Self {
        let coeffs = s
            .iter()
            .map(|(q, p)| CoeffJson {
                q,
                r_poly: p
                    .terms()
                    .map(|(r, c)| RTermJson {
                        r,
                        num: c.numer().to_string(),
                        den: c.denom().to_string(),
                    })
                    .collect(),
            })
            .collect();
        SeriesJson {
            var: "q".into(),
            min_order: s.min_order().min(s.max_order()),
            max_order: s.max_order(),
            coeffs,
        }
    }
}

impl TryFrom<&SeriesJson> for QSeries {
    type Error = AlgebraError;
    fn try_from(j: &SeriesJson) -> Result<Self, AlgebraError> {
        if j.var != "q" {
            return Err(AlgebraError::Json(format!("unexpected variable {}", j.var)));
        }
        let mut s = QSeries::zero(j.max_order);
        for c in &j.coeffs {
            if c.q > j.max_order || c.q < j.min_order {
                return Err(AlgebraError::Json(format!(
                    "exponent {} outside [{}, {}]",
                    c.q, j.min_order, j.max_order
                )));
            }
            let mut p = RPoly::zero();
            for t in &c.r_poly {
                let num: BigInt = t
                    .num
                    .parse()
                    .map_err(|e| AlgebraError::Json(format!("numerator {}: {e}", t.num)))?;
                let den: BigInt = t
                    .den
                    .parse()
                    .map_err(|e| AlgebraError::Json(format!("denominator {}: {e}", t.den)))?;
                if den == BigInt::from(0) {
                    return Err(AlgebraError::Json("zero denominator".into()));
                }
                p.add_term(t.r, &BigRational::new(num, den));
            }
            s.add_at(c.q, &p);
        }
        Ok(s)
    }
}

pub fn to_json(s: &QSeries) -> serde_json::Value {
    serde_json::to_value(SeriesJson::from(s)).expect("series JSON is always serialisable")
}

pub fn from_json(v: &serde_json::Value) -> Result<QSeries, AlgebraError> {
    let j: SeriesJson =
        serde_json::from_value(v.clone()).map_err(|e| AlgebraError::Json(e.to_string()))?;
    QSeries::try_from(&j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rpoly::{int, rat};

    #[test]
    fn roundtrip_preserves_series() {
        let mut s = QSeries::zero(6);
        s.add_at(0, &RPoly::one());
        s.add_at(2, &RPoly::from_terms([(0, int(-2)), (1, int(2))]));
        s.add_at(5, &RPoly::from_terms([(-3, rat(7, 3))]));
        let v = to_json(&s);
        assert_eq!(v["var"], "q");
        assert_eq!(v["coeffs"][2]["r_poly"][0]["den"], "3");
        assert_eq!(from_json(&v).unwrap(), s);
    }
}
