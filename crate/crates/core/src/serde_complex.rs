//! `[re, im]` pair encoding for complex vectors in JSON reports.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::matrix::Complex;

pub fn serialize<S: Serializer>(v: &[Complex], s: S) -> Result<S::Ok, S::Error> {
    v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex>, D::Error> {
    let pairs = Vec::<[f64; 2]>::deserialize(d)?;
    Ok(pairs.into_iter().map(|[re, im]| Complex::new(re, im)).collect())
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<Complex>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => super::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Complex>>, D::Error> {
        let pairs = Option::<Vec<[f64; 2]>>::deserialize(d)?;
        Ok(pairs.map(|p| p.into_iter().map(|[re, im]| Complex::new(re, im)).collect()))
    }
}
