//! Serde helpers rendering rationals as `num/den` strings (the wire form
//! used by every JSON surface of the crate).

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

use super::{parse_rat, rat_to_string, BigRational};

pub mod rat_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(D::Error::custom)
    }
}

pub mod rat_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(rat_to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rat(s).map_err(D::Error::custom))
            .collect()
    }
}

pub mod rat_pair_opt {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &Option<(BigRational, BigRational)>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        match v {
            None => s.serialize_none(),
            Some((a, b)) => s.serialize_some(&[rat_to_string(a), rat_to_string(b)]),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Option<(BigRational, BigRational)>, D::Error> {
        let v = Option::<[String; 2]>::deserialize(d)?;
        match v {
            None => Ok(None),
            Some([a, b]) => Ok(Some((
                parse_rat(&a).map_err(D::Error::custom)?,
                parse_rat(&b).map_err(D::Error::custom)?,
            ))),
        }
    }
}

pub mod rat_pair {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &(BigRational, BigRational),
        s: S,
    ) -> Result<S::Ok, S::Error> {
        s.serialize_some(&[rat_to_string(&v.0), rat_to_string(&v.1)])
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<(BigRational, BigRational), D::Error> {
        let [a, b] = <[String; 2]>::deserialize(d)?;
        Ok((
            parse_rat(&a).map_err(D::Error::custom)?,
            parse_rat(&b).map_err(D::Error::custom)?,
        ))
    }
}
