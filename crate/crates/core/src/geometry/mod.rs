//! Exact rational PL geometry: maps, general position, intersection counts
//! and linking numbers.

mod intersect;
pub(crate) mod intersect_counts {
    pub(crate) use super::intersect::face_pair_count;
}
pub mod linalg;
pub mod link;
pub mod lp;
mod plmap;
mod random;

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

pub use intersect::{
    almost_embedding_check, cells_meet, general_position_report, graph_embedding_check,
    pair_intersection_number, transversal_intersection, AlmostEmbedding, CountMode,
    GeneralPositionReport, Violation,
};
pub use link::{boundary_chain, check_cycle, linking_number, Chain};
pub use plmap::{Cell, PlMap};
pub use random::{random_rational_map, RandomMapOptions};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = |e: String| Error::Parse(format!("rational {s:?}: {e}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|e| bad(format!("{e}")))?;
            let d: BigInt = d.trim().parse().map_err(|e| bad(format!("{e}")))?;
            if d.is_zero() {
                return Err(bad("zero denominator".into()));
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|e| bad(format!("{e}")))?)),
    }
}

/// -1, 0 or +1.
pub fn sign_of(x: &Q) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// A point of `R^d` with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point(pub Vec<Q>);

impl Point {
    pub fn from_ints(c: &[i64]) -> Self {
        Point(c.iter().map(|&x| q(x)).collect())
    }

    pub fn zero(d: usize) -> Self {
        Point(vec![Q::zero(); d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, o: &Point) -> Point {
        Point(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, s: &Q) -> Point {
        Point(self.0.iter().map(|a| a * s).collect())
    }

    /// `self + t (o - self)`.
    pub fn lerp(&self, o: &Point, t: &Q) -> Point {
        self.add(&o.sub(self).scale(t))
    }

    /// Appends one coordinate.
    pub fn lifted(&self, last: Q) -> Point {
        let mut c = self.0.clone();
        c.push(last);
        Point(c)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(format_q).collect();
        write!(f, "({})", s.join(", "))
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(format_q).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        v.iter()
            .map(|s| parse_q(s))
            .collect::<Result<Vec<_>>>()
            .map(Point)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_serialize_in_lowest_terms() {
        assert_eq!(format_q(&q_frac(6, -4)), "-3/2");
        assert_eq!(format_q(&q(7)), "7");
        assert_eq!(parse_q("10/4").unwrap(), q_frac(5, 2));
        assert!(parse_q("1/0").is_err());
        let p = Point(vec![q_frac(1, 3), q(-2)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["1/3","-2"]"#);
        assert_eq!(serde_json::from_str::<Point>(&s).unwrap(), p);
    }
}
