//! Linking matrices of `K_6` embeddings in `R^3`, finger moves, and the
//! combinatorics of move lattices.

mod finger;
mod k6;
mod moves;
mod suspend;
mod xi;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::simplicial::{sequence_sign, Face};
use crate::{Error, Result};


pub use k6::{base_embedding_k6, cgs_parity, cgs_trials, k6, k6_to_f11_minus, k6_to_f11_minus_seeded, link_matrix, CgsReport};
pub use finger::{finger_move, realize_odd_link, FingerOptions};
pub use moves::{all_moves, matrix_move, move_delta, move_reachability, verify_unreachable, Reachability};
pub use suspend::{sphere_linking, suspend_almost_embedding, Direction, SuspendOptions};
pub use xi::{canonical as canonical_pair_state, pair_states, xi_contradiction, xi_contradiction_from, xi_reference_chain, Relation, XiCertificate, XiStep};




/// The ten unordered pairs of disjoint triangles of `K_6` on labels `1..=6`,
/// listed by the triangle containing vertex 1.
pub fn k6_pairs() -> [(Face, Face); 10] {
    const FIRST: [[u32; 3]; 10] =
        [[1, 2, 3], [1, 2, 4], [1, 2, 5], [1, 2, 6], [1, 3, 4], [1, 3, 5], [1, 3, 6], [1, 4, 5], [1, 4, 6], [1, 5, 6]];
    FIRST.map(|t| {
        let a = Face::from_distinct(t);
        let b = Face::from_distinct((1..=6).filter(|v| !t.contains(v)));
        (a, b)
    })
}

/// Index of the pair `{s, t}` of disjoint triangles (given as vertex sets).
pub fn pair_index(s: &Face, t: &Face) -> Result<usize> {
    let first = if s.contains(1) { s } else { t };
    k6_pairs()
        .iter()
        .position(|(a, b)| a == first && (b == s || b == t) && s.is_disjoint(t))
        .ok_or_else(|| Error::Precondition(format!("{s:?}, {t:?} is not a pair of disjoint triangles of K6")))
}

/// Linking numbers of all pairs of disjoint 3-cycles, each cycle oriented by
/// increasing labels.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinkMatrix(pub [i64; 10]);

impl LinkMatrix {
    pub fn zero() -> Self {
        LinkMatrix([0; 10])
    }

    /// `+1` on `{123, 456}` and zero elsewhere.
    pub fn canonical() -> Self {
        let mut m = Self::zero();
        m.0[0] = 1;
        m
    }

    pub fn get(&self, s: &Face, t: &Face) -> Result<i64> {
        Ok(self.0[pair_index(s, t)?])
    }

    /// Entry for the cycles traversed in the given vertex orders.
    pub fn get_oriented(&self, s: &[u32], t: &[u32]) -> Result<i64> {
        let v = self.get(&Face::new(s.to_vec())?, &Face::new(t.to_vec())?)?;
        Ok(v * (sequence_sign(s) * sequence_sign(t)) as i64)
    }

    pub fn add_oriented(&mut self, s: &[u32], t: &[u32], delta: i64) -> Result<()> {
        let i = pair_index(&Face::new(s.to_vec())?, &Face::new(t.to_vec())?)?;
        self.0[i] += delta * (sequence_sign(s) * sequence_sign(t)) as i64;
        Ok(())
    }

    pub fn sub(&self, o: &LinkMatrix) -> LinkMatrix {
        LinkMatrix(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }

    pub fn negated(&self) -> LinkMatrix {
        LinkMatrix(self.0.map(|x| -x))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<_> = k6_pairs()
            .iter()
            .zip(self.0)
            .map(|((a, b), v)| serde_json::json!({ "pair": format!("{}|{}", a.key(), b.key()), "lk": v }))
            .collect();
        serde_json::json!({ "format_version": crate::FORMAT_VERSION, "entries": entries })
    }
}

impl fmt::Display for LinkMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((a, b), v) in k6_pairs().iter().zip(self.0) {
            let s = |x: &Face| x.iter().map(|v| v.to_string()).collect::<String>();
            writeln!(f, "{} {} {:>4}", s(a), s(b), v)?;
        }
        Ok(())
    }
}

/// Turn the edge `a` around the edge `b` `multiplicity` times; both edges are
/// ordered pairs of `K_6` labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MoveSpec {
    pub a: (u32, u32),
    pub b: (u32, u32),
    pub multiplicity: i64,
}

impl MoveSpec {
    pub fn new(a: (u32, u32), b: (u32, u32), multiplicity: i64) -> Result<Self> {
        let m = MoveSpec { a, b, multiplicity };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let vs = [self.a.0, self.a.1, self.b.0, self.b.1];
        if vs.iter().any(|v| !(1..=6).contains(v)) {
            return Err(Error::OutOfRange(format!("move {self:?} uses labels outside 1..=6")));
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if vs[i] == vs[j] {
                    return Err(Error::Precondition(format!("move edges {:?} and {:?} are not disjoint", self.a, self.b)));
                }
            }
        }
        Ok(())
    }

    /// The two labels not on `a` or `b`, in increasing order.
    pub fn rest(&self) -> (u32, u32) {
        let used = [self.a.0, self.a.1, self.b.0, self.b.1];
        let mut r = (1..=6).filter(|v| !used.contains(v));
        (r.next().unwrap(), r.next().unwrap())
    }

    pub fn inverse(&self) -> MoveSpec {
        MoveSpec { multiplicity: -self.multiplicity, ..*self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_indexing() {
        let p = k6_pairs();
        assert_eq!(p[0].1, Face::from_distinct([4, 5, 6]));
        assert_eq!(p[9].1, Face::from_distinct([2, 3, 4]));
        for (i, (a, b)) in p.iter().enumerate() {
            assert_eq!(pair_index(a, b).unwrap(), i);
            assert_eq!(pair_index(b, a).unwrap(), i);
        }
        assert!(pair_index(&Face::from_distinct([1, 2, 3]), &Face::from_distinct([3, 4, 5])).is_err());
    }

    #[test]
    fn reorienting_negates() {
        let m = LinkMatrix::canonical();
        assert_eq!(m.get_oriented(&[1, 2, 3], &[4, 5, 6]).unwrap(), 1);
        assert_eq!(m.get_oriented(&[2, 3, 1], &[4, 5, 6]).unwrap(), 1);
        assert_eq!(m.get_oriented(&[2, 1, 3], &[4, 5, 6]).unwrap(), -1);
        assert_eq!(m.get_oriented(&[4, 5, 6], &[3, 2, 1]).unwrap(), -1);
    }

    #[test]
    fn move_spec_validation() {
        assert!(MoveSpec::new((1, 2), (4, 5), 1).is_ok());
        assert!(MoveSpec::new((1, 2), (2, 5), 1).is_err());
        assert!(MoveSpec::new((1, 7), (4, 5), 1).is_err());
        assert_eq!(MoveSpec::new((1, 2), (4, 5), 1).unwrap().rest(), (3, 6));
    }
}
