use serde::Serialize;

use crate::simplicial::{build_family, Complex, Face, FamilySelector};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfDualityReport {
    pub subsets: usize,
    /// A subset that is a face together with its complement, or neither.
    pub witness: Option<Face>,
}

impl SelfDualityReport {
    pub fn is_ok(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks over every subset `σ` of the vertex set that `σ` is a face exactly
/// when its complement is not. The empty set counts as a face.
pub fn self_duality_check_complex(k: &Complex) -> SelfDualityReport {
    let vs = k.vertices();
    let n = vs.len();
    let is_face = |mask: u64| -> bool {
        mask == 0 || k.contains(&Face::from_distinct((0..n).filter(|i| mask >> i & 1 == 1).map(|i| vs[i])))
    };
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for mask in 0..=full {
        if is_face(mask) == is_face(full & !mask) {
            let witness = Face::from_distinct((0..n).filter(|i| mask >> i & 1 == 1).map(|i| vs[i]));
            return SelfDualityReport { subsets: mask as usize + 1, witness: Some(witness) };
        }
        if mask == full {
            break;
        }
    }
    SelfDualityReport { subsets: 1 << n, witness: None }
}

pub fn self_duality_check(k: u32, l: u32) -> Result<SelfDualityReport> {
    Ok(self_duality_check_complex(&build_family(FamilySelector::F { k, l })?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_are_self_dual() {
        let r = self_duality_check(1, 0).unwrap();
        assert!(r.is_ok());
        assert_eq!(r.subsets, 32);
        let r = self_duality_check(2, 1).unwrap();
        assert!(r.is_ok());
        // seven vertices
        assert_eq!(r.subsets, 128);
    }

    #[test]
    fn k6_is_not() {
        let k6 = build_family(FamilySelector::Kn { n: 6 }).unwrap();
        assert!(self_duality_check_complex(&k6).witness.is_some());
    }
}
