//! Van Kampen numbers and the parity hypothesis that makes them invariant.

use rayon::prelude::*;
use serde::Serialize;

use crate::geometry::intersect_counts::face_pair_count;
use crate::geometry::{
    almost_embedding_check, boundary_chain, general_position_report, linking_number, random_rational_map,
    AlmostEmbedding, CountMode, PlMap, RandomMapOptions,
};
use crate::simplicial::{disjoint_simplex_pairs, f_prime_sphere_index_sets, Complex, Face};
use crate::{Error, Result};

/// Parity of the number of intersection points of images of disjoint faces
/// whose dimensions add up to the target dimension.
pub fn van_kampen_number(f: &PlMap) -> Result<u8> {
    let d = f.dim();
    if f.complex().dim() >= d as isize {
        return Err(Error::Precondition(format!("complex of dimension {} needs d > dim K, got {d}", f.complex().dim())));
    }
    let report = general_position_report(f);
    if let Some(v) = report.violations.first() {
        return Err(Error::Degenerate(format!("map is not in general position: {v:?}")));
    }
    let mut total = 0i64;
    for (s, t) in disjoint_simplex_pairs(f.complex(), Some(d)) {
        if s < t {
            total += face_pair_count(f, &s, &t)?;
        }
    }
    Ok(total.rem_euclid(2) as u8)
}

/// A pair violating the parity hypothesis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityWitness {
    pub sigma: Face,
    pub tau: Face,
    /// `(s+1)`-faces containing `σ` and disjoint from `τ`.
    pub nu_count: usize,
    /// `(t+1)`-faces containing `τ` and disjoint from `σ`.
    pub mu_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PaReport {
    /// Ordered pairs examined.
    pub pairs: usize,
    pub witness: Option<ParityWitness>,
}

impl PaReport {
    pub fn is_ok(&self) -> bool {
        self.witness.is_none()
    }
}

fn extensions(k: &Complex, sigma: &Face, tau: &Face) -> usize {
    k.vertices().iter().filter(|&&v| !sigma.contains(v) && !tau.contains(v) && k.contains(&sigma.with(v))).count()
}

/// Checks, for every ordered pair of disjoint faces with dimensions adding up
/// to `d - 1`, that the two coface counts have the same parity.
pub fn pa_condition(k: &Complex, d: usize) -> PaReport {
    let mut pairs = 0;
    if d == 0 {
        return PaReport { pairs, witness: None };
    }
    for (s, t) in disjoint_simplex_pairs(k, Some(d - 1)) {
        pairs += 1;
        let (nu, mu) = (extensions(k, &s, &t), extensions(k, &t, &s));
        if nu % 2 != mu % 2 {
            return PaReport { pairs, witness: Some(ParityWitness { sigma: s, tau: t, nu_count: nu, mu_count: mu }) };
        }
    }
    PaReport { pairs, witness: None }
}

#[derive(Clone, Debug, Serialize)]
pub struct VkTrialReport {
    pub trials: usize,
    pub seed: u64,
    pub values: Vec<u8>,
    pub pa: PaReport,
}

impl VkTrialReport {
    pub fn all_equal(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    pub fn common_value(&self) -> Option<u8> {
        (self.all_equal() && !self.values.is_empty()).then(|| self.values[0])
    }
}

/// Van Kampen numbers of `trials` random linear maps; trial `i` uses seed
/// `seed + i`.
pub fn vk_invariance_trial(k: &Complex, d: usize, trials: usize, seed: u64) -> Result<VkTrialReport> {
    let pa = pa_condition(k, d);
    let opts = RandomMapOptions { denominator_bound: 3, numerator_bound: 100, max_attempts: 256 };
    let values = (0..trials as u64)
        .into_par_iter()
        .map(|i| random_rational_map(k, d, seed + i, opts).and_then(|f| van_kampen_number(&f)))
        .collect::<Result<Vec<u8>>>()?;
    Ok(VkTrialReport { trials, seed, values, pa })
}

/// Number of index sets `j` for which the spheres `f Σ^k_j` and `f Σ^l_j` of
/// `F'_{k,l}` are linked modulo 2.
pub fn f_prime_linked_pairs(f: &PlMap, k: u32, l: u32) -> Result<usize> {
    if f.dim() != (k + l + 1) as usize {
        return Err(Error::Precondition(format!("expected a map into R^{}", k + l + 1)));
    }
    if let AlmostEmbedding::Witness { left, right, .. } = almost_embedding_check(f) {
        return Err(Error::NotAlmostEmbedding { left: left.to_vec(), right: right.to_vec() });
    }
    let mut count = 0;
    for (j, rest) in f_prime_sphere_index_sets(k, l, k as usize + 2)? {
        if linking_number(f, &boundary_chain(&j), &boundary_chain(&rest), CountMode::Mod2)? == 1 {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::simplicial::{build_family, FamilySelector};
    use std::collections::BTreeMap;

    fn family(k: u32, l: u32) -> Complex {
        build_family(FamilySelector::F { k, l }).unwrap()
    }

    #[test]
    fn pa_condition_on_families() {
        for (k, l) in [(1, 0), (2, 1), (3, 1), (3, 2)] {
            let r = pa_condition(&family(k, l), (k + l + 1) as usize);
            assert!(r.is_ok(), "({k},{l}): {r:?}");
            assert!(r.pairs > 0);
        }
        let k5 = build_family(FamilySelector::Kn { n: 5 }).unwrap();
        assert!(pa_condition(&k5, 2).is_ok());
        let tri = Complex::simplex(vec![1, 2, 3]).unwrap();
        let r = pa_condition(&tri, 2);
        // vertex/opposite-edge pairs qualify, but neither side has a coface
        assert!(r.is_ok());
        assert_eq!(r.pairs, 6);
    }

    #[test]
    fn pa_condition_finds_a_witness() {
        // a path 1-2-3 plus an isolated vertex 4 in the plane
        let k = Complex::from_generators(vec![1, 2, 3, 4], [Face::from_distinct([1, 2]), Face::from_distinct([2, 3])]).unwrap();
        let r = pa_condition(&k, 1);
        assert!(!r.is_ok());
    }

    #[test]
    fn separated_segments() {
        let k = Complex::from_generators(vec![1, 2, 3, 4], [Face::from_distinct([1, 2]), Face::from_distinct([3, 4])]).unwrap();
        let coords: BTreeMap<u32, Point> = [(1, [0, 0]), (2, [1, 0]), (3, [0, 1]), (4, [1, 1])]
            .into_iter()
            .map(|(v, c)| (v, Point::from_ints(&c)))
            .collect();
        let f = PlMap::linear(k, 2, coords).unwrap();
        assert_eq!(van_kampen_number(&f).unwrap(), 0);
    }

    #[test]
    fn k5_in_the_plane() {
        let r = vk_invariance_trial(&family(1, 0), 2, 12, 5).unwrap();
        assert_eq!(r.common_value(), Some(1));
    }

    #[test]
    fn boundary_of_tetrahedron_in_r3() {
        let k = Complex::simplex_boundary(vec![1, 2, 3, 4]).unwrap();
        let r = vk_invariance_trial(&k, 3, 8, 1).unwrap();
        assert!(r.all_equal());
    }

    #[test]
    fn f_prime_k6_count_is_odd() {
        let fp = build_family(FamilySelector::FPrime { k: 1, l: 1 }).unwrap();
        let f = random_rational_map(&fp, 3, 3, RandomMapOptions::default()).unwrap();
        assert_eq!(f_prime_linked_pairs(&f, 1, 1).unwrap() % 2, 1);
        assert_eq!(f_prime_linked_pairs(&f.reflected(0), 1, 1).unwrap(), f_prime_linked_pairs(&f, 1, 1).unwrap());
    }
}
