use std::collections::BTreeMap;

use num::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{k6_pairs, LinkMatrix};
use crate::geometry::{
    almost_embedding_check, boundary_chain, graph_embedding_check, linking_number, random_rational_map, AlmostEmbedding,
    Cell, CountMode, PlMap, Point, RandomMapOptions,
};
use crate::geometry::linalg::affinely_independent;
use crate::geometry::{cells_meet, q};
use crate::simplicial::{build_family, Complex, Face, FamilySelector};
use crate::{Error, Result};

/// Straight-line embedding of `K_6` in `R^3` whose only linked pair is
/// `{123, 456}`, with linking number `+1`. The triangles through vertex 1
/// other than 123 are not pierced by the boundaries of their complements.
const BASE_COORDS: [[i64; 3]; 6] = [[-4, -2, -2], [-3, -6, 4], [5, 3, 6], [-6, 3, -6], [2, 6, -6], [-3, -5, 5]];

pub fn k6() -> Complex {
    build_family(FamilySelector::Kn { n: 6 }).expect("K6 builds")
}

fn straight_k6(coords: &[[i64; 3]; 6]) -> PlMap {
    let pts: BTreeMap<u32, Point> = (1..=6).map(|v| (v, Point::from_ints(&coords[v as usize - 1]))).collect();
    PlMap::linear(k6(), 3, pts).expect("six points in R^3")
}

pub fn base_embedding_k6() -> PlMap {
    straight_k6(&BASE_COORDS)
}

fn check_k6(f: &PlMap) -> Result<()> {
    let k = k6();
    if f.dim() != 3 || k.faces().any(|e| !f.complex().contains(e)) || f.complex().dim() != 1 {
        return Err(Error::Precondition("expected a map of K6 into R^3".into()));
    }
    Ok(())
}

/// Linking numbers of all ten pairs of disjoint triangles.
pub fn link_matrix(f: &PlMap) -> Result<LinkMatrix> {
    check_k6(f)?;
    graph_embedding_check(f)?;
    let mut m = LinkMatrix::zero();
    for (i, (a, b)) in k6_pairs().iter().enumerate() {
        m.0[i] = linking_number(f, &boundary_chain(a), &boundary_chain(b), CountMode::Signed)?;
    }
    Ok(m)
}

/// Number of pairs with odd linking number, modulo 2.
pub fn cgs_parity(m: &LinkMatrix) -> u8 {
    (m.0.iter().map(|x| x.rem_euclid(2)).sum::<i64>() % 2) as u8
}

#[derive(Clone, Debug, Serialize)]
pub struct CgsReport {
    pub trials: usize,
    pub odd: usize,
    /// `histogram[j]` counts trials with exactly `j` pairs of odd linking number.
    pub histogram: [usize; 11],
    pub failing_seeds: Vec<u64>,
}

impl CgsReport {
    pub fn all_odd(&self) -> bool {
        self.odd == self.trials
    }
}

fn cgs_trial(seed: u64) -> Result<LinkMatrix> {
    let opts = RandomMapOptions { denominator_bound: 3, numerator_bound: 60, max_attempts: 64 };
    let mut last = None;
    for j in 0..16u64 {
        let f = random_rational_map(&k6(), 3, seed ^ (j << 48), opts)?;
        match link_matrix(&f) {
            Ok(m) => return Ok(m),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap())
}

/// Random straight-line embeddings of `K_6`; trial `i` uses seed `seed + i`.
pub fn cgs_trials(trials: usize, seed: u64) -> Result<CgsReport> {
    let results: Vec<(u64, Result<LinkMatrix>)> =
        (0..trials as u64).into_par_iter().map(|i| (seed + i, cgs_trial(seed + i))).collect();
    let mut report = CgsReport { trials, odd: 0, histogram: [0; 11], failing_seeds: Vec::new() };
    for (s, r) in results {
        let m = r?;
        let linked = m.0.iter().filter(|x| x.rem_euclid(2) == 1).count();
        report.histogram[linked] += 1;
        if cgs_parity(&m) == 1 {
            report.odd += 1;
        } else {
            report.failing_seeds.push(s);
        }
    }
    Ok(report)
}

/// Regards a `K_6` embedding as a map of `F_{1,1,-}` via `v -> v - 1`.
///
/// Each triangle `0xy` is filled by a cone over its boundary loop: first from
/// the image of vertex 0, then from up to `apex_attempts` seeded random apexes.
/// A filling is kept once it misses every face disjoint from the triangle, so
/// the result is an almost embedding whenever this returns `Ok`.
pub fn k6_to_f11_minus(f: &PlMap) -> Result<PlMap> {
    k6_to_f11_minus_seeded(f, 0, 48)
}

pub fn k6_to_f11_minus_seeded(f: &PlMap, seed: u64, apex_attempts: usize) -> Result<PlMap> {
    check_k6(f)?;
    let shift: BTreeMap<u32, u32> = (1..=6).map(|v| (v, v - 1)).collect();
    let g = f.relabeled(&shift)?;
    let target = build_family(FamilySelector::FMinus { k: 1, l: 1 })?;
    let mut out = g.extended(target.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let radius = out.coords().values().flat_map(|p| p.0.iter()).map(|x| x.abs()).max().unwrap_or_else(|| q(1)) + q(1);
    let radius = radius.ceil().to_integer().to_i64().unwrap_or(1 << 20);
    for tri in target.faces_of_dim(2) {
        let (x, y) = (tri[1], tri[2]);
        let mut lp = g.polyline(0, x);
        lp.extend(&g.polyline(x, y)[1..]);
        lp.extend(&g.polyline(y, 0)[1..]);
        let others: Vec<Face> = target.faces().filter(|r| r.is_disjoint(&tri)).cloned().collect();
        let fits = |m: &PlMap, cells: &[Cell]| {
            cells.iter().all(|c| {
                let pc = m.cell_points(c);
                affinely_independent(&pc)
                    && others.iter().all(|r| m.cells(r).iter().all(|rc| cells_meet(&pc, &m.cell_points(rc)).is_none()))
            })
        };
        let fan: Vec<Cell> =
            lp.windows(2).filter(|w| w[0] != 0 && w[1] != 0).map(|w| Cell { nodes: vec![0, w[0], w[1]], sign: 1 }).collect();
        if fits(&out, &fan) {
            if fan.len() > 1 {
                out.set_cells(tri.clone(), fan)?;
            }
            continue;
        }
        let mut done = false;
        for _ in 0..apex_attempts {
            let p = Point((0..3).map(|_| q(rng.gen_range(-4 * radius..=4 * radius)) / q(4)).collect());
            let a = out.add_node(p);
            // the cone over the loop from `a`, oriented along 0 -> x -> y
            let cells: Vec<Cell> = lp.windows(2).map(|w| Cell { nodes: vec![a, w[0], w[1]], sign: 1 }).collect();
            if fits(&out, &cells) {
                out.set_cells(tri.clone(), cells)?;
                done = true;
                break;
            }
            out.remove_node(a)?;
        }
        if !done {
            let blocker = others.iter().find(|r| {
                out.cells(r).iter().any(|rc| fan.iter().any(|c| cells_meet(&out.cell_points(c), &out.cell_points(rc)).is_some()))
            });
            return Err(Error::NotAlmostEmbedding {
                left: tri.to_vec(),
                right: blocker.map(|b| b.to_vec()).unwrap_or_default(),
            });
        }
    }
    match almost_embedding_check(&out) {
        AlmostEmbedding::Ok => Ok(out),
        AlmostEmbedding::Witness { left, right, .. } => {
            Err(Error::NotAlmostEmbedding { left: left.to_vec(), right: right.to_vec() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Search used once to find `BASE_COORDS`.
    #[test]
    #[ignore]
    fn search_base_fixture() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100_000 {
            let c: [[i64; 3]; 6] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-6..=6)));
            let f = straight_k6(&c);
            let Ok(m) = link_matrix(&f) else { continue };
            if m.0[0].abs() != 1 || m.0[1..].iter().any(|&x| x != 0) {
                continue;
            }
            let c = if m.0[0] == 1 { c } else { c.map(|p| [-p[0], p[1], p[2]]) };
            if link_matrix(&straight_k6(&c)).unwrap() != LinkMatrix::canonical() {
                continue;
            }
            if k6_to_f11_minus(&straight_k6(&c)).is_ok() {
                println!("{c:?}");
                return;
            }
        }
        panic!("no fixture found");
    }

    #[test]
    fn base_fixture_is_canonical() {
        let f = base_embedding_k6();
        graph_embedding_check(&f).unwrap();
        assert_eq!(link_matrix(&f).unwrap(), LinkMatrix::canonical());
        assert!(k6_to_f11_minus(&f).is_ok());
    }

    #[test]
    fn reflection_negates() {
        let f = base_embedding_k6().reflected(2);
        assert_eq!(link_matrix(&f).unwrap(), LinkMatrix::canonical().negated());
    }

    #[test]
    fn small_cgs_batch() {
        let r = cgs_trials(8, 11).unwrap();
        assert!(r.all_odd(), "{r:?}");
    }

    #[test]
    fn fan_triangles_fill_loops() {
        let g = k6_to_f11_minus(&base_embedding_k6()).unwrap();
        assert!(!g.complex().contains(&Face::from_distinct([0, 1, 2])));
        assert!(g.complex().contains(&Face::from_distinct([0, 3, 4])));
    }
}
