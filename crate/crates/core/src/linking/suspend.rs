//! Raising one index of an almost embedding of `F_{k,l,-}` by one dimension.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::geometry::{almost_embedding_check, boundary_chain, linking_number, q, AlmostEmbedding, Cell, CountMode, PlMap, Point};
use crate::simplicial::{build_family, canonical_subcomplexes, Complex, Face, FamilySelector};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// `F_{k-1,l,-} -> F_{k,l,-}`.
    RaiseK,
    /// `F_{k,l-1,-} -> F_{k,l,-}`.
    RaiseL,
}

#[derive(Clone, Copy, Debug)]
pub struct SuspendOptions {
    pub seed: u64,
    pub max_attempts: usize,
}

impl Default for SuspendOptions {
    fn default() -> Self {
        SuspendOptions { seed: 0, max_attempts: 8 }
    }
}

/// `lk(f Σ^k, f Σ^l)` for a map of `F_{k,l,-}`.
pub fn sphere_linking(f: &PlMap, k: u32, l: u32) -> Result<i64> {
    let c = canonical_subcomplexes(k, l)?;
    linking_number(f, &boundary_chain(&c.sigma_k_span()), &boundary_chain(&c.sigma_l_span()), CountMode::Signed)
}

fn source_indices(k: u32, l: u32, dir: Direction) -> Result<(u32, u32)> {
    match dir {
        Direction::RaiseK if k >= 2 && l <= k - 1 => Ok((k - 1, l)),
        Direction::RaiseL if l >= 2 => Ok((k, l - 1)),
        _ => Err(Error::Precondition(format!("cannot reach F_{{{k},{l},-}} by {dir:?}"))),
    }
}

/// Extends an almost embedding `f` of the smaller complex in `R^{k+l}` to a
/// map of `F_{k,l,-}` in `R^{k+l+1}`.
///
/// `f` is placed in the hyperplane `x_{k+l+1} = 0`. Faces through the new
/// vertex `k+l+3` are coned from a point above the hyperplane; the remaining
/// new faces are coned, one dimension at a time, from points below it. The
/// result is returned only if it passes the exact almost-embedding check and
/// its sphere linking number equals that of `f`; the last coordinate is
/// mirrored when that fixes the sign.
pub fn suspend_almost_embedding(f: &PlMap, k: u32, l: u32, dir: Direction, opts: SuspendOptions) -> Result<PlMap> {
    let (k0, l0) = source_indices(k, l, dir)?;
    let source = build_family(FamilySelector::FMinus { k: k0, l: l0 })?;
    if f.complex() != &source || f.dim() != (k + l) as usize {
        return Err(Error::Precondition(format!("expected a map of F_{{{k0},{l0},-}} into R^{}", k + l)));
    }
    if let AlmostEmbedding::Witness { left, right, .. } = almost_embedding_check(f) {
        return Err(Error::NotAlmostEmbedding { left: left.to_vec(), right: right.to_vec() });
    }
    let lk0 = sphere_linking(f, k0, l0)?;
    let target = build_family(FamilySelector::FMinus { k, l })?;
    let apex_label = k + l + 3;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ ((k as u64) << 32 | l as u64));
    let mut last = None;
    for _ in 0..opts.max_attempts {
        let g = build_candidate(f, &source, &target, apex_label, &mut rng)?;
        match almost_embedding_check(&g) {
            AlmostEmbedding::Witness { left, right, .. } => {
                last = Some(Error::NotAlmostEmbedding { left: left.to_vec(), right: right.to_vec() });
                continue;
            }
            AlmostEmbedding::Ok => {}
        }
        let lk1 = sphere_linking(&g, k, l)?;
        if lk1 == lk0 {
            return Ok(g);
        }
        if lk1 == -lk0 {
            return Ok(g.reflected(g.dim() - 1));
        }
        last = Some(Error::Verification(format!("linking number {lk1} after suspension, expected {lk0}")));
    }
    Err(last.unwrap_or_else(|| Error::RetryBudget("no suspension attempts".into())))
}

fn random_point(rng: &mut ChaCha8Rng, base: &Point, spread: i64, height: i64) -> Point {
    let mut p: Vec<_> = base.0.iter().map(|x| x + q(rng.gen_range(-spread..=spread)) / q(8)).collect();
    p.push(q(height));
    Point(p)
}

fn build_candidate(f: &PlMap, source: &Complex, target: &Complex, apex: u32, rng: &mut ChaCha8Rng) -> Result<PlMap> {
    let mut base = f.clone();
    if base.coords().contains_key(&apex) {
        let fresh = base.fresh_node();
        base.renumber_node(apex, fresh)?;
    }
    let d = base.dim();
    let n = base.coords().len() as i64;
    let centroid = Point(
        (0..d).map(|i| base.coords().values().fold(q(0), |acc, p| acc + &p.0[i]) / q(n)).collect(),
    );
    let h = rng.gen_range(1..=4);
    let mut g = base.lifted(source.clone());
    g.set_point(apex, random_point(rng, &centroid, 8, h));
    let mut g = g.extended(target.clone())?;
    let mut new_faces: Vec<Face> = target.faces().filter(|s| !source.contains(s) && s.len() > 1).cloned().collect();
    new_faces.sort_by_key(|s| s.len());
    let mut lower: Vec<Option<u32>> = vec![None; target.dim() as usize + 2];
    for s in new_faces {
        let cells = if s.contains(apex) {
            let rho = s.without(apex);
            let sign = if rho.len() % 2 == 0 { 1 } else { -1 };
            g.cells(&rho).into_iter().map(|c| Cell { nodes: [vec![apex], c.nodes].concat(), sign: c.sign * sign }).collect()
        } else {
            let node = match lower[s.len()] {
                Some(v) => v,
                None => {
                    let depth = -(s.len() as i64) - rng.gen_range(0..=2i64);
                    let v = g.add_node(random_point(rng, &centroid, 8, depth));
                    lower[s.len()] = Some(v);
                    v
                }
            };
            let mut cells = Vec::new();
            for (i, facet) in s.facets().into_iter().enumerate() {
                let e = if i % 2 == 0 { 1 } else { -1 };
                for c in g.cells(&facet) {
                    cells.push(Cell { nodes: [vec![node], c.nodes].concat(), sign: c.sign * e });
                }
            }
            cells
        };
        g.set_cells(s, cells)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linking::{base_embedding_k6, k6_to_f11_minus};

    #[test]
    fn raise_k_from_base() {
        let f = k6_to_f11_minus(&base_embedding_k6()).unwrap();
        assert_eq!(sphere_linking(&f, 1, 1).unwrap(), 1);
        let g = suspend_almost_embedding(&f, 2, 1, Direction::RaiseK, SuspendOptions::default()).unwrap();
        assert!(almost_embedding_check(&g).is_ok());
        assert_eq!(sphere_linking(&g, 2, 1).unwrap(), 1);
        let sigma_l = canonical_subcomplexes(2, 1).unwrap().sigma_l_span();
        for e in sigma_l.facets() {
            let pts: Vec<&Point> = g.cell_points(&g.cells(&e)[0]);
            assert!(pts.iter().all(|p| p.0[3] == q(0)));
        }
    }

    #[test]
    fn direction_preconditions() {
        let f = k6_to_f11_minus(&base_embedding_k6()).unwrap();
        assert!(suspend_almost_embedding(&f, 1, 1, Direction::RaiseK, SuspendOptions::default()).is_err());
        assert!(suspend_almost_embedding(&f, 2, 1, Direction::RaiseL, SuspendOptions::default()).is_err());
    }
}
