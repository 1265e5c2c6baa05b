//! Linking numbers of disjoint cycles via a generic cone.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use num::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::intersect::transversal_intersection;
use super::{cells_meet, q, CountMode, PlMap, Point};
use crate::simplicial::Face;
use crate::{Error, Result};

/// Integer chain of faces, each taken with its increasing orientation.
pub type Chain = Vec<(Face, i64)>;

/// Boundary of the simplex on `face` (oriented by increasing labels).
pub fn boundary_chain(face: &Face) -> Chain {
    face.oriented().boundary().into_iter().map(|(f, s)| (f, s as i64)).collect()
}

/// Checks that all faces share one dimension and that the boundary vanishes.
pub fn check_cycle(chain: &Chain) -> Result<usize> {
    let Some((first, _)) = chain.first() else {
        return Err(Error::Precondition("empty chain".into()));
    };
    let dim = first.len() - 1;
    if chain.iter().any(|(f, _)| f.len() != dim + 1) {
        return Err(Error::Precondition("chain mixes dimensions".into()));
    }
    if dim == 0 {
        let total: i64 = chain.iter().map(|(_, c)| c).sum();
        return if total == 0 { Ok(0) } else { Err(Error::Precondition("0-chain with nonzero augmentation".into())) };
    }
    let mut acc: BTreeMap<Face, i64> = BTreeMap::new();
    for (f, c) in chain {
        for (g, s) in f.oriented().boundary() {
            *acc.entry(g).or_default() += c * s as i64;
        }
    }
    if acc.values().any(|&v| v != 0) {
        return Err(Error::Precondition("chain is not a cycle".into()));
    }
    Ok(dim)
}

struct PieceSet {
    pieces: Vec<(Vec<u32>, i64)>,
}

fn expand(f: &PlMap, chain: &Chain) -> Result<PieceSet> {
    let mut pieces = Vec::new();
    for (face, c) in chain {
        if !f.complex().contains(face) {
            return Err(Error::Precondition(format!("{face:?} is not a face of the source")));
        }
        for cell in f.cells(face) {
            pieces.push((cell.nodes, c * cell.sign as i64));
        }
    }
    Ok(PieceSet { pieces })
}

fn map_seed(f: &PlMap, a: &Chain, b: &Chain) -> u64 {
    let mut h = DefaultHasher::new();
    for (k, p) in f.coords() {
        k.hash(&mut h);
        p.hash(&mut h);
    }
    a.hash(&mut h);
    b.hash(&mut h);
    h.finish()
}

/// Linking number of the images of two disjoint cycles.
///
/// The cone from a generic rational apex `O` over `f(A)` is a chain with
/// boundary `f(A)`; the result is the signed count of its intersections with
/// `f(B)`, where the cone over an oriented cell `(a0,...,ak)` is oriented as
/// `(O,a0,...,ak)`. Apexes are drawn from a deterministic sequence seeded by
/// the map and the chains, in boxes that double in size until the cone is in
/// general position with respect to `f(B)`.
pub fn linking_number(f: &PlMap, a: &Chain, b: &Chain, mode: CountMode) -> Result<i64> {
    linking_number_seeded(f, a, b, mode, None)
}

/// As [`linking_number`] with an explicit apex stream seed.
pub fn linking_number_seeded(f: &PlMap, a: &Chain, b: &Chain, mode: CountMode, seed: Option<u64>) -> Result<i64> {
    let k = check_cycle(a)?;
    let l = check_cycle(b)?;
    if k + l + 1 != f.dim() {
        return Err(Error::Precondition(format!("need d = k + l + 1, got d = {}, k = {k}, l = {l}", f.dim())));
    }
    let pa = expand(f, a)?;
    let pb = expand(f, b)?;
    for (na, _) in &pa.pieces {
        let ppa: Vec<&Point> = na.iter().map(|n| f.point(*n)).collect();
        for (nb, _) in &pb.pieces {
            let ppb: Vec<&Point> = nb.iter().map(|n| f.point(*n)).collect();
            if let Some(p) = cells_meet(&ppa, &ppb) {
                return Err(Error::Precondition(format!("images of the cycles meet at {p:?}")));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or_else(|| map_seed(f, a, b)));
    let base = f
        .coords()
        .values()
        .flat_map(|p| p.0.iter())
        .map(|x| x.abs().ceil().to_integer().to_i64().unwrap_or(1 << 40))
        .max()
        .unwrap_or(1)
        .clamp(1, 1 << 40);
    let mut radius = base;
    for attempt in 0..64 {
        if attempt % 8 == 7 {
            radius = radius.saturating_mul(2);
        }
        let apex = Point((0..f.dim()).map(|_| q(rng.gen_range(-radius * 4..=radius * 4)) / q(4)).collect());
        if let Some(total) = cone_count(f, &apex, &pa, &pb) {
            return Ok(match mode {
                CountMode::Signed => total,
                CountMode::Mod2 => total.rem_euclid(2),
            });
        }
    }
    Err(Error::RetryBudget("no generic cone apex found".into()))
}

fn cone_count(f: &PlMap, apex: &Point, pa: &PieceSet, pb: &PieceSet) -> Option<i64> {
    let mut total = 0i64;
    for (na, ca) in &pa.pieces {
        let mut cone: Vec<&Point> = vec![apex];
        cone.extend(na.iter().map(|n| f.point(*n)));
        if !super::linalg::affinely_independent(&cone) {
            return None;
        }
        for (nb, cb) in &pb.pieces {
            let ppb: Vec<&Point> = nb.iter().map(|n| f.point(*n)).collect();
            match transversal_intersection(&cone, &ppb) {
                Ok(Some(s)) => total += ca * cb * s as i64,
                Ok(None) => {}
                Err(_) => return None,
            }
        }
    }
    Some(total)
}
