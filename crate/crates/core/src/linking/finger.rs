use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{link_matrix, matrix_move, LinkMatrix, MoveSpec};
use crate::geometry::linalg::det_columns;
use crate::geometry::{q, q_frac, PlMap, Point};
use crate::simplicial::Face;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct FingerOptions {
    pub seed: u64,
    /// Lasso constructions tried per unit move.
    pub max_attempts: usize,
}

impl Default for FingerOptions {
    fn default() -> Self {
        FingerOptions { seed: 0, max_attempts: 400 }
    }
}

/// Reroutes the image of edge `a` through a small rectangular lasso around
/// the image of edge `b`, `|multiplicity|` times.
///
/// Each lasso leaves `f(a)` at a point `p`, runs to a point `q` in the
/// interior of a segment of `f(b)`, circles `f(b)` in a plane transverse to
/// that segment, and returns. Candidates are shrunk by powers of two and
/// re-drawn until the result is an embedding whose linking matrix differs
/// from the old one exactly by [`matrix_move`]. The direction of the loop is
/// chosen to realise the sign of the multiplicity.
pub fn finger_move(f: &PlMap, m: &MoveSpec, opts: FingerOptions) -> Result<PlMap> {
    m.validate()?;
    let mut g = f.clone();
    let mut lk = link_matrix(f)?;
    let unit = MoveSpec { multiplicity: m.multiplicity.signum(), ..*m };
    for r in 0..m.multiplicity.unsigned_abs() {
        let want = matrix_move(&lk, &unit)?;
        g = unit_move(&g, &unit, &lk, &want, opts.seed.wrapping_add(r), opts.max_attempts)?;
        lk = want;
    }
    Ok(g)
}

fn node_sequence(g: &PlMap, from: u32, to: u32) -> Vec<u32> {
    g.polyline(from, to)
}

fn small_vector(rng: &mut ChaCha8Rng) -> Point {
    Point::from_ints(&[rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(-3..=3)])
}

fn unit_move(g: &PlMap, m: &MoveSpec, lk: &LinkMatrix, want: &LinkMatrix, seed: u64, budget: usize) -> Result<PlMap> {
    let mix = (m.a.0 as u64) << 24 | (m.a.1 as u64) << 16 | (m.b.0 as u64) << 8 | m.b.1 as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ mix.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let apath = node_sequence(g, m.a.0, m.a.1);
    let bpath = node_sequence(g, m.b.0, m.b.1);
    let delta = want.sub(lk);
    let reversed_delta = delta.negated();
    for attempt in 0..budget {
        let i = rng.gen_range(0..apath.len() - 1);
        let j = rng.gen_range(0..bpath.len() - 1);
        let (x0, x1) = (g.point(apath[i]), g.point(apath[i + 1]));
        let (y0, y1) = (g.point(bpath[j]), g.point(bpath[j + 1]));
        let half = q_frac(1, 2);
        let p = x0.lerp(x1, &half);
        let qq = y0.lerp(y1, &half);
        let u = y1.sub(y0);
        let (v, w) = (small_vector(&mut rng), small_vector(&mut rng));
        if det_columns(&[u, v.clone(), w.clone()]) == q(0) {
            continue;
        }
        let eps = q_frac(1, 1 << (2 + (attempt / 8).min(28)));
        let dir = x1.sub(x0).scale(&eps);
        let (p1, p2) = (p.sub(&dir), p.add(&dir));
        let (ve, we) = (v.scale(&eps), w.scale(&eps));
        let corners = [
            qq.sub(&ve).sub(&we),
            qq.add(&ve).sub(&we),
            qq.add(&ve).add(&we),
            qq.sub(&ve).add(&we),
        ];
        for flip in [false, true] {
            let mut h = g.clone();
            let mut detour = vec![h.add_node(p1.clone())];
            let order: Vec<usize> = if flip { vec![3, 2, 1, 0] } else { vec![0, 1, 2, 3] };
            for c in order {
                detour.push(h.add_node(corners[c].clone()));
            }
            detour.push(h.add_node(p2.clone()));
            let mut nodes = apath[..=i].to_vec();
            nodes.extend(detour);
            nodes.extend(&apath[i + 1..]);
            if m.a.0 > m.a.1 {
                nodes.reverse();
            }
            h.set_polyline(&Face::from_distinct([m.a.0, m.a.1]), nodes)?;
            let Ok(got) = link_matrix(&h) else { break };
            let d = got.sub(lk);
            if d == delta {
                return Ok(h);
            }
            if d != reversed_delta {
                break;
            }
        }
    }
    Err(Error::RetryBudget(format!("no valid lasso for {m:?} after {budget} attempts")))
}

/// Embedding with linking number `2z + 1` on `{123, 456}` and zero on every
/// other pair: `|z|` rounds of three moves applied to the base embedding.
pub fn realize_odd_link(z: i64, opts: FingerOptions) -> Result<PlMap> {
    let s = z.signum();
    let round = [
        MoveSpec::new((1, 2), (4, 5), s)?,
        MoveSpec::new((1, 6), (3, 4), s)?,
        MoveSpec::new((2, 3), (5, 6), s)?,
    ];
    let mut f = super::base_embedding_k6();
    for r in 0..z.unsigned_abs() {
        for (i, m) in round.iter().enumerate() {
            let o = FingerOptions { seed: opts.seed.wrapping_add(r * 3 + i as u64), ..opts };
            f = finger_move(&f, m, o)?;
        }
    }
    let mut want = LinkMatrix::zero();
    want.0[0] = 2 * z + 1;
    let got = link_matrix(&f)?;
    if got != want {
        return Err(Error::Verification(format!("realized matrix {:?} differs from {:?}", got.0, want.0)));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::graph_embedding_check;
    use crate::linking::{base_embedding_k6, cgs_parity};

    #[test]
    fn single_move_changes_two_entries() {
        let f = base_embedding_k6();
        let m = MoveSpec::new((1, 2), (4, 5), 1).unwrap();
        let g = finger_move(&f, &m, FingerOptions::default()).unwrap();
        graph_embedding_check(&g).unwrap();
        let d = link_matrix(&g).unwrap().sub(&link_matrix(&f).unwrap());
        let mut want = LinkMatrix::zero();
        want.0[0] = 1;
        want.0[3] = 1;
        assert_eq!(d, want);
        assert_eq!(cgs_parity(&link_matrix(&g).unwrap()), 1);
    }

    #[test]
    fn move_then_inverse_restores_matrix() {
        let f = base_embedding_k6();
        let m = MoveSpec::new((2, 5), (3, 6), 1).unwrap();
        let g = finger_move(&f, &m, FingerOptions::default()).unwrap();
        let h = finger_move(&g, &m.inverse(), FingerOptions::default()).unwrap();
        assert_eq!(link_matrix(&h).unwrap(), link_matrix(&f).unwrap());
    }

    #[test]
    fn realize_small_values() {
        for z in [-1, 0, 1] {
            let f = realize_odd_link(z, FingerOptions::default()).unwrap();
            assert_eq!(link_matrix(&f).unwrap().0[0], 2 * z + 1);
        }
    }
}
