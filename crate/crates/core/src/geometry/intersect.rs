use num::{One, Signed, Zero};
use serde::Serialize;

use super::linalg::{affinely_independent, det_columns, rank, solve};
use super::lp::feasible_point;
use super::{sign_of, Cell, PlMap, Point, Q};
use crate::simplicial::{disjoint_simplex_pairs, Face, OrientedSimplex};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    Signed,
    Mod2,
}

/// Intersection of a p-simplex and a q-simplex with `p + q = d`.
///
/// Returns `Ok(None)` if disjoint, `Ok(Some(s))` for a single transversal
/// crossing in both interiors with the sign `s` of
/// `det[a1-a0, ..., ap-a0, b1-b0, ..., bq-b0]`, and an error for every
/// other configuration (tangency, boundary hits, overlaps).
pub fn transversal_intersection(a: &[&Point], b: &[&Point]) -> Result<Option<i8>> {
    let d = a[0].dim();
    let (p, qd) = (a.len() - 1, b.len() - 1);
    if p + qd != d {
        return Err(Error::Precondition(format!("dimensions {p} + {qd} != {d}")));
    }
    let mut frame: Vec<Point> = a[1..].iter().map(|x| x.sub(a[0])).collect();
    frame.extend(b[1..].iter().map(|x| x.sub(b[0])));
    let det = det_columns(&frame);
    if det.is_zero() {
        return match cells_meet(a, b) {
            None => Ok(None),
            Some(pt) => Err(Error::Degenerate(format!("non-transversal contact near {pt:?}"))),
        };
    }
    // a0 + sum s_i e_i = b0 + sum t_j f_j
    let rows: Vec<Vec<Q>> = (0..d)
        .map(|r| {
            let mut row: Vec<Q> = frame[..p].iter().map(|e| e.0[r].clone()).collect();
            row.extend(frame[p..].iter().map(|f| -f.0[r].clone()));
            row
        })
        .collect();
    let rhs: Vec<Q> = b[0].sub(a[0]).0;
    let x = solve(&rows, &rhs).expect("nonsingular frame");
    let (s, t) = x.split_at(p);
    let mut bary: Vec<Q> = Vec::with_capacity(d + 2);
    bary.push(Q::one() - s.iter().fold(Q::zero(), |acc, v| acc + v));
    bary.extend(s.iter().cloned());
    bary.push(Q::one() - t.iter().fold(Q::zero(), |acc, v| acc + v));
    bary.extend(t.iter().cloned());
    if bary.iter().any(Signed::is_negative) {
        return Ok(None);
    }
    if bary.iter().any(Zero::is_zero) {
        return Err(Error::Degenerate("intersection on a cell boundary".into()));
    }
    Ok(Some(sign_of(&det)))
}

/// Exact test whether the convex hulls of `a` and `b` meet; returns a common point.
pub fn cells_meet(a: &[&Point], b: &[&Point]) -> Option<Point> {
    let d = a[0].dim();
    if a.len() + b.len() <= d + 1 {
        let all: Vec<&Point> = a.iter().chain(b.iter()).copied().collect();
        if affinely_independent(&all) {
            return None;
        }
    }
    if boxes_disjoint(a, b) {
        return None;
    }
    let (na, nb) = (a.len(), b.len());
    let mut rows: Vec<Vec<Q>> = Vec::with_capacity(d + 2);
    for c in 0..d {
        let mut row: Vec<Q> = a.iter().map(|p| p.0[c].clone()).collect();
        row.extend(b.iter().map(|p| -p.0[c].clone()));
        rows.push(row);
    }
    let mut r1 = vec![Q::one(); na];
    r1.extend(vec![Q::zero(); nb]);
    let mut r2 = vec![Q::zero(); na];
    r2.extend(vec![Q::one(); nb]);
    rows.push(r1);
    rows.push(r2);
    let mut rhs = vec![Q::zero(); d];
    rhs.push(Q::one());
    rhs.push(Q::one());
    let x = feasible_point(&rows, &rhs)?;
    let mut pt = Point::zero(d);
    for (lam, p) in x[..na].iter().zip(a) {
        pt = pt.add(&p.scale(lam));
    }
    Some(pt)
}

fn boxes_disjoint(a: &[&Point], b: &[&Point]) -> bool {
    let d = a[0].dim();
    (0..d).any(|c| {
        let amax = a.iter().map(|p| &p.0[c]).max().unwrap();
        let amin = a.iter().map(|p| &p.0[c]).min().unwrap();
        let bmax = b.iter().map(|p| &p.0[c]).max().unwrap();
        let bmin = b.iter().map(|p| &p.0[c]).min().unwrap();
        amax < bmin || bmax < amin
    })
}

/// Signed (or mod 2) number of points in `f(σ) ∩ f(τ)` for disjoint faces with
/// `dim σ + dim τ = d`.
pub fn pair_intersection_number(f: &PlMap, sigma: &OrientedSimplex, tau: &OrientedSimplex, mode: CountMode) -> Result<i64> {
    let (sf, tf) = (sigma.face(), tau.face());
    if !sf.is_disjoint(&tf) {
        return Err(Error::Precondition(format!("{sf:?} and {tf:?} are not disjoint")));
    }
    if !f.complex().contains(&sf) || !f.complex().contains(&tf) {
        return Err(Error::Precondition("faces must belong to the source complex".into()));
    }
    if (sf.dim() + tf.dim()) as usize != f.dim() {
        return Err(Error::Precondition(format!(
            "dim {} + dim {} != target dimension {}",
            sf.dim(),
            tf.dim(),
            f.dim()
        )));
    }
    let n = face_pair_count(f, &sf, &tf)?;
    let n = n * (sigma.orientation() * tau.orientation()) as i64;
    Ok(match mode {
        CountMode::Signed => n,
        CountMode::Mod2 => n.rem_euclid(2),
    })
}

/// Signed count over cells, faces taken with increasing orientation.
pub(crate) fn face_pair_count(f: &PlMap, sf: &Face, tf: &Face) -> Result<i64> {
    let mut total = 0i64;
    for c1 in f.cells(sf) {
        let p1 = f.cell_points(&c1);
        for c2 in f.cells(tf) {
            let p2 = f.cell_points(&c2);
            if let Some(s) = transversal_intersection(&p1, &p2)
                .map_err(|e| Error::Degenerate(format!("{sf:?} x {tf:?}: {e}")))?
            {
                total += (s * c1.sign * c2.sign) as i64;
            }
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Violation {
    /// A cell of the face is not affinely independent.
    DegenerateCell { face: Face },
    /// Two disjoint faces are not in general position.
    DegeneratePair { left: Face, right: Face, detail: String },
}

/// Violated general-position predicates; empty iff every intersection count
/// between disjoint faces with `dim σ + dim τ <= d` is well defined.
#[derive(Clone, Debug, Default, Serialize)]
pub struct GeneralPositionReport {
    pub violations: Vec<Violation>,
}

impl GeneralPositionReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn general_position_report(f: &PlMap) -> GeneralPositionReport {
    let d = f.dim();
    let mut report = GeneralPositionReport::default();
    for face in f.complex().faces() {
        if face.len() > d + 1 {
            continue;
        }
        for c in f.cells(face) {
            if !affinely_independent(&f.cell_points(&c)) {
                report.violations.push(Violation::DegenerateCell { face: face.clone() });
                break;
            }
        }
    }
    for (s, t) in disjoint_simplex_pairs(f.complex(), None) {
        if s >= t {
            continue;
        }
        let sum = (s.dim() + t.dim()) as usize;
        if sum > d {
            continue;
        }
        'cells: for c1 in f.cells(&s) {
            let p1 = f.cell_points(&c1);
            for c2 in f.cells(&t) {
                let p2 = f.cell_points(&c2);
                let bad = if sum < d {
                    let all: Vec<&Point> = p1.iter().chain(p2.iter()).copied().collect();
                    (!affinely_independent(&all)).then(|| "affinely dependent".to_string())
                } else {
                    transversal_intersection(&p1, &p2).err().map(|e| e.to_string())
                };
                if let Some(detail) = bad {
                    report.violations.push(Violation::DegeneratePair { left: s.clone(), right: t.clone(), detail });
                    break 'cells;
                }
            }
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum AlmostEmbedding {
    Ok,
    Witness { left: Face, right: Face, point: Point },
}

impl AlmostEmbedding {
    pub fn is_ok(&self) -> bool {
        matches!(self, AlmostEmbedding::Ok)
    }
}

/// Exact check that images of disjoint faces are disjoint.
///
/// Only pairs that are maximal among disjoint pairs are tested; the image of a
/// face is assumed to contain the images of its subfaces, which holds for every
/// map built by this crate.
pub fn almost_embedding_check(f: &PlMap) -> AlmostEmbedding {
    let k = f.complex();
    for (s, t) in disjoint_simplex_pairs(k, None) {
        if s > t {
            continue;
        }
        let extendable = k.vertices().iter().any(|&v| {
            !s.contains(v) && !t.contains(v) && (k.contains(&s.with(v)) || k.contains(&t.with(v)))
        });
        if extendable {
            continue;
        }
        for c1 in f.cells(&s) {
            let p1 = f.cell_points(&c1);
            for c2 in f.cells(&t) {
                if let Some(point) = cells_meet(&p1, &f.cell_points(&c2)) {
                    return AlmostEmbedding::Witness { left: s, right: t, point };
                }
            }
        }
    }
    AlmostEmbedding::Ok
}

/// Embedding check for maps of graphs (complexes of dimension at most one):
/// segments may only meet at shared nodes, and segments sharing one node may
/// not overlap.
pub fn graph_embedding_check(f: &PlMap) -> Result<()> {
    if f.complex().dim() > 1 {
        return Err(Error::Precondition("graph embedding check needs a 1-complex".into()));
    }
    let segments: Vec<(Face, Cell)> = f
        .complex()
        .faces_of_dim(1)
        .into_iter()
        .flat_map(|e| f.cells(&e).into_iter().map(move |c| (e.clone(), c)))
        .collect();
    for i in 0..segments.len() {
        let (ei, ci) = &segments[i];
        let pi = f.cell_points(ci);
        if pi[0] == pi[1] {
            return Err(Error::NotEmbedding(format!("zero-length segment on {ei:?}")));
        }
        for (ej, cj) in &segments[i + 1..] {
            let shared: Vec<u32> = ci.nodes.iter().copied().filter(|n| cj.nodes.contains(n)).collect();
            let pj = f.cell_points(cj);
            match shared.len() {
                0 => {
                    if let Some(p) = cells_meet(&pi, &pj) {
                        return Err(Error::NotEmbedding(format!("segments of {ei:?} and {ej:?} meet at {p:?}")));
                    }
                }
                1 => {
                    let x = f.point(shared[0]);
                    let u = f.point(*ci.nodes.iter().find(|&&n| n != shared[0]).unwrap()).sub(x);
                    let w = f.point(*cj.nodes.iter().find(|&&n| n != shared[0]).unwrap()).sub(x);
                    let dot = u.0.iter().zip(&w.0).fold(Q::zero(), |acc, (a, b)| acc + a * b);
                    if rank(&[u, w]) < 2 && dot.is_positive() {
                        return Err(Error::NotEmbedding(format!("segments of {ei:?} and {ej:?} overlap")));
                    }
                }
                _ => return Err(Error::NotEmbedding(format!("{ei:?} and {ej:?} share a segment"))),
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<Point> {
        v.iter().map(|c| Point::from_ints(c)).collect()
    }

    #[test]
    fn crossing_segments_in_the_plane() {
        let a = pts(&[&[0, 0], &[2, 2]]);
        let b = pts(&[&[0, 2], &[2, 0]]);
        let ar: Vec<&Point> = a.iter().collect();
        let br: Vec<&Point> = b.iter().collect();
        let s = transversal_intersection(&ar, &br).unwrap().unwrap();
        let s2 = transversal_intersection(&br, &ar).unwrap().unwrap();
        assert_eq!(s.abs(), 1);
        // (-1)^{1*1}
        assert_eq!(s2, -s);
        assert!(cells_meet(&ar, &br).is_some());
    }

    #[test]
    fn touching_is_degenerate() {
        let a = pts(&[&[0, 0], &[2, 0]]);
        let b = pts(&[&[1, 0], &[1, 3]]);
        let ar: Vec<&Point> = a.iter().collect();
        let br: Vec<&Point> = b.iter().collect();
        assert!(transversal_intersection(&ar, &br).is_err());
        let c = pts(&[&[5, 5], &[6, 6]]);
        let cr: Vec<&Point> = c.iter().collect();
        assert_eq!(transversal_intersection(&ar, &cr).unwrap(), None);
    }

    #[test]
    fn collinear_disjoint_segments_do_not_meet() {
        let a = pts(&[&[0, 0, 0], &[1, 0, 0]]);
        let b = pts(&[&[2, 0, 0], &[3, 0, 0]]);
        let ar: Vec<&Point> = a.iter().collect();
        let br: Vec<&Point> = b.iter().collect();
        assert!(cells_meet(&ar, &br).is_none());
        let c = pts(&[&[0, 0, 0], &[3, 0, 0]]);
        let cr: Vec<&Point> = c.iter().collect();
        assert!(cells_meet(&ar, &cr).is_some());
    }

    #[test]
    fn triangle_and_segment_in_r3() {
        let t = pts(&[&[0, 0, 0], &[4, 0, 0], &[0, 4, 0]]);
        let s = pts(&[&[1, 1, -1], &[1, 1, 1]]);
        let tr: Vec<&Point> = t.iter().collect();
        let sr: Vec<&Point> = s.iter().collect();
        assert_eq!(transversal_intersection(&tr, &sr).unwrap(), Some(1));
        assert_eq!(transversal_intersection(&sr, &tr).unwrap(), Some(1));
    }
}
