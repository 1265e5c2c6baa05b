//! Dense exact linear algebra over the rationals.

use num::{One, Zero};

use super::{Point, Q};

/// Row-reduces `m` in place; returns the pivot columns and the sign of the
/// row swaps performed.
fn eliminate(m: &mut [Vec<Q>]) -> (Vec<usize>, i8) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut swap_sign = 1i8;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            swap_sign = -swap_sign;
        }
        let inv = Q::one() / &m[r][c];
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] * &inv;
            for j in c..cols {
                let t = &factor * &m[r][j];
                m[i][j] -= t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (pivots, swap_sign)
}

/// Determinant of a square matrix given by rows.
pub fn det(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    if n == 0 {
        return Q::one();
    }
    let (pivots, s) = eliminate(&mut m);
    if pivots.len() < n {
        return Q::zero();
    }
    let mut d = if s > 0 { Q::one() } else { -Q::one() };
    for (i, row) in m.iter().enumerate() {
        d *= &row[i];
    }
    d
}

/// Determinant of the matrix whose columns are `cols`.
pub fn det_columns(cols: &[Point]) -> Q {
    let n = cols.len();
    let rows: Vec<Vec<Q>> = (0..n).map(|i| cols.iter().map(|c| c.0[i].clone()).collect()).collect();
    det(rows)
}

/// Rank of a list of vectors.
pub fn rank(vectors: &[Point]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<Q>> = vectors.iter().map(|v| v.0.clone()).collect();
    eliminate(&mut m).0.len()
}

pub fn affinely_independent(points: &[&Point]) -> bool {
    if points.len() <= 1 {
        return true;
    }
    if points.len() > points[0].dim() + 1 {
        return false;
    }
    let diffs: Vec<Point> = points[1..].iter().map(|p| p.sub(points[0])).collect();
    rank(&diffs) == diffs.len()
}

/// Unique solution of the square system `m x = b`, or `None` if singular.
pub fn solve(m: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = m.len();
    let mut aug: Vec<Vec<Q>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (pivots, _) = eliminate(&mut aug);
    if pivots.len() < n || pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for i in (0..n).rev() {
        let mut s = aug[i][n].clone();
        for j in i + 1..n {
            s -= &aug[i][j] * &x[j];
        }
        x[i] = s / &aug[i][i];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{q, q_frac};

    #[test]
    fn det_and_solve() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        assert_eq!(det(m.clone()), q(5));
        let x = solve(&m, &[q(3), q(5)]).unwrap();
        assert_eq!(x, vec![q_frac(4, 5), q_frac(7, 5)]);
        let sing = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert_eq!(det(sing.clone()), q(0));
        assert!(solve(&sing, &[q(1), q(1)]).is_none());
    }

    #[test]
    fn permuted_rows_flip_det() {
        let m = vec![vec![q(0), q(1), q(2)], vec![q(3), q(0), q(1)], vec![q(1), q(1), q(0)]];
        let mut p = m.clone();
        p.swap(0, 1);
        assert_eq!(det(m), -det(p));
    }

    #[test]
    fn independence() {
        let a = Point::from_ints(&[0, 0, 0]);
        let b = Point::from_ints(&[1, 0, 0]);
        let c = Point::from_ints(&[2, 0, 0]);
        let d = Point::from_ints(&[0, 1, 0]);
        assert!(!affinely_independent(&[&a, &b, &c]));
        assert!(affinely_independent(&[&a, &b, &d]));
    }
}
