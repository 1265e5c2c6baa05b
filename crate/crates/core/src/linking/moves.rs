use std::collections::HashMap;

use serde::Serialize;

use super::{LinkMatrix, MoveSpec};
use crate::signed_graph::{Certificate, SignedGraph, Solution};
use crate::Result;

/// Change of the linking matrix produced by a move.
///
/// With `a = (A, B)`, `b = (C, D)` and `P < Q` the remaining labels, the
/// oriented entries `lk(PAB, QCD)` and `lk(QAB, PCD)` each change by the
/// multiplicity and nothing else changes.
pub fn move_delta(m: &MoveSpec) -> Result<LinkMatrix> {
    m.validate()?;
    let (p, q) = m.rest();
    let (a0, a1) = m.a;
    let (b0, b1) = m.b;
    let mut d = LinkMatrix::zero();
    d.add_oriented(&[p, a0, a1], &[q, b0, b1], m.multiplicity)?;
    d.add_oriented(&[q, a0, a1], &[p, b0, b1], m.multiplicity)?;
    Ok(d)
}

pub fn matrix_move(lk: &LinkMatrix, m: &MoveSpec) -> Result<LinkMatrix> {
    let d = move_delta(m)?;
    Ok(LinkMatrix(std::array::from_fn(|i| lk.0[i] + d.0[i])))
}

/// One move with multiplicity `+1` per unordered pair of disjoint edges, both
/// directed by increasing labels. Reversing either edge negates the delta, and
/// exchanging the roles of the two edges leaves it unchanged.
pub fn all_moves() -> Vec<MoveSpec> {
    let edges: Vec<(u32, u32)> = (1..=6).flat_map(|i| (i + 1..=6).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for (x, &a) in edges.iter().enumerate() {
        for &b in &edges[x + 1..] {
            if a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1 {
                out.push(MoveSpec { a, b, multiplicity: 1 });
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub enum Reachability {
    Sequence(Vec<MoveSpec>),
    /// Integer functional on matrices, constant modulo `modulus` under every
    /// move, separating the two matrices.
    Unreachable(Certificate),
}

fn lattice() -> (Vec<MoveSpec>, SignedGraph) {
    let moves = all_moves();
    let mut g = SignedGraph::new(10);
    for m in &moves {
        let d = move_delta(m).expect("valid move");
        let entries: Vec<(usize, i64)> = d.0.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i, v)).collect();
        g.add_edge(&entries).expect("ten entries");
    }
    (moves, g)
}

/// Sequence of moves turning `from` into `to`, or a certificate that none
/// exists. Sequences of at most three unit moves are searched exhaustively
/// first; otherwise the lattice solver returns one move per edge pair with
/// the needed multiplicity.
pub fn move_reachability(from: &LinkMatrix, to: &LinkMatrix) -> Result<Reachability> {
    let target = to.sub(from);
    if target == LinkMatrix::zero() {
        return Ok(Reachability::Sequence(Vec::new()));
    }
    let (moves, g) = lattice();
    let signed: Vec<(MoveSpec, LinkMatrix)> = moves
        .iter()
        .flat_map(|m| [*m, m.inverse()])
        .map(|m| (m, move_delta(&m).expect("valid move")))
        .collect();
    let solution = g.solve(&target.0)?;
    if let Solution::Infeasible(c) = solution {
        return Ok(Reachability::Unreachable(c));
    }
    for (m1, d1) in &signed {
        if *d1 == target {
            return Ok(Reachability::Sequence(vec![*m1]));
        }
    }
    // meet in the middle over sums of two unit moves
    let mut two: HashMap<LinkMatrix, (usize, usize)> = HashMap::new();
    for (i, (_, d1)) in signed.iter().enumerate() {
        for (j, (_, d2)) in signed.iter().enumerate() {
            two.entry(LinkMatrix(std::array::from_fn(|x| d1.0[x] + d2.0[x]))).or_insert((i, j));
        }
    }
    if let Some(&(i, j)) = two.get(&target) {
        return Ok(Reachability::Sequence(vec![signed[i].0, signed[j].0]));
    }
    for (m1, d1) in &signed {
        if let Some(&(i, j)) = two.get(&target.sub(d1)) {
            return Ok(Reachability::Sequence(vec![*m1, signed[i].0, signed[j].0]));
        }
    }
    match solution {
        Solution::Infeasible(_) => unreachable!(),
        Solution::Feasible(mult) => Ok(Reachability::Sequence(
            moves.iter().zip(mult).filter(|(_, t)| *t != 0).map(|(m, t)| MoveSpec { multiplicity: t, ..*m }).collect(),
        )),
    }
}

/// Checks an unreachability certificate against the move lattice.
pub fn verify_unreachable(cert: &Certificate, from: &LinkMatrix, to: &LinkMatrix) -> bool {
    let (_, g) = lattice();
    cert.verify(&g, &to.sub(from).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linking::cgs_parity;
    use proptest::prelude::*;

    fn apply_all(start: &LinkMatrix, seq: &[MoveSpec]) -> LinkMatrix {
        seq.iter().fold(*start, |m, s| matrix_move(&m, s).unwrap())
    }

    #[test]
    fn triple_pattern_doubles_the_exceptional_pair() {
        let seq = [
            MoveSpec::new((1, 2), (4, 5), 1).unwrap(),
            MoveSpec::new((1, 6), (3, 4), 1).unwrap(),
            MoveSpec::new((2, 3), (5, 6), 1).unwrap(),
        ];
        let mut want = LinkMatrix::canonical();
        want.0[0] = 3;
        assert_eq!(apply_all(&LinkMatrix::canonical(), &seq), want);
        // the second edge read as 4 -> 3 does not cancel
        let alt = [seq[0], MoveSpec::new((1, 6), (4, 3), 1).unwrap(), seq[2]];
        assert_ne!(apply_all(&LinkMatrix::canonical(), &alt), want);
    }

    #[test]
    fn reachability_examples() {
        let c = LinkMatrix::canonical();
        let Reachability::Sequence(s) = move_reachability(&c, &c).unwrap() else { panic!() };
        assert!(s.is_empty());
        let mut t = c;
        t.0[0] = 3;
        let Reachability::Sequence(s) = move_reachability(&c, &t).unwrap() else { panic!() };
        assert!(s.len() <= 3);
        assert_eq!(apply_all(&c, &s), t);
        let Reachability::Unreachable(cert) = move_reachability(&c, &LinkMatrix::zero()).unwrap() else { panic!() };
        assert!(verify_unreachable(&cert, &c, &LinkMatrix::zero()));
    }

    #[test]
    fn moves_ignore_edge_roles() {
        for m in all_moves() {
            let swapped = MoveSpec { a: m.b, b: m.a, ..m };
            assert_eq!(move_delta(&m).unwrap(), move_delta(&swapped).unwrap());
        }
        assert_eq!(all_moves().len(), 45);
    }

    proptest! {
        #[test]
        fn reachable_iff_same_parity(v in prop::array::uniform10(-4i64..5), w in prop::array::uniform10(-4i64..5)) {
            let (a, b) = (LinkMatrix(v), LinkMatrix(w));
            match move_reachability(&a, &b).unwrap() {
                Reachability::Sequence(s) => {
                    prop_assert_eq!(cgs_parity(&a), cgs_parity(&b));
                    prop_assert_eq!(apply_all(&a, &s), b);
                }
                Reachability::Unreachable(c) => {
                    prop_assert_ne!(cgs_parity(&a), cgs_parity(&b));
                    prop_assert!(verify_unreachable(&c, &a, &b));
                }
            }
        }

        #[test]
        fn delta_preserves_parity(i in 0usize..45, m in -3i64..4) {
            let spec = MoveSpec { multiplicity: m, ..all_moves()[i] };
            let d = move_delta(&spec).unwrap();
            prop_assert_eq!(d.0.iter().sum::<i64>().rem_euclid(2), 0);
            if m == 0 { prop_assert_eq!(d, LinkMatrix::zero()); }
        }
    }
}
