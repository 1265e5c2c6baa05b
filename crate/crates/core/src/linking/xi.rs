//! Odd cycles in the sign relation on pairs of oriented triangles of `[6]`.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::{Error, Result};

/// An oriented 3-cycle as a vertex sequence.
pub type Cycle = [u32; 3];
/// A pair of disjoint oriented 3-cycles, in the order written.
pub type PairRep = (Cycle, Cycle);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    /// Same unordered pair of oriented cycles, written differently.
    Relabel,
    /// `(ijk, pqr) -> (ijr, pqk)`, which forces opposite signs.
    Swap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct XiStep {
    pub from: PairRep,
    pub to: PairRep,
    pub relation: Relation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XiCertificate {
    pub steps: Vec<XiStep>,
}

fn least_rotation(c: Cycle) -> Cycle {
    let i = (0..3).min_by_key(|&i| c[i]).unwrap();
    [c[i], c[(i + 1) % 3], c[(i + 2) % 3]]
}

/// Canonical form: each cycle rotated to start at its least vertex, the pair
/// ordered lexicographically.
pub fn canonical(p: PairRep) -> PairRep {
    let (a, b) = (least_rotation(p.0), least_rotation(p.1));
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn swap(p: PairRep) -> PairRep {
    let ([i, j, k], [pp, q, r]) = p;
    ([i, j, r], [pp, q, k])
}

fn is_pair(p: PairRep) -> bool {
    let mut all: Vec<u32> = p.0.iter().chain(&p.1).copied().collect();
    all.sort_unstable();
    all == [1, 2, 3, 4, 5, 6]
}

fn rotations(c: Cycle) -> [Cycle; 3] {
    [c, [c[1], c[2], c[0]], [c[2], c[0], c[1]]]
}

fn representations(p: PairRep) -> Vec<PairRep> {
    let mut out = Vec::with_capacity(18);
    for a in rotations(p.0) {
        for b in rotations(p.1) {
            out.push((a, b));
            out.push((b, a));
        }
    }
    out
}

/// All 40 canonical pair states.
pub fn pair_states() -> Vec<PairRep> {
    let mut out = Vec::new();
    for (a, b) in super::k6_pairs() {
        let (a, b) = ([a[0], a[1], a[2]], [b[0], b[1], b[2]]);
        for x in [a, [a[0], a[2], a[1]]] {
            for y in [b, [b[0], b[2], b[1]]] {
                out.push(canonical((x, y)));
            }
        }
    }
    out
}

impl XiCertificate {
    pub fn swaps(&self) -> usize {
        self.steps.iter().filter(|s| s.relation == Relation::Swap).count()
    }

    /// Checks every step locally and that the chain closes up with an odd
    /// number of sign changes.
    pub fn verify(&self) -> Result<()> {
        let (Some(first), Some(last)) = (self.steps.first(), self.steps.last()) else {
            return Err(Error::Verification("empty certificate".into()));
        };
        for (i, s) in self.steps.iter().enumerate() {
            if !is_pair(s.from) || !is_pair(s.to) {
                return Err(Error::Verification(format!("step {i} is not a partition of [6]")));
            }
            let ok = match s.relation {
                Relation::Relabel => canonical(s.from) == canonical(s.to),
                Relation::Swap => swap(s.from) == s.to,
            };
            if !ok {
                return Err(Error::Verification(format!("step {i} does not satisfy {:?}", s.relation)));
            }
            if i > 0 && self.steps[i - 1].to != s.from {
                return Err(Error::Verification(format!("step {i} does not continue step {}", i - 1)));
            }
        }
        if canonical(first.from) != canonical(last.to) {
            return Err(Error::Verification("chain does not close".into()));
        }
        if self.swaps() % 2 == 0 {
            return Err(Error::Verification("chain has an even number of sign changes".into()));
        }
        Ok(())
    }
}

/// The six-step chain from `(123, 456)` to itself with three sign changes.
pub fn xi_reference_chain() -> XiCertificate {
    use Relation::*;
    let steps = [
        (([1, 2, 3], [4, 5, 6]), ([2, 3, 1], [5, 6, 4]), Relabel),
        (([2, 3, 1], [5, 6, 4]), ([2, 3, 4], [5, 6, 1]), Swap),
        (([2, 3, 4], [5, 6, 1]), ([3, 4, 2], [6, 1, 5]), Relabel),
        (([3, 4, 2], [6, 1, 5]), ([3, 4, 5], [6, 1, 2]), Swap),
        (([3, 4, 5], [6, 1, 2]), ([1, 2, 6], [4, 5, 3]), Relabel),
        (([1, 2, 6], [4, 5, 3]), ([1, 2, 3], [4, 5, 6]), Swap),
    ];
    XiCertificate { steps: steps.iter().map(|&(from, to, relation)| XiStep { from, to, relation }).collect() }
}

/// Parity propagation from `seed` along swap edges until two forced signs of
/// one state disagree; returns the closed chain through `seed`.
pub fn xi_contradiction_from(seed: PairRep) -> Result<XiCertificate> {
    let seed = canonical(seed);
    if !is_pair(seed) {
        return Err(Error::Precondition(format!("{seed:?} is not a pair of disjoint cycles")));
    }
    // parent link: (previous state, representation used at the previous state)
    let mut parity: BTreeMap<PairRep, (u8, Option<(PairRep, PairRep)>)> = BTreeMap::new();
    parity.insert(seed, (0, None));
    let mut queue = VecDeque::from([seed]);
    while let Some(u) = queue.pop_front() {
        let pu = parity[&u].0;
        for rep in representations(u) {
            let v = canonical(swap(rep));
            match parity.get(&v) {
                None => {
                    parity.insert(v, (pu ^ 1, Some((u, rep))));
                    queue.push_back(v);
                }
                Some(&(pv, _)) if pv == pu => {
                    let cert = close_chain(&parity, seed, u, rep, v);
                    cert.verify()?;
                    return Ok(cert);
                }
                _ => {}
            }
        }
    }
    Err(Error::Verification("sign relation is consistent; no odd cycle".into()))
}

type Tree = BTreeMap<PairRep, (u8, Option<(PairRep, PairRep)>)>;

/// Swap edges (as representation pairs) on the tree path from `seed` to `x`.
fn tree_path(tree: &Tree, x: PairRep) -> Vec<(PairRep, PairRep)> {
    let mut edges = Vec::new();
    let mut cur = x;
    while let Some((_, Some((prev, rep)))) = tree.get(&cur) {
        edges.push((*rep, swap(*rep)));
        cur = *prev;
    }
    edges.reverse();
    edges
}

fn close_chain(tree: &Tree, seed: PairRep, u: PairRep, rep: PairRep, v: PairRep) -> XiCertificate {
    let mut edges = tree_path(tree, u);
    edges.push((rep, swap(rep)));
    // walk back from v to the seed; swap is an involution so edges reverse
    edges.extend(tree_path(tree, v).into_iter().rev().map(|(a, b)| (b, a)));
    let mut steps = Vec::new();
    let mut at = seed;
    for (from, to) in edges {
        if at != from {
            steps.push(XiStep { from: at, to: from, relation: Relation::Relabel });
        }
        steps.push(XiStep { from, to, relation: Relation::Swap });
        at = to;
    }
    if at != seed {
        steps.push(XiStep { from: at, to: seed, relation: Relation::Relabel });
    }
    XiCertificate { steps }
}

/// Odd cycle starting from `(123, 456)`.
pub fn xi_contradiction() -> Result<XiCertificate> {
    xi_contradiction_from(([1, 2, 3], [4, 5, 6]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forty_states() {
        let s = pair_states();
        assert_eq!(s.len(), 40);
        let set: std::collections::BTreeSet<_> = s.iter().collect();
        assert_eq!(set.len(), 40);
    }

    #[test]
    fn reference_chain_verifies() {
        let c = xi_reference_chain();
        assert_eq!(c.steps.len(), 6);
        assert_eq!(c.swaps(), 3);
        c.verify().unwrap();
    }

    #[test]
    fn every_seed_finds_an_odd_cycle() {
        for s in pair_states() {
            let c = xi_contradiction_from(s).unwrap();
            assert_eq!(canonical(c.steps[0].from), s);
        }
    }

    #[test]
    fn tampered_certificates_fail() {
        let mut c = xi_reference_chain();
        c.steps[1].relation = Relation::Relabel;
        assert!(c.verify().is_err());
        let mut c = xi_reference_chain();
        c.steps.pop();
        assert!(c.verify().is_err());
    }
}
