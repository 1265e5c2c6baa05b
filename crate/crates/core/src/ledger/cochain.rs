use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{base_ledger, BaseVariant, DegreeLedger, Modification};
use crate::deleted::ProductCell;
use crate::signed_graph::{Certificate, SignedGraph, Solution};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub enum CochainRealization {
    /// Modifications carrying the base ledger to the target, checked by replay.
    Modifications(Vec<Modification>),
    Infeasible(Certificate),
}

/// Finds integer modifications that carry the ledger of the map with one
/// double point to the target degrees `c` (unlisted cells read as 0).
///
/// The system is solved on the quotient by the exchange of factors: one
/// unknown per orbit of codimension-one cells, one equation per orbit of
/// top cells, so equivariance holds by construction.
pub fn realize_cochain(k: u32, l: u32, c: &BTreeMap<ProductCell, i64>) -> Result<CochainRealization> {
    let base = base_ledger(k, l, BaseVariant::MapG)?;
    for u in c.keys() {
        if base.degree(u).is_none() {
            return Err(Error::Precondition(format!("{u:?} is not a top cell of the deleted product")));
        }
    }
    let target = |u: &ProductCell| c.get(u).copied().unwrap_or(0);
    for (u, _) in base.degrees() {
        if target(&u.swapped()) != -target(u) {
            return Err(Error::Precondition(format!("target is not equivariant at {u:?}")));
        }
    }
    let reps: Vec<ProductCell> = base.degrees().map(|(u, _)| u).filter(|u| **u < u.swapped()).cloned().collect();
    let index: BTreeMap<&ProductCell, usize> = reps.iter().enumerate().map(|(i, u)| (u, i)).collect();
    let mut graph = SignedGraph::new(reps.len());
    let mut walls = Vec::new();
    let mut seen = BTreeSet::new();
    for (v, _) in base.structure().ridges() {
        if seen.contains(&v.swapped()) {
            continue;
        }
        seen.insert(v.clone());
        let (deltas, _) = base.modification_effect(&Modification { cell: v.clone(), sign: 1, a: 1 })?;
        let entries: Vec<(usize, i64)> = deltas.iter().filter_map(|(u, d)| index.get(u).map(|&i| (i, *d))).collect();
        let e = graph.add_edge(&entries)?;
        debug_assert_eq!(e, walls.len());
        walls.push(v.clone());
    }
    let rhs: Vec<i64> = reps.iter().map(|u| target(u) - base.degree(u).expect("tracked")).collect();
    match graph.solve(&rhs)? {
        Solution::Infeasible(cert) => {
            if !cert.verify(&graph, &rhs) {
                return Err(Error::Verification("infeasibility certificate does not verify".into()));
            }
            Ok(CochainRealization::Infeasible(cert))
        }
        Solution::Feasible(mult) => {
            let mods: Vec<Modification> = walls
                .into_iter()
                .zip(mult)
                .filter(|(_, a)| *a != 0)
                .map(|(cell, a)| Modification { cell, sign: 1, a })
                .collect();
            let replayed = replay(&base, &mods)?;
            for (u, d) in replayed.degrees() {
                if d != target(u) {
                    return Err(Error::Verification(format!("replay gives D({u:?}) = {d}, target {}", target(u))));
                }
            }
            Ok(CochainRealization::Modifications(mods))
        }
    }
}

fn replay(base: &DegreeLedger, mods: &[Modification]) -> Result<DegreeLedger> {
    let mut l = base.clone();
    for m in mods {
        l.apply_modification(m)?;
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ledger::{realize_by_path, PathOptions};

    fn as_map(l: &DegreeLedger) -> BTreeMap<ProductCell, i64> {
        l.degrees().map(|(u, d)| (u.clone(), d)).collect()
    }

    #[test]
    fn base_needs_nothing() {
        let base = base_ledger(2, 1, BaseVariant::MapG).unwrap();
        let CochainRealization::Modifications(m) = realize_cochain(2, 1, &as_map(&base)).unwrap() else { panic!() };
        assert!(m.is_empty());
    }

    #[test]
    fn path_output_is_realizable() {
        let (target, _) = realize_by_path(2, 1, 1, 1, PathOptions::default()).unwrap();
        let CochainRealization::Modifications(m) = realize_cochain(2, 1, &as_map(&target)).unwrap() else { panic!() };
        assert!(!m.is_empty());
    }

    #[test]
    fn wrong_residue_is_infeasible() {
        // all zero: sum of |c| is 0, not 2 mod 4
        let CochainRealization::Infeasible(_) = realize_cochain(2, 1, &BTreeMap::new()).unwrap() else { panic!() };
    }

    #[test]
    fn non_equivariant_target_is_rejected() {
        let base = base_ledger(2, 1, BaseVariant::MapG).unwrap();
        let mut c = as_map(&base);
        let u = c.keys().next().unwrap().clone();
        *c.get_mut(&u).unwrap() += 1;
        assert!(realize_cochain(2, 1, &c).is_err());
    }
}
