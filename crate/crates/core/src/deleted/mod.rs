//! Simplicial deleted products and joins of a complex, their pseudomanifold
//! structure, and the orientation of top cells of `F_{k,l}^{×2}`.

mod duality;
mod orient;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::simplicial::{incidence, Complex, Face};
use crate::{Error, Result};

pub use duality::{self_duality_check, self_duality_check_complex, SelfDualityReport};
pub use orient::{
    classified_top_cells, closedness_check, involution_sign, orient_deleted_product, rule_sign, CellRule,
    OrientationAssignment,
};

/// A cell `σ × τ` of a deleted product; both factors are non-empty and
/// disjoint, stored with increasing labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ProductCell {
    pub left: Face,
    pub right: Face,
}

impl ProductCell {
    pub fn new(left: Face, right: Face) -> Result<Self> {
        if left.is_empty() || right.is_empty() || !left.is_disjoint(&right) {
            return Err(Error::Precondition(format!("{left:?} x {right:?} is not a deleted product cell")));
        }
        Ok(ProductCell { left, right })
    }

    pub fn dim(&self) -> usize {
        self.left.len() + self.right.len() - 2
    }

    /// The exchange of factors.
    pub fn swapped(&self) -> ProductCell {
        ProductCell { left: self.right.clone(), right: self.left.clone() }
    }

    /// Codimension-one faces of the cell.
    pub fn facets(&self) -> Vec<ProductCell> {
        let mut out = Vec::new();
        if self.left.len() > 1 {
            out.extend(self.left.facets().into_iter().map(|f| ProductCell { left: f, right: self.right.clone() }));
        }
        if self.right.len() > 1 {
            out.extend(self.right.facets().into_iter().map(|f| ProductCell { left: self.left.clone(), right: f }));
        }
        out
    }

    pub fn contains(&self, other: &ProductCell) -> bool {
        other.left.is_subset(&self.left) && other.right.is_subset(&self.right)
    }

    /// `[∂(α×β) : σ×τ]` for increasing orientations of all four factors:
    /// `[∂α:σ][β:τ] + (-1)^{dim α}[α:σ][∂β:τ]`.
    pub fn incidence(&self, facet: &ProductCell) -> i8 {
        if facet.right == self.right && facet.left.len() + 1 == self.left.len() {
            incidence(&self.left.oriented(), &facet.left.oriented())
        } else if facet.left == self.left && facet.right.len() + 1 == self.right.len() {
            let e = if (self.left.len() - 1) % 2 == 0 { 1 } else { -1 };
            e * incidence(&self.right.oriented(), &facet.right.oriented())
        } else {
            0
        }
    }
}

impl std::fmt::Debug for ProductCell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}x{:?}", self.left, self.right)
    }
}

/// All cells `σ × τ` with `σ, τ` disjoint faces of a complex.
#[derive(Clone, Debug)]
pub struct DeletedProduct {
    cells: BTreeSet<ProductCell>,
}

impl DeletedProduct {
    pub fn cells(&self) -> impl Iterator<Item = &ProductCell> {
        self.cells.iter()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: &ProductCell) -> bool {
        self.cells.contains(c)
    }

    pub fn dim(&self) -> Option<usize> {
        self.cells.iter().map(ProductCell::dim).max()
    }

    pub fn cells_of_dim(&self, d: usize) -> Vec<ProductCell> {
        self.cells.iter().filter(|c| c.dim() == d).cloned().collect()
    }

    /// Map from each `(d-1)`-cell to the `d`-cells containing it.
    pub fn cofaces(&self, d: usize) -> BTreeMap<ProductCell, Vec<ProductCell>> {
        let mut map: BTreeMap<ProductCell, Vec<ProductCell>> = BTreeMap::new();
        if d == 0 {
            return map;
        }
        for c in self.cells_of_dim(d - 1) {
            map.insert(c, Vec::new());
        }
        for top in self.cells_of_dim(d) {
            for f in top.facets() {
                map.entry(f).or_default().push(top.clone());
            }
        }
        map
    }

    pub fn to_json(&self, signs: Option<&OrientationAssignment>) -> serde_json::Value {
        let cells: Vec<serde_json::Value> = self
            .cells
            .iter()
            .map(|c| {
                let mut v = serde_json::json!({ "left": c.left.vertices(), "right": c.right.vertices() });
                if let Some(s) = signs.and_then(|a| a.sign(c)) {
                    v["sign"] = s.into();
                }
                v
            })
            .collect();
        serde_json::json!({ "format_version": crate::FORMAT_VERSION, "cells": cells })
    }
}

pub fn deleted_product(k: &Complex) -> DeletedProduct {
    let faces: Vec<&Face> = k.faces().collect();
    let mut cells = BTreeSet::new();
    for a in &faces {
        for b in &faces {
            if a.is_disjoint(b) {
                cells.insert(ProductCell { left: (*a).clone(), right: (*b).clone() });
            }
        }
    }
    DeletedProduct { cells }
}

/// A cell `σ * τ` of a deleted join; at most one factor is empty.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct JoinCell {
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

impl JoinCell {
    pub fn dim(&self) -> isize {
        (self.left.len() + self.right.len()) as isize - 1
    }

    /// Vertex labels of the join as a simplicial complex: `2v` for the left
    /// copy of `v` and `2v+1` for the right copy.
    pub fn tagged(&self) -> Face {
        Face::from_distinct(self.left.iter().map(|v| 2 * v).chain(self.right.iter().map(|v| 2 * v + 1)))
    }

    pub fn from_tagged(f: &Face) -> JoinCell {
        let left = f.iter().filter(|v| *v % 2 == 0).map(|v| v / 2).collect();
        let right = f.iter().filter(|v| *v % 2 == 1).map(|v| v / 2).collect();
        JoinCell { left, right }
    }
}

impl std::fmt::Debug for JoinCell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}*{:?}", self.left, self.right)
    }
}

/// The deleted join as a simplicial complex on tagged vertices.
#[derive(Clone, Debug)]
pub struct DeletedJoin {
    pub complex: Complex,
}

impl DeletedJoin {
    pub fn cells(&self) -> impl Iterator<Item = JoinCell> + '_ {
        self.complex.faces().map(JoinCell::from_tagged)
    }

    pub fn dim(&self) -> isize {
        self.complex.dim()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.complex.euler_characteristic()
    }

    pub fn pseudomanifold_check(&self) -> PseudomanifoldReport {
        let d = self.complex.dim().max(0) as usize;
        let top = self.complex.faces_of_dim(d);
        let ridges = if d == 0 { Vec::new() } else { self.complex.faces_of_dim(d - 1) };
        check_structure(&top, &ridges, |f| if f.len() > 1 { f.facets() } else { Vec::new() }, d)
    }
}

pub fn deleted_join(k: &Complex) -> Result<DeletedJoin> {
    let faces: Vec<&Face> = k.faces().collect();
    let mut gens = Vec::new();
    for a in &faces {
        gens.push(JoinCell { left: a.to_vec(), right: Vec::new() }.tagged());
        gens.push(JoinCell { left: Vec::new(), right: a.to_vec() }.tagged());
        for b in &faces {
            if a.is_disjoint(b) {
                gens.push(JoinCell { left: a.to_vec(), right: b.to_vec() }.tagged());
            }
        }
    }
    let vertices = k.vertices().iter().flat_map(|v| [2 * v, 2 * v + 1]).collect();
    Ok(DeletedJoin { complex: Complex::from_generators(vertices, gens)? })
}

/// `σ × τ ↦ σ * τ`.
pub fn shift(c: &ProductCell) -> JoinCell {
    JoinCell { left: c.left.to_vec(), right: c.right.to_vec() }
}

/// Checks that [`shift`] is a bijection from product cells onto join cells
/// with both factors non-empty, raising dimension by one, and that it
/// preserves the face relation on `samples` random pairs of cells.
pub fn check_shift_correspondence(p: &DeletedProduct, j: &DeletedJoin, samples: usize, seed: u64) -> Result<()> {
    let image: BTreeSet<JoinCell> = p.cells().map(shift).collect();
    let target: BTreeSet<JoinCell> = j.cells().filter(|c| !c.left.is_empty() && !c.right.is_empty()).collect();
    if image.len() != p.len() || image != target {
        return Err(Error::Verification("shift is not a bijection onto two-sided join cells".into()));
    }
    for c in p.cells() {
        if shift(c).dim() != c.dim() as isize + 1 {
            return Err(Error::Verification(format!("shift changes {c:?} by the wrong dimension")));
        }
    }
    let cells: Vec<&ProductCell> = p.cells().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let (Some(a), Some(b)) = (cells.choose(&mut rng), cells.choose(&mut rng)) else { break };
        let (sa, sb) = (shift(a).tagged(), shift(b).tagged());
        if a.contains(b) != sb.is_subset(&sa) || b.contains(a) != sa.is_subset(&sb) {
            return Err(Error::Verification(format!("shift breaks the face relation on {a:?}, {b:?}")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudomanifoldReport {
    pub top_dim: usize,
    pub top_cells: usize,
    pub codim1_cells: usize,
    /// Dual graph on top cells is connected.
    pub connected: bool,
    /// Codimension-one cells not lying in exactly two top cells, with their
    /// coface counts (at most a handful are recorded).
    pub bad_codim1: Vec<(String, usize)>,
    /// Nothing of positive dimension to check.
    pub degenerate: bool,
}

impl PseudomanifoldReport {
    pub fn is_closed_pseudomanifold(&self) -> bool {
        !self.degenerate && self.connected && self.bad_codim1.is_empty()
    }
}

fn check_structure<C: Ord + Clone + std::fmt::Debug>(
    top: &[C],
    ridges: &[C],
    facets: impl Fn(&C) -> Vec<C>,
    top_dim: usize,
) -> PseudomanifoldReport {
    let mut cof: BTreeMap<C, Vec<usize>> = ridges.iter().map(|r| (r.clone(), Vec::new())).collect();
    for (i, t) in top.iter().enumerate() {
        for f in facets(t) {
            cof.entry(f).or_default().push(i);
        }
    }
    let mut bad = Vec::new();
    let mut adj = vec![Vec::new(); top.len()];
    for (r, ts) in &cof {
        if ts.len() != 2 && bad.len() < 8 {
            bad.push((format!("{r:?}"), ts.len()));
        }
        for &a in ts {
            for &b in ts {
                if a != b {
                    adj[a].push(b);
                }
            }
        }
    }
    let mut seen = vec![false; top.len()];
    let mut queue = VecDeque::new();
    if !top.is_empty() {
        seen[0] = true;
        queue.push_back(0);
    }
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    PseudomanifoldReport {
        top_dim,
        top_cells: top.len(),
        codim1_cells: cof.len(),
        connected: seen.iter().all(|&s| s),
        bad_codim1: bad,
        degenerate: top.is_empty() || top_dim == 0,
    }
}

/// Pseudomanifold structure of the `top_dim`-cells of a deleted product:
/// connectivity of the dual graph and the two-coface condition on every
/// `(top_dim - 1)`-cell.
pub fn pseudomanifold_check(p: &DeletedProduct, top_dim: usize) -> PseudomanifoldReport {
    let top = p.cells_of_dim(top_dim);
    let ridges = if top_dim == 0 { Vec::new() } else { p.cells_of_dim(top_dim - 1) };
    check_structure(&top, &ridges, ProductCell::facets, top_dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{build_family, FamilySelector};

    fn family(k: u32, l: u32) -> Complex {
        build_family(FamilySelector::F { k, l }).unwrap()
    }

    #[test]
    fn k6_top_cells() {
        let k6 = build_family(FamilySelector::Kn { n: 6 }).unwrap();
        let p = deleted_product(&k6);
        assert_eq!(p.dim(), Some(2));
        assert_eq!(p.cells_of_dim(2).len(), 90);
    }

    #[test]
    fn single_simplex_has_only_disjoint_pairs() {
        let s = Complex::simplex(vec![1, 2, 3]).unwrap();
        let p = deleted_product(&s);
        assert!(p.cells().all(|c| c.left.is_disjoint(&c.right)));
        // 6 vertex pairs and 6 vertex/edge pairs
        assert_eq!(p.len(), 12);
        assert_eq!(p.dim(), Some(1));
    }

    #[test]
    fn f21_top_cells_match_classification() {
        let p = deleted_product(&family(2, 1));
        let top: BTreeSet<_> = p.cells_of_dim(4).into_iter().collect();
        let classified: BTreeSet<_> = classified_top_cells(2, 1).unwrap().into_iter().map(|(c, _)| c).collect();
        assert_eq!(top, classified);
        assert_eq!(top.len(), 20 + 60 + 60);
        assert_eq!(p.dim(), Some(4));
    }

    #[test]
    fn pseudomanifolds() {
        for (k, l) in [(1, 0), (2, 1), (3, 2)] {
            let r = pseudomanifold_check(&deleted_product(&family(k, l)), (k + l + 1) as usize);
            assert!(r.is_closed_pseudomanifold(), "({k},{l}): {r:?}");
        }
        let two_points = Complex::from_generators(vec![1, 2], []).unwrap();
        let r = pseudomanifold_check(&deleted_product(&two_points), 0);
        assert!(r.degenerate);
        assert!(!r.is_closed_pseudomanifold());
    }

    #[test]
    fn joins_of_families() {
        let j = deleted_join(&family(1, 0)).unwrap();
        assert_eq!(j.dim(), 3);
        assert_eq!(j.euler_characteristic(), 0);
        assert!(j.pseudomanifold_check().is_closed_pseudomanifold());
        for (k, l) in [(2, 1), (3, 1)] {
            let j = deleted_join(&family(k, l)).unwrap();
            assert_eq!(j.dim(), (k + l + 2) as isize);
            let sign = if (k + l) % 2 == 0 { 1 } else { -1 };
            assert_eq!(j.euler_characteristic(), 1 + sign);
            assert!(j.pseudomanifold_check().is_closed_pseudomanifold());
        }
    }

    #[test]
    fn shift_respects_faces() {
        for (k, l) in [(1, 0), (2, 1)] {
            let f = family(k, l);
            check_shift_correspondence(&deleted_product(&f), &deleted_join(&f).unwrap(), 20, 7).unwrap();
        }
    }

    #[test]
    fn product_incidence_squares_to_zero() {
        let p = deleted_product(&family(2, 1));
        for c in p.cells_of_dim(3).into_iter().take(40) {
            let mut acc: BTreeMap<ProductCell, i32> = BTreeMap::new();
            for f in c.facets() {
                for g in f.facets() {
                    *acc.entry(g.clone()).or_default() += (c.incidence(&f) * f.incidence(&g)) as i32;
                }
            }
            assert!(acc.values().all(|&v| v == 0), "{c:?}");
        }
    }
}
