//! Integer bookkeeping for equivariant maps `F^{×2} -> S^{k+l}` on the
//! codimension-one skeleton: the degree `D(U)` on the boundary of every top
//! cell and the degrees on the two product spheres.

mod cochain;
mod explicit;
mod path;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::deleted::{orient_deleted_product, OrientationAssignment, ProductCell};
use crate::simplicial::{incidence, Face, OrientedSimplex};
use crate::{Error, Result};

pub use cochain::{realize_cochain, CochainRealization};
pub use explicit::{explicit_cells, explicit_list, explicit_verify, ExplicitCells, ExplicitReport, ExplicitTerm};
pub use path::{cell_path, realize_by_path, CellPath, PathOptions, PathReport};

fn parity(n: usize) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Top cells, their orientations and the coface map of codimension-one cells
/// of `F_{k,l}^{×2}`.
#[derive(Clone, Debug)]
pub struct TopStructure {
    pub k: u32,
    pub l: u32,
    pub orientation: OrientationAssignment,
    cofaces: BTreeMap<ProductCell, Vec<ProductCell>>,
}

impl TopStructure {
    pub fn new(k: u32, l: u32) -> Result<Self> {
        let orientation = orient_deleted_product(k, l)?;
        let mut cofaces: BTreeMap<ProductCell, Vec<ProductCell>> = BTreeMap::new();
        for (c, _) in orientation.iter() {
            for f in c.facets() {
                cofaces.entry(f).or_default().push(c.clone());
            }
        }
        Ok(TopStructure { k, l, orientation, cofaces })
    }

    pub fn top_cells(&self) -> impl Iterator<Item = &ProductCell> {
        self.orientation.iter().map(|(c, _)| c)
    }

    pub fn ridges(&self) -> impl Iterator<Item = (&ProductCell, &Vec<ProductCell>)> {
        self.cofaces.iter()
    }

    pub fn cofaces_of(&self, v: &ProductCell) -> &[ProductCell] {
        self.cofaces.get(v).map(Vec::as_slice).unwrap_or(&[])
    }

    fn sign(&self, u: &ProductCell) -> i64 {
        self.orientation.sign(u).expect("top cell") as i64
    }

    /// `[∂U : V]` for the oriented top cell `U` and oriented codimension-one cell `V`.
    pub fn boundary_incidence(&self, u: &ProductCell, v: &ProductCell, v_sign: i8) -> i64 {
        self.sign(u) * u.incidence(v) as i64 * v_sign as i64
    }

    /// Sign with which the exchange of factors carries the oriented cell `U`
    /// onto the oriented cell `πU`.
    pub fn exchange_sign(&self, u: &ProductCell) -> i64 {
        let e = parity((u.left.len() - 1) * (u.right.len() - 1));
        self.sign(u) * self.sign(&u.swapped()) * e
    }

    /// `Δ^{l+1} = {0, ..., l+1}`.
    pub fn small_simplex(&self) -> Face {
        Face::range(0, self.l + 1)
    }

    /// `Δ^k = {l+3, ..., k+l+3}`.
    pub fn large_simplex(&self) -> Face {
        Face::range(self.l + 3, self.k + self.l + 3)
    }

    /// Whether a product cell lies in `(F_-)^{×2}`.
    pub fn in_f_minus(&self, c: &ProductCell) -> bool {
        let d = self.small_simplex();
        c.left != d && c.right != d
    }
}

/// Which map the base ledger describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BaseVariant {
    /// A map of `F` with exactly one transverse double point, between the
    /// interiors of `Δ^k` and `Δ^{l+1}`; all top cells of `F^{×2}` are tracked.
    MapG,
    /// An embedding of `F_-`; only top cells of `(F_-)^{×2}` are tracked.
    EmbeddingF,
}

/// A modification on the oriented codimension-one cell `sign · cell` by `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Modification {
    pub cell: ProductCell,
    pub sign: i8,
    pub a: i64,
}

impl Modification {
    /// From oriented factors; the sign records their orientation relative
    /// to increasing order.
    pub fn from_oriented(left: &OrientedSimplex, right: &OrientedSimplex, a: i64) -> Result<Self> {
        Ok(Modification {
            cell: ProductCell::new(left.face(), right.face())?,
            sign: left.orientation() * right.orientation(),
            a,
        })
    }
}

/// Sphere degrees of `Σ^k×Σ^l` and `Σ^l×Σ^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SphereDegrees {
    #[serde(rename = "SkxSl")]
    pub sk_sl: i64,
    #[serde(rename = "SlxSk")]
    pub sl_sk: i64,
}

#[derive(Clone, Debug)]
pub struct DegreeLedger {
    pub variant: BaseVariant,
    structure: TopStructure,
    degrees: BTreeMap<ProductCell, i64>,
    pub spheres: SphereDegrees,
    pub history: Vec<Modification>,
}

/// Builds the starting ledger. Both sphere degrees are normalised so that
/// `Σ^k×Σ^l` has degree `+1`; the other is fixed by the exchange.
pub fn base_ledger(k: u32, l: u32, variant: BaseVariant) -> Result<DegreeLedger> {
    if l >= k {
        return Err(Error::OutOfRange(format!("base ledgers need l < k, got k={k}, l={l}")));
    }
    let structure = TopStructure::new(k, l)?;
    let mut degrees: BTreeMap<ProductCell, i64> = structure
        .top_cells()
        .filter(|c| variant == BaseVariant::MapG || structure.in_f_minus(c))
        .map(|c| (c.clone(), 0))
        .collect();
    if variant == BaseVariant::MapG {
        let u0 = ProductCell::new(structure.large_simplex(), structure.small_simplex())?;
        degrees.insert(u0.swapped(), -1);
        degrees.insert(u0, 1);
    }
    let sk_sl = 1;
    let sl_sk = parity(((k + 1) * (l + 1)) as usize) * sk_sl;
    Ok(DegreeLedger { variant, structure, degrees, spheres: SphereDegrees { sk_sl, sl_sk }, history: Vec::new() })
}

fn sphere_incidence(sphere_span: &Face, s: &Face) -> i64 {
    if s.len() + 1 == sphere_span.len() && s.is_subset(sphere_span) {
        incidence(&sphere_span.oriented(), &s.oriented()) as i64
    } else {
        0
    }
}

impl DegreeLedger {
    pub fn k(&self) -> u32 {
        self.structure.k
    }

    pub fn l(&self) -> u32 {
        self.structure.l
    }

    pub fn structure(&self) -> &TopStructure {
        &self.structure
    }

    pub fn degree(&self, u: &ProductCell) -> Option<i64> {
        self.degrees.get(u).copied()
    }

    pub fn degrees(&self) -> impl Iterator<Item = (&ProductCell, i64)> {
        self.degrees.iter().map(|(c, &d)| (c, d))
    }

    pub fn nonzero(&self) -> Vec<(ProductCell, i64)> {
        self.degrees.iter().filter(|(_, &d)| d != 0).map(|(c, &d)| (c.clone(), d)).collect()
    }

    pub fn total_abs(&self) -> i64 {
        self.degrees.values().map(|d| d.abs()).sum()
    }

    /// `D(πU) = -D(U)` wherever both cells are tracked.
    pub fn check_equivariance(&self) -> Result<()> {
        for (u, &d) in &self.degrees {
            if let Some(&e) = self.degrees.get(&u.swapped()) {
                if e != -d {
                    return Err(Error::Verification(format!("D({u:?}) = {d} but its mirror has {e}")));
                }
            }
        }
        Ok(())
    }

    /// `[Σ^k×Σ^l : σ×τ]` and `[Σ^l×Σ^k : σ×τ]` for increasing orientations.
    fn sphere_coefficients(&self, c: &ProductCell) -> (i64, i64) {
        let (k, l) = (self.k(), self.l());
        let sk = Face::range(l + 2, k + l + 3);
        let sl = Face::range(0, l + 1);
        (
            sphere_incidence(&sk, &c.left) * sphere_incidence(&sl, &c.right),
            sphere_incidence(&sl, &c.left) * sphere_incidence(&sk, &c.right),
        )
    }

    /// Change of every tracked degree caused by a modification, without
    /// applying it: top-cell deltas and sphere deltas.
    pub fn modification_effect(&self, m: &Modification) -> Result<(Vec<(ProductCell, i64)>, SphereDegrees)> {
        let (k, l) = (self.k(), self.l());
        if m.cell.dim() != (k + l) as usize {
            return Err(Error::Precondition(format!("{:?} is not a codimension-one cell", m.cell)));
        }
        let cof = self.structure.cofaces_of(&m.cell);
        if cof.len() != 2 {
            return Err(Error::Precondition(format!("{:?} lies in {} top cells, expected 2", m.cell, cof.len())));
        }
        let antipodal = parity((k + l + 1) as usize);
        let mut deltas = Vec::new();
        for u in cof {
            let c = self.structure.boundary_incidence(u, &m.cell, m.sign) * m.a;
            deltas.push((u.clone(), c));
            deltas.push((u.swapped(), c * antipodal * self.structure.exchange_sign(u)));
        }
        let (direct_kl, direct_lk) = self.sphere_coefficients(&m.cell);
        let (mirror_kl, mirror_lk) = self.sphere_coefficients(&m.cell.swapped());
        // the exchange carries σ×τ onto (-1)^{dim σ dim τ} τ×σ
        let e = antipodal * parity((m.cell.left.len() - 1) * (m.cell.right.len() - 1));
        let s = m.sign as i64 * m.a;
        let spheres = SphereDegrees { sk_sl: s * (direct_kl + e * mirror_kl), sl_sk: s * (direct_lk + e * mirror_lk) };
        Ok((deltas, spheres))
    }

    pub fn apply_modification(&mut self, m: &Modification) -> Result<()> {
        let (deltas, spheres) = self.modification_effect(m)?;
        for (u, d) in deltas {
            if let Some(x) = self.degrees.get_mut(&u) {
                *x += d;
            }
        }
        self.spheres.sk_sl += spheres.sk_sl;
        self.spheres.sl_sk += spheres.sl_sk;
        self.history.push(m.clone());
        self.check_equivariance()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cells: Vec<serde_json::Value> = self
            .degrees
            .iter()
            .map(|(c, d)| serde_json::json!({ "left": c.left.vertices(), "right": c.right.vertices(), "D": d }))
            .collect();
        serde_json::json!({
            "format_version": crate::FORMAT_VERSION,
            "k": self.k(),
            "l": self.l(),
            "variant": self.variant,
            "cells": cells,
            "sphere_degrees": self.spheres,
        })
    }

    /// Degrees from a ledger JSON document: a map from top cells to `D`,
    /// with unlisted cells reading as 0.
    pub fn degrees_from_json(value: &serde_json::Value) -> Result<BTreeMap<ProductCell, i64>> {
        let cells = value["cells"].as_array().ok_or_else(|| Error::Parse("missing \"cells\" array".into()))?;
        let mut out = BTreeMap::new();
        for c in cells {
            let face = |key: &str| -> Result<Face> {
                let arr = c[key].as_array().ok_or_else(|| Error::Parse(format!("cell without \"{key}\"")))?;
                let labels = arr
                    .iter()
                    .map(|x| x.as_u64().map(|v| v as u32).ok_or_else(|| Error::Parse(format!("bad label {x}"))))
                    .collect::<Result<Vec<u32>>>()?;
                Face::new(labels)
            };
            let d = c["D"].as_i64().ok_or_else(|| Error::Parse("cell without integer \"D\"".into()))?;
            out.insert(ProductCell::new(face("left")?, face("right")?)?, d);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn map_g_base() {
        let g = base_ledger(2, 1, BaseVariant::MapG).unwrap();
        let nz = g.nonzero();
        assert_eq!(nz.len(), 2);
        assert_eq!(nz[0].0, nz[1].0.swapped());
        assert_eq!(nz[0].1, -nz[1].1);
        assert_eq!(g.total_abs(), 2);
        g.check_equivariance().unwrap();
    }

    #[test]
    fn embedding_f_base() {
        let f = base_ledger(3, 2, BaseVariant::EmbeddingF).unwrap();
        assert!(f.nonzero().is_empty());
        assert_eq!(f.spheres.sk_sl, 1);
        assert!(f.degrees().all(|(c, _)| f.structure().in_f_minus(c)));
        assert!(base_ledger(2, 2, BaseVariant::MapG).is_err());
    }

    #[test]
    fn exchange_sign_is_uniform() {
        let s = TopStructure::new(3, 2).unwrap();
        assert!(s.top_cells().all(|u| s.exchange_sign(u) == -1));
        let s = TopStructure::new(3, 1).unwrap();
        assert!(s.top_cells().all(|u| s.exchange_sign(u) == 1));
    }

    #[test]
    fn zero_modification_is_identity() {
        let mut g = base_ledger(2, 1, BaseVariant::MapG).unwrap();
        let before = g.nonzero();
        let v = g.structure().ridges().next().unwrap().0.clone();
        g.apply_modification(&Modification { cell: v, sign: 1, a: 0 }).unwrap();
        assert_eq!(g.nonzero(), before);
    }

    #[test]
    fn rejects_cells_of_wrong_dimension() {
        let mut g = base_ledger(2, 1, BaseVariant::MapG).unwrap();
        let top = g.structure().top_cells().next().unwrap().clone();
        assert!(g.apply_modification(&Modification { cell: top, sign: 1, a: 1 }).is_err());
    }

    #[test]
    fn sphere_degrees_related_by_exchange() {
        for (k, l) in [(2, 1), (3, 1), (3, 2)] {
            let g = base_ledger(k, l, BaseVariant::MapG).unwrap();
            let want = if ((k + 1) * (l + 1)) % 2 == 0 { 1 } else { -1 };
            assert_eq!(g.spheres.sl_sk, want * g.spheres.sk_sl);
        }
    }

    proptest! {
        #[test]
        fn modifications_stay_equivariant(picks in prop::collection::vec((0usize..400, -3i64..4, any::<bool>()), 1..8)) {
            let mut g = base_ledger(2, 1, BaseVariant::MapG).unwrap();
            let ridges: Vec<ProductCell> = g.structure().ridges().map(|(c, _)| c.clone()).collect();
            let (k, l) = (g.k(), g.l());
            let rel = if ((k + 1) * (l + 1)) % 2 == 0 { 1 } else { -1 };
            for (i, a, flip) in picks {
                let cell = ridges[i % ridges.len()].clone();
                g.apply_modification(&Modification { cell, sign: if flip { -1 } else { 1 }, a }).unwrap();
                prop_assert_eq!(g.degrees().map(|(_, d)| d).sum::<i64>(), 0);
                prop_assert_eq!(g.spheres.sl_sk, rel * g.spheres.sk_sl);
                prop_assert!(g.total_abs() % 4 == 2);
            }
        }
    }
}
