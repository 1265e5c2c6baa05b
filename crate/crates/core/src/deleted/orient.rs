use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{deleted_product, DeletedProduct, ProductCell};
use crate::simplicial::{build_family, sequence_sign, sgn_permutation, subsets_of_size, Face, FamilySelector};
use crate::{Error, Result};

/// Which orientation rule applies to a top cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CellRule {
    /// `α ⊔ β = [k+l+3]`.
    Partition,
    /// `0` in the left factor; `v` is the vertex missing from both.
    ZeroLeft { v: u32 },
    /// `0` in the right factor.
    ZeroRight { v: u32 },
}

fn ground(k: u32, l: u32) -> Vec<u32> {
    (1..=k + l + 3).collect()
}

/// Top cells of `F_{k,l}^{×2}` listed by type: partitions of `[k+l+3]` into
/// two faces, and cells `{0}∪α × β` (or mirrored) with one vertex left over.
pub fn classified_top_cells(k: u32, l: u32) -> Result<Vec<(ProductCell, CellRule)>> {
    if l > k {
        return Err(Error::OutOfRange(format!("need l <= k, got k={k}, l={l}")));
    }
    let g = ground(k, l);
    let mut out = Vec::new();
    for size in (l + 2)..=(k + 1) {
        for a in subsets_of_size(&g, size as usize) {
            let b = Face::from_distinct(g.iter().copied().filter(|v| !a.contains(*v)));
            out.push((ProductCell::new(a, b)?, CellRule::Partition));
        }
    }
    for a in subsets_of_size(&g, l as usize + 1) {
        let rest: Vec<u32> = g.iter().copied().filter(|v| !a.contains(*v)).collect();
        for b in subsets_of_size(&rest, k as usize + 1) {
            let v = *rest.iter().find(|v| !b.contains(**v)).expect("one vertex left over");
            let za = a.with(0);
            out.push((ProductCell::new(za.clone(), b.clone())?, CellRule::ZeroLeft { v }));
            out.push((ProductCell::new(b, za)?, CellRule::ZeroRight { v }));
        }
    }
    Ok(out)
}

/// Modification sign for the top cell `left × right` whose factors carry the
/// orientations of the given vertex orders; the oriented cell is this sign
/// times the product orientation.
pub fn rule_sign(left: &[u32], right: &[u32], k: u32, l: u32) -> Result<i8> {
    let g = ground(k, l);
    let missing = |a: &[u32], b: &[u32]| -> Result<u32> {
        let mut m = g.iter().copied().filter(|v| !a.contains(v) && !b.contains(v));
        match (m.next(), m.next()) {
            (Some(v), None) => Ok(v),
            _ => Err(Error::Precondition(format!("{a:?} x {b:?} is not a top cell"))),
        }
    };
    let strip_zero = |s: &[u32]| -> Option<(i8, Vec<u32>)> {
        let p = s.iter().position(|&v| v == 0)?;
        let mut rest = s.to_vec();
        rest.remove(p);
        Some((if p % 2 == 0 { 1 } else { -1 }, rest))
    };
    match (strip_zero(left), strip_zero(right)) {
        (None, None) => sgn_permutation(&[left, right].concat(), &g),
        (Some((e, alpha)), None) if alpha.len() == l as usize + 1 => {
            let v = missing(&alpha, right)?;
            Ok(-e * sgn_permutation(&[&[v][..], &alpha, right].concat(), &g)?)
        }
        (None, Some((e, beta))) if beta.len() == l as usize + 1 => {
            let v = missing(left, &beta)?;
            Ok(-e * sgn_permutation(&[left, &[v][..], &beta].concat(), &g)?)
        }
        _ => Err(Error::Precondition(format!("{left:?} x {right:?} is not a top cell"))),
    }
}

/// Signs of top cells of `F_{k,l}^{×2}` relative to the product of the
/// increasing orientations of the factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationAssignment {
    pub k: u32,
    pub l: u32,
    signs: BTreeMap<ProductCell, i8>,
}

impl OrientationAssignment {
    pub fn sign(&self, c: &ProductCell) -> Option<i8> {
        self.signs.get(c).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ProductCell, i8)> {
        self.signs.iter().map(|(c, &s)| (c, s))
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Reverses the orientation of one cell; used for corruption tests.
    pub fn flip(&mut self, c: &ProductCell) -> bool {
        match self.signs.get_mut(c) {
            Some(s) => {
                *s = -*s;
                true
            }
            None => false,
        }
    }

    pub fn product(&self) -> Result<DeletedProduct> {
        Ok(deleted_product(&build_family(FamilySelector::F { k: self.k, l: self.l })?))
    }
}

fn sorted_sign(left: &[u32], right: &[u32], k: u32, l: u32) -> Result<i8> {
    Ok(rule_sign(left, right, k, l)? * sequence_sign(left) * sequence_sign(right))
}

/// Orients every top cell by the rules and re-derives each sign from three
/// random vertex orders of the factors.
pub fn orient_deleted_product(k: u32, l: u32) -> Result<OrientationAssignment> {
    let mut rng = ChaCha8Rng::seed_from_u64(((k as u64) << 8) | l as u64);
    let mut signs = BTreeMap::new();
    for (c, _) in classified_top_cells(k, l)? {
        let s = sorted_sign(&c.left, &c.right, k, l)?;
        for _ in 0..3 {
            let (mut a, mut b) = (c.left.to_vec(), c.right.to_vec());
            a.shuffle(&mut rng);
            b.shuffle(&mut rng);
            if sorted_sign(&a, &b, k, l)? != s {
                return Err(Error::Verification(format!("orientation of {c:?} depends on the vertex order {a:?}, {b:?}")));
            }
        }
        signs.insert(c, s);
    }
    Ok(OrientationAssignment { k, l, signs })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosednessReport {
    pub checked: usize,
    /// A codimension-one cell where the incidences do not cancel, with their sum.
    pub witness: Option<(ProductCell, i32)>,
}

impl ClosednessReport {
    pub fn is_ok(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks that the two oriented top cells on either side of every
/// codimension-one cell induce opposite orientations on it.
pub fn closedness_check(a: &OrientationAssignment) -> Result<ClosednessReport> {
    let p = a.product()?;
    let d = (a.k + a.l + 1) as usize;
    let mut checked = 0;
    for (ridge, tops) in p.cofaces(d) {
        if tops.len() != 2 {
            return Err(Error::Precondition(format!("{ridge:?} lies in {} top cells", tops.len())));
        }
        checked += 1;
        let mut sum = 0i32;
        for t in &tops {
            let s = a.sign(t).ok_or_else(|| Error::Precondition(format!("{t:?} has no orientation")))?;
            sum += (s * t.incidence(&ridge)) as i32;
        }
        if sum != 0 {
            return Ok(ClosednessReport { checked, witness: Some((ridge, sum)) });
        }
    }
    Ok(ClosednessReport { checked, witness: None })
}

/// The sign by which the exchange of factors acts on the oriented top cells.
/// The exchange carries `α×β` to `(-1)^{dim α · dim β} β×α` on product
/// orientations; the sign must be the same for every cell.
pub fn involution_sign(a: &OrientationAssignment) -> Result<i8> {
    let mut uniform = None;
    for (c, s) in a.iter() {
        let image = c.swapped();
        let t = a.sign(&image).ok_or_else(|| Error::Verification(format!("{image:?} is not oriented")))?;
        let e = if (c.left.len() - 1) * (c.right.len() - 1) % 2 == 0 { 1 } else { -1 };
        let x = s * t * e;
        match uniform {
            None => uniform = Some(x),
            Some(u) if u != x => {
                return Err(Error::Verification(format!("exchange sign is {x} on {c:?} but {u} elsewhere")));
            }
            _ => {}
        }
    }
    uniform.ok_or_else(|| Error::Precondition("no oriented cells".into()))
}
