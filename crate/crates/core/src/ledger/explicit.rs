//! An explicit list of modifications of the embedding ledger of `F_-` (for
//! `k` odd, `l` even) that keeps every boundary degree zero and raises the
//! degree on `Σ^l×Σ^k` from 1 to `2z+1`.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{base_ledger, parity, BaseVariant, Modification};
use crate::deleted::ProductCell;
use crate::simplicial::{incidence, OrientedSimplex};
use crate::{Error, Result};

fn simplex(seq: impl IntoIterator<Item = u32>, sign: i64) -> OrientedSimplex {
    OrientedSimplex::with_sign(seq.into_iter().collect(), sign as i8).expect("distinct labels")
}

/// The named oriented simplices.
#[derive(Clone, Debug)]
pub struct ExplicitCells {
    pub k: u32,
    pub l: u32,
}

impl ExplicitCells {
    fn n(&self) -> u32 {
        self.k + self.l + 3
    }

    /// `σ_m = (1, ..., m+1)`.
    pub fn sigma(&self, m: u32) -> OrientedSimplex {
        simplex(1..=m + 1, 1)
    }

    /// `τ_m = (m+3, ..., k+l+3)`.
    pub fn tau(&self, m: u32) -> OrientedSimplex {
        simplex(m + 3..=self.n(), 1)
    }

    /// `φ_{2j+1} = (0..j, k+j+3..k+l+3)` and `φ_{2j+2} = (0..j, k+j+4..k+l+3)`.
    pub fn phi(&self, i: u32) -> OrientedSimplex {
        let j = (i - 1) / 2;
        let start = if i % 2 == 1 { self.k + j + 3 } else { self.k + j + 4 };
        simplex((0..=j).chain(start..=self.n()), 1)
    }

    /// `ψ_{2j+1} = (-1)^{j(j+1)} (j+2, ..., k+1+j)` and
    /// `ψ_{2j+2} = (-1)^{(j+1)^2} (j+2, ..., k+2+j)`, with `ψ_0 = σ_k`.
    /// The first sign is always `+1`; it is kept as written.
    pub fn psi(&self, i: u32) -> OrientedSimplex {
        if i == 0 {
            return self.sigma(self.k);
        }
        let j = ((i - 1) / 2) as i64;
        let k = self.k as i64;
        if i % 2 == 1 {
            simplex((j + 2) as u32..=(k + 1 + j) as u32, parity((j * (j + 1)) as usize))
        } else {
            simplex((j + 2) as u32..=(k + 2 + j) as u32, parity(((j + 1) * (j + 1)) as usize))
        }
    }

    /// The same simplices written with the top labels first and no sign:
    /// `ψ_{2j+1} = (k+2..k+1+j, j+2..k+1)`, `ψ_{2j+2} = (k+2..k+2+j, j+2..k+1)`.
    pub fn psi_reordered(&self, i: u32) -> OrientedSimplex {
        if i == 0 {
            return self.sigma(self.k);
        }
        let j = (i - 1) / 2;
        let top = if i % 2 == 1 { self.k + 1 + j } else { self.k + 2 + j };
        simplex((self.k + 2..=top).chain(j + 2..=self.k + 1), 1)
    }
}

pub fn explicit_cells(k: u32, l: u32) -> Result<ExplicitCells> {
    if k % 2 == 0 || l % 2 == 1 || l == 0 || l >= k {
        return Err(Error::Precondition(format!("needs k odd, l even and 0 < l < k, got k={k}, l={l}")));
    }
    Ok(ExplicitCells { k, l })
}

/// `(σ_l, τ_l, z)`, `(σ_m, τ_m, (-1)^m z)` for `l < m ≤ k`, then
/// `(φ_{2j+1}, ψ_{2j+1}, (-1)^{j+1} z)` and `(φ_{2j+2}, ψ_{2j+2}, (-1)^j z)`
/// for `0 ≤ j ≤ l`.
pub fn explicit_list(k: u32, l: u32, z: i64) -> Result<Vec<(OrientedSimplex, OrientedSimplex, i64)>> {
    let c = explicit_cells(k, l)?;
    let mut out = vec![(c.sigma(l), c.tau(l), z)];
    for m in l + 1..=k {
        out.push((c.sigma(m), c.tau(m), parity(m as usize) * z));
    }
    for j in 0..=l {
        out.push((c.phi(2 * j + 1), c.psi(2 * j + 1), -parity(j as usize) * z));
    }
    for j in 0..=l {
        out.push((c.phi(2 * j + 2), c.psi(2 * j + 2), parity(j as usize) * z));
    }
    Ok(out)
}

/// One contribution of a listed modification to the boundary degree of a
/// listed top cell, computed from incidences and from the closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExplicitTerm {
    pub cell: String,
    pub modification: usize,
    pub computed: i64,
    pub expected: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExplicitReport {
    pub k: u32,
    pub l: u32,
    pub z: i64,
    pub modifications: usize,
    pub sphere_degree: i64,
    /// Indices of modifications that change the `Σ^l×Σ^k` degree.
    pub sphere_contributors: Vec<usize>,
    pub terms: Vec<ExplicitTerm>,
    /// Tracked cells touched by the list that are neither a listed case nor
    /// the mirror of one.
    pub uncovered: Vec<String>,
}

impl ExplicitReport {
    pub fn terms_match(&self) -> bool {
        self.terms.iter().all(|t| t.computed == t.expected)
    }
}

fn same_face_sign(a: &OrientedSimplex, b: &OrientedSimplex) -> i64 {
    if a.face() == b.face() {
        (a.orientation() * b.orientation()) as i64
    } else {
        0
    }
}

/// `[∂(α×β) : σ×τ]` for oriented simplices, product orientations throughout.
fn product_incidence(alpha: &OrientedSimplex, beta: &OrientedSimplex, sigma: &OrientedSimplex, tau: &OrientedSimplex) -> i64 {
    incidence(alpha, sigma) as i64 * same_face_sign(beta, tau)
        + parity(alpha.dim() as usize) * same_face_sign(alpha, sigma) * incidence(beta, tau) as i64
}

/// Applies [`explicit_list`] to the embedding ledger and checks that all
/// boundary degrees stay 0, that the `Σ^l×Σ^k` degree becomes `2z+1` through
/// exactly the first and the last modification, and that every cancellation
/// matches its closed form term by term.
pub fn explicit_verify(k: u32, l: u32, z: i64) -> Result<ExplicitReport> {
    let c = explicit_cells(k, l)?;
    let list = explicit_list(k, l, z)?;
    let mut ledger = base_ledger(k, l, BaseVariant::EmbeddingF)?;
    let mut contributors = Vec::new();
    let mut touched = BTreeSet::new();
    for (i, (s, t, a)) in list.iter().enumerate() {
        let m = Modification::from_oriented(s, t, *a)?;
        let (deltas, spheres) = ledger.modification_effect(&m)?;
        if spheres.sl_sk != 0 {
            contributors.push(i);
        }
        touched.extend(deltas.into_iter().filter(|(u, d)| *d != 0 && ledger.degree(u).is_some()).map(|(u, _)| u));
        ledger.apply_modification(&m)?;
    }
    if let Some((u, d)) = ledger.nonzero().first() {
        return Err(Error::Verification(format!("boundary degree {d} on {u:?}")));
    }
    if ledger.spheres.sl_sk != 2 * z + 1 {
        return Err(Error::Verification(format!("sphere degree {} instead of {}", ledger.spheres.sl_sk, 2 * z + 1)));
    }
    let last = list.len() - 1;
    if z != 0 && contributors != vec![0, last] {
        return Err(Error::Verification(format!("sphere degree changed by modifications {contributors:?}")));
    }

    // closed forms: (cell, [(modification index, value)])
    let (ki, li) = (k as usize, l as usize);
    let sig = |m: u32| (m - l) as usize;
    let odd = |j: u32| ki - li + 1 + j as usize;
    let even = |j: u32| ki - li + 1 + li + 1 + j as usize;
    let p = |e: usize| parity(e) * z;
    let mut cases: Vec<((OrientedSimplex, OrientedSimplex), Vec<(usize, i64)>)> = Vec::new();
    for m in l + 1..=k {
        let mm = m as usize;
        cases.push(((c.sigma(m), c.tau(m - 1)), vec![(sig(m - 1), p(2 * mm - 1)), (sig(m), p(2 * mm))]));
    }
    cases.push(((c.phi(1), c.psi_reordered(0)), vec![(sig(k), -z), (odd(0), -p(li + 1))]));
    for j in 0..=l {
        let jj = j as usize;
        cases.push((
            (c.phi(2 * j + 1), c.psi_reordered(2 * j + 2)),
            vec![(odd(j), p(2 * jj + li + 2)), (even(j), p(2 * jj + 1))],
        ));
    }
    for j in 1..=l {
        let jj = j as usize;
        cases.push((
            (c.phi(2 * j + 1), c.psi_reordered(2 * j)),
            vec![(even(j - 1), p(2 * jj + 1)), (odd(j), p(2 * jj + li + 2))],
        ));
    }
    let antipodal = parity(ki + li + 1);
    let mut terms = Vec::new();
    let mut covered = BTreeSet::new();
    for ((alpha, beta), expected) in &cases {
        let name = format!("{alpha:?}x{beta:?}");
        let cell = ProductCell::new(alpha.face(), beta.face())?;
        covered.insert(cell.swapped());
        covered.insert(cell);
        for (i, (s, t, a)) in list.iter().enumerate() {
            let e = antipodal * parity((s.dim() * t.dim()) as usize);
            let computed = a * (product_incidence(alpha, beta, s, t) + e * product_incidence(alpha, beta, t, s));
            let want = expected.iter().find(|(j, _)| *j == i).map(|(_, v)| *v).unwrap_or(0);
            if computed != 0 || want != 0 {
                terms.push(ExplicitTerm { cell: name.clone(), modification: i, computed, expected: want });
            }
        }
    }
    let uncovered = touched.iter().filter(|u| !covered.contains(*u)).map(|u| format!("{u:?}")).collect();
    Ok(ExplicitReport {
        k,
        l,
        z,
        modifications: list.len(),
        sphere_degree: ledger.spheres.sl_sk,
        sphere_contributors: contributors,
        terms,
        uncovered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_shape() {
        assert_eq!(explicit_list(3, 2, 1).unwrap().len(), 8);
        let c = explicit_cells(3, 2).unwrap();
        assert_eq!(c.psi(1), simplex(2..=4, 1));
        assert!(explicit_cells(4, 2).is_err());
        assert!(explicit_cells(3, 1).is_err());
    }

    #[test]
    fn reordered_psi_agree() {
        for (k, l) in [(3, 2), (5, 2), (5, 4), (7, 2)] {
            let c = explicit_cells(k, l).unwrap();
            for i in 0..=2 * l + 2 {
                assert_eq!(c.psi(i).face(), c.psi_reordered(i).face());
                assert_eq!(c.psi(i).orientation(), c.psi_reordered(i).orientation(), "({k},{l}) psi_{i}");
            }
        }
    }

    #[test]
    fn verify_examples() {
        let r = explicit_verify(3, 2, 1).unwrap();
        assert_eq!(r.sphere_degree, 3);
        assert!(r.terms_match(), "{:?}", r.terms);
        assert!(r.uncovered.is_empty(), "{:?}", r.uncovered);
        let r = explicit_verify(3, 2, 0).unwrap();
        assert_eq!(r.sphere_degree, 1);
        let r = explicit_verify(5, 2, 2).unwrap();
        assert_eq!(r.sphere_degree, 5);
        assert!(r.terms_match(), "{:?}", r.terms);
    }
}
