//! Integer reachability in lattices spanned by signed-graph edge vectors.
//!
//! Each generator ("edge") is a sparse integer vector. Generators with two
//! entries of absolute value one act as edges of a signed graph; they fix a
//! potential `p` on every connected component with `p(u) c_u + p(v) c_v = 0`
//! along spanning-tree edges. The lattice spanned by all generators on a
//! component is then `{x : <p, x> in g Z}` where `g` is the gcd of the
//! potential values of the generators, which gives both a solver and a
//! checkable non-membership certificate.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::{Error, Result};

#[derive(Clone, Debug, Default)]
pub struct SignedGraph {
    nodes: usize,
    edges: Vec<Vec<(usize, i64)>>,
}

/// Linear functional `x -> <potentials, x>` that is a multiple of `modulus` on
/// every generator but not on the target. `modulus == 0` means the functional
/// vanishes on every generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub potentials: Vec<i64>,
    pub modulus: i64,
    pub target_value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// Integer multiplicity of each generator, in insertion order.
    Feasible(Vec<i64>),
    Infeasible(Certificate),
}

fn pairing(p: &[i64], x: &[(usize, i64)]) -> i64 {
    x.iter().map(|&(i, c)| p[i] * c).sum()
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

impl Certificate {
    /// Checks the certificate against generators and a dense target.
    pub fn verify(&self, graph: &SignedGraph, target: &[i64]) -> bool {
        let divides = |v: i64| if self.modulus == 0 { v == 0 } else { v % self.modulus == 0 };
        let t: i64 = self.potentials.iter().zip(target).map(|(p, x)| p * x).sum();
        t == self.target_value
            && graph.edges.iter().all(|e| divides(pairing(&self.potentials, e)))
            && !divides(t)
    }
}

impl SignedGraph {
    pub fn new(nodes: usize) -> Self {
        SignedGraph { nodes, edges: Vec::new() }
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> &[Vec<(usize, i64)>] {
        &self.edges
    }

    /// Adds a generator; repeated nodes are merged and zero entries dropped.
    /// Returns its index.
    pub fn add_edge(&mut self, entries: &[(usize, i64)]) -> Result<usize> {
        let mut m: BTreeMap<usize, i64> = BTreeMap::new();
        for &(i, c) in entries {
            if i >= self.nodes {
                return Err(Error::OutOfRange(format!("node {i} of {}", self.nodes)));
            }
            *m.entry(i).or_default() += c;
        }
        self.edges.push(m.into_iter().filter(|&(_, c)| c != 0).collect());
        Ok(self.edges.len() - 1)
    }

    /// Sum of `mult[e] * edge[e]` as a dense vector.
    pub fn apply(&self, mult: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.nodes];
        for (e, &t) in self.edges.iter().zip(mult) {
            for &(i, c) in e {
                out[i] += t * c;
            }
        }
        out
    }

    /// Finds integer multiplicities reaching `target`, or a certificate that
    /// none exist. Fails if some component of the support graph is not spanned
    /// by unit two-node generators.
    pub fn solve(&self, target: &[i64]) -> Result<Solution> {
        if target.len() != self.nodes {
            return Err(Error::Precondition("target length differs from node count".into()));
        }
        // spanning forest over unit two-node generators
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.nodes];
        for (ei, e) in self.edges.iter().enumerate() {
            if let [(u, cu), (v, cv)] = e.as_slice() {
                if cu.abs() == 1 && cv.abs() == 1 {
                    adj[*u].push((*v, ei));
                    adj[*v].push((*u, ei));
                }
            }
        }
        let mut comp = vec![usize::MAX; self.nodes];
        let mut pot = vec![0i64; self.nodes];
        let mut parent: Vec<Option<usize>> = vec![None; self.nodes];
        let mut order = Vec::with_capacity(self.nodes);
        let mut roots = Vec::new();
        for r in 0..self.nodes {
            if comp[r] != usize::MAX {
                continue;
            }
            let c = roots.len();
            roots.push(r);
            comp[r] = c;
            pot[r] = 1;
            let mut queue = VecDeque::from([r]);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for &(v, ei) in &adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = c;
                        let e = &self.edges[ei];
                        let coef = |n: usize| e.iter().find(|x| x.0 == n).unwrap().1;
                        pot[v] = -pot[u] * coef(u) * coef(v);
                        parent[v] = Some(ei);
                        queue.push_back(v);
                    }
                }
            }
        }
        let mut by_comp: Vec<Vec<usize>> = vec![Vec::new(); roots.len()];
        for (ei, e) in self.edges.iter().enumerate() {
            let Some(&(first, _)) = e.first() else { continue };
            if e.iter().any(|&(i, _)| comp[i] != comp[first]) {
                return Err(Error::Precondition(format!("generator {ei} joins components not spanned by unit edges")));
            }
            by_comp[comp[first]].push(ei);
        }

        let mut mult = vec![0i64; self.edges.len()];
        let mut residual = target.to_vec();
        for (c, edges) in by_comp.iter().enumerate() {
            let t: i64 = (0..self.nodes).filter(|&i| comp[i] == c).map(|i| pot[i] * target[i]).sum();
            // extended gcd over the generator values on this component
            let mut g = 0i64;
            let mut coeffs: Vec<(usize, i64)> = Vec::new();
            for &ei in edges {
                let v = pairing(&pot, &self.edges[ei]);
                if v == 0 {
                    continue;
                }
                let (ng, a, b) = ext_gcd(g, v);
                for x in coeffs.iter_mut() {
                    x.1 *= a;
                }
                coeffs.push((ei, b));
                g = ng;
            }
            let feasible = if g == 0 { t == 0 } else { t % g == 0 };
            if !feasible {
                let potentials = (0..self.nodes).map(|i| if comp[i] == c { pot[i] } else { 0 }).collect();
                return Ok(Solution::Infeasible(Certificate { potentials, modulus: g, target_value: t }));
            }
            if g != 0 {
                let s = t / g;
                for (ei, a) in coeffs {
                    mult[ei] += a * s;
                    for &(i, cc) in &self.edges[ei] {
                        residual[i] -= a * s * cc;
                    }
                }
            }
        }
        // leaves-up pass along the forest clears what is left
        for &v in order.iter().rev() {
            let Some(ei) = parent[v] else { continue };
            let cv = self.edges[ei].iter().find(|x| x.0 == v).unwrap().1;
            let t = residual[v] * cv;
            if t != 0 {
                mult[ei] += t;
                for &(i, cc) in &self.edges[ei] {
                    residual[i] -= t * cc;
                }
            }
        }
        if residual.iter().any(|&r| r != 0) {
            return Err(Error::Verification("signed-graph solve left a nonzero residual".into()));
        }
        Ok(Solution::Feasible(mult))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parity_obstruction() {
        // path 0 -+ 1 -+ 2 and a loop-like edge doubling node 0
        let mut g = SignedGraph::new(3);
        g.add_edge(&[(0, 1), (1, -1)]).unwrap();
        g.add_edge(&[(1, 1), (2, -1)]).unwrap();
        g.add_edge(&[(0, 2)]).unwrap();
        match g.solve(&[1, 0, 0]).unwrap() {
            Solution::Infeasible(c) => {
                assert_eq!(c.modulus, 2);
                assert!(c.verify(&g, &[1, 0, 0]));
            }
            s => panic!("{s:?}"),
        }
        let Solution::Feasible(m) = g.solve(&[2, 0, -4]).unwrap() else { panic!() };
        assert_eq!(g.apply(&m), vec![2, 0, -4]);
    }

    #[test]
    fn isolated_nodes() {
        let g = SignedGraph::new(2);
        assert!(matches!(g.solve(&[0, 0]).unwrap(), Solution::Feasible(_)));
        let Solution::Infeasible(c) = g.solve(&[0, 3]).unwrap() else { panic!() };
        assert!(c.verify(&g, &[0, 3]));
    }

    proptest! {
        #[test]
        fn solver_is_sound(
            edges in prop::collection::vec((0usize..6, 0usize..6, prop::bool::ANY, prop::bool::ANY), 1..12),
            target in prop::collection::vec(-3i64..4, 6),
        ) {
            let mut g = SignedGraph::new(6);
            for (u, v, su, sv) in edges {
                let cu = if su { 1 } else { -1 };
                let cv = if sv { 1 } else { -1 };
                g.add_edge(&[(u, cu), (v, cv)]).unwrap();
            }
            match g.solve(&target).unwrap() {
                Solution::Feasible(m) => prop_assert_eq!(g.apply(&m), target),
                Solution::Infeasible(c) => prop_assert!(c.verify(&g, &target)),
            }
        }
    }
}
