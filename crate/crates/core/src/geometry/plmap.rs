use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Point, Q};
use crate::simplicial::{Complex, Face};
use crate::{Error, Result, FORMAT_VERSION};

/// One linear piece of the image of a face: an ordered node tuple and a sign
/// relative to the increasing orientation of the owning face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub nodes: Vec<u32>,
    pub sign: i8,
}

/// A piecewise-linear map of a complex into `R^d`.
///
/// Vertex labels double as node ids. A face without an entry in the
/// subdivision table is mapped linearly onto the convex hull of its vertices;
/// otherwise its image is the union of the listed cells, which together form a
/// chain with the same boundary as the face. Edges are typically subdivided as
/// polylines.
#[derive(Clone, Debug, PartialEq)]
pub struct PlMap {
    complex: Complex,
    dim: usize,
    coords: BTreeMap<u32, Point>,
    subdivisions: BTreeMap<Face, Vec<Cell>>,
}

#[derive(Serialize, Deserialize)]
struct PlMapJson {
    format_version: u32,
    dim: usize,
    /// Orientation of `R^d` is the standard basis order.
    orientation: String,
    complex: Value,
    coords: BTreeMap<String, Point>,
    #[serde(default)]
    polylines: BTreeMap<String, Vec<u32>>,
    #[serde(default)]
    cells: BTreeMap<String, Vec<Cell>>,
}

impl PlMap {
    /// A simplexwise-linear map given by vertex coordinates.
    pub fn linear(complex: Complex, dim: usize, coords: BTreeMap<u32, Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Precondition("target dimension must be at least 1".into()));
        }
        for v in complex.vertices() {
            match coords.get(v) {
                None => return Err(Error::Precondition(format!("vertex {v} has no coordinates"))),
                Some(p) if p.dim() != dim => {
                    return Err(Error::Precondition(format!("vertex {v} is not in R^{dim}")))
                }
                _ => {}
            }
        }
        Ok(PlMap { complex, dim, coords, subdivisions: BTreeMap::new() })
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &BTreeMap<u32, Point> {
        &self.coords
    }

    pub fn point(&self, node: u32) -> &Point {
        &self.coords[&node]
    }

    pub fn subdivisions(&self) -> &BTreeMap<Face, Vec<Cell>> {
        &self.subdivisions
    }

    pub fn is_subdivided(&self, face: &Face) -> bool {
        self.subdivisions.contains_key(face)
    }

    /// Linear pieces of the image of `face`.
    pub fn cells(&self, face: &Face) -> Vec<Cell> {
        match self.subdivisions.get(face) {
            Some(c) => c.clone(),
            None => vec![Cell { nodes: face.to_vec(), sign: 1 }],
        }
    }

    pub fn cell_points<'a>(&'a self, cell: &Cell) -> Vec<&'a Point> {
        cell.nodes.iter().map(|n| &self.coords[n]).collect()
    }

    /// Smallest node id not yet in use.
    pub fn fresh_node(&self) -> u32 {
        self.coords.keys().next_back().map_or(0, |m| m + 1)
    }

    pub fn add_node(&mut self, p: Point) -> u32 {
        assert_eq!(p.dim(), self.dim);
        let id = self.fresh_node();
        self.coords.insert(id, p);
        id
    }

    pub fn set_point(&mut self, node: u32, p: Point) {
        assert_eq!(p.dim(), self.dim);
        self.coords.insert(node, p);
    }

    /// Removes a node that no cell refers to.
    pub fn remove_node(&mut self, node: u32) -> Result<()> {
        let used = self.complex.vertices().contains(&node)
            || self.subdivisions.values().flatten().any(|c| c.nodes.contains(&node));
        if used {
            return Err(Error::Precondition(format!("node {node} is in use")));
        }
        self.coords.remove(&node);
        Ok(())
    }

    /// Moves a subdivision node to an unused id.
    pub fn renumber_node(&mut self, old: u32, new: u32) -> Result<()> {
        if self.complex.vertices().contains(&old) || self.coords.contains_key(&new) {
            return Err(Error::Precondition(format!("cannot renumber node {old} to {new}")));
        }
        let Some(p) = self.coords.remove(&old) else {
            return Err(Error::Precondition(format!("unknown node {old}")));
        };
        self.coords.insert(new, p);
        for c in self.subdivisions.values_mut().flatten() {
            for n in c.nodes.iter_mut() {
                if *n == old {
                    *n = new;
                }
            }
        }
        Ok(())
    }

    /// Replaces the image of the edge `{lo, hi}` by the polyline through
    /// `nodes`, which must run from `lo` to `hi`.
    pub fn set_polyline(&mut self, edge: &Face, nodes: Vec<u32>) -> Result<()> {
        if edge.len() != 2 || !self.complex.contains(edge) {
            return Err(Error::Precondition(format!("{edge:?} is not an edge")));
        }
        if nodes.first() != Some(&edge[0]) || nodes.last() != Some(&edge[1]) || nodes.len() < 2 {
            return Err(Error::Precondition(format!("polyline must run from {} to {}", edge[0], edge[1])));
        }
        if let Some(n) = nodes.iter().find(|n| !self.coords.contains_key(n)) {
            return Err(Error::Precondition(format!("unknown node {n}")));
        }
        if nodes.len() == 2 {
            self.subdivisions.remove(edge);
        } else {
            let cells = nodes.windows(2).map(|w| Cell { nodes: w.to_vec(), sign: 1 }).collect();
            self.subdivisions.insert(edge.clone(), cells);
        }
        Ok(())
    }

    /// Node sequence of an edge from `from` to `to` (either direction).
    pub fn polyline(&self, from: u32, to: u32) -> Vec<u32> {
        let edge = Face::from_distinct([from, to]);
        let mut nodes = match self.subdivisions.get(&edge) {
            None => edge.to_vec(),
            Some(cells) => {
                let mut v = vec![cells[0].nodes[0]];
                v.extend(cells.iter().map(|c| c.nodes[1]));
                v
            }
        };
        if from > to {
            nodes.reverse();
        }
        nodes
    }

    pub fn set_cells(&mut self, face: Face, cells: Vec<Cell>) -> Result<()> {
        if !self.complex.contains(&face) {
            return Err(Error::Precondition(format!("{face:?} is not a face")));
        }
        for c in &cells {
            if c.nodes.len() != face.len() {
                return Err(Error::Precondition(format!("cell {:?} has the wrong dimension", c.nodes)));
            }
            if let Some(n) = c.nodes.iter().find(|n| !self.coords.contains_key(n)) {
                return Err(Error::Precondition(format!("unknown node {n}")));
            }
        }
        self.subdivisions.insert(face, cells);
        Ok(())
    }

    /// Mirror image under `x_axis -> -x_axis`.
    pub fn reflected(&self, axis: usize) -> PlMap {
        let mut out = self.clone();
        for p in out.coords.values_mut() {
            p.0[axis] = -p.0[axis].clone();
        }
        out
    }

    /// The same map with every point lifted into `R^{d+1}` at height zero.
    pub fn lifted(&self, complex: Complex) -> PlMap {
        let zero = Q::from_integer(0.into());
        PlMap {
            complex,
            dim: self.dim + 1,
            coords: self.coords.iter().map(|(k, p)| (*k, p.lifted(zero.clone()))).collect(),
            subdivisions: self.subdivisions.clone(),
        }
    }

    /// The same map regarded over a larger complex; new faces are linear until
    /// given cells.
    pub fn extended(&self, complex: Complex) -> Result<PlMap> {
        if let Some(f) = self.complex.faces().find(|f| !complex.contains(f)) {
            return Err(Error::Precondition(format!("{f:?} is missing from the larger complex")));
        }
        let mut out = PlMap::linear(complex, self.dim, self.coords.clone())?;
        out.subdivisions = self.subdivisions.clone();
        Ok(out)
    }

    /// Restriction to a subcomplex.
    pub fn restricted(&self, sub: &Complex) -> Result<PlMap> {
        if let Some(f) = sub.faces().find(|f| !self.complex.contains(f)) {
            return Err(Error::Precondition(format!("{f:?} is not in the source complex")));
        }
        Ok(PlMap {
            complex: sub.clone(),
            dim: self.dim,
            coords: self.coords.clone(),
            subdivisions: self.subdivisions.iter().filter(|(f, _)| sub.contains(f)).map(|(f, c)| (f.clone(), c.clone())).collect(),
        })
    }

    /// Same geometry over a relabeled complex; `map` must be injective on vertices
    /// and must not collide with subdivision node ids.
    pub fn relabeled(&self, map: &BTreeMap<u32, u32>) -> Result<PlMap> {
        let m = |v: u32| *map.get(&v).unwrap_or(&v);
        let complex = self.complex.relabel(map)?;
        let mut coords = BTreeMap::new();
        for (k, p) in &self.coords {
            if coords.insert(m(*k), p.clone()).is_some() {
                return Err(Error::Precondition(format!("relabeling collides at node {}", m(*k))));
            }
        }
        let mut subdivisions = BTreeMap::new();
        for (f, cells) in &self.subdivisions {
            let nf_seq: Vec<u32> = f.iter().map(|&v| m(v)).collect();
            let nf = Face::new(nf_seq.clone())?;
            // each cell is oriented relative to the old increasing order; the
            // new increasing order differs by the sign of the relabeling
            let s = crate::simplicial::sequence_sign(&nf_seq);
            let cells = cells
                .iter()
                .map(|c| Cell { nodes: c.nodes.iter().map(|&v| m(v)).collect(), sign: c.sign * s })
                .collect();
            subdivisions.insert(nf, cells);
        }
        Ok(PlMap { complex, dim: self.dim, coords, subdivisions })
    }

    pub fn to_json(&self) -> Value {
        let mut polylines = BTreeMap::new();
        let mut cells = BTreeMap::new();
        for (f, cs) in &self.subdivisions {
            let is_polyline = f.len() == 2
                && cs.iter().all(|c| c.sign == 1)
                && cs.first().map(|c| c.nodes[0]) == Some(f[0])
                && cs.last().map(|c| c.nodes[1]) == Some(f[1])
                && cs.windows(2).all(|w| w[0].nodes[1] == w[1].nodes[0]);
            if is_polyline {
                polylines.insert(f.key(), self.polyline(f[0], f[1]));
            } else {
                cells.insert(f.key(), cs.clone());
            }
        }
        let doc = PlMapJson {
            format_version: FORMAT_VERSION,
            dim: self.dim,
            orientation: "standard".into(),
            complex: self.complex.to_json(),
            coords: self.coords.iter().map(|(k, p)| (k.to_string(), p.clone())).collect(),
            polylines,
            cells,
        };
        serde_json::to_value(doc).expect("map serializes")
    }

    pub fn from_json(value: &Value) -> Result<PlMap> {
        let doc: PlMapJson = serde_json::from_value(value.clone())?;
        let complex = Complex::from_json(&doc.complex)?;
        let mut coords = BTreeMap::new();
        for (k, p) in doc.coords {
            let id: u32 = k.parse().map_err(|e| Error::Parse(format!("node id {k:?}: {e}")))?;
            coords.insert(id, p);
        }
        let mut map = PlMap::linear(complex, doc.dim, coords)?;
        for (k, nodes) in doc.polylines {
            map.set_polyline(&Face::parse_key(&k)?, nodes)?;
        }
        for (k, cells) in doc.cells {
            map.set_cells(Face::parse_key(&k)?, cells)?;
        }
        Ok(map)
    }
}
