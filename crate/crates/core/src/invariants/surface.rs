//! Triangle-level topology shared by Tonnetz complexes and desingularized
//! assemblies: edge incidence, vertex links and orientation propagation.
//!
//! Edges are identified by an arbitrary key `K` rather than by their vertex
//! pair, so two distinct edges may join the same two vertices.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::error::{Result, TonnetzError};

/// A triangle with its three edge keys; `edges[i]` joins `vertices[i]` and
/// `vertices[(i + 1) % 3]`. The vertex order is the triangle's reference
/// orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle<K> {
    pub vertices: [u32; 3],
    pub edges: [K; 3],
}

/// Shape of a vertex link graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkShape {
    /// A single closed cycle: interior point of a surface.
    Cycle,
    /// A single open path: boundary point of a surface with boundary.
    Path,
    Singular,
}

/// Classifies a (multi)graph by degree and connectivity.
pub fn link_shape<N: Ord + Clone>(nodes: &BTreeSet<N>, edges: &[(N, N)]) -> LinkShape {
    if nodes.is_empty() || edges.is_empty() {
        return LinkShape::Singular;
    }
    let mut degree: BTreeMap<&N, usize> = nodes.iter().map(|n| (n, 0)).collect();
    let mut adjacent: BTreeMap<&N, Vec<&N>> = BTreeMap::new();
    for (a, b) in edges {
        if a == b {
            return LinkShape::Singular;
        }
        *degree.entry(a).or_default() += 1;
        *degree.entry(b).or_default() += 1;
        adjacent.entry(a).or_default().push(b);
        adjacent.entry(b).or_default().push(a);
    }
    if degree.len() != nodes.len() {
        return LinkShape::Singular;
    }

    let start = nodes.iter().next().expect("non-empty");
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(n) = stack.pop() {
        for &m in adjacent.get(n).into_iter().flatten() {
            if seen.insert(m) {
                stack.push(m);
            }
        }
    }
    if seen.len() != nodes.len() {
        return LinkShape::Singular;
    }

    let ends = degree.values().filter(|&&d| d == 1).count();
    let middles = degree.values().filter(|&&d| d == 2).count();
    if middles == nodes.len() {
        LinkShape::Cycle
    } else if ends == 2 && ends + middles == nodes.len() {
        LinkShape::Path
    } else {
        LinkShape::Singular
    }
}

/// A finite set of triangles glued along shared edge keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation<K> {
    triangles: Vec<Triangle<K>>,
}

impl<K: Ord + Clone + Debug> Triangulation<K> {
    pub fn new(triangles: Vec<Triangle<K>>) -> Self {
        Self { triangles }
    }

    pub fn triangles(&self) -> &[Triangle<K>] {
        &self.triangles
    }

    /// Triangles on each edge as `(triangle index, edge slot)`.
    pub fn edge_incidence(&self) -> BTreeMap<&K, Vec<(usize, usize)>> {
        let mut map: BTreeMap<&K, Vec<(usize, usize)>> = BTreeMap::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for (slot, key) in tri.edges.iter().enumerate() {
                map.entry(key).or_default().push((t, slot));
            }
        }
        map
    }

    pub fn vertex_set(&self) -> BTreeSet<u32> {
        self.triangles
            .iter()
            .flat_map(|t| t.vertices.iter().copied())
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_set().len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_incidence().len()
    }

    pub fn face_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn euler(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// Link of `v`: nodes are the edges through `v`, with one link edge per
    /// triangle at `v` joining its two edges through `v`.
    pub fn link_shape_at(&self, v: u32) -> LinkShape {
        let mut nodes = BTreeSet::new();
        let mut edges = Vec::new();
        for tri in &self.triangles {
            if let Some(i) = tri.vertices.iter().position(|&x| x == v) {
                let outgoing = &tri.edges[i];
                let incoming = &tri.edges[(i + 2) % 3];
                nodes.insert(outgoing);
                nodes.insert(incoming);
                edges.push((outgoing, incoming));
            }
        }
        link_shape(&nodes, &edges)
    }

    /// Every edge in exactly two triangles and every link a cycle.
    pub fn is_closed_surface(&self) -> bool {
        !self.triangles.is_empty()
            && self.edge_incidence().values().all(|ts| ts.len() == 2)
            && self
                .vertex_set()
                .into_iter()
                .all(|v| self.link_shape_at(v) == LinkShape::Cycle)
    }

    /// Propagates an orientation across shared edges, requiring neighbours
    /// to traverse their common edge in opposite directions. Returns one
    /// flag per edge-connected piece, in order of first triangle.
    pub fn orientable_pieces(&self) -> Result<Vec<bool>> {
        let incidence = self.edge_incidence();
        if let Some((key, ts)) = incidence.iter().find(|(_, ts)| ts.len() > 2) {
            return Err(TonnetzError::NotASurface(format!(
                "edge {key:?} lies in {} faces",
                ts.len()
            )));
        }
        // neighbour lists: (other triangle, flip) where flip says whether
        // the neighbour's sign must differ from ours
        let mut neighbours: Vec<Vec<(usize, bool)>> = vec![Vec::new(); self.triangles.len()];
        for ts in incidence.values() {
            if let [(t1, s1), (t2, s2)] = ts[..] {
                let same_start = self.triangles[t1].vertices[s1] == self.triangles[t2].vertices[s2];
                neighbours[t1].push((t2, same_start));
                neighbours[t2].push((t1, same_start));
            }
        }

        let mut sign: Vec<Option<bool>> = vec![None; self.triangles.len()];
        let mut pieces = Vec::new();
        for start in 0..self.triangles.len() {
            if sign[start].is_some() {
                continue;
            }
            sign[start] = Some(true);
            let mut consistent = true;
            let mut queue = VecDeque::from([start]);
            while let Some(t) = queue.pop_front() {
                let s = sign[t].expect("visited");
                for &(u, flip) in &neighbours[t] {
                    let wanted = s ^ flip;
                    match sign[u] {
                        None => {
                            sign[u] = Some(wanted);
                            queue.push_back(u);
                        }
                        Some(got) if got != wanted => consistent = false,
                        Some(_) => {}
                    }
                }
            }
            pieces.push(consistent);
        }
        Ok(pieces)
    }

    pub fn is_orientable(&self) -> Result<bool> {
        Ok(self.orientable_pieces()?.into_iter().all(|ok| ok))
    }
}
