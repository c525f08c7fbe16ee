//! Counting invariants, components, vertex links, boundary circuits and
//! orientability of a [`TonnetzComplex`].

pub mod surface;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Result, TonnetzError};
use crate::scale::{PitchClass, Simplex, TonnetzComplex, TriadShape};

pub use surface::{link_shape, LinkShape, Triangle, Triangulation};

/// Vertex, edge and face counts with `euler = V - E + F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSummary {
    pub num_vertices: usize,
    pub num_edges: usize,
    pub num_faces: usize,
    pub euler: i64,
}

impl CountSummary {
    pub fn new(num_vertices: usize, num_edges: usize, num_faces: usize) -> Self {
        Self {
            num_vertices,
            num_edges,
            num_faces,
            euler: num_vertices as i64 - num_edges as i64 + num_faces as i64,
        }
    }
}

/// The six rows of the edge/face/Euler charts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ChartRow {
    Distinct,
    DistinctTritone,
    LowPair,
    LowPairTritone,
    HighPair,
    AllEqual,
}

fn chart_row(shape: &TriadShape) -> ChartRow {
    let [n1, n2, n3] = shape.intervals();
    let tritone = shape.has_tritone();
    match (n1 == n2, n2 == n3) {
        (true, true) => ChartRow::AllEqual,
        (false, true) => ChartRow::HighPair,
        (true, false) if tritone => ChartRow::LowPairTritone,
        (true, false) => ChartRow::LowPair,
        (false, false) if tritone => ChartRow::DistinctTritone,
        (false, false) => ChartRow::Distinct,
    }
}

fn exact_div(numerator: usize, denominator: usize) -> usize {
    assert_eq!(
        numerator % denominator,
        0,
        "{numerator}/{denominator} is not integral"
    );
    numerator / denominator
}

/// `|E|` from the edge chart.
pub fn count_edges_closed_form(shape: &TriadShape) -> usize {
    let n = shape.modulus() as usize;
    match chart_row(shape) {
        ChartRow::Distinct => 3 * n,
        ChartRow::DistinctTritone => exact_div(5 * n, 2),
        ChartRow::LowPair | ChartRow::HighPair => 2 * n,
        ChartRow::LowPairTritone => exact_div(3 * n, 2),
        ChartRow::AllEqual => n,
    }
}

/// `|F|`: `N/3` for equal intervals, `2N` for distinct ones, `N` otherwise.
pub fn count_faces_closed_form(shape: &TriadShape) -> usize {
    let n = shape.modulus() as usize;
    match chart_row(shape) {
        ChartRow::AllEqual => exact_div(n, 3),
        ChartRow::Distinct | ChartRow::DistinctTritone => 2 * n,
        _ => n,
    }
}

/// `χ` from the Euler chart.
pub fn euler_closed_form(shape: &TriadShape) -> i64 {
    let n = shape.modulus() as usize;
    let chi = match chart_row(shape) {
        ChartRow::Distinct | ChartRow::LowPair | ChartRow::HighPair => 0,
        ChartRow::DistinctTritone | ChartRow::LowPairTritone => exact_div(n, 2),
        ChartRow::AllEqual => exact_div(n, 3),
    };
    chi as i64
}

pub fn count_summary(complex: &TonnetzComplex) -> CountSummary {
    CountSummary::new(
        complex.vertices().len(),
        complex.edges().len(),
        complex.faces().len(),
    )
}

/// A partition of the vertex set into connected components, ordered by
/// smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub blocks: Vec<BTreeSet<u32>>,
}

impl ComponentPartition {
    pub fn count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, v: u32) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&v))
    }
}

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Components under edge adjacency.
pub fn connected_components(complex: &TonnetzComplex) -> ComponentPartition {
    let n = complex.modulus() as usize;
    let mut sets = DisjointSet::new(n);
    for edge in complex.edges() {
        let v = edge.vertices();
        sets.union(v[0] as usize, v[1] as usize);
    }
    let mut blocks: BTreeMap<usize, BTreeSet<u32>> = BTreeMap::new();
    for v in 0..n {
        blocks.entry(sets.find(v)).or_default().insert(v as u32);
    }
    let mut blocks: Vec<BTreeSet<u32>> = blocks.into_values().collect();
    blocks.sort_by_key(|b| b.first().copied());
    ComponentPartition { blocks }
}

/// Splits a shape into `d = gcd(n1,n2,n3)` and the base shape `(n1/d, n2/d, n3/d)`.
pub fn decompose(shape: &TriadShape) -> (u32, TriadShape) {
    (shape.gcd(), shape.reduced())
}

/// Neighbours of a vertex, one link edge per incident face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexLink {
    pub center: PitchClass,
    pub link_vertices: BTreeSet<PitchClass>,
    pub link_edges: BTreeSet<(PitchClass, PitchClass)>,
    pub shape_tag: LinkShape,
}

pub fn vertex_link(complex: &TonnetzComplex, v: PitchClass) -> Result<VertexLink> {
    if v.modulus() != complex.modulus() {
        return Err(TonnetzError::ModulusMismatch {
            left: complex.modulus(),
            right: v.modulus(),
        });
    }
    let mut link_vertices = BTreeSet::new();
    let mut link_edges = BTreeSet::new();
    for face in complex.faces_at(v.value()) {
        let others: Vec<PitchClass> = face.pitches().filter(|&p| p != v).collect();
        link_vertices.extend(others.iter().copied());
        link_edges.insert((others[0], others[1]));
    }
    let edge_list: Vec<(PitchClass, PitchClass)> = link_edges.iter().copied().collect();
    let shape_tag = link_shape(&link_vertices, &edge_list);
    Ok(VertexLink {
        center: v,
        link_vertices,
        link_edges,
        shape_tag,
    })
}

/// One connected component of a complex: its vertices and the faces and
/// edges among them.
#[derive(Debug, Clone)]
pub struct Component<'a> {
    complex: &'a TonnetzComplex,
    vertices: BTreeSet<u32>,
    faces: Vec<Simplex>,
    edges: Vec<Simplex>,
}

/// Splits a complex into its components, in partition order.
pub fn components(complex: &TonnetzComplex) -> Vec<Component<'_>> {
    connected_components(complex)
        .blocks
        .into_iter()
        .map(|vertices| {
            let inside = |s: &&Simplex| vertices.contains(&s.vertices()[0]);
            let faces = complex.faces().iter().filter(inside).copied().collect();
            let edges = complex.edges().iter().filter(inside).copied().collect();
            Component {
                complex,
                vertices,
                faces,
                edges,
            }
        })
        .collect()
}

/// The faces of a complex as triangles in their sorted reference
/// orientation, keyed by their edges.
pub fn triangulation_of<'s, I>(faces: I) -> Triangulation<Simplex>
where
    I: IntoIterator<Item = &'s Simplex>,
{
    Triangulation::new(
        faces
            .into_iter()
            .map(|face| {
                let [a, b, c] = face.vertices() else {
                    unreachable!("faces are 2-simplices")
                };
                let n = face.modulus();
                let edge = |x: u32, y: u32| Simplex::new(n, &[x.into(), y.into()]).expect("edge");
                Triangle {
                    vertices: [*a, *b, *c],
                    edges: [edge(*a, *b), edge(*b, *c), edge(*c, *a)],
                }
            })
            .collect(),
    )
}

impl<'a> Component<'a> {
    pub fn complex(&self) -> &'a TonnetzComplex {
        self.complex
    }

    pub fn vertices(&self) -> &BTreeSet<u32> {
        &self.vertices
    }

    pub fn faces(&self) -> &[Simplex] {
        &self.faces
    }

    pub fn edges(&self) -> &[Simplex] {
        &self.edges
    }

    pub fn counts(&self) -> CountSummary {
        CountSummary::new(self.vertices.len(), self.edges.len(), self.faces.len())
    }

    pub fn incidence(&self, edge: &Simplex) -> usize {
        self.complex.incidence(edge)
    }

    /// Largest number of faces sharing any one edge.
    pub fn max_incidence(&self) -> usize {
        self.edges
            .iter()
            .map(|e| self.incidence(e))
            .max()
            .unwrap_or(0)
    }

    pub fn link_shapes(&self) -> BTreeSet<LinkShape> {
        self.vertices
            .iter()
            .map(|&v| {
                let pitch = PitchClass::new(i64::from(v), self.complex.modulus());
                vertex_link(self.complex, pitch)
                    .expect("vertex of the complex")
                    .shape_tag
            })
            .collect()
    }

    pub fn triangulation(&self) -> Triangulation<Simplex> {
        triangulation_of(&self.faces)
    }

    pub fn is_orientable(&self) -> Result<bool> {
        self.triangulation().is_orientable()
    }

    pub fn boundary_circuits(&self) -> Result<Vec<Vec<Simplex>>> {
        circuits_of(self.complex, &self.edges)
    }
}

fn circuits_of(complex: &TonnetzComplex, edges: &[Simplex]) -> Result<Vec<Vec<Simplex>>> {
    if let Some(e) = edges.iter().find(|e| complex.incidence(e) > 2) {
        return Err(TonnetzError::ContractViolation(format!(
            "edge {e} lies in {} faces; not a surface",
            complex.incidence(e)
        )));
    }
    let boundary: Vec<Simplex> = edges
        .iter()
        .filter(|e| complex.incidence(e) == 1)
        .copied()
        .collect();
    if boundary.is_empty() {
        return Err(TonnetzError::ContractViolation(
            "closed surface has no boundary".into(),
        ));
    }

    let mut at_vertex: BTreeMap<u32, Vec<Simplex>> = BTreeMap::new();
    for e in &boundary {
        for &v in e.vertices() {
            at_vertex.entry(v).or_default().push(*e);
        }
    }
    if let Some((v, es)) = at_vertex.iter().find(|(_, es)| es.len() != 2) {
        return Err(TonnetzError::ContractViolation(format!(
            "boundary vertex {v} meets {} boundary edges",
            es.len()
        )));
    }

    let mut used = BTreeSet::new();
    let mut circuits = Vec::new();
    for &first in &boundary {
        if used.contains(&first) {
            continue;
        }
        let mut circuit = vec![first];
        used.insert(first);
        let (mut prev, mut at) = (first, first.vertices()[1]);
        loop {
            let next = *at_vertex[&at]
                .iter()
                .find(|&&e| e != prev)
                .expect("two boundary edges per vertex");
            if next == first {
                break;
            }
            used.insert(next);
            circuit.push(next);
            at = *next.vertices().iter().find(|&&v| v != at).expect("edge");
            prev = next;
        }
        circuits.push(circuit);
    }
    Ok(circuits)
}

/// Partitions the boundary edges (those on exactly one face) into closed
/// circuits, ordered by their smallest edge.
pub fn boundary_circuits(complex: &TonnetzComplex) -> Result<Vec<Vec<Simplex>>> {
    let edges: Vec<Simplex> = complex.edges().iter().copied().collect();
    circuits_of(complex, &edges)
}

/// Orientability of each component, in partition order.
pub fn orientability(complex: &TonnetzComplex) -> Result<Vec<bool>> {
    components(complex)
        .iter()
        .map(Component::is_orientable)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scale::build_complex;

    fn complex(n1: u32, n2: u32, n3: u32) -> TonnetzComplex {
        build_complex(&TriadShape::new(n1, n2, n3).unwrap())
    }

    fn shape(n1: u32, n2: u32, n3: u32) -> TriadShape {
        TriadShape::new(n1, n2, n3).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(count_edges_closed_form(&shape(3, 4, 5)), 36);
        assert_eq!(count_edges_closed_form(&shape(1, 2, 3)), 15);
        assert_eq!(count_edges_closed_form(&shape(4, 4, 4)), 12);
        assert_eq!(count_faces_closed_form(&shape(3, 4, 5)), 24);
        assert_eq!(count_faces_closed_form(&shape(4, 4, 4)), 4);
        assert_eq!(count_faces_closed_form(&shape(2, 5, 5)), 12);
        assert_eq!(euler_closed_form(&shape(3, 4, 5)), 0);
        assert_eq!(euler_closed_form(&shape(1, 1, 2)), 2);
        assert_eq!(euler_closed_form(&shape(1, 2, 3)), 3);
    }

    #[test]
    fn direct_counts() {
        assert_eq!(
            count_summary(&complex(3, 4, 5)),
            CountSummary::new(12, 36, 24)
        );
        let strip = count_summary(&complex(1, 1, 5));
        assert_eq!(
            (strip.num_vertices, strip.num_edges, strip.num_faces),
            (7, 14, 7)
        );
        assert_eq!(strip.euler, 0);
        assert_eq!(count_summary(&complex(1, 1, 1)).euler, 1);
    }

    #[test]
    fn components_match_examples() {
        assert_eq!(connected_components(&complex(3, 4, 5)).count(), 1);
        let parts = connected_components(&complex(2, 4, 6));
        assert_eq!(parts.count(), 2);
        assert_eq!(parts.blocks[0], (0..12).step_by(2).collect());
        assert_eq!(parts.blocks[1], (1..12).step_by(2).collect());
        assert_eq!(connected_components(&complex(3, 3, 6)).count(), 3);
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(&shape(2, 4, 6)), (2, shape(1, 2, 3)));
        assert_eq!(decompose(&shape(3, 3, 6)), (3, shape(1, 1, 2)));
        assert_eq!(decompose(&shape(3, 4, 5)), (1, shape(3, 4, 5)));
    }

    #[test]
    fn link_examples() {
        let c = complex(3, 4, 5);
        let link = vertex_link(&c, PitchClass::new(0, 12)).unwrap();
        assert_eq!(link.shape_tag, LinkShape::Cycle);
        assert_eq!(link.link_vertices.len(), 6);
        assert_eq!(link.link_edges.len(), 6);

        let c = complex(1, 1, 10);
        let link = vertex_link(&c, PitchClass::new(0, 12)).unwrap();
        assert_eq!(link.shape_tag, LinkShape::Path);
        assert_eq!(link.link_vertices.len(), 4);

        let c = complex(1, 2, 3);
        let link = vertex_link(&c, PitchClass::new(0, 6)).unwrap();
        assert_eq!(link.shape_tag, LinkShape::Singular);
        let three = PitchClass::new(3, 6);
        let degree = link
            .link_edges
            .iter()
            .filter(|(a, b)| *a == three || *b == three)
            .count();
        assert_eq!(degree, 4);

        assert!(vertex_link(&c, PitchClass::new(0, 7)).is_err());
    }

    #[test]
    fn circuit_examples() {
        assert_eq!(boundary_circuits(&complex(1, 1, 10)).unwrap().len(), 2);
        assert_eq!(boundary_circuits(&complex(1, 1, 5)).unwrap().len(), 1);
        let triangle = boundary_circuits(&complex(1, 1, 1)).unwrap();
        assert_eq!(triangle.len(), 1);
        assert_eq!(triangle[0].len(), 3);
    }

    #[test]
    fn circuits_reject_closed_and_singular_spaces() {
        assert!(matches!(
            boundary_circuits(&complex(3, 4, 5)),
            Err(TonnetzError::ContractViolation(_))
        ));
        assert!(matches!(
            boundary_circuits(&complex(1, 2, 3)),
            Err(TonnetzError::ContractViolation(_))
        ));
    }

    #[test]
    fn orientability_examples() {
        assert_eq!(orientability(&complex(3, 4, 5)).unwrap(), vec![true]);
        assert_eq!(orientability(&complex(1, 1, 2)).unwrap(), vec![true]);
        assert_eq!(orientability(&complex(1, 1, 5)).unwrap(), vec![false]);
        assert_eq!(orientability(&complex(2, 2, 8)).unwrap(), vec![true, true]);
        assert!(matches!(
            orientability(&complex(1, 2, 3)),
            Err(TonnetzError::NotASurface(_))
        ));
    }

    /// Orients Type I faces by ascending steps and Type II faces by
    /// descending steps, and checks every shared edge is traversed both ways.
    fn length_ordered_orientation_is_consistent(c: &TonnetzComplex) -> bool {
        let shape = c.shape();
        let n = i64::from(shape.modulus());
        let (n1, n2) = (i64::from(shape.n1()), i64::from(shape.n2()));
        let mut directed: BTreeMap<Simplex, Vec<(u32, u32)>> = BTreeMap::new();
        for k in 0..n {
            for step in [1, -1] {
                let cycle =
                    [k, k + step * n1, k + step * (n1 + n2)].map(|x| x.rem_euclid(n) as u32);
                for i in 0..3 {
                    let (a, b) = (cycle[i], cycle[(i + 1) % 3]);
                    let edge = Simplex::new(shape.modulus(), &[a.into(), b.into()]).unwrap();
                    directed.entry(edge).or_default().push((a, b));
                }
            }
        }
        directed
            .values()
            .all(|dirs| dirs.len() == 2 && dirs[0].0 == dirs[1].1 && dirs[0].1 == dirs[1].0)
    }

    #[test]
    fn propagation_agrees_with_length_ordered_orientation() {
        for n in 3..=30 {
            for shape in TriadShape::all_for(n) {
                let [n1, n2, n3] = shape.intervals();
                if n1 < n2 && n2 < n3 && !shape.has_tritone() {
                    let c = build_complex(&shape);
                    assert!(length_ordered_orientation_is_consistent(&c), "{shape}");
                    assert!(orientability(&c).unwrap().iter().all(|&o| o), "{shape}");
                }
            }
        }
    }
}
