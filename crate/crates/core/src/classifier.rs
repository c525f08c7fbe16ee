//! Classification of `C(n1,n2,n3)`: once from the closed-form table over
//! the interval relations, once by inspecting the built complex.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Result, TonnetzError};
use crate::invariants::{
    components, count_edges_closed_form, count_faces_closed_form, count_summary, decompose,
    euler_closed_form, Component, CountSummary, LinkShape,
};
use crate::scale::{Simplex, TonnetzComplex, TriadShape};

/// Topological type of one connected component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    TwoSimplex,
    TetrahedronBoundary,
    Torus,
    Cylinder,
    MoebiusBand,
    /// A cycle of this many tetrahedron boundaries glued along opposite
    /// edges; always at least 2.
    CircleOfTetrahedra(u32),
}

impl SpaceKind {
    pub fn singular(&self) -> String {
        match self {
            SpaceKind::TwoSimplex => "2-simplex".into(),
            SpaceKind::TetrahedronBoundary => "tetrahedron boundary".into(),
            SpaceKind::Torus => "torus".into(),
            SpaceKind::Cylinder => "cylinder".into(),
            SpaceKind::MoebiusBand => "Möbius band".into(),
            SpaceKind::CircleOfTetrahedra(len) => format!("circle of {len} tetrahedra boundaries"),
        }
    }

    pub fn plural(&self) -> String {
        match self {
            SpaceKind::TwoSimplex => "2-simplices".into(),
            SpaceKind::TetrahedronBoundary => "tetrahedra boundaries".into(),
            SpaceKind::Torus => "tori".into(),
            SpaceKind::Cylinder => "cylinders".into(),
            SpaceKind::MoebiusBand => "Möbius bands".into(),
            SpaceKind::CircleOfTetrahedra(len) => {
                format!("circles of {len} tetrahedra boundaries")
            }
        }
    }

    /// Stable identifier used in CSV output.
    pub fn slug(&self) -> String {
        match self {
            SpaceKind::TwoSimplex => "two_simplex".into(),
            SpaceKind::TetrahedronBoundary => "tetrahedron_boundary".into(),
            SpaceKind::Torus => "torus".into(),
            SpaceKind::Cylinder => "cylinder".into(),
            SpaceKind::MoebiusBand => "moebius_band".into(),
            SpaceKind::CircleOfTetrahedra(len) => format!("circle_of_tetrahedra({len})"),
        }
    }

    /// "torus", "two disjoint cylinders", ...
    pub fn describe(&self, components: u32) -> String {
        if components == 1 {
            self.singular()
        } else {
            format!("{} disjoint {}", count_word(components), self.plural())
        }
    }

    /// Orientability of one component, `None` when it is not a surface.
    pub fn orientable(&self) -> Option<bool> {
        match self {
            SpaceKind::MoebiusBand => Some(false),
            SpaceKind::CircleOfTetrahedra(_) => None,
            _ => Some(true),
        }
    }

    /// Boundary circuits of one component, `None` when it is not a surface.
    pub fn boundary_circuits(&self) -> Option<usize> {
        match self {
            SpaceKind::TwoSimplex | SpaceKind::MoebiusBand => Some(1),
            SpaceKind::Cylinder => Some(2),
            SpaceKind::TetrahedronBoundary | SpaceKind::Torus => Some(0),
            SpaceKind::CircleOfTetrahedra(_) => None,
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.singular())
    }
}

fn count_word(n: u32) -> String {
    const WORDS: [&str; 21] = [
        "zero",
        "one",
        "two",
        "three",
        "four",
        "five",
        "six",
        "seven",
        "eight",
        "nine",
        "ten",
        "eleven",
        "twelve",
        "thirteen",
        "fourteen",
        "fifteen",
        "sixteen",
        "seventeen",
        "eighteen",
        "nineteen",
        "twenty",
    ];
    WORDS
        .get(n as usize)
        .map_or_else(|| n.to_string(), |w| (*w).to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    ClosedForm,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub shape: TriadShape,
    pub num_components: u32,
    pub component_kind: SpaceKind,
    pub counts: CountSummary,
    pub per_component_euler: i64,
    pub orientable: Option<bool>,
    /// Boundary circuits of a single component.
    pub boundary_circuit_count: Option<usize>,
    pub source: Source,
}

impl ClassificationRecord {
    /// Equality on everything but `source`.
    pub fn agrees_with(&self, other: &ClassificationRecord) -> bool {
        ClassificationRecord {
            source: other.source,
            ..self.clone()
        } == *other
    }

    pub fn describe(&self) -> String {
        self.component_kind.describe(self.num_components)
    }
}

/// Kind of one component of a coprime shape, by the interval relations.
fn base_kind(base: &TriadShape) -> SpaceKind {
    let [n1, n2, n3] = base.intervals();
    let even = base.modulus().is_multiple_of(2);
    if n1 == n2 && n2 == n3 {
        SpaceKind::TwoSimplex
    } else if n1 == n2 && base.has_tritone() {
        SpaceKind::TetrahedronBoundary
    } else if n1 == n2 || n2 == n3 {
        if even {
            SpaceKind::Cylinder
        } else {
            SpaceKind::MoebiusBand
        }
    } else if base.has_tritone() {
        SpaceKind::CircleOfTetrahedra((n1 + n2) / n1.gcd(&n2))
    } else {
        SpaceKind::Torus
    }
}

/// Every classification-table row whose relations `shape` satisfies; the
/// rows are disjoint so exactly one entry is expected.
pub fn matching_rows(shape: &TriadShape) -> Vec<SpaceKind> {
    let base = shape.reduced();
    let [n1, n2, n3] = base.intervals();
    let half = base.has_tritone();
    let strip = (n1 == n2 && n2 < n3 && !half) || (n1 < n2 && n2 == n3);
    let even = base.modulus().is_multiple_of(2);
    let rows = [
        (n1 == n2 && n2 == n3, SpaceKind::TwoSimplex),
        (n1 == n2 && n2 < n3 && half, SpaceKind::TetrahedronBoundary),
        (strip && even, SpaceKind::Cylinder),
        (strip && !even, SpaceKind::MoebiusBand),
        (
            n1 + n2 == n3 && half && n1 < n2,
            SpaceKind::CircleOfTetrahedra((n1 + n2) / n1.gcd(&n2)),
        ),
        (n1 < n2 && n2 < n3 && !half, SpaceKind::Torus),
    ];
    rows.into_iter()
        .filter_map(|(matches, kind)| matches.then_some(kind))
        .collect()
}

/// Classification from the closed-form table and counting charts.
pub fn classify_closed_form(shape: &TriadShape) -> ClassificationRecord {
    let (d, base) = decompose(shape);
    let kind = base_kind(&base);
    let counts = CountSummary::new(
        shape.modulus() as usize,
        count_edges_closed_form(shape),
        count_faces_closed_form(shape),
    );
    debug_assert_eq!(counts.euler, euler_closed_form(shape));
    let per_component_euler = euler_closed_form(&base);
    assert_eq!(counts.euler, i64::from(d) * per_component_euler);
    ClassificationRecord {
        shape: *shape,
        num_components: d,
        component_kind: kind,
        counts,
        per_component_euler,
        orientable: kind.orientable(),
        boundary_circuit_count: kind.boundary_circuits(),
        source: Source::ClosedForm,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct ComponentReport {
    kind: SpaceKind,
    euler: i64,
    orientable: Option<bool>,
    circuits: Option<usize>,
}

/// Counts the tetrahedron-boundary blocks of a component whose singular
/// edges each lie in four faces, checking that the blocks form one cycle.
fn tetrahedron_cycle_length(component: &Component<'_>) -> Result<u32> {
    let faces = component.faces();
    let index: BTreeMap<&Simplex, usize> = faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let complex = component.complex();

    // blocks: faces connected through regular (2-face) edges
    let mut block_of: Vec<Option<usize>> = vec![None; faces.len()];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for start in 0..faces.len() {
        if block_of[start].is_some() {
            continue;
        }
        let id = blocks.len();
        block_of[start] = Some(id);
        let mut members = vec![start];
        let mut stack = vec![start];
        while let Some(f) = stack.pop() {
            for edge in faces[f].boundary_edges() {
                let around = &complex.edge_to_faces()[&edge];
                if around.len() != 2 {
                    continue;
                }
                for g in around {
                    let g = index[g];
                    if block_of[g].is_none() {
                        block_of[g] = Some(id);
                        members.push(g);
                        stack.push(g);
                    }
                }
            }
        }
        blocks.push(members);
    }

    for members in &blocks {
        let verts: BTreeSet<u32> = members
            .iter()
            .flat_map(|&f| faces[f].vertices().to_vec())
            .collect();
        if members.len() != 4 || verts.len() != 4 {
            return Err(TonnetzError::Unclassifiable(format!(
                "block of {} faces on {} vertices is not a tetrahedron boundary",
                members.len(),
                verts.len()
            )));
        }
    }

    let mut block_edges: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); blocks.len()];
    let mut degree = vec![0usize; blocks.len()];
    for edge in component.edges() {
        let around = &complex.edge_to_faces()[edge];
        if around.len() == 2 {
            continue;
        }
        let mut per_block: BTreeMap<usize, usize> = BTreeMap::new();
        for f in around {
            *per_block
                .entry(block_of[index[f]].expect("assigned"))
                .or_default() += 1;
        }
        if around.len() != 4 || per_block.len() != 2 || per_block.values().any(|&c| c != 2) {
            return Err(TonnetzError::Unclassifiable(format!(
                "singular edge {edge} is not shared by two blocks"
            )));
        }
        let ids: Vec<usize> = per_block.into_keys().collect();
        degree[ids[0]] += 1;
        degree[ids[1]] += 1;
        block_edges[ids[0]].insert(ids[1]);
        block_edges[ids[1]].insert(ids[0]);
    }

    if degree.iter().any(|&d| d != 2) {
        return Err(TonnetzError::Unclassifiable(
            "tetrahedron blocks do not form a cycle".into(),
        ));
    }
    let mut seen = BTreeSet::from([0usize]);
    let mut stack = vec![0usize];
    while let Some(b) = stack.pop() {
        for &c in &block_edges[b] {
            if seen.insert(c) {
                stack.push(c);
            }
        }
    }
    if seen.len() != blocks.len() || blocks.len() < 2 {
        return Err(TonnetzError::Unclassifiable(
            "tetrahedron blocks do not form a single cycle".into(),
        ));
    }
    Ok(blocks.len() as u32)
}

fn classify_component(component: &Component<'_>) -> Result<ComponentReport> {
    let euler = component.counts().euler;
    let max_incidence = component.max_incidence();
    let has_boundary = component
        .edges()
        .iter()
        .any(|e| component.incidence(e) == 1);

    if max_incidence > 2 {
        let length = tetrahedron_cycle_length(component)?;
        return Ok(ComponentReport {
            kind: SpaceKind::CircleOfTetrahedra(length),
            euler,
            orientable: None,
            circuits: None,
        });
    }

    let links = component.link_shapes();
    let orientable = component.is_orientable()?;

    if has_boundary {
        if links.contains(&LinkShape::Singular) {
            return Err(TonnetzError::Unclassifiable(format!(
                "singular vertex link in a component with boundary (links {links:?})"
            )));
        }
        let circuits = component.boundary_circuits()?.len();
        if component.faces().len() == 1 {
            return Ok(ComponentReport {
                kind: SpaceKind::TwoSimplex,
                euler,
                orientable: Some(orientable),
                circuits: Some(circuits),
            });
        }
        let kind = match circuits {
            2 => SpaceKind::Cylinder,
            1 => SpaceKind::MoebiusBand,
            other => {
                return Err(TonnetzError::Unclassifiable(format!(
                    "{other} boundary circuits"
                )))
            }
        };
        if euler != 0 {
            return Err(TonnetzError::Unclassifiable(format!(
                "band with Euler characteristic {euler}"
            )));
        }
        if kind.orientable() != Some(orientable) {
            return Err(TonnetzError::InternalInconsistency(format!(
                "{circuits} boundary circuits but orientable = {orientable}"
            )));
        }
        return Ok(ComponentReport {
            kind,
            euler,
            orientable: Some(orientable),
            circuits: Some(circuits),
        });
    }

    if links != BTreeSet::from([LinkShape::Cycle]) {
        return Err(TonnetzError::Unclassifiable(format!(
            "closed component with vertex links {links:?}"
        )));
    }
    let kind = match (euler, orientable) {
        (2, true) => SpaceKind::TetrahedronBoundary,
        (0, true) => SpaceKind::Torus,
        _ => {
            return Err(TonnetzError::Unclassifiable(format!(
                "closed surface with χ = {euler}, orientable = {orientable}"
            )))
        }
    };
    Ok(ComponentReport {
        kind,
        euler,
        orientable: Some(true),
        circuits: Some(0),
    })
}

/// Classification by examining edge incidences, vertex links, boundary
/// circuits and orientation of every component of a built complex.
pub fn classify_by_oracle(complex: &TonnetzComplex) -> Result<ClassificationRecord> {
    let parts = components(complex);
    let reports = parts
        .iter()
        .map(classify_component)
        .collect::<Result<Vec<_>>>()?;
    let first = reports
        .first()
        .cloned()
        .ok_or_else(|| TonnetzError::Unclassifiable("empty complex".into()))?;
    if let Some(other) = reports.iter().find(|r| **r != first) {
        return Err(TonnetzError::InternalInconsistency(format!(
            "components of {} differ: {:?} vs {:?}",
            complex.shape(),
            first,
            other
        )));
    }
    Ok(ClassificationRecord {
        shape: *complex.shape(),
        num_components: parts.len() as u32,
        component_kind: first.kind,
        counts: count_summary(complex),
        per_component_euler: first.euler,
        orientable: first.orientable,
        boundary_circuit_count: first.circuits,
        source: Source::Oracle,
    })
}

/// `2·gcd(n,k)` when `n/gcd` and `k/gcd` are both odd, else `gcd(n,k)`;
/// equal to `gcd(3n+k, n+k)`.
pub fn gcd_lemma_value(n: u64, k: u64) -> u64 {
    let g = n.gcd(&k);
    if (n / g) % 2 == 1 && (k / g) % 2 == 1 {
        2 * g
    } else {
        g
    }
}

/// Number of tetrahedron boundaries in each component of a tritone shape
/// with `n1 < n2`.
pub fn circle_length(shape: &TriadShape) -> Result<u32> {
    let [n1, n2, _] = shape.intervals();
    if !shape.has_tritone() || n1 >= n2 {
        return Err(TonnetzError::WrongCase(format!(
            "{shape} is not of the form n1 + n2 = n3 = N/2 with n1 < n2"
        )));
    }
    Ok((n1 + n2) / n1.gcd(&n2))
}

/// Share of the shapes with scale size `n` that classify as tori.
pub fn torus_fraction(n: u32) -> f64 {
    let shapes = TriadShape::all_for(n);
    let tori = shapes
        .iter()
        .filter(|s| classify_closed_form(s).component_kind == SpaceKind::Torus)
        .count();
    tori as f64 / shapes.len() as f64
}
