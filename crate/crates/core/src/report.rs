//! Tabular reports, exports and the verification sweep behind the CLI.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::{
    classify_by_oracle, classify_closed_form, gcd_lemma_value, ClassificationRecord, SpaceKind,
};
use crate::error::{Result, TonnetzError};
use crate::invariants::{
    boundary_circuits, connected_components, count_edges_closed_form, count_faces_closed_form,
    count_summary, euler_closed_form, CountSummary,
};
use crate::peck::{all_sequences, assemble, classify_assembly, format_moves, junction_count};
use crate::peck::{AssemblyKind, Move};
use crate::scale::{build_complex, Simplex, TonnetzComplex, TriadShape};

/// Note names for `Z/12`, sharps only.
pub const NOTE_NAMES: [&str; 12] = [
    "C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B",
];

/// `"{0,3,7} = {C,D#,G}"` when `N = 12`, otherwise just `"{0,3,7}"`.
pub fn trichord_label(shape: &TriadShape) -> String {
    let triad = shape.root_triad();
    if shape.modulus() != 12 {
        return triad.to_string();
    }
    let names: Vec<&str> = triad
        .vertices()
        .iter()
        .map(|&v| NOTE_NAMES[v as usize])
        .collect();
    format!("{triad} = {{{}}}", names.join(","))
}

/// One line of an `enumerate` report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub label: String,
    pub shape: TriadShape,
    pub classification: String,
    pub trichord: String,
    pub components: u32,
    pub kind: SpaceKind,
    pub counts: CountSummary,
    pub per_component_euler: i64,
    pub orientable: Option<bool>,
    /// Per component.
    pub boundary_circuits: Option<usize>,
}

/// Classifies `shape` both ways and fails if the two disagree.
pub fn report_row(shape: &TriadShape) -> Result<ReportRow> {
    let table = classify_closed_form(shape);
    let oracle = classify_by_oracle(&build_complex(shape))?;
    if !table.agrees_with(&oracle) {
        return Err(TonnetzError::InternalInconsistency(format!(
            "{shape}: table says {:?}, oracle says {:?}",
            table, oracle
        )));
    }
    Ok(ReportRow {
        label: shape.to_string(),
        shape: *shape,
        classification: table.describe(),
        trichord: trichord_label(shape),
        components: table.num_components,
        kind: table.component_kind,
        counts: table.counts,
        per_component_euler: table.per_component_euler,
        orientable: table.orientable,
        boundary_circuits: table.boundary_circuit_count,
    })
}

/// Every shape with scale size `n`, lexicographically.
pub fn enumerate(n: u32) -> Result<Vec<ReportRow>> {
    if n < 3 {
        return Err(TonnetzError::InvalidShape(format!(
            "scale size must be at least 3, got {n}"
        )));
    }
    TriadShape::all_for(n).par_iter().map(report_row).collect()
}

/// Aligned plain-text table, one row per line.
pub fn render_table(rows: &[ReportRow]) -> String {
    let heads: Vec<String> = rows
        .iter()
        .map(|r| format!("{}: {}", r.label, r.classification))
        .collect();
    let width = heads.iter().map(|h| h.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (head, row) in heads.iter().zip(rows) {
        let pad = width - head.chars().count();
        writeln!(out, "{head}{}  {}", " ".repeat(pad), row.trichord).unwrap();
    }
    out
}

pub fn render_json(rows: &[ReportRow]) -> Result<String> {
    serde_json::to_string_pretty(rows).map_err(|e| TonnetzError::Malformed(e.to_string()))
}

#[derive(Serialize)]
struct CsvRow {
    n1: u32,
    n2: u32,
    n3: u32,
    #[serde(rename = "N")]
    modulus: u32,
    components: u32,
    kind: String,
    #[serde(rename = "V")]
    v: usize,
    #[serde(rename = "E")]
    e: usize,
    #[serde(rename = "F")]
    f: usize,
    chi: i64,
    orientable: Option<bool>,
    boundary_circuits: Option<usize>,
}

/// Columns `n1,n2,n3,N,components,kind,V,E,F,chi,orientable,boundary_circuits`;
/// the last two are empty for non-surfaces.
pub fn render_csv(rows: &[ReportRow]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer
            .serialize(CsvRow {
                n1: row.shape.n1(),
                n2: row.shape.n2(),
                n3: row.shape.n3(),
                modulus: row.shape.modulus(),
                components: row.components,
                kind: row.kind.slug(),
                v: row.counts.num_vertices,
                e: row.counts.num_edges,
                f: row.counts.num_faces,
                chi: row.counts.euler,
                orientable: row.orientable,
                boundary_circuits: row.boundary_circuits,
            })
            .map_err(|e| TonnetzError::Malformed(e.to_string()))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| TonnetzError::Malformed(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| TonnetzError::Malformed(e.to_string()))
}

/// Multi-line summary printed by `classify`.
pub fn render_classification(row: &ReportRow) -> String {
    let c = &row.counts;
    let mut out = format!(
        "{}: {}; V={} E={} F={} χ={}\n",
        row.label, row.classification, c.num_vertices, c.num_edges, c.num_faces, c.euler
    );
    writeln!(out, "representative trichord: {}", row.trichord).unwrap();
    writeln!(
        out,
        "components: {} × {} (χ={} each)",
        row.components, row.kind, row.per_component_euler
    )
    .unwrap();
    let orientable = match row.orientable {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a (not a surface)",
    };
    writeln!(out, "orientable: {orientable}").unwrap();
    match row.boundary_circuits {
        Some(k) => writeln!(out, "boundary circuits: {k} per component").unwrap(),
        None => writeln!(out, "boundary circuits: n/a (not a surface)").unwrap(),
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportClassification {
    pub description: String,
    #[serde(flatten)]
    pub record: ClassificationRecord,
}

/// The JSON export format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportDocument {
    pub shape: TriadShape,
    pub vertices: Vec<u32>,
    pub edges: Vec<[u32; 2]>,
    pub faces: Vec<[u32; 3]>,
    pub classification: ExportClassification,
}

impl ExportDocument {
    pub fn from_complex(complex: &TonnetzComplex) -> Self {
        let record = classify_closed_form(complex.shape());
        Self {
            shape: *complex.shape(),
            vertices: complex.vertices().iter().map(|v| v.value()).collect(),
            edges: complex
                .edges()
                .iter()
                .map(|e| [e.vertices()[0], e.vertices()[1]])
                .collect(),
            faces: complex
                .faces()
                .iter()
                .map(|f| [f.vertices()[0], f.vertices()[1], f.vertices()[2]])
                .collect(),
            classification: ExportClassification {
                description: record.describe(),
                record,
            },
        }
    }

    /// Rebuilds the complex from the face list and checks the listed
    /// vertices and edges against it.
    pub fn to_complex(&self) -> Result<TonnetzComplex> {
        let n = self.shape.modulus();
        let faces = self
            .faces
            .iter()
            .map(|f| Simplex::new(n, &f.map(i64::from)))
            .collect::<Result<Vec<_>>>()?;
        let complex = TonnetzComplex::from_faces(self.shape, faces)?;
        let edges = self
            .edges
            .iter()
            .map(|e| Simplex::new(n, &e.map(i64::from)))
            .collect::<Result<BTreeSet<_>>>()?;
        if &edges != complex.edges() {
            return Err(TonnetzError::Malformed(
                "edge list does not match the faces".into(),
            ));
        }
        let vertices: Vec<u32> = complex.vertices().iter().map(|v| v.value()).collect();
        if vertices != self.vertices {
            return Err(TonnetzError::Malformed(format!(
                "vertex list must be 0..{n}"
            )));
        }
        Ok(complex)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| TonnetzError::Malformed(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| TonnetzError::Malformed(e.to_string()))
    }
}

/// Face-adjacency graph in DOT syntax. Faces sharing a tritone are joined
/// by dashed edges.
pub fn to_dot(complex: &TonnetzComplex) -> String {
    let shape = complex.shape();
    let index: BTreeMap<&Simplex, usize> = complex
        .faces()
        .iter()
        .enumerate()
        .map(|(i, f)| (f, i))
        .collect();
    let mut out = format!("graph \"{shape}\" {{\n");
    for (face, i) in &index {
        writeln!(out, "  f{i} [label=\"{face}\"];").unwrap();
    }
    let mut adjacencies = Vec::new();
    for (edge, faces) in complex.edge_to_faces() {
        let dashed = shape.has_tritone() && shape.length_of(edge) == Some(shape.n3());
        for (a, fa) in faces.iter().enumerate() {
            for fb in &faces[a + 1..] {
                let (x, y) = (index[fa], index[fb]);
                adjacencies.push((x.min(y), x.max(y), dashed));
            }
        }
    }
    adjacencies.sort_unstable();
    for (x, y, dashed) in adjacencies {
        let style = if dashed { " [style=dashed]" } else { "" };
        writeln!(out, "  f{x} -- f{y}{style};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub shape: TriadShape,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifySummary {
    pub max_n: u32,
    pub shapes_checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn check_shape(shape: &TriadShape) -> Vec<String> {
    let mut problems = Vec::new();
    let complex = build_complex(shape);
    let direct = count_summary(&complex);
    let closed = CountSummary::new(
        shape.modulus() as usize,
        count_edges_closed_form(shape),
        count_faces_closed_form(shape),
    );
    if direct != closed || direct.euler != euler_closed_form(shape) {
        problems.push(format!("counts: direct {direct:?}, closed form {closed:?}"));
    }

    let table = classify_closed_form(shape);
    match classify_by_oracle(&complex) {
        Ok(oracle) if oracle.agrees_with(&table) => {}
        Ok(oracle) => problems.push(format!(
            "classification: table {:?} ({}), oracle {:?} ({})",
            table.component_kind,
            table.num_components,
            oracle.component_kind,
            oracle.num_components
        )),
        Err(e) => problems.push(format!("oracle failed: {e}")),
    }

    let found = connected_components(&complex).count();
    if found != shape.gcd() as usize {
        problems.push(format!("components: found {found}, gcd {}", shape.gcd()));
    }

    // the two boundary families and the gcd identity that counts their circuits
    let [n1, n2, n3] = shape.intervals();
    let n = shape.modulus();
    let expected_circuits = if n1 == n2 && n2 < n3 && !shape.has_tritone() {
        let k = n3 - n1;
        let lemma = gcd_lemma_value(u64::from(n1), u64::from(k));
        if lemma != u64::from(n.gcd(&n3)) {
            problems.push(format!("gcd lemma: n={n1} k={k} gives {lemma}"));
        }
        Some(n.gcd(&n3) as usize)
    } else if n1 < n2 && n2 == n3 {
        Some(n.gcd(&n1) as usize)
    } else {
        None
    };
    if let Some(expected) = expected_circuits {
        match boundary_circuits(&complex) {
            Ok(c) if c.len() == expected => {}
            Ok(c) => problems.push(format!(
                "boundary circuits: found {}, expected {expected}",
                c.len()
            )),
            Err(e) => problems.push(format!("boundary circuits failed: {e}")),
        }
    }
    problems
}

/// Checks every shape with `3 <= N <= max_n`; results are in shape order.
pub fn verify(max_n: u32) -> VerifySummary {
    let shapes: Vec<TriadShape> = (3..=max_n).flat_map(TriadShape::all_for).collect();
    let mismatches = shapes
        .par_iter()
        .map(|s| {
            check_shape(s)
                .into_iter()
                .map(|detail| Mismatch { shape: *s, detail })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    VerifySummary {
        max_n,
        shapes_checked: shapes.len(),
        mismatches,
    }
}

/// Classifies every move word of the right length, in lexicographic order.
pub fn peck_sweep(shape: &TriadShape) -> Result<Vec<(Vec<Move>, AssemblyKind)>> {
    let len = junction_count(shape)?;
    all_sequences(len)
        .into_par_iter()
        .map(|word| {
            let kind = classify_assembly(&assemble(shape, &word)?);
            Ok((word, kind))
        })
        .collect()
}

/// `"4 tori, 4 Klein bottles"`.
pub fn tally_line(results: &[(Vec<Move>, AssemblyKind)]) -> String {
    let tori = results
        .iter()
        .filter(|(_, k)| *k == AssemblyKind::Torus)
        .count();
    let klein = results.len() - tori;
    let plural =
        |n: usize, one: &str, many: &str| format!("{n} {}", if n == 1 { one } else { many });
    format!(
        "{}, {}",
        plural(tori, "torus", "tori"),
        plural(klein, "Klein bottle", "Klein bottles")
    )
}

pub fn render_peck_line(word: &[Move], kind: AssemblyKind) -> String {
    format!("{}: {kind}", format_moves(word))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(n1: u32, n2: u32, n3: u32) -> TriadShape {
        TriadShape::new(n1, n2, n3).unwrap()
    }

    #[test]
    fn trichords() {
        assert_eq!(trichord_label(&shape(3, 4, 5)), "{0,3,7} = {C,D#,G}");
        assert_eq!(trichord_label(&shape(1, 5, 6)), "{0,1,6} = {C,C#,F#}");
        assert_eq!(trichord_label(&shape(1, 1, 5)), "{0,1,2}");
    }

    #[test]
    fn table_for_twelve() {
        let rows = enumerate(12).unwrap();
        assert_eq!(rows.len(), 12);
        let table = render_table(&rows);
        assert!(table
            .lines()
            .next()
            .unwrap()
            .starts_with("C(1,1,10): cylinder "));
        assert!(table
            .lines()
            .last()
            .unwrap()
            .starts_with("C(4,4,4): four disjoint 2-simplices "));
        assert!(enumerate(2).is_err());
    }

    #[test]
    fn csv_columns() {
        let csv = render_csv(&enumerate(7).unwrap()).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "n1,n2,n3,N,components,kind,V,E,F,chi,orientable,boundary_circuits"
        );
        assert_eq!(
            lines.next().unwrap(),
            "1,1,5,7,1,moebius_band,7,14,7,0,false,1"
        );
        let csv = render_csv(&[report_row(&shape(1, 2, 3)).unwrap()]).unwrap();
        assert!(
            csv.ends_with("1,2,3,6,1,circle_of_tetrahedra(3),6,15,12,3,,\n"),
            "{csv}"
        );
    }

    #[test]
    fn export_round_trip() {
        let complex = build_complex(&shape(1, 1, 2));
        let doc = ExportDocument::from_complex(&complex);
        assert_eq!(doc.faces, vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]);
        let back = ExportDocument::from_json(&doc.to_json().unwrap()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_complex().unwrap(), complex);

        let mut broken = doc.clone();
        broken.edges.pop();
        assert!(broken.to_complex().is_err());
    }

    #[test]
    fn dot_degrees() {
        let dot = to_dot(&build_complex(&shape(3, 4, 5)));
        assert_eq!(dot.matches("[label=").count(), 24);
        assert_eq!(dot.matches(" -- ").count(), 36);
        let dot = to_dot(&build_complex(&shape(4, 4, 4)));
        assert_eq!(dot.matches("[label=").count(), 4);
        assert_eq!(dot.matches(" -- ").count(), 0);
        let dot = to_dot(&build_complex(&shape(1, 1, 2)));
        assert_eq!(dot.matches("style=dashed").count(), 2);
    }

    #[test]
    fn small_sweep() {
        let summary = verify(12);
        assert_eq!(summary.shapes_checked, 53);
        assert!(summary.passed(), "{:?}", summary.mismatches);
        assert_eq!(verify(3).shapes_checked, 1);
    }

    #[test]
    fn peck_tally() {
        let results = peck_sweep(&shape(1, 2, 3)).unwrap();
        assert_eq!(tally_line(&results), "4 tori, 4 Klein bottles");
        assert_eq!(
            render_peck_line(&results[4].0, results[4].1),
            "FSS: Klein bottle"
        );
    }
}
