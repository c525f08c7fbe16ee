//! Generalized Tonnetze.
//!
//! For a triad shape `(n1,n2,n3)` in an `N`-tone equal-tempered scale this
//! crate builds the simplicial complex of all its transpositions and
//! inversions, computes its invariants, classifies its components from the
//! interval relations and independently from the built complex, and
//! constructs the closed surfaces obtained by doubling tritone edges.

pub mod classifier;
pub mod error;
pub mod invariants;
pub mod peck;
pub mod report;
pub mod scale;
pub mod transform;

pub use classifier::{
    circle_length, classify_by_oracle, classify_closed_form, gcd_lemma_value, ClassificationRecord,
    Source, SpaceKind,
};
pub use error::{Result, TonnetzError};
pub use invariants::{
    boundary_circuits, connected_components, count_summary, decompose, orientability, vertex_link,
    ComponentPartition, CountSummary, LinkShape, VertexLink,
};
pub use peck::{assemble, classify_assembly, collapse, AssemblyKind, Move, PeckAssembly};
pub use report::{
    enumerate, render_csv, render_json, render_table, report_row, verify, ExportDocument,
    ReportRow, VerifySummary,
};
pub use scale::{
    build_complex, faces_containing_edge, normalize_shape, triad_type, PitchClass, Simplex,
    TonnetzComplex, TriadShape, TypeLabel,
};
pub use transform::{apply, edge_flip, op_f, op_s, orbit, Generator, GroupElement};
