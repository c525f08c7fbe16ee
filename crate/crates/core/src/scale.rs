//! Pitch classes, triad shapes and the complex `C(n1,n2,n3)` they generate.
//!
//! A triad shape `(n1,n2,n3)` with `n1 <= n2 <= n3` and `n1 + n2 + n3 = N`
//! determines a 2-dimensional simplicial complex on `Z/N`: its faces are all
//! transpositions and inversions of `{0, n1, n1+n2}`, its edges all
//! translations of `{0,n1}`, `{0,n2}` and `{0,n3}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Result, TonnetzError};

/// An element of `Z/N`. The modulus travels with the value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PitchClass {
    value: u32,
    modulus: u32,
}

impl PitchClass {
    /// Reduces `value` into `Z/modulus`.
    ///
    /// # Panics
    ///
    /// Panics if `modulus` is zero.
    pub fn new(value: i64, modulus: u32) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        Self {
            value: value.rem_euclid(i64::from(modulus)) as u32,
            modulus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    /// Adds an integer number of scale steps.
    pub fn shift(self, steps: i64) -> Self {
        Self::new(i64::from(self.value) + steps, self.modulus)
    }

    pub fn try_add(self, rhs: Self) -> Result<Self> {
        self.check_modulus(rhs)?;
        Ok(self.shift(i64::from(rhs.value)))
    }

    pub fn try_sub(self, rhs: Self) -> Result<Self> {
        self.check_modulus(rhs)?;
        Ok(self.shift(-i64::from(rhs.value)))
    }

    fn check_modulus(self, rhs: Self) -> Result<()> {
        if self.modulus == rhs.modulus {
            Ok(())
        } else {
            Err(TonnetzError::ModulusMismatch {
                left: self.modulus,
                right: rhs.modulus,
            })
        }
    }
}

/// # Panics
///
/// Panics when the operands live in different moduli; use
/// [`PitchClass::try_add`] to get an error instead.
impl Add for PitchClass {
    type Output = PitchClass;

    fn add(self, rhs: Self) -> Self {
        self.try_add(rhs).expect("pitch class addition")
    }
}

impl Sub for PitchClass {
    type Output = PitchClass;

    fn sub(self, rhs: Self) -> Self {
        self.try_sub(rhs).expect("pitch class subtraction")
    }
}

impl Neg for PitchClass {
    type Output = PitchClass;

    fn neg(self) -> Self {
        Self::new(-i64::from(self.value), self.modulus)
    }
}

impl fmt::Display for PitchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Sorted step intervals of a triad together with the scale size `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawShape", into = "RawShape")]
pub struct TriadShape {
    n1: u32,
    n2: u32,
    n3: u32,
}

#[derive(Serialize, Deserialize)]
struct RawShape {
    n1: u32,
    n2: u32,
    n3: u32,
    #[serde(rename = "N")]
    modulus: u32,
}

impl TryFrom<RawShape> for TriadShape {
    type Error = TonnetzError;

    fn try_from(raw: RawShape) -> Result<Self> {
        let shape = TriadShape::new(raw.n1, raw.n2, raw.n3)?;
        if shape.modulus() != raw.modulus {
            return Err(TonnetzError::InvalidShape(format!(
                "intervals sum to {} but N = {}",
                shape.modulus(),
                raw.modulus
            )));
        }
        Ok(shape)
    }
}

impl From<TriadShape> for RawShape {
    fn from(shape: TriadShape) -> Self {
        RawShape {
            n1: shape.n1,
            n2: shape.n2,
            n3: shape.n3,
            modulus: shape.modulus(),
        }
    }
}

impl TriadShape {
    /// Builds a shape from already sorted intervals.
    pub fn new(n1: u32, n2: u32, n3: u32) -> Result<Self> {
        if n1 == 0 {
            return Err(TonnetzError::InvalidShape(format!(
                "intervals must be at least 1, got ({n1},{n2},{n3})"
            )));
        }
        if !(n1 <= n2 && n2 <= n3) {
            return Err(TonnetzError::InvalidShape(format!(
                "intervals must be sorted ascending, got ({n1},{n2},{n3})"
            )));
        }
        if n1.checked_add(n2).and_then(|s| s.checked_add(n3)).is_none() {
            return Err(TonnetzError::InvalidShape("scale size overflows".into()));
        }
        let shape = Self { n1, n2, n3 };
        let n = shape.modulus();
        // n1, n2 < N/2 for every sorted positive triple
        assert!(2 * n1 < n && 2 * n2 < n);
        Ok(shape)
    }

    pub fn n1(&self) -> u32 {
        self.n1
    }

    pub fn n2(&self) -> u32 {
        self.n2
    }

    pub fn n3(&self) -> u32 {
        self.n3
    }

    pub fn intervals(&self) -> [u32; 3] {
        [self.n1, self.n2, self.n3]
    }

    /// Scale size `N = n1 + n2 + n3`.
    pub fn modulus(&self) -> u32 {
        self.n1 + self.n2 + self.n3
    }

    pub fn gcd(&self) -> u32 {
        self.n1.gcd(&self.n2).gcd(&self.n3)
    }

    /// `n3 = N/2`, equivalently `n3 = n1 + n2`.
    pub fn has_tritone(&self) -> bool {
        2 * self.n3 == self.modulus()
    }

    /// Shape with every interval divided by the common divisor.
    pub fn reduced(&self) -> TriadShape {
        let d = self.gcd();
        TriadShape {
            n1: self.n1 / d,
            n2: self.n2 / d,
            n3: self.n3 / d,
        }
    }

    /// The Type I triad rooted at zero, `{0, n1, n1+n2}`.
    pub fn root_triad(&self) -> Simplex {
        Simplex::from_residues(self.modulus(), &[0, self.n1, self.n1 + self.n2])
    }

    /// Which of `n1, n2, n3` an edge realises, if any.
    pub fn length_of(&self, edge: &Simplex) -> Option<u32> {
        let [a, b] = edge.pair()?;
        let n = self.modulus();
        if edge.modulus() != n {
            return None;
        }
        let d = (b + n - a) % n;
        self.intervals()
            .into_iter()
            .find(|&len| d == len || n - d == len)
    }

    /// Every shape with scale size `n`, in lexicographic order.
    pub fn all_for(n: u32) -> Vec<TriadShape> {
        let mut shapes = Vec::new();
        for n1 in 1..=n / 3 {
            for n2 in n1..=(n - n1) / 2 {
                let n3 = n - n1 - n2;
                if n3 >= n2 {
                    shapes.push(TriadShape { n1, n2, n3 });
                }
            }
        }
        shapes
    }
}

impl fmt::Display for TriadShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({},{},{})", self.n1, self.n2, self.n3)
    }
}

/// Sorts three positive step intervals into a shape.
pub fn normalize_shape(intervals: [u32; 3]) -> Result<TriadShape> {
    let mut sorted = intervals;
    sorted.sort_unstable();
    TriadShape::new(sorted[0], sorted[1], sorted[2])
}

/// A 0-, 1- or 2-simplex over `Z/N`, stored as an ascending residue tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    modulus: u32,
    len: u8,
    vertices: [u32; 3],
}

impl Simplex {
    /// Builds a simplex from arbitrary integers, reducing mod `modulus`.
    pub fn new(modulus: u32, vertices: &[i64]) -> Result<Self> {
        if modulus == 0 {
            return Err(TonnetzError::DegenerateSimplex("modulus 0".into()));
        }
        if vertices.is_empty() || vertices.len() > 3 {
            return Err(TonnetzError::DegenerateSimplex(format!(
                "{} vertices",
                vertices.len()
            )));
        }
        let residues: Vec<u32> = vertices
            .iter()
            .map(|&v| PitchClass::new(v, modulus).value())
            .collect();
        let set: BTreeSet<u32> = residues.iter().copied().collect();
        if set.len() != residues.len() {
            return Err(TonnetzError::DegenerateSimplex(format!(
                "repeated vertex in {vertices:?} mod {modulus}"
            )));
        }
        Ok(Self::from_residues(modulus, &residues))
    }

    /// Builds from residues already in `0..modulus` and pairwise distinct.
    pub(crate) fn from_residues(modulus: u32, residues: &[u32]) -> Self {
        let mut vertices = [0; 3];
        vertices[..residues.len()].copy_from_slice(residues);
        vertices[..residues.len()].sort_unstable();
        debug_assert!(vertices[..residues.len()].windows(2).all(|w| w[0] < w[1]));
        Self {
            modulus,
            len: residues.len() as u8,
            vertices,
        }
    }

    pub(crate) fn from_pitches(pitches: &[PitchClass]) -> Self {
        let modulus = pitches[0].modulus();
        let residues: Vec<u32> = pitches.iter().map(|p| p.value()).collect();
        Self::from_residues(modulus, &residues)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Vertices in ascending residue order.
    pub fn vertices(&self) -> &[u32] {
        &self.vertices[..self.len as usize]
    }

    pub fn pitches(&self) -> impl Iterator<Item = PitchClass> + '_ {
        self.vertices()
            .iter()
            .map(|&v| PitchClass::new(i64::from(v), self.modulus))
    }

    pub fn dimension(&self) -> usize {
        self.len as usize - 1
    }

    pub fn contains(&self, v: u32) -> bool {
        self.vertices().contains(&v)
    }

    /// True when every vertex of `other` is a vertex of `self`.
    pub fn has_face(&self, other: &Simplex) -> bool {
        self.modulus == other.modulus && other.vertices().iter().all(|&v| self.contains(v))
    }

    pub(crate) fn pair(&self) -> Option<[u32; 2]> {
        (self.len == 2).then(|| [self.vertices[0], self.vertices[1]])
    }

    pub(crate) fn triple(&self) -> Option<[u32; 3]> {
        (self.len == 3).then_some(self.vertices)
    }

    /// The three edges of a 2-simplex; empty for lower dimensions.
    pub fn boundary_edges(&self) -> Vec<Simplex> {
        match self.triple() {
            Some([a, b, c]) => vec![
                Self::from_residues(self.modulus, &[a, b]),
                Self::from_residues(self.modulus, &[a, c]),
                Self::from_residues(self.modulus, &[b, c]),
            ],
            None => Vec::new(),
        }
    }

    /// The vertex of a 2-simplex not on `edge`.
    pub fn opposite(&self, edge: &Simplex) -> Option<u32> {
        if self.len != 3 || !self.has_face(edge) || edge.len != 2 {
            return None;
        }
        self.vertices().iter().copied().find(|&v| !edge.contains(v))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices().iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Which presentation(s) of a face exist: translation (I) or inversion (II)
/// of `{0, n1, n1+n2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeLabel {
    I,
    II,
}

/// The complex `C(n1,n2,n3)`. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TonnetzComplex {
    shape: TriadShape,
    vertices: Vec<PitchClass>,
    edges: BTreeSet<Simplex>,
    faces: BTreeSet<Simplex>,
    edge_to_faces: BTreeMap<Simplex, Vec<Simplex>>,
}

impl TonnetzComplex {
    pub fn shape(&self) -> &TriadShape {
        &self.shape
    }

    pub fn modulus(&self) -> u32 {
        self.shape.modulus()
    }

    pub fn vertices(&self) -> &[PitchClass] {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Simplex> {
        &self.edges
    }

    pub fn faces(&self) -> &BTreeSet<Simplex> {
        &self.faces
    }

    pub fn edge_to_faces(&self) -> &BTreeMap<Simplex, Vec<Simplex>> {
        &self.edge_to_faces
    }

    /// Number of faces on `edge`, zero if the edge is absent.
    pub fn incidence(&self, edge: &Simplex) -> usize {
        self.edge_to_faces.get(edge).map_or(0, Vec::len)
    }

    /// Faces containing vertex `v`, in canonical order.
    pub fn faces_at(&self, v: u32) -> Vec<Simplex> {
        self.faces
            .iter()
            .filter(|f| f.contains(v))
            .copied()
            .collect()
    }

    /// Rebuilds a complex of the given shape from an explicit face list,
    /// deriving its edges and incidences. Vertices are all of `Z/N`.
    pub fn from_faces<I>(shape: TriadShape, faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = Simplex>,
    {
        let n = shape.modulus();
        let faces: BTreeSet<Simplex> = faces.into_iter().collect();
        for face in &faces {
            if face.modulus() != n {
                return Err(TonnetzError::ModulusMismatch {
                    left: n,
                    right: face.modulus(),
                });
            }
            if face.dimension() != 2 {
                return Err(TonnetzError::DegenerateSimplex(format!(
                    "{face} is not a 2-simplex"
                )));
            }
        }
        let mut edge_to_faces: BTreeMap<Simplex, Vec<Simplex>> = BTreeMap::new();
        for face in &faces {
            for edge in face.boundary_edges() {
                edge_to_faces.entry(edge).or_default().push(*face);
            }
        }
        let edges = edge_to_faces.keys().copied().collect();
        Ok(Self {
            shape,
            vertices: (0..n).map(|v| PitchClass::new(i64::from(v), n)).collect(),
            edges,
            faces,
            edge_to_faces,
        })
    }
}

/// Builds `C(n1,n2,n3)` from its definition.
pub fn build_complex(shape: &TriadShape) -> TonnetzComplex {
    let n = shape.modulus();
    let (n1, n2) = (i64::from(shape.n1()), i64::from(shape.n2()));
    debug_assert!(2 * n1 < i64::from(n) && 2 * n2 < i64::from(n));

    let mut faces = BTreeSet::new();
    for k in 0..i64::from(n) {
        let root = PitchClass::new(k, n);
        faces.insert(Simplex::from_pitches(&[
            root,
            root.shift(n1),
            root.shift(n1 + n2),
        ]));
        faces.insert(Simplex::from_pitches(&[
            root,
            root.shift(-n1),
            root.shift(-n1 - n2),
        ]));
    }

    let mut edges = BTreeSet::new();
    for len in shape.intervals() {
        for k in 0..i64::from(n) {
            let root = PitchClass::new(k, n);
            edges.insert(Simplex::from_pitches(&[root, root.shift(i64::from(len))]));
        }
    }

    let complex =
        TonnetzComplex::from_faces(*shape, faces).expect("faces of a valid shape are well-formed");
    assert_eq!(
        complex.edges, edges,
        "edge orbits of {shape} differ from the face boundary edges"
    );
    complex
}

/// Faces incident to `edge`.
pub fn faces_containing_edge(complex: &TonnetzComplex, edge: &Simplex) -> Result<Vec<Simplex>> {
    complex
        .edge_to_faces
        .get(edge)
        .cloned()
        .ok_or_else(|| TonnetzError::NotFound(format!("edge {edge}")))
}

/// Reports whether `face` is a translation (I), an inversion (II), or both,
/// of the root triad of `shape`.
pub fn triad_type(face: &Simplex, shape: &TriadShape) -> Result<BTreeSet<TypeLabel>> {
    let n = shape.modulus();
    let mut labels = BTreeSet::new();
    if face.modulus() == n && face.dimension() == 2 {
        let (n1, n2) = (i64::from(shape.n1()), i64::from(shape.n2()));
        for root in face.pitches() {
            let up = Simplex::from_pitches(&[root, root.shift(n1), root.shift(n1 + n2)]);
            if up == *face {
                labels.insert(TypeLabel::I);
            }
            let down = Simplex::from_pitches(&[root, root.shift(-n1), root.shift(-n1 - n2)]);
            if down == *face {
                labels.insert(TypeLabel::II);
            }
        }
    }
    if labels.is_empty() {
        Err(TonnetzError::NotFound(format!("face {face} in {shape}")))
    } else {
        Ok(labels)
    }
}
