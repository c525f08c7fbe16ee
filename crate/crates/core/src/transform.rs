//! The T/I group acting on simplices, edge flips between adjacent triads,
//! the tritone-fixing operations S and F, and orbits under them.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Result, TonnetzError};
use crate::scale::{PitchClass, Simplex, TonnetzComplex, TriadShape};

/// An element of the dihedral group of order `2N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElement {
    /// `T_k(x) = x + k`
    Transposition(PitchClass),
    /// `I_k(x) = k - x`
    Inversion(PitchClass),
}

impl GroupElement {
    pub fn transposition(k: i64, modulus: u32) -> Self {
        GroupElement::Transposition(PitchClass::new(k, modulus))
    }

    pub fn inversion(k: i64, modulus: u32) -> Self {
        GroupElement::Inversion(PitchClass::new(k, modulus))
    }

    pub fn identity(modulus: u32) -> Self {
        Self::transposition(0, modulus)
    }

    pub fn modulus(&self) -> u32 {
        match self {
            GroupElement::Transposition(k) | GroupElement::Inversion(k) => k.modulus(),
        }
    }

    /// All `2N` elements.
    pub fn all(modulus: u32) -> Vec<GroupElement> {
        let n = i64::from(modulus);
        (0..n)
            .map(|k| Self::transposition(k, modulus))
            .chain((0..n).map(|k| Self::inversion(k, modulus)))
            .collect()
    }

    /// # Panics
    ///
    /// Panics if `x` lives in a different modulus.
    pub fn act(&self, x: PitchClass) -> PitchClass {
        match *self {
            GroupElement::Transposition(k) => x + k,
            GroupElement::Inversion(k) => k - x,
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        use GroupElement::*;
        match (*self, *other) {
            (Transposition(j), Transposition(k)) => Transposition(j + k),
            (Transposition(j), Inversion(k)) => Inversion(j + k),
            (Inversion(j), Transposition(k)) => Inversion(j - k),
            (Inversion(j), Inversion(k)) => Transposition(j - k),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        match *self {
            GroupElement::Transposition(k) => GroupElement::Transposition(-k),
            inversion @ GroupElement::Inversion(_) => inversion,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Transposition(k) => write!(f, "T{k}"),
            GroupElement::Inversion(k) => write!(f, "I{k}"),
        }
    }
}

/// Image of a simplex under a group element.
pub fn apply(g: &GroupElement, s: &Simplex) -> Result<Simplex> {
    if g.modulus() != s.modulus() {
        return Err(TonnetzError::ModulusMismatch {
            left: g.modulus(),
            right: s.modulus(),
        });
    }
    let image: Vec<PitchClass> = s.pitches().map(|p| g.act(p)).collect();
    Ok(Simplex::from_pitches(&image))
}

/// The other faces across `edge` from `face`: none on a boundary edge, one
/// for an ordinary flip, three on a tritone edge.
pub fn edge_flip(complex: &TonnetzComplex, face: &Simplex, edge: &Simplex) -> Result<Vec<Simplex>> {
    if !complex.faces().contains(face) {
        return Err(TonnetzError::InvalidFlip(format!("{face} is not a face")));
    }
    if edge.dimension() != 1 || !face.has_face(edge) {
        return Err(TonnetzError::InvalidFlip(format!(
            "{edge} is not an edge of {face}"
        )));
    }
    Ok(complex.edge_to_faces()[edge]
        .iter()
        .filter(|f| *f != face)
        .copied()
        .collect())
}

/// The tritone `{p, p + N/2}` of a triad and its remaining note.
fn split_tritone(
    triad: &Simplex,
    shape: &TriadShape,
) -> Result<(PitchClass, PitchClass, PitchClass)> {
    let [n1, n2, _] = shape.intervals();
    if !shape.has_tritone() || n1 >= n2 {
        return Err(TonnetzError::InvalidOperation(format!(
            "S and F need n1 + n2 = n3 = N/2 with n1 < n2, got {shape}"
        )));
    }
    if triad.modulus() != shape.modulus() || triad.dimension() != 2 {
        return Err(TonnetzError::InvalidOperation(format!(
            "{triad} is not a triad over Z/{}",
            shape.modulus()
        )));
    }
    let half = i64::from(shape.n3());
    let notes: Vec<PitchClass> = triad.pitches().collect();
    for (i, &p) in notes.iter().enumerate() {
        let q = p.shift(half);
        if let Some(j) = notes.iter().position(|&x| x == q) {
            let third = notes[3 - i - j];
            return Ok((p, q, third));
        }
    }
    Err(TonnetzError::InvalidOperation(format!(
        "{triad} contains no tritone"
    )))
}

/// Reflects the third note within its half of the circle: fixes the
/// tritone as a set, swapping its endpoints.
pub fn op_s(triad: &Simplex, shape: &TriadShape) -> Result<Simplex> {
    let (p, q, third) = split_tritone(triad, shape)?;
    let moved = GroupElement::Inversion(p + q).act(third);
    Ok(Simplex::from_pitches(&[p, q, moved]))
}

/// Flips the third note into the other half of the circle: fixes both
/// tritone endpoints.
pub fn op_f(triad: &Simplex, shape: &TriadShape) -> Result<Simplex> {
    let (p, q, third) = split_tritone(triad, shape)?;
    let moved = GroupElement::Inversion(p + p).act(third);
    Ok(Simplex::from_pitches(&[p, q, moved]))
}

/// Generators for [`orbit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// Flip across an edge of length `n1`.
    FlipN1,
    FlipN2,
    FlipN3,
    S,
    F,
}

impl Generator {
    pub const FLIPS: [Generator; 3] = [Generator::FlipN1, Generator::FlipN2, Generator::FlipN3];
    pub const ALL: [Generator; 5] = [
        Generator::FlipN1,
        Generator::FlipN2,
        Generator::FlipN3,
        Generator::S,
        Generator::F,
    ];
}

fn images(complex: &TonnetzComplex, face: &Simplex, generator: Generator) -> Vec<Simplex> {
    let shape = complex.shape();
    let flip_length = match generator {
        Generator::FlipN1 => shape.n1(),
        Generator::FlipN2 => shape.n2(),
        Generator::FlipN3 => shape.n3(),
        Generator::S => return op_s(face, shape).into_iter().collect(),
        Generator::F => return op_f(face, shape).into_iter().collect(),
    };
    face.boundary_edges()
        .into_iter()
        .filter(|e| shape.length_of(e) == Some(flip_length))
        .filter_map(|e| match edge_flip(complex, face, &e) {
            Ok(others) if others.len() == 1 => Some(others[0]),
            _ => None,
        })
        .collect()
}

/// Closure of `{start}` under the generators; a generator that does not
/// apply unambiguously at some face is skipped there.
pub fn orbit(
    complex: &TonnetzComplex,
    start: &Simplex,
    generators: &BTreeSet<Generator>,
) -> Result<BTreeSet<Simplex>> {
    if !complex.faces().contains(start) {
        return Err(TonnetzError::NotFound(format!("face {start}")));
    }
    let mut seen = BTreeSet::from([*start]);
    let mut queue = VecDeque::from([*start]);
    while let Some(face) = queue.pop_front() {
        for &g in generators {
            for image in images(complex, &face, g) {
                if seen.insert(image) {
                    queue.push_back(image);
                }
            }
        }
    }
    Ok(seen)
}
