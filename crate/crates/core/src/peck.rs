//! Desingularized circles of tetrahedra.
//!
//! In a tritone shape `(n1, n2, n1+n2)` with `gcd(n1,n2) = 1`, every tritone
//! edge lies on four faces: two from the tetrahedron boundary on one side
//! and two from the one on the other side. Doubling each tritone edge and
//! pairing the faces across it by either `S` or `F` turns the complex into
//! a closed surface. Junction `i` is the tritone `{i·n1, i·n1 + N/2}`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::error::{Result, TonnetzError};
use crate::invariants::{Triangle, Triangulation};
use crate::scale::{build_complex, PitchClass, Simplex, TonnetzComplex, TriadShape};
use crate::transform::{op_f, op_s};

/// How the faces on either side of a tritone are paired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    S,
    F,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Move::S => "S",
            Move::F => "F",
        })
    }
}

/// Parses a word such as `"FSS"`; whitespace is ignored.
pub fn parse_moves(word: &str) -> Result<Vec<Move>> {
    word.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c.to_ascii_uppercase() {
            'S' => Ok(Move::S),
            'F' => Ok(Move::F),
            other => Err(TonnetzError::InvalidAssembly(format!(
                "unknown move {other:?}, expected S or F"
            ))),
        })
        .collect()
}

pub fn format_moves(moves: &[Move]) -> String {
    moves.iter().map(Move::to_string).collect()
}

/// Which of the two copies of a doubled tritone edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sheet {
    /// The copy carrying the face whose third note is `p + n1`.
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SurfaceEdge {
    Plain(Simplex),
    Tritone { edge: Simplex, sheet: Sheet },
}

impl SurfaceEdge {
    pub fn underlying(&self) -> Simplex {
        match *self {
            SurfaceEdge::Plain(edge) | SurfaceEdge::Tritone { edge, .. } => edge,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AssemblyKind {
    Torus,
    KleinBottle,
}

impl fmt::Display for AssemblyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AssemblyKind::Torus => "torus",
            AssemblyKind::KleinBottle => "Klein bottle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeckAssembly {
    base_shape: TriadShape,
    choices: Vec<Move>,
    surface: Triangulation<SurfaceEdge>,
}

impl PeckAssembly {
    pub fn base_shape(&self) -> &TriadShape {
        &self.base_shape
    }

    pub fn choices(&self) -> &[Move] {
        &self.choices
    }

    pub fn surface(&self) -> &Triangulation<SurfaceEdge> {
        &self.surface
    }

    pub fn flip_count(&self) -> usize {
        self.choices.iter().filter(|&&m| m == Move::F).count()
    }
}

/// Number of junctions, `n1 + n2`, for a valid base shape.
pub fn junction_count(shape: &TriadShape) -> Result<usize> {
    let [n1, n2, _] = shape.intervals();
    if !shape.has_tritone() || n1 >= n2 || n1.gcd(&n2) != 1 {
        return Err(TonnetzError::InvalidAssembly(format!(
            "{shape} is not a connected circle of tetrahedra (need n1 + n2 = n3, n1 < n2, gcd(n1,n2) = 1)"
        )));
    }
    Ok((n1 + n2) as usize)
}

pub fn assemble(shape: &TriadShape, choices: &[Move]) -> Result<PeckAssembly> {
    let junctions = junction_count(shape)?;
    if choices.len() != junctions {
        return Err(TonnetzError::InvalidAssembly(format!(
            "{shape} has {junctions} junctions but {} moves were given",
            choices.len()
        )));
    }
    let complex = build_complex(shape);
    let n = shape.modulus();
    let (n1, half) = (i64::from(shape.n1()), i64::from(shape.n3()));

    let mut sheet_of: BTreeMap<Simplex, Sheet> = BTreeMap::new();
    for (i, &choice) in choices.iter().enumerate() {
        let p = PitchClass::new(i as i64 * n1, n);
        let q = p.shift(half);
        let tritone = Simplex::from_pitches(&[p, q]);
        let third = |face: &Simplex| face.opposite(&tritone).expect("face on tritone");
        let upper_anchor = p.shift(n1).value();

        let around = &complex.edge_to_faces()[&tritone];
        debug_assert_eq!(around.len(), 4);
        for face in around {
            let t = third(face);
            let above = t == p.shift(n1).value() || t == q.shift(n1).value();
            if above {
                continue;
            }
            let partner = match choice {
                Move::S => op_s(face, shape)?,
                Move::F => op_f(face, shape)?,
            };
            let partner_third = third(&partner);
            assert!(
                partner_third == upper_anchor || partner_third == q.shift(n1).value(),
                "{choice} must carry {face} across the junction at {tritone}"
            );
            let sheet = if partner_third == upper_anchor {
                Sheet::Upper
            } else {
                Sheet::Lower
            };
            sheet_of.insert(*face, sheet);
            sheet_of.insert(partner, sheet);
        }
    }

    let triangles = complex
        .faces()
        .iter()
        .map(|face| {
            let [a, b, c] = face.vertices() else {
                unreachable!("faces are 2-simplices")
            };
            let key = |x: u32, y: u32| {
                let edge = Simplex::new(n, &[x.into(), y.into()]).expect("edge");
                if shape.length_of(&edge) == Some(shape.n3()) {
                    SurfaceEdge::Tritone {
                        edge,
                        sheet: sheet_of[face],
                    }
                } else {
                    SurfaceEdge::Plain(edge)
                }
            };
            Triangle {
                vertices: [*a, *b, *c],
                edges: [key(*a, *b), key(*b, *c), key(*c, *a)],
            }
        })
        .collect();

    Ok(PeckAssembly {
        base_shape: *shape,
        choices: choices.to_vec(),
        surface: Triangulation::new(triangles),
    })
}

/// Torus when the surface is orientable, Klein bottle otherwise.
pub fn classify_assembly(assembly: &PeckAssembly) -> AssemblyKind {
    let orientable = assembly
        .surface
        .is_orientable()
        .expect("assemblies have two faces on every edge");
    if orientable {
        AssemblyKind::Torus
    } else {
        AssemblyKind::KleinBottle
    }
}

/// Identifies the two copies of every tritone, recovering the complex.
pub fn collapse(assembly: &PeckAssembly) -> TonnetzComplex {
    let n = assembly.base_shape.modulus();
    let faces = assembly
        .surface
        .triangles()
        .iter()
        .map(|t| Simplex::from_residues(n, &t.vertices));
    TonnetzComplex::from_faces(assembly.base_shape, faces).expect("faces of the base complex")
}

/// All `2^len` move words in lexicographic order (`S < F`).
pub fn all_sequences(len: usize) -> Vec<Vec<Move>> {
    (0..1usize << len)
        .map(|bits| {
            (0..len)
                .map(|i| {
                    if bits >> (len - 1 - i) & 1 == 1 {
                        Move::F
                    } else {
                        Move::S
                    }
                })
                .collect()
        })
        .collect()
}
