//! Acceptance criteria. Each prints one PASS/FAIL line; any failure makes
//! the process exit nonzero.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use tonnetz::classifier::ClassificationRecord;
use tonnetz::invariants::components;
use tonnetz::peck::{all_sequences, junction_count, parse_moves};
use tonnetz::{
    apply, assemble, boundary_circuits, build_complex, classify_assembly, classify_by_oracle,
    classify_closed_form, connected_components, count_summary, gcd_lemma_value, orbit,
    AssemblyKind, Generator, GroupElement, PitchClass, Simplex, SpaceKind, TriadShape,
};

type Outcome = Result<String, String>;

/// Name, check and optional runtime budget.
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn shapes_up_to(max: u32) -> Vec<TriadShape> {
    (3..=max).flat_map(TriadShape::all_for).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// The Z/12 table: shape, kind, representative trichord.
const TWELVE_TONE_TABLE: [(&str, &str, &str); 12] = [
    ("C(1,1,10)", "cylinder", "{0,1,2}"),
    ("C(1,2,9)", "torus", "{0,1,3}"),
    ("C(1,3,8)", "torus", "{0,1,4}"),
    ("C(1,4,7)", "torus", "{0,1,5}"),
    ("C(1,5,6)", "circle of 6 tetrahedra boundaries", "{0,1,6}"),
    ("C(2,2,8)", "two disjoint cylinders", "{0,2,4}"),
    ("C(2,3,7)", "torus", "{0,2,5}"),
    (
        "C(2,4,6)",
        "two disjoint circles of 3 tetrahedra boundaries",
        "{0,2,6}",
    ),
    ("C(2,5,5)", "cylinder", "{0,2,7}"),
    (
        "C(3,3,6)",
        "three disjoint tetrahedra boundaries",
        "{0,3,6}",
    ),
    ("C(3,4,5)", "torus", "{0,3,7}"),
    ("C(4,4,4)", "four disjoint 2-simplices", "{0,4,8}"),
];

fn twelve_tone_table() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_tonnetz"))
        .args(["enumerate", "--edo", "12"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || "enumerate exited nonzero".into())?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let lines: Vec<&str> = text.lines().collect();
    ensure(lines.len() == 12, || format!("{} rows", lines.len()))?;
    for (line, (label, kind, triad)) in lines.iter().zip(TWELVE_TONE_TABLE) {
        let (head, rest) = line.split_once(": ").ok_or(format!("bad row {line:?}"))?;
        let (got_kind, got_triad) = rest.split_once("  ").ok_or(format!("bad row {line:?}"))?;
        ensure(head == label, || format!("row {line:?}, expected {label}"))?;
        ensure(got_kind.trim_end() == kind, || {
            format!("{label}: {got_kind:?} != {kind:?}")
        })?;
        ensure(got_triad.trim_start().starts_with(triad), || {
            format!("{label}: trichord {got_triad:?} != {triad}")
        })?;
    }
    Ok("12 rows match".into())
}

fn chart_euler(shape: &TriadShape) -> i64 {
    let [n1, n2, n3] = shape.intervals();
    let n = i64::from(shape.modulus());
    if n1 == n2 && n2 == n3 {
        n / 3
    } else if 2 * n3 == n1 + n2 + n3 {
        n / 2
    } else {
        0
    }
}

fn euler_chart() -> Outcome {
    let shapes = shapes_up_to(60);
    for shape in &shapes {
        let c = build_complex(shape);
        // direct recount of V - E + F from the simplex sets
        let v = c.vertices().len() as i64;
        let e = c.edges().len() as i64;
        let f = c.faces().len() as i64;
        ensure(v - e + f == chart_euler(shape), || {
            format!(
                "{shape}: V-E+F = {} but chart says {}",
                v - e + f,
                chart_euler(shape)
            )
        })?;
    }
    Ok(format!("{} shapes", shapes.len()))
}

fn components_match_gcd() -> Outcome {
    let shapes = shapes_up_to(60);
    for shape in &shapes {
        let found = connected_components(&build_complex(shape)).count() as u64;
        let [a, b, c] = shape.intervals().map(u64::from);
        let expected = gcd(gcd(a, b), c);
        ensure(found == expected, || {
            format!("{shape}: {found} components, gcd {expected}")
        })?;
    }
    Ok(format!("{} shapes", shapes.len()))
}

fn classification_agreement() -> Outcome {
    let shapes = shapes_up_to(60);
    for shape in &shapes {
        let table: ClassificationRecord = classify_closed_form(shape);
        let oracle =
            classify_by_oracle(&build_complex(shape)).map_err(|e| format!("{shape}: {e}"))?;
        ensure(table.agrees_with(&oracle), || {
            format!(
                "{shape}: table {} vs oracle {}",
                table.describe(),
                oracle.describe()
            )
        })?;
    }
    Ok(format!("{} shapes", shapes.len()))
}

fn strip_parity() -> Outcome {
    let mut checked = 0;
    for shape in shapes_up_to(60).iter().filter(|s| s.gcd() == 1) {
        let [n1, n2, n3] = shape.intervals().map(u64::from);
        let n = u64::from(shape.modulus());
        let formula = if n1 == n2 && n2 < n3 && !shape.has_tritone() {
            gcd(n, n3)
        } else if n1 < n2 && n2 == n3 {
            gcd(n, n1)
        } else {
            continue;
        };
        let circuits = boundary_circuits(&build_complex(shape))
            .map_err(|e| format!("{shape}: {e}"))?
            .len() as u64;
        let parity = if n % 2 == 0 { 2 } else { 1 };
        ensure(circuits == parity && circuits == formula, || {
            format!("{shape}: {circuits} circuits, parity says {parity}, formula {formula}")
        })?;
        checked += 1;
    }
    Ok(format!("{checked} coprime strips"))
}

fn gcd_lemma() -> Outcome {
    for n in 1..=200u64 {
        for k in 1..=200u64 {
            let direct = gcd(3 * n + k, n + k);
            ensure(gcd_lemma_value(n, k) == direct, || {
                format!(
                    "n={n} k={k}: lemma {} vs gcd {direct}",
                    gcd_lemma_value(n, k)
                )
            })?;
        }
    }
    Ok("40000 pairs".into())
}

fn peck_sweep() -> Outcome {
    let base = TriadShape::new(1, 2, 3).unwrap();
    let mut tally = (0, 0);
    for word in all_sequences(3) {
        let a = assemble(&base, &word).map_err(|e| e.to_string())?;
        let s = a.surface();
        ensure(s.is_closed_surface() && s.euler() == 0, || {
            format!("{word:?} is not a closed χ=0 surface")
        })?;
        match classify_assembly(&a) {
            AssemblyKind::Torus => tally.0 += 1,
            AssemblyKind::KleinBottle => tally.1 += 1,
        }
    }
    ensure(tally == (4, 4), || format!("tally {tally:?}"))?;
    let fss = assemble(&base, &parse_moves("FSS").unwrap()).unwrap();
    ensure(classify_assembly(&fss) == AssemblyKind::KleinBottle, || {
        "FSS is orientable".into()
    })?;

    let mut words = 0;
    for n2 in 2..=7u32 {
        for n1 in 1..n2 {
            if gcd(n1.into(), n2.into()) != 1 || n1 + n2 > 8 {
                continue;
            }
            let shape = TriadShape::new(n1, n2, n1 + n2).unwrap();
            for word in all_sequences(junction_count(&shape).unwrap()) {
                let a = assemble(&shape, &word).map_err(|e| e.to_string())?;
                let even = a.flip_count().is_multiple_of(2);
                ensure(
                    (classify_assembly(&a) == AssemblyKind::Torus) == even,
                    || format!("{shape} {word:?} breaks the parity rule"),
                )?;
                words += 1;
            }
        }
    }
    Ok(format!(
        "4 tori / 4 Klein bottles; {words} words with L <= 8 obey parity"
    ))
}

fn harmonic_strips() -> Outcome {
    for (a, b, c) in [(1, 1, 5), (1, 3, 3), (2, 2, 3)] {
        let shape = TriadShape::new(a, b, c).unwrap();
        let complex = build_complex(&shape);
        let counts = count_summary(&complex);
        let circuits = boundary_circuits(&complex)
            .map_err(|e| e.to_string())?
            .len();
        let oracle = classify_by_oracle(&complex).map_err(|e| e.to_string())?;
        ensure(
            (counts.num_vertices, counts.num_edges, counts.num_faces) == (7, 14, 7)
                && counts.euler == 0
                && circuits == 1
                && oracle.orientable == Some(false)
                && oracle.component_kind == SpaceKind::MoebiusBand,
            || {
                format!(
                    "{shape}: {counts:?}, {circuits} circuits, {:?}",
                    oracle.orientable
                )
            },
        )?;
    }
    Ok("3 strips".into())
}

fn homogeneity() -> Outcome {
    let mut pairs = 0usize;
    for shape in shapes_up_to(24) {
        let complex = build_complex(&shape);
        let n = shape.modulus();
        let group = GroupElement::all(n);
        for v in 0..n {
            let images: BTreeSet<u32> = group
                .iter()
                .map(|g| g.act(PitchClass::new(v.into(), n)).value())
                .collect();
            ensure(images.len() == n as usize, || {
                format!("{shape}: vertex {v} orbit")
            })?;
        }
        for f in complex.faces() {
            let images: BTreeSet<Simplex> = group.iter().map(|g| apply(g, f).unwrap()).collect();
            ensure(&images == complex.faces(), || {
                format!("{shape}: face {f} orbit")
            })?;
            pairs += complex.faces().len();
        }
    }
    let mut witnesses = 0;
    for shape in shapes_up_to(60) {
        if matches!(
            classify_closed_form(&shape).component_kind,
            SpaceKind::Cylinder | SpaceKind::MoebiusBand | SpaceKind::CircleOfTetrahedra(_)
        ) {
            let c = build_complex(&shape);
            let incidences: BTreeSet<usize> = c.edges().iter().map(|e| c.incidence(e)).collect();
            ensure(incidences.len() > 1, || {
                format!("{shape}: no edge inhomogeneity")
            })?;
            witnesses += 1;
        }
    }
    Ok(format!(
        "{pairs} face pairs; {witnesses} inhomogeneity witnesses"
    ))
}

fn orbit_confinement() -> Outcome {
    let flips: BTreeSet<Generator> = Generator::FLIPS.into_iter().collect();
    for shape in shapes_up_to(30) {
        let complex = build_complex(&shape);
        for part in components(&complex) {
            let faces: BTreeSet<Simplex> = part.faces().iter().copied().collect();
            for start in &faces {
                let reached = orbit(&complex, start, &flips).map_err(|e| e.to_string())?;
                ensure(reached.is_subset(&faces), || {
                    format!("{shape}: orbit of {start} leaves its component")
                })?;
            }
        }
    }
    let c = build_complex(&TriadShape::new(2, 4, 6).unwrap());
    let start = Simplex::new(12, &[0, 2, 6]).unwrap();
    let target = Simplex::new(12, &[1, 3, 7]).unwrap();
    let reached = orbit(&c, &start, &flips).map_err(|e| e.to_string())?;
    ensure(!reached.contains(&target), || {
        "{1,3,7} reached from {0,2,6}".into()
    })?;
    Ok("N <= 30; C(2,4,6) orbit of {0,2,6} avoids {1,3,7}".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "Z/12 table reproduction",
            twelve_tone_table,
            Some(Duration::from_secs(1)),
        ),
        (
            "euler chart, N <= 60",
            euler_chart,
            Some(Duration::from_secs(30)),
        ),
        ("components = gcd, N <= 60", components_match_gcd, None),
        (
            "classification agreement, N <= 60",
            classification_agreement,
            None,
        ),
        ("cylinder/Möbius parity, N <= 60", strip_parity, None),
        ("gcd lemma, n,k <= 200", gcd_lemma, None),
        ("peck sweep", peck_sweep, Some(Duration::from_secs(5))),
        ("harmonic strips", harmonic_strips, None),
        ("homogeneity", homogeneity, None),
        ("orbit confinement", orbit_confinement, None),
    ];
    let mut failures = 0;
    for (i, (name, check, budget)) in criteria.into_iter().enumerate() {
        let started = Instant::now();
        let outcome = check();
        let elapsed = started.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!(
                "took {:.2}s, budget {:.0}s",
                elapsed.as_secs_f64(),
                limit.as_secs_f64()
            )),
            (other, _) => other,
        };
        match outcome {
            Ok(detail) => println!(
                "PASS {:>2} {name} ({detail}; {:.2}s)",
                i + 1,
                elapsed.as_secs_f64()
            ),
            Err(reason) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {reason}", i + 1);
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
