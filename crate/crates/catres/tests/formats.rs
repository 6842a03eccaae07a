//! Document round trips and located errors.

use std::fs;
use std::path::{Path, PathBuf};

use catres::format::{
    self, emit_algebra, emit_module, emit_quiver, emit_scalar, normalize, parse_algebra,
    parse_module, quiver_spec, scalar, to_json, AlgebraRef, Any, QuiverDoc,
};
use catres::with_field;
use catres_core::modules::Projectives;
use catres_core::random::{module, sample_rng};
use catres_core::{Field, PrimeField, Rationals};
use proptest::prelude::*;

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn corpus_files() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(corpus())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    v.sort();
    v
}

fn read(p: &Path) -> String {
    fs::read_to_string(p).unwrap()
}

#[test]
fn corpus_files_are_normalized() {
    for p in corpus_files() {
        let text = read(&p);
        if text.contains("catres-complex/1") {
            continue;
        }
        let n = normalize(&p.display().to_string(), &text, &corpus()).unwrap();
        assert_eq!(n, text, "{} is not in normal form", p.display());
    }
}

#[test]
fn emit_of_parse_is_normalize() {
    for p in corpus_files() {
        let text = read(&p);
        let name = p.display().to_string();
        let expected = match normalize(&name, &text, &corpus()) {
            Ok(n) => n,
            Err(_) => continue,
        };
        let emitted = if text.contains("catres-quiver/1") {
            let doc: QuiverDoc = serde_json::from_str(&text).unwrap();
            match doc.field {
                format::FieldDoc::Prime { p } => to_json(&emit_quiver(
                    &quiver_spec(&PrimeField::new(p).unwrap(), &name, &doc).unwrap(),
                )),
                format::FieldDoc::Rational => {
                    to_json(&emit_quiver(&quiver_spec(&Rationals, &name, &doc).unwrap()))
                }
            }
        } else if text.contains("catres-algebra/1") {
            let a = parse_algebra(&name, &text).unwrap();
            with_field!(&a, c => to_json(&emit_algebra(&c.algebra)))
        } else {
            let doc: format::ModuleDoc = serde_json::from_str(&text).unwrap();
            let m = parse_module(&name, &text, &corpus()).unwrap();
            with_field!(&m, c => to_json(&emit_module(&c.module, &doc.algebra)))
        };
        assert_eq!(emitted, expected, "{name}");
    }
}

#[test]
fn complexes_load_and_validate() {
    let c = format::load_complex(&corpus().join("cx_x2_f5.json")).unwrap();
    let Any::Prime(c) = c else { panic!("field") };
    // 0 → Λ --x--> Λ → 0: homology k in both degrees.
    assert_eq!(c.complex.homology_dims(), vec![(0, 1), (1, 1)]);
    let doc = format::emit_complex(&c.complex, &c.algebra.reference);
    assert_eq!(doc.hi, 1);
}

#[test]
fn broken_complex_is_rejected() {
    let dir = std::env::temp_dir().join(format!("catres-formats-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    fs::copy(corpus().join("x2_f5.json"), dir.join("x2_f5.json")).unwrap();
    // The identity is not a differential of a complex with two nonzero consecutive maps,
    // but a single map never violates d² = 0; break the shape instead.
    let bad = read(&corpus().join("cx_x2_f5.json")).replace("\"hi\": 1", "\"hi\": 2");
    fs::write(dir.join("bad.json"), bad).unwrap();
    let e = format::load_complex(&dir.join("bad.json")).unwrap_err();
    assert_eq!(e.pointer(), Some("hi"), "{e}");
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn module_errors_are_located() {
    let text = read(&corpus().join("simple_x2_f5.json")).replace("\"dim\": 1", "\"dim\": 2");
    let e = parse_module("m", &text, &corpus()).unwrap_err();
    assert_eq!(e.pointer(), Some("action[0]"), "{e}");
    let text = read(&corpus().join("simple_x2_f5.json")).replace("x2_f5.json", "missing.json");
    assert!(parse_module("m", &text, &corpus())
        .unwrap_err()
        .to_string()
        .contains("missing.json"));
}

#[test]
fn non_module_action_names_the_invariant() {
    // x acting by the identity violates x·x = 0.
    let mut v: serde_json::Value =
        serde_json::from_str(&read(&corpus().join("simple_x2_f5.json"))).unwrap();
    v["action"][1] = serde_json::json!([[1]]);
    let text = v.to_string();
    let e = parse_module("m", &text, &corpus()).unwrap_err();
    assert!(matches!(e, format::LoadError::Invariant { .. }), "{e}");
}

fn scalar_round_trip<F: Field>(f: &F, s: &format::Scalar) -> Option<format::Scalar> {
    scalar(f, s).map(|x| emit_scalar(f, &x))
}

proptest! {
    #[test]
    fn rational_scalars_normalize(n in -1000i64..1000, d in 1i64..1000) {
        let s = format::Scalar::Text(format!("{n}/{d}"));
        let once = scalar_round_trip(&Rationals, &s).unwrap();
        prop_assert_eq!(scalar_round_trip(&Rationals, &once), Some(once.clone()));
        if n % d == 0 {
            prop_assert_eq!(once, format::Scalar::Int(n / d));
        }
    }

    #[test]
    fn prime_scalars_reduce(n in any::<i32>(), p in prop::sample::select(vec![2u64, 3, 5, 7, 101])) {
        let f = PrimeField::new(p).unwrap();
        let out = scalar_round_trip(&f, &format::Scalar::Int(n.into())).unwrap();
        prop_assert_eq!(out, format::Scalar::Int(i64::from(n).rem_euclid(p as i64)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_modules_round_trip(seed in any::<u64>(), which in 0usize..4) {
        let name = ["x2_f2.json", "x3_f3.json", "gentle_f3.json", "x3_q.json"][which];
        let a = format::load_algebra(&corpus().join(name)).unwrap();
        let reference = AlgebraRef::Path(name.into());
        with_field!(&a, c => {
            let proj = Projectives::new(&c.algebra).unwrap();
            let m = module(&c.algebra, &proj, 9, &mut sample_rng(seed, 70, 0));
            let text = to_json(&emit_module(&m, &reference));
            let back = parse_module("random", &text, &corpus()).unwrap();
            let again = with_field!(&back, b => to_json(&emit_module(&b.module, &reference)));
            prop_assert_eq!(&again, &text);
            prop_assert_eq!(normalize("random", &text, &corpus()).unwrap(), text);
        });
    }
}
