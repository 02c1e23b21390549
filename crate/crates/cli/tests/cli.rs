use std::path::PathBuf;
use std::process::{Command, Output};

use proptest::prelude::*;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lamcohom"))
}

fn recipe(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../recipes").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn table_rows(text: &str, title: &str) -> Vec<Vec<String>> {
    let mut lines = text.lines().skip_while(|l| *l != format!("# {title}")).skip(2);
    let mut rows = Vec::new();
    for l in lines.by_ref() {
        if l.is_empty() {
            break;
        }
        rows.push(l.split('\t').map(str::to_string).collect());
    }
    rows
}

/// dim H⁰ and H¹ over ℤ₂ of `f ↦ f(· + p) − f` on ℤ/q, by enumerating all cochains.
fn cyclic_cohomology(q: usize, p: usize) -> (usize, usize) {
    let delta = |f: u32| -> u32 { (0..q).map(|t| (((f >> ((t + p) % q)) ^ (f >> t)) & 1) << t).sum() };
    let kernel = (0..1u32 << q).filter(|&f| delta(f) == 0).count();
    let image: std::collections::BTreeSet<u32> = (0..1u32 << q).map(delta).collect();
    let dim = |n: usize| n.trailing_zeros() as usize;
    (dim(kernel), q - dim(image.len()))
}

#[test]
fn kronecker_cohomology_flags_the_constant_class() {
    let r = recipe("kronecker_3_1.json");
    let o = run(&["cohomology", r.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rows = table_rows(&stdout(&o), "cohomology over z2");
    let (h0, h1) = cyclic_cohomology(3, 1);
    assert_eq!(rows[0][..2], ["0".to_string(), h0.to_string()]);
    assert_eq!(rows[1][..2], ["1".to_string(), h1.to_string()]);
    assert_eq!(rows[1][3], "nontrivial");
}

#[test]
fn kronecker_command_matches_parity() {
    let dir = tempfile::tempdir().unwrap();
    for (q, p) in [(3, 1), (4, 1), (5, 2), (6, 5), (7, 3)] {
        let path = dir.path().join("k.json");
        std::fs::write(&path, format!(r#"{{"kind": "kronecker", "q": {q}, "p": {p}}}"#)).unwrap();
        let o = run(&["kronecker", "--json", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        let kind = if q % 2 == 0 { "coboundary" } else { "obstruction" };
        assert_eq!(v["answer"]["kind"], kind);
        let (h0, h1) = cyclic_cohomology(q, p);
        assert_eq!(v["dims_z2"], serde_json::json!([h0, h1]));
    }
}

#[test]
fn product_circle_lambda_betti() {
    let r = recipe("product_circle.json");
    let o = run(&["betti", r.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rows = table_rows(&stdout(&o), "betti numbers");
    for row in rows {
        assert_eq!(row[2], "5/6");
        assert!((row[3].parse::<f64>().unwrap() - 5.0 / 6.0).abs() < 1e-12);
    }
    let o = run(&["betti", "--json", r.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["degrees"][1]["lambda_betti"], "5/6");
}

#[test]
fn corrupted_complex_fails_validation() {
    let r = recipe("corrupted_triangle.json");
    let o = run(&["validate", r.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("simplicial identity d0∘d1 = d0∘d0"), "{err}");
    let ok = run(&["validate", recipe("triangle_two_atoms.json").to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn every_command_accepts_its_recipe() {
    let cases = [
        ("validate", "triangle_two_atoms.json"),
        ("cohomology", "torus_suspension.json"),
        ("betti", "wedge_circle_kronecker.json"),
        ("hodge", "triangle_checks.json"),
        ("check-mv", "triangle_checks.json"),
        ("check-excision", "triangle_checks.json"),
        ("check-pair", "triangle_checks.json"),
        ("homotopy", "product_circle.json"),
        ("subdivide", "torus_suspension.json"),
        ("geometry", "two_boxes.json"),
        ("arcs", "golden_arc.json"),
        ("kronecker", "kronecker_3_1.json"),
    ];
    for (cmd, file) in cases {
        let o = run(&[cmd, recipe(file).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{cmd} {file}: {}", String::from_utf8_lossy(&o.stderr));
        let o = run(&[cmd, "--json", recipe(file).to_str().unwrap()]);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["ok"], true);
        assert_eq!(v["command"], cmd);
    }
}

#[test]
fn seeded_runs_succeed() {
    for cmd in ["validate", "cohomology", "betti", "hodge", "check-mv", "check-excision", "check-pair", "homotopy", "subdivide", "geometry", "arcs", "kronecker"] {
        for seed in ["1", "2"] {
            let o = run(&[cmd, "--seed", seed]);
            assert_eq!(o.status.code(), Some(0), "{cmd} --seed {seed}: {}", String::from_utf8_lossy(&o.stderr));
        }
    }
}

#[test]
fn output_is_deterministic() {
    let r = recipe("triangle_checks.json");
    let args: Vec<Vec<String>> = ["hodge", "check-mv", "subdivide"]
        .iter()
        .flat_map(|c| [vec![c.to_string(), "--json".into(), r.display().to_string()], vec![c.to_string(), r.display().to_string()]])
        .collect();
    for a in &args {
        let a: Vec<&str> = a.iter().map(String::as_str).collect();
        let first = run(&a).stdout;
        let parallel: Vec<Vec<u8>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..4).map(|_| s.spawn(|| run(&a).stdout)).collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        assert!(parallel.iter().all(|p| *p == first), "{a:?}");
    }
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let r = recipe("product_circle.json");
    let o = run(&["betti", "--json", "--out", path.to_str().unwrap(), r.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let direct = run(&["betti", "--json", r.to_str().unwrap()]).stdout;
    assert_eq!(std::fs::read(&path).unwrap(), direct);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    };
    let cases = [
        write("unknown.json", r#"{"kind": "kronecker", "q": 3, "p": 1, "colour": 1}"#),
        write("kind.json", r#"{"kind": "klein-bottle"}"#),
        write("rational.json", r#"{"kind": "product", "base": {"kind": "point"}, "weights": ["1/0"]}"#),
        write("syntax.json", "{\"kind\": \"kronecker\",\n \"q\": }"),
        write("missing.json", r#"{"kind": "explicit-complex", "file": "nowhere.json"}"#),
        write("coprime.json", r#"{"kind": "kronecker", "q": 4, "p": 2}"#),
    ];
    for p in &cases[..5] {
        let o = run(&["cohomology", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{}", p.display());
    }
    assert_eq!(run(&["kronecker", cases[5].to_str().unwrap()]).status.code(), Some(2));
    let o = run(&["cohomology", cases[3].to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2 column"));
    let o = run(&["cohomology", "--coeff", "r", recipe("kronecker_3_1.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["cohomology"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn malformed_recipes_never_crash(cut in 0usize..400, byte in 0u8..128, pos in 0usize..400) {
        let text = std::fs::read_to_string(recipe("triangle_checks.json")).unwrap();
        let mut bytes = text.into_bytes();
        let cut = cut.min(bytes.len());
        bytes.truncate(bytes.len() - cut);
        if !bytes.is_empty() {
            let pos = pos % bytes.len();
            bytes[pos] = byte;
        }
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r.json");
        std::fs::write(&p, &bytes).unwrap();
        let code = run(&["check-pair", p.to_str().unwrap()]).status.code();
        prop_assert!(matches!(code, Some(0 | 1 | 2)), "{:?}", code);
        if cut > 0 {
            prop_assert_eq!(code, Some(2));
        }
    }
}
