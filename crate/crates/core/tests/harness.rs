use std::path::Path;

use lpframes::addiag::boundedness_probe;
use lpframes::harness::{self, Context, Status, SuiteConfig, SUITES};
use lpframes::linalg::Vector;
use lpframes::molecules::{gram, gram_certificate};
use lpframes::seqspace::{Family, Flavor};
use lpframes::space::{HierarchyMode, ModelSpec};
use rand::Rng;

fn configs() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

#[test]
fn bundled_configs_parse() {
    let mut seen = 0;
    for entry in std::fs::read_dir(configs()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "toml") {
            SuiteConfig::load(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            seen += 1;
        }
    }
    assert!(seen >= 3);
    let spelled = SuiteConfig::load(&configs().join("default.toml")).unwrap();
    let implicit = SuiteConfig::default();
    assert_eq!(spelled.model, implicit.model);
    assert_eq!(spelled.grid.s, implicit.grid.s);
    assert_eq!(spelled.refine, implicit.refine);
}

#[test]
fn anchors_name_library_modules() {
    let modules = ["space", "calculus", "frames", "seqspace", "addiag", "molecules", "multiplier"];
    for s in SUITES {
        let (module, op) = s.anchor.split_once("::").unwrap_or_else(|| panic!("{}: {}", s.name, s.anchor));
        assert!(modules.contains(&module), "{}", s.anchor);
        assert!(!op.is_empty() && op.chars().all(|c| c.is_alphanumeric() || c == '_' || c == ':'), "{}", s.anchor);
    }
}

#[test]
fn selection_keeps_catalogue_order() {
    let cfg = SuiteConfig {
        model: ModelSpec::cycle(8),
        suites: Some(vec!["lemma9.2".into(), "doubling".into()]),
        ..SuiteConfig::default()
    };
    let r = harness::run(cfg);
    let names: Vec<&str> = r.records.iter().map(|r| r.name.as_str()).collect();
    assert_eq!(names, ["doubling", "lemma9.2"]);
    assert_eq!(r.records[0].status, Status::Recorded);
    assert_eq!(r.records[1].status, Status::Pass);
}

#[test]
fn failed_dependency_skips_downstream_suites() {
    let cfg = SuiteConfig::from_toml(
        r#"
        refine = false
        suites = ["lemma4.1-sampling", "thm4.2-reconstruction", "lemma7.2-molecules", "lemma7.3-gram"]
        [model]
        kind = "cycle"
        n = 16
        [tolerances]
        reconstruction = 1e-300
        "#,
    )
    .unwrap();
    let r = harness::run(cfg);
    let status = |n: &str| r.record(n).unwrap().status;
    assert_eq!(status("lemma4.1-sampling"), Status::Pass);
    assert_eq!(status("thm4.2-reconstruction"), Status::Fail);
    assert_eq!(status("lemma7.2-molecules"), Status::Skipped);
    assert_eq!(status("lemma7.3-gram"), Status::Skipped);
    assert!(r.record("lemma7.3-gram").unwrap().note.contains("lemma7.2-molecules"));
    assert!(!r.passed());
}

#[test]
fn compact_suites_skip_in_inhomogeneous_mode() {
    let cfg = SuiteConfig {
        model: ModelSpec::cycle(16),
        mode: HierarchyMode::Inhomogeneous,
        suites: Some(vec!["prop6.6-theta".into()]),
        ..SuiteConfig::default()
    };
    let r = harness::run(cfg);
    assert_eq!(r.records[0].status, Status::Skipped);
    assert!(r.passed());
}

#[test]
fn manifest_reports_spectrum_and_frames() {
    let cfg = SuiteConfig {
        model: ModelSpec::cycle(16),
        suites: Some(vec!["lemma4.1-sampling".into()]),
        ..SuiteConfig::default()
    };
    let r = harness::run(cfg);
    let m = &r.manifest;
    assert_eq!(m.get_num("points"), Some(16.0));
    let (lo, hi) = (m.get_num("sqrt_lambda_min").unwrap(), m.get_num("sqrt_lambda_max").unwrap());
    // cycle Laplacian: √λ_2 = 2 sin(π/16), √λ_max = 2
    assert!((lo - 2.0 * (std::f64::consts::PI / 16.0).sin()).abs() < 1e-12);
    assert!((hi - 2.0).abs() < 1e-12);
    assert!(m.get_num("max_epsilon").unwrap() < 0.5);
    assert!(m.get_num("frame_gamma").unwrap() <= 0.5);
}

#[test]
fn gram_certificate_implies_bounded_probe() {
    let mut ctx = Context::new(SuiteConfig::default());
    let fx = ctx.fixture_for(&ModelSpec::cycle(32)).unwrap();
    let fs = fx.frames(&ctx.cfg).unwrap();
    let p = fx.params(0.0, 2.0, 2.0, Flavor::Classical, Family::TriebelLizorkin).unwrap();
    let a = gram(&fs.primal.elements, &fs.dual.elements, &fx.space.mu).unwrap();
    let cert = gram_certificate(&a, &fs.geometry, &p, &[0.1, 0.3, 0.5, 1.0], 100.0).unwrap();
    assert!(cert.pass());
    let (delta, _) = cert.best.unwrap();
    let mut r = lpframes::linalg::rng(5);
    let battery: Vec<Vector> = (0..30).map(|_| Vector::from_fn(fs.h.len(), |_, _| r.gen_range(-1.0..1.0))).collect();
    let probe = boundedness_probe(&a, &fs.geometry, &fx.space, &fs.h, &p, delta, &battery).unwrap();
    assert_eq!(probe.entries.len(), 4);
    assert!(probe.max_ratio().is_finite() && probe.max_ratio() > 0.0);
}
