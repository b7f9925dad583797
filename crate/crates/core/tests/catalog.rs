use affine_coxeter::catalog::{fixture_graph, fixtures, run_catalog};
use affine_coxeter::{analyze, AnalysisConfig, AnalysisReport};

#[test]
fn every_fixture_matches_expectations() {
    let outcomes = run_catalog().unwrap();
    let mut failures = Vec::new();
    for o in &outcomes {
        for c in &o.checks {
            if !c.passed {
                failures.push(format!("{} / {}: expected {}, got {}", o.name, c.key, c.expected, c.actual));
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
    assert_eq!(outcomes.len(), fixtures().unwrap().len());
}

#[test]
fn every_expectation_has_a_source() {
    for f in fixtures().unwrap() {
        assert!(!f.expect.is_empty(), "{}", f.name);
        for e in f.expect {
            assert!(!e.source.trim().is_empty(), "{} / {}", f.name, e.key);
        }
    }
}

#[test]
fn infinite_family_samples_are_distinct() {
    let names = ["two_circuits_n0_1_a", "two_circuits_n0_1_b", "two_circuits_n0_1_c"];
    let ls: Vec<_> = names
        .iter()
        .map(|n| {
            let g = fixture_graph(n).unwrap();
            let l = g.bold_edges().next().unwrap().lm.clone().unwrap().0;
            l
        })
        .collect();
    assert_ne!(ls[0], ls[1]);
    assert_ne!(ls[1], ls[2]);
    assert_ne!(ls[0], ls[2]);
}

#[test]
fn report_json_roundtrip() {
    let g = fixture_graph("c3tilde").unwrap();
    let mut cfg = AnalysisConfig::for_graph(&g);
    cfg.max_word_len = 6;
    let r = analyze(&g, &cfg).unwrap();
    let back = AnalysisReport::from_json(&r.to_json()).unwrap();
    assert_eq!(r, back);
    assert_eq!(r.schema, 1);
    assert_eq!(r.identification.as_deref(), Some("W(C̃₃)"));
    assert!(!r.irreducible);
    assert!(r.random_word_checks_passed);
    assert!(r.module_checks.iter().all(|c| c.passed));
    assert!(!r.quotient_has_common_fixed_vector);
    assert_eq!(r.form.radical_contains_fixed_space, Some(true));
}

#[test]
fn report_is_deterministic() {
    let g = fixture_graph("h3tilde").unwrap();
    let mut cfg = AnalysisConfig::for_graph(&g);
    cfg.max_word_len = 4;
    cfg.seed = 7;
    let a = analyze(&g, &cfg).unwrap().to_json();
    let b = analyze(&g, &cfg).unwrap().to_json();
    assert_eq!(a, b);
}

#[test]
fn zero_depth_omits_translations() {
    let g = fixture_graph("a4_finite").unwrap();
    let mut cfg = AnalysisConfig::for_graph(&g);
    cfg.max_word_len = 0;
    let r = analyze(&g, &cfg).unwrap();
    assert!(r.translations.is_none());
    assert!(r.irreducible);
    assert!(r.to_text().contains("irreducible representation"));
}
