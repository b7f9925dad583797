//! Built-in fixtures with expected values, and pattern-based identification of named cases.

use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use crate::cartan::CartanMatrix;
use crate::field::{Field, FieldElement};
use crate::forms::{circuit_constraints, solve_invariant_form, FormSolution};
use crate::graph::{parse_expr, parse_graph, DecoratedGraph, GraphError};
use crate::reflection::{lambda_coefficients, AdaptedBasis, Representation};
use crate::translations::{bfs_translations, verify_group_relation};

macro_rules! fixtures {
    ($($name:literal),* $(,)?) => {
        /// `(file name, contents)` of every built-in graph.
        pub const FIXTURE_FILES: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../fixtures/", $name)))),*
        ];
    };
}

fixtures!(
    "a4_finite.graph",
    "b3tilde.graph",
    "c2tilde.graph",
    "c3tilde.graph",
    "c4tilde.graph",
    "h3tilde.graph",
    "h4_ext_3553.graph",
    "h4_ext_5335.graph",
    "square_n0_2.graph",
    "triangle_pendant.graph",
    "two_circuits_n0_1_a.graph",
    "two_circuits_n0_1_b.graph",
    "two_circuits_n0_1_c.graph",
    "two_circuits_n0_2.graph",
);

pub const CATALOG_TOML: &str = include_str!("../fixtures/catalog.toml");

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog manifest: {0}")]
    Manifest(#[from] toml::de::Error),
    #[error("fixture `{0}` not found")]
    MissingFixture(String),
    #[error("fixture `{name}`: {source}")]
    Graph { name: String, source: GraphError },
    #[error("fixture `{name}`: unknown expectation key `{key}`")]
    UnknownKey { name: String, key: String },
}

#[derive(Debug, Clone, Deserialize)]
pub struct Expectation {
    pub key: String,
    pub value: String,
    pub source: String,
    pub depth: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub file: String,
    pub expect: Vec<Expectation>,
}

#[derive(Debug, Deserialize)]
struct Manifest {
    fixture: Vec<Fixture>,
}

pub fn fixtures() -> Result<Vec<Fixture>, CatalogError> {
    let m: Manifest = toml::from_str(CATALOG_TOML)?;
    for f in &m.fixture {
        if f.expect.iter().any(|e| e.source.trim().is_empty()) {
            return Err(CatalogError::UnknownKey { name: f.name.clone(), key: "<missing source>".into() });
        }
    }
    Ok(m.fixture)
}

pub fn fixture_text(file: &str) -> Option<&'static str> {
    FIXTURE_FILES.iter().find(|(n, _)| *n == file).map(|(_, t)| *t)
}

/// Parses a built-in graph by fixture name or file name.
pub fn fixture_graph(name: &str) -> Result<DecoratedGraph, CatalogError> {
    let file = if name.ends_with(".graph") { name.to_string() } else { format!("{name}.graph") };
    let text = fixture_text(&file).ok_or_else(|| CatalogError::MissingFixture(name.to_string()))?;
    parse_graph(text).map_err(|source| CatalogError::Graph { name: name.to_string(), source })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub key: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureOutcome {
    pub name: String,
    pub checks: Vec<CheckOutcome>,
}

impl FixtureOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs every fixture in parallel.
pub fn run_catalog() -> Result<Vec<FixtureOutcome>, CatalogError> {
    fixtures()?.par_iter().map(run_fixture).collect()
}

fn fmt_vec(v: &[FieldElement]) -> String {
    v.iter().map(FieldElement::to_expr).collect::<Vec<_>>().join(",")
}

fn parse_vec(field: &Field, s: &str) -> Result<Vec<FieldElement>, String> {
    s.split(',').map(|t| parse_expr(field, t.trim())).collect()
}

pub fn run_fixture(f: &Fixture) -> Result<FixtureOutcome, CatalogError> {
    let g = fixture_graph(&f.file)?;
    let field = g.field().clone();
    let cartan = CartanMatrix::from_graph(&g).map_err(|e| CatalogError::Graph {
        name: f.name.clone(),
        source: match e {
            crate::cartan::CartanError::Graph(g) => g,
            other => GraphError::InvalidSplit(other.to_string()),
        },
    })?;
    let split = cartan.choose_split(g.preferred_split());
    let rep = Representation::new(&cartan);
    let mut checks = Vec::new();
    for e in &f.expect {
        let (actual, passed) = match e.key.as_str() {
            "discriminant" => {
                let d = cartan.discriminant();
                let exp = parse_expr(&field, &e.value);
                (d.to_expr(), exp.is_ok_and(|x| x == d))
            }
            "n0" => {
                let n0 = cartan.n() - cartan.rank();
                (n0.to_string(), e.value.trim() == n0.to_string())
            }
            "s1" => match &split {
                Ok(s) => {
                    let v: Vec<String> = s.s1.iter().map(|x| (x + 1).to_string()).collect();
                    let a = v.join(" ");
                    let ok = a == e.value.split_whitespace().collect::<Vec<_>>().join(" ");
                    (a, ok)
                }
                Err(err) => (err.to_string(), false),
            },
            "b" => match split.as_ref().ok().and_then(|s| AdaptedBasis::new(&cartan, s).ok()) {
                Some(basis) => {
                    let a: Vec<String> = basis.b_vectors.iter().map(|b| fmt_vec(b)).collect();
                    let exp: Result<Vec<_>, _> = e.value.split(';').map(|v| parse_vec(&field, v)).collect();
                    (a.join(";"), exp.is_ok_and(|x| x == basis.b_vectors))
                }
                None => ("no adapted basis".into(), false),
            },
            "lambda" => match split.as_ref().ok().map(|s| lambda_coefficients(&cartan, s)) {
                Some(Ok(l)) => (fmt_vec(&l), parse_vec(&field, &e.value).is_ok_and(|x| x == l)),
                Some(Err(err)) => (err.to_string(), false),
                None => ("no split".into(), false),
            },
            "identification" => {
                let id = identify(&g).unwrap_or_else(|| "none".into());
                let ok = id == e.value;
                (id, ok)
            }
            "form" => {
                let s = match solve_invariant_form(&rep) {
                    FormSolution::None => "none",
                    FormSolution::Unique(_) => "unique",
                    FormSolution::Ambiguous(_) => "ambiguous",
                };
                (s.to_string(), s == e.value)
            }
            "constraints" => {
                let cs = circuit_constraints(&g);
                let s = if cs.is_empty() {
                    "none"
                } else if cs.iter().all(|c| c.holds()) {
                    "hold"
                } else {
                    "fail"
                };
                (s.to_string(), s == e.value)
            }
            "translations" => {
                let depth = e.depth.unwrap_or(10);
                let count = match split.as_ref().ok().and_then(|s| AdaptedBasis::new(&cartan, s).ok()) {
                    Some(basis) => bfs_translations(&rep, &basis, depth).len(),
                    None => 0,
                };
                let s = if count > 0 { "present" } else { "absent" };
                (format!("{s} ({count} at depth {depth})"), s == e.value)
            }
            "minors_vanish" => {
                let k: usize = e.value.trim().parse().unwrap_or(0);
                let bad = cartan.principal_minors(k).iter().filter(|(_, d)| !d.is_zero()).count();
                (format!("{bad} nonzero"), k > 0 && bad == 0)
            }
            "rank_condition" => {
                let ok = split.as_ref().is_ok_and(|s| cartan.rank_condition(s));
                (ok.to_string(), ok.to_string() == e.value)
            }
            "relation" => {
                let (word, exp) = parse_relation(&e.value).unwrap_or_default();
                let ok = !word.is_empty() && word.iter().all(|&i| i < g.n()) && verify_group_relation(&rep, &word, exp);
                ((if ok { "identity" } else { "not identity" }).to_string(), ok)
            }
            other => {
                return Err(CatalogError::UnknownKey { name: f.name.clone(), key: other.to_string() });
            }
        };
        checks.push(CheckOutcome {
            key: e.key.clone(),
            expected: e.value.clone(),
            actual,
            passed,
            source: e.source.clone(),
        });
    }
    Ok(FixtureOutcome { name: f.name.clone(), checks })
}

/// `"2 3 4 3^3"` → `([1, 2, 3, 2], 3)`.
pub fn parse_relation(s: &str) -> Option<(Vec<usize>, u32)> {
    let (w, e) = s.rsplit_once('^')?;
    let exp = e.trim().parse().ok()?;
    let word = w
        .split_whitespace()
        .map(|t| t.parse::<usize>().ok().filter(|&v| v > 0).map(|v| v - 1))
        .collect::<Option<Vec<_>>>()?;
    Some((word, exp))
}

#[derive(Clone, Copy)]
enum Shape {
    Path,
    Star,
}

struct Pattern {
    tag: &'static str,
    shape: Shape,
    /// `(label, alpha)` along the path, or around the star centre.
    edges: &'static [(u32, &'static str)],
}

const PATTERNS: &[Pattern] = &[
    Pattern { tag: "W(C̃₂)", shape: Shape::Path, edges: &[(4, "2"), (4, "2")] },
    Pattern { tag: "W(C̃₃)", shape: Shape::Path, edges: &[(4, "2"), (3, "1"), (4, "2")] },
    Pattern { tag: "W(B̃₃)", shape: Shape::Star, edges: &[(3, "1"), (3, "1"), (4, "2")] },
    Pattern { tag: "H̃₃", shape: Shape::Star, edges: &[(5, "theta"), (5, "3-theta"), (3, "1")] },
    Pattern { tag: "W(C̃₄)", shape: Shape::Path, edges: &[(4, "2"), (3, "1"), (3, "1"), (4, "2")] },
    Pattern {
        tag: "H₄ extension (3,5,5,3)",
        shape: Shape::Path,
        edges: &[(3, "1"), (5, "theta"), (5, "3-theta"), (3, "1")],
    },
    Pattern {
        tag: "H₄ extension (5,3,3,5)",
        shape: Shape::Path,
        edges: &[(5, "theta"), (3, "1"), (3, "1"), (5, "3-theta")],
    },
];

fn path_sequence(g: &DecoratedGraph) -> Option<Vec<(u32, FieldElement)>> {
    if !g.is_tree() || g.n() < 2 || (0..g.n()).any(|v| g.degree(v) > 2) {
        return None;
    }
    let start = (0..g.n()).find(|&v| g.degree(v) == 1)?;
    let mut seq = Vec::new();
    let (mut prev, mut cur) = (usize::MAX, start);
    loop {
        let Some(e) = g.edges().iter().find(|e| e.touches(cur) && e.other(cur) != prev) else {
            break;
        };
        seq.push((e.label, e.alpha.clone()));
        prev = cur;
        cur = e.other(cur);
    }
    Some(seq)
}

fn star_edges(g: &DecoratedGraph) -> Option<Vec<(u32, FieldElement)>> {
    if !g.is_tree() || g.n() != 4 {
        return None;
    }
    let centre = (0..4).find(|&v| g.degree(v) == 3)?;
    Some(g.edges().iter().filter(|e| e.touches(centre)).map(|e| (e.label, e.alpha.clone())).collect())
}

/// Tag of the named case matching the graph's shape, labels and alpha values.
pub fn identify(g: &DecoratedGraph) -> Option<String> {
    let field = g.field();
    let golden = field.minpoly() == Field::golden().minpoly();
    for p in PATTERNS {
        let needs_theta = p.edges.iter().any(|(_, a)| a.contains("theta"));
        if needs_theta && !golden {
            continue;
        }
        let Ok(pat): Result<Vec<(u32, FieldElement)>, String> =
            p.edges.iter().map(|(l, a)| parse_expr(field, a).map(|x| (*l, x))).collect()
        else {
            continue;
        };
        let hit = match p.shape {
            Shape::Path => path_sequence(g).is_some_and(|seq| {
                let mut rev = seq.clone();
                rev.reverse();
                seq == pat || rev == pat
            }),
            Shape::Star => star_edges(g).is_some_and(|edges| {
                let key = |v: &Vec<(u32, FieldElement)>| {
                    let mut k: Vec<(u32, String)> = v.iter().map(|(l, a)| (*l, a.to_expr())).collect();
                    k.sort();
                    k
                };
                key(&edges) == key(&pat)
            }),
        };
        if hit {
            return Some(p.tag.to_string());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_file_parses_and_is_listed() {
        let fx = fixtures().unwrap();
        for (file, _) in FIXTURE_FILES {
            fixture_graph(file).unwrap();
            assert!(fx.iter().any(|f| &f.file == file), "{file} not in manifest");
        }
    }

    #[test]
    fn identification_is_orientation_free() {
        let g = parse_graph("n=4\nedge 4 3 p=4 alpha=2\nedge 3 2 p=3 alpha=1\nedge 2 1 p=4 alpha=2\nroot 2\n").unwrap();
        assert_eq!(identify(&g).as_deref(), Some("W(C̃₃)"));
    }

    #[test]
    fn relation_syntax() {
        assert_eq!(parse_relation("2 3 4 3^3"), Some((vec![1, 2, 3, 2], 3)));
        assert_eq!(parse_relation("0^2"), None);
        assert_eq!(parse_relation("1 2"), None);
    }
}
