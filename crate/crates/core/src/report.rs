//! Full analysis pipeline and its serialisable report.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::{CartanError, CartanMatrix};
use crate::catalog::identify;
use crate::field::{fmt_rational, Field, FieldElement};
use crate::forms::{circuit_constraints, form_radical, solve_invariant_form, FormSolution};
use crate::graph::DecoratedGraph;
use crate::matrix::Matrix;
use crate::reflection::{
    lambda_coefficients, quotient_common_fixed, quotient_order, AdaptedBasis, ReflectionError,
    Representation, DEFAULT_ORDER_BOUND,
};
use crate::translations::{
    bounded_torsion_free, coxeter_relation_failures, enumerate_ball, is_unipotent, lattice_rank,
    fixed_quotient_checks, translations_in, CheckResult,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Reflection(#[from] ReflectionError),
}

#[derive(Debug, Clone)]
pub struct AnalysisConfig {
    /// Breadth-first search radius for translations; 0 skips the search.
    pub max_word_len: usize,
    pub seed: u64,
    /// Random words used for block-form consistency checks.
    pub random_words: usize,
    pub random_word_len: usize,
}

impl AnalysisConfig {
    pub fn for_graph(g: &DecoratedGraph) -> Self {
        Self {
            max_word_len: if g.n() <= 4 { 12 } else { 10 },
            seed: 0,
            random_words: 40,
            random_word_len: 12,
        }
    }
}

/// Exact field element as its rational coordinates in `1, θ, ..., θ^{d-1}`.
pub type Elem = Vec<String>;
pub type Mat = Vec<Vec<Elem>>;

pub fn elem(x: &FieldElement) -> Elem {
    x.rational_coordinates().iter().map(fmt_rational).collect()
}

pub fn mat(m: &Matrix) -> Mat {
    m.to_rows().iter().map(|r| r.iter().map(elem).collect()).collect()
}

pub fn parse_elem(field: &Field, e: &Elem) -> Option<FieldElement> {
    if e.len() != field.degree() {
        return None;
    }
    let coords = e
        .iter()
        .map(|s| s.parse::<BigRational>().ok())
        .collect::<Option<Vec<_>>>()?;
    Some(field.from_coords(coords))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorBlock {
    pub generator: usize,
    pub a: Mat,
    pub p: Mat,
    pub matches_closed_form: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeOrder {
    pub i: usize,
    pub j: usize,
    pub label: u32,
    pub quotient_order: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationSummary {
    pub depth: usize,
    pub ball_size: usize,
    pub count: usize,
    pub lattice_rank: usize,
    pub all_unipotent: bool,
    pub all_torsion_free: bool,
    pub examples: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub u: usize,
    pub v: usize,
    pub lhs: Elem,
    pub rhs: Elem,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormReport {
    pub status: String,
    pub dimension: usize,
    pub matrix: Option<Mat>,
    pub radical_dimension: Option<usize>,
    pub radical_contains_fixed_space: Option<bool>,
    pub constraints: Vec<ConstraintReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    /// Minimal polynomial, leading coefficient first.
    pub field: Vec<String>,
    pub graph: String,
    pub n: usize,
    pub family: Option<String>,
    pub cartan: Mat,
    pub discriminant: Elem,
    pub irreducible: bool,
    pub n0: usize,
    pub n1: usize,
    /// 1-based.
    pub s0: Vec<usize>,
    pub s1: Vec<usize>,
    pub rank_condition: bool,
    pub large_minor_violations: usize,
    pub rho: Mat,
    pub b_vectors: Vec<Vec<Elem>>,
    pub generators: Vec<GeneratorBlock>,
    pub quotient_orders: Vec<EdgeOrder>,
    pub coxeter_relations_hold: bool,
    pub quotient_has_common_fixed_vector: bool,
    pub random_word_checks: usize,
    pub random_word_checks_passed: bool,
    pub lambda: Option<Vec<Elem>>,
    pub module_checks: Vec<CheckResult>,
    pub translations: Option<TranslationSummary>,
    pub form: FormReport,
    pub identification: Option<String>,
}

pub fn analyze(g: &DecoratedGraph, cfg: &AnalysisConfig) -> Result<AnalysisReport, AnalysisError> {
    let field = g.field().clone();
    let cartan = CartanMatrix::from_graph(g)?;
    let split = cartan.choose_split(g.preferred_split())?;
    let basis = AdaptedBasis::new(&cartan, &split)?;
    let rep = Representation::new(&cartan);
    let n = g.n();
    let delta = cartan.discriminant();

    let mut generators = Vec::with_capacity(n);
    let id1 = Matrix::identity(&field, split.n1());
    for s in 0..n {
        let blk = basis.block(rep.generator_matrix(s))?;
        let ok = blk.a == basis.a_matrix(&cartan, s) && blk.p.sub(&id1) == basis.t_matrix(&cartan, s);
        generators.push(GeneratorBlock { generator: s + 1, a: mat(&blk.a), p: mat(&blk.p), matches_closed_form: ok });
    }

    let quotient_orders = g
        .edges()
        .iter()
        .map(|e| {
            let st = rep.evaluate(&[e.i, e.j]).matrix;
            let p = basis.block(&st).expect("group element").p;
            EdgeOrder { i: e.i + 1, j: e.j + 1, label: e.label, quotient_order: quotient_order(&p, DEFAULT_ORDER_BOUND) }
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut random_ok = true;
    for _ in 0..cfg.random_words {
        let len = rng.gen_range(0..=cfg.random_word_len);
        let w1: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
        let len = rng.gen_range(0..=cfg.random_word_len);
        let w2: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
        let (g1, g2) = (rep.evaluate(&w1), rep.evaluate(&w2));
        let g12 = g1.mul(&g2);
        let (b1, b2, b12) = (basis.block(&g1.matrix)?, basis.block(&g2.matrix)?, basis.block(&g12.matrix)?);
        random_ok &= basis.reassemble(&b1) == g1.matrix
            && b12.p == b1.p.mul(&b2.p)
            && b12.a == b2.a.add(&b1.a.mul(&b2.p));
    }

    let lambda = (split.n0() == 1)
        .then(|| lambda_coefficients(&cartan, &split))
        .transpose()?
        .map(|v| v.iter().map(elem).collect());

    let module_checks = split
        .s0
        .iter()
        .flat_map(|&j| {
            fixed_quotient_checks(&rep, &basis, j).into_iter().map(move |mut c| {
                c.name = format!("j={}: {}", j + 1, c.name);
                c
            })
        })
        .collect();

    let translations = (cfg.max_word_len > 0).then(|| {
        let ball = enumerate_ball(&rep, cfg.max_word_len);
        let ts = translations_in(&basis, &ball);
        let a_parts: Vec<Matrix> = ts.iter().map(|t| t.a_part.clone()).collect();
        TranslationSummary {
            depth: cfg.max_word_len,
            ball_size: ball.len(),
            count: ts.len(),
            lattice_rank: if ts.is_empty() { 0 } else { lattice_rank(&a_parts).z_rank },
            all_unipotent: ts.iter().all(|t| is_unipotent(&basis, &t.element.matrix)),
            all_torsion_free: ts.iter().all(|t| bounded_torsion_free(&basis, t, 16)),
            examples: ts.iter().take(3).map(|t| t.element.word_string()).collect(),
        }
    });

    let sol = solve_invariant_form(&rep);
    let constraints = circuit_constraints(g)
        .into_iter()
        .map(|c| ConstraintReport { u: c.u + 1, v: c.v + 1, lhs: elem(&c.lhs), rhs: elem(&c.rhs), holds: c.holds() })
        .collect();
    let fixed = rep.fixed_space();
    let form = match &sol {
        FormSolution::None => FormReport {
            status: "none".into(),
            dimension: 0,
            matrix: None,
            radical_dimension: None,
            radical_contains_fixed_space: None,
            constraints,
        },
        FormSolution::Unique(phi) => FormReport {
            status: "unique".into(),
            dimension: 1,
            matrix: Some(mat(phi)),
            radical_dimension: Some(form_radical(phi).len()),
            radical_contains_fixed_space: Some(
                fixed.iter().all(|b| phi.mul_vec(b).iter().all(FieldElement::is_zero)),
            ),
            constraints,
        },
        FormSolution::Ambiguous(forms) => FormReport {
            status: "ambiguous".into(),
            dimension: forms.len(),
            matrix: None,
            radical_dimension: None,
            radical_contains_fixed_space: None,
            constraints,
        },
    };

    Ok(AnalysisReport {
        schema: SCHEMA_VERSION,
        field: field.minpoly().descending().iter().map(BigInt::to_string).collect(),
        graph: g.serialize(),
        n,
        family: g.classify_family().map(|f| f.to_string()),
        cartan: mat(cartan.matrix()),
        irreducible: !delta.is_zero(),
        discriminant: elem(&delta),
        n0: split.n0(),
        n1: split.n1(),
        s0: split.s0.iter().map(|v| v + 1).collect(),
        s1: split.s1.iter().map(|v| v + 1).collect(),
        rank_condition: cartan.rank_condition(&split),
        large_minor_violations: cartan.nonvanishing_large_minors(split.n1()).len(),
        rho: mat(&basis.rho),
        b_vectors: basis.b_vectors.iter().map(|b| b.iter().map(elem).collect()).collect(),
        generators,
        quotient_orders,
        coxeter_relations_hold: coxeter_relation_failures(&rep, g).is_empty(),
        quotient_has_common_fixed_vector: !quotient_common_fixed(&rep, &basis).is_empty(),
        random_word_checks: cfg.random_words,
        random_word_checks_passed: random_ok,
        lambda,
        module_checks,
        translations,
        form,
        identification: identify(g),
    })
}

fn show(field: &Field, e: &Elem) -> String {
    parse_elem(field, e).map_or_else(|| format!("{e:?}"), |x| x.to_expr())
}

fn show_vec(field: &Field, v: &[Elem]) -> String {
    let parts: Vec<String> = v.iter().map(|e| show(field, e)).collect();
    format!("({})", parts.join(", "))
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    fn field_ctx(&self) -> Field {
        let coeffs: Vec<BigInt> = self.field.iter().map(|c| c.parse().expect("integer")).collect();
        let mp = crate::field::MinimalPolynomial::from_descending(coeffs).expect("valid");
        Field::new(mp).expect("valid field")
    }

    pub fn to_text(&self) -> String {
        let k = self.field_ctx();
        let mut o = String::new();
        let _ = writeln!(o, "field: {k}");
        let _ = writeln!(o, "vertices: {}", self.n);
        if let Some(f) = &self.family {
            let _ = writeln!(o, "family: {f}");
        }
        let _ = writeln!(o, "Cartan matrix:");
        for row in &self.cartan {
            let _ = writeln!(o, "  {}", show_vec(&k, row));
        }
        let _ = writeln!(o, "discriminant: {}", show(&k, &self.discriminant));
        if self.irreducible {
            let _ = writeln!(o, "irreducible representation (nonzero discriminant)");
        } else {
            let _ = writeln!(o, "reducible representation: fixed space of dimension {}", self.n0);
        }
        let _ = writeln!(o, "n0 = {}, n1 = {}, S0 = {:?}, S1 = {:?}", self.n0, self.n1, self.s0, self.s1);
        let _ = writeln!(o, "rank condition on the split: {}", self.rank_condition);
        if self.large_minor_violations > 0 {
            let _ = writeln!(o, "nonvanishing principal minors above n1: {}", self.large_minor_violations);
        }
        for (b, j) in self.b_vectors.iter().zip(&self.s0) {
            let _ = writeln!(o, "b{j} = {}", show_vec(&k, b));
        }
        if let Some(l) = &self.lambda {
            let _ = writeln!(o, "lambda = {}", show_vec(&k, l));
        }
        let closed = self.generators.iter().all(|g| g.matches_closed_form);
        let _ = writeln!(o, "generator blocks match closed forms: {closed}");
        for e in &self.quotient_orders {
            let ord = e.quotient_order.map_or("> bound".to_string(), |x| x.to_string());
            let _ = writeln!(o, "  order of P(s{} s{}) = {ord} (label {})", e.i, e.j, e.label);
        }
        let _ = writeln!(o, "Coxeter relations hold: {}", self.coxeter_relations_hold);
        let _ = writeln!(o, "quotient action has a common fixed vector: {}", self.quotient_has_common_fixed_vector);
        let _ = writeln!(
            o,
            "random word block checks ({}): {}",
            self.random_word_checks,
            if self.random_word_checks_passed { "pass" } else { "FAIL" }
        );
        for c in &self.module_checks {
            let _ = writeln!(o, "  [{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name);
        }
        if let Some(t) = &self.translations {
            let _ = writeln!(o, "translations (word length <= {}, ball size {}):", t.depth, t.ball_size);
            let _ = writeln!(o, "  found {}, lattice rank {}", t.count, t.lattice_rank);
            let _ = writeln!(o, "  unipotent: {}, torsion-free (bounded): {}", t.all_unipotent, t.all_torsion_free);
            for w in &t.examples {
                let _ = writeln!(o, "  e.g. {w}");
            }
        }
        let _ = writeln!(o, "invariant form: {}", self.form.status);
        if let Some(m) = &self.form.matrix {
            for row in m {
                let _ = writeln!(o, "  {}", show_vec(&k, row));
            }
        }
        for c in &self.form.constraints {
            let _ = writeln!(
                o,
                "  circuit {}-{}: {} = {} ({})",
                c.u,
                c.v,
                show(&k, &c.lhs),
                show(&k, &c.rhs),
                if c.holds { "holds" } else { "fails" }
            );
        }
        if let Some(id) = &self.identification {
            let _ = writeln!(o, "identification: {id}");
        }
        o
    }
}
