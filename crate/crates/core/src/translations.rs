//! Translation subgroup: elements acting trivially on the quotient `M/H`.

use std::collections::HashSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::graph::DecoratedGraph;
use crate::matrix::{Matrix, RowSpan};
use crate::reflection::{
    c_vectors, element_order, AdaptedBasis, GroupElement, ReflectionError, Representation,
    DEFAULT_ORDER_BOUND,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TranslationError {
    #[error(transparent)]
    Reflection(#[from] ReflectionError),
    #[error("order of {word} exceeds {bound} or is odd")]
    NoHalfPower { word: String, bound: u32 },
    #[error("{0} is not central in the chosen subgroup")]
    NotCentral(String),
    #[error("quotient part of {0} is not scalar")]
    NotScalar(String),
    #[error("commutator {0} does not act trivially on the quotient")]
    NotTranslation(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translation {
    pub element: GroupElement,
    pub a_part: Matrix,
}

#[derive(Debug, Clone)]
pub struct TranslationLattice {
    pub generators: Vec<Matrix>,
    pub z_rank: usize,
}

/// Distinct elements of word length at most `max_len`, in breadth-first order.
/// Each element carries a shortest word.
pub fn enumerate_ball(rep: &Representation, max_len: usize) -> Vec<GroupElement> {
    let n = rep.n();
    let id = rep.identity();
    let mut seen: HashSet<Matrix> = HashSet::from([id.matrix.clone()]);
    let mut all = vec![id.clone()];
    let mut frontier = vec![id];
    for _ in 0..max_len {
        let candidates: Vec<GroupElement> = frontier
            .par_iter()
            .flat_map_iter(|g| {
                let last = g.word.first().copied();
                (0..n).filter(move |&i| Some(i) != last).map(move |i| {
                    let mut word = Vec::with_capacity(g.word.len() + 1);
                    word.push(i);
                    word.extend_from_slice(&g.word);
                    GroupElement { matrix: rep.left_apply(i, &g.matrix), word }
                })
            })
            .collect();
        let mut next = Vec::new();
        for c in candidates {
            if seen.insert(c.matrix.clone()) {
                next.push(c);
            }
        }
        if next.is_empty() {
            break;
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

/// Nonidentity translations in the ball of radius `max_len`.
pub fn bfs_translations(rep: &Representation, basis: &AdaptedBasis, max_len: usize) -> Vec<Translation> {
    translations_in(basis, &enumerate_ball(rep, max_len))
}

/// Nonidentity elements of `ball` whose quotient part is the identity.
pub fn translations_in(basis: &AdaptedBasis, ball: &[GroupElement]) -> Vec<Translation> {
    if basis.n0() == 0 {
        return Vec::new();
    }
    ball.par_iter()
        .filter_map(|g| {
            let b = basis.block(&g.matrix).ok()?;
            (b.p.is_identity() && !b.a.is_zero()).then(|| Translation { element: g.clone(), a_part: b.a })
        })
        .collect()
}

pub fn as_translation(basis: &AdaptedBasis, g: &GroupElement) -> Result<Option<Translation>, ReflectionError> {
    let b = basis.block(&g.matrix)?;
    Ok((b.p.is_identity() && !b.a.is_zero()).then(|| Translation { element: g.clone(), a_part: b.a }))
}

/// `(g - I)^2 = 0` in the adapted basis.
pub fn is_unipotent(basis: &AdaptedBasis, g: &Matrix) -> bool {
    let m = basis.conjugate_in(g);
    let field = m[(0, 0)].field().clone();
    let d = m.sub(&Matrix::identity(&field, m.rows()));
    d.mul(&d).is_zero()
}

/// `t^k ≠ 1` and `A(t^k) = k A(t)` for `1 ≤ k ≤ bound`.
pub fn bounded_torsion_free(basis: &AdaptedBasis, t: &Translation, bound: u32) -> bool {
    let field = t.element.matrix[(0, 0)].field().clone();
    let mut acc = t.element.matrix.clone();
    for k in 1..=bound {
        if acc.is_identity() {
            return false;
        }
        let Ok(b) = basis.block(&acc) else { return false };
        if b.a != t.a_part.scale(&field.from_int(k as i64)) {
            return false;
        }
        acc = acc.mul(&t.element.matrix);
    }
    true
}

/// `z = c^{ord(c)/2}` for the Coxeter element `c` of the generators in `subset`,
/// checked to be nonidentity and central in the subgroup they generate.
pub fn central_element(rep: &Representation, subset: &[usize]) -> Result<GroupElement, TranslationError> {
    let c = rep.evaluate(subset);
    let word = c.word_string();
    let ord = element_order(&c.matrix, DEFAULT_ORDER_BOUND)
        .filter(|o| o % 2 == 0)
        .ok_or(TranslationError::NoHalfPower { word, bound: DEFAULT_ORDER_BOUND })?;
    let z = c.pow(ord / 2);
    if z.is_identity() {
        return Err(TranslationError::NotCentral(z.word_string()));
    }
    for &i in subset {
        let s = rep.generator_matrix(i);
        if z.matrix.mul(s) != s.mul(&z.matrix) {
            return Err(TranslationError::NotCentral(format!("c^{}", ord / 2)));
        }
    }
    Ok(z)
}

/// Order of the Coxeter element of `subset`.
pub fn coxeter_element_order(rep: &Representation, subset: &[usize]) -> Option<u32> {
    element_order(&rep.evaluate(subset).matrix, DEFAULT_ORDER_BOUND)
}

/// Nonidentity commutators `[z, g]` over `sample`; `z` must have scalar quotient part.
pub fn commutator_translations(
    basis: &AdaptedBasis,
    z: &GroupElement,
    sample: &[GroupElement],
) -> Result<Vec<Translation>, TranslationError> {
    let p = basis.block(&z.matrix)?.p;
    if p.rows() > 0 {
        let lam = p[(0, 0)].clone();
        let field = lam.field().clone();
        if p != Matrix::identity(&field, p.rows()).scale(&lam) {
            return Err(TranslationError::NotScalar(z.word_string()));
        }
    }
    let mut out = Vec::new();
    for g in sample {
        let k = z.commutator(g);
        if k.is_identity() {
            continue;
        }
        match as_translation(basis, &k)? {
            Some(t) => out.push(t),
            None => return Err(TranslationError::NotTranslation(k.word_string())),
        }
    }
    Ok(out)
}

/// Rank over the rationals of the `a_part`s after flattening every entry to rational coordinates.
pub fn lattice_rank(a_parts: &[Matrix]) -> TranslationLattice {
    let q = Field::rationals();
    let mut span = RowSpan::new();
    for a in a_parts {
        let v: Vec<FieldElement> = a
            .entries()
            .flat_map(|x| x.rational_coordinates().to_vec())
            .map(|r| q.from_rational(r))
            .collect();
        span.insert(v);
    }
    TranslationLattice { generators: a_parts.to_vec(), z_rank: span.dim() }
}

/// `word^exponent = 1`.
pub fn verify_group_relation(rep: &Representation, word: &[usize], exponent: u32) -> bool {
    rep.evaluate(word).matrix.pow(exponent).is_identity()
}

/// `(s_i s_j)^{m_ij} = 1` with `m_ij` the label, or 2 for non-adjacent pairs; returns offending pairs.
pub fn coxeter_relation_failures(rep: &Representation, g: &DecoratedGraph) -> Vec<(usize, usize, u32)> {
    let mut bad = Vec::new();
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            let m = g.edge(i, j).map_or(2, |e| e.label);
            let st = rep.evaluate(&[i, j]).matrix;
            if element_order(&st, m) != Some(m) {
                bad.push((i, j, m));
            }
        }
    }
    bad
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self { name: name.to_string(), passed, detail }
    }
}

/// Checks of the generator action on the row space of `A` indexed by `j ∈ S0`.
pub fn fixed_quotient_checks(rep: &Representation, basis: &AdaptedBasis, j: usize) -> Vec<CheckResult> {
    let cartan = rep.cartan();
    let field = rep.field().clone();
    let n1 = basis.n1();
    let split = &basis.split;
    let r = split.s0.iter().position(|&x| x == j).expect("j in S0");
    let cv = c_vectors(cartan, split);
    let id = Matrix::identity(&field, n1);

    let mut sample: Vec<Vec<FieldElement>> = id.to_rows();
    sample.extend(split.s1.iter().map(|&i| cv[i].clone()));

    let mut out = Vec::new();
    let mut fail_a = Vec::new();
    let mut fail_b = Vec::new();
    let mut fail_c = Vec::new();
    let mut expect_cp = vec![field.one()];
    // (X + 1)(X - 1)^{n1 - 1}
    let mul_lin = |p: &[FieldElement], root: &FieldElement| {
        let mut q = vec![field.zero(); p.len() + 1];
        for (k, c) in p.iter().enumerate() {
            q[k + 1] = &q[k + 1] + c;
            q[k] = &q[k] - &(c * root);
        }
        q
    };
    expect_cp = mul_lin(&expect_cp, &-field.one());
    for _ in 1..n1 {
        expect_cp = mul_lin(&expect_cp, &field.one());
    }

    for s in 0..rep.n() {
        let blk = basis.block(rep.generator_matrix(s)).expect("generators fix H");
        if !blk.p.mul(&blk.p).is_identity() {
            fail_a.push(format!("s{}", s + 1));
        }
        let t = blk.p.sub(&id);
        for z in &sample {
            let img = Matrix::vec_mul(z, &t);
            let pair = Matrix::from_rows(vec![img, cv[s].clone()]);
            if pair.rank() > 1 {
                fail_b.push(format!("s{} on {:?}", s + 1, z.iter().map(|x| x.to_expr()).collect::<Vec<_>>()));
            }
        }
        if n1 > 0 && blk.p.charpoly(&field) != expect_cp {
            fail_c.push(format!("s{}", s + 1));
        }
    }
    out.push(CheckResult::new("involutive right action on M_j", fail_a.is_empty(), fail_a.join(", ")));
    out.push(CheckResult::new("[s, ζ] proportional to c_s", fail_b.is_empty(), fail_b.join("; ")));
    out.push(CheckResult::new("reflection characteristic polynomial", fail_c.is_empty(), fail_c.join(", ")));

    if split.n0() == 1 {
        let cmat = Matrix::from_rows(split.s1.iter().map(|&i| cv[i].clone()).collect());
        let d = cmat.det(&field);
        let d1 = cartan.principal(&split.s1).det(&field);
        let sign = if n1.is_multiple_of(2) { d1.clone() } else { -&d1 };
        out.push(CheckResult::new(
            "c-vectors of S1 form a basis",
            !d.is_zero() && d == sign,
            format!("det = {}, Δ(G1) = {}", d.to_expr(), d1.to_expr()),
        ));

        let rho = basis.rho.row(r).to_vec();
        let omega = |z: &[FieldElement]| -> FieldElement {
            -(z.iter().zip(&rho).fold(field.zero(), |acc, (a, b)| &acc + &(a * b)))
        };
        let blk = basis.block(rep.generator_matrix(j)).expect("generator fixes H");
        let t = blk.p.sub(&id);
        let mut fail_w = Vec::new();
        for z in &sample {
            let lhs = Matrix::vec_mul(z, &t);
            let w = omega(z);
            let rhs: Vec<FieldElement> = cv[j].iter().map(|x| &w * x).collect();
            if lhs != rhs {
                fail_w.push(format!("{:?}", z.iter().map(|x| x.to_expr()).collect::<Vec<_>>()));
            }
        }
        out.push(CheckResult::new("[s_j, ζ] = ω(ζ) c_j", fail_w.is_empty(), fail_w.join("; ")));

        let mut fail_o = Vec::new();
        for &i in &split.s1 {
            if omega(&cv[i]) != -cartan.entry(i, j) {
                fail_o.push(format!("c{}", i + 1));
            }
        }
        out.push(CheckResult::new("ω(c_i) = -c_ij", fail_o.is_empty(), fail_o.join(", ")));
    }

    let mut fail_k = Vec::new();
    for s in 0..rep.n() {
        let blk = basis.block(rep.generator_matrix(s)).expect("generator fixes H");
        let t = blk.p.sub(&id);
        for &k in &split.s1 {
            let lhs = Matrix::vec_mul(&cv[k], &t);
            let coef = -cartan.entry(k, s);
            let rhs: Vec<FieldElement> = cv[s].iter().map(|x| &coef * x).collect();
            if lhs != rhs {
                fail_k.push(format!("[s{}, c{}]", s + 1, k + 1));
            }
        }
    }
    out.push(CheckResult::new("[s_i, c_k] = -c_ki c_i", fail_k.is_empty(), fail_k.join(", ")));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanMatrix;
    use crate::graph::parse_graph;

    fn c3() -> (DecoratedGraph, Representation, AdaptedBasis) {
        let g = parse_graph("n=4\nedge 1 2 p=4 alpha=2\nedge 2 3 p=3 alpha=1\nedge 3 4 p=4 alpha=2\n").unwrap();
        let c = CartanMatrix::from_graph(&g).unwrap();
        let s = c.choose_split(None).unwrap();
        let b = AdaptedBasis::new(&c, &s).unwrap();
        (g, Representation::new(&c), b)
    }

    #[test]
    fn c3_has_translations() {
        let (g, rep, b) = c3();
        let ts = bfs_translations(&rep, &b, 10);
        assert!(!ts.is_empty());
        for t in &ts {
            assert!(is_unipotent(&b, &t.element.matrix));
            assert!(bounded_torsion_free(&b, t, 16));
        }
        assert!(coxeter_relation_failures(&rep, &g).is_empty());
    }

    #[test]
    fn c3_module_checks() {
        let (_, rep, b) = c3();
        for c in fixed_quotient_checks(&rep, &b, 0) {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn ball_words_are_witnesses() {
        let (_, rep, _) = c3();
        let ball = enumerate_ball(&rep, 5);
        for g in &ball {
            assert_eq!(rep.evaluate(&g.word).matrix, g.matrix);
        }
        assert_eq!(ball[0].word.len(), 0);
        assert_eq!(ball.len(), enumerate_ball(&rep, 5).len());
    }

    #[test]
    fn collinear_lattice() {
        let (_, rep, b) = c3();
        let t = bfs_translations(&rep, &b, 8).into_iter().next().unwrap();
        let t2 = basis_block_a(&b, &t.element.matrix.mul(&t.element.matrix));
        assert_eq!(lattice_rank(&[t.a_part.clone(), t2]).z_rank, 1);
    }

    fn basis_block_a(b: &AdaptedBasis, m: &Matrix) -> Matrix {
        b.block(m).unwrap().a
    }
}
