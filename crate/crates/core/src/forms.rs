//! Invariant symmetric bilinear forms `Φ` with `Sᵀ Φ S = Φ` for every generator.

use crate::families::FormulaFamily;
use crate::field::{Field, FieldElement};
use crate::graph::{DecoratedGraph, Family};
use crate::matrix::Matrix;
use crate::reflection::Representation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormSolution {
    None,
    /// Normalised so that `Φ_11 = 2` when that entry is nonzero.
    Unique(Matrix),
    Ambiguous(Vec<Matrix>),
}

impl FormSolution {
    pub fn unique(&self) -> Option<&Matrix> {
        match self {
            FormSolution::Unique(m) => Some(m),
            _ => None,
        }
    }

    pub fn exists(&self) -> bool {
        !matches!(self, FormSolution::None)
    }

    pub fn dimension(&self) -> usize {
        match self {
            FormSolution::None => 0,
            FormSolution::Unique(_) => 1,
            FormSolution::Ambiguous(b) => b.len(),
        }
    }
}

fn sym_index(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

fn sym_basis(field: &Field, n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(field, n, n);
    m[(i, j)] = field.one();
    m[(j, i)] = field.one();
    m
}

/// Solves the linear system for symmetric invariant forms.
pub fn solve_invariant_form(rep: &Representation) -> FormSolution {
    let n = rep.n();
    let field = rep.field().clone();
    let idx = sym_index(n);
    // column per unknown, rows: upper-triangular entries of Sᵀ E S - E for every generator
    let mut cols: Vec<Vec<FieldElement>> = Vec::with_capacity(idx.len());
    for &(i, j) in &idx {
        let e = sym_basis(&field, n, i, j);
        let mut col = Vec::new();
        for s in 0..n {
            let g = rep.generator_matrix(s);
            let d = g.transpose().mul(&e).mul(g).sub(&e);
            col.extend(idx.iter().map(|&(a, b)| d[(a, b)].clone()));
        }
        cols.push(col);
    }
    let system = Matrix::from_rows(cols).transpose();
    let kernel = system.kernel();
    let to_matrix = |v: &[FieldElement]| {
        let mut m = Matrix::zeros(&field, n, n);
        for (x, &(i, j)) in v.iter().zip(&idx) {
            m[(i, j)] = x.clone();
            m[(j, i)] = x.clone();
        }
        m
    };
    match kernel.len() {
        0 => FormSolution::None,
        1 => {
            let m = to_matrix(&kernel[0]);
            let m = if m[(0, 0)].is_zero() {
                m
            } else {
                let k = field.from_int(2).div(&m[(0, 0)]).expect("nonzero");
                m.scale(&k)
            };
            FormSolution::Unique(m)
        }
        _ => FormSolution::Ambiguous(kernel.iter().map(|v| to_matrix(v)).collect()),
    }
}

/// `gᵀ Φ g = Φ`.
pub fn is_invariant(phi: &Matrix, g: &Matrix) -> bool {
    g.transpose().mul(phi).mul(g) == *phi
}

/// One relation per bold edge `{u, v}`: `l Π_u = m Π_v`, with `Π` the product of
/// `alpha` along the tree path from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitConstraint {
    pub u: usize,
    pub v: usize,
    pub lhs: FieldElement,
    pub rhs: FieldElement,
}

impl CircuitConstraint {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn circuit_constraints(g: &DecoratedGraph) -> Vec<CircuitConstraint> {
    let prod = g.tree_path_products();
    g.bold_edges()
        .filter_map(|e| {
            let (l, m) = e.lm.as_ref()?;
            Some(CircuitConstraint { u: e.i, v: e.j, lhs: l * &prod[e.i], rhs: m * &prod[e.j] })
        })
        .collect()
}

/// Kernel of `Φ`.
pub fn form_radical(phi: &Matrix) -> Vec<Vec<FieldElement>> {
    phi.kernel()
}

/// Closed-form invariant forms of the four-vertex families, valid when the
/// circuit constraints hold. The path5 family has none.
pub fn displayed_form(family: FormulaFamily, field: &Field, p: &[FieldElement]) -> Option<Matrix> {
    let z = field.zero();
    let two = field.from_int(2);
    let neg = |x: &FieldElement| -x;
    let dbl = |x: &FieldElement| &two * x;
    let rows: Vec<Vec<FieldElement>> = match family {
        FormulaFamily::Four(Family::I) => {
            let (a1, a2, a3) = (&p[0], &p[1], &p[2]);
            let a12 = a1 * a2;
            let a123 = &a12 * a3;
            vec![
                vec![two.clone(), neg(a1), z.clone(), z.clone()],
                vec![neg(a1), dbl(a1), neg(&a12), z.clone()],
                vec![z.clone(), neg(&a12), dbl(&a12), neg(&a123)],
                vec![z.clone(), z.clone(), neg(&a123), dbl(&a123)],
            ]
        }
        FormulaFamily::Four(Family::II) => {
            let (a1, a2, a3) = (&p[0], &p[1], &p[2]);
            vec![
                vec![two.clone(), neg(a1), neg(a2), neg(a3)],
                vec![neg(a1), dbl(a1), z.clone(), z.clone()],
                vec![neg(a2), z.clone(), dbl(a2), z.clone()],
                vec![neg(a3), z.clone(), z.clone(), dbl(a3)],
            ]
        }
        FormulaFamily::Four(Family::III) => {
            let (a1, a2, a4, l, m) = (&p[0], &p[1], &p[2], &p[3], &p[4]);
            vec![
                vec![two.clone(), neg(a1), neg(a2), neg(a4)],
                vec![neg(a1), dbl(a1), neg(&(m * a2)), z.clone()],
                vec![neg(a2), neg(&(l * a1)), dbl(a2), z.clone()],
                vec![neg(a4), z.clone(), z.clone(), dbl(a4)],
            ]
        }
        FormulaFamily::Four(Family::IV) => {
            let (a1, a3, a4, l, m) = (&p[0], &p[1], &p[2], &p[3], &p[4]);
            let a34 = a3 * a4;
            vec![
                vec![two.clone(), neg(a1), z.clone(), neg(a4)],
                vec![neg(a1), dbl(a1), neg(&(m * &a34)), z.clone()],
                vec![z.clone(), neg(&(l * a1)), dbl(&a34), neg(&a34)],
                vec![neg(a4), z.clone(), neg(&a34), dbl(a4)],
            ]
        }
        FormulaFamily::Four(Family::V) => {
            let (a1, a2, a3, l1, m1, l2, m2) = (&p[0], &p[1], &p[2], &p[3], &p[4], &p[5], &p[6]);
            vec![
                vec![two.clone(), neg(a1), neg(a2), neg(a3)],
                vec![neg(a1), dbl(a1), neg(&(m1 * a2)), z.clone()],
                vec![neg(a2), neg(&(a1 * l1)), dbl(a2), neg(&(a3 * m2))],
                vec![neg(a3), z.clone(), neg(&(a2 * l2)), dbl(a3)],
            ]
        }
        FormulaFamily::Four(Family::VI) => {
            let (a1, a2, a3) = (&p[0], &p[1], &p[2]);
            let (l4, m4, l5, m5, l6, m6) = (&p[3], &p[4], &p[5], &p[6], &p[7], &p[8]);
            vec![
                vec![two.clone(), neg(a1), neg(a2), neg(a3)],
                vec![neg(a1), dbl(a1), neg(&(m4 * a2)), neg(&(l6 * a3))],
                vec![neg(a2), neg(&(a1 * l4)), dbl(a2), neg(&(a3 * m5))],
                vec![neg(a3), neg(&(m6 * a1)), neg(&(a2 * l5)), dbl(a3)],
            ]
        }
        FormulaFamily::Path5 => return None,
    };
    Some(Matrix::from_rows(rows))
}
