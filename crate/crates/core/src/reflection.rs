//! The reflection representation: generator matrices, fixed space, adapted basis
//! and the block decomposition `[[I, A(g)], [0, P(g)]]`.
//!
//! Matrices act on column coordinates in the basis `a_1..a_n`, so the generator
//! `s_i` sends `a_k` to `a_k - c_ik a_i`.

use thiserror::Error;

use crate::cartan::{CartanError, CartanMatrix, SubsystemSplit};
use crate::field::{Field, FieldElement};
use crate::matrix::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReflectionError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error("principal block on S1 is singular")]
    SingularBlock,
    #[error("b-vector for generator {0} is not fixed by every generator")]
    NotFixed(usize),
    #[error("element does not act trivially on the fixed space")]
    NotBlockTriangular,
    #[error("operation needs a one-dimensional fixed space, found {0}")]
    NeedsSingleFixed(usize),
}

/// A group element with one word that produces it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub matrix: Matrix,
    pub word: Vec<usize>,
}

impl GroupElement {
    pub fn identity(field: &Field, n: usize) -> Self {
        Self { matrix: Matrix::identity(field, n), word: Vec::new() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Self { matrix: self.matrix.mul(&other.matrix), word }
    }

    /// Inverse; the word is reversed since generators are involutions.
    pub fn inverse(&self) -> Self {
        let matrix = self.matrix.inverse().expect("group elements are invertible");
        let word = self.word.iter().rev().copied().collect();
        Self { matrix, word }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut word = Vec::with_capacity(self.word.len() * e as usize);
        for _ in 0..e {
            word.extend_from_slice(&self.word);
        }
        Self { matrix: self.matrix.pow(e), word }
    }

    /// `self · other · self⁻¹`.
    pub fn conjugate(&self, other: &Self) -> Self {
        self.mul(other).mul(&self.inverse())
    }

    /// `[self, other] = self · other · self⁻¹ · other⁻¹`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).mul(&self.inverse()).mul(&other.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            return "1".into();
        }
        self.word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join("·")
    }
}

/// Generator matrices built from a Cartan matrix.
#[derive(Debug, Clone)]
pub struct Representation {
    cartan: CartanMatrix,
    generators: Vec<Matrix>,
}

impl Representation {
    pub fn new(cartan: &CartanMatrix) -> Self {
        let n = cartan.n();
        let field = cartan.field();
        let generators = (0..n)
            .map(|i| {
                let mut m = Matrix::identity(field, n);
                for k in 0..n {
                    m[(i, k)] = &m[(i, k)] - cartan.entry(i, k);
                }
                m
            })
            .collect();
        Self { cartan: cartan.clone(), generators }
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn field(&self) -> &Field {
        self.cartan.field()
    }

    pub fn n(&self) -> usize {
        self.cartan.n()
    }

    pub fn generator_matrix(&self, i: usize) -> &Matrix {
        &self.generators[i]
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        GroupElement { matrix: self.generators[i].clone(), word: vec![i] }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.field(), self.n())
    }

    /// Product `s_{w0} s_{w1} ...` of the generators in `word`.
    pub fn evaluate(&self, word: &[usize]) -> GroupElement {
        let mut m = Matrix::identity(self.field(), self.n());
        for &i in word.iter().rev() {
            m = self.left_apply(i, &m);
        }
        GroupElement { matrix: m, word: word.to_vec() }
    }

    /// `S_i · m`, touching only row `i`.
    pub fn left_apply(&self, i: usize, m: &Matrix) -> Matrix {
        let n = self.n();
        let mut out = m.clone();
        for col in 0..m.cols() {
            let mut acc = m[(i, col)].clone();
            for k in 0..n {
                let c = self.cartan.entry(i, k);
                if !c.is_zero() && !m[(k, col)].is_zero() {
                    acc -= &(c * &m[(k, col)]);
                }
            }
            out[(i, col)] = acc;
        }
        out
    }

    /// Basis of the fixed space `H`, the kernel of the Cartan matrix.
    pub fn fixed_space(&self) -> Vec<Vec<FieldElement>> {
        self.cartan.matrix().kernel()
    }
}

/// Adapted basis `(b_j ; a_i)` with `j ∈ S0`, `i ∈ S1`.
#[derive(Debug, Clone)]
pub struct AdaptedBasis {
    pub split: SubsystemSplit,
    /// Row `r` holds `ρ_j^k` for the `r`-th element `j` of `S0`, columns indexed by `S1`.
    pub rho: Matrix,
    /// Coordinates of each `b_j` in the basis `a`.
    pub b_vectors: Vec<Vec<FieldElement>>,
    /// Columns are the adapted basis vectors in `a`-coordinates.
    pub from_adapted: Matrix,
    pub to_adapted: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockForm {
    /// `n0 × n1` translation part.
    pub a: Matrix,
    /// `n1 × n1` quotient part.
    pub p: Matrix,
}

impl AdaptedBasis {
    /// Solves `Car(G1) ρ_j = -(c_ij)_{i ∈ S1}` for each `j ∈ S0` and checks each `b_j` is fixed.
    pub fn new(cartan: &CartanMatrix, split: &SubsystemSplit) -> Result<Self, ReflectionError> {
        let field = cartan.field();
        let n = cartan.n();
        let (s0, s1) = (&split.s0, &split.s1);
        let inv = cartan.principal(s1).inverse().ok_or(ReflectionError::SingularBlock)?;
        let rhs = cartan.matrix().submatrix(s1, s0).neg();
        // n1 × n0, column r is ρ for s0[r]
        let sol = if s0.is_empty() { Matrix::zeros(field, s1.len(), 0) } else { inv.mul(&rhs) };
        let rho = sol.transpose();

        let mut b_vectors = Vec::with_capacity(s0.len());
        for (r, &j) in s0.iter().enumerate() {
            let mut b = vec![field.zero(); n];
            b[j] = field.one();
            for (c, &k) in s1.iter().enumerate() {
                b[k] = rho[(r, c)].clone();
            }
            if !cartan.matrix().mul_vec(&b).iter().all(FieldElement::is_zero) {
                return Err(ReflectionError::NotFixed(j));
            }
            b_vectors.push(b);
        }

        let mut from_adapted = Matrix::zeros(field, n, n);
        for (col, b) in b_vectors.iter().enumerate() {
            for (row, x) in b.iter().enumerate() {
                from_adapted[(row, col)] = x.clone();
            }
        }
        for (c, &i) in s1.iter().enumerate() {
            from_adapted[(i, s0.len() + c)] = field.one();
        }
        let to_adapted = from_adapted.inverse().expect("adapted basis is a basis");
        Ok(Self { split: split.clone(), rho, b_vectors, from_adapted, to_adapted })
    }

    pub fn n0(&self) -> usize {
        self.split.n0()
    }

    pub fn n1(&self) -> usize {
        self.split.n1()
    }

    /// Matrix of `g` in the adapted basis.
    pub fn conjugate_in(&self, g: &Matrix) -> Matrix {
        self.to_adapted.mul(g).mul(&self.from_adapted)
    }

    pub fn block(&self, g: &Matrix) -> Result<BlockForm, ReflectionError> {
        let m = self.conjugate_in(g);
        let (n0, n) = (self.n0(), g.rows());
        for i in 0..n {
            for j in 0..n0 {
                let x = &m[(i, j)];
                let ok = if i == j { x.is_one() } else { x.is_zero() };
                if !ok {
                    return Err(ReflectionError::NotBlockTriangular);
                }
            }
        }
        let top: Vec<usize> = (0..n0).collect();
        let bottom: Vec<usize> = (n0..n).collect();
        Ok(BlockForm { a: m.submatrix(&top, &bottom), p: m.submatrix(&bottom, &bottom) })
    }

    /// Inverse of [`AdaptedBasis::block`]: the matrix in the `a` basis.
    pub fn reassemble(&self, b: &BlockForm) -> Matrix {
        let (n0, n1) = (self.n0(), self.n1());
        let n = n0 + n1;
        let field = self.from_adapted[(0, 0)].field().clone();
        let mut m = Matrix::identity(&field, n);
        for i in 0..n0 {
            for j in 0..n1 {
                m[(i, n0 + j)] = b.a[(i, j)].clone();
            }
        }
        for i in 0..n1 {
            for j in 0..n1 {
                m[(n0 + i, n0 + j)] = b.p[(i, j)].clone();
            }
        }
        self.from_adapted.mul(&m).mul(&self.to_adapted)
    }

    /// `T(s) = P(s) - I` from the closed form.
    pub fn t_matrix(&self, cartan: &CartanMatrix, s: usize) -> Matrix {
        let field = cartan.field();
        let (s0, s1) = (&self.split.s0, &self.split.s1);
        let mut t = Matrix::zeros(field, s1.len(), s1.len());
        if let Some(r) = s1.iter().position(|&i| i == s) {
            for (c, &k) in s1.iter().enumerate() {
                t[(r, c)] = -cartan.entry(s, k);
            }
        } else {
            let r = s0.iter().position(|&j| j == s).expect("generator index in range");
            for (ci, &i) in s1.iter().enumerate() {
                for k in 0..s1.len() {
                    t[(k, ci)] = cartan.entry(s, i) * &self.rho[(r, k)];
                }
            }
        }
        t
    }

    /// `A(s)` from the closed form: zero for `s ∈ S1`, a single row `-c_{s,S1}` otherwise.
    pub fn a_matrix(&self, cartan: &CartanMatrix, s: usize) -> Matrix {
        let (s0, s1) = (&self.split.s0, &self.split.s1);
        let mut a = Matrix::zeros(cartan.field(), s0.len(), s1.len());
        if let Some(r) = s0.iter().position(|&j| j == s) {
            for (c, &k) in s1.iter().enumerate() {
                a[(r, c)] = -cartan.entry(s, k);
            }
        }
        a
    }
}

/// Smallest `k ≤ bound` with `P^k = I`.
pub fn quotient_order(p: &Matrix, bound: u32) -> Option<u32> {
    let mut acc = p.clone();
    for k in 1..=bound {
        if acc.is_identity() {
            return Some(k);
        }
        acc = acc.mul(p);
    }
    None
}

pub const DEFAULT_ORDER_BOUND: u32 = 60;

/// Smallest `k ≤ bound` with `g^k = 1`.
pub fn element_order(g: &Matrix, bound: u32) -> Option<u32> {
    quotient_order(g, bound)
}

/// Coefficients `λ` with `c_{j0} = Σ λ_i c_i`, where `c_i = -(c_{ik})_{k ∈ S1}`; needs `n0 = 1`.
pub fn lambda_coefficients(
    cartan: &CartanMatrix,
    split: &SubsystemSplit,
) -> Result<Vec<FieldElement>, ReflectionError> {
    if split.n0() != 1 {
        return Err(ReflectionError::NeedsSingleFixed(split.n0()));
    }
    let inv = cartan.principal(&split.s1).inverse().ok_or(ReflectionError::SingularBlock)?;
    let row = cartan.matrix().submatrix(&split.s0, &split.s1);
    Ok(row.mul(&inv).row(0).to_vec())
}

/// The vectors `c_i = -(c_{ik})_{k ∈ S1}` for every `i`.
pub fn c_vectors(cartan: &CartanMatrix, split: &SubsystemSplit) -> Vec<Vec<FieldElement>> {
    (0..cartan.n())
        .map(|i| split.s1.iter().map(|&k| -cartan.entry(i, k)).collect())
        .collect()
}

/// Common fixed row vectors of the quotient action `ζ ↦ ζ P(s)` over all generators.
pub fn quotient_common_fixed(rep: &Representation, basis: &AdaptedBasis) -> Vec<Vec<FieldElement>> {
    let n1 = basis.n1();
    let field = rep.field();
    if n1 == 0 {
        return Vec::new();
    }
    let id = Matrix::identity(field, n1);
    let mut rows = Vec::new();
    for s in 0..rep.n() {
        let p = basis.block(rep.generator_matrix(s)).expect("generators fix H").p;
        // ζ (P - I) = 0  ⇔  (P - I)^T ζ^T = 0
        rows.extend(p.sub(&id).transpose().to_rows());
    }
    Matrix::from_rows(rows).kernel()
}
