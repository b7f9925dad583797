//! Dense matrices over a [`Field`], with exact elimination.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use crate::field::{Field, FieldElement};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldElement) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Integer matrix in `field`.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &FieldElement> {
        self.data.iter()
    }

    fn field(&self) -> Option<&Field> {
        self.data.first().map(FieldElement::field)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn principal(&self, idx: &[usize]) -> Self {
        self.submatrix(idx, idx)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: &FieldElement) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let field = match self.field().or(other.field()) {
            Some(f) => f.clone(),
            None => {
                return Self {
                    rows: self.rows,
                    cols: other.cols,
                    data: Vec::new(),
                }
            }
        };
        let mut out = Self::zeros(&field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let field = self.field().expect("nonempty matrix").clone();
        let mut acc = Self::identity(&field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Row vector times matrix.
    pub fn vec_mul(v: &[FieldElement], m: &Self) -> Vec<FieldElement> {
        assert_eq!(v.len(), m.rows);
        (0..m.cols)
            .map(|j| {
                let mut acc = m[(0, j)].field().zero();
                for (i, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += &(x * &m[(i, j)]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = v[0].field().zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += &(&self[(i, j)] * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Determinant by Bareiss fraction-free elimination. The empty matrix has determinant 1.
    pub fn det(&self, field: &Field) -> FieldElement {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return field.one();
        }
        let mut a = self.clone();
        let mut prev = field.one();
        let mut negate = false;
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return field.zero();
                };
                a.swap_rows(k, p);
                negate = !negate;
            }
            let inv_prev = prev.inverse().expect("nonzero Bareiss pivot");
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&a[(k, k)] * &a[(i, j)]) - &(&a[(i, k)] * &a[(k, j)]);
                    a[(i, j)] = &v * &inv_prev;
                }
                a[(i, k)] = field.zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Rank by fraction-free forward elimination with column skipping.
    pub fn rank(&self) -> usize {
        let Some(field) = self.field().cloned() else {
            return 0;
        };
        let mut a = self.clone();
        let mut prev = field.one();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let inv_prev = prev.inverse().expect("nonzero pivot");
            for i in r + 1..a.rows {
                for j in c + 1..a.cols {
                    let v = &(&a[(r, c)] * &a[(i, j)]) - &(&a[(i, c)] * &a[(r, j)]);
                    a[(i, j)] = &v * &inv_prev;
                }
                a[(i, c)] = field.zero();
            }
            prev = a[(r, c)].clone();
            r += 1;
        }
        r
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let inv = a[(r, c)].inverse().expect("nonzero pivot");
            for j in c..a.cols {
                a[(r, j)] = &a[(r, j)] * &inv;
            }
            for i in 0..a.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in c..a.cols {
                    let v = &f * &a[(r, j)];
                    a[(i, j)] -= &v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    /// Basis of `{x : A x = 0}`, one vector per free column (1 there, 0 at other free columns).
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let Some(field) = self.field().cloned() else {
            return Vec::new();
        };
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![field.zero(); self.cols];
                v[f] = field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&r[(row, f)];
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let field = self.field()?.clone();
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                field.one()
            } else {
                field.zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let idx: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(r.submatrix(&idx, &cols))
    }

    /// Solves `A X = B` for square invertible `A`.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        Some(self.inverse()?.mul(rhs))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Characteristic polynomial `det(X·I − A)`, ascending coefficients, via Faddeev–LeVerrier.
    pub fn charpoly(&self, field: &Field) -> Vec<FieldElement> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[n] = field.one();
        let mut m = Self::zeros(field, n, n);
        let id = Self::identity(field, n);
        for k in 1..=n {
            // M_k = A·M_{k−1} + c_{n−k+1}·I ; c_{n−k} = −tr(A·M_k)/k
            m = self.mul(&m).add(&id.scale(&coeffs[n - k + 1]));
            let am = self.mul(&m);
            let mut tr = field.zero();
            for i in 0..n {
                tr += &am[(i, i)];
            }
            coeffs[n - k] = -(&tr * &field.from_ratio(1, k as i64));
        }
        coeffs
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = FieldElement;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        Matrix::mul(self, rhs)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_expr()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_expr()).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let padded: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(f, "  [ {} ]", padded.join("  "))?;
        }
        Ok(())
    }
}

/// Incrementally maintained row space over a field, used for ranks of large
/// generating sets where only the span matters.
#[derive(Debug, Clone)]
pub struct RowSpan {
    // rows in echelon form, each with its pivot column
    basis: Vec<(usize, Vec<FieldElement>)>,
}

impl Default for RowSpan {
    fn default() -> Self {
        Self::new()
    }
}

impl RowSpan {
    pub fn new() -> Self {
        Self { basis: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Reduces `v` against the current basis; returns `true` if it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<FieldElement>) -> bool {
        for (pc, row) in &self.basis {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    let t = &f * y;
                    *x -= &t;
                }
            }
        }
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pc].inverse().expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        // keep the basis fully reduced on pivot columns
        for (_, row) in self.basis.iter_mut() {
            if !row[pc].is_zero() {
                let f = row[pc].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    let t = &f * y;
                    *x -= &t;
                }
            }
        }
        self.basis.push((pc, v));
        true
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        let mut v = v.to_vec();
        for (pc, row) in &self.basis {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    let t = &f * y;
                    *x -= &t;
                }
            }
        }
        v.iter().all(FieldElement::is_zero)
    }
}
