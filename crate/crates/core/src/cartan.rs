//! Cartan matrices, discriminants and fixed/quotient splits.

use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::graph::{DecoratedGraph, GraphError};
use crate::matrix::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("diagonal entry {0} is not 2")]
    Diagonal(usize),
    #[error("zero pattern not symmetric at ({0}, {1})")]
    ZeroPattern(usize, usize),
    #[error("fixed part larger than quotient part: n0 = {n0} > n1 = {n1}")]
    FixedPartTooLarge { n0: usize, n1: usize },
    #[error("no principal block of size {0} is invertible")]
    NoInvertibleBlock(usize),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    field: Field,
    matrix: Matrix,
}

/// `S = S0 ⊔ S1` with an invertible principal block on `S1`. Both sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct SubsystemSplit {
    pub s0: Vec<usize>,
    pub s1: Vec<usize>,
}

impl SubsystemSplit {
    pub fn n0(&self) -> usize {
        self.s0.len()
    }

    pub fn n1(&self) -> usize {
        self.s1.len()
    }
}

impl CartanMatrix {
    /// Root-outward convention: tree edge with parent `u`, child `w` gives
    /// `c_uw = -alpha`, `c_wu = -1`; a bold edge gives `c_ij = -l`, `c_ji = -m`.
    pub fn from_graph(g: &DecoratedGraph) -> Result<Self, CartanError> {
        let field = g.field().clone();
        let n = g.n();
        let mut m = Matrix::zeros(&field, n, n);
        for i in 0..n {
            m[(i, i)] = field.from_int(2);
        }
        let parent = g.tree_parents();
        for e in g.edges() {
            if e.tree {
                let (u, w) = if parent[e.j] == Some(e.i) { (e.i, e.j) } else { (e.j, e.i) };
                m[(u, w)] = -&e.alpha;
                m[(w, u)] = -field.one();
            } else {
                let (l, mm) = e
                    .lm
                    .as_ref()
                    .ok_or(GraphError::UnboundParameter { i: e.i, j: e.j })?;
                m[(e.i, e.j)] = -l;
                m[(e.j, e.i)] = -mm;
            }
        }
        Ok(Self { field, matrix: m })
    }

    pub fn from_matrix(field: &Field, matrix: Matrix) -> Result<Self, CartanError> {
        assert!(matrix.is_square());
        let two = field.from_int(2);
        for i in 0..matrix.rows() {
            if matrix[(i, i)] != two {
                return Err(CartanError::Diagonal(i));
            }
            for j in 0..i {
                if matrix[(i, j)].is_zero() != matrix[(j, i)].is_zero() {
                    return Err(CartanError::ZeroPattern(i, j));
                }
            }
        }
        Ok(Self { field: field.clone(), matrix })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &FieldElement {
        &self.matrix[(i, j)]
    }

    /// `Δ(G) = det Car(G)`.
    pub fn discriminant(&self) -> FieldElement {
        self.matrix.det(&self.field)
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn principal(&self, idx: &[usize]) -> Matrix {
        self.matrix.principal(idx)
    }

    /// Split with `n1 = rank`. Uses `preferred` as `S0` when given, otherwise the
    /// lexicographically first `S0` whose complement block is invertible.
    pub fn choose_split(&self, preferred: Option<&[usize]>) -> Result<SubsystemSplit, CartanError> {
        let n = self.n();
        let n1 = self.rank();
        let n0 = n - n1;
        if n0 > n1 {
            return Err(CartanError::FixedPartTooLarge { n0, n1 });
        }
        if let Some(s0) = preferred {
            if s0.len() != n0 {
                return Err(CartanError::InvalidSplit(format!(
                    "S0 has {} elements but the kernel has dimension {n0}",
                    s0.len()
                )));
            }
            return self.split_with_s0(s0);
        }
        combinations(n, n0)
            .into_iter()
            .find_map(|s0| self.split_with_s0(&s0).ok())
            .ok_or(CartanError::NoInvertibleBlock(n1))
    }

    /// Split with the given `S0`, requiring only that the complement block be invertible.
    pub fn split_with_s0(&self, s0: &[usize]) -> Result<SubsystemSplit, CartanError> {
        let n = self.n();
        let mut s0 = s0.to_vec();
        s0.sort_unstable();
        s0.dedup();
        if s0.iter().any(|&v| v >= n) {
            return Err(CartanError::InvalidSplit("index out of range".into()));
        }
        let s1: Vec<usize> = (0..n).filter(|v| !s0.contains(v)).collect();
        if self.principal(&s1).det(&self.field).is_zero() {
            return Err(CartanError::InvalidSplit(format!(
                "principal block on {:?} is singular",
                s1.iter().map(|v| v + 1).collect::<Vec<_>>()
            )));
        }
        Ok(SubsystemSplit { s0, s1 })
    }

    /// `C[S0,S1] · Car(G1)^{-1} · C[S1,S0] = Car(G0)`.
    pub fn rank_condition(&self, split: &SubsystemSplit) -> bool {
        if split.s0.is_empty() {
            return true;
        }
        let c01 = self.matrix.submatrix(&split.s0, &split.s1);
        let c10 = self.matrix.submatrix(&split.s1, &split.s0);
        let Some(inv) = self.principal(&split.s1).inverse() else {
            return false;
        };
        c01.mul(&inv).mul(&c10) == self.principal(&split.s0)
    }

    /// Principal minors of size greater than `n1` that do not vanish.
    pub fn nonvanishing_large_minors(&self, n1: usize) -> Vec<(Vec<usize>, FieldElement)> {
        let n = self.n();
        let mut out = Vec::new();
        for k in n1 + 1..=n {
            for idx in combinations(n, k) {
                let d = self.principal(&idx).det(&self.field);
                if !d.is_zero() {
                    out.push((idx, d));
                }
            }
        }
        out
    }

    /// All principal minors of size `k`.
    pub fn principal_minors(&self, k: usize) -> Vec<(Vec<usize>, FieldElement)> {
        combinations(self.n(), k)
            .into_iter()
            .map(|idx| {
                let d = self.principal(&idx).det(&self.field);
                (idx, d)
            })
            .collect()
    }
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}
