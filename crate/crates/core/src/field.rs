//! Exact arithmetic in a simple algebraic extension `K = Q(θ)`.
//!
//! Every scalar in the library (Cartan entries, edge parameters, basis
//! coefficients, form values) is a [`FieldElement`]: a coefficient vector over
//! the rationals with respect to the power basis `1, θ, …, θ^{d-1}`, reduced
//! modulo a monic integer [`MinimalPolynomial`].

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("minimal polynomial must have degree at least 1")]
    ConstantPolynomial,
    #[error("minimal polynomial must be monic (leading coefficient {0})")]
    NotMonic(BigInt),
    #[error("minimal polynomial {0} is reducible over the rationals")]
    Reducible(String),
    #[error("no built-in minimal polynomial for edge label p={0}; extend the table or supply `vp=[..]` with an explicit alpha")]
    UnsupportedLabel(u32),
    #[error("field {field} has no designated roots of v_{p}")]
    NoDesignatedRoots { p: u32, field: String },
    #[error("division by zero")]
    DivisionByZero,
}

/// Monic integer polynomial, stored with ascending coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinimalPolynomial {
    coeffs: Vec<BigInt>,
}

impl MinimalPolynomial {
    /// Coefficients from the constant term upwards.
    pub fn from_ascending<I, T>(coeffs: I) -> Result<Self, FieldError>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(FieldError::ConstantPolynomial);
        }
        let lead = coeffs.last().unwrap();
        if !lead.is_one() {
            return Err(FieldError::NotMonic(lead.clone()));
        }
        Ok(Self { coeffs })
    }

    /// Coefficients from the leading term downwards, e.g. `[1, -3, 1]` for `X² − 3X + 1`.
    pub fn from_descending<I, T>(coeffs: I) -> Result<Self, FieldError>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut v: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        v.reverse();
        Self::from_ascending(v)
    }

    /// `X − r`
    pub fn linear(root: i64) -> Self {
        Self::from_ascending([-root, 1]).expect("linear polynomial is monic")
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn ascending(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn descending(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }

    /// Rejects polynomials with a rational root, and quadratics with a square
    /// discriminant. Higher-degree irreducibility is the caller's claim.
    pub fn check_irreducible(&self) -> Result<(), FieldError> {
        if self.degree() == 1 {
            return Ok(());
        }
        if self.degree() == 2 {
            let (c, b) = (&self.coeffs[0], &self.coeffs[1]);
            let disc = b * b - BigInt::from(4) * c;
            if !disc.is_negative() && is_perfect_square(&disc) {
                return Err(FieldError::Reducible(self.to_string()));
            }
            return Ok(());
        }
        if self.has_integer_root() {
            return Err(FieldError::Reducible(self.to_string()));
        }
        Ok(())
    }

    // A monic integer polynomial only has integer rational roots, all dividing c₀.
    fn has_integer_root(&self) -> bool {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return true;
        }
        let Some(bound) = c0.abs().to_u64() else {
            return false;
        };
        if bound > 1_000_000 {
            return false;
        }
        (1..=bound)
            .filter(|d| bound % d == 0)
            .flat_map(|d| [BigInt::from(d), -BigInt::from(d)])
            .any(|r| self.eval_int(&r).is_zero())
    }

    fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

fn is_perfect_square(n: &BigInt) -> bool {
    let r = n.sqrt();
    &(&r * &r) == n
}

impl fmt::Display for MinimalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}")?;
                    }
                    write!(f, "X")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug)]
struct FieldInner {
    minpoly: MinimalPolynomial,
    // θ^d = Σ reduction[i] θ^i
    reduction: Vec<BigRational>,
}

/// Shared, immutable context for one simple extension.
#[derive(Debug, Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.minpoly == other.inner.minpoly
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(minpoly: MinimalPolynomial) -> Result<Self, FieldError> {
        minpoly.check_irreducible()?;
        let reduction = minpoly
            .ascending()
            .iter()
            .take(minpoly.degree())
            .map(|c| BigRational::from_integer(-c.clone()))
            .collect();
        Ok(Self {
            inner: Arc::new(FieldInner { minpoly, reduction }),
        })
    }

    /// `Q`, realized as `Q[X]/(X − 1)`.
    pub fn rationals() -> Self {
        Self::new(MinimalPolynomial::linear(1)).expect("degree-1 field")
    }

    /// `Q(τ)` with `τ² = 3τ − 1`, the field of all α-values for labels up to 6.
    pub fn golden() -> Self {
        Self::new(MinimalPolynomial::from_descending([1, -3, 1]).unwrap()).expect("irreducible")
    }

    pub fn minpoly(&self) -> &MinimalPolynomial {
        &self.inner.minpoly
    }

    pub fn degree(&self) -> usize {
        self.inner.minpoly.degree()
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(BigRational::one())
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> FieldElement {
        self.from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(&self, q: BigRational) -> FieldElement {
        let mut x = self.zero();
        x.coeffs[0] = q;
        x
    }

    /// The class of `X`. In a degree-1 field this is the rational root.
    pub fn theta(&self) -> FieldElement {
        if self.degree() == 1 {
            self.from_rational(self.inner.reduction[0].clone())
        } else {
            let mut x = self.zero();
            x.coeffs[1] = BigRational::one();
            x
        }
    }

    /// Element with the given power-basis coordinates.
    pub fn from_coords(&self, coords: Vec<BigRational>) -> FieldElement {
        assert_eq!(coords.len(), self.degree(), "coordinate vector length");
        FieldElement {
            field: self.clone(),
            coeffs: coords,
        }
    }

    /// Evaluates an integer polynomial (ascending coefficients) at `x`.
    pub fn eval_poly(&self, coeffs: &[BigInt], x: &FieldElement) -> FieldElement {
        coeffs.iter().rev().fold(self.zero(), |acc, c| {
            &(&acc * x) + &self.from_rational(BigRational::from_integer(c.clone()))
        })
    }

    fn reduce(&self, mut poly: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree();
        while poly.len() > d {
            let top = poly.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = poly.len() - d;
            for (i, r) in self.inner.reduction.iter().enumerate() {
                if !r.is_zero() {
                    poly[base + i] += &top * r;
                }
            }
        }
        poly.resize(d, BigRational::zero());
        poly
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 1 {
            write!(f, "Q")
        } else {
            write!(f, "Q[X]/({})", self.minpoly())
        }
    }
}

/// Element of a [`Field`], exact.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    coeffs: Vec<BigRational>,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The power-basis coordinates `(x₀, …, x_{d−1})`; injective and additive.
    pub fn rational_coordinates(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `Some(q)` when the element lies in the prime field.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn scale(&self, q: &BigRational) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn inverse(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(self.field.from_rational(q.recip()));
        }
        // Extended Euclid: find u with u·self ≡ 1 mod minpoly.
        let modulus: Vec<BigRational> = self
            .field
            .minpoly()
            .ascending()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let (mut r0, mut r1) = (modulus, trim(self.coeffs.clone()));
        let (mut s0, mut s1) = (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since the modulus is irreducible.
        if r0.len() != 1 {
            return Err(FieldError::Reducible(self.field.minpoly().to_string()));
        }
        let c = r0[0].recip();
        let u = s0.into_iter().map(|x| x * &c).collect();
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs: self.field.reduce(u),
        })
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, mut e: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Compact expression accepted by the graph-file parser, e.g. `3-theta` or `1/2*theta+1`.
    pub fn to_expr(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let a = c.abs();
            if k == 0 {
                out.push_str(&fmt_rational(&a));
            } else {
                if !a.is_one() {
                    out.push_str(&fmt_rational(&a));
                    out.push('*');
                }
                out.push_str(&vec!["theta"; k].join("*"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = trim(a.to_vec());
    let lead = b.last().expect("nonzero divisor").clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        debug_assert!(self.field == rhs.field, "mixed fields");
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        debug_assert!(self.field == rhs.field, "mixed fields");
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        debug_assert!(self.field == rhs.field, "mixed fields");
        if self.coeffs.len() == 1 {
            return FieldElement {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        let mut prod = vec![BigRational::zero(); 2 * self.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        FieldElement {
            field: self.field.clone(),
            coeffs: self.field.reduce(prod),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(mut self) -> FieldElement {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

/// Built-in table entry for `v_p`, the minimal polynomial of `4cos²(π/p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelPolynomial {
    pub p: u32,
    pub minpoly: MinimalPolynomial,
}

/// Labels with a built-in `v_p`.
pub const SUPPORTED_LABELS: [u32; 4] = [3, 4, 5, 6];

pub fn v_p(p: u32) -> Result<LabelPolynomial, FieldError> {
    let minpoly = match p {
        3 => MinimalPolynomial::linear(1),
        4 => MinimalPolynomial::linear(2),
        5 => MinimalPolynomial::from_descending([1, -3, 1]).unwrap(),
        6 => MinimalPolynomial::linear(3),
        _ => return Err(FieldError::UnsupportedLabel(p)),
    };
    Ok(LabelPolynomial { p, minpoly })
}

impl LabelPolynomial {
    /// Whether `alpha` is a root of this polynomial inside its field.
    pub fn is_root(&self, alpha: &FieldElement) -> bool {
        alpha
            .field()
            .eval_poly(self.minpoly.ascending(), alpha)
            .is_zero()
    }

    /// Designated roots as elements of `field`. Degree-1 entries have their
    /// rational root; for `p = 5` the roots are `θ` and `3 − θ`, which requires
    /// `field` to be `Q(τ)` itself.
    pub fn roots_in(&self, field: &Field) -> Result<Vec<FieldElement>, FieldError> {
        if self.minpoly.degree() == 1 {
            let r = -&self.minpoly.ascending()[0];
            return Ok(vec![field.from_rational(BigRational::from_integer(r))]);
        }
        if field.minpoly() == &self.minpoly {
            let theta = field.theta();
            let other = &field.from_int(3) - &theta;
            return Ok(vec![theta, other]);
        }
        Err(FieldError::NoDesignatedRoots {
            p: self.p,
            field: field.to_string(),
        })
    }
}
