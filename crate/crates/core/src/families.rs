//! Parameterised four-vertex families and the five-vertex path, with closed-form discriminants.
//!
//! Parameter order per family (`a` = alpha):
//!
//! | family | params | derived |
//! |---|---|---|
//! | I | a1 a2 a3 | |
//! | II | a1 a2 a3 | |
//! | III | a1 a2 a4 l m | a3 = l m |
//! | IV | a1 a3 a4 l m | a2 = l m |
//! | V | a1 a2 a3 l1 m1 l2 m2 | a4 = l1 m1, a5 = l2 m2 |
//! | VI | a1 a2 a3 l4 m4 l5 m5 l6 m6 | a4 = l4 m4, a5 = l5 m5, a6 = l6 m6 |
//! | Path5 | a1 a2 a3 a4 | |

use std::fmt;

use crate::field::{Field, FieldElement};
use crate::graph::{DecoratedGraph, Edge, Family, GraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaFamily {
    Four(Family),
    Path5,
}

pub const ALL_FORMULA_FAMILIES: [FormulaFamily; 7] = [
    FormulaFamily::Four(Family::I),
    FormulaFamily::Four(Family::II),
    FormulaFamily::Four(Family::III),
    FormulaFamily::Four(Family::IV),
    FormulaFamily::Four(Family::V),
    FormulaFamily::Four(Family::VI),
    FormulaFamily::Path5,
];

impl fmt::Display for FormulaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaFamily::Four(fam) => write!(f, "{fam}"),
            FormulaFamily::Path5 => f.write_str("path5"),
        }
    }
}

impl FormulaFamily {
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            FormulaFamily::Four(Family::I) | FormulaFamily::Four(Family::II) => &["a1", "a2", "a3"],
            FormulaFamily::Four(Family::III) => &["a1", "a2", "a4", "l", "m"],
            FormulaFamily::Four(Family::IV) => &["a1", "a3", "a4", "l", "m"],
            FormulaFamily::Four(Family::V) => &["a1", "a2", "a3", "l1", "m1", "l2", "m2"],
            FormulaFamily::Four(Family::VI) => &["a1", "a2", "a3", "l4", "m4", "l5", "m5", "l6", "m6"],
            FormulaFamily::Path5 => &["a1", "a2", "a3", "a4"],
        }
    }

    pub fn param_count(self) -> usize {
        self.param_names().len()
    }

    /// Indices of parameters that are products-side slots (`l`, `m`), which must be nonzero.
    pub fn circuit_param_range(self) -> std::ops::Range<usize> {
        match self {
            FormulaFamily::Four(Family::III) | FormulaFamily::Four(Family::IV) => 3..5,
            FormulaFamily::Four(Family::V) => 3..7,
            FormulaFamily::Four(Family::VI) => 3..9,
            _ => 0..0,
        }
    }

    /// Graph realising the family. Labels are nominal (3) since parameters need not be label roots.
    pub fn graph(self, field: &Field, p: &[FieldElement]) -> Result<DecoratedGraph, GraphError> {
        assert_eq!(p.len(), self.param_count(), "wrong parameter count for {self}");
        let t = |i, j, a: &FieldElement| Edge::tree(i, j, 3, a.clone());
        let b = |i, j, l: &FieldElement, m: &FieldElement| Edge::bold(i, j, 3, l.clone(), m.clone());
        let (n, edges) = match self {
            FormulaFamily::Four(Family::I) => (4, vec![t(0, 1, &p[0]), t(1, 2, &p[1]), t(2, 3, &p[2])]),
            FormulaFamily::Four(Family::II) => (4, vec![t(0, 1, &p[0]), t(0, 2, &p[1]), t(0, 3, &p[2])]),
            FormulaFamily::Four(Family::III) => (
                4,
                vec![t(0, 1, &p[0]), t(0, 2, &p[1]), t(0, 3, &p[2]), b(1, 2, &p[3], &p[4])],
            ),
            FormulaFamily::Four(Family::IV) => (
                4,
                vec![t(0, 1, &p[0]), t(0, 3, &p[2]), t(3, 2, &p[1]), b(1, 2, &p[3], &p[4])],
            ),
            FormulaFamily::Four(Family::V) => (
                4,
                vec![
                    t(0, 1, &p[0]),
                    t(0, 2, &p[1]),
                    t(0, 3, &p[2]),
                    b(1, 2, &p[3], &p[4]),
                    b(2, 3, &p[5], &p[6]),
                ],
            ),
            FormulaFamily::Four(Family::VI) => (
                4,
                vec![
                    t(0, 1, &p[0]),
                    t(0, 2, &p[1]),
                    t(0, 3, &p[2]),
                    b(1, 2, &p[3], &p[4]),
                    b(2, 3, &p[5], &p[6]),
                    b(3, 1, &p[7], &p[8]),
                ],
            ),
            FormulaFamily::Path5 => (
                5,
                vec![t(0, 1, &p[0]), t(1, 2, &p[1]), t(2, 3, &p[2]), t(3, 4, &p[3])],
            ),
        };
        DecoratedGraph::new(field.clone(), n, edges, 0)
    }

    /// Closed-form discriminant.
    pub fn discriminant_formula(self, field: &Field, p: &[FieldElement]) -> FieldElement {
        assert_eq!(p.len(), self.param_count());
        let k = |x: i64| field.from_int(x);
        let four = k(4);
        let sum = |xs: &[&FieldElement]| xs.iter().fold(field.zero(), |acc, x| &acc + *x);
        match self {
            FormulaFamily::Four(Family::I) => {
                // (4 - a1)(4 - a3) - 4 a2
                &(&(&four - &p[0]) * &(&four - &p[2])) - &(&four * &p[1])
            }
            FormulaFamily::Four(Family::II) => &four * &(&four - &sum(&[&p[0], &p[1], &p[2]])),
            FormulaFamily::Four(Family::III) => {
                let (a1, a2, a4, l, m) = (&p[0], &p[1], &p[2], &p[3], &p[4]);
                let a3 = l * m;
                let base = &four * &(&four - &sum(&[a1, a2, &a3, a4]));
                let lin = &k(2) * &(&(a1 * l) + &(a2 * m));
                &(&base + &(&a3 * a4)) - &lin
            }
            FormulaFamily::Four(Family::IV) => {
                let (a1, a3, a4, l, m) = (&p[0], &p[1], &p[2], &p[3], &p[4]);
                let a2 = l * m;
                let base = &four * &(&four - &sum(&[a1, &a2, a3, a4]));
                let quad = &(a1 * a3) + &(&a2 * a4);
                let lin = &(a1 * l) + &(&(a3 * a4) * m);
                &(&base + &quad) - &lin
            }
            FormulaFamily::Four(Family::V) => {
                let (a1, a2, a3, l1, m1, l2, m2) = (&p[0], &p[1], &p[2], &p[3], &p[4], &p[5], &p[6]);
                let a4 = l1 * m1;
                let a5 = l2 * m2;
                let base = &four * &(&four - &sum(&[a1, a2, a3, &a4, &a5]));
                let quad = &(a1 * &a5) + &(a3 * &a4);
                let lin = &k(2) * &sum(&[&(a1 * l1), &(a2 * l2), &(a2 * m1), &(a3 * m2)]);
                let cub = &(&(a1 * l1) * l2) + &(&(a3 * m1) * m2);
                &(&(&base + &quad) - &lin) - &cub
            }
            FormulaFamily::Four(Family::VI) => {
                let (a1, a2, a3) = (&p[0], &p[1], &p[2]);
                let (l4, m4, l5, m5, l6, m6) = (&p[3], &p[4], &p[5], &p[6], &p[7], &p[8]);
                let a4 = l4 * m4;
                let a5 = l5 * m5;
                let a6 = l6 * m6;
                let two = k(2);
                let base = &four * &(&four - &sum(&[a1, a2, a3, &a4, &a5, &a6]));
                let quad = sum(&[&(a1 * &a5), &(a3 * &a4), &(a2 * &a6)]);
                let triple = &two * &(&(&(l4 * l5) * l6) + &(&(m4 * m5) * m6));
                let r1 = a1 * &sum(&[&(&two * l4), &(&two * m6), &(l4 * l5), &(m5 * m6)]);
                let r2 = a2 * &sum(&[&(&two * l5), &(&two * m4), &(l5 * l6), &(m6 * m4)]);
                let r3 = a3 * &sum(&[&(&two * l6), &(&two * m5), &(l6 * l4), &(m4 * m5)]);
                &(&(&(&(&base + &quad) - &triple) - &r1) - &r2) - &r3
            }
            FormulaFamily::Path5 => {
                let (a1, a2, a3, a4) = (&p[0], &p[1], &p[2], &p[3]);
                let x = &four - a1;
                let y = &four - a4;
                let inner = &(&(&x * &y) - &(a3 * &x)) - &(a2 * &y);
                &k(2) * &inner
            }
        }
    }
}
