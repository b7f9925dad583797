use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use affine_coxeter::cartan::CartanMatrix;
use affine_coxeter::field::{Field, FieldElement};
use affine_coxeter::forms::{is_invariant, solve_invariant_form};
use affine_coxeter::graph::{parse_expr, parse_graph_unchecked, DecoratedGraph, Edge, Family};
use affine_coxeter::matrix::Matrix;
use affine_coxeter::reflection::Representation;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn golden_elem() -> impl Strategy<Value = FieldElement> {
    (-20i64..=20, 1i64..=7, -20i64..=20, 1i64..=7)
        .prop_map(|(a, b, c, d)| Field::golden().from_coords(vec![rat(a, b), rat(c, d)]))
}

fn nonzero_rational() -> impl Strategy<Value = FieldElement> {
    (-15i64..=15, 1i64..=6)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| Field::rationals().from_ratio(n, d))
}

proptest! {
    #[test]
    fn field_ring_laws(a in golden_elem(), b in golden_elem(), c in golden_elem()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn field_inverse(a in golden_elem()) {
        if a.is_zero() {
            prop_assert!(a.inverse().is_err());
        } else {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn coordinates_are_additive(a in golden_elem(), b in golden_elem()) {
        let s = &a + &b;
        for k in 0..2 {
            prop_assert_eq!(
                s.rational_coordinates()[k].clone(),
                &a.rational_coordinates()[k] + &b.rational_coordinates()[k]
            );
        }
    }

    #[test]
    fn expression_roundtrip(a in golden_elem()) {
        let k = Field::golden();
        prop_assert_eq!(parse_expr(&k, &a.to_expr()).unwrap(), a);
    }

    #[test]
    fn det_is_multiplicative(xs in proptest::collection::vec(-5i64..=5, 18)) {
        let q = Field::rationals();
        let a = Matrix::from_fn(3, 3, |i, j| q.from_int(xs[3 * i + j]));
        let b = Matrix::from_fn(3, 3, |i, j| q.from_int(xs[9 + 3 * i + j]));
        prop_assert_eq!(a.mul(&b).det(&q), &a.det(&q) * &b.det(&q));
        if let Some(inv) = a.inverse() {
            prop_assert!(a.mul(&inv).is_identity());
        } else {
            prop_assert!(a.det(&q).is_zero());
        }
    }

    #[test]
    fn graph_text_roundtrip(
        alphas in proptest::collection::vec(nonzero_rational(), 4),
        l in nonzero_rational(),
        labels in proptest::collection::vec(3u32..=6, 5),
        with_bold in any::<bool>(),
    ) {
        let q = Field::rationals();
        let mut edges: Vec<Edge> = (0..4).map(|i| Edge::tree(i, i + 1, labels[i], alphas[i].clone())).collect();
        if with_bold {
            let m = alphas[0].div(&l).unwrap();
            edges.push(Edge::bold(0, 4, labels[4], l, m));
        }
        let g = DecoratedGraph::new(q, 5, edges, 0).unwrap();
        let back = parse_graph_unchecked(&g.serialize()).unwrap();
        prop_assert_eq!(back.serialize(), g.serialize());
        let c1 = CartanMatrix::from_graph(&g).unwrap();
        let c2 = CartanMatrix::from_graph(&back).unwrap();
        prop_assert_eq!(c1.matrix(), c2.matrix());
    }

    #[test]
    fn tree_graphs_carry_a_unique_invariant_form(alphas in proptest::collection::vec(nonzero_rational(), 3)) {
        let q = Field::rationals();
        let edges = vec![
            Edge::tree(0, 1, 3, alphas[0].clone()),
            Edge::tree(1, 2, 3, alphas[1].clone()),
            Edge::tree(1, 3, 3, alphas[2].clone()),
        ];
        let g = DecoratedGraph::new(q, 4, edges, 0).unwrap();
        let rep = Representation::new(&CartanMatrix::from_graph(&g).unwrap());
        let phi = solve_invariant_form(&rep).unique().cloned().unwrap();
        for i in 0..4 {
            prop_assert!(is_invariant(&phi, rep.generator_matrix(i)));
        }
    }
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            let w = if a == v { b } else if b == v { a } else { continue };
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[test]
fn every_connected_four_vertex_graph_is_classified() {
    let q = Field::rationals();
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
    let mut counts = std::collections::BTreeMap::new();
    for mask in 0u32..64 {
        let chosen: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, &p)| p).collect();
        if !connected(4, &chosen) {
            continue;
        }
        // spanning tree by first-come, remaining edges bold with l = m = 1
        let mut reached = [true, false, false, false];
        let mut edges = Vec::new();
        let mut rest: Vec<(usize, usize)> = chosen.clone();
        while reached.iter().any(|r| !r) {
            let k = rest.iter().position(|&(a, b)| reached[a] != reached[b]).unwrap();
            let (a, b) = rest.remove(k);
            reached[a] = true;
            reached[b] = true;
            edges.push(Edge::tree(a, b, 3, q.one()));
        }
        edges.extend(rest.iter().map(|&(a, b)| Edge::bold(a, b, 3, q.one(), q.one())));
        let g = DecoratedGraph::new(q.clone(), 4, edges, 0).unwrap();
        let fam = g.classify_family().expect("every connected graph has a family");
        assert_eq!(g.is_tree(), chosen.len() == 3);
        *counts.entry(fam.to_string()).or_insert(0) += 1;
    }
    // labelled counts: 12 paths, 4 stars, 12 paws, 3 squares, 6 diamonds, 1 complete graph
    let expect: Vec<(String, usize)> = [
        (Family::I, 12),
        (Family::II, 4),
        (Family::III, 12),
        (Family::IV, 3),
        (Family::V, 6),
        (Family::VI, 1),
    ]
    .into_iter()
    .map(|(f, k)| (f.to_string(), k))
    .collect();
    let mut got: Vec<(String, usize)> = counts.into_iter().collect();
    got.sort();
    let mut expect = expect;
    expect.sort();
    assert_eq!(got, expect);
}
