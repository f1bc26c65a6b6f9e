//! Randomized identities on W(m|n) and its action on A(m|n): the bracket
//! is the supercommutator of super-derivations, super-antisymmetric and
//! satisfies the super-Jacobi identity on homogeneous elements.

use proptest::prelude::*;

use wittsuper::algebra::{Context, FieldTerm, Monomial, OddSet, Signature, SuperPoly, VectorField};
use wittsuper::format::{field_from_text, field_to_text};
use wittsuper::rational::{qr, sign};

const SIG: Signature = Signature { m: 2, n: 2 };

fn field(picks: &[(usize, i64)], odd: Option<bool>) -> VectorField {
    let basis = FieldTerm::basis(SIG, 2);
    let x = VectorField::from_terms(SIG, picks.iter().map(|&(k, c)| (basis[k % basis.len()].clone(), qr(c, 1 + k as i64 % 3))));
    match odd {
        Some(p) => x.part(p),
        None => x,
    }
}

fn poly(terms: &[(i32, i32, u32, i64)]) -> SuperPoly {
    SuperPoly::from_terms(
        SIG,
        Context::Polynomial,
        terms.iter().map(|&(a, b, o, c)| (Monomial::new(&[a, b], OddSet::from_bits(o)), qr(c, 1))),
    )
    .expect("polynomial")
}

fn picks() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..200, -5i64..6), 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_the_supercommutator(xs in picks(), ys in picks(), px: bool, py: bool,
                                      f in prop::collection::vec((0i32..3, 0i32..3, 0u32..4, -4i64..5), 1..4)) {
        let (x, y, f) = (field(&xs, Some(px)), field(&ys, Some(py)), poly(&f));
        let lhs = x.bracket(&y).unwrap().apply(&f).unwrap();
        let xy = x.apply(&y.apply(&f).unwrap()).unwrap();
        let yx = y.apply(&x.apply(&f).unwrap()).unwrap();
        let rhs = xy.sub(&yx.scale(&sign(px && py))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn super_antisymmetry(xs in picks(), ys in picks(), px: bool, py: bool) {
        let (x, y) = (field(&xs, Some(px)), field(&ys, Some(py)));
        let sum = x.bracket(&y).unwrap().add(&y.bracket(&x).unwrap().scale(&sign(px && py))).unwrap();
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn super_jacobi(xs in picks(), ys in picks(), zs in picks(), px: bool, py: bool, pz: bool) {
        let (x, y, z) = (field(&xs, Some(px)), field(&ys, Some(py)), field(&zs, Some(pz)));
        // (-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]] = 0
        let a = x.bracket(&y.bracket(&z).unwrap()).unwrap().scale(&sign(px && pz));
        let b = y.bracket(&z.bracket(&x).unwrap()).unwrap().scale(&sign(py && px));
        let c = z.bracket(&x.bracket(&y).unwrap()).unwrap().scale(&sign(pz && py));
        prop_assert!(a.add(&b).unwrap().add(&c).unwrap().is_zero());
    }

    #[test]
    fn term_lists_round_trip(xs in picks()) {
        let x = field(&xs, None);
        prop_assert_eq!(field_from_text(SIG, &field_to_text(&x)).unwrap(), x);
    }
}
