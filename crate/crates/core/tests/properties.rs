use fedosov::cochain::Cochain;
use fedosov::fedosov::{FedosovData, StarEval, StarProduct};
use fedosov::io;
use fedosov::ops;
use fedosov::poisson::Poisson;
use fedosov::scalar::qf;
use fedosov::weyl::FormWeyl;
use proptest::prelude::*;

const N: i32 = 6;
// two orders of guard for the weight-changing operators
const G: i32 = N + 2;

type Term = (u32, i32, [u8; 2], [u8; 2], i64, i64);

fn term(max_form: u32) -> impl Strategy<Value = Term> {
    (0..=max_form, 0..=2i32, [0..=3u8, 0..=3u8], [0..=2u8, 0..=2u8], -5..=5i64, 1..=4i64)
}

fn build(terms: &[Term], order: i32) -> FormWeyl {
    terms.iter().fold(FormWeyl::zero(2, order), |acc, &(form, hbar, y, x, n, d)| {
        acc.add(&FormWeyl::monomial(2, order, form, hbar, y.into_iter().collect(), x.into_iter().collect(), qf(n, d)))
    })
}

fn weyl(max_form: u32) -> impl Strategy<Value = FormWeyl> {
    prop::collection::vec(term(max_form), 0..5).prop_map(|t| build(&t, G))
}

fn scalar() -> impl Strategy<Value = FormWeyl> {
    prop::collection::vec(term(0), 0..4).prop_map(|t| {
        let t: Vec<Term> = t.into_iter().map(|(f, h, _, x, n, d)| (f, h, [0, 0], x, n, d)).collect();
        build(&t, G)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hodge_decomposition(a in weyl(3)) {
        let lhs = ops::delta(&ops::delta_inv(&a)).add(&ops::delta_inv(&ops::delta(&a))).add(&ops::sigma(&a));
        prop_assert_eq!(lhs.with_order(N), a.with_order(N));
    }

    #[test]
    fn delta_and_inverse_square_to_zero(a in weyl(3)) {
        prop_assert!(ops::delta(&ops::delta(&a)).is_zero());
        prop_assert!(ops::delta_inv(&ops::delta_inv(&a)).is_zero());
    }

    #[test]
    fn fiber_product_associative(a in weyl(0), b in weyl(0), c in weyl(0)) {
        let p = Poisson::standard(2);
        prop_assert_eq!(p.product(&p.product(&a, &b), &c), p.product(&a, &p.product(&b, &c)));
    }

    #[test]
    fn delta_is_a_derivation(a in weyl(0), b in weyl(0)) {
        let p = Poisson::standard(2);
        let lhs = ops::delta(&p.product(&a, &b));
        let rhs = p.product(&ops::delta(&a), &b).add(&p.product(&a, &ops::delta(&b)));
        prop_assert_eq!(lhs.with_order(N), rhs.with_order(N));
    }

    #[test]
    fn sigma_product_is_sigma_of_product(a in weyl(0), b in weyl(0)) {
        let p = Poisson::standard(2);
        prop_assert_eq!(p.sigma_product(&a, &b), p.product(&a, &b).sigma());
    }

    #[test]
    fn flat_star_is_associative(a in scalar(), b in scalar(), c in scalar()) {
        let sp = StarProduct::new(FedosovData::flat(2, G)).unwrap();
        let lhs = sp.star(&sp.star(&a, &b).unwrap(), &c).unwrap();
        let rhs = sp.star(&a, &sp.star(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs.with_order(N), rhs.with_order(N));
    }

    #[test]
    fn star_unit(a in scalar()) {
        let sp = StarProduct::new(FedosovData::flat(2, G)).unwrap();
        let one = FormWeyl::one(2, G);
        prop_assert_eq!(sp.star(&one, &a).unwrap(), a.clone());
        prop_assert_eq!(sp.star(&a, &one).unwrap(), a);
    }

    #[test]
    fn text_round_trip(a in weyl(0)) {
        prop_assert_eq!(io::parse_weyl(&io::fmt_weyl(&a), 2, G).unwrap(), a);
    }

    #[test]
    fn json_round_trip(a in weyl(3)) {
        prop_assert_eq!(io::weyl_from_json(&io::weyl_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn hochschild_d_squares_to_zero(a in weyl(0), slot in [0..=2u8, 0..=2u8]) {
        let p = Poisson::standard(2);
        let c = Cochain::with_slots(&a, &[slot.into_iter().collect()], G as u32);
        prop_assert!(c.hochschild_d(&p).hochschild_d(&p).is_zero());
    }
}
