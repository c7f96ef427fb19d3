use fedosov::chart::SymplecticChart;
use fedosov::cochain::{spanning_monomials, Cochain};
use fedosov::fedosov::{FedosovData, OmegaTerm, StarEval};
use fedosov::fwx::{embed_forms, tau_symbol, Fwx};
use fedosov::multi;
use fedosov::ops;
use fedosov::random::{Gen, WeylSpec};
use fedosov::weyl::FormWeyl;
use fedosov::xpoly::XPoly;

const N: i32 = 6;

fn curved_chart() -> SymplecticChart {
    SymplecticChart::from_symmetric_tensor(2, &|a, b, c| {
        let mut idx = [a, b, c];
        idx.sort();
        match idx {
            [0, 0, 0] => XPoly::var(2, 1),
            [0, 0, 1] => XPoly::var(2, 0),
            _ => XPoly::zero(2),
        }
    })
    .unwrap()
}

fn omega() -> Vec<OmegaTerm> {
    vec![OmegaTerm { hbar_power: 1, form: vec![((0, 1), XPoly::one(2))] }]
}

fn flat(order: i32) -> Fwx {
    Fwx::new(FedosovData::new(SymplecticChart::flat(2), omega(), order).unwrap(), order as u32).unwrap()
}

fn plain(order: i32) -> Fwx {
    Fwx::new(FedosovData::flat(2, order), order as u32).unwrap()
}

fn curved(order: i32) -> Fwx {
    Fwx::new(FedosovData::new(curved_chart(), omega(), order).unwrap(), order as u32).unwrap()
}

fn cut(c: &Cochain) -> Cochain {
    c.truncated(N, N as u32)
}

#[test]
fn d_on_zero_cochains_and_product() {
    for f in [flat(N + 2), curved(N + 2)] {
        let a = FormWeyl::y(2, N + 2, 0).pointwise(&FormWeyl::x(2, N + 2, 1));
        let pa = Cochain::from_weyl(&a, f.cap);
        let expect = ops::fedosov_d(f.chart(), f.r(), &a).unwrap();
        assert_eq!(f.extend_d(&pa).to_weyl(), expect);
        let mu = Cochain::mu0(&f.chart().poisson, N + 2, f.cap);
        assert!(cut(&f.extend_d(&mu)).is_zero());
    }
}

#[test]
fn d_forms_agree_and_square_to_zero() {
    let mut g = Gen::new(7);
    for f in [flat(N + 3), curved(N + 3)] {
        let spec = WeylSpec { dim: 2, order: N + 3, terms: 2, max_hbar: 1, max_y: 2, max_x: 1, form_degrees: vec![0, 1] };
        let p = g.cochain(&spec, 1, 1, f.cap);
        let dp = f.extend_d(&p);
        assert_eq!(cut(&dp), cut(&f.extend_d_bracket(&p)));
        for a in spanning_monomials(2, 3) {
            let a = a.with_order(N + 3);
            let lit = f.extend_d_eval(&p, std::slice::from_ref(&a)).unwrap();
            assert_eq!(dp.eval(&[a]).with_order(N - 1), lit.with_order(N - 1));
        }
        assert!(cut(&f.extend_d(&dp)).is_zero());
        let poisson = &f.chart().poisson;
        let lhs = f.extend_d(&p.hochschild_d(poisson)).add(&dp.hochschild_d(poisson));
        assert!(cut(&lhs).is_zero());
    }
}

#[test]
fn alpha_beta_on_flat_data() {
    let f = plain(N);
    let mu = Cochain::mu0(&f.chart().poisson, N, f.cap);
    assert_eq!(f.alpha(&mu).unwrap(), mu);
    let c = Cochain::from_weyl(&FormWeyl::constant(2, N, fedosov::scalar::q(3)), f.cap);
    assert_eq!(f.alpha(&c).unwrap(), c);
    let d1 = Cochain::with_slots(&FormWeyl::one(2, N), &[multi::unit(2, 0)], f.cap);
    let a1 = f.alpha(&d1).unwrap();
    assert_eq!(a1.sigma(), d1);
    let x = |i| FormWeyl::x(2, N, i);
    let poly = x(0).pointwise(&x(0)).pointwise(&x(1)).add(&x(1));
    assert_eq!(f.beta(&a1).eval(std::slice::from_ref(&poly)).unwrap(), poly.deriv_x(0));
    let beta_mu = f.beta(&mu);
    assert_eq!(beta_mu.star(&x(0), &x(1)).unwrap(), f.star.star(&x(0), &x(1)).unwrap());
}

#[test]
fn exactness_witness() {
    let mut g = Gen::new(9);
    let f = curved(N + 2);
    let spec = WeylSpec { dim: 2, order: N + 2, terms: 2, max_hbar: 1, max_y: 2, max_x: 1, form_degrees: vec![0] };
    let q0 = g.cochain(&spec, 1, 1, f.cap);
    let p = f.extend_d(&q0);
    let q = f.transfer_exactness(&p).unwrap();
    assert!(q.sigma().is_zero());
    assert_eq!(cut(&f.extend_d(&q)), cut(&p));
}

#[test]
fn embedding_is_multiplicative() {
    let f = flat(N);
    let dx1 = embed_forms(&FormWeyl::dx(2, N, 0), f.cap).unwrap();
    assert!(f.extend_d(&dx1).is_zero());
    let u = FormWeyl::dx(2, N, 0).mul_xpoly(&XPoly::var(2, 1));
    let v = FormWeyl::dx(2, N, 1).shift_hbar(1);
    let lhs = embed_forms(&u.pointwise(&v), f.cap).unwrap();
    let rhs = embed_forms(&u, f.cap).unwrap().cup(&embed_forms(&v, f.cap).unwrap(), &f.chart().poisson);
    assert_eq!(lhs, rhs);
}

#[test]
fn leading_symbol_of_tau() {
    let f = plain(N);
    let alpha = multi::add(&multi::unit(2, 0), &multi::unit(2, 1));
    let sym = tau_symbol(&f.star, &alpha, 4).unwrap();
    assert_eq!(sym.len(), 1);
    assert_eq!(sym[&alpha], FormWeyl::one(2, N));
}
