use fedosov::cochain::Cochain;
use fedosov::poisson::Poisson;
use fedosov::random::{Gen, WeylSpec};

const N: i32 = 6;

fn small(g: &mut Gen, arity: usize, work: i32) -> Cochain {
    let spec = WeylSpec::fiber(2, work, 3, 2);
    g.cochain(&spec, arity, 2, work as u32)
}

fn cut(c: &Cochain) -> Cochain {
    c.truncated(N, N as u32)
}

#[test]
fn hochschild_squares_to_zero_and_matches_bracket() {
    let p = Poisson::standard(2);
    let mut g = Gen::new(1);
    for arity in 0..=2 {
        let a = small(&mut g, arity, N + 2);
        let d = a.hochschild_d(&p);
        assert!(cut(&d.hochschild_d(&p)).is_zero(), "arity {arity}");
        assert_eq!(cut(&d), cut(&a.hochschild_d_bracket(&p)), "arity {arity}");
    }
}

#[test]
fn cup_is_associative_and_derivation() {
    let p = Poisson::standard(2);
    let mut g = Gen::new(2);
    let (a, b, c) = (small(&mut g, 1, N + 2), small(&mut g, 1, N + 2), small(&mut g, 0, N + 2));
    assert_eq!(cut(&a.cup(&b, &p).cup(&c, &p)), cut(&a.cup(&b.cup(&c, &p), &p)));
    let lhs = a.cup(&b, &p).hochschild_d(&p);
    let rhs = a.hochschild_d(&p).cup(&b, &p).sub(&a.cup(&b.hochschild_d(&p), &p));
    assert_eq!(cut(&lhs), cut(&rhs));
}

#[test]
fn bracket_jacobi_and_derivation() {
    let p = Poisson::standard(2);
    let mut g = Gen::new(3);
    let w = N + 4;
    let (a, b, c) = (small(&mut g, 1, w), small(&mut g, 2, w), small(&mut g, 1, w));
    let sgn = |k: i64| if k % 2 == 0 { 1 } else { -1 };
    let (ka, kb, kc) = (0i64, 1i64, 0i64);
    let j1 = a.gerstenhaber(&b.gerstenhaber(&c));
    let j2 = b.gerstenhaber(&c.gerstenhaber(&a));
    let j3 = c.gerstenhaber(&a.gerstenhaber(&b));
    let total = j1
        .scale(&fedosov::scalar::q(sgn(ka * kc)))
        .add(&j2.scale(&fedosov::scalar::q(sgn(kb * ka))))
        .add(&j3.scale(&fedosov::scalar::q(sgn(kc * kb))));
    assert!(cut(&total).is_zero());
    for (x, y) in [(&a, &b), (&a, &c), (&b, &a)] {
        let (kx, ky) = (x.arity as i64, y.arity as i64);
        let lhs = x.gerstenhaber(y).hochschild_d(&p);
        let rhs = x
            .hochschild_d(&p)
            .gerstenhaber(y)
            .scale(&fedosov::scalar::q(sgn(ky + 1)))
            .add(&x.gerstenhaber(&y.hochschild_d(&p)));
        assert_eq!(cut(&lhs), cut(&rhs), "arities {kx} {ky}");
        if kx % 2 == 1 && ky % 2 == 1 {
            let printed = x.hochschild_d(&p).gerstenhaber(y).add(&x.gerstenhaber(&y.hochschild_d(&p)).scale(&fedosov::scalar::q(sgn(kx - 1))));
            assert_eq!(cut(&lhs), cut(&printed));
        }
    }
}
