//! The basic operators on Weyl-valued forms: delta, its homotopy, the symplectic
//! connection, the curvature section and the Fedosov connection D.


use crate::chart::SymplecticChart;
use crate::error::{Error, Result};
use crate::exterior;
use crate::linear::LinComb;
use crate::multi;
use crate::scalar::{q, qf, sign};
use crate::weyl::{FKey, FormWeyl};

/// delta a = dx^i ^ d a / dy^i.
pub fn delta(a: &FormWeyl) -> FormWeyl {
    let mut out = FormWeyl::zero(a.dim, a.order);
    for i in 0..a.dim {
        out = out.add(&a.deriv_y(i).wedge_dx_left(i));
    }
    out
}

/// delta^{-1} on a monomial y^p dx^S: y^k i(d/dx^k) summed over k in S, divided by |p| + |S|.
/// Terms with |p| + |S| = 0 are sent to zero.
pub fn delta_inv(a: &FormWeyl) -> FormWeyl {
    let mut t = LinComb::new();
    for (k, c) in &a.terms {
        let deg = exterior::degree(k.form);
        let total = multi::degree(&k.y) + deg;
        if deg == 0 || total == 0 {
            continue;
        }
        let w = c / q(total as i64);
        for idx in exterior::indices(k.form) {
            let (form, odd) = exterior::contract(idx, k.form).expect("index present");
            let mut y = k.y.clone();
            y[idx] += 1;
            t.add_term(FKey { form, hbar: k.hbar, y, x: k.x.clone() }, sign(odd) * &w);
        }
    }
    FormWeyl::from_terms(a.dim, a.order, t)
}

/// The part of a with zero y-degree and zero form degree.
pub fn sigma(a: &FormWeyl) -> FormWeyl {
    a.sigma()
}

/// d_{x^i} a - Gamma^j_{ik} y^k d_{y^j} a.
pub fn covariant_component(chart: &SymplecticChart, a: &FormWeyl, i: usize) -> FormWeyl {
    let mut out = a.deriv_x(i);
    for j in 0..chart.dim {
        let dy = a.deriv_y(j);
        if dy.is_zero() {
            continue;
        }
        for k in 0..chart.dim {
            let g = chart.gamma(j, i, k);
            if g.is_zero() {
                continue;
            }
            out = out.sub(&dy.pointwise(&FormWeyl::y(a.dim, a.order, k)).mul_xpoly(g));
        }
    }
    out
}

/// nabla a = dx^i ^ (d_{x^i} a - Gamma^j_{ik} y^k d_{y^j} a).
pub fn nabla(chart: &SymplecticChart, a: &FormWeyl) -> FormWeyl {
    check_dim(chart, a);
    let mut out = FormWeyl::zero(a.dim, a.order);
    for i in 0..chart.dim {
        out = out.add(&covariant_component(chart, a, i).wedge_dx_left(i));
    }
    out
}

/// R = 1/4 omega_{km} (R_{ij})^m_l y^k y^l dx^i dx^j, normalized so that nabla^2 = (1/hbar)[R, .].
pub fn curvature_r(chart: &SymplecticChart, order: i32) -> FormWeyl {
    let n = chart.dim;
    let riem = chart.riemann();
    let mut out = FormWeyl::zero(n, order);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (form, odd) = exterior::from_indices(&[i, j]).expect("distinct");
            for k in 0..n {
                for l in 0..n {
                    let mut coeff = crate::xpoly::XPoly::zero(n);
                    for m in 0..n {
                        coeff = coeff.add(&chart.omega_lower[k][m].mul(&riem[i][j][m][l]));
                    }
                    if coeff.is_zero() {
                        continue;
                    }
                    let y = multi::add(&multi::unit(n, k), &multi::unit(n, l));
                    let c = sign(odd) * qf(1, 4);
                    let mono = FormWeyl::monomial(n, order, form, 0, y, multi::zeros(n), c);
                    out = out.add(&mono.mul_xpoly(&coeff));
                }
            }
        }
    }
    out
}

fn check_dim(chart: &SymplecticChart, a: &FormWeyl) {
    assert_eq!(chart.dim, a.dim, "dimension mismatch");
}

/// Checks that r is a Weyl-valued 1-form of filtration degree at least 3.
pub fn check_r(r: &FormWeyl) -> Result<()> {
    if !r.is_zero() && !r.is_homogeneous_degree(1) {
        return Err(Error::Precondition("r must be a 1-form".into()));
    }
    if let Some(d) = r.filtration_degree() {
        if d < 3 {
            return Err(Error::Precondition(format!("r has filtration degree {d} < 3")));
        }
    }
    Ok(())
}

/// D a = nabla a - delta a + (1/hbar)[r, a].
pub fn fedosov_d(chart: &SymplecticChart, r: &FormWeyl, a: &FormWeyl) -> Result<FormWeyl> {
    check_r(r)?;
    let mut out = nabla(chart, a).sub(&delta(a));
    if !r.is_zero() {
        out = out.add(&chart.poisson.hbar_commutator(r, a));
    }
    Ok(out)
}

/// (1/hbar) r o r for a 1-form r, i.e. half of (1/hbar)[r, r].
pub fn hbar_square(chart: &SymplecticChart, r: &FormWeyl) -> FormWeyl {
    chart.poisson.hbar_commutator(r, r).scale(&qf(1, 2))
}

/// Omega_r = R - delta r + nabla r + (1/hbar) r o r.
pub fn weyl_curvature_class(chart: &SymplecticChart, r: &FormWeyl) -> Result<FormWeyl> {
    check_r(r)?;
    let order = r.order;
    Ok(curvature_r(chart, order).sub(&delta(r)).add(&nabla(chart, r)).add(&hbar_square(chart, r)))
}

/// The weight-lowering part of D, used in fixed-point iterations: D + delta.
pub fn d_plus_delta(chart: &SymplecticChart, r: &FormWeyl, a: &FormWeyl) -> FormWeyl {
    let mut out = nabla(chart, a);
    if !r.is_zero() {
        out = out.add(&chart.poisson.hbar_commutator(r, a));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xpoly::XPoly;

    fn y(i: usize) -> FormWeyl {
        FormWeyl::y(2, 6, i)
    }
    fn dx(i: usize) -> FormWeyl {
        FormWeyl::dx(2, 6, i)
    }

    fn curved() -> SymplecticChart {
        SymplecticChart::from_symmetric_tensor(2, &|a, b, c| {
            let mut idx = [a, b, c];
            idx.sort();
            match idx {
                [0, 0, 0] => XPoly::var(2, 1),
                [0, 0, 1] => XPoly::var(2, 0),
                [1, 1, 1] => XPoly::var(2, 0),
                _ => XPoly::zero(2),
            }
        })
        .unwrap()
    }

    #[test]
    fn delta_examples() {
        let a = y(0).pointwise(&y(1));
        assert_eq!(delta(&a), dx(0).pointwise(&y(1)).add(&dx(1).pointwise(&y(0))));
        let b = y(0).pointwise(&dx(1));
        assert_eq!(delta_inv(&b), a.scale(&qf(1, 2)));
    }

    #[test]
    fn hodge_decomposition_on_monomials() {
        let a = y(0).pointwise(&y(0)).pointwise(&dx(1)).add(&y(1).pointwise(&dx(0)).pointwise(&dx(1)));
        let lhs = delta(&delta_inv(&a)).add(&delta_inv(&delta(&a))).add(&sigma(&a));
        assert_eq!(lhs, a);
    }

    #[test]
    fn nabla_example() {
        let flat = SymplecticChart::flat(2);
        let mut g = flat.christoffel.clone();
        g[0][0][0] = XPoly::var(2, 1);
        let chart = SymplecticChart::new_unchecked(flat.omega_lower, flat.omega_upper, g).unwrap();
        let expected = dx(0).pointwise(&y(0)).mul_xpoly(&XPoly::var(2, 1)).neg();
        assert_eq!(nabla(&chart, &y(0)), expected);
    }

    #[test]
    fn flat_d_of_y() {
        let chart = SymplecticChart::flat(2);
        let r = FormWeyl::zero(2, 6);
        assert_eq!(fedosov_d(&chart, &r, &y(0)).unwrap(), dx(0).neg());
    }

    #[test]
    fn nabla_squared_is_curvature_commutator() {
        let chart = curved();
        let rr = curvature_r(&chart, 6);
        assert!(!rr.is_zero());
        let a = y(0).pointwise(&y(0)).pointwise(&y(1)).mul_xpoly(&XPoly::var(2, 0)).add(&y(1));
        let lhs = nabla(&chart, &nabla(&chart, &a));
        let rhs = chart.poisson.hbar_commutator(&rr, &a);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bianchi_identities() {
        let chart = curved();
        let rr = curvature_r(&chart, 6);
        assert!(delta(&rr).is_zero());
        assert!(nabla(&chart, &rr).is_zero());
    }
}
