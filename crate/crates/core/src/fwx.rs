//! The double complex of form-valued fiberwise cochains with the Fedosov
//! differential, and the maps relating it to functions on the base.

use std::collections::BTreeMap;

use num_traits::One;

use crate::chart::SymplecticChart;
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::exterior;
use crate::fedosov::{FedosovData, StarEval, StarProduct};
use crate::multi::{self, Exps};
use crate::ops;
use crate::scalar::{q, sign, Q};
use crate::weyl::FormWeyl;
use crate::xpoly::XPoly;

/// A solved Fedosov connection with the pieces of D as 1-cochains.
#[derive(Clone, Debug)]
pub struct Fwx {
    pub star: StarProduct,
    pub cap: u32,
    /// X_j = -Gamma^i_{jk} y^k d_i - d_j + (1/hbar) ad(r_j)
    x_ops: Vec<Cochain>,
    gamma_ops: Vec<Cochain>,
}

impl Fwx {
    pub fn new(data: FedosovData, cap: u32) -> Result<Self> {
        Ok(Self::from_star(StarProduct::new(data)?, cap))
    }

    pub fn from_star(star: StarProduct, cap: u32) -> Self {
        let chart = &star.data.chart;
        let (n, order) = (star.dim(), star.order());
        let mut gamma_ops = Vec::new();
        let mut x_ops = Vec::new();
        for j in 0..n {
            let mut g = Cochain::zero(n, order, cap, 1);
            for i in 0..n {
                for k in 0..n {
                    let c = chart.gamma(i, j, k);
                    if c.is_zero() {
                        continue;
                    }
                    let coeff = FormWeyl::y(n, order, k).mul_xpoly(c);
                    g = g.add(&Cochain::with_slots(&coeff, &[multi::unit(n, i)], cap));
                }
            }
            let rj = star.r.component(exterior::single(j));
            let a = inner_derivation(chart, &rj, cap);
            let dy = Cochain::with_slots(&FormWeyl::one(n, order), &[multi::unit(n, j)], cap);
            x_ops.push(g.neg().sub(&dy).add(&a));
            gamma_ops.push(g);
        }
        Self { star, cap, x_ops, gamma_ops }
    }

    pub fn dim(&self) -> usize {
        self.star.dim()
    }

    pub fn order(&self) -> i32 {
        self.star.order()
    }

    pub fn chart(&self) -> &SymplecticChart {
        &self.star.data.chart
    }

    pub fn r(&self) -> &FormWeyl {
        &self.star.r
    }

    /// D P = sum_j dx^j ^ (d_{x^j} P + X_j o P - sum_i P o_i X_j).
    pub fn extend_d(&self, p: &Cochain) -> Cochain {
        let mut out = Cochain::zero(p.dim, p.order, p.cap, p.arity);
        for (j, x) in self.x_ops.iter().enumerate() {
            out = out.add(&Self::commute(x, p).add(&p.deriv_x(j)).wedge_dx_left(j));
        }
        out
    }

    /// D + delta, the part used by the recursions.
    pub fn d_plus_delta(&self, p: &Cochain) -> Cochain {
        self.extend_d(p).add(&p.delta())
    }

    /// X o P - sum_i P o_i X for a 1-cochain X without dx's.
    fn commute(x: &Cochain, p: &Cochain) -> Cochain {
        let mut out = x.insert(0, p);
        for i in 0..p.arity {
            out = out.sub(&p.insert(i, x));
        }
        out
    }

    /// nabla P - delta P + (1/hbar)[d r, P]_G with every piece written as a bracket.
    pub fn extend_d_bracket(&self, p: &Cochain) -> Cochain {
        let (n, order, cap) = (p.dim, p.order, p.cap);
        let mut gamma = Cochain::zero(n, order, cap, 1);
        let mut dy = Cochain::zero(n, order, cap, 1);
        let mut dx_part = Cochain::zero(n, order, cap, p.arity);
        for j in 0..n {
            gamma = gamma.add(&self.gamma_ops[j].wedge_dx_left(j));
            let unit = Cochain::with_slots(&FormWeyl::one(n, order), &[multi::unit(n, j)], cap);
            dy = dy.add(&unit.wedge_dx_left(j));
            dx_part = dx_part.add(&p.deriv_x(j).wedge_dx_left(j));
        }
        let nabla = dx_part.sub(&gamma.gerstenhaber(p));
        let delta = dy.gerstenhaber(p);
        let r = Cochain::from_weyl(self.r(), cap);
        let dr = r.hochschild_d(&self.chart().poisson).shift_hbar(-1);
        nabla.sub(&delta).add(&dr.gerstenhaber(p))
    }

    /// (D P)(a) = D(P(a)) - (-)^q sum_i P(.., D a_i, ..), evaluated directly.
    pub fn extend_d_eval(&self, p: &Cochain, args: &[FormWeyl]) -> Result<FormWeyl> {
        let mut out = FormWeyl::zero(p.dim, p.order);
        for qd in p.form_degrees() {
            let pq = p.exterior_part(qd);
            let mut part = ops::fedosov_d(self.chart(), self.r(), &pq.eval(args))?;
            for i in 0..args.len() {
                let mut a2 = args.to_vec();
                a2[i] = ops::fedosov_d(self.chart(), self.r(), &args[i])?;
                let t = pq.eval(&a2);
                part = if qd % 2 == 1 { part.add(&t) } else { part.sub(&t) };
            }
            out = out.add(&part);
        }
        Ok(out)
    }

    /// The D-closed extension of a delta-closed exterior-degree-0 cochain:
    /// alpha = P + delta^{-1}(nabla alpha + (1/hbar)[d r, alpha]_G).
    pub fn alpha(&self, p: &Cochain) -> Result<Cochain> {
        if p.form_degrees().iter().any(|d| *d != 0) {
            return Err(Error::Precondition("alpha needs an exterior degree 0 cochain".into()));
        }
        if !p.delta().is_zero() {
            return Err(Error::Precondition("alpha needs a delta-closed cochain".into()));
        }
        Ok(self.iterate(p.clone()))
    }

    /// Sums inc, delta^{-1}(D' inc), ... until the increment vanishes.
    fn iterate(&self, first: Cochain) -> Cochain {
        let mut total = first.clone();
        let mut inc = first;
        while !inc.is_zero() {
            inc = self.d_plus_delta(&inc).delta_inv();
            total = total.add(&inc);
        }
        total
    }

    /// Q with D Q = P and sigma(Q) = 0, for D-closed P of exterior degree >= 1:
    /// Q = -delta^{-1} P + delta^{-1}(nabla Q + (1/hbar)[d r, Q]_G).
    pub fn transfer_exactness(&self, p: &Cochain) -> Result<Cochain> {
        if p.form_degrees().contains(&0) {
            return Err(Error::Precondition("transfer_exactness needs exterior degree >= 1".into()));
        }
        Ok(self.iterate(p.delta_inv().neg()))
    }

    /// (beta P)(a_1..a_k) = sigma(P(tau a_1, ..., tau a_k)).
    pub fn beta<'a>(&'a self, p: &'a Cochain) -> Beta<'a> {
        Beta { fwx: self, p }
    }
}

/// (1/hbar) ad(a) = sum_{n odd} 2 hbar^{n-1} K^{alpha beta} d^alpha a (x) d^beta as a 1-cochain.
pub fn inner_derivation(chart: &SymplecticChart, a: &FormWeyl, cap: u32) -> Cochain {
    let mut out = Cochain::zero(a.dim, a.order, cap, 1);
    let mut n = 1usize;
    while n <= a.max_y_degree() as usize && n as u32 <= cap {
        for kt in chart.poisson.kernel(n) {
            let coeff = a.deriv_y_multi(&kt.alpha).mul_xpoly(&kt.coeff).shift_hbar(n as i32 - 1).scale(&q(2));
            out = out.add(&Cochain::with_slots(&coeff, std::slice::from_ref(&kt.beta), cap));
        }
        n += 2;
    }
    out
}

/// Exterior forms with hbar-Laurent polynomial coefficients, as y-free 0-cochains.
pub fn embed_forms(u: &FormWeyl, cap: u32) -> Result<Cochain> {
    if !u.is_y_free() {
        return Err(Error::Precondition("embed_forms needs a y-free form".into()));
    }
    Ok(Cochain::from_weyl(u, cap))
}

/// Local cochain on functions induced by a D-closed fiberwise cochain.
pub struct Beta<'a> {
    pub fwx: &'a Fwx,
    pub p: &'a Cochain,
}

impl Beta<'_> {
    pub fn arity(&self) -> usize {
        self.p.arity
    }

    pub fn eval(&self, args: &[FormWeyl]) -> Result<FormWeyl> {
        let lifted = args.iter().map(|a| self.fwx.star.tau(a)).collect::<Result<Vec<_>>>()?;
        Ok(self.p.eval_sigma(&lifted))
    }
}

impl StarEval for Beta<'_> {
    fn dim(&self) -> usize {
        self.fwx.dim()
    }
    fn order(&self) -> i32 {
        self.fwx.order()
    }
    fn star(&self, a: &FormWeyl, b: &FormWeyl) -> Result<FormWeyl> {
        self.eval(&[a.clone(), b.clone()])
    }
}

/// Coefficients of a polynomial differential operator phi = sum_beta c_beta(x) d_x^beta of
/// order <= max_order, recovered from its values on monomials:
/// c_beta = sum_{gamma + eps = beta} (-x)^eps / eps! phi(x^gamma) / gamma!.
pub fn extract_operator(dim: usize, max_order: u32, mut phi: impl FnMut(&Exps) -> Result<FormWeyl>) -> Result<BTreeMap<Exps, FormWeyl>> {
    let mut values: BTreeMap<Exps, FormWeyl> = BTreeMap::new();
    for gamma in multi::up_to_degree(dim, max_order) {
        let v = phi(&gamma)?;
        values.insert(gamma, v);
    }
    let mut out = BTreeMap::new();
    for beta in multi::up_to_degree(dim, max_order) {
        let mut acc: Option<FormWeyl> = None;
        for gamma in multi::sub_indices(&beta) {
            let eps = multi::sub(&beta, &gamma);
            let v = &values[&gamma];
            let s = sign(multi::degree(&eps) % 2 == 1) / (multi::mfactorial(&eps) * multi::mfactorial(&gamma));
            let t = v.mul_xpoly(&XPoly::monomial(eps, Q::one())).scale(&s);
            acc = Some(match acc {
                Some(a) => a.add(&t),
                None => t,
            });
        }
        if let Some(a) = acc {
            if !a.is_zero() {
                out.insert(beta, a);
            }
        }
    }
    Ok(out)
}

/// The operator a -> d_y^alpha tau(a) at y = 0, extracted up to differential order `max_order`.
pub fn tau_symbol(star: &StarProduct, alpha: &[u8], max_order: u32) -> Result<BTreeMap<Exps, FormWeyl>> {
    let n = star.dim();
    extract_operator(n, max_order, |gamma| {
        let a = FormWeyl::monomial(n, star.order(), 0, 0, multi::zeros(n), gamma.clone(), Q::one());
        Ok(star.tau(&a)?.deriv_y_multi(alpha).sigma())
    })
}
