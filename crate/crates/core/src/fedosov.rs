//! Fedosov's recursions: the connection 1-form r, the horizontal lift tau, the
//! star product, its class, and gauge conjugation of star products.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::One;

use crate::chart::SymplecticChart;
use crate::error::{Error, Result};
use crate::exterior;
use crate::multi::{self, Exps};
use crate::ops::{self, delta_inv, nabla};
use crate::linear::LinComb;
use crate::scalar::{binomial, q, sign, Q};
use crate::weyl::FormWeyl;
use crate::xpoly::XPoly;

/// A closed 2-form omega_k entering Omega at hbar^k.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaTerm {
    pub hbar_power: i32,
    /// Coefficients on dx^i dx^j (0-based, any order; (i, j) and (j, i) are combined with sign).
    pub form: Vec<((usize, usize), XPoly)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FedosovData {
    pub chart: SymplecticChart,
    pub omega: Vec<OmegaTerm>,
    pub order: i32,
}

/// Exterior derivative of a y-free form.
pub fn exterior_d(a: &FormWeyl) -> FormWeyl {
    let mut out = FormWeyl::zero(a.dim, a.order);
    for i in 0..a.dim {
        out = out.add(&a.deriv_x(i).wedge_dx_left(i));
    }
    out
}

impl FedosovData {
    pub fn new(chart: SymplecticChart, omega: Vec<OmegaTerm>, order: i32) -> Result<Self> {
        let data = Self { chart, omega, order };
        data.validate()?;
        Ok(data)
    }

    pub fn flat(dim: usize, order: i32) -> Self {
        Self { chart: SymplecticChart::flat(dim), omega: Vec::new(), order }
    }

    pub fn dim(&self) -> usize {
        self.chart.dim
    }

    pub fn validate(&self) -> Result<()> {
        self.chart.validate()?;
        for t in &self.omega {
            if t.hbar_power < 1 {
                return Err(Error::BadOmegaPower(t.hbar_power));
            }
            for ((i, j), _) in &t.form {
                if i == j || *i >= self.dim() || *j >= self.dim() {
                    return Err(Error::OmegaNotTwoForm(t.hbar_power));
                }
            }
            let f = Self::form_of(self.dim(), t, self.order.max(2 * t.hbar_power));
            if !exterior_d(&f).is_zero() {
                return Err(Error::OmegaNotClosed(t.hbar_power));
            }
        }
        Ok(())
    }

    fn form_of(dim: usize, t: &OmegaTerm, order: i32) -> FormWeyl {
        let mut out = FormWeyl::zero(dim, order);
        for ((i, j), p) in &t.form {
            let (form, odd) = exterior::from_indices(&[*i, *j]).expect("distinct indices");
            let mono = FormWeyl::monomial(dim, order, form, t.hbar_power, multi::zeros(dim), multi::zeros(dim), sign(odd));
            out = out.add(&mono.mul_xpoly(p));
        }
        out
    }

    /// Omega = sum_k hbar^k omega_k as a central 2-form, truncated at the data order.
    pub fn omega_form(&self) -> FormWeyl {
        let mut out = FormWeyl::zero(self.dim(), self.order);
        for t in &self.omega {
            out = out.add(&Self::form_of(self.dim(), t, self.order));
        }
        out
    }
}

/// Iterates r = delta^{-1}(R - Omega) + delta^{-1}(nabla r + (1/hbar) r o r) to its fixed point.
pub fn solve_r(data: &FedosovData) -> Result<FormWeyl> {
    data.validate()?;
    let chart = &data.chart;
    let base = delta_inv(&ops::curvature_r(chart, data.order).sub(&data.omega_form()));
    let mut r = base.clone();
    for _ in 0..(data.order + 3) {
        let next = base.add(&delta_inv(&nabla(chart, &r).add(&ops::hbar_square(chart, &r))));
        if next == r {
            return Ok(r);
        }
        r = next;
    }
    Ok(r)
}

fn check_scalar_input(a: &FormWeyl) -> Result<()> {
    if !a.is_y_free() || !a.is_homogeneous_degree(0) && !a.is_zero() {
        return Err(Error::Precondition("expected a y-free function of x and hbar".into()));
    }
    Ok(())
}

/// Horizontal lift: the fixed point of tau = a + delta^{-1}(nabla tau + (1/hbar)[r, tau]).
pub fn tau(a: &FormWeyl, chart: &SymplecticChart, r: &FormWeyl) -> Result<FormWeyl> {
    check_scalar_input(a)?;
    ops::check_r(r)?;
    let order = a.order.min(r.order);
    let a = a.with_order(order);
    // linear recursion: iterate on increments, which strictly gain filtration weight
    let mut t = a.clone();
    let mut inc = a;
    while !inc.is_zero() {
        inc = delta_inv(&ops::d_plus_delta(chart, r, &inc));
        t = t.add(&inc);
    }
    Ok(t)
}

/// A solved Fedosov connection together with its data.
#[derive(Clone, Debug)]
pub struct StarProduct {
    pub data: FedosovData,
    pub r: FormWeyl,
    lifts: Arc<Mutex<HashMap<(i32, Exps), FormWeyl>>>,
}

impl StarProduct {
    pub fn new(data: FedosovData) -> Result<Self> {
        let r = solve_r(&data)?;
        Ok(Self::with_r(data, r))
    }

    pub fn with_r(data: FedosovData, r: FormWeyl) -> Self {
        Self { data, r, lifts: Arc::default() }
    }

    pub fn dim(&self) -> usize {
        self.data.dim()
    }

    pub fn order(&self) -> i32 {
        self.data.order
    }

    /// tau, assembled monomial by monomial from a cache.
    pub fn tau(&self, a: &FormWeyl) -> Result<FormWeyl> {
        check_scalar_input(a)?;
        let order = a.order.min(self.order());
        let mut out = LinComb::new();
        for (k, c) in &a.terms {
            if 2 * k.hbar > order {
                continue;
            }
            let key = (k.hbar, k.x.clone());
            let cached = self.lifts.lock().unwrap().get(&key).cloned();
            let t = match cached {
                Some(t) => t,
                None => {
                    let m = FormWeyl::from_terms(self.dim(), self.order(), LinComb::single(k.clone(), q(1)));
                    let t = tau(&m, &self.data.chart, &self.r)?;
                    self.lifts.lock().unwrap().insert(key, t.clone());
                    t
                }
            };
            out.add_scaled(&t.terms, c);
        }
        Ok(FormWeyl::from_terms(self.dim(), order, out))
    }

    /// Embeds an XPoly as an hbar-free input.
    pub fn lift(&self, p: &XPoly) -> FormWeyl {
        FormWeyl::from_xpoly(p, self.order())
    }
}

/// Anything that multiplies hbar-Laurent polynomials in x.
pub trait StarEval {
    fn dim(&self) -> usize;
    fn order(&self) -> i32;
    fn star(&self, a: &FormWeyl, b: &FormWeyl) -> Result<FormWeyl>;
}

impl StarEval for StarProduct {
    fn dim(&self) -> usize {
        self.data.dim()
    }
    fn order(&self) -> i32 {
        self.data.order
    }
    /// sigma(tau(a) o tau(b)).
    fn star(&self, a: &FormWeyl, b: &FormWeyl) -> Result<FormWeyl> {
        let ta = self.tau(a)?;
        let tb = self.tau(b)?;
        Ok(self.data.chart.poisson.sigma_product(&ta, &tb))
    }
}

pub fn star(a: &FormWeyl, b: &FormWeyl, data: &FedosovData) -> Result<FormWeyl> {
    StarProduct::new(data.clone())?.star(a, b)
}

/// Omega_F = (1/hbar)(-omega + Omega), with omega = omega_{ij} dx^i dx^j summed over all i, j.
pub fn fedosov_class(data: &FedosovData) -> FormWeyl {
    let n = data.dim();
    let mut out = data.omega_form().shift_hbar(-1);
    for ((i, j), c) in data.chart.omega_two_form() {
        let (form, odd) = exterior::from_indices(&[i, j]).expect("distinct");
        let mono = FormWeyl::monomial(n, data.order, form, -1, multi::zeros(n), multi::zeros(n), -sign(odd));
        out = out.add(&mono.mul_xpoly(&c));
    }
    out
}

/// Differential operator id + sum_k hbar^k sum_alpha c_{k,alpha}(x) d_x^alpha.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct GaugeOperator {
    pub terms: BTreeMap<i32, BTreeMap<Exps, XPoly>>,
}

impl GaugeOperator {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(terms: BTreeMap<i32, BTreeMap<Exps, XPoly>>) -> Result<Self> {
        if let Some(k) = terms.keys().find(|k| **k < 1) {
            return Err(Error::BadGauge(format!("hbar power {k} must be at least 1")));
        }
        let mut g = Self { terms };
        g.normalize();
        Ok(g)
    }

    fn normalize(&mut self) {
        for m in self.terms.values_mut() {
            m.retain(|_, c| !c.is_zero());
        }
        self.terms.retain(|_, m| !m.is_empty());
    }

    /// Applies only the hbar-positive part Q - id.
    fn apply_tail(&self, a: &FormWeyl) -> FormWeyl {
        let mut out = FormWeyl::zero(a.dim, a.order);
        for (k, ops) in &self.terms {
            for (alpha, c) in ops {
                let mut d = a.clone();
                for (i, &e) in alpha.iter().enumerate() {
                    for _ in 0..e {
                        d = d.deriv_x(i);
                    }
                }
                out = out.add(&d.mul_xpoly(c).shift_hbar(*k));
            }
        }
        out
    }

    pub fn apply(&self, a: &FormWeyl) -> FormWeyl {
        a.add(&self.apply_tail(a))
    }

    /// Q^{-1} a as the geometric series sum_n (-(Q - id))^n a.
    pub fn apply_inverse(&self, a: &FormWeyl) -> FormWeyl {
        let mut out = a.clone();
        let mut cur = a.clone();
        loop {
            cur = self.apply_tail(&cur).neg();
            if cur.is_zero() {
                return out;
            }
            out = out.add(&cur);
        }
    }

    /// The operator a -> self(other(a)).
    pub fn compose(&self, other: &Self, dim: usize) -> Self {
        let mut terms: BTreeMap<i32, BTreeMap<Exps, XPoly>> = BTreeMap::new();
        let mut push = |k: i32, e: Exps, c: XPoly| {
            let m = terms.entry(k).or_default();
            let slot = m.entry(e).or_insert_with(|| XPoly::zero(dim));
            *slot = slot.add(&c);
        };
        for (k, m) in self.terms.iter().chain(other.terms.iter()) {
            for (e, c) in m {
                push(*k, e.clone(), c.clone());
            }
        }
        // c1 d^alpha (c2 d^beta) = sum_{gamma <= alpha} binom(alpha, gamma) c1 (d^gamma c2) d^{alpha - gamma + beta}
        for (k1, m1) in &self.terms {
            for (alpha, c1) in m1 {
                for (k2, m2) in &other.terms {
                    for (beta, c2) in m2 {
                        for gamma in multi::sub_indices(alpha) {
                            let mut dc2 = c2.clone();
                            let mut coeff = Q::one();
                            for (i, &g) in gamma.iter().enumerate() {
                                coeff *= binomial(alpha[i] as u32, g as u32);
                                for _ in 0..g {
                                    dc2 = dc2.deriv(i);
                                }
                            }
                            let e = multi::add(&multi::sub(alpha, &gamma), beta);
                            push(k1 + k2, e, c1.mul(&dc2).scale(&coeff));
                        }
                    }
                }
            }
        }
        let mut g = Self { terms };
        g.normalize();
        g
    }
}

/// (a, b) -> Q^{-1}((Q a) * (Q b)).
pub struct GaugedStar<'a> {
    pub inner: &'a dyn StarEval,
    pub gauge: GaugeOperator,
}

impl StarEval for GaugedStar<'_> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn order(&self) -> i32 {
        self.inner.order()
    }
    fn star(&self, a: &FormWeyl, b: &FormWeyl) -> Result<FormWeyl> {
        let p = self.inner.star(&self.gauge.apply(a), &self.gauge.apply(b))?;
        Ok(self.gauge.apply_inverse(&p))
    }
}

pub fn apply_gauge(inner: &dyn StarEval, gauge: GaugeOperator) -> GaugedStar<'_> {
    GaugedStar { inner, gauge }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};

    fn x(i: usize) -> FormWeyl {
        FormWeyl::x(2, 6, i)
    }

    #[test]
    fn flat_r_is_zero() {
        assert!(solve_r(&FedosovData::flat(2, 6)).unwrap().is_zero());
    }

    #[test]
    fn tau_examples() {
        let sp = StarProduct::new(FedosovData::flat(2, 6)).unwrap();
        let y1 = FormWeyl::y(2, 6, 0);
        assert_eq!(sp.tau(&x(0)).unwrap(), x(0).add(&y1));
        let sq = x(0).pointwise(&x(0));
        let expect = sq.add(&x(0).pointwise(&y1).scale(&q(2))).add(&y1.pointwise(&y1));
        assert_eq!(sp.tau(&sq).unwrap(), expect);
        let one = FormWeyl::one(2, 6);
        assert_eq!(sp.tau(&one).unwrap(), one);
    }

    #[test]
    fn star_example() {
        let sp = StarProduct::new(FedosovData::flat(2, 6)).unwrap();
        let ab = sp.star(&x(0), &x(1)).unwrap();
        let expect = x(0).pointwise(&x(1)).add(&FormWeyl::hbar_pow(2, 6, 1).scale(&qf(1, 2)));
        assert_eq!(ab, expect);
        let ba = sp.star(&x(1), &x(0)).unwrap();
        assert_eq!(ab.sub(&ba), FormWeyl::hbar_pow(2, 6, 1));
    }

    #[test]
    fn omega_closedness_checked() {
        let flat = FedosovData::flat(4, 6);
        let bad = OmegaTerm { hbar_power: 1, form: vec![((0, 1), XPoly::var(4, 2))] };
        assert!(matches!(FedosovData::new(flat.chart.clone(), vec![bad], 6), Err(Error::OmegaNotClosed(1))));
        let power0 = OmegaTerm { hbar_power: 0, form: vec![((0, 1), XPoly::one(4))] };
        assert!(matches!(FedosovData::new(flat.chart, vec![power0], 6), Err(Error::BadOmegaPower(0))));
    }

    #[test]
    fn class_identity() {
        let flat = FedosovData::flat(2, 6);
        let data = FedosovData::new(flat.chart, vec![OmegaTerm { hbar_power: 1, form: vec![((0, 1), XPoly::one(2))] }], 6).unwrap();
        let class = fedosov_class(&data);
        let mut omega = FormWeyl::zero(2, 6);
        for ((i, j), c) in data.chart.omega_two_form() {
            let (f, odd) = exterior::from_indices(&[i, j]).unwrap();
            omega = omega.add(&FormWeyl::monomial(2, 6, f, 0, multi::zeros(2), multi::zeros(2), sign(odd)).mul_xpoly(&c));
        }
        assert_eq!(class.shift_hbar(1).add(&omega), data.omega_form());
    }

    #[test]
    fn gauge_identity_and_inverse() {
        let sp = StarProduct::new(FedosovData::flat(2, 6)).unwrap();
        let g = apply_gauge(&sp, GaugeOperator::identity());
        assert_eq!(g.star(&x(0), &x(1)).unwrap(), sp.star(&x(0), &x(1)).unwrap());
        let mut t = BTreeMap::new();
        t.insert(1, BTreeMap::from([(multi::unit(2, 0), XPoly::var(2, 1))]));
        let q1 = GaugeOperator::new(t).unwrap();
        let a = x(0).pointwise(&x(0)).pointwise(&x(1));
        assert_eq!(q1.apply_inverse(&q1.apply(&a)), a);
    }

    pub(crate) fn curved_data(order: i32, with_omega: bool) -> FedosovData {
        let chart = SymplecticChart::from_symmetric_tensor(2, &|a, b, c| {
            let mut idx = [a, b, c];
            idx.sort();
            match idx {
                [0, 0, 0] => XPoly::var(2, 1),
                [0, 0, 1] => XPoly::var(2, 0),
                [1, 1, 1] => XPoly::var(2, 0),
                _ => XPoly::zero(2),
            }
        })
        .unwrap();
        let omega = if with_omega { vec![OmegaTerm { hbar_power: 1, form: vec![((0, 1), XPoly::one(2))] }] } else { vec![] };
        FedosovData::new(chart, omega, order).unwrap()
    }

    #[test]
    fn curved_fixed_point_and_flatness() {
        for with_omega in [false, true] {
            let data = curved_data(8, with_omega);
            let r = solve_r(&data).unwrap();
            assert!(delta_inv(&r).is_zero());
            let class = ops::weyl_curvature_class(&data.chart, &r).unwrap();
            assert_eq!(class.with_order(6), data.omega_form().with_order(6));
            let a = FormWeyl::y(2, 8, 0).pointwise(&FormWeyl::y(2, 8, 1)).mul_xpoly(&XPoly::var(2, 0)).add(&FormWeyl::x(2, 8, 1));
            let da = ops::fedosov_d(&data.chart, &r, &a).unwrap();
            assert!(ops::fedosov_d(&data.chart, &r, &da).unwrap().with_order(6).is_zero());
            let sp = StarProduct::with_r(data.clone(), r);
            let t = sp.tau(&FormWeyl::x(2, 8, 0).pointwise(&FormWeyl::x(2, 8, 1))).unwrap();
            assert!(ops::fedosov_d(&data.chart, &sp.r, &t).unwrap().with_order(7).is_zero());
        }
    }
}
