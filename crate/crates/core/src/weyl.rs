//! Sections of the Weyl bundle and exterior forms with values in it.
//!
//! A term is hbar^k x^e y^p dx^S with an exact rational coefficient. Every value
//! carries a truncation order N and only stores terms of filtration weight
//! 2k + |p| <= N.

use std::ops::Deref;

use num_traits::One;

use crate::exterior::{self, Form};
use crate::linear::LinComb;
use crate::multi::{self, Exps};
use crate::scalar::{q, sign, Q};
use crate::xpoly::{HbarScalar, XPoly};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FKey {
    pub form: Form,
    pub hbar: i32,
    pub y: Exps,
    pub x: Exps,
}

impl FKey {
    pub fn weight(&self) -> i32 {
        2 * self.hbar + multi::degree(&self.y) as i32
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormWeyl {
    pub dim: usize,
    pub order: i32,
    pub terms: LinComb<FKey>,
}

impl FormWeyl {
    pub fn zero(dim: usize, order: i32) -> Self {
        Self { dim, order, terms: LinComb::new() }
    }

    pub fn from_terms(dim: usize, order: i32, terms: LinComb<FKey>) -> Self {
        let mut f = Self { dim, order, terms };
        f.truncate_in_place();
        f
    }

    pub fn monomial(dim: usize, order: i32, form: Form, hbar: i32, y: Exps, x: Exps, c: Q) -> Self {
        Self::from_terms(dim, order, LinComb::single(FKey { form, hbar, y, x }, c))
    }

    pub fn constant(dim: usize, order: i32, c: Q) -> Self {
        Self::monomial(dim, order, 0, 0, multi::zeros(dim), multi::zeros(dim), c)
    }

    pub fn one(dim: usize, order: i32) -> Self {
        Self::constant(dim, order, Q::one())
    }

    /// Fiber coordinate y^i (0-based).
    pub fn y(dim: usize, order: i32, i: usize) -> Self {
        Self::monomial(dim, order, 0, 0, multi::unit(dim, i), multi::zeros(dim), Q::one())
    }

    /// Base coordinate x^i (0-based).
    pub fn x(dim: usize, order: i32, i: usize) -> Self {
        Self::monomial(dim, order, 0, 0, multi::zeros(dim), multi::unit(dim, i), Q::one())
    }

    pub fn dx(dim: usize, order: i32, i: usize) -> Self {
        Self::monomial(dim, order, exterior::single(i), 0, multi::zeros(dim), multi::zeros(dim), Q::one())
    }

    pub fn hbar_pow(dim: usize, order: i32, k: i32) -> Self {
        Self::monomial(dim, order, 0, k, multi::zeros(dim), multi::zeros(dim), Q::one())
    }

    pub fn from_xpoly(p: &XPoly, order: i32) -> Self {
        let dim = p.dim;
        let terms = p.terms.map_terms(|e, c| {
            Some((FKey { form: 0, hbar: 0, y: multi::zeros(dim), x: e.clone() }, c.clone()))
        });
        Self::from_terms(dim, order, terms)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn with_order(&self, order: i32) -> Self {
        Self::from_terms(self.dim, order, self.terms.clone())
    }

    fn truncate_in_place(&mut self) {
        let n = self.order;
        self.terms.retain(|k| k.weight() <= n);
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let mut t = self.terms.clone();
        t.add_assign(&o.terms);
        Self::from_terms(self.dim, self.order.min(o.order), t)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        let mut t = self.terms.clone();
        t.sub_assign(&o.terms);
        Self::from_terms(self.dim, self.order.min(o.order), t)
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self { dim: self.dim, order: self.order, terms: self.terms.scale(s) }
    }

    pub fn neg(&self) -> Self {
        Self { dim: self.dim, order: self.order, terms: self.terms.neg() }
    }

    /// Multiply by hbar^k (k may be negative).
    pub fn shift_hbar(&self, k: i32) -> Self {
        let terms = self.terms.map_terms(|key, c| {
            let mut k2 = key.clone();
            k2.hbar += k;
            Some((k2, c.clone()))
        });
        Self::from_terms(self.dim, self.order, terms)
    }

    pub fn mul_hbar_scalar(&self, s: &HbarScalar) -> Self {
        let mut out = Self::zero(self.dim, self.order);
        for (k, c) in &s.terms {
            out = out.add(&self.shift_hbar(*k).scale(c));
        }
        out
    }

    pub fn mul_xpoly(&self, p: &XPoly) -> Self {
        let mut t = LinComb::new();
        for (key, c) in &self.terms {
            for (e, cp) in &p.terms {
                let mut k2 = key.clone();
                k2.x = multi::add(&key.x, e);
                t.add_term(k2, c * cp);
            }
        }
        Self::from_terms(self.dim, self.order, t)
    }

    /// Commutative product in (x, y) with dx's wedged in order (self first).
    pub fn pointwise(&self, o: &Self) -> Self {
        self.check(o);
        let order = self.order.min(o.order);
        let mut t = LinComb::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                if a.weight() + b.weight() > order {
                    continue;
                }
                let Some((form, odd)) = exterior::wedge(a.form, b.form) else { continue };
                let key = FKey { form, hbar: a.hbar + b.hbar, y: multi::add(&a.y, &b.y), x: multi::add(&a.x, &b.x) };
                t.add_term(key, sign(odd) * ca * cb);
            }
        }
        Self::from_terms(self.dim, order, t)
    }

    /// dx^i ^ self.
    pub fn wedge_dx_left(&self, i: usize) -> Self {
        let s = exterior::single(i);
        let terms = self.terms.map_terms(|k, c| {
            let (form, odd) = exterior::wedge(s, k.form)?;
            Some((FKey { form, ..k.clone() }, sign(odd) * c))
        });
        Self { dim: self.dim, order: self.order, terms }
    }

    pub fn deriv_y(&self, i: usize) -> Self {
        let terms = self.terms.map_terms(|k, c| {
            (k.y[i] > 0).then(|| {
                let mut k2 = k.clone();
                k2.y[i] -= 1;
                (k2, c * q(k.y[i] as i64))
            })
        });
        Self { dim: self.dim, order: self.order, terms }
    }

    /// d^alpha / dy^alpha.
    pub fn deriv_y_multi(&self, alpha: &[u8]) -> Self {
        let terms = self.terms.map_terms(|k, c| {
            multi::le(alpha, &k.y).then(|| {
                let coeff = multi::deriv_coeff(&k.y, alpha);
                (FKey { y: multi::sub(&k.y, alpha), ..k.clone() }, c * coeff)
            })
        });
        Self { dim: self.dim, order: self.order, terms }
    }

    pub fn deriv_x(&self, i: usize) -> Self {
        let terms = self.terms.map_terms(|k, c| {
            (k.x[i] > 0).then(|| {
                let mut k2 = k.clone();
                k2.x[i] -= 1;
                (k2, c * q(k.x[i] as i64))
            })
        });
        Self { dim: self.dim, order: self.order, terms }
    }

    /// Minimum of 2k + |p| over stored terms; None encodes +infinity (zero input).
    pub fn filtration_degree(&self) -> Option<i32> {
        self.terms.keys().map(FKey::weight).min()
    }

    pub fn min_hbar(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.hbar).min()
    }

    pub fn max_y_degree(&self) -> u32 {
        self.terms.keys().map(|k| multi::degree(&k.y)).max().unwrap_or(0)
    }

    pub fn is_y_free(&self) -> bool {
        self.terms.keys().all(|k| multi::is_zero(&k.y))
    }

    /// Exterior degrees present.
    pub fn form_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|k| exterior::degree(k.form)).collect();
        d.sort();
        d.dedup();
        d
    }

    pub fn is_homogeneous_degree(&self, q: u32) -> bool {
        self.terms.keys().all(|k| exterior::degree(k.form) == q)
    }

    /// Component of exterior degree q.
    pub fn degree_part(&self, q: u32) -> Self {
        let mut t = self.terms.clone();
        t.retain(|k| exterior::degree(k.form) == q);
        Self { dim: self.dim, order: self.order, terms: t }
    }

    /// Coefficient of dx^S as a 0-form.
    pub fn component(&self, s: Form) -> Self {
        let terms = self.terms.map_terms(|k, c| (k.form == s).then(|| (FKey { form: 0, ..k.clone() }, c.clone())));
        Self { dim: self.dim, order: self.order, terms }
    }

    /// dx^S ^ self for a 0-form self.
    pub fn with_form(&self, s: Form) -> Self {
        let terms = self.terms.map_terms(|k, c| {
            let (form, odd) = exterior::wedge(s, k.form)?;
            Some((FKey { form, ..k.clone() }, sign(odd) * c))
        });
        Self { dim: self.dim, order: self.order, terms }
    }

    pub fn forms(&self) -> Vec<Form> {
        let mut f: Vec<Form> = self.terms.keys().map(|k| k.form).collect();
        f.sort();
        f.dedup();
        f
    }

    /// Evaluation at y = 0, dx = 0.
    pub fn sigma(&self) -> Self {
        let terms = self
            .terms
            .map_terms(|k, c| (k.form == 0 && multi::is_zero(&k.y)).then(|| (k.clone(), c.clone())));
        Self { dim: self.dim, order: self.order, terms }
    }

    /// Coefficient of y^p (form 0 only), as a Laurent polynomial in hbar with x-polynomial coefficients.
    pub fn hbar_coeff_at_y0(&self, hbar: i32) -> XPoly {
        let mut p = XPoly::zero(self.dim);
        for (k, c) in &self.terms {
            if k.form == 0 && k.hbar == hbar && multi::is_zero(&k.y) {
                p.terms.add_term(k.x.clone(), c.clone());
            }
        }
        p
    }
}

/// A 0-form section of the Weyl bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement(FormWeyl);

impl WeylElement {
    pub fn new(f: FormWeyl) -> Option<Self> {
        f.terms.keys().all(|k| k.form == 0).then_some(Self(f))
    }

    pub fn zero(dim: usize, order: i32) -> Self {
        Self(FormWeyl::zero(dim, order))
    }

    pub fn into_form(self) -> FormWeyl {
        self.0
    }

    pub fn as_form(&self) -> &FormWeyl {
        &self.0
    }
}

impl Deref for WeylElement {
    type Target = FormWeyl;
    fn deref(&self) -> &FormWeyl {
        &self.0
    }
}

impl From<WeylElement> for FormWeyl {
    fn from(w: WeylElement) -> Self {
        w.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filtration_examples() {
        let h = FormWeyl::hbar_pow(2, 6, 1);
        assert_eq!(h.filtration_degree(), Some(2));
        let y12 = FormWeyl::y(2, 6, 0).pointwise(&FormWeyl::y(2, 6, 1));
        assert_eq!(y12.filtration_degree(), Some(2));
        let a = FormWeyl::y(2, 6, 0).shift_hbar(-1);
        assert_eq!(a.filtration_degree(), Some(-1));
        assert_eq!(FormWeyl::zero(2, 6).filtration_degree(), None);
    }

    #[test]
    fn truncation_drops_heavy_terms() {
        let y = FormWeyl::y(2, 2, 0);
        let y3 = y.pointwise(&y).pointwise(&y);
        assert!(y3.is_zero());
        assert!(FormWeyl::hbar_pow(2, 1, 1).is_zero());
    }

    #[test]
    fn dx_anticommute() {
        let a = FormWeyl::dx(2, 4, 0).pointwise(&FormWeyl::dx(2, 4, 1));
        let b = FormWeyl::dx(2, 4, 1).pointwise(&FormWeyl::dx(2, 4, 0));
        assert_eq!(a, b.neg());
        assert!(FormWeyl::dx(2, 4, 0).pointwise(&FormWeyl::dx(2, 4, 0)).is_zero());
    }

    #[test]
    fn sigma_kills_y_and_dx() {
        let a = FormWeyl::x(2, 4, 0).add(&FormWeyl::y(2, 4, 0));
        assert_eq!(a.sigma(), FormWeyl::x(2, 4, 0));
        let b = FormWeyl::dx(2, 4, 0).pointwise(&FormWeyl::y(2, 4, 1));
        assert!(b.sigma().is_zero());
        let y12 = FormWeyl::y(2, 4, 0).pointwise(&FormWeyl::y(2, 4, 1)).shift_hbar(-1);
        assert_eq!(FormWeyl::one(2, 4).add(&y12).sigma(), FormWeyl::one(2, 4));
    }
}
