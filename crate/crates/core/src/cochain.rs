//! Fiberwise Hochschild cochains of the Weyl algebra.
//!
//! A term is c hbar^m x^e y^p dx^S d^{alpha_1} (x) ... (x) d^{alpha_k}; evaluated on
//! (a_1, ..., a_k) it gives c hbar^m x^e y^p dx^S d^{alpha_1}a_1 ... d^{alpha_k}a_k
//! with the commutative product. Stored terms satisfy 2m + |p| <= order and
//! |alpha_s| <= cap for every slot.

use std::collections::HashMap;

use num_traits::One;
use smallvec::SmallVec;

use crate::exterior::{self, Form};
use crate::linear::LinComb;
use crate::multi::{self, Exps};
use crate::poisson::Poisson;
use crate::scalar::{q, sign, Q};
use crate::weyl::{FKey, FormWeyl};

pub type Slots = SmallVec<[Exps; 3]>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CKey {
    pub form: Form,
    pub hbar: i32,
    pub y: Exps,
    pub slots: Slots,
    pub x: Exps,
}

impl CKey {
    pub fn weight(&self) -> i32 {
        2 * self.hbar + multi::degree(&self.y) as i32
    }

    fn coeff_key(&self) -> FKey {
        FKey { form: self.form, hbar: self.hbar, y: self.y.clone(), x: self.x.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub dim: usize,
    pub order: i32,
    pub cap: u32,
    pub arity: usize,
    pub terms: LinComb<CKey>,
}

impl Cochain {
    pub fn zero(dim: usize, order: i32, cap: u32, arity: usize) -> Self {
        Self { dim, order, cap, arity, terms: LinComb::new() }
    }

    pub fn from_terms(dim: usize, order: i32, cap: u32, arity: usize, mut terms: LinComb<CKey>) -> Self {
        terms.retain(|k| k.weight() <= order && k.slots.iter().all(|s| multi::degree(s) <= cap));
        Self { dim, order, cap, arity, terms }
    }

    /// The 0-cochain given by a Weyl-valued form.
    pub fn from_weyl(a: &FormWeyl, cap: u32) -> Self {
        Self::with_slots(a, &[], cap)
    }

    /// a d^{alpha_1} (x) ... (x) d^{alpha_k}.
    pub fn with_slots(a: &FormWeyl, slots: &[Exps], cap: u32) -> Self {
        let slots: Slots = slots.iter().cloned().collect();
        let terms = a.terms.map_terms(|k, c| {
            Some((CKey { form: k.form, hbar: k.hbar, y: k.y.clone(), slots: slots.clone(), x: k.x.clone() }, c.clone()))
        });
        Self::from_terms(a.dim, a.order, cap, slots.len(), terms)
    }

    pub fn identity(dim: usize, order: i32, cap: u32) -> Self {
        Self::with_slots(&FormWeyl::one(dim, order), &[multi::zeros(dim)], cap)
    }

    /// The Weyl product as a 2-cochain.
    pub fn mu0(poisson: &Poisson, order: i32, cap: u32) -> Self {
        let dim = poisson.dim;
        let mut t = LinComb::new();
        let mut n = 0usize;
        while n as u32 <= cap && 2 * n as i32 <= order {
            for kt in poisson.kernel(n) {
                for (e, c) in &kt.coeff.terms {
                    let key = CKey {
                        form: 0,
                        hbar: n as i32,
                        y: multi::zeros(dim),
                        slots: [kt.alpha.clone(), kt.beta.clone()].into_iter().collect(),
                        x: e.clone(),
                    };
                    t.add_term(key, c.clone());
                }
            }
            n += 1;
        }
        Self::from_terms(dim, order, cap, 2, t)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn truncated(&self, order: i32, cap: u32) -> Self {
        Self::from_terms(self.dim, order, cap, self.arity, self.terms.clone())
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        assert_eq!(self.arity, o.arity, "arity mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let mut t = self.terms.clone();
        t.add_assign(&o.terms);
        Self::from_terms(self.dim, self.order.min(o.order), self.cap.min(o.cap), self.arity, t)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        let mut t = self.terms.clone();
        t.sub_assign(&o.terms);
        Self::from_terms(self.dim, self.order.min(o.order), self.cap.min(o.cap), self.arity, t)
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self { terms: self.terms.scale(s), ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.neg(), ..self.clone() }
    }

    pub fn shift_hbar(&self, k: i32) -> Self {
        let terms = self.terms.map_terms(|key, c| Some((CKey { hbar: key.hbar + k, ..key.clone() }, c.clone())));
        Self::from_terms(self.dim, self.order, self.cap, self.arity, terms)
    }

    /// dx^i ^ self.
    pub fn wedge_dx_left(&self, i: usize) -> Self {
        let s = exterior::single(i);
        let terms = self.terms.map_terms(|k, c| {
            let (form, odd) = exterior::wedge(s, k.form)?;
            Some((CKey { form, ..k.clone() }, sign(odd) * c))
        });
        Self { terms, ..self.clone() }
    }

    /// Coefficientwise x-derivative.
    pub fn deriv_x(&self, i: usize) -> Self {
        let terms = self.terms.map_terms(|k, c| {
            (k.x[i] > 0).then(|| {
                let mut k2 = k.clone();
                k2.x[i] -= 1;
                (k2, c * q(k.x[i] as i64))
            })
        });
        Self { terms, ..self.clone() }
    }

    pub fn form_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|k| exterior::degree(k.form)).collect();
        d.sort();
        d.dedup();
        d
    }

    pub fn max_slot_order(&self) -> u32 {
        self.terms.keys().flat_map(|k| k.slots.iter().map(|s| multi::degree(s))).max().unwrap_or(0)
    }

    pub fn max_y_degree(&self) -> u32 {
        self.terms.keys().map(|k| multi::degree(&k.y)).max().unwrap_or(0)
    }

    pub fn is_y_free(&self) -> bool {
        self.terms.keys().all(|k| multi::is_zero(&k.y))
    }

    /// Splits into slot patterns, each carrying its coefficient as a Weyl-valued form.
    pub fn by_slots(&self) -> Vec<(Slots, FormWeyl)> {
        let mut groups: std::collections::BTreeMap<Slots, LinComb<FKey>> = Default::default();
        for (k, c) in &self.terms {
            groups.entry(k.slots.clone()).or_default().add_term(k.coeff_key(), c.clone());
        }
        groups.into_iter().map(|(s, t)| (s, FormWeyl::from_terms(self.dim, self.order, t))).collect()
    }

    /// Applies a linear map to the coefficient of every slot pattern.
    pub fn map_coefficients(&self, mut f: impl FnMut(&FormWeyl) -> FormWeyl) -> Self {
        let mut out = LinComb::new();
        for (slots, coeff) in self.by_slots() {
            out.add_assign(&Self::with_slots(&f(&coeff), &slots, self.cap).terms);
        }
        Self::from_terms(self.dim, self.order, self.cap, self.arity, out)
    }

    /// The 0-cochain part as a Weyl-valued form (arity 0 only).
    pub fn to_weyl(&self) -> FormWeyl {
        assert_eq!(self.arity, 0, "not a 0-cochain");
        let terms = self.terms.map_terms(|k, c| Some((k.coeff_key(), c.clone())));
        FormWeyl::from_terms(self.dim, self.order, terms)
    }

    /// Value on the given arguments.
    pub fn eval(&self, args: &[FormWeyl]) -> FormWeyl {
        assert_eq!(args.len(), self.arity, "arity mismatch");
        let order = args.iter().map(|a| a.order).fold(self.order, i32::min);
        let mut cache: HashMap<(usize, Exps), FormWeyl> = HashMap::new();
        let mut out = LinComb::new();
        for (k, c) in &self.terms {
            let mut v = FormWeyl::monomial(self.dim, order, k.form, k.hbar, k.y.clone(), k.x.clone(), c.clone());
            for (s, alpha) in k.slots.iter().enumerate() {
                let d = cache
                    .entry((s, alpha.clone()))
                    .or_insert_with(|| args[s].deriv_y_multi(alpha).with_order(order));
                v = v.pointwise(d);
                if v.is_zero() {
                    break;
                }
            }
            out.add_assign(&v.terms);
        }
        FormWeyl::from_terms(self.dim, order, out)
    }

    /// sigma(P(a_1..a_k)), touching only the y-free part of each slot derivative.
    pub fn eval_sigma(&self, args: &[FormWeyl]) -> FormWeyl {
        assert_eq!(args.len(), self.arity, "arity mismatch");
        let order = args.iter().map(|a| a.order).fold(self.order, i32::min);
        let mut cache: HashMap<(usize, Exps), FormWeyl> = HashMap::new();
        let mut out = LinComb::new();
        for (k, c) in &self.terms {
            if k.form != 0 || !multi::is_zero(&k.y) {
                continue;
            }
            let mut v = FormWeyl::monomial(self.dim, order, 0, k.hbar, k.y.clone(), k.x.clone(), c.clone());
            for (s, alpha) in k.slots.iter().enumerate() {
                let d = cache.entry((s, alpha.clone())).or_insert_with(|| {
                    let f = multi::deriv_coeff(alpha, alpha);
                    let t = args[s].terms.map_terms(|a, ca| {
                        (a.form == 0 && a.y == *alpha).then(|| (FKey { y: multi::zeros(self.dim), ..a.clone() }, ca * &f))
                    });
                    FormWeyl::from_terms(self.dim, order, t)
                });
                v = v.pointwise(d);
                if v.is_zero() {
                    break;
                }
            }
            out.add_assign(&v.terms);
        }
        FormWeyl::from_terms(self.dim, order, out)
    }

    /// The cochain (a_1..a_k) -> d^alpha/dy^alpha (P(a_1..a_k)).
    pub fn out_deriv(&self, alpha: &[u8]) -> Self {
        if multi::is_zero(alpha) {
            return self.clone();
        }
        let parts = self.arity + 1;
        let splits = multi::splits(alpha, parts);
        let mut t = LinComb::new();
        for (k, c) in &self.terms {
            for (split, w) in &splits {
                if !multi::le(&split[0], &k.y) {
                    continue;
                }
                let coeff = c * w * multi::deriv_coeff(&k.y, &split[0]);
                let slots: Slots = k.slots.iter().zip(&split[1..]).map(|(s, g)| multi::add(s, g)).collect();
                if slots.iter().any(|s| multi::degree(s) > self.cap) {
                    continue;
                }
                t.add_term(CKey { form: k.form, hbar: k.hbar, y: multi::sub(&k.y, &split[0]), slots, x: k.x.clone() }, coeff);
            }
        }
        Self::from_terms(self.dim, self.order, self.cap, self.arity, t)
    }

    /// Cup product: (P1 u P2)(a, b) = P1(a) o P2(b).
    pub fn cup(&self, o: &Self, poisson: &Poisson) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let order = self.order.min(o.order);
        let cap = self.cap.min(o.cap);
        let reach = |p: &Self| {
            p.terms
                .keys()
                .map(|k| multi::degree(&k.y) + k.slots.iter().map(|s| cap.saturating_sub(multi::degree(s))).sum::<u32>())
                .max()
                .unwrap_or(0)
        };
        let min_hbar = |p: &Self| p.terms.keys().map(|k| k.hbar).min().unwrap_or(0);
        let by_hbar = (order - 2 * min_hbar(self) - 2 * min_hbar(o)).max(0) as u32 / 2;
        let nmax = reach(self).min(reach(o)).min(by_hbar);
        let mut d1: HashMap<Exps, Self> = HashMap::new();
        let mut d2: HashMap<Exps, Self> = HashMap::new();
        let mut t = LinComb::new();
        for n in 0..=nmax as usize {
            for kt in poisson.kernel(n) {
                let p1 = d1.entry(kt.alpha.clone()).or_insert_with(|| self.out_deriv(&kt.alpha));
                let p2 = d2.entry(kt.beta.clone()).or_insert_with(|| o.out_deriv(&kt.beta));
                let mut by_weight: Vec<(i32, &CKey, &Q)> = p2.terms.iter().map(|(k, c)| (k.weight(), k, c)).collect();
                by_weight.sort_by_key(|t| t.0);
                for (k1, c1) in &p1.terms {
                    let room = order - k1.weight() - 2 * n as i32;
                    let end = by_weight.partition_point(|t| t.0 <= room);
                    for &(_, k2, c2) in &by_weight[..end] {
                        let Some((form, odd)) = exterior::wedge(k1.form, k2.form) else { continue };
                        let base = sign(odd) * c1 * c2;
                        let y = multi::add(&k1.y, &k2.y);
                        let slots: Slots = k1.slots.iter().chain(k2.slots.iter()).cloned().collect();
                        let x = multi::add(&k1.x, &k2.x);
                        for (e, ce) in &kt.coeff.terms {
                            let key = CKey { form, hbar: k1.hbar + k2.hbar + n as i32, y: y.clone(), slots: slots.clone(), x: multi::add(&x, e) };
                            t.add_term(key, &base * ce);
                        }
                    }
                }
            }
        }
        Self::from_terms(self.dim, order, cap, self.arity + o.arity, t)
    }

    /// Insertion of `o` into slot `s` (0-based): P1(.., P2(a_s, ..), ..).
    pub fn insert(&self, s: usize, o: &Self) -> Self {
        assert!(s < self.arity, "slot out of range");
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let order = self.order.min(o.order);
        let cap = self.cap.min(o.cap);
        let mut derivs: HashMap<Exps, Vec<(i32, CKey, Q)>> = HashMap::new();
        let mut t = LinComb::new();
        for (k1, c1) in &self.terms {
            let p2 = derivs.entry(k1.slots[s].clone()).or_insert_with(|| {
                let mut v: Vec<(i32, CKey, Q)> =
                    o.out_deriv(&k1.slots[s]).terms.iter().map(|(k, c)| (k.weight(), k.clone(), c.clone())).collect();
                v.sort_by_key(|t| t.0);
                v
            });
            let end = p2.partition_point(|t| t.0 <= order - k1.weight());
            for (_, k2, c2) in &p2[..end] {
                let Some((form, odd)) = exterior::wedge(k1.form, k2.form) else { continue };
                let slots: Slots = k1.slots[..s]
                    .iter()
                    .chain(k2.slots.iter())
                    .chain(k1.slots[s + 1..].iter())
                    .cloned()
                    .collect();
                let key = CKey {
                    form,
                    hbar: k1.hbar + k2.hbar,
                    y: multi::add(&k1.y, &k2.y),
                    slots,
                    x: multi::add(&k1.x, &k2.x),
                };
                t.add_term(key, sign(odd) * c1 * c2);
            }
        }
        Self::from_terms(self.dim, order, cap, self.arity + o.arity - 1, t)
    }

    /// Gerstenhaber bracket with arities k1 + 1, k2 + 1:
    /// sum_{i=0}^{k1} (-)^{i k2} P1 o_i P2 - (-)^{k1 k2 + q1 q2} (1 <-> 2),
    /// where q1, q2 are exterior degrees (taken componentwise).
    pub fn gerstenhaber(&self, o: &Self) -> Self {
        let arity = (self.arity + o.arity).saturating_sub(1);
        let mut out = Self::zero(self.dim, self.order.min(o.order), self.cap.min(o.cap), arity);
        for q1 in self.form_degrees() {
            let a = self.exterior_part(q1);
            for q2 in o.form_degrees() {
                out = out.add(&a.bracket_homogeneous(&o.exterior_part(q2), (q1 * q2) % 2 == 1));
            }
        }
        out
    }

    fn bracket_homogeneous(&self, o: &Self, odd_forms: bool) -> Self {
        let k1 = self.arity as i64 - 1;
        let k2 = o.arity as i64 - 1;
        let arity = (self.arity + o.arity).saturating_sub(1);
        let order = self.order.min(o.order);
        let cap = self.cap.min(o.cap);
        let mut out = Self::zero(self.dim, order, cap, arity);
        for i in 0..self.arity {
            let t = self.insert(i, o);
            out = if (i as i64 * k2) % 2 != 0 { out.sub(&t) } else { out.add(&t) };
        }
        let mut rev = Self::zero(self.dim, order, cap, arity);
        for i in 0..o.arity {
            let t = o.insert(i, self);
            rev = if (i as i64 * k1) % 2 != 0 { rev.sub(&t) } else { rev.add(&t) };
        }
        if ((k1 * k2) % 2 != 0) ^ odd_forms {
            out.add(&rev)
        } else {
            out.sub(&rev)
        }
    }

    /// Hochschild differential, literally:
    /// (-)^q (a_0 o P(a_1..) + sum_i (-1)^{i+1} P(.., a_i o a_{i+1}, ..) + (-1)^{k+1} P(..) o a_k),
    /// for P homogeneous of exterior degree q (mixed degrees are handled componentwise).
    pub fn hochschild_d(&self, poisson: &Poisson) -> Self {
        let k = self.arity;
        let id = Self::identity(self.dim, self.order, self.cap);
        let mu = Self::mu0(poisson, self.order, self.cap);
        let mut out = Self::zero(self.dim, self.order, self.cap, k + 1);
        for q in self.form_degrees() {
            let p = self.exterior_part(q);
            let mut part = id.cup(&p, poisson);
            for i in 0..k {
                let t = p.insert(i, &mu);
                part = if i % 2 == 0 { part.sub(&t) } else { part.add(&t) };
            }
            let last = p.cup(&id, poisson);
            part = if (k + 1) % 2 == 1 { part.sub(&last) } else { part.add(&last) };
            out = if q % 2 == 1 { out.sub(&part) } else { out.add(&part) };
        }
        out
    }

    /// (-)^{q + k + 1} [mu0, P]_G; agrees with `hochschild_d`.
    pub fn hochschild_d_bracket(&self, poisson: &Poisson) -> Self {
        let mu = Self::mu0(poisson, self.order, self.cap);
        let mut out = Self::zero(self.dim, self.order, self.cap, self.arity + 1);
        for q in self.form_degrees() {
            let b = mu.gerstenhaber(&self.exterior_part(q));
            out = if (q as usize + self.arity + 1) % 2 == 1 { out.sub(&b) } else { out.add(&b) };
        }
        out
    }

    pub fn exterior_part(&self, q: u32) -> Self {
        let mut t = self.terms.clone();
        t.retain(|k| exterior::degree(k.form) == q);
        Self { terms: t, ..self.clone() }
    }

    /// y = 0 and dx = 0 in the coefficients.
    pub fn sigma(&self) -> Self {
        let mut t = self.terms.clone();
        t.retain(|k| k.form == 0 && multi::is_zero(&k.y));
        Self { terms: t, ..self.clone() }
    }

    pub fn delta(&self) -> Self {
        self.map_coefficients(crate::ops::delta)
    }

    pub fn delta_inv(&self) -> Self {
        self.map_coefficients(crate::ops::delta_inv)
    }

    /// Every slot tuple of multi-indices up to the cap, for extraction and spanning checks.
    pub fn coefficient_of(&self, slots: &[Exps]) -> FormWeyl {
        let terms = self
            .terms
            .map_terms(|k, c| (k.slots.as_slice() == slots).then(|| (k.coeff_key(), c.clone())));
        FormWeyl::from_terms(self.dim, self.order, terms)
    }
}

/// Monomial arguments hbar^a y^beta with 2a + |beta| <= order and a >= 0.
pub fn spanning_monomials(dim: usize, order: i32) -> Vec<FormWeyl> {
    let mut out = Vec::new();
    for a in 0..=(order / 2) {
        for beta in multi::up_to_degree(dim, (order - 2 * a) as u32) {
            out.push(FormWeyl::monomial(dim, order, 0, a, beta, multi::zeros(dim), Q::one()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qf;

    fn y(i: usize) -> FormWeyl {
        FormWeyl::y(2, 6, i)
    }

    fn d(i: usize) -> Exps {
        multi::unit(2, i)
    }

    #[test]
    fn eval_sigma_matches_eval() {
        let p = Poisson::standard(2);
        let mu = Cochain::mu0(&p, 6, 6);
        let a = FormWeyl::y(2, 6, 0).pointwise(&FormWeyl::y(2, 6, 1)).add(&FormWeyl::x(2, 6, 0));
        let b = FormWeyl::y(2, 6, 1).pointwise(&FormWeyl::y(2, 6, 1)).add(&FormWeyl::y(2, 6, 0));
        let args = [a, b];
        assert_eq!(mu.eval_sigma(&args), mu.eval(&args).sigma());
    }

    #[test]
    fn eval_examples() {
        let p = Cochain::with_slots(&FormWeyl::one(2, 6), &[d(0)], 6);
        assert_eq!(p.eval(&[y(0).pointwise(&y(1))]), y(1));
        let id = Cochain::identity(2, 6, 6);
        assert_eq!(id.eval(&[y(1)]), y(1));
        let mu = Cochain::mu0(&Poisson::standard(2), 6, 6);
        let expect = y(0).pointwise(&y(1)).add(&FormWeyl::hbar_pow(2, 6, 1).scale(&qf(1, 2)));
        assert_eq!(mu.eval(&[y(0), y(1)]), expect);
    }

    #[test]
    fn cup_of_identities_is_product() {
        let p = Poisson::standard(2);
        let id = Cochain::identity(2, 6, 6);
        assert_eq!(id.cup(&id, &p), Cochain::mu0(&p, 6, 6));
        let one = Cochain::from_weyl(&FormWeyl::one(2, 6), 6);
        let q = Cochain::with_slots(&y(0), &[d(1)], 6);
        assert_eq!(q.cup(&one, &p), q);
    }

    #[test]
    fn bracket_of_vector_fields() {
        let d1 = Cochain::with_slots(&FormWeyl::one(2, 6), &[d(0)], 6);
        let d2 = Cochain::with_slots(&y(0), &[d(1)], 6);
        let expect = Cochain::with_slots(&FormWeyl::one(2, 6), &[d(1)], 6);
        assert_eq!(d1.gerstenhaber(&d2), expect);
    }

    #[test]
    fn mu_is_a_cocycle_and_brackets_to_zero() {
        let p = Poisson::standard(2);
        let mu = Cochain::mu0(&p, 6, 6);
        assert!(mu.gerstenhaber(&mu).is_zero());
        assert!(mu.hochschild_d(&p).is_zero());
    }

    #[test]
    fn hochschild_of_y1() {
        let p = Poisson::standard(2);
        let c = Cochain::from_weyl(&y(0), 6);
        let dc = c.hochschild_d(&p);
        // b o y1 - y1 o b on b = y2
        assert_eq!(dc.eval(&[y(1)]), FormWeyl::hbar_pow(2, 6, 1).neg());
        assert_eq!(dc, c.hochschild_d_bracket(&p));
    }
}
