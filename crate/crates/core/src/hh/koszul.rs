//! The Koszul resolution: K_m holds power series in y_1, y_2 times degree-m
//! monomials in anticommuting C^1..C^{2n}.

use num_traits::{One, Zero};

use super::WeylAlgebra;
use crate::error::{Error, Result};
use crate::exterior::{self, Form};
use crate::linear::LinComb;
use crate::multi::{self, Exps};
use crate::scalar::{binomial, factorial, q, sign, Q};
use crate::weyl::{FKey, FormWeyl};

/// hbar^k y_1^p y_2^q C^I; C has weight one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KKey {
    pub hbar: i32,
    pub y1: Exps,
    pub y2: Exps,
    pub c: Form,
}

impl KKey {
    pub fn weight(&self) -> i32 {
        2 * self.hbar + (multi::degree(&self.y1) + multi::degree(&self.y2) + exterior::degree(self.c)) as i32
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulChain {
    pub dim: usize,
    pub m: usize,
    pub order: i32,
    pub terms: LinComb<KKey>,
}

impl KoszulChain {
    pub fn zero(dim: usize, m: usize, order: i32) -> Self {
        Self { dim, m, order, terms: LinComb::new() }
    }

    pub fn from_terms(dim: usize, m: usize, order: i32, mut terms: LinComb<KKey>) -> Self {
        debug_assert!(terms.keys().all(|k| exterior::degree(k.c) as usize == m));
        terms.retain(|k| k.weight() <= order);
        Self { dim, m, order, terms }
    }

    pub fn monomial(dim: usize, order: i32, hbar: i32, y1: Exps, y2: Exps, c: Form, coeff: Q) -> Self {
        let m = exterior::degree(c) as usize;
        Self::from_terms(dim, m, order, LinComb::single(KKey { hbar, y1, y2, c }, coeff))
    }

    /// The generator C^I.
    pub fn generator(dim: usize, order: i32, c: Form) -> Self {
        Self::monomial(dim, order, 0, multi::zeros(dim), multi::zeros(dim), c, Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn truncated(&self, order: i32) -> Self {
        Self::from_terms(self.dim, self.m, order, self.terms.clone())
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        assert_eq!(self.m, o.m, "Koszul degree mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let mut t = self.terms.clone();
        t.add_assign(&o.terms);
        Self::from_terms(self.dim, self.m, self.order.min(o.order), t)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        let mut t = self.terms.clone();
        t.sub_assign(&o.terms);
        Self::from_terms(self.dim, self.m, self.order.min(o.order), t)
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self { terms: self.terms.scale(s), ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.neg(), ..self.clone() }
    }
}

/// (y_1^i - y_2^i) dC^i + hbar/2 theta^{ji} dC^i (d_{y_1^j} + d_{y_2^j}), left C-derivatives.
///
/// This is the sign for which d commutes with the two-sided action and the
/// augmentation vanishes on d(K_1).
pub fn koszul_d(alg: &WeylAlgebra, a: &KoszulChain) -> Result<KoszulChain> {
    if a.m == 0 {
        return Err(Error::Precondition("Koszul differential needs degree >= 1".into()));
    }
    let n = a.dim;
    let half = Q::new(1.into(), 2.into());
    let mut out = LinComb::new();
    for (k, c) in &a.terms {
        for i in exterior::indices(k.c) {
            let (rest, odd) = exterior::contract(i, k.c).unwrap();
            let s = sign(odd) * c;
            let mut y1 = k.y1.clone();
            y1[i] += 1;
            out.add_term(KKey { hbar: k.hbar, y1, y2: k.y2.clone(), c: rest }, s.clone());
            let mut y2 = k.y2.clone();
            y2[i] += 1;
            out.add_term(KKey { hbar: k.hbar, y1: k.y1.clone(), y2, c: rest }, -s.clone());
            for j in 0..n {
                let t = &alg.theta[j][i];
                if t.is_zero() {
                    continue;
                }
                let f = &s * t * &half;
                if k.y1[j] > 0 {
                    let mut y1 = k.y1.clone();
                    y1[j] -= 1;
                    let key = KKey { hbar: k.hbar + 1, y1, y2: k.y2.clone(), c: rest };
                    out.add_term(key, &f * q(k.y1[j] as i64));
                }
                if k.y2[j] > 0 {
                    let mut y2 = k.y2.clone();
                    y2[j] -= 1;
                    let key = KKey { hbar: k.hbar + 1, y1: k.y1.clone(), y2, c: rest };
                    out.add_term(key, &f * q(k.y2[j] as i64));
                }
            }
        }
    }
    Ok(KoszulChain::from_terms(a.dim, a.m - 1, a.order, out))
}

/// t^a (1-t)^b integrated over [0, 1].
fn beta_integral(a: u32, b: u32) -> Q {
    factorial(a) * factorial(b) / factorial(a + b + 1)
}

/// C^k int_0^1 dt (D_{-t} D d_{y_1^k} a)(hbar, y_2 + t(y_1 - y_2), y_2, tC).
///
/// D_{-t} D = exp((1-t) hbar/2 theta^{ij} d_{y_1^i} d_{y_2^j}) and the substitution
/// turns every term into t^A (1-t)^B times a monomial, so the integral is a Beta value.
pub fn koszul_h(alg: &WeylAlgebra, a: &KoszulChain) -> KoszulChain {
    let n = a.dim;
    let mut out = LinComb::new();
    for (key, c) in &a.terms {
        let cdeg = exterior::degree(key.c);
        for k in 0..n {
            if key.y1[k] == 0 {
                continue;
            }
            let Some((cform, codd)) = exterior::wedge(exterior::single(k), key.c) else { continue };
            let mut p = key.y1.clone();
            p[k] -= 1;
            let base = sign(codd) * c * q(key.y1[k] as i64);
            let nmax = multi::degree(&p).min(multi::degree(&key.y2)) as usize;
            for level in 0..=nmax {
                for kt in alg.poisson.kernel(level) {
                    if !multi::le(&kt.alpha, &p) || !multi::le(&kt.beta, &key.y2) {
                        continue;
                    }
                    let kc = kt.coeff.as_constant().expect("constant kernel")
                        * multi::deriv_coeff(&p, &kt.alpha)
                        * multi::deriv_coeff(&key.y2, &kt.beta);
                    let a1 = multi::sub(&p, &kt.alpha);
                    let b2 = multi::sub(&key.y2, &kt.beta);
                    let deg_a1 = multi::degree(&a1);
                    // y_1^{a1} -> prod_i (t y_1^i + (1-t) y_2^i)^{a1_i}
                    for j in multi::sub_indices(&a1) {
                        let binom: Q = a1.iter().zip(j.iter()).map(|(&ai, &ji)| binomial(ai as u32, ji as u32)).product();
                        let dj = multi::degree(&j);
                        let integral = beta_integral(dj + cdeg, level as u32 + deg_a1 - dj);
                        let y2 = multi::add(&b2, &multi::sub(&a1, &j));
                        let out_key = KKey { hbar: key.hbar + level as i32, y1: j, y2, c: cform };
                        out.add_term(out_key, &base * &kc * binom * integral);
                    }
                }
            }
        }
    }
    KoszulChain::from_terms(a.dim, a.m + 1, a.order, out)
}

/// The augmentation K_0 -> W, f(y_1, y_2) -> the o-product of its two factors.
pub fn koszul_augment(alg: &WeylAlgebra, a: &KoszulChain) -> FormWeyl {
    assert_eq!(a.m, 0, "augmentation is defined on K_0");
    let mut out = LinComb::new();
    for (k, c) in &a.terms {
        for (h, y, pc) in alg.mono_product(&k.y1, &k.y2) {
            out.add_term(FKey { form: 0, hbar: k.hbar + h, y, x: multi::zeros(a.dim) }, c * pc);
        }
    }
    FormWeyl::from_terms(a.dim, a.order, out)
}

/// The homotopy on the augmentation term: w -> w(y_2).
pub fn koszul_section(w: &FormWeyl) -> KoszulChain {
    let terms = w.terms.map_terms(|k, c| {
        Some((KKey { hbar: k.hbar, y1: multi::zeros(w.dim), y2: k.y.clone(), c: 0 }, c.clone()))
    });
    KoszulChain::from_terms(w.dim, 0, w.order, terms)
}

/// (a (x) b) . chain: a o (y_1 factor), (y_2 factor) o b.
pub fn koszul_act(alg: &WeylAlgebra, a: &FormWeyl, chain: &KoszulChain, b: &FormWeyl) -> KoszulChain {
    let order = chain.order;
    let mut left = LinComb::new();
    for (k, c) in &chain.terms {
        for (ka, ca) in &a.terms {
            for (h, y, pc) in alg.mono_product(&ka.y, &k.y1) {
                let key = KKey { hbar: k.hbar + ka.hbar + h, y1: y, y2: k.y2.clone(), c: k.c };
                if key.weight() <= order {
                    left.add_term(key, c * ca * pc);
                }
            }
        }
    }
    let mut out = LinComb::new();
    for (k, c) in &left {
        for (kb, cb) in &b.terms {
            for (h, y, pc) in alg.mono_product(&k.y2, &kb.y) {
                let key = KKey { hbar: k.hbar + kb.hbar + h, y1: k.y1.clone(), y2: y, c: k.c };
                if key.weight() <= order {
                    out.add_term(key, c * cb * pc);
                }
            }
        }
    }
    KoszulChain::from_terms(chain.dim, chain.m, order, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[u8]) -> Exps {
        v.iter().copied().collect()
    }

    #[test]
    fn differential_of_c1() {
        let alg = WeylAlgebra::standard(2);
        let c1 = KoszulChain::generator(2, 6, exterior::single(0));
        let expect = KoszulChain::monomial(2, 6, 0, e(&[1, 0]), e(&[0, 0]), 0, q(1))
            .sub(&KoszulChain::monomial(2, 6, 0, e(&[0, 0]), e(&[1, 0]), 0, q(1)));
        assert_eq!(koszul_d(&alg, &c1).unwrap(), expect);
    }

    #[test]
    fn homotopy_of_y1() {
        let alg = WeylAlgebra::standard(2);
        let y = KoszulChain::monomial(2, 6, 0, e(&[1, 0]), e(&[0, 0]), 0, q(1));
        assert_eq!(koszul_h(&alg, &y), KoszulChain::generator(2, 6, exterior::single(0)));
        let one = KoszulChain::monomial(2, 6, 0, e(&[0, 0]), e(&[0, 0]), 0, q(1));
        assert!(koszul_h(&alg, &one).is_zero());
    }

    #[test]
    fn d_squared_on_c1c2() {
        let alg = WeylAlgebra::standard(2);
        let c = KoszulChain::generator(2, 6, 0b11);
        let d = koszul_d(&alg, &c).unwrap();
        assert!(koszul_d(&alg, &d).unwrap().is_zero());
    }
}
