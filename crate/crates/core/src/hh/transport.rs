//! Push-forward along a linear change of fiber coordinates y -> g y.
//!
//! Functions a(y) go to a(g^{-1} y); C and dx transform like y; derivative
//! slots and psi transform contragrediently.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::bar::{BKey, BarChain};
use super::koszul::{KKey, KoszulChain};
use super::psi::{PKey, PsiElement};
use crate::cochain::{CKey, Cochain, Slots};
use crate::error::Result;
use crate::exterior::{self, Form};
use crate::linear::LinComb;
use crate::multi::{self, Exps};
use crate::scalar::{invert, mat_mul, sign, transpose, Q};
use crate::weyl::{FKey, FormWeyl};

/// g theta g^T.
pub fn transport_theta(g: &[Vec<Q>], theta: &[Vec<Q>]) -> Vec<Vec<Q>> {
    mat_mul(&mat_mul(g, theta), &transpose(g))
}

/// Image of v^e under v^i -> sum_j m[i][j] v^j.
fn poly_sub(e: &Exps, m: &[Vec<Q>]) -> Vec<(Exps, Q)> {
    if multi::is_zero(e) {
        return vec![(e.clone(), Q::one())];
    }
    multi::linear_substitute(e, &transpose(m))
}

/// Image of v^{i_1}...v^{i_k} under v^i -> sum_j m[i][j] v^j, anticommuting.
fn form_sub(s: Form, m: &[Vec<Q>]) -> Vec<(Form, Q)> {
    let mut acc: BTreeMap<Form, Q> = BTreeMap::new();
    acc.insert(0, Q::one());
    for i in exterior::indices(s) {
        let mut next: BTreeMap<Form, Q> = BTreeMap::new();
        for (f, c) in &acc {
            for (j, mij) in m[i].iter().enumerate() {
                if mij.is_zero() {
                    continue;
                }
                let Some((f2, odd)) = exterior::wedge(*f, exterior::single(j)) else { continue };
                *next.entry(f2).or_insert_with(Q::zero) += sign(odd) * c * mij;
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    acc.into_iter().collect()
}

struct Frames {
    /// y^i -> sum_j inv[i][j] y^j
    inv: Vec<Vec<Q>>,
    /// d_i -> sum_j g[j][i] d_j
    dual: Vec<Vec<Q>>,
}

impl Frames {
    fn new(g: &[Vec<Q>]) -> Result<Self> {
        Ok(Self { inv: invert(g)?, dual: transpose(g) })
    }
}

/// y, x and dx all transform by g.
pub fn transport_weyl(g: &[Vec<Q>], a: &FormWeyl) -> Result<FormWeyl> {
    let fr = Frames::new(g)?;
    let mut out = LinComb::new();
    for (k, c) in &a.terms {
        for (y, cy) in poly_sub(&k.y, &fr.inv) {
            for (x, cx) in poly_sub(&k.x, &fr.inv) {
                for (form, cf) in form_sub(k.form, &fr.inv) {
                    out.add_term(FKey { form, hbar: k.hbar, y: y.clone(), x: x.clone() }, c * &cy * &cx * cf);
                }
            }
        }
    }
    Ok(FormWeyl::from_terms(a.dim, a.order, out))
}

pub fn transport_cochain(g: &[Vec<Q>], p: &Cochain) -> Result<Cochain> {
    let fr = Frames::new(g)?;
    let mut out = LinComb::new();
    for (k, c) in &p.terms {
        let mut slot_terms: Vec<(Slots, Q)> = vec![(Slots::new(), Q::one())];
        for s in &k.slots {
            let images = poly_sub(s, &fr.dual);
            slot_terms = slot_terms
                .into_iter()
                .flat_map(|(t, ct)| {
                    images.iter().map(move |(e, ce)| {
                        let mut t2 = t.clone();
                        t2.push(e.clone());
                        (t2, &ct * ce)
                    })
                })
                .collect();
        }
        for (y, cy) in poly_sub(&k.y, &fr.inv) {
            for (x, cx) in poly_sub(&k.x, &fr.inv) {
                for (form, cf) in form_sub(k.form, &fr.inv) {
                    for (slots, cs) in &slot_terms {
                        let key = CKey { form, hbar: k.hbar, y: y.clone(), slots: slots.clone(), x: x.clone() };
                        out.add_term(key, c * &cy * &cx * &cf * cs);
                    }
                }
            }
        }
    }
    Ok(Cochain::from_terms(p.dim, p.order, p.cap, p.arity, out))
}

pub fn transport_bar(g: &[Vec<Q>], b: &BarChain) -> Result<BarChain> {
    let fr = Frames::new(g)?;
    let mut out = LinComb::new();
    for (k, c) in &b.terms {
        let mut acc: Vec<(Vec<Exps>, Q)> = vec![(Vec::new(), c.clone())];
        for e in &k.copies {
            let images = poly_sub(e, &fr.inv);
            acc = acc
                .into_iter()
                .flat_map(|(t, ct)| {
                    images.iter().map(move |(e2, ce)| {
                        let mut t2 = t.clone();
                        t2.push(e2.clone());
                        (t2, &ct * ce)
                    })
                })
                .collect();
        }
        for (copies, ct) in acc {
            out.add_term(BKey { hbar: k.hbar, copies }, ct);
        }
    }
    Ok(BarChain::from_terms(b.dim, b.m, b.order, out))
}

pub fn transport_koszul(g: &[Vec<Q>], a: &KoszulChain) -> Result<KoszulChain> {
    let fr = Frames::new(g)?;
    let mut out = LinComb::new();
    for (k, c) in &a.terms {
        for (y1, c1) in poly_sub(&k.y1, &fr.inv) {
            for (y2, c2) in poly_sub(&k.y2, &fr.inv) {
                for (f, cf) in form_sub(k.c, &fr.inv) {
                    out.add_term(KKey { hbar: k.hbar, y1: y1.clone(), y2: y2.clone(), c: f }, c * &c1 * &c2 * cf);
                }
            }
        }
    }
    Ok(KoszulChain::from_terms(a.dim, a.m, a.order, out))
}

pub fn transport_psi(g: &[Vec<Q>], a: &PsiElement) -> Result<PsiElement> {
    let fr = Frames::new(g)?;
    let mut out = LinComb::new();
    for (k, c) in &a.terms {
        for (y, cy) in poly_sub(&k.y, &fr.inv) {
            for (psi, cp) in form_sub(k.psi, &fr.dual) {
                out.add_term(PKey { hbar: k.hbar, y: y.clone(), psi }, c * &cy * cp);
            }
        }
    }
    Ok(PsiElement::from_terms(a.dim, a.order, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hh::WeylAlgebra;
    use crate::scalar::{q, qf};

    #[test]
    fn diagonal_symplectic_map() {
        let alg = WeylAlgebra::standard(2);
        let g = vec![vec![q(2), q(0)], vec![q(0), qf(1, 2)]];
        assert_eq!(transport_theta(&g, &alg.theta), alg.theta);
        let a = FormWeyl::y(2, 6, 0).pointwise(&FormWeyl::y(2, 6, 0));
        let b = FormWeyl::y(2, 6, 1);
        let lhs = transport_weyl(&g, &alg.poisson.product(&a, &b)).unwrap();
        let rhs = alg
            .poisson
            .product(&transport_weyl(&g, &a).unwrap(), &transport_weyl(&g, &b).unwrap());
        assert_eq!(lhs, rhs);
        assert_eq!(transport_weyl(&g, &b).unwrap(), b.scale(&q(2)));
    }
}
