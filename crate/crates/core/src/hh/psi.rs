//! W[psi_1..psi_2n]: the complex Hom(K, W) written with anticommuting psi.
//!
//! Truncation uses the weight 2k + |p| - |I| of hbar^k y^p psi_I, which both
//! small_d and small_h preserve.

use num_traits::Zero;

use super::WeylAlgebra;
use crate::exterior::{self, Form};
use crate::linear::LinComb;
use crate::multi::{self, Exps};
use crate::scalar::{q, sign, Q};
use crate::weyl::{FKey, FormWeyl};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PKey {
    pub hbar: i32,
    pub y: Exps,
    pub psi: Form,
}

impl PKey {
    pub fn weight(&self) -> i32 {
        2 * self.hbar + multi::degree(&self.y) as i32 - exterior::degree(self.psi) as i32
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiElement {
    pub dim: usize,
    pub order: i32,
    pub terms: LinComb<PKey>,
}

impl PsiElement {
    pub fn zero(dim: usize, order: i32) -> Self {
        Self { dim, order, terms: LinComb::new() }
    }

    pub fn from_terms(dim: usize, order: i32, mut terms: LinComb<PKey>) -> Self {
        terms.retain(|k| k.weight() <= order);
        Self { dim, order, terms }
    }

    pub fn monomial(dim: usize, order: i32, hbar: i32, y: Exps, psi: Form, c: Q) -> Self {
        Self::from_terms(dim, order, LinComb::single(PKey { hbar, y, psi }, c))
    }

    /// sum_I coeffs[I] psi_I.
    pub fn from_coefficients(dim: usize, order: i32, coeffs: &[(Form, FormWeyl)]) -> Self {
        let mut t = LinComb::new();
        for (psi, w) in coeffs {
            for (k, c) in &w.terms {
                t.add_term(PKey { hbar: k.hbar, y: k.y.clone(), psi: *psi }, c.clone());
            }
        }
        Self::from_terms(dim, order, t)
    }

    /// The W-valued coefficient of psi_I.
    pub fn coefficient(&self, psi: Form) -> FormWeyl {
        let terms = self.terms.map_terms(|k, c| {
            (k.psi == psi).then(|| (FKey { form: 0, hbar: k.hbar, y: k.y.clone(), x: multi::zeros(self.dim) }, c.clone()))
        });
        FormWeyl::from_terms(self.dim, i32::MAX, terms)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn truncated(&self, order: i32) -> Self {
        Self::from_terms(self.dim, order, self.terms.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let mut t = self.terms.clone();
        t.add_assign(&o.terms);
        Self::from_terms(self.dim, self.order.min(o.order), t)
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let mut t = self.terms.clone();
        t.sub_assign(&o.terms);
        Self::from_terms(self.dim, self.order.min(o.order), t)
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self { terms: self.terms.scale(s), ..self.clone() }
    }

    /// a at y = 0, psi = 0.
    pub fn constant_part(&self) -> Self {
        let mut t = self.terms.clone();
        t.retain(|k| k.psi == 0 && multi::is_zero(&k.y));
        Self { terms: t, ..self.clone() }
    }

    pub fn psi_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|k| exterior::degree(k.psi)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

/// hbar psi_i omega^{ij} d_{y^j} a, with omega^{ij} = theta^{ij}.
pub fn small_d(alg: &WeylAlgebra, a: &PsiElement) -> PsiElement {
    let n = a.dim;
    let mut out = LinComb::new();
    for (k, c) in &a.terms {
        for j in 0..n {
            if k.y[j] == 0 {
                continue;
            }
            let mut y = k.y.clone();
            y[j] -= 1;
            let dc = c * q(k.y[j] as i64);
            for i in 0..n {
                let w = &alg.theta[i][j];
                if w.is_zero() {
                    continue;
                }
                let Some((psi, odd)) = exterior::wedge(exterior::single(i), k.psi) else { continue };
                out.add_term(PKey { hbar: k.hbar + 1, y: y.clone(), psi }, sign(odd) * &dc * w);
            }
        }
    }
    PsiElement::from_terms(a.dim, a.order, out)
}

/// (1/hbar) int_0^1 dt y^i omega_{ij} (d_{psi_j} a)(hbar, ty, t psi), left psi-derivative.
pub fn small_h(alg: &WeylAlgebra, a: &PsiElement) -> PsiElement {
    let n = a.dim;
    let mut out = LinComb::new();
    for (k, c) in &a.terms {
        let total = multi::degree(&k.y) + exterior::degree(k.psi);
        for j in exterior::indices(k.psi) {
            let (psi, odd) = exterior::contract(j, k.psi).unwrap();
            let base = sign(odd) * c / q(total as i64);
            for i in 0..n {
                let w = &alg.omega_lower[i][j];
                if w.is_zero() {
                    continue;
                }
                let mut y = k.y.clone();
                y[i] += 1;
                out.add_term(PKey { hbar: k.hbar - 1, y, psi }, &base * w);
            }
        }
    }
    PsiElement::from_terms(a.dim, a.order, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn e(v: &[u8]) -> Exps {
        v.iter().copied().collect()
    }

    #[test]
    fn worked_examples() {
        let alg = WeylAlgebra::standard(2);
        let psi1 = PsiElement::monomial(2, 6, 0, e(&[0, 0]), exterior::single(0), q(1));
        let y2h = PsiElement::monomial(2, 6, -1, e(&[0, 1]), 0, q(1));
        assert_eq!(small_h(&alg, &psi1), y2h);
        assert_eq!(small_d(&alg, &y2h), psi1);
        assert!(small_d(&alg, &psi1).is_zero());
        let y1 = PsiElement::monomial(2, 6, 0, e(&[1, 0]), 0, q(1));
        let expect = PsiElement::monomial(2, 6, 1, e(&[0, 0]), exterior::single(1), q(-1));
        assert_eq!(small_d(&alg, &y1), expect);
    }
}
