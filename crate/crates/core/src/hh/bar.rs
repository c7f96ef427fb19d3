//! The topological bar resolution: B_m holds power series in m + 2 copies of y.

use num_traits::One;

use super::WeylAlgebra;
use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::multi::{self, Exps};
use crate::scalar::{sign, Q};
use crate::weyl::{FKey, FormWeyl};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BKey {
    pub hbar: i32,
    pub copies: Vec<Exps>,
}

impl BKey {
    pub fn weight(&self) -> i32 {
        2 * self.hbar + self.copies.iter().map(|e| multi::degree(e) as i32).sum::<i32>()
    }
}

/// An element of B_m, truncated at filtration weight `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarChain {
    pub dim: usize,
    pub m: usize,
    pub order: i32,
    pub terms: LinComb<BKey>,
}

impl BarChain {
    pub fn zero(dim: usize, m: usize, order: i32) -> Self {
        Self { dim, m, order, terms: LinComb::new() }
    }

    pub fn from_terms(dim: usize, m: usize, order: i32, mut terms: LinComb<BKey>) -> Self {
        debug_assert!(terms.keys().all(|k| k.copies.len() == m + 2));
        terms.retain(|k| k.weight() <= order);
        Self { dim, m, order, terms }
    }

    pub fn monomial(dim: usize, order: i32, hbar: i32, copies: Vec<Exps>, c: Q) -> Self {
        let m = copies.len() - 2;
        Self::from_terms(dim, m, order, LinComb::single(BKey { hbar, copies }, c))
    }

    /// 1 (x) y^{p_1} (x) ... (x) y^{p_m} (x) 1.
    pub fn generator(dim: usize, order: i32, mid: &[Exps]) -> Self {
        let mut copies = vec![multi::zeros(dim)];
        copies.extend(mid.iter().cloned());
        copies.push(multi::zeros(dim));
        Self::monomial(dim, order, 0, copies, Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn truncated(&self, order: i32) -> Self {
        Self::from_terms(self.dim, self.m, order, self.terms.clone())
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        assert_eq!(self.m, o.m, "bar degree mismatch");
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

    /// Groups terms as (hbar, first copy, last copy, coefficient) times a generator.
    pub(crate) fn split_generators(&self) -> std::collections::BTreeMap<Vec<Exps>, Vec<(i32, Exps, Exps, Q)>> {
        let mut out: std::collections::BTreeMap<Vec<Exps>, Vec<(i32, Exps, Exps, Q)>> = Default::default();
        for (k, c) in &self.terms {
            let n = k.copies.len();
            let mid = k.copies[1..n - 1].to_vec();
            out.entry(mid).or_default().push((k.hbar, k.copies[0].clone(), k.copies[n - 1].clone(), c.clone()));
        }
        out
    }
}

/// Sum over all adjacent pairs of (-1)^k (contract copies k and k+1 with o).
pub fn bar_d(alg: &WeylAlgebra, b: &BarChain) -> Result<BarChain> {
    if b.m == 0 {
        return Err(Error::Precondition("bar differential needs degree >= 1".into()));
    }
    let mut out = LinComb::new();
    for (key, c) in &b.terms {
        for k in 0..=b.m {
            let s = sign(k % 2 == 1) * c;
            for (h, y, pc) in alg.mono_product(&key.copies[k], &key.copies[k + 1]) {
                let mut copies = Vec::with_capacity(key.copies.len() - 1);
                copies.extend_from_slice(&key.copies[..k]);
                copies.push(y);
                copies.extend_from_slice(&key.copies[k + 2..]);
                out.add_term(BKey { hbar: key.hbar + h, copies }, &s * pc);
            }
        }
    }
    Ok(BarChain::from_terms(b.dim, b.m - 1, b.order, out))
}

/// Prepends a copy on which the result is constant.
pub fn bar_h(b: &BarChain) -> BarChain {
    let terms = b.terms.map_terms(|k, c| {
        let mut copies = Vec::with_capacity(k.copies.len() + 1);
        copies.push(multi::zeros(b.dim));
        copies.extend(k.copies.iter().cloned());
        Some((BKey { hbar: k.hbar, copies }, c.clone()))
    });
    BarChain::from_terms(b.dim, b.m + 1, b.order, terms)
}

/// The augmentation B_0 -> W, a (x) b -> a o b.
pub fn bar_augment(alg: &WeylAlgebra, b: &BarChain) -> FormWeyl {
    assert_eq!(b.m, 0, "augmentation is defined on B_0");
    let mut out = LinComb::new();
    for (k, c) in &b.terms {
        for (h, y, pc) in alg.mono_product(&k.copies[0], &k.copies[1]) {
            out.add_term(FKey { form: 0, hbar: k.hbar + h, y, x: multi::zeros(b.dim) }, c * pc);
        }
    }
    FormWeyl::from_terms(b.dim, b.order, out)
}

/// The homotopy on the augmentation term: w -> 1 (x) w in B_0.
pub fn bar_unit(w: &FormWeyl) -> BarChain {
    let terms = w.terms.map_terms(|k, c| {
        Some((BKey { hbar: k.hbar, copies: vec![multi::zeros(w.dim), k.y.clone()] }, c.clone()))
    });
    BarChain::from_terms(w.dim, 0, w.order, terms)
}

/// (a (x) b) . chain: a o (first copy), (last copy) o b.
pub fn bar_act(alg: &WeylAlgebra, a: &FormWeyl, chain: &BarChain, b: &FormWeyl) -> BarChain {
    let order = chain.order;
    let mut left = LinComb::new();
    for (k, c) in &chain.terms {
        for (ka, ca) in &a.terms {
            for (h, y, pc) in alg.mono_product(&ka.y, &k.copies[0]) {
                let mut copies = k.copies.clone();
                copies[0] = y;
                let key = BKey { hbar: k.hbar + ka.hbar + h, copies };
                if key.weight() <= order {
                    left.add_term(key, c * ca * pc);
                }
            }
        }
    }
    let mut out = LinComb::new();
    for (k, c) in &left {
        let last = k.copies.len() - 1;
        for (kb, cb) in &b.terms {
            for (h, y, pc) in alg.mono_product(&k.copies[last], &kb.y) {
                let mut copies = k.copies.clone();
                copies[last] = y;
                let key = BKey { hbar: k.hbar + kb.hbar + h, copies };
                if key.weight() <= order {
                    out.add_term(key, c * cb * pc);
                }
            }
        }
    }
    BarChain::from_terms(chain.dim, chain.m, order, out)
}
