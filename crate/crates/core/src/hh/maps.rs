//! Comparison maps lambda: K -> B, nu: B -> K and the homotopy rho on B.
//!
//! Each map is fixed on module generators (C^I on the Koszul side, monomials
//! with constant end copies on the bar side) and extended by the two-sided
//! action. Generator values are memoized per `Comparison`.

use std::collections::HashMap;

use num_traits::One;

use super::bar::{bar_act, bar_d, bar_h, BarChain};
use super::koszul::{koszul_act, koszul_d, koszul_h, KoszulChain};
use super::WeylAlgebra;
use crate::exterior::{self, Form};
use crate::multi::{self, Exps};
use crate::scalar::Q;
use crate::weyl::FormWeyl;

pub struct Comparison<'a> {
    pub alg: &'a WeylAlgebra,
    pub order: i32,
    lambda: HashMap<Form, BarChain>,
    nu: HashMap<Vec<Exps>, KoszulChain>,
    rho: HashMap<Vec<Exps>, BarChain>,
}

impl<'a> Comparison<'a> {
    pub fn new(alg: &'a WeylAlgebra, order: i32) -> Self {
        Self { alg, order, lambda: HashMap::new(), nu: HashMap::new(), rho: HashMap::new() }
    }

    fn mono(&self, hbar: i32, y: &Exps, c: &Q) -> FormWeyl {
        FormWeyl::monomial(self.alg.dim, self.order, 0, hbar, y.clone(), multi::zeros(self.alg.dim), c.clone())
    }

    pub fn lambda(&mut self, a: &KoszulChain) -> BarChain {
        let dim = self.alg.dim;
        let mut out = BarChain::zero(dim, a.m, self.order);
        for (k, c) in &a.terms {
            let g = self.lambda_generator(k.c);
            let left = self.mono(k.hbar, &k.y1, c);
            let right = self.mono(0, &k.y2, &Q::one());
            out = out.add(&bar_act(self.alg, &left, &g, &right));
        }
        out
    }

    fn lambda_generator(&mut self, c: Form) -> BarChain {
        if let Some(v) = self.lambda.get(&c) {
            return v.clone();
        }
        let dim = self.alg.dim;
        let v = if c == 0 {
            BarChain::generator(dim, self.order, &[])
        } else {
            let d = koszul_d(self.alg, &KoszulChain::generator(dim, self.order, c)).expect("degree >= 1");
            bar_h(&self.lambda(&d))
        };
        self.lambda.insert(c, v.clone());
        v
    }

    pub fn nu(&mut self, b: &BarChain) -> KoszulChain {
        let mut out = KoszulChain::zero(self.alg.dim, b.m, self.order);
        for (mid, ends) in b.split_generators() {
            let g = self.nu_generator(&mid);
            for (h, first, last, c) in ends {
                let left = self.mono(h, &first, &c);
                let right = self.mono(0, &last, &Q::one());
                out = out.add(&koszul_act(self.alg, &left, &g, &right));
            }
        }
        out
    }

    fn nu_generator(&mut self, mid: &[Exps]) -> KoszulChain {
        if let Some(v) = self.nu.get(mid) {
            return v.clone();
        }
        let dim = self.alg.dim;
        let v = if mid.is_empty() {
            KoszulChain::generator(dim, self.order, 0)
        } else {
            let d = bar_d(self.alg, &BarChain::generator(dim, self.order, mid)).expect("degree >= 1");
            koszul_h(self.alg, &self.nu(&d))
        };
        self.nu.insert(mid.to_vec(), v.clone());
        v
    }

    pub fn rho(&mut self, b: &BarChain) -> BarChain {
        let mut out = BarChain::zero(self.alg.dim, b.m + 1, self.order);
        if b.m == 0 {
            return out;
        }
        for (mid, ends) in b.split_generators() {
            let g = self.rho_generator(&mid);
            for (h, first, last, c) in ends {
                let left = self.mono(h, &first, &c);
                let right = self.mono(0, &last, &Q::one());
                out = out.add(&bar_act(self.alg, &left, &g, &right));
            }
        }
        out
    }

    fn rho_generator(&mut self, mid: &[Exps]) -> BarChain {
        if let Some(v) = self.rho.get(mid) {
            return v.clone();
        }
        let g = BarChain::generator(self.alg.dim, self.order, mid);
        let ln = {
            let n = self.nu(&g);
            self.lambda(&n)
        };
        let db = bar_d(self.alg, &g).expect("degree >= 1");
        let rdb = self.rho(&db);
        let v = bar_h(&g.sub(&ln).sub(&rdb));
        self.rho.insert(mid.to_vec(), v.clone());
        v
    }
}

pub fn koszul_to_bar(alg: &WeylAlgebra, a: &KoszulChain) -> BarChain {
    Comparison::new(alg, a.order).lambda(a)
}

pub fn bar_to_koszul(alg: &WeylAlgebra, b: &BarChain) -> KoszulChain {
    Comparison::new(alg, b.order).nu(b)
}

pub fn bar_homotopy_rho(alg: &WeylAlgebra, b: &BarChain) -> BarChain {
    Comparison::new(alg, b.order).rho(b)
}

/// Every C-monomial of degree m.
pub(crate) fn c_monomials(dim: usize, m: usize) -> Vec<Form> {
    (0..(1u32 << dim)).filter(|s| exterior::degree(*s) as usize == m).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn e(v: &[u8]) -> Exps {
        v.iter().copied().collect()
    }

    #[test]
    fn lambda_of_c1() {
        let alg = WeylAlgebra::standard(2);
        let l = koszul_to_bar(&alg, &KoszulChain::generator(2, 6, exterior::single(0)));
        // h_B(y^1 (x) 1 - 1 (x) y^1)
        let expect = BarChain::monomial(2, 6, 0, vec![e(&[0, 0]), e(&[1, 0]), e(&[0, 0])], q(1))
            .sub(&BarChain::monomial(2, 6, 0, vec![e(&[0, 0]), e(&[0, 0]), e(&[1, 0])], q(1)));
        assert_eq!(l, expect);
    }

    #[test]
    fn nu_of_linear_generator() {
        let alg = WeylAlgebra::standard(2);
        let n = bar_to_koszul(&alg, &BarChain::generator(2, 6, &[e(&[0, 1])]));
        assert_eq!(n, KoszulChain::generator(2, 6, exterior::single(1)));
    }

    #[test]
    fn rho_vanishes_on_b0() {
        let alg = WeylAlgebra::standard(2);
        let b = BarChain::monomial(2, 6, 0, vec![e(&[1, 0]), e(&[0, 1])], q(1));
        assert!(bar_homotopy_rho(&alg, &b).is_zero());
    }
}
