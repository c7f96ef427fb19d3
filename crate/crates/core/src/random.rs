//! Seeded random inputs for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cochain::{Cochain, Slots};
use crate::exterior::{self, Form};
use crate::hh::{BKey, BarChain, KKey, KoszulChain, PKey, PsiElement};
use crate::linear::LinComb;
use crate::multi::{self, Exps};
use crate::scalar::{qf, Q};
use crate::weyl::{FKey, FormWeyl};
use crate::xpoly::XPoly;

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn usize_in(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    pub fn i32_in(&mut self, lo: i32, hi: i32) -> i32 {
        self.rng.gen_range(lo..=hi)
    }

    /// Nonzero rational with numerator and denominator bounded by 9 in absolute value.
    pub fn rational(&mut self) -> Q {
        let n = self.rng.gen_range(1..=9i64) * if self.rng.gen_bool(0.5) { -1 } else { 1 };
        let d = self.rng.gen_range(1..=9i64);
        qf(n, d)
    }

    pub fn exps(&mut self, dim: usize, max_degree: u32) -> Exps {
        let d = self.rng.gen_range(0..=max_degree);
        let all = multi::of_degree(dim, d);
        all[self.rng.gen_range(0..all.len())].clone()
    }

    pub fn form(&mut self, dim: usize, degree: u32) -> Form {
        let mut idx: Vec<usize> = (0..dim).collect();
        for i in (1..idx.len()).rev() {
            let j = self.rng.gen_range(0..=i);
            idx.swap(i, j);
        }
        exterior::from_indices(&idx[..degree as usize]).map(|(f, _)| f).unwrap_or(0)
    }

    pub fn xpoly(&mut self, dim: usize, max_degree: u32, terms: usize) -> XPoly {
        let mut t = LinComb::new();
        for _ in 0..terms {
            let e = self.exps(dim, max_degree);
            t.add_term(e, self.rational());
        }
        XPoly { dim, terms: t }
    }

    /// Random Weyl-valued form with the given exterior degrees, hbar powers in
    /// [0, max_hbar], y-degree <= max_y, x-degree <= max_x.
    pub fn weyl(&mut self, spec: &WeylSpec) -> FormWeyl {
        let mut t = LinComb::new();
        for _ in 0..spec.terms {
            let q = spec.form_degrees[self.rng.gen_range(0..spec.form_degrees.len())];
            let key = FKey {
                form: self.form(spec.dim, q),
                hbar: self.rng.gen_range(0..=spec.max_hbar),
                y: self.exps(spec.dim, spec.max_y),
                x: self.exps(spec.dim, spec.max_x),
            };
            t.add_term(key, self.rational());
        }
        FormWeyl::from_terms(spec.dim, spec.order, t)
    }

    /// Random cochain of the given arity with slot orders <= max_slot.
    pub fn cochain(&mut self, spec: &WeylSpec, arity: usize, max_slot: u32, cap: u32) -> Cochain {
        let mut out = Cochain::zero(spec.dim, spec.order, cap, arity);
        for _ in 0..spec.terms {
            let one = WeylSpec { terms: 1, ..spec.clone() };
            let c = self.weyl(&one);
            let slots: Slots = (0..arity).map(|_| self.exps(spec.dim, max_slot)).collect();
            out = out.add(&Cochain::with_slots(&c, &slots, cap));
        }
        out
    }

    /// Random element of B_m with hbar power <= 1 and every copy of degree <= max_y.
    pub fn bar(&mut self, dim: usize, m: usize, order: i32, max_y: u32, terms: usize) -> BarChain {
        let mut t = LinComb::new();
        for _ in 0..terms {
            let copies = (0..m + 2).map(|_| self.exps(dim, max_y)).collect();
            t.add_term(BKey { hbar: self.rng.gen_range(0..=1), copies }, self.rational());
        }
        BarChain::from_terms(dim, m, order, t)
    }

    /// Random element of K_m with hbar power <= 1 and y_1, y_2 degrees <= max_y.
    pub fn koszul(&mut self, dim: usize, m: usize, order: i32, max_y: u32, terms: usize) -> KoszulChain {
        let mut t = LinComb::new();
        for _ in 0..terms {
            let key = KKey {
                hbar: self.rng.gen_range(0..=1),
                y1: self.exps(dim, max_y),
                y2: self.exps(dim, max_y),
                c: self.form(dim, m as u32),
            };
            t.add_term(key, self.rational());
        }
        KoszulChain::from_terms(dim, m, order, t)
    }

    /// Random PsiElement with y- and psi-degrees <= max_deg and hbar powers in [-1, 1].
    pub fn psi(&mut self, dim: usize, order: i32, max_deg: u32, terms: usize) -> PsiElement {
        let mut t = LinComb::new();
        for _ in 0..terms {
            let d = self.rng.gen_range(0..=max_deg.min(dim as u32));
            let key = PKey { hbar: self.rng.gen_range(-1..=1), y: self.exps(dim, max_deg), psi: self.form(dim, d) };
            t.add_term(key, self.rational());
        }
        PsiElement::from_terms(dim, order, t)
    }

    /// Random invertible rational matrix.
    pub fn invertible(&mut self, n: usize) -> Vec<Vec<Q>> {
        loop {
            let m: Vec<Vec<Q>> = (0..n)
                .map(|_| (0..n).map(|_| if self.rng.gen_bool(0.3) { Q::from_integer(0.into()) } else { self.rational() }).collect())
                .collect();
            if crate::scalar::invert(&m).is_ok() {
                return m;
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct WeylSpec {
    pub dim: usize,
    pub order: i32,
    pub terms: usize,
    pub max_hbar: i32,
    pub max_y: u32,
    pub max_x: u32,
    pub form_degrees: Vec<u32>,
}

impl WeylSpec {
    pub fn fiber(dim: usize, order: i32, max_y: u32, terms: usize) -> Self {
        Self { dim, order, terms, max_hbar: 1, max_y, max_x: 0, form_degrees: vec![0] }
    }
}
