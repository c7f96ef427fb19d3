//! Resolutions of the constant-coefficient Weyl algebra and the Hochschild
//! homotopy built from them.
//!
//! Elements of W are `FormWeyl` values with no x-dependence and no forms.

mod bar;
mod dual;
mod koszul;
mod maps;
mod psi;
mod transport;

pub use bar::{bar_act, bar_augment, bar_d, bar_h, bar_unit, BKey, BarChain};
pub use dual::{
    cochain_homotopy_chi, eval_on_bar, eval_on_koszul, extract_cochain, hh_reduce, lambda_hat, nu_hat,
    rho_hat, zero_cocycle_basis, HhClass,
};
pub use koszul::{koszul_act, koszul_augment, koszul_d, koszul_h, koszul_section, KKey, KoszulChain};
pub use maps::{bar_homotopy_rho, bar_to_koszul, koszul_to_bar, Comparison};
pub use psi::{small_d, small_h, PKey, PsiElement};
pub use transport::{
    transport_bar, transport_cochain, transport_koszul, transport_psi, transport_theta, transport_weyl,
};

use std::collections::HashMap;
use std::sync::Mutex;

use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::multi::{self, Exps};
use crate::poisson::Poisson;
use crate::scalar::{invert, Q};

/// Hochschild cochains of W: fiberwise cochains without x or dx.
pub type WeylCochain = Cochain;

/// Product of two y-monomials: a list of (hbar power, y exponent, coefficient).
type MonoProduct = Vec<(i32, Exps, Q)>;

/// The Weyl algebra of a constant nondegenerate antisymmetric matrix theta.
pub struct WeylAlgebra {
    pub dim: usize,
    pub theta: Vec<Vec<Q>>,
    /// omega_{ij}, the inverse of theta.
    pub omega_lower: Vec<Vec<Q>>,
    pub poisson: Poisson,
    products: Mutex<HashMap<(Exps, Exps), MonoProduct>>,
}

impl Clone for WeylAlgebra {
    fn clone(&self) -> Self {
        Self::new(self.theta.clone()).expect("validated on construction")
    }
}

impl std::fmt::Debug for WeylAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WeylAlgebra").field("theta", &self.theta).finish()
    }
}

impl WeylAlgebra {
    pub fn new(theta: Vec<Vec<Q>>) -> Result<Self> {
        let dim = theta.len();
        if dim == 0 || dim % 2 == 1 {
            return Err(Error::OddDimension(dim));
        }
        let poisson = Poisson::constant(&theta)?;
        let omega_lower = invert(&theta)?;
        Ok(Self { dim, theta, omega_lower, poisson, products: Mutex::new(HashMap::new()) })
    }

    /// theta^{2i-1,2i} = 1.
    pub fn standard(dim: usize) -> Self {
        Self::new(Poisson::standard(dim).constant_matrix().unwrap()).expect("standard theta")
    }

    /// y^p o y^q.
    pub fn mono_product(&self, p: &Exps, q: &Exps) -> MonoProduct {
        let key = (p.clone(), q.clone());
        if let Some(v) = self.products.lock().unwrap().get(&key) {
            return v.clone();
        }
        let mut out: std::collections::BTreeMap<(i32, Exps), Q> = Default::default();
        let nmax = multi::degree(p).min(multi::degree(q)) as usize;
        for n in 0..=nmax {
            for kt in self.poisson.kernel(n) {
                if !multi::le(&kt.alpha, p) || !multi::le(&kt.beta, q) {
                    continue;
                }
                let c = kt.coeff.as_constant().expect("constant kernel")
                    * multi::deriv_coeff(p, &kt.alpha)
                    * multi::deriv_coeff(q, &kt.beta);
                let y = multi::add(&multi::sub(p, &kt.alpha), &multi::sub(q, &kt.beta));
                *out.entry((n as i32, y)).or_insert_with(num_traits::Zero::zero) += c;
            }
        }
        let v: MonoProduct = out
            .into_iter()
            .filter(|(_, c)| !num_traits::Zero::is_zero(c))
            .map(|((h, y), c)| (h, y, c))
            .collect();
        self.products.lock().unwrap().insert(key, v.clone());
        v
    }
}
