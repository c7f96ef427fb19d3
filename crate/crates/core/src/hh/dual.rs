//! Dual maps on Hochschild cochains and the homotopy chi.
//!
//! A q-cochain P is identified with the bimodule map B_q -> W,
//! a_0 (x) ... (x) a_{q+1} -> a_0 o P(a_1..a_q) o a_{q+1}, and a PsiElement
//! sum_I g_I psi_I with the bimodule map K_q -> W sending C^I to g_I.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::bar::BarChain;
use super::koszul::KoszulChain;
use super::maps::{c_monomials, Comparison};
use super::psi::{small_h, PsiElement};
use super::WeylAlgebra;
use crate::cochain::{CKey, Cochain, Slots};
use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::linear::LinComb;
use crate::multi::{self, Exps};
use crate::scalar::{sign, Q};
use crate::weyl::{FKey, FormWeyl};
use crate::xpoly::HbarScalar;

/// P(y^{b_1}, ..., y^{b_q}) truncated at `order`, without truncating P first.
fn eval_monomials(p: &Cochain, args: &[Exps], order: i32) -> LinComb<(i32, Exps)> {
    let mut out = LinComb::new();
    'terms: for (k, c) in &p.terms {
        let mut coeff = c.clone();
        let mut y = k.y.clone();
        for (alpha, beta) in k.slots.iter().zip(args) {
            if !multi::le(alpha, beta) {
                continue 'terms;
            }
            coeff *= multi::deriv_coeff(beta, alpha);
            y = multi::add(&y, &multi::sub(beta, alpha));
        }
        if 2 * k.hbar + multi::degree(&y) as i32 <= order {
            out.add_term((k.hbar, y), coeff);
        }
    }
    out
}

/// hbar^h c y^l o v o y^r, truncated.
fn sandwich(
    alg: &WeylAlgebra,
    h: i32,
    c: &Q,
    l: &Exps,
    v: &LinComb<(i32, Exps)>,
    r: &Exps,
    order: i32,
    out: &mut LinComb<(i32, Exps)>,
) {
    for ((hv, yv), cv) in v {
        for (h1, y1, c1) in alg.mono_product(l, yv) {
            for (h2, y2, c2) in alg.mono_product(&y1, r) {
                let hh = h + hv + h1 + h2;
                if 2 * hh + multi::degree(&y2) as i32 <= order {
                    out.add_term((hh, y2), c * cv * &c1 * c2);
                }
            }
        }
    }
}

fn to_weyl(dim: usize, order: i32, t: LinComb<(i32, Exps)>) -> FormWeyl {
    let terms = t.map_terms(|(h, y), c| Some((FKey { form: 0, hbar: *h, y: y.clone(), x: multi::zeros(dim) }, c.clone())));
    FormWeyl::from_terms(dim, order, terms)
}

fn from_weyl(w: &FormWeyl) -> LinComb<(i32, Exps)> {
    w.terms.map_terms(|k, c| Some(((k.hbar, k.y.clone()), c.clone())))
}

/// The bimodule map attached to `p`, applied to `b`.
pub fn eval_on_bar(alg: &WeylAlgebra, p: &Cochain, b: &BarChain, order: i32) -> FormWeyl {
    assert_eq!(p.arity, b.m, "arity must match bar degree");
    let mut cache: HashMap<Vec<Exps>, LinComb<(i32, Exps)>> = HashMap::new();
    let mut out = LinComb::new();
    for (mid, ends) in b.split_generators() {
        let v = cache.entry(mid.clone()).or_insert_with(|| eval_monomials(p, &mid, order));
        for (h, l, r, c) in ends {
            sandwich(alg, h, &c, &l, v, &r, order, &mut out);
        }
    }
    to_weyl(alg.dim, order, out)
}

/// The bimodule map attached to `g`, applied to `k`.
pub fn eval_on_koszul(alg: &WeylAlgebra, g: &PsiElement, k: &KoszulChain, order: i32) -> FormWeyl {
    let mut cache: HashMap<Form, LinComb<(i32, Exps)>> = HashMap::new();
    let mut out = LinComb::new();
    for (key, c) in &k.terms {
        let v = cache.entry(key.c).or_insert_with(|| from_weyl(&g.coefficient(key.c)));
        sandwich(alg, key.hbar, c, &key.y1, v, &key.y2, order, &mut out);
    }
    to_weyl(alg.dim, order, out)
}

fn slot_tuples(dim: usize, arity: usize, cap: u32) -> Vec<Vec<Exps>> {
    let base = multi::up_to_degree(dim, cap);
    let mut out: Vec<Vec<Exps>> = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                base.iter().map(move |e| {
                    let mut t2 = t.clone();
                    t2.push(e.clone());
                    t2
                })
            })
            .collect();
    }
    out
}

/// Recovers the cochain whose values on monomial arguments are `phi`:
/// c_alpha = sum_{beta + gamma = alpha} prod_s (-y)^{gamma_s} / (gamma_s! beta_s!) phi(y^beta).
pub fn extract_cochain(
    dim: usize,
    arity: usize,
    order: i32,
    cap: u32,
    mut phi: impl FnMut(&[Exps]) -> FormWeyl,
) -> Cochain {
    let tuples = slot_tuples(dim, arity, cap);
    let values: HashMap<Vec<Exps>, FormWeyl> = tuples.iter().map(|t| (t.clone(), phi(t))).collect();
    let mut terms = LinComb::new();
    for alpha in &tuples {
        let mut parts: Vec<Vec<Exps>> = vec![Vec::new()];
        for a in alpha {
            parts = parts
                .into_iter()
                .flat_map(|t| {
                    multi::sub_indices(a).into_iter().map(move |b| {
                        let mut t2 = t.clone();
                        t2.push(b);
                        t2
                    })
                })
                .collect();
        }
        let slots: Slots = alpha.iter().cloned().collect();
        for beta in parts {
            let v = &values[&beta];
            if v.is_zero() {
                continue;
            }
            let mut factor = Q::one();
            let mut shift = multi::zeros(dim);
            for (a, b) in alpha.iter().zip(&beta) {
                let g = multi::sub(a, b);
                factor = factor * sign(multi::degree(&g) % 2 == 1) / (multi::mfactorial(&g) * multi::mfactorial(b));
                shift = multi::add(&shift, &g);
            }
            for (k, c) in &v.terms {
                let key = CKey {
                    form: 0,
                    hbar: k.hbar,
                    y: multi::add(&k.y, &shift),
                    slots: slots.clone(),
                    x: multi::zeros(dim),
                };
                terms.add_term(key, c * &factor);
            }
        }
    }
    Cochain::from_terms(dim, order, cap, arity, terms)
}

/// lambda-hat: P -> (C^I -> f_P(lambda(C^I))), truncated at psi-weight `order`.
pub fn lambda_hat(alg: &WeylAlgebra, p: &Cochain, order: i32) -> PsiElement {
    let q = p.arity;
    let mut cmp = Comparison::new(alg, q as i32);
    let coeffs: Vec<(Form, FormWeyl)> = c_monomials(alg.dim, q)
        .into_iter()
        .map(|c| {
            let l = cmp.lambda(&KoszulChain::generator(alg.dim, q as i32, c));
            (c, eval_on_bar(alg, p, &l, order + q as i32))
        })
        .collect();
    PsiElement::from_coefficients(alg.dim, order, &coeffs)
}

/// nu-hat: the arity-`arity` cochain a_1..a_r -> g(nu(1 (x) a_1 (x) ... (x) a_r (x) 1)).
pub fn nu_hat(alg: &WeylAlgebra, g: &PsiElement, arity: usize, order: i32, cap: u32) -> Cochain {
    let mut cmp = Comparison::new(alg, arity as i32 * cap as i32);
    let chain_order = cmp.order;
    extract_cochain(alg.dim, arity, order, cap, |beta| {
        let k = cmp.nu(&BarChain::generator(alg.dim, chain_order, beta));
        eval_on_koszul(alg, g, &k, order)
    })
}

/// rho-hat: the arity-(q-1) cochain a_1..a_{q-1} -> f_P(rho(1 (x) a_1 (x) ... (x) 1)).
pub fn rho_hat(alg: &WeylAlgebra, p: &Cochain, order: i32, cap: u32) -> Result<Cochain> {
    if p.arity == 0 {
        return Err(Error::Precondition("rho-hat needs arity >= 1".into()));
    }
    let arity = p.arity - 1;
    let mut cmp = Comparison::new(alg, arity as i32 * cap as i32);
    let chain_order = cmp.order;
    Ok(extract_cochain(alg.dim, arity, order, cap, |beta| {
        let r = cmp.rho(&BarChain::generator(alg.dim, chain_order, beta));
        eval_on_bar(alg, p, &r, order)
    }))
}

/// chi(P) = nu-hat(H(lambda-hat(P))) + rho-hat(P), truncated at (order, cap).
///
/// Exact when P holds every term that can reach weight `order` on arguments of
/// total degree arity * cap.
pub fn cochain_homotopy_chi(alg: &WeylAlgebra, p: &Cochain, order: i32, cap: u32) -> Result<Cochain> {
    if p.arity == 0 {
        return Err(Error::Precondition("chi needs arity >= 1".into()));
    }
    let h = small_h(alg, &lambda_hat(alg, p, order));
    let a = nu_hat(alg, &h, p.arity - 1, order, cap);
    Ok(a.add(&rho_hat(alg, p, order, cap)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HhClass {
    /// A 0-cocycle: its value in the center.
    Central(HbarScalar),
    /// A q-cocycle with q >= 1 and a cochain Q with dQ = P.
    Exact(Cochain),
}

/// Reduces a Hochschild cocycle of W to its class.
pub fn hh_reduce(alg: &WeylAlgebra, p: &Cochain, order: i32, cap: u32) -> Result<HhClass> {
    let d = p.hochschild_d(&alg.poisson);
    if !d.is_zero() {
        return Err(Error::NotCocycle(format!("d of the {}-cochain has {} terms", p.arity, d.terms.len())));
    }
    if p.arity == 0 {
        let mut s = HbarScalar::zero();
        for (k, c) in &p.terms {
            if !multi::is_zero(&k.y) {
                return Err(Error::NotCocycle("0-cochain depends on y".into()));
            }
            s = s.add(&HbarScalar::monomial(k.hbar, c.clone()));
        }
        return Ok(HhClass::Central(s));
    }
    Ok(HhClass::Exact(cochain_homotopy_chi(alg, p, order, cap)?))
}

/// A basis of the 0-cocycles hbar^k y^p (k >= 0, 2k + |p| <= order), found by
/// solving dP = 0 on the coefficients. The differential raises weight, so it is
/// computed with two extra orders.
pub fn zero_cocycle_basis(alg: &WeylAlgebra, order: i32) -> Vec<FormWeyl> {
    let dim = alg.dim;
    let basis = crate::cochain::spanning_monomials(dim, order);
    let images: Vec<LinComb<CKey>> = basis
        .iter()
        .map(|b| Cochain::from_weyl(&b.with_order(order + 2), order as u32).hochschild_d(&alg.poisson).terms)
        .collect();
    let rows: Vec<CKey> = {
        let mut r: Vec<CKey> = images.iter().flat_map(|t| t.keys().cloned()).collect();
        r.sort();
        r.dedup();
        r
    };
    let matrix: Vec<Vec<Q>> = rows
        .iter()
        .map(|k| images.iter().map(|t| t.get(k).cloned().unwrap_or_else(Q::zero)).collect())
        .collect();
    nullspace(&matrix, basis.len())
        .into_iter()
        .map(|v| {
            v.iter()
                .zip(&basis)
                .filter(|(c, _)| !c.is_zero())
                .fold(FormWeyl::zero(dim, order), |acc, (c, b)| acc.add(&b.scale(c)))
        })
        .collect()
}

/// Kernel of a rational matrix with `cols` columns, by reduced row echelon form.
fn nullspace(m: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = Q::one() / &a[row][col];
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..cols {
                    let t = &f * &a[row][c];
                    a[r][c] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn e(v: &[u8]) -> Exps {
        v.iter().copied().collect()
    }

    #[test]
    fn extraction_recovers_cochain() {
        let p = Cochain::with_slots(&FormWeyl::y(2, 6, 0), &[e(&[0, 1])], 2)
            .add(&Cochain::with_slots(&FormWeyl::hbar_pow(2, 6, 1), &[e(&[2, 0])], 2));
        let back = extract_cochain(2, 1, 6, 2, |b| to_weyl(2, 6, eval_monomials(&p, b, 6)));
        assert_eq!(back, p);
    }

    #[test]
    fn chi_of_d_y1() {
        let alg = WeylAlgebra::standard(2);
        let a = Cochain::from_weyl(&FormWeyl::y(2, 8, 0), 2).hochschild_d(&alg.poisson);
        assert_eq!(a, Cochain::with_slots(&FormWeyl::hbar_pow(2, 8, 1).scale(&q(-1)), &[e(&[0, 1])], 2));
        let chi = cochain_homotopy_chi(&alg, &a, 6, 2).unwrap();
        let diff = chi.to_weyl().sub(&FormWeyl::y(2, 6, 0));
        assert!(diff.is_y_free());
    }

    #[test]
    fn zero_cocycles_are_central() {
        let alg = WeylAlgebra::standard(2);
        let basis = zero_cocycle_basis(&alg, 6);
        assert_eq!(basis.len(), 4);
        assert!(basis.iter().all(|b| b.is_y_free()));
    }

    #[test]
    fn reduce_rejects_y1() {
        let alg = WeylAlgebra::standard(2);
        let y1 = Cochain::from_weyl(&FormWeyl::y(2, 6, 0), 2);
        assert!(matches!(hh_reduce(&alg, &y1, 6, 2), Err(Error::NotCocycle(_))));
        let c = Cochain::from_weyl(&FormWeyl::hbar_pow(2, 6, 2), 2);
        assert_eq!(hh_reduce(&alg, &c, 6, 2).unwrap(), HhClass::Central(HbarScalar::monomial(2, q(1))));
    }
}
