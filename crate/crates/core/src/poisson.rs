//! The fiberwise Moyal-Weyl product a o b = exp(hbar/2 theta^{ij} d_{y^i} d_{z^j}) a(y) b(z)|_{z=y}.

use std::collections::BTreeMap;
use std::sync::Mutex;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior;
use crate::linear::LinComb;
use crate::multi::{self, Exps};
use crate::scalar::{factorial, q, sign, Q};
use crate::weyl::{FKey, FormWeyl};
use crate::xpoly::XPoly;

/// One term c(x) d^alpha (x) d^beta of the degree-n part of the Moyal kernel,
/// with the 1/(2^n n!) already folded into `coeff`.
#[derive(Clone, Debug)]
pub struct KernelTerm {
    pub alpha: Exps,
    pub beta: Exps,
    pub coeff: XPoly,
}

/// An antisymmetric bivector theta^{ij}(x) together with a lazily grown cache
/// of the expanded exponential kernel.
pub struct Poisson {
    pub dim: usize,
    pub upper: Vec<Vec<XPoly>>,
    kernel: Mutex<Vec<Vec<KernelTerm>>>,
    raw: Mutex<Vec<BTreeMap<(Exps, Exps), XPoly>>>,
}

impl Clone for Poisson {
    fn clone(&self) -> Self {
        Self::new_unchecked(self.upper.clone())
    }
}

impl std::fmt::Debug for Poisson {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Poisson").field("dim", &self.dim).field("upper", &self.upper).finish()
    }
}

impl PartialEq for Poisson {
    fn eq(&self, o: &Self) -> bool {
        self.upper == o.upper
    }
}

impl Poisson {
    pub fn new(upper: Vec<Vec<XPoly>>) -> Result<Self> {
        let n = upper.len();
        if n == 0 || n % 2 == 1 {
            return Err(Error::OddDimension(n));
        }
        for (i, row) in upper.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(n, row.len()));
            }
            for j in 0..n {
                if upper[i][j] != upper[j][i].neg() {
                    return Err(Error::NotAntisymmetric(i + 1, j + 1));
                }
            }
        }
        Ok(Self::new_unchecked(upper))
    }

    fn new_unchecked(upper: Vec<Vec<XPoly>>) -> Self {
        let dim = upper.len();
        let mut raw0 = BTreeMap::new();
        raw0.insert((multi::zeros(dim), multi::zeros(dim)), XPoly::one(dim));
        let k0 = vec![KernelTerm { alpha: multi::zeros(dim), beta: multi::zeros(dim), coeff: XPoly::one(dim) }];
        Self { dim, upper, kernel: Mutex::new(vec![k0]), raw: Mutex::new(vec![raw0]) }
    }

    /// Constant bivector from a rational matrix.
    pub fn constant(theta: &[Vec<Q>]) -> Result<Self> {
        let n = theta.len();
        Self::new(theta.iter().map(|r| r.iter().map(|c| XPoly::constant(n, c.clone())).collect()).collect())
    }

    /// The standard bivector theta^{12} = 1 (and theta^{2i-1,2i} = 1 in higher dimension).
    pub fn standard(dim: usize) -> Self {
        let mut m = vec![vec![Q::zero(); dim]; dim];
        for i in 0..dim / 2 {
            m[2 * i][2 * i + 1] = q(1);
            m[2 * i + 1][2 * i] = q(-1);
        }
        Self::constant(&m).expect("standard bivector")
    }

    pub fn constant_matrix(&self) -> Option<Vec<Vec<Q>>> {
        self.upper.iter().map(|r| r.iter().map(XPoly::as_constant).collect()).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.constant_matrix().is_some()
    }

    /// Degree-n kernel terms.
    pub fn kernel(&self, n: usize) -> Vec<KernelTerm> {
        let mut ker = self.kernel.lock().unwrap();
        let mut raw = self.raw.lock().unwrap();
        while ker.len() <= n {
            let m = raw.len();
            let prev = raw.last().unwrap();
            let mut next: BTreeMap<(Exps, Exps), XPoly> = BTreeMap::new();
            for ((a, b), c) in prev {
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        if self.upper[i][j].is_zero() {
                            continue;
                        }
                        let mut a2 = a.clone();
                        a2[i] += 1;
                        let mut b2 = b.clone();
                        b2[j] += 1;
                        let t = c.mul(&self.upper[i][j]);
                        let e = next.entry((a2, b2)).or_insert_with(|| XPoly::zero(self.dim));
                        *e = e.add(&t);
                    }
                }
            }
            next.retain(|_, c| !c.is_zero());
            let norm = Q::from_integer(num_bigint::BigInt::from(1u64 << m)) * factorial(m as u32);
            let norm = Q::from_integer(1.into()) / norm;
            let level = next
                .iter()
                .map(|((a, b), c)| KernelTerm { alpha: a.clone(), beta: b.clone(), coeff: c.scale(&norm) })
                .collect();
            raw.push(next);
            ker.push(level);
        }
        ker[n].clone()
    }

    /// a o b, with exterior parts wedged in order.
    pub fn product(&self, a: &FormWeyl, b: &FormWeyl) -> FormWeyl {
        self.bidifferential(a, b, false)
    }

    /// sigma(a o b) on the form-degree 0 parts, without building the full product.
    pub fn sigma_product(&self, a: &FormWeyl, b: &FormWeyl) -> FormWeyl {
        assert_eq!(a.dim, self.dim, "dimension mismatch");
        assert_eq!(b.dim, self.dim, "dimension mismatch");
        let order = a.order.min(b.order);
        let mut by_y: BTreeMap<&Exps, Vec<(&FKey, &Q)>> = BTreeMap::new();
        for (kb, cb) in &b.terms {
            if kb.form == 0 {
                by_y.entry(&kb.y).or_default().push((kb, cb));
            }
        }
        let mut levels: Vec<BTreeMap<Exps, Vec<KernelTerm>>> = Vec::new();
        let mut out: LinComb<FKey> = LinComb::new();
        for (ka, ca) in &a.terms {
            if ka.form != 0 {
                continue;
            }
            let n = multi::degree(&ka.y) as usize;
            while levels.len() <= n {
                let mut m: BTreeMap<Exps, Vec<KernelTerm>> = BTreeMap::new();
                for kt in self.kernel(levels.len()) {
                    m.entry(kt.alpha.clone()).or_default().push(kt);
                }
                levels.push(m);
            }
            let Some(terms) = levels[n].get(&ka.y) else { continue };
            let fa = multi::deriv_coeff(&ka.y, &ka.y);
            for kt in terms {
                let Some(bs) = by_y.get(&kt.beta) else { continue };
                let fb = multi::deriv_coeff(&kt.beta, &kt.beta);
                for (kb, cb) in bs {
                    let hbar = ka.hbar + kb.hbar + n as i32;
                    if 2 * hbar > order {
                        continue;
                    }
                    let c = ca * *cb * &fa * &fb;
                    let x = multi::add(&ka.x, &kb.x);
                    for (e, ce) in &kt.coeff.terms {
                        out.add_term(FKey { form: 0, hbar, y: multi::zeros(self.dim), x: multi::add(&x, e) }, &c * ce);
                    }
                }
            }
        }
        FormWeyl::from_terms(self.dim, order, out)
    }

    /// (1/hbar)[a, b] for the graded commutator [a,b] = a o b - (-)^{q_a q_b} b o a.
    pub fn hbar_commutator(&self, a: &FormWeyl, b: &FormWeyl) -> FormWeyl {
        self.bidifferential(a, b, true)
    }

    fn bidifferential(&self, a: &FormWeyl, b: &FormWeyl, commutator: bool) -> FormWeyl {
        assert_eq!(a.dim, self.dim, "dimension mismatch");
        assert_eq!(b.dim, self.dim, "dimension mismatch");
        let order = a.order.min(b.order);
        let shift = if commutator { -1 } else { 0 };
        let factor = if commutator { q(2) } else { q(1) };
        let max_n = a.max_y_degree().min(b.max_y_degree()) as usize;
        let kernels: Vec<Vec<KernelTerm>> = (0..=max_n).map(|n| self.kernel(n)).collect();
        let (ga, gb) = (groups(a), groups(b));
        let mut acc: BTreeMap<Group, LinComb<Exps>> = BTreeMap::new();
        for ((fa, ha, ya), pa) in &ga {
            let wa = 2 * ha + multi::degree(ya) as i32;
            for ((fb, hb, yb), pb) in &gb {
                if wa + 2 * hb + multi::degree(yb) as i32 + 2 * shift > order {
                    continue;
                }
                let Some((form, odd)) = exterior::wedge(*fa, *fb) else { continue };
                let base = sign(odd) * &factor;
                let nmax = multi::degree(ya).min(multi::degree(yb)) as usize;
                let mut prod: Option<XPoly> = None;
                for (n, level) in kernels.iter().enumerate().take(nmax + 1) {
                    if commutator && n % 2 == 0 {
                        continue;
                    }
                    for kt in level {
                        if !multi::le(&kt.alpha, ya) || !multi::le(&kt.beta, yb) {
                            continue;
                        }
                        let c = &base * multi::deriv_coeff(ya, &kt.alpha) * multi::deriv_coeff(yb, &kt.beta);
                        let y = multi::add(&multi::sub(ya, &kt.alpha), &multi::sub(yb, &kt.beta));
                        let prod = prod.get_or_insert_with(|| pa.mul(pb));
                        let entry = acc.entry((form, ha + hb + n as i32 + shift, y)).or_default();
                        match kt.coeff.as_constant() {
                            Some(k) => entry.add_scaled(&prod.terms, &(c * k)),
                            None => entry.add_scaled(&kt.coeff.mul(prod).terms, &c),
                        }
                    }
                }
            }
        }
        let mut out: LinComb<FKey> = LinComb::new();
        for ((form, hbar, y), p) in acc {
            for (x, c) in p.iter() {
                out.add_term(FKey { form, hbar, y: y.clone(), x: x.clone() }, c.clone());
            }
        }
        FormWeyl::from_terms(self.dim, order, out)
    }
}

type Group = (exterior::Form, i32, Exps);

/// Terms collected by (form, hbar, y), with x-polynomial coefficients.
fn groups(a: &FormWeyl) -> Vec<(Group, XPoly)> {
    let mut out: Vec<(Group, XPoly)> = Vec::new();
    for (k, c) in &a.terms {
        match out.last_mut() {
            Some(((f, h, y), p)) if *f == k.form && *h == k.hbar && *y == k.y => p.terms.add_term(k.x.clone(), c.clone()),
            _ => out.push(((k.form, k.hbar, k.y.clone()), XPoly::monomial(k.x.clone(), c.clone()))),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qf;

    #[test]
    fn y1_y2_product() {
        let p = Poisson::standard(2);
        let y1 = FormWeyl::y(2, 6, 0);
        let y2 = FormWeyl::y(2, 6, 1);
        let expect = y1.pointwise(&y2).add(&FormWeyl::hbar_pow(2, 6, 1).scale(&qf(1, 2)));
        assert_eq!(p.product(&y1, &y2), expect);
        let comm = p.product(&y1, &y2).sub(&p.product(&y2, &y1));
        assert_eq!(comm, FormWeyl::hbar_pow(2, 6, 1));
        assert_eq!(p.hbar_commutator(&y1, &y2), FormWeyl::one(2, 6));
    }

    #[test]
    fn unit_is_neutral() {
        let p = Poisson::standard(2);
        let a = FormWeyl::y(2, 6, 0).pointwise(&FormWeyl::x(2, 6, 1)).add(&FormWeyl::dx(2, 6, 1));
        assert_eq!(p.product(&FormWeyl::one(2, 6), &a), a);
        assert_eq!(p.product(&a, &FormWeyl::one(2, 6)), a);
    }

    #[test]
    fn sigma_product_matches_full_product() {
        let p = Poisson::standard(2);
        let y1 = FormWeyl::y(2, 8, 0);
        let y2 = FormWeyl::y(2, 8, 1);
        let x1 = FormWeyl::x(2, 8, 0);
        let a = y1.pointwise(&y1).pointwise(&y2).add(&x1.pointwise(&y2)).add(&FormWeyl::hbar_pow(2, 8, 1));
        let b = y2.pointwise(&y2).pointwise(&y1).add(&y1.pointwise(&x1)).add(&x1);
        assert_eq!(p.sigma_product(&a, &b), p.product(&a, &b).sigma());
        assert_eq!(p.sigma_product(&b, &a), p.product(&b, &a).sigma());
    }

    #[test]
    fn rejects_non_antisymmetric() {
        let m = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert!(matches!(Poisson::constant(&m), Err(Error::NotAntisymmetric(..))));
    }
}
