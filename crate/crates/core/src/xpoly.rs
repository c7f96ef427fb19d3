//! Polynomials in the base coordinates x^1..x^{2n}, and Laurent scalars in hbar.

use num_traits::{One, Zero};

use crate::linear::LinComb;
use crate::multi::{self, Exps};
use crate::scalar::{q, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XPoly {
    pub dim: usize,
    pub terms: LinComb<Exps>,
}

impl XPoly {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: LinComb::new() }
    }

    pub fn constant(dim: usize, c: Q) -> Self {
        Self { dim, terms: LinComb::single(multi::zeros(dim), c) }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Q::one())
    }

    /// The coordinate function x^i (0-based).
    pub fn var(dim: usize, i: usize) -> Self {
        Self { dim, terms: LinComb::single(multi::unit(dim, i), Q::one()) }
    }

    pub fn monomial(e: Exps, c: Q) -> Self {
        Self { dim: e.len(), terms: LinComb::single(e, c) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                multi::is_zero(e).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        t.add_assign(&o.terms);
        Self { dim: self.dim, terms: t }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        t.sub_assign(&o.terms);
        Self { dim: self.dim, terms: t }
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self { dim: self.dim, terms: self.terms.scale(s) }
    }

    pub fn neg(&self) -> Self {
        Self { dim: self.dim, terms: self.terms.neg() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut t = LinComb::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                t.add_term(multi::add(a, b), ca * cb);
            }
        }
        Self { dim: self.dim, terms: t }
    }

    /// Partial derivative d/dx^i.
    pub fn deriv(&self, i: usize) -> Self {
        let terms = self.terms.map_terms(|e, c| {
            (e[i] > 0).then(|| {
                let mut e2 = e.clone();
                e2[i] -= 1;
                (e2, c * q(e[i] as i64))
            })
        });
        Self { dim: self.dim, terms }
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|e| multi::degree(e)).max().unwrap_or(0)
    }

    /// Linear change of variables: returns p(m x), i.e. x^i -> sum_j m[i][j] x^j.
    pub fn substitute_linear(&self, m: &[Vec<Q>]) -> Self {
        // multi::linear_substitute maps v_i -> sum_j t[j][i] v_j, so pass the transpose
        let t = crate::scalar::transpose(m);
        let mut out = LinComb::new();
        for (e, c) in &self.terms {
            for (e2, c2) in multi::linear_substitute(e, &t) {
                out.add_term(e2, c * c2);
            }
        }
        Self { dim: self.dim, terms: out }
    }
}

/// Formal Laurent series in hbar with finitely many stored terms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HbarScalar {
    pub terms: LinComb<i32>,
}

impl HbarScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(k: i32, c: Q) -> Self {
        Self { terms: LinComb::single(k, c) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// Lowest stored exponent; None for zero.
    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn coeff(&self, k: i32) -> Q {
        self.terms.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        t.add_assign(&o.terms);
        Self { terms: t }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut t = LinComb::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                t.add_term(a + b, ca * cb);
            }
        }
        Self { terms: t }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_and_product() {
        let x0 = XPoly::var(2, 0);
        let x1 = XPoly::var(2, 1);
        let p = x0.mul(&x0).mul(&x1);
        assert_eq!(p.deriv(0), x0.mul(&x1).scale(&q(2)));
        assert!(p.deriv(1).deriv(1).is_zero());
        assert_eq!(XPoly::constant(2, q(3)).as_constant(), Some(q(3)));
        assert_eq!(p.as_constant(), None);
    }

    #[test]
    fn linear_substitution() {
        // p = x0; m = [[1,2],[0,1]] -> x0 + 2 x1
        let m = vec![vec![q(1), q(2)], vec![q(0), q(1)]];
        let p = XPoly::var(2, 0).substitute_linear(&m);
        assert_eq!(p, XPoly::var(2, 0).add(&XPoly::var(2, 1).scale(&q(2))));
    }

    #[test]
    fn hbar_min_exp() {
        let s = HbarScalar::monomial(-2, q(1)).add(&HbarScalar::monomial(3, q(5)));
        assert_eq!(s.min_exp(), Some(-2));
        assert_eq!(s.mul(&s).coeff(1), q(10));
        assert!(HbarScalar::zero().min_exp().is_none());
    }
}
