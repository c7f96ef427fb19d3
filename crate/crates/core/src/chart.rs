//! Polynomial symplectic charts: omega_{ij}, its inverse omega^{ij}, and a
//! torsion-free symplectic connection Gamma^j_{ik}.


use crate::error::{Error, Result};
use crate::poisson::Poisson;
use crate::scalar::Q;
use crate::xpoly::XPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticChart {
    pub dim: usize,
    pub omega_lower: Vec<Vec<XPoly>>,
    pub omega_upper: Vec<Vec<XPoly>>,
    /// christoffel[j][i][k] = Gamma^j_{ik}
    pub christoffel: Vec<Vec<Vec<XPoly>>>,
    pub poisson: Poisson,
}

impl SymplecticChart {
    /// Builds and validates a chart.
    pub fn new(
        omega_lower: Vec<Vec<XPoly>>,
        omega_upper: Vec<Vec<XPoly>>,
        christoffel: Vec<Vec<Vec<XPoly>>>,
    ) -> Result<Self> {
        let chart = Self::new_unchecked(omega_lower, omega_upper, christoffel)?;
        chart.validate()?;
        Ok(chart)
    }

    /// Builds a chart checking only shapes and antisymmetry of omega^{ij}; used for
    /// formal inputs whose compatibility is checked separately.
    pub fn new_unchecked(
        omega_lower: Vec<Vec<XPoly>>,
        omega_upper: Vec<Vec<XPoly>>,
        christoffel: Vec<Vec<Vec<XPoly>>>,
    ) -> Result<Self> {
        let dim = omega_upper.len();
        if omega_lower.len() != dim {
            return Err(Error::DimensionMismatch(dim, omega_lower.len()));
        }
        if christoffel.len() != dim || christoffel.iter().any(|m| m.len() != dim || m.iter().any(|r| r.len() != dim)) {
            return Err(Error::Schema("christoffel array has wrong shape".into()));
        }
        let poisson = Poisson::new(omega_upper.clone())?;
        Ok(Self { dim, omega_lower, omega_upper, christoffel, poisson })
    }

    /// Constant omega with omega^{12} = 1 (block diagonal in higher dimension) and Gamma = 0.
    pub fn flat(dim: usize) -> Self {
        let poisson = Poisson::standard(dim);
        let upper = poisson.upper.clone();
        let theta = poisson.constant_matrix().unwrap();
        let lower = crate::scalar::invert(&theta).expect("standard omega is invertible");
        let lower = lower.iter().map(|r| r.iter().map(|c| XPoly::constant(dim, c.clone())).collect()).collect();
        let zero = vec![vec![vec![XPoly::zero(dim); dim]; dim]; dim];
        Self::new(lower, upper, zero).expect("flat chart is valid")
    }

    /// Chart with the standard constant omega and Gamma^m_{ik} = omega^{mj} S_{jik}
    /// for a totally symmetric tensor S; such a connection is torsion-free and symplectic.
    pub fn from_symmetric_tensor(dim: usize, s: &dyn Fn(usize, usize, usize) -> XPoly) -> Result<Self> {
        let flat = Self::flat(dim);
        let mut gamma = vec![vec![vec![XPoly::zero(dim); dim]; dim]; dim];
        for (m, gm) in gamma.iter_mut().enumerate() {
            for (i, gmi) in gm.iter_mut().enumerate() {
                for (k, g) in gmi.iter_mut().enumerate() {
                    let mut acc = XPoly::zero(dim);
                    for j in 0..dim {
                        acc = acc.add(&flat.omega_upper[m][j].mul(&s(j, i, k)));
                    }
                    *g = acc;
                }
            }
        }
        Self::new(flat.omega_lower, flat.omega_upper, gamma)
    }

    pub fn gamma(&self, upper: usize, i: usize, k: usize) -> &XPoly {
        &self.christoffel[upper][i][k]
    }

    pub fn is_flat_connection(&self) -> bool {
        self.christoffel.iter().flatten().flatten().all(XPoly::is_zero)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                if self.omega_lower[i][j] != self.omega_lower[j][i].neg() {
                    return Err(Error::NotAntisymmetric(i + 1, j + 1));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let mut acc = XPoly::zero(n);
                for k in 0..n {
                    acc = acc.add(&self.omega_upper[i][k].mul(&self.omega_lower[k][j]));
                }
                let expect = if i == j { XPoly::one(n) } else { XPoly::zero(n) };
                if acc != expect {
                    return Err(Error::NotInversePair(i + 1, j + 1));
                }
            }
        }
        for up in 0..n {
            for i in 0..n {
                for k in 0..n {
                    if self.christoffel[up][i][k] != self.christoffel[up][k][i] {
                        return Err(Error::Torsion { upper: up + 1, i: i + 1, k: k + 1 });
                    }
                }
            }
        }
        // nabla_i omega_{jk} = d_i omega_{jk} - Gamma^m_{ij} omega_{mk} - Gamma^m_{ik} omega_{jm}
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut acc = self.omega_lower[j][k].deriv(i);
                    for m in 0..n {
                        acc = acc.sub(&self.christoffel[m][i][j].mul(&self.omega_lower[m][k]));
                        acc = acc.sub(&self.christoffel[m][i][k].mul(&self.omega_lower[j][m]));
                    }
                    if !acc.is_zero() {
                        return Err(Error::NotSymplectic { i: i + 1, j: j + 1, k: k + 1 });
                    }
                }
            }
        }
        Ok(())
    }

    /// (R_{ij})^m_l = d_i Gamma^m_{jl} - d_j Gamma^m_{il} + Gamma^m_{ik} Gamma^k_{jl} - Gamma^m_{jk} Gamma^k_{il},
    /// indexed as riemann[i][j][m][l].
    pub fn riemann(&self) -> Vec<Vec<Vec<Vec<XPoly>>>> {
        let n = self.dim;
        let g = &self.christoffel;
        let mut out = vec![vec![vec![vec![XPoly::zero(n); n]; n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                for m in 0..n {
                    for l in 0..n {
                        let mut acc = g[m][j][l].deriv(i).sub(&g[m][i][l].deriv(j));
                        for k in 0..n {
                            acc = acc.add(&g[m][i][k].mul(&g[k][j][l]));
                            acc = acc.sub(&g[m][j][k].mul(&g[k][i][l]));
                        }
                        out[i][j][m][l] = acc;
                    }
                }
            }
        }
        out
    }

    /// Symplectic form as a 2-form: omega = omega_{ij} dx^i dx^j summed over all i, j,
    /// returned as coefficients on dx^i ^ dx^j for i < j.
    pub fn omega_two_form(&self) -> Vec<((usize, usize), XPoly)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let c = self.omega_lower[i][j].sub(&self.omega_lower[j][i]);
                if !c.is_zero() {
                    out.push(((i, j), c));
                }
            }
        }
        out
    }

    /// Constant omega^{ij} if available.
    pub fn constant_theta(&self) -> Option<Vec<Vec<Q>>> {
        self.poisson.constant_matrix()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn flat_chart_is_valid() {
        let c = SymplecticChart::flat(2);
        assert_eq!(c.omega_lower[1][0].as_constant(), Some(q(1)));
        assert_eq!(c.omega_lower[0][1].as_constant(), Some(q(-1)));
        assert!(c.riemann().iter().flatten().flatten().flatten().all(XPoly::is_zero));
    }

    #[test]
    fn torsion_and_compatibility_errors() {
        let flat = SymplecticChart::flat(2);
        let mut g = flat.christoffel.clone();
        g[0][0][1] = XPoly::var(2, 0);
        let err = SymplecticChart::new(flat.omega_lower.clone(), flat.omega_upper.clone(), g.clone()).unwrap_err();
        assert!(matches!(err, Error::Torsion { .. }));
        g[0][1][0] = XPoly::var(2, 0);
        let err = SymplecticChart::new(flat.omega_lower.clone(), flat.omega_upper.clone(), g).unwrap_err();
        assert!(matches!(err, Error::NotSymplectic { .. }));
    }

    #[test]
    fn inverse_pair_checked() {
        let flat = SymplecticChart::flat(2);
        let bad_lower = flat.omega_lower.iter().map(|r| r.iter().map(|p| p.scale(&q(2))).collect()).collect();
        let err = SymplecticChart::new(bad_lower, flat.omega_upper.clone(), flat.christoffel.clone()).unwrap_err();
        assert!(matches!(err, Error::NotInversePair(..)));
    }

    #[test]
    fn symmetric_tensor_connection_is_symplectic() {
        let c = SymplecticChart::from_symmetric_tensor(2, &|a, b, c| {
            let mut idx = [a, b, c];
            idx.sort();
            match idx {
                [0, 0, 0] => XPoly::var(2, 1),
                [0, 0, 1] => XPoly::var(2, 0),
                _ => XPoly::zero(2),
            }
        })
        .unwrap();
        assert!(!c.is_flat_connection());
    }
}
