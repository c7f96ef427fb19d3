//! Exponent vectors (commutative multi-indices) and the combinatorics on them.

use smallvec::SmallVec;

use crate::scalar::{factorial, falling, Q};
use num_traits::One;

/// Exponent vector; also used for derivative multi-indices since the
/// partial derivatives commute.
pub type Exps = SmallVec<[u8; 6]>;

pub fn zeros(n: usize) -> Exps {
    smallvec::smallvec![0; n]
}

pub fn unit(n: usize, i: usize) -> Exps {
    let mut e = zeros(n);
    e[i] = 1;
    e
}

pub fn degree(e: &[u8]) -> u32 {
    e.iter().map(|&v| v as u32).sum()
}

pub fn is_zero(e: &[u8]) -> bool {
    e.iter().all(|&v| v == 0)
}

pub fn le(a: &[u8], b: &[u8]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn add(a: &[u8], b: &[u8]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[u8], b: &[u8]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// alpha! = prod alpha_i!
pub fn mfactorial(a: &[u8]) -> Q {
    a.iter().fold(Q::one(), |acc, &v| acc * factorial(v as u32))
}

/// Coefficient of y^{p-alpha} in d^alpha y^p, i.e. p!/(p-alpha)!; caller ensures alpha <= p.
pub fn deriv_coeff(p: &[u8], alpha: &[u8]) -> Q {
    p.iter()
        .zip(alpha)
        .fold(Q::one(), |acc, (&pi, &ai)| acc * falling(pi as u32, ai as u32))
}

/// All exponent vectors in `n` variables with total degree exactly `d`.
pub fn of_degree(n: usize, d: u32) -> Vec<Exps> {
    let mut out = Vec::new();
    let mut cur = zeros(n);
    fn rec(i: usize, left: u32, cur: &mut Exps, out: &mut Vec<Exps>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left as u8;
            out.push(cur.clone());
            return;
        }
        for v in (0..=left).rev() {
            cur[i] = v as u8;
            rec(i + 1, left - v, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(cur);
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// All exponent vectors with total degree at most `d`, ordered by degree.
pub fn up_to_degree(n: usize, d: u32) -> Vec<Exps> {
    (0..=d).flat_map(|k| of_degree(n, k)).collect()
}

/// All `b` with `b <= a` componentwise.
pub fn sub_indices(a: &[u8]) -> Vec<Exps> {
    let mut out: Vec<Exps> = vec![Exps::new()];
    for &ai in a {
        let mut next = Vec::with_capacity(out.len() * (ai as usize + 1));
        for e in &out {
            for v in 0..=ai {
                let mut e2 = e.clone();
                e2.push(v);
                next.push(e2);
            }
        }
        out = next;
    }
    out
}

/// Ways to write `a = b_0 + ... + b_{parts-1}` together with the multinomial
/// weight a!/(b_0! ... b_{parts-1}!).
pub fn splits(a: &[u8], parts: usize) -> Vec<(Vec<Exps>, Q)> {
    if parts == 0 {
        return if is_zero(a) { vec![(vec![], Q::one())] } else { vec![] };
    }
    if parts == 1 {
        return vec![(vec![Exps::from_slice(a)], Q::one())];
    }
    let mut out = Vec::new();
    for b in sub_indices(a) {
        let rest = sub(a, &b);
        let w = mfactorial(a) / (mfactorial(&b) * mfactorial(&rest));
        for (mut tail, wt) in splits(&rest, parts - 1) {
            let mut v = Vec::with_capacity(parts);
            v.push(b.clone());
            v.append(&mut tail);
            out.push((v, &w * wt));
        }
    }
    out
}

/// Multi-index as a sorted list of (1-based) variable labels, e.g. [2,0] -> [1,1].
pub fn to_index_list(e: &[u8]) -> Vec<usize> {
    e.iter()
        .enumerate()
        .flat_map(|(i, &v)| std::iter::repeat_n(i + 1, v as usize))
        .collect()
}

pub fn from_index_list(n: usize, idx: &[usize]) -> Option<Exps> {
    let mut e = zeros(n);
    for &i in idx {
        if i == 0 || i > n {
            return None;
        }
        e[i - 1] = e[i - 1].checked_add(1)?;
    }
    Some(e)
}

/// Expansion of prod_i (sum_j m[j][i] v_j)^{e_i}: the image of the monomial v^e
/// under the linear substitution v_i -> sum_j m[j][i] v_j.
pub fn linear_substitute(e: &[u8], m: &[Vec<Q>]) -> Vec<(Exps, Q)> {
    use std::collections::BTreeMap;
    let n = e.len();
    let mut acc: BTreeMap<Exps, Q> = BTreeMap::new();
    acc.insert(zeros(n), Q::one());
    for (i, &ei) in e.iter().enumerate() {
        for _ in 0..ei {
            let mut next: BTreeMap<Exps, Q> = BTreeMap::new();
            for (mono, c) in &acc {
                for (j, row) in m.iter().enumerate() {
                    let f = &row[i];
                    if num_traits::Zero::is_zero(f) {
                        continue;
                    }
                    let mut m2 = mono.clone();
                    m2[j] += 1;
                    *next.entry(m2).or_insert_with(num_traits::Zero::zero) += c * f;
                }
            }
            next.retain(|_, c| !num_traits::Zero::is_zero(c));
            acc = next;
        }
    }
    acc.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn enumerate_counts() {
        assert_eq!(of_degree(2, 3).len(), 4);
        assert_eq!(up_to_degree(2, 2).len(), 6);
        assert_eq!(of_degree(3, 2).len(), 6);
    }

    #[test]
    fn split_weights_sum_to_power() {
        // sum of multinomial weights over splits of a into k parts equals k^|a|
        let a: Exps = smallvec::smallvec![2, 1];
        let total: Q = splits(&a, 3).into_iter().map(|(_, w)| w).sum();
        assert_eq!(total, q(27));
    }

    #[test]
    fn index_lists() {
        let e: Exps = smallvec::smallvec![2, 0, 1];
        assert_eq!(to_index_list(&e), vec![1, 1, 3]);
        assert_eq!(from_index_list(3, &[3, 1, 1]).unwrap(), e);
        assert!(from_index_list(3, &[4]).is_none());
    }

    #[test]
    fn substitution_binomial() {
        // (v1 + v2)^2 under m = [[1,?],[1,?]] with column 0 = (1,1)
        let m = vec![vec![q(1), q(0)], vec![q(1), q(1)]];
        let e: Exps = smallvec::smallvec![2, 0];
        let out = linear_substitute(&e, &m);
        assert_eq!(out.len(), 3);
    }
}
