//! Exterior monomials dx^S stored as bitmasks over strictly increasing index sets.

pub type Form = u32;

pub fn degree(s: Form) -> u32 {
    s.count_ones()
}

pub fn single(i: usize) -> Form {
    1 << i
}

/// dx^a ^ dx^b = sign dx^(a|b), or None when the sets overlap.
pub fn wedge(a: Form, b: Form) -> Option<(Form, bool)> {
    if a & b != 0 {
        return None;
    }
    // count pairs (i in a, j in b) with i > j
    let mut swaps = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    Some((a | b, swaps % 2 == 1))
}

/// Left contraction i(d/dx^k) dx^S = sign dx^(S \ k), or None if k is not in S.
pub fn contract(k: usize, s: Form) -> Option<(Form, bool)> {
    if s & (1 << k) == 0 {
        return None;
    }
    let before = (s & ((1u32 << k) - 1)).count_ones();
    Some((s & !(1 << k), before % 2 == 1))
}

pub fn indices(s: Form) -> Vec<usize> {
    (0..32).filter(|i| s & (1 << i) != 0).collect()
}

/// Form from an arbitrary index list; returns the normalization sign, or None on repeats.
pub fn from_indices(idx: &[usize]) -> Option<(Form, bool)> {
    let mut s: Form = 0;
    let mut odd = false;
    for &i in idx {
        let (t, o) = wedge(s, single(i))?;
        s = t;
        odd ^= o;
    }
    Some((s, odd))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge(single(0), single(1)), Some((0b11, false)));
        assert_eq!(wedge(single(1), single(0)), Some((0b11, true)));
        assert_eq!(wedge(single(1), single(1)), None);
        assert_eq!(wedge(0b101, 0b010), Some((0b111, true)));
    }

    #[test]
    fn contraction_signs() {
        assert_eq!(contract(0, 0b11), Some((0b10, false)));
        assert_eq!(contract(1, 0b11), Some((0b01, true)));
        assert_eq!(contract(2, 0b11), None);
    }

    #[test]
    fn index_normalization() {
        assert_eq!(from_indices(&[2, 0]), Some((0b101, true)));
        assert_eq!(from_indices(&[0, 0]), None);
    }
}
