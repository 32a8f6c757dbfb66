//! Strictly increasing multi-indices in lexicographic order, and the single
//! sign convention shared by every module: the insertion sign of an index
//! list is the parity of the permutation sorting it.
//!
//! Sign bugs are the dominant failure mode in this domain, so every exterior
//! basis in the crate goes through this one implementation.

use std::collections::HashMap;

/// All strictly increasing k-subsets of {0..n}, lexicographic.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Sorts `indices` ascending; returns the permutation sign, or None when a
/// duplicate makes the wedge vanish.
pub fn sort_sign(indices: &mut [usize]) -> Option<i64> {
    let mut sign = 1i64;
    // insertion sort, counting transpositions
    for i in 1..indices.len() {
        let mut j = i;
        while j > 0 && indices[j - 1] > indices[j] {
            indices.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if indices.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// Lookup table for the exterior monomial basis ∧^k of an n-dim space.
#[derive(Debug, Clone)]
pub struct ExteriorBasis {
    combos: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl ExteriorBasis {
    pub fn new(n: usize, k: usize) -> Self {
        let combos = combinations(n, k);
        let index = combos
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        ExteriorBasis { combos, index }
    }

    pub fn len(&self) -> usize {
        self.combos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.combos.is_empty()
    }

    pub fn combo(&self, i: usize) -> &[usize] {
        &self.combos[i]
    }

    pub fn combos(&self) -> &[Vec<usize>] {
        &self.combos
    }

    pub fn position(&self, sorted: &[usize]) -> usize {
        self.index[sorted]
    }

    /// Index and sign of an arbitrary index list, or None if it wedges to 0.
    pub fn lookup(&self, indices: &[usize]) -> Option<(usize, i64)> {
        let mut sorted = indices.to_vec();
        let sign = sort_sign(&mut sorted)?;
        Some((*self.index.get(&sorted)?, sign))
    }
}

/// Exponent vectors of total degree d over m variables, in the order used
/// for all polynomial bases: lexicographic within each degree.
pub fn exponents_of_degree(m: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, d: usize, out: &mut Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        if m == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=d).rev() {
            prefix.push(first);
            rec(m - 1, d - first, out, prefix);
            prefix.pop();
        }
    }
    if m == 0 {
        return if d == 0 { vec![vec![]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(m, d, &mut out, &mut Vec::new());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_are_lex_ordered() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3), Vec::<Vec<usize>>::new());
        assert_eq!(combinations(5, 2).len(), binomial(5, 2));
    }

    #[test]
    fn sort_sign_parity() {
        let mut v = vec![2, 0, 1];
        assert_eq!(sort_sign(&mut v), Some(1));
        let mut v = vec![1, 0];
        assert_eq!(sort_sign(&mut v), Some(-1));
        let mut v = vec![1, 1];
        assert_eq!(sort_sign(&mut v), None);
    }

    #[test]
    fn exterior_lookup() {
        let b = ExteriorBasis::new(3, 2);
        assert_eq!(b.lookup(&[2, 0]), Some((1, -1)));
        assert_eq!(b.lookup(&[0, 2]), Some((1, 1)));
        assert_eq!(b.lookup(&[1, 1]), None);
    }

    #[test]
    fn exponent_enumeration() {
        let e = exponents_of_degree(2, 2);
        assert_eq!(e, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(exponents_of_degree(3, 0), vec![vec![0, 0, 0]]);
    }
}
