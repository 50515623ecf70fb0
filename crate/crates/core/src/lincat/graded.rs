use std::collections::HashMap;

use super::Obj;
use crate::exactla::Field;

/// Window `lo..=hi` of shifted free modules `S<j>` over `S = k[x0..xn]`.
///
/// `hom(S<i>, S<j>)` is the degree `i - j` part of `S` in the monomial
/// basis; composition and tensor are polynomial multiplication.
#[derive(Clone, Debug)]
pub struct Graded {
    pub field: Field,
    pub n: usize,
    pub lo: i64,
    pub hi: i64,
    monomials: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, usize>>,
}

/// Exponent vectors of degree `d` in `vars` variables, highest power of `x0` first.
pub fn monomials(vars: usize, d: u32) -> Vec<Vec<u32>> {
    if vars == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(vars - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl Graded {
    pub fn new(field: Field, n: usize, lo: i64, hi: i64) -> Graded {
        let top = (hi - lo).max(0) as u32;
        let monomials: Vec<Vec<Vec<u32>>> = (0..=top).map(|d| monomials(n + 1, d)).collect();
        let index = monomials
            .iter()
            .map(|ms| ms.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
            .collect();
        Graded { field, n, lo, hi, monomials, index }
    }

    pub fn shift(&self, a: Obj) -> i64 {
        self.lo + a as i64
    }

    pub fn object(&self, shift: i64) -> Option<Obj> {
        (self.lo..=self.hi).contains(&shift).then(|| (shift - self.lo) as Obj)
    }

    pub fn labels(&self) -> Vec<String> {
        (self.lo..=self.hi).map(|j| format!("S<{j}>")).collect()
    }

    /// Degree of the polynomials in `hom(a, b)`, if nonnegative.
    pub fn degree(&self, a: Obj, b: Obj) -> Option<u32> {
        let d = self.shift(a) - self.shift(b);
        (d >= 0).then_some(d as u32)
    }

    pub fn hom_dim(&self, a: Obj, b: Obj) -> usize {
        self.degree(a, b).map_or(0, |d| self.monomials[d as usize].len())
    }

    pub fn monomial(&self, d: u32, i: usize) -> &[u32] {
        &self.monomials[d as usize][i]
    }

    pub fn monomial_index(&self, m: &[u32]) -> usize {
        let d: u32 = m.iter().sum();
        self.index[d as usize][m]
    }

    pub fn basis_labels(&self, a: Obj, b: Obj) -> Vec<String> {
        let Some(d) = self.degree(a, b) else { return vec![] };
        self.monomials[d as usize]
            .iter()
            .map(|m| format!("{}:{}->{}", monomial_name(m), self.shift(a), self.shift(b)))
            .collect()
    }

    /// Basis index of the product of monomial `gi` of degree `deg1` and `fj` of degree `deg2`.
    pub fn product(&self, deg1: u32, gi: usize, deg2: u32, fj: usize) -> usize {
        let g = &self.monomials[deg1 as usize][gi];
        let f = &self.monomials[deg2 as usize][fj];
        let m: Vec<u32> = g.iter().zip(f).map(|(x, y)| x + y).collect();
        self.monomial_index(&m)
    }

    pub(crate) fn product_index(&self, a: Obj, b: Obj, c: Obj, gi: usize, fj: usize) -> usize {
        let (dg, df) = (self.degree(b, c).expect("nonzero hom"), self.degree(a, b).expect("nonzero hom"));
        self.product(dg, gi, df, fj)
    }
}

/// Human-readable monomial such as `x0^2*x1`, or `1`.
pub fn monomial_name(m: &[u32]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(2, 3).len(), 4);
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(2, 1), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn names() {
        assert_eq!(monomial_name(&[2, 1]), "x0^2*x1");
        assert_eq!(monomial_name(&[0, 0]), "1");
    }
}
