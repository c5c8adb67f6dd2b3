//! Exact multivariate polynomials over the rationals.
//!
//! A [`MultiPoly`] has a fixed ambient variable count; exponent vectors are
//! dense and the term map is sorted, so values have one canonical
//! representation and derive equality. Cohomological degree conventions
//! (deg x_i = 2, or weighted degrees for Chern generators) are imposed by the
//! callers via explicit weight slices.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A polynomial in `nvars` variables with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable x_i (one-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= nvars, "variable index out of range");
        let mut exp = vec![0u32; nvars];
        exp[i - 1] = 1;
        Self::monomial(exp, BigRational::one())
    }

    pub fn monomial(exp: Vec<u32>, coeff: BigRational) -> Self {
        let nvars = exp.len();
        let mut p = Self::zero(nvars);
        p.add_term(exp, coeff);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(&vec![0; self.nvars]).is_one()
    }

    pub fn coeff(&self, exp: &[u32]) -> BigRational {
        self.terms.get(exp).cloned().unwrap_or_else(Zero::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, exp: Vec<u32>, coeff: BigRational) {
        debug_assert_eq!(exp.len(), self.nvars);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scaled(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Swap the variables x_i and x_{i+1} (one-based i).
    pub fn swap_vars(&self, i: usize) -> MultiPoly {
        assert!(i >= 1 && i < self.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (exp, c) in &self.terms {
            let mut e = exp.clone();
            e.swap(i - 1, i);
            out.add_term(e, c.clone());
        }
        out
    }

    /// Apply a permutation of the variables: variable j moves to position
    /// `perm[j]` (one-line notation, one-based values).
    pub fn permute_vars(&self, perm: &[usize]) -> MultiPoly {
        assert_eq!(perm.len(), self.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (exp, c) in &self.terms {
            let mut e = vec![0u32; self.nvars];
            for (j, &p) in perm.iter().enumerate() {
                e[p - 1] = exp[j];
            }
            out.add_term(e, c.clone());
        }
        out
    }

    fn wdeg(exp: &[u32], weights: &[u32]) -> u32 {
        exp.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    /// The terms of weighted degree exactly `d`.
    pub fn weighted_component(&self, weights: &[u32], d: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| Self::wdeg(e, weights) == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// `Some(d)` when every term has weighted degree `d`.
    pub fn homogeneous_weighted_degree(&self, weights: &[u32]) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = Self::wdeg(it.next()?, weights);
        for e in it {
            if Self::wdeg(e, weights) != d {
                return None;
            }
        }
        Some(d)
    }

    /// Maximum weighted degree over all terms, zero for the zero polynomial.
    pub fn max_weighted_degree(&self, weights: &[u32]) -> u32 {
        self.terms
            .keys()
            .map(|e| Self::wdeg(e, weights))
            .max()
            .unwrap_or(0)
    }

    /// Splits off the powers of x_1: returns pairs (m, g) with
    /// `self = sum x_1^m g(x_2..x_n)` where each g lives in `nvars - 1`
    /// variables.
    pub fn split_off_first_var(&self) -> Vec<(u32, MultiPoly)> {
        let mut by_pow: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (exp, c) in &self.terms {
            let m = exp[0];
            let rest = exp[1..].to_vec();
            by_pow
                .entry(m)
                .or_insert_with(|| MultiPoly::zero(self.nvars - 1))
                .add_term(rest, c.clone());
        }
        by_pow.into_iter().collect()
    }

    /// Reinterprets a polynomial in k variables inside `nvars` variables,
    /// placing variable j at position j + offset.
    pub fn embed(&self, nvars: usize, offset: usize) -> MultiPoly {
        assert!(self.nvars + offset <= nvars);
        let mut out = MultiPoly::zero(nvars);
        for (exp, c) in &self.terms {
            let mut e = vec![0u32; nvars];
            e[offset..offset + self.nvars].copy_from_slice(exp);
            out.add_term(e, c.clone());
        }
        out
    }

    /// Substitute polynomials for the variables; `subs[i]` replaces x_{i+1}.
    pub fn substitute(&self, subs: &[MultiPoly], out_vars: usize) -> MultiPoly {
        assert_eq!(subs.len(), self.nvars);
        let mut out = MultiPoly::zero(out_vars);
        for (exp, c) in &self.terms {
            let mut term = MultiPoly::constant(out_vars, c.clone());
            for (i, &e) in exp.iter().enumerate() {
                for _ in 0..e {
                    term = &term * &subs[i];
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Renders with the given variable namer, descending lexicographic order.
    pub fn to_text_with(&self, name: &dyn Fn(usize) -> String) -> String {
        use alloc::string::ToString;
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, (exp, coeff)) in self.terms.iter().rev().enumerate() {
            let neg = coeff.is_negative();
            let mag = if neg { -coeff.clone() } else { coeff.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let is_const = exp.iter().all(|&e| e == 0);
            let show_coeff = is_const || !mag.is_one();
            if show_coeff {
                if mag.denom().is_one() {
                    out.push_str(&mag.numer().to_string());
                } else {
                    out.push_str(&mag.numer().to_string());
                    out.push('/');
                    out.push_str(&mag.denom().to_string());
                }
            }
            let mut printed_any = show_coeff;
            for (j, &e) in exp.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if printed_any {
                    out.push('*');
                }
                printed_any = true;
                out.push_str(&name(j + 1));
                if e > 1 {
                    out.push('^');
                    out.push_str(&e.to_string());
                }
            }
        }
        out
    }

    pub fn to_text(&self, prefix: &str) -> String {
        use alloc::string::ToString;
        let p = String::from(prefix);
        self.to_text_with(&move |i: usize| {
            let mut s = p.clone();
            s.push_str(&i.to_string());
            s
        })
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let exp: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exp, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("x"))
    }
}

/// Integer-to-rational helper used throughout tests and parsers.
pub fn int(c: i64) -> BigRational {
    BigRational::from(BigInt::from(c))
}

/// Enumerates exponent vectors in `nvars` variables with weighted degree `d`
/// under `weights`, in lexicographic order.
pub fn monomials_of_weighted_degree(nvars: usize, weights: &[u32], d: u32) -> Vec<Vec<u32>> {
    assert_eq!(weights.len(), nvars);
    fn rec(i: usize, rem: u32, weights: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == weights.len() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if i + 1 == weights.len() {
            if weights[i] > 0 {
                if rem % weights[i] == 0 {
                    cur[i] = rem / weights[i];
                    out.push(cur.clone());
                    cur[i] = 0;
                }
            } else if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let max = if weights[i] > 0 { rem / weights[i] } else { 0 };
        for e in 0..=max {
            cur[i] = e;
            rec(i + 1, rem - e * weights[i], weights, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    rec(0, d, weights, &mut cur, &mut out);
    out
}
