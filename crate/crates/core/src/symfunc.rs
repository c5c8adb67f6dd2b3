//! The ring of symmetric functions in the basis of elementary monomials.
//!
//! A [`SymFunc`] is a finite combination of e_lambda = e_{l1} e_{l2} ... with
//! the partition as the key, so multiplication is multiset merge. Complete
//! symmetric functions and Schur functions are views computed into this
//! basis; the grading is doubled (deg e_r = 2r) to match cohomological
//! degrees.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::multipoly::MultiPoly;

/// A partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds from any list of nonnegative integers; zeros are dropped and
    /// the rest sorted descending.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn single(r: u32) -> Self {
        Self::new(vec![r])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The conjugate (transposed Young diagram).
    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let max = self.parts[0];
        let parts = (1..=max)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Union as multisets, re-sorted: the exponent law of the e-basis.
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::new(parts)
    }

    /// All partitions of size `n` with at most `max_parts` parts, each at
    /// most `max_part`.
    pub fn enumerate(n: u32, max_parts: usize, max_part: u32) -> Vec<Partition> {
        fn rec(rem: u32, max: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            if slots == 0 {
                return;
            }
            let hi = core::cmp::min(max, rem);
            for p in (1..=hi).rev() {
                cur.push(p);
                rec(rem - p, p, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        let mut cur = Vec::new();
        rec(n, max_part, max_parts, &mut cur, &mut out);
        out
    }

    /// All partitions fitting in a `rows` x `cols` box, every size.
    pub fn in_box(rows: usize, cols: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        for n in 0..=(rows as u32 * cols) {
            out.extend(Partition::enumerate(n, rows, cols));
        }
        out
    }

    pub fn to_text(&self) -> String {
        use alloc::string::ToString;
        if self.parts.is_empty() {
            return String::from("()");
        }
        let mut s = String::from("(");
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&p.to_string());
        }
        s.push(')');
        s
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A symmetric function written in the e-basis.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SymFunc {
    terms: BTreeMap<Partition, BigRational>,
}

impl SymFunc {
    pub fn zero() -> Self {
        SymFunc {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::term(Partition::empty(), BigRational::one())
    }

    /// The elementary symmetric function e_r; e_0 = 1.
    pub fn e(r: u32) -> Self {
        if r == 0 {
            Self::one()
        } else {
            Self::term(Partition::single(r), BigRational::one())
        }
    }

    pub fn e_lambda(lambda: &Partition) -> Self {
        Self::term(lambda.clone(), BigRational::one())
    }

    pub fn term(lambda: Partition, coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(lambda, coeff);
        }
        SymFunc { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(&Partition::empty()).is_one()
    }

    pub fn coeff(&self, lambda: &Partition) -> BigRational {
        self.terms.get(lambda).cloned().unwrap_or_else(Zero::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, lambda: Partition, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(lambda) {
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

    pub fn scaled(&self, c: &BigRational) -> SymFunc {
        if c.is_zero() {
            return SymFunc::zero();
        }
        SymFunc {
            terms: self.terms.iter().map(|(l, k)| (l.clone(), k * c)).collect(),
        }
    }

    /// `Some(d)` when every term has the same doubled degree 2|lambda| = d.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = 2 * it.next()?.size();
        for l in it {
            if 2 * l.size() != d {
                return None;
            }
        }
        Some(d)
    }

    /// Truncation to Lambda_a: kill every e_lambda with a part above `a`.
    pub fn truncate_to(&self, a: u32) -> SymFunc {
        SymFunc {
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| l.parts().iter().all(|&p| p <= a))
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitute e_r -> e_r(x_1..x_a); a ring homomorphism onto Lambda_a.
    pub fn evaluate_in_vars(&self, a: usize) -> MultiPoly {
        let es = elementary_in_vars(a);
        let mut out = MultiPoly::zero(a);
        for (lambda, c) in &self.terms {
            let mut term = MultiPoly::constant(a, c.clone());
            let mut vanished = false;
            for &p in lambda.parts() {
                if (p as usize) > a {
                    vanished = true;
                    break;
                }
                term = &term * &es[p as usize];
            }
            if !vanished {
                out = &out + &term;
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, (lambda, coeff)) in self.terms.iter().enumerate() {
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
            let show_coeff = lambda.is_empty() || !mag.is_one();
            if show_coeff {
                use alloc::string::ToString;
                if mag.denom().is_one() {
                    out.push_str(&mag.numer().to_string());
                } else {
                    out.push_str(&mag.numer().to_string());
                    out.push('/');
                    out.push_str(&mag.denom().to_string());
                }
            }
            if !lambda.is_empty() {
                if show_coeff {
                    out.push('*');
                }
                out.push('e');
                out.push_str(&lambda.to_text());
            }
        }
        out
    }
}

/// e_0..e_a as honest polynomials in a variables, computed by the product
/// expansion of prod (1 + x_i t).
pub fn elementary_in_vars(a: usize) -> Vec<MultiPoly> {
    let mut es: Vec<MultiPoly> = vec![MultiPoly::one(a)];
    for i in 1..=a {
        // Multiply the generating polynomial by (1 + x_i t).
        let xi = MultiPoly::var(a, i);
        let mut next: Vec<MultiPoly> = Vec::with_capacity(i + 1);
        for r in 0..=i {
            let mut term = if r < es.len() {
                es[r].clone()
            } else {
                MultiPoly::zero(a)
            };
            if r >= 1 && r - 1 < es.len() {
                term = &term + &(&es[r - 1] * &xi);
            }
            next.push(term);
        }
        es = next;
    }
    es
}

impl Add for &SymFunc {
    type Output = SymFunc;
    fn add(self, rhs: &SymFunc) -> SymFunc {
        let mut out = self.clone();
        for (l, c) in &rhs.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SymFunc {
    type Output = SymFunc;
    fn sub(self, rhs: &SymFunc) -> SymFunc {
        let mut out = self.clone();
        for (l, c) in &rhs.terms {
            out.add_term(l.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &SymFunc {
    type Output = SymFunc;
    fn mul(self, rhs: &SymFunc) -> SymFunc {
        let mut out = SymFunc::zero();
        for (l1, c1) in &self.terms {
            for (l2, c2) in &rhs.terms {
                out.add_term(l1.merge(l2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &SymFunc {
    type Output = SymFunc;
    fn neg(self) -> SymFunc {
        SymFunc {
            terms: self.terms.iter().map(|(l, c)| (l.clone(), -c.clone())).collect(),
        }
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// The complete symmetric function h_r in the e-basis, through the recursion
/// h_r = sum_{l=1..r} (-1)^{l+1} e_l h_{r-l} with h_0 = 1.
pub fn h_in_e(r: u32) -> SymFunc {
    let mut hs: Vec<SymFunc> = vec![SymFunc::one()];
    for d in 1..=r {
        let mut h = SymFunc::zero();
        for l in 1..=d {
            let t = &SymFunc::e(l) * &hs[(d - l) as usize];
            if l % 2 == 1 {
                h = &h + &t;
            } else {
                h = &h - &t;
            }
        }
        hs.push(h);
    }
    hs.pop().unwrap()
}

/// Basis selector for the Jacobi-Trudi determinant.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum JtBasis {
    E,
    H,
}

/// The Schur function s_lambda via the Jacobi-Trudi determinant, returned in
/// the e-basis. `JtBasis::H` expands det |h_{lambda_i + j - i}|;
/// `JtBasis::E` uses the dual determinant on the conjugate partition. The
/// two agree.
pub fn schur_jacobi_trudi(lambda: &Partition, basis: JtBasis) -> SymFunc {
    if lambda.is_empty() {
        return SymFunc::one();
    }
    let (mu, entry): (&Partition, fn(i64) -> SymFunc) = match basis {
        JtBasis::H => (lambda, |k| {
            if k < 0 {
                SymFunc::zero()
            } else {
                h_in_e(k as u32)
            }
        }),
        JtBasis::E => (&lambda.conjugate(), |k| {
            if k < 0 {
                SymFunc::zero()
            } else {
                SymFunc::e(k as u32)
            }
        }),
    };
    let mu = mu.clone();
    let n = mu.num_parts();
    let mat: Vec<Vec<SymFunc>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| entry(mu.parts()[i] as i64 + j as i64 - i as i64))
                .collect()
        })
        .collect();
    determinant(&mat)
}

/// Cofactor-expansion determinant over the commutative SymFunc ring.
fn determinant(m: &[Vec<SymFunc>]) -> SymFunc {
    let n = m.len();
    if n == 0 {
        return SymFunc::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = SymFunc::zero();
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<SymFunc>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let cof = &determinant(&minor) * entry;
        if j % 2 == 0 {
            det = &det + &cof;
        } else {
            det = &det - &cof;
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::int;

    fn e(r: u32) -> SymFunc {
        SymFunc::e(r)
    }

    fn ep(parts: &[u32]) -> SymFunc {
        SymFunc::e_lambda(&Partition::new(parts.to_vec()))
    }

    #[test]
    fn partition_basics() {
        let l = Partition::new(vec![1, 3, 2]);
        assert_eq!(l.parts(), &[3, 2, 1]);
        assert_eq!(l.size(), 6);
        assert_eq!(l.conjugate().parts(), &[3, 2, 1]);
        let m = Partition::new(vec![2, 2]);
        assert_eq!(m.conjugate().parts(), &[2, 2]);
        assert_eq!(m.conjugate().conjugate(), m);
        assert_eq!(Partition::new(vec![4, 1]).conjugate().parts(), &[2, 1, 1, 1]);
    }

    #[test]
    fn conjugate_is_involution_on_all_small_partitions() {
        for n in 0..=8 {
            for l in Partition::enumerate(n, 8, 8) {
                assert_eq!(l.conjugate().conjugate(), l);
                assert_eq!(l.conjugate().size(), l.size());
            }
        }
    }

    #[test]
    fn e_basis_multiplication() {
        assert_eq!(&e(1) * &e(1), ep(&[1, 1]));
        assert_eq!(&e(2) * &ep(&[2, 1]), ep(&[2, 2, 1]));
        let lhs = &(&e(1) - &e(2)) * &e(1);
        assert_eq!(lhs, &ep(&[1, 1]) - &ep(&[2, 1]));
        // Unit and commutativity.
        assert_eq!(&e(3) * &SymFunc::one(), e(3));
        assert_eq!(&e(3) * &e(2), &e(2) * &e(3));
    }

    #[test]
    fn h_in_e_values() {
        assert!(h_in_e(0).is_one());
        assert_eq!(h_in_e(1), e(1));
        assert_eq!(h_in_e(2), &ep(&[1, 1]) - &e(2));
        let h3 = &(&ep(&[1, 1, 1]) - &ep(&[2, 1]).scaled(&int(2))) + &e(3);
        assert_eq!(h_in_e(3), h3);
    }

    #[test]
    fn h_in_e_matches_monomial_expansion() {
        // Oracle: h_r(x_1,x_2,x_3) is the sum of all degree-r monomials.
        for r in 0..=5u32 {
            let lhs = h_in_e(r).evaluate_in_vars(3);
            let mut rhs = MultiPoly::zero(3);
            for exp in crate::multipoly::monomials_of_weighted_degree(3, &[1, 1, 1], r) {
                rhs.add_term(exp, int(1));
            }
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn eh_relation() {
        // sum_{l=0..alpha} (-1)^l e_l h_{alpha-l} = delta_{alpha,0}.
        for alpha in 0..=12u32 {
            let mut acc = SymFunc::zero();
            for l in 0..=alpha {
                let t = &e(l) * &h_in_e(alpha - l);
                if l % 2 == 0 {
                    acc = &acc + &t;
                } else {
                    acc = &acc - &t;
                }
            }
            if alpha == 0 {
                assert!(acc.is_one());
            } else {
                assert!(acc.is_zero(), "alpha = {alpha}");
            }
        }
    }

    #[test]
    fn schur_values() {
        assert_eq!(schur_jacobi_trudi(&Partition::single(1), JtBasis::E), e(1));
        assert_eq!(
            schur_jacobi_trudi(&Partition::new(vec![1, 1]), JtBasis::E),
            e(2)
        );
        assert_eq!(
            schur_jacobi_trudi(&Partition::single(2), JtBasis::H),
            h_in_e(2)
        );
        // 2x2 display: s_(l1,l2) = e_c1 e_c2 - e_{c1+1} e_{c2-1} on the
        // conjugate side.
        let l = Partition::new(vec![2, 1]);
        let conj = l.conjugate();
        let c1 = conj.parts()[0];
        let c2 = conj.parts()[1];
        let direct = &(&e(c1) * &e(c2)) - &(&e(c1 + 1) * &e(c2 - 1));
        assert_eq!(schur_jacobi_trudi(&l, JtBasis::E), direct);
    }

    #[test]
    fn jacobi_trudi_duality() {
        for n in 0..=8u32 {
            for l in Partition::enumerate(n, 8, 8) {
                assert_eq!(
                    schur_jacobi_trudi(&l, JtBasis::E),
                    schur_jacobi_trudi(&l, JtBasis::H),
                    "lambda = {l}"
                );
            }
        }
    }

    #[test]
    fn evaluation_examples() {
        // e_2 in three variables.
        let p = e(2).evaluate_in_vars(3);
        let mut expect = MultiPoly::zero(3);
        expect.add_term(vec![1, 1, 0], int(1));
        expect.add_term(vec![1, 0, 1], int(1));
        expect.add_term(vec![0, 1, 1], int(1));
        assert_eq!(p, expect);
        // e_4 vanishes in three variables.
        assert!(e(4).evaluate_in_vars(3).is_zero());
        // h_2 in three variables: all squares and products.
        let h2 = h_in_e(2).evaluate_in_vars(3);
        let mut expect2 = MultiPoly::zero(3);
        for exp in crate::multipoly::monomials_of_weighted_degree(3, &[1, 1, 1], 2) {
            expect2.add_term(exp, int(1));
        }
        assert_eq!(h2, expect2);
    }

    #[test]
    fn evaluation_is_symmetric() {
        for n in 0..=6u32 {
            for l in Partition::enumerate(n, 4, 4) {
                let s = schur_jacobi_trudi(&l, JtBasis::E);
                for a in 1..=4usize {
                    let p = s.evaluate_in_vars(a);
                    for i in 1..a {
                        assert_eq!(p.swap_vars(i), p, "lambda = {l}, a = {a}, i = {i}");
                    }
                }
            }
        }
    }

    #[test]
    fn truncation() {
        let f = &ep(&[3, 1]) + &ep(&[2, 2]);
        assert_eq!(f.truncate_to(2), ep(&[2, 2]));
        assert_eq!(f.truncate_to(3), f);
    }
}
