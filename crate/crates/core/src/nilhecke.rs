//! Divided difference operators and the nilHecke algebra.
//!
//! Elements are kept in the canonical form sum_w f_w(x) del_w with the
//! polynomial on the left; del_w is computed from one fixed reduced word per
//! permutation (the lexicographically smallest), and well-definedness across
//! reduced words is a test, not an assumption. The polynomial ring is free
//! over symmetric polynomials with the staircase monomial basis
//! x_1^{a_1} ... x_a^{a_a}, a_i <= a - i, which yields the matrix
//! representation theta into a! x a! matrices over Lambda_a.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::multipoly::MultiPoly;
use crate::symfunc::SymFunc;

/// A permutation of {1..a} in one-line notation with its cached length.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Permutation {
    one_line: Vec<u8>,
    len: u32,
}

impl Permutation {
    pub fn identity(a: usize) -> Self {
        Permutation {
            one_line: (1..=a as u8).collect(),
            len: 0,
        }
    }

    pub fn from_one_line(one_line: Vec<u8>) -> Self {
        let a = one_line.len();
        let mut seen = vec![false; a + 1];
        for &v in &one_line {
            assert!(v >= 1 && v as usize <= a && !seen[v as usize], "not a permutation");
            seen[v as usize] = true;
        }
        let len = inversions(&one_line);
        Permutation { one_line, len }
    }

    /// The adjacent transposition s_i, 1 <= i <= a-1.
    pub fn transposition(a: usize, i: usize) -> Self {
        assert!(i >= 1 && i < a, "transposition index out of range");
        let mut one_line: Vec<u8> = (1..=a as u8).collect();
        one_line.swap(i - 1, i);
        Permutation { one_line, len: 1 }
    }

    /// The longest element a, a-1, ..., 1.
    pub fn longest(a: usize) -> Self {
        let one_line: Vec<u8> = (1..=a as u8).rev().collect();
        let len = inversions(&one_line);
        Permutation { one_line, len }
    }

    pub fn degree(&self) -> usize {
        self.one_line.len()
    }

    pub fn one_line(&self) -> &[u8] {
        &self.one_line
    }

    /// Coxeter length = inversion count.
    pub fn length(&self) -> u32 {
        self.len
    }

    pub fn is_identity(&self) -> bool {
        self.len == 0
    }

    pub fn apply(&self, j: usize) -> usize {
        self.one_line[j - 1] as usize
    }

    /// Function composition: (self * rhs)(j) = self(rhs(j)).
    pub fn compose(&self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree());
        let one_line: Vec<u8> = rhs.one_line.iter().map(|&j| self.one_line[j as usize - 1]).collect();
        let len = inversions(&one_line);
        Permutation { one_line, len }
    }

    /// Left product by s_i: swaps the values i and i+1.
    pub fn left_mul_transposition(&self, i: usize) -> Permutation {
        let mut one_line = self.one_line.clone();
        for v in one_line.iter_mut() {
            if *v as usize == i {
                *v = (i + 1) as u8;
            } else if *v as usize == i + 1 {
                *v = i as u8;
            }
        }
        let len = inversions(&one_line);
        Permutation { one_line, len }
    }

    /// True when l(s_i w) < l(w).
    pub fn has_left_descent(&self, i: usize) -> bool {
        let pos_i = self.one_line.iter().position(|&v| v as usize == i).unwrap();
        let pos_i1 = self.one_line.iter().position(|&v| v as usize == i + 1).unwrap();
        pos_i > pos_i1
    }

    /// The lexicographically smallest reduced word, as generator indices.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.len as usize);
        while !w.is_identity() {
            let i = (1..w.degree())
                .find(|&i| w.has_left_descent(i))
                .expect("non-identity permutation has a descent");
            word.push(i);
            w = w.left_mul_transposition(i);
        }
        word
    }

    /// An alternative reduced word (greedy largest descent), used by tests to
    /// confirm del_w does not depend on the chosen word.
    pub fn reduced_word_greedy_max(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.len as usize);
        while !w.is_identity() {
            let i = (1..w.degree())
                .rev()
                .find(|&i| w.has_left_descent(i))
                .expect("non-identity permutation has a descent");
            word.push(i);
            w = w.left_mul_transposition(i);
        }
        word
    }

    /// All of S_a in lexicographic one-line order.
    pub fn all(a: usize) -> Vec<Permutation> {
        fn rec(rest: &mut Vec<u8>, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            if rest.is_empty() {
                out.push(cur.clone());
                return;
            }
            for k in 0..rest.len() {
                let v = rest.remove(k);
                cur.push(v);
                rec(rest, cur, out);
                cur.pop();
                rest.insert(k, v);
            }
        }
        let mut rest: Vec<u8> = (1..=a as u8).collect();
        let mut out = Vec::new();
        rec(&mut rest, &mut Vec::new(), &mut out);
        out.into_iter().map(Permutation::from_one_line).collect()
    }

    /// The variable action w . x_j = x_{w(j)} on polynomials.
    pub fn act_on_poly(&self, f: &MultiPoly) -> MultiPoly {
        let perm: Vec<usize> = self.one_line.iter().map(|&v| v as usize).collect();
        f.permute_vars(&perm)
    }
}

fn inversions(one_line: &[u8]) -> u32 {
    let mut count = 0;
    for i in 0..one_line.len() {
        for j in i + 1..one_line.len() {
            if one_line[i] > one_line[j] {
                count += 1;
            }
        }
    }
    count
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.one_line.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// The divided difference (f - s_i f)/(x_i - x_{i+1}).
///
/// The division is always exact; a nonzero remainder would contradict the
/// antisymmetry of the numerator and panics loudly.
pub fn divided_difference(i: usize, f: &MultiPoly) -> MultiPoly {
    let a = f.nvars();
    assert!(i >= 1 && i < a, "divided difference index out of range");
    let num = f - &f.swap_vars(i);
    divide_by_var_difference(&num, i)
}

/// Exact division by (x_i - x_{i+1}) via synthetic division in lex order.
fn divide_by_var_difference(num: &MultiPoly, i: usize) -> MultiPoly {
    let a = num.nvars();
    let mut rem = num.clone();
    let mut quot = MultiPoly::zero(a);
    while !rem.is_zero() {
        // Lex-leading term; exponent vectors compare lexicographically.
        let (exp, coeff) = rem.terms().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        if exp[i - 1] == 0 {
            panic!("divided difference: numerator not divisible by x_{i} - x_{}", i + 1);
        }
        let mut t = exp.clone();
        t[i - 1] -= 1;
        quot.add_term(t.clone(), coeff.clone());
        // rem -= (t) * (x_i - x_{i+1})
        rem.add_term(exp, -coeff.clone());
        let mut t2 = t;
        t2[i - 1 + 1] += 1;
        rem.add_term(t2, coeff);
    }
    quot
}

/// Apply del_w along the fixed reduced word of w.
pub fn divided_difference_w(w: &Permutation, f: &MultiPoly) -> MultiPoly {
    let mut out = f.clone();
    for &i in w.reduced_word().iter().rev() {
        out = divided_difference(i, &out);
    }
    out
}

/// Errors from nilHecke-level operations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NhError {
    SizeBoundExceeded,
}

impl fmt::Display for NhError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NhError::SizeBoundExceeded => write!(f, "a! exceeds the configured matrix size bound"),
        }
    }
}

/// Default cap on a! for matrix constructions (a <= 4).
pub const DEFAULT_MATRIX_BOUND: usize = 24;

/// An element of the nilHecke algebra in canonical form sum_w f_w del_w.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NilHeckeElt {
    a: usize,
    terms: BTreeMap<Permutation, MultiPoly>,
}

impl NilHeckeElt {
    pub fn zero(a: usize) -> Self {
        NilHeckeElt {
            a,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(a: usize) -> Self {
        Self::from_poly(MultiPoly::one(a))
    }

    /// The generator xi_i acting by multiplication by x_i.
    pub fn xi(a: usize, i: usize) -> Self {
        Self::from_poly(MultiPoly::var(a, i))
    }

    /// The generator del_i.
    pub fn del(a: usize, i: usize) -> Self {
        Self::term(
            Permutation::transposition(a, i),
            MultiPoly::one(a),
        )
    }

    pub fn from_poly(f: MultiPoly) -> Self {
        let a = f.nvars();
        Self::term(Permutation::identity(a), f)
    }

    pub fn term(w: Permutation, f: MultiPoly) -> Self {
        let a = w.degree();
        assert_eq!(a, f.nvars());
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(w, f);
        }
        NilHeckeElt { a, terms }
    }

    pub fn ambient(&self) -> usize {
        self.a
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Permutation) -> MultiPoly {
        self.terms.get(w).cloned().unwrap_or_else(|| MultiPoly::zero(self.a))
    }

    fn add_part(&mut self, w: Permutation, f: MultiPoly) {
        if f.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &f;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &NilHeckeElt) -> NilHeckeElt {
        assert_eq!(self.a, rhs.a, "mismatched ambient variable count");
        let mut out = self.clone();
        for (w, f) in &rhs.terms {
            out.add_part(w.clone(), f.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &NilHeckeElt) -> NilHeckeElt {
        assert_eq!(self.a, rhs.a, "mismatched ambient variable count");
        let mut out = self.clone();
        for (w, f) in &rhs.terms {
            out.add_part(w.clone(), -f);
        }
        out
    }

    pub fn neg(&self) -> NilHeckeElt {
        NilHeckeElt {
            a: self.a,
            terms: self.terms.iter().map(|(w, f)| (w.clone(), -f)).collect(),
        }
    }

    pub fn scaled(&self, c: &BigRational) -> NilHeckeElt {
        if c.is_zero() {
            return NilHeckeElt::zero(self.a);
        }
        NilHeckeElt {
            a: self.a,
            terms: self.terms.iter().map(|(w, f)| (w.clone(), f.scaled(c))).collect(),
        }
    }

    /// Left multiplication by del_i in canonical form:
    /// del_i . f del_w = s_i(f) del_{s_i w} + del_i(f) del_w, with the first
    /// summand dropped when the lengths do not add.
    fn left_mul_del(&self, i: usize) -> NilHeckeElt {
        let mut out = NilHeckeElt::zero(self.a);
        for (w, f) in &self.terms {
            let siw = w.left_mul_transposition(i);
            if siw.length() == w.length() + 1 {
                out.add_part(siw, Permutation::transposition(self.a, i).act_on_poly(f));
            }
            out.add_part(w.clone(), divided_difference(i, f));
        }
        out
    }

    fn left_mul_poly(&self, g: &MultiPoly) -> NilHeckeElt {
        let mut out = NilHeckeElt::zero(self.a);
        for (w, f) in &self.terms {
            out.add_part(w.clone(), g * f);
        }
        out
    }

    /// Canonical-form product.
    pub fn mul(&self, rhs: &NilHeckeElt) -> NilHeckeElt {
        assert_eq!(self.a, rhs.a, "mismatched ambient variable count");
        let mut out = NilHeckeElt::zero(self.a);
        for (u, f) in &self.terms {
            let mut part = rhs.clone();
            for &i in u.reduced_word().iter().rev() {
                part = part.left_mul_del(i);
            }
            part = part.left_mul_poly(f);
            out = out.add(&part);
        }
        out
    }

    /// Operator action on a polynomial: the faithfulness oracle for `mul`.
    pub fn act(&self, f: &MultiPoly) -> MultiPoly {
        assert_eq!(self.a, f.nvars(), "mismatched ambient variable count");
        let mut out = MultiPoly::zero(self.a);
        for (w, g) in &self.terms {
            out = &out + &(g * &divided_difference_w(w, f));
        }
        out
    }

    /// Homogeneous degree (deg f_w - 2 l(w)), or None when mixed.
    pub fn degree(&self) -> Option<i64> {
        let weights = vec![1u32; self.a];
        let mut deg: Option<i64> = None;
        for (w, f) in &self.terms {
            let fd = f.homogeneous_weighted_degree(&weights)? as i64;
            let d = 2 * fd - 2 * w.length() as i64;
            match deg {
                None => deg = Some(d),
                Some(existing) if existing == d => {}
                _ => return None,
            }
        }
        deg
    }

    /// The staircase monomial delta_a = x_1^{a-1} x_2^{a-2} ... x_{a-1}.
    pub fn delta_poly(a: usize) -> MultiPoly {
        let exp: Vec<u32> = (0..a).map(|i| (a - 1 - i) as u32).collect();
        MultiPoly::monomial(exp, BigRational::one())
    }

    /// The idempotent e_a = delta_a del_{w_0}.
    pub fn e_idempotent(a: usize) -> NilHeckeElt {
        Self::term(Permutation::longest(a), Self::delta_poly(a))
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (k, (w, f)) in self.terms.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            let needs_parens = f.num_terms() > 1;
            if needs_parens {
                out.push('(');
            }
            out.push_str(&f.to_text("x"));
            if needs_parens {
                out.push(')');
            }
            if !w.is_identity() {
                out.push_str("*d");
                out.push_str(&alloc::format!("{w}"));
            }
        }
        out
    }
}

impl fmt::Display for NilHeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// The ordered staircase basis: blocks B_alpha over the sub-exponents
/// (alpha_2..alpha_a) in ascending lexicographic order, and inside each block
/// the x_1-power descending a-1, ..., 1, 0.
pub fn staircase_basis(a: usize) -> Vec<Vec<u32>> {
    let mut rests: Vec<Vec<u32>> = vec![vec![]];
    for j in 2..=a {
        let cap = (a - j) as u32;
        let mut next = Vec::new();
        for r in &rests {
            for v in 0..=cap {
                let mut e = r.clone();
                e.push(v);
                next.push(e);
            }
        }
        rests = next;
    }
    rests.sort();
    let mut out = Vec::with_capacity(factorial(a));
    for rest in rests {
        for p in (0..a as u32).rev() {
            let mut e = Vec::with_capacity(a);
            e.push(p);
            e.extend_from_slice(&rest);
            out.push(e);
        }
    }
    out
}

pub fn factorial(a: usize) -> usize {
    (1..=a).product()
}

/// Decomposes f over the staircase basis with symmetric-function
/// coefficients: f = sum_alpha c_alpha(e) x^alpha. Recombining through
/// [`SymFunc::evaluate_in_vars`] reproduces f exactly.
pub fn staircase_decompose(f: &MultiPoly) -> BTreeMap<Vec<u32>, SymFunc> {
    let a = f.nvars();
    assert!(a >= 1);
    let mut out: BTreeMap<Vec<u32>, SymFunc> = BTreeMap::new();
    if a == 1 {
        // x_1^d = e_1^d in one variable.
        for (exp, c) in f.terms() {
            let ones = crate::symfunc::Partition::new(vec![1; exp[0] as usize]);
            add_sym(&mut out, vec![0], SymFunc::term(ones, c.clone()));
        }
        return out;
    }
    for (m, g) in f.split_off_first_var() {
        for (alpha_rest, c_sub) in staircase_decompose(&g) {
            // Rewrite the Lambda(x_2..x_a) coefficient into powers of x_1
            // with Lambda(x_1..x_a) coefficients.
            for (d, c_full) in convert_sub_elementary(&c_sub, a) {
                for (p, c_red) in reduce_x1_power(m + d, a) {
                    let mut alpha = Vec::with_capacity(a);
                    alpha.push(p);
                    alpha.extend_from_slice(&alpha_rest);
                    add_sym(&mut out, alpha, &c_red * &c_full);
                }
            }
        }
    }
    out
}

fn add_sym(map: &mut BTreeMap<Vec<u32>, SymFunc>, key: Vec<u32>, val: SymFunc) {
    if val.is_zero() {
        return;
    }
    match map.entry(key) {
        alloc::collections::btree_map::Entry::Vacant(v) => {
            v.insert(val);
        }
        alloc::collections::btree_map::Entry::Occupied(mut o) => {
            let sum = &*o.get() + &val;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

/// e_r(x_2..x_a) = sum_j (-x_1)^j e_{r-j}(x_1..x_a): rewrites a symmetric
/// function of the last a-1 variables as a polynomial in x_1 whose
/// coefficients are symmetric in all a variables. Returned as pairs
/// (x_1 power, coefficient).
fn convert_sub_elementary(c: &SymFunc, _a: usize) -> Vec<(u32, SymFunc)> {
    let mut acc: BTreeMap<u32, SymFunc> = BTreeMap::new();
    for (lambda, coeff) in c.terms() {
        // Product over the parts of lambda.
        let mut prod: BTreeMap<u32, SymFunc> = BTreeMap::new();
        prod.insert(0, SymFunc::term(crate::symfunc::Partition::empty(), coeff.clone()));
        for &r in lambda.parts() {
            let mut next: BTreeMap<u32, SymFunc> = BTreeMap::new();
            for (d, sym) in &prod {
                for j in 0..=r {
                    let sign = if j % 2 == 0 {
                        BigRational::one()
                    } else {
                        -BigRational::one()
                    };
                    let term = &sym.scaled(&sign) * &SymFunc::e(r - j);
                    let key = d + j;
                    match next.entry(key) {
                        alloc::collections::btree_map::Entry::Vacant(v) => {
                            if !term.is_zero() {
                                v.insert(term);
                            }
                        }
                        alloc::collections::btree_map::Entry::Occupied(mut o) => {
                            let sum = &*o.get() + &term;
                            if sum.is_zero() {
                                o.remove();
                            } else {
                                *o.get_mut() = sum;
                            }
                        }
                    }
                }
            }
            prod = next;
        }
        for (d, sym) in prod {
            match acc.entry(d) {
                alloc::collections::btree_map::Entry::Vacant(v) => {
                    if !sym.is_zero() {
                        v.insert(sym);
                    }
                }
                alloc::collections::btree_map::Entry::Occupied(mut o) => {
                    let sum = &*o.get() + &sym;
                    if sum.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = sum;
                    }
                }
            }
        }
    }
    acc.into_iter().collect()
}

/// x_1^p reduced below x_1^a using x_1^a = sum_j (-1)^{j+1} e_j x_1^{a-j}.
fn reduce_x1_power(p: u32, a: usize) -> Vec<(u32, SymFunc)> {
    if (p as usize) < a {
        return vec![(p, SymFunc::one())];
    }
    let mut acc: BTreeMap<u32, SymFunc> = BTreeMap::new();
    for j in 1..=a as u32 {
        let sign = if j % 2 == 1 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        let e_j = SymFunc::e(j).scaled(&sign);
        for (p2, c2) in reduce_x1_power(p - j, a) {
            let term = &e_j * &c2;
            match acc.entry(p2) {
                alloc::collections::btree_map::Entry::Vacant(v) => {
                    if !term.is_zero() {
                        v.insert(term);
                    }
                }
                alloc::collections::btree_map::Entry::Occupied(mut o) => {
                    let sum = &*o.get() + &term;
                    if sum.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = sum;
                    }
                }
            }
        }
    }
    acc.into_iter().collect()
}

/// A square matrix with entries in Lambda_a, rows and columns indexed by the
/// ordered staircase basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymMatrix {
    a: usize,
    size: usize,
    entries: Vec<SymFunc>,
}

impl SymMatrix {
    pub fn zero(a: usize, size: usize) -> Self {
        SymMatrix {
            a,
            size,
            entries: vec![SymFunc::zero(); size * size],
        }
    }

    pub fn identity(a: usize, size: usize) -> Self {
        let mut m = Self::zero(a, size);
        for i in 0..size {
            *m.entry_mut(i, i) = SymFunc::one();
        }
        m
    }

    pub fn ambient(&self) -> usize {
        self.a
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, row: usize, col: usize) -> &SymFunc {
        &self.entries[row * self.size + col]
    }

    pub fn entry_mut(&mut self, row: usize, col: usize) -> &mut SymFunc {
        &mut self.entries[row * self.size + col]
    }

    pub fn entries(&self) -> &[SymFunc] {
        &self.entries
    }

    pub fn mul(&self, rhs: &SymMatrix) -> SymMatrix {
        assert_eq!(self.size, rhs.size);
        assert_eq!(self.a, rhs.a);
        let mut out = SymMatrix::zero(self.a, self.size);
        for i in 0..self.size {
            for k in 0..self.size {
                let left = self.entry(i, k);
                if left.is_zero() {
                    continue;
                }
                for j in 0..self.size {
                    let right = rhs.entry(k, j);
                    if right.is_zero() {
                        continue;
                    }
                    let prod = left * right;
                    *out.entry_mut(i, j) = &*out.entry(i, j) + &prod;
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> SymMatrix {
        let mut out = SymMatrix::identity(self.a, self.size);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// The square sub-block at rows/cols [start, start + len).
    pub fn block(&self, start: usize, len: usize) -> SymMatrix {
        let mut out = SymMatrix::zero(self.a, len);
        for i in 0..len {
            for j in 0..len {
                *out.entry_mut(i, j) = self.entry(start + i, start + j).clone();
            }
        }
        out
    }

    pub fn column(&self, col: usize) -> Vec<SymFunc> {
        (0..self.size).map(|i| self.entry(i, col).clone()).collect()
    }
}

/// The matrix of the action of `x` in the ordered staircase basis.
///
/// Columns are images of basis monomials under [`NilHeckeElt::act`], expanded
/// by [`staircase_decompose`]. theta is an algebra homomorphism.
pub fn theta_matrix(x: &NilHeckeElt, max_size: usize) -> Result<SymMatrix, NhError> {
    let a = x.ambient();
    let size = factorial(a);
    if size > max_size {
        return Err(NhError::SizeBoundExceeded);
    }
    let basis = staircase_basis(a);
    let index: BTreeMap<Vec<u32>, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    let mut m = SymMatrix::zero(a, size);
    for (col, alpha) in basis.iter().enumerate() {
        let image = x.act(&MultiPoly::monomial(alpha.clone(), BigRational::one()));
        for (beta, c) in staircase_decompose(&image) {
            let row = *index.get(&beta).expect("staircase decomposition key");
            *m.entry_mut(row, col) = c;
        }
    }
    Ok(m)
}

/// theta with the default size bound.
pub fn theta(x: &NilHeckeElt) -> Result<SymMatrix, NhError> {
    theta_matrix(x, DEFAULT_MATRIX_BOUND)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::int;

    fn x(a: usize, i: usize) -> MultiPoly {
        MultiPoly::var(a, i)
    }

    #[test]
    fn permutation_basics() {
        let w = Permutation::from_one_line(vec![3, 1, 2]);
        assert_eq!(w.length(), 2);
        assert_eq!(w.reduced_word(), vec![2, 1]);
        // w = s_2 s_1 under function composition.
        let s1 = Permutation::transposition(3, 1);
        let s2 = Permutation::transposition(3, 2);
        assert_eq!(s2.compose(&s1), w);
        let w0 = Permutation::longest(4);
        assert_eq!(w0.length(), 6);
        assert_eq!(w0.reduced_word().len(), 6);
    }

    #[test]
    fn reduced_words_multiply_back() {
        for w in Permutation::all(4) {
            for word in [w.reduced_word(), w.reduced_word_greedy_max()] {
                let mut prod = Permutation::identity(4);
                for &i in &word {
                    prod = prod.compose(&Permutation::transposition(4, i));
                }
                assert_eq!(prod, w);
                assert_eq!(word.len() as u32, w.length());
            }
        }
    }

    #[test]
    fn divided_difference_values() {
        assert_eq!(divided_difference(1, &x(2, 1)), MultiPoly::one(2));
        assert!(divided_difference(1, &(&x(2, 1) * &x(2, 2))).is_zero());
        assert_eq!(
            divided_difference(1, &(&x(2, 1) * &x(2, 1))),
            &x(2, 1) + &x(2, 2)
        );
    }

    #[test]
    fn divided_difference_monomial_formula() {
        // del_1(x_1^k) = sum_{i+j=k-1} x_1^i x_2^j, an independent oracle.
        for k in 1..=6u32 {
            let mut xk = MultiPoly::one(2);
            for _ in 0..k {
                xk = &xk * &x(2, 1);
            }
            let lhs = divided_difference(1, &xk);
            let mut rhs = MultiPoly::zero(2);
            for i in 0..k {
                rhs.add_term(vec![i, k - 1 - i], int(1));
            }
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn twisted_leibniz() {
        // del_i(fg) = del_i(f) g + s_i(f) del_i(g).
        let f = &(&x(3, 1) * &x(3, 1)) + &(&x(3, 2) * &x(3, 3));
        let g = &x(3, 1) + &(&x(3, 2) * &x(3, 2));
        for i in 1..3 {
            let lhs = divided_difference(i, &(&f * &g));
            let rhs = &(&divided_difference(i, &f) * &g)
                + &(&f.swap_vars(i) * &divided_difference(i, &g));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn del_w_independent_of_reduced_word() {
        let f = &(&(&x(3, 1) * &x(3, 1)) * &x(3, 2)) + &(&x(3, 3) * &x(3, 3));
        for w in Permutation::all(3) {
            let via_min = {
                let mut out = f.clone();
                for &i in w.reduced_word().iter().rev() {
                    out = divided_difference(i, &out);
                }
                out
            };
            let via_max = {
                let mut out = f.clone();
                for &i in w.reduced_word_greedy_max().iter().rev() {
                    out = divided_difference(i, &out);
                }
                out
            };
            assert_eq!(via_min, via_max, "w = {w}");
        }
    }

    #[test]
    fn staircase_examples() {
        // x_a = e_1 - x_1 - x_2 - ... - x_{a-1}.
        let a = 3;
        let dec = staircase_decompose(&x(a, 3));
        assert_eq!(dec.get(&vec![0, 0, 0]), Some(&SymFunc::e(1)));
        assert_eq!(
            dec.get(&vec![1, 0, 0]),
            Some(&SymFunc::one().scaled(&int(-1)))
        );
        assert_eq!(
            dec.get(&vec![0, 1, 0]),
            Some(&SymFunc::one().scaled(&int(-1)))
        );
        assert_eq!(dec.len(), 3);

        // x_1^a = sum_j (-1)^{j+1} x_1^{a-j} e_j for a = 3.
        let x1cubed = MultiPoly::monomial(vec![3, 0, 0], int(1));
        let dec2 = staircase_decompose(&x1cubed);
        assert_eq!(dec2.get(&vec![2, 0, 0]), Some(&SymFunc::e(1)));
        assert_eq!(dec2.get(&vec![1, 0, 0]), Some(&SymFunc::e(2).scaled(&int(-1))));
        assert_eq!(dec2.get(&vec![0, 0, 0]), Some(&SymFunc::e(3)));
        assert_eq!(dec2.len(), 3);

        // The constant 1.
        let dec3 = staircase_decompose(&MultiPoly::one(3));
        assert_eq!(dec3.get(&vec![0, 0, 0]), Some(&SymFunc::one()));
        assert_eq!(dec3.len(), 1);
    }

    #[test]
    fn staircase_recombination() {
        // Decompose then recombine via evaluate_in_vars.
        let polys = [
            &(&x(3, 1) * &(&x(3, 2) * &x(3, 3))) + &(&x(3, 2) * &x(3, 2)),
            MultiPoly::monomial(vec![4, 2, 1], int(3)),
            &(&x(3, 3) * &(&x(3, 3) * &x(3, 3))) - &x(3, 1),
        ];
        for f in &polys {
            let dec = staircase_decompose(f);
            let mut back = MultiPoly::zero(3);
            for (alpha, c) in &dec {
                let mono = MultiPoly::monomial(alpha.clone(), int(1));
                back = &back + &(&mono * &c.evaluate_in_vars(3));
                // Staircase constraint alpha_i <= a - i.
                for (i, &e) in alpha.iter().enumerate() {
                    assert!(e as usize <= 3 - (i + 1));
                }
            }
            assert_eq!(&back, f);
        }
    }

    #[test]
    fn nilhecke_relations_symbolic() {
        // The seven defining relations, as canonical-form identities, a <= 4.
        for a in 2..=4usize {
            let xi = |i: usize| NilHeckeElt::xi(a, i);
            let del = |i: usize| NilHeckeElt::del(a, i);
            let one = NilHeckeElt::one(a);
            for i in 1..=a {
                for j in 1..=a {
                    assert_eq!(xi(i).mul(&xi(j)), xi(j).mul(&xi(i)));
                }
            }
            for i in 1..a {
                for j in 1..=a {
                    if j != i && j != i + 1 {
                        assert_eq!(del(i).mul(&xi(j)), xi(j).mul(&del(i)));
                    }
                }
                for j in 1..a {
                    if (i as i64 - j as i64).abs() > 1 {
                        assert_eq!(del(i).mul(&del(j)), del(j).mul(&del(i)));
                    }
                }
                assert!(del(i).mul(&del(i)).is_zero(), "del_{i}^2 = 0");
                if i + 1 < a {
                    assert_eq!(
                        del(i).mul(&del(i + 1)).mul(&del(i)),
                        del(i + 1).mul(&del(i)).mul(&del(i + 1))
                    );
                }
                assert_eq!(xi(i).mul(&del(i)).sub(&del(i).mul(&xi(i + 1))), one);
                assert_eq!(del(i).mul(&xi(i)).sub(&xi(i + 1).mul(&del(i))), one);
            }
        }
    }

    #[test]
    fn dot_slide_formula() {
        // del_1 xi_1^alpha - xi_2^alpha del_1 = sum_{f1+f2=alpha-1}
        // xi_1^{f1} xi_2^{f2}, checked as operators on monomials, alpha = 3.
        let a = 2;
        let alpha = 3;
        let mut xi1_pow = NilHeckeElt::one(a);
        let mut xi2_pow = NilHeckeElt::one(a);
        for _ in 0..alpha {
            xi1_pow = xi1_pow.mul(&NilHeckeElt::xi(a, 1));
            xi2_pow = xi2_pow.mul(&NilHeckeElt::xi(a, 2));
        }
        let lhs = NilHeckeElt::del(a, 1)
            .mul(&xi1_pow)
            .sub(&xi2_pow.mul(&NilHeckeElt::del(a, 1)));
        let mut rhs = NilHeckeElt::zero(a);
        for f1 in 0..alpha {
            let f2 = alpha - 1 - f1;
            rhs = rhs.add(&NilHeckeElt::from_poly(MultiPoly::monomial(
                vec![f1, f2],
                int(1),
            )));
        }
        assert_eq!(lhs, rhs);
        // Operator oracle on all monomials of degree <= 8.
        for d in 0..=8u32 {
            for exp in crate::multipoly::monomials_of_weighted_degree(a, &[1, 1], d) {
                let m = MultiPoly::monomial(exp, int(1));
                assert_eq!(lhs.act(&m), rhs.act(&m));
            }
        }
    }

    #[test]
    fn act_examples() {
        let a = 2;
        assert_eq!(NilHeckeElt::del(a, 1).act(&x(a, 1)), MultiPoly::one(a));
        assert_eq!(NilHeckeElt::xi(a, 2).act(&MultiPoly::one(a)), x(a, 2));
        let xi1del1 = NilHeckeElt::xi(a, 1).mul(&NilHeckeElt::del(a, 1));
        assert_eq!(xi1del1.act(&x(a, 1)), x(a, 1));
    }

    #[test]
    fn multiplication_matches_operator_composition() {
        // act(x*y, f) = act(x, act(y, f)) on a spread of elements.
        let a = 3;
        let elts = [
            NilHeckeElt::del(a, 1),
            NilHeckeElt::del(a, 2).mul(&NilHeckeElt::xi(a, 1)),
            NilHeckeElt::xi(a, 3).mul(&NilHeckeElt::del(a, 1)).add(&NilHeckeElt::one(a)),
            NilHeckeElt::e_idempotent(a),
        ];
        let f = &(&x(a, 1) * &(&x(a, 1) + &x(a, 2))) + &(&x(a, 3) * &x(a, 2));
        for u in &elts {
            for v in &elts {
                assert_eq!(u.mul(v).act(&f), u.act(&v.act(&f)));
            }
        }
    }

    #[test]
    fn idempotent_examples() {
        assert_eq!(NilHeckeElt::e_idempotent(1), NilHeckeElt::one(1));
        assert_eq!(
            NilHeckeElt::e_idempotent(2),
            NilHeckeElt::xi(2, 1).mul(&NilHeckeElt::del(2, 1))
        );
        // a = 3: xi_1^2 xi_2 del_{w_0}.
        let e3 = NilHeckeElt::e_idempotent(3);
        assert_eq!(
            e3,
            NilHeckeElt::term(
                Permutation::longest(3),
                MultiPoly::monomial(vec![2, 1, 0], int(1))
            )
        );
    }

    #[test]
    fn idempotency_small() {
        for a in 1..=4usize {
            let e = NilHeckeElt::e_idempotent(a);
            assert_eq!(e.mul(&e), e, "e_{a}^2 = e_{a}");
        }
    }

    #[test]
    fn longest_divided_difference_of_delta_is_one() {
        for a in 1..=4usize {
            let w0 = Permutation::longest(a);
            let out = divided_difference_w(&w0, &NilHeckeElt::delta_poly(a));
            assert!(out.is_one(), "a = {a}: got {out}");
        }
    }

    #[test]
    fn staircase_basis_order() {
        assert_eq!(staircase_basis(1), vec![vec![0]]);
        assert_eq!(staircase_basis(2), vec![vec![1, 0], vec![0, 0]]);
        assert_eq!(
            staircase_basis(3),
            vec![
                vec![2, 0, 0],
                vec![1, 0, 0],
                vec![0, 0, 0],
                vec![2, 1, 0],
                vec![1, 1, 0],
                vec![0, 1, 0],
            ]
        );
        assert_eq!(staircase_basis(4).len(), 24);
    }

    #[test]
    fn theta_examples() {
        // theta(xi_1) for a = 2 is the companion block [[e1, 1], [-e2, 0]].
        let m = theta(&NilHeckeElt::xi(2, 1)).unwrap();
        assert_eq!(m.entry(0, 0), &SymFunc::e(1));
        assert_eq!(m.entry(0, 1), &SymFunc::one());
        assert_eq!(m.entry(1, 0), &SymFunc::e(2).scaled(&int(-1)));
        assert!(m.entry(1, 1).is_zero());

        // theta(1) is the identity.
        for a in 1..=3usize {
            assert_eq!(
                theta(&NilHeckeElt::one(a)).unwrap(),
                SymMatrix::identity(a, factorial(a))
            );
        }

        // theta(del_1) for a = 2 in the basis {x_1, 1}.
        let d = theta(&NilHeckeElt::del(2, 1)).unwrap();
        assert!(d.entry(0, 0).is_zero());
        assert!(d.entry(0, 1).is_zero());
        assert_eq!(d.entry(1, 0), &SymFunc::one());
        assert!(d.entry(1, 1).is_zero());

        // theta(e_2) is the (1,1) matrix unit: product of the two above.
        let e2 = theta(&NilHeckeElt::e_idempotent(2)).unwrap();
        assert_eq!(e2, {
            let mut unit = SymMatrix::zero(2, 2);
            *unit.entry_mut(0, 0) = SymFunc::one();
            unit
        });
        assert_eq!(e2, m.mul(&d));
    }

    #[test]
    fn theta_size_bound() {
        assert_eq!(
            theta_matrix(&NilHeckeElt::one(5), 24),
            Err(NhError::SizeBoundExceeded)
        );
    }

    #[test]
    fn theta_xi1_block_structure() {
        // Block diagonal with (a-1)! identical companion blocks.
        for a in 2..=4usize {
            let m = theta(&NilHeckeElt::xi(a, 1)).unwrap();
            let blocks = factorial(a - 1);
            let first = m.block(0, a);
            for b in 0..blocks {
                let blk = m.block(b * a, a);
                assert_eq!(blk, first, "a = {a}, block {b}");
            }
            // Off-block entries vanish.
            for i in 0..factorial(a) {
                for j in 0..factorial(a) {
                    if i / a != j / a {
                        assert!(m.entry(i, j).is_zero());
                    }
                }
            }
            // First column of the block: e_1, -e_2, ..., (-1)^{a+1} e_a.
            for r in 0..a {
                let sign = if r % 2 == 0 { int(1) } else { int(-1) };
                assert_eq!(first.entry(r, 0), &SymFunc::e(r as u32 + 1).scaled(&sign));
            }
            // Superdiagonal of ones.
            for r in 0..a {
                for c in 1..a {
                    if c == r + 1 {
                        assert!(first.entry(r, c).is_one());
                    } else {
                        assert!(first.entry(r, c).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn e_a_image_is_delta_times_symmetric() {
        // nh_act(e_a, f) = delta_a * g with g symmetric: the staircase
        // decomposition is supported on delta alone.
        let mut rng = crate::nilhecke::tests::TestRng::new(0x5eed);
        for a in 2..=3usize {
            let e = NilHeckeElt::e_idempotent(a);
            let delta_exp: Vec<u32> = (0..a).map(|i| (a - 1 - i) as u32).collect();
            for _ in 0..30 {
                let f = rng.random_poly(a, 5, 4);
                let image = e.act(&f);
                let dec = staircase_decompose(&image);
                for alpha in dec.keys() {
                    assert_eq!(alpha, &delta_exp, "support must be delta_a alone");
                }
            }
        }
    }

    #[test]
    fn longest_del_image_is_symmetric() {
        let mut rng = TestRng::new(0xabcd);
        for a in 2..=4usize {
            let w0 = Permutation::longest(a);
            for _ in 0..10 {
                let f = rng.random_poly(a, 5, 3);
                let g = divided_difference_w(&w0, &f);
                for i in 1..a {
                    assert_eq!(g.swap_vars(i), g);
                }
            }
        }
    }

    #[test]
    fn theta_multiplicative_on_random_pairs() {
        let mut rng = TestRng::new(0x7413);
        for a in 1..=3usize {
            for _ in 0..50 {
                let u = rng.random_nh(a, 2);
                let v = rng.random_nh(a, 2);
                let lhs = theta(&u.mul(&v)).unwrap();
                let rhs = theta(&u).unwrap().mul(&theta(&v).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn relations_as_operators_on_random_polynomials() {
        // The two commutation relations involving polynomials, checked as
        // operators on 50 random polynomials of degree <= 10.
        let mut rng = TestRng::new(0x1dea);
        for a in 2..=4usize {
            for _ in 0..50 {
                let f = rng.random_poly(a, 4, 5);
                for i in 1..a {
                    let xi_i = NilHeckeElt::xi(a, i);
                    let xi_i1 = NilHeckeElt::xi(a, i + 1);
                    let del_i = NilHeckeElt::del(a, i);
                    let lhs1 = xi_i.mul(&del_i).act(&f);
                    let lhs2 = del_i.mul(&xi_i1).act(&f);
                    assert_eq!(&lhs1 - &lhs2, f, "xi_i del_i - del_i xi_{{i+1}} = 1");
                    let lhs3 = del_i.mul(&xi_i).act(&f);
                    let lhs4 = xi_i1.mul(&del_i).act(&f);
                    assert_eq!(&lhs3 - &lhs4, f, "del_i xi_i - xi_{{i+1}} del_i = 1");
                    assert!(del_i.mul(&del_i).act(&f).is_zero());
                    if i + 1 < a {
                        let b1 = del_i
                            .mul(&NilHeckeElt::del(a, i + 1))
                            .mul(&del_i)
                            .act(&f);
                        let b2 = NilHeckeElt::del(a, i + 1)
                            .mul(&del_i)
                            .mul(&NilHeckeElt::del(a, i + 1))
                            .act(&f);
                        assert_eq!(b1, b2);
                    }
                }
            }
        }
    }

    #[test]
    fn theta_injective_on_graded_pieces() {
        // For a <= 3 and degrees <= 8: monomials xi^beta del_w of a fixed
        // degree map to linearly independent matrices (exact rank over Q).
        use crate::linalg::RowSpace;
        for a in 2..=3usize {
            let size = factorial(a);
            let perms = Permutation::all(a);
            let max_len: u32 = Permutation::longest(a).length();
            let mut d = -2 * max_len as i64;
            while d <= 8 {
                // Collect the degree-d monomial basis.
                let mut monomials: Vec<NilHeckeElt> = Vec::new();
                for w in &perms {
                    let pd = d + 2 * w.length() as i64;
                    if pd < 0 || pd % 2 != 0 {
                        continue;
                    }
                    for exp in crate::multipoly::monomials_of_weighted_degree(
                        a,
                        &vec![1; a],
                        (pd / 2) as u32,
                    ) {
                        monomials.push(NilHeckeElt::term(
                            w.clone(),
                            MultiPoly::monomial(exp, int(1)),
                        ));
                    }
                }
                if monomials.is_empty() {
                    d += 2;
                    continue;
                }
                // Flatten theta images to rational vectors.
                let mats: Vec<SymMatrix> =
                    monomials.iter().map(|m| theta(m).unwrap()).collect();
                let mut keys: alloc::collections::BTreeSet<(usize, usize, crate::symfunc::Partition)> =
                    alloc::collections::BTreeSet::new();
                for m in &mats {
                    for i in 0..size {
                        for j in 0..size {
                            for (l, _) in m.entry(i, j).terms() {
                                keys.insert((i, j, l.clone()));
                            }
                        }
                    }
                }
                let index: alloc::collections::BTreeMap<_, usize> = keys
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(k, v)| (v, k))
                    .collect();
                let mut space = RowSpace::new(index.len());
                let mut rank = 0usize;
                for m in &mats {
                    let mut vec = alloc::vec![BigRational::zero(); index.len()];
                    for i in 0..size {
                        for j in 0..size {
                            for (l, c) in m.entry(i, j).terms() {
                                vec[index[&(i, j, l.clone())]] = c.clone();
                            }
                        }
                    }
                    if space.insert(vec) {
                        rank += 1;
                    }
                }
                assert_eq!(rank, monomials.len(), "a = {a}, degree {d}");
                d += 2;
            }
        }
    }

    /// Tiny deterministic generator (splitmix64) for seeded test data.
    pub(crate) struct TestRng(u64);

    impl TestRng {
        pub(crate) fn new(seed: u64) -> Self {
            TestRng(seed)
        }

        pub(crate) fn next_u64(&mut self) -> u64 {
            self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = self.0;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        }

        pub(crate) fn below(&mut self, n: u64) -> u64 {
            self.next_u64() % n
        }

        /// Random polynomial with small integer coefficients.
        pub(crate) fn random_poly(&mut self, nvars: usize, max_terms: u64, max_exp: u64) -> MultiPoly {
            let mut p = MultiPoly::zero(nvars);
            let terms = 1 + self.below(max_terms);
            for _ in 0..terms {
                let exp: Vec<u32> = (0..nvars).map(|_| self.below(max_exp + 1) as u32).collect();
                let c = self.below(9) as i64 - 4;
                p.add_term(exp, int(c));
            }
            p
        }

        /// Random nilHecke element with a few terms.
        pub(crate) fn random_nh(&mut self, a: usize, max_terms: u64) -> NilHeckeElt {
            let perms = Permutation::all(a);
            let mut out = NilHeckeElt::zero(a);
            let terms = 1 + self.below(max_terms);
            for _ in 0..terms {
                let w = perms[self.below(perms.len() as u64) as usize].clone();
                let f = self.random_poly(a, 3, 2);
                out = out.add(&NilHeckeElt::term(w, f));
            }
            out
        }
    }
}
