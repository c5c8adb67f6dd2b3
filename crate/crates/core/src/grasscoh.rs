//! Cohomology rings of Grassmannians and one-step flag varieties.
//!
//! Two independent models of H*(Gr(k,N)) are kept side by side: the Chern
//! presentation Q[c_1..c_k]/I_{k,N} with the ideal read off a companion
//! matrix power, and the Schur-basis model with partitions confined to the
//! k x (N-k) box and the Pieri product rule. Each model is the oracle for
//! the other. Graded dimensions of one-step flag varieties are computed by
//! degreewise exact linear algebra on the quotient presentation, and the
//! E/F scalars of the decategorified sl2 action fall out by exact division
//! of graded ranks.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linalg::RowSpace;
use crate::multipoly::{monomials_of_weighted_degree, MultiPoly};
use crate::qscalar::LaurentPoly;
use crate::symfunc::{schur_jacobi_trudi, JtBasis, Partition};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GrassError {
    InvalidRange,
    MismatchedModel,
    InexactDivision,
}

impl fmt::Display for GrassError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrassError::InvalidRange => write!(f, "require 0 <= k <= N"),
            GrassError::MismatchedModel => write!(f, "operands live in different (k, N) models"),
            GrassError::InexactDivision => {
                write!(f, "graded rank division was not exact; internal inconsistency")
            }
        }
    }
}

/// The Grassmannian ideal I_{k,N} in the Chern generators c_1..c_k.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GrassIdeal {
    pub k: u32,
    pub big_n: u32,
    pub generators: Vec<MultiPoly>,
}

/// k x k companion matrix with first column c_1, -c_2, ..., (-1)^{k+1} c_k
/// and a superdiagonal of ones.
fn companion_matrix(k: usize) -> Vec<Vec<MultiPoly>> {
    let mut m = vec![vec![MultiPoly::zero(k); k]; k];
    for i in 0..k {
        let mut c = MultiPoly::var(k, i + 1);
        if i % 2 == 1 {
            c = -&c;
        }
        m[i][0] = c;
        if i + 1 < k {
            m[i][i + 1] = MultiPoly::one(k);
        }
    }
    m
}

fn mat_mul(a: &[Vec<MultiPoly>], b: &[Vec<MultiPoly>]) -> Vec<Vec<MultiPoly>> {
    let n = a.len();
    let mut out = vec![vec![MultiPoly::zero(if n > 0 { a[0][0].nvars() } else { 0 }); n]; n];
    for i in 0..n {
        for l in 0..n {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[l][j].is_zero() {
                    continue;
                }
                out[i][j] = &out[i][j] + &(&a[i][l] * &b[l][j]);
            }
        }
    }
    out
}

fn mat_pow(m: &[Vec<MultiPoly>], e: u32) -> Vec<Vec<MultiPoly>> {
    let n = m.len();
    let nvars = if n > 0 { m[0][0].nvars() } else { 0 };
    let mut out = vec![vec![MultiPoly::zero(nvars); n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = MultiPoly::one(nvars);
    }
    for _ in 0..e {
        out = mat_mul(&out, m);
    }
    out
}

/// The k remaining relations of H*(Gr(k,N)): the first column of the
/// companion matrix raised to the (N-k+1)st power.
pub fn ideal_generators(k: u32, big_n: u32) -> Result<GrassIdeal, GrassError> {
    if k > big_n {
        return Err(GrassError::InvalidRange);
    }
    let ku = k as usize;
    let power = mat_pow(&companion_matrix(ku), big_n - k + 1);
    let generators: Vec<MultiPoly> = (0..ku).map(|i| power[i][0].clone()).collect();
    Ok(GrassIdeal {
        k,
        big_n,
        generators,
    })
}

/// Chern weights (1, 2, ..., k) for polynomials in c_1..c_k.
pub fn chern_weights(k: usize) -> Vec<u32> {
    (1..=k as u32).collect()
}

/// Expressions for cbar_1..cbar_{N-k} in the c_i, by back-substitution in
/// the homogeneous components of (1 + c_1 t + ...)(1 + cbar_1 t + ...) = 1.
pub fn solve_chern_bars(k: u32, big_n: u32) -> Result<Vec<MultiPoly>, GrassError> {
    if k > big_n {
        return Err(GrassError::InvalidRange);
    }
    let ku = k as usize;
    let bars = (big_n - k) as usize;
    let mut solved: Vec<MultiPoly> = vec![MultiPoly::one(ku)];
    for d in 1..=bars {
        // cbar_d = -(c_1 cbar_{d-1} + c_2 cbar_{d-2} + ... ), c_j = 0
        // above k.
        let mut acc = MultiPoly::zero(ku);
        for i in 1..=core::cmp::min(d, ku) {
            acc = &acc + &(&MultiPoly::var(ku, i) * &solved[d - i]);
        }
        solved.push(-&acc);
    }
    Ok(solved.into_iter().skip(1).collect())
}

/// An element of H*(Gr(k,N)) in the Schur basis, partitions confined to the
/// k x (N-k) box.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchurClass {
    pub k: u32,
    pub big_n: u32,
    terms: BTreeMap<Partition, BigRational>,
}

impl SchurClass {
    pub fn zero(k: u32, big_n: u32) -> Self {
        SchurClass {
            k,
            big_n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(k: u32, big_n: u32) -> Self {
        let mut s = Self::zero(k, big_n);
        s.add_term(Partition::empty(), BigRational::one());
        s
    }

    pub fn single(k: u32, big_n: u32, lambda: Partition) -> Self {
        let mut s = Self::zero(k, big_n);
        s.add_term(lambda, BigRational::one());
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn fits_box(&self, lambda: &Partition) -> bool {
        lambda.num_parts() <= self.k as usize
            && lambda.parts().first().map_or(true, |&p| p <= self.big_n - self.k)
    }

    /// Adds a term, silently dropping partitions outside the box.
    pub fn add_term(&mut self, lambda: Partition, coeff: BigRational) {
        if coeff.is_zero() || !self.fits_box(&lambda) {
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

    pub fn coeff(&self, lambda: &Partition) -> BigRational {
        self.terms.get(lambda).cloned().unwrap_or_else(Zero::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.terms.iter()
    }

    pub fn add(&self, rhs: &SchurClass) -> Result<SchurClass, GrassError> {
        if (self.k, self.big_n) != (rhs.k, rhs.big_n) {
            return Err(GrassError::MismatchedModel);
        }
        let mut out = self.clone();
        for (l, c) in &rhs.terms {
            out.add_term(l.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &BigRational) -> SchurClass {
        if c.is_zero() {
            return SchurClass::zero(self.k, self.big_n);
        }
        SchurClass {
            k: self.k,
            big_n: self.big_n,
            terms: self.terms.iter().map(|(l, k)| (l.clone(), k * c)).collect(),
        }
    }

    /// Pieri step: multiply by e_r (add vertical strips of size r), with box
    /// truncation.
    pub fn pieri_e(&self, r: u32) -> SchurClass {
        let mut out = SchurClass::zero(self.k, self.big_n);
        for (lambda, c) in &self.terms {
            for mu in vertical_strip_additions(lambda, r) {
                out.add_term(mu, c.clone());
            }
        }
        out
    }

    pub fn to_pairs(&self) -> Vec<(Partition, BigRational)> {
        self.terms.iter().map(|(l, c)| (l.clone(), c.clone())).collect()
    }
}

/// All partitions obtained from lambda by adding a vertical strip of size r
/// (at most one box per row), unrestricted by any box.
fn vertical_strip_additions(lambda: &Partition, r: u32) -> Vec<Partition> {
    let rows = lambda.num_parts() + r as usize;
    let padded: Vec<u32> = (0..rows)
        .map(|i| lambda.parts().get(i).copied().unwrap_or(0))
        .collect();
    let mut out = Vec::new();
    // Choose mu_i in {l_i, l_i + 1}, weakly decreasing, total bump r.
    fn rec(
        i: usize,
        rem: u32,
        prev: u32,
        padded: &[u32],
        cur: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if i == padded.len() {
            if rem == 0 {
                out.push(Partition::new(cur.clone()));
            }
            return;
        }
        // Remaining rows can absorb at most one box each.
        if rem as usize > padded.len() - i {
            return;
        }
        for bump in [0u32, 1] {
            if bump > rem {
                continue;
            }
            let v = padded[i] + bump;
            if v > prev {
                continue;
            }
            cur.push(v);
            rec(i + 1, rem - bump, v, padded, cur, out);
            cur.pop();
        }
    }
    rec(0, r, u32::MAX, &padded, &mut Vec::new(), &mut out);
    out
}

/// Image of a polynomial in c_1..c_k under c_i -> e_i -> s_(1^i), expanded
/// by iterated Pieri multiplication with box truncation.
pub fn reduce_to_schur(f: &MultiPoly, k: u32, big_n: u32) -> SchurClass {
    assert_eq!(f.nvars(), k as usize);
    let mut out = SchurClass::zero(k, big_n);
    for (exp, coeff) in f.terms() {
        let mut acc = SchurClass::one(k, big_n);
        for (i, &e) in exp.iter().enumerate() {
            for _ in 0..e {
                acc = acc.pieri_e(i as u32 + 1);
            }
        }
        out = out.add(&acc.scaled(coeff)).unwrap();
    }
    out
}

/// Product in the Schur-box model: expand the right factor into e-monomials
/// through Jacobi-Trudi on the conjugate, then apply iterated Pieri steps.
pub fn schur_multiply_box(x: &SchurClass, y: &SchurClass) -> Result<SchurClass, GrassError> {
    if (x.k, x.big_n) != (y.k, y.big_n) {
        return Err(GrassError::MismatchedModel);
    }
    let mut out = SchurClass::zero(x.k, x.big_n);
    for (mu, c) in &y.terms {
        let expansion = schur_jacobi_trudi(mu, JtBasis::E);
        for (nu, d) in expansion.terms() {
            let mut acc = x.scaled(&(c * d));
            for &part in nu.parts() {
                acc = acc.pieri_e(part);
            }
            out = out.add(&acc)?;
        }
    }
    Ok(out)
}

/// Graded dimension of H*(Gr(k,N)): the box-partition generating function
/// sum_lambda q^{2|lambda|}. Equals the q^2 Gaussian binomial.
pub fn graded_dimension_gr(k: u32, big_n: u32) -> Result<LaurentPoly, GrassError> {
    if k > big_n {
        return Err(GrassError::InvalidRange);
    }
    let mut out = LaurentPoly::zero();
    for lambda in Partition::in_box(k as usize, big_n - k) {
        out = &out + &LaurentPoly::q_power(2 * lambda.size() as i64);
    }
    Ok(out)
}

/// Degreewise dimensions of Q[vars]/(gens) for weighted-homogeneous
/// generators: in each degree the ideal slice is spanned and its rank
/// subtracted from the monomial count. The slice in degree d is
/// sum_i x_i * I_{d - w_i} plus the degree-d generators, so the reduced
/// echelon rows of lower degrees are reused as the spanning set. Stops at
/// the first zero dimension (the quotient is a graded algebra, so
/// dimensions stay zero from there on) or at `cap`.
pub fn graded_quotient_dimensions(weights: &[u32], gens: &[MultiPoly], cap: u32) -> Vec<usize> {
    let nvars = weights.len();
    let gen_degrees: Vec<u32> = gens
        .iter()
        .map(|g| {
            g.homogeneous_weighted_degree(weights)
                .expect("ideal generators must be homogeneous")
        })
        .collect();
    let mut dims = Vec::new();
    let mut monlists: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut spaces: Vec<RowSpace> = Vec::new();
    for d in 0..=cap {
        let monomials = monomials_of_weighted_degree(nvars, weights, d);
        let index: BTreeMap<Vec<u32>, usize> = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut space = RowSpace::new(monomials.len());
        for (g, &gd) in gens.iter().zip(&gen_degrees) {
            if gd != d {
                continue;
            }
            let mut v: crate::linalg::SparseVec =
                g.terms().map(|(e, c)| (index[e], c.clone())).collect();
            v.sort_by_key(|(col, _)| *col);
            space.insert_sparse(v);
        }
        for i in 0..nvars {
            if space.is_full() {
                break;
            }
            let w = weights[i];
            if w == 0 || d < w {
                continue;
            }
            let prev = (d - w) as usize;
            let prev_mons = &monlists[prev];
            for row in spaces[prev].int_rows() {
                let mut shifted: Vec<(usize, num_bigint::BigInt)> = row
                    .iter()
                    .map(|(col, c)| {
                        let mut exp = prev_mons[*col].clone();
                        exp[i] += 1;
                        (index[&exp], c.clone())
                    })
                    .collect();
                shifted.sort_by_key(|(col, _)| *col);
                space.insert_int(shifted);
                if space.is_full() {
                    break;
                }
            }
        }
        let dim = monomials.len() - space.rank();
        dims.push(dim);
        monlists.push(monomials);
        spaces.push(space);
        if dim == 0 && d > 0 {
            break;
        }
    }
    dims
}

/// Graded dimension of H*(Fl(k,k+1,N)) from its quotient presentation.
///
/// The bar generators are eliminated by back-substitution first, leaving
/// k+1 homogeneous relations in c_1..c_k and xi; ranks are then counted
/// degree by degree.
pub fn flag_graded_dimension(k: u32, big_n: u32) -> Result<LaurentPoly, GrassError> {
    if k >= big_n {
        return Err(GrassError::InvalidRange);
    }
    let ku = k as usize;
    let nvars = ku + 1; // c_1..c_k, xi
    let bars = (big_n - k - 1) as usize;
    // P(t) = (1 + c_1 t + ... + c_k t^k)(1 + xi t), coefficients in
    // Q[c, xi].
    let mut p: Vec<MultiPoly> = Vec::with_capacity(ku + 2);
    p.push(MultiPoly::one(nvars));
    for i in 1..=ku {
        p.push(MultiPoly::var(nvars, i));
    }
    p.push(MultiPoly::zero(nvars));
    let xi = MultiPoly::var(nvars, nvars);
    for d in (1..=ku + 1).rev() {
        let shifted = &p[d - 1] * &xi;
        p[d] = &p[d] + &shifted;
    }
    // Back-substitute B = 1/P up to degree `bars`.
    let mut b: Vec<MultiPoly> = vec![MultiPoly::one(nvars)];
    for d in 1..=bars {
        let mut acc = MultiPoly::zero(nvars);
        for i in 1..=core::cmp::min(d, ku + 1) {
            acc = &acc + &(&p[i] * &b[d - i]);
        }
        b.push(-&acc);
    }
    // Residual relations: components N-k .. N of P*B - 1.
    let mut gens = Vec::with_capacity(ku + 1);
    for d in (big_n - k) as usize..=big_n as usize {
        let mut acc = MultiPoly::zero(nvars);
        for i in 0..=core::cmp::min(d, ku + 1) {
            if d - i < b.len() {
                acc = &acc + &(&p[i] * &b[d - i]);
            }
        }
        gens.push(acc);
    }
    let mut weights = chern_weights(ku);
    weights.push(1); // xi
    let cap = k * (big_n - k) + (big_n - k - 1) + 1;
    let dims = graded_quotient_dimensions(&weights, &gens, cap);
    let mut out = LaurentPoly::zero();
    for (d, &dim) in dims.iter().enumerate() {
        if dim > 0 {
            out = &out
                + &LaurentPoly::monomial(2 * d as i64, BigRational::from_integer(dim.into()));
        }
    }
    Ok(out)
}

/// The q^2 multinomial [N]! / prod [p_i]! in the nonsymmetric (q^2) form,
/// computed by exact division. Used as the flag-dimension oracle.
pub fn q2_multinomial(big_n: u32, parts: &[u32]) -> Result<LaurentPoly, GrassError> {
    if parts.iter().sum::<u32>() != big_n {
        return Err(GrassError::InvalidRange);
    }
    let q2_factorial = |m: u32| -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for j in 1..=m {
            // (j)_{q^2} = 1 + q^2 + ... + q^{2(j-1)}.
            let mut f = LaurentPoly::zero();
            for e in 0..j {
                f = &f + &LaurentPoly::q_power(2 * e as i64);
            }
            acc = &acc * &f;
        }
        acc
    };
    let mut num = q2_factorial(big_n);
    for &p in parts {
        num = num
            .div_exact(&q2_factorial(p))
            .ok_or(GrassError::InexactDivision)?;
    }
    Ok(num)
}

/// The scalars by which E and F act on the Grothendieck classes: graded
/// ranks of the one-step flag bimodule over each base, with the grading
/// shifts 1-N+k and -k.
pub fn ef_scalars(k: u32, big_n: u32) -> Result<(LaurentPoly, LaurentPoly), GrassError> {
    if k >= big_n {
        return Err(GrassError::InvalidRange);
    }
    let flag = flag_graded_dimension(k, big_n)?;
    let over_k = flag
        .div_exact(&graded_dimension_gr(k, big_n)?)
        .ok_or(GrassError::InexactDivision)?;
    let over_k1 = flag
        .div_exact(&graded_dimension_gr(k + 1, big_n)?)
        .ok_or(GrassError::InexactDivision)?;
    let e_k = over_k.shifted(1 - big_n as i64 + k as i64);
    let f_k1 = over_k1.shifted(-(k as i64));
    Ok((e_k, f_k1))
}

/// E scalar at level k (zero at and above N by convention).
pub fn e_scalar(k: i64, big_n: u32) -> LaurentPoly {
    if k < 0 || k >= big_n as i64 {
        return LaurentPoly::zero();
    }
    ef_scalars(k as u32, big_n).unwrap().0
}

/// F scalar at level k (zero at and below 0 by convention).
pub fn f_scalar(k: i64, big_n: u32) -> LaurentPoly {
    if k <= 0 || k > big_n as i64 {
        return LaurentPoly::zero();
    }
    ef_scalars(k as u32 - 1, big_n).unwrap().1
}
