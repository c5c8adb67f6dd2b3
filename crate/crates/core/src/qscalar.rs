//! Exact scalar arithmetic in the variable q.
//!
//! [`LaurentPoly`] is the ring Z[q, q^-1] (with rational coefficients),
//! [`RationalQ`] its field of fractions in a canonical reduced form, and
//! [`QSeries`] a truncated Laurent expansion at q = 0. Quantum integers are
//! defined through the fraction (q^n - q^-n)/(q - q^-1), so [-n] = -[n].

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Returns the rational p/q.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// A Laurent polynomial in q with exact rational coefficients.
///
/// No zero coefficients are stored; the empty map is the zero polynomial.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, BigRational::one())
    }

    /// The monomial c * q^exp.
    pub fn monomial(exp: i64, coeff: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        LaurentPoly { coeffs }
    }

    /// q^exp with coefficient one.
    pub fn q_power(exp: i64) -> Self {
        Self::monomial(exp, BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(0, BigRational::from(BigInt::from(c)))
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(terms: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor from (exponent, integer coefficient) pairs.
    pub fn from_int_terms(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(
            terms
                .iter()
                .map(|&(e, c)| (e, BigRational::from(BigInt::from(c)))),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Zero::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Smallest exponent with nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Largest exponent with nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: i64, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(Zero::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    /// Multiplication by q^k.
    pub fn shifted(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, k)| (e, k * c)).collect(),
        }
    }

    /// The bar involution q -> q^-1.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Substitute q = 1, i.e. sum all coefficients.
    pub fn eval_at_one(&self) -> BigRational {
        self.coeffs.values().fold(BigRational::zero(), |a, c| a + c)
    }

    /// Exact division; `None` when `self` is not a multiple of `div`.
    pub fn div_exact(&self, div: &LaurentPoly) -> Option<LaurentPoly> {
        if div.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let dlead = div.max_exp().unwrap();
        let dcoeff = div.coeff(dlead);
        while !rem.is_zero() {
            let rlead = rem.max_exp().unwrap();
            if rem.max_exp().unwrap() - rem.min_exp().unwrap() < dlead - div.min_exp().unwrap() {
                return None;
            }
            let e = rlead - dlead;
            let c = rem.coeff(rlead) / &dcoeff;
            let t = LaurentPoly::monomial(e, c);
            rem = &rem - &(&t * div);
            quot = &quot + &t;
        }
        Some(quot)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

fn fmt_coeff(c: &BigRational) -> String {
    use alloc::string::ToString;
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        let mut s = c.numer().to_string();
        s.push('/');
        s.push_str(&c.denom().to_string());
        s
    }
}

fn fmt_term(exp: i64, coeff: &BigRational, first: bool, out: &mut String) {
    use alloc::string::ToString;
    let neg = coeff.is_negative();
    let mag = if neg { -coeff.clone() } else { coeff.clone() };
    if first {
        if neg {
            out.push('-');
        }
    } else if neg {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    let show_coeff = exp == 0 || !mag.is_one();
    if show_coeff {
        out.push_str(&fmt_coeff(&mag));
    }
    if exp != 0 {
        if show_coeff {
            out.push('*');
        }
        out.push('q');
        if exp != 1 {
            out.push('^');
            out.push_str(&exp.to_string());
        }
    }
}

impl LaurentPoly {
    /// Rendering in descending exponent order, e.g. `q^2 + 1 + q^-2`.
    pub fn to_text(&self) -> String {
        self.render(true)
    }

    /// Rendering in ascending exponent order, e.g. `1 - q^2`.
    pub fn to_text_ascending(&self) -> String {
        self.render(false)
    }

    fn render(&self, descending: bool) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        let exps: Vec<i64> = if descending {
            self.coeffs.keys().rev().copied().collect()
        } else {
            self.coeffs.keys().copied().collect()
        };
        for (i, e) in exps.iter().enumerate() {
            fmt_term(*e, &self.coeffs[e], i == 0, &mut out);
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// The quantum integer [n] = q^{n-1} + q^{n-3} + ... + q^{1-n}, extended to
/// negative n through the defining fraction so that [-n] = -[n].
pub fn quantum_integer(n: i64) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::zero();
    }
    let (sign, m) = if n > 0 { (1, n) } else { (-1, -n) };
    let mut p = LaurentPoly::zero();
    let mut e = m - 1;
    while e >= 1 - m {
        p.add_term(e, BigRational::from(BigInt::from(sign)));
        e -= 2;
    }
    p
}

/// The quantum factorial [a]! = [a][a-1]...[1], with [0]! = 1.
pub fn quantum_factorial(a: u32) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for j in 1..=a {
        p = &p * &quantum_integer(j as i64);
    }
    p
}

/// Variable choice for [`gauss_binomial`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GaussVar {
    Q,
    QSquared,
}

/// Errors raised by scalar-level operations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum QScalarError {
    InvalidArgument,
    DivisionByZero,
    NoSeries,
}

impl fmt::Display for QScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QScalarError::InvalidArgument => write!(f, "invalid argument"),
            QScalarError::DivisionByZero => write!(f, "division by zero"),
            QScalarError::NoSeries => write!(f, "no series expansion at q = 0"),
        }
    }
}

/// The Gaussian binomial coefficient in the chosen variable, computed by the
/// product formula with exact polynomial division. The nonsymmetric form is
/// returned: all exponents are nonnegative (and even for `QSquared`).
pub fn gauss_binomial(big_n: u32, k: u32, var: GaussVar) -> Result<LaurentPoly, QScalarError> {
    if k > big_n {
        return Err(QScalarError::InvalidArgument);
    }
    let step: i64 = match var {
        GaussVar::Q => 1,
        GaussVar::QSquared => 2,
    };
    let one = LaurentPoly::one();
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    for i in 1..=(k as i64) {
        let nk = big_n as i64 - k as i64 + i;
        num = &num * &(&one - &LaurentPoly::q_power(step * nk));
        den = &den * &(&one - &LaurentPoly::q_power(step * i));
    }
    Ok(num
        .div_exact(&den)
        .expect("Gaussian binomial division is exact"))
}

/// A rational function in q in canonical reduced form.
///
/// The denominator is a polynomial (no negative exponents) with nonzero
/// constant term, coprime integer coefficients and positive leading
/// coefficient; any q-power and all common polynomial factors have been moved
/// into or cancelled against the numerator. Zero is represented as 0/1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalQ {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalQ {
    /// Canonical form of num/den. Fails on a zero denominator.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, QScalarError> {
        if den.is_zero() {
            return Err(QScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalQ {
                num: LaurentPoly::zero(),
                den: LaurentPoly::one(),
            });
        }
        // Clear q-powers: shift both so the denominator has constant term.
        let dshift = den.min_exp().unwrap();
        let nshift = num.min_exp().unwrap();
        let mut num_poly = num.shifted(-nshift);
        let mut den_poly = den.shifted(-dshift);
        // Reduce by the polynomial gcd.
        let g = poly_gcd(&num_poly, &den_poly);
        if !g.is_one() {
            num_poly = num_poly.div_exact(&g).unwrap();
            den_poly = den_poly.div_exact(&g).unwrap();
        }
        // Scale so the denominator has coprime integer coefficients and a
        // positive leading coefficient.
        let scale = primitive_scale(&den_poly);
        num_poly = num_poly.scaled(&scale);
        den_poly = den_poly.scaled(&scale);
        Ok(RationalQ {
            num: num_poly.shifted(nshift - dshift),
            den: den_poly,
        })
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RationalQ {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_laurent(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn q_power(e: i64) -> Self {
        Self::from_laurent(LaurentPoly::q_power(e))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &RationalQ) -> RationalQ {
        RationalQ::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .unwrap()
    }

    pub fn sub(&self, rhs: &RationalQ) -> RationalQ {
        RationalQ::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .unwrap()
    }

    pub fn mul(&self, rhs: &RationalQ) -> RationalQ {
        RationalQ::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }

    pub fn div(&self, rhs: &RationalQ) -> Result<RationalQ, QScalarError> {
        RationalQ::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn neg(&self) -> RationalQ {
        RationalQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn scaled(&self, c: &BigRational) -> RationalQ {
        RationalQ::new(self.num.scaled(c), self.den.clone()).unwrap()
    }

    /// Equality decided by cross-multiplication.
    pub fn rat_eq(&self, rhs: &RationalQ) -> bool {
        &self.num * &rhs.den == &rhs.num * &self.den
    }

    /// The bar involution q -> q^-1, extended to fractions.
    pub fn bar(&self) -> RationalQ {
        RationalQ::new(self.num.bar(), self.den.bar()).unwrap()
    }

    /// Truncated Laurent expansion at q = 0 up to (excluding) `order`.
    pub fn series_expand(&self, order: i64) -> Result<QSeries, QScalarError> {
        if self.den.coeff(0).is_zero() {
            // Unreachable for canonical values; kept as a guard.
            return Err(QScalarError::NoSeries);
        }
        if self.num.is_zero() {
            return Ok(QSeries {
                coeffs: BTreeMap::new(),
                truncation_order: order,
            });
        }
        let v = self.num.min_exp().unwrap();
        // Invert the denominator as a power series to order - v terms.
        let terms_needed = order - v;
        if terms_needed <= 0 {
            return Ok(QSeries {
                coeffs: BTreeMap::new(),
                truncation_order: order,
            });
        }
        let d0 = self.den.coeff(0);
        let mut inv: Vec<BigRational> = Vec::with_capacity(terms_needed as usize);
        inv.push(BigRational::one() / &d0);
        for m in 1..terms_needed {
            // sum_{j=1..m} den[j] * inv[m-j] determines inv[m].
            let mut acc = BigRational::zero();
            for j in 1..=m {
                let dj = self.den.coeff(j);
                if !dj.is_zero() {
                    acc += dj * &inv[(m - j) as usize];
                }
            }
            inv.push(-acc / &d0);
        }
        let mut coeffs = BTreeMap::new();
        for (e, c) in self.num.terms() {
            for (m, ic) in inv.iter().enumerate() {
                let exp = e + m as i64;
                if exp >= order {
                    break;
                }
                let entry = coeffs.entry(exp).or_insert_with(BigRational::zero);
                *entry += c * ic;
            }
        }
        coeffs.retain(|_, c: &mut BigRational| !c.is_zero());
        Ok(QSeries {
            coeffs,
            truncation_order: order,
        })
    }

    pub fn to_text(&self) -> String {
        if self.den.is_one() {
            return self.num.to_text();
        }
        // Print with a positive constant term in the denominator, matching
        // the usual 1/(1 - q^2) notation.
        let flip = self.den.coeff(0).is_negative();
        let (num, den) = if flip {
            (-&self.num, -&self.den)
        } else {
            (self.num.clone(), self.den.clone())
        };
        let num_text = if num.num_terms() > 1 {
            let mut s = String::from("(");
            s.push_str(&num.to_text());
            s.push(')');
            s
        } else {
            num.to_text()
        };
        let mut s = num_text;
        s.push_str("/(");
        s.push_str(&den.to_text_ascending());
        s.push(')');
        s
    }
}

impl fmt::Display for RationalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Monic gcd of two Laurent polynomials, taken after shifting both to honest
/// polynomials; q-power factors are deliberately ignored.
fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut x = a.shifted(-a.min_exp().unwrap_or(0));
    let mut y = b.shifted(-b.min_exp().unwrap_or(0));
    while !y.is_zero() {
        let r = poly_rem(&x, &y);
        x = y;
        y = r.shifted(-r.min_exp().unwrap_or(0));
    }
    // Normalize monic.
    if x.is_zero() {
        return LaurentPoly::one();
    }
    let lead = x.coeff(x.max_exp().unwrap());
    x.scaled(&(BigRational::one() / lead))
}

fn poly_rem(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let dlead = b.max_exp().unwrap();
    let dcoeff = b.coeff(dlead);
    let mut rem = a.clone();
    while !rem.is_zero() && rem.max_exp().unwrap() >= dlead {
        let e = rem.max_exp().unwrap() - dlead;
        let c = rem.coeff(rem.max_exp().unwrap()) / &dcoeff;
        rem = &rem - &(&LaurentPoly::monomial(e, c) * b);
    }
    rem
}

/// Rational multiplier turning `p` into a primitive integer polynomial with
/// positive leading coefficient.
fn primitive_scale(p: &LaurentPoly) -> BigRational {
    let mut denom_lcm = BigInt::one();
    for (_, c) in p.terms() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let mut numer_gcd = BigInt::zero();
    for (_, c) in p.terms() {
        numer_gcd = numer_gcd.gcd(&(c.numer() * &denom_lcm / c.denom()));
    }
    if numer_gcd.is_zero() {
        return BigRational::one();
    }
    let mut scale = BigRational::new(denom_lcm, numer_gcd);
    if (p.coeff(p.max_exp().unwrap()) * &scale).is_negative() {
        scale = -scale;
    }
    scale
}

/// A Laurent series truncated at `truncation_order`: stored exponents are all
/// strictly below it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries {
    coeffs: BTreeMap<i64, BigRational>,
    truncation_order: i64,
}

impl QSeries {
    pub fn truncation_order(&self) -> i64 {
        self.truncation_order
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Zero::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Truncated product. The truncation order accounts for the valuations of
    /// both factors so the result is exact where it is defined.
    pub fn mul(&self, rhs: &QSeries) -> QSeries {
        let va = self.min_exp().unwrap_or(0);
        let vb = rhs.min_exp().unwrap_or(0);
        let order = core::cmp::min(self.truncation_order + vb, rhs.truncation_order + va);
        let mut coeffs = BTreeMap::new();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                let e = e1 + e2;
                if e < order {
                    let entry = coeffs.entry(e).or_insert_with(BigRational::zero);
                    *entry += c1 * c2;
                }
            }
        }
        coeffs.retain(|_, c: &mut BigRational| !c.is_zero());
        QSeries {
            coeffs,
            truncation_order: order,
        }
    }

    /// Drop terms at or above `order`.
    pub fn truncated(&self, order: i64) -> QSeries {
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&e, _)| e < order)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
            truncation_order: core::cmp::min(order, self.truncation_order),
        }
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.coeffs.iter().map(|(&e, c)| (e, c.clone())))
    }
}
