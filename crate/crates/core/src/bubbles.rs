//! The dotted-bubble calculus of the weight-n endomorphism ring.
//!
//! Bubbles are evaluated into symmetric functions: the dominant orientation
//! of degree 2r is e_r and the opposite orientation is (-1)^r h_r, which
//! turns the infinite Grassmannian equation into the classical e-h relation.
//! Fake bubbles (negative dot labels of nonnegative degree) are resolved by
//! the inductive expansion; the curl reduction and the alpha coefficients
//! for general invertible parameters chi are the scalar shadows of the
//! remaining relations.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::symfunc::{h_in_e, Partition, SymFunc};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Orientation {
    Clockwise,
    CounterClockwise,
}

impl Orientation {
    pub fn short(&self) -> &'static str {
        match self {
            Orientation::Clockwise => "cw",
            Orientation::CounterClockwise => "ccw",
        }
    }
}

/// A dotted bubble in the region of weight n, written with the dot-count
/// offset alpha so the degree 2*alpha is read off directly: the printed dot
/// label is n - 1 + alpha clockwise and -n - 1 + alpha counter-clockwise.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BubbleLabel {
    pub orientation: Orientation,
    pub weight: i64,
    pub alpha: i64,
}

impl BubbleLabel {
    pub fn cw(weight: i64, alpha: i64) -> Self {
        BubbleLabel {
            orientation: Orientation::Clockwise,
            weight,
            alpha,
        }
    }

    pub fn ccw(weight: i64, alpha: i64) -> Self {
        BubbleLabel {
            orientation: Orientation::CounterClockwise,
            weight,
            alpha,
        }
    }

    pub fn degree(&self) -> i64 {
        2 * self.alpha
    }

    /// The printed dot label; negative for fake bubbles.
    pub fn dots(&self) -> i64 {
        match self.orientation {
            Orientation::Clockwise => self.weight - 1 + self.alpha,
            Orientation::CounterClockwise => -self.weight - 1 + self.alpha,
        }
    }

    /// Fake: negative dot label with nonnegative degree.
    pub fn is_fake(&self) -> bool {
        self.dots() < 0 && self.alpha >= 0
    }

    /// Negative-degree bubbles are zero.
    pub fn is_negative(&self) -> bool {
        self.alpha < 0
    }

    /// Whether the orientation is dominant for the weight (the e-side of
    /// phi^n). Clockwise is dominant for n > 0 and taken as dominant at
    /// n = 0.
    pub fn is_dominant(&self) -> bool {
        match self.orientation {
            Orientation::Clockwise => self.weight >= 0,
            Orientation::CounterClockwise => self.weight < 0,
        }
    }

    pub fn to_text(&self) -> String {
        use alloc::string::ToString;
        let mut s = String::from(self.orientation.short());
        s.push('(');
        s.push_str(&self.dots().to_string());
        s.push_str(") at n=");
        s.push_str(&self.weight.to_string());
        s
    }
}

impl fmt::Display for BubbleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BubbleError {
    /// Negative-degree bubbles are zero, not symmetric functions.
    ZeroBubble,
    /// The (orientation, n, j) combination is not in the fake range.
    OutOfFakeRange,
}

impl fmt::Display for BubbleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BubbleError::ZeroBubble => write!(f, "bubble of negative degree is zero"),
            BubbleError::OutOfFakeRange => write!(f, "label is outside the fake-bubble range"),
        }
    }
}

/// Evaluation of a dotted bubble (real or fake) as a symmetric function, at
/// the preferred parameters c = 1, beta = -1.
pub fn bubble_to_symfunc(b: &BubbleLabel) -> Result<SymFunc, BubbleError> {
    if b.is_negative() {
        return Err(BubbleError::ZeroBubble);
    }
    let r = b.alpha as u32;
    if r == 0 {
        return Ok(SymFunc::one());
    }
    if b.is_dominant() {
        Ok(SymFunc::e(r))
    } else {
        let sign = if r % 2 == 0 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        Ok(h_in_e(r).scaled(&sign))
    }
}

/// The inductive fake-bubble expansion in the e-basis:
/// the degree-2j opposite-orientation bubble is
/// -sum_{l1+l2=j, l1>=1} (real bubble l1)(fake bubble l2), resolved
/// recursively; equals (-1)^j h_j.
pub fn fake_bubble_expansion(n: i64, j: i64) -> Result<SymFunc, BubbleError> {
    let in_range = match n.signum() {
        1 => (0..=n).contains(&j),
        -1 => (0..=-n).contains(&j),
        _ => j == 0,
    };
    if !in_range {
        return Err(BubbleError::OutOfFakeRange);
    }
    let mut table: Vec<SymFunc> = Vec::with_capacity(j as usize + 1);
    table.push(SymFunc::one());
    for d in 1..=j as u32 {
        let mut acc = SymFunc::zero();
        for l1 in 1..=d {
            acc = &acc + &(&SymFunc::e(l1) * &table[(d - l1) as usize]);
        }
        table.push(acc.scaled(&-BigRational::one()));
    }
    Ok(table.pop().unwrap())
}

/// One homogeneous slice of the infinite Grassmannian product:
/// sum_{l1+l2=alpha} (cw bubble l1)(ccw bubble l2) after evaluation.
pub fn inf_grass_slice(n: i64, alpha: i64) -> SymFunc {
    let mut acc = SymFunc::zero();
    for l1 in 0..=alpha {
        let l2 = alpha - l1;
        let cw = bubble_to_symfunc(&BubbleLabel::cw(n, l1)).expect("nonnegative degree");
        let ccw = bubble_to_symfunc(&BubbleLabel::ccw(n, l2)).expect("nonnegative degree");
        acc = &acc + &(&cw * &ccw);
    }
    acc
}

/// True when every homogeneous slice up to alpha_max satisfies the infinite
/// Grassmannian equation (product of the two bubble series equals one).
pub fn infinite_grassmannian_check(n: i64, alpha_max: i64) -> bool {
    for alpha in 0..=alpha_max {
        let slice = inf_grass_slice(n, alpha);
        let expect = if alpha == 0 {
            SymFunc::one()
        } else {
            SymFunc::zero()
        };
        if slice != expect {
            return false;
        }
    }
    true
}

/// One summand of a curl reduction: sign * xi^dots * bubble.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CurlTerm {
    pub dots: i64,
    pub bubble: BubbleLabel,
    pub sign: i8,
}

/// The reduction of the left-twist curl with j dots in the region n:
/// -sum_{f1+f2=j-n} (f1 dots on the strand)(cw bubble of degree 2 f2);
/// empty when j - n < 0.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CurlExpansion {
    pub terms: Vec<CurlTerm>,
}

impl CurlExpansion {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common total degree of the terms (dots plus bubble), when any.
    pub fn total_degree(&self) -> Option<i64> {
        let mut deg = None;
        for t in &self.terms {
            let d = 2 * t.dots + t.bubble.degree();
            match deg {
                None => deg = Some(d),
                Some(existing) if existing == d => {}
                _ => return None,
            }
        }
        deg
    }
}

pub fn curl_expand(n: i64, j: i64) -> CurlExpansion {
    assert!(j >= 0, "dot count must be nonnegative");
    let mut terms = Vec::new();
    if j - n >= 0 {
        for f1 in 0..=(j - n) {
            let f2 = j - n - f1;
            terms.push(CurlTerm {
                dots: f1,
                bubble: BubbleLabel::cw(n, f2),
                sign: -1,
            });
        }
    }
    CurlExpansion { terms }
}

/// The invertible parameters indexing the family of calculi: beta_n for all
/// n, c_n^+ for n >= 0, c_n^- for n <= 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChiParams {
    pub beta: BTreeMap<i64, BigRational>,
    pub c_plus: BTreeMap<i64, BigRational>,
    pub c_minus: BTreeMap<i64, BigRational>,
}

impl ChiParams {
    /// The preferred parameters c = 1, beta = -1 on [lo, hi].
    pub fn preferred(lo: i64, hi: i64) -> Self {
        let mut chi = ChiParams {
            beta: BTreeMap::new(),
            c_plus: BTreeMap::new(),
            c_minus: BTreeMap::new(),
        };
        for n in lo..=hi {
            chi.beta.insert(n, -BigRational::one());
            if n >= 0 {
                chi.c_plus.insert(n, BigRational::one());
            }
            if n <= 0 {
                chi.c_minus.insert(n, BigRational::one());
            }
        }
        chi
    }

    /// The degree-zero bubble value at weight n (c_n^+ for positive, c_n^-
    /// for negative weights).
    pub fn c_at(&self, n: i64) -> Option<&BigRational> {
        if n > 0 {
            self.c_plus.get(&n)
        } else if n < 0 {
            self.c_minus.get(&n)
        } else {
            self.c_plus.get(&0)
        }
    }

    /// All stored values are nonzero (the parameters must be invertible).
    pub fn all_invertible(&self) -> bool {
        self.beta
            .values()
            .chain(self.c_plus.values())
            .chain(self.c_minus.values())
            .all(|v| !v.is_zero())
    }
}

/// One violated consistency constraint.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ChiViolation {
    /// -c_0^+ c_0^- beta_0 = 1 fails.
    DegreeZeroProduct,
    /// c_{-1}^- = 1/c_1^+ fails.
    MinusOneInverse,
    /// c_{n-2}^- = -beta_n c_n^- fails at this n <= 0.
    MinusRecursion(i64),
    /// c_{n+2}^+ = -beta_n c_n^+ fails at this n >= 0.
    PlusRecursion(i64),
    /// A required parameter is missing or zero.
    NotInvertible,
}

impl fmt::Display for ChiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChiViolation::DegreeZeroProduct => write!(f, "-c_0^+ c_0^- beta_0 = 1 violated"),
            ChiViolation::MinusOneInverse => write!(f, "c_-1^- = 1/c_1^+ violated"),
            ChiViolation::MinusRecursion(n) => {
                write!(f, "c_{{{}}}^- = -beta_{{{n}}} c_{{{n}}}^- violated", n - 2)
            }
            ChiViolation::PlusRecursion(n) => {
                write!(f, "c_{{{}}}^+ = -beta_{{{n}}} c_{{{n}}}^+ violated", n + 2)
            }
            ChiViolation::NotInvertible => write!(f, "a parameter is missing or zero"),
        }
    }
}

/// Checks the four consistency constraints on the weight range [lo, hi];
/// empty result means the parameters are consistent there.
pub fn chi_validate(chi: &ChiParams, lo: i64, hi: i64) -> Vec<ChiViolation> {
    let mut out = Vec::new();
    if !chi.all_invertible() {
        out.push(ChiViolation::NotInvertible);
    }
    if lo <= 0 && 0 <= hi {
        match (chi.c_plus.get(&0), chi.c_minus.get(&0), chi.beta.get(&0)) {
            (Some(cp), Some(cm), Some(b)) => {
                if -(cp * cm * b) != BigRational::one() {
                    out.push(ChiViolation::DegreeZeroProduct);
                }
            }
            _ => out.push(ChiViolation::NotInvertible),
        }
    }
    if lo <= -1 && 1 <= hi {
        match (chi.c_minus.get(&-1), chi.c_plus.get(&1)) {
            (Some(cm), Some(cp)) if !cp.is_zero() => {
                if cm != &(BigRational::one() / cp) {
                    out.push(ChiViolation::MinusOneInverse);
                }
            }
            _ => out.push(ChiViolation::NotInvertible),
        }
    }
    for n in lo..=hi.min(0) {
        if n - 2 < lo {
            continue;
        }
        match (
            chi.c_minus.get(&(n - 2)),
            chi.beta.get(&n),
            chi.c_minus.get(&n),
        ) {
            (Some(prev), Some(b), Some(cur)) => {
                if prev != &-(b * cur) {
                    out.push(ChiViolation::MinusRecursion(n));
                }
            }
            _ => out.push(ChiViolation::NotInvertible),
        }
    }
    for n in lo.max(0)..=hi {
        if n + 2 > hi {
            continue;
        }
        match (
            chi.c_plus.get(&(n + 2)),
            chi.beta.get(&n),
            chi.c_plus.get(&n),
        ) {
            (Some(next), Some(b), Some(cur)) => {
                if next != &-(b * cur) {
                    out.push(ChiViolation::PlusRecursion(n));
                }
            }
            _ => out.push(ChiViolation::NotInvertible),
        }
    }
    out
}

/// The coefficient alpha_lambda^l(n) for general parameters: zero unless
/// |lambda| <= l <= |n| - 1, and otherwise (1/c_n)^{m+1} times the signed
/// h-in-e coefficient (m the number of parts).
pub fn alpha_coeff(lambda: &Partition, l: i64, n: i64, chi: &ChiParams) -> BigRational {
    let size = lambda.size() as i64;
    if !(size <= l && l <= n.abs() - 1) {
        return BigRational::zero();
    }
    let c = chi
        .c_at(n)
        .expect("chi parameter required for this weight")
        .clone();
    assert!(!c.is_zero(), "chi parameters must be invertible");
    let h = h_in_e(lambda.size());
    let coeff = h.coeff(lambda);
    let sign = if lambda.size() % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    let barred = sign * coeff;
    let mut scale = BigRational::one();
    for _ in 0..=lambda.num_parts() {
        scale /= &c;
    }
    scale * barred
}
