//! Argument parsers: E/F words, nilHecke expressions, Chern polynomials,
//! partitions, and the chi parameter file.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use catsl2::bubbles::ChiParams;
use catsl2::multipoly::MultiPoly;
use catsl2::nilhecke::NilHeckeElt;
use catsl2::qscalar::{quantum_factorial, LaurentPoly, RationalQ};
use catsl2::symfunc::Partition;
use catsl2::udot::UdotElt;

/// Comma-separated descending integers, e.g. `2,1`; empty or `0` is the
/// empty partition.
pub fn parse_partition(s: &str) -> Result<Partition, String> {
    let s = s.trim();
    if s.is_empty() || s == "0" || s == "()" {
        return Ok(Partition::empty());
    }
    let mut parts = Vec::new();
    for piece in s.split(',') {
        let v: u32 = piece
            .trim()
            .parse()
            .map_err(|_| format!("bad partition part {piece:?}"))?;
        if v == 0 {
            return Err("partition parts must be positive".into());
        }
        parts.push(v);
    }
    for w in parts.windows(2) {
        if w[0] < w[1] {
            return Err("partition parts must be weakly decreasing".into());
        }
    }
    Ok(Partition::new(parts))
}

/// One letter of an E/F word: plain power (E^a) or divided power (E(a)).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordLetter {
    pub is_e: bool,
    pub power: u32,
    pub divided: bool,
}

/// A word over {E, F} with optional `^a` (plain powers) and `(a)` (divided
/// powers), e.g. `EF`, `E^2F`, `E(2)F(1)`.
pub fn parse_word(s: &str) -> Result<Vec<WordLetter>, String> {
    let chars: Vec<char> = s.trim().chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        let is_e = match c {
            'E' | 'e' => true,
            'F' | 'f' => false,
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            other => return Err(format!("unexpected character {other:?} in word")),
        };
        i += 1;
        let mut power = 1u32;
        let mut divided = false;
        if i < chars.len() && (chars[i] == '^' || chars[i] == '(') {
            let open = chars[i];
            divided = open == '(';
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err("expected an exponent".into());
            }
            power = chars[start..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| "bad exponent")?;
            if divided {
                if i >= chars.len() || chars[i] != ')' {
                    return Err("expected closing parenthesis".into());
                }
                i += 1;
            }
        }
        out.push(WordLetter { is_e, power, divided });
    }
    Ok(out)
}

/// Builds the element (word) 1_n in normal form, applying letters right to
/// left; divided powers divide by the quantum factorial.
pub fn word_to_udot(word: &[WordLetter], n: i64) -> UdotElt {
    let mut acc = UdotElt::unit(n);
    for letter in word.iter().rev() {
        // Multiply by E or F `power` times at whatever weight the element
        // currently ends at; the weight bookkeeping lives in the monomials.
        for _ in 0..letter.power {
            let mut next = UdotElt::zero();
            for (m, c) in acc.terms() {
                let w = m.target();
                let gen = if letter.is_e {
                    UdotElt::e(w)
                } else {
                    UdotElt::f(w)
                };
                next = next.add(&gen.mul(&UdotElt::monomial(*m, c.clone())));
            }
            acc = next;
        }
        if letter.divided {
            let fact = RationalQ::new(LaurentPoly::one(), quantum_factorial(letter.power))
                .expect("quantum factorial is nonzero");
            acc = acc.scaled(&fact);
        }
    }
    acc
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Tok {
    Plus,
    Minus,
    Caret,
    Int(i64),
    Var(char, usize),
}

fn tokenize(s: &str, allowed: &[char]) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == '*' {
            i += 1;
        } else if c == '+' {
            out.push(Tok::Plus);
            i += 1;
        } else if c == '-' {
            out.push(Tok::Minus);
            i += 1;
        } else if c == '^' {
            out.push(Tok::Caret);
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let v: i64 = chars[start..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| "bad integer")?;
            out.push(Tok::Int(v));
        } else if allowed.contains(&c) {
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(format!("variable {c} needs an index"));
            }
            let idx: usize = chars[start..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| "bad variable index")?;
            out.push(Tok::Var(c, idx));
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

/// Expressions over `x1..xa` and `d1..d(a-1)` with `+`, `-`, integer
/// coefficients and `^`; juxtaposition is multiplication in operator order.
pub fn parse_nh_expr(s: &str, a: usize) -> Result<NilHeckeElt, String> {
    let toks = tokenize(s, &['x', 'd'])?;
    if toks.is_empty() {
        return Err("empty expression".into());
    }
    let mut acc = NilHeckeElt::zero(a);
    let mut i = 0;
    let mut sign = 1i64;
    let mut first = true;
    while i < toks.len() {
        if !first {
            match toks[i] {
                Tok::Plus => {
                    sign = 1;
                    i += 1;
                }
                Tok::Minus => {
                    sign = -1;
                    i += 1;
                }
                _ => return Err("expected + or - between terms".into()),
            }
        } else if toks[i] == Tok::Minus {
            sign = -1;
            i += 1;
        } else if toks[i] == Tok::Plus {
            i += 1;
        }
        first = false;
        // One term: optional integer coefficient, then factors.
        let mut coeff = sign;
        let mut term = NilHeckeElt::one(a);
        let mut has_factor = false;
        if let Some(Tok::Int(v)) = toks.get(i) {
            coeff *= v;
            i += 1;
            has_factor = true;
        }
        while let Some(Tok::Var(c, idx)) = toks.get(i) {
            i += 1;
            let mut power = 1i64;
            if toks.get(i) == Some(&Tok::Caret) {
                i += 1;
                match toks.get(i) {
                    Some(Tok::Int(v)) if *v >= 0 => {
                        power = *v;
                        i += 1;
                    }
                    _ => return Err("expected a nonnegative exponent after ^".into()),
                }
            }
            let gen = match c {
                'x' => {
                    if *idx < 1 || *idx > a {
                        return Err(format!("x{idx} out of range for {a} strands"));
                    }
                    NilHeckeElt::xi(a, *idx)
                }
                'd' => {
                    if *idx < 1 || *idx >= a {
                        return Err(format!("d{idx} out of range for {a} strands"));
                    }
                    NilHeckeElt::del(a, *idx)
                }
                _ => unreachable!(),
            };
            for _ in 0..power {
                term = term.mul(&gen);
            }
            has_factor = true;
        }
        if !has_factor {
            return Err("empty term".into());
        }
        acc = acc.add(&term.scaled(&BigRational::from_integer(BigInt::from(coeff))));
    }
    Ok(acc)
}

/// Polynomials in the Chern generators `c1..ck`.
pub fn parse_c_poly(s: &str, k: usize) -> Result<MultiPoly, String> {
    let toks = tokenize(s, &['c'])?;
    if toks.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut acc = MultiPoly::zero(k);
    let mut i = 0;
    let mut sign = 1i64;
    let mut first = true;
    while i < toks.len() {
        if !first {
            match toks[i] {
                Tok::Plus => {
                    sign = 1;
                    i += 1;
                }
                Tok::Minus => {
                    sign = -1;
                    i += 1;
                }
                _ => return Err("expected + or - between terms".into()),
            }
        } else if toks[i] == Tok::Minus {
            sign = -1;
            i += 1;
        } else if toks[i] == Tok::Plus {
            i += 1;
        }
        first = false;
        let mut coeff = sign;
        let mut exp = vec![0u32; k];
        let mut has_factor = false;
        if let Some(Tok::Int(v)) = toks.get(i) {
            coeff *= v;
            i += 1;
            has_factor = true;
        }
        while let Some(Tok::Var(_, idx)) = toks.get(i) {
            i += 1;
            if *idx < 1 || *idx > k {
                return Err(format!("c{idx} out of range for k = {k}"));
            }
            let mut power = 1u32;
            if toks.get(i) == Some(&Tok::Caret) {
                i += 1;
                match toks.get(i) {
                    Some(Tok::Int(v)) if *v >= 0 => {
                        power = *v as u32;
                        i += 1;
                    }
                    _ => return Err("expected a nonnegative exponent after ^".into()),
                }
            }
            exp[*idx - 1] += power;
            has_factor = true;
        }
        if !has_factor {
            return Err("empty term".into());
        }
        acc.add_term(exp, BigRational::from_integer(BigInt::from(coeff)));
    }
    Ok(acc)
}

fn parse_rational_value(v: &serde_json::Value) -> Result<BigRational, String> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from_integer(BigInt::from(i)))
            } else {
                Err(format!("non-integer numeric value {n}; use a \"p/q\" string"))
            }
        }
        serde_json::Value::String(s) => {
            let s = s.trim();
            if let Some((p, q)) = s.split_once('/') {
                let p: BigInt = p.trim().parse().map_err(|_| "bad numerator")?;
                let q: BigInt = q.trim().parse().map_err(|_| "bad denominator")?;
                if q.is_zero() {
                    return Err("zero denominator".into());
                }
                Ok(BigRational::new(p, q))
            } else {
                let p: BigInt = s.parse().map_err(|_| format!("bad rational {s:?}"))?;
                Ok(BigRational::from_integer(p))
            }
        }
        other => Err(format!("expected a number or \"p/q\" string, got {other}")),
    }
}

/// The chi parameter file: a JSON object with maps `beta`, `c_plus`,
/// `c_minus` from weight strings to rationals (numbers or "p/q" strings).
pub fn parse_chi_file(content: &str) -> Result<ChiParams, String> {
    let value: serde_json::Value =
        serde_json::from_str(content).map_err(|e| format!("bad JSON: {e}"))?;
    let obj = value.as_object().ok_or("expected a JSON object")?;
    let mut chi = ChiParams {
        beta: BTreeMap::new(),
        c_plus: BTreeMap::new(),
        c_minus: BTreeMap::new(),
    };
    for (key, target) in [
        ("beta", &mut chi.beta as &mut BTreeMap<i64, BigRational>),
        ("c_plus", &mut chi.c_plus),
        ("c_minus", &mut chi.c_minus),
    ] {
        if let Some(map) = obj.get(key) {
            let map = map
                .as_object()
                .ok_or_else(|| format!("{key} must be an object"))?;
            for (weight, v) in map {
                let n: i64 = weight
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad weight key {weight:?}"))?;
                target.insert(n, parse_rational_value(v)?);
            }
        }
    }
    Ok(chi)
}
