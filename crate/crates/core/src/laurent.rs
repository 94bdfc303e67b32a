//! Exact Laurent polynomials in a half-integer power of one variable.
//!
//! A [`LaurentPoly`] is an element of `Z[v^(1/2), v^(-1/2)]`. Exponents are stored as
//! integer counts of half-steps, so `v` has exponent code 2 and `v^(-1/2)` has code -1.
//! The same type is used for `Z[q, q^-1]` (only even codes occur there).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("cannot substitute zero into a Laurent polynomial")]
    ZeroSubstitution,
    #[error("polynomial has half-integer exponents; substitute a square root instead")]
    HalfIntegerExponent,
    #[error("cannot parse Laurent polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Integer Laurent polynomial with half-step exponents.
///
/// Terms are kept sorted by ascending exponent code and never hold a zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i32, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * v^(half_exp/2)`.
    pub fn monomial(c: impl Into<BigInt>, half_exp: i32) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(half_exp, c)] }
        }
    }

    /// The variable `v` (or `q`), exponent code 2.
    pub fn var() -> Self {
        Self::monomial(1, 2)
    }

    /// `v^(1/2)`.
    pub fn sqrt_var() -> Self {
        Self::monomial(1, 1)
    }

    /// `v^(k)` for an integer `k`.
    pub fn var_pow(k: i32) -> Self {
        Self::monomial(1, 2 * k)
    }

    /// Builds a polynomial from `(half_exp, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut v: Vec<(i32, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        v.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(i32, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out }
    }

    /// Ordinary polynomial `c0 + c1 v + c2 v^2 + ...`.
    pub fn from_coeffs<C: Into<BigInt> + Clone>(coeffs: &[C]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(k, c)| (2 * k as i32, c.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Terms as `(half_exp, coefficient)`, ascending by exponent.
    pub fn terms(&self) -> &[(i32, BigInt)] {
        &self.terms
    }

    pub fn coeff(&self, half_exp: i32) -> BigInt {
        self.terms
            .binary_search_by_key(&half_exp, |(e, _)| *e)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| BigInt::zero())
    }

    /// Largest exponent code, `None` for zero.
    pub fn max_half_exp(&self) -> Option<i32> {
        self.terms.last().map(|(e, _)| *e)
    }

    pub fn min_half_exp(&self) -> Option<i32> {
        self.terms.first().map(|(e, _)| *e)
    }

    /// Coefficient of the largest exponent.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.last().map(|(_, c)| c)
    }

    /// True if every exponent is a whole power of the variable.
    pub fn has_integral_exponents(&self) -> bool {
        self.terms.iter().all(|(e, _)| e % 2 == 0)
    }

    /// Multiplies by `v^(half_exp/2)`.
    pub fn shift(&self, half_exp: i32) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + half_exp, c.clone())).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    /// The bar involution `v^(1/2) -> v^(-1/2)`.
    pub fn bar(&self) -> Self {
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        terms.reverse();
        Self { terms }
    }

    /// Substitutes a value for the variable. Requires integral exponents.
    pub fn evaluate(&self, x: &BigRational) -> Result<BigRational, LaurentError> {
        if x.is_zero() {
            return Err(LaurentError::ZeroSubstitution);
        }
        if !self.has_integral_exponents() {
            return Err(LaurentError::HalfIntegerExponent);
        }
        Ok(self.sum_powers(x, 2))
    }

    /// Substitutes `root` for `v^(1/2)` (so `v = root^2`).
    pub fn evaluate_at_root(&self, root: &BigRational) -> Result<BigRational, LaurentError> {
        if root.is_zero() {
            return Err(LaurentError::ZeroSubstitution);
        }
        Ok(self.sum_powers(root, 1))
    }

    fn sum_powers(&self, base: &BigRational, step: i32) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let p = e / step;
            acc += BigRational::from_integer(c.clone()) * rational_pow(base, p);
        }
        acc
    }

    /// Sum of coefficients (value at `v^(1/2) = 1`).
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    /// Renders with the given variable name.
    pub fn display_with(&self, var: char) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let power = match *e {
                0 => String::new(),
                2 => var.to_string(),
                e if e % 2 == 0 => format!("{var}^{}", e / 2),
                e => format!("{var}^({e}/2)"),
            };
            if power.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&power);
            } else {
                out.push_str(&format!("{mag}*{power}"));
            }
        }
        out
    }

    /// Parses text written with either `v` or `q` as the variable.
    pub fn parse(input: &str) -> Result<Self, LaurentError> {
        parse_poly(input)
    }
}

fn rational_pow(base: &BigRational, p: i32) -> BigRational {
    let mut r = BigRational::one();
    let b = if p < 0 { base.recip() } else { base.clone() };
    for _ in 0..p.unsigned_abs() {
        r *= &b;
    }
    r
}

fn merge(a: &[(i32, BigInt)], b: &[(i32, BigInt)], negate_b: bool) -> Vec<(i32, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let fix = |c: &BigInt| if negate_b { -c } else { c.clone() };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0, fix(&b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(e, c)| (*e, fix(c))));
    out
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly { terms: merge(&self.terms, &rhs.terms, false) }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly { terms: merge(&self.terms, &rhs.terms, true) }
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut prods = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                prods.push((e1 + e2, c1 * c2));
            }
        }
        LaurentPoly::from_terms(prods)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for (_, c) in &mut self.terms {
            *c = -&*c;
        }
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        self.terms = merge(&self.terms, &rhs.terms, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        self.terms = merge(&self.terms, &rhs.terms, true);
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with('v'))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

fn parse_poly(input: &str) -> Result<LaurentPoly, LaurentError> {
    let err = |reason: &str| LaurentError::Parse { input: input.to_string(), reason: reason.to_string() };
    let s: String = input.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '−' { '-' } else { c }).collect();
    if s.is_empty() {
        return Err(err("empty input"));
    }
    // Split into signed terms; a sign directly after '^' or inside parentheses belongs to an exponent.
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut sign: Option<bool> = None;
    let mut depth = 0i32;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if (ch == '+' || ch == '-') && depth == 0 && prev != Some('^') {
            if !cur.is_empty() {
                terms.push((sign.take().unwrap_or(false), std::mem::take(&mut cur)));
            } else if sign.is_some() {
                return Err(err("repeated sign"));
            }
            sign = Some(ch == '-');
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    if depth != 0 {
        return Err(err("unbalanced parentheses"));
    }
    if cur.is_empty() {
        return Err(err("trailing sign"));
    }
    terms.push((sign.unwrap_or(false), cur));

    let mut acc = LaurentPoly::zero();
    for (neg, t) in terms {
        let (coef, exp) = parse_term(&t).ok_or_else(|| err(&format!("bad term {t:?}")))?;
        let coef = if neg { -coef } else { coef };
        acc += &LaurentPoly::monomial(coef, exp);
    }
    Ok(acc)
}

fn parse_term(t: &str) -> Option<(BigInt, i32)> {
    let var_pos = t.find(['v', 'q']);
    let Some(p) = var_pos else {
        return Some((t.parse::<BigInt>().ok()?, 0));
    };
    let coef_part = &t[..p];
    let coef = if coef_part.is_empty() {
        BigInt::one()
    } else {
        coef_part.strip_suffix('*')?.parse::<BigInt>().ok()?
    };
    let rest = &t[p + 1..];
    if rest.is_empty() {
        return Some((coef, 2));
    }
    let exp = rest.strip_prefix('^')?;
    let exp = exp.strip_prefix('(').and_then(|e| e.strip_suffix(')')).unwrap_or(exp);
    let half = if let Some((num, den)) = exp.split_once('/') {
        let num: i32 = num.parse().ok()?;
        match den {
            "2" => num,
            "1" => 2 * num,
            _ => return None,
        }
    } else {
        2 * exp.parse::<i32>().ok()?
    };
    Some((coef, half))
}
