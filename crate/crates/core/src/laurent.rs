//! Exact Laurent polynomials in one variable `q` with big-integer coefficients,
//! together with quantum integers, factorials and binomials.
//!
//! Canonical text form lists terms by decreasing exponent, e.g.
//! `q^2 + 1 + q^-2` or `q^3 + 2q + 2q^-1 + q^-3`. The zero polynomial is `0`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A Laurent polynomial `Σ c_e q^e` stored in canonical form (no zero coefficients).
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `coeff · q^exp`.
    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// Substitutes `q ↦ q^factor`.
    pub fn scale_exponents(&self, factor: i64) -> Self {
        if factor == 0 {
            return Self::monomial(0, self.eval_at_one());
        }
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e * factor, c.clone()))
                .collect(),
        }
    }

    /// Substitutes `q ↦ q^-1`.
    pub fn bar(&self) -> Self {
        self.scale_exponents(-1)
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }
}

/// True iff `p(q) = p(q^-1)`.
pub fn is_palindromic(p: &LaurentPoly) -> bool {
    p.coeffs.iter().all(|(e, c)| p.coeffs.get(&-e) == Some(c))
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| acc + p)
    }
}

impl<'a> Sum<&'a LaurentPoly> for LaurentPoly {
    fn sum<I: Iterator<Item = &'a LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |mut acc, p| {
            acc += p;
            acc
        })
    }
}

impl Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| acc * p)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(0, c)
    }
}

/// Writes terms by decreasing exponent; `exp_text` renders the power of `q`
/// for a nonzero exponent.
fn write_terms(
    f: &mut fmt::Formatter<'_>,
    coeffs: &BTreeMap<i64, BigInt>,
    exp_text: impl Fn(i64) -> String,
) -> fmt::Result {
    if coeffs.is_empty() {
        return f.write_str("0");
    }
    for (i, (e, c)) in coeffs.iter().rev().enumerate() {
        let mag = c.abs();
        if i == 0 {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else if c.is_negative() {
            f.write_str(" - ")?;
        } else {
            f.write_str(" + ")?;
        }
        if *e == 0 {
            write!(f, "{mag}")?;
        } else {
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            f.write_str(&exp_text(*e))?;
        }
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, |e| {
            if e == 1 {
                "q".to_string()
            } else {
                format!("q^{e}")
            }
        })
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Parses canonical text into `(exponent in half-units, coefficient)` terms.
fn parse_half_terms(s: &str) -> Result<Vec<(i64, BigInt)>> {
    let bad = |msg: &str| Error::Domain(format!("cannot parse polynomial {s:?}: {msg}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty input"));
    }
    // Split into signed terms; a '-' directly after '^' belongs to an exponent.
    let mut pieces: Vec<String> = Vec::new();
    let mut cur = String::new();
    let mut prev: Option<char> = None;
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && prev.is_some() && prev != Some('^') {
            pieces.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
        prev = Some(ch);
    }
    pieces.push(cur);

    let mut out = Vec::new();
    for piece in pieces {
        let (neg, body) = match piece.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, piece.strip_prefix('+').unwrap_or(&piece)),
        };
        if body.is_empty() {
            return Err(bad("dangling sign"));
        }
        let (coeff_txt, exp_half) = match body.find('q') {
            None => (body, 0i64),
            Some(idx) => {
                let coeff_txt = &body[..idx];
                let rest = &body[idx + 1..];
                let exp_half = if rest.is_empty() {
                    2
                } else {
                    let e = rest.strip_prefix('^').ok_or_else(|| bad("expected '^'"))?;
                    match e.strip_suffix("/2") {
                        Some(num) => num.parse::<i64>().map_err(|_| bad("bad exponent"))?,
                        None => 2 * e.parse::<i64>().map_err(|_| bad("bad exponent"))?,
                    }
                };
                (coeff_txt, exp_half)
            }
        };
        let mut coeff = if coeff_txt.is_empty() {
            BigInt::one()
        } else {
            coeff_txt
                .parse::<BigInt>()
                .map_err(|_| bad("bad coefficient"))?
        };
        if neg {
            coeff = -coeff;
        }
        out.push((exp_half, coeff));
    }
    Ok(out)
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        for (h, c) in parse_half_terms(s)? {
            if h % 2 != 0 {
                return Err(Error::Domain(format!(
                    "half-integer exponent in integral polynomial {s:?}"
                )));
            }
            p.add_term(h / 2, c);
        }
        Ok(p)
    }
}

/// A Laurent polynomial in `q^{1/2}`: the value type of open-web evaluations,
/// whose coloring degrees may be half-integers.
///
/// Internally the exponents count half-powers of `q`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct HalfLaurent(LaurentPoly);

impl HalfLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `q^{half_exp / 2}`.
    pub fn monomial_half(half_exp: i64, coeff: impl Into<BigInt>) -> Self {
        Self(LaurentPoly::monomial(half_exp, coeff))
    }

    /// Embeds an ordinary Laurent polynomial.
    pub fn from_integral(p: &LaurentPoly) -> Self {
        Self(p.scale_exponents(2))
    }

    /// Wraps a polynomial whose exponents already count half-powers.
    pub fn from_half_units(p: LaurentPoly) -> Self {
        Self(p)
    }

    pub fn half_units(&self) -> &LaurentPoly {
        &self.0
    }

    /// Returns the ordinary polynomial when every exponent is an integer.
    pub fn to_integral(&self) -> Option<LaurentPoly> {
        if self.0.terms().all(|(e, _)| e % 2 == 0) {
            Some(LaurentPoly::from_terms(
                self.0.terms().map(|(e, c)| (e / 2, c.clone())),
            ))
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.0.eval_at_one()
    }

    pub fn add_term_half(&mut self, half_exp: i64, coeff: BigInt) {
        self.0.add_term(half_exp, coeff);
    }
}

impl Add for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: &HalfLaurent) -> HalfLaurent {
        HalfLaurent(&self.0 + &rhs.0)
    }
}

impl Add<&HalfLaurent> for HalfLaurent {
    type Output = HalfLaurent;
    fn add(mut self, rhs: &HalfLaurent) -> HalfLaurent {
        self.0 += &rhs.0;
        self
    }
}

impl AddAssign<&HalfLaurent> for HalfLaurent {
    fn add_assign(&mut self, rhs: &HalfLaurent) {
        self.0 += &rhs.0;
    }
}

impl Mul<&HalfLaurent> for &LaurentPoly {
    type Output = HalfLaurent;
    fn mul(self, rhs: &HalfLaurent) -> HalfLaurent {
        HalfLaurent(&self.scale_exponents(2) * &rhs.0)
    }
}

impl Sum for HalfLaurent {
    fn sum<I: Iterator<Item = HalfLaurent>>(iter: I) -> Self {
        iter.fold(HalfLaurent::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.0.coeffs, |h| {
            if h % 2 != 0 {
                format!("q^{h}/2")
            } else if h == 2 {
                "q".to_string()
            } else {
                format!("q^{}", h / 2)
            }
        })
    }
}

impl fmt::Debug for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HalfLaurent({self})")
    }
}

impl FromStr for HalfLaurent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "0" {
            return Ok(Self::zero());
        }
        Ok(Self(LaurentPoly::from_terms(parse_half_terms(s)?)))
    }
}

/// Quantum integer `[k]_q = q^{k-1} + q^{k-3} + … + q^{1-k}`.
pub fn qint(k: i64) -> Result<LaurentPoly> {
    if k < 0 {
        return Err(Error::Domain(format!("[k]_q needs k >= 0, got {k}")));
    }
    Ok(LaurentPoly::from_terms((0..k).map(|i| (k - 1 - 2 * i, 1))))
}

/// Quantum factorial `[k]_q! = [1]_q [2]_q … [k]_q`.
pub fn qfact(k: i64) -> Result<LaurentPoly> {
    if k < 0 {
        return Err(Error::Domain(format!("[k]_q! needs k >= 0, got {k}")));
    }
    (1..=k).map(qint).product()
}

thread_local! {
    static QBINOM_CACHE: RefCell<HashMap<(i64, i64), LaurentPoly>> = RefCell::new(HashMap::new());
}

/// Quantum binomial with `total` elements choosing `part`.
///
/// Zero when `total < 0`, `part < 0` or `part > total`. Computed by the
/// recursion `[m+n, m] = q^m [m+n-1, m] + q^-n [m+n-1, m-1]` (with `n = total - part`),
/// memoized per thread.
pub fn qbinom(total: i64, part: i64) -> LaurentPoly {
    if total < 0 || part < 0 || part > total {
        return LaurentPoly::zero();
    }
    if part == 0 || part == total {
        return LaurentPoly::one();
    }
    if let Some(hit) = QBINOM_CACHE.with(|c| c.borrow().get(&(total, part)).cloned()) {
        return hit;
    }
    let m = part;
    let n = total - part;
    let value = &qbinom(total - 1, m).shift(m) + &qbinom(total - 1, m - 1).shift(-n);
    QBINOM_CACHE.with(|c| c.borrow_mut().insert((total, part), value.clone()));
    value
}
