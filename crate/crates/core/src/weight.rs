//! Distance and edge-weight arithmetic.
//!
//! Every metric picks a [`Weight`] type for its distances. HST-family metrics
//! use `u64` (all distances are powers of two, all sums are integers), tables
//! parsed from decimal strings use the exact rational [`Exact`], and Euclidean
//! point sets use `f64`. Algorithms are written once against the trait; exact
//! types compare with zero tolerance.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Mul};

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational distance, used for tables read from decimal strings.
pub type Exact = Ratio<i128>;

/// Relative slack used by metric-axiom checks on floating-point metrics.
pub const FLOAT_AXIOM_TOLERANCE: f64 = 1e-12;

pub trait Weight:
    Copy + PartialOrd + Add<Output = Self> + Mul<Output = Self> + Send + Sync + Debug + 'static
{
    /// Whether comparisons on this type are exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn from_u64(k: u64) -> Self;
    fn to_f64(self) -> f64;

    /// Total order. Floating weights are finite by construction.
    fn total_cmp(&self, other: &Self) -> Ordering;

    /// `self * k`.
    fn scale(self, k: u64) -> Self {
        self * Self::from_u64(k)
    }

    /// `self <= other`, allowing relative floating slack on inexact types.
    fn approx_le(self, other: Self) -> bool {
        self <= other
    }

    /// Decimal string; exact for exact types.
    fn to_decimal(&self) -> String;

    fn parse_decimal(s: &str) -> Result<Self>;

    /// `num / den` rendered as a decimal string (or `p/q` if it does not terminate).
    fn ratio_string(num: Self, den: Self) -> String;

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }
}

impl Weight for u64 {
    const EXACT: bool = true;

    fn zero() -> Self {
        0
    }
    fn from_u64(k: u64) -> Self {
        k
    }
    fn to_f64(self) -> f64 {
        self as f64
    }
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
    fn to_decimal(&self) -> String {
        self.to_string()
    }
    fn parse_decimal(s: &str) -> Result<Self> {
        s.trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not a nonnegative integer: {s:?}")))
    }
    fn ratio_string(num: Self, den: Self) -> String {
        format_ratio(Ratio::new(num as i128, den as i128))
    }
}

impl Weight for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn from_u64(k: u64) -> Self {
        k as f64
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn total_cmp(&self, other: &Self) -> Ordering {
        f64::total_cmp(self, other)
    }
    fn approx_le(self, other: Self) -> bool {
        self <= other * (1.0 + FLOAT_AXIOM_TOLERANCE)
    }
    fn to_decimal(&self) -> String {
        format!("{self}")
    }
    fn parse_decimal(s: &str) -> Result<Self> {
        s.trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not a number: {s:?}")))
    }
    fn ratio_string(num: Self, den: Self) -> String {
        format!("{}", num / den)
    }
}

impl Weight for Exact {
    const EXACT: bool = true;

    fn zero() -> Self {
        <Ratio<i128> as Zero>::zero()
    }
    fn from_u64(k: u64) -> Self {
        Ratio::from_integer(k as i128)
    }
    fn to_f64(self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
    fn to_decimal(&self) -> String {
        format_ratio(*self)
    }
    fn parse_decimal(s: &str) -> Result<Self> {
        parse_exact(s)
    }
    fn ratio_string(num: Self, den: Self) -> String {
        format_ratio(num / den)
    }
}

/// Parses `"p/q"`, integers, and decimals such as `"0.25"` or `"1.5e-3"` exactly.
pub fn parse_exact(s: &str) -> Result<Exact> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact decimal or fraction: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: i128 = p.trim().parse().map_err(|_| bad())?;
        let q: i128 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(p, q));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mut numer: i128 = 0;
    for c in int_part.chars().chain(frac_part.chars()) {
        numer = numer
            .checked_mul(10)
            .and_then(|x| x.checked_add(c.to_digit(10).unwrap() as i128))
            .ok_or_else(bad)?;
    }
    let shift = exponent - frac_part.len() as i32;
    let pow10 = |k: u32| 10i128.checked_pow(k).ok_or_else(bad);
    let mut value = if shift >= 0 {
        Ratio::from_integer(numer.checked_mul(pow10(shift as u32)?).ok_or_else(bad)?)
    } else {
        Ratio::new(numer, pow10((-shift) as u32)?)
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Terminating decimal when the reduced denominator is `2^a 5^b`, else `p/q`.
pub fn format_ratio(r: Exact) -> String {
    let (numer, denom) = (*r.numer(), *r.denom());
    if denom == 1 {
        return numer.to_string();
    }
    let mut rest = denom;
    let (mut twos, mut fives) = (0u32, 0u32);
    while rest % 2 == 0 {
        rest /= 2;
        twos += 1;
    }
    while rest % 5 == 0 {
        rest /= 5;
        fives += 1;
    }
    if rest != 1 {
        return format!("{numer}/{denom}");
    }
    let digits = twos.max(fives);
    let factor = 10i128.pow(digits) / denom;
    let Some(scaled) = numer.abs().checked_mul(factor) else {
        return format!("{numer}/{denom}");
    };
    let unit = 10i128.pow(digits);
    let sign = if r.is_negative() { "-" } else { "" };
    format!(
        "{sign}{}.{:0width$}",
        scaled / unit,
        scaled % unit,
        width = digits as usize
    )
}
