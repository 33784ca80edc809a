//! Exact rational helpers: parsing decimal and `p/q` strings, and the
//! canonical `p/q` rendering used by every serialized output.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Conversion into an exact rational, so builders accept plain integers.
pub trait IntoRational {
    fn into_rational(self) -> BigRational;
}

macro_rules! int_into_rational {
    ($($t:ty),*) => {$(
        impl IntoRational for $t {
            fn into_rational(self) -> BigRational {
                BigRational::from_integer(BigInt::from(self))
            }
        }
    )*};
}
int_into_rational!(i32, i64, u32, u64, usize);

impl IntoRational for BigInt {
    fn into_rational(self) -> BigRational {
        BigRational::from_integer(self)
    }
}

impl IntoRational for BigRational {
    fn into_rational(self) -> BigRational {
        self
    }
}

impl IntoRational for &BigRational {
    fn into_rational(self) -> BigRational {
        self.clone()
    }
}

impl IntoRational for (i64, i64) {
    fn into_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.0), BigInt::from(self.1))
    }
}

/// Shorthand for `num/den` as an exact rational. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"3"`, `"-1.25"`, `"7/4"` (and surrounding whitespace) exactly.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let num = parse_decimal(num.trim())?;
        let den = parse_decimal(den.trim())?;
        if den.is_zero() {
            return None;
        }
        return Some(num / den);
    }
    parse_decimal(text)
}

fn parse_decimal(text: &str) -> Option<BigRational> {
    let (negative, digits) = match text.as_bytes().first()? {
        b'-' => (true, &text[1..]),
        b'+' => (false, &text[1..]),
        _ => (false, text),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut all = String::with_capacity(int_part.len() + frac_part.len());
    all.push_str(int_part);
    all.push_str(frac_part);
    let numer: BigInt = all.parse().ok()?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = BigRational::new(numer, denom);
    Some(if negative { -value } else { value })
}

/// Renders `value` as `"p/q"` in lowest terms; integers keep the `/1`.
pub fn format_rational(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Least common multiple of all denominators.
pub(crate) fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Floor of a rational as a rational integer.
pub(crate) fn floor(value: &BigRational) -> BigRational {
    value.floor()
}

/// The fraction with the smallest denominator inside the interval from `lo`
/// to `hi` (`None` means unbounded above), with each end open or closed.
/// Walks the Stern-Brocot tree via the continued-fraction expansion.
/// Requires `lo >= 0` and a nonempty interval.
pub fn simplest_in_interval(
    lo: &BigRational,
    lo_open: bool,
    hi: Option<&BigRational>,
    hi_open: bool,
) -> BigRational {
    debug_assert!(!lo.is_negative());
    let whole = floor(lo);
    if lo.is_integer() && !lo_open {
        return lo.clone();
    }
    let next = &whole + BigRational::one();
    let next_inside = match hi {
        None => true,
        Some(h) => next < *h || (next == *h && !hi_open),
    };
    if next_inside {
        return next;
    }
    // Interval sits inside (whole, whole + 1]; recurse on the reciprocal of
    // the fractional part, which flips the ends.
    let hi = hi.expect("bounded interval");
    let inner_lo = (hi - &whole).recip();
    let inner_hi = if *lo == whole {
        None
    } else {
        Some((lo - &whole).recip())
    };
    let inner = simplest_in_interval(&inner_lo, hi_open, inner_hi.as_ref(), lo_open);
    whole + inner.recip()
}
