//! Small helpers around `BigRational`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `n/d`, reduced. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"` (optional sign on `p`, `q` nonzero).
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let valid = |t: &str, signed: bool| {
        let digits = if signed { t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t) } else { t };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return None;
    }
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}
