//! Exact rational scalars: parsing, formatting, and float conversion.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

/// Coordinate type for all exact geometry. Closed under +, -, *, / and
/// compared exactly; every combinatorial decision in this crate is made
/// on `Scalar` values, never on floats.
pub type Scalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarParseError {
    #[error("empty numeric string")]
    Empty,
    #[error("invalid numeric string {0:?}")]
    Invalid(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("exponent out of range in {0:?}")]
    ExponentOutOfRange(String),
}

/// Integer-valued scalar.
pub fn scalar_int(i: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(i))
}

/// `num/den` as a scalar. Panics on a zero denominator.
pub fn scalar_ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses a decimal string ("2", "-0.125", "3e-2") or an exact fraction
/// string ("5/3", "-7/2"). The decimal forms are exact: "0.1" is 1/10.
pub fn parse_scalar(s: &str) -> Result<Scalar, ScalarParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ScalarParseError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim())
            .map_err(|_| ScalarParseError::Invalid(s.to_string()))?;
        let den = BigInt::from_str(den.trim())
            .map_err(|_| ScalarParseError::Invalid(s.to_string()))?;
        if den.is_zero() {
            return Err(ScalarParseError::ZeroDenominator(s.to_string()));
        }
        return Ok(BigRational::new(num, den));
    }
    parse_decimal(s).ok_or_else(|| ScalarParseError::Invalid(s.to_string()))
}

fn parse_decimal(s: &str) -> Option<Scalar> {
    let (sign, rest) = match s.as_bytes()[0] {
        b'+' => (1, &s[1..]),
        b'-' => (-1, &s[1..]),
        _ => (1, s),
    };
    let (mantissa, exp_str) = match rest.find(['e', 'E']) {
        Some(i) => (&rest[..i], Some(&rest[i + 1..])),
        None => (rest, None),
    };
    let exp: i32 = match exp_str {
        Some(e) if !e.is_empty() => e.parse().ok()?,
        Some(_) => return None,
        None => 0,
    };
    if exp.unsigned_abs() > 10_000 {
        return None;
    }
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits: String = [int_part, frac_part].concat();
    let mut numer = BigInt::from_str(&digits).ok()?;
    if sign < 0 {
        numer = -numer;
    }
    let scale = frac_part.len() as i32 - exp;
    let ten = BigInt::from(10u32);
    Some(if scale >= 0 {
        BigRational::new(numer, ten.pow(scale as u32))
    } else {
        BigRational::from_integer(numer * ten.pow((-scale) as u32))
    })
}

/// Formats a scalar canonically: an exact decimal string when the reduced
/// denominator is of the form 2^a * 5^b, otherwise "num/den". Both forms
/// parse back to the identical scalar.
pub fn format_scalar(x: &Scalar) -> String {
    let denom = x.denom().magnitude().clone();
    let two = BigUint::from(2u32);
    let five = BigUint::from(5u32);
    let mut rest = denom;
    let mut a: u32 = 0;
    while (&rest % &two).is_zero() {
        rest /= &two;
        a += 1;
    }
    let mut b: u32 = 0;
    while (&rest % &five).is_zero() {
        rest /= &five;
        b += 1;
    }
    if !rest.is_one() {
        return format!("{}/{}", x.numer(), x.denom());
    }
    let k = a.max(b);
    if k == 0 {
        return x.numer().to_string();
    }
    // numer * (2^(k-a) * 5^(k-b)) over 10^k; the reduced form guarantees
    // the resulting digit string never ends in zero.
    let m = two.pow(k - a) * five.pow(k - b);
    let digits = (x.numer().magnitude() * m).to_string();
    let k = k as usize;
    let pad = if digits.len() <= k {
        format!("0.{}{}", "0".repeat(k - digits.len()), digits)
    } else {
        format!("{}.{}", &digits[..digits.len() - k], &digits[digits.len() - k..])
    };
    if x.numer().is_negative() {
        format!("-{pad}")
    } else {
        pad
    }
}

/// Nearest double to an exact rational (round to nearest, ties to even).
pub fn scalar_to_f64(x: &Scalar) -> f64 {
    if x.numer().is_zero() {
        return 0.0;
    }
    let neg = x.numer().sign() == Sign::Minus;
    let mut n = x.numer().magnitude().clone();
    let mut d = x.denom().magnitude().clone();
    // Scale so the integer quotient carries 56..57 bits, then round to 53.
    let target: i64 = 56;
    let diff = n.bits() as i64 - d.bits() as i64;
    let mut exp: i64 = 0;
    if diff < target {
        n <<= (target - diff) as u64;
        exp -= target - diff;
    } else if diff > target {
        d <<= (diff - target) as u64;
        exp += diff - target;
    }
    let (mut q, r) = num_integer::Integer::div_rem(&n, &d);
    let drop = q.bits() as i64 - 53;
    debug_assert!(drop > 0);
    let half = BigUint::one() << (drop - 1) as u64;
    let low = &q & ((BigUint::one() << drop as u64) - 1u32);
    q >>= drop as u64;
    exp += drop;
    let round_up = low > half || (low == half && (!r.is_zero() || q.bit(0)));
    if round_up {
        q += 1u32;
    }
    let mag = q.to_u64().expect("53-bit mantissa") as f64 * 2f64.powi(exp as i32);
    if neg {
        -mag
    } else {
        mag
    }
}

/// Exact rational equal to the given double. NaN and infinities have no
/// rational value.
pub fn scalar_from_f64(x: f64) -> Option<Scalar> {
    BigRational::from_float(x)
}
