//! Scalar abstraction for the exact kernel.
//!
//! Everything in [`crate::lie`] is generic over a field-like scalar so the
//! same code runs over exact rationals (the default, [`crate::Rat`]) or over
//! floats when speed matters more than exactness.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed};

use crate::{Error, Result};

/// Field-like scalar: exact equality, ring ops, division.
pub trait Scalar: Num + Signed + Clone + PartialEq + std::fmt::Debug + std::fmt::Display {}

impl<T> Scalar for T where T: Num + Signed + Clone + PartialEq + std::fmt::Debug + std::fmt::Display {}

/// Shorthand for a small rational p/q.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or `"p"` into an exact rational. Decimal forms are
/// rejected so float-typed and rational-typed inputs cannot be mixed.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.contains('.') || s.contains(['e', 'E']) {
        return Err(Error::Parse(format!(
            "expected exact rational `p/q`, got `{s}`"
        )));
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
            let q: BigInt = q
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
            if q == BigInt::from(0) {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer `{s}`")))?;
            Ok(BigRational::from(p))
        }
    }
}

/// Formats a rational as the `"p/q"` (or `"p"`) wire form.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rational to f64, for handing exact data to the float kernels.
pub fn rat_to_f64(r: &BigRational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // Good enough for the catalog's small rationals.
    let nf: f64 = n.to_string().parse().unwrap_or(f64::NAN);
    let df: f64 = d.to_string().parse().unwrap_or(f64::NAN);
    nf / df
}
