use num_bigint::BigInt;
use num_traits::Zero;

use crate::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `a`, `-a` or `a/b` with decimal integers.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::parse(0, alloc::format!("bad integer {num:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::parse(0, alloc::format!("bad integer {den:?}")))?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let r = parse_rational("6/-4").unwrap();
        assert_eq!(r, rat(-3, 2));
        assert!(r.denom() > &BigInt::zero());
        assert_eq!(parse_rational("0/7").unwrap(), rat(0, 1));
        assert_eq!(parse_rational("1/0"), Err(Error::DivisionByZero));
    }
}
