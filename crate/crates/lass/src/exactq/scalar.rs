use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::LinAlgError;

/// Ground-field element: an arbitrary-precision rational, always stored in
/// lowest terms with positive denominator (maintained by `BigRational`).
pub type Scalar = BigRational;

pub fn qi(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p/q" or "p".
pub fn parse_scalar(s: &str) -> Result<Scalar, LinAlgError> {
    let bad = || LinAlgError::BadScalar(s.to_string());
    match s.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
        None => {
            let num: BigInt = s.trim().parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(num))
        }
    }
}

/// Renders "p/q", or just "p" for integers.
pub fn scalar_to_string(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_scalar("3").unwrap(), qi(3));
        assert_eq!(parse_scalar("-4/6").unwrap(), qr(-2, 3));
        assert_eq!(scalar_to_string(&qr(-2, 3)), "-2/3");
        assert_eq!(scalar_to_string(&qi(7)), "7");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }
}
