//! Exact rational helpers.

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub type Rational = Ratio<i64>;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v)
}

/// Formats as `p/q`, always with an explicit denominator.
pub fn to_pq(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => s.parse::<i64>().map(int).map_err(|_| bad()),
    }
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

pub fn is_integer_value(x: &Rational) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse("1/5").unwrap(), Rational::new(1, 5));
        assert_eq!(parse("-2/10").unwrap(), Rational::new(-1, 5));
        assert_eq!(parse("7").unwrap(), int(7));
        assert!(parse("1/0").is_err());
        assert!(parse("0.2").is_err());
    }

    #[test]
    fn pq_keeps_denominator() {
        assert_eq!(to_pq(&int(0)), "0/1");
        assert_eq!(to_pq(&Rational::new(-3, 5)), "-3/5");
    }
}
