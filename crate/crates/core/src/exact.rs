//! Factorial-family primitives over arbitrary-precision integers and
//! rationals, plus the string wire forms used in JSON output.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::scalar::Scalar;
use crate::{ExactInt, ExactRational};

/// `p/q` as a reduced rational. Panics on `q == 0`.
pub fn rational(p: i64, q: i64) -> ExactRational {
    ExactRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn integer(v: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(v))
}

/// `k!`.
pub fn factorial(k: i64) -> Result<ExactInt> {
    if k < 0 {
        return domain(format!("factorial of negative integer {k}"));
    }
    Ok((2..=k).fold(BigInt::one(), |acc, t| acc * t))
}

/// `1/k!`, with the reciprocal-factorial convention `1/k! = 0` for `k < 0`.
pub fn reciprocal_factorial(k: i64) -> ExactRational {
    match factorial(k) {
        Ok(f) => ExactRational::new(BigInt::one(), f),
        Err(_) => ExactRational::zero(),
    }
}

/// Binomial coefficient `C(top, bottom)`; zero when `bottom < 0` or
/// `bottom > top`. Negative `top` is rejected.
pub fn binomial(top: i64, bottom: i64) -> Result<ExactInt> {
    if top < 0 {
        return domain(format!("binomial with negative top {top}"));
    }
    if bottom < 0 || bottom > top {
        return Ok(BigInt::zero());
    }
    let k = bottom.min(top - bottom);
    // Running product stays integral: C(top-k+t, t) after step t.
    let mut acc = BigInt::one();
    for t in 1..=k {
        acc = acc * (top - k + t) / t;
    }
    Ok(acc)
}

/// Shifted factorial (Pochhammer symbol) `(a)_k = a(a+1)...(a+k-1)`, `(a)_0 = 1`.
pub fn shifted_factorial<T: Scalar>(a: &T, k: u64) -> T {
    let mut acc = T::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc = acc * term.clone();
        term = term + T::one();
    }
    acc
}

/// `(a)_k` for an integer `a`.
pub fn rising(a: i64, k: u64) -> ExactInt {
    let mut acc = BigInt::one();
    for t in 0..k as i64 {
        acc *= a + t;
    }
    acc
}

/// Double factorial `k(k-2)(k-4)...`, with `0!! = (-1)!! = 1`.
pub fn double_factorial(k: i64) -> Result<ExactInt> {
    if k < -1 {
        return domain(format!("double factorial of {k}"));
    }
    let mut acc = BigInt::one();
    let mut t = k;
    while t > 1 {
        acc *= t;
        t -= 2;
    }
    Ok(acc)
}

/// `(-1)^e` as a small integer.
pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> ExactRational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        ExactRational::from_integer(p)
    } else {
        ExactRational::new(BigInt::one(), p)
    }
}

/// Extracts the integer value of `r`, or reports which quantity failed to be
/// integral.
pub fn expect_integer(r: ExactRational, what: &str) -> Result<ExactInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::Invariant(format!("{what} = {r} is not an integer")))
    }
}

/// Wire form of a rational: `p/q` in lowest terms with `q > 0`, or `p` when
/// `q = 1`.
pub fn rational_to_wire(r: &ExactRational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad_rational(s))?;
            let q: BigInt = q.trim().parse().map_err(|_| bad_rational(s))?;
            if q.is_zero() {
                return Err(bad_rational(s));
            }
            ExactRational::new(p, q)
        }
        None => ExactRational::from_integer(s.parse().map_err(|_| bad_rational(s))?),
    };
    Ok(parsed)
}

fn bad_rational(s: &str) -> Error {
    Error::Domain(format!("cannot parse {s:?} as a rational"))
}

/// Least common multiple of the denominators in `values`.
pub(crate) fn common_denominator<'a>(values: impl IntoIterator<Item = &'a ExactRational>) -> ExactInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
        .abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &str) -> BigInt {
        v.parse().unwrap()
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0).unwrap(), BigInt::one());
        assert_eq!(factorial(5).unwrap(), BigInt::from(120));
        // Iterated product 1*2*...*20.
        assert_eq!(factorial(20).unwrap(), big("2432902008176640000"));
        assert!(matches!(factorial(-1), Err(Error::Domain(_))));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(3, 1).unwrap(), BigInt::from(3));
        assert_eq!(binomial(2, -1).unwrap(), BigInt::zero());
        assert_eq!(binomial(2, 3).unwrap(), BigInt::zero());
        assert_eq!(binomial(0, 0).unwrap(), BigInt::one());
        assert!(binomial(-2, 1).is_err());
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        let mut row = vec![BigInt::one()];
        for top in 1..=40i64 {
            let mut next = vec![BigInt::one(); top as usize + 1];
            for k in 1..top as usize {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
            for (k, v) in row.iter().enumerate() {
                assert_eq!(&binomial(top, k as i64).unwrap(), v);
            }
        }
        assert_eq!(binomial(8, 4).unwrap(), BigInt::from(70));
    }

    #[test]
    fn binomial_is_factorial_quotient() {
        for n in 0..=30 {
            for k in 0..=n {
                let q = factorial(n).unwrap() / (factorial(k).unwrap() * factorial(n - k).unwrap());
                assert_eq!(binomial(n, k).unwrap(), q);
            }
        }
    }

    #[test]
    fn shifted_factorial_values() {
        assert_eq!(shifted_factorial(&rational(7, 2), 0), integer(1));
        assert_eq!(shifted_factorial(&integer(2), 2), integer(6));
        assert_eq!(shifted_factorial(&integer(-3), 2), integer(6));
        assert_eq!(shifted_factorial(&integer(-3), 4), integer(0));
        assert_eq!(shifted_factorial(&0.5f64, 2), 0.75);
    }

    #[test]
    fn double_factorial_values() {
        assert_eq!(double_factorial(-1).unwrap(), BigInt::one());
        assert_eq!(double_factorial(0).unwrap(), BigInt::one());
        assert_eq!(double_factorial(1).unwrap(), BigInt::one());
        assert_eq!(double_factorial(3).unwrap(), BigInt::from(3));
        assert_eq!(double_factorial(7).unwrap(), BigInt::from(105));
        assert_eq!(double_factorial(8).unwrap(), BigInt::from(384));
    }

    #[test]
    fn wire_forms() {
        assert_eq!(rational_to_wire(&rational(34, -70)), "-17/35");
        assert_eq!(rational_to_wire(&rational(6, 3)), "2");
        assert_eq!(rational_to_wire(&rational(0, 9)), "0");
        assert_eq!(parse_rational(" 17/35").unwrap(), rational(17, 35));
        assert_eq!(parse_rational("-4").unwrap(), integer(-4));
        assert_eq!(parse_rational("2/4").unwrap(), rational(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        let huge = big("-123456789012345678901234567890123456789");
        assert_eq!(huge.to_string().parse::<BigInt>().unwrap(), huge);
    }

    #[test]
    fn pow2_and_sign() {
        assert_eq!(pow2(3), integer(8));
        assert_eq!(pow2(-2), rational(1, 4));
        assert_eq!(sign(-1), -1);
        assert_eq!(sign(4), 1);
    }

    fn small_rational() -> impl Strategy<Value = ExactRational> {
        (-50i64..=50, 1i64..=12).prop_map(|(p, q)| rational(p, q))
    }

    proptest! {
        #[test]
        fn shifted_factorial_splits(a in small_rational(), k in 0u64..12, j in 0u64..12) {
            let j = j.min(k);
            let lhs = shifted_factorial(&a, k);
            let rhs = shifted_factorial(&a, j) * shifted_factorial(&(a.clone() + integer(j as i64)), k - j);
            prop_assert_eq!(lhs, rhs);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn rational_add_sub_roundtrip(p in -1000i64..1000, q in 1i64..1000, r in -1000i64..1000, s in 1i64..1000) {
            let x = rational(p, q);
            let y = rational(r, s);
            let back = (x.clone() + y.clone()) - y;
            prop_assert_eq!(&back, &x);
            prop_assert!(back.denom() > &BigInt::zero());
            prop_assert_eq!(parse_rational(&rational_to_wire(&back)).unwrap(), x);
        }
    }
}
