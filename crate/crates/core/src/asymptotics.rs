//! Limit of `Q(m,n)` along `m ~ a n`: `(2/pi) arcsin(1/(a+1))`.
//!
//! The value is computed in binary fixed point well beyond double precision
//! and rounded once, so that rational special values such as `a = 1`
//! (limit exactly `1/3`) land on the nearest `f64` rather than one ulp away.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::closed_forms::q_ratio;
use crate::error::{domain, Result};
use crate::ExactRational;

const PRECISION_BITS: usize = 256;

/// `(2/pi) * arcsin(1/(a+1))` for `a >= 0`, correctly rounded in all but
/// pathological cases.
pub fn asymptotic_limit(a: f64) -> Result<f64> {
    if !a.is_finite() || a < 0.0 {
        return domain(format!("asymptotic limit needs a finite a >= 0, got {a}"));
    }
    let a = ExactRational::from_float(a).expect("finite float");
    let t = (a + ExactRational::one()).recip();
    let value = ExactRational::new(asin_fixed(&t) * 2, pi_fixed());
    Ok(value.to_f64().expect("value in [0, 1]"))
}

/// One row of the convergence table: `Q(m, n)` at `m = round(a n)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoteRow {
    pub n: u32,
    pub m: u32,
    /// Exact value as `p/q`.
    pub q_exact: String,
    pub q: f64,
    pub limit: f64,
    pub abs_err: f64,
}

pub fn asymptote_rows(a: f64, ns: &[u32]) -> Result<Vec<AsymptoteRow>> {
    let limit = asymptotic_limit(a)?;
    ns.iter()
        .map(|&n| {
            if n == 0 {
                return domain("n must be at least 1");
            }
            let m = (a * n as f64).round();
            if m > u32::MAX as f64 {
                return domain(format!("m = {m} is out of range"));
            }
            let m = m as u32;
            let exact = q_ratio(m, n)?;
            let q = exact.to_f64().expect("Q lies in [0, 1]");
            Ok(AsymptoteRow {
                n,
                m,
                q_exact: exact.to_string(),
                q,
                limit,
                abs_err: (q - limit).abs(),
            })
        })
        .collect()
}

fn one_fixed() -> BigInt {
    BigInt::one() << PRECISION_BITS
}

fn to_fixed(r: &ExactRational) -> BigInt {
    (r.numer() << PRECISION_BITS) / r.denom()
}

fn mul_fixed(x: &BigInt, y: &BigInt) -> BigInt {
    (x * y) >> PRECISION_BITS
}

/// `arcsin(t)` for `0 <= t <= 1`, scaled by `2^PRECISION_BITS`.
fn asin_fixed(t: &ExactRational) -> BigInt {
    let half = ExactRational::new(BigInt::one(), BigInt::from(2));
    if *t <= half {
        return asin_series(&to_fixed(t));
    }
    // arcsin(t) = pi/2 - 2 arcsin(sqrt((1 - t)/2)), argument at most 1/2.
    let r = (ExactRational::one() - t) * half;
    let s = ((r.numer() << (2 * PRECISION_BITS)) / r.denom()).sqrt();
    (pi_fixed() >> 1) - asin_series(&s) * 2
}

/// Maclaurin series `sum (1/2)_k / k! * x^(2k+1) / (2k+1)`, for `|x| <= 1/2`.
fn asin_series(x: &BigInt) -> BigInt {
    let x2 = mul_fixed(x, x);
    let mut power = x.clone();
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        sum += &power / (2 * k + 1);
        k += 1;
        power = mul_fixed(&power, &x2) * (2 * k - 1) / (2 * k);
    }
    sum
}

/// `arctan(1/x)` for an integer `x > 1`.
fn atan_inverse(x: u64) -> BigInt {
    let x2 = BigInt::from(x * x);
    let mut power = one_fixed() / x;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// Machin's formula `pi = 16 arctan(1/5) - 4 arctan(1/239)`.
fn pi_fixed() -> BigInt {
    let pi: BigInt = atan_inverse(5) * 16 - atan_inverse(239) * 4;
    debug_assert!(pi.is_positive());
    pi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_values() {
        assert_eq!(asymptotic_limit(0.0).unwrap(), 1.0);
        assert_eq!(asymptotic_limit(1.0).unwrap(), 1.0 / 3.0);
        // 2/pi * arcsin(1/3), independently evaluated.
        assert!((asymptotic_limit(2.0).unwrap() - 0.216_346_895_938_785_48).abs() < 1e-15);
        // arcsin(1/sqrt 2) = pi/4 for a = sqrt 2 - 1, up to the rounding of a.
        assert!((asymptotic_limit(std::f64::consts::SQRT_2 - 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(asymptotic_limit(-0.5).is_err());
        assert!(asymptotic_limit(f64::NAN).is_err());
    }

    #[test]
    fn close_to_float_formula() {
        for i in 0..200 {
            let a = i as f64 * 0.137;
            let approx = 2.0 / std::f64::consts::PI * (1.0 / (a + 1.0)).asin();
            let exact = asymptotic_limit(a).unwrap();
            assert!((approx - exact).abs() < 1e-14, "a={a}");
        }
    }

    #[test]
    fn pi_digits() {
        let pi = ExactRational::new(pi_fixed(), one_fixed());
        assert_eq!(pi.to_f64().unwrap(), std::f64::consts::PI);
    }

    #[test]
    fn table_rows() {
        let rows = asymptote_rows(1.0, &[1, 7, 20]).unwrap();
        assert!(rows.iter().all(|r| r.m == r.n && r.q_exact == "1/3" && r.abs_err == 0.0));
        let rows = asymptote_rows(0.0, &[3]).unwrap();
        assert_eq!((rows[0].m, rows[0].limit), (0, 1.0));
        assert_eq!(asymptote_rows(0.5, &[25]).unwrap()[0].m, 13);
        assert!(asymptote_rows(1.0, &[0]).is_err());
    }

    #[test]
    fn monotone_decreasing() {
        let mut prev = asymptotic_limit(0.0).unwrap();
        for i in 1..50 {
            let v = asymptotic_limit(i as f64 * 0.25).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }
}
