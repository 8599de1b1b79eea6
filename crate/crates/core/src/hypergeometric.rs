//! Terminating hypergeometric series
//!
//! `rFs[a1..ar; b1..bs; z] = sum_k (a1)_k...(ar)_k / (k! (b1)_k...(bs)_k) z^k`
//!
//! evaluated exactly, together with checks of the Chu–Vandermonde and
//! Pfaff–Saalschütz summations, the three equivalent forms of `Q(m,n)` related
//! by Bailey's transformation, and the arcsin evaluation of `2F1[1,1;3/2;z]`.

use num_traits::Zero;
use serde::Serialize;

use crate::check::Verification;
use crate::closed_forms::{q_prefactor, q_ratio};
use crate::error::{domain, Error, Result};
use crate::exact::{factorial, integer, rational, shifted_factorial};
use crate::scalar::Scalar;
use crate::ExactRational;

/// Parameters of an `rFs` series.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSpec<T> {
    pub upper: Vec<T>,
    pub lower: Vec<T>,
    pub argument: T,
}

impl<T: Scalar> SeriesSpec<T> {
    pub fn new(upper: Vec<T>, lower: Vec<T>, argument: T) -> Self {
        SeriesSpec { upper, lower, argument }
    }

    /// Index of the last possibly non-zero term: the smallest `K` such that
    /// some upper parameter equals `-K`.
    pub fn termination_index(&self) -> Option<u64> {
        self.upper.iter().filter_map(Scalar::nonpositive_integer).min()
    }

    /// Successive terms `t_0 = 1, t_1, ...` generated by the term ratio.
    ///
    /// The caller is responsible for not running past a pole (a lower
    /// parameter equal to `-p` makes `t_{p+1}` undefined).
    pub fn terms(&self) -> Terms<'_, T> {
        Terms {
            spec: self,
            k: 0,
            previous: None,
        }
    }
}

pub struct Terms<'a, T> {
    spec: &'a SeriesSpec<T>,
    k: i64,
    previous: Option<T>,
}

impl<T: Scalar> Iterator for Terms<'_, T> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        let term = match self.previous.take() {
            None => T::one(),
            Some(prev) => {
                let k = T::from_i64(self.k - 1);
                let num = self
                    .spec
                    .upper
                    .iter()
                    .fold(prev * self.spec.argument.clone(), |acc, a| acc * (a.clone() + k.clone()));
                let den = self
                    .spec
                    .lower
                    .iter()
                    .fold(T::from_i64(self.k), |acc, b| acc * (b.clone() + k.clone()));
                num / den
            }
        };
        self.k += 1;
        self.previous = Some(term.clone());
        Some(term)
    }
}

/// Exact value of a terminating series.
pub fn evaluate_terminating<T: Scalar>(s: &SeriesSpec<T>) -> Result<T> {
    let Some(last) = s.termination_index() else {
        return domain("series has no non-positive integer upper parameter");
    };
    if let Some(p) = s.lower.iter().filter_map(Scalar::nonpositive_integer).find(|&p| p < last) {
        return domain(format!("lower parameter -{p} is a pole before term {last}"));
    }
    Ok(s.terms().take(last as usize + 1).fold(T::zero(), |acc, t| acc + t))
}

fn pochhammer_nonzero(a: &ExactRational, n: u64, what: &str) -> Result<ExactRational> {
    let v = shifted_factorial(a, n);
    if v.is_zero() {
        return domain(format!("{what} vanishes"));
    }
    Ok(v)
}

/// `2F1[a, -N; c; 1] = (c-a)_N / (c)_N`.
pub fn chu_vandermonde_check(a: &ExactRational, c: &ExactRational, big_n: u64) -> Result<Verification> {
    let den = pochhammer_nonzero(c, big_n, "(c)_N")?;
    let series = SeriesSpec::new(vec![a.clone(), integer(-(big_n as i64))], vec![c.clone()], integer(1));
    let lhs = evaluate_terminating(&series)?;
    let rhs = shifted_factorial(&(c - a), big_n) / den;
    Ok(Verification::compare(&lhs, &rhs))
}

/// Balanced `3F2[a, b, -N; c, 1+a+b-c-N; 1] = (c-a)_N (c-b)_N / ((c)_N (c-a-b)_N)`.
pub fn pfaff_saalschutz_check(
    a: &ExactRational,
    b: &ExactRational,
    c: &ExactRational,
    big_n: u64,
) -> Result<Verification> {
    let n = integer(big_n as i64);
    let d = integer(1) + a + b - c - &n;
    let series = SeriesSpec::new(vec![a.clone(), b.clone(), -n], vec![c.clone(), d], integer(1));
    let lhs = evaluate_terminating(&series)?;
    let den = pochhammer_nonzero(c, big_n, "(c)_N")? * pochhammer_nonzero(&(c - a - b), big_n, "(c-a-b)_N")?;
    let rhs = shifted_factorial(&(c - a), big_n) * shifted_factorial(&(c - b), big_n) / den;
    Ok(Verification::compare(&lhs, &rhs))
}

/// `Q(m,n)` evaluated three ways.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaileyForms {
    /// Direct alternating sum.
    pub direct: String,
    /// Reversed sum written as a balanced `4F3`.
    pub reversed: String,
    /// After Bailey's transformation of that `4F3`.
    pub transformed: String,
}

impl BaileyForms {
    pub fn agree(&self) -> bool {
        self.direct == self.reversed && self.reversed == self.transformed
    }
}

/// Values of `Q(m,n)` from the direct sum and from the two `4F3` forms.
///
/// Requires `m >= 1` (at `m = 0` the transformed prefactor `(m)_{n-1}` vanishes
/// against a pole) and `n >= 2`.
pub fn q_hypergeometric_forms(m: u32, n: u32) -> Result<[ExactRational; 3]> {
    if m == 0 || n < 2 {
        return domain(format!("Bailey forms need m >= 1 and n >= 2, got m={m}, n={n}"));
    }
    let (mi, ni) = (m as i64, n as i64);
    let pre = q_prefactor(m, n)?;
    let nm1_sq = ExactRational::from_integer(factorial(ni - 1)?.pow(2u32));

    let reversed_series = SeriesSpec::new(
        vec![integer(1), rational(1, 2), integer(1 - ni), integer(1 - ni)],
        vec![integer(1 + mi), integer(2 - mi - 2 * ni), rational(3, 2)],
        integer(1),
    );
    let reversed = &pre * shifted_factorial(&integer(mi + 1), 2 * (ni - 1) as u64) / &nm1_sq
        * evaluate_terminating(&reversed_series)?;

    let transformed_series = SeriesSpec::new(
        vec![integer(1 - ni), integer(1), integer(1), rational(2 * ni + 1, 2)],
        vec![rational(3, 2), integer(2 - mi - ni), integer(1 + mi + ni)],
        integer(1),
    );
    let transformed = &pre
        * shifted_factorial(&integer(mi), (ni - 1) as u64)
        * shifted_factorial(&integer(mi + ni + 1), (ni - 1) as u64)
        / &nm1_sq
        * evaluate_terminating(&transformed_series)?;

    Ok([q_ratio(m, n)?, reversed, transformed])
}

pub fn bailey_forms(m: u32, n: u32) -> Result<BaileyForms> {
    let [direct, reversed, transformed] = q_hypergeometric_forms(m, n)?;
    Ok(BaileyForms {
        direct: direct.to_string(),
        reversed: reversed.to_string(),
        transformed: transformed.to_string(),
    })
}

/// Partial-sum evaluation of `2F1[1, 1; 3/2; z]` against
/// `arcsin(sqrt z) / sqrt(z(1-z))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArcsinCheck {
    pub z: f64,
    pub series: f64,
    pub closed_form: f64,
    pub terms: u64,
    pub holds: bool,
}

const ARCSIN_TERM_CAP: u64 = 1_000_000;

/// Sums terms until one falls below `tol / 10` and compares the partial sum
/// with the closed form at tolerance `tol`.
pub fn arcsin_2f1_check(z: f64, tol: f64) -> Result<ArcsinCheck> {
    if !(z > 0.0 && z < 1.0) {
        return domain(format!("arcsin identity needs 0 < z < 1, got {z}"));
    }
    if tol.is_nan() || tol <= 0.0 {
        return domain("tolerance must be positive");
    }
    let spec = SeriesSpec::new(vec![1.0, 1.0], vec![1.5], z);
    let mut sum = 0.0;
    let mut used = 0;
    for term in spec.terms() {
        sum += term;
        used += 1;
        if term.abs() < tol / 10.0 {
            break;
        }
        if used >= ARCSIN_TERM_CAP {
            return Err(Error::Convergence { terms: used });
        }
    }
    let closed_form = z.sqrt().asin() / (z * (1.0 - z)).sqrt();
    Ok(ArcsinCheck {
        z,
        series: sum,
        closed_form,
        terms: used,
        holds: (sum - closed_form).abs() <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(upper: &[ExactRational], lower: &[ExactRational]) -> SeriesSpec<ExactRational> {
        SeriesSpec::new(upper.to_vec(), lower.to_vec(), integer(1))
    }

    #[test]
    fn direct_sums() {
        // 1 - 6/5 + 2/5
        let s = spec(&[integer(-2), integer(3)], &[integer(5)]);
        assert_eq!(evaluate_terminating(&s).unwrap(), rational(1, 5));
        // 1 + 4/15 + 1/15
        let s = spec(&[integer(1), integer(2), integer(-2)], &[integer(5), integer(-3)]);
        assert_eq!(evaluate_terminating(&s).unwrap(), rational(4, 3));
        let s = spec(&[rational(7, 3), integer(0)], &[rational(1, 2)]);
        assert_eq!(evaluate_terminating(&s).unwrap(), integer(1));
    }

    #[test]
    fn termination_and_poles() {
        let s = spec(&[integer(2), integer(3)], &[integer(5)]);
        assert!(matches!(evaluate_terminating(&s), Err(Error::Domain(_))));
        // (-1)_2 = 0 in the denominator of the k = 2 term.
        let s = spec(&[integer(-3)], &[integer(-1)]);
        assert!(matches!(evaluate_terminating(&s), Err(Error::Domain(_))));
        // Lower -K with K the termination index is not a pole.
        let s = spec(&[integer(-1)], &[integer(-1)]);
        assert_eq!(evaluate_terminating(&s).unwrap(), integer(2));
        let s = spec(&[integer(-4), integer(-2)], &[integer(3)]);
        assert_eq!(s.termination_index(), Some(2));
    }

    #[test]
    fn float_instantiation() {
        let s = SeriesSpec::new(vec![-2.0, 3.0], vec![5.0], 1.0f64);
        assert!((evaluate_terminating(&s).unwrap() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn chu_vandermonde_examples() {
        let v = chu_vandermonde_check(&integer(3), &integer(5), 2).unwrap();
        assert!(v.holds);
        assert_eq!(v.lhs, "1/5");
        let v = chu_vandermonde_check(&integer(3), &integer(5), 0).unwrap();
        assert_eq!((v.lhs.as_str(), v.rhs.as_str()), ("1", "1"));
        assert!(chu_vandermonde_check(&rational(1, 2), &rational(3, 2), 3).unwrap().holds);
        assert!(chu_vandermonde_check(&integer(1), &integer(-1), 3).is_err());
    }

    #[test]
    fn pfaff_saalschutz_examples() {
        let v = pfaff_saalschutz_check(&integer(1), &integer(2), &integer(5), 2).unwrap();
        assert!(v.holds);
        assert_eq!(v.lhs, "4/3");
        let v = pfaff_saalschutz_check(&integer(1), &integer(2), &integer(5), 0).unwrap();
        assert_eq!((v.lhs.as_str(), v.rhs.as_str()), ("1", "1"));
        // a = 1/2 - n, b = n - e, c = 1, N = n - e - 1 at n = 3, e = 1.
        let (n, e) = (3i64, 1i64);
        let v = pfaff_saalschutz_check(&rational(1 - 2 * n, 2), &integer(n - e), &integer(1), (n - e - 1) as u64)
            .unwrap();
        assert!(v.holds);
        // (c-a-b)_N = 0
        assert!(pfaff_saalschutz_check(&integer(1), &integer(1), &integer(2), 2).is_err());
    }

    #[test]
    fn bailey_forms_agree() {
        let [d, r, t] = q_hypergeometric_forms(1, 2).unwrap();
        assert_eq!(d, rational(17, 35));
        assert_eq!(r, d);
        assert_eq!(t, d);
        let f = bailey_forms(3, 3).unwrap();
        assert!(f.agree());
        assert_eq!(f.direct, "1/3");
        for m in 1..=6 {
            for n in 2..=6 {
                assert!(bailey_forms(m, n).unwrap().agree(), "m={m} n={n}");
            }
        }
        assert!(q_hypergeometric_forms(0, 3).is_err());
        assert!(q_hypergeometric_forms(2, 1).is_err());
    }

    #[test]
    fn arcsin_identity() {
        let c = arcsin_2f1_check(0.25, 1e-9).unwrap();
        assert!(c.holds, "{c:?}");
        let expected = (std::f64::consts::PI / 6.0) / 0.1875f64.sqrt();
        assert!((c.closed_form - expected).abs() < 1e-15);
        let tiny = arcsin_2f1_check(1e-8, 1e-12).unwrap();
        assert!((tiny.series - 1.0).abs() < 1e-7 && tiny.holds);
        assert!(arcsin_2f1_check(1.0, 1e-9).is_err());
        // Series value at z = 1/(a+1)^2 times the limiting prefactor gives the
        // limit for a = 1: 2 sqrt(3) / (4 pi) * F = 1/3.
        let c = arcsin_2f1_check(0.25, 1e-12).unwrap();
        let limit = 2.0 * 3f64.sqrt() / (std::f64::consts::PI * 4.0) * c.series;
        assert!((limit - 1.0 / 3.0).abs() < 1e-11);
    }

    fn param() -> impl Strategy<Value = ExactRational> {
        (-12i64..=12, prop::sample::select(vec![1i64, 2, 3])).prop_map(|(p, q)| rational(p, q))
    }

    proptest! {
        #[test]
        fn permutation_invariant(a in param(), b in param(), c in param(), d in param(), n in 0i64..8) {
            let s1 = spec(&[a.clone(), b.clone(), integer(-n)], &[c.clone(), d.clone()]);
            let s2 = spec(&[integer(-n), b, a], &[d, c]);
            match (evaluate_terminating(&s1), evaluate_terminating(&s2)) {
                (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
                (Err(_), Err(_)) => {}
                (x, y) => prop_assert!(false, "{:?} vs {:?}", x, y),
            }
        }

        #[test]
        fn cancellation_invariant(a in param(), c in param(), e in param(), n in 0i64..8) {
            let base = spec(&[a.clone(), integer(-n)], std::slice::from_ref(&c));
            let padded = spec(&[a, e.clone(), integer(-n)], &[c, e.clone()]);
            // Padding must not introduce a pole inside the range.
            prop_assume!(e.nonpositive_integer().is_none_or(|p| p >= n as u64));
            if let Ok(v) = evaluate_terminating(&base) {
                prop_assert_eq!(evaluate_terminating(&padded).unwrap(), v);
            }
        }
    }

    #[test]
    fn random_chu_vandermonde() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut done = 0;
        while done < 200 {
            let a = rational(rng.gen_range(-20..=20), rng.gen_range(1..=3));
            let c = rational(rng.gen_range(-20..=20), rng.gen_range(1..=3));
            let n = rng.gen_range(0..=12);
            if let Ok(v) = chu_vandermonde_check(&a, &c, n) {
                assert!(v.holds, "a={a} c={c} N={n}");
                done += 1;
            }
        }
    }

    #[test]
    fn q_prefactor_is_positive() {
        assert!(q_prefactor(2, 3).unwrap() > ExactRational::zero());
        assert_eq!(shifted_factorial(&integer(1), 3), integer(6));
    }
}
