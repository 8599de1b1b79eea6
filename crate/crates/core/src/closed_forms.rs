//! Explicit product and sum formulas: the box count of a hexagon, the
//! centered proportion `Q(m,n)`, the sum `S(n)` with its telescoping
//! certificate, and the closed forms of the two lattice-path determinants.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::check::Verification;
use crate::error::{domain, Result};
use crate::exact::{
    double_factorial, expect_integer, factorial, integer, rational, reciprocal_factorial, rising, shifted_factorial,
    sign,
};
use crate::{ExactInt, ExactRational};

/// Side lengths of a semiregular hexagon, in cyclic order `a, b, c, a, b, c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HexagonSpec {
    a: u32,
    b: u32,
    c: u32,
}

impl HexagonSpec {
    pub fn new(a: u32, b: u32, c: u32) -> Result<Self> {
        if a == 0 && b == 0 && c == 0 {
            return domain("hexagon with all sides zero");
        }
        Ok(HexagonSpec { a, b, c })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    /// Number of unit triangles, `2(ab + bc + ca)`.
    pub fn cell_count(&self) -> u64 {
        let (a, b, c) = (self.a as u64, self.b as u64, self.c as u64);
        2 * (a * b + b * c + c * a)
    }

    /// A symmetric hexagon (`a = b`) has a central lozenge iff `a` and `c`
    /// have opposite parity.
    pub fn has_central_lozenge(&self) -> bool {
        self.a == self.b && (self.a + self.c) % 2 == 1
    }
}

impl fmt::Display for HexagonSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// Which family of symmetric hexagons a centered problem refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    /// Hexagon `(2n-1, 2n-1, 2m)`.
    OddSides,
    /// Hexagon `(2n, 2n, 2m-1)`.
    EvenSides,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::OddSides => "odd",
            Parity::EvenSides => "even",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CenteredProblem {
    n: u32,
    m: u32,
    parity: Parity,
}

impl CenteredProblem {
    pub fn new(n: u32, m: u32, parity: Parity) -> Result<Self> {
        if n == 0 {
            return domain("centered problem needs n >= 1");
        }
        if parity == Parity::EvenSides && m == 0 {
            return domain("even-sides centered problem needs m >= 1");
        }
        Ok(CenteredProblem { n, m, parity })
    }

    pub fn odd(n: u32, m: u32) -> Result<Self> {
        Self::new(n, m, Parity::OddSides)
    }

    pub fn even(n: u32, m: u32) -> Result<Self> {
        Self::new(n, m, Parity::EvenSides)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn hexagon(&self) -> HexagonSpec {
        let (n, m) = (self.n, self.m);
        let (side, third) = match self.parity {
            Parity::OddSides => (2 * n - 1, 2 * m),
            Parity::EvenSides => (2 * n, 2 * m - 1),
        };
        HexagonSpec { a: side, b: side, c: third }
    }

    /// Exponent `k` in the factorization `L(H) = 2^k L(H+) L*(H-)`.
    pub fn axis_exponent(&self) -> u32 {
        match self.parity {
            Parity::OddSides => 2 * self.n - 2,
            Parity::EvenSides => 2 * self.n - 1,
        }
    }
}

impl fmt::Display for CenteredProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-sides n={} m={}", self.parity, self.n, self.m)
    }
}

/// Number of lozenge tilings of the `(a, b, c)` hexagon (plane partitions in
/// an `a x b x c` box), `H(a)H(b)H(c)H(a+b+c) / (H(a+b)H(b+c)H(c+a))` with
/// `H(k) = 0! 1! ... (k-1)!`.
pub fn macmahon_count(h: &HexagonSpec) -> Result<ExactInt> {
    let (a, b, c) = (h.a as u64, h.b as u64, h.c as u64);
    let num = superfactorial(a) * superfactorial(b) * superfactorial(c) * superfactorial(a + b + c);
    let den = superfactorial(a + b) * superfactorial(b + c) * superfactorial(c + a);
    expect_integer(ExactRational::new(num, den), &format!("P{h}"))
}

fn superfactorial(k: u64) -> ExactInt {
    let mut acc = BigInt::one();
    let mut f = BigInt::one();
    for i in 1..k {
        f *= i;
        acc *= &f;
    }
    acc
}

/// `sum_{i=0}^{n-1} (-1)^{n-i-1}/(2n-2i-1) * (m+n-i)_{2i} / i!^2` for an
/// arbitrary rational `m`.
///
/// This is the sum of `Q(m,n)`, of the determinant evaluations, and (at
/// `m = n`) the sum `S(n)`.
pub fn alternating_sum(m: &ExactRational, n: u32) -> ExactRational {
    if m.is_integer() {
        if let Some(m) = m.to_integer().to_i64() {
            return alternating_sum_integer(m, n);
        }
    }
    alternating_sum_rational(m, n)
}

fn alternating_sum_rational(m: &ExactRational, n: u32) -> ExactRational {
    let n = n as i64;
    let mut total = ExactRational::zero();
    for i in 0..n {
        let base = m + integer(n - i);
        let term = shifted_factorial(&base, 2 * i as u64)
            * rational(sign(n - i - 1), 2 * n - 2 * i - 1)
            * reciprocal_factorial(i).pow(2);
        total += term;
    }
    total
}

/// Integer `m`: every `(m+n-i)_{2i} / i!^2` is an integer, so the sum is
/// accumulated over the common denominator `(2n-1)!!`.
fn alternating_sum_integer(m: i64, n: u32) -> ExactRational {
    let n = n as i64;
    let common = (1..n).fold(BigInt::one(), |acc, k| acc * (2 * k + 1));
    let mut numerator = BigInt::zero();
    // c = (m+n-i)_{2i} / i!^2, updated by its ratio in i.
    let mut c = BigInt::one();
    for i in 0..n {
        let part = &c * (&common / (2 * n - 2 * i - 1));
        if (n - i - 1) % 2 == 0 {
            numerator += part;
        } else {
            numerator -= part;
        }
        c = c * (m + n - i - 1) * (m + n + i) / ((i + 1) * (i + 1));
    }
    ExactRational::new(numerator, common)
}

/// `Q(m,n)`: the proportion of centered tilings.
pub fn q_ratio(m: u32, n: u32) -> Result<ExactRational> {
    if n == 0 {
        return domain("Q(m,n) needs n >= 1");
    }
    Ok(q_prefactor(m, n)? * alternating_sum(&integer(m as i64), n))
}

/// `(2n)!^2 (2m)! (m+2n-1)! / (2 n!^2 m! (2m+4n-2)!)`, the factor in front of
/// the alternating sum in `Q(m,n)`.
pub(crate) fn q_prefactor(m: u32, n: u32) -> Result<ExactRational> {
    let (mi, ni) = (m as i64, n as i64);
    let num = factorial(2 * ni)?.pow(2u32) * factorial(2 * mi)? * factorial(mi + 2 * ni - 1)?;
    let den = BigInt::from(2) * factorial(ni)?.pow(2u32) * factorial(mi)? * factorial(2 * mi + 4 * ni - 2)?;
    Ok(ExactRational::new(num, den))
}

/// Number of tilings of the problem's hexagon that contain its central
/// lozenge, `Q(m,n) * P(hexagon)`.
pub fn centered_count(p: &CenteredProblem) -> Result<ExactInt> {
    let total = macmahon_count(&p.hexagon())?;
    let q = q_ratio(p.m, p.n)?;
    expect_integer(q * ExactRational::from_integer(total), &format!("centered count of {p}"))
}

/// `S(n)`, the alternating sum at `m = n`.
pub fn s_sum(n: u32) -> Result<ExactRational> {
    if n == 0 {
        return domain("S(n) needs n >= 1");
    }
    Ok(alternating_sum(&integer(n as i64), n))
}

/// Product evaluation `3^{n-1} prod_{i=1}^{n-1} (6i-1)(6i+1) / (2n-1)!!^2`.
pub fn s_product_form(n: u32) -> Result<ExactRational> {
    if n == 0 {
        return domain("S(n) needs n >= 1");
    }
    let n = n as i64;
    let mut num = BigInt::from(3).pow((n - 1) as u32);
    for i in 1..n {
        num *= (6 * i - 1) * (6 * i + 1);
    }
    Ok(ExactRational::new(num, double_factorial(2 * n - 1)?.pow(2u32)))
}

pub fn check_s_product(n: u32) -> Result<Verification> {
    Ok(Verification::compare(&s_sum(n)?, &s_product_form(n)?))
}

/// Summand `F(n,i)` of `S(n)`.
pub fn wz_summand(n: i64, i: i64) -> ExactRational {
    let den = factorial(i).expect("i >= 0").pow(2u32) * (2 * n - 2 * i - 1);
    ExactRational::new(rising(2 * n - i, 2 * i as u64) * sign(n - i - 1), den)
}

/// Certificate `G(n,i)` accompanying the recurrence of `S(n)`.
pub fn wz_certificate(n: i64, i: i64) -> ExactRational {
    if i == 0 {
        // i^2 factor
        return ExactRational::zero();
    }
    let poly = -3 + 9 * i - 6 * i * i - 30 * n + 62 * i * n - 28 * i * i * n - 104 * n * n + 104 * i * n * n
        - 112 * n * n * n;
    let num = rising(2 * n - i + 2, (2 * i - 2) as u64) * (sign(n - i) * poly * i * i);
    let den = factorial(i).expect("i >= 0").pow(2u32) * (2 * n - 2 * i + 1);
    ExactRational::new(num, den)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WzMismatch {
    pub i: i64,
    pub lhs: String,
    pub rhs: String,
}

/// Result of checking the telescoping relation at a fixed `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WzCheck {
    pub n: u32,
    pub mismatches: Vec<WzMismatch>,
    /// `(2n+1)^2 S(n+1)` against `3(6n-1)(6n+1) S(n)`.
    pub recurrence: Verification,
}

impl WzCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.recurrence.holds
    }
}

/// Verifies `n(2n+1)^2 F(n+1,i) - 3n(6n-1)(6n+1) F(n,i) = G(n,i+1) - G(n,i)`
/// for `i = 0..=n`, and the recurrence for `S` it telescopes to.
pub fn wz_certificate_check(n: u32) -> Result<WzCheck> {
    if n == 0 {
        return domain("certificate check needs n >= 1");
    }
    let ni = n as i64;
    let left_coeff = integer(ni * (2 * ni + 1) * (2 * ni + 1));
    let right_coeff = integer(3 * ni * (6 * ni - 1) * (6 * ni + 1));
    let mut mismatches = Vec::new();
    for i in 0..=ni {
        let lhs = &left_coeff * wz_summand(ni + 1, i) - &right_coeff * wz_summand(ni, i);
        let rhs = wz_certificate(ni, i + 1) - wz_certificate(ni, i);
        if lhs != rhs {
            mismatches.push(WzMismatch {
                i,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }
    let lhs = integer((2 * ni + 1) * (2 * ni + 1)) * s_sum(n + 1)?;
    let rhs = integer(3 * (6 * ni - 1) * (6 * ni + 1)) * s_sum(n)?;
    Ok(WzCheck {
        n,
        mismatches,
        recurrence: Verification::compare(&lhs, &rhs),
    })
}

/// Product side of the evaluation of `det C(N+m-i+1, m+i-j)`, `1 <= i,j <= N`.
pub fn binomial_det_product(big_n: u32, m: u32) -> Result<ExactInt> {
    if big_n == 0 {
        return domain("binomial determinant product needs N >= 1");
    }
    let (nn, m) = (big_n as i64, m as i64);
    let mut acc = integer(1);
    for i in 1..=nn {
        let num = factorial(nn + m - i + 1)? * factorial(i - 1)?;
        let den = factorial(m + i - 1)? * factorial(2 * nn - 2 * i + 1)?;
        acc *= ExactRational::new(num, den) * shifted_factorial(&integer(2 * m + i + 1), (i - 1) as u64);
    }
    expect_integer(acc, &format!("binomial determinant product at N={big_n}, m={m}"))
}

/// Closed form of the weighted lower-half determinant.
pub fn weighted_det_closed_form(n: u32, m: u32) -> Result<ExactRational> {
    if n == 0 {
        return domain("weighted determinant evaluation needs n >= 1");
    }
    let (ni, mi) = (n as i64, m as i64);
    let mut acc = ExactRational::new(BigInt::one(), (BigInt::one() << (3 * ni - 3) as usize) * factorial(ni - 1)?);
    for i in 1..=ni {
        acc *= ExactRational::from_integer(factorial(2 * i - 1)?.pow(2u32));
    }
    for i in 1..=2 * ni - 1 {
        let den = factorial(mi + i - 1)? * factorial(4 * ni - 2 * i - 1)?;
        acc *= ExactRational::new(factorial(2 * ni + mi - i - 1)?, den);
    }
    for i in 1..=2 * ni - 2 {
        acc *= shifted_factorial(&integer(2 * mi + i + 1), i as u64);
    }
    Ok(acc * alternating_sum(&integer(mi), n))
}
