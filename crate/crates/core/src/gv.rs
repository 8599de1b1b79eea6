//! Lattice-path determinants for the two halves of a punctured symmetric
//! hexagon, the auxiliary determinant `D(m;n)` they reduce to, and checks of
//! their evaluations.
//!
//! Matrix builders take 1-based `(i, j)` formulas; [`Matrix::from_fn`] is
//! 0-based, so every builder shifts indices by one.

use num_traits::{One, Zero};

use crate::check::Verification;
use crate::closed_forms::{alternating_sum, binomial_det_product, weighted_det_closed_form, CenteredProblem, Parity};
use crate::error::{domain, Result};
use crate::exact::{binomial, expect_integer, factorial, integer, pow2, rational, reciprocal_factorial, shifted_factorial, sign};
use crate::matrix::{exact_determinant, Matrix};
use crate::{ExactInt, ExactRational, RationalMatrix};

fn binomial_or_zero(top: i64, bottom: i64) -> Result<ExactRational> {
    if bottom < 0 || bottom > top {
        return Ok(ExactRational::zero());
    }
    Ok(ExactRational::from_integer(binomial(top, bottom)?))
}

fn try_from_fn(size: usize, f: impl Fn(i64, i64) -> Result<ExactRational>) -> Result<RationalMatrix> {
    let mut rows = Vec::with_capacity(size);
    for i in 1..=size as i64 {
        let row = (1..=size as i64).map(|j| f(i, j)).collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if size == 0 {
        return Ok(Matrix::from_fn(0, 0, |_, _| ExactRational::zero()));
    }
    Matrix::from_rows(rows)
}

/// Path-count matrix of the upper half of the odd-sided hexagon:
/// `binom(2n+m-i-1, m+i-j)`, size `2n-2`.
pub fn matrix_h_plus(n: u32, m: u32) -> Result<RationalMatrix> {
    if n == 0 {
        return domain("n must be at least 1");
    }
    let (n, m) = (n as i64, m as i64);
    try_from_fn((2 * n - 2) as usize, |i, j| binomial_or_zero(2 * n + m - i - 1, m + i - j))
}

/// Path-count matrix of the upper half of the even-sided hexagon:
/// `binom(2n+m-i, m+i-j-1)`, size `2n`.
pub fn matrix_hbar_plus(n: u32, m: u32) -> Result<RationalMatrix> {
    if n == 0 || m == 0 {
        return domain("even-sided upper matrix needs n >= 1 and m >= 1");
    }
    let (n, m) = (n as i64, m as i64);
    try_from_fn((2 * n) as usize, |i, j| binomial_or_zero(2 * n + m - i, m + i - j - 1))
}

/// Factor `(n+m-j/2)` on ordinary rows and `j` on row `n`.
fn row_weight(n: i64, m: &ExactRational, i: i64, j: i64) -> ExactRational {
    if i == n {
        integer(j)
    } else {
        m + integer(n) - rational(j, 2)
    }
}

/// Weighted path-count matrix of the lower half (shared by both parities):
/// `(2n+m-i-1)! / ((m+i-j)! (2n-2i+j)!)` times the row weight, size `2n-1`.
pub fn matrix_h_minus(n: u32, m: u32) -> Result<RationalMatrix> {
    if n == 0 {
        return domain("n must be at least 1");
    }
    let (n, mi) = (n as i64, m as i64);
    let mq = integer(mi);
    try_from_fn((2 * n - 1) as usize, |i, j| {
        let value = ExactRational::from_integer(factorial(2 * n + mi - i - 1)?)
            * reciprocal_factorial(mi + i - j)
            * reciprocal_factorial(2 * n - 2 * i + j);
        Ok(value * row_weight(n, &mq, i, j))
    })
}

/// `(m+i-j+1)_{j-1} (2n-2i+j+1)_{2n-j-1}` times the row weight, size `2n-1`,
/// for any rational `m`.
pub fn d_matrix(n: u32, m: &ExactRational) -> Result<RationalMatrix> {
    if n == 0 {
        return domain("n must be at least 1");
    }
    let n = n as i64;
    try_from_fn((2 * n - 1) as usize, |i, j| {
        Ok(shifted_factorial(&(m + integer(i - j + 1)), (j - 1) as u64)
            * shifted_factorial(&integer(2 * n - 2 * i + j + 1), (2 * n - j - 1) as u64)
            * row_weight(n, m, i, j))
    })
}

pub fn d_determinant(n: u32, m: &ExactRational) -> Result<ExactRational> {
    exact_determinant(&d_matrix(n, m)?)
}

/// Factors pulled out of rows `1..=2n-1` of the lower-half matrix to turn it
/// into `D(m;n)`.
pub fn row_extraction_factor(n: u32, m: u32) -> Result<ExactRational> {
    let (n, m) = (n as i64, m as i64);
    let mut acc = ExactRational::one();
    for i in 1..=2 * n - 1 {
        acc *= ExactRational::new(factorial(2 * n + m - i - 1)?, factorial(m + i - 1)? * factorial(4 * n - 2 * i - 1)?);
    }
    Ok(acc)
}

pub fn check_h_plus(n: u32, m: u32) -> Result<Verification> {
    let det = exact_determinant(&matrix_h_plus(n, m)?)?;
    let rhs = if n == 1 { integer(1) } else { ExactRational::from_integer(binomial_det_product(2 * n - 2, m)?) };
    Ok(Verification::compare(&det, &rhs))
}

pub fn check_hbar_plus(n: u32, m: u32) -> Result<Verification> {
    let det = exact_determinant(&matrix_hbar_plus(n, m)?)?;
    let rhs = ExactRational::from_integer(binomial_det_product(2 * n, m - 1)?);
    Ok(Verification::compare(&det, &rhs))
}

pub fn check_h_minus(n: u32, m: u32) -> Result<Verification> {
    let det = exact_determinant(&matrix_h_minus(n, m)?)?;
    Ok(Verification::compare(&det, &weighted_det_closed_form(n, m)?))
}

pub fn check_row_extraction(n: u32, m: u32) -> Result<Verification> {
    let det = exact_determinant(&matrix_h_minus(n, m)?)?;
    let rhs = row_extraction_factor(n, m)? * d_determinant(n, &integer(m as i64))?;
    Ok(Verification::compare(&det, &rhs))
}

/// Inputs `X_1..X_N`, `A_2..A_N`, `B_2..B_N` of the product determinant
/// `det[(X_i+A_N)...(X_i+A_{j+1}) (X_i+B_j)...(X_i+B_2)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductDeterminantInput {
    pub x: Vec<ExactRational>,
    /// `a[k]` is `A_{k+2}`.
    pub a: Vec<ExactRational>,
    /// `b[k]` is `B_{k+2}`.
    pub b: Vec<ExactRational>,
}

impl ProductDeterminantInput {
    pub fn new(x: Vec<ExactRational>, a: Vec<ExactRational>, b: Vec<ExactRational>) -> Result<Self> {
        if x.is_empty() || a.len() + 1 != x.len() || b.len() + 1 != x.len() {
            return domain(format!(
                "need N >= 1 values of X and N-1 of A and B, got {}, {}, {}",
                x.len(),
                a.len(),
                b.len()
            ));
        }
        Ok(ProductDeterminantInput { x, a, b })
    }

    fn big_a(&self, k: usize) -> &ExactRational {
        &self.a[k - 2]
    }

    fn big_b(&self, k: usize) -> &ExactRational {
        &self.b[k - 2]
    }
}

/// `det = prod_{i<j} (X_i - X_j) * prod_{2<=i<=j<=N} (B_i - A_j)`.
pub fn product_determinant_check(inp: &ProductDeterminantInput) -> Result<Verification> {
    let n = inp.x.len();
    let matrix = Matrix::from_fn(n, n, |r, c| {
        let (xi, j) = (&inp.x[r], c + 1);
        let mut e = ExactRational::one();
        for k in j + 1..=n {
            e *= xi + inp.big_a(k);
        }
        for k in 2..=j {
            e *= xi + inp.big_b(k);
        }
        e
    });
    let lhs = exact_determinant(&matrix)?;
    let mut rhs = ExactRational::one();
    for i in 0..n {
        for j in i + 1..n {
            rhs *= &inp.x[i] - &inp.x[j];
        }
    }
    for i in 2..=n {
        for j in i..=n {
            rhs *= inp.big_b(i) - inp.big_a(j);
        }
    }
    Ok(Verification::compare(&lhs, &rhs))
}

/// `D(m;n) = (-1)^{n-1} D(1-2n-m;n)`.
pub fn check_d_symmetry(n: u32, m: &ExactRational) -> Result<Verification> {
    let lhs = d_determinant(n, m)?;
    let reflected = integer(1 - 2 * n as i64) - m;
    let rhs = integer(sign(n as i64 - 1)) * d_determinant(n, &reflected)?;
    Ok(Verification::compare(&lhs, &rhs))
}

/// Product-times-sum evaluation of `D(m;n)`.
pub fn d_closed_form(n: u32, m: &ExactRational) -> Result<ExactRational> {
    if n == 0 {
        return domain("n must be at least 1");
    }
    let ni = n as i64;
    let mut acc = pow2(2 * (ni - 1) * (ni - 2)) / ExactRational::from_integer(factorial(ni - 1)?);
    for i in 1..=ni {
        acc *= ExactRational::from_integer(factorial(2 * i - 1)?.pow(2u32));
    }
    for i in 1..ni {
        acc *= shifted_factorial(&(m + integer(i)), (2 * ni - 2 * i) as u64)
            * shifted_factorial(&(m + rational(2 * i + 1, 2)), (ni - 1) as u64);
    }
    Ok(acc * alternating_sum(m, n))
}

pub fn check_d_closed_form(n: u32, m: &ExactRational) -> Result<Verification> {
    Ok(Verification::compare(&d_determinant(n, m)?, &d_closed_form(n, m)?))
}

/// The alternating sum at the non-positive integer `m = -e`:
/// `(-1)^n (1/2+n)_{n-e-1} / (2 (1/2-n)_{n-e})`.
pub fn check_negative_point_sum(n: u32, e: u32) -> Result<Verification> {
    if n == 0 || e >= n {
        return domain(format!("need 0 <= e <= n-1, got n={n}, e={e}"));
    }
    let (ni, ei) = (n as i64, e as i64);
    let lhs = alternating_sum(&integer(-ei), n);
    let rhs = integer(sign(ni)) * shifted_factorial(&rational(2 * ni + 1, 2), (ni - ei - 1) as u64)
        / (integer(2) * shifted_factorial(&rational(1 - 2 * ni, 2), (ni - ei) as u64));
    Ok(Verification::compare(&lhs, &rhs))
}

/// Highest order of a non-vanishing divided difference of `D(m;n)` over the
/// integer points `0, 1, ..., count-1`.
///
/// With `count` exceeding the claimed degree plus one, this bounds the degree
/// of `D(m;n)` as a polynomial in `m`.
pub fn d_interpolated_degree(n: u32, count: usize) -> Result<Option<usize>> {
    let mut table = (0..count)
        .map(|p| d_determinant(n, &integer(p as i64)))
        .collect::<Result<Vec<_>>>()?;
    let mut degree = None;
    for order in 0..count {
        if table.iter().any(|v| !v.is_zero()) {
            degree = Some(order);
        }
        // Points are consecutive integers: divided differences are forward
        // differences divided by `order + 1`.
        table = table
            .windows(2)
            .map(|w| (&w[1] - &w[0]) / integer(order as i64 + 1))
            .collect();
    }
    Ok(degree)
}

/// Degree bound `(2n+1)(n-1)` for `D(m;n)` in `m`.
pub fn d_degree_bound(n: u32) -> usize {
    ((2 * n + 1) * (n - 1)) as usize
}

/// Centered count obtained from the determinants:
/// `2^k * det(upper) * det(lower)` with `k = 2n-2` or `2n-1`.
pub fn centered_count_via_determinants(p: &CenteredProblem) -> Result<ExactInt> {
    let upper = match p.parity() {
        Parity::OddSides => matrix_h_plus(p.n(), p.m())?,
        Parity::EvenSides => matrix_hbar_plus(p.n(), p.m())?,
    };
    let lower = matrix_h_minus(p.n(), p.m())?;
    let value = pow2(p.axis_exponent() as i64) * exact_determinant(&upper)? * exact_determinant(&lower)?;
    expect_integer(value, &format!("determinant route for {p}"))
}

/// Every check in this module for one `(n, m)`, with a label per check.
pub fn determinant_checks(n: u32, m: u32) -> Vec<(String, Result<Verification>)> {
    let mut out = vec![
        (format!("h-plus/n{n:02}/m{m:02}"), check_h_plus(n, m)),
        (format!("h-minus/n{n:02}/m{m:02}"), check_h_minus(n, m)),
        (format!("row-extraction/n{n:02}/m{m:02}"), check_row_extraction(n, m)),
    ];
    if m >= 1 {
        out.push((format!("hbar-plus/n{n:02}/m{m:02}"), check_hbar_plus(n, m)));
    }
    out
}
