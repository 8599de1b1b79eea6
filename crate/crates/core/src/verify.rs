//! Named verification suites and their reports.
//!
//! Every case compares two independently computed values. Cases that run
//! into a search budget are reported as skipped, never as passed.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::check::Verification;
use crate::closed_forms::{
    centered_count, check_s_product, q_ratio, wz_certificate_check, CenteredProblem, Parity,
};
use crate::error::{Error, Result};
use crate::exact::{integer, pow2, rational};
use crate::gv;
use crate::hypergeometric::{arcsin_2f1_check, bailey_forms, chu_vandermonde_check, pfaff_saalschutz_check};
use crate::lattice::{build_hexagon, build_punctured, central_lozenge, split_at_axis};
use crate::matrix::exact_determinant;
use crate::tiling::{count_path_families, count_tilings, count_tilings_containing, weighted_count, Budget, PathFamilySpec};
use crate::ExactRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    All,
    Theorems,
    Determinants,
    Identities,
    Wz,
    Factorization,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["all", "theorems", "determinants", "identities", "wz", "factorization"];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "theorems" => Suite::Theorems,
            "determinants" => Suite::Determinants,
            "identities" => Suite::Identities,
            "wz" => Suite::Wz,
            "factorization" => Suite::Factorization,
            _ => return Err(Error::Domain(format!("unknown suite {s:?}"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = *self as usize;
        f.write_str(Suite::NAMES[i])
    }
}

/// Grid limits and randomness for a run. `max_n` and `max_m` only shrink
/// the built-in ranges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SuiteConfig {
    pub max_n: Option<u32>,
    pub max_m: Option<u32>,
    pub seed: u64,
    pub budget: Budget,
    pub timing: bool,
}

impl SuiteConfig {
    fn n_up_to(&self, default: u32) -> u32 {
        self.max_n.map_or(default, |k| k.min(default))
    }

    fn m_up_to(&self, default: u32) -> u32 {
        self.max_m.map_or(default, |k| k.min(default))
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub status: CaseStatus,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CaseResult {
    fn from_check(id: String, v: Result<Verification>) -> Self {
        match v {
            Ok(v) => CaseResult {
                id,
                status: if v.holds { CaseStatus::Pass } else { CaseStatus::Fail },
                lhs: v.lhs,
                rhs: v.rhs,
                note: None,
            },
            Err(e) => {
                let status = match e {
                    Error::Resource { .. } => CaseStatus::Skipped,
                    _ => CaseStatus::Fail,
                };
                CaseResult {
                    id,
                    status,
                    lhs: "unavailable".into(),
                    rhs: "unavailable".into(),
                    note: Some(e.to_string()),
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Totals {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    /// As a string: seeds may exceed the integer range JSON readers keep exact.
    #[serde(serialize_with = "as_string")]
    pub seed: u64,
    pub cases: Vec<CaseResult>,
    pub totals: Totals,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.totals.fail == 0
    }

    /// `0` all pass, `1` any failure, `3` skips without failures.
    pub fn exit_code(&self) -> i32 {
        if self.totals.fail > 0 {
            1
        } else if self.totals.skipped > 0 {
            3
        } else {
            0
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| c.status == CaseStatus::Fail)
    }
}

fn as_string<S: serde::Serializer>(v: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

type Cases = Vec<CaseResult>;

fn push(cases: &mut Cases, id: String, v: Result<Verification>) {
    cases.push(CaseResult::from_check(id, v));
}

fn parity_tag(p: Parity) -> &'static str {
    match p {
        Parity::OddSides => "odd",
        Parity::EvenSides => "even",
    }
}

/// Brute-force centered counts at desk scale for one parity.
pub const ODD_ORACLE_CASES: [(u32, u32); 7] = [(1, 0), (1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3)];
pub const EVEN_ORACLE_CASES: [(u32, u32); 4] = [(1, 1), (1, 2), (1, 3), (2, 1)];

pub fn centered_oracle_check(p: &CenteredProblem, budget: &Budget) -> Result<Verification> {
    let h = p.hexagon();
    let oracle = count_tilings_containing(&build_hexagon(&h), &central_lozenge(&h)?, budget)?;
    Ok(Verification::compare(&oracle, &centered_count(p)?))
}

pub fn composition_check(p: &CenteredProblem) -> Result<Verification> {
    Ok(Verification::compare(&gv::centered_count_via_determinants(p)?, &centered_count(p)?))
}

/// `L(punctured) = 2^k L(upper) L*(lower)`.
pub fn factorization_check(p: &CenteredProblem, budget: &Budget) -> Result<Verification> {
    let whole = count_tilings(&build_punctured(&p.hexagon())?, budget)?;
    let s = split_at_axis(p)?;
    let upper = count_tilings(&s.upper, budget)?;
    let lower = weighted_count(&s.lower, budget)?;
    let rhs = pow2(s.k as i64) * ExactRational::from_integer(upper) * lower;
    Ok(Verification::compare(&ExactRational::from_integer(whole), &rhs))
}

fn theorems(cfg: &SuiteConfig, cases: &mut Cases) {
    let odd = ODD_ORACLE_CASES.iter().map(|&(n, m)| CenteredProblem::odd(n, m));
    let even = EVEN_ORACLE_CASES.iter().map(|&(n, m)| CenteredProblem::even(n, m));
    for p in odd.chain(even) {
        let p = p.expect("valid oracle case");
        if p.n() > cfg.n_up_to(2) || p.m() > cfg.m_up_to(3) {
            continue;
        }
        let id = format!("centered/{}/n{:02}/m{:02}", parity_tag(p.parity()), p.n(), p.m());
        push(cases, id, centered_oracle_check(&p, &cfg.budget));
    }
}

fn determinants(cfg: &SuiteConfig, cases: &mut Cases) {
    for n in 1..=cfg.n_up_to(8) {
        for m in 0..=cfg.m_up_to(8) {
            push(cases, format!("h-plus/n{n:02}/m{m:02}"), gv::check_h_plus(n, m));
            if n <= 7 && m >= 1 {
                push(cases, format!("hbar-plus/n{n:02}/m{m:02}"), gv::check_hbar_plus(n, m));
            }
            if n <= 6 {
                push(cases, format!("h-minus/n{n:02}/m{m:02}"), gv::check_h_minus(n, m));
                push(cases, format!("row-extraction/n{n:02}/m{m:02}"), gv::check_row_extraction(n, m));
            }
        }
    }
    for n in 1..=cfg.n_up_to(6) {
        for m in 0..=cfg.m_up_to(6) {
            for p in [CenteredProblem::odd(n, m), CenteredProblem::even(n, m)].into_iter().flatten() {
                let id = format!("composition/{}/n{n:02}/m{m:02}", parity_tag(p.parity()));
                push(cases, id, composition_check(&p));
            }
        }
    }
    for n in 1..=cfg.n_up_to(2) {
        for m in 0..=cfg.m_up_to(3) {
            let mut families = vec![
                ("upper-odd", PathFamilySpec::upper_odd(n, m), gv::matrix_h_plus(n, m)),
                ("lower", PathFamilySpec::lower(n, m), gv::matrix_h_minus(n, m)),
            ];
            if m >= 1 {
                families.push(("upper-even", PathFamilySpec::upper_even(n, m), gv::matrix_hbar_plus(n, m)));
            }
            for (tag, spec, matrix) in families {
                let v = matrix.and_then(|mx| {
                    let det = exact_determinant(&mx)?;
                    Ok(Verification::compare(&count_path_families(&spec, &cfg.budget)?, &det))
                });
                push(cases, format!("paths/{tag}/n{n:02}/m{m:02}"), v);
            }
        }
    }
}

fn random_rational(rng: &mut ChaCha8Rng, span: i64) -> ExactRational {
    rational(rng.gen_range(-span..=span), rng.gen_range(1..=3))
}

fn identities(cfg: &SuiteConfig, cases: &mut Cases) {
    let mut rng = cfg.rng(1);
    for t in 0..100 {
        let size = rng.gen_range(1..=6usize);
        let mut draw = |k: usize| (0..k).map(|_| integer(rng.gen_range(-10..=10))).collect::<Vec<_>>();
        let (x, a, b) = (draw(size), draw(size - 1), draw(size - 1));
        let v = gv::ProductDeterminantInput::new(x, a, b).and_then(|inp| gv::product_determinant_check(&inp));
        push(cases, format!("product-determinant/{t:03}"), v);
    }

    let mut rng = cfg.rng(2);
    let mut done = 0;
    while done < 200 {
        let (a, c) = (random_rational(&mut rng, 20), random_rational(&mut rng, 20));
        let big_n = rng.gen_range(0..=12);
        if let v @ Ok(_) = chu_vandermonde_check(&a, &c, big_n) {
            push(cases, format!("chu-vandermonde/{done:03}"), v);
            done += 1;
        }
    }

    let mut rng = cfg.rng(3);
    let mut done = 0;
    while done < 200 {
        let (a, b, c) = (random_rational(&mut rng, 12), random_rational(&mut rng, 12), random_rational(&mut rng, 12));
        let big_n = rng.gen_range(0..=8);
        if let v @ Ok(_) = pfaff_saalschutz_check(&a, &b, &c, big_n) {
            push(cases, format!("pfaff-saalschutz/{done:03}"), v);
            done += 1;
        }
    }

    let mut rng = cfg.rng(4);
    for n in 1..=cfg.n_up_to(5) {
        for t in 0..20 {
            let m = random_rational(&mut rng, 15);
            push(cases, format!("d-symmetry/n{n:02}/{t:02}"), gv::check_d_symmetry(n, &m));
            let m = random_rational(&mut rng, 15);
            push(cases, format!("d-closed-form/n{n:02}/{t:02}"), gv::check_d_closed_form(n, &m));
        }
    }

    for n in 1..=cfg.n_up_to(12) {
        for e in 0..n {
            push(cases, format!("negative-point-sum/n{n:02}/e{e:02}"), gv::check_negative_point_sum(n, e));
        }
    }

    for n in 1..=cfg.n_up_to(4) {
        let bound = gv::d_degree_bound(n);
        let v = gv::d_interpolated_degree(n, bound + 4).map(|d| {
            let degree = d.map_or(-1, |d| d as i64);
            Verification {
                lhs: format!("degree {degree}"),
                rhs: format!("at most {bound}"),
                holds: degree <= bound as i64,
            }
        });
        push(cases, format!("d-degree/n{n:02}"), v);
    }

    for m in 1..=cfg.m_up_to(6) {
        for n in 2..=cfg.n_up_to(6) {
            let v = bailey_forms(m, n).map(|f| Verification {
                holds: f.agree(),
                lhs: f.direct,
                rhs: format!("{} | {}", f.reversed, f.transformed),
            });
            push(cases, format!("bailey/m{m:02}/n{n:02}"), v);
        }
    }

    for (t, z) in [0.05, 0.25, 0.5, 0.75, 0.9].into_iter().enumerate() {
        let v = arcsin_2f1_check(z, 1e-10).map(|c| Verification {
            lhs: format!("{:.15e}", c.series),
            rhs: format!("{:.15e}", c.closed_form),
            holds: c.holds,
        });
        push(cases, format!("arcsin/{t:02}"), v);
    }
}

fn wz(cfg: &SuiteConfig, cases: &mut Cases) {
    for n in 1..=cfg.n_up_to(50) {
        let v = q_ratio(n, n).map(|q| Verification::compare(&q, &rational(1, 3)));
        push(cases, format!("one-third/n{n:02}"), v);
        push(cases, format!("s-product/n{n:02}"), check_s_product(n));
        let v = wz_certificate_check(n).map(|c| {
            let lhs = match c.mismatches.first() {
                Some(w) => format!("i={}: {}", w.i, w.lhs),
                None => c.recurrence.lhs.clone(),
            };
            let rhs = match c.mismatches.first() {
                Some(w) => format!("i={}: {}", w.i, w.rhs),
                None => c.recurrence.rhs.clone(),
            };
            Verification { holds: c.passed(), lhs, rhs }
        });
        push(cases, format!("wz-certificate/n{n:02}"), v);
    }
}

fn factorization(cfg: &SuiteConfig, cases: &mut Cases) {
    for n in 1..=cfg.n_up_to(2) {
        for m in 0..=cfg.m_up_to(2) {
            for p in [CenteredProblem::odd(n, m), CenteredProblem::even(n, m)].into_iter().flatten() {
                let id = format!("factorization/{}/n{n:02}/m{m:02}", parity_tag(p.parity()));
                push(cases, id, factorization_check(&p, &cfg.budget));
            }
            if m >= 1 {
                let v = (|| {
                    let odd = split_at_axis(&CenteredProblem::odd(n, m)?)?.lower.normalized();
                    let even = split_at_axis(&CenteredProblem::even(n, m)?)?.lower.normalized();
                    Ok(Verification {
                        holds: odd == even,
                        lhs: odd.to_json(),
                        rhs: even.to_json(),
                    })
                })();
                push(cases, format!("shared-lower/n{n:02}/m{m:02}"), v);
            }
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> VerificationReport {
    let start = Instant::now();
    let mut cases = Vec::new();
    let parts: &[fn(&SuiteConfig, &mut Cases)] = match suite {
        Suite::All => &[theorems, determinants, identities, wz, factorization],
        Suite::Theorems => &[theorems],
        Suite::Determinants => &[determinants],
        Suite::Identities => &[identities],
        Suite::Wz => &[wz],
        Suite::Factorization => &[factorization],
    };
    for part in parts {
        part(cfg, &mut cases);
    }
    cases.sort_by(|a, b| a.id.cmp(&b.id));
    let mut totals = Totals::default();
    for c in &cases {
        match c.status {
            CaseStatus::Pass => totals.pass += 1,
            CaseStatus::Fail => totals.fail += 1,
            CaseStatus::Skipped => totals.skipped += 1,
        }
    }
    VerificationReport {
        suite,
        seed: cfg.seed,
        cases,
        totals,
        wall_time_s: cfg.timing.then(|| start.elapsed().as_secs_f64()),
    }
}
