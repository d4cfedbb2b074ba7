//! Closed-form identities for the transformed sequences, their brute-force
//! counterparts, and a grid verifier that reports the first counterexample.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::quadfield::{binet_term, char_roots, QuadElement, Rational};
use crate::recurrences::{k_fibonacci_spec, k_lucas_spec};
use crate::series::{gf_expand, gf_parts, PowerSeries};
use crate::transform::{
    binomial_transform, iterate_transform, iterated_fibonacci_spec, iterated_lucas_spec,
    lemma_step, TransformParams,
};
use crate::{Error, Result};

/// Partial sum `Σ_{i=0}^{n−1} b_i` by literal addition.
pub fn sum_direct(params: &TransformParams, n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::IndexOutOfDomain(n));
    }
    Ok(iterated_lucas_spec(params)
        .terms(n as usize)
        .into_iter()
        .sum())
}

/// Partial sum from the closed form
/// `((r²+kr−1)·b_{n−1} − b_n − k − 2r + 2) / (r²+kr−k−2r)`.
pub fn sum_closed_form(params: &TransformParams, n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::IndexOutOfDomain(n));
    }
    let (k, r) = (params.k(), params.r());
    // r²+kr−k−2r = det − trace + 1 vanishes exactly when λ = 1 is a root
    let den: BigInt = params.det() - params.trace() + 1;
    if den.is_zero() {
        return Err(Error::DegenerateDenominator { k, r });
    }
    let spec = iterated_lucas_spec(params);
    let num: BigInt =
        params.det() * spec.term_at(n - 1) - spec.term_at(n) - k - BigInt::from(2) * r + 2;
    let (q, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "closed-form sum for k={k}, r={r}, n={n} leaves remainder {rem}"
        )));
    }
    Ok(q)
}

/// `b_n = c_{n+1} − (r²+kr−1)·c_{n−1}` for `n ≥ 1`, where `c` is the
/// transformed k-Fibonacci sequence.
pub fn lucas_from_fibonacci(params: &TransformParams, n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::IndexOutOfDomain(n));
    }
    let c = iterated_fibonacci_spec(params);
    Ok(c.term_at(n + 1) - params.det() * c.term_at(n - 1))
}

/// The catalog of checkable identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityId {
    OracleLucas,
    OracleFibonacci,
    Lemma,
    Binet,
    Gf,
    Sum,
    Relation,
    B2ClosedForm,
    SpecializeR1,
}

impl IdentityId {
    pub const ALL: [IdentityId; 9] = [
        IdentityId::OracleLucas,
        IdentityId::OracleFibonacci,
        IdentityId::Lemma,
        IdentityId::Binet,
        IdentityId::Gf,
        IdentityId::Sum,
        IdentityId::Relation,
        IdentityId::B2ClosedForm,
        IdentityId::SpecializeR1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::OracleLucas => "oracle-lucas",
            IdentityId::OracleFibonacci => "oracle-fibonacci",
            IdentityId::Lemma => "lemma",
            IdentityId::Binet => "binet",
            IdentityId::Gf => "gf",
            IdentityId::Sum => "sum",
            IdentityId::Relation => "relation",
            IdentityId::B2ClosedForm => "b2-closed-form",
            IdentityId::SpecializeR1 => "specialize-r1",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_owned()))
    }
}

/// Grid of `(k, r, n)` points; `k = 0` is skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub k: RangeInclusive<i64>,
    pub r: RangeInclusive<u64>,
    pub n_max: u64,
}

impl Grid {
    pub fn new(k: RangeInclusive<i64>, r: RangeInclusive<u64>, n_max: u64) -> Self {
        Grid { k, r, n_max }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub k: i64,
    pub r: u64,
    pub n: u64,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: IdentityId,
    pub grid: Grid,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
    pub first_counterexample: Option<Counterexample>,
}

impl VerificationReport {
    pub fn is_success(&self) -> bool {
        self.failed == 0
    }

    /// Structured form; every number is a decimal string.
    pub fn to_json(&self) -> Value {
        let g = &self.grid;
        json!({
            "identity": self.identity.name(),
            "grid": {
                "k": [g.k.start().to_string(), g.k.end().to_string()],
                "r": [g.r.start().to_string(), g.r.end().to_string()],
                "n_max": g.n_max.to_string(),
            },
            "passed": self.passed.to_string(),
            "failed": self.failed.to_string(),
            "skipped": self.skipped.to_string(),
            "counterexample": self.first_counterexample.as_ref().map(|c| json!({
                "k": c.k.to_string(),
                "r": c.r.to_string(),
                "n": c.n.to_string(),
                "expected": c.expected,
                "actual": c.actual,
            })),
        })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.grid;
        writeln!(f, "identity: {}", self.identity)?;
        writeln!(
            f,
            "grid: k={}..{} r={}..{} n_max={}",
            g.k.start(),
            g.k.end(),
            g.r.start(),
            g.r.end(),
            g.n_max
        )?;
        writeln!(f, "passed: {}", self.passed)?;
        writeln!(f, "failed: {}", self.failed)?;
        writeln!(f, "skipped: {}", self.skipped)?;
        match &self.first_counterexample {
            None => writeln!(f, "counterexample: none"),
            Some(c) => writeln!(
                f,
                "counterexample: k={} r={} n={} expected={} actual={}",
                c.k, c.r, c.n, c.expected, c.actual
            ),
        }
    }
}

enum Outcome {
    Pass,
    Fail { expected: String, actual: String },
    Skip,
}

fn compare(expected: &BigInt, actual: Result<BigInt>) -> Outcome {
    match actual {
        Ok(a) if &a == expected => Outcome::Pass,
        Ok(a) => Outcome::Fail {
            expected: expected.to_string(),
            actual: a.to_string(),
        },
        Err(Error::DegenerateDenominator { .. }) => Outcome::Skip,
        Err(e) => Outcome::Fail {
            expected: expected.to_string(),
            actual: e.to_string(),
        },
    }
}

/// Runs `identity` at every point of `grid`.
pub fn verify_grid(identity: IdentityId, grid: &Grid) -> Result<VerificationReport> {
    verify_grid_perturbed(identity, grid, &BigInt::zero())
}

/// Test hook: as [`verify_grid`], with `delta` added to the closed-form side
/// of every comparison so the failure path can be exercised.
pub fn verify_grid_perturbed(
    identity: IdentityId,
    grid: &Grid,
    delta: &BigInt,
) -> Result<VerificationReport> {
    if grid.k.clone().all(|k| k == 0) || grid.r.is_empty() {
        return Err(Error::EmptyRange);
    }
    let mut report = VerificationReport {
        identity,
        grid: grid.clone(),
        passed: 0,
        failed: 0,
        skipped: 0,
        first_counterexample: None,
    };
    for k in grid.k.clone().filter(|&k| k != 0) {
        for r in grid.r.clone() {
            let params = TransformParams::new(k, r)?;
            for (n, outcome) in check_column(identity, &params, grid.n_max, delta)? {
                match outcome {
                    Outcome::Pass => report.passed += 1,
                    Outcome::Skip => report.skipped += 1,
                    Outcome::Fail { expected, actual } => {
                        report.failed += 1;
                        report.first_counterexample.get_or_insert(Counterexample {
                            k,
                            r,
                            n,
                            expected,
                            actual,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

fn check_column(
    identity: IdentityId,
    params: &TransformParams,
    n_max: u64,
    delta: &BigInt,
) -> Result<Vec<(u64, Outcome)>> {
    let (k, r) = (params.k(), params.r());
    let len = n_max as usize + 1;
    let perturbed = |x: BigInt| x + delta;
    let out = match identity {
        IdentityId::OracleLucas | IdentityId::OracleFibonacci => {
            let (base, spec) = if identity == IdentityId::OracleLucas {
                (k_lucas_spec(k)?, iterated_lucas_spec(params))
            } else {
                (k_fibonacci_spec(k)?, iterated_fibonacci_spec(params))
            };
            let brute = iterate_transform(&base.terms(len), r);
            brute
                .iter()
                .zip(spec.terms(len))
                .enumerate()
                .map(|(n, (e, a))| (n as u64, compare(e, Ok(perturbed(a)))))
                .collect()
        }
        IdentityId::Lemma => {
            if r == 0 {
                (0..=n_max).map(|n| (n, Outcome::Skip)).collect()
            } else {
                let lower = iterate_transform(&k_lucas_spec(k)?.terms(len + 1), r - 1);
                let upper = binomial_transform(&lower);
                let expected = iterated_lucas_spec(params).terms(len + 1);
                (0..len)
                    .map(|n| {
                        let step = lemma_step(&upper, &lower, n).map(perturbed);
                        (n as u64, compare(&expected[n + 1], step))
                    })
                    .collect()
            }
        }
        IdentityId::Binet => {
            let expected = iterated_lucas_spec(params).terms(len);
            (0..=n_max)
                .map(|n| {
                    (
                        n,
                        compare(&expected[n as usize], binet_term(params, n).map(perturbed)),
                    )
                })
                .collect()
        }
        IdentityId::Gf => {
            let expected = iterated_lucas_spec(params).terms(len);
            gf_expand(params, len)?
                .into_iter()
                .zip(&expected)
                .enumerate()
                .map(|(n, (c, e))| (n as u64, compare(e, integral(c, params, n).map(perturbed))))
                .collect()
        }
        IdentityId::Sum => (1..=n_max)
            .map(|n| {
                let direct = sum_direct(params, n)?;
                Ok((
                    n,
                    compare(&direct, sum_closed_form(params, n).map(perturbed)),
                ))
            })
            .collect::<Result<_>>()?,
        IdentityId::Relation => {
            let spec = iterated_lucas_spec(params);
            (1..=n_max)
                .map(|n| {
                    let rel = lucas_from_fibonacci(params, n).map(perturbed);
                    (n, compare(&spec.term_at(n), rel))
                })
                .collect()
        }
        IdentityId::B2ClosedForm => {
            let (kb, rb) = (BigInt::from(k), BigInt::from(r));
            let closed = [
                BigInt::from(2),
                BigInt::from(2) * &rb + &kb,
                &kb * &kb + BigInt::from(2) * &rb * &kb + BigInt::from(2) * &rb * &rb + 2,
            ];
            let terms = iterated_lucas_spec(params).terms(3);
            (0..=n_max.min(2))
                .map(|n| {
                    let i = n as usize;
                    (n, compare(&terms[i], Ok(perturbed(closed[i].clone()))))
                })
                .collect()
        }
        IdentityId::SpecializeR1 => {
            if r != 1 {
                (1..=n_max).map(|n| (n, Outcome::Skip)).collect()
            } else {
                specialize_r1_column(params, n_max, delta)?
            }
        }
    };
    Ok(out)
}

fn integral(c: Rational, params: &TransformParams, n: usize) -> Result<BigInt> {
    if c.is_integer() {
        Ok(c.to_integer())
    } else {
        Err(Error::InternalInconsistency(format!(
            "coefficient {n} for k={}, r={} is {c}",
            params.k(),
            params.r()
        )))
    }
}

/// The `r = 1` forms: `Σ_{i<n} b_i = b_n − k·b_{n−1} + k`,
/// `b_n = c_{n+1} − k·c_{n−1}`, the generating function
/// `(2 − (2+k)x)/(1 − (2+k)x + kx²)`, and `λ₁ = (k+2+√(k²+4))/2`.
fn specialize_r1_column(
    params: &TransformParams,
    n_max: u64,
    delta: &BigInt,
) -> Result<Vec<(u64, Outcome)>> {
    let k = BigInt::from(params.k());
    let len = n_max as usize + 2;
    let b = iterated_lucas_spec(params).terms(len);
    let c = iterated_fibonacci_spec(params).terms(len);

    let order = n_max as usize + 1;
    let k2: BigInt = &k + 2;
    let num = PowerSeries::from_integers([BigInt::from(2), -&k2], order)?;
    let den = PowerSeries::from_integers([BigInt::from(1), -&k2, k.clone()], order)?;
    let gf = num.mul(&den.inverse()?)?;
    let (general_num, general_den) = gf_parts(params, order)?;

    let half = Rational::new(1.into(), 2.into());
    let displayed_root = QuadElement::new(Rational::from_integer(k2) * &half, half, params.disc())?;
    let roots_match = char_roots(params).0 == displayed_root;

    let mut out = Vec::new();
    for n in 1..=n_max {
        let i = n as usize;
        let direct: BigInt = b[..i].iter().sum();
        let checks = [
            (direct, &b[i] - &k * &b[i - 1] + &k),
            (b[i].clone(), &c[i + 1] - &k * &c[i - 1]),
            (b[i].clone(), integral(gf.coeffs()[i].clone(), params, i)?),
        ];
        let mut outcome = Outcome::Pass;
        for (expected, actual) in checks {
            if let o @ Outcome::Fail { .. } = compare(&expected, Ok(actual + delta)) {
                outcome = o;
                break;
            }
        }
        if matches!(outcome, Outcome::Pass)
            && (general_num != num || general_den != den || !roots_match)
        {
            outcome = Outcome::Fail {
                expected: "specialized r=1 generating function and root".into(),
                actual: "general form differs".into(),
            };
        }
        out.push((n, outcome));
    }
    Ok(out)
}
