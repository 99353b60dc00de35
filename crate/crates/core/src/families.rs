//! Constructive witness families for `d1 + d2 = δn + ε` with `δ`, `ε` even.
//!
//! Writing `g = gcd(d1, d2)` and `d1·d2 = g(n² + 1)/(2d)`, the substitution
//!
//! ```text
//!     X = (δ²d − 2g)·n + δ·d·ε,    Y = d2 − d1
//! ```
//!
//! turns the divisor condition into the Pellian equation
//!
//! ```text
//!     X² − d(δ²d − 2g)·Y² = 2dg(δ² + ε²) − 4g²
//! ```
//!
//! Each family picks `d` and `g` so that the right-hand side is a perfect
//! square `c²`, then walks solutions of the matching Pell equation and maps
//! them back to `(n, d1, d2)`:
//!
//! | case                     | δ   | ε           | d, g                                 |
//! |--------------------------|-----|-------------|--------------------------------------|
//! | `Delta2EpsMod4`          | 2   | ≡ 0 (mod 4) | d = ε²/8 − ε/2 + 1, g = 1            |
//! | `Delta4Eps6Mod8`         | 4   | ≡ 6 (mod 8) | d = ε²/32 − ε/8 + 5/8, g = 1         |
//! | `Delta4Eps2Mod8`         | 4   | ≡ 2 (mod 8) | 2d − 1 = (4k² + 1)², g = ε²/4 + 4    |
//! | `Delta2Eps0`             | 2   | 0           | d = g = 1, so n² − 2y² = 1           |
//!
//! For `δ = 4k + 2 ≥ 6`, `ε = 0` there are no witnesses; [`theorem3_check`]
//! verifies the continued-fraction and solvability facts behind that and
//! sweeps the oracle for counterexamples.
//!
//! Nothing produced here is trusted: every triple goes through
//! [`WitnessTriple::violations`], and failures are recorded, never dropped.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cf::sqrt_cf;
use crate::oracle::{DivisorOracle, Violation, WitnessTriple};
use crate::pell::{
    fundamental_solution, grelak_solvable, orbit_iter, pell_sequence, PellSolution, PellianSolution,
};
use crate::util::exact_div;
use crate::{Error, Result};

/// Extra indices a generator may try past `count` before giving up.
const MAX_EXTRA_INDICES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyCase {
    Delta2EpsMod4,
    Delta4Eps6Mod8,
    Delta4Eps2Mod8,
    Delta2Eps0,
    NonexistenceDelta4kPlus2,
}

impl FamilyCase {
    pub fn name(self) -> &'static str {
        match self {
            FamilyCase::Delta2EpsMod4 => "delta2-eps0mod4",
            FamilyCase::Delta4Eps6Mod8 => "delta4-eps6mod8",
            FamilyCase::Delta4Eps2Mod8 => "delta4-eps2mod8",
            FamilyCase::Delta2Eps0 => "delta2-eps0",
            FamilyCase::NonexistenceDelta4kPlus2 => "nonexistence-delta4k+2",
        }
    }

    pub fn is_constructive(self) -> bool {
        self != FamilyCase::NonexistenceDelta4kPlus2
    }
}

impl fmt::Display for FamilyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Derived constants of one family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyParams {
    pub case: FamilyCase,
    pub delta: u64,
    pub eps: BigInt,
    /// Auxiliary divisor parameter with `d1·d2 = g(n² + 1)/(2d)`. For the
    /// nonexistence case `d` is swept by [`theorem3_check`] and this holds 1.
    pub d: BigInt,
    pub g: BigInt,
    /// `c` with `X² − DY² = c²`.
    pub scale: BigInt,
    /// `ε = 8k + 2` for `Delta4Eps2Mod8`, `δ = 4k + 2` for the nonexistence
    /// case, 0 otherwise.
    pub k: BigInt,
    pub delta_prime: Option<u64>,
}

impl FamilyParams {
    /// `δ²d − 2g`, the coefficient of `n` in `X`.
    pub fn modulus(&self) -> BigInt {
        BigInt::from(self.delta * self.delta) * &self.d - &self.g * 2
    }

    /// `δ·d·ε`, the constant term of `X`.
    pub fn offset(&self) -> BigInt {
        BigInt::from(self.delta) * &self.d * &self.eps
    }

    /// `D = d(δ²d − 2g)`.
    pub fn radicand(&self) -> BigInt {
        &self.d * self.modulus()
    }

    /// `2dg(δ² + ε²) − 4g²`
    pub fn pellian_rhs(&self) -> BigInt {
        let delta_sq = BigInt::from(self.delta * self.delta);
        BigInt::from(2) * &self.d * &self.g * (delta_sq + &self.eps * &self.eps)
            - BigInt::from(4) * &self.g * &self.g
    }
}

/// Classifies `(δ, ε)` and computes the family constants. Every fractional
/// formula is evaluated with an exactness check.
pub fn derive_params(delta: u64, eps: &BigInt) -> Result<FamilyParams> {
    let parity_err = || Error::ParityViolation {
        delta,
        eps: eps.clone(),
    };
    if delta == 0 {
        return Err(Error::InvalidInput("delta must be positive".into()));
    }
    let eps_mod4 = eps.mod_floor(&BigInt::from(4)).to_u64().unwrap_or(0);
    if delta % 2 == 1 || (delta + 2) % 4 != eps_mod4 {
        return Err(parity_err());
    }

    let e = eps;
    let e2 = e * e;
    let one = BigInt::one();
    let base = |case| FamilyParams {
        case,
        delta,
        eps: eps.clone(),
        d: one.clone(),
        g: one.clone(),
        scale: one.clone(),
        k: BigInt::zero(),
        delta_prime: None,
    };

    let params = match delta {
        2 if eps.is_zero() => FamilyParams {
            scale: BigInt::from(2),
            ..base(FamilyCase::Delta2Eps0)
        },
        2 => FamilyParams {
            d: exact_div(&(&e2 - e * 4 + 8), &BigInt::from(8), "d = e^2/8 - e/2 + 1")?,
            scale: exact_div(&(&e2 - e * 2 + 4), &BigInt::from(2), "(e^2 - 2e + 4)/2")?,
            ..base(FamilyCase::Delta2EpsMod4)
        },
        4 if eps.mod_floor(&BigInt::from(8)) == BigInt::from(6) => FamilyParams {
            d: exact_div(
                &(&e2 - e * 4 + 20),
                &BigInt::from(32),
                "d = e^2/32 - e/8 + 5/8",
            )?,
            scale: exact_div(&(&e2 - e * 2 + 16), &BigInt::from(4), "(e^2 - 2e + 16)/4")?,
            ..base(FamilyCase::Delta4Eps6Mod8)
        },
        4 => {
            let k = exact_div(&(e - 2), &BigInt::from(8), "k = (e - 2)/8")?;
            let g = exact_div(&e2, &BigInt::from(4), "e^2/4")? + 4;
            let e3 = &e2 * e;
            let e4 = &e2 * &e2;
            let d = exact_div(
                &(&e4 - &e3 * 8 + &e2 * 56 - e * 160 + 656),
                &BigInt::from(512),
                "d = e^4/512 - e^3/64 + 7e^2/64 - 5e/16 + 41/32",
            )?;
            let root = &k * &k * 4 + 1;
            if &d * 2 - 1 != &root * &root {
                return Err(Error::Falsification(format!(
                    "2d - 1 = {} is not (4k^2 + 1)^2 = {}",
                    &d * 2 - 1,
                    &root * &root
                )));
            }
            let scale = exact_div(
                &((&e2 + 16) * (&e2 - e * 4 + 20)),
                &BigInt::from(32),
                "(e^2 + 16)(e^2 - 4e + 20)/32",
            )?;
            FamilyParams {
                d,
                g,
                scale,
                k,
                ..base(FamilyCase::Delta4Eps2Mod8)
            }
        }
        _ if delta % 4 == 2 && eps.is_zero() => FamilyParams {
            k: BigInt::from((delta - 2) / 4),
            delta_prime: Some(delta / 2),
            ..base(FamilyCase::NonexistenceDelta4kPlus2)
        },
        _ if delta % 4 == 2 => {
            return Err(Error::UnsupportedCase(format!(
                "delta = {delta} >= 6 is only covered for eps = 0"
            )))
        }
        _ => {
            return Err(Error::UnsupportedCase(format!(
                "delta = {delta} = 0 (mod 4) is only covered for delta = 4"
            )))
        }
    };

    if params.case.is_constructive() && &params.scale * &params.scale != params.pellian_rhs() {
        return Err(Error::Falsification(format!(
            "right-hand side {} is not the square of {}",
            params.pellian_rhs(),
            params.scale
        )));
    }
    Ok(params)
}

/// Why a generator index produced no witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkipReason {
    /// `n ≤ 0` or `d1 ≤ 0`; allowed for small indices.
    NonPositive {
        n: BigInt,
        d1: BigInt,
    },
    CongruenceFailed(String),
    NonIntegral(String),
    IdentityFailed(String),
    Invalid(Vec<Violation>),
}

impl SkipReason {
    /// Everything except a non-positive index contradicts a claimed identity.
    pub fn is_falsification(&self) -> bool {
        !matches!(self, SkipReason::NonPositive { .. })
    }
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkipReason::NonPositive { n, d1 } => write!(f, "non-positive: n = {n}, d1 = {d1}"),
            SkipReason::CongruenceFailed(s) => write!(f, "congruence failed: {s}"),
            SkipReason::NonIntegral(s) => write!(f, "non-integral: {s}"),
            SkipReason::IdentityFailed(s) => write!(f, "identity failed: {s}"),
            SkipReason::Invalid(v) => {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "invalid witness: {}", parts.join("; "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedIndex {
    pub index: usize,
    pub reason: SkipReason,
}

/// Output of one generator run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyRun {
    pub params: FamilyParams,
    /// The Pell unit the family is built on.
    pub unit: PellSolution,
    pub witnesses: Vec<WitnessTriple>,
    /// Pell or orbit index each witness came from.
    pub indices: Vec<usize>,
    pub skipped: Vec<SkippedIndex>,
}

impl FamilyRun {
    fn new(params: FamilyParams, unit: PellSolution) -> Self {
        FamilyRun {
            params,
            unit,
            witnesses: Vec::new(),
            indices: Vec::new(),
            skipped: Vec::new(),
        }
    }

    pub fn has_falsification(&self) -> bool {
        self.skipped.iter().any(|s| s.reason.is_falsification())
    }

    fn skip(&mut self, index: usize, reason: SkipReason) {
        self.skipped.push(SkippedIndex { index, reason });
    }

    fn accept(&mut self, index: usize, w: WitnessTriple) {
        let v = w.violations();
        if v.is_empty() {
            self.witnesses.push(w);
            self.indices.push(index);
        } else {
            self.skip(index, SkipReason::Invalid(v));
        }
    }

    fn done(&self, count: usize, index: usize) -> bool {
        self.witnesses.len() >= count || index > count + MAX_EXTRA_INDICES
    }
}

/// Maps a Pellian point `(X, Y)` back to a witness, or says why it cannot.
fn recover_witness(
    params: &FamilyParams,
    x: &BigInt,
    y: &BigInt,
) -> std::result::Result<WitnessTriple, SkipReason> {
    let modulus = params.modulus();
    let num = x - params.offset();
    let (n, r) = num.div_rem(&modulus);
    if !r.is_zero() {
        return Err(SkipReason::CongruenceFailed(format!(
            "X = {x} is not {} mod {modulus}",
            params.offset()
        )));
    }
    let sum = BigInt::from(params.delta) * &n + &params.eps;
    let (d1, r) = (&sum - y).div_rem(&BigInt::from(2));
    if !r.is_zero() {
        return Err(SkipReason::NonIntegral(format!("d1 = ({sum} - {y})/2")));
    }
    if !n.is_positive() || !d1.is_positive() {
        return Err(SkipReason::NonPositive { n, d1 });
    }
    let d2 = &d1 + y;
    Ok(WitnessTriple {
        n,
        d1,
        d2,
        delta: params.delta,
        eps: params.eps.clone(),
    })
}

/// The `g = 1` families: `X = c·U_m`, `Y = c·V_m` over the Pell sequence of
/// `D = d(δ²d − 2)`, for `m ≥ 1`.
///
/// Works for `Delta2EpsMod4`, `Delta4Eps6Mod8` and also `Delta2Eps0`, where it
/// reproduces [`prop1_witnesses`] by a different route.
pub fn pell_family_witnesses(params: &FamilyParams, count: usize) -> Result<FamilyRun> {
    match params.case {
        FamilyCase::Delta2EpsMod4 | FamilyCase::Delta4Eps6Mod8 | FamilyCase::Delta2Eps0 => {}
        other => {
            return Err(Error::UnsupportedCase(format!(
                "{other} is not a g = 1 Pell family"
            )))
        }
    }
    let unit = fundamental_solution(&params.radicand())?;
    let mut run = FamilyRun::new(params.clone(), unit.clone());
    for (m, sol) in pell_sequence(&unit).enumerate().skip(1) {
        if run.done(count, m) {
            break;
        }
        let x = &params.scale * &sol.x;
        let y = &params.scale * &sol.y;
        match recover_witness(params, &x, &y) {
            Ok(w) => run.accept(m, w),
            Err(reason) => run.skip(m, reason),
        }
    }
    Ok(run)
}

/// `δ = 2`, `ε ≡ 0 (mod 4)`, `ε ≠ 0`.
pub fn theorem1_witnesses(eps: &BigInt, count: usize) -> Result<FamilyRun> {
    let params = derive_params(2, eps)?;
    match params.case {
        FamilyCase::Delta2EpsMod4 => pell_family_witnesses(&params, count),
        FamilyCase::Delta2Eps0 => Err(Error::UnsupportedCase(
            "eps = 0 is generated by prop1_witnesses".into(),
        )),
        _ => unreachable!("delta = 2 classifies into a delta-2 case"),
    }
}

/// `δ = 4`, `ε ≡ 2 (mod 4)`: the `g = 1` Pell family when `ε ≡ 6 (mod 8)`,
/// the `g = ε²/4 + 4` orbit family when `ε ≡ 2 (mod 8)`.
pub fn theorem2_witnesses(eps: &BigInt, count: usize) -> Result<FamilyRun> {
    let params = derive_params(4, eps)?;
    match params.case {
        FamilyCase::Delta4Eps6Mod8 => pell_family_witnesses(&params, count),
        FamilyCase::Delta4Eps2Mod8 => orbit_family_witnesses(&params, count),
        _ => unreachable!("delta = 4 classifies into a delta-4 case"),
    }
}

/// Particular solution `(X0, Y0)` of the `ε ≡ 2 (mod 8)` equation, built from
/// `d1 = g`, `d2 = d1² − 16k·d1`.
pub fn orbit_start(params: &FamilyParams) -> Result<PellianSolution> {
    if params.case != FamilyCase::Delta4Eps2Mod8 {
        return Err(Error::UnsupportedCase(format!(
            "{} has no orbit start",
            params.case
        )));
    }
    let e = &params.eps;
    let e2 = e * e;
    let d1 = params.g.clone();
    let d2 = &d1 * &d1 - &params.k * 16 * &d1;
    let y0 = &d2 - &d1;

    let poly = &e2 * &e2 * &e2 - &e2 * &e2 * e * 16 + &e2 * &e2 * 140 - &e2 * e * 768 + &e2 * 3120
        - e * 8704
        + 14400;
    let x0 = exact_div(&((&e2 + 16) * poly), &BigInt::from(2048), "X0")?;
    let y0_closed = exact_div(&((&e2 + 16) * (&e2 - e * 8 + 28)), &BigInt::from(16), "Y0")?;
    if y0 != y0_closed {
        return Err(Error::Falsification(format!(
            "d2 - d1 = {y0} but the closed form gives Y0 = {y0_closed}"
        )));
    }
    let k2 = &params.k * &params.k;
    let n0 = &k2 * &k2 * 64 + &k2 * 28 + 7;
    if x0 != params.modulus() * &n0 + params.offset() {
        return Err(Error::Falsification(format!(
            "X0 = {x0} does not give n = 64k^4 + 28k^2 + 7 = {n0}"
        )));
    }
    let start = PellianSolution::new(params.radicand(), x0, y0);
    if start.rhs != &params.scale * &params.scale {
        return Err(Error::Falsification(format!(
            "X0^2 - D*Y0^2 = {} is not {}^2",
            start.rhs, params.scale
        )));
    }
    Ok(start)
}

/// `ε ≡ 2 (mod 8)`: walk `(X0 + Y0√D)(U0 + V0√D)^{2i}`, keep the points with
/// `X ≡ 4dε (mod 16d − 2g)`, and accept each recovered triple only if it
/// validates.
pub fn orbit_family_witnesses(params: &FamilyParams, count: usize) -> Result<FamilyRun> {
    let start = orbit_start(params)?;
    let unit = fundamental_solution(&params.radicand())?;
    let mut run = FamilyRun::new(params.clone(), unit.clone());
    let four = BigInt::from(4);
    for (i, point) in orbit_iter(&start, &unit)?.enumerate() {
        if run.done(count, i) {
            break;
        }
        if point.x.mod_floor(&four) != BigInt::from(2) {
            run.skip(
                i,
                SkipReason::CongruenceFailed(format!("X = {} is not 2 mod 4", point.x)),
            );
            continue;
        }
        match recover_witness(params, &point.x, &point.y) {
            Ok(w) => run.accept(i, w),
            Err(reason) => run.skip(i, reason),
        }
    }
    Ok(run)
}

/// `δ = 2`, `ε = 0`: `(n, n − y, n + y)` from `n² − 2y² = 1`, `m ≥ 1`.
pub fn prop1_witnesses(count: usize) -> Result<FamilyRun> {
    let params = derive_params(2, &BigInt::zero())?;
    let unit = fundamental_solution(&BigInt::from(2))?;
    let mut run = FamilyRun::new(params, unit.clone());
    for (m, sol) in pell_sequence(&unit).enumerate().skip(1) {
        if run.done(count, m) {
            break;
        }
        let w = WitnessTriple {
            n: sol.x.clone(),
            d1: &sol.x - &sol.y,
            d2: &sol.x + &sol.y,
            delta: 2,
            eps: BigInt::zero(),
        };
        if !w.gcd().is_one() {
            run.skip(m, SkipReason::IdentityFailed(format!("gcd{w} != 1")));
        } else if &w.d1 * &w.d2 != w.m() {
            run.skip(
                m,
                SkipReason::IdentityFailed(format!("d1*d2 != (n^2+1)/2 for {w}")),
            );
        } else {
            run.accept(m, w);
        }
    }
    Ok(run)
}

/// Generates `count` witnesses for any constructive case.
pub fn generate(params: &FamilyParams, count: usize) -> Result<FamilyRun> {
    match params.case {
        FamilyCase::Delta2EpsMod4 | FamilyCase::Delta4Eps6Mod8 => {
            pell_family_witnesses(params, count)
        }
        FamilyCase::Delta4Eps2Mod8 => orbit_family_witnesses(params, count),
        FamilyCase::Delta2Eps0 => prop1_witnesses(count),
        FamilyCase::NonexistenceDelta4kPlus2 => Err(Error::UnsupportedCase(format!(
            "delta = {} with eps = 0 has no witnesses to generate",
            params.delta
        ))),
    }
}

/// One `d` row of the nonexistence check for `δ = 2δ'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonexistenceRow {
    pub d: u64,
    pub radicand: BigInt,
    pub a0: BigInt,
    pub period: Vec<BigInt>,
    pub expected_period: Vec<BigInt>,
    pub period_ok: bool,
    pub fundamental: (BigInt, BigInt),
    pub expected_fundamental: (BigInt, BigInt),
    pub fundamental_ok: bool,
    /// `a = 2δ'²d − 1`, `b = 2d` in `a·n² − b·y² = 1`.
    pub a: BigInt,
    pub b: BigInt,
    pub solvable: bool,
    /// `4d | 4δ'²d − 2`, which must be false.
    pub divides: bool,
}

impl NonexistenceRow {
    pub fn passed(&self) -> bool {
        self.period_ok && self.fundamental_ok && !self.solvable && !self.divides
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonexistenceReport {
    pub delta: u64,
    pub delta_prime: u64,
    pub d_max: u64,
    pub n_max: u64,
    pub rows: Vec<NonexistenceRow>,
    pub witnesses: Vec<WitnessTriple>,
    pub findings: Vec<String>,
}

impl NonexistenceReport {
    pub fn cf_component_passed(&self) -> bool {
        self.rows.iter().all(|r| r.period_ok && r.fundamental_ok)
    }

    pub fn criterion_component_passed(&self) -> bool {
        self.rows.iter().all(|r| !r.solvable && !r.divides)
    }

    pub fn sweep_component_passed(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }
}

/// Expected period `[1, 2δ' − 2, 1, 2(2dδ' − 1)]` of `√(2d(2δ'²d − 1))`.
pub fn nonexistence_period(d: u64, delta_prime: u64) -> Vec<BigInt> {
    let a0 = BigInt::from(2 * d * delta_prime - 1);
    vec![
        BigInt::one(),
        BigInt::from(2 * delta_prime - 2),
        BigInt::one(),
        a0 * 2,
    ]
}

/// Checks, for `δ = 4k + 2 ≥ 6`:
/// 1. `√(2d(2δ'²d − 1))` has the closed-form period and fundamental solution
///    `(4δ'²d − 1, 2δ')` for every `d ≤ d_max`;
/// 2. `(2δ'²d − 1)n² − 2d·y² = 1` fails the Grelak criterion for every
///    `d ≤ d_max`;
/// 3. the oracle finds no witness with `n ≤ n_max`.
///
/// Mismatches become findings in the report.
pub fn theorem3_check(delta: u64, d_max: u64, n_max: u64) -> Result<NonexistenceReport> {
    theorem3_check_with(&DivisorOracle::default(), delta, d_max, n_max)
}

pub fn theorem3_check_with(
    oracle: &DivisorOracle,
    delta: u64,
    d_max: u64,
    n_max: u64,
) -> Result<NonexistenceReport> {
    if delta % 4 != 2 || delta < 6 {
        return Err(Error::ParityViolation {
            delta,
            eps: BigInt::zero(),
        });
    }
    let dp = delta / 2;
    let mut rows = Vec::new();
    let mut findings = Vec::new();
    for d in 1..=d_max {
        let a = BigInt::from(2 * dp * dp * d - 1);
        let b = BigInt::from(2 * d);
        let radicand = &a * &b;
        let exp = sqrt_cf(&radicand)?;
        let expected_period = nonexistence_period(d, dp);
        let period_ok =
            exp.a0 == BigInt::from(2 * d * dp - 1) && exp.period_matches(&expected_period);
        let fund = fundamental_solution(&radicand)?;
        let expected_fundamental = (BigInt::from(4 * dp * dp * d - 1), BigInt::from(2 * dp));
        let fundamental_ok =
            (&fund.x, &fund.y) == (&expected_fundamental.0, &expected_fundamental.1);
        let grelak = grelak_solvable(&a, &b)?;
        let divides = BigInt::from(4 * dp * dp * d - 2).is_multiple_of(&BigInt::from(4 * d));
        let row = NonexistenceRow {
            d,
            radicand,
            a0: exp.a0.clone(),
            period: exp.period.clone(),
            expected_period,
            period_ok,
            fundamental: (fund.x, fund.y),
            expected_fundamental,
            fundamental_ok,
            a,
            b,
            solvable: grelak.solvable,
            divides,
        };
        if !row.period_ok {
            findings.push(format!(
                "d={d}: period {:?} differs from closed form",
                row.period
            ));
        }
        if !row.fundamental_ok {
            findings.push(format!(
                "d={d}: fundamental solution ({}, {}) differs from closed form",
                row.fundamental.0, row.fundamental.1
            ));
        }
        if row.solvable || row.divides {
            findings.push(format!("d={d}: solvability criterion unexpectedly holds"));
        }
        rows.push(row);
    }
    let witnesses = oracle.search_range(n_max, delta, &BigInt::zero());
    for w in &witnesses {
        findings.push(format!("oracle found witness {w} for delta = {delta}"));
    }
    Ok(NonexistenceReport {
        delta,
        delta_prime: dp,
        d_max,
        n_max,
        rows,
        witnesses,
        findings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleCheck {
    /// The oracle lists this exact pair for this `n`.
    Confirmed,
    /// The oracle ran and did not list it.
    Missing,
    /// `n` exceeds the cap; only the direct validator ran.
    BeyondCap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationEntry {
    pub index: usize,
    pub witness: WitnessTriple,
    pub violations: Vec<Violation>,
    pub oracle: OracleCheck,
    pub gcd: BigInt,
}

impl VerificationEntry {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.oracle != OracleCheck::Missing
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub params: FamilyParams,
    pub n_cap: u64,
    pub entries: Vec<VerificationEntry>,
    pub skipped: Vec<SkippedIndex>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(VerificationEntry::passed)
            && !self.skipped.iter().any(|s| s.reason.is_falsification())
    }
}

/// Generates `count` witnesses, runs the shared validator on each, and for
/// `n ≤ n_cap` asks the oracle whether it finds the same pair at that `n`.
/// Asking [`DivisorOracle::find_pairs`] at one `n` is the same as filtering
/// `search_range(n_cap, δ, ε)` to that `n`.
pub fn verify_family_against_oracle(
    params: &FamilyParams,
    count: usize,
    n_cap: u64,
) -> Result<VerificationReport> {
    verify_family_with(&DivisorOracle::default(), params, count, n_cap)
}

pub fn verify_family_with(
    oracle: &DivisorOracle,
    params: &FamilyParams,
    count: usize,
    n_cap: u64,
) -> Result<VerificationReport> {
    let run = generate(params, count)?;
    let cap = BigInt::from(n_cap);
    let mut entries = Vec::with_capacity(run.witnesses.len());
    for (w, &index) in run.witnesses.iter().zip(&run.indices) {
        let oracle_check = if w.n <= cap {
            let found = oracle.find_pairs(&w.n, w.delta, &w.eps)?;
            if found.contains(w) {
                OracleCheck::Confirmed
            } else {
                OracleCheck::Missing
            }
        } else {
            OracleCheck::BeyondCap
        };
        entries.push(VerificationEntry {
            index,
            witness: w.clone(),
            violations: w.violations(),
            oracle: oracle_check,
            gcd: w.gcd(),
        });
    }
    Ok(VerificationReport {
        params: run.params,
        n_cap,
        entries,
        skipped: run.skipped,
    })
}
