//! Periodic continued fractions of `√D` via the PQa recurrence
//!
//! ```text
//!     a_i = floor((s_i + a_0) / t_i)
//!     s_{i+1} = a_i t_i - s_i
//!     t_{i+1} = (D - s_{i+1}^2) / t_i
//! ```
//!
//! starting from `s_0 = 0`, `t_0 = 1`. The state `(s_i, t_i)` is purely
//! periodic from index 1 on, so the period ends at the first index whose
//! state equals `(s_1, t_1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::util::{exact_div, isqrt};
use crate::{Error, Result};

/// One row of the PQa trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PqaStep {
    pub index: usize,
    pub s: BigInt,
    pub t: BigInt,
    pub a: BigInt,
}

/// `√D = [a0; period, period, ...]` with the minimal period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdExpansion {
    pub radicand: BigInt,
    pub a0: BigInt,
    pub period: Vec<BigInt>,
    /// Steps `0..=l` where `l` is the period length. Step `l` has `t = 1` and
    /// `a = 2·a0`.
    pub pqa_trace: Vec<PqaStep>,
}

impl SurdExpansion {
    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// Partial quotient `a_k` of the periodically extended stream.
    pub fn quotient(&self, k: usize) -> &BigInt {
        if k == 0 {
            &self.a0
        } else {
            &self.period[(k - 1) % self.period.len()]
        }
    }

    /// Denominator `t_k` of the periodically extended PQa state. `t_0 = 1`
    /// and `t_k` for `k ≥ 1` repeats with the period.
    pub fn denominator(&self, k: usize) -> &BigInt {
        if k == 0 {
            &self.pqa_trace[0].t
        } else {
            let l = self.period.len();
            &self.pqa_trace[(k - 1) % l + 1].t
        }
    }

    /// True when `other` is this period repeated a whole number of times.
    /// Closed forms found in the literature are not always minimal (`√2`
    /// is sometimes written `[1; 2, 2]`), so they are compared this way.
    pub fn period_matches(&self, other: &[BigInt]) -> bool {
        let l = self.period.len();
        !other.is_empty()
            && other.len() % l == 0
            && other
                .iter()
                .enumerate()
                .all(|(i, a)| *a == self.period[i % l])
    }

    /// Replays the PQa recurrence from the first trace row and checks that it
    /// reproduces every later row and the stored period.
    pub fn replay_matches(&self) -> bool {
        let Some(first) = self.pqa_trace.first() else {
            return false;
        };
        let (mut s, mut t, mut a) = (first.s.clone(), first.t.clone(), first.a.clone());
        for step in &self.pqa_trace[1..] {
            s = &a * &t - &s;
            t = match exact_div(&(&self.radicand - &s * &s), &t, "t") {
                Ok(t) => t,
                Err(_) => return false,
            };
            a = (&s + &self.a0).div_floor(&t);
            if step.s != s || step.t != t || step.a != a {
                return false;
            }
        }
        self.pqa_trace[1..]
            .iter()
            .map(|step| &step.a)
            .eq(self.period.iter())
    }
}

/// `k`-th convergent `p_k / q_k` of `√D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub index: usize,
    pub p: BigInt,
    pub q: BigInt,
}

/// Longest period [`sqrt_cf`] will expand. The trace is kept in memory and
/// the period of `√D` can be of order `√D log D`.
pub const MAX_PERIOD: usize = 1 << 20;

/// Minimal-period continued fraction of `√D` for non-square `D ≥ 2`.
pub fn sqrt_cf(d: &BigInt) -> Result<SurdExpansion> {
    if *d < BigInt::from(2) {
        return Err(Error::InvalidInput(format!(
            "radicand must be at least 2, got {d}"
        )));
    }
    let a0 = isqrt(d);
    if &a0 * &a0 == *d {
        return Err(Error::PerfectSquareInput(d.clone()));
    }

    let mut trace = vec![PqaStep {
        index: 0,
        s: BigInt::zero(),
        t: BigInt::one(),
        a: a0.clone(),
    }];
    let (mut s, mut t, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let mut first_periodic: Option<(BigInt, BigInt)> = None;
    loop {
        s = &a * &t - &s;
        t = exact_div(&(d - &s * &s), &t, "PQa denominator")?;
        if let Some((s1, t1)) = &first_periodic {
            if *s1 == s && *t1 == t {
                break;
            }
        } else {
            first_periodic = Some((s.clone(), t.clone()));
        }
        debug_assert!(t.is_positive());
        if trace.len() > MAX_PERIOD {
            return Err(Error::PeriodTooLong {
                radicand: d.clone(),
                limit: MAX_PERIOD,
            });
        }
        a = (&s + &a0).div_floor(&t);
        trace.push(PqaStep {
            index: trace.len(),
            s: s.clone(),
            t: t.clone(),
            a: a.clone(),
        });
    }

    let period = trace[1..].iter().map(|step| step.a.clone()).collect();
    Ok(SurdExpansion {
        radicand: d.clone(),
        a0,
        period,
        pqa_trace: trace,
    })
}

/// Iterator over convergents `(p_0, q_0), (p_1, q_1), ...` of the periodically
/// extended expansion.
pub struct Convergents<'a> {
    exp: &'a SurdExpansion,
    k: usize,
    p: (BigInt, BigInt),
    q: (BigInt, BigInt),
}

impl Iterator for Convergents<'_> {
    type Item = Convergent;

    fn next(&mut self) -> Option<Convergent> {
        let a = self.exp.quotient(self.k);
        let p = a * &self.p.1 + &self.p.0;
        let q = a * &self.q.1 + &self.q.0;
        self.p = (std::mem::replace(&mut self.p.1, p.clone()), p.clone());
        self.q = (std::mem::replace(&mut self.q.1, q.clone()), q.clone());
        let c = Convergent {
            index: self.k,
            p,
            q,
        };
        self.k += 1;
        Some(c)
    }
}

impl SurdExpansion {
    pub fn convergent_iter(&self) -> Convergents<'_> {
        // p_{-2} = 0, p_{-1} = 1; q_{-2} = 1, q_{-1} = 0
        Convergents {
            exp: self,
            k: 0,
            p: (BigInt::zero(), BigInt::one()),
            q: (BigInt::one(), BigInt::zero()),
        }
    }
}

/// The `k`-th convergent, with `k` absolute over the quotient stream
/// `a0, a1, a2, ...` (so `p_0 = a0`, `q_0 = 1`).
pub fn convergents(exp: &SurdExpansion, k: usize) -> Convergent {
    exp.convergent_iter()
        .nth(k)
        .expect("convergent stream is infinite")
}
