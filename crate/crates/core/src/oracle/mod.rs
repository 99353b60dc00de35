//! Brute-force ground truth: factor `(n² + 1)/2`, list its divisors, and find
//! every divisor pair with a prescribed sum.
//!
//! Nothing here knows about Pell equations or continued fractions, so it can
//! check the constructive families independently.

pub mod factor;

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::{Error, Result};

/// Rho polynomial constant used when nothing else is configured. Runs with
/// the same seed perform the same arithmetic.
pub const DEFAULT_RHO_SEED: u64 = 1;

/// `(n² + 1)/2` with its factorization and full sorted divisor list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorSet {
    pub n: BigInt,
    pub m: BigInt,
    pub factorization: Vec<(BigInt, u32)>,
    pub divisors: Vec<BigInt>,
}

impl DivisorSet {
    pub fn contains(&self, d: &BigInt) -> bool {
        self.divisors.binary_search(d).is_ok()
    }

    /// `∏(e_i + 1)`
    pub fn expected_count(&self) -> usize {
        self.factorization
            .iter()
            .map(|(_, e)| *e as usize + 1)
            .product()
    }
}

/// `(n, d1, d2)` with `d1 + d2 = δn + ε` and both dividing `(n² + 1)/2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WitnessTriple {
    pub n: BigInt,
    pub d1: BigInt,
    pub d2: BigInt,
    pub delta: u64,
    pub eps: BigInt,
}

/// A broken [`WitnessTriple`] invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NonPositive,
    EvenN,
    Unordered,
    NotADivisor { divisor: BigInt },
    WrongSum { expected: BigInt, actual: BigInt },
    NotOneModFour { divisor: BigInt },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonPositive => write!(f, "n, d1 and d2 must be positive"),
            Violation::EvenN => write!(f, "n is even"),
            Violation::Unordered => write!(f, "d1 > d2"),
            Violation::NotADivisor { divisor } => write!(f, "{divisor} does not divide (n^2+1)/2"),
            Violation::WrongSum { expected, actual } => {
                write!(f, "d1 + d2 = {actual}, expected {expected}")
            }
            Violation::NotOneModFour { divisor } => write!(f, "{divisor} is not 1 mod 4"),
        }
    }
}

impl WitnessTriple {
    pub fn m(&self) -> BigInt {
        (&self.n * &self.n + 1u32) / 2u32
    }

    pub fn gcd(&self) -> BigInt {
        self.d1.gcd(&self.d2)
    }

    /// The single validator every witness goes through, whatever produced it.
    /// Checks by direct division, so it is cheap even for huge `n`.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if !self.n.is_positive() || !self.d1.is_positive() || !self.d2.is_positive() {
            out.push(Violation::NonPositive);
            return out;
        }
        if self.n.is_even() {
            out.push(Violation::EvenN);
        }
        if self.d1 > self.d2 {
            out.push(Violation::Unordered);
        }
        let m = self.m();
        for d in [&self.d1, &self.d2] {
            if !m.is_multiple_of(d) {
                out.push(Violation::NotADivisor { divisor: d.clone() });
            }
        }
        let expected = BigInt::from(self.delta) * &self.n + &self.eps;
        let actual = &self.d1 + &self.d2;
        if expected != actual {
            out.push(Violation::WrongSum { expected, actual });
        }
        let four = BigInt::from(4);
        for d in [&self.d1, &self.d2] {
            if !d.mod_floor(&four).is_one() {
                out.push(Violation::NotOneModFour { divisor: d.clone() });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }
}

impl fmt::Display for WitnessTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n, self.d1, self.d2)
    }
}

/// Oracle with an explicit rho seed. The free functions use
/// [`DEFAULT_RHO_SEED`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisorOracle {
    pub rho_seed: u64,
}

impl Default for DivisorOracle {
    fn default() -> Self {
        DivisorOracle {
            rho_seed: DEFAULT_RHO_SEED,
        }
    }
}

fn check_odd(n: &BigInt) -> Result<()> {
    if !n.is_positive() {
        return Err(Error::InvalidInput(format!("n must be positive, got {n}")));
    }
    if n.is_even() {
        return Err(Error::EvenInput(n.clone()));
    }
    Ok(())
}

fn divisors_from(factorization: &[(BigInt, u32)]) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factorization {
        let base_len = divs.len();
        let mut pk = BigInt::one();
        for _ in 0..*e {
            pk *= p;
            for i in 0..base_len {
                divs.push(&divs[i] * &pk);
            }
        }
    }
    divs.sort();
    divs
}

impl DivisorOracle {
    pub fn new(rho_seed: u64) -> Self {
        DivisorOracle { rho_seed }
    }

    pub fn divisor_set(&self, n: &BigInt) -> Result<DivisorSet> {
        check_odd(n)?;
        let m: BigInt = (n * n + 1u32) / 2u32;
        let factorization: Vec<(BigInt, u32)> = factor::factorize(m.magnitude(), self.rho_seed)
            .into_iter()
            .map(|(p, e)| (BigInt::from_biguint(Sign::Plus, p), e))
            .collect();
        let divisors = divisors_from(&factorization);
        Ok(DivisorSet {
            n: n.clone(),
            m,
            factorization,
            divisors,
        })
    }

    /// All pairs `d1 ≤ d2` of divisors of `(n² + 1)/2` with `d1 + d2 = δn + ε`,
    /// by increasing `d1`.
    pub fn find_pairs(&self, n: &BigInt, delta: u64, eps: &BigInt) -> Result<Vec<WitnessTriple>> {
        check_odd(n)?;
        if delta == 0 {
            return Err(Error::InvalidInput("delta must be positive".into()));
        }
        if let (Some(n64), Some(e64)) = (n.to_u64(), eps.to_i64()) {
            if n64 < 1 << 31 {
                return Ok(self.pairs_small(n64, delta, e64));
            }
        }
        let set = self.divisor_set(n)?;
        let target = BigInt::from(delta) * n + eps;
        let mut out = Vec::new();
        for d1 in &set.divisors {
            let twice: BigInt = d1 * 2u32;
            if twice > target {
                break;
            }
            let d2 = &target - d1;
            if set.contains(&d2) {
                out.push(WitnessTriple {
                    n: n.clone(),
                    d1: d1.clone(),
                    d2,
                    delta,
                    eps: eps.clone(),
                });
            }
        }
        Ok(out)
    }

    /// Machine-word version of [`find_pairs`](Self::find_pairs) for
    /// `n < 2^31`, where `(n² + 1)/2` fits in a `u64`.
    fn pairs_small(&self, n: u64, delta: u64, eps: i64) -> Vec<WitnessTriple> {
        let m = (n * n + 1) / 2;
        let target = delta as i128 * n as i128 + eps as i128;
        if target < 2 {
            return Vec::new();
        }
        let mut divs = vec![1u64];
        for (p, e) in factor::factor_u64(m, self.rho_seed) {
            let base_len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..base_len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        let mut out = Vec::new();
        for &d1 in &divs {
            if 2 * d1 as i128 > target {
                break;
            }
            let d2 = target - d1 as i128;
            if d2 <= u64::MAX as i128 && divs.binary_search(&(d2 as u64)).is_ok() {
                out.push(WitnessTriple {
                    n: BigInt::from(n),
                    d1: BigInt::from(d1),
                    d2: BigInt::from(d2),
                    delta,
                    eps: BigInt::from(eps),
                });
            }
        }
        out
    }

    /// `find_pairs` over every odd `n` in `[3, n_max]`, ascending in `n`.
    /// `n = 1` is left out: `(n² + 1)/2 = 1` only admits `d1 = d2 = 1`. The
    /// scan may run in parallel; the output order does not depend on it.
    pub fn search_range(&self, n_max: u64, delta: u64, eps: &BigInt) -> Vec<WitnessTriple> {
        if delta == 0 || n_max < 3 {
            return Vec::new();
        }
        // odd n = 2i + 3
        let count = (n_max - 1) / 2;
        let per_n = |i: u64| {
            self.find_pairs(&BigInt::from(2 * i + 3), delta, eps)
                .expect("odd positive n")
        };
        #[cfg(feature = "parallel")]
        let chunks: Vec<Vec<WitnessTriple>> = {
            use rayon::prelude::*;
            (0..count).into_par_iter().map(per_n).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let chunks: Vec<Vec<WitnessTriple>> = (0..count).map(per_n).collect();
        chunks.into_iter().flatten().collect()
    }
}

pub fn divisor_set(n: &BigInt) -> Result<DivisorSet> {
    DivisorOracle::default().divisor_set(n)
}

pub fn find_pairs(n: &BigInt, delta: u64, eps: &BigInt) -> Result<Vec<WitnessTriple>> {
    DivisorOracle::default().find_pairs(n, delta, eps)
}

pub fn search_range(n_max: u64, delta: u64, eps: &BigInt) -> Vec<WitnessTriple> {
    DivisorOracle::default().search_range(n_max, delta, eps)
}

/// Whether every prime in the factorization is `1 mod 4` and passes a
/// primality check, and the factorization multiplies back to `m`.
pub fn factorization_is_sound(set: &DivisorSet) -> bool {
    let four = BigInt::from(4);
    let product = set
        .factorization
        .iter()
        .fold(BigInt::one(), |acc, (p, e)| acc * p.pow(*e));
    product == set.m
        && set.factorization.iter().all(|(p, _)| {
            p.mod_floor(&four).is_one()
                && factor::is_probable_prime(&p.to_biguint().unwrap_or_default())
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn triples(w: &[WitnessTriple]) -> Vec<(i64, i64, i64)> {
        w.iter()
            .map(|t| {
                (
                    i64::try_from(&t.n).unwrap(),
                    i64::try_from(&t.d1).unwrap(),
                    i64::try_from(&t.d2).unwrap(),
                )
            })
            .collect()
    }

    #[test]
    fn divisor_set_examples() {
        let s = divisor_set(&big(3)).unwrap();
        assert_eq!(s.m, big(5));
        assert_eq!(s.divisors, vec![big(1), big(5)]);

        let s = divisor_set(&big(47)).unwrap();
        assert_eq!(s.m, big(1105));
        assert_eq!(
            s.factorization,
            vec![(big(5), 1), (big(13), 1), (big(17), 1)]
        );
        assert_eq!(s.divisors.len(), 8);

        let s = divisor_set(&big(99)).unwrap();
        assert_eq!(s.m, big(4901));
        assert_eq!(s.factorization, vec![(big(13), 2), (big(29), 1)]);

        let s = divisor_set(&big(1)).unwrap();
        assert_eq!(s.divisors, vec![big(1)]);
        assert!(s.factorization.is_empty());
    }

    #[test]
    fn even_or_nonpositive_n_rejected() {
        assert_eq!(divisor_set(&big(4)), Err(Error::EvenInput(big(4))));
        assert!(matches!(divisor_set(&big(-3)), Err(Error::InvalidInput(_))));
        assert_eq!(
            find_pairs(&big(10), 2, &big(0)),
            Err(Error::EvenInput(big(10)))
        );
    }

    #[test]
    fn find_pairs_examples() {
        assert_eq!(
            triples(&find_pairs(&big(5), 2, &big(4)).unwrap()),
            vec![(5, 1, 13)]
        );
        assert_eq!(
            triples(&find_pairs(&big(7), 4, &big(2)).unwrap()),
            vec![(7, 5, 25)]
        );
        assert!(find_pairs(&big(3), 6, &big(0)).unwrap().is_empty());
        // negative target
        assert!(find_pairs(&big(3), 1, &big(-10)).unwrap().is_empty());
    }

    #[test]
    fn small_and_big_paths_agree() {
        let oracle = DivisorOracle::default();
        for n in (1..3000i64).step_by(2) {
            for (delta, eps) in [(2u64, 0i64), (2, 4), (4, 6), (4, 2), (1, 1), (6, 0)] {
                let small = oracle.pairs_small(n as u64, delta, eps);
                let set = oracle.divisor_set(&big(n)).unwrap();
                let target = big(delta as i64 * n + eps);
                let slow: Vec<WitnessTriple> = set
                    .divisors
                    .iter()
                    .filter(|d1| *d1 * 2 <= target && set.contains(&(&target - *d1)))
                    .map(|d1| WitnessTriple {
                        n: big(n),
                        d1: d1.clone(),
                        d2: &target - d1,
                        delta,
                        eps: big(eps),
                    })
                    .collect();
                assert_eq!(small, slow, "n={n} delta={delta} eps={eps}");
            }
        }
    }

    #[test]
    fn search_range_examples() {
        let w = search_range(100, 2, &big(0));
        assert_eq!(triples(&w), vec![(3, 1, 5), (17, 5, 29), (99, 29, 169)]);
        let w = search_range(10, 4, &big(6));
        assert!(triples(&w).contains(&(9, 1, 41)));
        assert!(search_range(2000, 6, &big(0)).is_empty());
    }

    #[test]
    fn divisor_sets_are_complete_and_sound() {
        for n in (1..4001i64).step_by(2) {
            let s = divisor_set(&big(n)).unwrap();
            assert_eq!(s.divisors.len(), s.expected_count(), "n={n}");
            assert!(s.divisors.iter().all(|d| s.m.is_multiple_of(d)));
            assert!(factorization_is_sound(&s), "n={n}");
        }
        // orbit witness for eps = 2
        let n = big(7_761_607);
        let s = divisor_set(&n).unwrap();
        assert!(factorization_is_sound(&s));
        assert_eq!(s.divisors.len(), s.expected_count());
    }

    #[test]
    fn validator_flags_each_violation() {
        let good = WitnessTriple {
            n: big(17),
            d1: big(5),
            d2: big(29),
            delta: 2,
            eps: big(0),
        };
        assert!(good.is_valid());
        let mut bad = good.clone();
        bad.eps = big(4);
        assert!(matches!(bad.violations()[..], [Violation::WrongSum { .. }]));
        let mut swapped = good.clone();
        std::mem::swap(&mut swapped.d1, &mut swapped.d2);
        assert_eq!(swapped.violations(), vec![Violation::Unordered]);
        let not_div = WitnessTriple {
            n: big(17),
            d1: big(3),
            d2: big(31),
            delta: 2,
            eps: big(0),
        };
        let v = not_div.violations();
        assert!(v.contains(&Violation::NotADivisor { divisor: big(3) }));
        assert!(v.contains(&Violation::NotOneModFour { divisor: big(3) }));
        let even = WitnessTriple {
            n: big(4),
            ..good.clone()
        };
        assert!(even.violations().contains(&Violation::EvenN));
    }
}
