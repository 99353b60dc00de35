//! Pell equations `x² − Dy² = 1`, Pellian orbits of `X² − DY² = N`, and the
//! Grelak solvability test for `ax² − by² = 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cf::{convergents, sqrt_cf};
use crate::util::{exact_sqrt, is_perfect_square};
use crate::{Error, Result};

/// A point on `x² − Dy² = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub radicand: BigInt,
    pub x: BigInt,
    pub y: BigInt,
}

impl PellSolution {
    pub fn identity(radicand: &BigInt) -> Self {
        PellSolution {
            radicand: radicand.clone(),
            x: BigInt::one(),
            y: BigInt::zero(),
        }
    }

    pub fn norm(&self) -> BigInt {
        &self.x * &self.x - &self.radicand * &self.y * &self.y
    }

    /// `(x + y√D)²`
    pub fn squared(&self) -> PellSolution {
        PellSolution {
            radicand: self.radicand.clone(),
            x: &self.x * &self.x + &self.radicand * &self.y * &self.y,
            y: BigInt::from(2) * &self.x * &self.y,
        }
    }
}

/// A point on `X² − DY² = N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellianSolution {
    pub radicand: BigInt,
    pub rhs: BigInt,
    pub x: BigInt,
    pub y: BigInt,
}

impl PellianSolution {
    pub fn new(radicand: BigInt, x: BigInt, y: BigInt) -> Self {
        let rhs = &x * &x - &radicand * &y * &y;
        PellianSolution {
            radicand,
            rhs,
            x,
            y,
        }
    }

    pub fn is_valid(&self) -> bool {
        &self.x * &self.x - &self.radicand * &self.y * &self.y == self.rhs
    }

    /// `(X + Y√D)(u + v√D)`
    pub fn mul_unit(&self, unit: &PellSolution) -> PellianSolution {
        PellianSolution {
            radicand: self.radicand.clone(),
            rhs: self.rhs.clone(),
            x: &self.x * &unit.x + &self.radicand * &self.y * &unit.y,
            y: &self.x * &unit.y + &self.y * &unit.x,
        }
    }
}

/// Result of the Grelak test on `ax² − by² = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrelakInstance {
    pub a: BigInt,
    pub b: BigInt,
    pub u0: BigInt,
    pub v0: BigInt,
    pub solvable: bool,
    pub witness: Option<(BigInt, BigInt)>,
}

/// Least positive solution of `x² − Dy² = 1`.
///
/// With period length `l` this is convergent `l − 1` when `l` is even and
/// convergent `2l − 1` when `l` is odd.
pub fn fundamental_solution(d: &BigInt) -> Result<PellSolution> {
    let exp = sqrt_cf(d)?;
    let l = exp.period_len();
    let k = if l % 2 == 0 { l - 1 } else { 2 * l - 1 };
    let c = convergents(&exp, k);
    let sol = PellSolution {
        radicand: d.clone(),
        x: c.p,
        y: c.q,
    };
    if !sol.norm().is_one() {
        return Err(Error::Falsification(format!(
            "convergent {k} of sqrt({d}) is not a Pell solution"
        )));
    }
    Ok(sol)
}

/// `m`-th solution `(x_m, y_m)` with `x_m + y_m√D = (x_1 + y_1√D)^m`, built
/// from `x_{m+2} = 2·x_1·x_{m+1} − x_m` (same for `y`).
pub fn iterate_pell(fund: &PellSolution, m: usize) -> PellSolution {
    let mut seq = pell_sequence(fund);
    seq.nth(m).expect("Pell sequence is infinite")
}

/// Solutions `(x_0, y_0) = (1, 0), (x_1, y_1) = fund, ...` in order.
pub(crate) fn pell_sequence(fund: &PellSolution) -> impl Iterator<Item = PellSolution> + '_ {
    let two_x1 = BigInt::from(2) * &fund.x;
    let mut prev = (BigInt::one(), BigInt::zero());
    let mut cur = (fund.x.clone(), fund.y.clone());
    std::iter::from_fn(move || {
        let next = (&two_x1 * &cur.0 - &prev.0, &two_x1 * &cur.1 - &prev.1);
        let out = std::mem::replace(&mut prev, std::mem::replace(&mut cur, next));
        Some(PellSolution {
            radicand: fund.radicand.clone(),
            x: out.0,
            y: out.1,
        })
    })
}

/// Decides solvability of `ax² − by² = 1` (`a > 1`, `gcd(a, b) = 1`, `ab`
/// non-square) from the fundamental solution `(u0, v0)` of `u² − ab·v² = 1`:
/// solvable iff `2a | u0 + 1` and `2b | u0 − 1`. When solvable the witness is
/// `x = √((u0 + 1)/2a)`, `y = √((u0 − 1)/2b)`.
pub fn grelak_solvable(a: &BigInt, b: &BigInt) -> Result<GrelakInstance> {
    if *a <= BigInt::one() {
        return Err(Error::PreconditionViolation(format!(
            "a must exceed 1, got {a}"
        )));
    }
    if !b.is_positive() {
        return Err(Error::PreconditionViolation(format!(
            "b must be positive, got {b}"
        )));
    }
    if !a.gcd(b).is_one() {
        return Err(Error::PreconditionViolation(format!("gcd({a}, {b}) != 1")));
    }
    let d = a * b;
    if is_perfect_square(&d) {
        return Err(Error::PreconditionViolation(format!(
            "a*b = {d} is a perfect square"
        )));
    }
    let fund = fundamental_solution(&d)?;
    let (u0, v0) = (fund.x, fund.y);
    let two_a = BigInt::from(2) * a;
    let two_b = BigInt::from(2) * b;
    let plus: BigInt = &u0 + 1;
    let minus: BigInt = &u0 - 1;
    let solvable = plus.is_multiple_of(&two_a) && minus.is_multiple_of(&two_b);

    let witness = if solvable {
        let x = exact_sqrt(&(&plus / &two_a));
        let y = exact_sqrt(&(&minus / &two_b));
        match (x, y) {
            (Some(x), Some(y)) if a * &x * &x - b * &y * &y == BigInt::one() => Some((x, y)),
            _ => {
                return Err(Error::Falsification(format!(
                    "criterion holds for (a, b) = ({a}, {b}) but no square-root witness exists"
                )))
            }
        }
    } else {
        None
    };

    Ok(GrelakInstance {
        a: a.clone(),
        b: b.clone(),
        u0,
        v0,
        solvable,
        witness,
    })
}

/// `(X_i, Y_i) = (X_0 + Y_0√D)(u + v√D)^{2i}` for `i = 0..count`.
///
/// Only even powers of the unit are used, so `X_i ≡ X_0` modulo anything that
/// divides `u² − 1`.
pub fn pellian_orbit(
    start: &PellianSolution,
    fund: &PellSolution,
    count: usize,
) -> Result<Vec<PellianSolution>> {
    Ok(orbit_iter(start, fund)?.take(count).collect())
}

pub(crate) fn orbit_iter(
    start: &PellianSolution,
    fund: &PellSolution,
) -> Result<impl Iterator<Item = PellianSolution>> {
    if start.radicand != fund.radicand {
        return Err(Error::MismatchedD {
            start: start.radicand.clone(),
            unit: fund.radicand.clone(),
        });
    }
    if !start.is_valid() {
        return Err(Error::PreconditionViolation(format!(
            "({}, {}) does not satisfy X^2 - {}Y^2 = {}",
            start.x, start.y, start.radicand, start.rhs
        )));
    }
    let step = fund.squared();
    Ok(std::iter::successors(Some(start.clone()), move |p| {
        Some(p.mul_unit(&step))
    }))
}

/// Every `(X, Y)` with `0 ≤ Y ≤ y_bound`, `X ≥ 0` and `X² = DY² + N`, ordered
/// by `Y`. Exhaustive scan; used to cross-check the constructive routes.
pub fn pellian_brute(d: &BigInt, n: &BigInt, y_bound: u64) -> Vec<PellianSolution> {
    // small inputs take a machine-word path
    if let (Some(d64), Some(n64)) = (d.to_i128(), n.to_i128()) {
        let fits = (y_bound as i128)
            .checked_mul(y_bound as i128)
            .and_then(|yy| yy.checked_mul(d64.abs()))
            .and_then(|v| v.checked_add(n64.abs()))
            .is_some();
        if fits {
            return brute_small(d, n, d64, n64, y_bound);
        }
    }
    (0..=y_bound)
        .filter_map(|y| {
            let y = BigInt::from(y);
            let x2 = d * &y * &y + n;
            exact_sqrt(&x2).map(|x| PellianSolution {
                radicand: d.clone(),
                rhs: n.clone(),
                x,
                y,
            })
        })
        .collect()
}

fn brute_small(d: &BigInt, n: &BigInt, d64: i128, n64: i128, y_bound: u64) -> Vec<PellianSolution> {
    use num_integer::Roots;
    (0..=y_bound)
        .filter_map(|y| {
            let x2 = d64 * (y as i128) * (y as i128) + n64;
            if x2 < 0 {
                return None;
            }
            let x = (x2 as u128).sqrt();
            (x * x == x2 as u128).then(|| PellianSolution {
                radicand: d.clone(),
                rhs: n.clone(),
                x: BigInt::from(x),
                y: BigInt::from(y),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn pair(s: &PellSolution) -> (i64, i64) {
        (i64::try_from(&s.x).unwrap(), i64::try_from(&s.y).unwrap())
    }

    #[test]
    fn fundamental_examples() {
        assert_eq!(pair(&fundamental_solution(&big(2)).unwrap()), (3, 2));
        assert_eq!(pair(&fundamental_solution(&big(14)).unwrap()), (15, 4));
        assert_eq!(pair(&fundamental_solution(&big(34)).unwrap()), (35, 6));
        // odd period: √13 = [3; 1,1,1,1,6]
        assert_eq!(pair(&fundamental_solution(&big(13)).unwrap()), (649, 180));
        assert_eq!(
            fundamental_solution(&big(16)),
            Err(Error::PerfectSquareInput(big(16)))
        );
    }

    #[test]
    fn iterate_examples() {
        let f2 = fundamental_solution(&big(2)).unwrap();
        assert_eq!(pair(&iterate_pell(&f2, 3)), (99, 70));
        assert_eq!(pair(&iterate_pell(&f2, 0)), (1, 0));
        assert_eq!(pair(&iterate_pell(&f2, 1)), (3, 2));
        let f12 = fundamental_solution(&big(12)).unwrap();
        assert_eq!(pair(&iterate_pell(&f12, 2)), (97, 28));
    }

    #[test]
    fn recurrence_matches_unit_powers() {
        for d in [2i64, 6, 12, 14, 34, 61] {
            let f = fundamental_solution(&big(d)).unwrap();
            let mut power = PellSolution::identity(&big(d));
            for m in 0..=20 {
                let it = iterate_pell(&f, m);
                assert_eq!((&it.x, &it.y), (&power.x, &power.y), "D={d} m={m}");
                assert!(it.norm().is_one());
                power = PellianSolution::new(big(d), power.x, power.y)
                    .mul_unit(&f)
                    .into_unit();
            }
        }
    }

    impl PellianSolution {
        fn into_unit(self) -> PellSolution {
            PellSolution {
                radicand: self.radicand,
                x: self.x,
                y: self.y,
            }
        }
    }

    fn brute_grelak(a: i64, b: i64, bound: i64) -> bool {
        (1..=bound).any(|x| {
            let num = a * x * x - 1;
            num > 0 && num % b == 0 && exact_sqrt(&big(num / b)).is_some_and(|y| y <= big(bound))
        })
    }

    #[test]
    fn grelak_examples() {
        let g = grelak_solvable(&big(3), &big(2)).unwrap();
        assert!(g.solvable);
        assert_eq!(g.u0, big(5));
        assert_eq!(g.witness, Some((big(1), big(1))));
        assert!(brute_grelak(3, 2, 10));

        let g = grelak_solvable(&big(17), &big(2)).unwrap();
        assert!(!g.solvable);
        assert_eq!((g.u0, g.v0), (big(35), big(6)));
        assert!(!brute_grelak(17, 2, 10_000));

        for d in 2..=20i64 {
            let g = grelak_solvable(&big(2 * d - 1), &big(2 * d)).unwrap();
            assert!(!g.solvable, "d={d}");
        }
    }

    #[test]
    fn grelak_preconditions() {
        for (a, b) in [(1, 2), (0, 3), (4, 2), (2, 8), (3, 0)] {
            assert!(
                matches!(
                    grelak_solvable(&big(a), &big(b)),
                    Err(Error::PreconditionViolation(_))
                ),
                "({a}, {b})"
            );
        }
    }

    #[test]
    fn orbit_examples() {
        let f6 = fundamental_solution(&big(6)).unwrap();
        assert_eq!(pair(&f6), (5, 2));
        let start = PellianSolution::new(big(6), big(50), big(20));
        assert_eq!(start.rhs, big(100));
        let orbit = pellian_orbit(&start, &f6, 2).unwrap();
        let xy: Vec<_> = orbit.iter().map(|p| (p.x.clone(), p.y.clone())).collect();
        assert_eq!(xy, vec![(big(50), big(20)), (big(4850), big(1980))]);
        assert!(orbit.iter().all(PellianSolution::is_valid));

        let start = PellianSolution::new(big(6), big(10), big(0));
        let orbit = pellian_orbit(&start, &f6, 2).unwrap();
        assert_eq!((&orbit[1].x, &orbit[1].y), (&big(490), &big(200)));

        let one = pellian_orbit(&start, &f6, 1).unwrap();
        assert_eq!(one, vec![start.clone()]);

        let f2 = fundamental_solution(&big(2)).unwrap();
        assert!(matches!(
            pellian_orbit(&start, &f2, 3),
            Err(Error::MismatchedD { .. })
        ));
    }

    #[test]
    fn brute_examples() {
        let sols = pellian_brute(&big(6), &big(100), 25);
        let xy: Vec<_> = sols.iter().map(|p| (p.x.clone(), p.y.clone())).collect();
        assert!(xy.contains(&(big(10), big(0))));
        assert!(xy.contains(&(big(50), big(20))));

        let sols = pellian_brute(&big(2), &big(1), 70);
        let xy: Vec<_> = sols.iter().map(|p| pair(&p.clone().into_unit())).collect();
        assert_eq!(xy, vec![(1, 0), (3, 2), (17, 12), (99, 70)]);

        let sols = pellian_brute(&big(34), &big(1), 5);
        assert_eq!(sols.len(), 1);
        assert_eq!((&sols[0].x, &sols[0].y), (&big(1), &big(0)));
    }

    #[test]
    fn brute_big_path() {
        let d: BigInt = "100000000000000000000000000003".parse().unwrap();
        let x0 = &d + 2;
        let n = &x0 * &x0 - &d * 4;
        let sols = pellian_brute(&d, &n, 2);
        assert_eq!(sols.len(), 1);
        assert_eq!((&sols[0].x, &sols[0].y), (&x0, &big(2)));
        assert!(sols[0].is_valid());
    }
}
