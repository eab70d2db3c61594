//! Structural solution of `x² + y² = x·b + y`, the divisor-count formula,
//! and the companion-base families.
//!
//! Completing the square turns the fixed-point condition for `x.y|_b` into
//! `(2x − b)² + (2y − 1)² = 1 + b²`, so fixed points correspond to
//! representations `u² + v² = 1 + b²` with `u ≡ b (mod 2)`, `−b ≤ u < b`
//! and odd `v` in `1..=2b−3` (the image of the digit range `1 ≤ y < b`).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::dynamics::{check_base, TwoDigit};
use crate::error::{Error, Result};
use crate::fibonacci::fib;
use crate::num::Scalar;

/// `d(m)`, the number of positive divisors, by trial division.
pub fn divisor_count<T: Scalar>(m: &T) -> Result<u64> {
    if *m < T::one() {
        return Err(Error::domain(format!("d(m) needs m ≥ 1, got {m}")));
    }
    let mut rest = m.clone();
    let mut count: u64 = 1;
    let mut p = T::two();
    while p.square() <= rest {
        let mut e = 0u64;
        while (rest.clone() % p.clone()).is_zero() {
            rest = rest / p.clone();
            e += 1;
        }
        count *= e + 1;
        p = p + T::one();
    }
    if rest > T::one() {
        count *= 2;
    }
    Ok(count)
}

/// A representation `u² + v² = m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoSquareRep<T> {
    pub m: T,
    pub u: T,
    pub v: T,
}

/// All `(u, v)` with `u² + v² = m`, `u ≡ b (mod 2)`, `−b ≤ u < b` and odd
/// `v` with `1 ≤ v ≤ 2b − 3`, ordered by `u`.
pub fn two_square_representations<T: Scalar + Signed>(m: &T, b: &T) -> Result<Vec<TwoSquareRep<T>>> {
    check_base(b)?;
    let mut out = Vec::new();
    let v_max = T::two() * b.clone() - T::from_u64_exact(3);
    let mut u = -b.clone();
    while u < *b {
        let rest = m.clone() - u.square();
        if rest >= T::one() {
            let v = rest.sqrt();
            if v.square() == rest && v.is_odd() && v <= v_max {
                out.push(TwoSquareRep {
                    m: m.clone(),
                    u: u.clone(),
                    v,
                });
            }
        }
        u = u + T::two();
    }
    Ok(out)
}

/// Fixed points of `S_b` from the representations of `1 + b²`, ascending.
pub fn fixed_points_structural<T: Scalar + Signed>(b: &T) -> Result<Vec<TwoDigit<T>>> {
    let m = T::one() + b.square();
    let mut out = two_square_representations(&m, b)?
        .into_iter()
        .map(|rep| {
            let x = (rep.u + b.clone()) / T::two();
            let y = (rep.v + T::one()) / T::two();
            TwoDigit::new(x, y, b.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by_key(|t| t.value());
    Ok(out)
}

use crate::IntDigit;

/// Two bases sharing a fixed value `x² + y²` with swapped digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompanionPair {
    pub base_b: BigInt,
    pub base_b_prime: BigInt,
    pub point_in_b: IntDigit,
    pub point_in_b_prime: IntDigit,
}

impl CompanionPair {
    /// Builds `hi.lo|_b` and `lo.hi|_{b'}` and checks every invariant.
    pub fn build(hi: BigInt, lo: BigInt, base_b: BigInt, base_b_prime: BigInt) -> Result<Self> {
        let point_in_b = TwoDigit::new(hi, lo, base_b.clone())
            .map_err(|e| Error::domain(format!("in base b: {e}")))?;
        let point_in_b_prime = point_in_b
            .swapped_in(base_b_prime.clone())
            .map_err(|e| Error::domain(format!("in base b': {e}")))?;
        let pair = CompanionPair {
            base_b,
            base_b_prime,
            point_in_b,
            point_in_b_prime,
        };
        pair.verify()?;
        Ok(pair)
    }

    pub fn value(&self) -> BigInt {
        self.point_in_b.value()
    }

    pub fn verify(&self) -> Result<()> {
        for (label, p) in [("b", &self.point_in_b), ("b'", &self.point_in_b_prime)] {
            if !p.is_fixed() {
                return Err(Error::IdentityFailed {
                    name: "companion fixed point".into(),
                    params: format!("{p} in base {label}"),
                    residual: (p.image() - p.value()).to_string(),
                });
            }
        }
        if self.point_in_b.value() != self.point_in_b_prime.value() {
            return Err(Error::internal("companion values differ"));
        }
        Ok(())
    }
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

/// `n.n|_{2n−1}`: every odd base is its own companion.
pub fn companion_odd_base(n: i64) -> Result<CompanionPair> {
    if n < 2 {
        return Err(Error::domain(format!("odd-base companion needs n ≥ 2, got {n}")));
    }
    let b = int(2 * n - 1);
    CompanionPair::build(int(n), int(n), b.clone(), b)
}

/// `nu.u|_b` and `u.nu|_{b'}` with `u = n + 1 + nk`,
/// `b = n² + n + 1 + (n² + 1)k`, `b' = n³ + n² + 1 + n(n² + 1)k`.
pub fn companion_nu(n: i64, k: i64) -> Result<CompanionPair> {
    if n < 1 || k < 0 {
        return Err(Error::domain(format!("nu.u companion needs n ≥ 1, k ≥ 0; got n={n}, k={k}")));
    }
    let (n, k) = (int(n), int(k));
    let n2 = &n * &n;
    let u = &n + 1 + &n * &k;
    let b = &n2 + &n + 1 + (&n2 + 1) * &k;
    let bp = &n2 * &n + &n2 + 1 + &n * (&n2 + 1) * &k;
    CompanionPair::build(&n * &u, u, b, bp)
}

/// Least `u0` in `1..=mn` with `u0·n ≡ 1 (mod m)` and `u0·m ≡ 1 (mod n)`.
pub fn crt_least_solution(m: i64, n: i64) -> Result<i64> {
    (1..=m * n)
        .find(|u| (u * n).rem_euclid(m) == 1 && (u * m).rem_euclid(n) == 1)
        .ok_or_else(|| Error::domain(format!("no simultaneous inverse for m={m}, n={n}")))
}

/// `nu.mu|_b` and `mu.nu|_{b'}` for coprime `n > m > 1`.
pub fn companion_mn(m: i64, n: i64, k: i64) -> Result<CompanionPair> {
    if m <= 1 || n <= m {
        return Err(Error::domain(format!("companion_mn needs n > m > 1; got m={m}, n={n}")));
    }
    if k < 0 {
        return Err(Error::domain(format!("k must be nonnegative, got {k}")));
    }
    if num_integer::gcd(m, n) != 1 {
        return Err(Error::domain(format!("m={m} and n={n} are not coprime")));
    }
    let u0 = int(crt_least_solution(m, n)?);
    let (bm, bn, bk) = (int(m), int(n), int(k));
    let s = &bm * &bm + &bn * &bn;
    let num_b = &s * &u0 - &bm;
    let num_bp = &s * &u0 - &bn;
    if !(&num_b % &bn).is_zero() || !(&num_bp % &bm).is_zero() {
        return Err(Error::internal(format!("inexact base division for m={m}, n={n}")));
    }
    let u = &u0 + &bm * &bn * &bk;
    let b = num_b / &bn + &bm * &s * &bk;
    let bp = num_bp / &bm + &bn * &s * &bk;
    CompanionPair::build(&bn * &u, &bm * &u, b, bp)
}

/// `(n+1)u.nu|_b` and `nu.(n+1)u|_{b'}` from the closed forms for
/// consecutive multipliers.
pub fn companion_consecutive(n: i64, k: i64) -> Result<CompanionPair> {
    if n < 1 || k < 0 {
        return Err(Error::domain(format!(
            "consecutive companion needs n ≥ 1, k ≥ 0; got n={n}, k={k}"
        )));
    }
    let (n, k) = (int(n), int(k));
    let q = 2 * &n * &n + 2 * &n + 1;
    let u = 2 * &n + 1 + &n * (&n + 1) * &k;
    let b = 4 * &n * &n + 2 * &n + 1 + &n * &q * &k;
    let bp = 4 * &n * &n + 6 * &n + 3 + (&n + 1) * &q * &k;
    CompanionPair::build((&n + 1) * &u, &n * &u, b, bp)
}

/// `F_{2n+1}u.F_{2n}u|_b` and the swapped numeral in `b'`, with
/// `u = F_{2n−1} + F_{2n}F_{2n+1}k`, `b = F_{4n−1} + F_{2n}F_{4n+1}k`,
/// `b' = F_{4n} + F_{2n+1}F_{4n+1}k`. At `k = 0` this is the pair
/// `F_{2n+1}F_{2n−1}.F_{2n}F_{2n−1}` over `F_{4n−1}` and `F_{4n}`.
pub fn companion_fib(n: usize, k: i64) -> Result<CompanionPair> {
    if n < 1 || k < 0 {
        return Err(Error::domain(format!("Fibonacci companion needs n ≥ 1, k ≥ 0; got n={n}, k={k}")));
    }
    let k = int(k);
    let u = fib(2 * n - 1) + fib(2 * n) * fib(2 * n + 1) * &k;
    let b = fib(4 * n - 1) + fib(2 * n) * fib(4 * n + 1) * &k;
    let bp = fib(4 * n) + fib(2 * n + 1) * fib(4 * n + 1) * &k;
    CompanionPair::build(fib(2 * n + 1) * &u, fib(2 * n) * &u, b, bp)
        .map_err(|e| Error::domain(format!("Fibonacci companion n={n}, k={k}: {e}")))
}

pub fn triangular(n: i64) -> BigInt {
    int(n) * int(n + 1) / 2
}

/// The triangular companion construction, checked in both digit orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularCompanion {
    pub n: i64,
    /// The verified assignment: `point_in_b` is fixed in `n² + n + 1`.
    pub pair: CompanionPair,
    /// Whether `T_n.T_{n+1}` is fixed in `n² + n + 1`, as the construction
    /// is usually stated.
    pub stated_order_holds: bool,
}

pub fn companion_triangular(n: i64) -> Result<TriangularCompanion> {
    if n < 2 {
        return Err(Error::domain(format!("triangular companion needs n ≥ 2, got {n}")));
    }
    let (t, t1) = (triangular(n), triangular(n + 1));
    let b = int(n * n + n + 1);
    let bp = int(n * n + 3 * n + 3);
    let stated = TwoDigit::new(t.clone(), t1.clone(), b.clone())?;
    let reversed = TwoDigit::new(t1.clone(), t.clone(), b.clone())?;
    let hi_lo = match (stated.is_fixed(), reversed.is_fixed()) {
        (true, false) => (t, t1),
        (false, true) => (t1, t),
        (s, r) => {
            return Err(Error::internal(format!(
                "triangular n={n}: T_n.T_(n+1) fixed={s}, T_(n+1).T_n fixed={r}"
            )))
        }
    };
    let pair = CompanionPair::build(hi_lo.0, hi_lo.1, b, bp)?;
    Ok(TriangularCompanion {
        n,
        stated_order_holds: stated.is_fixed(),
        pair,
    })
}

/// `x² + y² − x·b − y` for the numeral `x.y|_b`, without digit checks.
pub fn fixed_point_residual(hi: &BigInt, lo: &BigInt, base: &BigInt) -> BigInt {
    hi * hi + lo * lo - hi * base - lo
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::enumerate_fixed_points_bruteforce;

    fn naive_divisors(m: u64) -> u64 {
        (1..=m).filter(|d| m.is_multiple_of(*d)).count() as u64
    }

    #[test]
    fn divisor_count_examples() {
        assert_eq!(divisor_count(&145u64).unwrap(), 4);
        assert_eq!(divisor_count(&1u64).unwrap(), 1);
        let m = 1 + 2030u64 * 2030;
        assert_eq!(divisor_count(&m).unwrap(), naive_divisors(m));
        for m in 1..2000u64 {
            assert_eq!(divisor_count(&m).unwrap(), naive_divisors(m), "m={m}");
        }
        assert!(divisor_count(&0u64).is_err());
    }

    fn reps(m: i64, b: i64) -> Vec<(i64, i64)> {
        two_square_representations(&m, &b)
            .unwrap()
            .into_iter()
            .map(|r| (r.u, r.v))
            .collect()
    }

    #[test]
    fn two_square_examples() {
        assert_eq!(reps(145, 12), vec![(-12, 1), (-8, 9), (8, 9)]);
        assert_eq!(reps(5, 2), vec![(-2, 1)]);
        // Exhaustive scan; v = 7 = b and the (±5, 5) pair are admissible.
        assert_eq!(reps(50, 7), vec![(-7, 1), (-5, 5), (-1, 7), (1, 7), (5, 5)]);
    }

    #[test]
    fn structural_matches_bruteforce() {
        let values = |b: i64| -> Vec<i64> {
            fixed_points_structural(&b).unwrap().iter().map(|t| t.value()).collect()
        };
        assert_eq!(values(12), vec![1, 29, 125]);
        assert_eq!(values(2), vec![1]);
        for b in [7i64, 55, 144] {
            assert_eq!(values(b), enumerate_fixed_points_bruteforce(&b).unwrap(), "b={b}");
        }
    }

    #[test]
    fn odd_base_companion() {
        let p = companion_odd_base(2).unwrap();
        assert_eq!(p.value(), int(8));
        assert_eq!(p.base_b, int(3));
        assert_eq!(companion_odd_base(3).unwrap().value(), int(18));
        assert!(companion_odd_base(1).is_err());
    }

    #[test]
    fn nu_companion() {
        let p = companion_nu(3, 0).unwrap();
        assert_eq!(p.point_in_b.to_string(), "12.4|_13");
        assert_eq!(p.point_in_b_prime.to_string(), "4.12|_37");
        assert_eq!(p.value(), int(160));
        let p = companion_nu(1, 0).unwrap();
        assert_eq!(p.point_in_b.to_string(), "2.2|_3");
        // n = 3 arithmetic form 12+9k.4+3k in 13+10k
        for k in 0..6 {
            let p = companion_nu(3, k).unwrap();
            assert_eq!(p.base_b, int(13 + 10 * k));
            assert_eq!(p.base_b_prime, int(37 + 30 * k));
            assert_eq!(p.point_in_b.hi(), &int(12 + 9 * k));
        }
        // n = 1 reproduces the odd-base family 2+k.2+k in 3+2k
        for k in 0..6 {
            let p = companion_nu(1, k).unwrap();
            assert_eq!(p.point_in_b, TwoDigit::new(int(2 + k), int(2 + k), int(3 + 2 * k)).unwrap());
        }
        let p = companion_nu(4, 2).unwrap();
        assert!(p.point_in_b.is_fixed() && p.point_in_b_prime.is_fixed());
    }

    /// Independent CRT via the extended Euclidean algorithm.
    fn crt_oracle(m: i64, n: i64) -> i64 {
        let inv = |a: i64, md: i64| -> i64 {
            let e = num_integer::Integer::extended_gcd(&a, &md);
            e.x.rem_euclid(md)
        };
        let (r1, r2) = (inv(n, m), inv(m, n));
        // u = r1 + m·t ≡ r2 (mod n)
        let t = ((r2 - r1).rem_euclid(n) * inv(m, n)).rem_euclid(n);
        let u = r1 + m * t;
        if u == 0 { m * n } else { u }
    }

    #[test]
    fn crt_scan_matches_extended_gcd() {
        for m in 2..15 {
            for n in m + 1..16 {
                if num_integer::gcd(m, n) == 1 {
                    assert_eq!(crt_least_solution(m, n).unwrap(), crt_oracle(m, n), "m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn mn_companion() {
        let p = companion_mn(2, 3, 0).unwrap();
        assert_eq!(p.base_b, int(21));
        assert_eq!(p.base_b_prime, int(31));
        assert_eq!(p.point_in_b.to_string(), "15.10|_21");
        assert_eq!(p.value(), int(325));
        assert!(companion_mn(1, 2, 0).is_err());
        assert!(companion_mn(2, 4, 0).is_err());
        assert!(companion_mn(3, 2, 0).is_err());
    }

    #[test]
    fn consecutive_companion() {
        let p = companion_consecutive(1, 0).unwrap();
        assert_eq!(p.point_in_b.to_string(), "6.3|_7");
        assert_eq!(p.base_b_prime, int(13));
        assert_eq!(p.value(), int(45));
        for n in 2..=20 {
            for k in 0..=5 {
                assert_eq!(companion_consecutive(n, k).unwrap(), companion_mn(n, n + 1, k).unwrap());
            }
        }
    }

    #[test]
    fn fib_companion() {
        let p = companion_fib(2, 0).unwrap();
        assert_eq!(p.point_in_b.to_string(), "10.6|_13");
        assert_eq!(p.point_in_b_prime.to_string(), "6.10|_21");
        assert_eq!(p.value(), int(136));
        assert_eq!(companion_fib(3, 0).unwrap().point_in_b.to_string(), "65.40|_89");
        assert_eq!(companion_fib(2, 1).unwrap().point_in_b.to_string(), "85.51|_115");
        let err = companion_fib(1, 0).unwrap_err();
        assert!(err.to_string().contains("n=1"), "{err}");
        assert!(companion_fib(1, 1).is_ok());
    }

    #[test]
    fn triangular_companion_reports_order() {
        let t = companion_triangular(2).unwrap();
        assert!(!t.stated_order_holds);
        assert_eq!(t.pair.point_in_b.to_string(), "6.3|_7");
        assert_eq!(t.pair.point_in_b_prime.to_string(), "3.6|_13");
        assert_eq!(t.pair.value(), int(45));
        let t = companion_triangular(3).unwrap();
        assert_eq!(t.pair.value(), int(136));
        assert_eq!(t.pair.base_b, int(13));
        assert_eq!(t.pair.base_b_prime, int(21));
        // T_n² + T_{n+1}² = T_{(n+1)²}
        for n in 2..40 {
            let t = companion_triangular(n).unwrap();
            assert_eq!(t.pair.value(), triangular((n + 1) * (n + 1)));
        }
    }
}
