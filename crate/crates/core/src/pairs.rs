//! Index-pair dynamics `ψ±` on `P±(N)`.
//!
//! A pair `[r, s]` with `r + s = N`, `s` odd, stands for the Fibonacci (or
//! Pell) numeral `F_r.F_s`. The step identities turn `S_b` on those numerals
//! into `ψ±` on pairs, so orbit structure can be read off finite sets of
//! size `n`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use crate::dynamics::sum_square_digits;
use crate::error::{Error, Result};
use crate::fibonacci::fib;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexPair {
    pub r: usize,
    pub s: usize,
}

impl IndexPair {
    pub const fn new(r: usize, s: usize) -> Self {
        IndexPair { r, s }
    }

    pub fn total(&self) -> usize {
        self.r + self.s
    }

    pub fn min_index(&self) -> usize {
        self.r.min(self.s)
    }

    /// The arithmetic-extension form `[[r, r±1], [s, s±1]]`.
    pub fn arith_form(&self, sign: Sign) -> String {
        match sign {
            Sign::Plus => format!("[[{},{}],[{},{}]]", self.r, self.r + 1, self.s, self.s + 1),
            Sign::Minus => format!(
                "[[{},{}],[{},{}]]",
                self.r,
                self.r.saturating_sub(1),
                self.s,
                self.s.saturating_sub(1)
            ),
        }
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.r, self.s)
    }
}

fn check_total(sign: Sign, total: usize) -> Result<()> {
    let min = match sign {
        Sign::Plus => 1,
        Sign::Minus => 3,
    };
    if total.is_multiple_of(2) || total < min {
        return Err(Error::domain(format!(
            "P_{sign}(N) needs odd N ≥ {min}, got {total}"
        )));
    }
    Ok(())
}

/// Membership in `P±(N)`. `P−` excludes `r = 0`, which would need the
/// index `2·0 − 1`.
pub fn is_member(sign: Sign, total: usize, p: IndexPair) -> bool {
    let floor = match sign {
        Sign::Plus => 0,
        Sign::Minus => 2,
    };
    p.total() == total && p.s % 2 == 1 && p.r >= floor
}

/// `P±(N)` ordered by the first index.
pub fn pair_set(sign: Sign, total: usize) -> Result<Vec<IndexPair>> {
    check_total(sign, total)?;
    let first = match sign {
        Sign::Plus => 0,
        Sign::Minus => 2,
    };
    Ok((first..total)
        .step_by(2)
        .map(|r| IndexPair::new(r, total - r))
        .collect())
}

pub fn psi(sign: Sign, total: usize, p: IndexPair) -> Result<IndexPair> {
    check_total(sign, total)?;
    if !is_member(sign, total, p) {
        return Err(Error::domain(format!("{p} is not in P_{sign}({total})")));
    }
    let t = p.min_index();
    let odd = match sign {
        Sign::Plus => 2 * t + 1,
        Sign::Minus => 2 * t - 1,
    };
    Ok(IndexPair::new(total - odd, odd))
}

/// `ψ+([r, s]) = [N − (2t+1), 2t+1]` with `t = min(r, s)`.
pub fn psi_plus(total: usize, p: IndexPair) -> Result<IndexPair> {
    psi(Sign::Plus, total, p)
}

/// `ψ−([r, s]) = [N − (2t−1), 2t−1]` with `t = min(r, s)`.
pub fn psi_minus(total: usize, p: IndexPair) -> Result<IndexPair> {
    psi(Sign::Minus, total, p)
}

/// Every `q` in `P±(N)` with `ψ(q) = target`.
pub fn preimages(sign: Sign, total: usize, target: IndexPair) -> Result<Vec<IndexPair>> {
    let mut out = Vec::new();
    for q in pair_set(sign, total)? {
        if psi(sign, total, q)? == target {
            out.push(q);
        }
    }
    Ok(out)
}

/// Orbits of `ψ±` on the full pair set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecomposition {
    pub total: usize,
    pub sign: Sign,
    pub cycles: Vec<Vec<IndexPair>>,
    pub fixed_points: Vec<IndexPair>,
    /// Cycles and fixed points together, each starting at its element with
    /// the smallest first index, sorted by that index. The fundamental orbit
    /// (through `[0, N]` or `[2, N−2]`) therefore comes first.
    pub orbits: Vec<Vec<IndexPair>>,
}

impl OrbitDecomposition {
    pub fn pair_count(&self) -> usize {
        self.orbits.iter().map(Vec::len).sum()
    }

    pub fn orbit_of(&self, p: IndexPair) -> Option<&[IndexPair]> {
        self.orbits.iter().find(|o| o.contains(&p)).map(Vec::as_slice)
    }
}

pub fn decompose(total: usize, sign: Sign) -> Result<OrbitDecomposition> {
    let pairs = pair_set(sign, total)?;
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for &start in &pairs {
        if seen.contains(&start) {
            continue;
        }
        let mut path = vec![start];
        let mut cur = psi(sign, total, start)?;
        while !path.contains(&cur) {
            if seen.contains(&cur) {
                break;
            }
            path.push(cur);
            cur = psi(sign, total, cur)?;
        }
        for p in &path {
            seen.insert(*p);
        }
        // Every point must be periodic; a tail would contradict the
        // fixed-point-or-cycle dichotomy.
        if path.first() != Some(&cur) {
            return Err(Error::internal(format!(
                "ψ_{sign} on P({total}) has a pre-periodic point {start}"
            )));
        }
        let min_pos = (0..path.len()).min_by_key(|&i| path[i].r).unwrap_or(0);
        path.rotate_left(min_pos);
        orbits.push(path);
    }
    orbits.sort_by_key(|o| o[0].r);
    let cycles = orbits.iter().filter(|o| o.len() > 1).cloned().collect();
    let fixed_points = orbits.iter().filter(|o| o.len() == 1).map(|o| o[0]).collect();
    Ok(OrbitDecomposition {
        total,
        sign,
        cycles,
        fixed_points,
        orbits,
    })
}

/// An isolated fixed point of `ψ±`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsolatedPair {
    pub pair: IndexPair,
    pub sign: Sign,
    pub total: usize,
}

/// `[2n, 4n−1]` under `ψ−` at `N = 6n−1`, `[2n, 1]` under `ψ−` at
/// `N = 2n+1`, and `[2n, 4n+1]` under `ψ+` at `N = 6n+1`, each checked to
/// be fixed with itself as its only preimage.
pub fn isolated_pair_fixed_points(n: usize) -> Result<Vec<IsolatedPair>> {
    if n < 1 {
        return Err(Error::domain("isolated pair fixed points need n ≥ 1"));
    }
    let candidates = [
        IsolatedPair {
            pair: IndexPair::new(2 * n, 4 * n - 1),
            sign: Sign::Minus,
            total: 6 * n - 1,
        },
        IsolatedPair {
            pair: IndexPair::new(2 * n, 1),
            sign: Sign::Minus,
            total: 2 * n + 1,
        },
        IsolatedPair {
            pair: IndexPair::new(2 * n, 4 * n + 1),
            sign: Sign::Plus,
            total: 6 * n + 1,
        },
    ];
    for c in &candidates {
        let image = psi(c.sign, c.total, c.pair)?;
        if image != c.pair {
            return Err(Error::internal(format!(
                "{} maps to {image} under ψ_{} at N={}",
                c.pair, c.sign, c.total
            )));
        }
        let pre = preimages(c.sign, c.total, c.pair)?;
        if pre != [c.pair] {
            return Err(Error::internal(format!(
                "{} has preimages {pre:?} under ψ_{} at N={}",
                c.pair, c.sign, c.total
            )));
        }
    }
    Ok(candidates.to_vec())
}

/// The digit attached to index `i`: `F_i + F_{i+1}k` for `ψ+`, and
/// `F_i + F_{i−1}k` for `ψ−`.
pub fn fib_digit(sign: Sign, index: usize, k: &BigInt) -> BigInt {
    let shifted = match sign {
        Sign::Plus => fib(index + 1),
        Sign::Minus => fib(index.saturating_sub(1)),
    };
    fib(index) + shifted * k
}

/// The base `F_{N+1} + F_{N+2}k` (plus) or `F_{N−1} + F_{N−2}k` (minus).
pub fn fib_base(sign: Sign, total: usize, k: &BigInt) -> BigInt {
    match sign {
        Sign::Plus => fib(total + 1) + fib(total + 2) * k,
        Sign::Minus => fib(total - 1) + fib(total - 2) * k,
    }
}

/// Outcome of checking `S_b ∘ Ψ = Ψ ∘ ψ` on a whole pair set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyReport {
    pub total: usize,
    pub sign: Sign,
    pub k: u64,
    pub base: BigInt,
    pub checked: usize,
    /// Pairs whose digits are not valid base-`b` digits (only `[N−1, 1]`
    /// under `ψ−`, whose high digit equals the base). The algebraic
    /// identity is still checked for them.
    pub formal_only: Vec<IndexPair>,
    pub failures: Vec<String>,
}

impl ConjugacyReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_conjugacy(total: usize, sign: Sign, k: u64) -> Result<ConjugacyReport> {
    let min = match sign {
        Sign::Plus => 3,
        Sign::Minus => 5,
    };
    if total < min || total.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "conjugacy for ψ_{sign} needs odd N ≥ {min}, got {total}"
        )));
    }
    let kb = BigInt::from(k);
    let base = fib_base(sign, total, &kb);
    let mut report = ConjugacyReport {
        total,
        sign,
        k,
        base: base.clone(),
        checked: 0,
        formal_only: Vec::new(),
        failures: Vec::new(),
    };
    for p in pair_set(sign, total)? {
        let q = psi(sign, total, p)?;
        let (hi, lo) = (fib_digit(sign, p.r, &kb), fib_digit(sign, p.s, &kb));
        let (qhi, qlo) = (fib_digit(sign, q.r, &kb), fib_digit(sign, q.s, &kb));
        let lhs = &hi * &hi + &lo * &lo;
        let rhs = &qhi * &base + &qlo;
        report.checked += 1;
        if lhs != rhs {
            report.failures.push(format!("{p}: {lhs} ≠ {rhs}"));
            continue;
        }
        let numeral = hi < base && lo < base;
        if !numeral {
            report.formal_only.push(p);
            continue;
        }
        if qhi >= base || qlo >= base {
            report.failures.push(format!("{p}: image {q} is not a base-{base} numeral"));
            continue;
        }
        let value = &hi * &base + &lo;
        let s = sum_square_digits(&value, &base)?;
        if s != rhs {
            report.failures.push(format!("{p}: S_b({value}) = {s}, expected {rhs}"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(r: usize, s: usize) -> IndexPair {
        IndexPair::new(r, s)
    }

    #[test]
    fn psi_plus_examples() {
        assert_eq!(psi_plus(11, p(0, 11)).unwrap(), p(10, 1));
        assert_eq!(psi_plus(7, p(2, 5)).unwrap(), p(2, 5));
        assert_eq!(psi_plus(1, p(0, 1)).unwrap(), p(0, 1));
        assert!(psi_plus(11, p(1, 10)).is_err());
        assert!(psi_plus(10, p(0, 10)).is_err());
    }

    #[test]
    fn psi_minus_examples() {
        assert_eq!(psi_minus(13, p(2, 11)).unwrap(), p(10, 3));
        for n in 1..20 {
            assert_eq!(psi_minus(2 * n + 1, p(2 * n, 1)).unwrap(), p(2 * n, 1));
        }
        assert_eq!(psi_minus(9, p(4, 5)).unwrap(), p(2, 7));
        assert!(psi_minus(13, p(0, 13)).is_err());
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(13, Sign::Plus).unwrap();
        assert_eq!(
            d.cycles,
            vec![vec![p(0, 13), p(12, 1), p(10, 3), p(6, 7)], vec![p(2, 11), p(8, 5)]]
        );
        assert_eq!(d.fixed_points, vec![p(4, 9)]);

        let d = decompose(17, Sign::Minus).unwrap();
        assert_eq!(
            d.cycles,
            vec![vec![p(2, 15), p(14, 3), p(12, 5), p(8, 9)], vec![p(4, 13), p(10, 7)]]
        );
        assert_eq!(d.fixed_points, vec![p(6, 11), p(16, 1)]);

        let d = decompose(1, Sign::Plus).unwrap();
        assert!(d.cycles.is_empty());
        assert_eq!(d.fixed_points, vec![p(0, 1)]);
    }

    #[test]
    fn pair_set_sizes() {
        for n in 1..50 {
            assert_eq!(pair_set(Sign::Plus, 2 * n - 1).unwrap().len(), n);
            assert_eq!(pair_set(Sign::Minus, 2 * n + 1).unwrap().len(), n);
        }
        assert!(pair_set(Sign::Minus, 1).is_err());
    }

    #[test]
    fn isolated_examples() {
        let v = isolated_pair_fixed_points(1).unwrap();
        assert!(v.contains(&IsolatedPair { pair: p(2, 3), sign: Sign::Minus, total: 5 }));
        assert!(v.contains(&IsolatedPair { pair: p(2, 5), sign: Sign::Plus, total: 7 }));
        let v = isolated_pair_fixed_points(2).unwrap();
        assert!(v.contains(&IsolatedPair { pair: p(4, 7), sign: Sign::Minus, total: 11 }));
        assert!(isolated_pair_fixed_points(0).is_err());
    }

    #[test]
    fn conjugacy_examples() {
        let r = verify_conjugacy(11, Sign::Plus, 0).unwrap();
        assert!(r.holds() && r.checked == 6 && r.formal_only.is_empty());
        let r = verify_conjugacy(13, Sign::Minus, 0).unwrap();
        assert!(r.holds());
        assert_eq!(r.checked, 6);
        assert_eq!(r.formal_only, vec![p(12, 1)]);
        let r = verify_conjugacy(3, Sign::Plus, 1).unwrap();
        assert_eq!(r.base, BigInt::from(8));
        assert!(r.holds());
        assert!(verify_conjugacy(3, Sign::Minus, 0).is_err());
        assert!(verify_conjugacy(1, Sign::Plus, 0).is_err());
    }

    #[test]
    fn arith_form_rendering() {
        assert_eq!(p(0, 3).arith_form(Sign::Plus), "[[0,1],[3,4]]");
        assert_eq!(p(2, 11).arith_form(Sign::Minus), "[[2,1],[11,10]]");
    }
}
