//! Pell polynomials and symbolic checks of the Pell cycle and fixed-point
//! theorems.
//!
//! Families with an extra integer parameter `k` are checked at sampled
//! values of `k`. Every residual there is a polynomial of degree at most two
//! in `k` whose coefficients lie in `Z[x]`, so vanishing at three distinct
//! integers forces it to vanish identically (a Vandermonde system). Four
//! samples are required.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::dynamics::{orbit, Cycle, TwoDigit};
use crate::error::{Error, Result};
use crate::fibonacci::CycleKind;
use crate::pairs::{pair_set, psi, IndexPair};
use crate::IntPoly;

static PELL_TABLE: LazyLock<RwLock<Vec<IntPoly>>> =
    LazyLock::new(|| RwLock::new(vec![IntPoly::zero(), IntPoly::constant(BigInt::one())]));

/// `p_n(x)` with `p_0 = 0`, `p_1 = 1`, `p_n = 2x·p_{n−1} + p_{n−2}`.
pub fn pell(n: usize) -> IntPoly {
    {
        let table = PELL_TABLE.read().expect("pell table lock");
        if let Some(p) = table.get(n) {
            return p.clone();
        }
    }
    let two_x = IntPoly::monomial(BigInt::from(2), 1);
    let mut table = PELL_TABLE.write().expect("pell table lock");
    while table.len() <= n {
        let len = table.len();
        let next = &(&two_x * &table[len - 1]) + &table[len - 2];
        table.push(next);
    }
    table[n].clone()
}

fn sign_poly(negative: bool) -> IntPoly {
    IntPoly::constant(BigInt::from(if negative { -1 } else { 1 }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PellIdentity {
    /// `p_n² = p_{n+1}p_{n−1} + (−1)^{n+1}`, `n ≥ 1`.
    Cassini { n: usize },
    /// `p_n² = p_{n+r}p_{n−r} + (−1)^{n−r}p_r²`, `r ≤ n`.
    Catalan { n: usize, r: usize },
    /// `p_{n+r}p_{n+s} = p_np_{n+r+s} + (−1)^n p_rp_s`.
    Vajda { n: usize, r: usize, s: usize },
    /// `p_{2n+1} = p_{n+1}² + p_n²`.
    Lucas { n: usize },
    /// `2x·p_{2n} = p_{n+1}² − p_{n−1}²`, `n ≥ 1`.
    DOcagne { n: usize },
}

impl fmt::Display for PellIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PellIdentity::Cassini { n } => write!(f, "pell-cassini(n={n})"),
            PellIdentity::Catalan { n, r } => write!(f, "pell-catalan(n={n}, r={r})"),
            PellIdentity::Vajda { n, r, s } => write!(f, "pell-vajda(n={n}, r={r}, s={s})"),
            PellIdentity::Lucas { n } => write!(f, "pell-lucas(n={n})"),
            PellIdentity::DOcagne { n } => write!(f, "pell-docagne(n={n})"),
        }
    }
}

/// `LHS − RHS` as a polynomial; the zero polynomial means the identity
/// holds for every `x`.
pub fn check_pell_identity(id: PellIdentity) -> Result<IntPoly> {
    let p = pell;
    let invalid = || Error::domain(format!("invalid indices for {id}"));
    Ok(match id {
        PellIdentity::Cassini { n } => {
            if n < 1 {
                return Err(invalid());
            }
            let rhs = &(&p(n + 1) * &p(n - 1)) + &sign_poly(n % 2 == 0);
            &p(n).square() - &rhs
        }
        PellIdentity::Catalan { n, r } => {
            if r > n {
                return Err(invalid());
            }
            let rhs = &(&p(n + r) * &p(n - r)) + &(&sign_poly((n - r) % 2 == 1) * &p(r).square());
            &p(n).square() - &rhs
        }
        PellIdentity::Vajda { n, r, s } => {
            let lhs = &p(n + r) * &p(n + s);
            let rhs = &(&p(n) * &p(n + r + s)) + &(&sign_poly(n % 2 == 1) * &(&p(r) * &p(s)));
            &lhs - &rhs
        }
        PellIdentity::Lucas { n } => &p(2 * n + 1) - &(&p(n + 1).square() + &p(n).square()),
        PellIdentity::DOcagne { n } => {
            if n < 1 {
                return Err(invalid());
            }
            let lhs = &IntPoly::monomial(BigInt::from(2), 1) * &p(2 * n);
            &lhs - &(&p(n + 1).square() - &p(n - 1).square())
        }
    })
}

/// `hi.lo|_base` with polynomial entries. Digit bounds are only meaningful
/// after evaluation and are checked there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellDigitPair {
    pub hi: IntPoly,
    pub lo: IntPoly,
    pub base: IntPoly,
}

impl PellDigitPair {
    pub fn new(hi: IntPoly, lo: IntPoly, base: IntPoly) -> Self {
        PellDigitPair { hi, lo, base }
    }

    pub fn value(&self) -> IntPoly {
        &(&self.hi * &self.base) + &self.lo
    }

    /// `hi² + lo²`.
    pub fn image(&self) -> IntPoly {
        &self.hi.square() + &self.lo.square()
    }

    /// `hi² + lo² − (next.hi·base + next.lo)`.
    pub fn step_residual(&self, next: &PellDigitPair) -> IntPoly {
        &self.image() - &next.value()
    }

    /// `hi² + lo² − hi·base − lo`; zero for a fixed point.
    pub fn fixed_residual(&self) -> IntPoly {
        self.step_residual(self)
    }

    pub fn evaluate(&self, x: &BigInt) -> Result<TwoDigit<BigInt>> {
        TwoDigit::new(self.hi.eval(x), self.lo.eval(x), self.base.eval(x))
            .map_err(|e| Error::domain(format!("{self} at x={x}: {e}")))
    }
}

impl fmt::Display for PellDigitPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}).({})|_({})", self.hi, self.lo, self.base)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PellFixedVariant {
    /// `p_{2n}.p_{4n−1}` in base `p_{6n−2}`.
    A,
    /// `p_{2n}.p_{4n+1}` in base `p_{6n+2}`.
    B,
    /// `p_{2n}p_{2n−1}.p_{2n+1}p_{2n−1}` in base `p_{4n}`.
    C,
}

impl fmt::Display for PellFixedVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PellFixedVariant::A => "a",
            PellFixedVariant::B => "b",
            PellFixedVariant::C => "c",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellFixedPoint {
    pub n: usize,
    pub variant: PellFixedVariant,
    pub point: PellDigitPair,
    pub residual: IntPoly,
}

impl PellFixedPoint {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

pub fn pell_fixed_point(n: usize, variant: PellFixedVariant) -> Result<PellFixedPoint> {
    if n < 1 {
        return Err(Error::domain("Pell fixed points need n ≥ 1"));
    }
    let p = pell;
    let point = match variant {
        PellFixedVariant::A => PellDigitPair::new(p(2 * n), p(4 * n - 1), p(6 * n - 2)),
        PellFixedVariant::B => PellDigitPair::new(p(2 * n), p(4 * n + 1), p(6 * n + 2)),
        PellFixedVariant::C => {
            let f = p(2 * n - 1);
            PellDigitPair::new(&p(2 * n) * &f, &p(2 * n + 1) * &f, p(4 * n))
        }
    };
    let residual = point.fixed_residual();
    Ok(PellFixedPoint {
        n,
        variant,
        point,
        residual,
    })
}

/// The digit at index `i` in the arithmetic family: `p_i + p_{i+1}k`
/// (type I) or `p_i + p_{i−1}k` (type II).
pub fn pell_digit(kind: CycleKind, index: usize, k: &BigInt) -> Result<IntPoly> {
    let shifted = match kind {
        CycleKind::TypeI => pell(index + 1),
        CycleKind::TypeII => {
            if index == 0 {
                return Err(Error::domain("type II digits need index ≥ 1"));
            }
            pell(index - 1)
        }
    };
    Ok(&pell(index) + &shifted.scale(k))
}

/// `p_{N+1} + p_{N+2}k` (type I) or `p_{N−1} + p_{N−2}k` (type II).
pub fn pell_base(kind: CycleKind, total: usize, k: &BigInt) -> IntPoly {
    match kind {
        CycleKind::TypeI => &pell(total + 1) + &pell(total + 2).scale(k),
        CycleKind::TypeII => &pell(total - 1) + &pell(total - 2).scale(k),
    }
}

/// The type I/II step identity written with `j = min(i, N − i)`, as a
/// polynomial residual.
pub fn pell_step_identity(kind: CycleKind, total: usize, i: usize) -> Result<IntPoly> {
    if total.is_multiple_of(2) {
        return Err(Error::domain(format!("N must be odd, got {total}")));
    }
    let lhs = || &pell(total - i).square() + &pell(i).square();
    match kind {
        CycleKind::TypeI => {
            if i > (total - 1) / 2 {
                return Err(Error::domain(format!("type I needs 0 ≤ i ≤ n−1; got N={total}, i={i}")));
            }
            let j = i.min(total - i);
            Ok(&lhs() - &(&(&pell(total - (2 * j + 1)) * &pell(total + 1)) + &pell(2 * j + 1)))
        }
        CycleKind::TypeII => {
            if total < 3 || i < 1 || i > total.div_ceil(2) {
                return Err(Error::domain(format!(
                    "type II needs N ≥ 3 and 1 ≤ i ≤ n+1; got N={total}, i={i}"
                )));
            }
            let j = i.min(total - i);
            Ok(&lhs() - &(&(&pell(total - (2 * j - 1)) * &pell(total - 1)) + &pell(2 * j - 1)))
        }
    }
}

/// A Pell cycle at a fixed `k`, with one residual per step (the last one
/// closes the cycle).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellCycle {
    pub kind: CycleKind,
    pub n: usize,
    pub k: BigInt,
    pub base: IntPoly,
    pub pairs: Vec<IndexPair>,
    pub elements: Vec<PellDigitPair>,
    pub step_residuals: Vec<IntPoly>,
}

impl PellCycle {
    pub fn steps_hold(&self) -> bool {
        self.step_residuals.iter().all(IntPoly::is_zero)
    }

    pub fn terminal_holds(&self) -> bool {
        self.pairs.last() == Some(&self.kind.terminal_pair(self.n))
    }

    pub fn holds(&self) -> bool {
        self.steps_hold() && self.terminal_holds()
    }
}

pub fn pell_cycle(kind: CycleKind, n: usize) -> Result<PellCycle> {
    pell_arith_cycle(kind, n, &BigInt::from(0))
}

/// The arithmetic Pell cycle for one value of `k`; `k = 0` is the plain
/// Pell cycle.
pub fn pell_arith_cycle(kind: CycleKind, n: usize, k: &BigInt) -> Result<PellCycle> {
    if n < 2 {
        return Err(Error::domain(format!("Pell cycles need n ≥ 2, got {n}")));
    }
    let sign = kind.sign();
    let total = kind.total(n);
    let start = kind.initial_pair(n);
    let limit = pair_set(sign, total)?.len();
    let mut pairs = vec![start];
    let mut cur = psi(sign, total, start)?;
    while cur != start {
        if pairs.len() > limit {
            return Err(Error::internal(format!("{kind} n={n}: ψ orbit does not close")));
        }
        pairs.push(cur);
        cur = psi(sign, total, cur)?;
    }
    let base = pell_base(kind, total, k);
    let elements = pairs
        .iter()
        .map(|p| Ok(PellDigitPair::new(pell_digit(kind, p.r, k)?, pell_digit(kind, p.s, k)?, base.clone())))
        .collect::<Result<Vec<_>>>()?;
    let step_residuals = (0..elements.len())
        .map(|i| elements[i].step_residual(&elements[(i + 1) % elements.len()]))
        .collect();
    Ok(PellCycle {
        kind,
        n,
        k: k.clone(),
        base,
        pairs,
        elements,
        step_residuals,
    })
}

/// Evaluates a Pell cycle at `x = x0` and checks it against a direct orbit
/// computation in the evaluated base.
pub fn pell_evaluate_cycle(kind: CycleKind, n: usize, x0: &BigInt) -> Result<Cycle<BigInt>> {
    if *x0 < BigInt::one() {
        return Err(Error::domain(format!("evaluation point must be ≥ 1, got {x0}")));
    }
    let cycle = pell_cycle(kind, n)?;
    let digits = cycle
        .elements
        .iter()
        .map(|e| e.evaluate(x0))
        .collect::<Result<Vec<_>>>()?;
    let base = cycle.base.eval(x0);
    let values: Vec<BigInt> = digits.iter().map(TwoDigit::value).collect();
    let result = Cycle::new(base.clone(), values.clone())?;
    let record = orbit(&values[0], &base)?;
    if record.cycle != result {
        return Err(Error::internal(format!(
            "{kind} n={n} at x={x0}: orbit gives {}, theorem gives {result}",
            record.cycle
        )));
    }
    Ok(result)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PellArithFamily {
    /// Type I step with `N = 2n − 1`, `0 ≤ i ≤ n − 1`.
    CycleTypeI { n: usize, i: usize },
    /// Type II step with `N = 2n + 1`, `1 ≤ i ≤ n`.
    CycleTypeII { n: usize, i: usize },
    /// `p_{2n}u.p_{2n+1}u` in base `p_{4n} + p_{2n+1}p_{4n+1}k`, where
    /// `u = p_{2n−1} + p_{2n}p_{2n+1}k`.
    FixedPoint { n: usize },
}

impl fmt::Display for PellArithFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PellArithFamily::CycleTypeI { n, i } => write!(f, "arith type I (n={n}, i={i})"),
            PellArithFamily::CycleTypeII { n, i } => write!(f, "arith type II (n={n}, i={i})"),
            PellArithFamily::FixedPoint { n } => write!(f, "arith fixed point (n={n})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellArithReport {
    pub family: PellArithFamily,
    /// `(k, residual)` for each sample.
    pub samples: Vec<(BigInt, IntPoly)>,
}

impl PellArithReport {
    pub fn holds(&self) -> bool {
        self.samples.iter().all(|(_, r)| r.is_zero())
    }
}

pub const MIN_K_SAMPLES: usize = 4;

pub fn pell_arith_check(family: PellArithFamily, k_samples: &[BigInt]) -> Result<PellArithReport> {
    let distinct: BTreeSet<&BigInt> = k_samples.iter().collect();
    if distinct.len() < MIN_K_SAMPLES {
        return Err(Error::domain(format!(
            "need at least {MIN_K_SAMPLES} distinct k samples, got {}",
            distinct.len()
        )));
    }
    let samples = distinct
        .into_iter()
        .map(|k| Ok((k.clone(), arith_residual(family, k)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PellArithReport { family, samples })
}

fn arith_residual(family: PellArithFamily, k: &BigInt) -> Result<IntPoly> {
    let p = pell;
    let lin = |a: usize, b: usize| &p(a) + &p(b).scale(k);
    let pair = match family {
        PellArithFamily::CycleTypeI { n, i } => {
            if n < 1 || i > n - 1 {
                return Err(Error::domain(format!("{family}: need n ≥ 1 and 0 ≤ i ≤ n−1")));
            }
            let big_n = 2 * n - 1;
            let b = lin(big_n + 1, big_n + 2);
            let x0 = lin(i, i + 1);
            let x1 = lin(big_n - i, big_n - i + 1);
            let y0 = lin(2 * i + 1, 2 * i + 2);
            let y1 = lin(big_n - (2 * i + 1), big_n - 2 * i);
            return Ok(step(&x1, &x0, &y1, &y0, &b));
        }
        PellArithFamily::CycleTypeII { n, i } => {
            if n < 1 || i < 1 || i > n {
                return Err(Error::domain(format!("{family}: need n ≥ 1 and 1 ≤ i ≤ n")));
            }
            let big_n = 2 * n + 1;
            let b = lin(big_n - 1, big_n - 2);
            let x0 = lin(i, i - 1);
            let x1 = lin(big_n - i, big_n - i - 1);
            let y0 = lin(2 * i - 1, 2 * i - 2);
            let y1 = lin(big_n - (2 * i - 1), big_n - 2 * i);
            return Ok(step(&x1, &x0, &y1, &y0, &b));
        }
        PellArithFamily::FixedPoint { n } => {
            if n < 1 {
                return Err(Error::domain(format!("{family}: need n ≥ 1")));
            }
            let u = &p(2 * n - 1) + &(&p(2 * n) * &p(2 * n + 1)).scale(k);
            let base = &p(4 * n) + &(&p(2 * n + 1) * &p(4 * n + 1)).scale(k);
            PellDigitPair::new(&p(2 * n) * &u, &p(2 * n + 1) * &u, base)
        }
    };
    Ok(pair.fixed_residual())
}

fn step(x1: &IntPoly, x0: &IntPoly, y1: &IntPoly, y0: &IntPoly, b: &IntPoly) -> IntPoly {
    &(&x1.square() + &x0.square()) - &(&(y1 * b) + y0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn poly(cs: &[i64]) -> IntPoly {
        Poly::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn ks() -> Vec<BigInt> {
        (0..4).map(int).collect()
    }

    #[test]
    fn small_pell_polynomials() {
        assert_eq!(pell(0), IntPoly::zero());
        assert_eq!(pell(2), poly(&[0, 2]));
        assert_eq!(pell(3), poly(&[1, 0, 4]));
        assert_eq!(pell(4), poly(&[0, 4, 0, 8]));
        assert_eq!(pell(4).eval(&int(1)), int(12));
        assert_eq!(pell(6).eval(&int(1)), int(70));
    }

    #[test]
    fn pell_identity_examples() {
        assert!(check_pell_identity(PellIdentity::Lucas { n: 2 }).unwrap().is_zero());
        assert!(check_pell_identity(PellIdentity::DOcagne { n: 1 }).unwrap().is_zero());
        assert!(check_pell_identity(PellIdentity::Catalan { n: 5, r: 5 }).unwrap().is_zero());
        assert!(check_pell_identity(PellIdentity::Catalan { n: 2, r: 3 }).is_err());
        assert!(check_pell_identity(PellIdentity::Cassini { n: 0 }).is_err());
    }

    #[test]
    fn fixed_point_examples() {
        let a = pell_fixed_point(1, PellFixedVariant::A).unwrap();
        assert!(a.holds());
        let at1 = a.point.evaluate(&int(1)).unwrap();
        assert_eq!(at1.to_string(), "2.5|_12");
        assert_eq!(at1.value(), int(29));
        let c = pell_fixed_point(1, PellFixedVariant::C).unwrap();
        assert!(c.holds());
        assert_eq!(c.point.hi, poly(&[0, 2]));
        assert_eq!(c.point.lo, poly(&[1, 0, 4]));
        assert_eq!(c.point.base, poly(&[0, 4, 0, 8]));
        assert!(pell_fixed_point(0, PellFixedVariant::B).is_err());
    }

    #[test]
    fn cycle_examples() {
        let c = pell_cycle(CycleKind::TypeI, 2).unwrap();
        assert!(c.holds());
        assert_eq!(c.elements.len(), 2);
        assert_eq!(c.elements[0].hi, IntPoly::zero());
        assert_eq!(c.elements[0].lo, pell(3));
        assert_eq!(c.elements[1].hi, pell(2));
        assert_eq!(c.elements[1].lo, pell(1));

        let c = pell_cycle(CycleKind::TypeII, 2).unwrap();
        assert_eq!(c.elements.len(), 1);
        assert!(c.holds());

        let c = pell_cycle(CycleKind::TypeI, 3).unwrap();
        assert_eq!(*c.pairs.last().unwrap(), IndexPair::new(2, 3));
        assert!(c.holds());
    }

    #[test]
    fn evaluated_cycles() {
        let c = pell_evaluate_cycle(CycleKind::TypeI, 2, &int(1)).unwrap();
        assert_eq!(c.base(), &int(12));
        assert_eq!(c.elements(), &[int(5), int(25)]);
        let c = pell_evaluate_cycle(CycleKind::TypeI, 3, &int(1)).unwrap();
        assert_eq!(c.base(), &int(70));
        let c = pell_evaluate_cycle(CycleKind::TypeI, 2, &int(2)).unwrap();
        assert_eq!(c.base(), &int(72));
        assert!(c.contains(&int(17)));
        assert!(pell_evaluate_cycle(CycleKind::TypeI, 2, &int(0)).is_err());
    }

    #[test]
    fn arith_examples() {
        for fam in [
            PellArithFamily::CycleTypeI { n: 2, i: 0 },
            PellArithFamily::CycleTypeII { n: 2, i: 1 },
            PellArithFamily::FixedPoint { n: 1 },
        ] {
            assert!(pell_arith_check(fam, &ks()).unwrap().holds(), "{fam}");
        }
        let few = [int(0), int(1), int(1), int(2)];
        assert!(pell_arith_check(PellArithFamily::FixedPoint { n: 1 }, &few).is_err());
        assert!(pell_arith_check(PellArithFamily::CycleTypeII { n: 2, i: 3 }, &ks()).is_err());
    }

    #[test]
    fn arith_check_rejects_a_wrong_family() {
        // Shifting the base by one index must break the fixed-point identity.
        let k = int(2);
        let u = &pell(1) + &(&pell(2) * &pell(3)).scale(&k);
        let base = &pell(5) + &(&pell(3) * &pell(5)).scale(&k);
        let bad = PellDigitPair::new(&pell(2) * &u, &pell(3) * &u, base);
        assert!(!bad.fixed_residual().is_zero());
    }

    #[test]
    fn arith_cycle_matches_plain_cycle_at_zero() {
        let plain = pell_cycle(CycleKind::TypeII, 5).unwrap();
        let arith = pell_arith_cycle(CycleKind::TypeII, 5, &int(0)).unwrap();
        assert_eq!(plain, arith);
        let shifted = pell_arith_cycle(CycleKind::TypeII, 5, &int(3)).unwrap();
        assert!(shifted.holds());
    }
}
