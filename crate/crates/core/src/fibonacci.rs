//! Fibonacci numbers, the classical identities as exact residuals, the
//! type I/II step formulas, Fibonacci cycle constructors, isolated
//! Fibonacci fixed points, and the arithmetic-progression brackets.

use std::fmt;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::dynamics::{preimages_below_two_b_squared, sum_square_digits, TwoDigit};
use crate::error::{Error, Result};
use crate::pairs::{fib_base, fib_digit, pair_set, psi, IndexPair, Sign};

static FIB_TABLE: LazyLock<RwLock<Vec<BigInt>>> =
    LazyLock::new(|| RwLock::new(vec![BigInt::zero(), BigInt::from(1)]));

/// `F_n` with `F_0 = 0`, `F_1 = 1`, memoized.
pub fn fib(n: usize) -> BigInt {
    {
        let table = FIB_TABLE.read().expect("fib table lock");
        if let Some(v) = table.get(n) {
            return v.clone();
        }
    }
    let mut table = FIB_TABLE.write().expect("fib table lock");
    while table.len() <= n {
        let len = table.len();
        let next = &table[len - 1] + &table[len - 2];
        table.push(next);
    }
    table[n].clone()
}

fn neg_one_pow(e: usize) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

/// The identities checked as `LHS − RHS`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FibIdentity {
    /// `F_n² = F_{n−1}F_{n+1} − (−1)^n`, `n ≥ 1`.
    Cassini { n: usize },
    /// `F_n² = F_{n+r}F_{n−r} + (−1)^{n−r}F_r²`, `r ≤ n`.
    Catalan { n: usize, r: usize },
    /// `F_{n+r}F_{n+s} = F_nF_{n+r+s} + (−1)^n F_rF_s`.
    Vajda { n: usize, r: usize, s: usize },
    /// `F_{2n+1} = F_{n+1}² + F_n²`.
    Lucas { n: usize },
    /// `F_{2n} = F_{n+1}² − F_{n−1}²`, `n ≥ 1`.
    DOcagne { n: usize },
    /// `F_{2n+1}F_{4n−1} = F_{3n}² + F_{n−1}²`, `n ≥ 1`.
    Prod3nMinus { n: usize },
    /// `F_{2n−1}F_{4n+1} = F_{3n}² + F_{n+1}²`, `n ≥ 1`.
    Prod3nPlus { n: usize },
}

impl FibIdentity {
    pub fn name(&self) -> &'static str {
        match self {
            FibIdentity::Cassini { .. } => "cassini",
            FibIdentity::Catalan { .. } => "catalan",
            FibIdentity::Vajda { .. } => "vajda",
            FibIdentity::Lucas { .. } => "lucas",
            FibIdentity::DOcagne { .. } => "docagne",
            FibIdentity::Prod3nMinus { .. } => "prod3n_minus",
            FibIdentity::Prod3nPlus { .. } => "prod3n_plus",
        }
    }
}

impl fmt::Display for FibIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FibIdentity::Catalan { n, r } => write!(f, "catalan(n={n}, r={r})"),
            FibIdentity::Vajda { n, r, s } => write!(f, "vajda(n={n}, r={r}, s={s})"),
            FibIdentity::Cassini { n }
            | FibIdentity::Lucas { n }
            | FibIdentity::DOcagne { n }
            | FibIdentity::Prod3nMinus { n }
            | FibIdentity::Prod3nPlus { n } => write!(f, "{}(n={n})", self.name()),
        }
    }
}

/// Exact residual `LHS − RHS`; zero means the identity holds there.
pub fn check_identity(id: FibIdentity) -> Result<BigInt> {
    let f = fib;
    let sq = |i: usize| {
        let v = fib(i);
        &v * &v
    };
    let need = |ok: bool| {
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!("invalid indices for {id}")))
        }
    };
    Ok(match id {
        FibIdentity::Cassini { n } => {
            need(n >= 1)?;
            sq(n) - (f(n - 1) * f(n + 1) - neg_one_pow(n))
        }
        FibIdentity::Catalan { n, r } => {
            need(r <= n)?;
            sq(n) - (f(n + r) * f(n - r) + neg_one_pow(n - r) * sq(r))
        }
        FibIdentity::Vajda { n, r, s } => {
            f(n + r) * f(n + s) - (f(n) * f(n + r + s) + neg_one_pow(n) * f(r) * f(s))
        }
        FibIdentity::Lucas { n } => f(2 * n + 1) - (sq(n + 1) + sq(n)),
        FibIdentity::DOcagne { n } => {
            need(n >= 1)?;
            f(2 * n) - (sq(n + 1) - sq(n - 1))
        }
        FibIdentity::Prod3nMinus { n } => {
            need(n >= 1)?;
            f(2 * n + 1) * f(4 * n - 1) - (sq(3 * n) + sq(n - 1))
        }
        FibIdentity::Prod3nPlus { n } => {
            need(n >= 1)?;
            f(2 * n - 1) * f(4 * n + 1) - (sq(3 * n) + sq(n + 1))
        }
    })
}

fn assert_zero(name: &str, params: String, residual: BigInt) -> Result<()> {
    if residual.is_zero() {
        Ok(())
    } else {
        Err(Error::IdentityFailed {
            name: name.into(),
            params,
            residual: residual.to_string(),
        })
    }
}

/// Type I step for `N = 2n − 1`, `0 ≤ i ≤ n − 1`: returns
/// `(N − (2j+1), 2j+1)` with `j = min(i, N − i)` after checking
/// `F_{N−i}² + F_i² = F_{N−(2j+1)}F_{N+1} + F_{2j+1}`.
pub fn type1_step(total: usize, i: usize) -> Result<(usize, usize)> {
    if total.is_multiple_of(2) || i > (total - 1) / 2 {
        return Err(Error::domain(format!(
            "type I step needs odd N = 2n−1 and 0 ≤ i ≤ n−1; got N={total}, i={i}"
        )));
    }
    let j = i.min(total - i);
    let (hi, lo) = (total - (2 * j + 1), 2 * j + 1);
    let residual = fib(total - i).pow(2) + fib(i).pow(2) - (fib(hi) * fib(total + 1) + fib(lo));
    assert_zero("type I step", format!("N={total}, i={i}"), residual)?;
    Ok((hi, lo))
}

/// Type II step for `N = 2n + 1`, `1 ≤ i ≤ n + 1`: returns
/// `(N − (2j−1), 2j−1)` with `j = min(i, N − i)` after checking
/// `F_{N−i}² + F_i² = F_{N−(2j−1)}F_{N−1} + F_{2j−1}`.
pub fn type2_step(total: usize, i: usize) -> Result<(usize, usize)> {
    if total.is_multiple_of(2) || total < 3 || i < 1 || i > total.div_ceil(2) {
        return Err(Error::domain(format!(
            "type II step needs odd N = 2n+1 ≥ 3 and 1 ≤ i ≤ n+1; got N={total}, i={i}"
        )));
    }
    let j = i.min(total - i);
    let (hi, lo) = (total - (2 * j - 1), 2 * j - 1);
    let residual = fib(total - i).pow(2) + fib(i).pow(2) - (fib(hi) * fib(total - 1) + fib(lo));
    assert_zero("type II step", format!("N={total}, i={i}"), residual)?;
    Ok((hi, lo))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CycleKind {
    /// Base `F_{2n}`, start `F_0.F_{2n−1}`, driven by `ψ+` on `P+(2n−1)`.
    TypeI,
    /// Base `F_{2n}`, start `F_2.F_{2n−1}`, driven by `ψ−` on `P−(2n+1)`.
    TypeII,
}

impl CycleKind {
    pub fn sign(self) -> Sign {
        match self {
            CycleKind::TypeI => Sign::Plus,
            CycleKind::TypeII => Sign::Minus,
        }
    }

    /// `N` for a given `n`.
    pub fn total(self, n: usize) -> usize {
        match self {
            CycleKind::TypeI => 2 * n - 1,
            CycleKind::TypeII => 2 * n + 1,
        }
    }

    pub fn initial_pair(self, n: usize) -> IndexPair {
        match self {
            CycleKind::TypeI => IndexPair::new(0, 2 * n - 1),
            CycleKind::TypeII => IndexPair::new(2, 2 * n - 1),
        }
    }

    /// The parity-dependent terminal pair.
    pub fn terminal_pair(self, n: usize) -> IndexPair {
        let even = n.is_multiple_of(2);
        match (self, even) {
            (CycleKind::TypeI, true) => IndexPair::new(n, n - 1),
            (CycleKind::TypeI, false) => IndexPair::new(n - 1, n),
            (CycleKind::TypeII, true) => IndexPair::new(n, n + 1),
            (CycleKind::TypeII, false) => IndexPair::new(n + 1, n),
        }
    }
}

impl fmt::Display for CycleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CycleKind::TypeI => "type I",
            CycleKind::TypeII => "type II",
        })
    }
}

/// A Fibonacci-digit cycle of `S_b` and the index pairs that generate it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibCycleSpec {
    pub kind: CycleKind,
    pub n: usize,
    pub k: u64,
    pub base: BigInt,
    pub pairs: Vec<IndexPair>,
    pub elements: Vec<TwoDigit<BigInt>>,
}

impl FibCycleSpec {
    pub fn total(&self) -> usize {
        self.kind.total(self.n)
    }

    /// Type II at `n = 2` degenerates to a fixed point.
    pub fn is_fixed_point(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn values(&self) -> Vec<BigInt> {
        self.elements.iter().map(TwoDigit::value).collect()
    }

    pub fn terminal(&self) -> &TwoDigit<BigInt> {
        self.elements.last().expect("cycles are nonempty")
    }
}

/// Builds the type I/II cycle by iterating `ψ±` from the initial pair and
/// checks every step, including the wraparound, against `S_b`.
pub fn build_cycle(kind: CycleKind, n: usize, k: u64) -> Result<FibCycleSpec> {
    if n < 2 {
        return Err(Error::domain(format!("Fibonacci cycles need n ≥ 2, got {n}")));
    }
    let sign = kind.sign();
    let total = kind.total(n);
    let kb = BigInt::from(k);
    let base = fib_base(sign, total, &kb);
    let start = kind.initial_pair(n);

    let mut pairs = vec![start];
    let mut cur = psi(sign, total, start)?;
    let limit = pair_set(sign, total)?.len();
    while cur != start {
        if pairs.len() > limit {
            return Err(Error::internal(format!("{kind} n={n}: ψ orbit does not close")));
        }
        pairs.push(cur);
        cur = psi(sign, total, cur)?;
    }

    let elements = pairs
        .iter()
        .map(|p| {
            TwoDigit::new(fib_digit(sign, p.r, &kb), fib_digit(sign, p.s, &kb), base.clone())
                .map_err(|e| Error::internal(format!("{kind} n={n} k={k} pair {p}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;

    for (idx, p) in pairs.iter().enumerate() {
        let step = match kind {
            CycleKind::TypeI => type1_step(total, p.min_index())?,
            CycleKind::TypeII => type2_step(total, p.min_index())?,
        };
        let next = pairs[(idx + 1) % pairs.len()];
        if step != (next.r, next.s) {
            return Err(Error::internal(format!("{kind} n={n}: step from {p} disagrees with ψ")));
        }
        let here = &elements[idx];
        let there = &elements[(idx + 1) % elements.len()];
        let s = sum_square_digits(&here.value(), &base)?;
        if s != there.value() || here.image() != s {
            return Err(Error::IdentityFailed {
                name: format!("{kind} cycle closure"),
                params: format!("n={n}, k={k}, element {here}"),
                residual: (s - there.value()).to_string(),
            });
        }
    }

    let terminal = *pairs.last().expect("nonempty");
    if terminal != kind.terminal_pair(n) {
        return Err(Error::internal(format!(
            "{kind} n={n}: terminal pair {terminal}, expected {}",
            kind.terminal_pair(n)
        )));
    }

    Ok(FibCycleSpec {
        kind,
        n,
        k,
        base,
        pairs,
        elements,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixedVariant {
    /// `F_{2n}.F_{4n−1}` in base `F_{6n−2}`.
    Minus,
    /// `F_{2n}.F_{4n+1}` in base `F_{6n+2}`.
    Plus,
}

/// Result of the brute-force preimage scan over `1..2b²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Isolation {
    /// No preimage other than the point itself.
    Verified,
    /// Values other than the point that map onto it.
    Refuted { preimages: Vec<BigInt> },
    /// The base was too large for the scan.
    NotChecked,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibFixedPoint {
    pub n: usize,
    pub variant: FixedVariant,
    pub point: TwoDigit<BigInt>,
    pub isolation: Isolation,
}

/// Bases above this are not scanned for preimages.
pub const ISOLATION_SCAN_MAX_BASE: u64 = 1 << 24;

pub fn isolated_fib_fixed_point(
    n: usize,
    variant: FixedVariant,
    scan_isolation: bool,
) -> Result<FibFixedPoint> {
    if n < 1 {
        return Err(Error::domain("Fibonacci fixed points need n ≥ 1"));
    }
    let (lo_idx, base_idx) = match variant {
        FixedVariant::Minus => (4 * n - 1, 6 * n - 2),
        FixedVariant::Plus => (4 * n + 1, 6 * n + 2),
    };
    let base = fib(base_idx);
    let point = TwoDigit::new(fib(2 * n), fib(lo_idx), base.clone())?;
    if !point.is_fixed() {
        return Err(Error::IdentityFailed {
            name: "Fibonacci fixed point".into(),
            params: format!("n={n}, {variant:?}"),
            residual: (point.image() - point.value()).to_string(),
        });
    }
    let small_base = base.to_u64().filter(|&b| b <= ISOLATION_SCAN_MAX_BASE);
    let isolation = match (scan_isolation, small_base) {
        (true, Some(b)) => {
            let value = point.value().to_u64().expect("value below b²");
            let others: Vec<BigInt> = preimages_below_two_b_squared(&value, &b)?
                .into_iter()
                .filter(|&m| m != value)
                .map(BigInt::from)
                .collect();
            if others.is_empty() {
                Isolation::Verified
            } else {
                Isolation::Refuted { preimages: others }
            }
        }
        _ => Isolation::NotChecked,
    };
    Ok(FibFixedPoint {
        n,
        variant,
        point,
        isolation,
    })
}

/// The `k⁰`, `k¹`, `k²` coefficients of `x₀² + x₁² − y₁·b − y₀` for one
/// arithmetic step.
///
/// Type I (`N = 2n−1`, `0 ≤ i ≤ n−1`): `b = F_{N+1} + F_{N+2}k`,
/// `x₀ = F_i + F_{i+1}k`, `x₁ = F_{N−i} + F_{N−i+1}k`,
/// `y₀ = F_{2i+1} + F_{2i+2}k`, `y₁ = F_{N−2i−1} + F_{N−2i}k`.
///
/// Type II (`N = 2n+1`, `1 ≤ i ≤ n`): `b = F_{N−1} + F_{N−2}k`,
/// `x₀ = F_i + F_{i−1}k`, `x₁ = F_{N−i} + F_{N−i−1}k`,
/// `y₀ = F_{2i−1} + F_{2i−2}k`, `y₁ = F_{N−2i+1} + F_{N−2i}k`.
pub fn arith_step_check(kind: CycleKind, total: usize, i: usize) -> Result<[BigInt; 3]> {
    let terms = arith_terms(kind, total, i)?;
    let [(x0a, x0b), (x1a, x1b), (y0a, y0b), (y1a, y1b), (ba, bb)] = terms;
    let c0 = &x0a * &x0a + &x1a * &x1a - &y1a * &ba - &y0a;
    let c1 = 2 * &x0a * &x0b + 2 * &x1a * &x1b - &y1a * &bb - &y1b * &ba - &y0b;
    let c2 = &x0b * &x0b + &x1b * &x1b - &y1b * &bb;
    Ok([c0, c1, c2])
}

/// The same residual evaluated directly at one `k`.
pub fn arith_step_residual(kind: CycleKind, total: usize, i: usize, k: &BigInt) -> Result<BigInt> {
    let terms = arith_terms(kind, total, i)?;
    let at = |(a, b): &(BigInt, BigInt)| a + b * k;
    let [x0, x1, y0, y1, b] = terms.map(|t| at(&t));
    Ok(&x0 * &x0 + &x1 * &x1 - &y1 * &b - &y0)
}

/// `(constant, k-coefficient)` for `x₀, x₁, y₀, y₁, b`.
fn arith_terms(kind: CycleKind, total: usize, i: usize) -> Result<[(BigInt, BigInt); 5]> {
    let f = fib;
    match kind {
        CycleKind::TypeI => {
            if total.is_multiple_of(2) || i > (total - 1) / 2 {
                return Err(Error::domain(format!(
                    "type I bracket needs odd N = 2n−1, 0 ≤ i ≤ n−1; got N={total}, i={i}"
                )));
            }
            Ok([
                (f(i), f(i + 1)),
                (f(total - i), f(total - i + 1)),
                (f(2 * i + 1), f(2 * i + 2)),
                (f(total - 2 * i - 1), f(total - 2 * i)),
                (f(total + 1), f(total + 2)),
            ])
        }
        CycleKind::TypeII => {
            if total.is_multiple_of(2) || total < 3 || i < 1 || i > (total - 1) / 2 {
                return Err(Error::domain(format!(
                    "type II bracket needs odd N = 2n+1 ≥ 3, 1 ≤ i ≤ n; got N={total}, i={i}"
                )));
            }
            Ok([
                (f(i), f(i - 1)),
                (f(total - i), f(total - i - 1)),
                (f(2 * i - 1), f(2 * i - 2)),
                (f(total - 2 * i + 1), f(total - 2 * i)),
                (f(total - 1), f(total - 2)),
            ])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn fib_values() {
        assert_eq!(fib(12), int(144));
        assert_eq!(fib(0), int(0));
        // iterate the recurrence independently
        let (mut a, mut b) = (0u64, 1u64);
        for _ in 0..50 {
            (a, b) = (b, a + b);
        }
        assert_eq!(a, 12_586_269_025);
        assert_eq!(fib(50), int(12_586_269_025));
    }

    #[test]
    fn identity_examples() {
        assert!(check_identity(FibIdentity::Lucas { n: 5 }).unwrap().is_zero());
        for n in 0..10 {
            assert!(check_identity(FibIdentity::Catalan { n, r: n }).unwrap().is_zero());
        }
        assert!(check_identity(FibIdentity::Prod3nMinus { n: 2 }).unwrap().is_zero());
        assert!(check_identity(FibIdentity::Catalan { n: 2, r: 3 }).is_err());
        assert!(check_identity(FibIdentity::DOcagne { n: 0 }).is_err());
        assert!(check_identity(FibIdentity::Cassini { n: 0 }).is_err());
    }

    #[test]
    fn identity_residual_detects_off_by_one() {
        // F_6² − F_5·F_7 = 64 − 65 = −1 = (−1)^... so Cassini holds, but a
        // shifted Lucas (F_12 vs F_6² + F_5²) does not.
        let lucas_shift = fib(12) - (fib(6).pow(2) + fib(5).pow(2));
        assert!(!lucas_shift.is_zero());
    }

    #[test]
    fn type1_examples() {
        assert_eq!(type1_step(11, 0).unwrap(), (10, 1));
        assert_eq!(type1_step(11, 3).unwrap(), (4, 7));
        assert_eq!(type1_step(1, 0).unwrap(), (0, 1));
        assert!(type1_step(11, 6).is_err());
        assert!(type1_step(10, 0).is_err());
    }

    #[test]
    fn type2_examples() {
        assert_eq!(type2_step(13, 2).unwrap(), (10, 3));
        assert_eq!(type2_step(13, 6).unwrap(), (2, 11));
        assert_eq!(type2_step(3, 2).unwrap(), (2, 1));
        assert!(type2_step(13, 0).is_err());
        assert!(type2_step(13, 8).is_err());
    }

    #[test]
    fn table_one_cycle() {
        let c = build_cycle(CycleKind::TypeI, 6, 0).unwrap();
        assert_eq!(c.base, int(144));
        assert_eq!(c.values(), [89, 7921, 3026, 445, 178, 1157].map(int).to_vec());
    }

    #[test]
    fn type_two_base_144() {
        let c = build_cycle(CycleKind::TypeII, 6, 0).unwrap();
        assert_eq!(c.base, int(144));
        let idx: Vec<(usize, usize)> = c.pairs.iter().map(|p| (p.r, p.s)).collect();
        assert_eq!(idx, vec![(2, 11), (10, 3), (8, 5), (4, 9), (6, 7)]);
        assert_eq!(c.elements[0].value(), fib(13));
    }

    #[test]
    fn arithmetic_type_one_small() {
        let c = build_cycle(CycleKind::TypeI, 2, 1).unwrap();
        assert_eq!(c.base, int(8));
        assert_eq!(c.values(), vec![int(13), int(26)]);
    }

    #[test]
    fn type_two_n2_is_fixed() {
        let c = build_cycle(CycleKind::TypeII, 2, 0).unwrap();
        assert!(c.is_fixed_point());
        assert_eq!(c.elements[0].to_string(), "1.2|_3");
        assert!(build_cycle(CycleKind::TypeI, 1, 0).is_err());
    }

    #[test]
    fn fixed_point_examples() {
        let p = isolated_fib_fixed_point(1, FixedVariant::Minus, false).unwrap();
        assert_eq!(p.point.to_string(), "1.2|_3");
        assert_eq!(p.point.value(), int(5));
        let p = isolated_fib_fixed_point(1, FixedVariant::Plus, false).unwrap();
        assert_eq!(p.point.to_string(), "1.5|_21");
        assert_eq!(p.point.value(), int(26));
        let p = isolated_fib_fixed_point(2, FixedVariant::Minus, false).unwrap();
        assert_eq!(p.point.to_string(), "3.13|_55");
        assert_eq!(p.point.value(), int(178));
        assert_eq!(p.isolation, Isolation::NotChecked);
    }

    #[test]
    fn fixed_point_isolation_scan() {
        // 2.1|_3 = 7, 1.0.2|_3 = 11 and 1.2.0|_3 = 15 all map to 5.
        let p = isolated_fib_fixed_point(1, FixedVariant::Minus, true).unwrap();
        assert_eq!(
            p.isolation,
            Isolation::Refuted { preimages: vec![int(7), int(11), int(15)] }
        );
    }

    #[test]
    fn arith_brackets_examples() {
        let zero = [int(0), int(0), int(0)];
        assert_eq!(arith_step_check(CycleKind::TypeI, 11, 3).unwrap(), zero);
        assert_eq!(arith_step_check(CycleKind::TypeI, 1, 0).unwrap(), zero);
        assert_eq!(arith_step_check(CycleKind::TypeII, 13, 1).unwrap(), zero);
        assert!(arith_step_check(CycleKind::TypeII, 13, 7).is_err());
        assert!(arith_step_check(CycleKind::TypeI, 11, 6).is_err());
    }

    #[test]
    fn brackets_match_direct_expansion() {
        for (kind, total, i) in [(CycleKind::TypeI, 9, 2), (CycleKind::TypeII, 11, 4)] {
            let [c0, c1, c2] = arith_step_check(kind, total, i).unwrap();
            for k in -3i64..4 {
                let k = int(k);
                let via_brackets = &c0 + &c1 * &k + &c2 * &k * &k;
                assert_eq!(arith_step_residual(kind, total, i, &k).unwrap(), via_brackets);
            }
        }
    }
}
