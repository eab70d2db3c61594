//! Base-`b` digits, the sum-of-squared-digits map `S_b`, orbits, and
//! exhaustive enumeration of cycles and fixed points.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::num::Scalar;

pub(crate) fn check_base<T: Scalar>(b: &T) -> Result<()> {
    if *b < T::two() {
        return Err(Error::InvalidBase(b.to_string()));
    }
    Ok(())
}

/// Base-`b` expansion, most significant digit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digits<T> {
    base: T,
    digits: Vec<T>,
}

impl<T: Scalar> Digits<T> {
    pub fn base(&self) -> &T {
        &self.base
    }

    pub fn digits(&self) -> &[T] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Horner recomposition.
    pub fn value(&self) -> T {
        self.digits
            .iter()
            .fold(T::zero(), |acc, d| acc * self.base.clone() + d.clone())
    }
}

pub fn to_digits<T: Scalar>(n: &T, b: &T) -> Result<Digits<T>> {
    check_base(b)?;
    if *n < T::zero() {
        return Err(Error::domain(format!("cannot expand negative value {n}")));
    }
    if n.is_zero() {
        return Ok(Digits {
            base: b.clone(),
            digits: vec![T::zero()],
        });
    }
    let mut digits = Vec::new();
    let mut rest = n.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(b);
        digits.push(r);
        rest = q;
    }
    digits.reverse();
    Ok(Digits {
        base: b.clone(),
        digits,
    })
}

pub(crate) fn digit_count<T: Scalar>(n: &T, b: &T) -> usize {
    let mut count = 0;
    let mut rest = n.clone();
    while !rest.is_zero() {
        rest = rest / b.clone();
        count += 1;
    }
    count.max(1)
}

#[inline]
pub(crate) fn ssd<T: Scalar>(n: &T, b: &T) -> T {
    let mut sum = T::zero();
    let mut rest = n.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(b);
        sum = sum + r.clone() * r;
        rest = q;
    }
    sum
}

/// `S_b(n)`: the sum of the squares of the base-`b` digits of `n`.
pub fn sum_square_digits<T: Scalar>(n: &T, b: &T) -> Result<T> {
    check_base(b)?;
    if *n < T::one() {
        return Err(Error::domain(format!(
            "S_b is defined on positive integers, got {n}"
        )));
    }
    Ok(ssd(n, b))
}

/// A two-digit numeral `hi.lo|_b` with value `hi·b + lo` in `{1, …, b²−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoDigit<T> {
    base: T,
    hi: T,
    lo: T,
}

impl<T: Scalar> TwoDigit<T> {
    pub fn new(hi: T, lo: T, base: T) -> Result<Self> {
        check_base(&base)?;
        for (name, d) in [("high", &hi), ("low", &lo)] {
            if *d < T::zero() || *d >= base {
                return Err(Error::domain(format!(
                    "{name} digit {d} is not a digit in base {base}"
                )));
            }
        }
        if hi.is_zero() && lo.is_zero() {
            return Err(Error::domain("0.0 is not a positive two-digit value"));
        }
        Ok(TwoDigit { base, hi, lo })
    }

    pub fn from_value(value: &T, base: &T) -> Result<Self> {
        check_base(base)?;
        if *value < T::one() || *value >= base.square() {
            return Err(Error::domain(format!(
                "{value} is not in 1..{base}² − 1"
            )));
        }
        let (hi, lo) = value.div_rem(base);
        Ok(TwoDigit {
            base: base.clone(),
            hi,
            lo,
        })
    }

    pub fn base(&self) -> &T {
        &self.base
    }

    pub fn hi(&self) -> &T {
        &self.hi
    }

    pub fn lo(&self) -> &T {
        &self.lo
    }

    pub fn value(&self) -> T {
        self.hi.clone() * self.base.clone() + self.lo.clone()
    }

    /// `S_b` of this numeral, i.e. `hi² + lo²`.
    pub fn image(&self) -> T {
        self.hi.square() + self.lo.square()
    }

    pub fn is_fixed(&self) -> bool {
        self.image() == self.value()
    }

    /// The numeral `lo.hi` read in another base.
    pub fn swapped_in(&self, base: T) -> Result<Self> {
        TwoDigit::new(self.lo.clone(), self.hi.clone(), base)
    }
}

impl<T: Scalar> fmt::Display for TwoDigit<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}|_{}", self.hi, self.lo, self.base)
    }
}

/// A periodic orbit of `S_b`, stored in standard form (minimum first).
///
/// Length one is allowed so that an [`OrbitRecord`] can end in a fixed
/// point; [`enumerate_cycles`] only reports lengths of two or more.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle<T> {
    base: T,
    elements: Vec<T>,
}

impl<T: Scalar> Cycle<T> {
    /// Validates closure, distinctness and the `2b²` bound, then rotates the
    /// elements into standard form.
    pub fn new(base: T, elements: Vec<T>) -> Result<Self> {
        check_base(&base)?;
        if elements.is_empty() {
            return Err(Error::domain("a cycle needs at least one element"));
        }
        let bound = T::two() * base.square();
        let mut seen = std::collections::HashSet::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if *e < T::one() || *e >= bound {
                return Err(Error::domain(format!(
                    "cycle element {e} lies outside 1..2·{base}²"
                )));
            }
            if !seen.insert(e) {
                return Err(Error::domain(format!("cycle element {e} repeats")));
            }
            let next = &elements[(i + 1) % elements.len()];
            let image = ssd(e, &base);
            if image != *next {
                return Err(Error::domain(format!(
                    "S_{base}({e}) = {image}, expected {next}"
                )));
            }
        }
        Ok(Self::normalized(base, elements))
    }

    fn normalized(base: T, mut elements: Vec<T>) -> Self {
        let pos = elements
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        elements.rotate_left(pos);
        Cycle { base, elements }
    }

    pub fn base(&self) -> &T {
        &self.base
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_fixed_point(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn min(&self) -> &T {
        &self.elements[0]
    }

    pub fn contains(&self, v: &T) -> bool {
        self.elements.contains(v)
    }

    /// The elements starting from `start`, if it belongs to the cycle.
    pub fn rotated_to(&self, start: &T) -> Option<Vec<T>> {
        let pos = self.elements.iter().position(|e| e == start)?;
        let mut out = self.elements.clone();
        out.rotate_left(pos);
        Some(out)
    }
}

impl<T: Scalar> fmt::Display for Cycle<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// The trajectory of `S_b` from a seed: a pre-periodic tail and the cycle it
/// falls into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord<T> {
    pub seed: T,
    pub base: T,
    /// Strictly pre-periodic values, starting with the seed. Empty when the
    /// seed already lies on its cycle.
    pub tail: Vec<T>,
    pub cycle: Cycle<T>,
    /// First cycle element reached from the seed.
    pub entry: T,
}

impl<T: Scalar> OrbitRecord<T> {
    pub fn is_periodic(&self) -> bool {
        self.tail.is_empty()
    }

    /// Tail followed by one lap of the cycle in visiting order.
    pub fn trajectory(&self) -> Vec<T> {
        let mut out = self.tail.clone();
        out.extend(
            self.cycle
                .rotated_to(&self.entry)
                .expect("entry lies on the cycle"),
        );
        out
    }
}

fn saturating_u64<T: Scalar>(v: &T) -> u64 {
    v.to_u64().unwrap_or(u64::MAX)
}

/// Iterates `S_b` from `seed` until a value repeats.
pub fn orbit<T: Scalar>(seed: &T, b: &T) -> Result<OrbitRecord<T>> {
    check_base(b)?;
    if *seed < T::one() {
        return Err(Error::domain(format!(
            "orbit seed must be positive, got {seed}"
        )));
    }
    // Contraction needs at most one step per surplus digit; after that the
    // orbit lives below 3·b² and must repeat within that many steps.
    let bu = saturating_u64(b);
    let cap = bu
        .saturating_mul(bu)
        .saturating_mul(4)
        .saturating_add(digit_count(seed, b) as u64 + 4);
    orbit_within(seed, b, cap)?.ok_or_else(|| {
        Error::internal(format!("orbit of {seed} in base {b} exceeded {cap} steps"))
    })
}

/// Like [`orbit`], but gives up with `None` after `max_steps` iterations.
pub fn orbit_within<T: Scalar>(seed: &T, b: &T, max_steps: u64) -> Result<Option<OrbitRecord<T>>> {
    check_base(b)?;
    if *seed < T::one() {
        return Err(Error::domain(format!(
            "orbit seed must be positive, got {seed}"
        )));
    }
    let mut position: HashMap<T, usize> = HashMap::new();
    let mut trajectory: Vec<T> = Vec::new();
    let mut current = seed.clone();
    let mut steps: u64 = 0;
    loop {
        if let Some(&start) = position.get(&current) {
            let cycle_part = trajectory.split_off(start);
            let entry = cycle_part[0].clone();
            let cycle = Cycle::new(b.clone(), cycle_part)
                .map_err(|e| Error::internal(format!("orbit produced a bad cycle: {e}")))?;
            return Ok(Some(OrbitRecord {
                seed: seed.clone(),
                base: b.clone(),
                tail: trajectory,
                cycle,
                entry,
            }));
        }
        if steps > max_steps {
            return Ok(None);
        }
        position.insert(current.clone(), trajectory.len());
        let next = ssd(&current, b);
        trajectory.push(std::mem::replace(&mut current, next));
        steps += 1;
    }
}

/// Largest base accepted by the exhaustive scans.
pub const MAX_ENUMERATION_BASE: u64 = 10_000;

fn search_limit<T: Scalar>(b: &T, what: &str) -> Result<usize> {
    let bu = b
        .to_u64()
        .filter(|&v| v <= MAX_ENUMERATION_BASE)
        .ok_or_else(|| Error::domain(format!("base {b} is too large for {what}")))?;
    Ok((2 * bu * bu) as usize)
}

/// All cycles of length at least two, in standard form, sorted by minimum.
///
/// Every seed in `1..2b²` is followed until it either closes a new loop or
/// joins a trajectory explored from an earlier seed. Values at or above
/// `2b²` have three digits with leading digit at most 2, so their image is
/// below `2b²`; only that range needs a resolved mark.
pub fn enumerate_cycles<T: Scalar>(b: &T) -> Result<Vec<Cycle<T>>> {
    check_base(b)?;
    let limit = search_limit(b, "exhaustive cycle enumeration")?;
    let mut resolved = vec![false; limit];
    let is_resolved = |resolved: &[bool], v: &T| v.to_usize().is_some_and(|i| i < limit && resolved[i]);
    let mut cycles = Vec::new();
    let mut path: Vec<T> = Vec::new();
    let mut on_path: HashMap<T, usize> = HashMap::new();

    for s in 1..limit {
        if resolved[s] {
            continue;
        }
        path.clear();
        on_path.clear();
        let mut v = T::from_usize(s).expect("seed fits the scalar type");
        while !is_resolved(&resolved, &v) && !on_path.contains_key(&v) {
            on_path.insert(v.clone(), path.len());
            let next = ssd(&v, b);
            path.push(std::mem::replace(&mut v, next));
        }
        if let Some(&start) = on_path.get(&v) {
            let elements = path[start..].to_vec();
            if elements.len() >= 2 {
                cycles.push(Cycle::new(b.clone(), elements).map_err(|e| {
                    Error::internal(format!("enumeration produced a bad cycle: {e}"))
                })?);
            }
        }
        for p in &path {
            if let Some(i) = p.to_usize().filter(|&i| i < limit) {
                resolved[i] = true;
            }
        }
    }
    cycles.sort_by(|a, c| a.min().cmp(c.min()));
    Ok(cycles)
}

/// All `n` in `1..b²` with `S_b(n) = n`, ascending.
pub fn enumerate_fixed_points_bruteforce<T: Scalar>(b: &T) -> Result<Vec<T>> {
    check_base(b)?;
    let limit = b.square();
    let mut out = Vec::new();
    let mut n = T::one();
    while n < limit {
        if ssd(&n, b) == n {
            out.push(n.clone());
        }
        n = n + T::one();
    }
    Ok(out)
}

/// Every `m` in `1..2b²` with `S_b(m) = value`, ascending.
///
/// Walks the digit triples `(a, c, d)` of `m = a·b² + c·b + d` directly, so
/// each candidate costs one addition instead of a digit decomposition.
pub fn preimages_below_two_b_squared<T: Scalar>(value: &T, b: &T) -> Result<Vec<T>> {
    check_base(b)?;
    let mut out = Vec::new();
    let b2 = b.square();
    let mut a = T::zero();
    while a < T::two() {
        let mut c = T::zero();
        while c < *b {
            let partial = a.square() + c.square();
            if partial <= *value {
                let rest = value.clone() - partial;
                let d = rest.sqrt();
                if d.square() == rest && d < *b {
                    let m = a.clone() * b2.clone() + c.clone() * b.clone() + d;
                    if !m.is_zero() {
                        out.push(m);
                    }
                }
            }
            c = c + T::one();
        }
        a = a + T::one();
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn digits_examples() {
        assert_eq!(to_digits(&7921u64, &144).unwrap().digits(), &[55, 1]);
        assert_eq!(to_digits(&0u64, &10).unwrap().digits(), &[0]);
        assert_eq!(to_digits(&1728u64, &12).unwrap().digits(), &[1, 0, 0, 0]);
        assert_eq!(to_digits(&1728u64, &12).unwrap().value(), 1728);
    }

    #[test]
    fn invalid_base_is_rejected() {
        assert!(matches!(to_digits(&5u64, &1), Err(Error::InvalidBase(_))));
        assert!(matches!(sum_square_digits(&5u64, &0), Err(Error::InvalidBase(_))));
        assert!(matches!(orbit(&5u64, &1), Err(Error::InvalidBase(_))));
        assert!(enumerate_cycles(&1u64).is_err());
        assert!(to_digits(&BigInt::from(-3), &BigInt::from(10)).is_err());
    }

    #[test]
    fn sum_square_digits_examples() {
        assert_eq!(sum_square_digits(&89u64, &144).unwrap(), 7921);
        assert_eq!(sum_square_digits(&25u64, &12).unwrap(), 5);
        for b in 2u64..40 {
            assert_eq!(sum_square_digits(&1, &b).unwrap(), 1);
        }
        assert!(sum_square_digits(&0u64, &10).is_err());
    }

    #[test]
    fn two_digit_validation() {
        let t = TwoDigit::new(2u64, 5, 12).unwrap();
        assert_eq!(t.value(), 29);
        assert!(t.is_fixed());
        assert_eq!(t.to_string(), "2.5|_12");
        assert!(TwoDigit::new(12u64, 0, 12).is_err());
        assert!(TwoDigit::new(0u64, 0, 12).is_err());
        assert_eq!(TwoDigit::from_value(&125u64, &12).unwrap(), TwoDigit::new(10, 5, 12).unwrap());
        assert!(TwoDigit::from_value(&144u64, &12).is_err());
    }

    #[test]
    fn orbit_examples() {
        let o = orbit(&5u64, &12).unwrap();
        assert!(o.is_periodic());
        assert_eq!(o.cycle.elements(), &[5, 25]);

        let o = orbit(&1u64, &10).unwrap();
        assert!(o.cycle.is_fixed_point());
        assert_eq!(o.cycle.elements(), &[1]);

        let o = orbit(&89u64, &144).unwrap();
        assert_eq!(o.trajectory(), vec![89, 7921, 3026, 445, 178, 1157]);
        assert_eq!(o.cycle.elements(), &[89, 7921, 3026, 445, 178, 1157]);
    }

    #[test]
    fn orbit_tail_and_cycle_split() {
        // 7 → 49 → 97 → 130 → 10 → 1 in base 10
        let o = orbit(&7u64, &10).unwrap();
        assert_eq!(o.tail, vec![7, 49, 97, 130, 10]);
        assert_eq!(o.cycle.elements(), &[1]);
        for w in o.tail.windows(2) {
            assert_eq!(ssd(&w[0], &10), w[1]);
        }
        assert!(o.cycle.contains(&ssd(o.tail.last().unwrap(), &10)));
    }

    #[test]
    fn base_twelve_cycles() {
        let cycles = enumerate_cycles(&12u64).unwrap();
        let got: Vec<Vec<u64>> = cycles.iter().map(|c| c.elements().to_vec()).collect();
        assert_eq!(
            got,
            vec![
                vec![5, 25],
                vec![8, 64, 41, 34, 104, 128, 164, 66, 61, 26],
                vec![20, 65, 50],
                vec![80, 100],
            ]
        );
    }

    #[test]
    fn small_bases() {
        assert!(enumerate_cycles(&2u64).unwrap().is_empty());
        let three = enumerate_cycles(&3u64).unwrap();
        assert_eq!(three.len(), 1);
        assert_eq!(three[0].elements(), &[2, 4]);
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(enumerate_fixed_points_bruteforce(&12u64).unwrap(), vec![1, 29, 125]);
        assert_eq!(enumerate_fixed_points_bruteforce(&2u64).unwrap(), vec![1]);
        assert_eq!(enumerate_fixed_points_bruteforce(&7u64).unwrap(), vec![1, 10, 25, 32, 45]);
    }

    #[test]
    fn cycle_rejects_non_cycles() {
        assert!(Cycle::new(12u64, vec![5, 26]).is_err());
        assert!(Cycle::new(12u64, vec![5, 25, 5]).is_err());
        let c = Cycle::new(12u64, vec![25, 5]).unwrap();
        assert_eq!(c.elements(), &[5, 25]);
        assert_eq!(c.to_string(), "{5, 25}");
    }

    #[test]
    fn preimage_scan_matches_naive() {
        for b in 2u64..12 {
            for v in 1..2 * b * b {
                let naive: Vec<u64> = (1..2 * b * b).filter(|m| ssd(m, &b) == v).collect();
                assert_eq!(preimages_below_two_b_squared(&v, &b).unwrap(), naive, "b={b} v={v}");
            }
        }
    }

    #[test]
    fn bigint_and_u64_agree() {
        let big = enumerate_cycles(&BigInt::from(12)).unwrap();
        let small = enumerate_cycles(&12u64).unwrap();
        assert_eq!(big.len(), small.len());
        for (x, y) in big.iter().zip(&small) {
            let xs: Vec<String> = x.elements().iter().map(|e| e.to_string()).collect();
            let ys: Vec<String> = y.elements().iter().map(|e| e.to_string()).collect();
            assert_eq!(xs, ys);
        }
    }

    #[test]
    fn orbit_within_gives_up() {
        assert!(orbit_within(&7u64, &10, 2).unwrap().is_none());
        let rec = orbit_within(&7u64, &10, 10).unwrap().unwrap();
        assert_eq!(rec, orbit(&7u64, &10).unwrap());
    }
}
