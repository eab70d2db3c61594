//! One function per subcommand, each producing a [`Report`].

use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use sqdigits::*;

use crate::error::{CliError, CliResult};
use crate::report::{int, ints, Report};
use crate::row;

pub const OEIS_FIBONACCI: &str = "A000045";
pub const OEIS_PELL: &str = "A000129";

/// `x.y|_b` for two-digit values, dotted digits otherwise.
pub fn numeral(v: &BigInt, b: &BigInt) -> String {
    if let Ok(d) = TwoDigit::from_value(v, b) {
        return d.to_string();
    }
    match to_digits(v, b) {
        Ok(d) => {
            let ds: Vec<String> = d.digits().iter().map(ToString::to_string).collect();
            format!("{}|_{b}", ds.join("."))
        }
        Err(_) => v.to_string(),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn orbit_cmd(n: &BigInt, b: &BigInt, max_base: u64) -> CliResult<Report> {
    if *n < BigInt::one() {
        return Err(usage(format!("--n must be at least 1, got {n}")));
    }
    if *b < BigInt::from(2) {
        return Err(usage(format!("--base must be at least 2, got {b}")));
    }
    // Large bases are allowed as long as the orbit closes within the work a
    // base of size --max-base could need.
    let rec = if *b <= BigInt::from(max_base) {
        orbit(n, b)?
    } else {
        let budget = 4 * max_base * max_base;
        orbit_within(n, b, budget)?.ok_or_else(|| {
            CliError::Refused(format!(
                "orbit did not close within {budget} steps; base {b} exceeds --max-base {max_base}"
            ))
        })?
    };
    let lap = rec.cycle.rotated_to(&rec.entry).expect("entry lies on the cycle");
    let mut report = Report::new("orbit")
        .param("n", int(n))
        .param("base", int(b))
        .param("tail_length", rec.tail.len())
        .param("cycle_length", rec.cycle.len())
        .param("fixed_point", rec.cycle.is_fixed_point())
        .param("cycle", rec.cycle.to_string());
    let mut step = 0usize;
    for (phase, values) in [("tail", &rec.tail), ("cycle", &lap)] {
        for v in values.iter() {
            report.push(row! {
                "step" => step,
                "value" => int(v),
                "numeral" => numeral(v, b),
                "phase" => phase,
            });
            step += 1;
        }
    }
    report.push(row! {
        "step" => step,
        "value" => int(&rec.entry),
        "numeral" => numeral(&rec.entry, b),
        "phase" => "return",
    });
    Ok(report)
}

pub fn classify_cmd(b: u64, max_base: u64) -> CliResult<Report> {
    if b < 2 {
        return Err(usage(format!("--base must be at least 2, got {b}")));
    }
    if b > max_base {
        return Err(CliError::Refused(format!(
            "base {b} exceeds --max-base {max_base}; classification scans 2b² values"
        )));
    }
    let bb = BigInt::from(b);
    let mut structural: Vec<TwoDigit<BigInt>> = fixed_points_structural(&bb)?;
    structural.sort_by_key(TwoDigit::value);
    let brute = enumerate_fixed_points_bruteforce(&b)?;
    let cycles = enumerate_cycles(&b)?;
    let divisors = divisor_count(&(1 + b * b))?;

    let mut report = Report::new("classify")
        .param("base", b)
        .param("fixed_points", structural.len())
        .param("cycles", cycles.len())
        .param("d(1+b^2)", divisors);
    let fixed_values: Vec<BigInt> = structural.iter().map(TwoDigit::value).collect();
    report.push(row! {
        "kind" => "fixed",
        "length" => structural.len(),
        "elements" => ints(&fixed_values),
        "numerals" => structural.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    for c in &cycles {
        let values: Vec<BigInt> = c.elements().iter().map(|&v| BigInt::from(v)).collect();
        report.push(row! {
            "kind" => "cycle",
            "length" => c.len(),
            "elements" => ints(&values),
            "numerals" => values.iter().map(|v| numeral(v, &bb)).collect::<Vec<_>>(),
        });
    }
    let brute_big: Vec<BigInt> = brute.into_iter().map(BigInt::from).collect();
    if brute_big != fixed_values {
        report.fail(
            "fixed points",
            format!("structural {fixed_values:?} ≠ brute force {brute_big:?}"),
        );
    }
    if fixed_values.len() as u64 != divisors - 1 {
        report.fail(
            "fixed point count",
            format!("{} fixed points but d(1+b²) − 1 = {}", fixed_values.len(), divisors - 1),
        );
    }
    Ok(report)
}

pub fn tables_cmd(which: Option<TableId>) -> CliResult<Report> {
    let ids: Vec<TableId> = which.map_or_else(|| TableId::ALL.to_vec(), |t| vec![t]);
    let mut report = Report::new("tables").param(
        "which",
        which.map_or_else(|| "all".to_string(), |t| t.to_string()),
    );
    for id in ids {
        let cmp = compare_table(id)?;
        for (i, r) in cmp.rows.iter().enumerate() {
            report.push(row! { "table" => id.name(), "line" => i + 1, "row" => r.clone() });
        }
        for d in &cmp.diffs {
            let expected = d.expected.clone().unwrap_or_else(|| "(missing)".into());
            let actual = d.actual.clone().unwrap_or_else(|| "(missing)".into());
            report.push(row! {
                "table" => id.name(),
                "line" => d.line,
                "row" => format!("DIFF expected: {expected} | actual: {actual}"),
            });
            report.fail(
                format!("{id} line {}", d.line),
                format!("expected {expected:?}, regenerated {actual:?}"),
            );
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// n.n in base 2n−1
    Odd,
    /// nu.u with u = n+1+nk
    Nu,
    /// nu.mu for coprime n > m > 1
    Mn,
    /// (n+1)u.nu closed forms
    Consecutive,
    /// Fibonacci arithmetic family
    Fib,
    /// triangular numbers in base n²+n+1
    Triangular,
}

pub fn companion_cmd(family: Family, n: i64, m: Option<i64>, k: i64) -> CliResult<Report> {
    let mut report = Report::new("companion")
        .param("family", family.to_possible_value().expect("listed").get_name())
        .param("n", n);
    if let Some(m) = m {
        report = report.param("m", m);
    }
    report = report.param("k", k);
    let mut note = None;
    let pair = match family {
        Family::Odd => companion_odd_base(n)?,
        Family::Nu => companion_nu(n, k)?,
        Family::Mn => {
            let m = m.ok_or_else(|| usage("--family mn needs --m"))?;
            companion_mn(m, n, k)?
        }
        Family::Consecutive => companion_consecutive(n, k)?,
        Family::Fib => {
            report = report.param("oeis", OEIS_FIBONACCI);
            let n = usize::try_from(n).map_err(|_| usage("--n must be nonnegative"))?;
            companion_fib(n, k)?
        }
        Family::Triangular => {
            let t = companion_triangular(n)?;
            note = Some(if t.stated_order_holds {
                "T_n.T_(n+1) is fixed in n²+n+1"
            } else {
                "T_(n+1).T_n is the fixed order in n²+n+1; T_n.T_(n+1) is not fixed"
            });
            t.pair
        }
    };
    report = report.param("value", int(&pair.value()));
    for (label, p) in [("b", &pair.point_in_b), ("b'", &pair.point_in_b_prime)] {
        report.push(row! {
            "side" => label,
            "base" => int(p.base()),
            "numeral" => p.to_string(),
            "value" => int(&p.value()),
            "image" => int(&p.image()),
            "fixed" => p.is_fixed(),
        });
    }
    if let Some(note) = note {
        report = report.param("order", note);
    }
    if let Err(err) = pair.verify() {
        report.fail("companion", err.to_string());
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

pub fn psi_cmd(sign: SignArg, total: usize, k: Option<u64>) -> CliResult<Report> {
    let sign = Sign::from(sign);
    let d = decompose(total, sign)?;
    let mut report = Report::new("psi")
        .param("sign", sign.to_string())
        .param("N", total)
        .param("pairs", d.pair_count())
        .param("cycles", d.cycles.len())
        .param("fixed_points", d.fixed_points.len());
    for o in &d.orbits {
        let cells: Vec<String> = o.iter().map(|p| format!("{}.{}", p.r, p.s)).collect();
        report.push(row! {
            "orbit" => if o.len() == 1 { "fixed" } else { "cycle" },
            "length" => o.len(),
            "pairs" => cells,
            "arithmetic" => o.iter().map(|p| p.arith_form(sign)).collect::<Vec<_>>(),
        });
    }
    if let Some(k) = k {
        let rep = verify_conjugacy(total, sign, k)?;
        report = report
            .param("k", k)
            .param("base", int(&rep.base))
            .param("oeis", OEIS_FIBONACCI)
            .param("conjugate_pairs", rep.checked);
        if !rep.formal_only.is_empty() {
            let formal: Vec<String> = rep.formal_only.iter().map(ToString::to_string).collect();
            report = report.param("formal_only", formal.join(" "));
        }
        for f in &rep.failures {
            report.fail("conjugacy", f.clone());
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    #[value(name = "type1")]
    TypeI,
    #[value(name = "type2")]
    TypeII,
}

impl From<KindArg> for CycleKind {
    fn from(k: KindArg) -> CycleKind {
        match k {
            KindArg::TypeI => CycleKind::TypeI,
            KindArg::TypeII => CycleKind::TypeII,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    A,
    B,
    C,
}

impl From<VariantArg> for PellFixedVariant {
    fn from(v: VariantArg) -> PellFixedVariant {
        match v {
            VariantArg::A => PellFixedVariant::A,
            VariantArg::B => PellFixedVariant::B,
            VariantArg::C => PellFixedVariant::C,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IdentityArg {
    Cassini,
    Catalan,
    Vajda,
    Lucas,
    Docagne,
}

fn pell_report(name: &str) -> Report {
    Report::new(format!("pell {name}")).param("oeis", OEIS_PELL)
}

pub fn pell_poly_cmd(n: usize, x: Option<&BigInt>) -> CliResult<Report> {
    if n > 500 {
        return Err(CliError::Refused(format!("--n {n} exceeds 500")));
    }
    let mut report = pell_report("poly").param("n", n);
    if let Some(x) = x {
        report = report.param("x", int(x));
    }
    for i in 0..=n {
        let p = pell(i);
        let mut r = row! { "n" => i, "p_n" => p.to_string() };
        if let Some(x) = x {
            r.insert("value".into(), int(&p.eval(x)));
        }
        report.push(r);
    }
    Ok(report)
}

pub fn pell_cycle_cmd(kind: KindArg, n: usize, k: &BigInt, x: Option<&BigInt>) -> CliResult<Report> {
    if n > 60 {
        return Err(CliError::Refused(format!("--n {n} exceeds 60")));
    }
    let kind = CycleKind::from(kind);
    let c = pell_arith_cycle(kind, n, k)?;
    let mut report = pell_report("cycle")
        .param("kind", kind.to_string())
        .param("n", n)
        .param("k", int(k))
        .param("base", c.base.to_string());
    for (i, ((p, e), res)) in c.pairs.iter().zip(&c.elements).zip(&c.step_residuals).enumerate() {
        report.push(row! {
            "step" => i,
            "pair" => format!("{}.{}", p.r, p.s),
            "hi" => e.hi.to_string(),
            "lo" => e.lo.to_string(),
            "step_residual" => res.to_string(),
        });
    }
    if !c.steps_hold() {
        report.fail("pell cycle", "nonzero step residual");
    }
    if !c.terminal_holds() {
        report.fail(
            "pell cycle terminal",
            format!("last pair {:?}, expected {}", c.pairs.last(), kind.terminal_pair(n)),
        );
    }
    if let Some(x) = x {
        if !k.is_zero() {
            return Err(usage("--x evaluates the plain Pell cycle; drop --k"));
        }
        let ev = pell_evaluate_cycle(kind, n, x)?;
        report = report.param("x", int(x)).param("evaluated", format!("{ev} in base {}", ev.base()));
    }
    Ok(report)
}

pub fn pell_fixed_cmd(variant: VariantArg, n: usize, x: Option<&BigInt>) -> CliResult<Report> {
    if n > 200 {
        return Err(CliError::Refused(format!("--n {n} exceeds 200")));
    }
    let p = pell_fixed_point(n, variant.into())?;
    let mut report = pell_report("fixed")
        .param("variant", p.variant.to_string())
        .param("n", n);
    let mut r = row! {
        "hi" => p.point.hi.to_string(),
        "lo" => p.point.lo.to_string(),
        "base" => p.point.base.to_string(),
        "residual" => p.residual.to_string(),
    };
    if let Some(x) = x {
        let d = p.point.evaluate(x)?;
        r.insert("x".into(), int(x));
        r.insert("numeral".into(), d.to_string().into());
        r.insert("value".into(), int(&d.value()));
        if !d.is_fixed() {
            report.fail("evaluation", format!("{d} is not fixed"));
        }
    }
    report.push(r);
    if !p.holds() {
        report.fail("pell fixed point", format!("residual {}", p.residual));
    }
    Ok(report)
}

pub fn pell_identity_cmd(name: IdentityArg, n: usize, r: usize, s: usize) -> CliResult<Report> {
    if n + r + s > 2000 {
        return Err(CliError::Refused("indices above 2000".into()));
    }
    let id = match name {
        IdentityArg::Cassini => PellIdentity::Cassini { n },
        IdentityArg::Catalan => PellIdentity::Catalan { n, r },
        IdentityArg::Vajda => PellIdentity::Vajda { n, r, s },
        IdentityArg::Lucas => PellIdentity::Lucas { n },
        IdentityArg::Docagne => PellIdentity::DOcagne { n },
    };
    let residual = check_pell_identity(id)?;
    let mut report = pell_report("identity").param("identity", id.to_string());
    report.push(row! { "identity" => id.to_string(), "residual" => residual.to_string() });
    if !residual.is_zero() {
        report.fail(id.to_string(), format!("residual {residual}"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerals() {
        let b = BigInt::from(144);
        assert_eq!(numeral(&BigInt::from(7921), &b), "55.1|_144");
        assert_eq!(numeral(&BigInt::from(130), &BigInt::from(10)), "1.3.0|_10");
    }

    #[test]
    fn classify_cap() {
        assert!(matches!(classify_cmd(13, 12), Err(CliError::Refused(_))));
        assert!(matches!(classify_cmd(1, 12), Err(CliError::Usage(_))));
        assert!(classify_cmd(12, 12).unwrap().verified);
    }

    #[test]
    fn orbit_beyond_max_base_is_budgeted() {
        let b = BigInt::from(10_007);
        assert!(matches!(orbit_cmd(&BigInt::from(5), &b, 3), Err(CliError::Refused(_))));
        assert!(orbit_cmd(&BigInt::from(1), &b, 3).unwrap().verified);
    }
}
