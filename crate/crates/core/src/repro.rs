//! The reproduction suite: every acceptance criterion as a list of checks,
//! each with an expected value, the computed value and an outcome.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::bundles::{omega_p4, parse_on, sigma, BundleClass, Object, Space};
use crate::cohomology::{bbw_cohomology, restrict_lgr, total_space_cohomology, Dim};
use crate::error::Result;
use crate::homalg::{
    check_spherical_zero_section, check_tilting, euler_pairing, ext_table, ext_zero_section, full_collection,
    kclass_equal, ExtContext, ExtTable, OracleMode, Verdict,
};
use crate::mutation::{
    cyclic_composite, cyclic_tilt, derive_resolution, mutate_left, mutate_right, named_chain, verify_iw_chain,
    Collection, LinePower, StepStatus,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Outcome {
    Pass,
    Inconclusive,
    Fail,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Outcome::Pass => "Pass",
            Outcome::Inconclusive => "Inconclusive",
            Outcome::Fail => "Fail",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub number: u32,
    pub title: String,
    pub checks: Vec<Check>,
}

impl CriterionResult {
    /// Fail if any check fails, else Inconclusive if any is, else Pass.
    pub fn outcome(&self) -> Outcome {
        self.checks.iter().map(|c| c.outcome).max().unwrap_or(Outcome::Pass)
    }

    pub fn failing(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.outcome != Outcome::Pass).collect()
    }
}

/// Collects checks; an error inside a check becomes a failing check.
struct Sheet {
    checks: Vec<Check>,
}

impl Sheet {
    fn new() -> Self {
        Sheet { checks: Vec::new() }
    }

    fn push(&mut self, name: impl Into<String>, expected: impl Into<String>, computed: String, outcome: Outcome) {
        self.checks.push(Check { name: name.into(), expected: expected.into(), computed, outcome });
    }

    /// Passes when the computed text equals the expected text.
    fn equal(&mut self, name: impl Into<String>, expected: impl Into<String>, computed: Result<String>) {
        let expected = expected.into();
        match computed {
            Ok(c) => {
                let outcome = if c == expected { Outcome::Pass } else { Outcome::Fail };
                self.push(name, expected, c, outcome);
            }
            Err(e) => self.push(name, expected, format!("error: {e}"), Outcome::Fail),
        }
    }

    fn judged(&mut self, name: impl Into<String>, expected: impl Into<String>, computed: Result<(String, Outcome)>) {
        match computed {
            Ok((c, o)) => self.push(name, expected, c, o),
            Err(e) => self.push(name, expected, format!("error: {e}"), Outcome::Fail),
        }
    }

    fn finish(self, number: u32, title: &str) -> CriterionResult {
        CriterionResult { number, title: title.to_string(), checks: self.checks }
    }
}

/// `C^d[-i]` notation for graded dimensions; `0` when empty.
pub fn graded<D: fmt::Display + PartialEq>(dims: &BTreeMap<usize, D>, zero: &D) -> String {
    let parts: Vec<String> = dims
        .iter()
        .filter(|(_, d)| *d != zero)
        .map(|(i, d)| {
            let base = if d.to_string() == "1" { "C".to_string() } else { format!("C^{d}") };
            if *i == 0 {
                base
            } else {
                format!("{base}[-{i}]")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn bigint_graded(dims: &BTreeMap<usize, BigInt>) -> String {
    graded(dims, &BigInt::zero())
}

fn dim_graded(dims: &BTreeMap<usize, Dim>) -> String {
    graded(dims, &Dim::zero())
}

/// The exact table in `C^d[-i]` notation, or its bounds.
fn table_text(t: &ExtTable) -> String {
    match t.exact_dims() {
        Some(d) => dim_graded(&d),
        None => format!("bounds {t}"),
    }
}

fn bundle(text: &str, sp: Space) -> Result<BundleClass> {
    let e = parse_on(text, sp)?;
    e.bundle().cloned().ok_or_else(|| crate::Error::Unsupported(format!("{text} is not a bundle")))
}

fn object(text: &str, sp: Space) -> Result<Object> {
    parse_on(text, sp)?.into_object()
}

fn objects(list: &[&str], sp: Space) -> Result<Vec<Object>> {
    list.iter().map(|t| object(t, sp)).collect()
}

fn verdict_outcome(v: &Verdict) -> Outcome {
    match v {
        Verdict::Pass => Outcome::Pass,
        Verdict::Fail { .. } => Outcome::Fail,
        Verdict::Inconclusive { .. } => Outcome::Inconclusive,
    }
}

fn ints(v: &[BigInt]) -> String {
    let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", s.join(", "))
}

fn bbw_text(text: &str, sp: Space) -> Result<String> {
    Ok(bigint_graded(&bbw_cohomology(&bundle(text, sp)?)?.dims))
}

pub fn criterion_1() -> CriterionResult {
    let mut s = Sheet::new();
    s.equal("RGamma(Gr24, O(-3))", "0", bbw_text("O(-3)", Space::Gr24));
    s.equal("RGamma(Gr24, O(-4))", "C[-4]", bbw_text("O(-4)", Space::Gr24));
    s.finish(1, "BBW calibration on Gr(2,4)")
}

pub fn criterion_2() -> CriterionResult {
    let mut s = Sheet::new();
    s.equal(
        "RGamma(LGr, O(-3)) by restriction from Gr24",
        "C[-3] (determined)",
        bundle("O(-3)", Space::Gr24).and_then(|e| restrict_lgr(&e)).map(|v| {
            let status = if v.is_determined() { "determined" } else { "not determined" };
            format!("{} ({status})", bigint_graded(&v.dims))
        }),
    );
    s.equal("RGamma(LGr, O(-3)) by Sp4 BBW", "C[-3]", bbw_text("O(-3)", Space::LGr));
    let sweep = || -> Result<(String, Outcome)> {
        let (mut compared, mut skipped, mut mismatches) = (0, 0, Vec::new());
        for k in 0..=4i64 {
            for l in -6..=6i64 {
                let gr = BundleClass::irreducible(Space::Gr24, vec![l, l - k, 0, 0]);
                let lgr = BundleClass::irreducible(Space::LGr, vec![l, l - k]);
                let r = restrict_lgr(&gr)?;
                if !r.is_determined() {
                    skipped += 1;
                    continue;
                }
                compared += 1;
                let direct = bbw_cohomology(&lgr)?.dims;
                if r.dims != direct {
                    mismatches.push(format!("Sym^{k} S({l})"));
                }
            }
        }
        let outcome = if mismatches.is_empty() { Outcome::Pass } else { Outcome::Fail };
        let mut text = format!("{compared} agree, {skipped} not determined by restriction");
        if !mismatches.is_empty() {
            text = format!("{text}; disagree: {}", mismatches.join(", "));
        }
        Ok((text, outcome))
    };
    s.judged("Sym^k S(l), 0 <= k <= 4, -6 <= l <= 6", "both routes agree when determined", sweep());
    s.finish(2, "restriction and Sp4 routes on LGr")
}

fn total_dims(sp: Space, j: i64) -> Result<BTreeMap<usize, Dim>> {
    Ok(total_space_cohomology(sp, &BundleClass::line(sp, j))?.dims())
}

fn higher_text(d: &BTreeMap<usize, Dim>, from: usize) -> String {
    let higher: BTreeMap<usize, Dim> = d.iter().filter(|(i, _)| **i >= from).map(|(i, x)| (*i, x.clone())).collect();
    dim_graded(&higher)
}

pub fn criterion_3() -> CriterionResult {
    let mut s = Sheet::new();
    for j in -2..=8 {
        s.equal(format!("H^>=1(Y, O({j}))"), "0", total_dims(Space::Y, j).map(|d| higher_text(&d, 1)));
    }
    for j in -3..=8 {
        s.equal(format!("H^>1(Y', O({j}))"), "0", total_dims(Space::YPrime, j).map(|d| higher_text(&d, 2)));
    }
    for j in -2..=8 {
        s.equal(
            format!("H^1(Y', O({j}))"),
            "0",
            total_dims(Space::YPrime, j).map(|d| d.get(&1).cloned().unwrap_or_else(Dim::zero).to_string()),
        );
    }
    s.equal("H^>=1(Y', O(-3))", "C[-1]", total_dims(Space::YPrime, -3).map(|d| higher_text(&d, 1)));
    // the statement read with O(-j) for every j >= -2 (resp. j >= 3, j >= 2 on Y')
    let literal = || -> Result<(String, Outcome)> {
        let mut truth = Vec::new();
        let (mut y_bad, mut yp_high_bad, mut yp_one_bad) = (Vec::new(), Vec::new(), Vec::new());
        for j in 0..=4i64 {
            let y = total_dims(Space::Y, -j)?;
            let yp = total_dims(Space::YPrime, -j)?;
            truth.push(format!("Y O({}): {}; Y' O({}): {}", -j, higher_text(&y, 1), -j, higher_text(&yp, 1)));
            if higher_text(&y, 1) != "0" {
                y_bad.push(j);
            }
            if j >= 3 && higher_text(&yp, 2) != "0" {
                yp_high_bad.push(j);
            }
            if j >= 2 && !y_or_zero(&yp, 1) {
                yp_one_bad.push(j);
            }
        }
        let found = format!(
            "violated on Y at j = {:?}, on Y' (degree > 1) at j = {:?}, on Y' (degree 1) at j = {:?}; ground truth H^>=1: {}",
            y_bad,
            yp_high_bad,
            yp_one_bad,
            truth.join("; ")
        );
        let flagged = y_bad == [3, 4] && yp_high_bad == [4] && yp_one_bad == [3, 4];
        Ok((found, if flagged { Outcome::Pass } else { Outcome::Fail }))
    };
    s.judged(
        "literal j-range for O(-j), j in 0..=4 (inconsistency flag)",
        "violated on Y at j = [3, 4], on Y' (degree > 1) at j = [4], on Y' (degree 1) at j = [3, 4]",
        literal(),
    );
    s.finish(3, "higher cohomology of line bundles on Y and Y'")
}

fn y_or_zero(d: &BTreeMap<usize, Dim>, i: usize) -> bool {
    d.get(&i).is_none_or(Dim::is_zero)
}

/// Named tilting candidates on the two total spaces.
pub fn tilting_candidates() -> Vec<(String, Space, Vec<String>)> {
    let y = |extra: &str, lines: [i64; 3]| -> Vec<String> {
        let mut v: Vec<String> = lines.iter().map(|k| format!("O({k})")).collect();
        v.push(extra.to_string());
        v
    };
    let mut out = Vec::new();
    for k in -2..=1 {
        out.push((format!("Tilt_{k}"), Space::Y, y(&format!("S({k})"), [0, -1, -2])));
    }
    out.push(("Tilt_T".into(), Space::Y, y("S(-2)", [0, -1, -2])));
    out.push(("Tilt_S".into(), Space::Y, y("S(1)", [0, 1, 2])));
    out.push(("Tilt_U".into(), Space::Y, y("S(2)", [0, 1, 2])));
    out.push(("Tilt_U,1".into(), Space::Y, y("S(1)", [-1, 0, 1])));
    out.push(("Tilt'_T".into(), Space::YPrime, y("Sigma(-2)", [0, -1, -2])));
    out.push(("Tilt'_S".into(), Space::YPrime, y("Sigma(-1)", [0, -1, -2])));
    out
}

pub fn criterion_4(ctx: &ExtContext) -> CriterionResult {
    let mut s = Sheet::new();
    for (name, sp, summands) in tilting_candidates() {
        let list: Vec<&str> = summands.iter().map(String::as_str).collect();
        let run = || -> Result<(String, Outcome)> {
            let c = check_tilting(&objects(&list, sp)?, ctx)?;
            Ok((c.verdict.to_string(), verdict_outcome(&c.verdict)))
        };
        s.judged(format!("{name} = {} on {sp}", summands.join(" + ")), "Pass", run());
    }
    s.finish(4, "tilting bundles on Y and Y'")
}

/// The four resolutions on LGr: target, the collection, expected
/// multiplicities.
pub fn resolution_cases() -> Vec<(&'static str, Vec<&'static str>, Vec<i64>)> {
    vec![
        ("O(-3)", vec!["S(-2)", "O(-2)", "O(-1)", "O"], vec![1, 4, 11, 5, 1]),
        ("S(-2)", vec!["O(-2)", "O(-1)", "O", "S(1)"], vec![1, 4, 4, 4, 1]),
        ("O(-2)", vec!["O(-1)", "O", "S(1)", "O(1)"], vec![1, 5, 11, 4, 1]),
        ("O(-1)", vec!["O", "S(1)", "O(1)", "O(2)"], vec![1, 5, 4, 5, 1]),
    ]
}

pub fn criterion_5(ctx: &ExtContext) -> CriterionResult {
    let mut s = Sheet::new();
    for (target, against, mults) in resolution_cases() {
        let expected: Vec<BigInt> = mults.iter().map(|m| BigInt::from(*m)).collect();
        let run = || -> Result<String> {
            let t = object(target, Space::LGr)?;
            let a: Result<Vec<BundleClass>> = against.iter().map(|x| bundle(x, Space::LGr)).collect();
            let r = derive_resolution(&t, &a?, ctx)?;
            let complete = if r.complete && r.alternating_sum_zero { "" } else { " (incomplete)" };
            Ok(format!("{}{complete}", ints(&r.multiplicities())))
        };
        s.equal(format!("{target} against ({})", against.join(", ")), ints(&expected), run());
    }
    let images = || -> Result<String> {
        let t = object("O(-1)", Space::LGr)?;
        let a: Result<Vec<BundleClass>> = ["O", "S(1)", "O(1)", "O(2)"].iter().map(|x| bundle(x, Space::LGr)).collect();
        let r = derive_resolution(&t, &a?, ctx)?;
        let tangent = omega_p4(Space::LGr, 1)?.dual();
        let cotangent = omega_p4(Space::LGr, 2)?;
        let first = r.image(1).is_some_and(|o| kclass_equal(&o.kclass(), &tangent.kclass()).unwrap_or(false));
        let second = r.image(2).is_some_and(|o| kclass_equal(&o.kclass(), &cotangent.kclass()).unwrap_or(false));
        Ok(format!(
            "first image {}, second image {}",
            if first { "= T_P4(-1)|LGr" } else { "differs" },
            if second { "= Omega_P4(2)|LGr" } else { "differs" }
        ))
    };
    s.equal("images of the last resolution", "first image = T_P4(-1)|LGr, second image = Omega_P4(2)|LGr", images());
    s.finish(5, "resolution multiplicities on LGr")
}

pub fn criterion_6(ctx: &ExtContext) -> CriterionResult {
    let mut s = Sheet::new();
    let ext =
        |a: &str, b: Result<Object>, c: &ExtContext| -> Result<ExtTable> { ext_table(&object(a, Space::LGr)?, &b?, c) };
    s.equal("Ext(O(-3), S(-2)) on LGr", "C^4", ext("O(-3)", object("S(-2)", Space::LGr), ctx).map(|t| table_text(&t)));
    s.equal("Ext(O(-1), O) on LGr", "C^5", ext("O(-1)", object("O", Space::LGr), ctx).map(|t| table_text(&t)));
    let omega = || omega_p4(Space::LGr, 0);
    s.judged(
        "Ext(O(-2), Omega_P4|LGr)",
        "C^11",
        ext("O(-2)", omega(), ctx).map(|t| match t.exact_dims() {
            Some(d) => {
                let text = dim_graded(&d);
                let o = if text == "C^11" { Outcome::Pass } else { Outcome::Fail };
                (text, o)
            }
            None if t.euler == Some(BigInt::from(11)) => (format!("EulerOnly(11), bounds {t}"), Outcome::Inconclusive),
            None => (format!("bounds {t}"), Outcome::Fail),
        }),
    );
    let bare = ExtContext { oracle: OracleMode::None };
    s.equal(
        "Ext(O(-2), Omega_P4|LGr) without the map-rank oracle",
        "EulerOnly(11)",
        ext("O(-2)", omega(), &bare).map(|t| match (t.is_certified(), &t.euler) {
            (false, Some(e)) => format!("EulerOnly({e})"),
            _ => format!("certified {}", table_text(&t)),
        }),
    );
    s.finish(6, "Hom dimensions on LGr")
}

pub fn criterion_7() -> CriterionResult {
    let mut s = Sheet::new();
    let cases = [("O", Space::LGr, Space::Y), ("S", Space::LGr, Space::Y), ("O", Space::PSp, Space::YPrime)];
    for (f, base, total) in cases {
        let run = || -> Result<(String, Outcome)> {
            let (table, cert) = check_spherical_zero_section(&bundle(f, base)?, total)?;
            let totals = table.totals.as_ref().map(bigint_graded).unwrap_or_else(|| "not degenerate".into());
            let o = verdict_outcome(&cert.verdict);
            let o = if o == Outcome::Pass && totals != "C + C[-5]" { Outcome::Fail } else { o };
            Ok((format!("{}; totals {totals}", cert.verdict), o))
        };
        s.judged(format!("iota_*({f}) on {total}"), "Pass; totals C + C[-5]", run());
    }
    let column = || -> Result<String> {
        let (table, _) = check_spherical_zero_section(&bundle("S", Space::LGr)?, Space::Y)?;
        let expected = ["Sym^2 S(1) + O", "Sym^3 S + S(-1)*2", "Sym^2 S(-2) + O(-3)"];
        let mut out = Vec::new();
        for q in 0..=3usize {
            let got = table.sheaf_ext.get(&q).cloned().unwrap_or_else(|| BundleClass::zero(Space::LGr));
            let want = match expected.get(q) {
                Some(t) => bundle(t, Space::LGr)?,
                None => BundleClass::zero(Space::LGr),
            };
            out.push(format!("q={q} {}", if got == want { "matches" } else { "differs" }));
        }
        Ok(out.join(", "))
    };
    s.equal("sheaf Ext column of iota_* S", "q=0 matches, q=1 matches, q=2 matches, q=3 matches", column());
    s.finish(7, "spherical zero-section objects")
}

pub fn criterion_8(ctx: &ExtContext) -> CriterionResult {
    let mut s = Sheet::new();
    s.equal(
        "Ext(iota'_* O_P(-3), Sigma(-1)) on Y'",
        "C[-2]",
        bundle("O(-3)", Space::PSp).and_then(|f| ext_zero_section(&f, &sigma(-1), ctx)).map(|t| table_text(&t)),
    );
    s.equal(
        "Ext(iota_* O_LGr(-1), O_Y(-1)) on Y",
        "C[-5]",
        bundle("O(-1)", Space::LGr)
            .and_then(|f| ext_zero_section(&f, &object("O(-1)", Space::Y)?, ctx))
            .map(|t| table_text(&t)),
    );
    s.finish(8, "Exts between zero-section objects and bundles")
}

fn step_outcome(s: StepStatus) -> Outcome {
    match s {
        StepStatus::Certified | StepStatus::Propagated => Outcome::Pass,
        StepStatus::Inconclusive => Outcome::Inconclusive,
        StepStatus::Failed => Outcome::Fail,
    }
}

pub fn criterion_9(ctx: &ExtContext) -> CriterionResult {
    let mut s = Sheet::new();
    for name in ["t-to-s", "t-to-u", "wprime-cycle"] {
        let spec = named_chain(name).expect("library chain");
        match verify_iw_chain(&spec, ctx) {
            Ok(report) => {
                for step in &report.steps {
                    let failing: Vec<String> = step
                        .certificate
                        .clauses
                        .iter()
                        .filter(|c| !c.status.is_holding())
                        .map(|c| format!("{}: {}", c.name, c.status))
                        .collect();
                    let detail = if failing.is_empty() { String::new() } else { format!(" ({})", failing.join("; ")) };
                    s.push(
                        format!("{name} step {} at {}: {}", step.index, step.frozen.name, step.sequence),
                        "Certified or Propagated",
                        format!("{:?}{detail}", step.certificate.status),
                        step_outcome(step.certificate.status),
                    );
                }
                let end: Vec<String> = report.end.iter().map(|l| l.to_string()).collect();
                let expected: Vec<String> =
                    spec.expect.clone().unwrap_or_default().iter().map(|l| l.to_string()).collect();
                let o = if report.end_matches == Some(true) { Outcome::Pass } else { Outcome::Fail };
                s.push(
                    format!("{name} end set"),
                    format!("{{{}}}", expected.join(", ")),
                    format!("{{{}}}", end.join(", ")),
                    o,
                );
            }
            Err(e) => s.push(name.to_string(), "a full report", format!("error: {e}"), Outcome::Fail),
        }
    }
    s.finish(9, "Iyama-Wemyss mutation chains")
}

pub fn criterion_10(ctx: &ExtContext) -> CriterionResult {
    let mut s = Sheet::new();
    for n in 2..=6u32 {
        let nn = n as i64;
        let tilting = || -> Result<(String, Outcome)> {
            let mut bad = Vec::new();
            for k in 0..=nn {
                let objs: Vec<Object> = cyclic_tilt(n, k).iter().map(|l| l.object(n)).collect();
                let c = check_tilting(&objs, ctx)?;
                if !c.is_pass() {
                    bad.push(format!("k={k}: {}", c.verdict));
                }
            }
            Ok(if bad.is_empty() { ("Pass".into(), Outcome::Pass) } else { (bad.join("; "), Outcome::Fail) })
        };
        s.judged(format!("n={n}: Tilt_k tilting for k = 0..={n}"), "Pass", tilting());
        let exts = || -> Result<String> {
            let mut texts = Vec::new();
            for k in 1..nn {
                let f = BundleClass::line(Space::Proj(n - 1), -k);
                let t = ext_zero_section(&f, &LinePower(k - nn).object(n), ctx)?;
                texts.push(table_text(&t));
            }
            Ok(texts.join(", "))
        };
        s.equal(
            format!("n={n}: Ext(iota_* O_Z(-k), L^(k-n)) for k = 1..{}", n - 1),
            vec!["C[-1]"; n as usize - 1].join(", "),
            exts(),
        );
        for k in 1..nn {
            let spec = named_chain(&format!("cyclic-{n},{k}")).expect("library chain");
            let run = || -> Result<(String, Outcome)> {
                let r = verify_iw_chain(&spec, ctx)?;
                let statuses: Vec<String> = r.steps.iter().map(|x| format!("{:?}", x.certificate.status)).collect();
                let o = if r.passed() && r.end_matches == Some(true) { Outcome::Pass } else { Outcome::Fail };
                Ok((format!("end matches {:?}; steps {}", r.end_matches, statuses.join(", ")), o))
            };
            s.judged(format!("n={n}: mu_W{k}^{} returns M", n - 1), "end matches", run());
        }
        let composite = || -> Result<String> {
            let start = cyclic_tilt(n, 0);
            let (end, _) = cyclic_composite(n, 1, &start, ctx)?;
            let shown: Vec<String> = end.iter().map(|l| l.to_string()).collect();
            Ok(shown.join(" + "))
        };
        let shifted: Vec<String> = cyclic_tilt(n, 0).iter().map(|l| LinePower(l.0 + nn).to_string()).collect();
        s.equal(format!("n={n}: composite of the twists on Tilt_0"), shifted.join(" + "), composite());
    }
    s.finish(10, "the cyclic family Tot(O(-n)) over P^(n-1)")
}

/// Weight boxes of at least 500 irreducibles on each compact space.
pub fn weight_box(sp: Space) -> Vec<BundleClass> {
    let mut out = Vec::new();
    match sp {
        Space::Gr24 => {
            for a in -4..=4 {
                for b in -4..=a {
                    for c in -2..=2 {
                        for d in -2..=c {
                            out.push(BundleClass::irreducible(sp, vec![a, b, c, d]));
                        }
                    }
                }
            }
        }
        Space::Proj(3) => {
            for a in -6..=6 {
                for b in -3..=2 {
                    for c in -3..=b {
                        for d in -3..=c {
                            out.push(BundleClass::irreducible(sp, vec![a, b, c, d]));
                        }
                    }
                }
            }
        }
        Space::LGr => {
            for a in -20..=20 {
                for b in -20..=a {
                    out.push(BundleClass::irreducible(sp, vec![a, b]));
                }
            }
        }
        Space::PSp => {
            for a in -20..=20 {
                for b in 0..=14 {
                    out.push(BundleClass::irreducible(sp, vec![a, b]));
                }
            }
        }
        _ => {}
    }
    out
}

/// Graded pieces of the trivial bundle `V (x) O` along the tautological flag.
pub fn tautological_pieces(sp: Space) -> Result<Vec<BundleClass>> {
    Ok(match sp {
        Space::Gr24 => vec![bundle("S", sp)?, bundle("Q", sp)?],
        Space::Proj(m) => {
            let mut q = vec![0; m as usize + 1];
            q[m as usize] = -1;
            vec![BundleClass::line(sp, -1), BundleClass::irreducible(sp, q)]
        }
        Space::LGr => vec![bundle("S", sp)?, bundle("S(1)", sp)?],
        Space::PSp => vec![BundleClass::line(sp, -1), bundle("E", sp)?, BundleClass::line(sp, 1)],
        _ => Vec::new(),
    })
}

fn serre_and_euler() -> Result<(String, Outcome)> {
    let mut texts = Vec::new();
    let mut ok = true;
    for sp in Space::all_compact() {
        let dim = sp.dimension();
        let omega = sp.canonical_class();
        let pieces = tautological_pieces(sp)?;
        let ambient: BigInt = pieces.iter().map(|p| BigInt::from(p.rank())).sum();
        let weights = weight_box(sp);
        let (mut serre_bad, mut euler_bad) = (0, 0);
        for e in &weights {
            let h = bbw_cohomology(e)?;
            let dual = bbw_cohomology(&e.dual().tensor(&omega)?)?;
            if (0..=dim).any(|i| h.dim(i) != dual.dim(dim - i)) {
                serre_bad += 1;
            }
            let mut sum = BigInt::zero();
            for p in &pieces {
                sum += bbw_cohomology(&e.tensor(p)?)?.euler();
            }
            if sum != &ambient * h.euler() {
                euler_bad += 1;
            }
        }
        ok &= serre_bad == 0 && euler_bad == 0 && weights.len() >= 500;
        texts.push(format!(
            "{sp}: {} weights, {serre_bad} Serre failures, {euler_bad} additivity failures",
            weights.len()
        ));
    }
    Ok((texts.join("; "), if ok { Outcome::Pass } else { Outcome::Fail }))
}

fn mutation_conservation(ctx: &ExtContext) -> Result<(String, Outcome)> {
    let (mut pairs, mut undecided, mut bad) = (0usize, 0usize, Vec::new());
    for sp in Space::all_compact() {
        for t in -3..=3 {
            let objs: Vec<Object> = full_collection(sp).iter().map(|b| Object::Bundle(b.twist(t))).collect();
            let c = Collection::new(objs, ctx)?;
            for i in 0..c.objects.len() - 1 {
                for dir in ["L", "R"] {
                    let step = if dir == "L" { mutate_left(&c, i, ctx) } else { mutate_right(&c, i, ctx) };
                    pairs += 1;
                    match step {
                        Ok(m) if !m.identity.holds => bad.push(format!("{sp} twist {t} {dir}{i}: {:?}", m.identity)),
                        Ok(m) => match m.result.certificate.verdict {
                            Verdict::Pass => {}
                            Verdict::Inconclusive { .. } => undecided += 1,
                            Verdict::Fail { .. } => {
                                bad.push(format!("{sp} twist {t} {dir}{i}: {}", m.result.certificate.verdict))
                            }
                        },
                        Err(e) => bad.push(format!("{sp} twist {t} {dir}{i}: {e}")),
                    }
                }
            }
        }
    }
    let o = if bad.is_empty() && pairs >= 100 { Outcome::Pass } else { Outcome::Fail };
    Ok((
        format!(
            "{pairs} mutations, {} failures, {undecided} re-certifications inconclusive{}",
            bad.len(),
            bad.first().map(|b| format!(" ({b})")).unwrap_or_default()
        ),
        o,
    ))
}

/// Bundles on the total spaces whose families are spot-checked.
pub fn stable_samples() -> Vec<(Space, BundleClass)> {
    let mut out = Vec::new();
    for j in -4..=4 {
        out.push((Space::Y, BundleClass::line(Space::Y, j)));
        out.push((Space::Y, BundleClass::irreducible(Space::Y, vec![j + 1, j])));
        out.push((Space::YPrime, BundleClass::line(Space::YPrime, j)));
        out.push((Space::YPrime, BundleClass::irreducible(Space::YPrime, vec![j, 1])));
        for n in 2..=4 {
            out.push((Space::Cyclic(n), BundleClass::line(Space::Cyclic(n), j)));
        }
    }
    out
}

fn stable_spot_checks() -> Result<(String, Outcome)> {
    let samples = stable_samples();
    let mut bad = Vec::new();
    for (sp, e) in &samples {
        if !total_space_cohomology(*sp, e)?.verify_stable(20) {
            bad.push(format!("{e} on {sp}"));
        }
    }
    let o = if bad.is_empty() { Outcome::Pass } else { Outcome::Fail };
    Ok((format!("{} bundles, 20 values each, {} failures", samples.len(), bad.len()), o))
}

fn euler_matches_pairing() -> Result<(String, Outcome)> {
    // the Euler pairing of two K-classes against the alternating sum of Exts
    let mut bad = 0;
    let mut count = 0;
    for sp in Space::all_compact() {
        let coll = full_collection(sp);
        for a in &coll {
            for b in &coll {
                for t in -2..=2 {
                    let b = b.twist(t);
                    let chi = euler_pairing(&a.kclass(), &b.kclass())?;
                    let direct = bbw_cohomology(&a.dual().tensor(&b)?)?.euler();
                    count += 1;
                    if chi != direct {
                        bad += 1;
                    }
                }
            }
        }
    }
    Ok((format!("{count} pairs, {bad} failures"), if bad == 0 { Outcome::Pass } else { Outcome::Fail }))
}

pub fn criterion_11(ctx: &ExtContext) -> CriterionResult {
    let mut s = Sheet::new();
    s.judged("Serre duality and additivity along the tautological sequences", "no failures", serre_and_euler());
    s.judged("Euler pairing against BBW", "no failures", euler_matches_pairing());
    s.judged(
        "K-class conservation of mutations in twisted full collections",
        "no failures",
        mutation_conservation(ctx),
    );
    s.judged("stable regime of pushforward families", "no failures", stable_spot_checks());
    s.finish(11, "exhaustive property sweeps")
}

/// Runs every criterion in order.
pub fn run_acceptance(ctx: &ExtContext) -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(ctx),
        criterion_5(ctx),
        criterion_6(ctx),
        criterion_7(),
        criterion_8(ctx),
        criterion_9(ctx),
        criterion_10(ctx),
        criterion_11(ctx),
    ]
}

fn cell(text: &str) -> String {
    text.replace('|', "\\|")
}

/// Markdown document of the results.
pub fn render_markdown(results: &[CriterionResult], ctx: &ExtContext) -> String {
    let mut out = String::new();
    out.push_str("# Reproduction report\n\n");
    out.push_str(&format!("map-rank oracle: {:?}\n\n", ctx.oracle));
    out.push_str("| # | criterion | outcome |\n|---|---|---|\n");
    for r in results {
        out.push_str(&format!("| {} | {} | {} |\n", r.number, cell(&r.title), r.outcome()));
    }
    for r in results {
        out.push_str(&format!("\n## {}. {} ({})\n\n", r.number, r.title, r.outcome()));
        out.push_str("| check | expected | computed | outcome |\n|---|---|---|---|\n");
        for c in &r.checks {
            out.push_str(&format!(
                "| {} | {} | {} | {} |\n",
                cell(&c.name),
                cell(&c.expected),
                cell(&c.computed),
                c.outcome
            ));
        }
    }
    out
}
