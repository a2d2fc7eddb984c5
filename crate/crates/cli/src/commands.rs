use std::collections::BTreeMap;
use std::fmt::{Display, Write};

use flopcalc_core::bundles::{parse_on, BundleClass, Expr, Object, Space};
use flopcalc_core::cohomology::{bbw_cohomology, total_space_cohomology, Dim};
use flopcalc_core::homalg::{
    check_collection, check_exceptional, check_spherical_zero_section, check_tilting, ext_table, ext_zero_section,
    Certificate, ExtContext, ExtTable, Verdict,
};
use flopcalc_core::mutation::{
    cyclic_composite, cyclic_tilt, cyclic_twist_orbit, derive_resolution, mutate_left, mutate_right, named_chain,
    verify_iw_chain, ChainSpec, Collection, LinePower, StepStatus,
};
use flopcalc_core::repro::{graded, render_markdown, run_acceptance};
use flopcalc_core::{Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::Outcome;
use crate::{Cli, Command};

/// A finished command before it is printed.
pub struct Done {
    pub outcome: Outcome,
    pub inputs: Vec<String>,
    pub result: Value,
    pub provenance: Vec<String>,
    pub text: String,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

fn verdict_outcome(v: &Verdict) -> Outcome {
    match v {
        Verdict::Pass => Outcome::Pass,
        Verdict::Fail { .. } => Outcome::Fail,
        Verdict::Inconclusive { .. } => Outcome::Inconclusive,
    }
}

/// Byte offsets of `@` and `,` outside brackets.
fn top_level(text: &str, target: u8) -> Vec<usize> {
    let mut depth = 0i32;
    let mut out = Vec::new();
    for (i, b) in text.bytes().enumerate() {
        match b {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            _ if b == target && depth == 0 => out.push(i),
            _ => {}
        }
    }
    out
}

/// Separates a trailing `@space` from the body; it must agree with `--space`.
fn split_space(text: &str, flag: Option<Space>) -> Result<(Space, &str)> {
    match (top_level(text, b'@').last(), flag) {
        (Some(&at), flag) => {
            let named: Space = text[at + 1..].trim().parse()?;
            match flag {
                Some(f) if f != named => Err(Error::SpaceMismatch(named, f)),
                _ => Ok((named, &text[..at])),
            }
        }
        (None, Some(f)) => Ok((f, text)),
        (None, None) => Err(Error::Parse { pos: text.len(), msg: "missing `@space` suffix and no --space".into() }),
    }
}

fn split_list(body: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut from = 0;
    for at in top_level(body, b',') {
        out.push(&body[from..at]);
        from = at + 1;
    }
    out.push(&body[from..]);
    out
}

/// `--space`, or else the first `@space` suffix among `texts`.
fn shared_space(flag: Option<Space>, texts: &[&str]) -> Result<Option<Space>> {
    if flag.is_some() {
        return Ok(flag);
    }
    texts.iter().find_map(|t| top_level(t, b'@').last().map(|&at| t[at + 1..].trim().parse::<Space>())).transpose()
}

fn expr(text: &str, flag: Option<Space>) -> Result<Expr> {
    let (space, body) = split_space(text, flag)?;
    parse_on(body, space)
}

fn object(text: &str, flag: Option<Space>) -> Result<Object> {
    expr(text, flag)?.into_object()
}

fn objects(text: &str, flag: Option<Space>) -> Result<(Space, Vec<Object>)> {
    let (space, body) = split_space(text, flag)?;
    let list = split_list(body).into_iter().map(|t| parse_on(t, space)?.into_object()).collect::<Result<Vec<_>>>()?;
    Ok((space, list))
}

fn bundle_of(e: &Expr) -> Result<BundleClass> {
    e.bundle().cloned().ok_or_else(|| Error::Unsupported(format!("{e} is not a homogeneous bundle")))
}

fn at(o: &Object) -> String {
    format!("{o} @{}", o.space())
}

fn dims_value<D: Display>(dims: &BTreeMap<usize, D>) -> Value {
    Value::Object(dims.iter().map(|(i, d)| (i.to_string(), Value::String(d.to_string()))).collect())
}

fn dims_lines<D: Display>(out: &mut String, dims: &BTreeMap<usize, D>) {
    out.push_str("  degree  dim\n");
    for (i, d) in dims {
        let _ = writeln!(out, "  {i:<6}  {d}");
    }
}

fn certificate_text(out: &mut String, cert: &Certificate) {
    let _ = writeln!(out, "{}", cert.claim);
    for p in &cert.pairs {
        let _ =
            writeln!(out, "  ({}, {})  RHom({}, {}) = {}", p.source, p.target, p.table.source, p.table.target, p.table);
    }
    let _ = writeln!(out, "verdict: {}", cert.verdict);
}

pub fn execute(cli: &Cli, ctx: &ExtContext) -> Result<Done> {
    let flag = cli.space.as_deref().map(str::parse::<Space>).transpose()?;
    match &cli.command {
        Command::Cohomology { expr: text } => cohomology(text, flag, cli.cutoff),
        Command::Ext { source, target } => ext(source, target, flag, ctx),
        Command::TiltingCheck { expr: text } => {
            let e = expr(text, flag)?;
            let cert = check_tilting(&e.summands(), ctx)?;
            Ok(certified(vec![e.to_string()], cert))
        }
        Command::ExceptionalCheck { objects: text } => {
            let (_, list) = objects(text, flag)?;
            let cert = if list.len() == 1 { check_exceptional(&list[0], ctx)? } else { check_collection(&list, ctx)? };
            Ok(certified(list.iter().map(at).collect(), cert))
        }
        Command::SphericalCheck { expr: text } => spherical(text, flag),
        Command::Mutate { collection, left, right } => mutate(collection, *left, *right, flag, ctx),
        Command::Resolve { target, against } => resolve(target, against, flag, ctx),
        Command::IwChain { chain } => iw_chain(chain, ctx),
        Command::Cyclic { n, twist, label } => cyclic(*n, *twist, label.as_deref(), ctx),
        Command::Repro => {
            let results = run_acceptance(ctx);
            let outcome = results
                .iter()
                .map(|r| match r.outcome() {
                    flopcalc_core::repro::Outcome::Pass => Outcome::Pass,
                    flopcalc_core::repro::Outcome::Inconclusive => Outcome::Inconclusive,
                    flopcalc_core::repro::Outcome::Fail => Outcome::Fail,
                })
                .max()
                .unwrap_or(Outcome::Pass);
            Ok(Done {
                outcome,
                inputs: Vec::new(),
                result: to_value(&results),
                provenance: Vec::new(),
                text: render_markdown(&results, ctx),
            })
        }
    }
}

fn certified(inputs: Vec<String>, cert: Certificate) -> Done {
    let mut text = String::new();
    certificate_text(&mut text, &cert);
    Done {
        outcome: verdict_outcome(&cert.verdict),
        inputs,
        provenance: cert.notes.clone(),
        result: to_value(&cert),
        text,
    }
}

fn cohomology(text: &str, flag: Option<Space>, cutoff: u64) -> Result<Done> {
    let e = expr(text, flag)?;
    let b = bundle_of(&e)?;
    let mut out = format!("H^*({}, {b})\n", b.space);
    let result = if b.space.is_total() {
        let g = total_space_cohomology(b.space, &b)?;
        let dims = g.dims();
        dims_lines(&mut out, &dims);
        let h0: Vec<String> = g.hilbert(0, cutoff).iter().map(|d| d.to_string()).collect();
        let _ = writeln!(out, "H^0 by fiber degree 0..={cutoff}: {}", h0.join(", "));
        json!({ "space": b.space, "bundle": b, "dims": dims_value(&dims), "h0_by_fiber_degree": h0, "families": g })
    } else {
        let t = bbw_cohomology(&b)?;
        let dims: BTreeMap<usize, _> = (0..=b.space.dimension()).map(|i| (i, t.dim(i))).collect();
        dims_lines(&mut out, &dims);
        json!({ "space": b.space, "bundle": b, "dims": dims_value(&dims), "table": t })
    };
    Ok(Done { outcome: Outcome::Done, inputs: vec![e.to_string()], result, provenance: Vec::new(), text: out })
}

fn ext_done(inputs: Vec<String>, t: ExtTable) -> Done {
    let outcome = if t.is_certified() { Outcome::Done } else { Outcome::Inconclusive };
    let mut text = format!("RHom({}, {}) on {}\n", t.source, t.target, t.space);
    dims_lines(&mut text, &t.degrees);
    if let Some(d) = t.exact_dims() {
        let _ = writeln!(text, "= {}", graded(&d, &Dim::zero()));
    } else {
        let _ = writeln!(
            text,
            "not certified; euler characteristic {}",
            t.euler.as_ref().map_or("unknown".into(), |e| e.to_string())
        );
    }
    for p in &t.provenance {
        let _ = writeln!(text, "  by: {p}");
    }
    Done { outcome, inputs, provenance: t.provenance.clone(), result: to_value(&t), text }
}

fn ext(source: &str, target: &str, flag: Option<Space>, ctx: &ExtContext) -> Result<Done> {
    let flag = shared_space(flag, &[source, target])?;
    let a = object(source, flag)?;
    let b = object(target, flag)?;
    let t = ext_table(&a, &b, ctx)?;
    Ok(ext_done(vec![at(&a), at(&b)], t))
}

fn spherical(text: &str, flag: Option<Space>) -> Result<Done> {
    let (total, body) = split_space(text, flag)?;
    let base = total.base().ok_or(Error::NotTotalSpace(total))?;
    let e = parse_on(body, base)?;
    let f = bundle_of(&e)?;
    let (table, cert) = check_spherical_zero_section(&f, total)?;
    let mut out = format!("iota_* {f} on {total}\n");
    for x in &table.e2 {
        let _ = writeln!(out, "  E2^({}, {}) = {}", x.p, x.q, x.dim);
    }
    if let Some(t) = &table.totals {
        let _ = writeln!(out, "total: {}", graded(t, &0u32.into()));
    }
    certificate_text(&mut out, &cert);
    Ok(Done {
        outcome: verdict_outcome(&cert.verdict),
        inputs: vec![format!("{f} @{base}"), total.to_string()],
        provenance: cert.notes.clone(),
        result: json!({ "spectral": table, "certificate": cert }),
        text: out,
    })
}

fn mutate(
    text: &str,
    left: Option<usize>,
    right: Option<usize>,
    flag: Option<Space>,
    ctx: &ExtContext,
) -> Result<Done> {
    let (_, list) = objects(text, flag)?;
    let c = Collection::new(list, ctx)?;
    let step = match (left, right) {
        (Some(i), _) => mutate_left(&c, i, ctx)?,
        (None, Some(i)) => mutate_right(&c, i, ctx)?,
        (None, None) => return Err(Error::Parse { pos: 0, msg: "give --left or --right".into() }),
    };
    let outcome = if !step.identity.holds { Outcome::Fail } else { verdict_outcome(&step.result.certificate.verdict) };
    let mut out = String::new();
    let _ = writeln!(out, "{:?} mutation at ({}, {})", step.direction, step.pivot, step.pivot + 1);
    let _ = writeln!(out, "RHom = {}", step.hom);
    let _ = writeln!(out, "constructed: {}", step.constructed);
    if let Some(b) = &step.identified {
        let _ = writeln!(out, "identified: {b}");
    }
    let names: Vec<String> = step.result.objects.iter().map(|o| o.to_string()).collect();
    let _ = writeln!(out, "collection: {}", names.join(", "));
    let _ = writeln!(
        out,
        "K-class identity (chi = {}, shift {}): {}",
        step.identity.euler,
        step.identity.shift,
        if step.identity.holds { "holds" } else { "fails" }
    );
    let _ = writeln!(out, "exceptional: {}", step.result.certificate.verdict);
    Ok(Done {
        outcome,
        inputs: c.objects.iter().map(at).collect(),
        provenance: step.result.certificate.notes.clone(),
        result: to_value(&step),
        text: out,
    })
}

fn resolve(target: &str, against: &str, flag: Option<Space>, ctx: &ExtContext) -> Result<Done> {
    let flag = shared_space(flag, &[target, against])?;
    let t = object(target, flag)?;
    let (_, list) = objects(against, flag)?;
    let bundles = list
        .iter()
        .map(|o| o.as_bundle().cloned().ok_or_else(|| Error::Unsupported(format!("{o} is not a homogeneous bundle"))))
        .collect::<Result<Vec<_>>>()?;
    let r = derive_resolution(&t, &bundles, ctx)?;
    let outcome = if r.complete && r.alternating_sum_zero { Outcome::Pass } else { Outcome::Fail };
    let mults: Vec<String> = r.multiplicities().iter().map(|m| m.to_string()).collect();
    let terms: Vec<String> =
        r.terms
            .iter()
            .map(|x| {
                if x.multiplicity == 1.into() {
                    x.object.to_string()
                } else {
                    format!("{}^{}", x.object, x.multiplicity)
                }
            })
            .collect();
    let tail = if r.complete { " -> 0" } else { " -> ..." };
    let mut out = format!("0 -> {}{tail}\nmultiplicities: {}\n", terms.join(" -> "), mults.join(", "));
    for s in &r.derivation {
        let m = s.multiplicity.as_ref().map_or("undecided".into(), |m| m.to_string());
        let _ = writeln!(out, "  {:?} {}: Hom({}, {}) = {}  gives {m}", s.side, s.index, s.source, s.target, s.ext);
    }
    let mut inputs = vec![at(&t)];
    inputs.extend(list.iter().map(at));
    Ok(Done { outcome, inputs, provenance: Vec::new(), result: to_value(&r), text: out })
}

fn iw_chain(text: &str, ctx: &ExtContext) -> Result<Done> {
    let spec: ChainSpec = match named_chain(text.trim()) {
        Some(s) => s,
        None => text.parse()?,
    };
    let r = verify_iw_chain(&spec, ctx)?;
    let outcome = if r.passed() {
        Outcome::Pass
    } else if r.first_failure.is_some() || r.end_matches == Some(false) {
        Outcome::Fail
    } else {
        Outcome::Inconclusive
    };
    let labels =
        |v: &[flopcalc_core::mutation::ModuleLabel]| v.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(", ");
    let mut out = format!("start {{{}}}\n", labels(&r.start));
    for s in &r.steps {
        let _ = writeln!(out, "  step {} at {}: {}  {:?}", s.index, s.frozen.name, s.sequence, s.certificate.status);
        if s.certificate.status != StepStatus::Certified {
            for c in &s.certificate.clauses {
                let _ = writeln!(out, "      {}: {}", c.name, c.status);
            }
        }
    }
    let _ = writeln!(out, "end {{{}}}", labels(&r.end));
    if let Some(m) = r.end_matches {
        let _ = writeln!(out, "end as expected: {m}");
    }
    Ok(Done { outcome, inputs: vec![text.trim().to_string()], provenance: Vec::new(), result: to_value(&r), text: out })
}

fn cyclic(n: u32, twist: Option<i64>, label: Option<&str>, ctx: &ExtContext) -> Result<Done> {
    if n < 2 {
        return Err(Error::OutsideWindow(format!("n = {n} is below 2")));
    }
    if let (Some(k), Some(label)) = (twist, label) {
        let l: LinePower = label.parse()?;
        let img = cyclic_twist_orbit(n, k, l, ctx)?;
        let text = format!("T_{k}({}) = {}  (Ext = {})\n", img.input, img.output, img.justification);
        return Ok(Done {
            outcome: Outcome::Done,
            inputs: vec![format!("n = {n}"), format!("k = {k}"), l.to_string()],
            provenance: Vec::new(),
            result: to_value(&img),
            text,
        });
    }
    let nn = n as i64;
    let space = Space::Cyclic(n);
    let mut out = format!("Tot(O(-{n})) over P^{}\n", n - 1);
    let mut worst = Outcome::Pass;
    let mut tilting = Vec::new();
    for k in 0..=nn {
        let objs: Vec<Object> = cyclic_tilt(n, k).iter().map(|l| l.object(n)).collect();
        let cert = check_tilting(&objs, ctx)?;
        worst = worst.max(verdict_outcome(&cert.verdict));
        let _ = writeln!(out, "  Tilt_{k} tilting: {}", cert.verdict);
        tilting.push(json!({ "k": k, "verdict": cert.verdict }));
    }
    let mut exts = Vec::new();
    for k in 1..nn {
        let f = BundleClass::line(space.base().unwrap(), -k);
        let t = ext_zero_section(&f, &LinePower(k - nn).object(n), ctx)?;
        let text = t.exact_dims().map(|d| graded(&d, &Dim::zero()));
        let ok = text.as_deref() == Some("C[-1]");
        if !ok {
            worst = worst.max(if t.is_certified() { Outcome::Fail } else { Outcome::Inconclusive });
        }
        let _ = writeln!(out, "  Ext(iota_* O_Z(-{k}), L^{}) = {}", k - nn, t);
        exts.push(json!({ "k": k, "ext": t, "is_c_shift_1": ok }));
    }
    let mut chains = Vec::new();
    for k in 1..nn {
        let spec = named_chain(&format!("cyclic-{n},{k}")).expect("cyclic chain names parse");
        let r = verify_iw_chain(&spec, ctx)?;
        let o = if r.passed() {
            Outcome::Pass
        } else if r.first_failure.is_some() {
            Outcome::Fail
        } else {
            Outcome::Inconclusive
        };
        worst = worst.max(o);
        let _ = writeln!(out, "  mu_W{k}^{} returns to the start: {}", n - 1, o);
        chains.push(json!({ "k": k, "outcome": o, "end_matches": r.end_matches }));
    }
    let start = cyclic_tilt(n, 0);
    let (end, _) = cyclic_composite(n, 1, &start, ctx)?;
    let shifted: Vec<LinePower> = start.iter().map(|l| LinePower(l.0 + nn)).collect();
    let composite_ok = end == shifted;
    if !composite_ok {
        worst = worst.max(Outcome::Fail);
    }
    let names = |v: &[LinePower]| v.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(", ");
    let _ = writeln!(out, "  T_{n} ... T_1 on Tilt_0: {} -> {}", names(&start), names(&end));
    let _ = writeln!(out, "  equals tensoring by L^{n}: {composite_ok}");
    let result = json!({
        "n": n,
        "tilting": tilting,
        "exts": exts,
        "chains": chains,
        "composite": { "start": start, "end": end, "equals_tensor_by_l_n": composite_ok },
    });
    Ok(Done { outcome: worst, inputs: vec![format!("n = {n}")], provenance: Vec::new(), result, text: out })
}
