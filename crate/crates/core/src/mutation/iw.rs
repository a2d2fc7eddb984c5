//! Exchange of module summands through approximation sequences. Modules are
//! symbols: `M_a` and `S_a` stand for the pushforwards of `O(a)` and `S(a)`
//! on Y, and in the cyclic case `M_k = M_{k-n}`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use super::resolution::derive_resolution;
use crate::bundles::{sigma, BundleClass, KClass, Object, Space};
use crate::error::{Error, Result};
use crate::homalg::{check_tilting, kclass_equal, Certificate, ExtContext, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModuleLabel {
    M(i64),
    S(i64),
    Image(String),
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleLabel::M(a) => write!(f, "M{a}"),
            ModuleLabel::S(a) => write!(f, "S{a}"),
            ModuleLabel::Image(s) => write!(f, "{s}"),
        }
    }
}

impl Serialize for ModuleLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for ModuleLabel {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        let bad = || Error::Parse { pos: 0, msg: format!("bad module label {t:?}") };
        let index = |rest: &str| rest.parse::<i64>().map_err(|_| bad());
        if let Some(rest) = t.strip_prefix('M') {
            return Ok(ModuleLabel::M(index(rest)?));
        }
        if let Some(rest) = t.strip_prefix('S') {
            return Ok(ModuleLabel::S(index(rest)?));
        }
        if t.starts_with("Cok(") && t.ends_with(')') {
            return Ok(ModuleLabel::Image(t.to_string()));
        }
        Err(bad())
    }
}

/// Which relations the labels obey.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Setting {
    Abuaf,
    Cyclic(u32),
}

impl Setting {
    pub fn normalize(self, l: &ModuleLabel) -> ModuleLabel {
        match (self, l) {
            (Setting::Cyclic(n), ModuleLabel::M(a)) => ModuleLabel::M(a.rem_euclid(n as i64)),
            _ => l.clone(),
        }
    }

    /// Sorted normal forms, for multiset comparison.
    pub fn multiset(self, labels: &[ModuleLabel]) -> Vec<ModuleLabel> {
        let mut v: Vec<ModuleLabel> = labels.iter().map(|l| self.normalize(l)).collect();
        v.sort();
        v
    }
}

/// The bundle a label stands for on a given space. On Y' the labels follow
/// the flop: `M_a = O(-a)` and `S_a = Sigma(-a)`.
pub fn realize(label: &ModuleLabel, space: Space) -> Result<Object> {
    let missing = || Error::Unsupported(format!("label {label} has no bundle on {space}"));
    match (label, space.compact()) {
        (ModuleLabel::M(a), Space::LGr) => Ok(BundleClass::line(space, *a).into()),
        (ModuleLabel::S(a), Space::LGr) => Ok(BundleClass::irreducible(space, vec![*a, a - 1]).into()),
        (ModuleLabel::M(a), Space::PSp) => Ok(BundleClass::line(space, -a).into()),
        (ModuleLabel::S(a), Space::PSp) if space == Space::YPrime => Ok(sigma(-a)),
        (ModuleLabel::M(a), Space::Proj(_)) => Ok(BundleClass::line(space, -a).into()),
        _ => Err(missing()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledObject {
    pub label: ModuleLabel,
    pub object: Object,
}

/// `0 -> kernel -> middle^m -> cokernel -> 0` on `space`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeSequence {
    pub space: Space,
    pub kernel: LabeledObject,
    pub middle: LabeledObject,
    #[serde(serialize_with = "crate::decimal::int")]
    pub multiplicity: BigInt,
    pub cokernel: LabeledObject,
    /// Where the sequence comes from.
    pub derivation: String,
}

impl ExchangeSequence {
    pub fn k_exact(&self) -> Result<bool> {
        let mut k = KClass::zero(self.space);
        let m = self.multiplicity.to_i64().ok_or_else(|| Error::Unsupported("multiplicity".into()))?;
        k.add_scaled(&self.middle.object.kclass(), m);
        k.add_scaled(&self.kernel.object.kclass(), -1);
        k.add_scaled(&self.cokernel.object.kclass(), -1);
        Ok(k.is_zero() || kclass_equal(&k, &KClass::zero(self.space))?)
    }
}

impl fmt::Display for ExchangeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mid = if self.multiplicity == BigInt::from(1) {
            self.middle.label.to_string()
        } else {
            format!("{}^{}", self.middle.label, self.multiplicity)
        };
        write!(f, "0 -> {} -> {} -> {} -> 0", self.kernel.label, mid, self.cokernel.label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrozenSet {
    pub name: String,
    pub setting: Setting,
    pub labels: Vec<ModuleLabel>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail")]
pub enum ClauseStatus {
    Holds,
    /// Not decided by computation, but inherited through the mutation from an
    /// established neighbour.
    Propagated(String),
    /// Not decided, and no established neighbour to inherit from.
    Undecided(String),
    Fails(String),
}

impl ClauseStatus {
    pub fn is_holding(&self) -> bool {
        matches!(self, ClauseStatus::Holds)
    }
}

impl fmt::Display for ClauseStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClauseStatus::Holds => write!(f, "holds"),
            ClauseStatus::Propagated(d) => write!(f, "propagated ({d})"),
            ClauseStatus::Undecided(d) => write!(f, "undecided ({d})"),
            ClauseStatus::Fails(d) => write!(f, "fails ({d})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: String,
    pub status: ClauseStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StepStatus {
    Certified,
    Propagated,
    Inconclusive,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApproximationCertificate {
    pub clauses: Vec<Clause>,
    pub start: Certificate,
    pub end: Certificate,
    pub status: StepStatus,
}

/// Tilting certificates keyed by the printed summand list.
#[derive(Default)]
pub struct TiltingCache {
    seen: HashMap<String, Certificate>,
}

impl TiltingCache {
    pub fn check(&mut self, summands: &[Object], ctx: &ExtContext) -> Result<Certificate> {
        let mut names: Vec<String> = summands.iter().map(|o| o.to_string()).collect();
        names.sort();
        let key = format!("{:?}{}", ctx.oracle, names.join(" + "));
        if let Some(c) = self.seen.get(&key) {
            return Ok(c.clone());
        }
        let c = check_tilting(summands, ctx)?;
        self.seen.insert(key, c.clone());
        Ok(c)
    }
}

fn multiset_minus(setting: Setting, a: &[ModuleLabel], b: &[ModuleLabel]) -> Option<Vec<ModuleLabel>> {
    let mut rest = setting.multiset(a);
    for l in setting.multiset(b) {
        let i = rest.iter().position(|x| *x == l)?;
        rest.remove(i);
    }
    Some(rest)
}

fn tilting_clause(name: &str, cert: &Certificate, inherited: bool) -> Clause {
    let status = match &cert.verdict {
        Verdict::Pass => ClauseStatus::Holds,
        Verdict::Fail { .. } => ClauseStatus::Fails(cert.verdict.to_string()),
        Verdict::Inconclusive { .. } if inherited => ClauseStatus::Propagated(cert.verdict.to_string()),
        Verdict::Inconclusive { .. } => ClauseStatus::Undecided(cert.verdict.to_string()),
    };
    Clause { name: name.into(), status }
}

fn established(c: &Clause) -> bool {
    matches!(c.status, ClauseStatus::Holds | ClauseStatus::Propagated(_))
}

/// Left mutation of `current` at `frozen` through `via`: the kernel label is
/// replaced by the cokernel label. `start_established` says the current set
/// is already known to be tilting; an undecided endpoint is then inherited,
/// since mutation along an approximation sequence preserves tilting.
pub fn iw_exchange(
    current: &[ModuleLabel],
    frozen: &FrozenSet,
    via: &ExchangeSequence,
    start_established: bool,
    ctx: &ExtContext,
    cache: &mut TiltingCache,
) -> Result<(Vec<ModuleLabel>, ApproximationCertificate)> {
    let setting = frozen.setting;
    let mut clauses = Vec::new();
    let hold = |name: &str, ok: bool, why: String| Clause {
        name: name.into(),
        status: if ok { ClauseStatus::Holds } else { ClauseStatus::Fails(why) },
    };

    let rest = multiset_minus(setting, current, &frozen.labels);
    clauses.push(hold(
        "frozen set is a summand",
        rest.is_some(),
        format!("{} is not inside the current set", frozen.name),
    ));
    let exchanged = rest.clone().unwrap_or_default();
    let kernel = setting.normalize(&via.kernel.label);
    clauses.push(hold(
        "kernel is the exchanged summand",
        exchanged == vec![kernel.clone()],
        format!("current minus {} is {:?}, the sequence starts at {}", frozen.name, labels_text(&exchanged), kernel),
    ));
    let frozen_norm = setting.multiset(&frozen.labels);
    let mid = setting.normalize(&via.middle.label);
    clauses.push(hold("middle term in add W", frozen_norm.contains(&mid), format!("{mid} is not in {}", frozen.name)));
    clauses.push(hold("sequence exact in K-theory", via.k_exact()?, "alternating K-sum is nonzero".into()));
    clauses.push(hold(
        "O summand in W",
        frozen_norm.contains(&ModuleLabel::M(0)),
        format!("M0 is not in {}", frozen.name),
    ));

    let mut base = Vec::new();
    for l in &frozen.labels {
        base.push(realize(l, via.space)?);
    }
    let mut start_objs = base.clone();
    start_objs.push(via.kernel.object.clone());
    let mut end_objs = base;
    end_objs.push(via.cokernel.object.clone());
    let start = cache.check(&start_objs, ctx)?;
    let end = cache.check(&end_objs, ctx)?;
    let start_clause = tilting_clause("W + kernel is tilting", &start, start_established);
    let end_clause = tilting_clause("W + cokernel is tilting", &end, established(&start_clause));
    clauses.push(start_clause);
    clauses.push(end_clause);

    let status = if clauses.iter().any(|c| matches!(c.status, ClauseStatus::Fails(_))) {
        StepStatus::Failed
    } else if clauses.iter().any(|c| matches!(c.status, ClauseStatus::Undecided(_))) {
        StepStatus::Inconclusive
    } else if clauses.iter().any(|c| matches!(c.status, ClauseStatus::Propagated(_))) {
        StepStatus::Propagated
    } else {
        StepStatus::Certified
    };

    let mut next: Vec<ModuleLabel> = frozen.labels.clone();
    next.push(via.cokernel.label.clone());
    Ok((next, ApproximationCertificate { clauses, start, end, status }))
}

fn labels_text(v: &[ModuleLabel]) -> String {
    let s: Vec<String> = v.iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", s.join(", "))
}

/// A frozen set with the exchange sequences available at it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrozenDefinition {
    pub frozen: FrozenSet,
    pub sequences: Vec<ExchangeSequence>,
    pub default_start: Vec<ModuleLabel>,
}

fn m(a: i64) -> ModuleLabel {
    ModuleLabel::M(a)
}

fn s(a: i64) -> ModuleLabel {
    ModuleLabel::S(a)
}

fn image(name: &str) -> ModuleLabel {
    ModuleLabel::Image(format!("Cok({name})"))
}

/// Splits the resolution of `target` by `against` (labels realized on the
/// zero section) into exchange sequences on `space`. Intermediate labels that
/// name bundles are checked against the K-class of the image.
fn sequences_from(
    space: Space,
    target: ModuleLabel,
    against: &[ModuleLabel],
    images: &[ModuleLabel],
    ctx: &ExtContext,
) -> Result<Vec<ExchangeSequence>> {
    let base = space.compact();
    let t = realize(&target, base)?;
    let mut a = Vec::new();
    for l in against {
        match realize(l, base)? {
            Object::Bundle(b) => a.push(b),
            o => return Err(Error::Unsupported(format!("{o} is not a bundle"))),
        }
    }
    let chain = derive_resolution(&t, &a, ctx)?;
    if !chain.complete {
        return Err(Error::Hypothesis(format!("the resolution of {t} does not close")));
    }
    let mults: Vec<String> = chain.multiplicities().iter().map(|x| x.to_string()).collect();
    let derivation = format!(
        "resolution of {t} by ({}) with multiplicities ({})",
        a.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(", "),
        mults.join(", ")
    );
    let pieces = chain.pieces();
    if images.len() + 1 != pieces.len() {
        return Err(Error::Unsupported(format!("{} image labels for {} pieces", images.len(), pieces.len())));
    }
    let mut labels = vec![target];
    labels.extend(images.iter().cloned());
    labels.push(against.last().unwrap().clone());
    let mut out = Vec::new();
    for (j, (sub, mid, quo)) in pieces.into_iter().enumerate() {
        let lift = |label: &ModuleLabel, o: Object| -> Result<Object> {
            if let ModuleLabel::Image(_) = label {
                return Ok(o.move_to(space));
            }
            let b = realize(label, base)?;
            if !kclass_equal(&b.kclass(), &o.kclass())? {
                return Err(Error::Hypothesis(format!("{o} does not have the class of {label}")));
            }
            realize(label, space)
        };
        out.push(ExchangeSequence {
            space,
            kernel: LabeledObject { label: labels[j].clone(), object: lift(&labels[j], sub)? },
            middle: LabeledObject { label: against[j].clone(), object: mid.object.move_to(space) },
            multiplicity: mid.multiplicity,
            cokernel: LabeledObject { label: labels[j + 1].clone(), object: lift(&labels[j + 1], quo)? },
            derivation: derivation.clone(),
        });
    }
    Ok(out)
}

fn frozen(name: &str, setting: Setting, labels: Vec<ModuleLabel>) -> FrozenSet {
    FrozenSet { name: name.into(), setting, labels }
}

/// Built-in frozen sets: `W1`..`W4`, `Wprime`, and `Wk(n,k)` for the cyclic family.
pub fn frozen_definition(name: &str, ctx: &ExtContext) -> Result<FrozenDefinition> {
    let ab = Setting::Abuaf;
    let y = Space::Y;
    let t = name.trim();
    let def = match t {
        "W1" => FrozenDefinition {
            frozen: frozen(t, ab, vec![m(0), m(-1), m(-2)]),
            sequences: sequences_from(y, s(-2), &[m(-2), m(-1), m(0), s(1)], &[s(-1), s(0)], ctx)?,
            default_start: vec![m(0), m(-1), m(-2), s(-2)],
        },
        "W2" => FrozenDefinition {
            frozen: frozen(t, ab, vec![m(0), m(-1), s(1)]),
            sequences: sequences_from(y, m(-2), &[m(-1), m(0), s(1), m(1)], &[image("b1"), image("b2")], ctx)?,
            default_start: vec![m(0), m(-1), m(-2), s(1)],
        },
        "W3" => FrozenDefinition {
            frozen: frozen(t, ab, vec![m(0), s(1), m(1)]),
            sequences: sequences_from(y, m(-1), &[m(0), s(1), m(1), m(2)], &[image("c1"), image("c2")], ctx)?,
            default_start: vec![m(0), m(-1), s(1), m(1)],
        },
        "W4" => FrozenDefinition {
            frozen: frozen(t, ab, vec![m(0), m(1), m(2)]),
            sequences: sequences_from(y, s(1), &[m(1), s(2)], &[], ctx)?,
            default_start: vec![m(0), s(1), m(1), m(2)],
        },
        "Wprime" => {
            let mut sequences = sequences_from(y, m(-1), &[m(0), s(1), m(1), m(2)], &[image("c1"), image("c2")], ctx)?;
            // on Y' the defining extension of Sigma(-1) exchanges M2 for M-1
            let sp = Space::YPrime;
            sequences.push(ExchangeSequence {
                space: sp,
                kernel: LabeledObject { label: m(2), object: realize(&m(2), sp)? },
                middle: LabeledObject { label: s(1), object: realize(&s(1), sp)? },
                multiplicity: BigInt::from(1),
                cokernel: LabeledObject { label: m(-1), object: realize(&m(-1), sp)? },
                derivation: "the extension 0 -> O(-2) -> Sigma(-1) -> O(1) -> 0 on Y'".into(),
            });
            FrozenDefinition {
                frozen: frozen("Wprime", ab, vec![m(0), s(1), m(1)]),
                sequences,
                default_start: vec![m(-1), m(0), m(1), s(1)],
            }
        }
        _ => {
            let (n, k) = parse_wk(t)?;
            cyclic_definition(n, k, ctx)?
        }
    };
    Ok(def)
}

fn parse_wk(t: &str) -> Result<(u32, i64)> {
    let bad = || Error::Parse { pos: 0, msg: format!("unknown frozen set {t:?}") };
    let inner = t.strip_prefix("Wk(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    let (a, b) = inner.split_once(',').ok_or_else(bad)?;
    let n: u32 = a.trim().parse().map_err(|_| bad())?;
    let k: i64 = b.trim().parse().map_err(|_| bad())?;
    if n < 2 {
        return Err(Error::OutsideWindow(format!("n = {n} is below 2")));
    }
    Ok((n, k))
}

/// `W_k = {M_{k-n+1}, ..., M_{k-1}}` on Tot(O(-n)), exchanging `M_k` along
/// the pulled-back Koszul complex.
pub fn cyclic_definition(n: u32, k: i64, ctx: &ExtContext) -> Result<FrozenDefinition> {
    let nn = n as i64;
    let setting = Setting::Cyclic(n);
    let labels: Vec<ModuleLabel> = (k - nn + 1..k).map(m).collect();
    let against: Vec<ModuleLabel> = (1..=nn).map(|j| m(k - j)).collect();
    let images: Vec<ModuleLabel> = (1..nn - 1).map(|j| image(&format!("{k},{j}"))).collect();
    let sequences = sequences_from(Space::Cyclic(n), m(k), &against, &images, ctx)?;
    let mut default_start = labels.clone();
    default_start.push(m(k));
    Ok(FrozenDefinition { frozen: frozen(&format!("Wk({n},{k})"), setting, labels), sequences, default_start })
}

/// Ordered frozen-set names with repeat counts, an optional start set and an
/// optional expected end set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainSpec {
    pub start: Option<Vec<ModuleLabel>>,
    pub items: Vec<(String, usize)>,
    pub expect: Option<Vec<ModuleLabel>>,
}

fn parse_label_set(t: &str) -> Result<Vec<ModuleLabel>> {
    let inner = t
        .trim()
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::Parse { pos: 0, msg: format!("expected {{labels}}, found {t:?}") })?;
    inner.split(',').filter(|x| !x.trim().is_empty()).map(|x| x.parse()).collect()
}

impl FromStr for ChainSpec {
    type Err = Error;

    /// `[{labels}] item item ... [=> {labels}]`, items `NAME` or `NAME^count`
    /// separated by spaces or commas outside parentheses.
    fn from_str(text: &str) -> Result<Self> {
        let (body, expect) = match text.split_once("=>") {
            Some((b, e)) => (b, Some(parse_label_set(e)?)),
            None => (text, None),
        };
        let mut body = body.trim();
        let mut start = None;
        if body.starts_with('{') {
            let close = body.find('}').ok_or_else(|| Error::Parse { pos: 0, msg: "unclosed {".into() })?;
            start = Some(parse_label_set(&body[..=close])?);
            body = &body[close + 1..];
        }
        let mut items = Vec::new();
        let mut depth = 0;
        let mut cur = String::new();
        let mut flush = |cur: &mut String| -> Result<()> {
            let w = cur.trim();
            if !w.is_empty() {
                let (name, count) = match w.split_once('^') {
                    Some((n, c)) => (
                        n.trim(),
                        c.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse { pos: 0, msg: format!("bad count in {w:?}") })?,
                    ),
                    None => (w, 1),
                };
                items.push((name.to_string(), count));
            }
            cur.clear();
            Ok(())
        };
        for ch in body.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    cur.push(ch);
                }
                ')' => {
                    depth -= 1;
                    cur.push(ch);
                }
                ',' | ' ' | '\t' if depth == 0 => flush(&mut cur)?,
                _ => cur.push(ch),
            }
        }
        flush(&mut cur)?;
        if items.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "empty chain".into() });
        }
        Ok(ChainSpec { start, items, expect })
    }
}

/// Library chains by name.
pub fn named_chain(name: &str) -> Option<ChainSpec> {
    let text = match name {
        "t-to-s" => "{M0, M-1, M-2, S-2} W1^3 W2^3 W3^3 => {M0, S1, M1, M2}".to_string(),
        "t-to-u" => "{M0, M-1, M-2, S-2} W1^3 W2^3 W3^3 W4 => {M0, M1, M2, S2}".to_string(),
        "s-to-u" => "{M0, S1, M1, M2} W4 => {M0, M1, M2, S2}".to_string(),
        "wprime-cycle" => "{M-1, M0, M1, S1} Wprime^4 => {M-1, M0, M1, S1}".to_string(),
        _ => {
            let (n, k) = parse_wk(name.strip_prefix("cyclic-").map(|r| format!("Wk({r})")).as_deref()?).ok()?;
            format!("Wk({n},{k})^{}", n - 1)
        }
    };
    text.parse().ok()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IwStepReport {
    pub index: usize,
    pub frozen: FrozenSet,
    pub before: Vec<ModuleLabel>,
    pub after: Vec<ModuleLabel>,
    pub sequence: ExchangeSequence,
    pub certificate: ApproximationCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IwChainReport {
    pub spec: ChainSpec,
    pub start: Vec<ModuleLabel>,
    pub end: Vec<ModuleLabel>,
    pub steps: Vec<IwStepReport>,
    /// Set when the spec names an expected end, or the chain is cyclic.
    pub end_matches: Option<bool>,
    /// Index (1-based) of the first step whose certificate fails.
    pub first_failure: Option<usize>,
}

impl IwChainReport {
    /// Every step certified or propagated and the end as expected.
    pub fn passed(&self) -> bool {
        self.end_matches != Some(false)
            && self.steps.iter().all(|s| matches!(s.certificate.status, StepStatus::Certified | StepStatus::Propagated))
    }

    pub fn all_certified(&self) -> bool {
        self.steps.iter().all(|s| s.certificate.status == StepStatus::Certified)
    }
}

/// Runs every step of the chain. A failed step is reported and the chain
/// continues with its labels so that the whole report is available.
pub fn verify_iw_chain(spec: &ChainSpec, ctx: &ExtContext) -> Result<IwChainReport> {
    let mut defs: HashMap<String, FrozenDefinition> = HashMap::new();
    for (name, _) in &spec.items {
        if !defs.contains_key(name) {
            defs.insert(name.clone(), frozen_definition(name, ctx)?);
        }
    }
    let first = &defs[&spec.items[0].0];
    let setting = first.frozen.setting;
    let start = spec.start.clone().unwrap_or_else(|| first.default_start.clone());
    let mut current = start.clone();
    let mut steps = Vec::new();
    let mut cache = TiltingCache::default();
    let mut established_set = false;
    for (name, count) in &spec.items {
        let def = &defs[name];
        for _ in 0..*count {
            let index = steps.len() + 1;
            let exchanged = multiset_minus(setting, &current, &def.frozen.labels).ok_or_else(|| {
                Error::Hypothesis(format!("step {index}: {} is not inside {}", name, labels_text(&current)))
            })?;
            let via = def.sequences.iter().find(|q| exchanged == vec![setting.normalize(&q.kernel.label)]).ok_or_else(
                || {
                    Error::Hypothesis(format!(
                        "step {index}: no exchange sequence at {name} starts from {}",
                        labels_text(&exchanged)
                    ))
                },
            )?;
            let (next, certificate) = iw_exchange(&current, &def.frozen, via, established_set, ctx, &mut cache)?;
            established_set = certificate.clauses.last().is_some_and(established);
            steps.push(IwStepReport {
                index,
                frozen: def.frozen.clone(),
                before: current.clone(),
                after: next.clone(),
                sequence: via.clone(),
                certificate,
            });
            current = next;
        }
    }
    let end_matches = match &spec.expect {
        Some(e) => Some(setting.multiset(e) == setting.multiset(&current)),
        None if matches!(setting, Setting::Cyclic(_)) => Some(setting.multiset(&start) == setting.multiset(&current)),
        None => None,
    };
    let first_failure = steps.iter().find(|s| s.certificate.status == StepStatus::Failed).map(|s| s.index);
    Ok(IwChainReport { spec: spec.clone(), start, end: current, steps, end_matches, first_failure })
}
