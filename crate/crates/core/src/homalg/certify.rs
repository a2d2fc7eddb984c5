use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use super::ext::{ext_table, ExtContext, ExtTable};
use crate::bundles::Object;
use crate::cohomology::Dim;
use crate::error::Result;

/// A nonzero Ext group that a claim requires to vanish (or to be smaller).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub source: String,
    pub target: String,
    pub degree: usize,
    pub dim: Dim,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    Pass,
    Fail { witness: Witness },
    Inconclusive { obstruction: String },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    /// Process exit code: 0 pass, 1 fail, 2 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail { .. } => 1,
            Verdict::Inconclusive { .. } => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "Pass"),
            Verdict::Fail { witness: w } => {
                write!(f, "Fail (Ext^{}({}, {}) has dimension {})", w.degree, w.source, w.target, w.dim)
            }
            Verdict::Inconclusive { obstruction } => write!(f, "Inconclusive ({obstruction})"),
        }
    }
}

/// The table of one ordered pair `(i, j)` of the inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairTable {
    pub source: usize,
    pub target: usize,
    pub table: ExtTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub claim: String,
    pub verdict: Verdict,
    pub pairs: Vec<PairTable>,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn is_pass(&self) -> bool {
        self.verdict.is_pass()
    }
}

fn witness(t: &ExtTable, degree: usize, dim: Dim) -> Witness {
    Witness { source: t.source.clone(), target: t.target.clone(), degree, dim }
}

/// Looks at one table against a demand, returning a failure, an
/// obstruction, or nothing when the demand is certified.
fn judge_endomorphisms(t: &ExtTable) -> Option<Verdict> {
    let zero = t.range(0);
    if zero.lo > Dim::from(1u64) {
        return Some(Verdict::Fail { witness: witness(t, 0, zero.lo) });
    }
    if let Some((i, d)) = t.higher_witness() {
        return Some(Verdict::Fail { witness: witness(t, i, d) });
    }
    if !(zero.hi == Dim::from(1u64) && zero.is_exact() && t.higher_vanish()) {
        return Some(Verdict::Inconclusive { obstruction: format!("RHom({}, {}) = {}", t.source, t.target, t) });
    }
    None
}

fn judge_vanishing(t: &ExtTable) -> Option<Verdict> {
    if let Some((i, r)) = t.degrees.iter().find(|(_, r)| !r.lo.is_zero()) {
        return Some(Verdict::Fail { witness: witness(t, *i, r.lo.clone()) });
    }
    if !t.is_zero() {
        return Some(Verdict::Inconclusive { obstruction: format!("RHom({}, {}) = {}", t.source, t.target, t) });
    }
    None
}

fn judge_higher(t: &ExtTable) -> Option<Verdict> {
    if let Some((i, d)) = t.higher_witness() {
        return Some(Verdict::Fail { witness: witness(t, i, d) });
    }
    if !t.higher_vanish() {
        return Some(Verdict::Inconclusive { obstruction: format!("RHom({}, {}) = {}", t.source, t.target, t) });
    }
    None
}

/// Keeps the first failure, else the first obstruction.
fn combine(current: &mut Verdict, next: Option<Verdict>) {
    match (&*current, next) {
        (_, None) | (Verdict::Fail { .. }, _) => {}
        (Verdict::Inconclusive { .. }, Some(Verdict::Inconclusive { .. })) => {}
        (_, Some(v)) => *current = v,
    }
}

fn provenance_notes(pairs: &[PairTable]) -> Vec<String> {
    let mut notes: Vec<String> = pairs.iter().flat_map(|p| p.table.provenance.iter().cloned()).collect();
    notes.sort();
    notes.dedup();
    notes
}

pub fn check_exceptional(e: &Object, ctx: &ExtContext) -> Result<Certificate> {
    let t = ext_table(e, e, ctx)?;
    let mut verdict = Verdict::Pass;
    combine(&mut verdict, judge_endomorphisms(&t));
    let pairs = vec![PairTable { source: 0, target: 0, table: t }];
    let notes = provenance_notes(&pairs);
    Ok(Certificate { claim: format!("{e} is exceptional"), verdict, pairs, notes })
}

/// Every member exceptional, and `RHom(E_l, E_k) = 0` for l > k.
pub fn check_collection(objects: &[Object], ctx: &ExtContext) -> Result<Certificate> {
    let mut verdict = Verdict::Pass;
    let mut pairs = Vec::new();
    for (i, a) in objects.iter().enumerate() {
        for (j, b) in objects.iter().enumerate() {
            if i < j {
                continue;
            }
            let t = ext_table(a, b, ctx)?;
            let judged = if i == j { judge_endomorphisms(&t) } else { judge_vanishing(&t) };
            combine(&mut verdict, judged);
            pairs.push(PairTable { source: i, target: j, table: t });
        }
    }
    let names: Vec<String> = objects.iter().map(|o| o.to_string()).collect();
    let notes = provenance_notes(&pairs);
    Ok(Certificate { claim: format!("({}) is an exceptional collection", names.join(", ")), verdict, pairs, notes })
}

/// Ext^{>0} vanishing for every ordered pair of summands. Generation is not
/// checked and is recorded as assumed.
pub fn check_tilting(summands: &[Object], ctx: &ExtContext) -> Result<Certificate> {
    let mut verdict = Verdict::Pass;
    let mut pairs = Vec::new();
    for (i, a) in summands.iter().enumerate() {
        for (j, b) in summands.iter().enumerate() {
            let t = ext_table(a, b, ctx)?;
            combine(&mut verdict, judge_higher(&t));
            pairs.push(PairTable { source: i, target: j, table: t });
        }
    }
    let names: Vec<String> = summands.iter().map(|o| o.to_string()).collect();
    let mut notes = provenance_notes(&pairs);
    notes.push("generation of the derived category is assumed, not checked".into());
    Ok(Certificate { claim: format!("{} is tilting", names.join(" + ")), verdict, pairs, notes })
}

/// Shape check used by callers that need the rank of a single Hom space.
pub fn hom_dimension(t: &ExtTable) -> Option<BigInt> {
    if !t.is_certified() || !t.higher_vanish() {
        return None;
    }
    t.range(0).lo.finite().cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundles::{parse_on, sigma, BundleClass, Space};

    fn objs(list: &[&str], sp: Space) -> Vec<Object> {
        list.iter().map(|t| parse_on(t, sp).unwrap().into_object().unwrap()).collect()
    }

    #[test]
    fn kuznetsov_and_beilinson() {
        let ctx = ExtContext::default();
        assert!(check_collection(&objs(&["O", "S(1)", "O(1)", "O(2)"], Space::LGr), &ctx).unwrap().is_pass());
        assert!(check_collection(&objs(&["O", "O(1)", "O(2)", "O(3)"], Space::Proj(3)), &ctx).unwrap().is_pass());
        let wrong = check_collection(&objs(&["O(1)", "O"], Space::LGr), &ctx).unwrap();
        match wrong.verdict {
            Verdict::Fail { witness } => {
                assert_eq!(witness.degree, 0);
                assert_eq!(witness.dim, Dim::from(5u64));
            }
            v => panic!("{v}"),
        }
    }

    #[test]
    fn tilting_on_y() {
        let ctx = ExtContext::default();
        for k in -1..=0 {
            let t = objs(&["O", "O(-1)", "O(-2)", &format!("S({k})")], Space::Y);
            assert!(check_tilting(&t, &ctx).unwrap().is_pass(), "k = {k}");
        }
        // H^1(Y, S(-2)) contains H^1(LGr, Sym^2 S) = H^1(Omega) = C
        for k in [-2, 1] {
            let t = objs(&["O", "O(-1)", "O(-2)", &format!("S({k})")], Space::Y);
            match check_tilting(&t, &ctx).unwrap().verdict {
                Verdict::Fail { witness } => {
                    assert_eq!((witness.degree, witness.dim), (1, Dim::from(1u64)))
                }
                v => panic!("k = {k}: {v}"),
            }
        }
        let bad = objs(&["O", "O(-3)"], Space::Y);
        assert!(matches!(check_tilting(&bad, &ctx).unwrap().verdict, Verdict::Fail { .. }));
    }

    #[test]
    fn tilting_with_sigma() {
        let ctx = ExtContext::default();
        let l = |k| Object::Bundle(BundleClass::line(Space::YPrime, k));
        let t = vec![l(0), l(-1), l(-2), sigma(-2)];
        assert!(check_tilting(&t, &ctx).unwrap().is_pass());
    }

    #[test]
    fn exceptional_single() {
        let ctx = ExtContext::default();
        assert!(check_exceptional(&objs(&["S(-2)"], Space::LGr)[0], &ctx).unwrap().is_pass());
        let two = objs(&["O + O"], Space::LGr);
        assert!(matches!(check_exceptional(&two[0], &ctx).unwrap().verdict, Verdict::Fail { .. }));
    }
}
