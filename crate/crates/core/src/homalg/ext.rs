//! Ext tables between bundles and objects built from them.
//!
//! Two bundles reduce to cohomology of `a^* (x) b`. A constructed object on
//! either side is handled by the long exact sequence of its defining short
//! exact sequence. Each such sequence is written as
//! `Ext^i(unknown) = coker(f^{i+c}) + ker(f^{i+c+1})` for a family of
//! connecting or induced maps `f^j` between known tables, and the ranks of
//! the `f^j` are bounded by the facts listed in [`MapFacts`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::oracle::{composition_rank, syzygy_composition_rank, OracleMode};
use crate::bundles::{same_object, BundleClass, Construction, KClass, Object, Space};
use crate::cohomology::{bbw_cohomology, total_space_cohomology, Dim};
use crate::error::{Error, Result};

/// A closed interval of dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimRange {
    pub lo: Dim,
    pub hi: Dim,
}

impl DimRange {
    pub fn exact(d: Dim) -> Self {
        DimRange { lo: d.clone(), hi: d }
    }

    pub fn zero() -> Self {
        DimRange::exact(Dim::zero())
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_zero(&self) -> bool {
        self.hi.is_zero()
    }

    pub fn value(&self) -> Option<&Dim> {
        self.is_exact().then_some(&self.lo)
    }

    fn add(&self, other: &DimRange) -> DimRange {
        DimRange { lo: self.lo.add(&other.lo), hi: self.hi.add(&other.hi) }
    }

    fn scale(&self, m: u64) -> DimRange {
        let s = |d: &Dim| match d {
            Dim::Finite(x) => Dim::Finite(x * BigInt::from(m)),
            Dim::Infinite if m == 0 => Dim::zero(),
            Dim::Infinite => Dim::Infinite,
        };
        DimRange { lo: s(&self.lo), hi: s(&self.hi) }
    }
}

impl fmt::Display for DimRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

// Interval subtraction helpers: an infinite minus an infinite is unknown.
fn sub_lo(a: &Dim, b: &Dim) -> Dim {
    a.sub(b)
}

fn sub_hi(a: &Dim, b: &Dim) -> Dim {
    match (a, b) {
        (Dim::Infinite, Dim::Infinite) => Dim::Infinite,
        _ => a.sub(b),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ExtStatus {
    Certified,
    /// Only bounds are known; `euler` is exact on compact spaces.
    EulerOnly {
        #[serde(serialize_with = "crate::decimal::opt")]
        euler: Option<BigInt>,
        bounds: BTreeMap<usize, DimRange>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtTable {
    pub space: Space,
    pub source: String,
    pub target: String,
    pub degrees: BTreeMap<usize, DimRange>,
    #[serde(serialize_with = "crate::decimal::opt")]
    pub euler: Option<BigInt>,
    /// Map-rank facts used along the way, with where they came from.
    pub provenance: Vec<String>,
}

impl ExtTable {
    pub fn is_certified(&self) -> bool {
        self.degrees.values().all(DimRange::is_exact)
    }

    pub fn status(&self) -> ExtStatus {
        if self.is_certified() {
            ExtStatus::Certified
        } else {
            ExtStatus::EulerOnly { euler: self.euler.clone(), bounds: self.degrees.clone() }
        }
    }

    pub fn range(&self, degree: usize) -> DimRange {
        self.degrees.get(&degree).cloned().unwrap_or_else(DimRange::zero)
    }

    /// Exact dimension, if known.
    pub fn dim(&self, degree: usize) -> Option<Dim> {
        self.range(degree).value().cloned()
    }

    /// Exact nonzero degrees; meaningful when certified.
    pub fn support(&self) -> Vec<usize> {
        self.degrees.iter().filter(|(_, r)| !r.is_zero()).map(|(i, _)| *i).collect()
    }

    /// Some degree >= 1 is certainly nonzero.
    pub fn higher_witness(&self) -> Option<(usize, Dim)> {
        self.degrees.iter().find(|(i, r)| **i >= 1 && !r.lo.is_zero()).map(|(i, r)| (*i, r.lo.clone()))
    }

    /// Every degree >= 1 is certainly zero.
    pub fn higher_vanish(&self) -> bool {
        self.degrees.iter().all(|(i, r)| *i == 0 || r.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.values().all(DimRange::is_zero)
    }

    /// Finite exact dims as (degree, dim) pairs for the nonzero degrees.
    pub fn exact_dims(&self) -> Option<BTreeMap<usize, Dim>> {
        if !self.is_certified() {
            return None;
        }
        Some(self.degrees.iter().filter(|(_, r)| !r.is_zero()).map(|(i, r)| (*i, r.lo.clone())).collect())
    }

    /// Shifts every degree up by `shift`.
    pub fn shifted(mut self, shift: usize) -> ExtTable {
        self.degrees = self.degrees.into_iter().map(|(i, r)| (i + shift, r)).collect();
        if shift % 2 == 1 {
            self.euler = self.euler.map(|e| -e);
        }
        self
    }
}

impl fmt::Display for ExtTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .degrees
            .iter()
            .filter(|(_, r)| !r.is_zero() || !r.is_exact())
            .map(|(i, r)| format!("Ext^{i} = {r}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtContext {
    pub oracle: OracleMode,
}

impl Default for ExtContext {
    fn default() -> Self {
        ExtContext { oracle: OracleMode::Quadric }
    }
}

/// What is known about one map `f^j: src -> dst` of a long exact sequence.
#[derive(Debug, Clone, Default)]
struct MapFacts {
    injective: bool,
    surjective: bool,
    nonzero: bool,
    rank: Option<BigInt>,
}

fn kernel_and_cokernel(src: &DimRange, dst: &DimRange, facts: &MapFacts) -> (DimRange, DimRange) {
    if src.is_zero() || dst.is_zero() {
        return (src.clone(), dst.clone());
    }
    if let Some(r) = &facts.rank {
        let r = Dim::Finite(r.clone());
        let ker = DimRange { lo: sub_lo(&src.lo, &r), hi: sub_hi(&src.hi, &r) };
        let coker = DimRange { lo: sub_lo(&dst.lo, &r), hi: sub_hi(&dst.hi, &r) };
        return (ker, coker);
    }
    let rank_hi = Dim::min(&src.hi, &dst.hi);
    let mut rank_lo = if facts.nonzero { Dim::Finite(BigInt::one()) } else { Dim::zero() };
    if facts.injective {
        rank_lo = rank_lo.max(src.lo.clone());
    }
    if facts.surjective {
        rank_lo = rank_lo.max(dst.lo.clone());
    }
    let ker = if facts.injective {
        DimRange::zero()
    } else {
        DimRange { lo: sub_lo(&src.lo, &rank_hi), hi: sub_hi(&src.hi, &rank_lo) }
    };
    let coker = if facts.surjective {
        DimRange::zero()
    } else {
        DimRange { lo: sub_lo(&dst.lo, &rank_hi), hi: sub_hi(&dst.hi, &rank_lo) }
    };
    (ker, coker)
}

struct Les {
    top: usize,
    offset: i64,
    src: BTreeMap<i64, DimRange>,
    dst: BTreeMap<i64, DimRange>,
    facts: BTreeMap<i64, MapFacts>,
}

impl Les {
    fn new(top: usize, offset: i64) -> Self {
        let mut facts: BTreeMap<i64, MapFacts> = BTreeMap::new();
        // the unknown vanishes in degree -1 and in degree top + 1
        facts.entry(offset).or_default().injective = true;
        facts.entry(top as i64 + 1 + offset).or_default().surjective = true;
        Les { top, offset, src: BTreeMap::new(), dst: BTreeMap::new(), facts }
    }

    fn fact(&mut self, j: i64) -> &mut MapFacts {
        self.facts.entry(j).or_default()
    }

    fn solve(&self) -> BTreeMap<usize, DimRange> {
        let get = |m: &BTreeMap<i64, DimRange>, j: i64| m.get(&j).cloned().unwrap_or_else(DimRange::zero);
        let mut parts: BTreeMap<i64, (DimRange, DimRange)> = BTreeMap::new();
        for j in self.offset..=self.top as i64 + 1 + self.offset {
            let facts = self.facts.get(&j).cloned().unwrap_or_default();
            parts.insert(j, kernel_and_cokernel(&get(&self.src, j), &get(&self.dst, j), &facts));
        }
        (0..=self.top)
            .map(|i| {
                let j = i as i64 + self.offset;
                (i, parts[&j].1.add(&parts[&(j + 1)].0))
            })
            .collect()
    }
}

/// Euler pairing `sum (-1)^i dim Ext^i(a, b)` of two K-classes on a compact space.
pub fn euler_pairing(a: &KClass, b: &KClass) -> Result<BigInt> {
    if a.space != b.space {
        return Err(Error::SpaceMismatch(a.space, b.space));
    }
    if a.space.is_total() {
        return Err(Error::TotalSpace(a.space));
    }
    let mut total = BigInt::zero();
    for (wa, ca) in &a.terms {
        let dual = BundleClass::irreducible(a.space, wa.clone()).dual();
        for (wb, cb) in &b.terms {
            let t = dual.tensor(&BundleClass::irreducible(b.space, wb.clone()))?;
            total += bbw_cohomology(&t)?.euler() * BigInt::from(ca * cb);
        }
    }
    Ok(total)
}

fn bundle_ext(a: &BundleClass, b: &BundleClass) -> Result<BTreeMap<usize, DimRange>> {
    if a.space != b.space {
        return Err(Error::SpaceMismatch(a.space, b.space));
    }
    let hom = a.dual().tensor(b)?;
    let top = a.space.dimension();
    if a.space.is_total() {
        let g = total_space_cohomology(a.space, &hom)?;
        Ok(g.dims().into_iter().map(|(i, d)| (i, DimRange::exact(d))).collect())
    } else {
        let t = bbw_cohomology(&hom)?;
        Ok((0..=top).map(|i| (i, DimRange::exact(Dim::Finite(t.dim(i))))).collect())
    }
}

fn h0(a: &BundleClass, b: &BundleClass) -> Option<BigInt> {
    if a.space.is_total() {
        return None;
    }
    Some(bbw_cohomology(&a.dual().tensor(b).ok()?).ok()?.dim(0))
}

fn intersect(a: &BTreeMap<usize, DimRange>, b: &BTreeMap<usize, DimRange>) -> BTreeMap<usize, DimRange> {
    let keys: std::collections::BTreeSet<usize> = a.keys().chain(b.keys()).copied().collect();
    keys.into_iter()
        .map(|i| {
            let (x, y) =
                (a.get(&i).cloned().unwrap_or_else(DimRange::zero), b.get(&i).cloned().unwrap_or_else(DimRange::zero));
            (i, DimRange { lo: x.lo.max(y.lo), hi: Dim::min(&x.hi, &y.hi) })
        })
        .collect()
}

struct Solver<'a> {
    ctx: &'a ExtContext,
    provenance: Vec<String>,
}

impl Solver<'_> {
    fn ext(&mut self, a: &Object, b: &Object) -> Result<BTreeMap<usize, DimRange>> {
        if a.space() != b.space() {
            return Err(Error::SpaceMismatch(a.space(), b.space()));
        }
        match (a, b) {
            (Object::Bundle(x), Object::Bundle(y)) => bundle_ext(x, y),
            (Object::Derived(ea), Object::Derived(eb)) => {
                // both resolutions give valid bounds
                let by_target = self.covariant(a, &eb.construction)?;
                if by_target.values().all(|r| r.is_exact()) {
                    return Ok(by_target);
                }
                let by_source = self.contravariant(&ea.construction, b)?;
                Ok(intersect(&by_target, &by_source))
            }
            (_, Object::Derived(e)) => self.covariant(a, &e.construction),
            (Object::Derived(e), _) => self.contravariant(&e.construction, b),
        }
    }

    fn covariant(&mut self, x: &Object, c: &Construction) -> Result<BTreeMap<usize, DimRange>> {
        let top = x.space().dimension();
        let les = match c {
            Construction::Extension { sub, quotient, generator } => {
                // Ext^j(X, quotient) -> Ext^{j+1}(X, sub)
                let mut les = Les::new(top, -1);
                let (r, p) = (self.ext(x, quotient)?, self.ext(x, sub)?);
                for (j, v) in r {
                    les.src.insert(j as i64, v);
                }
                for (j, v) in p {
                    les.dst.insert(j as i64 - 1, v);
                }
                if *generator && same_object(x, quotient) {
                    les.fact(0).nonzero = true;
                    self.provenance.push(format!("the class of {x} -> Ext^1({x}, {sub}) is the extension class"));
                }
                les
            }
            Construction::Kernel { unit, copies, target } => {
                // Ext^j(X, unit)^m -> Ext^j(X, target)
                let mut les = Les::new(top, -1);
                let unit_obj = Object::Bundle(unit.clone());
                for (j, v) in self.ext(x, &unit_obj)? {
                    les.src.insert(j as i64, v.scale(*copies));
                }
                for (j, v) in self.ext(x, target)? {
                    les.dst.insert(j as i64, v);
                }
                if let (Object::Bundle(xb), Object::Bundle(tb)) = (x, target.as_ref()) {
                    if h0(unit, tb) == Some(BigInt::from(*copies)) {
                        if let Some(fact) = composition_rank(xb, unit, tb, self.ctx.oracle) {
                            self.provenance.push(format!(
                                "rank of Hom({xb}, {unit}) x Hom({unit}, {tb}) -> Hom({xb}, {tb}) is {} ({})",
                                fact.rank, fact.source
                            ));
                            les.fact(0).rank = Some(fact.rank);
                        }
                    }
                }
                les
            }
            Construction::Cokernel { source, unit, copies } => {
                // Ext^j(X, source) -> Ext^j(X, unit)^m
                let mut les = Les::new(top, 0);
                let unit_obj = Object::Bundle(unit.clone());
                for (j, v) in self.ext(x, source)? {
                    les.src.insert(j as i64, v);
                }
                for (j, v) in self.ext(x, &unit_obj)? {
                    les.dst.insert(j as i64, v.scale(*copies));
                }
                if same_object(x, source) {
                    les.fact(0).nonzero = true;
                    self.provenance.push(format!("the identity of {x} maps to the coevaluation"));
                }
                les
            }
        };
        Ok(les.solve())
    }

    fn contravariant(&mut self, c: &Construction, x: &Object) -> Result<BTreeMap<usize, DimRange>> {
        let top = x.space().dimension();
        let les = match c {
            Construction::Extension { sub, quotient, generator } => {
                // Ext^j(sub, X) -> Ext^{j+1}(quotient, X)
                let mut les = Les::new(top, -1);
                let (p, r) = (self.ext(sub, x)?, self.ext(quotient, x)?);
                for (j, v) in p {
                    les.src.insert(j as i64, v);
                }
                for (j, v) in r {
                    les.dst.insert(j as i64 - 1, v);
                }
                if *generator && same_object(x, sub) {
                    les.fact(0).nonzero = true;
                    self.provenance
                        .push(format!("the class of {sub} -> Ext^1({quotient}, {x}) is the extension class"));
                }
                les
            }
            Construction::Kernel { unit, copies, target } => {
                // Ext^j(target, X) -> Ext^j(unit, X)^m
                let mut les = Les::new(top, 0);
                let unit_obj = Object::Bundle(unit.clone());
                for (j, v) in self.ext(target, x)? {
                    les.src.insert(j as i64, v);
                }
                for (j, v) in self.ext(&unit_obj, x)? {
                    les.dst.insert(j as i64, v.scale(*copies));
                }
                if same_object(x, target) {
                    les.fact(0).nonzero = true;
                    self.provenance.push(format!("the identity of {x} maps to the evaluation"));
                }
                les
            }
            Construction::Cokernel { source, unit, copies } => {
                // Ext^j(unit, X)^m -> Ext^j(source, X)
                let mut les = Les::new(top, -1);
                let unit_obj = Object::Bundle(unit.clone());
                for (j, v) in self.ext(&unit_obj, x)? {
                    les.src.insert(j as i64, v.scale(*copies));
                }
                for (j, v) in self.ext(source, x)? {
                    les.dst.insert(j as i64, v);
                }
                if let (Object::Bundle(ab), Object::Bundle(xb)) = (source.as_ref(), x) {
                    if h0(ab, unit) == Some(BigInt::from(*copies)) {
                        if let Some(fact) = composition_rank(ab, unit, xb, self.ctx.oracle) {
                            self.provenance.push(format!(
                                "rank of Hom({ab}, {unit}) x Hom({unit}, {xb}) -> Hom({ab}, {xb}) is {} ({})",
                                fact.rank, fact.source
                            ));
                            les.fact(0).rank = Some(fact.rank);
                        }
                    }
                } else if let Object::Bundle(xb) = x {
                    if let Some(fact) = syzygy_composition_rank(source, unit, xb, *copies, self.ctx.oracle) {
                        self.provenance.push(format!(
                            "rank of Hom({source}, {unit}) x Hom({unit}, {xb}) -> Hom({source}, {xb}) is {} ({})",
                            fact.rank, fact.source
                        ));
                        les.fact(0).rank = Some(fact.rank);
                    }
                }
                les
            }
        };
        Ok(les.solve())
    }
}

/// Ext table between two objects on one space.
pub fn ext_table(a: &Object, b: &Object, ctx: &ExtContext) -> Result<ExtTable> {
    let mut solver = Solver { ctx, provenance: Vec::new() };
    let degrees = solver.ext(a, b)?;
    let space = a.space();
    let euler = if space.is_total() { None } else { Some(euler_pairing(&a.kclass(), &b.kclass())?) };
    let mut provenance = solver.provenance;
    provenance.dedup();
    Ok(ExtTable { space, source: a.to_string(), target: b.to_string(), degrees, euler, provenance })
}

/// `Ext(iota_* f, e)` for a bundle `f` on the zero section of a total space,
/// by `iota^! e = e|_Z (x) det N [-c]` with c the rank of N.
pub fn ext_zero_section(f: &BundleClass, e: &Object, ctx: &ExtContext) -> Result<ExtTable> {
    let sp = e.space();
    let base = sp.base().ok_or(Error::NotTotalSpace(sp))?;
    if f.space != base {
        return Err(Error::SpaceMismatch(f.space, base));
    }
    let n = sp.fiber_bundle().unwrap();
    let c = n.rank() as usize;
    if c > 2 {
        return Err(Error::Unsupported(format!("normal bundle of rank {c}")));
    }
    let twisted = f.tensor(&n.determinant()?.dual())?;
    let restricted = e.restrict_to_base()?;
    let mut table = ext_table(&Object::Bundle(twisted), &restricted, ctx)?.shifted(c);
    table.space = sp;
    table.source = format!("iota_*({f})");
    table.target = e.to_string();
    Ok(table)
}

/// Coordinates of a K-class against a full exceptional collection: the
/// vector of Euler pairings with each member. Two classes with equal vectors
/// agree in K-theory.
pub fn kclass_coordinates(k: &KClass) -> Result<Vec<BigInt>> {
    let base = k.space.compact();
    let mut on_base = KClass::zero(base);
    on_base.add_scaled(&KClass { space: base, terms: k.terms.clone() }, 1);
    full_collection(base).iter().map(|e| euler_pairing(&e.kclass(), &on_base)).collect()
}

pub fn kclass_equal(a: &KClass, b: &KClass) -> Result<bool> {
    if a.space != b.space {
        return Err(Error::SpaceMismatch(a.space, b.space));
    }
    Ok(kclass_coordinates(a)? == kclass_coordinates(b)?)
}

/// A full exceptional collection on each compact space.
pub fn full_collection(space: Space) -> Vec<BundleClass> {
    match space {
        Space::LGr => vec![
            BundleClass::line(space, 0),
            BundleClass::irreducible(space, vec![1, 0]),
            BundleClass::line(space, 1),
            BundleClass::line(space, 2),
        ],
        Space::Proj(m) => (0..=m as i64).map(|k| BundleClass::line(space, k)).collect(),
        Space::PSp => (0..=3).map(|k| BundleClass::line(space, k)).collect(),
        Space::Gr24 => {
            // Sigma^a S^* for partitions a inside a 2 x 2 box
            [[0, 0], [1, 0], [2, 0], [1, 1], [2, 1], [2, 2]]
                .iter()
                .map(|a| BundleClass::irreducible(space, vec![a[0], a[1], 0, 0]))
                .collect()
        }
        other => full_collection(other.compact()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundles::{omega_p4, parse_on, sigma};

    fn obj(text: &str, sp: Space) -> Object {
        parse_on(text, sp).unwrap().into_object().unwrap()
    }

    fn dims(t: &ExtTable) -> Vec<(usize, Dim)> {
        t.exact_dims().unwrap().into_iter().collect()
    }

    #[test]
    fn homs_on_lgr() {
        let ctx = ExtContext::default();
        let t = ext_table(&obj("O(-3)", Space::LGr), &obj("S(-2)", Space::LGr), &ctx).unwrap();
        assert_eq!(dims(&t), vec![(0, Dim::from(4u64))]);
        let t = ext_table(&obj("O(-1)", Space::LGr), &obj("O", Space::LGr), &ctx).unwrap();
        assert_eq!(dims(&t), vec![(0, Dim::from(5u64))]);
    }

    #[test]
    fn cotangent_needs_the_oracle() {
        let omega = omega_p4(Space::LGr, 0).unwrap();
        let x = obj("O(-2)", Space::LGr);
        let with = ext_table(&x, &omega, &ExtContext { oracle: OracleMode::Quadric }).unwrap();
        assert_eq!(dims(&with), vec![(0, Dim::from(11u64))]);
        assert!(!with.provenance.is_empty());
        let without = ext_table(&x, &omega, &ExtContext { oracle: OracleMode::None }).unwrap();
        assert!(!without.is_certified());
        assert_eq!(without.euler, Some(BigInt::from(11)));
        assert_eq!(without.range(0), DimRange { lo: Dim::from(11u64), hi: Dim::from(25u64) });
    }

    #[test]
    fn sigma_is_rigid_and_pairs_with_lines() {
        let ctx = ExtContext::default();
        let s = sigma(-1);
        let t = ext_table(&s, &s, &ctx).unwrap();
        assert!(t.is_certified());
        assert!(t.higher_vanish());
        for k in [0, -1, -2] {
            let l = Object::Bundle(BundleClass::line(Space::YPrime, k));
            assert!(ext_table(&l, &s, &ctx).unwrap().higher_vanish());
            assert!(ext_table(&s, &l, &ctx).unwrap().higher_vanish());
        }
    }

    #[test]
    fn split_sequence_would_not_be_rigid() {
        // without the generator fact Ext^1(Sigma, Sigma) is not forced to vanish
        let s = sigma(0);
        let Object::Derived(e) = &s else { unreachable!() };
        let Construction::Extension { sub, quotient, .. } = &e.construction else { unreachable!() };
        let split = Object::from(
            crate::bundles::ExtensionObject::extension(sub.as_ref().clone(), quotient.as_ref().clone(), false, "split")
                .unwrap(),
        );
        let t = ext_table(&split, &split, &ExtContext::default()).unwrap();
        assert!(!t.higher_vanish());
    }

    #[test]
    fn zero_section_exts() {
        let ctx = ExtContext::default();
        let t = ext_zero_section(&BundleClass::line(Space::PSp, -3), &sigma(-1), &ctx).unwrap();
        assert_eq!(dims(&t), vec![(2, Dim::from(1u64))]);
        let t = ext_zero_section(&BundleClass::line(Space::LGr, -1), &obj("O(-1)", Space::Y), &ctx).unwrap();
        assert_eq!(dims(&t), vec![(5, Dim::from(1u64))]);
        for n in 2..=6u32 {
            let sp = Space::Cyclic(n);
            for k in 1..n as i64 {
                let f = BundleClass::line(Space::Proj(n - 1), -k);
                let e = obj(&format!("L^{}", k - n as i64), sp);
                assert_eq!(dims(&ext_zero_section(&f, &e, &ctx).unwrap()), vec![(1, Dim::from(1u64))]);
            }
        }
    }

    #[test]
    fn certified_tables_match_euler_pairing() {
        let ctx = ExtContext::default();
        let omega = omega_p4(Space::LGr, 0).unwrap();
        for text in ["O(-2)", "O(-1)", "S(-1)", "O"] {
            let x = obj(text, Space::LGr);
            for (a, b) in [(&x, &omega), (&omega, &x)] {
                let t = ext_table(a, b, &ctx).unwrap();
                if t.is_certified() {
                    let chi: BigInt = t
                        .exact_dims()
                        .unwrap()
                        .iter()
                        .map(
                            |(i, d)| {
                                if i % 2 == 0 {
                                    d.finite().unwrap().clone()
                                } else {
                                    -d.finite().unwrap().clone()
                                }
                            },
                        )
                        .sum();
                    assert_eq!(Some(chi), t.euler, "{a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn kclass_comparison() {
        // 0 -> S -> O^4 -> S(1) -> 0 on LGr
        let s = BundleClass::irreducible(Space::LGr, vec![0, -1]);
        let mut k = BundleClass::trivial(Space::LGr).scale(4).kclass();
        k.add_scaled(&s.kclass(), -1);
        let s1 = BundleClass::irreducible(Space::LGr, vec![1, 0]).kclass();
        assert!(kclass_equal(&k, &s1).unwrap());
        assert!(!kclass_equal(&k, &BundleClass::line(Space::LGr, 1).kclass()).unwrap());
    }
}
