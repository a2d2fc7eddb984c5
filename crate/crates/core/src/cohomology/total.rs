//! Cohomology on the total spaces via `pi_* E = (+)_l E (x) Sym^l(N^*)`, and
//! the punctured pushforward `R^1 j_*` along the complement of the zero section.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::bbw::{bbw_cohomology, CohomologyTable};
use super::family::{affine_family_cohomology, AffineWeightFamily, FamilyCohomology};
use crate::bundles::levi::BlockKind;
use crate::bundles::{BundleClass, Object, Space};
use crate::error::{Error, Result};
use crate::weyl::{weyl_dim, Weight};

/// Dimension of a graded piece of cohomology, possibly infinite.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dim {
    Finite(BigInt),
    Infinite,
}

impl Dim {
    pub fn zero() -> Self {
        Dim::Finite(BigInt::zero())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Dim::Finite(d) if d.is_zero())
    }

    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Dim::Finite(d) => Some(d),
            Dim::Infinite => None,
        }
    }

    pub fn add(&self, other: &Dim) -> Dim {
        match (self, other) {
            (Dim::Finite(a), Dim::Finite(b)) => Dim::Finite(a + b),
            _ => Dim::Infinite,
        }
    }

    pub fn min(&self, other: &Dim) -> Dim {
        match (self, other) {
            (Dim::Infinite, x) | (x, Dim::Infinite) => x.clone(),
            (Dim::Finite(a), Dim::Finite(b)) => Dim::Finite(a.min(b).clone()),
        }
    }

    /// Saturating difference; infinite minus finite stays infinite.
    pub fn sub(&self, other: &Dim) -> Dim {
        match (self, other) {
            (Dim::Finite(a), Dim::Finite(b)) => Dim::Finite(if a > b { a - b } else { BigInt::zero() }),
            (Dim::Infinite, Dim::Finite(_)) => Dim::Infinite,
            (_, Dim::Infinite) => Dim::zero(),
        }
    }
}

impl From<BigInt> for Dim {
    fn from(d: BigInt) -> Self {
        Dim::Finite(d)
    }
}

impl From<u64> for Dim {
    fn from(d: u64) -> Self {
        Dim::Finite(d.into())
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(d) => write!(f, "{d}"),
            Dim::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Dim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One family of summands of the pushforward: the l-th summand of
/// `source (x) Sym^l(U)` contributes `family` at parameter `l - offset`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummandFamily {
    pub source: Vec<i64>,
    pub multiplicity: u64,
    pub offset: u64,
    pub cohomology: FamilyCohomology,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedCohomology {
    pub space: Space,
    pub families: Vec<SummandFamily>,
    pub stable_from: u64,
}

impl GradedCohomology {
    /// Cohomology of the fiber-degree-l summand on the base.
    pub fn at(&self, l: u64) -> CohomologyTable {
        let base = self.space.compact();
        let mut table = CohomologyTable::empty(base);
        for f in &self.families {
            if l < f.offset {
                continue;
            }
            let w = f.cohomology.family.at(l - f.offset);
            table.absorb(&w, f.multiplicity);
        }
        table
    }

    /// Exceptional fiber degrees below `stable_from` with nonzero cohomology.
    pub fn exceptional(&self) -> BTreeMap<u64, CohomologyTable> {
        (0..self.stable_from).map(|l| (l, self.at(l))).filter(|(_, t)| !t.is_zero()).collect()
    }

    /// H^i on the total space, i = 0..=dim.
    pub fn dims(&self) -> BTreeMap<usize, Dim> {
        let mut out: BTreeMap<usize, Dim> = (0..=self.space.dimension()).map(|i| (i, Dim::zero())).collect();
        for f in &self.families {
            let c = &f.cohomology;
            for t in &c.exceptional {
                let d = Dim::Finite(&t.dim * BigInt::from(f.multiplicity));
                let e = out.get_mut(&(t.degree as usize)).unwrap();
                *e = e.add(&d);
            }
            if let super::family::StablePattern::Regular { degree, .. } = c.stable {
                out.insert(degree as usize, Dim::Infinite);
            }
        }
        out
    }

    pub fn dim(&self, degree: usize) -> Dim {
        self.dims().get(&degree).cloned().unwrap_or_else(Dim::zero)
    }

    /// True when every fiber degree is free of cohomology in degrees >= 1.
    pub fn higher_vanish(&self) -> bool {
        self.dims().iter().all(|(i, d)| *i == 0 || d.is_zero())
    }

    /// Dimensions of the graded pieces of H^degree for fiber degrees 0..=cutoff.
    pub fn hilbert(&self, degree: usize, cutoff: u64) -> Vec<BigInt> {
        (0..=cutoff).map(|l| self.at(l).dim(degree)).collect()
    }

    pub fn verify_stable(&self, count: u64) -> bool {
        self.families.iter().all(|f| f.cohomology.verify_stable(count))
    }
}

/// First fiber degree, weight at that degree and per-degree step of one family.
type RawFamily = (u64, Vec<i64>, Vec<i64>);

/// Families for `term (x) Sym^l(U)` where U is a line bundle or a rank two
/// (standard) x (line) irreducible with weight `u`.
fn tensor_sym_families(space: Space, term: &[i64], u: &[i64]) -> Result<Vec<RawFamily>> {
    let blocks = space.levi_blocks();
    let mut std_block = None;
    for b in &blocks {
        let part = b.slice(u);
        if !b.is_character(part) {
            let ok = match b.kind {
                BlockKind::GL(2) => part[0] - part[1] == 1,
                BlockKind::Sp2 => part[0] == 1,
                _ => false,
            };
            if !ok || std_block.is_some() {
                return Err(Error::UnsupportedPlethysm(format!("Sym^l of weight {u:?} on {space}")));
            }
            std_block = Some(*b);
        }
    }
    let Some(sb) = std_block else {
        // line bundle: a single family
        return Ok(vec![(0, term.to_vec(), u.to_vec())]);
    };
    let mut out = Vec::new();
    let e = sb.slice(term);
    let k = match sb.kind {
        BlockKind::GL(_) => e[0] - e[1],
        _ => e[0],
    };
    for i in 0..=k {
        // Clebsch-Gordan piece i, present once l >= i
        let mut w0 = Vec::new();
        let mut w1 = Vec::new();
        for b in &blocks {
            let (te, ue) = (b.slice(term), b.slice(u));
            if b.start != sb.start {
                w0.extend(te.iter().copied());
                w1.extend(ue.iter().copied());
                continue;
            }
            match b.kind {
                BlockKind::GL(_) => {
                    // Sym^k(t) (x) Sym^l (a - 1 per unit l) = (+)_i (e1 + l a - i, e2 + l(a - 1) + i)
                    w0.extend([te[0] - i, te[1] + i]);
                    w1.extend([ue[0], ue[1]]);
                }
                _ => {
                    w0.push(te[0] - 2 * i);
                    w1.push(1);
                }
            }
        }
        // reindex l = i + t
        let shifted: Vec<i64> = w0.iter().zip(&w1).map(|(a, b)| a + i * b).collect();
        out.push((i as u64, shifted, w1));
    }
    Ok(out)
}

fn graded_from(space: Space, e: &BundleClass, u: &[i64], extra_offset: u64) -> Result<GradedCohomology> {
    let group = space.group();
    let mut families = Vec::new();
    for (w, m) in &e.terms {
        for (offset, w0, w1) in tensor_sym_families(space, w, u)? {
            let fam = AffineWeightFamily::new(group, w0, w1)?;
            let cohomology = affine_family_cohomology(&fam)?;
            families.push(SummandFamily {
                source: w.clone(),
                multiplicity: *m,
                offset: offset + extra_offset,
                cohomology,
            });
        }
    }
    let stable_from = families.iter().map(|f| f.offset + f.cohomology.stable_from).max().unwrap_or(0);
    Ok(GradedCohomology { space, families, stable_from })
}

/// Cohomology of a pulled-back homogeneous bundle on a total space.
pub fn total_space_cohomology(sp: Space, e: &BundleClass) -> Result<GradedCohomology> {
    let base = sp.base().ok_or(Error::NotTotalSpace(sp))?;
    let fiber = sp.fiber_bundle().unwrap();
    let u = fiber.dual().single().expect("irreducible fiber").levi_weight;
    let on_base = e.on(base);
    let g = graded_from(base, &on_base, &u, 0)?;
    Ok(GradedCohomology { space: sp, ..g })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PuncturedPushforward {
    pub space: Space,
    /// Graded pieces e (x) Sym^{d-2}(N) (x) det N for d = 1..=cutoff.
    pub pieces: Vec<(u64, BundleClass)>,
    /// H^0 of each piece, d = 1..=cutoff.
    #[serde(serialize_with = "crate::decimal::pairs")]
    pub sections: Vec<(u64, BigInt)>,
    /// Families in d certifying the degree-0 behaviour for every d.
    pub families: GradedCohomology,
    pub no_sections_for_all_d: bool,
}

/// `R^1 j_*` of a pulled-back object restricted to the complement of the zero
/// section: `e|_Z (x) (+)_{d>=1} Sym^{d-2}(N) (x) det N`, with e replaced by
/// its graded pieces when it is an extension.
pub fn punctured_pushforward(sp: Space, e: &Object, cutoff: u64) -> Result<PuncturedPushforward> {
    let base = sp.base().ok_or(Error::NotTotalSpace(sp))?;
    let n = sp.fiber_bundle().unwrap();
    if n.rank() != 2 {
        return Err(Error::Unsupported(format!("fiber of {sp} has rank {}", n.rank())));
    }
    let pieces =
        e.filtration().ok_or_else(|| Error::Unsupported("punctured pushforward needs a filtered object".into()))?;
    let mut graded = BundleClass::zero(base);
    for p in pieces {
        graded = graded.add(&p.on(base))?;
    }
    let twisted = graded.tensor(&n.determinant()?)?;
    let u = n.single().unwrap().levi_weight;
    // Sym^{d-2}: the family parameter is d - 2, so the pieces start at d = 2
    let families = graded_from(base, &twisted, &u, 2)?;
    let mut piece_list = Vec::new();
    let mut sections = Vec::new();
    for d in 1..=cutoff {
        let class = if d < 2 { BundleClass::zero(base) } else { twisted.tensor(&n.sym_power(d - 2)?)? };
        let h0 = bbw_cohomology(&class)?.dim(0);
        piece_list.push((d, class));
        sections.push((d, h0));
    }
    let no_sections_for_all_d = families.families.iter().all(|f| f.cohomology.vanishes_in(0));
    Ok(PuncturedPushforward { space: sp, pieces: piece_list, sections, families, no_sections_for_all_d })
}

/// Dimension of the degree-d piece of a representation, for reporting.
pub fn rep_dim(space: Space, representation: &[i64]) -> BigInt {
    weyl_dim(&Weight { group: space.group(), coords: representation.to_vec() }).expect("dominant")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn y_minus_three() {
        let g = total_space_cohomology(Space::Y, &BundleClass::line(Space::Y, -3)).unwrap();
        let dims = g.dims();
        assert_eq!(dims[&3], Dim::Finite(1.into()));
        for i in [1, 2, 4, 5] {
            assert!(dims[&i].is_zero());
        }
        assert!(g.verify_stable(20));
    }

    #[test]
    fn y_prime_minus_three() {
        let g = total_space_cohomology(Space::YPrime, &BundleClass::line(Space::YPrime, -3)).unwrap();
        let dims = g.dims();
        assert_eq!(dims[&1], Dim::Finite(1.into()));
        for i in 2..=5 {
            assert!(dims[&i].is_zero());
        }
    }

    #[test]
    fn families_match_concrete_tensor_products() {
        for (sp, w) in [(Space::Y, vec![2, -1]), (Space::YPrime, vec![-1, 3]), (Space::Cyclic(3), vec![2, 0, 0])] {
            let e = BundleClass::irreducible(sp, w);
            let g = total_space_cohomology(sp, &e).unwrap();
            let base = sp.base().unwrap();
            let ndual = sp.fiber_bundle().unwrap().dual();
            for l in 0..8 {
                let piece = e.on(base).tensor(&ndual.sym_power(l).unwrap()).unwrap();
                assert_eq!(g.at(l), bbw_cohomology(&piece).unwrap(), "{sp} l={l}");
            }
        }
    }

    #[test]
    fn punctured_sigma() {
        let p = punctured_pushforward(Space::YPrime, &crate::bundles::sigma(-1), 12).unwrap();
        assert!(p.no_sections_for_all_d);
        assert!(p.pieces[0].1.is_zero());
        assert!(p.sections.iter().all(|(_, h)| h.is_zero()));
    }
}
