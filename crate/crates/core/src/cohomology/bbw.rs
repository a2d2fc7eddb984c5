use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::bundles::{BundleClass, Space};
use crate::error::{Error, Result};
use crate::weyl::{dual_weight, tilde_dominantize, weyl_dim, Dominantization, Weight};

/// One irreducible summand of a cohomology group. `dominant` is the weight
/// reached by the dot action; the group itself is the dual representation
/// with highest weight `representation`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CohomologyEntry {
    pub dominant: Vec<i64>,
    pub representation: Vec<i64>,
    pub multiplicity: u64,
    #[serde(serialize_with = "crate::decimal::int")]
    pub dim: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub space: Space,
    pub entries: BTreeMap<usize, Vec<CohomologyEntry>>,
    #[serde(serialize_with = "crate::decimal::map")]
    pub dims: BTreeMap<usize, BigInt>,
}

impl CohomologyTable {
    pub fn empty(space: Space) -> Self {
        CohomologyTable { space, entries: BTreeMap::new(), dims: BTreeMap::new() }
    }

    pub fn dim(&self, degree: usize) -> BigInt {
        self.dims.get(&degree).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn euler(&self) -> BigInt {
        self.dims.iter().map(|(i, d)| if i % 2 == 0 { d.clone() } else { -d.clone() }).sum()
    }

    /// Nonzero degrees.
    pub fn support(&self) -> Vec<usize> {
        self.dims.keys().copied().collect()
    }

    /// Adds `multiplicity` copies of the cohomology of one irreducible weight.
    pub fn absorb(&mut self, ambient: &Weight, multiplicity: u64) {
        if let Dominantization::Regular { dominant, length } = tilde_dominantize(ambient) {
            let rep = dual_weight(&dominant).expect("dominant");
            let dim = weyl_dim(&rep).expect("dominant");
            let degree = length as usize;
            let list = self.entries.entry(degree).or_default();
            match list.iter_mut().find(|e| e.representation == rep.coords) {
                Some(e) => e.multiplicity += multiplicity,
                None => {
                    list.push(CohomologyEntry {
                        dominant: dominant.coords.clone(),
                        representation: rep.coords.clone(),
                        multiplicity,
                        dim: dim.clone(),
                    });
                    list.sort();
                }
            }
            *self.dims.entry(degree).or_insert_with(BigInt::zero) += dim * BigInt::from(multiplicity);
        }
    }

    pub fn merge(&mut self, other: &CohomologyTable) {
        for (degree, list) in &other.entries {
            for e in list {
                let mine = self.entries.entry(*degree).or_default();
                match mine.iter_mut().find(|x| x.representation == e.representation) {
                    Some(x) => x.multiplicity += e.multiplicity,
                    None => {
                        mine.push(e.clone());
                        mine.sort();
                    }
                }
            }
        }
        for (degree, d) in &other.dims {
            *self.dims.entry(*degree).or_insert_with(BigInt::zero) += d;
        }
    }
}

/// Cohomology of a homogeneous bundle on a compact registered space.
pub fn bbw_cohomology(e: &BundleClass) -> Result<CohomologyTable> {
    if e.space.is_total() {
        return Err(Error::TotalSpace(e.space));
    }
    let mut table = CohomologyTable::empty(e.space);
    for (irr, m) in e.irreducibles() {
        table.absorb(&irr.ambient_weight(), m);
    }
    Ok(table)
}

pub fn euler_characteristic(e: &BundleClass) -> Result<BigInt> {
    Ok(bbw_cohomology(e)?.euler())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gr24_examples() {
        let t = bbw_cohomology(&BundleClass::line(Space::Gr24, -4)).unwrap();
        assert_eq!(t.support(), vec![4]);
        assert_eq!(t.dim(4), 1.into());
        assert_eq!(t.entries[&4][0].representation, vec![2, 2, 2, 2]);
        assert!(bbw_cohomology(&BundleClass::line(Space::Gr24, -3)).unwrap().is_zero());
        assert_eq!(bbw_cohomology(&BundleClass::line(Space::Gr24, 1)).unwrap().dim(0), 6.into());
    }

    #[test]
    fn lgr_examples() {
        let t = bbw_cohomology(&BundleClass::line(Space::LGr, -3)).unwrap();
        assert_eq!(t.support(), vec![3]);
        assert_eq!(t.dim(3), 1.into());
        assert_eq!(bbw_cohomology(&BundleClass::line(Space::LGr, 1)).unwrap().dim(0), 5.into());
        let s_dual = BundleClass::irreducible(Space::LGr, vec![1, 0]);
        assert_eq!(bbw_cohomology(&s_dual).unwrap().dim(0), 4.into());
        let s = BundleClass::irreducible(Space::LGr, vec![0, -1]);
        assert!(bbw_cohomology(&s).unwrap().is_zero());
    }

    #[test]
    fn projective_spaces() {
        assert_eq!(bbw_cohomology(&BundleClass::line(Space::Proj(3), 1)).unwrap().dim(0), 4.into());
        assert_eq!(bbw_cohomology(&BundleClass::line(Space::Proj(3), -4)).unwrap().dim(3), 1.into());
        assert_eq!(bbw_cohomology(&BundleClass::line(Space::PSp, 1)).unwrap().dim(0), 4.into());
        assert_eq!(bbw_cohomology(&BundleClass::line(Space::PSp, -4)).unwrap().dim(3), 1.into());
        let n = BundleClass::irreducible(Space::PSp, vec![-2, 1]);
        assert!(bbw_cohomology(&n).unwrap().is_zero());
    }

    #[test]
    fn total_space_rejected() {
        assert!(bbw_cohomology(&BundleClass::line(Space::Y, 0)).is_err());
    }
}
