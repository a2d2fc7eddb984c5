//! Restriction from Gr(2,4) to LGr(4) through `0 -> E(-1) -> E -> E|_LGr -> 0`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::bbw::bbw_cohomology;
use crate::bundles::{BundleClass, Space};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum RestrictionStatus {
    Determined,
    EulerOnly {
        #[serde(serialize_with = "crate::decimal::int")]
        euler: BigInt,
        #[serde(serialize_with = "crate::decimal::bounds")]
        bounds: BTreeMap<usize, (BigInt, BigInt)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionVerdict {
    /// Dimensions on LGr; lower bounds when not determined.
    #[serde(serialize_with = "crate::decimal::map")]
    pub dims: BTreeMap<usize, BigInt>,
    pub status: RestrictionStatus,
}

impl RestrictionVerdict {
    pub fn is_determined(&self) -> bool {
        matches!(self.status, RestrictionStatus::Determined)
    }
}

/// Cohomology of `e|_LGr` for a homogeneous bundle `e` on Gr(2,4).
pub fn restrict_lgr(e: &BundleClass) -> Result<RestrictionVerdict> {
    if e.space != Space::Gr24 {
        return Err(Error::SpaceMismatch(e.space, Space::Gr24));
    }
    let mut lo: BTreeMap<usize, BigInt> = BTreeMap::new();
    let mut hi: BTreeMap<usize, BigInt> = BTreeMap::new();
    let mut euler = BigInt::zero();
    let mut determined = true;
    for (irr, m) in e.irreducibles() {
        let one = BundleClass::irreducible(Space::Gr24, irr.levi_weight.clone());
        let a = bbw_cohomology(&one.twist(-1))?;
        let b = bbw_cohomology(&one)?;
        euler += (b.euler() - a.euler()) * BigInt::from(m);
        // each of a, b sits in at most one degree
        let da = a.support().first().copied();
        let db = b.support().first().copied();
        let mut add = |deg: usize, l: BigInt, h: BigInt| {
            *lo.entry(deg).or_insert_with(BigInt::zero) += l * BigInt::from(m);
            *hi.entry(deg).or_insert_with(BigInt::zero) += h * BigInt::from(m);
        };
        match (da, db) {
            (Some(p), Some(q)) if p == q => {
                let (x, y) = (a.dim(p), b.dim(q));
                // multiplication by the equation: injective on H^0, onto on top degree
                let rank = match p {
                    0 => Some(x.clone()),
                    4 => Some(y.clone()),
                    _ => None,
                };
                match rank {
                    Some(r) => {
                        add(p, &y - &r, &y - &r);
                        if p >= 1 {
                            add(p - 1, &x - &r, &x - &r);
                        }
                    }
                    None => {
                        determined = false;
                        let r_max = x.clone().min(y.clone());
                        add(p, &y - &r_max, y.clone());
                        add(p - 1, &x - &r_max, x.clone());
                    }
                }
            }
            _ => {
                if let Some(p) = da {
                    add(p - 1, a.dim(p), a.dim(p));
                }
                if let Some(q) = db {
                    add(q, b.dim(q), b.dim(q));
                }
            }
        }
    }
    lo.retain(|_, v| !v.is_zero());
    hi.retain(|_, v| !v.is_zero());
    let status = if determined {
        RestrictionStatus::Determined
    } else {
        let bounds = hi.iter().map(|(d, h)| (*d, (lo.get(d).cloned().unwrap_or_default(), h.clone()))).collect();
        RestrictionStatus::EulerOnly { euler, bounds }
    };
    Ok(RestrictionVerdict { dims: lo, status })
}

/// The LGr class corresponding to a Gr(2,4) class built from S and O(1).
pub fn lgr_counterpart(e: &BundleClass) -> Option<BundleClass> {
    let mut out = BundleClass::zero(Space::LGr);
    for (w, m) in &e.terms {
        if w[2] != 0 || w[3] != 0 {
            return None;
        }
        *out.terms.entry(vec![w[0], w[1]]).or_insert(0) += m;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn o_minus_three() {
        let v = restrict_lgr(&BundleClass::line(Space::Gr24, -3)).unwrap();
        assert!(v.is_determined());
        assert_eq!(v.dims, [(3, BigInt::from(1))].into_iter().collect());
    }

    #[test]
    fn structure_sheaf() {
        let v = restrict_lgr(&BundleClass::line(Space::Gr24, 0)).unwrap();
        assert!(v.is_determined());
        assert_eq!(v.dims, [(0, BigInt::from(1))].into_iter().collect());
    }

    #[test]
    fn o_one_is_determined_by_injectivity() {
        let v = restrict_lgr(&BundleClass::line(Space::Gr24, 1)).unwrap();
        assert!(v.is_determined());
        assert_eq!(v.dims, [(0, BigInt::from(5))].into_iter().collect());
    }
}
