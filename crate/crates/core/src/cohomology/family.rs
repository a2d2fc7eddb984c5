//! One-parameter families `w0 + l*w1` of weights, l >= 0, and their BBW
//! behaviour for all l at once.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::weyl::{dual_weight, tilde_dominantize, weyl_dim, Dominantization, GroupTag, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineWeightFamily {
    pub group: GroupTag,
    pub w0: Vec<i64>,
    pub w1: Vec<i64>,
}

impl AffineWeightFamily {
    pub fn new(group: GroupTag, w0: Vec<i64>, w1: Vec<i64>) -> Result<Self> {
        for w in [&w0, &w1] {
            if w.len() != group.rank() {
                return Err(Error::WrongRank { expected: group.rank(), got: w.len() });
            }
        }
        Ok(AffineWeightFamily { group, w0, w1 })
    }

    pub fn at(&self, l: u64) -> Weight {
        let l = l as i64;
        Weight { group: self.group, coords: self.w0.iter().zip(&self.w1).map(|(a, b)| a + l * b).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum StablePattern {
    Singular,
    /// For l >= stable_from the term contributes in `degree` the
    /// representation with highest weight `representation_at_start + (l - stable_from) * slope`.
    Regular {
        degree: u32,
        representation_at_start: Vec<i64>,
        slope: Vec<i64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalTerm {
    pub l: u64,
    pub degree: u32,
    pub representation: Vec<i64>,
    #[serde(serialize_with = "crate::decimal::int")]
    pub dim: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyCohomology {
    pub family: AffineWeightFamily,
    pub stable_from: u64,
    /// Regular terms with l < stable_from; the others are singular.
    pub exceptional: Vec<ExceptionalTerm>,
    pub stable: StablePattern,
    /// Constant family whose weight is singular.
    pub degenerate: bool,
}

impl FamilyCohomology {
    /// Contribution of the l-th term: (degree, representation), if regular.
    pub fn term(&self, l: u64) -> Option<(u32, Vec<i64>)> {
        if l < self.stable_from {
            return self.exceptional.iter().find(|t| t.l == l).map(|t| (t.degree, t.representation.clone()));
        }
        match &self.stable {
            StablePattern::Singular => None,
            StablePattern::Regular { degree, representation_at_start, slope } => {
                let t = (l - self.stable_from) as i64;
                Some((*degree, representation_at_start.iter().zip(slope).map(|(a, b)| a + t * b).collect()))
            }
        }
    }

    /// Compares the stable description against direct evaluation for
    /// `count` values of l starting at `stable_from`.
    pub fn verify_stable(&self, count: u64) -> bool {
        (self.stable_from..self.stable_from + count).all(|l| direct_term(&self.family, l) == self.term(l))
    }

    /// True when no term of the family contributes in `degree`.
    pub fn vanishes_in(&self, degree: u32) -> bool {
        let stable_hit = matches!(&self.stable, StablePattern::Regular { degree: d, .. } if *d == degree);
        !stable_hit && self.exceptional.iter().all(|t| t.degree != degree)
    }
}

pub fn direct_term(family: &AffineWeightFamily, l: u64) -> Option<(u32, Vec<i64>)> {
    match tilde_dominantize(&family.at(l)) {
        Dominantization::Singular => None,
        Dominantization::Regular { dominant, length } => Some((length, dual_weight(&dominant).unwrap().coords)),
    }
}

fn pairing(x: &[i64], root: &[i64]) -> i64 {
    x.iter().zip(root).map(|(a, b)| a * b).sum()
}

pub fn affine_family_cohomology(f: &AffineWeightFamily) -> Result<FamilyCohomology> {
    let rho = f.group.rho();
    let shifted: Vec<i64> = f.w0.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut stable_from: i64 = 0;
    let mut always_singular = false;
    for root in f.group.positive_roots() {
        let a = pairing(&shifted, &root);
        let b = pairing(&f.w1, &root);
        if b == 0 {
            if a == 0 {
                always_singular = true;
            }
            continue;
        }
        // a + l*b has the sign of b and is nonzero once l > -sign(b) * a / |b|
        let bound = (-b.signum() * a).div_euclid(b.abs()) + 1;
        stable_from = stable_from.max(bound);
    }
    let constant = f.w1.iter().all(|c| *c == 0);
    if always_singular {
        return Ok(FamilyCohomology {
            family: f.clone(),
            stable_from: 0,
            exceptional: Vec::new(),
            stable: StablePattern::Singular,
            degenerate: constant,
        });
    }
    if constant {
        return Err(Error::ZeroSlope);
    }
    let stable_from = stable_from as u64;
    let mut exceptional = Vec::new();
    for l in 0..stable_from {
        if let Some((degree, representation)) = direct_term(f, l) {
            let dim = weyl_dim(&Weight { group: f.group, coords: representation.clone() })?;
            exceptional.push(ExceptionalTerm { l, degree, representation, dim });
        }
    }
    let (degree, first) = direct_term(f, stable_from).expect("regular past the stable bound");
    let (_, second) = direct_term(f, stable_from + 1).expect("regular past the stable bound");
    let slope = second.iter().zip(&first).map(|(a, b)| a - b).collect();
    Ok(FamilyCohomology {
        family: f.clone(),
        stable_from,
        exceptional,
        stable: StablePattern::Regular { degree, representation_at_start: first, slope },
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lgr_family(w0: [i64; 2], w1: [i64; 2]) -> FamilyCohomology {
        affine_family_cohomology(&AffineWeightFamily::new(GroupTag::Sp4, w0.to_vec(), w1.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn functions_on_y_twisted_by_minus_three() {
        // Sym^l S(2l - 3)
        let f = lgr_family([-3, -3], [2, 1]);
        assert!(f.verify_stable(20));
        let higher: Vec<_> = (0..40).filter_map(|l| f.term(l).map(|t| (l, t.0))).filter(|t| t.1 > 0).collect();
        assert_eq!(higher, vec![(0, 3)]);
        assert!(matches!(f.stable, StablePattern::Regular { degree: 0, .. }));
    }

    #[test]
    fn coordinate_ring() {
        // Sym^l S(2l)
        let f = lgr_family([0, 0], [2, 1]);
        assert_eq!(f.stable_from, 0);
        assert!(matches!(f.stable, StablePattern::Regular { degree: 0, .. }));
        assert!(f.verify_stable(20));
        for d in 1..=3 {
            assert!(f.vanishes_in(d));
        }
    }

    #[test]
    fn degenerate_and_zero_slope() {
        let sing = AffineWeightFamily::new(GroupTag::Sp4, vec![-2, -1], vec![0, 0]).unwrap();
        assert!(affine_family_cohomology(&sing).unwrap().degenerate);
        let reg = AffineWeightFamily::new(GroupTag::Sp4, vec![0, 0], vec![0, 0]).unwrap();
        assert_eq!(affine_family_cohomology(&reg), Err(Error::ZeroSlope));
    }
}
