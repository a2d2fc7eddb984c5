//! Weyl group combinatorics for GL(n) and Sp4.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GroupTag {
    GL(usize),
    Sp4,
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupTag::GL(n) => write!(f, "GL({n})"),
            GroupTag::Sp4 => write!(f, "Sp4"),
        }
    }
}

impl GroupTag {
    pub fn rank(self) -> usize {
        match self {
            GroupTag::GL(n) => n,
            GroupTag::Sp4 => 2,
        }
    }

    pub fn rho(self) -> Vec<i64> {
        match self {
            GroupTag::GL(n) => (0..n).rev().map(|i| i as i64).collect(),
            GroupTag::Sp4 => vec![2, 1],
        }
    }

    /// Positive roots as coefficient vectors.
    pub fn positive_roots(self) -> Vec<Vec<i64>> {
        match self {
            GroupTag::GL(n) => {
                let mut roots = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        let mut r = vec![0; n];
                        r[i] = 1;
                        r[j] = -1;
                        roots.push(r);
                    }
                }
                roots
            }
            GroupTag::Sp4 => vec![vec![1, -1], vec![1, 1], vec![2, 0], vec![0, 2]],
        }
    }

    pub fn is_dominant(self, coords: &[i64]) -> bool {
        match self {
            GroupTag::GL(_) => coords.windows(2).all(|w| w[0] >= w[1]),
            GroupTag::Sp4 => coords[0] >= coords[1] && coords[1] >= 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Weight {
    pub group: GroupTag,
    pub coords: Vec<i64>,
}

impl Weight {
    pub fn new(group: GroupTag, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != group.rank() {
            return Err(Error::WrongRank { expected: group.rank(), got: coords.len() });
        }
        Ok(Weight { group, coords })
    }

    pub fn gl(coords: &[i64]) -> Self {
        Weight { group: GroupTag::GL(coords.len()), coords: coords.to_vec() }
    }

    pub fn sp4(x: i64, y: i64) -> Self {
        Weight { group: GroupTag::Sp4, coords: vec![x, y] }
    }

    pub fn is_dominant(&self) -> bool {
        self.group.is_dominant(&self.coords)
    }

    fn require_dominant(&self) -> Result<()> {
        if self.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant { group: self.group.to_string(), coords: self.coords.clone() })
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Dominantization {
    Singular,
    Regular { dominant: Weight, length: u32 },
}

/// The eight elements of the C2 Weyl group as signed permutations,
/// `(w v)_i = sign_i * v_{perm_i}`, paired with their word length in the
/// simple reflections `s1` (swap) and `s2` (negate the second coordinate).
fn sp4_elements() -> Vec<([usize; 2], [i64; 2], u32)> {
    let identity = ([0usize, 1usize], [1i64, 1i64]);
    let compose = |(p, s): ([usize; 2], [i64; 2]), (gp, gs): ([usize; 2], [i64; 2])| {
        // apply (p, s) first, then the generator
        let mut np = [0; 2];
        let mut ns = [0; 2];
        for i in 0..2 {
            np[i] = p[gp[i]];
            ns[i] = gs[i] * s[gp[i]];
        }
        (np, ns)
    };
    let gens = [([1usize, 0usize], [1i64, 1i64]), ([0, 1], [1, -1])];
    let mut seen = vec![(identity.0, identity.1, 0u32)];
    let mut frontier = vec![identity];
    let mut depth = 0;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for el in &frontier {
            for g in gens {
                let c = compose(*el, g);
                if !seen.iter().any(|(p, s, _)| (*p, *s) == c) {
                    seen.push((c.0, c.1, depth));
                    next.push(c);
                }
            }
        }
        frontier = next;
    }
    seen
}

/// Dominantize `w` under the dot action `w -> s(w + rho) - rho`.
pub fn tilde_dominantize(w: &Weight) -> Dominantization {
    let rho = w.group.rho();
    let v: Vec<i64> = w.coords.iter().zip(&rho).map(|(a, b)| a + b).collect();
    match w.group {
        GroupTag::GL(_) => {
            for i in 0..v.len() {
                for j in i + 1..v.len() {
                    if v[i] == v[j] {
                        return Dominantization::Singular;
                    }
                }
            }
            let mut inversions = 0u32;
            for i in 0..v.len() {
                for j in i + 1..v.len() {
                    if v[i] < v[j] {
                        inversions += 1;
                    }
                }
            }
            let mut sorted = v.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            let dominant = sorted.iter().zip(&rho).map(|(a, b)| a - b).collect();
            Dominantization::Regular { dominant: Weight { group: w.group, coords: dominant }, length: inversions }
        }
        GroupTag::Sp4 => {
            if v[0] == 0 || v[1] == 0 || v[0].abs() == v[1].abs() {
                return Dominantization::Singular;
            }
            for (perm, sign, length) in sp4_elements() {
                let image = [sign[0] * v[perm[0]], sign[1] * v[perm[1]]];
                if image[0] > image[1] && image[1] > 0 {
                    return Dominantization::Regular {
                        dominant: Weight::sp4(image[0] - rho[0], image[1] - rho[1]),
                        length,
                    };
                }
            }
            unreachable!("a regular C2 weight has a dominant conjugate")
        }
    }
}

/// Dimension of the irreducible representation with highest weight `lambda`.
pub fn weyl_dim(lambda: &Weight) -> Result<BigInt> {
    lambda.require_dominant()?;
    let rho = lambda.group.rho();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for root in lambda.group.positive_roots() {
        let pair = |x: &[i64]| -> i64 { x.iter().zip(&root).map(|(a, b)| a * b).sum() };
        let shifted: Vec<i64> = lambda.coords.iter().zip(&rho).map(|(a, b)| a + b).collect();
        num *= BigInt::from(pair(&shifted));
        den *= BigInt::from(pair(&rho));
    }
    Ok(num / den)
}

pub fn dual_weight(lambda: &Weight) -> Result<Weight> {
    lambda.require_dominant()?;
    Ok(match lambda.group {
        GroupTag::GL(_) => Weight { group: lambda.group, coords: lambda.coords.iter().rev().map(|c| -c).collect() },
        GroupTag::Sp4 => lambda.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn regular(w: &Weight) -> (Vec<i64>, u32) {
        match tilde_dominantize(w) {
            Dominantization::Regular { dominant, length } => (dominant.coords, length),
            Dominantization::Singular => panic!("expected regular"),
        }
    }

    #[test]
    fn gl4_calibration() {
        assert_eq!(tilde_dominantize(&Weight::gl(&[-3, -3, 0, 0])), Dominantization::Singular);
        assert_eq!(regular(&Weight::gl(&[-4, -4, 0, 0])), (vec![-2, -2, -2, -2], 4));
        assert_eq!(regular(&Weight::gl(&[0, 0, 0, 0])), (vec![0, 0, 0, 0], 0));
    }

    #[test]
    fn sp4_calibration() {
        assert_eq!(regular(&Weight::sp4(-3, -3)), (vec![0, 0], 3));
        assert_eq!(regular(&Weight::sp4(1, 1)), (vec![1, 1], 0));
        assert_eq!(tilde_dominantize(&Weight::sp4(-2, -1)), Dominantization::Singular);
    }

    #[test]
    fn sp4_group_has_eight_elements_of_expected_lengths() {
        let mut lengths: Vec<u32> = sp4_elements().into_iter().map(|e| e.2).collect();
        lengths.sort();
        assert_eq!(lengths, vec![0, 1, 1, 2, 2, 3, 3, 4]);
    }

    #[test]
    fn dimensions() {
        assert_eq!(weyl_dim(&Weight::gl(&[1, 0, 0, 0])).unwrap(), 4.into());
        assert_eq!(weyl_dim(&Weight::gl(&[1, 1, 0, 0])).unwrap(), 6.into());
        assert_eq!(weyl_dim(&Weight::sp4(1, 1)).unwrap(), 5.into());
        assert_eq!(weyl_dim(&Weight::sp4(2, 0)).unwrap(), 10.into());
        assert_eq!(weyl_dim(&Weight::sp4(1, 0)).unwrap(), 4.into());
        assert!(weyl_dim(&Weight::sp4(0, 1)).is_err());
    }

    #[test]
    fn duals() {
        assert_eq!(dual_weight(&Weight::gl(&[-2, -2, -2, -2])).unwrap().coords, vec![2, 2, 2, 2]);
        assert_eq!(dual_weight(&Weight::gl(&[1, 0, 0, 0])).unwrap().coords, vec![0, 0, 0, -1]);
        assert_eq!(dual_weight(&Weight::sp4(1, 1)).unwrap().coords, vec![1, 1]);
    }
}
