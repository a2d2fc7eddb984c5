use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::levi::{to_u64, BlockKind};
use super::space::Space;
use crate::error::{Error, Result};
use crate::weyl::Weight;

/// Irreducible homogeneous bundle given by its Levi highest weight.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IrredClass {
    pub space: Space,
    pub levi_weight: Vec<i64>,
}

impl IrredClass {
    pub fn new(space: Space, levi_weight: Vec<i64>) -> Result<Self> {
        let expected = space.group().rank();
        if levi_weight.len() != expected {
            return Err(Error::WrongRank { expected, got: levi_weight.len() });
        }
        let ok = space.levi_blocks().iter().all(|b| b.is_dominant(b.slice(&levi_weight)));
        if !ok {
            return Err(Error::NotLeviDominant { space, coords: levi_weight });
        }
        Ok(IrredClass { space, levi_weight })
    }

    pub fn ambient_weight(&self) -> Weight {
        Weight { group: self.space.group(), coords: self.levi_weight.clone() }
    }

    pub fn rank(&self) -> BigInt {
        self.space.levi_blocks().iter().map(|b| b.dim(b.slice(&self.levi_weight))).product()
    }

    pub fn is_line(&self) -> bool {
        self.space.levi_blocks().iter().all(|b| b.is_character(b.slice(&self.levi_weight)))
    }
}

/// Formal direct sum of irreducible homogeneous bundles. On a total space
/// the terms are pulled back from the base and weights refer to the base.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BundleClass {
    pub space: Space,
    pub terms: BTreeMap<Vec<i64>, u64>,
}

impl BundleClass {
    pub fn zero(space: Space) -> Self {
        BundleClass { space, terms: BTreeMap::new() }
    }

    pub fn irreducible(space: Space, weight: Vec<i64>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(weight, 1);
        BundleClass { space, terms }
    }

    pub fn line(space: Space, k: i64) -> Self {
        Self::irreducible(space, space.line_weight(k))
    }

    pub fn trivial(space: Space) -> Self {
        Self::line(space, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn irreducibles(&self) -> impl Iterator<Item = (IrredClass, u64)> + '_ {
        let base = self.space.compact();
        self.terms.iter().map(move |(w, m)| (IrredClass { space: base, levi_weight: w.clone() }, *m))
    }

    pub fn single(&self) -> Option<IrredClass> {
        if self.terms.len() == 1 {
            let (w, m) = self.terms.iter().next().unwrap();
            if *m == 1 {
                return Some(IrredClass { space: self.space.compact(), levi_weight: w.clone() });
            }
        }
        None
    }

    pub fn rank(&self) -> u64 {
        self.irreducibles().map(|(i, m)| to_u64(&i.rank()) * m).sum()
    }

    pub fn is_line(&self) -> bool {
        self.single().is_some_and(|i| i.is_line())
    }

    /// Degree of a line bundle in units of O(1), when it is a power of O(1).
    pub fn line_degree(&self) -> Option<i64> {
        let irr = self.single()?;
        let w = &irr.levi_weight;
        let k = w[0];
        (self.space.line_weight(k) == *w).then_some(k)
    }

    pub fn add(&self, other: &BundleClass) -> Result<BundleClass> {
        check_same(self.space, other.space)?;
        let mut out = self.clone();
        for (w, m) in &other.terms {
            *out.terms.entry(w.clone()).or_insert(0) += m;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: u64) -> BundleClass {
        if factor == 0 {
            return BundleClass::zero(self.space);
        }
        BundleClass { space: self.space, terms: self.terms.iter().map(|(w, m)| (w.clone(), m * factor)).collect() }
    }

    pub fn on(&self, space: Space) -> BundleClass {
        BundleClass { space, terms: self.terms.clone() }
    }

    pub fn twist(&self, k: i64) -> BundleClass {
        let shift = self.space.line_weight(k);
        BundleClass {
            space: self.space,
            terms: self.terms.iter().map(|(w, m)| (w.iter().zip(&shift).map(|(a, b)| a + b).collect(), *m)).collect(),
        }
    }

    pub fn dual(&self) -> BundleClass {
        let blocks = self.space.levi_blocks();
        let terms = self
            .terms
            .iter()
            .map(|(w, m)| {
                let mut d = Vec::with_capacity(w.len());
                for b in &blocks {
                    d.extend(b.dual(b.slice(w)));
                }
                (d, *m)
            })
            .collect();
        BundleClass { space: self.space, terms }
    }

    pub fn tensor(&self, other: &BundleClass) -> Result<BundleClass> {
        check_same(self.space, other.space)?;
        let blocks = self.space.levi_blocks();
        let mut out = BundleClass::zero(self.space);
        for (wa, ma) in &self.terms {
            for (wb, mb) in &other.terms {
                let mut partial: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
                partial.insert(Vec::new(), 1);
                for b in &blocks {
                    let piece = b.tensor(b.slice(wa), b.slice(wb));
                    let mut next = BTreeMap::new();
                    for (prefix, c) in &partial {
                        for (w, d) in &piece {
                            let mut joined = prefix.clone();
                            joined.extend(w);
                            *next.entry(joined).or_insert(0) += c * d;
                        }
                    }
                    partial = next;
                }
                for (w, c) in partial {
                    *out.terms.entry(w).or_insert(0) += c * ma * mb;
                }
            }
        }
        Ok(out)
    }

    /// Symmetric powers of line bundles and of (rank two standard) x (line).
    pub fn sym_power(&self, l: u64) -> Result<BundleClass> {
        if l == 0 {
            return Ok(BundleClass::trivial(self.space));
        }
        if l == 1 {
            return Ok(self.clone());
        }
        let irr = self
            .single()
            .ok_or_else(|| Error::UnsupportedPlethysm(format!("Sym^{l} of a reducible class on {}", self.space)))?;
        let li = l as i64;
        let mut out = Vec::new();
        let mut std_blocks = 0;
        for b in self.space.levi_blocks() {
            let part = b.slice(&irr.levi_weight);
            if b.is_character(part) {
                out.extend(part.iter().map(|x| x * li));
                continue;
            }
            std_blocks += 1;
            match b.kind {
                BlockKind::GL(2) if part[0] - part[1] == 1 => {
                    out.push(part[0] * li);
                    out.push(part[0] * li - li);
                }
                BlockKind::Sp2 if part[0] == 1 => out.push(li),
                _ => std_blocks += 1,
            }
        }
        if std_blocks > 1 {
            return Err(Error::UnsupportedPlethysm(format!(
                "Sym^{l} of weight {:?} on {}",
                irr.levi_weight, self.space
            )));
        }
        Ok(BundleClass::irreducible(self.space, out))
    }

    pub fn wedge_power(&self, q: u64) -> Result<BundleClass> {
        let r = self.rank();
        if q == 0 {
            return Ok(BundleClass::trivial(self.space));
        }
        if q == 1 {
            return Ok(self.clone());
        }
        if q > r {
            return Ok(BundleClass::zero(self.space));
        }
        if r > 2 {
            return Err(Error::UnsupportedWedge(r));
        }
        // q == r == 2
        self.determinant()
    }

    /// Determinant of a class of rank at most two, or of any sum of lines.
    pub fn determinant(&self) -> Result<BundleClass> {
        let mut det = BundleClass::trivial(self.space);
        for (irr, m) in self.irreducibles() {
            let d = if irr.is_line() {
                BundleClass::irreducible(self.space, irr.levi_weight.clone())
            } else {
                let mut out = Vec::new();
                for b in self.space.levi_blocks() {
                    let part = b.slice(&irr.levi_weight);
                    if b.is_character(part) {
                        let r = to_u64(&irr.rank()) as i64;
                        out.extend(part.iter().map(|x| x * r));
                    } else {
                        match b.kind {
                            BlockKind::GL(2) if part[0] - part[1] == 1 => {
                                let s = part[0] + part[1];
                                out.extend([s, s]);
                            }
                            BlockKind::Sp2 if part[0] == 1 => out.push(0),
                            _ => return Err(Error::UnsupportedWedge(to_u64(&irr.rank()))),
                        }
                    }
                }
                BundleClass::irreducible(self.space, out)
            };
            for _ in 0..m {
                det = det.tensor(&d)?;
            }
        }
        Ok(det)
    }

    pub fn kclass(&self) -> KClass {
        KClass { space: self.space, terms: self.terms.iter().map(|(w, m)| (w.clone(), *m as i64)).collect() }
    }
}

fn check_same(a: Space, b: Space) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::SpaceMismatch(a, b))
    }
}

/// Signed formal combination of irreducible classes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KClass {
    pub space: Space,
    pub terms: BTreeMap<Vec<i64>, i64>,
}

impl KClass {
    pub fn zero(space: Space) -> Self {
        KClass { space, terms: BTreeMap::new() }
    }

    pub fn add_scaled(&mut self, other: &KClass, factor: i64) {
        for (w, m) in &other.terms {
            let e = self.terms.entry(w.clone()).or_insert(0);
            *e += m * factor;
            if *e == 0 {
                self.terms.remove(w);
            }
        }
    }

    pub fn rank(&self) -> i64 {
        let base = self.space.compact();
        self.terms
            .iter()
            .map(|(w, m)| {
                let irr = IrredClass { space: base, levi_weight: w.clone() };
                irr.rank().to_i64().unwrap() * m
            })
            .sum()
    }

    /// Positive and negative parts as honest bundle classes.
    pub fn split(&self) -> (BundleClass, BundleClass) {
        let mut pos = BundleClass::zero(self.space);
        let mut neg = BundleClass::zero(self.space);
        for (w, m) in &self.terms {
            if *m > 0 {
                pos.terms.insert(w.clone(), *m as u64);
            } else if *m < 0 {
                neg.terms.insert(w.clone(), (-*m) as u64);
            }
        }
        (pos, neg)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, m) in &self.terms {
            let name = irreducible_name(self.space, w);
            let sign = if *m < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = m.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}[{name}]")?;
            } else {
                write!(f, "{sign}{mag}[{name}]")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Canonical name of an irreducible term, in the expression grammar.
pub fn irreducible_name(space: Space, w: &[i64]) -> String {
    let twist = |name: &str, k: i64| {
        if k == 0 {
            name.to_string()
        } else {
            format!("{name}({k})")
        }
    };
    let sym = |m: i64, letter: &str, k: i64| match m {
        1 => twist(letter, k),
        _ => {
            if k == 0 {
                format!("Sym^{m} {letter}")
            } else {
                format!("Sym^{m} {letter}({k})")
            }
        }
    };
    let generic = || {
        let parts: Vec<String> = w.iter().map(|c| c.to_string()).collect();
        format!("irr({})", parts.join(","))
    };
    match space {
        Space::LGr | Space::Y => {
            let k = w[0] - w[1];
            if k == 0 {
                twist("O", w[0])
            } else {
                sym(k, "S", w[0])
            }
        }
        Space::PSp | Space::YPrime => {
            if w[1] == 0 {
                twist("O", w[0])
            } else {
                sym(w[1], "E", w[0])
            }
        }
        Space::Gr24 => {
            if w[2] == 0 && w[3] == 0 {
                let k = w[0] - w[1];
                if k == 0 {
                    twist("O", w[0])
                } else {
                    sym(k, "S", w[0])
                }
            } else if w[0] == w[1] && w[2] == 0 && w[3] == -1 {
                twist("Q", w[0])
            } else {
                generic()
            }
        }
        Space::Proj(_) => {
            if w[1..].iter().all(|x| *x == 0) {
                twist("O", w[0])
            } else {
                generic()
            }
        }
        Space::Cyclic(_) => {
            if w[1..].iter().all(|x| *x == 0) {
                if w[0] == 0 {
                    "O".to_string()
                } else {
                    format!("L^{}", -w[0])
                }
            } else {
                generic()
            }
        }
    }
}

impl fmt::Display for BundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, m)| {
                let name = irreducible_name(self.space, w);
                if *m == 1 {
                    name
                } else {
                    format!("{name}*{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for BundleClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lgr(w: &[i64]) -> BundleClass {
        BundleClass::irreducible(Space::LGr, w.to_vec())
    }

    fn sum(space: Space, ws: &[&[i64]]) -> BundleClass {
        let mut out = BundleClass::zero(space);
        for w in ws {
            *out.terms.entry(w.to_vec()).or_insert(0) += 1;
        }
        out
    }

    #[test]
    fn lgr_tensor_examples() {
        let s = lgr(&[0, -1]);
        assert_eq!(s.tensor(&s).unwrap(), sum(Space::LGr, &[&[0, -2], &[-1, -1]]));
        let sym2 = lgr(&[0, -2]);
        let sym3 = lgr(&[0, -3]);
        assert_eq!(sym2.tensor(&sym3).unwrap(), sum(Space::LGr, &[&[0, -5], &[-1, -4], &[-2, -3]]));
    }

    #[test]
    fn duals() {
        assert_eq!(lgr(&[0, -1]).dual(), lgr(&[1, 0]));
        assert_eq!(lgr(&[-1, -3]).dual(), lgr(&[3, 1]));
        assert_eq!(BundleClass::line(Space::Gr24, 2).dual(), BundleClass::line(Space::Gr24, -2));
    }

    #[test]
    fn gr24_s_tensor_q() {
        let s = BundleClass::irreducible(Space::Gr24, vec![0, -1, 0, 0]);
        let q = BundleClass::irreducible(Space::Gr24, vec![0, 0, 0, -1]);
        let t = s.tensor(&q).unwrap();
        assert_eq!(t.rank(), 4);
        assert_eq!(t.terms.len(), 1);
    }

    #[test]
    fn powers() {
        let s_dual_1 = lgr(&[2, 1]);
        assert_eq!(s_dual_1.sym_power(3).unwrap(), lgr(&[6, 3]));
        assert_eq!(lgr(&[-1, -2]).wedge_power(2).unwrap(), BundleClass::line(Space::LGr, -3));
        let n = BundleClass::irreducible(Space::PSp, vec![-2, 1]);
        assert_eq!(n.wedge_power(2).unwrap(), BundleClass::line(Space::PSp, -4));
        assert!(n.wedge_power(3).unwrap().is_zero());
        assert!(lgr(&[0, -2]).sym_power(2).is_err());
    }

    #[test]
    fn names() {
        assert_eq!(irreducible_name(Space::LGr, &[1, -1]), "Sym^2 S(1)");
        assert_eq!(irreducible_name(Space::LGr, &[1, 0]), "S(1)");
        assert_eq!(irreducible_name(Space::Y, &[0, 0]), "O");
        assert_eq!(irreducible_name(Space::Cyclic(3), &[2, 0, 0]), "L^-2");
        assert_eq!(irreducible_name(Space::Gr24, &[0, 0, 0, -1]), "Q");
    }
}
