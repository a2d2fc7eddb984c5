use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::bundles::{BundleClass, Construction, ExtensionObject, KClass, Object, Space};
use crate::error::{Error, Result};
use crate::homalg::{check_collection, check_exceptional, ext_table, hom_dimension, kclass_equal, ExtContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    /// `m_j = hom(F_{j-1}, A_j)` with `F_j` the cokernel of the coevaluation.
    Left,
    /// `m_j = hom(A_j, G_{j+1})` with `G_j` the kernel of the evaluation.
    Right,
}

/// One Hom computation made while deriving a resolution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionStep {
    pub side: Side,
    pub index: usize,
    pub source: String,
    pub target: String,
    pub ext: String,
    #[serde(serialize_with = "crate::decimal::opt")]
    pub multiplicity: Option<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub object: Object,
    #[serde(serialize_with = "crate::decimal::int")]
    pub multiplicity: BigInt,
}

/// `0 -> T -> A_1^{m_1} -> ... -> A_k^{m_k} -> 0`, or when `complete` is
/// false the truncation `0 -> T -> ... -> A_k^{m_k} -> F_k -> 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionChain {
    pub space: Space,
    pub terms: Vec<Term>,
    /// `F_j`, the image of `A_j^{m_j}` in `A_{j+1}^{m_{j+1}}`, built from the left.
    pub cokernels: Vec<Object>,
    /// `G_{j+1}`, the same image built from the right; empty unless complete.
    pub kernels: Vec<Object>,
    pub complete: bool,
    pub alternating_sum_zero: bool,
    pub derivation: Vec<ResolutionStep>,
}

impl ResolutionChain {
    pub fn multiplicities(&self) -> Vec<BigInt> {
        self.terms.iter().map(|t| t.multiplicity.clone()).collect()
    }

    /// The middle multiplicities `m_1, ..., m_{k-1}`.
    pub fn hom_vector(&self) -> Vec<BigInt> {
        let m = self.multiplicities();
        if m.len() < 3 {
            return Vec::new();
        }
        m[1..m.len() - 1].to_vec()
    }

    /// Image number `j` (1-based, `1 <= j < k`), in the form with fewer nested
    /// constructions.
    pub fn image(&self, j: usize) -> Option<&Object> {
        let left = self.cokernels.get(j - 1)?;
        match self.kernels.get(j - 1) {
            Some(right) if depth(right) < depth(left) => Some(right),
            _ => Some(left),
        }
    }

    /// The short exact pieces `0 -> I_{j-1} -> A_j^{m_j} -> I_j -> 0` with
    /// `I_0` the target. A complete chain ends with `I_{k-1} = A_k`.
    pub fn pieces(&self) -> Vec<(Object, Term, Object)> {
        let k = self.terms.len() - 1;
        let count = if self.complete { k - 1 } else { k };
        let mut out = Vec::new();
        let mut prev = self.terms[0].object.clone();
        for j in 1..=count {
            let next = if self.complete && j == k - 1 {
                self.terms[k].object.clone()
            } else {
                self.image(j).cloned().unwrap()
            };
            out.push((prev, self.terms[j].clone(), next.clone()));
            prev = next;
        }
        out
    }
}

fn depth(o: &Object) -> usize {
    match o {
        Object::Bundle(_) => 0,
        Object::Derived(e) => {
            1 + match &e.construction {
                Construction::Extension { sub, quotient, .. } => depth(sub).max(depth(quotient)),
                Construction::Kernel { target, .. } => depth(target),
                Construction::Cokernel { source, .. } => depth(source),
            }
        }
    }
}

fn copies(m: &BigInt) -> Result<u64> {
    m.to_u64().ok_or_else(|| Error::Unsupported(format!("multiplicity {m}")))
}

struct Deriver<'a> {
    target: &'a Object,
    against: &'a [BundleClass],
    ctx: &'a ExtContext,
    left: BTreeMap<usize, BigInt>,
    right: BTreeMap<usize, BigInt>,
    log: Vec<ResolutionStep>,
}

impl Deriver<'_> {
    fn value(&self, j: usize) -> Option<BigInt> {
        self.left.get(&j).or_else(|| self.right.get(&j)).cloned()
    }

    fn hom(&mut self, side: Side, index: usize, a: &Object, b: &Object) -> Result<Option<BigInt>> {
        let t = ext_table(a, b, self.ctx)?;
        let m = hom_dimension(&t);
        self.log.push(ResolutionStep {
            side,
            index,
            source: a.to_string(),
            target: b.to_string(),
            ext: t.to_string(),
            multiplicity: m.clone(),
        });
        Ok(m)
    }

    /// Builds `F_0..F_j` as far as multiplicities are known, certifying new ones.
    fn left_pass(&mut self) -> Result<Vec<Object>> {
        let mut images = Vec::new();
        let mut f = self.target.clone();
        for (idx, a) in self.against.iter().enumerate() {
            let j = idx + 1;
            if !self.left.contains_key(&j) {
                if let Some(m) = self.hom(Side::Left, j, &f, &Object::Bundle(a.clone()))? {
                    self.left.insert(j, m);
                }
            }
            let Some(m) = self.value(j) else { break };
            f = ExtensionObject::coevaluation_cokernel(f, a.clone(), copies(&m)?, &format!("F{j}"))?.into();
            images.push(f.clone());
        }
        Ok(images)
    }

    /// Builds `G_k = A_k, G_{k-1}, ...` assuming the sequence closes with `m_k = 1`.
    fn right_pass(&mut self) -> Result<Vec<Object>> {
        let k = self.against.len();
        let mut g: Object = self.against[k - 1].clone().into();
        let mut images = vec![g.clone()];
        for j in (1..k).rev() {
            let a = &self.against[j - 1];
            if !self.right.contains_key(&j) {
                if let Some(m) = self.hom(Side::Right, j, &Object::Bundle(a.clone()), &g)? {
                    self.right.insert(j, m);
                }
            }
            let Some(m) = self.value(j) else { break };
            g = ExtensionObject::evaluation_kernel(a.clone(), copies(&m)?, g, &format!("G{j}"))?.into();
            images.push(g.clone());
        }
        images.reverse();
        Ok(images)
    }
}

fn alternating_sum(target: &Object, against: &[BundleClass], m: &[BigInt]) -> Result<KClass> {
    let mut k = KClass::zero(target.space());
    k.add_scaled(&target.kclass(), 1);
    for (j, (a, mj)) in against.iter().zip(m).enumerate() {
        let sign = if j % 2 == 0 { -1 } else { 1 };
        k.add_scaled(&a.kclass(), sign * mj.to_i64().unwrap_or(i64::MAX));
    }
    Ok(k)
}

fn k_zero(k: &KClass) -> Result<bool> {
    if k.is_zero() {
        return Ok(true);
    }
    kclass_equal(k, &KClass::zero(k.space))
}

/// Resolves `target` by the collection `against`: each multiplicity is the
/// dimension of a Hom space certified from the left or from the right.
pub fn derive_resolution(target: &Object, against: &[BundleClass], ctx: &ExtContext) -> Result<ResolutionChain> {
    let space = target.space();
    if against.is_empty() {
        return Err(Error::Unsupported("empty collection".into()));
    }
    if let Some(a) = against.iter().find(|a| a.space != space) {
        return Err(Error::SpaceMismatch(space, a.space));
    }
    // (target, against) is never exceptional when the sequence closes: Serre
    // duality pairs the target with the last member in top degree
    let objects: Vec<Object> = against.iter().cloned().map(Object::Bundle).collect();
    for cert in [check_collection(&objects, ctx)?, check_exceptional(target, ctx)?] {
        if !cert.is_pass() {
            return Err(Error::Hypothesis(format!("{}: {}", cert.claim, cert.verdict)));
        }
    }
    let k = against.len();
    let mut d = Deriver { target, against, ctx, left: BTreeMap::new(), right: BTreeMap::new(), log: Vec::new() };

    let mut cokernels = d.left_pass()?;
    let all_left = (1..=k).all(|j| d.left.contains_key(&j));
    let truncated = all_left && {
        let m: Vec<BigInt> = (1..=k).map(|j| d.left[&j].clone()).collect();
        !k_zero(&alternating_sum(target, against, &m)?)?
    };
    let mut kernels = Vec::new();
    if !truncated {
        for _ in 0..2 {
            d.right_pass()?;
            cokernels = d.left_pass()?;
        }
        kernels = d.right_pass()?;
    }

    let mut m = Vec::new();
    for j in 1..=k {
        let l = d.left.get(&j);
        let r = if j == k && !truncated { Some(BigInt::one()) } else { d.right.get(&j).cloned() };
        if let (Some(l), Some(r)) = (l, &r) {
            if l != r && !truncated {
                return Err(Error::Inconclusive(format!(
                    "multiplicity {j} is {l} from the left and {r} from the right"
                )));
            }
        }
        match l.cloned().or(if truncated { None } else { r }) {
            Some(v) => m.push(v),
            None => return Err(Error::Inconclusive(format!("multiplicity {j} is not certified from either side"))),
        }
    }
    let sum = alternating_sum(target, against, &m)?;
    let alternating_sum_zero = k_zero(&sum)?;
    if !truncated && !alternating_sum_zero {
        return Err(Error::Inconclusive(format!("the alternating K-sum is {sum}, not zero")));
    }
    // keep the right-hand images G_2..G_k aligned with F_1..F_{k-1}
    let kernels = if truncated || kernels.len() != k { Vec::new() } else { kernels[1..].to_vec() };
    let cokernels = if truncated { cokernels } else { cokernels.into_iter().take(k - 1).collect() };
    let mut terms = vec![Term { object: target.clone(), multiplicity: BigInt::one() }];
    for (a, mj) in against.iter().zip(&m) {
        terms.push(Term { object: Object::Bundle(a.clone()), multiplicity: mj.clone() });
    }
    Ok(ResolutionChain {
        space,
        terms,
        cokernels,
        kernels,
        complete: !truncated,
        alternating_sum_zero,
        derivation: d.log,
    })
}
