use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::bundles::{BundleClass, ExtensionObject, KClass, Object, Space};
use crate::cohomology::Dim;
use crate::error::{Error, Result};
use crate::homalg::{check_collection, euler_pairing, ext_table, kclass_equal, Certificate, ExtContext, ExtTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collection {
    pub space: Space,
    pub objects: Vec<Object>,
    pub certified: bool,
    pub certificate: Certificate,
}

impl Collection {
    /// Builds a collection and runs the exceptional-collection check on it.
    pub fn new(objects: Vec<Object>, ctx: &ExtContext) -> Result<Collection> {
        let space = objects.first().map(|o| o.space()).ok_or_else(|| Error::Unsupported("empty collection".into()))?;
        if let Some(o) = objects.iter().find(|o| o.space() != space) {
            return Err(Error::SpaceMismatch(space, o.space()));
        }
        let certificate = check_collection(&objects, ctx)?;
        Ok(Collection { space, certified: certificate.is_pass(), objects, certificate })
    }

    /// `(E_1, ..., E_n) -> (E_2, ..., E_n, E_1 (x) omega^{-1})`.
    pub fn serre_rotate(&self, ctx: &ExtContext) -> Result<Collection> {
        let anti = -self.space.canonical_class().line_degree().expect("line bundle");
        let mut objects = self.objects[1..].to_vec();
        objects.push(self.objects[0].twist(anti));
        Collection::new(objects, ctx)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    Left,
    Right,
}

/// `[result] = [F] - chi(E, F) [E]` (left) or `[result] = chi(E, F) [F] - [E]`
/// (right), checked on the K-classes of the objects as constructed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KIdentity {
    #[serde(serialize_with = "crate::decimal::int")]
    pub euler: BigInt,
    /// The mutated object is recorded up to this homological shift.
    pub shift: i64,
    pub holds: bool,
}

/// `0 -> sub -> middle -> quotient -> 0` at the level of classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShortExact {
    pub sub: Object,
    pub middle: Object,
    pub quotient: Object,
    pub k_exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MutationStep {
    pub direction: Direction,
    pub pivot: usize,
    /// RHom(E, F) of the pair `(E, F)` at the pivot.
    pub hom: ExtTable,
    /// The mutated object as constructed.
    pub constructed: Object,
    /// An irreducible bundle with the same K-class, when one was found and the
    /// collection using it re-certified.
    pub identified: Option<BundleClass>,
    pub identity: KIdentity,
    pub ses: Option<ShortExact>,
    pub result: Collection,
}

impl MutationStep {
    /// The mutated object in the form used in `result`.
    pub fn object(&self) -> Object {
        match &self.identified {
            Some(b) => Object::Bundle(b.clone()),
            None => self.constructed.clone(),
        }
    }

    pub fn hom_dim(&self) -> Option<BigInt> {
        crate::homalg::hom_dimension(&self.hom)
    }
}

fn concentrated_hom(t: &ExtTable) -> Result<Option<u64>> {
    if !t.is_certified() {
        return Err(Error::Inconclusive(format!("RHom({}, {}) = {}", t.source, t.target, t)));
    }
    if t.is_zero() {
        return Ok(Some(0));
    }
    if t.support() == vec![0] {
        if let Some(Dim::Finite(d)) = t.dim(0) {
            return Ok(d.to_u64());
        }
    }
    Ok(None)
}

/// Irreducible homogeneous bundles on a compact space within a small box of
/// weights, in a fixed order.
pub fn candidate_irreducibles(space: Space) -> Vec<BundleClass> {
    let mut out = Vec::new();
    let range = -8..=8i64;
    match space {
        Space::LGr => {
            for a in range {
                for m in 0..=4 {
                    out.push(BundleClass::irreducible(space, vec![a, a - m]));
                }
            }
        }
        Space::PSp => {
            for a in range {
                for s in 0..=4 {
                    out.push(BundleClass::irreducible(space, vec![a, s]));
                }
            }
        }
        Space::Proj(_) => {
            for a in range {
                out.push(BundleClass::line(space, a));
            }
        }
        Space::Gr24 => {
            for a in -4..=4i64 {
                for m in 0..=3 {
                    for c in -3..=3i64 {
                        for n in 0..=3 {
                            out.push(BundleClass::irreducible(space, vec![a, a - m, c, c - n]));
                        }
                    }
                }
            }
        }
        _ => {}
    }
    out
}

fn identify(k: &KClass, space: Space) -> Result<Option<BundleClass>> {
    if k.rank() <= 0 {
        return Ok(None);
    }
    for cand in candidate_irreducibles(space) {
        if cand.rank() as i64 == k.rank() && kclass_equal(&cand.kclass(), k)? {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

fn require_bundle(o: &Object) -> Result<&BundleClass> {
    o.as_bundle().ok_or_else(|| Error::Unsupported(format!("mutation through the constructed object {o}")))
}

fn finish(
    direction: Direction,
    pivot: usize,
    c: &Collection,
    hom: ExtTable,
    constructed: Object,
    identity: KIdentity,
    ses: Option<ShortExact>,
    place: impl Fn(&mut Vec<Object>, Object),
    ctx: &ExtContext,
) -> Result<MutationStep> {
    let mut identified = None;
    if let Some(b) = constructed.as_bundle() {
        identified = Some(b.clone());
    } else if let Some(b) = identify(&constructed.kclass(), c.space)? {
        let mut objects = c.objects.clone();
        place(&mut objects, Object::Bundle(b.clone()));
        let attempt = Collection::new(objects, ctx)?;
        if attempt.certified {
            return Ok(MutationStep {
                direction,
                pivot,
                hom,
                constructed,
                identified: Some(b),
                identity,
                ses,
                result: attempt,
            });
        }
    }
    let mut objects = c.objects.clone();
    place(&mut objects, constructed.clone());
    let result = Collection::new(objects, ctx)?;
    Ok(MutationStep { direction, pivot, hom, constructed, identified, identity, ses, result })
}

/// Left mutation of the pair `(E, F) = (E_i, E_{i+1})`: the new pair is
/// `(L_E F, E)`. When RHom(E, F) sits in degree 0 the object recorded is
/// `L_E F [-1]`, the kernel of the evaluation map.
pub fn mutate_left(c: &Collection, i: usize, ctx: &ExtContext) -> Result<MutationStep> {
    if !c.certified {
        return Err(Error::Hypothesis("the collection is not certified exceptional".into()));
    }
    if i + 1 >= c.objects.len() {
        return Err(Error::BadIndex { index: i, len: c.objects.len() });
    }
    let (e, f) = (&c.objects[i], &c.objects[i + 1]);
    let hom = ext_table(e, f, ctx)?;
    let euler = euler_pairing(&e.kclass(), &f.kclass())?;
    let h = concentrated_hom(&hom)?
        .ok_or_else(|| Error::Unsupported(format!("RHom({e}, {f}) is not concentrated in degree 0: {hom}")))?;
    let (constructed, shift, ses) = if h == 0 {
        (f.clone(), 0, None)
    } else {
        let unit = require_bundle(e)?.clone();
        let kernel = Object::from(ExtensionObject::evaluation_kernel(unit.clone(), h, f.clone(), "L")?);
        let middle = Object::Bundle(unit.scale(h));
        let ses = ShortExact {
            sub: kernel.clone(),
            middle: middle.clone(),
            quotient: f.clone(),
            k_exact: k_exact(&kernel, &middle, f),
        };
        (kernel, 1, Some(ses))
    };
    // [L_E F] = [F] - chi [E]; the recorded object is shifted by `shift`
    let mut expected = f.kclass();
    expected.add_scaled(&e.kclass(), -to_i64(&euler)?);
    let sign = if shift % 2 == 0 { 1 } else { -1 };
    let mut got = constructed.kclass();
    got.add_scaled(&expected, -sign);
    let identity = KIdentity { euler, shift, holds: got.is_zero() };
    let e_owned = e.clone();
    finish(
        Direction::Left,
        i,
        c,
        hom,
        constructed,
        identity,
        ses,
        move |objs, new| {
            objs[i] = new;
            objs[i + 1] = e_owned.clone();
        },
        ctx,
    )
}

/// Right mutation of `(E, F) = (E_i, E_{i+1})`: the new pair is `(F, R_F E)`.
/// When RHom(E, F) sits in degree 0, `R_F E` is the cokernel of the
/// coevaluation map.
pub fn mutate_right(c: &Collection, i: usize, ctx: &ExtContext) -> Result<MutationStep> {
    if !c.certified {
        return Err(Error::Hypothesis("the collection is not certified exceptional".into()));
    }
    if i + 1 >= c.objects.len() {
        return Err(Error::BadIndex { index: i, len: c.objects.len() });
    }
    let (e, f) = (&c.objects[i], &c.objects[i + 1]);
    let hom = ext_table(e, f, ctx)?;
    let euler = euler_pairing(&e.kclass(), &f.kclass())?;
    let h = concentrated_hom(&hom)?
        .ok_or_else(|| Error::Unsupported(format!("RHom({e}, {f}) is not concentrated in degree 0: {hom}")))?;
    let (constructed, shift, ses) = if h == 0 {
        (e.clone(), 0, None)
    } else {
        let unit = require_bundle(f)?.clone();
        let cokernel = Object::from(ExtensionObject::coevaluation_cokernel(e.clone(), unit.clone(), h, "R")?);
        let middle = Object::Bundle(unit.scale(h));
        let ses = ShortExact {
            sub: e.clone(),
            middle: middle.clone(),
            quotient: cokernel.clone(),
            k_exact: k_exact(e, &middle, &cokernel),
        };
        (cokernel, 0, Some(ses))
    };
    // [R_F E] = chi [F] - [E]; with RHom = 0 the pair is transposed and chi = 0
    let holds = if h == 0 {
        euler.is_zero()
    } else {
        let mut got = constructed.kclass();
        got.add_scaled(&f.kclass(), -to_i64(&euler)?);
        got.add_scaled(&e.kclass(), 1);
        got.is_zero()
    };
    let identity = KIdentity { euler, shift, holds };
    let f_owned = f.clone();
    finish(
        Direction::Right,
        i,
        c,
        hom,
        constructed,
        identity,
        ses,
        move |objs, new| {
            objs[i] = f_owned.clone();
            objs[i + 1] = new;
        },
        ctx,
    )
}

fn k_exact(sub: &Object, middle: &Object, quotient: &Object) -> bool {
    let mut k = middle.kclass();
    k.add_scaled(&sub.kclass(), -1);
    k.add_scaled(&quotient.kclass(), -1);
    k.is_zero()
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Unsupported(format!("Euler pairing {x} out of range")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundles::parse_on;

    fn coll(list: &[&str], sp: Space) -> Collection {
        let objs = list.iter().map(|t| parse_on(t, sp).unwrap().into_object().unwrap()).collect();
        Collection::new(objs, &ExtContext::default()).unwrap()
    }

    #[test]
    fn right_mutating_s_minus_two() {
        let ctx = ExtContext::default();
        let mut c = coll(&["S(-2)", "O(-2)", "O(-1)", "O"], Space::LGr);
        assert!(c.certified);
        let mut homs = Vec::new();
        let mut images = Vec::new();
        for i in 0..3 {
            let step = mutate_right(&c, i, &ctx).unwrap();
            assert!(step.identity.holds);
            assert!(step.result.certified);
            homs.push(step.hom_dim().unwrap());
            images.push(step.identified.clone().unwrap().to_string());
            c = step.result;
        }
        assert_eq!(homs, vec![BigInt::from(4); 3]);
        assert_eq!(images, vec!["S(-1)", "S", "S(1)"]);
    }

    #[test]
    fn left_mutation_gives_the_cotangent_kernel() {
        let ctx = ExtContext::default();
        let c = coll(&["O(-1)", "O"], Space::LGr);
        let step = mutate_left(&c, 0, &ctx).unwrap();
        assert_eq!(step.hom_dim(), Some(BigInt::from(5)));
        assert_eq!(step.constructed.to_string(), "ker[O(-1)*5; O]");
        assert!(step.identified.is_none());
        assert!(step.identity.holds);
        assert_eq!(step.identity.shift, 1);
        assert!(step.result.certified, "{}", step.result.certificate.verdict);
    }

    #[test]
    fn orthogonal_pair_is_transposed() {
        let ctx = ExtContext::default();
        let g = |w: Vec<i64>| Object::Bundle(BundleClass::irreducible(Space::Gr24, w));
        let c = Collection::new(vec![g(vec![2, 0, 0, 0]), g(vec![1, 1, 0, 0])], &ctx).unwrap();
        assert!(c.certified);
        let step = mutate_left(&c, 0, &ctx).unwrap();
        assert_eq!(step.result.objects, vec![c.objects[1].clone(), c.objects[0].clone()]);
        assert!(step.identity.holds);
    }

    #[test]
    fn serre_rotation_recertifies() {
        let c = coll(&["O", "S(1)", "O(1)", "O(2)"], Space::LGr);
        let r = c.serre_rotate(&ExtContext::default()).unwrap();
        assert!(r.certified);
        assert_eq!(r.objects.last().unwrap().to_string(), "O(3)");
    }
}
