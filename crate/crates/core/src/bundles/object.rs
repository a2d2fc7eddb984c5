use std::fmt;

use serde::{Serialize, Serializer};

use super::class::{BundleClass, KClass};
use super::space::Space;
use crate::error::{Error, Result};

/// How a non-homogeneous object is built out of simpler ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    /// `0 -> sub -> E -> quotient -> 0`. `generator` records that the class
    /// spans a one-dimensional Ext^1(quotient, sub).
    Extension { sub: Box<Object>, quotient: Box<Object>, generator: bool },
    /// Kernel of the evaluation map `Hom(unit, target) (x) unit -> target`,
    /// assumed surjective.
    Kernel { unit: BundleClass, copies: u64, target: Box<Object> },
    /// Cokernel of the coevaluation `source -> Hom(source, unit)^* (x) unit`,
    /// assumed injective.
    Cokernel { source: Box<Object>, unit: BundleClass, copies: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionObject {
    pub space: Space,
    pub construction: Construction,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Object {
    Bundle(BundleClass),
    Derived(Box<ExtensionObject>),
}

impl From<BundleClass> for Object {
    fn from(b: BundleClass) -> Self {
        Object::Bundle(b)
    }
}

impl From<ExtensionObject> for Object {
    fn from(e: ExtensionObject) -> Self {
        Object::Derived(Box::new(e))
    }
}

impl Object {
    pub fn space(&self) -> Space {
        match self {
            Object::Bundle(b) => b.space,
            Object::Derived(e) => e.space,
        }
    }

    pub fn as_bundle(&self) -> Option<&BundleClass> {
        match self {
            Object::Bundle(b) => Some(b),
            Object::Derived(_) => None,
        }
    }

    pub fn kclass(&self) -> KClass {
        match self {
            Object::Bundle(b) => b.kclass(),
            Object::Derived(e) => e.kclass(),
        }
    }

    pub fn rank(&self) -> i64 {
        self.kclass().rank()
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Object::Bundle(b) if b.is_zero())
    }

    /// Tensor with a line bundle, keeping constructions intact.
    pub fn twist(&self, k: i64) -> Object {
        match self {
            Object::Bundle(b) => Object::Bundle(b.twist(k)),
            Object::Derived(e) => {
                let construction = match &e.construction {
                    Construction::Extension { sub, quotient, generator } => Construction::Extension {
                        sub: Box::new(sub.twist(k)),
                        quotient: Box::new(quotient.twist(k)),
                        generator: *generator,
                    },
                    Construction::Kernel { unit, copies, target } => {
                        Construction::Kernel { unit: unit.twist(k), copies: *copies, target: Box::new(target.twist(k)) }
                    }
                    Construction::Cokernel { source, unit, copies } => Construction::Cokernel {
                        source: Box::new(source.twist(k)),
                        unit: unit.twist(k),
                        copies: *copies,
                    },
                };
                Object::from(ExtensionObject { space: e.space, construction, label: twisted_label(&e.label, k) })
            }
        }
    }

    /// Restriction to the zero section. Extension classes are not tracked
    /// through restriction, so the generator flag is dropped.
    pub fn restrict_to_base(&self) -> Result<Object> {
        let base = self.space().base().ok_or(Error::NotTotalSpace(self.space()))?;
        Ok(self.move_to(base))
    }

    /// The same construction read on another space with the same base, such
    /// as a pullback from the zero section. Extension classes are dropped.
    pub fn move_to(&self, space: Space) -> Object {
        match self {
            Object::Bundle(b) => Object::Bundle(b.on(space)),
            Object::Derived(e) => {
                let construction = match &e.construction {
                    Construction::Extension { sub, quotient, .. } => Construction::Extension {
                        sub: Box::new(sub.move_to(space)),
                        quotient: Box::new(quotient.move_to(space)),
                        generator: false,
                    },
                    Construction::Kernel { unit, copies, target } => Construction::Kernel {
                        unit: unit.on(space),
                        copies: *copies,
                        target: Box::new(target.move_to(space)),
                    },
                    Construction::Cokernel { source, unit, copies } => Construction::Cokernel {
                        source: Box::new(source.move_to(space)),
                        unit: unit.on(space),
                        copies: *copies,
                    },
                };
                Object::from(ExtensionObject { space, construction, label: format!("{}|", e.label) })
            }
        }
    }

    /// Dual object: extensions dualize piecewise in reverse order, kernels of
    /// evaluation become cokernels of coevaluation and vice versa.
    pub fn dual(&self) -> Object {
        match self {
            Object::Bundle(b) => Object::Bundle(b.dual()),
            Object::Derived(e) => {
                let construction = match &e.construction {
                    Construction::Extension { sub, quotient, generator } => Construction::Extension {
                        sub: Box::new(quotient.dual()),
                        quotient: Box::new(sub.dual()),
                        generator: *generator,
                    },
                    Construction::Kernel { unit, copies, target } => {
                        Construction::Cokernel { source: Box::new(target.dual()), unit: unit.dual(), copies: *copies }
                    }
                    Construction::Cokernel { source, unit, copies } => {
                        Construction::Kernel { unit: unit.dual(), copies: *copies, target: Box::new(source.dual()) }
                    }
                };
                Object::from(ExtensionObject { space: e.space, construction, label: format!("({})^*", e.label) })
            }
        }
    }

    /// Graded pieces of an iterated extension of bundles, sub to quotient.
    pub fn filtration(&self) -> Option<Vec<BundleClass>> {
        match self {
            Object::Bundle(b) => Some(vec![b.clone()]),
            Object::Derived(e) => match &e.construction {
                Construction::Extension { sub, quotient, .. } => {
                    let mut out = sub.filtration()?;
                    out.extend(quotient.filtration()?);
                    Some(out)
                }
                _ => None,
            },
        }
    }
}

impl ExtensionObject {
    pub fn extension(sub: Object, quotient: Object, generator: bool, label: &str) -> Result<Self> {
        if sub.space() != quotient.space() {
            return Err(Error::SpaceMismatch(sub.space(), quotient.space()));
        }
        Ok(ExtensionObject {
            space: sub.space(),
            construction: Construction::Extension { sub: Box::new(sub), quotient: Box::new(quotient), generator },
            label: label.to_string(),
        })
    }

    pub fn evaluation_kernel(unit: BundleClass, copies: u64, target: Object, label: &str) -> Result<Self> {
        if unit.space != target.space() {
            return Err(Error::SpaceMismatch(unit.space, target.space()));
        }
        Ok(ExtensionObject {
            space: unit.space,
            construction: Construction::Kernel { unit, copies, target: Box::new(target) },
            label: label.to_string(),
        })
    }

    pub fn coevaluation_cokernel(source: Object, unit: BundleClass, copies: u64, label: &str) -> Result<Self> {
        if unit.space != source.space() {
            return Err(Error::SpaceMismatch(unit.space, source.space()));
        }
        Ok(ExtensionObject {
            space: unit.space,
            construction: Construction::Cokernel { source: Box::new(source), unit, copies },
            label: label.to_string(),
        })
    }

    pub fn kclass(&self) -> KClass {
        let mut k = KClass::zero(self.space);
        match &self.construction {
            Construction::Extension { sub, quotient, .. } => {
                k.add_scaled(&sub.kclass(), 1);
                k.add_scaled(&quotient.kclass(), 1);
            }
            Construction::Kernel { unit, copies, target } => {
                k.add_scaled(&unit.kclass(), *copies as i64);
                k.add_scaled(&target.kclass(), -1);
            }
            Construction::Cokernel { source, unit, copies } => {
                k.add_scaled(&unit.kclass(), *copies as i64);
                k.add_scaled(&source.kclass(), -1);
            }
        }
        k
    }
}

fn twisted_label(label: &str, k: i64) -> String {
    if k == 0 {
        label.to_string()
    } else {
        format!("{label}({k})")
    }
}

/// Sigma(k) on Y': the generator extension `0 -> O(k-1) -> Sigma(k) -> O(k+2) -> 0`.
pub fn sigma(k: i64) -> Object {
    let sp = Space::YPrime;
    Object::from(
        ExtensionObject::extension(
            BundleClass::line(sp, k - 1).into(),
            BundleClass::line(sp, k + 2).into(),
            true,
            &format!("Sigma({k})"),
        )
        .expect("same space"),
    )
}

/// The cotangent bundle of P^4 restricted to the quadric, twisted by O(k),
/// as the kernel of `O(k-1)^5 -> O(k)`. On Y it is pulled back.
pub fn omega_p4(space: Space, k: i64) -> Result<Object> {
    if space.compact() != Space::LGr {
        return Err(Error::UnknownAtom { atom: "Omega1P4".into(), space });
    }
    Ok(Object::from(ExtensionObject::evaluation_kernel(
        BundleClass::line(space, k - 1),
        5,
        BundleClass::line(space, k).into(),
        &format!("Omega1P4({k})"),
    )?))
}

/// Printed form in the expression grammar.
impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Bundle(b) => write!(f, "{b}"),
            Object::Derived(e) => match &e.construction {
                Construction::Extension { sub, quotient, .. } => {
                    write!(f, "ext[{sub}; {quotient}]")
                }
                Construction::Kernel { unit, copies, target } => write!(f, "ker[{}; {target}]", unit.scale(*copies)),
                Construction::Cokernel { source, unit, copies } => {
                    write!(f, "coker[{source}; {}]", unit.scale(*copies))
                }
            },
        }
    }
}

impl Serialize for Object {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
