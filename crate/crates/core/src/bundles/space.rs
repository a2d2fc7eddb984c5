use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::class::BundleClass;
use super::levi::{Block, BlockKind};
use crate::error::Error;
use crate::weyl::GroupTag;

/// The registered spaces. `Proj(m)` is P^m as GL(m+1)/P with Levi GL1 x GL(m);
/// `PSp` is P^3 = Sp4/P with Levi GL1 x Sp2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Space {
    Gr24,
    Proj(u32),
    LGr,
    PSp,
    Y,
    YPrime,
    Cyclic(u32),
}

impl Space {
    pub fn dimension(self) -> usize {
        match self {
            Space::Gr24 => 4,
            Space::Proj(m) => m as usize,
            Space::LGr | Space::PSp => 3,
            Space::Y | Space::YPrime => 5,
            Space::Cyclic(n) => n as usize,
        }
    }

    pub fn base(self) -> Option<Space> {
        match self {
            Space::Y => Some(Space::LGr),
            Space::YPrime => Some(Space::PSp),
            Space::Cyclic(n) => Some(Space::Proj(n - 1)),
            _ => None,
        }
    }

    pub fn is_total(self) -> bool {
        self.base().is_some()
    }

    /// The space itself when compact, otherwise its zero section.
    pub fn compact(self) -> Space {
        self.base().unwrap_or(self)
    }

    pub fn group(self) -> GroupTag {
        match self.compact() {
            Space::Gr24 => GroupTag::GL(4),
            Space::Proj(m) => GroupTag::GL(m as usize + 1),
            _ => GroupTag::Sp4,
        }
    }

    pub fn levi_blocks(self) -> Vec<Block> {
        match self.compact() {
            Space::Gr24 => vec![Block { kind: BlockKind::GL(2), start: 0 }, Block { kind: BlockKind::GL(2), start: 2 }],
            Space::Proj(m) => {
                vec![Block { kind: BlockKind::GL(1), start: 0 }, Block { kind: BlockKind::GL(m as usize), start: 1 }]
            }
            Space::LGr => vec![Block { kind: BlockKind::GL(2), start: 0 }],
            Space::PSp => vec![Block { kind: BlockKind::GL(1), start: 0 }, Block { kind: BlockKind::Sp2, start: 1 }],
            _ => unreachable!(),
        }
    }

    /// Levi weight of O(k).
    pub fn line_weight(self, k: i64) -> Vec<i64> {
        match self.compact() {
            Space::Gr24 => vec![k, k, 0, 0],
            Space::Proj(m) => {
                let mut w = vec![0; m as usize + 1];
                w[0] = k;
                w
            }
            Space::LGr => vec![k, k],
            Space::PSp => vec![k, 0],
            _ => unreachable!(),
        }
    }

    /// Bundle whose total space this is, as a class on the base.
    pub fn fiber_bundle(self) -> Option<BundleClass> {
        let base = self.base()?;
        Some(match self {
            Space::Y => BundleClass::irreducible(base, vec![-1, -2]),
            Space::YPrime => BundleClass::irreducible(base, vec![-2, 1]),
            Space::Cyclic(n) => BundleClass::line(base, -(n as i64)),
            _ => unreachable!(),
        })
    }

    /// Canonical bundle; trivial on the total spaces.
    pub fn canonical_class(self) -> BundleClass {
        match self {
            Space::Gr24 => BundleClass::line(self, -4),
            Space::Proj(m) => BundleClass::line(self, -(m as i64) - 1),
            Space::LGr => BundleClass::line(self, -3),
            Space::PSp => BundleClass::line(self, -4),
            _ => BundleClass::line(self, 0),
        }
    }

    /// Fano index: O(-m) is acyclic for 0 < m < index.
    pub fn index(self) -> i64 {
        match self.compact() {
            Space::Gr24 | Space::PSp => 4,
            Space::Proj(m) => m as i64 + 1,
            Space::LGr => 3,
            _ => unreachable!(),
        }
    }

    pub fn all_compact() -> Vec<Space> {
        vec![Space::Gr24, Space::Proj(3), Space::LGr, Space::PSp]
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Gr24 => write!(f, "Gr24"),
            Space::Proj(m) => write!(f, "P{m}"),
            Space::LGr => write!(f, "LGr"),
            Space::PSp => write!(f, "PSp"),
            Space::Y => write!(f, "Y"),
            Space::YPrime => write!(f, "Y'"),
            Space::Cyclic(n) => write!(f, "Cyc{n}"),
        }
    }
}

impl Serialize for Space {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let t = text.trim();
        let numbered = |prefix: &str| -> Option<u32> {
            let rest = t.strip_prefix(prefix)?;
            let rest = rest.trim_start_matches('(').trim_end_matches(')');
            rest.parse().ok()
        };
        let space = match t {
            "Gr24" | "Gr(2,4)" => Space::Gr24,
            "P3_GL" | "Gr(1,4)" => Space::Proj(3),
            "LGr" | "LGr_Sp" => Space::LGr,
            "P" | "PSp" | "P3_Sp" | "P(V)" => Space::PSp,
            "Y" | "Tot_Y" => Space::Y,
            "Y'" | "Yprime" | "Tot_Yprime" => Space::YPrime,
            _ => {
                if let Some(n) = numbered("Cyc").or_else(|| numbered("Tot_Cyclic")) {
                    if n < 2 {
                        return Err(Error::UnknownSpace(text.to_string()));
                    }
                    Space::Cyclic(n)
                } else if let Some(m) = numbered("P") {
                    if m < 1 {
                        return Err(Error::UnknownSpace(text.to_string()));
                    }
                    Space::Proj(m)
                } else {
                    return Err(Error::UnknownSpace(text.to_string()));
                }
            }
        };
        Ok(space)
    }
}
