//! Twist functors of the zero section of Tot(O(-n)) over P^{n-1} acting on
//! powers of `L`, the pullback of O(-1).

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::bundles::{BundleClass, Object, Space};
use crate::cohomology::Dim;
use crate::error::{Error, Result};
use crate::homalg::{ext_zero_section, ExtContext, ExtTable};

/// `L^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinePower(pub i64);

impl LinePower {
    pub fn object(self, n: u32) -> Object {
        BundleClass::line(Space::Cyclic(n), -self.0).into()
    }
}

impl fmt::Display for LinePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L^{}", self.0)
    }
}

impl Serialize for LinePower {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for LinePower {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        let bad = || Error::Parse { pos: 0, msg: format!("expected L^j, found {t:?}") };
        match t {
            "O" => Ok(LinePower(0)),
            "L" => Ok(LinePower(1)),
            _ => t.strip_prefix("L^").and_then(|r| r.parse().ok()).map(LinePower).ok_or_else(bad),
        }
    }
}

/// `Tilt_k = L^{k-n+1} + ... + L^k` on Tot(O(-n)).
pub fn cyclic_tilt(n: u32, k: i64) -> Vec<LinePower> {
    (k - n as i64 + 1..=k).map(LinePower).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistImage {
    pub n: u32,
    pub k: i64,
    pub input: LinePower,
    pub output: LinePower,
    /// `Ext(iota_* O_Z(-k), input)`, which decides the rule used.
    pub justification: ExtTable,
}

/// The twist by `iota_* O_Z(-k)` on a line-bundle label. Labels with
/// vanishing Ext are fixed; `L^{k-n}`, whose Ext is one-dimensional in
/// degree 1, goes to `L^k`.
pub fn cyclic_twist_orbit(n: u32, k: i64, label: LinePower, ctx: &ExtContext) -> Result<TwistImage> {
    if n < 2 {
        return Err(Error::OutsideWindow(format!("n = {n} is below 2")));
    }
    let nn = n as i64;
    if !(0..=nn).contains(&k) {
        return Err(Error::OutsideWindow(format!("twist index {k} is outside 0..={n}")));
    }
    let j = label.0;
    if j < k - nn || j > k - 1 {
        return Err(Error::OutsideWindow(format!("{label} is outside L^{}..L^{} for k = {k}", k - nn, k - 1)));
    }
    let space = Space::Cyclic(n);
    let f = BundleClass::line(space.base().unwrap(), -k);
    let justification = ext_zero_section(&f, &label.object(n), ctx)?;
    let dims = justification
        .exact_dims()
        .ok_or_else(|| Error::Inconclusive(format!("Ext(iota_* O_Z({}), {label}) = {justification}", -k)))?;
    let output = if j == k - nn {
        let expected = [(1usize, Dim::from(1u64))].into_iter().collect();
        if dims != expected {
            return Err(Error::Hypothesis(format!("Ext to {label} is {justification}, not C[-1]")));
        }
        LinePower(k)
    } else {
        if !dims.is_empty() {
            return Err(Error::Hypothesis(format!("Ext to {label} is {justification}, not zero")));
        }
        label
    };
    Ok(TwistImage { n, k, input: label, output, justification })
}

/// Applies the twists `k = first, ..., first + n - 1` in order to every label.
pub fn cyclic_composite(
    n: u32,
    first: i64,
    labels: &[LinePower],
    ctx: &ExtContext,
) -> Result<(Vec<LinePower>, Vec<TwistImage>)> {
    let mut current = labels.to_vec();
    let mut log = Vec::new();
    for k in first..first + n as i64 {
        let mut next = Vec::new();
        for l in &current {
            let img = cyclic_twist_orbit(n, k, *l, ctx)?;
            next.push(img.output);
            log.push(img);
        }
        current = next;
    }
    Ok((current, log))
}
