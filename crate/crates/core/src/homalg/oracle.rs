//! Map-rank oracles for composition maps between spaces of sections.
//!
//! `Quadric` computes multiplication ranks on the quadric threefold
//! `x0*x4 + x1*x3 + x2^2 = 0` by explicit linear algebra and, for other
//! irreducible homogeneous inputs, uses that a nonzero equivariant map onto an
//! irreducible representation is surjective.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bundles::{BundleClass, Construction, Object, Space};
use crate::cohomology::bbw_cohomology;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OracleMode {
    Quadric,
    None,
}

type Monomial = [u32; 5];

/// Normal-form monomials of degree d: x2 appears with exponent at most one.
fn basis(d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for e2 in 0..=d.min(1) {
        let rest = d - e2;
        for a in 0..=rest {
            for b in 0..=rest - a {
                for c in 0..=rest - a - b {
                    let e = rest - a - b - c;
                    out.push([a, b, e2, c, e]);
                }
            }
        }
    }
    out.sort();
    out
}

/// Reduce a monomial with the relation x2^2 = -x0*x4 - x1*x3.
fn normal_form(m: Monomial) -> BTreeMap<Monomial, BigInt> {
    let s = m[2] / 2;
    let r = m[2] % 2;
    let mut out = BTreeMap::new();
    // (-x0x4 - x1x3)^s = (-1)^s * sum_j C(s,j) (x0x4)^j (x1x3)^{s-j}
    let sign = if s.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    let mut binom = BigInt::one();
    for j in 0..=s {
        let mono = [m[0] + j, m[1] + (s - j), r, m[3] + (s - j), m[4] + j];
        *out.entry(mono).or_insert_with(BigInt::zero) += &sign * &binom;
        binom = binom * BigInt::from(s - j) / BigInt::from(j + 1);
    }
    out
}

pub fn quadric_sections(d: u32) -> usize {
    basis(d).len()
}

/// Rank of H0(O(a)) (x) H0(O(b)) -> H0(O(a+b)) on the quadric threefold.
pub fn quadric_mult_rank(a: u32, b: u32) -> BigInt {
    let target = basis(a + b);
    let index: BTreeMap<Monomial, usize> = target.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let (ba, bb) = (basis(a), basis(b));
    for p in &ba {
        for q in &bb {
            let prod = [p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3], p[4] + q[4]];
            let mut row = vec![BigRational::zero(); target.len()];
            for (mono, c) in normal_form(prod) {
                row[index[&mono]] += BigRational::from_integer(c);
            }
            rows.push(row);
        }
    }
    BigInt::from(rank(rows))
}

fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|i| !rows[*i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = BigRational::one() / rows[r][c].clone();
        let pivot_row: Vec<BigRational> = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in c..cols {
                    let delta = &f * &pivot_row[k];
                    rows[i][k] -= delta;
                }
            }
        }
        rows[r] = pivot_row;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankFact {
    #[serde(serialize_with = "crate::decimal::int")]
    pub rank: BigInt,
    pub source: String,
}

fn h0(e: &BundleClass) -> BigInt {
    bbw_cohomology(e).expect("compact space").dim(0)
}

/// Rank of composition `Hom(x, u) (x) Hom(u, t) -> Hom(x, t)` for irreducible
/// homogeneous bundles on a compact space, when an oracle applies.
pub fn composition_rank(x: &BundleClass, u: &BundleClass, t: &BundleClass, mode: OracleMode) -> Option<RankFact> {
    if mode == OracleMode::None || x.space.is_total() {
        return None;
    }
    let (xi, ui, ti) = (x.single()?, u.single()?, t.single()?);
    let hom_xu = h0(&x.dual().tensor(u).ok()?);
    let hom_ut = h0(&u.dual().tensor(t).ok()?);
    let hom_xt = h0(&x.dual().tensor(t).ok()?);
    if hom_xu.is_zero() || hom_ut.is_zero() {
        return Some(RankFact { rank: BigInt::zero(), source: "zero factor".into() });
    }
    if x.space == Space::LGr {
        if let (Some(dx), Some(du), Some(dt)) = (x.line_degree(), u.line_degree(), t.line_degree()) {
            let (a, b) = ((du - dx) as u32, (dt - du) as u32);
            return Some(RankFact {
                rank: quadric_mult_rank(a, b),
                source: format!("quadric multiplication H0(O({a})) x H0(O({b})) -> H0(O({}))", a + b),
            });
        }
    }
    let target_irreducible = xi.is_line() || ti.is_line();
    let factor_generated = xi.is_line() || ui.is_line() || ti.is_line();
    if target_irreducible && factor_generated {
        return Some(RankFact {
            rank: hom_xt,
            source: format!("nonzero equivariant map onto the irreducible Hom({x}, {t}) on {}", x.space),
        });
    }
    None
}

/// Exponent vectors of degree d in n variables, in a fixed order.
fn monomials(n: usize, d: i64) -> Vec<Vec<u32>> {
    if d < 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![vec![d as u32]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

/// `Hom(F, O(c))` on P^m for `F` built from a line bundle by coevaluation
/// cokernels into line bundles, as integer vectors of polynomials: component
/// `k` has degree `c - layout[k]`. Arithmetic is checked; an overflow makes
/// the model decline.
struct SyzygyModel {
    vars: usize,
    graded: RefCell<HashMap<i64, Rc<Graded>>>,
}

struct Graded {
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

type Vector = Vec<i128>;

impl SyzygyModel {
    fn new(vars: usize) -> Self {
        SyzygyModel { vars, graded: RefCell::new(HashMap::new()) }
    }

    fn degree(&self, d: i64) -> Rc<Graded> {
        self.graded
            .borrow_mut()
            .entry(d)
            .or_insert_with(|| {
                let monomials = monomials(self.vars, d);
                let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
                Rc::new(Graded { monomials, index })
            })
            .clone()
    }

    fn layout(&self, f: &Object) -> Option<Vec<i64>> {
        match f {
            Object::Bundle(b) => Some(vec![b.line_degree()?]),
            Object::Derived(e) => match &e.construction {
                Construction::Cokernel { unit, copies, .. } => Some(vec![unit.line_degree()?; *copies as usize]),
                _ => None,
            },
        }
    }

    fn width(&self, layout: &[i64], c: i64) -> usize {
        layout.iter().map(|l| self.degree(c - l).monomials.len()).sum()
    }

    /// `v * mono` where v lives in degree c and mono has degree e.
    fn multiply(&self, layout: &[i64], c: i64, v: &Vector, mono: &[u32]) -> Vector {
        let e: i64 = mono.iter().map(|x| *x as i64).sum();
        let mut out = vec![0; self.width(layout, c + e)];
        let (mut src, mut dst) = (0, 0);
        for l in layout {
            let (from, to) = (self.degree(c - l), self.degree(c + e - l));
            for (i, m) in from.monomials.iter().enumerate() {
                let x = v[src + i];
                if x != 0 {
                    let prod: Vec<u32> = m.iter().zip(mono).map(|(a, b)| a + b).collect();
                    // multiplication by a monomial is injective on monomials
                    out[dst + to.index[&prod]] = x;
                }
            }
            src += from.monomials.len();
            dst += to.monomials.len();
        }
        out
    }

    fn hom_basis(&self, f: &Object, c: i64) -> Option<Vec<Vector>> {
        match f {
            Object::Bundle(b) => {
                let n = self.degree(c - b.line_degree()?).monomials.len();
                Some(
                    (0..n)
                        .map(|i| {
                            let mut v = vec![0; n];
                            v[i] = 1;
                            v
                        })
                        .collect(),
                )
            }
            Object::Derived(e) => {
                let Construction::Cokernel { source, unit, copies } = &e.construction else {
                    return None;
                };
                let b = unit.line_degree()?;
                let inner = self.layout(source)?;
                let psi = self.hom_basis(source, b)?;
                if psi.len() != *copies as usize {
                    return None;
                }
                // phi = (phi_i) of degree c - b is in Hom(F, O(c)) iff sum phi_i psi_i = 0
                let monos = self.degree(c - b);
                let mut images = Vec::new();
                for p in &psi {
                    for m in &monos.monomials {
                        images.push(self.multiply(&inner, b, p, m));
                    }
                }
                left_kernel(images, self.width(&inner, c))
            }
        }
    }
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Fraction-free forward elimination on the first `cols` columns; the
/// remaining columns are carried along. Returns the rank, or None on overflow.
fn echelon(rows: &mut [Vector], cols: usize) -> Option<usize> {
    const LARGE: i128 = 1 << 60;
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|i| rows[*i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot = &head[r];
        for row in tail.iter_mut().filter(|row| row[c] != 0) {
            let g = gcd(pivot[c], row[c]);
            let (a, b) = (pivot[c] / g, row[c] / g);
            let mut big = false;
            for k in c..row.len() {
                row[k] = row[k].checked_mul(a)?.checked_sub(pivot[k].checked_mul(b)?)?;
                big |= row[k].abs() > LARGE;
            }
            if big {
                let g = row.iter().fold(0, |g, x| gcd(g, *x));
                if g > 1 {
                    row.iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
    }
    Some(r)
}

fn integer_rank(mut rows: Vec<Vector>) -> Option<usize> {
    let cols = rows.first().map_or(0, |r| r.len());
    echelon(&mut rows, cols)
}

/// Basis of the vectors v with `sum v_i rows_i = 0`.
fn left_kernel(rows: Vec<Vector>, cols: usize) -> Option<Vec<Vector>> {
    let n = rows.len();
    let mut aug: Vec<Vector> = rows
        .into_iter()
        .enumerate()
        .map(|(i, mut r)| {
            r.extend((0..n).map(|j| i128::from(i == j)));
            r
        })
        .collect();
    let r = echelon(&mut aug, cols)?;
    Some(aug.into_iter().skip(r).map(|row| row[cols..].to_vec()).collect())
}

/// Rank of `Hom(x, u) (x) Hom(u, t) -> Hom(x, t)` on P^m when `x` is a line
/// bundle followed by coevaluation cokernels into line bundles and `u`, `t`
/// are line bundles, computed in the polynomial ring. `copies` must be the
/// dimension of `Hom(x, u)`.
pub fn syzygy_composition_rank(
    x: &Object,
    u: &BundleClass,
    t: &BundleClass,
    copies: u64,
    mode: OracleMode,
) -> Option<RankFact> {
    let Space::Proj(m) = x.space() else { return None };
    if mode == OracleMode::None {
        return None;
    }
    let (du, dt) = (u.line_degree()?, t.line_degree()?);
    // ranks are unchanged by a common twist, so the cache is keyed on a normal form
    let shift = -base_degree(x)?;
    let key = format!("P{m} {} {} {} {copies}", x.twist(shift), du + shift, dt + shift);
    let cache = SYZYGY_RANKS.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let fact = syzygy_rank_uncached(x, m, du, dt, copies);
    cache.lock().unwrap().insert(key, fact.clone());
    fact
}

static SYZYGY_RANKS: OnceLock<Mutex<HashMap<String, Option<RankFact>>>> = OnceLock::new();

fn base_degree(x: &Object) -> Option<i64> {
    match x {
        Object::Bundle(b) => b.line_degree(),
        Object::Derived(e) => match &e.construction {
            Construction::Cokernel { source, .. } => base_degree(source),
            _ => None,
        },
    }
}

fn syzygy_rank_uncached(x: &Object, m: u32, du: i64, dt: i64, copies: u64) -> Option<RankFact> {
    let model = SyzygyModel::new(m as usize + 1);
    let layout = model.layout(x)?;
    let basis = model.hom_basis(x, du)?;
    if basis.len() as u64 != copies {
        return None;
    }
    let monos = model.degree(dt - du);
    let mut rows = Vec::new();
    for v in &basis {
        for mono in &monos.monomials {
            rows.push(model.multiply(&layout, du, v, mono));
        }
    }
    Some(RankFact {
        rank: BigInt::from(integer_rank(rows)?),
        source: format!("multiplication in the coordinate ring of P{m} on the syzygies of {x}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn section_counts() {
        assert_eq!(quadric_sections(1), 5);
        assert_eq!(quadric_sections(2), 14);
        assert_eq!(quadric_sections(3), 30);
    }

    #[test]
    fn multiplication_ranks() {
        assert_eq!(quadric_mult_rank(1, 1), 14.into());
        assert_eq!(quadric_mult_rank(1, 2), 30.into());
        assert_eq!(quadric_mult_rank(0, 3), 30.into());
        assert_eq!(quadric_mult_rank(2, 2), 55.into());
    }

    #[test]
    fn modes() {
        let l = |k| BundleClass::line(Space::LGr, k);
        let f = composition_rank(&l(-2), &l(-1), &l(0), OracleMode::Quadric).unwrap();
        assert_eq!(f.rank, 14.into());
        assert!(composition_rank(&l(-2), &l(-1), &l(0), OracleMode::None).is_none());
        let s1 = BundleClass::irreducible(Space::LGr, vec![1, 0]);
        let g = composition_rank(&l(0), &s1, &l(2), OracleMode::Quadric).unwrap();
        assert_eq!(g.rank, 14.into());
    }

    #[test]
    fn syzygies_of_the_koszul_complex() {
        use crate::bundles::ExtensionObject;
        let sp = Space::Proj(3);
        let l = |k| BundleClass::line(sp, k);
        let f1: Object = ExtensionObject::coevaluation_cokernel(l(0).into(), l(1), 4, "F1").unwrap().into();
        // Hom(F1, O(2)) is the 6-dimensional space of linear Koszul relations
        let model = SyzygyModel::new(4);
        assert_eq!(model.hom_basis(&f1, 2).unwrap().len(), 6);
        // the relations generate all syzygies of degree 3: 4 * 10 - 20 = 20
        let r = syzygy_composition_rank(&f1, &l(2), &l(3), 6, OracleMode::Quadric).unwrap();
        assert_eq!(r.rank, 20.into());
        assert!(syzygy_composition_rank(&f1, &l(2), &l(3), 6, OracleMode::None).is_none());
        let bare: Object = l(0).into();
        assert_eq!(syzygy_composition_rank(&bare, &l(1), &l(2), 4, OracleMode::Quadric).unwrap().rank, 10.into());
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![
            vec![BigRational::from_integer((-2).into()), BigRational::from_integer(4.into())],
            vec![BigRational::from_integer(1.into()), BigRational::from_integer((-2).into())],
        ];
        assert_eq!(rank(rows), 1);
    }
}
