//! Representation theory of the Levi blocks: GL(k) via Littlewood-Richardson
//! tableaux and Sp2 = SL2 via Clebsch-Gordan.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::weyl::{weyl_dim, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    GL(usize),
    Sp2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockKind,
    pub start: usize,
}

impl Block {
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        match self.kind {
            BlockKind::GL(k) => k,
            BlockKind::Sp2 => 1,
        }
    }

    pub fn slice<'a>(&self, w: &'a [i64]) -> &'a [i64] {
        &w[self.start..self.start + self.len()]
    }

    pub fn is_dominant(&self, part: &[i64]) -> bool {
        match self.kind {
            BlockKind::GL(_) => part.windows(2).all(|p| p[0] >= p[1]),
            BlockKind::Sp2 => part[0] >= 0,
        }
    }

    pub fn dim(&self, part: &[i64]) -> BigInt {
        match self.kind {
            BlockKind::GL(_) => weyl_dim(&Weight::gl(part)).expect("block weight is dominant"),
            BlockKind::Sp2 => BigInt::from(part[0] + 1),
        }
    }

    pub fn dual(&self, part: &[i64]) -> Vec<i64> {
        match self.kind {
            BlockKind::GL(_) => part.iter().rev().map(|c| -c).collect(),
            BlockKind::Sp2 => part.to_vec(),
        }
    }

    /// One-dimensional representations: characters of GL blocks and the
    /// trivial Sp2 representation.
    pub fn is_character(&self, part: &[i64]) -> bool {
        match self.kind {
            BlockKind::GL(_) => part.iter().all(|c| *c == part[0]),
            BlockKind::Sp2 => part[0] == 0,
        }
    }

    pub fn tensor(&self, a: &[i64], b: &[i64]) -> BTreeMap<Vec<i64>, u64> {
        match self.kind {
            BlockKind::GL(_) => gl_tensor(a, b),
            BlockKind::Sp2 => clebsch_gordan(a[0], b[0]).into_iter().map(|m| (vec![m], 1)).collect(),
        }
    }
}

pub fn clebsch_gordan(a: i64, b: i64) -> Vec<i64> {
    (0..=a.min(b)).map(|k| a + b - 2 * k).collect()
}

/// Tensor product of two GL(k) irreducibles with arbitrary dominant weights.
pub fn gl_tensor(a: &[i64], b: &[i64]) -> BTreeMap<Vec<i64>, u64> {
    let k = a.len();
    let sa = a[k - 1];
    let sb = b[k - 1];
    let mu: Vec<i64> = a.iter().map(|x| x - sa).collect();
    let nu: Vec<i64> = b.iter().map(|x| x - sb).collect();
    lr_coefficients(&mu, &nu, k)
        .into_iter()
        .map(|(lambda, c)| (lambda.into_iter().map(|x| x + sa + sb).collect(), c))
        .collect()
}

/// All Littlewood-Richardson coefficients c^lambda_{mu,nu} with at most `rows` rows.
pub fn lr_coefficients(mu: &[i64], nu: &[i64], rows: usize) -> BTreeMap<Vec<i64>, u64> {
    let total: i64 = mu.iter().sum::<i64>() + nu.iter().sum::<i64>();
    let nu_size: i64 = nu.iter().sum();
    let mut out = BTreeMap::new();
    let mut lambda = vec![0i64; rows];
    shapes(mu, nu_size, total, 0, &mut lambda, &mut |lam| {
        let c = count_lr_tableaux(lam, mu, nu);
        if c > 0 {
            out.insert(lam.to_vec(), c);
        }
    });
    out
}

fn shapes(mu: &[i64], extra: i64, remaining: i64, row: usize, lambda: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
    if row == lambda.len() {
        if remaining == 0 {
            f(lambda);
        }
        return;
    }
    let lo = mu[row];
    let mut hi = mu[row] + extra;
    if row > 0 {
        hi = hi.min(lambda[row - 1]);
    }
    let mut v = hi;
    while v >= lo {
        if v <= remaining {
            lambda[row] = v;
            shapes(mu, extra, remaining - v, row + 1, lambda, f);
        }
        v -= 1;
    }
}

/// Number of semistandard fillings of lambda/mu with content nu whose
/// reverse row reading word is a lattice word.
pub fn count_lr_tableaux(lambda: &[i64], mu: &[i64], nu: &[i64]) -> u64 {
    let mut cells = Vec::new();
    for r in 0..lambda.len() {
        if lambda[r] < mu[r] {
            return 0;
        }
        for c in (mu[r]..lambda[r]).rev() {
            cells.push((r, c as usize));
        }
    }
    let letters = nu.iter().take_while(|x| **x > 0).count();
    let width = lambda.first().copied().unwrap_or(0).max(0) as usize;
    let mut grid = vec![vec![0usize; width]; lambda.len()];
    let mut counts = vec![0i64; letters + 1];
    fill(0, &cells, lambda, mu, nu, &mut grid, &mut counts)
}

fn fill(
    idx: usize,
    cells: &[(usize, usize)],
    lambda: &[i64],
    mu: &[i64],
    nu: &[i64],
    grid: &mut Vec<Vec<usize>>,
    counts: &mut Vec<i64>,
) -> u64 {
    if idx == cells.len() {
        return 1;
    }
    let (r, c) = cells[idx];
    let letters = counts.len() - 1;
    let mut upper = letters;
    if (c as i64) + 1 < lambda[r] {
        upper = upper.min(grid[r][c + 1]);
    }
    let mut lower = 1;
    if r > 0 && (c as i64) >= mu[r - 1] {
        lower = grid[r - 1][c] + 1;
    }
    let mut total = 0;
    for v in lower..=upper {
        if counts[v] >= nu[v - 1] {
            continue;
        }
        if v > 1 && counts[v] + 1 > counts[v - 1] {
            continue;
        }
        counts[v] += 1;
        grid[r][c] = v;
        total += fill(idx + 1, cells, lambda, mu, nu, grid, counts);
        counts[v] -= 1;
    }
    grid[r][c] = 0;
    total
}

pub fn to_u64(x: &BigInt) -> u64 {
    x.to_u64().expect("rank fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lr_small_cases() {
        // s_1 * s_1 = s_2 + s_11
        let c = lr_coefficients(&[1, 0], &[1, 0], 2);
        assert_eq!(c.get(&vec![2, 0]), Some(&1));
        assert_eq!(c.get(&vec![1, 1]), Some(&1));
        // s_21 * s_21 in GL3 contains s_321 with coefficient 2
        let c = lr_coefficients(&[2, 1, 0], &[2, 1, 0], 3);
        assert_eq!(c.get(&vec![3, 2, 1]), Some(&2));
        assert_eq!(c.get(&vec![4, 2, 0]), Some(&1));
    }

    #[test]
    fn gl2_tensor_matches_clebsch_gordan() {
        let c = gl_tensor(&[0, -1], &[0, -1]);
        let expect: BTreeMap<Vec<i64>, u64> = [(vec![0, -2], 1), (vec![-1, -1], 1)].into_iter().collect();
        assert_eq!(c, expect);
    }
}
