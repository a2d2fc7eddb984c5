//! Reference computations written without the library, used to cross-check
//! its answers. Dimensions fit comfortably in i128 at these sizes.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// Graded dimensions, zero entries omitted.
pub type Graded = BTreeMap<usize, i128>;

fn gl_weyl_dim(mu: &[i64]) -> i128 {
    let n = mu.len();
    let (mut num, mut den) = (1i128, 1i128);
    for i in 0..n {
        for j in i + 1..n {
            num *= (mu[i] - mu[j] + (j - i) as i64) as i128;
            den *= (j - i) as i128;
        }
    }
    num / den
}

/// BBW for GL(n): sort lambda + rho, count inversions.
pub fn gl_bbw(lambda: &[i64]) -> Graded {
    let n = lambda.len();
    let v: Vec<i64> = lambda.iter().enumerate().map(|(i, a)| a + (n - 1 - i) as i64).collect();
    let mut out = Graded::new();
    let mut sorted = v.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return out;
    }
    let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| v[i] < v[j]).count();
    let mu: Vec<i64> = sorted.iter().enumerate().map(|(i, a)| a - (n - 1 - i) as i64).collect();
    out.insert(inversions, gl_weyl_dim(&mu));
    out
}

/// Weyl dimension of Sp4 with highest weight (a, b), a >= b >= 0.
pub fn sp4_dim(a: i64, b: i64) -> i128 {
    let (x, y) = ((a + 2) as i128, (b + 1) as i128);
    (x - y) * (x + y) * x * y / 6
}

/// BBW for Sp4 with rho = (2, 1): the degree is the number of positive roots
/// e1-e2, e1+e2, 2e1, 2e2 pairing negatively with lambda + rho.
pub fn sp4_bbw(a: i64, b: i64) -> Graded {
    let (x, y) = (a + 2, b + 1);
    let mut out = Graded::new();
    if x == 0 || y == 0 || x.abs() == y.abs() {
        return out;
    }
    let degree = [x - y, x + y, x, y].iter().filter(|p| **p < 0).count();
    let (big, small) = (x.abs().max(y.abs()), x.abs().min(y.abs()));
    out.insert(degree, sp4_dim(big - 2, small - 1));
    out
}

/// Tensor product of two GL2 irreducibles (Clebsch-Gordan).
pub fn gl2_tensor(p: (i64, i64), q: (i64, i64)) -> Vec<(i64, i64)> {
    let k = (p.0 - p.1).min(q.0 - q.1);
    (0..=k).map(|i| (p.0 + q.0 - i, p.1 + q.1 + i)).collect()
}

pub fn add(into: &mut Graded, from: &Graded) {
    for (i, d) in from {
        *into.entry(*i).or_insert(0) += d;
    }
    into.retain(|_, d| *d != 0);
}

/// Fiber degrees summed for the pushforwards below; higher cohomology of the
/// terms vanishes long before this bound.
pub const FIBER_DEGREES: i64 = 40;

/// Higher cohomology on Tot(S(-1)) over LGr of the pullback of the GL2
/// weight `w`: the fiber-degree-l piece is `w (x) Sym^l S (2l)`, weight (2l, l).
/// Returns H^i for i >= 1, and the H^0 dimension of the first `h0_terms`
/// pieces.
pub fn y_higher(w: (i64, i64)) -> Graded {
    let mut out = Graded::new();
    for l in 0..FIBER_DEGREES {
        for piece in gl2_tensor(w, (2 * l, l)) {
            let mut h = sp4_bbw(piece.0, piece.1);
            h.remove(&0);
            add(&mut out, &h);
        }
    }
    out
}

/// The same on Tot(N) over P^3 = Sp4/P with line-bundle pieces: O(k) has
/// weight (k, 0) and the fiber-degree-l piece of O(k) is (2l + k, l).
pub fn y_prime_higher(k: i64) -> Graded {
    let mut out = Graded::new();
    for l in 0..FIBER_DEGREES {
        let mut h = sp4_bbw(2 * l + k, l);
        h.remove(&0);
        add(&mut out, &h);
    }
    out
}

pub fn binomial(n: i128, k: i128) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Cohomology of O(d) on P^m.
pub fn proj_line(m: i64, d: i64) -> Graded {
    let mut out = Graded::new();
    let m = m as i128;
    let d = d as i128;
    if d >= 0 {
        out.insert(0, binomial(d + m, m));
    } else if d < -m {
        out.insert(m as usize, binomial(-d - 1, m));
    }
    out
}

/// `C^d[-i]` text in the form the library reports.
pub fn graded_text(g: &Graded) -> String {
    let parts: Vec<String> = g
        .iter()
        .filter(|(_, d)| **d != 0)
        .map(|(i, d)| {
            let base = if *d == 1 { "C".to_string() } else { format!("C^{d}") };
            if *i == 0 {
                base
            } else {
                format!("{base}[-{i}]")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Rank of the GL2 irreducible (a, b).
pub fn gl2_rank(w: (i64, i64)) -> i128 {
    (w.0 - w.1 + 1) as i128
}
