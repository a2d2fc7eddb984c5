//! The acceptance suite. `criteria` prints one line per criterion and
//! requires every check to pass except the entries of `KNOWN_FAILURES`,
//! which must fail exactly as listed. The other tests recompute derived
//! values with the reference code in `common`.

mod common;

use std::io::Write;

use common::{
    binomial, gl2_tensor, gl_bbw, graded_text, proj_line, sp4_bbw, sp4_dim, y_higher, y_prime_higher, Graded,
};
use flopcalc_core::bundles::{BundleClass, Space};
use flopcalc_core::cohomology::{bbw_cohomology, total_space_cohomology, Dim};
use flopcalc_core::homalg::{ExtContext, OracleMode};
use flopcalc_core::mutation::{cyclic_definition, named_chain, verify_iw_chain, StepStatus};
use flopcalc_core::repro::{run_acceptance, tilting_candidates, CriterionResult, Outcome};
use num_traits::ToPrimitive;

/// Checks that do not pass, by criterion and name prefix, with the reason.
const KNOWN_FAILURES: &[(u32, &str, Outcome, &str)] = &[
    (4, "Tilt_-2 ", Outcome::Fail, "Ext^1(O, S(-2)) = H^1(LGr, Sym^2 S) = C"),
    (4, "Tilt_1 ", Outcome::Fail, "Ext^1(S(1), O(-2)) = H^1(Y, S(-2)) = C"),
    (4, "Tilt_T ", Outcome::Fail, "the same bundle as Tilt_-2"),
    (9, "t-to-s step 1 ", Outcome::Fail, "the start set realizes Tilt_-2"),
    (9, "t-to-s step 3 ", Outcome::Fail, "the end set realizes Tilt_1"),
    (9, "t-to-s step 4 ", Outcome::Fail, "the start set realizes Tilt_1"),
    (9, "t-to-s step 5 ", Outcome::Inconclusive, "no established neighbour to inherit tilting from"),
    (9, "t-to-s step 6 ", Outcome::Inconclusive, "no established neighbour to inherit tilting from"),
    (9, "t-to-u step 1 ", Outcome::Fail, "the start set realizes Tilt_-2"),
    (9, "t-to-u step 3 ", Outcome::Fail, "the end set realizes Tilt_1"),
    (9, "t-to-u step 4 ", Outcome::Fail, "the start set realizes Tilt_1"),
    (9, "t-to-u step 5 ", Outcome::Inconclusive, "no established neighbour to inherit tilting from"),
    (9, "t-to-u step 6 ", Outcome::Inconclusive, "no established neighbour to inherit tilting from"),
];

fn show(results: &[CriterionResult]) {
    let mut out = std::io::stdout().lock();
    for r in results {
        let verdict = if r.outcome() == Outcome::Pass { "PASS" } else { "FAIL" };
        writeln!(out, "criterion {:>2}: {verdict} {}", r.number, r.title).unwrap();
        for c in r.failing() {
            let why = KNOWN_FAILURES
                .iter()
                .find(|k| k.0 == r.number && c.name.starts_with(k.1))
                .map_or("unexpected", |k| k.3);
            writeln!(out, "    {} {}: {} [{why}]", c.outcome, c.name, c.computed).unwrap();
        }
    }
}

#[test]
fn criteria() {
    let results = run_acceptance(&ExtContext::default());
    show(&results);
    assert_eq!(results.iter().map(|r| r.number).collect::<Vec<_>>(), (1..=11).collect::<Vec<_>>());
    let mut matched = vec![false; KNOWN_FAILURES.len()];
    for r in &results {
        for c in r.failing() {
            let k = KNOWN_FAILURES.iter().position(|k| k.0 == r.number && c.name.starts_with(k.1));
            let Some(k) = k else {
                panic!("criterion {}: unexpected {} in {}: {}", r.number, c.outcome, c.name, c.computed)
            };
            assert_eq!(c.outcome, KNOWN_FAILURES[k].2, "{}", c.name);
            assert!(!matched[k], "{} matched twice", c.name);
            matched[k] = true;
        }
    }
    for (k, m) in KNOWN_FAILURES.iter().zip(&matched) {
        assert!(m, "criterion {}: {} was expected not to pass", k.0, k.1);
    }
}

#[test]
fn oracle_off_reports_euler_only() {
    let results = run_acceptance(&ExtContext { oracle: OracleMode::None });
    let c6 = &results[5];
    let line = c6.checks.iter().find(|c| c.name == "Ext(O(-2), Omega_P4|LGr)").unwrap();
    assert_eq!(line.outcome, Outcome::Inconclusive);
    assert!(line.computed.starts_with("EulerOnly(11)"), "{}", line.computed);
}

#[test]
fn report_is_deterministic() {
    let ctx = ExtContext::default();
    let a = flopcalc_core::repro::render_markdown(&run_acceptance(&ctx), &ctx);
    let b = flopcalc_core::repro::render_markdown(&run_acceptance(&ctx), &ctx);
    assert_eq!(a, b);
}

fn table(e: &BundleClass) -> Graded {
    bbw_cohomology(e).unwrap().dims.iter().map(|(i, d)| (*i, d.to_i128().unwrap())).filter(|(_, d)| *d != 0).collect()
}

fn total_higher(sp: Space, e: &BundleClass) -> Graded {
    total_space_cohomology(sp, e)
        .unwrap()
        .dims()
        .into_iter()
        .filter(|(i, d)| *i >= 1 && !d.is_zero())
        .map(|(i, d)| match d {
            Dim::Finite(x) => (i, x.to_i128().unwrap()),
            Dim::Infinite => panic!("infinite higher cohomology"),
        })
        .collect()
}

#[test]
fn gr24_calibration_against_gl4() {
    for k in [-3, -4] {
        let lib = table(&BundleClass::line(Space::Gr24, k));
        assert_eq!(lib, gl_bbw(&[k, k, 0, 0]));
    }
    assert_eq!(graded_text(&gl_bbw(&[-4, -4, 0, 0])), "C[-4]");
    assert_eq!(graded_text(&gl_bbw(&[-3, -3, 0, 0])), "0");
}

#[test]
fn lgr_against_sp4() {
    assert_eq!(graded_text(&sp4_bbw(-3, -3)), "C[-3]");
    for k in 0..=4 {
        for l in -6..=6 {
            let lib = table(&BundleClass::irreducible(Space::LGr, vec![l, l - k]));
            assert_eq!(lib, sp4_bbw(l, l - k), "Sym^{k} S({l})");
        }
    }
}

#[test]
fn line_bundles_on_total_spaces_against_pushforward_sums() {
    for j in -4..=8 {
        assert_eq!(total_higher(Space::Y, &BundleClass::line(Space::Y, j)), y_higher((j, j)), "Y O({j})");
        assert_eq!(total_higher(Space::YPrime, &BundleClass::line(Space::YPrime, j)), y_prime_higher(j), "Y' O({j})");
    }
    // where the statement in the O(-j) form breaks, j in 0..=4
    let y_bad: Vec<i64> = (0..=4).filter(|j| !y_higher((-j, -j)).is_empty()).collect();
    assert_eq!(y_bad, [3, 4]);
    let high_bad: Vec<i64> = (3..=4).filter(|j| y_prime_higher(-j).keys().any(|i| *i > 1)).collect();
    assert_eq!(high_bad, [4]);
    let one_bad: Vec<i64> = (2..=4).filter(|j| y_prime_higher(-j).contains_key(&1)).collect();
    assert_eq!(one_bad, [3, 4]);
    assert_eq!(graded_text(&y_prime_higher(-3)), "C[-1]");
}

/// Tilting on Y decided by the reference code for sums of line bundles and
/// twists of S.
fn y_tilting(summands: &[String]) -> bool {
    let weight = |t: &str| -> (i64, i64) {
        let k: i64 = t[2..t.len() - 1].parse().unwrap();
        if t.starts_with('O') {
            (k, k)
        } else {
            (k, k - 1)
        }
    };
    let ws: Vec<(i64, i64)> = summands.iter().map(|s| weight(s)).collect();
    ws.iter().all(|a| {
        ws.iter().all(|b| {
            let dual = (-a.1, -a.0);
            gl2_tensor(dual, *b).into_iter().all(|w| y_higher(w).is_empty())
        })
    })
}

#[test]
fn tilting_verdicts_against_pushforward_sums() {
    let results = run_acceptance(&ExtContext::default());
    for (name, sp, summands) in tilting_candidates() {
        if sp != Space::Y {
            continue;
        }
        let check = results[3].checks.iter().find(|c| c.name.starts_with(&format!("{name} "))).unwrap();
        assert_eq!(check.outcome == Outcome::Pass, y_tilting(&summands), "{name}");
    }
    // the witness of the failures
    assert_eq!(graded_text(&y_higher((-2, -3))), "C[-1]");
}

#[test]
fn hom_dimensions_against_sp4() {
    // Hom(O(-3), S(-2)) = H^0(S(1)), Hom(O(-1), O) = H^0(O(1))
    assert_eq!(sp4_bbw(1, 0), Graded::from([(0, 4)]));
    assert_eq!(sp4_bbw(1, 1), Graded::from([(0, 5)]));
    // chi(O(-2), Omega|LGr) from 0 -> Omega -> O(-1)^5 -> O -> 0
    assert_eq!(5 * sp4_dim(1, 1) - sp4_dim(2, 2), 11);
    let c6 = &run_acceptance(&ExtContext::default())[5];
    assert_eq!(c6.checks[0].computed, "C^4");
    assert_eq!(c6.checks[1].computed, "C^5");
    assert_eq!(c6.checks[2].computed, "C^11");
}

#[test]
fn resolution_ranks_balance() {
    let rank = |t: &str| -> i128 {
        if t.starts_with('O') {
            1
        } else {
            2
        }
    };
    for (target, against, mults) in flopcalc_core::repro::resolution_cases() {
        let mut sum = rank(target);
        for (j, (a, m)) in against.iter().zip(&mults[1..]).enumerate() {
            let sign = if j % 2 == 0 { -1 } else { 1 };
            sum += sign * rank(a) * *m as i128;
        }
        assert_eq!(sum, 0, "{target}");
    }
}

#[test]
fn spherical_totals_against_sp4() {
    // iota_* O on Y: wedge^q of S(-1) is O, S(-1), O(-3)
    let mut totals = Graded::new();
    for (q, w) in [(0usize, (0, 0)), (1, (-1, -2)), (2, (-3, -3))] {
        for (p, d) in sp4_bbw(w.0, w.1) {
            *totals.entry(p + q).or_insert(0) += d;
        }
    }
    assert_eq!(graded_text(&totals), "C + C[-5]");
    // iota_* S: the same columns tensored with End(S) = S* (x) S
    let mut totals = Graded::new();
    for (q, w) in [(0usize, (0, 0)), (1, (-1, -2)), (2, (-3, -3))] {
        for e in gl2_tensor((1, 0), (0, -1)) {
            for piece in gl2_tensor(e, w) {
                for (p, d) in sp4_bbw(piece.0, piece.1) {
                    *totals.entry(p + q).or_insert(0) += d;
                }
            }
        }
    }
    assert_eq!(graded_text(&totals), "C + C[-5]");
    // iota'_* O on Y': wedge^q N is O, N = (-2, 1), O(-4)
    let mut totals = Graded::new();
    for (q, w) in [(0usize, (0, 0)), (1, (-2, 1)), (2, (-4, 0))] {
        for (p, d) in sp4_bbw(w.0, w.1) {
            *totals.entry(p + q).or_insert(0) += d;
        }
    }
    assert_eq!(graded_text(&totals), "C + C[-5]");
}

#[test]
fn zero_section_ext_against_sp4() {
    // Ext(iota_* O(-1), O_Y(-1)) = H(LGr, O(1) (x) O(-1) (x) det N)[-2], det N = O(-3)
    let shifted: Graded = sp4_bbw(-3, -3).into_iter().map(|(i, d)| (i + 2, d)).collect();
    assert_eq!(graded_text(&shifted), "C[-5]");
    let c8 = &run_acceptance(&ExtContext::default())[7];
    assert_eq!(c8.checks[1].computed, graded_text(&shifted));
}

#[test]
fn cyclic_family_against_projective_space() {
    let ctx = ExtContext::default();
    for n in 2..=6i64 {
        // iota_* O_Z(-k) against L^(k-n): O(k) (x) O(n-k) (x) O(-n) on P^(n-1), shifted by one
        let one: Graded = proj_line(n - 1, 0).into_iter().map(|(i, d)| (i + 1, d)).collect();
        assert_eq!(graded_text(&one), "C[-1]");
        for k in 1..n {
            let def = cyclic_definition(n as u32, k, &ctx).unwrap();
            let mults: Vec<i128> = def.sequences.iter().map(|q| q.multiplicity.to_i128().unwrap()).collect();
            let expected: Vec<i128> = (1..n as i128).map(|j| binomial(n as i128, j)).collect();
            assert_eq!(mults, expected, "n = {n}, k = {k}");
        }
        // line bundle pairs inside a window of n consecutive powers have no higher cohomology
        for d in -(n - 1)..=(n - 1) {
            for l in 0..20 {
                let h = proj_line(n - 1, d + n * l);
                assert!(h.keys().all(|i| *i == 0), "n = {n}, d = {d}");
            }
        }
    }
}

#[test]
fn w_prime_cycle_is_fully_reported() {
    let r = verify_iw_chain(&named_chain("wprime-cycle").unwrap(), &ExtContext::default()).unwrap();
    assert_eq!(r.steps.len(), 4);
    assert_eq!(r.end_matches, Some(true));
    assert!(r.steps.iter().all(|s| s.certificate.status != StepStatus::Failed));
}
