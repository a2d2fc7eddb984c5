mod common;

use common::{gl_bbw, sp4_bbw, y_higher, y_prime_higher, Graded};
use flopcalc_core::bundles::levi::{count_lr_tableaux, lr_coefficients};
use flopcalc_core::bundles::{parse_bundle_expr, same_expr, BundleClass, Object, Space};
use flopcalc_core::cohomology::{bbw_cohomology, euler_characteristic, total_space_cohomology};
use flopcalc_core::homalg::{euler_pairing, full_collection, ExtContext};
use flopcalc_core::mutation::{mutate_left, mutate_right, Collection};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn table(e: &BundleClass) -> Graded {
    bbw_cohomology(e).unwrap().dims.iter().map(|(i, d)| (*i, d.to_i128().unwrap())).filter(|(_, d)| *d != 0).collect()
}

fn gr24() -> impl Strategy<Value = BundleClass> {
    (-6i64..=6, 0i64..=4, -4i64..=4, 0i64..=3)
        .prop_map(|(a, m, c, n)| BundleClass::irreducible(Space::Gr24, vec![a, a - m, c, c - n]))
}

fn lgr() -> impl Strategy<Value = BundleClass> {
    (-8i64..=8, 0i64..=5).prop_map(|(a, m)| BundleClass::irreducible(Space::LGr, vec![a, a - m]))
}

fn psp() -> impl Strategy<Value = BundleClass> {
    (-8i64..=8, 0i64..=4).prop_map(|(a, s)| BundleClass::irreducible(Space::PSp, vec![a, s]))
}

fn compact() -> impl Strategy<Value = BundleClass> {
    prop_oneof![gr24(), lgr(), psp(), (1u32..=5, -9i64..=9).prop_map(|(m, k)| BundleClass::line(Space::Proj(m), k))]
}

fn same_space_pair() -> impl Strategy<Value = (BundleClass, BundleClass)> {
    prop_oneof![(gr24(), gr24()), (lgr(), lgr()), (psp(), psp())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gr24_matches_gl4_reference(e in gr24()) {
        let w = e.single().unwrap().levi_weight.clone();
        prop_assert_eq!(table(&e), gl_bbw(&w));
    }

    #[test]
    fn lgr_and_psp_match_sp4_reference(e in prop_oneof![lgr(), psp()]) {
        let w = e.single().unwrap().levi_weight.clone();
        prop_assert_eq!(table(&e), sp4_bbw(w[0], w[1]));
    }

    #[test]
    fn serre_duality(e in compact()) {
        let n = e.space.dimension();
        let dual = e.dual().tensor(&e.space.canonical_class()).unwrap();
        let (h, hd) = (bbw_cohomology(&e).unwrap(), bbw_cohomology(&dual).unwrap());
        for i in 0..=n {
            prop_assert_eq!(h.dim(i), hd.dim(n - i));
        }
    }

    #[test]
    fn euler_is_additive((a, b) in same_space_pair()) {
        let sum = a.add(&b).unwrap();
        prop_assert_eq!(
            euler_characteristic(&sum).unwrap(),
            euler_characteristic(&a).unwrap() + euler_characteristic(&b).unwrap()
        );
    }

    #[test]
    fn rank_is_multiplicative((a, b) in same_space_pair()) {
        prop_assert_eq!(a.tensor(&b).unwrap().rank(), a.rank() * b.rank());
    }

    #[test]
    fn dual_is_an_involution(e in compact()) {
        prop_assert_eq!(e.dual().dual(), e.clone());
        prop_assert_eq!(e.dual().rank(), e.rank());
    }

    #[test]
    fn euler_pairing_is_chi_of_the_hom_bundle((a, b) in same_space_pair()) {
        let hom = a.dual().tensor(&b).unwrap();
        prop_assert_eq!(euler_pairing(&a.kclass(), &b.kclass()).unwrap(), euler_characteristic(&hom).unwrap());
    }

    #[test]
    fn printed_expressions_parse_back(k in -9i64..=9, m in 0u64..=3, copies in 1u64..=3, l in -9i64..=9) {
        let text = format!("Sym^{m} S({k})*{copies} + O({l}) @LGr");
        let e = parse_bundle_expr(&text).unwrap();
        let again = parse_bundle_expr(&e.to_string()).unwrap();
        prop_assert!(same_expr(&e, &again));
        let text = format!("Q({k}) + irr({}, {}, {l}, {}) @Gr24", m as i64 + k, k, l - 2);
        let e = parse_bundle_expr(&text).unwrap();
        let again = parse_bundle_expr(&e.to_string()).unwrap();
        prop_assert!(same_expr(&e, &again));
    }

    #[test]
    fn line_bundles_on_y_match_pushforward_sums(j in -6i64..=10) {
        let lib = total_space_cohomology(Space::Y, &BundleClass::line(Space::Y, j)).unwrap();
        let higher: Graded = lib
            .dims()
            .into_iter()
            .filter(|(i, d)| *i >= 1 && !d.is_zero())
            .map(|(i, d)| (i, d.finite().unwrap().to_i128().unwrap()))
            .collect();
        prop_assert_eq!(higher, y_higher((j, j)));
        prop_assert!(lib.verify_stable(20));
    }

    #[test]
    fn twists_of_s_on_y_match_pushforward_sums(k in -6i64..=6) {
        let e = BundleClass::irreducible(Space::Y, vec![k, k - 1]);
        let lib = total_space_cohomology(Space::Y, &e).unwrap();
        let higher: Graded = lib
            .dims()
            .into_iter()
            .filter(|(i, d)| *i >= 1 && !d.is_zero())
            .map(|(i, d)| (i, d.finite().unwrap().to_i128().unwrap()))
            .collect();
        prop_assert_eq!(higher, y_higher((k, k - 1)));
    }

    #[test]
    fn line_bundles_on_y_prime_match_pushforward_sums(j in -6i64..=10) {
        let lib = total_space_cohomology(Space::YPrime, &BundleClass::line(Space::YPrime, j)).unwrap();
        let higher: Graded = lib
            .dims()
            .into_iter()
            .filter(|(i, d)| *i >= 1 && !d.is_zero())
            .map(|(i, d)| (i, d.finite().unwrap().to_i128().unwrap()))
            .collect();
        prop_assert_eq!(higher, y_prime_higher(j));
    }
}

/// Weyl dimension for GL(n).
fn gl_dim(w: &[i64]) -> i128 {
    let n = w.len();
    let (mut num, mut den) = (1i128, 1i128);
    for i in 0..n {
        for j in i + 1..n {
            num *= (w[i] - w[j] + (j - i) as i64) as i128;
            den *= (j - i) as i128;
        }
    }
    num / den
}

fn partition(max: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(0..=max, 3).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    // sum of c * dim over the decomposition is the product of dimensions
    #[test]
    fn littlewood_richardson_dimensions(mu in partition(3), nu in partition(3)) {
        let lr = lr_coefficients(&mu, &nu, 3);
        let total: i128 = lr.iter().map(|(l, c)| gl_dim(l) * *c as i128).sum();
        prop_assert_eq!(total, gl_dim(&mu) * gl_dim(&nu));
        // symmetric in the two factors
        for (lambda, c) in &lr {
            prop_assert_eq!(count_lr_tableaux(lambda, &nu, &mu), *c);
        }
    }
}

#[test]
fn mutations_conserve_k_classes() {
    let ctx = ExtContext::default();
    for space in [Space::LGr, Space::PSp, Space::Proj(3), Space::Gr24] {
        let objects: Vec<Object> = full_collection(space).into_iter().map(Object::Bundle).collect();
        let c = Collection::new(objects, &ctx).unwrap();
        assert!(c.certified, "{space}");
        for i in 0..c.objects.len() - 1 {
            for step in [mutate_left(&c, i, &ctx).unwrap(), mutate_right(&c, i, &ctx).unwrap()] {
                assert!(step.identity.holds, "{space} {:?} at {i}", step.direction);
                if let Some(ses) = &step.ses {
                    assert!(ses.k_exact);
                }
            }
        }
    }
}

#[test]
fn serre_rotation_keeps_collections_exceptional() {
    let ctx = ExtContext::default();
    for space in [Space::LGr, Space::PSp, Space::Proj(4), Space::Gr24] {
        let objects: Vec<Object> = full_collection(space).into_iter().map(Object::Bundle).collect();
        let mut c = Collection::new(objects, &ctx).unwrap();
        for _ in 0..c.objects.len() {
            c = c.serre_rotate(&ctx).unwrap();
            assert!(c.certified, "{space}");
        }
        // a full turn tensors every member by the anticanonical bundle
        let anti = -space.canonical_class().line_degree().unwrap();
        for (o, b) in c.objects.iter().zip(full_collection(space)) {
            assert_eq!(o, &Object::Bundle(b.twist(anti)));
        }
    }
}

#[test]
fn euler_pairing_against_reference_on_lgr() {
    // chi(O(a), O(b)) = dim of the Sp4 representation with weight (b - a, b - a) up to sign
    for a in -4i64..=4 {
        for b in -4i64..=4 {
            let lib =
                euler_pairing(&BundleClass::line(Space::LGr, a).kclass(), &BundleClass::line(Space::LGr, b).kclass())
                    .unwrap();
            let reference: i128 = sp4_bbw(b - a, b - a).iter().map(|(i, d)| if i % 2 == 0 { *d } else { -d }).sum();
            assert_eq!(lib, BigInt::from(reference));
        }
    }
}
