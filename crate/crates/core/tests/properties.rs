use freeprod::bounds::{pair_inequality_lse, systole_lb};
use freeprod::entropy::solve_h_f2;
use freeprod::scenarios::{run_ex54, run_ex55};
use freeprod::{FreeProduct, ReducedWord, Side, SubgroupClass};
use proptest::prelude::*;

fn group(name: &str) -> FreeProduct {
    FreeProduct::parse(name).unwrap()
}

// Alternating word from (starts on A, exponents); exponents are taken as-is
// and may cancel into shorter normal forms.
fn build(g: &FreeProduct, start_a: bool, exps: &[i64]) -> ReducedWord {
    let mut side = if start_a { Side::A } else { Side::B };
    let mut w = ReducedWord::identity();
    for &k in exps {
        if let Ok(l) = g.letter(side, k) {
            w = g.mul(&w, &l);
        }
        side = side.other();
    }
    w
}

fn exps() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![-3i64..=-1, 1i64..=3], 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn classifier_is_conjugation_equivariant(
        name in prop::sample::select(vec!["Z/5 * Z", "Z/3 * Z/3", "Z * Z", "Z/2 * Z/3"]),
        words in prop::collection::vec((any::<bool>(), exps()), 1..4),
        conj in (any::<bool>(), exps()),
    ) {
        let g = group(name);
        let set: Vec<ReducedWord> = words.iter().map(|(s, e)| build(&g, *s, e)).filter(|w| !w.is_identity()).collect();
        prop_assume!(!set.is_empty());
        let h = build(&g, conj.0, &conj.1);
        let class = g.classify_small_set(&set).unwrap();
        let moved: Vec<ReducedWord> = set.iter().map(|s| g.conjugate(s, &h)).collect();
        let moved_class = g.classify_small_set(&moved).unwrap();
        prop_assert_eq!(class.tag(), moved_class.tag());
        if !matches!(class, SubgroupClass::ContainsFreePair { .. }) {
            prop_assert_eq!(g.transport_class(&class, &h), moved_class);
        }
    }

    #[test]
    fn powers_of_one_element_are_cyclic(start_a: bool, e in exps(), ks in prop::collection::vec(-4i64..=4, 1..4)) {
        let g = group("Z/3 * Z");
        let x = build(&g, start_a, &e);
        prop_assume!(!x.is_identity() && g.core_length(&x).unwrap() >= 2);
        let set: Vec<ReducedWord> = ks.iter().filter(|&&k| k != 0).map(|&k| g.pow(&x, k)).collect();
        prop_assume!(!set.is_empty());
        let (root, _) = g.canonical_root(&x).unwrap();
        prop_assert_eq!(g.classify_small_set(&set).unwrap(), SubgroupClass::InfiniteCyclic { root });
    }

    #[test]
    fn canonical_root_flips_sign_under_inversion(start_a: bool, e in exps()) {
        let g = group("Z * Z");
        let x = build(&g, start_a, &e);
        prop_assume!(!x.is_identity() && g.core_length(&x).unwrap() >= 2);
        let (r, q) = g.canonical_root(&x).unwrap();
        let (ri, qi) = g.canonical_root(&g.inv(&x)).unwrap();
        prop_assert_eq!(r.clone(), ri);
        prop_assert_eq!(q, -qi);
        prop_assert_eq!(g.pow(&r, q), x);
    }

    #[test]
    fn free_group_entropy_bounds(l1 in 0.01f64..50.0, l2 in 0.01f64..50.0, lambda in 0.05f64..20.0) {
        let h = solve_h_f2(l1, l2).unwrap().h;
        let ln3 = 3f64.ln();
        // the symmetric solutions for the shorter and longer length bracket h
        prop_assert!(h <= ln3 / l1.min(l2) * (1.0 + 1e-12));
        prop_assert!(h >= ln3 / l1.max(l2) * (1.0 - 1e-12));
        let scaled = solve_h_f2(lambda * l1, lambda * l2).unwrap().h;
        prop_assert!((scaled * lambda - h).abs() <= 1e-10 * h);
        prop_assert!(solve_h_f2(l1 * 1.01, l2).unwrap().h < h);
    }

    #[test]
    fn systole_bound_closure_and_monotonicity(h in 0.01f64..10.0, d in 0.01f64..10.0) {
        let s = systole_lb(h, d).unwrap();
        let closure = (h * s).exp_m1() * (2.0 * d * h).exp_m1();
        prop_assert!((closure - 4.0).abs() <= 1e-9);
        prop_assert!(systole_lb(h, d * 1.01).unwrap() < s);
        let pair = pair_inequality_lse(h, 2.0 * d).unwrap();
        // the gap is relatively e^{-2DH}, below rounding for large DH
        prop_assert!(pair.sharp >= pair.displayed * (1.0 - 1e-14));
    }

    #[test]
    fn thin_fat_bound_is_never_beaten(eps in 0.005f64..=1.0, eps_prime in 0.005f64..=1.0) {
        let r = run_ex55(eps, eps_prime).unwrap();
        prop_assert!(r.thm_bound < r.sys);
        prop_assert!(r.sharpness_ratio > 1.0);
        prop_assert!(r.diam_lo < r.diam_hi);
    }

    #[test]
    fn torsion_entropy_stays_below_ceiling(p in 2u32..12, eps in 1e-4f64..=1.0, b in 0.1f64..5.0) {
        let r = run_ex54(p, eps, b).unwrap();
        prop_assert!(r.h <= r.ceiling);
        prop_assert!((r.ceiling * b - f64::from(2 * p - 1).ln()).abs() <= 1e-10);
    }
}
