mod common;

use common::{cumulative, generator_edges, spheres};
use freeprod::growth::{ln_big, poincare_series, sphere_counts, weighted_counts};
use freeprod::{
    CayleyTable, FactorSpec, FreeProduct, LengthAssignment, Rational, WeightedFreeProduct, WeightedGenSet,
};
use freeprod::entropy::critical_exponent;
use num_bigint::BigUint;

fn gen_set(group: &str, la: Rational, lb: Rational) -> WeightedGenSet {
    let g = WeightedFreeProduct::cyclic(FreeProduct::parse(group).unwrap(), la, lb).unwrap();
    WeightedGenSet::from_rational(&g).unwrap()
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn as_u64(t: &freeprod::GrowthTable) -> Vec<u64> {
    t.spheres().iter().map(|c| u64::try_from(c).unwrap()).collect()
}

#[test]
fn dp_matches_enumeration_on_generator_metrics() {
    let cases: [(&str, [common::Factor; 2], u64, u64, u64); 6] = [
        ("Z * Z", [None, None], 1, 1, 9),
        ("Z * Z", [None, None], 2, 3, 16),
        ("Z/3 * Z", [Some(3), None], 1, 2, 14),
        ("Z/5 * Z", [Some(5), None], 1, 1, 10),
        ("Z/4 * Z/7", [Some(4), Some(7)], 2, 1, 14),
        ("Z/2 * Z/5", [Some(2), Some(5)], 3, 2, 36),
    ];
    for (group, factors, wa, wb, r) in cases {
        let dp = weighted_counts(&gen_set(group, int(wa as i64), int(wb as i64)), r as f64).unwrap();
        let bfs = spheres(factors, &generator_edges(wa, wb), r);
        assert_eq!(as_u64(&dp)[..=r as usize], bfs[..], "{group} ({wa},{wb})");
        assert!(*cumulative(&bfs).last().unwrap() <= 100_000);
    }
}

#[test]
fn rational_lengths_rescale_to_the_integer_lattice() {
    // lengths 1/2 and 3/4 live on the lattice of 1/4 with weights 2 and 3
    let dp = weighted_counts(&gen_set("Z * Z/4", Rational::new(1, 2), Rational::new(3, 4)), 4.0).unwrap();
    assert_eq!(dp.unit(), Rational::new(1, 4));
    let bfs = spheres([None, Some(4)], &generator_edges(2, 3), 16);
    assert_eq!(as_u64(&dp), bfs);
}

#[test]
fn real_lengths_are_recovered_as_fractions() {
    let g = WeightedFreeProduct::cyclic(FreeProduct::parse("Z * Z").unwrap(), 0.5, 1.25).unwrap();
    let set = WeightedGenSet::from_real(&g, 1000).unwrap();
    assert_eq!(set.unit(), Rational::new(1, 4));
    let g = WeightedFreeProduct::cyclic(FreeProduct::parse("Z * Z").unwrap(), 1.0, std::f64::consts::PI).unwrap();
    assert!(WeightedGenSet::from_real(&g, 1000).is_err());
}

#[test]
fn uniform_scaling_only_relabels_radii() {
    let small = weighted_counts(&gen_set("Z/3 * Z", int(1), int(2)), 12.0).unwrap();
    let big = weighted_counts(&gen_set("Z/3 * Z", int(3), int(6)), 36.0).unwrap();
    assert_eq!(small.spheres(), big.spheres());
    assert_eq!(big.unit(), int(3) * small.unit());
    for r in 1..12 {
        assert_eq!(small.ball_below(r as f64).unwrap(), big.ball_below(3.0 * r as f64).unwrap());
    }
}

#[test]
fn longer_letters_shrink_balls() {
    let base = weighted_counts(&gen_set("Z * Z", int(1), int(2)), 30.0).unwrap();
    let longer = weighted_counts(&gen_set("Z * Z", int(1), int(3)), 30.0).unwrap();
    for n in 0..=30 {
        assert!(longer.closed_ball(n) <= base.closed_ball(n));
        if n > 0 {
            assert!(base.closed_ball(n) > base.closed_ball(n - 1));
        }
    }
}

fn s3() -> CayleyTable {
    // permutations of {0,1,2} in a fixed order, identity first
    let perms = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let mut entries = Vec::new();
    for x in perms {
        for y in perms {
            entries.push(index([x[y[0]], x[y[1]], x[y[2]]]));
        }
    }
    CayleyTable::new(6, entries).unwrap()
}

#[test]
fn table_factor_with_unit_lengths_matches_the_recurrence() {
    let s3 = FactorSpec::table(s3());
    let z2 = FactorSpec::finite_cyclic(2).unwrap();
    let lengths = LengthAssignment::per_element(&s3, vec![int(1); 5]).unwrap();
    let g = WeightedFreeProduct::new(FreeProduct::new(s3.clone(), z2.clone()), lengths, LengthAssignment::generator(int(1)).unwrap())
        .unwrap();
    let dp = weighted_counts(&WeightedGenSet::from_rational(&g).unwrap(), 20.0).unwrap();
    let recurrence = sphere_counts(&s3, &z2, 20).unwrap();
    assert_eq!(dp.spheres(), recurrence.spheres());
}

#[test]
fn table_factor_with_mixed_lengths() {
    // transpositions cost 1, 3-cycles cost 2: S3 * Z against a hand count
    let s3 = FactorSpec::table(s3());
    let lengths = LengthAssignment::per_element(&s3, vec![int(1), int(1), int(1), int(2), int(2)]).unwrap();
    let g = WeightedFreeProduct::new(
        FreeProduct::new(s3, FactorSpec::infinite_cyclic()),
        lengths,
        LengthAssignment::generator(int(1)).unwrap(),
    )
    .unwrap();
    let dp = weighted_counts(&WeightedGenSet::from_rational(&g).unwrap(), 2.0).unwrap();
    // weight 1: 3 transpositions + b^±1; weight 2: 2 three-cycles, b^±2,
    // 3·2·2 alternating products of a transposition and b^±1
    assert_eq!(dp.spheres(), &[BigUint::from(1u32), BigUint::from(5u32), BigUint::from(16u32)]);
}

fn truncated_poincare(set: &WeightedGenSet, c: f64, r_max: f64) -> f64 {
    let t = weighted_counts(set, r_max).unwrap();
    let unit = *t.unit().numer() as f64 / *t.unit().denom() as f64;
    t.spheres()
        .iter()
        .enumerate()
        .filter(|(_, s)| **s > BigUint::ZERO)
        .map(|(n, s)| (ln_big(s) - c * n as f64 * unit).exp())
        .sum()
}

#[test]
fn poincare_closed_form_matches_truncated_sums() {
    for (group, la, lb, r_max) in [("Z * Z", 1, 2, 450.0), ("Z/3 * Z", 1, 1, 350.0), ("Z/4 * Z/5", 2, 1, 400.0)] {
        let exact = WeightedFreeProduct::cyclic(FreeProduct::parse(group).unwrap(), int(la), int(lb)).unwrap();
        let real = exact.to_f64();
        let h = critical_exponent(&real).unwrap().entropy();
        let set = WeightedGenSet::from_rational(&exact).unwrap();
        for factor in [1.1, 1.5, 3.0] {
            let c = factor * h;
            let closed = poincare_series(&real, c).unwrap().value.unwrap();
            let summed = truncated_poincare(&set, c, r_max);
            assert!((closed - summed).abs() <= 1e-8 * closed, "{group} c = {c}: {closed} vs {summed}");
        }
        assert!(poincare_series(&real, 0.99 * h).unwrap().value.is_none());
    }
}

#[test]
fn lattice_cap_is_enforced() {
    let set = gen_set("Z * Z", Rational::new(1, 1000), int(1));
    assert!(freeprod::growth::weighted_counts_capped(&set, 10.0, 5_000).is_err());
    assert!(freeprod::growth::weighted_counts_capped(&set, 1.0, 5_000).is_ok());
}
