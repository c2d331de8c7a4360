use fracpow::arith::units_mod;
use fracpow::{
    canonicalize_se, canonicalize_sp, enumerate_se, enumerate_sp, validate_se, validate_sp, ConePair, DataSet, Filters,
    SeDataSet, SpDataSet,
};
use proptest::prelude::*;
use proptest::strategy::ValueTree;

/// Arbitrary small SP-shaped tuples; roughly a third land on valid sets.
fn sp_tuple() -> impl Strategy<Value = SpDataSet> {
    (2i64..20).prop_flat_map(|n| {
        let divs: Vec<i64> = (2..=n).filter(|m| n % m == 0).collect();
        (
            0..n + 2,
            Just(n),
            0i64..2,
            -n..2 * n,
            -n..2 * n,
            proptest::collection::vec((proptest::sample::select(divs), -20i64..40), 0..4),
        )
            .prop_map(|(l, n, g0, a, b, cones)| SpDataSet {
                l,
                n,
                g0,
                a,
                b,
                cones: cones.into_iter().map(|(m, k)| ConePair::new(k, m)).collect(),
            })
    })
}

fn se_tuple() -> impl Strategy<Value = SeDataSet> {
    (2i64..12).prop_flat_map(|n| {
        let two_n = 2 * n;
        let divs: Vec<i64> = (2..=two_n).filter(|m| two_n % m == 0).collect();
        (
            0..two_n + 2,
            Just(two_n),
            0i64..2,
            -two_n..2 * two_n,
            proptest::collection::vec((proptest::sample::select(divs), -20i64..40), 0..4),
        )
            .prop_map(|(l, two_n, g0, a, cones)| SeDataSet {
                l,
                two_n,
                g0,
                a,
                cones: cones.into_iter().map(|(m, k)| ConePair::new(k, m)).collect(),
            })
    })
}

proptest! {
    #[test]
    fn sp_validation_is_representative_independent(d in sp_tuple(), sa in -3i64..3, sb in -3i64..3, sk in -3i64..3) {
        let mut shifted = d.clone();
        shifted.a += sa * d.n;
        shifted.b += sb * d.n;
        for c in &mut shifted.cones {
            c.k += sk * c.m;
        }
        prop_assert_eq!(validate_sp(&d), validate_sp(&shifted));
    }

    #[test]
    fn se_validation_is_representative_independent(d in se_tuple(), sa in -3i64..3, sk in -3i64..3) {
        let mut shifted = d.clone();
        // a is a residue modulo n, so a shift by n (not 2n) must not matter
        shifted.a += sa * d.n();
        for c in &mut shifted.cones {
            c.k += sk * c.m;
        }
        prop_assert_eq!(validate_se(&d), validate_se(&shifted));
    }

    #[test]
    fn sp_canonicalization(d in sp_tuple(), rot in 0usize..4) {
        let c = canonicalize_sp(&d);
        prop_assert_eq!(canonicalize_sp(&c), c.clone());
        prop_assert_eq!(validate_sp(&c), validate_sp(&d));
        // swapping a, b and reordering cones lands on the same record
        let mut other = d.clone();
        std::mem::swap(&mut other.a, &mut other.b);
        if !other.cones.is_empty() {
            let r = rot % other.cones.len();
            other.cones.rotate_left(r);
        }
        prop_assert_eq!(canonicalize_sp(&other), c);
    }

    #[test]
    fn se_canonicalization(d in se_tuple()) {
        let c = canonicalize_se(&d);
        prop_assert_eq!(canonicalize_se(&c), c.clone());
        prop_assert_eq!(validate_se(&c), validate_se(&d));
        let mut other = d.clone();
        other.cones.reverse();
        prop_assert_eq!(canonicalize_se(&other), c);
    }

    #[test]
    fn json_round_trip(d in prop_oneof![sp_tuple().prop_map(DataSet::Sp), se_tuple().prop_map(DataSet::Se)]) {
        let d = d.canonicalize();
        let text = serde_json::to_string(&d).unwrap();
        let back: DataSet = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn notation_round_trip(d in prop_oneof![sp_tuple().prop_map(DataSet::Sp), se_tuple().prop_map(DataSet::Se)]) {
        let back = fracpow::notation::parse_data_set(&d.to_string(), Some(d.kind())).unwrap();
        prop_assert_eq!(back, d);
    }
}

#[test]
fn validity_is_what_the_enumerator_sees() {
    // any valid tuple drawn from a small box is in the enumeration of its genus
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for _ in 0..2000 {
        let d = sp_tuple().new_tree(&mut runner).unwrap().current();
        let r = validate_sp(&d);
        if r.is_valid() {
            let all = enumerate_sp(r.genus.unwrap(), &Filters::default()).unwrap();
            assert!(all.contains(&canonicalize_sp(&d)), "{d}");
        }
    }
}

#[test]
fn sp_without_cones_is_rejected() {
    for n in 2..40 {
        let units = units_mod(n).unwrap();
        for l in 1..n {
            for &a in &units {
                for &b in &units {
                    for g0 in 0..3 {
                        assert!(!validate_sp(&SpDataSet::new(l, n, g0, (a, b), &[])).is_valid());
                    }
                }
            }
        }
    }
}

/// Sphere quotient with one extra cone point would need negative genus.
#[test]
fn no_se_sphere_with_single_cone() {
    for two_n in (4..=50).step_by(2) {
        let n = two_n / 2;
        let divs: Vec<i64> = (2..=two_n).filter(|m| two_n % m == 0).collect();
        for l in 2..two_n {
            for a in 1..n {
                for &m in &divs {
                    for k in 0..m {
                        let d = SeDataSet::new(l, two_n, 0, a, &[(k, m)]);
                        assert!(!validate_se(&d).is_valid(), "{d}");
                    }
                }
            }
        }
    }
}

#[test]
fn se_enumeration_has_no_single_cone_spheres() {
    for g in 1..=10 {
        for d in enumerate_se(g, &Filters::default()).unwrap() {
            assert!(!(d.g0 == 0 && d.cones.len() == 1), "{d}");
        }
    }
}

/// Conditions (i)-(iv) already force an integral SP genus; the explicit check
/// never fires on its own.
#[test]
fn sp_integrality_follows_from_the_conditions() {
    use fracpow::arith::{cone_weight, divisors};
    use fracpow::Condition;

    fn multisets(parts: &[i64], len: usize) -> Vec<Vec<i64>> {
        if len == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for (i, &p) in parts.iter().enumerate() {
            for mut rest in multisets(&parts[i..], len - 1) {
                rest.insert(0, p);
                out.push(rest);
            }
        }
        out
    }

    let mut odd_candidates = 0;
    for n in 2..=24 {
        let parts: Vec<i64> = divisors(n).into_iter().filter(|&m| m > 1).collect();
        let units = units_mod(n).unwrap();
        for len in 1..=3 {
            for orders in multisets(&parts, len) {
                if orders.iter().map(|&m| cone_weight(n, m)).sum::<i64>() % 2 == 0 {
                    continue;
                }
                let ks: Vec<Vec<i64>> = orders.iter().map(|&m| units_mod(m).unwrap()).collect();
                let mut choice = vec![0usize; len];
                loop {
                    let cones: Vec<(i64, i64)> =
                        orders.iter().zip(&ks).zip(&choice).map(|((&m, k), &i)| (k[i], m)).collect();
                    for l in 1..n {
                        for &a in &units {
                            for &b in &units {
                                let r = validate_sp(&SpDataSet::new(l, n, 0, (a, b), &cones));
                                odd_candidates += 1;
                                let four =
                                    [Condition::Structure, Condition::Units, Condition::Twist, Condition::Balance];
                                assert!(!four.iter().all(|&c| r.passes(c)), "n = {n}, l = {l}, {a} {b} {cones:?}");
                            }
                        }
                    }
                    let mut i = 0;
                    loop {
                        if i == len {
                            break;
                        }
                        choice[i] += 1;
                        if choice[i] < ks[i].len() {
                            break;
                        }
                        choice[i] = 0;
                        i += 1;
                    }
                    if i == len {
                        break;
                    }
                }
            }
        }
    }
    assert!(odd_candidates > 0);
}
