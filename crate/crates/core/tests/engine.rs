use miortho_core::engine::{p_by, xi_by, Route};
use miortho_core::rational::{int, rat};
use miortho_core::suite::enumerate_index_sets;
use miortho_core::{CaseKey, IndexSpec, Poly, Seed, SeedType, SystemParams};
use proptest::prelude::*;

fn seeds(spec: &str) -> Vec<Seed> {
    spec.split(',').map(|s| miortho_core::case::parse_compact_seed(s).unwrap()).collect()
}

#[test]
fn three_seed_jacobi_example() {
    // II2 needs g − 1/2 > 2, so use couplings that admit it.
    let p = SystemParams::jacobi(rat(17, 4), rat(13, 3)).unwrap();
    let d = IndexSpec::new(&p, seeds("I1,II2,I3")).unwrap();
    let xi = xi_by(Route::W, &p, &d).unwrap();
    let pn = p_by(Route::W, &p, &d, 2).unwrap();
    for r in [Route::A, Route::B] {
        assert_eq!(xi_by(r, &p, &d).unwrap(), xi);
        assert_eq!(p_by(r, &p, &d, 2).unwrap(), pn);
    }
    // deg P_{D,n} = deg Ξ_D + n
    assert_eq!(pn.degree().unwrap(), xi.degree().unwrap() + 2);
}

#[test]
fn route_b_hand_value() {
    // −(η + g + 3/2) at g = 5/2
    let p = SystemParams::laguerre(rat(5, 2)).unwrap();
    let d = IndexSpec::new(&p, seeds("I1")).unwrap();
    assert_eq!(p_by(Route::B, &p, &d, 0).unwrap(), Poly::from_ints(&[-4, -1]));
}

#[test]
fn case_keys_round_trip_over_matrix() {
    for p in [SystemParams::laguerre(rat(7, 3)).unwrap(), SystemParams::jacobi(rat(7, 3), rat(11, 4)).unwrap()] {
        for d in enumerate_index_sets(&p, 3, 3) {
            for n in 0..=4 {
                let k = CaseKey::new(&p, &d, n);
                assert_eq!(k.to_string().parse::<CaseKey>().unwrap(), k);
            }
        }
    }
}

#[test]
fn repeated_seed_is_rejected() {
    let p = SystemParams::laguerre(rat(7, 3)).unwrap();
    assert!(IndexSpec::new(&p, seeds("I1,I1")).is_err());
    assert!(IndexSpec::new(&p, seeds("II2")).is_err());
}

fn arb_case() -> impl Strategy<Value = (SystemParams, Vec<Seed>, u32)> {
    let params = prop_oneof![
        Just(SystemParams::laguerre(rat(7, 3)).unwrap()),
        Just(SystemParams::laguerre(rat(17, 4)).unwrap()),
        Just(SystemParams::jacobi(rat(7, 3), rat(11, 4)).unwrap()),
        Just(SystemParams::jacobi(rat(17, 4), rat(13, 3)).unwrap()),
    ];
    (params, prop::collection::vec((0u32..4, any::<bool>()), 1..4), 0u32..4).prop_filter_map(
        "admissible distinct seeds",
        |(p, raw, n)| {
            let mut e: Vec<Seed> = Vec::new();
            for (v, t) in raw {
                let s = Seed::new(v, if t { SeedType::I } else { SeedType::II });
                if !e.contains(&s) {
                    e.push(s);
                }
            }
            IndexSpec::new(&p, e.clone()).ok().map(|_| (p, e, n))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn routes_agree((p, e, n) in arb_case()) {
        let d = IndexSpec::new(&p, e).unwrap();
        let xi = xi_by(Route::W, &p, &d).unwrap();
        let pn = p_by(Route::W, &p, &d, n).unwrap();
        prop_assert_eq!(&xi_by(Route::A, &p, &d).unwrap(), &xi);
        prop_assert_eq!(&xi_by(Route::B, &p, &d).unwrap(), &xi);
        prop_assert_eq!(&p_by(Route::A, &p, &d, n).unwrap(), &pn);
        prop_assert_eq!(&p_by(Route::B, &p, &d, n).unwrap(), &pn);
    }

    #[test]
    fn swapping_two_entries_flips_sign((p, e, n) in arb_case(), route in 0usize..3) {
        prop_assume!(e.len() >= 2);
        let route = Route::ALL[route];
        let d = IndexSpec::new(&p, e.clone()).unwrap();
        let mut f = e;
        f.swap(0, 1);
        let d2 = IndexSpec::new(&p, f).unwrap();
        prop_assert_eq!(xi_by(route, &p, &d2).unwrap(), xi_by(route, &p, &d).unwrap().scale(&int(-1)));
        prop_assert_eq!(p_by(route, &p, &d2, n).unwrap(), p_by(route, &p, &d, n).unwrap().scale(&int(-1)));
    }
}
