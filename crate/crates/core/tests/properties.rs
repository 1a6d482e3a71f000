use std::sync::OnceLock;

use proptest::prelude::*;
use quasiconst::classify::{Classifier, Oracle};
use quasiconst::duality::centralizer_levi;
use quasiconst::predicates::{is_cominuscule, is_minuscule, OrbitContext};
use quasiconst::rational::int;
use quasiconst::weyl::{apply_word, dominant_representative};
use quasiconst::{FactorSpec, GaloisAction, LatticeVector, Ray, RootDatum, RootSystemSpec, Side};

struct Case {
    datum: RootDatum,
    galois: GaloisAction,
}

fn cases() -> &'static [Case] {
    static CASES: OnceLock<Vec<Case>> = OnceLock::new();
    CASES.get_or_init(|| {
        let build = |types: &[&str], swap: bool| {
            let factors: Vec<FactorSpec> = types.iter().map(|t| t.parse().unwrap()).collect();
            let datum = RootDatum::build(RootSystemSpec::simply_connected(factors)).unwrap();
            let galois =
                if swap { GaloisAction::swap_factors(&datum, 0, 1).unwrap() } else { GaloisAction::trivial() };
            Case { datum, galois }
        };
        let mut out: Vec<Case> = ["A1", "A3", "A4", "B2", "B3", "C3", "C4", "D4", "D5", "G2", "F4", "E6"]
            .iter()
            .map(|t| build(&[t], false))
            .collect();
        out.push(build(&["A1", "A1"], false));
        out.push(build(&["B2", "B2"], true));
        out.push(build(&["A2", "A2"], true));
        out.push(build(&["A2", "G2"], false));
        // Diagram flip of A3.
        let a3 = RootDatum::irreducible(quasiconst::CartanType::A, 3).unwrap();
        let flip = GaloisAction::new(&a3, vec![vec![2, 1, 0]]).unwrap();
        out.push(Case { datum: a3, galois: flip });
        out
    })
}

/// (case index, fundamental coordinates, word of simple reflections and
/// Galois generators).
fn input() -> impl Strategy<Value = (usize, Vec<i64>, Vec<usize>)> {
    (0..cases().len()).prop_flat_map(|k| {
        let rank = cases()[k].datum.semisimple_rank();
        let moves = rank + cases()[k].galois.generators().len();
        (Just(k), prop::collection::vec(-3i64..=3, rank), prop::collection::vec(0..moves, 0..12))
    })
}

fn transform(case: &Case, v: &LatticeVector, word: &[usize]) -> LatticeVector {
    let rank = case.datum.semisimple_rank();
    word.iter().fold(v.clone(), |acc, &m| {
        if m < rank {
            apply_word(&case.datum, &acc, &[m])
        } else {
            case.galois.apply(&case.datum, m - rank, &acc)
        }
    })
}

fn sparse(coeffs: Vec<i64>) -> impl Strategy<Value = Vec<i64>> {
    // Bias towards vectors with few nonzero entries, where quasi-constant
    // ones live.
    let n = coeffs.len();
    (prop::collection::vec(any::<bool>(), n), Just(coeffs))
        .prop_map(|(keep, c)| c.into_iter().zip(keep).map(|(x, k)| if k { x } else { 0 }).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn classifier_matches_oracle((k, coeffs, _) in input()) {
        let case = &cases()[k];
        let v = case.datum.weight(Side::Character, &coeffs);
        let cls = Classifier::new(&case.datum, &case.galois).classify(&v).unwrap();
        let oracle = Oracle::new(&case.datum, &case.galois, Side::Character).check(&v);
        prop_assert_eq!(cls.is_quasi_constant(), oracle);
    }

    #[test]
    fn sparse_vectors_on_both_sides((k, coeffs, _) in input().prop_flat_map(|(k, c, w)| (Just(k), sparse(c), Just(w)))) {
        let case = &cases()[k];
        for side in [Side::Character, Side::Cocharacter] {
            let v = case.datum.weight(side, &coeffs);
            let cls = Classifier::new(&case.datum, &case.galois).classify(&v).unwrap();
            prop_assert_eq!(cls.is_quasi_constant(), Oracle::new(&case.datum, &case.galois, side).check(&v));
            if let Some(dom) = cls.reconstruct(&case.datum, side) {
                prop_assert_eq!(dom, dominant_representative(&case.datum, &v).0);
            }
        }
    }

    #[test]
    fn verdict_is_invariant((k, coeffs, word) in input(), scale in prop::sample::select(vec![-3i64, -2, -1, 2, 5])) {
        let case = &cases()[k];
        let classifier = Classifier::new(&case.datum, &case.galois);
        let v = case.datum.weight(Side::Character, &coeffs);
        let base = classifier.classify(&v).unwrap().is_quasi_constant();
        let moved = transform(case, &v, &word);
        prop_assert_eq!(classifier.classify(&moved).unwrap().is_quasi_constant(), base);
        prop_assert_eq!(classifier.classify(&v.scale(int(scale))).unwrap().is_quasi_constant(), base);
    }

    #[test]
    fn dominant_representative_is_unique((k, coeffs, word) in input()) {
        let case = &cases()[k];
        let v = case.datum.weight(Side::Cocharacter, &coeffs);
        let rank = case.datum.semisimple_rank();
        let weyl_only: Vec<usize> = word.into_iter().filter(|&m| m < rank).collect();
        let moved = apply_word(&case.datum, &v, &weyl_only);
        let (d1, w1) = dominant_representative(&case.datum, &v);
        let (d2, _) = dominant_representative(&case.datum, &moved);
        prop_assert!(case.datum.is_dominant(&d1));
        prop_assert_eq!(&d1, &d2);
        prop_assert_eq!(apply_word(&case.datum, &v, &w1), d1);
    }

    #[test]
    fn ratio_and_closeness((k, coeffs, word) in input(), p in prop::sample::select(vec![2i64, 3, 5, 7])) {
        let case = &cases()[k];
        let ctx = OrbitContext::new(&case.datum, &case.galois);
        let v = case.datum.weight(Side::Character, &coeffs);
        let r = ctx.orbital_ratio(&v);
        prop_assert!(r >= int(1));
        prop_assert_eq!(ctx.orbital_ratio(&transform(case, &v, &word)), r);
        prop_assert_eq!(ctx.orbital_ratio(&v.scale(int(-2))), r);
        prop_assert_eq!(ctx.is_orbitally_p_close(&v, p).unwrap(), r <= int(p - 1));
        let verdict = ctx.is_quasi_constant(&v);
        prop_assert_eq!(verdict.holds, r == int(1));
        if let Some(w) = verdict.witness {
            prop_assert!(w.reproduces(&case.datum, &v));
        }
    }

    #[test]
    fn minuscule_and_cominuscule_are_quasi_constant((k, coeffs, _) in input().prop_flat_map(|(k, c, w)| (Just(k), sparse(c), Just(w)))) {
        let case = &cases()[k];
        let triv = GaloisAction::trivial();
        let ctx = OrbitContext::new(&case.datum, &triv);
        for side in [Side::Character, Side::Cocharacter] {
            let v = case.datum.weight(side, &coeffs);
            if is_minuscule(&case.datum, &v) || is_cominuscule(&case.datum, &v) {
                prop_assert!(ctx.is_quasi_constant(&v).holds);
            }
        }
    }

    #[test]
    fn centralizer_ignores_scaling((k, coeffs, _) in input(), c in 1i64..6) {
        let case = &cases()[k];
        let v = case.datum.weight(Side::Cocharacter, &coeffs);
        if let Ok(r) = Ray::new(&case.datum, &v) {
            let rc = Ray::new(&case.datum, &v.scale(int(c))).unwrap();
            prop_assert_eq!(centralizer_levi(&case.datum, &rc), centralizer_levi(&case.datum, &r));
        }
    }
}
