use std::collections::BTreeSet;

use quasiconst::rational::{frac, int};
use quasiconst::weyl::{orbit, pairing_value_set};
use quasiconst::{CartanType, GaloisAction, LatticeVector, QVector, Rat, RootDatum};

fn q(xs: &[Rat]) -> QVector {
    QVector(xs.to_vec())
}

fn ints(xs: &[i64]) -> QVector {
    QVector::from_ints(xs)
}

fn set(xs: &[i64]) -> BTreeSet<Rat> {
    xs.iter().map(|&x| int(x)).collect()
}

/// `W`-orbit of a coroot, as a set.
fn coroot_orbit(d: &RootDatum, seed: QVector) -> BTreeSet<QVector> {
    assert!(d.coroot_index(&seed).is_some(), "{seed} is not a coroot");
    orbit(d, &LatticeVector::cocharacter(seed), &GaloisAction::trivial(), false)
        .into_iter()
        .collect()
}

/// `{±e_i ± e_j : i < j}` in dimension `n`.
fn pm_pairs(n: usize) -> BTreeSet<QVector> {
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![0; n];
                v[i] = a;
                v[j] = b;
                out.insert(ints(&v));
            }
        }
    }
    out
}

#[test]
fn g2_orbits_and_values() {
    let g2 = RootDatum::irreducible(CartanType::G, 2).unwrap();
    let eta1 = g2.fundamental_weight(0).unwrap();
    let eta2 = g2.fundamental_weight(1).unwrap();
    assert_eq!(eta1.coords, ints(&[0, -1, 1]));
    assert_eq!(eta2.coords, ints(&[-1, -1, 2]));

    let o3 = coroot_orbit(&g2, ints(&[1, -1, 0]));
    let expected_o3: BTreeSet<QVector> = [[1, -1, 0], [1, 0, -1], [0, 1, -1]]
        .iter()
        .flat_map(|v| [ints(v), -&ints(v)])
        .collect();
    assert_eq!(o3, expected_o3);

    let third = |a, b, c| q(&[frac(a, 3), frac(b, 3), frac(c, 3)]);
    let o1 = coroot_orbit(&g2, third(2, -1, -1));
    let expected_o1: BTreeSet<QVector> = [third(2, -1, -1), third(-1, 2, -1), third(-1, -1, 2)]
        .into_iter()
        .flat_map(|v| [-&v, v])
        .collect();
    assert_eq!(o1, expected_o1);

    assert_eq!(pairing_value_set(&eta1, &o3), set(&[1, 2]));
    assert_eq!(pairing_value_set(&eta2, &o1), set(&[1, 2]));
}

#[test]
fn f4_orbits_and_values() {
    let f4 = RootDatum::irreducible(CartanType::F, 4).unwrap();
    let eta: Vec<LatticeVector> = (0..4).map(|i| f4.fundamental_weight(i).unwrap()).collect();
    assert_eq!(eta[0].coords, ints(&[1, 1, 0, 0]));
    assert_eq!(eta[1].coords, ints(&[2, 1, 1, 0]));
    assert_eq!(eta[2].coords, q(&[frac(3, 2), frac(1, 2), frac(1, 2), frac(1, 2)]));
    assert_eq!(eta[3].coords, ints(&[1, 0, 0, 0]));

    let o1 = coroot_orbit(&f4, ints(&[1, -1, 0, 0]));
    assert_eq!(o1, pm_pairs(4));
    let o2 = coroot_orbit(&f4, ints(&[2, 0, 0, 0]));
    let mut expected_o2 = BTreeSet::new();
    for i in 0..4 {
        let mut v = vec![0; 4];
        v[i] = 2;
        expected_o2.insert(ints(&v));
        expected_o2.insert(-&ints(&v));
    }
    for signs in 0..16 {
        let v: Vec<i64> = (0..4).map(|k| if signs >> k & 1 == 1 { -1 } else { 1 }).collect();
        expected_o2.insert(ints(&v));
    }
    assert_eq!(o2, expected_o2);

    assert_eq!(pairing_value_set(&eta[0], &o1), set(&[0, 1, 2]));
    assert_eq!(pairing_value_set(&eta[2], &o1), set(&[0, 1, 2]));
    assert_eq!(pairing_value_set(&eta[3], &o2), set(&[0, 1, 2]));
    assert_eq!(pairing_value_set(&eta[1], &o1), set(&[0, 1, 2, 3]));
}

#[test]
fn bc_middle_weights() {
    for kind in [CartanType::B, CartanType::C] {
        for n in 2..=8 {
            let d = RootDatum::irreducible(kind, n).unwrap();
            let o1 = coroot_orbit(&d, ints(&{
                let mut v = vec![0; n];
                v[0] = 1;
                v[1] = -1;
                v
            }));
            assert_eq!(o1, pm_pairs(n));
            for j in 1..n - 1 {
                let eta = d.fundamental_weight(j).unwrap();
                let mut e = vec![0; n];
                e[..=j].iter_mut().for_each(|x| *x = 1);
                assert_eq!(eta.coords, ints(&e), "{kind:?}{n} η(α{})", j + 1);
                assert_eq!(pairing_value_set(&eta, &o1), set(&[0, 1, 2]), "{kind:?}{n} η(α{})", j + 1);
            }
            let last = d.fundamental_weight(n - 1).unwrap();
            let expected = match kind {
                CartanType::B => q(&vec![frac(1, 2); n]),
                _ => ints(&vec![1; n]),
            };
            assert_eq!(last.coords, expected);
        }
    }
}
