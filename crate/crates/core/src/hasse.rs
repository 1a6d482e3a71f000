//! Orbital ratios, purity bounds for parabolic types, and the
//! character-level Hasse generator certificate.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::duality::{centralizer_levi, dualize_ray, Ray};
use crate::error::{Error, Result};
use crate::predicates::{is_l_ample, OrbitContext};
use crate::rational::{int, Rat};
use crate::rootdata::{CartanType, FactorSpec, LatticeVector, Levi, RootDatum, Side};
use crate::weyl::GaloisAction;

/// See [`OrbitContext::orbital_ratio`].
pub fn orbital_ratio(datum: &RootDatum, v: &LatticeVector, galois: &GaloisAction) -> Rat {
    OrbitContext::new(datum, galois).orbital_ratio(v)
}

/// Smallest integer `p ≥ 2` with `r ≤ p - 1`.
pub fn min_p(r: Rat) -> i64 {
    (r.ceil().to_integer() + 1).max(2)
}

/// 1 if `r ≤ 1`, otherwise the largest prime `p` with `p - 1 < r`, so that
/// every prime above the bound satisfies `r ≤ p - 1`.
pub fn prime_bound(r: Rat) -> i64 {
    if r <= Rat::one() {
        return 1;
    }
    let top = r.ceil().to_integer();
    (2..=top).rev().find(|&n| is_prime(n)).unwrap_or(1)
}

fn is_prime(n: i64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(&d))
}

/// Which dominant coroot gives the ratio in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shortcut {
    /// The highest coroot: simply-laced, or the excluded set has a short root.
    HighestCoroot,
    /// The coroot of the highest root: multi-laced and every excluded root long.
    CorootOfHighestRoot,
}

impl fmt::Display for Shortcut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shortcut::HighestCoroot => "highest coroot",
            Shortcut::CorootOfHighestRoot => "coroot of highest root",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub factor: FactorSpec,
    pub levi: Levi,
    /// `Δ \ Δ_L`, zero-based.
    pub excluded: Vec<usize>,
    /// `η(Δ \ Δ_L)`.
    pub eta: LatticeVector,
    pub ratio: Rat,
    pub min_p: i64,
    pub c: i64,
    pub shortcut: Shortcut,
    pub shortcut_value: Rat,
    /// `Σ m^∨(α)` over the excluded simple roots.
    pub multiplicity_sum: i64,
    /// The bound is only known to suffice: nothing is claimed for primes at
    /// or below `c` when `c > 1`.
    pub sufficiency_only: bool,
}

impl BoundReport {
    /// Bourbaki labels of the excluded simple roots, e.g. `α1, α3`.
    pub fn excluded_label(&self) -> String {
        self.excluded.iter().map(|i| format!("α{}", i + 1)).collect::<Vec<_>>().join(", ")
    }
}

/// Ratio, prime bound and closed-form shortcut for `η(Δ \ Δ_L)` on an
/// irreducible datum. Fails if the shortcut disagrees with the ratio.
pub fn bound_for_levi(datum: &RootDatum, levi: &Levi, galois: &GaloisAction) -> Result<BoundReport> {
    if !datum.is_irreducible() {
        return Err(Error::NotIrreducible(datum.factors().len()));
    }
    if levi.is_full(datum) {
        return Err(Error::LeviNotProper);
    }
    if let Some(&i) = levi.0.iter().find(|&&i| i >= datum.semisimple_rank()) {
        return Err(Error::BadSimpleIndex(i));
    }
    let excluded = levi.complement(datum);
    let mut coeffs = vec![Rat::zero(); datum.semisimple_rank()];
    for &i in &excluded {
        coeffs[i] = Rat::one();
    }
    let eta = datum.from_fundamental_coordinates(Side::Character, &coeffs);
    let ratio = orbital_ratio(datum, &eta, galois);

    let factor = &datum.factors()[0];
    let has_short = excluded.iter().any(|&i| datum.is_short_root(datum.simple_root_index(i)));
    let (shortcut, target) = if factor.spec.kind.is_simply_laced() || has_short {
        (Shortcut::HighestCoroot, datum.highest_coroot(0)?)
    } else {
        (Shortcut::CorootOfHighestRoot, datum.coroot_of_highest_root(0)?)
    };
    let shortcut_value = eta.coords.dot(target);
    let vd = datum.vertex_data(0)?;
    let multiplicity_sum = excluded.iter().map(|&i| vd.m_vee[vd.local(i).expect("own vertex")]).sum();
    if shortcut_value != ratio {
        return Err(Error::Invariant(format!(
            "{} without {:?}: shortcut {} gives {}, orbit scan gives {}",
            factor.spec, excluded, shortcut, shortcut_value, ratio
        )));
    }
    let c = prime_bound(ratio);
    Ok(BoundReport {
        factor: factor.spec,
        levi: levi.clone(),
        excluded,
        eta,
        min_p: min_p(ratio),
        c,
        shortcut,
        shortcut_value,
        multiplicity_sum,
        sufficiency_only: c > 1,
        ratio,
    })
}

/// One report per irreducible type of rank at most `max_rank` and maximal
/// Levi, ordered by family (A, B, C, D, G, F, E), rank and vertex.
pub fn full_table(max_rank: usize) -> Result<Vec<BoundReport>> {
    let types = CartanType::all_up_to(max_rank);
    let per_type: Vec<Result<Vec<BoundReport>>> = types
        .par_iter()
        .map(|spec| {
            let datum = RootDatum::irreducible(spec.kind, spec.rank)?;
            let triv = GaloisAction::trivial();
            (0..spec.rank).map(|i| bound_for_levi(&datum, &Levi::without(&datum, [i]), &triv)).collect()
        })
        .collect();
    Ok(per_type.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect())
}

/// One line of the grouped table: a family (or exceptional type), a class of
/// vertices and the common bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub family: String,
    pub vertices: String,
    pub c: i64,
}

/// Position class of a vertex of a classical diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Position {
    First,
    Inner,
    PenultimateBranch,
    Last,
}

fn position(kind: CartanType, rank: usize, i: usize) -> Position {
    let k = i + 1;
    if k == 1 {
        Position::First
    } else if k == rank {
        Position::Last
    } else if kind == CartanType::D && k == rank - 1 {
        Position::PenultimateBranch
    } else {
        Position::Inner
    }
}

fn position_label(kind: CartanType, p: Position) -> String {
    match p {
        Position::First => "α_1".into(),
        Position::Last => "α_n".into(),
        Position::PenultimateBranch => "α_{n-1}".into(),
        Position::Inner if kind == CartanType::D => "α_i (2 ≤ i ≤ n-2)".into(),
        Position::Inner => "α_i (2 ≤ i ≤ n-1)".into(),
    }
}

/// Group the reports as in the usual presentation: classical families merge
/// all ranks by vertex position, exceptional types list their vertices, and
/// vertices with equal bound share a row. Rows within a type are ordered by
/// increasing bound.
///
/// A position class whose bound depends on the rank is an error.
pub fn grouped_table(reports: &[BoundReport]) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    let mut seen_types: Vec<(CartanType, Option<usize>)> = Vec::new();
    for r in reports {
        let key = match r.factor.kind {
            CartanType::A | CartanType::B | CartanType::C | CartanType::D => (r.factor.kind, None),
            _ => (r.factor.kind, Some(r.factor.rank)),
        };
        if !seen_types.contains(&key) {
            seen_types.push(key);
        }
    }
    for (kind, rank) in seen_types {
        let members: Vec<&BoundReport> = reports
            .iter()
            .filter(|r| r.factor.kind == kind && rank.is_none_or(|n| r.factor.rank == n))
            .collect();
        let cs: BTreeSet<i64> = members.iter().map(|r| r.c).collect();
        match rank {
            None => {
                let mut by_position: Vec<(Position, i64)> = Vec::new();
                for r in &members {
                    let [i] = r.excluded[..] else {
                        return Err(Error::Invariant("grouped table expects maximal Levis".into()));
                    };
                    let p = position(kind, r.factor.rank, i);
                    match by_position.iter().find(|(q, _)| *q == p) {
                        Some((_, c)) if *c != r.c => {
                            return Err(Error::Invariant(format!(
                                "{kind:?} {}: bound depends on the rank",
                                position_label(kind, p)
                            )))
                        }
                        Some(_) => {}
                        None => by_position.push((p, r.c)),
                    }
                }
                by_position.sort();
                for c in cs {
                    let labels: Vec<String> = by_position
                        .iter()
                        .filter(|(_, x)| *x == c)
                        .map(|(p, _)| position_label(kind, *p))
                        .collect();
                    let family = format!("{}_n", kind.letter());
                    let vertices = if kind == CartanType::A { "α_i (1 ≤ i ≤ n)".to_string() } else { labels.join(", ") };
                    rows.push(TableRow { family, vertices, c });
                }
            }
            Some(n) => {
                for c in cs {
                    let labels: Vec<String> = members
                        .iter()
                        .filter(|r| r.c == c)
                        .map(|r| r.excluded_label())
                        .collect();
                    rows.push(TableRow { family: format!("{}{n}", kind.letter()), vertices: labels.join(", "), c });
                }
            }
        }
    }
    Ok(rows)
}

/// Character-level certificate that `-μ*` is a Hasse generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseCertificate {
    pub mu: Ray,
    pub levi: Levi,
    /// Primitive lattice point on the dual ray.
    pub mu_star: LatticeVector,
    pub lambda: LatticeVector,
    pub l_ample: bool,
    pub quasi_constant: bool,
    pub p_l_admissible_at_2: bool,
}

impl HasseCertificate {
    pub fn passed(&self) -> bool {
        self.l_ample && self.quasi_constant && self.p_l_admissible_at_2
    }
}

/// Dualize a dominant quasi-constant cocharacter ray and check `-μ*`.
pub fn hasse_generator(datum: &RootDatum, mu: &Ray, galois: &GaloisAction) -> Result<HasseCertificate> {
    let levi = centralizer_levi(datum, mu);
    if levi.is_full(datum) {
        return Err(Error::CentralRay(mu.direction.coords.clone()));
    }
    let mu_star = dualize_ray(datum, mu, galois)?.direction;
    let lambda = mu_star.neg();
    let ctx = OrbitContext::new(datum, galois);
    Ok(HasseCertificate {
        mu: mu.clone(),
        l_ample: is_l_ample(datum, &lambda, &levi).holds,
        quasi_constant: ctx.is_quasi_constant(&mu_star).holds,
        p_l_admissible_at_2: ctx.is_p_l_admissible(&lambda, 2, &levi)?,
        levi,
        mu_star,
        lambda,
    })
}

/// `p - 1` as a rational, for comparisons against ratios.
pub fn p_minus_one(p: i64) -> Rat {
    int(p - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn prime_bounds() {
        assert_eq!(prime_bound(int(1)), 1);
        assert_eq!(prime_bound(int(2)), 2);
        assert_eq!(prime_bound(int(4)), 3);
        assert_eq!(prime_bound(int(6)), 5);
        assert_eq!(prime_bound(int(12)), 11);
        assert_eq!(prime_bound(frac(5, 2)), 3);
        assert_eq!(min_p(int(1)), 2);
        assert_eq!(min_p(int(3)), 4);
        for r in [int(1), frac(3, 2), int(2), frac(5, 2), int(7), int(12)] {
            let c = prime_bound(r);
            for p in (c + 1..60).filter(|&p| is_prime(p)) {
                assert!(r <= p_minus_one(p), "r = {r}, p = {p}");
            }
        }
    }

    #[test]
    fn rejects_full_levi() {
        let a2 = RootDatum::irreducible(CartanType::A, 2).unwrap();
        let full = Levi::new([0, 1]);
        assert_eq!(bound_for_levi(&a2, &full, &GaloisAction::trivial()), Err(Error::LeviNotProper));
        let r = Ray::from_fundamental(&a2, Side::Cocharacter, &[1, 0]).unwrap();
        let cert = hasse_generator(&a2, &r, &GaloisAction::trivial()).unwrap();
        assert!(cert.passed());
        assert_eq!(cert.lambda, a2.weight(Side::Character, &[-1, 0]));
    }

    #[test]
    fn g2_row() {
        let g2 = RootDatum::irreducible(CartanType::G, 2).unwrap();
        for i in 0..2 {
            let rep = bound_for_levi(&g2, &Levi::without(&g2, [i]), &GaloisAction::trivial()).unwrap();
            assert_eq!(rep.c, 2);
        }
    }
}
