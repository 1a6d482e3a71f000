//! Rays, Levi centralizers and the duality between quasi-constant
//! cocharacter rays and quasi-constant character rays.
//!
//! The dual of a dominant quasi-constant ray `Σ c_i η(α_i^∨)` is the ray of
//! `Σ c_i η(α_i)`, and symmetrically. On every Galois orbit of factors the
//! nonzero `c_i` coincide, so this is the blockwise replacement of each
//! nonzero block by the matching fundamental weight.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::classify::Classifier;
use crate::error::{Error, Result};
use crate::predicates::OrbitContext;
use crate::rational::{primitive_integer, Rat};
use crate::rootdata::{LatticeVector, Levi, RootDatum, Side};
use crate::weyl::GaloisAction;

/// A ray in the (co)character lattice, stored as its primitive point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ray {
    /// Coordinates of the primitive point in the lattice basis.
    pub coefficients: Vec<i64>,
    pub direction: LatticeVector,
}

impl Ray {
    /// Ray through a nonzero vector in the span of the lattice.
    pub fn new(datum: &RootDatum, v: &LatticeVector) -> Result<Ray> {
        datum.check_dim(&v.coords)?;
        let lattice = datum.lattice(v.side);
        let coords = lattice.coordinates(&v.coords).ok_or_else(|| Error::NotInSpan(v.coords.clone()))?;
        let coefficients = primitive_integer(&coords).ok_or(Error::ZeroRay)?;
        let q: Vec<Rat> = coefficients.iter().map(|&x| Rat::from_integer(x)).collect();
        Ok(Ray { direction: LatticeVector::new(lattice.combine(&q), v.side), coefficients })
    }

    /// Ray through `Σ c_i η(α_i)` (or the coweights).
    pub fn from_fundamental(datum: &RootDatum, side: Side, coeffs: &[i64]) -> Result<Ray> {
        if coeffs.len() != datum.semisimple_rank() {
            return Err(Error::Invariant(format!(
                "expected {} fundamental coordinates, got {}",
                datum.semisimple_rank(),
                coeffs.len()
            )));
        }
        Ray::new(datum, &datum.weight(side, coeffs))
    }

    pub fn side(&self) -> Side {
        self.direction.side
    }

    /// Fundamental coordinates of the direction, scaled to a primitive
    /// integer vector.
    pub fn fundamental_ray(&self, datum: &RootDatum) -> Vec<i64> {
        primitive_integer(&datum.fundamental_coordinates(&self.direction)).unwrap_or_default()
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ray {}", self.direction)
    }
}

/// Simple (co)roots orthogonal to the direction. For a cocharacter this is
/// the type of its centralizer.
pub fn centralizer_levi(datum: &RootDatum, r: &Ray) -> Levi {
    levi_of(datum, &r.direction)
}

pub(crate) fn levi_of(datum: &RootDatum, v: &LatticeVector) -> Levi {
    Levi::new(
        (0..datum.semisimple_rank()).filter(|&i| v.coords.dot(datum.simple_partner(v.side, i)).is_zero()),
    )
}

fn dualize(datum: &RootDatum, r: &Ray, galois: &GaloisAction, from: Side) -> Result<Ray> {
    if r.side() != from {
        return Err(Error::WrongSide(from.name()));
    }
    let coeffs = datum.fundamental_coordinates(&r.direction);
    if coeffs.iter().any(Signed::is_negative) {
        return Err(Error::NotDominant(r.direction.coords.clone()));
    }
    if coeffs.iter().all(Zero::is_zero) {
        return Err(Error::CentralRay(r.direction.coords.clone()));
    }
    if !Classifier::new(datum, galois).classify(&r.direction)?.is_quasi_constant() {
        return Err(Error::NotQuasiConstant(r.direction.coords.clone()));
    }
    Ray::new(datum, &datum.from_fundamental_coordinates(from.dual(), &coeffs))
}

/// Dual character ray of a dominant quasi-constant cocharacter ray.
pub fn dualize_ray(datum: &RootDatum, r: &Ray, galois: &GaloisAction) -> Result<Ray> {
    dualize(datum, r, galois, Side::Cocharacter)
}

/// Dual cocharacter ray of a dominant quasi-constant character ray.
pub fn dualize_ray_inverse(datum: &RootDatum, r: &Ray, galois: &GaloisAction) -> Result<Ray> {
    dualize(datum, r, galois, Side::Character)
}

/// Fundamental-coordinate vectors of all dominant quasi-constant rays whose
/// multiplier on each Galois orbit of factors lies in `1..=max_multiplier`
/// (or is absent). With one orbit of factors this is every such ray.
pub fn quasi_constant_selections(
    datum: &RootDatum,
    galois: &GaloisAction,
    side: Side,
    max_multiplier: i64,
) -> Vec<Vec<i64>> {
    // Per piece: every assignment of a vertex or nothing to each factor that
    // is homogeneous (all minuscule or all cominuscule).
    let rank = datum.semisimple_rank();
    let mut per_piece: Vec<Vec<Vec<Option<usize>>>> = Vec::new();
    for piece in galois.factor_orbits(datum) {
        let mut choices: Vec<Vec<Option<usize>>> = vec![Vec::new()];
        for &f in &piece {
            let options: Vec<Option<usize>> = std::iter::once(None)
                .chain(
                    datum.factors()[f]
                        .simple
                        .clone()
                        .filter(|&i| {
                            datum.fundamental_is_minuscule(side, i) || datum.fundamental_is_cominuscule(side, i)
                        })
                        .map(Some),
                )
                .collect();
            choices = choices
                .into_iter()
                .flat_map(|prefix| {
                    options.iter().map(move |o| {
                        let mut p = prefix.clone();
                        p.push(*o);
                        p
                    })
                })
                .collect();
        }
        choices.retain(|sel| {
            let chosen: Vec<usize> = sel.iter().flatten().copied().collect();
            chosen.iter().all(|&i| datum.fundamental_is_minuscule(side, i))
                || chosen.iter().all(|&i| datum.fundamental_is_cominuscule(side, i))
        });
        per_piece.push(choices);
    }

    let mut out: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut stack: Vec<(usize, Vec<i64>)> = vec![(0, vec![0; rank])];
    while let Some((k, coeffs)) = stack.pop() {
        if k == per_piece.len() {
            if let Some(p) = primitive_integer(&coeffs.iter().map(|&x| Rat::from_integer(x)).collect::<Vec<_>>()) {
                out.insert(p);
            }
            continue;
        }
        for sel in &per_piece[k] {
            let trivial = sel.iter().all(Option::is_none);
            let multipliers = if trivial { 1..=1 } else { 1..=max_multiplier };
            for m in multipliers {
                let mut next = coeffs.clone();
                for i in sel.iter().flatten() {
                    next[*i] = m;
                }
                stack.push((k + 1, next));
            }
        }
    }
    out.into_iter().collect()
}

/// Rays of [`quasi_constant_selections`].
pub fn quasi_constant_rays(datum: &RootDatum, galois: &GaloisAction, side: Side, max_multiplier: i64) -> Result<Vec<Ray>> {
    quasi_constant_selections(datum, galois, side, max_multiplier)
        .iter()
        .map(|c| Ray::from_fundamental(datum, side, c))
        .collect()
}

/// Outcome of the duality checks for one cocharacter ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityCheck {
    pub ray: Ray,
    pub levi: Levi,
    pub dual: Option<Ray>,
    /// The dual ray is quasi-constant.
    pub quasi_constant: bool,
    /// The dual ray pairs to zero with every coroot of the Levi, and its
    /// support is exactly the complement of the Levi.
    pub levi_restriction: bool,
    /// Adding any simple root to the Levi meets a nonzero pairing.
    pub maximal: bool,
    /// Going to the dual and back returns the ray.
    pub round_trip: bool,
    pub error: Option<String>,
}

impl DualityCheck {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.quasi_constant && self.levi_restriction && self.maximal && self.round_trip
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub checks: Vec<DualityCheck>,
    /// Character rays whose inverse dual fails to map back to themselves.
    pub inverse_failures: Vec<Ray>,
    /// The dual map is onto the enumerated character rays.
    pub bijective: bool,
}

impl DualityReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count() + self.inverse_failures.len() + usize::from(!self.bijective)
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
}

fn check_ray(datum: &RootDatum, ctx: &OrbitContext<'_>, galois: &GaloisAction, ray: &Ray) -> DualityCheck {
    let levi = centralizer_levi(datum, ray);
    let mut check = DualityCheck {
        ray: ray.clone(),
        levi: levi.clone(),
        dual: None,
        quasi_constant: false,
        levi_restriction: false,
        maximal: false,
        round_trip: false,
        error: None,
    };
    let dual = match dualize_ray(datum, ray, galois) {
        Ok(d) => d,
        Err(e) => {
            check.error = Some(e.to_string());
            return check;
        }
    };
    let chi = &dual.direction;
    check.quasi_constant = ctx.is_quasi_constant(chi).holds;

    let coroots = datum.coroots();
    let in_levi = |j: usize| {
        (0..datum.semisimple_rank())
            .all(|i| datum.root_coordinates(j)[i] == 0 || levi.contains(i))
    };
    let vanishes_on_levi = (0..datum.num_roots()).filter(|&j| in_levi(j)).all(|j| chi.coords.dot(&coroots[j]).is_zero());
    let support: BTreeSet<usize> = (0..datum.semisimple_rank())
        .filter(|&i| !chi.coords.dot(datum.simple_coroot(i)).is_zero())
        .collect();
    check.levi_restriction = vanishes_on_levi && support == levi.complement(datum).into_iter().collect();

    check.maximal = levi.complement(datum).into_iter().all(|j| {
        let mut larger = levi.0.clone();
        larger.insert(j);
        larger.iter().any(|&i| !chi.coords.dot(datum.simple_coroot(i)).is_zero())
    });

    check.round_trip = dualize_ray_inverse(datum, &dual, galois).as_ref() == Ok(ray);
    check.dual = Some(dual);
    check
}

/// Enumerate the dominant quasi-constant cocharacter rays (multipliers up to
/// `max_multiplier` per Galois orbit of factors) and check the duality
/// properties on each, in parallel.
pub fn verify_duality(datum: &RootDatum, galois: &GaloisAction, max_multiplier: i64) -> Result<DualityReport> {
    let ctx = OrbitContext::new(datum, galois);
    let rays = quasi_constant_rays(datum, galois, Side::Cocharacter, max_multiplier)?;
    let checks: Vec<DualityCheck> = rays.par_iter().map(|r| check_ray(datum, &ctx, galois, r)).collect();

    let char_rays = quasi_constant_rays(datum, galois, Side::Character, max_multiplier)?;
    let inverse_failures: Vec<Ray> = char_rays
        .par_iter()
        .filter(|s| {
            dualize_ray_inverse(datum, s, galois)
                .and_then(|r| dualize_ray(datum, &r, galois))
                .as_ref()
                != Ok(*s)
        })
        .cloned()
        .collect();
    let images: BTreeSet<&Ray> = checks.iter().filter_map(|c| c.dual.as_ref()).collect();
    let bijective = images.len() == checks.len() && images == char_rays.iter().collect();
    Ok(DualityReport { checks, inverse_failures, bijective })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{CartanType, FactorSpec, RootSystemSpec};

    #[test]
    fn cn_long_vertex() {
        for n in 2..=6 {
            let c = RootDatum::irreducible(CartanType::C, n).unwrap();
            let mut e = vec![0; n];
            e[n - 1] = 1;
            let r = Ray::from_fundamental(&c, Side::Cocharacter, &e).unwrap();
            let levi = centralizer_levi(&c, &r);
            assert_eq!(levi, Levi::without(&c, [n - 1]));
            let d = dualize_ray(&c, &r, &GaloisAction::trivial()).unwrap();
            assert_eq!(d.fundamental_ray(&c), e);
            assert_eq!(dualize_ray_inverse(&c, &d, &GaloisAction::trivial()).unwrap(), r);
        }
    }

    #[test]
    fn central_and_regular_levis() {
        let a3 = RootDatum::irreducible(CartanType::A, 3).unwrap();
        let regular = Ray::from_fundamental(&a3, Side::Cocharacter, &[1, 1, 1]).unwrap();
        assert!(centralizer_levi(&a3, &regular).0.is_empty());
        assert_eq!(Ray::from_fundamental(&a3, Side::Cocharacter, &[0, 0, 0]), Err(Error::ZeroRay));
    }

    #[test]
    fn rejects_bad_input() {
        let g2 = RootDatum::irreducible(CartanType::G, 2).unwrap();
        let triv = GaloisAction::trivial();
        let r = Ray::from_fundamental(&g2, Side::Cocharacter, &[1, 0]).unwrap();
        assert!(matches!(dualize_ray(&g2, &r, &triv), Err(Error::NotQuasiConstant(_))));
        let a2 = RootDatum::irreducible(CartanType::A, 2).unwrap();
        let neg = Ray::from_fundamental(&a2, Side::Cocharacter, &[-1, 0]).unwrap();
        assert!(matches!(dualize_ray(&a2, &neg, &triv), Err(Error::NotDominant(_))));
        let chi = Ray::from_fundamental(&a2, Side::Character, &[1, 0]).unwrap();
        assert_eq!(dualize_ray(&a2, &chi, &triv), Err(Error::WrongSide("cocharacter")));
    }

    #[test]
    fn product_blocks() {
        let a1 = FactorSpec::new(CartanType::A, 1).unwrap();
        let d = RootDatum::build(RootSystemSpec::simply_connected(vec![a1, a1])).unwrap();
        let triv = GaloisAction::trivial();
        let r = Ray::from_fundamental(&d, Side::Cocharacter, &[1, 0]).unwrap();
        assert_eq!(dualize_ray(&d, &r, &triv).unwrap().fundamental_ray(&d), vec![1, 0]);
        let skew = Ray::from_fundamental(&d, Side::Cocharacter, &[1, 5]).unwrap();
        let back = dualize_ray(&d, &skew, &triv).and_then(|x| dualize_ray_inverse(&d, &x, &triv));
        assert_eq!(back.unwrap(), skew);
    }

    #[test]
    fn enumeration_counts() {
        let triv = GaloisAction::trivial();
        let c4 = RootDatum::irreducible(CartanType::C, 4).unwrap();
        assert_eq!(quasi_constant_selections(&c4, &triv, Side::Cocharacter, 3), vec![vec![0, 0, 0, 1], vec![1, 0, 0, 0]]);
        let g2 = RootDatum::irreducible(CartanType::G, 2).unwrap();
        assert!(quasi_constant_selections(&g2, &triv, Side::Cocharacter, 3).is_empty());
        let rep = verify_duality(&c4, &triv, 1).unwrap();
        assert_eq!(rep.checks.len(), 2);
        assert!(rep.passed(), "{rep:?}");
    }
}
