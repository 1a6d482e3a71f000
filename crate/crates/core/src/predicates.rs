//! Minuscule, cominuscule, quasi-constant, orbitally `p`-close, `L`-ample
//! and `(p, L)`-admissible (co)characters.
//!
//! A character is paired against coroots and a cocharacter against roots;
//! every predicate here is side-generic through [`RootDatum::partners`].

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, QVector, Rat};
use crate::rootdata::{LatticeVector, Levi, RootDatum};
use crate::weyl::{coroot_orbit_partition, dominant_representative, GaloisAction, OrbitPartition};

/// Certificate that a predicate fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PredicateWitness {
    /// Two (co)roots in one `W ⋊ Γ` orbit with distinct nonzero absolute
    /// pairings against the vector.
    CorootPair {
        orbit: usize,
        first: QVector,
        second: QVector,
        first_value: Rat,
        second_value: Rat,
    },
    /// A simple root outside `Δ_L` with nonnegative pairing.
    AmpleViolation { simple: usize, value: Rat },
}

impl PredicateWitness {
    /// Recompute the recorded pairings from the recorded vectors.
    pub fn reproduces(&self, datum: &RootDatum, v: &LatticeVector) -> bool {
        match self {
            PredicateWitness::CorootPair { first, second, first_value, second_value, .. } => {
                v.coords.dot(first).abs() == *first_value
                    && v.coords.dot(second).abs() == *second_value
                    && first_value != second_value
                    && !first_value.is_zero()
                    && !second_value.is_zero()
            }
            PredicateWitness::AmpleViolation { simple, value } => {
                v.coords.dot(datum.simple_partner(v.side, *simple)) == *value && !value.is_negative()
            }
        }
    }
}

/// Outcome of a predicate that can explain a negative answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<PredicateWitness>,
}

impl Verdict {
    fn yes() -> Self {
        Verdict { holds: true, witness: None }
    }

    fn no(w: PredicateWitness) -> Self {
        Verdict { holds: false, witness: Some(w) }
    }
}

/// All pairings of `v` with coroots (character side) or roots.
pub fn pairings(datum: &RootDatum, v: &LatticeVector) -> Vec<Rat> {
    datum.partners(v.side).iter().map(|g| v.coords.dot(g)).collect()
}

/// Every pairing with a (co)root lies in `{-1, 0, 1}`.
pub fn is_minuscule(datum: &RootDatum, v: &LatticeVector) -> bool {
    datum.partners(v.side).iter().all(|g| v.coords.dot(g).abs() <= Rat::one())
        && pairings(datum, v).iter().all(Rat::is_integer)
}

/// `v` is `W`-conjugate to a fundamental (co)weight whose dual fundamental
/// (co)weight is minuscule, i.e. whose vertex is special (cospecial for
/// cocharacters). Decided on the projection of `v` to the span of the roots.
pub fn is_cominuscule(datum: &RootDatum, v: &LatticeVector) -> bool {
    let projected = datum.project_to_root_span(v);
    if projected.is_zero() {
        return false;
    }
    let (dominant, _) = dominant_representative(datum, &projected);
    let coeffs = datum.fundamental_coordinates(&dominant);
    let nonzero: Vec<usize> = (0..coeffs.len()).filter(|&i| !coeffs[i].is_zero()).collect();
    matches!(nonzero.as_slice(), [i] if coeffs[*i] == Rat::one() && datum.fundamental_is_cominuscule(v.side, *i))
}

/// Orbit-level predicates, with the `W ⋊ Γ` orbit partition computed once.
#[derive(Clone, Debug)]
pub struct OrbitContext<'a> {
    pub datum: &'a RootDatum,
    pub galois: &'a GaloisAction,
    pub partition: OrbitPartition,
}

impl<'a> OrbitContext<'a> {
    pub fn new(datum: &'a RootDatum, galois: &'a GaloisAction) -> Self {
        OrbitContext { datum, galois, partition: coroot_orbit_partition(datum, galois) }
    }

    /// On every orbit the nonzero absolute pairings take at most one value.
    /// On failure the witness pairs the smallest and largest nonzero values
    /// of the orbit with the largest ratio between them (ties go to the
    /// smaller values, then to the earlier orbit).
    pub fn is_quasi_constant(&self, v: &LatticeVector) -> Verdict {
        let partners = self.datum.partners(v.side);
        let mut best: Option<(Rat, usize, (usize, Rat), (usize, Rat))> = None;
        for (k, orbit) in self.partition.orbits.iter().enumerate() {
            let mut lo: Option<(usize, Rat)> = None;
            let mut hi: Option<(usize, Rat)> = None;
            for &j in orbit {
                let value = v.coords.dot(&partners[j]).abs();
                if value.is_zero() {
                    continue;
                }
                if lo.is_none_or(|(_, x)| value < x) {
                    lo = Some((j, value));
                }
                if hi.is_none_or(|(_, x)| value > x) {
                    hi = Some((j, value));
                }
            }
            let (Some(lo), Some(hi)) = (lo, hi) else { continue };
            if lo.1 == hi.1 {
                continue;
            }
            let ratio = hi.1 / lo.1;
            let better = match &best {
                None => true,
                Some((r, _, l, h)) => ratio > *r || (ratio == *r && (lo.1, hi.1) < (l.1, h.1)),
            };
            if better {
                best = Some((ratio, k, lo, hi));
            }
        }
        match best {
            None => Verdict::yes(),
            Some((_, orbit, (j0, v0), (j1, v1))) => Verdict::no(PredicateWitness::CorootPair {
                orbit,
                first: partners[j0].clone(),
                second: partners[j1].clone(),
                first_value: v0,
                second_value: v1,
            }),
        }
    }

    /// Largest ratio `max / min` of nonzero absolute pairings over the
    /// orbits, or 1 if `v` pairs to zero with everything.
    pub fn orbital_ratio(&self, v: &LatticeVector) -> Rat {
        let partners = self.datum.partners(v.side);
        let mut ratio = Rat::one();
        for orbit in &self.partition.orbits {
            let values = orbit
                .iter()
                .map(|&j| v.coords.dot(&partners[j]).abs())
                .filter(|x| !x.is_zero());
            let (lo, hi) = values.fold((None, None), |(lo, hi): (Option<Rat>, Option<Rat>), x| {
                (Some(lo.map_or(x, |l| l.min(x))), Some(hi.map_or(x, |h| h.max(x))))
            });
            if let (Some(lo), Some(hi)) = (lo, hi) {
                ratio = ratio.max(hi / lo);
            }
        }
        ratio
    }

    /// Orbital ratio at most `p - 1`.
    pub fn is_orbitally_p_close(&self, v: &LatticeVector, p: i64) -> Result<bool> {
        if p < 2 {
            return Err(Error::BadPrime(p));
        }
        Ok(self.orbital_ratio(v) <= int(p - 1))
    }

    /// Orbitally `p`-close and `L`-ample.
    pub fn is_p_l_admissible(&self, v: &LatticeVector, p: i64, levi: &Levi) -> Result<bool> {
        Ok(self.is_orbitally_p_close(v, p)? && is_l_ample(self.datum, v, levi).holds)
    }
}

/// See [`OrbitContext::is_quasi_constant`].
pub fn is_quasi_constant(datum: &RootDatum, v: &LatticeVector, galois: &GaloisAction) -> Verdict {
    OrbitContext::new(datum, galois).is_quasi_constant(v)
}

/// See [`OrbitContext::is_orbitally_p_close`].
pub fn is_orbitally_p_close(datum: &RootDatum, v: &LatticeVector, p: i64, galois: &GaloisAction) -> Result<bool> {
    OrbitContext::new(datum, galois).is_orbitally_p_close(v, p)
}

/// Strictly negative pairing with every simple (co)root outside `Δ_L`.
pub fn is_l_ample(datum: &RootDatum, v: &LatticeVector, levi: &Levi) -> Verdict {
    for i in levi.complement(datum) {
        let value = v.coords.dot(datum.simple_partner(v.side, i));
        if !value.is_negative() {
            return Verdict::no(PredicateWitness::AmpleViolation { simple: i, value });
        }
    }
    Verdict::yes()
}

/// See [`OrbitContext::is_p_l_admissible`].
pub fn is_p_l_admissible(
    datum: &RootDatum,
    v: &LatticeVector,
    p: i64,
    levi: &Levi,
    galois: &GaloisAction,
) -> Result<bool> {
    OrbitContext::new(datum, galois).is_p_l_admissible(v, p, levi)
}
