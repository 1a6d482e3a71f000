//! Classification of quasi-constant (co)characters, with certificates, and
//! a literal brute-force oracle for exhaustive cross-checking.
//!
//! A vector is quasi-constant exactly when, after moving it to the dominant
//! chamber, its block on every irreducible factor is either zero or a
//! positive multiple of a single minuscule or cominuscule fundamental
//! (co)weight, and inside each Galois orbit of factors the nonzero blocks
//! share one multiplier and are all minuscule or all cominuscule.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::predicates::{OrbitContext, PredicateWitness};
use crate::rational::{primitive_integer, QVector, Rat};
use crate::rootdata::{LatticeChoice, LatticeVector, RootDatum, Side};
use crate::weyl::{dominant_coordinates, orbit, GaloisAction};

/// Shape of the dominant representative on one irreducible factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    Trivial,
    /// Multiple of the minuscule fundamental (co)weight at this vertex.
    Minuscule(usize),
    /// Multiple of the cominuscule fundamental (co)weight at this vertex.
    Cominuscule(usize),
}

impl FactorKind {
    pub fn vertex(self) -> Option<usize> {
        match self {
            FactorKind::Trivial => None,
            FactorKind::Minuscule(i) | FactorKind::Cominuscule(i) => Some(i),
        }
    }
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorKind::Trivial => write!(f, "trivial"),
            FactorKind::Minuscule(i) => write!(f, "minuscule(α{})", i + 1),
            FactorKind::Cominuscule(i) => write!(f, "cominuscule(α{})", i + 1),
        }
    }
}

/// Common multiplier of one Galois orbit of factors (a k-simple piece).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceCertificate {
    pub factors: Vec<usize>,
    /// Positive multiplier; 1 by convention when every factor is trivial.
    pub multiplier: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    QuasiConstant {
        /// One entry per irreducible factor.
        kinds: Vec<FactorKind>,
        pieces: Vec<PieceCertificate>,
    },
    Not {
        witness: PredicateWitness,
    },
}

impl Classification {
    pub fn is_quasi_constant(&self) -> bool {
        matches!(self, Classification::QuasiConstant { .. })
    }

    /// The multiplier shared by every nontrivial piece, if there is one.
    pub fn multiplier(&self) -> Option<Rat> {
        let Classification::QuasiConstant { kinds, pieces } = self else {
            return None;
        };
        let nontrivial: BTreeSet<Rat> = pieces
            .iter()
            .filter(|p| p.factors.iter().any(|&f| kinds[f] != FactorKind::Trivial))
            .map(|p| p.multiplier)
            .collect();
        match nontrivial.len() {
            0 => Some(Rat::one()),
            1 => nontrivial.into_iter().next(),
            _ => None,
        }
    }

    pub fn kinds(&self) -> Option<&[FactorKind]> {
        match self {
            Classification::QuasiConstant { kinds, .. } => Some(kinds),
            Classification::Not { .. } => None,
        }
    }

    /// `Σ_f m_f η(α_f)`, which equals the dominant representative of the
    /// classified vector.
    pub fn reconstruct(&self, datum: &RootDatum, side: Side) -> Option<LatticeVector> {
        let Classification::QuasiConstant { kinds, pieces } = self else {
            return None;
        };
        let mut coeffs = vec![Rat::zero(); datum.semisimple_rank()];
        for piece in pieces {
            for &f in &piece.factors {
                if let Some(i) = kinds[f].vertex() {
                    coeffs[i] = piece.multiplier;
                }
            }
        }
        Some(datum.from_fundamental_coordinates(side, &coeffs))
    }
}

/// Reusable classifier: orbit partition and Galois pieces computed once.
#[derive(Clone, Debug)]
pub struct Classifier<'a> {
    ctx: OrbitContext<'a>,
    pieces: Vec<Vec<usize>>,
}

impl<'a> Classifier<'a> {
    pub fn new(datum: &'a RootDatum, galois: &'a GaloisAction) -> Self {
        Classifier { ctx: OrbitContext::new(datum, galois), pieces: galois.factor_orbits(datum) }
    }

    pub fn context(&self) -> &OrbitContext<'a> {
        &self.ctx
    }

    pub fn classify(&self, v: &LatticeVector) -> Result<Classification> {
        match self.certify(v) {
            Some((kinds, pieces)) => Ok(Classification::QuasiConstant { kinds, pieces }),
            None => self.rejected(v),
        }
    }

    /// Verdict alone, without searching for a witness on rejection.
    pub fn is_quasi_constant(&self, v: &LatticeVector) -> bool {
        self.certify(v).is_some()
    }

    fn certify(&self, v: &LatticeVector) -> Option<(Vec<FactorKind>, Vec<PieceCertificate>)> {
        let datum = self.ctx.datum;
        let coeffs = dominant_coordinates(datum, v.side, &datum.fundamental_coordinates(v));

        // Per factor: None if the block has several nonzero coefficients or
        // sits on a vertex that is neither minuscule nor cominuscule.
        let mut shapes: Vec<Option<(Option<usize>, bool, bool)>> = Vec::new();
        for factor in datum.factors() {
            let nonzero: Vec<usize> = factor.simple.clone().filter(|&i| !coeffs[i].is_zero()).collect();
            shapes.push(match nonzero.as_slice() {
                [] => Some((None, true, true)),
                [i] => {
                    let min = datum.fundamental_is_minuscule(v.side, *i);
                    let comin = datum.fundamental_is_cominuscule(v.side, *i);
                    (min || comin).then_some((Some(*i), min, comin))
                }
                _ => None,
            });
        }

        let mut kinds = vec![FactorKind::Trivial; datum.factors().len()];
        let mut pieces = Vec::new();
        for piece in &self.pieces {
            let mut multiplier: Option<Rat> = None;
            let mut all_min = true;
            let mut all_comin = true;
            for &f in piece {
                let (vertex, min, comin) = shapes[f]?;
                if let Some(i) = vertex {
                    match multiplier {
                        None => multiplier = Some(coeffs[i]),
                        Some(m) if m != coeffs[i] => return None,
                        Some(_) => {}
                    }
                    all_min &= min;
                    all_comin &= comin;
                }
            }
            if !all_min && !all_comin {
                return None;
            }
            for &f in piece {
                if let Some((Some(i), _, _)) = shapes[f] {
                    kinds[f] = if all_min { FactorKind::Minuscule(i) } else { FactorKind::Cominuscule(i) };
                }
            }
            pieces.push(PieceCertificate {
                factors: piece.clone(),
                multiplier: multiplier.unwrap_or_else(Rat::one),
            });
        }
        Some((kinds, pieces))
    }

    fn rejected(&self, v: &LatticeVector) -> Result<Classification> {
        match self.ctx.is_quasi_constant(v).witness {
            Some(witness) => Ok(Classification::Not { witness }),
            None => Err(Error::Invariant(format!(
                "classification rejects {v} but no failing orbit exists"
            ))),
        }
    }
}

/// Classify a vector of an irreducible datum without Galois action.
pub fn classify_simple(datum: &RootDatum, v: &LatticeVector) -> Result<Classification> {
    if !datum.is_irreducible() {
        return Err(Error::NotIrreducible(datum.factors().len()));
    }
    Classifier::new(datum, &GaloisAction::trivial()).classify(v)
}

/// Classify a vector of an arbitrary datum under the Galois action.
pub fn classify_general(datum: &RootDatum, v: &LatticeVector, galois: &GaloisAction) -> Result<Classification> {
    Classifier::new(datum, galois).classify(v)
}

/// Literal check of the definition: for every (co)root with nonzero pairing
/// and every element of its `W ⋊ Γ` orbit, the ratio of pairings lies in
/// `{-1, 0, 1}`. Orbits are computed per (co)root by closure, independently
/// of the orbit partition used by the predicates.
#[derive(Clone, Debug)]
pub struct Oracle {
    side: Side,
    orbit_members: Vec<Vec<usize>>,
    partners: Vec<QVector>,
}

impl Oracle {
    pub fn new(datum: &RootDatum, galois: &GaloisAction, side: Side) -> Self {
        let partners = datum.partners(side).to_vec();
        let orbit_members = partners
            .iter()
            .map(|g| {
                orbit(datum, &LatticeVector::new(g.clone(), side.dual()), galois, true)
                    .iter()
                    .map(|w| {
                        partners.iter().position(|p| p == w).expect("orbit of a (co)root stays in Φ")
                    })
                    .collect()
            })
            .collect();
        Oracle { side, orbit_members, partners }
    }

    pub fn check(&self, v: &LatticeVector) -> bool {
        debug_assert_eq!(v.side, self.side);
        let values: Vec<Rat> = self.partners.iter().map(|g| v.coords.dot(g)).collect();
        self.check_values(&values)
    }

    /// Same test on precomputed pairings (in partner order).
    pub fn check_values<T>(&self, values: &[T]) -> bool
    where
        T: Copy + PartialEq + Zero + Signed,
    {
        for (j, &x) in values.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &t in &self.orbit_members[j] {
                let y = values[t];
                // y / x ∈ {-1, 0, 1}
                if !y.is_zero() && y != x && y != -x {
                    return false;
                }
            }
        }
        true
    }
}

/// See [`Oracle`].
pub fn oracle_is_quasi_constant(datum: &RootDatum, v: &LatticeVector, galois: &GaloisAction) -> bool {
    Oracle::new(datum, galois, v.side).check(v)
}

/// One disagreement found by [`verify_classification`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub coefficients: Vec<i64>,
    pub oracle: bool,
    pub classifier: std::result::Result<bool, String>,
}

/// Result of an exhaustive box scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxSearchReport {
    pub lattice: String,
    pub coeff_bound: i64,
    pub scanned: u64,
    pub quasi_constant: u64,
    /// At most [`MAX_RECORDED_MISMATCHES`] are kept; `mismatch_count` is exact.
    pub mismatches: Vec<Mismatch>,
    pub mismatch_count: u64,
    /// Primitive fundamental-(co)weight coordinates of the dominant
    /// representatives of the nonzero quasi-constant vectors found.
    pub dominant_rays: BTreeSet<Vec<i64>>,
}

impl BoxSearchReport {
    pub fn passed(&self) -> bool {
        self.mismatch_count == 0
    }
}

pub const MAX_RECORDED_MISMATCHES: usize = 64;

fn lattice_label(datum: &RootDatum) -> String {
    let types: Vec<String> = datum.factors().iter().map(|f| f.spec.to_string()).collect();
    let kind = match datum.spec().char_lattice {
        LatticeChoice::SimplyConnected => "sc",
        LatticeChoice::Adjoint => "adjoint",
        LatticeChoice::Explicit(_) => "explicit",
    };
    format!("{} {kind}", types.join("x"))
}

/// Scan every character whose coordinates in the character-lattice basis lie
/// in `[-bound, bound]` and compare the classifier with the oracle.
///
/// For the simply-connected lattice the basis is the fundamental weights.
pub fn verify_classification(datum: &RootDatum, galois: &GaloisAction, bound: i64) -> Result<BoxSearchReport> {
    if bound < 1 {
        return Err(Error::Invariant(format!("coefficient bound must be positive, got {bound}")));
    }
    let side = Side::Character;
    let classifier = Classifier::new(datum, galois);
    let oracle = Oracle::new(datum, galois, side);
    let basis = datum.lattice(side).basis();
    let partners = datum.partners(side);
    // Lattice vectors pair integrally with coroots.
    let pairing_rows: Vec<Vec<i64>> = basis
        .iter()
        .map(|b| {
            partners
                .iter()
                .map(|g| {
                    let x = b.dot(g);
                    if x.is_integer() {
                        Ok(x.to_integer())
                    } else {
                        Err(Error::Invariant(format!("basis vector {b} pairs non-integrally")))
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let r = basis.len();
    let width = (2 * bound + 1) as u64;
    let total = width.checked_pow(r as u32).ok_or_else(|| Error::Invariant("box too large".into()))?;

    struct Partial {
        scanned: u64,
        quasi_constant: u64,
        mismatches: Vec<Mismatch>,
        mismatch_count: u64,
        rays: BTreeSet<Vec<i64>>,
    }
    let empty = || Partial {
        scanned: 0,
        quasi_constant: 0,
        mismatches: Vec::new(),
        mismatch_count: 0,
        rays: BTreeSet::new(),
    };

    let chunk = 4096u64;
    let partial = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut acc = empty();
            let mut coeffs = vec![0i64; r];
            let mut values = vec![0i64; partners.len()];
            for index in c * chunk..((c + 1) * chunk).min(total) {
                let mut rest = index;
                for x in coeffs.iter_mut() {
                    *x = (rest % width) as i64 - bound;
                    rest /= width;
                }
                values.iter_mut().for_each(|v| *v = 0);
                for (k, &ck) in coeffs.iter().enumerate() {
                    if ck != 0 {
                        for (v, p) in values.iter_mut().zip(&pairing_rows[k]) {
                            *v += ck * p;
                        }
                    }
                }
                let expected = oracle.check_values(&values);
                let q: Vec<Rat> = coeffs.iter().map(|&x| Rat::from_integer(x)).collect();
                let v = LatticeVector::new(datum.lattice(side).combine(&q), side);
                acc.scanned += 1;
                if classifier.is_quasi_constant(&v) == expected {
                    if expected {
                        acc.quasi_constant += 1;
                        let dom = dominant_coordinates(datum, side, &datum.fundamental_coordinates(&v));
                        if let Some(ray) = primitive_integer(&dom) {
                            acc.rays.insert(ray);
                        }
                    }
                } else {
                    acc.mismatch_count += 1;
                    if acc.mismatches.len() < MAX_RECORDED_MISMATCHES {
                        acc.mismatches.push(Mismatch {
                            coefficients: coeffs.clone(),
                            oracle: expected,
                            classifier: classifier
                                .classify(&v)
                                .map(|c| c.is_quasi_constant())
                                .map_err(|e| e.to_string()),
                        });
                    }
                }
            }
            acc
        })
        .reduce(empty, |mut a, b| {
            a.scanned += b.scanned;
            a.quasi_constant += b.quasi_constant;
            a.mismatch_count += b.mismatch_count;
            a.mismatches.extend(b.mismatches);
            a.mismatches.truncate(MAX_RECORDED_MISMATCHES);
            a.rays.extend(b.rays);
            a
        });

    Ok(BoxSearchReport {
        lattice: lattice_label(datum),
        coeff_bound: bound,
        scanned: partial.scanned,
        quasi_constant: partial.quasi_constant,
        mismatches: partial.mismatches,
        mismatch_count: partial.mismatch_count,
        dominant_rays: partial.rays,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::rootdata::{CartanType, FactorSpec, RootSystemSpec};
    use crate::weyl::dominant_representative;

    #[test]
    fn zero_is_trivially_quasi_constant() {
        let c3 = RootDatum::irreducible(CartanType::C, 3).unwrap();
        let z = LatticeVector::character(QVector::zeros(3));
        let cls = classify_simple(&c3, &z).unwrap();
        assert_eq!(cls.multiplier(), Some(int(1)));
        assert_eq!(cls.kinds(), Some(&[FactorKind::Trivial][..]));
        assert!(oracle_is_quasi_constant(&c3, &z, &GaloisAction::trivial()));
    }

    #[test]
    fn simple_classifier_rejects_products() {
        let a1 = FactorSpec::new(CartanType::A, 1).unwrap();
        let d = RootDatum::build(RootSystemSpec::simply_connected(vec![a1, a1])).unwrap();
        let v = d.weight(Side::Character, &[1, 0]);
        assert_eq!(classify_simple(&d, &v), Err(Error::NotIrreducible(2)));
    }

    #[test]
    fn mixed_multipliers_in_independent_factors() {
        let a1 = FactorSpec::new(CartanType::A, 1).unwrap();
        let d = RootDatum::build(RootSystemSpec::simply_connected(vec![a1, a1])).unwrap();
        let v = d.weight(Side::Character, &[1, 5]);
        let cls = classify_general(&d, &v, &GaloisAction::trivial()).unwrap();
        assert!(cls.is_quasi_constant());
        assert_eq!(cls.multiplier(), None);
        assert!(oracle_is_quasi_constant(&d, &v, &GaloisAction::trivial()));
    }

    #[test]
    fn reconstruct_gives_dominant_representative() {
        let b3 = RootDatum::irreducible(CartanType::B, 3).unwrap();
        let v = b3.weight(Side::Character, &[-2, 2, 0]);
        let cls = classify_simple(&b3, &v).unwrap();
        let (dom, _) = dominant_representative(&b3, &v);
        assert_eq!(cls.reconstruct(&b3, Side::Character), Some(dom));
        assert_eq!(cls.kinds(), Some(&[FactorKind::Cominuscule(0)][..]));
    }

    #[test]
    fn small_box_agrees() {
        let d = RootDatum::irreducible(CartanType::B, 2).unwrap();
        let rep = verify_classification(&d, &GaloisAction::trivial(), 2).unwrap();
        assert!(rep.passed(), "{:?}", rep.mismatches);
        assert_eq!(rep.scanned, 25);
        assert_eq!(rep.dominant_rays, BTreeSet::from([vec![1, 0], vec![0, 1]]));
    }
}
