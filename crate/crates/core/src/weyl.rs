//! Reflections, Weyl(-Galois) orbits and dominant representatives.
//!
//! The full Weyl group is never enumerated: orbits are breadth-first
//! closures under the simple reflections and, optionally, the Galois
//! generators.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{QVector, Rat};
use crate::rootdata::{LatticeVector, RootDatum, Side};

/// Finite group of Dynkin-diagram automorphisms (possibly permuting
/// isomorphic factors), given by generators acting on simple-root indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GaloisAction {
    generators: Vec<Vec<usize>>,
    root_perms: Vec<Vec<usize>>,
}

impl GaloisAction {
    /// The trivial action.
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Validate the generators against `datum`: each must be a permutation
    /// of the simple roots preserving the Cartan matrix and the inner
    /// product, so that its linear extension permutes roots and coroots.
    pub fn new(datum: &RootDatum, generators: Vec<Vec<usize>>) -> Result<Self> {
        let r = datum.semisimple_rank();
        let cartan = datum.cartan_matrix();
        let mut root_perms = Vec::new();
        for perm in &generators {
            let bad = |reason: &str| Error::InvalidGalois { perm: perm.clone(), reason: reason.into() };
            if perm.len() != r {
                return Err(bad("wrong length"));
            }
            let distinct: BTreeSet<usize> = perm.iter().copied().collect();
            if distinct.len() != r || distinct.iter().any(|&i| i >= r) {
                return Err(bad("not a permutation"));
            }
            for i in 0..r {
                for j in 0..r {
                    if cartan[perm[i]][perm[j]] != cartan[i][j] {
                        return Err(bad("does not preserve the Cartan matrix"));
                    }
                }
                if datum.simple_root(perm[i]).norm2() != datum.simple_root(i).norm2() {
                    return Err(bad("does not preserve root lengths"));
                }
            }
            let mut images = Vec::with_capacity(datum.num_roots());
            for root in datum.roots() {
                let image = permute_linear(datum, perm, root);
                images.push(datum.root_index(&image).ok_or_else(|| bad("does not permute the roots"))?);
            }
            root_perms.push(images);
        }
        Ok(GaloisAction { generators, root_perms })
    }

    /// Swap two isomorphic factors, matching simple roots in order.
    pub fn swap_factors(datum: &RootDatum, a: usize, b: usize) -> Result<Self> {
        let fa = datum.factor(a)?;
        let fb = datum.factor(b)?;
        let mut perm: Vec<usize> = (0..datum.semisimple_rank()).collect();
        if fa.spec != fb.spec {
            return Err(Error::InvalidGalois {
                perm,
                reason: format!("factors {} and {} are not isomorphic", fa.spec, fb.spec),
            });
        }
        for (i, j) in fa.simple.clone().zip(fb.simple.clone()) {
            perm[i] = j;
            perm[j] = i;
        }
        Self::new(datum, vec![perm])
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(|g| g.iter().enumerate().all(|(i, &j)| i == j))
    }

    /// Image of root `j` under generator `g`.
    pub fn root_image(&self, g: usize, j: usize) -> usize {
        self.root_perms[g][j]
    }

    /// Apply generator `g` to a vector (either side).
    pub fn apply(&self, datum: &RootDatum, g: usize, v: &LatticeVector) -> LatticeVector {
        LatticeVector::new(permute_linear(datum, &self.generators[g], &v.coords), v.side)
    }

    /// Groups of factor indices merged by the action: the k-simple pieces.
    pub fn factor_orbits(&self, datum: &RootDatum) -> Vec<Vec<usize>> {
        let n = datum.factors().len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for perm in &self.generators {
            for (i, &j) in perm.iter().enumerate() {
                let a = find(&mut parent, datum.simple_factor(i));
                let b = find(&mut parent, datum.simple_factor(j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut root_of_group: Vec<usize> = Vec::new();
        for f in 0..n {
            let r = find(&mut parent, f);
            match root_of_group.iter().position(|&x| x == r) {
                Some(k) => groups[k].push(f),
                None => {
                    root_of_group.push(r);
                    groups.push(vec![f]);
                }
            }
        }
        groups
    }
}

/// Linear extension of a simple-root permutation: the component in the root
/// span is permuted, the orthogonal component is left alone.
fn permute_linear(datum: &RootDatum, perm: &[usize], v: &QVector) -> QVector {
    let mut out = v.clone();
    for (i, cw) in datum.fundamental_coweights().iter().enumerate() {
        let c = v.dot(cw);
        if !c.is_zero() {
            out = out.add_scaled(-c, datum.simple_root(i)).add_scaled(c, datum.simple_root(perm[i]));
        }
    }
    out
}

/// `s_α(v)`. On the character side `v - <v, α^∨> α`, on the cocharacter side
/// `v - <α, v> α^∨`; both are the orthogonal reflection in `α^⊥`.
pub fn reflect(datum: &RootDatum, v: &LatticeVector, alpha: &QVector) -> Result<LatticeVector> {
    let j = datum.root_index(alpha).ok_or_else(|| Error::NotARoot(alpha.clone()))?;
    let coroot = &datum.coroots()[j];
    let coords = match v.side {
        Side::Character => v.coords.add_scaled(-v.coords.dot(coroot), alpha),
        Side::Cocharacter => v.coords.add_scaled(-v.coords.dot(alpha), coroot),
    };
    Ok(LatticeVector::new(coords, v.side))
}

/// Simple reflection `s_i`.
pub fn simple_reflect(datum: &RootDatum, v: &LatticeVector, i: usize) -> LatticeVector {
    let a = datum.simple_root(i);
    let c = datum.simple_coroot(i);
    let coords = match v.side {
        Side::Character => v.coords.add_scaled(-v.coords.dot(c), a),
        Side::Cocharacter => v.coords.add_scaled(-v.coords.dot(a), c),
    };
    LatticeVector::new(coords, v.side)
}

/// Orbit of `v` under `W` (or `W ⋊ Γ` when `use_galois`), in breadth-first
/// discovery order starting with `v`.
pub fn orbit(datum: &RootDatum, v: &LatticeVector, galois: &GaloisAction, use_galois: bool) -> Vec<QVector> {
    let mut seen: HashSet<QVector> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(v.coords.clone());
    queue.push_back(v.clone());
    while let Some(w) = queue.pop_front() {
        out.push(w.coords.clone());
        let mut next: Vec<LatticeVector> =
            (0..datum.semisimple_rank()).map(|i| simple_reflect(datum, &w, i)).collect();
        if use_galois {
            next.extend((0..galois.generators().len()).map(|g| galois.apply(datum, g, &w)));
        }
        for u in next {
            if seen.insert(u.coords.clone()) {
                queue.push_back(u);
            }
        }
    }
    out
}

/// The dominant element of the `W`-orbit of `v` together with a word
/// `[i_1, ..., i_k]` such that `s_{i_k} ... s_{i_1} v` is that element.
///
/// Applies the lowest-index violated simple reflection until none is left.
pub fn dominant_representative(datum: &RootDatum, v: &LatticeVector) -> (LatticeVector, Vec<usize>) {
    let cartan = datum.cartan_matrix();
    let mut coeffs = datum.fundamental_coordinates(v);
    let mut current = v.clone();
    let mut word = Vec::new();
    while let Some(i) = coeffs.iter().position(|c| c.is_negative()) {
        let c = coeffs[i];
        current = simple_reflect(datum, &current, i);
        for (j, x) in coeffs.iter_mut().enumerate() {
            // <α_i, α_j^∨> on the character side, <α_j, α_i^∨> dually.
            let a = match v.side {
                Side::Character => cartan[j][i],
                Side::Cocharacter => cartan[i][j],
            };
            if a != 0 {
                *x -= c * Rat::from_integer(a);
            }
        }
        word.push(i);
        debug_assert!(word.len() <= datum.num_positive());
    }
    (current, word)
}

/// Fundamental coordinates of the dominant element in the orbit of the
/// vector with fundamental coordinates `coeffs`.
pub fn dominant_coordinates(datum: &RootDatum, side: Side, coeffs: &[Rat]) -> Vec<Rat> {
    let cartan = datum.cartan_matrix();
    let mut coeffs = coeffs.to_vec();
    let mut steps = 0;
    while let Some(i) = coeffs.iter().position(|c| c.is_negative()) {
        let c = coeffs[i];
        for (j, x) in coeffs.iter_mut().enumerate() {
            let a = match side {
                Side::Character => cartan[j][i],
                Side::Cocharacter => cartan[i][j],
            };
            if a != 0 {
                *x -= c * Rat::from_integer(a);
            }
        }
        steps += 1;
        debug_assert!(steps <= datum.num_positive());
    }
    coeffs
}

/// Apply a word of simple reflections left to right.
pub fn apply_word(datum: &RootDatum, v: &LatticeVector, word: &[usize]) -> LatticeVector {
    word.iter().fold(v.clone(), |acc, &i| simple_reflect(datum, &acc, i))
}

/// Partition of the (co)root indices into `W ⋊ Γ` orbits. Roots and coroots
/// share indices and the action commutes with `α ↦ α^∨`, so one partition
/// serves both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    /// Root indices of each orbit, in breadth-first discovery order.
    pub orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbit_of(&self, j: usize) -> usize {
        self.orbit_of[j]
    }

    pub fn representative(&self, k: usize) -> usize {
        self.orbits[k][0]
    }

    /// Members of orbit `k` as coroots (character side partners) or roots.
    pub fn vectors(&self, datum: &RootDatum, k: usize, side: Side) -> Vec<QVector> {
        let partners = datum.partners(side);
        self.orbits[k].iter().map(|&j| partners[j].clone()).collect()
    }
}

/// Partition of `Φ^∨` into `W ⋊ Γ` orbits.
pub fn coroot_orbit_partition(datum: &RootDatum, galois: &GaloisAction) -> OrbitPartition {
    let n = datum.num_roots();
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let k = orbits.len();
        let mut members = vec![start];
        orbit_of[start] = k;
        let mut head = 0;
        while head < members.len() {
            let j = members[head];
            head += 1;
            let images = (0..datum.semisimple_rank())
                .map(|i| datum.reflect_root_index(i, j))
                .chain((0..galois.generators().len()).map(|g| galois.root_image(g, j)))
                .collect::<Vec<_>>();
            for m in images {
                if orbit_of[m] == usize::MAX {
                    orbit_of[m] = k;
                    members.push(m);
                }
            }
        }
        orbits.push(members);
    }
    OrbitPartition { orbits, orbit_of }
}

/// `{ |<χ, γ>| : γ ∈ orbit }`.
pub fn pairing_value_set<'a>(chi: &LatticeVector, orbit: impl IntoIterator<Item = &'a QVector>) -> BTreeSet<Rat> {
    orbit.into_iter().map(|g| chi.coords.dot(g).abs()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::rootdata::{CartanType, FactorSpec, RootSystemSpec};

    #[test]
    fn reflecting_a_root_in_itself_negates_it() {
        let d = RootDatum::irreducible(CartanType::B, 3).unwrap();
        for r in d.roots() {
            let v = LatticeVector::character(r.clone());
            assert_eq!(reflect(&d, &v, r).unwrap().coords, -r);
        }
    }

    #[test]
    fn reflect_in_a2_coordinates() {
        let d = RootDatum::irreducible(CartanType::A, 2).unwrap();
        let v = LatticeVector::character(QVector::from_ints(&[1, -1, 0]));
        let a2 = QVector::from_ints(&[0, 1, -1]);
        assert_eq!(reflect(&d, &v, &a2).unwrap().coords, QVector::from_ints(&[1, 0, -1]));
        let eta1 = d.fundamental_weight(0).unwrap();
        assert_eq!(reflect(&d, &eta1, &a2).unwrap(), eta1);
        assert!(matches!(
            reflect(&d, &v, &QVector::from_ints(&[1, 0, 0])),
            Err(Error::NotARoot(_))
        ));
    }

    #[test]
    fn zero_orbit() {
        let d = RootDatum::irreducible(CartanType::E, 6).unwrap();
        let z = LatticeVector::character(QVector::zeros(d.ambient_dim()));
        assert_eq!(orbit(&d, &z, &GaloisAction::trivial(), false), vec![QVector::zeros(8)]);
    }

    #[test]
    fn dominant_of_negative_a1_weight() {
        let d = RootDatum::irreducible(CartanType::A, 1).unwrap();
        let eta = d.fundamental_weight(0).unwrap();
        let (dom, word) = dominant_representative(&d, &eta.neg());
        assert_eq!(dom, eta);
        assert_eq!(word, vec![0]);
        let (same, empty) = dominant_representative(&d, &eta);
        assert_eq!(same, eta);
        assert!(empty.is_empty());
    }

    #[test]
    fn simply_laced_has_one_orbit() {
        for n in 1..=6 {
            let d = RootDatum::irreducible(CartanType::A, n).unwrap();
            let p = coroot_orbit_partition(&d, &GaloisAction::trivial());
            assert_eq!(p.len(), 1);
            assert_eq!(p.orbits[0].len(), n * (n + 1));
        }
    }

    #[test]
    fn swap_merges_b2_orbits() {
        let b2 = FactorSpec::new(CartanType::B, 2).unwrap();
        let d = RootDatum::build(RootSystemSpec::simply_connected(vec![b2, b2])).unwrap();
        assert_eq!(coroot_orbit_partition(&d, &GaloisAction::trivial()).len(), 4);
        let swap = GaloisAction::swap_factors(&d, 0, 1).unwrap();
        let p = coroot_orbit_partition(&d, &swap);
        assert_eq!(p.len(), 2);
        assert!(p.orbits.iter().all(|o| o.len() == 8));
        assert_eq!(swap.factor_orbits(&d), vec![vec![0, 1]]);
    }

    #[test]
    fn galois_validation() {
        let d = RootDatum::irreducible(CartanType::B, 3).unwrap();
        assert!(GaloisAction::new(&d, vec![vec![2, 1, 0]]).is_err());
        assert!(GaloisAction::new(&d, vec![vec![0, 1]]).is_err());
        let a3 = RootDatum::irreducible(CartanType::A, 3).unwrap();
        let flip = GaloisAction::new(&a3, vec![vec![2, 1, 0]]).unwrap();
        let eta1 = a3.fundamental_weight(0).unwrap();
        assert_eq!(flip.apply(&a3, 0, &eta1), a3.fundamental_weight(2).unwrap());
        let a1a2 = RootDatum::build(RootSystemSpec::simply_connected(vec![
            FactorSpec::new(CartanType::A, 1).unwrap(),
            FactorSpec::new(CartanType::A, 2).unwrap(),
        ]))
        .unwrap();
        assert!(GaloisAction::swap_factors(&a1a2, 0, 1).is_err());
    }

    #[test]
    fn pairing_values_of_zero() {
        let d = RootDatum::irreducible(CartanType::G, 2).unwrap();
        let z = LatticeVector::character(QVector::zeros(3));
        let p = coroot_orbit_partition(&d, &GaloisAction::trivial());
        let vals = pairing_value_set(&z, &p.vectors(&d, 0, Side::Character));
        assert_eq!(vals.into_iter().collect::<Vec<_>>(), vec![int(0)]);
    }
}
