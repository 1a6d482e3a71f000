//! Root data of reductive groups in Bourbaki coordinates.
//!
//! Every irreducible factor is realized with the simple roots of the
//! Bourbaki planches, placed in its own block of ambient coordinates. Roots
//! are generated by reflection closure of the simple roots and coroots are
//! `2α/(α,α)` for the standard inner product, so characters and cocharacters
//! live in the same rational space and the pairing is the dot product.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{determinant, frac, int, inverse, rank, solve, QMatrix, QVector, Rat};

/// Cartan–Killing type of an irreducible reduced root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    pub fn letter(self) -> char {
        match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::E => 'E',
            CartanType::F => 'F',
            CartanType::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => CartanType::A,
            'B' => CartanType::B,
            'C' => CartanType::C,
            'D' => CartanType::D,
            'E' => CartanType::E,
            'F' => CartanType::F,
            'G' => CartanType::G,
            _ => return None,
        })
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self, CartanType::A | CartanType::D | CartanType::E)
    }

    pub fn valid_rank(self, rank: usize) -> bool {
        match self {
            CartanType::A => rank >= 1,
            CartanType::B | CartanType::C => rank >= 2,
            CartanType::D => rank >= 3,
            CartanType::E => (6..=8).contains(&rank),
            CartanType::F => rank == 4,
            CartanType::G => rank == 2,
        }
    }

    /// Every valid irreducible `(type, rank)` with rank at most `max_rank`,
    /// in table order.
    pub fn all_up_to(max_rank: usize) -> Vec<FactorSpec> {
        let mut out = Vec::new();
        for kind in [
            CartanType::A,
            CartanType::B,
            CartanType::C,
            CartanType::D,
            CartanType::G,
            CartanType::F,
            CartanType::E,
        ] {
            for rank in 1..=max_rank {
                if kind.valid_rank(rank) {
                    out.push(FactorSpec { kind, rank });
                }
            }
        }
        out
    }
}

/// One irreducible factor requested in a [`RootSystemSpec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorSpec {
    pub kind: CartanType,
    pub rank: usize,
}

impl FactorSpec {
    pub fn new(kind: CartanType, rank: usize) -> Result<Self> {
        if !kind.valid_rank(rank) {
            return Err(Error::InvalidRank { kind: kind.letter(), rank });
        }
        Ok(FactorSpec { kind, rank })
    }
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.rank)
    }
}

impl FromStr for FactorSpec {
    type Err = Error;

    /// Parses `"C3"`, `"e8"`, ...
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let kind = chars
            .next()
            .and_then(CartanType::from_letter)
            .ok_or_else(|| Error::UnknownType(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnknownType(s.to_string()))?;
        FactorSpec::new(kind, rank)
    }
}

/// Choice of lattice on one side of the root datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeChoice {
    /// Weight lattice on the character side, coroot lattice on the
    /// cocharacter side.
    SimplyConnected,
    /// Root lattice on the character side, coweight lattice on the
    /// cocharacter side.
    Adjoint,
    /// Explicit basis, one ambient vector per row.
    Explicit(Vec<QVector>),
}

/// Input to [`RootDatum::build`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemSpec {
    pub factors: Vec<FactorSpec>,
    pub char_lattice: LatticeChoice,
    /// `None` means "the dual of the character lattice".
    pub cochar_lattice: Option<LatticeChoice>,
}

impl RootSystemSpec {
    pub fn new(factors: Vec<FactorSpec>, lattice: LatticeChoice) -> Self {
        RootSystemSpec { factors, char_lattice: lattice, cochar_lattice: None }
    }

    pub fn simply_connected(factors: Vec<FactorSpec>) -> Self {
        Self::new(factors, LatticeChoice::SimplyConnected)
    }

    pub fn adjoint(factors: Vec<FactorSpec>) -> Self {
        Self::new(factors, LatticeChoice::Adjoint)
    }
}

/// Character side (pairs against coroots) or cocharacter side (pairs
/// against roots).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Character,
    Cocharacter,
}

impl Side {
    pub fn dual(self) -> Side {
        match self {
            Side::Character => Side::Cocharacter,
            Side::Cocharacter => Side::Character,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Character => "character",
            Side::Cocharacter => "cocharacter",
        }
    }
}

/// A rational (co)weight in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    pub coords: QVector,
    pub side: Side,
}

impl LatticeVector {
    pub fn new(coords: QVector, side: Side) -> Self {
        LatticeVector { coords, side }
    }

    pub fn character(coords: QVector) -> Self {
        Self::new(coords, Side::Character)
    }

    pub fn cocharacter(coords: QVector) -> Self {
        Self::new(coords, Side::Cocharacter)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn scale(&self, c: Rat) -> Self {
        Self::new(self.coords.scale(c), self.side)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.coords, self.side)
    }

    pub fn add(&self, other: &LatticeVector) -> Self {
        debug_assert_eq!(self.side, other.side);
        Self::new(&self.coords + &other.coords, self.side)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coords)
    }
}

/// A full-rank lattice inside the span of the roots, given by a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    basis: Vec<QVector>,
    gram_inverse: QMatrix,
}

impl Lattice {
    fn new(basis: Vec<QVector>) -> Result<Self> {
        let n = basis.len();
        let gram: QMatrix = (0..n)
            .map(|i| (0..n).map(|j| basis[i].dot(&basis[j])).collect())
            .collect();
        let gram_inverse = inverse(&gram)
            .ok_or_else(|| Error::InvalidLattice("basis vectors are linearly dependent".into()))?;
        Ok(Lattice { basis, gram_inverse })
    }

    pub fn basis(&self) -> &[QVector] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is outside the
    /// rational span.
    pub fn coordinates(&self, v: &QVector) -> Option<Vec<Rat>> {
        let rhs: Vec<Rat> = self.basis.iter().map(|b| b.dot(v)).collect();
        let coeffs: Vec<Rat> = self
            .gram_inverse
            .iter()
            .map(|row| row.iter().zip(&rhs).map(|(a, b)| a * b).sum())
            .collect();
        (self.combine(&coeffs) == *v).then_some(coeffs)
    }

    pub fn contains(&self, v: &QVector) -> bool {
        self.coordinates(v)
            .is_some_and(|c| c.iter().all(|x| x.is_integer()))
    }

    /// `Σ coeffs[k] · basis[k]`.
    pub fn combine(&self, coeffs: &[Rat]) -> QVector {
        let dim = self.basis.first().map_or(0, QVector::dim);
        coeffs
            .iter()
            .zip(&self.basis)
            .fold(QVector::zeros(dim), |acc, (c, b)| acc.add_scaled(*c, b))
    }

    /// The dual basis inside the same span.
    fn dual(&self) -> Result<Lattice> {
        let dual: Vec<QVector> = self.gram_inverse.iter().map(|row| self.combine(row)).collect();
        Lattice::new(dual)
    }
}

/// A subset `Δ_L` of the simple roots, i.e. the type of a standard Levi.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Levi(pub BTreeSet<usize>);

impl Levi {
    pub fn new(simple: impl IntoIterator<Item = usize>) -> Self {
        Levi(simple.into_iter().collect())
    }

    /// The Levi `Δ \ {excluded}`.
    pub fn without(datum: &RootDatum, excluded: impl IntoIterator<Item = usize>) -> Self {
        let excluded: BTreeSet<usize> = excluded.into_iter().collect();
        Levi((0..datum.semisimple_rank()).filter(|i| !excluded.contains(i)).collect())
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    /// `Δ \ Δ_L`.
    pub fn complement(&self, datum: &RootDatum) -> Vec<usize> {
        (0..datum.semisimple_rank()).filter(|i| !self.0.contains(i)).collect()
    }

    pub fn is_full(&self, datum: &RootDatum) -> bool {
        self.0.len() == datum.semisimple_rank()
    }
}

/// Multiplicities of the simple roots in the highest root and highest
/// coroot of one irreducible factor, indexed by local vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexData {
    /// Global indices of the factor's simple roots.
    pub simple: Vec<usize>,
    pub m: Vec<i64>,
    pub m_vee: Vec<i64>,
    pub special: Vec<bool>,
    pub cospecial: Vec<bool>,
}

impl VertexData {
    pub fn special_vertices(&self) -> Vec<usize> {
        self.simple.iter().zip(&self.special).filter(|(_, &s)| s).map(|(&i, _)| i).collect()
    }

    pub fn cospecial_vertices(&self) -> Vec<usize> {
        self.simple.iter().zip(&self.cospecial).filter(|(_, &s)| s).map(|(&i, _)| i).collect()
    }

    pub fn local(&self, global: usize) -> Option<usize> {
        self.simple.iter().position(|&i| i == global)
    }
}

/// One irreducible factor inside a [`RootDatum`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub spec: FactorSpec,
    /// Global indices of the simple roots.
    pub simple: Range<usize>,
    /// Ambient coordinate block.
    pub ambient: Range<usize>,
    /// Root index of the highest root.
    pub highest_root: usize,
    /// Root index whose coroot is the highest coroot.
    pub highest_coroot: usize,
    long_norm: Rat,
    vertex: VertexData,
}

/// A root datum with roots, coroots, lattices and structural invariants
/// precomputed. Immutable after [`RootDatum::build`].
#[derive(Clone, Debug)]
pub struct RootDatum {
    ambient_dim: usize,
    factors: Vec<Factor>,
    roots: Vec<QVector>,
    coroots: Vec<QVector>,
    num_positive: usize,
    simple_index: Vec<usize>,
    root_lookup: HashMap<QVector, usize>,
    coroot_lookup: HashMap<QVector, usize>,
    root_factor: Vec<usize>,
    /// Coordinates of each root in the simple roots.
    root_coords: Vec<Vec<i64>>,
    /// Coordinates of each coroot in the simple coroots.
    coroot_coords: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    fund_weights: Vec<QVector>,
    fund_coweights: Vec<QVector>,
    /// `reflection_perm[i][j]` is the index of `s_i(root_j)`.
    reflection_perm: Vec<Vec<usize>>,
    char_lattice: Lattice,
    cochar_lattice: Lattice,
    spec: RootSystemSpec,
}

/// Simple roots of an irreducible type in Bourbaki coordinates.
pub fn bourbaki_simple_roots(spec: FactorSpec) -> (usize, Vec<QVector>) {
    let n = spec.rank;
    let e = |dim: usize, i: usize| QVector::unit(dim, i);
    let diff = |dim: usize, i: usize, j: usize| &e(dim, i) - &e(dim, j);
    match spec.kind {
        CartanType::A => (n + 1, (0..n).map(|i| diff(n + 1, i, i + 1)).collect()),
        CartanType::B | CartanType::C | CartanType::D => {
            let mut simple: Vec<QVector> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            simple.push(match spec.kind {
                CartanType::B => e(n, n - 1),
                CartanType::C => e(n, n - 1).scale(int(2)),
                _ => &e(n, n - 2) + &e(n, n - 1),
            });
            (n, simple)
        }
        CartanType::E => {
            let h = frac(1, 2);
            let mut a1 = QVector::zeros(8);
            a1[0] = h;
            a1[7] = h;
            for k in 1..7 {
                a1[k] = -h;
            }
            let mut simple = vec![a1, &e(8, 0) + &e(8, 1), diff(8, 1, 0)];
            for k in 2..n - 1 {
                simple.push(diff(8, k, k - 1));
            }
            (8, simple)
        }
        CartanType::F => {
            let h = frac(1, 2);
            (
                4,
                vec![
                    diff(4, 1, 2),
                    diff(4, 2, 3),
                    e(4, 3),
                    QVector(vec![h, -h, -h, -h]),
                ],
            )
        }
        CartanType::G => (3, vec![diff(3, 0, 1), QVector::from_ints(&[-2, 1, 1])]),
    }
}

fn coroot_of(root: &QVector) -> QVector {
    root.scale(int(2) / root.norm2())
}

fn reflect_in(v: &QVector, root: &QVector) -> QVector {
    v.add_scaled(-(v.dot(root) * int(2) / root.norm2()), root)
}

fn to_i64(v: Rat, what: &str) -> Result<i64> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::Invariant(format!("{what} is not integral: {v}")))
    }
}

impl RootDatum {
    /// Build a root datum, validating the lattice choices.
    pub fn build(spec: RootSystemSpec) -> Result<RootDatum> {
        if spec.factors.is_empty() {
            return Err(Error::Empty);
        }
        for f in &spec.factors {
            FactorSpec::new(f.kind, f.rank)?;
        }

        // Simple roots, each factor in its own coordinate block.
        let blocks: Vec<(usize, Vec<QVector>)> =
            spec.factors.iter().map(|&f| bourbaki_simple_roots(f)).collect();
        let ambient_dim: usize = blocks.iter().map(|b| b.0).sum();
        let mut simple_roots = Vec::new();
        let mut layout = Vec::new();
        let mut offset = 0;
        for (dim, roots) in &blocks {
            let start = simple_roots.len();
            for r in roots {
                let mut v = QVector::zeros(ambient_dim);
                for (k, x) in r.iter().enumerate() {
                    v[offset + k] = *x;
                }
                simple_roots.push(v);
            }
            layout.push((start..simple_roots.len(), offset..offset + dim));
            offset += dim;
        }
        let rank = simple_roots.len();
        let simple_coroots: Vec<QVector> = simple_roots.iter().map(coroot_of).collect();

        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| to_i64(simple_roots[j].dot(&simple_coroots[i]), "Cartan entry"))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let cartan_q: QMatrix =
            cartan.iter().map(|row| row.iter().map(|&x| int(x)).collect()).collect();
        let cartan_t: QMatrix = (0..rank).map(|i| (0..rank).map(|j| cartan_q[j][i]).collect()).collect();

        let combine = |basis: &[QVector], coeffs: &[Rat]| {
            coeffs
                .iter()
                .zip(basis)
                .fold(QVector::zeros(ambient_dim), |acc, (c, b)| acc.add_scaled(*c, b))
        };
        let unit = |i: usize| -> Vec<Rat> {
            (0..rank).map(|k| if k == i { Rat::one() } else { Rat::zero() }).collect()
        };
        let mut fund_weights = Vec::with_capacity(rank);
        let mut fund_coweights = Vec::with_capacity(rank);
        for i in 0..rank {
            let x = solve(&cartan_q, &unit(i))
                .ok_or_else(|| Error::Invariant("singular Cartan matrix".into()))?;
            fund_weights.push(combine(&simple_roots, &x));
            let y = solve(&cartan_t, &unit(i))
                .ok_or_else(|| Error::Invariant("singular Cartan matrix".into()))?;
            fund_coweights.push(combine(&simple_coroots, &y));
        }

        // Reflection closure of the simple roots.
        let mut seen: HashSet<QVector> = simple_roots.iter().cloned().collect();
        let mut all: Vec<QVector> = simple_roots.clone();
        let mut head = 0;
        while head < all.len() {
            let v = all[head].clone();
            head += 1;
            for a in &simple_roots {
                let w = reflect_in(&v, a);
                if seen.insert(w.clone()) {
                    all.push(w);
                }
            }
        }

        let coords_in = |v: &QVector, duals: &[QVector]| -> Result<Vec<i64>> {
            duals.iter().map(|d| to_i64(v.dot(d), "root coordinate")).collect()
        };
        let mut positive: Vec<(usize, usize, Vec<i64>, QVector)> = Vec::new();
        for v in &all {
            let c = coords_in(v, &fund_coweights)?;
            if c.iter().all(|&x| x >= 0) {
                let first = c.iter().position(|&x| x != 0).unwrap_or(0);
                let factor = layout.iter().position(|(s, _)| s.contains(&first)).unwrap_or(0);
                let height = c.iter().sum::<i64>() as usize;
                positive.push((factor, height, c, v.clone()));
            } else if !c.iter().all(|&x| x <= 0) {
                return Err(Error::Invariant(format!("root {v} is neither positive nor negative")));
            }
        }
        positive.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
        let num_positive = positive.len();
        if 2 * num_positive != all.len() {
            return Err(Error::Invariant("root system is not symmetric".into()));
        }
        let mut roots: Vec<QVector> = positive.iter().map(|p| p.3.clone()).collect();
        let mut root_factor: Vec<usize> = positive.iter().map(|p| p.0).collect();
        roots.extend(positive.iter().map(|p| -&p.3));
        root_factor.extend(positive.iter().map(|p| p.0));
        let coroots: Vec<QVector> = roots.iter().map(coroot_of).collect();
        let root_lookup: HashMap<QVector, usize> =
            roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let coroot_lookup: HashMap<QVector, usize> =
            coroots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let root_coords: Vec<Vec<i64>> =
            roots.iter().map(|r| coords_in(r, &fund_coweights)).collect::<Result<_>>()?;
        let coroot_coords: Vec<Vec<i64>> =
            coroots.iter().map(|r| coords_in(r, &fund_weights)).collect::<Result<_>>()?;

        let simple_index: Vec<usize> = simple_roots
            .iter()
            .map(|a| {
                root_lookup
                    .get(a)
                    .copied()
                    .ok_or_else(|| Error::Invariant("simple root missing".into()))
            })
            .collect::<Result<_>>()?;

        let reflection_perm: Vec<Vec<usize>> = simple_roots
            .iter()
            .map(|a| {
                roots
                    .iter()
                    .map(|r| {
                        root_lookup.get(&reflect_in(r, a)).copied().ok_or_else(|| {
                            Error::Invariant("roots not closed under reflection".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;

        let mut factors = Vec::new();
        for (fi, (simple, ambient)) in layout.into_iter().enumerate() {
            let members: Vec<usize> =
                (0..num_positive).filter(|&i| root_factor[i] == fi).collect();
            let height = |c: &[i64]| c.iter().sum::<i64>();
            let highest_root = *members
                .iter()
                .max_by_key(|&&i| height(&root_coords[i]))
                .ok_or_else(|| Error::Invariant("factor without roots".into()))?;
            let highest_coroot = *members
                .iter()
                .max_by_key(|&&i| height(&coroot_coords[i]))
                .ok_or_else(|| Error::Invariant("factor without roots".into()))?;
            let long_norm = members.iter().map(|&i| roots[i].norm2()).max().unwrap_or_default();
            let m: Vec<i64> = simple.clone().map(|i| root_coords[highest_root][i]).collect();
            let m_vee: Vec<i64> = simple.clone().map(|i| coroot_coords[highest_coroot][i]).collect();
            let vertex = VertexData {
                simple: simple.clone().collect(),
                special: m.iter().map(|&x| x == 1).collect(),
                cospecial: m_vee.iter().map(|&x| x == 1).collect(),
                m,
                m_vee,
            };
            factors.push(Factor {
                spec: spec.factors[fi],
                simple,
                ambient,
                highest_root,
                highest_coroot,
                long_norm,
                vertex,
            });
        }

        let char_basis = match &spec.char_lattice {
            LatticeChoice::SimplyConnected => fund_weights.clone(),
            LatticeChoice::Adjoint => simple_roots.clone(),
            LatticeChoice::Explicit(b) => b.clone(),
        };
        let char_lattice = Self::checked_lattice(char_basis, ambient_dim, &fund_weights, &simple_roots, &simple_coroots, "character")?;
        let cochar_lattice = match &spec.cochar_lattice {
            None => char_lattice.dual()?,
            Some(choice) => {
                let basis = match choice {
                    LatticeChoice::SimplyConnected => simple_coroots.clone(),
                    LatticeChoice::Adjoint => fund_coweights.clone(),
                    LatticeChoice::Explicit(b) => b.clone(),
                };
                Self::checked_lattice(basis, ambient_dim, &fund_coweights, &simple_coroots, &simple_roots, "cocharacter")?
            }
        };
        Self::check_perfect_pairing(&char_lattice, &cochar_lattice)?;

        Ok(RootDatum {
            ambient_dim,
            factors,
            roots,
            coroots,
            num_positive,
            simple_index,
            root_lookup,
            coroot_lookup,
            root_factor,
            root_coords,
            coroot_coords,
            cartan,
            fund_weights,
            fund_coweights,
            reflection_perm,
            char_lattice,
            cochar_lattice,
            spec,
        })
    }

    /// Validate that `basis` spans a lattice between the lattice generated by
    /// `lower` and the one dual to `partners` (`upper_basis` spans the same
    /// rational space).
    fn checked_lattice(
        basis: Vec<QVector>,
        ambient_dim: usize,
        upper_basis: &[QVector],
        lower: &[QVector],
        partners: &[QVector],
        side: &str,
    ) -> Result<Lattice> {
        if basis.len() != lower.len() {
            return Err(Error::InvalidLattice(format!(
                "{side} lattice needs {} basis vectors, got {}",
                lower.len(),
                basis.len()
            )));
        }
        if let Some(b) = basis.iter().find(|b| b.dim() != ambient_dim) {
            return Err(Error::DimensionMismatch(b.clone(), ambient_dim));
        }
        if rank(&basis) != basis.len() {
            return Err(Error::InvalidLattice(format!("{side} basis is not of full rank")));
        }
        let span = Lattice::new(upper_basis.to_vec())?;
        if let Some(b) = basis.iter().find(|b| span.coordinates(b).is_none()) {
            return Err(Error::InvalidLattice(format!(
                "{side} basis vector {b} is not in the span of the roots"
            )));
        }
        if let Some((b, p)) = basis
            .iter()
            .flat_map(|b| partners.iter().map(move |p| (b, p)))
            .find(|(b, p)| !b.dot(p).is_integer())
        {
            return Err(Error::InvalidLattice(format!(
                "{side} basis vector {b} pairs non-integrally with {p}"
            )));
        }
        let lattice = Lattice::new(basis)?;
        if let Some(r) = lower.iter().find(|r| !lattice.contains(r)) {
            return Err(Error::InvalidLattice(format!("{side} lattice does not contain {r}")));
        }
        Ok(lattice)
    }

    fn check_perfect_pairing(chars: &Lattice, cochars: &Lattice) -> Result<()> {
        let m: QMatrix = chars
            .basis()
            .iter()
            .map(|a| cochars.basis().iter().map(|b| a.dot(b)).collect())
            .collect();
        if m.iter().flatten().any(|x| !x.is_integer()) || determinant(&m).abs() != Rat::one() {
            return Err(Error::InvalidLattice(
                "character and cocharacter lattices are not in perfect duality".into(),
            ));
        }
        Ok(())
    }

    /// Convenience: the simply-connected datum of one irreducible type.
    pub fn irreducible(kind: CartanType, rank: usize) -> Result<RootDatum> {
        Self::build(RootSystemSpec::simply_connected(vec![FactorSpec::new(kind, rank)?]))
    }

    pub fn spec(&self) -> &RootSystemSpec {
        &self.spec
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn factor(&self, f: usize) -> Result<&Factor> {
        self.factors.get(f).ok_or(Error::BadFactorIndex(f))
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1
    }

    /// Factor containing the simple root `i`.
    pub fn simple_factor(&self, i: usize) -> usize {
        self.factors.iter().position(|f| f.simple.contains(&i)).expect("simple index in range")
    }

    pub fn roots(&self) -> &[QVector] {
        &self.roots
    }

    pub fn coroots(&self) -> &[QVector] {
        &self.coroots
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    pub fn is_positive(&self, j: usize) -> bool {
        j < self.num_positive
    }

    /// Index of `-root_j`.
    pub fn negative_of(&self, j: usize) -> usize {
        if j < self.num_positive {
            j + self.num_positive
        } else {
            j - self.num_positive
        }
    }

    pub fn root_index(&self, v: &QVector) -> Option<usize> {
        self.root_lookup.get(v).copied()
    }

    pub fn coroot_index(&self, v: &QVector) -> Option<usize> {
        self.coroot_lookup.get(v).copied()
    }

    pub fn root_factor(&self, j: usize) -> usize {
        self.root_factor[j]
    }

    pub fn root_coordinates(&self, j: usize) -> &[i64] {
        &self.root_coords[j]
    }

    pub fn coroot_coordinates(&self, j: usize) -> &[i64] {
        &self.coroot_coords[j]
    }

    pub fn simple_root(&self, i: usize) -> &QVector {
        &self.roots[self.simple_root_index(i)]
    }

    pub fn simple_coroot(&self, i: usize) -> &QVector {
        &self.coroots[self.simple_root_index(i)]
    }

    pub fn simple_root_index(&self, i: usize) -> usize {
        self.simple_index[i]
    }

    /// `A_ij = <α_j, α_i^∨>`.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Image of root `j` under the simple reflection `s_i`.
    pub fn reflect_root_index(&self, i: usize, j: usize) -> usize {
        self.reflection_perm[i][j]
    }

    pub fn fundamental_weights(&self) -> &[QVector] {
        &self.fund_weights
    }

    pub fn fundamental_coweights(&self) -> &[QVector] {
        &self.fund_coweights
    }

    /// `η(α_i)`.
    pub fn fundamental_weight(&self, i: usize) -> Result<LatticeVector> {
        self.fund_weights
            .get(i)
            .map(|v| LatticeVector::character(v.clone()))
            .ok_or(Error::BadSimpleIndex(i))
    }

    /// `η(α_i^∨)`.
    pub fn fundamental_coweight(&self, i: usize) -> Result<LatticeVector> {
        self.fund_coweights
            .get(i)
            .map(|v| LatticeVector::cocharacter(v.clone()))
            .ok_or(Error::BadSimpleIndex(i))
    }

    /// Fundamental weight or coweight depending on the side.
    pub fn fundamental(&self, side: Side, i: usize) -> Result<LatticeVector> {
        match side {
            Side::Character => self.fundamental_weight(i),
            Side::Cocharacter => self.fundamental_coweight(i),
        }
    }

    /// The vectors a vector on `side` is paired against: coroots for
    /// characters, roots for cocharacters.
    pub fn partners(&self, side: Side) -> &[QVector] {
        match side {
            Side::Character => &self.coroots,
            Side::Cocharacter => &self.roots,
        }
    }

    /// Simple coroot (character side) or simple root (cocharacter side).
    pub fn simple_partner(&self, side: Side, i: usize) -> &QVector {
        match side {
            Side::Character => self.simple_coroot(i),
            Side::Cocharacter => self.simple_root(i),
        }
    }

    /// Pairings with the simple partners; these are the coordinates in the
    /// fundamental (co)weights of the projection to the root span.
    pub fn fundamental_coordinates(&self, v: &LatticeVector) -> Vec<Rat> {
        (0..self.semisimple_rank()).map(|i| v.coords.dot(self.simple_partner(v.side, i))).collect()
    }

    /// `Σ c_i η(α_i)` (or coweights).
    pub fn from_fundamental_coordinates(&self, side: Side, coeffs: &[Rat]) -> LatticeVector {
        let basis = match side {
            Side::Character => &self.fund_weights,
            Side::Cocharacter => &self.fund_coweights,
        };
        let v = coeffs
            .iter()
            .zip(basis)
            .fold(QVector::zeros(self.ambient_dim), |acc, (c, b)| acc.add_scaled(*c, b));
        LatticeVector::new(v, side)
    }

    /// Integer shorthand for [`Self::from_fundamental_coordinates`].
    pub fn weight(&self, side: Side, coeffs: &[i64]) -> LatticeVector {
        let c: Vec<Rat> = coeffs.iter().map(|&x| int(x)).collect();
        self.from_fundamental_coordinates(side, &c)
    }

    /// Orthogonal projection onto the span of the roots.
    pub fn project_to_root_span(&self, v: &LatticeVector) -> LatticeVector {
        self.from_fundamental_coordinates(v.side, &self.fundamental_coordinates(v))
    }

    /// Block of `v` on one factor (its projection to that factor's span).
    pub fn factor_projection(&self, v: &LatticeVector, f: usize) -> LatticeVector {
        let mut c = self.fundamental_coordinates(v);
        let range = &self.factors[f].simple;
        for (i, x) in c.iter_mut().enumerate() {
            if !range.contains(&i) {
                *x = Rat::zero();
            }
        }
        self.from_fundamental_coordinates(v.side, &c)
    }

    pub fn is_dominant(&self, v: &LatticeVector) -> bool {
        self.fundamental_coordinates(v).iter().all(|x| *x >= Rat::zero())
    }

    pub fn lattice(&self, side: Side) -> &Lattice {
        match side {
            Side::Character => &self.char_lattice,
            Side::Cocharacter => &self.cochar_lattice,
        }
    }

    pub fn in_lattice(&self, v: &LatticeVector) -> bool {
        self.lattice(v.side).contains(&v.coords)
    }

    pub fn check_dim(&self, v: &QVector) -> Result<()> {
        if v.dim() == self.ambient_dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(v.clone(), self.ambient_dim))
        }
    }

    pub fn is_long_root(&self, j: usize) -> bool {
        self.roots[j].norm2() == self.factors[self.root_factor[j]].long_norm
    }

    pub fn is_short_root(&self, j: usize) -> bool {
        !self.is_long_root(j)
    }

    pub fn highest_root(&self, f: usize) -> Result<&QVector> {
        Ok(&self.roots[self.factor(f)?.highest_root])
    }

    pub fn highest_coroot(&self, f: usize) -> Result<&QVector> {
        Ok(&self.coroots[self.factor(f)?.highest_coroot])
    }

    /// Coroot of the highest root, `(ʰα)^∨`.
    pub fn coroot_of_highest_root(&self, f: usize) -> Result<&QVector> {
        Ok(&self.coroots[self.factor(f)?.highest_root])
    }

    /// Root multiplicities, coroot multiplicities and (co)special flags of a
    /// factor.
    pub fn vertex_data(&self, f: usize) -> Result<&VertexData> {
        Ok(&self.factor(f)?.vertex)
    }

    /// Whether `η(α_i)` (character side) or `η(α_i^∨)` (cocharacter side)
    /// is minuscule: cospecial for weights, special for coweights.
    pub fn fundamental_is_minuscule(&self, side: Side, i: usize) -> bool {
        let vd = &self.factors[self.simple_factor(i)].vertex;
        let k = vd.local(i).expect("vertex of its own factor");
        match side {
            Side::Character => vd.cospecial[k],
            Side::Cocharacter => vd.special[k],
        }
    }

    /// Whether the fundamental (co)weight at vertex `i` is cominuscule.
    pub fn fundamental_is_cominuscule(&self, side: Side, i: usize) -> bool {
        self.fundamental_is_minuscule(side.dual(), i)
    }

    /// A sequence of simple coroots of factor `f` whose every prefix sum is
    /// a coroot and whose total is the highest coroot.
    ///
    /// Depth-first search over single-coroot extensions, trying the lowest
    /// index first; the first chain found is returned.
    pub fn coroot_chain(&self, f: usize) -> Result<Vec<usize>> {
        let factor = self.factor(f)?;
        let simple: Vec<usize> = factor.simple.clone().collect();
        let target = &self.coroot_coords[factor.highest_coroot];
        let positive: HashSet<&[i64]> = (0..self.num_positive)
            .filter(|&j| self.root_factor[j] == f)
            .map(|j| self.coroot_coords[j].as_slice())
            .collect();
        let mut failed: HashSet<Vec<i64>> = HashSet::new();
        let mut chain = Vec::new();
        let start = vec![0i64; self.semisimple_rank()];
        if self.chain_search(&start, target, &simple, &positive, &mut failed, &mut chain) {
            Ok(chain)
        } else {
            Err(Error::Invariant(format!("no coroot chain for factor {f}")))
        }
    }

    fn chain_search(
        &self,
        current: &[i64],
        target: &[i64],
        simple: &[usize],
        positive: &HashSet<&[i64]>,
        failed: &mut HashSet<Vec<i64>>,
        chain: &mut Vec<usize>,
    ) -> bool {
        if current == target {
            return true;
        }
        for &i in simple {
            if current[i] >= target[i] {
                continue;
            }
            let mut next = current.to_vec();
            next[i] += 1;
            if !positive.contains(next.as_slice()) || failed.contains(&next) {
                continue;
            }
            chain.push(i);
            if self.chain_search(&next, target, simple, positive, failed, chain) {
                return true;
            }
            chain.pop();
            failed.insert(next);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(kind: CartanType, rank: usize) -> RootDatum {
        RootDatum::irreducible(kind, rank).unwrap()
    }

    #[test]
    fn rank_constraints() {
        assert!(FactorSpec::new(CartanType::B, 1).is_err());
        assert!(FactorSpec::new(CartanType::D, 2).is_err());
        assert!(FactorSpec::new(CartanType::E, 5).is_err());
        assert!(FactorSpec::new(CartanType::F, 3).is_err());
        assert!(FactorSpec::new(CartanType::G, 3).is_err());
        assert!(FactorSpec::new(CartanType::A, 1).is_ok());
        assert_eq!("e7".parse::<FactorSpec>().unwrap(), FactorSpec { kind: CartanType::E, rank: 7 });
        assert!("Q3".parse::<FactorSpec>().is_err());
    }

    #[test]
    fn root_counts() {
        let cases = [
            (CartanType::A, 1, 2),
            (CartanType::A, 4, 20),
            (CartanType::B, 3, 18),
            (CartanType::C, 4, 32),
            (CartanType::D, 5, 40),
            (CartanType::G, 2, 12),
            (CartanType::F, 4, 48),
            (CartanType::E, 6, 72),
            (CartanType::E, 7, 126),
            (CartanType::E, 8, 240),
        ];
        for (k, n, count) in cases {
            let d = datum(k, n);
            assert_eq!(d.num_roots(), count, "{k:?}{n}");
            assert_eq!(d.coroots().len(), count);
        }
    }

    #[test]
    fn simple_root_indices_are_consistent() {
        for spec in CartanType::all_up_to(8) {
            let d = datum(spec.kind, spec.rank);
            let (_, simple) = bourbaki_simple_roots(spec);
            for (i, s) in simple.iter().enumerate() {
                assert_eq!(d.simple_root(i), s, "{spec} α{}", i + 1);
            }
        }
    }

    #[test]
    fn a1_adjoint() {
        let d = RootDatum::build(RootSystemSpec::adjoint(vec![FactorSpec::new(CartanType::A, 1).unwrap()]))
            .unwrap();
        assert_eq!(d.num_roots(), 2);
        let alpha = d.simple_root(0).clone();
        assert_eq!(d.lattice(Side::Character).basis(), std::slice::from_ref(&alpha));
        assert_eq!(alpha.dot(d.simple_coroot(0)), int(2));
        assert_eq!(d.cartan_matrix(), &[vec![2]]);
    }

    #[test]
    fn highest_coroot_differs_exactly_when_multilaced() {
        for spec in CartanType::all_up_to(8) {
            let d = datum(spec.kind, spec.rank);
            let same = d.highest_coroot(0).unwrap() == d.coroot_of_highest_root(0).unwrap();
            assert_eq!(same, spec.kind.is_simply_laced() || spec.rank == 1, "{spec}");
        }
    }

    #[test]
    fn lattice_between_root_and_weight_lattice() {
        let a1 = FactorSpec::new(CartanType::A, 1).unwrap();
        let half_root = QVector(vec![frac(1, 4), frac(-1, 4)]);
        let bad = RootSystemSpec::new(vec![a1], LatticeChoice::Explicit(vec![half_root]));
        assert!(matches!(RootDatum::build(bad), Err(Error::InvalidLattice(_))));
        let outside = RootSystemSpec::new(vec![a1], LatticeChoice::Explicit(vec![QVector::from_ints(&[1, 0])]));
        assert!(RootDatum::build(outside).is_err());
        // A3 with the lattice generated by the roots and η(α2), of index 2 in
        // the weight lattice.
        let a3 = FactorSpec::new(CartanType::A, 3).unwrap();
        let d = datum(CartanType::A, 3);
        let basis = vec![
            d.fundamental_weights()[1].clone(),
            d.simple_root(0).clone(),
            d.simple_root(1).clone(),
        ];
        let mid = RootDatum::build(RootSystemSpec::new(vec![a3], LatticeChoice::Explicit(basis))).unwrap();
        assert!(mid.in_lattice(&mid.fundamental_weight(1).unwrap()));
        assert!(!mid.in_lattice(&mid.fundamental_weight(0).unwrap()));
    }

    #[test]
    fn mismatched_lattices_are_rejected() {
        let b2 = FactorSpec::new(CartanType::B, 2).unwrap();
        let spec = RootSystemSpec {
            factors: vec![b2],
            char_lattice: LatticeChoice::SimplyConnected,
            cochar_lattice: Some(LatticeChoice::Adjoint),
        };
        assert!(RootDatum::build(spec).is_err());
        let spec = RootSystemSpec {
            factors: vec![b2],
            char_lattice: LatticeChoice::Adjoint,
            cochar_lattice: Some(LatticeChoice::Adjoint),
        };
        assert!(RootDatum::build(spec).is_ok());
    }

    #[test]
    fn products_are_block_diagonal() {
        let spec = RootSystemSpec::simply_connected(vec![
            FactorSpec::new(CartanType::B, 2).unwrap(),
            FactorSpec::new(CartanType::A, 2).unwrap(),
        ]);
        let d = RootDatum::build(spec).unwrap();
        assert_eq!(d.ambient_dim(), 5);
        assert_eq!(d.semisimple_rank(), 4);
        assert_eq!(d.num_roots(), 8 + 6);
        assert_eq!(d.cartan_matrix()[0][2], 0);
        assert_eq!(d.simple_factor(3), 1);
        assert_eq!(d.factors()[1].ambient, 2..5);
    }

    #[test]
    fn g2_vertex_data() {
        let d = datum(CartanType::G, 2);
        let vd = d.vertex_data(0).unwrap();
        assert!(vd.special_vertices().is_empty());
        assert!(vd.cospecial_vertices().is_empty());
    }

    #[test]
    fn chain_for_a2() {
        let d = datum(CartanType::A, 2);
        assert_eq!(d.coroot_chain(0).unwrap(), vec![0, 1]);
    }
}
