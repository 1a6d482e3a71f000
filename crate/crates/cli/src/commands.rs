//! The subcommands, each producing a [`Report`].

use quasiconst::classify::{verify_classification, Classifier};
use quasiconst::duality::{centralizer_levi, dualize_ray, dualize_ray_inverse, verify_duality};
use quasiconst::hasse::{bound_for_levi, full_table, grouped_table};
use quasiconst::predicates::{is_cominuscule, is_l_ample, is_minuscule, OrbitContext};
use quasiconst::{
    BoundReport, Classification, FactorKind, LatticeVector, Levi, PredicateWitness, QVector, Rat, Ray, RootDatum,
    Side,
};
use thiserror::Error;

use crate::input::{InputError, LoadedDatum};
use crate::report::*;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Core(#[from] quasiconst::Error),
}

pub type CliResult<T> = Result<T, CliError>;

fn strs(v: &QVector) -> Vec<String> {
    v.iter().map(Rat::to_string).collect()
}

fn label(i: usize) -> String {
    format!("α{}", i + 1)
}

fn labels(xs: impl IntoIterator<Item = usize>) -> Vec<String> {
    xs.into_iter().map(label).collect()
}

fn side_name(side: Side) -> String {
    side.name().to_string()
}

fn vector_out(datum: &RootDatum, v: &LatticeVector) -> VectorOut {
    VectorOut {
        side: side_name(v.side),
        ambient: strs(&v.coords),
        fundamental: datum.fundamental_coordinates(v).iter().map(Rat::to_string).collect(),
    }
}

/// `2η(α1) + η(α3)`, with `α∨` on the cocharacter side.
pub fn fundamental_label(coeffs: &[i64], side: Side) -> String {
    let dual = if side == Side::Cocharacter { "∨" } else { "" };
    let mut out = String::new();
    for (i, &c) in coeffs.iter().enumerate().filter(|(_, c)| **c != 0) {
        let sign = if c < 0 { "-" } else { "+" };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if c.abs() != 1 {
            out.push_str(&c.abs().to_string());
        }
        out.push_str(&format!("η(α{}{dual})", i + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn ray_out(datum: &RootDatum, r: &Ray) -> RayOut {
    let fundamental = r.fundamental_ray(datum);
    RayOut {
        side: side_name(r.side()),
        label: format!("ray {}", fundamental_label(&fundamental, r.side())),
        ambient: strs(&r.direction.coords),
        lattice_coefficients: r.coefficients.clone(),
        fundamental,
    }
}

fn witness_out(w: &PredicateWitness) -> WitnessOut {
    match w {
        PredicateWitness::CorootPair { orbit, first, second, first_value, second_value } => WitnessOut::CorootPair {
            orbit: *orbit,
            first: strs(first),
            second: strs(second),
            values: [first_value.to_string(), second_value.to_string()],
        },
        PredicateWitness::AmpleViolation { simple, value } => {
            WitnessOut::AmpleViolation { simple: label(*simple), value: value.to_string() }
        }
    }
}

fn report(ld: Option<&LoadedDatum>, command: &str, passed: bool, body: Body) -> Report {
    Report { command: command.into(), datum: ld.map(|d| d.label.clone()), passed, body }
}

pub fn cmd_describe(ld: &LoadedDatum) -> CliResult<Report> {
    let d = &ld.datum;
    let factors = d
        .factors()
        .iter()
        .enumerate()
        .map(|(f, factor)| {
            let vd = d.vertex_data(f)?;
            Ok(FactorOut {
                kind: factor.spec.to_string(),
                simple_roots: labels(factor.simple.clone()),
                highest_root: strs(d.highest_root(f)?),
                highest_coroot: strs(d.highest_coroot(f)?),
                m: vd.m.clone(),
                m_vee: vd.m_vee.clone(),
                special: labels(vd.special_vertices()),
                cospecial: labels(vd.cospecial_vertices()),
            })
        })
        .collect::<quasiconst::Result<Vec<_>>>()?;
    let body = Describe {
        ambient_dim: d.ambient_dim(),
        semisimple_rank: d.semisimple_rank(),
        num_roots: d.num_roots(),
        cartan_matrix: d.cartan_matrix().to_vec(),
        simple_roots: (0..d.semisimple_rank()).map(|i| strs(d.simple_root(i))).collect(),
        positive_roots: d.roots()[..d.num_positive()].iter().map(strs).collect(),
        fundamental_weights: d.fundamental_weights().iter().map(strs).collect(),
        fundamental_coweights: d.fundamental_coweights().iter().map(strs).collect(),
        char_lattice_basis: d.lattice(Side::Character).basis().iter().map(strs).collect(),
        cochar_lattice_basis: d.lattice(Side::Cocharacter).basis().iter().map(strs).collect(),
        factors,
        galois: ld.galois.generators().iter().map(|g| g.iter().map(|i| i + 1).collect()).collect(),
    };
    Ok(report(Some(ld), "describe", true, Body::Describe(body)))
}

/// Predicates surfaced by `check`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    Minuscule,
    Cominuscule,
    QuasiConstant,
    PClose(i64),
    /// Simple roots of the Levi, zero-based.
    Ample(Vec<usize>),
    Admissible(i64, Vec<usize>),
}

impl Predicate {
    fn name(&self) -> String {
        match self {
            Predicate::Minuscule => "minuscule".into(),
            Predicate::Cominuscule => "cominuscule".into(),
            Predicate::QuasiConstant => "quasi-constant".into(),
            Predicate::PClose(p) => format!("orbitally {p}-close"),
            Predicate::Ample(l) => format!("L-ample for L = {{{}}}", labels(l.iter().copied()).join(", ")),
            Predicate::Admissible(p, l) => {
                format!("({p}, L)-admissible for L = {{{}}}", labels(l.iter().copied()).join(", "))
            }
        }
    }
}

pub fn cmd_check(ld: &LoadedDatum, v: &LatticeVector, predicate: &Predicate, integral: bool) -> CliResult<Report> {
    let d = &ld.datum;
    if integral && !d.in_lattice(v) {
        return Err(quasiconst::Error::NotInLattice(v.coords.clone()).into());
    }
    let ctx = OrbitContext::new(d, &ld.galois);
    let mut witness = None;
    let mut ratio = None;
    let holds = match predicate {
        Predicate::Minuscule => is_minuscule(d, v),
        Predicate::Cominuscule => is_cominuscule(d, v),
        Predicate::QuasiConstant => {
            let verdict = ctx.is_quasi_constant(v);
            witness = verdict.witness.as_ref().map(witness_out);
            ratio = Some(ctx.orbital_ratio(v).to_string());
            verdict.holds
        }
        Predicate::PClose(p) => {
            ratio = Some(ctx.orbital_ratio(v).to_string());
            ctx.is_orbitally_p_close(v, *p)?
        }
        Predicate::Ample(levi) => {
            let verdict = is_l_ample(d, v, &Levi::new(levi.iter().copied()));
            witness = verdict.witness.as_ref().map(witness_out);
            verdict.holds
        }
        Predicate::Admissible(p, levi) => {
            let levi = Levi::new(levi.iter().copied());
            ratio = Some(ctx.orbital_ratio(v).to_string());
            witness = is_l_ample(d, v, &levi).witness.as_ref().map(witness_out);
            ctx.is_p_l_admissible(v, *p, &levi)?
        }
    };
    let body = Check { predicate: predicate.name(), vector: vector_out(d, v), holds, witness, ratio };
    Ok(report(Some(ld), "check", holds, Body::Check(body)))
}

pub fn cmd_classify(ld: &LoadedDatum, v: &LatticeVector) -> CliResult<Report> {
    let d = &ld.datum;
    let cls = Classifier::new(d, &ld.galois).classify(v)?;
    let body = match &cls {
        Classification::QuasiConstant { kinds, pieces } => Classify {
            vector: vector_out(d, v),
            quasi_constant: true,
            kinds: kinds.iter().map(FactorKind::to_string).collect(),
            pieces: pieces
                .iter()
                .map(|p| PieceOut {
                    factors: p.factors.iter().map(|&f| d.factors()[f].spec.to_string()).collect(),
                    multiplier: p.multiplier.to_string(),
                })
                .collect(),
            multiplier: cls.multiplier().map(|m| m.to_string()),
            dominant: cls.reconstruct(d, v.side).map(|x| vector_out(d, &x)),
            witness: None,
        },
        Classification::Not { witness } => Classify {
            vector: vector_out(d, v),
            quasi_constant: false,
            kinds: Vec::new(),
            pieces: Vec::new(),
            multiplier: None,
            dominant: None,
            witness: Some(witness_out(witness)),
        },
    };
    let passed = body.quasi_constant;
    Ok(report(Some(ld), "classify", passed, Body::Classify(body)))
}

/// Dualize the ray through `v`; `v.side` selects the direction.
pub fn cmd_dualize(ld: &LoadedDatum, v: &LatticeVector) -> CliResult<Report> {
    let d = &ld.datum;
    let ray = Ray::new(d, v)?;
    let (dual, cochar) = match v.side {
        Side::Cocharacter => {
            let dual = dualize_ray(d, &ray, &ld.galois)?;
            (dual, ray.clone())
        }
        Side::Character => {
            let dual = dualize_ray_inverse(d, &ray, &ld.galois)?;
            (dual.clone(), dual)
        }
    };
    let levi = labels(centralizer_levi(d, &cochar).0);
    let body = Dualize { input: ray_out(d, &ray), output: ray_out(d, &dual), levi };
    Ok(report(Some(ld), "dualize", true, Body::Dualize(body)))
}

fn bound_out(r: &BoundReport) -> BoundOut {
    BoundOut {
        kind: r.factor.to_string(),
        excluded: labels(r.excluded.iter().copied()),
        eta: strs(&r.eta.coords),
        ratio: r.ratio.to_string(),
        min_p: r.min_p,
        c: r.c,
        shortcut: r.shortcut.to_string(),
        shortcut_value: r.shortcut_value.to_string(),
        multiplicity_sum: r.multiplicity_sum,
        sufficiency_only: r.sufficiency_only,
    }
}

/// Which Levi subsets `bounds` reports on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundsTarget {
    /// `Δ_L`, zero-based.
    Levi(Vec<usize>),
    /// `Δ \ Δ_L`, zero-based.
    Excluded(Vec<usize>),
    AllMaximal,
}

pub fn cmd_bounds(ld: &LoadedDatum, target: &BoundsTarget) -> CliResult<Report> {
    let d = &ld.datum;
    let levis: Vec<Levi> = match target {
        BoundsTarget::Levi(l) => vec![Levi::new(l.iter().copied())],
        BoundsTarget::Excluded(x) => vec![Levi::without(d, x.iter().copied())],
        BoundsTarget::AllMaximal => (0..d.semisimple_rank()).map(|i| Levi::without(d, [i])).collect(),
    };
    let rows = levis
        .iter()
        .map(|l| bound_for_levi(d, l, &ld.galois).map(|r| bound_out(&r)))
        .collect::<quasiconst::Result<Vec<_>>>()?;
    Ok(report(Some(ld), "bounds", true, Body::Bounds(Bounds { rows })))
}

pub fn cmd_table(max_rank: usize, per_vertex: bool) -> CliResult<Report> {
    if max_rank < 2 {
        return Err(InputError::Field { field: "max-rank".into(), message: "must be at least 2".into() }.into());
    }
    let reports = full_table(max_rank)?;
    let rows = grouped_table(&reports)?
        .into_iter()
        .map(|r| TableRowOut { kind: r.family, simple_roots: r.vertices, c: r.c })
        .collect();
    let per_vertex = if per_vertex { reports.iter().map(bound_out).collect() } else { Vec::new() };
    Ok(report(None, "table", true, Body::Table(Table { max_rank, rows, per_vertex })))
}

pub fn cmd_verify_box(ld: &LoadedDatum, bound: i64) -> CliResult<Report> {
    let rep = verify_classification(&ld.datum, &ld.galois, bound)?;
    let body = Verify::Box {
        lattice: rep.lattice.clone(),
        coeff_bound: rep.coeff_bound,
        scanned: rep.scanned,
        quasi_constant: rep.quasi_constant,
        mismatch_count: rep.mismatch_count,
        mismatches: rep
            .mismatches
            .iter()
            .map(|m| MismatchOut {
                coefficients: m.coefficients.clone(),
                oracle: m.oracle,
                classifier: match &m.classifier {
                    Ok(b) => b.to_string(),
                    Err(e) => format!("error: {e}"),
                },
            })
            .collect(),
        dominant_rays: rep.dominant_rays.iter().cloned().collect(),
    };
    Ok(report(Some(ld), "verify", rep.passed(), Body::Verify(body)))
}

pub fn cmd_verify_duality(ld: &LoadedDatum, max_multiplier: i64) -> CliResult<Report> {
    let d = &ld.datum;
    let rep = verify_duality(d, &ld.galois, max_multiplier)?;
    let rays = rep
        .checks
        .iter()
        .map(|c| DualityRayOut {
            ray: ray_out(d, &c.ray),
            dual: c.dual.as_ref().map(|r| ray_out(d, r)),
            levi: labels(c.levi.0.iter().copied()),
            quasi_constant: c.quasi_constant,
            levi_restriction: c.levi_restriction,
            maximal: c.maximal,
            round_trip: c.round_trip,
            error: c.error.clone(),
        })
        .collect();
    let body = Verify::Duality {
        max_multiplier,
        rays,
        inverse_failures: rep.inverse_failures.iter().map(|r| ray_out(d, r)).collect(),
        bijective: rep.bijective,
        failures: rep.failures(),
    };
    Ok(report(Some(ld), "verify", rep.passed(), Body::Verify(body)))
}

pub fn cmd_verify_chain(ld: &LoadedDatum) -> CliResult<Report> {
    let d = &ld.datum;
    let mut factors = Vec::new();
    for (f, factor) in d.factors().iter().enumerate() {
        let chain = d.coroot_chain(f)?;
        let mut sum = QVector::zeros(d.ambient_dim());
        let mut ok = true;
        for &i in &chain {
            sum = &sum + d.simple_coroot(i);
            ok &= d.coroot_index(&sum).is_some();
        }
        ok &= &sum == d.highest_coroot(f)?;
        factors.push(ChainOut { kind: factor.spec.to_string(), chain: labels(chain), ok });
    }
    let passed = factors.iter().all(|c| c.ok);
    Ok(report(Some(ld), "verify", passed, Body::Verify(Verify::Chain { factors })))
}
