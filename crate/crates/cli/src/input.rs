//! Parsing of datum spec files, type shorthands, Galois generators, index
//! sets and vectors.
//!
//! Simple roots are numbered from 1 in the order of the concatenated
//! Bourbaki bases of the factors, everywhere on the command line and in
//! spec files.

use std::fs;
use std::path::Path;

use quasiconst::rational::parse_rat;
use quasiconst::{
    FactorSpec, GaloisAction, LatticeChoice, LatticeVector, QVector, Rat, RootDatum, RootSystemSpec, Side,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("spec line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("{field}: {message}")]
    Field { field: String, message: String },

    #[error(transparent)]
    Datum(#[from] quasiconst::Error),

    #[error("cannot parse {what} `{text}`: {message}")]
    Parse { what: &'static str, text: String, message: String },
}

fn field(field: impl Into<String>, message: impl ToString) -> InputError {
    InputError::Field { field: field.into(), message: message.to_string() }
}

fn parse_err(what: &'static str, text: &str, message: impl ToString) -> InputError {
    InputError::Parse { what, text: text.to_string(), message: message.to_string() }
}

/// On-disk description of a root datum with Galois action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumSpecFile {
    pub factors: Vec<FactorEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char_lattice: Option<LatticeEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cochar_lattice: Option<LatticeEntry>,
    /// Permutations of the simple roots, 1-based.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub galois: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorEntry {
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
}

/// `"sc"`, `"adjoint"` or a basis given as rows of ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeEntry {
    Named(String),
    Matrix(Vec<Vec<Scalar>>),
}

/// A rational written as an integer or a string like `"-1/2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn value(&self) -> Option<Rat> {
        match self {
            Scalar::Int(n) => Some(Rat::from_integer(*n)),
            Scalar::Text(s) => parse_rat(s),
        }
    }
}

/// A validated datum ready for the commands.
#[derive(Clone, Debug)]
pub struct LoadedDatum {
    pub label: String,
    pub datum: RootDatum,
    pub galois: GaloisAction,
}

fn lattice_choice(entry: &LatticeEntry, name: &str) -> Result<LatticeChoice, InputError> {
    match entry {
        LatticeEntry::Named(s) => match s.as_str() {
            "sc" | "simply_connected" => Ok(LatticeChoice::SimplyConnected),
            "adjoint" | "ad" => Ok(LatticeChoice::Adjoint),
            other => Err(field(name, format!("unknown lattice `{other}` (expected sc, adjoint or a matrix)"))),
        },
        LatticeEntry::Matrix(rows) => rows
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .map(|(c, x)| x.value().ok_or_else(|| field(format!("{name}[{r}][{c}]"), "not a rational")))
                    .collect::<Result<Vec<Rat>, _>>()
                    .map(QVector)
            })
            .collect::<Result<Vec<_>, _>>()
            .map(LatticeChoice::Explicit),
    }
}

impl DatumSpecFile {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        serde_json::from_str(text).map_err(|e| InputError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn load(&self) -> Result<LoadedDatum, InputError> {
        let factors = self
            .factors
            .iter()
            .enumerate()
            .map(|(k, f)| format!("{}{}", f.kind, f.rank).parse::<FactorSpec>().map_err(|e| field(format!("factors[{k}]"), e)))
            .collect::<Result<Vec<_>, _>>()?;
        let char_lattice = match &self.char_lattice {
            Some(entry) => lattice_choice(entry, "char_lattice")?,
            None => LatticeChoice::SimplyConnected,
        };
        let cochar_lattice = self.cochar_lattice.as_ref().map(|e| lattice_choice(e, "cochar_lattice")).transpose()?;
        let spec = RootSystemSpec { factors, char_lattice, cochar_lattice };
        let datum = RootDatum::build(spec).map_err(|e| field("lattice", e))?;
        let generators = self
            .galois
            .iter()
            .enumerate()
            .map(|(k, p)| {
                p.iter()
                    .map(|&i| i.checked_sub(1).ok_or_else(|| field(format!("galois[{k}]"), "indices start at 1")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let galois = GaloisAction::new(&datum, generators).map_err(|e| field("galois", e))?;
        Ok(LoadedDatum { label: datum_label(&datum, &galois), datum, galois })
    }
}

/// `B2xB2 sc` style label.
pub fn datum_label(datum: &RootDatum, galois: &GaloisAction) -> String {
    let types: Vec<String> = datum.factors().iter().map(|f| f.spec.to_string()).collect();
    let lattice = match datum.spec().char_lattice {
        LatticeChoice::SimplyConnected => "sc",
        LatticeChoice::Adjoint => "adjoint",
        LatticeChoice::Explicit(_) => "explicit",
    };
    let mut label = format!("{} {lattice}", types.join("x"));
    if !galois.is_trivial() {
        label.push_str(" with Galois action");
    }
    label
}

pub fn load_spec_path(path: &Path) -> Result<LoadedDatum, InputError> {
    let text = fs::read_to_string(path).map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
    DatumSpecFile::parse(&text)?.load()
}

/// `"B2xB2"` with lattice `"sc"` or `"adjoint"` and an optional Galois
/// shorthand (see [`parse_galois`]).
pub fn load_shorthand(types: &str, lattice: &str, galois: Option<&str>) -> Result<LoadedDatum, InputError> {
    let factors = types
        .split(['x', '*', '×'])
        .map(|t| t.trim().parse::<FactorSpec>().map_err(|e| parse_err("type", types, e)))
        .collect::<Result<Vec<_>, _>>()?;
    let choice = lattice_choice(&LatticeEntry::Named(lattice.to_string()), "lattice")?;
    let datum = RootDatum::build(RootSystemSpec::new(factors, choice))?;
    let galois = match galois {
        Some(g) => parse_galois(&datum, g)?,
        None => GaloisAction::trivial(),
    };
    Ok(LoadedDatum { label: datum_label(&datum, &galois), datum, galois })
}

fn parse_range(text: &str, whole: &str) -> Result<Vec<usize>, InputError> {
    let (a, b) = text.split_once("..").ok_or_else(|| parse_err("Galois generator", whole, "expected a range i..j"))?;
    let a: usize = a.trim().parse().map_err(|e| parse_err("Galois generator", whole, e))?;
    let b: usize = b.trim().parse().map_err(|e| parse_err("Galois generator", whole, e))?;
    if a == 0 || b < a {
        return Err(parse_err("Galois generator", whole, "ranges are 1-based and increasing"));
    }
    Ok((a - 1..b).collect())
}

/// Generators separated by `;`. Each is `swap:i..j,k..l` (exchange the
/// simple roots `i..j` with `k..l`, in order) or `perm:p1,...,pr` (simple
/// root `i` goes to `p_i`). Indices are 1-based and ranges inclusive.
pub fn parse_galois(datum: &RootDatum, text: &str) -> Result<GaloisAction, InputError> {
    let r = datum.semisimple_rank();
    let mut generators = Vec::new();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (kind, body) = part.split_once(':').ok_or_else(|| parse_err("Galois generator", part, "expected swap: or perm:"))?;
        let perm = match kind.trim() {
            "swap" => {
                let (x, y) = body.split_once(',').ok_or_else(|| parse_err("Galois generator", part, "expected two ranges"))?;
                let (x, y) = (parse_range(x, part)?, parse_range(y, part)?);
                if x.len() != y.len() || x.iter().chain(&y).any(|&i| i >= r) {
                    return Err(parse_err("Galois generator", part, "ranges must have equal length and fit the rank"));
                }
                let mut perm: Vec<usize> = (0..r).collect();
                for (&i, &j) in x.iter().zip(&y) {
                    perm[i] = j;
                    perm[j] = i;
                }
                perm
            }
            "perm" => body
                .split(',')
                .map(|s| match s.trim().parse::<usize>() {
                    Ok(i) if i >= 1 => Ok(i - 1),
                    _ => Err(parse_err("Galois generator", part, "entries are 1-based indices")),
                })
                .collect::<Result<Vec<_>, _>>()?,
            other => return Err(parse_err("Galois generator", part, format!("unknown kind `{other}`"))),
        };
        generators.push(perm);
    }
    Ok(GaloisAction::new(datum, generators)?)
}

/// `"1,3,4"` (1-based) to zero-based indices, checked against the rank.
pub fn parse_index_set(datum: &RootDatum, text: &str) -> Result<Vec<usize>, InputError> {
    let r = datum.semisimple_rank();
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| match s.trim_start_matches('α').trim_start_matches('a').parse::<usize>() {
            Ok(i) if (1..=r).contains(&i) => Ok(i - 1),
            _ => Err(parse_err("simple root index", s, format!("expected 1..={r}"))),
        })
        .collect()
}

pub fn parse_side(text: &str) -> Result<Side, InputError> {
    match text {
        "character" | "char" | "weight" => Ok(Side::Character),
        "cocharacter" | "cochar" | "coweight" => Ok(Side::Cocharacter),
        other => Err(parse_err("side", other, "expected character or cocharacter")),
    }
}

fn parse_list(text: &str, whole: &str) -> Result<Vec<Rat>, InputError> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| parse_err("vector", whole, "expected [c1, ..., cr]"))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| parse_rat(x).ok_or_else(|| parse_err("vector", whole, format!("`{}` is not a rational", x.trim()))))
        .collect()
}

/// `fw:[c1,...,cr]` (fundamental (co)weight coordinates) or
/// `amb:[q1,...,qn]` (ambient coordinates). A bare list is read as `fw:`.
pub fn parse_vector(datum: &RootDatum, text: &str, side: Side) -> Result<LatticeVector, InputError> {
    let text = text.trim();
    let (basis, list) = match text.split_once(':') {
        Some((b, l)) => (b.trim(), l),
        None => ("fw", text),
    };
    let values = parse_list(list, text)?;
    match basis {
        "fw" => {
            if values.len() != datum.semisimple_rank() {
                return Err(parse_err("vector", text, format!("expected {} coordinates", datum.semisimple_rank())));
            }
            Ok(datum.from_fundamental_coordinates(side, &values))
        }
        "amb" => {
            let v = QVector(values);
            datum.check_dim(&v).map_err(|e| parse_err("vector", text, e))?;
            Ok(LatticeVector::new(v, side))
        }
        other => Err(parse_err("vector", text, format!("unknown basis `{other}` (expected fw or amb)"))),
    }
}
