//! JSON formats for lattices, finite quadratic modules, Hodge groups and
//! count reports.
//!
//! A lattice is `{"gram": [[..], ..]}`, a bare Gram matrix `[[..], ..]`, or
//! a catalog entry `{"name": "L_n", "params": [10]}`. A module is
//! `{"invariant_factors": [3, 21], "q": ["2/3", "4/21"], "b": [["2/3", "0"], ..]}`
//! with rationals written as `"p/q"` or `"p"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::counting::{FmCountReport, HodgeIsometrySpec};
use crate::error::{Error, Result};
use crate::fqm::{FiniteQuadraticModule, FqmElement, FqmIsometry};
use crate::lattice::Lattice;
use crate::linalg::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeInput {
    Gram { gram: Vec<Vec<i64>> },
    Named { name: String, #[serde(default)] params: Vec<i64> },
    Bare(Vec<Vec<i64>>),
}

impl LatticeInput {
    pub fn to_lattice(&self) -> Result<Lattice> {
        match self {
            LatticeInput::Gram { gram } | LatticeInput::Bare(gram) => {
                let m = IntMatrix::try_from_rows(gram)?;
                Lattice::new(m)
            }
            LatticeInput::Named { name, params } => catalog::catalog(name, params),
        }
    }
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Parses a lattice. Malformed JSON is a `Parse` error; structural problems
/// (ragged, asymmetric, singular) keep their own variants.
pub fn parse_lattice(s: &str) -> Result<Lattice> {
    let input: LatticeInput = serde_json::from_str(s).map_err(parse_err)?;
    input.to_lattice()
}

pub fn lattice_to_json(l: &Lattice) -> Result<String> {
    let input = LatticeInput::Gram { gram: l.gram_i64()? };
    serde_json::to_string(&input).map_err(parse_err)
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FqmJson {
    pub invariant_factors: Vec<i64>,
    /// absent for modules of odd lattices
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<String>>,
    pub b: Vec<Vec<String>>,
}

impl FqmJson {
    pub fn of(a: &FiniteQuadraticModule) -> Self {
        let d = a.describe();
        FqmJson {
            invariant_factors: d.invariant_factors,
            q: d.quadratic.then(|| d.q.iter().map(format_rational).collect()),
            b: d.b.iter().map(|r| r.iter().map(format_rational).collect()).collect(),
        }
    }

    pub fn to_module(&self) -> Result<FiniteQuadraticModule> {
        let b = self
            .b
            .iter()
            .map(|r| r.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        match &self.q {
            Some(q) => {
                let q = q.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>()?;
                FiniteQuadraticModule::from_rationals(&self.invariant_factors, &q, &b)
            }
            None => FiniteQuadraticModule::from_bilinear(&self.invariant_factors, &b),
        }
    }
}

pub fn parse_fqm(s: &str) -> Result<FiniteQuadraticModule> {
    let j: FqmJson = serde_json::from_str(s).map_err(parse_err)?;
    j.to_module()
}

pub fn fqm_to_json(a: &FiniteQuadraticModule) -> String {
    serde_json::to_string(&FqmJson::of(a)).expect("serializable")
}

/// `{"mode": "pm_id"}`, `{"mode": "full"}`, or
/// `{"mode": "explicit", "generators": [[image of g_1, image of g_2, ..], ..]}`
/// with images written in generator coordinates of A_T.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum HodgeJson {
    PmId,
    Full,
    Explicit { generators: Vec<Vec<FqmElement>> },
}

impl HodgeJson {
    /// Explicit maps are validated later against A_T.
    pub fn to_spec(&self) -> HodgeIsometrySpec {
        match self {
            HodgeJson::PmId => HodgeIsometrySpec::PmId,
            HodgeJson::Full => HodgeIsometrySpec::Full,
            HodgeJson::Explicit { generators } => HodgeIsometrySpec::Explicit(
                generators.iter().map(|g| FqmIsometry::from_images(g.clone())).collect(),
            ),
        }
    }
}

pub fn parse_hodge(s: &str) -> Result<HodgeIsometrySpec> {
    let j: HodgeJson = serde_json::from_str(s).map_err(parse_err)?;
    Ok(j.to_spec())
}

pub fn report_to_json(r: &FmCountReport) -> String {
    serde_json::to_string_pretty(r).expect("serializable")
}

pub fn parse_report(s: &str) -> Result<FmCountReport> {
    serde_json::from_str(s).map_err(parse_err)
}
