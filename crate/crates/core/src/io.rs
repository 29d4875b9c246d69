//! JSON schemas and text rendering.
//!
//! Rationals travel as strings `"p/q"` (or `"p"`). Every object rejects
//! unknown fields. Structural problems are reported as [`Error::Schema`]
//! carrying a path such as `rho.brackets[1].coeffs[0]`; failures of the
//! Jacobi or morphism identities are left to the domain constructors.

use std::collections::BTreeSet;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::{LieAlgebra, LinearMap, Triple};
use crate::complex::Cochain;
use crate::deformation::TruncatedCurve;
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Matrix, Rational};
use crate::skew::{combinations, SkewMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub dim: usize,
    pub brackets: Vec<BracketJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearMapJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkewMapJson {
    pub arity: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub indices: Vec<usize>,
    pub value: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainJson {
    pub degree: usize,
    pub x1: SkewMapJson,
    pub x2: SkewMapJson,
    pub x3: Option<SkewMapJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleJson {
    pub rho: AlgebraJson,
    pub theta: AlgebraJson,
    pub phi: LinearMapJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveJson {
    pub base: TripleJson,
    pub order: usize,
    pub rho: Vec<SkewMapJson>,
    pub theta: Vec<SkewMapJson>,
    pub phi: Vec<SkewMapJson>,
}

/// Deserializes `text`, reporting the path of the first offending field.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let path = if path == "." { "$".to_string() } else { path };
        Error::schema(path, inner.to_string())
    })
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

fn join(path: &str, field: &str) -> String {
    if path.is_empty() {
        field.to_string()
    } else {
        format!("{path}.{field}")
    }
}

fn rationals(path: &str, values: &[String], expected: usize) -> Result<Vec<Rational>> {
    if values.len() != expected {
        return Err(Error::schema(
            path,
            format!("expected {expected} entries, found {}", values.len()),
        ));
    }
    values
        .iter()
        .enumerate()
        .map(|(k, s)| parse_rational(s).map_err(|m| Error::schema(format!("{path}[{k}]"), m)))
        .collect()
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

/// `[a, b, …]` with rationals in `p/q` form.
pub fn format_vector(values: &[Rational]) -> String {
    format!("[{}]", strings(values).join(", "))
}

impl From<&SkewMap> for SkewMapJson {
    fn from(m: &SkewMap) -> Self {
        SkewMapJson {
            arity: m.arity(),
            source_dim: m.source_dim(),
            target_dim: m.target_dim(),
            terms: m
                .terms()
                .map(|(indices, value)| TermJson {
                    indices,
                    value: strings(value),
                })
                .collect(),
        }
    }
}

impl SkewMapJson {
    pub fn to_domain(&self, path: &str) -> Result<SkewMap> {
        let (p, src, tgt) = (self.arity, self.source_dim, self.target_dim);
        let mut seen = BTreeSet::new();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (k, term) in self.terms.iter().enumerate() {
            let here = format!("{}[{k}]", join(path, "terms"));
            if term.indices.len() != p {
                return Err(Error::schema(
                    join(&here, "indices"),
                    format!("expected {p} indices, found {}", term.indices.len()),
                ));
            }
            if term.indices.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::schema(
                    join(&here, "indices"),
                    "indices must be strictly increasing",
                ));
            }
            if term.indices.last().is_some_and(|&i| i >= src) {
                return Err(Error::schema(
                    join(&here, "indices"),
                    format!("index out of range for source dimension {src}"),
                ));
            }
            if !seen.insert(term.indices.clone()) {
                return Err(Error::schema(
                    join(&here, "indices"),
                    "duplicate index tuple",
                ));
            }
            terms.push((
                term.indices.clone(),
                rationals(&join(&here, "value"), &term.value, tgt)?,
            ));
        }
        SkewMap::from_terms(p, src, tgt, terms).map_err(|e| Error::schema(path, e.to_string()))
    }

    fn expect_shape(
        &self,
        path: &str,
        arity: usize,
        source_dim: usize,
        target_dim: usize,
    ) -> Result<()> {
        for (field, got, want) in [
            ("arity", self.arity, arity),
            ("source_dim", self.source_dim, source_dim),
            ("target_dim", self.target_dim, target_dim),
        ] {
            if got != want {
                return Err(Error::schema(
                    join(path, field),
                    format!("expected {want}, found {got}"),
                ));
            }
        }
        Ok(())
    }
}

impl From<&LieAlgebra> for AlgebraJson {
    fn from(alg: &LieAlgebra) -> Self {
        AlgebraJson {
            dim: alg.dim(),
            brackets: alg
                .as_skew()
                .terms()
                .map(|(ij, value)| BracketJson {
                    i: ij[0],
                    j: ij[1],
                    coeffs: strings(value),
                })
                .collect(),
        }
    }
}

impl AlgebraJson {
    /// Builds the bracket without checking the Jacobi identity.
    pub fn to_domain_unchecked(&self, path: &str) -> Result<LieAlgebra> {
        let n = self.dim;
        let mut seen = BTreeSet::new();
        let mut terms = Vec::with_capacity(self.brackets.len());
        for (k, b) in self.brackets.iter().enumerate() {
            let here = format!("{}[{k}]", join(path, "brackets"));
            if b.i >= b.j {
                return Err(Error::schema(
                    join(&here, "j"),
                    format!("need i < j, got i = {}, j = {}", b.i, b.j),
                ));
            }
            if b.j >= n {
                return Err(Error::schema(
                    join(&here, "j"),
                    format!("index out of range for dimension {n}"),
                ));
            }
            if !seen.insert((b.i, b.j)) {
                return Err(Error::schema(here, "duplicate bracket entry"));
            }
            terms.push((
                vec![b.i, b.j],
                rationals(&join(&here, "coeffs"), &b.coeffs, n)?,
            ));
        }
        let bracket =
            SkewMap::from_terms(2, n, n, terms).map_err(|e| Error::schema(path, e.to_string()))?;
        LieAlgebra::new_unchecked(bracket)
    }
}

impl From<&Matrix> for LinearMapJson {
    fn from(m: &Matrix) -> Self {
        LinearMapJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows()).map(|i| strings(m.row(i))).collect(),
        }
    }
}

impl From<&LinearMap> for LinearMapJson {
    fn from(m: &LinearMap) -> Self {
        m.matrix().into()
    }
}

impl LinearMapJson {
    pub fn to_domain(&self, path: &str) -> Result<LinearMap> {
        let entries = join(path, "entries");
        if self.entries.len() != self.rows {
            return Err(Error::schema(
                entries,
                format!("expected {} rows, found {}", self.rows, self.entries.len()),
            ));
        }
        let rows = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, row)| rationals(&format!("{entries}[{i}]"), row, self.cols))
            .collect::<Result<Vec<_>>>()?;
        let matrix = if self.rows == 0 {
            Matrix::zeros(0, self.cols)
        } else {
            Matrix::from_rows(rows).map_err(|e| Error::schema(path, e.to_string()))?
        };
        Ok(LinearMap::new(matrix))
    }
}

impl From<&Cochain> for CochainJson {
    fn from(c: &Cochain) -> Self {
        CochainJson {
            degree: c.degree(),
            x1: (&c.x1).into(),
            x2: (&c.x2).into(),
            x3: c.x3.as_ref().map(Into::into),
        }
    }
}

impl CochainJson {
    pub fn to_domain(&self, path: &str) -> Result<Cochain> {
        let p = self.degree;
        let (m, n) = (self.x1.source_dim, self.x2.source_dim);
        self.x1.expect_shape(&join(path, "x1"), p + 1, m, m)?;
        self.x2.expect_shape(&join(path, "x2"), p + 1, n, n)?;
        let x3 = match (&self.x3, p) {
            (None, 0) => None,
            (Some(_), 0) => {
                return Err(Error::schema(
                    join(path, "x3"),
                    "degree-0 cochains have x3 = null",
                ))
            }
            (None, _) => {
                return Err(Error::schema(
                    join(path, "x3"),
                    format!("degree-{p} cochains need x3"),
                ))
            }
            (Some(x3), _) => {
                x3.expect_shape(&join(path, "x3"), p, m, n)?;
                Some(x3.to_domain(&join(path, "x3"))?)
            }
        };
        let x1 = self.x1.to_domain(&join(path, "x1"))?;
        let x2 = self.x2.to_domain(&join(path, "x2"))?;
        Cochain::new(p, x1, x2, x3).map_err(|e| Error::schema(path, e.to_string()))
    }
}

impl From<&Triple> for TripleJson {
    fn from(t: &Triple) -> Self {
        TripleJson {
            rho: (&t.rho).into(),
            theta: (&t.theta).into(),
            phi: (&t.phi).into(),
        }
    }
}

impl TripleJson {
    /// Checks shapes only; the Jacobi and morphism identities are left to
    /// [`Triple::new`].
    pub fn to_domain_unchecked(&self, path: &str) -> Result<Triple> {
        let rho = self.rho.to_domain_unchecked(&join(path, "rho"))?;
        let theta = self.theta.to_domain_unchecked(&join(path, "theta"))?;
        let phi_path = join(path, "phi");
        if self.phi.rows != theta.dim() || self.phi.cols != rho.dim() {
            return Err(Error::schema(
                &phi_path,
                format!(
                    "phi must be {}×{} (dim V × dim U), found {}×{}",
                    theta.dim(),
                    rho.dim(),
                    self.phi.rows,
                    self.phi.cols
                ),
            ));
        }
        let phi = self.phi.to_domain(&phi_path)?;
        Triple::new_unchecked(rho, theta, phi)
    }

    pub fn to_domain(&self, path: &str) -> Result<Triple> {
        let t = self.to_domain_unchecked(path)?;
        Triple::new(t.rho, t.theta, t.phi)
    }
}

impl From<&TruncatedCurve> for CurveJson {
    fn from(c: &TruncatedCurve) -> Self {
        CurveJson {
            base: c.base().into(),
            order: c.order(),
            rho: c.rho_coeffs().iter().map(Into::into).collect(),
            theta: c.theta_coeffs().iter().map(Into::into).collect(),
            phi: c.phi_coeffs().iter().map(Into::into).collect(),
        }
    }
}

impl CurveJson {
    /// The base triple must be verified; the coefficients need not satisfy
    /// any constraint.
    pub fn to_domain(&self, path: &str) -> Result<TruncatedCurve> {
        let base = self.base.to_domain(&join(path, "base"))?;
        let (m, n) = (base.u_dim(), base.v_dim());
        let mut lists = Vec::with_capacity(3);
        for (field, list, arity, src, tgt) in [
            ("rho", &self.rho, 2, m, m),
            ("theta", &self.theta, 2, n, n),
            ("phi", &self.phi, 1, m, n),
        ] {
            let here = join(path, field);
            if list.len() != self.order {
                return Err(Error::schema(
                    &here,
                    format!("expected {} coefficients, found {}", self.order, list.len()),
                ));
            }
            let coeffs = list
                .iter()
                .enumerate()
                .map(|(k, s)| {
                    let at = format!("{here}[{k}]");
                    s.expect_shape(&at, arity, src, tgt)?;
                    s.to_domain(&at)
                })
                .collect::<Result<Vec<_>>>()?;
            lists.push(coeffs);
        }
        let phi = lists.pop().expect("three lists");
        let theta = lists.pop().expect("three lists");
        let rho = lists.pop().expect("three lists");
        TruncatedCurve::new(base, rho, theta, phi)
    }
}

pub fn read_triple_unchecked(text: &str) -> Result<Triple> {
    parse_json::<TripleJson>(text)?.to_domain_unchecked("")
}

pub fn read_triple(text: &str) -> Result<Triple> {
    parse_json::<TripleJson>(text)?.to_domain("")
}

pub fn read_algebra(text: &str) -> Result<LieAlgebra> {
    let alg = parse_json::<AlgebraJson>(text)?.to_domain_unchecked("")?;
    LieAlgebra::new(alg.as_skew().clone())
}

pub fn read_linear_map(text: &str) -> Result<LinearMap> {
    parse_json::<LinearMapJson>(text)?.to_domain("")
}

pub fn read_cochain(text: &str) -> Result<Cochain> {
    parse_json::<CochainJson>(text)?.to_domain("")
}

pub fn read_curve(text: &str) -> Result<TruncatedCurve> {
    parse_json::<CurveJson>(text)?.to_domain("")
}

fn basis_word(indices: &[usize], symbol: &str) -> String {
    indices
        .iter()
        .map(|i| format!("{symbol}{}", i + 1))
        .collect::<Vec<_>>()
        .join("^")
}

/// Renders a map as a sum such as `2·e1^e2 ⊗ f3 − 1/2·e1^e3 ⊗ f1`; basis
/// vectors are numbered from 1.
pub fn format_skew(m: &SkewMap, source: &str, target: &str) -> String {
    let mut out = String::new();
    for (indices, value) in m.terms() {
        let word = basis_word(&indices, source);
        for (k, c) in value.iter().enumerate() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let negative = num_traits::Signed::is_negative(c);
            let magnitude = num_traits::Signed::abs(c);
            if out.is_empty() {
                if negative {
                    out.push('−');
                }
            } else {
                out.push_str(if negative { " − " } else { " + " });
            }
            if !num_traits::One::is_one(&magnitude) {
                out.push_str(&format!("{}·", format_rational(&magnitude)));
            }
            if word.is_empty() {
                out.push_str(&format!("{target}{}", k + 1));
            } else {
                out.push_str(&format!("{word} ⊗ {target}{}", k + 1));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `U` is written with `e`, `V` with `f`.
pub fn format_cochain(c: &Cochain) -> String {
    let mut lines = vec![
        format!("x1 = {}", format_skew(&c.x1, "e", "e")),
        format!("x2 = {}", format_skew(&c.x2, "f", "f")),
    ];
    match &c.x3 {
        Some(x3) => lines.push(format!("x3 = {}", format_skew(x3, "e", "f"))),
        None => lines.push("x3 = none".to_string()),
    }
    lines.join("\n")
}

/// Nonzero brackets of the algebra, one per line.
pub fn format_algebra(alg: &LieAlgebra, symbol: &str) -> String {
    let lines: Vec<String> = combinations(alg.dim(), 2)
        .into_iter()
        .filter_map(|ij| {
            let value = alg.structure_constants(ij[0], ij[1]);
            let single = SkewMap::from_terms(0, 0, alg.dim(), [(vec![], value)]).ok()?;
            if single.is_zero() {
                return None;
            }
            Some(format!(
                "[{symbol}{}, {symbol}{}] = {}",
                ij[0] + 1,
                ij[1] + 1,
                format_skew(&single, symbol, symbol)
            ))
        })
        .collect();
    if lines.is_empty() {
        format!("abelian of dimension {}", alg.dim())
    } else {
        lines.join("\n")
    }
}

pub fn format_triple(t: &Triple) -> String {
    format!(
        "U (dim {}):\n{}\nV (dim {}):\n{}\nphi:\n{}",
        t.u_dim(),
        format_algebra(&t.rho, "e"),
        t.v_dim(),
        format_algebra(&t.theta, "f"),
        t.phi.matrix()
    )
}
