//! Named Lie algebras and morphism triples used as fixtures.
//!
//! Algebra names: `abelian(n)`, `heisenberg3`, `sl2`, `aff1`, and
//! `direct_sum(a, b)` for any two names. Bases:
//! - `sl2`: `(h, e, f)` with `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`
//! - `heisenberg3`: `(x, y, z)` with `[x,y] = z`
//! - `aff1`: `(a, b)` with `[a,b] = b`

use crate::algebra::{act_triple, LieAlgebra, LinearMap, Triple};
use crate::error::{Error, Result};
use crate::linalg::{int, Matrix};

pub fn abelian(n: usize) -> LieAlgebra {
    LieAlgebra::abelian(n)
}

pub fn sl2() -> LieAlgebra {
    LieAlgebra::from_structure_constants(
        3,
        [
            (0, 1, vec![int(0), int(2), int(0)]),
            (0, 2, vec![int(0), int(0), int(-2)]),
            (1, 2, vec![int(1), int(0), int(0)]),
        ],
    )
    .expect("sl2 satisfies Jacobi")
}

pub fn heisenberg3() -> LieAlgebra {
    LieAlgebra::from_structure_constants(3, [(0, 1, vec![int(0), int(0), int(1)])])
        .expect("heisenberg3 satisfies Jacobi")
}

pub fn aff1() -> LieAlgebra {
    LieAlgebra::from_structure_constants(2, [(0, 1, vec![int(0), int(1)])])
        .expect("aff1 satisfies Jacobi")
}

pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> LieAlgebra {
    a.direct_sum(b)
}

pub fn identity_triple(alg: &LieAlgebra) -> Triple {
    Triple::new(alg.clone(), alg.clone(), LinearMap::identity(alg.dim()))
        .expect("identity is a morphism")
}

pub fn zero_triple(source: &LieAlgebra, target: &LieAlgebra) -> Result<Triple> {
    Triple::new(
        source.clone(),
        target.clone(),
        LinearMap::zero(source.dim(), target.dim()),
    )
}

/// `aff1 → abelian(1)` with `a ↦ 1`, `b ↦ 0`.
pub fn aff1_quotient() -> Triple {
    Triple::new(
        aff1(),
        abelian(1),
        LinearMap::new(Matrix::from_i64(&[&[1, 0]])),
    )
    .expect("the quotient by the derived algebra is a morphism")
}

/// A verified triple moved by the `GL(U) × GL(V)` action.
pub fn twist(t: &Triple, g: &LinearMap, h: &LinearMap) -> Result<Triple> {
    let moved = act_triple(g, h, t)?;
    Triple::new(moved.rho, moved.theta, moved.phi)
}

/// Parses an algebra name such as `sl2`, `abelian(3)` or
/// `direct_sum(aff1, abelian(1))`.
pub fn algebra(name: &str) -> Result<LieAlgebra> {
    let mut parser = NameParser { src: name, pos: 0 };
    let alg = parser.algebra()?;
    parser.skip_ws();
    if parser.pos != name.len() {
        return Err(Error::UnknownCatalog(name.to_string()));
    }
    Ok(alg)
}

/// Kinds of triple the catalog can build from one or two algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleKind {
    Identity,
    Zero,
    Quotient,
}

impl std::str::FromStr for TripleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(TripleKind::Identity),
            "zero" | "zero-morphism" => Ok(TripleKind::Zero),
            "quotient" => Ok(TripleKind::Quotient),
            other => Err(Error::UnknownCatalog(other.to_string())),
        }
    }
}

/// Builds a triple of the given kind. `target` defaults to the source
/// algebra for `Zero` and is ignored otherwise; `Quotient` is only defined on
/// `aff1`.
pub fn triple(
    kind: TripleKind,
    source: &LieAlgebra,
    target: Option<&LieAlgebra>,
) -> Result<Triple> {
    match kind {
        TripleKind::Identity => Ok(identity_triple(source)),
        TripleKind::Zero => zero_triple(source, target.unwrap_or(source)),
        TripleKind::Quotient if *source == aff1() => Ok(aff1_quotient()),
        TripleKind::Quotient => Err(Error::InvalidParams(
            "the quotient triple is only defined on aff1".into(),
        )),
    }
}

/// The fixture set exercised by the test suites: every catalog triple shape
/// plus GL-twisted variants.
pub fn fixture_triples() -> Vec<(String, Triple)> {
    let g2 = LinearMap::new(Matrix::from_i64(&[&[2, 1], &[1, 1]]));
    let g3 = LinearMap::new(Matrix::from_i64(&[&[1, 2, 0], &[0, 1, -1], &[1, 0, 1]]));
    let h3 = LinearMap::new(Matrix::from_i64(&[&[1, 0, 1], &[1, 1, 0], &[0, 0, 3]]));
    let h1 = LinearMap::new(Matrix::from_i64(&[&[-2]]));

    let mut out = vec![
        (
            "abelian2_identity".to_string(),
            identity_triple(&abelian(2)),
        ),
        (
            "abelian2_zero".to_string(),
            zero_triple(&abelian(2), &abelian(2)).unwrap(),
        ),
        ("sl2_identity".to_string(), identity_triple(&sl2())),
        (
            "heisenberg3_identity".to_string(),
            identity_triple(&heisenberg3()),
        ),
        ("aff1_identity".to_string(), identity_triple(&aff1())),
        ("aff1_quotient".to_string(), aff1_quotient()),
        (
            "heisenberg3_to_aff1_zero".to_string(),
            zero_triple(&heisenberg3(), &aff1()).unwrap(),
        ),
        (
            "aff1_plus_abelian1_identity".to_string(),
            identity_triple(&direct_sum(&aff1(), &abelian(1))),
        ),
    ];
    out.push((
        "sl2_identity_twisted".to_string(),
        twist(&identity_triple(&sl2()), &g3, &h3).unwrap(),
    ));
    out.push((
        "heisenberg3_identity_twisted".to_string(),
        twist(&identity_triple(&heisenberg3()), &h3, &g3).unwrap(),
    ));
    out.push((
        "aff1_quotient_twisted".to_string(),
        twist(&aff1_quotient(), &g2, &h1).unwrap(),
    ));
    out
}

struct NameParser<'a> {
    src: &'a str,
    pos: usize,
}

impl NameParser<'_> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!(
                "expected {token:?} at position {} in {:?}",
                self.pos, self.src
            )))
        }
    }

    fn ident(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn algebra(&mut self) -> Result<LieAlgebra> {
        let name = self.ident().to_string();
        match name.as_str() {
            "sl2" => Ok(sl2()),
            "heisenberg3" => Ok(heisenberg3()),
            "aff1" => Ok(aff1()),
            "abelian" => {
                self.expect("(")?;
                let digits = self.ident().to_string();
                let n = digits.parse::<usize>().map_err(|_| {
                    Error::InvalidParams(format!("abelian expects a dimension, got {digits:?}"))
                })?;
                self.expect(")")?;
                Ok(abelian(n))
            }
            "direct_sum" => {
                self.expect("(")?;
                let a = self.algebra()?;
                self.expect(",")?;
                let b = self.algebra()?;
                self.expect(")")?;
                Ok(direct_sum(&a, &b))
            }
            _ => Err(Error::UnknownCatalog(name)),
        }
    }
}
