//! Lie algebras by structure constants, linear maps between them, and the
//! morphism bundle: triples `(ρ, θ, Φ)` with `Φ` a Lie morphism from
//! `(U, ρ)` to `(V, θ)`, acted on by `GL(U) × GL(V)`.

use crate::error::{Error, Result};
use crate::linalg::{add_assign_scaled, unit_vec, zero_vec, Matrix, Rational};
use crate::skew::SkewMap;

/// A bracket on `Q^dim` given by structure constants
/// `[e_i, e_j] = Σ_k c[i][j][k] e_k`, stored for `i < j` only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    bracket: SkewMap,
}

impl LieAlgebra {
    /// Wraps a bracket after checking the Jacobi identity.
    pub fn new(bracket: SkewMap) -> Result<Self> {
        let alg = Self::new_unchecked(bracket)?;
        let defect = jacobi_defect(&alg);
        if !defect.is_zero() {
            let (indices, value) = defect.terms().next().expect("nonzero defect has a term");
            return Err(Error::NotLie(format!(
                "cyclic sum on basis {indices:?} is {}",
                crate::io::format_vector(value)
            )));
        }
        Ok(alg)
    }

    /// Wraps any antisymmetric bracket, Lie or not.
    pub fn new_unchecked(bracket: SkewMap) -> Result<Self> {
        if bracket.arity() != 2 || bracket.source_dim() != bracket.target_dim() {
            return Err(Error::InvalidArity(format!(
                "a bracket is an arity-2 map from a space to itself, got arity {} from dim {} to dim {}",
                bracket.arity(),
                bracket.source_dim(),
                bracket.target_dim()
            )));
        }
        Ok(Self { bracket })
    }

    pub fn abelian(dim: usize) -> Self {
        Self {
            bracket: SkewMap::zero(2, dim, dim),
        }
    }

    /// Builds from `(i, j, coefficients)` entries with `i < j`.
    pub fn from_structure_constants(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, Vec<Rational>)>,
    ) -> Result<Self> {
        let terms = entries.into_iter().map(|(i, j, c)| (vec![i, j], c));
        Self::new(SkewMap::from_terms(2, dim, dim, terms)?)
    }

    pub fn dim(&self) -> usize {
        self.bracket.source_dim()
    }

    /// The bracket as an alternating 2-form with values in the algebra.
    pub fn as_skew(&self) -> &SkewMap {
        &self.bracket
    }

    pub fn structure_constants(&self, i: usize, j: usize) -> Vec<Rational> {
        self.bracket.eval_basis(&[i, j])
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.bracket.eval(&[x, y])
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_zero()
    }

    /// Adjoint action `a ↦ [x, a]` as a matrix.
    pub fn ad(&self, x: &[Rational]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Rational>> = (0..n).map(|j| self.bracket(x, &unit_vec(n, j))).collect();
        Matrix::from_columns(n, &cols)
    }

    /// Direct sum `self ⊕ other`, with the basis of `self` first.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let (m, n) = (self.dim(), other.dim());
        let d = m + n;
        let bracket = SkewMap::from_fn(2, d, d, |t| {
            let (i, j) = (t[0], t[1]);
            let mut v = zero_vec(d);
            if j < m {
                v[..m].clone_from_slice(self.bracket.term(&[i, j]));
            } else if i >= m {
                v[m..].clone_from_slice(other.bracket.term(&[i - m, j - m]));
            }
            v
        });
        LieAlgebra { bracket }
    }
}

/// A linear map `Q^source → Q^target`; matrix columns are images of the
/// source basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Self {
        Self { matrix }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Matrix::identity(n))
    }

    pub fn zero(source_dim: usize, target_dim: usize) -> Self {
        Self::new(Matrix::zeros(target_dim, source_dim))
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.source_dim() != other.target_dim() {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}→{} after {}→{}",
                self.source_dim(),
                self.target_dim(),
                other.source_dim(),
                other.target_dim()
            )));
        }
        Ok(LinearMap::new(&self.matrix * &other.matrix))
    }

    pub fn inverse(&self) -> Result<LinearMap> {
        Ok(LinearMap::new(self.matrix.inverse()?))
    }
}

/// A point `(ρ, θ, Φ)` of the morphism bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub rho: LieAlgebra,
    pub theta: LieAlgebra,
    pub phi: LinearMap,
}

impl Triple {
    /// Builds a triple, checking both Jacobi identities and the morphism
    /// condition.
    pub fn new(rho: LieAlgebra, theta: LieAlgebra, phi: LinearMap) -> Result<Self> {
        for (name, alg) in [("rho", &rho), ("theta", &theta)] {
            let defect = jacobi_defect(alg);
            if !defect.is_zero() {
                let (indices, value) = defect.terms().next().expect("nonzero defect has a term");
                return Err(Error::NotLie(format!(
                    "{name}: cyclic sum on basis {indices:?} is {}",
                    crate::io::format_vector(value)
                )));
            }
        }
        let t = Self::new_unchecked(rho, theta, phi)?;
        let defect = morphism_defect(&t)?;
        if !defect.is_zero() {
            let (indices, value) = defect.terms().next().expect("nonzero defect has a term");
            return Err(Error::NotMorphism(format!(
                "Φ([e{}, e{}]) − [Φe{}, Φe{}] = {}",
                indices[0],
                indices[1],
                indices[0],
                indices[1],
                crate::io::format_vector(value)
            )));
        }
        Ok(t)
    }

    /// Builds a triple checking only dimensions.
    pub fn new_unchecked(rho: LieAlgebra, theta: LieAlgebra, phi: LinearMap) -> Result<Self> {
        if phi.source_dim() != rho.dim() || phi.target_dim() != theta.dim() {
            return Err(Error::DimensionMismatch(format!(
                "phi is {}→{} but the algebras have dimensions {} and {}",
                phi.source_dim(),
                phi.target_dim(),
                rho.dim(),
                theta.dim()
            )));
        }
        Ok(Self { rho, theta, phi })
    }

    pub fn u_dim(&self) -> usize {
        self.rho.dim()
    }

    pub fn v_dim(&self) -> usize {
        self.theta.dim()
    }
}

/// `(a, b, c) ↦ Σ_cyclic α(β(a, b), c)` for two arity-2 maps on one space.
/// With `α = β = ρ` this is the Jacobi defect; with one of them the base
/// bracket it is the linearization used by deformations.
pub fn cyclic_composite(alpha: &SkewMap, beta: &SkewMap) -> SkewMap {
    let n = alpha.source_dim();
    assert!(alpha.arity() == 2 && beta.arity() == 2);
    assert!(alpha.same_shape(beta) && alpha.target_dim() == n);
    SkewMap::from_fn(3, n, n, |t| {
        let mut out = zero_vec(n);
        for (a, b, c) in [(t[0], t[1], t[2]), (t[1], t[2], t[0]), (t[2], t[0], t[1])] {
            let inner = beta.eval_basis(&[a, b]);
            for (k, x) in inner.iter().enumerate() {
                if k != c {
                    add_assign_scaled(&mut out, &alpha.eval_basis(&[k, c]), x);
                }
            }
        }
        out
    })
}

/// Σ_cyclic ρ(ρ(a, b), c); zero exactly when `rho` is a Lie bracket.
pub fn jacobi_defect(rho: &LieAlgebra) -> SkewMap {
    cyclic_composite(rho.as_skew(), rho.as_skew())
}

/// `(a, b) ↦ Φ(ρ(a, b)) − θ(Φa, Φb)`; zero exactly when the triple lies in
/// the morphism bundle.
pub fn morphism_defect(t: &Triple) -> Result<SkewMap> {
    if t.phi.source_dim() != t.rho.dim() || t.phi.target_dim() != t.theta.dim() {
        return Err(Error::DimensionMismatch(
            "phi does not match the algebras".into(),
        ));
    }
    let transported = t.rho.as_skew().compose_left(t.phi.matrix())?;
    let pulled = diamond(t.theta.as_skew(), &t.phi)?;
    Ok(&transported - &pulled)
}

/// `λ⋄Φ (x_1, …, x_p) = λ(Φx_1, …, Φx_p)`.
pub fn diamond(lambda: &SkewMap, phi: &LinearMap) -> Result<SkewMap> {
    if lambda.source_dim() != phi.target_dim() {
        return Err(Error::DimensionMismatch(format!(
            "λ is defined on dimension {} but Φ lands in dimension {}",
            lambda.source_dim(),
            phi.target_dim()
        )));
    }
    lambda.pull_back(phi.matrix())
}

/// `(A(g)·ρ)(a, b) = g⁻¹ ρ(g a, g b)`.
pub fn act_algebra(g: &LinearMap, rho: &LieAlgebra) -> Result<LieAlgebra> {
    if g.source_dim() != rho.dim() || g.target_dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "g must be {0}x{0} to act on a {0}-dimensional algebra",
            rho.dim()
        )));
    }
    let g_inv = g.inverse()?;
    let bracket = rho
        .as_skew()
        .pull_back(g.matrix())?
        .compose_left(g_inv.matrix())?;
    LieAlgebra::new_unchecked(bracket)
}

/// The `GL(U) × GL(V)` action
/// `(g, h)·(ρ, θ, Φ) = (A(g)·ρ, A(h)·θ, h⁻¹ ∘ Φ ∘ g)`.
///
/// This is a right action: acting by `(g₁, h₁)` and then by `(g₂, h₂)` equals
/// acting once by `(g₁ g₂, h₁ h₂)`.
pub fn act_triple(g: &LinearMap, h: &LinearMap, t: &Triple) -> Result<Triple> {
    let rho = act_algebra(g, &t.rho)?;
    let theta = act_algebra(h, &t.theta)?;
    let phi = h.inverse()?.compose(&t.phi)?.compose(g)?;
    Triple::new_unchecked(rho, theta, phi)
}
