//! Coordinates on cochain spaces, matrices of the differentials, and
//! cohomology dimensions.
//!
//! Coordinates of a degree-`p` cochain are laid out as the `x1` block, then
//! `x2`, then `x3`; inside a block, increasing index tuples in lexicographic
//! order with the target basis innermost.

use crate::algebra::Triple;
use crate::complex::{big_delta, delta_morphism, Cochain, SignConvention};
use crate::error::{Error, Result};
use crate::linalg::{unit_vec, Matrix, Rational};
use crate::skew::{binomial, SkewMap};

/// `dim Λ^p = C(m,p+1)·m + C(n,p+1)·n + C(m,p)·n`, without the last summand
/// at `p = 0`.
pub fn cochain_space_dim(degree: usize, u_dim: usize, v_dim: usize) -> usize {
    let mixed = if degree == 0 {
        0
    } else {
        binomial(u_dim, degree) * v_dim
    };
    binomial(u_dim, degree + 1) * u_dim + binomial(v_dim, degree + 1) * v_dim + mixed
}

pub fn flatten(c: &Cochain) -> Vec<Rational> {
    let mut v = Vec::with_capacity(cochain_space_dim(c.degree(), c.u_dim(), c.v_dim()));
    v.extend_from_slice(c.x1.coords());
    v.extend_from_slice(c.x2.coords());
    if let Some(x3) = &c.x3 {
        v.extend_from_slice(x3.coords());
    }
    v
}

pub fn unflatten(degree: usize, u_dim: usize, v_dim: usize, v: &[Rational]) -> Result<Cochain> {
    let expected = cochain_space_dim(degree, u_dim, v_dim);
    if v.len() != expected {
        return Err(Error::DimensionMismatch(format!(
            "degree-{degree} cochains on ({u_dim}, {v_dim}) have {expected} coordinates, got {}",
            v.len()
        )));
    }
    let n1 = binomial(u_dim, degree + 1) * u_dim;
    let n2 = binomial(v_dim, degree + 1) * v_dim;
    let x1 = SkewMap::from_coords(degree + 1, u_dim, u_dim, v[..n1].to_vec())?;
    let x2 = SkewMap::from_coords(degree + 1, v_dim, v_dim, v[n1..n1 + n2].to_vec())?;
    let x3 = if degree == 0 {
        None
    } else {
        Some(SkewMap::from_coords(
            degree,
            u_dim,
            v_dim,
            v[n1 + n2..].to_vec(),
        )?)
    };
    Cochain::new(degree, x1, x2, x3)
}

/// Matrix of `Δ^p` in the flattened bases; shape `dim Λ^{p+1} × dim Λ^p`.
pub fn delta_matrix(t: &Triple, degree: usize, conv: SignConvention) -> Result<Matrix> {
    let (m, n) = (t.u_dim(), t.v_dim());
    let cols = cochain_space_dim(degree, m, n);
    let rows = cochain_space_dim(degree + 1, m, n);
    let columns = (0..cols)
        .map(|j| {
            let c = unflatten(degree, m, n, &unit_vec(cols, j))?;
            Ok(flatten(&big_delta(t, &c, conv)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(rows, &columns))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Dims {
    pub cochains: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub cohomology: usize,
}

impl Dims {
    pub fn triple(&self) -> (usize, usize, usize) {
        (self.cocycles, self.coboundaries, self.cohomology)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub degree: usize,
    pub convention: SignConvention,
    pub dims: Dims,
    /// Kernel basis of `Δ^p`, in free-column order.
    pub cocycle_basis: Vec<Cochain>,
}

/// `Z^p = ker Δ^p`, `B^p = im Δ^{p−1}` (zero at `p = 0`), `H^p = Z^p / B^p`.
pub fn cohomology(t: &Triple, degree: usize, conv: SignConvention) -> Result<CohomologyReport> {
    let (m, n) = (t.u_dim(), t.v_dim());
    let d = delta_matrix(t, degree, conv)?;
    let kernel = d.nullspace();
    let coboundaries = match degree {
        0 => 0,
        p => delta_matrix(t, p - 1, conv)?.rank(),
    };
    let cocycle_basis = kernel
        .iter()
        .map(|v| unflatten(degree, m, n, v))
        .collect::<Result<Vec<_>>>()?;
    let dims = Dims {
        cochains: d.cols(),
        cocycles: kernel.len(),
        coboundaries,
        cohomology: kernel.len() - coboundaries,
    };
    Ok(CohomologyReport {
        degree,
        convention: conv,
        dims,
        cocycle_basis,
    })
}

pub fn is_cocycle(t: &Triple, c: &Cochain, conv: SignConvention) -> Result<bool> {
    Ok(big_delta(t, c, conv)?.is_zero())
}

/// A preimage `w` with `Δ w = c`, or `None` when `c` is not a coboundary.
/// Degree-0 cochains have no preimage space.
pub fn is_coboundary(t: &Triple, c: &Cochain, conv: SignConvention) -> Result<Option<Cochain>> {
    let p = c.degree();
    if p == 0 {
        return Err(Error::Precondition(
            "degree-0 cochains have no lower-degree preimages".into(),
        ));
    }
    let d = delta_matrix(t, p - 1, conv)?;
    match d.solve_affine(&flatten(c)) {
        None => Ok(None),
        Some(sol) => Ok(Some(unflatten(
            p - 1,
            t.u_dim(),
            t.v_dim(),
            &sol.particular,
        )?)),
    }
}

/// Matrix of `δ^p : ∧^p(U,V) → ∧^{p+1}(U,V)` for the fixed-algebra complex,
/// where `∧⁰(U,V) = V`.
pub fn morphism_delta_matrix(t: &Triple, degree: usize) -> Result<Matrix> {
    let (m, n) = (t.u_dim(), t.v_dim());
    let cols = binomial(m, degree) * n;
    let rows = binomial(m, degree + 1) * n;
    let columns = (0..cols)
        .map(|j| {
            let psi = SkewMap::from_coords(degree, m, n, unit_vec(cols, j))?;
            Ok(delta_morphism(t, &psi)?.into_coords())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(rows, &columns))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismCohomologyReport {
    pub degree: usize,
    pub dims: Dims,
    pub cocycle_basis: Vec<SkewMap>,
}

/// Cohomology of the fixed-algebra complex `(∧(U,V), δ)`, with `V` a
/// `U`-module through `Φ`.
pub fn morphism_cohomology(t: &Triple, degree: usize) -> Result<MorphismCohomologyReport> {
    let (m, n) = (t.u_dim(), t.v_dim());
    let d = morphism_delta_matrix(t, degree)?;
    let kernel = d.nullspace();
    let coboundaries = match degree {
        0 => 0,
        p => morphism_delta_matrix(t, p - 1)?.rank(),
    };
    let cocycle_basis = kernel
        .into_iter()
        .map(|v| SkewMap::from_coords(degree, m, n, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(MorphismCohomologyReport {
        degree,
        dims: Dims {
            cochains: d.cols(),
            cocycles: cocycle_basis.len(),
            coboundaries,
            cohomology: cocycle_basis.len() - coboundaries,
        },
        cocycle_basis,
    })
}
