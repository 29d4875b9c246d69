//! Coboundary operators.
//!
//! * [`delta_morphism`]: the complex `∧(U, V)` of a fixed triple `(ρ, θ, Φ)`,
//!   with `V` a `U`-module through `u·v = θ(Φu, v)`:
//!
//!   ```text
//!   δψ(x_1,…,x_{p+1}) = Σ_s (−1)^s θ(Φx_s, ψ(…x̂_s…))
//!                     + Σ_{s<t} (−1)^{s+t−1} ψ(ρ(x_s,x_t), …x̂_s…x̂_t…)
//!   ```
//!
//!   The global sign is the opposite of the usual Chevalley–Eilenberg one.
//! * [`delta_algebra`]: the same operator with `θ = ρ` and `Φ = id`.
//! * [`big_delta`]: the differential on `Λ^p = ∧^{p+1}(U,U) ⊕ ∧^{p+1}(V,V) ⊕ ∧^p(U,V)`
//!   that deforms `ρ`, `θ` and `Φ` at once.
//! * [`nr_bracket`] and [`mc_defect`] for the fixed-algebra theory.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{diamond, LieAlgebra, Triple};
use crate::error::{Error, Result};
use crate::linalg::{add_assign_scaled, int, rat, zero_vec, Matrix, Rational};
use crate::skew::SkewMap;

/// Sign of the mixed term `Φ∘X₁ − X₂⋄Φ` in the degree-`p` differential.
///
/// `Paper` uses `(−1)^p`. `Geometric` uses `(−1)^{p+1}`, which makes the
/// degree-1 cocycle condition coincide with the first-order expansion of
/// `Φ_t(ρ_t(a,b)) = θ_t(Φ_t a, Φ_t b)`. The two complexes are isomorphic via
/// `(x1, x2, x3) ↦ (x1, x2, −x3)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignConvention {
    #[default]
    Paper,
    Geometric,
}

impl SignConvention {
    pub const ALL: [SignConvention; 2] = [SignConvention::Paper, SignConvention::Geometric];

    pub fn mixed_sign(self, degree: usize) -> Rational {
        let exponent = match self {
            SignConvention::Paper => degree,
            SignConvention::Geometric => degree + 1,
        };
        if exponent % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SignConvention::Paper => "paper",
            SignConvention::Geometric => "geometric",
        }
    }
}

impl fmt::Display for SignConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SignConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(SignConvention::Paper),
            "geometric" => Ok(SignConvention::Geometric),
            other => Err(Error::InvalidParams(format!(
                "unknown convention {other:?}, expected \"paper\" or \"geometric\""
            ))),
        }
    }
}

/// A degree-`p` cochain `(X₁, X₂, X₃)` with arities `(p+1, p+1, p)`.
/// At degree 0 there is no `X₃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    pub x1: SkewMap,
    pub x2: SkewMap,
    pub x3: Option<SkewMap>,
}

impl Cochain {
    pub fn new(degree: usize, x1: SkewMap, x2: SkewMap, x3: Option<SkewMap>) -> Result<Self> {
        let (m, n) = (x1.source_dim(), x2.source_dim());
        if x1.arity() != degree + 1 || x2.arity() != degree + 1 {
            return Err(Error::InvalidArity(format!(
                "degree-{degree} cochain needs x1, x2 of arity {}, got {} and {}",
                degree + 1,
                x1.arity(),
                x2.arity()
            )));
        }
        if x1.target_dim() != m || x2.target_dim() != n {
            return Err(Error::DimensionMismatch(
                "x1 and x2 must map a space to itself".into(),
            ));
        }
        match (&x3, degree) {
            (Some(_), 0) => {
                return Err(Error::InvalidArity(
                    "degree-0 cochains have no x3 component".into(),
                ))
            }
            (None, d) if d > 0 => {
                return Err(Error::InvalidArity(format!(
                    "degree-{d} cochain is missing its x3 component"
                )))
            }
            (Some(x3), _)
                if (x3.arity() != degree || x3.source_dim() != m || x3.target_dim() != n) =>
            {
                return Err(Error::DimensionMismatch(format!(
                        "x3 must have arity {degree} from dim {m} to dim {n}, got arity {} from {} to {}",
                        x3.arity(),
                        x3.source_dim(),
                        x3.target_dim()
                    )));
            }
            _ => {}
        }
        Ok(Self { degree, x1, x2, x3 })
    }

    pub fn zero(degree: usize, u_dim: usize, v_dim: usize) -> Self {
        Self {
            degree,
            x1: SkewMap::zero(degree + 1, u_dim, u_dim),
            x2: SkewMap::zero(degree + 1, v_dim, v_dim),
            x3: (degree > 0).then(|| SkewMap::zero(degree, u_dim, v_dim)),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn u_dim(&self) -> usize {
        self.x1.source_dim()
    }

    pub fn v_dim(&self) -> usize {
        self.x2.source_dim()
    }

    pub fn is_zero(&self) -> bool {
        self.x1.is_zero() && self.x2.is_zero() && self.x3.as_ref().is_none_or(SkewMap::is_zero)
    }

    /// The involution `(x1, x2, x3) ↦ (x1, x2, −x3)` between the two sign
    /// conventions.
    pub fn flip_mixed(&self) -> Cochain {
        Cochain {
            x3: self.x3.as_ref().map(|x| -x),
            ..self.clone()
        }
    }

    pub fn scale(&self, s: &Rational) -> Cochain {
        Cochain {
            degree: self.degree,
            x1: self.x1.scale(s),
            x2: self.x2.scale(s),
            x3: self.x3.as_ref().map(|x| x.scale(s)),
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        Cochain {
            degree: self.degree,
            x1: &self.x1 + &other.x1,
            x2: &self.x2 + &other.x2,
            x3: match (&self.x3, &other.x3) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            },
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.scale(&-Rational::one()))
    }
}

fn check_triple_dims(t: &Triple, u_dim: usize, v_dim: usize) -> Result<()> {
    if t.u_dim() != u_dim || t.v_dim() != v_dim {
        return Err(Error::DimensionMismatch(format!(
            "cochain is on dimensions ({u_dim}, {v_dim}) but the triple is on ({}, {})",
            t.u_dim(),
            t.v_dim()
        )));
    }
    Ok(())
}

/// The morphism-complex differential for arbitrary brackets and map; `rho`
/// on the source, `theta` on the target, `phi` the target×source matrix.
fn coboundary(rho: &SkewMap, theta: &SkewMap, phi: &Matrix, psi: &SkewMap) -> SkewMap {
    let (m, n) = (psi.source_dim(), psi.target_dim());
    let p = psi.arity();
    let phi_cols: Vec<Vec<Rational>> = (0..m).map(|j| phi.column(j)).collect();
    SkewMap::from_fn(p + 1, m, n, |x| {
        let mut out = zero_vec(n);
        let mut rest = Vec::with_capacity(p);
        for s in 0..=p {
            rest.clear();
            rest.extend(
                x.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != s)
                    .map(|(_, &v)| v),
            );
            let value = psi.term(&rest);
            if value.iter().all(Zero::is_zero) {
                continue;
            }
            let acted = theta.eval(&[&phi_cols[x[s]], value]);
            // (−1)^s with s counted from 1
            let sign = if s % 2 == 0 {
                -Rational::one()
            } else {
                Rational::one()
            };
            add_assign_scaled(&mut out, &acted, &sign);
        }
        let mut args = Vec::with_capacity(p);
        for (s, t) in (0..=p).tuple_combinations() {
            let bracket = rho.term(&[x[s], x[t]]);
            if bracket.iter().all(Zero::is_zero) {
                continue;
            }
            // (−1)^{s+t−1} with s, t counted from 1
            let sign = if (s + t) % 2 == 0 {
                -Rational::one()
            } else {
                Rational::one()
            };
            for (k, c) in bracket.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                args.clear();
                args.push(k);
                args.extend(
                    x.iter()
                        .enumerate()
                        .filter(|&(i, _)| i != s && i != t)
                        .map(|(_, &v)| v),
                );
                add_assign_scaled(&mut out, &psi.eval_basis(&args), &(&sign * c));
            }
        }
        out
    })
}

/// `δ^p ψ` in the complex `∧(U, V)` of the triple.
pub fn delta_morphism(t: &Triple, psi: &SkewMap) -> Result<SkewMap> {
    check_triple_dims(t, psi.source_dim(), psi.target_dim())?;
    Ok(coboundary(
        t.rho.as_skew(),
        t.theta.as_skew(),
        t.phi.matrix(),
        psi,
    ))
}

/// The Lie algebra differential: [`delta_morphism`] with `θ = ρ`, `Φ = id`.
pub fn delta_algebra(rho: &LieAlgebra, x: &SkewMap) -> Result<SkewMap> {
    if x.source_dim() != rho.dim() || x.target_dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "cochain is on dimensions ({}, {}) but the algebra has dimension {}",
            x.source_dim(),
            x.target_dim(),
            rho.dim()
        )));
    }
    Ok(coboundary(
        rho.as_skew(),
        rho.as_skew(),
        &Matrix::identity(rho.dim()),
        x,
    ))
}

/// `Φ∘X₁ − X₂⋄Φ`.
pub fn mixed_term(t: &Triple, x1: &SkewMap, x2: &SkewMap) -> Result<SkewMap> {
    let transported = x1.compose_left(t.phi.matrix())?;
    let pulled = diamond(x2, &t.phi)?;
    Ok(&transported - &pulled)
}

/// `Δ^p(X₁, X₂, X₃) = (δX₁, δX₂, δX₃ ± (Φ∘X₁ − X₂⋄Φ))`.
pub fn big_delta(t: &Triple, c: &Cochain, conv: SignConvention) -> Result<Cochain> {
    check_triple_dims(t, c.u_dim(), c.v_dim())?;
    let p = c.degree();
    let x1 = delta_algebra(&t.rho, &c.x1)?;
    let x2 = delta_algebra(&t.theta, &c.x2)?;
    let mut x3 = mixed_term(t, &c.x1, &c.x2)?.scale(&conv.mixed_sign(p));
    if let Some(old) = &c.x3 {
        x3 = &x3 + &delta_morphism(t, old)?;
    }
    Cochain::new(p + 1, x1, x2, Some(x3))
}

/// Nijenhuis–Richardson bracket of `φ ∈ ∧^p(U,V)` and `ψ ∈ ∧^q(U,V)`:
///
/// ```text
/// [[φ,ψ]](x_1,…,x_{p+q}) = Σ_{(p,q)-shuffles σ} sgn(σ) θ(φ(x_σ(1),…), ψ(x_σ(p+1),…))
/// ```
///
/// On decomposables this is `ω∧π ⊗ [v,w]`. It satisfies
/// `[[φ,ψ]] = −(−1)^{pq} [[ψ,φ]]` with `p`, `q` the arities.
pub fn nr_bracket(theta: &LieAlgebra, phi: &SkewMap, psi: &SkewMap) -> Result<SkewMap> {
    let (m, n) = (phi.source_dim(), phi.target_dim());
    if psi.source_dim() != m || psi.target_dim() != n || theta.dim() != n {
        return Err(Error::DimensionMismatch(
            "both arguments must map the same U into the algebra V".into(),
        ));
    }
    let (p, q) = (phi.arity(), psi.arity());
    let base_parity = p * (p.saturating_sub(1)) / 2;
    Ok(SkewMap::from_fn(p + q, m, n, |x| {
        let mut out = zero_vec(n);
        for first in (0..p + q).combinations(p) {
            let left: Vec<usize> = first.iter().map(|&i| x[i]).collect();
            let right: Vec<usize> = (0..p + q)
                .filter(|i| !first.contains(i))
                .map(|i| x[i])
                .collect();
            let a = phi.term(&left);
            let b = psi.term(&right);
            if a.iter().all(Zero::is_zero) || b.iter().all(Zero::is_zero) {
                continue;
            }
            let inversions = first.iter().sum::<usize>() - base_parity;
            let sign = if inversions % 2 == 0 { int(1) } else { int(-1) };
            add_assign_scaled(&mut out, &theta.bracket(a, b), &sign);
        }
        out
    }))
}

/// `δψ − ½[[ψ, ψ]]` for a 1-cochain `ψ`.
///
/// This is exactly `morphism_defect(ρ, θ, Φ + ψ) − morphism_defect(ρ, θ, Φ)`,
/// so it vanishes iff `Φ + ψ` is again a morphism when `Φ` is one. With the
/// sign of `δ` used here the Maurer–Cartan equation reads `δψ = ½[[ψ, ψ]]`.
pub fn mc_defect(t: &Triple, psi: &SkewMap) -> Result<SkewMap> {
    if psi.arity() != 1 {
        return Err(Error::InvalidArity(format!(
            "Maurer–Cartan defect needs a 1-cochain, got arity {}",
            psi.arity()
        )));
    }
    let d = delta_morphism(t, psi)?;
    let sq = nr_bracket(&t.theta, psi, psi)?;
    Ok(&d - &sq.scale(&rat(1, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{morphism_defect, LinearMap};
    use crate::catalog;
    use crate::linalg::unit_vec;

    fn ad(alg: &LieAlgebra, i: usize) -> SkewMap {
        SkewMap::from_matrix(&alg.ad(&unit_vec(alg.dim(), i)))
    }

    #[test]
    fn abelian_kills_everything() {
        let t = catalog::identity_triple(&catalog::abelian(3));
        let psi = SkewMap::from_coords(2, 3, 3, (0..9).map(|i| int(i - 4)).collect()).unwrap();
        assert!(delta_morphism(&t, &psi).unwrap().is_zero());
        assert!(delta_algebra(&t.rho, &psi).unwrap().is_zero());
    }

    #[test]
    fn identity_cochain_on_sl2() {
        let sl2 = catalog::sl2();
        let t = catalog::identity_triple(&sl2);
        let id = SkewMap::from_matrix(&Matrix::identity(3));
        assert_eq!(delta_morphism(&t, &id).unwrap(), -sl2.as_skew());
    }

    #[test]
    fn inner_derivation_and_jacobi_are_closed() {
        let sl2 = catalog::sl2();
        assert!(delta_algebra(&sl2, &ad(&sl2, 0)).unwrap().is_zero());
        assert!(delta_algebra(&sl2, sl2.as_skew()).unwrap().is_zero());
    }

    #[test]
    fn degree_two_matches_first_order_jacobi() {
        // δ²ρ₁(a,b,c) = Σ_cyc ρ(ρ₁(a,b),c) + ρ₁(ρ(a,b),c), with equality, not up to sign.
        let sl2 = catalog::sl2();
        let rho1 = SkewMap::from_coords(
            2,
            3,
            3,
            [1, 0, -2, 3, 1, 1, 0, 2, -1]
                .iter()
                .map(|&x| int(x))
                .collect(),
        )
        .unwrap();
        let expected = &crate::algebra::cyclic_composite(sl2.as_skew(), &rho1)
            + &crate::algebra::cyclic_composite(&rho1, sl2.as_skew());
        assert_eq!(delta_algebra(&sl2, &rho1).unwrap(), expected);
    }

    #[test]
    fn degree_zero_of_abelian_identity() {
        let t = catalog::identity_triple(&catalog::abelian(2));
        let g = SkewMap::from_matrix(&Matrix::from_i64(&[&[1, 2], &[3, 4]]));
        let h = SkewMap::from_matrix(&Matrix::from_i64(&[&[0, 1], &[-1, 5]]));
        let c = Cochain::new(0, g.clone(), h.clone(), None).unwrap();
        let d = big_delta(&t, &c, SignConvention::Paper).unwrap();
        assert!(d.x1.is_zero() && d.x2.is_zero());
        assert_eq!(d.x3.unwrap(), &g - &h);
    }

    #[test]
    fn reduction_to_fixed_algebras() {
        let t = catalog::identity_triple(&catalog::sl2());
        let psi = SkewMap::from_coords(1, 3, 3, (0..9).map(|i| int(i % 4 - 1)).collect()).unwrap();
        let c = Cochain::new(
            1,
            SkewMap::zero(2, 3, 3),
            SkewMap::zero(2, 3, 3),
            Some(psi.clone()),
        )
        .unwrap();
        for conv in SignConvention::ALL {
            let d = big_delta(&t, &c, conv).unwrap();
            assert!(d.x1.is_zero() && d.x2.is_zero());
            assert_eq!(d.x3.unwrap(), delta_morphism(&t, &psi).unwrap());
        }
    }

    #[test]
    fn cochain_shape_checks() {
        assert!(Cochain::new(
            0,
            SkewMap::zero(1, 2, 2),
            SkewMap::zero(1, 3, 3),
            Some(SkewMap::zero(0, 2, 3))
        )
        .is_err());
        assert!(Cochain::new(1, SkewMap::zero(2, 2, 2), SkewMap::zero(2, 3, 3), None).is_err());
        assert!(Cochain::new(
            1,
            SkewMap::zero(1, 2, 2),
            SkewMap::zero(2, 3, 3),
            Some(SkewMap::zero(1, 2, 3))
        )
        .is_err());
        assert!(Cochain::new(
            1,
            SkewMap::zero(2, 2, 2),
            SkewMap::zero(2, 3, 3),
            Some(SkewMap::zero(1, 3, 2))
        )
        .is_err());
        let t = catalog::identity_triple(&catalog::sl2());
        assert!(big_delta(&t, &Cochain::zero(1, 2, 2), SignConvention::Paper).is_err());
    }

    #[test]
    fn nr_bracket_on_decomposables() {
        // φ = e¹⊗e, ψ = e²⊗f over V = sl2 with basis (h, e, f); U = Q².
        let sl2 = catalog::sl2();
        let phi = SkewMap::from_terms(1, 2, 3, [(vec![0], unit_vec(3, 1))]).unwrap();
        let psi = SkewMap::from_terms(1, 2, 3, [(vec![1], unit_vec(3, 2))]).unwrap();
        let b = nr_bracket(&sl2, &phi, &psi).unwrap();
        let expected = SkewMap::from_terms(2, 2, 3, [(vec![0, 1], unit_vec(3, 0))]).unwrap();
        assert_eq!(b, expected);
        assert!(nr_bracket(&catalog::abelian(3), &phi, &psi)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn nr_bracket_square_of_one_cochain() {
        let sl2 = catalog::sl2();
        let psi = SkewMap::from_coords(
            1,
            3,
            3,
            [2, 0, 1, -1, 1, 0, 3, 0, 1]
                .iter()
                .map(|&x| int(x))
                .collect(),
        )
        .unwrap();
        let sq = nr_bracket(&sl2, &psi, &psi).unwrap();
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            let expected: Vec<Rational> = sl2
                .bracket(psi.term(&[a]), psi.term(&[b]))
                .iter()
                .map(|x| x * int(2))
                .collect();
            assert_eq!(sq.term(&[a, b]), expected.as_slice());
        }
    }

    #[test]
    fn mc_defect_examples() {
        let t = catalog::identity_triple(&catalog::sl2());
        assert!(mc_defect(&t, &SkewMap::zero(1, 3, 3)).unwrap().is_zero());

        let ab = catalog::identity_triple(&catalog::aff1().direct_sum(&catalog::abelian(1)));
        let psi = SkewMap::from_coords(1, 3, 3, (0..9).map(|i| int(i - 3)).collect()).unwrap();
        let t_ab =
            crate::algebra::Triple::new(ab.rho.clone(), catalog::abelian(3), LinearMap::zero(3, 3))
                .unwrap();
        assert_eq!(
            mc_defect(&t_ab, &psi).unwrap(),
            delta_morphism(&t_ab, &psi).unwrap()
        );

        let psi = SkewMap::from_coords(
            1,
            3,
            3,
            [1, 2, 0, 0, -1, 1, 1, 0, 0]
                .iter()
                .map(|&x| int(x))
                .collect(),
        )
        .unwrap();
        let moved = crate::algebra::Triple::new_unchecked(
            t.rho.clone(),
            t.theta.clone(),
            LinearMap::new(t.phi.matrix().add(&psi.to_matrix().unwrap())),
        )
        .unwrap();
        assert_eq!(
            mc_defect(&t, &psi).unwrap(),
            morphism_defect(&moved).unwrap()
        );
        assert!(mc_defect(&t, &SkewMap::zero(2, 3, 3)).is_err());
    }
}
