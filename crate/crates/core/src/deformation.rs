//! Formal deformations of a triple `(ρ, θ, Φ)` truncated at order `N`:
//!
//! ```text
//! ρ_t = ρ + Σ ρ_i t^i,   θ_t = θ + Σ θ_i t^i,   Φ_t = Φ + Σ Φ_i t^i
//! ```
//!
//! A curve lies in the morphism bundle to order `N` when the Jacobi identity
//! for `ρ_t` and `θ_t` and the fiber constraint
//! `Φ_t(ρ_t(a,b)) = θ_t(Φ_t a, Φ_t b)` hold in every `t`-degree `1..=N`.
//!
//! In `t`-degree `n` the constraints split as `Δ¹(C^n) + K_n = 0`, where
//! `C^n = (ρ_n, θ_n, Φ_n)`, `Δ¹` is the degree-1 differential with the
//! geometric sign, and `K_n` collects the products of lower coefficients.
//! [`extend_deformation`] solves this system one order at a time.

use num_traits::One;

use crate::algebra::{cyclic_composite, LinearMap, Triple};
use crate::cohomology::{delta_matrix, flatten, is_cocycle, unflatten};
use crate::complex::{big_delta, Cochain, SignConvention};
use crate::error::{Error, Result};
use crate::linalg::{add_assign_scaled, zero_vec, Matrix, Rational};
use crate::skew::SkewMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedCurve {
    base: Triple,
    rho: Vec<SkewMap>,
    theta: Vec<SkewMap>,
    phi: Vec<SkewMap>,
}

impl TruncatedCurve {
    /// Coefficient lists start at `t^1`; all three must have the same length.
    pub fn new(
        base: Triple,
        rho: Vec<SkewMap>,
        theta: Vec<SkewMap>,
        phi: Vec<SkewMap>,
    ) -> Result<Self> {
        if rho.len() != theta.len() || rho.len() != phi.len() {
            return Err(Error::DimensionMismatch(format!(
                "coefficient lists have lengths {}, {}, {}",
                rho.len(),
                theta.len(),
                phi.len()
            )));
        }
        let (m, n) = (base.u_dim(), base.v_dim());
        for (i, ((r, th), ph)) in rho.iter().zip(&theta).zip(&phi).enumerate() {
            let ok = r.same_shape(&SkewMap::zero(2, m, m))
                && th.same_shape(&SkewMap::zero(2, n, n))
                && ph.same_shape(&SkewMap::zero(1, m, n));
            if !ok {
                return Err(Error::DimensionMismatch(format!(
                    "order-{} coefficients do not match the base triple",
                    i + 1
                )));
            }
        }
        Ok(Self {
            base,
            rho,
            theta,
            phi,
        })
    }

    /// The curve with every higher coefficient zero.
    pub fn constant(base: Triple, order: usize) -> Self {
        let (m, n) = (base.u_dim(), base.v_dim());
        Self {
            rho: vec![SkewMap::zero(2, m, m); order],
            theta: vec![SkewMap::zero(2, n, n); order],
            phi: vec![SkewMap::zero(1, m, n); order],
            base,
        }
    }

    pub fn base(&self) -> &Triple {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.rho.len()
    }

    /// `ρ_i`, with `ρ_0 = ρ` and zero beyond the truncation order.
    pub fn rho_coeff(&self, i: usize) -> SkewMap {
        match i {
            0 => self.base.rho.as_skew().clone(),
            i if i <= self.order() => self.rho[i - 1].clone(),
            _ => SkewMap::zero(2, self.base.u_dim(), self.base.u_dim()),
        }
    }

    pub fn theta_coeff(&self, i: usize) -> SkewMap {
        match i {
            0 => self.base.theta.as_skew().clone(),
            i if i <= self.order() => self.theta[i - 1].clone(),
            _ => SkewMap::zero(2, self.base.v_dim(), self.base.v_dim()),
        }
    }

    pub fn phi_coeff(&self, i: usize) -> SkewMap {
        match i {
            0 => SkewMap::from_matrix(self.base.phi.matrix()),
            i if i <= self.order() => self.phi[i - 1].clone(),
            _ => SkewMap::zero(1, self.base.u_dim(), self.base.v_dim()),
        }
    }

    pub fn rho_coeffs(&self) -> &[SkewMap] {
        &self.rho
    }

    pub fn theta_coeffs(&self) -> &[SkewMap] {
        &self.theta
    }

    pub fn phi_coeffs(&self) -> &[SkewMap] {
        &self.phi
    }

    /// `C^n = (ρ_n, θ_n, Φ_n)` as a degree-1 cochain, for `1 ≤ n`.
    pub fn coefficient_cochain(&self, n: usize) -> Cochain {
        assert!(n >= 1, "the order-0 term is the base triple");
        Cochain::new(
            1,
            self.rho_coeff(n),
            self.theta_coeff(n),
            Some(self.phi_coeff(n)),
        )
        .expect("curve coefficients have cochain shape")
    }

    /// The curve with one more order, whose new coefficients are `c`.
    pub fn extended(&self, c: &Cochain) -> Result<TruncatedCurve> {
        if c.degree() != 1 || c.u_dim() != self.base.u_dim() || c.v_dim() != self.base.v_dim() {
            return Err(Error::DimensionMismatch(
                "new coefficients must form a degree-1 cochain on the base".into(),
            ));
        }
        let mut out = self.clone();
        out.rho.push(c.x1.clone());
        out.theta.push(c.x2.clone());
        out.phi
            .push(c.x3.clone().expect("degree-1 cochains have x3"));
        Ok(out)
    }

    /// The same curve cut at a lower order.
    pub fn truncated(&self, order: usize) -> TruncatedCurve {
        let k = order.min(self.order());
        TruncatedCurve {
            base: self.base.clone(),
            rho: self.rho[..k].to_vec(),
            theta: self.theta[..k].to_vec(),
            phi: self.phi[..k].to_vec(),
        }
    }

    fn phi_matrices(&self, up_to: usize) -> Vec<Matrix> {
        (0..=up_to)
            .map(|i| self.phi_coeff(i).to_matrix().expect("arity-1 coefficient"))
            .collect()
    }
}

/// The three constraint defects in one `t`-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderDefects {
    pub order: usize,
    pub jacobi_rho: SkewMap,
    pub jacobi_theta: SkewMap,
    pub fiber: SkewMap,
}

impl OrderDefects {
    pub fn is_zero(&self) -> bool {
        self.jacobi_rho.is_zero() && self.jacobi_theta.is_zero() && self.fiber.is_zero()
    }

    /// The defects as a degree-2 cochain `(∧³U→U, ∧³V→V, ∧²U→V)`.
    pub fn as_cochain(&self) -> Cochain {
        Cochain::new(
            2,
            self.jacobi_rho.clone(),
            self.jacobi_theta.clone(),
            Some(self.fiber.clone()),
        )
        .expect("defects have degree-2 cochain shape")
    }
}

/// Sum of `coefficient · θ_i(L a, R b)` over the given terms, as an
/// alternating map. Only meaningful when the whole sum is alternating.
fn bilinear_sum(
    u_dim: usize,
    v_dim: usize,
    terms: &[(Rational, &SkewMap, &Matrix, &Matrix)],
) -> SkewMap {
    SkewMap::from_fn(2, u_dim, v_dim, |t| {
        let mut out = zero_vec(v_dim);
        for (coeff, theta, left, right) in terms {
            let x = left.column(t[0]);
            let y = right.column(t[1]);
            add_assign_scaled(&mut out, &theta.eval(&[&x, &y]), coeff);
        }
        out
    })
}

fn order_defects(c: &TruncatedCurve, n: usize) -> OrderDefects {
    let (m, v) = (c.base.u_dim(), c.base.v_dim());
    let mut jacobi_rho = SkewMap::zero(3, m, m);
    let mut jacobi_theta = SkewMap::zero(3, v, v);
    for i in 0..=n {
        jacobi_rho = &jacobi_rho + &cyclic_composite(&c.rho_coeff(i), &c.rho_coeff(n - i));
        jacobi_theta = &jacobi_theta + &cyclic_composite(&c.theta_coeff(i), &c.theta_coeff(n - i));
    }

    let phis = c.phi_matrices(n);
    let mut fiber = SkewMap::zero(2, m, v);
    for (i, phi_i) in phis.iter().enumerate() {
        let composed = c
            .rho_coeff(n - i)
            .compose_left(phi_i)
            .expect("shapes agree");
        fiber = &fiber + &composed;
    }
    let thetas: Vec<SkewMap> = (0..=n).map(|i| c.theta_coeff(i)).collect();
    let mut terms = Vec::new();
    for i in 0..=n {
        for j in 0..=n - i {
            terms.push((-Rational::one(), &thetas[i], &phis[j], &phis[n - i - j]));
        }
    }
    fiber = &fiber + &bilinear_sum(m, v, &terms);
    OrderDefects {
        order: n,
        jacobi_rho,
        jacobi_theta,
        fiber,
    }
}

/// Defects of the Jacobi identities for `ρ_t`, `θ_t` and of the fiber
/// constraint, in each `t`-degree `1..=N`.
pub fn curve_defects(c: &TruncatedCurve) -> Vec<OrderDefects> {
    (1..=c.order()).map(|n| order_defects(c, n)).collect()
}

pub fn is_verified(c: &TruncatedCurve) -> bool {
    curve_defects(c).iter().all(OrderDefects::is_zero)
}

/// `(ρ₁, θ₁, Φ₁)`. When the order-1 defects vanish this is a cocycle for the
/// geometric sign convention.
pub fn first_order(c: &TruncatedCurve) -> Result<Cochain> {
    if c.order() == 0 {
        return Err(Error::Precondition("curve has no first-order term".into()));
    }
    Ok(c.coefficient_cochain(1))
}

/// The orbit of `t` under `(id + sA, id + sB)` expanded to order `N` in `s`,
/// with inverses from the Neumann series `(id + sA)⁻¹ = Σ (−A)^k s^k`.
pub fn trivial_deformation(
    t: &Triple,
    a: &LinearMap,
    b: &LinearMap,
    order: usize,
) -> Result<TruncatedCurve> {
    let (m, n) = (t.u_dim(), t.v_dim());
    if a.source_dim() != m || a.target_dim() != m || b.source_dim() != n || b.target_dim() != n {
        return Err(Error::DimensionMismatch(
            "A must act on U and B on V".into(),
        ));
    }
    let neumann = |x: &Matrix, dim: usize| -> Vec<Matrix> {
        let neg = x.scale(&-Rational::one());
        let mut powers = vec![Matrix::identity(dim)];
        for k in 1..=order {
            powers.push(&powers[k - 1] * &neg);
        }
        powers
    };
    let inv_a = neumann(a.matrix(), m);
    let inv_b = neumann(b.matrix(), n);

    // ρ(g a, g b) with g = id + sA has s-coefficients ρ, ρ(A·,·)+ρ(·,A·), ρ(A·,A·).
    let pulled = |bracket: &SkewMap, x: &Matrix, dim: usize| -> [SkewMap; 3] {
        let id = Matrix::identity(dim);
        let linear = bilinear_sum(
            dim,
            dim,
            &[
                (Rational::one(), bracket, x, &id),
                (Rational::one(), bracket, &id, x),
            ],
        );
        [
            bracket.clone(),
            linear,
            bracket.pull_back(x).expect("square"),
        ]
    };
    let rho_parts = pulled(t.rho.as_skew(), a.matrix(), m);
    let theta_parts = pulled(t.theta.as_skew(), b.matrix(), n);
    let phi = t.phi.matrix();
    let phi_parts = [phi.clone(), phi * a.matrix()];

    let series = |parts: &[SkewMap], inv: &[Matrix], k: usize| -> SkewMap {
        let mut acc = SkewMap::zero(
            parts[0].arity(),
            parts[0].source_dim(),
            parts[0].target_dim(),
        );
        for (l, part) in parts.iter().enumerate().take(k + 1) {
            acc = &acc + &part.compose_left(&inv[k - l]).expect("shapes agree");
        }
        acc
    };
    let phi_parts: Vec<SkewMap> = phi_parts.iter().map(SkewMap::from_matrix).collect();
    let mut rho = Vec::with_capacity(order);
    let mut theta = Vec::with_capacity(order);
    let mut phis = Vec::with_capacity(order);
    for k in 1..=order {
        rho.push(series(&rho_parts, &inv_a, k));
        theta.push(series(&theta_parts, &inv_b, k));
        phis.push(series(&phi_parts, &inv_b, k));
    }
    TruncatedCurve::new(t.clone(), rho, theta, phis)
}

/// One `t`-degree of [`deformation_identity_report`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityOrder {
    pub order: usize,
    /// Third component of `Δ¹(C^n)` with the `paper` sign `(−1)^p`.
    pub lhs_paper: SkewMap,
    /// Third component of `Δ¹(C^n)` with the geometric sign `(−1)^{p+1}`.
    pub lhs_geometric: SkewMap,
    /// Order-`n` coefficient of
    /// `−Φ̃(ρ̃(a,b)) + θ_t(Φ̃a, Φ̃b) + θ̃(Φ_t a, Φ̃b) + θ̃(Φ̃a, Φ_t b)`.
    pub rhs_phi_t: SkewMap,
    /// The same expression with the base `Φ` in place of `Φ_t` in the last
    /// two terms.
    pub rhs_base_phi: SkewMap,
    /// `Σ_{i=1}^{n−1} (−Φ_i ρ_{n−i} + θ(Φ_i, Φ_{n−i}) + Σ_{j=0}^{n−i} θ_i(Φ_j, Φ_{n−i−j}))`
    /// with `Φ_0 = Φ`.
    pub double_sum: SkewMap,
    /// Independent expansion: minus the lower-order part of the order-`n`
    /// fiber defect, i.e. what `lhs_geometric` must equal on a curve in the
    /// bundle.
    pub expansion: SkewMap,
}

impl IdentityOrder {
    pub fn agreements(&self) -> IdentityAgreements {
        IdentityAgreements {
            geometric_lhs_eq_double_sum: self.lhs_geometric == self.double_sum,
            geometric_lhs_eq_rhs_phi_t: self.lhs_geometric == self.rhs_phi_t,
            geometric_lhs_eq_rhs_base_phi: self.lhs_geometric == self.rhs_base_phi,
            paper_lhs_eq_double_sum: self.lhs_paper == self.double_sum,
            paper_lhs_eq_rhs_phi_t: self.lhs_paper == self.rhs_phi_t,
            double_sum_eq_expansion: self.double_sum == self.expansion,
            rhs_phi_t_eq_double_sum: self.rhs_phi_t == self.double_sum,
            rhs_base_phi_eq_double_sum: self.rhs_base_phi == self.double_sum,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct IdentityAgreements {
    pub geometric_lhs_eq_double_sum: bool,
    pub geometric_lhs_eq_rhs_phi_t: bool,
    pub geometric_lhs_eq_rhs_base_phi: bool,
    pub paper_lhs_eq_double_sum: bool,
    pub paper_lhs_eq_rhs_phi_t: bool,
    pub double_sum_eq_expansion: bool,
    pub rhs_phi_t_eq_double_sum: bool,
    pub rhs_base_phi_eq_double_sum: bool,
}

impl IdentityAgreements {
    /// `L = R = P` with the geometric sign, the base-`Φ` reading of the right
    /// hand side and the double sum over `j = 0..=n−i`.
    pub fn pinned_reading_holds(&self) -> bool {
        self.geometric_lhs_eq_double_sum
            && self.geometric_lhs_eq_rhs_base_phi
            && self.rhs_base_phi_eq_double_sum
    }
}

/// Compares, order by order, the linear part of the fiber constraint with
/// the closed-form right-hand sides built from the tails
/// `ρ̃ = ρ_t − ρ`, `θ̃ = θ_t − θ`, `Φ̃ = Φ_t − Φ`.
pub fn deformation_identity_report(c: &TruncatedCurve) -> Result<Vec<IdentityOrder>> {
    let (m, v) = (c.base.u_dim(), c.base.v_dim());
    let mut out = Vec::with_capacity(c.order());
    for n in 1..=c.order() {
        let cn = c.coefficient_cochain(n);
        let lhs_paper = big_delta(&c.base, &cn, SignConvention::Paper)?
            .x3
            .expect("degree 2");
        let lhs_geometric = big_delta(&c.base, &cn, SignConvention::Geometric)?
            .x3
            .expect("degree 2");

        let phis = c.phi_matrices(n);
        let rhos: Vec<SkewMap> = (0..=n).map(|i| c.rho_coeff(i)).collect();
        let thetas: Vec<SkewMap> = (0..=n).map(|i| c.theta_coeff(i)).collect();
        let one = Rational::one();

        // −Φ̃(ρ̃(a,b)) at order n
        let mut tail_composite = SkewMap::zero(2, m, v);
        for i in 1..n {
            tail_composite = &tail_composite - &rhos[n - i].compose_left(&phis[i])?;
        }

        // Σ_{i ∈ I, j ∈ J, k ∈ K, i+j+k = n} θ_i(Φ_j a, Φ_k b); ranges are
        // inclusive lower bounds with an optional "base only" cap.
        let triple_sum = |i_min: usize, j: (usize, usize), k: (usize, usize)| -> SkewMap {
            let mut terms = Vec::new();
            for (i, theta_i) in thetas.iter().enumerate().skip(i_min) {
                for jj in j.0..=j.1.min(n - i) {
                    let kk = n - i - jj;
                    if kk >= k.0 && kk <= k.1 {
                        terms.push((one.clone(), theta_i, &phis[jj], &phis[kk]));
                    }
                }
            }
            bilinear_sum(m, v, &terms)
        };
        let full = (0, n);
        let tail = (1, n);
        let base = (0, 0);

        let shared = triple_sum(0, tail, tail);
        let rhs_phi_t = &(&(&tail_composite + &shared) + &triple_sum(1, full, tail))
            + &triple_sum(1, tail, full);
        let rhs_base_phi = &(&(&tail_composite + &shared) + &triple_sum(1, base, tail))
            + &triple_sum(1, tail, base);

        let mut double_sum = SkewMap::zero(2, m, v);
        for i in 1..n {
            double_sum = &double_sum - &rhos[n - i].compose_left(&phis[i])?;
            let mut terms = vec![(one.clone(), &thetas[0], &phis[i], &phis[n - i])];
            for j in 0..=n - i {
                terms.push((one.clone(), &thetas[i], &phis[j], &phis[n - i - j]));
            }
            double_sum = &double_sum + &bilinear_sum(m, v, &terms);
        }

        let lower = TruncatedCurve {
            base: c.base.clone(),
            rho: c.rho[..n - 1].to_vec(),
            theta: c.theta[..n - 1].to_vec(),
            phi: c.phi[..n - 1].to_vec(),
        };
        let expansion = -&order_defects(&lower, n).fiber;

        out.push(IdentityOrder {
            order: n,
            lhs_paper,
            lhs_geometric,
            rhs_phi_t,
            rhs_base_phi,
            double_sum,
            expansion,
        });
    }
    Ok(out)
}

/// Outcome of one extension step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub order: usize,
    pub solvable: bool,
    /// Particular solution `(ρ_n, θ_n, Φ_n)` with free coordinates set to zero.
    pub solution: Option<Cochain>,
    /// The input curve extended by `solution`.
    pub extended: Option<TruncatedCurve>,
    /// The lower-order terms `K_n` of the order-`n` constraints, reported
    /// when `Δ¹(C^n) = −K_n` has no solution.
    pub obstruction: Option<Cochain>,
    /// Whether the obstruction is a geometric-convention `Δ²` cocycle.
    pub obstruction_is_cocycle: Option<bool>,
    /// Kernel of the geometric `Δ¹`; any combination may be added to the
    /// solution.
    pub freedom: Vec<Cochain>,
}

/// Solves for the next order of a curve that lies in the bundle through its
/// current order.
pub fn extend_deformation(c: &TruncatedCurve) -> Result<ObstructionReport> {
    if let Some(bad) = curve_defects(c).into_iter().find(|d| !d.is_zero()) {
        return Err(Error::Precondition(format!(
            "curve fails its constraints at order {}",
            bad.order
        )));
    }
    let n = c.order() + 1;
    let (m, v) = (c.base.u_dim(), c.base.v_dim());
    let known = order_defects(c, n).as_cochain();
    let matrix = delta_matrix(&c.base, 1, SignConvention::Geometric)?;
    let rhs: Vec<Rational> = flatten(&known).iter().map(|x| -x).collect();
    match matrix.solve_affine(&rhs) {
        Some(sol) => {
            let solution = unflatten(1, m, v, &sol.particular)?;
            let freedom = sol
                .kernel
                .iter()
                .map(|k| unflatten(1, m, v, k))
                .collect::<Result<Vec<_>>>()?;
            let extended = c.extended(&solution)?;
            Ok(ObstructionReport {
                order: n,
                solvable: true,
                solution: Some(solution),
                extended: Some(extended),
                obstruction: None,
                obstruction_is_cocycle: None,
                freedom,
            })
        }
        None => {
            let is_cocycle = is_cocycle(&c.base, &known, SignConvention::Geometric)?;
            let freedom = matrix
                .nullspace()
                .iter()
                .map(|k| unflatten(1, m, v, k))
                .collect::<Result<Vec<_>>>()?;
            Ok(ObstructionReport {
                order: n,
                solvable: false,
                solution: None,
                extended: None,
                obstruction: Some(known),
                obstruction_is_cocycle: Some(is_cocycle),
                freedom,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::cohomology::{cohomology, is_coboundary};
    use crate::linalg::int;

    /// β(x, y) = z on Q³.
    fn beta() -> SkewMap {
        SkewMap::from_terms(2, 3, 3, [(vec![0, 1], vec![int(0), int(0), int(1)])]).unwrap()
    }

    fn beta_curve(order: usize) -> TruncatedCurve {
        let base = catalog::identity_triple(&catalog::abelian(3));
        let mut c = TruncatedCurve::constant(base, order);
        if order >= 1 {
            c.rho[0] = beta();
            c.theta[0] = beta();
        }
        c
    }

    #[test]
    fn constant_curve_has_no_defects() {
        for (_, t) in catalog::fixture_triples() {
            let c = TruncatedCurve::constant(t, 3);
            assert!(is_verified(&c));
            assert!(first_order(&c).unwrap().is_zero());
            for row in deformation_identity_report(&c).unwrap() {
                assert!(
                    row.lhs_paper.is_zero() && row.rhs_phi_t.is_zero() && row.double_sum.is_zero()
                );
            }
        }
    }

    #[test]
    fn nilpotent_curve_lies_in_bundle() {
        let c = beta_curve(4);
        assert!(is_verified(&c));
        let f = first_order(&c).unwrap();
        assert_eq!(f.x1, beta());
        assert_eq!(f.x2, beta());
        assert!(f.x3.as_ref().unwrap().is_zero());
        for conv in SignConvention::ALL {
            assert!(is_cocycle(c.base(), &f, conv).unwrap());
        }
    }

    #[test]
    fn mismatched_first_order_leaves_fiber_defect() {
        let base = catalog::identity_triple(&catalog::abelian(2));
        let mut c = TruncatedCurve::constant(base, 1);
        let b = SkewMap::from_coords(2, 2, 2, vec![int(1), int(-2)]).unwrap();
        c.rho[0] = b.clone();
        let d = &curve_defects(&c)[0];
        assert!(d.jacobi_rho.is_zero() && d.jacobi_theta.is_zero());
        assert_eq!(d.fiber, b);
    }

    #[test]
    fn trivial_deformation_on_abelian_identity() {
        let base = catalog::identity_triple(&catalog::abelian(2));
        let a = LinearMap::new(Matrix::from_i64(&[&[1, 2], &[0, 1]]));
        let b = LinearMap::new(Matrix::from_i64(&[&[0, 1], &[3, -1]]));
        let c = trivial_deformation(&base, &a, &b, 4).unwrap();
        assert!(c
            .rho_coeffs()
            .iter()
            .chain(c.theta_coeffs())
            .all(SkewMap::is_zero));
        assert_eq!(
            c.phi_coeff(1).to_matrix().unwrap(),
            a.matrix().sub(b.matrix())
        );
        // (id + sB)⁻¹(id + sA) = Σ (−B)^k (id + sA) s^k
        let neg_b = b.matrix().scale(&int(-1));
        let expected_2 = (&neg_b * &neg_b).add(&(&neg_b * a.matrix()));
        assert_eq!(c.phi_coeff(2).to_matrix().unwrap(), expected_2);
        assert!(is_verified(&c));

        let zero =
            trivial_deformation(&base, &LinearMap::zero(2, 2), &LinearMap::zero(2, 2), 3).unwrap();
        assert_eq!(zero, TruncatedCurve::constant(base, 3));
    }

    #[test]
    fn orbit_tangent_on_sl2_is_a_coboundary() {
        let sl2 = catalog::sl2();
        let base = catalog::identity_triple(&sl2);
        let ad_h = LinearMap::new(sl2.ad(&crate::linalg::unit_vec(3, 0)));
        let c = trivial_deformation(&base, &ad_h, &ad_h, 3).unwrap();
        assert!(is_verified(&c));
        let f = first_order(&c).unwrap();
        assert!(is_cocycle(&base, &f, SignConvention::Geometric).unwrap());
        let w = is_coboundary(&base, &f, SignConvention::Geometric)
            .unwrap()
            .unwrap();
        assert_eq!(big_delta(&base, &w, SignConvention::Geometric).unwrap(), f);
    }

    #[test]
    fn extending_constant_curve() {
        let base = catalog::identity_triple(&catalog::aff1());
        let z1 = cohomology(&base, 1, SignConvention::Geometric)
            .unwrap()
            .dims
            .cocycles;
        for order in 0..3 {
            let report =
                extend_deformation(&TruncatedCurve::constant(base.clone(), order)).unwrap();
            assert!(report.solvable);
            assert_eq!(report.order, order + 1);
            assert!(report.solution.unwrap().is_zero());
            assert_eq!(report.freedom.len(), z1);
        }
    }

    #[test]
    fn extending_nilpotent_curve() {
        let report = extend_deformation(&beta_curve(1)).unwrap();
        assert!(report.solvable);
        assert!(report.solution.unwrap().is_zero());
        assert!(is_verified(&report.extended.unwrap()));
    }

    #[test]
    fn non_lie_first_order_is_obstructed() {
        // ρ₁ = θ₁ = [x,y]=z, [y,z]=x, [x,z]=x on (abelian₃, abelian₃, id)
        let base = catalog::identity_triple(&catalog::abelian(3));
        let bad = SkewMap::from_terms(
            2,
            3,
            3,
            [
                (vec![0, 1], vec![int(0), int(0), int(1)]),
                (vec![0, 2], vec![int(1), int(0), int(0)]),
                (vec![1, 2], vec![int(1), int(0), int(0)]),
            ],
        )
        .unwrap();
        let c = TruncatedCurve::new(
            base,
            vec![bad.clone()],
            vec![bad],
            vec![SkewMap::zero(1, 3, 3)],
        )
        .unwrap();
        assert!(is_verified(&c));
        let report = extend_deformation(&c).unwrap();
        assert!(!report.solvable);
        let obstruction = report.obstruction.unwrap();
        assert!(!obstruction.is_zero());
        let m = delta_matrix(c.base(), 1, SignConvention::Geometric).unwrap();
        let b: Vec<Rational> = flatten(&obstruction).iter().map(|x| -x).collect();
        let aug = m.hconcat(&Matrix::from_columns(m.rows(), &[b]));
        assert!(m.rank() < aug.rank());
    }

    #[test]
    fn extension_rejects_unverified_curves() {
        let base = catalog::identity_triple(&catalog::abelian(2));
        let mut c = TruncatedCurve::constant(base, 1);
        c.rho[0] = SkewMap::from_coords(2, 2, 2, vec![int(1), int(0)]).unwrap();
        assert!(matches!(
            extend_deformation(&c),
            Err(Error::Precondition(_))
        ));
    }
}
