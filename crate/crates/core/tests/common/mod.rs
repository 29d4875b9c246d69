#![allow(dead_code)]

use liemorph::algebra::LinearMap;
use liemorph::cohomology::{cochain_space_dim, unflatten};
use liemorph::linalg::{rat, Matrix, Rational};
use liemorph::{Cochain, SkewMap};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Small rationals with a fair share of zeros, so sparse and dense inputs
/// both show up.
pub fn rational(rng: &mut StdRng) -> Rational {
    if rng.random_bool(0.25) {
        return rat(0, 1);
    }
    rat(rng.random_range(-6..=6), rng.random_range(1..=4))
}

pub fn vector(rng: &mut StdRng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rational(rng)).collect()
}

pub fn skew(rng: &mut StdRng, arity: usize, source: usize, target: usize) -> SkewMap {
    let len = SkewMap::zero(arity, source, target).space_dim();
    SkewMap::from_coords(arity, source, target, vector(rng, len)).unwrap()
}

pub fn cochain(rng: &mut StdRng, degree: usize, u: usize, v: usize) -> Cochain {
    unflatten(degree, u, v, &vector(rng, cochain_space_dim(degree, u, v))).unwrap()
}

pub fn matrix(rng: &mut StdRng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_rows((0..rows).map(|_| vector(rng, cols)).collect()).unwrap()
}

pub fn linear_map(rng: &mut StdRng, source: usize, target: usize) -> LinearMap {
    if source == 0 || target == 0 {
        return LinearMap::zero(source, target);
    }
    LinearMap::new(matrix(rng, target, source))
}

/// Integer entries in `-3..=3`, resampled until invertible.
pub fn invertible(rng: &mut StdRng, n: usize) -> LinearMap {
    loop {
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..n).map(|_| rat(rng.random_range(-3..=3), 1)).collect())
            .collect();
        let m = Matrix::from_rows(rows).unwrap();
        if m.rank() == n {
            return LinearMap::new(m);
        }
    }
}

/// Grows a curve from `base` to `order` by repeated extension, adding a
/// random element of the solution freedom at each step. `None` when an
/// obstruction is hit.
pub fn random_extended_curve(
    rng: &mut StdRng,
    base: &liemorph::Triple,
    order: usize,
) -> Option<liemorph::TruncatedCurve> {
    let mut c = liemorph::TruncatedCurve::constant(base.clone(), 0);
    while c.order() < order {
        let report = liemorph::deformation::extend_deformation(&c).unwrap();
        let mut step = report.solution?;
        for k in &report.freedom {
            step = step.add(&k.scale(&rat(rng.random_range(-2..=2), rng.random_range(1..=2))));
        }
        c = c.extended(&step).unwrap();
    }
    Some(c)
}
