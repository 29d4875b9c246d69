//! Alternating multilinear maps between coordinate spaces.
//!
//! A [`SkewMap`] of arity `p` from `Q^n` to `Q^m` is stored by its values on
//! strictly increasing basis tuples `i_1 < … < i_p`, in lexicographic order,
//! each value being a vector of length `m`. Values on any other arguments are
//! obtained by multilinearity and alternation.

use std::ops::{Add, Neg, Sub};

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{add_assign_scaled, is_zero_vec, zero_vec, Matrix, Rational};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All strictly increasing `k`-tuples from `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..n).combinations(k).collect()
}

/// Position of a strictly increasing tuple in the lexicographic order of
/// [`combinations`].
pub fn combination_rank(n: usize, tuple: &[usize]) -> usize {
    let k = tuple.len();
    let mut rank = 0;
    let mut next = 0;
    for (pos, &c) in tuple.iter().enumerate() {
        for skipped in next..c {
            rank += binomial(n - 1 - skipped, k - 1 - pos);
        }
        next = c + 1;
    }
    rank
}

/// Sorts `indices` in place and returns the sign of the sorting permutation,
/// or `None` when an index repeats.
pub fn sort_with_sign(indices: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    for i in 1..indices.len() {
        let mut j = i;
        while j > 0 && indices[j - 1] > indices[j] {
            indices.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if indices.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(negative)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMap {
    arity: usize,
    source_dim: usize,
    target_dim: usize,
    values: Vec<Rational>,
}

impl SkewMap {
    pub fn zero(arity: usize, source_dim: usize, target_dim: usize) -> Self {
        Self {
            arity,
            source_dim,
            target_dim,
            values: zero_vec(binomial(source_dim, arity) * target_dim),
        }
    }

    /// Builds the map from its values on increasing basis tuples. The caller
    /// is responsible for `f` describing an alternating map.
    pub fn from_fn<F>(arity: usize, source_dim: usize, target_dim: usize, mut f: F) -> Self
    where
        F: FnMut(&[usize]) -> Vec<Rational>,
    {
        let mut values = Vec::with_capacity(binomial(source_dim, arity) * target_dim);
        for tuple in (0..source_dim).combinations(arity) {
            let v = f(&tuple);
            assert_eq!(v.len(), target_dim, "value has wrong length");
            values.extend(v);
        }
        Self {
            arity,
            source_dim,
            target_dim,
            values,
        }
    }

    /// Builds the map from a coordinate vector in the canonical order: tuples
    /// lexicographically, target basis innermost.
    pub fn from_coords(
        arity: usize,
        source_dim: usize,
        target_dim: usize,
        coords: Vec<Rational>,
    ) -> Result<Self> {
        let expected = binomial(source_dim, arity) * target_dim;
        if coords.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "expected {expected} coordinates, got {}",
                coords.len()
            )));
        }
        Ok(Self {
            arity,
            source_dim,
            target_dim,
            values: coords,
        })
    }

    /// Builds the map from explicit `(indices, value)` terms. Indices must be
    /// strictly increasing and in range; each tuple may appear at most once.
    pub fn from_terms<I>(
        arity: usize,
        source_dim: usize,
        target_dim: usize,
        terms: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Vec<Rational>)>,
    {
        let mut map = Self::zero(arity, source_dim, target_dim);
        let mut seen = vec![false; map.num_terms()];
        for (indices, value) in terms {
            map.check_tuple(&indices)?;
            if value.len() != target_dim {
                return Err(Error::DimensionMismatch(format!(
                    "value for {indices:?} has length {}, expected {target_dim}",
                    value.len()
                )));
            }
            let r = combination_rank(source_dim, &indices);
            if std::mem::replace(&mut seen[r], true) {
                return Err(Error::InvalidArity(format!("duplicate term {indices:?}")));
            }
            map.values[r * target_dim..(r + 1) * target_dim].clone_from_slice(&value);
        }
        Ok(map)
    }

    fn check_tuple(&self, indices: &[usize]) -> Result<()> {
        if indices.len() != self.arity {
            return Err(Error::InvalidArity(format!(
                "tuple {indices:?} has length {}, expected {}",
                indices.len(),
                self.arity
            )));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArity(format!(
                "tuple {indices:?} is not strictly increasing"
            )));
        }
        if indices.iter().any(|&i| i >= self.source_dim) {
            return Err(Error::DimensionMismatch(format!(
                "tuple {indices:?} out of range for source dimension {}",
                self.source_dim
            )));
        }
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    /// Number of increasing basis tuples, `C(source_dim, arity)`.
    pub fn num_terms(&self) -> usize {
        binomial(self.source_dim, self.arity)
    }

    /// Dimension of the space this map lives in.
    pub fn space_dim(&self) -> usize {
        self.values.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.values
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.values)
    }

    pub fn same_shape(&self, other: &SkewMap) -> bool {
        self.arity == other.arity
            && self.source_dim == other.source_dim
            && self.target_dim == other.target_dim
    }

    /// Value on an increasing tuple.
    pub fn term(&self, tuple: &[usize]) -> &[Rational] {
        let r = combination_rank(self.source_dim, tuple);
        &self.values[r * self.target_dim..(r + 1) * self.target_dim]
    }

    /// Nonzero terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &[Rational])> + '_ {
        let chunk = self.target_dim.max(1);
        (0..self.source_dim)
            .combinations(self.arity)
            .zip(self.values.chunks(chunk).chain(std::iter::repeat(&[][..])))
            .filter(|(_, v)| !is_zero_vec(v))
    }

    /// Value on basis vectors with arbitrary (possibly unsorted or repeated)
    /// indices.
    pub fn eval_basis(&self, indices: &[usize]) -> Vec<Rational> {
        assert_eq!(indices.len(), self.arity, "wrong number of arguments");
        let mut sorted = indices.to_vec();
        match sort_with_sign(&mut sorted) {
            None => zero_vec(self.target_dim),
            Some(false) => self.term(&sorted).to_vec(),
            Some(true) => self.term(&sorted).iter().map(|x| -x).collect(),
        }
    }

    /// Value on arbitrary argument vectors, by multilinear expansion.
    pub fn eval(&self, args: &[&[Rational]]) -> Vec<Rational> {
        assert_eq!(args.len(), self.arity, "wrong number of arguments");
        let mut out = zero_vec(self.target_dim);
        let mut chosen = Vec::with_capacity(self.arity);
        self.eval_rec(args, &mut chosen, Rational::one(), &mut out);
        out
    }

    fn eval_rec(
        &self,
        args: &[&[Rational]],
        chosen: &mut Vec<usize>,
        weight: Rational,
        out: &mut [Rational],
    ) {
        let depth = chosen.len();
        if depth == args.len() {
            let mut sorted = chosen.clone();
            if let Some(negative) = sort_with_sign(&mut sorted) {
                let w = if negative { -weight } else { weight };
                add_assign_scaled(out, self.term(&sorted), &w);
            }
            return;
        }
        let arg = args[depth];
        assert_eq!(arg.len(), self.source_dim, "argument has wrong length");
        for (i, x) in arg.iter().enumerate() {
            if x.is_zero() || chosen.contains(&i) {
                continue;
            }
            chosen.push(i);
            self.eval_rec(args, chosen, &weight * x, out);
            chosen.pop();
        }
    }

    pub fn scale(&self, s: &Rational) -> SkewMap {
        SkewMap {
            values: self.values.iter().map(|x| x * s).collect(),
            ..self.clone()
        }
    }

    /// `L ∘ self` for a linear map `L` on the target space.
    pub fn compose_left(&self, l: &Matrix) -> Result<SkewMap> {
        if l.cols() != self.target_dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose a {}x{} matrix after a map into dimension {}",
                l.rows(),
                l.cols(),
                self.target_dim
            )));
        }
        let chunk = self.target_dim.max(1);
        let mut values = Vec::with_capacity(self.num_terms() * l.rows());
        if self.target_dim == 0 {
            values = zero_vec(self.num_terms() * l.rows());
        } else {
            for v in self.values.chunks(chunk) {
                values.extend(l.mul_vec(v));
            }
        }
        Ok(SkewMap {
            arity: self.arity,
            source_dim: self.source_dim,
            target_dim: l.rows(),
            values,
        })
    }

    /// Pullback along a linear map `A` into the source space:
    /// `(x_1,…,x_p) ↦ self(A x_1, …, A x_p)`.
    pub fn pull_back(&self, a: &Matrix) -> Result<SkewMap> {
        if a.rows() != self.source_dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot pull back a map on dimension {} along a {}x{} matrix",
                self.source_dim,
                a.rows(),
                a.cols()
            )));
        }
        let columns: Vec<Vec<Rational>> = (0..a.cols()).map(|j| a.column(j)).collect();
        Ok(SkewMap::from_fn(
            self.arity,
            a.cols(),
            self.target_dim,
            |tuple| {
                let args: Vec<&[Rational]> = tuple.iter().map(|&i| columns[i].as_slice()).collect();
                self.eval(&args)
            },
        ))
    }

    /// The arity-1 map with matrix `m` (columns are images of basis vectors).
    pub fn from_matrix(m: &Matrix) -> SkewMap {
        SkewMap::from_fn(1, m.cols(), m.rows(), |t| m.column(t[0]))
    }

    /// Matrix of an arity-1 map.
    pub fn to_matrix(&self) -> Result<Matrix> {
        if self.arity != 1 {
            return Err(Error::InvalidArity(format!(
                "only arity-1 maps have a matrix, got arity {}",
                self.arity
            )));
        }
        let cols: Vec<Vec<Rational>> = (0..self.source_dim)
            .map(|j| self.term(&[j]).to_vec())
            .collect();
        Ok(Matrix::from_columns(self.target_dim, &cols))
    }

    fn check_same_shape(&self, other: &SkewMap) {
        assert!(
            self.same_shape(other),
            "shape mismatch: ({}, {}, {}) vs ({}, {}, {})",
            self.arity,
            self.source_dim,
            self.target_dim,
            other.arity,
            other.source_dim,
            other.target_dim
        );
    }
}

impl Add for &SkewMap {
    type Output = SkewMap;

    fn add(self, rhs: &SkewMap) -> SkewMap {
        self.check_same_shape(rhs);
        SkewMap {
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a + b)
                .collect(),
            ..self.clone()
        }
    }
}

impl Sub for &SkewMap {
    type Output = SkewMap;

    fn sub(self, rhs: &SkewMap) -> SkewMap {
        self.check_same_shape(rhs);
        SkewMap {
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a - b)
                .collect(),
            ..self.clone()
        }
    }
}

impl Neg for &SkewMap {
    type Output = SkewMap;

    fn neg(self) -> SkewMap {
        SkewMap {
            values: self.values.iter().map(|x| -x).collect(),
            ..self.clone()
        }
    }
}
