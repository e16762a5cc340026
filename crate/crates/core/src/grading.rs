//! Z2-graded bases and homogeneous linear / bilinear maps in coordinates.

use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vector, zero_vector, Matrix, Rational, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub const ALL: [Parity; 2] = [Parity::Even, Parity::Odd];

    pub fn as_u8(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^self`
    pub fn sign(self) -> Rational {
        match self {
            Parity::Even => Rational::one(),
            Parity::Odd => -Rational::one(),
        }
    }
}

impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Product in Z2, used for Koszul exponents `|x||y|`.
impl Mul for Parity {
    type Output = Parity;

    fn mul(self, rhs: Parity) -> Parity {
        if self.is_odd() && rhs.is_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl From<Parity> for u8 {
    fn from(p: Parity) -> u8 {
        p.as_u8()
    }
}

impl TryFrom<u8> for Parity {
    type Error = String;

    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            _ => Err(format!("parity must be 0 or 1, got {v}")),
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// Negates `v` in place when `p` is odd.
pub(crate) fn apply_sign(p: Parity, v: &mut [Rational]) {
    if p.is_odd() {
        for x in v.iter_mut() {
            *x = -x.clone();
        }
    }
}

/// Ordered basis with even elements first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    labels: Vec<String>,
    n_even: usize,
}

impl GradedBasis {
    pub fn new(even: Vec<String>, odd: Vec<String>) -> Result<Self> {
        let n_even = even.len();
        let labels: Vec<String> = even.into_iter().chain(odd).collect();
        for (i, l) in labels.iter().enumerate() {
            if l.trim().is_empty() {
                return Err(Error::Input("empty basis label".into()));
            }
            if labels[..i].contains(l) {
                return Err(Error::Input(format!("duplicate basis label {l:?}")));
            }
        }
        Ok(GradedBasis { labels, n_even })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn even_dim(&self) -> usize {
        self.n_even
    }

    pub fn odd_dim(&self) -> usize {
        self.labels.len() - self.n_even
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn parity(&self, i: usize) -> Parity {
        if i < self.n_even {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn parities(&self) -> Vec<Parity> {
        (0..self.dim()).map(|i| self.parity(i)).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Sub-basis on the given indices; `indices` must keep even before odd.
    pub(crate) fn select(&self, indices: &[usize]) -> GradedBasis {
        let even = indices
            .iter()
            .filter(|&&i| i < self.n_even)
            .map(|&i| self.labels[i].clone())
            .collect();
        let odd = indices
            .iter()
            .filter(|&&i| i >= self.n_even)
            .map(|&i| self.labels[i].clone())
            .collect();
        GradedBasis::new(even, odd).expect("sub-basis of a valid basis")
    }

    /// Parity of a vector, `None` for the zero vector or a mixed vector.
    pub fn parity_of(&self, v: &[Rational]) -> Option<Parity> {
        let even = v[..self.n_even].iter().any(|x| !x.is_zero());
        let odd = v[self.n_even..].iter().any(|x| !x.is_zero());
        match (even, odd) {
            (true, false) => Some(Parity::Even),
            (false, true) => Some(Parity::Odd),
            _ => None,
        }
    }
}

/// Square matrix of a homogeneous linear map: column `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLinearMap {
    degree: Parity,
    matrix: Matrix,
}

impl GradedLinearMap {
    pub fn new(basis: &GradedBasis, degree: Parity, matrix: Matrix) -> Result<Self> {
        let map = Self::new_unchecked(degree, matrix);
        if map.dim() != basis.dim() || map.matrix.cols() != basis.dim() {
            return Err(Error::Input(format!(
                "expected a {0}x{0} matrix, got {1}x{2}",
                basis.dim(),
                map.matrix.rows(),
                map.matrix.cols()
            )));
        }
        if let Some((k, j)) = map.grading_violations(basis).first() {
            return Err(Error::Grading(format!(
                "degree-{degree} map sends {} to a multiple of {}",
                basis.label(*j),
                basis.label(*k)
            )));
        }
        Ok(map)
    }

    pub fn new_unchecked(degree: Parity, matrix: Matrix) -> Self {
        GradedLinearMap { degree, matrix }
    }

    pub fn identity(n: usize) -> Self {
        GradedLinearMap::new_unchecked(Parity::Even, Matrix::identity(n))
    }

    pub fn zero(n: usize, degree: Parity) -> Self {
        GradedLinearMap::new_unchecked(degree, Matrix::zeros(n, n))
    }

    /// Diagonal even map.
    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        let m = Matrix::from_fn(n, n, |r, c| {
            if r == c {
                entries[r].clone()
            } else {
                Rational::zero()
            }
        });
        GradedLinearMap::new_unchecked(Parity::Even, m)
    }

    pub fn degree(&self) -> Parity {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        self.matrix.apply(v)
    }

    pub fn image_of_basis(&self, j: usize) -> Vector {
        self.matrix.column(j)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &GradedLinearMap) -> GradedLinearMap {
        GradedLinearMap::new_unchecked(
            self.degree + other.degree,
            self.matrix
                .mul(&other.matrix)
                .expect("square maps of equal size"),
        )
    }

    pub fn scaled(&self, c: &Rational) -> GradedLinearMap {
        GradedLinearMap::new_unchecked(self.degree, self.matrix.scaled(c))
    }

    pub fn inverse(&self) -> Option<GradedLinearMap> {
        self.matrix
            .inverse()
            .map(|m| GradedLinearMap::new_unchecked(self.degree, m))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Entries `(k, j)` that are nonzero although `|e_k| != |e_j| + degree`.
    pub fn grading_violations(&self, basis: &GradedBasis) -> Vec<(usize, usize)> {
        let n = basis.dim().min(self.dim());
        let mut out = Vec::new();
        for j in 0..n {
            for k in 0..n {
                if basis.parity(k) != basis.parity(j) + self.degree
                    && !self.matrix[(k, j)].is_zero()
                {
                    out.push((k, j));
                }
            }
        }
        out
    }

    /// Coordinates `(k, j)` a homogeneous map of this degree may populate.
    pub fn admissible_entries(basis: &GradedBasis, degree: Parity) -> Vec<(usize, usize)> {
        let n = basis.dim();
        let mut out = Vec::new();
        for k in 0..n {
            for j in 0..n {
                if basis.parity(k) == basis.parity(j) + degree {
                    out.push((k, j));
                }
            }
        }
        out
    }
}

/// Coefficient tensor `t[i][j][k]` = coefficient of `e_k` in `phi(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBilinearMap {
    degree: Parity,
    dim: usize,
    tensor: Vec<Rational>,
}

impl GradedBilinearMap {
    pub fn zero(dim: usize, degree: Parity) -> Self {
        GradedBilinearMap {
            degree,
            dim,
            tensor: zero_vector(dim * dim * dim),
        }
    }

    pub fn from_tensor(basis: &GradedBasis, degree: Parity, tensor: Vec<Rational>) -> Result<Self> {
        let n = basis.dim();
        if tensor.len() != n * n * n {
            return Err(Error::Input(format!(
                "tensor of length {} for dimension {n}",
                tensor.len()
            )));
        }
        let map = Self::from_tensor_unchecked(n, degree, tensor);
        if let Some((i, j, k)) = map.grading_violations(basis).first() {
            return Err(Error::Grading(format!(
                "degree-{degree} bilinear map has a {} component on ({}, {})",
                basis.label(*k),
                basis.label(*i),
                basis.label(*j)
            )));
        }
        Ok(map)
    }

    pub fn from_tensor_unchecked(dim: usize, degree: Parity, tensor: Vec<Rational>) -> Self {
        debug_assert_eq!(tensor.len(), dim * dim * dim);
        GradedBilinearMap {
            degree,
            dim,
            tensor,
        }
    }

    /// Builds the map from its values on basis pairs.
    pub fn from_values(
        dim: usize,
        degree: Parity,
        mut value: impl FnMut(usize, usize) -> Vector,
    ) -> Self {
        let mut tensor = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = value(i, j);
                debug_assert_eq!(v.len(), dim);
                tensor.extend(v);
            }
        }
        GradedBilinearMap {
            degree,
            dim,
            tensor,
        }
    }

    pub fn degree(&self) -> Parity {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tensor(&self) -> &[Rational] {
        &self.tensor
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.tensor[(i * self.dim + j) * self.dim + k]
    }

    pub(crate) fn entry_mut(&mut self, i: usize, j: usize, k: usize) -> &mut Rational {
        let n = self.dim;
        &mut self.tensor[(i * n + j) * n + k]
    }

    /// `phi(e_i, e_j)` as a coordinate slice.
    pub fn value(&self, i: usize, j: usize) -> &[Rational] {
        let n = self.dim;
        let start = (i * n + j) * n;
        &self.tensor[start..start + n]
    }

    /// Bilinear extension to arbitrary coordinate vectors.
    pub fn apply(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                axpy(&mut out, &c, self.value(i, j));
            }
        }
        out
    }

    /// Applies the map to `sum t_(ij) e_i (x) e_j`, with `t` indexed by `i * n + j`.
    pub fn apply_tensor(&self, t: &[Rational]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (ij, c) in t.iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut out, c, self.value(ij / self.dim, ij % self.dim));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.tensor)
    }

    pub fn scaled(&self, c: &Rational) -> GradedBilinearMap {
        GradedBilinearMap {
            degree: self.degree,
            dim: self.dim,
            tensor: self.tensor.iter().map(|x| c * x).collect(),
        }
    }

    /// `dim x dim^2` matrix whose column `i * dim + j` is `phi(e_i, e_j)`.
    pub fn flattened(&self) -> Matrix {
        let n = self.dim;
        Matrix::from_fn(n, n * n, |k, ij| self.tensor[ij * n + k].clone())
    }

    /// Post-composition with a linear map.
    pub fn then(&self, map: &GradedLinearMap) -> GradedBilinearMap {
        GradedBilinearMap::from_values(self.dim, self.degree + map.degree(), |i, j| {
            map.apply(self.value(i, j))
        })
    }

    pub fn grading_violations(&self, basis: &GradedBasis) -> Vec<(usize, usize, usize)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !Self::is_admissible(basis, self.degree, i, j, k)
                        && !self.entry(i, j, k).is_zero()
                    {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    pub fn is_admissible(
        basis: &GradedBasis,
        degree: Parity,
        i: usize,
        j: usize,
        k: usize,
    ) -> bool {
        basis.parity(k) == basis.parity(i) + basis.parity(j) + degree
    }

    pub fn admissible_entries(basis: &GradedBasis, degree: Parity) -> Vec<(usize, usize, usize)> {
        let n = basis.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if Self::is_admissible(basis, degree, i, j, k) {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }
}

impl std::ops::Add for &GradedBilinearMap {
    type Output = GradedBilinearMap;

    fn add(self, rhs: &GradedBilinearMap) -> GradedBilinearMap {
        assert_eq!(self.dim, rhs.dim, "bilinear maps of different dimension");
        GradedBilinearMap {
            degree: self.degree,
            dim: self.dim,
            tensor: self
                .tensor
                .iter()
                .zip(&rhs.tensor)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &GradedBilinearMap {
    type Output = GradedBilinearMap;

    fn sub(self, rhs: &GradedBilinearMap) -> GradedBilinearMap {
        assert_eq!(self.dim, rhs.dim, "bilinear maps of different dimension");
        GradedBilinearMap {
            degree: self.degree,
            dim: self.dim,
            tensor: self
                .tensor
                .iter()
                .zip(&rhs.tensor)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}
