//! Hom-Lie superalgebras given by structure constants.
//!
//! An algebra is a graded basis, a degree-0 bracket tensor `c_ij^k` and an
//! even twisting map `alpha`. Construction from a description document
//! mirrors each listed bracket by skew-supersymmetry and then validates the
//! axioms on every basis pair and triple; nothing loaded is trusted.

use std::collections::{BTreeMap, HashSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grading::{apply_sign, GradedBasis, GradedBilinearMap, GradedLinearMap, Parity};
use crate::linalg::{
    axpy, format_rational, nullspace_basis, parse_rational, sub_vectors, unit_vector, zero_vector,
    Matrix, Rational, Subspace, Vector,
};
use crate::report::Witness;

/// JSON description of an algebra.
///
/// `alpha[j][k]` is the coefficient of basis element `k` in `alpha(e_j)`
/// (one inner list per column, basis order even-then-odd).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDescription {
    pub name: String,
    #[serde(default)]
    pub even: Vec<String>,
    #[serde(default)]
    pub odd: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub value: BTreeMap<String, String>,
}

impl AlgebraDescription {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Input(format!("bad algebra description: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("description serializes")
    }
}

/// Outcome of checking the axioms on all basis tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub grading_ok: bool,
    pub skew_ok: bool,
    pub jacobi_ok: bool,
    pub multiplicative: bool,
    pub alpha_invertible: bool,
    pub failures: Vec<Witness>,
}

impl ValidationReport {
    /// Grading, skew-supersymmetry and the twisted Jacobi identity all hold.
    pub fn is_valid(&self) -> bool {
        self.grading_ok && self.skew_ok && self.jacobi_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomLieSuperalgebra {
    name: String,
    basis: GradedBasis,
    bracket: GradedBilinearMap,
    alpha: GradedLinearMap,
}

/// `H / Z(H)` together with the coordinate projection `H -> H/Z(H)`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: HomLieSuperalgebra,
    /// `m x n` matrix of the projection.
    pub projection: Matrix,
    /// Indices of the basis elements of `H` whose images form the quotient basis.
    pub complement: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, v: &[Rational]) -> Vector {
        self.projection.apply(v)
    }
}

impl HomLieSuperalgebra {
    /// Assembles an algebra without checking any axiom.
    pub fn from_parts_unchecked(
        name: impl Into<String>,
        basis: GradedBasis,
        bracket: GradedBilinearMap,
        alpha: GradedLinearMap,
    ) -> Self {
        HomLieSuperalgebra {
            name: name.into(),
            basis,
            bracket,
            alpha,
        }
    }

    /// Assembles an algebra and rejects it unless grading, skew-supersymmetry
    /// and the twisted Jacobi identity hold.
    pub fn from_parts(
        name: impl Into<String>,
        basis: GradedBasis,
        bracket: GradedBilinearMap,
        alpha: GradedLinearMap,
    ) -> Result<Self> {
        let h = Self::from_parts_unchecked(name, basis, bracket, alpha);
        h.ensure_valid()?;
        Ok(h)
    }

    /// Parses a description into coordinates; duplicate or unknown entries are
    /// input errors, axioms are not checked.
    pub fn from_description_unchecked(desc: &AlgebraDescription) -> Result<Self> {
        let basis = GradedBasis::new(desc.even.clone(), desc.odd.clone())?;
        let n = basis.dim();
        if n == 0 {
            return Err(Error::Input(format!(
                "algebra {:?} has an empty basis",
                desc.name
            )));
        }
        let index = |label: &str| {
            basis
                .index_of(label)
                .ok_or_else(|| Error::Input(format!("unknown basis label {label:?}")))
        };

        let alpha = match &desc.alpha {
            None => GradedLinearMap::identity(n),
            Some(cols) => {
                if cols.len() != n || cols.iter().any(|c| c.len() != n) {
                    return Err(Error::Input(format!("alpha must be a {n}x{n} grid")));
                }
                let mut m = Matrix::zeros(n, n);
                for (j, col) in cols.iter().enumerate() {
                    for (k, s) in col.iter().enumerate() {
                        m[(k, j)] = parse_rational(s)?;
                    }
                }
                GradedLinearMap::new_unchecked(Parity::Even, m)
            }
        };

        let mut bracket = GradedBilinearMap::zero(n, Parity::Even);
        let mut seen = HashSet::new();
        for entry in &desc.brackets {
            let i = index(&entry.left)?;
            let j = index(&entry.right)?;
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::Input(format!(
                    "bracket [{}, {}] is listed more than once",
                    entry.left, entry.right
                )));
            }
            let mirror = -(basis.parity(i) * basis.parity(j)).sign();
            for (label, value) in &entry.value {
                let k = index(label)?;
                let c = parse_rational(value)?;
                if i != j {
                    *bracket.entry_mut(j, i, k) = &mirror * &c;
                }
                *bracket.entry_mut(i, j, k) = c;
            }
        }

        Ok(HomLieSuperalgebra {
            name: desc.name.clone(),
            basis,
            bracket,
            alpha,
        })
    }

    /// Parses and validates; the returned algebra satisfies every axiom.
    pub fn load(desc: &AlgebraDescription) -> Result<Self> {
        let h = Self::from_description_unchecked(desc)?;
        h.ensure_valid()?;
        Ok(h)
    }

    pub fn load_json(text: &str) -> Result<Self> {
        Self::load(&AlgebraDescription::from_json(text)?)
    }

    fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            return Ok(());
        }
        let first = |kind: &str| report.failures.iter().find(|w| w.kind.starts_with(kind));
        if !report.grading_ok {
            let w = first("grading")
                .or_else(|| first("alpha_grading"))
                .expect("witness");
            return Err(Error::Grading(format!(
                "{} entry at {} is nonzero",
                w.kind,
                self.tuple_labels(&w.tuple)
            )));
        }
        let kind = if report.skew_ok { "jacobi" } else { "skew" };
        let w = first(kind).expect("witness");
        Err(Error::Validation {
            check: kind.to_string(),
            witness: self.tuple_labels(&w.tuple),
        })
    }

    pub fn to_description(&self) -> AlgebraDescription {
        let n = self.dim();
        let labels = self.basis.labels();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i..n {
                let v = self.bracket.value(i, j);
                let value: BTreeMap<String, String> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (labels[k].clone(), format_rational(c)))
                    .collect();
                if !value.is_empty() {
                    brackets.push(BracketEntry {
                        left: labels[i].clone(),
                        right: labels[j].clone(),
                        value,
                    });
                }
            }
        }
        let alpha = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| format_rational(&self.alpha.matrix()[(k, j)]))
                    .collect()
            })
            .collect();
        AlgebraDescription {
            name: self.name.clone(),
            even: labels[..self.basis.even_dim()].to_vec(),
            odd: labels[self.basis.even_dim()..].to_vec(),
            alpha: Some(alpha),
            brackets,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis.parity(i)
    }

    pub fn bracket_map(&self) -> &GradedBilinearMap {
        &self.bracket
    }

    pub fn alpha(&self) -> &GradedLinearMap {
        &self.alpha
    }

    pub fn tuple_labels(&self, tuple: &[usize]) -> String {
        let parts: Vec<&str> = tuple
            .iter()
            .map(|&i| self.basis.labels().get(i).map_or("?", String::as_str))
            .collect();
        format!("({})", parts.join(", "))
    }

    /// `[x, y]` for coordinate vectors.
    pub fn bracket_eval(&self, x: &[Rational], y: &[Rational]) -> Result<Vector> {
        let n = self.dim();
        if x.len() != n || y.len() != n {
            return Err(Error::Input(format!(
                "bracket arguments of length {} and {} in dimension {n}",
                x.len(),
                y.len()
            )));
        }
        Ok(self.bracket(x, y))
    }

    pub(crate) fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vector {
        self.bracket.apply(x, y)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        self.bracket.value(i, j)
    }

    /// `[e_i, y]`
    pub(crate) fn bracket_left_basis(&self, i: usize, y: &[Rational]) -> Vector {
        let mut out = zero_vector(self.dim());
        for (j, c) in y.iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut out, c, self.bracket.value(i, j));
            }
        }
        out
    }

    /// `[x, e_j]`
    pub(crate) fn bracket_right_basis(&self, x: &[Rational], j: usize) -> Vector {
        let mut out = zero_vector(self.dim());
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut out, c, self.bracket.value(i, j));
            }
        }
        out
    }

    pub(crate) fn alpha_apply(&self, v: &[Rational]) -> Vector {
        self.alpha.apply(v)
    }

    pub(crate) fn alpha_basis(&self, j: usize) -> Vector {
        self.alpha.image_of_basis(j)
    }

    pub fn alpha_is_invertible(&self) -> bool {
        self.alpha.matrix().rank() == self.dim()
    }

    pub fn alpha_inverse(&self) -> Result<GradedLinearMap> {
        self.alpha
            .inverse()
            .ok_or_else(|| Error::Precondition(format!("alpha of {} is not invertible", self.name)))
    }

    pub(crate) fn require_invertible_alpha(&self) -> Result<()> {
        if self.alpha_is_invertible() {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "alpha of {} is not invertible",
                self.name
            )))
        }
    }

    /// Residual of the twisted super-Jacobi identity on basis elements:
    /// `(-1)^{|x||z|}[a(x),[y,z]] + (-1)^{|y||x|}[a(y),[z,x]] + (-1)^{|z||y|}[a(z),[x,y]]`.
    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> Vector {
        let p = |t| self.parity(t);
        let mut out = zero_vector(self.dim());
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            let inner = self.bracket.value(b, c).to_vec();
            let mut term = self.bracket(&self.alpha_basis(a), &inner);
            apply_sign(p(a) * p(c), &mut term);
            axpy(&mut out, &Rational::from_integer(1.into()), &term);
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut failures = Vec::new();

        for (i, j, k) in self.bracket.grading_violations(&self.basis) {
            failures.push(Witness::new(
                "grading",
                vec![i, j, k],
                vec![self.bracket.entry(i, j, k).clone()],
            ));
        }
        for (k, j) in self.alpha.grading_violations(&self.basis) {
            failures.push(Witness::new(
                "alpha_grading",
                vec![k, j],
                vec![self.alpha.matrix()[(k, j)].clone()],
            ));
        }
        let grading_ok = failures.is_empty() && self.alpha.degree() == Parity::Even;

        let mut skew_ok = true;
        for i in 0..n {
            for j in i..n {
                let sign = (self.parity(i) * self.parity(j)).sign();
                let r: Vector = self
                    .bracket
                    .value(i, j)
                    .iter()
                    .zip(self.bracket.value(j, i))
                    .map(|(a, b)| a + &sign * b)
                    .collect();
                if r.iter().any(|x| !x.is_zero()) {
                    skew_ok = false;
                    failures.push(Witness::new("skew", vec![i, j], r));
                }
            }
        }

        let mut jacobi_ok = true;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let r = self.jacobi_residual(i, j, k);
                    if r.iter().any(|x| !x.is_zero()) {
                        jacobi_ok = false;
                        failures.push(Witness::new("jacobi", vec![i, j, k], r));
                    }
                }
            }
        }

        let mut multiplicative = true;
        for i in 0..n {
            for j in 0..n {
                let lhs = self.alpha_apply(self.bracket.value(i, j));
                let rhs = self.bracket(&self.alpha_basis(i), &self.alpha_basis(j));
                let r = sub_vectors(&lhs, &rhs);
                if r.iter().any(|x| !x.is_zero()) {
                    multiplicative = false;
                    failures.push(Witness::new("multiplicative", vec![i, j], r));
                }
            }
        }

        ValidationReport {
            grading_ok,
            skew_ok,
            jacobi_ok,
            multiplicative,
            alpha_invertible: self.alpha_is_invertible(),
            failures,
        }
    }

    pub fn is_multiplicative(&self) -> bool {
        self.validate().multiplicative
    }

    /// `H' = [H, H]`
    pub fn derived_subalgebra(&self) -> Subspace {
        let n = self.dim();
        let mut vs = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                vs.push(self.bracket.value(i, j).to_vec());
            }
        }
        Subspace::span(n, &vs).expect("bracket values have length dim")
    }

    /// `Z_H(X) = { v : [x, v] = 0 for all x in X }`
    pub fn centralizer(&self, x: &Subspace) -> Result<Subspace> {
        let n = self.dim();
        if x.ambient_dim() != n {
            return Err(Error::Input(format!(
                "subspace of ambient dimension {} in an algebra of dimension {n}",
                x.ambient_dim()
            )));
        }
        let mut rows = Vec::new();
        for b in x.basis() {
            let ad = Matrix::from_columns(
                n,
                &(0..n)
                    .map(|j| self.bracket_right_basis(b, j))
                    .collect::<Vec<_>>(),
            )?;
            rows.extend(ad.to_rows());
        }
        Ok(nullspace_basis(&Matrix::from_rows(n, rows)?))
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&Subspace::full(self.dim()))
            .expect("ambient matches")
    }

    /// `Z_H(H')`
    pub fn derived_centralizer(&self) -> Subspace {
        self.centralizer(&self.derived_subalgebra())
            .expect("ambient matches")
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subalgebra().is_full()
    }

    pub fn is_centerless(&self) -> bool {
        self.center().is_zero()
    }

    /// `H / Z(H)` on the complement spanned by the non-pivot basis elements of `Z(H)`.
    pub fn quotient_by_center(&self) -> Result<Quotient> {
        let n = self.dim();
        let z = self.center();
        for b in z.basis() {
            if !z.contains(&self.alpha_apply(b))? {
                return Err(Error::Precondition(format!(
                    "alpha of {} does not preserve the center",
                    self.name
                )));
            }
        }
        let pivots: HashSet<usize> = z.pivots().into_iter().collect();
        let complement: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
        let m = complement.len();
        let project = |v: &[Rational]| -> Vector {
            let r = z.reduce(v);
            complement.iter().map(|&c| r[c].clone()).collect()
        };
        let projection = Matrix::from_columns(
            m,
            &(0..n)
                .map(|j| project(&unit_vector(n, j)))
                .collect::<Vec<_>>(),
        )?;
        let bracket = GradedBilinearMap::from_values(m, Parity::Even, |a, b| {
            project(self.bracket.value(complement[a], complement[b]))
        });
        let alpha_cols: Vec<Vector> = complement
            .iter()
            .map(|&c| project(&self.alpha_basis(c)))
            .collect();
        let alpha =
            GradedLinearMap::new_unchecked(Parity::Even, Matrix::from_columns(m, &alpha_cols)?);
        let algebra = HomLieSuperalgebra {
            name: format!("{}/Z", self.name),
            basis: self.basis.select(&complement),
            bracket,
            alpha,
        };
        if !algebra.validate().is_valid() {
            return Err(Error::TheoremViolation(format!(
                "quotient of {} by its center fails the axioms",
                self.name
            )));
        }
        Ok(Quotient {
            algebra,
            projection,
            complement,
        })
    }

    /// The subalgebra on a graded, bracket-closed, alpha-stable subspace, in the
    /// subspace's RREF basis. Each basis vector keeps the label of its pivot.
    pub fn subalgebra(&self, s: &Subspace) -> Result<HomLieSuperalgebra> {
        let n = self.dim();
        if s.ambient_dim() != n {
            return Err(Error::Input("subspace ambient dimension mismatch".into()));
        }
        let pivots = s.pivots();
        for (b, &p) in s.basis().iter().zip(&pivots) {
            if self.basis.parity_of(b) != Some(self.parity(p)) {
                return Err(Error::Precondition("subspace is not graded".into()));
            }
        }
        let coords = |v: &[Rational], what: &str| {
            s.coordinates(v)
                .ok_or_else(|| Error::Precondition(format!("subspace is not closed under {what}")))
        };
        let m = s.dim();
        let mut tensor = Vec::with_capacity(m * m * m);
        for a in s.basis() {
            for b in s.basis() {
                tensor.extend(coords(&self.bracket(a, b), "the bracket")?);
            }
        }
        let mut alpha_cols = Vec::with_capacity(m);
        for a in s.basis() {
            alpha_cols.push(coords(&self.alpha_apply(a), "alpha")?);
        }
        Ok(HomLieSuperalgebra {
            name: format!("{}'", self.name),
            basis: self.basis.select(&pivots),
            bracket: GradedBilinearMap::from_tensor_unchecked(m, Parity::Even, tensor),
            alpha: GradedLinearMap::new_unchecked(
                Parity::Even,
                Matrix::from_columns(m, &alpha_cols)?,
            ),
        })
    }

    /// `(H, a∘[.,.], a)` for an untwisted algebra and an even automorphism `a`.
    pub fn yau_twist(
        &self,
        a: &GradedLinearMap,
        name: impl Into<String>,
    ) -> Result<HomLieSuperalgebra> {
        let n = self.dim();
        if self.alpha != GradedLinearMap::identity(n) {
            return Err(Error::Precondition(format!(
                "{} already has a nontrivial twisting map",
                self.name
            )));
        }
        if a.dim() != n
            || a.degree() != Parity::Even
            || !a.grading_violations(&self.basis).is_empty()
        {
            return Err(Error::Precondition(
                "twisting map must be even and homogeneous".into(),
            ));
        }
        if a.matrix().rank() != n {
            return Err(Error::Precondition("twisting map is not invertible".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.bracket(&a.image_of_basis(i), &a.image_of_basis(j));
                let rhs = a.apply(self.bracket.value(i, j));
                if lhs != rhs {
                    return Err(Error::Precondition(format!(
                        "twisting map is not an automorphism at {}",
                        self.tuple_labels(&[i, j])
                    )));
                }
            }
        }
        HomLieSuperalgebra::from_parts(name, self.basis.clone(), self.bracket.then(a), a.clone())
    }
}
