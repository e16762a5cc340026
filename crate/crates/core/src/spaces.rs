//! Solution spaces of the defining linear systems: super-biderivations,
//! centroid elements and linear super-commuting maps.
//!
//! Each family of defining identities is written once as a residual function
//! over basis tuples. The solver assembles its constraint matrix column by
//! column by feeding those residual functions the unit maps of the
//! parity-admissible unknowns; the membership checks feed them a candidate
//! map and report every nonzero residual.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::HomLieSuperalgebra;
use crate::error::{Error, Result};
use crate::grading::{apply_sign, GradedBilinearMap, GradedLinearMap, Parity};
use crate::linalg::{axpy, nullspace_basis, sub_vectors, zero_vector, Matrix, Rational, Vector};
use crate::report::{CheckReport, WitnessSink};

/// Sign in the symmetry condition `phi(x, y) = ±(-1)^{|x||y|} phi(y, x)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetryConvention {
    /// `phi(x, y) = -(-1)^{|x||y|} phi(y, x)`, the same symmetry as the bracket.
    #[default]
    Skew,
    /// `phi(x, y) = +(-1)^{|x||y|} phi(y, x)`.
    Printed,
}

impl SymmetryConvention {
    pub fn other(self) -> Self {
        match self {
            SymmetryConvention::Skew => SymmetryConvention::Printed,
            SymmetryConvention::Printed => SymmetryConvention::Skew,
        }
    }
}

impl fmt::Display for SymmetryConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymmetryConvention::Skew => "skew",
            SymmetryConvention::Printed => "printed",
        })
    }
}

impl FromStr for SymmetryConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "skew" => Ok(SymmetryConvention::Skew),
            "printed" => Ok(SymmetryConvention::Printed),
            _ => Err(Error::Input(format!("unknown symmetry convention {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiderivationSpace {
    pub degree: Parity,
    pub convention: SymmetryConvention,
    pub basis: Vec<GradedBilinearMap>,
    pub constraint_rank: usize,
    pub unknowns: usize,
}

impl BiderivationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentroidSpace {
    pub degree: Parity,
    pub basis: Vec<GradedLinearMap>,
    pub constraint_rank: usize,
    pub unknowns: usize,
}

impl CentroidSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingMapSpace {
    pub basis: Vec<GradedLinearMap>,
    pub constraint_rank: usize,
    pub unknowns: usize,
}

impl CommutingMapSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

type Emit<'a> = dyn FnMut(&'static str, &[usize], Vector) + 'a;

/// Precomputed `alpha(e_j)`.
fn alpha_columns(h: &HomLieSuperalgebra) -> Vec<Vector> {
    (0..h.dim()).map(|j| h.alpha_basis(j)).collect()
}

/// Residuals of the three defining families of a super-biderivation of degree
/// `phi.degree()`:
///
/// * `symmetry`: `phi(x, y) ∓ (-1)^{|x||y|} phi(y, x)`
/// * `alpha_equivariance`: `phi(a(x), a(y)) - a(phi(x, y))`
/// * `biderivation`: `phi([x, y], a(z)) - (-1)^{|phi||x|}[a(x), phi(y, z)] - (-1)^{|y||z|}[phi(x, z), a(y)]`
fn biderivation_residuals(
    h: &HomLieSuperalgebra,
    alpha_cols: &[Vector],
    phi: &GradedBilinearMap,
    convention: SymmetryConvention,
    emit: &mut Emit<'_>,
) {
    let n = h.dim();
    let s = phi.degree();
    let p = |i| h.parity(i);

    for i in 0..n {
        for j in i..n {
            let mut flipped = phi.value(j, i).to_vec();
            apply_sign(p(i) * p(j), &mut flipped);
            let r: Vector = match convention {
                SymmetryConvention::Skew => phi
                    .value(i, j)
                    .iter()
                    .zip(&flipped)
                    .map(|(a, b)| a + b)
                    .collect(),
                SymmetryConvention::Printed => sub_vectors(phi.value(i, j), &flipped),
            };
            emit("symmetry", &[i, j], r);
        }
    }

    for i in 0..n {
        for j in 0..n {
            let lhs = phi.apply(&alpha_cols[i], &alpha_cols[j]);
            let rhs = h.alpha_apply(phi.value(i, j));
            emit("alpha_equivariance", &[i, j], sub_vectors(&lhs, &rhs));
        }
    }

    for i in 0..n {
        for j in 0..n {
            let xy = h.bracket_basis(i, j);
            for k in 0..n {
                let mut r = phi.apply(xy, &alpha_cols[k]);
                let mut t1 = h.bracket(&alpha_cols[i], phi.value(j, k));
                apply_sign(s * p(i), &mut t1);
                let mut t2 = h.bracket(phi.value(i, k), &alpha_cols[j]);
                apply_sign(p(j) * p(k), &mut t2);
                let minus_one = -Rational::one();
                axpy(&mut r, &minus_one, &t1);
                axpy(&mut r, &minus_one, &t2);
                emit("biderivation", &[i, j, k], r);
            }
        }
    }
}

/// Residuals of the centroid identities for `delta` of degree `s = delta.degree()`:
/// `delta([x, y]) - (-1)^{s|x|}[a(x), delta(y)]` and `a delta - delta a`.
fn centroid_residuals(
    h: &HomLieSuperalgebra,
    alpha_cols: &[Vector],
    delta: &GradedLinearMap,
    emit: &mut Emit<'_>,
) {
    let n = h.dim();
    let s = delta.degree();
    let images: Vec<Vector> = (0..n).map(|j| delta.image_of_basis(j)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = delta.apply(h.bracket_basis(i, j));
            let mut rhs = h.bracket(&alpha_cols[i], &images[j]);
            apply_sign(s * h.parity(i), &mut rhs);
            emit("centroid", &[i, j], sub_vectors(&lhs, &rhs));
        }
    }
    alpha_commutation_residuals(h, alpha_cols, &images, delta, emit);
}

fn alpha_commutation_residuals(
    h: &HomLieSuperalgebra,
    alpha_cols: &[Vector],
    images: &[Vector],
    map: &GradedLinearMap,
    emit: &mut Emit<'_>,
) {
    for j in 0..h.dim() {
        let lhs = h.alpha_apply(&images[j]);
        let rhs = map.apply(&alpha_cols[j]);
        emit("alpha_commutation", &[j], sub_vectors(&lhs, &rhs));
    }
}

/// Residuals for a linear super-commuting map: `[d(x), y] - [x, d(y)]` and `a d - d a`.
fn commuting_residuals(
    h: &HomLieSuperalgebra,
    alpha_cols: &[Vector],
    d: &GradedLinearMap,
    emit: &mut Emit<'_>,
) {
    let n = h.dim();
    let images: Vec<Vector> = (0..n).map(|j| d.image_of_basis(j)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = h.bracket_right_basis(&images[i], j);
            let rhs = h.bracket_left_basis(i, &images[j]);
            emit("commuting", &[i, j], sub_vectors(&lhs, &rhs));
        }
    }
    alpha_commutation_residuals(h, alpha_cols, &images, d, emit);
}

/// Nullspace of the linear map `unknown -> residuals(unit map of unknown)`.
/// Returns solution vectors over the unknowns and the constraint rank.
fn solve_columns(
    unknowns: usize,
    mut residual_of_unit: impl FnMut(usize) -> Vector,
) -> (Vec<Vector>, usize) {
    let columns: Vec<Vector> = (0..unknowns).map(&mut residual_of_unit).collect();
    let rows = columns.first().map_or(0, Vec::len);
    let m = Matrix::from_columns(rows, &columns).expect("residual length is fixed");
    let ns = nullspace_basis(&m);
    (ns.basis().to_vec(), unknowns - ns.dim())
}

fn collect_flat(f: impl FnOnce(&mut Emit<'_>)) -> Vector {
    let mut out = Vec::new();
    f(&mut |_, _, r: Vector| out.extend(r));
    out
}

/// Solves for degree-`s` bilinear maps satisfying the biderivation families plus
/// any `extra` linear constraints.
pub(crate) fn solve_biderivations(
    h: &HomLieSuperalgebra,
    s: Parity,
    convention: SymmetryConvention,
    extra: impl Fn(&GradedBilinearMap) -> Vector,
) -> BiderivationSpace {
    let n = h.dim();
    let alpha_cols = alpha_columns(h);
    let layout = GradedBilinearMap::admissible_entries(h.basis(), s);
    let unit = |u: usize| {
        let (i, j, k) = layout[u];
        let mut phi = GradedBilinearMap::zero(n, s);
        *phi.entry_mut(i, j, k) = Rational::one();
        phi
    };
    let (solutions, rank) = solve_columns(layout.len(), |u| {
        let phi = unit(u);
        let mut r =
            collect_flat(|emit| biderivation_residuals(h, &alpha_cols, &phi, convention, emit));
        r.extend(extra(&phi));
        r
    });
    let basis = solutions
        .into_iter()
        .map(|x| {
            let mut phi = GradedBilinearMap::zero(n, s);
            for (&(i, j, k), c) in layout.iter().zip(x) {
                *phi.entry_mut(i, j, k) = c;
            }
            phi
        })
        .collect();
    BiderivationSpace {
        degree: s,
        convention,
        basis,
        constraint_rank: rank,
        unknowns: layout.len(),
    }
}

/// `BDer_s(H)` in the chosen symmetry convention.
pub fn biderivation_space(
    h: &HomLieSuperalgebra,
    s: Parity,
    convention: SymmetryConvention,
) -> Result<BiderivationSpace> {
    h.require_invertible_alpha()?;
    Ok(solve_biderivations(h, s, convention, |_| Vec::new()))
}

fn solve_linear_maps(
    h: &HomLieSuperalgebra,
    s: Parity,
    residuals: impl Fn(&GradedLinearMap, &mut Emit<'_>),
) -> (Vec<GradedLinearMap>, usize, usize) {
    let n = h.dim();
    let layout = GradedLinearMap::admissible_entries(h.basis(), s);
    let build = |x: &dyn Fn(usize) -> Rational| {
        let mut m = Matrix::zeros(n, n);
        for (u, &(k, j)) in layout.iter().enumerate() {
            m[(k, j)] = x(u);
        }
        GradedLinearMap::new_unchecked(s, m)
    };
    let (solutions, rank) = solve_columns(layout.len(), |u| {
        let map = build(&|v| {
            if v == u {
                Rational::one()
            } else {
                Default::default()
            }
        });
        collect_flat(|emit| residuals(&map, emit))
    });
    let basis = solutions.iter().map(|x| build(&|u| x[u].clone())).collect();
    (basis, rank, layout.len())
}

/// `C_s(H)`
pub fn centroid_space(h: &HomLieSuperalgebra, s: Parity) -> CentroidSpace {
    let alpha_cols = alpha_columns(h);
    let (basis, constraint_rank, unknowns) =
        solve_linear_maps(h, s, |m, emit| centroid_residuals(h, &alpha_cols, m, emit));
    CentroidSpace {
        degree: s,
        basis,
        constraint_rank,
        unknowns,
    }
}

/// Even linear super-commuting maps.
pub fn commuting_map_space(h: &HomLieSuperalgebra) -> CommutingMapSpace {
    let alpha_cols = alpha_columns(h);
    let (basis, constraint_rank, unknowns) = solve_linear_maps(h, Parity::Even, |m, emit| {
        commuting_residuals(h, &alpha_cols, m, emit)
    });
    CommutingMapSpace {
        basis,
        constraint_rank,
        unknowns,
    }
}

fn shape_mismatch(n: usize, got: usize, check: &str) -> Option<CheckReport> {
    (got != n).then(|| {
        CheckReport::from_witnesses(
            check,
            vec![crate::report::Witness::new(
                "dimension",
                vec![got],
                zero_vector(0),
            )],
        )
    })
}

/// Re-evaluates every biderivation identity on `phi`; grading violations are
/// reported under `grading`.
pub fn biderivation_membership(
    h: &HomLieSuperalgebra,
    phi: &GradedBilinearMap,
    convention: SymmetryConvention,
) -> CheckReport {
    const CHECK: &str = "biderivation_membership";
    if let Some(r) = shape_mismatch(h.dim(), phi.dim(), CHECK) {
        return r;
    }
    let mut sink = WitnessSink::default();
    for (i, j, k) in phi.grading_violations(h.basis()) {
        sink.push("grading", &[i, j, k], vec![phi.entry(i, j, k).clone()]);
    }
    let alpha_cols = alpha_columns(h);
    biderivation_residuals(h, &alpha_cols, phi, convention, &mut |kind, t, r| {
        sink.push(kind, t, r)
    });
    sink.into_report(CHECK)
}

fn linear_grading(h: &HomLieSuperalgebra, map: &GradedLinearMap, sink: &mut WitnessSink) {
    for (k, j) in map.grading_violations(h.basis()) {
        sink.push("grading", &[k, j], vec![map.matrix()[(k, j)].clone()]);
    }
}

pub fn centroid_membership(h: &HomLieSuperalgebra, delta: &GradedLinearMap) -> CheckReport {
    const CHECK: &str = "centroid_membership";
    if let Some(r) = shape_mismatch(h.dim(), delta.dim(), CHECK) {
        return r;
    }
    let mut sink = WitnessSink::default();
    linear_grading(h, delta, &mut sink);
    centroid_residuals(h, &alpha_columns(h), delta, &mut |kind, t, r| {
        sink.push(kind, t, r)
    });
    sink.into_report(CHECK)
}

pub fn commuting_membership(h: &HomLieSuperalgebra, d: &GradedLinearMap) -> CheckReport {
    const CHECK: &str = "commuting_membership";
    if let Some(r) = shape_mismatch(h.dim(), d.dim(), CHECK) {
        return r;
    }
    let mut sink = WitnessSink::default();
    if d.degree() != Parity::Even {
        sink.push("degree", &[], vec![Rational::one()]);
    }
    linear_grading(h, d, &mut sink);
    commuting_residuals(h, &alpha_columns(h), d, &mut |kind, t, r| {
        sink.push(kind, t, r)
    });
    sink.into_report(CHECK)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::zoo;

    fn sym_free_entries(h: &HomLieSuperalgebra, s: Parity) -> usize {
        // with skew symmetry, an admissible (i, j) block with i < j is free,
        // i = j is free only when (-1)^{|x||x|} = -1, i.e. x odd
        let n = h.dim();
        let mut count = 0;
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if GradedBilinearMap::is_admissible(h.basis(), s, i, j, k)
                        && (i < j || h.parity(i).is_odd())
                    {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    #[test]
    fn abelian_biderivations_are_all_skew_maps() {
        for (m, n) in [(1, 1), (2, 1), (1, 2)] {
            let h = zoo::abelian(m, n).unwrap();
            for s in Parity::ALL {
                let space = biderivation_space(&h, s, SymmetryConvention::Skew).unwrap();
                assert_eq!(
                    space.dim(),
                    sym_free_entries(&h, s),
                    "abelian({m}|{n}) degree {s}"
                );
            }
        }
    }

    #[test]
    fn sl2_biderivations_are_the_bracket() {
        let h = zoo::sl2();
        let space = biderivation_space(&h, Parity::Even, SymmetryConvention::Skew).unwrap();
        assert_eq!(space.dim(), 1);
        assert_eq!(space.unknowns, 27);
        assert!(biderivation_membership(&h, h.bracket_map(), SymmetryConvention::Skew).passed);
        assert!(
            biderivation_space(&h, Parity::Odd, SymmetryConvention::Skew)
                .unwrap()
                .basis
                .is_empty()
        );
    }

    #[test]
    fn printed_convention_excludes_the_bracket() {
        let h = zoo::sl2();
        let r = biderivation_membership(&h, h.bracket_map(), SymmetryConvention::Printed);
        assert!(!r.passed);
        assert!(r.witnesses.iter().all(|w| w.kind == "symmetry"));
    }

    #[test]
    fn twisted_bracket_is_a_biderivation() {
        let h = zoo::sl2_twist(&rat(2)).unwrap();
        let r = biderivation_membership(&h, h.bracket_map(), SymmetryConvention::Skew);
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn centroid_examples() {
        let ab = zoo::abelian(1, 1).unwrap();
        // all even maps: 2 diagonal entries
        assert_eq!(centroid_space(&ab, Parity::Even).dim(), 2);

        let sl2 = zoo::sl2();
        let c = centroid_space(&sl2, Parity::Even);
        assert_eq!(c.dim(), 1);
        assert!(centroid_membership(&sl2, &GradedLinearMap::identity(3)).passed);

        for h in [
            zoo::sl2_twist(&rat(2)).unwrap(),
            zoo::odd_heis_twist(&rat(3)).unwrap(),
        ] {
            assert!(centroid_membership(&h, h.alpha()).passed);
        }
    }

    #[test]
    fn commuting_examples() {
        let sl2 = zoo::sl2();
        assert_eq!(commuting_map_space(&sl2).dim(), 1);
        let oh = zoo::odd_heis();
        let space = commuting_map_space(&oh);
        assert_eq!(space.dim(), 2);
        let diag = GradedLinearMap::diagonal(&[rat(5), rat(-7)]);
        assert!(commuting_membership(&oh, &diag).passed);
        for h in zoo::standard_instances() {
            assert!(commuting_membership(&h, &GradedLinearMap::identity(h.dim())).passed);
        }
    }

    #[test]
    fn odd_map_is_not_commuting() {
        let oh = zoo::odd_heis();
        let r = commuting_membership(&oh, &GradedLinearMap::zero(2, Parity::Odd));
        assert!(!r.passed);
    }

    #[test]
    fn singular_alpha_is_refused() {
        let h =
            HomLieSuperalgebra::load_json(r#"{"name":"z","even":["x"],"alpha":[["0"]]}"#).unwrap();
        assert!(matches!(
            biderivation_space(&h, Parity::Even, SymmetryConvention::Skew),
            Err(Error::Precondition(_))
        ));
    }
}
