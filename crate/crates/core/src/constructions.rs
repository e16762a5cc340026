//! Maps built from other maps: biderivations from commuting maps and centroid
//! elements, the centroid element behind a biderivation, and transport of a
//! biderivation to `H/Z(H)` and to `H'`.

use serde::Serialize;

use crate::algebra::{HomLieSuperalgebra, Quotient};
use crate::error::{Error, Result};
use crate::grading::{apply_sign, GradedBilinearMap, GradedLinearMap, Parity};
use crate::linalg::{
    axpy, nullspace_basis, solve_linear, sub_vectors, unit_vector, Matrix, Rational,
};
use crate::report::{CheckReport, WitnessSink};
use crate::spaces::{
    biderivation_membership, centroid_membership, commuting_membership, SymmetryConvention,
};

fn first_witness(h: &HomLieSuperalgebra, r: &CheckReport) -> String {
    r.witnesses
        .first()
        .map(|w| format!("{} at {}", w.kind, h.tuple_labels(&w.tuple)))
        .unwrap_or_default()
}

fn require(h: &HomLieSuperalgebra, r: CheckReport, what: &str) -> Result<()> {
    if r.passed {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{what} ({})",
            first_witness(h, &r)
        )))
    }
}

/// `phi(x, y) = [x, d(y)]` for a linear super-commuting map `d`.
pub fn bider_from_commuting(
    h: &HomLieSuperalgebra,
    d: &GradedLinearMap,
) -> Result<GradedBilinearMap> {
    require(
        h,
        commuting_membership(h, d),
        "not a linear super-commuting map",
    )?;
    h.require_invertible_alpha()?;
    let n = h.dim();
    let images: Vec<_> = (0..n).map(|j| d.image_of_basis(j)).collect();
    Ok(GradedBilinearMap::from_values(n, Parity::Even, |i, j| {
        h.bracket_left_basis(i, &images[j])
    }))
}

/// `phi(x, y) = a^{-1}(delta([x, y]))` for a centroid element `delta`.
pub fn bider_from_centroid(
    h: &HomLieSuperalgebra,
    delta: &GradedLinearMap,
) -> Result<GradedBilinearMap> {
    let alpha_inv = h.alpha_inverse()?;
    require(h, centroid_membership(h, delta), "not in the centroid")?;
    Ok(h.bracket_map().then(&alpha_inv.compose(delta)))
}

/// Recovers the centroid element `delta` with `phi(x, y) = a^{-1} delta([x, y])`
/// on a perfect, centerless algebra.
///
/// `delta` is read off from `a(phi)` on preimages of the basis under the
/// flattened bracket; well-definedness is checked by requiring `a(phi)` to
/// vanish on the kernel of the bracket.
pub fn centroid_decomposition(
    h: &HomLieSuperalgebra,
    phi: &GradedBilinearMap,
    convention: SymmetryConvention,
) -> Result<GradedLinearMap> {
    h.require_invertible_alpha()?;
    if !h.is_perfect() {
        return Err(Error::Precondition(format!("{} is not perfect", h.name())));
    }
    if !h.is_centerless() {
        return Err(Error::Precondition(format!(
            "{} has a nonzero center",
            h.name()
        )));
    }
    require(
        h,
        biderivation_membership(h, phi, convention),
        "not a super-biderivation",
    )?;

    let n = h.dim();
    let bracket = h.bracket_map().flattened();
    let lifted = phi.then(h.alpha()).flattened();

    for t in nullspace_basis(&bracket).basis() {
        let image = lifted.apply(t);
        if image.iter().any(|x| !num_traits::Zero::is_zero(x)) {
            return Err(Error::TheoremViolation(format!(
                "a(phi) does not vanish on the kernel of the bracket of {}",
                h.name()
            )));
        }
    }

    let mut columns = Vec::with_capacity(n);
    for k in 0..n {
        let pre = solve_linear(&bracket, &unit_vector(n, k))?.ok_or_else(|| {
            Error::TheoremViolation(format!(
                "{} is not in the span of brackets",
                h.basis().label(k)
            ))
        })?;
        columns.push(lifted.apply(&pre));
    }
    let delta = GradedLinearMap::new(h.basis(), phi.degree(), Matrix::from_columns(n, &columns)?)
        .map_err(|e| {
        Error::TheoremViolation(format!("recovered map is not homogeneous: {e}"))
    })?;

    let report = centroid_membership(h, &delta);
    if !report.passed {
        return Err(Error::TheoremViolation(format!(
            "recovered map is not in the centroid ({})",
            first_witness(h, &report)
        )));
    }
    let rebuilt = h.bracket_map().then(&h.alpha_inverse()?.compose(&delta));
    if &rebuilt != phi {
        return Err(Error::TheoremViolation(
            "a^{-1} delta([.,.]) does not reproduce phi".into(),
        ));
    }
    Ok(delta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BiderClass {
    /// `phi(H, H') = 0`
    pub trivial: bool,
    /// values in `Z_H(H')` and `phi(H', H') = 0`
    pub special: bool,
}

pub fn classify_bider(h: &HomLieSuperalgebra, phi: &GradedBilinearMap) -> BiderClass {
    let n = h.dim();
    let derived = h.derived_subalgebra();
    let zc = h.derived_centralizer();
    let trivial = (0..n).all(|i| {
        derived.basis().iter().all(|b| {
            phi.apply(&unit_vector(n, i), b)
                .iter()
                .all(num_traits::Zero::is_zero)
        })
    });
    let valued_in_centralizer =
        (0..n).all(|i| (0..n).all(|j| zc.contains(phi.value(i, j)).expect("same ambient")));
    let kills_derived = derived.basis().iter().all(|a| {
        derived
            .basis()
            .iter()
            .all(|b| phi.apply(a, b).iter().all(num_traits::Zero::is_zero))
    });
    BiderClass {
        trivial,
        special: valued_in_centralizer && kills_derived,
    }
}

/// `phi_bar(p(x), p(y)) = p(phi(x, y))` on `H/Z(H)`.
pub fn push_to_quotient(
    h: &HomLieSuperalgebra,
    phi: &GradedBilinearMap,
    convention: SymmetryConvention,
) -> Result<(Quotient, GradedBilinearMap)> {
    h.require_invertible_alpha()?;
    require(
        h,
        biderivation_membership(h, phi, convention),
        "not a super-biderivation",
    )?;
    let n = h.dim();
    let center = h.center();
    for z in center.basis() {
        for j in 0..n {
            let e = unit_vector(n, j);
            for v in [phi.apply(z, &e), phi.apply(&e, z)] {
                if !center.contains(&v)? {
                    return Err(Error::TheoremViolation(format!(
                        "phi sends Z(H) x {} outside Z(H)",
                        h.basis().label(j)
                    )));
                }
            }
        }
    }
    let q = h.quotient_by_center()?;
    let c = &q.complement;
    let pushed = GradedBilinearMap::from_values(c.len(), phi.degree(), |a, b| {
        q.project(phi.value(c[a], c[b]))
    });
    let report = biderivation_membership(&q.algebra, &pushed, convention);
    if !report.passed {
        return Err(Error::TheoremViolation(format!(
            "induced map is not a super-biderivation of the quotient ({})",
            first_witness(&q.algebra, &report)
        )));
    }
    Ok((q, pushed))
}

#[derive(Clone, Debug)]
pub struct Restriction {
    /// `H'` in the RREF basis of the derived subalgebra.
    pub algebra: HomLieSuperalgebra,
    pub phi: GradedBilinearMap,
    /// `phi(a(p), [x, y]) = [phi(p, x), a(y)] + (-1)^{(|phi|+|p|)|x|}[a(x), phi(p, y)]` over all basis triples.
    pub compatibility: CheckReport,
    /// Biderivation identities of the restriction on `H'`.
    pub membership: CheckReport,
}

/// Residuals of `phi(a(p), [x, y]) - [phi(p, x), a(y)] - (-1)^{(|phi|+|p|)|x|}[a(x), phi(p, y)]`.
pub fn check_derived_compatibility(h: &HomLieSuperalgebra, phi: &GradedBilinearMap) -> CheckReport {
    let n = h.dim();
    let s = phi.degree();
    let alpha_cols: Vec<_> = (0..n).map(|j| h.alpha().image_of_basis(j)).collect();
    let mut sink = WitnessSink::default();
    let minus_one = -Rational::from_integer(1.into());
    for p in 0..n {
        for x in 0..n {
            for y in 0..n {
                let mut r = phi.apply(&alpha_cols[p], h.bracket_basis(x, y));
                let t1 = h.bracket(phi.value(p, x), &alpha_cols[y]);
                let mut t2 = h.bracket(&alpha_cols[x], phi.value(p, y));
                apply_sign((s + h.parity(p)) * h.parity(x), &mut t2);
                axpy(&mut r, &minus_one, &t1);
                axpy(&mut r, &minus_one, &t2);
                sink.push("compatibility", &[p, x, y], r);
            }
        }
    }
    sink.into_report("derived_compatibility")
}

/// Restriction of `phi` to `H' x H'`, expressed in the RREF basis of `H'`.
pub fn restrict_to_derived(
    h: &HomLieSuperalgebra,
    phi: &GradedBilinearMap,
    convention: SymmetryConvention,
) -> Result<Restriction> {
    let derived = h.derived_subalgebra();
    let mut tensor = Vec::new();
    for a in derived.basis() {
        for b in derived.basis() {
            let v = phi.apply(a, b);
            let coords = derived
                .coordinates(&v)
                .ok_or_else(|| Error::Precondition("phi(H', H') is not contained in H'".into()))?;
            tensor.extend(coords);
        }
    }
    let algebra = h.subalgebra(&derived)?;
    let restricted = GradedBilinearMap::from_tensor_unchecked(derived.dim(), phi.degree(), tensor);
    let membership = biderivation_membership(&algebra, &restricted, convention);
    Ok(Restriction {
        compatibility: check_derived_compatibility(h, phi),
        membership,
        algebra,
        phi: restricted,
    })
}

/// `phi_1 - phi_2` for two maps whose projections to `H/Z(H)` agree must be
/// central-valued; returns the witnesses where it is not.
pub fn check_quotient_injectivity(
    h: &HomLieSuperalgebra,
    phi1: &GradedBilinearMap,
    phi2: &GradedBilinearMap,
) -> Result<CheckReport> {
    let q = h.quotient_by_center()?;
    let n = h.dim();
    let center = h.center();
    let mut same = true;
    let mut sink = WitnessSink::default();
    for i in 0..n {
        for j in 0..n {
            let diff = sub_vectors(phi1.value(i, j), phi2.value(i, j));
            if q.project(&diff)
                .iter()
                .any(|x| !num_traits::Zero::is_zero(x))
            {
                same = false;
            }
            sink.push("non_central_difference", &[i, j], center.reduce(&diff));
        }
    }
    if !same {
        return Ok(CheckReport::skipped(
            "quotient_injectivity",
            "the two maps differ on H/Z(H)",
        ));
    }
    Ok(sink.into_report("quotient_injectivity"))
}
