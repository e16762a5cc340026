use homlie::checks::{check_closure_identity, check_commuting_defect};
use homlie::constructions::centroid_decomposition;
use homlie::linalg::{nullspace_basis, ratio, solve_linear, Matrix, Rational, Subspace};
use homlie::spaces::{
    biderivation_membership, biderivation_space, centroid_space, commuting_map_space,
};
use homlie::{
    zoo, GradedBilinearMap, GradedLinearMap, HomLieSuperalgebra, Parity, SymmetryConvention,
};
use num_traits::Zero;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn small_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..=5, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r).prop_map(move |rows| {
            let rows = rows
                .into_iter()
                .map(|row| row.into_iter().map(|x| ratio(x, 1)).collect())
                .collect();
            Matrix::from_rows(c, rows).unwrap()
        })
    })
}

/// The same algebra in the basis `e'_i = c_i e_i`.
fn rescaled(h: &HomLieSuperalgebra, c: &[Rational]) -> HomLieSuperalgebra {
    let n = h.dim();
    let bracket = GradedBilinearMap::from_values(n, Parity::Even, |i, j| {
        (0..n)
            .map(|k| &c[i] * &c[j] / &c[k] * h.bracket_map().entry(i, j, k))
            .collect()
    });
    let alpha = Matrix::from_fn(n, n, |k, j| &c[j] / &c[k] * &h.alpha().matrix()[(k, j)]);
    let alpha = GradedLinearMap::new(h.basis(), Parity::Even, alpha).unwrap();
    HomLieSuperalgebra::from_parts(h.name(), h.basis().clone(), bracket, alpha).unwrap()
}

fn dims(h: &HomLieSuperalgebra) -> Vec<usize> {
    let mut out = Vec::new();
    for s in Parity::ALL {
        for conv in [SymmetryConvention::Skew, SymmetryConvention::Printed] {
            out.push(biderivation_space(h, s, conv).unwrap().dim());
        }
        out.push(centroid_space(h, s).dim());
    }
    out.push(commuting_map_space(h).dim());
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity(m in small_matrix()) {
        let null = nullspace_basis(&m);
        prop_assert_eq!(m.rank() + null.dim(), m.cols());
        for v in null.basis() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        let (r, _) = m.rref();
        prop_assert_eq!(r.rref().0, r);
    }

    #[test]
    fn solve_linear_is_sound_and_complete(
        m in small_matrix(),
        y in prop::collection::vec(-3i64..=3, 6),
        b in prop::collection::vec(-3i64..=3, 5),
    ) {
        let y: Vec<Rational> = y[..m.cols()].iter().map(|&x| ratio(x, 1)).collect();
        let reachable = m.mul_vec(&y).unwrap();
        let x = solve_linear(&m, &reachable).unwrap().expect("b = A y is solvable");
        prop_assert_eq!(m.mul_vec(&x).unwrap(), reachable);

        let b: Vec<Rational> = b[..m.rows()].iter().map(|&x| ratio(x, 1)).collect();
        match solve_linear(&m, &b).unwrap() {
            Some(x) => prop_assert_eq!(m.mul_vec(&x).unwrap(), b),
            None => {
                // b is outside the column space
                let cols: Vec<_> = (0..m.cols()).map(|j| m.column(j)).collect();
                prop_assert!(!Subspace::span(m.rows(), &cols).unwrap().contains(&b).unwrap());
            }
        }
    }

    #[test]
    fn space_dimensions_survive_rescaling(
        which in 0usize..10,
        c in prop::collection::vec(nonzero_rational(), 3),
    ) {
        let h = &zoo::standard_instances()[which];
        let r = rescaled(h, &c[..h.dim()]);
        prop_assert_eq!(dims(h), dims(&r));
        prop_assert_eq!(r.center().dim(), h.center().dim());
        prop_assert_eq!(r.derived_centralizer().dim(), h.derived_centralizer().dim());
    }

    #[test]
    fn biderivation_span_is_closed(
        which in 0usize..10,
        coeffs in prop::collection::vec(small_rational(), 8),
        odd in any::<bool>(),
    ) {
        let h = &zoo::standard_instances()[which];
        let s = if odd { Parity::Odd } else { Parity::Even };
        let space = biderivation_space(h, s, SymmetryConvention::Skew).unwrap();
        let mut phi = GradedBilinearMap::zero(h.dim(), s);
        for (b, c) in space.basis.iter().zip(&coeffs) {
            phi = &phi + &b.scaled(c);
        }
        prop_assert!(biderivation_membership(h, &phi, SymmetryConvention::Skew).passed);
        prop_assert!(check_closure_identity(h, &phi).passed);
    }

    /// A unit admissible tensor passes membership exactly when it lies in the
    /// span of the computed basis.
    #[test]
    fn unit_tensors_match_the_span(which in 0usize..10, pick in any::<prop::sample::Index>(), odd in any::<bool>()) {
        let h = &zoo::standard_instances()[which];
        let s = if odd { Parity::Odd } else { Parity::Even };
        let n = h.dim();
        let entries = GradedBilinearMap::admissible_entries(h.basis(), s);
        prop_assume!(!entries.is_empty());
        let (i, j, k) = entries[pick.index(entries.len())];
        let mut t = vec![Rational::zero(); n * n * n];
        t[(i * n + j) * n + k] = ratio(1, 1);
        let phi = GradedBilinearMap::from_tensor(h.basis(), s, t.clone()).unwrap();

        let space = biderivation_space(h, s, SymmetryConvention::Skew).unwrap();
        let tensors: Vec<_> = space.basis.iter().map(|b| b.tensor().to_vec()).collect();
        let span = Subspace::span(n * n * n, &tensors).unwrap();
        prop_assert_eq!(
            biderivation_membership(h, &phi, SymmetryConvention::Skew).passed,
            span.contains(&t).unwrap()
        );
    }

    #[test]
    fn twisted_sl2_structure(lambda in nonzero_rational()) {
        let h = zoo::sl2_twist(&lambda).unwrap();
        prop_assert!(h.validate().is_valid() && h.is_multiplicative());
        prop_assert!(h.is_perfect() && h.is_centerless());

        let c0 = centroid_space(&h, Parity::Even);
        prop_assert_eq!(c0.dim(), 1);
        let alpha: Vec<_> = (0..3).flat_map(|j| h.alpha().image_of_basis(j)).collect();
        let delta: Vec<_> = (0..3).flat_map(|j| c0.basis[0].image_of_basis(j)).collect();
        prop_assert!(Subspace::span(9, &[alpha]).unwrap().contains(&delta).unwrap());

        let bder = biderivation_space(&h, Parity::Even, SymmetryConvention::Skew).unwrap();
        prop_assert_eq!(bder.dim(), 1);
        prop_assert!(centroid_decomposition(&h, &bder.basis[0], SymmetryConvention::Skew).is_ok());

        let commuting = commuting_map_space(&h);
        prop_assert_eq!(commuting.dim(), 1);
        prop_assert!(check_commuting_defect(&h, &commuting.basis[0]).passed);
    }
}
