//! The ordered list of checks run by `hls verify`.

use homlie::checks::{
    check_adjoint_defect, check_closure_identity, check_commuting_defect, check_commuting_identity,
    check_kernel_pairs, commuting_subset_centroid, special_extension_check,
};
use homlie::constructions::{bider_from_centroid, bider_from_commuting, centroid_decomposition};
use homlie::spaces::{
    biderivation_membership, biderivation_space, centroid_space, commuting_map_space,
};
use homlie::{
    CheckReport, GradedBilinearMap, HomLieSuperalgebra, Parity, SymmetryConvention, Witness,
};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub algebra: String,
    pub convention: SymmetryConvention,
    pub labels: Vec<String>,
    pub checks: Vec<CheckReport>,
    /// Every check that ran passed.
    pub passed: bool,
}

impl VerifyReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckReport> {
        self.checks.iter().filter(|c| c.failed())
    }
}

/// Appends `@ tag` to every witness kind so merged reports keep track of
/// which map produced each witness.
fn tagged(mut r: CheckReport, tag: &str) -> CheckReport {
    for w in &mut r.witnesses {
        w.kind = format!("{} @ {tag}", w.kind);
    }
    r
}

fn error_witness(kind: String, message: &str) -> CheckReport {
    CheckReport::from_witnesses("error", vec![Witness::new(kind, Vec::new(), Vec::new())])
        .with_note(message.to_string())
}

fn unmet(conditions: &[(bool, &str)]) -> Option<String> {
    let missing: Vec<&str> = conditions
        .iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, c)| *c)
        .collect();
    (!missing.is_empty()).then(|| format!("hypotheses not met: {}", missing.join(", ")))
}

fn count_note(n: usize, what: &str) -> String {
    format!("{n} {what}{} checked", if n == 1 { "" } else { "s" })
}

/// Runs every check in order. Checks whose hypotheses fail are reported as
/// skipped; none of them is silently passed.
pub fn verify(h: &HomLieSuperalgebra, convention: SymmetryConvention) -> VerifyReport {
    let alpha_ok = h.alpha_is_invertible();
    let perfect = h.is_perfect();
    let centerless = h.is_centerless();
    let commuting = commuting_map_space(h);
    let mut checks = Vec::new();

    // biderivations built from commuting maps and centroid elements
    if let Some(reason) = unmet(&[(alpha_ok, "alpha invertible")]) {
        checks.push(CheckReport::skipped(
            "commuting_to_biderivation",
            reason.clone(),
        ));
        checks.push(CheckReport::skipped("centroid_to_biderivation", reason));
    } else {
        let parts = commuting.basis.iter().enumerate().map(|(i, d)| {
            let tag = format!("commuting[{i}]");
            match bider_from_commuting(h, d) {
                Ok(phi) => tagged(biderivation_membership(h, &phi, convention), &tag),
                Err(e) => error_witness(tag, &e.to_string()),
            }
        });
        checks.push(
            CheckReport::combine("commuting_to_biderivation", parts.collect::<Vec<_>>())
                .with_note(count_note(commuting.dim(), "commuting map")),
        );

        let mut parts = Vec::new();
        let mut count = 0;
        for s in Parity::ALL {
            for (i, delta) in centroid_space(h, s).basis.iter().enumerate() {
                count += 1;
                let tag = format!("C{s}[{i}]");
                parts.push(match bider_from_centroid(h, delta) {
                    Ok(phi) => tagged(biderivation_membership(h, &phi, convention), &tag),
                    Err(e) => error_witness(tag, &e.to_string()),
                });
            }
        }
        checks.push(
            CheckReport::combine("centroid_to_biderivation", parts)
                .with_note(count_note(count, "centroid element")),
        );
    }

    // identities satisfied by every biderivation
    let mut biders: Vec<(String, GradedBilinearMap)> = Vec::new();
    if alpha_ok {
        for s in Parity::ALL {
            let space = biderivation_space(h, s, convention).expect("alpha is invertible");
            for (i, phi) in space.basis.into_iter().enumerate() {
                biders.push((format!("BDer{s}[{i}]"), phi));
            }
        }
        type Check = fn(&HomLieSuperalgebra, &GradedBilinearMap) -> CheckReport;
        let sweeps: [(&str, Check); 3] = [
            ("closure_identity", check_closure_identity),
            ("kernel_pairs", check_kernel_pairs),
            ("adjoint_defect", check_adjoint_defect),
        ];
        for (name, check) in sweeps {
            let parts: Vec<CheckReport> = biders
                .iter()
                .map(|(tag, phi)| {
                    let mut r = tagged(check(h, phi), tag);
                    r.notes.clear();
                    r
                })
                .collect();
            checks.push(
                CheckReport::combine(name, parts)
                    .with_note(count_note(biders.len(), "biderivation")),
            );
        }
    } else {
        for name in ["closure_identity", "kernel_pairs", "adjoint_defect"] {
            checks.push(CheckReport::skipped(
                name,
                "hypotheses not met: alpha invertible",
            ));
        }
    }

    // structure theorems for perfect centerless algebras
    match unmet(&[
        (perfect, "H = H'"),
        (centerless, "Z(H) = 0"),
        (alpha_ok, "alpha invertible"),
    ]) {
        Some(reason) => checks.push(CheckReport::skipped("centroid_decomposition", reason)),
        None => {
            let mut witnesses = Vec::new();
            let mut notes = Vec::new();
            for (tag, phi) in &biders {
                if let Err(e) = centroid_decomposition(h, phi, convention) {
                    witnesses.push(Witness::new(
                        format!("decomposition @ {tag}"),
                        Vec::new(),
                        Vec::new(),
                    ));
                    notes.push(format!("{tag}: {e}"));
                }
            }
            let mut r = CheckReport::from_witnesses("centroid_decomposition", witnesses);
            r.notes = notes;
            checks.push(r.with_note(count_note(biders.len(), "biderivation")));
        }
    }

    match unmet(&[(centerless, "Z(H) = 0"), (alpha_ok, "alpha invertible")]) {
        Some(reason) => checks.push(CheckReport::skipped("special_extension", reason)),
        None => checks.push(match special_extension_check(h, convention) {
            Ok(r) => r,
            Err(e) => CheckReport {
                check: "special_extension".into(),
                ..error_witness("special_extension".into(), &e.to_string())
            },
        }),
    }

    // linear super-commuting maps
    if alpha_ok {
        for (name, check) in [
            (
                "commuting_identity",
                check_commuting_identity as fn(&_, &_) -> _,
            ),
            ("commuting_defect", check_commuting_defect),
        ] {
            let parts: Vec<CheckReport> = commuting
                .basis
                .iter()
                .enumerate()
                .map(|(i, d)| tagged(check(h, d), &format!("commuting[{i}]")))
                .collect();
            checks.push(
                CheckReport::combine(name, parts)
                    .with_note(count_note(commuting.dim(), "commuting map")),
            );
        }
        checks.push(commuting_subset_centroid(h));
    } else {
        for name in [
            "commuting_identity",
            "commuting_defect",
            "commuting_in_centroid",
        ] {
            checks.push(CheckReport::skipped(
                name,
                "hypotheses not met: alpha invertible",
            ));
        }
    }

    let passed = checks.iter().all(|c| c.passed);
    VerifyReport {
        algebra: h.name().to_string(),
        convention,
        labels: h.basis().labels().to_vec(),
        checks,
        passed,
    }
}
