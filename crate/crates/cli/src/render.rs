//! Text and JSON forms of vectors, maps and check reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use homlie::linalg::format_rational;
use homlie::{
    CheckReport, GradedBilinearMap, GradedLinearMap, HomLieSuperalgebra, Rational, Subspace,
};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Witnesses listed per failing check in text output; JSON lists all of them.
pub const TEXT_WITNESS_LIMIT: usize = 5;

/// `2e - h`, `1/2 f`, or `0`.
pub fn combination(v: &[Rational], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, label) in v.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let magnitude = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if !magnitude.is_one() {
            let m = format_rational(&magnitude);
            if magnitude.is_integer() {
                out.push_str(&m);
            } else {
                out.push_str(&m);
                out.push(' ');
            }
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Nonzero coordinates keyed by label.
pub fn coefficients(v: &[Rational], labels: &[String]) -> BTreeMap<String, String> {
    v.iter()
        .zip(labels)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, l)| (l.clone(), format_rational(c)))
        .collect()
}

pub fn subspace_text(s: &Subspace, labels: &[String]) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = s.basis().iter().map(|v| combination(v, labels)).collect();
    format!("span{{{}}}", parts.join(", "))
}

pub fn subspace_json(s: &Subspace, labels: &[String]) -> Vec<BTreeMap<String, String>> {
    s.basis().iter().map(|v| coefficients(v, labels)).collect()
}

#[derive(Serialize)]
pub struct ImageJson {
    pub arg: String,
    pub value: BTreeMap<String, String>,
}

#[derive(Serialize)]
pub struct LinearMapJson {
    pub degree: u8,
    pub images: Vec<ImageJson>,
}

#[derive(Serialize)]
pub struct ValueJson {
    pub left: String,
    pub right: String,
    pub value: BTreeMap<String, String>,
}

#[derive(Serialize)]
pub struct BilinearMapJson {
    pub degree: u8,
    pub values: Vec<ValueJson>,
}

/// Images of basis vectors; zero images are omitted.
pub fn linear_map_json(d: &GradedLinearMap, labels: &[String]) -> LinearMapJson {
    let images = (0..d.dim())
        .filter_map(|j| {
            let value = coefficients(&d.image_of_basis(j), labels);
            (!value.is_empty()).then(|| ImageJson {
                arg: labels[j].clone(),
                value,
            })
        })
        .collect();
    LinearMapJson {
        degree: d.degree().as_u8(),
        images,
    }
}

pub fn linear_map_text(name: &str, d: &GradedLinearMap, labels: &[String]) -> String {
    let parts: Vec<String> = (0..d.dim())
        .filter_map(|j| {
            let v = d.image_of_basis(j);
            (!v.iter().all(Zero::is_zero))
                .then(|| format!("{name}({}) = {}", labels[j], combination(&v, labels)))
        })
        .collect();
    if parts.is_empty() {
        format!("{name} = 0")
    } else {
        parts.join("; ")
    }
}

pub fn bilinear_map_json(phi: &GradedBilinearMap, labels: &[String]) -> BilinearMapJson {
    let n = phi.dim();
    let mut values = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let value = coefficients(phi.value(i, j), labels);
            if !value.is_empty() {
                values.push(ValueJson {
                    left: labels[i].clone(),
                    right: labels[j].clone(),
                    value,
                });
            }
        }
    }
    BilinearMapJson {
        degree: phi.degree().as_u8(),
        values,
    }
}

pub fn bilinear_map_text(name: &str, phi: &GradedBilinearMap, labels: &[String]) -> String {
    let n = phi.dim();
    let mut parts = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = phi.value(i, j);
            if !v.iter().all(Zero::is_zero) {
                parts.push(format!(
                    "{name}({}, {}) = {}",
                    labels[i],
                    labels[j],
                    combination(v, labels)
                ));
            }
        }
    }
    if parts.is_empty() {
        format!("{name} = 0")
    } else {
        parts.join("; ")
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn status(r: &CheckReport) -> &'static str {
    if r.is_skipped() {
        "SKIP"
    } else if r.passed {
        "PASS"
    } else {
        "FAIL"
    }
}

/// One witness per line, at most `TEXT_WITNESS_LIMIT`, each indented by `indent`.
pub fn witness_lines(h: &HomLieSuperalgebra, r: &CheckReport, indent: &str) -> String {
    let mut out = String::new();
    for w in r.witnesses.iter().take(TEXT_WITNESS_LIMIT) {
        let at = if w.tuple.is_empty() {
            String::new()
        } else {
            format!(" at {}", h.tuple_labels(&w.tuple))
        };
        let residual: Vec<String> = w.residual.iter().map(format_rational).collect();
        let _ = writeln!(
            out,
            "{indent}{}{at}: residual ({})",
            w.kind,
            residual.join(", ")
        );
    }
    if r.witnesses.len() > TEXT_WITNESS_LIMIT {
        let _ = writeln!(
            out,
            "{indent}... and {} more",
            r.witnesses.len() - TEXT_WITNESS_LIMIT
        );
    }
    out
}
