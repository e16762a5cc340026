//! Built-in example algebras.
//!
//! Structure constants are written out as description documents and go
//! through the same validating loader as user input.

use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{AlgebraDescription, BracketEntry, HomLieSuperalgebra};
use crate::error::{Error, Result};
use crate::grading::GradedLinearMap;
use crate::linalg::{format_rational, parse_rational, rat, Rational};

pub struct ZooEntry {
    pub name: &'static str,
    /// Parameter names with their default values.
    pub params: &'static [(&'static str, &'static str)],
    pub summary: &'static str,
}

pub const CATALOG: &[ZooEntry] = &[
    ZooEntry {
        name: "abelian",
        params: &[("m", "1"), ("n", "1")],
        summary: "zero bracket on m even and n odd elements, alpha = id",
    },
    ZooEntry {
        name: "heis3",
        params: &[],
        summary: "even {x, y, z}, [x, y] = z, alpha = id",
    },
    ZooEntry {
        name: "odd_heis",
        params: &[],
        summary: "even {e}, odd {f}, [f, f] = e, alpha = id",
    },
    ZooEntry {
        name: "sl2",
        params: &[],
        summary: "{h, e, f}, [h, e] = 2e, [h, f] = -2f, [e, f] = h, alpha = id",
    },
    ZooEntry {
        name: "sl2_twist",
        params: &[("lambda", "2")],
        summary: "sl2 twisted by diag(lambda, 1, 1/lambda) on (e, h, f)",
    },
    ZooEntry {
        name: "odd_heis_twist",
        params: &[("lambda", "3")],
        summary: "odd_heis twisted by diag(lambda^2, lambda) on (e, f)",
    },
];

fn entry(left: &str, right: &str, value: &[(&str, &str)]) -> BracketEntry {
    BracketEntry {
        left: left.into(),
        right: right.into(),
        value: value
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect(),
    }
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn load(desc: AlgebraDescription) -> HomLieSuperalgebra {
    HomLieSuperalgebra::load(&desc).expect("built-in constants validate")
}

pub fn abelian(m: usize, n: usize) -> Result<HomLieSuperalgebra> {
    if m + n == 0 {
        return Err(Error::Input("abelian(0|0) has an empty basis".into()));
    }
    let even = (1..=m).map(|i| format!("a{i}")).collect();
    let odd = (1..=n).map(|i| format!("b{i}")).collect();
    HomLieSuperalgebra::load(&AlgebraDescription {
        name: format!("abelian({m}|{n})"),
        even,
        odd,
        alpha: None,
        brackets: Vec::new(),
    })
}

pub fn heis3() -> HomLieSuperalgebra {
    load(AlgebraDescription {
        name: "heis3".into(),
        even: labels(&["x", "y", "z"]),
        odd: Vec::new(),
        alpha: None,
        brackets: vec![entry("x", "y", &[("z", "1")])],
    })
}

pub fn odd_heis() -> HomLieSuperalgebra {
    load(AlgebraDescription {
        name: "odd_heis".into(),
        even: labels(&["e"]),
        odd: labels(&["f"]),
        alpha: None,
        brackets: vec![entry("f", "f", &[("e", "1")])],
    })
}

pub fn sl2() -> HomLieSuperalgebra {
    load(AlgebraDescription {
        name: "sl2".into(),
        even: labels(&["h", "e", "f"]),
        odd: Vec::new(),
        alpha: None,
        brackets: vec![
            entry("h", "e", &[("e", "2")]),
            entry("h", "f", &[("f", "-2")]),
            entry("e", "f", &[("h", "1")]),
        ],
    })
}

fn nonzero(lambda: &Rational) -> Result<()> {
    if lambda.is_zero() {
        Err(Error::Input("lambda must be nonzero".into()))
    } else {
        Ok(())
    }
}

fn twist_name(base: &str, lambda: &Rational) -> String {
    if lambda.is_one() {
        base.to_string()
    } else {
        format!("{base}_twist(lambda={})", format_rational(lambda))
    }
}

/// sl2 twisted by the automorphism rescaling the root vectors; `lambda = 1` gives sl2.
pub fn sl2_twist(lambda: &Rational) -> Result<HomLieSuperalgebra> {
    nonzero(lambda)?;
    // basis order (h, e, f)
    let a = GradedLinearMap::diagonal(&[Rational::one(), lambda.clone(), lambda.recip()]);
    sl2().yau_twist(&a, twist_name("sl2", lambda))
}

/// odd_heis twisted by `diag(lambda^2, lambda)`; `lambda = 1` gives odd_heis.
pub fn odd_heis_twist(lambda: &Rational) -> Result<HomLieSuperalgebra> {
    nonzero(lambda)?;
    let a = GradedLinearMap::diagonal(&[lambda * lambda, lambda.clone()]);
    odd_heis().yau_twist(&a, twist_name("odd_heis", lambda))
}

fn count_param(params: &BTreeMap<String, Rational>, key: &str, default: usize) -> Result<usize> {
    match params.get(key) {
        None => Ok(default),
        Some(v) if v.is_integer() && !v.is_negative() => v
            .to_integer()
            .to_usize()
            .ok_or_else(|| Error::Input(format!("{key} is too large"))),
        Some(v) => Err(Error::Input(format!(
            "{key} must be a nonnegative integer, got {}",
            format_rational(v)
        ))),
    }
}

fn lambda_param(params: &BTreeMap<String, Rational>, default: i64) -> Rational {
    params
        .get("lambda")
        .or_else(|| params.get("λ"))
        .cloned()
        .unwrap_or_else(|| rat(default))
}

/// Looks up a catalog entry. Unknown parameter names are rejected.
pub fn zoo_get(name: &str, params: &BTreeMap<String, Rational>) -> Result<HomLieSuperalgebra> {
    let entry = CATALOG
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Input(format!("unknown zoo algebra {name:?}")))?;
    for key in params.keys() {
        let known = entry.params.iter().any(|(p, _)| p == key)
            || (key == "λ" && entry.params.iter().any(|(p, _)| *p == "lambda"));
        if !known {
            return Err(Error::Input(format!("{name} takes no parameter {key:?}")));
        }
    }
    match name {
        "abelian" => abelian(count_param(params, "m", 1)?, count_param(params, "n", 1)?),
        "heis3" => Ok(heis3()),
        "odd_heis" => Ok(odd_heis()),
        "sl2" => Ok(sl2()),
        "sl2_twist" => sl2_twist(&lambda_param(params, 2)),
        "odd_heis_twist" => odd_heis_twist(&lambda_param(params, 3)),
        _ => unreachable!("catalog and match agree"),
    }
}

/// Parses `name`, `name(k=v,...)`, `name(v)` for a single parameter, and `abelian(m|n)`.
pub fn parse_zoo_spec(spec: &str) -> Result<(String, BTreeMap<String, Rational>)> {
    let spec = spec.trim();
    let Some((name, rest)) = spec.split_once('(') else {
        return Ok((spec.to_string(), BTreeMap::new()));
    };
    let inner = rest
        .strip_suffix(')')
        .ok_or_else(|| Error::Input(format!("unbalanced parentheses in {spec:?}")))?;
    let name = name.trim().to_string();
    let mut params = BTreeMap::new();
    if name == "abelian" {
        if let Some((m, n)) = inner.split_once('|') {
            params.insert("m".into(), parse_rational(m)?);
            params.insert("n".into(), parse_rational(n)?);
            return Ok((name, params));
        }
    }
    for part in inner.split(',').filter(|p| !p.trim().is_empty()) {
        match part.split_once('=') {
            Some((k, v)) => {
                params.insert(k.trim().to_string(), parse_rational(v)?);
            }
            None => {
                let entry = CATALOG.iter().find(|e| e.name == name);
                match entry.map(|e| e.params) {
                    Some([(key, _)]) => {
                        params.insert(key.to_string(), parse_rational(part)?);
                    }
                    _ => {
                        return Err(Error::Input(format!(
                            "cannot tell which parameter {part:?} sets"
                        )))
                    }
                }
            }
        }
    }
    Ok((name, params))
}

/// The instances every theorem check is run against.
pub fn standard_instances() -> Vec<HomLieSuperalgebra> {
    let mut out = vec![
        abelian(1, 1).expect("nonempty"),
        abelian(2, 1).expect("nonempty"),
        heis3(),
        odd_heis(),
        sl2(),
    ];
    for l in [rat(2), rat(3), rat(-1), crate::linalg::ratio(1, 2)] {
        out.push(sl2_twist(&l).expect("lambda nonzero"));
    }
    out.push(odd_heis_twist(&rat(3)).expect("lambda nonzero"));
    out
}
