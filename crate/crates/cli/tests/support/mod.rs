//! Reference implementation for cross-checking the solver.
//!
//! Structure constants are read straight from the JSON description with
//! `serde_json::Value` and `num_rational`'s own parser. Constraints are written
//! out row by row as explicit linear forms in the unknown coefficients, and
//! ranks come from fraction-free (Bareiss) elimination over the integers.
//! Nothing here calls into the solver or the loader of the library.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

pub type Q = BigRational;

/// Unknown labels and constraint rows of one linear system.
pub type System<T> = (Vec<T>, Vec<Vec<Q>>);

/// `c[i][j][k]`: coefficient of `e_k` in `[e_i, e_j]`; `a[k][j]`: coefficient of `e_k` in `alpha(e_j)`.
pub struct Constants {
    pub n: usize,
    pub parity: Vec<usize>,
    pub c: Vec<Vec<Vec<Q>>>,
    pub a: Vec<Vec<Q>>,
}

fn q(s: &str) -> Q {
    s.parse().unwrap_or_else(|_| panic!("bad rational {s:?}"))
}

fn sign(e: usize) -> Q {
    if e.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

impl Constants {
    pub fn from_json(text: &str) -> Constants {
        let v: Value = serde_json::from_str(text).expect("json");
        let names = |key: &str| -> Vec<String> {
            v[key]
                .as_array()
                .map(|a| a.iter().map(|s| s.as_str().unwrap().to_string()).collect())
                .unwrap_or_default()
        };
        let even = names("even");
        let odd = names("odd");
        let labels: Vec<String> = even.iter().chain(&odd).cloned().collect();
        let n = labels.len();
        let parity: Vec<usize> = (0..n).map(|i| usize::from(i >= even.len())).collect();
        let idx: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();

        let mut a = vec![vec![Q::zero(); n]; n];
        match v["alpha"].as_array() {
            Some(cols) => {
                for (j, col) in cols.iter().enumerate() {
                    for (k, x) in col.as_array().unwrap().iter().enumerate() {
                        a[k][j] = q(x.as_str().unwrap());
                    }
                }
            }
            None => (0..n).for_each(|i| a[i][i] = Q::one()),
        }

        let mut c = vec![vec![vec![Q::zero(); n]; n]; n];
        for entry in v["brackets"].as_array().unwrap() {
            let i = idx[entry["left"].as_str().unwrap()];
            let j = idx[entry["right"].as_str().unwrap()];
            for (label, x) in entry["value"].as_object().unwrap() {
                let k = idx[label.as_str()];
                let val = q(x.as_str().unwrap());
                c[j][i][k] = -sign(parity[i] * parity[j]) * &val;
                c[i][j][k] = val;
            }
        }
        Constants { n, parity, c, a }
    }
}

/// Unknowns `x_{ijk}` (coefficient of `e_k` in `phi(e_i, e_j)`) of a degree-`s` bilinear map.
pub fn bilinear_unknowns(k: &Constants, s: usize) -> Vec<(usize, usize, usize)> {
    let p = &k.parity;
    let mut out = Vec::new();
    for i in 0..k.n {
        for j in 0..k.n {
            for l in 0..k.n {
                if (p[i] + p[j] + s) % 2 == p[l] {
                    out.push((i, j, l));
                }
            }
        }
    }
    out
}

/// Unknowns `D[k][j]` (coefficient of `e_k` in `d(e_j)`) of a degree-`s` linear map.
pub fn linear_unknowns(k: &Constants, s: usize) -> Vec<(usize, usize)> {
    let p = &k.parity;
    let mut out = Vec::new();
    for row in 0..k.n {
        for col in 0..k.n {
            if (p[col] + s) % 2 == p[row] {
                out.push((row, col));
            }
        }
    }
    out
}

/// A linear form accumulated term by term; terms on non-admissible unknowns are dropped.
struct Form<'a, K: std::hash::Hash + Eq> {
    index: &'a HashMap<K, usize>,
    row: Vec<Q>,
}

impl<'a, K: std::hash::Hash + Eq> Form<'a, K> {
    fn new(index: &'a HashMap<K, usize>) -> Self {
        Form {
            index,
            row: vec![Q::zero(); index.len()],
        }
    }

    fn add(&mut self, key: K, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        if let Some(&u) = self.index.get(&key) {
            self.row[u] += coeff;
        }
    }
}

/// Rows of the super-biderivation system of degree `s`. `skew = true` uses
/// `phi(x, y) = -(-1)^{|x||y|} phi(y, x)`, otherwise `+`.
pub fn biderivation_rows(k: &Constants, s: usize, skew: bool) -> System<(usize, usize, usize)> {
    let unknowns = bilinear_unknowns(k, s);
    let index: HashMap<(usize, usize, usize), usize> =
        unknowns.iter().enumerate().map(|(u, &t)| (t, u)).collect();
    let (n, p, c, a) = (k.n, &k.parity, &k.c, &k.a);
    let mut rows = Vec::new();

    // symmetry
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let mut f = Form::new(&index);
                f.add((i, j, l), Q::one());
                let sym = sign(p[i] * p[j]);
                f.add((j, i, l), if skew { sym } else { -sym });
                rows.push(f.row);
            }
        }
    }
    // phi(a e_i, a e_j) = a phi(e_i, e_j)
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let mut f = Form::new(&index);
                for x in 0..n {
                    for y in 0..n {
                        f.add((x, y, l), &a[x][i] * &a[y][j]);
                    }
                }
                for m in 0..n {
                    f.add((i, j, m), -&a[l][m]);
                }
                rows.push(f.row);
            }
        }
    }
    // phi([x, y], a z) = (-1)^{s|x|} [a x, phi(y, z)] + (-1)^{|y||z|} [phi(x, z), a y]
    for i in 0..n {
        for j in 0..n {
            for z in 0..n {
                for l in 0..n {
                    let mut f = Form::new(&index);
                    for m in 0..n {
                        for b in 0..n {
                            f.add((m, b, l), &c[i][j][m] * &a[b][z]);
                        }
                    }
                    let s1 = sign(s * p[i]);
                    for x in 0..n {
                        for m in 0..n {
                            f.add((j, z, m), -&s1 * &a[x][i] * &c[x][m][l]);
                        }
                    }
                    let s2 = sign(p[j] * p[z]);
                    for m in 0..n {
                        for b in 0..n {
                            f.add((i, z, m), -&s2 * &a[b][j] * &c[m][b][l]);
                        }
                    }
                    rows.push(f.row);
                }
            }
        }
    }
    (unknowns, rows)
}

fn commutes_with_alpha(
    k: &Constants,
    index: &HashMap<(usize, usize), usize>,
    rows: &mut Vec<Vec<Q>>,
) {
    let (n, a) = (k.n, &k.a);
    // (a d - d a)[l][j]
    for l in 0..n {
        for j in 0..n {
            let mut f = Form::new(index);
            for m in 0..n {
                f.add((m, j), a[l][m].clone());
                f.add((l, m), -&a[m][j]);
            }
            rows.push(f.row);
        }
    }
}

/// Rows of the centroid system of degree `s`: `d[x, y] = (-1)^{s|x|}[a x, d y]`, `a d = d a`.
pub fn centroid_rows(k: &Constants, s: usize) -> System<(usize, usize)> {
    let unknowns = linear_unknowns(k, s);
    let index: HashMap<(usize, usize), usize> =
        unknowns.iter().enumerate().map(|(u, &t)| (t, u)).collect();
    let (n, p, c, a) = (k.n, &k.parity, &k.c, &k.a);
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let mut f = Form::new(&index);
                for m in 0..n {
                    f.add((l, m), c[i][j][m].clone());
                }
                let sg = sign(s * p[i]);
                for x in 0..n {
                    for m in 0..n {
                        f.add((m, j), -&sg * &a[x][i] * &c[x][m][l]);
                    }
                }
                rows.push(f.row);
            }
        }
    }
    commutes_with_alpha(k, &index, &mut rows);
    (unknowns, rows)
}

/// Rows of the commuting-map system: even `d`, `[d x, y] = [x, d y]`, `a d = d a`.
pub fn commuting_rows(k: &Constants) -> System<(usize, usize)> {
    let unknowns = linear_unknowns(k, 0);
    let index: HashMap<(usize, usize), usize> =
        unknowns.iter().enumerate().map(|(u, &t)| (t, u)).collect();
    let (n, c) = (k.n, &k.c);
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let mut f = Form::new(&index);
                for m in 0..n {
                    f.add((m, i), c[m][j][l].clone());
                    f.add((m, j), -&c[i][m][l]);
                }
                rows.push(f.row);
            }
        }
    }
    commutes_with_alpha(k, &index, &mut rows);
    (unknowns, rows)
}

/// Rank by fraction-free Gaussian elimination. Each row is first scaled to
/// integers; every intermediate division is exact, which is asserted.
pub fn bareiss_rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter()
                .map(|x| (x * Q::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for r in rank + 1..m.len() {
            for cc in col + 1..cols {
                let num = &m[rank][col] * &m[r][cc] - &m[r][col] * &m[rank][cc];
                let (quot, rem) = num.div_rem(&prev);
                assert!(rem.is_zero(), "inexact Bareiss step");
                m[r][cc] = quot;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// `rows * x`.
pub fn apply_rows(rows: &[Vec<Q>], x: &[Q]) -> Vec<Q> {
    rows.iter()
        .map(|r| r.iter().zip(x).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}
