//! A brute-force model of the associated graded complex: the cobar-type
//! complex of the symmetric coalgebra `S(V)`, `dim V = k`, with the
//! multinomial coproduct. It shares nothing with the PBW code path.

use std::collections::HashMap;

use serde::Serialize;

use crate::linalg::{self, SparseMatrix};
use crate::rational::{binomial, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleEntry {
    pub weight: usize,
    pub degree: usize,
    pub dim_h: usize,
}

type Exps = Vec<u32>;
type Tuple = Vec<Exps>;

/// Exponent vectors in `k` variables summing to `total`, by odometer.
fn exponent_vectors(k: usize, total: u32) -> Vec<Exps> {
    if k == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut e = vec![0u32; k];
    loop {
        let head: u32 = e[..k - 1].iter().sum();
        if head <= total {
            let mut v = e.clone();
            v[k - 1] = total - head;
            out.push(v);
        }
        // advance the first k−1 digits in base (total + 1)
        let mut i = 0;
        loop {
            if i == k - 1 {
                return out;
            }
            e[i] += 1;
            if e[i] <= total {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

/// Tuples of `n` exponent vectors with summed weight `total`.
fn tuples(k: usize, total: u32, n: usize) -> Vec<Tuple> {
    if n == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for head in exponent_vectors(k, first) {
            for rest in tuples(k, total - first, n - 1) {
                let mut t = vec![head.clone()];
                t.extend(rest);
                out.push(t);
            }
        }
    }
    out
}

/// `Δ(x^α) = Σ_{β ≤ α} Πᵢ C(αᵢ, βᵢ) x^β ⊗ x^{α−β}`.
fn coproduct(a: &Exps) -> Vec<(Exps, Exps, Rational)> {
    let mut out = Vec::new();
    let mut b = vec![0u32; a.len()];
    loop {
        let c = a.iter().zip(&b).fold(int(1), |acc, (&x, &y)| acc * binomial(x, y));
        let rest: Exps = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        out.push((b.clone(), rest, c));
        let mut i = 0;
        loop {
            if i == a.len() {
                return out;
            }
            if b[i] < a[i] {
                b[i] += 1;
                break;
            }
            b[i] = 0;
            i += 1;
        }
    }
}

fn differential(t: &Tuple, k: usize) -> Vec<(Tuple, Rational)> {
    let n = t.len();
    let one = vec![0u32; k];
    let mut out = Vec::new();
    let mut front = vec![one.clone()];
    front.extend(t.iter().cloned());
    out.push((front, int(1)));
    for i in 0..n {
        let s = if i % 2 == 0 { int(-1) } else { int(1) };
        for (l, r, c) in coproduct(&t[i]) {
            let mut u = t[..i].to_vec();
            u.push(l);
            u.push(r);
            u.extend(t[i + 1..].iter().cloned());
            out.push((u, &s * c));
        }
    }
    let mut back = t.clone();
    back.push(one);
    out.push((back, if n.is_multiple_of(2) { int(-1) } else { int(1) }));
    out
}

fn rank_of_d(k: usize, total: u32, n: usize) -> usize {
    let cols = tuples(k, total, n);
    let rows = tuples(k, total, n + 1);
    if cols.is_empty() || rows.is_empty() {
        return 0;
    }
    let index: HashMap<&Tuple, usize> = rows.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut m = SparseMatrix::zeros(rows.len(), cols.len());
    for (j, t) in cols.iter().enumerate() {
        for (u, c) in differential(t, k) {
            m.add_to(index[&u], j, &c);
        }
    }
    linalg::rank(&m)
}

/// Betti numbers per `(weight, degree)` for weights `0..=w`, degrees `0..=max_degree`.
pub fn graded_oracle_betti(k: usize, w: usize, max_degree: usize) -> Vec<OracleEntry> {
    let mut out = Vec::new();
    for weight in 0..=w {
        let total = weight as u32;
        let ranks: Vec<usize> = (0..=max_degree).map(|n| rank_of_d(k, total, n)).collect();
        for degree in 0..=max_degree {
            let dim = tuples(k, total, degree).len();
            let into = if degree == 0 { 0 } else { ranks[degree - 1] };
            out.push(OracleEntry {
                weight,
                degree,
                dim_h: dim - ranks[degree] - into,
            });
        }
    }
    out
}

/// `C(k, n)` if `n = weight`, else `0`.
pub fn expected_graded_betti(k: usize, weight: usize, degree: usize) -> usize {
    if weight != degree {
        return 0;
    }
    binomial(k as u32, degree as u32)
        .to_integer()
        .try_into()
        .expect("small binomial")
}
