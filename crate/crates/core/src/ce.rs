//! Chevalley–Eilenberg cochains `Λᵖh* ⊗ M` for finite-dimensional
//! `h`-modules `M`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::LiePair;
use crate::linalg::{self, is_zero_vec, DenseMatrix, SparseMatrix};
use crate::rational::{one, sign, Rational};

/// A representation of `h`: one matrix per `h`-basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HModule {
    dim: usize,
    action: Vec<DenseMatrix>,
}

impl HModule {
    /// Checks shapes and flatness `[ρ(X_i), ρ(X_j)] = Σ c_ij^l ρ(X_l)`.
    pub fn new(pair: &LiePair, dim: usize, action: Vec<DenseMatrix>) -> Result<Self> {
        if action.len() != pair.sub_dim() {
            return Err(Error::DimensionMismatch {
                expected: pair.sub_dim(),
                found: action.len(),
            });
        }
        if let Some(bad) = action.iter().find(|a| a.rows() != dim || a.cols() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.rows(),
            });
        }
        let m = Self { dim, action };
        for i in 0..pair.sub_dim() {
            for j in i + 1..pair.sub_dim() {
                let mut rhs = DenseMatrix::zeros(dim, dim);
                for l in 0..pair.sub_dim() {
                    let c = pair.structure_constant(i, j, l);
                    if !c.is_zero() {
                        rhs = rhs.add(&m.action[l].scaled(c));
                    }
                }
                if m.action[i].commutator(&m.action[j]) != rhs {
                    return Err(Error::NotFlat(i, j));
                }
            }
        }
        Ok(m)
    }

    pub fn trivial(pair: &LiePair, dim: usize) -> Self {
        Self {
            dim,
            action: vec![DenseMatrix::zeros(dim, dim); pair.sub_dim()],
        }
    }

    /// `g/h` with the induced action.
    pub fn quotient(pair: &LiePair) -> Self {
        Self {
            dim: pair.quotient_dim(),
            action: (0..pair.sub_dim()).map(|i| pair.quotient_action_matrix(i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &DenseMatrix {
        &self.action[i]
    }

    /// Dual module: `X ↦ −ρ(X)ᵀ`.
    pub fn dual(&self) -> Self {
        Self {
            dim: self.dim,
            action: self.action.iter().map(|a| a.transpose().scaled(&-one())).collect(),
        }
    }

    /// `self ⊗ other`, basis index `a·dim(other) + b`, action `ρ ⊗ 1 + 1 ⊗ σ`.
    pub fn tensor(&self, other: &Self) -> Self {
        let (p, q) = (self.dim, other.dim);
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let mut m = DenseMatrix::zeros(p * q, p * q);
                for i in 0..p {
                    for j in 0..q {
                        for r in 0..p {
                            if !a[(r, i)].is_zero() {
                                m[(r * q + j, i * q + j)] += a[(r, i)].clone();
                            }
                        }
                        for s in 0..q {
                            if !b[(s, j)].is_zero() {
                                m[(i * q + s, i * q + j)] += b[(s, j)].clone();
                            }
                        }
                    }
                }
                m
            })
            .collect();
        Self { dim: p * q, action }
    }

    /// `End(V) = V ⊗ V*`; coordinate `i·dim + j` is the `(i, j)` matrix entry,
    /// and `X` acts by the commutator `[ρ(X), ·]`.
    pub fn endomorphisms(&self) -> Self {
        self.tensor(&self.dual())
    }
}

/// A `p`-cochain, stored on strictly increasing index tuples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CECochain {
    pub degree: usize,
    pub values: BTreeMap<Vec<usize>, Vec<Rational>>,
}

impl CECochain {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            values: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|v| is_zero_vec(v))
    }

    /// Value on an arbitrary index tuple, using antisymmetry.
    pub fn eval(&self, idx: &[usize], module_dim: usize) -> Vec<Rational> {
        match sort_with_sign(idx) {
            None => vec![Rational::zero(); module_dim],
            Some((sorted, parity)) => match self.values.get(&sorted) {
                None => vec![Rational::zero(); module_dim],
                Some(v) => v.iter().map(|x| x * sign(parity)).collect(),
            },
        }
    }

    fn drop_zeros(mut self) -> Self {
        self.values.retain(|_, v| !is_zero_vec(v));
        self
    }
}

/// Sorts an index tuple; `None` if it has a repeated entry, otherwise the
/// sorted tuple and the parity of the sorting permutation.
pub fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, usize)> {
    let mut v = idx.to_vec();
    let mut swaps = 0;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                swaps += 1;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, swaps))
}

/// Strictly increasing `p`-subsets of `0..n` in lexicographic order.
pub fn increasing_tuples(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= n {
        rec(0, n, p, &mut Vec::new(), &mut out);
    }
    out
}

fn check_module(pair: &LiePair, module: &HModule) -> Result<()> {
    if module.action.len() != pair.sub_dim() {
        return Err(Error::DimensionMismatch {
            expected: pair.sub_dim(),
            found: module.action.len(),
        });
    }
    Ok(())
}

/// `(dc)(X_0..X_p) = Σ_i (−1)^i X_i·c(..X̂_i..) + Σ_{i<j} (−1)^{i+j} c([X_i,X_j], ..X̂_i..X̂_j..)`.
pub fn ce_differential(pair: &LiePair, module: &HModule, c: &CECochain) -> Result<CECochain> {
    check_module(pair, module)?;
    if let Some(bad) = c.values.values().find(|v| v.len() != module.dim) {
        return Err(Error::DimensionMismatch {
            expected: module.dim,
            found: bad.len(),
        });
    }
    let m = pair.sub_dim();
    let p = c.degree;
    let mut out = CECochain::zero(p + 1);
    for tuple in increasing_tuples(m, p + 1) {
        let mut acc = vec![Rational::zero(); module.dim];
        for i in 0..=p {
            let mut rest = tuple.clone();
            rest.remove(i);
            let val = c.eval(&rest, module.dim);
            if is_zero_vec(&val) {
                continue;
            }
            let img = module.action[tuple[i]].apply(&val);
            for (a, b) in acc.iter_mut().zip(img) {
                *a += b * sign(i);
            }
        }
        for i in 0..=p {
            for j in i + 1..=p {
                let mut rest: Vec<usize> = tuple.clone();
                rest.remove(j);
                rest.remove(i);
                for l in 0..m {
                    let coef = pair.structure_constant(tuple[i], tuple[j], l);
                    if coef.is_zero() {
                        continue;
                    }
                    let mut args = vec![l];
                    args.extend_from_slice(&rest);
                    let val = c.eval(&args, module.dim);
                    let s = coef * sign(i + j);
                    for (a, b) in acc.iter_mut().zip(val) {
                        *a += b * &s;
                    }
                }
            }
        }
        out.values.insert(tuple, acc);
    }
    Ok(out.drop_zeros())
}

/// Dimension of `Λᵖh* ⊗ M`.
pub fn cochain_dim(pair: &LiePair, module: &HModule, p: usize) -> usize {
    increasing_tuples(pair.sub_dim(), p).len() * module.dim
}

/// Coordinates: tuple-major in lexicographic tuple order, then module index.
pub fn cochain_to_vec(pair: &LiePair, module: &HModule, c: &CECochain) -> Vec<Rational> {
    let mut out = Vec::with_capacity(cochain_dim(pair, module, c.degree));
    for t in increasing_tuples(pair.sub_dim(), c.degree) {
        match c.values.get(&t) {
            Some(v) => out.extend(v.iter().cloned()),
            None => out.extend(std::iter::repeat_n(Rational::zero(), module.dim)),
        }
    }
    out
}

pub fn vec_to_cochain(pair: &LiePair, module: &HModule, p: usize, v: &[Rational]) -> CECochain {
    let mut c = CECochain::zero(p);
    for (t, chunk) in increasing_tuples(pair.sub_dim(), p)
        .into_iter()
        .zip(v.chunks(module.dim.max(1)))
    {
        c.values.insert(t, chunk.to_vec());
    }
    c.drop_zeros()
}

/// Matrix of `d: Cᵖ → Cᵖ⁺¹`, built by applying [`ce_differential`] to basis cochains.
pub fn differential_matrix(pair: &LiePair, module: &HModule, p: usize) -> Result<SparseMatrix> {
    let src = increasing_tuples(pair.sub_dim(), p);
    let rows = cochain_dim(pair, module, p + 1);
    let mut columns = Vec::new();
    for t in &src {
        for a in 0..module.dim {
            let mut v = vec![Rational::zero(); module.dim];
            v[a] = one();
            let mut c = CECochain::zero(p);
            c.values.insert(t.clone(), v);
            let dc = ce_differential(pair, module, &c)?;
            let col = cochain_to_vec(pair, module, &dc)
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect();
            columns.push(col);
        }
    }
    Ok(SparseMatrix::from_columns(rows, &columns))
}

pub fn cohomology_dim(pair: &LiePair, module: &HModule, p: usize) -> Result<usize> {
    check_module(pair, module)?;
    let dim_p = cochain_dim(pair, module, p);
    if dim_p == 0 {
        return Ok(0);
    }
    let ker = dim_p - linalg::rank(&differential_matrix(pair, module, p)?);
    let im = if p == 0 {
        0
    } else {
        linalg::rank(&differential_matrix(pair, module, p - 1)?)
    };
    Ok(ker - im)
}

/// Some `φ` of degree `p − 1` with `dφ = c`, or `None` if `c` is not exact.
pub fn coboundary_witness(pair: &LiePair, module: &HModule, c: &CECochain) -> Result<Option<CECochain>> {
    if !ce_differential(pair, module, c)?.is_zero() {
        return Err(Error::NotCocycle);
    }
    if c.degree == 0 {
        return Ok(if c.is_zero() { Some(CECochain::zero(0)) } else { None });
    }
    let d = differential_matrix(pair, module, c.degree - 1)?;
    let target = cochain_to_vec(pair, module, c);
    let Some(x) = linalg::solve(&d, &target)? else {
        return Ok(None);
    };
    let phi = vec_to_cochain(pair, module, c.degree - 1, &x);
    let check = ce_differential(pair, module, &phi)?;
    assert_eq!(
        cochain_to_vec(pair, module, &check),
        target,
        "coboundary witness failed re-verification"
    );
    Ok(Some(phi))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyEntry {
    pub degree: usize,
    pub dim: usize,
}

pub fn cohomology_table(pair: &LiePair, module: &HModule) -> Result<Vec<CohomologyEntry>> {
    (0..=pair.sub_dim())
        .map(|degree| {
            Ok(CohomologyEntry {
                degree,
                dim: cohomology_dim(pair, module, degree)?,
            })
        })
        .collect()
}
