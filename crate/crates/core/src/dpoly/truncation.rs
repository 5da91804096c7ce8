//! Finite models of `D•`: the leg-truncated `T•(F_w D¹)` and its
//! total-weight blocks, with cohomology and coboundary witnesses.

use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;
use serde::Serialize;

use super::{degree, leg_weight, word_weight, DComplex, DTensor, Word};
use crate::error::{Error, Result};
use crate::linalg::{self, SparseMatrix};
use crate::pbw::{d1_basis_up_to_weight, monomials_of_weight};
use crate::rational::Rational;

/// Every leg of weight `≤ max_weight`, degrees `≤ max_degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationSpec {
    pub max_weight: usize,
    pub max_degree: usize,
}

impl TruncationSpec {
    pub fn new(max_weight: usize, max_degree: usize) -> Result<Self> {
        if max_weight == 0 || max_degree == 0 {
            return Err(Error::InvalidTruncation(format!(
                "max_weight and max_degree must be at least 1 (got {max_weight}, {max_degree})"
            )));
        }
        Ok(Self { max_weight, max_degree })
    }
}

/// All `n`-tuples over the `D¹` basis of weight `≤ w`, lexicographic with the
/// first leg slowest.
pub fn truncated_basis(k: usize, spec: &TruncationSpec, n: usize) -> Vec<Word> {
    let legs = d1_basis_up_to_weight(k, spec.max_weight);
    let mut words: Vec<Word> = vec![Vec::new()];
    for _ in 0..n {
        words = words
            .into_iter()
            .flat_map(|w| {
                legs.iter().map(move |m| {
                    let mut v = w.clone();
                    v.push(m.clone());
                    v
                })
            })
            .collect();
    }
    words
}

/// All `n`-tuples of total weight exactly `total`, in lexicographic order.
pub fn block_basis(k: usize, total: usize, n: usize) -> Vec<Word> {
    fn rec(k: usize, left: usize, slots: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let upto = if slots == 1 { left..=left } else { 0..=left };
        for wt in upto {
            for m in monomials_of_weight(k, wt) {
                cur.push(m);
                rec(k, left - wt, slots - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(k, total, n, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Coordinates of `p` in the basis `rows`; fails if `p` leaves their span.
pub fn coordinates(p: &DTensor, index: &HashMap<&Word, usize>, len: usize) -> Result<Vec<Rational>> {
    let mut v = vec![Rational::zero(); len];
    for (w, c) in p {
        let &i = index
            .get(w)
            .ok_or_else(|| Error::OutsideTruncation(format!("{} legs, weight {}", w.len(), word_weight(w))))?;
        v[i] = c.clone();
    }
    Ok(v)
}

/// Matrix of a linear map from `span(cols)` to `span(rows)`, column `j` the
/// image of `cols[j]`.
pub fn map_matrix(cols: &[Word], rows: &[Word], f: impl Fn(&Word) -> DTensor) -> Result<SparseMatrix> {
    let index: HashMap<&Word, usize> = rows.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut m = SparseMatrix::zeros(rows.len(), cols.len());
    for (j, w) in cols.iter().enumerate() {
        for (t, c) in &f(w) {
            let &i = index
                .get(t)
                .ok_or_else(|| Error::OutsideTruncation(format!("image of column {j} leaves the target basis")))?;
            m.set(i, j, c.clone());
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyRow {
    pub degree: usize,
    pub dim_cochains: usize,
    pub dim_ker: usize,
    pub dim_im: usize,
    pub dim_h: usize,
}

impl DComplex {
    fn block_rank(&self, total: usize, n: usize) -> Result<usize> {
        let cols = block_basis(self.k(), total, n);
        if cols.is_empty() {
            return Ok(0);
        }
        let rows = block_basis(self.k(), total, n + 1);
        Ok(linalg::rank(&map_matrix(&cols, &rows, |w| self.differential_word(w))?))
    }
}

/// Cohomology of `D•` in total weights `0..=w` and degrees `0..=N`.
///
/// `d` preserves total weight, so each weight block is a finite subcomplex
/// and these numbers are exact for the untruncated complex.
pub fn cohomology_report(dc: &DComplex, spec: &TruncationSpec) -> Result<Vec<CohomologyRow>> {
    let k = dc.k();
    let mut rank_into = vec![0usize; spec.max_degree + 2];
    let mut dims = vec![0usize; spec.max_degree + 1];
    for total in 0..=spec.max_weight {
        for n in 0..=spec.max_degree {
            dims[n] += block_basis(k, total, n).len();
            rank_into[n + 1] += dc.block_rank(total, n)?;
        }
    }
    Ok((0..=spec.max_degree)
        .map(|n| {
            let dim_ker = dims[n] - rank_into[n + 1];
            CohomologyRow {
                degree: n,
                dim_cochains: dims[n],
                dim_ker,
                dim_im: rank_into[n],
                dim_h: dim_ker - rank_into[n],
            }
        })
        .collect())
}

/// Some `Q ∈ T^{n−1}(F_w D¹)` with `dQ = c`, or `None` if `c` is not exact
/// there.
pub fn coboundary_witness_dpoly(dc: &DComplex, spec: &TruncationSpec, c: &DTensor) -> Result<Option<DTensor>> {
    let n = degree(c)?;
    if leg_weight(c) > spec.max_weight || n > spec.max_degree + 1 {
        return Err(Error::OutsideTruncation(format!(
            "cochain of degree {n} with a leg of weight {}",
            leg_weight(c)
        )));
    }
    if !dc.differential(c).is_zero() {
        return Err(Error::NotCocycle);
    }
    if c.is_zero() {
        return Ok(Some(DTensor::zero()));
    }
    if n == 0 {
        return Ok(None);
    }
    let within = |w: &Word| w.iter().all(|m| m.weight() <= spec.max_weight);
    let totals: BTreeSet<usize> = c.keys().map(|w| word_weight(w)).collect();
    let mut q = DTensor::zero();
    for total in totals {
        let part: DTensor = c
            .iter()
            .filter(|(w, _)| word_weight(w) == total)
            .map(|(w, x)| (w.clone(), x.clone()))
            .collect();
        let cols: Vec<Word> = block_basis(dc.k(), total, n - 1).into_iter().filter(within).collect();
        let rows: Vec<Word> = block_basis(dc.k(), total, n).into_iter().filter(within).collect();
        let m = map_matrix(&cols, &rows, |w| dc.differential_word(w))?;
        let index: HashMap<&Word, usize> = rows.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let b = coordinates(&part, &index, rows.len())?;
        match linalg::solve(&m, &b)? {
            None => return Ok(None),
            Some(x) => {
                for (w, v) in cols.iter().zip(x) {
                    q.add_term(w.clone(), v);
                }
            }
        }
    }
    assert!(dc.differential(&q) == *c, "coboundary witness failed re-verification");
    Ok(Some(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dpoly::unit;
    use crate::lie::corpus;
    use crate::pbw::Monomial;
    use crate::rational::{binomial, int};

    fn f(e: u16) -> Monomial {
        Monomial::from_exponents(&[e])
    }

    #[test]
    fn basis_counts() {
        let s = TruncationSpec::new(1, 2).unwrap();
        assert_eq!(truncated_basis(1, &s, 2).len(), 4);
        assert_eq!(truncated_basis(1, &s, 0), vec![Vec::<Monomial>::new()]);
        let s2 = TruncationSpec::new(2, 1).unwrap();
        assert_eq!(truncated_basis(1, &s2, 1), vec![vec![f(0)], vec![f(1)], vec![f(2)]]);
        assert!(TruncationSpec::new(0, 1).is_err());
        // weight-W n-tuples in k variables: C(W + nk − 1, W)
        for k in 1..3 {
            for n in 1..4 {
                for total in 0..4 {
                    let expect = binomial((total + n * k - 1) as u32, total as u32);
                    assert_eq!(int(block_basis(k, total, n).len() as i64), expect);
                }
            }
        }
        assert_eq!(block_basis(2, 0, 0).len(), 1);
        assert!(block_basis(2, 1, 0).is_empty());
    }

    #[test]
    fn borel_cohomology() {
        let dc = DComplex::new(corpus::sl2_borel());
        let rows = cohomology_report(&dc, &TruncationSpec::new(4, 3).unwrap()).unwrap();
        let h: Vec<usize> = rows.iter().map(|r| r.dim_h).collect();
        assert_eq!(h, vec![1, 1, 0, 0]);
    }

    #[test]
    fn witnesses() {
        let dc = DComplex::new(corpus::sl2_borel());
        let s = TruncationSpec::new(3, 3).unwrap();
        assert_eq!(
            coboundary_witness_dpoly(&dc, &s, &DTensor::zero()).unwrap(),
            Some(DTensor::zero())
        );
        let c = DTensor::term(vec![f(1), f(1)], int(-2));
        let q = coboundary_witness_dpoly(&dc, &s, &c).unwrap().unwrap();
        assert_eq!(dc.differential(&q), c);
        assert_eq!(
            coboundary_witness_dpoly(&dc, &s, &DTensor::basis(vec![f(1)])).unwrap(),
            None
        );
        assert_eq!(coboundary_witness_dpoly(&dc, &s, &unit(int(1))).unwrap(), None);
        assert!(matches!(
            coboundary_witness_dpoly(&dc, &s, &DTensor::basis(vec![f(2)])),
            Err(Error::NotCocycle)
        ));
        assert!(coboundary_witness_dpoly(&dc, &s, &DTensor::basis(vec![f(4)])).is_err());
    }
}
