//! `Λ(g/h)` with zero differential and the skew-symmetrization map into `D•`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::ce::{increasing_tuples, sort_with_sign};
use crate::dpoly::{
    block_basis, coboundary_witness_dpoly, cohomology_report, coordinates, map_matrix, DComplex, DTensor,
    TruncationSpec, Word,
};
use crate::error::Result;
use crate::linalg::{self, SparseMatrix};
use crate::lincomb::LinComb;
use crate::pbw::Monomial;
use crate::rational::{self, binomial, factorial, Rational};

/// Keys are strictly increasing tuples of complement indices.
pub type ExteriorElement = LinComb<Vec<usize>>;

/// `b_{i₁} ∧ … ∧ b_{iₙ}` in normal form (zero on a repeated index).
pub fn wedge(indices: &[usize]) -> ExteriorElement {
    match sort_with_sign(indices) {
        Some((sorted, s)) => ExteriorElement::term(sorted, rational::sign(s)),
        None => ExteriorElement::zero(),
    }
}

fn permutations(n: usize) -> Vec<(Vec<usize>, usize)> {
    // Heap's algorithm; each step is a transposition, so parity alternates.
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![(p.clone(), 0)];
    let mut c = vec![0usize; n];
    let mut parity = 0;
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            parity ^= 1;
            out.push((p.clone(), parity));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// `(1/n!) Σ_σ sgn(σ) b_{σ(1)}⊗…⊗b_{σ(n)}`, with `b_i` the weight-one monomials.
pub fn hkr_map(k: usize, x: &ExteriorElement) -> DTensor {
    let mut out = DTensor::zero();
    for (idx, c) in x {
        let n = idx.len();
        let scale = c / factorial(n);
        for (perm, parity) in permutations(n) {
            let w: Word = perm.iter().map(|&p| Monomial::variable(k, idx[p])).collect();
            out.add_term(w, &scale * rational::sign(parity));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HkrRow {
    pub n: usize,
    pub cocycle_pass: bool,
    /// `None` outside the range where the truncation decides independence.
    pub independent_pass: Option<bool>,
    #[serde(rename = "dim_H")]
    pub dim_h: usize,
    pub expected_binomial: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HkrReport {
    pub spec: TruncationSpec,
    pub rows: Vec<HkrRow>,
    pub all_pass: bool,
}

/// `d(HKR(x)) = 0` for every exterior basis element of degree `n`.
pub fn hkr_cocycle_check(dc: &DComplex, n: usize) -> bool {
    increasing_tuples(dc.k(), n)
        .into_iter()
        .all(|t| dc.differential(&hkr_map(dc.k(), &ExteriorElement::basis(t))).is_zero())
}

/// No nonzero combination of the degree-`n` HKR images is a coboundary:
/// the rank test on the weight-`n` block and a per-image witness search.
pub fn hkr_independence_check(dc: &DComplex, spec: &TruncationSpec, n: usize) -> Result<bool> {
    let k = dc.k();
    let images: Vec<DTensor> = increasing_tuples(k, n)
        .into_iter()
        .map(|t| hkr_map(k, &ExteriorElement::basis(t)))
        .collect();
    for img in &images {
        if coboundary_witness_dpoly(dc, spec, img)?.is_some() {
            return Ok(false);
        }
    }
    let rows = block_basis(k, n, n);
    let boundaries = if n == 0 {
        SparseMatrix::zeros(rows.len(), 0)
    } else {
        map_matrix(&block_basis(k, n, n - 1), &rows, |w| dc.differential_word(w))?
    };
    let index: HashMap<&Word, usize> = rows.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut cols: Vec<BTreeMap<usize, Rational>> = Vec::new();
    for img in &images {
        let v = coordinates(img, &index, rows.len())?;
        cols.push(
            v.into_iter()
                .enumerate()
                .filter(|(_, x)| *x != rational::zero())
                .collect(),
        );
    }
    let image_matrix = SparseMatrix::from_columns(rows.len(), &cols);
    let base = linalg::rank(&boundaries);
    Ok(linalg::rank(&boundaries.hstack(&image_matrix)?) == base + images.len())
}

pub fn hkr_report(dc: &DComplex, spec: &TruncationSpec) -> Result<HkrReport> {
    let k = dc.k();
    let cohomology = cohomology_report(dc, spec)?;
    let decided = spec.max_degree.saturating_sub(1).min(spec.max_weight - 1).min(k);
    let mut rows = Vec::new();
    for n in 0..=spec.max_degree.min(k) {
        let expected: usize = binomial(k as u32, n as u32)
            .to_integer()
            .try_into()
            .expect("small binomial");
        let independent_pass = if n <= decided {
            Some(hkr_independence_check(dc, spec, n)?)
        } else {
            None
        };
        rows.push(HkrRow {
            n,
            cocycle_pass: hkr_cocycle_check(dc, n),
            independent_pass,
            dim_h: cohomology[n].dim_h,
            expected_binomial: expected,
        });
    }
    let all_pass = rows.iter().all(|r| {
        r.cocycle_pass && r.independent_pass != Some(false) && (r.n > decided || r.dim_h == r.expected_binomial)
    });
    Ok(HkrReport {
        spec: *spec,
        rows,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dpoly::unit;
    use crate::lie::corpus;
    use crate::pbw::D1Element;
    use crate::rational::{int, ratio};

    fn b(k: usize, i: usize) -> Monomial {
        Monomial::variable(k, i)
    }

    #[test]
    fn low_degree_images() {
        assert_eq!(hkr_map(2, &ExteriorElement::basis(vec![])), unit(int(1)));
        assert_eq!(hkr_map(2, &wedge(&[1])), DTensor::basis(vec![b(2, 1)]));
        let expected: DTensor = [
            (vec![b(2, 0), b(2, 1)], ratio(1, 2)),
            (vec![b(2, 1), b(2, 0)], ratio(-1, 2)),
        ]
        .into_iter()
        .collect();
        assert_eq!(hkr_map(2, &wedge(&[0, 1])), expected);
        assert!(hkr_map(2, &wedge(&[0, 1]).plus(&wedge(&[1, 0]))).is_zero());
        assert!(wedge(&[1, 1]).is_zero());
    }

    #[test]
    fn permutations_and_signs() {
        let ps = permutations(3);
        assert_eq!(ps.len(), 6);
        for (p, parity) in ps {
            let inversions = (0..3)
                .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            assert_eq!(inversions % 2, parity);
        }
    }

    #[test]
    fn heisenberg_wedge_is_cocycle_by_expansion() {
        // expand d(½(x⊗y − y⊗x)) directly from the D¹ coproduct
        let dc = DComplex::new(corpus::heisenberg_center());
        let env = dc.env();
        let (x, y) = (b(2, 0), b(2, 1));
        let one = Monomial::one(2);
        let mut total = DTensor::zero();
        for (p, q, s) in [(&x, &y, ratio(1, 2)), (&y, &x, ratio(-1, 2))] {
            let mut d = DTensor::zero();
            d.add_term(vec![one.clone(), p.clone(), q.clone()], int(1));
            for ((a, c), v) in &env.coproduct_d1(&D1Element::basis(p.clone())) {
                d.add_term(vec![a.clone(), c.clone(), q.clone()], -v);
            }
            for ((a, c), v) in &env.coproduct_d1(&D1Element::basis(q.clone())) {
                d.add_term(vec![p.clone(), a.clone(), c.clone()], v.clone());
            }
            d.add_term(vec![p.clone(), q.clone(), one.clone()], int(-1));
            total.add_scaled(&d, &s);
        }
        assert!(total.is_zero());
        assert!(dc.differential(&hkr_map(2, &wedge(&[0, 1]))).is_zero());
        assert!(hkr_cocycle_check(&dc, 2));
    }

    #[test]
    fn images_are_independent_tensors() {
        for k in 1..4 {
            for n in 0..=k {
                let cols: Vec<_> = increasing_tuples(k, n)
                    .into_iter()
                    .map(|t| hkr_map(k, &ExteriorElement::basis(t)))
                    .collect();
                let rows = block_basis(k, n, n);
                let index: HashMap<&Word, usize> = rows.iter().enumerate().map(|(i, w)| (w, i)).collect();
                let dense: Vec<Vec<_>> = cols
                    .iter()
                    .map(|c| coordinates(c, &index, rows.len()).unwrap())
                    .collect();
                let m = SparseMatrix::from_dense(&dense);
                assert_eq!(linalg::rank(&m), cols.len());
                for c in &cols {
                    assert_eq!(crate::dpoly::weight(c), n);
                    assert_eq!(crate::dpoly::degree(c).unwrap(), n);
                }
            }
        }
    }

    #[test]
    fn reports() {
        let spec = TruncationSpec::new(4, 3).unwrap();
        let borel = hkr_report(&DComplex::new(corpus::sl2_borel()), &spec).unwrap();
        assert!(borel.all_pass, "{borel:?}");
        assert_eq!(borel.rows.iter().map(|r| r.dim_h).collect::<Vec<_>>(), vec![1, 1]);
        let abelian = hkr_report(&DComplex::new(corpus::abelian2_sub1()), &spec).unwrap();
        assert!(abelian.all_pass);
        assert_eq!(abelian.rows[1].dim_h, 1);
        let heis = hkr_report(&DComplex::new(corpus::heisenberg_center()), &spec).unwrap();
        assert!(heis.all_pass, "{heis:?}");
        assert_eq!(heis.rows[2].dim_h, 1);
    }
}
