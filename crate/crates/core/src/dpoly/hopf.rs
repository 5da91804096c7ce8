//! Exhaustive chain-level checks of the Hopf structure on `T•(F_w D¹)`, and
//! a null-homotopy search for maps that fail strictly.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::truncation::{block_basis, map_matrix, truncated_basis, TruncationSpec};
use super::{
    antipode, counit, cup, format_pair, format_tensor, format_word, leg_weight, map_pair, multiply_pair,
    multiply_pairs, shuffle_coproduct, unit, Convention, DComplex, DTensor, DTensorPair, Word,
};
use crate::error::Result;
use crate::linalg;
use crate::lincomb::LinComb;
use crate::rational::{self, Rational};
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum AntipodeChoice {
    /// Only the `(−1)^{n(n−1)/2}` sign, recorded without deciding the verdict.
    #[serde(rename = "paper")]
    #[value(name = "paper")]
    Alternate,
    /// Only the `(−1)^{n(n+1)/2}` sign.
    Standard,
    /// Both signs; the first strict pass decides.
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub name: String,
    pub convention: Option<Convention>,
    /// Whether this row decides the overall verdict.
    pub required: bool,
    pub checked: usize,
    pub strict_pass: bool,
    pub homotopy_witness_found: bool,
    pub homotopy_note: Option<String>,
    pub counterexample: Option<String>,
}

impl AxiomResult {
    fn new(name: &str, checked: usize, counterexample: Option<String>) -> Self {
        Self {
            name: name.to_string(),
            convention: None,
            required: true,
            checked,
            strict_pass: counterexample.is_none(),
            homotopy_witness_found: false,
            homotopy_note: None,
            counterexample,
        }
    }

    pub fn passes(&self) -> bool {
        self.strict_pass || self.homotopy_witness_found
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopfReport {
    pub spec: TruncationSpec,
    pub antipode: AntipodeChoice,
    pub selected_convention: Option<Convention>,
    pub axioms: Vec<AxiomResult>,
    pub all_pass: bool,
}

/// Runs `f` over `items` in parallel; returns the count and the first
/// counterexample in input order.
fn exhaust<T: Sync + Send>(items: &[T], f: impl Fn(&T) -> Option<String> + Sync + Send) -> (usize, Option<String>) {
    (items.len(), items.par_iter().find_map_first(f))
}

fn words_up_to(dc: &DComplex, spec: &TruncationSpec, max_degree: usize) -> Vec<Word> {
    (0..=max_degree)
        .flat_map(|n| truncated_basis(dc.k(), spec, n))
        .collect()
}

fn basis(w: &Word) -> DTensor {
    DTensor::basis(w.clone())
}

type Triple = LinComb<(Word, Word, Word)>;

fn coassoc_left(t: &DTensorPair) -> Triple {
    let mut out = Triple::zero();
    for ((a, b), c) in t {
        for ((a1, a2), c1) in &shuffle_coproduct(&basis(a)) {
            out.add_term((a1.clone(), a2.clone(), b.clone()), c * c1);
        }
    }
    out
}

fn coassoc_right(t: &DTensorPair) -> Triple {
    let mut out = Triple::zero();
    for ((a, b), c) in t {
        for ((b1, b2), c1) in &shuffle_coproduct(&basis(b)) {
            out.add_term((a.clone(), b1.clone(), b2.clone()), c * c1);
        }
    }
    out
}

impl DComplex {
    fn defect(&self, w: &Word, d: &DTensor) -> Option<String> {
        (!d.is_zero()).then(|| {
            format!(
                "P = {}: defect {}",
                format_word(self.pair(), w),
                format_tensor(self.pair(), d)
            )
        })
    }

    fn defect_pair(&self, w: &Word, d: &DTensorPair) -> Option<String> {
        (!d.is_zero()).then(|| {
            format!(
                "P = {}: defect {}",
                format_word(self.pair(), w),
                format_pair(self.pair(), d)
            )
        })
    }

    /// `d(d(P)) = 0` on every basis word of degree `≤ N`.
    pub fn check_d_squared(&self, spec: &TruncationSpec) -> AxiomResult {
        let words = words_up_to(self, spec, spec.max_degree);
        let (n, bad) = exhaust(&words, |w| {
            self.defect(w, &self.differential(&self.differential_word(w)))
        });
        AxiomResult::new("d_squared", n, bad)
    }

    /// `d(P∪Q) = dP∪Q + (−1)^{|P|} P∪dQ` for basis pairs with `|P|+|Q| ≤ N`.
    pub fn check_leibniz(&self, spec: &TruncationSpec) -> AxiomResult {
        let words = words_up_to(self, spec, spec.max_degree);
        let (_, bad) = exhaust(&words, |w| {
            let whole = self.differential_word(w);
            (0..=w.len()).find_map(|i| {
                let (p, q) = (w[..i].to_vec(), w[i..].to_vec());
                let rhs = cup(&self.differential_word(&p), &basis(&q))
                    .plus(&cup(&basis(&p), &self.differential_word(&q)).scaled(&rational::sign(i)));
                let d = whole.minus(&rhs);
                (!d.is_zero()).then(|| {
                    format!(
                        "P = {}, Q = {}: defect {}",
                        format_word(self.pair(), &p),
                        format_word(self.pair(), &q),
                        format_tensor(self.pair(), &d)
                    )
                })
            })
        });
        let pairs = words.iter().map(|w| w.len() + 1).sum();
        AxiomResult::new("leibniz", pairs, bad)
    }

    fn check_cup_associativity(&self, words: &[Word]) -> AxiomResult {
        let (_, bad) = exhaust(words, |w| {
            let n = w.len();
            (0..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).find_map(|(i, j)| {
                let (p, q, r) = (
                    basis(&w[..i].to_vec()),
                    basis(&w[i..j].to_vec()),
                    basis(&w[j..].to_vec()),
                );
                let d = cup(&cup(&p, &q), &r).minus(&cup(&p, &cup(&q, &r)));
                self.defect(w, &d)
            })
        });
        let triples = words.iter().map(|w| (w.len() + 1) * (w.len() + 2) / 2).sum();
        AxiomResult::new("cup_associativity", triples, bad)
    }

    fn check_coassociativity(&self, words: &[Word]) -> AxiomResult {
        let (n, bad) = exhaust(words, |w| {
            let t = shuffle_coproduct(&basis(w));
            (coassoc_left(&t) != coassoc_right(&t)).then(|| format!("P = {}", format_word(self.pair(), w)))
        });
        AxiomResult::new("coassociativity", n, bad)
    }

    fn check_coproduct_chain_map(&self, words: &[Word]) -> AxiomResult {
        let (n, bad) = exhaust(words, |w| {
            let lhs = shuffle_coproduct(&self.differential_word(w));
            let rhs = self.differential_pair(&shuffle_coproduct(&basis(w)));
            self.defect_pair(w, &lhs.minus(&rhs))
        });
        AxiomResult::new("coproduct_chain_map", n, bad)
    }

    fn check_unit_counit_chain_maps(&self, words: &[Word]) -> AxiomResult {
        let unit_ok = self.differential(&unit(rational::one())).is_zero();
        let (n, bad) = exhaust(words, |w| {
            let e = counit(&self.differential_word(w));
            (e != Rational::zero()).then(|| format!("ε(d({})) = {e}", format_word(self.pair(), w)))
        });
        let bad = if unit_ok {
            bad
        } else {
            Some("d(η(1)) ≠ 0".to_string())
        };
        AxiomResult::new("unit_counit_chain_maps", n + 1, bad)
    }

    fn check_bialgebra(&self, words: &[Word]) -> AxiomResult {
        let (_, bad) = exhaust(words, |w| {
            let whole = shuffle_coproduct(&basis(w));
            (0..=w.len()).find_map(|i| {
                let (p, q) = (w[..i].to_vec(), w[i..].to_vec());
                let rhs = multiply_pairs(&shuffle_coproduct(&basis(&p)), &shuffle_coproduct(&basis(&q)));
                let d = whole.minus(&rhs);
                (!d.is_zero()).then(|| {
                    format!(
                        "P = {}, Q = {}: defect {}",
                        format_word(self.pair(), &p),
                        format_word(self.pair(), &q),
                        format_pair(self.pair(), &d)
                    )
                })
            })
        });
        let pairs = words.iter().map(|w| w.len() + 1).sum();
        AxiomResult::new("bialgebra_compatibility", pairs, bad)
    }

    fn check_counit(&self, words: &[Word]) -> AxiomResult {
        let one = rational::one();
        let mut bad = None;
        if counit(&unit(one.clone())) != one {
            bad = Some("ε(η(1)) ≠ 1".to_string());
        }
        let e: Word = Vec::new();
        if shuffle_coproduct(&unit(one.clone())) != DTensorPair::basis((e.clone(), e)) {
            bad = bad.or(Some("Δ̃(η(1)) ≠ η(1)⊗η(1)".to_string()));
        }
        let (n, found) = exhaust(words, |w| {
            let t = shuffle_coproduct(&basis(w));
            let scalar = |x: &Word| unit(counit(&basis(x)));
            let left = multiply_pair(&map_pair(&t, scalar, basis));
            let right = multiply_pair(&map_pair(&t, basis, scalar));
            let p = basis(w);
            let split_ok = (0..=w.len()).all(|i| {
                counit(&cup(&basis(&w[..i].to_vec()), &basis(&w[i..].to_vec())))
                    == counit(&basis(&w[..i].to_vec())) * counit(&basis(&w[i..].to_vec()))
            });
            (left != p || right != p || !split_ok).then(|| format!("P = {}", format_word(self.pair(), w)))
        });
        AxiomResult::new("counit", n + 2, bad.or(found))
    }

    /// `μ(t⊗id)Δ̃ = ηε = μ(id⊗t)Δ̃` on basis words of degree `≤ N`.
    pub fn check_antipode(&self, spec: &TruncationSpec, convention: Convention) -> AxiomResult {
        let words = words_up_to(self, spec, spec.max_degree);
        let (n, bad) = exhaust(&words, |w| {
            let d = self.antipode_defect(w, convention);
            self.defect(w, &d)
        });
        let mut r = AxiomResult::new("antipode", n, bad);
        r.convention = Some(convention);
        r
    }

    /// `μ(t⊗id)Δ̃(P) − ηε(P)`, or the mirrored form if that one is nonzero.
    pub fn antipode_defect(&self, w: &Word, convention: Convention) -> DTensor {
        let t = shuffle_coproduct(&basis(w));
        let target = unit(counit(&basis(w)));
        let flip = |x: &Word| antipode(&basis(x), convention);
        let left = multiply_pair(&map_pair(&t, flip, basis)).minus(&target);
        if !left.is_zero() {
            return left;
        }
        multiply_pair(&map_pair(&t, basis, flip)).minus(&target)
    }

    /// `X·dP = d(X·P)` for every `h`-basis vector `X`.
    pub fn check_equivariance(&self, spec: &TruncationSpec) -> AxiomResult {
        let words = words_up_to(self, spec, spec.max_degree);
        let m = self.pair().sub_dim();
        let (n, bad) = exhaust(&words, |w| {
            (0..m).find_map(|i| {
                let lhs = self.differential_word(w).map_linear(|x| self.act_word(i, x));
                let rhs = self.differential(&self.act_word(i, w));
                self.defect(w, &lhs.minus(&rhs))
            })
        });
        AxiomResult::new("h_equivariance_of_d", n * m, bad)
    }

    /// No operation raises the largest leg weight.
    pub fn check_filtration(&self, spec: &TruncationSpec) -> AxiomResult {
        let words = words_up_to(self, spec, spec.max_degree);
        let m = self.pair().sub_dim();
        let (n, bad) = exhaust(&words, |w| {
            let p = basis(w);
            let lw = leg_weight(&p);
            let mut ok = leg_weight(&self.differential(&p)) <= lw
                && leg_weight(&antipode(&p, Convention::Alternate)) <= lw
                && (0..m).all(|i| leg_weight(&self.act_word(i, w)) <= lw);
            for ((a, b), _) in &shuffle_coproduct(&p) {
                ok &= leg_weight(&basis(a)) <= lw && leg_weight(&basis(b)) <= lw;
            }
            (!ok).then(|| format!("P = {}", format_word(self.pair(), w)))
        });
        AxiomResult::new("filtration", n, bad)
    }
}

/// Outcome of looking for `H` with `F = dH + Hd`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomotopyOutcome {
    /// `F` does not commute with `d`, so no null-homotopy can exist.
    NotChainMap {
        counterexample: String,
    },
    Found {
        homotopy: BTreeMap<Word, DTensor>,
    },
    NotFound,
}

/// Searches for a weight-preserving `H: Dⁿ → Dⁿ⁻¹` with `F = dH + Hd` on the
/// total-weight blocks `0..=w` in degrees `0..=N`. `F` must preserve total
/// weight and degree.
pub fn homotopy_search(
    dc: &DComplex,
    spec: &TruncationSpec,
    f: &(dyn Fn(&Word) -> DTensor + Sync),
) -> Result<HomotopyOutcome> {
    let k = dc.k();
    for total in 0..=spec.max_weight {
        for n in 0..=spec.max_degree {
            for w in block_basis(k, total, n) {
                let lhs = dc.differential(&f(&w));
                let rhs = dc.differential_word(&w).map_linear(|x| f(x));
                let d = lhs.minus(&rhs);
                if !d.is_zero() {
                    return Ok(HomotopyOutcome::NotChainMap {
                        counterexample: format!(
                            "dF − Fd on {}: {}",
                            format_word(dc.pair(), &w),
                            format_tensor(dc.pair(), &d)
                        ),
                    });
                }
            }
        }
    }
    let mut homotopy = BTreeMap::new();
    for total in 0..=spec.max_weight {
        let blocks: Vec<Vec<Word>> = (0..=spec.max_degree + 1).map(|n| block_basis(k, total, n)).collect();
        // unknown h[n][(i, j)]: coefficient of blocks[n−1][i] in H(blocks[n][j])
        let mut offsets = vec![0usize; blocks.len() + 1];
        for n in 1..blocks.len() {
            offsets[n + 1] = offsets[n] + blocks[n].len() * blocks[n - 1].len();
        }
        let var = |n: usize, i: usize, j: usize| offsets[n] + j * blocks[n - 1].len() + i;
        let unknowns = offsets[blocks.len()];
        let mut rows: Vec<BTreeMap<usize, Rational>> = Vec::new();
        let mut rhs = Vec::new();
        for n in 0..=spec.max_degree {
            let index: HashMap<&Word, usize> = blocks[n].iter().enumerate().map(|(i, w)| (w, i)).collect();
            let d_below = if n == 0 {
                None
            } else {
                Some(map_matrix(&blocks[n - 1], &blocks[n], |w| dc.differential_word(w))?)
            };
            let next_index: HashMap<&Word, usize> = blocks[n + 1].iter().enumerate().map(|(i, w)| (w, i)).collect();
            for (x, xw) in blocks[n].iter().enumerate() {
                let fx = f(xw);
                let dx = dc.differential_word(xw);
                for (y, _) in blocks[n].iter().enumerate() {
                    let mut row = BTreeMap::new();
                    if let Some(db) = &d_below {
                        for i in 0..blocks[n - 1].len() {
                            let c = db.get(y, i);
                            if c != Rational::zero() {
                                *row.entry(var(n, i, x)).or_insert_with(Rational::default) += c;
                            }
                        }
                    }
                    for (z, c) in &dx {
                        let zi = next_index[z];
                        *row.entry(var(n + 1, y, zi)).or_insert_with(Rational::default) += c;
                    }
                    row.retain(|_, v| *v != Rational::zero());
                    rows.push(row);
                    rhs.push(fx.coeff(&blocks[n][y]));
                }
                for t in fx.keys() {
                    if !index.contains_key(t) {
                        return Err(crate::Error::OutsideTruncation(
                            "map does not preserve weight and degree".to_string(),
                        ));
                    }
                }
            }
        }
        let mut m = linalg::SparseMatrix::zeros(rows.len(), unknowns);
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row {
                m.set(r, *c, v.clone());
            }
        }
        let Some(x) = linalg::solve(&m, &rhs)? else {
            return Ok(HomotopyOutcome::NotFound);
        };
        for n in 1..blocks.len() {
            for (j, src) in blocks[n].iter().enumerate() {
                let image: DTensor = blocks[n - 1]
                    .iter()
                    .enumerate()
                    .map(|(i, t)| (t.clone(), x[var(n, i, j)].clone()))
                    .collect();
                if !image.is_zero() {
                    homotopy.insert(src.clone(), image);
                }
            }
        }
    }
    Ok(HomotopyOutcome::Found { homotopy })
}

fn record_homotopy(dc: &DComplex, spec: &TruncationSpec, row: &mut AxiomResult, convention: Convention) -> Result<()> {
    if row.strict_pass {
        return Ok(());
    }
    let defect = |w: &Word| {
        let t = shuffle_coproduct(&basis(w));
        let flip = |x: &Word| antipode(&basis(x), convention);
        multiply_pair(&map_pair(&t, flip, basis)).minus(&unit(counit(&basis(w))))
    };
    match homotopy_search(dc, spec, &defect)? {
        HomotopyOutcome::NotChainMap { counterexample } => {
            row.homotopy_note = Some(format!(
                "defect is not a chain map, so no null-homotopy exists ({counterexample})"
            ));
        }
        HomotopyOutcome::Found { homotopy } => {
            row.homotopy_witness_found = true;
            row.homotopy_note = Some(format!(
                "null-homotopy found with {} nonzero basis images",
                homotopy.len()
            ));
        }
        HomotopyOutcome::NotFound => {
            row.homotopy_note = Some("defect is a chain map but not null-homotopic in the truncation".to_string());
        }
    }
    Ok(())
}

/// All Hopf checks at `(w, N)`. With [`AntipodeChoice::Auto`] both sign
/// conventions are run and the first strict pass (alternate, then standard) is
/// selected. Under [`AntipodeChoice::Alternate`] the antipode row is reported but
/// does not decide the verdict.
pub fn hopf_axiom_report(dc: &DComplex, spec: &TruncationSpec, choice: AntipodeChoice) -> Result<HopfReport> {
    let words = words_up_to(dc, spec, spec.max_degree);
    let mut axioms = vec![
        dc.check_d_squared(spec),
        dc.check_leibniz(spec),
        dc.check_cup_associativity(&words),
        dc.check_coassociativity(&words),
        dc.check_coproduct_chain_map(&words),
        dc.check_unit_counit_chain_maps(&words),
        dc.check_bialgebra(&words),
        dc.check_counit(&words),
        dc.check_equivariance(spec),
        dc.check_filtration(spec),
    ];
    let conventions: &[Convention] = match choice {
        AntipodeChoice::Alternate => &[Convention::Alternate],
        AntipodeChoice::Standard => &[Convention::Standard],
        AntipodeChoice::Auto => &[Convention::Alternate, Convention::Standard],
    };
    let mut rows: Vec<AxiomResult> = Vec::new();
    for &c in conventions {
        let mut row = dc.check_antipode(spec, c);
        record_homotopy(dc, spec, &mut row, c)?;
        rows.push(row);
    }
    let selected = match choice {
        AntipodeChoice::Auto => rows.iter().find(|r| r.strict_pass).and_then(|r| r.convention),
        AntipodeChoice::Alternate => Some(Convention::Alternate),
        AntipodeChoice::Standard => Some(Convention::Standard),
    };
    for row in &mut rows {
        row.required = choice != AntipodeChoice::Alternate && row.convention == selected;
    }
    axioms.extend(rows);
    let antipode_ok = choice == AntipodeChoice::Alternate || selected.is_some();
    let all_pass = antipode_ok && axioms.iter().filter(|a| a.required).all(AxiomResult::passes);
    Ok(HopfReport {
        spec: *spec,
        antipode: choice,
        selected_convention: selected,
        axioms,
        all_pass,
    })
}
