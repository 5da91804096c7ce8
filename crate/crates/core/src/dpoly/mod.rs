//! The complex `D• = ⊕ₙ (D¹)^{⊗n}` with its coboundary, cup product,
//! shuffle coproduct, antipode, unit and counit.
//!
//! A basis tensor is a [`Word`]: a list of `D¹` monomials, one per leg. The
//! empty word is the unit of `D⁰ = ℚ`. Elements of mixed degree are allowed
//! in a [`DTensor`]; the degree of a word is its length.

mod hopf;
mod oracle;
mod truncation;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::LiePair;
use crate::lincomb::LinComb;
use crate::pbw::{self, D1Element, Enveloping, Monomial};
use crate::rational::{self, Rational};

pub use hopf::{homotopy_search, hopf_axiom_report, AntipodeChoice, AxiomResult, HomotopyOutcome, HopfReport};
pub use oracle::{expected_graded_betti, graded_oracle_betti, OracleEntry};
pub use truncation::{
    block_basis, coboundary_witness_dpoly, cohomology_report, coordinates, map_matrix, truncated_basis, CohomologyRow,
    TruncationSpec,
};

pub type Word = Vec<Monomial>;
pub type DTensor = LinComb<Word>;
pub type DTensorPair = LinComb<(Word, Word)>;

/// Sign convention for the antipode `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `(−1)^{n(n−1)/2}` times leg reversal; `paper` in reports.
    #[serde(rename = "paper")]
    Alternate,
    /// `(−1)^{n(n+1)/2}` times leg reversal.
    Standard,
}

impl Convention {
    pub fn sign(self, n: usize) -> Rational {
        match self {
            Self::Alternate => rational::sign(n * n.saturating_sub(1) / 2),
            Self::Standard => rational::sign(n * (n + 1) / 2),
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Alternate => "paper",
            Self::Standard => "standard",
        })
    }
}

pub fn word_weight(w: &[Monomial]) -> usize {
    w.iter().map(Monomial::weight).sum()
}

fn max_leg_weight(w: &[Monomial]) -> usize {
    w.iter().map(Monomial::weight).max().unwrap_or(0)
}

/// Largest total weight of a term.
pub fn weight(p: &DTensor) -> usize {
    p.keys().map(|w| word_weight(w)).max().unwrap_or(0)
}

/// Largest weight of a single leg.
pub fn leg_weight(p: &DTensor) -> usize {
    p.keys().map(|w| max_leg_weight(w)).max().unwrap_or(0)
}

/// The common degree of all terms; `0` for the zero tensor.
pub fn degree(p: &DTensor) -> Result<usize> {
    let mut it = p.keys().map(Vec::len);
    let first = it.next().unwrap_or(0);
    if it.all(|d| d == first) {
        Ok(first)
    } else {
        Err(Error::NonHomogeneous)
    }
}

pub fn unit(r: Rational) -> DTensor {
    DTensor::term(Vec::new(), r)
}

/// The `D⁰` component.
pub fn counit(p: &DTensor) -> Rational {
    p.coeff(&Vec::new())
}

/// Sum of coefficients of the all-`1̄` words `1̄⊗…⊗1̄` in every degree, the
/// legwise extension of the `D¹` counit.
pub fn legwise_counit(p: &DTensor) -> Rational {
    p.iter()
        .filter(|(w, _)| w.iter().all(Monomial::is_one))
        .fold(Rational::zero(), |acc, (_, c)| acc + c)
}

/// Embeds a `D¹` element as a degree-one tensor.
pub fn from_d1(p: &D1Element) -> DTensor {
    p.iter().map(|(m, c)| (vec![m.clone()], c.clone())).collect()
}

/// Concatenation `P ⊗̃ Q`.
pub fn cup(p: &DTensor, q: &DTensor) -> DTensor {
    let mut out = DTensor::zero();
    for (a, ca) in p {
        for (b, cb) in q {
            let mut w = a.clone();
            w.extend(b.iter().cloned());
            out.add_term(w, ca * cb);
        }
    }
    out
}

/// Sum over `(i, j)`-shuffles with the permutation sign.
pub fn shuffle_coproduct(p: &DTensor) -> DTensorPair {
    let mut out = DTensorPair::zero();
    for (w, c) in p {
        for_each_shuffle(w.len(), |left, sgn| {
            let (mut a, mut b) = (Vec::new(), Vec::new());
            for (i, leg) in w.iter().enumerate() {
                if left[i] {
                    a.push(leg.clone());
                } else {
                    b.push(leg.clone());
                }
            }
            out.add_term((a, b), if sgn { -c } else { c.clone() });
        });
    }
    out
}

/// Calls `f(mask, odd)` for every subset of `0..n` (the positions sent to the
/// left factor), with `odd` the parity of the corresponding shuffle.
fn for_each_shuffle(n: usize, mut f: impl FnMut(&[bool], bool)) {
    let mut mask = vec![false; n];
    for bits in 0u64..(1u64 << n) {
        let mut right_seen = 0usize;
        let mut inversions = 0usize;
        for (i, m) in mask.iter_mut().enumerate() {
            *m = bits >> i & 1 == 1;
            if *m {
                inversions += right_seen;
            } else {
                right_seen += 1;
            }
        }
        f(&mask, inversions % 2 == 1);
    }
}

/// Signed leg reversal.
pub fn antipode(p: &DTensor, convention: Convention) -> DTensor {
    p.iter()
        .map(|(w, c)| {
            let mut r = w.clone();
            r.reverse();
            (r, c * convention.sign(w.len()))
        })
        .collect()
}

/// Concatenation of the two factors, with no sign.
pub fn multiply_pair(t: &DTensorPair) -> DTensor {
    t.iter()
        .map(|((a, b), c)| {
            let mut w = a.clone();
            w.extend(b.iter().cloned());
            (w, c.clone())
        })
        .collect()
}

/// Product in `D•⊗D•`: `(A⊗B)(C⊗D) = (−1)^{|B||C|} AC⊗BD`.
pub fn multiply_pairs(s: &DTensorPair, t: &DTensorPair) -> DTensorPair {
    let mut out = DTensorPair::zero();
    for ((a, b), c1) in s {
        for ((x, y), c2) in t {
            let mut l = a.clone();
            l.extend(x.iter().cloned());
            let mut r = b.clone();
            r.extend(y.iter().cloned());
            let v = c1 * c2 * rational::sign(b.len() * x.len());
            out.add_term((l, r), v);
        }
    }
    out
}

/// Applies linear maps to both factors, `(f ⊗ g)(A⊗B) = f(A)⊗g(B)`.
pub fn map_pair(
    t: &DTensorPair,
    mut f: impl FnMut(&Word) -> DTensor,
    mut g: impl FnMut(&Word) -> DTensor,
) -> DTensorPair {
    let mut out = DTensorPair::zero();
    for ((a, b), c) in t {
        let fa = f(a);
        if fa.is_zero() {
            continue;
        }
        for (b2, cb) in &g(b) {
            for (a2, ca) in &fa {
                out.add_term((a2.clone(), b2.clone()), c * ca * cb);
            }
        }
    }
    out
}

/// Formats a word as `f^2⊗1⊗f`; the empty word is `∅`.
pub fn format_word(pair: &LiePair, w: &[Monomial]) -> String {
    if w.is_empty() {
        return "∅".to_string();
    }
    w.iter()
        .map(|m| pbw::format_d1_monomial(pair, m))
        .collect::<Vec<_>>()
        .join("⊗")
}

pub fn format_tensor(pair: &LiePair, p: &DTensor) -> String {
    pbw::format_terms(p.iter().rev().map(|(w, c)| {
        let body = if w.is_empty() {
            String::new()
        } else {
            format_word(pair, w)
        };
        (body, c)
    }))
}

pub fn format_pair(pair: &LiePair, t: &DTensorPair) -> String {
    pbw::format_terms(
        t.iter()
            .rev()
            .map(|((a, b), c)| (format!("({})⊠({})", format_word(pair, a), format_word(pair, b)), c)),
    )
}

type LegCoproduct = Arc<Vec<(Monomial, Monomial, Rational)>>;

/// A Lie pair together with its enveloping algebra and a cache of leg
/// coproducts; the context for every operation that needs `Δ` or the
/// `h`-action on `D¹`.
#[derive(Debug)]
pub struct DComplex {
    env: Enveloping,
    coproducts: RwLock<HashMap<Monomial, LegCoproduct>>,
}

impl DComplex {
    pub fn new(pair: LiePair) -> Self {
        Self {
            env: Enveloping::new(pair),
            coproducts: RwLock::new(HashMap::new()),
        }
    }

    pub fn pair(&self) -> &LiePair {
        self.env.pair()
    }

    pub fn env(&self) -> &Enveloping {
        &self.env
    }

    /// `k = dim g/h`, the number of variables of a `D¹` monomial.
    pub fn k(&self) -> usize {
        self.pair().quotient_dim()
    }

    fn leg_coproduct(&self, m: &Monomial) -> LegCoproduct {
        if let Some(hit) = self.coproducts.read().expect("cache poisoned").get(m) {
            return hit.clone();
        }
        let terms: Vec<_> = self
            .env
            .coproduct_d1(&D1Element::basis(m.clone()))
            .into_iter()
            .map(|((a, b), c)| (a, b, c))
            .collect();
        let terms = Arc::new(terms);
        self.coproducts
            .write()
            .expect("cache poisoned")
            .insert(m.clone(), terms.clone());
        terms
    }

    /// `d(p₁⊗…⊗pₙ) = 1⊗P + Σᵢ (−1)^i p₁⊗…⊗Δpᵢ⊗…⊗pₙ + (−1)^{n+1} P⊗1`.
    /// On `D⁰` the two outer terms cancel.
    pub fn differential_word(&self, w: &[Monomial]) -> DTensor {
        let n = w.len();
        let one = Monomial::one(self.k());
        let mut out = DTensor::zero();
        let mut front = Vec::with_capacity(n + 1);
        front.push(one.clone());
        front.extend(w.iter().cloned());
        out.add_term(front, rational::one());
        for (i, leg) in w.iter().enumerate() {
            let s = rational::sign(i + 1);
            for (a, b, c) in self.leg_coproduct(leg).iter() {
                let mut t = Vec::with_capacity(n + 1);
                t.extend(w[..i].iter().cloned());
                t.push(a.clone());
                t.push(b.clone());
                t.extend(w[i + 1..].iter().cloned());
                out.add_term(t, &s * c);
            }
        }
        let mut back = w.to_vec();
        back.push(one);
        out.add_term(back, rational::sign(n + 1));
        out
    }

    pub fn differential(&self, p: &DTensor) -> DTensor {
        p.map_linear(|w| self.differential_word(w))
    }

    /// `d⊗1 + 1⊗d` on `D•⊗D•` with the Koszul sign `(−1)^{|A|}`.
    pub fn differential_pair(&self, t: &DTensorPair) -> DTensorPair {
        let mut out = DTensorPair::zero();
        for ((a, b), c) in t {
            for (a2, c2) in &self.differential_word(a) {
                out.add_term((a2.clone(), b.clone()), c * c2);
            }
            let s = rational::sign(a.len());
            for (b2, c2) in &self.differential_word(b) {
                out.add_term((a.clone(), b2.clone()), c * c2 * &s);
            }
        }
        out
    }

    /// Action of `x_i ∈ h` (basis index `i`) on a word, Leibniz over legs.
    pub fn act_word(&self, i: usize, w: &[Monomial]) -> DTensor {
        let mut out = DTensor::zero();
        for (pos, leg) in w.iter().enumerate() {
            for (m, c) in &self.env.act_d1_basis(i, leg) {
                let mut t = w.to_vec();
                t[pos] = m.clone();
                out.add_term(t, c.clone());
            }
        }
        out
    }

    pub fn act_tensor(&self, x: &[Rational], p: &DTensor) -> Result<DTensor> {
        self.pair().check_in_subalgebra(x)?;
        let mut out = DTensor::zero();
        for (i, xi) in x.iter().enumerate().take(self.pair().sub_dim()) {
            if !xi.is_zero() {
                out.add_scaled(&p.map_linear(|w| self.act_word(i, w)), xi);
            }
        }
        Ok(out)
    }
}
