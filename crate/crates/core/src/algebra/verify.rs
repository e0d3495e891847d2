//! Cross-check of the sign-map fast path against the doubling oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{CdAlgebra, Element, Gammas};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};
use crate::twist::{self, TwistTerm};

/// Largest level accepted by exhaustive verification.
pub const MAX_EXHAUSTIVE_LEVEL: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Random { n: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub p: u64,
    pub q: u64,
    pub twist: String,
    pub oracle: String,
}

/// Outcome of a verification run. An empty `disagreements` list and an empty
/// `multi_term` list mean the fast path reproduced every checked product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub t: u32,
    pub gammas: String,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub pairs_checked: u64,
    pub disagreements: Vec<Disagreement>,
    /// Pairs whose oracle product is not a single nonzero term.
    pub multi_term: Vec<(u64, u64)>,
    pub passed: bool,
}

impl Report {
    pub fn summary(&self) -> String {
        format!("{} pairs, {} disagreements", self.pairs_checked, self.disagreements.len())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    fn merge(mut self, other: Report) -> Report {
        self.pairs_checked += other.pairs_checked;
        self.disagreements.extend(other.disagreements);
        self.multi_term.extend(other.multi_term);
        self.passed = self.disagreements.is_empty() && self.multi_term.is_empty();
        self
    }
}

fn pairs(t: u32, mode: Mode) -> Result<Vec<(u64, u64)>> {
    let n = 1u64 << t;
    match mode {
        Mode::Exhaustive => {
            if t > MAX_EXHAUSTIVE_LEVEL {
                return Err(Error::InvalidParameter(format!(
                    "exhaustive verification is limited to t <= {MAX_EXHAUSTIVE_LEVEL}"
                )));
            }
            Ok((0..n * n).map(|k| (k / n, k % n)).collect())
        }
        Mode::Random { n: count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((0..count).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect())
        }
    }
}

fn check_pairs<S: Scalar>(
    alg: &CdAlgebra<S>,
    pairs: &[(u64, u64)],
    expected: impl Fn(&TwistTerm) -> Result<S> + Sync,
    empty: Report,
) -> Result<Report> {
    let t = alg.levels();
    let one = S::one_in(alg.field());
    pairs
        .par_chunks(1024)
        .map(|chunk| {
            let mut r = empty.clone();
            for &(p, q) in chunk {
                r.pairs_checked += 1;
                let fast = twist::basis_product_unchecked(t, p, q);
                let oracle =
                    alg.mul(&Element::basis(p, one.clone()), &Element::basis(q, one.clone()))?;
                if oracle.len() != 1 {
                    r.multi_term.push((p, q));
                }
                let want = Element::basis(fast.index, expected(&fast)?);
                if oracle != want {
                    r.disagreements.push(Disagreement {
                        p,
                        q,
                        twist: fast.to_string(),
                        oracle: oracle.to_string(),
                    });
                }
            }
            Ok(r)
        })
        .try_reduce(|| empty.clone(), |a, b| Ok(a.merge(b)))
}

/// Compares `twist::basis_product` with the oracle product of basis vectors
/// of `E_t`, either for all `4^t` pairs or for `n` seeded random pairs.
pub fn verify_twist_vs_oracle(t: u32, gammas: &Gammas, mode: Mode) -> Result<Report> {
    twist::BasisIndex::new(0, t)?;
    let pairs = pairs(t, mode)?;
    let empty = Report {
        t,
        gammas: gammas.to_string(),
        mode: match mode {
            Mode::Exhaustive => "exhaustive".into(),
            Mode::Random { .. } => "random".into(),
        },
        seed: match mode {
            Mode::Exhaustive => None,
            Mode::Random { seed, .. } => Some(seed),
        },
        pairs_checked: 0,
        disagreements: Vec::new(),
        multi_term: Vec::new(),
        passed: true,
    };
    let mut report = match gammas {
        Gammas::Symbolic => {
            let alg = CdAlgebra::symbolic_tower(t)?;
            check_pairs(&alg, &pairs, |term| Ok(term.coefficient()), empty)?
        }
        Gammas::Concrete(g) => {
            if g.len() != t as usize {
                return Err(Error::InvalidParameter(format!(
                    "expected {t} parameter values, got {}",
                    g.len()
                )));
            }
            let alg = CdAlgebra::rational_tower(g)?;
            check_pairs(&alg, &pairs, |term: &TwistTerm| term.evaluate(g), empty)?
        }
    };
    report.disagreements.sort_by_key(|d| (d.p, d.q));
    report.multi_term.sort_unstable();
    report.passed = report.disagreements.is_empty() && report.multi_term.is_empty();
    Ok(report)
}

/// Convenience for concrete parameter lists.
pub fn verify_concrete(t: u32, gammas: &[Rational], mode: Mode) -> Result<Report> {
    verify_twist_vs_oracle(t, &Gammas::Concrete(gammas.to_vec()), mode)
}
