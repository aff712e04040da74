//! Bounded exhaustive searches over surgery coefficients.
//!
//! Three generators, all exact and deterministic:
//!
//! * [`enumerate_pair_solutions`] solves `|q1*q2*l^2 - 1| = 1` over a box of
//!   linking numbers and reciprocal-integer slopes, the equation governing
//!   when surgery on a two-component link and on each of its components has
//!   trivial first homology.
//! * [`enumerate_triple_obstructions`] finds three-component configurations
//!   that pass every pairwise test yet fail homologically as a whole, so the
//!   pairwise conditions alone are visibly not sufficient.
//! * [`enumerate_hopf_brunnian_slopes`] streams every multi-slope that
//!   [`certify_split_hopf_form`](crate::adjacency::certify_split_hopf_form)
//!   accepts on a declared split union of Hopf links and unknots.
//!
//! Outputs are ordered lexicographically over their defining tuples so that
//! two runs (or two partitions of a run merged back together) diff cleanly.

use crate::adjacency::{check_pair_classification, SplitHopfStructure};
use crate::homology::{h1_order, Order};
use crate::link::FramedLink;
use crate::matrix::IntMatrix;
use crate::slope::Slope;
use num_bigint::BigInt;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error("bound {name} must be at least {min}, got {got}")]
    BoundTooSmall {
        name: &'static str,
        min: i64,
        got: i64,
    },
    #[error("invalid split structure: {0}")]
    Structure(#[from] crate::adjacency::AdjacencyError),
}

/// One solution `(linking, q1, q2)` of `|q1*q2*linking^2 - 1| = 1`, read as
/// the two-component link with the given linking number and surgery slopes
/// `1/q1`, `1/q2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PairSolution {
    pub linking: i64,
    pub q1: i64,
    pub q2: i64,
}

impl PairSolution {
    pub fn slopes(&self) -> (Slope, Slope) {
        let s = |q: i64| Slope::new(1, q).expect("nonzero reciprocal denominator");
        (s(self.q1), s(self.q2))
    }

    /// The two-component framed link this solution describes.
    pub fn to_link(&self) -> FramedLink {
        let (s1, s2) = self.slopes();
        let mut linking = IntMatrix::zeros(2, 2);
        linking.set(0, 1, BigInt::from(self.linking));
        linking.set(1, 0, BigInt::from(self.linking));
        FramedLink::new(vec![s1, s2], linking).expect("2x2 symmetric linking data")
    }

    pub fn csv_line(&self) -> String {
        format!("{},{},{}", self.linking, self.q1, self.q2)
    }
}

impl fmt::Display for PairSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.linking, self.q1, self.q2)
    }
}

/// All solutions within a box, split into the two families the equation
/// admits: linking number zero (where every choice of nonzero `q1`, `q2`
/// works) and nonzero linking (forced to `|linking| = 1`, `q1*q2 = 2`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairSolutions {
    pub zero_linking: Vec<PairSolution>,
    pub exceptional: Vec<PairSolution>,
}

impl PairSolutions {
    /// Both families merged, sorted lexicographically over
    /// `(linking, q1, q2)`.
    pub fn all(&self) -> Vec<PairSolution> {
        let mut merged: Vec<PairSolution> = self
            .zero_linking
            .iter()
            .chain(&self.exceptional)
            .copied()
            .collect();
        merged.sort();
        merged
    }

    pub fn len(&self) -> usize {
        self.zero_linking.len() + self.exceptional.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn nonzero_range(bound: i64) -> impl Iterator<Item = i64> {
    (-bound..=bound).filter(|v| *v != 0)
}

/// Enumerates all `(linking, q1, q2)` with `|linking| <= bound_l`,
/// `1 <= |q_i| <= bound_q`, and `|q1*q2*linking^2 - 1| = 1`.
///
/// These are exactly the parameters for which surgery on the two-component
/// link with that linking number and slopes `1/q1`, `1/q2` has trivial first
/// homology, as does surgery on each component alone.  Both returned
/// families are sorted lexicographically.
pub fn enumerate_pair_solutions(
    bound_l: i64,
    bound_q: i64,
) -> Result<PairSolutions, EnumerateError> {
    for (name, got) in [("bound_l", bound_l), ("bound_q", bound_q)] {
        if got < 1 {
            return Err(EnumerateError::BoundTooSmall { name, min: 1, got });
        }
    }
    let mut zero_linking = Vec::new();
    let mut exceptional = Vec::new();
    for linking in -bound_l..=bound_l {
        for q1 in nonzero_range(bound_q) {
            for q2 in nonzero_range(bound_q) {
                let det = (i128::from(q1) * i128::from(q2) * i128::from(linking).pow(2) - 1).abs();
                if det != 1 {
                    continue;
                }
                let solution = PairSolution { linking, q1, q2 };
                if linking == 0 {
                    zero_linking.push(solution);
                } else {
                    exceptional.push(solution);
                }
            }
        }
    }
    Ok(PairSolutions {
        zero_linking,
        exceptional,
    })
}

/// A three-component configuration whose proper sublinks all produce
/// homology spheres while the full surgery does not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleObstruction {
    /// Pairwise linking numbers `(l12, l13, l23)`.
    pub linking: [i64; 3],
    pub slopes: [Slope; 3],
    /// Order of the first homology of the full surgery; never 1.
    pub order: Order,
}

impl TripleObstruction {
    pub fn to_link(&self) -> FramedLink {
        let [l12, l13, l23] = self.linking;
        let mut linking = IntMatrix::zeros(3, 3);
        for (i, j, l) in [(0, 1, l12), (0, 2, l13), (1, 2, l23)] {
            linking.set(i, j, BigInt::from(l));
            linking.set(j, i, BigInt::from(l));
        }
        FramedLink::new(self.slopes.to_vec(), linking).expect("3x3 symmetric linking data")
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.linking[0],
            self.linking[1],
            self.linking[2],
            self.slopes[0],
            self.slopes[1],
            self.slopes[2],
            self.order
        )
    }
}

impl fmt::Display for TripleObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "linking ({}, {}, {}) slopes ({}, {}, {}) order {}",
            self.linking[0],
            self.linking[1],
            self.linking[2],
            self.slopes[0],
            self.slopes[1],
            self.slopes[2],
            self.order
        )
    }
}

/// Reciprocal-integer slopes `1/k` for `1 <= |k| <= bound`, ascending.
fn reciprocal_slopes(bound: i64) -> Vec<Slope> {
    let mut slopes: Vec<Slope> = nonzero_range(bound)
        .map(|k| Slope::new(1, k).expect("nonzero reciprocal denominator"))
        .collect();
    slopes.sort();
    slopes
}

/// Searches all three-component configurations with pairwise linking numbers
/// in `{-1, 0, 1}` and slopes `1/k`, `1 <= |k| <= bound_q`, keeping those
/// where every pair passes [`check_pair_classification`] but the full
/// surgery has nontrivial first homology.
///
/// Every proper sublink of such a configuration produces a homology sphere,
/// so nothing short of the full three-component homology computation rules
/// it out.  Output is sorted lexicographically over `(linking, slopes)`.
pub fn enumerate_triple_obstructions(
    bound_q: i64,
) -> Result<Vec<TripleObstruction>, EnumerateError> {
    if bound_q < 2 {
        return Err(EnumerateError::BoundTooSmall {
            name: "bound_q",
            min: 2,
            got: bound_q,
        });
    }
    let slopes = reciprocal_slopes(bound_q);
    let mut out = Vec::new();
    for l12 in -1..=1_i64 {
        for l13 in -1..=1_i64 {
            for l23 in -1..=1_i64 {
                for s1 in &slopes {
                    for s2 in &slopes {
                        if !check_pair_classification(l12, s1, s2).passed() {
                            continue;
                        }
                        for s3 in &slopes {
                            if !check_pair_classification(l13, s1, s3).passed()
                                || !check_pair_classification(l23, s2, s3).passed()
                            {
                                continue;
                            }
                            let candidate = TripleObstruction {
                                linking: [l12, l13, l23],
                                slopes: [s1.clone(), s2.clone(), s3.clone()],
                                order: Order::Infinite,
                            };
                            let order = h1_order(&candidate.to_link())
                                .expect("slopes are finite by construction");
                            if order.is_trivial() {
                                continue;
                            }
                            out.push(TripleObstruction { order, ..candidate });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Stream of multi-slopes accepted on a split union of Hopf links and
/// unknots, in lexicographic order.  Materialized eagerly; the searches are
/// small by construction.
#[derive(Debug)]
pub struct HopfBrunnianSlopes {
    inner: std::vec::IntoIter<Vec<Slope>>,
}

impl Iterator for HopfBrunnianSlopes {
    type Item = Vec<Slope>;

    fn next(&mut self) -> Option<Self::Item> {
        self.inner.next()
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.inner.size_hint()
    }
}

impl ExactSizeIterator for HopfBrunnianSlopes {}

/// The four sign-coupled slope assignments a Hopf pair admits, as
/// `(slope on first member, slope on second member)`.
fn coupled_pair_options() -> Vec<(Slope, Slope)> {
    let s = |p: i64, q: i64| Slope::new(p, q).expect("nonzero slope data");
    vec![
        (s(1, 1), s(1, 2)),
        (s(1, 2), s(1, 1)),
        (s(-1, 1), s(-1, 2)),
        (s(-1, 2), s(-1, 1)),
    ]
}

/// Enumerates every multi-slope on `n` components that
/// [`certify_split_hopf_form`](crate::adjacency::certify_split_hopf_form)
/// accepts for the split structure with the given Hopf `pairs` (components
/// not in any pair are unknot singletons), with singleton slopes restricted
/// to `1/k`, `1 <= |k| <= bound_k`.
///
/// Each pair contributes its four sign-coupled `(1, 1/2)` assignments and
/// each singleton its `2 * bound_k` reciprocal slopes, so the stream has
/// exactly `4^pairs * (2*bound_k)^singletons` entries, lexicographically
/// ordered as slope vectors.  Overlapping or out-of-range pairs are
/// rejected.
pub fn enumerate_hopf_brunnian_slopes(
    n: usize,
    pairs: &[(usize, usize)],
    bound_k: i64,
) -> Result<HopfBrunnianSlopes, EnumerateError> {
    if bound_k < 1 {
        return Err(EnumerateError::BoundTooSmall {
            name: "bound_k",
            min: 1,
            got: bound_k,
        });
    }
    let mut covered = vec![false; n];
    for &(a, b) in pairs {
        for idx in [a, b] {
            if idx >= n {
                return Err(crate::adjacency::AdjacencyError::InconsistentDeclaration(
                    format!("component index {idx} out of range for {n} components"),
                )
                .into());
            }
            covered[idx] = true;
        }
    }
    let singletons: Vec<usize> = (0..n).filter(|&i| !covered[i]).collect();
    let structure = SplitHopfStructure::new(pairs.to_vec(), singletons.clone());
    structure.validate(n)?;

    // Each site is one pair or one singleton; an option assigns slopes to
    // the site's positions.
    let mut sites: Vec<Vec<Vec<(usize, Slope)>>> = Vec::new();
    for &(a, b) in pairs {
        sites.push(
            coupled_pair_options()
                .into_iter()
                .map(|(sa, sb)| vec![(a, sa), (b, sb)])
                .collect(),
        );
    }
    for &s in &singletons {
        sites.push(
            reciprocal_slopes(bound_k)
                .into_iter()
                .map(|slope| vec![(s, slope)])
                .collect(),
        );
    }

    let mut out: Vec<Vec<Slope>> = Vec::new();
    if n > 0 {
        let mut cursor = vec![0usize; sites.len()];
        'product: loop {
            let mut multi = vec![Slope::infinity(); n];
            for (site, &choice) in sites.iter().zip(&cursor) {
                for (position, slope) in &site[choice] {
                    multi[*position] = slope.clone();
                }
            }
            out.push(multi);
            let mut i = sites.len();
            loop {
                if i == 0 {
                    break 'product;
                }
                i -= 1;
                cursor[i] += 1;
                if cursor[i] < sites[i].len() {
                    break;
                }
                cursor[i] = 0;
            }
        }
    }
    out.sort();
    Ok(HopfBrunnianSlopes {
        inner: out.into_iter(),
    })
}
