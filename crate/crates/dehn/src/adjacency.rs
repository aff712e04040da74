//! Decision procedures for multi-slopes whose sublink surgeries are all
//! supposed to yield the three-sphere.
//!
//! Everything here works at the level of linking numbers, slopes, and first
//! homology. Genuinely geometric predicates (Brunnian-ness, unknottedness,
//! split-ness) are not decidable from this data, which is why the passing
//! verdict of the sublink checkers is `inconclusive-pass`: every reported
//! condition is necessary, and sufficiency would need the geometric
//! hypotheses recorded in the report notes.

use crate::homology::{h1_order, HomologyError};
use crate::link::{FramedLink, SublinkSelector};
use crate::matrix::IntMatrix;
use crate::slope::Slope;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AdjacencyError {
    #[error("not an integral multi-slope: component `{label}` has slope {slope}")]
    NotIntegral { label: String, slope: Slope },
    #[error("inconsistent declaration: {0}")]
    InconsistentDeclaration(String),
}

/// Outcome of a check. `InconclusivePass` means every algebraic condition
/// holds but the conclusion still rests on unverified geometric hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    InconclusivePass,
}

impl Verdict {
    /// Stable process exit code: 0 pass, 1 fail, 2 inconclusive-pass.
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::InconclusivePass => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::InconclusivePass => "inconclusive-pass",
        })
    }
}

/// One failed condition, naming the sublink it failed on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Labels of the components involved.
    pub sublink: Vec<String>,
    /// Stable name of the violated condition.
    pub condition: String,
    /// Human-readable specifics, including reproduced homology orders.
    pub detail: String,
}

/// Deterministic report: verdict, ordered violations, explanatory notes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjacencyReport {
    pub verdict: Verdict,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl AdjacencyReport {
    fn conclude(violations: Vec<Violation>, passing: Verdict, notes: Vec<String>) -> Self {
        let verdict = if violations.is_empty() {
            passing
        } else {
            Verdict::Fail
        };
        let notes = if verdict == Verdict::Fail {
            Vec::new()
        } else {
            notes
        };
        AdjacencyReport {
            verdict,
            violations,
            notes,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

impl fmt::Display for AdjacencyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "verdict: {}", self.verdict)?;
        for v in &self.violations {
            write!(
                f,
                "\nviolation [{}] {}: {}",
                v.sublink.join(","),
                v.condition,
                v.detail
            )?;
        }
        for n in &self.notes {
            write!(f, "\nnote: {n}")?;
        }
        Ok(())
    }
}

fn abs_slope(s: &Slope) -> Slope {
    Slope::new(s.numerator().abs(), s.denominator().clone()).expect("valid slope stays valid")
}

fn slope(p: i64, q: i64) -> Slope {
    Slope::new(p, q).expect("constant slope")
}

/// The four slope assignments allowed on a Hopf pair, signs coupled.
fn is_coupled_hopf_assignment(s1: &Slope, s2: &Slope) -> bool {
    let one = slope(1, 1);
    let half = slope(1, 2);
    let m_one = slope(-1, 1);
    let m_half = slope(-1, 2);
    (s1 == &one && s2 == &half)
        || (s1 == &half && s2 == &one)
        || (s1 == &m_one && s2 == &m_half)
        || (s1 == &m_half && s2 == &m_one)
}

/// Order of the two-component surgery as a display string: |p1 p2 - q1 q2 l^2|.
fn pair_order_detail(l: &BigInt, s1: &Slope, s2: &Slope) -> String {
    let det = s1.numerator() * s2.numerator()
        - s1.denominator() * s2.denominator() * l * l;
    if det.is_zero() {
        "pair surgery has infinite first homology".to_string()
    } else {
        format!("pair surgery has first homology order {}", det.abs())
    }
}

/// Core pair test; `None` means the assignment is allowed.
fn pair_violation(l: &BigInt, s1: &Slope, s2: &Slope) -> Option<(String, String)> {
    if s1.is_infinity() || s2.is_infinity() {
        return Some((
            "slopes must be finite".to_string(),
            format!("got ({s1}, {s2})"),
        ));
    }
    if l.is_zero() {
        if s1.is_reciprocal_integer() && s2.is_reciprocal_integer() {
            return None;
        }
        let bad = if s1.is_reciprocal_integer() { s2 } else { s1 };
        return Some((
            "zero-linking slopes must be reciprocal integers".to_string(),
            format!("slope {bad} is not of the form 1/k"),
        ));
    }
    if l.abs().is_one() {
        if is_coupled_hopf_assignment(s1, s2) {
            return None;
        }
        let magnitudes_fit = (abs_slope(s1) == slope(1, 1) && abs_slope(s2) == slope(1, 2))
            || (abs_slope(s1) == slope(1, 2) && abs_slope(s2) == slope(1, 1));
        let condition = if magnitudes_fit {
            "sign coupling violated"
        } else {
            "hopf pair slopes must be +/-(1,1/2) or +/-(1/2,1)"
        };
        return Some((
            condition.to_string(),
            format!("got ({s1}, {s2}); {}", pair_order_detail(l, s1, s2)),
        ));
    }
    Some((
        "linking number must be 0 or +/-1".to_string(),
        format!("linking number {l}; {}", pair_order_detail(l, s1, s2)),
    ))
}

/// Classifies a two-component slope assignment: allowed iff the linking
/// number is zero and both slopes are `1/k`, or the linking number is
/// `+/-1` and the slopes are a sign-coupled `(1, 1/2)` in either order.
///
/// This is exactly the condition for surgery on the pair and on each single
/// component to have trivial first homology.
pub fn check_pair_classification(
    linking: impl Into<BigInt>,
    s1: &Slope,
    s2: &Slope,
) -> AdjacencyReport {
    let l = linking.into();
    let violations = pair_violation(&l, s1, s2)
        .map(|(condition, detail)| Violation {
            sublink: vec!["1".to_string(), "2".to_string()],
            condition,
            detail,
        })
        .into_iter()
        .collect();
    AdjacencyReport::conclude(violations, Verdict::Pass, Vec::new())
}

/// Options for [`necessary_conditions_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NecessaryOptions {
    /// Additionally require the full surgery to have trivial first
    /// homology, as it must whenever the full surgery is also supposed to
    /// yield the three-sphere.
    pub assume_sphere: bool,
}

/// [`necessary_conditions_with`] under default options.
pub fn necessary_conditions(link: &FramedLink) -> AdjacencyReport {
    necessary_conditions_with(link, &NecessaryOptions::default())
}

/// Checks every algebraic condition necessary for surgery on each nonempty
/// proper sublink to yield the three-sphere.
///
/// In order: pair classifications for every component pair, trivial first
/// homology for every nonempty proper sublink, and (for four or more
/// components, or three components whose full surgery has trivial homology)
/// isolation of Hopf pairs from the remaining components. Violations are
/// reported in that order, sublinks in lexicographic index order.
pub fn necessary_conditions_with(
    link: &FramedLink,
    options: &NecessaryOptions,
) -> AdjacencyReport {
    let n = link.len();
    let mut violations = Vec::new();
    let mut notes = vec![
        "all conditions checked are necessary at the homology level; Brunnian-ness, \
         unknottedness, and split-ness are geometric hypotheses left unverified"
            .to_string(),
    ];

    if n < 2 {
        violations.push(Violation {
            sublink: link.labels().to_vec(),
            condition: "component count".to_string(),
            detail: format!("need at least 2 components, got {n}"),
        });
        return AdjacencyReport::conclude(violations, Verdict::InconclusivePass, notes);
    }

    for i in 0..n {
        if link.slope(i).is_infinity() {
            violations.push(Violation {
                sublink: vec![link.label(i).to_string()],
                condition: "slopes must be finite".to_string(),
                detail: format!("component {} carries no surgery", link.label(i)),
            });
        }
    }
    if !violations.is_empty() {
        return AdjacencyReport::conclude(violations, Verdict::InconclusivePass, notes);
    }

    for i in 0..n {
        for j in i + 1..n {
            if let Some((condition, detail)) =
                pair_violation(link.linking_number(i, j), link.slope(i), link.slope(j))
            {
                violations.push(Violation {
                    sublink: vec![link.label(i).to_string(), link.label(j).to_string()],
                    condition,
                    detail,
                });
            }
        }
    }

    for sel in SublinkSelector::proper_nonempty(n) {
        let sub = link.sublink(&sel).expect("selector matches link");
        let order = h1_order(&sub).expect("slopes checked finite");
        if !order.is_trivial() {
            violations.push(Violation {
                sublink: sub.labels().to_vec(),
                condition: "proper sublink surgery must be a homology sphere".to_string(),
                detail: format!("first homology has order {order}, need 1"),
            });
        }
    }

    let full_order = h1_order(link).expect("slopes checked finite");
    if options.assume_sphere {
        if !full_order.is_trivial() {
            violations.push(Violation {
                sublink: link.labels().to_vec(),
                condition: "full-link surgery must be a homology sphere".to_string(),
                detail: format!("first homology has order {full_order}, need 1"),
            });
        }
        notes.push(
            "the full surgery was additionally required to have trivial first homology"
                .to_string(),
        );
    }

    if n >= 4 || (n == 3 && full_order.is_trivial()) {
        for i in 0..n {
            for j in i + 1..n {
                if !link.linking_number(i, j).abs().is_one() {
                    continue;
                }
                for (member, partner) in [(i, j), (j, i)] {
                    for k in 0..n {
                        if k == i || k == j || link.linking_number(member, k).is_zero() {
                            continue;
                        }
                        violations.push(Violation {
                            sublink: vec![
                                link.label(member).to_string(),
                                link.label(partner).to_string(),
                                link.label(k).to_string(),
                            ],
                            condition: "hopf pair components must not link the rest"
                                .to_string(),
                            detail: format!(
                                "component {} forms a Hopf pair with {} but links {} \
                                 (linking number {})",
                                link.label(member),
                                link.label(partner),
                                link.label(k),
                                link.linking_number(member, k)
                            ),
                        });
                    }
                }
            }
        }
    }

    AdjacencyReport::conclude(violations, Verdict::InconclusivePass, notes)
}

/// A declared decomposition of a link into disjoint Hopf pairs and
/// single unknotted components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitHopfStructure {
    /// Index pairs declared to be Hopf links (|linking| = 1 within a pair).
    pub pairs: Vec<(usize, usize)>,
    /// Indices declared to be split unknots.
    pub singletons: Vec<usize>,
}

impl SplitHopfStructure {
    pub fn new(pairs: Vec<(usize, usize)>, singletons: Vec<usize>) -> Self {
        SplitHopfStructure { pairs, singletons }
    }

    /// Checks that pairs and singletons partition `0..n`.
    pub fn validate(&self, n: usize) -> Result<(), AdjacencyError> {
        self.check_partition(n)
    }

    fn check_partition(&self, n: usize) -> Result<(), AdjacencyError> {
        let mut seen = vec![false; n];
        let mut cover = |idx: usize| -> Result<(), AdjacencyError> {
            if idx >= n {
                return Err(AdjacencyError::InconsistentDeclaration(format!(
                    "component index {idx} out of range for {n} components"
                )));
            }
            if seen[idx] {
                return Err(AdjacencyError::InconsistentDeclaration(format!(
                    "component index {idx} declared more than once"
                )));
            }
            seen[idx] = true;
            Ok(())
        };
        for &(a, b) in &self.pairs {
            if a == b {
                return Err(AdjacencyError::InconsistentDeclaration(format!(
                    "pair ({a}, {a}) repeats a component"
                )));
            }
            cover(a)?;
            cover(b)?;
        }
        for &s in &self.singletons {
            cover(s)?;
        }
        if let Some(missing) = seen.iter().position(|covered| !covered) {
            return Err(AdjacencyError::InconsistentDeclaration(format!(
                "component index {missing} is neither in a pair nor a singleton"
            )));
        }
        Ok(())
    }

    /// The model framed link with this split structure: linking number +1
    /// inside each declared pair, 0 elsewhere, and the given slopes.
    pub fn model_link(&self, slopes: Vec<Slope>) -> Result<FramedLink, AdjacencyError> {
        let n = slopes.len();
        self.check_partition(n)?;
        let mut linking = IntMatrix::zeros(n, n);
        for &(a, b) in &self.pairs {
            linking.set(a, b, BigInt::one());
            linking.set(b, a, BigInt::one());
        }
        Ok(FramedLink::new(slopes, linking).expect("structure yields a valid link"))
    }
}

/// Certifies that a multi-slope on a declared split union of Hopf links and
/// unknots realizes a surgery description of the three-sphere on every
/// nonempty sublink: every singleton slope must be `1/k` and every pair must
/// carry a sign-coupled `(1, 1/2)` assignment in either order.
///
/// The declaration must be consistent with the link's linking matrix.
pub fn certify_split_hopf_form(
    link: &FramedLink,
    structure: &SplitHopfStructure,
) -> Result<AdjacencyReport, AdjacencyError> {
    let n = link.len();
    structure.check_partition(n)?;
    let mut in_pair = vec![None; n];
    for &(a, b) in &structure.pairs {
        in_pair[a] = Some(b);
        in_pair[b] = Some(a);
        if !link.linking_number(a, b).abs().is_one() {
            return Err(AdjacencyError::InconsistentDeclaration(format!(
                "declared Hopf pair ({}, {}) has linking number {}",
                link.label(a),
                link.label(b),
                link.linking_number(a, b)
            )));
        }
    }
    for (i, partner) in in_pair.iter().enumerate() {
        for j in i + 1..n {
            if *partner == Some(j) {
                continue;
            }
            if !link.linking_number(i, j).is_zero() {
                return Err(AdjacencyError::InconsistentDeclaration(format!(
                    "components {} and {} are declared split but have linking number {}",
                    link.label(i),
                    link.label(j),
                    link.linking_number(i, j)
                )));
            }
        }
    }

    let mut violations = Vec::new();
    for &(a, b) in &structure.pairs {
        if let Some((condition, detail)) =
            pair_violation(link.linking_number(a, b), link.slope(a), link.slope(b))
        {
            violations.push(Violation {
                sublink: vec![link.label(a).to_string(), link.label(b).to_string()],
                condition,
                detail,
            });
        }
    }
    for &s in &structure.singletons {
        if !link.slope(s).is_reciprocal_integer() {
            violations.push(Violation {
                sublink: vec![link.label(s).to_string()],
                condition: "unknot slope must be 1/k".to_string(),
                detail: format!("component {} has slope {}", link.label(s), link.slope(s)),
            });
        }
    }
    let notes = vec![
        "certificate valid assuming the declared split union of Hopf links and unknots \
         is geometrically correct"
            .to_string(),
    ];
    Ok(AdjacencyReport::conclude(violations, Verdict::Pass, notes))
}

/// For integral multi-slopes: passes iff every slope is +1 or -1 (signs
/// independent across components) and all pairwise linking numbers vanish.
///
/// Errors on non-integral slopes; the passing verdict is inconclusive
/// because Brunnian-ness of the underlying link is geometric.
pub fn integral_adjacency_check(link: &FramedLink) -> Result<AdjacencyReport, AdjacencyError> {
    let n = link.len();
    for i in 0..n {
        if !link.slope(i).is_integral() {
            return Err(AdjacencyError::NotIntegral {
                label: link.label(i).to_string(),
                slope: link.slope(i).clone(),
            });
        }
    }
    let mut violations = Vec::new();
    for i in 0..n {
        let p = link.slope(i).numerator();
        if !p.abs().is_one() {
            let order = if p.is_zero() {
                "infinite first homology".to_string()
            } else {
                format!("first homology order {}", p.abs())
            };
            violations.push(Violation {
                sublink: vec![link.label(i).to_string()],
                condition: "integral slope must be +1 or -1".to_string(),
                detail: format!(
                    "component {} has slope {}; surgery on it alone has {order}",
                    link.label(i),
                    link.slope(i)
                ),
            });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if !link.linking_number(i, j).is_zero() {
                violations.push(Violation {
                    sublink: vec![link.label(i).to_string(), link.label(j).to_string()],
                    condition: "pairwise linking numbers must vanish".to_string(),
                    detail: format!(
                        "components {} and {} have linking number {}",
                        link.label(i),
                        link.label(j),
                        link.linking_number(i, j)
                    ),
                });
            }
        }
    }
    let notes = vec![
        "Brunnian-ness of the underlying link is geometric and left unverified".to_string(),
    ];
    Ok(AdjacencyReport::conclude(
        violations,
        Verdict::InconclusivePass,
        notes,
    ))
}

/// True iff the full surgery has trivial first homology.
pub fn is_integer_homology_sphere(link: &FramedLink) -> Result<bool, HomologyError> {
    Ok(h1_order(link)?.is_trivial())
}
