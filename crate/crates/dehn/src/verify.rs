//! Frozen reference checks.
//!
//! A small regression harness over the worked examples the rest of the
//! crate is calibrated against: the pair determinant identity, the two
//! determinant-three triples, the Borromean shadow, and the Hopf-chain lens
//! identification that pins the orientation convention. Every check is
//! named after its content and runs in well under a second, so the whole
//! battery can gate a build.
//!
//! [`VerifyContext::corrupt_convention`] deliberately flips the expected
//! lens orientation as a negative control: a harness that cannot fail
//! proves nothing.

use crate::adjacency::{
    certify_split_hopf_form, check_pair_classification, integral_adjacency_check,
    necessary_conditions, necessary_conditions_with, NecessaryOptions, SplitHopfStructure,
};
use crate::chain::{ChainPresentation, LensSpace};
use crate::corpus;
use crate::enumerate::{enumerate_pair_solutions, enumerate_triple_obstructions, PairSolution};
use crate::homology::{h1, h1_order, presentation_matrix, Order};
use crate::link::{FramedLink, SublinkSelector};
use crate::matrix::IntMatrix;
use crate::slope::Slope;
use num_bigint::BigUint;
use std::fmt;

/// Settings for a verification run.
#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyContext {
    /// Negative control: intentionally flip the lens-space orientation
    /// convention so the convention-sensitive check fails.
    pub corrupt_convention: bool,
}

/// Outcome of one reference check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    /// `None` when the check passed, otherwise what went wrong.
    pub failure: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Results of the whole battery, in manifest order.
#[derive(Debug, Clone)]
pub struct VerifySummary {
    pub results: Vec<CheckResult>,
}

impl VerifySummary {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(CheckResult::passed)
    }

    pub fn passing(&self) -> usize {
        self.results.iter().filter(|r| r.passed()).count()
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{}/{} reference checks pass",
            self.passing(),
            self.results.len()
        )
    }
}

impl fmt::Display for VerifySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for result in &self.results {
            match &result.failure {
                None => writeln!(f, "check {}: ok", result.name)?,
                Some(detail) => writeln!(f, "check {}: FAILED ({detail})", result.name)?,
            }
        }
        write!(f, "{}", self.summary_line())
    }
}

type Check = fn(&VerifyContext) -> Result<(), String>;

const CHECKS: &[(&str, Check)] = &[
    ("slope-distance-trivial-fifth", slope_distance_trivial_fifth),
    ("pair-determinant-formula", pair_determinant_formula),
    ("pair-classification-families", pair_classification_families),
    ("hopf-pair-slopes-pass", hopf_pair_slopes_pass),
    ("triple-matrix-first", triple_matrix_first),
    ("triple-matrix-second", triple_matrix_second),
    (
        "borromean-integral-homology-sphere",
        borromean_integral_homology_sphere,
    ),
    ("borromean-pd-linking", borromean_pd_linking),
    ("hopf-chain-lens", hopf_chain_lens),
    ("hopf-chain-sublinks", hopf_chain_sublinks),
    ("split-hopf-certificate", split_hopf_certificate),
    ("integral-signs-free", integral_signs_free),
];

/// Names of all reference checks, in run order.
pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(name, _)| *name).collect()
}

/// Runs the whole battery.
pub fn run_all(ctx: &VerifyContext) -> VerifySummary {
    let results = CHECKS
        .iter()
        .map(|(name, check)| CheckResult {
            name,
            failure: check(ctx).err(),
        })
        .collect();
    VerifySummary { results }
}

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

fn slope(text: &str) -> Slope {
    text.parse().expect("literal slopes parse")
}

fn corpus_link(name: &str) -> Result<FramedLink, String> {
    corpus::load_link(name).map_err(|e| e.to_string())
}

fn slope_distance_trivial_fifth(_: &VerifyContext) -> Result<(), String> {
    let d = Slope::infinity().distance(&slope("1/5"));
    ensure(d == BigUint::from(5u32), || {
        format!("distance between inf and 1/5 is {d}, expected 5")
    })
}

fn pair_determinant_formula(_: &VerifyContext) -> Result<(), String> {
    for l in -10i64..=10 {
        for q1 in (-10i64..=10).filter(|q| *q != 0) {
            for q2 in (-10i64..=10).filter(|q| *q != 0) {
                let link = PairSolution {
                    linking: l,
                    q1,
                    q2,
                }
                .to_link();
                let got = h1_order(&link).map_err(|e| e.to_string())?;
                let det = (q1 * q2 * l * l - 1).unsigned_abs();
                let expected = if det == 0 {
                    Order::Infinite
                } else {
                    Order::Finite(BigUint::from(det))
                };
                ensure(got == expected, || {
                    format!(
                        "linking {l}, slopes 1/{q1} and 1/{q2}: order {got}, expected {expected}"
                    )
                })?;
            }
        }
    }
    Ok(())
}

fn pair_classification_families(_: &VerifyContext) -> Result<(), String> {
    let found = enumerate_pair_solutions(10, 10).map_err(|e| e.to_string())?;
    let expected: Vec<PairSolution> = [
        (-1, -2, -1),
        (-1, -1, -2),
        (-1, 1, 2),
        (-1, 2, 1),
        (1, -2, -1),
        (1, -1, -2),
        (1, 1, 2),
        (1, 2, 1),
    ]
    .into_iter()
    .map(|(linking, q1, q2)| PairSolution { linking, q1, q2 })
    .collect();
    ensure(found.exceptional == expected, || {
        format!(
            "nonzero-linking solution family has {} members, expected the eight (+/-1, {{1,2}}) variants",
            found.exceptional.len()
        )
    })
}

fn hopf_pair_slopes_pass(_: &VerifyContext) -> Result<(), String> {
    let coupled = [("1", "1/2"), ("1/2", "1"), ("-1", "-1/2"), ("-1/2", "-1")];
    for l in [1i64, -1] {
        for (a, b) in coupled {
            let report = check_pair_classification(l, &slope(a), &slope(b));
            ensure(report.passed(), || {
                format!("linking {l} with slopes ({a}, {b}) must pass, got: {report}")
            })?;
        }
    }
    for (l, a, b) in [
        (1i64, "1", "-1/2"),
        (0, "2/3", "1"),
        (1, "1/2", "1/2"),
        (2, "1", "1/2"),
    ] {
        let report = check_pair_classification(l, &slope(a), &slope(b));
        ensure(!report.passed(), || {
            format!("linking {l} with slopes ({a}, {b}) must fail")
        })?;
    }
    Ok(())
}

fn expect_triple(
    name: &str,
    link: &FramedLink,
    rows: Vec<Vec<i64>>,
    linking: [i64; 3],
) -> Result<(), String> {
    let matrix = presentation_matrix(link).map_err(|e| e.to_string())?;
    let expected = IntMatrix::from_rows(rows).map_err(|e| e.to_string())?;
    ensure(matrix == expected, || {
        format!("{name}: presentation matrix is {matrix:?}, expected {expected:?}")
    })?;
    let order = h1_order(link).map_err(|e| e.to_string())?;
    ensure(order == Order::from(3u32), || {
        format!("{name}: order {order}, expected 3")
    })?;
    let obstructions = enumerate_triple_obstructions(2).map_err(|e| e.to_string())?;
    let emitted = obstructions.iter().any(|o| {
        o.linking == linking && o.slopes.as_slice() == link.slopes() && o.order == Order::from(3u32)
    });
    ensure(emitted, || {
        format!("{name}: configuration missing from the bounded triple search")
    })
}

fn triple_matrix_first(_: &VerifyContext) -> Result<(), String> {
    let link = corpus_link("bad-triple.json")?;
    expect_triple(
        "first determinant-three triple",
        &link,
        vec![vec![1, 2, 2], vec![1, 1, 0], vec![1, 0, 1]],
        [1, 1, 0],
    )
}

fn triple_matrix_second(_: &VerifyContext) -> Result<(), String> {
    let link = FramedLink::from_parts(
        vec![slope("1"), slope("1/2"), slope("1")],
        vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]],
    )
    .map_err(|e| e.to_string())?;
    expect_triple(
        "second determinant-three triple",
        &link,
        vec![vec![1, 2, 0], vec![1, 1, 1], vec![0, 2, 1]],
        [1, 0, 1],
    )
}

fn all_sublinks_trivial(link: &FramedLink, proper_only: bool) -> Result<(), String> {
    let n = link.len();
    let selectors: Vec<SublinkSelector> = if proper_only {
        SublinkSelector::proper_nonempty(n).collect()
    } else {
        SublinkSelector::all_nonempty(n).collect()
    };
    for sel in selectors {
        let sub = link.sublink(&sel).map_err(|e| e.to_string())?;
        let order = h1_order(&sub).map_err(|e| e.to_string())?;
        ensure(order.is_trivial(), || {
            format!(
                "sublink {:?} has first homology of order {order}, expected 1",
                sel.indices()
            )
        })?;
    }
    Ok(())
}

fn borromean_integral_homology_sphere(_: &VerifyContext) -> Result<(), String> {
    let link = corpus_link("borromean.json")?;
    let group = h1(&link).map_err(|e| e.to_string())?;
    ensure(group.is_trivial(), || {
        format!("full surgery has H1 = {group}, expected the trivial group")
    })?;
    all_sublinks_trivial(&link, false)?;
    let report = integral_adjacency_check(&link).map_err(|e| e.to_string())?;
    ensure(report.passed(), || {
        format!("integral check rejected the all-ones multi-slope: {report}")
    })
}

fn borromean_pd_linking(_: &VerifyContext) -> Result<(), String> {
    let diagram = corpus::load_diagram("borromean.pd").map_err(|e| e.to_string())?;
    ensure(diagram.components() == ["A", "B", "C"], || {
        format!("components {:?}", diagram.components())
    })?;
    ensure(diagram.crossings().len() == 6, || {
        format!("{} crossings, expected 6", diagram.crossings().len())
    })?;
    let spec = corpus_link("borromean.json")?;
    let from_pd = diagram
        .to_framed_link(spec.slopes().to_vec())
        .map_err(|e| e.to_string())?;
    ensure(from_pd == spec, || {
        "diagram linking matrix disagrees with the link spec".to_string()
    })
}

fn hopf_chain_lens(ctx: &VerifyContext) -> Result<(), String> {
    let chain: ChainPresentation = "1/2, 1, 1/2".parse().map_err(|e: crate::chain::ChainError| e.to_string())?;
    let lens = chain.to_lens().map_err(|e| e.to_string())?;
    let mut expected = LensSpace::new(3, 2).map_err(|e| e.to_string())?;
    if ctx.corrupt_convention {
        expected = expected.orientation_reversed();
    }
    ensure(lens == expected, || {
        format!("chain (1/2, 1, 1/2) gives {lens}, expected {expected}")
    })?;
    let mirror = LensSpace::new(3, 1).map_err(|e| e.to_string())?;
    ensure(lens.equivalent(&mirror, false), || {
        format!("{lens} and {mirror} must agree up to orientation")
    })?;
    ensure(!lens.equivalent(&mirror, true), || {
        format!("{lens} and {mirror} must differ as oriented manifolds")
    })
}

fn hopf_chain_sublinks(_: &VerifyContext) -> Result<(), String> {
    let link = corpus_link("chain3.json")?;
    let report = necessary_conditions(&link);
    ensure(report.passed(), || {
        format!("necessary conditions rejected the chain: {report}")
    })?;
    all_sublinks_trivial(&link, true)?;
    let order = h1_order(&link).map_err(|e| e.to_string())?;
    ensure(order == Order::from(3u32), || {
        format!("full surgery has order {order}, expected 3")
    })?;
    let strict = necessary_conditions_with(&link, &NecessaryOptions { assume_sphere: true });
    ensure(!strict.passed(), || {
        "the full surgery has order 3, so assuming a sphere must fail".to_string()
    })
}

fn split_hopf_certificate(_: &VerifyContext) -> Result<(), String> {
    let link = corpus_link("hopf.json")?;
    let structure = SplitHopfStructure::new(vec![(0, 1)], vec![]);
    let report = certify_split_hopf_form(&link, &structure).map_err(|e| e.to_string())?;
    ensure(report.passed(), || {
        format!("certificate rejected slopes (1, 1/2): {report}")
    })?;
    let bad = link
        .with_slope(1, slope("1/3"))
        .map_err(|e| e.to_string())?;
    let report = certify_split_hopf_form(&bad, &structure).map_err(|e| e.to_string())?;
    ensure(!report.passed(), || {
        "certificate accepted slopes (1, 1/3)".to_string()
    })
}

fn integral_signs_free(_: &VerifyContext) -> Result<(), String> {
    let link = corpus_link("borromean.json")?;
    let mixed = link
        .with_slope(1, slope("-1"))
        .map_err(|e| e.to_string())?;
    let report = integral_adjacency_check(&mixed).map_err(|e| e.to_string())?;
    ensure(report.passed(), || {
        format!("mixed-sign multi-slope (1, -1, 1) rejected: {report}")
    })?;
    let too_big = link.with_slope(1, slope("2")).map_err(|e| e.to_string())?;
    let report = integral_adjacency_check(&too_big).map_err(|e| e.to_string())?;
    ensure(!report.passed(), || {
        "multi-slope (1, 2, 1) accepted, but 2-surgery on a component is not a homology sphere"
            .to_string()
    })?;
    let rational = link
        .with_slope(0, slope("1/2"))
        .map_err(|e| e.to_string())?;
    ensure(integral_adjacency_check(&rational).is_err(), || {
        "a rational slope must be rejected by the integral check".to_string()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_run_passes_every_check() {
        let summary = run_all(&VerifyContext::default());
        assert!(summary.all_passed(), "{summary}");
        assert_eq!(summary.summary_line(), "12/12 reference checks pass");
    }

    #[test]
    fn corrupted_convention_fails_only_the_lens_check() {
        let summary = run_all(&VerifyContext {
            corrupt_convention: true,
        });
        assert!(!summary.all_passed());
        let failing: Vec<&str> = summary
            .results
            .iter()
            .filter(|r| !r.passed())
            .map(|r| r.name)
            .collect();
        assert_eq!(failing, ["hopf-chain-lens"]);
        assert_eq!(summary.summary_line(), "11/12 reference checks pass");
        let text = summary.to_string();
        assert!(text.contains("check hopf-chain-lens: FAILED"));
    }

    #[test]
    fn names_are_stable_and_unique() {
        let names = check_names();
        assert_eq!(names.len(), 12);
        let mut dedup = names.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), 12);
    }

    #[test]
    fn display_lists_every_check() {
        let summary = run_all(&VerifyContext::default());
        let text = summary.to_string();
        for name in check_names() {
            assert!(text.contains(&format!("check {name}: ok")));
        }
        assert!(text.ends_with("12/12 reference checks pass"));
    }
}
