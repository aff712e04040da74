//! The release gate: one test per shipped guarantee, each with an explicit
//! time budget. Every test prints as its own pass/fail line.

use std::process::Command;
use std::time::{Duration, Instant};

use dehn::{
    corpus, dual_slopes_by_moves, dual_slopes_integral, enumerate_pair_solutions,
    enumerate_triple_obstructions, evaluate_chain, expand_negative, h1_order,
    integral_adjacency_check, linking_agrees_up_to_orientation, presentation_matrix,
    ChainMove, ChainPresentation, FramedLink, IntMatrix, LensSpace, Order, Slope,
    SublinkSelector,
};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn slope(p: i64, q: i64) -> Slope {
    Slope::new(p, q).expect("test slopes are not 0/0")
}

fn within(budget: Duration, start: Instant, what: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= budget,
        "{what} took {elapsed:?}, budget {budget:?}"
    );
}

#[test]
fn criterion_01_two_component_order_identity() {
    let start = Instant::now();
    for l in -10i64..=10 {
        for q1 in (-10i64..=10).filter(|q| *q != 0) {
            for q2 in (-10i64..=10).filter(|q| *q != 0) {
                let link = FramedLink::from_parts(
                    vec![slope(1, q1), slope(1, q2)],
                    vec![vec![0, l], vec![l, 0]],
                )
                .unwrap();
                let value = q1 * q2 * l * l - 1;
                let expected = if value == 0 {
                    Order::Infinite
                } else {
                    Order::Finite(BigUint::from(value.unsigned_abs()))
                };
                assert_eq!(
                    h1_order(&link).unwrap(),
                    expected,
                    "l={l}, q1={q1}, q2={q2}"
                );
            }
        }
    }
    within(Duration::from_secs(1), start, "2x2 order identity sweep");
}

type TripleCase = (&'static [i64; 3], [&'static str; 3], [[i64; 3]; 3]);

#[test]
fn criterion_02_reference_triples_have_order_three() {
    let start = Instant::now();
    let cases: [TripleCase; 2] = [
        (
            &[1, 1, 0],
            ["1", "1/2", "1/2"],
            [[1, 2, 2], [1, 1, 0], [1, 0, 1]],
        ),
        (
            &[1, 0, 1],
            ["1", "1/2", "1"],
            [[1, 2, 0], [1, 1, 1], [0, 2, 1]],
        ),
    ];
    let emitted = enumerate_triple_obstructions(2).unwrap();
    for (linking, slopes, matrix) in cases {
        let [l12, l13, l23] = *linking;
        let link = FramedLink::from_parts(
            slopes.iter().map(|s| s.parse().unwrap()).collect(),
            vec![vec![0, l12, l13], vec![l12, 0, l23], vec![l13, l23, 0]],
        )
        .unwrap();
        let expected =
            IntMatrix::from_rows(matrix.iter().map(|r| r.to_vec()).collect()).unwrap();
        assert_eq!(presentation_matrix(&link).unwrap(), expected);
        assert_eq!(h1_order(&link).unwrap(), Order::from(3u32));
        assert!(
            emitted.iter().any(|t| t.linking == *linking
                && t.slopes.to_vec()
                    == slopes.iter().map(|s| s.parse().unwrap()).collect::<Vec<Slope>>()),
            "triple with linking {linking:?} not emitted"
        );
    }
    within(Duration::from_secs(1), start, "reference triples");
}

#[test]
fn criterion_03_half_one_half_chain_is_minus_l31() {
    let start = Instant::now();
    let lens = "1/2, 1, 1/2"
        .parse::<ChainPresentation>()
        .unwrap()
        .to_lens()
        .unwrap();
    let l32 = LensSpace::new(3, 2).unwrap();
    let l31 = LensSpace::new(3, 1).unwrap();
    assert!(lens.equivalent(&l32, true));
    assert!(lens.equivalent(&l31, false));
    assert!(!lens.equivalent(&l31, true));
    assert_eq!(l31.orientation_reversed(), lens);
    within(Duration::from_secs(1), start, "chain to lens");
}

#[test]
fn criterion_04_borromean_one_surgery_homology() {
    let start = Instant::now();
    let link = corpus::load_link("borromean.json").unwrap();
    assert!(link.slopes().iter().all(|s| s == &slope(1, 1)));
    assert!(h1_order(&link).unwrap().is_trivial());
    for selector in SublinkSelector::proper_nonempty(link.len()) {
        let sub = link.sublink(&selector).unwrap();
        assert!(
            h1_order(&sub).unwrap().is_trivial(),
            "sublink {:?}",
            selector.indices()
        );
    }
    assert!(integral_adjacency_check(&link).unwrap().passed());
    within(Duration::from_secs(1), start, "Borromean homology checks");
}

#[test]
fn criterion_05_exceptional_pairs_are_exactly_eight() {
    let start = Instant::now();
    let found = enumerate_pair_solutions(25, 25).unwrap();
    let got: Vec<(i64, i64, i64)> = found
        .exceptional
        .iter()
        .map(|s| (s.linking, s.q1, s.q2))
        .collect();
    let expected = vec![
        (-1, -2, -1),
        (-1, -1, -2),
        (-1, 1, 2),
        (-1, 2, 1),
        (1, -2, -1),
        (1, -1, -2),
        (1, 1, 2),
        (1, 2, 1),
    ];
    assert_eq!(got, expected);
    within(Duration::from_secs(5), start, "pair solution sweep");
}

/// Diagonalization by explicit elementary row/column operations only:
/// repeatedly move a minimal entry to the pivot, reduce its row and column
/// by integer multiples, and fold non-divisible entries into the pivot row
/// until the pivot divides everything that remains.
#[allow(clippy::needless_range_loop)]
fn naive_invariant_factors(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m[0].len();
    let n = rows.min(cols);
    let mut t = 0usize;
    'pass: while t < n {
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && pivot
                        .map(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        for i in t + 1..rows {
            if m[i][t].is_zero() {
                continue;
            }
            let q = m[i][t].div_floor(&m[t][t]);
            for j in t..cols {
                let sub = &q * &m[t][j];
                m[i][j] -= sub;
            }
            if !m[i][t].is_zero() {
                continue 'pass;
            }
        }
        for j in t + 1..cols {
            if m[t][j].is_zero() {
                continue;
            }
            let q = m[t][j].div_floor(&m[t][t]);
            for i in t..rows {
                let sub = &q * &m[i][t];
                m[i][j] -= sub;
            }
            if !m[t][j].is_zero() {
                continue 'pass;
            }
        }
        for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&m[i][j] % &m[t][t]).is_zero() {
                    for k in t..cols {
                        let add = m[i][k].clone();
                        m[t][k] += add;
                    }
                    continue 'pass;
                }
            }
        }
        t += 1;
    }
    (0..n).map(|i| m[i][i].abs()).collect()
}

#[test]
fn criterion_06_smith_form_matches_elementary_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e1f);
    for case in 0..1000 {
        let entries: Vec<Vec<i64>> = (0..5)
            .map(|_| (0..5).map(|_| rng.random_range(-10..=10)).collect())
            .collect();
        let m = IntMatrix::from_rows(entries.clone()).unwrap();
        let fast = m.smith_normal_form().diagonal();
        let slow = naive_invariant_factors(
            entries
                .iter()
                .map(|row| row.iter().map(|&e| BigInt::from(e)).collect())
                .collect(),
        );
        assert_eq!(fast, slow, "case {case}: {entries:?}");
    }
    within(Duration::from_secs(10), start, "1000 random Smith forms");
}

fn integral_chains(max_len: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut last: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for prefix in &last {
            for c in -bound..=bound {
                let mut chain = prefix.clone();
                chain.push(c);
                next.push(chain);
            }
        }
        out.extend(next.iter().cloned());
        last = next;
    }
    out
}

#[test]
fn criterion_07_dual_slope_routes_agree() {
    let start = Instant::now();
    let mut unimodular = 0usize;
    for coeffs in integral_chains(4, 3) {
        let chain = ChainPresentation::from_integers(coeffs).unwrap();
        let link = chain.to_framed_link().unwrap();
        let framing = presentation_matrix(&link).unwrap();
        if !framing.determinant().unwrap().abs().is_one() {
            continue;
        }
        unimodular += 1;
        let closed_form = dual_slopes_integral(&framing).unwrap();
        let by_moves = dual_slopes_by_moves(&link).unwrap();
        assert_eq!(closed_form.slopes, by_moves.slopes, "chain {chain}");
        assert!(
            linking_agrees_up_to_orientation(&closed_form.linking, &by_moves.linking),
            "chain {chain}"
        );
    }
    assert!(unimodular > 200, "only {unimodular} unimodular chains");
    within(Duration::from_secs(10), start, "dual-slope cross-validation");
}

#[test]
fn criterion_08_continued_fraction_round_trip() {
    let start = Instant::now();
    for p in 2i64..=50 {
        for q in 1..p {
            if q.gcd(&p) != 1 {
                continue;
            }
            let r = slope(p, q);
            let coefficients = expand_negative(&r).unwrap();
            let as_slopes: Vec<Slope> = coefficients
                .iter()
                .map(|c| Slope::integer(c.clone()))
                .collect();
            assert_eq!(evaluate_chain(&as_slopes).unwrap(), r);
            let chain = ChainPresentation::new(as_slopes).unwrap();
            assert_eq!(
                chain.to_lens().unwrap(),
                LensSpace::new(p, q).unwrap(),
                "p={p}, q={q}"
            );
        }
    }
    within(Duration::from_secs(1), start, "continued fractions to 50");
}

fn random_scoped_chain(rng: &mut ChaCha8Rng) -> ChainPresentation {
    let end = |rng: &mut ChaCha8Rng| {
        let p = loop {
            let p = rng.random_range(-5i64..=5);
            if p != 0 {
                break p;
            }
        };
        slope(p, rng.random_range(1i64..=3))
    };
    let mut coeffs = vec![end(rng)];
    for _ in 0..rng.random_range(0usize..=3) {
        coeffs.push(Slope::integer(rng.random_range(-4i64..=4)));
    }
    coeffs.push(end(rng));
    ChainPresentation::new(coeffs).unwrap()
}

fn random_move(rng: &mut ChaCha8Rng, chain: &ChainPresentation) -> Option<ChainMove> {
    match rng.random_range(0u8..4) {
        0 => Some(ChainMove::SlamDunk),
        1 => chain
            .coefficients()
            .iter()
            .position(|c| c.is_integral() && c.numerator().abs().is_one())
            .map(|index| ChainMove::BlowDown { index }),
        2 => Some(ChainMove::RolfsenTwist {
            index: 0,
            t: BigInt::from(rng.random_range(-3i64..=3)),
        }),
        _ => Some(ChainMove::RolfsenTwist {
            index: chain.len() - 1,
            t: BigInt::from(rng.random_range(-3i64..=3)),
        }),
    }
}

#[test]
fn criterion_09_lens_survives_five_hundred_random_moves() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xca1c);
    let mut chain = random_scoped_chain(&mut rng);
    let mut expected = chain.to_lens().unwrap();
    let mut applied = 0usize;
    while applied < 500 {
        if chain.is_empty() || rng.random_range(0u8..16) == 0 {
            chain = random_scoped_chain(&mut rng);
            expected = chain.to_lens().unwrap();
        }
        let Some(mv) = random_move(&mut rng, &chain) else {
            continue;
        };
        chain = chain.apply(&mv).unwrap();
        applied += 1;
        assert_eq!(chain.to_lens().unwrap(), expected, "after {mv} (#{applied})");
    }
    within(Duration::from_secs(5), start, "500 random chain moves");
}

#[test]
fn criterion_10_distance_from_meridian_to_one_fifth() {
    let meridian = Slope::infinity();
    assert_eq!(meridian.distance(&slope(1, 5)), BigUint::from(5u32));
    assert_eq!(slope(1, 5).distance(&meridian), BigUint::from(5u32));
}

#[test]
fn criterion_11_verify_command_and_negative_control() {
    let fresh = Command::new(env!("CARGO_BIN_EXE_dehn"))
        .arg("verify")
        .output()
        .unwrap();
    assert!(
        fresh.status.success(),
        "verify failed:\n{}",
        String::from_utf8_lossy(&fresh.stdout)
    );
    let corrupted = Command::new(env!("CARGO_BIN_EXE_dehn"))
        .args(["verify", "--corrupt-convention"])
        .output()
        .unwrap();
    assert_eq!(corrupted.status.code(), Some(1));
    let report = String::from_utf8_lossy(&corrupted.stdout);
    assert!(report.contains("FAILED"), "no failure reported:\n{report}");
}
