//! Cross-module algebraic laws, checked on exhaustive small ranges and
//! randomized inputs.

use dehn::{
    certify_split_hopf_form, chain_h1_order, check_pair_classification, dual_slopes_by_moves,
    dual_slopes_integral, enumerate_hopf_brunnian_slopes, enumerate_pair_solutions,
    evaluate_chain, expand_negative, h1, h1_order, linking_agrees_up_to_orientation,
    necessary_conditions, ChainMove, ChainPresentation, FramedLink, IntMatrix, LensSpace, Order,
    Slope, SplitHopfStructure,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn slope(p: i64, q: i64) -> Slope {
    Slope::new(p, q).expect("test slopes are not 0/0")
}

fn single_component(s: Slope) -> FramedLink {
    FramedLink::from_parts(vec![s], vec![vec![0]]).unwrap()
}

fn pair_link(l: i64, s1: Slope, s2: Slope) -> FramedLink {
    FramedLink::from_parts(vec![s1, s2], vec![vec![0, l], vec![l, 0]]).unwrap()
}

proptest! {
    #[test]
    fn slope_normalization_ignores_common_factors(
        p in -40i64..=40,
        q in -40i64..=40,
        k in -7i64..=7,
    ) {
        prop_assume!((p, q) != (0, 0) && k != 0);
        prop_assert_eq!(slope(p * k, q * k), slope(p, q));
    }

    #[test]
    fn slope_distance_is_symmetric_and_separates(
        a in -30i64..=30, b in -30i64..=30,
        c in -30i64..=30, d in -30i64..=30,
    ) {
        prop_assume!((a, b) != (0, 0) && (c, d) != (0, 0));
        let (s, t) = (slope(a, b), slope(c, d));
        prop_assert_eq!(s.distance(&t), t.distance(&s));
        prop_assert_eq!(s.distance(&t).is_zero(), s == t);
    }

    #[test]
    fn distance_to_meridian_is_the_denominator(p in -60i64..=60, q in -60i64..=60) {
        prop_assume!((p, q) != (0, 0));
        let g = p.gcd(&q);
        let s = slope(p, q);
        prop_assert_eq!(
            s.distance(&Slope::infinity()),
            num_bigint::BigUint::from((q / g).unsigned_abs())
        );
    }

    #[test]
    fn twists_and_shifts_compose_additively(
        p in -20i64..=20, q in -20i64..=20,
        s in -5i64..=5, t in -5i64..=5,
    ) {
        prop_assume!((p, q) != (0, 0));
        let x = slope(p, q);
        let (s, t) = (BigInt::from(s), BigInt::from(t));
        prop_assert_eq!(x.shifted(&s).shifted(&t), x.shifted(&(&s + &t)));
        prop_assert_eq!(x.twisted(&s).twisted(&t), x.twisted(&(&s + &t)));
        prop_assert_eq!(x.shifted(&BigInt::zero()), x.clone());
        prop_assert_eq!(x.twisted(&s).twisted(&-&s), x);
    }

    #[test]
    fn negative_continued_fractions_round_trip(p in -60i64..=60, q in 1i64..=40) {
        prop_assume!(p != 0);
        let s = slope(p, q);
        let coefficients = expand_negative(&s).unwrap();
        // Canonical form: every tail coefficient is at least 2.
        for c in coefficients.iter().skip(1) {
            prop_assert!(*c >= BigInt::from(2));
        }
        let as_slopes: Vec<Slope> = coefficients.iter().map(|c| Slope::integer(c.clone())).collect();
        prop_assert_eq!(evaluate_chain(&as_slopes).unwrap(), s);
    }
}

/// gcd of all k-by-k minors, the classical characterization of the product
/// of the first k invariant factors.
fn minors_gcd(m: &IntMatrix, k: usize) -> BigInt {
    let (rows, cols) = (m.rows(), m.cols());
    let mut acc = BigInt::zero();
    for rmask in 0u32..(1 << rows) {
        if rmask.count_ones() as usize != k {
            continue;
        }
        for cmask in 0u32..(1 << cols) {
            if cmask.count_ones() as usize != k {
                continue;
            }
            let ridx: Vec<usize> = (0..rows).filter(|i| rmask >> i & 1 == 1).collect();
            let cidx: Vec<usize> = (0..cols).filter(|j| cmask >> j & 1 == 1).collect();
            let minor = IntMatrix::from_fn(k, k, |a, b| m.get(ridx[a], cidx[b]).clone());
            acc = acc.gcd(&minor.determinant().unwrap());
        }
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_normal_form_is_a_unimodular_diagonalization(
        rows in 1usize..=4,
        cols in 1usize..=4,
        entries in prop::collection::vec(-10i64..=10, 16),
    ) {
        let m = IntMatrix::from_fn(rows, cols, |i, j| BigInt::from(entries[i * 4 + j]));
        let snf = m.smith_normal_form();
        prop_assert_eq!(&(&snf.u * &m) * &snf.v, snf.d.clone());
        prop_assert!(snf.u.determinant().unwrap().abs().is_one());
        prop_assert!(snf.v.determinant().unwrap().abs().is_one());
        let d = snf.diagonal();
        for i in 0..rows.min(cols) {
            for j in 0..rows.min(cols) {
                if i != j {
                    prop_assert!(snf.d.get(i, j).is_zero());
                }
            }
        }
        for w in d.windows(2) {
            prop_assert!(!w[0].is_negative() && !w[1].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        // Independent oracle: products of invariant factors are gcds of minors.
        let mut product = BigInt::one();
        for (k, dk) in d.iter().enumerate() {
            product *= dk;
            prop_assert_eq!(&product.abs(), &minors_gcd(&m, k + 1));
        }
    }

    #[test]
    fn first_homology_is_permutation_invariant(
        n in 1usize..=4,
        raw_linking in prop::collection::vec(-3i64..=3, 16),
        raw_slopes in prop::collection::vec((-4i64..=4, 1i64..=3), 4),
        seed in 0u64..1000,
    ) {
        let linking = IntMatrix::from_fn(n, n, |i, j| {
            if i == j { BigInt::zero() } else { BigInt::from(raw_linking[i.min(j) * 4 + i.max(j)]) }
        });
        let slopes: Vec<Slope> = raw_slopes[..n].iter().map(|&(p, q)| slope(p, q)).collect();
        let link = FramedLink::new(slopes, linking).unwrap();
        // A fixed pseudo-random permutation derived from the seed.
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, (seed as usize + i * 7) % (i + 1));
        }
        let permuted = link.permuted(&perm).unwrap();
        prop_assert_eq!(h1(&link).unwrap(), h1(&permuted).unwrap());
        // Two routes to the order: Smith form and the Bareiss determinant.
        prop_assert_eq!(h1_order(&link).unwrap(), h1(&link).unwrap().order());
    }
}

#[test]
fn pair_classification_matches_the_homology_characterization() {
    // A pair assignment is allowed exactly when surgery on the pair and on
    // each component alone all have trivial first homology.
    for l in -4i64..=4 {
        for p1 in -4i64..=4 {
            for q1 in 1i64..=4 {
                for p2 in -4i64..=4 {
                    for q2 in 1i64..=4 {
                        if p1 == 0 && q1 == 0 || p2 == 0 && q2 == 0 {
                            continue;
                        }
                        let (s1, s2) = (slope(p1, q1), slope(p2, q2));
                        let classified = check_pair_classification(l, &s1, &s2).passed();
                        let all_trivial = h1_order(&single_component(s1.clone()))
                            .unwrap()
                            .is_trivial()
                            && h1_order(&single_component(s2.clone())).unwrap().is_trivial()
                            && h1_order(&pair_link(l, s1.clone(), s2.clone()))
                                .unwrap()
                                .is_trivial();
                        assert_eq!(
                            classified, all_trivial,
                            "linking {l}, slopes ({s1}, {s2})"
                        );
                    }
                }
            }
        }
    }
}

/// Chains with rational ends and integral interior stay in that family
/// under every chain move, and always name a lens space.
fn scoped_chain(ends: (i64, i64, i64, i64), interior: &[i64]) -> ChainPresentation {
    let (p1, q1, p2, q2) = ends;
    let mut coeffs = vec![slope(p1, q1)];
    coeffs.extend(interior.iter().map(|&c| Slope::integer(c)));
    coeffs.push(slope(p2, q2));
    ChainPresentation::new(coeffs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn lens_identification_is_move_invariant(
        p1 in -5i64..=5, q1 in 1i64..=3,
        p2 in -5i64..=5, q2 in 1i64..=3,
        interior in prop::collection::vec(-4i64..=4, 0..=3),
        move_pick in 0usize..=3,
        t in -3i64..=3,
    ) {
        prop_assume!(p1 != 0 && p2 != 0);
        let chain = scoped_chain((p1, q1, p2, q2), &interior);
        let before = chain.to_lens().unwrap();
        prop_assert_eq!(chain_h1_order(&chain).unwrap(), before.order());
        let mv = match move_pick {
            0 => Some(ChainMove::SlamDunk),
            1 => chain
                .coefficients()
                .iter()
                .position(|c| c.is_integral() && c.numerator().abs().is_one())
                .map(|index| ChainMove::BlowDown { index }),
            2 => Some(ChainMove::RolfsenTwist { index: 0, t: BigInt::from(t) }),
            _ => Some(ChainMove::RolfsenTwist {
                index: chain.len() - 1,
                t: BigInt::from(t),
            }),
        };
        if let Some(mv) = mv {
            let moved = chain.apply(&mv).unwrap();
            prop_assert_eq!(moved.to_lens().unwrap(), before);
        }
    }
}

#[test]
fn lens_equivalence_follows_the_classical_rules() {
    for p in 2i64..=25 {
        for q in 1..p {
            if q.gcd(&p) != 1 {
                continue;
            }
            for q2 in 1..p {
                if q2.gcd(&p) != 1 {
                    continue;
                }
                let a = LensSpace::new(p, q).unwrap();
                let b = LensSpace::new(p, q2).unwrap();
                let same_oriented = (q - q2) % p == 0 || (q * q2 - 1) % p == 0;
                let same_unoriented =
                    same_oriented || (q + q2) % p == 0 || (q * q2 + 1) % p == 0;
                assert_eq!(a.equivalent(&b, true), same_oriented, "L({p},{q}) vs L({p},{q2})");
                assert_eq!(
                    a.equivalent(&b, false),
                    same_unoriented,
                    "L({p},{q}) vs L({p},{q2}) unoriented"
                );
            }
        }
    }
}

#[test]
fn lens_orientation_reversal_is_an_involution() {
    for p in 0i64..=25 {
        for q in 0..p.max(2) {
            let Ok(lens) = LensSpace::new(p, q) else { continue };
            let back = lens.orientation_reversed().orientation_reversed();
            assert_eq!(back, lens);
            assert_eq!(lens.order(), lens.orientation_reversed().order());
        }
    }
}

fn integral_chains(max_len: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
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
    out.retain(|c| !c.is_empty());
    out
}

#[test]
fn dual_routes_agree_on_unimodular_chains() {
    let mut checked = 0usize;
    for coeffs in integral_chains(3, 3) {
        let chain = ChainPresentation::from_integers(coeffs).unwrap();
        let link = chain.to_framed_link().unwrap();
        let moves = match dual_slopes_by_moves(&link) {
            Ok(data) => data,
            Err(_) => continue, // not a homology sphere
        };
        // Integral slopes have denominator 1, so the homology presentation
        // matrix coincides with the surgery framing matrix.
        let framing = dehn::presentation_matrix(&link).unwrap();
        let closed_form = dual_slopes_integral(&framing).unwrap();
        assert_eq!(moves.slopes, closed_form.slopes, "chain {chain}");
        assert!(
            linking_agrees_up_to_orientation(&moves.linking, &closed_form.linking),
            "chain {chain}: linking differs beyond component reorientation"
        );
        // The closed form is an involution.
        let again = dual_slopes_integral(&closed_form.framing_matrix().unwrap()).unwrap();
        assert_eq!(again.framing_matrix().unwrap(), framing, "chain {chain}");
        checked += 1;
    }
    assert!(checked > 50, "only {checked} unimodular chains in range");
}

#[test]
fn certified_hopf_multislopes_pass_the_necessary_conditions() {
    let cases: &[(usize, &[(usize, usize)])] = &[
        (2, &[(0, 1)]),
        (3, &[(0, 1)]),
        (3, &[(1, 2)]),
        (4, &[(0, 1), (2, 3)]),
    ];
    for &(n, pairs) in cases {
        let singletons: Vec<usize> = (0..n)
            .filter(|i| pairs.iter().all(|&(a, b)| a != *i && b != *i))
            .collect();
        let structure = SplitHopfStructure::new(pairs.to_vec(), singletons);
        let mut count = 0usize;
        for multi in enumerate_hopf_brunnian_slopes(n, pairs, 2).unwrap() {
            let link = structure.model_link(multi).unwrap();
            assert!(certify_split_hopf_form(&link, &structure).unwrap().passed());
            assert!(necessary_conditions(&link).passed());
            count += 1;
        }
        assert_eq!(
            count,
            4usize.pow(pairs.len() as u32) * 4usize.pow((n - 2 * pairs.len()) as u32),
            "stream size for n={n}, pairs={pairs:?}"
        );
    }
}

#[test]
fn pair_solutions_are_homology_spheres_in_every_piece() {
    let found = enumerate_pair_solutions(6, 6).unwrap();
    for sol in found.all() {
        let link = sol.to_link();
        assert!(h1_order(&link).unwrap().is_trivial(), "{sol}");
        let (s1, s2) = sol.slopes();
        assert!(h1_order(&single_component(s1)).unwrap().is_trivial());
        assert!(h1_order(&single_component(s2)).unwrap().is_trivial());
    }
}

#[test]
fn chain_homology_matches_lens_order() {
    for coeffs in ["1/2, 1, 1/2", "2, 2", "1/7", "-4/3", "5", "0", "1/2, 2/3", "3, -1, 3"] {
        let chain: ChainPresentation = coeffs.parse().unwrap();
        let lens = chain.to_lens().unwrap();
        assert_eq!(
            chain_h1_order(&chain).unwrap(),
            lens.order(),
            "chain ({coeffs})"
        );
    }
    assert_eq!(
        chain_h1_order(&"2, 1/2, 2".parse().unwrap()).unwrap(),
        Order::from(4u32)
    );
}
