//! Dual surgery slopes: the framings on the core curves of the surgery
//! solid tori that undo a surgery description of the three-sphere.
//!
//! Two independent routes are provided. [`dual_slopes_integral`] transforms
//! the framing/linking matrix algebraically (negated inverse convention:
//! a +1-framed unknot has dual slope -1). [`dual_slopes_by_moves`] reduces
//! the surgery description with explicit Rolfsen twists and blow-downs,
//! carrying each component's meridian along and reading the dual slope off
//! when the component's filling becomes trivial. Agreement of the two
//! routes is meaningful precisely because the algorithms share nothing.
//!
//! The move engine performs twists along spanning disks of individual
//! components, so it is exact for links of unknots (chain links in
//! particular). Off-diagonal dual linking signs depend on how the core
//! curves are oriented; the two routes agree up to reorienting components
//! (conjugation by a diagonal sign matrix), and on the slopes exactly.

use crate::homology::h1_order;
use crate::link::{FramedLink, SublinkSelector};
use crate::matrix::{IntMatrix, MatrixError};
use crate::slope::Slope;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DualError {
    #[error("framing matrix must be square and symmetric")]
    NotSymmetric,
    #[error("not a surgery presentation of S^3: {0}")]
    NotSphere(String),
    #[error("out of oracle scope: {0}")]
    OutOfScope(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Dual slopes per original component plus the linking matrix of the dual
/// (core) link, diagonal zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualData {
    pub slopes: Vec<Slope>,
    pub linking: IntMatrix,
}

impl DualData {
    /// The dual link as a framed link, ready to be re-surgered.
    pub fn to_framed_link(&self) -> FramedLink {
        FramedLink::new(self.slopes.clone(), self.linking.clone())
            .expect("dual data forms a valid link")
    }

    /// The full symmetric matrix: dual framings on the diagonal (only
    /// meaningful when all dual slopes are integral).
    pub fn framing_matrix(&self) -> Option<IntMatrix> {
        let n = self.slopes.len();
        let mut b = self.linking.clone();
        for (i, s) in self.slopes.iter().enumerate() {
            if !s.is_integral() {
                return None;
            }
            b.set(i, i, s.numerator().clone());
        }
        let _ = n;
        Some(b)
    }
}

/// Computes dual data for an integral surgery presentation of the
/// three-sphere from its framing matrix `b` (framings on the diagonal,
/// linking numbers off it). The dual framing matrix is the negated inverse
/// of `b`; applying the transform twice recovers `b`.
pub fn dual_slopes_integral(b: &IntMatrix) -> Result<DualData, DualError> {
    if !b.is_square() {
        return Err(DualError::NotSymmetric);
    }
    let n = b.rows();
    for i in 0..n {
        for j in i + 1..n {
            if b[(i, j)] != b[(j, i)] {
                return Err(DualError::NotSymmetric);
            }
        }
    }
    let det = b.determinant()?;
    if !det.abs().is_one() {
        return Err(DualError::NotSphere(format!("|det| = {}", det.abs())));
    }
    let inverse = b.inverse_unimodular()?;
    let mut linking = IntMatrix::zeros(n, n);
    let mut slopes = Vec::with_capacity(n);
    for i in 0..n {
        slopes.push(Slope::integer(-&inverse[(i, i)]));
        for j in 0..n {
            if i != j {
                linking.set(i, j, -&inverse[(i, j)]);
            }
        }
    }
    Ok(DualData { slopes, linking })
}

enum Component {
    Active { coeff: Slope, undo: Slope },
    Passive { dual: Slope },
}

struct Engine {
    comps: Vec<Component>,
    linking: IntMatrix,
}

impl Engine {
    fn new(link: &FramedLink) -> Self {
        let comps = link
            .slopes()
            .iter()
            .map(|s| Component::Active {
                coeff: s.clone(),
                undo: Slope::infinity(),
            })
            .collect();
        Engine {
            comps,
            linking: link.linking().clone(),
        }
    }

    /// Twists `t` times along the spanning disk of active component `i`:
    /// its own curves are twisted, every other component's curves shift by
    /// t * linking^2, and pairwise linking numbers not involving `i` pick
    /// up t * l(x,i) * l(y,i).
    fn twist(&mut self, i: usize, t: &BigInt) {
        if t.is_zero() {
            return;
        }
        let n = self.comps.len();
        match &mut self.comps[i] {
            Component::Active { coeff, undo } => {
                *coeff = coeff.twisted(t);
                *undo = undo.twisted(t);
            }
            Component::Passive { .. } => unreachable!("only active components are twisted"),
        }
        for x in 0..n {
            if x == i {
                continue;
            }
            let l = self.linking[(x, i)].clone();
            if l.is_zero() {
                continue;
            }
            let shift = t * &l * &l;
            match &mut self.comps[x] {
                Component::Active { coeff, undo } => {
                    *coeff = coeff.shifted(&shift);
                    *undo = undo.shifted(&shift);
                }
                Component::Passive { dual } => *dual = dual.shifted(&shift),
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if x == i || y == i {
                    continue;
                }
                let delta = t * &self.linking[(x, i)] * &self.linking[(y, i)];
                if delta.is_zero() {
                    continue;
                }
                let updated = &self.linking[(x, y)] + &delta;
                self.linking.set(x, y, updated.clone());
                self.linking.set(y, x, updated);
            }
        }
    }

    /// Retires a trivially filled component: its recorded meridian image is
    /// the dual slope. The curve stays in the manifold and keeps linking
    /// the others, so later twists continue to shift its dual slope.
    fn passify(&mut self, i: usize) {
        let dual = match &self.comps[i] {
            Component::Active { coeff, undo } => {
                debug_assert!(coeff.is_infinity(), "passify requires a trivial filling");
                undo.clone()
            }
            Component::Passive { .. } => return,
        };
        self.comps[i] = Component::Passive { dual };
    }

    fn coeff(&self, i: usize) -> &Slope {
        match &self.comps[i] {
            Component::Active { coeff, .. } => coeff,
            Component::Passive { .. } => unreachable!("coefficient of a passive component"),
        }
    }

    /// One policy step. Moves are tried in order of how little they disturb
    /// the rest of the link: retiring trivial fillings costs nothing,
    /// blowing down a +-1-framed component only shifts by products of its
    /// own linkings, Euclidean self-twists shrink a denominator, and only
    /// a component stuck at an integral coefficient gets driven through a
    /// neighbor (which is what inflates linking numbers). Returns false
    /// when every component is passive.
    fn step(&mut self) -> Result<bool, DualError> {
        let active: Vec<usize> = (0..self.comps.len())
            .filter(|&i| matches!(self.comps[i], Component::Active { .. }))
            .collect();
        if active.is_empty() {
            return Ok(false);
        }
        for &i in &active {
            if self.coeff(i).is_infinity() {
                self.passify(i);
                return Ok(true);
            }
        }
        // Classical blow-down: a +-1-framed unknot retires in one
        // self-twist, wherever it sits.
        for &i in &active {
            let coeff = self.coeff(i);
            if coeff.is_integral() && coeff.numerator().abs().is_one() {
                let t = -coeff.numerator().clone();
                self.twist(i, &t);
                self.passify(i);
                return Ok(true);
            }
        }
        // 1/q coefficient: one self-twist trivializes the filling.
        for &i in &active {
            let coeff = self.coeff(i);
            if coeff.numerator().abs().is_one() {
                let t = -(coeff.numerator() * coeff.denominator());
                self.twist(i, &t);
                return Ok(true);
            }
        }
        // Euclidean self-twist: reduce some denominator modulo its
        // numerator. Only the twisted component's own coefficient changes
        // denominator; everything else shifts by integers.
        for &i in &active {
            let coeff = self.coeff(i).clone();
            let (p, q) = (coeff.numerator().clone(), coeff.denominator().clone());
            if p.is_zero() {
                continue;
            }
            let t = -round_quotient(&q, &p);
            if !t.is_zero() && (&q + &t * &p).abs() < q {
                self.twist(i, &t);
                return Ok(true);
            }
        }
        // Every active coefficient is now p/q with |q| <= |p|/2 (or p = 0).
        // Drive a stuck component through an active neighbor that links it
        // exactly once: the shift acts as Euclid on the numerator, or lands
        // an integral coefficient directly on sign(p). Twisting the driver
        // adds linking between every pair of its other active neighbors, so
        // among all (stuck, driver) pairs take the driver with the fewest
        // such bystanders; a driver whose only active neighbor is the stuck
        // component (a chain end, say) sprays nothing at all.
        let mut best: Option<(usize, usize, usize)> = None;
        for &c in &active {
            for &j in &active {
                if j == c || !self.linking[(c, j)].abs().is_one() {
                    continue;
                }
                let spray = active
                    .iter()
                    .filter(|&&x| x != c && x != j && !self.linking[(x, j)].is_zero())
                    .count();
                if best.map(|(s, ..)| spray < s).unwrap_or(true) {
                    best = Some((spray, c, j));
                }
            }
        }
        if let Some((_, c, j)) = best {
            let coeff = self.coeff(c).clone();
            let (p, q) = (coeff.numerator().clone(), coeff.denominator().clone());
            let t = if q.is_one() {
                let target = if p.is_negative() {
                    -BigInt::one()
                } else {
                    BigInt::one()
                };
                target - &p
            } else {
                -round_quotient(&p, &q)
            };
            if !t.is_zero() {
                self.twist(j, &t);
                return Ok(true);
            }
        }
        let c = active[0];
        Err(DualError::OutOfScope(format!(
            "component {c} has coefficient {} and no remaining driver linking it once",
            self.coeff(c)
        )))
    }
}

/// Nearest integer to a/b, ties toward the floor; b must be nonzero.
fn round_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    let floor = a.div_floor(b);
    let ceil = &floor + BigInt::one();
    let floor_err = (a - &floor * b).abs();
    let ceil_err = (a - &ceil * b).abs();
    if ceil_err < floor_err {
        ceil
    } else {
        floor
    }
}

const STEP_BUDGET: usize = 10_000;

/// Computes dual slopes by explicit move sequences: every component carries
/// its meridian as a mark, Rolfsen twists and blow-downs reduce the surgery
/// description until no filling remains, and each mark's final position is
/// that component's dual slope. Rational coefficients are handled by the
/// Euclidean twist policy; components already filled trivially get dual
/// slope 1/0.
///
/// Errors if the finite part of the multi-slope is not a homology-sphere
/// surgery, or if the reduction stalls (no component linking a stuck one
/// exactly once) or exceeds its step budget.
pub fn dual_slopes_by_moves(link: &FramedLink) -> Result<DualData, DualError> {
    let finite: Vec<usize> = (0..link.len())
        .filter(|&i| link.slope(i).is_finite())
        .collect();
    if !finite.is_empty() {
        let selector = SublinkSelector::from_indices(finite, link.len())
            .expect("indices come from the link");
        let part = link.sublink(&selector).expect("selector matches link");
        let order = h1_order(&part).expect("all selected slopes are finite");
        if !order.is_trivial() {
            return Err(DualError::NotSphere(format!(
                "first homology has order {order}"
            )));
        }
    }
    let mut engine = Engine::new(link);
    for _ in 0..STEP_BUDGET {
        if !engine.step()? {
            let slopes = engine
                .comps
                .iter()
                .map(|comp| match comp {
                    Component::Passive { dual } => dual.clone(),
                    Component::Active { .. } => unreachable!("engine reported completion"),
                })
                .collect();
            return Ok(DualData {
                slopes,
                linking: engine.linking,
            });
        }
    }
    Err(DualError::OutOfScope(
        "reduction exceeded its step budget".to_string(),
    ))
}

/// True when the two linking matrices differ only by reorienting some
/// components, i.e. by conjugation with a diagonal sign matrix.
pub fn linking_agrees_up_to_orientation(a: &IntMatrix, b: &IntMatrix) -> bool {
    if a.rows() != b.rows() || a.cols() != b.cols() || !a.is_square() {
        return false;
    }
    let n = a.rows();
    // Signs are determined greedily component by component; sign of the
    // first component is free.
    'outer: for mask in 0..(1u64 << n.min(20)) {
        let sign = |i: usize| -> BigInt {
            if mask >> i & 1 == 1 {
                -BigInt::one()
            } else {
                BigInt::one()
            }
        };
        for i in 0..n {
            for j in 0..n {
                if &a[(i, j)] * sign(i) * sign(j) != b[(i, j)] {
                    continue 'outer;
                }
            }
        }
        return true;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ChainPresentation;

    fn s(text: &str) -> Slope {
        text.parse().unwrap()
    }

    fn chain_link(text: &str) -> FramedLink {
        text.parse::<ChainPresentation>()
            .unwrap()
            .to_framed_link()
            .unwrap()
    }

    fn matrix(rows: Vec<Vec<i64>>) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn single_unknot_duals() {
        let data = dual_slopes_integral(&matrix(vec![vec![1]])).unwrap();
        assert_eq!(data.slopes, vec![s("-1")]);
        let by_moves = dual_slopes_by_moves(&chain_link("1")).unwrap();
        assert_eq!(by_moves.slopes, vec![s("-1")]);

        let neg = dual_slopes_by_moves(&chain_link("-1")).unwrap();
        assert_eq!(neg.slopes, vec![s("1")]);
    }

    #[test]
    fn reciprocal_single_by_moves() {
        let data = dual_slopes_by_moves(&chain_link("1/3")).unwrap();
        assert_eq!(data.slopes, vec![s("-1/3")]);
        let data = dual_slopes_by_moves(&chain_link("-1/5")).unwrap();
        assert_eq!(data.slopes, vec![s("1/5")]);
    }

    #[test]
    fn hopf_chain_duals() {
        let b = matrix(vec![vec![1, 1], vec![1, 2]]);
        let algebra = dual_slopes_integral(&b).unwrap();
        assert_eq!(algebra.slopes, vec![s("-2"), s("-1")]);
        assert_eq!(algebra.linking[(0, 1)], BigInt::from(1));

        let moves = dual_slopes_by_moves(&chain_link("1, 2")).unwrap();
        assert_eq!(moves.slopes, algebra.slopes);
        assert!(linking_agrees_up_to_orientation(
            &moves.linking,
            &algebra.linking
        ));
    }

    #[test]
    fn identity_presentation_duals() {
        let b = IntMatrix::identity(3);
        let algebra = dual_slopes_integral(&b).unwrap();
        assert_eq!(algebra.slopes, vec![s("-1"), s("-1"), s("-1")]);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(algebra.linking[(i, j)], BigInt::from(0));
            }
        }
        let link = FramedLink::from_parts(
            vec![s("1"), s("1"), s("1")],
            vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 0]],
        )
        .unwrap();
        let moves = dual_slopes_by_moves(&link).unwrap();
        assert_eq!(moves.slopes, algebra.slopes);
        assert_eq!(moves.linking, algebra.linking);
    }

    #[test]
    fn chain_without_blow_down_start() {
        // No +-1 coefficient anywhere: the engine has to create one.
        let link = chain_link("2, 0, -2, 3");
        let moves = dual_slopes_by_moves(&link).unwrap();
        let b = crate::homology::presentation_matrix(&link).unwrap();
        let algebra = dual_slopes_integral(&b).unwrap();
        assert_eq!(moves.slopes, algebra.slopes);
        assert!(linking_agrees_up_to_orientation(
            &moves.linking,
            &algebra.linking
        ));
    }

    #[test]
    fn duality_is_an_involution() {
        for rows in [
            vec![vec![1, 1], vec![1, 2]],
            vec![vec![1, 0], vec![0, -1]],
            vec![vec![2, 1, 0], vec![1, 1, 1], vec![0, 1, 3]],
        ] {
            let b = matrix(rows);
            let dual = dual_slopes_integral(&b).unwrap();
            let again = dual_slopes_integral(&dual.framing_matrix().unwrap()).unwrap();
            assert_eq!(again.framing_matrix().unwrap(), b);
        }
    }

    #[test]
    fn dual_surgery_gives_back_the_sphere() {
        for text in ["1", "1, 2", "2, 0, -2, 3", "1, 2, 2"] {
            let data = dual_slopes_by_moves(&chain_link(text)).unwrap();
            let redual = data.to_framed_link();
            assert!(
                crate::adjacency::is_integer_homology_sphere(&redual).unwrap(),
                "duals of {text}"
            );
        }
    }

    #[test]
    fn trivially_filled_components_pass_through() {
        let link = FramedLink::from_parts(
            vec![s("inf"), s("1")],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        let data = dual_slopes_by_moves(&link).unwrap();
        assert_eq!(data.slopes[1], s("-1"));
        // The unfilled component needs no surgery to undo; shifts fix the
        // meridian class, so its dual stays 1/0 through the reduction.
        assert_eq!(data.slopes[0], Slope::infinity());
    }

    #[test]
    fn non_sphere_presentations_are_rejected() {
        let err = dual_slopes_integral(&matrix(vec![vec![2]])).unwrap_err();
        assert!(err.to_string().contains("not a surgery presentation of S^3"));
        let err = dual_slopes_by_moves(&chain_link("2")).unwrap_err();
        assert!(matches!(err, DualError::NotSphere(_)), "{err}");
        let err = dual_slopes_integral(&matrix(vec![vec![1, 2], vec![1, 1]])).unwrap_err();
        assert_eq!(err, DualError::NotSymmetric);
    }

    #[test]
    fn out_of_scope_is_reported() {
        // Homology sphere (|2*4 - 9| = 1) whose only linking number is 3:
        // no +-1 component, no denominator to shrink, and neither component
        // links the other once, so the move policy stalls honestly instead
        // of guessing.
        let link = FramedLink::from_parts(
            vec![s("2"), s("4")],
            vec![vec![0, 3], vec![3, 0]],
        )
        .unwrap();
        let err = dual_slopes_by_moves(&link).unwrap_err();
        assert!(matches!(err, DualError::OutOfScope(_)), "{err}");
        assert!(err.to_string().contains("out of oracle scope"));
    }

    #[test]
    fn mixed_rational_chain_duals_undo() {
        // Rational chain that is a homology sphere: (1/2, 1) has det -1.
        let data = dual_slopes_by_moves(&chain_link("1/2, 1")).unwrap();
        assert!(
            crate::adjacency::is_integer_homology_sphere(&data.to_framed_link()).unwrap()
        );
    }
}
