//! Kirby calculus on linear chains of unknots: slam dunks, blow-downs,
//! Rolfsen twists with meridian tracking, and lens space recognition.
//!
//! A chain is an ordered list of rational surgery coefficients on unknots,
//! consecutive components forming Hopf pairs and non-consecutive components
//! unlinked. All moves are pure: they return a new chain.
//!
//! Scope notes. Rolfsen twists are only offered on components with at most
//! one chain neighbor: twisting an interior component links its two
//! neighbors to each other, which a linear chain cannot record. Lens
//! recognition reduces a chain until every coefficient is integral and then
//! evaluates the continued fraction; chains that keep a non-integral
//! coefficient away from both ends can present Seifert fibered spaces that
//! are not lens spaces (for example (2, 1/2, 2) has first homology
//! Z/2 + Z/2), and those are reported as errors rather than mis-recognized.

use crate::cf::{evaluate_chain, expand_negative, CfError};
use crate::homology::Order;
use crate::link::FramedLink;
use crate::matrix::IntMatrix;
use crate::slope::Slope;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("chain must be nonempty")]
    Empty,
    #[error("index {index} out of range for chain of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("not blow-downable: coefficient {coefficient} at index {index} is not +1 or -1")]
    NotBlowDownable { index: usize, coefficient: Slope },
    #[error("interior twist would break the chain: component {index} has two neighbors")]
    InteriorTwist { index: usize },
    #[error("mark component {index} out of range for chain of length {len}")]
    MarkOutOfRange { index: usize, len: usize },
    #[error("not recognizably a lens space: {0}")]
    NotLens(String),
    #[error("lens parameters must be coprime: ({p}, {q})")]
    LensParameters { p: BigInt, q: BigInt },
    #[error(transparent)]
    Cf(#[from] CfError),
}

/// A tracked curve on the boundary torus of one chain component, stored in
/// that component's own (meridian, longitude) basis. The meridian itself is
/// the slope 1/0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeridianMark {
    pub component: usize,
    pub curve: Slope,
}

/// One applied move, loggable and replayable via [`ChainPresentation::apply`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainMove {
    SlamDunk,
    BlowDown { index: usize },
    RolfsenTwist { index: usize, t: BigInt },
}

impl fmt::Display for ChainMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainMove::SlamDunk => write!(f, "slam-dunk"),
            ChainMove::BlowDown { index } => write!(f, "blow-down at {index}"),
            ChainMove::RolfsenTwist { index, t } => write!(f, "rolfsen-twist t={t} at {index}"),
        }
    }
}

/// Surgery coefficients on a linear chain of unknots, with optional tracked
/// meridian marks. Constructed nonempty; moves may legitimately empty it
/// (blowing down the last component leaves a surgery description of S3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainPresentation {
    coeffs: Vec<Slope>,
    marks: Vec<MeridianMark>,
}

impl ChainPresentation {
    pub fn new(coeffs: Vec<Slope>) -> Result<Self, ChainError> {
        if coeffs.is_empty() {
            return Err(ChainError::Empty);
        }
        Ok(ChainPresentation {
            coeffs,
            marks: Vec::new(),
        })
    }

    pub fn from_integers(coeffs: Vec<i64>) -> Result<Self, ChainError> {
        Self::new(coeffs.into_iter().map(Slope::from).collect())
    }

    /// Places a meridian mark (slope 1/0) on every component.
    pub fn with_meridians(mut self) -> Self {
        self.marks = (0..self.coeffs.len())
            .map(|component| MeridianMark {
                component,
                curve: Slope::infinity(),
            })
            .collect();
        self
    }

    pub fn with_marks(mut self, marks: Vec<MeridianMark>) -> Result<Self, ChainError> {
        for mark in &marks {
            if mark.component >= self.coeffs.len() {
                return Err(ChainError::MarkOutOfRange {
                    index: mark.component,
                    len: self.coeffs.len(),
                });
            }
        }
        self.marks = marks;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficients(&self) -> &[Slope] {
        &self.coeffs
    }

    pub fn marks(&self) -> &[MeridianMark] {
        &self.marks
    }

    fn check_index(&self, index: usize) -> Result<(), ChainError> {
        if index >= self.coeffs.len() {
            return Err(ChainError::IndexOutOfRange {
                index,
                len: self.coeffs.len(),
            });
        }
        Ok(())
    }

    /// The chain as a framed link: consecutive components link once,
    /// non-consecutive components are unlinked.
    pub fn to_framed_link(&self) -> Result<FramedLink, ChainError> {
        let n = self.coeffs.len();
        if n == 0 {
            return Err(ChainError::Empty);
        }
        let mut linking = IntMatrix::zeros(n, n);
        for i in 0..n.saturating_sub(1) {
            linking.set(i, i + 1, BigInt::one());
            linking.set(i + 1, i, BigInt::one());
        }
        Ok(FramedLink::new(self.coeffs.clone(), linking).expect("chain data is a valid link"))
    }

    /// Expands a non-integral last coefficient into its negative
    /// continued-fraction tail of integral coefficients. Integral or
    /// trivial (1/0) last coefficient: no-op.
    pub fn slam_dunk(&self) -> Result<Self, ChainError> {
        let last = self.coeffs.last().ok_or(ChainError::Empty)?;
        if last.is_integral() || last.is_infinity() {
            return Ok(self.clone());
        }
        let expansion = expand_negative(last)?;
        let mut coeffs = self.coeffs[..self.coeffs.len() - 1].to_vec();
        coeffs.extend(expansion.into_iter().map(Slope::integer));
        Ok(ChainPresentation {
            coeffs,
            marks: self.marks.clone(),
        })
    }

    /// Removes a component whose coefficient is exactly +1 or -1. Each
    /// neighbor's coefficient decreases by that sign; former neighbors
    /// become adjacent. Marks on the removed component are dropped (full
    /// dual-slope tracking through removals lives in the dual module);
    /// marks on neighbors pick up the induced framing shift.
    pub fn blow_down(&self, index: usize) -> Result<Self, ChainError> {
        self.check_index(index)?;
        let c = &self.coeffs[index];
        if !(c.is_integral() && c.numerator().abs().is_one()) {
            return Err(ChainError::NotBlowDownable {
                index,
                coefficient: c.clone(),
            });
        }
        let epsilon = c.numerator().clone();
        let shift = -&epsilon;
        let mut coeffs = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, coeff) in self.coeffs.iter().enumerate() {
            if i == index {
                continue;
            }
            if i + 1 == index || i == index + 1 {
                coeffs.push(coeff.shifted(&shift));
            } else {
                coeffs.push(coeff.clone());
            }
        }
        let marks = self
            .marks
            .iter()
            .filter(|m| m.component != index)
            .map(|m| {
                let curve = if m.component + 1 == index || m.component == index + 1 {
                    m.curve.shifted(&shift)
                } else {
                    m.curve.clone()
                };
                let component = if m.component > index {
                    m.component - 1
                } else {
                    m.component
                };
                MeridianMark { component, curve }
            })
            .collect();
        Ok(ChainPresentation { coeffs, marks })
    }

    /// Twists t times along the disk of the component at `index`: its
    /// coefficient p/q becomes p/(q + t p) and its single chain neighbor
    /// (if any) shifts by t. Only end components (or an isolated one) may
    /// be twisted; an interior twist would link the two neighbors.
    pub fn rolfsen_twist(&self, index: usize, t: impl Into<BigInt>) -> Result<Self, ChainError> {
        self.check_index(index)?;
        let n = self.coeffs.len();
        if n > 1 && index != 0 && index != n - 1 {
            return Err(ChainError::InteriorTwist { index });
        }
        let t = t.into();
        let neighbor = if n == 1 {
            None
        } else if index == 0 {
            Some(1)
        } else {
            Some(n - 2)
        };
        let mut coeffs = self.coeffs.clone();
        coeffs[index] = coeffs[index].twisted(&t);
        if let Some(nb) = neighbor {
            coeffs[nb] = coeffs[nb].shifted(&t);
        }
        let marks = self
            .marks
            .iter()
            .map(|m| {
                let curve = if m.component == index {
                    m.curve.twisted(&t)
                } else if Some(m.component) == neighbor {
                    m.curve.shifted(&t)
                } else {
                    m.curve.clone()
                };
                MeridianMark {
                    component: m.component,
                    curve,
                }
            })
            .collect();
        Ok(ChainPresentation { coeffs, marks })
    }

    /// Replays a logged move.
    pub fn apply(&self, mv: &ChainMove) -> Result<Self, ChainError> {
        match mv {
            ChainMove::SlamDunk => self.slam_dunk(),
            ChainMove::BlowDown { index } => self.blow_down(*index),
            ChainMove::RolfsenTwist { index, t } => self.rolfsen_twist(*index, t.clone()),
        }
    }

    /// Greedy normalization: slam-dunk a non-integral last coefficient,
    /// otherwise blow down the lowest +/-1 coefficient, until neither move
    /// applies. Terminates because a slam dunk lowers the number of
    /// non-integral coefficients and a blow-down lowers the length without
    /// raising it. The result need not be empty even for S3 chains; the
    /// returned script replays the reduction.
    pub fn reduce(&self) -> (Self, Vec<ChainMove>) {
        let mut chain = self.clone();
        let mut script = Vec::new();
        loop {
            if chain.is_empty() {
                return (chain, script);
            }
            let last = chain.coeffs.last().expect("nonempty");
            if !last.is_integral() && !last.is_infinity() {
                chain = chain.slam_dunk().expect("last coefficient is expandable");
                script.push(ChainMove::SlamDunk);
                continue;
            }
            let target = chain
                .coeffs
                .iter()
                .position(|c| c.is_integral() && c.numerator().abs().is_one());
            match target {
                Some(index) => {
                    chain = chain.blow_down(index).expect("coefficient is +/-1");
                    script.push(ChainMove::BlowDown { index });
                }
                None => return (chain, script),
            }
        }
    }

    /// Recognizes the surgered manifold as a lens space.
    ///
    /// The chain is reduced by blow-downs and by expanding non-integral
    /// end coefficients (either end) until every coefficient is integral;
    /// the negative continued fraction of an integral chain names the lens
    /// space exactly, with value p/q recognized as L(p, q) and the empty
    /// chain as S3. Trivial 1/0 coefficients at the ends are discarded; an
    /// interior 1/0 splits the chain into a connected sum, recognizable
    /// only when one side is S3. A non-integral coefficient that cannot
    /// reach an end is an error: such chains can present Seifert fibered
    /// spaces that are not lens spaces.
    pub fn to_lens(&self) -> Result<LensSpace, ChainError> {
        lens_of_coeffs(&self.coeffs)
    }
}

fn is_plus_minus_one(c: &Slope) -> bool {
    c.is_integral() && c.numerator().abs().is_one()
}

fn lens_of_coeffs(coeffs: &[Slope]) -> Result<LensSpace, ChainError> {
    let mut work: Vec<Slope> = coeffs.to_vec();
    loop {
        match work.len() {
            0 => return Ok(LensSpace::sphere()),
            1 => return LensSpace::from_slope(&work[0]),
            _ => {}
        }
        if work.first().expect("nonempty").is_infinity() {
            work.remove(0);
            continue;
        }
        if work.last().expect("nonempty").is_infinity() {
            work.pop();
            continue;
        }
        if let Some(split) = work.iter().position(|c| c.is_infinity()) {
            let left = lens_of_coeffs(&work[..split])?;
            let right = lens_of_coeffs(&work[split + 1..])?;
            if left.is_sphere() {
                return Ok(right);
            }
            if right.is_sphere() {
                return Ok(left);
            }
            return Err(ChainError::NotLens(format!(
                "connected sum {left} # {right} of nontrivial pieces"
            )));
        }
        if let Some(index) = work.iter().position(is_plus_minus_one) {
            let shift = -work[index].numerator();
            if index > 0 {
                work[index - 1] = work[index - 1].shifted(&shift);
            }
            if index + 1 < work.len() {
                work[index + 1] = work[index + 1].shifted(&shift);
            }
            work.remove(index);
            continue;
        }
        if !work.last().expect("nonempty").is_integral() {
            let expansion = expand_negative(work.last().expect("nonempty"))?;
            work.pop();
            work.extend(expansion.into_iter().map(Slope::integer));
            continue;
        }
        if !work.first().expect("nonempty").is_integral() {
            let expansion = expand_negative(work.first().expect("nonempty"))?;
            work.remove(0);
            for c in expansion {
                work.insert(0, Slope::integer(c));
            }
            continue;
        }
        if let Some(stuck) = work.iter().position(|c| !c.is_integral()) {
            return Err(ChainError::NotLens(format!(
                "interior coefficient {} cannot be made integral by chain moves",
                work[stuck]
            )));
        }
        let value = evaluate_chain(&work)?;
        return LensSpace::from_slope(&value);
    }
}

impl fmt::Display for ChainPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("(empty)");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for ChainPresentation {
    type Err = ChainError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let coeffs = text
            .split(',')
            .map(str::trim)
            .filter(|piece| !piece.is_empty())
            .map(|piece| {
                piece
                    .parse::<Slope>()
                    .map_err(|e| ChainError::NotLens(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>();
        match coeffs {
            Ok(coeffs) if coeffs.is_empty() => Err(ChainError::Empty),
            Ok(coeffs) => ChainPresentation::new(coeffs),
            Err(_) => Err(ChainError::NotLens(format!("unreadable chain `{text}`"))),
        }
    }
}

/// An oriented lens space in canonical form, together with the special
/// cases S3 (p = 1) and S1xS2 (p = 0).
///
/// The stored q is the smaller of q and its multiplicative inverse mod p,
/// so two values are the same oriented manifold iff they are equal;
/// orientation reversal sends (p, q) to (p, p - q).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LensSpace {
    p: BigInt,
    q: BigInt,
}

impl LensSpace {
    pub fn sphere() -> Self {
        LensSpace {
            p: BigInt::one(),
            q: BigInt::zero(),
        }
    }

    pub fn s1_times_s2() -> Self {
        LensSpace {
            p: BigInt::zero(),
            q: BigInt::one(),
        }
    }

    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, ChainError> {
        let (mut p, mut q) = (p.into(), q.into());
        if p.is_negative() {
            p = -p;
            q = -q;
        }
        if p.is_zero() {
            if !q.abs().is_one() {
                return Err(ChainError::LensParameters { p, q });
            }
            return Ok(LensSpace::s1_times_s2());
        }
        if p.is_one() {
            return Ok(LensSpace::sphere());
        }
        let q_mod = q.mod_floor(&p);
        if !q_mod.gcd(&p).is_one() {
            return Err(ChainError::LensParameters { p, q });
        }
        let inverse = q_mod.extended_gcd(&p).x.mod_floor(&p);
        let canonical = q_mod.min(inverse);
        Ok(LensSpace { p, q: canonical })
    }

    /// The lens space of p/q surgery on the unknot: L(p, q), with 1/0
    /// recognized as S3 and 0 as S1xS2.
    pub fn from_slope(r: &Slope) -> Result<Self, ChainError> {
        LensSpace::new(r.numerator().clone(), r.denominator().clone())
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn is_sphere(&self) -> bool {
        self.p.is_one()
    }

    pub fn is_s1_times_s2(&self) -> bool {
        self.p.is_zero()
    }

    /// Order of first homology: p, or infinite for S1xS2.
    pub fn order(&self) -> Order {
        if self.p.is_zero() {
            Order::Infinite
        } else {
            Order::Finite(self.p.to_biguint().expect("p is nonnegative"))
        }
    }

    pub fn orientation_reversed(&self) -> Self {
        if self.p <= BigInt::one() {
            return self.clone();
        }
        LensSpace::new(self.p.clone(), &self.p - &self.q)
            .expect("reversal preserves coprimality")
    }

    /// Homeomorphism test. Oriented: L(p, q) = L(p, q') iff q' is q or its
    /// inverse mod p (both folded into the canonical form, so this is
    /// equality). Unoriented: additionally allow the orientation reversal.
    pub fn equivalent(&self, other: &Self, oriented: bool) -> bool {
        if self == other {
            return true;
        }
        !oriented && *self == other.orientation_reversed()
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_sphere() {
            f.write_str("S3")
        } else if self.is_s1_times_s2() {
            f.write_str("S1xS2")
        } else {
            write!(f, "L({},{})", self.p, self.q)
        }
    }
}

/// First homology order of the chain's surgery, straight off the chain:
/// useful as an independent cross-check against lens recognition.
pub fn chain_h1_order(chain: &ChainPresentation) -> Result<Order, ChainError> {
    let link = chain.to_framed_link()?;
    crate::homology::h1_order(&link)
        .map_err(|e| ChainError::NotLens(format!("homology unavailable: {e}")))
}
