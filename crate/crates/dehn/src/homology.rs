//! First homology of a manifold obtained by rational surgery on a link.
//!
//! For a framed link with slopes `p_i/q_i` and linking numbers `l_ij`, the
//! surgered manifold has `H_1` presented by the square matrix
//!
//! ```text
//! A_ii = p_i,    A_ij = q_j * l_ij   (i != j)
//! ```
//!
//! where the denominator is indexed by the column. The cokernel of `A` is
//! read off its Smith normal form; the order is `|det A|` computed
//! independently by fraction-free elimination, so the two public routes to
//! the order can cross-check each other.

use crate::link::FramedLink;
use crate::matrix::IntMatrix;
use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    /// An `inf` slope means the component is not surgered; take the
    /// surgered sublink before asking for homology.
    #[error("unsurgered component `{label}`: restrict to the surgered sublink first")]
    UnsurgeredComponent { label: String },
    #[error("invalid invariant factors: {0}")]
    InvalidGroup(String),
}

/// Order of a group: a positive integer or infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Order {
    Finite(BigUint),
    Infinite,
}

impl Order {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Order::Finite(n) if n.is_one())
    }

    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

impl From<u32> for Order {
    fn from(n: u32) -> Self {
        Order::Finite(n.into())
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// A finitely generated abelian group in invariant-factor form:
/// free rank plus a divisor chain `d_1 | d_2 | ...` with every `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    rank: usize,
    torsion: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn new(rank: usize, torsion: Vec<BigUint>) -> Result<Self, HomologyError> {
        for (i, d) in torsion.iter().enumerate() {
            if *d < BigUint::from(2u32) {
                return Err(HomologyError::InvalidGroup(format!(
                    "factor {d} is not >= 2"
                )));
            }
            if i > 0 && !(d % &torsion[i - 1]).is_zero() {
                return Err(HomologyError::InvalidGroup(format!(
                    "{} does not divide {d}",
                    torsion[i - 1]
                )));
            }
        }
        Ok(AbelianGroup { rank, torsion })
    }

    pub fn trivial() -> Self {
        AbelianGroup {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Product of the invariant factors, or infinite when rank > 0.
    pub fn order(&self) -> Order {
        if self.rank > 0 {
            Order::Infinite
        } else {
            Order::Finite(self.torsion.iter().product())
        }
    }
}

impl fmt::Display for AbelianGroup {
    /// `0`, `Z`, `Z/3`, `Z^2 + Z/2 + Z/6`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct GroupWire {
    rank: usize,
    torsion: Vec<String>,
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GroupWire {
            rank: self.rank,
            torsion: self.torsion.iter().map(|d| d.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AbelianGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = GroupWire::deserialize(deserializer)?;
        let torsion = wire
            .torsion
            .iter()
            .map(|t| t.parse::<BigUint>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        AbelianGroup::new(wire.rank, torsion).map_err(serde::de::Error::custom)
    }
}

/// The presentation matrix of `H_1` of the surgered manifold.
///
/// All slopes must be finite; restrict to the surgered sublink first if some
/// components carry `inf`.
pub fn presentation_matrix(link: &FramedLink) -> Result<IntMatrix, HomologyError> {
    let n = link.len();
    for i in 0..n {
        if link.slope(i).is_infinity() {
            return Err(HomologyError::UnsurgeredComponent {
                label: link.label(i).to_string(),
            });
        }
    }
    Ok(IntMatrix::from_fn(n, n, |i, j| {
        if i == j {
            link.slope(i).numerator().clone()
        } else {
            link.slope(j).denominator() * link.linking_number(i, j)
        }
    }))
}

/// First homology as an abelian group, via Smith normal form.
pub fn h1(link: &FramedLink) -> Result<AbelianGroup, HomologyError> {
    let a = presentation_matrix(link)?;
    let snf = a.smith_normal_form();
    let mut rank = 0;
    let mut torsion = Vec::new();
    for d in snf.diagonal() {
        if d.is_zero() {
            rank += 1;
        } else if !d.is_one() {
            torsion.push(d.to_biguint().expect("normal form diagonal is nonnegative"));
        }
    }
    AbelianGroup::new(rank, torsion)
}

/// Order of first homology via `|det|` of the presentation matrix.
///
/// This route never touches Smith normal form, so it independently
/// cross-checks [`h1`].
pub fn h1_order(link: &FramedLink) -> Result<Order, HomologyError> {
    let a = presentation_matrix(link)?;
    let det = a.determinant().expect("presentation matrix is square");
    if det.is_zero() {
        Ok(Order::Infinite)
    } else {
        Ok(Order::Finite(
            det.abs().to_biguint().expect("absolute value"),
        ))
    }
}

/// `|det|` of an explicit square presentation, for callers that already
/// have a matrix rather than a link.
pub fn matrix_order(a: &IntMatrix) -> Option<Order> {
    let det = a.determinant().ok()?;
    Some(if det.is_zero() {
        Order::Infinite
    } else {
        Order::Finite(det.abs().to_biguint().expect("absolute value"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slope::Slope;

    fn link(slopes: &[&str], rows: Vec<Vec<i64>>) -> FramedLink {
        let slopes: Vec<Slope> = slopes.iter().map(|s| s.parse().unwrap()).collect();
        FramedLink::from_parts(slopes, rows).unwrap()
    }

    fn star_triple() -> FramedLink {
        link(
            &["1", "1/2", "1/2"],
            vec![vec![0, 1, 1], vec![1, 0, 0], vec![1, 0, 0]],
        )
    }

    fn path_triple() -> FramedLink {
        link(
            &["1", "1/2", "1"],
            vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]],
        )
    }

    #[test]
    fn presentation_matrix_convention() {
        let a = presentation_matrix(&star_triple()).unwrap();
        let expected =
            IntMatrix::from_rows(vec![vec![1, 2, 2], vec![1, 1, 0], vec![1, 0, 1]]).unwrap();
        assert_eq!(a, expected);

        let b = presentation_matrix(&path_triple()).unwrap();
        let expected =
            IntMatrix::from_rows(vec![vec![1, 2, 0], vec![1, 1, 1], vec![0, 2, 1]]).unwrap();
        assert_eq!(b, expected);
    }

    #[test]
    fn two_component_determinant_formula() {
        // slopes 1/3 and 1/2 with linking 2: order |3*2*4 - 1| = 23
        let l = link(&["1/3", "1/2"], vec![vec![0, 2], vec![2, 0]]);
        assert_eq!(h1_order(&l).unwrap(), Order::Finite(23u32.into()));

        let a = presentation_matrix(&l).unwrap();
        let expected = IntMatrix::from_rows(vec![vec![1, 4], vec![6, 1]]).unwrap();
        assert_eq!(a, expected);
    }

    #[test]
    fn triples_have_order_three() {
        for l in [star_triple(), path_triple()] {
            assert_eq!(h1_order(&l).unwrap(), Order::Finite(3u32.into()));
            let g = h1(&l).unwrap();
            assert_eq!(g.to_string(), "Z/3");
            assert_eq!(g.order(), Order::Finite(3u32.into()));
        }
    }

    #[test]
    fn zero_linking_reciprocal_slopes_are_trivial() {
        let l = link(
            &["1", "-1/3", "1/5"],
            vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 0]],
        );
        assert!(h1(&l).unwrap().is_trivial());
        assert!(h1_order(&l).unwrap().is_trivial());
    }

    #[test]
    fn hopf_pair_is_sphere() {
        let l = link(&["1", "1/2"], vec![vec![0, 1], vec![1, 0]]);
        assert!(h1(&l).unwrap().is_trivial());
    }

    #[test]
    fn zero_surgery_gives_free_part() {
        let l = link(&["0"], vec![vec![0]]);
        let g = h1(&l).unwrap();
        assert_eq!(g.rank(), 1);
        assert_eq!(g.to_string(), "Z");
        assert_eq!(h1_order(&l).unwrap(), Order::Infinite);
        assert_eq!(g.order(), Order::Infinite);
    }

    #[test]
    fn unsurgered_component_is_an_error() {
        let slopes: Vec<Slope> = vec!["inf".parse().unwrap(), "1".parse().unwrap()];
        let l = FramedLink::from_parts(slopes, vec![vec![0, 0], vec![0, 0]]).unwrap();
        let err = h1(&l).unwrap_err();
        assert_eq!(
            err,
            HomologyError::UnsurgeredComponent {
                label: "K1".into()
            }
        );
        assert!(err.to_string().contains("restrict"));
    }

    #[test]
    fn permutation_invariance_spot_check() {
        let l = path_triple();
        let p = l.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(h1(&l).unwrap(), h1(&p).unwrap());
    }

    #[test]
    fn group_display_and_validation() {
        let g = AbelianGroup::new(2, vec![2u32.into(), 6u32.into()]).unwrap();
        assert_eq!(g.to_string(), "Z^2 + Z/2 + Z/6");
        assert_eq!(g.order(), Order::Infinite);
        assert_eq!(AbelianGroup::trivial().to_string(), "0");

        assert!(AbelianGroup::new(0, vec![1u32.into()]).is_err());
        assert!(AbelianGroup::new(0, vec![2u32.into(), 3u32.into()]).is_err());
    }

    #[test]
    fn group_serde_round_trip() {
        let g = AbelianGroup::new(1, vec![4u32.into()]).unwrap();
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"rank":1,"torsion":["4"]}"#);
        let back: AbelianGroup = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<AbelianGroup>(r#"{"rank":0,"torsion":["2","3"]}"#).is_err());
    }
}
