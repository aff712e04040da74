//! Framed links: the algebraic shadow of a surgery presentation.
//!
//! A [`FramedLink`] records everything the rest of the crate needs about a
//! surgery diagram: component labels, a symmetric zero-diagonal linking
//! matrix, and one surgery [`Slope`] per component. The slope `inf` means
//! "no surgery on this component", which lets a single value describe
//! surgery on a sublink while keeping the other components around.
//!
//! Geometry is deliberately absent: no crossings, no isotopy. Diagrams are
//! ingested separately (see [`crate::pd`]) and collapse to this shadow.

use crate::matrix::IntMatrix;
use crate::slope::Slope;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinkError {
    #[error("a framed link needs at least one component")]
    Empty,
    #[error("{labels} labels for {components} components")]
    LabelCount { labels: usize, components: usize },
    #[error("duplicate component label `{0}`")]
    DuplicateLabel(String),
    #[error("linking matrix must be {expected}x{expected}, got {rows}x{cols}")]
    LinkingShape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("linking matrix must be symmetric: entry ({i},{j}) is {a}, entry ({j},{i}) is {b}")]
    Asymmetric {
        i: usize,
        j: usize,
        a: BigInt,
        b: BigInt,
    },
    #[error("self-linking is not stored here: diagonal entry ({i},{i}) is {value}, expected 0")]
    NonzeroDiagonal { i: usize, value: BigInt },
    #[error("component index {index} out of range for {len} components")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("selector out of range: ambient size {selector} does not match link with {link} components")]
    AmbientMismatch { selector: usize, link: usize },
    #[error("sublink selector must be nonempty")]
    EmptySelection,
    #[error("not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("invalid link JSON: {0}")]
    Json(String),
}

/// A labelled framed link: linking matrix plus one slope per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedLink {
    labels: Vec<String>,
    slopes: Vec<Slope>,
    linking: IntMatrix,
}

impl FramedLink {
    /// Builds a link with default labels `K1, K2, ...`.
    pub fn new(slopes: Vec<Slope>, linking: IntMatrix) -> Result<Self, LinkError> {
        let labels = (1..=slopes.len()).map(|i| format!("K{i}")).collect();
        Self::with_labels(labels, slopes, linking)
    }

    pub fn with_labels(
        labels: Vec<String>,
        slopes: Vec<Slope>,
        linking: IntMatrix,
    ) -> Result<Self, LinkError> {
        let n = slopes.len();
        if n == 0 {
            return Err(LinkError::Empty);
        }
        if labels.len() != n {
            return Err(LinkError::LabelCount {
                labels: labels.len(),
                components: n,
            });
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(LinkError::DuplicateLabel(label.clone()));
            }
        }
        if linking.rows() != n || linking.cols() != n {
            return Err(LinkError::LinkingShape {
                expected: n,
                rows: linking.rows(),
                cols: linking.cols(),
            });
        }
        for i in 0..n {
            if !linking.get(i, i).is_zero() {
                return Err(LinkError::NonzeroDiagonal {
                    i,
                    value: linking.get(i, i).clone(),
                });
            }
            for j in i + 1..n {
                if linking.get(i, j) != linking.get(j, i) {
                    return Err(LinkError::Asymmetric {
                        i,
                        j,
                        a: linking.get(i, j).clone(),
                        b: linking.get(j, i).clone(),
                    });
                }
            }
        }
        Ok(FramedLink {
            labels,
            slopes,
            linking,
        })
    }

    /// Convenience builder from small integer linking rows.
    pub fn from_parts(slopes: Vec<Slope>, linking_rows: Vec<Vec<i64>>) -> Result<Self, LinkError> {
        let linking = IntMatrix::from_rows(linking_rows).map_err(|e| LinkError::Json(e.to_string()))?;
        Self::new(slopes, linking)
    }

    pub fn len(&self) -> usize {
        self.slopes.len()
    }

    /// Always false: construction enforces at least one component.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn slopes(&self) -> &[Slope] {
        &self.slopes
    }

    pub fn slope(&self, i: usize) -> &Slope {
        &self.slopes[i]
    }

    pub fn linking(&self) -> &IntMatrix {
        &self.linking
    }

    pub fn linking_number(&self, i: usize, j: usize) -> &BigInt {
        self.linking.get(i, j)
    }

    /// Restriction to the selected components, preserving order.
    pub fn sublink(&self, sel: &SublinkSelector) -> Result<FramedLink, LinkError> {
        if sel.ambient() != self.len() {
            return Err(LinkError::AmbientMismatch {
                selector: sel.ambient(),
                link: self.len(),
            });
        }
        let idx = sel.indices();
        let labels = idx.iter().map(|&i| self.labels[i].clone()).collect();
        let slopes = idx.iter().map(|&i| self.slopes[i].clone()).collect();
        let linking = IntMatrix::from_fn(idx.len(), idx.len(), |a, b| {
            self.linking.get(idx[a], idx[b]).clone()
        });
        FramedLink::with_labels(labels, slopes, linking)
    }

    /// The link with components reordered so that new position `i` holds old
    /// component `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<FramedLink, LinkError> {
        let n = self.len();
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(LinkError::NotPermutation(n));
        }
        for &p in perm {
            if p >= n || seen[p] {
                return Err(LinkError::NotPermutation(n));
            }
            seen[p] = true;
        }
        let labels = perm.iter().map(|&i| self.labels[i].clone()).collect();
        let slopes = perm.iter().map(|&i| self.slopes[i].clone()).collect();
        let linking = IntMatrix::from_fn(n, n, |a, b| self.linking.get(perm[a], perm[b]).clone());
        FramedLink::with_labels(labels, slopes, linking)
    }

    /// A copy with one slope replaced.
    pub fn with_slope(&self, index: usize, slope: Slope) -> Result<FramedLink, LinkError> {
        if index >= self.len() {
            return Err(LinkError::IndexOutOfRange {
                index,
                len: self.len(),
            });
        }
        let mut out = self.clone();
        out.slopes[index] = slope;
        Ok(out)
    }

    pub fn from_json_str(text: &str) -> Result<Self, LinkError> {
        serde_json::from_str(text).map_err(|e| LinkError::Json(e.to_string()))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("link serialization cannot fail")
    }
}

#[derive(Serialize, Deserialize)]
struct LinkWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    linking: Vec<Vec<i64>>,
    slopes: Vec<Slope>,
}

impl Serialize for FramedLink {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let n = self.len();
        let mut linking = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let v = self.linking.get(i, j).to_i64().ok_or_else(|| {
                    serde::ser::Error::custom(format!(
                        "linking number at ({i},{j}) too large for the JSON wire format"
                    ))
                })?;
                row.push(v);
            }
            linking.push(row);
        }
        LinkWire {
            labels: Some(self.labels.clone()),
            linking,
            slopes: self.slopes.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FramedLink {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = LinkWire::deserialize(deserializer)?;
        let linking =
            IntMatrix::from_rows(wire.linking).map_err(serde::de::Error::custom)?;
        match wire.labels {
            Some(labels) => FramedLink::with_labels(labels, wire.slopes, linking),
            None => FramedLink::new(wire.slopes, linking),
        }
        .map_err(serde::de::Error::custom)
    }
}

/// A nonempty subset of component indices (0-based) of an `n`-component link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SublinkSelector {
    indices: Vec<usize>,
    ambient: usize,
}

impl SublinkSelector {
    /// Selects every component.
    pub fn full(n: usize) -> Self {
        debug_assert!(n >= 1, "a link has at least one component");
        SublinkSelector {
            indices: (0..n).collect(),
            ambient: n,
        }
    }

    /// Sorted, deduplicated selection of the given indices.
    pub fn from_indices(
        indices: impl IntoIterator<Item = usize>,
        ambient: usize,
    ) -> Result<Self, LinkError> {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        indices.sort_unstable();
        indices.dedup();
        if indices.is_empty() {
            return Err(LinkError::EmptySelection);
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= ambient) {
            return Err(LinkError::IndexOutOfRange {
                index: bad,
                len: ambient,
            });
        }
        Ok(SublinkSelector { indices, ambient })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_full(&self) -> bool {
        self.indices.len() == self.ambient
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    /// All nonempty subsets of `0..n` in lexicographic order of their sorted
    /// index sequences: `{0}, {0,1}, {0,1,2}, ..., {n-1}`.
    pub fn all_nonempty(n: usize) -> SubsetIter {
        SubsetIter {
            next: if n == 0 { None } else { Some(vec![0]) },
            ambient: n,
        }
    }

    /// As `all_nonempty`, excluding the full set.
    pub fn proper_nonempty(n: usize) -> impl Iterator<Item = SublinkSelector> {
        Self::all_nonempty(n).filter(|s| !s.is_full())
    }
}

/// Iterator over nonempty index subsets in lexicographic order.
pub struct SubsetIter {
    next: Option<Vec<usize>>,
    ambient: usize,
}

impl Iterator for SubsetIter {
    type Item = SublinkSelector;

    fn next(&mut self) -> Option<SublinkSelector> {
        let current = self.next.take()?;
        let item = SublinkSelector {
            indices: current.clone(),
            ambient: self.ambient,
        };
        let mut s = current;
        // Lex successor: extend with last+1 if possible, else pop trailing
        // elements until one can be incremented.
        let extend = s.last().is_some_and(|&l| l + 1 < self.ambient);
        if extend {
            let next_val = *s.last().expect("nonempty") + 1;
            s.push(next_val);
            self.next = Some(s);
        } else {
            loop {
                match s.pop() {
                    Some(last) if last + 1 < self.ambient => {
                        s.push(last + 1);
                        self.next = Some(s);
                        break;
                    }
                    Some(_) => continue,
                    None => {
                        self.next = None;
                        break;
                    }
                }
            }
        }
        Some(item)
    }
}
