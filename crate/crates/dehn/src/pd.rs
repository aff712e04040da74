//! Signed planar-diagram codes.
//!
//! The text format is one crossing per line:
//!
//! ```text
//! # optional comments
//! component A
//! component B
//! X[1,3,2,4] sign=+ comps=(A,B)
//! X[3,1,4,2] sign=+ comps=(B,A)
//! ```
//!
//! Strand labels are positive integers, each appearing exactly twice across
//! the whole diagram. `component` lines are optional; when present they must
//! precede all crossings and declare every label used. Signs are recorded
//! relative to the orientations the code was written with; consumers that
//! need orientation independence use absolute values of linking numbers.
//!
//! The only derived quantity here is the linking matrix: half the signed
//! sum of crossings between each pair of distinct components.

use crate::link::FramedLink;
use crate::matrix::IntMatrix;
use crate::slope::Slope;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PdError {
    #[error("line {line}, column {column}: malformed token ({detail})")]
    MalformedToken {
        line: usize,
        column: usize,
        detail: String,
    },
    #[error("line {line}, column {column}: unsigned crossing (expected `sign=+` or `sign=-`)")]
    UnsignedCrossing { line: usize, column: usize },
    #[error("line {line}, column {column}: unknown component `{label}`")]
    UnknownComponent {
        line: usize,
        column: usize,
        label: String,
    },
    #[error("line {line}, column {column}: duplicate component `{label}`")]
    DuplicateComponent {
        line: usize,
        column: usize,
        label: String,
    },
    #[error("line {line}, column {column}: dangling strand reference (strand {strand} appears {count} times, expected 2)")]
    DanglingStrand {
        line: usize,
        column: usize,
        strand: u64,
        count: usize,
    },
    #[error("empty diagram: no crossings")]
    EmptyDiagram,
    #[error("crossings between `{a}` and `{b}` have odd signed sum {sum}: corrupted diagram")]
    NonIntegralLinking { a: String, b: String, sum: i64 },
    #[error("diagram has {found} components but {expected} slopes were given")]
    ComponentCount { expected: usize, found: usize },
}

/// Crossing sign, `+` or `-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

/// One signed crossing; `components` are indices into `Diagram::components`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub strands: [u64; 4],
    pub sign: Sign,
    pub components: (usize, usize),
}

/// A parsed signed PD code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    components: Vec<String>,
    crossings: Vec<Crossing>,
}

impl Diagram {
    pub fn components(&self) -> &[String] {
        &self.components
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// Half the signed sum of crossings between each pair of components.
    #[allow(clippy::needless_range_loop)] // upper-triangle walk of a symmetric matrix
    pub fn linking_matrix(&self) -> Result<IntMatrix, PdError> {
        let n = self.components.len();
        let mut sums = vec![vec![0i64; n]; n];
        for crossing in &self.crossings {
            let (a, b) = crossing.components;
            if a != b {
                sums[a][b] += crossing.sign.value();
                sums[b][a] += crossing.sign.value();
            }
        }
        let mut out = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let sum = sums[i][j];
                if sum % 2 != 0 {
                    return Err(PdError::NonIntegralLinking {
                        a: self.components[i].clone(),
                        b: self.components[j].clone(),
                        sum,
                    });
                }
                out.set(i, j, (sum / 2).into());
                out.set(j, i, (sum / 2).into());
            }
        }
        Ok(out)
    }

    /// Attaches surgery slopes, producing the algebraic shadow of the diagram.
    pub fn to_framed_link(&self, slopes: Vec<Slope>) -> Result<FramedLink, PdError> {
        if slopes.len() != self.components.len() {
            return Err(PdError::ComponentCount {
                expected: slopes.len(),
                found: self.components.len(),
            });
        }
        let linking = self.linking_matrix()?;
        Ok(
            FramedLink::with_labels(self.components.clone(), slopes, linking)
                .expect("diagram invariants satisfy link invariants"),
        )
    }
}

/// Parses the signed PD-code text format.
pub fn parse_pd(text: &str) -> Result<Diagram, PdError> {
    let mut components: Vec<String> = Vec::new();
    let mut declared = false;
    let mut crossings: Vec<Crossing> = Vec::new();
    // strand -> (count, first occurrence line/column)
    let mut strands: BTreeMap<u64, (usize, usize, usize)> = BTreeMap::new();

    for (line_no, raw) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let mut cur = Cursor::new(raw, line_no);
        cur.skip_ws();
        if cur.done() || cur.peek() == Some('#') {
            continue;
        }
        if cur.eat_word("component") {
            if !crossings.is_empty() {
                return Err(cur.malformed("component declaration must precede crossings"));
            }
            cur.skip_ws();
            let start = cur.column();
            let label = cur.parse_label()?;
            cur.expect_end()?;
            if components.contains(&label) {
                return Err(PdError::DuplicateComponent {
                    line: line_no,
                    column: start,
                    label,
                });
            }
            components.push(label);
            declared = true;
            continue;
        }

        cur.expect_str("X", "expected `X[...]` crossing or `component` line")?;
        cur.expect_str("[", "expected `[` after X")?;
        let mut strand_ids = [0u64; 4];
        for (k, slot) in strand_ids.iter_mut().enumerate() {
            cur.skip_ws();
            let pos = cur.column();
            *slot = cur.parse_u64()?;
            strands.entry(*slot).or_insert((0, line_no, pos)).0 += 1;
            cur.skip_ws();
            if k < 3 {
                cur.expect_str(",", "expected `,` between strand labels")?;
            }
        }
        cur.expect_str("]", "expected `]` closing the strand list")?;
        cur.skip_ws();
        if !cur.eat_str("sign=") {
            return Err(PdError::UnsignedCrossing {
                line: line_no,
                column: cur.column(),
            });
        }
        let sign = match cur.peek() {
            Some('+') => Sign::Positive,
            Some('-') => Sign::Negative,
            _ => {
                return Err(PdError::UnsignedCrossing {
                    line: line_no,
                    column: cur.column(),
                })
            }
        };
        cur.advance();
        cur.skip_ws();
        cur.expect_str("comps=(", "expected `comps=(i,j)`")?;
        cur.skip_ws();
        let a_pos = cur.column();
        let a = cur.parse_label()?;
        cur.skip_ws();
        cur.expect_str(",", "expected `,` between component labels")?;
        cur.skip_ws();
        let b_pos = cur.column();
        let b = cur.parse_label()?;
        cur.skip_ws();
        cur.expect_str(")", "expected `)` closing the component pair")?;
        cur.expect_end()?;

        let a_idx = resolve(&mut components, declared, &a, line_no, a_pos)?;
        let b_idx = resolve(&mut components, declared, &b, line_no, b_pos)?;
        crossings.push(Crossing {
            strands: strand_ids,
            sign,
            components: (a_idx, b_idx),
        });
    }

    if crossings.is_empty() {
        return Err(PdError::EmptyDiagram);
    }
    for (strand, (count, line, column)) in strands {
        if count != 2 {
            return Err(PdError::DanglingStrand {
                line,
                column,
                strand,
                count,
            });
        }
    }
    Ok(Diagram {
        components,
        crossings,
    })
}

fn resolve(
    components: &mut Vec<String>,
    declared: bool,
    label: &str,
    line: usize,
    column: usize,
) -> Result<usize, PdError> {
    if let Some(idx) = components.iter().position(|c| c == label) {
        return Ok(idx);
    }
    if declared {
        return Err(PdError::UnknownComponent {
            line,
            column,
            label: label.to_string(),
        });
    }
    components.push(label.to_string());
    Ok(components.len() - 1)
}

/// Character-level scanner with 1-based column reporting.
struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(raw: &str, line: usize) -> Self {
        Cursor {
            chars: raw.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn done(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn advance(&mut self) {
        self.pos += 1;
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.advance();
        }
    }

    fn malformed(&self, detail: &str) -> PdError {
        PdError::MalformedToken {
            line: self.line,
            column: self.column(),
            detail: detail.to_string(),
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        let target: Vec<char> = s.chars().collect();
        if self.chars[self.pos.min(self.chars.len())..].starts_with(&target) {
            self.pos += target.len();
            true
        } else {
            false
        }
    }

    /// Like `eat_str` but only if followed by whitespace (word boundary).
    fn eat_word(&mut self, word: &str) -> bool {
        let save = self.pos;
        if self.eat_str(word) && self.peek().is_some_and(|c| c.is_whitespace()) {
            true
        } else {
            self.pos = save;
            false
        }
    }

    fn expect_str(&mut self, s: &str, detail: &str) -> Result<(), PdError> {
        if self.eat_str(s) {
            Ok(())
        } else {
            Err(self.malformed(detail))
        }
    }

    fn expect_end(&mut self) -> Result<(), PdError> {
        self.skip_ws();
        if self.done() || self.peek() == Some('#') {
            Ok(())
        } else {
            Err(self.malformed("unexpected trailing input"))
        }
    }

    fn parse_u64(&mut self) -> Result<u64, PdError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.advance();
        }
        if start == self.pos {
            return Err(self.malformed("expected a strand number"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse()
            .map_err(|_| self.malformed("strand number out of range"))
    }

    fn parse_label(&mut self) -> Result<String, PdError> {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.advance();
        }
        if start == self.pos {
            return Err(self.malformed("expected a component label"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }
}
