//! Planar diagram codes.
//!
//! Each crossing `X[a,b,c,d]` lists the four edge-ends counterclockwise,
//! starting from the incoming under-strand. Edges are labelled `1..=2n` and
//! the label increases by one (wrapping `2n -> 1`) along the orientation.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PdError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("crossing {crossing}: label {label} out of range 1..={max}")]
    LabelOutOfRange { crossing: usize, label: u32, max: u32 },
    #[error("crossing {crossing}: label {label} occurs {count} times (expected 2)")]
    LabelCount { crossing: usize, label: u32, count: usize },
    #[error("crossing {crossing}: edge labels do not increase along the orientation")]
    Orientation { crossing: usize },
}

/// A validated planar diagram code.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct PdCode {
    crossings: Vec<[u32; 4]>,
}

impl PdCode {
    /// The crossingless unknot diagram.
    pub fn unknot() -> Self {
        PdCode { crossings: Vec::new() }
    }

    /// Validates raw crossing quadruples.
    pub fn new(crossings: Vec<[u32; 4]>) -> Result<Self, PdError> {
        validate(&crossings)?;
        Ok(PdCode { crossings })
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Number of edges, `2n`.
    pub fn edge_count(&self) -> u32 {
        2 * self.crossings.len() as u32
    }

    /// The label following `e` along the orientation.
    pub fn succ(&self, e: u32) -> u32 {
        succ(e, self.edge_count())
    }

    /// Slot (1 or 3) holding the incoming end of the over-strand at crossing `k`.
    pub fn over_incoming_slot(&self, k: usize) -> usize {
        let x = self.crossings[k];
        if x[3] == self.succ(x[1]) {
            1
        } else {
            3
        }
    }

    /// Whether slot `s` of crossing `k` is the head (incoming end) of its edge.
    pub fn is_incoming(&self, k: usize, s: usize) -> bool {
        match s {
            0 => true,
            2 => false,
            _ => s == self.over_incoming_slot(k),
        }
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

fn succ(e: u32, edges: u32) -> u32 {
    if e >= edges {
        1
    } else {
        e + 1
    }
}

fn validate(crossings: &[[u32; 4]]) -> Result<(), PdError> {
    let n = crossings.len();
    let max = 2 * n as u32;
    let mut seen = vec![0usize; max as usize + 1];
    let mut heads = vec![0usize; max as usize + 1];
    for (k, x) in crossings.iter().enumerate() {
        for &label in x {
            if label == 0 || label > max {
                return Err(PdError::LabelOutOfRange {
                    crossing: k,
                    label,
                    max,
                });
            }
            seen[label as usize] += 1;
            if seen[label as usize] > 2 {
                return Err(PdError::LabelCount {
                    crossing: k,
                    label,
                    count: seen[label as usize],
                });
            }
        }
        let [a, b, c, d] = *x;
        if c != succ(a, max) {
            return Err(PdError::Orientation { crossing: k });
        }
        let over_in = if d == succ(b, max) {
            b
        } else if b == succ(d, max) {
            d
        } else {
            return Err(PdError::Orientation { crossing: k });
        };
        heads[a as usize] += 1;
        heads[over_in as usize] += 1;
    }
    if let Some(label) = (1..=max).find(|&l| seen[l as usize] != 2) {
        let crossing = crossings.iter().position(|x| x.contains(&label)).unwrap_or(0);
        return Err(PdError::LabelCount {
            crossing,
            label,
            count: seen[label as usize],
        });
    }
    if let Some(label) = (1..=max).find(|&l| heads[l as usize] != 1) {
        let crossing = crossings.iter().position(|x| x.contains(&label)).unwrap_or(0);
        return Err(PdError::Orientation { crossing });
    }
    Ok(())
}

/// Parses `PD[X[a,b,c,d], ...]` or `PD[]`. Whitespace is ignored.
pub fn parse_pd(text: &str) -> Result<PdCode, PdError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    p.expect_word("PD")?;
    p.expect(b'[')?;
    let mut crossings = Vec::new();
    if !p.eat(b']') {
        loop {
            crossings.push(p.crossing()?);
            if p.eat(b',') {
                continue;
            }
            p.expect(b']')?;
            break;
        }
    }
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    PdCode::new(crossings)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self, msg: &str) -> PdError {
        PdError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), PdError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn expect_word(&mut self, w: &str) -> Result<(), PdError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(w.as_bytes()) {
            self.pos += w.len();
            Ok(())
        } else {
            Err(self.err(&format!("expected '{w}'")))
        }
    }

    fn number(&mut self) -> Result<u32, PdError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a positive integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match s.parse::<u32>() {
            Ok(0) | Err(_) => Err(PdError::Syntax {
                pos: start,
                msg: format!("invalid label '{s}'"),
            }),
            Ok(v) => Ok(v),
        }
    }

    fn crossing(&mut self) -> Result<[u32; 4], PdError> {
        self.expect(b'X')?;
        self.expect(b'[')?;
        let mut x = [0u32; 4];
        for (i, slot) in x.iter_mut().enumerate() {
            if i > 0 {
                self.expect(b',')?;
            }
            *slot = self.number()?;
        }
        self.expect(b']')?;
        Ok(x)
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .crossings
            .iter()
            .map(|[a, b, c, d]| format!("X[{a},{b},{c},{d}]"))
            .collect();
        write!(f, "PD[{}]", parts.join(", "))
    }
}

impl TryFrom<String> for PdCode {
    type Error = PdError;
    fn try_from(s: String) -> Result<Self, PdError> {
        parse_pd(&s)
    }
}

impl From<PdCode> for String {
    fn from(pd: PdCode) -> String {
        pd.to_string()
    }
}

impl std::str::FromStr for PdCode {
    type Err = PdError;
    fn from_str(s: &str) -> Result<Self, PdError> {
        parse_pd(s)
    }
}
