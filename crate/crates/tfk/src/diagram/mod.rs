//! Oriented tangle diagrams in the quadrant-list format.
//!
//! A diagram is a list of open regions, in anticlockwise order around the
//! boundary, followed by one record per crossing. Each record lists the four
//! regions around the crossing, starting with the region between the two
//! outgoing arrows and proceeding anticlockwise, then the sign (`L` positive,
//! `R` negative) and the over- and under-colour.
//!
//! ```
//! use tfk::diagram::TangleDiagram;
//! let d: TangleDiagram = "{{a,b,c,d},{d,a,b,c,L,p,q}}".parse().unwrap();
//! assert_eq!(d.to_string(), "{{a, b, c, d}, {d, a, b, c, L, p, q}}");
//! assert!(d.validate().is_empty());
//! ```

mod parse;
pub mod examples;
pub mod random;
mod structure;
mod transform;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use structure::{Component, HalfEdge, Structure, NE, NW, SE, SW};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    /// Positive crossing.
    L,
    /// Negative crossing.
    R,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::L => Sign::R,
            Sign::R => Sign::L,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::L
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::L => "L",
            Sign::R => "R",
        })
    }
}

impl FromStr for Sign {
    type Err = DiagramError;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "L" | "+" => Ok(Sign::L),
            "R" | "-" => Ok(Sign::R),
            _ => Err(DiagramError::Invalid(format!("unknown sign {s}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    /// Quadrant 1 lies between the outgoing arrows; the rest follow anticlockwise.
    pub quadrants: [String; 4],
    pub sign: Sign,
    pub over: String,
    pub under: String,
}

impl Crossing {
    pub fn new(q: [&str; 4], sign: Sign, over: &str, under: &str) -> Crossing {
        Crossing {
            quadrants: q.map(String::from),
            sign,
            over: over.to_string(),
            under: under.to_string(),
        }
    }

    /// Colour of the strand running from the south-west to the north-east ray.
    pub fn colour_a(&self) -> &str {
        match self.sign {
            Sign::L => &self.over,
            Sign::R => &self.under,
        }
    }

    /// Colour of the strand running from the south-east to the north-west ray.
    pub fn colour_b(&self) -> &str {
        match self.sign {
            Sign::L => &self.under,
            Sign::R => &self.over,
        }
    }

    /// Builds a crossing from the colours of its two strands.
    pub fn from_strands(q: [String; 4], sign: Sign, a: &str, b: &str) -> Crossing {
        let (over, under) = match sign {
            Sign::L => (a, b),
            Sign::R => (b, a),
        };
        Crossing { quadrants: q, sign, over: over.to_string(), under: under.to_string() }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("crossing {index} has {found} entries, expected 7")]
    Arity { index: usize, found: usize },
    #[error("dangling region {0}")]
    Dangling(String),
    #[error("region {0} is not open")]
    NotOpen(String),
    #[error("unknown colour {0}")]
    UnknownColour(String),
    #[error("capping at {0} joins two endpoints of the same orientation")]
    CapOrientation(String),
    #[error("invalid diagram: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, DiagramError>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TangleDiagram {
    open: Vec<String>,
    crossings: Vec<Crossing>,
}

/// One boundary endpoint, between `left` and `right` open regions in anticlockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryPoint {
    pub colour: String,
    pub out: bool,
    pub regions: (String, String),
}

impl TangleDiagram {
    /// Builds a diagram without any checks beyond what parsing enforces.
    pub fn from_parts(open: Vec<String>, crossings: Vec<Crossing>) -> TangleDiagram {
        TangleDiagram { open, crossings }
    }

    pub fn open_regions(&self) -> &[String] {
        &self.open
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// Number of open strands.
    pub fn n(&self) -> usize {
        self.open.len() / 2
    }

    pub fn regions(&self) -> BTreeSet<String> {
        let mut s: BTreeSet<String> = self.open.iter().cloned().collect();
        for c in &self.crossings {
            s.extend(c.quadrants.iter().cloned());
        }
        s
    }

    pub fn closed_regions(&self) -> BTreeSet<String> {
        let open: BTreeSet<&String> = self.open.iter().collect();
        self.regions().into_iter().filter(|r| !open.contains(r)).collect()
    }

    pub fn is_open(&self, r: &str) -> bool {
        self.open.iter().any(|o| o == r)
    }

    pub fn colours(&self) -> BTreeSet<String> {
        let mut s = BTreeSet::new();
        for c in &self.crossings {
            s.insert(c.over.clone());
            s.insert(c.under.clone());
        }
        s
    }

    pub(crate) fn open_index(&self, r: &str) -> Result<usize> {
        self.open
            .iter()
            .position(|o| o == r)
            .ok_or_else(|| DiagramError::NotOpen(r.to_string()))
    }

    /// Edge, face and strand structure; fails on inconsistent input.
    pub fn structure(&self) -> Result<Structure> {
        Structure::compute(self)
    }

    pub fn boundary(&self) -> Result<Vec<BoundaryPoint>> {
        let s = self.structure()?;
        let m = self.open.len();
        Ok((0..m)
            .map(|i| BoundaryPoint {
                colour: s.endpoint_colour[i].clone(),
                out: s.endpoint_out[i],
                regions: (self.open[i].clone(), self.open[(i + 1) % m].clone()),
            })
            .collect())
    }

    /// A fresh region label `r1`, `r2`, ... not used in the diagram.
    pub fn fresh_region(&self) -> String {
        fresh_label(&self.regions(), "r")
    }

    /// Lists every failed invariant; empty iff the diagram is valid.
    pub fn validate(&self) -> Vec<String> {
        self.validate_full().0
    }

    /// Failures and warnings.
    pub fn validate_full(&self) -> (Vec<String>, Vec<String>) {
        let mut errs = Vec::new();
        let mut warns = Vec::new();
        if self.crossings.is_empty() {
            errs.push("diagram has no crossings".to_string());
        }
        if self.open.len() % 2 != 0 || self.open.is_empty() {
            errs.push(format!("odd or empty number of open regions ({})", self.open.len()));
        }
        let distinct: BTreeSet<&String> = self.open.iter().collect();
        if distinct.len() != self.open.len() {
            errs.push("open region listed twice".to_string());
        }
        if let Some(r) = self.dangling_region() {
            errs.push(format!("dangling region {r}"));
        }
        let expected = self.crossings.len() + self.n() + 1;
        let found = self.regions().len();
        if found > expected {
            errs.push(format!("Euler mismatch: {found} regions, expected {expected}"));
        } else if found < expected {
            warns.push(format!("non-disc face: {found} regions, expected {expected}"));
        }
        if !self.is_connected() {
            errs.push("diagram is not connected".to_string());
        }
        if errs.is_empty() {
            match self.structure() {
                Ok(s) => warns.extend(s.warnings),
                Err(e) => errs.push(e.to_string()),
            }
        }
        (errs, warns)
    }

    /// A closed region that occurs once and cannot be a monogon.
    pub(crate) fn dangling_region(&self) -> Option<String> {
        for r in self.closed_regions() {
            let slots: Vec<(usize, usize)> = self
                .crossings
                .iter()
                .enumerate()
                .flat_map(|(i, c)| {
                    c.quadrants
                        .iter()
                        .enumerate()
                        .filter(|(_, q)| **q == r)
                        .map(move |(k, _)| (i, k))
                })
                .collect();
            if slots.len() == 1 {
                let (i, k) = slots[0];
                let q = &self.crossings[i].quadrants;
                let monogon = (k == 1 || k == 3) && q[0] == q[2];
                if !monogon {
                    return Some(r);
                }
            }
        }
        None
    }

    /// Connectivity of the crossing-region incidence graph.
    pub fn is_connected(&self) -> bool {
        let regions: Vec<String> = self.regions().into_iter().collect();
        let nc = self.crossings.len();
        let idx = |r: &String| nc + regions.binary_search(r).unwrap();
        let mut uf: Vec<usize> = (0..nc + regions.len()).collect();
        fn find(uf: &mut Vec<usize>, x: usize) -> usize {
            let mut x = x;
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for (i, c) in self.crossings.iter().enumerate() {
            for q in &c.quadrants {
                let a = find(&mut uf, i);
                let b = find(&mut uf, idx(q));
                uf[a] = b;
            }
        }
        for o in &self.open {
            let a = find(&mut uf, idx(o));
            let b = find(&mut uf, idx(&self.open[0]));
            uf[a] = b;
        }
        let root = find(&mut uf, 0);
        (0..uf.len()).all(|x| find(&mut uf, x) == root)
    }
}

pub(crate) fn fresh_label(used: &BTreeSet<String>, prefix: &str) -> String {
    (1..)
        .map(|k| format!("{prefix}{k}"))
        .find(|s| !used.contains(s))
        .unwrap()
}

impl fmt::Display for TangleDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{{{}}}", self.open.join(", "))?;
        for c in &self.crossings {
            write!(
                f,
                ", {{{}, {}, {}, {}}}",
                c.quadrants.join(", "),
                c.sign,
                c.over,
                c.under
            )?;
        }
        write!(f, "}}")
    }
}

impl FromStr for TangleDiagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self> {
        parse::parse_diagram(s)
    }
}

/// Parses the quadrant-list format.
pub fn parse_diagram(text: &str) -> Result<TangleDiagram> {
    parse::parse_diagram(text)
}
