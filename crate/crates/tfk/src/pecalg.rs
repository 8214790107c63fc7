//! The algebra `A^∂` over F₂.
//!
//! Basis elements are closed oriented intervals `[t0, t1]` of integers modulo
//! a common shift by 4. The idempotent `ι_i` is `[i, i]`; `p_i = [i, i-1]` and
//! `q_i = [i-1, i]`. Two intervals multiply to their concatenation when the
//! end of the first matches the start of the second mod 4 and they point the
//! same way; otherwise the product is zero. In particular `p_i q_i = q_i p_i = 0`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("cannot parse algebra element {0:?}")]
    Parse(String),
    #[error("puncture orientation: {0}")]
    Orientation(String),
}

/// Reduces an integer to the index set `{1,2,3,4}`.
pub fn idx(t: i32) -> u8 {
    (t - 1).rem_euclid(4) as u8 + 1
}

/// A basis path `[t0, t0 + len]`, with `t0` normalised into `{1,2,3,4}`.
///
/// `len < 0` is a p-path, `len > 0` a q-path and `len == 0` the idempotent at `t0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisPath {
    t0: u8,
    len: i32,
}

impl BasisPath {
    pub fn new(t0: i32, t1: i32) -> BasisPath {
        BasisPath { t0: idx(t0), len: t1 - t0 }
    }

    pub fn idempotent(i: u8) -> BasisPath {
        BasisPath::new(i as i32, i as i32)
    }

    pub fn p(i: u8) -> BasisPath {
        BasisPath::new(i as i32, i as i32 - 1)
    }

    pub fn q(i: u8) -> BasisPath {
        BasisPath::new(i as i32 - 1, i as i32)
    }

    pub fn t0(&self) -> i32 {
        self.t0 as i32
    }

    pub fn t1(&self) -> i32 {
        self.t0 as i32 + self.len
    }

    pub fn len(&self) -> i32 {
        self.len
    }

    /// Idempotent the path starts at.
    pub fn source(&self) -> u8 {
        self.t0
    }

    /// Idempotent the path ends at.
    pub fn target(&self) -> u8 {
        idx(self.t1())
    }

    pub fn is_idempotent(&self) -> bool {
        self.len == 0
    }

    pub fn is_p(&self) -> bool {
        self.len < 0
    }

    pub fn is_q(&self) -> bool {
        self.len > 0
    }

    pub fn mul(&self, other: &BasisPath) -> Option<BasisPath> {
        if self.target() != other.source() || self.len * other.len < 0 {
            return None;
        }
        Some(BasisPath { t0: self.t0, len: self.len + other.len })
    }

    /// Twice the δ-grading, i.e. the absolute length.
    pub fn delta2(&self) -> i32 {
        self.len.abs()
    }

    /// Punctures crossed by the path, in order of traversal.
    pub fn punctures(&self) -> Vec<u8> {
        let t0 = self.t0();
        if self.len >= 0 {
            (1..=self.len).map(|k| idx(t0 + k)).collect()
        } else {
            (0..-self.len).map(|k| idx(t0 - k)).collect()
        }
    }

    /// Alexander grading per colour, in the units of the punctures (integers).
    pub fn alexander(&self, po: &PunctureOrientation) -> BTreeMap<String, i32> {
        let mut out = BTreeMap::new();
        for i in self.punctures() {
            let (c, inward) = po.get(i);
            *out.entry(c.to_string()).or_insert(0) += if inward { 1 } else { -1 };
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Every path with `|len| <= max`, in canonical order.
    pub fn all_up_to(max: i32) -> Vec<BasisPath> {
        let mut v = Vec::new();
        for t0 in 1..=4 {
            for len in -max..=max {
                v.push(BasisPath { t0, len });
            }
        }
        v
    }
}

impl fmt::Display for BasisPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 0 {
            return write!(f, "i{}", self.t0);
        }
        let letter = if self.len < 0 { 'p' } else { 'q' };
        write!(f, "{letter}")?;
        for i in self.punctures() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl FromStr for BasisPath {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || AlgebraError::Parse(s.to_string());
        let s = s.trim();
        let mut chars = s.chars();
        let kind = chars.next().ok_or_else(err)?;
        let digits: Vec<u8> = chars
            .map(|c| c.to_digit(10).filter(|d| (1..=4).contains(d)).map(|d| d as u8))
            .collect::<Option<_>>()
            .ok_or_else(err)?;
        let first = *digits.first().ok_or_else(err)?;
        let step: i32 = match kind {
            'i' if digits.len() == 1 => return Ok(BasisPath::idempotent(first)),
            'p' => -1,
            'q' => 1,
            _ => return Err(err()),
        };
        for w in digits.windows(2) {
            if idx(w[0] as i32 + step) != w[1] {
                return Err(err());
            }
        }
        let n = digits.len() as i32;
        Ok(if step < 0 {
            BasisPath::new(first as i32, first as i32 - n)
        } else {
            BasisPath::new(first as i32 - 1, first as i32 - 1 + n)
        })
    }
}

/// An element of `A^∂`: a finite set of basis paths (coefficients in F₂).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PecElement(BTreeSet<BasisPath>);

impl PecElement {
    pub fn zero() -> PecElement {
        PecElement::default()
    }

    pub fn one() -> PecElement {
        (1..=4).map(BasisPath::idempotent).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn paths(&self) -> impl Iterator<Item = &BasisPath> + '_ {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, b: &BasisPath) -> bool {
        self.0.contains(b)
    }

    pub fn toggle(&mut self, b: BasisPath) {
        if !self.0.remove(&b) {
            self.0.insert(b);
        }
    }

    pub fn add(&self, other: &PecElement) -> PecElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &PecElement) {
        for b in &other.0 {
            self.toggle(*b);
        }
    }

    pub fn mul(&self, other: &PecElement) -> PecElement {
        let mut out = PecElement::zero();
        for a in &self.0 {
            for b in &other.0 {
                if let Some(c) = a.mul(b) {
                    out.toggle(c);
                }
            }
        }
        out
    }

    /// `ι_i · self · ι_j`.
    pub fn restrict(&self, i: u8, j: u8) -> PecElement {
        self.0.iter().filter(|b| b.source() == i && b.target() == j).copied().collect()
    }

    /// Components that are idempotents.
    pub fn units(&self) -> impl Iterator<Item = &BasisPath> + '_ {
        self.0.iter().filter(|b| b.is_idempotent())
    }
}

impl From<BasisPath> for PecElement {
    fn from(b: BasisPath) -> Self {
        PecElement([b].into())
    }
}

impl FromIterator<BasisPath> for PecElement {
    fn from_iter<I: IntoIterator<Item = BasisPath>>(iter: I) -> Self {
        let mut e = PecElement::zero();
        for b in iter {
            e.toggle(b);
        }
        e
    }
}

impl fmt::Display for PecElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|b| b.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for PecElement {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "0" {
            return Ok(PecElement::zero());
        }
        s.split('+').map(str::parse).collect()
    }
}

/// The curvature `p⁴ + q⁴`: the eight closed paths of length 4.
pub fn curvature() -> PecElement {
    (1..=4).flat_map(|i| [BasisPath::new(i, i - 4), BasisPath::new(i, i + 4)]).collect()
}

/// Colour and in/out label of each of the four punctures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PunctureOrientation {
    punctures: [(String, bool); 4],
}

impl PunctureOrientation {
    /// `punctures[i-1] = (colour, is_in)` for puncture `i`.
    pub fn new(punctures: [(&str, bool); 4]) -> Result<Self, AlgebraError> {
        let mut balance: BTreeMap<&str, i32> = BTreeMap::new();
        for (c, inward) in &punctures {
            *balance.entry(c).or_insert(0) += if *inward { 1 } else { -1 };
        }
        if let Some((c, _)) = balance.iter().find(|(_, v)| **v != 0) {
            return Err(AlgebraError::Orientation(format!("colour {c} has unequal in and out counts")));
        }
        Ok(PunctureOrientation { punctures: punctures.map(|(c, i)| (c.to_string(), i)) })
    }

    pub fn get(&self, i: u8) -> (&str, bool) {
        let (c, inward) = &self.punctures[i as usize - 1];
        (c, *inward)
    }

    pub fn colours(&self) -> BTreeSet<String> {
        self.punctures.iter().map(|(c, _)| c.clone()).collect()
    }

    /// The same orientation with every colour renamed to `t`.
    pub fn single(&self) -> PunctureOrientation {
        PunctureOrientation { punctures: self.punctures.clone().map(|(_, i)| ("t".to_string(), i)) }
    }
}

/// δ-grading (doubled) and Alexander grading of a path.
pub fn gradings(b: &BasisPath, po: &PunctureOrientation) -> (i32, BTreeMap<String, i32>) {
    (b.delta2(), b.alexander(po))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> PecElement {
        s.parse().unwrap()
    }

    #[test]
    fn naming() {
        assert_eq!(BasisPath::new(3, 5).to_string(), "q41");
        assert_eq!(BasisPath::new(0, -1).to_string(), "p4");
        assert_eq!(BasisPath::new(4, 2).to_string(), "p43");
        assert_eq!(BasisPath::new(0, 2).to_string(), "q12");
        assert_eq!(BasisPath::p(1), BasisPath::new(1, 0));
        assert_eq!(BasisPath::q(1), BasisPath::new(0, 1));
        for b in BasisPath::all_up_to(6) {
            assert_eq!(b.to_string().parse::<BasisPath>().unwrap(), b);
        }
        assert!("p13".parse::<BasisPath>().is_err());
        assert!("x1".parse::<BasisPath>().is_err());
        assert_eq!(e("p21+q34").to_string(), "p21+q34");
    }

    #[test]
    fn relations() {
        for i in 1..=4 {
            assert!(PecElement::from(BasisPath::p(i)).mul(&BasisPath::q(i).into()).is_zero());
            assert!(PecElement::from(BasisPath::q(i)).mul(&BasisPath::p(i).into()).is_zero());
        }
        assert_eq!(e("p43").mul(&e("p21")), e("p4321"));
        assert!(curvature().contains(&"p4321".parse().unwrap()));
        assert!(e("p43").mul(&e("p32")).is_zero());
    }

    #[test]
    fn idempotents_pick_paths() {
        let x = e("p21+q34+p3+i2");
        assert_eq!(x.restrict(2, 4), e("p21+q34"));
        let l = PecElement::from(BasisPath::idempotent(2));
        let r = PecElement::from(BasisPath::idempotent(4));
        assert_eq!(l.mul(&x).mul(&r), e("p21+q34"));
        assert_eq!(PecElement::one().mul(&x), x);
        assert_eq!(x.mul(&PecElement::one()), x);
    }

    #[test]
    fn curvature_shape() {
        let c = curvature();
        assert_eq!(c.len(), 8);
        assert!(c.paths().all(|b| b.delta2() == 4 && b.source() == b.target()));
        for b in BasisPath::all_up_to(4) {
            let x = PecElement::from(b);
            assert_eq!(c.mul(&x), x.mul(&c), "{b}");
        }
    }

    #[test]
    fn associative_and_graded() {
        let po = PunctureOrientation::new([("q", false), ("p", true), ("q", true), ("p", false)]).unwrap();
        let all = BasisPath::all_up_to(4);
        for a in &all {
            for b in &all {
                let ab = a.mul(b);
                if let Some(ab) = ab {
                    assert_eq!(ab.delta2(), a.delta2() + b.delta2());
                    let mut g = a.alexander(&po);
                    for (k, v) in b.alexander(&po) {
                        *g.entry(k).or_insert(0) += v;
                    }
                    g.retain(|_, v| *v != 0);
                    assert_eq!(ab.alexander(&po), g);
                }
                for c in &all {
                    let l = ab.and_then(|x| x.mul(c));
                    let r = b.mul(c).and_then(|y| a.mul(&y));
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn alexander_sign() {
        let po = PunctureOrientation::new([("p", true), ("p", false), ("q", true), ("q", false)]).unwrap();
        assert_eq!(BasisPath::p(1).alexander(&po), [("p".to_string(), 1)].into());
        assert_eq!(BasisPath::q(2).alexander(&po), [("p".to_string(), -1)].into());
        assert!(BasisPath::idempotent(3).alexander(&po).is_empty());
        assert!(PunctureOrientation::new([("p", true), ("p", true), ("q", true), ("q", false)]).is_err());
    }
}
