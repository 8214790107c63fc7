//! Determinant of the region-by-crossing matrix.

use std::collections::{BTreeMap, VecDeque};

use super::{AlexanderError, GradedPoly, Result};
use crate::diagram::{Sign, TangleDiagram};
use crate::states::Site;

/// Exponent of the over-colour in the matrix entries, whole-power convention.
const OVER_EXP: i32 = -4;

/// Face 2-colouring, `+1` for the colour of the first open region.
fn chequerboard(d: &TangleDiagram) -> Result<BTreeMap<String, i32>> {
    let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for x in d.crossings() {
        for k in 0..4 {
            let (a, b) = (x.quadrants[k].as_str(), x.quadrants[(k + 1) % 4].as_str());
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
    }
    let mut col: BTreeMap<String, i32> = BTreeMap::new();
    let first = d.open_regions()[0].as_str();
    col.insert(first.to_string(), 1);
    let mut q = VecDeque::from([first]);
    while let Some(r) = q.pop_front() {
        let c = col[r];
        for &s in adj.get(r).into_iter().flatten() {
            match col.get(s) {
                Some(&e) if e == c => {
                    return Err(AlexanderError::Determinant(format!("regions {r} and {s} cannot be 2-coloured")))
                }
                Some(_) => {}
                None => {
                    col.insert(s.to_string(), -c);
                    q.push_back(s);
                }
            }
        }
    }
    Ok(col)
}

/// Determinant of the matrix with the rows of unoccupied open regions deleted.
///
/// Agrees with [`super::nabla`] up to `±` a monomial.
pub fn nabla_via_determinant(d: &TangleDiagram, s: &Site) -> Result<GradedPoly> {
    let colour = chequerboard(d)?;
    let rows: Vec<String> = d
        .regions()
        .into_iter()
        .filter(|r| !d.is_open(r) || s.contains(r))
        .collect();
    let n = d.crossings().len();
    if rows.len() != n {
        return Err(AlexanderError::Determinant(format!(
            "matrix is {}x{} after deleting rows; the diagram has a non-disc face or the site has the wrong size",
            rows.len(),
            n
        )));
    }
    if n > 24 {
        return Err(AlexanderError::Determinant("too many crossings".into()));
    }
    let mut m = vec![vec![GradedPoly::zero(); n]; n];
    for (j, x) in d.crossings().iter().enumerate() {
        let o = x.over.as_str();
        let weights = match x.sign {
            Sign::L => [0, 0, OVER_EXP, OVER_EXP],
            Sign::R => [OVER_EXP, 0, 0, OVER_EXP],
        };
        for k in 0..4 {
            let r = &x.quadrants[k];
            let Some(i) = rows.iter().position(|y| y == r) else {
                continue;
            };
            let sign = colour.get(r).copied().unwrap_or(1) * if k % 2 == 0 { 1 } else { -1 };
            m[i][j] = m[i][j].add(&GradedPoly::monomial(&[(o, weights[k])], 0, 0, sign as i64));
        }
    }
    Ok(determinant(&m))
}

/// Laplace expansion over columns with memoisation on used row sets.
fn determinant(m: &[Vec<GradedPoly>]) -> GradedPoly {
    let n = m.len();
    if n == 0 {
        return GradedPoly::one();
    }
    let mut dp: BTreeMap<u32, GradedPoly> = BTreeMap::from([(0, GradedPoly::one())]);
    for (j, _) in m[0].iter().enumerate() {
        let mut next: BTreeMap<u32, GradedPoly> = BTreeMap::new();
        for (&mask, val) in &dp {
            for (i, row) in m.iter().enumerate() {
                if mask >> i & 1 == 1 || row[j].is_zero() {
                    continue;
                }
                let above = (mask >> (i + 1)).count_ones();
                let mut t = val.mul(&row[j]);
                if above % 2 == 1 {
                    t = t.neg();
                }
                let e = next.entry(mask | 1 << i).or_default();
                *e = e.add(&t);
            }
        }
        next.retain(|_, v| !v.is_zero());
        dp = next;
    }
    dp.remove(&((1u32 << n) - 1)).unwrap_or_default()
}
