//! The polynomials `∇̂_T^s` and `∇_T^s` from Kauffman states.
//!
//! Everything uses the whole-power convention: the codes are those with
//! integer exponents, so [`nabla`] returns `N(x) = ∇_T^s(x²)`. Exponents of
//! `δ` are stored doubled.
//!
//! ```
//! use tfk::alexander::{nabla_hat, GradedPoly};
//! use tfk::states::Site;
//! let d = "{{a,b,c,d},{d,a,b,c,L,p,q}}".parse().unwrap();
//! let n = nabla_hat(&d).unwrap();
//! let a = GradedPoly::monomial(&[("p", 1), ("q", -1)], 0, 0, 1);
//! assert_eq!(n[&Site::new(&["a"])], a);
//! ```

mod det;
pub mod poly;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

pub use det::nabla_via_determinant;
pub use poly::{GradedPoly, Monomial};

use crate::diagram::{DiagramError, Sign, TangleDiagram};
use crate::states::{enumerate_states_limited, KauffmanState, Site, StatesError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlexanderError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    States(#[from] StatesError),
    #[error("unknown colour {0}")]
    UnknownColour(String),
    #[error("colours of a linking number must differ")]
    SameColour,
    #[error("{0}")]
    Determinant(String),
    #[error("grid needs at most two colours, found {0}")]
    TooManyColours(usize),
}

pub type Result<T> = std::result::Result<T, AlexanderError>;

/// Alexander code of quadrant `k` (0-based) of crossing `c`.
pub fn label_of(d: &TangleDiagram, c: usize, k: usize) -> GradedPoly {
    let x = &d.crossings()[c];
    let (o, u) = (x.over.as_str(), x.under.as_str());
    match (x.sign, k) {
        (Sign::L, 0) => GradedPoly::monomial(&[(o, 1), (u, 1)], 0, 1, 1),
        (Sign::L, 2) => GradedPoly::monomial(&[(o, -1), (u, -1)], -1, 1, 1),
        (Sign::R, 0) => GradedPoly::monomial(&[(o, -1), (u, -1)], 0, -1, 1),
        (Sign::R, 2) => GradedPoly::monomial(&[(o, 1), (u, 1)], 1, -1, 1),
        (_, 1) => GradedPoly::monomial(&[(o, 1), (u, -1)], 0, 0, 1),
        _ => GradedPoly::monomial(&[(o, -1), (u, 1)], 0, 0, 1),
    }
}

/// Product of the codes of a state's markers.
pub fn state_label(d: &TangleDiagram, x: &KauffmanState) -> GradedPoly {
    x.markers
        .iter()
        .enumerate()
        .fold(GradedPoly::one(), |acc, (c, &k)| acc.mul(&label_of(d, c, k as usize)))
}

/// All `(n-1)`-element subsets of the open regions.
pub fn sites(d: &TangleDiagram) -> Vec<Site> {
    fn rec(open: &[String], k: usize, start: usize, cur: &mut Vec<String>, out: &mut Vec<Site>) {
        if cur.len() == k {
            out.push(Site::new(cur));
            return;
        }
        for i in start..open.len() {
            cur.push(open[i].clone());
            rec(open, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d.open_regions(), d.n().saturating_sub(1), 0, &mut Vec::new(), &mut out);
    out.sort();
    out
}

pub fn nabla_hat(d: &TangleDiagram) -> Result<BTreeMap<Site, GradedPoly>> {
    nabla_hat_limited(d, crate::states::DEFAULT_MAX_STATES)
}

pub fn nabla_hat_limited(d: &TangleDiagram, max_states: usize) -> Result<BTreeMap<Site, GradedPoly>> {
    let states = enumerate_states_limited(d, max_states)?;
    let mut out: BTreeMap<Site, GradedPoly> = sites(d).into_iter().map(|s| (s, GradedPoly::zero())).collect();
    for (s, xs) in states {
        let p = xs.iter().fold(GradedPoly::zero(), |acc, x| acc.add(&state_label(d, x)));
        out.insert(s, p);
    }
    Ok(out)
}

/// `∇̂` at `h = -1`, `δ = 1`.
pub fn nabla(d: &TangleDiagram, s: &Site) -> Result<GradedPoly> {
    Ok(nabla_hat(d)?.get(s).map(GradedPoly::forget_h_delta).unwrap_or_default())
}

pub fn nabla_all(d: &TangleDiagram) -> Result<BTreeMap<Site, GradedPoly>> {
    Ok(nabla_hat(d)?.into_iter().map(|(s, p)| (s, p.forget_h_delta())).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorRow {
    pub site: Site,
    pub word: String,
    pub label: GradedPoly,
}

/// One row per Kauffman state.
pub fn generator_table(d: &TangleDiagram) -> Result<Vec<GeneratorRow>> {
    let states = enumerate_states_limited(d, crate::states::DEFAULT_MAX_STATES)?;
    let mut rows = Vec::new();
    for (s, xs) in states {
        for x in xs {
            rows.push(GeneratorRow { site: s.clone(), word: x.word(d), label: state_label(d, &x) });
        }
    }
    Ok(rows)
}

/// Tab-separated `site`, `word`, `label` lines.
pub fn generator_table_tsv(rows: &[GeneratorRow]) -> String {
    let mut out = String::from("site\tstate\tlabel\n");
    for r in rows {
        out.push_str(&format!("{}\t{}\t{}\n", r.site, r.word, r.label));
    }
    out
}

/// Twice the linking number of the strands coloured `c1` and `c2`.
pub fn linking_number_doubled(d: &TangleDiagram, c1: &str, c2: &str) -> Result<i32> {
    let cols = d.colours();
    for c in [c1, c2] {
        if !cols.contains(c) {
            return Err(AlexanderError::UnknownColour(c.to_string()));
        }
    }
    if c1 == c2 {
        return Err(AlexanderError::SameColour);
    }
    let pair: BTreeSet<&str> = [c1, c2].into();
    Ok(d
        .crossings()
        .iter()
        .filter(|x| BTreeSet::from([x.over.as_str(), x.under.as_str()]) == pair)
        .map(|x| if x.sign == Sign::L { 1 } else { -1 })
        .sum())
}

pub fn linking_number(d: &TangleDiagram, c1: &str, c2: &str) -> Result<f64> {
    Ok(linking_number_doubled(d, c1, c2)? as f64 / 2.0)
}

/// Twice the sum of the linking numbers of colour `t` with all other colours.
pub fn total_linking_doubled(d: &TangleDiagram, t: &str) -> Result<i32> {
    let mut s = 0;
    for c in d.colours() {
        if c != t {
            s += linking_number_doubled(d, t, &c)?;
        }
    }
    Ok(s)
}

/// Text grid of a polynomial in at most two colours.
///
/// Rows are indexed by the exponent of `c1`, columns by that of `c2`; each
/// cell lists its terms as `coef·h^e·δ^e`. The origin cell is bracketed.
pub fn render_grid(p: &GradedPoly, c1: &str, c2: &str) -> Result<String> {
    let extra: Vec<&String> = p.vars().iter().filter(|v| *v != c1 && *v != c2).collect();
    if !extra.is_empty() {
        return Err(AlexanderError::TooManyColours(p.vars().len()));
    }
    if p.is_zero() {
        return Ok(String::new());
    }
    let mut cells: BTreeMap<(i32, i32), Vec<String>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let key = (p.exponent(m, c1), p.exponent(m, c2));
        let mut s = c.to_string();
        if m.h != 0 {
            s.push_str(&format!("h{}", m.h));
        }
        if m.delta2 != 0 {
            if m.delta2 % 2 == 0 {
                s.push_str(&format!("δ{}", m.delta2 / 2));
            } else {
                s.push_str(&format!("δ{}/2", m.delta2));
            }
        }
        cells.entry(key).or_default().push(s);
    }
    let rows: BTreeSet<i32> = cells.keys().map(|k| k.0).chain([0]).collect();
    let cols: BTreeSet<i32> = cells.keys().map(|k| k.1).chain([0]).collect();
    let (r0, r1) = (*rows.first().unwrap(), *rows.last().unwrap());
    let (k0, k1) = (*cols.first().unwrap(), *cols.last().unwrap());
    let text = |r: i32, k: i32| -> String {
        let s = cells.get(&(r, k)).map(|v| v.join(",")).unwrap_or_else(|| ".".into());
        if (r, k) == (0, 0) {
            format!("[{s}]")
        } else {
            s
        }
    };
    let width = (r0..=r1)
        .flat_map(|r| (k0..=k1).map(move |k| (r, k)))
        .map(|(r, k)| text(r, k).chars().count())
        .max()
        .unwrap_or(1)
        .max(k1.to_string().len().max(k0.to_string().len()));
    let mut out = format!("{:>6}", format!("{c1}\\{c2}"));
    for k in k0..=k1 {
        out.push_str(&format!(" {k:>width$}"));
    }
    out.push('\n');
    for r in r0..=r1 {
        out.push_str(&format!("{r:>6}"));
        for k in k0..=k1 {
            out.push_str(&format!(" {:>width$}", text(r, k)));
        }
        out.push('\n');
    }
    Ok(out)
}
