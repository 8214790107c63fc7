//! Loop-type modules.
//!
//! In a loop-type module every arrow has a partner in the opposite direction
//! so that the two labels compose to a component of `p⁴` or `q⁴`, and every
//! generator lies on exactly one `p`-pair and one `q`-pair. The pairs then
//! form disjoint cycles, which we record as cyclic words like `bpdq`.

use std::collections::{BTreeMap, BTreeSet};

use super::{propagate_gradings, site_index, site_letter, Generator, ModuleError, PecModule, Result};
use crate::pecalg::{BasisPath, PunctureOrientation};

/// One cycle of a loop-type module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopComponent {
    pub generators: Vec<String>,
    /// Alternating site letters and `p`/`q`, starting at the first generator.
    pub word: String,
}

impl LoopComponent {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// The word rotated and possibly reversed to its lexicographically least form.
    pub fn canonical_word(&self) -> String {
        canonical_word(&self.word)
    }
}

/// Least rotation, in either direction, of a cyclic loop word.
pub fn canonical_word(w: &str) -> String {
    let toks: Vec<char> = w.chars().collect();
    let n = toks.len();
    let mut best: Option<String> = None;
    let rev: Vec<char> = {
        // reading backwards keeps sites at even positions
        let mut r = vec![toks[0]];
        r.extend(toks[1..].iter().rev());
        r
    };
    for t in [&toks, &rev] {
        for k in (0..n).step_by(2) {
            let s: String = t[k..].iter().chain(&t[..k]).collect();
            if best.as_ref().map_or(true, |b| s < *b) {
                best = Some(s);
            }
        }
    }
    best.unwrap_or_default()
}

/// The partner of a path in a loop pair: the same direction, closing it up to length 4.
fn partner(b: &BasisPath) -> BasisPath {
    let len = if b.is_p() { -4 - b.len() } else { 4 - b.len() };
    BasisPath::new(b.t1(), b.t1() + len)
}

/// Splits a module into loops, or returns `None` if it is not loop-type.
pub fn loop_decompose(m: &PecModule) -> Option<Vec<LoopComponent>> {
    let mut edges: BTreeMap<(String, bool), String> = BTreeMap::new();
    for ((s, t), label) in m.arrows() {
        if s == t {
            return None;
        }
        for b in label.paths() {
            if b.is_idempotent() || b.len().abs() >= 4 {
                return None;
            }
            if !m.label(t, s).contains(&partner(b)) {
                return None;
            }
            let key = (s.clone(), b.is_p());
            if edges.get(&key).is_some_and(|o| o != t) {
                return None;
            }
            edges.insert(key, t.clone());
        }
    }
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut out = Vec::new();
    for x in m.generators().keys() {
        if !edges.contains_key(&(x.clone(), true)) || !edges.contains_key(&(x.clone(), false)) {
            return None;
        }
        if seen.contains(x) {
            continue;
        }
        let mut gens = Vec::new();
        let mut word = String::new();
        let mut cur = x.clone();
        let mut use_p = true;
        loop {
            seen.insert(cur.clone());
            gens.push(cur.clone());
            word.push(site_letter(m.generator(&cur)?.site));
            word.push(if use_p { 'p' } else { 'q' });
            cur = edges[&(cur.clone(), use_p)].clone();
            use_p = !use_p;
            if cur == *x {
                break;
            }
            if seen.contains(&cur) {
                return None;
            }
        }
        if !use_p {
            return None;
        }
        out.push(LoopComponent { generators: gens, word });
    }
    Some(out)
}

/// Builds a single loop from a cyclic word such as `bpdq`.
///
/// Generators are named by site letter and position. Gradings are propagated
/// from the first generator, which gets `delta2` and `alex2`.
pub fn loop_from_word(
    word: &str,
    orientation: Option<PunctureOrientation>,
    delta2: i32,
    alex2: &[(&str, i32)],
) -> Result<PecModule> {
    let bad = |why: &str| ModuleError::Word(word.to_string(), why.to_string());
    let toks: Vec<char> = word.chars().filter(|c| !c.is_whitespace()).collect();
    if toks.is_empty() || toks.len() % 4 != 0 {
        return Err(bad("need an even number of alternating p- and q-segments"));
    }
    let mut sites = Vec::new();
    let mut kinds = Vec::new();
    for (i, c) in toks.iter().enumerate() {
        if i % 2 == 0 {
            sites.push(site_index(*c).ok_or_else(|| bad("expected a site letter a-d"))?);
        } else {
            kinds.push(match c {
                'p' => true,
                'q' => false,
                _ => return Err(bad("expected p or q")),
            });
        }
    }
    if kinds.windows(2).any(|w| w[0] == w[1]) || kinds[0] == kinds[kinds.len() - 1] {
        return Err(bad("segments must alternate between p and q"));
    }
    let n = sites.len();
    let names: Vec<String> = (0..n).map(|k| format!("{}{k}", site_letter(sites[k]))).collect();
    let mut m = PecModule::new(orientation);
    for k in 0..n {
        m.add_generator(&names[k], Generator::new(sites[k], 0, &[]))?;
    }
    for k in 0..n {
        let (i, j) = (sites[k] as i32, sites[(k + 1) % n] as i32);
        if i == j {
            return Err(bad("a segment must join different sites"));
        }
        let fwd = if kinds[k] {
            BasisPath::new(i, i - (i - j).rem_euclid(4))
        } else {
            BasisPath::new(i, i + (j - i).rem_euclid(4))
        };
        m.add_arrow(&names[k], &names[(k + 1) % n], &fwd.into())?;
        m.add_arrow(&names[(k + 1) % n], &names[k], &partner(&fwd).into())?;
    }
    propagate_gradings(&mut m, &names[0], delta2, alex2)?;
    Ok(m)
}
