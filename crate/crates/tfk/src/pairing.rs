//! Closing a 4-ended tangle: the type-A structure `𝒞(s)`, box tensor
//! products with peculiar modules, and F₂ homology.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::alexander::GradedPoly;
use crate::pecalg::{idx, BasisPath, PunctureOrientation};
use crate::pecmod::{add_alex, f2_rank, site_index, PecModule};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PairingError {
    #[error("site must be one of a, b, c, d; got {0:?}")]
    Site(char),
    #[error("module has identity arrows; cancel them first")]
    IdentityArrows,
    #[error("∂² ≠ 0 on the box complex ({0} nonzero components)")]
    NotComplex(usize),
    #[error("differential is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("closing arc joins punctures {0} and {1} of the same direction")]
    Unorientable(u8, u8),
    #[error("lazy closure rank {lazy} and box rank {boxed} differ by more than the stabilisation factor")]
    Disagreement { lazy: usize, boxed: usize },
    #[error("type A gradings are inconsistent at {0}")]
    Grading(String),
}

pub type Result<T> = std::result::Result<T, PairingError>;

/// A type-A structure with finitely many actions `m(x; a_1, …, a_k) = y`.
///
/// Identity actions are implicit and never listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeAStructure {
    pub generators: BTreeMap<String, u8>,
    pub actions: Vec<(String, Vec<BasisPath>, String)>,
    /// Rotation of the indices relative to the structure for site `a`.
    pub shift: u8,
}

impl TypeAStructure {
    pub fn max_action_length(&self) -> usize {
        self.actions.iter().map(|(_, s, _)| s.len()).max().unwrap_or(0)
    }

    /// Result of acting on `x` with the sequence `seq`, as a set over F₂.
    pub fn act(&self, x: &str, seq: &[BasisPath]) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for (s, q, t) in &self.actions {
            if s == x && q == seq && !out.remove(t) {
                out.insert(t.clone());
            }
        }
        out
    }

    /// The punctures joined by the two closing arcs.
    pub fn arcs(&self) -> [(u8, u8); 2] {
        let k = self.shift as i32;
        [(idx(1 + k), idx(2 + k)), (idx(3 + k), idx(4 + k))]
    }
}

/// The structure `𝒞(s)` for closing a tangle at site `s` (and its opposite site).
pub fn closing_type_a(s: char) -> Result<TypeAStructure> {
    let k = site_index(s).ok_or(PairingError::Site(s))? - 1;
    let sh = |b: BasisPath| BasisPath::new(b.t0() + k as i32, b.t1() + k as i32);
    let path = |t: &str| sh(t.parse().expect("algebra path"));
    let generators: BTreeMap<String, u8> = [("a1", 1), ("a2", 1), ("b1", 2), ("b2", 2)]
        .into_iter()
        .map(|(x, i)| (x.to_string(), idx(i + k as i32)))
        .collect();
    let table: [(&str, &[&str], &str); 7] = [
        ("b2", &[], "b1"),
        ("b2", &["p21", "q12"], "b1"),
        ("a1", &["q2"], "b1"),
        ("a2", &["p1", "q12"], "b1"),
        ("a2", &["p1", "q1"], "a1"),
        ("b2", &["p21", "q1"], "a1"),
        ("b2", &["p2"], "a2"),
    ];
    let actions = table
        .iter()
        .map(|(x, seq, y)| (x.to_string(), seq.iter().map(|t| path(t)).collect(), y.to_string()))
        .collect();
    Ok(TypeAStructure { generators, actions, shift: k })
}

/// Renames colours so that the two punctures of each closing arc share one.
pub fn merged_orientation(po: &PunctureOrientation, arcs: [(u8, u8); 2]) -> Result<(PunctureOrientation, BTreeMap<String, String>)> {
    let mut rename: BTreeMap<String, String> = po.colours().into_iter().map(|c| (c.clone(), c)).collect();
    for _ in 0..2 {
        for (i, j) in arcs {
            let (ci, ii) = po.get(i);
            let (cj, ij) = po.get(j);
            if ii == ij {
                return Err(PairingError::Unorientable(i, j));
            }
            let target = rename[ci].clone();
            let old = rename[cj].clone();
            for v in rename.values_mut() {
                if *v == old {
                    *v = target.clone();
                }
            }
        }
    }
    let ps: Vec<(String, bool)> = (1..=4).map(|i| (rename[po.get(i).0].clone(), po.get(i).1)).collect();
    let merged = PunctureOrientation::new([
        (&ps[0].0, ps[0].1),
        (&ps[1].0, ps[1].1),
        (&ps[2].0, ps[2].1),
        (&ps[3].0, ps[3].1),
    ])
    .expect("merging keeps colours balanced");
    Ok((merged, rename))
}

/// `δ` (doubled) and Alexander offsets of the generators of `a`, chosen so
/// that the box differential raises `δ` by one and preserves `A`.
pub fn type_a_gradings(a: &TypeAStructure, po: Option<&PunctureOrientation>) -> Result<BTreeMap<String, (i32, BTreeMap<String, i32>)>> {
    let start = a.generators.keys().max().cloned().unwrap_or_default();
    let mut known: BTreeMap<String, (i32, BTreeMap<String, i32>)> = [(start.clone(), (0, BTreeMap::new()))].into();
    let mut queue: VecDeque<String> = [start].into();
    while let Some(x) = queue.pop_front() {
        let (dx, ax) = known[&x].clone();
        for (s, seq, t) in &a.actions {
            let k = seq.len() as i32;
            let dseq: i32 = seq.iter().map(|b| b.delta2()).sum();
            let mut aseq = BTreeMap::new();
            if let Some(po) = po {
                for b in seq {
                    let a2: BTreeMap<String, i32> = b.alexander(po).into_iter().map(|(c, v)| (c, 2 * v)).collect();
                    aseq = add_alex(&aseq, &a2, 1);
                }
            }
            let (other, g) = if *s == x {
                (t, (dx + 2 - 2 * k + dseq, add_alex(&ax, &aseq, 1)))
            } else if *t == x {
                (s, (dx - 2 + 2 * k - dseq, add_alex(&ax, &aseq, -1)))
            } else {
                continue;
            };
            match known.get(other) {
                Some(old) if *old != g => return Err(PairingError::Grading(other.clone())),
                Some(_) => {}
                None => {
                    known.insert(other.clone(), g);
                    queue.push_back(other.clone());
                }
            }
        }
    }
    Ok(known)
}

/// A finite F₂ chain complex with an Alexander grading and, optionally, a δ-grading.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainComplexF2 {
    pub names: Vec<String>,
    pub alex2: Vec<BTreeMap<String, i32>>,
    pub delta2: Option<Vec<i32>>,
    /// `d[i]` is the set of generators in `∂(g_i)`.
    pub d: Vec<BTreeSet<usize>>,
}

/// Grading key of a homology group: Alexander (doubled) and 2δ, if graded.
pub type Bigrading = (BTreeMap<String, i32>, Option<i32>);

impl ChainComplexF2 {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn is_complex(&self) -> bool {
        self.d_squared_size() == 0
    }

    fn d_squared_size(&self) -> usize {
        let mut bad = 0;
        for i in 0..self.len() {
            let mut acc: BTreeSet<usize> = BTreeSet::new();
            for &j in &self.d[i] {
                for &k in &self.d[j] {
                    if !acc.remove(&k) {
                        acc.insert(k);
                    }
                }
            }
            bad += acc.len();
        }
        bad
    }

    fn key(&self, i: usize) -> Bigrading {
        (self.alex2[i].clone(), self.delta2.as_ref().map(|d| d[i]))
    }

    /// Checks that `∂` preserves `A` and raises `δ` by one.
    pub fn check_homogeneous(&self) -> Result<()> {
        for i in 0..self.len() {
            for &j in &self.d[i] {
                if self.alex2[i] != self.alex2[j] {
                    return Err(PairingError::Inhomogeneous(format!("A of {} -> {}", self.names[i], self.names[j])));
                }
                if let Some(d) = &self.delta2 {
                    if d[j] != d[i] + 2 {
                        return Err(PairingError::Inhomogeneous(format!("δ of {} -> {}", self.names[i], self.names[j])));
                    }
                }
            }
        }
        Ok(())
    }

    /// Homology ranks per grading.
    pub fn homology(&self) -> Result<BTreeMap<Bigrading, usize>> {
        let bad = self.d_squared_size();
        if bad > 0 {
            return Err(PairingError::NotComplex(bad));
        }
        self.check_homogeneous()?;
        let mut groups: BTreeMap<Bigrading, Vec<usize>> = BTreeMap::new();
        for i in 0..self.len() {
            groups.entry(self.key(i)).or_default().push(i);
        }
        let mut rank_out: BTreeMap<Bigrading, usize> = BTreeMap::new();
        let mut rank_in: BTreeMap<Bigrading, usize> = BTreeMap::new();
        for (k, rows) in &groups {
            let next = (k.0.clone(), k.1.map(|d| d + 2));
            let targets: Vec<usize> = if k.1.is_some() { groups.get(&next).cloned().unwrap_or_default() } else { rows.clone() };
            let mat: Vec<Vec<bool>> = rows.iter().map(|&i| targets.iter().map(|j| self.d[i].contains(j)).collect()).collect();
            let r = f2_rank(mat);
            rank_out.insert(k.clone(), r);
            *rank_in.entry(if k.1.is_some() { next } else { k.clone() }).or_insert(0) += r;
        }
        Ok(groups
            .iter()
            .map(|(k, v)| (k.clone(), v.len() - rank_out[k] - rank_in.get(k).copied().unwrap_or(0)))
            .filter(|(_, r)| *r > 0)
            .collect())
    }

    pub fn total_rank(&self) -> Result<usize> {
        Ok(self.homology()?.values().sum())
    }

    /// `Σ (−1)^h · Π colour^{2A}` with `h = A^r/2 − δ`; needs a δ-grading.
    pub fn euler_characteristic(&self) -> Option<GradedPoly> {
        let d = self.delta2.as_ref()?;
        let mut p = GradedPoly::zero();
        for i in 0..self.len() {
            let x = self.alex2[i].values().sum::<i32>() - 2 * d[i];
            if x % 4 != 0 {
                return None;
            }
            let cols: Vec<(&str, i32)> = self.alex2[i].iter().map(|(c, v)| (c.as_str(), *v)).collect();
            p = p.add(&GradedPoly::monomial(&cols, 0, 0, if (x / 4).rem_euclid(2) == 0 { 1 } else { -1 }));
        }
        Some(p)
    }
}

fn rename_alex(a: &BTreeMap<String, i32>, rename: &BTreeMap<String, String>) -> BTreeMap<String, i32> {
    let mut out = BTreeMap::new();
    for (c, v) in a {
        *out.entry(rename.get(c).cloned().unwrap_or_else(|| c.clone())).or_insert(0) += v;
    }
    out.retain(|_, v| *v != 0);
    out
}

/// `𝒞 ⊠ M`: generators are idempotent-matching pairs; `x ⊗ v → y ⊗ w` counts
/// actions `m(x; a_1, …, a_k) = y` against arrow paths `v → … → w` labelled `a_1, …, a_k`.
pub fn box_tensor(a: &TypeAStructure, m: &PecModule) -> Result<ChainComplexF2> {
    if !m.identity_arrows().is_empty() {
        return Err(PairingError::IdentityArrows);
    }
    let (po, rename) = match m.orientation() {
        Some(po) => {
            let (merged, rename) = merged_orientation(po, a.arcs())?;
            (Some(merged), rename)
        }
        None => (None, BTreeMap::new()),
    };
    let offsets = type_a_gradings(a, po.as_ref())?;
    let mut index: BTreeMap<(String, String), usize> = BTreeMap::new();
    let mut c = ChainComplexF2 { delta2: Some(Vec::new()), ..Default::default() };
    for (x, &ix) in &a.generators {
        for (v, g) in m.generators() {
            if g.site == ix {
                index.insert((x.clone(), v.clone()), c.names.len());
                c.names.push(format!("{x}⊗{v}"));
                c.alex2.push(add_alex(&rename_alex(&g.alex2, &rename), &offsets[x].1, 1));
                c.delta2.as_mut().unwrap().push(g.delta2 + offsets[x].0);
            }
        }
    }
    c.d = vec![BTreeSet::new(); c.names.len()];
    for (x, seq, y) in &a.actions {
        for (v, g) in m.generators() {
            if g.site != a.generators[x] {
                continue;
            }
            let mut ends: BTreeMap<String, usize> = [(v.clone(), 1)].into();
            for b in seq {
                let mut next: BTreeMap<String, usize> = BTreeMap::new();
                for (u, cnt) in &ends {
                    for (w, l) in m.out_arrows(u) {
                        if l.contains(b) {
                            *next.entry(w.to_string()).or_insert(0) += cnt;
                        }
                    }
                }
                ends = next;
            }
            let i = index[&(x.clone(), v.clone())];
            for (w, cnt) in ends {
                if cnt % 2 == 1 {
                    let j = index[&(y.clone(), w)];
                    if !c.d[i].remove(&j) {
                        c.d[i].insert(j);
                    }
                }
            }
        }
    }
    Ok(c)
}

/// The complex obtained from `M` by setting `p_{1+k} = p_{2+k} = q_{3+k} = q_{4+k} = 1`
/// and the other generators of the algebra to 0, where `k` is the rotation of `s`.
///
/// The substitution does not respect the gradings, so the result is ungraded.
pub fn lazy_closure(m: &PecModule, s: char) -> Result<ChainComplexF2> {
    let k = site_index(s).ok_or(PairingError::Site(s))? as i32 - 1;
    if let Some(po) = m.orientation() {
        merged_orientation(po, [(idx(1 + k), idx(2 + k)), (idx(3 + k), idx(4 + k))])?;
    }
    let ones_p: BTreeSet<u8> = [idx(1 + k), idx(2 + k)].into();
    let ones_q: BTreeSet<u8> = [idx(3 + k), idx(4 + k)].into();
    let names: Vec<String> = m.generators().keys().cloned().collect();
    let pos: BTreeMap<&String, usize> = names.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut c = ChainComplexF2 {
        alex2: vec![BTreeMap::new(); names.len()],
        names: names.clone(),
        delta2: None,
        d: vec![BTreeSet::new(); names.len()],
    };
    for ((x, y), l) in m.arrows() {
        let value = l
            .paths()
            .filter(|b| {
                let ones = if b.is_p() { &ones_p } else { &ones_q };
                b.punctures().iter().all(|i| ones.contains(i))
            })
            .count();
        if value % 2 == 1 {
            c.d[pos[x]].insert(pos[y]);
        }
    }
    Ok(c)
}

/// Number of extra `V` factors when closing a tangle at `s`: 0 if the closure
/// adds two components, 1 if it adds one. `None` if the colours do not tell.
pub fn stabilisation_exponent(po: &PunctureOrientation, s: char) -> Option<u32> {
    let k = site_index(s)? as i32 - 1;
    if po.colours().len() < 2 {
        return None;
    }
    Some(if po.get(idx(1 + k)).0 == po.get(idx(2 + k)).0 { 0 } else { 1 })
}

/// Ranks of a closure computed two ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub site: char,
    pub box_ranks: BTreeMap<Bigrading, usize>,
    pub lazy_ranks: BTreeMap<Bigrading, usize>,
    pub box_total: usize,
    pub lazy_total: usize,
    pub stabilisation: Option<u32>,
    pub euler: Option<GradedPoly>,
}

/// Closes `m` at `s` via `𝒞(s)` and via the lazy substitution and compares totals.
pub fn close_tangle(m: &PecModule, s: char) -> Result<ClosureReport> {
    let reduced = m.cancel_all_identities().map_err(|_| PairingError::IdentityArrows)?;
    let boxed = box_tensor(&closing_type_a(s)?, &reduced)?;
    let lazy = lazy_closure(&reduced, s)?;
    let box_ranks = boxed.homology()?;
    let lazy_ranks = lazy.homology()?;
    let box_total: usize = box_ranks.values().sum();
    let lazy_total: usize = lazy_ranks.values().sum();
    if !(box_total == lazy_total || box_total == 2 * lazy_total || lazy_total == 2 * box_total) {
        return Err(PairingError::Disagreement { lazy: lazy_total, boxed: box_total });
    }
    Ok(ClosureReport {
        site: s,
        box_ranks,
        lazy_ranks,
        box_total,
        lazy_total,
        stabilisation: m.orientation().and_then(|po| stabilisation_exponent(po, s)),
        euler: boxed.euler_characteristic(),
    })
}

/// TSV of a rank table: Alexander exponents (doubled), 2δ, rank.
pub fn ranks_tsv(ranks: &BTreeMap<Bigrading, usize>) -> String {
    let mut s = String::from("alexander2\tdelta2\trank\n");
    for ((a, d), r) in ranks {
        let a: Vec<String> = a.iter().map(|(c, v)| format!("{c}={v}")).collect();
        let a = if a.is_empty() { "0".to_string() } else { a.join(",") };
        let d = d.map_or("-".to_string(), |d| d.to_string());
        s.push_str(&format!("{a}\t{d}\t{r}\n"));
    }
    s
}

impl fmt::Display for ClosureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "site\t{}", self.site)?;
        writeln!(f, "box_total\t{}", self.box_total)?;
        writeln!(f, "lazy_total\t{}", self.lazy_total)?;
        match self.stabilisation {
            Some(i) => writeln!(f, "stabilisation\t{i}")?,
            None => writeln!(f, "stabilisation\t?")?,
        }
        if let Some(e) = &self.euler {
            writeln!(f, "euler\t{e}")?;
        }
        writeln!(f, "# box")?;
        write!(f, "{}", ranks_tsv(&self.box_ranks))?;
        writeln!(f, "# lazy")?;
        write!(f, "{}", ranks_tsv(&self.lazy_ranks))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pecalg::curvature;

    #[test]
    fn closing_structure_shape() {
        let a = closing_type_a('a').unwrap();
        assert_eq!(a.generators.len(), 4);
        assert_eq!(a.actions.len(), 7);
        assert_eq!(a.max_action_length(), 2);
        let c = closing_type_a('c').unwrap();
        for ((x, s, y), (x2, s2, y2)) in a.actions.iter().zip(&c.actions) {
            assert_eq!((x, y), (x2, y2));
            for (b, b2) in s.iter().zip(s2) {
                assert_eq!(BasisPath::new(b.t0() + 2, b.t1() + 2), *b2);
            }
        }
        assert!(closing_type_a('e').is_err());
    }

    #[test]
    fn curvature_acts_as_zero() {
        for s in ['a', 'b', 'c', 'd'] {
            let a = closing_type_a(s).unwrap();
            for c in curvature().paths() {
                let parts: Vec<BasisPath> = c.punctures().iter().map(|&i| if c.is_p() { BasisPath::p(i) } else { BasisPath::q(i) }).collect();
                for x in a.generators.keys() {
                    for cut in 0..=parts.len() {
                        let (l, r) = parts.split_at(cut);
                        let mut seq = Vec::new();
                        for piece in [l, r] {
                            if let Some(first) = piece.first() {
                                seq.push(piece[1..].iter().fold(*first, |acc, b| acc.mul(b).unwrap()));
                            }
                        }
                        assert!(a.act(x, &seq).is_empty(), "{s} {x} {seq:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn homology_basics() {
        let mut c = ChainComplexF2 {
            names: vec!["x".into(), "y".into()],
            alex2: vec![BTreeMap::new(), BTreeMap::new()],
            delta2: Some(vec![0, 2]),
            d: vec![BTreeSet::new(), BTreeSet::new()],
        };
        assert_eq!(c.total_rank().unwrap(), 2);
        c.d[0].insert(1);
        assert_eq!(c.total_rank().unwrap(), 0);
        c.d[1].insert(0);
        assert!(c.homology().is_err());
    }
}
