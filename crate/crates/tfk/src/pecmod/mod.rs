//! Peculiar modules: curved type-D structures over [`A^∂`](crate::pecalg).
//!
//! A module is a set of generators, each sitting at one of the four
//! idempotents, together with arrows `x → y` labelled by algebra elements
//! from `s(x)` to `s(y)`. An arrow `x → y` with label `a` stands for the
//! term `a ⊗ y` of `∂x`; composing two arrows multiplies labels left to right.
//!
//! Gradings are stored doubled: `delta2 = 2δ` and, per colour, twice the
//! Alexander grading. An arrow `x → y` labelled `a` must satisfy
//! `δ(a) + δ(y) = δ(x) + 1` and `A(a) + A(y) = A(x)`.

mod builders;
mod loops;

pub use builders::*;
pub use loops::*;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::alexander::GradedPoly;
use crate::pecalg::{curvature, BasisPath, PecElement, PunctureOrientation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModuleError {
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("duplicate generator {0}")]
    DuplicateGenerator(String),
    #[error("label {label} of {src} -> {dst} does not run from idempotent {from} to {to}")]
    Idempotents { src: String, dst: String, label: String, from: u8, to: u8 },
    #[error("arrow {0} -> {1} is not labelled by an idempotent")]
    NotUnit(String, String),
    #[error("cannot cancel a loop at {0}")]
    SelfLoop(String),
    #[error("module fails the curvature check: {0}")]
    NotCurved(String),
    #[error("morphism is not a cycle: D(f) has {0} components")]
    NotCycle(usize),
    #[error("homotopy precondition fails: {0}")]
    Homotopy(String),
    #[error("grading: {0}")]
    Grading(String),
    #[error("malformed loop word {0:?}: {1}")]
    Word(String, String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, ModuleError>;

/// Site letter of idempotent `i`.
pub fn site_letter(i: u8) -> char {
    (b'a' + i - 1) as char
}

pub fn site_index(c: char) -> Option<u8> {
    ('a'..='d').contains(&c).then(|| c as u8 - b'a' + 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub site: u8,
    pub delta2: i32,
    /// Twice the Alexander grading, per colour. Zero entries are omitted.
    pub alex2: BTreeMap<String, i32>,
}

impl Generator {
    pub fn new(site: u8, delta2: i32, alex2: &[(&str, i32)]) -> Generator {
        let mut a = BTreeMap::new();
        for (c, v) in alex2 {
            *a.entry(c.to_string()).or_insert(0) += v;
        }
        a.retain(|_, v| *v != 0);
        Generator { site, delta2, alex2: a }
    }

    /// Reduced Alexander grading, doubled.
    pub fn reduced2(&self) -> i32 {
        self.alex2.values().sum()
    }

    /// `h = A^r/2 − δ` if it is an integer.
    pub fn homological(&self) -> Option<i32> {
        let x = self.reduced2() - 2 * self.delta2;
        (x % 4 == 0).then_some(x / 4)
    }
}

pub(crate) fn add_alex(a: &BTreeMap<String, i32>, b: &BTreeMap<String, i32>, k: i32) -> BTreeMap<String, i32> {
    let mut out = a.clone();
    for (c, v) in b {
        *out.entry(c.clone()).or_insert(0) += k * v;
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Arrows of a module or components of a morphism, keyed by `(src, dst)`.
pub type ArrowMap = BTreeMap<(String, String), PecElement>;

fn toggle(map: &mut ArrowMap, src: &str, dst: &str, e: &PecElement) {
    if e.is_zero() {
        return;
    }
    let key = (src.to_string(), dst.to_string());
    let cur = map.entry(key.clone()).or_default();
    cur.add_assign(e);
    if cur.is_zero() {
        map.remove(&key);
    }
}

/// A peculiar module.
///
/// `orientation` fixes the Alexander grading of the algebra; without one the
/// module is only δ-graded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PecModule {
    generators: BTreeMap<String, Generator>,
    arrows: ArrowMap,
    orientation: Option<PunctureOrientation>,
}

impl PecModule {
    pub fn new(orientation: Option<PunctureOrientation>) -> PecModule {
        PecModule { generators: BTreeMap::new(), arrows: BTreeMap::new(), orientation }
    }

    pub fn orientation(&self) -> Option<&PunctureOrientation> {
        self.orientation.as_ref()
    }

    pub fn generators(&self) -> &BTreeMap<String, Generator> {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.generators.get(name)
    }

    pub fn arrows(&self) -> &ArrowMap {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn add_generator(&mut self, name: &str, g: Generator) -> Result<()> {
        if self.generators.contains_key(name) {
            return Err(ModuleError::DuplicateGenerator(name.into()));
        }
        self.generators.insert(name.to_string(), g);
        Ok(())
    }

    /// Adds `label` to the arrow `src → dst` (over F₂).
    pub fn add_arrow(&mut self, src: &str, dst: &str, label: &PecElement) -> Result<()> {
        let s = self.generators.get(src).ok_or_else(|| ModuleError::UnknownGenerator(src.into()))?;
        let t = self.generators.get(dst).ok_or_else(|| ModuleError::UnknownGenerator(dst.into()))?;
        if label.restrict(s.site, t.site) != *label {
            return Err(ModuleError::Idempotents {
                src: src.into(),
                dst: dst.into(),
                label: label.to_string(),
                from: s.site,
                to: t.site,
            });
        }
        toggle(&mut self.arrows, src, dst, label);
        Ok(())
    }

    /// Parses `label` with [`PecElement::from_str`](std::str::FromStr) and adds it.
    pub fn arrow(&mut self, src: &str, dst: &str, label: &str) -> Result<()> {
        let e: PecElement = label.parse().map_err(|e| ModuleError::Parse(format!("{e}")))?;
        self.add_arrow(src, dst, &e)
    }

    pub fn label(&self, src: &str, dst: &str) -> PecElement {
        self.arrows.get(&(src.to_string(), dst.to_string())).cloned().unwrap_or_default()
    }

    pub fn out_arrows<'a>(&'a self, x: &'a str) -> impl Iterator<Item = (&'a str, &'a PecElement)> + 'a {
        self.arrows.range((x.to_string(), String::new())..).take_while(move |((s, _), _)| s == x).map(|((_, d), l)| (d.as_str(), l))
    }

    pub fn in_arrows<'a>(&'a self, y: &'a str) -> impl Iterator<Item = (&'a str, &'a PecElement)> + 'a {
        self.arrows.iter().filter(move |((_, d), _)| d == y).map(|((s, _), l)| (s.as_str(), l))
    }

    /// `∂²x` as a map target → label.
    pub fn d_squared(&self, x: &str) -> BTreeMap<String, PecElement> {
        let mut out: BTreeMap<String, PecElement> = BTreeMap::new();
        for (y, a) in self.out_arrows(x) {
            for (z, b) in self.out_arrows(y) {
                out.entry(z.to_string()).or_default().add_assign(&a.mul(b));
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Generators at which `∂² ≠ a_c ⊗ id`, with a description.
    pub fn curvature_defects(&self) -> Vec<String> {
        let ac = curvature();
        let mut bad = Vec::new();
        for (x, g) in &self.generators {
            let mut d2 = self.d_squared(x);
            d2.entry(x.clone()).or_default().add_assign(&ac.restrict(g.site, g.site));
            d2.retain(|_, v| !v.is_zero());
            if !d2.is_empty() {
                let parts: Vec<String> = d2.iter().map(|(z, l)| format!("({l})⊗{z}")).collect();
                bad.push(format!("∂²{x} − a_c⊗{x} = {}", parts.join(" + ")));
            }
        }
        bad
    }

    pub fn check_curved(&self) -> bool {
        self.curvature_defects().is_empty()
    }

    /// Arrow components violating the grading rules.
    pub fn grading_defects(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for ((s, t), label) in &self.arrows {
            let (gs, gt) = (&self.generators[s], &self.generators[t]);
            for b in label.paths() {
                if b.delta2() + gt.delta2 != gs.delta2 + 2 {
                    bad.push(format!("δ of {s} -{b}-> {t}"));
                }
                if let Some(po) = &self.orientation {
                    let a2: BTreeMap<String, i32> = b.alexander(po).into_iter().map(|(c, v)| (c, 2 * v)).collect();
                    if add_alex(&a2, &gt.alex2, 1) != gs.alex2 {
                        bad.push(format!("Alexander of {s} -{b}-> {t}"));
                    }
                }
            }
        }
        bad
    }

    /// Renames every colour (of generators and orientation) to `t`.
    pub fn reduced(&self) -> PecModule {
        let mut m = self.clone();
        for g in m.generators.values_mut() {
            let r = g.reduced2();
            g.alex2 = if r == 0 { BTreeMap::new() } else { [("t".to_string(), r)].into() };
        }
        m.orientation = m.orientation.map(|po| po.single());
        m
    }

    /// Drops the Alexander grading.
    pub fn delta_graded_only(&self) -> PecModule {
        let mut m = self.clone();
        for g in m.generators.values_mut() {
            g.alex2.clear();
        }
        m.orientation = None;
        m
    }

    /// Multiplies by `δ^{d2/2}` and the Alexander monomial with doubled exponents `alex2`.
    pub fn shifted(&self, d2: i32, alex2: &[(&str, i32)]) -> PecModule {
        let shift = Generator::new(1, 0, alex2).alex2;
        let mut m = self.clone();
        for g in m.generators.values_mut() {
            g.delta2 += d2;
            g.alex2 = add_alex(&g.alex2, &shift, 1);
        }
        m
    }

    /// Renames generators with `f`.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Result<PecModule> {
        let mut m = PecModule::new(self.orientation.clone());
        for (x, g) in &self.generators {
            m.add_generator(&f(x), g.clone())?;
        }
        for ((s, t), l) in &self.arrows {
            m.add_arrow(&f(s), &f(t), l)?;
        }
        Ok(m)
    }

    /// Direct sum; generator names must be disjoint.
    pub fn direct_sum(&self, other: &PecModule) -> Result<PecModule> {
        let mut m = self.clone();
        for (x, g) in &other.generators {
            m.add_generator(x, g.clone())?;
        }
        for ((s, t), l) in &other.arrows {
            m.add_arrow(s, t, l)?;
        }
        Ok(m)
    }

    /// Cancels the unit-labelled arrow `src → dst`.
    ///
    /// Each zigzag `z → dst ← src → w` with labels `α` and `β` contributes
    /// `α·β` to `z → w`.
    pub fn cancel_arrow(&self, src: &str, dst: &str) -> Result<PecModule> {
        if src == dst {
            return Err(ModuleError::SelfLoop(src.into()));
        }
        let l = self.label(src, dst);
        if l.len() != 1 || !l.paths().all(|b| b.is_idempotent()) {
            return Err(ModuleError::NotUnit(src.into(), dst.into()));
        }
        let ins: Vec<(String, PecElement)> =
            self.in_arrows(dst).filter(|(z, _)| *z != src && *z != dst).map(|(z, a)| (z.to_string(), a.clone())).collect();
        let outs: Vec<(String, PecElement)> =
            self.out_arrows(src).filter(|(w, _)| *w != src && *w != dst).map(|(w, b)| (w.to_string(), b.clone())).collect();
        let mut m = self.clone();
        m.generators.remove(src);
        m.generators.remove(dst);
        m.arrows.retain(|(s, t), _| s != src && s != dst && t != src && t != dst);
        for (z, a) in &ins {
            for (w, b) in &outs {
                toggle(&mut m.arrows, z, w, &a.mul(b));
            }
        }
        if !m.check_curved() {
            return Err(ModuleError::NotCurved(m.curvature_defects().join("; ")));
        }
        Ok(m)
    }

    /// Arrows labelled by an idempotent between distinct generators.
    pub fn identity_arrows(&self) -> Vec<(String, String)> {
        self.arrows
            .iter()
            .filter(|((s, t), l)| s != t && l.units().next().is_some())
            .map(|((s, t), _)| (s.clone(), t.clone()))
            .collect()
    }

    /// Repeatedly cancels identity arrows until none remain.
    pub fn cancel_all_identities(&self) -> Result<PecModule> {
        let mut m = self.clone();
        while let Some((s, t)) = m.identity_arrows().into_iter().next() {
            m = m.cancel_arrow(&s, &t)?;
        }
        Ok(m)
    }

    /// Replaces `∂` by `∂ + D(h)` for a homotopy `h: M → M`.
    pub fn apply_homotopy(&self, h: &PecMorphism) -> Result<PecModule> {
        let mut errs = Vec::new();
        let dh = d_of_morphism(self, self, h)?;
        if !compose(h, h).is_zero() {
            errs.push("h∘h ≠ 0");
        }
        if !compose(&dh, h).is_zero() {
            errs.push("h∘D(h) ≠ 0");
        }
        if !compose(h, &dh).is_zero() {
            errs.push("D(h)∘h ≠ 0");
        }
        if !errs.is_empty() {
            return Err(ModuleError::Homotopy(errs.join(", ")));
        }
        let mut m = self.clone();
        for ((s, t), l) in &dh.components {
            m.add_arrow(s, t, l)?;
        }
        if !m.check_curved() {
            return Err(ModuleError::NotCurved(m.curvature_defects().join("; ")));
        }
        Ok(m)
    }

    /// Graded Euler characteristic per site, `Σ (−1)^h · Π colour^{2A}`.
    pub fn euler_characteristic(&self) -> Result<BTreeMap<u8, GradedPoly>> {
        let mut out: BTreeMap<u8, GradedPoly> = (1..=4).map(|i| (i, GradedPoly::zero())).collect();
        for (x, g) in &self.generators {
            let h = g.homological().ok_or_else(|| ModuleError::Grading(format!("{x} has non-integral h")))?;
            let cols: Vec<(&str, i32)> = g.alex2.iter().map(|(c, v)| (c.as_str(), *v)).collect();
            let sign = if h.rem_euclid(2) == 0 { 1 } else { -1 };
            let p = out.get_mut(&g.site).unwrap();
            *p = p.add(&GradedPoly::monomial(&cols, 0, 0, sign));
        }
        Ok(out)
    }

    /// F₂ ranks of the single-letter components, keyed by letter and the
    /// source δ (doubled).
    pub fn rank_profile(&self) -> BTreeMap<(String, i32), usize> {
        let mut out = BTreeMap::new();
        let deltas: BTreeSet<i32> = self.generators.values().map(|g| g.delta2).collect();
        for i in 1..=4u8 {
            for letter in [BasisPath::p(i), BasisPath::q(i)] {
                for &d in &deltas {
                    let rows: Vec<&String> = self
                        .generators
                        .iter()
                        .filter(|(_, g)| g.site == letter.source() && g.delta2 == d)
                        .map(|(x, _)| x)
                        .collect();
                    let cols: Vec<&String> =
                        self.generators.iter().filter(|(_, g)| g.site == letter.target()).map(|(x, _)| x).collect();
                    let mat: Vec<Vec<bool>> = rows
                        .iter()
                        .map(|r| cols.iter().map(|c| self.label(r, c).contains(&letter)).collect())
                        .collect();
                    out.insert((letter.to_string(), d), f2_rank(mat));
                }
            }
        }
        out
    }

    /// Graphviz rendering.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph pecmod {\n");
        for (x, g) in &self.generators {
            s.push_str(&format!("  \"{x}\" [label=\"{}\"];\n", generator_label(g)));
        }
        for ((a, b), l) in &self.arrows {
            s.push_str(&format!("  \"{a}\" -> \"{b}\" [label=\"{l}\"];\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// Writes a doubled value as an integer or a half.
pub fn half(v2: i32) -> String {
    if v2 % 2 == 0 {
        format!("{}", v2 / 2)
    } else {
        format!("{v2}/2")
    }
}

fn generator_label(g: &Generator) -> String {
    let a: Vec<String> = g.alex2.values().map(|v| half(*v)).collect();
    let a = match a.len() {
        0 => "0".to_string(),
        1 => a[0].clone(),
        _ => format!("({})", a.join(",")),
    };
    format!("{}^{{{a}}} δ^{{{}}}", site_letter(g.site), half(g.delta2))
}

/// Rank over F₂ by Gaussian elimination.
pub fn f2_rank(mut m: Vec<Vec<bool>>) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c]) else { continue };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= *y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Canonical text form: one `gen` line per generator, one `arrow` line per arrow.
impl fmt::Display for PecModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(po) = &self.orientation {
            let parts: Vec<String> = (1..=4)
                .map(|i| {
                    let (c, inward) = po.get(i);
                    format!("{c}:{}", if inward { "in" } else { "out" })
                })
                .collect();
            writeln!(f, "orientation {}", parts.join(" "))?;
        }
        for (x, g) in &self.generators {
            let a: Vec<String> = g.alex2.iter().map(|(c, v)| format!("{c}={v}")).collect();
            writeln!(f, "gen {x} {} {} {}", site_letter(g.site), g.delta2, a.join(","))?;
        }
        for ((s, t), l) in &self.arrows {
            writeln!(f, "arrow {s} {t} {l}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for PecModule {
    type Err = ModuleError;

    fn from_str(s: &str) -> Result<Self> {
        let perr = |l: &str| ModuleError::Parse(format!("bad line {l:?}"));
        let mut m = PecModule::new(None);
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let w: Vec<&str> = line.split_whitespace().collect();
            match w.as_slice() {
                ["orientation", rest @ ..] if rest.len() == 4 => {
                    let mut ps = Vec::new();
                    for p in rest {
                        let (c, dir) = p.split_once(':').ok_or_else(|| perr(line))?;
                        ps.push((c, dir == "in"));
                    }
                    let po = PunctureOrientation::new([ps[0], ps[1], ps[2], ps[3]])
                        .map_err(|e| ModuleError::Parse(e.to_string()))?;
                    m.orientation = Some(po);
                }
                ["gen", name, site, d2, rest @ ..] if rest.len() <= 1 => {
                    let site = site.chars().next().and_then(site_index).ok_or_else(|| perr(line))?;
                    let d2: i32 = d2.parse().map_err(|_| perr(line))?;
                    let mut alex = Vec::new();
                    for kv in rest.iter().flat_map(|r| r.split(',')).filter(|s| !s.is_empty()) {
                        let (c, v) = kv.split_once('=').ok_or_else(|| perr(line))?;
                        alex.push((c, v.parse::<i32>().map_err(|_| perr(line))?));
                    }
                    m.add_generator(name, Generator::new(site, d2, &alex))?;
                }
                ["arrow", src, dst, label] => m.arrow(src, dst, label)?,
                _ => return Err(perr(line)),
            }
        }
        Ok(m)
    }
}

/// A morphism between peculiar modules, as labelled components.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PecMorphism {
    pub components: ArrowMap,
}

impl PecMorphism {
    pub fn zero() -> PecMorphism {
        PecMorphism::default()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn add(&mut self, src: &str, dst: &str, label: &PecElement) {
        toggle(&mut self.components, src, dst, label);
    }

    pub fn with(mut self, src: &str, dst: &str, label: &str) -> PecMorphism {
        self.add(src, dst, &label.parse().expect("algebra element"));
        self
    }

    /// The identity of `m`.
    pub fn identity(m: &PecModule) -> PecMorphism {
        let mut f = PecMorphism::zero();
        for (x, g) in m.generators() {
            f.add(x, x, &BasisPath::idempotent(g.site).into());
        }
        f
    }

    /// Checks that components join existing generators with compatible labels.
    pub fn validate(&self, from: &PecModule, to: &PecModule) -> Result<()> {
        for ((s, t), l) in &self.components {
            let gs = from.generator(s).ok_or_else(|| ModuleError::UnknownGenerator(s.clone()))?;
            let gt = to.generator(t).ok_or_else(|| ModuleError::UnknownGenerator(t.clone()))?;
            if l.restrict(gs.site, gt.site) != *l {
                return Err(ModuleError::Idempotents {
                    src: s.clone(),
                    dst: t.clone(),
                    label: l.to_string(),
                    from: gs.site,
                    to: gt.site,
                });
            }
        }
        Ok(())
    }
}

/// `g ∘ f`: first `f`, then `g`; labels multiply in that order.
pub fn compose(f: &PecMorphism, g: &PecMorphism) -> PecMorphism {
    let mut out = PecMorphism::zero();
    for ((x, y), a) in &f.components {
        for ((y2, z), b) in g.components.range((y.clone(), String::new())..) {
            if y2 != y {
                break;
            }
            out.add(x, z, &a.mul(b));
        }
    }
    out
}

fn differential(m: &PecModule) -> PecMorphism {
    PecMorphism { components: m.arrows.clone() }
}

/// `D(f) = ∂_N ∘ f + f ∘ ∂_M`.
pub fn d_of_morphism(from: &PecModule, to: &PecModule, f: &PecMorphism) -> Result<PecMorphism> {
    f.validate(from, to)?;
    let mut out = compose(f, &differential(to));
    for ((s, t), l) in compose(&differential(from), f).components {
        out.add(&s, &t, &l);
    }
    Ok(out)
}

/// Generator names in a mapping cone: `x.0` for the source, `x.1` for the target.
pub fn cone_name(x: &str, side: u8) -> String {
    format!("{x}.{side}")
}

/// The mapping cone of a cycle `f: M → N`, with differential `[[∂_M, f], [0, ∂_N]]`.
///
/// Gradings are taken as they are; `f` is expected to have the degree of the
/// differential, so shift `M` and `N` beforehand if needed.
pub fn mapping_cone(from: &PecModule, to: &PecModule, f: &PecMorphism) -> Result<PecModule> {
    let df = d_of_morphism(from, to, f)?;
    if !df.is_zero() {
        return Err(ModuleError::NotCycle(df.components.len()));
    }
    let orientation = if from.orientation == to.orientation { from.orientation.clone() } else { None };
    let mut m = from.renamed(|x| cone_name(x, 0))?.direct_sum(&to.renamed(|x| cone_name(x, 1))?)?;
    m.orientation = orientation;
    for ((s, t), l) in &f.components {
        m.add_arrow(&cone_name(s, 0), &cone_name(t, 1), l)?;
    }
    Ok(m)
}

/// Isomorphism of labelled graphs: a bijection of generators preserving sites,
/// arrow labels and, if `graded`, both gradings.
pub fn isomorphic(m: &PecModule, n: &PecModule, graded: bool) -> bool {
    find_isomorphism(m, n, graded).is_some()
}

pub fn find_isomorphism(m: &PecModule, n: &PecModule, graded: bool) -> Option<BTreeMap<String, String>> {
    if m.len() != n.len() || m.arrows.len() != n.arrows.len() {
        return None;
    }
    let sig = |mm: &PecModule, x: &str| {
        let g = &mm.generators[x];
        let mut outs: Vec<String> = mm.out_arrows(x).map(|(_, l)| l.to_string()).collect();
        let mut ins: Vec<String> = mm.in_arrows(x).map(|(_, l)| l.to_string()).collect();
        outs.sort();
        ins.sort();
        let grading = graded.then(|| (g.delta2, g.alex2.clone()));
        (g.site, grading, outs, ins)
    };
    let xs: Vec<&String> = m.generators.keys().collect();
    let cands: Vec<Vec<&String>> =
        xs.iter().map(|x| n.generators.keys().filter(|y| sig(m, x) == sig(n, y)).collect()).collect();
    let mut map: BTreeMap<String, String> = BTreeMap::new();
    let mut used: BTreeSet<String> = BTreeSet::new();
    fn go(
        k: usize,
        xs: &[&String],
        cands: &[Vec<&String>],
        m: &PecModule,
        n: &PecModule,
        map: &mut BTreeMap<String, String>,
        used: &mut BTreeSet<String>,
    ) -> bool {
        if k == xs.len() {
            return true;
        }
        let x = xs[k];
        for y in &cands[k] {
            if used.contains(*y) {
                continue;
            }
            let consistent = map.iter().all(|(a, b)| {
                m.label(x, a) == n.label(y, b) && m.label(a, x) == n.label(b, y)
            }) && m.label(x, x) == n.label(y, y);
            if !consistent {
                continue;
            }
            map.insert(x.clone(), (*y).clone());
            used.insert((*y).clone());
            if go(k + 1, xs, cands, m, n, map, used) {
                return true;
            }
            map.remove(x);
            used.remove(*y);
        }
        false
    }
    go(0, &xs, &cands, m, n, &mut map, &mut used).then_some(map)
}
