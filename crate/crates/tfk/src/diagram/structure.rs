//! Recovers edges, faces, strands and endpoint orientations from quadrant lists.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{DiagramError, Result, TangleDiagram};

/// Rays at a crossing in standard position, in anticlockwise order.
pub const NE: usize = 0;
pub const NW: usize = 1;
pub const SW: usize = 2;
pub const SE: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HalfEdge {
    /// `(crossing, ray)`.
    Ray(usize, usize),
    /// Boundary endpoint `e_i`, between open regions `i` and `i + 1`.
    End(usize),
}

/// A strand of the diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub colour: String,
    /// `(in endpoint, out endpoint)` for open strands.
    pub ends: Option<(usize, usize)>,
    /// Passages through crossings in order: `(crossing, 0)` for the
    /// south-west to north-east strand, `(crossing, 1)` for the other.
    pub passages: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct Structure {
    /// Edge involution on half-edges.
    pub alpha: HashMap<HalfEdge, HalfEdge>,
    /// True where the strand leaves the disc.
    pub endpoint_out: Vec<bool>,
    pub endpoint_colour: Vec<String>,
    pub components: Vec<Component>,
    /// Face boundaries as orbits of half-edges, labelled by region.
    pub faces: Vec<(String, Vec<HalfEdge>)>,
    pub warnings: Vec<String>,
}

/// `(left, right)` regions of a crossing ray, seen along the strand's direction.
fn ray_sides(q: &[String; 4], ray: usize) -> (&str, &str) {
    match ray {
        NE => (&q[0], &q[3]),
        NW => (&q[1], &q[0]),
        SW => (&q[1], &q[2]),
        _ => (&q[2], &q[3]),
    }
}

struct Ctx<'a> {
    d: &'a TangleDiagram,
    m: usize,
}

impl Ctx<'_> {
    fn sigma(&self, h: HalfEdge) -> HalfEdge {
        match h {
            HalfEdge::Ray(c, r) => HalfEdge::Ray(c, (r + 1) % 4),
            HalfEdge::End(i) => HalfEdge::End((i + self.m - 1) % self.m),
        }
    }

    fn corner(&self, h: HalfEdge) -> &str {
        match h {
            HalfEdge::Ray(c, r) => &self.d.crossings[c].quadrants[r],
            HalfEdge::End(i) => &self.d.open[i],
        }
    }

    fn end_sides(&self, i: usize, out: bool) -> (&str, &str) {
        let a = &self.d.open[i];
        let b = &self.d.open[(i + 1) % self.m];
        if out {
            (b, a)
        } else {
            (a, b)
        }
    }

    /// Face orbits of `α∘σ`, or `None` if some orbit is not uniformly labelled.
    fn faces(&self, alpha: &HashMap<HalfEdge, HalfEdge>) -> Option<Vec<(String, Vec<HalfEdge>)>> {
        let mut seen = BTreeSet::new();
        let mut all: Vec<HalfEdge> = alpha.keys().copied().collect();
        all.sort();
        let mut out = Vec::new();
        for &start in &all {
            if seen.contains(&start) {
                continue;
            }
            let label = self.corner(start).to_string();
            let mut orbit = Vec::new();
            let mut h = start;
            loop {
                if self.corner(h) != label {
                    return None;
                }
                seen.insert(h);
                orbit.push(h);
                h = alpha[&self.sigma(h)];
                if h == start {
                    break;
                }
            }
            out.push((label, orbit));
        }
        Some(out)
    }
}

impl Structure {
    pub(super) fn compute(d: &TangleDiagram) -> Result<Structure> {
        let m = d.open.len();
        if m == 0 || m % 2 != 0 {
            return Err(DiagramError::Invalid("number of open regions must be even and positive".into()));
        }
        let ctx = Ctx { d, m };
        let mut ray_keys: BTreeMap<(&str, &str), (bool, bool)> = BTreeMap::new();
        for x in &d.crossings {
            for r in 0..4 {
                let e = ray_keys.entry(ray_sides(&x.quadrants, r)).or_default();
                if r == NE || r == NW {
                    e.0 = true;
                } else {
                    e.1 = true;
                }
            }
        }
        let mut options: Vec<Vec<bool>> = Vec::new();
        for i in 0..m {
            let mut o = Vec::new();
            if ray_keys.get(&ctx.end_sides(i, false)).is_some_and(|e| e.1) {
                o.push(false);
            }
            if ray_keys.get(&ctx.end_sides(i, true)).is_some_and(|e| e.0) {
                o.push(true);
            }
            if o.is_empty() {
                return Err(DiagramError::Invalid(format!("endpoint {} meets no edge", i + 1)));
            }
            options.push(o);
        }
        let free: Vec<usize> = (0..m).filter(|&i| options[i].len() > 1).collect();
        if free.len() > 16 {
            return Err(DiagramError::Invalid("endpoint orientations too ambiguous".into()));
        }
        let regions = d.regions();
        let mut best: Option<(HashMap<HalfEdge, HalfEdge>, Vec<bool>, Vec<(String, Vec<HalfEdge>)>)> = None;
        for mask in 0u32..(1u32 << free.len()) {
            let mut outs: Vec<bool> = options.iter().map(|o| o[0]).collect();
            for (b, &i) in free.iter().enumerate() {
                outs[i] = mask >> b & 1 == 1;
            }
            let mut sources: BTreeMap<(String, String), Vec<HalfEdge>> = BTreeMap::new();
            let mut sinks: BTreeMap<(String, String), Vec<HalfEdge>> = BTreeMap::new();
            for (c, x) in d.crossings.iter().enumerate() {
                for r in 0..4 {
                    let (l, rr) = ray_sides(&x.quadrants, r);
                    let key = (l.to_string(), rr.to_string());
                    if r == NE || r == NW {
                        sources.entry(key).or_default().push(HalfEdge::Ray(c, r));
                    } else {
                        sinks.entry(key).or_default().push(HalfEdge::Ray(c, r));
                    }
                }
            }
            for (i, &out) in outs.iter().enumerate() {
                let (l, r) = ctx.end_sides(i, out);
                let key = (l.to_string(), r.to_string());
                if out {
                    sinks.entry(key).or_default().push(HalfEdge::End(i));
                } else {
                    sources.entry(key).or_default().push(HalfEdge::End(i));
                }
            }
            if sources.len() != sinks.len()
                || sources.iter().any(|(k, v)| sinks.get(k).map(|w| w.len()) != Some(v.len()))
            {
                continue;
            }
            let groups: Vec<(Vec<HalfEdge>, Vec<HalfEdge>)> =
                sources.into_iter().map(|(k, v)| (v, sinks.remove(&k).unwrap())).collect();
            let mut alpha = HashMap::new();
            if let Some(faces) = search(&ctx, &groups, 0, &mut alpha, &regions) {
                best = Some((alpha, outs, faces));
                break;
            }
        }
        let Some((alpha, endpoint_out, faces)) = best else {
            return Err(DiagramError::Invalid("quadrant lists do not describe a planar diagram".into()));
        };
        let mut warnings = Vec::new();
        if faces.len() != regions.len() {
            warnings.push("non-disc face".to_string());
        }
        let (components, endpoint_colour) = trace(d, &alpha, &endpoint_out)?;
        Ok(Structure { alpha, endpoint_out, endpoint_colour, components, faces, warnings })
    }
}

/// Tries all bijections within each `(left, right)` class until faces are consistent.
fn search(
    ctx: &Ctx<'_>,
    groups: &[(Vec<HalfEdge>, Vec<HalfEdge>)],
    g: usize,
    alpha: &mut HashMap<HalfEdge, HalfEdge>,
    regions: &BTreeSet<String>,
) -> Option<Vec<(String, Vec<HalfEdge>)>> {
    if g == groups.len() {
        let faces = ctx.faces(alpha)?;
        let labels: BTreeSet<&String> = faces.iter().map(|(l, _)| l).collect();
        if labels.len() != regions.len() {
            return None;
        }
        let v = ctx.d.crossings.len() as i64 + 1;
        let e = alpha.len() as i64 / 2;
        let f = faces.len() as i64;
        if v - e + f < 2 || (v - e + f) % 2 != 0 {
            return None;
        }
        let outs: Vec<bool> = (0..ctx.m).map(|i| matches!(alpha[&HalfEdge::End(i)], HalfEdge::Ray(_, r) if r == NE || r == NW)).collect();
        trace(ctx.d, alpha, &outs).ok()?;
        return Some(faces);
    }
    let (src, dst) = &groups[g];
    let mut perm: Vec<usize> = (0..dst.len()).collect();
    loop {
        let direct = perm
            .iter()
            .enumerate()
            .any(|(i, &j)| matches!((src[i], dst[j]), (HalfEdge::End(_), HalfEdge::End(_))));
        if !direct {
            for (i, &j) in perm.iter().enumerate() {
                alpha.insert(src[i], dst[j]);
                alpha.insert(dst[j], src[i]);
            }
            if let Some(f) = search(ctx, groups, g + 1, alpha, regions) {
                return Some(f);
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    for h in src.iter().chain(dst) {
        alpha.remove(h);
    }
    None
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

type Traced = (Vec<Component>, Vec<String>);

fn trace(d: &TangleDiagram, alpha: &HashMap<HalfEdge, HalfEdge>, outs: &[bool]) -> Result<Traced> {
    let m = outs.len();
    let nc = d.crossings.len();
    let mut used = vec![[false; 2]; nc];
    let mut comps = Vec::new();
    let mut end_colour = vec![String::new(); m];
    let strand_colour = |c: usize, s: usize| -> &str {
        if s == 0 {
            d.crossings[c].colour_a()
        } else {
            d.crossings[c].colour_b()
        }
    };
    let follow = |start: HalfEdge, used: &mut Vec<[bool; 2]>| -> Result<(Vec<(usize, usize)>, HalfEdge)> {
        let mut passages = Vec::new();
        let mut h = alpha[&start];
        loop {
            match h {
                HalfEdge::End(_) => return Ok((passages, h)),
                HalfEdge::Ray(c, r) => {
                    let s = if r == SW { 0 } else { 1 };
                    if used[c][s] {
                        return Ok((passages, h));
                    }
                    used[c][s] = true;
                    passages.push((c, s));
                    let out = if s == 0 { NE } else { NW };
                    h = alpha[&HalfEdge::Ray(c, out)];
                }
            }
        }
    };
    for i in 0..m {
        if outs[i] {
            continue;
        }
        let (passages, last) = follow(HalfEdge::End(i), &mut used)?;
        let HalfEdge::End(j) = last else {
            return Err(DiagramError::Invalid("open strand runs into a loop".into()));
        };
        comps.push((Some((i, j)), passages));
    }
    for c in 0..nc {
        for s in 0..2 {
            if used[c][s] {
                continue;
            }
            let start = HalfEdge::Ray(c, if s == 0 { NE } else { NW });
            used[c][s] = true;
            let (mut passages, _) = follow(start, &mut used)?;
            passages.insert(0, (c, s));
            comps.push((None, passages));
        }
    }
    let mut out = Vec::new();
    for (ends, passages) in comps {
        let colours: BTreeSet<&str> = passages.iter().map(|&(c, s)| strand_colour(c, s)).collect();
        if colours.len() > 1 {
            return Err(DiagramError::Invalid(format!(
                "strand changes colour ({})",
                colours.into_iter().collect::<Vec<_>>().join(", ")
            )));
        }
        let Some(colour) = colours.into_iter().next().map(str::to_string) else {
            return Err(DiagramError::Invalid("strand without crossings".into()));
        };
        if let Some((i, j)) = ends {
            end_colour[i] = colour.clone();
            end_colour[j] = colour.clone();
        }
        out.push(Component { colour, ends, passages });
    }
    Ok((out, end_colour))
}

impl Structure {
    /// Colours of closed components, with multiplicity.
    pub fn closed_components(&self) -> Vec<&Component> {
        self.components.iter().filter(|c| c.ends.is_none()).collect()
    }
}
