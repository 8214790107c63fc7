use std::collections::{BTreeMap, BTreeSet};

use super::{fresh_label, Crossing, DiagramError, Result, Sign, TangleDiagram};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut x = x;
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Keeps the smaller index as representative.
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }
}

impl TangleDiagram {
    pub fn rename_regions(&self, f: impl Fn(&str) -> String) -> TangleDiagram {
        TangleDiagram {
            open: self.open.iter().map(|r| f(r)).collect(),
            crossings: self
                .crossings
                .iter()
                .map(|c| Crossing {
                    quadrants: c.quadrants.clone().map(|q| f(&q)),
                    ..c.clone()
                })
                .collect(),
        }
    }

    pub fn rename_colours(&self, f: impl Fn(&str) -> String) -> TangleDiagram {
        TangleDiagram {
            open: self.open.clone(),
            crossings: self
                .crossings
                .iter()
                .map(|c| Crossing { over: f(&c.over), under: f(&c.under), ..c.clone() })
                .collect(),
        }
    }

    /// Adds a crossing between the two strands ending next to the open region.
    ///
    /// The region keeps its label and becomes the new open region near the
    /// boundary; the old region becomes closed under a fresh label.
    pub fn add_twist(&self, region: &str, sign: Sign) -> Result<TangleDiagram> {
        let i = self.open_index(region)?;
        let st = self.structure()?;
        let m = self.open.len();
        let e1 = (i + m - 1) % m;
        let e2 = i;
        let fresh = self.fresh_region();
        let n = region.to_string();
        let s = fresh.clone();
        let e = self.open[e1].clone();
        let w = self.open[(i + 1) % m].clone();
        let c1 = st.endpoint_colour[e1].clone();
        let c2 = st.endpoint_colour[e2].clone();
        let (q, a, b) = match (st.endpoint_out[e1], st.endpoint_out[e2]) {
            (true, true) => ([n, w, s, e], c2, c1),
            (true, false) => ([w, s, e, n], c1, c2),
            (false, true) => ([e, n, w, s], c1, c2),
            (false, false) => ([s, e, n, w], c2, c1),
        };
        let mut out = self.rename_regions(|r| if r == region { fresh.clone() } else { r.to_string() });
        out.open = self.open.clone();
        out.crossings.push(Crossing::from_strands(q, sign, &a, &b));
        Ok(out)
    }

    /// Switches every crossing.
    pub fn mirror(&self) -> TangleDiagram {
        let mut out = self.clone();
        for c in &mut out.crossings {
            c.sign = c.sign.flip();
            std::mem::swap(&mut c.over, &mut c.under);
        }
        out
    }

    /// Changes which strand is on top at one crossing.
    pub fn switch_crossing(&self, c: usize) -> TangleDiagram {
        let mut out = self.clone();
        let x = &mut out.crossings[c];
        x.sign = x.sign.flip();
        std::mem::swap(&mut x.over, &mut x.under);
        out
    }

    /// Reflection of the diagram in a line of the plane.
    pub fn reflect(&self) -> TangleDiagram {
        let mut open = vec![self.open[0].clone()];
        open.extend(self.open[1..].iter().rev().cloned());
        TangleDiagram {
            open,
            crossings: self
                .crossings
                .iter()
                .map(|c| {
                    let q = &c.quadrants;
                    Crossing {
                        quadrants: [q[0].clone(), q[3].clone(), q[2].clone(), q[1].clone()],
                        sign: c.sign.flip(),
                        ..c.clone()
                    }
                })
                .collect(),
        }
    }

    /// Cyclically shifts the open regions so that `open[k]` comes first.
    pub fn rotate(&self, k: usize) -> TangleDiagram {
        let mut open = self.open.clone();
        let m = open.len();
        open.rotate_left(k % m);
        TangleDiagram { open, crossings: self.crossings.clone() }
    }

    /// Reverses the orientation of every strand whose colour is in `colours`.
    pub fn reverse_strands(&self, colours: &BTreeSet<String>) -> Result<TangleDiagram> {
        let known = self.colours();
        if let Some(c) = colours.iter().find(|c| !known.contains(*c)) {
            return Err(DiagramError::UnknownColour(c.clone()));
        }
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let ra = colours.contains(c.colour_a());
                let rb = colours.contains(c.colour_b());
                let q = &c.quadrants;
                let (order, flip) = match (ra, rb) {
                    (false, false) => ([0, 1, 2, 3], false),
                    (true, false) => ([1, 2, 3, 0], true),
                    (false, true) => ([3, 0, 1, 2], true),
                    (true, true) => ([2, 3, 0, 1], false),
                };
                Crossing {
                    quadrants: order.map(|k| q[k].clone()),
                    sign: if flip { c.sign.flip() } else { c.sign },
                    ..c.clone()
                }
            })
            .collect();
        Ok(TangleDiagram { open: self.open.clone(), crossings })
    }

    pub fn reverse_all(&self) -> TangleDiagram {
        self.reverse_strands(&self.colours()).unwrap()
    }

    /// Joins the two endpoints next to an open region by an arc.
    pub fn cap_off(&self, region: &str) -> Result<TangleDiagram> {
        let m = self.open.len();
        if m < 4 {
            return Err(DiagramError::Invalid("capping needs at least four endpoints".into()));
        }
        let i = self.open_index(region)?;
        let st = self.structure()?;
        let e1 = (i + m - 1) % m;
        if st.endpoint_out[e1] == st.endpoint_out[i] {
            return Err(DiagramError::CapOrientation(region.to_string()));
        }
        let keep = st.endpoint_colour[e1].clone();
        let drop = st.endpoint_colour[i].clone();
        let prev = self.open[e1].clone();
        let next = self.open[(i + 1) % m].clone();
        let mut out = self
            .rename_colours(|c| if c == drop { keep.clone() } else { c.to_string() })
            .rename_regions(|r| if r == prev { next.clone() } else { r.to_string() });
        out.open = (1..m - 1).map(|t| self.open[(i + t) % m].clone()).collect();
        Ok(out)
    }

    /// Glues `k` consecutive endpoints of `self`, starting after open region
    /// `i`, to `k` consecutive endpoints of `other`, starting after open
    /// region `j`, in reverse order.
    ///
    /// Glued strands must have opposite orientations; their colours are
    /// identified, preferring the names of `self`.
    pub fn glue(&self, other: &TangleDiagram, i: usize, j: usize, k: usize) -> Result<TangleDiagram> {
        let m1 = self.open.len();
        let m2 = other.open.len();
        if k == 0 || k > m1 || k > m2 || k == m1 + m2 - k || (k == m1 && k == m2) {
            return Err(DiagramError::Invalid("bad number of glued endpoints".into()));
        }
        let s1 = self.structure()?;
        let s2 = other.structure()?;
        let pair = |t: usize| ((i + t) % m1, (j + k - 1 - t) % m2);
        for t in 0..k {
            let (a, b) = pair(t);
            if s1.endpoint_out[a] == s2.endpoint_out[b] {
                return Err(DiagramError::Invalid("glued endpoints have the same orientation".into()));
            }
        }
        // Colours: self first, then other.
        let cols1: Vec<String> = self.colours().into_iter().collect();
        let cols2: Vec<String> = other.colours().into_iter().collect();
        let nc = cols1.len() + cols2.len();
        let cidx1 = |c: &str| cols1.iter().position(|x| x == c).unwrap();
        let cidx2 = |c: &str| cols1.len() + cols2.iter().position(|x| x == c).unwrap();
        let mut cuf = UnionFind::new(nc);
        for t in 0..k {
            let (a, b) = pair(t);
            cuf.union(cidx1(&s1.endpoint_colour[a]), cidx2(&s2.endpoint_colour[b]));
        }
        let mut used: BTreeSet<String> = cols1.iter().cloned().collect();
        let mut cname = vec![String::new(); nc];
        for x in 0..nc {
            let r = cuf.find(x);
            if r == x {
                cname[x] = if x < cols1.len() {
                    cols1[x].clone()
                } else if used.contains(&cols2[x - cols1.len()]) {
                    let f = fresh_label(&used, "t");
                    used.insert(f.clone());
                    f
                } else {
                    used.insert(cols2[x - cols1.len()].clone());
                    cols2[x - cols1.len()].clone()
                };
            }
        }
        for x in 0..nc {
            let r = cuf.find(x);
            cname[x] = cname[r].clone();
        }
        // Regions: self first, then other.
        let reg1: Vec<String> = self.regions().into_iter().collect();
        let reg2: Vec<String> = other.regions().into_iter().collect();
        let nr = reg1.len() + reg2.len();
        let ridx1 = |r: &str| reg1.binary_search(&r.to_string()).unwrap();
        let ridx2 = |r: &str| reg1.len() + reg2.binary_search(&r.to_string()).unwrap();
        let mut ruf = UnionFind::new(nr);
        let o = |t: usize| &self.open[(i + t) % m1];
        let p = |t: usize| &other.open[(j + t) % m2];
        for t in 1..k {
            ruf.union(ridx1(o(t)), ridx2(p(k - t)));
        }
        ruf.union(ridx1(o(0)), ridx2(p(k)));
        ruf.union(ridx1(o(k)), ridx2(p(0)));
        let mut used: BTreeSet<String> = reg1.iter().cloned().collect();
        let mut rname = vec![String::new(); nr];
        for x in 0..nr {
            if ruf.find(x) == x {
                rname[x] = if x < reg1.len() {
                    reg1[x].clone()
                } else if used.contains(&reg2[x - reg1.len()]) {
                    let f = fresh_label(&used, "r");
                    used.insert(f.clone());
                    f
                } else {
                    used.insert(reg2[x - reg1.len()].clone());
                    reg2[x - reg1.len()].clone()
                };
            }
        }
        for x in 0..nr {
            let r = ruf.find(x);
            rname[x] = rname[r].clone();
        }
        let mut open = Vec::new();
        for t in k..=m1 {
            open.push(rname[ridx1(o(t))].clone());
        }
        for t in k + 1..m2 {
            open.push(rname[ridx2(p(t))].clone());
        }
        let mut seen = BTreeSet::new();
        open.retain(|r| seen.insert(r.clone()));
        let mut crossings = Vec::new();
        for c in &self.crossings {
            crossings.push(Crossing {
                quadrants: c.quadrants.clone().map(|q| rname[ridx1(&q)].clone()),
                sign: c.sign,
                over: cname[cidx1(&c.over)].clone(),
                under: cname[cidx1(&c.under)].clone(),
            });
        }
        for c in &other.crossings {
            crossings.push(Crossing {
                quadrants: c.quadrants.clone().map(|q| rname[ridx2(&q)].clone()),
                sign: c.sign,
                over: cname[cidx2(&c.over)].clone(),
                under: cname[cidx2(&c.under)].clone(),
            });
        }
        Ok(TangleDiagram { open, crossings })
    }

    /// Oriented resolution of crossing `c`: the regions above and below merge.
    pub fn smooth(&self, c: usize) -> Result<TangleDiagram> {
        let x = &self.crossings[c];
        let (top, bottom) = (x.quadrants[0].clone(), x.quadrants[2].clone());
        if top == bottom {
            return Err(DiagramError::Invalid("smoothing would split the diagram".into()));
        }
        let (keep, gone) = match (self.is_open(&top), self.is_open(&bottom)) {
            (true, true) => {
                return Err(DiagramError::Invalid("smoothing would merge two open regions".into()))
            }
            (false, true) => (bottom, top),
            _ => (top, bottom),
        };
        let (ca, cb) = (x.colour_a().to_string(), x.colour_b().to_string());
        let mut out = self.clone();
        out.crossings.remove(c);
        Ok(out
            .rename_regions(|r| if r == gone { keep.clone() } else { r.to_string() })
            .rename_colours(|k| if k == cb { ca.clone() } else { k.to_string() }))
    }

    /// Map from colour to the number of strands of that colour.
    pub fn strand_counts(&self) -> Result<BTreeMap<String, usize>> {
        let mut m = BTreeMap::new();
        for c in self.structure()?.components {
            *m.entry(c.colour).or_insert(0) += 1;
        }
        Ok(m)
    }
}
