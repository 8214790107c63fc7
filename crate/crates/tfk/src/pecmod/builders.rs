//! Peculiar modules of small tangles and the skein morphisms between them.

use std::collections::{BTreeMap, VecDeque};

use super::{add_alex, mapping_cone, Generator, ModuleError, PecModule, PecMorphism, Result};
use crate::pecalg::PunctureOrientation;

/// Direction of the strands of a trivial tangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    /// Strands join punctures 1–2 and 3–4.
    Vertical,
    /// Strands join punctures 1–4 and 2–3.
    Horizontal,
}

fn po(p: [(&str, bool); 4]) -> PunctureOrientation {
    PunctureOrientation::new(p).expect("balanced orientation")
}

fn build(orientation: Option<PunctureOrientation>, gens: &[(&str, u8, i32, &[(&str, i32)])], arrows: &[(&str, &str, &str)]) -> PecModule {
    let mut m = PecModule::new(orientation);
    for (x, site, d2, a) in gens {
        m.add_generator(x, Generator::new(*site, *d2, a)).expect("fresh generator");
    }
    for (s, t, l) in arrows {
        m.arrow(s, t, l).expect("well-formed arrow");
    }
    m
}

/// The trivial tangle.
pub fn cftd_trivial(axis: Axis) -> PecModule {
    match axis {
        Axis::Vertical => build(
            Some(po([("p", false), ("p", true), ("q", true), ("q", false)])),
            &[("b", 2, 0, &[]), ("d", 4, 0, &[])],
            &[("d", "b", "p43+q12"), ("b", "d", "p21+q34")],
        ),
        Axis::Horizontal => build(
            Some(po([("p", false), ("q", true), ("q", false), ("p", true)])),
            &[("a", 1, 0, &[]), ("c", 3, 0, &[])],
            &[("a", "c", "p14+q23"), ("c", "a", "p32+q41")],
        ),
    }
}

/// The one-crossing tangle, positive if `positive`.
pub fn cftd_crossing(positive: bool) -> PecModule {
    if positive {
        build(
            Some(po([("q", false), ("p", true), ("q", true), ("p", false)])),
            &[
                ("a", 1, 0, &[("p", 1), ("q", -1)]),
                ("b", 2, 1, &[("p", -1), ("q", -1)]),
                ("c", 3, 0, &[("p", -1), ("q", 1)]),
                ("d", 4, 1, &[("p", 1), ("q", 1)]),
            ],
            &[
                ("d", "a", "p432"),
                ("b", "a", "q341"),
                ("a", "d", "p1"),
                ("c", "d", "q4"),
                ("c", "b", "p3"),
                ("a", "b", "q2"),
                ("b", "c", "p214"),
                ("d", "c", "q123"),
            ],
        )
    } else {
        build(
            Some(po([("p", false), ("q", true), ("p", true), ("q", false)])),
            &[
                ("a", 1, 0, &[("p", 1), ("q", -1)]),
                ("b", 2, -1, &[("p", 1), ("q", 1)]),
                ("c", 3, 0, &[("p", -1), ("q", 1)]),
                ("d", 4, -1, &[("p", -1), ("q", -1)]),
            ],
            &[
                ("d", "a", "q1"),
                ("b", "a", "p2"),
                ("a", "d", "q234"),
                ("c", "d", "p321"),
                ("c", "b", "q412"),
                ("a", "b", "p143"),
                ("b", "c", "q3"),
                ("d", "c", "p4"),
            ],
        )
    }
}

/// Fills in gradings of all generators from those of `anchor`, following arrows.
pub fn propagate_gradings(m: &mut PecModule, anchor: &str, delta2: i32, alex2: &[(&str, i32)]) -> Result<()> {
    let po = m.orientation().cloned();
    let start = Generator::new(m.generator(anchor).ok_or_else(|| ModuleError::UnknownGenerator(anchor.into()))?.site, delta2, alex2);
    let mut known: BTreeMap<String, Generator> = [(anchor.to_string(), start)].into();
    let mut queue: VecDeque<String> = [anchor.to_string()].into();
    let edges: Vec<(String, String, crate::pecalg::BasisPath)> = m
        .arrows()
        .iter()
        .flat_map(|((s, t), l)| l.paths().map(move |b| (s.clone(), t.clone(), *b)))
        .collect();
    while let Some(x) = queue.pop_front() {
        let gx = known[&x].clone();
        for (s, t, b) in &edges {
            let a2: BTreeMap<String, i32> = match &po {
                Some(po) => b.alexander(po).into_iter().map(|(c, v)| (c, 2 * v)).collect(),
                None => BTreeMap::new(),
            };
            let (other, g) = if *s == x {
                (t, Generator { site: m.generator(t).unwrap().site, delta2: gx.delta2 + 2 - b.delta2(), alex2: add_alex(&gx.alex2, &a2, -1) })
            } else if *t == x {
                (s, Generator { site: m.generator(s).unwrap().site, delta2: gx.delta2 + b.delta2() - 2, alex2: add_alex(&gx.alex2, &a2, 1) })
            } else {
                continue;
            };
            match known.get(other) {
                Some(old) if *old != g => {
                    return Err(ModuleError::Grading(format!("inconsistent gradings at {other}")));
                }
                Some(_) => {}
                None => {
                    known.insert(other.clone(), g);
                    queue.push_back(other.clone());
                }
            }
        }
    }
    let names: Vec<String> = m.generators().keys().cloned().collect();
    let mut out = PecModule::new(po);
    for x in names {
        let g = known.remove(&x).ok_or_else(|| ModuleError::Grading(format!("{x} is not connected to {anchor}")))?;
        out.add_generator(&x, g)?;
    }
    for ((s, t), l) in m.arrows() {
        out.add_arrow(s, t, l)?;
    }
    *m = out;
    Ok(())
}

fn chain_name(site: char, k: usize, m: usize) -> String {
    if m == 1 {
        site.to_string()
    } else {
        format!("{site}{k}")
    }
}

/// The twist tangle `T_n`: a vertical column of `|n|` crossings of the sign of `n`.
///
/// The ends `b` and `d` are joined by two alternating chains of generators at
/// sites `a` and `c`, indexed by increasing Alexander grading.
pub fn cftd_twist(n: i32) -> Result<PecModule> {
    if n == 0 {
        return Err(ModuleError::Grading("twist tangles need n ≠ 0".into()));
    }
    let m = n.unsigned_abs() as usize;
    let odd = m % 2 == 1;
    let (first, second) = if n > 0 { ("p", "q") } else { ("q", "p") };
    // colour of the strand entering at puncture 2 and at puncture 3
    let orientation = if odd {
        po([(second, false), (first, true), (second, true), (first, false)])
    } else {
        po([(first, false), (first, true), (second, true), (second, false)])
    };
    let mut md = PecModule::new(Some(orientation));
    md.add_generator("b", Generator::new(2, 0, &[]))?;
    md.add_generator("d", Generator::new(4, 0, &[]))?;
    for k in 0..m {
        md.add_generator(&chain_name('a', k, m), Generator::new(1, 0, &[]))?;
        md.add_generator(&chain_name('c', k, m), Generator::new(3, 0, &[]))?;
    }
    let a = |k: usize| chain_name('a', k, m);
    let c = |k: usize| chain_name('c', k, m);
    // chain from c0 starts with a q-pair, chain from a0 with a p-pair
    for k in 0..m.saturating_sub(1) {
        let (x, y, qpair) = if k % 2 == 0 { (a(k + 1), c(k), true) } else { (a(k), c(k + 1), false) };
        pair(&mut md, &x, &y, qpair)?;
        let (x, y, qpair) = if k % 2 == 0 { (a(k), c(k + 1), false) } else { (a(k + 1), c(k), true) };
        pair(&mut md, &x, &y, qpair)?;
    }
    let (lo_a, lo_c, hi_a, hi_c) = (a(0), c(0), a(m - 1), c(m - 1));
    let mm = m as i32;
    if n > 0 {
        md.arrow(&lo_c, "b", "p3")?;
        md.arrow("b", &lo_c, "p214")?;
        md.arrow(&lo_a, "b", "q2")?;
        md.arrow("b", &lo_a, "q341")?;
        md.arrow(&hi_a, "d", "p1")?;
        md.arrow("d", &hi_a, "p432")?;
        md.arrow(&hi_c, "d", "q4")?;
        md.arrow("d", &hi_c, "q123")?;
        propagate_gradings(&mut md, "b", mm, &[("p", -mm), ("q", -mm)])?;
    } else {
        md.arrow("d", &lo_c, "p4")?;
        md.arrow(&lo_c, "d", "p321")?;
        md.arrow("d", &lo_a, "q1")?;
        md.arrow(&lo_a, "d", "q234")?;
        md.arrow("b", &hi_a, "p2")?;
        md.arrow(&hi_a, "b", "p143")?;
        md.arrow("b", &hi_c, "q3")?;
        md.arrow(&hi_c, "b", "q412")?;
        propagate_gradings(&mut md, "d", -mm, &[("p", -mm), ("q", -mm)])?;
    }
    Ok(md)
}

/// Arrow pair between an `a`-generator `x` and a `c`-generator `y`.
fn pair(m: &mut PecModule, x: &str, y: &str, qpair: bool) -> Result<()> {
    if qpair {
        m.arrow(x, y, "q23")?;
        m.arrow(y, x, "q41")
    } else {
        m.arrow(x, y, "p14")?;
        m.arrow(y, x, "p32")
    }
}

/// Generators of the (2,−3)-pretzel tangle: name, site, 2δ and doubled `(p, q)` gradings.
pub const PRETZEL_GENERATORS: [(&str, u8, i32, i32, i32); 22] = [
    ("a1y1", 1, -3, 0, 6),
    ("a1y2", 1, -3, 0, 2),
    ("a1y3", 1, -3, 0, -2),
    ("a2y1", 1, -3, 0, 2),
    ("a2y2", 1, -3, 0, -2),
    ("a2y3", 1, -3, 0, -6),
    ("by1", 2, -2, -2, 2),
    ("by2", 2, -2, -2, -2),
    ("by3", 2, -2, -2, -6),
    ("x1b'", 2, -4, 2, -6),
    ("x2b'", 2, -4, -2, -6),
    ("x1c1", 3, -3, 2, 4),
    ("x1c2", 3, -3, 2, 0),
    ("x1c3", 3, -3, 2, -4),
    ("x2c1", 3, -3, -2, 4),
    ("x2c2", 3, -3, -2, 0),
    ("x2c3", 3, -3, -2, -4),
    ("dy1", 4, -2, 2, 6),
    ("dy2", 4, -2, 2, 2),
    ("dy3", 4, -2, 2, -2),
    ("x1d'", 4, -4, 2, 6),
    ("x2d'", 4, -4, -2, 6),
];

/// Solid arrows of the (2,−3)-pretzel tangle's module, before cancellation.
pub const PRETZEL_ARROWS: [(&str, &str, &str); 46] = [
    ("x2d'", "x2c1", "p4"),
    ("x2c1", "x2d'", "p321"),
    ("x2d'", "a1y1", "q1"),
    ("a1y1", "x2d'", "q234"),
    ("x2c1", "a1y2", "q41"),
    ("a1y2", "x2c1", "q23"),
    ("by1", "x2c2", "p214"),
    ("x2c2", "by1", "p3"),
    ("by1", "a2y1", "q341"),
    ("a2y1", "by1", "q2"),
    ("x2c2", "a1y3", "q41"),
    ("a1y3", "x2c2", "q23"),
    ("by2", "x2c3", "p214"),
    ("x2c3", "by2", "p3"),
    ("by2", "a2y2", "q341"),
    ("a2y2", "by2", "q2"),
    ("x2c3", "x2b'", "q412"),
    ("x2b'", "x2c3", "q3"),
    ("x2c3", "a2y3", "q41"),
    ("x2b'", "by3", "i2"),
    ("by3", "x2b'", "p2143"),
    ("by3", "a2y3", "q341"),
    ("a2y3", "by3", "q2"),
    ("a1y1", "dy1", "p1"),
    ("dy1", "a1y1", "p432"),
    ("x1c1", "a1y1", "p32"),
    ("a1y2", "dy2", "p1"),
    ("dy2", "a1y2", "p432"),
    ("a2y1", "x1c2", "p14"),
    ("x1c2", "a2y1", "p32"),
    ("a1y3", "dy3", "p1"),
    ("dy3", "a1y3", "p432"),
    ("a2y2", "x1c3", "p14"),
    ("x1c3", "a2y2", "p32"),
    ("a2y3", "x1b'", "p143"),
    ("x1b'", "a2y3", "p2"),
    ("x1d'", "dy1", "i4"),
    ("dy1", "x1d'", "q1234"),
    ("x1d'", "x1c1", "p4"),
    ("x1c1", "x1d'", "p321"),
    ("dy2", "x1c1", "q123"),
    ("x1c1", "dy2", "q4"),
    ("dy3", "x1c2", "q123"),
    ("x1c2", "dy3", "q4"),
    ("x1b'", "x1c3", "q3"),
    ("x1c3", "x1b'", "q412"),
];

/// The (2,−3)-pretzel tangle, with the solid arrows of its computation.
pub fn cftd_pretzel_2m3() -> PecModule {
    let mut m = PecModule::new(Some(po([("p", false), ("p", true), ("q", false), ("q", true)])));
    for (x, site, d2, p, q) in PRETZEL_GENERATORS {
        m.add_generator(x, Generator::new(site, d2, &[("p", p), ("q", q)])).expect("fresh generator");
    }
    for (s, t, l) in PRETZEL_ARROWS {
        m.arrow(s, t, l).expect("well-formed arrow");
    }
    m
}

/// The two four-generator "figure-8" modules.
///
/// `upper` selects the one with generators at sites `a, b, b, c`; the other
/// has `a, d, d, c`.
pub fn cftd_figure_eight(upper: bool) -> PecModule {
    let orientation = Some(po([("t", false), ("t", true), ("t", true), ("t", false)]));
    if upper {
        build(
            orientation,
            &[("a", 1, 0, &[]), ("b+", 2, -1, &[("t", 2)]), ("b-", 2, 1, &[("t", -2)]), ("c", 3, 0, &[])],
            &[
                ("b-", "a", "q341"),
                ("a", "b-", "q2"),
                ("b+", "a", "p2"),
                ("a", "b+", "p143"),
                ("b+", "c", "q3"),
                ("c", "b+", "q412"),
                ("b-", "c", "p214"),
                ("c", "b-", "p3"),
            ],
        )
    } else {
        build(
            orientation,
            &[("a", 1, 0, &[]), ("d+", 4, 1, &[("t", 2)]), ("d-", 4, -1, &[("t", -2)]), ("c", 3, 0, &[])],
            &[
                ("d-", "a", "q1"),
                ("a", "d-", "q234"),
                ("d+", "a", "p432"),
                ("a", "d+", "p1"),
                ("d+", "c", "q123"),
                ("c", "d+", "q4"),
                ("d-", "c", "p4"),
                ("c", "d-", "p321"),
            ],
        )
    }
}

/// The skein map `φ_n: δ^{−n/2} T_n → δ^{n/2} T_{−n}` on single-variate modules,
/// returned with its source and target.
pub fn skein_morphism(n: i32) -> Result<(PecModule, PecModule, PecMorphism)> {
    if n <= 0 {
        return Err(ModuleError::Grading("the skein map needs n > 0".into()));
    }
    let src = cftd_twist(n)?.reduced().shifted(-n, &[]);
    let dst = cftd_twist(-n)?.reduced().shifted(n, &[]);
    let mut f = PecMorphism::zero().with("b", "d", "p21+q34").with("d", "b", "p43+q12");
    for (x, g) in src.generators() {
        if g.site == 1 || g.site == 3 {
            f = f.with(x, x, if g.site == 1 { "i1" } else { "i3" });
        }
    }
    Ok((src, dst, f))
}

/// The maps from the shifted trivial tangle to the positive crossing whose
/// cones are the figure-8 modules; `upper` as in [`cftd_figure_eight`].
pub fn singular_morphism(upper: bool) -> (PecModule, PecModule, PecMorphism) {
    let to = cftd_crossing(true).reduced();
    let t = if upper { 2 } else { -2 };
    let from = cftd_trivial(Axis::Vertical).reduced().shifted(-1, &[("t", t)]);
    let f = if upper {
        PecMorphism::zero().with("d", "d", "i4").with("b", "a", "p2").with("b", "c", "q3")
    } else {
        PecMorphism::zero().with("b", "b", "i2").with("d", "c", "p4").with("d", "a", "q1")
    };
    (from, to, f)
}

/// The map from the vertical to the horizontal trivial tangle whose cone is
/// the negative crossing. The modules are only δ-graded.
pub fn resolution_morphism() -> (PecModule, PecModule, PecMorphism) {
    let from = cftd_trivial(Axis::Vertical).delta_graded_only().shifted(-1, &[]);
    let to = cftd_trivial(Axis::Horizontal).delta_graded_only();
    let f = PecMorphism::zero().with("b", "c", "q3").with("b", "a", "p2").with("d", "a", "q1").with("d", "c", "p4");
    (from, to, f)
}

/// Two homotopies that, applied in order to the reduced resolution cone and
/// each followed by cancelling identity arrows, leave the negative crossing.
pub fn resolution_homotopies() -> [PecMorphism; 2] {
    [
        PecMorphism::zero().with("a.1", "b.0", "q2").with("a.1", "d.0", "p1"),
        PecMorphism::zero().with("c.1", "b.0", "p3").with("c.1", "d.0", "q4"),
    ]
}

/// The cone of [`resolution_morphism`] simplified by [`resolution_homotopies`].
pub fn resolution_cone_reduced() -> Result<PecModule> {
    let (from, to, f) = resolution_morphism();
    let mut m = mapping_cone(&from, &to, &f)?.cancel_all_identities()?;
    for h in resolution_homotopies() {
        m = m.apply_homotopy(&h)?.cancel_all_identities()?;
    }
    Ok(m)
}
