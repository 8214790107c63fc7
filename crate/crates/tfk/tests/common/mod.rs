//! Shared test corpus and independent oracles for the ∇ identities.
//!
//! Also compiled into the acceptance target of the CLI crate.

#![allow(dead_code)]

pub mod appendix;
pub mod pec;

use std::collections::{BTreeMap, BTreeSet};

use tfk::alexander::{nabla_all, nabla_hat, nabla_via_determinant, total_linking_doubled, GradedPoly};
use tfk::diagram::examples::{appendix_example, pretzel_2m3, pretzel_tangle, twist_column};
use tfk::diagram::random::{corpus, one_crossing};
use tfk::diagram::{Sign, TangleDiagram};
use tfk::states::Site;

/// Number of instances checked, or the first failure.
pub type Check = Result<usize, String>;

fn parse(s: &str) -> TangleDiagram {
    s.parse().unwrap()
}

/// A ring around the strand of a 2-ended tangle: one open strand `s`, one
/// closed component `k`, two crossings of sign `sign`.
pub fn meridian(sign: Sign) -> TangleDiagram {
    let d = one_crossing(0, sign, false).add_twist("d", sign).unwrap().cap_off("a").unwrap();
    let ring = d.structure().unwrap().closed_components()[0].colour.clone();
    d.rename_colours(|c| if c == ring { "k".into() } else { "s".into() })
}

/// At least twenty fixed diagrams of assorted shapes.
pub fn fixed_corpus() -> Vec<(String, TangleDiagram)> {
    let mut out: Vec<(String, TangleDiagram)> = Vec::new();
    let mut push = |name: &str, d: TangleDiagram| {
        assert!(d.validate().is_empty(), "{name}: {:?}", d.validate());
        out.push((name.to_string(), d));
    };
    push("appendix", appendix_example());
    push("pretzel", pretzel_2m3());
    push("appendix-mirror", appendix_example().mirror());
    push("pretzel-reflect", pretzel_2m3().reflect());
    for (i, (rot, sign, same)) in [(0, Sign::L, false), (1, Sign::R, false), (2, Sign::L, true), (3, Sign::R, true)]
        .into_iter()
        .enumerate()
    {
        push(&format!("one-crossing-{i}"), one_crossing(rot, sign, same));
    }
    push("column-2", twist_column(2).unwrap());
    push("column-3", twist_column(3).unwrap());
    push("column-m4", twist_column(-4).unwrap());
    push("pretzel-3-m2", pretzel_tangle(&[3, -2]).unwrap());
    push("pretzel-2-m3-single", pretzel_tangle(&[2, -3]).unwrap());
    push("pretzel-1-1-1", pretzel_tangle(&[1, 1, 1]).unwrap());
    let trefoil = twist_column(3).unwrap().cap_off("a").unwrap();
    push("trefoil-long", trefoil);
    let hopf = one_crossing(0, Sign::L, false).add_twist("d", Sign::L).unwrap().cap_off("a").unwrap();
    push("hopf-long", hopf);
    let fig8 = twist_column(2).unwrap().add_twist("a", Sign::R).unwrap().add_twist("a", Sign::R).unwrap();
    push("rational-4", fig8.clone());
    if let Ok(c) = fig8.cap_off("d") {
        push("rational-4-capped", c);
    }
    if let Ok(c) = fig8.cap_off("c") {
        push("rational-4-capped-c", c);
    }
    push("meridian-l", meridian(Sign::L));
    push("meridian-r", meridian(Sign::R));
    let t = appendix_example();
    let m = meridian(Sign::L);
    if let Some(g) = (0..4).find_map(|i| t.glue(&m, i, 0, 1).ok()) {
        push("appendix-ring", g);
    }
    push("kt-style", pretzel_tangle(&[3, -2, 2, -3]).unwrap().cap_off("a").unwrap());
    push(
        "appendix-glue-column",
        (0..4).find_map(|i| appendix_example().glue(&twist_column(2).unwrap(), i, 0, 2).ok()).unwrap(),
    );
    out
}

/// The fixed corpus followed by 100 random diagrams with at most 5 crossings.
pub fn full_corpus() -> Vec<(String, TangleDiagram)> {
    let mut v = fixed_corpus();
    v.extend(corpus(2024, 100, 5).into_iter().enumerate().map(|(i, d)| (format!("random-{i}"), d)));
    v
}

fn hat(d: &TangleDiagram) -> BTreeMap<Site, GradedPoly> {
    nabla_hat(d).unwrap()
}

fn plain(d: &TangleDiagram) -> BTreeMap<Site, GradedPoly> {
    nabla_all(d).unwrap()
}

fn fail(what: &str, d: &TangleDiagram, detail: String) -> String {
    format!("{what} fails on {d}: {detail}")
}

/// `∇̂` of the mirror image is `∇̂` with every exponent negated.
pub fn check_mirror(d: &TangleDiagram) -> Check {
    let a = hat(&d.mirror());
    let h = hat(d);
    for (s, p) in &h {
        if a[s] != p.invert_all() {
            return Err(fail("mirror", d, format!("site {s}: {} vs {}", a[s], p.invert_all())));
        }
    }
    Ok(h.len())
}

/// `t ↦ h⁻¹t⁻¹` on one colour, in whole-power units, times `h^{lk}`.
fn reverse_substitution(p: &GradedPoly, colour: &str, lk2: i32) -> GradedPoly {
    p.map_monomials(|vars, m| {
        let e = vars.iter().position(|v| v == colour).map_or(0, |i| m.colours[i]);
        assert_eq!((lk2 - e).rem_euclid(2), 0, "exponent parity {colour} {lk2} {e} {vars:?} {m:?}");
        let cols = vars
            .iter()
            .zip(&m.colours)
            .map(|(v, &x)| (v.clone(), if v == colour { -x } else { x }))
            .collect();
        (cols, m.h + (lk2 - e) / 2, 0, 1)
    })
}

/// Reversing one colour `t`: `∇̂_{r(T,t)} = h^{lk(t)} ∇̂_T(h⁻¹t⁻¹)` with `δ` forgotten.
pub fn check_reverse_one(d: &TangleDiagram) -> Check {
    let cols = d.colours();
    if cols.len() < 2 {
        return Ok(0);
    }
    let mut n = 0;
    for t in &cols {
        let r = d.reverse_strands(&BTreeSet::from([t.clone()])).unwrap();
        let lk2 = total_linking_doubled(d, t).unwrap();
        let got = hat(&r);
        for (s, p) in hat(d) {
            let want = reverse_substitution(&p.forget_delta(), t, lk2);
            if got[&s].forget_delta() != want {
                return Err(fail("reversal of one colour", d, format!("colour {t}, site {s}: {} vs {}", got[&s].forget_delta(), want)));
            }
            n += 1;
        }
    }
    Ok(n)
}

/// Reversing every strand: `∇̂_{r(T)} = ∇̂_T(h⁻¹t⁻¹)` with `δ` forgotten.
pub fn check_reverse_all(d: &TangleDiagram) -> Check {
    let got = hat(&d.reverse_all());
    let h = hat(d);
    for (s, p) in h.clone() {
        let want = p.forget_delta().map_monomials(|vars, m| {
            let sum: i32 = m.colours.iter().sum();
            assert_eq!(sum.rem_euclid(2), 0, "exponent parity");
            (vars.iter().cloned().zip(m.colours.iter().map(|e| -e)).collect(), m.h - sum / 2, 0, 1)
        });
        if got[&s].forget_delta() != want {
            return Err(fail("reversal of all strands", d, format!("site {s}: {} vs {want}", got[&s].forget_delta())));
        }
    }
    Ok(h.len())
}

/// Skein relation at every smoothable crossing of a one-coloured diagram.
pub fn check_skein(d: &TangleDiagram) -> Check {
    let one = d.rename_colours(|_| "t".into());
    let factor = GradedPoly::monomial(&[("t", 2)], 0, 0, 1).sub(&GradedPoly::monomial(&[("t", -2)], 0, 0, 1));
    let mut n = 0;
    for c in 0..one.crossings().len() {
        let Ok(zero) = one.smooth(c) else { continue };
        n += 1;
        let other = one.switch_crossing(c);
        let (pos, neg) = if one.crossings()[c].sign.is_positive() { (&one, &other) } else { (&other, &one) };
        let (p, n, z) = (plain(pos), plain(neg), plain(&zero));
        for (s, x) in &p {
            let lhs = x.sub(&n[s]);
            let rhs = factor.mul(z.get(s).unwrap_or(&GradedPoly::zero()));
            if lhs != rhs {
                return Err(fail("skein", d, format!("crossing {c}, site {s}: {lhs} vs {rhs}")));
            }
        }
    }
    Ok(n)
}

/// For a 2-ended knot, `∇(±1) = 1`, i.e. `N(1) = N(i) = 1`.
pub fn check_knot_normalisation(d: &TangleDiagram) -> Check {
    let st = d.structure().unwrap();
    if d.n() != 1 || st.components.len() != 1 {
        return Ok(0);
    }
    let one = d.rename_colours(|_| "t".into());
    let p = &plain(&one)[&Site::new::<&str>(&[])];
    let at1 = p.eval_colour_sign("t", 1);
    let ati = p.eval_colour_i("t").ok_or_else(|| fail("knot normalisation", d, "odd exponent".into()))?;
    if at1 != GradedPoly::one() || ati != GradedPoly::one() {
        return Err(fail("knot normalisation", d, format!("N(1) = {at1}, N(i) = {ati}")));
    }
    Ok(1)
}

/// Within a site, the exponents of any one colour agree mod 4 (mod 2 in halved units).
pub fn check_exponent_parity(d: &TangleDiagram) -> Check {
    let all = plain(d);
    for (s, p) in &all {
        for c in p.vars() {
            let es: BTreeSet<i32> = p.terms().map(|(m, _)| p.exponent(m, c).rem_euclid(4)).collect();
            if es.len() > 1 {
                return Err(fail("exponent parity", d, format!("site {s}, colour {c}: residues {es:?}")));
            }
        }
    }
    Ok(all.len())
}

/// Maps regions and colours of a piece to those of a diagram that contains
/// its crossings, in order, starting at `offset`.
fn embedding(piece: &TangleDiagram, whole: &TangleDiagram, offset: usize) -> (BTreeMap<String, String>, BTreeMap<String, String>) {
    let mut regions = BTreeMap::new();
    let mut colours = BTreeMap::new();
    for (c, x) in piece.crossings().iter().enumerate() {
        let y = &whole.crossings()[offset + c];
        assert_eq!(x.sign, y.sign);
        for k in 0..4 {
            regions.insert(x.quadrants[k].clone(), y.quadrants[k].clone());
        }
        colours.insert(x.over.clone(), y.over.clone());
        colours.insert(x.under.clone(), y.under.clone());
    }
    (regions, colours)
}

fn site_union(parts: &[(&Site, &BTreeMap<String, String>)], open: &BTreeSet<&String>) -> Option<Site> {
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for (s, map) in parts {
        for r in &s.0 {
            *seen.entry(map[r].clone()).or_default() += 1;
        }
    }
    if seen.values().any(|&n| n > 1) {
        return None;
    }
    Some(Site::new(&seen.keys().filter(|r| open.contains(r)).collect::<Vec<_>>()))
}

/// State-sum glueing formula for `glue(d1, d2, i, j, k)`: sites of the two
/// pieces combine when every newly closed region is occupied exactly once and
/// no merged open region twice.
pub fn check_glue(d1: &TangleDiagram, d2: &TangleDiagram, g: &TangleDiagram) -> Check {
    let (r1, c1) = embedding(d1, g, 0);
    let (r2, c2) = embedding(d2, g, d1.crossings().len());
    let open: BTreeSet<&String> = g.open_regions().iter().collect();
    let newly_closed: BTreeSet<String> = d1
        .open_regions()
        .iter()
        .map(|r| r1[r].clone())
        .chain(d2.open_regions().iter().map(|r| r2[r].clone()))
        .filter(|r| !open.contains(r))
        .collect();
    let (h1, h2) = (hat(d1), hat(d2));
    let mut want: BTreeMap<Site, GradedPoly> = BTreeMap::new();
    for (s1, p1) in &h1 {
        for (s2, p2) in &h2 {
            let Some(s) = site_union(&[(s1, &r1), (s2, &r2)], &open) else { continue };
            let covered: BTreeSet<String> = s1.0.iter().map(|r| r1[r].clone()).chain(s2.0.iter().map(|r| r2[r].clone())).collect();
            if !newly_closed.is_subset(&covered) {
                continue;
            }
            let q = p1.rename_colours(|c| c1[c].clone()).mul(&p2.rename_colours(|c| c2[c].clone()));
            let e = want.entry(s).or_default();
            *e = e.add(&q);
        }
    }
    let got = hat(g);
    for (s, p) in &got {
        let w = want.get(s).cloned().unwrap_or_default();
        if *p != w {
            return Err(format!("glueing formula fails on {g} at site {s}: {p} vs {w}"));
        }
    }
    if let Some((s, _)) = want.iter().find(|(s, p)| !got.contains_key(*s) && !p.is_zero()) {
        return Err(format!("glueing formula predicts unknown site {s} on {g}"));
    }
    Ok(1)
}

/// Capping at open region `r`: sum over sites containing `r` and not both neighbours.
pub fn check_cap(d: &TangleDiagram, r: &str, capped: &TangleDiagram) -> Check {
    let (regions, colours) = embedding(d, capped, 0);
    let open: BTreeSet<&String> = capped.open_regions().iter().collect();
    let mut want: BTreeMap<Site, GradedPoly> = BTreeMap::new();
    for (s, p) in hat(d) {
        if !s.contains(r) {
            continue;
        }
        let Some(t) = site_union(&[(&s, &regions)], &open) else { continue };
        let e = want.entry(t).or_default();
        *e = e.add(&p.rename_colours(|c| colours[c].clone()));
    }
    for (s, p) in hat(capped) {
        let w = want.get(&s).cloned().unwrap_or_default();
        if p != w {
            return Err(format!("cap formula fails on {d} at {r}, site {s}: {p} vs {w}"));
        }
    }
    Ok(1)
}

/// Glue and cap formulas at every compatible position of a few partners.
pub fn check_glueing(d: &TangleDiagram) -> Check {
    let mut n = 0;
    for r in d.open_regions() {
        if let Ok(c) = d.cap_off(r) {
            n += check_cap(d, r, &c)?;
        }
    }
    if d.n() != 2 || d.crossings().len() > 6 {
        return Ok(n);
    }
    let partners = [one_crossing(0, Sign::L, false), one_crossing(1, Sign::R, true), twist_column(2).unwrap()];
    let m = d.open_regions().len();
    for e in &partners {
        for k in 1..=2 {
            for i in 0..m {
                for j in 0..4 {
                    if let Ok(g) = d.glue(e, i, j, k) {
                        n += check_glue(d, e, &g)?;
                    }
                }
            }
        }
    }
    Ok(n)
}

/// For a 4-ended tangle, the site at the region between two outgoing ends
/// moved two places on equals the same region's site after reversing all strands.
pub fn check_four_ended(d: &TangleDiagram) -> Check {
    if d.n() != 2 {
        return Ok(0);
    }
    let b = d.boundary().unwrap();
    let open = d.open_regions();
    let out: Vec<bool> = b.iter().map(|p| p.out).collect();
    // endpoint e_i sits between open[i] and open[i+1]
    let Some(j) = (0..4).find(|&j| out[(j + 3) % 4] && out[j]) else { return Ok(0) };
    let (t, r) = (plain(d), plain(&d.reverse_all()));
    let lhs = &t[&Site::new(&[open[(j + 2) % 4].as_str()])];
    let rhs = &r[&Site::new(&[open[j].as_str()])];
    if lhs != rhs {
        return Err(fail("four-ended site relation", d, format!("{lhs} vs {rhs}")));
    }
    Ok(1)
}

/// A cancelling pair of twists leaves `∇` unchanged.
pub fn check_reidemeister_two(d: &TangleDiagram) -> Check {
    let base = plain(d);
    let mut n = 0;
    for r in d.open_regions() {
        for s in [Sign::L, Sign::R] {
            let Ok(a) = d.add_twist(r, s) else { continue };
            let b = a.add_twist(r, s.flip()).map_err(|e| fail("cancelling twists", d, e.to_string()))?;
            if plain(&b) != base {
                return Err(fail("cancelling twists", d, format!("region {r}, first sign {s}")));
            }
            n += 1;
        }
    }
    Ok(n)
}

/// Closed-component factorisation: ringing the strand at end `e_i` by a
/// meridian `k` multiplies `∇` by `(t_s^{lk} − t_s^{−lk})` at `k = 1`.
pub fn check_closed_component(d: &TangleDiagram) -> Check {
    if d.crossings().len() > 6 {
        return Ok(0);
    }
    let base = plain(d);
    let mut n = 0;
    for sign in [Sign::L, Sign::R] {
        let m = meridian(sign).rename_colours(|c| if c == "k" { "ring".into() } else { c.into() });
        for i in 0..d.open_regions().len() {
            for j in 0..2 {
                let Ok(g) = d.glue(&m, i, j, 1) else { continue };
                let (regions, colours) = embedding(d, &g, 0);
                let ring = g.colours().into_iter().find(|c| !colours.values().any(|v| v == c)).unwrap();
                let host = g
                    .crossings()
                    .iter()
                    .skip(d.crossings().len())
                    .flat_map(|x| [x.over.clone(), x.under.clone()])
                    .find(|c| *c != ring)
                    .unwrap();
                let lk2 = tfk::alexander::linking_number_doubled(&g, &ring, &host).unwrap();
                assert_eq!(lk2.abs(), 2);
                let lk = lk2 / 2;
                let f = GradedPoly::monomial(&[(host.as_str(), 2 * lk)], 0, 0, 1)
                    .sub(&GradedPoly::monomial(&[(host.as_str(), -2 * lk)], 0, 0, 1));
                let got = plain(&g);
                for (s, p) in &base {
                    let mapped = Site::new(&s.0.iter().map(|r| regions[r].clone()).collect::<Vec<_>>());
                    let q = &got[&mapped];
                    let want1 = f.mul(&p.rename_colours(|c| colours[c].clone()));
                    let at1 = q.eval_colour_sign(&ring, 1);
                    let want_m1 = want1.scale(if (lk + 1).rem_euclid(2) == 0 { 1 } else { -1 });
                    let ati = q.eval_colour_i(&ring).ok_or_else(|| fail("closed component", &g, "odd ring exponent".into()))?;
                    if at1 != want1 || ati != want_m1 {
                        return Err(fail("closed component", &g, format!("site {mapped}: N(1) = {at1}, N(i) = {ati}, expected {want1} and {want_m1}")));
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

/// Determinant oracle up to `±` a monomial at every site.
pub fn check_determinant(d: &TangleDiagram) -> Check {
    for (s, p) in plain(d) {
        let q = nabla_via_determinant(d, &s).map_err(|e| fail("determinant", d, e.to_string()))?;
        if !p.eq_up_to_unit(&q) {
            return Err(fail("determinant", d, format!("site {s}: {p} vs {q}")));
        }
    }
    Ok(1)
}

pub const IDENTITIES: [(&str, fn(&TangleDiagram) -> Check); 10] = [
    ("mirror", check_mirror),
    ("reverse-one", check_reverse_one),
    ("reverse-all", check_reverse_all),
    ("skein", check_skein),
    ("knot-normalisation", check_knot_normalisation),
    ("exponent-parity", check_exponent_parity),
    ("glueing", check_glueing),
    ("four-ended", check_four_ended),
    ("cancelling-twists", check_reidemeister_two),
    ("closed-component", check_closed_component),
];

/// Generators of the pretzel table in halved units: `(site, name, p, q, 2δ)`.
/// The `dy1` row carries the corrected exponents `p^1 q^3`.
pub const PRETZEL_TABLE: [(&str, &str, i32, i32, i32); 22] = [
    ("a", "a1y1", 0, 3, -1),
    ("a", "a1y2", 0, 1, -1),
    ("a", "a1y3", 0, -1, -1),
    ("a", "a2y1", 0, 1, -1),
    ("a", "a2y2", 0, -1, -1),
    ("a", "a2y3", 0, -3, -1),
    ("b", "by1", -1, 1, 0),
    ("b", "by2", -1, -1, 0),
    ("b", "by3", -1, -3, 0),
    ("b", "x1b'", 1, -3, -2),
    ("b", "x2b'", -1, -3, -2),
    ("c", "x1c1", 1, 2, -1),
    ("c", "x1c2", 1, 0, -1),
    ("c", "x1c3", 1, -2, -1),
    ("c", "x2c1", -1, 2, -1),
    ("c", "x2c2", -1, 0, -1),
    ("c", "x2c3", -1, -2, -1),
    ("d", "dy1", 1, 3, 0),
    ("d", "dy2", 1, 1, 0),
    ("d", "dy3", 1, -1, 0),
    ("d", "x1d'", 1, 3, -2),
    ("d", "x2d'", -1, 3, -2),
];

/// Per-site multisets of `(p, q, 2δ)` in halved colour units.
pub fn grading_multiset(d: &TangleDiagram) -> BTreeMap<String, Vec<(i32, i32, i32)>> {
    let mut out: BTreeMap<String, Vec<(i32, i32, i32)>> = BTreeMap::new();
    for r in tfk::alexander::generator_table(d).unwrap() {
        let (m, _) = r.label.terms().next().unwrap();
        let (p, q) = (r.label.exponent(m, "p"), r.label.exponent(m, "q"));
        assert!(p % 2 == 0 && q % 2 == 0);
        out.entry(r.site.word()).or_default().push((p / 2, q / 2, m.delta2));
    }
    for v in out.values_mut() {
        v.sort();
    }
    out
}

pub fn pretzel_table_multiset() -> BTreeMap<String, Vec<(i32, i32, i32)>> {
    let mut out: BTreeMap<String, Vec<(i32, i32, i32)>> = BTreeMap::new();
    for (s, _, p, q, d2) in PRETZEL_TABLE {
        out.entry(s.to_string()).or_default().push((p, q, d2));
    }
    for v in out.values_mut() {
        v.sort();
    }
    out
}

/// `∇` keyed by the positions of the site's regions in the open list.
pub fn nabla_by_position(d: &TangleDiagram) -> BTreeMap<Vec<usize>, GradedPoly> {
    plain(d)
        .into_iter()
        .map(|(s, p)| {
            let mut k: Vec<usize> = s.0.iter().map(|r| d.open_regions().iter().position(|o| o == r).unwrap()).collect();
            k.sort();
            (k, p)
        })
        .collect()
}

/// Glues `t` into all four ends next to position `i` of a 6-ended context,
/// and does the same with `t` turned through a half rotation.
pub fn mutant_pair(context: &TangleDiagram, t: &TangleDiagram) -> Option<(TangleDiagram, TangleDiagram)> {
    let r = t.rotate(2);
    (0..context.open_regions().len()).find_map(|i| {
        let a = context.glue(t, i, 0, 4).ok()?;
        let b = context.glue(&r, i, 0, 4).or_else(|_| context.glue(&r.reverse_all(), i, 0, 4)).ok()?;
        Some((a, b))
    })
}

/// At least five mutant pairs: pretzel reorderings capped to knots, and
/// random one-coloured 4-ended tangles inside random 6-ended contexts.
pub fn mutant_pairs() -> Vec<(String, TangleDiagram, TangleDiagram)> {
    use rand::SeedableRng;
    let mut out = Vec::new();
    for (a, b) in [
        (vec![3, -2, 2, -3], vec![3, -2, -3, 2]),
        (vec![1, 2, -3], vec![1, -3, 2]),
        (vec![-1, 1, 2, -3], vec![-1, 1, -3, 2]),
    ] {
        let x = pretzel_tangle(&a).unwrap().cap_off("a").unwrap();
        let y = pretzel_tangle(&b).unwrap().cap_off("a").unwrap();
        out.push((format!("pretzel {a:?} / {b:?}"), x, y));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    let mut k = 0;
    while k < 4 {
        let c1 = tfk::diagram::random::random_four_ended(&mut rng, 3);
        let c2 = tfk::diagram::random::random_four_ended(&mut rng, 3);
        let Ok(c) = c1.glue(&c2, 0, 0, 1) else { continue };
        let t = tfk::diagram::random::random_four_ended(&mut rng, 3).rename_colours(|_| "m".into());
        if let Some((a, b)) = mutant_pair(&c, &t) {
            out.push((format!("random {k}"), a, b));
            k += 1;
        }
    }
    out
}
