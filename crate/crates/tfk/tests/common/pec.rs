//! Checks on peculiar modules and their closures, with diagram-side oracles.

use tfk::alexander::{nabla_all, GradedPoly};
use tfk::diagram::examples::twist_column;
use tfk::diagram::random::one_crossing;
use tfk::diagram::{Sign, TangleDiagram};
use tfk::pairing::{box_tensor, close_tangle, closing_type_a};
use tfk::pecmod::*;

use super::Check;

/// Every builder, by name.
pub fn builders() -> Vec<(String, PecModule)> {
    let mut out = tangle_builders();
    out.push(("figure-eight-upper".to_string(), cftd_figure_eight(true)));
    out.push(("figure-eight-lower".to_string(), cftd_figure_eight(false)));
    out
}

/// Builders of modules of actual tangles.
pub fn tangle_builders() -> Vec<(String, PecModule)> {
    let mut out = vec![
        ("trivial-vertical".to_string(), cftd_trivial(Axis::Vertical)),
        ("trivial-horizontal".to_string(), cftd_trivial(Axis::Horizontal)),
        ("crossing+".to_string(), cftd_crossing(true)),
        ("crossing-".to_string(), cftd_crossing(false)),
        ("pretzel".to_string(), cftd_pretzel_2m3()),
        ("loop-bpdq".to_string(), loop_from_word("bpdq", None, 0, &[]).unwrap()),
    ];
    for n in [-4, -3, -2, -1, 1, 2, 3, 4] {
        out.push((format!("twist{n}"), cftd_twist(n).unwrap()));
    }
    out
}

pub fn check_builders_curved() -> Check {
    let bs = builders();
    for (name, m) in &bs {
        if !m.check_curved() {
            return Err(format!("{name}: {:?}", m.curvature_defects()));
        }
        if !m.grading_defects().is_empty() {
            return Err(format!("{name}: {:?}", m.grading_defects()));
        }
    }
    Ok(bs.len())
}

/// Two copies of the reduced vertical trivial tangle with Alexander shifts `∓2n`.
pub fn trivial_pair(n: i32) -> PecModule {
    let t = cftd_trivial(Axis::Vertical).reduced();
    t.shifted(0, &[("t", -2 * n)])
        .renamed(|x| format!("{x}'"))
        .unwrap()
        .direct_sum(&t.shifted(0, &[("t", 2 * n)]))
        .unwrap()
}

pub fn check_skein_cones(ns: &[i32]) -> Check {
    for &n in ns {
        let (s, t, f) = skein_morphism(n).map_err(|e| e.to_string())?;
        let c = mapping_cone(&s, &t, &f).and_then(|c| c.cancel_all_identities()).map_err(|e| e.to_string())?;
        if !c.check_curved() || !isomorphic(&c, &trivial_pair(n), true) {
            return Err(format!("cone of the skein map for n = {n}:\n{c}"));
        }
    }
    Ok(ns.len())
}

pub fn check_singular_cones() -> Check {
    for upper in [true, false] {
        let (s, t, f) = singular_morphism(upper);
        let c = mapping_cone(&s, &t, &f).and_then(|c| c.cancel_all_identities()).map_err(|e| e.to_string())?;
        if !isomorphic(&c, &cftd_figure_eight(upper).reduced(), true) {
            return Err(format!("singular cone (upper = {upper}):\n{c}"));
        }
    }
    Ok(2)
}

pub fn check_resolution_cone() -> Check {
    let c = resolution_cone_reduced().map_err(|e| e.to_string())?;
    if isomorphic(&c, &cftd_crossing(false).delta_graded_only(), true) {
        Ok(1)
    } else {
        Err(format!("resolution cone:\n{c}"))
    }
}

/// `rk(p₁)=rk(q₂)=rk(p₃)=rk(q₄)` and `rk(q₁)=rk(p₂)=rk(q₃)=rk(p₄)` per δ.
pub fn rank_symmetric(m: &PecModule) -> bool {
    let r = m.rank_profile();
    let deltas: std::collections::BTreeSet<i32> = r.keys().map(|(_, d)| *d).collect();
    let get = |l: &str, d: i32| r.get(&(l.to_string(), d)).copied().unwrap_or(0);
    deltas.iter().all(|&d| {
        let f1 = ["p1", "q2", "p3", "q4"].map(|l| get(l, d));
        let f2 = ["q1", "p2", "q3", "p4"].map(|l| get(l, d));
        f1.iter().all(|&x| x == f1[0]) && f2.iter().all(|&x| x == f2[0])
    })
}

pub fn check_rank_symmetries() -> Check {
    let bs = tangle_builders();
    for (name, m) in &bs {
        let m = m.cancel_all_identities().map_err(|e| e.to_string())?;
        if !rank_symmetric(&m) {
            return Err(format!("{name}: {:?}", m.rank_profile()));
        }
    }
    Ok(bs.len())
}

/// A two-crossing diagram isotopic to the vertical trivial tangle.
pub fn trivial_vertical_diagram() -> TangleDiagram {
    one_crossing(0, Sign::L, false).add_twist("d", Sign::R).unwrap()
}

/// Closures at site `a`: module, diagram, expected total rank.
pub fn closure_cases() -> Vec<(String, PecModule, TangleDiagram, usize)> {
    vec![
        ("trivial".into(), cftd_trivial(Axis::Vertical), trivial_vertical_diagram(), 2),
        ("crossing+".into(), cftd_crossing(true), one_crossing(0, Sign::L, false), 2),
        ("crossing-".into(), cftd_crossing(false), one_crossing(0, Sign::R, false), 2),
        ("twist3".into(), cftd_twist(3).unwrap(), twist_column(3).unwrap(), 6),
        ("twist-3".into(), cftd_twist(-3).unwrap(), twist_column(-3).unwrap(), 6),
    ]
}

fn single(p: &GradedPoly) -> GradedPoly {
    p.rename_colours(|_| "t".into())
}

/// The capped diagram's ∇ times the factor `t² − t⁻²` from closing with the
/// trivial tangle, in one variable.
pub fn closure_oracle(d: &TangleDiagram, site: &str) -> std::result::Result<GradedPoly, String> {
    let capped = d.cap_off(site).map_err(|e| e.to_string())?;
    let n = nabla_all(&capped).map_err(|e| e.to_string())?;
    let n = n.into_values().next().ok_or("capped diagram has no site")?;
    let factor = GradedPoly::monomial(&[("t", 2)], 0, 0, 1).sub(&GradedPoly::monomial(&[("t", -2)], 0, 0, 1));
    Ok(single(&n).mul(&factor))
}

pub fn check_closure_euler(m: &PecModule, d: &TangleDiagram) -> std::result::Result<(), String> {
    let c = box_tensor(&closing_type_a('a').unwrap(), &m.cancel_all_identities().map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let chi = single(&c.euler_characteristic().ok_or("box complex has non-integral h")?);
    let want = closure_oracle(d, "a")?;
    if chi == want || chi == want.neg() {
        Ok(())
    } else {
        Err(format!("χ = {chi}, oracle {want}"))
    }
}

pub fn check_closures() -> Check {
    let cases = closure_cases();
    for (name, m, d, rank) in &cases {
        let r = close_tangle(m, 'a').map_err(|e| format!("{name}: {e}"))?;
        if r.box_total != *rank {
            return Err(format!("{name}: rank {} instead of {rank}", r.box_total));
        }
        check_closure_euler(m, d).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(cases.len())
}
