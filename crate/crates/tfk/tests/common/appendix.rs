//! The printed state listing of the appendix example.

use std::collections::BTreeMap;

use tfk::alexander::{generator_table, nabla_hat, GradedPoly};
use tfk::diagram::examples::appendix_example;
use tfk::states::Site;

use super::Check;

/// `(site, coef, p, q, h, 2δ)`
pub const PDH: [(&str, i64, i32, i32, i32, i32); 20] = [
    ("d", 1, -2, -6, -1, -2),
    ("b", 1, 2, -6, 0, -2),
    ("d", 1, 2, -6, 0, -2),
    ("d", 1, -2, -2, 0, -2),
    ("b", 1, 2, -2, 1, -2),
    ("d", 1, -2, 2, 1, -2),
    ("b", 1, 2, 2, 2, -2),
    ("b", 1, -2, 6, 2, -2),
    ("d", 1, -2, 6, 2, -2),
    ("b", 1, 2, 6, 3, -2),
    ("c", 1, -2, 0, 0, -1),
    ("c", 1, 2, 0, 1, -1),
    ("a", 1, 0, -6, -1, -1),
    ("c", 1, -2, -4, -1, -1),
    ("c", 1, 2, -4, 0, -1),
    ("a", 2, 0, -2, 0, -1),
    ("a", 2, 0, 2, 1, -1),
    ("c", 1, -2, 4, 1, -1),
    ("c", 1, 2, 4, 2, -1),
    ("a", 1, 0, 6, 2, -1),
];

/// `(site, state word, p, q, h)`
pub const GH: [(&str, &str, i32, i32, i32); 22] = [
    ("c", "hcgfe", -2, 0, 0),
    ("c", "hcgef", 2, 0, 1),
    ("a", "hgfea", 0, -6, -1),
    ("d", "hgdfe", -2, -6, -1),
    ("d", "hgdef", 2, -6, 0),
    ("b", "hgfeb", 2, -6, 0),
    ("c", "hgcfe", -2, -4, -1),
    ("c", "hgcef", 2, -4, 0),
    ("a", "hfgea", 0, -2, 0),
    ("a", "hgfae", 0, -2, 0),
    ("d", "hgfde", -2, -2, 0),
    ("b", "hfgeb", 2, -2, 1),
    ("a", "fhgea", 0, 2, 1),
    ("a", "hfgae", 0, 2, 1),
    ("d", "hfgde", -2, 2, 1),
    ("b", "fhgeb", 2, 2, 2),
    ("c", "chgfe", -2, 4, 1),
    ("c", "chgef", 2, 4, 2),
    ("a", "fhgae", 0, 6, 2),
    ("b", "bhgfe", -2, 6, 2),
    ("d", "fhgde", -2, 6, 2),
    ("b", "bhgef", 2, 6, 3),
];

pub fn expected_nabla_hat() -> BTreeMap<Site, GradedPoly> {
    let mut want: BTreeMap<Site, GradedPoly> = BTreeMap::new();
    for (s, c, p, q, h, d2) in PDH {
        let e = want.entry(Site::new(&[s])).or_default();
        *e = e.add(&GradedPoly::monomial(&[("p", p), ("q", q)], h, d2, c));
    }
    want
}

pub fn check_nabla_hat() -> Check {
    let got = nabla_hat(&appendix_example()).map_err(|e| e.to_string())?;
    let terms = got.values().map(GradedPoly::len).sum::<usize>();
    if got != expected_nabla_hat() || terms != 20 {
        return Err(format!("got {got:?}"));
    }
    Ok(terms)
}

type Row = (String, String, GradedPoly);

pub fn check_generator_table() -> Check {
    let mut got: Vec<Row> = generator_table(&appendix_example())
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|r| (r.site.word(), r.word, r.label.forget_delta()))
        .collect();
    let mut want: Vec<Row> = GH
        .iter()
        .map(|&(s, w, p, q, h)| (s.to_string(), w.to_string(), GradedPoly::monomial(&[("p", p), ("q", q)], h, 0, 1)))
        .collect();
    let key = |r: &Row| (r.0.clone(), r.1.clone());
    got.sort_by_key(key);
    want.sort_by_key(key);
    if got != want {
        return Err(format!("{} rows differ", got.iter().zip(&want).filter(|(a, b)| a != b).count() + got.len().abs_diff(want.len())));
    }
    Ok(got.len())
}
