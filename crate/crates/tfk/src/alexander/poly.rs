//! Sparse Laurent polynomials in colour variables, `h` and `δ`.
//!
//! Exponents of `δ` are stored doubled so every stored exponent is an integer.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector of a single term.
///
/// The derived order is the canonical one: colour exponents lexicographically
/// (in the order of the owning polynomial's variable list), then `h`, then `δ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub colours: Vec<i32>,
    pub h: i32,
    pub delta2: i32,
}

/// Exact multivariate Laurent polynomial with integer coefficients.
#[derive(Clone, Debug, Default)]
pub struct GradedPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, i64>,
}

impl GradedPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(&[], 0, 0, 1)
    }

    /// Single term `coef · Π colour^e · h^h · δ^{delta2/2}`.
    pub fn monomial(colours: &[(&str, i32)], h: i32, delta2: i32, coef: i64) -> Self {
        let mut vars: Vec<String> = colours.iter().map(|(c, _)| c.to_string()).collect();
        vars.sort();
        vars.dedup();
        let mut exps = vec![0; vars.len()];
        for (c, e) in colours {
            let i = vars.iter().position(|v| v == c).unwrap();
            exps[i] += e;
        }
        let mut p = GradedPoly { vars, terms: BTreeMap::new() };
        p.add_term(Monomial { colours: exps, h, delta2 }, coef);
        p.trim()
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(&[(name, 1)], 0, 0, 1)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    /// Exponent of colour `name` in `m`, zero if the colour is not a variable.
    pub fn exponent(&self, m: &Monomial, name: &str) -> i32 {
        self.vars.iter().position(|v| v == name).map_or(0, |i| m.colours[i])
    }

    fn add_term(&mut self, m: Monomial, coef: i64) {
        if coef == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coef);
            }
        }
    }

    fn with_vars(&self, vars: &[String]) -> GradedPoly {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("variable missing"))
            .collect();
        let mut out = GradedPoly { vars: vars.to_vec(), terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (i, &j) in idx.iter().enumerate() {
                e[j] = m.colours[i];
            }
            out.add_term(Monomial { colours: e, h: m.h, delta2: m.delta2 }, *c);
        }
        out
    }

    fn union_vars(&self, other: &GradedPoly) -> Vec<String> {
        let mut v: Vec<String> = self.vars.iter().chain(other.vars.iter()).cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    /// Drops variables that occur with exponent zero in every term.
    pub fn trim(self) -> GradedPoly {
        let keep: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|m| m.colours[*i] != 0))
            .map(|(_, v)| v.clone())
            .collect();
        if keep.len() == self.vars.len() {
            return self;
        }
        let idx: Vec<usize> = keep
            .iter()
            .map(|v| self.vars.iter().position(|w| w == v).unwrap())
            .collect();
        let mut out = GradedPoly { vars: keep, terms: BTreeMap::new() };
        for (m, c) in self.terms {
            let e = idx.iter().map(|&i| m.colours[i]).collect();
            out.add_term(Monomial { colours: e, h: m.h, delta2: m.delta2 }, c);
        }
        out
    }

    pub fn add(&self, other: &GradedPoly) -> GradedPoly {
        let vars = self.union_vars(other);
        let mut out = self.with_vars(&vars);
        for (m, c) in other.with_vars(&vars).terms {
            out.add_term(m, c);
        }
        out.trim()
    }

    pub fn neg(&self) -> GradedPoly {
        self.scale(-1)
    }

    pub fn sub(&self, other: &GradedPoly) -> GradedPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> GradedPoly {
        let mut out = GradedPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &GradedPoly) -> GradedPoly {
        let vars = self.union_vars(other);
        let a = self.with_vars(&vars);
        let b = other.with_vars(&vars);
        let mut out = GradedPoly { vars: vars.clone(), terms: BTreeMap::new() };
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let e = ma.colours.iter().zip(&mb.colours).map(|(x, y)| x + y).collect();
                out.add_term(
                    Monomial { colours: e, h: ma.h + mb.h, delta2: ma.delta2 + mb.delta2 },
                    ca * cb,
                );
            }
        }
        out.trim()
    }

    /// Applies `f` to every term's exponent data, keeping coefficients.
    pub fn map_monomials(&self, mut f: impl FnMut(&[String], &Monomial) -> (Vec<(String, i32)>, i32, i32, i64)) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (m, c) in &self.terms {
            let (cols, h, d, sgn) = f(&self.vars, m);
            let cols: Vec<(&str, i32)> = cols.iter().map(|(n, e)| (n.as_str(), *e)).collect();
            out = out.add(&GradedPoly::monomial(&cols, h, d, c * sgn));
        }
        out
    }

    /// Substitutes `h = -1` and `δ = 1`.
    pub fn forget_h_delta(&self) -> GradedPoly {
        self.map_monomials(|vars, m| {
            let sgn = if m.h.rem_euclid(2) == 0 { 1 } else { -1 };
            (named(vars, m), 0, 0, sgn)
        })
    }

    /// Sets `δ = 1`, keeping `h`.
    pub fn forget_delta(&self) -> GradedPoly {
        self.map_monomials(|vars, m| (named(vars, m), m.h, 0, 1))
    }

    /// Renames colours; colours mapped to the same name are multiplied together.
    pub fn rename_colours(&self, f: impl Fn(&str) -> String) -> GradedPoly {
        self.map_monomials(|vars, m| {
            let cols = named(vars, m).into_iter().map(|(n, e)| (f(&n), e)).collect();
            (cols, m.h, m.delta2, 1)
        })
    }

    /// Negates every colour, `h` and `δ` exponent.
    pub fn invert_all(&self) -> GradedPoly {
        self.map_monomials(|vars, m| {
            let cols = named(vars, m).into_iter().map(|(n, e)| (n, -e)).collect();
            (cols, -m.h, -m.delta2, 1)
        })
    }

    /// Evaluates colour `name` at `value`, which must be `1` or `-1`.
    pub fn eval_colour_sign(&self, name: &str, value: i32) -> GradedPoly {
        assert!(value == 1 || value == -1);
        self.map_monomials(|vars, m| {
            let mut sgn = 1;
            let cols = named(vars, m)
                .into_iter()
                .filter(|(n, e)| {
                    if n == name {
                        if value == -1 && e.rem_euclid(2) == 1 {
                            sgn = -1;
                        }
                        false
                    } else {
                        true
                    }
                })
                .collect();
            (cols, m.h, m.delta2, sgn)
        })
    }

    /// Evaluates colour `name` at the imaginary unit; `None` if an odd exponent occurs.
    pub fn eval_colour_i(&self, name: &str) -> Option<GradedPoly> {
        let mut ok = true;
        let p = self.map_monomials(|vars, m| {
            let mut sgn = 1;
            let cols = named(vars, m)
                .into_iter()
                .filter(|(n, e)| {
                    if n == name {
                        if e.rem_euclid(2) == 1 {
                            ok = false;
                        }
                        if e.rem_euclid(4) == 2 {
                            sgn = -1;
                        }
                        false
                    } else {
                        true
                    }
                })
                .collect();
            (cols, m.h, m.delta2, sgn)
        });
        ok.then_some(p)
    }

    /// Normal form up to multiplication by `±` a monomial: the canonically
    /// smallest term is moved to exponent zero and given a positive coefficient.
    pub fn normalise_unit(&self) -> GradedPoly {
        let Some((lead, c)) = self.terms.iter().next() else {
            return GradedPoly::zero();
        };
        let lead = lead.clone();
        let sgn = c.signum();
        let mut out = GradedPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            let e = m.colours.iter().zip(&lead.colours).map(|(x, y)| x - y).collect();
            out.add_term(Monomial { colours: e, h: m.h - lead.h, delta2: m.delta2 - lead.delta2 }, c * sgn);
        }
        out.trim()
    }

    /// Equality up to `±` a monomial factor.
    pub fn eq_up_to_unit(&self, other: &GradedPoly) -> bool {
        self.normalise_unit() == other.normalise_unit()
    }

    /// Multiplies by `h^dh · δ^{dd/2}`.
    pub fn shift(&self, dh: i32, dd: i32) -> GradedPoly {
        self.map_monomials(|vars, m| (named(vars, m), m.h + dh, m.delta2 + dd, 1))
    }
}

fn named(vars: &[String], m: &Monomial) -> Vec<(String, i32)> {
    vars.iter().cloned().zip(m.colours.iter().copied()).collect()
}

impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        let a = self.clone().trim();
        let b = other.clone().trim();
        a.vars == b.vars && a.terms == b.terms
    }
}

impl Eq for GradedPoly {}

fn fmt_half(e: i32) -> String {
    if e % 2 == 0 {
        format!("{}", e / 2)
    } else {
        format!("{}/2", e)
    }
}

impl GradedPoly {
    fn fmt_term(&self, m: &Monomial, c: i64) -> String {
        let mut parts = vec![c.to_string()];
        for (v, e) in self.vars.iter().zip(&m.colours) {
            if *e != 0 {
                parts.push(format!("{v}^{e}"));
            }
        }
        if m.h != 0 {
            parts.push(format!("h^{}", m.h));
        }
        if m.delta2 != 0 {
            parts.push(format!("δ^{}", fmt_half(m.delta2)));
        }
        parts.join(" * ")
    }
}

impl fmt::Display for GradedPoly {
    /// `coef * colour^e ... * h^e * δ^{e/2}` per term, joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.terms.iter().map(|(m, c)| self.fmt_term(m, *c)).collect();
        write!(f, "{}", s.join(" + "))
    }
}
