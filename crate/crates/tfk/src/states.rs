//! Generalised Kauffman states, transposition moves and the clock lattice.
//!
//! A state places one marker at each crossing, in one of its four quadrants,
//! so that every closed region carries exactly one marker and every open
//! region at most one. The occupied open regions form the state's site.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::diagram::TangleDiagram;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StatesError {
    #[error("more than {0} Kauffman states")]
    TooMany(usize),
    #[error("site {0} has no Kauffman states")]
    EmptySite(String),
}

/// A sorted set of open regions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Site(pub Vec<String>);

impl Site {
    pub fn new<S: AsRef<str>>(regions: &[S]) -> Site {
        let mut v: Vec<String> = regions.iter().map(|r| r.as_ref().to_string()).collect();
        v.sort();
        Site(v)
    }

    /// Labels concatenated in sorted order.
    pub fn word(&self) -> String {
        self.0.concat()
    }

    pub fn contains(&self, r: &str) -> bool {
        self.0.iter().any(|x| x == r)
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&self.word())
        }
    }
}

/// Marker positions, one quadrant index (0 = quadrant 1) per crossing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KauffmanState {
    pub markers: Vec<u8>,
}

impl KauffmanState {
    pub fn region<'a>(&self, d: &'a TangleDiagram, c: usize) -> &'a str {
        &d.crossings()[c].quadrants[self.markers[c] as usize]
    }

    pub fn site(&self, d: &TangleDiagram) -> Site {
        let v: Vec<&str> = (0..self.markers.len())
            .map(|c| self.region(d, c))
            .filter(|r| d.is_open(r))
            .collect();
        Site::new(&v)
    }

    /// Occupied regions in crossing order, concatenated.
    pub fn word(&self, d: &TangleDiagram) -> String {
        (0..self.markers.len()).map(|c| self.region(d, c)).collect()
    }

    pub fn is_valid(&self, d: &TangleDiagram) -> bool {
        let mut seen = BTreeSet::new();
        for c in 0..self.markers.len() {
            if !seen.insert(self.region(d, c)) {
                return false;
            }
        }
        d.closed_regions().iter().all(|r| seen.contains(r.as_str()))
    }
}

pub const DEFAULT_MAX_STATES: usize = 10_000_000;

/// All states grouped by site; only nonempty sites appear.
pub fn enumerate_states(d: &TangleDiagram) -> BTreeMap<Site, Vec<KauffmanState>> {
    enumerate_states_limited(d, usize::MAX).unwrap()
}

pub fn enumerate_states_limited(
    d: &TangleDiagram,
    max: usize,
) -> Result<BTreeMap<Site, Vec<KauffmanState>>, StatesError> {
    let regions: Vec<String> = d.regions().into_iter().collect();
    let rid = |r: &str| regions.binary_search(&r.to_string()).unwrap();
    let quads: Vec<[usize; 4]> = d
        .crossings()
        .iter()
        .map(|c| c.quadrants.clone().map(|q| rid(&q)))
        .collect();
    let closed: Vec<bool> = regions.iter().map(|r| !d.is_open(r)).collect();
    let mut search = Search {
        quads: &quads,
        closed: &closed,
        used: vec![false; regions.len()],
        markers: vec![u8::MAX; quads.len()],
        out: Vec::new(),
        max,
    };
    search.run(quads.len())?;
    let mut map: BTreeMap<Site, Vec<KauffmanState>> = BTreeMap::new();
    for m in search.out {
        let s = KauffmanState { markers: m };
        map.entry(s.site(d)).or_default().push(s);
    }
    for v in map.values_mut() {
        v.sort();
    }
    Ok(map)
}

struct Search<'a> {
    quads: &'a [[usize; 4]],
    closed: &'a [bool],
    used: Vec<bool>,
    markers: Vec<u8>,
    out: Vec<Vec<u8>>,
    max: usize,
}

impl Search<'_> {
    fn run(&mut self, left: usize) -> Result<(), StatesError> {
        if left == 0 {
            if self.closed.iter().zip(&self.used).any(|(&c, &u)| c && !u) {
                return Ok(());
            }
            if self.out.len() >= self.max {
                return Err(StatesError::TooMany(self.max));
            }
            self.out.push(self.markers.clone());
            return Ok(());
        }
        // Every unused closed region needs a free crossing next to it.
        let mut need = 0;
        for (r, &cl) in self.closed.iter().enumerate() {
            if cl && !self.used[r] {
                need += 1;
                let reachable = self
                    .quads
                    .iter()
                    .enumerate()
                    .any(|(c, q)| self.markers[c] == u8::MAX && q.contains(&r));
                if !reachable {
                    return Ok(());
                }
            }
        }
        if need > left {
            return Ok(());
        }
        let mut best: Option<(usize, usize)> = None;
        for c in 0..self.quads.len() {
            if self.markers[c] != u8::MAX {
                continue;
            }
            let free = self.quads[c].iter().filter(|&&r| !self.used[r]).count();
            if best.is_none_or(|(_, f)| free < f) {
                best = Some((c, free));
            }
        }
        let (c, free) = best.unwrap();
        if free == 0 {
            return Ok(());
        }
        for k in 0..4 {
            let r = self.quads[c][k];
            if self.used[r] {
                continue;
            }
            self.used[r] = true;
            self.markers[c] = k as u8;
            self.run(left - 1)?;
            self.markers[c] = u8::MAX;
            self.used[r] = false;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Clockwise,
    Anticlockwise,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranspositionMove {
    pub crossings: (usize, usize),
    /// Regions occupied by the markers of the two crossings before the move.
    pub regions: (String, String),
    pub direction: Direction,
}

impl TranspositionMove {
    pub fn apply(&self, x: &KauffmanState) -> KauffmanState {
        let step: i32 = match self.direction {
            Direction::Clockwise => 3,
            Direction::Anticlockwise => 1,
        };
        let mut m = x.markers.clone();
        for c in [self.crossings.0, self.crossings.1] {
            m[c] = ((m[c] as i32 + step) % 4) as u8;
        }
        KauffmanState { markers: m }
    }
}

/// Moves available from `x`, plus candidates that were seen but rejected.
#[derive(Clone, Debug, Default)]
pub struct MoveScan {
    pub moves: Vec<TranspositionMove>,
    pub rejected: Vec<String>,
}

pub fn transposition_moves(d: &TangleDiagram, x: &KauffmanState) -> Vec<TranspositionMove> {
    scan_moves(d, x).moves
}

pub fn scan_moves(d: &TangleDiagram, x: &KauffmanState) -> MoveScan {
    let cs = d.crossings();
    let mut scan = MoveScan::default();
    for a in 0..cs.len() {
        for b in a + 1..cs.len() {
            let (ka, kb) = (x.markers[a] as usize, x.markers[b] as usize);
            let (qa, qb) = (&cs[a].quadrants, &cs[b].quadrants);
            let (r1, r2) = (&qa[ka], &qb[kb]);
            if r1 == r2 {
                continue;
            }
            let steps = |q: &[String; 4], k: usize, target: &String| -> Vec<usize> {
                [1usize, 3].into_iter().filter(|s| q[(k + s) % 4] == *target).collect()
            };
            let sa = steps(qa, ka, r2);
            let sb = steps(qb, kb, r1);
            for &da in &sa {
                for &db in &sb {
                    if da == db {
                        scan.moves.push(TranspositionMove {
                            crossings: (a, b),
                            regions: (r1.clone(), r2.clone()),
                            direction: if da == 3 { Direction::Clockwise } else { Direction::Anticlockwise },
                        });
                    } else {
                        scan.rejected.push(format!(
                            "crossings {} and {}: markers in {r1}/{r2} turn in opposite directions",
                            a + 1,
                            b + 1
                        ));
                    }
                }
            }
            let opposite_a = qa[(ka + 2) % 4] == *r2 && sa.is_empty();
            let opposite_b = qb[(kb + 2) % 4] == *r1 && sb.is_empty();
            if (opposite_a && (!sb.is_empty() || opposite_b)) || (opposite_b && !sa.is_empty()) {
                scan.rejected.push(format!(
                    "crossings {} and {}: regions {r1}/{r2} meet in opposite quadrants",
                    a + 1,
                    b + 1
                ));
            }
        }
    }
    scan
}

/// The unique state of the site admitting no anticlockwise move.
pub fn clocked_state(d: &TangleDiagram, s: &Site) -> Result<KauffmanState, StatesError> {
    extremal_state(d, s, Direction::Anticlockwise)
}

/// The unique state of the site admitting no clockwise move.
pub fn counterclocked_state(d: &TangleDiagram, s: &Site) -> Result<KauffmanState, StatesError> {
    extremal_state(d, s, Direction::Clockwise)
}

/// Follows moves of direction `dir` until none remain.
fn extremal_state(d: &TangleDiagram, s: &Site, dir: Direction) -> Result<KauffmanState, StatesError> {
    let states = enumerate_states(d);
    let start = states
        .get(s)
        .and_then(|v| v.first())
        .ok_or_else(|| StatesError::EmptySite(s.to_string()))?;
    Ok(climb(d, start.clone(), dir))
}

/// Applies moves of direction `dir` until none is available.
pub fn climb(d: &TangleDiagram, mut x: KauffmanState, dir: Direction) -> KauffmanState {
    loop {
        let Some(m) = transposition_moves(d, &x).into_iter().find(|m| m.direction == dir) else {
            return x;
        };
        x = m.apply(&x);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeReport {
    pub site: Site,
    pub states: usize,
    pub connected: bool,
    pub acyclic: bool,
    /// States with no anticlockwise move.
    pub clocked: Vec<KauffmanState>,
    /// States with no clockwise move.
    pub counterclocked: Vec<KauffmanState>,
    /// Full join/meet check, done for at most 12 states.
    pub lattice: Option<bool>,
    pub rejected: Vec<String>,
}

impl LatticeReport {
    pub fn ok(&self) -> bool {
        self.states == 0
            || (self.connected
                && self.acyclic
                && self.clocked.len() == 1
                && self.counterclocked.len() == 1
                && self.lattice != Some(false))
    }
}

pub fn lattice_report(d: &TangleDiagram, s: &Site) -> LatticeReport {
    let states = enumerate_states(d).remove(s).unwrap_or_default();
    lattice_report_for(d, s, &states)
}

/// Lattice report for every nonempty site.
pub fn lattice_reports(d: &TangleDiagram) -> Vec<LatticeReport> {
    enumerate_states(d)
        .iter()
        .map(|(s, v)| lattice_report_for(d, s, v))
        .collect()
}

fn lattice_report_for(d: &TangleDiagram, s: &Site, states: &[KauffmanState]) -> LatticeReport {
    let n = states.len();
    let index: BTreeMap<&KauffmanState, usize> = states.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut succ = vec![Vec::new(); n];
    let mut has_cw = vec![false; n];
    let mut has_acw = vec![false; n];
    let mut rejected = BTreeSet::new();
    for (i, x) in states.iter().enumerate() {
        let scan = scan_moves(d, x);
        rejected.extend(scan.rejected);
        for m in scan.moves {
            match m.direction {
                Direction::Clockwise => {
                    has_cw[i] = true;
                    if let Some(&j) = index.get(&m.apply(x)) {
                        succ[i].push(j);
                    }
                }
                Direction::Anticlockwise => has_acw[i] = true,
            }
        }
    }
    // Undirected connectivity.
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for &j in &succ[i] {
            adj[i].push(j);
            adj[j].push(i);
        }
    }
    let mut seen = vec![false; n];
    if n > 0 {
        let mut q = VecDeque::from([0]);
        seen[0] = true;
        while let Some(i) = q.pop_front() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    q.push_back(j);
                }
            }
        }
    }
    let connected = seen.iter().all(|&b| b);
    // Kahn's algorithm.
    let mut indeg = vec![0; n];
    for v in &succ {
        for &j in v {
            indeg[j] += 1;
        }
    }
    let mut q: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut done = 0;
    while let Some(i) = q.pop_front() {
        done += 1;
        for &j in &succ[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                q.push_back(j);
            }
        }
    }
    let acyclic = done == n;
    let clocked = (0..n).filter(|&i| !has_acw[i]).map(|i| states[i].clone()).collect();
    let counterclocked = (0..n).filter(|&i| !has_cw[i]).map(|i| states[i].clone()).collect();
    let lattice = (n <= 12 && acyclic).then(|| is_lattice(&succ));
    LatticeReport {
        site: s.clone(),
        states: n,
        connected,
        acyclic,
        clocked,
        counterclocked,
        lattice,
        rejected: rejected.into_iter().collect(),
    }
}

/// `x ≥ y` iff `y` is reachable from `x`; checks all joins and meets exist.
fn is_lattice(succ: &[Vec<usize>]) -> bool {
    let n = succ.len();
    let mut ge = vec![vec![false; n]; n];
    for i in 0..n {
        let mut stack = vec![i];
        ge[i][i] = true;
        while let Some(x) = stack.pop() {
            for &y in &succ[x] {
                if !ge[i][y] {
                    ge[i][y] = true;
                    stack.push(y);
                }
            }
        }
    }
    let bound = |x: usize, y: usize, upper: bool| -> bool {
        let rel = |a: usize, b: usize| if upper { ge[a][b] } else { ge[b][a] };
        let cands: Vec<usize> = (0..n).filter(|&z| rel(z, x) && rel(z, y)).collect();
        cands.iter().any(|&z| cands.iter().all(|&w| rel(w, z)))
    };
    (0..n).all(|x| (0..n).all(|y| bound(x, y, true) && bound(x, y, false)))
}
