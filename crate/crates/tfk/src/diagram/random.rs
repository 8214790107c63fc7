//! Random connected diagrams built from single crossings by twisting,
//! glueing and capping.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Crossing, Sign, TangleDiagram};

/// The 1-crossing tangle with open regions `a,b,c,d`, its quadrant list
/// rotated by `rot`. Strands get colours `p` and `q` unless `same_colour`.
pub fn one_crossing(rot: usize, sign: Sign, same_colour: bool) -> TangleDiagram {
    let mut q = ["d", "a", "b", "c"];
    q.rotate_left(rot % 4);
    let u = if same_colour { "p" } else { "q" };
    TangleDiagram::from_parts(
        ["a", "b", "c", "d"].map(String::from).to_vec(),
        vec![Crossing::new(q, sign, "p", u)],
    )
}

fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::L
    } else {
        Sign::R
    }
}

fn random_piece<R: Rng>(rng: &mut R) -> TangleDiagram {
    let d = one_crossing(rng.gen_range(0..4), random_sign(rng), rng.gen_bool(0.3));
    if rng.gen_bool(0.3) {
        let o = d.open_regions()[rng.gen_range(0..4)].clone();
        d.add_twist(&o, random_sign(rng)).unwrap()
    } else {
        d
    }
}

/// Glues `piece` along `k` endpoints at a random compatible position.
fn try_glue<R: Rng>(rng: &mut R, d: &TangleDiagram, piece: &TangleDiagram, k: usize) -> Option<TangleDiagram> {
    let mut pos: Vec<(usize, usize)> = (0..d.open_regions().len())
        .flat_map(|i| (0..piece.open_regions().len()).map(move |j| (i, j)))
        .collect();
    pos.shuffle(rng);
    pos.into_iter().find_map(|(i, j)| d.glue(piece, i, j, k).ok())
}

fn try_cap<R: Rng>(rng: &mut R, d: &TangleDiagram) -> Option<TangleDiagram> {
    let mut regs = d.open_regions().to_vec();
    regs.shuffle(rng);
    regs.iter().find_map(|r| d.cap_off(r).ok())
}

/// A random valid 4-ended diagram with between 1 and `max_crossings` crossings.
pub fn random_four_ended<R: Rng>(rng: &mut R, max_crossings: usize) -> TangleDiagram {
    loop {
        let target = rng.gen_range(1..=max_crossings.max(1));
        let mut d = one_crossing(rng.gen_range(0..4), random_sign(rng), rng.gen_bool(0.3));
        let mut guard = 0;
        while d.crossings().len() < target && guard < 20 {
            guard += 1;
            let room = target - d.crossings().len();
            let choice = rng.gen_range(0..10);
            let next = if choice < 5 || room < 1 {
                let o = d.open_regions()[rng.gen_range(0..d.open_regions().len())].clone();
                d.add_twist(&o, random_sign(rng)).ok()
            } else if choice < 8 {
                let piece = random_piece(rng);
                if piece.crossings().len() > room {
                    continue;
                }
                try_glue(rng, &d, &piece, 2)
            } else {
                let piece = random_piece(rng);
                if piece.crossings().len() > room {
                    continue;
                }
                try_glue(rng, &d, &piece, 1).and_then(|e| try_cap(rng, &e))
            };
            if let Some(n) = next {
                d = n;
            }
        }
        if d.validate().is_empty() && d.open_regions().len() == 4 {
            return d;
        }
    }
}

/// A random valid diagram, 4-ended or (capped) 2-ended.
pub fn random_diagram<R: Rng>(rng: &mut R, max_crossings: usize) -> TangleDiagram {
    loop {
        let d = random_four_ended(rng, max_crossings);
        if rng.gen_bool(0.3) {
            if let Some(c) = try_cap(rng, &d) {
                if c.validate().is_empty() {
                    return c;
                }
            }
            continue;
        }
        return d;
    }
}

/// `count` diagrams from a fixed seed.
pub fn corpus(seed: u64, count: usize, max_crossings: usize) -> Vec<TangleDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_diagram(&mut rng, max_crossings)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid() {
        for d in corpus(7, 50, 6) {
            assert!(d.validate().is_empty(), "{d}");
            assert!(d.crossings().len() <= 6);
        }
    }
}
