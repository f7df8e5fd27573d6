use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{close_preorder, saturate, Conditions, Family, NbModel, WorldSet};
use crate::formula::Formula;

/// Atoms given a random valuation by [`random_model`].
pub const DEFAULT_ATOMS: [&str; 3] = ["p", "q", "r"];

/// A random preorder on `n` worlds, as up-sets.
pub fn random_preorder<R: Rng>(rng: &mut R, n: usize) -> Vec<WorldSet> {
    let mut up: Vec<WorldSet> = (0..n).map(|i| 1 << i).collect();
    for (w, u) in up.iter_mut().enumerate() {
        for v in 0..n {
            if v != w && rng.gen_bool(0.3) {
                *u |= 1 << v;
            }
        }
    }
    close_preorder(&mut up);
    up
}

fn random_family<R: Rng>(rng: &mut R, n: usize) -> Family {
    let mut f = Family::EMPTY;
    for _ in 0..rng.gen_range(0..=2) {
        f.insert(rng.gen_range(0..(1u32 << n)));
    }
    f
}

/// A random model over `size` worlds satisfying the base invariants and
/// exactly the closure of `cs`. Deterministic in `seed`.
pub fn random_model(cs: &Conditions, size: usize, seed: u64) -> NbModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = NbModel::discrete(size);
    m.up = random_preorder(&mut rng, size);
    for p in DEFAULT_ATOMS {
        let chosen: WorldSet = (0..size)
            .filter(|_| rng.gen_bool(0.4))
            .fold(0, |acc, w| acc | (1 << w));
        for w in super::members(m.up_closure(chosen)) {
            m.val[w].insert(p.to_string());
        }
    }
    for w in 0..size {
        m.nbox[w] = random_family(&mut rng, size);
        m.ndiam[w] = random_family(&mut rng, size);
    }
    saturate(&mut m, cs);
    m
}

/// A random formula of modal-and-connective depth at most `depth`.
pub fn random_formula<R: Rng>(
    rng: &mut R,
    atoms: &[&str],
    depth: usize,
    boxes: bool,
    diamonds: bool,
) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.1) {
            Formula::Bottom
        } else {
            Formula::atom(atoms[rng.gen_range(0..atoms.len())])
        };
    }
    let sub = |rng: &mut R| random_formula(rng, atoms, depth - 1, boxes, diamonds);
    loop {
        match rng.gen_range(0..5) {
            0 => return Formula::and(sub(rng), sub(rng)),
            1 => return Formula::or(sub(rng), sub(rng)),
            2 => return Formula::imp(sub(rng), sub(rng)),
            3 if boxes => return Formula::boxed(sub(rng)),
            4 if diamonds => return Formula::dia(sub(rng)),
            _ => {}
        }
    }
}
