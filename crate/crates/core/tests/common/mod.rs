#![allow(dead_code)]

use steiner_veblen::automorphism::{closure, known_generators};
use steiner_veblen::catalog;
use steiner_veblen::sts::{Point, SteinerTripleSystem};

pub fn system(name: &str) -> SteinerTripleSystem {
    catalog::get(name).unwrap().system
}

/// Every element of the group generated by the published generators.
pub fn group_elements(name: &str) -> Vec<Vec<Point>> {
    let gens: Vec<Vec<Point>> = known_generators(name)
        .unwrap()
        .iter()
        .map(|g| g.perm().to_vec())
        .collect();
    closure(gens[0].len(), &gens)
}

/// Deterministic shuffle for relabeling tests.
pub fn shuffle(v: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut p: Vec<usize> = (0..v).collect();
    p.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
    p
}
