//! Orbits of `Aut(L_N) × Aut(L_Q)` on the cosets of B².
//!
//! Both the action and the coset reduction are GF(2)-linear, so each
//! generator induces a linear map on coset indices. Orbits are closed
//! breadth-first over a bitmap of visited indices; since indices are in
//! ascending representative order, the first unvisited index is the least
//! representative of its orbit.

use std::collections::HashSet;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::automorphism::{
    act_with_sigma, gl_order, induced_triple_permutation, kernel_generators, KernelAutomorphism,
    PointAutomorphism,
};
use crate::checkpoint::{bitmap_words, Fingerprint, OrbitCheckpoint};
use crate::error::{Error, Result};
use crate::factor::{CoboundarySpace, Code};
use crate::gf2::LinearMap;
use crate::sts::SteinerTripleSystem;

/// Largest number of coset-index bits handled by the bitmap (2 GiB).
pub const MAX_ORBIT_BITS: u32 = 34;

/// One generator `(α, β)`, with `β` stored as its induced triple
/// permutation.
#[derive(Clone, Debug)]
pub struct Generator {
    pub alpha: KernelAutomorphism,
    pub sigma: Vec<usize>,
}

/// The acting group `Aut(L_N) × Aut(L_Q)` given by generators.
#[derive(Clone, Debug)]
pub struct ActingGroup {
    pub generators: Vec<Generator>,
    pub order: u128,
}

impl ActingGroup {
    /// Generators `(α, 1)` for `α` in a generating set of `GL(t, 2)` and
    /// `(1, β)` for the given point automorphisms; `aut_order` is `|Aut(L_Q)|`.
    pub fn new(
        quotient: &SteinerTripleSystem,
        t: u32,
        betas: &[PointAutomorphism],
        aut_order: u128,
    ) -> Result<Self> {
        let id_sigma: Vec<usize> = (0..quotient.b()).collect();
        let mut generators: Vec<Generator> = kernel_generators(t)
            .into_iter()
            .map(|alpha| Generator {
                alpha,
                sigma: id_sigma.clone(),
            })
            .collect();
        for beta in betas {
            generators.push(Generator {
                alpha: KernelAutomorphism::identity(t),
                sigma: induced_triple_permutation(beta.perm(), quotient)?.sigma,
            });
        }
        Ok(ActingGroup {
            generators,
            order: gl_order(t) * aut_order,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Orbit {
    /// Least coset representative in the orbit.
    pub representative: Code,
    pub size: u128,
}

#[derive(Clone, Debug)]
pub struct OrbitOptions {
    /// Expand large frontiers on the current rayon pool.
    pub parallel: bool,
    pub checkpoint: Option<PathBuf>,
    /// Minimum number of newly visited cosets between checkpoint writes.
    pub checkpoint_every: u64,
    /// Stop with [`Error::Interrupted`] once this many cosets are visited
    /// (after writing a checkpoint).
    pub halt_after: Option<u64>,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions {
            parallel: false,
            checkpoint: None,
            checkpoint_every: 1 << 22,
            halt_after: None,
        }
    }
}

/// Linear maps on coset indices, one per generator.
pub struct IndexAction {
    bits: u32,
    maps: Vec<LinearMap>,
    fingerprint: u64,
}

impl IndexAction {
    pub fn new(space: &CoboundarySpace, group: &ActingGroup) -> Result<Self> {
        let bits = space.coset_bits();
        if bits > MAX_ORBIT_BITS {
            return Err(Error::Unsupported(format!(
                "{bits} coset-index bits exceed the orbit bitmap limit of {MAX_ORBIT_BITS}"
            )));
        }
        let mut fp = Fingerprint::default();
        fp.write(&space.t().to_le_bytes());
        fp.write(&(space.b() as u64).to_le_bytes());
        fp.write(&space.free_mask().to_le_bytes());
        let mut maps = Vec::with_capacity(group.generators.len());
        for g in &group.generators {
            let columns: Vec<u128> = (0..bits)
                .map(|j| {
                    let fs = space.factor_system(space.representative(1 << j));
                    space.coset_index(act_with_sigma(&g.alpha, &g.sigma, &fs).code)
                })
                .collect();
            for c in &columns {
                fp.write(&c.to_le_bytes());
            }
            maps.push(LinearMap::from_columns(&columns));
        }
        Ok(IndexAction {
            bits,
            maps,
            fingerprint: fp.finish(),
        })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Image of a coset index under generator `g`.
    #[inline]
    pub fn apply(&self, g: usize, index: u64) -> u64 {
        self.maps[g].apply(index as u128) as u64
    }
}

struct Bitmap(Vec<AtomicU64>);

impl Bitmap {
    fn new(words: Vec<u64>) -> Self {
        Bitmap(words.into_iter().map(AtomicU64::new).collect())
    }

    /// Sets bit `i`; true if it was clear.
    #[inline]
    fn set(&self, i: u64) -> bool {
        let bit = 1u64 << (i & 63);
        self.0[(i >> 6) as usize].fetch_or(bit, Ordering::Relaxed) & bit == 0
    }

    fn snapshot(&self) -> Vec<u64> {
        self.0.iter().map(|w| w.load(Ordering::Relaxed)).collect()
    }

    /// First clear bit at or after `i`, below `end`.
    fn next_clear(&self, mut i: u64, end: u64) -> Option<u64> {
        while i < end {
            let word = self.0[(i >> 6) as usize].load(Ordering::Relaxed) | ((1u64 << (i & 63)) - 1);
            if word != u64::MAX {
                let j = (i & !63) + (!word).trailing_zeros() as u64;
                return (j < end).then_some(j);
            }
            i = (i & !63) + 64;
        }
        None
    }
}

const PARALLEL_FRONTIER: usize = 1 << 12;

fn close_orbit(action: &IndexAction, seen: &Bitmap, start: u64, parallel: bool) -> u64 {
    seen.set(start);
    let mut size = 1u64;
    let mut frontier = vec![start];
    let gens = action.maps.len();
    while !frontier.is_empty() {
        let next: Vec<u64> = if parallel && frontier.len() >= PARALLEL_FRONTIER {
            frontier
                .par_chunks(1024)
                .flat_map_iter(|chunk| {
                    let mut out = Vec::new();
                    for &x in chunk {
                        for g in 0..gens {
                            let y = action.apply(g, x);
                            if seen.set(y) {
                                out.push(y);
                            }
                        }
                    }
                    out
                })
                .collect()
        } else {
            let mut out = Vec::new();
            for &x in &frontier {
                for g in 0..gens {
                    let y = action.apply(g, x);
                    if seen.set(y) {
                        out.push(y);
                    }
                }
            }
            out
        };
        size += next.len() as u64;
        frontier = next;
    }
    size
}

/// All orbits on the cosets of `space`, in ascending representative order.
pub fn orbits(
    space: &CoboundarySpace,
    group: &ActingGroup,
    options: &OrbitOptions,
) -> Result<Vec<Orbit>> {
    let action = IndexAction::new(space, group)?;
    let total = 1u64 << action.bits;
    let words = bitmap_words(action.bits);

    let (seen, mut found, mut next) = match options.checkpoint.as_deref().filter(|p| p.exists()) {
        Some(path) => {
            let c = OrbitCheckpoint::load(path)?;
            if c.bits != action.bits || c.fingerprint != action.fingerprint {
                return Err(Error::Checkpoint(format!(
                    "{} was written by a different run",
                    path.display()
                )));
            }
            (Bitmap::new(c.bitmap), c.orbits, c.next_index)
        }
        None => (Bitmap::new(vec![0; words]), Vec::new(), 0),
    };

    let mut visited: u64 = found.iter().map(|o| o.1).sum();
    let mut since_save = 0u64;
    while let Some(start) = seen.next_clear(next, total) {
        let size = close_orbit(&action, &seen, start, options.parallel);
        found.push((start, size));
        visited += size;
        since_save += size;
        next = start + 1;
        let halt = options.halt_after.is_some_and(|h| visited >= h) && visited < total;
        if let Some(path) = &options.checkpoint {
            if since_save >= options.checkpoint_every || halt {
                OrbitCheckpoint {
                    bits: action.bits,
                    fingerprint: action.fingerprint,
                    next_index: next,
                    orbits: found.clone(),
                    bitmap: seen.snapshot(),
                }
                .save(path)?;
                since_save = 0;
            }
        }
        if halt {
            return Err(Error::Interrupted);
        }
    }
    if visited != total {
        return Err(Error::VerificationFailed(format!(
            "orbits cover {visited} of {total} cosets"
        )));
    }
    if let Some(path) = &options.checkpoint {
        if path.exists() {
            std::fs::remove_file(path)?;
        }
    }
    Ok(found
        .into_iter()
        .map(|(i, size)| Orbit {
            representative: space.representative(i as u128),
            size: size as u128,
        })
        .collect())
}

/// Reference implementation: closes orbits directly on codes with a hash
/// set, acting and re-reducing at every step.
pub fn orbits_hashed(
    space: &CoboundarySpace,
    group: &ActingGroup,
    representatives: impl IntoIterator<Item = Code>,
) -> Vec<Orbit> {
    let mut seen: HashSet<Code> = HashSet::new();
    let mut out = Vec::new();
    for rep in representatives {
        if seen.contains(&rep) {
            continue;
        }
        seen.insert(rep);
        let mut stack = vec![rep];
        let mut size = 1u128;
        let mut least = rep;
        while let Some(c) = stack.pop() {
            let fs = space.factor_system(c);
            for g in &group.generators {
                let img = space.reduce(act_with_sigma(&g.alpha, &g.sigma, &fs).code);
                if seen.insert(img) {
                    stack.push(img);
                    size += 1;
                    least = least.min(img);
                }
            }
        }
        out.push(Orbit {
            representative: least,
            size,
        });
    }
    out.sort_unstable();
    out
}

/// Checks that every orbit size divides the group order.
pub fn check_lagrange(orbits: &[Orbit], group_order: u128) -> Result<()> {
    match orbits.iter().find(|o| !group_order.is_multiple_of(o.size)) {
        Some(o) => Err(Error::VerificationFailed(format!(
            "orbit of {} has size {} not dividing {group_order}",
            o.representative, o.size
        ))),
        None => Ok(()),
    }
}

/// Orbit report lines: `<representative> <size>`.
pub fn orbit_report(orbits: &[Orbit]) -> String {
    orbits
        .iter()
        .map(|o| format!("{} {}\n", o.representative, o.size))
        .collect()
}
