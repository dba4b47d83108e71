//! Schreier extensions `L = L_Q ×_f GF(2)^t` and the classification
//! pipeline.
//!
//! The element `(P, x)` has index `2^t·idx(P) + x`, with `idx(Ω̄) = 0` and
//! `idx(p) = p + 1` for a quotient point `p`. The product is
//! `(P, x)(Q, y) = (PQ, x + y + f(P, Q))`.

use std::collections::BTreeSet;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;

use crate::automorphism::{automorphism_group, closure_order, known_generators, PointAutomorphism};
use crate::error::{Error, Result};
use crate::factor::{ext_count, CoboundarySpace, Code, FactorSystem};
use crate::loops::{self, SteinerLoop, OMEGA};
use crate::orbits::{self, check_lagrange, ActingGroup, OrbitOptions};
use crate::sts::{Point, SteinerTripleSystem};

#[derive(Clone, Debug)]
pub struct ExtensionSpec {
    pub quotient: SteinerTripleSystem,
    pub t: u32,
    pub fs: FactorSystem,
}

impl ExtensionSpec {
    pub fn new(quotient: SteinerTripleSystem, t: u32, fs: FactorSystem) -> Result<Self> {
        if fs.t != t || fs.b != quotient.b() {
            return Err(Error::DimensionMismatch(format!(
                "factor system (t={}, b={}) for t={t} and b={}",
                fs.t,
                fs.b,
                quotient.b()
            )));
        }
        Ok(ExtensionSpec { quotient, t, fs })
    }

    pub fn from_code(quotient: SteinerTripleSystem, t: u32, code: Code) -> Result<Self> {
        let fs = FactorSystem::new(code, t, quotient.b())?;
        Self::new(quotient, t, fs)
    }

    /// Order of the extension loop, `(v_Q + 1)·2^t`.
    pub fn order(&self) -> usize {
        (self.quotient.v() + 1) << self.t
    }

    #[inline]
    pub fn element(&self, p: usize, x: u32) -> usize {
        (p << self.t) | x as usize
    }
}

/// Cayley table of the extension loop.
pub fn build_extension(spec: &ExtensionSpec) -> Result<SteinerLoop> {
    let q = loops::loop_from_sts(&spec.quotient);
    let t = spec.t;
    let mask = (1usize << t) - 1;
    SteinerLoop::from_fn(spec.order(), |a, b| {
        let (p, x) = (a >> t, a & mask);
        let (r, y) = (b >> t, b & mask);
        let z = x ^ y ^ spec.fs.evaluate(&spec.quotient, p, r) as usize;
        (q.mul(p, r) << t) | z
    })
}

/// The triple system of the extension; loop element `i` is point `i - 1`,
/// so `(Ω̄, x)` is point `x - 1` and `(p, x)` is point `2^t(p + 1) + x - 1`.
pub fn extension_sts(spec: &ExtensionSpec) -> Result<SteinerTripleSystem> {
    let t = spec.t;
    let v = spec.order() - 1;
    let f = &spec.fs;
    let q = &spec.quotient;
    let n = 1u32 << t;
    let mut triples = Vec::with_capacity(crate::sts::triple_count(v));
    let pt = |p: usize, x: u32| ((p << t) | x as usize) - 1;
    // kernel triples {(Ω̄,x), (Ω̄,y), (Ω̄,x+y)}
    for x in 1..n {
        for y in x + 1..n {
            if x ^ y > y {
                triples.push([pt(0, x), pt(0, y), pt(0, x ^ y)]);
            }
        }
    }
    // {(Ω̄,x), (P,y), (P,x+y)}
    for p in 1..=q.v() {
        for x in 1..n {
            for y in 0..n {
                if x ^ y > y {
                    triples.push([pt(0, x), pt(p, y), pt(p, x ^ y)]);
                }
            }
        }
    }
    // over each quotient triple {P,Q,R}: (P,x)(Q,y) = (R, x+y+f)
    for (i, tr) in q.triples().iter().enumerate() {
        let val = f.value(i);
        let [p, r, s] = tr.map(|a| a + 1);
        for x in 0..n {
            for y in 0..n {
                triples.push([pt(p, x), pt(r, y), pt(s, x ^ y ^ val)]);
            }
        }
    }
    SteinerTripleSystem::new(v, triples)
}

/// Relabeling of extension points (as numbered by [`extension_sts`]) that
/// lists the kernel first: `(Ω̄, x) ↦ x - 1` and
/// `(P_i, x) ↦ 2^t - 1 + x·v_Q + i`.
pub fn kernel_first_labeling(quotient_v: usize, t: u32) -> Vec<Point> {
    let n = 1usize << t;
    let v = (quotient_v + 1) * n - 1;
    let mut lab = vec![0; v];
    for (point, slot) in lab.iter_mut().enumerate() {
        let e = point + 1;
        let (p, x) = (e >> t, e & (n - 1));
        *slot = if p == 0 {
            x - 1
        } else {
            n - 1 + x * quotient_v + (p - 1)
        };
    }
    lab
}

/// Quotient points `P` that are Veblen in the quotient and satisfy
/// `f(P,Q) + f(PQ,R) = f(Q,R) + f(P,QR)` for all `Q, R`; exactly these
/// lift to Veblen points outside the kernel.
pub fn extra_veblen_points(spec: &ExtensionSpec) -> BTreeSet<Point> {
    let veblen = spec.quotient.veblen_points();
    extra_veblen_among(spec, &veblen)
}

fn extra_veblen_among(spec: &ExtensionSpec, candidates: &BTreeSet<Point>) -> BTreeSet<Point> {
    let q = &spec.quotient;
    let l = loops::loop_from_sts(q);
    let f = |a, b| spec.fs.evaluate(q, a, b);
    let n = l.order();
    candidates
        .iter()
        .copied()
        .filter(|&point| {
            let p = point + 1;
            (1..n).all(|a| {
                let pa = l.mul(p, a);
                (1..n).all(|c| f(p, a) ^ f(pa, c) == f(a, c) ^ f(p, l.mul(a, c)))
            })
        })
        .collect()
}

/// True iff every kernel element `(Ω̄, x)` is central in the extension.
pub fn verify_centrality(spec: &ExtensionSpec) -> Result<bool> {
    let l = build_extension(spec)?;
    Ok((0..1usize << spec.t).all(|x| l.is_central(spec.element(OMEGA, x as u32))))
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    /// Largest `t·b` accepted without `long_running`.
    pub budget_bits: u32,
    pub long_running: bool,
    pub workers: usize,
    pub block_size: usize,
    pub checkpoint: Option<PathBuf>,
    pub checkpoint_every: u64,
    pub halt_after: Option<u64>,
    /// Build every orbit representative's system and count its Veblen
    /// points directly.
    pub verify: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            budget_bits: 26,
            long_running: false,
            workers: 1,
            block_size: 1 << 16,
            checkpoint: None,
            checkpoint_every: 1 << 22,
            halt_after: None,
            verify: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Representative {
    pub code: Code,
    pub orbit_size: u128,
    /// Veblen points of the built system (`None` when verification is off).
    pub veblen_count: Option<usize>,
    pub survivor: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub name: String,
    pub t: u32,
    pub target_veblen: usize,
    pub ext_count: u128,
    pub b2_dim: usize,
    pub coset_count: u128,
    pub group_order: u128,
    pub orbit_count: usize,
    pub exact_k_survivors: usize,
    pub representatives: Vec<Representative>,
}

/// Point automorphisms of the quotient: published generators when the name
/// has them, otherwise exhaustive search. Returns generators and order.
pub fn quotient_automorphisms(
    name: &str,
    quotient: &SteinerTripleSystem,
) -> Result<(Vec<PointAutomorphism>, u128)> {
    match known_generators(name) {
        Ok(gens) if gens.iter().all(|g| quotient.preserves(g.perm())) => {
            let perms: Vec<Vec<Point>> = gens.iter().map(|g| g.perm().to_vec()).collect();
            let order = closure_order(quotient.v(), &perms);
            Ok((gens, order))
        }
        _ => {
            let g = automorphism_group(quotient)?;
            Ok((g.generators, g.order))
        }
    }
}

/// Classifies the extensions of `quotient` by `GF(2)^t` whose systems have
/// exactly `target_veblen = 2^t - 1` Veblen points.
pub fn classify(
    quotient: &SteinerTripleSystem,
    name: &str,
    t: u32,
    target_veblen: usize,
    options: &ClassifyOptions,
) -> Result<ClassificationReport> {
    if target_veblen != (1usize << t) - 1 {
        return Err(Error::InvalidArgument(format!(
            "target Veblen count must be 2^t - 1 = {} for t = {t}",
            (1usize << t) - 1
        )));
    }
    let tb = t * quotient.b() as u32;
    if tb > options.budget_bits && !options.long_running {
        return Err(Error::Unsupported(format!(
            "t·b = {tb} exceeds the interactive budget of {} bits; rerun with --long-running \
             (and preferably --checkpoint)",
            options.budget_bits
        )));
    }
    if options.workers == 0 {
        return Err(Error::InvalidArgument(
            "worker count must be at least 1".into(),
        ));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    pool.install(|| classify_inner(quotient, name, t, target_veblen, options))
}

fn classify_inner(
    quotient: &SteinerTripleSystem,
    name: &str,
    t: u32,
    target_veblen: usize,
    options: &ClassifyOptions,
) -> Result<ClassificationReport> {
    let space = CoboundarySpace::new(quotient, t)?;
    let (gens, aut_order) = quotient_automorphisms(name, quotient)?;
    let group = ActingGroup::new(quotient, t, &gens, aut_order)?;
    let found = orbits::orbits(
        &space,
        &group,
        &OrbitOptions {
            parallel: options.workers > 1,
            checkpoint: options.checkpoint.clone(),
            checkpoint_every: options.checkpoint_every,
            halt_after: options.halt_after,
        },
    )?;
    check_lagrange(&found, group.order)?;

    let quotient_veblen = quotient.veblen_points();
    let representatives: Vec<Representative> = found
        .par_iter()
        .map(|o| -> Result<Representative> {
            let spec = ExtensionSpec::from_code(quotient.clone(), t, o.representative)?;
            let survivor = quotient_veblen.is_empty()
                || extra_veblen_among(&spec, &quotient_veblen).is_empty();
            let veblen_count = if options.verify {
                let count = extension_sts(&spec)?.veblen_points().len();
                if (count == target_veblen) != survivor {
                    return Err(Error::VerificationFailed(format!(
                        "code {}: {count} Veblen points but filter says survivor = {survivor}",
                        o.representative
                    )));
                }
                Some(count)
            } else {
                None
            };
            Ok(Representative {
                code: o.representative,
                orbit_size: o.size,
                veblen_count,
                survivor,
            })
        })
        .collect::<Result<_>>()?;

    Ok(ClassificationReport {
        name: name.to_string(),
        t,
        target_veblen,
        ext_count: ext_count(t, quotient.b()),
        b2_dim: space.dim(),
        coset_count: space.coset_count(),
        group_order: group.order,
        orbit_count: representatives.len(),
        exact_k_survivors: representatives.iter().filter(|r| r.survivor).count(),
        representatives,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn null_extension_of_fano_is_pg42() {
        let spec = ExtensionSpec::from_code(catalog::pg(2), 2, 0).unwrap();
        let l = build_extension(&spec).unwrap();
        assert_eq!(l.order(), 32);
        assert!(l.is_group());
        let s = extension_sts(&spec).unwrap();
        assert_eq!(s.veblen_points().len(), 31);
        assert_eq!(loops::sts_from_loop(&l).unwrap(), s);
        assert_eq!(extra_veblen_points(&spec).len(), 7);
    }

    #[test]
    fn kernel_first_labeling_is_a_permutation() {
        let mut lab = kernel_first_labeling(9, 1);
        assert_eq!(lab[0], 0);
        assert_eq!(lab[1], 1); // (P_1, 0)
        assert_eq!(lab[2], 10); // (P_1, 1)
        lab.sort_unstable();
        assert_eq!(lab, (0..19).collect::<Vec<_>>());
        let mut lab = kernel_first_labeling(7, 2);
        lab.sort_unstable();
        assert_eq!(lab, (0..31).collect::<Vec<_>>());
    }

    #[test]
    fn budget_guard() {
        let q = catalog::pg(3);
        let err = classify(&q, "sts15-1", 1, 1, &ClassifyOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
        let q = catalog::get("sts9").unwrap().system;
        assert!(classify(&q, "sts9", 1, 3, &ClassifyOptions::default()).is_err());
    }

    #[test]
    fn sts9_and_fano() {
        let q = catalog::get("sts9").unwrap().system;
        let r = classify(&q, "sts9", 1, 1, &ClassifyOptions::default()).unwrap();
        assert_eq!((r.ext_count, r.b2_dim, r.coset_count), (4096, 9, 8));
        assert_eq!((r.orbit_count, r.exact_k_survivors), (3, 3));

        let r = classify(&catalog::pg(2), "fano", 2, 3, &ClassifyOptions::default()).unwrap();
        assert_eq!((r.ext_count, r.b2_dim, r.coset_count), (16384, 8, 64));
        assert_eq!((r.orbit_count, r.exact_k_survivors), (3, 2));
        assert_eq!(r.representatives[0].code, 0);
        assert_eq!(r.representatives[0].veblen_count, Some(31));
    }
}
