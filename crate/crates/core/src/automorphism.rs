//! Automorphisms of quotient systems and kernels, and the action
//! `(α, β)(f) = α f β⁻¹` on factor systems.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::catalog;
use crate::error::{Error, Result};
use crate::factor::FactorSystem;
use crate::iso;
use crate::sts::{Point, SteinerTripleSystem};

/// Largest quotient order for which the full automorphism group is found by
/// exhaustive search.
pub const SEARCH_LIMIT: usize = 15;

/// A permutation of quotient points preserving the triples.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PointAutomorphism {
    perm: Vec<Point>,
}

impl PointAutomorphism {
    pub fn new(sts: &SteinerTripleSystem, perm: Vec<Point>) -> Result<Self> {
        if perm.len() != sts.v() {
            return Err(Error::LengthMismatch {
                expected: sts.v(),
                got: perm.len(),
            });
        }
        check_permutation(&perm)?;
        if !sts.preserves(&perm) {
            return Err(Error::NotAnAutomorphism(format_cycles(&perm)));
        }
        Ok(PointAutomorphism { perm })
    }

    pub fn identity(v: usize) -> Self {
        PointAutomorphism {
            perm: (0..v).collect(),
        }
    }

    pub fn perm(&self) -> &[Point] {
        &self.perm
    }

    #[inline]
    pub fn apply(&self, p: Point) -> Point {
        self.perm[p]
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        PointAutomorphism {
            perm: compose(&self.perm, &other.perm),
        }
    }

    pub fn inverse(&self) -> Self {
        PointAutomorphism {
            perm: invert(&self.perm),
        }
    }
}

fn check_permutation(perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidArgument(format!(
                "not a permutation: {perm:?}"
            )));
        }
    }
    Ok(())
}

pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

pub fn invert(a: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// An invertible linear map of `GF(2)^t`, acting on kernel elements in the
/// packed form of [`crate::factor::kernel_element`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct KernelAutomorphism {
    t: u32,
    /// `columns[k]` is the image of the element with only bit `k` set.
    columns: Vec<u32>,
}

impl KernelAutomorphism {
    /// From the images of the unit elements `1 << k`.
    pub fn from_columns(t: u32, columns: Vec<u32>) -> Result<Self> {
        if columns.len() != t as usize {
            return Err(Error::LengthMismatch {
                expected: t as usize,
                got: columns.len(),
            });
        }
        let a = KernelAutomorphism { t, columns };
        let image: HashSet<u32> = (0..1u32 << t).map(|x| a.apply(x)).collect();
        if a.columns.iter().any(|&c| c >> t != 0) || image.len() != 1 << t {
            return Err(Error::InvalidArgument(
                "kernel map is not invertible".into(),
            ));
        }
        Ok(a)
    }

    /// From a `t×t` matrix acting on coordinate column vectors.
    pub fn from_matrix(rows: &[Vec<u8>]) -> Result<Self> {
        let t = rows.len() as u32;
        let mut columns = vec![0u32; t as usize];
        for (r, row) in rows.iter().enumerate() {
            if row.len() != t as usize {
                return Err(Error::DimensionMismatch(format!(
                    "{t}×{} matrix",
                    row.len()
                )));
            }
            for (c, &e) in row.iter().enumerate() {
                if e & 1 == 1 {
                    // coordinate i sits at bit t-1-i
                    columns[t as usize - 1 - c] |= 1 << (t as usize - 1 - r);
                }
            }
        }
        Self::from_columns(t, columns)
    }

    pub fn identity(t: u32) -> Self {
        KernelAutomorphism {
            t,
            columns: (0..t).map(|k| 1 << k).collect(),
        }
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn matrix(&self) -> Vec<Vec<u8>> {
        let t = self.t as usize;
        (0..t)
            .map(|r| {
                (0..t)
                    .map(|c| ((self.columns[t - 1 - c] >> (t - 1 - r)) & 1) as u8)
                    .collect()
            })
            .collect()
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        let mut out = 0;
        for (k, &c) in self.columns.iter().enumerate() {
            if x >> k & 1 == 1 {
                out ^= c;
            }
        }
        out
    }

    pub fn compose(&self, other: &Self) -> Self {
        KernelAutomorphism {
            t: self.t,
            columns: other.columns.iter().map(|&c| self.apply(c)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.t)
    }
}

/// Elementary transvections `e_j ↦ e_j + e_i`, which generate `GL(t, 2)`.
pub fn kernel_generators(t: u32) -> Vec<KernelAutomorphism> {
    let mut gens = Vec::new();
    for i in 0..t {
        for j in 0..t {
            if i != j {
                let mut columns: Vec<u32> = (0..t).map(|k| 1 << k).collect();
                columns[j as usize] |= 1 << i;
                gens.push(KernelAutomorphism { t, columns });
            }
        }
    }
    gens
}

/// `|GL(t, 2)|`.
pub fn gl_order(t: u32) -> u128 {
    (0..t).map(|i| (1u128 << t) - (1u128 << i)).product()
}

/// `sigma[j]` is the canonical index of the image of triple `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedTriplePermutation {
    pub sigma: Vec<usize>,
}

pub fn induced_triple_permutation(
    beta: &[Point],
    sts: &SteinerTripleSystem,
) -> Result<InducedTriplePermutation> {
    if beta.len() != sts.v() || !sts.preserves(beta) {
        return Err(Error::NotAnAutomorphism(format_cycles(beta)));
    }
    let sigma = sts
        .triples()
        .iter()
        .map(|t| sts.triple_index(beta[t[0]], beta[t[1]]))
        .collect();
    Ok(InducedTriplePermutation { sigma })
}

/// `(α, β)(f) = α f β⁻¹`: the new value on triple `β(T)` is `α` of the old
/// value on `T`.
pub fn act(
    alpha: &KernelAutomorphism,
    beta: &PointAutomorphism,
    fs: &FactorSystem,
    sts: &SteinerTripleSystem,
) -> Result<FactorSystem> {
    if fs.t != alpha.t() || fs.b != sts.b() || beta.perm().len() != sts.v() {
        return Err(Error::DimensionMismatch(format!(
            "factor system (t={}, b={}) vs kernel t={} and quotient b={}",
            fs.t,
            fs.b,
            alpha.t(),
            sts.b()
        )));
    }
    let sigma = induced_triple_permutation(beta.perm(), sts)?.sigma;
    Ok(act_with_sigma(alpha, &sigma, fs))
}

/// [`act`] with a precomputed induced triple permutation.
pub fn act_with_sigma(
    alpha: &KernelAutomorphism,
    sigma: &[usize],
    fs: &FactorSystem,
) -> FactorSystem {
    let mut out = vec![0u32; fs.b];
    for (j, &s) in sigma.iter().enumerate() {
        out[s] = alpha.apply(fs.value(j));
    }
    FactorSystem::encode(fs.t, &out).expect("shape is preserved")
}

/// Generators of `Aut(L_Q)` with the order of the group they generate.
#[derive(Clone, Debug, Serialize)]
pub struct AutomorphismGroup {
    pub generators: Vec<PointAutomorphism>,
    pub order: u128,
}

/// All elements of the group generated by `gens` (permutations of `v`
/// points), by breadth-first closure.
pub fn closure(v: usize, gens: &[Vec<Point>]) -> Vec<Vec<Point>> {
    let id: Vec<Point> = (0..v).collect();
    let mut seen: HashSet<Vec<Point>> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        let g = out[i].clone();
        for h in gens {
            let gh = compose(h, &g);
            if seen.insert(gh.clone()) {
                out.push(gh);
            }
        }
        i += 1;
    }
    out
}

pub fn closure_order(v: usize, gens: &[Vec<Point>]) -> u128 {
    closure(v, gens).len() as u128
}

/// Full automorphism group by exhaustive search, reduced to a small
/// generating set.
pub fn automorphism_group(sts: &SteinerTripleSystem) -> Result<AutomorphismGroup> {
    if sts.v() > SEARCH_LIMIT {
        return Err(Error::SearchBudgetExceeded(sts.v(), SEARCH_LIMIT));
    }
    Ok(automorphism_group_unbounded(sts))
}

/// [`automorphism_group`] without the size guard. Cost grows with the group
/// order, so large projective systems are slow.
pub fn automorphism_group_unbounded(sts: &SteinerTripleSystem) -> AutomorphismGroup {
    let mut all: Vec<Vec<Point>> = Vec::new();
    iso::for_each_automorphism(sts, &mut |p| {
        all.push(p.to_vec());
        ControlFlow::Continue(())
    });
    let mut gens: Vec<Vec<Point>> = Vec::new();
    let mut span: HashSet<Vec<Point>> = HashSet::from([(0..sts.v()).collect()]);
    for g in &all {
        if !span.contains(g) {
            gens.push(g.clone());
            span = closure(sts.v(), &gens).into_iter().collect();
            if span.len() == all.len() {
                break;
            }
        }
    }
    debug_assert_eq!(span.len(), all.len());
    AutomorphismGroup {
        generators: gens
            .into_iter()
            .map(|perm| PointAutomorphism { perm })
            .collect(),
        order: all.len() as u128,
    }
}

/// Generators of `GL(n+1, 2)` acting on the points of [`catalog::pg`].
fn projective_generators(n: u32) -> Vec<Vec<Point>> {
    let dim = n + 1;
    let v = (1usize << dim) - 1;
    let mut gens = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                // x ↦ x + x_j e_i
                gens.push((1..=v).map(|x| (x ^ (((x >> j) & 1) << i)) - 1).collect());
            }
        }
    }
    gens
}

/// `AGL(2, 3)` on [`catalog::ag`]`(2)`: translations and two linear maps.
fn affine_plane_generators() -> Vec<Vec<Point>> {
    let idx = |r: usize, c: usize| 3 * (r % 3) + c % 3;
    let map = |f: &dyn Fn(usize, usize) -> (usize, usize)| -> Vec<Point> {
        (0..9)
            .map(|p| {
                let (r, c) = f(p / 3, p % 3);
                idx(r, c)
            })
            .collect()
    };
    vec![
        map(&|r, c| (r + 1, c)),
        map(&|r, c| (r, c + 1)),
        map(&|r, c| (c, r)),
        map(&|r, c| (r + c, c)),
        map(&|r, c| (2 * r, c)),
    ]
}

/// Published or structural generators for catalog quotients.
pub fn known_generators(name: &str) -> Result<Vec<PointAutomorphism>> {
    let entry = catalog::get(name)?;
    let sts = &entry.system;
    let perms: Vec<Vec<Point>> = match name {
        "sts13-noncyclic" | "sts13-1" => vec![
            (0..13).map(|x| 3 * x % 13).collect(),
            parse_cycles("(6 8)(2 11)(3 9)(4 12)(5 7)", 13)?,
        ],
        "sts13-cyclic" | "sts13-2" => vec![
            (0..13).map(|x| (x + 1) % 13).collect(),
            (0..13).map(|x| 3 * x % 13).collect(),
        ],
        "fano" | "pg22" | "sts7" => projective_generators(2),
        "pg32" | "sts15-1" => projective_generators(3),
        "sts9" | "sts9-example" | "sts9-ag" => {
            // carry AGL(2,3) across an isomorphism from the coordinate model
            let model = catalog::ag(2);
            let phi = iso::find_isomorphism(&model, sts)?
                .ok_or_else(|| Error::VerificationFailed("STS(9) is not AG(2,3)".into()))?;
            let phi_inv = invert(&phi);
            affine_plane_generators()
                .iter()
                .map(|g| compose(&phi, &compose(g, &phi_inv)))
                .collect()
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    perms
        .into_iter()
        .map(|p| PointAutomorphism::new(sts, p))
        .collect()
}

/// Parses cycle notation such as `(6 8)(2 11)` into a permutation of `v`
/// points; `()` or an empty string is the identity.
pub fn parse_cycles(s: &str, v: usize) -> Result<Vec<Point>> {
    let mut perm: Vec<Point> = (0..v).collect();
    let mut moved = vec![false; v];
    let bad = |msg: String| Error::Parse { line: 1, msg };
    let mut rest = s.trim();
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| bad(format!("malformed cycle notation `{s}`")))?;
        let cycle: Vec<Point> = inner
            .0
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                catalog::parse_label(t)
                    .filter(|&p| p < v)
                    .ok_or_else(|| bad(format!("bad point `{t}` for v = {v}")))
            })
            .collect::<Result<_>>()?;
        for (i, &p) in cycle.iter().enumerate() {
            if std::mem::replace(&mut moved[p], true) {
                return Err(bad(format!("point {p} appears twice")));
            }
            perm[p] = cycle[(i + 1) % cycle.len()];
        }
        rest = inner.1.trim_start();
    }
    Ok(perm)
}

/// Cycle notation with fixed points omitted; `()` for the identity.
pub fn format_cycles(perm: &[Point]) -> String {
    let mut out = String::new();
    let mut done = vec![false; perm.len()];
    for start in 0..perm.len() {
        if done[start] || perm[start] == start {
            continue;
        }
        out.push('(');
        let mut p = start;
        let mut first = true;
        while !done[p] {
            done[p] = true;
            if !first {
                out.push(' ');
            }
            write!(out, "{p}").unwrap();
            first = false;
            p = perm[p];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}
