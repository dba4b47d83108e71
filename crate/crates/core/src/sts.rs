//! Steiner triple systems and the direct (loop-free) Veblen test.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

pub type Point = usize;
pub type Triple = [Point; 3];

const NONE: usize = usize::MAX;

/// A 2-(v,3,1) design on the points `0..v`.
///
/// Triples are kept sorted and in lexicographic order. The order in which
/// they were supplied is retained separately so that tables can be written
/// back in their original layout.
#[derive(Clone)]
pub struct SteinerTripleSystem {
    v: usize,
    triples: Vec<Triple>,
    source: Vec<Triple>,
    // v*v lookup tables; NONE on the diagonal
    third: Vec<usize>,
    block: Vec<usize>,
}

/// `true` iff a Steiner triple system of order `v` exists.
pub fn is_admissible(v: usize) -> bool {
    v % 6 == 1 || v % 6 == 3
}

/// Number of triples of an STS(v).
pub fn triple_count(v: usize) -> usize {
    v * v.saturating_sub(1) / 6
}

impl SteinerTripleSystem {
    /// Validates the design axioms and builds the pair index.
    pub fn new<I, T>(v: usize, raw_triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[Point]>,
    {
        if !is_admissible(v) {
            return Err(Error::NotAdmissible(v));
        }
        let mut source = Vec::new();
        for raw in raw_triples {
            let raw = raw.as_ref();
            if raw.len() != 3 {
                return Err(Error::BadTriple {
                    triple: raw.to_vec(),
                    reason: "a triple has exactly three points".into(),
                });
            }
            let t = [raw[0], raw[1], raw[2]];
            if let Some(&p) = t.iter().find(|&&p| p >= v) {
                return Err(Error::BadTriple {
                    triple: t.to_vec(),
                    reason: format!("point {p} out of range for v = {v}"),
                });
            }
            if t[0] == t[1] || t[0] == t[2] || t[1] == t[2] {
                return Err(Error::BadTriple {
                    triple: t.to_vec(),
                    reason: "repeated point".into(),
                });
            }
            source.push(t);
        }

        let mut triples: Vec<Triple> = source
            .iter()
            .map(|t| {
                let mut s = *t;
                s.sort_unstable();
                s
            })
            .collect();
        triples.sort_unstable();

        let mut third = vec![NONE; v * v];
        let mut block = vec![NONE; v * v];
        for (i, t) in triples.iter().enumerate() {
            for k in 0..3 {
                let (p, q, r) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
                if block[p * v + q] != NONE {
                    return Err(Error::PairDuplicated(p.min(q), p.max(q)));
                }
                block[p * v + q] = i;
                block[q * v + p] = i;
                third[p * v + q] = r;
                third[q * v + p] = r;
            }
        }
        for p in 0..v {
            for q in p + 1..v {
                if block[p * v + q] == NONE {
                    return Err(Error::PairMissing(p, q));
                }
            }
        }
        debug_assert_eq!(triples.len(), triple_count(v));

        Ok(SteinerTripleSystem {
            v,
            triples,
            source,
            third,
            block,
        })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    /// Number of triples, `v(v-1)/6`.
    pub fn b(&self) -> usize {
        self.triples.len()
    }

    /// Triples in canonical (sorted, lexicographic) order.
    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    /// Triples in the order and orientation they were supplied.
    pub fn source_triples(&self) -> &[Triple] {
        &self.source
    }

    fn check_point(&self, p: Point) -> Result<()> {
        if p >= self.v {
            Err(Error::PointOutOfRange {
                point: p,
                v: self.v,
            })
        } else {
            Ok(())
        }
    }

    /// The unique `z` such that `{p, q, z}` is a triple.
    pub fn third_point(&self, p: Point, q: Point) -> Result<Point> {
        self.check_point(p)?;
        self.check_point(q)?;
        if p == q {
            return Err(Error::SamePoint(p));
        }
        Ok(self.third[p * self.v + q])
    }

    /// Unchecked variant of [`third_point`](Self::third_point) for hot loops.
    #[inline]
    pub fn third(&self, p: Point, q: Point) -> Point {
        debug_assert!(p != q && p < self.v && q < self.v);
        self.third[p * self.v + q]
    }

    /// Index (in canonical order) of the triple through `p` and `q`.
    #[inline]
    pub fn triple_index(&self, p: Point, q: Point) -> usize {
        debug_assert!(p != q && p < self.v && q < self.v);
        self.block[p * self.v + q]
    }

    /// Index of the triple equal to `t` as a set, if it is one.
    pub fn find_triple(&self, t: [Point; 3]) -> Option<usize> {
        if t.iter().any(|&p| p >= self.v) || t[0] == t[1] {
            return None;
        }
        let i = self.triple_index(t[0], t[1]);
        (self.third(t[0], t[1]) == t[2]).then_some(i)
    }

    /// For each triple through `x`, the other two points (in canonical order).
    pub fn pencil(&self, x: Point) -> Vec<[Point; 2]> {
        let mut out: Vec<[Point; 2]> = (0..self.v)
            .filter(|&a| a != x && a < self.third(x, a))
            .map(|a| [a, self.third(x, a)])
            .collect();
        out.sort_unstable();
        out
    }

    /// A point `x` is Veblen when every two triples through it span a Pasch
    /// configuration (under both pairings of their remaining points).
    pub fn is_veblen_point(&self, x: Point) -> Result<bool> {
        self.check_point(x)?;
        Ok(self.veblen_unchecked(x))
    }

    pub(crate) fn veblen_unchecked(&self, x: Point) -> bool {
        let lines = self.pencil(x);
        for (i, &[a, b]) in lines.iter().enumerate() {
            for &[c, d] in &lines[i + 1..] {
                if self.third(a, c) != self.third(b, d) || self.third(a, d) != self.third(b, c) {
                    return false;
                }
            }
        }
        true
    }

    pub fn veblen_points(&self) -> BTreeSet<Point> {
        (0..self.v).filter(|&x| self.veblen_unchecked(x)).collect()
    }

    /// The system obtained by renaming every point `p` to `perm[p]`.
    pub fn relabel(&self, perm: &[Point]) -> Result<Self> {
        if perm.len() != self.v {
            return Err(Error::LengthMismatch {
                expected: self.v,
                got: perm.len(),
            });
        }
        SteinerTripleSystem::new(
            self.v,
            self.source
                .iter()
                .map(|t| [perm[t[0]], perm[t[1]], perm[t[2]]]),
        )
    }

    /// Returns a copy whose source order is the canonical order.
    pub fn canonical_order(&self) -> Self {
        let mut s = self.clone();
        s.source = s.triples.clone();
        s
    }

    /// `true` when `perm` maps every triple onto a triple.
    pub fn preserves(&self, perm: &[Point]) -> bool {
        perm.len() == self.v
            && self.triples.iter().all(|t| {
                let (p, q, r) = (perm[t[0]], perm[t[1]], perm[t[2]]);
                p < self.v && q < self.v && p != q && self.third(p, q) == r
            })
    }
}

impl PartialEq for SteinerTripleSystem {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && self.triples == other.triples
    }
}

impl Eq for SteinerTripleSystem {}

impl fmt::Debug for SteinerTripleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SteinerTripleSystem")
            .field("v", &self.v)
            .field("triples", &self.triples)
            .finish()
    }
}

/// Upper bound on the number of Veblen points of an STS(v).
///
/// The largest `2^c - 1` for which `2^c` divides `v + 1` and
/// `(v + 1) / 2^c` is 2 or 4 mod 6. Projective orders (`v = 2^k - 1`)
/// return `v` when `projective_allowed`; otherwise the bound is capped at
/// `(v - 7) / 8`, since a proper extension of index at most 4 is projective.
pub fn max_veblen_count(v: usize, projective_allowed: bool) -> Result<usize> {
    if !is_admissible(v) {
        return Err(Error::NotAdmissible(v));
    }
    let n = v + 1;
    if projective_allowed && n.is_power_of_two() && v >= 7 {
        return Ok(v);
    }
    let mut best = 0usize;
    let mut c = 0u32;
    while n.is_multiple_of(1usize << c) {
        let r = (n >> c) % 6;
        let k = (1usize << c) - 1;
        if (r == 2 || r == 4) && k < v {
            best = best.max(k);
        }
        c += 1;
    }
    if !projective_allowed {
        best = best.min(v.saturating_sub(7) / 8);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> SteinerTripleSystem {
        // 1-based labels from the classical presentation, shifted to 0-based
        let t = [
            [1, 2, 3],
            [1, 4, 5],
            [1, 6, 7],
            [2, 4, 6],
            [2, 5, 7],
            [3, 4, 7],
            [3, 5, 6],
        ];
        SteinerTripleSystem::new(7, t.iter().map(|t| t.map(|p| p - 1))).unwrap()
    }

    #[test]
    fn fano_is_valid_and_projective() {
        let s = fano();
        assert_eq!(s.b(), 7);
        assert_eq!(s.third_point(0, 1).unwrap(), 2);
        assert_eq!(s.veblen_points().len(), 7);
    }

    #[test]
    fn rejects_inadmissible_and_bad_triples() {
        assert!(matches!(
            SteinerTripleSystem::new(8, Vec::<[usize; 3]>::new()),
            Err(Error::NotAdmissible(8))
        ));
        assert!(matches!(
            SteinerTripleSystem::new(7, [[0, 0, 1]]),
            Err(Error::BadTriple { .. })
        ));
        assert!(matches!(
            SteinerTripleSystem::new(7, [[0, 1, 7]]),
            Err(Error::BadTriple { .. })
        ));
    }

    #[test]
    fn missing_and_duplicated_pairs() {
        let mut t: Vec<[usize; 3]> = fano().triples().to_vec();
        t.pop();
        assert!(matches!(
            SteinerTripleSystem::new(7, &t),
            Err(Error::PairMissing(..))
        ));
        t.push([0, 1, 3]);
        assert!(matches!(
            SteinerTripleSystem::new(7, &t),
            Err(Error::PairDuplicated(0, 1))
        ));
    }

    #[test]
    fn third_point_errors() {
        let s = fano();
        assert!(matches!(s.third_point(2, 2), Err(Error::SamePoint(2))));
        assert!(matches!(
            s.third_point(0, 9),
            Err(Error::PointOutOfRange { .. })
        ));
    }

    #[test]
    fn veblen_bounds() {
        assert_eq!(max_veblen_count(19, true).unwrap(), 1);
        assert_eq!(max_veblen_count(19, false).unwrap(), 1);
        assert_eq!(max_veblen_count(31, false).unwrap(), 3);
        assert_eq!(max_veblen_count(31, true).unwrap(), 31);
        assert_eq!(max_veblen_count(15, true).unwrap(), 15);
        assert_eq!(max_veblen_count(15, false).unwrap(), 1);
        assert_eq!(max_veblen_count(27, false).unwrap(), 1);
        assert_eq!(max_veblen_count(9, true).unwrap(), 0);
        assert_eq!(max_veblen_count(13, true).unwrap(), 0);
        assert!(max_veblen_count(11, true).is_err());
    }

    #[test]
    fn relabel_preserves_validity() {
        let s = fano();
        let perm = [6, 5, 4, 3, 2, 1, 0];
        let r = s.relabel(&perm).unwrap();
        assert_eq!(r.b(), 7);
        assert!(s.preserves(&[0, 1, 2, 3, 4, 5, 6]));
        // swapping 0 and 1 fixes {0,1,2} but breaks {0,3,4}
        assert!(!s.preserves(&[1, 0, 2, 3, 4, 5, 6]));
    }
}
