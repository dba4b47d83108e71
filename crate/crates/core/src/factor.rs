//! Factor systems `f: L_Q × L_Q -> GF(2)^t` packed into integers, the
//! coboundary space B², and streaming of coset representatives of Ext/B².
//!
//! A factor system is constant on the pairs of each triple of the quotient,
//! so it is determined by one value per triple. Values are packed
//! big-endian by triple: the value of triple `i` (0-based, canonical order)
//! occupies bits `t(b-1-i) .. t(b-i)`, and within that field the first
//! GF(2) coordinate is the most significant bit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, EchelonBasis, Word};
use crate::loops::OMEGA;
use crate::sts::{Point, SteinerTripleSystem};

/// Packed factor system code.
pub type Code = Word;

/// Widest supported code; one bit of `u128` is kept free so shifts by `tb`
/// stay defined.
pub const MAX_CODE_BITS: u32 = 127;

/// One fundamental pair per triple: the two smallest points of the `i`-th
/// triple in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalPairs {
    pub pairs: Vec<[Point; 2]>,
}

pub fn fundamental_pairs(sts: &SteinerTripleSystem) -> FundamentalPairs {
    FundamentalPairs {
        pairs: sts.triples().iter().map(|t| [t[0], t[1]]).collect(),
    }
}

/// Kernel element from its GF(2) coordinates, first coordinate most
/// significant: `(0,1) -> 1`, `(1,0) -> 2`.
pub fn kernel_element(coords: &[u8]) -> u32 {
    coords.iter().fold(0, |acc, &c| (acc << 1) | (c & 1) as u32)
}

/// Inverse of [`kernel_element`].
pub fn kernel_coords(x: u32, t: u32) -> Vec<u8> {
    (0..t).rev().map(|k| ((x >> k) & 1) as u8).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FactorSystem {
    pub code: Code,
    pub t: u32,
    pub b: usize,
}

fn check_shape(t: u32, b: usize) -> Result<()> {
    if t == 0 || t > 8 {
        return Err(Error::Unsupported(format!("kernel dimension t = {t}")));
    }
    if t as usize * b > MAX_CODE_BITS as usize {
        return Err(Error::Unsupported(format!(
            "t·b = {} exceeds {MAX_CODE_BITS} bits",
            t as usize * b
        )));
    }
    Ok(())
}

impl FactorSystem {
    pub fn new(code: Code, t: u32, b: usize) -> Result<Self> {
        check_shape(t, b)?;
        if code > gf2::low_mask(t * b as u32) {
            return Err(Error::InvalidArgument(format!(
                "code {code} does not fit in t·b = {} bits",
                t as usize * b
            )));
        }
        Ok(FactorSystem { code, t, b })
    }

    pub fn zero(t: u32, b: usize) -> Result<Self> {
        Self::new(0, t, b)
    }

    /// Packs one kernel value per triple.
    pub fn encode(t: u32, values: &[u32]) -> Result<Self> {
        let b = values.len();
        check_shape(t, b)?;
        let mut code: Code = 0;
        for &x in values {
            if x >> t != 0 {
                return Err(Error::LengthMismatch {
                    expected: t as usize,
                    got: 32 - x.leading_zeros() as usize,
                });
            }
            code = (code << t) | x as Code;
        }
        Ok(FactorSystem { code, t, b })
    }

    /// Like [`encode`](Self::encode) but from explicit coordinate vectors.
    pub fn encode_coords(t: u32, values: &[Vec<u8>]) -> Result<Self> {
        let mut packed = Vec::with_capacity(values.len());
        for v in values {
            if v.len() != t as usize {
                return Err(Error::LengthMismatch {
                    expected: t as usize,
                    got: v.len(),
                });
            }
            packed.push(kernel_element(v));
        }
        Self::encode(t, &packed)
    }

    pub fn bits(&self) -> u32 {
        self.t * self.b as u32
    }

    /// Value on triple `i` (canonical order).
    #[inline]
    pub fn value(&self, i: usize) -> u32 {
        let shift = self.t as usize * (self.b - 1 - i);
        ((self.code >> shift) & gf2::low_mask(self.t)) as u32
    }

    pub fn decode(&self) -> Vec<u32> {
        (0..self.b).map(|i| self.value(i)).collect()
    }

    /// `f(P, Q)` for loop elements of the quotient (0 is Ω̄, `i + 1` is
    /// point `i`).
    pub fn evaluate(&self, quotient: &SteinerTripleSystem, p: usize, q: usize) -> u32 {
        if p == OMEGA || q == OMEGA || p == q {
            0
        } else {
            self.value(quotient.triple_index(p - 1, q - 1))
        }
    }

    pub fn xor(&self, other: &FactorSystem) -> Result<FactorSystem> {
        if (self.t, self.b) != (other.t, other.b) {
            return Err(Error::DimensionMismatch(format!(
                "(t, b) = ({}, {}) vs ({}, {})",
                self.t, self.b, other.t, other.b
            )));
        }
        Ok(FactorSystem {
            code: self.code ^ other.code,
            ..*self
        })
    }
}

/// `|Ext| = (2^t)^b`.
pub fn ext_count(t: u32, b: usize) -> u128 {
    let bits = t as usize * b;
    assert!(bits <= MAX_CODE_BITS as usize, "t·b = {bits} too large");
    1u128 << bits
}

/// `δ¹φ`: value `φ(P) + φ(Q) + φ(PQ)` on the fundamental pair `{P, Q}`.
/// `phi` is indexed by loop element and must vanish on Ω̄.
pub fn coboundary(quotient: &SteinerTripleSystem, t: u32, phi: &[u32]) -> Result<FactorSystem> {
    if phi.len() != quotient.v() + 1 {
        return Err(Error::LengthMismatch {
            expected: quotient.v() + 1,
            got: phi.len(),
        });
    }
    if phi[OMEGA] != 0 {
        return Err(Error::InvalidArgument("φ(Ω̄) must be zero".into()));
    }
    let values: Vec<u32> = quotient
        .triples()
        .iter()
        .map(|tr| phi[tr[0] + 1] ^ phi[tr[1] + 1] ^ phi[tr[2] + 1])
        .collect();
    FactorSystem::encode(t, &values)
}

/// The subgroup `B²` of coboundaries, kept as a reduced echelon basis so
/// that reducing a code yields the least element of its coset.
#[derive(Clone, Debug)]
pub struct CoboundarySpace {
    t: u32,
    b: usize,
    basis: EchelonBasis,
    free_mask: Word,
}

impl CoboundarySpace {
    /// Spans `δ¹φ` for the indicator maps `φ_{P,e}` (`e` a unit vector of
    /// GF(2)^t placed at the single point `P`).
    pub fn new(quotient: &SteinerTripleSystem, t: u32) -> Result<Self> {
        let b = quotient.b();
        check_shape(t, b)?;
        let mut basis = EchelonBasis::new();
        for p in 0..quotient.v() {
            for k in 0..t {
                let mut phi = vec![0u32; quotient.v() + 1];
                phi[p + 1] = 1 << k;
                basis.insert(coboundary(quotient, t, &phi)?.code);
            }
        }
        let free_mask = gf2::low_mask(t * b as u32) & !basis.pivot_mask();
        Ok(CoboundarySpace {
            t,
            b,
            basis,
            free_mask,
        })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Basis codes (reduced echelon form, descending pivots).
    pub fn basis(&self) -> &[Code] {
        self.basis.rows()
    }

    /// `log2` of the number of cosets, `tb - dim`.
    pub fn coset_bits(&self) -> u32 {
        self.t * self.b as u32 - self.dim() as u32
    }

    pub fn coset_count(&self) -> u128 {
        1u128 << self.coset_bits()
    }

    /// Least code in the coset of `code`.
    #[inline]
    pub fn reduce(&self, code: Code) -> Code {
        self.basis.reduce(code)
    }

    pub fn is_coboundary(&self, code: Code) -> bool {
        self.basis.contains(code)
    }

    /// Bits that are free in reduced codes.
    pub fn free_mask(&self) -> Word {
        self.free_mask
    }

    /// Position of a coset in ascending representative order.
    #[inline]
    pub fn coset_index(&self, code: Code) -> u128 {
        gf2::extract(self.reduce(code), self.free_mask)
    }

    /// Representative of the coset with the given index.
    #[inline]
    pub fn representative(&self, index: u128) -> Code {
        gf2::deposit(index, self.free_mask)
    }

    pub fn factor_system(&self, code: Code) -> FactorSystem {
        FactorSystem {
            code,
            t: self.t,
            b: self.b,
        }
    }

    /// Ascending stream of coset representatives in blocks of `block_size`.
    pub fn representatives(&self, block_size: usize) -> Result<RepresentativeBlocks<'_>> {
        self.representatives_in(0..self.coset_count(), block_size)
    }

    /// Representatives with coset index in `range`, so that disjoint ranges
    /// can be handed to independent workers.
    pub fn representatives_in(
        &self,
        range: std::ops::Range<u128>,
        block_size: usize,
    ) -> Result<RepresentativeBlocks<'_>> {
        if block_size == 0 {
            return Err(Error::InvalidArgument(
                "block size must be at least 1".into(),
            ));
        }
        Ok(RepresentativeBlocks {
            space: self,
            next: range.start,
            end: range.end.min(self.coset_count()),
            block_size: block_size as u128,
        })
    }
}

/// Iterator over blocks of coset representatives in ascending order.
pub struct RepresentativeBlocks<'a> {
    space: &'a CoboundarySpace,
    next: u128,
    end: u128,
    block_size: u128,
}

impl Iterator for RepresentativeBlocks<'_> {
    type Item = Vec<Code>;

    fn next(&mut self) -> Option<Vec<Code>> {
        if self.next >= self.end {
            return None;
        }
        let stop = (self.next + self.block_size).min(self.end);
        let block = (self.next..stop)
            .map(|i| self.space.representative(i))
            .collect();
        self.next = stop;
        Some(block)
    }
}

/// The header line of a representative dump.
pub fn dump_header(space: &CoboundarySpace) -> String {
    format!("# t={} b={} dim={}", space.t(), space.b(), space.dim())
}
