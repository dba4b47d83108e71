//! Bit-level GF(2) linear algebra on `u128` words.

/// Packed vector over GF(2) (bit `i` is coordinate `i`).
pub type Word = u128;

/// Mask of the low `n` bits.
#[inline]
pub fn low_mask(n: u32) -> Word {
    if n >= 128 {
        Word::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Scatters the low bits of `x` into the set positions of `mask`
/// (ascending).
#[inline]
pub fn deposit(mut x: Word, mut mask: Word) -> Word {
    let mut out = 0;
    while mask != 0 {
        let bit = mask & mask.wrapping_neg();
        if x & 1 != 0 {
            out |= bit;
        }
        x >>= 1;
        mask ^= bit;
    }
    out
}

/// Gathers the bits of `x` at the set positions of `mask` into the low bits.
#[inline]
pub fn extract(x: Word, mut mask: Word) -> Word {
    let mut out = 0;
    let mut k = 0;
    while mask != 0 {
        let pos = mask.trailing_zeros();
        out |= ((x >> pos) & 1) << k;
        k += 1;
        mask &= mask - 1;
    }
    out
}

/// Basis in fully reduced echelon form: every vector's highest bit is its
/// pivot and no other vector has that bit set.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<Word>,
    pivot_mask: Word,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: Word) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        let pivot = 1u128 << (127 - r.leading_zeros());
        for row in &mut self.rows {
            if *row & pivot != 0 {
                *row ^= r;
            }
        }
        self.rows.push(r);
        self.rows.sort_unstable_by(|a, b| b.cmp(a));
        self.pivot_mask |= pivot;
        true
    }

    /// The least element of `v + span`.
    #[inline]
    pub fn reduce(&self, mut v: Word) -> Word {
        for &row in &self.rows {
            let pivot = 1u128 << (127 - row.leading_zeros());
            if v & pivot != 0 {
                v ^= row;
            }
        }
        v
    }

    pub fn contains(&self, v: Word) -> bool {
        self.reduce(v) == 0
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Rows in descending pivot order.
    pub fn rows(&self) -> &[Word] {
        &self.rows
    }

    pub fn pivot_mask(&self) -> Word {
        self.pivot_mask
    }
}

/// A linear map `GF(2)^n -> GF(2)^m` evaluated by byte-indexed lookup
/// tables, one per input byte.
#[derive(Clone)]
pub struct LinearMap {
    n: u32,
    tables: Vec<Box<[Word; 256]>>,
}

impl LinearMap {
    /// `columns[i]` is the image of the `i`-th unit vector.
    pub fn from_columns(columns: &[Word]) -> Self {
        let n = columns.len() as u32;
        let tables = columns
            .chunks(8)
            .map(|chunk| {
                let mut t = Box::new([0 as Word; 256]);
                for byte in 1..256usize {
                    let low = byte.trailing_zeros() as usize;
                    t[byte] = t[byte & (byte - 1)] ^ chunk.get(low).copied().unwrap_or(0);
                }
                t
            })
            .collect();
        LinearMap { n, tables }
    }

    pub fn input_bits(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn apply(&self, x: Word) -> Word {
        let mut out = 0;
        let mut x = x;
        for t in &self.tables {
            out ^= t[(x & 0xff) as usize];
            x >>= 8;
        }
        out
    }
}
