//! Steiner loops: the commutative exponent-2 loop `S ∪ {Ω}` of a triple system.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::sts::SteinerTripleSystem;

/// Index of the identity element Ω.
pub const OMEGA: usize = 0;

/// Cayley table of a Steiner loop of order `n`. Element 0 is Ω and element
/// `i + 1` corresponds to point `i` of the underlying system.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SteinerLoop {
    n: usize,
    table: Vec<u16>,
}

impl SteinerLoop {
    /// Builds a loop from a raw row-major table after checking the Steiner
    /// loop laws.
    pub fn from_table(n: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != n * n {
            return Err(Error::LengthMismatch {
                expected: n * n,
                got: table.len(),
            });
        }
        if n > u16::MAX as usize {
            return Err(Error::Unsupported(format!("loop order {n}")));
        }
        let l = SteinerLoop {
            n,
            table: table.into_iter().map(|x| x as u16).collect(),
        };
        l.check()?;
        Ok(l)
    }

    /// Builds a table from a product function; laws are checked.
    pub fn from_fn(n: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(mul(x, y));
            }
        }
        Self::from_table(n, table)
    }

    fn check(&self) -> Result<()> {
        let n = self.n;
        if n == 0 {
            return Err(Error::NotSteiner("empty loop".into()));
        }
        let mut seen = vec![0usize; n];
        for x in 0..n {
            if self.mul(OMEGA, x) != x || self.mul(x, OMEGA) != x {
                return Err(Error::NotSteiner(format!("Ω is not an identity at {x}")));
            }
            if self.mul(x, x) != OMEGA {
                return Err(Error::NotSteiner(format!("{x}·{x} ≠ Ω")));
            }
            for y in 0..n {
                let z = self.mul(x, y);
                if z >= n {
                    return Err(Error::NotSteiner(format!("{x}·{y} = {z} out of range")));
                }
                if z != self.mul(y, x) {
                    return Err(Error::NotSteiner(format!("{x}·{y} ≠ {y}·{x}")));
                }
                if seen[z] == x + 1 {
                    return Err(Error::NotSteiner(format!("row {x} repeats {z}")));
                }
                seen[z] = x + 1;
            }
        }
        // x·y = z must close up into the triple {x, y, z}
        for x in 1..n {
            for y in 1..n {
                if x != y {
                    let z = self.mul(x, y);
                    if z == OMEGA || self.mul(x, z) != y {
                        return Err(Error::NotSteiner(format!(
                            "{x}·{y} = {z} does not determine a triple"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y] as usize
    }

    /// `true` iff `z` associates with every pair (commutativity is automatic).
    pub fn is_central(&self, z: usize) -> bool {
        let n = self.n;
        for x in 0..n {
            let zx = self.mul(z, x);
            for y in 0..n {
                let xy = self.mul(x, y);
                if self.mul(z, xy) != self.mul(zx, y) {
                    return false;
                }
                if self.mul(x, self.mul(z, y)) != self.mul(self.mul(x, z), y) {
                    return false;
                }
                if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                    return false;
                }
            }
        }
        true
    }

    /// All elements associating with every pair; always contains Ω.
    pub fn center(&self) -> BTreeSet<usize> {
        (0..self.n).filter(|&z| self.is_central(z)).collect()
    }

    pub fn is_group(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = self.mul(x, y);
                (0..n).all(|z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        })
    }

    /// Cayley table as text: `n` lines of `n` space-separated indices.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if y > 0 {
                    s.push(' ');
                }
                write!(s, "{}", self.mul(x, y)).unwrap();
            }
            s.push('\n');
        }
        s
    }
}

pub fn loop_from_sts(sts: &SteinerTripleSystem) -> SteinerLoop {
    let n = sts.v() + 1;
    let mut table = vec![0u16; n * n];
    for x in 0..n {
        for y in 0..n {
            table[x * n + y] = match (x, y) {
                (0, _) => y,
                (_, 0) => x,
                _ if x == y => 0,
                _ => sts.third(x - 1, y - 1) + 1,
            } as u16;
        }
    }
    SteinerLoop { n, table }
}

/// Recovers the triple system: `{x, y, x·y}` over all non-identity pairs.
pub fn sts_from_loop(l: &SteinerLoop) -> Result<SteinerTripleSystem> {
    l.check()?;
    let v = l.n - 1;
    let mut triples = Vec::new();
    for x in 1..l.n {
        for y in x + 1..l.n {
            let z = l.mul(x, y);
            if z > y {
                triples.push([x - 1, y - 1, z - 1]);
            }
        }
    }
    SteinerTripleSystem::new(v, triples).map_err(|e| Error::NotSteiner(e.to_string()))
}

/// Center of a loop, translated back to points (`Ω` dropped).
pub fn central_points(l: &SteinerLoop) -> BTreeSet<usize> {
    l.center()
        .into_iter()
        .filter(|&z| z != OMEGA)
        .map(|z| z - 1)
        .collect()
}
