//! Reference systems: the small designs used as quotients, the three
//! STS(19)s with a unique Veblen point, and the projective and affine
//! families.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sts::SteinerTripleSystem;

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    #[serde(skip)]
    pub system: SteinerTripleSystem,
    pub provenance: String,
    pub known_veblen_count: Option<usize>,
}

/// Column tables: blocks of three rows, one triple per column. Labels are
/// decimal, or single hex digits `a`-`e` for 10-14.
struct Table {
    name: &'static str,
    aliases: &'static [&'static str],
    v: usize,
    base: usize,
    rows: &'static [&'static str],
    provenance: &'static str,
    veblen: Option<usize>,
}

const TABLES: &[Table] = &[
    Table {
        name: "sts9",
        aliases: &[],
        v: 9,
        base: 1,
        rows: &[
            "1 1 1 1 2 2 2 3 3 4 4 6",
            "2 3 4 5 3 5 6 5 7 5 8 7",
            "8 6 7 9 4 7 9 8 9 6 9 8",
        ],
        provenance: "STS(9), column table with points 1-9",
        veblen: Some(0),
    },
    Table {
        name: "sts9-example",
        aliases: &["sts9-ag"],
        v: 9,
        base: 1,
        // grid labelling P1..P9 of AG(2,3), row by row
        rows: &[
            "1 1 1 1 2 2 2 3 3 3 4 7",
            "2 4 5 6 4 5 6 4 5 6 5 8",
            "3 7 9 8 9 8 7 8 7 9 6 9",
        ],
        provenance: "AG(2,3) with points P1..P9 on a 3x3 grid (row-major)",
        veblen: Some(0),
    },
    Table {
        name: "sts13-noncyclic",
        aliases: &["sts13-1"],
        v: 13,
        base: 0,
        rows: &[
            "1 2 3 4 5 6 7 8 9 6 11 12 0 2 3 4 5 6 7 8 9 10 11 12 0 1",
            "3 4 5 10 7 8 9 10 11 12 0 1 2 5 6 7 8 9 10 11 12 0 1 2 3 4",
            "9 6 11 12 0 1 2 3 4 5 6 7 8 10 7 8 9 10 11 12 0 1 2 3 4 5",
        ],
        provenance: "STS(13) #1 (non-cyclic)",
        veblen: Some(0),
    },
    Table {
        name: "sts13-cyclic",
        aliases: &["sts13-2"],
        v: 13,
        base: 0,
        rows: &[
            "1 2 3 4 5 6 7 8 9 10 11 12 0 2 3 4 5 6 7 8 9 10 11 12 0 1",
            "3 4 5 6 7 8 9 10 11 12 0 1 2 5 6 7 8 9 10 11 12 0 1 2 3 4",
            "9 10 11 12 0 1 2 3 4 5 6 7 8 6 7 8 9 10 11 12 0 1 2 3 4 5",
        ],
        provenance: "STS(13) #2 (cyclic), developed from {1,3,9} and {0,3,4} mod 13",
        veblen: Some(0),
    },
    Table {
        name: "sts15-2",
        aliases: &[],
        v: 15,
        base: 0,
        rows: &[
            "0 0 0 0 0 0 0 1 1 1 1 1 1 2 2 2 2 2 2 3 3 3 3 4 4 4 4 5 5 5 5 6 6 6 6",
            "1 3 5 7 9 b d 3 4 7 8 b c 3 4 7 8 b c 7 8 9 a 7 8 9 a 7 8 9 a 7 8 9 a",
            "2 4 6 8 a c e 5 6 9 a d e 6 5 a 9 e d b c d e c b e d e d c b d e b c",
        ],
        provenance: "STS(15) #2 in the standard numbering of the 80 STS(15)s",
        veblen: Some(1),
    },
    Table {
        name: "sts15-3",
        aliases: &[],
        v: 15,
        base: 0,
        rows: &[
            "0 0 0 0 0 0 0 1 1 1 1 1 1 2 2 2 2 2 2 3 3 3 3 4 4 4 4 5 5 5 5 6 6 6 6",
            "1 3 5 7 9 b d 3 4 7 8 b c 3 4 7 8 b c 7 8 9 a 7 8 9 a 7 8 9 a 7 8 9 a",
            "2 4 6 8 a c e 5 6 9 a d e 6 5 a 9 e d b c d e d e b c e d c b c b e d",
        ],
        provenance: "STS(15) #3 in the standard numbering of the 80 STS(15)s",
        veblen: Some(0),
    },
    Table {
        name: "sts15-7",
        aliases: &[],
        v: 15,
        base: 0,
        rows: &[
            "0 0 0 0 0 0 0 1 1 1 1 1 1 2 2 2 2 2 2 3 3 3 3 4 4 4 4 5 5 5 5 6 6 6 6",
            "1 3 5 7 9 b d 3 4 7 8 b c 3 4 7 8 b c 7 8 9 a 7 8 9 a 7 8 9 a 7 8 9 a",
            "2 4 6 8 a c e 5 6 9 a d e 6 5 a 9 e d b d e c e c b d c e d b d b c e",
        ],
        provenance: "STS(15) #7 in the standard numbering of the 80 STS(15)s",
        veblen: Some(0),
    },
    Table {
        name: "sts15-61",
        aliases: &[],
        v: 15,
        base: 0,
        rows: &[
            "0 0 0 0 0 0 0 1 1 1 1 1 1 2 2 2 2 2 2 3 3 3 3 4 4 4 4 5 5 5 5 6 6 6 6",
            "1 3 5 7 9 b d 3 4 7 8 a c 3 4 7 8 9 b 7 8 9 c 7 8 9 a 7 8 a b 7 8 9 a",
            "2 4 6 8 a c e 5 6 9 b d e 6 5 a e c d b a e d e c d b d 9 c e c d b e",
        ],
        provenance: "STS(15) #61 in the standard numbering of the 80 STS(15)s",
        veblen: Some(0),
    },
    Table {
        name: "sts15-80",
        aliases: &[],
        v: 15,
        base: 0,
        rows: &[
            "0 0 0 0 0 0 0 1 1 1 1 1 1 2 2 2 2 2 2 3 3 3 3 4 4 4 4 5 5 5 6 6 6 7 8",
            "1 3 5 7 9 b d 3 4 6 9 a c 3 4 5 7 8 b 6 7 8 a 5 8 a b 7 8 9 7 9 c 9 a",
            "2 4 6 8 a c e 5 7 8 b d e 9 6 a e c d b c d e d 9 c e b e c a e d d b",
        ],
        provenance: "STS(15) #80 in the standard numbering of the 80 STS(15)s",
        veblen: Some(0),
    },
    Table {
        name: "sts19-S0",
        aliases: &[],
        v: 19,
        base: 0,
        rows: &[
            "0 0 0 0 0 0 0 0 0 1 1 1 1 1 1 1 1 2 2",
            "1 2 3 4 5 6 7 8 9 2 4 5 6 11 13 14 15 4 5",
            "10 11 12 13 14 15 16 17 18 3 7 9 8 12 16 18 17 9 8",
            "2 2 2 2 2 3 3 3 3 3 3 3 4 4 4 4 4 5 5",
            "6 10 13 14 15 4 5 6 10 13 14 15 5 10 11 12 14 10 11",
            "7 12 18 17 16 8 7 9 11 17 16 18 6 16 18 17 15 18 17",
            "5 5 6 6 6 6 7 7 7 7 7 8 8 8 8 9 9 9 9",
            "12 13 10 11 12 13 8 10 11 12 17 10 11 12 16 10 11 12 16",
            "16 15 17 16 18 14 9 13 15 14 18 15 14 13 18 14 13 15 17",
        ],
        provenance: "STS(19) with unique Veblen point 0: null factor system over AG(2,3)",
        veblen: Some(1),
    },
    Table {
        name: "sts19-S1",
        aliases: &[],
        v: 19,
        base: 0,
        rows: &[
            "0 0 0 0 0 0 0 0 0 1 1 1 1 1 1 1 1 2 2",
            "1 2 3 4 5 6 7 8 9 2 4 5 6 11 13 14 15 4 5",
            "10 11 12 13 14 15 16 17 18 3 7 9 8 12 16 18 17 9 8",
            "2 2 2 2 2 3 3 3 3 3 3 3 4 4 4 4 4 5 5",
            "6 10 13 14 15 4 5 6 9 10 13 14 5 10 11 12 14 10 11",
            "7 12 18 17 16 8 7 18 15 11 17 16 6 16 18 17 15 18 17",
            "5 5 6 6 6 6 7 7 7 7 7 8 8 8 8 9 9 9 12",
            "12 13 9 10 11 13 8 10 11 12 17 10 11 12 16 10 11 16 15",
            "16 15 12 17 16 14 9 13 15 14 18 15 14 13 18 14 13 17 18",
        ],
        provenance: "STS(19) with unique Veblen point 0: one nonzero triple {P3,P6,P9}",
        veblen: Some(1),
    },
    Table {
        name: "sts19-S2",
        aliases: &[],
        v: 19,
        base: 0,
        rows: &[
            "0 0 0 0 0 0 0 0 0 1 1 1 1 1 1 1 1 2 2",
            "1 2 3 4 5 6 7 8 9 2 4 5 6 11 13 14 15 4 5",
            "10 11 12 13 14 15 16 17 18 3 7 9 8 12 16 18 17 9 8",
            "2 2 2 2 2 3 3 3 3 3 3 3 4 4 4 4 4 5 5",
            "6 10 13 14 15 4 5 6 9 10 13 14 5 10 11 12 14 10 11",
            "7 12 18 17 16 8 7 18 15 11 17 16 6 16 18 17 15 18 17",
            "5 5 6 6 6 6 7 7 7 7 7 8 8 8 8 9 9 12 16",
            "12 13 9 10 11 13 8 9 10 11 12 9 10 11 12 10 11 15 17",
            "16 15 12 17 16 14 18 17 13 15 14 16 15 14 13 14 13 18 18",
        ],
        provenance: "STS(19) with unique Veblen point 0: nonzero on {P3,P6,P9} and {P7,P8,P9}",
        veblen: Some(1),
    },
];

/// Parses a single label: decimal, or a hex digit `a`-`f`.
pub fn parse_label(tok: &str) -> Option<usize> {
    if tok.chars().all(|c| c.is_ascii_digit()) {
        tok.parse().ok()
    } else if tok.len() == 1 {
        usize::from_str_radix(tok, 16).ok()
    } else {
        None
    }
}

/// Triples from column-table rows (blocks of three rows).
pub fn parse_columns(rows: &[&str], base: usize) -> Result<Vec<[usize; 3]>> {
    if !rows.len().is_multiple_of(3) {
        return Err(Error::Parse {
            line: rows.len(),
            msg: "column tables come in blocks of three rows".into(),
        });
    }
    let mut triples = Vec::new();
    for (blk, chunk) in rows.chunks(3).enumerate() {
        let cols: Vec<Vec<usize>> = chunk
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.split_whitespace()
                    .map(|tok| {
                        parse_label(tok)
                            .and_then(|p| p.checked_sub(base))
                            .ok_or_else(|| Error::Parse {
                                line: blk * 3 + r + 1,
                                msg: format!("bad label `{tok}`"),
                            })
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        if cols[0].len() != cols[1].len() || cols[1].len() != cols[2].len() {
            return Err(Error::Parse {
                line: blk * 3 + 1,
                msg: "rows of a block differ in length".into(),
            });
        }
        triples.extend((0..cols[0].len()).map(|c| [cols[0][c], cols[1][c], cols[2][c]]));
    }
    Ok(triples)
}

/// `PG(n, 2)`: nonzero vectors of GF(2)^(n+1); vector `x` is point `x - 1`.
pub fn pg(n: u32) -> SteinerTripleSystem {
    assert!(n >= 2, "PG(n,2) needs n >= 2");
    let size = 1usize << (n + 1);
    let mut triples = Vec::new();
    for u in 1..size {
        for w in u + 1..size {
            let s = u ^ w;
            if s > w {
                triples.push([u - 1, w - 1, s - 1]);
            }
        }
    }
    SteinerTripleSystem::new(size - 1, triples).expect("projective space is a Steiner system")
}

/// `AG(n, 3)`: vectors of GF(3)^n as base-3 integers (first coordinate most
/// significant); lines `{u, w, -u-w}`.
pub fn ag(n: u32) -> SteinerTripleSystem {
    assert!(n >= 2, "AG(n,3) needs n >= 2");
    let size = 3usize.pow(n);
    let digits = |mut x: usize| -> Vec<usize> {
        let mut d = vec![0; n as usize];
        for k in (0..n as usize).rev() {
            d[k] = x % 3;
            x /= 3;
        }
        d
    };
    let undigits = |d: &[usize]| d.iter().fold(0, |a, &x| a * 3 + x);
    let mut triples = Vec::new();
    for u in 0..size {
        for w in u + 1..size {
            let (du, dw) = (digits(u), digits(w));
            let third: Vec<usize> = du.iter().zip(&dw).map(|(a, b)| (6 - a - b) % 3).collect();
            let z = undigits(&third);
            if z > w {
                triples.push([u, w, z]);
            }
        }
    }
    SteinerTripleSystem::new(size, triples).expect("affine space is a Steiner system")
}

/// Catalog names in listing order (aliases excluded).
pub fn names() -> Vec<&'static str> {
    let mut out: Vec<&str> = vec!["fano"];
    out.extend(TABLES.iter().take(2).map(|t| t.name));
    out.extend(TABLES.iter().skip(2).take(2).map(|t| t.name));
    out.push("sts15-1");
    out.extend(TABLES.iter().skip(4).map(|t| t.name));
    out.extend(["pg42", "ag33"]);
    out
}

pub fn get(name: &str) -> Result<CatalogEntry> {
    let entry = |system, provenance: &str, known| CatalogEntry {
        name: name.to_string(),
        system,
        provenance: provenance.to_string(),
        known_veblen_count: known,
    };
    match name {
        "fano" | "pg22" | "sts7" => {
            return Ok(entry(
                pg(2),
                "PG(2,2), points are the nonzero vectors of GF(2)^3",
                Some(7),
            ))
        }
        "sts15-1" | "pg32" => {
            return Ok(entry(pg(3), "PG(3,2) = STS(15) #1", Some(15)));
        }
        "pg42" => return Ok(entry(pg(4), "PG(4,2)", Some(31))),
        "ag23" => return Ok(entry(ag(2), "AG(2,3)", Some(0))),
        "ag33" => return Ok(entry(ag(3), "AG(3,3)", Some(0))),
        _ => {}
    }
    let table = TABLES
        .iter()
        .find(|t| t.name == name || t.aliases.contains(&name))
        .ok_or_else(|| Error::UnknownName(name.to_string()))?;
    let triples = parse_columns(table.rows, table.base)?;
    let system = SteinerTripleSystem::new(table.v, triples)?;
    Ok(entry(system, table.provenance, table.veblen))
}
