//! Text and JSON formats for triple systems and factor-system dumps.
//!
//! The plain text format is a `v=<int>` header followed by one triple per
//! line; `#` starts a comment. Labels are decimal, and single hex digits
//! `a`-`f` are accepted on input.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::catalog::{parse_columns, parse_label};
use crate::error::{Error, Result};
use crate::factor::{dump_header, CoboundarySpace, Code};
use crate::sts::{SteinerTripleSystem, Triple};

#[derive(Serialize, Deserialize)]
struct JsonSts {
    v: usize,
    triples: Vec<Triple>,
}

pub fn to_text(sts: &SteinerTripleSystem) -> String {
    let mut s = format!("v={}\n", sts.v());
    for t in sts.source_triples() {
        writeln!(s, "{} {} {}", t[0], t[1], t[2]).unwrap();
    }
    s
}

pub fn from_text(text: &str) -> Result<SteinerTripleSystem> {
    let mut v = None;
    let mut triples = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: n + 1, msg };
        if v.is_none() {
            let value = line
                .strip_prefix("v=")
                .or_else(|| line.strip_prefix("v ="))
                .ok_or_else(|| err("expected a `v=<int>` header".into()))?;
            v = Some(
                value
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| err(format!("bad point count: {e}")))?,
            );
            continue;
        }
        let labels: Vec<usize> = line
            .split_whitespace()
            .map(|tok| parse_label(tok).ok_or_else(|| err(format!("bad label `{tok}`"))))
            .collect::<Result<_>>()?;
        triples.push(labels);
    }
    let v = v.ok_or_else(|| Error::Parse {
        line: 0,
        msg: "missing `v=<int>` header".into(),
    })?;
    SteinerTripleSystem::new(v, triples)
}

pub fn to_json(sts: &SteinerTripleSystem) -> String {
    serde_json::to_string(&JsonSts {
        v: sts.v(),
        triples: sts.source_triples().to_vec(),
    })
    .expect("plain data serializes")
}

pub fn from_json(text: &str) -> Result<SteinerTripleSystem> {
    let j: JsonSts = serde_json::from_str(text)?;
    SteinerTripleSystem::new(j.v, j.triples)
}

/// Reads any supported format, guessing from the first non-blank character.
pub fn parse_any(text: &str) -> Result<SteinerTripleSystem> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        from_json(text)
    } else if trimmed.starts_with('v') || trimmed.starts_with('#') {
        from_text(text)
    } else {
        let rows: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        let triples = parse_columns(&rows, 0)?;
        let v = triples.iter().flatten().max().map_or(0, |m| m + 1);
        SteinerTripleSystem::new(v, triples)
    }
}

/// Column table: three rows per block, one triple per column, in source
/// order. Blocks hold at most `width` columns. Points of an STS(15) are
/// written as hex digits.
pub fn to_columns(sts: &SteinerTripleSystem, width: usize) -> String {
    let width = width.max(1);
    let hex = sts.v() == 15;
    let label = |p: usize| {
        if hex {
            format!("{p:x}")
        } else {
            p.to_string()
        }
    };
    let mut out = String::new();
    for (k, block) in sts.source_triples().chunks(width).enumerate() {
        if k > 0 {
            out.push('\n');
        }
        for row in 0..3 {
            let cells: Vec<String> = block.iter().map(|t| label(t[row])).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
    }
    out
}

/// Default block width: single block for small systems, 19 columns
/// otherwise.
pub fn default_column_width(sts: &SteinerTripleSystem) -> usize {
    if sts.b() <= 35 {
        sts.b()
    } else {
        19
    }
}

/// Representative dump: header, then one code per line.
pub fn representative_dump(space: &CoboundarySpace, codes: &[Code], hex: bool) -> String {
    let mut s = dump_header(space);
    s.push('\n');
    for c in codes {
        if hex {
            writeln!(s, "{c:#x}").unwrap();
        } else {
            writeln!(s, "{c}").unwrap();
        }
    }
    s
}

/// Parses a representative dump; returns `(t, b, dim)` and the codes.
pub fn parse_representative_dump(text: &str) -> Result<((u32, usize, usize), Vec<Code>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty dump".into(),
    })?;
    let mut t = None;
    let mut b = None;
    let mut dim = None;
    for field in header.trim_start_matches('#').split_whitespace() {
        let (k, v) = field.split_once('=').ok_or(Error::Parse {
            line: 1,
            msg: format!("bad header field `{field}`"),
        })?;
        let val: u64 = v.parse().map_err(|_| Error::Parse {
            line: 1,
            msg: format!("bad header value `{v}`"),
        })?;
        match k {
            "t" => t = Some(val as u32),
            "b" => b = Some(val as usize),
            "dim" => dim = Some(val as usize),
            _ => {}
        }
    }
    let shape = match (t, b, dim) {
        (Some(t), Some(b), Some(d)) => (t, b, d),
        _ => {
            return Err(Error::Parse {
                line: 1,
                msg: "header needs t, b and dim".into(),
            })
        }
    };
    let codes = lines
        .map(|(n, l)| {
            let l = l.trim();
            let parsed = match l.strip_prefix("0x") {
                Some(h) => Code::from_str_radix(h, 16),
                None => l.parse(),
            };
            parsed.map_err(|e| Error::Parse {
                line: n + 1,
                msg: e.to_string(),
            })
        })
        .collect::<Result<_>>()?;
    Ok((shape, codes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn text_and_json_roundtrip() {
        for name in ["sts9", "sts15-61", "sts19-S2"] {
            let s = catalog::get(name).unwrap().system;
            let t = from_text(&to_text(&s)).unwrap();
            assert_eq!(t, s);
            assert_eq!(t.source_triples(), s.source_triples());
            assert_eq!(from_json(&to_json(&s)).unwrap(), s);
            let cols = to_columns(&s, default_column_width(&s));
            assert_eq!(parse_any(&cols).unwrap(), s);
        }
    }

    #[test]
    fn text_errors() {
        assert!(matches!(
            from_text("1 2 3\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            from_text("v=7\n0 1 2\n0 3 x\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            from_text("v=7\n0 1 2\n"),
            Err(Error::PairMissing(..))
        ));
        let fano = "# fano\nv=7\n0 1 2 # first line\n0 3 4\n0 5 6\n1 3 5\n1 4 6\n2 3 6\n2 4 5\n";
        assert_eq!(from_text(fano).unwrap().b(), 7);
    }

    #[test]
    fn dump_roundtrip() {
        let q = catalog::get("sts9").unwrap().system;
        let space = CoboundarySpace::new(&q, 1).unwrap();
        let codes: Vec<Code> = space.representatives(3).unwrap().flatten().collect();
        for hex in [false, true] {
            let text = representative_dump(&space, &codes, hex);
            assert!(text.starts_with("# t=1 b=12 dim=9\n"));
            let (shape, back) = parse_representative_dump(&text).unwrap();
            assert_eq!(shape, (1, 12, 9));
            assert_eq!(back, codes);
        }
    }
}
