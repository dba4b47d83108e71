//! Pasch configurations and the Pasch switch.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::sts::{Point, SteinerTripleSystem, Triple};

/// Six points `(x, a, b, c, d, t)` such that `{x,a,b}`, `{x,c,d}`,
/// `{t,a,c}` and `{t,b,d}` are triples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PaschConfiguration {
    pub x: Point,
    pub a: Point,
    pub b: Point,
    pub c: Point,
    pub d: Point,
    pub t: Point,
}

fn sorted(mut t: Triple) -> Triple {
    t.sort_unstable();
    t
}

impl PaschConfiguration {
    /// Checks that `[x, a, b, c, d, t]` labels a Pasch configuration of `sts`.
    pub fn new(sts: &SteinerTripleSystem, labels: [Point; 6]) -> Result<Self> {
        let [x, a, b, c, d, t] = labels;
        let cfg = PaschConfiguration { x, a, b, c, d, t };
        let distinct: BTreeSet<_> = labels.iter().collect();
        if distinct.len() != 6 || labels.iter().any(|&p| p >= sts.v()) {
            return Err(Error::NotAPasch(labels));
        }
        if cfg
            .triples()
            .iter()
            .all(|&tr| sts.find_triple(tr).is_some())
        {
            Ok(cfg)
        } else {
            Err(Error::NotAPasch(labels))
        }
    }

    pub fn labels(&self) -> [Point; 6] {
        [self.x, self.a, self.b, self.c, self.d, self.t]
    }

    pub fn triples(&self) -> [Triple; 4] {
        let PaschConfiguration { x, a, b, c, d, t } = *self;
        [
            sorted([x, a, b]),
            sorted([x, c, d]),
            sorted([t, a, c]),
            sorted([t, b, d]),
        ]
    }

    /// The four triples that replace [`triples`](Self::triples) in a switch.
    pub fn switched_triples(&self) -> [Triple; 4] {
        self.switched().triples()
    }

    /// The configuration as it appears after switching; switching it again
    /// restores the original triples.
    pub fn switched(&self) -> Self {
        PaschConfiguration {
            x: self.x,
            a: self.a,
            b: self.c,
            c: self.b,
            d: self.d,
            t: self.t,
        }
    }

    /// Indices (canonical order) of the four triples, sorted.
    pub fn triple_indices(&self, sts: &SteinerTripleSystem) -> [usize; 4] {
        let mut idx = self.triples().map(|t| {
            sts.find_triple(t)
                .expect("configuration triples belong to the system")
        });
        idx.sort_unstable();
        idx
    }
}

/// All Pasch configurations of `sts`, one per 4-set of triples, ordered by
/// their sorted triple indices.
///
/// Each reported configuration is labelled from its two lowest-indexed
/// triples: `x` is their common point, `{x,a,b}` is the lower one with
/// `a < b`.
pub fn find_pasch_configurations(sts: &SteinerTripleSystem) -> Vec<PaschConfiguration> {
    let mut found: Vec<([usize; 4], PaschConfiguration)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for x in 0..sts.v() {
        let pencil = sts.pencil(x);
        for (i, &[a, b]) in pencil.iter().enumerate() {
            for &[c, d] in &pencil[i + 1..] {
                for (c, d) in [(c, d), (d, c)] {
                    let t = sts.third(a, c);
                    if sts.third(b, d) != t {
                        continue;
                    }
                    let cfg = PaschConfiguration { x, a, b, c, d, t };
                    let key = cfg.triple_indices(sts);
                    if seen.insert(key) {
                        found.push((key, normalize(sts, key)));
                    }
                }
            }
        }
    }
    found.sort_unstable_by_key(|(k, _)| *k);
    found.into_iter().map(|(_, c)| c).collect()
}

fn normalize(sts: &SteinerTripleSystem, key: [usize; 4]) -> PaschConfiguration {
    let t0 = sts.triples()[key[0]];
    let t1 = sts.triples()[key[1]];
    let x = *t0.iter().find(|p| t1.contains(p)).unwrap();
    let [a, b] = others(t0, x);
    let [c0, d0] = others(t1, x);
    // both pairings may close up; keep the one spanning `key`
    [(c0, d0), (d0, c0)]
        .into_iter()
        .map(|(c, d)| PaschConfiguration {
            x,
            a,
            b,
            c,
            d,
            t: sts.third(a, c),
        })
        .find(|cfg| sts.third(cfg.b, cfg.d) == cfg.t && cfg.triple_indices(sts) == key)
        .expect("key comes from a configuration on these triples")
}

fn others(t: Triple, x: Point) -> [Point; 2] {
    let mut o = [0; 2];
    let mut k = 0;
    for &p in &t {
        if p != x {
            o[k] = p;
            k += 1;
        }
    }
    o
}

/// Replaces `{x,a,b}, {x,c,d}, {t,a,c}, {t,b,d}` by
/// `{x,a,c}, {x,b,d}, {t,a,b}, {t,c,d}`.
///
/// The replacements take the source positions of the removed triples, so a
/// table written in source order changes only in those four columns.
pub fn pasch_switch(
    sts: &SteinerTripleSystem,
    cfg: &PaschConfiguration,
) -> Result<SteinerTripleSystem> {
    let cfg = PaschConfiguration::new(sts, cfg.labels())?;
    let old = cfg.triples();
    let new = cfg.switched_triples();
    let triples = sts.source_triples().iter().map(|t| {
        let s = sorted(*t);
        match old.iter().position(|o| *o == s) {
            Some(k) => new[k],
            None => *t,
        }
    });
    SteinerTripleSystem::new(sts.v(), triples.collect::<Vec<_>>())
}
