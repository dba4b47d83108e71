//! Isomorphism of Steiner triple systems.
//!
//! Two independent routes are provided. [`canonical_form`] runs
//! individualization/refinement over ordered point partitions, pruning
//! sibling branches with automorphisms discovered at the leaves; equal
//! forms mean isomorphic systems. [`find_isomorphism`] is a direct
//! backtracking search that extends a partial point map by closing it under
//! the third-point operation.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::pasch::find_pasch_configurations;
use crate::sts::{Point, SteinerTripleSystem, Triple};

/// Number of Pasch configurations through each point.
pub fn pasch_degrees(sts: &SteinerTripleSystem) -> Vec<usize> {
    let mut deg = vec![0; sts.v()];
    for cfg in find_pasch_configurations(sts) {
        for p in cfg.labels() {
            deg[p] += 1;
        }
    }
    deg
}

fn apply(sts: &SteinerTripleSystem, lab: &[usize]) -> Vec<Triple> {
    let mut out: Vec<Triple> = sts
        .triples()
        .iter()
        .map(|t| {
            let mut m = [lab[t[0]], lab[t[1]], lab[t[2]]];
            m.sort_unstable();
            m
        })
        .collect();
    out.sort_unstable();
    out
}

/// A canonical relabeling of a system and the relabeled triple list.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    /// `labeling[p]` is the canonical label of point `p`.
    pub labeling: Vec<Point>,
    pub triples: Vec<Triple>,
}

type Cells = Vec<Vec<Point>>;

fn refine(sts: &SteinerTripleSystem, mut cells: Cells) -> Cells {
    let v = sts.v();
    let mut cell_of = vec![0u32; v];
    loop {
        for (i, cell) in cells.iter().enumerate() {
            for &p in cell {
                cell_of[p] = i as u32;
            }
        }
        let mut next: Cells = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<(u32, u32)>, Point)> = cell
                .iter()
                .map(|&p| {
                    let mut sig: Vec<(u32, u32)> = sts
                        .pencil(p)
                        .iter()
                        .map(|&[x, y]| {
                            let (cx, cy) = (cell_of[x], cell_of[y]);
                            (cx.min(cy), cx.max(cy))
                        })
                        .collect();
                    sig.sort_unstable();
                    (sig, p)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, p)| *p).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

struct Canonizer<'a> {
    sts: &'a SteinerTripleSystem,
    best: Option<(Vec<Triple>, Vec<Point>)>,
    autos: Vec<Vec<Point>>,
}

impl Canonizer<'_> {
    fn orbit_roots(&self, prefix: &[Point]) -> Vec<Point> {
        let v = self.sts.v();
        let mut parent: Vec<Point> = (0..v).collect();
        fn find(parent: &mut [Point], mut x: Point) -> Point {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in &self.autos {
            if prefix.iter().all(|&p| g[p] == p) {
                for (x, &gx) in g.iter().enumerate() {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, gx));
                    if rx != ry {
                        parent[rx.max(ry)] = rx.min(ry);
                    }
                }
            }
        }
        (0..v).map(|x| find(&mut parent, x)).collect()
    }

    fn leaf(&mut self, cells: &Cells) {
        let mut lab = vec![0; self.sts.v()];
        for (i, cell) in cells.iter().enumerate() {
            lab[cell[0]] = i;
        }
        let form = apply(self.sts, &lab);
        match &self.best {
            None => self.best = Some((form, lab)),
            Some((best, best_lab)) => match form.cmp(best) {
                Ordering::Less => self.best = Some((form, lab)),
                Ordering::Equal => {
                    let mut inv = vec![0; lab.len()];
                    for (p, &l) in best_lab.iter().enumerate() {
                        inv[l] = p;
                    }
                    let g: Vec<Point> = lab.iter().map(|&l| inv[l]).collect();
                    if g.iter().enumerate().any(|(i, &x)| i != x) {
                        self.autos.push(g);
                    }
                }
                Ordering::Greater => {}
            },
        }
    }

    fn search(&mut self, cells: Cells, prefix: &mut Vec<Point>) {
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        let Some(target) = target else {
            self.leaf(&cells);
            return;
        };
        let mut explored: Vec<Point> = Vec::new();
        for &c in &cells[target] {
            if !explored.is_empty() {
                let roots = self.orbit_roots(prefix);
                if explored.iter().any(|&e| roots[e] == roots[c]) {
                    continue;
                }
            }
            let mut child = cells.clone();
            let rest: Vec<Point> = child[target].iter().copied().filter(|&p| p != c).collect();
            child[target] = vec![c];
            child.insert(target + 1, rest);
            let child = refine(self.sts, child);
            prefix.push(c);
            self.search(child, prefix);
            prefix.pop();
            explored.push(c);
        }
    }
}

fn initial_cells(sts: &SteinerTripleSystem) -> Cells {
    let deg = pasch_degrees(sts);
    let mut by: std::collections::BTreeMap<usize, Vec<Point>> = Default::default();
    for (p, &d) in deg.iter().enumerate() {
        by.entry(d).or_default().push(p);
    }
    by.into_values().collect()
}

/// Canonical labeling: the least relabeled triple list over all leaves of
/// the refinement tree.
pub fn canonical_form(sts: &SteinerTripleSystem) -> CanonicalForm {
    let cells = refine(sts, initial_cells(sts));
    let mut c = Canonizer {
        sts,
        best: None,
        autos: Vec::new(),
    };
    c.search(cells, &mut Vec::new());
    let (triples, labeling) = c.best.expect("search visits at least one leaf");
    CanonicalForm { labeling, triples }
}

/// Isomorphism via canonical forms. Returns `iso` with `iso[p]` the image in
/// `b` of point `p` of `a`.
pub fn are_isomorphic(
    a: &SteinerTripleSystem,
    b: &SteinerTripleSystem,
) -> Result<Option<Vec<Point>>> {
    if a.v() != b.v() {
        return Err(Error::SizeMismatch(a.v(), b.v()));
    }
    let (ca, cb) = (canonical_form(a), canonical_form(b));
    if ca.triples != cb.triples {
        return Ok(None);
    }
    let mut inv_b = vec![0; b.v()];
    for (p, &l) in cb.labeling.iter().enumerate() {
        inv_b[l] = p;
    }
    Ok(Some(ca.labeling.iter().map(|&l| inv_b[l]).collect()))
}

/// Backtracking search for point bijections `a -> b` mapping triples onto
/// triples.
struct MapSearch<'a> {
    a: &'a SteinerTripleSystem,
    b: &'a SteinerTripleSystem,
    inv_a: Vec<usize>,
    inv_b: Vec<usize>,
    fwd: Vec<usize>,
    bwd: Vec<usize>,
    trail: Vec<Point>,
}

const UNSET: usize = usize::MAX;

impl<'a> MapSearch<'a> {
    fn new(
        a: &'a SteinerTripleSystem,
        b: &'a SteinerTripleSystem,
        inv_a: Vec<usize>,
        inv_b: Vec<usize>,
    ) -> Self {
        MapSearch {
            a,
            b,
            inv_a,
            inv_b,
            fwd: vec![UNSET; a.v()],
            bwd: vec![UNSET; b.v()],
            trail: Vec::new(),
        }
    }

    fn rollback(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let p = self.trail.pop().unwrap();
            self.bwd[self.fwd[p]] = UNSET;
            self.fwd[p] = UNSET;
        }
    }

    /// Assigns `p -> q` and everything it forces; false on contradiction.
    fn assign(&mut self, p: Point, q: Point) -> bool {
        let mut queue = vec![(p, q)];
        while let Some((p, q)) = queue.pop() {
            if self.fwd[p] != UNSET || self.bwd[q] != UNSET {
                if self.fwd[p] == q {
                    continue;
                }
                return false;
            }
            if self.inv_a[p] != self.inv_b[q] {
                return false;
            }
            let done = self.trail.len();
            self.fwd[p] = q;
            self.bwd[q] = p;
            self.trail.push(p);
            for k in 0..done {
                let p2 = self.trail[k];
                let q2 = self.fwd[p2];
                let r = self.a.third(p, p2);
                let s = self.b.third(q, q2);
                if self.fwd[r] == UNSET {
                    queue.push((r, s));
                } else if self.fwd[r] != s {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[Point]) -> ControlFlow<()>) -> ControlFlow<()> {
        let Some(p) = (0..self.a.v()).find(|&p| self.fwd[p] == UNSET) else {
            return visit(&self.fwd);
        };
        for q in 0..self.b.v() {
            if self.bwd[q] != UNSET || self.inv_a[p] != self.inv_b[q] {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(p, q) {
                self.run(visit)?;
            }
            self.rollback(mark);
        }
        ControlFlow::Continue(())
    }
}

/// Direct backtracking search for an isomorphism `a -> b`.
pub fn find_isomorphism(
    a: &SteinerTripleSystem,
    b: &SteinerTripleSystem,
) -> Result<Option<Vec<Point>>> {
    if a.v() != b.v() {
        return Err(Error::SizeMismatch(a.v(), b.v()));
    }
    let (da, db) = (pasch_degrees(a), pasch_degrees(b));
    let (mut sa, mut sb) = (da.clone(), db.clone());
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(None);
    }
    let mut found = None;
    let _ = MapSearch::new(a, b, da, db).run(&mut |m| {
        found = Some(m.to_vec());
        ControlFlow::Break(())
    });
    Ok(found)
}

/// Calls `visit` for every automorphism of `sts` (as a point permutation),
/// stopping early if it breaks.
pub fn for_each_automorphism(
    sts: &SteinerTripleSystem,
    visit: &mut dyn FnMut(&[Point]) -> ControlFlow<()>,
) {
    let deg = pasch_degrees(sts);
    let _ = MapSearch::new(sts, sts, deg.clone(), deg).run(visit);
}

/// Multiset of Pasch degrees, a cheap isomorphism invariant.
pub fn pasch_profile(sts: &SteinerTripleSystem) -> Vec<(usize, usize)> {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for d in pasch_degrees(sts) {
        *counts.entry(d).or_default() += 1;
    }
    let mut out: Vec<_> = counts.into_iter().collect();
    out.sort_unstable();
    out
}
