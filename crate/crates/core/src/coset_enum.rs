//! Todd–Coxeter coset enumeration.
//!
//! Enumerates the right cosets of a finitely generated subgroup `H` in a
//! finitely presented group. Two strategies are provided: HLT (relator-based
//! definitions, with a lookahead pass when the table fills up) and Felsch
//! (first-undefined-entry definitions with full deduction processing).
//! Coincidences are resolved with a union-find forwarding array and a queue
//! that is drained before any further definition.
//!
//! The table is a flat array with two columns per generator (`g`, `g⁻¹`) of
//! 32-bit coset indices. On success the cosets are renumbered in breadth-first
//! order from the subgroup coset `0`, so results are reproducible.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freeword::{FreeWord, Letter};
use crate::presentation::GroupPresentation;

const UNDEF: u32 = u32::MAX;

/// Hard ceiling on table rows: indices must fit in 31 bits.
pub const MAX_COSETS_CEILING: usize = 1 << 31;

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    #[default]
    Hlt,
    Felsch,
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hlt" => Ok(Strategy::Hlt),
            "felsch" => Ok(Strategy::Felsch),
            _ => Err(format!("unknown strategy `{s}` (expected hlt or felsch)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimit {
    pub max_cosets: usize,
    /// Cap on coset definitions, counting every new row.
    pub max_steps: Option<u64>,
}

impl Default for EnumerationLimit {
    fn default() -> Self {
        EnumerationLimit { max_cosets: DEFAULT_MAX_COSETS, max_steps: None }
    }
}

impl EnumerationLimit {
    pub fn cosets(max_cosets: usize) -> EnumerationLimit {
        EnumerationLimit { max_cosets, max_steps: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    /// The index may be infinite or larger than the cap. A signal, not a
    /// verdict.
    #[error("coset enumeration exceeded {max_cosets} cosets")]
    CosetLimit { max_cosets: usize },
    #[error("coset enumeration exceeded {max_steps} definitions")]
    StepLimit { max_steps: u64 },
    #[error("max_cosets must be between 1 and 2^31, got {0}")]
    BadLimit(usize),
    #[error("malformed input: {0}")]
    Malformed(String),
}

impl EnumerateError {
    pub fn is_limit(&self) -> bool {
        matches!(self, EnumerateError::CosetLimit { .. } | EnumerateError::StepLimit { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("coset table is incomplete")]
    Incomplete,
    #[error("coset {0} out of range")]
    CosetOutOfRange(u32),
    #[error("generator {0} not in the table's alphabet")]
    UnknownGenerator(u32),
}

/// A complete, collapsed coset table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    n_cosets: usize,
    n_gens: usize,
    action: Vec<u32>,
    /// Breadth-first spanning tree: `(parent coset, column)`; the root has
    /// `UNDEF` as parent.
    parent: Vec<(u32, u32)>,
    pub subgroup_words: Vec<FreeWord>,
    pub complete: bool,
    /// Rows allocated during the run (including cosets later merged).
    pub total_defined: u64,
}

impl CosetTable {
    pub fn n_cosets(&self) -> usize {
        self.n_cosets
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    #[inline]
    pub fn act(&self, coset: u32, l: Letter) -> u32 {
        self.action[coset as usize * 2 * self.n_gens + l.column()]
    }

    /// The coset reached from `start` by applying `w` left to right.
    pub fn trace(&self, start: u32, w: &FreeWord) -> Result<u32, TraceError> {
        if !self.complete {
            return Err(TraceError::Incomplete);
        }
        if start as usize >= self.n_cosets {
            return Err(TraceError::CosetOutOfRange(start));
        }
        if let Some(g) = w.max_generator() {
            if g as usize >= self.n_gens {
                return Err(TraceError::UnknownGenerator(g));
            }
        }
        Ok(self.trace_unchecked(start, w.letters()))
    }

    #[inline]
    pub fn trace_unchecked(&self, start: u32, letters: &[Letter]) -> u32 {
        letters.iter().fold(start, |c, &l| self.act(c, l))
    }

    /// Shortest-in-discovery-order word `g` with `H g` equal to `coset`.
    pub fn representative(&self, coset: u32) -> FreeWord {
        let mut letters = Vec::new();
        let mut c = coset;
        while self.parent[c as usize].0 != UNDEF {
            let (p, col) = self.parent[c as usize];
            letters.push(Letter::from_column(col as usize));
            c = p;
        }
        letters.reverse();
        FreeWord::reduce(letters)
    }

    /// The permutation of cosets induced by a signed generator.
    pub fn column(&self, l: Letter) -> Vec<u32> {
        (0..self.n_cosets as u32).map(|c| self.act(c, l)).collect()
    }

    /// Checks that every column is a permutation, every relator closes at
    /// every coset and every subgroup word fixes coset 0.
    pub fn check(&self, relators: &[FreeWord]) -> Result<(), String> {
        let n = self.n_cosets;
        for col in 0..2 * self.n_gens {
            let l = Letter::from_column(col);
            let mut seen = vec![false; n];
            for c in 0..n as u32 {
                let d = self.act(c, l);
                if d as usize >= n || seen[d as usize] {
                    return Err(format!("column {col} is not a permutation"));
                }
                seen[d as usize] = true;
                if self.act(d, l.inv()) != c {
                    return Err(format!("columns for generator {} are not mutually inverse", l.gen));
                }
            }
        }
        for (ri, r) in relators.iter().enumerate() {
            for c in 0..n as u32 {
                if self.trace_unchecked(c, r.letters()) != c {
                    return Err(format!("relator {ri} does not close at coset {c}"));
                }
            }
        }
        for (hi, h) in self.subgroup_words.iter().enumerate() {
            if self.trace_unchecked(0, h.letters()) != 0 {
                return Err(format!("subgroup word {hi} does not fix coset 0"));
            }
        }
        Ok(())
    }

    /// CSV dump: one row per coset, one column per signed generator.
    pub fn to_csv(&self, names: &crate::freeword::Alphabet) -> String {
        let mut out = String::from("coset");
        for col in 0..2 * self.n_gens {
            out.push(',');
            out.push_str(&names.render_letter(Letter::from_column(col)));
        }
        out.push('\n');
        for c in 0..self.n_cosets {
            out.push_str(&c.to_string());
            for col in 0..2 * self.n_gens {
                out.push(',');
                out.push_str(&self.action[c * 2 * self.n_gens + col].to_string());
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for CosetTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CosetTable({} cosets, {} generators)", self.n_cosets, self.n_gens)
    }
}

/// Relators prepared for scanning.
struct Relators {
    words: Vec<Vec<Letter>>,
    /// For Felsch: every cyclic conjugate of every relator and its inverse,
    /// bucketed by first column.
    by_first: Vec<Vec<Vec<Letter>>>,
}

impl Relators {
    fn new(relators: &[FreeWord], n_gens: usize, with_conjugates: bool) -> Relators {
        let mut words: Vec<Vec<Letter>> = relators
            .iter()
            .map(|r| r.cyclically_reduced().letters().to_vec())
            .filter(|r| !r.is_empty())
            .collect();
        words.sort_by_key(|w| w.len());
        words.dedup();
        let mut by_first = vec![Vec::new(); 2 * n_gens];
        if with_conjugates {
            let mut seen = std::collections::HashSet::new();
            for w in &words {
                let inv: Vec<Letter> = w.iter().rev().map(|l| l.inv()).collect();
                for base in [w, &inv] {
                    for k in 0..base.len() {
                        let rot: Vec<Letter> = base[k..].iter().chain(base[..k].iter()).copied().collect();
                        if seen.insert(rot.clone()) {
                            by_first[rot[0].column()].push(rot);
                        }
                    }
                }
            }
        }
        Relators { words, by_first }
    }
}

struct Enumerator {
    n_cols: usize,
    table: Vec<u32>,
    /// Union-find forwarding: `forward[c] == c` iff `c` is live.
    forward: Vec<u32>,
    n_rows: usize,
    live: usize,
    limit: EnumerationLimit,
    defined: u64,
    queue: Vec<u32>,
    deductions: Vec<(u32, u32)>,
    track_deductions: bool,
}

enum Stop {
    Limit(EnumerateError),
}

impl Enumerator {
    fn new(n_gens: usize, limit: EnumerationLimit, track_deductions: bool) -> Enumerator {
        let n_cols = 2 * n_gens;
        Enumerator {
            n_cols,
            table: vec![UNDEF; n_cols],
            forward: vec![0],
            n_rows: 1,
            live: 1,
            limit,
            defined: 1,
            queue: Vec::new(),
            deductions: Vec::new(),
            track_deductions,
        }
    }

    #[inline]
    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.n_cols + col]
    }

    #[inline]
    fn set(&mut self, c: u32, col: usize, d: u32) {
        self.table[c as usize * self.n_cols + col] = d;
    }

    #[inline]
    fn is_live(&self, c: u32) -> bool {
        self.forward[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.forward[r as usize] != r {
            r = self.forward[r as usize];
        }
        let mut x = c;
        while self.forward[x as usize] != r {
            let next = self.forward[x as usize];
            self.forward[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.forward[hi as usize] = lo;
            self.live -= 1;
            self.queue.push(hi);
        }
    }

    /// Identifies cosets `a` and `b` and every consequence.
    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for col in 0..self.n_cols {
                let target = self.get(dead, col);
                if target == UNDEF {
                    continue;
                }
                let inv = col ^ 1;
                self.set(target, inv, UNDEF);
                let (mu, nu) = (self.rep(dead), self.rep(target));
                let existing = self.get(mu, col);
                if existing != UNDEF {
                    self.merge(nu, existing);
                } else {
                    let back = self.get(nu, inv);
                    if back != UNDEF {
                        self.merge(mu, back);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, inv, mu);
                        if self.track_deductions {
                            self.deductions.push((mu, col as u32));
                        }
                    }
                }
            }
        }
    }

    fn define(&mut self, c: u32, col: usize) -> Result<u32, Stop> {
        if self.n_rows >= self.limit.max_cosets {
            return Err(Stop::Limit(EnumerateError::CosetLimit { max_cosets: self.limit.max_cosets }));
        }
        if let Some(max_steps) = self.limit.max_steps {
            if self.defined >= max_steps {
                return Err(Stop::Limit(EnumerateError::StepLimit { max_steps }));
            }
        }
        let d = self.n_rows as u32;
        self.n_rows += 1;
        self.live += 1;
        self.defined += 1;
        self.table.extend(std::iter::repeat(UNDEF).take(self.n_cols));
        self.forward.push(d);
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        if self.track_deductions {
            self.deductions.push((c, col as u32));
        }
        Ok(d)
    }

    /// Scans `word` at `c`, defining new cosets to complete the cycle when
    /// `fill` is set. Leaves an open cycle untouched otherwise.
    fn scan(&mut self, c: u32, word: &[Letter], fill: bool) -> Result<(), Stop> {
        let mut f = c;
        let mut b = c;
        let mut i: isize = 0;
        let mut j: isize = word.len() as isize - 1;
        loop {
            while i <= j {
                let next = self.get(f, word[i as usize].column());
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                let prev = self.get(b, word[j as usize].inv().column());
                if prev == UNDEF {
                    break;
                }
                b = prev;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let col = word[i as usize].column();
                self.set(f, col, b);
                self.set(b, col ^ 1, f);
                if self.track_deductions {
                    self.deductions.push((f, col as u32));
                }
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            f = self.define(f, word[i as usize].column())?;
            i += 1;
        }
    }

    /// Renumbers live cosets into a prefix, preserving order. Returns the new
    /// index of `pointer` (the first live coset at or after it).
    fn compact(&mut self, pointer: u32) -> u32 {
        let mut new_index = vec![UNDEF; self.n_rows];
        let mut next = 0u32;
        let mut new_pointer = None;
        for c in 0..self.n_rows as u32 {
            if c >= pointer && new_pointer.is_none() && self.is_live(c) {
                new_pointer = Some(next);
            }
            if self.is_live(c) {
                new_index[c as usize] = next;
                next += 1;
            }
        }
        let mut table = vec![UNDEF; next as usize * self.n_cols];
        for c in 0..self.n_rows {
            let nc = new_index[c];
            if nc == UNDEF {
                continue;
            }
            for col in 0..self.n_cols {
                let d = self.table[c * self.n_cols + col];
                if d != UNDEF {
                    table[nc as usize * self.n_cols + col] = new_index[d as usize];
                }
            }
        }
        self.table = table;
        self.n_rows = next as usize;
        self.forward = (0..next).collect();
        self.live = next as usize;
        self.deductions.clear();
        new_pointer.unwrap_or(next)
    }

    /// Scans every relator at every live coset without defining anything.
    fn lookahead(&mut self, rels: &Relators, subgroup: &[Vec<Letter>]) {
        for h in subgroup {
            if self.is_live(0) {
                let _ = self.scan(0, h, false);
            }
        }
        let mut c = 0u32;
        while (c as usize) < self.n_rows {
            for r in &rels.words {
                if !self.is_live(c) {
                    break;
                }
                let _ = self.scan(c, r, false);
            }
            c += 1;
        }
    }

    /// Scans the subgroup words at 0, relators at `c`, then fills row `c`.
    fn hlt_row(&mut self, c: u32, rels: &Relators, subgroup: &[Vec<Letter>]) -> Result<(), Stop> {
        if c == 0 {
            for h in subgroup {
                if !self.is_live(0) {
                    break;
                }
                self.scan(0, h, true)?;
            }
        }
        for r in &rels.words {
            if !self.is_live(c) {
                return Ok(());
            }
            self.scan(c, r, true)?;
        }
        for col in 0..self.n_cols {
            if !self.is_live(c) {
                return Ok(());
            }
            if self.get(c, col) == UNDEF {
                self.define(c, col)?;
            }
        }
        Ok(())
    }

    fn run_hlt(&mut self, rels: &Relators, subgroup: &[Vec<Letter>]) -> Result<(), EnumerateError> {
        let mut c = 0u32;
        while (c as usize) < self.n_rows {
            if self.is_live(c) {
                loop {
                    match self.hlt_row(c, rels, subgroup) {
                        Ok(()) => break,
                        Err(Stop::Limit(e @ EnumerateError::StepLimit { .. })) => return Err(e),
                        Err(Stop::Limit(e)) => {
                            if !self.make_room(rels, subgroup, &mut c) {
                                return Err(e);
                            }
                            // scanning is idempotent, so the row is simply redone
                            if c as usize >= self.n_rows {
                                break;
                            }
                        }
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }

    /// Lookahead plus compaction. Returns whether any space was freed;
    /// `pointer` is renumbered to stay on the same (or next live) coset.
    fn make_room(&mut self, rels: &Relators, subgroup: &[Vec<Letter>], pointer: &mut u32) -> bool {
        let before = self.n_rows;
        self.lookahead(rels, subgroup);
        if self.live == before {
            return false;
        }
        *pointer = self.compact(*pointer);
        true
    }

    fn process_deductions(&mut self, rels: &Relators, subgroup: &[Vec<Letter>]) {
        while let Some((c, col)) = self.deductions.pop() {
            if !self.is_live(c) {
                continue;
            }
            let col = col as usize;
            let d = self.get(c, col);
            for r in &rels.by_first[col] {
                if !self.is_live(c) {
                    break;
                }
                let _ = self.scan(c, r, false);
            }
            if d != UNDEF && self.is_live(d) {
                for r in &rels.by_first[col ^ 1] {
                    if !self.is_live(d) {
                        break;
                    }
                    let _ = self.scan(d, r, false);
                }
            }
            if self.is_live(0) {
                for h in subgroup {
                    let _ = self.scan(0, h, false);
                }
            }
        }
    }

    fn run_felsch(&mut self, rels: &Relators, subgroup: &[Vec<Letter>]) -> Result<(), EnumerateError> {
        for h in subgroup {
            self.scan(0, h, true).map_err(|Stop::Limit(e)| e)?;
            self.process_deductions(rels, subgroup);
        }
        let mut c = 0u32;
        let mut col = 0usize;
        loop {
            self.process_deductions(rels, subgroup);
            // next undefined entry, in row-major order over live cosets
            let mut found = None;
            while (c as usize) < self.n_rows {
                if self.is_live(c) {
                    while col < self.n_cols {
                        if self.get(c, col) == UNDEF {
                            found = Some((c, col));
                            break;
                        }
                        col += 1;
                    }
                    if found.is_some() {
                        break;
                    }
                }
                c += 1;
                col = 0;
            }
            let Some((fc, fcol)) = found else { return Ok(()) };
            match self.define(fc, fcol) {
                Ok(_) => {}
                Err(Stop::Limit(e @ EnumerateError::StepLimit { .. })) => return Err(e),
                Err(Stop::Limit(e)) => {
                    let before = self.n_rows;
                    // deductions are complete here, so lookahead cannot help;
                    // compaction frees the rows of merged cosets
                    let pointer = self.compact(fc);
                    if self.n_rows == before {
                        return Err(e);
                    }
                    c = pointer;
                    col = 0;
                }
            }
        }
    }

    /// Standardizes into breadth-first order from coset 0.
    fn finish(mut self, n_gens: usize, subgroup_words: Vec<FreeWord>) -> Result<CosetTable, String> {
        let root = self.rep(0);
        let mut order = vec![root];
        let mut new_index = vec![UNDEF; self.n_rows];
        new_index[root as usize] = 0;
        let mut parent = vec![(UNDEF, 0u32)];
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            for col in 0..self.n_cols {
                let d = self.get(c, col);
                if d == UNDEF {
                    return Err(format!("incomplete row at coset {c}"));
                }
                let d = self.rep(d);
                if new_index[d as usize] == UNDEF {
                    new_index[d as usize] = order.len() as u32;
                    order.push(d);
                    parent.push((k as u32, col as u32));
                }
            }
            k += 1;
        }
        let n = order.len();
        let mut action = vec![UNDEF; n * self.n_cols];
        for (new, &old) in order.iter().enumerate() {
            for col in 0..self.n_cols {
                let d = self.get(old, col);
                let d = self.rep(d);
                action[new * self.n_cols + col] = new_index[d as usize];
            }
        }
        Ok(CosetTable {
            n_cosets: n,
            n_gens,
            action,
            parent,
            subgroup_words,
            complete: true,
            total_defined: self.defined,
        })
    }
}

fn validate_inputs(g: &GroupPresentation, h: &[FreeWord], limit: &EnumerationLimit) -> Result<(), EnumerateError> {
    if limit.max_cosets == 0 || limit.max_cosets > MAX_COSETS_CEILING {
        return Err(EnumerateError::BadLimit(limit.max_cosets));
    }
    let n = g.generators.len();
    for (what, w) in g.relators.iter().map(|r| ("relator", r)).chain(h.iter().map(|w| ("subgroup word", w))) {
        if let Some(gen) = w.max_generator() {
            if gen as usize >= n {
                return Err(EnumerateError::Malformed(format!(
                    "{what} uses generator {gen} but the presentation has {n}"
                )));
            }
        }
    }
    Ok(())
}

/// Enumerates the cosets of `⟨h⟩` in `g`.
pub fn enumerate(
    g: &GroupPresentation,
    h: &[FreeWord],
    limit: EnumerationLimit,
    strategy: Strategy,
) -> Result<CosetTable, EnumerateError> {
    validate_inputs(g, h, &limit)?;
    let n_gens = g.generators.len();
    let rels = Relators::new(&g.relators, n_gens, strategy == Strategy::Felsch);
    let subgroup: Vec<Vec<Letter>> = h.iter().filter(|w| !w.is_empty()).map(|w| w.letters().to_vec()).collect();
    let mut e = Enumerator::new(n_gens, limit, strategy == Strategy::Felsch);
    match strategy {
        Strategy::Hlt => e.run_hlt(&rels, &subgroup)?,
        Strategy::Felsch => e.run_felsch(&rels, &subgroup)?,
    }
    let table = e.finish(n_gens, h.to_vec()).map_err(|m| EnumerateError::Malformed(format!("internal: {m}")))?;
    if let Err(m) = table.check(&g.relators) {
        panic!("coset enumeration produced an inconsistent table: {m}");
    }
    Ok(table)
}

/// `|G|`, enumerating over the trivial subgroup.
pub fn group_order(g: &GroupPresentation, limit: EnumerationLimit, strategy: Strategy) -> Result<usize, EnumerateError> {
    enumerate(g, &[], limit, strategy).map(|t| t.n_cosets())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeword::Alphabet;

    fn pres(names: &[&str], rels: &[&str]) -> GroupPresentation {
        let a = Alphabet::new(names.iter().copied()).unwrap();
        let relators = rels.iter().map(|r| a.parse_word(r).unwrap()).collect();
        GroupPresentation { generators: a, relators }
    }

    fn order(g: &GroupPresentation, s: Strategy) -> usize {
        group_order(g, EnumerationLimit::default(), s).unwrap()
    }

    #[test]
    fn cyclic_five() {
        let g = pres(&["a"], &["a a a a a"]);
        for s in [Strategy::Hlt, Strategy::Felsch] {
            assert_eq!(order(&g, s), 5);
        }
    }

    #[test]
    fn free_group_hits_limit() {
        let g = pres(&["a", "b"], &["a a"]);
        let err = group_order(&g, EnumerationLimit::cosets(50), Strategy::Hlt).unwrap_err();
        assert_eq!(err, EnumerateError::CosetLimit { max_cosets: 50 });
        assert!(err.is_limit());
        let err = group_order(&g, EnumerationLimit::cosets(50), Strategy::Felsch).unwrap_err();
        assert!(err.is_limit());
    }

    #[test]
    fn step_limit() {
        let g = pres(&["a"], &["a a a a a a a a a a"]);
        let limit = EnumerationLimit { max_cosets: 100, max_steps: Some(3) };
        assert_eq!(group_order(&g, limit, Strategy::Hlt).unwrap_err(), EnumerateError::StepLimit { max_steps: 3 });
    }

    #[test]
    fn bad_inputs() {
        let g = pres(&["a"], &["a a"]);
        assert_eq!(group_order(&g, EnumerationLimit::cosets(0), Strategy::Hlt), Err(EnumerateError::BadLimit(0)));
        let bogus = FreeWord::gen(3);
        assert!(matches!(enumerate(&g, &[bogus], EnumerationLimit::default(), Strategy::Hlt), Err(EnumerateError::Malformed(_))));
    }

    #[test]
    fn subgroup_index() {
        // S3 = <a, b | a^2, b^3, (ab)^2>, [S3 : <a>] = 3
        let g = pres(&["a", "b"], &["a a", "b b b", "a b a b"]);
        let h = vec![FreeWord::gen(0)];
        for s in [Strategy::Hlt, Strategy::Felsch] {
            let t = enumerate(&g, &h, EnumerationLimit::default(), s).unwrap();
            assert_eq!(t.n_cosets(), 3);
            assert_eq!(t.trace(0, &h[0]).unwrap(), 0);
            for c in 0..3 {
                assert_eq!(t.trace(c, &FreeWord::identity()).unwrap(), c);
                for r in &g.relators {
                    assert_eq!(t.trace(c, r).unwrap(), c);
                }
                assert_eq!(t.trace(0, &t.representative(c)).unwrap(), c);
            }
            assert!(matches!(t.trace(7, &FreeWord::identity()), Err(TraceError::CosetOutOfRange(7))));
        }
    }

    #[test]
    fn canonical_numbering_is_strategy_independent() {
        let g = pres(&["a", "b"], &["a a", "b b b", "a b a b"]);
        let t1 = enumerate(&g, &[], EnumerationLimit::default(), Strategy::Hlt).unwrap();
        let t2 = enumerate(&g, &[], EnumerationLimit::default(), Strategy::Felsch).unwrap();
        assert_eq!(t1.action, t2.action);
        assert_eq!(t1.to_csv(&g.generators), t2.to_csv(&g.generators));
    }

    #[test]
    fn tight_limit_uses_lookahead() {
        // the quaternion group needs more rows than its order during HLT
        let g = pres(&["a", "b"], &["a a a a", "a a b^-1 b^-1", "a b a b^-1"]);
        let free_run = enumerate(&g, &[], EnumerationLimit::default(), Strategy::Hlt).unwrap();
        assert_eq!(free_run.n_cosets(), 8);
        let t = enumerate(&g, &[], EnumerationLimit::cosets(12), Strategy::Hlt);
        assert_eq!(t.map(|t| t.n_cosets()), Ok(8));
        assert!(group_order(&g, EnumerationLimit::cosets(7), Strategy::Hlt).unwrap_err().is_limit());
    }

    #[test]
    fn trivial_and_empty() {
        let g = pres(&[], &[]);
        assert_eq!(order(&g, Strategy::Hlt), 1);
        let g = pres(&["a"], &["a"]);
        assert_eq!(order(&g, Strategy::Felsch), 1);
    }

    #[test]
    fn csv_shape() {
        let g = pres(&["a"], &["a a a"]);
        let t = enumerate(&g, &[], EnumerationLimit::default(), Strategy::Hlt).unwrap();
        assert_eq!(t.to_csv(&g.generators), "coset,a,a^-1\n0,1,2\n1,2,0\n2,0,1\n");
    }
}
