//! Finite N-quandles: construction from coset tables, an independent
//! saturation oracle, axiom verification and small-instance isomorphism.
//!
//! Elements are numbered component by component in strand order. Component
//! `i` of the coset construction is the set of right cosets `P_i g` of the
//! peripheral subgroup in `π₁^N`, and `P_i g ▷^{±1} P_j h = P_i g h⁻¹ μ_j^{±1} h`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::Range;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coset_enum::{enumerate, CosetTable, EnumerateError, EnumerationLimit, Strategy};
use crate::diagram::{Diagram, DiagramError, DiagramKind, NLabeling};
use crate::freeword::{FreeWord, Letter};
use crate::presentation::{conj_n_group, quotient_group_n, PresentationError, QuandlePresentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Coset,
    Saturation,
    Table,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuandleError {
    #[error("component sizes sum to {expected} but the table has {got} rows")]
    SizeMismatch { expected: usize, got: usize },
    #[error("acting by element {by} is not a permutation of the elements")]
    NotAPermutation { by: u32 },
    #[error("acting by element {by} moves element {element} out of its component")]
    LeavesComponent { by: u32, element: u32 },
}

/// A finite quandle with ordered components, stored as full operation tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteQuandle {
    components: Vec<Range<u32>>,
    /// `right[b * n + a] = a ▷ b`: each row is the permutation induced by `b`.
    right: Vec<u32>,
    right_inv: Vec<u32>,
    pub provenance: Provenance,
}

impl fmt::Debug for FiniteQuandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteQuandle")
            .field("components", &self.component_sizes())
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl FiniteQuandle {
    /// Builds a quandle from `op[a][b] = a ▷ b`. The inverse operation is
    /// derived, so each column must be a bijection preserving components.
    pub fn from_op(sizes: &[usize], op: &[Vec<u32>]) -> Result<FiniteQuandle, QuandleError> {
        let n = op.len();
        let total: usize = sizes.iter().sum();
        if total != n || op.iter().any(|row| row.len() != n) {
            return Err(QuandleError::SizeMismatch { expected: total, got: n });
        }
        let mut right = vec![0u32; n * n];
        for (a, row) in op.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                right[b * n + a] = v;
            }
        }
        Self::from_rows(sizes, right, Provenance::Table)
    }

    fn from_rows(sizes: &[usize], right: Vec<u32>, provenance: Provenance) -> Result<FiniteQuandle, QuandleError> {
        let n: usize = sizes.iter().sum();
        if right.len() != n * n {
            return Err(QuandleError::SizeMismatch { expected: n, got: (right.len() as f64).sqrt() as usize });
        }
        let mut components = Vec::with_capacity(sizes.len());
        let mut start = 0u32;
        for &s in sizes {
            components.push(start..start + s as u32);
            start += s as u32;
        }
        let mut comp_of = vec![0usize; n];
        for (i, r) in components.iter().enumerate() {
            for e in r.clone() {
                comp_of[e as usize] = i;
            }
        }
        let mut right_inv = vec![u32::MAX; n * n];
        for b in 0..n {
            let row = &right[b * n..(b + 1) * n];
            for (a, &v) in row.iter().enumerate() {
                if v as usize >= n || right_inv[b * n + v as usize] != u32::MAX {
                    return Err(QuandleError::NotAPermutation { by: b as u32 });
                }
                if comp_of[v as usize] != comp_of[a] {
                    return Err(QuandleError::LeavesComponent { by: b as u32, element: a as u32 });
                }
                right_inv[b * n + v as usize] = a as u32;
            }
        }
        Ok(FiniteQuandle { components, right, right_inv, provenance })
    }

    pub fn len(&self) -> usize {
        self.components.last().map_or(0, |r| r.end as usize)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn components(&self) -> &[Range<u32>] {
        &self.components
    }

    pub fn component_sizes(&self) -> Vec<usize> {
        self.components.iter().map(|r| r.len()).collect()
    }

    pub fn component_of(&self, e: u32) -> usize {
        self.components.iter().position(|r| r.contains(&e)).expect("element out of range")
    }

    /// `a ▷ b`.
    #[inline]
    pub fn op(&self, a: u32, b: u32) -> u32 {
        self.right[b as usize * self.len() + a as usize]
    }

    /// `a ▷⁻¹ b`.
    #[inline]
    pub fn op_inv(&self, a: u32, b: u32) -> u32 {
        self.right_inv[b as usize * self.len() + a as usize]
    }

    /// The permutation `a ↦ a ▷ b`.
    pub fn action(&self, b: u32) -> &[u32] {
        let n = self.len();
        &self.right[b as usize * n..(b as usize + 1) * n]
    }

    fn table_csv(&self, inverse: bool) -> String {
        let n = self.len() as u32;
        let mut out = String::from("element");
        for b in 0..n {
            out.push(',');
            out.push_str(&b.to_string());
        }
        out.push('\n');
        for a in 0..n {
            out.push_str(&a.to_string());
            for b in 0..n {
                let v = if inverse { self.op_inv(a, b) } else { self.op(a, b) };
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Row `a`, column `b` holds `a ▷ b`.
    pub fn op_csv(&self) -> String {
        self.table_csv(false)
    }

    pub fn op_inv_csv(&self) -> String {
        self.table_csv(true)
    }
}

/// `[μ_i]` for graph edges, `[μ_i, λ_i]` for link components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeripheralSubgroup {
    pub strand: usize,
    pub words: Vec<FreeWord>,
}

impl PeripheralSubgroup {
    pub fn of(d: &Diagram, strand: usize) -> Result<PeripheralSubgroup, DiagramError> {
        let mut words = vec![d.meridian(strand)?];
        if d.kind == DiagramKind::Link {
            words.push(d.longitude(strand)?);
        }
        Ok(PeripheralSubgroup { strand, words })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("enumerating π₁^N: {0}")]
    Group(EnumerateError),
    #[error("enumerating cosets of P_{strand}: {source}")]
    Strand { strand: usize, source: EnumerateError },
    #[error("size identity failed for strand {strand}: |π₁^N| = {group_order}, index = {index}, |P| = {peripheral_order}")]
    SizeIdentity { strand: usize, group_order: usize, index: usize, peripheral_order: usize },
    #[error("graph edge {strand}: |P| = {peripheral_order} but n = {n}")]
    GraphPeripheral { strand: usize, peripheral_order: usize, n: u32 },
    #[error(transparent)]
    Quandle(#[from] QuandleError),
}

impl BuildError {
    pub fn is_limit(&self) -> bool {
        match self {
            BuildError::Group(e) | BuildError::Strand { source: e, .. } => e.is_limit(),
            _ => false,
        }
    }
}

/// A built quandle with the group-theoretic data used to produce it.
#[derive(Debug, Clone)]
pub struct NQuandleBuild {
    pub quandle: FiniteQuandle,
    pub group_order: usize,
    /// `[π₁^N : P_i]`, equal to the size of component `i`.
    pub indices: Vec<usize>,
    /// `|P_i|`, measured as an orbit in the regular representation.
    pub peripheral_orders: Vec<usize>,
}

/// Builds the N-quandle of `d` by coset enumeration, with the HLT strategy.
pub fn build_n_quandle(d: &Diagram, n: &NLabeling, limit: EnumerationLimit) -> Result<NQuandleBuild, BuildError> {
    build_n_quandle_with(d, n, limit, Strategy::Hlt)
}

pub fn build_n_quandle_with(
    d: &Diagram,
    n: &NLabeling,
    limit: EnumerationLimit,
    strategy: Strategy,
) -> Result<NQuandleBuild, BuildError> {
    d.check_labeling(n)?;
    let g = quotient_group_n(d, n)?;
    let regular = enumerate(&g, &[], limit, strategy).map_err(BuildError::Group)?;
    let group_order = regular.n_cosets();

    let mut tables = Vec::with_capacity(d.n_strands());
    let mut peripheral_orders = Vec::with_capacity(d.n_strands());
    for i in 0..d.n_strands() {
        let p = PeripheralSubgroup::of(d, i)?;
        let t = enumerate(&g, &p.words, limit, strategy).map_err(|source| BuildError::Strand { strand: i, source })?;
        let order = orbit_size(&regular, &p.words);
        if order * t.n_cosets() != group_order {
            return Err(BuildError::SizeIdentity {
                strand: i,
                group_order,
                index: t.n_cosets(),
                peripheral_order: order,
            });
        }
        if d.kind == DiagramKind::Graph && order != n.get(i) as usize {
            return Err(BuildError::GraphPeripheral { strand: i, peripheral_order: order, n: n.get(i) });
        }
        peripheral_orders.push(order);
        tables.push(t);
    }
    let meridians: Vec<Letter> = (0..d.n_strands())
        .map(|i| d.meridian(i).map(|w| w.letters()[0]))
        .collect::<Result<_, _>>()?;
    let quandle = assemble(&tables, &meridians)?;
    let indices = tables.iter().map(|t| t.n_cosets()).collect();
    Ok(NQuandleBuild { quandle, group_order, indices, peripheral_orders })
}

/// Size of the orbit of the identity coset under `⟨words⟩`; with a regular
/// table this is the order of the subgroup.
fn orbit_size(regular: &CosetTable, words: &[FreeWord]) -> usize {
    let inverses: Vec<FreeWord> = words.iter().map(|w| w.invert()).collect();
    let mut seen = vec![false; regular.n_cosets()];
    seen[0] = true;
    let mut queue = VecDeque::from([0u32]);
    let mut count = 1;
    while let Some(c) = queue.pop_front() {
        for w in words.iter().chain(&inverses) {
            let e = regular.trace_unchecked(c, w.letters());
            if !seen[e as usize] {
                seen[e as usize] = true;
                count += 1;
                queue.push_back(e);
            }
        }
    }
    count
}

/// Fills the operation table. For a fixed pair of components the action of
/// coset `d` (representative `h_d`) is `h_d⁻¹ μ h_d`; along a spanning-tree
/// edge `h_d = h_p y` this is `y⁻¹ σ_p y`.
fn assemble(tables: &[CosetTable], meridians: &[Letter]) -> Result<FiniteQuandle, QuandleError> {
    let sizes: Vec<usize> = tables.iter().map(|t| t.n_cosets()).collect();
    let offsets: Vec<usize> = sizes.iter().scan(0, |acc, &s| {
        let o = *acc;
        *acc += s;
        Some(o)
    }).collect();
    let n: usize = sizes.iter().sum();
    let mut right = vec![0u32; n * n];
    for (j, tj) in tables.iter().enumerate() {
        let parents = spanning_tree(tj);
        for (i, ti) in tables.iter().enumerate() {
            let oi = offsets[i];
            let ni = sizes[i];
            for d in 0..sizes[j] {
                let row = (offsets[j] + d) * n + oi;
                match parents[d] {
                    None => {
                        for c in 0..ni as u32 {
                            right[row + c as usize] = oi as u32 + ti.act(c, meridians[j]);
                        }
                    }
                    Some((p, y)) => {
                        let prow = (offsets[j] + p as usize) * n + oi;
                        for c in 0..ni as u32 {
                            let pre = ti.act(c, y.inv());
                            let mid = right[prow + pre as usize] - oi as u32;
                            right[row + c as usize] = oi as u32 + ti.act(mid, y);
                        }
                    }
                }
            }
        }
    }
    FiniteQuandle::from_rows(&sizes, right, Provenance::Coset)
}

/// Parent pointers of the table's representative tree, recovered from the
/// representatives so that parents precede children.
fn spanning_tree(t: &CosetTable) -> Vec<Option<(u32, Letter)>> {
    (0..t.n_cosets() as u32)
        .map(|c| {
            let rep = t.representative(c);
            rep.letters().split_last().map(|(&last, init)| {
                let p = t.trace_unchecked(0, init);
                (p, last)
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axiom {
    A1,
    A2,
    A3,
    NRelation,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::A1 => "A1 (idempotence)",
            Axiom::A2 => "A2 (invertibility)",
            Axiom::A3 => "A3 (self-distributivity)",
            Axiom::NRelation => "N-relation",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum A3Coverage {
    Full,
    Sampled { triples: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
    pub a3: A3Coverage,
    /// Set when the labeling does not match the component count.
    pub labeling_mismatch: bool,
}

impl AxiomReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty() && !self.labeling_mismatch
    }

    pub fn failed(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.labeling_mismatch {
            writeln!(f, "labeling length does not match the number of components")?;
        }
        for v in &self.violations {
            writeln!(f, "{} fails at {:?}", v.axiom, v.witness)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest quandle for which A3 is checked on every triple.
    pub full_a3_max: usize,
    pub a3_samples: u64,
    pub seed: u64,
    /// Stop collecting after this many violations per axiom.
    pub max_witnesses: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { full_a3_max: 2000, a3_samples: 2_000_000, seed: 0x5eed, max_witnesses: 8 }
    }
}

pub fn verify_axioms(q: &FiniteQuandle, n: &NLabeling) -> AxiomReport {
    verify_axioms_with(q, n, VerifyOptions::default())
}

pub fn verify_axioms_with(q: &FiniteQuandle, n: &NLabeling, opts: VerifyOptions) -> AxiomReport {
    let size = q.len() as u32;
    let mut violations = Vec::new();
    let push = |axiom: Axiom, witness: Vec<u32>, violations: &mut Vec<AxiomViolation>| {
        if violations.iter().filter(|v: &&AxiomViolation| v.axiom == axiom).count() < opts.max_witnesses {
            violations.push(AxiomViolation { axiom, witness });
        }
    };
    for e in 0..size {
        if q.op(e, e) != e {
            push(Axiom::A1, vec![e], &mut violations);
        }
    }
    for f in 0..size {
        for e in 0..size {
            if q.op_inv(q.op(e, f), f) != e || q.op(q.op_inv(e, f), f) != e {
                push(Axiom::A2, vec![e, f], &mut violations);
            }
        }
    }
    let labeling_mismatch = n.len() != q.components().len();
    if !labeling_mismatch {
        for (j, comp) in q.components().iter().enumerate() {
            let nj = n.get(j);
            for f in comp.clone() {
                for e in 0..size {
                    let mut x = e;
                    for _ in 0..nj {
                        x = q.op(x, f);
                    }
                    if x != e {
                        push(Axiom::NRelation, vec![e, f], &mut violations);
                    }
                }
            }
        }
    }
    let a3_holds = |e: u32, f: u32, g: u32| q.op(q.op(e, f), g) == q.op(q.op(e, g), q.op(f, g));
    let a3 = if (size as usize) <= opts.full_a3_max {
        'outer: for g in 0..size {
            for f in 0..size {
                let fg = q.op(f, g);
                for e in 0..size {
                    if q.op(q.op(e, f), g) != q.op(q.op(e, g), fg) {
                        push(Axiom::A3, vec![e, f, g], &mut violations);
                        if violations.iter().filter(|v| v.axiom == Axiom::A3).count() >= opts.max_witnesses {
                            break 'outer;
                        }
                    }
                }
            }
        }
        A3Coverage::Full
    } else {
        let mut rng = StdRng::seed_from_u64(opts.seed);
        for _ in 0..opts.a3_samples {
            let (e, f, g) = (rng.gen_range(0..size), rng.gen_range(0..size), rng.gen_range(0..size));
            if !a3_holds(e, f, g) {
                push(Axiom::A3, vec![e, f, g], &mut violations);
            }
        }
        A3Coverage::Sampled { triples: opts.a3_samples }
    };
    AxiomReport { violations, a3, labeling_mismatch }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("saturation exceeded {cap} elements")]
    CapExceeded { cap: usize },
    #[error("quandle presentation has no N-labeling")]
    Unlabeled,
    #[error("generators from components {0} and {1} were identified")]
    CrossComponent(usize, usize),
    #[error(transparent)]
    Quandle(#[from] QuandleError),
}

const NONE: u32 = u32::MAX;

/// Partial action of the free group on quandle terms `x^w`, one orbit per
/// generator, refined until the operation `a ▷ b = a · w̄_b x_b w_b` is
/// well defined on every node.
struct Saturation {
    cols: usize,
    table: Vec<u32>,
    forward: Vec<u32>,
    /// Base generator and exponent word of each node's defining term.
    term: Vec<(u32, FreeWord)>,
    base_node: Vec<u32>,
    /// Words that must act trivially on every node.
    global: Vec<Vec<Letter>>,
    global_seen: HashSet<Vec<Letter>>,
    live: usize,
    cap: usize,
    queue: Vec<u32>,
}

impl Saturation {
    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.cols + col]
    }

    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.table[c as usize * self.cols + col] = v;
    }

    fn rep(&self, mut c: u32) -> u32 {
        while self.forward[c as usize] != c {
            c = self.forward[c as usize];
        }
        c
    }

    fn is_live(&self, c: u32) -> bool {
        self.forward[c as usize] == c
    }

    fn node_count(&self) -> usize {
        self.forward.len()
    }

    fn new_node(&mut self, base: u32, w: FreeWord) -> Result<u32, OracleError> {
        if self.live >= self.cap || self.node_count() >= self.cap.saturating_mul(16) {
            return Err(OracleError::CapExceeded { cap: self.cap });
        }
        let id = self.node_count() as u32;
        self.table.extend(std::iter::repeat(NONE).take(self.cols));
        self.forward.push(id);
        self.term.push((base, w));
        self.live += 1;
        Ok(id)
    }

    fn inner_word(&self, node: u32) -> FreeWord {
        let (x, w) = &self.term[node as usize];
        FreeWord::gen(*x).conjugate_by(w)
    }

    fn add_global(&mut self, w: FreeWord) -> bool {
        let w = w.cyclically_reduced();
        if w.is_empty() {
            return false;
        }
        let key = canonical_rotation(w.letters());
        if self.global_seen.insert(key.clone()) {
            self.global.push(key);
            true
        } else {
            false
        }
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.forward[hi as usize] = lo;
        self.live -= 1;
        self.queue.push(hi);
        let rel = self.inner_word(lo).concat(&self.inner_word(hi).invert());
        self.add_global(rel);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for col in 0..self.cols {
                let t = self.get(dead, col);
                if t == NONE {
                    continue;
                }
                self.set(t, col ^ 1, NONE);
                let (mu, nu) = (self.rep(dead), self.rep(t));
                let m = self.get(mu, col);
                if m != NONE {
                    self.merge(nu, m);
                } else {
                    let back = self.get(nu, col ^ 1);
                    if back != NONE {
                        self.merge(mu, back);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, col ^ 1, mu);
                    }
                }
            }
        }
        for b in 0..self.base_node.len() {
            self.base_node[b] = self.rep(self.base_node[b]);
        }
    }

    /// Requires `start · word = end`. Returns whether anything changed.
    fn scan(&mut self, start: u32, word: &[Letter], end: u32) -> bool {
        let (mut f, mut b) = (start, end);
        let mut i: isize = 0;
        let mut j: isize = word.len() as isize - 1;
        while i <= j {
            let next = self.get(f, word[i as usize].column());
            if next == NONE {
                break;
            }
            f = next;
            i += 1;
        }
        if i > j {
            if f != b {
                self.coincidence(f, b);
                return true;
            }
            return false;
        }
        while j >= i {
            let prev = self.get(b, word[j as usize].inv().column());
            if prev == NONE {
                break;
            }
            b = prev;
            j -= 1;
        }
        if j < i {
            self.coincidence(f, b);
            true
        } else if i == j {
            let col = word[i as usize].column();
            self.set(f, col, b);
            self.set(b, col ^ 1, f);
            true
        } else {
            false
        }
    }

    /// One full pass over every constraint. Returns whether anything changed.
    fn close(&mut self, relations: &[(u32, Vec<Letter>, u32)]) -> bool {
        let mut changed = false;
        for (x, word, y) in relations {
            let (s, e) = (self.base_node[*x as usize], self.base_node[*y as usize]);
            changed |= self.scan(s, word, e);
        }
        for x in 0..self.base_node.len() {
            let p = self.base_node[x];
            changed |= self.scan(p, &[Letter::pos(x as u32)], p);
        }
        let mut k = 0;
        while k < self.global.len() {
            let r = self.global[k].clone();
            for c in 0..self.node_count() as u32 {
                if self.is_live(c) {
                    changed |= self.scan(c, &r, c);
                }
            }
            k += 1;
        }
        // every defined edge e·y = f must satisfy ρ_f = ȳ ρ_e y
        for e in 0..self.node_count() as u32 {
            if !self.is_live(e) {
                continue;
            }
            for col in 0..self.cols {
                let f = self.get(e, col);
                if f == NONE {
                    continue;
                }
                let y = FreeWord::letter(Letter::from_column(col));
                let via = self.inner_word(e).conjugate_by(&y);
                let rel = self.inner_word(self.rep(f)).concat(&via.invert());
                changed |= self.add_global(rel);
            }
        }
        changed
    }

    fn first_undefined(&self) -> Option<(u32, usize)> {
        (0..self.node_count() as u32)
            .filter(|&c| self.is_live(c))
            .find_map(|c| (0..self.cols).find(|&col| self.get(c, col) == NONE).map(|col| (c, col)))
    }
}

fn canonical_rotation(w: &[Letter]) -> Vec<Letter> {
    let inv: Vec<Letter> = w.iter().rev().map(|l| l.inv()).collect();
    let key = |v: &[Letter]| v.iter().map(|l| l.column()).collect::<Vec<_>>();
    let mut best: Vec<Letter> = w.to_vec();
    for base in [w, &inv[..]] {
        for k in 0..base.len() {
            let rot: Vec<Letter> = base[k..].iter().chain(&base[..k]).copied().collect();
            if key(&rot) < key(&best) {
                best = rot;
            }
        }
    }
    best
}

pub const DEFAULT_ORACLE_CAP: usize = 512;

/// Builds the N-quandle directly from its presentation by closing terms
/// under the generator actions and identifying everything the relations
/// force. Independent of coset enumeration; meant for small instances.
pub fn saturate_oracle(q: &QuandlePresentation, cap: usize) -> Result<FiniteQuandle, OracleError> {
    let labels = q.n_labels.as_ref().ok_or(OracleError::Unlabeled)?;
    let s = q.generators.len();
    let mut sat = Saturation {
        cols: 2 * s,
        table: Vec::new(),
        forward: Vec::new(),
        term: Vec::new(),
        base_node: Vec::new(),
        global: Vec::new(),
        global_seen: HashSet::new(),
        live: 0,
        cap: cap.max(s),
        queue: Vec::new(),
    };
    for x in 0..s as u32 {
        let id = sat.new_node(x, FreeWord::identity())?;
        sat.base_node.push(id);
    }
    for x in 0..s as u32 {
        let nx = labels.get(q.component_of[x as usize]);
        sat.add_global(FreeWord::gen(x).power(nx));
    }
    for r in &q.relations {
        sat.add_global(r.relator());
    }
    let relations: Vec<(u32, Vec<Letter>, u32)> = q
        .relations
        .iter()
        .map(|r| {
            let w = r.lhs.exponent.concat(&r.rhs.exponent.invert());
            (r.lhs.base, w.letters().to_vec(), r.rhs.base)
        })
        .collect();

    loop {
        while sat.close(&relations) {}
        match sat.first_undefined() {
            None => break,
            Some((c, col)) => {
                let (x, w) = sat.term[c as usize].clone();
                let nw = w.concat(&FreeWord::letter(Letter::from_column(col)));
                let d = sat.new_node(x, nw)?;
                sat.set(c, col, d);
                sat.set(d, col ^ 1, c);
            }
        }
    }

    // group live nodes by the component of their base generator
    let mut by_comp: Vec<Vec<u32>> = vec![Vec::new(); q.n_components];
    for c in 0..sat.node_count() as u32 {
        if sat.is_live(c) {
            by_comp[q.component_of[sat.term[c as usize].0 as usize]].push(c);
        }
    }
    for (x, &b) in sat.base_node.iter().enumerate() {
        let cx = q.component_of[x];
        let cb = q.component_of[sat.term[b as usize].0 as usize];
        if cx != cb {
            return Err(OracleError::CrossComponent(cb.min(cx), cb.max(cx)));
        }
    }
    let order: Vec<u32> = by_comp.iter().flatten().copied().collect();
    let mut index = HashMap::with_capacity(order.len());
    for (i, &c) in order.iter().enumerate() {
        index.insert(c, i as u32);
    }
    let n = order.len();
    let mut right = vec![0u32; n * n];
    for (bi, &b) in order.iter().enumerate() {
        let rho = sat.inner_word(b);
        for (ai, &a) in order.iter().enumerate() {
            let mut c = a;
            for l in rho.letters() {
                c = sat.rep(sat.get(c, l.column()));
            }
            right[bi * n + ai] = index[&c];
        }
    }
    let sizes: Vec<usize> = by_comp.iter().map(|v| v.len()).collect();
    Ok(FiniteQuandle::from_rows(&sizes, right, Provenance::Saturation)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("isomorphism test limited to {bound} elements, got {size}")]
pub struct TooLarge {
    pub bound: usize,
    pub size: usize,
}

pub const DEFAULT_ISO_BOUND: usize = 512;

/// Whether a component-order-preserving isomorphism `q1 → q2` exists.
pub fn quandles_isomorphic(q1: &FiniteQuandle, q2: &FiniteQuandle) -> Result<bool, TooLarge> {
    quandles_isomorphic_bounded(q1, q2, DEFAULT_ISO_BOUND)
}

pub fn quandles_isomorphic_bounded(q1: &FiniteQuandle, q2: &FiniteQuandle, bound: usize) -> Result<bool, TooLarge> {
    for q in [q1, q2] {
        if q.len() > bound {
            return Err(TooLarge { bound, size: q.len() });
        }
    }
    if q1.component_sizes() != q2.component_sizes() {
        return Ok(false);
    }
    let gens = generating_set(q1);
    let mut map = vec![NONE; q1.len()];
    let mut used = vec![false; q2.len()];
    Ok(extend(q1, q2, &gens, 0, &mut map, &mut used))
}

/// A greedy generating set: each element is outside the subquandle
/// generated by the previous ones.
fn generating_set(q: &FiniteQuandle) -> Vec<u32> {
    let n = q.len() as u32;
    let mut inside = vec![false; n as usize];
    let mut members: Vec<u32> = Vec::new();
    let mut gens = Vec::new();
    for start in 0..n {
        if inside[start as usize] {
            continue;
        }
        gens.push(start);
        inside[start as usize] = true;
        members.push(start);
        let mut k = 0;
        while k < members.len() {
            let a = members[k];
            for idx in 0..=k {
                let b = members[idx];
                for v in [q.op(a, b), q.op(b, a), q.op_inv(a, b), q.op_inv(b, a)] {
                    if !inside[v as usize] {
                        inside[v as usize] = true;
                        members.push(v);
                    }
                }
            }
            k += 1;
        }
    }
    gens
}

fn extend(q1: &FiniteQuandle, q2: &FiniteQuandle, gens: &[u32], k: usize, map: &mut Vec<u32>, used: &mut Vec<bool>) -> bool {
    if k == gens.len() {
        return (0..q1.len() as u32).all(|a| {
            (0..q1.len() as u32).all(|b| map[q1.op(a, b) as usize] == q2.op(map[a as usize], map[b as usize]))
        });
    }
    let g = gens[k];
    if map[g as usize] != NONE {
        return extend(q1, q2, gens, k + 1, map, used);
    }
    let comp = q1.component_of(g);
    for image in q2.components()[comp].clone() {
        if used[image as usize] {
            continue;
        }
        let (saved_map, saved_used) = (map.clone(), used.clone());
        if propagate(q1, q2, g, image, map, used) && extend(q1, q2, gens, k + 1, map, used) {
            return true;
        }
        *map = saved_map;
        *used = saved_used;
    }
    false
}

/// Assigns `a ↦ b` and closes the partial map under both operations.
fn propagate(q1: &FiniteQuandle, q2: &FiniteQuandle, a: u32, b: u32, map: &mut [u32], used: &mut [bool]) -> bool {
    let mut pending = vec![(a, b)];
    let mut mapped: Vec<u32> = (0..q1.len() as u32).filter(|&x| map[x as usize] != NONE).collect();
    while let Some((x, y)) = pending.pop() {
        let cur = map[x as usize];
        if cur != NONE {
            if cur != y {
                return false;
            }
            continue;
        }
        if used[y as usize] || q1.component_of(x) != q2.component_of(y) {
            return false;
        }
        map[x as usize] = y;
        used[y as usize] = true;
        mapped.push(x);
        for &z in &mapped {
            let w = map[z as usize];
            pending.push((q1.op(x, z), q2.op(y, w)));
            pending.push((q1.op(z, x), q2.op(w, y)));
            pending.push((q1.op_inv(x, z), q2.op_inv(y, w)));
            pending.push((q1.op_inv(z, x), q2.op_inv(w, y)));
        }
    }
    true
}

/// `|Conj_N(Q)|`, by enumeration over the trivial subgroup.
pub fn conj_n_order(q: &QuandlePresentation, limit: EnumerationLimit) -> Result<usize, BuildError> {
    let g = conj_n_group(q)?;
    enumerate(&g, &[], limit, Strategy::Hlt).map(|t| t.n_cosets()).map_err(BuildError::Group)
}

/// `Π n_i^{|Q_i|}`, saturating at `u128::MAX`.
pub fn conj_n_bound(n: &NLabeling, sizes: &[usize]) -> u128 {
    n.values()
        .iter()
        .zip(sizes)
        .fold(1u128, |acc, (&ni, &s)| acc.saturating_mul((ni as u128).saturating_pow(s as u32)))
}
