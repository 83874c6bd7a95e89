//! Backtracking search for complementary weak pseudomanifolds.
//!
//! The decision state is a [`PairLedger`]: every nonempty proper subset of
//! the vertex set is a face, a non-face, or undecided, and deciding a set
//! decides its complement the other way. Propagation enforces downward
//! closure, complement exclusion, purity and the exact-two rule on
//! codimension-one faces until a fixed point or a conflict.
//!
//! The tree below a fixed split depth is cut into independent subtrees that
//! are explored in parallel. Progress can be checkpointed to a JSON file and
//! resumed; see [`Checkpoint`] for the format.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalForm};
use crate::complementarity::is_complementary;
use crate::complex::{Classification, Complex};
use crate::error::{Error, Result};
use crate::report::EnumerationReport;
use crate::simplex::{k_subsets, Simplex};

const UNDECIDED: u8 = 0;
const FACE: u8 = 1;
const NONFACE: u8 = 2;

/// Largest vertex count accepted by the search.
pub const MAX_VERTICES: usize = 12;

/// Decision depth at which the tree is split into parallel work units. Fixed,
/// so node counts do not depend on the number of threads.
const SPLIT_DEPTH: usize = 6;

/// Status of a complementary pair `{A, V \ A}`, seen from `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairStatus {
    Undecided,
    /// `A` is a face and its complement is not.
    FirstIsFace,
    /// The complement of `A` is a face and `A` is not.
    SecondIsFace,
}

/// Face / non-face decisions over all subsets of an `n`-set, with a trail for
/// undoing and the superset counters needed by propagation.
#[derive(Clone, Debug)]
pub struct PairLedger {
    n: usize,
    d: usize,
    full: u32,
    vals: Vec<u8>,
    /// Immediate supersets currently decided as faces.
    face_up: Vec<u8>,
    /// Immediate supersets still undecided.
    undec_up: Vec<u8>,
    ridges: Vec<u32>,
    trail: Vec<u32>,
    queue: Vec<u32>,
}

impl PairLedger {
    /// Fresh ledger for `d`-dimensional complexes on `n` vertices, with sets
    /// larger than a facet already excluded. `None` if that alone conflicts.
    pub fn new(n: usize, d: usize) -> Result<Option<PairLedger>> {
        if n > MAX_VERTICES || d == 0 || n < d + 2 {
            return Err(Error::InvalidParameters(format!(
                "search needs 1 <= d and d+2 <= n <= {MAX_VERTICES}, got n={n}, d={d}"
            )));
        }
        let full = (1u32 << n) - 1;
        let size = 1usize << n;
        let mut vals = vec![UNDECIDED; size];
        vals[0] = FACE;
        vals[full as usize] = NONFACE;
        let mut face_up = vec![0u8; size];
        let mut undec_up = vec![0u8; size];
        for m in 0..size as u32 {
            for i in 0..n {
                if m >> i & 1 == 0 {
                    match vals[(m | 1 << i) as usize] {
                        FACE => face_up[m as usize] += 1,
                        UNDECIDED => undec_up[m as usize] += 1,
                        _ => {}
                    }
                }
            }
        }
        let ridges = k_subsets(full as u64, d).into_iter().map(|m| m as u32).collect();
        let mut ledger =
            PairLedger { n, d, full, vals, face_up, undec_up, ridges, trail: Vec::new(), queue: Vec::new() };
        for m in 1..full {
            if m.count_ones() as usize >= d + 2 && !ledger.decide(m, false) {
                return Ok(None);
            }
        }
        ledger.trail.clear();
        Ok(Some(ledger))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn status(&self, a: Simplex) -> PairStatus {
        match self.vals.get(a.mask() as usize).copied() {
            Some(FACE) => PairStatus::FirstIsFace,
            Some(NONFACE) => PairStatus::SecondIsFace,
            _ => PairStatus::Undecided,
        }
    }

    pub fn undecided_pairs(&self) -> usize {
        (1..self.full).filter(|&m| self.vals[m as usize] == UNDECIDED).count() / 2
    }

    /// Faces decided so far.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        (1..self.full).filter(|&m| self.vals[m as usize] == FACE).map(|m| Simplex::from_mask_unchecked(m as u64))
    }

    /// Decides `mask` and propagates. On `false` the ledger is inconsistent
    /// and must be rolled back with [`PairLedger::undo_to`].
    pub fn decide(&mut self, mask: u32, face: bool) -> bool {
        let ok = self.assign(mask, if face { FACE } else { NONFACE }) && self.propagate();
        self.queue.clear();
        ok
    }

    pub fn trail_len(&self) -> usize {
        self.trail.len()
    }

    pub fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let m = self.trail.pop().unwrap();
            let v = self.vals[m as usize];
            self.vals[m as usize] = UNDECIDED;
            for i in 0..self.n {
                if m >> i & 1 == 1 {
                    let s = (m ^ 1 << i) as usize;
                    self.undec_up[s] += 1;
                    if v == FACE {
                        self.face_up[s] -= 1;
                    }
                }
            }
        }
    }

    fn assign(&mut self, m: u32, v: u8) -> bool {
        let cur = self.vals[m as usize];
        if cur != UNDECIDED {
            return cur == v;
        }
        self.vals[m as usize] = v;
        self.trail.push(m);
        for i in 0..self.n {
            if m >> i & 1 == 1 {
                let s = m ^ 1 << i;
                self.undec_up[s as usize] -= 1;
                if v == FACE {
                    self.face_up[s as usize] += 1;
                }
                self.queue.push(s);
            }
        }
        self.queue.push(m);
        true
    }

    fn propagate(&mut self) -> bool {
        while let Some(x) = self.queue.pop() {
            if !self.check(x) {
                return false;
            }
        }
        true
    }

    fn assign_undecided_supersets(&mut self, x: u32, v: u8) -> bool {
        for i in 0..self.n {
            let s = x | 1 << i;
            if s != x && self.vals[s as usize] == UNDECIDED && !self.assign(s, v) {
                return false;
            }
        }
        true
    }

    fn check(&mut self, x: u32) -> bool {
        if x == 0 || x == self.full {
            return true;
        }
        let size = x.count_ones() as usize;
        let (f, u) = (self.face_up[x as usize], self.undec_up[x as usize]);
        match self.vals[x as usize] {
            FACE => {
                if size > self.d + 1 || !self.assign(self.full ^ x, NONFACE) {
                    return false;
                }
                if size > 1 {
                    for i in 0..self.n {
                        if x >> i & 1 == 1 && !self.assign(x ^ 1 << i, FACE) {
                            return false;
                        }
                    }
                }
                if size == self.d {
                    if f > 2 || f + u < 2 {
                        return false;
                    }
                    if u > 0 && f == 2 {
                        return self.assign_undecided_supersets(x, NONFACE);
                    }
                    if u > 0 && f + u == 2 {
                        return self.assign_undecided_supersets(x, FACE);
                    }
                } else if size < self.d {
                    if f + u == 0 {
                        return false;
                    }
                    if f == 0 && u == 1 {
                        return self.assign_undecided_supersets(x, FACE);
                    }
                }
                true
            }
            NONFACE => self.assign(self.full ^ x, FACE) && self.assign_undecided_supersets(x, NONFACE),
            _ => {
                let starved = (size == self.d && f + u < 2) || (size < self.d && f + u == 0);
                !starved || self.assign(x, NONFACE)
            }
        }
    }

    /// Next set to branch on, or `None` when every set is decided.
    ///
    /// Prefers the lowest undecided coface of the face ridge with the fewest
    /// open cofaces among those still short of two facets; otherwise the
    /// lowest undecided facet-size set, then the lowest undecided set.
    fn branch(&self) -> Option<u32> {
        let mut best: Option<(u8, u32)> = None;
        for &r in &self.ridges {
            let i = r as usize;
            if self.vals[i] == FACE && self.face_up[i] < 2 && best.is_none_or(|(u, _)| self.undec_up[i] < u) {
                best = Some((self.undec_up[i], r));
            }
        }
        if let Some((_, r)) = best {
            return (0..self.n).map(|i| r | 1 << i).find(|&s| self.vals[s as usize] == UNDECIDED);
        }
        let facet_size =
            (1..self.full).find(|&m| m.count_ones() as usize == self.d + 1 && self.vals[m as usize] == UNDECIDED);
        facet_size.or_else(|| (1..self.full).find(|&m| self.vals[m as usize] == UNDECIDED))
    }

    /// Rebuilds the complex at a fully decided leaf and re-verifies every
    /// property independently of the propagation rules.
    fn verified_leaf(&self) -> Result<Complex> {
        let facets: Vec<Simplex> = (1..self.full)
            .filter(|&m| m.count_ones() as usize == self.d + 1 && self.vals[m as usize] == FACE)
            .map(|m| Simplex::from_mask_unchecked(m as u64))
            .collect();
        let k = Complex::build(facets)?;
        let consistent = (1..self.full)
            .all(|m| k.is_face(Simplex::from_mask_unchecked(m as u64)) == (self.vals[m as usize] == FACE));
        let class = k.classify();
        if !consistent
            || k.n_vertices() != self.n
            || k.dim() != self.d
            || !is_complementary(&k)
            || !matches!(class, Classification::WeakPm | Classification::Pseudomanifold)
        {
            return Err(Error::Verification(format!("search leaf failed re-verification: {k:?} ({class})")));
        }
        Ok(k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Frame {
    mask: u32,
    second: bool,
    #[serde(skip)]
    trail_len: usize,
}

#[derive(PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
}

struct Dfs {
    ledger: PairLedger,
    frames: Vec<Frame>,
    /// Frames below this depth belong to the subtree's prefix.
    base: usize,
    nodes: u64,
}

impl Dfs {
    fn new(ledger: PairLedger) -> Dfs {
        Dfs { ledger, frames: Vec::new(), base: 0, nodes: 0 }
    }

    /// Re-applies recorded decisions. They were consistent when recorded.
    fn replay(&mut self, frames: &[Frame]) -> Result<()> {
        for f in frames {
            let trail_len = self.ledger.trail_len();
            if !self.ledger.decide(f.mask, !f.second) {
                return Err(Error::Verification("recorded decisions no longer replay".into()));
            }
            self.frames.push(Frame { trail_len, ..*f });
        }
        Ok(())
    }

    /// Runs to exhaustion (`Ok(true)`) or until `tick` stops it. `leaf` sees
    /// fully decided ledgers, and also partial ones at depth `cutoff`.
    fn run(
        &mut self,
        cutoff: Option<usize>,
        leaf: &mut dyn FnMut(&PairLedger, &[Frame]) -> Result<()>,
        tick: &mut dyn FnMut(&Dfs) -> Flow,
    ) -> Result<bool> {
        loop {
            if tick(self) == Flow::Stop {
                return Ok(false);
            }
            let branch = if cutoff.is_some_and(|c| self.frames.len() >= c) { None } else { self.ledger.branch() };
            let advanced = match branch {
                None => {
                    leaf(&self.ledger, &self.frames)?;
                    self.backtrack()
                }
                Some(mask) => {
                    let trail_len = self.ledger.trail_len();
                    self.frames.push(Frame { mask, second: false, trail_len });
                    self.nodes += 1;
                    self.ledger.decide(mask, true) || self.backtrack()
                }
            };
            if !advanced {
                return Ok(true);
            }
        }
    }

    /// Moves to the next consistent sibling; `false` when the subtree is done.
    fn backtrack(&mut self) -> bool {
        while self.frames.len() > self.base {
            let f = self.frames.last_mut().unwrap();
            self.ledger.undo_to(f.trail_len);
            if f.second {
                self.frames.pop();
                continue;
            }
            f.second = true;
            let mask = f.mask;
            self.nodes += 1;
            if self.ledger.decide(mask, false) {
                return true;
            }
        }
        false
    }
}

/// Tuning and persistence options for [`search_complementary`].
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Total decision nodes before the search gives up and reports partial
    /// results.
    pub budget: u64,
    /// Worker threads; affects wall time only.
    pub jobs: usize,
    /// Fix the first two facets to cut relabelled copies.
    pub symmetry_breaking: bool,
    /// Where to write checkpoints. Defaults to the resume file if resuming.
    pub checkpoint: Option<PathBuf>,
    /// Nodes per worker between checkpoint writes.
    pub checkpoint_every: u64,
    /// Continue from this checkpoint file.
    pub resume: Option<PathBuf>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 1_000_000_000,
            jobs: 1,
            symmetry_breaking: true,
            checkpoint: None,
            checkpoint_every: 10_000_000,
            resume: None,
        }
    }
}

/// Progress of one work unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "snake_case")]
pub enum SubtreeState {
    Pending,
    Running { frames: Vec<(u32, bool)>, nodes: u64 },
    Done { nodes: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subtree {
    /// Decisions from the root, as `(set bitmask, took the non-face branch)`.
    pub prefix: Vec<(u32, bool)>,
    #[serde(flatten)]
    pub state: SubtreeState,
}

/// Resumable search state, stored as pretty-printed JSON.
///
/// Version 1 fields: `format` (always `"cotopo-search-checkpoint"`),
/// `version`, `n`, `d`, `symmetry_breaking`, `split_nodes` (nodes spent
/// cutting the tree into subtrees), `subtrees` (each with its decision
/// `prefix` and a `state` of `pending`, `running` with the current decision
/// stack and node count, or `done` with its node count) and `classes` (the
/// canonical forms found so far). A running subtree resumes by replaying its
/// stack; the prefix is re-applied first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub format: String,
    pub version: u32,
    pub n: usize,
    pub d: usize,
    pub symmetry_breaking: bool,
    pub split_nodes: u64,
    pub subtrees: Vec<Subtree>,
    pub classes: Vec<CanonicalForm>,
}

pub const CHECKPOINT_FORMAT: &str = "cotopo-search-checkpoint";
pub const CHECKPOINT_VERSION: u32 = 1;

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Checkpoint> {
        let c: Checkpoint = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        if c.format != CHECKPOINT_FORMAT || c.version != CHECKPOINT_VERSION {
            return Err(Error::InvalidParameters(format!(
                "{}: not a version {CHECKPOINT_VERSION} search checkpoint",
                path.display()
            )));
        }
        Ok(c)
    }

    /// Writes via a temporary file so an interrupted write never truncates
    /// the previous checkpoint.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_string_pretty(self)?)?;
        std::fs::rename(tmp, path)?;
        Ok(())
    }

    pub fn nodes(&self) -> u64 {
        self.split_nodes
            + self
                .subtrees
                .iter()
                .map(|s| match s.state {
                    SubtreeState::Pending => 0,
                    SubtreeState::Running { nodes, .. } | SubtreeState::Done { nodes } => nodes,
                })
                .sum::<u64>()
    }

    pub fn is_complete(&self) -> bool {
        self.subtrees.iter().all(|s| matches!(s.state, SubtreeState::Done { .. }))
    }
}

fn to_pairs(frames: &[Frame]) -> Vec<(u32, bool)> {
    frames.iter().map(|f| (f.mask, f.second)).collect()
}

fn to_frames(pairs: &[(u32, bool)]) -> Vec<Frame> {
    pairs.iter().map(|&(mask, second)| Frame { mask, second, trail_len: 0 }).collect()
}

/// Root ledger with the symmetry-breaking facets fixed, or `None` if no
/// complex can exist.
fn root_ledger(n: usize, d: usize, symmetry_breaking: bool) -> Result<Option<PairLedger>> {
    let Some(mut ledger) = PairLedger::new(n, d)? else {
        return Ok(None);
    };
    if symmetry_breaking {
        // Any facet can be renamed {0..d}; its ridge {0..d-1} lies in exactly
        // one further facet, whose extra vertex can be renamed d+1.
        let first = (1u32 << (d + 1)) - 1;
        let second = (first ^ 1 << d) | 1 << (d + 1);
        if !ledger.decide(first, true) || !ledger.decide(second, true) {
            return Ok(None);
        }
    }
    Ok(Some(ledger))
}

fn fresh_checkpoint(n: usize, d: usize, root: Option<&PairLedger>, symmetry_breaking: bool) -> Result<Checkpoint> {
    let mut subtrees = Vec::new();
    let mut split_nodes = 0;
    if let Some(root) = root {
        let mut dfs = Dfs::new(root.clone());
        dfs.run(
            Some(SPLIT_DEPTH),
            &mut |_, frames| {
                subtrees.push(Subtree { prefix: to_pairs(frames), state: SubtreeState::Pending });
                Ok(())
            },
            &mut |_| Flow::Continue,
        )?;
        split_nodes = dfs.nodes;
    }
    Ok(Checkpoint {
        format: CHECKPOINT_FORMAT.into(),
        version: CHECKPOINT_VERSION,
        n,
        d,
        symmetry_breaking,
        split_nodes,
        subtrees,
        classes: Vec::new(),
    })
}

struct Shared<'a> {
    state: Mutex<(Checkpoint, BTreeSet<CanonicalForm>)>,
    nodes: AtomicU64,
    labeled: AtomicU64,
    budget: u64,
    checkpoint: Option<&'a Path>,
    every: u64,
}

impl Shared<'_> {
    fn record(&self, index: usize, state: SubtreeState, found: &BTreeSet<CanonicalForm>) -> Result<()> {
        let mut guard = self.state.lock().expect("checkpoint lock");
        let (ck, classes) = &mut *guard;
        ck.subtrees[index].state = state;
        classes.extend(found.iter().cloned());
        if let Some(path) = self.checkpoint {
            ck.classes = classes.iter().cloned().collect();
            ck.save(path)?;
        }
        Ok(())
    }
}

fn run_subtree(root: &PairLedger, index: usize, unit: &Subtree, shared: &Shared<'_>) -> Result<()> {
    let (resume_frames, nodes_before) = match &unit.state {
        SubtreeState::Done { .. } => return Ok(()),
        SubtreeState::Pending => (Vec::new(), 0),
        SubtreeState::Running { frames, nodes } => (frames.clone(), *nodes),
    };
    let mut dfs = Dfs::new(root.clone());
    dfs.replay(&to_frames(&unit.prefix))?;
    dfs.base = dfs.frames.len();
    dfs.replay(&to_frames(&resume_frames))?;
    dfs.nodes = nodes_before;

    let found = std::cell::RefCell::new(BTreeSet::new());
    let mut flushed = nodes_before;
    let mut last_checkpoint = nodes_before;
    let mut failure = None;
    let exhausted = dfs.run(
        None,
        &mut |ledger, _| {
            let k = ledger.verified_leaf()?;
            shared.labeled.fetch_add(1, Ordering::Relaxed);
            found.borrow_mut().insert(canonical_form(&k));
            Ok(())
        },
        &mut |dfs| {
            if dfs.nodes - flushed >= 4096 {
                let total = shared.nodes.fetch_add(dfs.nodes - flushed, Ordering::Relaxed) + dfs.nodes - flushed;
                flushed = dfs.nodes;
                if total >= shared.budget {
                    return Flow::Stop;
                }
            } else if shared.nodes.load(Ordering::Relaxed) >= shared.budget {
                return Flow::Stop;
            }
            if shared.checkpoint.is_some() && dfs.nodes - last_checkpoint >= shared.every {
                last_checkpoint = dfs.nodes;
                let state = SubtreeState::Running { frames: to_pairs(&dfs.frames[dfs.base..]), nodes: dfs.nodes };
                if let Err(e) = shared.record(index, state, &found.borrow()) {
                    failure = Some(e);
                    return Flow::Stop;
                }
            }
            Flow::Continue
        },
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    shared.nodes.fetch_add(dfs.nodes - flushed, Ordering::Relaxed);
    let state = if exhausted {
        SubtreeState::Done { nodes: dfs.nodes }
    } else {
        SubtreeState::Running { frames: to_pairs(&dfs.frames[dfs.base..]), nodes: dfs.nodes }
    };
    shared.record(index, state, &found.into_inner())
}

/// All classes of `n`-vertex `d`-dimensional complementary weak
/// pseudomanifolds (every ridge in exactly two facets), up to isomorphism.
///
/// `complete` is false when the node budget ran out; the classes found so
/// far are still returned, and a checkpoint (if configured) allows resuming.
pub fn search_complementary(n: usize, d: usize, opts: &SearchOptions) -> Result<EnumerationReport> {
    let start = Instant::now();
    let root = root_ledger(n, d, opts.symmetry_breaking)?;
    let ck = match &opts.resume {
        Some(path) => {
            let ck = Checkpoint::load(path)?;
            if (ck.n, ck.d, ck.symmetry_breaking) != (n, d, opts.symmetry_breaking) {
                return Err(Error::InvalidParameters(format!(
                    "checkpoint is for n={}, d={}, symmetry_breaking={}",
                    ck.n, ck.d, ck.symmetry_breaking
                )));
            }
            ck
        }
        None => fresh_checkpoint(n, d, root.as_ref(), opts.symmetry_breaking)?,
    };
    let checkpoint_path = opts.checkpoint.as_deref().or(opts.resume.as_deref());
    let classes: BTreeSet<CanonicalForm> = ck.classes.iter().cloned().collect();
    let units = ck.subtrees.clone();
    let shared = Shared {
        nodes: AtomicU64::new(ck.nodes()),
        state: Mutex::new((ck, classes)),
        labeled: AtomicU64::new(0),
        budget: opts.budget,
        checkpoint: checkpoint_path,
        every: opts.checkpoint_every.max(1),
    };
    if let Some(root) = &root {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs.max(1))
            .build()
            .map_err(|e| Error::InvalidParameters(e.to_string()))?;
        pool.install(|| units.par_iter().enumerate().try_for_each(|(i, unit)| run_subtree(root, i, unit, &shared)))?;
    } else if let Some(path) = checkpoint_path {
        shared.state.lock().expect("checkpoint lock").0.save(path)?;
    }
    let (ck, classes) = shared.state.into_inner().expect("checkpoint lock");
    let mut parameters = std::collections::BTreeMap::new();
    parameters.insert("vertices".to_string(), n as u64);
    parameters.insert("dim".to_string(), d as u64);
    Ok(EnumerationReport {
        kind: "complementary".into(),
        parameters,
        classes: classes.into_iter().collect(),
        labeled_count: shared.labeled.into_inner(),
        complete: ck.is_complete(),
        nodes: ck.nodes(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Every labelled solution, without symmetry breaking or deduplication.
/// Meant for small instances and for cross-checking the propagation.
pub fn labeled_solutions(n: usize, d: usize) -> Result<Vec<Complex>> {
    let mut out = Vec::new();
    if let Some(root) = root_ledger(n, d, false)? {
        let mut dfs = Dfs::new(root);
        dfs.run(
            None,
            &mut |ledger, _| {
                out.push(ledger.verified_leaf()?);
                Ok(())
            },
            &mut |_| Flow::Continue,
        )?;
    }
    out.sort_by(|a, b| a.facets().cmp(b.facets()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledger_initial_state() {
        let l = PairLedger::new(6, 2).unwrap().unwrap();
        // Only the 3-sets remain open: ten complementary pairs.
        assert_eq!(l.undecided_pairs(), 10);
        assert_eq!(l.status(Simplex::from_vertices([0, 1]).unwrap()), PairStatus::FirstIsFace);
        assert_eq!(l.status(Simplex::from_vertices([0, 1, 2, 3]).unwrap()), PairStatus::SecondIsFace);
        assert!(PairLedger::new(13, 2).is_err());
        assert!(PairLedger::new(3, 2).is_err());
    }

    #[test]
    fn decisions_undo_cleanly() {
        let mut l = PairLedger::new(6, 2).unwrap().unwrap();
        let before = l.vals.clone();
        let mark = l.trail_len();
        assert!(l.decide(0b000111, true));
        assert!(l.undecided_pairs() < 10);
        l.undo_to(mark);
        assert_eq!(l.vals, before);
    }

    #[test]
    fn six_two_single_class() {
        let r = search_complementary(6, 2, &SearchOptions::default()).unwrap();
        assert!(r.complete);
        assert_eq!(r.class_count(), 1);
        assert_eq!(r.classes[0].to_complex().face_profile().counts, vec![6, 15, 10]);
    }

    #[test]
    fn seven_three_is_empty() {
        let r = search_complementary(7, 3, &SearchOptions::default()).unwrap();
        assert!(r.complete);
        assert_eq!(r.class_count(), 0);
    }

    #[test]
    fn tiny_budget_is_incomplete() {
        let opts = SearchOptions { budget: 1, ..Default::default() };
        let r = search_complementary(9, 4, &opts).unwrap();
        assert!(!r.complete);
    }
}
