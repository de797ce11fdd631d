//! Depth-first enumeration of legitimate diagrams.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;

use super::diagram::{Diagram, PointId, BASE};
use super::{DecideError, DecideOptions};
use crate::term::{Generator, JoinOfMeets};

type Letter = (usize, i8);

/// The words of a join-of-meets normal form, spelled in unit letters over
/// generator indices.
pub(crate) struct Problem {
    pub gens: Vec<Generator>,
    pub rows: Vec<Vec<Vec<Letter>>>,
}

impl Problem {
    pub fn new(nf: &JoinOfMeets) -> Self {
        let gens: Vec<Generator> = nf
            .words()
            .flat_map(|w| w.letters().iter().map(|(g, _)| g.clone()))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let index = |g: &Generator| gens.iter().position(|h| h == g).unwrap();
        let rows = nf
            .rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|w| w.unit_letters().map(|(g, s)| (index(g), s)).collect())
                    .collect()
            })
            .collect();
        Problem { gens, rows }
    }
}

#[derive(Clone)]
pub(crate) struct State {
    pub diagram: Diagram,
    row: usize,
    word: usize,
    letter: usize,
    cursor: PointId,
    /// Least endpoint seen in the current row (pruned mode).
    row_min: Option<PointId>,
    /// Some completed row evaluated exactly to the base point (pruned mode).
    hit: bool,
}

enum Step {
    Branch(Vec<State>),
    NotIdentity(State),
    Identity,
}

struct Shared {
    created: AtomicUsize,
    stop: AtomicBool,
    limit: Option<usize>,
}

impl Shared {
    fn charge(&self, n: usize) -> Result<(), DecideError> {
        let total = self.created.fetch_add(n, Ordering::Relaxed) + n;
        match self.limit {
            Some(limit) if total > limit => {
                self.stop.store(true, Ordering::Relaxed);
                Err(DecideError::ResourceExhausted { limit })
            }
            _ => Ok(()),
        }
    }
}

pub(crate) struct Outcome {
    pub witness: Option<Diagram>,
    pub diagrams: usize,
}

pub(crate) struct Engine<'a> {
    problem: &'a Problem,
    prune: bool,
    dedupe: bool,
}

impl<'a> Engine<'a> {
    pub fn new(problem: &'a Problem, opts: &DecideOptions) -> Self {
        Engine {
            problem,
            prune: opts.prune,
            dedupe: opts.dedupe,
        }
    }

    fn initial(&self) -> State {
        State {
            diagram: Diagram::new(&self.problem.gens),
            row: 0,
            word: 0,
            letter: 0,
            cursor: BASE,
            row_min: None,
            hit: false,
        }
    }

    fn above_base(d: &Diagram, p: PointId) -> std::cmp::Ordering {
        d.rank(p).cmp(&d.rank(BASE))
    }

    /// Advances `s` through word and row boundaries until a letter must be
    /// traced, then branches on that letter.
    fn step(&self, mut s: State, shared: &Shared) -> Result<Step, DecideError> {
        use std::cmp::Ordering::*;
        let rows = &self.problem.rows;
        loop {
            if s.row == rows.len() {
                let identity = if self.prune {
                    s.hit
                } else {
                    endpoint(&s.diagram, rows, &s.diagram.trace) == BASE
                };
                return Ok(if identity { Step::Identity } else { Step::NotIdentity(s) });
            }
            let word = &rows[s.row][s.word];
            if s.letter < word.len() {
                let (g, sign) = word[s.letter];
                let exts = s.diagram.extend_at(s.cursor, g, sign);
                shared.charge(exts.len())?;
                let children = exts
                    .into_iter()
                    .map(|e| State {
                        diagram: e.diagram,
                        cursor: e.image,
                        letter: s.letter + 1,
                        ..s.clone()
                    })
                    .collect();
                return Ok(Step::Branch(children));
            }
            // The current word is complete.
            let end = s.cursor;
            s.diagram.trace.push(end);
            let row_len = rows[s.row].len();
            let mut next_row = s.word + 1 == row_len;
            if self.prune {
                let d = &s.diagram;
                let min = match s.row_min {
                    Some(m) if d.rank(m) <= d.rank(end) => m,
                    _ => end,
                };
                s.row_min = Some(min);
                match Self::above_base(d, min) {
                    // The row's meet can only decrease further: it lies below 0.
                    Less => next_row = true,
                    Greater if next_row => return Ok(Step::NotIdentity(s)),
                    Equal if next_row => s.hit = true,
                    _ => {}
                }
            }
            if next_row {
                s.row += 1;
                s.word = 0;
                s.row_min = None;
            } else {
                s.word += 1;
            }
            s.letter = 0;
            s.cursor = BASE;
            if s.row < rows.len() {
                // Hand word boundaries back to the driver so it can deduplicate.
                return Ok(Step::Branch(vec![s]));
            }
        }
    }

    fn signature(&self, s: &State) -> Vec<u32> {
        let d = &s.diagram;
        let mut sig = vec![
            s.row as u32,
            s.word as u32,
            s.row_min.map_or(u32::MAX, |p| d.rank(p) as u32),
            s.hit as u32,
        ];
        if !self.prune {
            sig.extend(d.trace.iter().map(|p| d.rank(*p) as u32));
        }
        d.signature_into(&mut sig);
        sig
    }

    fn dfs(&self, start: State, shared: &Shared) -> Result<Option<State>, DecideError> {
        let mut stack = vec![start];
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        while let Some(s) = stack.pop() {
            if shared.stop.load(Ordering::Relaxed) {
                return Ok(None);
            }
            if self.dedupe && s.letter == 0 && !seen.insert(self.signature(&s)) {
                continue;
            }
            match self.step(s, shared)? {
                Step::Identity => {}
                Step::NotIdentity(found) => return Ok(Some(found)),
                Step::Branch(children) => stack.extend(children.into_iter().rev()),
            }
        }
        Ok(None)
    }

    /// Searches for a diagram in which the term does not evaluate to 0.
    pub fn run(&self, opts: &DecideOptions) -> Result<Outcome, DecideError> {
        let shared = Shared {
            created: AtomicUsize::new(0),
            stop: AtomicBool::new(false),
            limit: opts.max_diagrams,
        };
        let found = if opts.jobs <= 1 || opts.deterministic {
            self.dfs(self.initial(), &shared)?
        } else {
            self.run_parallel(opts.jobs, &shared)?
        };
        let witness = found.map(|s| self.complete(s.diagram));
        Ok(Outcome {
            witness,
            diagrams: shared.created.load(Ordering::Relaxed),
        })
    }

    fn run_parallel(&self, jobs: usize, shared: &Shared) -> Result<Option<State>, DecideError> {
        // Breadth-first until there is enough independent work to share out.
        let mut frontier = std::collections::VecDeque::from([self.initial()]);
        while !frontier.is_empty() && frontier.len() < 8 * jobs {
            let s = frontier.pop_front().unwrap();
            match self.step(s, shared)? {
                Step::Identity => {}
                Step::NotIdentity(found) => return Ok(Some(found)),
                Step::Branch(children) => frontier.extend(children),
            }
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        let found: Mutex<Option<Result<State, DecideError>>> = Mutex::new(None);
        pool.install(|| {
            frontier.into_par_iter().for_each(|s| {
                if shared.stop.load(Ordering::Relaxed) {
                    return;
                }
                let r = self.dfs(s, shared);
                let report = match r {
                    Ok(None) => None,
                    Ok(Some(st)) => Some(Ok(st)),
                    Err(e) => Some(Err(e)),
                };
                if let Some(rep) = report {
                    shared.stop.store(true, Ordering::Relaxed);
                    let mut slot = found.lock().unwrap();
                    if slot.is_none() {
                        *slot = Some(rep);
                    }
                }
            })
        });
        found.into_inner().unwrap().transpose()
    }

    /// Re-traces every word through `d`, taking the first legitimate
    /// placement wherever the diagram leaves a letter undetermined.
    pub fn complete(&self, mut d: Diagram) -> Diagram {
        d.trace.clear();
        for row in &self.problem.rows {
            for word in row {
                let mut p = BASE;
                for &(g, sign) in word {
                    let e = d.extend_at(p, g, sign).swap_remove(0);
                    d = e.diagram;
                    p = e.image;
                }
                d.trace.push(p);
            }
        }
        d
    }
}

/// `maxᵢ minⱼ 0·wᵢⱼ` in the chain order of `d`, given word endpoints in
/// enumeration order.
pub(crate) fn endpoint(d: &Diagram, rows: &[Vec<Vec<Letter>>], ends: &[PointId]) -> PointId {
    let mut it = ends.iter();
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|_| *it.next().expect("one endpoint per word"))
                .min_by_key(|p| d.rank(*p))
                .expect("non-empty row")
        })
        .max_by_key(|p| d.rank(*p))
        .expect("non-empty rows")
}
