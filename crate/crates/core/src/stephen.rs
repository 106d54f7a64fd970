//! Inverse presentations and Stephen's sequence of approximations to
//! Schützenberger automata.

use std::cell::{Cell, RefCell};
use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::engine::ElementOracle;
use crate::munn::{fold_identifying, linear_automaton, InverseAutomaton};
use crate::words::{invert_word, parse_word, Alphabet, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct PresentationError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub relations: Vec<(Word, Word)>,
    pub monoid: bool,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.chars().count(), |nl| before[nl + 1..].chars().count()) + 1;
    (line, column)
}

impl Presentation {
    pub fn parse(text: &str) -> Result<Presentation, PresentationError> {
        let err = |offset: usize, message: String| {
            let (line, column) = line_col(text, offset);
            PresentationError { line, column, message }
        };
        // blank out comments byte for byte so offsets stay valid
        let mut cleaned = String::with_capacity(text.len());
        let mut in_comment = false;
        for c in text.chars() {
            match c {
                '\n' => {
                    in_comment = false;
                    cleaned.push('\n');
                }
                '#' => in_comment = true,
                _ => {}
            }
            if in_comment {
                cleaned.extend(std::iter::repeat_n(' ', c.len_utf8()));
            } else if c != '\n' {
                cleaned.push(c);
            }
        }
        let mut statements: Vec<(usize, String)> = Vec::new();
        let mut offset = 0;
        for piece in cleaned.split(';') {
            statements.push((offset, piece.to_string()));
            offset += piece.len() + 1;
        }
        let mut iter = statements.into_iter().filter(|(_, s)| !s.trim().is_empty());
        let (head_at, head) = iter.next().ok_or_else(|| err(0, "missing `inv-semigroup` or `inv-monoid` header".into()))?;
        let mut words = head.split_whitespace();
        let monoid = match words.next() {
            Some("inv-monoid") => true,
            Some("inv-semigroup") => false,
            other => {
                return Err(err(
                    head_at + leading_ws(&head),
                    format!("expected `inv-semigroup` or `inv-monoid`, found {:?}", other.unwrap_or("")),
                ))
            }
        };
        let letters: Vec<&str> = words.collect();
        if letters.is_empty() {
            return Err(err(head_at, "header declares no letters".into()));
        }
        for l in &letters {
            if !l.bytes().next().is_some_and(|b| b.is_ascii_lowercase())
                || !l.bytes().all(|b| b.is_ascii_lowercase() || b.is_ascii_digit())
            {
                return Err(err(head_at + head.find(l).unwrap_or(0), format!("bad letter name {l:?}")));
            }
        }
        let mut alphabet = Alphabet::sealed(&letters);
        let mut relations = Vec::new();
        for (at, stmt) in iter {
            let Some(eq) = stmt.find('=') else {
                return Err(err(at + leading_ws(&stmt), "relation needs `=`".into()));
            };
            if stmt[eq + 1..].contains('=') {
                return Err(err(at + eq + 1 + stmt[eq + 1..].find('=').unwrap_or(0), "more than one `=`".into()));
            }
            let mut side = |from: usize, s: &str| -> Result<Word, PresentationError> {
                if s.trim().is_empty() {
                    return Err(err(at + from, "empty side (write `1` for the empty word)".into()));
                }
                let w = parse_word(s, &mut alphabet).map_err(|e| err(at + from + e.pos, e.message))?;
                if w.is_empty() && !monoid {
                    return Err(err(at + from + leading_ws(s), "empty word is only allowed in inv-monoid".into()));
                }
                Ok(w)
            };
            let lhs = side(0, &stmt[..eq])?;
            let rhs = side(eq + 1, &stmt[eq + 1..])?;
            relations.push((lhs, rhs));
        }
        Ok(Presentation { alphabet, relations, monoid })
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        let mut alphabet = self.alphabet.clone();
        let w = parse_word(text, &mut alphabet).map_err(|e| {
            let (line, column) = line_col(text, e.pos);
            PresentationError { line, column, message: e.message }
        })?;
        if w.is_empty() && !self.monoid {
            return Err(PresentationError { line: 1, column: 1, message: "empty word in a semigroup presentation".into() });
        }
        Ok(w)
    }

    pub fn show(&self, w: &Word) -> String {
        w.display(&self.alphabet).to_string()
    }

    /// Relations in both directions, as (premise, conclusion).
    fn rules(&self) -> impl Iterator<Item = (&Word, &Word)> {
        self.relations.iter().flat_map(|(l, r)| [(l, r), (r, l)])
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = if self.monoid { "inv-monoid" } else { "inv-semigroup" };
        write!(f, "{head} {}", self.alphabet.names().join(" "))?;
        for (l, r) in &self.relations {
            write!(f, " ; {} = {}", self.show(l), self.show(r))?;
        }
        Ok(())
    }
}

fn leading_ws(s: &str) -> usize {
    s.len() - s.trim_start().len()
}

/// An R-expansion: the expanded (possibly nondeterministic) automaton and
/// the vertex pairs to identify for empty conclusions.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub automaton: InverseAutomaton,
    pub merges: Vec<(usize, usize)>,
    pub applied: usize,
}

/// All R-expansions applicable to `aut`, decided against `aut` itself.
pub fn r_expand(aut: &InverseAutomaton, pres: &Presentation) -> Expansion {
    let trans = aut.transitions().expect("R-expansion needs a deterministic automaton");
    let mut out = aut.clone();
    let mut merges = Vec::new();
    let mut applied = 0;
    for (premise, conclusion) in pres.rules() {
        for p in 0..aut.vertex_count() {
            let Some(q) = InverseAutomaton::read(&trans, p, premise) else { continue };
            if conclusion.is_empty() {
                if p != q {
                    merges.push((p, q));
                    applied += 1;
                }
            } else if InverseAutomaton::read(&trans, p, conclusion) != Some(q) {
                out.add_path(p, conclusion, q);
                applied += 1;
            }
        }
    }
    Expansion { automaton: out, merges, applied }
}

/// One stage: all expansions, then a single fold. Also returns the number of
/// expansions applied (zero means `aut` is already closed).
pub fn stephen_step(aut: &InverseAutomaton, pres: &Presentation) -> (InverseAutomaton, usize) {
    let e = r_expand(aut, pres);
    if e.applied == 0 {
        return (aut.clone(), 0);
    }
    (fold_identifying(&e.automaton, &e.merges).automaton, e.applied)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StephenBudget {
    pub max_stages: usize,
    pub max_vertices: usize,
}

impl StephenBudget {
    pub fn stages(max_stages: usize) -> Self {
        StephenBudget { max_stages, max_vertices: 200_000 }
    }
}

impl Default for StephenBudget {
    fn default() -> Self {
        StephenBudget { max_stages: 25, max_vertices: 200_000 }
    }
}

/// Produces `SΓ₁(u), SΓ₂(u), …` lazily.
pub struct Stepper<'p> {
    pres: &'p Presentation,
    current: InverseAutomaton,
    stage: usize,
    closed: bool,
}

impl<'p> Stepper<'p> {
    pub fn new(u: &Word, pres: &'p Presentation) -> Self {
        let current = if u.is_empty() {
            InverseAutomaton::trivial()
        } else {
            fold_identifying(&linear_automaton(u), &[]).automaton
        };
        Stepper { pres, current, stage: 1, closed: false }
    }

    pub fn current(&self) -> &InverseAutomaton {
        &self.current
    }

    pub fn stage(&self) -> usize {
        self.stage
    }

    pub fn closed(&self) -> bool {
        self.closed
    }

    /// Advances one stage; returns the number of expansions applied.
    pub fn advance(&mut self) -> usize {
        if self.closed {
            return 0;
        }
        let (next, applied) = stephen_step(&self.current, self.pres);
        if applied == 0 {
            self.closed = true;
        } else {
            self.current = next;
            self.stage += 1;
        }
        applied
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StageTrace {
    pub stages: Vec<InverseAutomaton>,
    /// Expansions applied to produce each stage after the first.
    pub expansions: Vec<usize>,
    pub closed: bool,
}

impl StageTrace {
    pub fn last(&self) -> &InverseAutomaton {
        self.stages.last().expect("a trace has at least one stage")
    }

    pub fn vertex_counts(&self) -> Vec<usize> {
        self.stages.iter().map(InverseAutomaton::vertex_count).collect()
    }
}

pub fn stephen_run(u: &Word, pres: &Presentation, budget: StephenBudget) -> StageTrace {
    let mut st = Stepper::new(u, pres);
    let mut stages = vec![st.current().clone()];
    let mut expansions = Vec::new();
    loop {
        if stages.len() >= budget.max_stages || st.current().vertex_count() > budget.max_vertices {
            // one more look to see whether the last stage is already closed
            if st.current().vertex_count() <= budget.max_vertices && r_expand(st.current(), pres).applied == 0 {
                return StageTrace { stages, expansions, closed: true };
            }
            return StageTrace { stages, expansions, closed: false };
        }
        let applied = st.advance();
        if st.closed() {
            return StageTrace { stages, expansions, closed: true };
        }
        expansions.push(applied);
        stages.push(st.current().clone());
    }
}

/// Does `w` label a path from the base to the final vertex?
pub fn accepts(aut: &InverseAutomaton, w: &Word) -> bool {
    let Some(f) = aut.final_vertex() else { return false };
    match aut.transitions() {
        Ok(trans) => InverseAutomaton::read(&trans, aut.base(), w) == Some(f),
        Err(_) => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Equal { stage: usize },
    Distinct,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equal { stage } => write!(f, "equal (stage {stage})"),
            Verdict::Distinct => f.write_str("distinct"),
            Verdict::Unknown => f.write_str("unknown"),
        }
    }
}

/// Semidecides `u τ v` by running both sequences in lockstep.
pub fn tau_equal(u: &Word, v: &Word, pres: &Presentation, budget: StephenBudget) -> Verdict {
    let mut su = Stepper::new(u, pres);
    let mut sv = Stepper::new(v, pres);
    for stage in 1..=budget.max_stages {
        if accepts(su.current(), v) && accepts(sv.current(), u) {
            return Verdict::Equal { stage };
        }
        if su.closed() && sv.closed() {
            return Verdict::Distinct;
        }
        if su.current().vertex_count() > budget.max_vertices || sv.current().vertex_count() > budget.max_vertices {
            return Verdict::Unknown;
        }
        su.advance();
        sv.advance();
    }
    if accepts(su.current(), v) && accepts(sv.current(), u) {
        return Verdict::Equal { stage: budget.max_stages };
    }
    Verdict::Unknown
}

/// Unpointed canonical form of the closed Schützenberger graph of `u`, or
/// `None` when the trace does not close within budget.
pub fn dclass_signature(u: &Word, pres: &Presentation, budget: StephenBudget) -> Option<Vec<u32>> {
    let trace = stephen_run(u, pres, budget);
    trace.closed.then(|| trace.last().canonical_unpointed().expect("stages are deterministic"))
}

/// DOT text with vertices renumbered breadth-first from the base.
pub fn dot_export(aut: &InverseAutomaton, alphabet: &Alphabet, name: &str) -> String {
    let mut order = vec![usize::MAX; aut.vertex_count()];
    let mut adj: Vec<Vec<(u32, usize)>> = vec![Vec::new(); aut.vertex_count()];
    for &(p, a, q) in aut.edges() {
        adj[p].push((a * 2, q));
        adj[q].push((a * 2 + 1, p));
    }
    for v in &mut adj {
        v.sort_unstable();
    }
    let mut queue = VecDeque::from([aut.base()]);
    order[aut.base()] = 0;
    let mut next = 1;
    while let Some(v) = queue.pop_front() {
        for &(_, w) in &adj[v] {
            if order[w] == usize::MAX {
                order[w] = next;
                next += 1;
                queue.push_back(w);
            }
        }
    }
    for o in &mut order {
        if *o == usize::MAX {
            *o = next;
            next += 1;
        }
    }
    let relabeled = InverseAutomaton::from_parts(
        aut.vertex_count(),
        aut.edges().iter().map(|&(p, a, q)| (order[p], a, order[q])),
        order[aut.base()],
        aut.final_vertex().map(|f| order[f]),
    );
    relabeled.to_dot(alphabet, name)
}

/// Elements of a presented inverse semigroup as words, identified by the
/// pointed canonical form of their closed Schützenberger automaton. Words
/// whose trace does not close set [`PresentationOracle::incomplete`].
pub struct PresentationOracle<'p> {
    pub pres: &'p Presentation,
    pub budget: StephenBudget,
    cache: RefCell<HashMap<Word, Vec<u32>>>,
    incomplete: Cell<bool>,
}

impl<'p> PresentationOracle<'p> {
    pub fn new(pres: &'p Presentation, budget: StephenBudget) -> Self {
        PresentationOracle { pres, budget, cache: RefCell::new(HashMap::new()), incomplete: Cell::new(false) }
    }

    pub fn incomplete(&self) -> bool {
        self.incomplete.get()
    }

    /// `a` and `a⁻¹` for every letter, plus `1` in monoid mode.
    pub fn generators(&self) -> Vec<Word> {
        let mut gens = Vec::new();
        if self.pres.monoid {
            gens.push(Word::empty());
        }
        for l in 0..self.pres.alphabet.len() as u32 {
            gens.push(Word::power(l, 1));
            gens.push(Word::power(l, -1));
        }
        gens
    }
}

impl ElementOracle for PresentationOracle<'_> {
    type Element = Word;
    type Key = Vec<u32>;

    // distinct words sharing a key is the whole point
    const CHECK_COLLISIONS: bool = false;

    fn multiply(&self, a: &Word, b: &Word) -> Word {
        a.concat(b)
    }

    fn key(&self, e: &Word) -> Vec<u32> {
        if let Some(k) = self.cache.borrow().get(e) {
            return k.clone();
        }
        let trace = stephen_run(e, self.pres, self.budget);
        if !trace.closed {
            self.incomplete.set(true);
        }
        let k = trace.last().canonical_pointed().expect("stages are deterministic");
        self.cache.borrow_mut().insert(e.clone(), k.clone());
        k
    }

    fn label(&self, e: &Word) -> String {
        self.pres.show(e).replace(' ', "")
    }

    fn unary(&self, e: &Word) -> Option<Word> {
        Some(invert_word(e))
    }
}
