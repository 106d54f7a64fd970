//! Inverse automata, folding, Munn trees and arithmetic in free inverse
//! semigroups.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::dsu::DisjointSets;
use crate::engine::ElementOracle;
use crate::words::{reduce, Alphabet, Letter, SignedLetter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MunnError {
    #[error("the empty word has no Munn tree in a free inverse semigroup")]
    EmptyWord,
    #[error("word uses more than one letter")]
    NotSingleLetter,
    #[error("automaton is not deterministic at vertex {0}")]
    NotDeterministic(usize),
    #[error("invalid triple ({r}, {s}, {t})")]
    BadTriple { r: i64, s: i64, t: i64 },
}

/// Transition lookup `(vertex, signed letter) -> vertex` of a deterministic automaton.
pub type Transitions = HashMap<(usize, SignedLetter), usize>;

/// Only positive edges `p --a--> q` are stored; `q --a⁻¹--> p` is implied.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct InverseAutomaton {
    vertices: usize,
    edges: Vec<(usize, Letter, usize)>,
    base: usize,
    final_vertex: Option<usize>,
}

impl InverseAutomaton {
    /// A single vertex with no edges.
    pub fn trivial() -> Self {
        InverseAutomaton { vertices: 1, edges: Vec::new(), base: 0, final_vertex: Some(0) }
    }

    pub fn from_parts(
        vertices: usize,
        edges: impl IntoIterator<Item = (usize, Letter, usize)>,
        base: usize,
        final_vertex: Option<usize>,
    ) -> Self {
        let set: BTreeSet<_> = edges.into_iter().collect();
        assert!(set.iter().all(|&(p, _, q)| p < vertices && q < vertices), "edge endpoint out of range");
        assert!(base < vertices);
        InverseAutomaton { vertices, edges: set.into_iter().collect(), base, final_vertex }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, Letter, usize)] {
        &self.edges
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn final_vertex(&self) -> Option<usize> {
        self.final_vertex
    }

    pub fn set_final(&mut self, v: Option<usize>) {
        self.final_vertex = v;
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertices += 1;
        self.vertices - 1
    }

    /// Adds `p --l--> q`, stored in its positive orientation.
    pub fn add_edge(&mut self, p: usize, l: SignedLetter, q: usize) {
        let e = if l.inverse { (q, l.letter, p) } else { (p, l.letter, q) };
        if let Err(pos) = self.edges.binary_search(&e) {
            self.edges.insert(pos, e);
        }
    }

    /// Adds a fresh path labelled `w` from `p` to `q`.
    pub fn add_path(&mut self, p: usize, w: &Word, q: usize) {
        let letters = w.letters();
        if letters.is_empty() {
            return;
        }
        let mut cur = p;
        for (i, &l) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() { q } else { self.add_vertex() };
            self.add_edge(cur, l, next);
            cur = next;
        }
    }

    pub fn transitions(&self) -> Result<Transitions, MunnError> {
        let mut t = Transitions::with_capacity(2 * self.edges.len());
        for &(p, a, q) in &self.edges {
            for (from, l, to) in [(p, SignedLetter::pos(a), q), (q, SignedLetter::neg(a), p)] {
                if let Some(&old) = t.get(&(from, l)) {
                    if old != to {
                        return Err(MunnError::NotDeterministic(from));
                    }
                }
                t.insert((from, l), to);
            }
        }
        Ok(t)
    }

    pub fn is_deterministic(&self) -> bool {
        self.transitions().is_ok()
    }

    pub fn is_connected(&self) -> bool {
        let mut dsu = DisjointSets::new(self.vertices);
        let mut comps = self.vertices;
        for &(p, _, q) in &self.edges {
            if dsu.union(p, q).is_some() {
                comps -= 1;
            }
        }
        comps == 1
    }

    /// Underlying undirected graph is a tree (counting a loop or parallel
    /// edge as a cycle).
    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.vertices && self.is_connected()
    }

    /// Canonical encoding from `start`: vertices numbered in breadth-first
    /// order, edges visited by signed-letter rank.
    fn canonical_from(&self, trans: &Transitions, start: usize) -> Vec<u32> {
        let mut out_edges: Vec<Vec<(u32, usize)>> = vec![Vec::new(); self.vertices];
        for (&(v, l), &w) in trans {
            out_edges[v].push((l.rank(), w));
        }
        for es in &mut out_edges {
            es.sort_unstable();
        }
        let mut order = vec![u32::MAX; self.vertices];
        let mut queue = VecDeque::from([start]);
        order[start] = 0;
        let mut next = 1;
        let mut enc = vec![self.vertices as u32];
        while let Some(v) = queue.pop_front() {
            enc.push(out_edges[v].len() as u32);
            for &(rank, w) in &out_edges[v] {
                if order[w] == u32::MAX {
                    order[w] = next;
                    next += 1;
                    queue.push_back(w);
                }
                enc.push(rank);
                enc.push(order[w]);
            }
        }
        enc.push(self.final_vertex.map_or(u32::MAX, |f| order[f]));
        enc
    }

    /// Isomorphism invariant of the pointed automaton (base and final vertex
    /// both respected). Complete for connected deterministic automata.
    pub fn canonical_pointed(&self) -> Result<Vec<u32>, MunnError> {
        let trans = self.transitions()?;
        Ok(self.canonical_from(&trans, self.base))
    }

    /// Isomorphism invariant of the underlying labelled graph, ignoring base
    /// and final vertex.
    pub fn canonical_unpointed(&self) -> Result<Vec<u32>, MunnError> {
        let trans = self.transitions()?;
        let mut plain = self.clone();
        plain.final_vertex = None;
        Ok((0..self.vertices).map(|v| plain.canonical_from(&trans, v)).min().unwrap_or_default())
    }

    /// Endpoint of the path labelled `w` from `start`, if it exists.
    pub fn read(trans: &Transitions, start: usize, w: &Word) -> Option<usize> {
        w.letters().iter().try_fold(start, |v, &l| trans.get(&(v, l)).copied())
    }

    pub fn to_dot(&self, alphabet: &Alphabet, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{name}\" {{");
        let _ = writeln!(s, "  rankdir=LR;");
        let _ = writeln!(s, "  node [shape=circle];");
        let _ = writeln!(s, "  start [shape=point];");
        for v in 0..self.vertices {
            let shape = if Some(v) == self.final_vertex { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  v{v} [label=\"{v}\", shape={shape}];");
        }
        let _ = writeln!(s, "  start -> v{};", self.base);
        for &(p, a, q) in &self.edges {
            let _ = writeln!(s, "  v{p} -> v{q} [label=\"{}\"];", alphabet.name(a));
        }
        s.push_str("}\n");
        s
    }
}

/// The path automaton of `u`: vertices `0..=|u|`, base 0, final `|u|`.
pub fn linear_automaton(u: &Word) -> InverseAutomaton {
    let n = u.len();
    let edges = u.letters().iter().enumerate().map(|(i, l)| {
        if l.inverse {
            (i + 1, l.letter, i)
        } else {
            (i, l.letter, i + 1)
        }
    });
    InverseAutomaton::from_parts(n + 1, edges, 0, Some(n))
}

/// Result of folding: the quotient, where each original vertex went, and how
/// many merges happened.
#[derive(Clone, Debug)]
pub struct Folded {
    pub automaton: InverseAutomaton,
    pub image: Vec<usize>,
    pub merges: usize,
}

/// Folds `aut` to a deterministic automaton, first identifying the vertex
/// pairs in `identify`. Quotient vertices are numbered in order of their
/// smallest original vertex.
pub fn fold_identifying(aut: &InverseAutomaton, identify: &[(usize, usize)]) -> Folded {
    let n = aut.vertices;
    let mut dsu = DisjointSets::new(n);
    let mut out: Vec<HashMap<SignedLetter, usize>> = vec![HashMap::new(); n];
    let mut pending: Vec<(usize, usize)> = identify.to_vec();
    let mut merges = 0;

    fn attach(
        dsu: &mut DisjointSets,
        out: &mut [HashMap<SignedLetter, usize>],
        pending: &mut Vec<(usize, usize)>,
        p: usize,
        l: SignedLetter,
        q: usize,
    ) {
        let p = dsu.find(p);
        match out[p].get(&l) {
            Some(&r) => pending.push((r, q)),
            None => {
                out[p].insert(l, q);
            }
        }
    }

    for &(p, a, q) in &aut.edges {
        attach(&mut dsu, &mut out, &mut pending, p, SignedLetter::pos(a), q);
        attach(&mut dsu, &mut out, &mut pending, q, SignedLetter::neg(a), p);
    }
    while let Some((x, y)) = pending.pop() {
        let (x, y) = (dsu.find(x), dsu.find(y));
        let Some(root) = dsu.union(x, y) else { continue };
        merges += 1;
        let other = if root == x { y } else { x };
        let moved = std::mem::take(&mut out[other]);
        for (l, t) in moved {
            match out[root].get(&l) {
                Some(&t2) => pending.push((t, t2)),
                None => {
                    out[root].insert(l, t);
                }
            }
        }
    }
    let image = dsu.dense_labels();
    let count = image.iter().max().map_or(0, |m| m + 1);
    let edges = aut.edges.iter().map(|&(p, a, q)| (image[p], a, image[q]));
    let automaton =
        InverseAutomaton::from_parts(count, edges, image[aut.base], aut.final_vertex.map(|f| image[f]));
    Folded { automaton, image, merges }
}

pub fn fold(aut: &InverseAutomaton) -> InverseAutomaton {
    fold_identifying(aut, &[]).automaton
}

/// Folding one randomly chosen conflicting pair at a time. Much slower than
/// [`fold`]; exists to test that the fold order does not matter.
pub fn fold_shuffled(aut: &InverseAutomaton, seed: u64) -> InverseAutomaton {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = aut.vertices;
    // class[v] = current representative of original vertex v
    let mut class: Vec<usize> = (0..n).collect();
    loop {
        let mut targets: HashMap<(usize, SignedLetter), Vec<usize>> = HashMap::new();
        for &(p, a, q) in &aut.edges {
            let (p, q) = (class[p], class[q]);
            targets.entry((p, SignedLetter::pos(a))).or_default().push(q);
            targets.entry((q, SignedLetter::neg(a))).or_default().push(p);
        }
        let mut conflicts: Vec<(usize, usize)> = Vec::new();
        for ts in targets.values() {
            for &t in &ts[1..] {
                if t != ts[0] {
                    conflicts.push((ts[0], t));
                }
            }
        }
        if conflicts.is_empty() {
            break;
        }
        conflicts.sort_unstable();
        let &(x, y) = conflicts.choose(&mut rng).expect("nonempty");
        let (keep, gone) = (x.min(y), x.max(y));
        for c in &mut class {
            if *c == gone {
                *c = keep;
            }
        }
    }
    // class representatives are already the least original index
    let mut reps: Vec<usize> = class.clone();
    reps.sort_unstable();
    reps.dedup();
    let image: Vec<usize> = class.iter().map(|c| reps.binary_search(c).expect("rep")).collect();
    let edges = aut.edges.iter().map(|&(p, a, q)| (image[p], a, image[q]));
    InverseAutomaton::from_parts(reps.len(), edges, image[aut.base], aut.final_vertex.map(|f| image[f]))
}

/// `MT(u)`: a folded linear automaton whose underlying graph is a tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MunnTree(InverseAutomaton);

impl MunnTree {
    pub fn automaton(&self) -> &InverseAutomaton {
        &self.0
    }

    pub fn vertex_count(&self) -> usize {
        self.0.vertices
    }

    pub fn final_vertex(&self) -> usize {
        self.0.final_vertex.expect("Munn trees have a final vertex")
    }

    pub fn canonical(&self) -> Vec<u32> {
        self.0.canonical_pointed().expect("Munn trees are deterministic")
    }

    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        self.0.to_dot(alphabet, "MT")
    }

    fn from_folded(aut: InverseAutomaton) -> MunnTree {
        assert!(aut.is_tree(), "folded word automaton is not a tree");
        MunnTree(aut)
    }
}

pub fn munn_tree(u: &Word) -> Result<MunnTree, MunnError> {
    if u.is_empty() {
        return Err(MunnError::EmptyWord);
    }
    Ok(MunnTree::from_folded(fold(&linear_automaton(u))))
}

/// Equality in the free inverse semigroup.
pub fn fis_equal(u: &Word, v: &Word) -> Result<bool, MunnError> {
    Ok(munn_tree(u)?.canonical() == munn_tree(v)?.canonical())
}

pub fn is_fis_idempotent(u: &Word) -> Result<bool, MunnError> {
    if u.is_empty() {
        return Err(MunnError::EmptyWord);
    }
    Ok(reduce(u).is_empty())
}

/// Product of Munn trees: graft `y` at the final vertex of `x` and fold.
pub fn fis_multiply(x: &MunnTree, y: &MunnTree) -> MunnTree {
    let (a, b) = (&x.0, &y.0);
    let shift = a.vertices;
    let glue = |v: usize| if v == b.base { x.final_vertex() } else { v + shift };
    let edges = a.edges.iter().copied().chain(b.edges.iter().map(|&(p, l, q)| (glue(p), l, glue(q))));
    let joined = InverseAutomaton::from_parts(a.vertices + b.vertices, edges, a.base, Some(glue(y.final_vertex())));
    // b's base vertex index is now unused; folding leaves it isolated, so drop it
    let folded = fold(&joined);
    MunnTree::from_folded(drop_isolated(&folded))
}

fn drop_isolated(aut: &InverseAutomaton) -> InverseAutomaton {
    let mut used = vec![false; aut.vertices];
    used[aut.base] = true;
    if let Some(f) = aut.final_vertex {
        used[f] = true;
    }
    for &(p, _, q) in &aut.edges {
        used[p] = true;
        used[q] = true;
    }
    let mut image = vec![usize::MAX; aut.vertices];
    let mut next = 0;
    for v in 0..aut.vertices {
        if used[v] {
            image[v] = next;
            next += 1;
        }
    }
    InverseAutomaton::from_parts(
        next,
        aut.edges.iter().map(|&(p, a, q)| (image[p], a, image[q])),
        image[aut.base],
        aut.final_vertex.map(|f| image[f]),
    )
}

/// An element of the monogenic free inverse semigroup: the interval
/// `[-r, s]` around the base 0, with the final vertex at `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FisTriple {
    pub r: i64,
    pub s: i64,
    pub t: i64,
}

impl FisTriple {
    pub fn new(r: i64, s: i64, t: i64) -> Result<Self, MunnError> {
        if r < 0 || s < 0 || r + s < 1 || t < -r || t > s {
            return Err(MunnError::BadTriple { r, s, t });
        }
        Ok(FisTriple { r, s, t })
    }

    pub fn span(&self) -> i64 {
        self.r + self.s
    }

    pub fn is_idempotent(&self) -> bool {
        self.t == 0
    }

    pub fn multiply(&self, o: &FisTriple) -> FisTriple {
        FisTriple { r: self.r.max(o.r - self.t), s: self.s.max(o.s + self.t), t: self.t + o.t }
    }

    pub fn inverse(&self) -> FisTriple {
        FisTriple { r: self.r + self.t, s: self.s - self.t, t: -self.t }
    }

    /// Representative `a^{-r} a^{r+s} a^{-(s-t)}`.
    pub fn word(&self, letter: Letter) -> Word {
        let mut w = Word::power(letter, -self.r);
        w = w.concat(&Word::power(letter, self.r + self.s));
        w.concat(&Word::power(letter, -(self.s - self.t)))
    }
}

/// The triple of a nonempty word in one letter and its inverse, by walking
/// the integer line.
pub fn fis_a_triple(u: &Word) -> Result<FisTriple, MunnError> {
    let first = u.letters().first().ok_or(MunnError::EmptyWord)?.letter;
    let (mut pos, mut lo, mut hi) = (0i64, 0i64, 0i64);
    for l in u.letters() {
        if l.letter != first {
            return Err(MunnError::NotSingleLetter);
        }
        pos += if l.inverse { -1 } else { 1 };
        lo = lo.min(pos);
        hi = hi.max(pos);
    }
    FisTriple::new(-lo, hi, pos)
}

/// Munn trees over `{a}` with every tree of span at least `n` collapsed to
/// zero (`None`). Closing `{MT(a), MT(a⁻¹)}` under this oracle enumerates
/// the Rees quotient `M_n` by tree arithmetic alone.
pub struct MnTreeOracle {
    pub n: usize,
}

impl MnTreeOracle {
    pub fn generators(&self) -> Vec<Option<MunnTree>> {
        let a = Word::power(0, 1);
        let a_inv = Word::power(0, -1);
        [a, a_inv].iter().map(|w| self.truncate(munn_tree(w).expect("nonempty"))).collect()
    }

    fn truncate(&self, t: MunnTree) -> Option<MunnTree> {
        // an interval tree on k vertices has span k - 1
        (t.vertex_count() - 1 < self.n).then_some(t)
    }
}

impl ElementOracle for MnTreeOracle {
    type Element = Option<MunnTree>;
    type Key = Option<Vec<u32>>;

    fn multiply(&self, x: &Self::Element, y: &Self::Element) -> Self::Element {
        match (x, y) {
            (Some(x), Some(y)) => self.truncate(fis_multiply(x, y)),
            _ => None,
        }
    }

    fn key(&self, e: &Self::Element) -> Self::Key {
        e.as_ref().map(MunnTree::canonical)
    }

    fn label(&self, e: &Self::Element) -> String {
        match e {
            None => "0".into(),
            Some(t) => {
                let enc = t.canonical();
                format!("T{enc:?}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn w(s: &str) -> Word {
        let mut alpha = Alphabet::sealed(&["a", "b"]);
        parse_word(s, &mut alpha).unwrap()
    }

    #[test]
    fn linear_automaton_shape() {
        let l = linear_automaton(&w("a a^-1"));
        assert_eq!(l.vertex_count(), 3);
        assert_eq!(l.edges(), &[(0, 0, 1), (2, 0, 1)]);
    }

    #[test]
    fn fold_merges_backtrack() {
        let f = fold(&linear_automaton(&w("a a^-1")));
        assert_eq!(f.vertex_count(), 2);
        assert_eq!(f.final_vertex(), Some(f.base()));
    }

    #[test]
    fn deterministic_input_is_unchanged() {
        let l = linear_automaton(&w("a b a^-1"));
        assert_eq!(fold(&l), l);
    }

    #[test]
    fn tree_of_aba_inv_has_four_vertices() {
        let t = munn_tree(&w("a b a^-1")).unwrap();
        assert_eq!(t.vertex_count(), 4);
        assert_eq!(t.final_vertex(), 3);
    }

    #[test]
    fn inverse_axiom() {
        assert!(fis_equal(&w("a a^-1 a"), &w("a")).unwrap());
        assert!(!fis_equal(&w("a a^-1"), &w("a^-1 a")).unwrap());
        assert!(fis_equal(&w("a a^-1 b b^-1"), &w("b b^-1 a a^-1")).unwrap());
    }

    #[test]
    fn idempotents_by_reduction() {
        assert!(is_fis_idempotent(&w("a a^-1")).unwrap());
        assert!(is_fis_idempotent(&w("a^-1 a b b^-1")).unwrap());
        assert!(!is_fis_idempotent(&w("a b^-1")).unwrap());
        assert_eq!(is_fis_idempotent(&Word::empty()), Err(MunnError::EmptyWord));
    }

    #[test]
    fn tree_product() {
        let x = munn_tree(&w("a")).unwrap();
        let y = munn_tree(&w("a^-1")).unwrap();
        assert_eq!(fis_multiply(&x, &y).canonical(), munn_tree(&w("a a^-1")).unwrap().canonical());
    }

    #[test]
    fn triples() {
        assert_eq!(fis_a_triple(&w("a")).unwrap(), FisTriple { r: 0, s: 1, t: 1 });
        assert_eq!(fis_a_triple(&w("a^-1 a a")).unwrap(), FisTriple { r: 1, s: 1, t: 1 });
        assert_eq!(fis_a_triple(&w("a b")), Err(MunnError::NotSingleLetter));
        for r in 0..=5 {
            for s in 0..=5 {
                if r + s == 0 {
                    continue;
                }
                let u = Word::power(0, -r).concat(&Word::power(0, r + s)).concat(&Word::power(0, -s));
                assert_eq!(fis_a_triple(&u).unwrap(), FisTriple { r, s, t: 0 });
            }
        }
    }

    #[test]
    fn shuffled_fold_agrees() {
        let u = w("a b b^-1 a^-1 a b a^-1 a a b^-1 b");
        let f = fold(&linear_automaton(&u));
        for seed in 0..5 {
            assert_eq!(fold_shuffled(&linear_automaton(&u), seed), f);
        }
    }

    #[test]
    fn dot_marks_base_and_final() {
        let dot = munn_tree(&w("a b")).unwrap().to_dot(&Alphabet::sealed(&["a", "b"]));
        assert!(dot.contains("start -> v0"));
        assert!(dot.contains("v2 [label=\"2\", shape=doublecircle]"));
        assert!(dot.contains("label=\"b\""));
    }
}
