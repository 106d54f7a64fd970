use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use super::{EngineError, FiniteSemigroup};

/// A semigroup given by its multiplication. `key` must identify elements:
/// two elements are equal iff their keys are.
pub trait ElementOracle {
    type Element: Clone + Debug + PartialEq;
    type Key: Clone + Eq + Hash + Debug;

    /// Whether key collisions between distinct representatives are verified
    /// by comparing their products with every generator.
    const CHECK_COLLISIONS: bool = true;

    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn key(&self, e: &Self::Element) -> Self::Key;
    fn label(&self, e: &Self::Element) -> String {
        format!("{e:?}")
    }
    /// Inverse or other unary operation, when the structure has one.
    fn unary(&self, _e: &Self::Element) -> Option<Self::Element> {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_elements: usize,
    pub max_word_length: usize,
}

impl Budget {
    pub fn new(max_elements: usize, max_word_length: usize) -> Self {
        Budget { max_elements, max_word_length }
    }

    pub fn radius(max_word_length: usize) -> Self {
        Budget { max_elements: usize::MAX, max_word_length }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_elements: 100_000, max_word_length: usize::MAX }
    }
}

/// The elements of word length at most `radius` in the generators, in
/// breadth-first order, each with a shortest witness word (generator indices).
#[derive(Clone, Debug)]
pub struct BallEnumeration<E> {
    pub generators: Vec<E>,
    pub elements: Vec<E>,
    pub words: Vec<Vec<usize>>,
    pub radius: usize,
    /// True iff the ball is closed under multiplication, i.e. is the whole semigroup.
    pub closed: bool,
}

impl<E> BallEnumeration<E> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Number of leading elements with word length at most `r`.
    pub fn prefix_len(&self, r: usize) -> usize {
        self.words.partition_point(|w| w.len() <= r)
    }
}

#[derive(Clone, Debug)]
pub enum Enumeration<E> {
    Closed { semigroup: FiniteSemigroup, ball: BallEnumeration<E> },
    Open(BallEnumeration<E>),
}

impl<E> Enumeration<E> {
    pub fn ball(&self) -> &BallEnumeration<E> {
        match self {
            Enumeration::Closed { ball, .. } | Enumeration::Open(ball) => ball,
        }
    }

    pub fn semigroup(&self) -> Option<&FiniteSemigroup> {
        match self {
            Enumeration::Closed { semigroup, .. } => Some(semigroup),
            Enumeration::Open(_) => None,
        }
    }

    pub fn into_semigroup(self) -> Option<FiniteSemigroup> {
        match self {
            Enumeration::Closed { semigroup, .. } => Some(semigroup),
            Enumeration::Open(_) => None,
        }
    }
}

/// Breadth-first closure of `generators` under right multiplication.
///
/// Elements appear in order of shortest word length, ties broken by the
/// generator index of the last letter and then by discovery order, so the
/// result is deterministic. Returns [`Enumeration::Closed`] when the closure is
/// reached within `budget`; otherwise the largest complete ball.
pub fn enumerate<O: ElementOracle>(
    oracle: &O,
    generators: &[O::Element],
    budget: Budget,
) -> Result<Enumeration<O::Element>, EngineError> {
    if generators.is_empty() {
        return Err(EngineError::Empty("enumeration needs at least one generator"));
    }
    if budget.max_elements == 0 || budget.max_word_length == 0 {
        return Err(EngineError::Invalid("budget must be positive".into()));
    }

    let mut elements: Vec<O::Element> = Vec::new();
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<O::Key, usize> = HashMap::new();
    let mut gen_index = Vec::with_capacity(generators.len());

    for (gi, g) in generators.iter().enumerate() {
        let k = oracle.key(g);
        let id = match index.get(&k) {
            Some(&id) => {
                if O::CHECK_COLLISIONS && elements[id] != *g {
                    check_consistent(oracle, generators, &elements[id], g)?;
                }
                id
            }
            None => {
                let id = elements.len();
                index.insert(k, id);
                elements.push(g.clone());
                words.push(vec![gi]);
                id
            }
        };
        gen_index.push(id);
    }
    if elements.len() > budget.max_elements {
        let ball = BallEnumeration {
            generators: generators.to_vec(),
            elements: Vec::new(),
            words: Vec::new(),
            radius: 0,
            closed: false,
        };
        return Ok(Enumeration::Open(ball));
    }

    let mut level_start = 0;
    let mut radius = 1;
    let closed = loop {
        let level_end = elements.len();
        let mut grew = false;
        let mut overflow = false;
        'level: for x in level_start..level_end {
            for (gi, g) in generators.iter().enumerate() {
                let p = oracle.multiply(&elements[x], g);
                let k = oracle.key(&p);
                if let Some(&existing) = index.get(&k) {
                    if O::CHECK_COLLISIONS && elements[existing] != p {
                        check_consistent(oracle, generators, &elements[existing], &p)?;
                    }
                    continue;
                }
                if radius + 1 > budget.max_word_length || elements.len() + 1 > budget.max_elements {
                    overflow = true;
                    break 'level;
                }
                grew = true;
                let mut w = words[x].clone();
                w.push(gi);
                index.insert(k, elements.len());
                elements.push(p);
                words.push(w);
            }
        }
        if overflow {
            elements.truncate(level_end);
            words.truncate(level_end);
            break false;
        }
        if !grew {
            break true;
        }
        level_start = level_end;
        radius += 1;
    };

    let ball = BallEnumeration {
        generators: generators.to_vec(),
        elements,
        words,
        radius,
        closed,
    };
    if !closed {
        return Ok(Enumeration::Open(ball));
    }

    let n = ball.elements.len();
    // rebuild the index against the final element list
    let index: HashMap<O::Key, usize> =
        ball.elements.iter().enumerate().map(|(i, e)| (oracle.key(e), i)).collect();
    let mut table = Vec::with_capacity(n * n);
    for x in &ball.elements {
        for y in &ball.elements {
            let p = oracle.multiply(x, y);
            let id = *index
                .get(&oracle.key(&p))
                .ok_or_else(|| EngineError::OracleNotClosed(oracle.label(&p)))?;
            table.push(id);
        }
    }
    let unary = ball
        .elements
        .iter()
        .map(|e| {
            oracle.unary(e).map(|u| {
                index
                    .get(&oracle.key(&u))
                    .copied()
                    .ok_or_else(|| EngineError::OracleNotClosed(oracle.label(&u)))
            })
        })
        .collect::<Option<Result<Vec<usize>, _>>>()
        .transpose()?;
    let labels = ball.elements.iter().map(|e| oracle.label(e)).collect();
    let semigroup = FiniteSemigroup::from_trusted(labels, table, unary, dedup(&gen_index));
    if n <= super::EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
        semigroup.check_associative()?;
    }
    Ok(Enumeration::Closed { semigroup, ball })
}

fn dedup(v: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for &x in v {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// Two representatives with one key must behave alike against every generator.
fn check_consistent<O: ElementOracle>(
    oracle: &O,
    generators: &[O::Element],
    a: &O::Element,
    b: &O::Element,
) -> Result<(), EngineError> {
    for g in generators {
        let same_right = oracle.key(&oracle.multiply(a, g)) == oracle.key(&oracle.multiply(b, g));
        let same_left = oracle.key(&oracle.multiply(g, a)) == oracle.key(&oracle.multiply(g, b));
        if !same_right || !same_left {
            return Err(EngineError::OracleInconsistent(oracle.label(a), oracle.label(b)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Monogenic monoid ⟨a | a^p = a^{p+1}⟩ on exponents, with the identity as
    /// exponent 0.
    struct Truncated(u32);

    impl ElementOracle for Truncated {
        type Element = u32;
        type Key = u32;
        fn multiply(&self, a: &u32, b: &u32) -> u32 {
            (a + b).min(self.0)
        }
        fn key(&self, e: &u32) -> u32 {
            *e
        }
    }

    /// Free monogenic semigroup (ℕ, +).
    struct Naturals;

    impl ElementOracle for Naturals {
        type Element = u64;
        type Key = u64;
        fn multiply(&self, a: &u64, b: &u64) -> u64 {
            a + b
        }
        fn key(&self, e: &u64) -> u64 {
            *e
        }
    }

    /// Reports 3 as 1 although the two multiply differently.
    struct Liar;

    impl ElementOracle for Liar {
        type Element = u32;
        type Key = u32;
        fn multiply(&self, a: &u32, b: &u32) -> u32 {
            a + b
        }
        fn key(&self, e: &u32) -> u32 {
            if *e == 3 {
                1
            } else {
                *e
            }
        }
    }

    #[test]
    fn closes_truncated_monoid() {
        let e = enumerate(&Truncated(3), &[0, 1], Budget::default()).unwrap();
        let fs = e.semigroup().unwrap();
        assert_eq!(fs.len(), 4);
        assert_eq!(fs.identity(), Some(0));
    }

    #[test]
    fn infinite_semigroup_gives_open_ball() {
        let e = enumerate(&Naturals, &[1], Budget::radius(5)).unwrap();
        let ball = e.ball();
        assert!(!ball.closed);
        assert_eq!(ball.elements, vec![1, 2, 3, 4, 5]);
        assert_eq!(ball.radius, 5);
        assert_eq!(ball.prefix_len(3), 3);
    }

    #[test]
    fn element_budget_truncates_to_complete_levels() {
        let e = enumerate(&Naturals, &[1, 2], Budget::new(6, usize::MAX)).unwrap();
        let ball = e.ball();
        assert!(!ball.closed);
        assert!(ball.len() <= 6);
        assert!(ball.words.iter().all(|w| w.len() <= ball.radius));
    }

    #[test]
    fn inconsistent_oracle_is_an_error() {
        let err = enumerate(&Liar, &[1], Budget::radius(6)).unwrap_err();
        assert!(matches!(err, EngineError::OracleInconsistent(..)));
    }

    #[test]
    fn rejects_empty_generators() {
        assert!(enumerate(&Naturals, &[], Budget::default()).is_err());
    }
}
