//! Finite semigroups as multiplication tables, breadth-first enumeration from
//! an element oracle, and Green's relations.

mod construct;
mod enumerate;
mod green;
mod iso;
mod table_format;
mod witnessed;

use std::collections::VecDeque;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use construct::{adjoin_identity, adjoin_zero, direct_product, rees_quotient, subsemigroup};
pub use enumerate::{enumerate, BallEnumeration, Budget, ElementOracle, Enumeration};
pub use green::{eggbox, green_definitional, green_scc, EggboxReport, GreenStructure, DClassBox};
pub use iso::iso_tables;
pub use table_format::{parse_table, write_table};
pub use witnessed::{
    witnessed_green, witnessed_partition, WitnessRow, WitnessedGreen, DEFAULT_MARGIN,
};

/// Largest table whose associativity is checked exhaustively.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 200;
const SAMPLED_TRIPLES: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(String, String, String),
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("generators {0:?} do not generate the table (missing `{1}`)")]
    NotGenerated(Vec<String>, String),
    #[error("oracle inconsistency: equal keys for `{0}` and `{1}` but different products")]
    OracleInconsistent(String, String),
    #[error("oracle product `{0}` is not among the enumerated elements")]
    OracleNotClosed(String),
    #[error("size {required} exceeds the bound {bound}")]
    TooLarge { required: usize, bound: usize },
    #[error("not a two-sided ideal: {side} product of `{element}` and `{member}` leaves it")]
    NotIdeal { element: String, member: String, side: &'static str },
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("table parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// The five Green's relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Green {
    H,
    L,
    R,
    D,
    J,
}

impl Green {
    pub const ALL: [Green; 5] = [Green::H, Green::L, Green::R, Green::D, Green::J];

    pub fn parse(s: &str) -> Option<Green> {
        match s.trim() {
            "H" | "h" => Some(Green::H),
            "L" | "l" => Some(Green::L),
            "R" | "r" => Some(Green::R),
            "D" | "d" => Some(Green::D),
            "J" | "j" => Some(Green::J),
            _ => None,
        }
    }
}

impl fmt::Display for Green {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Green::H => "H",
            Green::L => "L",
            Green::R => "R",
            Green::D => "D",
            Green::J => "J",
        };
        f.write_str(s)
    }
}

/// A closed finite semigroup: labelled elements, an `n × n` product table,
/// an optional unary operation and a generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemigroup {
    labels: Vec<String>,
    table: Vec<usize>,
    unary: Option<Vec<usize>>,
    generators: Vec<usize>,
    identity: Option<usize>,
    zero: Option<usize>,
}

impl FiniteSemigroup {
    /// Validates and builds a table. `table` is row-major: `table[x*n + y] = x·y`.
    /// An empty `generators` list means "all elements".
    pub fn new(
        labels: Vec<String>,
        table: Vec<usize>,
        unary: Option<Vec<usize>>,
        generators: Vec<usize>,
    ) -> Result<Self, EngineError> {
        let n = labels.len();
        if n == 0 {
            return Err(EngineError::Empty("a semigroup needs at least one element"));
        }
        if table.len() != n * n {
            return Err(EngineError::Malformed(format!(
                "expected {} table entries, found {}",
                n * n,
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= n) {
            return Err(EngineError::Malformed(format!("product index {bad} out of range")));
        }
        if let Some(u) = &unary {
            if u.len() != n || u.iter().any(|&v| v >= n) {
                return Err(EngineError::Malformed("unary map has wrong shape".into()));
            }
        }
        if generators.iter().any(|&g| g >= n) {
            return Err(EngineError::Malformed("generator index out of range".into()));
        }
        let generators = if generators.is_empty() { (0..n).collect() } else { generators };
        let mut fs =
            FiniteSemigroup { labels, table, unary, generators, identity: None, zero: None };
        fs.check_associative()?;
        fs.check_generated()?;
        fs.identity = fs.find_identity();
        fs.zero = fs.find_zero();
        Ok(fs)
    }

    /// Builds from an oracle-derived table that is trusted to be associative
    /// and generated by `generators`.
    pub(crate) fn from_trusted(
        labels: Vec<String>,
        table: Vec<usize>,
        unary: Option<Vec<usize>>,
        generators: Vec<usize>,
    ) -> Self {
        let n = labels.len();
        debug_assert_eq!(table.len(), n * n);
        let generators = if generators.is_empty() { (0..n).collect() } else { generators };
        let mut fs =
            FiniteSemigroup { labels, table, unary, generators, identity: None, zero: None };
        fs.identity = fs.find_identity();
        fs.zero = fs.find_zero();
        fs
    }

    /// Builds a table by evaluating `mul` on all index pairs.
    pub fn from_fn(
        labels: Vec<String>,
        unary: Option<Vec<usize>>,
        generators: Vec<usize>,
        mut mul: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self, EngineError> {
        let n = labels.len();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(mul(x, y));
            }
        }
        FiniteSemigroup::new(labels, table, unary, generators)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.labels.len() + y]
    }

    pub fn product(&self, xs: &[usize]) -> usize {
        let (first, rest) = xs.split_first().expect("product of an empty sequence");
        rest.iter().fold(*first, |acc, &y| self.mul(acc, y))
    }

    pub fn unary(&self, x: usize) -> Option<usize> {
        self.unary.as_ref().map(|u| u[x])
    }

    pub fn unary_map(&self) -> Option<&[usize]> {
        self.unary.as_deref()
    }

    pub fn has_unary(&self) -> bool {
        self.unary.is_some()
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn is_monoid(&self) -> bool {
        self.identity.is_some()
    }

    /// Same table with a different label set.
    pub fn relabel(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.len());
        self.labels = labels;
        self
    }

    /// Replaces the unary operation; no axioms are imposed here.
    pub fn with_unary(mut self, unary: Option<Vec<usize>>) -> Result<Self, EngineError> {
        if let Some(u) = &unary {
            if u.len() != self.len() || u.iter().any(|&v| v >= self.len()) {
                return Err(EngineError::Malformed("unary map has wrong shape".into()));
            }
        }
        self.unary = unary;
        Ok(self)
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.mul(x, x) == x).collect()
    }

    /// I-semigroup axioms `(x')' = x`, `xx'x = x` on the unary table.
    pub fn is_i_semigroup(&self) -> bool {
        let Some(u) = &self.unary else { return false };
        (0..self.len()).all(|x| u[u[x]] == x && self.mul(self.mul(x, u[x]), x) == x)
    }

    /// An I-semigroup with `xx' = x'x`, so `x⁰ = xx'` is the identity of `H_x`.
    pub fn is_completely_regular(&self) -> bool {
        let Some(u) = &self.unary else { return false };
        self.is_i_semigroup() && (0..self.len()).all(|x| self.mul(x, u[x]) == self.mul(u[x], x))
    }

    fn find_identity(&self) -> Option<usize> {
        let n = self.len();
        (0..n).find(|&e| (0..n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    fn find_zero(&self) -> Option<usize> {
        let n = self.len();
        (0..n).find(|&z| (0..n).all(|x| self.mul(z, x) == z && self.mul(x, z) == z))
    }

    /// Exhaustive up to [`EXHAUSTIVE_ASSOCIATIVITY_LIMIT`] elements, sampled
    /// (fixed seed) above.
    pub fn check_associative(&self) -> Result<(), EngineError> {
        let n = self.len();
        let bad = |x: usize, y: usize, z: usize| {
            self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z))
        };
        let witness = |x: usize, y: usize, z: usize| {
            EngineError::NotAssociative(
                self.labels[x].clone(),
                self.labels[y].clone(),
                self.labels[z].clone(),
            )
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for x in 0..n {
                for y in 0..n {
                    let xy = self.mul(x, y);
                    for z in 0..n {
                        if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                            return Err(witness(x, y, z));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5e31_9a0f);
            for _ in 0..SAMPLED_TRIPLES {
                let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if bad(x, y, z) {
                    return Err(witness(x, y, z));
                }
            }
        }
        Ok(())
    }

    fn check_generated(&self) -> Result<(), EngineError> {
        let closure = self.closure_of(&self.generators);
        if let Some(missing) = (0..self.len()).find(|&x| !closure[x]) {
            return Err(EngineError::NotGenerated(
                self.generators.iter().map(|&g| self.labels[g].clone()).collect(),
                self.labels[missing].clone(),
            ));
        }
        Ok(())
    }

    /// Membership mask of the subsemigroup generated by `gens`.
    pub fn closure_of(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::new();
        for &g in gens {
            if !seen[g] {
                seen[g] = true;
                queue.push_back(g);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let p = self.mul(x, g);
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }
}

/// `{x : x·x = x}`.
pub fn idempotents(fs: &FiniteSemigroup) -> Vec<usize> {
    fs.idempotents()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("e{i}")).collect()
    }

    #[test]
    fn rejects_non_associative_with_witness() {
        // x·y = (x + 1) mod 3 is not associative
        let err = FiniteSemigroup::from_fn(labels(3), None, vec![], |x, _| (x + 1) % 3)
            .unwrap_err();
        assert!(matches!(err, EngineError::NotAssociative(..)));
    }

    #[test]
    fn rejects_non_generating_set() {
        // left zero semigroup: only generated by all elements
        let err = FiniteSemigroup::from_fn(labels(2), None, vec![0], |x, _| x).unwrap_err();
        assert!(matches!(err, EngineError::NotGenerated(..)));
    }

    #[test]
    fn detects_identity_and_zero() {
        // {1, 0} under multiplication
        let fs = FiniteSemigroup::from_fn(
            vec!["1".into(), "0".into()],
            None,
            vec![],
            |x, y| if x == 1 || y == 1 { 1 } else { 0 },
        )
        .unwrap();
        assert_eq!(fs.identity(), Some(0));
        assert_eq!(fs.zero(), Some(1));
        assert_eq!(fs.idempotents(), vec![0, 1]);
    }

    #[test]
    fn group_has_one_idempotent() {
        let fs = FiniteSemigroup::from_fn(labels(4), None, vec![], |x, y| (x + y) % 4).unwrap();
        assert_eq!(idempotents(&fs), vec![0]);
    }
}
