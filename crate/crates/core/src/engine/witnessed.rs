//! Finite evidence for Green's relations on infinite semigroups.
//!
//! Two elements of a ball are related when multiplication witnesses for the
//! relation exist inside a larger witness ball. Nothing here certifies
//! anything unless the ball is the whole (finite) semigroup.

use std::collections::HashSet;

use serde::Serialize;

use super::enumerate::{enumerate, BallEnumeration, Budget, ElementOracle};
use super::{EngineError, Green};
use crate::dsu::DisjointSets;

/// Witness words may be up to this many times longer than the elements.
pub const DEFAULT_MARGIN: usize = 3;

/// Consecutive strict increases needed to flag a class count as unbounded.
const GROWTH_RUN: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessRow {
    pub radius: usize,
    pub ball_size: usize,
    pub classes: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessedGreen {
    pub relation: Green,
    pub margin: usize,
    pub rows: Vec<WitnessRow>,
    pub apparently_infinite: bool,
    /// Only true when the ball closed, i.e. the semigroup is finite and fully enumerated.
    pub certified: bool,
}

impl WitnessedGreen {
    /// Class count at the largest radius; a lower bound only in the sense of
    /// witnessed evidence.
    pub fn final_count(&self) -> usize {
        self.rows.last().map_or(0, |r| r.classes)
    }
}

/// Precomputed principal-ideal fragments of `elements` within `witnesses`.
pub struct WitnessIdeals<'a, O: ElementOracle> {
    elements: &'a [O::Element],
    keys: Vec<O::Key>,
    left: Vec<HashSet<O::Key>>,
    right: Vec<HashSet<O::Key>>,
    two_sided: Option<Vec<HashSet<O::Key>>>,
    witness_sides: Option<WitnessSides<O::Key>>,
}

type WitnessSides<K> = (Vec<K>, Vec<HashSet<K>>, Vec<HashSet<K>>);

impl<'a, O: ElementOracle> WitnessIdeals<'a, O> {
    pub fn new(oracle: &'a O, elements: &'a [O::Element], witnesses: &'a [O::Element], relation: Green) -> Self {
        let keys: Vec<O::Key> = elements.iter().map(|e| oracle.key(e)).collect();
        let left = elements.iter().map(|a| left_keys(oracle, a, witnesses)).collect();
        let right = elements.iter().map(|a| right_keys(oracle, a, witnesses)).collect();
        let two_sided = (relation == Green::J).then(|| {
            elements
                .iter()
                .map(|a| {
                    let mut set: HashSet<O::Key> = HashSet::new();
                    set.insert(oracle.key(a));
                    let mut lefts: Vec<O::Element> = vec![a.clone()];
                    lefts.extend(witnesses.iter().map(|u| oracle.multiply(u, a)));
                    for ua in &lefts {
                        set.insert(oracle.key(ua));
                        for v in witnesses {
                            set.insert(oracle.key(&oracle.multiply(ua, v)));
                        }
                    }
                    set
                })
                .collect()
        });
        let witness_sides = (relation == Green::D).then(|| {
            (
                witnesses.iter().map(|c| oracle.key(c)).collect(),
                witnesses.iter().map(|c| left_keys(oracle, c, witnesses)).collect(),
                witnesses.iter().map(|c| right_keys(oracle, c, witnesses)).collect(),
            )
        });
        WitnessIdeals { elements, keys, left, right, two_sided, witness_sides }
    }

    fn l(&self, i: usize, j: usize) -> bool {
        self.left[j].contains(&self.keys[i]) && self.left[i].contains(&self.keys[j])
    }

    fn r(&self, i: usize, j: usize) -> bool {
        self.right[j].contains(&self.keys[i]) && self.right[i].contains(&self.keys[j])
    }

    /// Whether a witness for `relation` between elements `i` and `j` exists
    /// (no transitive closure).
    pub fn related(&self, relation: Green, i: usize, j: usize) -> bool {
        match relation {
            Green::L => self.l(i, j),
            Green::R => self.r(i, j),
            Green::H => self.l(i, j) && self.r(i, j),
            Green::J => {
                let two = self.two_sided.as_ref().expect("built for J");
                two[j].contains(&self.keys[i]) && two[i].contains(&self.keys[j])
            }
            Green::D => self.d_related(i, j),
        }
    }

    /// `a D b` iff some witness `c` has `a L c` and `c R b`.
    fn d_related(&self, i: usize, j: usize) -> bool {
        if self.l(i, j) || self.r(i, j) {
            return true;
        }
        let (wkeys, wl, wr) = self.witness_sides.as_ref().expect("built for D");
        let (ka, kb) = (&self.keys[i], &self.keys[j]);
        (0..wkeys.len()).any(|c| {
            let kc = &wkeys[c];
            self.left[i].contains(kc) && wl[c].contains(ka) && self.right[j].contains(kc) && wr[c].contains(kb)
        })
    }

    pub fn partition(&self, relation: Green) -> Vec<usize> {
        let n = self.elements.len();
        let mut dsu = DisjointSets::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if dsu.find(i) != dsu.find(j) && self.related(relation, i, j) {
                    dsu.union(i, j);
                }
            }
        }
        dsu.dense_labels()
    }
}

fn left_keys<O: ElementOracle>(oracle: &O, a: &O::Element, witnesses: &[O::Element]) -> HashSet<O::Key> {
    let mut set: HashSet<O::Key> = witnesses.iter().map(|s| oracle.key(&oracle.multiply(s, a))).collect();
    set.insert(oracle.key(a));
    set
}

fn right_keys<O: ElementOracle>(oracle: &O, a: &O::Element, witnesses: &[O::Element]) -> HashSet<O::Key> {
    let mut set: HashSet<O::Key> = witnesses.iter().map(|s| oracle.key(&oracle.multiply(a, s))).collect();
    set.insert(oracle.key(a));
    set
}

/// Witnessed classes of `elements` (transitively closed), witnesses drawn
/// from `witnesses`.
pub fn witnessed_partition<O: ElementOracle>(
    oracle: &O,
    elements: &[O::Element],
    witnesses: &[O::Element],
    relation: Green,
) -> Vec<usize> {
    WitnessIdeals::new(oracle, elements, witnesses, relation).partition(relation)
}

/// Growth table of witnessed class counts for radii `1..=ball.radius`, each
/// radius `r` using witnesses of word length at most `r * margin`.
pub fn witnessed_green<O: ElementOracle>(
    oracle: &O,
    ball: &BallEnumeration<O::Element>,
    relation: Green,
    margin: usize,
) -> Result<WitnessedGreen, EngineError> {
    if margin == 0 {
        return Err(EngineError::Invalid("margin must be at least 1".into()));
    }
    let big = enumerate(oracle, &ball.generators, Budget::radius(ball.radius.max(1) * margin))?;
    let big = big.ball();
    let mut rows = Vec::new();
    for r in 1..=ball.radius {
        let elements = &big.elements[..big.prefix_len(r)];
        let witnesses = &big.elements[..big.prefix_len(r * margin)];
        let part = witnessed_partition(oracle, elements, witnesses, relation);
        let classes = part.iter().max().map_or(0, |m| m + 1);
        rows.push(WitnessRow { radius: r, ball_size: elements.len(), classes });
    }
    let apparently_infinite = rows.len() > GROWTH_RUN
        && rows.windows(2).rev().take(GROWTH_RUN).all(|w| w[0].classes < w[1].classes);
    Ok(WitnessedGreen { relation, margin, rows, apparently_infinite, certified: ball.closed })
}
