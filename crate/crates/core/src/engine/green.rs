use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use super::{FiniteSemigroup, Green};
use crate::dsu::{normalize_labels, DisjointSets};

/// Partitions of a finite semigroup by the five Green's relations. Class ids
/// are dense and numbered in order of each class's smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreenStructure {
    pub h: Vec<usize>,
    pub l: Vec<usize>,
    pub r: Vec<usize>,
    pub d: Vec<usize>,
    pub j: Vec<usize>,
}

impl GreenStructure {
    pub fn partition(&self, rel: Green) -> &[usize] {
        match rel {
            Green::H => &self.h,
            Green::L => &self.l,
            Green::R => &self.r,
            Green::D => &self.d,
            Green::J => &self.j,
        }
    }

    pub fn count(&self, rel: Green) -> usize {
        self.partition(rel).iter().max().map_or(0, |m| m + 1)
    }

    pub fn counts(&self) -> [usize; 5] {
        Green::ALL.map(|g| self.count(g))
    }

    pub fn related(&self, rel: Green, x: usize, y: usize) -> bool {
        let p = self.partition(rel);
        p[x] == p[y]
    }

    /// Members of each class, classes in id order.
    pub fn classes(&self, rel: Green) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count(rel)];
        for (x, &c) in self.partition(rel).iter().enumerate() {
            out[c].push(x);
        }
        out
    }
}

impl fmt::Display for GreenStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [h, l, r, d, j] = self.counts();
        write!(f, "H={h} L={l} R={r} D={d} J={j}")
    }
}

/// Strongly connected components (iterative Tarjan). Component ids are
/// arbitrary; callers normalise.
fn scc(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    // (vertex, next edge position)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < adj[v].len() {
                let w = adj[v][*pos];
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let pairs: Vec<(usize, usize)> = a.iter().copied().zip(b.iter().copied()).collect();
    normalize_labels(&pairs)
}

fn join(a: &[usize], b: &[usize]) -> Vec<usize> {
    let n = a.len();
    let mut dsu = DisjointSets::new(n);
    let mut first_a: HashMap<usize, usize> = HashMap::new();
    let mut first_b: HashMap<usize, usize> = HashMap::new();
    for x in 0..n {
        let ra = *first_a.entry(a[x]).or_insert(x);
        dsu.union(x, ra);
        let rb = *first_b.entry(b[x]).or_insert(x);
        dsu.union(x, rb);
    }
    dsu.dense_labels()
}

/// Green's relations as mutual reachability in Cayley graphs: the right
/// Cayley graph (`x → x·g`) gives R, the left one (`x → g·x`) gives L, their
/// union gives J; `H = L ∧ R` and `D = L ∨ R`.
pub fn green_scc(fs: &FiniteSemigroup) -> GreenStructure {
    let n = fs.len();
    let gens = fs.generators();
    let right: Vec<Vec<usize>> =
        (0..n).map(|x| gens.iter().map(|&g| fs.mul(x, g)).collect()).collect();
    let left: Vec<Vec<usize>> =
        (0..n).map(|x| gens.iter().map(|&g| fs.mul(g, x)).collect()).collect();
    let both: Vec<Vec<usize>> =
        (0..n).map(|x| right[x].iter().chain(&left[x]).copied().collect()).collect();

    let r = normalize_labels(&scc(&right));
    let l = normalize_labels(&scc(&left));
    let j = normalize_labels(&scc(&both));
    let h = intersect(&l, &r);
    let d = join(&l, &r);
    GreenStructure { h, l, r, d, j }
}

type Bits = Vec<u64>;

fn bitset(n: usize) -> Bits {
    vec![0; n.div_ceil(64)]
}

fn set_bit(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn has_bit(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

/// Green's relations straight from the definitions: principal ideals
/// `S¹x`, `xS¹`, `S¹xS¹` are computed as element sets and compared; D is
/// `L ∘ R` tested pairwise.
pub fn green_definitional(fs: &FiniteSemigroup) -> GreenStructure {
    let n = fs.len();
    let mut left_ideals = Vec::with_capacity(n);
    let mut right_ideals = Vec::with_capacity(n);
    let mut two_sided = Vec::with_capacity(n);
    for x in 0..n {
        let mut left = bitset(n);
        let mut right = bitset(n);
        set_bit(&mut left, x);
        set_bit(&mut right, x);
        for s in 0..n {
            set_bit(&mut left, fs.mul(s, x));
            set_bit(&mut right, fs.mul(x, s));
        }
        let mut both = left.clone();
        for (w, r) in both.iter_mut().zip(&right) {
            *w |= r;
        }
        for s in 0..n {
            let sx = fs.mul(s, x);
            for t in 0..n {
                set_bit(&mut both, fs.mul(sx, t));
            }
        }
        left_ideals.push(left);
        right_ideals.push(right);
        two_sided.push(both);
    }
    let l = normalize_labels(&left_ideals);
    let r = normalize_labels(&right_ideals);
    let j = normalize_labels(&two_sided);
    let h = intersect(&l, &r);

    // a D b iff some c has a L c and c R b
    let r_count = r.iter().max().map_or(0, |m| m + 1);
    let mut reach: Vec<Bits> = Vec::with_capacity(n);
    for a in 0..n {
        let mut rs = bitset(r_count);
        for c in 0..n {
            if l[c] == l[a] {
                set_bit(&mut rs, r[c]);
            }
        }
        reach.push(rs);
    }
    let mut d_raw = vec![usize::MAX; n];
    let mut next = 0;
    for a in 0..n {
        if d_raw[a] != usize::MAX {
            continue;
        }
        d_raw[a] = next;
        for b in a + 1..n {
            if d_raw[b] == usize::MAX && has_bit(&reach[a], r[b]) {
                d_raw[b] = next;
            }
        }
        next += 1;
    }
    let d = normalize_labels(&d_raw);
    GreenStructure { h, l, r, d, j }
}

/// One D-class drawn as R-classes (rows) by L-classes (columns).
#[derive(Clone, Debug, Serialize)]
pub struct DClassBox {
    pub d_class: usize,
    pub rows: Vec<usize>,
    pub columns: Vec<usize>,
    /// `cells[i][j]`: elements in the H-class at row i, column j.
    pub cells: Vec<Vec<Vec<usize>>>,
    pub regular: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EggboxReport {
    pub boxes: Vec<DClassBox>,
    pub labels: Vec<String>,
}

pub fn eggbox(fs: &FiniteSemigroup, green: &GreenStructure) -> EggboxReport {
    let idempotent: Vec<bool> = (0..fs.len()).map(|x| fs.mul(x, x) == x).collect();
    let mut boxes = Vec::new();
    for (d, members) in green.classes(Green::D).into_iter().enumerate() {
        let mut rows: Vec<usize> = members.iter().map(|&x| green.r[x]).collect();
        rows.sort_unstable();
        rows.dedup();
        let mut columns: Vec<usize> = members.iter().map(|&x| green.l[x]).collect();
        columns.sort_unstable();
        columns.dedup();
        let mut cells = vec![vec![Vec::new(); columns.len()]; rows.len()];
        for &x in &members {
            let i = rows.binary_search(&green.r[x]).expect("row present");
            let j = columns.binary_search(&green.l[x]).expect("column present");
            cells[i][j].push(x);
        }
        let regular = members.iter().any(|&x| idempotent[x]);
        boxes.push(DClassBox { d_class: d, rows, columns, cells, regular });
    }
    EggboxReport { boxes, labels: fs.labels().to_vec() }
}

impl fmt::Display for EggboxReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.boxes {
            writeln!(
                f,
                "D-class {} ({}x{}, {})",
                b.d_class,
                b.rows.len(),
                b.columns.len(),
                if b.regular { "regular" } else { "non-regular" }
            )?;
            let rendered: Vec<Vec<String>> = b
                .cells
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|cell| {
                            cell.iter().map(|&x| self.labels[x].as_str()).collect::<Vec<_>>().join(",")
                        })
                        .collect()
                })
                .collect();
            let width = rendered.iter().flatten().map(|s| s.len()).max().unwrap_or(1).max(1);
            for row in &rendered {
                let cells: Vec<String> = row.iter().map(|s| format!("{s:width$}")).collect();
                writeln!(f, "  | {} |", cells.join(" | "))?;
            }
        }
        Ok(())
    }
}

/// Class-size profile per relation, used as an isomorphism invariant.
pub(crate) fn class_size_profile(green: &GreenStructure) -> BTreeMap<Green, Vec<usize>> {
    Green::ALL
        .iter()
        .map(|&g| {
            let mut sizes: Vec<usize> = green.classes(g).iter().map(Vec::len).collect();
            sizes.sort_unstable();
            (g, sizes)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn right_zero(n: usize) -> FiniteSemigroup {
        FiniteSemigroup::from_fn((0..n).map(|i| format!("r{i}")).collect(), None, vec![], |_, y| y)
            .unwrap()
    }

    #[test]
    fn tarjan_finds_cycles() {
        let adj = vec![vec![1], vec![2], vec![0, 3], vec![3]];
        let c = normalize_labels(&scc(&adj));
        assert_eq!(c, vec![0, 0, 0, 1]);
    }

    #[test]
    fn right_zero_counts() {
        let fs = right_zero(5);
        let g = green_definitional(&fs);
        // xS¹ = S for every x, while S¹x = {x}
        assert_eq!(g.count(Green::L), 5);
        assert_eq!(g.count(Green::R), 1);
        assert_eq!(g.count(Green::H), 5);
        assert_eq!(g, green_scc(&fs));
    }

    #[test]
    fn trivial_semigroup() {
        let fs = FiniteSemigroup::from_fn(vec!["e".into()], None, vec![], |_, _| 0).unwrap();
        assert_eq!(green_scc(&fs).counts(), [1; 5]);
        assert_eq!(green_definitional(&fs).counts(), [1; 5]);
    }

    #[test]
    fn eggbox_grid_matches_counts() {
        let fs = right_zero(3);
        let g = green_scc(&fs);
        let egg = eggbox(&fs, &g);
        assert_eq!(egg.boxes.len(), 1);
        assert_eq!(egg.boxes[0].rows.len(), 1);
        assert_eq!(egg.boxes[0].columns.len(), 3);
        assert!(egg.boxes[0].regular);
        assert!(egg.to_string().contains("D-class 0 (1x3, regular)"));
    }
}
