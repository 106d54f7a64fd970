/// Disjoint sets with path compression and union by size. Each class also
/// tracks its smallest member so callers can number classes stably.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    least: Vec<usize>,
}

impl DisjointSets {
    pub fn new(len: usize) -> Self {
        DisjointSets { parent: (0..len).collect(), size: vec![1; len], least: (0..len).collect() }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = i;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the classes of `i` and `j`; returns the new root, or `None` if
    /// they were already together.
    pub fn union(&mut self, i: usize, j: usize) -> Option<usize> {
        let mut a = self.find(i);
        let mut b = self.find(j);
        if a == b {
            return None;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.least[a] = self.least[a].min(self.least[b]);
        Some(a)
    }

    /// Smallest original index in the class of `i`.
    pub fn least(&mut self, i: usize) -> usize {
        let r = self.find(i);
        self.least[r]
    }

    /// Dense class ids, numbered in order of each class's smallest member.
    pub fn dense_labels(&mut self) -> Vec<usize> {
        let n = self.len();
        let mut id_of_least = vec![usize::MAX; n];
        let mut next = 0;
        for i in 0..n {
            let l = self.least(i);
            if id_of_least[l] == usize::MAX {
                id_of_least[l] = next;
                next += 1;
            }
        }
        (0..n).map(|i| id_of_least[self.least(i)]).collect()
    }
}

/// Renumbers arbitrary labels densely in order of first occurrence.
pub fn normalize_labels<T: Eq + std::hash::Hash + Clone>(labels: &[T]) -> Vec<usize> {
    let mut seen = std::collections::HashMap::new();
    labels
        .iter()
        .map(|l| {
            let next = seen.len();
            *seen.entry(l.clone()).or_insert(next)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_tracks_least_member() {
        let mut d = DisjointSets::new(6);
        d.union(4, 5);
        d.union(5, 2);
        assert_eq!(d.least(4), 2);
        assert_eq!(d.union(2, 4), None);
        assert_eq!(d.dense_labels(), vec![0, 1, 2, 3, 2, 2]);
    }

    #[test]
    fn normalize_is_first_occurrence() {
        assert_eq!(normalize_labels(&["x", "y", "x", "z"]), vec![0, 1, 0, 2]);
    }
}
