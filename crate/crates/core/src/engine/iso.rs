use super::green::{class_size_profile, green_scc};
use super::{EngineError, FiniteSemigroup, Green};

/// Desk-scale guard for the backtracking search.
pub const ISO_LIMIT: usize = 64;

/// Per-element invariants preserved by isomorphisms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Profile {
    idempotent: bool,
    /// index and period of the monogenic subsemigroup
    index: usize,
    period: usize,
    class_sizes: [usize; 5],
    left_fixed: usize,
    right_fixed: usize,
}

fn profiles(fs: &FiniteSemigroup) -> Vec<Profile> {
    let n = fs.len();
    let green = green_scc(fs);
    let class_len = |g: Green, x: usize| {
        let p = green.partition(g);
        p.iter().filter(|&&c| c == p[x]).count()
    };
    (0..n)
        .map(|x| {
            // powers x, x^2, ... until a repeat
            let mut seen = vec![usize::MAX; n];
            let mut cur = x;
            let mut k = 1;
            while seen[cur] == usize::MAX {
                seen[cur] = k;
                cur = fs.mul(cur, x);
                k += 1;
            }
            let index = seen[cur];
            let period = k - seen[cur];
            Profile {
                idempotent: fs.mul(x, x) == x,
                index,
                period,
                class_sizes: Green::ALL.map(|g| class_len(g, x)),
                left_fixed: (0..n).filter(|&y| fs.mul(x, y) == y).count(),
                right_fixed: (0..n).filter(|&y| fs.mul(y, x) == y).count(),
            }
        })
        .collect()
}

/// Searches for an isomorphism `a → b` preserving multiplication, and the
/// unary operation when both tables carry one. Returns the bijection as
/// `map[x_in_a] = x_in_b`.
pub fn iso_tables(a: &FiniteSemigroup, b: &FiniteSemigroup) -> Result<Option<Vec<usize>>, EngineError> {
    let n = a.len();
    if n > ISO_LIMIT || b.len() > ISO_LIMIT {
        return Err(EngineError::TooLarge { required: n.max(b.len()), bound: ISO_LIMIT });
    }
    if n != b.len() || a.idempotents().len() != b.idempotents().len() {
        return Ok(None);
    }
    if class_size_profile(&green_scc(a)) != class_size_profile(&green_scc(b)) {
        return Ok(None);
    }
    let pa = profiles(a);
    let pb = profiles(b);
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return Ok(None);
    }
    let check_unary = a.has_unary() && b.has_unary();

    // assign elements with the rarest profiles first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (pa.iter().filter(|p| **p == pa[x]).count(), x));
    let candidates: Vec<Vec<usize>> =
        (0..n).map(|x| (0..n).filter(|&y| pb[y] == pa[x]).collect()).collect();

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let found = search(a, b, check_unary, &order, &candidates, 0, &mut map, &mut used);
    Ok(found.then_some(map))
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &FiniteSemigroup,
    b: &FiniteSemigroup,
    check_unary: bool,
    order: &[usize],
    candidates: &[Vec<usize>],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for &y in &candidates[x] {
        if used[y] {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if consistent(a, b, check_unary, order, depth, map)
            && search(a, b, check_unary, order, candidates, depth + 1, map, used)
        {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}

fn consistent(
    a: &FiniteSemigroup,
    b: &FiniteSemigroup,
    check_unary: bool,
    order: &[usize],
    depth: usize,
    map: &[usize],
) -> bool {
    let x = order[depth];
    let agrees = |p: usize, q: usize| {
        let image = map[a.mul(p, q)];
        image == usize::MAX || image == b.mul(map[p], map[q])
    };
    if check_unary {
        let ux = map[a.unary(x).expect("unary present")];
        if ux != usize::MAX && Some(ux) != b.unary(map[x]) {
            return false;
        }
        let preimage_ok = order[..depth]
            .iter()
            .all(|&p| a.unary(p) != Some(x) || b.unary(map[p]) == Some(map[x]));
        if !preimage_ok {
            return false;
        }
    }
    order[..=depth].iter().all(|&y| agrees(x, y) && agrees(y, x))
        && order[..depth].iter().all(|&p| {
            // products landing on x must be consistent with x's image
            order[..depth].iter().all(|&q| a.mul(p, q) != x || b.mul(map[p], map[q]) == map[x])
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FiniteSemigroup {
        let labels = (0..n).map(|i| format!("g{i}")).collect();
        FiniteSemigroup::from_fn(labels, None, vec![], |x, y| (x + y) % n).unwrap()
    }

    #[test]
    fn self_isomorphic() {
        let z = cyclic(6);
        let map = iso_tables(&z, &z).unwrap().unwrap();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(map[z.mul(x, y)], z.mul(map[x], map[y]));
            }
        }
    }

    #[test]
    fn distinguishes_group_from_semilattice() {
        let z = cyclic(3);
        let chain = FiniteSemigroup::from_fn(
            (0..3).map(|i| format!("c{i}")).collect(),
            None,
            vec![],
            |x, y| x.min(y),
        )
        .unwrap();
        assert_eq!(iso_tables(&z, &chain).unwrap(), None);
    }

    #[test]
    fn refuses_large_tables() {
        let z = cyclic(65);
        assert!(iso_tables(&z, &z).is_err());
    }
}
