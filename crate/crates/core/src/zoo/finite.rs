use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ZooError;
use crate::engine::{adjoin_identity, enumerate, Budget, ElementOracle, Enumeration, FiniteSemigroup};
use crate::munn::FisTriple;
use crate::words::{Alphabet, Letter};

/// A partial injection of `{0, …, k-1}`, composed left to right.
pub type PartialMap = Vec<Option<u8>>;

pub struct PartialBijections;

impl ElementOracle for PartialBijections {
    type Element = PartialMap;
    type Key = PartialMap;

    fn multiply(&self, f: &PartialMap, g: &PartialMap) -> PartialMap {
        f.iter().map(|x| x.and_then(|i| g[i as usize])).collect()
    }

    fn key(&self, e: &PartialMap) -> PartialMap {
        e.clone()
    }

    fn unary(&self, f: &PartialMap) -> Option<PartialMap> {
        let mut inv = vec![None; f.len()];
        for (i, x) in f.iter().enumerate() {
            if let Some(j) = x {
                inv[*j as usize] = Some(i as u8);
            }
        }
        Some(inv)
    }
}

/// `B₂` as partial bijections of `{1, 2}` with `a: 1 ↦ 2`, in the order
/// `a, a⁻¹, aa⁻¹, a⁻¹a, 0`, with inversion as the unary operation.
pub fn b2() -> FiniteSemigroup {
    let elems: [PartialMap; 5] = [
        vec![Some(1), None],
        vec![None, Some(0)],
        vec![Some(0), None],
        vec![None, Some(1)],
        vec![None, None],
    ];
    let labels = ["a", "a^-1", "aa^-1", "a^-1a", "0"].map(String::from).to_vec();
    let find = |m: &PartialMap| elems.iter().position(|e| e == m).expect("closed");
    let o = PartialBijections;
    let unary = elems.iter().map(|e| find(&o.unary(e).expect("inverse"))).collect();
    FiniteSemigroup::from_fn(labels, Some(unary), vec![0, 1], |x, y| find(&o.multiply(&elems[x], &elems[y])))
        .expect("B2 is a semigroup")
}

pub fn b2_with_identity() -> FiniteSemigroup {
    adjoin_identity(&b2())
}

/// `N_p = Mon⟨a | a^p = a^{p+1}⟩` on `{1, a, …, a^p}`.
pub fn monogenic_monoid(p: usize) -> Result<FiniteSemigroup, ZooError> {
    if p == 0 {
        return Err(ZooError::Parameter("monogenic monoid needs p ≥ 1".into()));
    }
    let labels = (0..=p)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "a".to_string(),
            _ => format!("a^{i}"),
        })
        .collect();
    Ok(FiniteSemigroup::from_fn(labels, None, vec![0, 1], |x, y| (x + y).min(p))?)
}

fn check_size(n: usize, what: &str) -> Result<(), ZooError> {
    if n == 0 {
        return Err(ZooError::Parameter(format!("{what} needs n ≥ 1")));
    }
    Ok(())
}

/// Bands carry `x′ = x`, which makes them completely regular.
pub fn right_zero(n: usize) -> Result<FiniteSemigroup, ZooError> {
    check_size(n, "right zero semigroup")?;
    let labels = (0..n).map(|i| format!("r{i}")).collect();
    Ok(FiniteSemigroup::from_fn(labels, Some((0..n).collect()), vec![], |_, y| y)?)
}

pub fn left_zero(n: usize) -> Result<FiniteSemigroup, ZooError> {
    check_size(n, "left zero semigroup")?;
    let labels = (0..n).map(|i| format!("l{i}")).collect();
    Ok(FiniteSemigroup::from_fn(labels, Some((0..n).collect()), vec![], |x, _| x)?)
}

/// `n` elements counting the zero, which comes first.
pub fn null_semigroup(n: usize) -> Result<FiniteSemigroup, ZooError> {
    check_size(n, "null semigroup")?;
    let labels = (0..n)
        .map(|i| match (i, n) {
            (0, _) => "0".to_string(),
            (_, 2) => "b".to_string(),
            _ => format!("b{i}"),
        })
        .collect();
    Ok(FiniteSemigroup::from_fn(labels, None, vec![], |_, _| 0)?)
}

/// Full transformations of `{0, …, n-1}`, composed left to right.
pub struct Transformations;

impl ElementOracle for Transformations {
    type Element = Vec<u8>;
    type Key = Vec<u8>;

    fn multiply(&self, f: &Vec<u8>, g: &Vec<u8>) -> Vec<u8> {
        f.iter().map(|&i| g[i as usize]).collect()
    }

    fn key(&self, e: &Vec<u8>) -> Vec<u8> {
        e.clone()
    }

    fn label(&self, e: &Vec<u8>) -> String {
        e.iter().map(|d| d.to_string()).collect()
    }
}

pub const MAX_TRANSFORMATION_DEGREE: usize = 5;

/// Closure of `maps` under composition.
pub fn transformation_semigroup(n: usize, maps: &[Vec<u8>], budget: Budget) -> Result<FiniteSemigroup, ZooError> {
    if n == 0 || n > MAX_TRANSFORMATION_DEGREE {
        return Err(ZooError::Parameter(format!(
            "transformation degree must be in 1..={MAX_TRANSFORMATION_DEGREE}, got {n}"
        )));
    }
    if maps.iter().any(|m| m.len() != n || m.iter().any(|&x| x as usize >= n)) {
        return Err(ZooError::Parameter(format!("every map must be total on {n} points")));
    }
    match enumerate(&Transformations, maps, budget)? {
        Enumeration::Closed { semigroup, .. } => Ok(semigroup),
        Enumeration::Open(ball) => Err(ZooError::Unfinished { elements: ball.len(), radius: ball.radius }),
    }
}

pub fn random_maps(n: usize, k: usize, seed: u64) -> Vec<Vec<u8>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..n as u8)).collect()).collect()
}

/// `M_n = FIS_a / I_n`: triples of span below `n`, ordered by span, then
/// `r`, then `t`, followed by the zero. Inversion is the unary operation.
pub fn mn_table(n: usize) -> Result<FiniteSemigroup, ZooError> {
    if n < 2 {
        return Err(ZooError::Parameter("M_n needs n ≥ 2".into()));
    }
    let n = n as i64;
    let mut triples = Vec::new();
    for span in 1..n {
        for r in 0..=span {
            let s = span - r;
            for t in -r..=s {
                triples.push(FisTriple::new(r, s, t)?);
            }
        }
    }
    let zero = triples.len();
    let index = |x: &FisTriple| {
        if x.span() >= n {
            zero
        } else {
            triples.binary_search_by_key(&(x.span(), x.r, x.t), |y| (y.span(), y.r, y.t)).expect("listed")
        }
    };
    let alphabet = Alphabet::sealed(&["a"]);
    let a: Letter = 0;
    let mut labels: Vec<String> = triples.iter().map(|x| x.word(a).display(&alphabet).to_string().replace(' ', "")).collect();
    labels.push("0".into());
    let mut unary: Vec<usize> = triples.iter().map(|x| index(&x.inverse())).collect();
    unary.push(zero);
    let gens = vec![index(&FisTriple::new(0, 1, 1)?), index(&FisTriple::new(1, 0, -1)?)];
    let fs = FiniteSemigroup::from_fn(labels, Some(unary), gens, |x, y| {
        if x == zero || y == zero {
            zero
        } else {
            index(&triples[x].multiply(&triples[y]))
        }
    })?;
    Ok(fs)
}

pub fn mn_size_formula(n: usize) -> usize {
    1 + (1..n).map(|l| (l + 1) * (l + 1)).sum::<usize>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{green_definitional, green_scc, iso_tables, Green};

    #[test]
    fn b2_products() {
        let b = b2();
        let (a, ai, e, f, z) = (0, 1, 2, 3, 4);
        assert_eq!(b.mul(a, a), z);
        assert_eq!(b.product(&[a, ai, a]), a);
        assert_eq!(b.mul(a, ai), e);
        assert_eq!(b.mul(ai, a), f);
        assert_eq!(b.idempotents(), vec![e, f, z]);
        assert_eq!(b2_with_identity().idempotents().len(), 4);
        assert_eq!(b.zero(), Some(z));
        assert!(b.is_i_semigroup());
    }

    #[test]
    fn b2_from_oracle() {
        let a: PartialMap = vec![Some(1), None];
        let ai = PartialBijections.unary(&a).unwrap();
        let e = enumerate(&PartialBijections, &[a, ai], Budget::default()).unwrap();
        let fs = e.into_semigroup().unwrap();
        assert_eq!(fs.len(), 5);
        assert!(iso_tables(&fs, &b2()).unwrap().is_some());
    }

    #[test]
    fn b2_green_counts() {
        let g = green_scc(&b2());
        assert_eq!(g.counts(), [5, 3, 3, 2, 2]);
        assert_eq!(g, green_definitional(&b2()));
    }

    #[test]
    fn monogenic() {
        let n1 = monogenic_monoid(1).unwrap();
        assert_eq!(n1.len(), 2);
        assert_eq!(n1.mul(1, 1), 1);
        let n3 = monogenic_monoid(3).unwrap();
        assert_eq!(n3.mul(2, 2), 3);
        for p in 1..6 {
            let g = green_scc(&monogenic_monoid(p).unwrap());
            assert_eq!(g.counts(), [p + 1; 5]);
        }
        assert!(monogenic_monoid(0).is_err());
    }

    #[test]
    fn zero_semigroups() {
        let l = left_zero(3).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(l.mul(x, y), x);
            }
        }
        let nul = null_semigroup(2).unwrap();
        assert_eq!(nul.labels(), &["0", "b"]);
        assert_eq!(nul.mul(1, 1), 0);
        assert_eq!(green_definitional(&right_zero(3).unwrap()).count(Green::R), 1);
        assert_eq!(green_definitional(&right_zero(3).unwrap()).count(Green::L), 3);
    }

    #[test]
    fn transformations() {
        let consts = transformation_semigroup(2, &[vec![0, 0], vec![1, 1]], Budget::default()).unwrap();
        assert_eq!(consts.len(), 2);
        // left-to-right composition of constants: xy = y
        assert_eq!(consts.mul(0, 1), 1);
        assert_eq!(consts.mul(1, 0), 0);
        let id = transformation_semigroup(3, &[vec![0, 1, 2]], Budget::default()).unwrap();
        assert_eq!(id.len(), 1);
        let fs = transformation_semigroup(4, &random_maps(4, 2, 42), Budget::default()).unwrap();
        assert_eq!(green_scc(&fs), green_definitional(&fs));
        assert!(transformation_semigroup(6, &[vec![0; 6]], Budget::default()).is_err());
    }

    #[test]
    fn mn_sizes_and_b2() {
        assert_eq!(mn_table(2).unwrap().len(), 5);
        assert_eq!(mn_table(3).unwrap().len(), 14);
        for n in 2..=6 {
            assert_eq!(mn_table(n).unwrap().len(), mn_size_formula(n));
        }
        assert!(iso_tables(&mn_table(2).unwrap(), &b2()).unwrap().is_some());
    }
}
