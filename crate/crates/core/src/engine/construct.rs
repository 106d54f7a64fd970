use super::{EngineError, FiniteSemigroup};

/// Default refusal bound for product sizes.
pub const MAX_PRODUCT_SIZE: usize = 20_000;

fn fresh_label(fs: &FiniteSemigroup, wanted: &str) -> String {
    let mut label = wanted.to_string();
    while fs.index_of(&label).is_some() {
        label.push('\'');
    }
    label
}

/// Direct product with componentwise multiplication. Elements are ordered
/// lexicographically, first factor most significant. The unary operation is
/// kept iff every factor has one.
pub fn direct_product(factors: &[FiniteSemigroup]) -> Result<FiniteSemigroup, EngineError> {
    if factors.is_empty() {
        return Err(EngineError::Empty("direct product of no factors"));
    }
    let required = factors
        .iter()
        .try_fold(1usize, |acc, f| acc.checked_mul(f.len()))
        .unwrap_or(usize::MAX);
    if required > MAX_PRODUCT_SIZE {
        return Err(EngineError::TooLarge { required, bound: MAX_PRODUCT_SIZE });
    }
    let n = required;
    // mixed-radix digits, last factor varies fastest
    let digits = |mut x: usize| -> Vec<usize> {
        let mut d = vec![0; factors.len()];
        for (i, f) in factors.iter().enumerate().rev() {
            d[i] = x % f.len();
            x /= f.len();
        }
        d
    };
    let encode = |d: &[usize]| -> usize {
        d.iter().zip(factors).fold(0, |acc, (&di, f)| acc * f.len() + di)
    };
    let all_digits: Vec<Vec<usize>> = (0..n).map(digits).collect();
    let labels = all_digits
        .iter()
        .map(|d| {
            let parts: Vec<&str> = d.iter().zip(factors).map(|(&di, f)| f.label(di)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let mut table = Vec::with_capacity(n * n);
    let mut buf = vec![0; factors.len()];
    for dx in &all_digits {
        for dy in &all_digits {
            for (i, f) in factors.iter().enumerate() {
                buf[i] = f.mul(dx[i], dy[i]);
            }
            table.push(encode(&buf));
        }
    }
    let unary = if factors.iter().all(FiniteSemigroup::has_unary) {
        Some(
            all_digits
                .iter()
                .map(|d| {
                    let img: Vec<usize> = d
                        .iter()
                        .zip(factors)
                        .map(|(&di, f)| f.unary(di).expect("factor has unary"))
                        .collect();
                    encode(&img)
                })
                .collect(),
        )
    } else {
        None
    };
    // componentwise products of associative tables are associative
    Ok(FiniteSemigroup::from_trusted(labels, table, unary, Vec::new()))
}

/// Rees quotient `S/I`: elements outside `ideal` in their original order,
/// followed by a single zero. The unary operation survives when it maps the
/// ideal into itself.
pub fn rees_quotient(fs: &FiniteSemigroup, ideal: &[usize]) -> Result<FiniteSemigroup, EngineError> {
    let n = fs.len();
    if ideal.is_empty() {
        return Err(EngineError::Empty("ideal"));
    }
    let mut in_ideal = vec![false; n];
    for &i in ideal {
        if i >= n {
            return Err(EngineError::Invalid(format!("element index {i} out of range")));
        }
        in_ideal[i] = true;
    }
    for s in 0..n {
        for &i in ideal {
            if !in_ideal[fs.mul(s, i)] {
                return Err(EngineError::NotIdeal {
                    element: fs.label(s).to_string(),
                    member: fs.label(i).to_string(),
                    side: "left",
                });
            }
            if !in_ideal[fs.mul(i, s)] {
                return Err(EngineError::NotIdeal {
                    element: fs.label(s).to_string(),
                    member: fs.label(i).to_string(),
                    side: "right",
                });
            }
        }
    }
    let kept: Vec<usize> = (0..n).filter(|&x| !in_ideal[x]).collect();
    let zero = kept.len();
    let mut new_index = vec![zero; n];
    for (k, &x) in kept.iter().enumerate() {
        new_index[x] = k;
    }
    let mut labels: Vec<String> = kept.iter().map(|&x| fs.label(x).to_string()).collect();
    labels.push(fresh_label(fs, "0"));
    let m = kept.len() + 1;
    let mut table = vec![zero; m * m];
    for (a, &x) in kept.iter().enumerate() {
        for (b, &y) in kept.iter().enumerate() {
            table[a * m + b] = new_index[fs.mul(x, y)];
        }
    }
    let unary = fs.unary_map().and_then(|u| {
        if ideal.iter().all(|&i| in_ideal[u[i]]) {
            let mut v: Vec<usize> = kept.iter().map(|&x| new_index[u[x]]).collect();
            v.push(zero);
            Some(v)
        } else {
            None
        }
    });
    let mut gens: Vec<usize> = fs.generators().iter().map(|&g| new_index[g]).collect();
    gens.sort_unstable();
    gens.dedup();
    let mut quotient = FiniteSemigroup::from_trusted(labels, table, unary, gens.clone());
    if !quotient.closure_of(&gens)[zero] {
        gens.push(zero);
        quotient = FiniteSemigroup::from_trusted(
            quotient.labels().to_vec(),
            quotient.table().to_vec(),
            quotient.unary_map().map(<[usize]>::to_vec),
            gens,
        );
    }
    Ok(quotient)
}

/// `S¹`: a new identity appended as the last element.
pub fn adjoin_identity(fs: &FiniteSemigroup) -> FiniteSemigroup {
    let n = fs.len();
    let e = n;
    let m = n + 1;
    let mut table = vec![0; m * m];
    for x in 0..m {
        for y in 0..m {
            table[x * m + y] = match (x == e, y == e) {
                (true, _) => y,
                (_, true) => x,
                _ => fs.mul(x, y),
            };
        }
    }
    let mut labels = fs.labels().to_vec();
    labels.push(fresh_label(fs, "1"));
    let unary = fs.unary_map().map(|u| {
        let mut v = u.to_vec();
        v.push(e);
        v
    });
    let mut gens = fs.generators().to_vec();
    gens.push(e);
    FiniteSemigroup::from_trusted(labels, table, unary, gens)
}

/// `S⁰`: a new zero appended as the last element.
pub fn adjoin_zero(fs: &FiniteSemigroup) -> FiniteSemigroup {
    let n = fs.len();
    let z = n;
    let m = n + 1;
    let mut table = vec![z; m * m];
    for x in 0..n {
        for y in 0..n {
            table[x * m + y] = fs.mul(x, y);
        }
    }
    let mut labels = fs.labels().to_vec();
    labels.push(fresh_label(fs, "0"));
    let unary = fs.unary_map().map(|u| {
        let mut v = u.to_vec();
        v.push(z);
        v
    });
    let mut gens = fs.generators().to_vec();
    gens.push(z);
    FiniteSemigroup::from_trusted(labels, table, unary, gens)
}

/// The subsemigroup generated by `gens` (closed under the unary operation
/// too when `with_unary`), together with the embedding into `fs`.
pub fn subsemigroup(
    fs: &FiniteSemigroup,
    gens: &[usize],
    with_unary: bool,
) -> Result<(FiniteSemigroup, Vec<usize>), EngineError> {
    if gens.is_empty() {
        return Err(EngineError::Empty("generating set"));
    }
    let mut gens: Vec<usize> = gens.to_vec();
    if with_unary {
        if let Some(u) = fs.unary_map() {
            let extra: Vec<usize> = gens.iter().map(|&g| u[g]).collect();
            gens.extend(extra);
        }
    }
    gens.sort_unstable();
    gens.dedup();
    let mask = fs.closure_of(&gens);
    let members: Vec<usize> = (0..fs.len()).filter(|&x| mask[x]).collect();
    let mut local = vec![usize::MAX; fs.len()];
    for (k, &x) in members.iter().enumerate() {
        local[x] = k;
    }
    let m = members.len();
    let mut table = Vec::with_capacity(m * m);
    for &x in &members {
        for &y in &members {
            table.push(local[fs.mul(x, y)]);
        }
    }
    let unary = if with_unary {
        fs.unary_map().map(|u| members.iter().map(|&x| local[u[x]]).collect::<Vec<_>>())
    } else {
        None
    };
    if let Some(u) = &unary {
        if u.contains(&usize::MAX) {
            return Err(EngineError::Invalid("unary image escapes the subsemigroup".into()));
        }
    }
    let labels = members.iter().map(|&x| fs.label(x).to_string()).collect();
    let local_gens = gens.iter().map(|&g| local[g]).collect();
    Ok((FiniteSemigroup::from_trusted(labels, table, unary, local_gens), members))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{green_scc, Green};

    fn chain(n: usize) -> FiniteSemigroup {
        // min-semilattice 0 < 1 < ... < n-1
        FiniteSemigroup::from_fn((0..n).map(|i| format!("c{i}")).collect(), None, vec![], |x, y| {
            x.min(y)
        })
        .unwrap()
    }

    fn truncated(p: usize) -> FiniteSemigroup {
        // {1, a, ..., a^p}
        let labels = (0..=p).map(|i| match i {
            0 => "1".into(),
            1 => "a".into(),
            _ => format!("a^{i}"),
        }).collect();
        FiniteSemigroup::from_fn(labels, None, vec![0, 1], |x, y| (x + y).min(p)).unwrap()
    }

    #[test]
    fn product_with_trivial_is_isomorphic() {
        let s = chain(3);
        let t = FiniteSemigroup::from_fn(vec!["e".into()], None, vec![], |_, _| 0).unwrap();
        let p = direct_product(&[s.clone(), t]).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.table(), s.table());
        assert!(crate::engine::iso_tables(&p, &s).unwrap().is_some());
    }

    #[test]
    fn product_size_refused_above_bound() {
        let big = chain(200);
        let err = direct_product(&[big.clone(), big]).unwrap_err();
        assert!(matches!(err, EngineError::TooLarge { required: 40_000, .. }));
    }

    #[test]
    fn rees_quotient_of_truncated_monoid() {
        let n3 = truncated(3);
        let q = rees_quotient(&n3, &[2, 3]).unwrap();
        assert_eq!(q.len(), 3);
        assert_eq!(q.labels(), &["1", "a", "0"]);
        assert_eq!(q.zero(), Some(2));
        assert_eq!(q.mul(1, 1), 2);
    }

    #[test]
    fn rees_quotient_by_everything_is_trivial() {
        let n3 = truncated(3);
        let q = rees_quotient(&n3, &[0, 1, 2, 3]).unwrap();
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn rees_quotient_rejects_non_ideal() {
        let n3 = truncated(3);
        let err = rees_quotient(&n3, &[1]).unwrap_err();
        assert!(matches!(err, EngineError::NotIdeal { .. }));
    }

    #[test]
    fn adjoining() {
        let t = FiniteSemigroup::from_fn(vec!["e".into()], None, vec![], |_, _| 0).unwrap();
        let z = adjoin_zero(&t);
        assert_eq!(z.len(), 2);
        assert_eq!(z.idempotents().len(), 2);
        assert_eq!(z.zero(), Some(1));
        // N_2 without its identity: {a, a^2}
        let (n2, _) = subsemigroup(&truncated(2), &[1], false).unwrap();
        assert!(!n2.is_monoid());
        let with_one = adjoin_identity(&n2);
        assert!(with_one.is_monoid());
        assert_eq!(green_scc(&with_one).count(Green::J), with_one.len());
    }
}
