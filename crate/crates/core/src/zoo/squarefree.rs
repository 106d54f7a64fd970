use std::collections::BTreeSet;

use super::ZooError;
use crate::engine::FiniteSemigroup;

pub const MAX_PATTERN_WORD: usize = 24;
pub const MAX_PATTERN_LEN: usize = 6;
pub const MAX_NIL_ELEMENTS: usize = 2_000;

/// Prefix of the fixed point of `a → abc, b → ac, c → b`, letters as `0, 1, 2`.
pub fn squarefree_word(length: usize) -> Vec<u8> {
    let mut w = vec![0u8];
    while w.len() < length {
        w = w
            .iter()
            .flat_map(|&l| match l {
                0 => &[0u8, 1, 2][..],
                1 => &[0, 2][..],
                _ => &[1][..],
            })
            .copied()
            .collect();
    }
    w.truncate(length);
    w
}

/// No factor `uu` with `u` nonempty.
pub fn is_square_free(w: &[u8]) -> bool {
    let n = w.len();
    for half in 1..=n / 2 {
        // a square of this half-length is a run of `half` positions with w[i] = w[i+half]
        let mut run = 0;
        for i in 0..n - half {
            if w[i] == w[i + half] {
                run += 1;
                if run >= half {
                    return false;
                }
            } else {
                run = 0;
            }
        }
    }
    true
}

pub fn letters_to_string(w: &[u8]) -> String {
    w.iter().map(|&l| (b'a' + l) as char).collect()
}

/// Parses a word over `a, b, c, …` into letter indices.
pub fn string_to_letters(s: &str) -> Result<Vec<u8>, ZooError> {
    s.bytes()
        .map(|b| {
            if b.is_ascii_lowercase() {
                Ok(b - b'a')
            } else {
                Err(ZooError::Parameter(format!("letters must be lowercase ascii, got {:?}", b as char)))
            }
        })
        .collect()
}

fn factor_set(w: &[u8], cap: usize) -> BTreeSet<Vec<u8>> {
    let mut set = BTreeSet::new();
    for len in 1..=cap.min(w.len()) {
        for f in w.windows(len) {
            set.insert(f.to_vec());
        }
    }
    set
}

/// Factors of length at most `cap` of the infinite square-free word,
/// ordered by length then lexicographically.
pub fn squarefree_factors(cap: usize) -> Vec<Vec<u8>> {
    let mut len = 64usize.max(8 * cap);
    let mut prev = factor_set(&squarefree_word(len), cap);
    loop {
        len *= 2;
        let next = factor_set(&squarefree_word(len), cap);
        if next == prev {
            break;
        }
        prev = next;
    }
    let mut v: Vec<Vec<u8>> = prev.into_iter().collect();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    v
}

/// Words of the square-free set `W` of length at most `cap`, plus `0`;
/// `u∗v = uv` if that is again in the set.
pub fn sw_semigroup(cap: usize) -> Result<FiniteSemigroup, ZooError> {
    if cap == 0 {
        return Err(ZooError::Parameter("sw needs cap ≥ 1".into()));
    }
    word_semigroup(squarefree_factors(cap), |w| w.len() <= cap)
}

/// Shared construction: `words` sorted by (length, lex), factor-closed;
/// products land on the concatenation when `admit` holds and it is listed.
fn word_semigroup(words: Vec<Vec<u8>>, admit: impl Fn(&[u8]) -> bool) -> Result<FiniteSemigroup, ZooError> {
    let zero = words.len();
    let lookup = |w: &[u8]| {
        if !admit(w) {
            return zero;
        }
        words
            .binary_search_by(|x| x.len().cmp(&w.len()).then_with(|| x.as_slice().cmp(w)))
            .unwrap_or(zero)
    };
    let mut labels: Vec<String> = words.iter().map(|w| letters_to_string(w)).collect();
    labels.push("0".into());
    let gens: Vec<usize> = (0..words.len()).filter(|&i| words[i].len() == 1).chain([zero]).collect();
    let mut buf = Vec::new();
    let fs = FiniteSemigroup::from_fn(labels, None, gens, |x, y| {
        if x == zero || y == zero {
            return zero;
        }
        buf.clear();
        buf.extend_from_slice(&words[x]);
        buf.extend_from_slice(&words[y]);
        lookup(&buf)
    })?;
    Ok(fs)
}

/// Does `w` itself have the form `π(pattern)` with every variable sent to
/// a nonempty word?
fn is_instance(w: &[u8], pattern: &[u8]) -> bool {
    fn go(w: &[u8], pattern: &[u8], assigned: &mut [Option<(usize, usize)>; 256], pos: usize) -> bool {
        let Some((&var, rest)) = pattern.split_first() else {
            return pos == w.len();
        };
        let remaining = w.len() - pos;
        if remaining < pattern.len() {
            return false;
        }
        if let Some((start, len)) = assigned[var as usize] {
            return remaining >= len && w[pos..pos + len] == w[start..start + len] && go(w, rest, assigned, pos + len);
        }
        for len in 1..=remaining - rest.len() {
            assigned[var as usize] = Some((pos, len));
            let found = go(w, rest, assigned, pos + len);
            assigned[var as usize] = None;
            if found {
                return true;
            }
        }
        false
    }
    go(w, pattern, &mut [None; 256], 0)
}

fn check_pattern(w: &[u8], pattern: &[u8]) -> Result<(), ZooError> {
    if pattern.is_empty() {
        return Err(ZooError::Parameter("pattern must be nonempty".into()));
    }
    if pattern.len() > MAX_PATTERN_LEN || w.len() > MAX_PATTERN_WORD {
        return Err(ZooError::Parameter(format!(
            "pattern matching is capped at |w| ≤ {MAX_PATTERN_WORD}, |pattern| ≤ {MAX_PATTERN_LEN}"
        )));
    }
    Ok(())
}

/// True iff no factor of `w` is an instance of `pattern`.
pub fn pattern_instance_free(w: &[u8], pattern: &[u8]) -> Result<bool, ZooError> {
    check_pattern(w, pattern)?;
    for start in 0..w.len() {
        for end in start + 1..=w.len() {
            if is_instance(&w[start..end], pattern) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Capped `n`-generated free object of `[u = 0]`: instance-free words of
/// length at most `cap` plus `0`. Longer products also go to `0`, so for
/// finite `cap` this is a Rees quotient of the free object.
pub fn free_nil(pattern: &[u8], letters: usize, cap: usize) -> Result<FiniteSemigroup, ZooError> {
    if letters == 0 || letters > 26 || cap == 0 {
        return Err(ZooError::Parameter("free_nil needs 1..=26 letters and cap ≥ 1".into()));
    }
    check_pattern(&vec![0; cap], pattern)?;
    // extend instance-free words letter by letter; only new suffixes can be instances
    let mut words: Vec<Vec<u8>> = Vec::new();
    let mut level: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..cap {
        let mut next = Vec::new();
        for w in &level {
            for l in 0..letters as u8 {
                let mut v = w.clone();
                v.push(l);
                if (0..v.len()).all(|s| !is_instance(&v[s..], pattern)) {
                    next.push(v);
                }
            }
        }
        words.extend(next.iter().cloned());
        if words.len() + 1 > MAX_NIL_ELEMENTS {
            return Err(ZooError::TooLarge { required: words.len() + 1, bound: MAX_NIL_ELEMENTS });
        }
        level = next;
    }
    let cap_ok = |w: &[u8]| w.len() <= cap;
    word_semigroup(words, cap_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{green_scc, Green};

    #[test]
    fn thue_prefixes() {
        assert_eq!(letters_to_string(&squarefree_word(3)), "abc");
        assert_eq!(letters_to_string(&squarefree_word(6)), "abcacb");
        assert!(is_square_free(&squarefree_word(300)));
    }

    #[test]
    fn square_detection() {
        assert!(!is_square_free(&string_to_letters("abab").unwrap()));
        assert!(!is_square_free(&string_to_letters("cbaa").unwrap()));
        assert!(is_square_free(&string_to_letters("abcacb").unwrap()));
    }

    #[test]
    fn patterns() {
        let p = |s: &str| string_to_letters(s).unwrap();
        assert!(!pattern_instance_free(&p("abab"), &p("xx")).unwrap());
        assert!(pattern_instance_free(&p("abcacb"), &p("xx")).unwrap());
        assert!(pattern_instance_free(&p("aabb"), &p("xyx")).unwrap());
        assert!(!pattern_instance_free(&p("abca"), &p("xyx")).unwrap());
        assert!(pattern_instance_free(&[0; 25], &p("xx")).is_err());
        assert!(pattern_instance_free(&p("ab"), &[]).is_err());
    }

    #[test]
    fn sw_small() {
        let sw = sw_semigroup(1).unwrap();
        assert_eq!(sw.labels(), &["a", "b", "c", "0"]);
        assert_eq!(sw.mul(0, 0), 3);
    }

    #[test]
    fn free_nil_counts() {
        let p = |s: &str| string_to_letters(s).unwrap();
        let f = free_nil(&p("xx"), 3, 2).unwrap();
        assert_eq!(f.len(), 3 + 6 + 1);
        let g = free_nil(&p("xy"), 3, 4).unwrap();
        let z = g.zero().unwrap();
        assert!((0..g.len()).all(|x| (0..g.len()).all(|y| g.mul(x, y) == z)));
        let h = free_nil(&p("xx"), 3, 6).unwrap();
        let green = green_scc(&h);
        assert_eq!(green.count(Green::J), h.len());
    }
}
