//! Partial bijections of `X = ℤ × ℕ₀` generated by `φ: (x,y) ↦ (x,y+1)` on
//! `V(0,0)` and the translation `ψ: (x,y) ↦ (x+1,y)`, computed symbolically.
//!
//! `V(r,s) = {(x,y) : s ≤ y ≤ x+s−r}`, equivalently `y ≥ s` and
//! `x − y ≥ r − s`. Every map in the family is a translation restricted to
//! `X` or to some `V(r,s)`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::engine::{enumerate, BallEnumeration, Budget, ElementOracle, EngineError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VError {
    #[error("translating X by {0:?} leaves the V-family")]
    Unrepresentable((i64, i64)),
    #[error("image of {domain} under shift {shift:?} is not inside X")]
    OutsideX { domain: VSet, shift: (i64, i64) },
    #[error("ball word length is capped at {MAX_BALL_RADIUS}")]
    BallTooLarge,
    #[error(transparent)]
    Engine(#[from] EngineError),
}

pub const MAX_BALL_RADIUS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VSet {
    Empty,
    Whole,
    V { r: i64, s: i64 },
}

impl fmt::Display for VSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VSet::Empty => f.write_str("∅"),
            VSet::Whole => f.write_str("X"),
            VSet::V { r, s } => write!(f, "V({r},{s})"),
        }
    }
}

impl VSet {
    pub fn v(r: i64, s: i64) -> VSet {
        assert!(s >= 0, "V(r,s) needs s ≥ 0");
        VSet::V { r, s }
    }

    pub fn contains(&self, (x, y): (i64, i64)) -> bool {
        match *self {
            VSet::Empty => false,
            VSet::Whole => y >= 0,
            VSet::V { r, s } => s <= y && y <= x + s - r,
        }
    }
}

pub fn v_intersect(a: VSet, b: VSet) -> VSet {
    match (a, b) {
        (VSet::Empty, _) | (_, VSet::Empty) => VSet::Empty,
        (VSet::Whole, v) | (v, VSet::Whole) => v,
        (VSet::V { r, s }, VSet::V { r: r2, s: s2 }) => {
            let ((r, s), (r2, s2)) = if s2 >= s { ((r, s), (r2, s2)) } else { ((r2, s2), (r, s)) };
            VSet::V { r: (r + s2 - s).max(r2), s: s2 }
        }
    }
}

/// `(u + (dx,dy)) ∩ X`.
pub fn translate(u: VSet, (dx, dy): (i64, i64)) -> Result<VSet, VError> {
    match u {
        VSet::Empty => Ok(VSet::Empty),
        VSet::Whole if dy <= 0 => Ok(VSet::Whole),
        VSet::Whole => Err(VError::Unrepresentable((dx, dy))),
        VSet::V { r, s } => {
            let (r2, s2) = (r + dx, s + dy);
            Ok(if s2 >= 0 { VSet::V { r: r2, s: s2 } } else { VSet::V { r: r2 - s2, s: 0 } })
        }
    }
}

/// The translation by `shift` restricted to `domain`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VMap {
    pub domain: VSet,
    pub shift: (i64, i64),
}

impl fmt::Display for VMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.domain == VSet::Empty {
            return f.write_str("∅");
        }
        write!(f, "{} + ({},{})", self.domain, self.shift.0, self.shift.1)
    }
}

impl VMap {
    pub const EMPTY: VMap = VMap { domain: VSet::Empty, shift: (0, 0) };

    pub fn new(domain: VSet, shift: (i64, i64)) -> Result<VMap, VError> {
        let ok = match domain {
            VSet::Empty => true,
            VSet::Whole => shift.1 == 0,
            VSet::V { s, .. } => s + shift.1 >= 0,
        };
        if !ok {
            return Err(VError::OutsideX { domain, shift });
        }
        Ok(if domain == VSet::Empty { VMap::EMPTY } else { VMap { domain, shift } })
    }

    pub fn identity_on(domain: VSet) -> VMap {
        VMap::new(domain, (0, 0)).expect("identities stay inside X")
    }

    pub fn image(&self) -> VSet {
        translate(self.domain, self.shift).expect("images stay inside the V-family")
    }

    pub fn apply(&self, p: (i64, i64)) -> Option<(i64, i64)> {
        self.domain.contains(p).then(|| (p.0 + self.shift.0, p.1 + self.shift.1))
    }

    pub fn is_idempotent(&self) -> bool {
        self.domain != VSet::Empty && self.shift == (0, 0)
    }

    /// `self` then `g`.
    pub fn compose(&self, g: &VMap) -> VMap {
        let meet = v_intersect(self.image(), g.domain);
        if meet == VSet::Empty {
            return VMap::EMPTY;
        }
        let domain = translate(meet, (-self.shift.0, -self.shift.1)).expect("preimage lies in the domain");
        VMap { domain, shift: (self.shift.0 + g.shift.0, self.shift.1 + g.shift.1) }
    }

    pub fn invert(&self) -> VMap {
        if self.domain == VSet::Empty {
            return VMap::EMPTY;
        }
        VMap { domain: self.image(), shift: (-self.shift.0, -self.shift.1) }
    }
}

pub fn phi() -> VMap {
    VMap { domain: VSet::v(0, 0), shift: (0, 1) }
}

pub fn psi() -> VMap {
    VMap { domain: VSet::Whole, shift: (1, 0) }
}

fn power(base: VMap, n: i64, zeroth: VMap) -> VMap {
    let step = if n < 0 { base.invert() } else { base };
    (0..n.unsigned_abs()).fold(zeroth, |acc, _| acc.compose(&step))
}

/// `φⁿ` for `n ∈ ℤ`; `φ⁰` is the identity on `V(−1,0)`, the `n = 0` case
/// of `φⁿ : V(n−1,0) → V(n−1,n)`.
pub fn phi_pow(n: i64) -> VMap {
    power(phi(), n, VMap::identity_on(VSet::v(-1, 0)))
}

pub fn psi_pow(n: i64) -> VMap {
    power(psi(), n, VMap::identity_on(VSet::Whole))
}

/// Left-to-right product.
pub fn chain(maps: &[VMap]) -> VMap {
    maps.iter().skip(1).fold(maps[0], |acc, m| acc.compose(m))
}

/// `φ^{−r} φ^{r+s} φ^{−s}`.
pub fn idempotent_formula(r: i64, s: i64) -> VMap {
    chain(&[phi_pow(-r), phi_pow(r + s), phi_pow(-s)])
}

/// `ψ^{s−r−1} φ^{−s} φ^{s} ψ^{−s+r+1}`.
pub fn idempotent_formula_psi(r: i64, s: i64) -> VMap {
    chain(&[psi_pow(s - r - 1), phi_pow(-s), phi_pow(s), psi_pow(-s + r + 1)])
}

/// `ψ^{s−r−1} φ^{−s} ψ^{1−s}`, carrying `V(r,s)` onto `V(0,0)`.
pub fn j_chain(r: i64, s: i64) -> VMap {
    chain(&[psi_pow(s - r - 1), phi_pow(-s), psi_pow(1 - s)])
}

pub struct VMapOracle;

impl ElementOracle for VMapOracle {
    type Element = VMap;
    type Key = VMap;

    fn multiply(&self, a: &VMap, b: &VMap) -> VMap {
        a.compose(b)
    }

    fn key(&self, e: &VMap) -> VMap {
        *e
    }

    fn label(&self, e: &VMap) -> String {
        e.to_string()
    }

    fn unary(&self, e: &VMap) -> Option<VMap> {
        Some(e.invert())
    }
}

/// All distinct products of at most `radius` maps from `generators` and
/// their inverses. Generator order in witness words: `g₀, g₀⁻¹, g₁, g₁⁻¹, …`.
pub fn generate_ball(generators: &[VMap], radius: usize) -> Result<BallEnumeration<VMap>, VError> {
    if radius > MAX_BALL_RADIUS {
        return Err(VError::BallTooLarge);
    }
    let gens: Vec<VMap> = generators.iter().flat_map(|g| [*g, g.invert()]).collect();
    Ok(enumerate(&VMapOracle, &gens, Budget::radius(radius))?.ball().clone())
}

/// Distinct `(r,s)` with `1 ≤ r+s ≤ bound` give distinct idempotent domains.
pub fn fis_injectivity_check(bound: i64) -> bool {
    let mut domains = std::collections::HashSet::new();
    for r in 0..=bound {
        for s in 0..=bound - r {
            if r + s == 0 {
                continue;
            }
            if !domains.insert(idempotent_formula(r, s).domain) {
                return false;
            }
        }
    }
    true
}

/// Brute-force comparison of `compose` against pointwise evaluation on
/// random points of `[-20,20] × [0,20]`. Returns the first disagreeing point.
pub fn sample_compose(f: &VMap, g: &VMap, probes: usize, seed: u64) -> Result<(), (i64, i64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fg = f.compose(g);
    for _ in 0..probes {
        let p = (rng.gen_range(-20..=20), rng.gen_range(0..=20));
        if fg.apply(p) != f.apply(p).and_then(|q| g.apply(q)) {
            return Err(p);
        }
    }
    Ok(())
}

pub fn sample_intersect(a: VSet, b: VSet, probes: usize, seed: u64) -> Result<(), (i64, i64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = v_intersect(a, b);
    for _ in 0..probes {
        let p = (rng.gen_range(-20..=20), rng.gen_range(0..=20));
        if m.contains(p) != (a.contains(p) && b.contains(p)) {
            return Err(p);
        }
    }
    Ok(())
}

pub fn sample_translate(a: VSet, d: (i64, i64), probes: usize, seed: u64) -> Result<(), (i64, i64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let Ok(t) = translate(a, d) else { return Ok(()) };
    for _ in 0..probes {
        let p = (rng.gen_range(-20..=20), rng.gen_range(0..=20));
        if t.contains(p) != a.contains((p.0 - d.0, p.1 - d.1)) {
            return Err(p);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersections() {
        assert_eq!(v_intersect(VSet::v(0, 0), VSet::v(0, 1)), VSet::v(1, 1));
        assert_eq!(v_intersect(VSet::v(3, 2), VSet::Whole), VSet::v(3, 2));
        assert_eq!(v_intersect(VSet::v(2, 0), VSet::v(0, 0)), VSet::v(2, 0));
        assert!(sample_intersect(VSet::v(2, 0), VSet::v(0, 0), 2000, 1).is_ok());
    }

    #[test]
    fn translations() {
        assert_eq!(translate(VSet::v(1, 1), (0, -1)).unwrap(), VSet::v(1, 0));
        assert_eq!(translate(VSet::v(4, 2), (0, 0)).unwrap(), VSet::v(4, 2));
        assert_eq!(translate(VSet::v(0, 0), (0, -2)).unwrap(), VSet::v(2, 0));
        assert!(sample_translate(VSet::v(0, 0), (0, -2), 2000, 2).is_ok());
        assert!(translate(VSet::Whole, (0, 1)).is_err());
    }

    #[test]
    fn phi_squared() {
        let p2 = phi().compose(&phi());
        assert_eq!(p2.domain, VSet::v(1, 0));
        assert_eq!(p2.image(), VSet::v(1, 2));
        assert_eq!(phi().invert().domain, VSet::v(0, 1));
        assert_eq!(phi().compose(&VMap::identity_on(VSet::Whole)), phi());
        assert_eq!(phi().invert().invert(), phi());
    }

    #[test]
    fn phi_powers() {
        for n in 0..=10 {
            let p = phi_pow(n);
            assert_eq!(p.domain, VSet::v(n - 1, 0));
            assert_eq!(p.image(), VSet::v(n - 1, n));
            assert_eq!(phi_pow(-n).compose(&p), VMap::identity_on(VSet::v(n - 1, n)));
        }
    }

    #[test]
    fn idempotent_examples() {
        assert_eq!(idempotent_formula(1, 1), VMap::identity_on(VSet::v(1, 1)));
        assert_eq!(idempotent_formula_psi(-3, 2), VMap::identity_on(VSet::v(-3, 2)));
    }

    #[test]
    fn chains() {
        for (r, s) in [(0, 0), (2, 3), (-5, 1)] {
            let j = j_chain(r, s);
            assert_eq!(j.domain, VSet::v(r, s));
            assert_eq!(j.image(), VSet::v(0, 0));
        }
    }

    #[test]
    fn injectivity() {
        assert!(fis_injectivity_check(6));
        assert!(fis_injectivity_check(1));
        assert_ne!(idempotent_formula(1, 0).domain, idempotent_formula(0, 1).domain);
    }

    #[test]
    fn rejects_maps_leaving_x() {
        assert!(VMap::new(VSet::v(0, 0), (0, -1)).is_err());
        assert!(VMap::new(VSet::Whole, (0, 1)).is_err());
        assert!(VMap::new(VSet::Whole, (3, 0)).is_ok());
    }

    #[test]
    fn small_balls() {
        let t = generate_ball(&[phi()], 6).unwrap();
        for e in t.elements.iter().filter(|m| m.is_idempotent()) {
            let VSet::V { r: dr, s: ds } = e.domain else { panic!("{e}") };
            // id|V(r+s−1, r) with r+s ≥ 1
            let (r, s) = (ds, dr + 1 - ds);
            assert!(r >= 0 && s >= 0 && r + s >= 1, "{e}");
            assert_eq!(idempotent_formula(r, s), *e);
        }
        let s = generate_ball(&[phi(), psi()], 6).unwrap();
        assert!(s.elements.iter().all(|m| s.elements.contains(&m.invert())));
        assert!(s.elements.iter().filter(|m| m.is_idempotent()).all(|m| m.domain != VSet::Empty));
    }
}
