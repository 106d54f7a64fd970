use serde::Serialize;

use crate::engine::{ElementOracle, Green};

/// Element `(m, n)` of the bicyclic monoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Bicyclic {
    pub m: u64,
    pub n: u64,
}

impl Bicyclic {
    pub const ONE: Bicyclic = Bicyclic { m: 0, n: 0 };

    pub const fn new(m: u64, n: u64) -> Self {
        Bicyclic { m, n }
    }
}

impl std::fmt::Display for Bicyclic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

pub fn bicyclic_mult(x: Bicyclic, y: Bicyclic) -> Bicyclic {
    let k = x.n.max(y.m);
    Bicyclic { m: x.m + k - x.n, n: y.n + k - y.m }
}

pub fn bicyclic_green(x: Bicyclic, y: Bicyclic, rel: Green) -> bool {
    match rel {
        Green::L => x.n == y.n,
        Green::R => x.m == y.m,
        Green::H => x == y,
        Green::D | Green::J => true,
    }
}

pub struct BicyclicOracle;

impl BicyclicOracle {
    pub fn generators() -> Vec<Bicyclic> {
        vec![Bicyclic::new(1, 0), Bicyclic::new(0, 1)]
    }
}

impl ElementOracle for BicyclicOracle {
    type Element = Bicyclic;
    type Key = Bicyclic;

    fn multiply(&self, a: &Bicyclic, b: &Bicyclic) -> Bicyclic {
        bicyclic_mult(*a, *b)
    }

    fn key(&self, e: &Bicyclic) -> Bicyclic {
        *e
    }

    fn label(&self, e: &Bicyclic) -> String {
        e.to_string()
    }

    fn unary(&self, e: &Bicyclic) -> Option<Bicyclic> {
        Some(Bicyclic::new(e.n, e.m))
    }
}

/// Explicit evidence that `x D (0,0)`: `x L c` via `x = s·c`, `c = t·x`,
/// and `c R 1` via `1 = c·v` (while `c = 1·c`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DWitness {
    pub x: Bicyclic,
    pub c: Bicyclic,
    pub s: Bicyclic,
    pub t: Bicyclic,
    pub v: Bicyclic,
}

pub fn bicyclic_d_witness(x: Bicyclic) -> DWitness {
    DWitness {
        x,
        c: Bicyclic::new(0, x.n),
        s: Bicyclic::new(x.m, 0),
        t: Bicyclic::new(0, x.m),
        v: Bicyclic::new(x.n, 0),
    }
}

impl DWitness {
    pub fn verify(&self) -> bool {
        let mul = bicyclic_mult;
        mul(self.s, self.c) == self.x
            && mul(self.t, self.x) == self.c
            && mul(self.c, self.v) == Bicyclic::ONE
            && mul(Bicyclic::ONE, self.c) == self.c
    }
}

/// Multiplication of `P = (ℤ, ∘)`.
pub fn p_mult(m: i64, n: i64) -> i64 {
    if m.rem_euclid(2) == 0 {
        m + n
    } else {
        m
    }
}

pub fn p_unary(m: i64) -> i64 {
    if m.rem_euclid(2) == 0 {
        -m
    } else {
        m
    }
}

pub fn p_green(x: i64, y: i64, rel: Green) -> bool {
    let (ex, ey) = (x.rem_euclid(2) == 0, y.rem_euclid(2) == 0);
    match rel {
        Green::L | Green::D | Green::J => ex == ey,
        Green::R | Green::H => (ex && ey) || x == y,
    }
}

pub struct POracle;

impl ElementOracle for POracle {
    type Element = i64;
    type Key = i64;

    fn multiply(&self, a: &i64, b: &i64) -> i64 {
        p_mult(*a, *b)
    }

    fn key(&self, e: &i64) -> i64 {
        *e
    }

    fn label(&self, e: &i64) -> String {
        e.to_string()
    }

    fn unary(&self, e: &i64) -> Option<i64> {
        Some(p_unary(*e))
    }
}

/// Elements of `Π_{p=1}^{k+1} N_p` as exponent vectors.
pub fn product_x_y(k: usize) -> (Vec<usize>, Vec<usize>) {
    let x = (1..=k + 1).map(|p| p.min(k)).collect();
    let y = (1..=k + 1).map(|p| p.min(k + 1)).collect();
    (x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bicyclic_products() {
        let x = Bicyclic::new(4, 7);
        assert_eq!(bicyclic_mult(x, Bicyclic::ONE), x);
        assert_eq!(bicyclic_mult(Bicyclic::new(2, 3), Bicyclic::new(1, 5)), Bicyclic::new(2, 7));
        assert_eq!(bicyclic_mult(Bicyclic::new(1, 0), Bicyclic::new(0, 1)), Bicyclic::new(1, 1));
    }

    #[test]
    fn bicyclic_closed_form() {
        let (a, b) = (Bicyclic::new(0, 3), Bicyclic::new(5, 3));
        assert!(bicyclic_green(a, b, Green::L));
        assert!(!bicyclic_green(a, b, Green::R));
        assert!(bicyclic_green(a, b, Green::D));
    }

    #[test]
    fn d_witnesses_verify() {
        for m in 0..10 {
            for n in 0..10 {
                assert!(bicyclic_d_witness(Bicyclic::new(m, n)).verify());
            }
        }
    }

    #[test]
    fn p_examples() {
        assert_eq!(p_mult(3, 10), 3);
        assert_eq!(p_mult(2, 5), 7);
        assert_eq!(p_mult(6, p_unary(6)), 0);
        assert!(p_green(1, 7, Green::L));
        assert!(!p_green(1, 7, Green::R));
        assert!(p_green(0, 4, Green::H));
        assert_eq!(p_mult(-3, 4), -3);
    }

    #[test]
    fn product_elements() {
        let (x, y) = product_x_y(3);
        assert_eq!(x, vec![1, 2, 3, 3]);
        assert_eq!(y, vec![1, 2, 3, 4]);
    }
}
