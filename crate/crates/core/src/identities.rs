//! Terms over a binary operation and a unary `′`, identity checking by
//! substitution, and a catalogue of named identities.
//!
//! Grammar: variables are `[a-z][0-9]*` and juxtaposed terms multiply.
//! Postfixes bind tighter than juxtaposition: `'` (unary), `^0` (the
//! derived idempotent `t·t′`), `^n` for `n ≥ 1`, and `^-n` for `(t′)ⁿ`.
//! A bare `0` is the zero constant. An identity is `lhs = rhs`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::engine::FiniteSemigroup;
use crate::zoo::{p_green, p_mult, p_unary};
use crate::engine::Green;

pub const MAX_EVALUATIONS: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentityError {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("the structure has no unary operation, needed by {0}")]
    NoUnary(String),
    #[error("{0} uses the derived idempotent, which needs a completely regular structure")]
    NotCompletelyRegular(String),
    #[error("the structure has no zero, needed by {0}")]
    NoZero(String),
    #[error("variable {0} is unassigned")]
    Unassigned(String),
    #[error("{required} evaluations exceed the bound of {MAX_EVALUATIONS}")]
    TooLarge { required: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Zero,
    Product(Vec<Term>),
    Inverse(Box<Term>),
    Idempotent(Box<Term>),
    Power(Box<Term>, i64),
}

impl Term {
    fn is_atomic(&self) -> bool {
        !matches!(self, Term::Product(_))
    }

    /// Variables in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Zero => {}
            Term::Product(ts) => ts.iter().for_each(|t| t.collect_vars(out)),
            Term::Inverse(t) | Term::Idempotent(t) | Term::Power(t, _) => t.collect_vars(out),
        }
    }

    fn uses(&self, pred: &dyn Fn(&Term) -> bool) -> bool {
        pred(self)
            || match self {
                Term::Product(ts) => ts.iter().any(|t| t.uses(pred)),
                Term::Inverse(t) | Term::Idempotent(t) | Term::Power(t, _) => t.uses(pred),
                _ => false,
            }
    }

    pub fn uses_unary(&self) -> bool {
        self.uses(&|t| matches!(t, Term::Inverse(_) | Term::Idempotent(_) | Term::Power(_, i64::MIN..=-1)))
    }

    pub fn uses_idempotent(&self) -> bool {
        self.uses(&|t| matches!(t, Term::Idempotent(_)))
    }

    pub fn uses_zero(&self) -> bool {
        self.uses(&|t| matches!(t, Term::Zero))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atom = |f: &mut fmt::Formatter<'_>, t: &Term| {
            if t.is_atomic() {
                write!(f, "{t}")
            } else {
                write!(f, "({t})")
            }
        };
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Zero => f.write_str("0"),
            Term::Product(ts) => ts.iter().try_for_each(|t| match t {
                // a nested product must keep its own grouping
                Term::Product(_) => write!(f, "({t})"),
                _ => write!(f, "{t}"),
            }),
            Term::Inverse(t) => {
                atom(f, t)?;
                f.write_str("'")
            }
            Term::Idempotent(t) => {
                atom(f, t)?;
                f.write_str("^0")
            }
            Term::Power(t, n) => {
                atom(f, t)?;
                write!(f, "^{n}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
    pub name: Option<String>,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl Identity {
    pub fn parse(text: &str) -> Result<Identity, IdentityError> {
        let Some(eq) = text.find('=') else {
            return Err(IdentityError::Parse { position: text.len(), message: "expected `lhs = rhs`".into() });
        };
        if text[eq + 1..].contains('=') {
            return Err(IdentityError::Parse { position: eq + 1 + text[eq + 1..].find('=').unwrap(), message: "more than one `=`".into() });
        }
        let lhs = parse_term_at(&text[..eq], 0)?;
        let rhs = parse_term_at(&text[eq + 1..], eq + 1)?;
        Ok(Identity { lhs, rhs, name: None })
    }

    pub fn named(text: &str, name: &str) -> Identity {
        let mut id = Identity::parse(text).expect("catalogue entries parse");
        id.name = Some(name.to_string());
        id
    }

    /// Variables of both sides, lhs first.
    pub fn variables(&self) -> Vec<String> {
        let mut vs = self.lhs.variables();
        for v in self.rhs.variables() {
            if !vs.contains(&v) {
                vs.push(v);
            }
        }
        vs
    }

    fn uses(&self, f: fn(&Term) -> bool) -> bool {
        f(&self.lhs) || f(&self.rhs)
    }
}

pub fn parse_term(text: &str) -> Result<Term, IdentityError> {
    parse_term_at(text, 0)
}

fn parse_term_at(text: &str, offset: usize) -> Result<Term, IdentityError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, offset };
    let t = p.product()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.err("unexpected character"));
    }
    Ok(t)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    offset: usize,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> IdentityError {
        IdentityError::Parse { position: self.offset + self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn product(&mut self) -> Result<Term, IdentityError> {
        let mut factors = Vec::new();
        while let Some(c) = self.peek() {
            if c == b')' {
                break;
            }
            factors.push(self.factor()?);
        }
        match factors.len() {
            0 => Err(self.err("empty term")),
            1 => Ok(factors.pop().unwrap()),
            _ => Ok(Term::Product(factors)),
        }
    }

    fn factor(&mut self) -> Result<Term, IdentityError> {
        let mut t = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.product()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("missing `)`"));
                }
                self.pos += 1;
                inner
            }
            Some(b'0') => {
                self.pos += 1;
                Term::Zero
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                Term::Var(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
            }
            _ => return Err(self.err("expected a variable, `0` or `(`")),
        };
        loop {
            match self.s.get(self.pos) {
                Some(b'\'') => {
                    self.pos += 1;
                    t = Term::Inverse(Box::new(t));
                }
                Some(b'^') => {
                    self.pos += 1;
                    let start = self.pos;
                    if self.s.get(self.pos) == Some(&b'-') {
                        self.pos += 1;
                    }
                    while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let n: i64 = std::str::from_utf8(&self.s[start..self.pos])
                        .ok()
                        .and_then(|d| d.parse().ok())
                        .ok_or_else(|| self.err("expected an exponent"))?;
                    t = match n {
                        0 => Term::Idempotent(Box::new(t)),
                        -1 => Term::Inverse(Box::new(t)),
                        n => Term::Power(Box::new(t), n),
                    };
                }
                _ => return Ok(t),
            }
        }
    }
}

/// What substitution needs from a structure.
pub trait Structure {
    type Elem: Copy + Eq + fmt::Debug;

    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn unary(&self, a: Self::Elem) -> Option<Self::Elem>;
    fn zero(&self) -> Option<Self::Elem>;
    fn completely_regular(&self) -> bool;
    fn show(&self, a: Self::Elem) -> String;
}

impl Structure for FiniteSemigroup {
    type Elem = usize;

    fn mul(&self, a: usize, b: usize) -> usize {
        FiniteSemigroup::mul(self, a, b)
    }

    fn unary(&self, a: usize) -> Option<usize> {
        FiniteSemigroup::unary(self, a)
    }

    fn zero(&self) -> Option<usize> {
        FiniteSemigroup::zero(self)
    }

    fn completely_regular(&self) -> bool {
        self.is_completely_regular()
    }

    fn show(&self, a: usize) -> String {
        self.label(a).to_string()
    }
}

/// `P = (ℤ, ∘)` as an evaluation oracle. It is completely regular.
#[derive(Clone, Copy, Debug, Default)]
pub struct PStructure;

impl Structure for PStructure {
    type Elem = i64;

    fn mul(&self, a: i64, b: i64) -> i64 {
        p_mult(a, b)
    }

    fn unary(&self, a: i64) -> Option<i64> {
        Some(p_unary(a))
    }

    fn zero(&self) -> Option<i64> {
        None
    }

    fn completely_regular(&self) -> bool {
        true
    }

    fn show(&self, a: i64) -> String {
        a.to_string()
    }
}

fn check_applicable<S: Structure>(s: &S, t: &Term) -> Result<(), IdentityError> {
    if t.uses_idempotent() && !s.completely_regular() {
        return Err(IdentityError::NotCompletelyRegular(t.to_string()));
    }
    Ok(())
}

pub fn eval<S: Structure>(s: &S, t: &Term, assignment: &dyn Fn(&str) -> Option<S::Elem>) -> Result<S::Elem, IdentityError> {
    check_applicable(s, t)?;
    eval_inner(s, t, assignment)
}

fn eval_inner<S: Structure>(s: &S, t: &Term, asg: &dyn Fn(&str) -> Option<S::Elem>) -> Result<S::Elem, IdentityError> {
    let inv = |x: S::Elem| s.unary(x).ok_or_else(|| IdentityError::NoUnary(t.to_string()));
    Ok(match t {
        Term::Var(v) => asg(v).ok_or_else(|| IdentityError::Unassigned(v.clone()))?,
        Term::Zero => s.zero().ok_or_else(|| IdentityError::NoZero(t.to_string()))?,
        Term::Product(ts) => {
            let mut acc = eval_inner(s, &ts[0], asg)?;
            for u in &ts[1..] {
                acc = s.mul(acc, eval_inner(s, u, asg)?);
            }
            acc
        }
        Term::Inverse(u) => inv(eval_inner(s, u, asg)?)?,
        Term::Idempotent(u) => {
            let x = eval_inner(s, u, asg)?;
            s.mul(x, inv(x)?)
        }
        Term::Power(u, n) => {
            let x = eval_inner(s, u, asg)?;
            let base = if *n < 0 { inv(x)? } else { x };
            (1..n.unsigned_abs()).fold(base, |acc, _| s.mul(acc, base))
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub assignment: Vec<(String, String)>,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.assignment.iter().map(|(v, e)| format!("{v}={e}")).collect();
        write!(f, "{} gives {} ≠ {}", parts.join(", "), self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Holds,
    Fails(Counterexample),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

/// Every assignment from `domain`, the first variable most significant.
fn check_on<S: Structure>(s: &S, domain: &[S::Elem], id: &Identity) -> Result<Verdict, IdentityError> {
    check_applicable(s, &id.lhs)?;
    check_applicable(s, &id.rhs)?;
    if domain.is_empty() {
        return Ok(Verdict::Holds);
    }
    let vars = id.variables();
    let required = (domain.len() as u64).checked_pow(vars.len() as u32).unwrap_or(u64::MAX);
    if required > MAX_EVALUATIONS {
        return Err(IdentityError::TooLarge { required });
    }
    let mut digits = vec![0usize; vars.len()];
    loop {
        let lookup = |name: &str| vars.iter().position(|v| v == name).map(|i| domain[digits[i]]);
        let l = eval_inner(s, &id.lhs, &lookup)?;
        let r = eval_inner(s, &id.rhs, &lookup)?;
        if l != r {
            return Ok(Verdict::Fails(Counterexample {
                assignment: vars.iter().zip(&digits).map(|(v, &d)| (v.clone(), s.show(domain[d]))).collect(),
                lhs: s.show(l),
                rhs: s.show(r),
            }));
        }
        let mut i = vars.len();
        loop {
            if i == 0 {
                return Ok(Verdict::Holds);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < domain.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

pub fn check_identity_exhaustive(fs: &FiniteSemigroup, id: &Identity) -> Result<Verdict, IdentityError> {
    let all: Vec<usize> = (0..fs.len()).collect();
    check_on(fs, &all, id)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowVerdict {
    pub window: (i64, i64),
    pub verdict: Verdict,
}

impl fmt::Display for WindowVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::Holds => write!(f, "holds on [{}, {}] (window-verified, not certified)", self.window.0, self.window.1),
            Verdict::Fails(c) => write!(f, "fails: {c}"),
        }
    }
}

/// Exhaustive over `[lo, hi]^vars` for an integer-valued oracle.
pub fn check_identity_window<S: Structure<Elem = i64>>(
    s: &S,
    id: &Identity,
    (lo, hi): (i64, i64),
) -> Result<WindowVerdict, IdentityError> {
    let domain: Vec<i64> = (lo..=hi).collect();
    Ok(WindowVerdict { window: (lo, hi), verdict: check_on(s, &domain, id)? })
}

/// First `(a, b, c)` in `[0, bound]` with `a R b` but not `ac R bc` in `P`.
pub fn p_r_congruence_probe(bound: i64) -> Option<(i64, i64, i64)> {
    for a in 0..=bound {
        for b in a + 1..=bound {
            if !p_green(a, b, Green::R) {
                continue;
            }
            for c in 0..=bound {
                if !p_green(p_mult(a, c), p_mult(b, c), Green::R) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

pub type Catalogue = BTreeMap<String, Vec<Identity>>;

pub fn c_m(m: u32) -> Identity {
    Identity::named(&format!("x^{m} = x^{}", m + 1), &format!("C_{m}"))
}

pub fn burnside(m: u32, n: u32) -> Identity {
    Identity::named(&format!("x^{m} = x^{}", m + n), &format!("B_{m},{n}"))
}

pub fn nil(n: u32) -> Identity {
    Identity::named(&format!("x^{n} = 0"), &format!("nil_{n}"))
}

pub fn power_in_group(n: u32) -> Identity {
    Identity::named(&format!("x^{n}x^-{n} = x^-{n}x^{n}"), &format!("x^{n} in G"))
}

/// Entries other than `I` list only what is added to the `I` axioms.
pub fn catalogue() -> Catalogue {
    let entry = |name: &str, ids: &[&str]| {
        (name.to_string(), ids.iter().map(|t| Identity::named(t, name)).collect::<Vec<_>>())
    };
    let mut cat: Catalogue = [
        entry("I", &["x(yz) = (xy)z", "x'' = x", "xx'x = x"]),
        entry("CR", &["xx' = x'x"]),
        entry("inverse", &["xx'yy' = yy'xx'"]),
        entry("inverse-alt", &["(xy)' = y'x'", "xx'x'x = x'xxx'"]),
        entry("SI", &["xx'x'x = x'xxx'", "(xyx')(xyx')' = (xyx')'(xyx')", "x(yz)'w = xz'y'w", "(xy)' = (x'xy)'(xyy')'"]),
        entry("ROL*", &["x(y^0z)^0x = xy^0x^0z^0x"]),
    ]
    .into_iter()
    .collect();
    for m in 1..=3 {
        let id = c_m(m);
        cat.insert(id.name.clone().unwrap(), vec![id]);
    }
    for (m, n) in [(1, 1), (2, 2)] {
        let id = burnside(m, n);
        cat.insert(id.name.clone().unwrap(), vec![id]);
    }
    for n in 1..=2 {
        let id = power_in_group(n);
        cat.insert(id.name.clone().unwrap(), vec![id]);
    }
    for n in 2..=3 {
        let id = nil(n);
        cat.insert(id.name.clone().unwrap(), vec![id]);
    }
    cat
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EntryStatus {
    Satisfied,
    Fails { identity: String, counterexample: Counterexample },
    NotApplicable(String),
}

pub type Classification = BTreeMap<String, EntryStatus>;

/// Every catalogue entry checked exhaustively, one thread per entry.
pub fn classify(fs: &FiniteSemigroup) -> Classification {
    let cat = catalogue();
    std::thread::scope(|scope| {
        let handles: Vec<_> = cat
            .iter()
            .map(|(name, ids)| (name.clone(), scope.spawn(move || entry_status(fs, ids))))
            .collect();
        handles.into_iter().map(|(n, h)| (n, h.join().expect("classification thread"))).collect()
    })
}

fn entry_status(fs: &FiniteSemigroup, ids: &[Identity]) -> EntryStatus {
    for id in ids {
        if id.uses(Term::uses_unary) && !fs.has_unary() {
            return EntryStatus::NotApplicable("no unary operation".into());
        }
        if id.uses(Term::uses_zero) && fs.zero().is_none() {
            return EntryStatus::NotApplicable("no zero".into());
        }
        match check_identity_exhaustive(fs, id) {
            Ok(Verdict::Holds) => {}
            Ok(Verdict::Fails(c)) => return EntryStatus::Fails { identity: id.to_string(), counterexample: c },
            Err(e) => return EntryStatus::NotApplicable(e.to_string()),
        }
    }
    EntryStatus::Satisfied
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{b2, left_zero, sw_semigroup};

    #[test]
    fn parse_and_show() {
        for text in ["x(yz) = (xy)z", "x'' = x", "x(y^0z)^0x = xy^0x^0z^0x", "x^2 = 0", "(xy)' = (x'xy)'(xyy')'", "x^2x^-2 = x^-2x^2"] {
            let id = Identity::parse(text).unwrap();
            assert_eq!(id.to_string(), text);
            assert_eq!(Identity::parse(&id.to_string()).unwrap(), id);
        }
        assert_eq!(parse_term("x^-1").unwrap(), parse_term("x'").unwrap());
        assert!(Identity::parse("xy").is_err());
        assert!(Identity::parse("x = (y").is_err());
        assert!(Identity::parse("x = y = z").is_err());
    }

    #[test]
    fn p_idempotents() {
        let t = parse_term("x^0").unwrap();
        assert_eq!(eval(&PStructure, &t, &|_| Some(4)).unwrap(), 0);
        assert_eq!(eval(&PStructure, &t, &|_| Some(5)).unwrap(), 5);
        assert_eq!(eval(&PStructure, &t, &|_| Some(-6)).unwrap(), 0);
    }

    #[test]
    fn left_zero_counterexample() {
        let lz = left_zero(2).unwrap();
        let id = Identity::parse("xx'yy' = yy'xx'").unwrap();
        let Verdict::Fails(c) = check_identity_exhaustive(&lz, &id).unwrap() else { panic!() };
        assert_eq!(c.assignment, vec![("x".into(), "l0".into()), ("y".into(), "l1".into())]);
        assert_eq!((c.lhs.as_str(), c.rhs.as_str()), ("l0", "l1"));
    }

    #[test]
    fn refusals() {
        let sw = sw_semigroup(2).unwrap();
        let e = check_identity_exhaustive(&sw, &Identity::parse("xx' = x'x").unwrap()).unwrap_err();
        assert!(matches!(e, IdentityError::NoUnary(_)));
        let e = check_identity_exhaustive(&b2(), &Identity::parse("x^0 = x'^0").unwrap()).unwrap_err();
        assert!(matches!(e, IdentityError::NotCompletelyRegular(_)));
        let e = check_identity_exhaustive(&left_zero(3).unwrap(), &Identity::parse("x^2 = 0").unwrap()).unwrap_err();
        assert!(matches!(e, IdentityError::NoZero(_)));
    }

    #[test]
    fn catalogue_shape() {
        let cat = catalogue();
        assert_eq!(cat["inverse"].len(), 1);
        assert_eq!(cat["SI"].len(), 4);
        assert_eq!(cat["C_2"][0].to_string(), "x^2 = x^3");
        for ids in cat.values() {
            for id in ids {
                assert_eq!(Identity::parse(&id.to_string()).unwrap().to_string(), id.to_string());
            }
        }
    }

    #[test]
    fn r_probe() {
        assert_eq!(p_r_congruence_probe(15), Some((0, 2, 1)));
    }
}
