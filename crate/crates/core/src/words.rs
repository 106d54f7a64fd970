//! Alphabets, signed letters and words over `A ∪ A⁻¹`.
//!
//! Letters are small integer ids into an [`Alphabet`]; a [`Word`] is a plain
//! sequence of [`SignedLetter`]s and carries no names, so printing and parsing
//! always go through an alphabet.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Index of a letter in its alphabet.
pub type Letter = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedLetter {
    pub letter: Letter,
    pub inverse: bool,
}

impl SignedLetter {
    pub const fn pos(letter: Letter) -> Self {
        SignedLetter { letter, inverse: false }
    }

    pub const fn neg(letter: Letter) -> Self {
        SignedLetter { letter, inverse: true }
    }

    pub const fn inv(self) -> Self {
        SignedLetter { letter: self.letter, inverse: !self.inverse }
    }

    /// Total order used by canonical forms: by letter id, positive first.
    pub fn rank(self) -> u32 {
        self.letter * 2 + self.inverse as u32
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at offset {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError { pos, message: message.into() }
    }
}

/// A set of named letters.
///
/// An open alphabet interns new names as they are parsed; a sealed one only
/// accepts its declared names and splits juxtaposed identifiers against them
/// by longest match.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Letter>,
    sealed: bool,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn sealed<S: AsRef<str>>(names: &[S]) -> Self {
        let mut alphabet = Alphabet::new();
        for name in names {
            alphabet.intern(name.as_ref());
        }
        alphabet.sealed = true;
        alphabet
    }

    pub fn is_sealed(&self) -> bool {
        self.sealed
    }

    pub fn seal(&mut self) {
        self.sealed = true;
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lookup(&self, name: &str) -> Option<Letter> {
        self.index.get(name).copied()
    }

    /// Returns the id of `name`, adding it if absent (even when sealed).
    pub fn intern(&mut self, name: &str) -> Letter {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = self.names.len() as Letter;
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    /// Splits an identifier into letters.
    fn split_identifier(&mut self, ident: &str, pos: usize) -> Result<Vec<Letter>, ParseError> {
        if self.sealed {
            if let Some(id) = self.lookup(ident) {
                return Ok(vec![id]);
            }
            let mut out = Vec::new();
            let mut rest = ident;
            let mut offset = pos;
            while !rest.is_empty() {
                let best = (1..=rest.len())
                    .rev()
                    .find(|&k| rest.is_char_boundary(k) && self.index.contains_key(&rest[..k]));
                match best {
                    Some(k) => {
                        out.push(self.index[&rest[..k]]);
                        rest = &rest[k..];
                        offset += k;
                    }
                    None => {
                        return Err(ParseError::new(
                            offset,
                            format!("unknown letter in `{ident}`"),
                        ))
                    }
                }
            }
            Ok(out)
        } else {
            // letter names are [a-z][0-9]*
            let bytes = ident.as_bytes();
            let mut out = Vec::new();
            let mut i = 0;
            while i < bytes.len() {
                let start = i;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(self.intern(&ident[start..i]));
            }
            Ok(out)
        }
    }
}

/// A finite sequence of signed letters. May be empty (the monoid identity);
/// semigroup contexts reject empty words at their own boundary.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<SignedLetter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = SignedLetter>) -> Self {
        Word(letters.into_iter().collect())
    }

    /// `letter^exp`, where a negative exponent means the inverse letter.
    pub fn power(letter: Letter, exp: i64) -> Self {
        let sl = if exp < 0 { SignedLetter::neg(letter) } else { SignedLetter::pos(letter) };
        Word(vec![sl; exp.unsigned_abs() as usize])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[SignedLetter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> DisplayWord<'a> {
        DisplayWord { word: self, alphabet }
    }
}

impl FromIterator<SignedLetter> for Word {
    fn from_iter<I: IntoIterator<Item = SignedLetter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Formal inverse: reverse the word and flip every sign.
pub fn invert_word(w: &Word) -> Word {
    w.0.iter().rev().map(|l| l.inv()).collect()
}

/// Free reduction: deletes factors `xx⁻¹` until none remain.
pub fn reduce(w: &Word) -> Word {
    let mut stack: Vec<SignedLetter> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        if stack.last() == Some(&l.inv()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    Word(stack)
}

pub struct DisplayWord<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        let letters = &self.word.0;
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let mut j = i + 1;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let run = (j - i) as i64;
            let exp = if letters[i].inverse { -run } else { run };
            f.write_str(self.alphabet.name(letters[i].letter))?;
            if exp != 1 {
                write!(f, "^{exp}")?;
            }
            i = j;
        }
        Ok(())
    }
}

/// Parses a word in the text grammar: identifiers, `x^-1`, `x^3`, `x^-3`,
/// parenthesised groups with exponents, and `1` for the empty word.
pub fn parse_word(text: &str, alphabet: &mut Alphabet) -> Result<Word, ParseError> {
    let mut parser = WordParser { src: text.as_bytes(), text, pos: 0, alphabet };
    let word = parser.sequence()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(ParseError::new(parser.pos, "unexpected character"));
    }
    Ok(word)
}

struct WordParser<'a, 'b> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
    alphabet: &'b mut Alphabet,
}

impl WordParser<'_, '_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn sequence(&mut self) -> Result<Word, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'a'..=b'z') => {
                    let start = self.pos;
                    while matches!(self.peek(), Some(b'a'..=b'z' | b'0'..=b'9')) {
                        self.pos += 1;
                    }
                    let ident = &self.text[start..self.pos];
                    let letters = self.alphabet.split_identifier(ident, start)?;
                    let (last, init) = letters.split_last().expect("identifier is nonempty");
                    out.extend(init.iter().map(|&l| SignedLetter::pos(l)));
                    let unit = Word(vec![SignedLetter::pos(*last)]);
                    out.extend(self.exponent(unit)?.0);
                }
                Some(b'(') => {
                    let open = self.pos;
                    self.pos += 1;
                    let inner = self.sequence()?;
                    self.skip_ws();
                    if self.peek() != Some(b')') {
                        return Err(ParseError::new(open, "unclosed parenthesis"));
                    }
                    self.pos += 1;
                    out.extend(self.exponent(inner)?.0);
                }
                // `1` is the identity and contributes nothing
                Some(b'1') => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        Ok(Word(out))
    }

    fn exponent(&mut self, unit: Word) -> Result<Word, ParseError> {
        if self.peek() != Some(b'^') {
            return Ok(unit);
        }
        let caret = self.pos;
        self.pos += 1;
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(caret, "expected an integer exponent"));
        }
        let n: usize = self.text[start..self.pos]
            .parse()
            .map_err(|_| ParseError::new(start, "exponent out of range"))?;
        if n == 0 {
            return Err(ParseError::new(start, "zero exponent is not a word"));
        }
        let base = if negative { invert_word(&unit) } else { unit };
        let mut out = Vec::with_capacity(base.len() * n);
        for _ in 0..n {
            out.extend_from_slice(&base.0);
        }
        Ok(Word(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, alphabet: &mut Alphabet) -> Word {
        parse_word(text, alphabet).unwrap()
    }

    #[test]
    fn invert_examples() {
        let mut a = Alphabet::new();
        assert_eq!(invert_word(&w("a", &mut a)), w("a^-1", &mut a));
        assert_eq!(invert_word(&w("a b^-1 c", &mut a)), w("c^-1 b a^-1", &mut a));
        assert_eq!(invert_word(&Word::empty()), Word::empty());
    }

    #[test]
    fn reduce_examples() {
        let mut a = Alphabet::new();
        assert!(reduce(&w("a a^-1", &mut a)).is_empty());
        assert_eq!(reduce(&w("a b b^-1 a", &mut a)), w("a a", &mut a));
        assert_eq!(reduce(&w("a b c", &mut a)), w("a b c", &mut a));
    }

    #[test]
    fn parse_examples() {
        let mut a = Alphabet::new();
        assert_eq!(w("a b^-1 a", &mut a).len(), 3);
        assert_eq!(w("a^3", &mut a), w("a a a", &mut a));
        assert_eq!(w("a^-2", &mut a), w("a^-1 a^-1", &mut a));
        assert_eq!(w("aba", &mut a), w("a b a", &mut a));
        assert_eq!(w("(a b)^-1", &mut a), w("b^-1 a^-1", &mut a));
        assert!(w("1", &mut a).is_empty());
    }

    #[test]
    fn parse_errors_carry_position() {
        let mut a = Alphabet::new();
        let err = parse_word("a ^", &mut a).unwrap_err();
        assert_eq!(err.pos, 2);
        let err = parse_word("a^x", &mut a).unwrap_err();
        assert_eq!(err.pos, 1);
        assert!(parse_word("(a b", &mut a).is_err());
        assert!(parse_word("a, b", &mut a).is_err());
    }

    #[test]
    fn sealed_alphabet_splits_by_longest_match() {
        let mut a = Alphabet::sealed(&["a", "ab", "c"]);
        let word = parse_word("abc a", &mut a).unwrap();
        assert_eq!(word.0, vec![SignedLetter::pos(1), SignedLetter::pos(2), SignedLetter::pos(0)]);
        assert!(parse_word("d", &mut a).is_err());
    }

    #[test]
    fn indexed_letters_stay_whole() {
        let mut a = Alphabet::new();
        let word = w("x1 x2^-1 x1", &mut a);
        assert_eq!(a.len(), 2);
        assert_eq!(word.display(&a).to_string(), "x1 x2^-1 x1");
    }

    #[test]
    fn printer_round_trip() {
        let mut a = Alphabet::new();
        let word = w("a a b^-1 b^-1 b^-1 a", &mut a);
        let printed = word.display(&a).to_string();
        assert_eq!(printed, "a^2 b^-3 a");
        assert_eq!(w(&printed, &mut a), word);
    }
}
