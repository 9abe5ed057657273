//! Free-group words over a generator alphabet and the re-association calculus
//! for quandle terms `x^w`.
//!
//! Words are always stored freely reduced. Every constructor funnels through
//! [`FreeWord::reduce`], so downstream code (relator scanning, coset tracing)
//! never sees an adjacent `g g^-1` pair.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed word token `{0}`")]
    BadToken(String),
    #[error("generator index {index} outside alphabet of size {size}")]
    AlphabetMismatch { index: u32, size: usize },
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
}

/// A named generator with a dense index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub id: String,
    pub index: u32,
}

/// A signed generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: u32, sign: i8) -> Letter {
        debug_assert!(sign == 1 || sign == -1);
        Letter { gen, inverse: sign < 0 }
    }

    pub fn pos(gen: u32) -> Letter {
        Letter { gen, inverse: false }
    }

    pub fn neg(gen: u32) -> Letter {
        Letter { gen, inverse: true }
    }

    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Letter {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    /// Column index in a table with two columns (`g`, `g^-1`) per generator.
    #[inline]
    pub fn column(self) -> usize {
        2 * self.gen as usize + self.inverse as usize
    }

    #[inline]
    pub fn from_column(col: usize) -> Letter {
        Letter { gen: (col / 2) as u32, inverse: col % 2 == 1 }
    }
}

/// A freely reduced word in signed generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> FreeWord {
        FreeWord::default()
    }

    pub fn letter(l: Letter) -> FreeWord {
        FreeWord { letters: vec![l] }
    }

    pub fn gen(g: u32) -> FreeWord {
        FreeWord::letter(Letter::pos(g))
    }

    /// Free reduction with a stack; the result is the unique reduced word.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> FreeWord {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            match stack.last() {
                Some(&top) if top == l.inv() => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        FreeWord { letters: stack }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        FreeWord::reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn invert(&self) -> FreeWord {
        FreeWord { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    /// `self^n` for `n >= 0`.
    pub fn power(&self, n: u32) -> FreeWord {
        FreeWord::reduce((0..n).flat_map(|_| self.letters.iter().copied()))
    }

    /// `w^-1 x w`.
    pub fn conjugate_by(&self, w: &FreeWord) -> FreeWord {
        FreeWord::reduce(
            w.invert()
                .letters
                .iter()
                .chain(self.letters.iter())
                .chain(w.letters.iter())
                .copied(),
        )
    }

    /// Cyclically reduced form: strips matching inverse pairs from both ends.
    pub fn cyclically_reduced(&self) -> FreeWord {
        let l = &self.letters;
        let (mut i, mut j) = (0usize, l.len());
        while j - i >= 2 && l[i] == l[j - 1].inv() {
            i += 1;
            j -= 1;
        }
        FreeWord { letters: l[i..j].to_vec() }
    }

    pub fn max_generator(&self) -> Option<u32> {
        self.letters.iter().map(|l| l.gen).max()
    }
}

impl FromIterator<Letter> for FreeWord {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        FreeWord::reduce(iter)
    }
}

/// Base generator raised to a word: the element `x^w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuandleTerm {
    pub base: u32,
    pub exponent: FreeWord,
}

impl QuandleTerm {
    pub fn new(base: u32, exponent: FreeWord) -> QuandleTerm {
        QuandleTerm { base, exponent }
    }

    pub fn generator(base: u32) -> QuandleTerm {
        QuandleTerm { base, exponent: FreeWord::identity() }
    }

    /// `(x^u) ▷^{±1} (y^v) = x^{u v̄ y^{±1} v}`.
    pub fn left_associate(&self, s: &QuandleTerm, sign: i8) -> QuandleTerm {
        let v = &s.exponent;
        let v_inv = v.invert();
        let letters = self
            .exponent
            .letters()
            .iter()
            .copied()
            .chain(v_inv.letters().iter().copied())
            .chain(std::iter::once(Letter::new(s.base, sign)))
            .chain(v.letters().iter().copied());
        QuandleTerm { base: self.base, exponent: FreeWord::reduce(letters) }
    }

    /// The group element `w^-1 x w` this term maps to under conjugation.
    pub fn as_group_element(&self) -> FreeWord {
        FreeWord::gen(self.base).conjugate_by(&self.exponent)
    }
}

/// Generator names with their dense indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    gens: Vec<Generator>,
    by_name: HashMap<String, u32>,
}

impl Alphabet {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(names: I) -> Result<Alphabet, WordError> {
        let mut a = Alphabet::default();
        for name in names {
            a.push(name.into())?;
        }
        Ok(a)
    }

    pub fn push(&mut self, id: String) -> Result<u32, WordError> {
        if self.by_name.contains_key(&id) {
            return Err(WordError::DuplicateGenerator(id));
        }
        let index = self.gens.len() as u32;
        self.by_name.insert(id.clone(), index);
        self.gens.push(Generator { id, index });
        Ok(index)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn name(&self, index: u32) -> &str {
        &self.gens[index as usize].id
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.by_name.get(name).copied()
    }

    pub fn check(&self, w: &FreeWord) -> Result<(), WordError> {
        match w.max_generator() {
            Some(g) if g as usize >= self.len() => {
                Err(WordError::AlphabetMismatch { index: g, size: self.len() })
            }
            _ => Ok(()),
        }
    }

    /// Concatenation that rejects letters outside this alphabet.
    pub fn concat(&self, u: &FreeWord, v: &FreeWord) -> Result<FreeWord, WordError> {
        self.check(u)?;
        self.check(v)?;
        Ok(u.concat(v))
    }

    pub fn render_letter(&self, l: Letter) -> String {
        if l.inverse {
            format!("{}^-1", self.name(l.gen))
        } else {
            self.name(l.gen).to_string()
        }
    }

    /// Space-separated tokens, `^-1` for inverses, `1` for the empty word.
    pub fn render(&self, w: &FreeWord) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters().iter().map(|&l| self.render_letter(l)).collect::<Vec<_>>().join(" ")
    }

    pub fn render_term(&self, t: &QuandleTerm) -> String {
        let base = self.name(t.base);
        match t.exponent.letters() {
            [] => base.to_string(),
            [l] if !l.inverse => format!("{}^{}", base, self.name(l.gen)),
            _ => format!("{}^({})", base, self.render(&t.exponent)),
        }
    }

    /// Inverse of [`Alphabet::render`]. Tokens may also be written `x^1`.
    pub fn parse_word(&self, text: &str) -> Result<FreeWord, WordError> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, inverse) = match tok.split_once('^') {
                None => (tok, false),
                Some((n, "-1")) => (n, true),
                Some((n, "1")) => (n, false),
                Some(_) => return Err(WordError::BadToken(tok.to_string())),
            };
            if name.is_empty() {
                return Err(WordError::BadToken(tok.to_string()));
            }
            let gen = self
                .index_of(name)
                .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
            letters.push(Letter { gen, inverse });
        }
        Ok(FreeWord::reduce(letters))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "g{}", l.gen)?;
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}
