//! Free-group words and finite group presentations.
//!
//! Text format, one presentation per file:
//!
//! ```text
//! # genus two surface
//! gens: a1 b1 a2 b2
//! rels: (a1,b1)(a2,b2)
//! ```
//!
//! Relators are separated by `|` or newlines. A relator is a product of
//! factors `atom[^k]` where an atom is a generator name, a commutator
//! `(u,v)` (expanding to `u v u^-1 v^-1`) or a parenthesised word `(u)`.
//! `()` is the empty word.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// One syllable `x_gen^exp` of a word. `exp` is never zero in a normalized word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub exp: BigInt,
}

impl Letter {
    pub fn new(gen: usize, exp: impl Into<BigInt>) -> Self {
        Letter {
            gen,
            exp: exp.into(),
        }
    }
}

/// A freely reduced word in the free group, stored as syllables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn generator(gen: usize) -> Self {
        Word {
            letters: vec![Letter::new(gen, 1)],
        }
    }

    pub fn power_of_generator(gen: usize, exp: impl Into<BigInt>) -> Self {
        Word::from_letters([Letter::new(gen, exp)])
    }

    /// Normalizes an arbitrary syllable sequence: zero exponents vanish and
    /// adjacent syllables on the same generator merge.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            push_letter(&mut out, l);
        }
        Word { letters: out }
    }

    /// Convenience for tests and fixtures: `(generator, exponent)` pairs.
    pub fn from_pairs(pairs: &[(usize, i64)]) -> Self {
        Word::from_letters(pairs.iter().map(|&(g, e)| Letter::new(g, e)))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of syllables.
    pub fn syllable_len(&self) -> usize {
        self.letters.len()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    pub fn normalize(&self) -> Word {
        Word::from_letters(self.letters.iter().cloned())
    }

    pub fn is_normalized(&self) -> bool {
        self.letters.iter().all(|l| !l.exp.is_zero())
            && self.letters.windows(2).all(|w| w[0].gen != w[1].gen)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.letters.clone();
        for l in &other.letters {
            push_letter(&mut out, l.clone());
        }
        Word { letters: out }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter::new(l.gen, -&l.exp))
                .collect(),
        }
    }

    /// `g w g^-1`.
    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.concat(self).concat(&g.inverse())
    }

    /// `u v u^-1 v^-1`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// `w^m`, negative `m` allowed. Returns `None` if the expansion would need
    /// more than `usize::MAX` copies of a cyclically reduced core.
    pub fn pow(&self, m: &BigInt) -> Option<Word> {
        if m.is_zero() || self.is_empty() {
            return Some(Word::empty());
        }
        let base = if m.is_negative() {
            self.inverse()
        } else {
            self.clone()
        };
        let count = m.abs();
        // w = u c u^-1 with c cyclically reduced
        let (prefix, core) = base.cyclic_decomposition();
        let core_pow = if core.letters.len() == 1 {
            let l = &core.letters[0];
            Word::from_letters([Letter::new(l.gen, &l.exp * &count)])
        } else {
            let reps = count.to_usize()?;
            let mut letters = Vec::with_capacity(core.letters.len().checked_mul(reps)?);
            for _ in 0..reps {
                for l in &core.letters {
                    push_letter(&mut letters, l.clone());
                }
            }
            Word { letters }
        };
        Some(prefix.concat(&core_pow).concat(&prefix.inverse()))
    }

    /// Splits `w = u c u^-1` with `c` cyclically reduced.
    fn cyclic_decomposition(&self) -> (Word, Word) {
        let ls = &self.letters;
        let mut lo = 0;
        let mut hi = ls.len();
        let mut prefix = Vec::new();
        while hi - lo >= 2 && ls[lo].gen == ls[hi - 1].gen {
            let (a, b) = (&ls[lo].exp, &ls[hi - 1].exp);
            if (a + b).is_zero() {
                prefix.push(ls[lo].clone());
                lo += 1;
                hi -= 1;
            } else {
                // x^a M x^b = x^-b (x^(a+b) M) x^b
                prefix.push(Letter::new(ls[lo].gen, -b));
                let mut core = vec![Letter::new(ls[lo].gen, a + b)];
                core.extend_from_slice(&ls[lo + 1..hi - 1]);
                return (Word::from_letters(prefix), Word::from_letters(core));
            }
        }
        (
            Word { letters: prefix },
            Word {
                letters: ls[lo..hi].to_vec(),
            },
        )
    }

    /// Writes the word with the given generator names. The empty word prints
    /// as `()`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

fn push_letter(out: &mut Vec<Letter>, l: Letter) {
    if l.exp.is_zero() {
        return;
    }
    if let Some(last) = out.last_mut() {
        if last.gen == l.gen {
            last.exp += l.exp;
            if last.exp.is_zero() {
                out.pop();
            }
            return;
        }
    }
    out.push(l);
}

/// Free function form of [`Word::inverse`].
pub fn invert_word(w: &Word) -> Word {
    w.inverse()
}

/// Free function form of [`Word::conjugate_by`]: `g w g^-1`.
pub fn conjugate_word(w: &Word, g: &Word) -> Word {
    w.conjugate_by(g)
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "()");
        }
        for (k, l) in self.word.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            let name = self.names.get(l.gen).map(String::as_str).unwrap_or("?");
            if l.exp.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{}", l.exp)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidGeneratorName(String),
    #[error("relator {relator} uses generator index {index} but only {n} generators exist")]
    GeneratorOutOfRange {
        relator: usize,
        index: usize,
        n: usize,
    },
}

/// `<x_1, ..., x_n ; r_1, ..., r_s>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Validates names and relator indices; relators are normalized.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for (k, name) in generators.iter().enumerate() {
            if !is_valid_name(name) {
                return Err(PresentationError::InvalidGeneratorName(name.clone()));
            }
            if generators[..k].contains(name) {
                return Err(PresentationError::DuplicateGenerator(name.clone()));
            }
        }
        let n = generators.len();
        let relators: Vec<Word> = relators.iter().map(Word::normalize).collect();
        for (r, w) in relators.iter().enumerate() {
            if let Some(index) = w.max_generator().filter(|&g| g >= n) {
                return Err(PresentationError::GeneratorOutOfRange {
                    relator: r,
                    index,
                    n,
                });
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// Generators named `x1, ..., xn`.
    pub fn with_default_names(n: usize, relators: Vec<Word>) -> Result<Self, PresentationError> {
        Self::new((1..=n).map(|i| format!("x{i}")).collect(), relators)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn n(&self) -> usize {
        self.generators.len()
    }

    pub fn s(&self) -> usize {
        self.relators.len()
    }

    pub fn with_relators(&self, relators: Vec<Word>) -> Result<Self, PresentationError> {
        Self::new(self.generators.clone(), relators)
    }

    /// Renames generator `i` to position `perm[i]`, rewriting relators.
    pub fn permute_generators(&self, perm: &[usize]) -> Result<Self, PresentationError> {
        let n = self.n();
        assert_eq!(perm.len(), n, "permutation length");
        let mut names = vec![String::new(); n];
        for (i, &p) in perm.iter().enumerate() {
            names[p] = self.generators[i].clone();
        }
        let relators = self
            .relators
            .iter()
            .map(|w| {
                Word::from_letters(
                    w.letters()
                        .iter()
                        .map(|l| Letter::new(perm[l.gen], l.exp.clone())),
                )
            })
            .collect();
        Self::new(names, relators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens:")?;
        for g in &self.generators {
            write!(f, " {g}")?;
        }
        write!(f, "\nrels:")?;
        for (k, r) in self.relators.iter().enumerate() {
            if k > 0 {
                write!(f, " |")?;
            }
            write!(f, " {}", r.display(&self.generators))?;
        }
        writeln!(f)
    }
}

pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing `gens:` line")]
    MissingGens,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidGeneratorName(String),
    #[error("relators given but the generator list is empty")]
    EmptyGeneratorsWithRelators,
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("power too large to expand")]
    PowerTooLarge,
    #[error("unexpected text after `rels:` block header: `{0}`")]
    UnexpectedLine(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn at(pos: Pos, kind: ParseErrorKind) -> Self {
        ParseError {
            line: pos.line,
            column: pos.column,
            kind,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Caret,
    Minus,
    Plus,
    LParen,
    RParen,
    Comma,
    Bar,
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Bar => write!(f, "`|`"),
            Tok::Newline => write!(f, "end of line"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

/// Tokenizes relator text. `first_column` is the column of the first
/// character of the first line (text after `rels:`).
fn lex(lines: &[(usize, usize, &str)]) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut toks = Vec::new();
    let mut last = Pos { line: 1, column: 1 };
    for &(line, first_column, text) in lines {
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = Pos {
                line,
                column: first_column + i,
            };
            match c {
                '#' => break,
                c if c.is_whitespace() => {
                    i += 1;
                }
                c if c.is_ascii_alphabetic() => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    toks.push((Tok::Ident(chars[start..i].iter().collect()), pos));
                }
                c if c.is_ascii_digit() => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let digits: String = chars[start..i].iter().collect();
                    let n: BigInt = digits.parse().expect("ascii digits");
                    toks.push((Tok::Int(n), pos));
                }
                _ => {
                    let tok = match c {
                        '^' => Tok::Caret,
                        '-' => Tok::Minus,
                        '+' => Tok::Plus,
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        ',' => Tok::Comma,
                        '|' => Tok::Bar,
                        other => {
                            return Err(ParseError::at(pos, ParseErrorKind::UnexpectedChar(other)))
                        }
                    };
                    toks.push((tok, pos));
                    i += 1;
                }
            }
        }
        last = Pos {
            line,
            column: first_column + chars.len(),
        };
        toks.push((Tok::Newline, last));
    }
    toks.push((Tok::Eof, last));
    Ok(toks)
}

struct RelParser<'a> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    names: &'a [String],
}

impl RelParser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        ParseError::at(
            self.pos(),
            ParseErrorKind::Unexpected {
                expected: expected.to_string(),
                found: self.peek().to_string(),
            },
        )
    }

    fn skip_newlines(&mut self) {
        while *self.peek() == Tok::Newline {
            self.bump();
        }
    }

    fn relators(&mut self) -> Result<Vec<(Word, Pos)>, ParseError> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Tok::Eof => return Ok(out),
                Tok::Bar | Tok::Newline => {
                    self.bump();
                }
                _ => {
                    let pos = self.pos();
                    let w = self.word(0)?;
                    out.push((w, pos));
                    match self.peek() {
                        Tok::Bar | Tok::Newline | Tok::Eof => {}
                        _ => return Err(self.unexpected("`|` or end of line")),
                    }
                }
            }
        }
    }

    /// A product of factors. Inside parentheses (`depth > 0`) line breaks
    /// are ignored.
    fn word(&mut self, depth: usize) -> Result<Word, ParseError> {
        let mut w = Word::empty();
        loop {
            if depth > 0 {
                self.skip_newlines();
            }
            match self.peek() {
                Tok::Ident(_) | Tok::LParen => {
                    let f = self.factor(depth)?;
                    w = w.concat(&f);
                }
                _ => return Ok(w),
            }
        }
    }

    fn factor(&mut self, depth: usize) -> Result<Word, ParseError> {
        let atom = self.atom(depth)?;
        if *self.peek() != Tok::Caret {
            return Ok(atom);
        }
        self.bump();
        let pos = self.pos();
        let negative = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let Tok::Int(mut m) = self.peek().clone() else {
            return Err(self.unexpected("an integer exponent"));
        };
        self.bump();
        if negative {
            m = -m;
        }
        atom.pow(&m)
            .ok_or_else(|| ParseError::at(pos, ParseErrorKind::PowerTooLarge))
    }

    fn atom(&mut self, depth: usize) -> Result<Word, ParseError> {
        if !matches!(self.peek(), Tok::Ident(_) | Tok::LParen) {
            return Err(self.unexpected("a generator or `(`"));
        }
        let (tok, pos) = self.bump();
        match tok {
            Tok::Ident(name) => match self.names.iter().position(|g| *g == name) {
                Some(i) => Ok(Word::generator(i)),
                None => Err(ParseError::at(pos, ParseErrorKind::UnknownGenerator(name))),
            },
            Tok::LParen => {
                let u = self.word(depth + 1)?;
                self.skip_newlines();
                match self.peek() {
                    Tok::RParen => {
                        self.bump();
                        Ok(u)
                    }
                    Tok::Comma => {
                        self.bump();
                        let v = self.word(depth + 1)?;
                        self.skip_newlines();
                        if *self.peek() != Tok::RParen {
                            return Err(self.unexpected("`)`"));
                        }
                        self.bump();
                        Ok(Word::commutator(&u, &v))
                    }
                    _ => Err(self.unexpected("`,` or `)`")),
                }
            }
            _ => unreachable!("checked above"),
        }
    }
}

/// Splits a line into content and comment, trimming the comment.
fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(k) => &line[..k],
        None => line,
    }
}

/// Parses the presentation text format.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let lines: Vec<&str> = text
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .collect();

    let mut idx = 0;
    while idx < lines.len() && strip_comment(lines[idx]).trim().is_empty() {
        idx += 1;
    }
    let Some(gens_line) = lines.get(idx) else {
        return Err(ParseError::at(
            Pos {
                line: idx.max(1),
                column: 1,
            },
            ParseErrorKind::MissingGens,
        ));
    };
    let gens_lineno = idx + 1;
    let content = strip_comment(gens_line);
    let lead = content.len() - content.trim_start().len();
    let Some(rest) = content.trim_start().strip_prefix("gens:") else {
        return Err(ParseError::at(
            Pos {
                line: gens_lineno,
                column: lead + 1,
            },
            ParseErrorKind::MissingGens,
        ));
    };
    let mut generators: Vec<String> = Vec::new();
    let rest_col = lead + "gens:".len() + 1;
    let mut col = rest_col;
    for piece in rest.split_inclusive(char::is_whitespace) {
        let name = piece.trim();
        if !name.is_empty() {
            let pos = Pos {
                line: gens_lineno,
                column: col,
            };
            if !is_valid_name(name) {
                return Err(ParseError::at(
                    pos,
                    ParseErrorKind::InvalidGeneratorName(name.into()),
                ));
            }
            if generators.iter().any(|g| g == name) {
                return Err(ParseError::at(
                    pos,
                    ParseErrorKind::DuplicateGenerator(name.into()),
                ));
            }
            generators.push(name.to_string());
        }
        col += piece.chars().count();
    }
    idx += 1;

    while idx < lines.len() && strip_comment(lines[idx]).trim().is_empty() {
        idx += 1;
    }
    let mut rel_lines: Vec<(usize, usize, &str)> = Vec::new();
    if let Some(line) = lines.get(idx) {
        let content = strip_comment(line);
        let lead = content.len() - content.trim_start().len();
        match content.trim_start().strip_prefix("rels:") {
            Some(rest) => rel_lines.push((idx + 1, lead + "rels:".len() + 1, rest)),
            None => {
                return Err(ParseError::at(
                    Pos {
                        line: idx + 1,
                        column: lead + 1,
                    },
                    ParseErrorKind::UnexpectedLine(content.trim().to_string()),
                ))
            }
        }
        for (k, line) in lines.iter().enumerate().skip(idx + 1) {
            rel_lines.push((k + 1, 1, line));
        }
    }

    let toks = lex(&rel_lines)?;
    let mut parser = RelParser {
        toks,
        at: 0,
        names: &generators,
    };
    if generators.is_empty() {
        if let Some((_, pos)) = parser
            .toks
            .iter()
            .find(|(t, _)| !matches!(t, Tok::Newline | Tok::Eof | Tok::Bar))
        {
            return Err(ParseError::at(
                *pos,
                ParseErrorKind::EmptyGeneratorsWithRelators,
            ));
        }
    }
    let relators = parser.relators()?;
    Ok(
        Presentation::new(generators, relators.into_iter().map(|(w, _)| w).collect())
            .expect("parser validates names and indices"),
    )
}

impl std::str::FromStr for Presentation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_presentation(s)
    }
}
