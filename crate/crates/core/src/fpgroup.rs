//! Free-group words and finitely presented groups.
//!
//! Generators are single lowercase ASCII letters; the matching uppercase letter
//! is the inverse. A letter is stored as a signed, 1-based generator index:
//! `a = 1`, `A = -1`, `b = 2`, `B = -2`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A word in the free group: signed 1-based generator indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Wraps the letters as given, without reducing.
    pub fn from_letters(letters: Vec<i32>) -> Self {
        debug_assert!(letters.iter().all(|&l| l != 0));
        Word(letters)
    }

    /// Builds the freely reduced word for `letters`.
    pub fn reduced(letters: Vec<i32>) -> Self {
        Word(letters).free_reduce()
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used, or 0 for the identity.
    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != -w[1])
    }

    /// Cancels adjacent `x x⁻¹` pairs until none remain.
    pub fn free_reduce(self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for l in self.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Strips matching `x ... x⁻¹` from both ends of a freely reduced word.
    pub fn cyclic_reduce(&self) -> Self {
        let w = &self.0;
        let (mut lo, mut hi) = (0, w.len());
        while hi - lo >= 2 && w[lo] == -w[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        Word(w[lo..hi].to_vec())
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    /// Freely reduced product `self · other`.
    pub fn concat(&self, other: &Word) -> Self {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters).free_reduce()
    }

    /// Renders with lowercase generators, uppercase inverses and `^n` for runs.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            s.push(letter_char(l));
            if run > 1 {
                s.push('^');
                push_decimal(&mut s, run);
            }
            i += run;
        }
        s
    }
}

fn letter_char(l: i32) -> char {
    let base = if l > 0 { b'a' } else { b'A' };
    (base + (l.unsigned_abs() - 1) as u8) as char
}

fn push_decimal(s: &mut String, n: usize) {
    use core::fmt::Write;
    let _ = write!(s, "{n}");
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            f.write_str("e")
        } else {
            f.write_str(&self.render())
        }
    }
}

/// Generators plus relators; relators are freely reduced and non-empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generator_count: usize,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Result<Self, ParseError> {
        if generator_count == 0 || generator_count > 26 {
            return Err(ParseError::new(0, ParseErrorKind::GeneratorCount));
        }
        let mut reduced = Vec::with_capacity(relators.len());
        for r in relators {
            let r = r.free_reduce();
            if r.is_identity() {
                return Err(ParseError::new(0, ParseErrorKind::EmptyRelator));
            }
            if r.max_generator() > generator_count {
                return Err(ParseError::new(0, ParseErrorKind::UnknownLetter('?')));
            }
            reduced.push(r);
        }
        Ok(Presentation { generator_count, relators: reduced })
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Text form accepted by [`parse_presentation`].
    pub fn render(&self) -> String {
        let mut s = String::new();
        for g in 0..self.generator_count {
            if g > 0 {
                s.push(',');
            }
            s.push(letter_char(g as i32 + 1));
        }
        s.push_str(" | ");
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            s.push_str(&r.render());
        }
        s
    }

    /// Parses a word over this presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<Word, ParseError> {
        let mut p = Parser { bytes: text.as_bytes(), pos: 0, offset: 0, gens: self.generator_count };
        let w = p.word()?;
        p.skip_ws();
        if p.pos < p.bytes.len() {
            return Err(p.err(ParseErrorKind::Unexpected(p.bytes[p.pos] as char)));
        }
        Ok(Word(w).free_reduce())
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    GeneratorCount,
    BadGenerator,
    MissingBar,
    UnknownLetter(char),
    MalformedExponent,
    UnbalancedParen,
    Unexpected(char),
    EmptyRelator,
    NoPresentation,
}

/// Parse failure with the byte offset of the offending token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn new(position: usize, kind: ParseErrorKind) -> Self {
        ParseError { position, kind }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = self.position;
        match &self.kind {
            ParseErrorKind::GeneratorCount => write!(f, "need between 1 and 26 generators"),
            ParseErrorKind::BadGenerator => {
                write!(f, "generator at {at} must be a single lowercase letter")
            }
            ParseErrorKind::MissingBar => write!(f, "missing '|' between generators and relators"),
            ParseErrorKind::UnknownLetter(c) => write!(f, "unknown letter '{c}' at {at}"),
            ParseErrorKind::MalformedExponent => write!(f, "malformed exponent at {at}"),
            ParseErrorKind::UnbalancedParen => write!(f, "unbalanced parenthesis at {at}"),
            ParseErrorKind::Unexpected(c) => write!(f, "unexpected '{c}' at {at}"),
            ParseErrorKind::EmptyRelator => write!(f, "relator at {at} reduces to the identity"),
            ParseErrorKind::NoPresentation => write!(f, "no presentation line found"),
        }
    }
}

impl core::error::Error for ParseError {}

/// Parses `"a,b | w1, w2, ..."`.
///
/// Lowercase letters are generators, uppercase their inverses, and `^n`
/// (n may be negative) raises the preceding letter or parenthesized group.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let bar = text.find('|').ok_or(ParseError::new(text.len(), ParseErrorKind::MissingBar))?;
    let (head, tail) = (&text[..bar], &text[bar + 1..]);

    let mut gens = 0usize;
    let mut offset = 0;
    for item in head.split(',') {
        let trimmed = item.trim();
        let at = offset + item.len() - item.trim_start().len();
        let b = trimmed.as_bytes();
        if b.len() != 1 || b[0] != b'a' + gens as u8 {
            return Err(ParseError::new(at, ParseErrorKind::BadGenerator));
        }
        gens += 1;
        offset += item.len() + 1;
    }
    if gens > 26 {
        return Err(ParseError::new(0, ParseErrorKind::GeneratorCount));
    }

    let mut relators = Vec::new();
    if !tail.trim().is_empty() {
        let mut offset = bar + 1;
        for item in tail.split(',') {
            let mut p = Parser { bytes: item.as_bytes(), pos: 0, offset, gens };
            let letters = p.word()?;
            p.skip_ws();
            if p.pos < p.bytes.len() {
                return Err(p.err(ParseErrorKind::Unexpected(p.bytes[p.pos] as char)));
            }
            let w = Word(letters).free_reduce();
            if w.is_identity() {
                let lead = item.len() - item.trim_start().len();
                return Err(ParseError::new(offset + lead, ParseErrorKind::EmptyRelator));
            }
            relators.push(w);
            offset += item.len() + 1;
        }
    }
    Ok(Presentation { generator_count: gens, relators })
}

/// Reads the first non-comment line of a presentation file. `#` starts a comment.
pub fn parse_presentation_file(contents: &str) -> Result<Presentation, ParseError> {
    for line in contents.lines() {
        let line = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        };
        if !line.trim().is_empty() {
            return parse_presentation(line);
        }
    }
    Err(ParseError::new(0, ParseErrorKind::NoPresentation))
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    offset: usize,
    gens: usize,
}

impl Parser<'_> {
    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError::new(self.offset + self.pos, kind)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> Result<Vec<i32>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let Some(&c) = self.bytes.get(self.pos) else { break };
            let atom = match c {
                b'a'..=b'z' | b'A'..=b'Z' => {
                    let (idx, sign) = if c.is_ascii_lowercase() {
                        ((c - b'a') as usize, 1)
                    } else {
                        ((c - b'A') as usize, -1)
                    };
                    if idx >= self.gens {
                        return Err(self.err(ParseErrorKind::UnknownLetter(c as char)));
                    }
                    self.pos += 1;
                    alloc::vec![sign * (idx as i32 + 1)]
                }
                b'(' => {
                    let open = self.pos;
                    self.pos += 1;
                    let inner = self.word()?;
                    self.skip_ws();
                    if self.bytes.get(self.pos) != Some(&b')') {
                        return Err(ParseError::new(self.offset + open, ParseErrorKind::UnbalancedParen));
                    }
                    self.pos += 1;
                    inner
                }
                b')' => break,
                _ => return Err(self.err(ParseErrorKind::Unexpected(c as char))),
            };
            self.skip_ws();
            let exp = if self.bytes.get(self.pos) == Some(&b'^') {
                self.pos += 1;
                self.exponent()?
            } else {
                1
            };
            let base: Vec<i32> = if exp < 0 { atom.iter().rev().map(|l| -l).collect() } else { atom };
            for _ in 0..exp.unsigned_abs() {
                out.extend_from_slice(&base);
            }
        }
        Ok(out)
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.bytes.get(self.pos) == Some(&b'-');
        if neg {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start || self.pos - digits_start > 6 {
            return Err(ParseError::new(self.offset + start, ParseErrorKind::MalformedExponent));
        }
        let s = core::str::from_utf8(&self.bytes[digits_start..self.pos]).unwrap_or("0");
        let n: i64 = s.parse().map_err(|_| ParseError::new(self.offset + start, ParseErrorKind::MalformedExponent))?;
        Ok(if neg { -n } else { n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lens(p: &Presentation) -> Vec<usize> {
        p.relators().iter().map(Word::len).collect()
    }

    #[test]
    fn parses_brieskorn_presentation() {
        let p = parse_presentation("a,b | aBab^2aBab^3, a^4bAb").unwrap();
        assert_eq!(p.generator_count(), 2);
        assert_eq!(lens(&p), vec![11, 7]);
    }

    #[test]
    fn parses_free_group() {
        let p = parse_presentation("a | ").unwrap();
        assert_eq!(p.generator_count(), 1);
        assert!(p.relators().is_empty());
    }

    #[test]
    fn parses_middle_level_presentation() {
        let p = parse_presentation("a,b | a^2bA^2ba^2BAB, a^2BA^3Ba^2b^3").unwrap();
        assert_eq!(lens(&p), vec![11, 12]);
    }

    #[test]
    fn parenthesized_powers() {
        let p = parse_presentation("a,b | a^2, b^2, (ab)^3").unwrap();
        assert_eq!(p.relators()[2].letters(), &[1, 2, 1, 2, 1, 2]);
        let q = parse_presentation("a,b | (ab)^-2").unwrap();
        assert_eq!(q.relators()[0].letters(), &[-2, -1, -2, -1]);
        let r = parse_presentation("a,b | (ab)^2aB^2Ab^2AB^2").unwrap();
        assert_eq!(r.relators()[0].len(), 13);
    }

    #[test]
    fn parse_errors_name_position() {
        let e = parse_presentation("a,b | abc").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownLetter('c'));
        assert_eq!(e.position, 8);
        let e = parse_presentation("a,b | a^").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MalformedExponent);
        let e = parse_presentation("a,b | aA").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::EmptyRelator);
        assert_eq!(e.position, 6);
        let e = parse_presentation("a,b | (ab").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnbalancedParen);
        let e = parse_presentation("a,c | a").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::BadGenerator);
        assert!(parse_presentation("ab").is_err());
    }

    #[test]
    fn file_format_skips_comments() {
        let text = "# boundary of the cork\n\n  # more\na,b | a^4bAb # trailing\n";
        let p = parse_presentation_file(text).unwrap();
        assert_eq!(lens(&p), vec![7]);
        assert!(parse_presentation_file("# nothing\n").is_err());
    }

    #[test]
    fn free_reduce_examples() {
        assert!(Word::from_letters(vec![1, -1]).free_reduce().is_identity());
        assert_eq!(Word::from_letters(vec![1, 2, -2, 1]).free_reduce().letters(), &[1, 1]);
        let p = parse_presentation("a,b | a^4bAb").unwrap();
        let r = p.relators()[0].clone();
        assert_eq!(r.clone().free_reduce(), r);
        assert_eq!(r.len(), 7);
    }

    #[test]
    fn inverse_and_concat_examples() {
        let ab = Word::from_letters(vec![1, 2]);
        assert_eq!(ab.inverse().letters(), &[-2, -1]);
        let a = Word::from_letters(vec![1]);
        assert!(a.concat(&a.inverse()).is_identity());
        let p = parse_presentation("a,b | a^3b^2AB^3Ab^2").unwrap();
        let r = &p.relators()[0];
        assert_eq!(&r.inverse().inverse(), r);
    }

    #[test]
    fn cyclic_reduction() {
        let w = Word::reduced(vec![2, 1, 1, -2]);
        assert_eq!(w.cyclic_reduce().letters(), &[1, 1]);
    }

    #[test]
    fn render_round_trip_on_bundled_inputs() {
        for text in [
            "a,b | aBab^2aBab^3, a^4bAb",
            "a,b | a^3b^2AB^3Ab^2, (ab)^2aB^2Ab^2AB^2",
            "a,b | a^2bA^2ba^2BAB, a^2BA^3Ba^2b^3",
        ] {
            let p = parse_presentation(text).unwrap();
            assert_eq!(parse_presentation(&p.render()).unwrap(), p);
        }
    }

    fn word_strategy() -> impl Strategy<Value = Vec<i32>> {
        proptest::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2), Just(3), Just(-3)], 0..40)
    }

    proptest! {
        #[test]
        fn free_reduce_idempotent_and_shrinking(letters in word_strategy()) {
            let n = letters.len();
            let w = Word::from_letters(letters).free_reduce();
            prop_assert!(w.len() <= n);
            prop_assert!(w.is_freely_reduced());
            prop_assert_eq!(w.clone().free_reduce(), w);
        }

        #[test]
        fn word_times_inverse_is_identity(letters in word_strategy()) {
            let w = Word::reduced(letters);
            prop_assert!(w.concat(&w.inverse()).is_identity());
            prop_assert_eq!(w.inverse().inverse(), w);
        }

        #[test]
        fn render_reparses(rels in proptest::collection::vec(word_strategy(), 0..4)) {
            let rels: Vec<Word> = rels.into_iter().map(Word::reduced).filter(|w| !w.is_identity()).collect();
            let p = Presentation::new(3, rels).unwrap();
            prop_assert_eq!(parse_presentation(&p.render()).unwrap(), p);
        }
    }
}
