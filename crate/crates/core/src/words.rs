//! Alphabets, free-monoid words and reduced free-group words.
//!
//! Everything downstream (counting functions, canonical forms, witness
//! families) is indexed by [`Word`]s, so this module pins down the ground
//! rules once: a group-mode `Word` is always freely reduced, a monoid-mode
//! `Word` never contains an inverse letter, and the ordering used everywhere
//! for determinism is length-first, then lexicographic with positive letters
//! before their inverses.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Errors produced while building alphabets, letters or words.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("alphabet rank must be at least 2, got {0}")]
    RankTooSmall(u32),
    #[error("letter index {index} is out of range for rank {rank}")]
    LetterOutOfRank { index: u32, rank: u32 },
    #[error("inverse letters are not allowed in monoid mode")]
    InverseInMonoid,
    #[error("word is not reduced: cancelling pair at positions {0} and {1}")]
    NotReduced(usize, usize),
    #[error("power of a word whose first letter inverts its last letter is undefined")]
    NonCyclicallyReduced,
    #[error("malformed word text: {0}")]
    BadWordText(String),
}

/// Whether words live in the free monoid or the free group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Monoid,
    Group,
}

/// A rank-`n` alphabet together with the ambient structure (monoid or group).
///
/// Rank 1 is rejected: the canonical bases below are only defined for
/// `rank >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alphabet {
    rank: u32,
    mode: Mode,
}

impl Alphabet {
    pub fn new(rank: u32, mode: Mode) -> Result<Self, WordError> {
        if rank < 2 {
            return Err(WordError::RankTooSmall(rank));
        }
        Ok(Alphabet { rank, mode })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_group(&self) -> bool {
        self.mode == Mode::Group
    }

    /// All letters of the alphabet in canonical order: `a < a^-1 < b < b^-1 < ...`
    /// (monoid mode yields only the positive letters).
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for index in 1..=self.rank {
            out.push(Letter::positive(index));
            if self.is_group() {
                out.push(Letter::inverse(index));
            }
        }
        out
    }

    /// The empty word over this alphabet.
    pub fn empty_word(&self) -> Word {
        Word {
            alphabet: *self,
            letters: Vec::new(),
        }
    }

    fn check_letter(&self, letter: Letter) -> Result<(), WordError> {
        if letter.index == 0 || letter.index > self.rank {
            return Err(WordError::LetterOutOfRank {
                index: letter.index,
                rank: self.rank,
            });
        }
        if self.mode == Mode::Monoid && letter.sign == Sign::Negative {
            return Err(WordError::InverseInMonoid);
        }
        Ok(())
    }

    /// Parse the shared text form of a word: lowercase letters are positive
    /// generators (`a` = first generator), uppercase letters their inverses,
    /// and `""` or `"1"` is the empty word. `<1.2.-1>` is the numeric escape
    /// for ranks beyond 26. Group-mode input must already be reduced.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let letters = parse_letters(text)?;
        Word::from_reduced(letters, *self)
    }
}

/// Sign of a letter; `Positive` sorts before `Negative`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

/// A single signed generator `a_i` or `a_i^-1`.
///
/// Indices are 1-based; the letter carries no alphabet reference, range
/// checks happen when words are built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    index: u32,
    sign: Sign,
}

impl Letter {
    pub fn new(index: u32, sign: Sign) -> Self {
        Letter { index, sign }
    }

    pub fn positive(index: u32) -> Self {
        Letter {
            index,
            sign: Sign::Positive,
        }
    }

    pub fn inverse(index: u32) -> Self {
        Letter {
            index,
            sign: Sign::Negative,
        }
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// The inverse letter. Only meaningful in group mode.
    pub fn inverted(&self) -> Letter {
        Letter {
            index: self.index,
            sign: match self.sign {
                Sign::Positive => Sign::Negative,
                Sign::Negative => Sign::Positive,
            },
        }
    }

    pub fn cancels(&self, other: &Letter) -> bool {
        self.index == other.index && self.sign != other.sign
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index <= 26 {
            let base = match self.sign {
                Sign::Positive => b'a',
                Sign::Negative => b'A',
            };
            write!(f, "{}", (base + (self.index - 1) as u8) as char)
        } else {
            match self.sign {
                Sign::Positive => write!(f, "<{}>", self.index),
                Sign::Negative => write!(f, "<-{}>", self.index),
            }
        }
    }
}

/// A word over an [`Alphabet`]: a possibly empty sequence of letters,
/// freely reduced in group mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl Word {
    /// Build a word from a letter sequence that must already satisfy the
    /// mode invariant; group-mode sequences with a cancelling pair are
    /// rejected rather than silently reduced.
    pub fn from_reduced(
        letters: impl Into<Vec<Letter>>,
        alphabet: Alphabet,
    ) -> Result<Self, WordError> {
        let letters = letters.into();
        for letter in &letters {
            alphabet.check_letter(*letter)?;
        }
        if alphabet.is_group() {
            for (i, pair) in letters.windows(2).enumerate() {
                if pair[0].cancels(&pair[1]) {
                    return Err(WordError::NotReduced(i, i + 1));
                }
            }
        }
        Ok(Word { alphabet, letters })
    }

    /// Freely reduce a letter sequence (single left-to-right pass with a
    /// cancellation stack). In monoid mode this is the identity on valid
    /// sequences.
    pub fn reduce(letters: &[Letter], alphabet: Alphabet) -> Result<Self, WordError> {
        for letter in letters {
            alphabet.check_letter(*letter)?;
        }
        if !alphabet.is_group() {
            return Ok(Word {
                alphabet,
                letters: letters.to_vec(),
            });
        }
        let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
        for letter in letters {
            if stack.last().is_some_and(|top| top.cancels(letter)) {
                stack.pop();
            } else {
                stack.push(*letter);
            }
        }
        Ok(Word {
            alphabet,
            letters: stack,
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
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

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// The formal inverse `w^-1` (reversed sequence, all signs flipped).
    /// Group mode only; the result of inverting a reduced word is reduced.
    pub fn inverse(&self) -> Word {
        assert!(self.alphabet.is_group(), "inverse is a group-mode operation");
        Word {
            alphabet: self.alphabet,
            letters: self.letters.iter().rev().map(Letter::inverted).collect(),
        }
    }

    /// Concatenation; in group mode the seam is reduced so the invariant
    /// holds without exposing unreduced intermediates.
    pub fn concat(&self, other: &Word) -> Word {
        assert_eq!(self.alphabet, other.alphabet, "alphabet mismatch in concat");
        let mut letters = self.letters.clone();
        if self.alphabet.is_group() {
            for letter in &other.letters {
                if letters.last().is_some_and(|top| top.cancels(letter)) {
                    letters.pop();
                } else {
                    letters.push(*letter);
                }
            }
        } else {
            letters.extend_from_slice(&other.letters);
        }
        Word {
            alphabet: self.alphabet,
            letters,
        }
    }

    /// `w^k` by repetition. In group mode with `k >= 2` the word must not
    /// cancel across the seam (`w_1 != w_fin^-1`); such input is an error
    /// because silent reduction would change the length contract.
    pub fn power(&self, k: usize) -> Result<Word, WordError> {
        if self.alphabet.is_group() && k >= 2 && !self.is_empty() {
            let first = self.first().unwrap();
            let last = self.last().unwrap();
            if first == last.inverted() {
                return Err(WordError::NonCyclicallyReduced);
            }
        }
        let mut letters = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        Ok(Word {
            alphabet: self.alphabet,
            letters,
        })
    }

    /// Number of (possibly overlapping) occurrences of `pattern` in `self`;
    /// this is the elementary counting function `p_pattern` evaluated here.
    /// The empty pattern counts the length of the word.
    pub fn count_occurrences(&self, pattern: &Word) -> usize {
        assert_eq!(
            self.alphabet, pattern.alphabet,
            "alphabet mismatch in count_occurrences"
        );
        count_occurrences_raw(&pattern.letters, &self.letters)
    }

    /// Prefix indicator: 1 iff `self` is a prefix of `w` (the empty word is
    /// a prefix of everything).
    pub fn is_prefix_of(&self, w: &Word) -> bool {
        w.letters.len() >= self.letters.len() && w.letters[..self.letters.len()] == self.letters[..]
    }

    /// Suffix indicator, mirror of [`Word::is_prefix_of`].
    pub fn is_suffix_of(&self, w: &Word) -> bool {
        w.letters.len() >= self.letters.len()
            && w.letters[w.letters.len() - self.letters.len()..] == self.letters[..]
    }

    /// The word minus its first letter. Panics on the empty word.
    pub fn drop_first(&self) -> Word {
        Word {
            alphabet: self.alphabet,
            letters: self.letters[1..].to_vec(),
        }
    }

    /// The word minus its last letter. Panics on the empty word.
    pub fn drop_last(&self) -> Word {
        Word {
            alphabet: self.alphabet,
            letters: self.letters[..self.letters.len() - 1].to_vec(),
        }
    }

    /// `letter . self`; the caller guarantees the seam does not cancel.
    pub fn prepend(&self, letter: Letter) -> Word {
        debug_assert!(
            !self.alphabet.is_group() || self.first().is_none_or(|f| !f.cancels(&letter)),
            "prepend would produce an unreduced word"
        );
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.push(letter);
        letters.extend_from_slice(&self.letters);
        Word {
            alphabet: self.alphabet,
            letters,
        }
    }

    /// `self . letter`; the caller guarantees the seam does not cancel.
    pub fn append(&self, letter: Letter) -> Word {
        debug_assert!(
            !self.alphabet.is_group() || self.last().is_none_or(|l| !l.cancels(&letter)),
            "append would produce an unreduced word"
        );
        let mut letters = self.letters.clone();
        letters.push(letter);
        Word {
            alphabet: self.alphabet,
            letters,
        }
    }
}

pub(crate) fn count_occurrences_raw(pattern: &[Letter], text: &[Letter]) -> usize {
    if pattern.is_empty() {
        // p_epsilon(w) = |w|
        return text.len();
    }
    if pattern.len() > text.len() {
        return 0;
    }
    text.windows(pattern.len()).filter(|w| *w == pattern).count()
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    /// Length-first, then letter-by-letter with `Positive < Negative`.
    /// This is the canonical term order used for serialization and for all
    /// deterministic tie-breaking.
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
            .then_with(|| self.alphabet.cmp(&other.alphabet))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        if self.alphabet.rank <= 26 {
            for letter in &self.letters {
                write!(f, "{letter}")?;
            }
            Ok(())
        } else {
            write!(f, "<")?;
            for (i, letter) in self.letters.iter().enumerate() {
                if i > 0 {
                    write!(f, ".")?;
                }
                let signed = match letter.sign {
                    Sign::Positive => letter.index as i64,
                    Sign::Negative => -(letter.index as i64),
                };
                write!(f, "{signed}")?;
            }
            write!(f, ">")
        }
    }
}

/// Raw letter text used inside `p[...]`, on the command line and in word
/// serialization: `""`/`"1"` for the empty word, `a-z`/`A-Z`, or the numeric
/// escape `<1.2.-1>`.
pub fn parse_letters(text: &str) -> Result<Vec<Letter>, WordError> {
    let text = text.trim();
    if text.is_empty() || text == "1" {
        return Ok(Vec::new());
    }
    if let Some(inner) = text.strip_prefix('<') {
        let inner = inner
            .strip_suffix('>')
            .ok_or_else(|| WordError::BadWordText("unterminated numeric escape".into()))?;
        let mut letters = Vec::new();
        for part in inner.split('.') {
            let value: i64 = part
                .trim()
                .parse()
                .map_err(|_| WordError::BadWordText(format!("bad letter index '{part}'")))?;
            if value == 0 {
                return Err(WordError::BadWordText("letter index 0 is invalid".into()));
            }
            let letter = if value > 0 {
                Letter::positive(value as u32)
            } else {
                Letter::inverse((-value) as u32)
            };
            letters.push(letter);
        }
        return Ok(letters);
    }
    let mut letters = Vec::with_capacity(text.len());
    for ch in text.chars() {
        let letter = match ch {
            'a'..='z' => Letter::positive(ch as u32 - 'a' as u32 + 1),
            'A'..='Z' => Letter::inverse(ch as u32 - 'A' as u32 + 1),
            _ => return Err(WordError::BadWordText(format!("unexpected character '{ch}'"))),
        };
        letters.push(letter);
    }
    Ok(letters)
}
