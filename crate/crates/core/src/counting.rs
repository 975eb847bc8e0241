//! The vector space of counting functions over exact rationals.
//!
//! A [`CountingFunction`] is a finite linear combination of elementary
//! counting functions `p_w` (the number of overlapping occurrences of `w`),
//! stored as a sparse word-keyed map with no zero coefficients. This module
//! also builds the four spanning relations: the left/right extension
//! relations `l_w`, `r_w` and the symmetry relations `s_w`, `se_w` of the
//! group case.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::words::{Alphabet, Mode, Word};

/// Exact rational coefficients with arbitrary-precision integers.
pub type Rational = num_rational::BigRational;

/// Shorthand for small rational constants.
pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// A sparse linear combination of elementary counting functions.
///
/// Invariants: every stored coefficient is nonzero, and every key word
/// shares the function's alphabet (so in group mode every key is reduced).
/// The empty word is a legal key (`p_epsilon` counts word length).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingFunction {
    alphabet: Alphabet,
    terms: BTreeMap<Word, Rational>,
}

impl CountingFunction {
    pub fn zero(alphabet: Alphabet) -> Self {
        CountingFunction {
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    /// The elementary counting function `p_w`.
    pub fn elementary(word: Word) -> Self {
        let alphabet = word.alphabet();
        let mut terms = BTreeMap::new();
        terms.insert(word, Rational::one());
        CountingFunction { alphabet, terms }
    }

    /// Build from `(word, coefficient)` pairs; repeated words are summed and
    /// zero coefficients dropped.
    pub fn from_terms(
        alphabet: Alphabet,
        terms: impl IntoIterator<Item = (Word, Rational)>,
    ) -> Self {
        let mut f = CountingFunction::zero(alphabet);
        for (word, coefficient) in terms {
            f.add_term(word, coefficient);
        }
        f
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order (length-lex by key word).
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    /// The stored coefficient of `word` (zero when absent).
    pub fn coefficient(&self, word: &Word) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    /// The length-lex least support word, if any.
    pub fn shortest_support_word(&self) -> Option<&Word> {
        self.terms.keys().next()
    }

    pub(crate) fn add_term(&mut self, word: Word, coefficient: Rational) {
        if coefficient.is_zero() {
            return;
        }
        debug_assert_eq!(word.alphabet(), self.alphabet);
        let entry = self.terms.entry(word);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Pointwise value: the sum of `x_v * p_v(w)` over the stored terms.
    /// Every counting function vanishes at the empty word.
    pub fn evaluate(&self, w: &Word) -> Rational {
        assert_eq!(self.alphabet, w.alphabet(), "alphabet mismatch in evaluate");
        let mut total = Rational::zero();
        for (pattern, coefficient) in &self.terms {
            let occurrences = w.count_occurrences(pattern);
            if occurrences > 0 {
                total += coefficient * BigInt::from(occurrences);
            }
        }
        total
    }

    pub fn add(&self, other: &CountingFunction) -> CountingFunction {
        assert_eq!(self.alphabet, other.alphabet, "alphabet mismatch in add");
        let mut out = self.clone();
        for (word, coefficient) in &other.terms {
            out.add_term(word.clone(), coefficient.clone());
        }
        out
    }

    pub fn sub(&self, other: &CountingFunction) -> CountingFunction {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, factor: &Rational) -> CountingFunction {
        if factor.is_zero() {
            return CountingFunction::zero(self.alphabet);
        }
        CountingFunction {
            alphabet: self.alphabet,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c * factor))
                .collect(),
        }
    }

    /// Substitute the exact identity `p_epsilon = sum of p_s over single
    /// letters` and re-collect. The result has no empty-word term and is the
    /// unique representation over elementary functions of non-zero length.
    pub fn eliminate_epsilon(&self) -> CountingFunction {
        let empty = self.alphabet.empty_word();
        let Some(eps_coefficient) = self.terms.get(&empty).cloned() else {
            return self.clone();
        };
        let mut out = self.clone();
        out.terms.remove(&empty);
        for letter in self.alphabet.letters() {
            let single = Word::from_reduced(vec![letter], self.alphabet).expect("single letter");
            out.add_term(single, eps_coefficient.clone());
        }
        out
    }

    /// The depth of the function: the maximal key length after the
    /// empty-word term (if any) has been substituted away. For functions
    /// without an empty-word term this is just the maximal stored key
    /// length, which by independence of the non-empty elementary functions
    /// is the minimal depth over all representations.
    pub fn depth(&self) -> usize {
        let normalized = self.eliminate_epsilon();
        normalized.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// The maximum of `|value|` over the formal sup bound is not computed
    /// here; see the oracle module for empirical estimates.
    pub fn sum_of_abs_coefficients(&self) -> Rational {
        self.terms.values().map(|c| c.abs()).sum()
    }
}

impl fmt::Display for CountingFunction {
    /// `3*p[ab] - 1/2*p[aB] + p[]` (the shared expression grammar).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, self.terms.iter(), "p")
    }
}

pub(crate) fn format_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a Word, &'a Rational)>,
    symbol: &str,
) -> fmt::Result {
    let mut first = true;
    for (word, coefficient) in terms {
        let negative = coefficient.is_negative();
        let magnitude = coefficient.abs();
        if first {
            if negative {
                write!(f, "-")?;
            }
            first = false;
        } else if negative {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let letters = if word.is_empty() {
            String::new()
        } else {
            word.to_string()
        };
        if magnitude.is_one() {
            write!(f, "{symbol}[{letters}]")?;
        } else {
            write!(f, "{magnitude}*{symbol}[{letters}]")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// The left extension relation `l_w = p_w - sum of p_sw`.
///
/// In monoid mode `s` ranges over the whole alphabet; in group mode over all
/// signed letters except `w_1^-1` (all of them when `w` is empty), so every
/// extension `sw` is reduced. `l_w` is bounded: pointwise it equals the
/// prefix indicator of `w`.
pub fn left_relation(word: &Word) -> CountingFunction {
    let alphabet = word.alphabet();
    let mut f = CountingFunction::elementary(word.clone());
    let forbidden = match (alphabet.mode(), word.first()) {
        (Mode::Group, Some(first)) => Some(first.inverted()),
        _ => None,
    };
    for letter in alphabet.letters() {
        if Some(letter) == forbidden {
            continue;
        }
        f.add_term(word.prepend(letter), -Rational::one());
    }
    f
}

/// The right extension relation `r_w = p_w - sum of p_ws`, the suffix mirror
/// of [`left_relation`].
pub fn right_relation(word: &Word) -> CountingFunction {
    let alphabet = word.alphabet();
    let mut f = CountingFunction::elementary(word.clone());
    let forbidden = match (alphabet.mode(), word.last()) {
        (Mode::Group, Some(last)) => Some(last.inverted()),
        _ => None,
    };
    for letter in alphabet.letters() {
        if Some(letter) == forbidden {
            continue;
        }
        f.add_term(word.append(letter), -Rational::one());
    }
    f
}

/// The symmetry relation `s_w = p_w + p_{w^-1}` (group mode, `|w| >= 1`).
/// No reduced word equals its own inverse, so the support always has two
/// elements.
pub fn symmetry_relation(word: &Word) -> CountingFunction {
    assert!(word.alphabet().is_group(), "s_w is a group-mode relation");
    assert!(!word.is_empty(), "s_w requires a non-empty word");
    let mut f = CountingFunction::elementary(word.clone());
    f.add_term(word.inverse(), Rational::one());
    debug_assert_eq!(f.support_size(), 2);
    f
}

/// The symmetrized extension relation `se_w = l_w - r_{w^-1}` (group mode,
/// `|w| >= 1`). Pointwise it is the prefix indicator of `w` minus the suffix
/// indicator of `w^-1`, so its sup-norm is at most 2.
pub fn symmetrized_extension(word: &Word) -> CountingFunction {
    assert!(word.alphabet().is_group(), "se_w is a group-mode relation");
    assert!(!word.is_empty(), "se_w requires a non-empty word");
    left_relation(word).sub(&right_relation(&word.inverse()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{Letter, Mode, WordError};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn monoid(rank: u32) -> Alphabet {
        Alphabet::new(rank, Mode::Monoid).unwrap()
    }

    fn group(rank: u32) -> Alphabet {
        Alphabet::new(rank, Mode::Group).unwrap()
    }

    fn w(alphabet: Alphabet, text: &str) -> Word {
        alphabet.parse_word(text).unwrap()
    }

    fn p(alphabet: Alphabet, text: &str) -> CountingFunction {
        CountingFunction::elementary(w(alphabet, text))
    }

    /// Every word of the alphabet with length at most `max_len`, length-lex.
    fn words_up_to(alphabet: Alphabet, max_len: usize) -> Vec<Word> {
        let mut out = vec![alphabet.empty_word()];
        let mut frontier = vec![alphabet.empty_word()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for word in &frontier {
                for letter in alphabet.letters() {
                    if alphabet.is_group() && word.last().is_some_and(|l| l.cancels(&letter)) {
                        continue;
                    }
                    next.push(word.append(letter));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    pub(crate) fn random_word(
        rng: &mut ChaCha8Rng,
        alphabet: Alphabet,
        max_len: usize,
    ) -> Word {
        let len = rng.gen_range(0..=max_len);
        let letters = alphabet.letters();
        let mut seq: Vec<Letter> = Vec::new();
        while seq.len() < len {
            let letter = letters[rng.gen_range(0..letters.len())];
            if alphabet.is_group() && seq.last().is_some_and(|l| l.cancels(&letter)) {
                continue;
            }
            seq.push(letter);
        }
        Word::from_reduced(seq, alphabet).unwrap()
    }

    pub(crate) fn random_function(
        rng: &mut ChaCha8Rng,
        alphabet: Alphabet,
        max_depth: usize,
        max_terms: usize,
    ) -> CountingFunction {
        let terms = rng.gen_range(1..=max_terms);
        let mut f = CountingFunction::zero(alphabet);
        for _ in 0..terms {
            let word = random_word(rng, alphabet, max_depth);
            let numer = loop {
                let n = rng.gen_range(-4i64..=4);
                if n != 0 {
                    break n;
                }
            };
            let denom = rng.gen_range(1i64..=4);
            f.add_term(word, rational(numer, denom));
        }
        f
    }

    #[test]
    fn evaluate_examples() {
        let m2 = monoid(2);
        let abab = w(m2, "abab");
        assert_eq!(
            CountingFunction::elementary(m2.empty_word()).evaluate(&abab),
            rational(4, 1)
        );
        let f = p(m2, "ab").scale(&rational(3, 1)).sub(&p(m2, "b"));
        assert_eq!(f.evaluate(&abab), rational(4, 1));
    }

    #[test]
    fn every_counting_function_vanishes_at_epsilon() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for alphabet in [monoid(2), group(2)] {
            for _ in 0..100 {
                let f = random_function(&mut rng, alphabet, 4, 6);
                assert_eq!(f.evaluate(&alphabet.empty_word()), Rational::zero());
            }
        }
    }

    #[test]
    fn arithmetic_examples() {
        let m2 = monoid(2);
        let f = p(m2, "ab").scale(&rational(2, 3));
        assert!(f.add(&f.scale(&rational(-1, 1))).is_zero());
        assert!(f.scale(&Rational::zero()).is_zero());
    }

    #[test]
    fn depth_examples() {
        let m2 = monoid(2);
        assert_eq!(p(m2, "ab").depth(), 2);
        assert_eq!(CountingFunction::elementary(m2.empty_word()).depth(), 1);
        assert_eq!(CountingFunction::zero(m2).depth(), 0);
        // p_eps - p_a - p_b is identically zero; elimination exposes that.
        let hidden_zero = CountingFunction::elementary(m2.empty_word())
            .sub(&p(m2, "a"))
            .sub(&p(m2, "b"));
        assert_eq!(hidden_zero.depth(), 0);
        assert!(hidden_zero.eliminate_epsilon().is_zero());
    }

    #[test]
    fn epsilon_identity_is_exact_pointwise() {
        for alphabet in [monoid(2), group(2)] {
            let mut sum = CountingFunction::zero(alphabet);
            for letter in alphabet.letters() {
                sum = sum.add(&CountingFunction::elementary(
                    Word::from_reduced(vec![letter], alphabet).unwrap(),
                ));
            }
            let eps = CountingFunction::elementary(alphabet.empty_word());
            for v in words_up_to(alphabet, 6) {
                assert_eq!(eps.evaluate(&v), sum.evaluate(&v));
            }
        }
    }

    #[test]
    fn left_relation_monoid_example() {
        let m2 = monoid(2);
        let expected = p(m2, "b").sub(&p(m2, "ab")).sub(&p(m2, "bb"));
        assert_eq!(left_relation(&w(m2, "b")), expected);
        assert_eq!(left_relation(&w(m2, "b")).support_size(), 3);
    }

    #[test]
    fn left_relation_group_example() {
        let g2 = group(2);
        // l_a excludes the extension by a^-1.
        let expected = p(g2, "a")
            .sub(&p(g2, "aa"))
            .sub(&p(g2, "ba"))
            .sub(&p(g2, "Ba"));
        assert_eq!(left_relation(&w(g2, "a")), expected);
        // For the empty word the sum ranges over the whole signed alphabet.
        assert_eq!(left_relation(&g2.empty_word()).support_size(), 1 + 4);
    }

    #[test]
    fn right_relation_examples() {
        let m2 = monoid(2);
        let expected = p(m2, "b").sub(&p(m2, "ba")).sub(&p(m2, "bb"));
        assert_eq!(right_relation(&w(m2, "b")), expected);
    }

    #[test]
    fn relations_equal_their_indicator_functions_exhaustively() {
        // l_w(v) = [v starts with w], r_w(v) = [v ends with w];
        // exhaustive over rank 2 up to length 6 in both modes.
        for alphabet in [monoid(2), group(2)] {
            let words = words_up_to(alphabet, 6);
            for pattern in &words {
                let l = left_relation(pattern);
                let r = right_relation(pattern);
                for v in &words {
                    let expect_l = i64::from(pattern.is_prefix_of(v));
                    let expect_r = i64::from(pattern.is_suffix_of(v));
                    assert_eq!(l.evaluate(v), rational(expect_l, 1), "l_{pattern} at {v}");
                    assert_eq!(r.evaluate(v), rational(expect_r, 1), "r_{pattern} at {v}");
                }
            }
        }
    }

    #[test]
    fn empty_right_relation_is_one_on_nonempty_words() {
        // r_eps(v) = [v ends with eps] = 1 for every v, including |v| >= 1.
        for alphabet in [monoid(2), group(2)] {
            let r = right_relation(&alphabet.empty_word());
            for v in words_up_to(alphabet, 6) {
                let expected = rational(1, 1);
                if v.is_empty() {
                    assert_eq!(r.evaluate(&v), Rational::zero());
                } else {
                    assert_eq!(r.evaluate(&v), expected);
                }
            }
        }
    }

    #[test]
    fn symmetry_relation_examples() {
        let g2 = group(2);
        assert_eq!(
            symmetry_relation(&w(g2, "a")),
            p(g2, "a").add(&p(g2, "A"))
        );
        assert_eq!(
            symmetry_relation(&w(g2, "ab")),
            p(g2, "ab").add(&p(g2, "BA"))
        );
    }

    #[test]
    fn symmetrized_extension_values_are_small() {
        // se_w(v) = [v starts with w] - [v ends with w^-1], always in {-1,0,1},
        // checked exhaustively at small lengths.
        let g2 = group(2);
        let words = words_up_to(g2, 6);
        for pattern in words.iter().filter(|p| !p.is_empty() && p.len() <= 3) {
            let se = symmetrized_extension(pattern);
            let inv = pattern.inverse();
            for v in &words {
                let expected =
                    i64::from(pattern.is_prefix_of(v)) - i64::from(inv.is_suffix_of(v));
                assert_eq!(se.evaluate(v), rational(expected, 1));
            }
        }
    }

    #[test]
    fn left_minus_right_has_small_values() {
        // delta_1 - delta_fin takes values in {-1, 0, 1}.
        let g2 = group(2);
        let a = w(g2, "a");
        let diff = left_relation(&a).sub(&right_relation(&a));
        for v in words_up_to(g2, 8) {
            let value = diff.evaluate(&v);
            assert!(value.abs() <= rational(1, 1), "|{value}| > 1 at {v}");
        }
    }

    #[test]
    fn shortest_support_word_reads_its_coefficient() {
        // Evaluating a function without an epsilon term at its shortest
        // support word returns exactly that word's coefficient.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for alphabet in [monoid(2), group(2)] {
            for _ in 0..200 {
                let f = random_function(&mut rng, alphabet, 4, 6)
                    .eliminate_epsilon();
                let Some(shortest) = f.shortest_support_word().cloned() else {
                    continue;
                };
                assert_eq!(f.evaluate(&shortest), f.coefficient(&shortest));
            }
        }
    }

    #[test]
    fn display_round_trip_format() {
        let g2 = group(2);
        let f = p(g2, "ab")
            .scale(&rational(3, 1))
            .sub(&p(g2, "aB").scale(&rational(1, 2)))
            .add(&CountingFunction::elementary(g2.empty_word()));
        assert_eq!(f.to_string(), "p[] + 3*p[ab] - 1/2*p[aB]");
        assert_eq!(CountingFunction::zero(g2).to_string(), "0");
    }

    #[test]
    fn power_precondition_error_is_exposed() {
        let g2 = group(2);
        assert_eq!(
            w(g2, "Aba").power(3),
            Err(WordError::NonCyclicallyReduced)
        );
    }

    proptest! {
        #[test]
        fn evaluation_is_linear(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let alphabet = if seed % 2 == 0 { monoid(2) } else { group(2) };
            let f = random_function(&mut rng, alphabet, 3, 4);
            let g = random_function(&mut rng, alphabet, 3, 4);
            let v = random_word(&mut rng, alphabet, 8);
            prop_assert_eq!(
                f.add(&g).evaluate(&v),
                f.evaluate(&v) + g.evaluate(&v)
            );
            let c = rational(-3, 2);
            prop_assert_eq!(f.scale(&c).evaluate(&v), f.evaluate(&v) * c);
        }
    }
}
