//! Shared helpers for the unit and integration test suites.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::counting::{rational, CountingFunction};
use crate::words::{Alphabet, Letter, Word};

/// Every word of the alphabet with length at most `max_len`, in length-lex
/// order (group mode yields only reduced words).
pub fn words_up_to(alphabet: Alphabet, max_len: usize) -> Vec<Word> {
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

/// A uniformly random (reduced) word of length at most `max_len`.
pub fn random_word(rng: &mut ChaCha8Rng, alphabet: Alphabet, max_len: usize) -> Word {
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

/// A random counting function with small rational coefficients.
pub fn random_function(
    rng: &mut ChaCha8Rng,
    alphabet: Alphabet,
    max_depth: usize,
    max_terms: usize,
) -> CountingFunction {
    let terms = rng.gen_range(1..=max_terms);
    let mut parts = Vec::new();
    for _ in 0..terms {
        let word = random_word(rng, alphabet, max_depth);
        let numer = loop {
            let n = rng.gen_range(-4i64..=4);
            if n != 0 {
                break n;
            }
        };
        let denom = rng.gen_range(1i64..=4);
        parts.push((word, rational(numer, denom)));
    }
    CountingFunction::from_terms(alphabet, parts)
}
