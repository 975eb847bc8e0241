//! Canonicalization of monoid counting functions.
//!
//! Basis: classes of `p_w` for words `w` that neither start nor end with the
//! first generator `a_1` (the empty word included). Any other elementary
//! function is rewritten by peeling boundary `a_1` letters with left/right
//! extension relations; each step strictly lowers the boundary norm
//! `||w|| = k + m` of every produced term, so the worklist terminates. The
//! relations peeled off along the way form the kernel certificate:
//! `f = base + certificate expansion` exactly.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::canon::{
    BasisKind, CanonicalForm, CertificateBuilder, KernelCertificate, RelationKind,
};
use crate::counting::{left_relation, right_relation, CountingFunction, Rational};
use crate::words::{Letter, Mode, Word};

/// The boundary norm `||w||`: with `w = a_1^k v a_1^m` (`v` neither starting
/// nor ending in `a_1`) this is `k + m`; a pure power `a_1^d` has norm `d`.
pub fn monoid_norm(word: &Word) -> usize {
    assert_eq!(word.alphabet().mode(), Mode::Monoid);
    let a1 = Letter::positive(1);
    let letters = word.letters();
    let leading = letters.iter().take_while(|&&l| l == a1).count();
    if leading == letters.len() {
        return leading;
    }
    let trailing = letters.iter().rev().take_while(|&&l| l == a1).count();
    leading + trailing
}

/// Membership in the monoid basis set: the empty word, or a word that
/// neither starts nor ends with `a_1`. Equivalent to `monoid_norm(w) == 0`.
pub fn in_basis(word: &Word) -> bool {
    assert_eq!(word.alphabet().mode(), Mode::Monoid);
    let a1 = Letter::positive(1);
    word.first() != Some(a1) && word.last() != Some(a1)
}

struct Worklist {
    pending: BTreeMap<(Reverse<usize>, Word), Rational>,
    base: CountingFunction,
}

impl Worklist {
    fn push(&mut self, word: Word, coefficient: Rational) {
        if coefficient.is_zero() {
            return;
        }
        if in_basis(&word) {
            self.base.add_term(word, coefficient);
            return;
        }
        let key = (Reverse(monoid_norm(&word)), word);
        let entry = self.pending.entry(key);
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
}

/// Rewrite `f` over the monoid basis, returning the canonical form and an
/// exact kernel certificate (`f = base + certificate`).
///
/// Terms are processed in strictly decreasing boundary norm (ties length-lex)
/// so certificates are deterministic. A term `x * p_w` with `w = a_1 u` is
/// replaced by `x * (l_u + p_w) - x * l_u`; the expansion of `l_u + p_w` is
/// exactly `p_u` minus the non-`a_1` left extensions of `u`, all of strictly
/// smaller norm. Pure powers `a_1^d` take the left rule first; words with no
/// leading `a_1` use the mirrored right rule.
pub fn canonicalize(f: &CountingFunction) -> (CanonicalForm, KernelCertificate) {
    let alphabet = f.alphabet();
    assert_eq!(alphabet.mode(), Mode::Monoid);
    let a1 = Letter::positive(1);
    let mut worklist = Worklist {
        pending: BTreeMap::new(),
        base: CountingFunction::zero(alphabet),
    };
    let mut certificate = CertificateBuilder::new();
    for (word, coefficient) in f.terms() {
        worklist.push(word.clone(), coefficient.clone());
    }

    let mut previous_norm = usize::MAX;
    while let Some(((Reverse(norm), word), coefficient)) = worklist.pending.pop_first() {
        debug_assert!(norm <= previous_norm, "worklist norm must not increase");
        debug_assert!(norm > 0, "norm-0 words are basis words");
        previous_norm = norm;

        let (kind, boundary) = if word.first() == Some(a1) {
            (RelationKind::Left, word.drop_first())
        } else {
            (RelationKind::Right, word.drop_last())
        };
        let relation = match kind {
            RelationKind::Left => left_relation(&boundary),
            RelationKind::Right => right_relation(&boundary),
        };
        // x * p_w = x * (relation + p_w) - x * relation, and relation + p_w
        // drops the p_w term entirely.
        let replacement = relation.add(&CountingFunction::elementary(word.clone()));
        debug_assert!(replacement.coefficient(&word).is_zero());
        for (produced, produced_coefficient) in replacement.terms() {
            debug_assert!(
                in_basis(produced) || monoid_norm(produced) < norm,
                "rewrite must strictly decrease the norm: {word} -> {produced}"
            );
            worklist.push(produced.clone(), produced_coefficient * &coefficient);
        }
        certificate.add(kind, boundary, -coefficient);
    }

    (
        CanonicalForm::new(BasisKind::Monoid, worklist.base),
        certificate.finish(),
    )
}

/// Two monoid counting functions differ by a bounded function exactly when
/// the canonical form of their difference vanishes.
pub fn equivalent(f: &CountingFunction, g: &CountingFunction) -> bool {
    assert_eq!(f.alphabet(), g.alphabet());
    is_bounded(&f.sub(g))
}

/// A monoid counting function is bounded exactly when its canonical base is
/// the zero function.
pub fn is_bounded(f: &CountingFunction) -> bool {
    canonicalize(f).0.is_zero()
}
