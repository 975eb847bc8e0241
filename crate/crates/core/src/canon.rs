//! Canonical forms and kernel certificates shared by the monoid, group and
//! Brooks canonicalizers.
//!
//! A canonicalization rewrites a function `f` as `f = base + expansion of
//! certificate`, where the base is supported on the mode's basis set and the
//! certificate is a formal combination of spanning relations of the kernel
//! of bounded equivalence. Exactness is a formal sparse-vector identity,
//! not merely a pointwise one, and is what every downstream decision
//! procedure rests on.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use crate::counting::{left_relation, right_relation, CountingFunction, Rational};
use crate::words::{Alphabet, Word};

/// Which basis a canonical form is expressed over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    /// Monoid basis: words that neither start nor end with the first
    /// generator (the empty word included).
    Monoid,
    /// Group basis: the corrected set that adds the inverse of the first
    /// generator and removes the second generator.
    Group,
    /// Brooks basis: one representative per `{w, w^-1}` class of the group
    /// basis extended by the first two generators, minus the empty word.
    Brooks,
}

/// A function whose support lies entirely in one of the basis sets.
///
/// For [`BasisKind::Brooks`] the stored coefficients are quasimorphism
/// coordinates keyed by class representatives; use
/// [`crate::brooks::BrooksFunction::from_canonical_base`] to reinterpret.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    kind: BasisKind,
    base: CountingFunction,
}

impl CanonicalForm {
    pub(crate) fn new(kind: BasisKind, base: CountingFunction) -> Self {
        CanonicalForm { kind, base }
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn base(&self) -> &CountingFunction {
        &self.base
    }

    pub fn into_base(self) -> CountingFunction {
        self.base
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero()
    }
}

/// Kind of extension relation referenced by a certificate item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    Left,
    Right,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationKind::Left => write!(f, "L"),
            RelationKind::Right => write!(f, "R"),
        }
    }
}

/// One `coefficient * relation(word)` entry of a kernel certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateItem {
    pub coefficient: Rational,
    pub kind: RelationKind,
    pub word: Word,
}

impl CertificateItem {
    pub fn expand(&self) -> CountingFunction {
        let relation = match self.kind {
            RelationKind::Left => left_relation(&self.word),
            RelationKind::Right => right_relation(&self.word),
        };
        relation.scale(&self.coefficient)
    }
}

/// A formal combination of left/right extension relations witnessing
/// membership of `f - base` in the kernel: `f = base + expand()` holds as an
/// identity of sparse vectors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KernelCertificate {
    items: Vec<CertificateItem>,
}

impl KernelCertificate {
    pub fn items(&self) -> &[CertificateItem] {
        &self.items
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    /// The formal sum of all items as a counting function.
    pub fn expand(&self, alphabet: Alphabet) -> CountingFunction {
        let mut total = CountingFunction::zero(alphabet);
        for item in &self.items {
            total = total.add(&item.expand());
        }
        total
    }

    /// Each extension relation has sup-norm exactly 1, so the certificate
    /// bounds the sup-norm of `f - base` by the sum of absolute
    /// coefficients.
    pub fn sup_norm_bound(&self) -> Rational {
        self.items.iter().map(|item| item.coefficient.abs()).sum()
    }
}

impl fmt::Display for KernelCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.items.is_empty() {
            return write!(f, "(empty)");
        }
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let symbol = match item.kind {
                RelationKind::Left => "l",
                RelationKind::Right => "r",
            };
            let letters = if item.word.is_empty() {
                String::new()
            } else {
                item.word.to_string()
            };
            write!(f, "{} * {symbol}[{letters}]", item.coefficient)?;
        }
        Ok(())
    }
}

/// Accumulates certificate coefficients during rewriting; zero sums drop
/// out and emission order is deterministic (kind, then word).
#[derive(Debug, Default)]
pub(crate) struct CertificateBuilder {
    entries: BTreeMap<(RelationKind, Word), Rational>,
}

impl CertificateBuilder {
    pub(crate) fn new() -> Self {
        CertificateBuilder::default()
    }

    pub(crate) fn add(&mut self, kind: RelationKind, word: Word, coefficient: Rational) {
        use num_traits::Zero;
        if coefficient.is_zero() {
            return;
        }
        let entry = self.entries.entry((kind, word));
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

    pub(crate) fn finish(self) -> KernelCertificate {
        KernelCertificate {
            items: self
                .entries
                .into_iter()
                .map(|((kind, word), coefficient)| CertificateItem {
                    coefficient,
                    kind,
                    word,
                })
                .collect(),
        }
    }
}
