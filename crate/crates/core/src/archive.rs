//! The GSEMO population: a set of mutually non-dominating solutions.

use crate::benchmark::{dominance, Dominance, ObjectiveKey, ProblemParams};
use crate::genome::BitString;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArchiveEntry {
    pub genome: BitString,
    pub key: ObjectiveKey,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InsertOutcome {
    pub accepted: bool,
    /// Keys of the entries evicted by the new solution, in key order.
    pub removed: Vec<ObjectiveKey>,
}

/// Entries are kept sorted by [`ObjectiveKey`]'s total order, which fixes the
/// iteration order and therefore parent selection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Archive {
    params: ProblemParams,
    entries: Vec<ArchiveEntry>,
}

impl Archive {
    pub fn new(params: ProblemParams) -> Self {
        Self {
            params,
            entries: Vec::new(),
        }
    }

    pub fn params(&self) -> &ProblemParams {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[ArchiveEntry] {
        &self.entries
    }

    pub fn get(&self, index: usize) -> &ArchiveEntry {
        &self.entries[index]
    }

    pub fn contains_key(&self, key: &ObjectiveKey) -> bool {
        self.entries.binary_search_by(|e| e.key.cmp(key)).is_ok()
    }

    /// Rejects `genome` if some entry strongly dominates it; otherwise drops
    /// every entry it weakly dominates (an equal key included) and inserts it.
    pub fn try_insert(&mut self, genome: BitString, key: ObjectiveKey) -> InsertOutcome {
        debug_assert_eq!(genome.len(), self.params.n());
        debug_assert_eq!(key.len(), self.params.k());

        if self
            .entries
            .iter()
            .any(|e| dominance(&e.key, &key) == Dominance::FirstDominates)
        {
            return InsertOutcome::default();
        }

        let mut removed = Vec::new();
        self.entries.retain(|e| {
            let evict = dominance(&key, &e.key).first_weakly_dominates();
            if evict {
                removed.push(e.key.clone());
            }
            !evict
        });
        let at = self
            .entries
            .binary_search_by(|e| e.key.cmp(&key))
            .unwrap_err();
        debug_assert!(self
            .entries
            .iter()
            .all(|e| dominance(&e.key, &key) == Dominance::Incomparable));
        self.entries.insert(at, ArchiveEntry { genome, key });
        InsertOutcome {
            accepted: true,
            removed,
        }
    }

    /// True iff every key of `front` is present.
    pub fn covers_front<'a, I>(&self, front: I) -> bool
    where
        I: IntoIterator<Item = &'a ObjectiveKey>,
    {
        front.into_iter().all(|k| self.contains_key(k))
    }

    pub fn is_pairwise_non_dominating(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, a)| {
            self.entries[i + 1..]
                .iter()
                .all(|b| dominance(&a.key, &b.key) == Dominance::Incomparable)
        })
    }

    pub fn keys(&self) -> impl Iterator<Item = &ObjectiveKey> {
        self.entries.iter().map(|e| &e.key)
    }
}
