//! Finite groups given by complete multiplication tables.
//!
//! Elements are dense indices `0..order`. Every construction, whether from a
//! cyclic or Heisenberg spec or from a raw table, ends in
//! [`FiniteGroup::from_table`], which validates the group axioms before the
//! value is handed out. After construction a group is immutable and is shared
//! through [`GroupRef`].

mod catalog;
mod classes;
mod spec;
mod subgroups;
mod subset;

use std::fmt;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, TableViolation};

pub use classes::{conjugacy_classes, ConjugacyPartition};
pub use spec::GroupSpec;
pub use subgroups::{abelianization, enumerate_subgroups, Abelianization, Subgroup, SubgroupEmbedding};
pub use subset::GroupSubset;

/// Shared handle to an immutable group.
pub type GroupRef = Arc<FiniteGroup>;

/// Orders up to this bound get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 512;

/// Number of random triples checked for larger tables.
const SAMPLED_TRIPLES: usize = 200_000;

/// Default guard for subgroup enumeration and monomiality searches.
pub const DEFAULT_SUBGROUP_CAP: usize = 128;

pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    labels: Option<Vec<String>>,
    classes: OnceLock<ConjugacyPartition>,
}

impl FiniteGroup {
    /// Validates a raw multiplication table and builds the group.
    ///
    /// The checks run in a fixed order (shape, range, Latin rows, Latin
    /// columns, identity, associativity) and the first violation is returned.
    pub fn from_table(table: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(TableViolation::Empty.into());
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(TableViolation::Ragged { row, len: entries.len(), order }.into());
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(TableViolation::OutOfRange { row, col, value }.into());
                }
            }
        }
        let mut seen = vec![false; order];
        for (row, entries) in table.iter().enumerate() {
            seen.iter_mut().for_each(|s| *s = false);
            for &value in entries {
                if std::mem::replace(&mut seen[value], true) {
                    return Err(TableViolation::RowRepeat { row, value }.into());
                }
            }
        }
        for col in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for entries in table {
                let value = entries[col];
                if std::mem::replace(&mut seen[value], true) {
                    return Err(TableViolation::ColumnRepeat { col, value }.into());
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(TableViolation::NoIdentity)?;

        let mul: Vec<u32> = table.iter().flatten().map(|&v| v as u32).collect();
        let at = |x: usize, y: usize| mul[x * order + y] as usize;
        if order <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for x in 0..order {
                for y in 0..order {
                    let xy = at(x, y);
                    for z in 0..order {
                        if at(xy, z) != at(x, at(y, z)) {
                            return Err(TableViolation::NonAssociative { x, y, z }.into());
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(order as u64);
            for _ in 0..SAMPLED_TRIPLES {
                let (x, y, z) = (rng.random_range(0..order), rng.random_range(0..order), rng.random_range(0..order));
                if at(at(x, y), z) != at(x, at(y, z)) {
                    return Err(TableViolation::NonAssociative { x, y, z }.into());
                }
            }
        }

        // Latin rows guarantee a unique right inverse; associativity makes it two-sided.
        let inv = (0..order).map(|x| (0..order).find(|&y| at(x, y) == identity).unwrap() as u32).collect();

        if let Some(labels) = &labels {
            if labels.len() != order {
                return Err(crate::Error::InvalidSpec(format!(
                    "{} labels supplied for a group of order {order}",
                    labels.len()
                )));
            }
        }

        Ok(Self { order, mul, inv, identity, labels, classes: OnceLock::new() })
    }

    pub fn build(spec: &GroupSpec) -> Result<GroupRef> {
        spec.build()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `x y x⁻¹ y⁻¹`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))
    }

    pub fn pow(&self, x: usize, n: usize) -> usize {
        (0..n).fold(self.identity, |acc, _| self.mul(acc, x))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut n = 1;
        while y != self.identity {
            y = self.mul(y, x);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(labels) => labels[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Multiplication table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|x| (0..self.order).map(|y| self.mul(x, y)).collect()).collect()
    }

    /// Conjugacy classes, computed on first use.
    pub fn classes(&self) -> &ConjugacyPartition {
        self.classes.get_or_init(|| ConjugacyPartition::compute(self))
    }

    /// Members of the subgroup generated by `generators`.
    pub fn generated_by(&self, generators: &[usize]) -> FixedBitSet {
        let mut members = FixedBitSet::with_capacity(self.order);
        members.insert(self.identity);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in generators {
                let y = self.mul(x, g);
                if !members.put(y) {
                    frontier.push(y);
                }
            }
        }
        members
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .finish_non_exhaustive()
    }
}
