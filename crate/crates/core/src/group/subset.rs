use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::GroupRef;
use crate::error::{Error, Result};

/// A subset of a finite group, stored as a bitset over element indices.
#[derive(Clone)]
pub struct GroupSubset {
    group: GroupRef,
    members: FixedBitSet,
}

impl GroupSubset {
    pub fn new(group: &GroupRef, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let order = group.order();
        let mut members = FixedBitSet::with_capacity(order);
        for index in elements {
            if index >= order {
                return Err(Error::ElementOutOfRange { index, order });
            }
            members.insert(index);
        }
        Ok(Self { group: Arc::clone(group), members })
    }

    pub fn from_bits(group: &GroupRef, members: FixedBitSet) -> Self {
        assert_eq!(members.len(), group.order(), "bitset length must equal the group order");
        Self { group: Arc::clone(group), members }
    }

    pub fn empty(group: &GroupRef) -> Self {
        Self::from_bits(group, FixedBitSet::with_capacity(group.order()))
    }

    pub fn whole(group: &GroupRef) -> Self {
        let mut members = FixedBitSet::with_capacity(group.order());
        members.insert_range(..);
        Self::from_bits(group, members)
    }

    pub fn identity(group: &GroupRef) -> Self {
        let mut s = Self::empty(group);
        s.members.insert(group.identity());
        s
    }

    /// Elements satisfying `keep`.
    pub fn filter(group: &GroupRef, mut keep: impl FnMut(usize) -> bool) -> Self {
        let mut s = Self::empty(group);
        for x in 0..group.order() {
            if keep(x) {
                s.members.insert(x);
            }
        }
        s
    }

    #[inline]
    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    #[inline]
    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn insert(&mut self, x: usize) -> bool {
        !self.members.put(x)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members.ones().collect()
    }

    pub fn same_group(&self, other: &GroupSubset) -> bool {
        Arc::ptr_eq(&self.group, &other.group)
    }

    pub(crate) fn check_same_group(&self, other: &GroupSubset) -> Result<()> {
        if self.same_group(other) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn is_subset(&self, other: &GroupSubset) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Some element of `self` that is missing from `other`.
    pub fn first_outside(&self, other: &GroupSubset) -> Option<usize> {
        self.members.difference(&other.members).next()
    }

    pub fn union(&self, other: &GroupSubset) -> GroupSubset {
        let mut members = self.members.clone();
        members.union_with(&other.members);
        Self { group: Arc::clone(&self.group), members }
    }

    pub fn intersection(&self, other: &GroupSubset) -> GroupSubset {
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        Self { group: Arc::clone(&self.group), members }
    }

    /// `A⁻¹`.
    pub fn inverse(&self) -> GroupSubset {
        let mut out = Self::empty(&self.group);
        for x in self.iter() {
            out.members.insert(self.group.inv(x));
        }
        out
    }

    /// `g A g⁻¹`.
    pub fn conjugate(&self, g: usize) -> GroupSubset {
        let mut out = Self::empty(&self.group);
        for x in self.iter() {
            out.members.insert(self.group.conj(g, x));
        }
        out
    }

    /// `|A| / |G|` as a float; exact comparisons should use [`len`](Self::len).
    pub fn density(&self) -> f64 {
        self.len() as f64 / self.group.order() as f64
    }
}

impl PartialEq for GroupSubset {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other) && self.members == other.members
    }
}

impl Eq for GroupSubset {}

impl fmt::Debug for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.ones()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    #[test]
    fn basic_set_algebra() {
        let g = GroupSpec::Cyclic { n: 10 }.build().unwrap();
        let a = GroupSubset::new(&g, [1, 2, 3]).unwrap();
        let b = GroupSubset::new(&g, [3, 4]).unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a.union(&b).to_vec(), vec![1, 2, 3, 4]);
        assert_eq!(a.intersection(&b).to_vec(), vec![3]);
        assert_eq!(a.inverse().to_vec(), vec![7, 8, 9]);
        assert_eq!(a.first_outside(&b), Some(1));
        assert!(GroupSubset::new(&g, [10]).is_err());
    }

    #[test]
    fn subsets_of_distinct_groups_differ() {
        let g = GroupSpec::Cyclic { n: 4 }.build().unwrap();
        let h = GroupSpec::Cyclic { n: 4 }.build().unwrap();
        assert_ne!(GroupSubset::whole(&g), GroupSubset::whole(&h));
    }
}
