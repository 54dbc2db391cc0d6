use std::collections::HashSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::{FiniteGroup, GroupRef, GroupSubset};
use crate::error::{Error, Result};

/// A subgroup together with a small generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elements: GroupSubset,
    index_in_parent: usize,
    generators: Vec<usize>,
}

impl Subgroup {
    /// Subgroup generated by `generators`.
    pub fn generated(group: &GroupRef, generators: &[usize]) -> Result<Self> {
        for &index in generators {
            if index >= group.order() {
                return Err(Error::ElementOutOfRange { index, order: group.order() });
            }
        }
        let bits = group.generated_by(generators);
        let elements = GroupSubset::from_bits(group, bits);
        let index_in_parent = group.order() / elements.len();
        Ok(Self { elements, index_in_parent, generators: generators.to_vec() })
    }

    /// Interprets a subset as a subgroup, failing if it is not closed.
    pub fn from_subset(subset: &GroupSubset) -> Option<Self> {
        let g = subset.group();
        if !subset.contains(g.identity()) {
            return None;
        }
        let closed =
            subset.iter().all(|x| subset.contains(g.inv(x)) && subset.iter().all(|y| subset.contains(g.mul(x, y))));
        closed.then(|| Self {
            elements: subset.clone(),
            index_in_parent: g.order() / subset.len(),
            generators: subset.to_vec(),
        })
    }

    pub fn whole(group: &GroupRef) -> Self {
        Self { elements: GroupSubset::whole(group), index_in_parent: 1, generators: (0..group.order()).collect() }
    }

    pub fn elements(&self) -> &GroupSubset {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_in_parent(&self) -> usize {
        self.index_in_parent
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_normal(&self) -> bool {
        let g = self.elements.group();
        (0..g.order()).all(|h| self.elements.iter().all(|x| self.elements.contains(g.conj(h, x))))
    }

    /// The subgroup as a standalone group on indices `0..|H|`, listed in
    /// ascending parent order, with the map back into the parent.
    pub fn embed(&self) -> SubgroupEmbedding {
        let parent = self.elements.group();
        let to_parent = self.elements.to_vec();
        let mut to_local = vec![usize::MAX; parent.order()];
        for (i, &x) in to_parent.iter().enumerate() {
            to_local[x] = i;
        }
        let table: Vec<Vec<usize>> =
            to_parent.iter().map(|&x| to_parent.iter().map(|&y| to_local[parent.mul(x, y)]).collect()).collect();
        let labels = to_parent.iter().map(|&x| parent.label(x)).collect();
        let group = FiniteGroup::from_table(&table, Some(labels)).expect("a closed subset of a group is a group");
        SubgroupEmbedding { subgroup: self.clone(), group: Arc::new(group), to_parent, to_local }
    }
}

/// A subgroup realised as its own [`FiniteGroup`].
#[derive(Clone, Debug)]
pub struct SubgroupEmbedding {
    pub subgroup: Subgroup,
    pub group: GroupRef,
    pub to_parent: Vec<usize>,
    /// `usize::MAX` for parent elements outside the subgroup.
    pub to_local: Vec<usize>,
}

impl SubgroupEmbedding {
    pub fn parent(&self) -> &GroupRef {
        self.subgroup.elements().group()
    }

    pub fn local(&self, parent_element: usize) -> Option<usize> {
        let i = self.to_local[parent_element];
        (i != usize::MAX).then_some(i)
    }

    /// Pulls a parent subset back to the subgroup (`A ∩ H`).
    pub fn restrict(&self, subset: &GroupSubset) -> GroupSubset {
        GroupSubset::filter(&self.group, |i| subset.contains(self.to_parent[i]))
    }

    /// Pushes a subset of the subgroup into the parent.
    pub fn extend(&self, subset: &GroupSubset) -> GroupSubset {
        GroupSubset::new(self.parent(), subset.iter().map(|i| self.to_parent[i]))
            .expect("embedded elements are in range")
    }
}

/// Every subgroup of `group`, sorted by order and then by bitset.
///
/// Seeds with the cyclic subgroups and closes under pairwise joins until no
/// new subgroup appears.
pub fn enumerate_subgroups(group: &GroupRef, max_order_cap: usize) -> Result<Vec<Subgroup>> {
    if group.order() > max_order_cap {
        return Err(Error::CapExceeded { order: group.order(), cap: max_order_cap });
    }
    let mut found: Vec<Subgroup> = Vec::new();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    for x in 0..group.order() {
        let h = Subgroup::generated(group, &[x])?;
        if seen.insert(h.elements.bits().clone()) {
            found.push(h);
        }
    }
    let mut next = 0;
    // worklist: each newly found subgroup is joined with everything before it
    while next < found.len() {
        let current = found[next].clone();
        for j in 0..next {
            let other = &found[j];
            if current.elements.is_subset(&other.elements) || other.elements.is_subset(&current.elements) {
                continue;
            }
            let mut gens = current.generators.clone();
            gens.extend(other.generators.iter().copied());
            gens.sort_unstable();
            gens.dedup();
            let joined = Subgroup::generated(group, &gens)?;
            if seen.insert(joined.elements.bits().clone()) {
                found.push(joined);
            }
        }
        next += 1;
    }
    found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.to_vec().cmp(&b.elements.to_vec())));
    Ok(found)
}

/// Commutator subgroup, quotient and projection.
#[derive(Clone, Debug)]
pub struct Abelianization {
    pub commutator: Subgroup,
    pub quotient: GroupRef,
    /// `projection[x]` is the coset of `x`; cosets are numbered by their
    /// smallest element.
    pub projection: Vec<usize>,
}

pub fn abelianization(group: &GroupRef) -> Abelianization {
    let n = group.order();
    let mut commutators: Vec<usize> =
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| group.commutator(x, y)).collect();
    commutators.sort_unstable();
    commutators.dedup();
    let commutator = Subgroup::generated(group, &commutators).expect("commutators are in range");

    let mut projection = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    for x in 0..n {
        if projection[x] != usize::MAX {
            continue;
        }
        let coset = representatives.len();
        representatives.push(x);
        for k in commutator.elements().iter() {
            projection[group.mul(x, k)] = coset;
        }
    }
    let table: Vec<Vec<usize>> = representatives
        .iter()
        .map(|&x| representatives.iter().map(|&y| projection[group.mul(x, y)]).collect())
        .collect();
    let labels = representatives.iter().map(|&x| format!("{}[G,G]", group.label(x))).collect();
    let quotient =
        Arc::new(FiniteGroup::from_table(&table, Some(labels)).expect("quotient by a normal subgroup is a group"));
    Abelianization { commutator, quotient, projection }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn subgroup_count(spec: GroupSpec) -> usize {
        let g = spec.build().unwrap();
        enumerate_subgroups(&g, 128).unwrap().len()
    }

    /// Independent oracle: test every subset containing the identity for closure.
    fn brute_force_subgroup_count(spec: GroupSpec) -> usize {
        let g = spec.build().unwrap();
        let n = g.order();
        assert!(n <= 12);
        (0u32..(1 << n))
            .filter(|mask| mask & (1 << g.identity()) != 0)
            .filter(|&mask| {
                let has = |x: usize| mask & (1 << x) != 0;
                (0..n).filter(|&x| has(x)).all(|x| (0..n).filter(|&y| has(y)).all(|y| has(g.mul(x, y))))
            })
            .count()
    }

    #[test]
    fn prime_cyclic_has_two_subgroups() {
        assert_eq!(subgroup_count(GroupSpec::Cyclic { n: 7 }), 2);
    }

    #[test]
    fn s3_and_q8_have_six_subgroups() {
        assert_eq!(subgroup_count(GroupSpec::symmetric(3)), 6);
        assert_eq!(brute_force_subgroup_count(GroupSpec::symmetric(3)), 6);
        assert_eq!(subgroup_count(GroupSpec::Quaternion8), 6);
        assert_eq!(brute_force_subgroup_count(GroupSpec::Quaternion8), 6);
    }

    #[test]
    fn enumeration_matches_brute_force_on_small_groups() {
        for spec in [
            GroupSpec::Dihedral { order: 8 },
            GroupSpec::Dihedral { order: 12 },
            GroupSpec::Cyclic { n: 12 },
            GroupSpec::alternating(4),
            GroupSpec::Product { factors: vec![GroupSpec::Cyclic { n: 2 }, GroupSpec::Cyclic { n: 6 }] },
        ] {
            assert_eq!(subgroup_count(spec.clone()), brute_force_subgroup_count(spec));
        }
    }

    #[test]
    fn enumeration_is_sorted_and_bracketed() {
        let g = GroupSpec::Dihedral { order: 12 }.build().unwrap();
        let subs = enumerate_subgroups(&g, 128).unwrap();
        assert_eq!(subs.first().unwrap().order(), 1);
        assert_eq!(subs.last().unwrap().order(), 12);
        for pair in subs.windows(2) {
            assert!(pair[0].order() <= pair[1].order());
        }
        for h in &subs {
            assert!(Subgroup::from_subset(h.elements()).is_some());
            assert_eq!(h.index_in_parent() * h.order(), g.order());
        }
        assert_eq!(enumerate_subgroups(&g, 128).unwrap(), subs);
    }

    #[test]
    fn cap_is_enforced() {
        let g = GroupSpec::Cyclic { n: 200 }.build().unwrap();
        assert!(matches!(enumerate_subgroups(&g, 128).unwrap_err(), Error::CapExceeded { order: 200, cap: 128 }));
    }

    #[test]
    fn abelianization_examples() {
        let c = GroupSpec::Cyclic { n: 6 }.build().unwrap();
        let ab = abelianization(&c);
        assert_eq!(ab.commutator.order(), 1);
        assert_eq!(ab.quotient.order(), 6);

        let s3 = GroupSpec::symmetric(3).build().unwrap();
        let ab = abelianization(&s3);
        assert_eq!(ab.commutator.order(), 3);
        assert_eq!(ab.quotient.order(), 2);

        let h = GroupSpec::Heisenberg { p: 3 }.build().unwrap();
        let ab = abelianization(&h);
        assert_eq!(ab.commutator.order(), 3);
        assert_eq!(ab.quotient.order(), 9);
        // commutator subgroup of the Heisenberg group is its centre: (0,0,c)
        assert_eq!(ab.commutator.elements().to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn projection_is_a_homomorphism_with_commutator_kernel() {
        for spec in [GroupSpec::Dihedral { order: 16 }, GroupSpec::sl2_3(), GroupSpec::Quaternion8] {
            let g = spec.build().unwrap();
            let ab = abelianization(&g);
            for x in 0..g.order() {
                for y in 0..g.order() {
                    assert_eq!(ab.projection[g.mul(x, y)], ab.quotient.mul(ab.projection[x], ab.projection[y]));
                }
                let in_kernel = ab.projection[x] == ab.quotient.identity();
                assert_eq!(in_kernel, ab.commutator.elements().contains(x));
            }
            assert!(ab.quotient.is_abelian());
        }
    }

    #[test]
    fn embedding_round_trip() {
        let g = GroupSpec::symmetric(4).build().unwrap();
        let subs = enumerate_subgroups(&g, 128).unwrap();
        let v4 = subs.iter().find(|h| h.order() == 4 && h.is_normal()).unwrap();
        let emb = v4.embed();
        assert_eq!(emb.group.order(), 4);
        assert!(emb.group.is_abelian());
        let all = GroupSubset::whole(&emb.group);
        assert_eq!(&emb.extend(&all), v4.elements());
        assert_eq!(emb.restrict(v4.elements()), all);
    }
}
