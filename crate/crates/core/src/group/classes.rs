use super::{FiniteGroup, GroupRef, GroupSubset};

/// Partition of a group into conjugacy classes.
///
/// Class 0 is `{identity}`; the remaining classes are ordered by their
/// smallest element index, and each class lists its members in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyPartition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl ConjugacyPartition {
    pub(super) fn compute(group: &FiniteGroup) -> Self {
        let n = group.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        let order = std::iter::once(group.identity()).chain((0..n).filter(|&x| x != group.identity()));
        for x in order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = Vec::new();
            for g in 0..n {
                let y = group.conj(g, x);
                if class_of[y] == usize::MAX {
                    class_of[y] = id;
                    members.push(y);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        Self { class_of, classes }
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Smallest element of each class.
    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn class_subset(&self, group: &GroupRef, i: usize) -> GroupSubset {
        GroupSubset::new(group, self.classes[i].iter().copied()).expect("class members are in range")
    }
}

/// Conjugacy classes of `group` (cached on the group).
pub fn conjugacy_classes(group: &FiniteGroup) -> &ConjugacyPartition {
    group.classes()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    /// Brute-force oracle: `x ~ y` iff some `g` has `g x g⁻¹ = y`.
    fn brute_force_class_sizes(g: &FiniteGroup) -> Vec<usize> {
        let n = g.order();
        let mut seen = vec![false; n];
        let mut sizes = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut size = 0;
            for y in 0..n {
                if (0..n).any(|h| g.mul(g.mul(h, x), g.inv(h)) == y) {
                    seen[y] = true;
                    size += 1;
                }
            }
            sizes.push(size);
        }
        sizes.sort_unstable();
        sizes
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let g = GroupSpec::Cyclic { n: 9 }.build().unwrap();
        assert_eq!(g.classes().len(), 9);
        assert!(g.classes().sizes().iter().all(|&s| s == 1));
    }

    #[test]
    fn s3_has_classes_1_3_2() {
        let g = GroupSpec::symmetric(3).build().unwrap();
        let classes = g.classes();
        assert_eq!(classes.class(0), &[g.identity()]);
        let mut sizes = classes.sizes();
        assert_eq!(brute_force_class_sizes(&g), {
            sizes.sort_unstable();
            sizes.clone()
        });
        assert_eq!(sizes, vec![1, 2, 3]);
        // classes are ordered by smallest representative: transpositions come
        // before 3-cycles in lexicographic permutation order
        assert_eq!(classes.sizes(), vec![1, 3, 2]);
    }

    #[test]
    fn heisenberg_three_has_eleven_classes() {
        let g = GroupSpec::Heisenberg { p: 3 }.build().unwrap();
        assert_eq!(g.classes().len(), 11);
        assert_eq!(brute_force_class_sizes(&g).len(), 11);
    }

    #[test]
    fn class_sizes_divide_order() {
        for spec in [GroupSpec::Dihedral { order: 12 }, GroupSpec::Quaternion8, GroupSpec::sl2_3()] {
            let g = spec.build().unwrap();
            let sizes = g.classes().sizes();
            assert_eq!(sizes.iter().sum::<usize>(), g.order());
            assert!(sizes.iter().all(|s| g.order() % s == 0));
            assert_eq!(brute_force_class_sizes(&g), {
                let mut s = sizes.clone();
                s.sort_unstable();
                s
            });
        }
    }
}
