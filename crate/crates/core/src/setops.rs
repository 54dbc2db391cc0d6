//! Product sets, growth profiles, set predicates and the Ruzsa covering
//! argument for small tripling.

use serde::{Deserialize, Serialize};

use crate::exact::{self, Q};
use crate::group::{GroupRef, GroupSubset};
use crate::{Error, Result};

/// `A·B = {ab : a ∈ A, b ∈ B}`.
pub fn product_set(a: &GroupSubset, b: &GroupSubset) -> Result<GroupSubset> {
    a.check_same_group(b)?;
    Ok(product_unchecked(a, b))
}

fn product_unchecked(a: &GroupSubset, b: &GroupSubset) -> GroupSubset {
    let g = a.group();
    let mut out = GroupSubset::empty(g);
    let right = b.to_vec();
    for x in a.iter() {
        for &y in &right {
            out.insert(g.mul(x, y));
        }
    }
    out
}

/// `Aⁿ` for `n ≥ 1`.
pub fn power(a: &GroupSubset, n: usize) -> GroupSubset {
    assert!(n >= 1, "power needs n >= 1");
    let mut acc = a.clone();
    for _ in 1..n {
        acc = product_unchecked(a, &acc);
    }
    acc
}

/// `A A⁻¹`.
pub fn difference_set(a: &GroupSubset) -> GroupSubset {
    product_unchecked(a, &a.inverse())
}

/// Sizes `|Aⁿ|` for `n = 1..=n_max`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthProfile {
    pub base_size: usize,
    /// `sizes[n - 1] = |Aⁿ|`.
    pub sizes: Vec<usize>,
    /// First `n` with `Aⁿ = Aⁿ⁺¹`, when reached within the window.
    pub saturated_at: Option<usize>,
    /// Max over `2 ≤ n ≤ n_max` of `log(|Aⁿ|/|A|) / log n`.
    pub fitted_d: f64,
    pub witness_n: Option<usize>,
}

impl GrowthProfile {
    /// `|Aⁿ|`, extrapolating past the window once saturated.
    pub fn size(&self, n: usize) -> Option<usize> {
        assert!(n >= 1);
        match self.sizes.get(n - 1) {
            Some(&s) => Some(s),
            None => self.saturated_at.map(|_| *self.sizes.last().unwrap()),
        }
    }

    pub fn n_max(&self) -> usize {
        self.sizes.len()
    }
}

/// Measures `|Aⁿ|` up to `n_max` and fits the polynomial growth exponent.
///
/// When `A` contains the identity each step only multiplies the frontier
/// `Aⁿ \ Aⁿ⁻¹` by `A`, since `Aⁿ⁺¹ = Aⁿ ∪ A·(Aⁿ \ Aⁿ⁻¹)`.
pub fn growth_profile(a: &GroupSubset, n_max: usize) -> Result<GrowthProfile> {
    if a.is_empty() {
        return Err(Error::Parameter("growth profile of the empty set".into()));
    }
    if n_max == 0 {
        return Err(Error::NonPositive("n_max"));
    }
    let g = a.group();
    let with_identity = a.contains(g.identity());
    let generators = a.to_vec();

    let mut sizes = vec![a.len()];
    let mut saturated_at = None;
    let mut current = a.clone();
    let mut frontier = a.to_vec();
    while sizes.len() < n_max {
        let n = sizes.len();
        let next = if with_identity {
            let mut next = current.clone();
            let mut new_frontier = Vec::new();
            for &a_elem in &generators {
                for &f in &frontier {
                    let y = g.mul(a_elem, f);
                    if next.insert(y) {
                        new_frontier.push(y);
                    }
                }
            }
            frontier = new_frontier;
            next
        } else {
            product_unchecked(a, &current)
        };
        if next == current {
            saturated_at = Some(n);
            let s = current.len();
            sizes.resize(n_max, s);
            break;
        }
        sizes.push(next.len());
        current = next;
    }
    // The window may end exactly at the saturation point; probe one step further.
    if saturated_at.is_none() && sizes.len() == n_max {
        let n = n_max;
        let next = product_unchecked(a, &current);
        if next == current {
            saturated_at = Some(n);
        }
    }

    let base = a.len() as f64;
    let mut fitted_d = 0.0;
    let mut witness_n = None;
    for n in 2..=n_max {
        let d = (sizes[n - 1] as f64 / base).ln() / (n as f64).ln();
        if witness_n.is_none() || d > fitted_d {
            fitted_d = d;
            witness_n = Some(n);
        }
    }
    Ok(GrowthProfile { base_size: a.len(), sizes, saturated_at, fitted_d, witness_n })
}

/// Symmetry, normality and small-doubling data for a set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SetReport {
    pub size: usize,
    pub symmetric: bool,
    /// Element `x ∈ A` with `x⁻¹ ∉ A`.
    pub symmetric_witness: Option<usize>,
    pub contains_identity: bool,
    pub normal: bool,
    /// Element `x ∈ G` with `xA ≠ Ax`.
    pub normal_witness: Option<usize>,
    /// `|A²| / |A|`.
    #[serde(with = "exact::rational")]
    pub doubling: Q,
    /// `|A³| / |A|`.
    #[serde(with = "exact::rational")]
    pub tripling: Q,
}

pub fn set_predicates(a: &GroupSubset) -> Result<SetReport> {
    if a.is_empty() {
        return Err(Error::Parameter("predicates of the empty set".into()));
    }
    let g = a.group();
    let symmetric_witness = a.iter().find(|&x| !a.contains(g.inv(x)));

    // xA = Ax for every x
    let translate_witness = (0..g.order()).find(|&x| {
        let left = GroupSubset::new(g, a.iter().map(|y| g.mul(x, y))).unwrap();
        let right = GroupSubset::new(g, a.iter().map(|y| g.mul(y, x))).unwrap();
        left != right
    });
    // union of conjugacy classes
    let classes = g.classes();
    let union_of_classes = a.iter().all(|x| classes.class(classes.class_of(x)).iter().all(|&y| a.contains(y)));
    assert_eq!(translate_witness.is_none(), union_of_classes, "translate and conjugacy-class normality tests disagree");

    let a2 = product_unchecked(a, a);
    let a3 = product_unchecked(a, &a2);
    let size = a.len() as i64;
    Ok(SetReport {
        size: a.len(),
        symmetric: symmetric_witness.is_none(),
        symmetric_witness,
        contains_identity: a.contains(g.identity()),
        normal: translate_witness.is_none(),
        normal_witness: translate_witness,
        doubling: Q::new(a2.len() as i64, size),
        tripling: Q::new(a3.len() as i64, size),
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NormalizeOptions {
    pub symmetrize: bool,
    pub add_identity: bool,
    pub conjugation_close: bool,
}

impl NormalizeOptions {
    pub fn all() -> Self {
        Self { symmetrize: true, add_identity: true, conjugation_close: true }
    }
}

/// Smallest superset of `s` with the requested closure properties.
pub fn normalize_set(s: &GroupSubset, options: NormalizeOptions) -> GroupSubset {
    let g = s.group();
    let mut out = s.clone();
    if options.add_identity {
        out.insert(g.identity());
    }
    if options.conjugation_close {
        let classes = g.classes();
        for x in s.iter() {
            for &y in classes.class(classes.class_of(x)) {
                out.insert(y);
            }
        }
    }
    // inverse of a union of classes is a union of classes, so one pass suffices
    if options.symmetrize {
        out = out.union(&out.inverse());
    }
    out
}

/// Declarative set description: explicit elements, or generators closed
/// under the requested operations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum SetSpec {
    Elements {
        elements: Vec<usize>,
    },
    Generators {
        generators: Vec<usize>,
        #[serde(default)]
        symmetrize: bool,
        #[serde(default)]
        add_identity: bool,
        #[serde(default)]
        conjugation_close: bool,
    },
}

impl SetSpec {
    pub fn build(&self, group: &GroupRef) -> Result<GroupSubset> {
        match self {
            SetSpec::Elements { elements } => GroupSubset::new(group, elements.iter().copied()),
            SetSpec::Generators { generators, symmetrize, add_identity, conjugation_close } => {
                let base = GroupSubset::new(group, generators.iter().copied())?;
                let options = NormalizeOptions {
                    symmetrize: *symmetrize,
                    add_identity: *add_identity,
                    conjugation_close: *conjugation_close,
                };
                Ok(normalize_set(&base, options))
            }
        }
    }
}

/// Output of the greedy maximal `A`-separated set construction.
#[derive(Clone, Debug, Serialize)]
pub struct CoveringCertificate {
    pub cover_set: Vec<usize>,
    pub verified_range: usize,
    /// Translates `xA`, `x ∈ X`, are pairwise disjoint.
    pub separation_ok: bool,
    /// `AA⁻¹AA⁻¹ ⊆ X·A·A⁻¹`.
    pub inclusion_ok: bool,
    /// `X ⊆ AA⁻¹AA⁻¹`.
    pub cover_inside_ok: bool,
    /// `|X|·|A| ≤ |AA⁻¹AA⁻¹|`.
    pub counting_ok: bool,
    pub a_size: usize,
    pub difference_size: usize,
    pub double_difference_size: usize,
}

impl CoveringCertificate {
    pub fn valid(&self) -> bool {
        self.separation_ok && self.inclusion_ok && self.cover_inside_ok && self.counting_ok
    }
}

/// Greedy maximal `A`-separated subset of `AA⁻¹AA⁻¹`, scanned in ascending
/// element order, with every certificate property checked exactly.
pub fn ruzsa_cover(a: &GroupSubset) -> Result<CoveringCertificate> {
    if a.is_empty() {
        return Err(Error::Parameter("ruzsa cover of the empty set".into()));
    }
    let g = a.group();
    let d = difference_set(a);
    let dd = product_unchecked(&d, &d);
    let a_elems = a.to_vec();

    let mut covered = GroupSubset::empty(g);
    let mut cover = Vec::new();
    for x in dd.iter() {
        if a_elems.iter().all(|&y| !covered.contains(g.mul(x, y))) {
            for &y in &a_elems {
                covered.insert(g.mul(x, y));
            }
            cover.push(x);
        }
    }

    // Re-verify independently of the greedy bookkeeping.
    let translates: Vec<GroupSubset> =
        cover.iter().map(|&x| GroupSubset::new(g, a_elems.iter().map(|&y| g.mul(x, y))).unwrap()).collect();
    let separation_ok =
        translates.iter().enumerate().all(|(i, t)| translates[..i].iter().all(|s| s.intersection(t).is_empty()));
    let cover_set = GroupSubset::new(g, cover.iter().copied())?;
    let cover_inside_ok = cover_set.is_subset(&dd);
    let inclusion_ok = dd.is_subset(&product_unchecked(&cover_set, &d));
    let counting_ok = cover.len() * a.len() <= dd.len();

    Ok(CoveringCertificate {
        cover_set: cover,
        verified_range: 2,
        separation_ok,
        inclusion_ok,
        cover_inside_ok,
        counting_ok,
        a_size: a.len(),
        difference_size: d.len(),
        double_difference_size: dd.len(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AppendixStep {
    pub n: usize,
    /// `|(AA⁻¹)ⁿ|`
    pub difference_power: usize,
    /// `|Xⁿ⁻¹ A A⁻¹|`
    pub covering_power: usize,
    pub inclusion_holds: bool,
    /// `|Aⁿ|`
    pub measured: usize,
    /// `|Xⁿ⁻¹| · |AA⁻¹|`
    pub implied_bound: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AppendixReport {
    #[serde(with = "exact::rational")]
    pub tripling: Q,
    /// `|AA⁻¹AA⁻¹| / |A|`, the measured constant behind `K^{O(1)}`.
    #[serde(with = "exact::rational")]
    pub double_difference_ratio: Q,
    pub cover_size: usize,
    pub certificate: CoveringCertificate,
    pub cover_growth: GrowthProfile,
    pub steps: Vec<AppendixStep>,
    pub all_inclusions_hold: bool,
}

/// Verifies `(AA⁻¹)ⁿ ⊆ Xⁿ⁻¹AA⁻¹` for `n = 2..=n_max` with `X` from
/// [`ruzsa_cover`], reporting the growth of `X` and of `A`.
pub fn appendix_growth_check(a: &GroupSubset, n_max: usize) -> Result<AppendixReport> {
    if n_max < 2 {
        return Err(Error::Parameter("appendix check needs n_max >= 2".into()));
    }
    let g: &GroupRef = a.group();
    let mut certificate = ruzsa_cover(a)?;
    let d = difference_set(a);
    let x = GroupSubset::new(g, certificate.cover_set.iter().copied())?;
    let cover_growth = growth_profile(&x, n_max)?;
    let a_growth = growth_profile(a, n_max)?;

    let mut steps = Vec::new();
    let mut d_power = d.clone();
    let mut x_power = x.clone(); // X^{n-1}
    for n in 2..=n_max {
        d_power = product_unchecked(&d_power, &d);
        if n > 2 {
            x_power = product_unchecked(&x_power, &x);
        }
        let rhs = product_unchecked(&x_power, &d);
        steps.push(AppendixStep {
            n,
            difference_power: d_power.len(),
            covering_power: rhs.len(),
            inclusion_holds: d_power.is_subset(&rhs),
            measured: a_growth.sizes[n - 1],
            implied_bound: x_power.len() * d.len(),
        });
    }
    certificate.verified_range = n_max;
    let all_inclusions_hold = steps.iter().all(|s| s.inclusion_holds);
    let size = a.len() as i64;
    Ok(AppendixReport {
        tripling: Q::new(power(a, 3).len() as i64, size),
        double_difference_ratio: Q::new(certificate.double_difference_size as i64, size),
        cover_size: certificate.cover_set.len(),
        certificate,
        cover_growth,
        steps,
        all_inclusions_hold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_subgroups, GroupSpec};

    fn cyclic(n: usize) -> GroupRef {
        GroupSpec::Cyclic { n }.build().unwrap()
    }

    #[test]
    fn identity_is_neutral_for_products() {
        let g = GroupSpec::Dihedral { order: 10 }.build().unwrap();
        let a = GroupSubset::new(&g, [1, 3, 7]).unwrap();
        assert_eq!(product_set(&a, &GroupSubset::identity(&g)).unwrap(), a);
    }

    #[test]
    fn interval_doubling_in_cyclic_100() {
        let g = cyclic(100);
        let a = GroupSubset::new(&g, [99, 0, 1]).unwrap();
        assert_eq!(product_set(&a, &a).unwrap().len(), 5);
    }

    #[test]
    fn mismatched_groups_are_rejected() {
        let a = GroupSubset::whole(&cyclic(4));
        let b = GroupSubset::whole(&cyclic(4));
        assert!(matches!(product_set(&a, &b), Err(Error::GroupMismatch)));
    }

    #[test]
    fn heisenberg_square_matches_double_loop() {
        let g = GroupSpec::Heisenberg { p: 3 }.build().unwrap();
        // (1,0,0), (0,1,0), inverses, identity
        let gens = GroupSubset::new(&g, [9, 3]).unwrap();
        let a =
            normalize_set(&gens, NormalizeOptions { symmetrize: true, add_identity: true, conjugation_close: false });
        let mut oracle = std::collections::BTreeSet::new();
        for x in a.iter() {
            for y in a.iter() {
                oracle.insert(g.mul(x, y));
            }
        }
        assert_eq!(product_set(&a, &a).unwrap().to_vec(), oracle.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn growth_of_identity_and_interval() {
        let g = cyclic(100);
        let e = GroupSubset::identity(&g);
        let p = growth_profile(&e, 6).unwrap();
        assert!(p.sizes.iter().all(|&s| s == 1));
        assert_eq!(p.fitted_d, 0.0);
        assert_eq!(p.saturated_at, Some(1));

        let a = GroupSubset::new(&g, [99, 0, 1]).unwrap();
        let p = growth_profile(&a, 60).unwrap();
        for n in 1..=60 {
            assert_eq!(p.sizes[n - 1], (2 * n + 1).min(100), "n = {n}");
        }
        assert_eq!(p.saturated_at, Some(50));
    }

    #[test]
    fn growth_without_identity() {
        let g = cyclic(10);
        let a = GroupSubset::new(&g, [1]).unwrap();
        let p = growth_profile(&a, 12).unwrap();
        assert!(p.sizes.iter().all(|&s| s == 1));
        assert_eq!(p.saturated_at, None);
    }

    #[test]
    fn subgroups_have_unit_doubling() {
        let g = GroupSpec::symmetric(3).build().unwrap();
        for h in enumerate_subgroups(&g, 128).unwrap() {
            let r = set_predicates(h.elements()).unwrap();
            assert!(r.symmetric && r.contains_identity);
            assert_eq!(r.normal, h.is_normal());
            assert_eq!(r.doubling, Q::from_integer(1));
        }
    }

    #[test]
    fn transpositions_with_identity_are_normal() {
        let g = GroupSpec::symmetric(3).build().unwrap();
        let transposition = 1;
        let s = GroupSubset::new(&g, [transposition]).unwrap();
        let a = normalize_set(&s, NormalizeOptions::all());
        assert_eq!(a.len(), 4);
        let r = set_predicates(&a).unwrap();
        assert!(r.symmetric && r.normal && r.contains_identity);
        let only_closed = normalize_set(&s, NormalizeOptions { conjugation_close: true, ..Default::default() });
        assert_eq!(only_closed.len(), 3);
    }

    #[test]
    fn single_generator_is_not_symmetric() {
        let g = cyclic(10);
        let r = set_predicates(&GroupSubset::new(&g, [1]).unwrap()).unwrap();
        assert!(!r.symmetric);
        assert_eq!(r.symmetric_witness, Some(1));
    }

    #[test]
    fn normalize_examples() {
        let g = cyclic(5);
        let s = GroupSubset::new(&g, [1]).unwrap();
        assert_eq!(normalize_set(&s, NormalizeOptions::all()).to_vec(), vec![0, 1, 4]);
        let closed = normalize_set(&s, NormalizeOptions::all());
        assert_eq!(normalize_set(&closed, NormalizeOptions::all()), closed);
    }

    #[test]
    fn ruzsa_cover_of_subgroup_is_identity() {
        let g = GroupSpec::Dihedral { order: 12 }.build().unwrap();
        for h in enumerate_subgroups(&g, 128).unwrap() {
            let c = ruzsa_cover(h.elements()).unwrap();
            assert_eq!(c.cover_set, vec![g.identity()]);
            assert!(c.valid());
        }
    }

    #[test]
    fn ruzsa_cover_of_interval() {
        let g = cyclic(100);
        let a = GroupSubset::new(&g, [99, 0, 1]).unwrap();
        let c = ruzsa_cover(&a).unwrap();
        assert_eq!(c.double_difference_size, 9);
        assert!(c.cover_set.len() <= 3);
        assert!(c.valid());
        // deterministic greedy order
        assert_eq!(ruzsa_cover(&a).unwrap().cover_set, c.cover_set);
    }

    #[test]
    fn appendix_for_normal_subgroup_is_tight() {
        let g = GroupSpec::symmetric(4).build().unwrap();
        let v4 = enumerate_subgroups(&g, 128).unwrap().into_iter().find(|h| h.order() == 4 && h.is_normal()).unwrap();
        let r = appendix_growth_check(v4.elements(), 6).unwrap();
        assert!(r.all_inclusions_hold);
        for s in &r.steps {
            assert_eq!(s.difference_power, 4);
            assert_eq!(s.covering_power, 4);
        }
    }

    #[test]
    fn appendix_interval_and_dihedral() {
        let g = cyclic(100);
        let a = GroupSubset::new(&g, [99, 0, 1]).unwrap();
        assert!(appendix_growth_check(&a, 10).unwrap().all_inclusions_hold);

        let d = GroupSpec::Dihedral { order: 16 }.build().unwrap();
        let gens = GroupSubset::new(&d, [1, 8]).unwrap();
        let a = normalize_set(&gens, NormalizeOptions::all());
        assert!(appendix_growth_check(&a, 8).unwrap().all_inclusions_hold);
    }

    #[test]
    fn set_spec_forms() {
        let g = GroupSpec::Dihedral { order: 8 }.build().unwrap();
        let e: SetSpec = serde_json::from_str(r#"{"elements":[0,2]}"#).unwrap();
        assert_eq!(e.build(&g).unwrap().to_vec(), vec![0, 2]);
        let gens: SetSpec =
            serde_json::from_str(r#"{"generators":[1],"symmetrize":true,"add_identity":true}"#).unwrap();
        assert_eq!(gens.build(&g).unwrap().to_vec(), vec![0, 1, 3]);
        assert!(serde_json::from_str::<SetSpec>(r#"{"elements":[0],"extra":1}"#).is_err());
        let bad: SetSpec = serde_json::from_str(r#"{"elements":[9]}"#).unwrap();
        assert!(bad.build(&g).is_err());
    }
}
