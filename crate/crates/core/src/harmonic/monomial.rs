use rayon::prelude::*;
use serde::Serialize;

use super::{character_table, induce_class_function, CharacterTable, ClassFunction, LinGroup};
use crate::exact::{self, Q};
use crate::group::{enumerate_subgroups, GroupRef, GroupSubset, Subgroup, DEFAULT_SUBGROUP_CAP};
use crate::setops::product_set;
use crate::Result;

const INDUCTION_TOLERANCE: f64 = 1e-8;

/// A witness that `χ = λ^G` for a linear character `λ` of `H`.
#[derive(Clone, Debug, Serialize)]
pub struct MonomialCertificate {
    /// Elements of `H` in the parent group, ascending.
    pub subgroup: Vec<usize>,
    pub subgroup_generators: Vec<usize>,
    /// Index of `λ` in `Lin(H)`.
    pub lambda_index: usize,
    /// Phases of `λ` on the elements of `H`, in the order of `subgroup`.
    #[serde(serialize_with = "serialize_phases")]
    pub lambda_phases: Vec<Q>,
    pub residual: f64,
}

fn serialize_phases<S: serde::Serializer>(phases: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(phases.len()))?;
    for q in phases {
        seq.serialize_element(&exact::RationalJson::from(*q))?;
    }
    seq.end()
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterCertificate {
    pub character: usize,
    pub dim: usize,
    pub certificate: Option<MonomialCertificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonomialReport {
    pub order: usize,
    pub monomial: bool,
    pub characters: Vec<CharacterCertificate>,
}

impl MonomialReport {
    pub fn first_failure(&self) -> Option<usize> {
        self.characters.iter().find(|c| c.certificate.is_none()).map(|c| c.character)
    }
}

/// Searches, for every irreducible character `χ`, all subgroups `H` of
/// index `χ(1)` and all `λ ∈ Lin(H)` for `λ^G = χ`.
pub fn is_monomial(group: &GroupRef, seed: u64) -> Result<MonomialReport> {
    let subgroups = enumerate_subgroups(group, DEFAULT_SUBGROUP_CAP)?;
    let table = character_table(group, seed)?;
    Ok(is_monomial_with(&table, &subgroups))
}

/// As [`is_monomial`] with a precomputed table and subgroup list.
pub fn is_monomial_with(table: &CharacterTable, subgroups: &[Subgroup]) -> MonomialReport {
    let group = table.group();
    let mut lin_cache: Vec<Option<(crate::group::SubgroupEmbedding, std::sync::Arc<LinGroup>)>> =
        vec![None; subgroups.len()];
    let mut characters = Vec::with_capacity(table.len());
    for i in 0..table.len() {
        let d = table.dim(i);
        let chi = table.character(i);
        let mut certificate = None;
        'search: for (s, h) in subgroups.iter().enumerate() {
            if h.index_in_parent() != d {
                continue;
            }
            let (emb, lin) = lin_cache[s].get_or_insert_with(|| {
                let emb = h.embed();
                let lin = LinGroup::new(&emb.group);
                (emb, lin)
            });
            for k in 0..lin.len() {
                let values = (0..h.order()).map(|x| lin.value(k, x)).collect();
                let lambda = ClassFunction::new(&emb.group, values).expect("sizes agree");
                let induced = induce_class_function(emb, &lambda).expect("linear characters are class functions");
                let residual = induced.max_abs_diff(&chi);
                if residual < INDUCTION_TOLERANCE {
                    certificate = Some(MonomialCertificate {
                        subgroup: emb.to_parent.clone(),
                        subgroup_generators: h.generators().to_vec(),
                        lambda_index: k,
                        lambda_phases: (0..h.order()).map(|x| lin.phase(k, x)).collect(),
                        residual,
                    });
                    break 'search;
                }
            }
        }
        characters.push(CharacterCertificate { character: i, dim: d, certificate });
    }
    MonomialReport { order: group.order(), monomial: characters.iter().all(|c| c.certificate.is_some()), characters }
}

#[derive(Clone, Debug, Serialize)]
pub struct HereditaryReport {
    pub order: usize,
    pub hereditarily_monomial: bool,
    pub subgroups_checked: usize,
    /// Elements of the first non-monomial subgroup in canonical order.
    pub first_failure: Option<Vec<usize>>,
    pub failing_character: Option<usize>,
}

/// Runs [`is_monomial`] on every subgroup, each as a standalone group.
pub fn is_hereditarily_monomial(group: &GroupRef, seed: u64) -> Result<HereditaryReport> {
    let subgroups = enumerate_subgroups(group, DEFAULT_SUBGROUP_CAP)?;
    let results: Vec<Result<MonomialReport>> = subgroups
        .par_iter()
        .map(|h| {
            let emb = h.embed();
            is_monomial(&emb.group, seed)
        })
        .collect();
    let mut first_failure = None;
    let mut failing_character = None;
    for (h, r) in subgroups.iter().zip(results) {
        let r = r?;
        if !r.monomial && first_failure.is_none() {
            first_failure = Some(h.elements().to_vec());
            failing_character = r.first_failure();
        }
    }
    Ok(HereditaryReport {
        order: group.order(),
        hereditarily_monomial: first_failure.is_none(),
        subgroups_checked: subgroups.len(),
        first_failure,
        failing_character,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecRadEntry {
    pub character: usize,
    pub dim: usize,
    pub spec_rad: f64,
    pub exceeds_threshold: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinearityReport {
    pub s_generates: bool,
    pub s_contains_identity: bool,
    pub a_symmetric: bool,
    pub a_normal: bool,
    pub hypotheses_hold: bool,
    /// `P_G(S·A)`.
    #[serde(with = "exact::rational")]
    pub threshold: Q,
    pub entries: Vec<SpecRadEntry>,
    /// Characters of dimension above one whose spectral radius exceeds half the threshold.
    pub violations: Vec<usize>,
}

/// Scans every irreducible `γ` with `2|μ_{1_A}(γ)| > P_G(S·A)` and records
/// whether it is one-dimensional.
pub fn high_value_linearity_check(table: &CharacterTable, s: &GroupSubset, a: &GroupSubset) -> Result<LinearityReport> {
    let g = table.group();
    let sa = product_set(s, a)?;
    let threshold = Q::new(sa.len() as i64, g.order() as i64);
    let gens = s.to_vec();
    let s_generates = g.generated_by(&gens).count_ones(..) == g.order();
    let a_symmetric = a.inverse() == *a;
    let classes = g.classes();
    let a_normal = a.iter().all(|x| classes.class(classes.class_of(x)).iter().all(|&y| a.contains(y)));
    let s_contains_identity = s.contains(g.identity());

    let f = ClassFunction::indicator(a);
    let sizes = classes.sizes();
    let reps = classes.representatives();
    let mut entries = Vec::with_capacity(table.len());
    let mut violations = Vec::new();
    let t = exact::to_f64(threshold);
    for i in 0..table.len() {
        // μ computed from class values; valid for normal A and descriptive otherwise
        let sum: num_complex::Complex64 =
            (0..classes.len()).map(|c| f.value(reps[c]) * table.value(i, c) * sizes[c] as f64).sum();
        let spec_rad = sum.norm() / (g.order() * table.dim(i)) as f64;
        let exceeds = 2.0 * spec_rad > t * (1.0 + 1e-12);
        if exceeds && table.dim(i) > 1 {
            violations.push(i);
        }
        entries.push(SpecRadEntry { character: i, dim: table.dim(i), spec_rad, exceeds_threshold: exceeds });
    }
    Ok(LinearityReport {
        s_generates,
        s_contains_identity,
        a_symmetric,
        a_normal,
        hypotheses_hold: s_generates && s_contains_identity && a_symmetric && a_normal,
        threshold,
        entries,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::setops::{normalize_set, NormalizeOptions};

    #[test]
    fn abelian_groups_are_monomial() {
        let g = GroupSpec::Cyclic { n: 6 }.build().unwrap();
        let r = is_monomial(&g, 0).unwrap();
        assert!(r.monomial);
        assert!(r.characters.iter().all(|c| c.certificate.as_ref().unwrap().subgroup.len() == 6));
    }

    #[test]
    fn q8_two_dimensional_character_comes_from_order_four() {
        let g = GroupSpec::Quaternion8.build().unwrap();
        let r = is_monomial(&g, 0).unwrap();
        assert!(r.monomial);
        let cert = r.characters[4].certificate.as_ref().unwrap();
        assert_eq!(r.characters[4].dim, 2);
        assert_eq!(cert.subgroup.len(), 4);
        let h = GroupSubset::new(&g, cert.subgroup.iter().copied()).unwrap();
        assert!(h.iter().any(|x| g.element_order(x) == 4));
    }

    #[test]
    fn sl23_is_not_monomial() {
        let g = GroupSpec::sl2_3().build().unwrap();
        let r = is_monomial(&g, 0).unwrap();
        assert!(!r.monomial);
        let failed = r.first_failure().unwrap();
        assert_eq!(r.characters[failed].dim, 2);
    }

    #[test]
    fn hereditary_examples() {
        for spec in [GroupSpec::symmetric(3), GroupSpec::Heisenberg { p: 3 }, GroupSpec::Cyclic { n: 8 }] {
            let g = spec.build().unwrap();
            assert!(is_hereditarily_monomial(&g, 0).unwrap().hereditarily_monomial);
        }
        let g = GroupSpec::sl2_3().build().unwrap();
        let r = is_hereditarily_monomial(&g, 0).unwrap();
        assert!(!r.hereditarily_monomial);
        assert_eq!(r.first_failure.unwrap().len(), 24);
    }

    #[test]
    fn whole_group_has_only_trivial_coefficient() {
        let g = GroupSpec::Dihedral { order: 8 }.build().unwrap();
        let t = character_table(&g, 0).unwrap();
        let whole = GroupSubset::whole(&g);
        let r = high_value_linearity_check(&t, &whole, &whole).unwrap();
        assert!(r.violations.is_empty());
        assert!(r.entries[1..].iter().all(|e| e.spec_rad < 1e-12));
    }

    #[test]
    fn heisenberg_generators() {
        let g = GroupSpec::Heisenberg { p: 3 }.build().unwrap();
        let t = character_table(&g, 0).unwrap();
        let a = normalize_set(&GroupSubset::new(&g, [9, 3]).unwrap(), NormalizeOptions::all());
        let r = high_value_linearity_check(&t, &a, &a).unwrap();
        assert!(r.hypotheses_hold);
        assert_eq!(r.entries.len(), 11);
        assert!(r.violations.is_empty());
    }
}
