//! Linear Bohr sets and sumset arithmetic in `Lin(G)`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::exact::{self, Radius, RationalJson, Q};
use crate::group::{GroupRef, GroupSubset};
use crate::harmonic::{LinRef, LinearCharacter};
use crate::metric::PseudoMetricNorm;
use crate::setops::product_set;
use crate::{Error, Result};

/// Largest `|X|` for which `Span(X)` is enumerated (`3^|X|` combinations).
pub const SPAN_GUARD: usize = 20;

/// A finite set of linear characters, stored as sorted indices into `Lin(G)`.
#[derive(Clone, Debug)]
pub struct CharSet {
    lin: LinRef,
    members: Vec<usize>,
}

impl PartialEq for CharSet {
    fn eq(&self, other: &Self) -> bool {
        std::sync::Arc::ptr_eq(&self.lin, &other.lin) && self.members == other.members
    }
}

impl Eq for CharSet {}

impl CharSet {
    pub fn new(lin: &LinRef, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&k| k >= lin.len()) {
            return Err(Error::Parameter(format!("character index {bad} outside Lin(G) of size {}", lin.len())));
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self { lin: lin.clone(), members })
    }

    fn from_mask(lin: &LinRef, mask: &[bool]) -> Self {
        Self { lin: lin.clone(), members: (0..mask.len()).filter(|&k| mask[k]).collect() }
    }

    pub fn empty(lin: &LinRef) -> Self {
        Self { lin: lin.clone(), members: Vec::new() }
    }

    /// `{0}`, the trivial character alone.
    pub fn identity(lin: &LinRef) -> Self {
        Self { lin: lin.clone(), members: vec![lin.zero()] }
    }

    pub fn all(lin: &LinRef) -> Self {
        Self { lin: lin.clone(), members: (0..lin.len()).collect() }
    }

    pub fn lin(&self) -> &LinRef {
        &self.lin
    }

    pub fn group(&self) -> &GroupRef {
        self.lin.group()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.members.binary_search(&k).is_ok()
    }

    pub fn contains_identity(&self) -> bool {
        self.contains(self.lin.zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.members.iter().all(|&k| self.contains(self.lin.neg(k)))
    }

    pub fn characters(&self) -> Vec<LinearCharacter> {
        self.members.iter().map(|&k| self.lin.character(k).clone()).collect()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.members.iter().all(|&k| other.contains(k))
    }

    pub fn first_outside(&self, other: &Self) -> Option<usize> {
        self.members.iter().copied().find(|&k| !other.contains(k))
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::new(&self.lin, self.members.iter().chain(&other.members).copied()).expect("indices in range")
    }

    pub fn negate(&self) -> Self {
        Self::new(&self.lin, self.members.iter().map(|&k| self.lin.neg(k))).expect("indices in range")
    }

    pub fn symmetrize(&self) -> Self {
        self.union(&self.negate())
    }

    /// `A + B`.
    pub fn sum(&self, other: &Self) -> Self {
        let mut mask = vec![false; self.lin.len()];
        for &a in &self.members {
            for &b in &other.members {
                mask[self.lin.add(a, b)] = true;
            }
        }
        Self::from_mask(&self.lin, &mask)
    }

    /// `A − B`.
    pub fn difference(&self, other: &Self) -> Self {
        self.sum(&other.negate())
    }

    /// Reads a JSON list whose entries are `"lin[i]"` or a phase vector.
    pub fn from_json(lin: &LinRef, json: &CharSetJson) -> Result<Self> {
        let mut members = Vec::with_capacity(json.0.len());
        for entry in &json.0 {
            let k = match entry {
                CharRef::Index(text) => parse_lin_ref(text)?,
                CharRef::Phases(phases) => {
                    let phases = phases.iter().map(|&r| Q::try_from(r)).collect::<Result<Vec<_>>>()?;
                    let chi = LinearCharacter::from_phases(lin.group(), &phases)?;
                    lin.index_of(&chi).expect("every homomorphism to the circle is in Lin(G)")
                }
            };
            members.push(k);
        }
        Self::new(lin, members)
    }

    pub fn to_json(&self) -> CharSetJson {
        CharSetJson(self.members.iter().map(|k| CharRef::Index(format!("lin[{k}]"))).collect())
    }
}

fn parse_lin_ref(text: &str) -> Result<usize> {
    text.strip_prefix("lin[")
        .and_then(|t| t.strip_suffix(']'))
        .and_then(|t| t.trim().parse().ok())
        .ok_or_else(|| Error::InvalidSpec(format!("expected `lin[i]`, found `{text}`")))
}

/// One character in JSON: a reference into `Lin(G)` or explicit phases.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CharRef {
    Index(String),
    Phases(Vec<RationalJson>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CharSetJson(pub Vec<CharRef>);

/// `ρ(x) = max_{γ∈Γ} ‖γ(x)‖`, exact; the zero norm for empty `Γ`.
pub fn bohr_norm(gamma: &CharSet) -> PseudoMetricNorm<Q> {
    let lin = &gamma.lin;
    let g = lin.group();
    let m = lin.exponent() as i64;
    let values = (0..g.order())
        .map(|x| {
            let top = gamma.members.iter().map(|&k| lin.circle_numer(k, x)).max().unwrap_or(0);
            Q::new(top as i64, m)
        })
        .collect();
    PseudoMetricNorm::new(g, values).expect("Bohr norm values are non-negative")
}

/// `LinBohr(Γ, δ) = {x : ‖γ(x)‖ ≤ δ for all γ ∈ Γ}`.
pub fn linbohr(gamma: &CharSet, delta: impl Into<Radius>) -> GroupSubset {
    let r = delta.into();
    let lin = &gamma.lin;
    let m = lin.exponent() as i64;
    GroupSubset::filter(lin.group(), |x| {
        gamma.members.iter().all(|&k| r.admits(Q::new(lin.circle_numer(k, x) as i64, m)))
    })
}

/// `Span(X) = {Σ ε_γ γ : ε_γ ∈ {−1, 0, 1}}`.
pub fn char_span(x: &CharSet) -> Result<CharSet> {
    if x.len() > SPAN_GUARD {
        return Err(Error::SpanGuard { size: x.len(), limit: SPAN_GUARD });
    }
    let lin = &x.lin;
    let mut mask = vec![false; lin.len()];
    mask[lin.zero()] = true;
    for &g in &x.members {
        let current: Vec<usize> = (0..mask.len()).filter(|&k| mask[k]).collect();
        for k in current {
            mask[lin.add(k, g)] = true;
            mask[lin.sub(k, g)] = true;
        }
    }
    Ok(CharSet::from_mask(lin, &mask))
}

/// `kΛ = Λ + ⋯ + Λ` (`k` summands).
pub fn kfold_charset(lambda: &CharSet, k: usize) -> Result<CharSet> {
    if k == 0 {
        return Err(Error::NonPositive("k-fold sumset needs k >= 1"));
    }
    let mut acc = lambda.clone();
    for _ in 1..k {
        let next = acc.sum(lambda);
        if next == acc {
            break;
        }
        acc = next;
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct KFoldReport {
    pub k: usize,
    #[serde(with = "exact::rational")]
    pub delta: Q,
    pub contains_identity: bool,
    /// `kδ < 1/3`.
    pub small_radius: bool,
    pub hypotheses_hold: bool,
    /// `|LinBohr(kΛ, kδ)|`
    pub lhs_size: usize,
    /// `|LinBohr(Λ, δ)|`
    pub rhs_size: usize,
    /// `LinBohr(Λ, δ) ⊆ LinBohr(kΛ, kδ)`, true by the triangle inequality.
    pub rhs_in_lhs: bool,
    pub lhs_in_rhs: bool,
    pub equal: bool,
    pub witness: Option<usize>,
}

/// Compares `LinBohr(kΛ, kδ)` with `LinBohr(Λ, δ)` as exact sets.
pub fn cor53_check(lambda: &CharSet, k: usize, delta: Q) -> Result<KFoldReport> {
    if delta < Q::from_integer(0) {
        return Err(Error::NonPositive("Bohr radius"));
    }
    let k_lambda = kfold_charset(lambda, k)?;
    let kd = delta * k as i64;
    let lhs = linbohr(&k_lambda, kd);
    let rhs = linbohr(lambda, delta);
    let contains_identity = lambda.contains_identity();
    let small_radius = kd < Q::new(1, 3);
    let witness = lhs.first_outside(&rhs);
    Ok(KFoldReport {
        k,
        delta,
        contains_identity,
        small_radius,
        hypotheses_hold: contains_identity && small_radius,
        lhs_size: lhs.len(),
        rhs_size: rhs.len(),
        rhs_in_lhs: rhs.is_subset(&lhs),
        lhs_in_rhs: witness.is_none(),
        equal: lhs == rhs,
        witness,
    })
}

/// Signed phase of `γ_k(x)` in `(−1/2, 1/2]`.
fn signed_phase(lin: &LinRef, k: usize, x: usize) -> Q {
    let q = lin.phase(k, x);
    if q > Q::new(1, 2) {
        q - 1
    } else {
        q
    }
}

/// Distance from `t` to the nearest integer.
fn circle_distance(t: Q) -> Q {
    let f = t - t.floor();
    f.min(Q::from_integer(1) - f)
}

/// Groups the elements of `set` by a key in `grid^Γ` (one grid point per
/// character within `tolerance` of its phase), picks the smallest element of
/// each group and returns those representatives.
fn translate_set(set: &GroupSubset, chars: &CharSet, grid: &[Q], tolerance: Q) -> Option<Vec<usize>> {
    let lin = &chars.lin;
    let mut reps: std::collections::BTreeMap<Vec<usize>, usize> = std::collections::BTreeMap::new();
    for x in set.iter() {
        let mut key = Vec::with_capacity(chars.len());
        for &k in &chars.members {
            let phase = signed_phase(lin, k, x);
            let slot = grid.iter().position(|&t| circle_distance(phase - t) <= tolerance)?;
            key.push(slot);
        }
        reps.entry(key).or_insert(x);
    }
    let mut t: Vec<usize> = reps.into_values().collect();
    t.sort_unstable();
    Some(t)
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionCover {
    #[serde(with = "exact::rational")]
    pub delta: Q,
    pub translates: Vec<usize>,
    /// `LinBohr(Γ, 2δ) ⊆ T_δ · LinBohr(Γ, δ)`.
    pub covering_holds: bool,
    /// `|T_δ| ≤ 4^|Γ|`.
    pub count_holds: bool,
    /// `ball_dimension(bohr_norm(Γ), δ) ≤ 2|Γ|`.
    pub dimension_holds: bool,
    pub dimension: f64,
}

/// Builds `T_δ` from `θ ∈ {−3δ/2, −δ/2, δ/2, 3δ/2}^Γ` and checks the covering,
/// the count `4^|Γ|`, and the resulting dimension bound `2|Γ|`.
pub fn bohr_dimension_cover(gamma: &CharSet, delta: Q) -> Result<DimensionCover> {
    if delta <= Q::from_integer(0) {
        return Err(Error::NonPositive("Bohr radius"));
    }
    let wide = linbohr(gamma, delta * 2);
    let grid = [delta * Q::new(-3, 2), delta * Q::new(-1, 2), delta * Q::new(1, 2), delta * Q::new(3, 2)];
    let translates =
        translate_set(&wide, gamma, &grid, delta / 2).expect("every phase within 2δ is within δ/2 of the grid");
    let g = gamma.group();
    let t = GroupSubset::new(g, translates.iter().copied())?;
    let covering_holds = wide.is_subset(&product_set(&t, &linbohr(gamma, delta))?);
    let count_holds = BigUint::from(translates.len()) <= BigUint::from(4u32).pow(gamma.len() as u32);
    let dim = crate::metric::ball_dimension(&bohr_norm(gamma), delta)?;
    Ok(DimensionCover {
        delta,
        translates,
        covering_holds,
        count_holds,
        dimension_holds: dim.bounded_by_bits(2 * gamma.len() as u32),
        dimension: dim.d,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub step: String,
    /// Whether the hypotheses that justify this step hold.
    pub justified: bool,
    pub holds: bool,
    pub witness: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BohrGrowthReport {
    #[serde(with = "exact::rational")]
    pub delta: Q,
    pub gamma_symmetric: bool,
    pub gamma_contains_identity: bool,
    pub delta_in_range: bool,
    /// `Γ + Γ ⊆ Span(X) + Γ`.
    pub sumset_hypothesis: bool,
    pub sumset_witness: Option<(usize, usize)>,
    pub hypotheses_hold: bool,
    /// `|LinBohr(Γ ∪ X, 2δ)|`
    pub wide_size: usize,
    /// `|LinBohr(Γ ∪ X, δ)|`
    pub narrow_size: usize,
    #[serde(with = "exact::rational")]
    pub ratio: Q,
    pub translates: usize,
    /// `(2⁵|X| + 1)^|X|` in decimal.
    pub bound: String,
    pub bound_log2: f64,
    pub ratio_within_bound: bool,
    pub chain: Vec<ChainStep>,
}

/// Measures the growth `|LinBohr(Γ∪X, 2δ)| / |LinBohr(Γ∪X, δ)|`, compares it
/// with the explicit bound `|I|^|X|`, `|I| = 2⁵|X| + 1`, and replays the
/// inclusion chain of the growth argument on the actual sets.
///
/// The contraction step uses `LinBohr(8Λ, 8δ) ⊆ LinBohr(Λ, δ)`, which needs
/// `8δ < 1/3`; for `δ ≥ 1/24` the step is reported as unjustified but still
/// evaluated.
pub fn prop51_check(gamma: &CharSet, x: &CharSet, delta: Q) -> Result<BohrGrowthReport> {
    if !std::sync::Arc::ptr_eq(&gamma.lin, &x.lin) {
        return Err(Error::GroupMismatch);
    }
    if delta <= Q::from_integer(0) {
        return Err(Error::NonPositive("Bohr radius"));
    }
    let lin = &gamma.lin;
    let g = gamma.group().clone();
    let span = char_span(x)?;
    let gg = gamma.sum(gamma);
    let span_gamma = span.sum(gamma);
    let sumset_witness = gamma
        .members
        .iter()
        .flat_map(|&a| gamma.members.iter().map(move |&b| (a, b)))
        .find(|&(a, b)| !span_gamma.contains(lin.add(a, b)));
    debug_assert_eq!(sumset_witness.is_none(), gg.is_subset(&span_gamma));

    let gamma_symmetric = gamma.is_symmetric();
    let gamma_contains_identity = gamma.contains_identity();
    let delta_in_range = delta <= Q::new(1, 16);
    let hypotheses_hold = gamma_symmetric && gamma_contains_identity && delta_in_range && sumset_witness.is_none();

    let both = gamma.union(x);
    let wide = linbohr(&both, delta * 2);
    let narrow = linbohr(&both, delta);
    let m = x.len().max(1) as i64;

    // T from θ ∈ I^X, I = {kδ/4|X| : |k| ≤ 16|X|}
    let step = delta / (4 * m);
    let grid: Vec<Q> = (-16 * m..=16 * m).map(|k| step * k).collect();
    let wide_gamma = linbohr(gamma, delta * 2);
    let lhs = wide.intersection(&wide_gamma);
    let translates = translate_set(&lhs, x, &grid, step).expect("every phase within 2δ is within δ/4|X| of the grid");
    let t = GroupSubset::new(&g, translates.iter().copied())?;

    let core = linbohr(gamma, delta * 4).intersection(&linbohr(x, delta / (2 * m)));
    let covered = product_set(&t, &core)?;
    let mut chain = vec![ChainStep {
        step: "LinBohr(Γ∪X,2δ) ⊆ T·(LinBohr(Γ,4δ) ∩ LinBohr(X,δ/2|X|))".into(),
        justified: true,
        holds: wide.is_subset(&covered),
        witness: wide.first_outside(&covered),
    }];

    let eight_span = kfold_charset(&span, 8)?;
    let mixed = gamma.sum(&eight_span);
    let triangle = linbohr(&mixed, delta * 8);
    chain.push(ChainStep {
        step: "LinBohr(Γ,4δ) ∩ LinBohr(X,δ/2|X|) ⊆ LinBohr(Γ+8Span(X),8δ)".into(),
        justified: true,
        holds: core.is_subset(&triangle),
        witness: core.first_outside(&triangle),
    });

    let eight_gamma = kfold_charset(gamma, 8)?;
    let split = linbohr(&eight_gamma, delta * 8).intersection(&linbohr(&eight_span, delta * 8));
    chain.push(ChainStep {
        step: "LinBohr(Γ+8Span(X),8δ) ⊆ LinBohr(8Γ,8δ) ∩ LinBohr(8Span(X),8δ)".into(),
        justified: gamma_contains_identity && sumset_witness.is_none(),
        holds: triangle.is_subset(&split),
        witness: triangle.first_outside(&split),
    });

    let contracted = linbohr(gamma, delta).intersection(&linbohr(x, delta));
    chain.push(ChainStep {
        step: "LinBohr(8Γ,8δ) ∩ LinBohr(8Span(X),8δ) ⊆ LinBohr(Γ,δ) ∩ LinBohr(X,δ)".into(),
        justified: gamma_contains_identity && delta * 8 < Q::new(1, 3),
        holds: split.is_subset(&contracted),
        witness: split.first_outside(&contracted),
    });

    let i_size = BigUint::from((32 * x.len() + 1) as u64);
    let bound = i_size.pow(x.len() as u32);
    let ratio_within_bound = BigUint::from(wide.len()) <= &bound * BigUint::from(narrow.len());
    let bound_log2 = x.len() as f64 * ((32 * x.len() + 1) as f64).log2();
    Ok(BohrGrowthReport {
        delta,
        gamma_symmetric,
        gamma_contains_identity,
        delta_in_range,
        sumset_hypothesis: sumset_witness.is_none(),
        sumset_witness,
        hypotheses_hold,
        wide_size: wide.len(),
        narrow_size: narrow.len(),
        ratio: Q::new(wide.len() as i64, narrow.len() as i64),
        translates: translates.len(),
        bound: bound.to_string(),
        bound_log2,
        ratio_within_bound,
        chain,
    })
}
