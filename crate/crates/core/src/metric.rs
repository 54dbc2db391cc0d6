//! Bi-invariant pseudo-metric norms and their balls.
//!
//! A norm `ρ(x) = ρ(x, 1_G)` determines the pseudo-metric `ρ(x, y) = ρ(xy⁻¹)`.
//! Values are either exact rationals (word, subgroup and Bohr norms) or
//! floats compared with a fixed tolerance.

use std::collections::VecDeque;
use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::exact::{self, Radius, RationalJson, Q};
use crate::group::{GroupRef, GroupSubset};
use crate::setops::product_set;
use crate::{Error, Result};

/// Tolerance for float-valued norms.
pub const FLOAT_TOLERANCE: f64 = 1e-12;

/// Scalar type of a norm.
pub trait NormValue: Copy + Debug + PartialOrd + Send + Sync + 'static {
    fn zero() -> Self;
    fn plus(self, other: Self) -> Self;
    fn double(self) -> Self;
    fn half(self) -> Self;
    /// `self ≤ other`, with the tolerance appropriate to the type.
    fn at_most(self, other: Self) -> bool;
    fn within(self, radius: &Radius) -> bool;
    fn to_f64(self) -> f64;
    fn is_positive(self) -> bool {
        !self.at_most(Self::zero())
    }
}

impl NormValue for Q {
    fn zero() -> Self {
        Q::from_integer(0)
    }
    fn plus(self, other: Self) -> Self {
        self + other
    }
    fn double(self) -> Self {
        self * 2
    }
    fn half(self) -> Self {
        self / 2
    }
    fn at_most(self, other: Self) -> bool {
        self <= other
    }
    fn within(self, radius: &Radius) -> bool {
        radius.admits(self)
    }
    fn to_f64(self) -> f64 {
        exact::to_f64(self)
    }
}

impl NormValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn plus(self, other: Self) -> Self {
        self + other
    }
    fn double(self) -> Self {
        2.0 * self
    }
    fn half(self) -> Self {
        self / 2.0
    }
    fn at_most(self, other: Self) -> bool {
        self <= other + FLOAT_TOLERANCE
    }
    fn within(self, radius: &Radius) -> bool {
        self <= radius.to_f64() + FLOAT_TOLERANCE
    }
    fn to_f64(self) -> f64 {
        self
    }
}

#[derive(Clone, Debug)]
pub struct PseudoMetricNorm<V: NormValue = Q> {
    group: GroupRef,
    values: Vec<V>,
}

impl<V: NormValue> PseudoMetricNorm<V> {
    pub fn new(group: &GroupRef, values: Vec<V>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::Parameter(format!(
                "norm has {} values, group order is {}",
                values.len(),
                group.order()
            )));
        }
        if values.iter().any(|v| v.at_most(V::zero()) && !V::zero().at_most(*v)) {
            return Err(Error::NonPositive("norm values must be non-negative"));
        }
        Ok(Self { group: group.clone(), values })
    }

    pub fn zero(group: &GroupRef) -> Self {
        Self { group: group.clone(), values: vec![V::zero(); group.order()] }
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    pub fn value(&self, x: usize) -> V {
        self.values[x]
    }

    /// `ρ(x, y) = ρ(xy⁻¹)`.
    pub fn distance(&self, x: usize, y: usize) -> V {
        self.values[self.group.mul(x, self.group.inv(y))]
    }

    /// `B(ρ, δ) = {x : ρ(x) ≤ δ}`.
    pub fn ball(&self, radius: impl Into<Radius>) -> GroupSubset {
        let r = radius.into();
        GroupSubset::filter(&self.group, |x| self.values[x].within(&r))
    }

    /// Ball with a radius of the norm's own type.
    pub fn ball_at(&self, radius: V) -> GroupSubset {
        GroupSubset::filter(&self.group, |x| self.values[x].at_most(radius))
    }

    /// Sorted distinct values of the norm.
    pub fn breakpoints(&self) -> Vec<V> {
        let mut v = self.values.clone();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut out: Vec<V> = Vec::new();
        for x in v {
            if out.last().is_none_or(|&l| !(x.at_most(l) && l.at_most(x))) {
                out.push(x);
            }
        }
        out
    }

    pub fn family(&self) -> BallFamily<V> {
        let breakpoints = self.breakpoints();
        let sizes = breakpoints.iter().map(|&b| self.ball_at(b).len()).collect();
        BallFamily { breakpoints, sizes }
    }

    /// Pointwise maximum of two norms.
    pub fn max(&self, other: &Self) -> Result<Self> {
        if !std::sync::Arc::ptr_eq(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| if a.at_most(b) { b } else { a }).collect();
        Ok(Self { group: self.group.clone(), values })
    }
}

impl PseudoMetricNorm<Q> {
    pub fn to_f64(&self) -> PseudoMetricNorm<f64> {
        PseudoMetricNorm { group: self.group.clone(), values: self.values.iter().map(|&v| exact::to_f64(v)).collect() }
    }

    pub fn to_json(&self) -> NormJson {
        NormJson::Exact(self.values.iter().map(|&v| v.into()).collect())
    }
}

/// Norm import and export: one entry per element index.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NormJson {
    Exact(Vec<RationalJson>),
    Float(Vec<f64>),
}

/// A norm read from JSON, keeping exactness when all entries are rational.
#[derive(Clone, Debug)]
pub enum AnyNorm {
    Exact(PseudoMetricNorm<Q>),
    Float(PseudoMetricNorm<f64>),
}

impl NormJson {
    pub fn into_norm(self, group: &GroupRef) -> Result<AnyNorm> {
        match self {
            NormJson::Exact(v) => {
                let values = v.into_iter().map(Q::try_from).collect::<Result<Vec<_>>>()?;
                Ok(AnyNorm::Exact(PseudoMetricNorm::new(group, values)?))
            }
            NormJson::Float(v) => Ok(AnyNorm::Float(PseudoMetricNorm::new(group, v)?)),
        }
    }
}

/// `|B(ρ, δ)|` as a step function of `δ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BallFamily<V: NormValue> {
    pub breakpoints: Vec<V>,
    /// `sizes[i] = |B(ρ, breakpoints[i])|`.
    pub sizes: Vec<usize>,
}

impl<V: NormValue> BallFamily<V> {
    /// `|B(ρ, r)|`.
    pub fn size_at(&self, r: V) -> usize {
        self.breakpoints.iter().zip(&self.sizes).take_while(|(b, _)| b.at_most(r)).last().map_or(0, |(_, &s)| s)
    }
}

/// Graph distance to the identity in the Cayley graph of `S` (right multiplication).
pub fn word_norm(s: &GroupSubset) -> Result<PseudoMetricNorm<Q>> {
    let g = s.group();
    let gens = s.to_vec();
    let mut dist = vec![usize::MAX; g.order()];
    dist[g.identity()] = 0;
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for &a in &gens {
            let y = g.mul(x, a);
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    if let Some(x) = dist.iter().position(|&d| d == usize::MAX) {
        return Err(Error::Parameter(format!("generating set does not reach element {x}")));
    }
    Ok(PseudoMetricNorm { group: g.clone(), values: dist.into_iter().map(|d| Q::from_integer(d as i64)).collect() })
}

/// `0` on `H`, `1` off `H`.
pub fn subgroup_norm(h: &GroupSubset) -> PseudoMetricNorm<Q> {
    let g = h.group();
    let values = (0..g.order()).map(|x| if h.contains(x) { Q::from_integer(0) } else { Q::from_integer(1) }).collect();
    PseudoMetricNorm { group: g.clone(), values }
}

#[derive(Clone, Debug, Serialize)]
pub struct NormReport {
    pub valid: bool,
    pub identity_zero: bool,
    /// `x` with `ρ(x) ≠ ρ(x⁻¹)`.
    pub symmetry_witness: Option<usize>,
    /// `(x, g)` with `ρ(gxg⁻¹) ≠ ρ(x)`.
    pub conjugation_witness: Option<(usize, usize)>,
    /// `(x, y)` with `ρ(xy) > ρ(x) + ρ(y)`.
    pub subadditivity_witness: Option<(usize, usize)>,
}

fn same<V: NormValue>(a: V, b: V) -> bool {
    a.at_most(b) && b.at_most(a)
}

pub fn validate_norm<V: NormValue>(rho: &PseudoMetricNorm<V>) -> NormReport {
    let g = &rho.group;
    let n = g.order();
    let v = &rho.values;
    let identity_zero = same(v[g.identity()], V::zero());
    let symmetry_witness = (0..n).find(|&x| !same(v[x], v[g.inv(x)]));
    let conjugation_witness =
        (0..n).flat_map(|x| (0..n).map(move |h| (x, h))).find(|&(x, h)| !same(v[g.conj(h, x)], v[x]));
    let subadditivity_witness =
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| !v[g.mul(x, y)].at_most(v[x].plus(v[y])));
    NormReport {
        valid: identity_zero
            && symmetry_witness.is_none()
            && conjugation_witness.is_none()
            && subadditivity_witness.is_none(),
        identity_zero,
        symmetry_witness,
        conjugation_witness,
        subadditivity_witness,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BallAxiomsReport {
    pub radii_checked: usize,
    pub symmetric_neighbourhood: bool,
    pub nesting: bool,
    pub subadditivity: bool,
    pub normality: bool,
    /// Index pair of radii (into the breakpoint list) at the first failure.
    pub first_failure: Option<(String, usize, usize)>,
}

impl BallAxiomsReport {
    pub fn all_hold(&self) -> bool {
        self.symmetric_neighbourhood && self.nesting && self.subadditivity && self.normality
    }
}

/// Checks, for every pair of breakpoint radii, that balls are symmetric
/// neighbourhoods of the identity, nested, subadditive under products and
/// invariant under conjugation.
pub fn ball_axioms_check<V: NormValue>(rho: &PseudoMetricNorm<V>) -> BallAxiomsReport {
    let g = &rho.group;
    let radii = rho.breakpoints();
    let balls: Vec<GroupSubset> = radii.iter().map(|&r| rho.ball_at(r)).collect();
    let mut first_failure = None;
    let mut fail = |what: &str, i: usize, j: usize| {
        if first_failure.is_none() {
            first_failure = Some((what.to_string(), i, j));
        }
        false
    };

    let mut symmetric = true;
    let mut normal = true;
    for (i, b) in balls.iter().enumerate() {
        if !(b.contains(g.identity()) && b.inverse() == *b) {
            symmetric = fail("symmetric_neighbourhood", i, i);
        }
        if (0..g.order()).any(|h| b.conjugate(h) != *b) {
            normal = fail("normality", i, i);
        }
    }
    let mut nesting = true;
    let mut subadditive = true;
    for i in 0..radii.len() {
        for j in 0..radii.len() {
            if radii[i].at_most(radii[j]) && !balls[i].is_subset(&balls[j]) {
                nesting = fail("nesting", i, j);
            }
            let product = product_set(&balls[i], &balls[j]).expect("same group");
            if !product.is_subset(&rho.ball_at(radii[i].plus(radii[j]))) {
                subadditive = fail("subadditivity", i, j);
            }
        }
    }
    BallAxiomsReport {
        radii_checked: radii.len(),
        symmetric_neighbourhood: symmetric,
        nesting,
        subadditivity: subadditive,
        normality: normal,
        first_failure,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BallDimension<V: NormValue> {
    /// `log₂` of the largest ratio `|B(2δ′)| / |B(δ′)|`.
    pub d: f64,
    /// Radius attaining the maximum, `None` when every ratio is 1.
    pub witness: Option<V>,
    pub numerator: usize,
    pub denominator: usize,
}

impl<V: NormValue> BallDimension<V> {
    /// `|B(2δ′)| ≤ 2^bits |B(δ′)|` for every `δ′`, decided on integers.
    pub fn bounded_by_bits(&self, bits: u32) -> bool {
        // sizes fit in 64 bits, so any shift past 64 is decided
        bits >= 64 || (self.numerator as u128) <= (self.denominator as u128) << bits
    }
}

/// `sup_{δ′ ∈ (0, δ]} log₂(|B(2δ′)| / |B(δ′)|)`.
///
/// The ratio is a step function of `δ′` that only changes at breakpoints
/// `b` (denominator) and at `b/2` (numerator), and is 1 below the smallest
/// of these, so the supremum is a maximum over that finite set.
pub fn ball_dimension<V: NormValue>(rho: &PseudoMetricNorm<V>, delta: V) -> Result<BallDimension<V>> {
    if !delta.is_positive() {
        return Err(Error::NonPositive("ball dimension radius"));
    }
    let family = rho.family();
    let mut candidates: Vec<V> = Vec::new();
    for &b in &family.breakpoints {
        if b.is_positive() {
            candidates.push(b);
            candidates.push(b.half());
        }
    }
    candidates.retain(|c| c.at_most(delta));
    candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut best = BallDimension { d: 0.0, witness: None, numerator: 1, denominator: 1 };
    for c in candidates {
        let (num, den) = (family.size_at(c.double()), family.size_at(c));
        // num/den > best.num/best.den
        if num * best.denominator > best.numerator * den {
            best = BallDimension {
                d: (num as f64 / den as f64).log2(),
                witness: Some(c),
                numerator: num,
                denominator: den,
            };
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, Serialize)]
pub struct GridPoint {
    pub eta: f64,
    pub ratio: f64,
    pub lower: f64,
    pub upper: f64,
    /// Distance to the nearer bound; negative when violated.
    pub margin: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BourgainReport {
    pub lambda: f64,
    pub delta: f64,
    pub d: f64,
    pub candidates_tested: usize,
    pub grid: Vec<GridPoint>,
    pub min_margin: f64,
}

/// Number of grid steps on each side of `η = 0`.
pub const BOURGAIN_GRID_STEPS: i32 = 10;

fn bourgain_grid(d: f64) -> Vec<f64> {
    let step = 1.0 / (60.0 * d.max(1.0));
    (-BOURGAIN_GRID_STEPS..=BOURGAIN_GRID_STEPS).map(|k| k as f64 * step).collect()
}

/// Finds `λ ∈ (1, 2]` with `1 − 6d|η| ≤ |B(λδ(1+η))| / |B(λδ)| ≤ 1 + 6d|η|`
/// for every `η` on the grid `{k / 60max(d,1) : |k| ≤ 10}`.
///
/// Ball sizes only change when `λδ(1+η)` crosses a breakpoint, so the
/// candidates are those critical values of `λ`, the midpoints between
/// consecutive ones (and between 1 and the first), and `λ = 2`. Candidates
/// are tried from `λ = 2` downwards and the first passing one is returned.
pub fn bourgain_radius<V: NormValue>(rho: &PseudoMetricNorm<V>, delta: V, d: f64) -> Result<BourgainReport> {
    if !delta.is_positive() {
        return Err(Error::NonPositive("regular radius base"));
    }
    let dim = ball_dimension(rho, delta)?;
    if dim.d > d + 1e-12 {
        return Err(Error::Parameter(format!("ball has dimension {} > {d}", dim.d)));
    }
    let f = rho.to_float_family();
    let delta_f = delta.to_f64();
    let grid = bourgain_grid(d);

    let mut critical: Vec<f64> = Vec::new();
    for &b in &f.breakpoints {
        for &eta in &grid {
            let lambda = b / (delta_f * (1.0 + eta));
            if lambda > 1.0 && lambda <= 2.0 {
                critical.push(lambda);
            }
        }
    }
    critical.sort_by(|a, b| a.partial_cmp(b).unwrap());
    critical.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let mut candidates = vec![2.0];
    let mut previous = 1.0;
    for &c in &critical {
        candidates.push((previous + c) / 2.0);
        candidates.push(c);
        previous = c;
    }
    candidates.push((previous + 2.0) / 2.0);
    candidates.sort_by(|a, b| b.partial_cmp(a).unwrap());
    candidates.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    candidates.retain(|&l| l > 1.0 && l <= 2.0);

    let size = |r: f64| f.size_at(r);
    let mut best_margin = f64::NEG_INFINITY;
    for (tested, &lambda) in candidates.iter().enumerate() {
        let base = size(lambda * delta_f) as f64;
        let points: Vec<GridPoint> = grid
            .iter()
            .map(|&eta| {
                let ratio = size(lambda * delta_f * (1.0 + eta)) as f64 / base;
                let lower = 1.0 - 6.0 * d * eta.abs();
                let upper = 1.0 + 6.0 * d * eta.abs();
                GridPoint { eta, ratio, lower, upper, margin: (ratio - lower).min(upper - ratio) }
            })
            .collect();
        let min_margin = points.iter().map(|p| p.margin).fold(f64::INFINITY, f64::min);
        if min_margin >= -1e-12 {
            return Ok(BourgainReport {
                lambda,
                delta: delta_f,
                d,
                candidates_tested: tested + 1,
                grid: points,
                min_margin,
            });
        }
        best_margin = best_margin.max(min_margin);
    }
    Err(Error::NoRegularRadius { best_margin })
}

/// Float step function used by the regular-radius search.
struct FloatFamily {
    breakpoints: Vec<f64>,
    sizes: Vec<usize>,
}

impl FloatFamily {
    fn size_at(&self, r: f64) -> usize {
        let idx = self.breakpoints.partition_point(|&b| b <= r + FLOAT_TOLERANCE);
        if idx == 0 {
            0
        } else {
            self.sizes[idx - 1]
        }
    }
}

impl<V: NormValue> PseudoMetricNorm<V> {
    fn to_float_family(&self) -> FloatFamily {
        let fam = self.family();
        FloatFamily { breakpoints: fam.breakpoints.iter().map(|b| b.to_f64()).collect(), sizes: fam.sizes }
    }
}

impl From<f64> for Radius {
    fn from(r: f64) -> Self {
        Radius::Real(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::group::{enumerate_subgroups, GroupSpec};
    use crate::setops::{normalize_set, NormalizeOptions};

    fn cyclic_word_norm(n: usize) -> PseudoMetricNorm<Q> {
        let g = GroupSpec::Cyclic { n }.build().unwrap();
        word_norm(&GroupSubset::new(&g, [1, n - 1]).unwrap()).unwrap()
    }

    #[test]
    fn zero_norm_is_valid_and_trivial() {
        let g = GroupSpec::Dihedral { order: 12 }.build().unwrap();
        let rho = PseudoMetricNorm::<Q>::zero(&g);
        assert!(validate_norm(&rho).valid);
        assert!(ball_axioms_check(&rho).all_hold());
        assert_eq!(ball_dimension(&rho, q(1, 2)).unwrap().d, 0.0);
        let b = bourgain_radius(&rho, q(1, 1), 0.0).unwrap();
        assert_eq!(b.lambda, 2.0);
    }

    #[test]
    fn word_norm_on_dihedral_12() {
        let g = GroupSpec::Dihedral { order: 12 }.build().unwrap();
        let s = normalize_set(&GroupSubset::new(&g, [1, 6]).unwrap(), NormalizeOptions::all());
        let rho = word_norm(&s).unwrap();
        assert!(validate_norm(&rho).valid);
        assert!(ball_axioms_check(&rho).all_hold());
        assert_eq!(rho.ball(q(1, 1)), s);
    }

    #[test]
    fn corrupted_norm_has_subadditivity_witness() {
        let mut rho = cyclic_word_norm(10);
        rho.values[5] = q(9, 1);
        let r = validate_norm(&rho);
        assert!(!r.valid);
        let (x, y) = r.subadditivity_witness.unwrap();
        assert!(rho.value(rho.group.mul(x, y)) > rho.value(x) + rho.value(y));
    }

    #[test]
    fn cyclic_13_dimension_is_log2_3() {
        let rho = cyclic_word_norm(13);
        let dim = ball_dimension(&rho, q(2, 1)).unwrap();
        assert!((dim.d - 3f64.log2()).abs() < 1e-12);
        assert_eq!((dim.numerator, dim.denominator), (3, 1));
        assert_eq!(dim.witness, Some(q(1, 2)));
    }

    #[test]
    fn subgroup_norm_dimension() {
        let g = GroupSpec::symmetric(3).build().unwrap();
        for h in enumerate_subgroups(&g, 128).unwrap() {
            let rho = subgroup_norm(h.elements());
            if h.is_normal() {
                assert!(validate_norm(&rho).valid);
            }
            assert_eq!(ball_dimension(&rho, q(1, 4)).unwrap().d, 0.0);
            // at δ′ = 1/2 the doubled ball is all of G
            let at_half = ball_dimension(&rho, q(1, 2)).unwrap();
            assert_eq!(at_half.numerator, g.order() * at_half.denominator / h.order());
        }
    }

    #[test]
    fn dimension_is_monotone_in_delta() {
        let rho = cyclic_word_norm(40);
        let mut last = 0.0;
        for b in rho.breakpoints().into_iter().skip(1) {
            let d = ball_dimension(&rho, b).unwrap().d;
            assert!(d >= last);
            last = d;
        }
    }

    #[test]
    fn regular_radius_on_cyclic_101() {
        let rho = cyclic_word_norm(101);
        let delta = q(16, 1);
        let d = ball_dimension(&rho, delta).unwrap().d;
        let r = bourgain_radius(&rho, delta, d).unwrap();
        assert!(r.lambda > 1.0 && r.lambda <= 2.0);
        assert!(r.grid.iter().all(|p| p.ratio >= p.lower - 1e-12 && p.ratio <= p.upper + 1e-12));
    }

    #[test]
    fn float_norm_json_round_trip() {
        let g = GroupSpec::Cyclic { n: 3 }.build().unwrap();
        let json: NormJson = serde_json::from_str("[0.0, 0.5, 0.5]").unwrap();
        match json.into_norm(&g).unwrap() {
            AnyNorm::Float(rho) => assert!(validate_norm(&rho).valid),
            AnyNorm::Exact(_) => panic!("expected float norm"),
        }
        let json: NormJson =
            serde_json::from_str(r#"[{"num":0,"den":1},{"num":1,"den":3},{"num":1,"den":3}]"#).unwrap();
        assert!(matches!(json.into_norm(&g).unwrap(), AnyNorm::Exact(_)));
    }
}
