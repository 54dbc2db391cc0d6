//! Large spectra in `Lin(G)`, their weighted metric, and the energy, covering
//! and size estimates built on them.
//!
//! `\hat 1_A(γ) = E_x 1_A(x) γ(x)`; for linear `γ` only its modulus matters
//! here, and `|\hat 1_A(γ)| = |Σ_{a∈A} γ(a)| / |G|`.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::bohr::{char_span, linbohr, CharSet};
use crate::exact::{self, Radius, Q};
use crate::group::{enumerate_subgroups, GroupRef, GroupSubset, DEFAULT_SUBGROUP_CAP};
use crate::harmonic::{character_table, is_monomial_with, CharacterTable, LinGroup, LinRef};
use crate::hypothesis::{none_fail, Hypothesis, Status, Verdict};
use crate::setops::{growth_profile, product_set, GrowthProfile};
use crate::{Error, Result};

/// Relative tolerance for comparisons of floating character sums.
pub const SPECTRUM_TOLERANCE: f64 = 1e-12;

impl Serialize for CharSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Character table, `Lin(G)` and (lazily) monomiality of one group.
pub struct SpectralContext {
    table: CharacterTable,
    lin: LinRef,
    monomial: OnceLock<Option<bool>>,
}

impl SpectralContext {
    pub fn new(group: &GroupRef, seed: u64) -> Result<Self> {
        Ok(Self::with_table(character_table(group, seed)?))
    }

    pub fn with_table(table: CharacterTable) -> Self {
        let lin = LinGroup::new(table.group());
        Self { table, lin, monomial: OnceLock::new() }
    }

    pub fn group(&self) -> &GroupRef {
        self.table.group()
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn lin(&self) -> &LinRef {
        &self.lin
    }

    /// `None` when the group is too large for subgroup enumeration.
    pub fn is_monomial(&self) -> Option<bool> {
        *self.monomial.get_or_init(|| {
            enumerate_subgroups(self.group(), DEFAULT_SUBGROUP_CAP)
                .ok()
                .map(|subgroups| is_monomial_with(&self.table, &subgroups).monomial)
        })
    }

    /// `|μ_{1_A}(γ)|` for every irreducible `γ`, from class sums. Requires a
    /// normal `A`, where `\hat 1_A(γ)` is scalar.
    pub fn spec_rads(&self, a: &GroupSubset) -> Option<Vec<f64>> {
        if !is_normal(a) {
            return None;
        }
        let classes = self.table.classes();
        let reps = classes.representatives();
        let sizes = classes.sizes();
        let order = self.group().order() as f64;
        Some(
            (0..self.table.len())
                .map(|i| {
                    let s: num_complex::Complex64 = (0..classes.len())
                        .filter(|&c| a.contains(reps[c]))
                        .map(|c| self.table.value(i, c) * sizes[c] as f64)
                        .sum();
                    s.norm() / (order * self.table.dim(i) as f64)
                })
                .collect(),
        )
    }
}

fn is_normal(a: &GroupSubset) -> bool {
    let classes = a.group().classes();
    a.iter().all(|x| classes.class(classes.class_of(x)).iter().all(|&y| a.contains(y)))
}

/// `w = P_G(A)⁻¹ 1_A ∗ 1_{A⁻¹}`, stored as the exact counts
/// `r(x) = #{(a, b) ∈ A² : ab⁻¹ = x}`, so `w(x) = r(x)/|A|`.
#[derive(Clone, Debug)]
pub struct SpectrumWeight {
    source: GroupSubset,
    counts: Vec<usize>,
}

impl SpectrumWeight {
    pub fn new(a: &GroupSubset) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Parameter("spectrum weight of the empty set".into()));
        }
        let g = a.group();
        let mut counts = vec![0; g.order()];
        for x in a.iter() {
            for y in a.iter() {
                counts[g.mul(x, g.inv(y))] += 1;
            }
        }
        Ok(Self { source: a.clone(), counts })
    }

    pub fn source(&self) -> &GroupSubset {
        &self.source
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn value(&self, x: usize) -> Q {
        Q::new(self.counts[x] as i64, self.source.len() as i64)
    }

    /// `E_x w(x) = P_G(A)`.
    pub fn mean(&self) -> Q {
        let total: usize = self.counts.iter().sum();
        Q::new(total as i64, (self.source.len() * self.source.group().order()) as i64)
    }
}

/// Squared moduli `|Σ_{a∈A} γ(a)|²` for all of `Lin(G)`, reused across radii.
#[derive(Clone, Debug)]
pub struct SpectrumProfile {
    lin: LinRef,
    source: GroupSubset,
    sums_sq: Vec<f64>,
}

impl SpectrumProfile {
    pub fn new(lin: &LinRef, a: &GroupSubset) -> Result<Self> {
        if !std::sync::Arc::ptr_eq(lin.group(), a.group()) {
            return Err(Error::GroupMismatch);
        }
        if a.is_empty() {
            return Err(Error::Parameter("large spectrum of the empty set".into()));
        }
        let sums_sq = (0..lin.len()).map(|k| lin.character_sum(k, a).norm_sqr()).collect();
        Ok(Self { lin: lin.clone(), source: a.clone(), sums_sq })
    }

    pub fn lin(&self) -> &LinRef {
        &self.lin
    }

    pub fn source(&self) -> &GroupSubset {
        &self.source
    }

    /// `|\hat 1_A(γ)|`.
    pub fn modulus(&self, k: usize) -> f64 {
        self.sums_sq[k].sqrt() / self.source.group().order() as f64
    }

    /// `|\hat 1_A(γ)|² / P_G(A)²`, in `[0, 1]`.
    pub fn relative_sq(&self, k: usize) -> f64 {
        let a = self.source.len() as f64;
        self.sums_sq[k] / (a * a)
    }

    /// `LSpec(A, ε) = {γ : |\hat 1_A(γ)| ≥ √(1 − ε²/2) P_G(A)}`.
    pub fn large_spectrum(&self, eps: Q) -> Result<LargeSpectrum> {
        if eps <= Q::zero() || eps * eps > Q::from_integer(2) {
            return Err(Error::Parameter(format!("spectrum radius {eps} outside (0, √2]")));
        }
        let threshold = Q::one() - eps * eps / 2;
        let t = exact::to_f64(threshold);
        let members: Vec<usize> =
            (0..self.lin.len()).filter(|&k| self.relative_sq(k) >= t - SPECTRUM_TOLERANCE).collect();
        let values = members.iter().map(|&k| self.modulus(k)).collect();
        let threshold_value = t.sqrt() * self.source.density();
        Ok(LargeSpectrum { eps, threshold_value, members: CharSet::new(&self.lin, members)?, values })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LargeSpectrum {
    #[serde(with = "exact::rational")]
    pub eps: Q,
    /// `√(1 − ε²/2) P_G(A)`.
    pub threshold_value: f64,
    pub members: CharSet,
    /// `|\hat 1_A(γ)|` per member.
    pub values: Vec<f64>,
}

pub fn large_spectrum(lin: &LinRef, a: &GroupSubset, eps: Q) -> Result<LargeSpectrum> {
    SpectrumProfile::new(lin, a)?.large_spectrum(eps)
}

/// `ρ(γ, γ′)`: the `L²` distance between `γ` and `γ′` under the probability
/// measure proportional to `w`.
pub fn spectrum_distance(weight: &SpectrumWeight, lin: &LinRef, gamma: usize, other: usize) -> f64 {
    let a = weight.source.len() as f64;
    let total: f64 = weight
        .counts
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c > 0)
        .map(|(x, &c)| c as f64 * (lin.value(gamma, x) - lin.value(other, x)).norm_sqr())
        .sum();
    (total / (a * a)).sqrt()
}

/// `ρ(0, γ)²` measured directly against `2(1 − P_G(A)⁻²|\hat 1_A(γ)|²)`.
#[derive(Clone, Debug, Serialize)]
pub struct DistanceIdentity {
    pub gamma: usize,
    pub distance: f64,
    pub distance_squared: f64,
    /// `2(1 − P_G(A)⁻²|\hat 1_A(γ)|²)`, equal to the square of the distance.
    pub formula: f64,
    pub residual: f64,
}

pub fn distance_identity(weight: &SpectrumWeight, profile: &SpectrumProfile, gamma: usize) -> DistanceIdentity {
    let lin = &profile.lin;
    let distance = spectrum_distance(weight, lin, lin.zero(), gamma);
    let formula = 2.0 * (1.0 - profile.relative_sq(gamma));
    let distance_squared = distance * distance;
    DistanceIdentity { gamma, distance, distance_squared, formula, residual: (distance_squared - formula).abs() }
}

/// The four standing hypotheses on `(G, S, A)`.
pub fn standing_hypotheses(ctx: &SpectralContext, s: &GroupSubset, a: &GroupSubset) -> Result<Vec<Hypothesis>> {
    let g = ctx.group();
    if !std::sync::Arc::ptr_eq(g, s.group()) || !std::sync::Arc::ptr_eq(g, a.group()) {
        return Err(Error::GroupMismatch);
    }
    const STAGE: &str = "standing";
    let mut out = Vec::new();
    out.push(match ctx.is_monomial() {
        Some(m) => {
            Hypothesis::check(STAGE, "G is monomial", m, Some("a character is not induced from a linear one".into()))
        }
        None => Hypothesis::new(
            STAGE,
            "G is monomial",
            Status::Unchecked,
            Some(format!("order {} above subgroup cap", g.order())),
        ),
    });
    let span = g.generated_by(&s.to_vec()).count_ones(..);
    out.push(Hypothesis::check(STAGE, "S generates G", span == g.order(), Some(format!("<S> has order {span}"))));
    out.push(Hypothesis::check(STAGE, "S contains the identity", s.contains(g.identity()), None));
    let inv = a.inverse();
    let asym = a.first_outside(&inv).map(|x| format!("{x}"));
    out.push(Hypothesis::check(STAGE, "A is symmetric", asym.is_none(), asym));
    let classes = g.classes();
    let bad = a.iter().find_map(|x| classes.class(classes.class_of(x)).iter().copied().find(|&y| !a.contains(y)));
    out.push(Hypothesis::check(STAGE, "A is normal", bad.is_none(), bad.map(|y| format!("{y}"))));
    let sa = product_set(s, a)?.len();
    out.push(Hypothesis::check(
        STAGE,
        "P(S·A) < √2 P(A)",
        sa * sa < 2 * a.len() * a.len(),
        Some(format!("|S·A| = {sa}, |A| = {}", a.len())),
    ));
    Ok(out)
}

/// Growth profile long enough to read `|A^k|` for every `k`, when the
/// powers stabilise inside `2|G| + 2` steps.
fn powers(a: &GroupSubset) -> Result<GrowthProfile> {
    growth_profile(a, 2 * a.group().order() + 2)
}

/// `k^d ≥ ratio`, exactly for integral `d`.
fn power_dominates(k: u64, d: f64, lhs: usize, rhs_factor: usize) -> bool {
    if d >= 0.0 && d.fract() == 0.0 && d <= 64.0 {
        BigUint::from(lhs) <= BigUint::from(k).pow(d as u32) * BigUint::from(rhs_factor)
    } else {
        (lhs as f64 / rhs_factor as f64).ln() <= d * (k as f64).ln() + SPECTRUM_TOLERANCE
    }
}

/// Checks `P(A^k) ≤ k^d P(A)` on `lo ≤ k ≤ hi`, cut at the saturation point.
fn growth_window(stage: &str, profile: &GrowthProfile, lo: u64, hi: u64, d: f64) -> Hypothesis {
    let label = format!("P(A^k) ≤ k^d P(A) for {lo} ≤ k ≤ {hi}");
    if lo > hi {
        return Hypothesis::new(stage, label, Status::Holds, Some("empty window".into()));
    }
    let base = profile.base_size;
    let cap = match profile.saturated_at {
        Some(n) => (n as u64).max(lo),
        None => profile.n_max() as u64,
    };
    let top = hi.min(cap);
    for k in lo..=top {
        let size = profile.size(k as usize).expect("k inside the window");
        if !power_dominates(k, d, size, base) {
            return Hypothesis::new(stage, label, Status::Fails, Some(format!("k = {k}, |A^k| = {size}")));
        }
    }
    if top == hi {
        Hypothesis::new(stage, label, Status::Holds, None)
    } else if profile.saturated_at.is_some() {
        Hypothesis::new(stage, label, Status::Clipped, Some(format!("powers constant from k = {cap}")))
    } else {
        Hypothesis::new(stage, label, Status::Unchecked, Some(format!("checked up to k = {top}")))
    }
}

fn big_q(x: Q) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

fn unit_interval(name: &'static str, x: Q) -> Result<()> {
    if x <= Q::zero() || x > Q::one() {
        return Err(Error::Parameter(format!("{name} = {x} outside (0, 1]")));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct EnergyReport {
    #[serde(with = "exact::rational")]
    pub eta: Q,
    pub k: usize,
    pub hypotheses: Vec<Hypothesis>,
    /// Irreducibles of dimension above one with `SpecRad ≥ √(1 − η²/2) P(A)`.
    pub nonlinear_large: Vec<usize>,
    pub lspec_size: usize,
    /// The three sides divided by `P_G(A)^{2k}`.
    pub lhs: f64,
    pub middle: f64,
    pub rhs: f64,
    /// `middle` recomputed from Fourier scalars (normal `A` only).
    pub middle_fourier: Option<f64>,
    /// `|Σ_γ d_γ²|μ_γ|² − P_G(A)|` (normal `A` only).
    pub parseval_residual: Option<f64>,
    pub lhs_vs_middle: Verdict,
    pub middle_vs_rhs: Verdict,
}

/// Evaluates `Σ_{LSpec(A,η)} |\hat 1_A|^{2k} ≥ ½ Σ_γ d_γ² SpecRad^{2k} ≥
/// P(A)^{2k} / 2P(A^k)`.
///
/// The middle sum equals `E f²` for the `k`-fold convolution `f`, i.e.
/// `Σ_x N_k(x)² / |G|^{2k−1}` with `N_k(x)` the number of `k`-tuples from `A`
/// with product `x`; its comparison with the right side is exact.
pub fn spectral_energy_check(
    ctx: &SpectralContext,
    s: &GroupSubset,
    a: &GroupSubset,
    eta: Q,
    k: usize,
) -> Result<EnergyReport> {
    unit_interval("η", eta)?;
    if k == 0 {
        return Err(Error::NonPositive("k"));
    }
    let g = ctx.group();
    let order = g.order();
    let mut hypotheses = standing_hypotheses(ctx, s, a)?;

    let ak = powers(a)?.size(k).unwrap_or_else(|| crate::setops::power(a, k).len());
    let energy_hyp = {
        let q = big_q(Q::one() - eta * eta / 2);
        let lhs = num_traits::pow::pow(q, k - 1) * BigRational::from_integer(BigInt::from(2 * ak));
        lhs <= BigRational::from_integer(BigInt::from(a.len()))
    };
    hypotheses.push(Hypothesis::check(
        "energy",
        "(1 − η²/2)^(k−1) ≤ P(A) / 2P(A^k)",
        energy_hyp,
        Some(format!("|A^k| = {ak}, |A| = {}", a.len())),
    ));

    let rads = ctx.spec_rads(a);
    let t = exact::to_f64(Q::one() - eta * eta / 2);
    let pa = a.density();
    let nonlinear_large: Vec<usize> = match &rads {
        Some(r) => {
            (0..r.len()).filter(|&i| ctx.table.dim(i) > 1 && (r[i] / pa).powi(2) >= t - SPECTRUM_TOLERANCE).collect()
        }
        None => Vec::new(),
    };
    hypotheses.push(match &rads {
        Some(_) => Hypothesis::check(
            "energy",
            "every γ with SpecRad ≥ √(1 − η²/2) P(A) is one-dimensional",
            nonlinear_large.is_empty(),
            nonlinear_large.first().map(|i| format!("irreducible {i}")),
        ),
        None => Hypothesis::new(
            "energy",
            "large SpecRad only on linear γ",
            Status::Unchecked,
            Some("A is not normal".into()),
        ),
    });

    let profile = SpectrumProfile::new(&ctx.lin, a)?;
    let lspec = profile.large_spectrum(eta)?;
    let lhs: f64 = lspec.members.members().iter().map(|&j| profile.relative_sq(j).powi(k as i32)).sum();

    // N_k by repeated right multiplication
    let mut counts: Vec<BigUint> = (0..order).map(|x| BigUint::from(a.contains(x) as u8)).collect();
    for _ in 1..k {
        let mut next = vec![BigUint::zero(); order];
        for (x, c) in counts.iter().enumerate() {
            if !c.is_zero() {
                for y in a.iter() {
                    next[g.mul(x, y)] += c;
                }
            }
        }
        counts = next;
    }
    let energy: BigUint = counts.iter().map(|c| c * c).sum();
    let a_pow = BigUint::from(a.len()).pow(2 * k as u32);
    let middle_exact_holds = BigUint::from(ak) * &energy >= a_pow;
    let middle = BigRational::new(BigInt::from(energy * BigUint::from(order)), BigInt::from(a_pow))
        .to_f64()
        .unwrap_or(f64::INFINITY);
    let rhs = order as f64 / ak as f64;

    let middle_fourier = rads.as_ref().map(|r| {
        (0..r.len())
            .map(|i| {
                let d = ctx.table.dim(i) as f64;
                d * d * (r[i] / pa).powi(2 * k as i32)
            })
            .sum()
    });
    let parseval_residual = rads.as_ref().map(|r| {
        let e: f64 = (0..r.len()).map(|i| (ctx.table.dim(i) as f64).powi(2) * r[i] * r[i]).sum();
        (e - pa).abs()
    });

    let applicable = none_fail(&hypotheses) && nonlinear_large.is_empty();
    Ok(EnergyReport {
        eta,
        k,
        lspec_size: lspec.members.len(),
        nonlinear_large,
        lhs,
        middle,
        rhs,
        middle_fourier,
        parseval_residual,
        lhs_vs_middle: Verdict::gated(applicable, lhs >= middle / 2.0 * (1.0 - SPECTRUM_TOLERANCE)),
        middle_vs_rhs: Verdict::gated(applicable, middle_exact_holds),
        hypotheses,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChangReport {
    pub r: usize,
    pub x: CharSet,
    /// `|X| ≤ r`.
    pub within_bound: bool,
    /// `|rS + T|` against `2^r |T|`; when `0 ∈ S` and this holds, `|X| < r`.
    pub premise_lhs: usize,
    pub premise_rhs: String,
    pub premise_holds: bool,
    /// `S ⊆ Span(X) + T − T`.
    pub covering_holds: bool,
    /// Same, rechecked element by element against `Span(X)`.
    pub revalidated: bool,
}

/// Greedy covering: scans `S` in ascending order and adds every `s` outside
/// `Span(X) + T − T` to `X`.
pub fn chang_cover(s: &CharSet, t: &CharSet, r: usize) -> Result<ChangReport> {
    if s.is_empty() || t.is_empty() {
        return Err(Error::Parameter("Chang covering needs nonempty S and T".into()));
    }
    if !std::sync::Arc::ptr_eq(s.lin(), t.lin()) {
        return Err(Error::GroupMismatch);
    }
    let lin = s.lin();
    let tt = t.difference(t);
    let mut cover = tt.clone();
    let mut x = Vec::new();
    for &g in s.members() {
        if cover.contains(g) {
            continue;
        }
        x.push(g);
        if x.len() > crate::bohr::SPAN_GUARD {
            return Err(Error::SpanGuard { size: x.len(), limit: crate::bohr::SPAN_GUARD });
        }
        let step = CharSet::new(lin, [lin.zero(), g, lin.neg(g)])?;
        cover = cover.sum(&step);
    }
    let x = CharSet::new(lin, x)?;
    let covering_holds = s.is_subset(&cover);

    let span = char_span(&x)?;
    let revalidated = s
        .members()
        .iter()
        .all(|&g| t.members().iter().any(|&a| t.members().iter().any(|&b| span.contains(lin.add(lin.sub(g, a), b)))));

    let rs_t = crate::bohr::kfold_charset(s, r.max(1))?.sum(t);
    let bound = BigUint::from(2u32).pow(r as u32) * BigUint::from(t.len());
    let premise_holds = r >= 1 && BigUint::from(rs_t.len()) < bound;
    Ok(ChangReport {
        r,
        within_bound: x.len() <= r,
        x,
        premise_lhs: rs_t.len(),
        premise_rhs: bound.to_string(),
        premise_holds,
        covering_holds,
        revalidated,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// No `r ≥ 2` with `(2r + 1/2)ε ≤ 1` had `|LSpec(A,(2r+½)ε)| < 2^r |LSpec(A,ε/2)|`.
    Small,
    Cover,
}

#[derive(Clone, Debug, Serialize)]
pub struct DoublingReport {
    #[serde(with = "exact::rational")]
    pub eps: Q,
    #[serde(with = "exact::rational")]
    pub eps_inverse: Q,
    pub d: f64,
    pub hypotheses: Vec<Hypothesis>,
    pub branch: Branch,
    /// `(r, |LSpec(A,(2r+½)ε)|)` for every `r` scanned.
    pub scan: Vec<(usize, usize)>,
    pub lspec_half: usize,
    pub lspec: LargeSpectrum,
    pub r: Option<usize>,
    pub chang: Option<ChangReport>,
    pub x: CharSet,
    /// `X ⊆ LSpec(A, 2ε)`.
    pub x_in_lspec_double: bool,
    /// `LSpec(A,ε) + LSpec(A,ε) ⊆ Span(X) + LSpec(A,ε)`.
    pub covering_holds: Option<bool>,
}

/// Runs the spectrum-doubling argument: finds `r`, builds `X` by greedy
/// covering and checks `LSpec + LSpec ⊆ Span(X) + LSpec`.
pub fn lspec_doubling_cover(
    ctx: &SpectralContext,
    s: &GroupSubset,
    a: &GroupSubset,
    eps: Q,
    d: f64,
) -> Result<DoublingReport> {
    unit_interval("ε", eps)?;
    if !(d >= 1.0) {
        return Err(Error::Parameter(format!("d = {d} below 1")));
    }
    let mut hypotheses = standing_hypotheses(ctx, s, a)?;
    let inv = exact::to_f64(eps).recip();
    let lo = (64.0 * d * (32.0 * d).ln()).ceil() as u64;
    let hi = (128.0 * inv * inv * d * (32.0 * inv * inv * d).ln()).floor().min(u64::MAX as f64 / 2.0) as u64;
    hypotheses.push(growth_window("window", &powers(a)?, lo, hi, d));

    let profile = SpectrumProfile::new(&ctx.lin, a)?;
    let lspec = profile.large_spectrum(eps)?;
    let half = profile.large_spectrum(eps / 2)?;
    let mut scan = Vec::new();
    let mut chosen = None;
    let mut r = 2usize;
    while eps * Q::new(4 * r as i64 + 1, 2) <= Q::one() {
        let wide = profile.large_spectrum(eps * Q::new(4 * r as i64 + 1, 2))?;
        scan.push((r, wide.members.len()));
        if r >= 64
            || BigUint::from(wide.members.len()) < BigUint::from(2u32).pow(r as u32) * BigUint::from(half.members.len())
        {
            chosen = Some(r);
            break;
        }
        r += 1;
    }

    let lin = &ctx.lin;
    let (branch, chang, x, covering_holds) = match chosen {
        None => (Branch::Small, None, CharSet::empty(lin), None),
        Some(r) => {
            let double = profile.large_spectrum(eps * 2)?;
            let chang = chang_cover(&double.members, &half.members, r)?;
            let x = chang.x.clone();
            let target = char_span(&x)?.sum(&lspec.members);
            let sums = lspec.members.sum(&lspec.members);
            (Branch::Cover, Some(chang), x, Some(sums.is_subset(&target)))
        }
    };
    let x_in_lspec_double = x.is_empty() || {
        let double = profile.large_spectrum((eps * 2).min(Q::one()))?;
        x.is_subset(&double.members)
    };
    Ok(DoublingReport {
        eps,
        eps_inverse: eps.recip(),
        d,
        hypotheses,
        branch,
        scan,
        lspec_half: half.members.len(),
        lspec,
        r: chosen,
        chang,
        x,
        x_in_lspec_double,
        covering_holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SizeReport {
    #[serde(with = "exact::rational")]
    pub eps: Q,
    pub k: u64,
    pub d: f64,
    pub hypotheses: Vec<Hypothesis>,
    pub lspec_size: usize,
    /// `|LinBohr(LSpec(A,ε), 1/2π)|`.
    pub bohr_size: usize,
    /// `P_G(LinBohr(LSpec(A,ε), 1/2π))`.
    #[serde(with = "exact::rational")]
    pub lhs: Q,
    /// `8k^d P_G(A)`.
    pub rhs: f64,
    pub verdict: Verdict,
}

/// Checks `P_G(LinBohr(LSpec(A,ε), 1/2π)) ≤ 8k^d P_G(A)`.
pub fn lspec_size_check(
    ctx: &SpectralContext,
    s: &GroupSubset,
    a: &GroupSubset,
    eps: Q,
    k: u64,
    d: f64,
) -> Result<SizeReport> {
    unit_interval("ε", eps)?;
    if k == 0 {
        return Err(Error::NonPositive("k"));
    }
    if !(d >= 1.0) {
        return Err(Error::Parameter(format!("d = {d} below 1")));
    }
    let mut hypotheses = standing_hypotheses(ctx, s, a)?;
    let inv = exact::to_f64(eps).recip();
    let k_min = 16.0 * inv * inv * d * (8.0 * inv * inv * d).ln();
    hypotheses.push(Hypothesis::check(
        "size",
        "k ≥ 16ε⁻²d log 8ε⁻²d",
        k as f64 >= k_min,
        Some(format!("needs k ≥ {}", exact::sig12(k_min))),
    ));
    hypotheses.push(growth_window("size", &powers(a)?, k, k, d));

    let lspec = large_spectrum(&ctx.lin, a, eps)?;
    let bohr = linbohr(&lspec.members, Radius::inverse_two_pi());
    let holds = power_dominates(k, d, bohr.len(), 8 * a.len());
    let rhs = 8.0 * (k as f64).powf(d) * a.density();
    let applicable = none_fail(&hypotheses);
    Ok(SizeReport {
        eps,
        k,
        d,
        lspec_size: lspec.members.len(),
        bohr_size: bohr.len(),
        lhs: Q::new(bohr.len() as i64, ctx.group().order() as i64),
        rhs,
        verdict: Verdict::gated(applicable, holds),
        hypotheses,
    })
}
