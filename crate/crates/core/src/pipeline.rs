//! The ball construction for a symmetric normal neighbourhood of the
//! identity, run stage by stage with every containment checked exactly.

use serde::Serialize;

use crate::bohr::{bohr_norm, linbohr};
use crate::exact::{self, Radius, Q};
use crate::group::{GroupSubset, Subgroup};
use crate::harmonic::{is_hereditarily_monomial, LinRef};
use crate::hypothesis::{Hypothesis, Status};
use crate::metric::ball_dimension;
use crate::setops::{difference_set, growth_profile, power};
use crate::spectra::{
    lspec_doubling_cover, lspec_size_check, Branch, DoublingReport, SizeReport, SpectralContext, SpectrumProfile,
};
use crate::{Error, Result};

/// Largest `⟨A⟩` whose subgroups are all tested for monomiality.
pub const HEREDITARY_CAP: usize = 64;

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    /// The constant in `ε⁻¹ = 2⁹(1 + C) d′ log² 2d′`.
    pub constant_c: f64,
    /// Last power used when fitting `d` and `d′`.
    pub n_max: usize,
    pub epsilon_override: Option<Q>,
    pub dimension_override: Option<f64>,
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self { constant_c: 1.0, n_max: 16, epsilon_override: None, dimension_override: None, seed: 0 }
    }
}

impl PipelineConfig {
    fn validate(&self) -> Result<()> {
        if !(self.constant_c > 0.0) {
            return Err(Error::NonPositive("constant C"));
        }
        if self.n_max < 4 {
            return Err(Error::Parameter(format!("n_max = {} below 4", self.n_max)));
        }
        if let Some(e) = self.epsilon_override {
            if e <= Q::from_integer(0) || e > Q::from_integer(1) {
                return Err(Error::Parameter(format!("ε = {e} outside (0, 1]")));
            }
        }
        if let Some(d) = self.dimension_override {
            if !(d >= 1.0) {
                return Err(Error::Parameter(format!("d = {d} below 1")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelChoice {
    pub l: usize,
    /// `|A^{l−1}|, |A^l|, |A^{l+1}|`, with `A⁰ = {e}`.
    pub sizes: [usize; 3],
    /// `K_l = P(A^l) / P(A^{l−1})`.
    #[serde(with = "exact::rational")]
    pub k_ratio: Q,
    /// `P(A·A^l) < √2 P(A^l)`.
    pub next_small: bool,
    /// `P(A^l) < √2 P(A^{l−1})`.
    pub current_small: bool,
}

/// Smallest `l ≥ 1` with `P(A^{l+1}) < √2 P(A^{l−1})`, decided on squares.
pub fn find_l(a: &GroupSubset) -> Result<LevelChoice> {
    if a.is_empty() {
        return Err(Error::Parameter("find_l on the empty set".into()));
    }
    let g = a.group();
    let mut sizes = vec![1usize];
    let mut current = GroupSubset::identity(g);
    let mut l = 1;
    loop {
        while sizes.len() < l + 2 {
            current = crate::setops::product_set(&current, a)?;
            sizes.push(current.len());
        }
        let (below, here, above) = (sizes[l - 1], sizes[l], sizes[l + 1]);
        if above * above < 2 * below * below {
            return Ok(LevelChoice {
                l,
                sizes: [below, here, above],
                k_ratio: Q::new(here as i64, below as i64),
                next_small: above * above < 2 * here * here,
                current_small: here * here < 2 * below * below,
            });
        }
        l += 1;
        if l > 4 * g.order() + 4 {
            return Err(Error::Parameter("powers of A never stabilise".into()));
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InclusionReport {
    pub l: usize,
    #[serde(with = "exact::rational")]
    pub k_ratio: Q,
    #[serde(with = "exact::rational")]
    pub eps: Q,
    /// `2ε√(2K)`.
    pub radius: String,
    pub radius_value: f64,
    pub lspec_size: usize,
    pub difference_size: usize,
    pub bohr_size: usize,
    pub holds: bool,
    pub witness: Option<usize>,
}

/// Checks `AA⁻¹ ⊆ LinBohr(LSpec(A^l, ε), 2ε√(2K))` with `K = P(A^l)/P(A^{l−1})`.
pub fn prop81_check(lin: &LinRef, a: &GroupSubset, l: usize, eps: Q) -> Result<InclusionReport> {
    if l == 0 {
        return Err(Error::NonPositive("l"));
    }
    if eps <= Q::from_integer(0) || eps > Q::from_integer(1) {
        return Err(Error::Parameter(format!("ε = {eps} outside (0, 1]")));
    }
    let below = if l == 1 { 1 } else { power(a, l - 1).len() };
    let al = power(a, l);
    let k_ratio = Q::new(al.len() as i64, below as i64);
    let lspec = SpectrumProfile::new(lin, &al)?.large_spectrum(eps)?;
    let radius = Radius::Surd { coeff: eps * 2, radicand: k_ratio * 2 };
    let bohr = linbohr(&lspec.members, radius);
    let diff = difference_set(a);
    let witness = diff.first_outside(&bohr);
    Ok(InclusionReport {
        l,
        k_ratio,
        eps,
        radius: radius.to_string(),
        radius_value: radius.to_f64(),
        lspec_size: lspec.members.len(),
        difference_size: diff.len(),
        bohr_size: bohr.len(),
        holds: witness.is_none(),
        witness,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Containment {
    pub step: String,
    pub holds: bool,
    pub witness: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub order: usize,
    /// `|⟨A⟩|`; all later sets live in `⟨A⟩`.
    pub generated_order: usize,
    pub a_size: usize,
    pub seed: u64,
    pub constant_c: f64,
    pub n_max: usize,
    pub level: LevelChoice,
    pub d: f64,
    pub d_prime: f64,
    #[serde(with = "exact::rational")]
    pub eps: Q,
    pub branch: Branch,
    pub x_size: usize,
    pub lspec_size: usize,
    pub doubling: DoublingReport,
    pub containments: Vec<Containment>,
    pub contained: bool,
    /// Elements of `B` in the input group.
    pub ball: Vec<usize>,
    pub ball_size: usize,
    pub ball_dimension: f64,
    #[serde(with = "exact::rational")]
    pub size_ratio: Q,
    pub log_size_ratio: f64,
    /// `d log³ 2d` and `d log 2d`, for comparison only.
    pub dimension_shape: f64,
    pub size_shape: f64,
    pub size_check: SizeReport,
    pub hypotheses: Vec<Hypothesis>,
}

fn fitted(a: &GroupSubset, n_max: usize) -> Result<f64> {
    Ok(growth_profile(a, n_max)?.fitted_d.max(1.0))
}

/// Runs the whole construction and returns the ball `B` with every
/// intermediate verdict. A failed containment is an error: every step is
/// exact, so a failure means a defect, not a tolerance issue.
pub fn freiman_ball(a: &GroupSubset, config: &PipelineConfig) -> Result<PipelineReport> {
    config.validate()?;
    if a.is_empty() {
        return Err(Error::Parameter("freiman_ball on the empty set".into()));
    }
    let parent = a.group().clone();
    let mut ledger = Vec::new();

    let h = Subgroup::generated(&parent, &a.to_vec())?;
    let emb = h.embed();
    let g = emb.group.clone();
    let al = emb.restrict(a);
    let to_parent = |s: &GroupSubset| -> Vec<usize> { s.iter().map(|x| emb.to_parent[x]).collect() };

    const SETUP: &str = "setup";
    ledger.push(Hypothesis::check(SETUP, "A contains the identity", al.contains(g.identity()), None));
    let asym = al.first_outside(&al.inverse()).map(|x| emb.to_parent[x].to_string());
    ledger.push(Hypothesis::check(SETUP, "A is symmetric", asym.is_none(), asym));
    let classes = g.classes();
    let bad = al.iter().find_map(|x| classes.class(classes.class_of(x)).iter().copied().find(|&y| !al.contains(y)));
    ledger.push(Hypothesis::check(
        SETUP,
        "A is normal in ⟨A⟩",
        bad.is_none(),
        bad.map(|y| emb.to_parent[y].to_string()),
    ));
    ledger.push(if g.is_abelian() {
        Hypothesis::new(SETUP, "⟨A⟩ is hereditarily monomial", Status::Holds, Some("abelian".into()))
    } else if g.order() <= HEREDITARY_CAP {
        let r = is_hereditarily_monomial(&g, config.seed)?;
        Hypothesis::check(
            SETUP,
            "⟨A⟩ is hereditarily monomial",
            r.hereditarily_monomial,
            r.first_failure.map(|f| format!("subgroup of order {}", f.len())),
        )
    } else {
        Hypothesis::new(
            SETUP,
            "⟨A⟩ is hereditarily monomial",
            Status::Unchecked,
            Some(format!("order {} above {HEREDITARY_CAP}", g.order())),
        )
    });

    let d = match config.dimension_override {
        Some(d) => d,
        None => fitted(&al, config.n_max)?,
    };
    let level = find_l(&al)?;
    ledger.push(Hypothesis::check("level", "P(A·A^l) < √2 P(A^l)", level.next_small, None));
    ledger.push(Hypothesis::check("level", "P(A^l) < √2 P(A^{l−1})", level.current_small, None));
    let a_l = power(&al, level.l);
    let d_prime = match config.dimension_override {
        Some(d) => d,
        None => fitted(&a_l, config.n_max)?,
    };
    let eps = match config.epsilon_override {
        Some(e) => e,
        None => {
            let ln = (2.0 * d_prime).ln();
            let inv = (512.0 * (1.0 + config.constant_c) * d_prime * ln * ln).ceil();
            Q::new(1, inv.max(1.0) as i64)
        }
    };

    let ctx = SpectralContext::new(&g, config.seed)?;
    let lin = ctx.lin().clone();
    let doubling = lspec_doubling_cover(&ctx, &al, &a_l, eps, d_prime)?;
    ledger
        .extend(doubling.hypotheses.iter().map(|h| Hypothesis { stage: format!("doubling/{}", h.stage), ..h.clone() }));
    let profile = SpectrumProfile::new(&lin, &a_l)?;
    let lspec = doubling.lspec.members.clone();
    let double = profile.large_spectrum(eps * 2)?.members;
    let frequencies = lspec.union(&doubling.x);
    let ball = linbohr(&frequencies, Q::new(1, 16));

    let mut containments = Vec::new();
    let mut record = |step: &str, witness: Option<usize>| {
        containments.push(Containment {
            step: step.into(),
            holds: witness.is_none(),
            witness: witness.map(|x| emb.to_parent[x]),
        });
    };
    record("LSpec(A^l,ε) ∪ X ⊆ LSpec(A^l,2ε)", frequencies.first_outside(&double));
    let diff = difference_set(&al);
    let difference_check = prop81_check(&lin, &al, level.l, eps * 2)?;
    let surd = linbohr(&double, Radius::Surd { coeff: eps * 4, radicand: level.k_ratio * 2 });
    record("AA⁻¹ ⊆ LinBohr(LSpec(A^l,2ε), 4ε√(2K))", diff.first_outside(&surd));
    debug_assert_eq!(difference_check.holds, diff.is_subset(&surd));
    let eight = linbohr(&double, eps * 8);
    record("LinBohr(LSpec(A^l,2ε), 4ε√(2K)) ⊆ LinBohr(LSpec(A^l,2ε), 8ε)", surd.first_outside(&eight));
    let sixteenth = linbohr(&double, Q::new(1, 16));
    record("LinBohr(LSpec(A^l,2ε), 8ε) ⊆ LinBohr(LSpec(A^l,2ε), 2⁻⁴)", eight.first_outside(&sixteenth));
    record("LinBohr(LSpec(A^l,2ε), 2⁻⁴) ⊆ B", sixteenth.first_outside(&ball));
    record("AA⁻¹ ⊆ B", diff.first_outside(&ball));
    if let Some(c) = containments.iter().find(|c| !c.holds) {
        return Err(Error::ContainmentFailure { stage: c.step.clone(), witness: c.witness.unwrap_or(0) });
    }

    let dim = ball_dimension(&bohr_norm(&frequencies), Q::new(1, 16))?;
    let size_ratio = Q::new(ball.len() as i64, al.len() as i64);
    let inv = exact::to_f64(eps).recip();
    let k = (16.0 * inv * inv * d_prime * (8.0 * inv * inv * d_prime).ln()).ceil().max(1.0) as u64;
    let size_check = lspec_size_check(&ctx, &al, &a_l, eps, k, d_prime)?;
    let l2 = (2.0 * d).ln();

    Ok(PipelineReport {
        order: parent.order(),
        generated_order: g.order(),
        a_size: al.len(),
        seed: config.seed,
        constant_c: config.constant_c,
        n_max: config.n_max,
        level,
        d,
        d_prime,
        eps,
        branch: doubling.branch,
        x_size: doubling.x.len(),
        lspec_size: lspec.len(),
        containments,
        contained: true,
        ball: {
            let mut b = to_parent(&ball);
            b.sort_unstable();
            b
        },
        ball_size: ball.len(),
        ball_dimension: dim.d,
        size_ratio,
        log_size_ratio: exact::to_f64(size_ratio).ln(),
        dimension_shape: d * l2.powi(3),
        size_shape: d * l2,
        size_check,
        doubling,
        hypotheses: ledger,
    })
}
