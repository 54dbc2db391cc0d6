//! Command-line front end: argument parsing, input loading and dispatch.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::json;

use crate::bohr::{bohr_dimension_cover, bohr_norm, cor53_check, linbohr, prop51_check, CharSet, CharSetJson};
use crate::exact::{parse_rational, Q};
use crate::group::{enumerate_subgroups, GroupRef, GroupSpec, GroupSubset};
use crate::harmonic::{character_table, is_hereditarily_monomial, is_monomial_with, LinGroup};
use crate::hypothesis::{none_fail, Verdict};
use crate::metric::{ball_axioms_check, ball_dimension, bourgain_radius, validate_norm, word_norm, PseudoMetricNorm};
use crate::pipeline::{freiman_ball, PipelineConfig, HEREDITARY_CAP};
use crate::report::{Envelope, Format, Outcome};
use crate::setops::{appendix_growth_check, growth_profile, set_predicates, SetSpec};
use crate::spectra::{
    distance_identity, lspec_doubling_cover, lspec_size_check, spectral_energy_check, SpectralContext, SpectrumProfile,
    SpectrumWeight,
};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "monoball",
    version,
    about = "Exact experiments on growth, Bohr sets and large spectra in small groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Order, classes, element orders and Lin(G); set predicates with --set.
    GroupInfo(Common),
    /// |Aⁿ| for n ≤ --nmax and the fitted growth exponent.
    Growth {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 16)]
        nmax: usize,
    },
    /// Character table with orthogonality residuals.
    Chartable(Common),
    /// Monomial certificates for every irreducible character.
    Monomial(Common),
    /// LinBohr(Γ, δ), the k-fold identity and the 4^|Γ| cover; growth versus X with --span.
    Bohr {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        chars: String,
        #[arg(long, value_parser = rational)]
        delta: Q,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Second character set X for the Bohr growth check.
        #[arg(long)]
        span: Option<String>,
    },
    /// LSpec(A, ε), the distance identity, and the Bohr-of-spectrum size bound with --k and --d.
    Lspec {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = rational)]
        eps: Q,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        d: Option<f64>,
        #[command(flatten)]
        gens: Gens,
    },
    /// Ball dimension, ball axioms and a regular radius for a word or Bohr norm.
    MetricDim {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = rational)]
        delta: Q,
        /// Use the Bohr norm of these characters instead of the word norm of --set.
        #[arg(long)]
        chars: Option<String>,
        #[arg(long)]
        d: Option<f64>,
    },
    /// Spectral energy inequalities for η = --eps and k.
    Energy {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = rational)]
        eps: Q,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        gens: Gens,
    },
    /// Spectrum doubling via the greedy covering.
    Cover {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = rational)]
        eps: Q,
        #[arg(long, default_value_t = 1.0)]
        d: f64,
        #[command(flatten)]
        gens: Gens,
    },
    /// The full ball construction.
    Freiman {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 16)]
        nmax: usize,
        #[arg(long, default_value_t = 1.0)]
        constant_c: f64,
        #[arg(long, value_parser = rational)]
        eps: Option<Q>,
        #[arg(long)]
        d: Option<f64>,
    },
    /// Ruzsa covering and (AA⁻¹)ⁿ ⊆ Xⁿ⁻¹AA⁻¹.
    Appendix {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Group spec: a JSON file or inline JSON.
    #[arg(long)]
    pub group: String,
    /// Set spec: a JSON file or inline JSON.
    #[arg(long)]
    pub set: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: FormatArg,
    /// Largest group order accepted.
    #[arg(long, default_value_t = 256)]
    pub cap: usize,
}

#[derive(Args, Debug, Clone)]
pub struct Gens {
    /// Generating set S; defaults to A.
    #[arg(long)]
    pub gens: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

fn rational(text: &str) -> std::result::Result<Q, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

/// Reads `arg` as inline JSON when it starts with `{` or `[`, else as a path.
fn load<T: DeserializeOwned>(what: &str, arg: &str) -> Result<T> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::InvalidSpec(format!("{what} file `{arg}`: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::InvalidSpec(format!("{what}: {e}")))
}

impl Common {
    fn group(&self) -> Result<GroupRef> {
        let spec: GroupSpec = load("group", &self.group)?;
        let g = spec.build()?;
        if g.order() > self.cap {
            return Err(Error::CapExceeded { order: g.order(), cap: self.cap });
        }
        Ok(g)
    }

    fn set(&self, g: &GroupRef) -> Result<GroupSubset> {
        let arg = self.set.as_deref().ok_or_else(|| Error::Parameter("this command needs --set".into()))?;
        load::<SetSpec>("set", arg)?.build(g)
    }

    fn format(&self) -> Format {
        match self.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

fn gens_or(gens: &Gens, g: &GroupRef, a: &GroupSubset) -> Result<GroupSubset> {
    match &gens.gens {
        Some(arg) => load::<SetSpec>("gens", arg)?.build(g),
        None => Ok(a.clone()),
    }
}

fn chars(lin: &crate::harmonic::LinRef, arg: &str) -> Result<CharSet> {
    CharSet::from_json(lin, &load::<CharSetJson>("chars", arg)?)
}

/// `n/a` verdicts are hypothesis failures, not falsifications.
pub fn verdict_outcome(v: Verdict) -> Outcome {
    match v {
        Verdict::Holds => Outcome::Pass,
        Verdict::Fails => Outcome::Falsified,
        Verdict::NotApplicable => Outcome::Hypothesis,
    }
}

/// Outcome of an exact assertion.
pub fn check(holds: bool) -> Outcome {
    if holds {
        Outcome::Pass
    } else {
        Outcome::Falsified
    }
}

/// Runs one command and returns the finished envelope.
pub fn execute(command: &Command) -> Result<(Envelope, Option<PathBuf>, Format)> {
    let (name, common) = match command {
        Command::GroupInfo(c) => ("group-info", c),
        Command::Growth { common, .. } => ("growth", common),
        Command::Chartable(c) => ("chartable", c),
        Command::Monomial(c) => ("monomial", c),
        Command::Bohr { common, .. } => ("bohr", common),
        Command::Lspec { common, .. } => ("lspec", common),
        Command::MetricDim { common, .. } => ("metric-dim", common),
        Command::Energy { common, .. } => ("energy", common),
        Command::Cover { common, .. } => ("cover", common),
        Command::Freiman { common, .. } => ("freiman", common),
        Command::Appendix { common, .. } => ("appendix", common),
    };
    let g = common.group()?;
    let seed = common.seed;
    let envelope = |outcome: Outcome, summary: String, report: &serde_json::Value| {
        Envelope::new(name, seed, outcome, summary, report)
    };

    let env = match command {
        Command::GroupInfo(c) => {
            let classes = g.classes();
            let lin = LinGroup::new(&g);
            let mut report = json!({
                "order": g.order(),
                "abelian": g.is_abelian(),
                "class_sizes": classes.sizes(),
                "class_representatives": classes.representatives(),
                "element_orders": (0..g.order()).map(|x| g.element_order(x)).collect::<Vec<_>>(),
                "lin_order": lin.len(),
                "lin_factors": lin.factor_orders(),
            });
            if c.set.is_some() {
                let a = c.set(&g)?;
                report["set"] = serde_json::to_value(set_predicates(&a)?)?;
                report["set_elements"] = json!(a.to_vec());
            }
            let summary = format!("order {}, {} classes, |Lin| = {}", g.order(), classes.len(), lin.len());
            envelope(Outcome::Pass, summary, &report)?
        }
        Command::Growth { common, nmax } => {
            let a = common.set(&g)?;
            let p = growth_profile(&a, *nmax)?;
            let summary =
                format!("|A| = {}, |A^{}| = {}, fitted d = {:.4}", a.len(), nmax, p.sizes[nmax - 1], p.fitted_d);
            envelope(Outcome::Pass, summary, &serde_json::to_value(&p)?)?
        }
        Command::Chartable(_) => {
            let t = character_table(&g, seed)?;
            let (row, col) = (t.orthonormality_residual(), t.column_residual());
            let report = json!({ "table": t.to_json(), "row_residual": row, "column_residual": col });
            let summary = format!("{} irreducibles, residual {:.1e}", t.len(), row.max(col));
            envelope(check(row < 1e-8 && col < 1e-8), summary, &report)?
        }
        Command::Monomial(c) => {
            let subgroups = enumerate_subgroups(&g, c.cap)?;
            let t = character_table(&g, seed)?;
            let m = is_monomial_with(&t, &subgroups);
            let residuals_ok =
                m.characters.iter().filter_map(|x| x.certificate.as_ref()).all(|cert| cert.residual < 1e-8);
            let hereditary = if g.order() <= HEREDITARY_CAP { Some(is_hereditarily_monomial(&g, seed)?) } else { None };
            let summary = format!(
                "monomial = {}, hereditarily = {}",
                m.monomial,
                hereditary.as_ref().map_or("unchecked".to_string(), |h| h.hereditarily_monomial.to_string())
            );
            let report = json!({ "monomial": m, "hereditary": hereditary });
            envelope(check(residuals_ok), summary, &report)?
        }
        Command::Bohr { chars: gamma_arg, delta, k, span, .. } => {
            let lin = LinGroup::new(&g);
            let gamma = chars(&lin, gamma_arg)?;
            let ball = linbohr(&gamma, *delta);
            let norm = validate_norm(&bohr_norm(&gamma));
            let cor = cor53_check(&gamma, *k, *delta)?;
            let mut outcome = check(norm.valid);
            outcome = outcome.and(if cor.hypotheses_hold { check(cor.equal) } else { Outcome::Hypothesis });
            let cover = if *delta > Q::from_integer(0) && *delta <= Q::new(1, 4) {
                let c = bohr_dimension_cover(&gamma, *delta)?;
                outcome = outcome.and(check(c.covering_holds && c.count_holds && c.dimension_holds));
                Some(c)
            } else {
                None
            };
            let growth = match span {
                Some(x_arg) => {
                    let x = chars(&lin, x_arg)?;
                    let r = prop51_check(&gamma, &x, *delta)?;
                    outcome = outcome.and(if r.hypotheses_hold {
                        check(r.ratio_within_bound && r.chain.iter().all(|s| s.holds || !s.justified))
                    } else {
                        Outcome::Hypothesis
                    });
                    Some(r)
                }
                None => None,
            };
            let summary = format!("|LinBohr(Γ, {delta})| = {}, k-fold equality = {}", ball.len(), cor.equal);
            let report = json!({
                "gamma": gamma,
                "ball": ball.to_vec(),
                "ball_size": ball.len(),
                "norm": norm,
                "kfold": cor,
                "dimension_cover": cover,
                "growth": growth,
            });
            envelope(outcome, summary, &report)?
        }
        Command::Lspec { common, eps, k, d, gens } => {
            let a = common.set(&g)?;
            let ctx = SpectralContext::new(&g, seed)?;
            let profile = SpectrumProfile::new(ctx.lin(), &a)?;
            let l = profile.large_spectrum(*eps)?;
            let w = SpectrumWeight::new(&a)?;
            let ids: Vec<_> = l.members.members().iter().map(|&j| distance_identity(&w, &profile, j)).collect();
            let mut outcome = check(ids.iter().all(|i| i.residual < 1e-9));
            let size = match (k, d) {
                (Some(k), Some(d)) => {
                    let s = gens_or(gens, &g, &a)?;
                    let r = lspec_size_check(&ctx, &s, &a, *eps, *k, *d)?;
                    outcome = outcome.and(verdict_outcome(r.verdict));
                    Some(r)
                }
                _ => None,
            };
            let summary = format!("|LSpec(A, {eps})| = {}", l.members.len());
            let report = json!({ "spectrum": l, "distance_identities": ids, "size_check": size });
            envelope(outcome, summary, &report)?
        }
        Command::MetricDim { common, delta, chars: chars_arg, d } => {
            let rho: PseudoMetricNorm<Q> = match chars_arg {
                Some(arg) => bohr_norm(&chars(&LinGroup::new(&g), arg)?),
                None => word_norm(&common.set(&g)?)?,
            };
            let dim = ball_dimension(&rho, *delta)?;
            let axioms = ball_axioms_check(&rho);
            let norm = validate_norm(&rho);
            let d = d.unwrap_or(dim.d);
            let mut outcome = check(axioms.all_hold() && norm.valid);
            // a claimed dimension below the measured one is a hypothesis failure
            let bourgain = if d + 1e-12 < dim.d {
                outcome = outcome.and(Outcome::Hypothesis);
                None
            } else {
                match bourgain_radius(&rho, *delta, d) {
                    Ok(r) => Some(r),
                    Err(Error::NoRegularRadius { .. }) => {
                        outcome = Outcome::Falsified;
                        None
                    }
                    Err(e) => return Err(e),
                }
            };
            let summary = format!("dimension {:.6} at δ = {delta}", dim.d);
            let report = json!({ "norm": norm, "dimension": dim, "axioms": axioms, "regular_radius": bourgain });
            envelope(outcome, summary, &report)?
        }
        Command::Energy { common, eps, k, gens } => {
            let a = common.set(&g)?;
            let s = gens_or(gens, &g, &a)?;
            let ctx = SpectralContext::new(&g, seed)?;
            let r = spectral_energy_check(&ctx, &s, &a, *eps, *k)?;
            let outcome = verdict_outcome(r.lhs_vs_middle).and(verdict_outcome(r.middle_vs_rhs));
            let summary = format!("lhs {:.6e}, middle {:.6e}, rhs {:.6e}", r.lhs, r.middle, r.rhs);
            envelope(outcome, summary, &serde_json::to_value(&r)?)?
        }
        Command::Cover { common, eps, d, gens } => {
            let a = common.set(&g)?;
            let s = gens_or(gens, &g, &a)?;
            let ctx = SpectralContext::new(&g, seed)?;
            let r = lspec_doubling_cover(&ctx, &s, &a, *eps, *d)?;
            let exact = r.covering_holds.unwrap_or(true)
                && r.x_in_lspec_double
                && r.chang.as_ref().is_none_or(|c| c.covering_holds && c.revalidated);
            let outcome = if !exact {
                Outcome::Falsified
            } else if !none_fail(&r.hypotheses) {
                Outcome::Hypothesis
            } else {
                Outcome::Pass
            };
            let branch = serde_json::to_value(r.branch)?;
            let summary = format!("branch {}, |X| = {}", branch.as_str().unwrap_or_default(), r.x.len());
            envelope(outcome, summary, &serde_json::to_value(&r)?)?
        }
        Command::Freiman { common, nmax, constant_c, eps, d } => {
            let a = common.set(&g)?;
            let config = PipelineConfig {
                constant_c: *constant_c,
                n_max: *nmax,
                epsilon_override: *eps,
                dimension_override: *d,
                seed,
            };
            match freiman_ball(&a, &config) {
                Ok(r) => {
                    let outcome = if none_fail(&r.hypotheses) { Outcome::Pass } else { Outcome::Hypothesis };
                    let summary = format!(
                        "l = {}, ε = {}, |X| = {}, |B| = {}, dim(B) = {:.4}",
                        r.level.l, r.eps, r.x_size, r.ball_size, r.ball_dimension
                    );
                    envelope(outcome, summary, &serde_json::to_value(&r)?)?
                }
                Err(Error::ContainmentFailure { stage, witness }) => {
                    let report = json!({ "stage": stage, "witness": witness });
                    envelope(Outcome::Falsified, format!("containment failed at {stage}"), &report)?
                }
                Err(e) => return Err(e),
            }
        }
        Command::Appendix { common, nmax } => {
            let a = common.set(&g)?;
            let r = appendix_growth_check(&a, *nmax)?;
            let outcome = check(r.all_inclusions_hold && r.certificate.valid());
            let summary =
                format!("tripling {}, |X| = {}, inclusions hold = {}", r.tripling, r.cover_size, r.all_inclusions_hold);
            envelope(outcome, summary, &serde_json::to_value(&r)?)?
        }
    };
    Ok((env, common.out.clone(), common.format()))
}

fn configure_threads() {
    if let Some(n) = std::env::var("MONOBALL_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    configure_threads();
    let result = execute(&cli.command).and_then(|(env, out, format)| {
        env.write(out.as_deref(), format)?;
        Ok(env)
    });
    match result {
        Ok(env) => {
            let line = format!("{}: {} ({})", env.command, env.outcome.label(), env.summary);
            emit_summary(common_out(&cli.command), &line);
            env.outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn common_out(command: &Command) -> bool {
    match command {
        Command::GroupInfo(c) | Command::Chartable(c) | Command::Monomial(c) => c.out.is_some(),
        Command::Growth { common, .. }
        | Command::Bohr { common, .. }
        | Command::Lspec { common, .. }
        | Command::MetricDim { common, .. }
        | Command::Energy { common, .. }
        | Command::Cover { common, .. }
        | Command::Freiman { common, .. }
        | Command::Appendix { common, .. } => common.out.is_some(),
    }
}

fn emit_summary(to_stdout: bool, line: &str) {
    if to_stdout {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_assertions_map_to_exit_three() {
        assert_eq!(verdict_outcome(Verdict::Fails).exit_code(), 3);
        assert_eq!(check(false).exit_code(), 3);
        assert_eq!(verdict_outcome(Verdict::NotApplicable).exit_code(), 2);
        assert_eq!(check(true).and(verdict_outcome(Verdict::Holds)).exit_code(), 0);
    }

    #[test]
    fn help_exits_zero_and_bad_flags_exit_one() {
        assert_eq!(run(["monoball", "--help"]), 0);
        assert_eq!(run(["monoball", "growth", "--group"]), 1);
    }
}
