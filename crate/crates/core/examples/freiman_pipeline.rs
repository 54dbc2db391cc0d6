//! The full ball construction on a few small groups.

use monoball::group::{GroupSpec, GroupSubset};
use monoball::pipeline::{freiman_ball, PipelineConfig};
use monoball::setops::{normalize_set, NormalizeOptions};

fn main() -> monoball::Result<()> {
    let runs = [
        ("Heis(3)", GroupSpec::Heisenberg { p: 3 }, vec![3, 9]),
        ("D16", GroupSpec::Dihedral { order: 16 }, vec![1, 8]),
        ("C64", GroupSpec::Cyclic { n: 64 }, vec![1]),
    ];
    let config = PipelineConfig::default();
    for (name, spec, gens) in runs {
        let g = spec.build()?;
        let a = normalize_set(&GroupSubset::new(&g, gens)?, NormalizeOptions::all());
        let r = freiman_ball(&a, &config)?;
        println!(
            "{name}: |A| = {}, l = {}, ε = {}, |X| = {}, |B| = {}, dim(B) = {:.3}, P(B)/P(A) = {}",
            r.a_size, r.level.l, r.eps, r.x_size, r.ball_size, r.ball_dimension, r.size_ratio
        );
    }
    Ok(())
}
