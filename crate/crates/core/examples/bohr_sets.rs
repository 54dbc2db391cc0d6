//! Linear Bohr sets in Z/60 × Z/4 and the 4^|Γ| dimension bound.

use monoball::bohr::{bohr_dimension_cover, bohr_norm, cor53_check, linbohr, CharSet};
use monoball::exact::q;
use monoball::group::GroupSpec;
use monoball::harmonic::LinGroup;
use monoball::metric::ball_dimension;

fn main() -> monoball::Result<()> {
    let g = GroupSpec::Product { factors: vec![GroupSpec::Cyclic { n: 60 }, GroupSpec::Cyclic { n: 4 }] }.build()?;
    let lin = LinGroup::new(&g);
    let gamma = CharSet::new(&lin, [0, 1, 5])?;

    for delta in [q(1, 4), q(1, 8), q(1, 16)] {
        let ball = linbohr(&gamma, delta);
        let dim = ball_dimension(&bohr_norm(&gamma), delta)?;
        println!("δ = {delta}: |LinBohr| = {}, dimension {:.3} (bound {})", ball.len(), dim.d, 2 * gamma.len());
    }

    let cover = bohr_dimension_cover(&gamma, q(1, 8))?;
    println!(
        "cover by {} translates, all checks {}",
        cover.translates.len(),
        cover.covering_holds && cover.count_holds
    );

    let k = cor53_check(&gamma, 2, q(1, 8))?;
    println!("k = 2: LinBohr(2Γ, 1/4) = LinBohr(Γ, 1/8) is {}", k.equal);
    Ok(())
}
