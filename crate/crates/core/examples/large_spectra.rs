//! Large spectra of an interval in Z/128 and the doubling cover.

use monoball::exact::q;
use monoball::group::{GroupSpec, GroupSubset};
use monoball::spectra::{distance_identity, lspec_doubling_cover, SpectralContext, SpectrumProfile, SpectrumWeight};

fn main() -> monoball::Result<()> {
    let g = GroupSpec::Cyclic { n: 128 }.build()?;
    let a = GroupSubset::new(&g, [0, 1, 2, 126, 127])?;
    let s = GroupSubset::new(&g, [0, 1])?;
    let ctx = SpectralContext::new(&g, 0)?;
    let profile = SpectrumProfile::new(ctx.lin(), &a)?;
    let weight = SpectrumWeight::new(&a)?;

    for eps in [q(1, 2), q(1, 4), q(1, 16)] {
        let l = profile.large_spectrum(eps)?;
        println!("ε = {eps}: |LSpec| = {}", l.members.len());
    }
    let l = profile.large_spectrum(q(1, 2))?;
    for &gamma in l.members.members().iter().take(3) {
        let id = distance_identity(&weight, &profile, gamma);
        println!("  ρ(0, γ{gamma}) = {:.6}, residual {:.1e}", id.distance, id.residual);
    }

    let cover = lspec_doubling_cover(&ctx, &s, &a, q(1, 16), 1.0)?;
    println!("doubling cover: {:?} branch, |X| = {}, covering {:?}", cover.branch, cover.x.len(), cover.covering_holds);
    Ok(())
}
