//! Growth of `{0, ±1}` in a cyclic group and of a generating set in Heis(3).

use monoball::group::{GroupSpec, GroupSubset};
use monoball::setops::{growth_profile, normalize_set, NormalizeOptions};

fn main() -> monoball::Result<()> {
    let c100 = GroupSpec::Cyclic { n: 100 }.build()?;
    let a = GroupSubset::new(&c100, [0, 1, 99])?;
    let p = growth_profile(&a, 60)?;
    println!("C100: |A^n| = {:?}", p.sizes);
    println!("      saturates at n = {:?}, fitted d = {:.3}", p.saturated_at, p.fitted_d);

    let heis = GroupSpec::Heisenberg { p: 3 }.build()?;
    let gens = GroupSubset::new(&heis, [3, 9])?;
    let a = normalize_set(&gens, NormalizeOptions::all());
    let p = growth_profile(&a, 6)?;
    println!("Heis(3): |A| = {}, |A^n| = {:?}", a.len(), p.sizes);
    Ok(())
}
