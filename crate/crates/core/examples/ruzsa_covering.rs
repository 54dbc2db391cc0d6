//! Small tripling gives polynomial growth of the difference set.

use monoball::group::{GroupSpec, GroupSubset};
use monoball::setops::appendix_growth_check;

fn main() -> monoball::Result<()> {
    let g = GroupSpec::Dihedral { order: 40 }.build()?;
    let a = GroupSubset::new(&g, [0, 1, 2, 20])?;
    let r = appendix_growth_check(&a, 10)?;
    println!("tripling {}, |X| = {}, certificate valid {}", r.tripling, r.cover_size, r.certificate.valid());
    for step in &r.steps {
        println!(
            "n = {:>2}: (AA⁻¹)^n has {:>3} elements, X^(n−1)AA⁻¹ has {:>3}, inclusion {}",
            step.n, step.difference_power, step.covering_power, step.inclusion_holds
        );
    }
    Ok(())
}
