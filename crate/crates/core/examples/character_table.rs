//! Character tables, monomial certificates and one non-monomial group.

use monoball::group::GroupSpec;
use monoball::harmonic::{character_table, is_monomial};

fn main() -> monoball::Result<()> {
    for (name, spec) in
        [("Q8", GroupSpec::Quaternion8), ("S4", GroupSpec::symmetric(4)), ("SL(2,3)", GroupSpec::sl2_3())]
    {
        let g = spec.build()?;
        let table = character_table(&g, 0)?;
        let report = is_monomial(&g, 0)?;
        println!(
            "{name}: order {}, dims {:?}, residual {:.1e}, monomial {}",
            g.order(),
            table.dims(),
            table.orthonormality_residual(),
            report.monomial
        );
        for c in &report.characters {
            match &c.certificate {
                Some(cert) => {
                    println!("  χ{} (dim {}) induced from H of order {}", c.character, c.dim, cert.subgroup.len())
                }
                None => println!("  χ{} (dim {}) is not induced from a linear character", c.character, c.dim),
            }
        }
    }
    Ok(())
}
