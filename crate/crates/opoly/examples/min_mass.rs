//! Threshold mass beyond which the extreme zero leaves the support hull.

use opoly::transforms::MeasureSpec;
use opoly::zeros::{facing_endpoint, min_mass, uvarov_zeros};
use opoly::ClassicalFamily;

fn main() -> opoly::Result<()> {
    let specs = [
        MeasureSpec::uvarov(ClassicalFamily::laguerre(2.0)?, -1.0, 0.0)?,
        MeasureSpec::uvarov(ClassicalFamily::jacobi(0.0, 0.0)?, -2.0, 0.0)?,
        MeasureSpec::uvarov(ClassicalFamily::jacobi(0.0, 0.0)?, 1.5, 0.0)?,
    ];
    for spec in specs {
        let n = 3;
        let mm = min_mass(&spec, n, facing_endpoint(&spec)?)?;
        println!("{} a = {}: N_0 = {:.8}, endpoint {}", spec.family.name(), spec.a, mm.n0, mm.endpoint);
        for f in [1.0 - 1e-3, 1.0 + 1e-3] {
            let z = uvarov_zeros(&spec.with_mass(mm.n0 * f)?, n)?;
            println!("   N = N_0 * {f}: zeros {:.6?}", z.zeros);
        }
    }
    Ok(())
}
