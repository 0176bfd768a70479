//! Zeros of the degree-3 Uvarov polynomials for the Legendre weight with a
//! mass at 1 and the Laguerre weight (α = 2) with a mass at 0.

use opoly::transforms::MeasureSpec;
use opoly::zeros::uvarov_zeros;
use opoly::ClassicalFamily;

fn main() -> opoly::Result<()> {
    let masses = [0.0, 1.0, 10.0, 100.0, 1000.0];
    let cases = [
        ("Jacobi(0,0), mass at 1", ClassicalFamily::jacobi(0.0, 0.0)?, 1.0),
        ("Laguerre(2), mass at 0", ClassicalFamily::laguerre(2.0)?, 0.0),
    ];
    for (label, family, a) in cases {
        println!("{label}");
        println!("{:>8} {:>12} {:>12} {:>12}", "N", "x1", "x2", "x3");
        for &m in &masses {
            let z = uvarov_zeros(&MeasureSpec::uvarov(family, a, m)?, 3)?;
            println!("{m:>8} {:>12.6} {:>12.6} {:>12.6}", z.zeros[0], z.zeros[1], z.zeros[2]);
        }
        println!();
    }
    Ok(())
}
