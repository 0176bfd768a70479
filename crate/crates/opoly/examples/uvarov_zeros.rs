//! Uvarov polynomials `p_n^N`: both representations, connection data and
//! zeros with their interlacing chains.

use opoly::transforms::{uvarov_connection, MeasureSpec, PerturbedFamily};
use opoly::zeros::{interlacing_report, uvarov_zeros};
use opoly::ClassicalFamily;

fn main() -> opoly::Result<()> {
    let spec = MeasureSpec::uvarov(ClassicalFamily::laguerre(1.0)?, -0.5, 3.0)?;
    let n = 6;
    let conn = uvarov_connection(&spec, n)?;
    println!("B_n = {:.6}, c_n = {:.6}, k_n = {:.6}", conn.b_n, conn.c_n, conn.k_n);

    let fam = PerturbedFamily::new(&spec, n)?;
    let xs: Vec<f64> = (0..40).map(|i| -0.4 + 0.5 * i as f64).collect();
    println!("max deviation between representations: {:.2e}", fam.representation_crosscheck(n, &xs)?);

    let z = uvarov_zeros(&spec, n)?;
    println!("zeros ({:?}): {:?}", z.method, z.zeros);
    for chain in interlacing_report(&spec, n)?.chains {
        println!("  {:<28} holds = {} (min margin {:.2e})", chain.name, chain.holds, chain.min_margin);
    }
    Ok(())
}
