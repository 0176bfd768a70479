//! Kernel polynomials of `(x - a) dμ` and `(x - a)² dμ`, both at an exterior
//! point and at an endpoint of the support.

use opoly::transforms::{christoffel_step, iterated_coeffs, MeasureSpec, PerturbedFamily};
use opoly::tridiag::jacobi_matrix_zeros;
use opoly::ClassicalFamily;

fn main() -> opoly::Result<()> {
    let lag = ClassicalFamily::laguerre(0.0)?;
    let base = lag.recurrence(12)?;
    let star = christoffel_step(&base, -1.0)?;
    println!("Laguerre(0), a = -1");
    for n in 0..4 {
        println!("  n={n}: beta* = {:.6}, gamma* = {:.6}", star.beta(n), star.gamma(n + 1));
        let (d, e) = iterated_coeffs(&base, -1.0, n)?;
        println!("        d_n = {d:.6}, e_n - gamma_(n+1) = {:.6}", e - base.gamma(n + 1));
    }

    // at the endpoint the second kernel family is Laguerre(α + 2)
    let fam = PerturbedFamily::new(&MeasureSpec::uvarov(ClassicalFamily::laguerre(2.0)?, 0.0, 0.0)?, 4)?;
    println!("zeros of p**_2 for Laguerre(2) at a = 0: {:?}", jacobi_matrix_zeros(fam.star2(), 2)?);
    Ok(())
}
