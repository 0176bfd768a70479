//! Recurrence coefficients, norms, ratios and Christoffel-Darboux kernels of
//! the classical families.

use opoly::{classical_recurrence, kernel_diag, kernel_value, ratio_at, squared_norm, ClassicalFamily, PolyEvaluator};

fn main() -> opoly::Result<()> {
    let lag = ClassicalFamily::laguerre(2.0)?;
    let c = classical_recurrence(&lag, 8)?;
    println!("Laguerre(2): beta_0..3 = {:?}", &c.betas()[..4]);
    println!("             gamma_1..3 = {:?}", &c.gammas()[1..4]);
    println!("             ||p_2||^2 = {}", squared_norm(&c, 2)?);
    println!("             K_2(0,0) = {}", kernel_diag(&c, 0.0, 2)?);
    println!("             r_n(0) = {:?}", (0..4).map(|n| ratio_at(&c, 0.0, n)).collect::<Result<Vec<_>, _>>()?);

    let leg = classical_recurrence(&ClassicalFamily::jacobi(0.0, 0.0)?, 8)?;
    let ev = PolyEvaluator::new(&leg);
    let (v, d) = ev.eval(3, 0.774597)?;
    println!("Legendre: P_3(0.774597) = {v:.2e}, P_3' = {d:.6}");
    println!("          K_1(-1,-1) = {}", kernel_diag(&leg, -1.0, 1)?);
    println!("          K_4(0.3, -0.2) = {:.10}", kernel_value(&leg, -0.2, 0.3, 4)?);
    Ok(())
}
