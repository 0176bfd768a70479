//! Structure relations, the polynomial Q, the holonomic equation and the
//! equilibrium of the zeros in the four covered cases.

use opoly::electrostatics::{
    equilibrium_residual, laguerre_coeff_trends, ode_residual, q_zero_trend, sample_points,
    structure_relation,
};
use opoly::transforms::MeasureSpec;
use opoly::ClassicalFamily;

fn main() -> opoly::Result<()> {
    let specs = [
        MeasureSpec::uvarov(ClassicalFamily::laguerre(2.0)?, 0.0, 1.0)?,
        MeasureSpec::uvarov(ClassicalFamily::laguerre(0.5)?, -1.0, 1.0)?,
        MeasureSpec::uvarov(ClassicalFamily::jacobi(0.5, 0.5)?, -1.0, 3.0)?,
        MeasureSpec::uvarov(ClassicalFamily::jacobi(0.5, 1.0)?, -2.0, 1.0)?,
    ];
    let n = 5;
    for spec in specs {
        let sr = structure_relation(&spec, n)?;
        let xs = sample_points(&spec, n, 20);
        let eq = equilibrium_residual(&spec, n)?;
        println!("{}:", sr.case().tag());
        println!("   phi = {}, psi = {}", sr.phi(), sr.psi());
        println!("   A(x,n) = {}, B(x,n) = {}", sr.a_poly(n)?, sr.b_poly(n)?);
        println!("   Q = {}  zeros {:?}", sr.q_polynomial(n)?, eq.q_zeros);
        println!(
            "   lemma {:.1e}, ODE {:.1e}, stationarity {:.1e}, lower-energy neighbours {}/10",
            sr.lemma_residual(n, &xs)?,
            ode_residual(&sr, n, &xs)?,
            eq.max_residual,
            eq.lower_neighbors
        );
    }
    let t = q_zero_trend(&MeasureSpec::uvarov(ClassicalFamily::laguerre(1.0)?, 0.0, 1.0)?, &[10, 20, 40, 80, 160])?;
    println!("{}: {:?}", t.label, t.points.iter().map(|p| p.value).collect::<Vec<_>>());
    let (b, g) = laguerre_coeff_trends(0.0, -1.0, &[50, 100, 200, 400])?;
    println!("{}: {:?}", b.label, b.points.iter().map(|p| p.value).collect::<Vec<_>>());
    println!("{}: {:?}", g.label, g.points.iter().map(|p| p.value).collect::<Vec<_>>());
    Ok(())
}
