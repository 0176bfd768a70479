//! Zeros for `e^{-x²} dx + N δ_0` through the quadratic change of variables,
//! and the capture rate of the two zeros closest to the origin.

use opoly::zeros::{hermite_capture_trend, hermite_interlacing, hermite_type_zeros};

fn main() -> opoly::Result<()> {
    for mass in [0.0, 1.0, 100.0] {
        println!("N = {mass}: degree 6 zeros {:.6?}", hermite_type_zeros(mass, 6)?.zeros);
    }
    println!("degree 7 (independent of N): {:.6?}", hermite_type_zeros(5.0, 7)?.zeros);
    let rep = hermite_interlacing(2.0, 3)?;
    println!("interlacing chains hold: {}", rep.holds);
    let masses: Vec<f64> = (0..8).map(|k| 100.0 * 2f64.powi(k)).collect();
    let t = hermite_capture_trend(3, &masses)?;
    println!("{} -> {:.6}", t.label, t.target);
    for p in &t.points {
        println!("   N = {:>6}: {:.6}", p.at, p.value);
    }
    Ok(())
}
