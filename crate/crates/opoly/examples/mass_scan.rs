//! Movement of the zeros as the mass grows: monotonicity verdicts, limits
//! and the rates `N (x - limit)`.

use opoly::transforms::MeasureSpec;
use opoly::zeros::mass_scan;
use opoly::ClassicalFamily;

fn main() -> opoly::Result<()> {
    let spec = MeasureSpec::uvarov(ClassicalFamily::laguerre(2.0)?, 0.0, 0.0)?;
    let grid: Vec<f64> = (0..=6).map(|k| 10f64.powi(k)).collect();
    let scan = mass_scan(&spec, 3, &grid)?;
    println!("direction: {:?}, verdicts: {:?}", scan.direction, scan.verdicts);
    println!("limits: {:?}", scan.limits);
    println!("rate limits: {:?}", scan.rate_limits);
    for (m, row) in scan.grid.iter().zip(&scan.rate_estimates) {
        println!("N = {m:>9}: N(x - limit) = {:.6?}", row);
    }
    Ok(())
}
