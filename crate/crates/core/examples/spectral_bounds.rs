//! Lower bounds on the first Dirichlet eigenvalue next to the computed λ₁.
use hardylab::spectral::{bound_report, BoundReport};
use hardylab::Domain;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let domains = [
        Domain::interval(0.0, 1.0)?,
        Domain::rectangle([0.0, 0.0], [1.0, 2.0])?,
        Domain::ball(&[0.0, 0.0], 1.0)?,
    ];
    println!("{}", BoundReport::CSV_HEADER);
    for d in &domains {
        println!("{}", bound_report(d)?.csv_row());
    }
    Ok(())
}
