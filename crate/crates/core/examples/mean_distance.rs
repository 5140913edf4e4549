//! Ξ(N, p), the mean distance and the quasi-inradius μ.
use hardylab::mean_distance::{mean_distance, quasi_inradius, xi, SearchGrid, SphereQuadrature};
use hardylab::{point, Domain};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (n, p) in [(1, 2.0), (2, 1.0), (2, 2.0), (3, 2.0)] {
        println!("Xi({n}, {p}) = {}", xi(n, p)?);
    }

    let interval = Domain::interval(0.0, 1.0)?;
    let sq1 = SphereQuadrature::default_for(1)?;
    let m = mean_distance(&interval, &point(&[0.5])?, 2.0, &sq1)?;
    println!("interval mean distance at 1/2: {m}");

    let ball = Domain::ball(&[0.0, 0.0], 1.0)?;
    let sq2 = SphereQuadrature::default_for(2)?;
    for (name, d, sq) in [("interval", &interval, &sq1), ("ball", &ball, &sq2)] {
        println!("{name}: mu = {}", quasi_inradius(d, sq, SearchGrid::default())?);
    }
    Ok(())
}
