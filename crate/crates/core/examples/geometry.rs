//! Distance functions, directional distances, cut loci and extents of a few
//! catalog domains.
use hardylab::geometry::GeometryError;
use hardylab::{point, Domain};

fn main() -> Result<(), GeometryError> {
    let ball = Domain::ball(&[0.0, 0.0], 1.0)?;
    let annulus = Domain::annulus(&[0.0, 0.0], 1.0, 2.0)?;
    let rect = Domain::rectangle([0.0, 0.0], [1.0, 1.0])?;
    let strip = Domain::strip(&[0.0, 1.0], 1.0)?;

    let x = point(&[0.5, 0.0])?;
    println!("ball: d = {}, grad d = {:?}", ball.distance(&x)?, ball.grad_distance(&x)?.as_slice());
    println!("ball: Δd = {} (expected −1/r = −2)", ball.laplacian_distance_good(&x)?);
    println!("annulus: d(1.4, 0) = {}", annulus.distance(&point(&[1.4, 0.0])?)?);

    let e1 = point(&[1.0, 0.0])?;
    println!("rectangle: ρ_e1(0.25, 0.5) = {}", rect.directional_distance(&point(&[0.25, 0.5])?, &e1)?);

    let line = ball.segments_along_line(&point(&[0.0, 0.5])?, &e1)?;
    for s in &line.segments {
        println!("ball chord through (0, 0.5): length {}", s.length());
    }
    println!("ball cut locus: {:?}", ball.cut_locus());
    println!("strip cut locus: {:?}", strip.cut_locus());

    for (name, d) in [("ball", &ball), ("annulus", &annulus), ("rectangle", &rect), ("strip", &strip)] {
        println!(
            "{name}: inradius {}, D∞ {}, diameter {}",
            d.inradius(),
            d.essential_diameter(),
            d.diameter()
        );
    }
    Ok(())
}
