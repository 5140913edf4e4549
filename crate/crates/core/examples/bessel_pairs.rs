//! Bessel-function constants, weight pairs with their ODE residuals, and the
//! remainder function C_p.
use hardylab::bessel::{
    cp, critical_lamb_pair, j0, j0_first_zero, lamb_constant, log_pair, power_pair, BesselError,
};

fn main() -> Result<(), BesselError> {
    let z0 = j0_first_zero();
    let l0 = lamb_constant();
    println!("z0 = {z0:.12}, J0(z0) = {:.1e}", j0(z0));
    println!("lambda0 = {l0:.12}");

    let pairs = [
        ("power p=2", power_pair(2.0, 0.0)?),
        ("power p=3", power_pair(3.0, 0.0)?),
        ("power p=2 lambda=1", power_pair(2.0, 1.0)?),
        ("critical lamb R=1", critical_lamb_pair(1.0)?),
        ("log p=1.5 R=1", log_pair(1.5, 1.0)?),
    ];
    for (name, pair) in &pairs {
        let worst = [0.05f64, 0.2, 0.5, 0.9]
            .iter()
            .map(|&r| pair.relative_ode_residual(r.min(0.99 * pair.r_max())))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .fold(0.0f64, f64::max);
        println!("{name:>20}: V(0.5) = {:.6}, W(0.5) = {:.6}, max relative residual {worst:.1e}", pair.v(0.5), pair.w(0.5));
    }

    let c = cp(&[1.0, 0.0], &[0.3, 0.4], 3.0)?;
    println!("C_3((1,0), (0.3,0.4)) = {c:?}");
    Ok(())
}
