//! Each identity check on a small configuration, printed as CSV rows.
use hardylab::bessel::power_pair;
use hardylab::hardy_verify::{
    verify_1d, verify_avk_wirths, verify_domain_directional, verify_domain_full,
    verify_mean_identity, IdentityReport, QuadratureConfig, TestFunction,
};
use hardylab::Domain;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = QuadratureConfig::default();
    let interval = Domain::interval(0.0, 2.0)?;
    let ball = Domain::ball(&[0.0, 0.0], 1.0)?;
    let bump1 = TestFunction::radial_bump(&[1.2], 0.5)?;
    let bump2 = TestFunction::radial_bump(&[0.3, 0.1], 0.5)?;
    let p2 = power_pair(2.0, 0.0)?;

    let reports: Vec<IdentityReport> = vec![
        verify_1d(&power_pair(3.0, 0.0)?, &interval, &bump1, &cfg)?,
        verify_domain_full(&p2, &ball, &bump2, &cfg)?,
        verify_domain_directional(&p2, &ball, &bump2, &cfg)?,
        verify_avk_wirths(0.0, &interval, &bump1, &cfg)?,
        verify_mean_identity(&p2, &interval, &bump1, &cfg.sphere(1)?, &cfg)?,
    ];
    println!("{}", IdentityReport::CSV_HEADER);
    for r in &reports {
        println!("{}", r.csv_row());
    }
    Ok(())
}
