//! The quoted `Omega B R` laboratory current, asserted as stated.
//!
//! Ignored: the implemented model gives about 26 times the quoted value
//! under every convention tried (see the README). Run with
//! `cargo test --test lab_estimate -- --ignored` to see the failure.

use spinrot::cli::repro::report;

#[test]
#[ignore = "quoted Omega B R current not reproduced within a factor of 10"]
fn omega_b_r_current_within_factor_ten() {
    let r = report().into_iter().find(|r| r.id == "j_omega_b_r").unwrap();
    let f = (r.computed / 1e-6).max(1e-6 / r.computed);
    assert!(f <= 10.0, "computed {:.3e} A/m, factor {f:.1}", r.computed);
}
