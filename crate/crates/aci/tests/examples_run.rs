#![allow(dead_code)]

mod analyze_system {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/analyze_system.rs"));
}

mod covers_and_polarizations {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/covers_and_polarizations.rs"));
}

mod divisor_fit {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/divisor_fit.rs"));
}

mod elliptic_periods {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/elliptic_periods.rs"));
}

mod hyperelliptic_periods {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/hyperelliptic_periods.rs"));
}

mod integrate_flow {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/integrate_flow.rs"));
}

mod kowalewski_divisor {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/kowalewski_divisor.rs"));
}

mod kowalewski_exponents {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/kowalewski_exponents.rs"));
}

mod laurent_family {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/laurent_family.rs"));
}

mod laurent_seed {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/laurent_seed.rs"));
}

mod poisson_brackets {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/poisson_brackets.rs"));
}

mod polynomial_arithmetic {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/polynomial_arithmetic.rs"));
}

mod prym_split {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/prym_split.rs"));
}

mod smith_normal_form {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/smith_normal_form.rs"));
}

mod weights_and_balances {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/weights_and_balances.rs"));
}

#[test]
fn analyze_system_runs() {
    analyze_system::run_example().expect("analyze system example should run");
}

#[test]
fn covers_and_polarizations_runs() {
    covers_and_polarizations::run_example().expect("covers and polarizations example should run");
}

#[test]
fn divisor_fit_runs() {
    divisor_fit::run_example().expect("divisor fit example should run");
}

#[test]
fn elliptic_periods_runs() {
    elliptic_periods::run_example().expect("elliptic periods example should run");
}

#[test]
fn hyperelliptic_periods_runs() {
    hyperelliptic_periods::run_example().expect("hyperelliptic periods example should run");
}

#[test]
fn integrate_flow_runs() {
    integrate_flow::run_example().expect("integrate flow example should run");
}

#[test]
fn kowalewski_divisor_runs() {
    kowalewski_divisor::run_example().expect("kowalewski divisor example should run");
}

#[test]
fn kowalewski_exponents_runs() {
    kowalewski_exponents::run_example().expect("kowalewski exponents example should run");
}

#[test]
fn laurent_family_runs() {
    laurent_family::run_example().expect("laurent family example should run");
}

#[test]
fn laurent_seed_runs() {
    laurent_seed::run_example().expect("laurent seed example should run");
}

#[test]
fn poisson_brackets_runs() {
    poisson_brackets::run_example().expect("poisson brackets example should run");
}

#[test]
fn polynomial_arithmetic_runs() {
    polynomial_arithmetic::run_example().expect("polynomial arithmetic example should run");
}

#[test]
fn prym_split_runs() {
    prym_split::run_example().expect("prym split example should run");
}

#[test]
fn smith_normal_form_runs() {
    smith_normal_form::run_example().expect("smith normal form example should run");
}

#[test]
fn weights_and_balances_runs() {
    weights_and_balances::run_example().expect("weights and balances example should run");
}
