//! Prints the built-in scenario in canonical source form; the output is
//! what ships as `scenarios/m52.mwc`.

fn main() {
    print!("{}", mwc_core::ledger::builtin_scenario_52().to_source());
}
