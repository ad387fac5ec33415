//! Runs the full acceptance suite and prints one line per criterion.

use switchthermo::cli::AcceptanceSuite;

pub fn run() -> switchthermo::Result<()> {
    let report = AcceptanceSuite::default().run();
    print!("{}", report.render());
    if report.all_passed() {
        Ok(())
    } else {
        Err(switchthermo::Error::Contract(
            "acceptance suite failed".into(),
        ))
    }
}

fn main() -> switchthermo::Result<()> {
    run()
}
