//! A reproducible experiment suite rendered as CSV.

use gon::cli::{run_suite, ExperimentConfig, Format};

fn main() -> gon::Result<()> {
    let config = ExperimentConfig {
        seed: 42,
        format: Format::Csv,
        threads: Some(2),
        ..ExperimentConfig::new("hermite").param("count", 8)
    };
    let report = run_suite(&config)?;
    print!("{}", report.render()?);
    Ok(())
}
