//! How the fitted slope moves with edge density on Barabási–Albert graphs.
//!
//! ```bash
//! cargo run --release --example slope_density -- 4000
//! ```

use closerank::curvefit::FitConfig;
use closerank::synth::{slope_density_study, write_study_csv};

fn main() -> closerank::Result<()> {
    let n = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(4000);
    let m_values: Vec<usize> = (1..=10).collect();
    let rows = slope_density_study(n, &m_values, 0, &FitConfig::default())?;
    write_study_csv(&rows, std::io::stdout().lock())
}
