//! Fits the logistic reverse-rank curve to a graph's exact closeness profile.
//!
//! ```bash
//! cargo run --release --example fit_slope -- edges.txt
//! ```
//! Without an argument a Barabási–Albert graph stands in.

use closerank::curvefit::{fit_graph, FitConfig};
use closerank::synth::{generate_ba, BAConfig};
use closerank::{largest_connected_component, read_edge_list_file};

fn main() -> closerank::Result<()> {
    let graph = match std::env::args().nth(1) {
        Some(path) => largest_connected_component(&read_edge_list_file(path)?)?,
        None => generate_ba(&BAConfig::new(5000, 5, 0))?,
    };
    for free_asymptotes in [false, true] {
        let config = FitConfig {
            free_asymptotes,
            ..FitConfig::default()
        };
        let fit = fit_graph(&graph, &config)?;
        println!(
            "free asymptotes {free_asymptotes:>5}: c_mid {:.5}, p {:.3}, asymptotes [{:.1}, {:.1}], residual {:.3e}, {} iterations{}",
            fit.params.c_mid,
            fit.params.p,
            fit.lower,
            fit.upper,
            fit.residual_norm,
            fit.iterations_used,
            if fit.converged { "" } else { " (not converged)" }
        );
    }
    Ok(())
}
