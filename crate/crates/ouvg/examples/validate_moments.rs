//! Score the exact samplers against the closed-form conditional moments.
//!
//! ```sh
//! cargo run --release --example validate_moments
//! ```

use ouvg::diagnostics::validate_ouvg;
use ouvg::{OuVgParams, VgParams};

fn main() -> ouvg::Result<()> {
    // One step of dt = 1/5 under the general OU-VG scheme.
    let ouvg = OuVgParams::new(0.2, VgParams::new(0.025, 0.02, 0.3)?, 0.0)?;
    let report = validate_ouvg(&ouvg, 0.2, 1, 200_000, 7, false)?;
    println!("OU-VG, single step of 1/5, 200k paths:");
    println!("{report}\n");

    // Five chained steps reach the same T = 1 law as the closed forms.
    let report = validate_ouvg(&ouvg, 0.2, 5, 200_000, 8, false)?;
    println!("OU-VG, five steps of 1/5 (T = 1), 200k paths:");
    println!("{report}\n");

    // Symmetric scheme on the Cummins parameter set.
    let ousvg = OuVgParams::new(0.2162, VgParams::new(0.0, 0.256, 0.201)?, 0.0)?;
    let report = validate_ouvg(&ousvg, 0.2, 1, 200_000, 9, true)?;
    println!("OU-SVG, single step of 1/5, 200k paths:");
    println!("{report}");

    println!("\nEach z-score is (estimated - closed form) / stderr; |z| < 4 is");
    println!("the acceptance threshold used by the `ouvg validate` command.");
    Ok(())
}
