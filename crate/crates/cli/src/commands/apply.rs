use std::path::PathBuf;

use clap::Args;
use givens_core::Result;

use crate::io::{self, NumericInput};

#[derive(Args)]
pub struct ApplyArgs {
    /// Rotation-sequence file to apply.
    #[arg(long)]
    seq: PathBuf,

    /// Vector or matrix file the product is applied to.
    #[arg(long)]
    input: PathBuf,

    /// Output file in the same format as the input.
    #[arg(long)]
    out: PathBuf,
}

/// Streams the factor product over the input with one fused two-coordinate
/// update per factor (never materializing the dense matrix) and reports the
/// update count.
pub fn run(args: ApplyArgs) -> Result<()> {
    let seq = io::read_sequence(&args.seq)?;
    let updates = match io::read_numeric(&args.input)? {
        NumericInput::Vector(mut v) => {
            let updates = seq.apply_to_vec(&mut v)?;
            io::write_vector(&args.out, &v)?;
            updates
        }
        NumericInput::Matrix(mut m) => {
            let updates = seq.apply_to_matrix(&mut m)?;
            io::write_matrix(&args.out, &m)?;
            updates
        }
    };
    println!(
        "applied_updates={updates} factors={} dim={}",
        seq.len(),
        seq.dim()
    );
    Ok(())
}
