pub mod apply;
pub mod factorize;
pub mod gft;
pub mod planted;

use std::time::Instant;

/// Stamps every row of a freshly produced batch with the batch's wall time
/// when timing is requested; otherwise rows keep the deterministic zero.
pub(crate) fn stamp_wall_time(
    rows: &mut [givens_core::ExperimentRecord],
    started: Instant,
    timings: bool,
) {
    if !timings {
        return;
    }
    let elapsed = started.elapsed().as_millis() as u64;
    for row in rows {
        row.wall_time_ms = elapsed;
    }
}
