//! One row of experiment output.

/// Which experiment produced a row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    /// Planted-model sparsity: `error` holds the nonzero fraction.
    Density,
    /// Error-vs-prefix-length checkpoint curves.
    ApproxError,
    /// Factor count at which the normalized error first drops below the
    /// threshold; `error` holds the threshold.
    NEpsilon,
    /// Graph Fourier transform comparison at a fixed factor budget.
    Gft,
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Density => "density",
            Experiment::ApproxError => "approx_error",
            Experiment::NEpsilon => "n_epsilon",
            Experiment::Gft => "gft",
        }
    }
}

/// A CSV-ready record; every experiment emits these and nothing else, so
/// downstream plotting works off one stable schema.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub experiment: Experiment,
    pub d: usize,
    /// Planted factor count as a decimal string, or a graph label.
    pub k_or_graph: String,
    /// Algorithm name, empty when not applicable.
    pub algorithm: String,
    pub n_factors: usize,
    pub error: f64,
    pub seed: u64,
    /// Filled by the command-line driver when timing is requested; zero
    /// otherwise so identical seeds give byte-identical output files.
    pub wall_time_ms: u64,
}

impl ExperimentRecord {
    pub const CSV_HEADER: &'static str =
        "experiment,d,k_or_graph,algorithm,n_factors,error,seed,wall_time_ms";

    /// Formats one RFC 4180 row. Fields never contain commas or quotes,
    /// floats print in shortest round-trip form with a `.` decimal point.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.experiment.name(),
            self.d,
            self.k_or_graph,
            self.algorithm,
            self.n_factors,
            self.error,
            self.seed,
            self.wall_time_ms
        )
    }
}
