//! Experiment configuration: TOML file plus flag overrides.

use std::fmt;
use std::path::PathBuf;

use serde::Deserialize;

use entrolab::{SourceModel, SourceSpec};

/// Default epsilon grid for the bound experiments.
pub const DEFAULT_EPSILONS: &[f64] = &[0.05, 0.1, 0.2];
/// Default checkpoint grid: powers of two 256..4096.
pub const DEFAULT_CHECKPOINTS: &[usize] = &[256, 512, 1024, 2048, 4096];
pub const DEFAULT_TRIALS: u64 = 1000;
pub const DEFAULT_QS: &[f64] = &[0.1, 0.5, 0.9];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    Entropy,
    Aep,
    Encode,
    Average,
    Pointwise,
    Nq,
    Cset,
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Experiment::Entropy => "entropy",
            Experiment::Aep => "aep",
            Experiment::Encode => "encode",
            Experiment::Average => "average",
            Experiment::Pointwise => "pointwise",
            Experiment::Nq => "nq",
            Experiment::Cset => "cset",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CodeSpec {
    OptimalOneToOne,
    Huffman {
        block: usize,
    },
    Identity,
    /// The optimal one-to-one code wrapped in the delta-header prefix
    /// conversion.
    PrefixConverted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    Both,
}

impl OutputFormat {
    pub fn writes_csv(self) -> bool {
        matches!(self, OutputFormat::Csv | OutputFormat::Both)
    }

    pub fn writes_json(self) -> bool {
        matches!(self, OutputFormat::Json | OutputFormat::Both)
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub n: Option<Vec<usize>>,
    pub epsilon: Option<Vec<f64>>,
    pub q: Option<Vec<f64>>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

/// The on-disk config shape.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub experiment: Experiment,
    pub source: SourceSpec,
    pub code: Option<CodeSpec>,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub output: OutputSection,
}

/// Flag overrides applied on top of the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

/// A validated, fully-resolved experiment ready to run.
#[derive(Debug)]
pub struct ResolvedConfig {
    pub experiment: Experiment,
    pub source_spec: SourceSpec,
    pub source: SourceModel,
    pub code: CodeSpec,
    pub ns: Vec<usize>,
    pub epsilons: Vec<f64>,
    pub qs: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub format: OutputFormat,
}

pub fn resolve(file: ConfigFile, overrides: Overrides) -> Result<ResolvedConfig, String> {
    let source = file.source.build().map_err(|e| e.to_string())?;

    let experiment = file.experiment;
    let code = file.code.unwrap_or(CodeSpec::OptimalOneToOne);

    // optimal ranking is defined for i.i.d. sources only
    let code_needs_iid = matches!(code, CodeSpec::OptimalOneToOne | CodeSpec::PrefixConverted);
    let uses_code = matches!(
        experiment,
        Experiment::Encode | Experiment::Average | Experiment::Pointwise | Experiment::Cset
    );
    if uses_code && code_needs_iid && source.as_iid().is_none() {
        return Err("the optimal one-to-one code requires an i.i.d. source".into());
    }
    let exact_needs_iid = matches!(
        experiment,
        Experiment::Aep | Experiment::Average | Experiment::Nq | Experiment::Cset
    );
    if exact_needs_iid && source.as_iid().is_none() {
        return Err(format!(
            "the {experiment} experiment enumerates type classes and needs an i.i.d. source"
        ));
    }
    if let CodeSpec::Huffman { block } = code {
        if block == 0 {
            return Err("huffman block length must be >= 1".into());
        }
    }

    let ns = match file.grid.n {
        Some(ns) => ns,
        None if experiment == Experiment::Pointwise => DEFAULT_CHECKPOINTS.to_vec(),
        None if experiment == Experiment::Entropy => vec![1],
        None => return Err("grid.n is required for this experiment".into()),
    };
    if ns.is_empty() {
        return Err("grid.n must be nonempty".into());
    }
    if ns.contains(&0) {
        return Err("grid.n entries must be >= 1".into());
    }

    let epsilons = file
        .grid
        .epsilon
        .unwrap_or_else(|| DEFAULT_EPSILONS.to_vec());
    if epsilons.is_empty() {
        return Err("grid.epsilon must be nonempty".into());
    }
    if epsilons.iter().any(|&e| e <= 0.0 || !e.is_finite()) {
        return Err("grid.epsilon entries must be positive reals".into());
    }

    let qs = file.grid.q.unwrap_or_else(|| DEFAULT_QS.to_vec());
    if qs.is_empty() {
        return Err("grid.q must be nonempty".into());
    }
    if qs.iter().any(|&q| !(q > 0.0 && q < 1.0)) {
        return Err("grid.q entries must lie strictly inside (0, 1)".into());
    }

    let trials = file.grid.trials.unwrap_or(DEFAULT_TRIALS);
    if trials == 0 {
        return Err("grid.trials must be >= 1".into());
    }

    Ok(ResolvedConfig {
        experiment,
        source_spec: file.source,
        source,
        code,
        ns,
        epsilons,
        qs,
        trials,
        seed: overrides.seed.or(file.grid.seed).unwrap_or(0),
        out_dir: overrides
            .out
            .or(file.output.dir)
            .unwrap_or_else(|| PathBuf::from("out")),
        format: overrides
            .format
            .or(file.output.format)
            .unwrap_or(OutputFormat::Both),
    })
}
