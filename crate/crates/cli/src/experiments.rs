//! Experiment dispatch: build the source and code family, run, write
//! CSV/JSON report bodies, fold verdict booleans into an exit status.
//!
//! Report bodies are deterministic functions of the resolved config:
//! no timestamps, fixed row orders, fixed float formatting. The worker
//! count changes scheduling only, never bytes.

use std::fs;
use std::sync::Arc;

use serde_json::{json, Value};

use entrolab::report::{csv_table, trajectories_csv};
use entrolab::{
    aep_curve, average_curve, c_set_report, fixed_width, huffman_block, optimal_one_to_one,
    pointwise_trajectories, sequence_of_rank, shannon_nq, summarize_trajectories, to_prefix,
    CodeFamily, CodeKind, IidSource, Rank, SourceModel,
};

use crate::config::{CodeSpec, Experiment, ResolvedConfig};

/// Sequence-table dump limit for the encode experiment.
const MAX_DUMP_SEQUENCES: u64 = 1 << 20;

pub struct RunOutcome {
    pub all_verdicts_true: bool,
}

pub fn execute(cfg: &ResolvedConfig, workers: Option<usize>) -> Result<RunOutcome, String> {
    match workers {
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| format!("cannot build worker pool: {e}"))?;
            pool.install(|| run_experiment(cfg))
        }
        None => run_experiment(cfg),
    }
}

fn run_experiment(cfg: &ResolvedConfig) -> Result<RunOutcome, String> {
    let (csv, verdicts, details) = match cfg.experiment {
        Experiment::Entropy => entropy_experiment(cfg)?,
        Experiment::Aep => aep_experiment(cfg)?,
        Experiment::Encode => encode_experiment(cfg)?,
        Experiment::Average => average_experiment(cfg)?,
        Experiment::Pointwise => pointwise_experiment(cfg)?,
        Experiment::Nq => nq_experiment(cfg)?,
        Experiment::Cset => cset_experiment(cfg)?,
    };

    let all_true = verdicts.iter().all(|&(_, ok)| ok);
    let summary = json!({
        "experiment": cfg.experiment.to_string(),
        "source": serde_json::to_value(&cfg.source_spec).map_err(|e| e.to_string())?,
        "seed": cfg.seed,
        "verdicts": verdicts
            .iter()
            .map(|(k, v)| (k.clone(), Value::Bool(*v)))
            .collect::<serde_json::Map<String, Value>>(),
        "details": details,
    });

    fs::create_dir_all(&cfg.out_dir)
        .map_err(|e| format!("cannot create {}: {e}", cfg.out_dir.display()))?;
    let name = cfg.experiment.to_string();
    if cfg.format.writes_csv() {
        let path = cfg.out_dir.join(format!("{name}.csv"));
        fs::write(&path, csv).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    if cfg.format.writes_json() {
        let path = cfg.out_dir.join(format!("{name}.summary.json"));
        let body = format!(
            "{}\n",
            serde_json::to_string_pretty(&summary).map_err(|e| e.to_string())?
        );
        fs::write(&path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }

    Ok(RunOutcome {
        all_verdicts_true: all_true,
    })
}

type ExperimentOutput = (String, Vec<(String, bool)>, Value);

fn iid(cfg: &ResolvedConfig) -> &IidSource {
    cfg.source
        .as_iid()
        .expect("validated: experiment requires an i.i.d. source")
}

fn build_code(cfg: &ResolvedConfig) -> Result<Arc<dyn CodeFamily>, String> {
    let code: Arc<dyn CodeFamily> = match cfg.code {
        CodeSpec::OptimalOneToOne => Arc::new(optimal_one_to_one(iid(cfg).clone())),
        CodeSpec::Huffman { block } => {
            Arc::new(huffman_block(&cfg.source, block).map_err(|e| e.to_string())?)
        }
        CodeSpec::Identity => Arc::new(fixed_width(cfg.source.alphabet())),
        CodeSpec::PrefixConverted => {
            Arc::new(to_prefix(Arc::new(optimal_one_to_one(iid(cfg).clone()))))
        }
    };
    Ok(code)
}

fn code_name(cfg: &ResolvedConfig) -> String {
    match cfg.code {
        CodeSpec::OptimalOneToOne => "optimal-one-to-one".into(),
        CodeSpec::Huffman { block } => format!("huffman:{block}"),
        CodeSpec::Identity => "identity".into(),
        CodeSpec::PrefixConverted => "prefix-converted".into(),
    }
}

fn entropy_experiment(cfg: &ResolvedConfig) -> Result<ExperimentOutput, String> {
    let h = cfg.source.entropy_rate();
    let kind = match cfg.source {
        SourceModel::Iid(_) => "iid",
        SourceModel::Markov(_) => "markov",
    };
    let csv = format!("kind,entropy_bits_per_symbol\n{kind},{h}\n");
    let max = (cfg.source.alphabet().size() as f64).log2();
    let verdicts = vec![("entropy_in_range".to_string(), (0.0..=max).contains(&h))];
    Ok((csv, verdicts, json!({ "entropy_bits_per_symbol": h })))
}

fn aep_experiment(cfg: &ResolvedConfig) -> Result<ExperimentOutput, String> {
    let source = iid(cfg);
    let mut rows = Vec::new();
    let mut settled = Vec::new();
    for &eps in &cfg.epsilons {
        let curve = aep_curve(source, &cfg.ns, eps).map_err(|e| e.to_string())?;
        // first grid n from which mass and lower bound hold onward
        let first = (0..curve.len())
            .find(|&i| curve[i..].iter().all(|r| r.mass_ok && r.lower_ok))
            .map(|i| curve[i].n);
        settled.push(json!({ "epsilon": eps, "first_settled_n": first }));
        rows.extend(curve);
    }
    let verdicts = vec![
        (
            "upper_bound_all_n".to_string(),
            rows.iter().all(|r| r.upper_ok),
        ),
        (
            "mass_implies_lower_bound".to_string(),
            rows.iter().all(|r| !r.mass_ok || r.lower_ok),
        ),
    ];
    Ok((
        csv_table(&rows),
        verdicts,
        json!({ "rows": rows.len(), "settled": settled }),
    ))
}

fn encode_experiment(cfg: &ResolvedConfig) -> Result<ExperimentOutput, String> {
    if let CodeSpec::Huffman { block } = cfg.code {
        let huff = huffman_block(&cfg.source, block).map_err(|e| e.to_string())?;
        let mut csv = String::from("block_index,codeword,length\n");
        for (idx, word) in huff.codewords().iter().enumerate() {
            csv.push_str(&format!("{idx},{word},{}\n", word.len()));
        }
        let verdicts = vec![
            ("kraft_at_most_one".to_string(), huff.kraft().holds()),
            (
                "kraft_exactly_one".to_string(),
                huff.kraft().is_exactly_one(),
            ),
            (
                "prefix_free".to_string(),
                prefix_free_sorted(huff.codewords().iter().map(|w| w.to_string())),
            ),
        ];
        return Ok((
            csv,
            verdicts,
            json!({ "code": code_name(cfg), "blocks": huff.codewords().len() }),
        ));
    }

    // sequence dump: one line per sequence, in code presentation order
    let code = build_code(cfg)?;
    let k = cfg.source.alphabet().size() as u64;
    let mut csv = String::from("rank,codeword,length\n");
    let mut injective = true;
    let mut prefix_free = true;
    let mut total_rows = 0u64;
    for &n in &cfg.ns {
        let count = k
            .checked_pow(n as u32)
            .filter(|&c| c <= MAX_DUMP_SEQUENCES)
            .ok_or_else(|| {
                format!("codeword dump needs K^n <= {MAX_DUMP_SEQUENCES}; n = {n} exceeds that")
            })?;
        let mut words = Vec::with_capacity(count as usize);
        for r in 0..count {
            let seq = match cfg.code {
                CodeSpec::Identity => lex_sequence(r, k, n),
                _ => sequence_of_rank(iid(cfg), n, &Rank::from(r)).map_err(|e| e.to_string())?,
            };
            let bits = code.encode(&seq).map_err(|e| e.to_string())?;
            csv.push_str(&format!("{r},{bits},{}\n", bits.len()));
            words.push(bits.to_string());
        }
        total_rows += count;
        let mut sorted = words.clone();
        sorted.sort_unstable();
        injective &= sorted.windows(2).all(|w| w[0] != w[1]);
        if code.kind() == CodeKind::Prefix {
            prefix_free &= prefix_free_sorted(sorted.into_iter());
        }
    }
    let mut verdicts = vec![("injective".to_string(), injective)];
    if code.kind() == CodeKind::Prefix {
        verdicts.push(("prefix_free".to_string(), prefix_free));
    }
    Ok((
        csv,
        verdicts,
        json!({ "code": code_name(cfg), "rows": total_rows }),
    ))
}

/// Prefix-freeness via sorted adjacency: any prefix pair is adjacent in
/// lexicographic order.
fn prefix_free_sorted(words: impl Iterator<Item = String>) -> bool {
    let mut sorted: Vec<String> = words.collect();
    sorted.sort_unstable();
    sorted
        .windows(2)
        .all(|w| !(w[1].starts_with(&w[0]) && w[0].len() < w[1].len()))
}

fn lex_sequence(index: u64, k: u64, n: usize) -> Vec<usize> {
    let mut seq = vec![0usize; n];
    let mut rest = index;
    for slot in seq.iter_mut().rev() {
        *slot = (rest % k) as usize;
        rest /= k;
    }
    seq
}

fn average_experiment(cfg: &ResolvedConfig) -> Result<ExperimentOutput, String> {
    let code = build_code(cfg)?;
    let rows = average_curve(&cfg.source, code.as_ref(), &cfg.ns).map_err(|e| e.to_string())?;
    let verdicts = vec![(
        "expected_length_nonnegative".to_string(),
        rows.iter().all(|r| r.expected_length_per_symbol >= 0.0),
    )];
    let last = rows
        .last()
        .map(|r| json!({ "n": r.n, "deficit": r.deficit }));
    Ok((
        csv_table(&rows),
        verdicts,
        json!({ "code": code_name(cfg), "rows": rows.len(), "final": last }),
    ))
}

fn pointwise_experiment(cfg: &ResolvedConfig) -> Result<ExperimentOutput, String> {
    let code = build_code(cfg)?;
    let records = pointwise_trajectories(&cfg.source, code.as_ref(), &cfg.ns, cfg.trials, cfg.seed)
        .map_err(|e| e.to_string())?;
    let summaries = summarize_trajectories(&records);
    let details: Vec<Value> = summaries
        .iter()
        .map(|s| json!({ "n": s.n, "min": s.min, "p01": s.p01, "mean": s.mean }))
        .collect();
    Ok((
        trajectories_csv(&records),
        Vec::new(),
        json!({
            "code": code_name(cfg),
            "trials": cfg.trials,
            "checkpoints": details,
        }),
    ))
}

fn nq_experiment(cfg: &ResolvedConfig) -> Result<ExperimentOutput, String> {
    let source = iid(cfg);
    let mut rows = Vec::new();
    let mut monotone = true;
    for &n in &cfg.ns {
        let mut per_n = Vec::new();
        for &q in &cfg.qs {
            per_n.push(shannon_nq(source, n, q).map_err(|e| e.to_string())?);
        }
        let mut by_q = per_n.clone();
        by_q.sort_by(|a, b| a.q.total_cmp(&b.q));
        monotone &= by_q.windows(2).all(|w| w[0].n_of_q <= w[1].n_of_q);
        rows.extend(per_n);
    }
    let verdicts = vec![("n_of_q_nondecreasing_in_q".to_string(), monotone)];
    let rates: Vec<Value> = rows
        .iter()
        .map(|r| json!({ "n": r.n, "q": r.q, "rate": r.rate }))
        .collect();
    Ok((
        csv_table(&rows),
        verdicts,
        json!({ "rows": rows.len(), "rates": rates }),
    ))
}

fn cset_experiment(cfg: &ResolvedConfig) -> Result<ExperimentOutput, String> {
    let source = iid(cfg);
    let code = build_code(cfg)?;
    let mut rows = Vec::new();
    for &eps in &cfg.epsilons {
        for &n in &cfg.ns {
            rows.push(c_set_report(source, code.as_ref(), n, eps).map_err(|e| e.to_string())?);
        }
    }
    let verdicts = vec![(
        "c_mass_within_bound".to_string(),
        rows.iter().all(|r| r.holds),
    )];
    Ok((
        csv_table(&rows),
        verdicts,
        json!({ "code": code_name(cfg), "rows": rows.len() }),
    ))
}
