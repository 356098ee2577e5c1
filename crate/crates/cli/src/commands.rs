use std::fs;
use std::path::Path;

use anyhow::{anyhow, Result};
use corepeel::bench::{run_benchmark_with, PlanOptions, PlantShape};
use corepeel::pdc::merge_pass;
use corepeel::report::{BenchRow, BenchSummary, GraphStats, RunReport};
use corepeel::{core_and_peel, Exact, Graph, PdcParams, Scalar};

use crate::input::{dataset_name, load_graph};
use crate::{BenchArgs, DetectArgs, Format, RunArgs};

fn emit(text: String, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn to_json<S: serde::Serialize>(value: &S) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn scalar<T: Scalar>(x: f64) -> Result<T> {
    T::from_f64(x).ok_or_else(|| corepeel::Error::InvalidParameter(format!("{x} is not representable")).into())
}

fn params<T: Scalar>(q: usize, d: &DetectArgs) -> Result<PdcParams<T>> {
    let p = PdcParams::new(q, scalar(d.density)?, d.radius)?;
    Ok(match d.delta_low {
        Some(low) => p.with_delta_low(scalar(low)?)?,
        None => p,
    })
}

pub fn stats(input: &Path, format: Format) -> Result<()> {
    let g = load_graph(input)?;
    let s = GraphStats::of(&dataset_name(input), &g);
    let text = match format {
        Format::Json => to_json(&s)?,
        Format::Text | Format::Tsv => s.to_text(),
    };
    emit(text, None)
}

pub fn run(args: &RunArgs) -> Result<()> {
    let g = load_graph(&args.input)?;
    let name = dataset_name(&args.input);
    let report = if args.detect.exact {
        detect::<Exact>(&name, &g, args)?
    } else {
        detect::<f64>(&name, &g, args)?
    };
    let text = match args.detect.format {
        Format::Json => to_json(&report)?,
        Format::Tsv | Format::Text => report.to_tsv(),
    };
    emit(text, args.detect.output.as_deref())
}

fn detect<T: Scalar>(name: &str, g: &Graph, args: &RunArgs) -> Result<RunReport> {
    let p = params::<T>(args.min_size as usize, &args.detect)?;
    let mut cover = core_and_peel(g, &p)?;
    if args.merge {
        cover = merge_pass(g, &cover, &p)?;
    }
    Ok(RunReport::new(name, g, &p, &cover, !args.detect.no_timings))
}

fn threads() -> usize {
    std::env::var("COREPEEL_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(1)
}

pub fn bench(args: &BenchArgs) -> Result<()> {
    let g = load_graph(&args.input)?;
    let name = dataset_name(&args.input);
    let summary = if args.detect.exact {
        trials::<Exact>(&name, &g, args)?
    } else {
        trials::<f64>(&name, &g, args)?
    };
    let text = match args.detect.format {
        Format::Json => to_json(&summary)?,
        Format::Tsv | Format::Text => summary.to_tsv(),
    };
    emit(text, args.detect.output.as_deref())
}

fn trials<T: Scalar>(name: &str, g: &Graph, args: &BenchArgs) -> Result<BenchSummary> {
    // q is replaced by the plant size inside each trial.
    let p = params::<T>(2, &args.detect)?;
    let opts = PlanOptions {
        budget_fraction: args.budget_fraction,
        target_degree: args.target_degree,
        plant_size: args.plant_size.map(|s| s as usize),
        num_plants: None,
        shape: if args.quasi_clique {
            PlantShape::QuasiClique
        } else {
            PlantShape::Density
        },
    };
    let n = args.trials as usize;
    let one = |i: usize| -> Result<BenchRow> {
        let seed = args.seed.wrapping_add(i as u64);
        let run = run_benchmark_with(g, &p, seed, &opts)?;
        Ok(BenchRow::new(
            name,
            &run.params,
            &run.report,
            run.planted_graph.arc_count(),
            !args.detect.no_timings,
        ))
    };

    let workers = threads().min(n);
    let mut slots: Vec<Option<Result<BenchRow>>> = (0..n).map(|_| None).collect();
    if workers <= 1 {
        for (i, slot) in slots.iter_mut().enumerate() {
            *slot = Some(one(i));
        }
    } else {
        std::thread::scope(|scope| {
            let chunk = n.div_ceil(workers);
            for (c, part) in slots.chunks_mut(chunk).enumerate() {
                let one = &one;
                scope.spawn(move || {
                    for (j, slot) in part.iter_mut().enumerate() {
                        *slot = Some(one(c * chunk + j));
                    }
                });
            }
        });
    }
    let rows = slots
        .into_iter()
        .map(|r| r.unwrap_or_else(|| Err(anyhow!("trial did not run"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(BenchSummary::new(name, rows))
}
