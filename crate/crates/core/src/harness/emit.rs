use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::analysis::expected_ec;
use crate::error::{Error, Result};
use crate::harness::config::Format;
use crate::harness::run::{ExperimentOutput, TrialRecord};
use crate::harness::stats::AggregateStats;

pub const TRIALS_HEADER: [&str; 12] = [
    "trial",
    "seed",
    "model",
    "d",
    "size",
    "degree",
    "first_birth",
    "all_births",
    "t_ec",
    "delta",
    "t_betti",
    "valid",
];

pub const AGGREGATE_HEADER: [&str; 10] = [
    "model",
    "d",
    "size",
    "degree",
    "trials",
    "invalid",
    "mean_birth",
    "std_birth",
    "t_ec",
    "mean_delta",
];

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> Error + '_ {
    move |e| Error::Csv {
        path: path.to_path_buf(),
        source: e,
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| Error::Json {
        path: path.to_path_buf(),
        source: e,
    })?;
    writeln!(w)
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))
}

/// Trials table in the CSV schema; `path` only labels errors.
pub fn write_trials_csv<W: Write>(w: W, records: &[TrialRecord], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_writer(w);
    let err = csv_err(path);
    w.write_record(TRIALS_HEADER).map_err(&err)?;
    for r in records {
        let births: Vec<String> = r.all_births.iter().map(|b| b.to_string()).collect();
        w.write_record([
            r.trial.to_string(),
            r.seed.to_string(),
            r.model.to_string(),
            r.d.to_string(),
            r.size.to_string(),
            r.degree.to_string(),
            opt(r.first_birth),
            births.join(";"),
            opt(r.t_ec),
            opt(r.delta),
            opt(r.t_betti),
            r.valid.to_string(),
        ])
        .map_err(&err)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Aggregate table in the CSV schema; `path` only labels errors.
pub fn write_aggregate_csv<W: Write>(w: W, stats: &AggregateStats, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_writer(w);
    let err = csv_err(path);
    w.write_record(AGGREGATE_HEADER).map_err(&err)?;
    for k in &stats.degrees {
        w.write_record([
            stats.model.to_string(),
            stats.d.to_string(),
            stats.size.to_string(),
            k.degree.to_string(),
            k.trials.to_string(),
            k.invalid.to_string(),
            k.mean_birth.to_string(),
            k.std_birth.to_string(),
            opt(k.t_ec),
            opt(k.mean_delta),
        ])
        .map_err(&err)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Reads a trials table written by [`write_trials_csv`] or its JSON twin.
pub fn read_trials(path: &Path) -> Result<Vec<TrialRecord>> {
    if path.extension().is_some_and(|e| e == "json") {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        return serde_json::from_str(&text).map_err(|e| Error::Json {
            path: path.to_path_buf(),
            source: e,
        });
    }
    let mut rdr = csv::Reader::from_path(path).map_err(csv_err(path))?;
    let headers = rdr.headers().map_err(csv_err(path))?.clone();
    if headers.iter().ne(TRIALS_HEADER) {
        return Err(Error::InvalidArgument(format!(
            "{}: unexpected header",
            path.display()
        )));
    }
    let bad = |field: &str, row: usize| {
        Error::InvalidArgument(format!("{}: row {row}: bad `{field}`", path.display()))
    };
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row.map_err(csv_err(path))?;
        let num =
            |j: usize| -> Result<f64> { row[j].parse().map_err(|_| bad(TRIALS_HEADER[j], i)) };
        let opt_num = |j: usize| -> Result<Option<f64>> {
            if row[j].is_empty() {
                Ok(None)
            } else {
                num(j).map(Some)
            }
        };
        let int =
            |j: usize| -> Result<u64> { row[j].parse().map_err(|_| bad(TRIALS_HEADER[j], i)) };
        let all_births = if row[7].is_empty() {
            Vec::new()
        } else {
            row[7]
                .split(';')
                .map(|s| s.parse().map_err(|_| bad("all_births", i)))
                .collect::<Result<_>>()?
        };
        out.push(TrialRecord {
            trial: int(0)? as usize,
            seed: int(1)?,
            model: row[2].parse()?,
            d: int(3)? as usize,
            size: num(4)?,
            degree: int(5)? as usize,
            first_birth: opt_num(6)?,
            all_births,
            t_ec: opt_num(8)?,
            delta: opt_num(9)?,
            t_betti: opt_num(10)?,
            valid: row[11].parse().map_err(|_| bad("valid", i))?,
        });
    }
    Ok(out)
}

/// Locates the trials file in an output directory.
pub fn trials_file(dir: &Path) -> Result<PathBuf> {
    ["trials.csv", "trials.json"]
        .iter()
        .map(|f| dir.join(f))
        .find(|p| p.exists())
        .ok_or_else(|| {
            Error::io(
                dir.join("trials.csv"),
                std::io::Error::new(std::io::ErrorKind::NotFound, "no trials file"),
            )
        })
}

#[derive(Serialize)]
struct CurvesJson {
    trial: usize,
    t: Vec<f64>,
    ec: Vec<f64>,
    betti: Vec<Vec<f64>>,
}

/// Writes trials, aggregate, per-trial curves, the averaged EC curve and the
/// EC zeros into `dir`. Returns the paths written.
pub fn emit(out: &ExperimentOutput, dir: &Path, format: Format) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let cfg = &out.config;
    let mut written = Vec::new();
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };

    let path = dir.join(format!("trials.{ext}"));
    match format {
        Format::Csv => write_trials_csv(create(&path)?, &out.records, &path)?,
        Format::Json => write_json(&path, &out.records)?,
    }
    written.push(path);

    if let Ok(stats) = &out.stats {
        let path = dir.join(format!("aggregate.{ext}"));
        match format {
            Format::Csv => write_aggregate_csv(create(&path)?, stats, &path)?,
            Format::Json => write_json(&path, stats)?,
        }
        written.push(path);
    }

    let path = dir.join(format!("curves.{ext}"));
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(create(&path)?);
            let err = csv_err(&path);
            let mut header = vec!["trial".to_string(), "t".into(), "ec".into()];
            header.extend((0..=cfg.d).map(|k| format!("betti_{k}")));
            w.write_record(&header).map_err(&err)?;
            for c in &out.curves {
                for t in c.event_grid() {
                    let mut row =
                        vec![c.trial.to_string(), t.to_string(), c.ec.eval(t).to_string()];
                    row.extend(c.betti.iter().map(|b| b.eval(t).to_string()));
                    w.write_record(&row).map_err(&err)?;
                }
            }
            w.flush().map_err(|e| Error::io(&path, e))?;
        }
        Format::Json => {
            let rows: Vec<CurvesJson> = out
                .curves
                .iter()
                .map(|c| {
                    let t = c.event_grid();
                    CurvesJson {
                        trial: c.trial,
                        ec: c.ec.sample(&t),
                        betti: c.betti.iter().map(|b| b.sample(&t)).collect(),
                        t,
                    }
                })
                .collect();
            write_json(&path, &rows)?;
        }
    }
    written.push(path);

    let spec = cfg.spec();
    let analytic: Vec<Option<f64>> = out
        .mean_ec
        .grid
        .iter()
        .map(|&t| expected_ec(cfg.model, cfg.d, spec.volume(), t).ok())
        .collect();
    let path = dir.join(format!("ec_mean.{ext}"));
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(create(&path)?);
            let err = csv_err(&path);
            w.write_record(["t", "mean_ec", "std_err", "expected_ec"])
                .map_err(&err)?;
            for (j, &t) in out.mean_ec.grid.iter().enumerate() {
                w.write_record([
                    t.to_string(),
                    out.mean_ec.mean[j].to_string(),
                    out.mean_ec.std_err[j].to_string(),
                    opt(analytic[j]),
                ])
                .map_err(&err)?;
            }
            w.flush().map_err(|e| Error::io(&path, e))?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct MeanJson<'a> {
                t: &'a [f64],
                mean_ec: &'a [f64],
                std_err: &'a [f64],
                expected_ec: &'a [Option<f64>],
            }
            write_json(
                &path,
                &MeanJson {
                    t: &out.mean_ec.grid,
                    mean_ec: &out.mean_ec.mean,
                    std_err: &out.mean_ec.std_err,
                    expected_ec: &analytic,
                },
            )?;
        }
    }
    written.push(path);

    if let Ok(z) = &out.zeros {
        let path = dir.join("ec_zeros.json");
        write_json(&path, z)?;
        written.push(path);
    }
    Ok(written)
}
