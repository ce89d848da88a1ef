use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solvers::{IterationRecord, Termination, Trace, TraceHeader, TraceSummary};

pub const TRACE_COLUMNS: [&str; 10] =
    ["k", "gamma", "L_k", "success", "residual", "objective", "step_norm", "tau", "retr_cum", "wall_ns"];

/// Sidecar contents: everything about a run that is not per-iteration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceMeta {
    pub header: TraceHeader,
    pub termination: Termination,
    pub summary: TraceSummary,
}

/// `<path>.meta.json`.
pub fn meta_path(path: impl AsRef<Path>) -> PathBuf {
    let mut s = path.as_ref().as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

fn float(v: f64) -> String {
    format!("{v:?}")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_trace_records<W: Write>(records: &[IterationRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRACE_COLUMNS)?;
    for r in records {
        w.write_record([
            r.k.to_string(),
            float(r.gamma),
            r.l_k.map(float).unwrap_or_default(),
            opt(r.success),
            float(r.residual),
            float(r.objective),
            float(r.step_norm),
            r.tau.map(float).unwrap_or_default(),
            opt(r.retr_cum),
            r.wall_ns.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn trace_csv_string(trace: &Trace) -> String {
    let mut buf = Vec::new();
    write_trace_records(&trace.records, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}

/// Writes the records to `path` and the header, termination and summary to
/// `<path>.meta.json`.
pub fn write_trace_csv(trace: &Trace, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    write_trace_records(&trace.records, BufWriter::new(File::create(path)?))?;
    let meta = TraceMeta { header: trace.header.clone(), termination: trace.termination, summary: trace.summary() };
    let mut f = BufWriter::new(File::create(meta_path(path))?);
    serde_json::to_writer_pretty(&mut f, &meta)?;
    f.write_all(b"\n")?;
    f.flush()?;
    Ok(())
}

fn parse_field<T: std::str::FromStr>(raw: &str, line: usize, column: &str) -> Result<T> {
    raw.parse().map_err(|_| Error::Parse { line, message: format!("bad value `{raw}` in column {column}") })
}

fn parse_opt<T: std::str::FromStr>(raw: &str, line: usize, column: &str) -> Result<Option<T>> {
    if raw.is_empty() {
        Ok(None)
    } else {
        parse_field(raw, line, column).map(Some)
    }
}

/// Parses the CSV body. Line numbers in errors are 1-based and count the header.
pub fn read_trace_records<R: Read>(input: R) -> Result<Vec<IterationRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    let headers = rdr.headers()?.clone();
    if headers.iter().ne(TRACE_COLUMNS) {
        return Err(Error::Parse {
            line: 1,
            message: format!(
                "expected columns {}, found {}",
                TRACE_COLUMNS.join(","),
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row?;
        let line = i + 2;
        let get = |c: usize| row.get(c).unwrap_or("");
        let required = |c: usize| -> Result<&str> {
            let v = get(c);
            if v.is_empty() {
                Err(Error::MissingField { field: TRACE_COLUMNS[c], k: i + 1 })
            } else {
                Ok(v)
            }
        };
        out.push(IterationRecord {
            k: parse_field(required(0)?, line, TRACE_COLUMNS[0])?,
            gamma: parse_field(required(1)?, line, TRACE_COLUMNS[1])?,
            l_k: parse_opt(get(2), line, TRACE_COLUMNS[2])?,
            success: parse_opt(get(3), line, TRACE_COLUMNS[3])?,
            residual: parse_field(required(4)?, line, TRACE_COLUMNS[4])?,
            objective: parse_field(required(5)?, line, TRACE_COLUMNS[5])?,
            step_norm: parse_field(required(6)?, line, TRACE_COLUMNS[6])?,
            tau: parse_opt(get(7), line, TRACE_COLUMNS[7])?,
            retr_cum: parse_opt(get(8), line, TRACE_COLUMNS[8])?,
            wall_ns: parse_field(required(9)?, line, TRACE_COLUMNS[9])?,
            divergence: None,
        });
    }
    Ok(out)
}

pub fn read_meta(path: impl AsRef<Path>) -> Result<TraceMeta> {
    Ok(serde_json::from_reader(BufReader::new(File::open(meta_path(path))?))?)
}

/// Reassembles a trace from the CSV at `path` and its sidecar.
pub fn read_trace_csv(path: impl AsRef<Path>) -> Result<Trace> {
    let path = path.as_ref();
    let meta = read_meta(path)?;
    let records = read_trace_records(BufReader::new(File::open(path)?))?;
    Ok(Trace { header: meta.header, records, termination: meta.termination, iterates: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::QuadraticTrimmedL1;
    use crate::solvers::{ac_pgm, SolverConfig};

    #[test]
    fn immediate_stop_gives_header_and_one_row() {
        let p = QuadraticTrimmedL1::isotropic(2, 1.0);
        let t = ac_pgm(&p, &[0.0, 0.0], &SolverConfig::new(1.1, 1.0)).unwrap();
        let s = trace_csv_string(&t);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], "k,gamma,L_k,success,residual,objective,step_norm,tau,retr_cum,wall_ns");
        assert!(lines[1].starts_with("1,1.0,,,0.0,0.0,0.0,,,"));
    }

    #[test]
    fn round_trip_through_files() {
        let p = QuadraticTrimmedL1::log_spectrum(5, 1e-2, 0.1, 1, 2).unwrap();
        let t = ac_pgm(&p, &[0.0; 5], &SolverConfig::new(1.1, 0.01).max_iter(40)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        write_trace_csv(&t, &path).unwrap();
        assert!(dir.path().join("t.csv.meta.json").exists());
        let back = read_trace_csv(&path).unwrap();
        assert_eq!(back.header, t.header);
        assert_eq!(back.termination, t.termination);
        let strip = |r: &IterationRecord| IterationRecord { divergence: None, ..r.clone() };
        assert_eq!(back.records, t.records.iter().map(strip).collect::<Vec<_>>());
    }

    #[test]
    fn wrong_header_is_rejected() {
        let err = read_trace_records("a,b\n1,2\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn bad_cell_reports_line() {
        let text = "k,gamma,L_k,success,residual,objective,step_norm,tau,retr_cum,wall_ns\n1,x,,,0,0,0,,,0\n";
        assert!(matches!(read_trace_records(text.as_bytes()), Err(Error::Parse { line: 2, .. })));
    }
}
