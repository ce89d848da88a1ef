use std::fs;

use autocond::dataio::{read_libsvm, write_libsvm};
use autocond::instances::synthetic_logistic_dataset;
use autocond::numerics::DenseMatrix;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{GenArgs, InstanceId, ParseArgs};
use crate::instance::{build, Instance, Start};
use crate::CliError;

#[derive(Serialize)]
struct DatasetStats {
    samples: usize,
    features: usize,
    nonzeros: usize,
    positives: usize,
    negatives: usize,
}

pub fn parse(args: &ParseArgs) -> Result<(), CliError> {
    let ds = read_libsvm(&args.data)?;
    let positives = ds.labels.iter().filter(|&&y| y > 0.0).count();
    let stats = DatasetStats {
        samples: ds.n_samples(),
        features: ds.n_features(),
        nonzeros: ds.features.nnz(),
        positives,
        negatives: ds.n_samples() - positives,
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&stats).map_err(autocond::Error::from)?);
    } else {
        println!(
            "ok: m={} n={} nnz={} (+1: {}, -1: {})",
            stats.samples, stats.features, stats.nonzeros, stats.positives, stats.negatives
        );
    }
    Ok(())
}

fn matrix(m: &DenseMatrix) -> Value {
    json!({ "rows": m.rows(), "cols": m.cols(), "row_major": m.as_slice() })
}

pub fn gen(args: &GenArgs) -> Result<(), CliError> {
    let a = &args.instance;
    if a.instance == InstanceId::LogregTrimmed {
        if a.data.is_some() {
            return Err(CliError::Usage("gen synthesises data; drop --data".into()));
        }
        write_libsvm(&synthetic_logistic_dataset(a.m, a.n, a.seed)?, &args.out)?;
        println!("wrote {}", args.out.display());
        return Ok(());
    }
    let built = build(a)?;
    let data = match &built.instance {
        Instance::Quadratic(p) => json!({
            "q": matrix(p.q()), "center": p.center(), "lambda2": p.lambda2(), "kappa": p.kappa()
        }),
        Instance::Holder(p) => json!({ "nu": p.nu(), "n": a.n, "boxed": p.boxed() }),
        Instance::Quartic(p) => json!({ "a": matrix(p.a()), "b": p.b() }),
        Instance::Simplex(p) => json!({ "q": matrix(p.q()), "c": p.linear_term() }),
        Instance::Sphere(p) => json!({ "a": matrix(p.a()) }),
        Instance::Stiefel(p) => json!({ "a": matrix(p.a()), "weights": p.weights() }),
        Instance::Logistic(_) => unreachable!("handled above"),
    };
    let start = match &built.start {
        Start::Vector(x) => json!(x),
        Start::Matrix(x) => matrix(x),
    };
    let doc = json!({ "provenance": built.provenance, "data": data, "start": start });
    let text = serde_json::to_string_pretty(&doc).map_err(autocond::Error::from)?;
    fs::write(&args.out, text).map_err(autocond::Error::from)?;
    println!("wrote {}", args.out.display());
    Ok(())
}
