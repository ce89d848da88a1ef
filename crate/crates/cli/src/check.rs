use autocond::dataio::read_trace_csv;
use autocond::diagnostics::{
    conservative_lower_bound, failure_census, gamma_ceiling_check, gamma_monotone, lemma1_check, success_descent_check,
    theorem1_bound_check, theorem5_bound_check, theorem6_bound_check, BoundReport,
};
use autocond::solvers::{SolverKind, Trace};
use serde::Serialize;

use crate::args::CheckArgs;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Check {
    Lemma1,
    Descent,
    Theorem1,
    Theorem5,
    Theorem6,
    Ceiling,
    Census,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Lemma1 => "lemma1",
            Check::Descent => "descent",
            Check::Theorem1 => "theorem1",
            Check::Theorem5 => "theorem5",
            Check::Theorem6 => "theorem6",
            Check::Ceiling => "ceiling",
            Check::Census => "census",
        }
    }

    fn needs_l(self) -> bool {
        !matches!(self, Check::Lemma1 | Check::Descent)
    }
}

fn applicable(kind: SolverKind) -> &'static [Check] {
    use Check::*;
    match kind {
        SolverKind::AcPgm => &[Lemma1, Descent, Theorem1, Ceiling, Census],
        // Bregman inequalities need D_h, which the CSV schema does not carry.
        SolverKind::AcBpgm => &[Ceiling, Census],
        SolverKind::AcCgm => &[Theorem5, Ceiling, Census],
        SolverKind::AcRgm => &[Theorem6, Ceiling, Census],
        _ => &[],
    }
}

fn requested(args: &CheckArgs) -> Vec<Check> {
    let flags = [
        (args.lemma1, Check::Lemma1),
        (args.descent, Check::Descent),
        (args.theorem1, Check::Theorem1),
        (args.theorem5, Check::Theorem5),
        (args.theorem6, Check::Theorem6),
        (args.ceiling, Check::Ceiling),
        (args.census, Check::Census),
    ];
    flags.into_iter().filter(|f| f.0).map(|f| f.1).collect()
}

#[derive(Serialize)]
struct Verdict {
    check: &'static str,
    pass: bool,
    detail: String,
    first_violation: Option<usize>,
}

fn from_report(check: Check, r: &BoundReport) -> Verdict {
    let first = r.first_violation();
    let detail = match first.and_then(|k| r.points.iter().find(|p| p.k == k)) {
        Some(p) => format!("violated at k={}: lhs {:e} > rhs {:e}", p.k, p.lhs, p.rhs),
        None => format!("{} points, max excess {:e}", r.points.len(), r.max_violation),
    };
    Verdict { check: check.name(), pass: r.pass, detail, first_violation: first }
}

struct Constants {
    l: Option<f64>,
    f_star: f64,
    diameter: Option<f64>,
}

fn evaluate(check: Check, trace: &Trace, c: &Constants) -> Result<Verdict, CliError> {
    let l = || c.l.ok_or_else(|| CliError::Usage(format!("{} needs --L", check.name())));
    let report = match check {
        Check::Lemma1 => lemma1_check(trace)?,
        Check::Descent => success_descent_check(trace)?,
        Check::Theorem1 => theorem1_bound_check(trace, l()?, c.f_star),
        Check::Theorem5 => {
            let d = c.diameter.ok_or_else(|| CliError::Usage("theorem5 needs --diameter".into()))?;
            theorem5_bound_check(trace, l()?, d, c.f_star)
        }
        Check::Theorem6 => theorem6_bound_check(trace, l()?, c.f_star),
        Check::Ceiling => {
            let r = gamma_ceiling_check(trace, l()?);
            let mut v = from_report(check, &r);
            if !gamma_monotone(trace) {
                v.pass = false;
                v.detail = "gamma sequence does not start at L0 or decreases".into();
            }
            return Ok(v);
        }
        Check::Census => {
            let census = failure_census(trace, l()?)?;
            return Ok(Verdict {
                check: check.name(),
                pass: census.pass,
                detail: format!("{} failures, bound {}", census.count, census.bound),
                first_violation: None,
            });
        }
    };
    Ok(from_report(check, &report))
}

/// Returns whether every applied check passed.
pub fn check(args: &CheckArgs) -> Result<bool, CliError> {
    let trace = read_trace_csv(&args.trace)?;
    let kind = trace.header.solver;
    let params = &trace.header.provenance.params;
    let hint = args.f_star.or_else(|| params.get("lower_bound").copied());
    let observed = std::iter::once(trace.header.initial_objective).chain(trace.records.iter().map(|r| r.objective));
    let constants = Constants {
        l: args.l.or_else(|| params.get("L").copied()),
        f_star: conservative_lower_bound(hint, observed),
        diameter: args.diameter.or_else(|| params.get("diameter").copied()),
    };

    let explicit = requested(args);
    let allowed = applicable(kind);
    let checks: Vec<Check> = if explicit.is_empty() {
        allowed.iter().copied().filter(|c| !c.needs_l() || constants.l.is_some()).collect()
    } else {
        if let Some(c) = explicit.iter().find(|c| !allowed.contains(c)) {
            return Err(CliError::Usage(format!("{} does not apply to `{kind}` traces", c.name())));
        }
        explicit
    };
    if checks.is_empty() {
        eprintln!("note: no diagnostics apply to this `{kind}` trace");
    } else if hint.is_none() {
        eprintln!("note: no lower bound given or recorded; using the best observed objective for F*");
    }

    let verdicts = checks.iter().map(|&c| evaluate(c, &trace, &constants)).collect::<Result<Vec<_>, _>>()?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&verdicts).map_err(autocond::Error::from)?);
    } else {
        for v in &verdicts {
            println!("{} {}: {}", if v.pass { "PASS" } else { "FAIL" }, v.check, v.detail);
        }
    }
    Ok(verdicts.iter().all(|v| v.pass))
}
