use std::io::Read;
use std::path::Path;

use serde_json::{json, Map, Value};

use tropcalc_core::operational::{self, OpError};
use tropcalc_core::semantics::{self, check_boolean, InterpretOptions, SemError};
use tropcalc_core::syntax::{self, parse, parse_context, pretty, Dialect, Term};
use tropcalc_core::taylor::{self, LipschitzError, Radius};
use tropcalc_core::tropical::{self, value_json, Point, SeriesError, TropSeries};

use crate::config::{self, Format, RunConfig};
use crate::{CliError, SeriesInput};

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        CliError::User(e.to_string())
    }
}

impl From<SemError> for CliError {
    fn from(e: SemError) -> Self {
        match e {
            SemError::Shape(_) => CliError::Internal(e.to_string()),
            other => CliError::User(other.to_string()),
        }
    }
}

impl From<OpError> for CliError {
    fn from(e: OpError) -> Self {
        match e {
            OpError::Sem(s) => s.into(),
            other => CliError::User(other.to_string()),
        }
    }
}

impl From<LipschitzError> for CliError {
    fn from(e: LipschitzError) -> Self {
        CliError::User(e.to_string())
    }
}

impl From<syntax::TypeError> for CliError {
    fn from(e: syntax::TypeError) -> Self {
        CliError::User(format!("type error: {e}"))
    }
}

impl From<syntax::SyntaxError> for CliError {
    fn from(e: syntax::SyntaxError) -> Self {
        CliError::User(format!("syntax error: {e}"))
    }
}

/// Machine output for stdout plus a one-line summary for stderr.
pub struct Report {
    json: Value,
    text: String,
    tsv: Option<String>,
    summary: String,
    format: Format,
}

impl Report {
    fn new(json: Value, text: impl Into<String>) -> Self {
        let text = text.into();
        Report { json, summary: text.lines().next().unwrap_or_default().to_string(), text, tsv: None, format: Format::Json }
    }

    fn summary(mut self, s: impl Into<String>) -> Self {
        self.summary = s.into();
        self
    }

    pub fn with_format(mut self, f: Format) -> Self {
        self.format = f;
        self
    }

    pub fn emit(&self) {
        match self.format {
            Format::Json => {
                println!("{}", serde_json::to_string_pretty(&self.json).unwrap_or_default());
                eprintln!("{}", self.summary);
            }
            Format::Text => println!("{}", self.text.trim_end()),
            Format::Tsv => print!("{}", self.tsv.as_deref().unwrap_or(&self.text)),
        }
    }
}

fn read_source(file: &Path) -> Result<String, CliError> {
    if file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::User(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(file).map_err(|e| CliError::User(format!("{}: {e}", file.display())))
}

fn load(file: &Path, dialect: Dialect) -> Result<Term, CliError> {
    Ok(parse(&read_source(file)?, dialect)?)
}

fn context(ctx: &str) -> Result<syntax::Context, CliError> {
    Ok(parse_context(ctx)?)
}

fn input_series(input: &SeriesInput) -> Result<TropSeries, CliError> {
    match (&input.series, &input.coeffs) {
        (Some(s), None) => config::series(s),
        (None, Some(c)) => config::coeffs(c, &input.var),
        _ => Err(CliError::User("give exactly one of --series or --coeffs".into())),
    }
}

fn point_json(p: &Point) -> Value {
    Value::Object(p.iter().map(|(k, v)| (k.clone(), value_json(v))).collect::<Map<_, _>>())
}

fn closed_pcf(file: &Path) -> Result<Term, CliError> {
    let t = load(file, Dialect::Pcfl)?;
    syntax::typecheck(Dialect::Pcfl, &Vec::new(), &t)?;
    Ok(t)
}

pub fn check(cfg: &RunConfig, file: &Path, ctx: &str) -> Result<Report, CliError> {
    let t = load(file, cfg.dialect)?;
    let ty = syntax::typecheck(cfg.dialect, &context(ctx)?, &t)?;
    let json = json!({"dialect": cfg.dialect.to_string(), "term": pretty(&t), "type": ty.to_string()});
    Ok(Report::new(json, format!("{} : {ty}", pretty(&t))))
}

pub fn interpret(cfg: &RunConfig, file: &Path, ctx: &str, params: &Point) -> Result<Report, CliError> {
    let t = load(file, cfg.dialect)?;
    let opts = InterpretOptions { caps: cfg.caps, reading: cfg.reading };
    let out = semantics::interpret(cfg.dialect, &context(ctx)?, &t, &opts)?;
    let m = if params.is_empty() { out.matrix.clone() } else { out.matrix.map_entries(|s| s.partial_eval(params)) };
    let warnings: Vec<String> = out.warnings.iter().map(|w| w.to_string()).collect();
    let json = json!({
        "type": out.ty.to_string(),
        "matrix": m.to_json(),
        "boolean": check_boolean(&out.matrix),
        "stabilized": out.stabilized,
        "warnings": warnings,
    });
    let mut text = format!("{} : {}\n", pretty(&t), out.ty);
    for (r, b, s) in m.iter() {
        let row: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        text.push_str(&format!("[{}] -> {b} : {s}\n", row.join(", ")));
    }
    let mut summary = format!("{} entries over {}", m.len(), m.shape());
    for w in &warnings {
        summary.push_str(&format!("\nwarning: {w}"));
    }
    Ok(Report::new(json, text).summary(summary))
}

pub fn eval(input: &SeriesInput, params: &Point) -> Result<Report, CliError> {
    let f = input_series(input)?;
    let v = f.eval(params)?;
    let json = json!({"series": f.to_string(), "point": point_json(params), "value": value_json(&v)});
    Ok(Report::new(json, v.to_string()))
}

pub fn roots(input: &SeriesInput) -> Result<Report, CliError> {
    let f = input_series(input)?;
    let rs = tropical::univariate_roots(&f)?;
    let json = json!({
        "series": f.to_string(),
        "roots": rs.iter().map(|r| json!({"root": value_json(&r.root), "multiplicity": r.multiplicity})).collect::<Vec<_>>(),
    });
    let text: Vec<String> = rs
        .iter()
        .map(|r| if r.multiplicity == 1 { r.root.to_string() } else { format!("{}^{}", r.root, r.multiplicity) })
        .collect();
    Ok(Report::new(json, text.join(" ")))
}

pub fn truncate(cfg: &RunConfig, input: &SeriesInput) -> Result<Report, CliError> {
    let f = input_series(input)?;
    let t = tropical::truncate(&f, &cfg.eps)?;
    let json = json!({"series": f.to_string(), "eps": value_json(&cfg.eps), "truncated": t.to_string(), "json": t.to_json()});
    Ok(Report::new(json, t.to_string()))
}

pub fn taylor(cfg: &RunConfig, file: &Path, ctx: &str) -> Result<Report, CliError> {
    let t = load(file, Dialect::Stlc)?;
    syntax::typecheck(Dialect::Stlc, &context(ctx)?, &t)?;
    let terms = taylor::taylor_expand(&t, cfg.degree_cap as usize)?;
    let shown: Vec<String> = terms.iter().map(|r| r.to_string()).collect();
    let json = json!({"term": pretty(&t), "degree_cap": cfg.degree_cap, "count": shown.len(), "terms": shown});
    Ok(Report::new(json, shown.join("\n")).summary(format!("{} resource terms up to bag size {}", shown.len(), cfg.degree_cap)))
}

pub fn lipschitz(
    cfg: &RunConfig,
    input: &SeriesInput,
    center: &Point,
    samples: usize,
    radius: u32,
) -> Result<Report, CliError> {
    let f = input_series(input)?;
    let mut center = center.clone();
    for v in f.vars() {
        if !center.contains_key(v) {
            return Err(CliError::User(format!("--params must give the center coordinate `{v}`")));
        }
    }
    center.retain(|k, _| f.vars().contains(k));
    let radius = if radius == 2 { Radius::Two } else { Radius::Three };
    let est = taylor::lipschitz_estimate(&f, &center, &cfg.delta, radius)?;
    let emp = taylor::empirical_lipschitz(&f, &taylor::ball(&center, &cfg.delta), samples, cfg.seed)?;
    if est.interior && emp.ratio > est.k {
        return Err(CliError::Internal(format!("empirical ratio {} exceeds the bound {}", emp.ratio, est.k)));
    }
    let witness = emp.witness.as_ref().map(|(u, v)| json!([point_json(u), point_json(v)]));
    let json = json!({
        "term": f.to_string(),
        "center": point_json(&center),
        "delta": value_json(&cfg.delta),
        "K": value_json(&est.k),
        "interior": est.interior,
        "empirical": value_json(&emp.ratio),
        "witness_pair": witness,
    });
    let note = if est.interior { "" } else { "; ball leaves the positive orthant, bound not guaranteed" };
    Ok(Report::new(json, format!("K = {} (empirical {}{note})", est.k, emp.ratio)))
}

const MAX_LISTED_PATHS: usize = 256;

pub fn bestcase(cfg: &RunConfig, file: &Path, target: u32, alpha: &str, beta: &str) -> Result<Report, CliError> {
    let t = closed_pcf(file)?;
    let bc = operational::best_case_with(&t, target, cfg.depth_cap, cfg.reading);
    let stabilized = bc.stabilized(&cfg.eps)?;
    let paths: Vec<Value> = operational::enumerate_paths(&t, cfg.depth_cap, cfg.reading)
        .into_iter()
        .filter(|p| p.outcome == target)
        .take(MAX_LISTED_PATHS)
        .map(|p| json!({"omega": p.omega, "monomial": p.monomial.to_string(), "steps": p.steps}))
        .collect();
    let truncated = if bc.series.is_empty() { TropSeries::inf() } else { tropical::truncate(&bc.series, &cfg.eps)? };
    let likelihood = !bc.series.is_empty() && bc.series.vars().iter().all(|v| v == alpha || v == beta);
    let mle = likelihood.then(|| {
        let m = operational::mle(&bc.series, alpha, beta, 200);
        json!({"p": m.p, "active": m.active.map(|d| d.to_string()), "boundary": m.boundary})
    });
    let json = json!({
        "target": target,
        "series": bc.series.to_string(),
        "truncated": truncated.to_string(),
        "depth_cap": cfg.depth_cap,
        "upper_bound": !stabilized,
        "paths": paths,
        "mle": mle,
    });
    let label = if stabilized { "stable" } else { "upper bound" };
    Ok(Report::new(json, format!("{} ({label})", bc.series)))
}

pub fn mle(input: &SeriesInput, grid: usize, alpha: &str, beta: &str) -> Result<Report, CliError> {
    let f = input_series(input)?;
    if f.is_empty() {
        return Err(CliError::User("mle needs a nonempty series".into()));
    }
    let m = operational::mle(&f, alpha, beta, grid);
    let active = m.active.as_ref().map(|d| d.to_string());
    let json = json!({"series": f.to_string(), "p": m.p, "value": m.value, "active": active, "boundary": m.boundary});
    let mut text = format!("p* = {:.4}", m.p);
    if m.boundary {
        text.push_str(" (boundary)");
    }
    Ok(Report::new(json, text))
}

pub fn adequacy(cfg: &RunConfig, file: &Path, target: u32) -> Result<Report, CliError> {
    let t = closed_pcf(file)?;
    let a = operational::adequacy_check(&t, target, cfg.caps, cfg.depth_cap)?;
    let json = json!({
        "target": target,
        "denotational": a.denotational.to_string(),
        "operational": a.operational.to_string(),
        "equal": a.equal,
    });
    let rel = if a.equal { "=" } else { "!=" };
    Ok(Report::new(json, format!("{} {rel} {}", a.denotational, a.operational)))
}

pub fn plot(input: &SeriesInput, lo: &str, hi: &str, step: &str) -> Result<Report, CliError> {
    let f = input_series(input)?;
    let tsv = tropical::plot_tsv(&f, &config::value(lo)?, &config::value(hi)?, &config::value(step)?)?;
    let points: Vec<Value> = tsv
        .lines()
        .filter_map(|l| l.split_once('\t'))
        .map(|(x, y)| json!([x, y]))
        .collect();
    let json = json!({"series": f.to_string(), "points": points});
    let mut r = Report::new(json, tsv.clone()).summary(format!("{} samples of {f}", points.len()));
    r.tsv = Some(tsv);
    Ok(r)
}
