use std::fmt;
use std::path::Path;

use serde_json::{json, Value};
use sumsetlab::bounds::{f, f2, f3, f4, f_prime, format_rational, k_of, kneser_check, n0_check, BoundTable};
use sumsetlab::group::{generated_subgroup, GroupSpec};
use sumsetlab::procedures::{
    annotate_stages, greedy_grow, multiplicity_decomposition, olson_pipeline, stage_bound_audit, AuditRow,
    GrowthCertificate, StageSchedule, StopRule,
};
use sumsetlab::report::{
    audit_to_csv, bounds_to_csv, certificate_to_csv, certificate_to_json, csv_table, format_set_file, parse_set_file,
    search_report_to_csv, search_report_to_json, write_output,
};
use sumsetlab::search::{
    construction_family, find_nontrivial_stab_witness, min_ratio_scan, nontrivial_stab_witnesses, olson_scan,
    ConstructionKind, SearchReport,
};
use sumsetlab::setops::{iterated_sumset, lambda_all, rho_all, sigma, stabilizer, sumset};
use sumsetlab::{Element, ElementSet, Error};

use crate::{Cli, Command, Kind, OutArgs, OutFormat, Schedule, SetArgs};

pub enum CliError {
    Lib(Error),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = Result<T, CliError>;

/// Runs one command; returns the names of failed checks.
pub fn run(cli: Cli) -> CliResult<Vec<String>> {
    let cap = cli.max_order;
    match execute(cli.command, cap) {
        Err(CliError::Lib(Error::Verification(msg))) => Ok(vec![msg]),
        other => other,
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn parse_group(spec: &Option<String>, cap: usize) -> CliResult<Option<GroupSpec>> {
    Ok(spec.as_deref().map(|s| GroupSpec::parse_with_cap(s, cap)).transpose()?)
}

fn load(path: &Path, group: Option<&GroupSpec>, cap: usize) -> CliResult<(GroupSpec, ElementSet)> {
    let text = read(path)?;
    parse_set_file(&text, group, cap).map_err(|e| match e {
        Error::ParseLine { line, msg } => CliError::Io(format!("{}:{line}: {msg}", path.display())),
        other => other.into(),
    })
}

fn load_set(args: &SetArgs, cap: usize) -> CliResult<(GroupSpec, ElementSet)> {
    let g = parse_group(&args.group, cap)?;
    load(&args.file, g.as_ref(), cap)
}

fn load_many(group: &Option<String>, files: &[impl AsRef<Path>], cap: usize) -> CliResult<Vec<ElementSet>> {
    let mut g = parse_group(group, cap)?;
    let mut out = Vec::new();
    for f in files {
        let (gg, s) = load(f.as_ref(), g.as_ref(), cap)?;
        g = Some(gg);
        out.push(s);
    }
    Ok(out)
}

/// Text, CSV and JSON renderings of one result.
struct Rendered {
    text: String,
    csv: String,
    json: Value,
}

fn emit(out: &OutArgs, r: Rendered) -> CliResult<()> {
    let body = match out.format {
        None => r.text,
        Some(OutFormat::Csv) => r.csv,
        Some(OutFormat::Json) => serde_json::to_string_pretty(&r.json).expect("json values serialize"),
    };
    match write_output(out.output.as_deref(), &body) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io(format!("cannot write output: {e}"))),
        _ => Ok(()),
    }
}

fn write_file(path: &str, text: &str) -> CliResult<()> {
    write_output(Some(path), text).map_err(|e| CliError::Io(format!("cannot write {path}: {e}")))
}

fn csv(header: &[&str], rows: Vec<Vec<String>>) -> CliResult<String> {
    Ok(csv_table(header, rows)?)
}

fn elements_json(s: &ElementSet) -> Value {
    let g = s.group();
    s.iter().map(|x| g.format_element(x)).collect()
}

fn execute(cmd: Command, cap: usize) -> CliResult<Vec<String>> {
    match cmd {
        Command::Sigma { set, out } => {
            let (g, a) = load_set(&set, cap)?;
            let span = sigma(&a);
            let (size, hex) = (span.len(), span.to_hex());
            emit(&out, Rendered {
                text: format!("{size}\n{hex}"),
                csv: csv(&["group", "card", "sigma_size", "hex"], vec![vec![g.to_string(), a.len().to_string(), size.to_string(), hex.clone()]])?,
                json: json!({"schema": "v1", "group": g.to_string(), "card": a.len(), "sigma_size": size, "hex": hex}),
            })?;
            Ok(vec![])
        }
        Command::Stab { set, of_sigma, out } => {
            let (g, a) = load_set(&set, cap)?;
            let target = if of_sigma { sigma(&a) } else { a };
            let h = stabilizer(&target);
            let elems = h.carrier().format_elements();
            emit(&out, Rendered {
                text: format!("order={}\n{elems}", h.order()),
                csv: csv(&["group", "order", "elements"], vec![vec![g.to_string(), h.order().to_string(), elems.clone()]])?,
                json: json!({"schema": "v1", "group": g.to_string(), "order": h.order(), "elements": elements_json(h.carrier())}),
            })?;
            Ok(vec![])
        }
        Command::Lambda { set, element, out } => increments(&set, element, out, cap, "lambda", lambda_all),
        Command::Rho { set, element, out } => increments(&set, element, out, cap, "rho", rho_all),
        Command::Sumset { group, mut files, times, extra, out } => {
            files.extend(extra);
            let sets = load_many(&group, &files, cap)?;
            let result = match times {
                Some(r) => {
                    if sets.len() != 1 {
                        return Err(Error::Parse("--times takes exactly one set file".into()).into());
                    }
                    iterated_sumset(&sets[0], r)?
                }
                None => {
                    let mut acc = sets[0].clone();
                    for s in &sets[1..] {
                        acc = sumset(&acc, s)?;
                    }
                    acc
                }
            };
            let g = result.group().to_string();
            let (size, hex) = (result.len(), result.to_hex());
            emit(&out, Rendered {
                text: format!("{size}\n{hex}"),
                csv: csv(&["group", "size", "hex"], vec![vec![g.clone(), size.to_string(), hex.clone()]])?,
                json: json!({"schema": "v1", "group": g, "size": size, "hex": hex}),
            })?;
            Ok(vec![])
        }
        Command::Bounds { k, n, out } => bounds(&k, &n, out),
        Command::Kneser { group, files, out } => {
            let sets = load_many(&group, &files, cap)?;
            let k = kneser_check(&sets)?;
            emit(&out, Rendered {
                text: format!("lhs={}\nrhs={}\nstab_order={}\nholds={}", k.lhs, k.rhs, k.h.order(), k.holds),
                csv: csv(&["lhs", "rhs", "stab_order", "holds"], vec![vec![k.lhs.to_string(), k.rhs.to_string(), k.h.order().to_string(), k.holds.to_string()]])?,
                json: json!({"schema": "v1", "lhs": k.lhs, "rhs": k.rhs, "stab_order": k.h.order(), "holds": k.holds}),
            })?;
            Ok(if k.holds { vec![] } else { vec![format!("kneser: {} < {}", k.lhs, k.rhs)] })
        }
        Command::Grow { set, above, at_least, schedule, audit, out } => {
            let (g, a) = load_set(&set, cap)?;
            let stop = match (above, at_least) {
                (Some(k), _) => StopRule::SpanAbove(k),
                (_, Some(k)) => StopRule::SpanAtLeast(k),
                _ => StopRule::Exhaust,
            };
            let mut cert = greedy_grow(&a, stop)?;
            let n = cyclic_order(&g, schedule.is_some() || audit.is_some())?;
            if let Some(s) = schedule {
                annotate_stages(&mut cert, n, to_schedule(s));
            }
            cert.verify()?;
            if let Some(path) = audit {
                write_file(&path, &audit_to_csv(&stage_bound_audit(&cert, n))?)?;
            }
            emit_certificate(&out, &cert)?;
            Ok(vec![])
        }
        Command::Olson { n, file, audit, certs, out } => {
            let g = GroupSpec::with_cap(&[n], cap)?;
            let (_, a) = load(&file, Some(&g), cap)?;
            let r = olson_pipeline(n, &a)?;
            let mut failures = Vec::new();
            for (i, c) in [&r.cert1, &r.cert2].into_iter().enumerate() {
                if let Err(e) = c.verify() {
                    failures.push(format!("certificate {}: {e}", i + 1));
                }
            }
            if let Some(path) = audit {
                let mut rows: Vec<(usize, AuditRow)> = Vec::new();
                for (i, c) in [&r.cert1, &r.cert2].into_iter().enumerate() {
                    rows.extend(stage_bound_audit(c, n).into_iter().map(|row| (i + 1, row)));
                }
                let body = csv_table(
                    &["half", "stage", "check", "steps_checked", "violations", "held", "observed", "bound"],
                    rows.iter().map(|(h, row)| {
                        (h, row.stage, &row.check, row.steps_checked, row.violations, row.held, row.observed, row.bound)
                    }),
                )?;
                write_file(&path, &body)?;
            }
            if let Some(path) = certs {
                let docs: Vec<Value> = [&r.cert1, &r.cert2]
                    .into_iter()
                    .map(|c| Ok(serde_json::from_str(&certificate_to_json(c)?).expect("own output parses")))
                    .collect::<CliResult<_>>()?;
                write_file(&path, &serde_json::to_string_pretty(&docs).expect("json values serialize"))?;
            }
            let method = match r.method {
                sumsetlab::procedures::CoverMethod::Pigeonhole => "pigeonhole",
                sumsetlab::procedures::CoverMethod::Direct => "direct",
            };
            let missing = r.missing.map(|m| g.format_element(m));
            let mut text = format!("covers={}\n", r.covers);
            if let Some(m) = &missing {
                text.push_str(&format!("missing={m}\n"));
            }
            text.push_str(&format!(
                "method={method}\nhalves={},{}\nspans={},{}\nstage_marks={:?},{:?}",
                r.halves.0.len(),
                r.halves.1.len(),
                r.cert1.final_span,
                r.cert2.final_span,
                r.cert1.stage_marks,
                r.cert2.stage_marks
            ));
            emit(&out, Rendered {
                text,
                csv: csv(
                    &["n", "covers", "missing", "method", "half1", "half2", "span1", "span2"],
                    vec![vec![
                        n.to_string(),
                        r.covers.to_string(),
                        missing.clone().unwrap_or_default(),
                        method.into(),
                        r.halves.0.len().to_string(),
                        r.halves.1.len().to_string(),
                        r.cert1.final_span.to_string(),
                        r.cert2.final_span.to_string(),
                    ]],
                )?,
                json: json!({
                    "schema": "v1", "n": n, "covers": r.covers, "missing": missing, "method": method,
                    "halves": [elements_json(&r.halves.0), elements_json(&r.halves.1)],
                    "final_spans": [r.cert1.final_span, r.cert2.final_span],
                    "stage_marks": [r.cert1.stage_marks, r.cert2.stage_marks],
                }),
            })?;
            Ok(failures)
        }
        Command::Decompose { set, gens, out } => {
            let (g, a) = load_set(&set, cap)?;
            let h = if gens.is_empty() {
                stabilizer(&sigma(&a))
            } else {
                let gs = gens.iter().map(|s| g.parse_element(s)).collect::<Result<Vec<Element>, _>>()?;
                generated_subgroup(&g, &gs)
            };
            let r = multiplicity_decomposition(&a, &h)?;
            let reps = |cosets: &Vec<usize>| -> Vec<String> { cosets.iter().map(|&c| g.format_element(r.quotient.rep(c))).collect() };
            let fact = r.factorization.map(|f| f.holds());
            let mut text = format!("H={}\n|A|={}\n|A\\H|={}\n", r.subgroup.carrier().format_elements(), r.set_size, r.outside_h);
            for (i, s) in r.multiplicity_sets.iter().enumerate() {
                text.push_str(&format!("A_{}={{{}}}\n", i + 1, reps(s).join(" ")));
            }
            text.push_str(&format!(
                "quotient_sumset_size={}\nsigma_size={}\nis_stabilizer={}\nfactorization={}",
                r.quotient_sumset.len(),
                r.sigma_size,
                r.is_stabilizer,
                match fact {
                    Some(true) => "holds",
                    Some(false) => "FAILS",
                    None => "skipped",
                }
            ));
            let rows = r
                .multiplicity_sets
                .iter()
                .zip(&r.punctured_sets)
                .enumerate()
                .map(|(i, (s, p))| vec![(i + 1).to_string(), reps(s).join(" "), reps(p).join(" ")])
                .collect();
            emit(&out, Rendered {
                text,
                csv: csv(&["i", "multiplicity_set", "punctured_set"], rows)?,
                json: json!({
                    "schema": "v1",
                    "subgroup": elements_json(r.subgroup.carrier()),
                    "set_size": r.set_size,
                    "outside_h": r.outside_h,
                    "multiplicity_sets": r.multiplicity_sets.iter().map(reps).collect::<Vec<_>>(),
                    "punctured_sets": r.punctured_sets.iter().map(reps).collect::<Vec<_>>(),
                    "quotient_sumset": reps(&r.quotient_sumset),
                    "sigma_size": r.sigma_size,
                    "is_stabilizer": r.is_stabilizer,
                    "factorization_holds": fact,
                }),
            })?;
            Ok(r.failures().into_iter().map(String::from).collect())
        }
        Command::ScanMinRatio { group, antisymmetric, budget, seed, out } => {
            let g = GroupSpec::parse_with_cap(&group, cap)?;
            let report = min_ratio_scan(&g, antisymmetric, budget.map(|b| (b, seed)))?;
            eprintln!(
                "# mode={} seed={} universe={} enumerated={} admissible={} violations={} wall={:.3}s",
                report.meta.mode,
                report.meta.seed.map_or("none".into(), |s| s.to_string()),
                report.meta.universe,
                report.meta.enumerated,
                report.meta.admissible,
                report.meta.violations,
                report.meta.wall_seconds
            );
            emit_report(&out, &report)?;
            Ok(report_failures(&report)?)
        }
        Command::ScanOlson { n_min, n_max, max_phi, out } => {
            let report = olson_scan(n_min.max(2)..=n_max, max_phi)?;
            emit_report(&out, &report)?;
            Ok(report_failures(&report)?)
        }
        Command::WitnessStab { group, all, out } => {
            let g = GroupSpec::parse_with_cap(&group, cap)?;
            let found = if all { nontrivial_stab_witnesses(&g)? } else { find_nontrivial_stab_witness(&g)?.into_iter().collect() };
            let text = if found.is_empty() {
                "none".to_string()
            } else {
                found
                    .iter()
                    .map(|(a, h)| format!("A={} H={}", a.format_elements(), h.carrier().format_elements()))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            let rows = found.iter().map(|(a, h)| vec![a.format_elements(), h.carrier().format_elements()]).collect();
            let json_rows: Vec<Value> = found
                .iter()
                .map(|(a, h)| json!({"set": elements_json(a), "stabilizer": elements_json(h.carrier())}))
                .collect();
            emit(&out, Rendered {
                text,
                csv: csv(&["set", "stabilizer"], rows)?,
                json: json!({"schema": "v1", "group": g.to_string(), "witnesses": json_rows}),
            })?;
            Ok(vec![])
        }
        Command::Construct { kind, param, set_out, out } => {
            let kind = match kind {
                Kind::Interval => ConstructionKind::Interval,
                Kind::UnitIntervalPsq => ConstructionKind::UnitIntervalPsq,
            };
            let c = construction_family(kind, param)?;
            if let Some(path) = set_out {
                write_file(&path, &format_set_file(&c.set))?;
            }
            let ratio = format_rational(&c.ratio());
            let mut text = format!("group={}\n|A|={}\n|Σ(A)|={}\nratio={ratio}\n", c.group, c.set.len(), c.sigma.len());
            if let Some(r) = c.size_over_root() {
                text.push_str(&format!("|A|/sqrt|G|={}\n", format_rational(&r)));
            }
            for (name, ok) in &c.checks {
                text.push_str(&format!("{} {name}\n", if *ok { "ok  " } else { "FAIL" }));
            }
            let rows = c.checks.iter().map(|(name, ok)| vec![name.clone(), ok.to_string()]).collect();
            emit(&out, Rendered {
                text: text.trim_end().to_string(),
                csv: csv(&["check", "holds"], rows)?,
                json: json!({
                    "schema": "v1", "group": c.group.to_string(), "card": c.set.len(), "sigma_size": c.sigma.len(),
                    "ratio": ratio, "checks": c.checks.iter().map(|(n, ok)| json!({"check": n, "holds": ok})).collect::<Vec<_>>(),
                }),
            })?;
            Ok(c.failures().into_iter().map(String::from).collect())
        }
    }
}

fn increments(
    set: &SetArgs,
    element: Option<String>,
    out: OutArgs,
    cap: usize,
    name: &str,
    all: fn(&ElementSet) -> Vec<usize>,
) -> CliResult<Vec<String>> {
    let (g, s) = load_set(set, cap)?;
    let values = all(&s);
    let selected: Vec<(String, usize)> = match element {
        Some(lit) => {
            let x = g.parse_element(&lit)?;
            vec![(g.format_element(x), values[x.index()])]
        }
        None => g.elements().map(|x| (g.format_element(x), values[x.index()])).collect(),
    };
    let text = if selected.len() == 1 {
        selected[0].1.to_string()
    } else {
        selected.iter().map(|(e, v)| format!("{e}\t{v}")).collect::<Vec<_>>().join("\n")
    };
    let rows = selected.iter().map(|(e, v)| vec![e.clone(), v.to_string()]).collect();
    let json_rows: Vec<Value> = selected.iter().map(|(e, v)| json!({"element": e, name: v})).collect();
    emit(&out, Rendered {
        text,
        csv: csv(&["element", name], rows)?,
        json: json!({"schema": "v1", "group": g.to_string(), "values": json_rows}),
    })?;
    Ok(vec![])
}

fn parse_k_range(spec: &str) -> CliResult<(u64, u64)> {
    let bad = || CliError::Lib(Error::Parse(format!("bad k range {spec:?}; expected `9..12` or `10`")));
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    match spec.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(bad());
            }
            Ok((a, b))
        }
        None => num(spec).map(|k| (k, k)),
    }
}

fn bounds(k: &str, ns: &[u64], out: OutArgs) -> CliResult<Vec<String>> {
    if ns.is_empty() {
        let (lo, hi) = parse_k_range(k)?;
        let table = BoundTable::up_to(hi)?;
        if lo < table.k_min {
            return Err(Error::UndefinedIndex(lo).into());
        }
        let header = ["k", "n_k", "alpha_k"];
        let rows: Vec<Vec<String>> = (lo..=hi)
            .map(|k| vec![k.to_string(), table.n(k).expect("in range").to_string(), format_rational(table.alpha(k).expect("in range"))])
            .collect();
        let body = if lo == table.k_min { bounds_to_csv(&table)? } else { csv(&header, rows.clone())? };
        emit(&out, Rendered {
            text: body.clone(),
            csv: body,
            json: json!({"schema": "v1", "rows": rows.iter().map(|r| json!({"k": r[0], "n_k": r[1], "alpha_k": r[2]})).collect::<Vec<_>>()}),
        })?;
        return Ok(table.invariant_failures());
    }
    let header = ["n", "k", "f", "f_prime", "f2", "f3", "f4", "n0"];
    let rows: Vec<Vec<String>> = ns
        .iter()
        .map(|&n| {
            vec![
                n.to_string(),
                k_of(n).map(|k| k.to_string()).unwrap_or_default(),
                f(n).map(|v| format_rational(&v)).unwrap_or_default(),
                f_prime(n).map(|v| format_rational(&v)).unwrap_or_default(),
                f2(n).map(|v| format_rational(&v)).unwrap_or_default(),
                f3(n).map(|v| v.to_string()).unwrap_or_default(),
                f4(n).map(|v| v.to_string()).unwrap_or_default(),
                n0_check(n).to_string(),
            ]
        })
        .collect();
    let body = csv(&header, rows.clone())?;
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| Value::Object(header.iter().zip(r).map(|(h, v)| (h.to_string(), Value::String(v.clone()))).collect()))
        .collect();
    emit(&out, Rendered { text: body.clone(), csv: body, json: json!({"schema": "v1", "rows": json_rows}) })?;
    Ok(vec![])
}

fn cyclic_order(g: &GroupSpec, needed: bool) -> CliResult<u64> {
    if needed && !g.is_cyclic() {
        return Err(Error::Parse(format!("stage schedules need a cyclic group, got {g}")).into());
    }
    Ok(g.order() as u64)
}

fn to_schedule(s: Schedule) -> StageSchedule {
    match s {
        Schedule::ThreeStage => StageSchedule::ThreeStage,
        Schedule::Doubling => StageSchedule::Doubling,
    }
}

fn emit_certificate(out: &OutArgs, cert: &GrowthCertificate) -> CliResult<()> {
    let json_text = certificate_to_json(cert)?;
    let body = match out.format {
        Some(OutFormat::Csv) => certificate_to_csv(cert)?,
        _ => json_text,
    };
    match write_output(out.output.as_deref(), &body) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io(format!("cannot write output: {e}"))),
        _ => Ok(()),
    }
}

fn emit_report(out: &OutArgs, report: &SearchReport) -> CliResult<()> {
    let body = match out.format {
        Some(OutFormat::Json) => search_report_to_json(report)?,
        _ => search_report_to_csv(report)?,
    };
    match write_output(out.output.as_deref(), &body) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io(format!("cannot write output: {e}"))),
        _ => Ok(()),
    }
}

fn report_failures(report: &SearchReport) -> CliResult<Vec<String>> {
    let mut out: Vec<String> = report
        .rows
        .iter()
        .filter(|r| !r.satisfied)
        .map(|r| format!("{} for {} {{{}}}", r.bound, r.group, r.witness.join(" ")))
        .collect();
    out.extend(report.revalidate()?);
    Ok(out)
}
