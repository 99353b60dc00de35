//! `pellkit` command line: every library operation, one NDJSON record per run.

mod record;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{Map, Value};

use pellkit::{
    convergents, derive_params, fundamental_solution, grelak_solvable, iterate_pell, pellian_brute,
    pellian_orbit, prop1_witnesses, sqrt_cf, theorem3_check_with, verify_family_with,
    DivisorOracle, FamilyRun, OracleCheck, PellianSolution, WitnessTriple, DEFAULT_RHO_SEED,
};

use record::{num, nums, pair, witness_map, OutputRecord, Status};

const SEED_VAR: &str = "PELLKIT_RHO_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "pellkit",
    version,
    about = "Continued fractions, Pell equations and divisor witnesses"
)]
struct Cli {
    /// Emit newline-delimited JSON on stdout (the default and only format)
    #[arg(long, global = true)]
    json: bool,
    /// Print human-readable tables to stderr
    #[arg(short, long, global = true)]
    verbose: bool,
    /// Also write witness rows (n,d1,d2,delta,eps) to this CSV file
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Continued fraction of sqrt(D)
    #[command(subcommand)]
    Cf(CfCmd),
    /// Pell and Pellian equations
    #[command(subcommand)]
    Pell(PellCmd),
    /// Brute-force divisor oracle for (n^2+1)/2
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Constructive witness families
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Nonexistence checks
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug)]
enum CfCmd {
    /// Period and PQa trace of sqrt(D)
    Sqrt { d: String },
    /// Convergent p_k/q_k of sqrt(D)
    Convergent { d: String, k: String },
}

#[derive(Subcommand, Debug)]
enum PellCmd {
    /// Fundamental solution of x^2 - Dy^2 = 1
    Fund { d: String },
    /// m-th solution of x^2 - Dy^2 = 1 (m = 0 is (1, 0))
    Iterate { d: String, m: String },
    /// Solvability of ax^2 - by^2 = 1
    Grelak { a: String, b: String },
    /// Orbit of a solution of X^2 - DY^2 = N under the squared unit
    Orbit {
        d: String,
        #[arg(allow_hyphen_values = true)]
        n: String,
        x0: String,
        y0: String,
        count: String,
    },
    /// All solutions of X^2 - DY^2 = N with 0 <= Y <= ybound
    Brute {
        d: String,
        #[arg(allow_hyphen_values = true)]
        n: String,
        ybound: String,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// Factorization and divisors of (n^2+1)/2
    Divisors { n: String },
    /// Divisor pairs with d1 + d2 = delta*n + eps
    Pairs {
        n: String,
        delta: String,
        #[arg(allow_hyphen_values = true)]
        eps: String,
    },
    /// Pairs for every odd n in [3, nmax]
    Search {
        nmax: String,
        delta: String,
        #[arg(allow_hyphen_values = true)]
        eps: String,
    },
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long)]
    delta: String,
    #[arg(long, allow_hyphen_values = true)]
    eps: String,
    #[arg(long)]
    count: String,
}

#[derive(Subcommand, Debug)]
enum FamilyCmd {
    /// Generate witnesses for (delta, eps)
    Gen(FamilyArgs),
    /// Generate witnesses and confirm each with the oracle up to --n-cap
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n_cap: String,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// No witnesses exist for delta = 4k+2 >= 6 and eps = 0
    Theorem3 {
        #[arg(long)]
        delta: String,
        #[arg(long)]
        d_max: String,
        #[arg(long)]
        n_max: String,
    },
}

enum Failure {
    Usage(String),
    Domain(pellkit::Error),
}

impl From<pellkit::Error> for Failure {
    fn from(e: pellkit::Error) -> Self {
        Failure::Domain(e)
    }
}

#[derive(Default)]
struct Done {
    witnesses: Option<Vec<WitnessTriple>>,
    finding: Option<String>,
}

struct Ctx<'a> {
    verbose: bool,
    oracle: DivisorOracle,
    rec: &'a mut OutputRecord,
}

impl Ctx<'_> {
    fn input(&mut self, key: &str, value: &str) {
        self.rec.inputs.insert(key.to_string(), value.to_string());
    }

    fn push(&mut self, m: Map<String, Value>) {
        self.rec.results.push(m);
    }
}

fn int(name: &str, s: &str) -> Result<BigInt, Failure> {
    BigInt::from_str(s.trim())
        .map_err(|_| Failure::Usage(format!("<{name}>: '{s}' is not a decimal integer")))
}

fn small<T: TryFrom<BigInt>>(name: &str, s: &str) -> Result<T, Failure> {
    let v = int(name, s)?;
    T::try_from(v).map_err(|_| Failure::Usage(format!("<{name}>: '{s}' is out of range")))
}

fn table(headers: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        eprintln!("{}", padded.join("  "));
    };
    line(headers.iter().map(|h| h.to_string()).collect());
    for row in rows {
        line(row.clone());
    }
}

fn witness_table(ws: &[WitnessTriple]) {
    let rows: Vec<Vec<String>> = ws
        .iter()
        .map(|w| {
            vec![
                w.n.to_string(),
                w.d1.to_string(),
                w.d2.to_string(),
                w.gcd().to_string(),
            ]
        })
        .collect();
    table(&["n", "d1", "d2", "gcd"], &rows);
}

fn joined(v: &[BigInt]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cf_cmd(ctx: &mut Ctx, cmd: &CfCmd) -> Result<Done, Failure> {
    match cmd {
        CfCmd::Sqrt { d } => {
            ctx.input("d", d);
            let exp = sqrt_cf(&int("D", d)?)?;
            let mut m = Map::new();
            m.insert("a0".into(), num(&exp.a0));
            m.insert("period".into(), nums(&exp.period));
            m.insert("period_len".into(), num(exp.period_len()));
            let trace: Vec<Value> = exp
                .pqa_trace
                .iter()
                .map(|s| {
                    let mut t = Map::new();
                    t.insert("index".into(), num(s.index));
                    t.insert("s".into(), num(&s.s));
                    t.insert("t".into(), num(&s.t));
                    t.insert("a".into(), num(&s.a));
                    Value::Object(t)
                })
                .collect();
            m.insert("pqa".into(), Value::Array(trace));
            ctx.push(m);
            if ctx.verbose {
                eprintln!(
                    "sqrt({}) = [{}; {}]",
                    exp.radicand,
                    exp.a0,
                    joined(&exp.period)
                );
                let rows: Vec<Vec<String>> = exp
                    .pqa_trace
                    .iter()
                    .map(|s| {
                        vec![
                            s.index.to_string(),
                            s.s.to_string(),
                            s.t.to_string(),
                            s.a.to_string(),
                        ]
                    })
                    .collect();
                table(&["i", "s", "t", "a"], &rows);
            }
        }
        CfCmd::Convergent { d, k } => {
            ctx.input("d", d);
            ctx.input("k", k);
            let dv = int("D", d)?;
            let k: usize = small("k", k)?;
            let exp = sqrt_cf(&dv)?;
            let c = convergents(&exp, k);
            let mut m = Map::new();
            m.insert("index".into(), num(c.index));
            m.insert("p".into(), num(&c.p));
            m.insert("q".into(), num(&c.q));
            m.insert("norm".into(), num(&c.p * &c.p - &dv * &c.q * &c.q));
            ctx.push(m);
            if ctx.verbose {
                eprintln!("p_{} / q_{} = {} / {}", c.index, c.index, c.p, c.q);
            }
        }
    }
    Ok(Done::default())
}

fn pell_cmd(ctx: &mut Ctx, cmd: &PellCmd) -> Result<Done, Failure> {
    match cmd {
        PellCmd::Fund { d } => {
            ctx.input("d", d);
            let f = fundamental_solution(&int("D", d)?)?;
            if ctx.verbose {
                eprintln!("x = {}\ny = {}", f.x, f.y);
            }
            ctx.push(pair(&f.x, &f.y));
        }
        PellCmd::Iterate { d, m } => {
            ctx.input("d", d);
            ctx.input("m", m);
            let dv = int("D", d)?;
            let m: usize = small("m", m)?;
            let s = iterate_pell(&fundamental_solution(&dv)?, m);
            if ctx.verbose {
                eprintln!("x_{m} = {}\ny_{m} = {}", s.x, s.y);
            }
            let mut r = pair(&s.x, &s.y);
            r.insert("m".into(), num(m));
            ctx.push(r);
        }
        PellCmd::Grelak { a, b } => {
            ctx.input("a", a);
            ctx.input("b", b);
            let g = grelak_solvable(&int("a", a)?, &int("b", b)?)?;
            let mut r = Map::new();
            r.insert("u0".into(), num(&g.u0));
            r.insert("v0".into(), num(&g.v0));
            r.insert("solvable".into(), Value::Bool(g.solvable));
            if let Some((x, y)) = &g.witness {
                r.insert("x".into(), num(x));
                r.insert("y".into(), num(y));
            }
            if ctx.verbose {
                eprintln!("fundamental unit of {}: ({}, {})", &g.a * &g.b, g.u0, g.v0);
                match &g.witness {
                    Some((x, y)) => eprintln!("solvable: x = {x}, y = {y}"),
                    None => eprintln!("not solvable"),
                }
            }
            ctx.push(r);
        }
        PellCmd::Orbit {
            d,
            n,
            x0,
            y0,
            count,
        } => {
            for (k, v) in [("d", d), ("n", n), ("x0", x0), ("y0", y0), ("count", count)] {
                ctx.input(k, v);
            }
            let start = PellianSolution {
                radicand: int("D", d)?,
                rhs: int("N", n)?,
                x: int("X0", x0)?,
                y: int("Y0", y0)?,
            };
            let count: usize = small("count", count)?;
            let fund = fundamental_solution(&start.radicand)?;
            let orbit = pellian_orbit(&start, &fund, count)?;
            let mut rows = Vec::new();
            for (i, p) in orbit.iter().enumerate() {
                let mut r = pair(&p.x, &p.y);
                r.insert("index".into(), num(i));
                ctx.push(r);
                rows.push(vec![i.to_string(), p.x.to_string(), p.y.to_string()]);
            }
            if ctx.verbose {
                table(&["i", "X", "Y"], &rows);
            }
        }
        PellCmd::Brute { d, n, ybound } => {
            ctx.input("d", d);
            ctx.input("n", n);
            ctx.input("ybound", ybound);
            let dv = int("D", d)?;
            let nv = int("N", n)?;
            let bound: u64 = small("ybound", ybound)?;
            let sols = pellian_brute(&dv, &nv, bound);
            if ctx.verbose {
                let rows: Vec<Vec<String>> = sols
                    .iter()
                    .map(|s| vec![s.x.to_string(), s.y.to_string()])
                    .collect();
                table(&["X", "Y"], &rows);
            }
            for s in &sols {
                ctx.push(pair(&s.x, &s.y));
            }
        }
    }
    Ok(Done::default())
}

fn oracle_cmd(ctx: &mut Ctx, cmd: &OracleCmd) -> Result<Done, Failure> {
    let witnesses = match cmd {
        OracleCmd::Divisors { n } => {
            ctx.input("n", n);
            let set = ctx.oracle.divisor_set(&int("n", n)?)?;
            let factors: Vec<Value> = set
                .factorization
                .iter()
                .map(|(p, e)| {
                    let mut f = Map::new();
                    f.insert("p".into(), num(p));
                    f.insert("e".into(), num(e));
                    Value::Object(f)
                })
                .collect();
            let mut r = Map::new();
            r.insert("m".into(), num(&set.m));
            r.insert("factorization".into(), Value::Array(factors));
            r.insert("divisor_count".into(), num(set.divisors.len()));
            r.insert("divisors".into(), nums(&set.divisors));
            if ctx.verbose {
                let f: Vec<String> = set
                    .factorization
                    .iter()
                    .map(|(p, e)| format!("{p}^{e}"))
                    .collect();
                eprintln!("(n^2+1)/2 = {} = {}", set.m, f.join(" * "));
                eprintln!("{} divisors: {}", set.divisors.len(), joined(&set.divisors));
            }
            ctx.push(r);
            return Ok(Done::default());
        }
        OracleCmd::Pairs { n, delta, eps } => {
            ctx.input("n", n);
            ctx.input("delta", delta);
            ctx.input("eps", eps);
            let nv = int("n", n)?;
            let delta: u64 = small("delta", delta)?;
            ctx.oracle.find_pairs(&nv, delta, &int("eps", eps)?)?
        }
        OracleCmd::Search { nmax, delta, eps } => {
            ctx.input("nmax", nmax);
            ctx.input("delta", delta);
            ctx.input("eps", eps);
            let n_max: u64 = small("nmax", nmax)?;
            let delta: u64 = small("delta", delta)?;
            let eps = int("eps", eps)?;
            ctx.oracle.search_range(n_max, delta, &eps)
        }
    };
    if ctx.verbose {
        witness_table(&witnesses);
    }
    for w in &witnesses {
        ctx.push(witness_map(w));
    }
    Ok(Done {
        witnesses: Some(witnesses),
        finding: None,
    })
}

fn family_run(ctx: &mut Ctx, args: &FamilyArgs) -> Result<(pellkit::FamilyParams, usize), Failure> {
    ctx.input("delta", &args.delta);
    ctx.input("eps", &args.eps);
    ctx.input("count", &args.count);
    let delta: u64 = small("delta", &args.delta)?;
    let eps = int("eps", &args.eps)?;
    let count: usize = small("count", &args.count)?;
    Ok((derive_params(delta, &eps)?, count))
}

fn skipped_finding(run: &FamilyRun) -> Option<String> {
    let bad: Vec<String> = run
        .skipped
        .iter()
        .filter(|s| s.reason.is_falsification())
        .map(|s| format!("index {}: {}", s.index, s.reason))
        .collect();
    (!bad.is_empty()).then(|| bad.join("; "))
}

fn family_cmd(ctx: &mut Ctx, cmd: &FamilyCmd) -> Result<Done, Failure> {
    match cmd {
        FamilyCmd::Gen(args) => {
            let (params, count) = family_run(ctx, args)?;
            let run = match params.case {
                pellkit::FamilyCase::Delta2Eps0 => prop1_witnesses(count)?,
                _ => pellkit::generate(&params, count)?,
            };
            if ctx.verbose {
                eprintln!("case {}: D = {}", params.case, params.radicand());
                witness_table(&run.witnesses);
                for s in &run.skipped {
                    eprintln!("skipped index {}: {}", s.index, s.reason);
                }
            }
            for (w, i) in run.witnesses.iter().zip(&run.indices) {
                let mut r = witness_map(w);
                r.insert("index".into(), num(i));
                ctx.push(r);
            }
            Ok(Done {
                finding: skipped_finding(&run),
                witnesses: Some(run.witnesses),
            })
        }
        FamilyCmd::Verify { family, n_cap } => {
            ctx.input("n_cap", n_cap);
            let (params, count) = family_run(ctx, family)?;
            let cap: u64 = small("n-cap", n_cap)?;
            let report = verify_family_with(&ctx.oracle, &params, count, cap)?;
            let mut rows = Vec::new();
            let mut bad = Vec::new();
            for e in &report.entries {
                let oracle = match e.oracle {
                    OracleCheck::Confirmed => "confirmed",
                    OracleCheck::Missing => "missing",
                    OracleCheck::BeyondCap => "beyond_cap",
                };
                let violations: Vec<Value> = e
                    .violations
                    .iter()
                    .map(|v| Value::String(v.to_string()))
                    .collect();
                let mut r = witness_map(&e.witness);
                r.insert("index".into(), num(e.index));
                r.insert("oracle".into(), Value::String(oracle.into()));
                r.insert("violations".into(), Value::Array(violations));
                r.insert("passed".into(), Value::Bool(e.passed()));
                ctx.push(r);
                if !e.passed() {
                    bad.push(format!("{} ({oracle})", e.witness));
                }
                rows.push(vec![
                    e.index.to_string(),
                    e.witness.n.to_string(),
                    e.witness.d1.to_string(),
                    e.witness.d2.to_string(),
                    e.gcd.to_string(),
                    oracle.to_string(),
                ]);
            }
            if ctx.verbose {
                table(&["index", "n", "d1", "d2", "gcd", "oracle"], &rows);
            }
            let skipped: Vec<String> = report
                .skipped
                .iter()
                .filter(|s| s.reason.is_falsification())
                .map(|s| format!("index {}: {}", s.index, s.reason))
                .collect();
            bad.extend(skipped);
            let witnesses = report.entries.into_iter().map(|e| e.witness).collect();
            Ok(Done {
                witnesses: Some(witnesses),
                finding: (!bad.is_empty()).then(|| format!("failed checks: {}", bad.join("; "))),
            })
        }
    }
}

fn verify_cmd(ctx: &mut Ctx, cmd: &VerifyCmd) -> Result<Done, Failure> {
    let VerifyCmd::Theorem3 {
        delta,
        d_max,
        n_max,
    } = cmd;
    ctx.input("delta", delta);
    ctx.input("d_max", d_max);
    ctx.input("n_max", n_max);
    let delta: u64 = small("delta", delta)?;
    let d_max: u64 = small("d-max", d_max)?;
    let n_max: u64 = small("n-max", n_max)?;
    let report = theorem3_check_with(&ctx.oracle, delta, d_max, n_max)?;
    let mut table_rows = Vec::new();
    for row in &report.rows {
        let mut r = Map::new();
        r.insert("kind".into(), Value::String("cf_check".into()));
        r.insert("d".into(), num(row.d));
        r.insert("radicand".into(), num(&row.radicand));
        r.insert("a0".into(), num(&row.a0));
        r.insert("period".into(), nums(&row.period));
        r.insert("expected_period".into(), nums(&row.expected_period));
        r.insert("period_ok".into(), Value::Bool(row.period_ok));
        r.insert("u0".into(), num(&row.fundamental.0));
        r.insert("v0".into(), num(&row.fundamental.1));
        r.insert("fundamental_ok".into(), Value::Bool(row.fundamental_ok));
        r.insert("a".into(), num(&row.a));
        r.insert("b".into(), num(&row.b));
        r.insert("solvable".into(), Value::Bool(row.solvable));
        r.insert("divides".into(), Value::Bool(row.divides));
        ctx.push(r);
        table_rows.push(vec![
            row.d.to_string(),
            row.radicand.to_string(),
            joined(&row.period),
            format!("({}, {})", row.fundamental.0, row.fundamental.1),
            row.solvable.to_string(),
            if row.passed() { "ok" } else { "FAIL" }.to_string(),
        ]);
    }
    for w in &report.witnesses {
        let mut r = witness_map(w);
        r.insert("kind".into(), Value::String("witness".into()));
        ctx.push(r);
    }
    let mut s = Map::new();
    s.insert("kind".into(), Value::String("summary".into()));
    s.insert("delta_prime".into(), num(report.delta_prime));
    s.insert("witness_count".into(), num(report.witnesses.len()));
    s.insert(
        "cf_passed".into(),
        Value::Bool(report.cf_component_passed()),
    );
    s.insert(
        "criterion_passed".into(),
        Value::Bool(report.criterion_component_passed()),
    );
    s.insert(
        "sweep_passed".into(),
        Value::Bool(report.sweep_component_passed()),
    );
    ctx.push(s);
    if ctx.verbose {
        table(
            &["d", "D", "period", "(u0, v0)", "solvable", "check"],
            &table_rows,
        );
        eprintln!(
            "odd n <= {}: {} witnesses for delta = {delta}, eps = 0",
            report.n_max,
            report.witnesses.len()
        );
    }
    Ok(Done {
        finding: (!report.passed()).then(|| report.findings.join("; ")),
        witnesses: Some(report.witnesses),
    })
}

fn produces_witnesses(cmd: &Command) -> bool {
    matches!(
        cmd,
        Command::Oracle(OracleCmd::Pairs { .. } | OracleCmd::Search { .. })
            | Command::Family(_)
            | Command::Verify(_)
    )
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Cf(CfCmd::Sqrt { .. }) => "cf sqrt",
        Command::Cf(CfCmd::Convergent { .. }) => "cf convergent",
        Command::Pell(PellCmd::Fund { .. }) => "pell fund",
        Command::Pell(PellCmd::Iterate { .. }) => "pell iterate",
        Command::Pell(PellCmd::Grelak { .. }) => "pell grelak",
        Command::Pell(PellCmd::Orbit { .. }) => "pell orbit",
        Command::Pell(PellCmd::Brute { .. }) => "pell brute",
        Command::Oracle(OracleCmd::Divisors { .. }) => "oracle divisors",
        Command::Oracle(OracleCmd::Pairs { .. }) => "oracle pairs",
        Command::Oracle(OracleCmd::Search { .. }) => "oracle search",
        Command::Family(FamilyCmd::Gen(_)) => "family gen",
        Command::Family(FamilyCmd::Verify { .. }) => "family verify",
        Command::Verify(VerifyCmd::Theorem3 { .. }) => "verify theorem3",
    }
}

fn write_csv(path: &Path, witnesses: &[WitnessTriple]) -> Result<(), String> {
    let mut w = csv::Writer::from_path(path).map_err(|e| e.to_string())?;
    w.write_record(["n", "d1", "d2", "delta", "eps"])
        .map_err(|e| e.to_string())?;
    for t in witnesses {
        w.write_record([
            t.n.to_string(),
            t.d1.to_string(),
            t.d2.to_string(),
            t.delta.to_string(),
            t.eps.to_string(),
        ])
        .map_err(|e| e.to_string())?;
    }
    w.flush().map_err(|e| e.to_string())
}

fn rho_seed() -> Result<u64, String> {
    match std::env::var(SEED_VAR) {
        Ok(v) => u64::from_str(v.trim()).map_err(|_| format!("{SEED_VAR}: '{v}' is not a u64")),
        Err(_) => Ok(DEFAULT_RHO_SEED),
    }
}

fn fail(rec: &mut OutputRecord, detail: String) {
    rec.status = Status::Error;
    rec.error_detail = Some(detail);
}

fn execute(cli: &Cli) -> (OutputRecord, u8) {
    let mut rec = OutputRecord::new(command_name(&cli.command), BTreeMap::new());
    let seed = match rho_seed() {
        Ok(s) => s,
        Err(e) => {
            fail(&mut rec, e);
            return (rec, 1);
        }
    };
    if cli.csv.is_some() && !produces_witnesses(&cli.command) {
        let detail = format!("--csv: '{}' produces no witness rows", rec.command);
        fail(&mut rec, detail);
        return (rec, 1);
    }
    let mut ctx = Ctx {
        verbose: cli.verbose,
        oracle: DivisorOracle::new(seed),
        rec: &mut rec,
    };
    let outcome = match &cli.command {
        Command::Cf(c) => cf_cmd(&mut ctx, c),
        Command::Pell(c) => pell_cmd(&mut ctx, c),
        Command::Oracle(c) => oracle_cmd(&mut ctx, c),
        Command::Family(c) => family_cmd(&mut ctx, c),
        Command::Verify(c) => verify_cmd(&mut ctx, c),
    };
    match outcome {
        Err(Failure::Usage(msg)) => {
            fail(&mut rec, msg);
            (rec, 1)
        }
        Err(Failure::Domain(e)) => {
            let code = if e.is_falsification() { 2 } else { 1 };
            fail(&mut rec, e.to_string());
            (rec, code)
        }
        Ok(done) => {
            if let (Some(path), Some(ws)) = (&cli.csv, &done.witnesses) {
                if let Err(e) = write_csv(path, ws) {
                    fail(&mut rec, format!("--csv {}: {e}", path.display()));
                    return (rec, 1);
                }
            }
            match done.finding {
                Some(f) => {
                    fail(&mut rec, f);
                    (rec, 2)
                }
                None => {
                    rec.status = if rec.results.is_empty() {
                        Status::Empty
                    } else {
                        Status::Ok
                    };
                    (rec, 0)
                }
            }
        }
    }
}

fn emit(rec: &OutputRecord) {
    // a closed pipe is not an error for a one-line writer
    let _ = writeln!(std::io::stdout().lock(), "{}", rec.to_line());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            let mut rec = OutputRecord::new("usage", BTreeMap::new());
            let rendered = e.render().to_string();
            let detail: Vec<&str> = rendered
                .lines()
                .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more"))
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect();
            fail(
                &mut rec,
                detail.join(" ").trim_start_matches("error: ").to_string(),
            );
            emit(&rec);
            return ExitCode::from(1);
        }
    };
    let (rec, code) = execute(&cli);
    if cli.verbose {
        if let Some(detail) = &rec.error_detail {
            eprintln!("error: {detail}");
        }
    }
    emit(&rec);
    ExitCode::from(code)
}
