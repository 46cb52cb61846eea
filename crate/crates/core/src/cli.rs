//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for bad input (including argument errors),
//! 2 when an internal consistency check fails.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::count1bc::{count_1bc, exists_1bc};
use crate::enumerate::{enumerate_minimal_bruteforce, MinimalSet};
use crate::error::{Error, Result};
use crate::forms::{all_fundamental_solutions, enumerate_minimal_via_forms};
use crate::survey::{self, Emission, Format, SeriesKind, TableId};
use crate::tree::{self, path_string, ExpandOptions, SolutionTree};
use crate::triple::{Order, OrderedTriple};

#[derive(Debug, Parser)]
#[command(
    name = "markoff",
    version,
    about = "Minimal triples of a^2 + b^2 + c^2 = 3abc + m"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Brute,
    Forms,
    Both,
}

impl From<MethodArg> for survey::Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => survey::Method::Auto,
            MethodArg::Brute => survey::Method::Brute,
            MethodArg::Forms => survey::Method::Forms,
            MethodArg::Both => survey::Method::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

/// What a survey prints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EmitArg {
    /// One row per m with all counts.
    Survey,
    /// Minimal triples with their orders.
    ByOrder,
    /// m with a unique minimal triple.
    Unique,
    /// m with a unique minimal triple and phi != 0.
    UniquePhiNonzero,
    /// m whose minimal triples all start with 1.
    AllFirstOne,
    /// #O(m) for every m.
    OrderCounts,
    /// Cumulative count of m with #O(m) = 1.
    CumulativeUnique,
    /// Same, restricted to primes m = 1 mod 4.
    CumulativeUniquePrime,
    /// #O(m) where 9m-4 is prime and m is not a sum of two squares.
    Mod3Prime,
    /// #O(m) mod 3 where #O(m) != 0.
    Mod3,
    /// Cumulative count of m whose minimal triples all start with 1.
    CumulativeAllFirstOne,
}

impl From<EmitArg> for Emission {
    fn from(e: EmitArg) -> Self {
        match e {
            EmitArg::Survey => Emission::Survey,
            EmitArg::ByOrder => Emission::Table(TableId::MinimalByOrder),
            EmitArg::Unique => Emission::Table(TableId::Unique),
            EmitArg::UniquePhiNonzero => Emission::Table(TableId::UniquePhiNonzero),
            EmitArg::AllFirstOne => Emission::Table(TableId::AllFirstIsOne),
            EmitArg::OrderCounts => Emission::Series(SeriesKind::OrderCounts),
            EmitArg::CumulativeUnique => Emission::Series(SeriesKind::CumulativeUnique),
            EmitArg::CumulativeUniquePrime => {
                Emission::Series(SeriesKind::CumulativeUniquePrime1Mod4)
            }
            EmitArg::Mod3Prime => Emission::Series(SeriesKind::Mod3With9m4Prime),
            EmitArg::Mod3 => Emission::Series(SeriesKind::Mod3Distribution),
            EmitArg::CumulativeAllFirstOne => Emission::Series(SeriesKind::CumulativeAll1bc),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal triples for one m, with orders.
    Minimal {
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Fundamental solutions of x^2 - 3axy + y^2 = m - a^2 for every a.
    Fundsols {
        #[arg(long)]
        m: u64,
        /// Restrict to one value of a.
        #[arg(long)]
        a: Option<u64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Expand solution trees breadth-first.
    Tree {
        #[arg(long)]
        m: u64,
        /// Expand only this root, given as a,b,c.
        #[arg(long, value_parser = parse_triple)]
        root: Option<[BigInt; 3]>,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Drop nodes whose largest component exceeds this.
        #[arg(long)]
        bound: Option<BigInt>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Descend a solution to its minimal triple.
    Descend {
        #[arg(long)]
        m: u64,
        #[arg(long, value_parser = parse_triple)]
        triple: [BigInt; 3],
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Root and path of a solution inside its tree.
    Locate {
        #[arg(long)]
        m: u64,
        #[arg(long, value_parser = parse_triple)]
        triple: [BigInt; 3],
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Closed-form count of minimal triples (1, b, c).
    Count1bc {
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Whether a minimal triple (1, b, c) exists.
    Exists1bc {
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Scan a range of m and print a table or data series.
    Survey {
        /// Inclusive range lo..hi.
        #[arg(long, value_parser = parse_range)]
        range: (u64, u64),
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "survey")]
        emit: EmitArg,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        #[arg(long, env = "MARKOFF_WORKERS")]
        workers: Option<usize>,
    },
    /// Run every consistency check over a range of m.
    Verify {
        #[arg(long, value_parser = parse_range)]
        range: (u64, u64),
        #[arg(long, env = "MARKOFF_WORKERS")]
        workers: Option<usize>,
    },
}

fn parse_triple(s: &str) -> std::result::Result<[BigInt; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(format!("expected a,b,c but got {s:?}"));
    };
    let p = |x: &str| x.parse::<BigInt>().map_err(|e| format!("{x:?}: {e}"));
    Ok([p(a)?, p(b)?, p(c)?])
}

fn parse_range(s: &str) -> std::result::Result<(u64, u64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected lo..hi but got {s:?}"))?;
    let p = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("{x:?}: {e}"));
    Ok((p(lo)?, p(hi)?))
}

/// Parse `args` (including the program name) and run. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            let _ = writeln!(err, "markoff: {e}");
            if e.is_internal() {
                2
            } else {
                1
            }
        }
    }
}

/// `Ok(false)` means the command ran but reported failed checks.
fn execute(cmd: Command, out: &mut dyn Write) -> Result<bool> {
    let text = match cmd {
        Command::Minimal { m, method, format } => minimal(m, method.into(), format.into())?,
        Command::Fundsols { m, a, format } => fundsols(m, a, format.into())?,
        Command::Tree {
            m,
            root,
            depth,
            bound,
            format,
        } => tree_cmd(m, root, depth, bound, format.into())?,
        Command::Descend { m, triple, format } => descend(m, triple, format.into())?,
        Command::Locate { m, triple, format } => locate(m, triple, format.into())?,
        Command::Count1bc { m, format } => {
            let c = count_1bc(m)?;
            match format {
                // key order is part of the interface, so this is written by hand
                FormatArg::Json => format!(
                    "{{\"exists\":{},\"count\":{},\"l\":{}}}\n",
                    c.exists, c.count, c.l
                ),
                FormatArg::Csv => format!("exists,count,l\n{},{},{}\n", c.exists, c.count, c.l),
            }
        }
        Command::Exists1bc { m, format } => {
            let e = exists_1bc(m)?;
            match format {
                FormatArg::Json => json_line(&json!({ "exists": e })),
                FormatArg::Csv => format!("exists\n{e}\n"),
            }
        }
        Command::Survey {
            range: (lo, hi),
            method,
            emit,
            format,
            workers,
        } => {
            let records = match workers {
                Some(w) => survey::scan_with_workers(lo, hi, method.into(), w)?,
                None => survey::scan(lo, hi, method.into())?,
            };
            survey::emit(&records, lo, hi, emit.into(), format.into())?
        }
        Command::Verify {
            range: (lo, hi),
            workers,
        } => {
            let outcomes = match workers {
                Some(w) => rayon::ThreadPoolBuilder::new()
                    .num_threads(w.max(1))
                    .build()
                    .map_err(|e| Error::domain(format!("cannot start worker pool: {e}")))?
                    .install(|| survey::verify_range(lo, hi))?,
                None => survey::verify_range(lo, hi)?,
            };
            let mut s = String::new();
            for o in &outcomes {
                let tag = if o.passed { "PASS" } else { "FAIL" };
                s.push_str(&format!("{tag} {}: {}\n", o.name, o.detail));
            }
            write_out(out, &s)?;
            return Ok(outcomes.iter().all(|o| o.passed));
        }
    };
    write_out(out, &text)?;
    Ok(true)
}

fn write_out(out: &mut dyn Write, s: &str) -> Result<()> {
    out.write_all(s.as_bytes())
        .map_err(|e| Error::domain(format!("cannot write output: {e}")))
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn strings<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(
        xs.into_iter()
            .map(|x| Value::String(x.to_string()))
            .collect(),
    )
}

fn minimal(m: u64, method: survey::Method, format: Format) -> Result<String> {
    let set = match method {
        survey::Method::Brute => enumerate_minimal_bruteforce(m)?,
        survey::Method::Forms => enumerate_minimal_via_forms(m)?,
        survey::Method::Auto if m > survey::AUTO_BOTH_LIMIT => enumerate_minimal_via_forms(m)?,
        _ => {
            let brute = enumerate_minimal_bruteforce(m)?;
            let forms = enumerate_minimal_via_forms(m)?;
            if brute != forms {
                return Err(Error::CrossCheck {
                    m,
                    brute: brute.to_string(),
                    forms: forms.to_string(),
                });
            }
            forms
        }
    };
    Ok(render_minimal(&set, format))
}

fn render_minimal(set: &MinimalSet, format: Format) -> String {
    let rows: Vec<(Order, _)> = set.iter().map(|(t, o)| (o, t)).collect();
    match format {
        Format::Csv => {
            let mut s = String::from("m,order,a,b,c\n");
            for (o, t) in rows {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    set.m(),
                    o.as_u8(),
                    t.a(),
                    t.b(),
                    t.c()
                ));
            }
            s
        }
        Format::Json => json_line(&json!({
            "m": set.m().to_string(),
            "triples": rows.iter().map(|(o, t)| json!({
                "t": strings(t.components()),
                "order": o.as_u8().to_string(),
                "phi": t.phi().to_string(),
            })).collect::<Vec<_>>(),
        })),
    }
}

fn fundsols(m: u64, only_a: Option<u64>, format: Format) -> Result<String> {
    if let Some(a) = only_a {
        if a == 0 || a.checked_mul(a).is_none_or(|sq| sq >= m) {
            return Err(Error::domain(format!(
                "need 1 <= a and a^2 < m, got a={a}, m={m}"
            )));
        }
    }
    let mut rows = Vec::new();
    for (ctx, sols) in all_fundamental_solutions(m)? {
        if only_a.is_some_and(|a| a != ctx.a()) {
            continue;
        }
        for s in sols {
            rows.push((ctx.a(), ctx.target(), s.u, s.v));
        }
    }
    Ok(match format {
        Format::Csv => {
            let mut s = String::from("a,n,u,v\n");
            for (a, n, u, v) in rows {
                s.push_str(&format!("{a},{n},{u},{v}\n"));
            }
            s
        }
        Format::Json => json_line(&Value::Array(
            rows.iter()
                .map(|(a, n, u, v)| {
                    json!({"a": a.to_string(), "n": n.to_string(), "u": u.to_string(), "v": v.to_string()})
                })
                .collect(),
        )),
    })
}

fn tree_cmd(
    m: u64,
    root: Option<[BigInt; 3]>,
    depth: usize,
    bound: Option<BigInt>,
    format: Format,
) -> Result<String> {
    let mut opts = ExpandOptions::depth(depth);
    if let Some(b) = bound {
        opts.max_component = b;
    }
    let (trees, single) = match root {
        Some([a, b, c]) => (
            vec![tree::expand(&OrderedTriple::new(m, a, b, c)?, &opts)?],
            true,
        ),
        None => (tree::expand_all(m, &opts)?, false),
    };
    Ok(match format {
        Format::Json => {
            let mut v: Vec<Value> = trees.iter().map(SolutionTree::to_json).collect();
            if single {
                json_line(&v.remove(0))
            } else {
                json_line(&Value::Array(v))
            }
        }
        Format::Csv => {
            let mut s = String::from("root_a,root_b,root_c,depth,path,a,b,c\n");
            for t in &trees {
                let [ra, rb, rc] = t.root.components();
                for n in &t.nodes {
                    let [a, b, c] = n.triple.components();
                    s.push_str(&format!(
                        "{ra},{rb},{rc},{},{},{a},{b},{c}\n",
                        n.depth(),
                        path_string(&n.path)
                    ));
                }
            }
            s
        }
    })
}

fn descend(m: u64, [a, b, c]: [BigInt; 3], format: Format) -> Result<String> {
    let start = OrderedTriple::new(m, a, b, c)?;
    let d = start.descend()?;
    let steps: Vec<&OrderedTriple> = std::iter::once(&start).chain(&d.path).collect();
    Ok(match format {
        Format::Csv => {
            let mut s = String::from("step,a,b,c\n");
            for (i, t) in steps.iter().enumerate() {
                s.push_str(&format!("{i},{},{},{}\n", t.a(), t.b(), t.c()));
            }
            s
        }
        Format::Json => json_line(&json!({
            "m": m.to_string(),
            "steps": steps.iter().map(|t| strings(t.components())).collect::<Vec<_>>(),
            "minimal": strings(d.minimal.components()),
        })),
    })
}

fn locate(m: u64, [a, b, c]: [BigInt; 3], format: Format) -> Result<String> {
    let t = OrderedTriple::new(m, a, b, c)?;
    let loc = tree::locate(&t)?;
    let path = path_string(&loc.path);
    Ok(match format {
        Format::Json => json_line(&json!({
            "m": m.to_string(),
            "root": strings(loc.root.components()),
            "minimal": strings(loc.minimal.components()),
            "path": path,
            "above_root": loc.above_root,
        })),
        Format::Csv => {
            let [ra, rb, rc] = loc.root.components();
            format!(
                "m,root_a,root_b,root_c,path,above_root\n{m},{ra},{rb},{rc},{path},{}\n",
                loc.above_root
            )
        }
    })
}
