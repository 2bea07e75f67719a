use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use easypart::category::DEFAULT_HARD_CAP;
use easypart::fusion::{
    classify, compute_s, phi, rep_tensor, word_tensor, word_tensor_terms, FusionWord,
};
use easypart::linmap::{t_norm, t_ring};
use easypart::partition::{colors, enumerate_bounded};
use easypart::reps::ball_count;
use easypart::{CategorySpec, CategoryTable, FamilyTag, Partition};

mod suite;

/// Upper limit on table bounds accepted from the command line.
const CLI_CAP: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "easypart", version, about = "Noncrossing two-colored partitions and their categories")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// family tag: allnc, pairs, unitary, cs:<s>, cinf, c0plus, allp
    #[arg(long, global = true, conflicts_with = "gen")]
    family: Option<String>,
    /// file with generators, one per line in text form or a JSON array
    #[arg(long, global = true)]
    gen: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 8)]
    bound: usize,
    #[arg(long = "N", global = true, default_value_t = 4)]
    n: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, env = "EASYPART_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// list partitions with the given colorings
    Enumerate {
        #[arg(long, default_value = "")]
        upper: String,
        #[arg(long, default_value = "")]
        lower: String,
        /// include crossing partitions
        #[arg(long)]
        crossing: bool,
    },
    /// build the category and report line counts
    Closure,
    /// membership of one partition
    Member {
        #[arg(long)]
        partition: String,
    },
    /// the data I, S, J, G and freeness
    Classify,
    /// tensor product of two label words
    Fusion {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// summands of u_p ⊗ u_q for projective p, q
    Tensor {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// matrix of the linear map of a partition
    Tmap {
        #[arg(long)]
        partition: String,
        /// unnormalized map
        #[arg(long)]
        ring: bool,
    },
    /// classes of length ≤ tmax with their dimensions
    Dims {
        #[arg(long, default_value_t = 2)]
        tmax: usize,
    },
    /// ball counts with their bounds
    Balls {
        #[arg(long, default_value_t = 3)]
        kmax: usize,
    },
    /// run the invariant suites
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// ASCII picture of a partition
    Render {
        #[arg(long)]
        partition: String,
    },
}

enum Failure {
    Validation(String),
    Verification(Value),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Validation(e.to_string())
    }
}

struct Out {
    json: Value,
    text: String,
}

fn parse_partition(s: &str) -> Result<Partition, Failure> {
    let s = s.trim();
    if s.starts_with('{') {
        return Ok(serde_json::from_str(s)?);
    }
    s.parse().map_err(|e| Failure::Validation(format!("--partition {s:?}: {e}")))
}

fn read_generators(path: &PathBuf) -> Result<Vec<Partition>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Validation(format!("--gen {}: {e}", path.display())))?;
    if text.trim_start().starts_with('[') {
        return serde_json::from_str(&text).map_err(|e| Failure::Validation(format!("--gen {}: {e}", path.display())));
    }
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_partition)
        .collect()
}

fn build_table(cli: &Cli) -> Result<CategoryTable, Failure> {
    if cli.bound > CLI_CAP {
        return Err(Failure::Validation(format!("--bound {} exceeds {CLI_CAP}", cli.bound)));
    }
    let spec = match (&cli.family, &cli.gen) {
        (Some(tag), None) => {
            let tag: FamilyTag = tag.parse().map_err(|e| Failure::Validation(format!("--family: {e}")))?;
            CategorySpec::family(tag, cli.bound)
        }
        (None, Some(path)) => CategorySpec::new(read_generators(path)?, cli.bound),
        _ => return Err(Failure::Validation("one of --family or --gen is required".into())),
    };
    let spec = spec.with_hard_cap(CLI_CAP.max(DEFAULT_HARD_CAP));
    Ok(match &cli.cache_dir {
        Some(dir) => CategoryTable::closure_cached(spec, dir)?,
        None => CategoryTable::closure(spec)?,
    })
}

fn family_name(cli: &Cli) -> Value {
    match (&cli.family, &cli.gen) {
        (Some(f), _) => json!(f),
        (_, Some(g)) => json!(g.display().to_string()),
        _ => Value::Null,
    }
}

fn run(cli: &Cli) -> Result<Out, Failure> {
    match &cli.cmd {
        Cmd::Enumerate { upper, lower, crossing } => {
            let (w, w2) = (colors(upper)?, colors(lower)?);
            let mut ps = enumerate_bounded(&w, &w2, !crossing, CLI_CAP)?;
            if cli.family.is_some() || cli.gen.is_some() {
                let t = build_table(cli)?;
                ps.retain(|p| t.contains(p));
            }
            let text = ps.iter().map(|p| p.to_text() + "\n").collect();
            Ok(Out { json: json!({"count": ps.len(), "partitions": ps}), text })
        }
        Cmd::Closure => {
            let t = build_table(cli)?;
            let mut counts = Vec::new();
            let mut prev = 0;
            for n in 0..=t.bound() {
                let c = t.line_members(n).len();
                counts.push(c - prev);
                prev = c;
            }
            let text = counts.iter().enumerate().map(|(n, c)| format!("{n}\t{c}\n")).collect();
            Ok(Out {
                json: json!({
                    "family": family_name(cli),
                    "bound": t.bound(),
                    "source": t.source(),
                    "noncrossing": t.is_noncrossing(),
                    "line_orbits_by_size": counts,
                }),
                text,
            })
        }
        Cmd::Member { partition } => {
            let p = parse_partition(partition)?;
            let t = build_table(cli)?;
            let m = t.member(&p);
            Ok(Out { json: json!({"partition": p, "member": m.to_string()}), text: format!("{m}\n") })
        }
        Cmd::Classify => {
            let t = build_table(cli)?;
            let c = classify(&t);
            let text = format!(
                "I = {:?}\nS = {}\nJ = {}\nG order = {}\nfree = {}\nbound = {}\n",
                c.i,
                c.s,
                c.j,
                c.g.order.map_or("inf".to_string(), |d| d.to_string()),
                c.free,
                c.bound
            );
            Ok(Out { json: serde_json::to_value(&c)?, text })
        }
        Cmd::Fusion { left, right } => {
            let t = build_table(cli)?;
            let s = compute_s(&t);
            let parse = |x: &str, flag: &str| -> Result<FusionWord, Failure> {
                x.parse::<FusionWord>().map(|w| s.canonical_word(&w)).map_err(|e| Failure::Validation(format!("{flag}: {e}")))
            };
            let (a, b) = (parse(left, "--left")?, parse(right, "--right")?);
            let sum = word_tensor(&s, &a, &b);
            let reps = rep_tensor(&t, &phi(&s, &a), &phi(&s, &b))?;
            let predicted = word_tensor_terms(&s, &a, &b);
            let terms: Vec<Value> = reps
                .iter()
                .zip(&predicted)
                .map(|(r, (_, w))| {
                    json!({
                        "kind": r.kind.to_string(),
                        "word": w.as_ref().map(|w| w.to_string()),
                        "present": r.present.to_string(),
                    })
                })
                .collect();
            Ok(Out {
                json: json!({"left": a.to_string(), "right": b.to_string(), "S": s.class, "result": sum.to_string(), "terms": terms}),
                text: format!("{a} ⊗ {b} = {sum}\n"),
            })
        }
        Cmd::Tensor { p, q } => {
            let (p, q) = (parse_partition(p)?, parse_partition(q)?);
            let t = build_table(cli)?;
            let terms = rep_tensor(&t, &p, &q)?;
            let json_terms: Vec<Value> = terms
                .iter()
                .map(|x| json!({"kind": x.kind.to_string(), "partition": x.partition.to_text(), "present": x.present.to_string()}))
                .collect();
            let text = terms.iter().map(|x| format!("{}\t{}\t{}\n", x.kind, x.present, x.partition.to_text())).collect();
            Ok(Out { json: json!({"terms": json_terms}), text })
        }
        Cmd::Tmap { partition, ring } => {
            let p = parse_partition(partition)?;
            let m = if *ring { t_ring(&p, cli.n)? } else { t_norm(&p, cli.n)? };
            let mut text = format!("N^{} *\n", m.exponent());
            for r in m.entries.chunks(m.cols.max(1)) {
                let row: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                text += &row.join(" ");
                text.push('\n');
            }
            Ok(Out { json: serde_json::to_value(&m)?, text })
        }
        Cmd::Dims { tmax } => {
            let t = build_table(cli)?;
            let mut rows = Vec::new();
            let mut text = String::from("t\tword\tdim\n");
            for k in 0..=*tmax {
                let b = ball_count(&t, k, Some(cli.n))?;
                for c in b.classes {
                    text += &format!("{}\t{}\t{}\n", c.t, c.word, c.dim.unwrap_or(0));
                    rows.push(c);
                }
            }
            Ok(Out { json: json!({"N": cli.n, "classes": rows}), text })
        }
        Cmd::Balls { kmax } => {
            let t = build_table(cli)?;
            let mut rows = Vec::new();
            let mut text = String::from("k\tlower\tcount\tupper\n");
            for k in 0..=*kmax {
                let b = ball_count(&t, k, None)?;
                text += &format!("{}\t{}\t{}\t{}\n", k, b.lower_bound, b.count, b.upper_bound);
                rows.push(json!({
                    "k": k, "count": b.count, "lower_bound": b.lower_bound,
                    "upper_bound": b.upper_bound, "unknown": b.unknown,
                    "within_bounds": b.lower_bound <= b.count && b.count <= b.upper_bound,
                }));
            }
            Ok(Out { json: json!({"balls": rows}), text })
        }
        Cmd::Verify { suite } => {
            let table = if cli.family.is_some() || cli.gen.is_some() { Some(build_table(cli)?) } else { None };
            let checks = suite::run(suite, cli.n, cli.bound, cli.seed, table.as_ref()).map_err(Failure::Validation)?;
            let text = checks.iter().map(|c| format!("{}\t{}\t{}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.cases)).collect();
            let failed: Vec<&suite::Check> = checks.iter().filter(|c| !c.passed).collect();
            let json = json!({"suite": suite, "N": cli.n, "bound": cli.bound, "checks": checks, "passed": failed.is_empty()});
            if failed.is_empty() {
                Ok(Out { json, text })
            } else {
                Err(Failure::Verification(json))
            }
        }
        Cmd::Render { partition } => {
            let p = parse_partition(partition)?;
            let pic = p.render();
            Ok(Out { json: json!({"partition": p, "render": pic}), text: pic })
        }
    }
}

fn emit(format: Format, json: &Value, text: &str) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(json).expect("json")),
        Format::Text => print!("{text}"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            emit(cli.format, &out.json, &out.text);
            ExitCode::SUCCESS
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(report)) => {
            let text = report["checks"]
                .as_array()
                .map(|cs| {
                    cs.iter()
                        .map(|c| format!("{}\t{}\n", if c["passed"] == true { "PASS" } else { "FAIL" }, c["name"].as_str().unwrap_or("")))
                        .collect::<String>()
                })
                .unwrap_or_default();
            emit(cli.format, &report, &text);
            ExitCode::from(2)
        }
    }
}
