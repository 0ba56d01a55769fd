//! The `pnchain` command line.
//!
//! Exit status is `0` when the property a command tests holds, `1` when it
//! does not, and `2` for usage or input errors. Data goes to stdout,
//! diagnostics to stderr. Every JSON report carries `version` and an echo of
//! the input.

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::audit::{run_audit, AuditConfig, Verdict};
use crate::bench::run_bench;
use crate::cache::{write_generator_set, write_word_set, CACHE_DIR_ENV};
use crate::chain::{chain, first_non_pn_word, inversions, necessary_conditions, parity, Generator};
use crate::enumerate::{pn_count_sequence, Enumerator, DEFAULT_GENERATOR_CAP, DEFAULT_WORD_CAP};
use crate::error::{Error, Result};
use crate::extension::{is_extension_critical, palindrome_rule};
use crate::graph::{build_pn_graph_from, emit_dot, overlay_chain, to_json_graph};
use crate::swap::decide_swap;
use crate::word::{is_palindrome, is_prefix_normal, ones_profile, pn_parents, BinaryWord};
use crate::VERSION;

pub const EXIT_HOLDS: u8 = 0;
pub const EXIT_FAILS: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

const WORKERS_ENV: &str = "PNCHAIN_WORKERS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "pnchain", version, about = "Prefix normal words, chains and generators")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Directory holding cached enumeration levels.
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, env = WORKERS_ENV, default_value_t = 1)]
    workers: usize,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Largest word length any command enumerates.
    #[arg(long, global = true, default_value_t = DEFAULT_WORD_CAP)]
    word_cap: usize,
    /// Largest generator length any command enumerates.
    #[arg(long, global = true, default_value_t = DEFAULT_GENERATOR_CAP)]
    generator_cap: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Test a 0/1 word for prefix normality and related predicates.
    CheckWord { word: String },
    /// Test a comma-separated permutation for being a prefix normal generator.
    CheckGenerator {
        #[arg(allow_hyphen_values = true)]
        generator: String,
    },
    /// Print the word chain of a generator.
    Chain {
        #[arg(allow_hyphen_values = true)]
        generator: String,
        /// Prefix each word with its 1-based index.
        #[arg(long)]
        indexed: bool,
    },
    /// Decide whether swapping entries j and j+1 keeps a generator prefix normal.
    SwapTest {
        #[arg(allow_hyphen_values = true)]
        generator: String,
        #[arg(long)]
        j: usize,
    },
    /// Extension-criticality of words given as arguments or on stdin.
    ExtensionCheck { words: Vec<String> },
    /// List all prefix normal words or generators of one length.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "generators")]
        words: bool,
        #[arg(long)]
        generators: bool,
        /// Cross-check each new level against brute force before caching.
        #[arg(long)]
        verify: bool,
    },
    /// Number of prefix normal words for n = 1..=n-max.
    Count {
        #[arg(long)]
        n_max: usize,
    },
    /// The single-flip graph of all prefix normal words of length n.
    Graph {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        /// Highlight the chain of this generator.
        #[arg(long, allow_hyphen_values = true)]
        overlay: Option<String>,
        /// Write to a file instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Exhaustively check the chain and extension statements on small cases.
    ClaimAudit {
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        #[arg(long, default_value_t = 14)]
        word_n_max: usize,
        #[arg(long, default_value_t = 12)]
        window_n_max: usize,
    },
    /// Time the extension recursion against filtering all 2^n words.
    Bench {
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        repetitions: usize,
    },
}

/// Resolved global settings: flags, then environment, then defaults.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub cache_dir: Option<PathBuf>,
    pub n_cap_words: usize,
    pub n_cap_generators: usize,
    pub output_format: Option<OutputFormat>,
    pub workers: usize,
}

impl RunConfig {
    fn from_args(args: &GlobalArgs) -> Result<Self, String> {
        if args.workers == 0 {
            return Err("--workers must be at least 1".into());
        }
        if args.word_cap == 0 || args.generator_cap == 0 {
            return Err("caps must be positive".into());
        }
        Ok(Self {
            cache_dir: args.cache_dir.clone(),
            n_cap_words: args.word_cap,
            n_cap_generators: args.generator_cap,
            output_format: args.format,
            workers: args.workers,
        })
    }

    fn enumerator(&self, verify: bool) -> Result<Enumerator> {
        let e = match &self.cache_dir {
            Some(dir) => Enumerator::with_cache_dir(dir)?,
            None => Enumerator::in_memory(),
        };
        Ok(e.with_workers(self.workers)?.with_verify(verify))
    }

    fn format_or(&self, default: OutputFormat) -> OutputFormat {
        self.output_format.unwrap_or(default)
    }

    fn check_word_cap(&self, n: usize) -> Result<()> {
        check_cap(n, self.n_cap_words)
    }

    fn check_generator_cap(&self, n: usize) -> Result<()> {
        check_cap(n, self.n_cap_generators)
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// What a command produced, before rendering.
enum Output {
    Json(Value),
    Text(String),
}

struct Outcome {
    status: u8,
    output: Output,
}

impl Outcome {
    fn json(holds: bool, value: Value) -> Self {
        Self {
            status: if holds { EXIT_HOLDS } else { EXIT_FAILS },
            output: Output::Json(value),
        }
    }

    fn text(holds: bool, text: String) -> Self {
        Self {
            status: if holds { EXIT_HOLDS } else { EXIT_FAILS },
            output: Output::Text(text),
        }
    }
}

/// Parses `args` (including the program name), runs the command, and
/// returns the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{rendered}");
                EXIT_HOLDS
            };
        }
    };
    let config = match RunConfig::from_args(&cli.global) {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    match dispatch(&config, cli.command, stdin) {
        Ok(outcome) => match render(&config, outcome.output, stdout) {
            Ok(()) => outcome.status,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn render(config: &RunConfig, output: Output, stdout: &mut dyn Write) -> io::Result<()> {
    match output {
        Output::Text(s) => stdout.write_all(s.as_bytes()),
        Output::Json(v) => match config.output_format {
            Some(OutputFormat::Text) => {
                if let Value::Object(map) = &v {
                    for (k, val) in map {
                        match val {
                            Value::String(s) => writeln!(stdout, "{k}: {s}")?,
                            other => writeln!(stdout, "{k}: {other}")?,
                        }
                    }
                    Ok(())
                } else {
                    writeln!(stdout, "{v}")
                }
            }
            _ => {
                serde_json::to_writer_pretty(&mut *stdout, &v)?;
                writeln!(stdout)
            }
        },
    }
}

fn dispatch(config: &RunConfig, command: Command, stdin: &mut dyn BufRead) -> Result<Outcome> {
    match command {
        Command::CheckWord { word } => cmd_check_word(&word),
        Command::CheckGenerator { generator } => cmd_check_generator(&generator),
        Command::Chain { generator, indexed } => cmd_chain(config, &generator, indexed),
        Command::SwapTest { generator, j } => cmd_swap_test(&generator, j),
        Command::ExtensionCheck { words } => {
            let words = if words.is_empty() {
                stdin
                    .lines()
                    .map(|l| l.map(|s| s.trim().to_string()))
                    .filter(|l| !matches!(l, Ok(s) if s.is_empty()))
                    .collect::<io::Result<Vec<_>>>()?
            } else {
                words
            };
            cmd_extension_check(&words)
        }
        Command::Enumerate {
            n,
            words: _,
            generators,
            verify,
        } => cmd_enumerate(config, n, generators, verify),
        Command::Count { n_max } => cmd_count(config, n_max),
        Command::Graph {
            n,
            dot,
            json,
            overlay,
            output,
        } => cmd_graph(config, n, dot, json, overlay.as_deref(), output),
        Command::ClaimAudit {
            n_max,
            word_n_max,
            window_n_max,
        } => cmd_claim_audit(config, n_max, word_n_max, window_n_max),
        Command::Bench { n, repetitions } => cmd_bench(config, n, repetitions),
    }
}

fn cmd_check_word(input: &str) -> Result<Outcome> {
    let w: BinaryWord = input.trim().parse()?;
    let pn = is_prefix_normal(&w);
    let report = json!({
        "version": VERSION,
        "input": input,
        "word": w,
        "length": w.len(),
        "ones": w.count_ones(),
        "zeros": w.count_zeros(),
        "prefix_normal": pn,
        "palindrome": is_palindrome(&w),
        "extension_critical": if pn { Some(is_extension_critical(&w)?) } else { None },
        "palindrome_rule_fired": palindrome_rule(&w),
        "profile": ones_profile(&w),
        "pn_parents": pn_parents(&w),
    });
    Ok(Outcome::json(pn, report))
}

fn cmd_check_generator(input: &str) -> Result<Outcome> {
    let g: Generator = input.parse()?;
    let failing = first_non_pn_word(&g);
    let report = json!({
        "version": VERSION,
        "input": input,
        "generator": g,
        "n": g.len(),
        "necessary_conditions": necessary_conditions(&g),
        "pn_generator": failing.is_none(),
        "first_failing_word": failing.as_ref().map(|(i, w)| json!({ "index": i, "word": w })),
        "inversions": inversions(&g),
        "parity": parity(&g),
        "chain": chain(&g),
    });
    Ok(Outcome::json(failing.is_none(), report))
}

fn cmd_chain(config: &RunConfig, input: &str, indexed: bool) -> Result<Outcome> {
    let g: Generator = input.parse()?;
    let c = chain(&g);
    let holds = first_non_pn_word(&g).is_none();
    if config.output_format == Some(OutputFormat::Json) {
        let words: Vec<Value> = c
            .iter()
            .enumerate()
            .map(|(i, w)| json!({ "index": i + 1, "word": w, "prefix_normal": is_prefix_normal(w) }))
            .collect();
        return Ok(Outcome::json(
            holds,
            json!({ "version": VERSION, "input": input, "generator": g, "pn_generator": holds, "words": words }),
        ));
    }
    let mut text = String::new();
    for (i, w) in c.iter().enumerate() {
        if indexed {
            text.push_str(&format!("{}: {w}\n", i + 1));
        } else {
            text.push_str(&format!("{w}\n"));
        }
    }
    Ok(Outcome::text(holds, text))
}

fn cmd_swap_test(input: &str, j: usize) -> Result<Outcome> {
    let g: Generator = input.parse()?;
    let d = decide_swap(&g, j)?;
    let report = json!({
        "version": VERSION,
        "input": { "generator": input, "j": j },
        "generator": g,
        "j": j,
        "case": d.case,
        "keeps_pn": d.keeps_pn,
        "witness": d.witness,
    });
    Ok(Outcome::json(d.keeps_pn, report))
}

fn cmd_extension_check(inputs: &[String]) -> Result<Outcome> {
    let mut results = Vec::with_capacity(inputs.len());
    let mut all_pn = true;
    for s in inputs {
        let w: BinaryWord = s.parse()?;
        let pn = is_prefix_normal(&w);
        all_pn &= pn;
        results.push(json!({
            "word": w,
            "pn": pn,
            "extension_critical": if pn { Some(is_extension_critical(&w)?) } else { None },
            "palindrome_rule_fired": palindrome_rule(&w),
        }));
    }
    Ok(Outcome::json(
        all_pn,
        json!({ "version": VERSION, "input": inputs, "results": results }),
    ))
}

fn cmd_enumerate(config: &RunConfig, n: usize, generators: bool, verify: bool) -> Result<Outcome> {
    let enumerator = config.enumerator(verify)?;
    let json_out = config.output_format == Some(OutputFormat::Json);
    if generators {
        config.check_generator_cap(n)?;
        let set = enumerator.pn_generators(n)?;
        if json_out {
            return Ok(Outcome::json(
                true,
                json!({
                    "version": VERSION,
                    "input": { "n": n, "kind": "generators" },
                    "n": n,
                    "count": set.len(),
                    "generators": set.generators(),
                }),
            ));
        }
        let mut buf = Vec::new();
        write_generator_set(&mut buf, &set)?;
        Ok(Outcome::text(true, String::from_utf8(buf).expect("ascii")))
    } else {
        config.check_word_cap(n)?;
        let set = enumerator.pn_words(n)?;
        if json_out {
            return Ok(Outcome::json(
                true,
                json!({
                    "version": VERSION,
                    "input": { "n": n, "kind": "words" },
                    "n": n,
                    "count": set.len(),
                    "words": set.words(),
                }),
            ));
        }
        let mut buf = Vec::new();
        write_word_set(&mut buf, &set)?;
        Ok(Outcome::text(true, String::from_utf8(buf).expect("ascii")))
    }
}

fn cmd_count(config: &RunConfig, n_max: usize) -> Result<Outcome> {
    config.check_word_cap(n_max)?;
    let rows = pn_count_sequence(&config.enumerator(false)?, n_max)?;
    if config.output_format == Some(OutputFormat::Json) {
        return Ok(Outcome::json(
            true,
            json!({ "version": VERSION, "input": { "n_max": n_max }, "counts": rows }),
        ));
    }
    let mut text = String::from("n,count,ratio\n");
    for r in &rows {
        text.push_str(&format!("{},{},{}\n", r.n, r.count, r.ratio));
    }
    Ok(Outcome::text(true, text))
}

fn cmd_graph(
    config: &RunConfig,
    n: usize,
    dot: bool,
    json_flag: bool,
    overlay: Option<&str>,
    output: Option<PathBuf>,
) -> Result<Outcome> {
    config.check_word_cap(n)?;
    let nodes = config.enumerator(false)?.pn_words(n)?;
    let graph = build_pn_graph_from((*nodes).clone());
    let overlay = overlay
        .map(|s| s.parse::<Generator>().and_then(|g| overlay_chain(&graph, &g)))
        .transpose()?;
    let as_json = json_flag || (!dot && config.output_format == Some(OutputFormat::Json));
    let body = if as_json {
        let mut v = serde_json::to_value(to_json_graph(&graph, overlay.as_ref()))
            .map_err(|e| io::Error::other(e.to_string()))?;
        v["version"] = json!(VERSION);
        v["input"] = json!({ "n": n, "overlay": overlay.as_ref().map(|o| o.generator.to_string()) });
        let mut s = serde_json::to_string_pretty(&v).map_err(|e| io::Error::other(e.to_string()))?;
        s.push('\n');
        s
    } else {
        emit_dot(&graph, overlay.as_ref())
    };
    match output {
        Some(path) => {
            fs::write(&path, body)?;
            Ok(Outcome::text(true, String::new()))
        }
        None => Ok(Outcome::text(true, body)),
    }
}

fn cmd_claim_audit(
    config: &RunConfig,
    n_max: usize,
    word_n_max: usize,
    window_n_max: usize,
) -> Result<Outcome> {
    config.check_generator_cap(n_max)?;
    config.check_word_cap(word_n_max + 1)?;
    let report = run_audit(&AuditConfig {
        generator_n_max: n_max,
        word_n_max,
        window_n_max,
        workers: config.workers,
    })?;
    let holds = report.failures().next().is_none();
    if config.format_or(OutputFormat::Json) == OutputFormat::Text {
        let mut text = String::new();
        for c in &report.claims {
            text.push_str(&format!("{:<11} {:<32} {:>8} cases  {}\n", c.verdict, c.id, c.cases, c.range));
            if let Some(ce) = &c.counterexample {
                text.push_str(&format!("            counterexample: {ce}\n"));
            }
            if c.verdict == Verdict::Observation {
                if let Some(rows) = c.data.as_ref().and_then(|d| d["rows"].as_array()) {
                    for r in rows {
                        text.push_str(&format!(
                            "            n={:<3} formula={:<7} max={:<4} quoted={}\n",
                            r["n"], r["formula"], r["max_count"], r["quoted_pair"]
                        ));
                    }
                }
            }
        }
        return Ok(Outcome::text(holds, text));
    }
    let mut v = serde_json::to_value(&report).map_err(|e| io::Error::other(e.to_string()))?;
    v["version"] = json!(VERSION);
    v["input"] = json!({ "n_max": n_max, "word_n_max": word_n_max, "window_n_max": window_n_max });
    Ok(Outcome::json(holds, v))
}

fn cmd_bench(config: &RunConfig, n: usize, repetitions: usize) -> Result<Outcome> {
    let report = run_bench(n, config.n_cap_words, repetitions)?;
    let mut v = serde_json::to_value(&report).map_err(|e| io::Error::other(e.to_string()))?;
    v["version"] = json!(VERSION);
    v["input"] = json!({ "n": n, "repetitions": repetitions });
    Ok(Outcome::json(report.counts_agree, v))
}
