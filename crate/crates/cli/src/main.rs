use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use slpg::freegroup::{conjugate, cyclic_reduce, free_reduce, is_trivial, DecompressingMatcher};
use slpg::groups::{self, Endomorphism, TwistTable};
use slpg::hagenah::cs_to_slp_with_stats;
use slpg::plandowski::{equal_with_stats, lcp, EqualOptions};
use slpg::query;
use slpg::text::{parse, print};
use slpg::{Alphabet, Error, Letter, Program};

/// Grammar-compressed words and free-group decision problems.
#[derive(Parser)]
#[command(name = "slp", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Global {
    /// Emit {"verdict", "witness", "stats"} as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Per-round statistics on stderr (or under "stats" with --json).
    #[arg(long, global = true)]
    trace: bool,
    /// Refuse to decompress words longer than this.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_decompress: u64,
    /// Longest pattern the reference matcher decompresses.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    matcher_cap: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Queries and transformations of a single program.
    #[command(subcommand)]
    Slp(SlpCmd),
    /// Free-group operations.
    #[command(subcommand)]
    Fg(FgCmd),
    /// Nielsen words in Aut(F_m).
    #[command(subcommand)]
    Aut(AutCmd),
    /// Braid words.
    #[command(subcommand)]
    Braid(BraidCmd),
    /// Free-by-cyclic groups.
    #[command(subcommand)]
    Fbc(FbcCmd),
    /// Mapping class membership.
    #[command(subcommand)]
    Mcg(McgCmd),
}

#[derive(Subcommand)]
enum SlpCmd {
    Decompress { file: PathBuf },
    Length { file: PathBuf },
    CharAt {
        file: PathBuf,
        #[arg(allow_negative_numbers = true)]
        index: BigInt,
    },
    Substring {
        file: PathBuf,
        #[arg(allow_negative_numbers = true)]
        i: BigInt,
        #[arg(allow_negative_numbers = true)]
        j: BigInt,
    },
    Invert { file: PathBuf },
    Project {
        file: PathBuf,
        /// Comma-separated letters to keep.
        #[arg(long)]
        keep: String,
    },
    Normalize {
        file: PathBuf,
        /// Accept composition systems and convert them first.
        #[arg(long)]
        eliminate_truncations: bool,
    },
    Equal { a: PathBuf, b: PathBuf },
    Lcp { a: PathBuf, b: PathBuf },
}

#[derive(Subcommand)]
enum FgCmd {
    Reduce { file: PathBuf },
    Trivial { file: PathBuf },
    #[command(name = "cyclic-reduce", alias = "cyclic")]
    Cyclic { file: PathBuf },
    Conjugate { a: PathBuf, b: PathBuf },
}

#[derive(Subcommand)]
enum AutCmd {
    Trivial {
        word: String,
        #[arg(long)]
        rank: Option<usize>,
    },
    Apply {
        word: String,
        /// Word over a1 .. am.
        input: String,
        #[arg(long)]
        rank: Option<usize>,
    },
    Inn {
        word: String,
        #[arg(long)]
        rank: Option<usize>,
    },
}

#[derive(Subcommand)]
enum BraidCmd {
    Trivial {
        word: String,
        #[arg(long)]
        strands: usize,
    },
}

#[derive(Subcommand)]
enum FbcCmd {
    Trivial {
        #[arg(long)]
        phi: PathBuf,
        word: String,
    },
}

#[derive(Subcommand)]
enum McgCmd {
    Handlebody {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        actions: Option<PathBuf>,
        #[arg(default_value = "")]
        twists: String,
    },
    Heegaard {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        actions: Option<PathBuf>,
        /// Actions for the second handlebody; defaults to the primary table.
        #[arg(long)]
        dual: Option<PathBuf>,
        #[arg(default_value = "")]
        twists: String,
    },
    PuncturedDisk {
        word: String,
        #[arg(long)]
        rank: Option<usize>,
    },
}

enum Outcome {
    Verdict {
        holds: bool,
        witness: Option<Program>,
        stats: Map<String, Value>,
    },
    Program(Program, Map<String, Value>),
    Text(String, Map<String, Value>),
}

type Run = std::result::Result<Outcome, String>;

fn read(path: &Path) -> std::result::Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> std::result::Result<Program, String> {
    parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn err(e: Error) -> String {
    e.to_string()
}

fn verdict(holds: bool) -> Outcome {
    Outcome::Verdict {
        holds,
        witness: None,
        stats: Map::new(),
    }
}

fn stat(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn run_slp(cmd: SlpCmd, g: Global) -> Run {
    match cmd {
        SlpCmd::Decompress { file } => {
            let p = load(&file)?;
            let w = query::decompress(&p, g.max_decompress).map_err(err)?;
            Ok(Outcome::Text(p.alphabet().format_word(&w), stat(&[("length", json!(w.len()))])))
        }
        SlpCmd::Length { file } => {
            let p = load(&file)?;
            Ok(Outcome::Text(p.len().to_string(), Map::new()))
        }
        SlpCmd::CharAt { file, index } => {
            let p = load(&file)?;
            let l = query::char_at(&p, &index).map_err(err)?;
            Ok(Outcome::Text(p.alphabet().name(l), Map::new()))
        }
        SlpCmd::Substring { file, i, j } => {
            let p = load(&file)?;
            let w = query::substring(&p, &i, &j).map_err(err)?;
            Ok(Outcome::Text(p.alphabet().format_word(&w), Map::new()))
        }
        SlpCmd::Invert { file } => Ok(Outcome::Program(query::invert(&load(&file)?).map_err(err)?, Map::new())),
        SlpCmd::Project { file, keep } => {
            let p = load(&file)?;
            let letters = keep
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| p.alphabet().lookup(s).map_err(err))
                .collect::<std::result::Result<Vec<Letter>, _>>()?;
            Ok(Outcome::Program(query::project(&p, &letters).map_err(err)?, Map::new()))
        }
        SlpCmd::Normalize {
            file,
            eliminate_truncations,
        } => {
            let p = load(&file)?;
            if p.has_truncation() && !eliminate_truncations {
                return Err(err(Error::HasTruncation));
            }
            let (q, s) = cs_to_slp_with_stats(&p).map_err(err)?;
            let stats = stat(&[
                ("input_size", json!(s.input_size)),
                ("output_size", json!(s.output_size)),
                ("bound", json!(s.bound)),
            ]);
            Ok(Outcome::Program(q, stats))
        }
        SlpCmd::Equal { a, b } => {
            let (pa, pb) = (load(&a)?, load(&b)?);
            let opts = EqualOptions {
                audit: g.trace,
                ..EqualOptions::default()
            };
            let (eq, st) = equal_with_stats(&pa, &pb, opts).map_err(err)?;
            let mut stats = stat(&[
                ("rounds", json!(st.rounds.len())),
                ("max_assertions", json!(st.rounds.iter().map(|r| r.size()).max().unwrap_or(0))),
            ]);
            if g.trace {
                trace(&mut stats, g, st.trace().lines().map(String::from).collect());
                stats.insert("size_bound_holds".into(), json!(st.size_bound_holds()));
            }
            Ok(Outcome::Verdict {
                holds: eq,
                witness: None,
                stats,
            })
        }
        SlpCmd::Lcp { a, b } => {
            let k = lcp(&load(&a)?, &load(&b)?).map_err(err)?;
            Ok(Outcome::Text(k.to_string(), Map::new()))
        }
    }
}

fn trace(stats: &mut Map<String, Value>, g: Global, lines: Vec<String>) {
    if g.json {
        stats.insert("trace".into(), json!(lines));
    } else {
        for l in lines {
            eprintln!("{l}");
        }
    }
}

fn run_fg(cmd: FgCmd, g: Global) -> Run {
    match cmd {
        FgCmd::Reduce { file } => {
            let r = free_reduce(&load(&file)?).map_err(err)?;
            let stats = stat(&[
                ("length", json!(r.program.len().to_string())),
                ("certified", json!(r.certified)),
            ]);
            Ok(Outcome::Program(r.program, stats))
        }
        FgCmd::Trivial { file } => Ok(verdict(is_trivial(&load(&file)?).map_err(err)?)),
        FgCmd::Cyclic { file } => {
            let c = cyclic_reduce(&load(&file)?).map_err(err)?;
            let stats = stat(&[
                ("k", json!(c.k.to_string())),
                ("core_length", json!(c.core.len().to_string())),
            ]);
            let mut text = String::from("# conjugator\n");
            text += &print(&c.conjugator);
            text += "# core\n";
            text += &print(&c.core);
            Ok(Outcome::Text(text.trim_end().to_string(), stats))
        }
        FgCmd::Conjugate { a, b } => {
            let m = DecompressingMatcher { cap: g.matcher_cap };
            let v = conjugate(&load(&a)?, &load(&b)?, &m).map_err(err)?;
            Ok(Outcome::Verdict {
                holds: v.holds,
                witness: v.witness,
                stats: Map::new(),
            })
        }
    }
}

fn nielsen(word: &str, rank: Option<usize>) -> std::result::Result<(Vec<groups::Nielsen>, usize), String> {
    let w = groups::parse_nielsen(word).map_err(err)?;
    let rank = rank.unwrap_or_else(|| groups::nielsen_rank(&w));
    Ok((w, rank))
}

fn run_aut(cmd: AutCmd) -> Run {
    match cmd {
        AutCmd::Trivial { word, rank } => {
            let (w, m) = nielsen(&word, rank)?;
            Ok(verdict(groups::aut_is_identity(&w, m).map_err(err)?))
        }
        AutCmd::Apply { word, input, rank } => {
            let (w, m) = nielsen(&word, rank)?;
            let needed = input
                .split_whitespace()
                .filter_map(|t| t.trim_start_matches('a').trim_end_matches('\'').parse::<usize>().ok())
                .max()
                .unwrap_or(0);
            let m = if rank.is_some() { m } else { m.max(needed) };
            let a = Alphabet::numbered_group(m);
            let letters = a.parse_word(&input).map_err(err)?;
            Ok(Outcome::Program(groups::aut_apply(&w, m, &letters).map_err(err)?, Map::new()))
        }
        AutCmd::Inn { word, rank } => {
            let (w, m) = nielsen(&word, rank)?;
            let a = Alphabet::numbered_group(m);
            let v = groups::inn_membership(&a, &groups::nielsen_maps(&w, &a).map_err(err)?).map_err(err)?;
            Ok(Outcome::Verdict {
                holds: v.holds,
                witness: v.witness,
                stats: Map::new(),
            })
        }
    }
}

fn run_fbc(cmd: FbcCmd) -> Run {
    let FbcCmd::Trivial { phi, word } = cmd;
    let text = read(&phi)?;
    let tokens = text
        .lines()
        .map(|l| l.split('#').next().unwrap())
        .flat_map(|l| l.split_whitespace())
        .chain(word.split_whitespace())
        .filter(|t| *t != "->" && *t != "t" && *t != "t'");
    let a = Alphabet::group(groups::infer_generators(tokens)).map_err(err)?;
    let phi: Endomorphism = groups::parse_map(&text, &a).map_err(err)?;
    let w = groups::parse_mixed_word(&word, &a).map_err(err)?;
    Ok(verdict(groups::fbc_is_trivial(&phi, &w).map_err(err)?))
}

fn table(path: Option<&Path>, genus: usize) -> std::result::Result<Option<TwistTable>, String> {
    path.map(|p| TwistTable::parse(&read(p)?, genus).map_err(|e| format!("{}: {e}", p.display())))
        .transpose()
}

fn run_mcg(cmd: McgCmd) -> Run {
    match cmd {
        McgCmd::Handlebody {
            genus,
            actions,
            twists,
        } => {
            let t = table(actions.as_deref(), genus)?;
            Ok(verdict(groups::handlebody_membership(t.as_ref(), &twists).map_err(err)?))
        }
        McgCmd::Heegaard {
            genus,
            actions,
            dual,
            twists,
        } => {
            let t = table(actions.as_deref(), genus)?;
            let d = table(dual.as_deref(), genus)?;
            Ok(verdict(
                groups::heegaard_membership(t.as_ref(), d.as_ref(), &twists).map_err(err)?,
            ))
        }
        McgCmd::PuncturedDisk { word, rank } => {
            let (w, m) = nielsen(&word, rank)?;
            let a = Alphabet::numbered_group(m);
            let maps = groups::nielsen_maps(&w, &a).map_err(err)?;
            Ok(verdict(groups::punctured_disk_membership(&a, &maps).map_err(err)?))
        }
    }
}

fn run(cli: Cli) -> Run {
    let g = cli.global;
    match cli.command {
        Command::Slp(c) => run_slp(c, g),
        Command::Fg(c) => run_fg(c, g),
        Command::Aut(c) => run_aut(c),
        Command::Braid(BraidCmd::Trivial { word, strands }) => {
            let w = groups::parse_braid(&word, strands).map_err(err)?;
            Ok(verdict(groups::braid_is_trivial(&w, strands).map_err(err)?))
        }
        Command::Fbc(c) => run_fbc(c),
        Command::Mcg(c) => run_mcg(c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json_mode = cli.global.json;
    match run(cli) {
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Ok(outcome) => {
            let (code, verdict, witness, stats, plain) = match outcome {
                Outcome::Verdict {
                    holds,
                    witness,
                    stats,
                } => {
                    let text = witness.as_ref().map(print);
                    let plain = match &text {
                        Some(t) => format!("{holds}\n{}", t.trim_end()),
                        None => holds.to_string(),
                    };
                    (u8::from(!holds), json!(holds), json!(text), stats, plain)
                }
                Outcome::Program(p, stats) => {
                    let text = print(&p);
                    (0, Value::Null, json!(text), stats, text.trim_end().to_string())
                }
                Outcome::Text(t, mut stats) => {
                    stats.insert("value".into(), json!(t));
                    (0, Value::Null, Value::Null, stats, t)
                }
            };
            if json_mode {
                let out = json!({"verdict": verdict, "witness": witness, "stats": stats});
                println!("{out}");
            } else {
                println!("{plain}");
            }
            ExitCode::from(code)
        }
    }
}
