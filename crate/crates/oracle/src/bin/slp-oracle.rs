//! Naive counterparts of the `slp` verbs, for shell-level differential
//! testing. Exit codes follow `slp`: 0 yes, 1 no, 2 usage, 3 runtime error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use slpg::groups::{parse_braid, parse_map, parse_mixed_word, parse_nielsen, nielsen_rank, BraidLetter, MixedLetter};
use slpg::query::decompress;
use slpg::text::parse;
use slpg::{Alphabet, Letter, Program};
use slpg_oracle::gen::nielsen_images;
use slpg_oracle::naive::{self, Mixed, CAP};

#[derive(Parser)]
#[command(name = "slp-oracle", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    #[command(subcommand)]
    Slp(SlpCmd),
    #[command(subcommand)]
    Fg(FgCmd),
    #[command(subcommand)]
    Aut(AutCmd),
    #[command(subcommand)]
    Braid(BraidCmd),
    #[command(subcommand)]
    Fbc(FbcCmd),
}

#[derive(Subcommand)]
enum SlpCmd {
    Decompress { file: PathBuf },
    Equal { a: PathBuf, b: PathBuf },
    Lcp { a: PathBuf, b: PathBuf },
}

#[derive(Subcommand)]
enum FgCmd {
    Reduce { file: PathBuf },
    Trivial { file: PathBuf },
    Conjugate { a: PathBuf, b: PathBuf },
}

#[derive(Subcommand)]
enum AutCmd {
    Trivial {
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
        /// Images of the inverse automorphism.
        #[arg(long)]
        phi_inv: PathBuf,
        word: String,
    },
}

enum Answer {
    Verdict(bool),
    Text(String),
}

type Run = Result<Answer, String>;

fn word_of(path: &Path) -> Result<(Alphabet, Vec<Letter>), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let p: Program = parse(&text).map_err(|e| e.to_string())?;
    let w = decompress(&p, CAP as u64).map_err(|e| e.to_string())?;
    Ok((p.alphabet().clone(), w))
}

fn braid_images(b: BraidLetter, strands: usize) -> Vec<Vec<Letter>> {
    let g = |i: usize| Letter(2 * i as u32);
    let inv = |l: Letter| Letter(l.0 ^ 1);
    let mut images: Vec<Vec<Letter>> = (0..strands).map(|i| vec![g(i)]).collect();
    let (x, y) = (g(b.index), g(b.index + 1));
    if b.positive {
        images[b.index] = vec![x, y, inv(x)];
        images[b.index + 1] = vec![x];
    } else {
        images[b.index] = vec![y];
        images[b.index + 1] = vec![inv(y), x, y];
    }
    images
}

fn run(cli: Cli) -> Run {
    let e = |e: naive::CapExceeded| e.to_string();
    match cli.command {
        Command::Slp(SlpCmd::Decompress { file }) => {
            let (a, w) = word_of(&file)?;
            Ok(Answer::Text(a.format_word(&w)))
        }
        Command::Slp(SlpCmd::Equal { a, b }) => {
            let (_, u) = word_of(&a)?;
            let (_, v) = word_of(&b)?;
            Ok(Answer::Verdict(naive::naive_equal(&u, &v).map_err(e)?))
        }
        Command::Slp(SlpCmd::Lcp { a, b }) => {
            let (_, u) = word_of(&a)?;
            let (_, v) = word_of(&b)?;
            Ok(Answer::Text(naive::naive_lcp(&u, &v).map_err(e)?.to_string()))
        }
        Command::Fg(FgCmd::Reduce { file }) => {
            let (a, w) = word_of(&file)?;
            Ok(Answer::Text(a.format_word(&naive::naive_free_reduce(&w).map_err(e)?)))
        }
        Command::Fg(FgCmd::Trivial { file }) => {
            let (_, w) = word_of(&file)?;
            Ok(Answer::Verdict(naive::naive_free_reduce(&w).map_err(e)?.is_empty()))
        }
        Command::Fg(FgCmd::Conjugate { a, b }) => {
            let (_, u) = word_of(&a)?;
            let (_, v) = word_of(&b)?;
            Ok(Answer::Verdict(naive::naive_conjugate(&u, &v).map_err(e)?))
        }
        Command::Aut(AutCmd::Trivial { word, rank }) => {
            let w = parse_nielsen(&word).map_err(|e| e.to_string())?;
            let m = rank.unwrap_or_else(|| nielsen_rank(&w));
            if w.iter().any(|t| t.max_index() >= m) {
                return Err(format!("token outside rank {m}"));
            }
            let maps: Vec<_> = w.iter().map(|&t| nielsen_images(t, m)).collect();
            Ok(Answer::Verdict(naive::is_identity(&naive::compose(&maps, m).map_err(e)?)))
        }
        Command::Braid(BraidCmd::Trivial { word, strands }) => {
            let w = parse_braid(&word, strands).map_err(|e| e.to_string())?;
            let maps: Vec<_> = w.iter().map(|&b| braid_images(b, strands)).collect();
            Ok(Answer::Verdict(naive::is_identity(&naive::compose(&maps, strands).map_err(e)?)))
        }
        Command::Fbc(FbcCmd::Trivial { phi, phi_inv, word }) => {
            let read = |p: &Path| std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()));
            let (t1, t2) = (read(&phi)?, read(&phi_inv)?);
            let tokens = [t1.as_str(), t2.as_str(), word.as_str()]
                .into_iter()
                .flat_map(|s| s.lines())
                .map(|l| l.split('#').next().unwrap())
                .flat_map(|l| l.split_whitespace())
                .filter(|t| *t != "->" && *t != "t" && *t != "t'")
                .collect::<Vec<_>>();
            let a = Alphabet::group(slpg::groups::infer_generators(tokens)).map_err(|e| e.to_string())?;
            let f = parse_map(&t1, &a).map_err(|e| e.to_string())?;
            let g = parse_map(&t2, &a).map_err(|e| e.to_string())?;
            let w: Vec<Mixed> = parse_mixed_word(&word, &a)
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(|m| match m {
                    MixedLetter::Gen(l) => Mixed::G(l),
                    MixedLetter::T => Mixed::T,
                    MixedLetter::TInv => Mixed::TInv,
                })
                .collect();
            Ok(Answer::Verdict(
                naive::britton_is_trivial(f.images(), g.images(), &w).map_err(e)?,
            ))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Answer::Verdict(v)) => {
            println!("{v}");
            ExitCode::from(u8::from(!v))
        }
        Ok(Answer::Text(t)) => {
            println!("{t}");
            ExitCode::SUCCESS
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
