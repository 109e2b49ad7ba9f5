use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use minterval_search::{parse_query, root_profile, search, PositionalIndex};

#[derive(Parser)]
#[command(
    name = "minterval",
    version,
    about = "Proximity search with minimal-interval semantics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Index plain-text files, one document per file.
    Index {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run a query against an index file.
    Query {
        index: PathBuf,
        query: String,
        #[arg(long, default_value_t = 10)]
        top: usize,
        #[arg(long, default_value_t = 0)]
        snippets: usize,
        /// Print the per-output read counts of the root operator.
        #[arg(long)]
        show_rho: bool,
    },
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Index { paths, output } => {
            let index = match PositionalIndex::from_files(&paths) {
                Ok(index) => index,
                Err(e) => return fail(2, e),
            };
            if let Err(e) = index.save(&output) {
                return fail(2, e);
            }
            ExitCode::SUCCESS
        }
        Command::Query {
            index,
            query,
            top,
            snippets,
            show_rho,
        } => {
            let query = match parse_query(&query) {
                Ok(q) => q,
                Err(e) => return fail(1, e),
            };
            let index = match PositionalIndex::load(&index) {
                Ok(index) => index,
                Err(e) => return fail(2, e),
            };
            let mut out = io::stdout().lock();
            let written: io::Result<()> = search(&index, &query, top, snippets).iter().try_for_each(|r| {
                let path = &index.doc(r.doc).expect("result document exists").path;
                writeln!(out, "{}\t{:.4}\t{}\t{}", r.doc, r.score, path, join(&r.witnesses))?;
                for s in &r.snippets {
                    writeln!(out, "\tsnippet\t{}\t{}", s.interval, s.words.join(" "))?;
                }
                if show_rho {
                    let profile = root_profile(&query, &index, r.doc);
                    for (iv, rho) in profile.outputs.iter().zip(&profile.rho) {
                        writeln!(out, "\trho\t{iv}\t{}", join(rho))?;
                    }
                    writeln!(out, "\trho\tend\t{}", join(&profile.final_reads))?;
                }
                Ok(())
            });
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(2, e),
            }
        }
    }
}

fn fail(code: u8, err: impl std::fmt::Display) -> ExitCode {
    eprintln!("minterval: {err}");
    ExitCode::from(code)
}
