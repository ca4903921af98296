use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use flavorkit_cli::corpus::{corpus_files, corpus_runs, DEFAULT_SEED};
use flavorkit_cli::{exit_code, run, Command, Direction, Format, Options};
use flavorkit_core::chain::Window;
use flavorkit_core::circle::Flavor;

#[derive(Parser)]
#[command(name = "flavorkit", version, about = "Exact computations with circle-action flavor functors")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Clone)]
struct Common {
    /// Input file
    file: Option<PathBuf>,
    /// Degree window, `lo..hi`
    #[arg(long, allow_hyphen_values = true)]
    window: Option<Window>,
    #[arg(long)]
    flavor: Option<Flavor>,
    /// Truncation depth
    #[arg(long)]
    n: Option<i64>,
    #[arg(long, default_value = "text")]
    format: Format,
    /// Seed for a generated input
    #[arg(long)]
    seed: Option<u64>,
    /// Koszul direction, `a` or `b`
    #[arg(long)]
    direction: Option<Direction>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the laws of every block in a file
    Verify(Common),
    /// Homology of a complex
    Homology(Common),
    /// Homology of S_U(C)
    Su(Common),
    /// Homology of E^∘(C) on a window
    Ey(Common),
    /// The four flavors of S_U(C) with both exact sequences
    Flavors(Common),
    /// Koszul comparison, direction `a` (S_U then a flavor) or `b` (E⁻ then S_U)
    Koszul(Common),
    /// Cone sequence and flavor ladder of a balanced block
    Ladder(Common),
    /// Vanishing on the reducible tower
    Tower(Common),
    /// Flavors of a filtered complex
    Cmflavors(Common),
    /// Product with the truncated model of the second factor
    #[command(name = "consum-case1")]
    ConsumCase1(Common),
    /// Product with the polynomial model, identified with a flavor complex
    #[command(name = "consum-case2")]
    ConsumCase2(Common),
    /// Check the connected-sum maps of a file
    #[command(name = "consum-verify")]
    ConsumVerify(Common),
    /// Regenerate the golden corpus and its frozen reports
    Corpus {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn write_corpus(out: &Path, seed: u64) -> std::io::Result<()> {
    std::fs::create_dir_all(out.join("expected"))?;
    let files = corpus_files(seed).map_err(|e| std::io::Error::other(e.to_string()))?;
    for (name, text) in &files {
        std::fs::write(out.join(name), text)?;
    }
    for r in corpus_runs() {
        let input = r.file.map(|f| std::fs::read_to_string(out.join(f))).transpose()?;
        let res = run(r.command, input.as_deref(), &r.options);
        let text = match &res {
            Ok(rep) => rep.render(Format::Machine),
            Err(e) => format!("error={e}\n"),
        };
        std::fs::write(out.join("expected").join(r.report_name()), text)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, c) = match cli.cmd {
        Cmd::Corpus { out, seed } => {
            return match write_corpus(&out, seed) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            };
        }
        Cmd::Verify(c) => (Command::Verify, c),
        Cmd::Homology(c) => (Command::Homology, c),
        Cmd::Su(c) => (Command::Su, c),
        Cmd::Ey(c) => (Command::Ey, c),
        Cmd::Flavors(c) => (Command::Flavors, c),
        Cmd::Koszul(c) => (Command::Koszul, c),
        Cmd::Ladder(c) => (Command::Ladder, c),
        Cmd::Tower(c) => (Command::Tower, c),
        Cmd::Cmflavors(c) => (Command::CmFlavors, c),
        Cmd::ConsumCase1(c) => (Command::ConsumCase1, c),
        Cmd::ConsumCase2(c) => (Command::ConsumCase2, c),
        Cmd::ConsumVerify(c) => (Command::ConsumVerify, c),
    };
    let input = match &c.file {
        Some(p) => match std::fs::read_to_string(p) {
            Ok(t) => Some(t),
            Err(e) => {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(2);
            }
        },
        None => None,
    };
    let opts = Options { window: c.window, flavor: c.flavor, n: c.n, direction: c.direction, seed: c.seed };
    let res = run(cmd, input.as_deref(), &opts);
    match &res {
        Ok(rep) => print!("{}", rep.render(c.format)),
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(exit_code(&res) as u8)
}
