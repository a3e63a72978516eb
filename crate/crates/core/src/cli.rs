//! The `dsr` command line. Results go to `out`, diagnostics to `err`.
//!
//! Exit codes: 0 yes / valid, 1 no / invalid, 2 input error, 3 resource limit.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::carc::{solve_carc, CarcCase, SolveOptions};
use crate::error::{Error, Result};
use crate::generate::{random_carc_once, random_connected_carc, random_connected_interval, rng};
use crate::geom::{ring_model, ChordModel, CircularArcModel, IntervalModel};
use crate::graph::{parse_graph, validate_sequence, FailureKind, Graph, TokenConfig};
use crate::io::content_lines;
use crate::oracle::{reconfig_bfs, OracleOptions, DEFAULT_CAP};
use crate::reduction::{
    build_reduction, df_assignment, satr_to_dsr, simulate_flips, verify_structure, Assignment,
    CnfFormula, ReductionParams,
};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "dsr",
    version,
    about = "Dominating-set reconfiguration under token sliding"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Carc,
    Interval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Preset {
    /// Arcs `[2i, 2i+3]` on a circle of length `2n` (the cycle `C_n`).
    Ring,
    /// A random model whose arc 0 covers the whole circle.
    Full,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide reachability on a circular-arc model.
    SolveCarc {
        /// Circular-arc model file (`carc M N` header).
        model: PathBuf,
        /// Source configuration (`tokens: ...`).
        ds: PathBuf,
        /// Target configuration.
        dt: PathBuf,
        /// Also produce a slide sequence for positive answers.
        #[arg(long)]
        witness: bool,
        /// Write the witness here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// State cap for the searches used while building witnesses.
        #[arg(long, default_value_t = 200_000)]
        cap: u128,
    },
    /// Compile a SAT reconfiguration instance into a circle-graph instance.
    BuildReduction {
        /// DIMACS CNF file.
        cnf: PathBuf,
        /// Source assignment, a bitstring such as `10`.
        #[arg(name = "as")]
        a_s: PathBuf,
        /// Target assignment.
        #[arg(name = "at")]
        a_t: PathBuf,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        /// Pending intervals per dead-end (default 6mn).
        #[arg(long)]
        pending_count: Option<usize>,
    },
    /// Replay a list of variable flips (1-based) as slides on a built reduction.
    SimulateFlips {
        /// Directory written by build-reduction.
        dir: PathBuf,
        /// Whitespace-separated 1-based variable indices.
        flips: PathBuf,
        /// Where to write the sequence (default DIR/sequence.txt).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force search on a graph, arc, interval or chord model file.
    Oracle {
        /// Graph, carc, intervals or chords file.
        model: PathBuf,
        /// Source configuration.
        ds: PathBuf,
        /// Target configuration.
        dt: PathBuf,
        /// Largest admissible state-space bound C(n+k-1, k).
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
        /// Write the sequence here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a seeded random model.
    GenRandom {
        #[arg(long, value_enum, default_value = "carc")]
        kind: Kind,
        #[arg(long)]
        n: usize,
        /// Maximum length as a fraction of the circle or span.
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum)]
        preset: Option<Preset>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_YES };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::ResourceLimit { .. } => EXIT_RESOURCE,
                _ => EXIT_INPUT,
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Reads and parses a file, prefixing parse errors with the file name.
fn load<T: std::str::FromStr<Err = Error>>(path: &Path) -> Result<T> {
    read(path)?.parse().map_err(|e| in_file(path, e))
}

fn in_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, message } => {
            Error::InvalidInput(format!("{}: line {line}: {message}", path.display()))
        }
        other => other,
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_file(p, text),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::SolveCarc {
            model,
            ds,
            dt,
            witness,
            out: path,
            cap,
        } => {
            let m: CircularArcModel = load(&model)?;
            let (ds, dt): (TokenConfig, TokenConfig) = (load(&ds)?, load(&dt)?);
            let opts = SolveOptions {
                witness,
                witness_cap: cap,
            };
            let v = solve_carc(&m, &ds, &dt, opts)?;
            let case = match &v.case {
                CarcCase::SizeMismatch => "size-mismatch".to_string(),
                CarcCase::FullCircle { arc } => format!("full-circle arc {arc}"),
                CarcCase::Interval => "interval".to_string(),
                CarcCase::Sliding { u1, v, v_left, .. } => {
                    format!("sliding u1 {u1} right-target {v} left-target {v_left}")
                }
            };
            writeln!(out, "{}", if v.reachable { "YES" } else { "NO" })?;
            writeln!(err, "case: {case}")?;
            if let Some(w) = &v.witness {
                emit(out, path.as_deref(), &w.to_string())?;
            } else if let Some(note) = &v.witness_note {
                writeln!(err, "no witness: {note}")?;
            }
            Ok(if v.reachable { EXIT_YES } else { EXIT_NO })
        }
        Command::BuildReduction {
            cnf,
            a_s,
            a_t,
            out: dir,
            pending_count,
        } => {
            let f: CnfFormula = load(&cnf)?;
            let (a_s, a_t): (Assignment, Assignment) = (load(&a_s)?, load(&a_t)?);
            let inst = satr_to_dsr(&f, &a_s, &a_t, pending_count)?;
            let l = &inst.layout;
            let report = verify_structure(l);
            if !report.is_ok() {
                write!(err, "{report}")?;
                return Err(Error::InvalidInstance("structural checks failed".into()));
            }
            if pending_count.is_some_and(|p| p <= l.params().k) {
                writeln!(
                    err,
                    "warning: pending count {} is at most K = {}; dead-ends no longer force their tokens",
                    l.params().pending_count,
                    l.params().k
                )?;
            } else if pending_count.is_some_and(|p| p != 6 * l.params().m * l.params().n) {
                writeln!(err, "warning: pending count differs from the default 6mn")?;
            }
            fs::create_dir_all(&dir)?;
            let files = [
                ("formula.cnf", l.formula().to_string()),
                ("as.txt", format!("{a_s}\n")),
                ("at.txt", format!("{a_t}\n")),
                ("ds.txt", format!("{}\n", inst.ds)),
                ("dt.txt", format!("{}\n", inst.dt)),
                ("chords.txt", l.chords().to_string()),
                ("registry.txt", l.registry()),
                ("params.txt", l.params().to_string()),
            ];
            for (name, text) in files {
                write_file(&dir.join(name), &text)?;
            }
            writeln!(
                out,
                "vertices {} K {} m {} n {}",
                l.vertex_count(),
                l.params().k,
                l.params().m,
                l.params().n
            )?;
            Ok(EXIT_YES)
        }
        Command::SimulateFlips {
            dir,
            flips,
            out: path,
        } => {
            let f: CnfFormula = load(&dir.join("formula.cnf"))?;
            let params: ReductionParams = load(&dir.join("params.txt"))?;
            let a_s: Assignment = load(&dir.join("as.txt"))?;
            let a_t: Assignment = load(&dir.join("at.txt"))?;
            let l = build_reduction(&f, Some(params.pending_count))?;
            if l.chords().to_string() != read(&dir.join("chords.txt"))? || *l.params() != params {
                return Err(Error::InvalidInstance(format!(
                    "{} does not match a rebuild of its formula",
                    dir.display()
                )));
            }
            let flips =
                parse_flips(&read(&flips)?, f.num_vars()).map_err(|e| in_file(&flips, e))?;
            let mut a = a_s.clone();
            for (i, &var) in flips.iter().enumerate() {
                let next = a.flipped(var);
                if let Some(clause) = f.first_falsified(&next) {
                    writeln!(
                        err,
                        "flip {} (x{}): breaks clause c{}",
                        i + 1,
                        var + 1,
                        clause + 1
                    )?;
                    return Err(Error::IllegalFlip {
                        variable: var,
                        clause,
                    });
                }
                a = next;
            }
            let seq = simulate_flips(&l, &a_s, &flips)?;
            let report = validate_sequence(l.graph(), &seq, true);
            let target = df_assignment(&l, &a_t)?;
            let path = path.unwrap_or_else(|| dir.join("sequence.txt"));
            write_file(&path, &seq.to_string())?;
            match &report.failure {
                Some(fail) => {
                    let what = match &fail.kind {
                        FailureKind::Move(e) => e.to_string(),
                        FailureKind::NotDominating { undominated } => {
                            format!("{} vertices undominated", undominated.len())
                        }
                    };
                    writeln!(out, "INVALID at step {}: {what}", fail.index)?;
                    Ok(EXIT_NO)
                }
                None if report.end != target => {
                    writeln!(
                        out,
                        "INVALID: sequence ends at {a}, not at the target {a_t}"
                    )?;
                    Ok(EXIT_NO)
                }
                None => {
                    writeln!(out, "VALID {} slides", seq.len())?;
                    Ok(EXIT_YES)
                }
            }
        }
        Command::Oracle {
            model,
            ds,
            dt,
            cap,
            out: path,
        } => {
            let g = load_any_graph(&model)?;
            let (ds, dt): (TokenConfig, TokenConfig) = (load(&ds)?, load(&dt)?);
            let opts = OracleOptions {
                cap,
                ..OracleOptions::default()
            };
            match reconfig_bfs(&g, &ds, &dt, true, opts)? {
                Some(seq) => {
                    writeln!(out, "YES {}", seq.len())?;
                    emit(out, path.as_deref(), &seq.to_string())?;
                    Ok(EXIT_YES)
                }
                None => {
                    writeln!(out, "NO")?;
                    Ok(EXIT_NO)
                }
            }
        }
        Command::GenRandom {
            kind,
            n,
            density,
            seed,
            preset,
            out: path,
        } => {
            let text = match (kind, preset) {
                (Kind::Carc, Some(Preset::Ring)) => ring_model(n).to_string(),
                (Kind::Carc, Some(Preset::Full)) => {
                    random_carc_once(&mut rng(seed), n, 1.0).to_string()
                }
                (Kind::Carc, None) => {
                    random_connected_carc(&mut rng(seed), n, density)?.to_string()
                }
                (Kind::Interval, None) => {
                    random_connected_interval(&mut rng(seed), n, density)?.to_string()
                }
                (Kind::Interval, Some(_)) => {
                    return Err(Error::InvalidInput(
                        "presets apply to arc models only".into(),
                    ))
                }
            };
            emit(out, path.as_deref(), &text)?;
            Ok(EXIT_YES)
        }
    }
}

/// 1-based variable indices separated by whitespace; `#` starts a comment line.
fn parse_flips(text: &str, n: usize) -> Result<Vec<usize>> {
    let mut flips = Vec::new();
    for (lineno, line) in content_lines(text) {
        for tok in line.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad variable `{tok}`")))?;
            if v == 0 || v > n {
                return Err(Error::parse(
                    lineno,
                    format!("variable {v} outside 1..={n}"),
                ));
            }
            flips.push(v - 1);
        }
    }
    Ok(flips)
}

/// Dispatches on the header keyword of a graph or model file.
fn load_any_graph(path: &Path) -> Result<Graph> {
    let text = read(path)?;
    let keyword = content_lines(&text)
        .next()
        .and_then(|(_, l)| l.split_whitespace().next())
        .unwrap_or_default()
        .to_string();
    let g = match keyword.as_str() {
        "graph" => parse_graph(&text),
        "carc" => text
            .parse::<CircularArcModel>()
            .map(|m| m.intersection_graph()),
        "intervals" => text
            .parse::<IntervalModel>()
            .map(|m| m.intersection_graph()),
        "chords" => text.parse::<ChordModel>().map(|m| m.overlap_graph()),
        other => Err(Error::parse(
            1,
            format!("unknown file kind `{other}` (expected graph, carc, intervals or chords)"),
        )),
    };
    g.map_err(|e| in_file(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flips_parse() {
        assert_eq!(parse_flips("# path\n2 1\n\n2\n", 2).unwrap(), vec![1, 0, 1]);
        assert!(parse_flips("3", 2).is_err());
        assert!(parse_flips("0", 2).is_err());
        assert!(parse_flips("", 2).unwrap().is_empty());
    }

    #[test]
    fn help_is_not_an_error() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["dsr", "--help"], &mut out, &mut err), EXIT_YES);
        assert!(String::from_utf8(out).unwrap().contains("solve-carc"));
        assert_eq!(run(["dsr", "bogus"], &mut Vec::new(), &mut err), EXIT_INPUT);
    }
}
