//! `fcd`: command-line front end for framed chord diagrams.
//!
//! Exit codes: 0 success, 1 bad diagram or other domain error, 2 usage
//! error, 3 a four-term combination failed to vanish.

use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use framed_chord::fourterm::{run_trials, RelationReport};
use framed_chord::{
    euler_genus, partial_dual_by_labels, partial_dual_polynomial_with, surface_stats, Diagram, EndPos,
    Enumeration, IntPolynomial, Relation,
};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "fcd", version, about = "Framed chord diagrams, partial duals and the partial-dual polynomial")]
struct Cli {
    /// Output format for every verb.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RelationArg {
    All,
    T1,
    T2,
    T3,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Euler genus of the diagram's ribbon graph.
    Genus { diagram: String },
    /// Components, vertices, edges, boundary components, Euler genus, orientability.
    Stats { diagram: String },
    /// Partial-dual polynomial.
    Poly {
        diagram: String,
        /// Refuse diagrams with more chords than this.
        #[arg(long, default_value_t = framed_chord::poly::DEFAULT_CAP)]
        cap: usize,
    },
    /// Partial dual with respect to a set of chords.
    Pdual {
        /// Comma-separated chord labels; may be empty.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        set: Vec<String>,
        diagram: String,
    },
    /// Canonical form.
    Canon { diagram: String },
    /// Mirror image (every circle flipped).
    Mirror { diagram: String },
    /// Slide a chord end along an adjacent chord.
    Slide {
        /// Position of the sliding end as `circle:index`, both 0-based.
        #[arg(long)]
        end: String,
        /// Label of the chord to slide along.
        #[arg(long)]
        over: String,
        diagram: String,
    },
    /// Check the framed four-term relations on random ambients.
    Check4t {
        #[arg(long, value_enum, default_value_t = RelationArg::All)]
        relation: RelationArg,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(0..=8))]
        max_spectators: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Domain(String),
    Usage(String),
    Verification,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification) => ExitCode::from(3),
    }
}

fn read_diagram(arg: &str) -> Result<Diagram, Failure> {
    let text = if arg == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Domain(format!("reading stdin: {e}")))?;
        buf
    } else {
        arg.to_string()
    };
    text.trim().parse().map_err(|e| Failure::Domain(format!("{e}")))
}

fn diagram_out(d: &Diagram, format: Format) -> String {
    match format {
        Format::Text => d.to_string(),
        Format::Json => json!({ "diagram": d.to_string() }).to_string(),
    }
}

fn parse_end(s: &str) -> Result<EndPos, Failure> {
    let bad = || Failure::Usage(format!("--end expects circle:index, got '{s}'"));
    let (c, i) = s.split_once(':').ok_or_else(bad)?;
    Ok(EndPos::new(c.trim().parse().map_err(|_| bad())?, i.trim().parse().map_err(|_| bad())?))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let format = cli.format;
    let domain = |e: framed_chord::DiagramError| Failure::Domain(e.to_string());
    match &cli.command {
        Command::Genus { diagram } => {
            let g = euler_genus(&read_diagram(diagram)?);
            Ok(match format {
                Format::Text => g.to_string(),
                Format::Json => json!({ "euler_genus": g }).to_string(),
            })
        }
        Command::Stats { diagram } => {
            let s = surface_stats(&read_diagram(diagram)?);
            Ok(match format {
                Format::Text => format!(
                    "components={} vertices={} edges={} boundary={} euler_genus={} orientable={} genus={}",
                    s.components, s.vertices, s.edges, s.boundary, s.euler_genus, s.orientable, s.genus
                ),
                Format::Json => s.to_json(),
            })
        }
        Command::Poly { diagram, cap } => {
            let d = read_diagram(diagram)?;
            let p: IntPolynomial = partial_dual_polynomial_with(&d, *cap, Enumeration::GrayCode)
                .map_err(|e| Failure::Domain(e.to_string()))?;
            Ok(match format {
                Format::Text => p.to_string(),
                Format::Json => p.to_json(),
            })
        }
        Command::Pdual { set, diagram } => {
            let d = read_diagram(diagram)?;
            let set: Vec<&str> = set.iter().map(|s| s.trim()).filter(|s| !s.is_empty()).collect();
            let r = partial_dual_by_labels(&d, &set).map_err(domain)?;
            Ok(diagram_out(&r.diagram, format))
        }
        Command::Canon { diagram } => Ok(diagram_out(&read_diagram(diagram)?.canonicalize(), format)),
        Command::Mirror { diagram } => Ok(diagram_out(&read_diagram(diagram)?.mirror(), format)),
        Command::Slide { end, over, diagram } => {
            let d = read_diagram(diagram)?;
            let pos = parse_end(end)?;
            let chord = d
                .chord_id(over)
                .ok_or_else(|| Failure::Domain(format!("unknown chord '{over}'")))?;
            let s = d.slide(pos, chord).map_err(domain)?;
            Ok(diagram_out(&s, format))
        }
        Command::Check4t {
            relation,
            trials,
            max_spectators,
            seed,
        } => {
            let relations: Vec<Relation> = match relation {
                RelationArg::All => Relation::ALL.to_vec(),
                RelationArg::T1 => vec![Relation::T1],
                RelationArg::T2 => vec![Relation::T2],
                RelationArg::T3 => vec![Relation::T3],
            };
            let reports: Vec<RelationReport> = relations
                .iter()
                .map(|&r| run_trials(r, *trials, *max_spectators as usize, *seed))
                .collect();
            let ok = reports.iter().all(RelationReport::passed);
            let out = match format {
                Format::Text => {
                    let mut lines: Vec<String> = reports
                        .iter()
                        .map(|r| {
                            format!(
                                "{}: {}/{} vanished{}",
                                r.relation,
                                r.vanished,
                                r.trials,
                                if r.passed() { "" } else { "  FAILED" }
                            )
                        })
                        .collect();
                    for r in &reports {
                        for c in &r.counterexamples {
                            lines.push(format!(
                                "  {} trial {}: ambient {} residual {}",
                                r.relation, c.trial, c.ambient, c.residual
                            ));
                            for (coeff, d) in &c.diagrams {
                                lines.push(format!("    {coeff:+} {d}"));
                            }
                        }
                    }
                    lines.push(format!(
                        "seed={} max_spectators={} result={}",
                        seed,
                        max_spectators,
                        if ok { "ok" } else { "fail" }
                    ));
                    lines.join("\n")
                }
                Format::Json => json!({
                    "seed": seed,
                    "trials": trials,
                    "max_spectators": max_spectators,
                    "ok": ok,
                    "relations": reports,
                })
                .to_string(),
            };
            if ok {
                Ok(out)
            } else {
                println!("{out}");
                eprintln!("error: four-term combination did not vanish");
                Err(Failure::Verification)
            }
        }
    }
}
