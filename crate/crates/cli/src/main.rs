//! `octonion`: verification suites and experiments over octonion algebras,
//! reported as JSON (or CSV for counting tables).

mod commands;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use octonion_core::{OctonionAlgebra, Report, RingContext};

#[derive(Parser, Debug)]
#[command(name = "octonion", version, about = "Exact experiments with octonion algebras over commutative rings")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Add wall-clock time to the report (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Selects the algebra: `--algebra` wins, else `zorn(<ring>)`, else `zorn(Q)`.
#[derive(Args, Debug, Clone)]
struct AlgebraArgs {
    /// Ring spec such as Z, Q, Z/8, F9=x^2+1, Q[t] or Q[t,1/t]; selects zorn(<ring>).
    #[arg(long)]
    ring: Option<String>,

    /// Algebra spec: zorn(<ring>) or cd(<ring>,a,b,c).
    #[arg(long)]
    algebra: Option<String>,
}

impl AlgebraArgs {
    fn resolve(&self) -> octonion_core::Result<OctonionAlgebra> {
        match (&self.algebra, &self.ring) {
            (Some(spec), _) => OctonionAlgebra::parse(spec),
            (None, Some(ring)) => Ok(OctonionAlgebra::zorn(&RingContext::parse(ring)?)),
            (None, None) => Ok(OctonionAlgebra::zorn(&RingContext::rationals())),
        }
    }
}

#[derive(Args, Debug, Clone)]
struct SeedArgs {
    /// Random samples per check.
    #[arg(long, default_value_t = 500)]
    samples: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum IsotopeCheck {
    All,
    Unit,
    Norm,
    Formulae,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alternative, Moufang and composition laws on seeded random samples.
    VerifyIdentities {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        seed: SeedArgs,
    },
    /// The isotope C^{a,b}: unit, norm and the isomorphisms to its neighbours.
    Isotope {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Comma-separated coordinates of a.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Comma-separated coordinates of b.
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_enum, default_value_t = IsotopeCheck::All)]
        check: IsotopeCheck,
    },
    /// Related triples stored as {"t1": [[..]], "t2": [[..]], "t3": [[..]]}.
    #[command(group(clap::ArgGroup::new("mode").required(true).args(["check", "pi", "from_iso"])))]
    Triple {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Decide relatedness of the triple in this file.
        #[arg(long, value_name = "FILE")]
        check: Option<PathBuf>,
        /// Print (t3(1), t2(1)) for the triple in this file.
        #[arg(long, value_name = "FILE")]
        pi: Option<PathBuf>,
        /// Build the triple of the isomorphism C -> C^{a,b} in this file.
        #[arg(long, value_name = "FILE", requires_all = ["a", "b"])]
        from_iso: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
    },
    /// Spin group elements in the 16x16 Clifford model.
    #[command(group(clap::ArgGroup::new("mode").required(true).args(["from_vectors", "check", "roundtrip"])))]
    Spin {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// α(x) α(y) for two vectors with q(x) q(y) = 1.
        #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_hyphen_values = true)]
        from_vectors: Option<Vec<String>>,
        /// Decide spin membership of the 16x16 matrix in this file.
        #[arg(long, value_name = "FILE")]
        check: Option<PathBuf>,
        /// Round trips between spin elements and related triples.
        #[arg(long)]
        roundtrip: bool,
        #[command(flatten)]
        seed: SeedArgs,
    },
    /// An explicit isomorphism C -> C^{a,ā}.
    Trivialize {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Points of the unit sphere of the split octonions over F_q.
    CountSphere {
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
    },
    /// The orbit of (1, 1) under basic triples and their rotations.
    Orbit {
        #[arg(long)]
        q: u64,
        /// A pair "a;b" of sphere points to reach.
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
        /// Include the isomorphism C -> C^{a,b} for the target.
        #[arg(long, requires = "target")]
        emit_witness: bool,
        /// Refuse orbits with more pairs than this.
        #[arg(long, default_value_t = octonion_core::orbits::DEFAULT_PAIR_CEILING)]
        max_pairs: u64,
    },
    /// Every acceptance criterion in order.
    PaperSuite {
        /// Replace the default rings (repeatable or comma-separated).
        #[arg(long, value_delimiter = ',')]
        ring: Vec<String>,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        criterion: Vec<usize>,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also close the orbit at q = 3 (about 4.7 million pairs).
        #[arg(long)]
        orbit_q3: bool,
    },
}

/// A report plus an optional table for `--format csv`.
pub struct Output {
    pub report: Report,
    pub table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
}

impl From<Report> for Output {
    fn from(report: Report) -> Self {
        Output { report, table: None }
    }
}

fn render(out: &Output, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out.report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let (header, rows) = match &out.table {
                Some((h, rows)) => (h.clone(), rows.clone()),
                None => (
                    vec!["name", "status", "detail"],
                    out.report
                        .checks
                        .iter()
                        .map(|c| {
                            let status = serde_json::to_value(c.status).expect("status serializes");
                            vec![c.name.clone(), status.as_str().unwrap_or_default().to_string(), c.detail.clone()]
                        })
                        .collect(),
                ),
            };
            let mut s = header.join(",");
            s.push('\n');
            for row in rows {
                let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
                s.push_str(&cells.join(","));
                s.push('\n');
            }
            s
        }
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut out = match commands::run(&cli.command) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.timing {
        out.report.timing_ms = Some(start.elapsed().as_millis());
    }
    let text = render(&out, cli.format);
    let written = match &cli.out {
        Some(path) => fs::write(path, text),
        None => io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if out.report.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use octonion_core::Check;

    #[test]
    fn csv_quotes_only_when_needed() {
        assert_eq!(csv_cell("plain"), "plain");
        assert_eq!(csv_cell("a,b"), "\"a,b\"");
        assert_eq!(csv_cell("say \"x\""), "\"say \"\"x\"\"\"");
    }

    #[test]
    fn csv_falls_back_to_checks() {
        let mut report = Report::new("cmd", "Q", "zorn(Q)");
        report.push(Check::pass("left, right", "ok"));
        let text = render(&Output::from(report), Format::Csv);
        assert_eq!(text, "name,status,detail\n\"left, right\",pass,ok\n");
    }
}
