//! Command-line front end over the exact library: distribution tables and
//! curves, the link census, worked linking numbers, and seeded sampling
//! runs, emitted as deterministic CSV or aligned text.

use std::path::PathBuf;
use std::process::ExitCode;

use booklink::{
    density_pmf, empirical_overall, empirical_pmf_for_pair, enumerate_monotonic_pairs,
    eulerian_number, eulerian_row, k6_census, linking_pmf, mean_squared_linking,
    mean_squared_overall, normalized_pmf, overall_pmf, pair_count, to_decimal_string,
    tv_distance, Cycle, Diagram, DiagramError, DistError, EmpiricalPmf, HeightAssignment,
    LinkingPmf, Rational, SampleError, SamplerConfig,
};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "booklink",
    version,
    about = "Linking-number statistics of monotonic cycle pairs in random book embeddings"
)]
struct Cli {
    /// Write the output to a file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Significant digits of decimal columns.
    #[arg(long, global = true, default_value_t = 10,
          value_parser = clap::value_parser!(u32).range(1..))]
    precision: u32,

    /// Layout of tabular output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Print row n of the Eulerian triangle (space-separated), or the
    /// single entry A(n, m).
    Eulerian { n: usize, m: Option<i64> },

    /// Odd-row Eulerian grid A(2i-1, i+l-1): the exact height-order counts
    /// behind each per-pair linking distribution.
    Table1 {
        /// Largest interior-chord count.
        #[arg(long, default_value_t = 5)]
        max_i: usize,
    },

    /// Counts of disjoint monotonic n-cycle pairs of the 2n-vertex complete
    /// graph by interior-chord count.
    Table3 {
        /// Largest component size.
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },

    /// Linking-number distribution for a fixed interior-chord count
    /// (--interior) or for a uniformly random spanning pair (--overall).
    #[command(group(ArgGroup::new("scope").required(true).args(["interior", "overall"])))]
    Pmf {
        /// Interior chords per component.
        #[arg(long, value_name = "I")]
        interior: Option<usize>,

        /// Component size n in the 2n-vertex complete graph.
        #[arg(long, value_name = "N")]
        overall: Option<usize>,

        /// Rescale the support to l/n.
        #[arg(long, requires = "overall", conflicts_with_all = ["density", "exact"])]
        normalized: bool,

        /// Rescale to (l/n, n*P(l)).
        #[arg(long, requires = "overall", conflicts_with = "exact")]
        density: bool,

        /// Emit exact rationals alongside decimals.
        #[arg(long)]
        exact: bool,
    },

    /// Mean squared linking number: per chord count (--interior), for a
    /// random spanning pair (--overall), or as a curve over n (--curve).
    #[command(group(ArgGroup::new("which").required(true).args(["interior", "overall", "curve"])))]
    Meansq {
        /// Interior chords per component.
        #[arg(long, value_name = "I")]
        interior: Option<usize>,

        /// Component size n in the 2n-vertex complete graph.
        #[arg(long, value_name = "N")]
        overall: Option<usize>,

        /// Emit the curve for 3 <= n <= MAX.
        #[arg(long, value_name = "MAX")]
        curve: Option<usize>,
    },

    /// Link-type census of disjoint triangle pairs in the 6-vertex complete
    /// graph: probabilities and expected counts per embedding.
    Census,

    /// Seeded sampling of linking numbers under uniformly random heights.
    #[command(group(ArgGroup::new("target").required(true).args(["overall", "pair"])))]
    Sample {
        /// Sample uniformly random spanning n-cycle pairs of the 2n-vertex
        /// complete graph.
        #[arg(long, value_name = "N")]
        overall: Option<usize>,

        /// Sample heights for one fixed pair, given as P/Q
        /// (e.g. 1,3,5/2,4,6).
        #[arg(long, value_name = "P/Q")]
        pair: Option<String>,

        /// Ambient vertex count for --pair (default: largest cycle label).
        #[arg(long, requires = "pair", value_name = "V")]
        vertices: Option<usize>,

        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,

        /// Generator seed (falls back to BOOKLINK_SEED, then 0).
        #[arg(long, env = "BOOKLINK_SEED", default_value_t = 0)]
        seed: u64,

        #[arg(long, default_value_t = 1)]
        workers: usize,

        /// Append the total variation distance to the exact distribution.
        #[arg(long)]
        compare: bool,
    },

    /// Linking number of one explicit two-component link.
    Link {
        /// Ambient vertex count.
        #[arg(long)]
        n: usize,

        /// First cycle, e.g. 1,3,5.
        #[arg(long)]
        p: String,

        /// Second cycle, e.g. 2,4,6.
        #[arg(long)]
        q: String,

        /// Chord heights as edge:rank pairs, e.g. 1,3:5;2,4:4;...
        #[arg(long)]
        heights: String,
    },

    /// Monotonic pair counts for component sizes (m, n) by interior-chord
    /// count, from the closed form or by exhaustive enumeration.
    Pairs {
        #[arg(long)]
        m: usize,

        #[arg(long)]
        n: usize,

        /// Enumerate all vertex splits instead of using the closed form.
        #[arg(long)]
        enumerate: bool,
    },
}

enum CliError {
    Usage(String),
    Domain(String),
    Io(std::io::Error),
}

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<DistError> for CliError {
    fn from(e: DistError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<SampleError> for CliError {
    fn from(e: SampleError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn domain(msg: impl Into<String>) -> CliError {
    CliError::Domain(msg.into())
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

/// Renders header + rows as CSV or as space-aligned columns.
fn render(header: &[&str], rows: &[Vec<String>], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::new();
            out.push_str(&header.join(","));
            out.push('\n');
            for row in rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        Format::Table => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for row in rows {
                for (k, cell) in row.iter().enumerate() {
                    if k >= widths.len() {
                        widths.push(cell.len());
                    } else {
                        widths[k] = widths[k].max(cell.len());
                    }
                }
            }
            let mut out = String::new();
            let mut line = |cells: &[String]| {
                let mut parts = Vec::new();
                for (k, cell) in cells.iter().enumerate() {
                    if k + 1 == cells.len() {
                        parts.push(cell.clone());
                    } else {
                        parts.push(format!("{cell:<width$}", width = widths[k]));
                    }
                }
                out.push_str(parts.join("  ").trim_end());
                out.push('\n');
            };
            line(&header.iter().map(|h| h.to_string()).collect::<Vec<_>>());
            for row in rows {
                line(row);
            }
            out
        }
    }
}

fn emit(out: &Option<PathBuf>, content: String) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let prec = cli.precision as usize;
    let content = match cli.command {
        Command::Eulerian { n, m } => match m {
            Some(m) => format!("{}\n", eulerian_number(n, m)),
            None => {
                let row = eulerian_row(n);
                let cells: Vec<String> = row.values().iter().map(|v| v.to_string()).collect();
                format!("{}\n", cells.join(" "))
            }
        },

        Command::Table1 { max_i } => {
            if max_i < 1 {
                return Err(domain("max-i must be at least 1"));
            }
            let mut rows = Vec::new();
            for i in 1..=max_i {
                let row = eulerian_row(2 * i - 1);
                let bound = i as i64 - 1;
                for l in -bound..=bound {
                    rows.push(vec![
                        i.to_string(),
                        l.to_string(),
                        row.get(l + i as i64 - 1).to_string(),
                    ]);
                }
            }
            render(&["i", "l", "value"], &rows, cli.format)
        }

        Command::Table3 { max_n } => {
            if max_n < 3 {
                return Err(domain("max-n must be at least 3"));
            }
            let mut rows = Vec::new();
            for n in 3..=max_n {
                for i in 1..=n {
                    rows.push(vec![
                        n.to_string(),
                        i.to_string(),
                        pair_count(n, n, i)?.to_string(),
                    ]);
                }
            }
            render(&["n", "i", "count"], &rows, cli.format)
        }

        Command::Pmf {
            interior,
            overall,
            normalized,
            density,
            exact,
        } => {
            if normalized || density {
                let flag = if normalized { "--normalized" } else { "--density" };
                let n = overall
                    .ok_or_else(|| usage(format!("'{flag}' requires '--overall <N>'")))?;
                let data = if normalized {
                    normalized_pmf(n)?
                } else {
                    density_pmf(n)?
                };
                let rows: Vec<Vec<String>> = data
                    .iter()
                    .map(|(x, p)| {
                        vec![to_decimal_string(x, prec), to_decimal_string(p, prec)]
                    })
                    .collect();
                render(&["x", "proportion"], &rows, cli.format)
            } else {
                let pmf = match (interior, overall) {
                    (Some(i), None) => linking_pmf(i)?,
                    (None, Some(n)) => overall_pmf(n)?,
                    _ => unreachable!("flag group enforces exactly one scope"),
                };
                if exact {
                    let rows: Vec<Vec<String>> = pmf
                        .probs()
                        .iter()
                        .map(|(l, p)| {
                            vec![
                                l.to_string(),
                                p.numer().to_string(),
                                p.denom().to_string(),
                                to_decimal_string(p, prec),
                            ]
                        })
                        .collect();
                    render(
                        &["l", "probability_num", "probability_den", "probability_decimal"],
                        &rows,
                        cli.format,
                    )
                } else {
                    let rows: Vec<Vec<String>> = pmf
                        .probs()
                        .iter()
                        .map(|(l, p)| vec![l.to_string(), to_decimal_string(p, prec)])
                        .collect();
                    render(&["x", "proportion"], &rows, cli.format)
                }
            }
        }

        Command::Meansq {
            interior,
            overall,
            curve,
        } => {
            if let Some(i) = interior {
                format!("{}\n", mean_squared_linking(i)?)
            } else if let Some(n) = overall {
                format!("{}\n", mean_squared_overall(n)?)
            } else {
                let max_n = curve.expect("flag group enforces --curve");
                if max_n < 3 {
                    return Err(domain("curve maximum must be at least 3"));
                }
                let mut rows = Vec::new();
                for n in 3..=max_n {
                    let v = mean_squared_overall(n)?;
                    rows.push(vec![
                        n.to_string(),
                        v.numer().to_string(),
                        v.denom().to_string(),
                        to_decimal_string(&v, prec),
                    ]);
                }
                render(
                    &["n", "mean_squared_num", "mean_squared_den", "mean_squared_decimal"],
                    &rows,
                    cli.format,
                )
            }
        }

        Command::Census => {
            let c = k6_census();
            let total_probability = c.probability_sum();
            let total_expected =
                &c.expected_trivial + &c.expected_hopf + &c.expected_solomon;
            let row = |name: &str, p: &Rational, e: &Rational| {
                vec![
                    name.to_string(),
                    p.to_string(),
                    to_decimal_string(p, prec),
                    e.to_string(),
                ]
            };
            let rows = vec![
                row("trivial", &c.trivial, &c.expected_trivial),
                row("hopf", &c.hopf, &c.expected_hopf),
                row("solomon", &c.solomon, &c.expected_solomon),
                row("total", &total_probability, &total_expected),
                row("nontrivial", &c.nontrivial(), &c.expected_nontrivial),
            ];
            render(
                &["link_type", "probability", "probability_decimal", "expected_count"],
                &rows,
                cli.format,
            )
        }

        Command::Sample {
            overall,
            pair,
            vertices,
            samples,
            seed,
            workers,
            compare,
        } => {
            if vertices.is_some() && pair.is_none() {
                return Err(usage("'--vertices <V>' requires '--pair <P/Q>'"));
            }
            let cfg = SamplerConfig::new(seed, samples, workers)?;
            let (emp, exact): (EmpiricalPmf, LinkingPmf) = if let Some(n) = overall {
                (empirical_overall(n, &cfg)?, overall_pmf(n)?)
            } else {
                let spec = pair.expect("flag group enforces --pair");
                let (ps, qs) = spec
                    .split_once('/')
                    .ok_or_else(|| domain("pair must be given as P/Q, e.g. 1,3,5/2,4,6"))?;
                let p = Cycle::parse(ps)?;
                let q = Cycle::parse(qs)?;
                let ambient = vertices.unwrap_or_else(|| {
                    p.vertices().iter().chain(q.vertices()).copied().max().unwrap_or(0)
                });
                let d = Diagram::new(ambient)?;
                let emp = empirical_pmf_for_pair(&d, &p, &q, &cfg)?;
                let crossings = d.inter_component_crossing_count(&p, &q)?;
                let i = if crossings == 0 { 1 } else { crossings / 2 };
                (emp, linking_pmf(i)?)
            };
            let mut rows: Vec<Vec<String>> = emp
                .counts()
                .iter()
                .map(|(&l, count)| {
                    vec![
                        l.to_string(),
                        count.to_string(),
                        to_decimal_string(&emp.proportion(l), prec),
                    ]
                })
                .collect();
            if compare {
                let tv = tv_distance(&emp.to_pmf(exact.scope()), &exact);
                rows.push(vec!["tv_distance".to_string(), to_decimal_string(&tv, prec)]);
            }
            render(&["l", "count", "proportion"], &rows, cli.format)
        }

        Command::Link { n, p, q, heights } => {
            let d = Diagram::new(n)?;
            let p = Cycle::parse(&p)?;
            let q = Cycle::parse(&q)?;
            let h = HeightAssignment::parse(&d, &heights)?;
            format!("{}\n", d.linking_number(&p, &q, &h)?)
        }

        Command::Pairs { m, n, enumerate } => {
            let rows: Vec<Vec<String>> = if enumerate {
                enumerate_monotonic_pairs(m, n)?
                    .into_iter()
                    .map(|(i, c)| vec![i.to_string(), c.to_string()])
                    .collect()
            } else {
                if m < 3 || n < 3 {
                    return Err(domain(format!(
                        "cycle length must be at least 3, got {}",
                        m.min(n)
                    )));
                }
                (1..=m.min(n))
                    .map(|i| Ok(vec![i.to_string(), pair_count(m, n, i)?.to_string()]))
                    .collect::<Result<_, CliError>>()?
            };
            render(&["i", "count"], &rows, cli.format)
        }
    };
    emit(&cli.out, content)
}
