//! The `nset` command line: every subcommand reads JSON (a path or `-` for
//! stdin), prints exactly one JSON document on stdout, and reports problems on
//! stderr.
//!
//! Exit codes: 0 success or witness found, 1 negative verdict (not confined,
//! no stabilization, search exhausted), 2 usage or input error.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use nset_core::dyadic::{refine_until_stable, DyadicError, DEFAULT_MAX_LEVEL};
use nset_core::io::{
    lattice_set_json, parse_box_union, parse_lattice_set, parse_lines, parse_tiling, points_json,
    refinement_json, schema, search_report_json, sweep_json, tiling_json, SCHEMA_NAMES,
};
use nset_core::lattice_core::first_unconfined;
use nset_core::search::{canonical_form, realize_up_to, search_confined, SearchSpec};
use nset_core::torus_cohomology::{
    classify_cells, color_edges, component_boundary, edge_cochain, find_components, gain_subgroup,
    generator_gains, verify_cocycle, vertex_labels, CohomologyError,
};
use nset_core::{
    difference_set_boxes, difference_set_tiling, normalize_tiling, GridTiling, LatticeSet,
    LineFamily,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "nset",
    version,
    about = "Grid fundamental domains, difference sets and tiling search"
)]
struct Cli {
    /// Print the JSON schema of an input document type and exit.
    #[arg(long, value_name = "TYPE", value_parser = SCHEMA_NAMES)]
    schema: Option<String>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integer points of K - K for a tiling or a box union.
    Diffset(InputArg),
    /// Check that the difference set lies on the given lines.
    Verify {
        #[command(flatten)]
        input: InputArg,
        /// `axes`, or a JSON file with {"dirs": [...]}.
        #[arg(long, default_value = "axes")]
        lines: String,
    },
    /// Dyadic refinement of a box union until its difference set settles.
    Refine {
        #[command(flatten)]
        input: InputArg,
        #[arg(long = "max-n", default_value_t = DEFAULT_MAX_LEVEL)]
        max_n: u32,
    },
    /// Edge cochain, coloring and components of a tiling on the torus.
    Topology(InputArg),
    /// Exhaustive tiling search.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Canonical representative of a tiling under the symmetry group.
    Canon(InputArg),
}

#[derive(Args, Debug)]
struct InputArg {
    /// Input JSON file, or `-` for stdin.
    #[arg(default_value = "-")]
    input: String,
}

#[derive(Args, Debug)]
struct SearchFlags {
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Disable symmetry pruning.
    #[arg(long)]
    no_symmetry: bool,
    /// Include elapsed time in the report (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum SearchCommand {
    /// Look for a tiling whose difference set lies on n lines.
    Confined {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        bound: i64,
        /// `axes`, or a JSON file with {"dirs": [...]}.
        #[arg(long, default_value = "axes")]
        lines: String,
        #[command(flatten)]
        flags: SearchFlags,
    },
    /// Look for a tiling with a prescribed difference set, for m = 1..=max-m.
    Realize {
        /// LatticeSet JSON file, or `-` for stdin.
        #[arg(long)]
        target: String,
        #[arg(long = "max-m", default_value_t = 6)]
        max_m: usize,
        #[arg(long, default_value_t = 4)]
        bound: i64,
        #[command(flatten)]
        flags: SearchFlags,
    },
}

/// An input or usage problem; always exit code 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            if self.stdin_used {
                return Err(Failure("stdin can be read only once".into()));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin.read_to_string(&mut s)?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).map_err(|e| Failure(format!("{path}: {e}")))
        }
    }

    fn lines(&mut self, spec: &str, n: usize) -> Result<LineFamily, Failure> {
        let lines = if spec == "axes" {
            LineFamily::axes(n)
        } else {
            parse_lines(&self.read(spec)?)?
        };
        if lines.dim() != n {
            return Err(Failure(format!(
                "lines have dimension {}, expected {n}",
                lines.dim()
            )));
        }
        Ok(lines)
    }
}

/// Difference set of either a tiling or a box union, told apart by the
/// `boxes` key.
fn diffset_of(text: &str) -> Result<LatticeSet, Failure> {
    let value: Value = serde_json::from_str(text)?;
    if value.get("boxes").is_some() {
        Ok(difference_set_boxes(&parse_box_union(text)?))
    } else {
        Ok(difference_set_tiling(&parse_tiling(text)?))
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code.
pub fn dispatch(
    argv: &[String],
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            } else {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            };
        }
    };
    let mut io = Io {
        stdin,
        stdin_used: false,
    };
    match run(cli, &mut io) {
        Ok((doc, code)) => {
            let _ = writeln!(stdout, "{doc}");
            code
        }
        Err(Failure(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn run(cli: Cli, io: &mut Io<'_>) -> Result<(Value, i32), Failure> {
    if let Some(name) = cli.schema {
        return Ok((schema(&name).expect("validated by clap"), EXIT_OK));
    }
    let Some(command) = cli.command else {
        return Err(Failure("no command given; try --help".into()));
    };
    match command {
        Command::Diffset(InputArg { input }) => {
            let d = diffset_of(&io.read(&input)?)?;
            Ok((lattice_set_json(&d), EXIT_OK))
        }
        Command::Verify { input, lines } => {
            let d = diffset_of(&io.read(&input.input)?)?;
            let lines = io.lines(&lines, d.dim())?;
            let offending = first_unconfined(&d, &lines);
            let doc = json!({ "confined": offending.is_none(), "offending": offending.map(|p| p.coords()) });
            Ok((
                doc,
                if offending.is_none() {
                    EXIT_OK
                } else {
                    EXIT_NEGATIVE
                },
            ))
        }
        Command::Refine { input, max_n } => {
            let k = parse_box_union(&io.read(&input.input)?)?;
            match refine_until_stable(&k, max_n) {
                Ok(r) => Ok((refinement_json(&r), EXIT_OK)),
                Err(DyadicError::NoStabilization { max_level }) => {
                    let doc = json!({
                        "N0": null,
                        "max_n": max_level,
                        "exact_diffset": points_json(&difference_set_boxes(&k)),
                    });
                    Ok((doc, EXIT_NEGATIVE))
                }
            }
        }
        Command::Topology(InputArg { input }) => {
            Ok((topology(&parse_tiling(&io.read(&input)?)?), EXIT_OK))
        }
        Command::Canon(InputArg { input }) => Ok((
            tiling_json(&canonical_form(&parse_tiling(&io.read(&input)?)?)),
            EXIT_OK,
        )),
        Command::Search(SearchCommand::Confined {
            n,
            m,
            bound,
            lines,
            flags,
        }) => {
            if n == 0 {
                return Err(Failure("--n must be positive".into()));
            }
            let lines = io.lines(&lines, n)?;
            let spec = SearchSpec::confined(n, m, bound)
                .with_lines(lines)
                .with_threads(flags.threads)
                .with_symmetry(!flags.no_symmetry);
            let report = search_confined(&spec)?;
            let code = if report.is_unsat() {
                EXIT_NEGATIVE
            } else {
                EXIT_OK
            };
            Ok((search_report_json(&report, flags.timing), code))
        }
        Command::Search(SearchCommand::Realize {
            target,
            max_m,
            bound,
            flags,
        }) => {
            let target = parse_lattice_set(&io.read(&target)?)?;
            let sweep = realize_up_to(&target, max_m, bound, flags.threads, !flags.no_symmetry)?;
            let code = if sweep.witness().is_some() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            };
            Ok((sweep_json(&sweep, flags.timing), code))
        }
    }
}

fn topology(t: &GridTiling) -> Value {
    let t = normalize_tiling(t);
    let n = t.dim();
    let psi = edge_cochain(&vertex_labels(&t).expect("normalized"))
        .expect("tiling labels wrap consistently");
    let gains: Vec<Vec<i64>> = generator_gains(&psi)
        .into_iter()
        .map(|g| g.into_coords())
        .collect();
    let base = |coloring: Value, components: Vec<Value>| {
        json!({
            "cocycle_ok": verify_cocycle(&psi),
            "generator_gains": gains,
            "coloring": coloring,
            "components": components,
        })
    };
    let coloring = match color_edges(&psi) {
        Ok(c) => c,
        Err(CohomologyError::NonAxialEdge { tail, dir, value }) => {
            return base(
                json!({ "non_axial_edge": { "tail": tail, "dir": dir, "value": value.coords() } }),
                vec![],
            );
        }
        Err(e) => unreachable!("color_edges only fails on non-axial edges: {e}"),
    };
    let cls = match classify_cells(&coloring) {
        Ok(cls) => cls,
        Err(CohomologyError::MixedCell { cell, colors }) => {
            return base(
                json!({ "mixed_cell": { "cell": cell, "colors": [colors.0, colors.1] } }),
                vec![],
            );
        }
        Err(e) => unreachable!("classify_cells only fails on mixed cells: {e}"),
    };
    let components = find_components(&cls)
        .iter()
        .map(|comp| {
            let sub = gain_subgroup(&psi, comp);
            let subgroup = if sub.is_zero() {
                json!("0")
            } else if sub.is_full() {
                json!("Z^n")
            } else {
                json!({ "basis": sub.basis().iter().map(|b| b.coords().to_vec()).collect::<Vec<_>>() })
            };
            json!({
                "color": comp.color,
                "size": comp.len(),
                "boundary_white": component_boundary(comp, &coloring).all_white,
                "subgroup": subgroup,
            })
        })
        .collect();
    debug_assert!(n >= 1);
    base(json!("ok"), components)
}
