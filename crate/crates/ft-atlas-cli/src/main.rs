use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ft_atlas::classifier::{self, GroupDescriptor, GroupFlags};
use ft_atlas::matrix_groups::{self, BuiltinParams, IndefiniteForm};
use ft_atlas::pointset::{self, PointSet, Space};
use ft_atlas::subalgebra;
use ft_atlas::{amalgam, frames, io as ftio};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::fs;
use std::path::PathBuf;

const MAX_GROUP_ORDER: usize = 128;
const MAX_N: usize = 200;

#[derive(Parser)]
#[command(name = "ft-atlas", about = "Lie algebra classification, finite-group frame numerics and quasi-metric point-set geometry", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// RNG seed for eigenvector searches and random probes
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// numerical tolerance for float-mode decisions
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Structural report for a Lie algebra file: series, predicates, roots,
    /// witness and classification
    Analyze { algebra: PathBuf },
    /// Frame diagnostics for translates of a generator over a shift set
    Frame {
        group: PathBuf,
        vector: PathBuf,
        /// comma-separated element indices; omit for the whole group
        #[arg(long)]
        shifts: Option<String>,
    },
    /// Separated family whose inverse set concentrates in a small ball
    HeisenbergDemo {
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Greedy partition of a point set into separated parts
    Partition {
        points: PathBuf,
        /// separation radius: parts have pairwise distance > 2s
        #[arg(long)]
        sep: f64,
    },
    /// Ratio table showing ||f||_2 / ||f||_1 -> infinity for shrinking
    /// indicators
    AmalgamDemo {
        /// comma-separated indicator widths
        #[arg(long, default_value = "1,0.1,0.01,0.0001")]
        widths: String,
    },
    /// Exact corner generators of so(p,q) with bracket and membership checks
    Sopq {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Classify a named matrix example (sl2, so_p1, so_pq, shearlet_H, T_n)
    ClassifyExample {
        name: String,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        beta: Option<f64>,
    },
}

fn main() {
    let cli = Cli::parse();
    // honored for forward compatibility: all current operations are
    // sequential, so the cap is a no-op beyond validation
    if let Ok(v) = std::env::var("FT_ATLAS_THREADS") {
        if v.parse::<usize>().map(|t| t == 0).unwrap_or(true) {
            eprintln!("error: FT_ATLAS_THREADS must be a positive integer");
            std::process::exit(2);
        }
    }
    match run(&cli) {
        Ok(output) => {
            if let Some(path) = &cli.common.out {
                if let Err(e) = fs::write(path, output + "\n") {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    std::process::exit(1);
                }
            } else {
                println!("{output}");
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}

fn run(cli: &Cli) -> Result<String> {
    let c = &cli.common;
    match &cli.command {
        Command::Analyze { algebra } => cmd_analyze(algebra, c),
        Command::Frame { group, vector, shifts } => cmd_frame(group, vector, shifts.as_deref(), c),
        Command::HeisenbergDemo { n } => cmd_heisenberg_demo(*n, c),
        Command::Partition { points, sep } => cmd_partition(points, *sep, c),
        Command::AmalgamDemo { widths } => cmd_amalgam_demo(widths, c),
        Command::Sopq { p, q } => cmd_sopq(*p, *q, c),
        Command::ClassifyExample { name, p, q, n, beta } => {
            let params = BuiltinParams { beta: *beta, p: *p, q: *q, n: *n };
            let verdict = classifier::classify_matrix_example(name, &params, c.seed)?;
            render(&verdict, c)
        }
    }
}

#[derive(Serialize)]
struct AnalyzeReport {
    dim: usize,
    basis: Vec<String>,
    lower_central_dims: Vec<usize>,
    derived_dims: Vec<usize>,
    is_abelian: bool,
    is_nilpotent: bool,
    is_solvable: bool,
    is_exponential: Option<bool>,
    is_type_r: Option<bool>,
    roots: Option<Vec<Vec<[f64; 2]>>>,
    witness: Option<subalgebra::SubalgebraWitness>,
    verdict: classifier::FTVerdict,
}

fn cmd_analyze(path: &PathBuf, c: &Common) -> Result<String> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let g = ftio::algebra_from_json(&text)
        .with_context(|| format!("invalid algebra file {}", path.display()))?;
    let solvable = g.is_solvable();
    let (is_exponential, is_type_r, roots) = if solvable {
        let (expo, _) = g.is_exponential(c.seed)?;
        let type_r = g.is_type_r(c.seed)?;
        let data = g.complexified_roots_with_retries(c.seed, 8).ok();
        let roots = data.map(|d| {
            d.roots
                .iter()
                .map(|r| {
                    r.real_part
                        .iter()
                        .zip(&r.imag_part)
                        .map(|(&re, &im)| [re, im])
                        .collect()
                })
                .collect()
        });
        (Some(expo), Some(type_r), roots)
    } else {
        (None, None, None)
    };
    let witness = subalgebra::find_ax_b_or_grelaud(&g, c.seed, 64).ok();
    let descriptor = GroupDescriptor {
        name: path.display().to_string(),
        algebra: Some(g.clone()),
        flags: GroupFlags { simply_connected: true, connected: true, ..Default::default() },
    };
    let verdict = classifier::classify(&descriptor, c.seed)?;
    let report = AnalyzeReport {
        dim: g.dim(),
        basis: g.basis_names().to_vec(),
        lower_central_dims: g.lower_central_series().dims,
        derived_dims: g.derived_series().dims,
        is_abelian: g.is_abelian(),
        is_nilpotent: g.is_nilpotent(),
        is_solvable: solvable,
        is_exponential,
        is_type_r,
        roots,
        witness,
        verdict,
    };
    render(&report, c)
}

fn cmd_frame(group: &PathBuf, vector: &PathBuf, shifts: Option<&str>, c: &Common) -> Result<String> {
    let g = ftio::group_from_json(&fs::read_to_string(group)?)
        .with_context(|| format!("invalid group file {}", group.display()))?;
    if g.order() > MAX_GROUP_ORDER {
        bail!("group order {} exceeds the cap of {MAX_GROUP_ORDER}", g.order());
    }
    let phi = ftio::vector_from_json(&fs::read_to_string(vector)?)
        .with_context(|| format!("invalid vector file {}", vector.display()))?;
    let gamma: Vec<usize> = match shifts {
        None => (0..g.order()).collect(),
        Some(s) => s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<usize>().context("bad shift index"))
            .collect::<Result<_>>()?,
    };
    let report = frames::frame_report(&g, &phi, &gamma, c.tol)?;
    render(&report, c)
}

#[derive(Serialize)]
struct HeisenbergDemoReport {
    n: usize,
    family_size: usize,
    min_pairwise_distance: f64,
    scan_radius: f64,
    inverse_ball_occupancy: usize,
}

fn cmd_heisenberg_demo(n: usize, c: &Common) -> Result<String> {
    if n == 0 || n > MAX_N {
        bail!("N must lie in 1..={MAX_N}");
    }
    let gamma = pointset::counterexample_set(n)?;
    let inv = gamma.inverses();
    let centers = PointSet::heisenberg(vec![pointset::u_point(n)]);
    let scan = pointset::separation_scan(&inv, 1.0 / n as f64, &centers)?;
    let report = HeisenbergDemoReport {
        n,
        family_size: gamma.len(),
        min_pairwise_distance: gamma.min_pairwise_distance().unwrap_or(f64::INFINITY),
        scan_radius: scan.radius,
        inverse_ball_occupancy: scan.max_ball_occupancy,
    };
    render(&report, c)
}

#[derive(Deserialize)]
struct PointsFile {
    space: String,
    #[serde(default)]
    dim: Option<usize>,
    points: Vec<Vec<f64>>,
}

fn cmd_partition(path: &PathBuf, sep: f64, c: &Common) -> Result<String> {
    let file: PointsFile = serde_json::from_str(&fs::read_to_string(path)?)
        .with_context(|| format!("invalid point set file {}", path.display()))?;
    let set = match file.space.as_str() {
        "heisenberg" => PointSet { space: Space::Heisenberg, points: file.points },
        "euclidean" => {
            let d = file.dim.unwrap_or_else(|| {
                file.points.first().map(Vec::len).unwrap_or(0)
            });
            PointSet::euclidean(d, file.points)?
        }
        other => bail!("unknown space {other:?}; use \"euclidean\" or \"heisenberg\""),
    };
    let partition = pointset::greedy_partition(&set, sep)?;
    render(&partition, c)
}

fn cmd_amalgam_demo(widths: &str, c: &Common) -> Result<String> {
    let widths: Vec<f64> = widths
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<f64>().context("bad width"))
        .collect::<Result<_>>()?;
    let rows = amalgam::estimate_violation_demo(&widths)?;
    if c.format == Format::Csv {
        let mut out = String::from("width,ratio,expected\n");
        for r in &rows {
            out.push_str(&format!("{},{},{}\n", r.width, r.ratio, r.expected));
        }
        return Ok(out.trim_end().to_string());
    }
    render(&rows, c)
}

fn cmd_sopq(p: usize, q: usize, c: &Common) -> Result<String> {
    let form = IndefiniteForm::new(p, q);
    let (pair, relation) = if q == 1 {
        (matrix_groups::so_p1_pair(p)?, "[A,X]=X")
    } else {
        (matrix_groups::so_pq_pair(p, q)?, "[B,Y]=Y")
    };
    let (a, x) = pair;
    let bracket_exact = a.commutator(&x) == x;
    let member_a = matrix_groups::so_pq_membership(&a, &form)?;
    let member_x = matrix_groups::so_pq_membership(&x, &form)?;
    let verdict = classifier::classify_matrix_example(
        "so_pq",
        &BuiltinParams { p: Some(p), q: Some(q), ..Default::default() },
        c.seed,
    )?;
    let report = json!({
        "p": p,
        "q": q,
        "relation": relation,
        "bracket_exact": bracket_exact,
        "membership": [member_a, member_x],
        "generator": a.to_f64(),
        "partner": x.to_f64(),
        "verdict": verdict,
    });
    render(&report, c)
}

fn render<T: Serialize>(value: &T, c: &Common) -> Result<String> {
    match c.format {
        Format::Json => Ok(serde_json::to_string_pretty(value)?),
        Format::Text => Ok(text_render(&serde_json::to_value(value)?, 0)),
        Format::Csv => bail!("csv output is only available for amalgam-demo"),
    }
}

fn text_render(v: &serde_json::Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    match v {
        serde_json::Value::Object(map) => map
            .iter()
            .map(|(k, val)| match val {
                serde_json::Value::Object(_) | serde_json::Value::Array(_)
                    if !is_short(val) =>
                {
                    format!("{pad}{k}:\n{}", text_render(val, indent + 1))
                }
                _ => format!("{pad}{k}: {}", compact(val)),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        serde_json::Value::Array(items) => items
            .iter()
            .map(|item| {
                if is_short(item) {
                    format!("{pad}- {}", compact(item))
                } else {
                    format!("{pad}-\n{}", text_render(item, indent + 1))
                }
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => format!("{pad}{}", compact(other)),
    }
}

fn is_short(v: &serde_json::Value) -> bool {
    serde_json::to_string(v).map(|s| s.len() <= 60).unwrap_or(false)
}

fn compact(v: &serde_json::Value) -> String {
    serde_json::to_string(v).unwrap_or_default()
}
