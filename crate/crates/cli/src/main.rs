use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use vnspace::job::{self, JobSpec, LatticeSpec, NormSpec, RunOutput, Task};
use vnspace::Error;

#[derive(Parser)]
#[command(
    name = "vnspace",
    version,
    about = "VN-space decompositions of lattices under polyhedral norms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate and verify the VN-space orbits.
    Decompose(Common),
    /// Covering radius, Voronoi region, D-points and vertices.
    Analyze(Common),
    /// Verification only; exits with 5 when any check fails.
    Check(Common),
    /// Run the tasks of a job (every analysis by default) and write the JSON report.
    Report(Common),
}

#[derive(Args)]
struct Common {
    /// Job file; the other problem flags override its fields.
    #[arg(long)]
    job: Option<PathBuf>,
    /// `l1`, `linf`, inline forms `1,0;0,1;-1,-1`, or a JSON file `{"forms": ...}`.
    #[arg(long)]
    norm: Option<String>,
    /// `Zn`, `An`, `Dn` (or `A3` and so on).
    #[arg(long)]
    lattice: Option<String>,
    #[arg(long)]
    dim: Option<usize>,
    /// auto, generic, symmetric, l1, linf or walls.
    #[arg(long)]
    adapted: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Random interior points per orbit during verification.
    #[arg(long)]
    trials: Option<usize>,
    /// Write a figure (rank 2 only).
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::Io(_) | Error::DimensionMismatch { .. } | Error::InvalidLattice(_) => 2,
            Error::DegenerateForm
            | Error::DegenerateNorm
            | Error::NotPositiveDefinite { .. }
            | Error::IncompatibleStrategy(_)
            | Error::NotAdapted(_) => 3,
            _ => 4,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input(message: String) -> Failure {
    Failure { code: 2, message }
}

fn parse_norm(text: &str) -> Result<NormSpec, Failure> {
    let path = PathBuf::from(text);
    if path.is_file() {
        let body = fs::read_to_string(&path).map_err(|e| input(format!("{}: {e}", path.display())))?;
        return serde_json::from_str(&body).map_err(|e| input(format!("{}: {e}", path.display())));
    }
    if text.contains(',') || text.contains(';') {
        let forms = text
            .split(';')
            .filter(|r| !r.trim().is_empty())
            .map(|r| r.split(',').map(|c| c.trim().to_string()).collect())
            .collect();
        return Ok(NormSpec::Forms { forms });
    }
    Ok(NormSpec::Named(text.to_string()))
}

fn build_job(c: &Common) -> Result<JobSpec, Failure> {
    let mut job = match &c.job {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
            JobSpec::from_json(&text)?
        }
        None => {
            let norm = c
                .norm
                .as_deref()
                .ok_or_else(|| input("--norm or --job is required".into()))?;
            let dim = match (c.dim, c.lattice.as_deref()) {
                (Some(d), _) => d,
                (None, Some(l)) => l[1..].parse().map_err(|_| input("--dim is required".into()))?,
                (None, None) => return Err(input("--dim is required".into())),
            };
            JobSpec {
                dim,
                norm: parse_norm(norm)?,
                lattice: LatticeSpec::default(),
                adapted: "auto".into(),
                tasks: Vec::new(),
                seed: 0,
                trials: 100,
            }
        }
    };
    if c.job.is_some() {
        if let Some(norm) = &c.norm {
            job.norm = parse_norm(norm)?;
        }
        if let Some(d) = c.dim {
            job.dim = d;
        }
    }
    if let Some(l) = &c.lattice {
        job.lattice = LatticeSpec::Named(l.clone());
    }
    if let Some(a) = &c.adapted {
        job.adapted = a.clone();
    }
    if let Some(s) = c.seed {
        job.seed = s;
    }
    if let Some(t) = c.trials {
        job.trials = t;
    }
    Ok(job)
}

fn write(path: &PathBuf, body: &str) -> Result<(), Failure> {
    fs::write(path, body).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn summary(out: &RunOutput) -> String {
    let r = &out.report;
    let mut lines = vec![
        format!(
            "lattice {} norm with {} forms, point group of order {}",
            r.lattice.name,
            r.norm.forms.len(),
            r.group_order
        ),
        format!("{} orbit(s), volume sum {}", r.orbits.len(), r.checks.volume_sum),
    ];
    for (i, o) in r.orbits.iter().enumerate() {
        lines.push(format!(
            "  orbit {i}: {} vertices, |Stab| = {}, |O| = {}, tvol = {}, near = {:?}",
            o.vertices.len(),
            o.stabilizer,
            o.orbit_size,
            o.tvol,
            o.near
        ));
    }
    lines.push(format!(
        "verification: {} ({} random points)",
        if r.checks.passed { "passed" } else { "FAILED" },
        r.checks.random_points_checked
    ));
    if let Some(c) = &r.covering_radius {
        lines.push(format!("covering radius {} at {:?}", c.value, c.witness));
    }
    if let Some(reg) = &r.regions {
        lines.push(format!(
            "V_<=(0): {} pieces, volume {}, convex {}",
            reg.closed.pieces.len(),
            reg.closed.volume,
            reg.closed.convex
        ));
    }
    if let Some(dp) = &r.d_points {
        lines.push(format!("D-points: dimension {}", dp.dimension));
    }
    if let Some(v) = &r.vertices {
        lines.push(format!(
            "Voronoi vertices: {} (readings agree: {})",
            v.vertices.len(),
            v.readings_agree
        ));
    }
    if let Some(c) = &r.euclidean {
        lines.push(format!(
            "Euclidean Voronoi comparison: {}",
            if c.confirmed { "equal" } else { "different" }
        ));
    }
    lines.join("\n")
}

fn execute(command: Command) -> Result<(), Failure> {
    let (common, tasks, print_json) = match &command {
        Command::Decompose(c) => (c, vec![Task::Decompose], false),
        Command::Analyze(c) => (c, Task::ANALYSES.to_vec(), false),
        Command::Check(c) => (c, vec![Task::Decompose], false),
        Command::Report(c) => (c, Vec::new(), true),
    };
    let mut job = build_job(common)?;
    if !(print_json && common.job.is_some()) {
        job.tasks = tasks;
    }
    if common.svg.is_some() && !job.tasks.contains(&Task::Svg) {
        if job.tasks.is_empty() {
            job.tasks = Task::ANALYSES.to_vec();
        }
        job.tasks.push(Task::Svg);
    }
    let out = job::run(&job)?;
    if let (Some(path), Some(svg)) = (&common.svg, &out.svg) {
        write(path, svg)?;
    }
    let json = out.report.to_json();
    match &common.out {
        Some(path) => write(path, &json)?,
        None if print_json => println!("{json}"),
        None => {}
    }
    if !print_json {
        println!("{}", summary(&out));
    }
    if !out.report.checks.passed {
        return Err(Failure {
            code: 5,
            message: "verification failed".into(),
        });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
