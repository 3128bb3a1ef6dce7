use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ghilb::oracle::OracleConfig;
use ghilb::survey::SweepOutcome;
use ghilb::{
    aggregate, emit_svg, emit_tikz, parse_group_spec, sweep_to_csv, Analysis, Annotation, AnnotationMode, Error,
    Fraction, SweepOptions,
};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "ghilb", version, about = "Degree-0 share of McKay images for abelian G in SL(3)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the G-Hilb fan of one group and classify every character.
    Analyze {
        /// Generators such as "1/5(1,1,3)" or "1/2(1,0,1);1/2(0,1,1)".
        #[arg(long)]
        group: String,
        /// Write the JSON report here ("-" for standard output).
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        tikz: Option<PathBuf>,
        /// Include the per-wall degree table in the JSON report.
        #[arg(long)]
        degrees: bool,
        /// Drawing annotations: none, wall-degrees or h0-classes.
        #[arg(long, default_value = "none")]
        annotate: AnnotationMode,
    },
    /// Analyze every embedding 1/r(1,a,b) with a + b = r - 1 over a range of orders.
    Sweep {
        #[arg(long)]
        r_min: u64,
        #[arg(long)]
        r_max: u64,
        /// Keep only a <= b.
        #[arg(long)]
        dedupe_symmetry: bool,
        /// Keep only embeddings whose weights are all units mod r.
        #[arg(long)]
        isolated_only: bool,
        #[arg(long)]
        csv: PathBuf,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Record wall-clock time per embedding; makes the CSV nondeterministic.
        #[arg(long)]
        timing: bool,
    },
    /// Run the invariant suite, including the independent oracles.
    Verify {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = OracleConfig::default().sample_count)]
        samples: usize,
        #[arg(long, default_value_t = OracleConfig::default().seed)]
        seed: u64,
    },
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    if e.is_input_error() {
        ExitCode::from(1)
    } else {
        ExitCode::from(2)
    }
}

fn write_output(path: &PathBuf, contents: &str) -> Result<(), Error> {
    if path.as_os_str() == "-" {
        std::io::stdout().write_all(contents.as_bytes())?;
    } else {
        fs::write(path, contents)?;
    }
    Ok(())
}

fn analyze(
    group: &str,
    json: Option<PathBuf>,
    svg: Option<PathBuf>,
    tikz: Option<PathBuf>,
    degrees: bool,
    annotate: AnnotationMode,
) -> Result<ExitCode, Error> {
    let spec = parse_group_spec(group)?;
    let analysis = Analysis::run(spec, None)?;
    let report = analysis.report(VERSION, degrees)?;
    let generator = format!("ghilb {VERSION}");
    let annotation = Annotation::from_mode(annotate, &analysis.b0);
    if let Some(path) = &svg {
        write_output(path, &emit_svg(&analysis.ctx, &analysis.fan, annotation, &generator))?;
    }
    if let Some(path) = &tikz {
        write_output(path, &emit_tikz(&analysis.ctx, &analysis.fan, annotation, &generator))?;
    }
    let to_stdout = json.as_ref().is_some_and(|p| p.as_os_str() == "-");
    if let Some(path) = &json {
        let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
        text.push('\n');
        write_output(path, &text)?;
    }
    if !to_stdout {
        let st = &report.statistics;
        println!("group           {}", report.group);
        println!("order           {}", report.r);
        println!("junior points   {}", st.junior_points);
        println!("triangles       {}", st.triangles);
        println!("interior edges  {}", st.interior_edges);
        println!("boundary edges  {}", st.boundary_edges);
        println!("interior points {}", st.interior_vertices);
        for c in &report.characters {
            println!(
                "  {:<10} degree {:>2}  support {}  p(n) = ({}) n^2 + ({}) n",
                c.label,
                c.homological_degree,
                c.support_dim,
                frac(&c.quadratic),
                frac(&c.linear)
            );
        }
        println!("h0              {{{}}}", report.h0.join(", "));
        println!("B0              {}", frac(&report.b0));
        for n in &report.notes {
            println!("note: {n}");
        }
    }
    let failed: Vec<_> = analysis.failed_checks().collect();
    for c in &failed {
        eprintln!("invariant `{}` failed: {}", c.name, c.detail);
    }
    Ok(if failed.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn frac(f: &Fraction) -> String {
    if f.den == 1 {
        f.num.to_string()
    } else {
        format!("{}/{}", f.num, f.den)
    }
}

fn print_sweep_summary(outcome: &SweepOutcome) {
    println!("records             {}", outcome.records.len());
    println!("failures            {}", outcome.failures.len());
    let Some(agg) = aggregate(&outcome.records) else {
        return;
    };
    println!("min B0              {}", agg.min);
    println!("max B0              {}", agg.max);
    println!("histogram");
    for (value, count) in &agg.histogram {
        println!("  {value:<8} {count}");
    }
    println!("bound violations    {}", agg.bound_violations.len());
    for rec in &agg.bound_violations {
        println!(
            "  r={} a={} b={} B0={}{}",
            rec.r,
            rec.a,
            rec.b,
            rec.b0,
            if rec.isolated { " (isolated)" } else { " (not isolated)" }
        );
    }
    println!("symmetry mismatches {}", outcome.symmetry_mismatches.len());
    for (r, a, b) in &outcome.symmetry_mismatches {
        println!("  r={r} a={a} b={b}");
    }
}

fn verify(group: &str, samples: usize, seed: u64) -> Result<ExitCode, Error> {
    let spec = parse_group_spec(group)?;
    let config = OracleConfig {
        seed,
        sample_count: samples,
        ..OracleConfig::default()
    };
    let analysis = Analysis::run(spec, Some(&config))?;
    for c in &analysis.checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    Ok(if analysis.failed_checks().next().is_none() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Analyze {
            group,
            json,
            svg,
            tikz,
            degrees,
            annotate,
        } => analyze(&group, json, svg, tikz, degrees, annotate),
        Command::Sweep {
            r_min,
            r_max,
            dedupe_symmetry,
            isolated_only,
            csv,
            jobs,
            timing,
        } => {
            let opts = SweepOptions {
                dedupe_symmetry,
                isolated_only,
                jobs,
                timing,
            };
            sweep_to_csv(r_min, r_max, &opts, &csv).map(|outcome| {
                for f in &outcome.failures {
                    eprintln!("r={} a={} b={}: {}", f.r, f.a, f.b, f.reason);
                }
                print_sweep_summary(&outcome);
                ExitCode::SUCCESS
            })
        }
        Command::Verify { group, samples, seed } => verify(&group, samples, seed),
    };
    result.unwrap_or_else(|e| fail(&e))
}
