use std::fs;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use cellres::input::Mode;
use cellres::problem::{self, Builtin, Problem, Spec, StratChoice};
use cellres::render;
use cellres_core::lattice::quotient_grading;
use cellres_core::rescomplex::{build_resolution, closure_generators, minimality, monomial_module_generators};
use cellres_core::verify::{pointedness_check, resolution_certificate, ScanOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cellres", version, about = "Cellular free resolutions from lattices and stratifications")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Refuse any nondeterministic fallback.
    #[arg(long, env = "CELLRES_SEEDLESS", global = true, value_parser = clap::builder::BoolishValueParser::new(), default_value = "false")]
    seedless: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build the free complex and print it with its Betti table.
    Resolve(Run),
    /// Certify the complex as a resolution; exits 1 unless every check passes.
    Verify(Run),
    /// Generators of the normalization, as cosets of Laurent monomials.
    Closure(Run),
    /// Dump the cell complex and its stratification.
    Export(Run),
    /// Lattice data, quotient group, pointedness and cell counts.
    Info(Run),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    M2,
}

#[derive(Args)]
struct Run {
    /// Lattice file with `n` and a column-major `basis`.
    #[arg(long, group = "input")]
    basis: Option<String>,
    /// Lattice file with a ray matrix `rays`.
    #[arg(long, group = "input")]
    rays: Option<String>,
    /// Lattice file with `phi_star` and `nu`.
    #[arg(long, group = "input")]
    embedding: Option<String>,
    #[arg(long, group = "input", value_enum)]
    builtin: Option<Builtin>,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long, value_enum)]
    strat: Option<StratChoice>,
    /// Vertex labels for `--strat lcm`, as a JSON list in vertex-class order.
    #[arg(long)]
    vertex_labels: Option<String>,
    /// Comma-separated rationals such as `-1/2,0,eps,0`.
    #[arg(long, allow_hyphen_values = true)]
    shift: Option<String>,
    /// Size of the perturbation; alone, it moves coordinate `--epsilon-coord`.
    #[arg(long)]
    epsilon: Option<String>,
    /// 1-based coordinate moved by `--epsilon`.
    #[arg(long, default_value_t = 3)]
    epsilon_coord: usize,
    /// Coarsening matrix as JSON rows, or a file holding it.
    #[arg(long)]
    grading: Option<String>,
    #[arg(long, default_value_t = 2)]
    join_depth: usize,
    /// Search box for lattice points when `L` meets the positive orthant.
    #[arg(long)]
    window: Option<i64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<String>,
    /// Include the running time in the certificate.
    #[arg(long)]
    timing: bool,
}

impl Run {
    fn spec(&self) -> Spec {
        Spec {
            lattice: self.basis.clone().or(self.rays.clone()).or(self.embedding.clone()),
            mode: self.mode.or(if self.embedding.is_some() { Some(Mode::Toric) } else { None }),
            builtin: self.builtin,
            strat: self.strat,
            shift: self.shift.clone(),
            epsilon: self.epsilon.clone(),
            epsilon_coord: self.epsilon_coord,
            grading: self.grading.clone(),
            vertex_labels: self.vertex_labels.clone(),
        }
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {path}")),
            None => {
                std::io::stdout().write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }

    fn emit_json(&self, v: &Value) -> Result<()> {
        self.emit(&(serde_json::to_string_pretty(v)? + "\n"))
    }
}

fn generators(p: &Problem, window: Option<i64>) -> Result<Option<Value>> {
    if !pointedness_check(&p.complex.lattice).pointed && window.is_none() {
        return Ok(None);
    }
    let m = monomial_module_generators(&p.complex, &p.strat, &p.grading, window)?;
    Ok(Some(render::generators_json(&m, &p.names)))
}

fn resolve(run: &Run) -> Result<ExitCode> {
    let p = problem::build(&run.spec())?;
    let f = build_resolution(&p.complex, &p.strat, &p.grading)?;
    let m = minimality(&f, &p.complex, &p.strat);
    let gens = generators(&p, run.window)?;
    match run.format {
        Format::Json => run.emit_json(&json!({
            "complex": render::complex_json(&f, &p.names),
            "summary": {
                "stratification": p.strat.kind.to_string(),
                "ranks": f.ranks(),
                "betti": render::betti_json(&f),
                "minimality": render::minimality_json(&m),
                "generators": gens,
            },
        }))?,
        Format::Text => {
            let mut s = render::complex_text(&f, &p.names);
            s.push_str(&format!("\nminimal: {}\n", m.minimal()));
            if let Some(Value::Array(gs)) = &gens {
                let names: Vec<&str> = gs.iter().filter_map(|g| g["monomial"].as_str()).collect();
                s.push_str(&format!("generators: {}\n", names.join(", ")));
            }
            run.emit(&s)?;
        }
        Format::M2 => run.emit(&render::complex_m2(&f, &p.names, &p.grading))?,
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(run: &Run) -> Result<ExitCode> {
    let start = Instant::now();
    let p = problem::build(&run.spec())?;
    let opts = ScanOptions { join_depth: run.join_depth, window: run.window };
    let cert = resolution_certificate(&p.complex, &p.strat, &p.grading, &opts)?;
    let ms = run.timing.then(|| start.elapsed().as_millis());
    run.emit_json(&render::certificate_json(&cert, &p.names, ms))?;
    Ok(if cert.pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn closure(run: &Run) -> Result<ExitCode> {
    let spec = run.spec();
    let l = problem::lattice(&spec)?;
    let g = quotient_grading(&l, None)?;
    let names = problem::names_for(&l);
    let m = closure_generators(&l, &g, run.window)?;
    match run.format {
        Format::Text => {
            let mut s = format!("saturated: {}\n", l.saturated);
            s.push_str(&format!("quotient: Z^{} torsion {:?}\n", g.free_rank, g.torsion));
            for u in &m.generators {
                s.push_str(&format!("{}\n", names.monomial(u)));
            }
            run.emit(&s)?;
        }
        _ => run.emit_json(&json!({
            "saturated": l.saturated,
            "quotient": { "free_rank": g.free_rank, "torsion": g.torsion },
            "generators": render::generators_json(&m, &names),
        }))?,
    }
    Ok(ExitCode::SUCCESS)
}

fn export(run: &Run) -> Result<ExitCode> {
    let p = problem::build(&run.spec())?;
    run.emit_json(&json!({
        "complex": render::cells_json(&p.complex),
        "stratification": render::strat_json(&p.strat, &p.names),
    }))?;
    Ok(ExitCode::SUCCESS)
}

fn info(run: &Run, seedless: bool) -> Result<ExitCode> {
    let p = problem::build(&run.spec())?;
    let l = &p.complex.lattice;
    let pt = pointedness_check(l);
    run.emit_json(&json!({
        "lattice": render::lattice_json(l, &p.grading),
        "pointed": pt.pointed,
        "pointedness_witness": pt.witness,
        "counts": p.complex.counts(),
        "euler_characteristic": p.complex.euler_characteristic(),
        "deterministic": true,
        "seedless": seedless,
    }))?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Resolve(r) => resolve(r),
        Command::Verify(r) => verify(r),
        Command::Closure(r) => closure(r),
        Command::Export(r) => export(r),
        Command::Info(r) => info(r, cli.seedless),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
