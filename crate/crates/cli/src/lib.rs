//! Argument handling and subcommands for the `khovanov` binary.

use std::ffi::OsString;
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use khovanov::algebra::{basis_h, basis_k, graded_dimension, multiply_with, Route};
use khovanov::diagram::cup_diagram_of;
use khovanov::render::{render_diagram, render_element};
use khovanov::rep::{
    cartan_matrix, decomposition_matrix, filtration_graded_dimension, projective_filtration,
    projective_graded_dimension, CellModule,
};
use khovanov::verify::{self, Options};
use khovanov::{BasisDiagram, Block, IntElement, IntPolyMatrix, Weight};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "khovanov", version, about = "Generalised Khovanov diagram algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Algebra {
    K,
    H,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Method {
    Generalized,
    Closure,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the weights of a block in block order.
    Enumerate {
        #[arg(long)]
        block: String,
    },
    /// Multiply two elements of the algebra of a block.
    Multiply {
        #[arg(long)]
        block: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, value_enum, default_value = "generalized")]
        method: Method,
    },
    /// List basis diagrams with their degrees, then the graded dimension.
    Basis {
        #[arg(long)]
        block: String,
        #[arg(long, value_enum, default_value = "k")]
        algebra: Algebra,
    },
    /// Write the q-Cartan matrix as CSV.
    Cartan {
        #[arg(long)]
        block: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the q-decomposition matrix as CSV.
    Decomp {
        #[arg(long)]
        block: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Basis and graded dimension of the cell module V(μ).
    Cellmod {
        #[arg(long)]
        block: String,
        #[arg(long)]
        mu: String,
    },
    /// Standard filtration of the projective P(λ).
    Filtration {
        #[arg(long)]
        block: String,
        #[arg(long)]
        lambda: String,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw a diagram or an element as text.
    Render {
        #[arg(long)]
        x: String,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_with(args: impl IntoIterator<Item = impl Into<OsString> + Clone>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn block_arg(text: &str) -> anyhow::Result<Block> {
    Block::parse(text).with_context(|| format!("bad block {text:?}"))
}

fn weight_in(block: &Block, text: &str) -> anyhow::Result<Weight> {
    let w = Weight::parse(text).with_context(|| format!("bad weight {text:?}"))?;
    block.require(&w)?;
    Ok(w)
}

fn element_in(block: &Block, text: &str) -> anyhow::Result<IntElement> {
    let e: IntElement = text.parse().with_context(|| format!("bad element {text:?}"))?;
    for b in e.basis() {
        block.require(b.weight())?;
    }
    Ok(e)
}

fn execute(command: &Command, out: &mut dyn Write) -> anyhow::Result<i32> {
    match command {
        Command::Enumerate { block } => {
            for w in block_arg(block)?.members() {
                writeln!(out, "{w}")?;
            }
        }
        Command::Multiply { block, x, y, method } => {
            let b = block_arg(block)?;
            let (x, y) = (element_in(&b, x)?, element_in(&b, y)?);
            let route = match method {
                Method::Generalized => Route::Generalized,
                Method::Closure => Route::ViaClosure,
            };
            writeln!(out, "{}", multiply_with(&x, &y, route)?)?;
        }
        Command::Basis { block, algebra } => {
            let b = block_arg(block)?;
            let basis = match algebra {
                Algebra::K => basis_k(&b),
                Algebra::H => basis_h(&b),
            };
            for x in &basis {
                writeln!(out, "{x}\t{}", x.degree())?;
            }
            writeln!(out, "dim_q = {}", graded_dimension::<i64>(&basis))?;
        }
        Command::Cartan { block, out: path } => {
            let m = cartan_matrix::<i64>(&block_arg(block)?)?;
            emit_csv(&m, path.as_ref(), out)?;
        }
        Command::Decomp { block, out: path } => {
            let m = decomposition_matrix::<i64>(&block_arg(block)?)?;
            emit_csv(&m, path.as_ref(), out)?;
        }
        Command::Cellmod { block, mu } => {
            let b = block_arg(block)?;
            let mu = weight_in(&b, mu)?;
            let module = CellModule::new(&b, &mu)?;
            for (lambda, deg) in module.basis() {
                writeln!(out, "({}|{mu}|\t{deg}", cup_diagram_of(lambda))?;
            }
            writeln!(out, "dim_q = {}", module.graded_dimension::<i64>())?;
        }
        Command::Filtration { block, lambda } => {
            let b = block_arg(block)?;
            let lambda = weight_in(&b, lambda)?;
            let sections = projective_filtration(&b, &lambda)?;
            for s in &sections {
                writeln!(out, "V({})<{}>", s.mu, s.shift)?;
            }
            let via = filtration_graded_dimension::<i64>(&b, &sections)?;
            let direct = projective_graded_dimension::<i64>(&b, &lambda)?;
            writeln!(out, "dim_q = {direct}")?;
            if via != direct {
                writeln!(out, "sections give {via}")?;
                return Ok(EXIT_FAILED);
            }
        }
        Command::Verify { suite, max_vertices, samples, seed } => {
            let opts = Options { max_vertices: *max_vertices, samples: *samples, seed: *seed };
            let Some(reports) = verify::run(suite, &opts) else {
                bail!("unknown suite {suite:?}; expected one of {} or all", verify::SUITES.join(", "));
            };
            writeln!(out, "seed: {seed}")?;
            let mut code = EXIT_OK;
            for r in &reports {
                writeln!(out, "{r}")?;
                if !r.passed() {
                    code = EXIT_FAILED;
                }
            }
            return Ok(code);
        }
        Command::Render { x } => {
            let text = match x.parse::<BasisDiagram>() {
                Ok(d) => render_diagram(&d),
                Err(_) => render_element(&x.parse::<IntElement>().with_context(|| format!("bad diagram {x:?}"))?),
            };
            out.write_all(text.as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}

/// Header row of weights after an empty corner cell, then one row per weight.
pub fn matrix_csv(m: &IntPolyMatrix) -> anyhow::Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let mut header = vec![String::new()];
    header.extend(m.index().iter().map(ToString::to_string));
    w.write_record(&header)?;
    for (i, row) in m.rows().iter().enumerate() {
        let mut record = vec![m.index()[i].to_string()];
        record.extend(row.iter().map(ToString::to_string));
        w.write_record(&record)?;
    }
    Ok(w.into_inner()?)
}

fn emit_csv(m: &IntPolyMatrix, path: Option<&PathBuf>, out: &mut dyn Write) -> anyhow::Result<()> {
    let bytes = matrix_csv(m)?;
    match path {
        Some(p) => File::create(p)
            .and_then(|mut f| f.write_all(&bytes))
            .with_context(|| format!("writing {}", p.display()))?,
        None => out.write_all(&bytes)?,
    }
    Ok(())
}
