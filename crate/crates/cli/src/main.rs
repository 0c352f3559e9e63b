use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gencliff_core::clifford::{
    comparison_check, hypersurface_equation, kl_presentation, parse_presentation, psi_presentation,
    quadratic_presentation, weyl_presentation, Construction, InputFile, Presentation,
};
use gencliff_core::coeffs::Ring;
use gencliff_core::dg::derived_clifford_zero;
use gencliff_core::freealg::{format_poly, parse_poly, XMode};
use gencliff_core::gbasis::{buchberger_bounded, GBState};
use gencliff_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "gencliff",
    version,
    about = "Presentations and Gröbner computations for generalized Clifford algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Ordered,
    Commuting,
}

impl From<ModeArg> for XMode {
    fn from(m: ModeArg) -> XMode {
        match m {
            ModeArg::Ordered => XMode::Ordered,
            ModeArg::Commuting => XMode::Commuting,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructionArg {
    Kl,
    Psi,
    Quadratic,
    Weyl,
}

impl From<ConstructionArg> for Construction {
    fn from(c: ConstructionArg) -> Construction {
        match c {
            ConstructionArg::Kl => Construction::Kl,
            ConstructionArg::Psi => Construction::Psi,
            ConstructionArg::Quadratic => Construction::Quadratic,
            ConstructionArg::Weyl => Construction::Weyl,
        }
    }
}

#[derive(Args)]
struct InputArgs {
    /// Input file.
    #[arg(long)]
    input: PathBuf,
    /// Overrides the file's `mode`.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
}

#[derive(Args)]
struct EmitArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Write the presentation here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct IdealArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Presentation to build; inferred from the file when omitted.
    #[arg(long, value_enum)]
    construction: Option<ConstructionArg>,
    /// Degree bound for completion.
    #[arg(long, default_value_t = 6)]
    bound: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the coefficient-extraction presentation.
    Kl(EmitArgs),
    /// Emit the presentation from the relation law.
    Psi(EmitArgs),
    /// Emit the Clifford algebra of a quadratic form.
    Quadratic(EmitArgs),
    /// Emit the Weyl-type presentation of a bilinear form.
    Weyl(EmitArgs),
    /// Compare the two ideals up to a degree bound.
    Compare {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
    /// Print the equation of the associated hypersurface.
    Hypersurface {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Export a bounded Gröbner basis.
    Gb(IdealArgs),
    /// Normal form of a polynomial.
    Nf {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        poly: String,
    },
    /// Decide ideal membership of a polynomial.
    Member {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        poly: String,
    },
    /// Quotient dimensions per degree up to the bound.
    Dim(IdealArgs),
    /// Homology ranks of the derived Clifford algebra of the zero form.
    Homology {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        hmax: u32,
        #[arg(long)]
        wmax: u32,
        #[arg(long, default_value = "QQ")]
        ring: String,
    },
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn is_presentation_file(text: &str) -> bool {
    text.lines().any(|l| l.trim_start().starts_with("rel:"))
}

fn build(args: &InputArgs, construction: Option<Construction>) -> Result<Presentation> {
    let text = read(&args.input)?;
    if construction.is_none() && is_presentation_file(&text) {
        return parse_presentation(&text);
    }
    let file = InputFile::parse(&text)?;
    let mode = args.mode.map(XMode::from);
    let construction = construction.unwrap_or(if file.is_weyl() {
        Construction::Weyl
    } else {
        Construction::Psi
    });
    match construction {
        Construction::Kl => kl_presentation(&file.clifford_input(mode)?),
        Construction::Psi => psi_presentation(&file.clifford_input(mode)?),
        Construction::Quadratic => quadratic_presentation(&file.quadratic_form()?),
        Construction::Weyl => weyl_presentation(file.ring(), &file.weyl_matrix()?),
    }
}

fn emit(args: &EmitArgs, construction: Construction) -> Result<String> {
    let text = build(&args.input, Some(construction))?.to_text();
    match &args.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| {
                Error::InvalidInput(format!("cannot write {}: {e}", path.display()))
            })?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn complete(args: &IdealArgs) -> Result<(Presentation, GBState)> {
    let p = build(&args.input, args.construction.map(Construction::from))?;
    let gb = buchberger_bounded(&p.context(), p.relations(), args.bound)?;
    Ok((p, gb))
}

fn run(cli: Cli) -> Result<String> {
    let mut out = String::new();
    match cli.command {
        Command::Kl(a) => out = emit(&a, Construction::Kl)?,
        Command::Psi(a) => out = emit(&a, Construction::Psi)?,
        Command::Quadratic(a) => out = emit(&a, Construction::Quadratic)?,
        Command::Weyl(a) => out = emit(&a, Construction::Weyl)?,
        Command::Compare { input, bound } => {
            let file = InputFile::parse(&read(&input.input)?)?;
            let data = file.clifford_input(input.mode.map(XMode::from))?;
            out = comparison_check(&data, bound)?.to_text();
        }
        Command::Hypersurface { input } => {
            let file = InputFile::parse(&read(&input.input)?)?;
            let data = file.clifford_input(input.mode.map(XMode::from))?;
            writeln!(out, "{}", hypersurface_equation(&data)?).unwrap();
        }
        Command::Gb(a) => out = complete(&a)?.1.export(),
        Command::Nf { ideal, poly } => {
            let (p, gb) = complete(&ideal)?;
            let f = parse_poly(&poly, &p.context())?;
            writeln!(out, "{}", format_poly(&gb.normal_form(&f)?)).unwrap();
        }
        Command::Member { ideal, poly } => {
            let (p, gb) = complete(&ideal)?;
            let f = parse_poly(&poly, &p.context())?;
            writeln!(out, "{}", gb.is_member(&f)?).unwrap();
        }
        Command::Dim(a) => {
            let (_, gb) = complete(&a)?;
            let counts = gb.quotient_dimension(a.bound)?;
            writeln!(out, "exact {}", counts.exact).unwrap();
            for (deg, c) in counts.per_degree.iter().enumerate() {
                writeln!(out, "degree {deg} {c}").unwrap();
            }
            writeln!(out, "total {}", counts.total()).unwrap();
        }
        Command::Homology {
            d,
            hmax,
            wmax,
            ring,
        } => {
            let ring: Ring = ring.parse()?;
            let alg = derived_clifford_zero(d, ring)?;
            out.push_str("h w rank\n");
            for (h, w, r) in alg.homology_table(hmax, wmax)? {
                writeln!(out, "{h} {w} {r}").unwrap();
            }
        }
    }
    Ok(out)
}

/// Writes to standard output, tolerating a closed pipe.
fn emit_stdout(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            emit_stdout(&e.to_string());
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            eprintln!("{}", rendered.lines().next().unwrap_or("usage error"));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(text) => {
            emit_stdout(&text);
            ExitCode::SUCCESS
        }
        Err(e) => {
            let message = e.to_string().replace('\n', " ");
            eprintln!("error: {message}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
