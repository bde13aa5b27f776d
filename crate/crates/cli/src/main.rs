mod commands;
mod parse;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::Failure;

/// Hesse derivatives of plane cubics and the dynamics of their parameters.
#[derive(Parser, Debug)]
#[command(name = "hesse-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Iterated Hesse derivatives of a cubic form or of a Hesse-form parameter.
    Derive(DeriveArgs),
    /// Counting table with exact oracle cross-checks.
    Counts(CountsArgs),
    /// Verify the polar-conic line pair at a point of `y^2 = x^3 + a x^2 + b x`.
    VerifyThm7(VerifyArgs),
    /// Plot the affine slice `z = 1` of a cubic to SVG or CSV.
    Plot(PlotArgs),
    /// Loops (periodic orbits) of the parameter map.
    Loops(LoopsArgs),
    /// Chains ending in -3 or infinity.
    Chains(ChainsArgs),
    /// Forward orbit of a parameter.
    Orbit(OrbitArgs),
    /// The four halves of a point on `y^2 = x^3 + a x^2 + b x`.
    Halve(HalveArgs),
    /// Conversions to Weierstrass-type and D3-symmetric forms.
    Convert(ConvertArgs),
}

#[derive(Args, Debug)]
pub struct DeriveArgs {
    /// JSON file with a cubic form (`-` for stdin).
    #[arg(long, conflicts_with = "hesse_c")]
    pub input: Option<String>,
    /// Hesse-form parameter `c` (rational, `inf`, or `p+q*sqrt3`).
    #[arg(long, allow_hyphen_values = true)]
    pub hesse_c: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub iterations: u32,
}

#[derive(Args, Debug)]
pub struct CountsArgs {
    #[arg(long, default_value_t = 16)]
    pub max_n: u32,
    /// Largest n with oracle columns; at most the oracle budget.
    #[arg(long, default_value_t = 0)]
    pub oracle_max: u32,
    /// text, csv or json.
    #[arg(long, default_value = "text")]
    pub format: String,
    /// Also write the CSV table to this file.
    #[arg(long)]
    pub csv: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    /// x-coordinate of P; drawn from the seed when absent.
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
    /// Take the negative square root for y0.
    #[arg(long)]
    pub negative_y: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    /// Hesse-form parameter `c` (`inf` for xyz).
    #[arg(long, allow_hyphen_values = true, group = "source")]
    pub hesse_c: Option<String>,
    /// JSON file with a cubic form (`-` for stdin).
    #[arg(long, group = "source")]
    pub input: Option<String>,
    /// Ten comma-separated coefficients in the order x3,x2y,x2z,xy2,xyz,xz2,y3,y2z,yz2,z3.
    #[arg(long, allow_hyphen_values = true, group = "source")]
    pub coeffs: Option<String>,
    /// D3-symmetric form of the Hesse-form parameter `c`.
    #[arg(long, allow_hyphen_values = true, group = "source")]
    pub d3: Option<String>,
    /// Add the Hesse derivative as a second layer.
    #[arg(long)]
    pub with_derivative: bool,
    /// xmin,xmax,ymin,ymax
    #[arg(long, allow_hyphen_values = true, default_value = "-4,4,-4,4")]
    pub window: String,
    #[arg(long, default_value_t = hesse_lab::plot::DEFAULT_RESOLUTION)]
    pub resolution: usize,
    /// svg or csv.
    #[arg(long, default_value = "svg")]
    pub format: String,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Args, Debug)]
pub struct LoopsArgs {
    #[arg(long)]
    pub n: u32,
    /// exact or float; chosen from the budget when absent.
    #[arg(long)]
    pub mode: Option<String>,
}

#[derive(Args, Debug)]
pub struct ChainsArgs {
    /// minus3 or infinity.
    #[arg(long, allow_hyphen_values = true, default_value = "minus3")]
    pub target: String,
    #[arg(long, required_unless_present = "witness")]
    pub n: Option<u32>,
    /// Print a chain start beyond this bound instead.
    #[arg(long)]
    pub witness: Option<f64>,
}

#[derive(Args, Debug)]
pub struct OrbitArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub c0: String,
    #[arg(long, default_value_t = 20)]
    pub max_steps: usize,
    #[arg(long, default_value_t = hesse_lab::dynamics::DEFAULT_ORBIT_TOL)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct HalveArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, allow_hyphen_values = true)]
    pub x0: String,
    #[arg(long)]
    pub negative_y: bool,
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    #[command(subcommand)]
    pub to: ConvertTo,
}

#[derive(Subcommand, Debug)]
pub enum ConvertTo {
    /// Hesse parameter and Weierstrass-type coefficients from `q`.
    Wnf {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// All real `q` mapping to the Hesse parameter `c`.
    Q {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// D3-symmetric form of the Hesse-form parameter `c`.
    D3 {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// The length-two loop of Weierstrass-type curves.
    Loop2,
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
        Command::Derive(a) => commands::derive(a),
        Command::Counts(a) => commands::counts(a),
        Command::VerifyThm7(a) => commands::verify_thm7(a),
        Command::Plot(a) => commands::plot(a),
        Command::Loops(a) => commands::loops(a),
        Command::Chains(a) => commands::chains(a),
        Command::Orbit(a) => commands::orbit(a),
        Command::Halve(a) => commands::halve(a),
        Command::Convert(a) => commands::convert(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

impl Failure {
    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Precondition(m) | Failure::Verification(m) => m,
        }
    }
}
