//! The `probkit` command line.
//!
//! ```text
//! probkit [--digits N] d|p|q <law> <values...> [--size ..] [--prob ..] ...
//! probkit r <law> --seed S --count N [law flags]
//! probkit summary <json file | inline json>
//! probkit joint <table.csv> [--given-y Y]
//! probkit bayes --priors 0.3,0.7 --likelihoods 0.9,0.2
//! probkit limits poisson|local|clt|riemann ... [--csv]
//! probkit demo umbrella|lazy-student|disease|bernstein|two-dice|stoyanov
//! ```
//!
//! A law is named as in R (`binom`, `pois`, `norm`, ...) or given inline
//! as JSON, e.g. `'{"law":"binom","size":20,"prob":0.25}'`.
//!
//! Exit status is 0 on success, 2 on a usage error and 1 when the
//! arguments are well formed but violate a precondition.

mod format;
mod reports;

use std::io::Write;

use clap::{Args, Parser, Subcommand};

pub use format::{format_number, DEFAULT_DIGITS, DIGITS_ENV};

use crate::distributions::{Law, LawParams, Rng};
use crate::error::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "probkit", version, about = "Probability laws, moments and limit theorems")]
struct Cli {
    /// Significant digits in printed numbers (default 7, or PROBKIT_DIGITS).
    #[arg(long, global = true)]
    digits: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mass (discrete laws) or density (continuous laws).
    #[command(allow_negative_numbers = true)]
    D(Evaluate),
    /// Distribution function P(X <= x); --upper gives P(X > x).
    #[command(allow_negative_numbers = true)]
    P(Evaluate),
    /// Quantile inf{x : P(X <= x) >= s}.
    #[command(allow_negative_numbers = true)]
    Q(Evaluate),
    /// Random draws.
    #[command(allow_negative_numbers = true)]
    R(Draw),
    /// Moments of a finite random variable or a law given as JSON.
    Summary(reports::SummaryArgs),
    /// Marginals, conditionals and independence of a joint table in CSV.
    #[command(allow_negative_numbers = true)]
    Joint(reports::JointArgs),
    /// Total probability and posteriors for a partition of causes.
    Bayes(reports::BayesArgs),
    /// Numeric checks of the binomial limit theorems.
    #[command(subcommand)]
    Limits(reports::LimitsCommand),
    /// Worked examples.
    #[command(subcommand)]
    Demo(reports::DemoCommand),
}

#[derive(Args, Debug)]
struct Evaluate {
    /// Law name or inline JSON law.
    law: String,
    /// Points (d, p) or levels (q).
    #[arg(required = true)]
    values: Vec<f64>,
    #[command(flatten)]
    params: LawArgs,
    /// For p: print the upper tail P(X > x).
    #[arg(long)]
    upper: bool,
}

#[derive(Args, Debug)]
struct Draw {
    law: String,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    count: usize,
    #[command(flatten)]
    params: LawArgs,
}

#[derive(Args, Debug, Default)]
struct LawArgs {
    #[arg(long)]
    size: Option<f64>,
    #[arg(long)]
    prob: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    /// hyper: marked items.
    #[arg(long)]
    m: Option<f64>,
    /// hyper: unmarked items; dunif: number of values.
    #[arg(long)]
    n: Option<f64>,
    /// hyper: draws.
    #[arg(long)]
    k: Option<f64>,
    #[arg(long)]
    rate: Option<f64>,
    #[arg(long)]
    shape: Option<f64>,
    #[arg(long)]
    scale: Option<f64>,
    #[arg(long)]
    mean: Option<f64>,
    #[arg(long)]
    sd: Option<f64>,
    #[arg(long)]
    min: Option<f64>,
    #[arg(long)]
    max: Option<f64>,
    /// degen: the constant.
    #[arg(long)]
    value: Option<f64>,
}

impl LawArgs {
    fn to_law(&self, name: &str) -> Result<Law> {
        if name.trim_start().starts_with('{') {
            return Law::from_json(name);
        }
        LawParams {
            law: name.to_string(),
            value: self.value,
            size: self.size,
            prob: self.prob,
            lambda: self.lambda,
            m: self.m,
            n: self.n,
            k: self.k,
            rate: self.rate,
            shape: self.shape,
            scale: self.scale,
            mean: self.mean,
            sd: self.sd,
            min: self.min,
            max: self.max,
        }
        .to_law()
    }
}

/// Output settings shared by every command.
pub(crate) struct Printer<'a> {
    pub out: &'a mut dyn Write,
    pub digits: usize,
}

impl Printer<'_> {
    pub fn num(&self, x: f64) -> String {
        format_number(x, self.digits)
    }

    pub fn line(&mut self, text: impl AsRef<str>) -> Result<()> {
        writeln!(self.out, "{}", text.as_ref()).map_err(|e| Error::Format(e.to_string()))
    }
}

fn resolve_digits(flag: Option<usize>) -> std::result::Result<usize, String> {
    let digits = match flag {
        Some(d) => d,
        None => match std::env::var(DIGITS_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| format!("{DIGITS_ENV} must be an integer, got {v:?}"))?,
            Err(_) => DEFAULT_DIGITS,
        },
    };
    if (1..=17).contains(&digits) {
        Ok(digits)
    } else {
        Err(format!("digits must lie in 1..=17, got {digits}"))
    }
}

/// Runs one command line (including the program name) and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let digits = match resolve_digits(cli.digits) {
        Ok(d) => d,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            return 2;
        }
    };
    let mut printer = Printer { out, digits };
    match dispatch(cli.command, &mut printer, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(command: Command, printer: &mut Printer, err: &mut dyn Write) -> Result<()> {
    match command {
        Command::D(e) => {
            let law = e.params.to_law(&e.law)?;
            for x in e.values {
                let v = if law.is_discrete() {
                    law.mass(x)?
                } else {
                    law.density(x)?
                };
                printer.line(printer.num(v))?;
            }
        }
        Command::P(e) => {
            let law = e.params.to_law(&e.law)?;
            for x in e.values {
                let v = if e.upper { law.survival(x) } else { law.cdf(x) };
                printer.line(printer.num(v))?;
            }
        }
        Command::Q(e) => {
            let law = e.params.to_law(&e.law)?;
            for s in e.values {
                printer.line(printer.num(law.quantile(s)?))?;
            }
        }
        Command::R(d) => {
            let law = d.params.to_law(&d.law)?;
            let mut rng = Rng::seed_from_u64(d.seed);
            for x in law.sample(&mut rng, d.count) {
                printer.line(printer.num(x))?;
            }
        }
        Command::Summary(a) => reports::summary(a, printer)?,
        Command::Joint(a) => reports::joint(a, printer, err)?,
        Command::Bayes(a) => reports::bayes(a, printer)?,
        Command::Limits(c) => reports::limits(c, printer)?,
        Command::Demo(c) => reports::demo(c, printer)?,
    }
    Ok(())
}
