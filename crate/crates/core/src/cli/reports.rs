use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Subcommand};
use num_traits::{One, Signed};

use super::Printer;
use crate::couples::JointLaw;
use crate::distributions::Law;
use crate::error::{Error, Result};
use crate::exact::{self, format_rational, parse_rational, to_f64, Prob};
use crate::finite_space::{
    bayes_posterior, bayes_posterior_with_null_causes, independence_report, prob, total_probability, CausePartition,
};
use crate::fixtures;
use crate::limits::{self, LimitReport};
use crate::moments::{correlation, covariance, FiniteRv, MomentSummary};

/// Points where the diagonal MGF factorization is checked.
const DIAGONAL_POINTS: [f64; 3] = [-1.0, 0.5, 1.0];
const DIAGONAL_TOLERANCE: f64 = 1e-12;

/// Decimal priors within this distance of 1 are rescaled.
const PRIOR_TOLERANCE: f64 = 1e-9;

#[derive(Args, Debug)]
pub(super) struct SummaryArgs {
    /// Path to a JSON file, or inline JSON: `{"values":[..],"probs":[..]}`
    /// or a law such as `{"law":"pois","lambda":2}`.
    source: String,
}

#[derive(Args, Debug)]
pub(super) struct JointArgs {
    table: PathBuf,
    /// Print the conditional law of X and E(X | Y = y) for this y.
    #[arg(long)]
    given_y: Option<f64>,
}

#[derive(Args, Debug)]
pub(super) struct BayesArgs {
    /// Comma-separated priors (decimals or num/den).
    #[arg(long, value_delimiter = ',', required = true)]
    priors: Vec<String>,
    /// Comma-separated likelihoods P(B | E_i).
    #[arg(long, value_delimiter = ',', required = true)]
    likelihoods: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub(super) enum LimitsCommand {
    /// Sup distance between Binomial(n, lambda/n) and Poisson(lambda).
    Poisson {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long)]
        lambda: f64,
        /// Largest k compared (default ceil(lambda + 12 sqrt(lambda) + 20)).
        #[arg(long)]
        k_max: Option<u64>,
        #[arg(long)]
        csv: bool,
    },
    /// Local de Moivre-Laplace ratio error on the window [a, b].
    #[command(allow_negative_numbers = true)]
    Local(WindowArgs),
    /// Integral de Moivre-Laplace error P(a <= Z_n <= b) - (Phi(b) - Phi(a)).
    #[command(allow_negative_numbers = true)]
    Clt(WindowArgs),
    /// Midpoint Riemann sums of the normal density against Phi(b) - Phi(a).
    #[command(allow_negative_numbers = true)]
    Riemann {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        steps: Vec<u64>,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Args, Debug)]
pub(super) struct WindowArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<u64>,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand, Debug)]
pub(super) enum DemoCommand {
    /// P(umbrella on floor 7 | not on floors 1-6) = p/(7 - 6p).
    Umbrella {
        #[arg(long)]
        p: String,
    },
    /// P(at least 10 right) when guessing 20 four-choice questions.
    LazyStudent,
    /// P(infected | positive test).
    Disease,
    /// Pairwise but not mutually independent events.
    Bernstein,
    /// Globally but not pairwise independent events.
    TwoDice,
    /// Dependent pair whose diagonal MGF factorizes.
    Stoyanov,
}

fn join(printer: &Printer, xs: impl IntoIterator<Item = f64>) -> String {
    xs.into_iter().map(|x| printer.num(x)).collect::<Vec<_>>().join(" ")
}

pub(super) fn summary(args: SummaryArgs, printer: &mut Printer) -> Result<()> {
    let text = if args.source.trim_start().starts_with('{') {
        args.source.clone()
    } else {
        std::fs::read_to_string(&args.source).map_err(|e| Error::Format(format!("cannot read {}: {e}", args.source)))?
    };
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Format(e.to_string()))?;
    let s = if value.get("law").is_some() {
        MomentSummary::of_law(&Law::from_json(&text)?)
    } else {
        FiniteRv::from_json(&text)?.summary()
    };
    printer.line(format!("mean: {}", printer.num(s.mean)))?;
    printer.line(format!("variance: {}", printer.num(s.variance)))?;
    printer.line(format!("sd: {}", printer.num(s.std_dev)))?;
    if let Some(fm) = s.factorial_moment2 {
        printer.line(format!("factorial moment 2: {}", printer.num(fm)))?;
    }
    Ok(())
}

fn print_joint(joint: &JointLaw, printer: &mut Printer) -> Result<()> {
    let mx = joint.marginal_x();
    let my = joint.marginal_y();
    printer.line(format!("X values: {}", join(printer, joint.x_values().iter().copied())))?;
    printer.line(format!("marginal X: {}", join(printer, mx.probs().iter().map(to_f64))))?;
    printer.line(format!("Y values: {}", join(printer, joint.y_values().iter().copied())))?;
    printer.line(format!("marginal Y: {}", join(printer, my.probs().iter().map(to_f64))))?;
    printer.line(format!("independent: {}", joint.is_independent()))?;
    printer.line(format!(
        "diagonal MGF factorizes: {}",
        joint.diagonal_mgf_factorizes(&DIAGONAL_POINTS, DIAGONAL_TOLERANCE)?
    ))?;
    printer.line(format!("covariance: {}", printer.num(covariance(joint))))?;
    match correlation(joint) {
        Ok(r) => printer.line(format!("correlation: {}", printer.num(r))),
        Err(Error::ZeroVariance) => printer.line("correlation: undefined (zero variance)"),
        Err(e) => Err(e),
    }
}

pub(super) fn joint(args: JointArgs, printer: &mut Printer, err: &mut dyn Write) -> Result<()> {
    let parsed = JointLaw::from_csv_path(&args.table)?;
    if parsed.renormalized {
        let _ = writeln!(err, "warning: decimal table did not sum to exactly 1 and was rescaled");
    }
    let joint = parsed.joint;
    print_joint(&joint, printer)?;
    if let Some(y) = args.given_y {
        let j = joint
            .y_index(y)
            .ok_or_else(|| Error::Domain(format!("no column with Y = {y}")))?;
        let law = joint.conditional_law(j)?;
        let y = printer.num(y);
        printer.line(format!(
            "conditional X | Y = {y}: {}",
            join(printer, law.probs.iter().map(to_f64))
        ))?;
        printer.line(format!(
            "E(X | Y = {y}): {}",
            printer.num(joint.conditional_expectation(|x| x, j)?)
        ))?;
    }
    Ok(())
}

fn parse_list(items: &[String]) -> Result<Vec<Prob>> {
    items.iter().map(|s| parse_rational(s)).collect()
}

pub(super) fn bayes(args: BayesArgs, printer: &mut Printer) -> Result<()> {
    let mut priors = parse_list(&args.priors)?;
    let likelihoods = parse_list(&args.likelihoods)?;
    let total = exact::sum(&priors);
    if !total.is_one() && !priors.iter().any(Signed::is_negative) && (to_f64(&total) - 1.0).abs() <= PRIOR_TOLERANCE {
        priors = priors.iter().map(|p| p / &total).collect();
    }
    let partition = CausePartition::new(priors, likelihoods)?;
    printer.line(format!(
        "evidence: {}",
        printer.num(to_f64(&total_probability(&partition)))
    ))?;
    for (i, p) in bayes_posterior_with_null_causes(&partition)?.iter().enumerate() {
        printer.line(format!("posterior {}: {}", i + 1, printer.num(to_f64(p))))?;
    }
    Ok(())
}

fn print_table(printer: &mut Printer, header: &[&str], rows: &[Vec<String>], csv: bool) -> Result<()> {
    if csv {
        printer.line(header.join(","))?;
        for row in rows {
            printer.line(row.join(","))?;
        }
        return Ok(());
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            rows.iter()
                .map(|r| r[c].len())
                .chain([header[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let render = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    printer.line(render(header.to_vec()))?;
    for row in rows {
        printer.line(render(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

fn report_rows(printer: &Printer, reports: &[LimitReport]) -> Vec<Vec<String>> {
    reports
        .iter()
        .map(|r| vec![r.n.to_string(), printer.num(r.metric)])
        .collect()
}

pub(super) fn limits(command: LimitsCommand, printer: &mut Printer) -> Result<()> {
    match command {
        LimitsCommand::Poisson { n, lambda, k_max, csv } => {
            let k_max = k_max.unwrap_or_else(|| limits::default_k_max(lambda));
            let reports = n
                .iter()
                .map(|&n| limits::binomial_poisson_distance(n, lambda, k_max))
                .collect::<Result<Vec<_>>>()?;
            let rows = report_rows(printer, &reports);
            print_table(printer, &["n", "metric"], &rows, csv)
        }
        LimitsCommand::Local(w) => {
            let reports =
                w.n.iter()
                    .map(|&n| limits::local_limit_ratio_error(n, w.p, w.a, w.b))
                    .collect::<Result<Vec<_>>>()?;
            let rows = report_rows(printer, &reports);
            print_table(printer, &["n", "metric"], &rows, w.csv)
        }
        LimitsCommand::Clt(w) => {
            let reports =
                w.n.iter()
                    .map(|&n| limits::clt_interval_error(n, w.p, w.a, w.b))
                    .collect::<Result<Vec<_>>>()?;
            let rows = report_rows(printer, &reports);
            print_table(printer, &["n", "metric"], &rows, w.csv)
        }
        LimitsCommand::Riemann { a, b, steps, csv } => {
            let exact = crate::distributions::normal_cdf(b) - crate::distributions::normal_cdf(a);
            let rows: Vec<Vec<String>> = steps
                .iter()
                .map(|&s| {
                    let v = limits::riemann_normal_integral(a, b, s);
                    vec![s.to_string(), printer.num(v), printer.num((v - exact).abs())]
                })
                .collect();
            print_table(printer, &["steps", "value", "error"], &rows, csv)
        }
    }
}

pub(super) fn demo(command: DemoCommand, printer: &mut Printer) -> Result<()> {
    match command {
        DemoCommand::Umbrella { p } => {
            let p = parse_rational(&p)?;
            if p.is_negative() || p > Prob::one() {
                return Err(Error::InvalidParameter(format!(
                    "p must lie in [0, 1], got {}",
                    format_rational(&p)
                )));
            }
            let q = fixtures::umbrella_probability(&p)?;
            printer.line(printer.num(to_f64(&q)))
        }
        DemoCommand::LazyStudent => {
            let law = fixtures::lazy_student_law();
            printer.line(format!("P(X <= 9) = {}", printer.num(law.cdf(9.0))))?;
            printer.line(format!("P(X >= 10) = {}", printer.num(law.survival(9.0))))
        }
        DemoCommand::Disease => {
            let part = fixtures::disease_partition();
            let post = bayes_posterior(&part)?;
            printer.line(format!(
                "P(positive) = {}",
                printer.num(to_f64(&total_probability(&part)))
            ))?;
            printer.line(format!(
                "P(infected | positive) = {} = {}",
                format_rational(&post[0]),
                printer.num(to_f64(&post[0]))
            ))
        }
        DemoCommand::Bernstein => {
            let (space, ev) = fixtures::bernstein();
            let r = independence_report(&space, &ev)?;
            let triple = prob(&space, &ev[0].intersection(&ev[1]).intersection(&ev[2]))?;
            let product: Prob = ev.iter().map(|e| prob(&space, e)).product::<Result<Prob>>()?;
            printer.line(format!("pairwise independent: {}", r.pairwise))?;
            printer.line(format!("mutually independent: {}", r.mutual))?;
            printer.line(format!(
                "P(A1 A2 A3) = {}, P(A1) P(A2) P(A3) = {}",
                format_rational(&triple),
                format_rational(&product)
            ))
        }
        DemoCommand::TwoDice => {
            let (space, ev) = fixtures::two_dice();
            let r = independence_report(&space, &ev)?;
            let bc = prob(&space, &ev[1].intersection(&ev[2]))?;
            let product = prob(&space, &ev[1])? * prob(&space, &ev[2])?;
            printer.line(format!("globally independent: {}", r.global))?;
            printer.line(format!("pairwise independent: {}", r.pairwise))?;
            printer.line(format!(
                "P(B C) = {}, P(B) P(C) = {}",
                format_rational(&bc),
                format_rational(&product)
            ))
        }
        DemoCommand::Stoyanov => {
            let joint = fixtures::stoyanov();
            for line in joint.to_csv_string().lines() {
                printer.line(line)?;
            }
            print_joint(&joint, printer)
        }
    }
}
