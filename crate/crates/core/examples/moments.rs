// Moments of a finite random variable, Tchebychev intervals and the
// classical inequalities.

use probkit::exact::format_rational;
use probkit::fixtures::{ages, two_by_three};
use probkit::moments::{inequality_gaps, rvc, tchebychev_interval, variance_exact};

pub fn run_example() -> probkit::Result<()> {
    let x = ages();
    let s = x.summary();
    println!(
        "ages: mean {} = {:.4}",
        format_rational(&x.expectation_exact(|v| v)?),
        s.mean
    );
    println!(
        "variance {} = {:.4}, sd {:.4}",
        format_rational(&variance_exact(&x)),
        s.variance,
        s.std_dev
    );
    println!("relative variation {:.4}", rvc(s.mean, s.std_dev)?);

    for alpha in [0.5, 0.25, 0.05] {
        let (lo, hi) = tchebychev_interval(s.mean, s.std_dev, alpha)?;
        let inside = x
            .iter()
            .filter(|&(v, _)| lo <= v && v <= hi)
            .map(|(_, p)| p.clone())
            .sum();
        println!(
            "alpha = {alpha}: [{lo:.3}, {hi:.3}] holds {} of the mass",
            format_rational(&inside)
        );
    }

    let g = inequality_gaps(&two_by_three(), 3.0, 1.5, |t| t * t)?;
    println!("gaps on the 2 x 3 table: {g:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> probkit::Result<()> {
    run_example()
}
