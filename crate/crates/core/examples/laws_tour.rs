// Every law in the catalogue: mean, variance, a cdf value and a median.

use probkit::distributions::Law;

pub fn run_example() -> probkit::Result<()> {
    let laws = [
        Law::degenerate(3.0)?,
        Law::discrete_uniform(6)?,
        Law::bernoulli(0.3)?,
        Law::binomial(20, 0.25)?,
        Law::hypergeometric(50, 20, 10)?,
        Law::geometric(0.2)?,
        Law::num_failures(0.2)?,
        Law::negative_binomial(3, 0.2)?,
        Law::poisson(4.0)?,
        Law::uniform(-1.0, 3.0)?,
        Law::exponential(0.5)?,
        Law::gamma(2.5, 1.5)?,
        Law::normal(10.0, 4.0)?,
    ];
    println!(
        "{:<34} {:>10} {:>10} {:>10} {:>10}",
        "law", "mean", "variance", "F(mean)", "median"
    );
    for law in laws {
        println!(
            "{:<34} {:>10.4} {:>10.4} {:>10.6} {:>10.4}",
            law.to_string(),
            law.mean(),
            law.variance(),
            law.cdf(law.mean()),
            law.quantile(0.5)?
        );
    }

    let z = Law::normal(0.0, 1.0)?;
    for x in [-2.0, -1.96, 0.0, 1.96, 2.0] {
        println!("Phi({x:>5}) = {:.8}", z.cdf(x));
    }
    println!("quantile(0.02275013) = {:.6}", z.quantile(0.02275013)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> probkit::Result<()> {
    run_example()
}
