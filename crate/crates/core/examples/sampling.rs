// Seeded draws and how well their averages match the theory.

use probkit::distributions::{Law, Rng};

pub fn run_example() -> probkit::Result<()> {
    let mut rng = Rng::seed_from_u64(2024);
    let n = 20_000;
    for law in [
        Law::binomial(20, 0.25)?,
        Law::poisson(3.5)?,
        Law::geometric(0.25)?,
        Law::exponential(2.0)?,
        Law::gamma(3.0, 0.5)?,
        Law::normal(-1.0, 9.0)?,
    ] {
        let xs = law.sample(&mut rng, n);
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        println!(
            "{:<20} sample mean {:>8.4} (law {:>7.4}), sample variance {:>8.4} (law {:>7.4})",
            law.to_string(),
            mean,
            law.mean(),
            var,
            law.variance()
        );
    }
    // the same seed gives the same draws
    let a = Law::poisson(2.0)?.sample(&mut Rng::seed_from_u64(7), 5);
    let b = Law::poisson(2.0)?.sample(&mut Rng::seed_from_u64(7), 5);
    assert_eq!(a, b);
    println!("seed 7: {a:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> probkit::Result<()> {
    run_example()
}
