// Binomial to Poisson, and the local and integral de Moivre-Laplace
// theorems, measured on growing n.

use probkit::limits::{
    binomial_poisson_distance, clt_interval_error, default_k_max, local_limit_ratio_error, riemann_normal_integral,
};

pub fn run_example() -> probkit::Result<()> {
    let lambda = 2.0;
    println!("{:>7} {:>12} {:>12} {:>12}", "n", "poisson", "local", "clt");
    for n in [10u64, 100, 1000, 10_000] {
        let pois = binomial_poisson_distance(n, lambda, default_k_max(lambda))?;
        let local = local_limit_ratio_error(n, 0.5, -1.0, 1.0)?;
        let clt = clt_interval_error(n, 0.5, -1.96, 1.96)?;
        println!(
            "{n:>7} {:>12.4e} {:>12.4e} {:>12.4e}",
            pois.metric, local.metric, clt.metric
        );
    }
    for steps in [10, 100, 10_000] {
        println!(
            "midpoint rule on [-1.96, 1.96], {steps} steps: {:.10}",
            riemann_normal_integral(-1.96, 1.96, steps)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> probkit::Result<()> {
    run_example()
}
