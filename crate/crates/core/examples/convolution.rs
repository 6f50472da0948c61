// Laws of sums of independent variables.

use probkit::couples::{convolve, convolve_finite, convolve_sequences, generating_function};
use probkit::distributions::Law;
use probkit::exact::format_rational;

pub fn run_example() -> probkit::Result<()> {
    let die = Law::discrete_uniform(6)?.to_finite_rv()?;
    let two = convolve_finite(&die, &die)?;
    for (v, p) in two.iter() {
        println!("P(two dice = {v:>2}) = {}", format_rational(p));
    }

    let sum = convolve(Law::poisson(1.0)?, Law::poisson(2.5)?)?;
    let target = Law::poisson(3.5)?;
    for k in [0, 3, 8] {
        println!(
            "Poisson(1) + Poisson(2.5) at {k}: {:.10} vs {:.10}",
            sum.mass(k),
            target.mass(k as f64)?
        );
    }

    let g = Law::geometric(0.3)?;
    let three = convolve(convolve(g, g)?, g)?;
    let nb = Law::negative_binomial(3, 0.3)?;
    let table = three.mass_table(12);
    for (i, m) in table.iter().enumerate().step_by(3) {
        let k = i + 3;
        println!(
            "three geometrics at {k:>2}: {m:.10}, negative binomial {:.10}",
            nb.mass(k as f64)?
        );
    }

    let a = [0.5, 0.5];
    let c = convolve_sequences(&a, &a);
    println!(
        "(1 + s)^2 / 4 at s = 0.3: {:.4} = {:.4}",
        generating_function(&c, 0.3),
        generating_function(&a, 0.3).powi(2)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> probkit::Result<()> {
    run_example()
}
