// A student answers 20 four-choice questions at random. How likely is a
// pass mark of 10?

use probkit::distributions::binomial_exact_mass;
use probkit::exact::{format_rational, ratio, to_f64, Prob};
use probkit::fixtures::lazy_student_law;

pub fn run_example() -> probkit::Result<()> {
    let law = lazy_student_law();
    println!("P(X <= 9)  = {:.7}", law.cdf(9.0));
    println!("P(X >= 10) = {:.8}", law.survival(9.0));

    let p = ratio(1, 4);
    let tail: Prob = (10..=20).map(|k| binomial_exact_mass(20, &p, k)).sum();
    println!("exactly: {} = {:.10}", format_rational(&tail), to_f64(&tail));
    println!("expected score {}, standard deviation {:.4}", law.mean(), law.std_dev());
    Ok(())
}

#[allow(dead_code)]
fn main() -> probkit::Result<()> {
    run_example()
}
