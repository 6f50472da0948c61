// Total probability and Bayes' formula on three small problems.

use probkit::exact::{format_rational, ratio, to_f64};
use probkit::finite_space::{bayes_posterior, total_probability, urn_draw_space};
use probkit::fixtures::{disease_partition, umbrella_probability};

pub fn run_example() -> probkit::Result<()> {
    let disease = disease_partition();
    let post = bayes_posterior(&disease)?;
    println!("P(positive) = {}", format_rational(&total_probability(&disease)));
    println!(
        "P(infected | positive) = {} = {:.7}",
        format_rational(&post[0]),
        to_f64(&post[0])
    );

    // The umbrella was left on one of seven floors with probability p,
    // and it is not on the first six.
    for (num, den) in [(1, 2), (7, 10), (9, 10), (1, 1)] {
        let p = ratio(num, den);
        let q = umbrella_probability(&p)?;
        println!(
            "umbrella, p = {}: P(seventh floor) = {}",
            format_rational(&p),
            format_rational(&q)
        );
    }

    // 3 draws from an urn with 4 red balls out of 10
    for replace in [false, true] {
        let space = urn_draw_space(10, 4, 3, replace)?;
        let law: Vec<String> = space.weights().iter().map(format_rational).collect();
        println!("red balls drawn, replacement = {replace}: {}", law.join(", "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> probkit::Result<()> {
    run_example()
}
