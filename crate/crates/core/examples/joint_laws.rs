// Marginals, conditional laws and the tower property on a small table,
// read from CSV.

use probkit::couples::JointLaw;
use probkit::exact::format_rational;
use probkit::moments::{correlation, covariance};

const TABLE: &str = "\
X\\Y,2,3,4
1,2/10,3/10,0
2,0,1/10,4/10
";

pub fn run_example() -> probkit::Result<()> {
    let j = JointLaw::from_csv_str(TABLE)?.joint;
    let show = |probs: &[probkit::Prob]| probs.iter().map(format_rational).collect::<Vec<_>>().join(" ");
    println!("marginal X: {}", show(j.marginal_x().probs()));
    println!("marginal Y: {}", show(j.marginal_y().probs()));
    println!("independent: {}", j.is_independent());

    for (c, y) in j.y_values().iter().enumerate() {
        let law = j.conditional_law(c)?;
        let e = j.conditional_expectation_exact(|x| x, c)?;
        println!("X | Y = {y}: {}, mean {}", show(&law.probs), format_rational(&e));
    }
    let tower = j.tower_expectation_exact(|x| x * x)?;
    let direct = j.marginal_x().expectation_exact(|x| x * x)?;
    println!(
        "E(E(X^2 | Y)) = {} = E(X^2) = {}",
        format_rational(&tower),
        format_rational(&direct)
    );
    println!("cov {:.4}, correlation {:.4}", covariance(&j), correlation(&j)?);
    print!("{}", j.to_csv_string());
    Ok(())
}

#[allow(dead_code)]
fn main() -> probkit::Result<()> {
    run_example()
}
