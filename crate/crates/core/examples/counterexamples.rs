// Pairwise independence without mutual independence, a product rule that
// holds globally but not in pairs, and a joint MGF that factorizes on the
// diagonal for dependent variables.

use probkit::finite_space::independence_report;
use probkit::fixtures::{bernstein, stoyanov, two_dice};

pub fn run_example() -> probkit::Result<()> {
    let (space, events) = bernstein();
    let r = independence_report(&space, &events)?;
    println!("Bernstein: pairwise {}, mutual {}", r.pairwise, r.mutual);

    let (space, events) = two_dice();
    let r = independence_report(&space, &events)?;
    println!("two dice: P(ABC) = P(A)P(B)P(C) {}, pairwise {}", r.global, r.pairwise);

    let j = stoyanov();
    let points: Vec<f64> = (-10..=10).map(|i| i as f64 / 5.0).collect();
    // the MGF reaches exp(12) at s = 2, hence a tolerance above 1e-12
    println!(
        "Stoyanov: independent {}, diagonal MGF factorizes {}",
        j.is_independent(),
        j.diagonal_mgf_factorizes(&points, 1e-9)?
    );
    let (mx, my) = (j.marginal_x(), j.marginal_y());
    println!(
        "at (s, t) = (1, -1): joint {:.6}, product {:.6}",
        j.joint_mgf(1.0, -1.0)?,
        mx.mgf(1.0)? * my.mgf(-1.0)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> probkit::Result<()> {
    run_example()
}
