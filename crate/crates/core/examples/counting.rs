// Exact counts, and the asymptotic formulas that approximate them.

use probkit::combinatorics::{
    arrangements, combinations, count_maps, factorial, multinomial, pascal_row, stirling_approx, wallis_term,
};

pub fn run_example() -> probkit::Result<()> {
    println!("A(10, 3) = {}", arrangements(10, 3));
    println!("C(52, 5) = {}", combinations(52, 5));
    println!("maps from 3 to 4 elements: {}", count_maps(3, 4));
    println!("30! = {}", factorial(30)?);

    let row: Vec<String> = pascal_row(8).iter().map(|c| c.to_string()).collect();
    println!("row 8 of Pascal's triangle: {}", row.join(" "));

    // anagrams of MISSISSIPPI: M x1, I x4, S x4, P x2
    println!("anagrams of MISSISSIPPI: {}", multinomial(&[1, 4, 4, 2])?);

    for n in [10, 100, 1000] {
        let s = stirling_approx(n)?;
        let ratio = (factorial(n)?.ln() - s.log_value).exp();
        println!(
            "n = {n:>4}: n! / stirling = {ratio:.8}, bound {:.8}",
            s.theta_bound.exp()
        );
    }
    for n in [1, 10, 100, 10_000] {
        println!("Wallis term {n:>5}: {:.8}", wallis_term(n)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> probkit::Result<()> {
    run_example()
}
