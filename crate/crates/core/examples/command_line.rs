// Driving the command line from code: the same entry point as the
// `probkit` binary, with output captured.

pub fn run_example() -> probkit::Result<()> {
    let sessions: [&[&str]; 5] = [
        &["p", "binom", "9", "--size", "20", "--prob", "0.25", "--upper"],
        &["q", "norm", "0.02275013"],
        &["d", "pois", "0", "1", "2", "--lambda", "1.5"],
        &["bayes", "--priors", "0.3,0.7", "--likelihoods", "0.9,0.2"],
        &["limits", "poisson", "--n", "10,100,1000", "--lambda", "1", "--csv"],
    ];
    for args in sessions {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = probkit::cli::run(
            std::iter::once("probkit").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        println!("$ probkit {}", args.join(" "));
        print!("{}", String::from_utf8_lossy(&out));
        if code != 0 {
            return Err(probkit::Error::Format(String::from_utf8_lossy(&err).into_owned()));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> probkit::Result<()> {
    run_example()
}
