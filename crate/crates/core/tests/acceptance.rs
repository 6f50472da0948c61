//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits non-zero if any of them fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::Zero;
use probkit::combinatorics::{factorial, stirling_approx, wallis_term};
use probkit::couples::{convolve, convolve_finite, JointLaw};
use probkit::distributions::{binomial_exact_mass, Law, SupportDescriptor};
use probkit::exact::{from_f64, int, ratio, to_f64, Prob};
use probkit::finite_space::{independence_report, prob, urn_draw_space};
use probkit::fixtures;
use probkit::limits::{binomial_poisson_distance, clt_interval_error, default_k_max, local_limit_ratio_error};
use probkit::moments::{inequality_gaps, tchebychev_interval, FiniteRv};
use probkit::Rng;

const CASES: usize = 1000;

type Check = Result<String, String>;

fn ensure(ok: bool, message: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message.into())
    }
}

fn below(rng: &mut Rng, n: u64) -> u64 {
    rng.next_u64() % n
}

/// A probability in (0, 1) with few binary digits, so exact rationals
/// stay small.
fn dyadic_prob(rng: &mut Rng) -> f64 {
    (1 + below(rng, 255)) as f64 / 256.0
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn lazy_student() -> Check {
    let law = Law::binomial(20, 0.25).unwrap();
    let (v, took) = timed(|| 1.0 - law.cdf(9.0));
    ensure((v - 0.013_864_42).abs() <= 1e-7, format!("1 - F(9) = {v:.10}"))?;
    ensure(took < Duration::from_millis(1), format!("took {took:?}"))?;
    Ok(format!("1 - F(9) = {v:.10} in {took:?}"))
}

fn normal_table() -> Check {
    let law = Law::normal(0.0, 1.0).unwrap();
    let table = [(-2.0, 0.022_750_13), (-1.96, 0.024_997_90), (0.0, 0.5), (1.96, 0.975)];
    let mut misses = Vec::new();
    for (x, want) in table {
        let got = law.cdf(x);
        if (got - want).abs() > 1e-7 {
            misses.push(format!(
                "F({x}) = {got:.10}, table {want}, gap {:.2e}",
                (got - want).abs()
            ));
        }
    }
    let q = law.quantile(0.022_750_13).unwrap();
    if (q + 2.0).abs() > 1e-5 {
        misses.push(format!("quantile = {q}"));
    }
    if misses.is_empty() {
        Ok(format!("4 table values and quantile {q:.8}"))
    } else {
        Err(misses.join("; "))
    }
}

fn stirling_bound() -> Check {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in 10..=200u64 {
        let exact = factorial(n).unwrap().ln();
        let approx = stirling_approx(n).unwrap().log_value;
        let gap = (exact - approx).abs();
        let bound = 1.01 / (12.0 * n as f64);
        ensure(gap <= bound, format!("n = {n}: gap {gap:e} > {bound:e}"))?;
        worst = worst.max(gap * 12.0 * n as f64);
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), format!("took {took:?}"))?;
    Ok(format!("max 12n * gap = {worst:.6} in {took:?}"))
}

fn wallis() -> Check {
    let grid = [1, 10, 100, 1000, 10_000];
    let errors: Vec<f64> = grid
        .iter()
        .map(|&n| (wallis_term(n).unwrap() - std::f64::consts::PI).abs())
        .collect();
    ensure(
        errors.windows(2).all(|w| w[1] < w[0]),
        format!("not decreasing: {errors:?}"),
    )?;
    ensure(errors[4] < 1e-3, format!("error at 10^4 is {}", errors[4]))?;
    Ok(format!("error at 10^4 = {:.3e}", errors[4]))
}

fn binomial_poisson() -> Check {
    let start = Instant::now();
    let metrics: Vec<f64> = [30, 300, 3000]
        .iter()
        .map(|&n| binomial_poisson_distance(n, 3.0, default_k_max(3.0)).unwrap().metric)
        .collect();
    let took = start.elapsed();
    ensure(
        metrics.windows(2).all(|w| w[1] < w[0]),
        format!("not decreasing: {metrics:?}"),
    )?;
    ensure(metrics[2] < 5e-3, format!("metric at 3000 is {}", metrics[2]))?;
    ensure(took < Duration::from_secs(1), format!("took {took:?}"))?;
    let shown: Vec<String> = metrics.iter().map(|m| format!("{m:.3e}")).collect();
    Ok(format!("metrics {} in {took:?}", shown.join(", ")))
}

fn de_moivre_laplace() -> Check {
    let clt = clt_interval_error(2000, 0.3, -1.0, 1.0).unwrap().metric;
    let local = local_limit_ratio_error(1000, 0.5, -1.0, 1.0).unwrap().metric;
    ensure(clt < 0.02, format!("clt error {clt}"))?;
    ensure(local < 0.01, format!("local error {local}"))?;
    Ok(format!("clt {clt:.3e}, local {local:.3e}"))
}

fn counterexamples() -> Check {
    let (space, ev) = fixtures::bernstein();
    let r = independence_report(&space, &ev).unwrap();
    ensure(r.pairwise && !r.mutual, format!("Bernstein report {r:?}"))?;
    let triple = prob(&space, &ev[0].intersection(&ev[1]).intersection(&ev[2])).unwrap();
    ensure(triple == int(0), "Bernstein triple probability")?;
    let product: Prob = ev.iter().map(|e| prob(&space, e).unwrap()).product();
    ensure(product == ratio(1, 8) && triple != product, "Bernstein product")?;

    let (space, ev) = fixtures::two_dice();
    let r = independence_report(&space, &ev).unwrap();
    ensure(r.global && !r.pairwise, format!("two-dice report {r:?}"))?;
    let bc = prob(&space, &ev[1].intersection(&ev[2])).unwrap();
    let b_c = prob(&space, &ev[1]).unwrap() * prob(&space, &ev[2]).unwrap();
    ensure(bc == ratio(1, 12) && b_c == ratio(1, 18), "two-dice P(BC)")?;

    let st = fixtures::stoyanov();
    ensure(!st.is_independent(), "Stoyanov table is independent")?;
    ensure(
        st.diagonal_mgf_factorizes(&[-1.0, 0.5, 1.0], 1e-12).unwrap(),
        "Stoyanov diagonal MGF does not factorize",
    )?;
    Ok("Bernstein, two dice, Stoyanov".into())
}

/// A random joint law with small integer values and weights.
fn random_joint(rng: &mut Rng) -> JointLaw {
    let rows = 1 + below(rng, 4) as usize;
    let cols = 1 + below(rng, 4) as usize;
    let axis = |rng: &mut Rng, len: usize| {
        let mut v: Vec<f64> = Vec::new();
        while v.len() < len {
            let x = below(rng, 11) as f64 - 5.0;
            if !v.contains(&x) {
                v.push(x);
            }
        }
        v.sort_by(f64::total_cmp);
        v
    };
    let xs = axis(rng, rows);
    let ys = axis(rng, cols);
    let mut weights: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| below(rng, 6) as i64).collect())
        .collect();
    if weights.iter().flatten().all(|&w| w == 0) {
        weights[0][0] = 1;
    }
    let total: i64 = weights.iter().flatten().sum();
    let matrix = weights
        .iter()
        .map(|row| row.iter().map(|&w| ratio(w, total)).collect())
        .collect();
    JointLaw::new(xs, ys, matrix).unwrap()
}

fn exact_oracles() -> Check {
    let mut rng = Rng::seed_from_u64(0x5EED_0008);

    // urn enumeration against the hypergeometric law
    for _ in 0..CASES {
        let total = 1 + below(&mut rng, 12);
        let marked = below(&mut rng, total + 1);
        let draws = 1 + below(&mut rng, total);
        let space = urn_draw_space(total, marked, draws, false).unwrap();
        let law = Law::hypergeometric(total, marked, draws).unwrap();
        for (k, w) in space.weights().iter().enumerate() {
            let want = law.exact_mass(k as i64).unwrap();
            ensure(*w == want, format!("urn ({total},{marked},{draws}) at {k}"))?;
        }
    }

    // n-fold Bernoulli convolution against the binomial law
    for _ in 0..CASES {
        let n = 1 + below(&mut rng, 12);
        let p = dyadic_prob(&mut rng);
        let bern = Law::bernoulli(p).unwrap().to_finite_rv().unwrap();
        let mut acc = bern.clone();
        for _ in 1..n {
            acc = convolve_finite(&acc, &bern).unwrap();
        }
        let pr = from_f64(p).unwrap();
        for k in 0..=n {
            let want = binomial_exact_mass(n, &pr, k);
            ensure(acc.prob_of(k as f64) == want, format!("Bernoulli^{n}({p}) at {k}"))?;
        }
    }

    // k-fold geometric convolution against the negative binomial law
    for _ in 0..CASES {
        let k = 1 + below(&mut rng, 4);
        let p = 0.05 + 0.9 * rng.next_f64();
        let g = Law::geometric(p).unwrap();
        let target = Law::negative_binomial(k, p).unwrap();
        let masses: Vec<f64> = if k == 1 {
            (1..=40).map(|j| g.mass(j as f64).unwrap()).collect()
        } else {
            let mut c = convolve(g, g).unwrap();
            for _ in 2..k {
                c = convolve(c, g).unwrap();
            }
            c.mass_table(40)
        };
        for (i, m) in masses.iter().enumerate() {
            let j = i as u64 + k;
            let want = target.mass(j as f64).unwrap();
            ensure(
                (m - want).abs() <= 1e-12,
                format!("Geometric^{k}({p}) at {j}: {m} vs {want}"),
            )?;
        }
    }

    // Poisson convolution, evaluated lazily per k
    for _ in 0..CASES {
        let l1 = 0.1 + 9.9 * rng.next_f64();
        let l2 = 0.1 + 9.9 * rng.next_f64();
        let c = convolve(Law::poisson(l1).unwrap(), Law::poisson(l2).unwrap()).unwrap();
        let target = Law::poisson(l1 + l2).unwrap();
        for k in 0..=50 {
            let (got, want) = (c.mass(k), target.mass(k as f64).unwrap());
            ensure(
                (got - want).abs() <= 1e-12,
                format!("Poisson({l1})*Poisson({l2}) at {k}"),
            )?;
        }
    }

    // tower property and linearity, exact
    for _ in 0..CASES {
        let joint = random_joint(&mut rng);
        let c: Vec<f64> = (0..4).map(|_| below(&mut rng, 7) as f64 - 3.0).collect();
        let h = |x: f64| c[0] + c[1] * x + c[2] * x * x + c[3] * x * x * x;
        let tower = joint.tower_expectation_exact(h).unwrap();
        let direct = joint.marginal_x().expectation_exact(h).unwrap();
        ensure(tower == direct, "tower property")?;

        let (a, b) = (c[0], c[1]);
        let lhs = joint.expectation_exact(|x, y| a * x + b * y).unwrap();
        let ex = joint.marginal_x().expectation_exact(|x| x).unwrap();
        let ey = joint.marginal_y().expectation_exact(|y| y).unwrap();
        let rhs = from_f64(a).unwrap() * ex + from_f64(b).unwrap() * ey;
        ensure(lhs == rhs, "linearity")?;
    }
    Ok(format!("{CASES} cases in each of 6 suites"))
}

fn all_laws() -> Vec<Law> {
    vec![
        Law::degenerate(2.0).unwrap(),
        Law::discrete_uniform(6).unwrap(),
        Law::bernoulli(0.3).unwrap(),
        Law::binomial(20, 0.25).unwrap(),
        Law::hypergeometric(10, 4, 3).unwrap(),
        Law::geometric(0.4).unwrap(),
        Law::num_failures(0.4).unwrap(),
        Law::negative_binomial(3, 0.4).unwrap(),
        Law::poisson(2.5).unwrap(),
        Law::uniform(-1.0, 2.0).unwrap(),
        Law::exponential(1.5).unwrap(),
        Law::gamma(3.0, 2.0).unwrap(),
        Law::normal(1.0, 4.0).unwrap(),
    ]
}

fn rel_close(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol * want.abs().max(1.0)
}

fn mgf_moments() -> Check {
    let h = 1e-4;
    for law in all_laws() {
        let phi = |s: f64| law.mgf(s).unwrap();
        let first = (phi(h) - phi(-h)) / (2.0 * h);
        let second = (phi(h) - 2.0 * phi(0.0) + phi(-h)) / (h * h);
        let mean = law.mean();
        let raw2 = law.variance() + mean * mean;
        ensure(rel_close(first, mean, 1e-5), format!("{law}: mean {first} vs {mean}"))?;
        ensure(
            rel_close(second, raw2, 1e-4),
            format!("{law}: E[X^2] {second} vs {raw2}"),
        )?;
        if law.is_discrete() {
            let psi = |s: f64| law.second_mgf(s).unwrap();
            let fm2_fd = (psi(1.0 + h) - 2.0 * psi(1.0) + psi(1.0 - h)) / (h * h);
            let fm2 = law.factorial_moment2().unwrap();
            ensure(rel_close(fm2_fd, fm2, 1e-4), format!("{law}: fm2 {fm2_fd} vs {fm2}"))?;
        }
    }
    Ok(format!("{} laws", all_laws().len()))
}

fn inequalities() -> Check {
    let mut rng = Rng::seed_from_u64(0x5EED_0010);
    let mut worst = f64::INFINITY;
    for _ in 0..CASES {
        let joint = random_joint(&mut rng);
        for (p, q) in [(2.0, 2.0), (3.0, 1.5)] {
            for g in [(|x: f64| x * x) as fn(f64) -> f64, |x: f64| x.exp(), |x: f64| x.abs()] {
                let gaps = inequality_gaps(&joint, p, q, g).unwrap();
                for v in [gaps.cauchy_schwarz, gaps.holder, gaps.minkowski, gaps.jensen] {
                    worst = worst.min(v);
                    ensure(v >= -1e-12, format!("negative gap {v} in {gaps:?}"))?;
                }
            }
        }
    }

    let mut finite: Vec<FiniteRv> = Vec::new();
    for n in [1u64, 2, 6, 20] {
        finite.push(Law::discrete_uniform(n).unwrap().to_finite_rv().unwrap());
    }
    for p in [0.01, 0.3, 0.5, 0.9] {
        finite.push(Law::bernoulli(p).unwrap().to_finite_rv().unwrap());
        for n in [1, 5, 20] {
            finite.push(Law::binomial(n, p).unwrap().to_finite_rv().unwrap());
        }
    }
    for (t, m, r) in [(10, 4, 3), (20, 7, 10), (12, 12, 5), (30, 1, 29)] {
        finite.push(Law::hypergeometric(t, m, r).unwrap().to_finite_rv().unwrap());
    }
    finite.push(Law::degenerate(3.0).unwrap().to_finite_rv().unwrap());
    finite.push(fixtures::ages());
    for (alpha, level) in [(0.5, ratio(1, 2)), (0.25, ratio(3, 4)), (0.05, ratio(19, 20))] {
        for rv in &finite {
            let s = rv.summary();
            let (lo, hi) = tchebychev_interval(s.mean, s.std_dev, alpha).unwrap();
            let covered = rv
                .iter()
                .filter(|(x, _)| lo <= *x && *x <= hi)
                .fold(Prob::zero(), |acc, (_, p)| acc + p);
            ensure(
                covered >= level,
                format!("coverage {} at alpha {alpha}", to_f64(&covered)),
            )?;
        }
    }
    Ok(format!(
        "smallest gap {worst:.2e}; {} finite laws covered",
        finite.len()
    ))
}

fn cdf_axioms() -> Check {
    for law in all_laws() {
        let (lo, hi) = match law.support() {
            SupportDescriptor::Point(c) => (c - 3.0, c + 3.0),
            SupportDescriptor::FiniteIntegerRange { lo, hi } => (lo as f64 - 3.0, hi as f64 + 3.0),
            SupportDescriptor::IntegerFrom { lo } => (lo as f64 - 3.0, lo as f64 + 60.0),
            SupportDescriptor::RealInterval { lo, hi } => (
                lo.max(law.mean() - 12.0 * law.std_dev()) - 1.0,
                hi.min(law.mean() + 12.0 * law.std_dev()) + 1.0,
            ),
        };
        let steps = 4000;
        let grid: Vec<f64> = (0..=steps).map(|i| lo + (hi - lo) * i as f64 / steps as f64).collect();
        let mut prev = f64::NEG_INFINITY;
        for &x in &grid {
            let f = law.cdf(x);
            ensure((0.0..=1.0).contains(&f), format!("{law}: F({x}) = {f}"))?;
            ensure(f >= prev - 1e-12, format!("{law}: decreases at {x}"))?;
            prev = f;
        }
        // right-continuity at and between the atoms
        let points: Vec<f64> = if law.is_discrete() {
            (lo.ceil() as i64..=hi.floor() as i64).map(|k| k as f64).collect()
        } else {
            grid.iter().step_by(40).copied().collect()
        };
        // step functions are flat just right of each atom; continuous ones
        // move by at most 1e-9 over a 1e-12 step
        let (offsets, tol): (&[f64], f64) = if law.is_discrete() {
            (&[0.5, 1e-6, 1e-9], 1e-12)
        } else {
            (&[1e-12], 1e-9)
        };
        for x in points {
            for &d in offsets {
                let gap = law.cdf(x + d) - law.cdf(x);
                ensure(gap.abs() <= tol, format!("{law}: F jumps right of {x}: {gap}"))?;
            }
        }
        let left = law.cdf(lo - 1e6);
        let right = law.cdf(hi + 1e6);
        ensure(left <= 1e-12, format!("{law}: F(-inf) = {left}"))?;
        ensure(right >= 1.0 - 1e-9, format!("{law}: F(+inf) = {right}"))?;
        ensure(
            law.cdf(f64::NEG_INFINITY) == 0.0 && law.cdf(f64::INFINITY) == 1.0,
            format!("{law}: infinite limits"),
        )?;
    }
    Ok(format!("{} laws", all_laws().len()))
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 11] = [
        ("lazy student", lazy_student),
        ("normal table", normal_table),
        ("Stirling bound", stirling_bound),
        ("Wallis convergence", wallis),
        ("binomial to Poisson", binomial_poisson),
        ("de Moivre-Laplace", de_moivre_laplace),
        ("counterexamples", counterexamples),
        ("exact oracles", exact_oracles),
        ("MGF finite differences", mgf_moments),
        ("inequalities", inequalities),
        ("CDF axioms", cdf_axioms),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("acceptance {:>2} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("acceptance {:>2} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
