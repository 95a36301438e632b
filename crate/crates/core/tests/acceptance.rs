//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

mod common;

use std::time::{Duration, Instant};

use citedist::experiments::{
    mean_crosscheck, mixture_study, plausibility_table, simulation_study, subject, MixtureSpec, SUBJECTS_2006,
};
use citedist::fitting::{fit, log_likelihood, FitConfig};
use citedist::gof::{ks_p_value, ks_p_value_fixed, ks_statistic, RefitMode};
use citedist::io::{Format, Report, ReportHeader};
use citedist::resampling::{bootstrap_study, ResampleSize};
use citedist::{CitationSample, Family, ModelSpec};
use common::{compensated_sum, normal_upper};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn mean_crosscheck_values() -> Outcome {
    let m = mean_crosscheck(&SUBJECTS_2006);
    let pass = SUBJECTS_2006.len() == 23 && (m.ln_mean_avg - 25.4).abs() <= 0.3 && (m.hook_mean_avg - 14.2).abs() <= 0.3;
    outcome(pass, format!("lognormal {:.3} (25.4 ± 0.3), hooked {:.3} (14.2 ± 0.3)", m.ln_mean_avg, m.hook_mean_avg))
}

/// Explicit sum to `X` plus a tail computed without the library: normal-tail
/// quadrature for the lognormal, the midpoint integral for the hooked law.
fn normalisation() -> Outcome {
    const X: u64 = 100_000;
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for s in &SUBJECTS_2006 {
        let ln = s.lognormal().unwrap();
        let z = |t: f64| (t.ln() - s.ln_mu) / s.ln_sigma;
        let head = compensated_sum((1..=X).map(|x| ln.pmf(x).unwrap()));
        let tail = normal_upper(z(X as f64 + 0.5)) / normal_upper(z(0.5));
        worst = worst.max((head + tail - 1.0).abs());

        let hook = s.hooked().unwrap();
        let head = compensated_sum((1..=X).map(|x| hook.pmf(x).unwrap()));
        let (a, b) = (s.hook_alpha, s.hook_b);
        let tail_terms = (b + X as f64 + 0.5).powf(1.0 - a) / (a - 1.0);
        let tail = hook.pmf(1).unwrap() * (b + 1.0).powf(a) * tail_terms;
        worst = worst.max((head + tail - 1.0).abs());
        count += 2;
    }
    outcome(count == 46 && worst <= 1e-9, format!("{count} parameter sets, worst |sum - 1| = {worst:.2e} (≤ 1e-9)"))
}

fn ks_oracle() -> Outcome {
    let m = ModelSpec::hooked(2.0, 1.0).unwrap();
    let s = CitationSample::from_counts(vec![1, 2]).unwrap();
    let d = ks_statistic(&m, &s).unwrap();
    // Terms (1 + x)^-2 over the normaliser ζ(2) - 1.
    let z2 = std::f64::consts::PI.powi(2) / 6.0 - 1.0;
    let f2 = (0.25 + 1.0 / 9.0) / z2;
    let oracle = (f2 - 1.0).abs().max((0.25 / z2 - 0.5).abs());
    outcome((d - 0.4401).abs() <= 1e-4 && (d - oracle).abs() < 1e-12, format!("D = {d:.6} (0.4401 ± 1e-4; closed form {oracle:.6})"))
}

fn round_trip() -> Outcome {
    let config = FitConfig::default();
    let co = subject("Control and Optimization").unwrap();
    let ln = co.lognormal().unwrap();
    let recovered = (0..20u64)
        .filter(|&seed| {
            let s = ln.sample(10_000, seed);
            let (mu, sigma) = fit(Family::Lognormal, &s, &config).unwrap().model.param_pair();
            (mu - co.ln_mu).abs() <= 0.05 && (sigma - co.ln_sigma).abs() <= 0.04
        })
        .count();
    let hook = co.hooked().unwrap();
    let dominant = (0..20u64)
        .filter(|&seed| {
            let s = hook.sample(10_000, 100 + seed);
            let f = fit(Family::Hooked, &s, &config).unwrap();
            f.log_likelihood >= log_likelihood(&hook, &s).unwrap() - 1e-6 * s.len() as f64
        })
        .count();
    outcome(
        recovered >= 19 && dominant == 20,
        format!("lognormal recovered {recovered}/20 (≥ 19), hooked MLE dominance {dominant}/20 (= 20)"),
    )
}

/// Datasets are drawn from the generating lognormal and tested against that
/// same model with the fixed-parameter Monte-Carlo p-value.
fn ks_calibration() -> Outcome {
    let truth = subject("Control and Optimization").unwrap().lognormal().unwrap();
    let config = FitConfig::default();
    let mut fixed = 0;
    let mut fitted = 0;
    for seed in 0..200u64 {
        let s = truth.sample(1043, 70_000 + seed);
        if ks_p_value_fixed(&truth, &s, 199, seed).unwrap().p_value < 0.05 {
            fixed += 1;
        }
        if ks_p_value(Family::Lognormal, &s, 199, seed, RefitMode::FixedParams, &config).unwrap().p_value < 0.05 {
            fitted += 1;
        }
    }
    let rate = fixed as f64 / 200.0;
    outcome(
        (0.01..=0.12).contains(&rate),
        format!(
            "fraction p < 0.05 = {rate:.3} ({fixed}/200, in [0.01, 0.12]); fitted-model p-values: {fitted}/200"
        ),
    )
}

fn virology(n: usize) -> citedist::experiments::VuongStudy {
    let g = subject("Virology").unwrap().lognormal().unwrap();
    simulation_study(&g, n, 50, 6534, &FitConfig::default()).unwrap()
}

fn vuong_lognormal_direction() -> Outcome {
    let study = virology(6534);
    let median = study.summary.as_ref().map_or(f64::NAN, |s| s.median);
    outcome(
        study.lognormal_wins() >= 45 && study.hooked_wins() == 0,
        format!(
            "lognormal wins {}/50 (≥ 45), hooked wins {} (= 0), failed {}, median z {median:.2}",
            study.lognormal_wins(),
            study.hooked_wins(),
            study.failed
        ),
    )
}

fn vuong_hooked_direction() -> Outcome {
    let g = subject("Cancer Research").unwrap().hooked().unwrap();
    let study = simulation_study(&g, 9994, 50, 9994, &FitConfig::default()).unwrap();
    let median = study.summary.as_ref().map_or(f64::NAN, |s| s.median);
    outcome(
        study.hooked_wins() >= 45 && study.lognormal_wins() == 0,
        format!(
            "hooked wins {}/50 (≥ 45), lognormal wins {} (= 0), failed {}, median z {median:.2}",
            study.hooked_wins(),
            study.lognormal_wins(),
            study.failed
        ),
    )
}

fn power_loss() -> Outcome {
    let large = virology(6534).decisive();
    let small = virology(500).decisive();
    outcome(small < large, format!("significant outcomes: n = 500 → {small}, n = 6534 → {large}"))
}

fn bootstrap_mechanics() -> Outcome {
    let s = ModelSpec::lognormal(2.0, 1.0).unwrap().sample(300, 1);
    let summary = bootstrap_study(&s, 1000, ResampleSize::SameSize, "mean", |r| Ok(r.mean().unwrap()), 4).unwrap();
    let mut sorted = summary.raw.clone();
    sorted.sort_by(f64::total_cmp);
    let exact = sorted.len() == 1000 && summary.lo95 == sorted[24] && summary.hi95 == sorted[975];

    let flat = CitationSample::from_counts(vec![4; 50]).unwrap();
    let c = bootstrap_study(&flat, 1000, ResampleSize::SameSize, "mean", |r| Ok(r.mean().unwrap()), 4).unwrap();
    let zero_width = c.lo95 == 4.0 && c.median == 4.0 && c.hi95 == 4.0;
    outcome(
        exact && zero_width,
        format!(
            "25th/976th order statistics {}, constant-data interval [{}, {}]",
            if exact { "match" } else { "differ" },
            c.lo95,
            c.hi95
        ),
    )
}

fn mixture_impurity() -> Outcome {
    let spec = MixtureSpec::pair(
        ModelSpec::lognormal(1.0, 1.0).unwrap(),
        ModelSpec::lognormal(3.5, 1.0).unwrap(),
        0.5,
    )
    .unwrap();
    let pure = ModelSpec::lognormal(2.25, 1.0).unwrap();
    let study = mixture_study(&spec, &pure, Family::Lognormal, 10_000, 100, 10, &FitConfig::default()).unwrap();
    let worse = study.worse_count();
    outcome(worse >= 90, format!("mixture KS larger in {worse}/100 seeds (≥ 90), failed {}", study.failed()))
}

/// Renders several study reports to bytes.
fn render_studies() -> Vec<u8> {
    let config = FitConfig::default();
    let mut bytes = Vec::new();
    let samples: Vec<CitationSample> = ["Control and Optimization", "Cultural Studies"]
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let s = subject(name).unwrap();
            s.lognormal().unwrap().sample(800, i as u64).with_label(*name)
        })
        .collect();
    let rows = plausibility_table(&samples, 49, 21, &config).unwrap();
    Report::new(ReportHeader::new("plausibility", "sim").seed(21), rows)
        .write(Format::Tsv, &mut bytes)
        .unwrap();
    let g = subject("Virology").unwrap().hooked().unwrap();
    let study = simulation_study(&g, 800, 12, 21, &config).unwrap();
    Report::new(ReportHeader::new("vuong", "sim").seed(21), vec![study.row("Virology")])
        .write(Format::Json, &mut bytes)
        .unwrap();
    let scale = citedist::experiments::scale_ci_study(&samples, 40, ResampleSize::Fixed(300), 21, &config).unwrap();
    Report::new(ReportHeader::new("scale", "sim").seed(21), scale)
        .write(Format::Tsv, &mut bytes)
        .unwrap();
    bytes
}

fn determinism() -> Outcome {
    let pool = |k| rayon::ThreadPoolBuilder::new().num_threads(k).build().unwrap();
    let one = pool(1).install(render_studies);
    let four = pool(4).install(render_studies);
    let again = pool(1).install(render_studies);
    outcome(
        one == four && one == again,
        format!("{} report bytes; 1 vs 4 workers {}, rerun {}", one.len(), verdict(one == four), verdict(one == again)),
    )
}

fn verdict(same: bool) -> &'static str {
    if same {
        "identical"
    } else {
        "differ"
    }
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 11] = [
        ("mean cross-check", Duration::from_secs(1), mean_crosscheck_values),
        ("normalisation", Duration::from_secs(10), normalisation),
        ("analytic KS oracle", Duration::from_secs(1), ks_oracle),
        ("round-trip fitting", Duration::from_secs(120), round_trip),
        ("KS calibration", Duration::from_secs(300), ks_calibration),
        ("Vuong, lognormal direction", Duration::from_secs(600), vuong_lognormal_direction),
        ("Vuong, hooked direction", Duration::from_secs(600), vuong_hooked_direction),
        ("power loss at n = 500", Duration::from_secs(1200), power_loss),
        ("bootstrap interval mechanics", Duration::from_secs(60), bootstrap_mechanics),
        ("mixture impurity", Duration::from_secs(300), mixture_impurity),
        ("determinism", Duration::from_secs(300), determinism),
    ];
    let mut failures = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let pass = result.pass && elapsed <= *budget;
        if !pass {
            failures += 1;
        }
        println!(
            "criterion {:>2} {:<30} {}  {} [{:.2}s, budget {}s]",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            result.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
