use noisy_cheb::analysis::stats::{log_log_slope, mean, sample_variance};
use noisy_cheb::analysis::{
    empirical_bias, empirical_variance, inf_norm_error, pointwise_bound_subexponential,
    residual_proxy, uniform_bound_subgaussian, variance_bound, BoundInputs, ResidualScaling,
};
use noisy_cheb::ls_oracle::sampling_vector;
use noisy_cheb::noise::substream_seed;
use noisy_cheb::{
    fit_function, make_grid, sample, values_to_coeffs, NoiseModel, TailClass, TargetFunction,
};

#[test]
fn sampled_noise_has_unit_variance() {
    let zero = TargetFunction::custom("zero", |_| 0.0);
    let y = sample(&zero, &NoiseModel::gaussian(1.0).unwrap(), 65535, 5).unwrap();
    assert!((sample_variance(&y) - 1.0).abs() < 0.05);
}

#[test]
fn exact_variance_never_exceeds_bound() {
    for (n, big) in [(0, 8), (5, 64), (16, 256), (40, 1000)] {
        for k in 0..50 {
            let x = -1.0 + 2.0 * k as f64 / 49.0;
            let s = sampling_vector(x, n, big).unwrap();
            let exact: f64 = s.iter().map(|v| v * v).sum();
            assert!(exact <= variance_bound(n, big, 1.0).unwrap() * (1.0 + 1e-12));
        }
    }
}

#[test]
fn empirical_variance_matches_exact() {
    let noise = NoiseModel::gaussian(1e-2).unwrap();
    let est = empirical_variance(&TargetFunction::Runge, &noise, 256, 12, 0.3, 5000, 17).unwrap();
    let ratio = est.empirical / est.exact.unwrap();
    assert!((0.85..=1.15).contains(&ratio), "{ratio}");
    assert!(est.exact.unwrap() <= est.bound.unwrap());
}

#[test]
fn bias_tracks_residual_prediction() {
    let noise = NoiseModel::gaussian(1e-3).unwrap();
    let b = empirical_bias(&TargetFunction::Runge, &noise, 256, 20, 0.3, 4000, 23).unwrap();
    assert!(
        (b.empirical - b.predicted).abs() <= 3.0 * b.standard_error,
        "{b:?}"
    );
    assert!(b.predicted.abs() <= b.bound);

    let cubic = TargetFunction::custom("cubic", |x| x * x * x - x);
    let p = empirical_bias(&cubic, &noise, 256, 3, -0.6, 2000, 29).unwrap();
    assert!(p.empirical.abs() <= 3.0 * p.standard_error);
    assert!(p.predicted.abs() < 1e-13);
}

#[test]
fn oversampling_reduces_error() {
    let noise = NoiseModel::gaussian(1e-2).unwrap();
    let err = |n: usize, seed: u64| {
        let r = fit_function(&TargetFunction::Runge, &noise, n, seed, None).unwrap();
        inf_norm_error(&r.truncated, &TargetFunction::Runge)
            .unwrap()
            .inf_norm_error
    };
    let seeds: Vec<u64> = (0..20).map(|s| substream_seed(31, s)).collect();
    let coarse = mean(&seeds.iter().map(|&s| err(1 << 8, s)).collect::<Vec<_>>());
    let fine = mean(&seeds.iter().map(|&s| err(1 << 14, s)).collect::<Vec<_>>());
    assert!(fine < coarse / 2.0, "{fine} vs {coarse}");
}

#[test]
fn error_estimate_is_density_stable() {
    let noise = NoiseModel::gaussian(1e-3).unwrap();
    let r = fit_function(&TargetFunction::Runge, &noise, 2048, 3, None).unwrap();
    let coarse = inf_norm_error(&r.truncated, &TargetFunction::Runge).unwrap();
    let dense = make_grid(2 * (coarse.grid_size - 1)).unwrap();
    let fine = dense
        .points()
        .iter()
        .map(|&x| (r.truncated.evaluate(x).unwrap() - TargetFunction::Runge.eval(x)).abs())
        .fold(0.0f64, f64::max);
    assert!((fine - coarse.inf_norm_error).abs() < 0.01 * fine);
}

#[test]
fn truncation_of_own_series_is_accurate() {
    let f = TargetFunction::custom("smooth", |x: f64| (2.0 * x).exp());
    let c = values_to_coeffs(&make_grid(64).unwrap().sample(|x| f.eval(x))).unwrap();
    assert!(
        inf_norm_error(&c.truncate(40).unwrap(), &f)
            .unwrap()
            .inf_norm_error
            < 1e-13
    );
}

#[test]
fn runge_residual_reaches_noise_scale_near_forty() {
    let r = residual_proxy(&TargetFunction::Runge, 40).unwrap();
    assert!(r.converged);
    assert!((1e-5..1e-3).contains(&r.value), "{}", r.value);
}

#[test]
fn abs3_residual_decays_cubically() {
    let degrees = [16usize, 32, 64, 128, 256, 512];
    let values: Vec<f64> = degrees
        .iter()
        .map(|&n| residual_proxy(&TargetFunction::Abs3, n).unwrap().value)
        .collect();
    let xs: Vec<f64> = degrees.iter().map(|&n| n as f64).collect();
    let slope = log_log_slope(&xs, &values);
    assert!((slope + 3.0).abs() < 0.2, "{slope}");
}

#[test]
fn laplace_pointwise_bound_values() {
    let b = 1e-3;
    let inputs = BoundInputs {
        degree: 20,
        num_intervals: 1024,
        tail: NoiseModel::laplace(b).unwrap().tail_class(),
        r_inf: 0.0,
        t: 2.0,
    };
    let x = 0.3;
    let got = pointwise_bound_subexponential(&inputs, x).unwrap();
    // ν²/α = 2b and ν²/2α² = 1
    let threshold = 2.0 * 2.0 * (2.0 * b) * (21.0f64 / 1024.0).sqrt();
    assert!((got.threshold - threshold).abs() < 1e-18);
    let s = sampling_vector(x, 20, 1024).unwrap();
    let norm_sq: f64 = s.iter().map(|v| v * v).sum();
    let max = s.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let t_star = norm_sq / (2.0 * max) * (1024.0f64 / 21.0).sqrt();
    assert!((got.t_star.unwrap() - t_star).abs() < 1e-12 * t_star);
    let want_p = if 2.0 <= t_star {
        2.0 * (-4.0f64).exp()
    } else {
        2.0 * (-2.0f64).exp()
    };
    assert!((got.probability - want_p).abs() < 1e-15);
}

#[test]
fn uniform_bound_covers_fixed_degree_fits() {
    let sigma = 1e-3;
    let (n, big) = (30, 4096);
    let proxy = residual_proxy(&TargetFunction::Runge, n).unwrap();
    let bound = uniform_bound_subgaussian(
        &BoundInputs {
            degree: n,
            num_intervals: big,
            tail: TailClass::SubGaussian { sigma },
            r_inf: proxy.value,
            t: 3.0,
        },
        ResidualScaling::Rigorous,
    )
    .unwrap();
    let noise = NoiseModel::gaussian(sigma).unwrap();
    let exceed = (0..200)
        .filter(|&t| {
            let y = sample(&TargetFunction::Runge, &noise, big, substream_seed(41, t)).unwrap();
            let p = values_to_coeffs(&y).unwrap().truncate(n).unwrap();
            inf_norm_error(&p, &TargetFunction::Runge)
                .unwrap()
                .inf_norm_error
                > bound.threshold
        })
        .count();
    let slack = 3.0 * (bound.probability.min(1.0) * 200.0).sqrt();
    assert!((exceed as f64) <= bound.probability.min(1.0) * 200.0 + slack);
}
