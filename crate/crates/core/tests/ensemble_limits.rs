use wgqed::analytic::pw_chiral_exact;
use wgqed::continuum::{pw_from_field, solve_continuum, DensityProfile};
use wgqed::dynamics::simulate_decay;
use wgqed::montecarlo::{average_decay, AverageSpec, PositionDistribution};
use wgqed::{linspace, AtomEnsemble, WaveguideKind};

fn rms(a: &[f64], b: &[f64]) -> f64 {
    (a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>() / a.len() as f64).sqrt()
}

fn continuum_pw(profile: &DensityProfile, spacing: f64, times: &[f64]) -> Vec<f64> {
    let grid = profile.default_grid(spacing).unwrap();
    let field = solve_continuum(profile, 1.0 / profile.total, &grid, times, WaveguideKind::Bidirectional).unwrap();
    pw_from_field(&field, profile).unwrap().p_w
}

fn spec(kind: WaveguideKind, n: usize, sigma: f64, m: usize, seed: u64) -> AverageSpec {
    AverageSpec {
        kind,
        gamma: 1.0 / n as f64,
        distribution: PositionDistribution::Gaussian { mean: 0.0, sigma_phase: sigma },
        n_atoms: n,
        realizations: m,
        seed,
        keep_realizations: false,
    }
}

#[test]
fn long_samples_forget_the_density_shape() {
    let times = linspace(0.0, 20.0, 101);
    let uniform = continuum_pw(&DensityProfile::uniform(1e3, 100.0).unwrap(), 0.2, &times);
    let gaussian = continuum_pw(&DensityProfile::gaussian(1e3, 100.0).unwrap(), 0.2, &times);
    let err = rms(&uniform, &gaussian);
    assert!(err <= 0.02, "uniform vs gaussian RMS {err}");
}

#[test]
fn halving_the_grid_spacing_barely_moves_p_w() {
    let times = linspace(0.0, 20.0, 41);
    let profile = DensityProfile::gaussian(300.0, 100.0).unwrap();
    let coarse = continuum_pw(&profile, 0.2, &times);
    let fine = continuum_pw(&profile, 0.1, &times);
    let worst = coarse.iter().zip(&fine).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    assert!(worst <= 1e-4, "grid refinement changes P_W by {worst}");
}

#[test]
fn continuum_matches_disorder_average() {
    let times = linspace(0.0, 20.0, 101);
    let continuum = continuum_pw(&DensityProfile::gaussian(1e3, 100.0).unwrap(), 0.2, &times);
    let avg = average_decay(&spec(WaveguideKind::Bidirectional, 100, 1e3, 100, 5), &times).unwrap();
    let err = rms(&continuum, &avg.mean_curve.p_w);
    assert!(err <= 0.05, "continuum vs Monte Carlo RMS {err}");
}

#[test]
fn standard_error_scales_as_inverse_root_m() {
    let times = linspace(0.0, 10.0, 41);
    let full = average_decay(&spec(WaveguideKind::Bidirectional, 2, 1e3, 800, 21), &times).unwrap();
    let half = average_decay(&spec(WaveguideKind::Bidirectional, 2, 1e3, 400, 21), &times).unwrap();
    // skip t = 0, where every realization starts at 1
    let ratios: Vec<f64> = (1..times.len()).map(|i| half.p_w_stderr[i] / full.p_w_stderr[i]).collect();
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    assert!((1.3..=1.6).contains(&mean), "mean stderr ratio {mean}");
}

#[test]
fn chiral_averaging_is_a_no_op() {
    let times = linspace(0.0, 15.0, 61);
    let avg = average_decay(&spec(WaveguideKind::Chiral, 6, 50.0, 20, 8), &times).unwrap();
    let single = simulate_decay(&AtomEnsemble::new(vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0], 1.0 / 6.0, WaveguideKind::Chiral).unwrap(), &times).unwrap();
    for (i, &t) in times.iter().enumerate() {
        assert!((avg.mean_curve.p_w[i] - single.p_w[i]).abs() <= 1e-10, "t = {t}");
        assert!((single.p_w[i] - pw_chiral_exact(6, 1.0 / 6.0, t).unwrap()).abs() <= 1e-10);
    }
}
