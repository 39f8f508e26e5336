use wgqed_web::{chiral_plot, continuum_plot, disorder_plot};

#[test]
fn chiral_curves_start_at_one_and_converge() {
    let plot = chiral_plot(5000, 20.0, 201).unwrap();
    let exact = plot.get("finite N").unwrap();
    let bessel = plot.get("N → ∞").unwrap();
    assert_eq!(exact[0], 1.0);
    assert_eq!(bessel[0], 1.0);
    for (a, b) in exact.iter().zip(bessel) {
        assert!((a - b).abs() < 1e-3);
    }
    let longtime = plot.get("long time").unwrap();
    assert!(longtime[0].is_nan());
    assert!(longtime[200].is_finite());
    assert_eq!(plot.names().len(), 3);
}

#[test]
fn disorder_average_is_reproducible() {
    let a = disorder_plot(10, 100.0, 20, 4, 10.0, 51).unwrap();
    let b = disorder_plot(10, 100.0, 20, 4, 10.0, 51).unwrap();
    assert_eq!(a, b);
    let mean = a.get("bidirectional average").unwrap();
    let upper = a.get("+1 s.e.").unwrap();
    assert!(mean.iter().zip(upper).all(|(m, u)| u >= m));
    assert!((mean[0] - 1.0).abs() < 1e-12);
}

#[test]
fn continuum_field_matches_bessel_profile() {
    let plot = continuum_plot(4.0, 2000.0, 101).unwrap();
    let x = plot.x_values();
    assert_eq!(x[0], 0.0);
    assert_eq!(*x.last().unwrap(), 1.0);
    let numeric = plot.get("numerical").unwrap();
    let exact = plot.get("Bessel field").unwrap();
    for (a, b) in numeric.iter().zip(exact) {
        assert!((a - b).abs() < 1e-2, "{a} vs {b}");
    }
}

#[test]
fn limits_are_enforced() {
    assert!(chiral_plot(0, 10.0, 10).is_err());
    assert!(chiral_plot(3, -1.0, 10).is_err());
    assert!(disorder_plot(1000, 10.0, 10, 0, 5.0, 10).is_err());
    assert!(continuum_plot(1.0, 1e7, 10).is_err());
}
