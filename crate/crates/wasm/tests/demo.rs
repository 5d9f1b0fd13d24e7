use streamlens_wasm::{hurst_svg, multifractal_svg, parse_csv, scalogram_svg, synthesize};

#[test]
fn synthesize_is_seeded() {
    let a = synthesize("fbm", 1024, 3, 0.7).unwrap();
    assert_eq!(a.len(), 1024);
    assert_eq!(a, synthesize("fbm", 1024, 3, 0.7).unwrap());
    assert_ne!(a, synthesize("fbm", 1024, 4, 0.7).unwrap());
    assert!(synthesize("pink", 1024, 0, 0.0).is_err());
}

#[test]
fn parse_csv_takes_last_column() {
    assert_eq!(parse_csv("t,v\n0,1.5\n1,-2\n2,3\n").unwrap(), [1.5, -2.0, 3.0]);
    assert!(parse_csv("t,v\n0,a\n").is_err());
}

#[test]
fn scalogram_renders_svg() {
    let x = synthesize("brownian", 512, 1, 0.0).unwrap();
    for wavelet in ["mexican_hat", "morlet", "haar", "gaussian_wave"] {
        let svg = scalogram_svg(&x, wavelet, 24).unwrap();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"), "{wavelet}");
        assert!(svg.contains("stroke-dasharray"), "cone of influence missing for {wavelet}");
    }
    assert!(scalogram_svg(&x, "shannon", 24).is_err());
}

#[test]
fn hurst_title_reports_the_exponent() {
    let x = synthesize("fbm", 4096, 11, 0.7).unwrap();
    let svg = hurst_svg(&x).unwrap();
    let title = svg.split("H = ").nth(1).unwrap();
    let h: f64 = title[..5].parse().unwrap();
    assert!((0.6..=0.8).contains(&h), "{h}");
}

#[test]
fn multifractal_methods_render() {
    let cascade = synthesize("binomial_cascade", 4096, 0, 0.7).unwrap();
    for method in ["oscillation", "wtmm"] {
        let svg = multifractal_svg(&cascade, method, true).unwrap();
        assert!(svg.contains(&format!("({method})")));
        assert_eq!(svg.matches("<circle").count(), 64, "{method}");
    }
    let noise = synthesize("white_noise", 4096, 0, 0.0).unwrap();
    assert!(multifractal_svg(&noise, "mfdfa", false).unwrap().contains("(mfdfa)"));
    assert!(multifractal_svg(&noise, "box", false).is_err());
    assert!(multifractal_svg(&noise[..8], "oscillation", false).is_err());
}
