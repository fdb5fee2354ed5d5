//! Built-in self-validation: a fixed list of invariant checks runnable from
//! the CLI (`mcm validate`) or from tests.

use std::f64::consts::PI;
use std::path::Path;

use crate::angle::{wrap_angle, WrappedAngle};
use crate::antenna::{aod_norm_const, AntennaPattern, AodDensity};
use crate::engine::{
    estimate_aor_pdf, generate_paths, PasScale, PathCounts, Scenario,
};
use crate::geometry::{aoa_from_aod, aod_from_aoa, eccentricity};
use crate::numerics::{adaptive_simpson, gauss_legendre_10};
use crate::pdp::{normalize_power, parse_pdp_csv, rms_delay_spread, scale_delays, PdpMode};
use crate::sampling::{bessel_i0, VonMisesParams};

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check {
        name,
        passed,
        detail,
    }
}

/// Run the full check suite. `tdl_path` points at the shipped TDL-B table.
pub fn run_checks(tdl_path: &Path) -> Vec<Check> {
    let mut out = Vec::new();

    let w = wrap_angle(-PI).map(|a| a.radians()).unwrap_or(f64::NAN);
    out.push(check(
        "wrap_boundary",
        (w - PI).abs() < 1e-15,
        format!("wrap(-pi) = {w}"),
    ));

    let zero = aoa_from_aod(wrap_angle(0.0).unwrap(), 0.5)
        .map(|a| a.radians())
        .unwrap_or(f64::NAN);
    out.push(check(
        "mapping_fixed_point_zero",
        zero == 0.0,
        format!("phi_R(0) = {zero}"),
    ));

    let pi_img = aoa_from_aod(wrap_angle(PI).unwrap(), 0.5)
        .map(|a| a.radians())
        .unwrap_or(f64::NAN);
    out.push(check(
        "mapping_fixed_point_pi",
        (pi_img - PI).abs() < 1e-12,
        format!("phi_R(pi) = {pi_img}"),
    ));

    let mut contraction_ok = true;
    let mut round_trip_err: f64 = 0.0;
    for k in 1..=9 {
        let e = k as f64 / 10.0;
        for j in 1..=100 {
            let t = -PI + 2.0 * PI * j as f64 / 101.0;
            let phi = wrap_angle(t).unwrap();
            let r = aoa_from_aod(phi, e).unwrap();
            if r.radians().abs() > t.abs() + 1e-12 {
                contraction_ok = false;
            }
            let back = aod_from_aoa(r, e).unwrap().radians();
            round_trip_err = round_trip_err.max((back - t).abs());
        }
    }
    out.push(check(
        "mapping_contraction",
        contraction_ok,
        "|phi_R| <= |phi_T| over grid".into(),
    ));
    out.push(check(
        "mapping_round_trip",
        round_trip_err < 1e-10,
        format!("max round-trip error {round_trip_err:.3e}"),
    ));

    let e = eccentricity(800.0, 363e-9).unwrap_or(f64::NAN);
    let expected = 800.0 / (800.0 + 0.299792458 * 363.0);
    out.push(check(
        "eccentricity_arithmetic",
        (e - expected).abs() < 1e-12,
        format!("e(800 m, 363 ns) = {e:.6}"),
    ));

    let pat = AntennaPattern::gaussian(WrappedAngle::from_degrees(0.0).unwrap(), 58f64.to_radians())
        .expect("valid pattern");
    let half = pat.gain(WrappedAngle::from_degrees(29.0).unwrap());
    out.push(check(
        "pattern_half_power",
        (half - 0.5).abs() < 1e-12,
        format!("gain at hpbw/2 = {half}"),
    ));

    let density = AodDensity::new(pat);
    let integral = adaptive_simpson(&|x| density.pdf(wrap_angle(x).unwrap()), -PI, PI, 1e-12);
    out.push(check(
        "aod_pdf_normalized",
        (integral - 1.0).abs() < 1e-9,
        format!("integral = {integral:.12}"),
    ));

    // two independent quadrature routes for the normalization constant
    let hpbw = 10f64.to_radians();
    let g2 = |d: f64| (-8.0 * std::f64::consts::LN_2 * d * d / (hpbw * hpbw)).exp();
    let adaptive = 1.0 / adaptive_simpson(&g2, -PI, PI, 1e-12);
    let panels = 256;
    let composite: f64 = 1.0
        / (0..panels)
            .map(|i| {
                let a = -PI + 2.0 * PI * i as f64 / panels as f64;
                let b = -PI + 2.0 * PI * (i + 1) as f64 / panels as f64;
                gauss_legendre_10(&g2, a, b)
            })
            .sum::<f64>();
    let via_pattern = aod_norm_const(
        &AntennaPattern::gaussian(WrappedAngle::from_degrees(0.0).unwrap(), hpbw).unwrap(),
    );
    out.push(check(
        "norm_const_two_routes",
        (adaptive - composite).abs() < 1e-10 * composite && (via_pattern - adaptive).abs() < 1e-12,
        format!("adaptive {adaptive:.9} vs composite {composite:.9}"),
    ));

    let i0 = bessel_i0(1.0).unwrap_or(f64::NAN);
    out.push(check(
        "bessel_i0_at_one",
        (i0 - 1.2660658777520084).abs() < 1e-12,
        format!("I0(1) = {i0:.13}"),
    ));

    let vm = VonMisesParams::new(10.0).expect("valid params");
    let vm_int = adaptive_simpson(&|x| vm.pdf(wrap_angle(x).unwrap()), -PI, PI, 1e-12);
    out.push(check(
        "von_mises_normalized",
        (vm_int - 1.0).abs() < 1e-9,
        format!("integral = {vm_int:.12}"),
    ));

    // TDL-B data file checks
    match std::fs::read_to_string(tdl_path)
        .map_err(|e| format!("read {}: {e}", tdl_path.display()))
        .and_then(|text| parse_pdp_csv(&text).map_err(|e| e.to_string()))
    {
        Ok(taps) => {
            let first_zero = taps.first().map(|t| t.delay == 0.0).unwrap_or(false);
            out.push(check(
                "tdl_first_tap_zero_delay",
                first_zero,
                format!("first delay = {:?}", taps.first().map(|t| t.delay)),
            ));
            match scale_delays(&taps, PdpMode::Absolute, 1.0) {
                Ok(pdp) => {
                    let ds = rms_delay_spread(&pdp);
                    out.push(check(
                        "tdl_normalized_rms_ds",
                        (ds - 1.0).abs() < 1e-3,
                        format!("normalized rms DS = {ds:.6}"),
                    ));
                }
                Err(e) => out.push(check("tdl_normalized_rms_ds", false, e.to_string())),
            }
        }
        Err(e) => {
            out.push(check("tdl_first_tap_zero_delay", false, e.clone()));
            out.push(check("tdl_normalized_rms_ds", false, e));
        }
    }

    let linear = 10f64.powf(-3.0 / 10.0);
    out.push(check(
        "db_to_linear",
        (linear - 0.501187).abs() < 1e-6,
        format!("-3 dB -> {linear:.9}"),
    ));

    // end-to-end mini run: histogram normalization and determinism
    match mini_run(1) {
        Ok((integral_a, fingerprint_a)) => {
            out.push(check(
                "histogram_bin_sum",
                (integral_a - 1.0).abs() < 1e-9,
                format!("AOR-PDF bin sum = {integral_a:.12}"),
            ));
            let same = mini_run(1).map(|(_, f)| f == fingerprint_a).unwrap_or(false);
            out.push(check(
                "run_determinism",
                same,
                "two seeded runs bit-identical".into(),
            ));
        }
        Err(e) => {
            out.push(check("histogram_bin_sum", false, e.to_string()));
            out.push(check("run_determinism", false, "mini run failed".into()));
        }
    }

    out
}

fn mini_run(seed: u64) -> crate::error::Result<(f64, Vec<u64>)> {
    let taps = parse_pdp_csv("tap,delay,power_db\n1,0,0\n2,1,-3\n")?;
    let pdp = normalize_power(&scale_delays(&taps, PdpMode::Normalized, 363e-9)?);
    let s = Scenario {
        distance_m: 400.0,
        kappa: 0.0,
        mu: 10.0,
        tx: AntennaPattern::gaussian(WrappedAngle::from_degrees(180.0)?, 60f64.to_radians())?,
        rx: AntennaPattern::gaussian(WrappedAngle::from_degrees(0.0)?, 60f64.to_radians())?,
        pdp,
        paths_per_cluster: PathCounts::Uniform(400),
        bin_half_width: 1.0f64.to_radians(),
        seed,
        pas_scale: PasScale::InputPower,
        carrier_hz: 2.6e9,
    };
    let paths = generate_paths(&s)?;
    let aor = estimate_aor_pdf(&s, &paths)?;
    let fingerprint = aor.values.iter().map(|v| v.to_bits()).collect();
    Ok((aor.integral(), fingerprint))
}
