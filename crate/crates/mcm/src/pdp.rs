//! Power delay profile ingestion: parse TDL-style tap tables, scale
//! normalized delays by an rms delay spread, and normalize total power.
//!
//! File format: UTF-8 CSV with header `tap,delay,power_db`; `#` lines are
//! comments. Powers are dB (usually non-positive); delays are DS-multiples in
//! normalized mode and seconds in absolute mode. Powers in linear units are
//! not accepted, so there is no unit ambiguity.

use crate::error::{McmError, Result};

/// One PDP cluster after ingestion. Cluster 0 is the zero-delay local
/// cluster; clusters are sorted strictly increasing in delay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdpCluster {
    pub index: usize,
    pub delay_s: f64,
    pub power: f64,
}

/// An ingested power delay profile.
#[derive(Debug, Clone, PartialEq)]
pub struct Pdp {
    clusters: Vec<PdpCluster>,
    total_power: f64,
}

impl Pdp {
    pub fn clusters(&self) -> &[PdpCluster] {
        &self.clusters
    }

    /// Total received power P_R (linear).
    pub fn total_power(&self) -> f64 {
        self.total_power
    }

    /// Delayed clusters only (index >= 1).
    pub fn delayed(&self) -> &[PdpCluster] {
        &self.clusters[1..]
    }

    pub fn local(&self) -> &PdpCluster {
        &self.clusters[0]
    }
}

/// Delay interpretation of a raw tap table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PdpMode {
    /// Delays are multiples of the rms delay spread; scale by DS on ingest.
    Normalized,
    /// Delays are already seconds.
    Absolute,
}

/// A parsed tap row, delays still in file units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawTap {
    pub tap: usize,
    pub delay: f64,
    pub power_db: f64,
}

/// Parse a PDP CSV. Rows keep file order; rows with exactly equal delay are
/// merged by linear power addition (the ellipse family needs strictly
/// increasing delays).
pub fn parse_pdp_csv(text: &str) -> Result<Vec<RawTap>> {
    let mut taps: Vec<RawTap> = Vec::new();
    let mut saw_header = false;
    let mut last_tap = 0usize;
    for (lineno, line) in text.lines().enumerate() {
        let line_num = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if !saw_header {
            if trimmed != "tap,delay,power_db" {
                return Err(McmError::PdpParse {
                    line: line_num,
                    reason: format!("expected header 'tap,delay,power_db', got '{trimmed}'"),
                });
            }
            saw_header = true;
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(McmError::PdpParse {
                line: line_num,
                reason: format!("expected 3 fields, got {}", fields.len()),
            });
        }
        let tap: usize = fields[0].parse().map_err(|_| McmError::PdpParse {
            line: line_num,
            reason: format!("bad tap index '{}'", fields[0]),
        })?;
        let delay: f64 = fields[1].parse().map_err(|_| McmError::PdpParse {
            line: line_num,
            reason: format!("bad delay '{}'", fields[1]),
        })?;
        let power_db: f64 = fields[2].parse().map_err(|_| McmError::PdpParse {
            line: line_num,
            reason: format!("bad power '{}'", fields[2]),
        })?;
        if !delay.is_finite() || delay < 0.0 {
            return Err(McmError::PdpParse {
                line: line_num,
                reason: format!("negative or non-finite delay {delay}"),
            });
        }
        if !power_db.is_finite() {
            return Err(McmError::PdpParse {
                line: line_num,
                reason: format!("non-finite power {power_db}"),
            });
        }
        if tap <= last_tap {
            return Err(McmError::PdpParse {
                line: line_num,
                reason: format!("tap indices must increase, got {tap} after {last_tap}"),
            });
        }
        last_tap = tap;
        taps.push(RawTap {
            tap,
            delay,
            power_db,
        });
    }
    if !saw_header {
        return Err(McmError::PdpParse {
            line: 0,
            reason: "missing header 'tap,delay,power_db'".into(),
        });
    }
    Ok(taps)
}

/// Convert a raw tap table into the cluster representation, scaling delays by
/// `ds_s` in normalized mode (absolute mode passes delays through; `ds_s` is
/// ignored then). Taps are sorted by delay and equal delays merged.
pub fn scale_delays(taps: &[RawTap], mode: PdpMode, ds_s: f64) -> Result<Pdp> {
    if mode == PdpMode::Normalized && !(ds_s > 0.0) {
        return Err(McmError::NonPositiveDelaySpread(ds_s));
    }
    let mut rows: Vec<(f64, f64)> = taps
        .iter()
        .map(|t| {
            let delay = match mode {
                PdpMode::Normalized => t.delay * ds_s,
                PdpMode::Absolute => t.delay,
            };
            (delay, 10f64.powf(t.power_db / 10.0))
        })
        .collect();
    rows.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    let mut clusters: Vec<PdpCluster> = Vec::new();
    for (delay, power) in rows {
        match clusters.last_mut() {
            Some(last) if last.delay_s == delay => last.power += power,
            _ => clusters.push(PdpCluster {
                index: clusters.len(),
                delay_s: delay,
                power,
            }),
        }
    }
    // re-index after merging
    for (i, c) in clusters.iter_mut().enumerate() {
        c.index = i;
    }
    if clusters.is_empty() || clusters[0].delay_s != 0.0 {
        let earliest = clusters.first().map(|c| c.delay_s).unwrap_or(f64::NAN);
        return Err(McmError::MissingZeroDelayCluster(earliest));
    }
    if clusters.len() < 2 {
        return Err(McmError::TooFewClusters(clusters.len()));
    }
    let total_power = clusters.iter().map(|c| c.power).sum();
    Ok(Pdp {
        clusters,
        total_power,
    })
}

/// Rescale all cluster powers so the total is exactly 1.
pub fn normalize_power(pdp: &Pdp) -> Pdp {
    let scale = 1.0 / pdp.total_power;
    let clusters = pdp
        .clusters
        .iter()
        .map(|c| PdpCluster {
            power: c.power * scale,
            ..*c
        })
        .collect();
    Pdp {
        clusters,
        total_power: 1.0,
    }
}

/// Power-weighted rms delay spread of the profile, seconds.
pub fn rms_delay_spread(pdp: &Pdp) -> f64 {
    let total = pdp.total_power;
    let mean: f64 = pdp
        .clusters
        .iter()
        .map(|c| c.power * c.delay_s)
        .sum::<f64>()
        / total;
    let var: f64 = pdp
        .clusters
        .iter()
        .map(|c| c.power * (c.delay_s - mean).powi(2))
        .sum::<f64>()
        / total;
    var.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOY: &str = "# comment\ntap,delay,power_db\n1,0.0,0\n2,1.0,-3\n";

    #[test]
    fn parses_rows_and_comments() {
        let taps = parse_pdp_csv(TOY).unwrap();
        assert_eq!(taps.len(), 2);
        assert_eq!(taps[0], RawTap { tap: 1, delay: 0.0, power_db: 0.0 });
        assert_eq!(taps[1].power_db, -3.0);
    }

    #[test]
    fn db_to_linear() {
        let pdp = scale_delays(&parse_pdp_csv(TOY).unwrap(), PdpMode::Normalized, 100e-9).unwrap();
        assert!((pdp.clusters()[1].power - 0.501187).abs() < 1e-6);
        // round trip back to dB
        let db = 10.0 * pdp.clusters()[1].power.log10();
        assert!((db - (-3.0)).abs() < 1e-10);
    }

    #[test]
    fn delay_scaling() {
        let taps = parse_pdp_csv("tap,delay,power_db\n1,0,0\n2,2.5,-1\n").unwrap();
        let pdp = scale_delays(&taps, PdpMode::Normalized, 100e-9).unwrap();
        assert!((pdp.clusters()[1].delay_s - 250e-9).abs() < 1e-18);
        let abs = scale_delays(&taps, PdpMode::Absolute, 1.0).unwrap();
        assert_eq!(abs.clusters()[1].delay_s, 2.5);
        assert!(scale_delays(&taps, PdpMode::Normalized, 0.0).is_err());
    }

    #[test]
    fn equal_delays_merge_by_linear_sum() {
        let taps =
            parse_pdp_csv("tap,delay,power_db\n1,0,0\n2,1.0,-3.0103\n3,1.0,-3.0103\n").unwrap();
        let pdp = scale_delays(&taps, PdpMode::Absolute, 1.0).unwrap();
        assert_eq!(pdp.clusters().len(), 2);
        assert!((pdp.clusters()[1].power - 1.0).abs() < 1e-4);
    }

    #[test]
    fn unsorted_delays_are_sorted() {
        let taps = parse_pdp_csv("tap,delay,power_db\n1,0,0\n2,2.0,-4\n3,1.0,-2\n").unwrap();
        let pdp = scale_delays(&taps, PdpMode::Absolute, 1.0).unwrap();
        let delays: Vec<f64> = pdp.clusters().iter().map(|c| c.delay_s).collect();
        assert_eq!(delays, vec![0.0, 1.0, 2.0]);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = parse_pdp_csv("tap,delay,power_db\n1,0,0\n2,-1.0,0\n").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let err = parse_pdp_csv("tap,delay,power_db\n2,0,0\n1,1,0\n").unwrap_err();
        assert!(err.to_string().contains("tap indices"), "{err}");
        assert!(parse_pdp_csv("tap,delay,power_db\n1,0\n").is_err());
        assert!(parse_pdp_csv("nope\n").is_err());
    }

    #[test]
    fn missing_zero_delay_cluster_rejected() {
        let taps = parse_pdp_csv("tap,delay,power_db\n1,0.5,0\n2,1.0,-2\n").unwrap();
        let err = scale_delays(&taps, PdpMode::Absolute, 1.0).unwrap_err();
        assert!(matches!(err, McmError::MissingZeroDelayCluster(_)));
    }

    #[test]
    fn single_cluster_rejected() {
        let taps = parse_pdp_csv("tap,delay,power_db\n1,0,0\n").unwrap();
        assert!(matches!(
            scale_delays(&taps, PdpMode::Absolute, 1.0),
            Err(McmError::TooFewClusters(1))
        ));
    }

    #[test]
    fn normalization() {
        let taps = parse_pdp_csv("tap,delay,power_db\n1,0,3.0103\n2,1,3.0103\n").unwrap();
        let pdp = normalize_power(&scale_delays(&taps, PdpMode::Absolute, 1.0).unwrap());
        assert_eq!(pdp.total_power(), 1.0);
        let sum: f64 = pdp.clusters().iter().map(|c| c.power).sum();
        assert!((sum - 1.0).abs() < 1e-12);
        assert!((pdp.clusters()[0].power - 0.5).abs() < 1e-9);
    }

    #[test]
    fn rms_ds_two_equal_taps() {
        // equal powers at 0 and 1: mean 0.5, rms 0.5
        let taps = parse_pdp_csv("tap,delay,power_db\n1,0,0\n2,1,0\n").unwrap();
        let pdp = scale_delays(&taps, PdpMode::Absolute, 1.0).unwrap();
        assert!((rms_delay_spread(&pdp) - 0.5).abs() < 1e-12);
    }
}
