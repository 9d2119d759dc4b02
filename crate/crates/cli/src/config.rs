//! Flat key-value config files and the μ sweep / source registries.
//!
//! Config format: one `key = value` pair per line, `#` comments. Flags
//! override file values; the resolved pairs are echoed into every output
//! header so runs are reproducible from their own artifacts.

use std::collections::BTreeMap;
use std::path::Path;

use hardy_core::profile::RadialFunction;
use hardy_core::HardyParams;

pub fn parse_config_file(path: &Path) -> Result<BTreeMap<String, String>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!(
                "config {}:{}: expected `key = value`",
                path.display(),
                lineno + 1
            ));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// Parses a μ sweep list: comma-separated entries, each a plain number or
/// `mu0`, `mu0+X`, `mu0-X` relative to the threshold of the given dimension.
pub fn parse_mu_list(spec: &str, dim: u32) -> Result<Vec<f64>, String> {
    let mu0 = -((dim as f64 - 2.0) / 2.0).powi(2);
    let mut out = Vec::new();
    for tok in spec.split(',') {
        let t = tok.trim();
        let value = if t == "mu0" {
            mu0
        } else if let Some(rest) = t.strip_prefix("mu0+") {
            mu0 + rest
                .parse::<f64>()
                .map_err(|e| format!("bad mu entry `{t}`: {e}"))?
        } else if let Some(rest) = t.strip_prefix("mu0-") {
            mu0 - rest
                .parse::<f64>()
                .map_err(|e| format!("bad mu entry `{t}`: {e}"))?
        } else {
            t.parse::<f64>()
                .map_err(|e| format!("bad mu entry `{t}`: {e}"))?
        };
        out.push(value);
    }
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    Ok(out)
}

pub fn parse_f64_list(spec: &str) -> Result<Vec<f64>, String> {
    spec.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad number `{t}`: {e}"))
        })
        .collect()
}

/// Named source registry.
///
/// `power:S` is specified relative to the critical exponent: it denotes
/// r^{τ₋ - 2 + S}, so the same config probes the same side of the sharp
/// threshold at every μ.
pub fn make_source(
    name: &str,
    params: &HardyParams<f64>,
    radius: f64,
) -> Result<RadialFunction<f64>, String> {
    if name == "zero" {
        return Ok(RadialFunction::zero(radius));
    }
    if name == "const" {
        return Ok(RadialFunction::constant(1.0, radius));
    }
    if let Some(c) = name.strip_prefix("const:") {
        let c: f64 = c.parse().map_err(|e| format!("bad const source: {e}"))?;
        return Ok(RadialFunction::constant(c, radius));
    }
    if let Some(shift) = name.strip_prefix("power:") {
        let shift: f64 = shift
            .parse()
            .map_err(|e| format!("bad power source: {e}"))?;
        let tau_minus = params
            .singular_exponent()
            .map_err(|e| format!("power source needs mu >= mu0: {e}"))?;
        return Ok(RadialFunction::power(tau_minus - 2.0 + shift, radius));
    }
    if let Some(freq) = name.strip_prefix("sin:") {
        let k: f64 = freq.parse().map_err(|e| format!("bad sin source: {e}"))?;
        let scale = std::f64::consts::PI * k / radius;
        return Ok(RadialFunction::with_derivatives(
            move |r: f64| (scale * r).sin(),
            move |r: f64| scale * (scale * r).cos(),
            move |r: f64| -scale * scale * (scale * r).sin(),
            radius,
        ));
    }
    if let Some(path) = name.strip_prefix("table:") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read source table {path}: {e}"))?;
        let mut pts: Vec<(f64, f64)> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with('r') {
                continue;
            }
            let mut it = line.split(',');
            let r: f64 = it
                .next()
                .ok_or("table row missing r")?
                .trim()
                .parse()
                .map_err(|e| format!("bad table r: {e}"))?;
            let v: f64 = it
                .next()
                .ok_or("table row missing value")?
                .trim()
                .parse()
                .map_err(|e| format!("bad table value: {e}"))?;
            pts.push((r, v));
        }
        if pts.len() < 2 {
            return Err("source table needs at least two rows".into());
        }
        pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        return Ok(RadialFunction::from_fn(
            move |r: f64| {
                let i = pts.partition_point(|p| p.0 < r).clamp(1, pts.len() - 1);
                let (r0, v0) = pts[i - 1];
                let (r1, v1) = pts[i];
                if r1 == r0 {
                    v0
                } else {
                    v0 + (v1 - v0) * (r - r0) / (r1 - r0)
                }
            },
            radius,
        ));
    }
    Err(format!(
        "unknown source `{name}` (expected zero | const[:c] | power:S | sin:K | table:PATH)"
    ))
}
