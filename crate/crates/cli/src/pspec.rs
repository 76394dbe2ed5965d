//! Text form of a periodic map:
//!
//! ```text
//! const:<v>
//! fourier:<a0>[;<a_j>,<b_j>]...
//! ```
//!
//! The j-th `;`-separated pair is harmonic j (1-based).

use fneq_core::PeriodicMap;

use crate::CliError;

pub fn parse(text: &str) -> Result<PeriodicMap, CliError> {
    let text = text.trim();
    if let Some(v) = text.strip_prefix("const:") {
        return PeriodicMap::new(number(v, "constant")?, Vec::new()).map_err(CliError::from);
    }
    let Some(body) = text.strip_prefix("fourier:") else {
        return Err(CliError::usage(format!("p-spec {text:?} must start with const: or fourier:")));
    };
    let mut parts = body.split(';');
    let a0 = number(parts.next().unwrap_or(""), "a0")?;
    let harmonics = parts
        .enumerate()
        .map(|(j, pair)| {
            if pair.trim().is_empty() {
                return Err(CliError::usage(format!("harmonic {} is empty", j + 1)));
            }
            let (a, b) =
                pair.split_once(',').ok_or_else(|| CliError::usage(format!("harmonic {} needs a_j,b_j", j + 1)))?;
            Ok((number(a, "a_j")?, number(b, "b_j")?))
        })
        .collect::<Result<Vec<_>, _>>()?;
    PeriodicMap::new(a0, harmonics).map_err(CliError::from)
}

pub fn render(p: &PeriodicMap) -> String {
    if p.degree() == 0 {
        return format!("const:{}", fmt_num(p.a0()));
    }
    let mut out = format!("fourier:{}", fmt_num(p.a0()));
    for &(a, b) in p.harmonics() {
        out.push_str(&format!(";{},{}", fmt_num(a), fmt_num(b)));
    }
    out
}

fn number(field: &str, what: &str) -> Result<f64, CliError> {
    let field = field.trim();
    let v: f64 = field.parse().map_err(|_| CliError::usage(format!("{what} {field:?} is not a number")))?;
    if !v.is_finite() {
        return Err(CliError::usage(format!("{what} must be finite")));
    }
    Ok(v)
}

/// Shortest text that parses back to the same binary64.
fn fmt_num(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-4..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}
