use circopula::sampling::SampleSet;
use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

/// Failure reading a pair file: either the file itself, or its content.
/// The two map to different exit codes, so the distinction is kept.
#[derive(Debug)]
pub enum ReadError {
    Io(io::Error),
    Malformed { line: usize, reason: String },
}

impl fmt::Display for ReadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReadError::Io(e) => write!(f, "{e}"),
            ReadError::Malformed { line, reason } => write!(f, "line {line}: {reason}"),
        }
    }
}

/// Writes a sample as CSV: one `# meta:` comment with every parameter
/// and the seed, a `theta,phi` header, then one pair per line at 17
/// significant digits so the values parse back bit-identical.
pub fn write_sample(path: &Path, set: &SampleSet) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    let c = &set.config;
    writeln!(
        w,
        "# meta: gamma={} a={} b={} rho_theta={} mu_theta={} rho_phi={} mu_phi={} n={} seed={}",
        c.gamma,
        c.a,
        c.b,
        c.rho_theta,
        c.mu_theta.radians(),
        c.rho_phi,
        c.mu_phi.radians(),
        c.n,
        c.seed,
    )?;
    writeln!(w, "theta,phi")?;
    for (t, p) in &set.pairs {
        writeln!(w, "{:.16e},{:.16e}", t.radians(), p.radians())?;
    }
    w.flush()
}

/// Reads `theta,phi` rows back. Comment lines and the header are
/// skipped wherever they appear; everything else must be exactly two
/// comma-separated finite numbers.
pub fn read_pairs(path: &Path) -> Result<Vec<(f64, f64)>, ReadError> {
    let reader = BufReader::new(File::open(path).map_err(ReadError::Io)?);
    let mut rows = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(ReadError::Io)?;
        let text = line.trim_end_matches('\r');
        if text.is_empty() || text.starts_with('#') || text == "theta,phi" {
            continue;
        }
        let mut parts = text.split(',');
        let (Some(first), Some(second), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(ReadError::Malformed {
                line: idx + 1,
                reason: "expected exactly two comma-separated values".into(),
            });
        };
        let theta = parse_coordinate(first, idx + 1)?;
        let phi = parse_coordinate(second, idx + 1)?;
        rows.push((theta, phi));
    }
    Ok(rows)
}

fn parse_coordinate(field: &str, line: usize) -> Result<f64, ReadError> {
    let value: f64 = field.trim().parse().map_err(|_| ReadError::Malformed {
        line,
        reason: format!("`{field}` is not a number"),
    })?;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(ReadError::Malformed {
            line,
            reason: format!("`{field}` is not finite"),
        })
    }
}
