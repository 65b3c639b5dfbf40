//! File formats: the `FRH1` binary sample container, CSV exports, and PGM
//! image dumps.
//!
//! Binary layout: magic `FRH1`, one kind byte (1 = curve, 2 = surface), the
//! grid exponent as a little-endian u32, then the samples as little-endian
//! f64 in row-major order (`values[i][j]`, `i` outermost).  CSV exports are
//! plain text with `# key=value` header lines carrying provenance.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read as _, Write as _};
use std::path::Path;

use crate::boxdim::ScaleTable;
use crate::error::{Error, Result};
use crate::experiments::{CensusRow, LambdaSweep};
use crate::real::Real;
use crate::sampling::{axis_len, SampledCurve, SampledSurface};

const MAGIC: &[u8; 4] = b"FRH1";
const KIND_CURVE: u8 = 1;
const KIND_SURFACE: u8 = 2;

/// A sample of either kind, as read back from an `FRH1` file.
#[derive(Debug, Clone)]
pub enum Sample {
    Curve(SampledCurve<f64>),
    Surface(SampledSurface<f64>),
}

impl Sample {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Sample::Curve(_) => "curve",
            Sample::Surface(_) => "surface",
        }
    }
    pub fn grid_exponent(&self) -> u32 {
        match self {
            Sample::Curve(c) => c.n(),
            Sample::Surface(s) => s.n(),
        }
    }
}

fn write_header(out: &mut impl std::io::Write, kind: u8, n: u32) -> Result<()> {
    out.write_all(MAGIC)?;
    out.write_all(&[kind])?;
    out.write_all(&n.to_le_bytes())?;
    Ok(())
}

pub fn write_curve<T: Real>(path: &Path, c: &SampledCurve<T>) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write_header(&mut out, KIND_CURVE, c.n())?;
    for &v in c.values() {
        out.write_all(&v.to_f64_lossy().to_le_bytes())?;
    }
    Ok(())
}

pub fn write_surface<T: Real>(path: &Path, s: &SampledSurface<T>) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write_header(&mut out, KIND_SURFACE, s.n())?;
    for &v in s.values() {
        out.write_all(&v.to_f64_lossy().to_le_bytes())?;
    }
    Ok(())
}

pub fn read_sample(path: &Path) -> Result<Sample> {
    let mut input = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 4];
    input.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Format(format!("bad magic {magic:?}, expected FRH1")));
    }
    let mut kind = [0u8; 1];
    input.read_exact(&mut kind)?;
    let mut n_bytes = [0u8; 4];
    input.read_exact(&mut n_bytes)?;
    let n = u32::from_le_bytes(n_bytes);
    let len = axis_len(n);
    let count = match kind[0] {
        KIND_CURVE => len,
        KIND_SURFACE => len * len,
        other => return Err(Error::Format(format!("unknown kind byte {other}"))),
    };
    let mut values = Vec::with_capacity(count);
    let mut buf = [0u8; 8];
    for _ in 0..count {
        input.read_exact(&mut buf)?;
        values.push(f64::from_le_bytes(buf));
    }
    match kind[0] {
        KIND_CURVE => Ok(Sample::Curve(SampledCurve::from_values(n, values)?)),
        _ => Ok(Sample::Surface(SampledSurface::from_values(n, values)?)),
    }
}

fn write_provenance(out: &mut impl std::io::Write, provenance: &str) -> Result<()> {
    for line in provenance.lines() {
        if !line.is_empty() {
            writeln!(out, "# {line}")?;
        }
    }
    Ok(())
}

/// CSV export of a curve: header comments, then one `x,value` row per
/// sample.
pub fn write_curve_csv<T: Real>(path: &Path, c: &SampledCurve<T>, provenance: &str) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write_provenance(&mut out, provenance)?;
    writeln!(out, "x,value")?;
    for i in 0..c.len() {
        writeln!(out, "{},{}", c.x(i).to_f64_lossy(), c.value(i).to_f64_lossy())?;
    }
    Ok(())
}

/// CSV export of a surface: header comments, then one row per grid line
/// (fixed `x`), columns running along `y`.
pub fn write_surface_csv<T: Real>(
    path: &Path,
    s: &SampledSurface<T>,
    provenance: &str,
) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write_provenance(&mut out, provenance)?;
    for i in 0..s.width() {
        let row: Vec<String> = s
            .row(i)
            .iter()
            .map(|v| format!("{}", v.to_f64_lossy()))
            .collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

/// CSV export of a per-scale table: columns
/// `m, delta, range_sum, box_count, lower_bound_rhs, upper_bound_rhs`.
pub fn write_scale_table_csv<T: Real>(path: &Path, table: &ScaleTable<T>) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write_provenance(&mut out, &table.source)?;
    writeln!(out, "m,delta,range_sum,box_count,lower_bound_rhs,upper_bound_rhs")?;
    for row in &table.rows {
        let delta = 2f64.powi(-(row.m as i32));
        let inv = 2f64.powi(row.m as i32);
        let sum = row.range_sum.to_f64_lossy();
        let lower = inv * sum;
        let envelope = 2.0 * (inv + 1.0).powi(table.d as i32);
        writeln!(
            out,
            "{},{},{},{},{},{}",
            row.m,
            delta,
            sum,
            row.box_count,
            lower,
            envelope + lower
        )?;
    }
    Ok(())
}

/// CSV export of a lambda sweep: per-record estimates plus the summary as
/// trailing comments.
pub fn write_sweep_csv<T: Real>(
    path: &Path,
    sweep: &LambdaSweep<T>,
    provenance: &str,
) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write_provenance(&mut out, provenance)?;
    writeln!(
        out,
        "lambda,ols,lower,upper,degenerate,h_ols,h_lower,h_upper,conforming"
    )?;
    for r in &sweep.records {
        let (h_ols, h_lower, h_upper) = match &r.horizon_estimate {
            Some(h) => (
                format!("{}", h.ols_slope.to_f64_lossy()),
                format!("{}", h.lower_est.to_f64_lossy()),
                format!("{}", h.upper_est.to_f64_lossy()),
            ),
            None => (String::new(), String::new(), String::new()),
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.lambda,
            r.sum_estimate.ols_slope.to_f64_lossy(),
            r.sum_estimate.lower_est.to_f64_lossy(),
            r.sum_estimate.upper_est.to_f64_lossy(),
            r.sum_estimate.degenerate,
            h_ols,
            h_lower,
            h_upper,
            r.conforming
        )?;
    }
    writeln!(out, "# conforming={}/{}", sweep.conforming, sweep.total())?;
    for lambda in &sweep.exceptional {
        writeln!(out, "# exceptional_lambda={lambda}")?;
    }
    Ok(())
}

/// CSV export of a horizon-property census.
pub fn write_census_csv<T: Real>(path: &Path, rows: &[CensusRow<T>]) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(
        out,
        "name,surface_lower,surface_ols,surface_upper,horizon_lower,horizon_ols,horizon_upper,gap_low,gap_high,verdict"
    )?;
    for row in rows {
        let r = &row.report;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            row.name,
            r.surface_estimate.lower_est.to_f64_lossy(),
            r.surface_estimate.ols_slope.to_f64_lossy(),
            r.surface_estimate.upper_est.to_f64_lossy(),
            r.horizon_estimate.lower_est.to_f64_lossy(),
            r.horizon_estimate.ols_slope.to_f64_lossy(),
            r.horizon_estimate.upper_est.to_f64_lossy(),
            r.gap_low.to_f64_lossy(),
            r.gap_high.to_f64_lossy(),
            r.verdict()
        )?;
    }
    Ok(())
}

/// 8-bit grayscale PGM (binary `P5`) of a surface, min-max normalized.
pub fn write_surface_pgm<T: Real>(path: &Path, s: &SampledSurface<T>) -> Result<()> {
    let w = s.width();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in s.values() {
        let v = v.to_f64_lossy();
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let span = if hi > lo { hi - lo } else { 1.0 };
    let mut out = BufWriter::new(File::create(path)?);
    write!(out, "P5\n{w} {w}\n255\n")?;
    // image rows run along y top-down; pixel columns along x
    for j in (0..w).rev() {
        for i in 0..w {
            let v = s.value(i, j).to_f64_lossy();
            let byte = (((v - lo) / span) * 255.0).round().clamp(0.0, 255.0) as u8;
            out.write_all(&[byte])?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{midpoint_surface, takagi_curve, GeneratorSpec};

    fn tmp(name: &str) -> std::path::PathBuf {
        let mut p = std::env::temp_dir();
        p.push(format!("frh-io-test-{}-{name}", std::process::id()));
        p
    }

    #[test]
    fn curve_binary_roundtrip_is_bit_exact() {
        let c: SampledCurve<f64> = takagi_curve(8).unwrap();
        let path = tmp("curve.frh");
        write_curve(&path, &c).unwrap();
        match read_sample(&path).unwrap() {
            Sample::Curve(back) => assert_eq!(back, c),
            _ => panic!("kind byte mixed up"),
        }
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn surface_binary_roundtrip_is_bit_exact() {
        let s: SampledSurface<f64> = midpoint_surface(2.5, 7, 5).unwrap();
        let path = tmp("surface.frh");
        write_surface(&path, &s).unwrap();
        match read_sample(&path).unwrap() {
            Sample::Surface(back) => assert_eq!(back, s),
            _ => panic!("kind byte mixed up"),
        }
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn rejects_foreign_files() {
        let path = tmp("bogus.frh");
        std::fs::write(&path, b"not a sample").unwrap();
        assert!(read_sample(&path).is_err());
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn csv_embeds_generator_provenance() {
        let c: SampledCurve<f64> = takagi_curve(4).unwrap();
        let path = tmp("curve.csv");
        write_curve_csv(&path, &c, &GeneratorSpec::Takagi.to_block()).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("# family=takagi"));
        assert!(text.contains("x,value"));
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn pgm_has_header_and_payload() {
        let s: SampledSurface<f64> = midpoint_surface(2.5, 1, 3).unwrap();
        let path = tmp("surface.pgm");
        write_surface_pgm(&path, &s).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        assert!(bytes.starts_with(b"P5\n9 9\n255\n"));
        assert_eq!(bytes.len(), "P5\n9 9\n255\n".len() + 81);
        std::fs::remove_file(&path).unwrap();
    }
}
