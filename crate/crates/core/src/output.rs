//! CSV and JSON emission for the command-line front end.
//!
//! CSV files carry shortest-roundtrip float formatting, so reruns of the
//! same configuration are byte-identical.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::functionals::InequalityVerdict;
use crate::solver::SolutionTrace;
use crate::sweep::SweepResult;

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let file = File::create(path)?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value)
        .map_err(|e| crate::error::Error::Io(e.to_string()))?;
    w.write_all(b"\n")?;
    Ok(())
}

pub fn write_sweep_csv(
    path: &Path,
    result: &SweepResult,
    dr: f64,
    threshold: f64,
) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "eps,t_num,reason,dt_at_detection,dr,threshold")?;
    for e in &result.entries {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            e.eps, e.t_num, e.reason, e.dt_at_detection, dr, threshold
        )?;
    }
    Ok(())
}

pub fn write_fields_csv(path: &Path, trace: &SolutionTrace) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "t,r,u,v")?;
    let dr = trace.grid.dr();
    for snap in &trace.snapshots {
        for (i, (&u, &v)) in snap.u.iter().zip(&snap.v).enumerate() {
            writeln!(w, "{},{},{},{}", snap.t, i as f64 * dr, u, v)?;
        }
    }
    Ok(())
}

pub fn write_steps_csv(path: &Path, trace: &SolutionTrace) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "t,dt,max_abs_u")?;
    for s in &trace.steps {
        writeln!(w, "{},{},{}", s.t, s.dt, s.max_abs_u)?;
    }
    Ok(())
}

pub fn write_verdicts_csv(path: &Path, verdicts: &[InequalityVerdict]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "name,t_lo,t_hi,margin,tol,passed,vacuous")?;
    for v in verdicts {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            v.name, v.t_lo, v.t_hi, v.margin, v.tol, v.passed, v.vacuous
        )?;
    }
    Ok(())
}

pub fn write_yz_csv(path: &Path, rows: &[(f64, f64, f64)]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "t,lhs,ratio")?;
    for &(t, lhs, ratio) in rows {
        writeln!(w, "{},{},{}", t, lhs, ratio)?;
    }
    Ok(())
}

pub fn write_kv_csv(path: &Path, rows: &[(String, String)]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "quantity,value")?;
    for (k, v) in rows {
        writeln!(w, "{},{}", k, v)?;
    }
    Ok(())
}

pub fn write_iteration_csv(
    path: &Path,
    rows: &[(String, u32, f64, f64, f64)],
) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "variant,j,a_j,b_j,ln_d_lower")?;
    for (variant, j, a, b, ln_d) in rows {
        writeln!(w, "{},{},{},{},{}", variant, j, a, b, ln_d)?;
    }
    Ok(())
}
