//! Text formats: the complex file, the process trace CSV and the per-trial
//! CSV.
//!
//! Complex files are UTF-8: a header line `n F`, then `F` lines `a b c`
//! with `1 <= a < b < c <= n`, one face per line, in any order.
//!
//! Reals are printed with 6 significant digits in shortest form, with `.`
//! as the decimal separator. Booleans are `1`/`0`; undefined values are
//! empty fields.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use homconn_core::{Complex, ProcessTrace, Triple};

use crate::error::{LabError, Result};
use crate::experiment::TrialSummary;

/// Rounds to 6 significant digits. Non-finite values pass through.
pub fn sig6(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.5e}").parse().expect("formatted float parses")
}

pub fn fmt_real(x: f64) -> String {
    format!("{}", sig6(x))
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn opt_real(v: Option<f64>) -> String {
    v.map(fmt_real).unwrap_or_default()
}

fn bit(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

pub fn serialize_complex(c: &Complex) -> String {
    let mut out = format!("{} {}\n", c.n(), c.num_faces());
    for f in c.faces() {
        writeln!(out, "{} {} {}", f.a, f.b, f.c).expect("writing to a String");
    }
    out
}

fn parse_count(tok: &str, line: usize, what: &str) -> Result<u64> {
    tok.parse::<u64>()
        .map_err(|_| LabError::parse(line, format!("expected {what}, found {tok:?}")))
}

/// Parses a complex file. With `full_skeleton`, every pair of `[n]` is
/// added as an edge (the Linial–Meshulam reading of the same faces).
pub fn parse_complex(text: &str, full_skeleton: bool) -> Result<Complex> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines
        .next()
        .ok_or_else(|| LabError::parse(1, "missing header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(LabError::parse(1, "header must be \"n F\""));
    }
    let n = parse_count(toks[0], 1, "vertex count")?;
    let n = u32::try_from(n).map_err(|_| LabError::parse(1, "vertex count too large"))?;
    let count = parse_count(toks[1], 1, "face count")? as usize;
    let mut faces = Vec::with_capacity(count);
    let mut seen = BTreeSet::new();
    let mut last_line = 1;
    for (line, text) in lines.by_ref() {
        if faces.len() == count {
            if !text.trim().is_empty() {
                return Err(LabError::parse(line, format!("more than {count} faces")));
            }
            continue;
        }
        last_line = line;
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(LabError::parse(line, "face line must be \"a b c\""));
        }
        let mut v = [0u32; 3];
        for (slot, tok) in v.iter_mut().zip(&toks) {
            *slot = tok
                .parse()
                .map_err(|_| LabError::parse(line, format!("expected vertex, found {tok:?}")))?;
        }
        let [a, b, c] = v;
        if !(1 <= a && a < b && b < c) {
            return Err(LabError::parse(line, "face must satisfy 1 <= a < b < c"));
        }
        if c > n {
            return Err(LabError::parse(
                line,
                format!("vertex {c} out of range 1..={n}"),
            ));
        }
        let t = Triple { a, b, c };
        if !seen.insert(t) {
            return Err(LabError::parse(line, format!("duplicate face {a} {b} {c}")));
        }
        faces.push(t);
    }
    if faces.len() != count {
        return Err(LabError::parse(
            last_line + 1,
            format!("expected {count} faces, found {}", faces.len()),
        ));
    }
    let c = if full_skeleton {
        Complex::with_full_skeleton(faces, n)?
    } else {
        Complex::downward_closure(faces, n)?
    };
    Ok(c)
}

pub const TRACE_HEADER: &str =
    "step,birth_time,a,b,c,edges,components,isolated,rank_d2,beta1,connected,contains_M,hom_connected";

pub fn trace_csv(trace: &ProcessTrace) -> String {
    let mut out = String::with_capacity(64 * (trace.events.len() + 1));
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for r in &trace.events {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.step,
            fmt_real(r.birth_time),
            r.face.a,
            r.face.b,
            r.face.c,
            r.edges,
            r.components,
            r.isolated,
            r.rank_d2,
            r.beta1,
            bit(r.connected),
            bit(r.contains_m),
            bit(r.hom_connected),
        )
        .expect("writing to a String");
    }
    out
}

pub const TRIALS_HEADER: &str =
    "n,trial,seed,m_iso,m_T,m_lastM,m_M,m_H,p_M,coincide_iso_T,coincide_M_H,T_stat,stabilized";

pub fn trials_csv(trials: &[TrialSummary]) -> String {
    let mut out = String::new();
    out.push_str(TRIALS_HEADER);
    out.push('\n');
    for s in trials {
        let h = &s.times;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            s.n,
            s.trial,
            s.seed,
            opt(h.m_iso),
            opt(h.m_t),
            opt(h.m_last_m),
            opt(h.m_m),
            opt(h.m_h),
            opt_real(h.p_m),
            bit(s.coincide_iso_t),
            bit(s.coincide_m_h),
            opt_real(s.t_stat),
            bit(h.stabilized),
        )
        .expect("writing to a String");
    }
    out
}
