use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::experiments::{sort_rows, SweepRow};
use crate::states::{InteractionKind, InverseTemperature};

pub const CSV_HEADER: [&str; 10] = [
    "beta",
    "s",
    "lambda",
    "p",
    "u2",
    "i_bits",
    "i_bits_maxp",
    "coherence_cost_bits",
    "witness_distance",
    "notes",
];

const SIG_DIGITS: usize = 12;

/// Formats `x` with 12 significant digits, `%g` style: fixed notation for
/// exponents in `[-5, 12)`, scientific otherwise, trailing zeros removed.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes `bytes` to a temporary file next to `path` and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

/// CSV text for `rows`, sorted by `(beta, s, lambda, u2)`.
pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut sorted = rows.to_vec();
    sort_rows(&mut sorted);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in &sorted {
        w.write_record([
            r.beta_label(),
            format_sig(r.s),
            format_sig(r.lambda),
            format_sig(r.p),
            r.u2_kind.label().to_string(),
            format_sig(r.i_bits),
            format_sig(r.i_bits_maxp),
            format_sig(r.coherence_cost_bits),
            r.witness_distance.map(format_sig).unwrap_or_default(),
            r.notes.clone(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV output is UTF-8")
}

pub fn write_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    write_atomic(path, render_csv(rows).as_bytes())
}

/// Reads rows back from [`render_csv`] output.
pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| Error::Usage(format!("CSV header: {e}")))?;
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(Error::Usage(format!("unexpected CSV header {header:?}")));
    }
    let num = |field: &str, value: &str| -> Result<f64> {
        value
            .parse()
            .map_err(|_| Error::validation(field, format!("`{value}` is not a number")))
    };
    reader
        .records()
        .map(|rec| {
            let rec = rec.map_err(|e| Error::Usage(format!("CSV record: {e}")))?;
            let witness = match &rec[8] {
                "" => None,
                v => Some(num("witness_distance", v)?),
            };
            Ok(SweepRow {
                beta: rec[0].parse::<InverseTemperature>()?,
                s: num("s", &rec[1])?,
                lambda: num("lambda", &rec[2])?,
                p: num("p", &rec[3])?,
                u2_kind: rec[4].parse::<InteractionKind>()?,
                i_bits: num("i_bits", &rec[5])?,
                i_bits_maxp: num("i_bits_maxp", &rec[6])?,
                coherence_cost_bits: num("coherence_cost_bits", &rec[7])?,
                witness_distance: witness,
                notes: rec[9].to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig_formatting() {
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(-0.0), "0");
        assert_eq!(format_sig(1.0), "1");
        assert_eq!(format_sig(0.1), "0.1");
        assert_eq!(format_sig(0.30000000000000004), "0.3");
        assert_eq!(format_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_sig(2.0 / 3.0 * 100.0), "66.6666666667");
        assert_eq!(format_sig(1.5e-7), "1.5e-7");
        assert_eq!(format_sig(-2.5e-17), "-2.5e-17");
        assert_eq!(format_sig(123456789012345.0), "1.23456789012e14");
        assert_eq!(format_sig(9.9999999999996), "10");
    }

    #[test]
    fn empty_rows_give_header_only() {
        assert_eq!(render_csv(&[]), format!("{}\n", CSV_HEADER.join(",")));
    }

    #[test]
    fn notes_with_separators_survive() {
        let row = SweepRow {
            beta: InverseTemperature::Infinite,
            s: 0.5,
            lambda: 1.0,
            p: 0.5,
            u2_kind: InteractionKind::PartialCnot,
            i_bits: 0.25,
            i_bits_maxp: 0.3,
            coherence_cost_bits: 0.01,
            witness_distance: Some(0.125),
            notes: "a,b;\"c\"".into(),
        };
        let back = parse_csv(&render_csv(std::slice::from_ref(&row))).unwrap();
        assert_eq!(back, vec![row]);
    }

    #[test]
    fn rejects_foreign_header() {
        assert!(parse_csv("x,y\n1,2\n").is_err());
    }
}
