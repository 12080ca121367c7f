use std::io::Write;

use serde::Serialize;

use crate::args::Format;
use crate::CliError;

pub const RADIUS_COLUMNS: [&str; 13] = [
    "class", "psi_D", "psi_E", "alpha", "beta", "m", "N", "weights", "r0", "rb", "capped", "residual",
    "status",
];

/// `x` with 12 significant digits, trailing zeros dropped, in the style of
/// C's `%.12g`.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: String| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if (-5..12).contains(&exp) {
        trim(format!("{x:.*}", (11 - exp) as usize))
    } else {
        format!("{}e{exp}", trim(mantissa.to_string()))
    }
}

/// `x` rounded to 12 significant digits, for JSON output.
pub fn round12(x: f64) -> f64 {
    sig12(x).parse().unwrap_or(x)
}

fn opt(x: Option<f64>) -> String {
    x.map(sig12).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct RadiusRecord {
    pub class: String,
    pub psi_D: Option<f64>,
    pub psi_E: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: f64,
    pub m: String,
    pub N: usize,
    pub weights: String,
    pub r0: Option<f64>,
    pub rb: Option<f64>,
    pub capped: Option<bool>,
    pub residual: Option<f64>,
    pub status: String,
}

impl RadiusRecord {
    fn fields(&self) -> [String; 13] {
        [
            self.class.clone(),
            opt(self.psi_D),
            opt(self.psi_E),
            opt(self.alpha),
            sig12(self.beta),
            self.m.clone(),
            self.N.to_string(),
            self.weights.clone(),
            opt(self.r0),
            opt(self.rb),
            self.capped.map(|c| c.to_string()).unwrap_or_default(),
            opt(self.residual),
            self.status.clone(),
        ]
    }

    fn rounded(&self) -> Self {
        let r = |x: Option<f64>| x.map(round12);
        Self {
            psi_D: r(self.psi_D),
            psi_E: r(self.psi_E),
            alpha: r(self.alpha),
            beta: round12(self.beta),
            r0: r(self.r0),
            rb: r(self.rb),
            residual: r(self.residual),
            ..self.clone()
        }
    }
}

pub fn write_csv<W: Write>(out: W, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write, T: Serialize + ?Sized>(mut out: W, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

/// A single record is emitted as a JSON object, several as an array.
pub fn write_records<W: Write>(out: W, format: Format, records: &[RadiusRecord], single: bool) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = records.iter().map(|r| r.fields().to_vec()).collect();
            write_csv(out, &RADIUS_COLUMNS, &rows)
        }
        Format::Json => {
            let rounded: Vec<RadiusRecord> = records.iter().map(RadiusRecord::rounded).collect();
            match (single, rounded.as_slice()) {
                (true, [one]) => write_json(out, one),
                _ => write_json(out, &rounded),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(sig12(3.0 - 8f64.sqrt()), "0.171572875254");
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(0.25), "0.25");
        assert_eq!(sig12(2.0), "2");
        assert_eq!(sig12(-0.5), "-0.5");
        assert_eq!(sig12(1.5e-13), "1.5e-13");
        assert_eq!(sig12(123456789012345.0), "1.23456789012e14");
        assert_eq!(sig12(0.0), "0");
        assert_eq!(round12(0.1 + 0.2), 0.3);
    }

    #[test]
    fn csv_header_only() {
        let mut buf = Vec::new();
        write_records(&mut buf, Format::Csv, &[], false).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "class,psi_D,psi_E,alpha,beta,m,N,weights,r0,rb,capped,residual,status\n"
        );
    }
}
