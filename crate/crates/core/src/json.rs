//! JSON output with every float written to 17 significant digits.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use crate::angular::{mapped_points, AngularCloud, SupportEstimate};
use crate::error::Result;
use crate::scalar::Real;

/// Formats like C's `%.17g`.
pub fn format_g17(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        let fixed = format!("{:.*}", (16 - exp) as usize, v);
        trim_zeros(&fixed).to_owned()
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Compact serde_json formatter that writes floats with [`format_g17`].
#[derive(Debug, Clone, Copy, Default)]
pub struct G17Formatter;

impl Formatter for G17Formatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_g17(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn to_writer<W: Write, S: Serialize + ?Sized>(writer: W, value: &S) -> Result<()> {
    let mut ser = serde_json::Serializer::with_formatter(writer, G17Formatter);
    value.serialize(&mut ser)?;
    Ok(())
}

pub fn to_string<S: Serialize + ?Sized>(value: &S) -> Result<String> {
    let mut buf = Vec::new();
    to_writer(&mut buf, value)?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub index: Vec<u32>,
    pub anchor: Vec<f64>,
    pub mass_num: u64,
    pub mass_den: u64,
}

/// Wire form of a [`SupportEstimate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub q: f64,
    pub dims: usize,
    pub signs: Vec<i8>,
    /// Top-k points outside every accepted cell.
    pub rejected: u64,
    pub drifted: usize,
    pub cells: Vec<CellReport>,
}

impl<T: Real> From<&SupportEstimate<T>> for EstimateReport {
    fn from(e: &SupportEstimate<T>) -> Self {
        let m = e.m();
        let cells = e
            .masses()
            .iter()
            .map(|(index, mass)| CellReport {
                index: index.clone(),
                anchor: index.iter().map(|&i| i as f64 / m as f64).collect(),
                mass_num: mass.num,
                mass_den: mass.den,
            })
            .collect();
        Self {
            n: e.n(),
            k: e.k(),
            m,
            q: e.q().as_f64(),
            dims: e.dims(),
            signs: e.signs().to_vec(),
            rejected: e.rejected_count(),
            drifted: e.drifted(),
            cells,
        }
    }
}

/// Mapped coordinates and radii of a thresholded cloud.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngularReport {
    pub k: usize,
    pub dims: usize,
    pub threshold_radius: f64,
    pub signs: Vec<i8>,
    pub points: Vec<Vec<f64>>,
    pub radii: Vec<f64>,
}

impl AngularReport {
    pub fn new<T: Real>(cloud: &AngularCloud<T>, signs: Vec<i8>) -> Result<Self> {
        let (mapped, _) = mapped_points(cloud)?;
        Ok(Self {
            k: cloud.k(),
            dims: cloud.dims(),
            threshold_radius: cloud.threshold_radius().as_f64(),
            signs,
            points: mapped.iter().map(|u| u.coords().iter().map(|v| v.as_f64()).collect()).collect(),
            radii: cloud.radii().iter().map(|v| v.as_f64()).collect(),
        })
    }
}
