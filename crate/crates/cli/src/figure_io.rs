//! JSON and CSV forms of figure series. Exact rationals are written as
//! `p/q` strings so a file read back reproduces them exactly; decimal
//! columns are outward-rounded companions for plotting tools.

use serde::{Deserialize, Serialize};

use ratexp::figures::{FigureSeries, Tangent};
use ratexp::{to_decimal, Error, Interval, Rational};

/// Fractional digits of the decimal companion columns.
pub const DECIMAL_DIGITS: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeRecord {
    pub n: i64,
    pub lo: String,
    pub hi: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub x: String,
    pub lo: String,
    pub hi: String,
    pub lo_dec: String,
    pub hi_dec: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentRecord {
    pub slope_lo: String,
    pub slope_hi: String,
    pub slope_mid: String,
    pub slope_width: String,
    pub intercept: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub base: String,
    pub lattice: Vec<LatticeRecord>,
    pub curve: Vec<CurveRecord>,
    pub tangent: TangentRecord,
}

impl From<&FigureSeries> for SeriesRecord {
    fn from(s: &FigureSeries) -> Self {
        let lattice = s
            .lattice
            .iter()
            .map(|(n, y)| LatticeRecord { n: *n, lo: y.lo().to_string(), hi: y.hi().to_string() })
            .collect();
        let curve = s
            .curve
            .iter()
            .map(|(x, y)| {
                let (lo_dec, hi_dec) = to_decimal(y, DECIMAL_DIGITS);
                CurveRecord { x: x.to_string(), lo: y.lo().to_string(), hi: y.hi().to_string(), lo_dec, hi_dec }
            })
            .collect();
        let slope = &s.tangent.slope;
        SeriesRecord {
            base: s.base.to_string(),
            lattice,
            curve,
            tangent: TangentRecord {
                slope_lo: slope.lo().to_string(),
                slope_hi: slope.hi().to_string(),
                slope_mid: slope.midpoint().to_string(),
                slope_width: slope.width().to_string(),
                intercept: s.tangent.intercept.to_string(),
            },
        }
    }
}

fn interval(lo: &str, hi: &str) -> Result<Interval, Error> {
    Interval::new(lo.parse()?, hi.parse()?)
}

impl TryFrom<&SeriesRecord> for FigureSeries {
    type Error = Error;

    fn try_from(r: &SeriesRecord) -> Result<Self, Error> {
        let lattice =
            r.lattice.iter().map(|p| Ok((p.n, interval(&p.lo, &p.hi)?))).collect::<Result<Vec<_>, Error>>()?;
        let curve = r
            .curve
            .iter()
            .map(|p| Ok((p.x.parse::<Rational>()?, interval(&p.lo, &p.hi)?)))
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(FigureSeries {
            base: r.base.parse()?,
            lattice,
            curve,
            tangent: Tangent {
                slope: interval(&r.tangent.slope_lo, &r.tangent.slope_hi)?,
                intercept: r.tangent.intercept.parse()?,
            },
        })
    }
}

pub fn to_json(series: &[FigureSeries]) -> String {
    let records: Vec<SeriesRecord> = series.iter().map(SeriesRecord::from).collect();
    serde_json::to_string_pretty(&records).expect("records serialize")
}

#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Value(#[from] Error),
}

pub fn from_json(text: &str) -> Result<Vec<FigureSeries>, ReadError> {
    let records: Vec<SeriesRecord> = serde_json::from_str(text)?;
    Ok(records.iter().map(FigureSeries::try_from).collect::<Result<Vec<_>, Error>>()?)
}

#[derive(Debug, Serialize)]
struct CsvRow<'a> {
    base: &'a str,
    kind: &'static str,
    /// Lattice index or curve abscissa; empty for the tangent row.
    at: String,
    lo: String,
    hi: String,
    lo_dec: String,
    hi_dec: String,
}

/// One row per lattice point, curve sample and tangent slope.
pub fn to_csv(series: &[FigureSeries]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for s in series {
        let base = s.base.to_string();
        let mut row = |kind, at: String, iv: &Interval| {
            let (lo_dec, hi_dec) = to_decimal(iv, DECIMAL_DIGITS);
            w.serialize(CsvRow {
                base: &base,
                kind,
                at,
                lo: iv.lo().to_string(),
                hi: iv.hi().to_string(),
                lo_dec,
                hi_dec,
            })
        };
        for (n, y) in &s.lattice {
            row("lattice", n.to_string(), y)?;
        }
        for (x, y) in &s.curve {
            row("curve", x.to_string(), y)?;
        }
        row("tangent_slope", String::new(), &s.tangent.slope)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
