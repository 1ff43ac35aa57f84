//! Similarity trend of a moving BBA against a fixed certain one.
//!
//! Over `θ1 … θ10`, `m1` puts 0.8 on `A_k = {θ1 … θk}`, 0.05 on `{θ7}`,
//! 0.05 on `{θ2, θ3, θ4}` and 0.1 on `Θ` (the two masses add up when
//! `A_k = Θ`), while `m2` is certain on `{θ1 … θ5}`. Each row compares
//! the pair under five measures, distances reported as `1 − d`.

use dst_core::{
    classical_fidelity, euclidean_distance, fb_inner_product, inner_bba, jousselme_distance, FocalIndex, Frame,
    MassFunction,
};

use crate::document::fmt_real;
use crate::error::CliError;

pub const TREND_ELEMENTS: usize = 10;

pub const COLUMNS: [&str; 5] = ["one_minus_d_bba", "inner_fb", "fid", "one_minus_d_e", "inner_bba"];

#[derive(Debug, Clone, PartialEq)]
pub struct TrendRow {
    pub k: usize,
    pub focal: String,
    /// In [`COLUMNS`] order.
    pub values: [f64; 5],
}

fn prefix(k: usize) -> FocalIndex {
    FocalIndex(((1u64 << k) - 1) as u32)
}

/// The moving BBA with `A = {θ1 … θk}`.
pub fn moving_bba(k: usize) -> Result<MassFunction, CliError> {
    let frame = Frame::numbered(TREND_ELEMENTS)?;
    let mut v = vec![0.0; frame.size()];
    v[prefix(k).index()] += 0.8;
    v[FocalIndex::singleton(6).index()] += 0.05;
    v[0b1110] += 0.05;
    v[frame.full().index()] += 0.1;
    Ok(MassFunction::from_dense(frame, v)?)
}

pub fn fixed_bba() -> Result<MassFunction, CliError> {
    let frame = Frame::numbered(TREND_ELEMENTS)?;
    Ok(MassFunction::certain(frame, prefix(5)))
}

pub fn trend_rows() -> Result<Vec<TrendRow>, CliError> {
    let m2 = fixed_bba()?;
    (1..=TREND_ELEMENTS)
        .map(|k| {
            let m1 = moving_bba(k)?;
            Ok(TrendRow {
                k,
                focal: m1.frame().display(prefix(k)),
                values: [
                    1.0 - jousselme_distance(&m1, &m2)?,
                    fb_inner_product(&m1, &m2)?,
                    classical_fidelity(&m1, &m2)?,
                    1.0 - euclidean_distance(&m1, &m2)?,
                    inner_bba(&m1, &m2)?,
                ],
            })
        })
        .collect()
}

pub fn trend_csv(rows: &[TrendRow]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header: Vec<&str> = ["k", "A"].into_iter().chain(COLUMNS).collect();
    let csv_err = |e: csv::Error| CliError::computation("Csv", e.to_string());
    w.write_record(&header).map_err(csv_err)?;
    for row in rows {
        let mut record = vec![row.k.to_string(), row.focal.clone()];
        record.extend(row.values.iter().map(|&v| fmt_real(v)));
        w.write_record(&record).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::computation("Csv", e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
