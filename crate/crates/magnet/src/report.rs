use fxxz_exactalg::json::SeriesJson;
use fxxz_exactalg::{int, rat, QSeries, QrTerm};
use fxxz_freefield::Sector;
use serde::{Serialize, Serializer};

use crate::error::MagnetError;
use crate::series::{
    boundary_magnetisation_series, boundary_target_series, conjecture_series,
    magnetisation_series, spontaneous_series,
};

fn as_json<S: Serializer>(s: &QSeries, ser: S) -> Result<S::Ok, S::Error> {
    SeriesJson::from(s).serialize(ser)
}

/// One row of the special-value table: the measured series at a fixed `r`
/// next to its closed form.
#[derive(Clone, Debug, Serialize)]
pub struct SpecialCase {
    pub r: i32,
    pub label: String,
    #[serde(serialize_with = "as_json")]
    pub closed_form: QSeries,
    #[serde(serialize_with = "as_json")]
    pub series: QSeries,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub order: i32,
    pub measured: String,
    pub expected: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct MagReport {
    pub order: i32,
    #[serde(serialize_with = "as_json")]
    pub series_measured: QSeries,
    #[serde(serialize_with = "as_json")]
    pub series_conjecture: QSeries,
    pub first_mismatch_order: Option<i32>,
    pub mismatch: Option<Mismatch>,
    pub special_case_table: Vec<SpecialCase>,
}

impl MagReport {
    fn compare(
        order: i32,
        measured: QSeries,
        expected: QSeries,
        closed: Vec<(i32, &str, QSeries)>,
    ) -> Result<Self, MagnetError> {
        let first = measured.first_mismatch(&expected);
        let mismatch = first.map(|e| Mismatch {
            order: e,
            measured: measured.coeff_or_zero(e).to_string(),
            expected: expected.coeff_or_zero(e).to_string(),
        });
        let mut table = Vec::new();
        for (r, label, closed_form) in closed {
            let series = measured.substitute_r(&int(r.into()))?;
            table.push(SpecialCase {
                r,
                label: label.to_string(),
                matches: series.agrees_with(&closed_form),
                closed_form,
                series,
            });
        }
        Ok(MagReport {
            order,
            series_measured: measured,
            series_conjecture: expected,
            first_mismatch_order: first,
            mismatch,
            special_case_table: table,
        })
    }

    pub fn all_match(&self) -> bool {
        self.first_mismatch_order.is_none() && self.special_case_table.iter().all(|c| c.matches)
    }
}

/// `(1 - q²)/(1 + q²)`
fn r_zero_closed_form(qmax: i32) -> Result<QSeries, MagnetError> {
    Ok(QSeries::one(qmax)
        .mul_one_minus(&QrTerm::unit(2, 0))
        .div_one_minus(&QrTerm::new(rat(-1, 1), 2, 0))?)
}

/// Fractured-chain `-M^{(0)}` against the conjectured closed form, with the
/// values at `r = -1, 0, 1`.
pub fn magnetisation_report(qmax: i32) -> Result<MagReport, MagnetError> {
    let measured = magnetisation_series(Sector::Zero, qmax)?;
    let closed = vec![
        (-1, "(q^2;q^2)^2/(-q^2;q^2)^2", spontaneous_series(qmax)?),
        (0, "(1-q^2)/(1+q^2)", r_zero_closed_form(qmax)?),
        (1, "1", QSeries::one(qmax)),
    ];
    MagReport::compare(qmax, measured, conjecture_series(qmax), closed)
}

/// Boundary-chain `-M` against `1 + 2(1-r)² Σ (-q²)^n/(1 - r q^{2n})²`.
pub fn boundary_mag_regression(qmax: i32) -> Result<MagReport, MagnetError> {
    let measured = boundary_magnetisation_series(qmax)?;
    let closed = vec![
        (0, "(1-q^2)/(1+q^2)", r_zero_closed_form(qmax)?),
        (1, "1", QSeries::one(qmax)),
    ];
    MagReport::compare(qmax, measured, boundary_target_series(qmax), closed)
}
