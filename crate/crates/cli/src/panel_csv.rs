//! Panel CSV: header
//! `bank_id,period,observed_spread,default_loss,redemption_proxy,regime`,
//! numbers in decimal notation with 12 significant digits, `\n` line ends.

use std::io::{Read, Write};

use interest_core::cliometrics::{PanelRow, Regime};
use serde::Deserialize;

use crate::error::CliError;
use crate::output::fmt_sig12;

pub const HEADER: [&str; 6] = [
    "bank_id",
    "period",
    "observed_spread",
    "default_loss",
    "redemption_proxy",
    "regime",
];

pub fn write_panel(rows: &[PanelRow], out: &mut dyn Write) -> Result<(), CliError> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let to_io = |e: csv::Error| CliError::Io(e.into());
    writer.write_record(HEADER).map_err(to_io)?;
    for row in rows {
        writer
            .write_record([
                row.bank_id.to_string(),
                row.period.to_string(),
                fmt_sig12(row.observed_spread),
                fmt_sig12(row.default_loss),
                fmt_sig12(row.redemption_proxy),
                row.regime.tag().to_string(),
            ])
            .map_err(to_io)?;
    }
    writer.flush()?;
    Ok(())
}

#[derive(Deserialize)]
struct RawRow {
    bank_id: u32,
    period: u32,
    observed_spread: f64,
    default_loss: f64,
    redemption_proxy: f64,
    regime: String,
}

pub fn read_panel<R: Read>(input: R) -> Result<Vec<PanelRow>, CliError> {
    let mut reader = csv::Reader::from_reader(input);
    let headers = reader
        .headers()
        .map_err(|e| CliError::Input(format!("panel csv: {e}")))?;
    if headers.iter().ne(HEADER) {
        return Err(CliError::Input(format!(
            "panel csv: expected header {}",
            HEADER.join(",")
        )));
    }
    reader
        .deserialize::<RawRow>()
        .map(|raw| {
            let raw = raw.map_err(|e| CliError::Input(format!("panel csv: {e}")))?;
            let regime = raw
                .regime
                .parse::<Regime>()
                .map_err(|e| CliError::Input(format!("panel csv: {e} `{}`", raw.regime)))?;
            Ok(PanelRow {
                bank_id: raw.bank_id,
                period: raw.period,
                observed_spread: raw.observed_spread,
                default_loss: raw.default_loss,
                redemption_proxy: raw.redemption_proxy,
                regime,
            })
        })
        .collect()
}
