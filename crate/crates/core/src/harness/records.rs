//! Recorded concession decisions, one per line:
//! `scenario_id,focal_user,conflict_target,preferred_action,conceded`.

use std::io::{Read, Write};

use crate::policy::{Action, UserId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcessionRecord {
    pub scenario_id: String,
    pub focal_user: UserId,
    pub conflict_target: UserId,
    pub preferred_action: Action,
    /// The focal user changed their preferred action.
    pub conceded: bool,
}

impl ConcessionRecord {
    /// The action the focal user finally accepted.
    pub fn accepted_action(&self) -> Action {
        if self.conceded {
            self.preferred_action.flipped()
        } else {
            self.preferred_action
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RecordError {
    #[error("line {line}: {message}")]
    Malformed { line: u64, message: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn parse_bit(field: &str, name: &str, line: u64) -> Result<bool, RecordError> {
    match field.trim() {
        "0" => Ok(false),
        "1" => Ok(true),
        other => Err(RecordError::Malformed {
            line,
            message: format!("{name} must be 0 or 1, got {other:?}"),
        }),
    }
}

/// Reads records. A leading `scenario_id,...` header line is skipped; blank
/// lines are ignored.
pub fn read_records(reader: impl Read) -> Result<Vec<ConcessionRecord>, RecordError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row?;
        let line = row.position().map(|p| p.line()).unwrap_or(i as u64 + 1);
        if i == 0 && row.get(0) == Some("scenario_id") {
            continue;
        }
        if row.len() != 5 {
            return Err(RecordError::Malformed {
                line,
                message: format!("expected 5 fields, got {}", row.len()),
            });
        }
        let field = |j: usize, name: &str| -> Result<&str, RecordError> {
            let v = &row[j];
            if v.is_empty() {
                Err(RecordError::Malformed {
                    line,
                    message: format!("empty {name}"),
                })
            } else {
                Ok(v)
            }
        };
        out.push(ConcessionRecord {
            scenario_id: field(0, "scenario_id")?.to_owned(),
            focal_user: field(1, "focal_user")?.into(),
            conflict_target: field(2, "conflict_target")?.into(),
            preferred_action: Action::from_bit(parse_bit(&row[3], "preferred_action", line)?),
            conceded: parse_bit(&row[4], "conceded", line)?,
        });
    }
    Ok(out)
}

pub fn write_records(mut writer: impl Write, records: &[ConcessionRecord]) -> std::io::Result<()> {
    for r in records {
        writeln!(
            writer,
            "{},{},{},{},{}",
            r.scenario_id,
            r.focal_user,
            r.conflict_target,
            r.preferred_action,
            u8::from(r.conceded)
        )?;
    }
    Ok(())
}
