use std::collections::HashMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use csv::{ReaderBuilder, StringRecord, Trim};

use super::{AlternativeRecord, AttributeSchema, ChoiceDataset, ChoiceSituation, ChoiceTask};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

const KEY_COLUMNS: [&str; 5] = ["situation_id", "respondent_id", "alt_id", "chosen", "available"];

pub fn load_csv<T: Scalar>(path: impl AsRef<Path>, schema: &AttributeSchema) -> Result<ChoiceDataset<T>> {
    let file = File::open(path)?;
    read_csv(BufReader::new(file), schema)
}

/// Reads a long-format table (one row per alternative). Lines starting with
/// `#` are comments.
pub fn read_csv<T: Scalar, R: Read>(reader: R, schema: &AttributeSchema) -> Result<ChoiceDataset<T>> {
    let mut rdr = ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let locate = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    };
    let key: Vec<usize> = KEY_COLUMNS.iter().map(|c| locate(c)).collect::<Result<_>>()?;
    let attr_cols: Vec<usize> = schema
        .attribute_names()
        .iter()
        .map(|c| locate(c))
        .collect::<Result<_>>()?;
    let cov_cols: Vec<usize> = schema
        .covariate_names()
        .iter()
        .map(|c| locate(c))
        .collect::<Result<_>>()?;

    struct Pending<T> {
        task: ChoiceTask<T>,
        chosen_rows: Vec<usize>,
    }
    let mut order: Vec<Pending<T>> = Vec::new();
    let mut by_id: HashMap<String, usize> = HashMap::new();

    for record in rdr.records() {
        let record = record?;
        let row = record.position().map(|p| p.line() as usize).unwrap_or(0);
        let cell = |col: usize| record.get(col).unwrap_or("");
        let situation_id = cell(key[0]).to_string();
        let respondent_id = cell(key[1]).to_string();
        let alt_id = cell(key[2]).to_string();
        let chosen = parse_flag(&record, &headers, key[3], row)?;
        let available = parse_flag(&record, &headers, key[4], row)?;
        let attributes = attr_cols
            .iter()
            .map(|&c| parse_number(&record, &headers, c, row))
            .collect::<Result<Vec<T>>>()?;
        let covariates = cov_cols
            .iter()
            .map(|&c| parse_number(&record, &headers, c, row))
            .collect::<Result<Vec<T>>>()?;

        let slot = *by_id.entry(situation_id.clone()).or_insert_with(|| {
            order.push(Pending {
                task: ChoiceTask {
                    situation_id: situation_id.clone(),
                    respondent_id: respondent_id.clone(),
                    alternatives: Vec::new(),
                    covariates: covariates.clone(),
                },
                chosen_rows: Vec::new(),
            });
            order.len() - 1
        });
        let pending = &mut order[slot];
        if pending.task.respondent_id != respondent_id || pending.task.covariates != covariates {
            return Err(Error::Integrity {
                situation: situation_id,
                reason: format!("row {row}: respondent or covariates differ between rows"),
            });
        }
        if chosen {
            pending.chosen_rows.push(pending.task.alternatives.len());
        }
        pending.task.alternatives.push(AlternativeRecord {
            alt_id,
            attributes,
            available,
        });
    }

    let mut situations = Vec::with_capacity(order.len());
    for Pending { task, chosen_rows } in order {
        let integrity = |reason: &str| Error::Integrity {
            situation: task.situation_id.clone(),
            reason: reason.to_string(),
        };
        let chosen = match chosen_rows.as_slice() {
            [one] => *one,
            [] => return Err(integrity("no chosen row")),
            _ => return Err(integrity("more than one chosen row")),
        };
        if !task.alternatives[chosen].available {
            return Err(integrity("chosen alternative is unavailable"));
        }
        situations.push(ChoiceSituation { task, chosen });
    }
    ChoiceDataset::new(schema.clone(), situations)
}

fn parse_flag(record: &StringRecord, headers: &StringRecord, col: usize, row: usize) -> Result<bool> {
    match record.get(col).unwrap_or("") {
        "0" => Ok(false),
        "1" => Ok(true),
        other => Err(Error::Parse {
            row,
            column: headers.get(col).unwrap_or("").to_string(),
            value: other.to_string(),
        }),
    }
}

fn parse_number<T: Scalar>(record: &StringRecord, headers: &StringRecord, col: usize, row: usize) -> Result<T> {
    let raw = record.get(col).unwrap_or("");
    raw.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .and_then(T::from_f64)
        .ok_or_else(|| Error::Parse {
            row,
            column: headers.get(col).unwrap_or("").to_string(),
            value: raw.to_string(),
        })
}

pub fn save_csv<T: Scalar>(
    path: impl AsRef<Path>,
    ds: &ChoiceDataset<T>,
    comment: Option<&str>,
) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write_csv(&mut out, ds, comment)?;
    out.flush()?;
    Ok(())
}

/// Writes the long format read by [`read_csv`]. Values use shortest
/// round-trip formatting, so reading back reproduces them exactly.
pub fn write_csv<T: Scalar, W: Write>(writer: W, ds: &ChoiceDataset<T>, comment: Option<&str>) -> Result<()> {
    let mut writer = writer;
    if let Some(line) = comment {
        writeln!(writer, "# {line}")?;
    }
    let mut wtr = csv::Writer::from_writer(writer);
    let schema = ds.schema();
    let header: Vec<&str> = KEY_COLUMNS
        .iter()
        .copied()
        .chain(schema.attribute_names().iter().map(String::as_str))
        .chain(schema.covariate_names().iter().map(String::as_str))
        .collect();
    wtr.write_record(&header)?;
    let mut fields: Vec<String> = Vec::with_capacity(header.len());
    for s in ds.situations() {
        for (j, alt) in s.alternatives.iter().enumerate() {
            fields.clear();
            fields.push(s.situation_id.clone());
            fields.push(s.respondent_id.clone());
            fields.push(alt.alt_id.clone());
            fields.push(if j == s.chosen { "1" } else { "0" }.into());
            fields.push(if alt.available { "1" } else { "0" }.into());
            fields.extend(alt.attributes.iter().map(|v| v.to_string()));
            fields.extend(s.covariates.iter().map(|v| v.to_string()));
            wtr.write_record(&fields)?;
        }
    }
    wtr.flush()?;
    Ok(())
}
