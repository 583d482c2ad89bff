//! CSV ingestion and output of suppressed tables.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::table::{Clustering, Table};

/// A parsed CSV table and its optional header line.
#[derive(Clone, Debug)]
pub struct CsvTable {
    pub header: Option<Vec<String>>,
    pub table: Table,
}

/// Reads an RFC 4180 style CSV. When `has_header` is set the first record
/// is kept aside as the header and does not become a row.
pub fn read_csv<R: Read>(reader: R, has_header: bool) -> Result<CsvTable> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(reader);
    let mut records = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        records.push(record.iter().map(str::to_owned).collect::<Vec<_>>());
    }
    let header = if has_header && !records.is_empty() {
        Some(records.remove(0))
    } else {
        None
    };
    if let Some(h) = &header {
        if let Some(first) = records.first() {
            if first.len() != h.len() {
                return Err(Error::RaggedRecord {
                    record: 0,
                    expected: h.len(),
                    actual: first.len(),
                });
            }
        }
    }
    let table = Table::from_records(records)?;
    Ok(CsvTable { header, table })
}

/// Writes raw records (and an optional header) as CSV.
pub fn write_records<W: Write>(
    writer: W,
    header: Option<&[String]>,
    records: &[Vec<String>],
) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new().from_writer(writer);
    let io_err = |e: csv::Error| Error::Parse(e.to_string());
    if let Some(h) = header {
        wtr.write_record(h).map_err(io_err)?;
    }
    for record in records {
        wtr.write_record(record).map_err(io_err)?;
    }
    wtr.flush().map_err(|e| Error::Parse(e.to_string()))
}

/// Writes `table` with the entries suppressed by `clustering` replaced by `*`.
pub fn write_suppressed<W: Write>(
    writer: W,
    header: Option<&[String]>,
    table: &Table,
    clustering: &Clustering,
) -> Result<()> {
    write_records(writer, header, &table.suppressed_records(clustering))
}
