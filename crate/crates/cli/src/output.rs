use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::args::Format;
use crate::CliError;

/// Tabular data that can be written in any of the output formats.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<const N: usize>(header: [&str; N]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<const N: usize>(&mut self, row: [String; N]) {
        self.rows.push(row.to_vec());
    }

    fn write_csv(&self, w: &mut dyn Write) -> Result<(), CliError> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(&self.header)?;
        for r in &self.rows {
            wtr.write_record(r)?;
        }
        wtr.flush()?;
        Ok(())
    }

    fn write_aligned(&self, w: &mut dyn Write) -> io::Result<()> {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (i, cell) in r.iter().enumerate() {
                widths[i] = widths[i].max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, &wd)| format!("{c:>wd$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        writeln!(w, "{}", line(&self.header))?;
        for r in &self.rows {
            writeln!(w, "{}", line(r))?;
        }
        Ok(())
    }
}

pub fn open_sink(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

pub fn write_json<T: Serialize + ?Sized>(value: &T, out: Option<&Path>) -> Result<(), CliError> {
    let mut w = open_sink(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// Writes `json` for [`Format::Json`] and `table` otherwise.
pub fn emit<T: Serialize + ?Sized>(format: Format, json: &T, table: &Table, out: Option<&Path>) -> Result<(), CliError> {
    match format {
        Format::Json => write_json(json, out),
        Format::Csv => {
            let mut w = open_sink(out)?;
            table.write_csv(&mut w)?;
            w.flush()?;
            Ok(())
        }
        Format::Table => {
            let mut w = open_sink(out)?;
            table.write_aligned(&mut w)?;
            w.flush()?;
            Ok(())
        }
    }
}
