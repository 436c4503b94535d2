//! Ordered records and their CSV / JSON renderings.

use std::io::Write;

use serde::ser::{Serialize, SerializeMap, Serializer};

use super::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Float(f64),
    Int(u64),
    Bool(bool),
    Str(String),
    Null,
}

impl Field {
    fn csv(&self) -> String {
        match self {
            Field::Float(v) => format!("{v:.16e}"),
            Field::Int(v) => v.to_string(),
            Field::Bool(v) => v.to_string(),
            Field::Str(v) => v.clone(),
            Field::Null => String::new(),
        }
    }
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Float(v)
    }
}

impl From<Option<f64>> for Field {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Field::Null, Field::Float)
    }
}

impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Int(v as u64)
    }
}

impl From<u64> for Field {
    fn from(v: u64) -> Self {
        Field::Int(v)
    }
}

impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Field::Bool(v)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Str(v.to_owned())
    }
}

impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Str(v)
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Field::Float(v) if v.is_finite() => s.serialize_f64(*v),
            Field::Float(_) | Field::Null => s.serialize_none(),
            Field::Int(v) => s.serialize_u64(*v),
            Field::Bool(v) => s.serialize_bool(*v),
            Field::Str(v) => s.serialize_str(v),
        }
    }
}

/// Key/value pairs in a fixed column order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(Vec<(&'static str, Field)>);

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &'static str, value: impl Into<Field>) -> Self {
        self.0.push((key, value.into()));
        self
    }

    pub fn keys(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.0.iter().map(|(k, _)| *k)
    }
}

impl Serialize for Record {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

fn csv_io(e: csv::Error) -> std::io::Error {
    if e.is_io_error() {
        if let csv::ErrorKind::Io(e) = e.into_kind() {
            return e;
        }
        unreachable!("checked is_io_error");
    }
    std::io::Error::other(e)
}

/// Writes `records` under `header`. A single JSON record is written as an
/// object, anything else as an array.
pub fn write_table(
    out: &mut dyn Write,
    format: Format,
    header: &[&'static str],
    records: &[Record],
    single: bool,
) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(out);
            w.write_record(header).map_err(csv_io)?;
            for r in records {
                debug_assert!(r.keys().eq(header.iter().copied()));
                w.write_record(r.0.iter().map(|(_, v)| v.csv()))
                    .map_err(csv_io)?;
            }
            w.flush()?;
        }
        Format::Json => {
            if single && records.len() == 1 {
                serde_json::to_writer_pretty(&mut *out, &records[0])?;
            } else {
                serde_json::to_writer_pretty(&mut *out, records)?;
            }
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_uses_seventeen_digits() {
        assert_eq!(Field::Float(0.1).csv(), "1.0000000000000001e-1");
        assert_eq!(Field::Float(0.5).csv(), "5.0000000000000000e-1");
        let back: f64 = Field::Float(std::f64::consts::PI).csv().parse().unwrap();
        assert_eq!(back, std::f64::consts::PI);
        assert_eq!(Field::Null.csv(), "");
    }

    struct ClosedPipe;

    impl Write for ClosedPipe {
        fn write(&mut self, _: &[u8]) -> std::io::Result<usize> {
            Err(std::io::ErrorKind::BrokenPipe.into())
        }
        fn flush(&mut self) -> std::io::Result<()> {
            Ok(())
        }
    }

    #[test]
    fn csv_surfaces_broken_pipe() {
        let rows = vec![Record::new().with("x", 1.0); 10_000];
        let err = write_table(&mut ClosedPipe, Format::Csv, &["x"], &rows, false).unwrap_err();
        assert_eq!(err.kind(), std::io::ErrorKind::BrokenPipe);
    }

    #[test]
    fn json_keeps_column_order() {
        let r = Record::new()
            .with("z", 1.5)
            .with("a", Field::Null)
            .with("m", "x");
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"z":1.5,"a":null,"m":"x"}"#
        );
    }
}
