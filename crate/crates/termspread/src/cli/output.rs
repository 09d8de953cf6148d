//! File and number output helpers shared by the CLI commands.
//!
//! Machine-readable files carry every real number with 17 significant digits
//! (`{:.16e}`), which round-trips `f64` exactly; human tables round to four
//! decimals. Files are written to a temporary sibling and renamed into place
//! so a failure never leaves a partial file.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::series::Series;

/// A real number at full double precision, e.g. `1.0445000000000000e0`.
pub fn fmt_machine(v: f64) -> String {
    format!("{v:.16e}")
}

/// A real number for human tables, four decimals.
pub fn fmt_human(v: f64) -> String {
    format!("{v:.4}")
}

/// Write `contents` to `path` atomically: a temporary file in the same
/// directory is written, flushed, and renamed over the target.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let io_err = |source: std::io::Error| Error::Io {
        path: path.display().to_string(),
        source,
    };
    let file_name = path
        .file_name()
        .ok_or_else(|| io_err(std::io::Error::other("path has no file name")))?;
    let mut tmp_name = file_name.to_os_string();
    tmp_name.push(".tmp");
    let tmp_path = path.with_file_name(tmp_name);

    let mut file = std::fs::File::create(&tmp_path).map_err(io_err)?;
    file.write_all(contents.as_bytes()).map_err(io_err)?;
    file.sync_all().map_err(io_err)?;
    drop(file);
    std::fs::rename(&tmp_path, path).map_err(io_err)
}

/// A quarterly series in the ingest format: header `date,value`, one row per
/// observation, values at machine precision.
pub fn series_csv(series: &Series) -> String {
    let mut out = String::from("date,value\n");
    for (q, v) in series.iter() {
        out.push_str(&format!("{q},{}\n", fmt_machine(v)));
    }
    out
}

/// A CSV table from a header and prerendered rows.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// A JSON number, or null for non-finite values (JSON has no NaN/infinity).
pub fn json_number(v: f64) -> Value {
    serde_json::Number::from_f64(v).map(Value::Number).unwrap_or(Value::Null)
}

/// Serialize a JSON value with machine-precision reals and a trailing
/// newline.
pub fn json_to_string(value: &Value) -> String {
    struct MachineFormatter;
    impl serde_json::ser::Formatter for MachineFormatter {
        fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
        where
            W: ?Sized + std::io::Write,
        {
            write!(writer, "{value:.16e}")
        }
    }

    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, MachineFormatter);
    value.serialize(&mut ser).expect("in-memory JSON serialization cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("serialized JSON is UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{QuarterId, Unit};
    use serde_json::json;

    #[test]
    fn machine_format_round_trips_doubles() {
        for v in [
            1.0445,
            -0.123456789123456789,
            1.0 / 3.0,
            6.22096057427174e-16,
            f64::MIN_POSITIVE,
            1.7976931348623157e308,
            0.0,
        ] {
            let s = fmt_machine(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
    }

    #[test]
    fn human_format_is_four_decimals() {
        assert_eq!(fmt_human(1.04451), "1.0445");
        assert_eq!(fmt_human(-0.5), "-0.5000");
    }

    #[test]
    fn atomic_write_replaces_and_leaves_no_temp() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, "first\n").unwrap();
        write_atomic(&path, "second\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "second\n");
        let names: Vec<_> = std::fs::read_dir(dir.path())
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .collect();
        assert_eq!(names, vec![std::ffi::OsString::from("out.csv")]);
    }

    #[test]
    fn atomic_write_to_missing_directory_is_io_error() {
        let err = write_atomic(Path::new("/nonexistent/dir/out.csv"), "x");
        assert!(matches!(err, Err(Error::Io { .. })));
    }

    #[test]
    fn series_csv_is_ingest_format() {
        let start = QuarterId::new(1990, 4).unwrap();
        let s = Series::new(
            "gdp",
            Unit::Level,
            vec![(start, 100.0), (start.add(1), 102.5)],
        )
        .unwrap();
        let text = series_csv(&s);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("date,value"));
        assert_eq!(lines.next(), Some("1990Q4,1.0000000000000000e2"));
        assert_eq!(lines.next(), Some("1991Q1,1.0250000000000000e2"));
        assert_eq!(lines.next(), None);
    }

    #[test]
    fn json_uses_machine_reals_and_null_for_nonfinite() {
        let v = json!({
            "b": json_number(1.0445),
            "t": json_number(f64::NAN),
            "n": 42,
        });
        let s = json_to_string(&v);
        assert!(s.contains("1.0445000000000000e0"), "{s}");
        assert!(s.contains("\"t\":null"), "{s}");
        assert!(s.contains("\"n\":42"), "{s}");
        assert!(s.ends_with('\n'));
    }
}
