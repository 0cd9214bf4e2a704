//! Point clouds as UTF-8 CSV: one point per row, `n` numeric columns, an
//! optional header row starting with `#`.

use std::io::{Read, Write};

use thiserror::Error;

use crate::Vector;

#[derive(Debug, Error)]
pub enum CloudError {
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Reads a point cloud. `dim` pins the column count; otherwise the first
/// data row fixes it.
pub fn read_points<R: Read>(reader: R, dim: Option<usize>) -> Result<Vec<Vector>, CloudError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut expected = dim;
    let mut points = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| CloudError::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let values = record
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| CloudError::Parse { line, message: format!("not a finite number: {f:?}") })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        let n = *expected.get_or_insert(values.len());
        if values.len() != n {
            return Err(CloudError::Parse { line, message: format!("expected {n} columns, found {}", values.len()) });
        }
        points.push(Vector::from_vec(values));
    }
    Ok(points)
}

pub fn write_points<W: Write>(mut writer: W, points: &[Vector], header: Option<&str>) -> std::io::Result<()> {
    if let Some(h) = header {
        writeln!(writer, "# {h}")?;
    }
    for p in points {
        let row: Vec<String> = p.iter().map(|x| format!("{x:.17e}")).collect();
        writeln!(writer, "{}", row.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_header_and_rows() {
        let text = "# x,y,z\n1,2,3\n 4.5 , -1e-3 , 0\n";
        let pts = read_points(text.as_bytes(), None).unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[1][1], -1e-3);
    }

    #[test]
    fn arity_mismatch_reports_line() {
        let text = "# header\n1,2,3\n4,5\n";
        match read_points(text.as_bytes(), None) {
            Err(CloudError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(read_points("1,2\n".as_bytes(), Some(3)).is_err());
    }

    #[test]
    fn garbage_is_rejected() {
        match read_points("1,2\n1,abc\n".as_bytes(), None) {
            Err(CloudError::Parse { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains("abc"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn write_then_read_is_exact() {
        let pts = vec![Vector::from_vec(vec![0.1, 1.0 / 3.0]), Vector::from_vec(vec![-2.5e-300, 7.0])];
        let mut buf = Vec::new();
        write_points(&mut buf, &pts, Some("test")).unwrap();
        assert_eq!(read_points(buf.as_slice(), Some(2)).unwrap(), pts);
    }
}
