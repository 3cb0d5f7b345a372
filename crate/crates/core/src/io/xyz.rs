use std::fmt::Write;
use std::path::Path;

use crate::pcore::PointCloud;
use crate::{Error, Result, Vec3};

pub(super) fn parse(text: &str, path: &Path) -> Result<Vec<Vec3>> {
    let mut points = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(err(format!("expected 3 values, found {}", fields.len())));
        }
        let mut p = Vec3::zeros();
        for (a, f) in fields.iter().enumerate() {
            let v: f64 = f.parse().map_err(|_| err(format!("`{f}` is not a number")))?;
            if !v.is_finite() {
                return Err(err(format!("`{f}` is not finite")));
            }
            p[a] = v;
        }
        points.push(p);
    }
    Ok(points)
}

pub(super) fn render(cloud: &PointCloud) -> String {
    let mut out = String::with_capacity(cloud.len() * 48);
    for p in cloud {
        writeln!(out, "{} {} {}", p.x, p.y, p.z).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_lines_with_comments() {
        let pts = parse("# header\n0 0 0\n\n1 2 3 # trailing\n", Path::new("t.xyz")).unwrap();
        assert_eq!(pts, vec![Vec3::zeros(), Vec3::new(1.0, 2.0, 3.0)]);
    }

    #[test]
    fn bad_line_is_named() {
        let text = "0 0 0\n0 0 0\n0 0 0\n0 0 0\n1 2\n";
        match parse(text, Path::new("t.xyz")) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("1 2 x\n", Path::new("t")), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("1 2 nan\n", Path::new("t")), Err(Error::Parse { line: 1, .. })));
    }
}
