use std::fmt::Write;
use std::path::Path;

use crate::pcore::PointCloud;
use crate::{Error, Result, Vec3};

struct Element {
    name: String,
    count: usize,
    properties: Vec<Property>,
}

struct Property {
    name: String,
    is_list: bool,
}

pub(super) fn parse(text: &str, path: &Path) -> Result<Vec<Vec3>> {
    let fail = |line: usize, message: &str| Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.to_string(),
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));

    match lines.next() {
        Some((_, "ply")) => {}
        _ => return Err(fail(1, "missing `ply` magic")),
    }
    let mut elements: Vec<Element> = Vec::new();
    let mut saw_format = false;
    loop {
        let Some((no, line)) = lines.next() else {
            return Err(fail(0, "header ended without `end_header`"));
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["format", "ascii", _] => saw_format = true,
            ["format", other, ..] => return Err(fail(no, &format!("unsupported format `{other}`; only ascii is read"))),
            ["comment", ..] | ["obj_info", ..] | [] => {}
            ["element", name, count] => {
                let count = count.parse().map_err(|_| fail(no, "bad element count"))?;
                elements.push(Element {
                    name: name.to_string(),
                    count,
                    properties: Vec::new(),
                });
            }
            ["property", "list", _, _, name] | ["property", _, name] => {
                let el = elements.last_mut().ok_or_else(|| fail(no, "property before any element"))?;
                el.properties.push(Property {
                    name: name.to_string(),
                    is_list: tokens[1] == "list",
                });
            }
            ["end_header"] => break,
            _ => return Err(fail(no, &format!("unrecognized header line `{line}`"))),
        }
    }
    if !saw_format {
        return Err(fail(0, "missing `format` line"));
    }

    let mut points = Vec::new();
    for el in &elements {
        if el.name != "vertex" {
            for _ in 0..el.count {
                lines.next().ok_or_else(|| fail(0, &format!("truncated `{}` element", el.name)))?;
            }
            continue;
        }
        let column = |axis: &str| el.properties.iter().position(|p| p.name == axis);
        let (Some(ix), Some(iy), Some(iz)) = (column("x"), column("y"), column("z")) else {
            return Err(fail(0, "vertex element lacks x/y/z properties"));
        };
        if el.properties.iter().any(|p| p.is_list) {
            return Err(fail(0, "list properties on vertices are not supported"));
        }
        points.reserve(el.count);
        for _ in 0..el.count {
            let (no, line) = lines.next().ok_or_else(|| fail(0, "fewer vertex lines than declared"))?;
            let values: Vec<&str> = line.split_whitespace().collect();
            if values.len() != el.properties.len() {
                return Err(fail(
                    no,
                    &format!("expected {} values, found {}", el.properties.len(), values.len()),
                ));
            }
            let get = |i: usize| -> Result<f64> {
                match values[i].parse::<f64>() {
                    Ok(v) if v.is_finite() => Ok(v),
                    _ => Err(fail(no, &format!("`{}` is not a finite number", values[i]))),
                }
            };
            points.push(Vec3::new(get(ix)?, get(iy)?, get(iz)?));
        }
        break;
    }
    Ok(points)
}

pub(super) fn render(cloud: &PointCloud) -> String {
    let mut out = String::with_capacity(cloud.len() * 48 + 128);
    out.push_str("ply\nformat ascii 1.0\n");
    writeln!(out, "element vertex {}", cloud.len()).unwrap();
    out.push_str("property double x\nproperty double y\nproperty double z\nend_header\n");
    for p in cloud {
        writeln!(out, "{} {} {}", p.x, p.y, p.z).unwrap();
    }
    out
}
