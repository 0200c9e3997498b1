use std::str::FromStr;

use crate::C64;

/// Largest number of points accepted in a grid.
pub const MAX_GRID: usize = 10_000;

/// Parses `re`, `re+imi`, `re-imi`, `imi` (also `i`, `-i`), whitespace
/// ignored.
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse complex number {s:?}");
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return match t.parse::<f64>() {
            Ok(re) if re.is_finite() => Ok(C64::new(re, 0.0)),
            _ => Err(bad()),
        };
    };
    // split at the last sign that does not belong to an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => v.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok(C64::new(re, im))
}

/// `START:END:COUNT`, points spaced linearly from start to end inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: C64,
    pub end: C64,
    pub count: usize,
}

impl GridSpec {
    pub fn points(&self) -> Vec<C64> {
        match self.count {
            0 => Vec::new(),
            1 => vec![self.start],
            k => (0..k)
                .map(|i| self.start + (self.end - self.start) * (i as f64 / (k - 1) as f64))
                .collect(),
        }
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, end, count] = parts[..] else {
            return Err(format!("grid must be START:END:COUNT, got {s:?}"));
        };
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| format!("bad grid count {count:?}"))?;
        if count == 0 || count > MAX_GRID {
            return Err(format!("grid count must be in 1..={MAX_GRID}, got {count}"));
        }
        Ok(GridSpec {
            start: parse_complex(start)?,
            end: parse_complex(end)?,
            count,
        })
    }
}

fn fmt_f64(v: f64) -> String {
    // no negative zero in output
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

/// `re+imi` with 17 significant digits in each part.
pub fn format_complex(z: C64) -> String {
    let im = fmt_f64(z.im);
    let sign = if im.starts_with('-') { "" } else { "+" };
    format!("{}{sign}{im}i", fmt_f64(z.re))
}

/// Short form for human-readable output.
pub fn format_complex_short(z: C64) -> String {
    // below the printed precision
    let snap = |v: f64| if v.abs() < 5e-11 { 0.0 } else { v };
    let (re, im) = (snap(z.re), snap(z.im));
    if im >= 0.0 {
        format!("{re:.10}+{im:.10}i")
    } else {
        format!("{re:.10}-{:.10}i", -im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("1"), Ok(c(1.0, 0.0)));
        assert_eq!(parse_complex("-0.3+1.1i"), Ok(c(-0.3, 1.1)));
        assert_eq!(parse_complex("1+0.7i"), Ok(c(1.0, 0.7)));
        assert_eq!(parse_complex("2.5-1e-3i"), Ok(c(2.5, -1e-3)));
        assert_eq!(parse_complex("1e-2+3E+1i"), Ok(c(0.01, 30.0)));
        assert_eq!(parse_complex("0.7i"), Ok(c(0.0, 0.7)));
        assert_eq!(parse_complex("-i"), Ok(c(0.0, -1.0)));
        assert_eq!(parse_complex("3 - i"), Ok(c(3.0, -1.0)));
        assert_eq!(parse_complex("-2"), Ok(c(-2.0, 0.0)));
        for bad in ["", "abc", "1+2", "1+2ii", "nan", "1++2i"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formatted_values_parse_back() {
        for z in [c(1.0, 0.0), c(-0.0, -2.5e-7), c(1e300, -3.0), c(0.1, 0.2)] {
            let s = format_complex(z);
            let back = parse_complex(&s).unwrap();
            assert_eq!(back, z + c(0.0, 0.0), "{s}");
        }
        assert_eq!(format_complex(c(-0.0, 0.0)), "0.0000000000000000e0+0.0000000000000000e0i");
    }

    #[test]
    fn grids() {
        let g: GridSpec = "0.5:1.5:11".parse().unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 11);
        assert_eq!(pts[0], c(0.5, 0.0));
        assert!((pts[10] - 1.5).norm() < 1e-15);
        let g: GridSpec = "2.5:2.5:1".parse().unwrap();
        assert_eq!(g.points(), vec![c(2.5, 0.0)]);
        let g: GridSpec = "0:1+1i:3".parse().unwrap();
        assert_eq!(g.points()[1], c(0.5, 0.5));
        for bad in ["0:1:0", "0:1", "0:1:x", "a:1:2", "0:1:10001"] {
            assert!(bad.parse::<GridSpec>().is_err(), "{bad}");
        }
    }
}
