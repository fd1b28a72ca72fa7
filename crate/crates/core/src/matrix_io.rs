//! Plain-text matrix format: a line holding `n`, then `n` lines of `n`
//! whitespace-separated `re,im` pairs.

use std::fmt::Write;

use crate::linalg::{c, CMat};
use crate::OperatorError;

pub fn write_matrix(m: &CMat) -> String {
    let n = m.nrows();
    let mut out = String::new();
    let _ = writeln!(out, "{n}");
    for i in 0..n {
        let row: Vec<String> = (0..m.ncols()).map(|j| format!("{:e},{:e}", m[[i, j]].re, m[[i, j]].im)).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<CMat, OperatorError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let err = |line: usize, msg: String| OperatorError::Parse { line: line + 1, msg };
    let (l0, first) = lines.next().ok_or_else(|| err(0, "missing dimension line".into()))?;
    let n: usize = first.trim().parse().map_err(|_| err(l0, format!("bad dimension {first:?}")))?;
    if n == 0 {
        return Err(err(l0, "dimension must be positive".into()));
    }
    let mut m = CMat::zeros((n, n));
    for i in 0..n {
        let (li, line) = lines.next().ok_or_else(|| err(l0 + i + 1, format!("missing row {i}")))?;
        let items: Vec<&str> = line.split_whitespace().collect();
        if items.len() != n {
            return Err(err(li, format!("expected {n} entries, found {}", items.len())));
        }
        for (j, item) in items.iter().enumerate() {
            let (re, im) = item.split_once(',').ok_or_else(|| err(li, format!("entry {item:?} is not re,im")))?;
            let re: f64 = re.parse().map_err(|_| err(li, format!("bad real part {re:?}")))?;
            let im: f64 = im.parse().map_err(|_| err(li, format!("bad imaginary part {im:?}")))?;
            m[[i, j]] = c(re, im);
        }
    }
    if let Some((li, _)) = lines.next() {
        return Err(err(li, "trailing data after matrix".into()));
    }
    Ok(m)
}
