use std::fmt;
use std::str::FromStr;

/// Parameter grid from `lo:hi:step`, `lo:hi` (ten steps) or a single value.
///
/// The grid starts at `lo` and keeps `lo + i step` while it is below
/// `hi + step/2`, so `hi` itself is included when it lies on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Range(pub Vec<f64>);

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("invalid range `{0}`: {1}")]
pub struct RangeError(String, &'static str);

impl FromStr for Range {
    type Err = RangeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why| RangeError(s.to_string(), why);
        let parts = s
            .split(':')
            .map(|p| p.trim().parse::<f64>().map_err(|_| bad("not a number")))
            .collect::<Result<Vec<_>, _>>()?;
        if parts.iter().any(|x| !x.is_finite()) {
            return Err(bad("bounds must be finite"));
        }
        let (lo, hi, step) = match parts[..] {
            [x] => return Ok(Range(vec![x])),
            [lo, hi] => (lo, hi, (hi - lo) / 10.0),
            [lo, hi, step] => (lo, hi, step),
            _ => return Err(bad("expected lo:hi:step")),
        };
        if hi < lo {
            return Err(bad("hi is below lo"));
        }
        if lo == hi {
            return Ok(Range(vec![lo]));
        }
        if !(step > 0.0) {
            return Err(bad("step must be positive"));
        }
        let count = ((hi - lo) / step + 0.5).ceil() as usize;
        let values: Vec<f64> = (0..count.max(1))
            .map(|i| lo + i as f64 * step)
            .filter(|&x| x < hi + step / 2.0)
            .collect();
        Ok(Range(values))
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(f64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}
