//! Inclusive `a..b` ranges for quantum-number arguments.

use std::ops::RangeInclusive;
use std::str::FromStr;

fn parse_bounds<T>(s: &str) -> Result<RangeInclusive<T>, String>
where
    T: FromStr + PartialOrd + Copy + std::fmt::Display,
{
    let num = |t: &str| {
        t.trim()
            .parse::<T>()
            .map_err(|_| format!("invalid range `{s}`: `{t}` is not an integer in range"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            (num(a)?, num(b)?)
        }
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("invalid range `{s}`: {lo} > {hi}"));
    }
    Ok(lo..=hi)
}

/// Non-negative quanta, e.g. `0..30` or `3`.
pub fn quanta(s: &str) -> Result<RangeInclusive<u32>, String> {
    parse_bounds(s)
}

/// Signed magnetic numbers, e.g. `-2..2`.
pub fn signed(s: &str) -> Result<RangeInclusive<i32>, String> {
    parse_bounds(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepted() {
        assert_eq!(quanta("0..30").unwrap(), 0..=30);
        assert_eq!(quanta("7").unwrap(), 7..=7);
        assert_eq!(quanta(" 2 .. 4 ").unwrap(), 2..=4);
        assert_eq!(quanta("1..=3").unwrap(), 1..=3);
        assert_eq!(signed("-2..2").unwrap(), -2..=2);
        assert_eq!(signed("-3..-1").unwrap(), -3..=-1);
        assert_eq!(signed("-1").unwrap(), -1..=-1);
    }

    #[test]
    fn rejected() {
        for bad in [
            "", "..", "1..", "..3", "a..b", "3..1", "1...3", "-1", "1.5", "0..1..2",
        ] {
            assert!(quanta(bad).is_err(), "{bad}");
        }
        assert!(signed("2..-2").is_err());
    }
}
