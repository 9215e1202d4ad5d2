//! Inclusive integer ranges and lists as given on the command line.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: i64,
    pub hi: i64,
}

impl Span {
    pub fn new(lo: i64, hi: i64) -> Self {
        Self { lo, hi }
    }

    pub fn iter(self) -> impl Iterator<Item = i64> + Clone {
        self.lo..=self.hi
    }

    pub fn clamp(self, lo: i64, hi: i64) -> Span {
        Span::new(self.lo.max(lo), self.hi.min(hi))
    }

    pub fn contains(self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    /// `a..b` or `a..=b` (both inclusive), or a single value `a`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("bad integer '{t}' in range '{s}'"));
        let span = match s.split_once("..") {
            Some((a, b)) => Span::new(num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = num(s)?;
                Span::new(v, v)
            }
        };
        if span.lo > span.hi {
            return Err(format!("empty range '{s}'"));
        }
        Ok(span)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

/// `1,2,3` as a list of integers.
pub fn parse_list(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("bad integer '{t}' in list '{s}'")))
        .collect()
}

/// Every tuple of length `len` over `span`, lexicographically.
pub fn tuples(len: usize, span: Span) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                span.iter().map(move |v| {
                    let mut next = p.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    out
}
