use std::fmt;

use super::RelError;

/// An eventually periodic binary sequence `prefix period period ...`, kept in
/// normal form: the period is primitive and the prefix is as short as possible.
/// Two values are equal as sequences iff they are equal as structs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventuallyPeriodic {
    prefix: Vec<bool>,
    period: Vec<bool>,
}

fn primitive_root(period: &[bool]) -> Vec<bool> {
    let n = period.len();
    (1..=n)
        .find(|&d| n.is_multiple_of(d) && (d..n).all(|i| period[i] == period[i - d]))
        .map(|d| period[..d].to_vec())
        .expect("d = n always works")
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl EventuallyPeriodic {
    pub fn new(prefix: Vec<bool>, period: Vec<bool>) -> Result<EventuallyPeriodic, RelError> {
        if period.is_empty() {
            return Err(RelError::EmptyPeriod);
        }
        let mut prefix = prefix;
        let mut period = primitive_root(&period);
        // Absorb trailing prefix bits into the cycle: x (y..x) = (x y..) shifted.
        while let Some(&last) = prefix.last() {
            if last != *period.last().expect("non-empty") {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        Ok(EventuallyPeriodic { prefix, period })
    }

    /// Parses two bit strings, e.g. `("0", "01")`.
    pub fn parse(prefix: &str, period: &str) -> Result<EventuallyPeriodic, RelError> {
        let bits = |s: &str| -> Result<Vec<bool>, RelError> {
            s.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(RelError::BadBits(s.to_string())),
                })
                .collect()
        };
        EventuallyPeriodic::new(bits(prefix)?, bits(period)?)
    }

    pub fn prefix(&self) -> &[bool] {
        &self.prefix
    }

    pub fn period(&self) -> &[bool] {
        &self.period
    }

    pub fn bit(&self, i: usize) -> bool {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// Eventual agreement. Past both prefixes each sequence is periodic, so
    /// one window of length lcm(periods) after the longer prefix decides it.
    pub fn eventually_agrees(&self, other: &EventuallyPeriodic) -> bool {
        let start = self.prefix.len().max(other.prefix.len());
        let (a, b) = (self.period.len(), other.period.len());
        let window = a / gcd(a, b) * b;
        (start..start + window).all(|i| self.bit(i) == other.bit(i))
    }
}

fn bits_str(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl fmt::Display for EventuallyPeriodic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "seq({},{})",
            bits_str(&self.prefix),
            bits_str(&self.period)
        )
    }
}

/// A point of the underlying space: a named atom or an eventually periodic
/// binary sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Atom(String),
    Seq(EventuallyPeriodic),
}

impl Point {
    pub fn atom(id: impl Into<String>) -> Point {
        Point::Atom(id.into())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Atom(id) => write!(f, "'{id}'"),
            Point::Seq(s) => write!(f, "{s}"),
        }
    }
}
