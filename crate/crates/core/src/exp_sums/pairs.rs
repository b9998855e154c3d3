use std::fmt;

use rug::Rational;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentPair {
    pub kappa: Rational,
    pub ell: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Process {
    A,
    B,
}

impl ExponentPair {
    pub fn new(kappa: impl Into<Rational>, ell: impl Into<Rational>) -> Self {
        ExponentPair { kappa: kappa.into(), ell: ell.into() }
    }

    /// The trivial pair `(0, 1)`.
    pub fn trivial() -> Self {
        ExponentPair::new(0, 1)
    }

    /// `0 ≤ κ ≤ 1/2 ≤ ℓ ≤ 1` and `κ + ℓ ≤ 1`.
    pub fn is_valid(&self) -> bool {
        let half = Rational::from((1, 2));
        self.kappa >= 0
            && self.kappa <= half
            && self.ell >= half
            && self.ell <= 1
            && Rational::from(&self.kappa + &self.ell) <= 1
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.kappa.to_f64(), self.ell.to_f64())
    }
}

impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.kappa, self.ell)
    }
}

impl Serialize for ExponentPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ExponentPair", 2)?;
        st.serialize_field("kappa", &self.kappa.to_string())?;
        st.serialize_field("ell", &self.ell.to_string())?;
        st.end()
    }
}

/// `A: (κ, ℓ) ↦ (κ/(2κ+2), (κ+ℓ+1)/(2κ+2))`, `B: (κ, ℓ) ↦ (ℓ − 1/2, κ + 1/2)`.
pub fn apply_process(pair: &ExponentPair, proc: Process) -> ExponentPair {
    let half = Rational::from((1, 2));
    match proc {
        Process::A => {
            let den = Rational::from(2 * &pair.kappa) + 2;
            let kappa = Rational::from(&pair.kappa / &den);
            let ell = (Rational::from(&pair.kappa + &pair.ell) + 1) / den;
            ExponentPair { kappa, ell }
        }
        Process::B => ExponentPair {
            kappa: Rational::from(&pair.ell - &half),
            ell: Rational::from(&pair.kappa + &half),
        },
    }
}

/// Parse a word like `BA3B` into processes in written order; a digit run
/// repeats the preceding letter.
pub fn parse_word(word: &str) -> Result<Vec<Process>> {
    let mut out = Vec::new();
    let mut chars = word.chars().peekable();
    while let Some(c) = chars.next() {
        let p = match c {
            'A' => Process::A,
            'B' => Process::B,
            _ => return Err(Error::Parse(format!("invalid character {c:?} in process word {word:?}"))),
        };
        let mut digits = String::new();
        while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
            digits.push(*d);
            chars.next();
        }
        let reps: usize = if digits.is_empty() {
            1
        } else {
            digits
                .parse()
                .ok()
                .filter(|&n| n <= 64)
                .ok_or_else(|| Error::Parse(format!("bad repeat count {digits:?} in {word:?}")))?
        };
        out.extend(std::iter::repeat_n(p, reps));
    }
    Ok(out)
}

/// Apply a process word to `start`, rightmost letter first.
pub fn apply_word(word: &str, start: &ExponentPair) -> Result<ExponentPair> {
    Ok(parse_word(word)?
        .into_iter()
        .rev()
        .fold(start.clone(), |p, proc| apply_process(&p, proc)))
}
