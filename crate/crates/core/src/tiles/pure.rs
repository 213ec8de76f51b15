use std::fmt;

use super::HandError;

/// A sorted run of same-suit tile numbers, each in `1..=9`, no value more
/// than four times. The suit itself is implicit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PureTiles(Vec<u8>);

impl PureTiles {
    /// Every copy of one suit.
    pub const MAX_LEN: usize = 36;

    /// Sorts `values` and validates them.
    pub fn new(mut values: Vec<u8>) -> Result<PureTiles, HandError> {
        if values.len() > Self::MAX_LEN {
            return Err(HandError::WrongCount { found: values.len() });
        }
        if let Some(&bad) = values.iter().find(|v| !(1..=9).contains(*v)) {
            return Err(HandError::BadToken { token: bad.to_string() });
        }
        values.sort_unstable();
        let seq = PureTiles(values);
        if let Some(v) = (1..=9).find(|&v| seq.count(v) > 4) {
            return Err(HandError::FiveIdentical { tile: v.to_string() });
        }
        Ok(seq)
    }

    /// Parses a compact digit string such as `"11123456788999"`.
    pub fn parse(digits: &str) -> Result<PureTiles, HandError> {
        let values = digits
            .chars()
            .filter(|c| !c.is_whitespace() && !matches!(c, '(' | ')' | ','))
            .map(|c| match c.to_digit(10) {
                Some(d) if d >= 1 => Ok(d as u8),
                _ => Err(HandError::BadToken { token: c.to_string() }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        PureTiles::new(values)
    }

    pub(crate) fn from_sorted_unchecked(values: Vec<u8>) -> PureTiles {
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        PureTiles(values)
    }

    pub fn from_counts(counts: &[u8; 9]) -> PureTiles {
        let mut values = Vec::new();
        for (i, &c) in counts.iter().enumerate() {
            values.extend(std::iter::repeat_n(i as u8 + 1, c as usize));
        }
        PureTiles(values)
    }

    pub fn values(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, value: u8) -> usize {
        self.0.iter().filter(|&&v| v == value).count()
    }

    /// Counts indexed by `value - 1`.
    pub fn counts(&self) -> [u8; 9] {
        let mut out = [0u8; 9];
        for &v in &self.0 {
            out[v as usize - 1] += 1;
        }
        out
    }

    /// First occurrence of each distinct value.
    pub fn set_sequence(&self) -> PureTiles {
        let mut values = self.0.clone();
        values.dedup();
        PureTiles(values)
    }

    /// What is left after removing the set sequence.
    pub fn residual_sequence(&self) -> PureTiles {
        let values = self
            .0
            .iter()
            .enumerate()
            .filter(|&(i, v)| i > 0 && self.0[i - 1] == *v)
            .map(|(_, &v)| v)
            .collect();
        PureTiles(values)
    }
}

impl fmt::Display for PureTiles {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for v in &self.0 {
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for PureTiles {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
