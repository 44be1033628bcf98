use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// Name of a binary variable.
///
/// `W` and `Y` carry the bit index of the two Simon inputs (1-based, as the
/// Simon Hamiltonian is written) or of the BV input (0-based). `Gw` and `Gy`
/// stand for the single-bit oracle outputs of the literal Simon model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarLabel {
    W(usize),
    Y(usize),
    Gw,
    Gy,
    Plain(usize),
}

impl fmt::Display for VarLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarLabel::W(i) => write!(f, "w{i}"),
            VarLabel::Y(i) => write!(f, "y{i}"),
            VarLabel::Gw => f.write_str("gw"),
            VarLabel::Gy => f.write_str("gy"),
            VarLabel::Plain(i) => write!(f, "x{i}"),
        }
    }
}

impl FromStr for VarLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "gw" => return Ok(VarLabel::Gw),
            "gy" => return Ok(VarLabel::Gy),
            _ => {}
        }
        let bad = || Error::InvalidLabel(s.to_string());
        let (kind, digits) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let index: usize = digits.parse().map_err(|_| bad())?;
        match kind {
            "w" => Ok(VarLabel::W(index)),
            "y" => Ok(VarLabel::Y(index)),
            "x" => Ok(VarLabel::Plain(index)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for VarLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VarLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_parse_round_trip() {
        for label in [
            VarLabel::W(1),
            VarLabel::Y(12),
            VarLabel::Gw,
            VarLabel::Gy,
            VarLabel::Plain(0),
        ] {
            assert_eq!(label.to_string().parse::<VarLabel>().unwrap(), label);
        }
    }

    #[test]
    fn rejects_unknown_labels() {
        for s in ["", "w", "z3", "w-1", "gx", "x1a"] {
            assert!(s.parse::<VarLabel>().is_err(), "{s}");
        }
    }
}
