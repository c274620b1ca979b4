use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A level of the hierarchy, stored doubled: `twice_value = 3` is level 3/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level {
    twice_value: u32,
}

impl Level {
    pub const ZERO: Level = Level { twice_value: 0 };
    pub const HALF: Level = Level { twice_value: 1 };
    pub const ONE: Level = Level { twice_value: 2 };
    pub const THREE_HALVES: Level = Level { twice_value: 3 };

    pub const fn from_twice(twice_value: u32) -> Level {
        Level { twice_value }
    }

    pub fn twice_value(self) -> u32 {
        self.twice_value
    }

    pub fn is_half(self) -> bool {
        self.twice_value % 2 == 1
    }

    /// The level half a step below, if any.
    pub fn pred(self) -> Option<Level> {
        self.twice_value.checked_sub(1).map(Level::from_twice)
    }

    pub fn succ(self) -> Level {
        Level::from_twice(self.twice_value + 1)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_half() {
            write!(f, "{}/2", self.twice_value)
        } else {
            write!(f, "{}", self.twice_value / 2)
        }
    }
}

impl FromStr for Level {
    type Err = Error;

    /// Accepts `n`, `n/2` and decimal forms such as `1.5`.
    fn from_str(s: &str) -> Result<Level, Error> {
        let bad = || Error::UnsupportedLevel(s.to_string());
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: u32 = num.trim().parse().map_err(|_| bad())?;
            return match den.trim() {
                "1" => num.checked_mul(2).map(Level::from_twice).ok_or_else(bad),
                "2" => Ok(Level::from_twice(num)),
                _ => Err(bad()),
            };
        }
        if let Some((int, frac)) = s.split_once('.') {
            let int: u32 = int.parse().map_err(|_| bad())?;
            let half = match frac.trim_end_matches('0') {
                "" => 0,
                "5" => 1,
                _ => return Err(bad()),
            };
            return int
                .checked_mul(2)
                .map(|t| Level::from_twice(t + half))
                .ok_or_else(bad);
        }
        let int: u32 = s.parse().map_err(|_| bad())?;
        int.checked_mul(2).map(Level::from_twice).ok_or_else(bad)
    }
}

impl Serialize for Level {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Level {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Level, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
