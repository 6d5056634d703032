//! `--oracle` specifications:
//!
//! - `R1:A`, `R2:B`, `R3:C`, … pair counts over one of the sets A–D
//! - `r5`, `s6`, … tuple counts over evil (`r`) or odious (`s`) numbers
//!
//! Either may end in `+c` to compare value n with the oracle at n + c.

use std::str::FromStr;

use autoseq::oracles::{brute_r, rs_table, AutomaticSet, PairOrder, TupleKind};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Oracle {
    Pairs { order: PairOrder, set: AutomaticSet, shift: u64 },
    Tuples { j: u32, kind: TupleKind, shift: u64 },
}

impl FromStr for Oracle {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Usage(format!("bad oracle `{s}`; expected e.g. R2:A, R3:C+1 or r5"));
        let (body, shift) = match s.split_once('+') {
            Some((b, c)) => (b, c.parse::<u64>().map_err(|_| bad())?),
            None => (s, 0),
        };
        if let Some((r, set)) = body.split_once(':') {
            let order = match r {
                "R1" => PairOrder::Any,
                "R2" => PairOrder::Less,
                "R3" => PairOrder::LessEq,
                _ => return Err(bad()),
            };
            let set = match set {
                "A" => AutomaticSet::A,
                "B" => AutomaticSet::B,
                "C" => AutomaticSet::C,
                "D" => AutomaticSet::D,
                _ => return Err(bad()),
            };
            return Ok(Oracle::Pairs { order, set, shift });
        }
        let kind = match body.chars().next() {
            Some('r') => TupleKind::R,
            Some('s') => TupleKind::S,
            _ => return Err(bad()),
        };
        let j: u32 = body[1..].parse().map_err(|_| bad())?;
        if j < 1 {
            return Err(bad());
        }
        Ok(Oracle::Tuples { j, kind, shift })
    }
}

impl Oracle {
    /// Oracle values for n in from..=to.
    pub fn values(&self, from: u64, to: u64) -> Vec<u128> {
        match *self {
            Oracle::Pairs { order, set, shift } => {
                (from..=to).map(|n| brute_r(order, set, n + shift) as u128).collect()
            }
            Oracle::Tuples { j, kind, shift } => rs_table(j, kind, to + shift)[(from + shift) as usize..].to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse() {
        assert_eq!(
            "R3:C+1".parse::<Oracle>().unwrap(),
            Oracle::Pairs { order: PairOrder::LessEq, set: AutomaticSet::C, shift: 1 }
        );
        assert_eq!("s6".parse::<Oracle>().unwrap(), Oracle::Tuples { j: 6, kind: TupleKind::S, shift: 0 });
        for bad in ["R4:A", "R2:E", "x5", "r", "R2:A+x"] {
            assert!(bad.parse::<Oracle>().is_err(), "{bad}");
        }
    }

    #[test]
    fn values() {
        let o: Oracle = "R2:A".parse().unwrap();
        assert_eq!(o.values(8, 9), vec![1, 2]);
        let t: Oracle = "r2".parse().unwrap();
        assert_eq!(t.values(9, 9), vec![4]);
    }
}
