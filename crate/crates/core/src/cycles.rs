//! Cycle decomposition of finite functional graphs.
//!
//! Every state of a self-map on `0..n` either lies on exactly one cycle or
//! on a transient path leading into one. The cycle lengths are the least
//! periods of the periodic states; transient states contribute nothing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleClass {
    pub length: u64,
    pub count: u64,
}

/// Cycle structure of a self-map of a finite set.
///
/// `cycle_lengths` is the multiset of cycle lengths stored as distinct
/// lengths in increasing order with their multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleReport {
    pub cycle_lengths: Vec<CycleClass>,
    pub g: u64,
    pub cycle_count: u64,
    pub state_count: u64,
    pub periodic_state_count: u64,
}

impl CycleReport {
    fn from_lengths(state_count: u64, mut lengths: Vec<u64>) -> Self {
        // a nonempty finite domain always carries a cycle
        assert!(!lengths.is_empty(), "functional graph without cycles");
        lengths.sort_unstable();
        let mut classes: Vec<CycleClass> = Vec::new();
        for len in lengths {
            match classes.last_mut() {
                Some(c) if c.length == len => c.count += 1,
                _ => classes.push(CycleClass { length: len, count: 1 }),
            }
        }
        CycleReport {
            g: classes.iter().fold(0, |g, c| gcd(g, c.length)),
            cycle_count: classes.iter().map(|c| c.count).sum(),
            periodic_state_count: classes.iter().map(|c| c.length * c.count).sum(),
            state_count,
            cycle_lengths: classes,
        }
    }

    /// The cycle lengths with repetition, in increasing order.
    pub fn lengths(&self) -> impl Iterator<Item = u64> + '_ {
        self.cycle_lengths
            .iter()
            .flat_map(|c| std::iter::repeat_n(c.length, c.count as usize))
    }

    pub fn has_length(&self, length: u64) -> bool {
        self.cycle_lengths.iter().any(|c| c.length == length)
    }
}

const UNVISITED: u8 = 0;
const ON_PATH: u8 = 1;
const DONE: u8 = 2;

/// Walks the functional graph of `successor` on `0..domain_size` and calls
/// `visit(entry, length)` once per cycle, where `entry` is a state on it.
///
/// Three-color marking: every state is walked onto the current path once
/// and finalized once, so `successor` is evaluated at most three times per
/// state.
pub fn for_each_cycle(
    domain_size: usize,
    successor: impl Fn(usize) -> usize,
    mut visit: impl FnMut(usize, u64),
) -> Result<()> {
    let next = |state: usize| -> Result<usize> {
        let value = successor(state);
        if value >= domain_size {
            return Err(Error::SuccessorOutOfRange {
                state,
                value,
                domain_size,
            });
        }
        Ok(value)
    };
    let mut color = vec![UNVISITED; domain_size];
    for start in 0..domain_size {
        if color[start] != UNVISITED {
            continue;
        }
        let mut x = start;
        while color[x] == UNVISITED {
            color[x] = ON_PATH;
            x = next(x)?;
        }
        if color[x] == ON_PATH {
            let mut length = 1;
            let mut y = next(x)?;
            while y != x {
                length += 1;
                y = next(y)?;
            }
            visit(x, length);
        }
        let mut y = start;
        while color[y] == ON_PATH {
            color[y] = DONE;
            y = next(y)?;
        }
    }
    Ok(())
}

/// Cycle report of an arbitrary total self-map on `0..domain_size`.
pub fn cycle_report(domain_size: usize, successor: impl Fn(usize) -> usize) -> Result<CycleReport> {
    if domain_size == 0 {
        return Err(Error::InvalidShape {
            shape: vec![],
            reason: "empty domain".into(),
        });
    }
    let mut lengths = Vec::new();
    for_each_cycle(domain_size, successor, |_, len| lengths.push(len))?;
    Ok(CycleReport::from_lengths(domain_size as u64, lengths))
}

/// Cycle report of a self-map given as a successor table.
pub fn cycle_report_table<T: Copy + TryInto<usize>>(table: &[T]) -> Result<CycleReport> {
    cycle_report(table.len(), |s| table[s].try_into().unwrap_or(usize::MAX))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_on_six() {
        let r = cycle_report(6, |a| (a + 1) % 6).unwrap();
        assert_eq!(r.lengths().collect::<Vec<_>>(), vec![6]);
        assert_eq!(r.g, 6);
        assert_eq!(r.periodic_state_count, 6);
    }

    #[test]
    fn identity_on_five() {
        let r = cycle_report(5, |a| a).unwrap();
        assert_eq!(r.lengths().collect::<Vec<_>>(), vec![1; 5]);
        assert_eq!(r.g, 1);
        assert_eq!(r.cycle_count, 5);
    }

    #[test]
    fn two_and_three_cycle() {
        let r = cycle_report_table(&[1u32, 0, 3, 4, 2]).unwrap();
        assert_eq!(r.lengths().collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(r.g, 1);
    }

    #[test]
    fn transients_are_not_periodic() {
        // 0 -> 1 -> 2 -> 3 -> 2
        let r = cycle_report_table(&[1u8, 2, 3, 2]).unwrap();
        assert_eq!(r.lengths().collect::<Vec<_>>(), vec![2]);
        assert_eq!(r.state_count, 4);
        assert_eq!(r.periodic_state_count, 2);
    }

    #[test]
    fn out_of_range_successor() {
        assert!(matches!(
            cycle_report_table(&[0u32, 5]),
            Err(Error::SuccessorOutOfRange { state: 1, value: 5, .. })
        ));
        assert!(cycle_report(0, |a| a).is_err());
    }

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd(0, 6), 6);
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(gcd(7, 1), 1);
    }
}
