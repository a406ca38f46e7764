use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::TripleError;
use crate::drg::ParameterTable;

/// Distances of a base triple `(u, v, w)`: `duv = d(u,v)`, `duw = d(u,w)`, `dvw = d(v,w)`.
///
/// Written `duv,duw,dvw` on the command line and in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TripleConfig {
    pub duv: usize,
    pub duw: usize,
    pub dvw: usize,
}

impl TripleConfig {
    pub const fn new(duv: usize, duw: usize, dvw: usize) -> Self {
        TripleConfig { duv, duw, dvw }
    }

    /// Checks range and that some `w` exists for a pair `(u, v)` at distance `duv`.
    pub fn check(&self, pt: &ParameterTable) -> Result<(), TripleError> {
        let d = pt.diameter();
        let in_range = |x: usize| (1..=d).contains(&x);
        if !(in_range(self.duv) && in_range(self.duw) && in_range(self.dvw)) {
            return Err(TripleError::UnrealizableConfig(*self));
        }
        if pt.p(self.duv, self.duw, self.dvw) == 0 {
            return Err(TripleError::UnrealizableConfig(*self));
        }
        Ok(())
    }

    /// Every realizable configuration of a table, in lexicographic order.
    pub fn all_realizable(pt: &ParameterTable) -> Vec<TripleConfig> {
        let d = pt.diameter();
        let mut out = Vec::new();
        for duv in 1..=d {
            for duw in 1..=d {
                for dvw in 1..=d {
                    let cfg = TripleConfig::new(duv, duw, dvw);
                    if cfg.check(pt).is_ok() {
                        out.push(cfg);
                    }
                }
            }
        }
        out
    }

    /// Lexicographically smallest configuration in the orbit under relabelling `u, v, w`.
    pub fn canonical(&self) -> TripleConfig {
        super::super::symmetry::TriplePermutation::all()
            .iter()
            .map(|s| s.apply_config(*self))
            .min()
            .expect("nonempty group")
    }
}

impl fmt::Display for TripleConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.duv, self.duw, self.dvw)
    }
}

impl FromStr for TripleConfig {
    type Err = TripleError;

    fn from_str(s: &str) -> Result<Self, TripleError> {
        let err = || TripleError::ParseConfig(s.to_string());
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<usize> = t
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| err()))
            .collect::<Result<_, _>>()?;
        match parts[..] {
            [a, b, c] => Ok(TripleConfig::new(a, b, c)),
            _ => Err(err()),
        }
    }
}

/// Flat index of cell `[ijh]`, `1 <= i,j,h <= d`, in lexicographic order.
pub fn cell_index(d: usize, i: usize, j: usize, h: usize) -> usize {
    debug_assert!((1..=d).contains(&i) && (1..=d).contains(&j) && (1..=d).contains(&h));
    ((i - 1) * d + (j - 1)) * d + (h - 1)
}

pub fn cell_of_index(d: usize, idx: usize) -> (usize, usize, usize) {
    (idx / (d * d) + 1, (idx / d) % d + 1, idx % d + 1)
}

pub fn cell_name(d: usize, idx: usize) -> String {
    let (i, j, h) = cell_of_index(d, idx);
    if d < 10 {
        format!("[{i}{j}{h}]")
    } else {
        format!("[{i},{j},{h}]")
    }
}

pub fn cell_names(d: usize) -> Vec<String> {
    (0..d * d * d).map(|c| cell_name(d, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drg::intersection_numbers;

    #[test]
    fn cell_indexing_is_lexicographic() {
        let d = 3;
        let mut prev = None;
        for i in 1..=d {
            for j in 1..=d {
                for h in 1..=d {
                    let c = cell_index(d, i, j, h);
                    assert_eq!(cell_of_index(d, c), (i, j, h));
                    if let Some(p) = prev {
                        assert_eq!(c, p + 1);
                    }
                    prev = Some(c);
                }
            }
        }
        assert_eq!(cell_name(3, cell_index(3, 2, 1, 3)), "[213]");
    }

    #[test]
    fn parse_config() {
        assert_eq!("2,2,3".parse::<TripleConfig>().unwrap(), TripleConfig::new(2, 2, 3));
        assert_eq!("(2, 1,1)".parse::<TripleConfig>().unwrap(), TripleConfig::new(2, 1, 1));
        assert!("2,2".parse::<TripleConfig>().is_err());
    }

    #[test]
    fn realizability() {
        let pt = intersection_numbers(&"{55,54,2;1,1,54}".parse().unwrap()).unwrap();
        assert!(TripleConfig::new(2, 1, 1).check(&pt).is_ok());
        // p^1_11 = 0: no triangles
        assert!(matches!(
            TripleConfig::new(1, 1, 1).check(&pt),
            Err(TripleError::UnrealizableConfig(_))
        ));
        assert!(TripleConfig::new(4, 1, 1).check(&pt).is_err());
        assert_eq!(TripleConfig::new(1, 2, 2).canonical(), TripleConfig::new(1, 2, 2));
        assert_eq!(TripleConfig::new(3, 2, 2).canonical(), TripleConfig::new(2, 2, 3));
    }
}
