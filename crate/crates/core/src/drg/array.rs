use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::DrgError;

/// Intersection array `{b0,...,b_{d-1}; c1,...,c_d}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntersectionArray {
    b: Vec<u64>,
    c: Vec<u64>,
}

impl IntersectionArray {
    pub fn new(b: Vec<u64>, c: Vec<u64>) -> Result<Self, DrgError> {
        let arr = IntersectionArray { b, c };
        arr.validate()?;
        Ok(arr)
    }

    fn validate(&self) -> Result<(), DrgError> {
        let bad = |msg: String| Err(DrgError::InvalidArray(msg));
        if self.b.len() != self.c.len() {
            return bad(format!("{} b-entries but {} c-entries", self.b.len(), self.c.len()));
        }
        if self.b.len() < 2 {
            return bad("diameter must be at least 2".into());
        }
        if self.b.iter().chain(&self.c).any(|&x| x == 0) {
            return bad("entries must be positive".into());
        }
        if self.c[0] != 1 {
            return bad(format!("c1 must be 1, got {}", self.c[0]));
        }
        let k = self.b[0];
        for i in 0..=self.diameter() {
            if self.b_at(i) + self.c_at(i) > k {
                return bad(format!("b{i} + c{i} exceeds the valency {k}"));
            }
        }
        Ok(())
    }

    pub fn diameter(&self) -> usize {
        self.b.len()
    }

    pub fn valency(&self) -> u64 {
        self.b[0]
    }

    pub fn b(&self) -> &[u64] {
        &self.b
    }

    pub fn c(&self) -> &[u64] {
        &self.c
    }

    /// `b_i` with `b_d = 0`.
    pub fn b_at(&self, i: usize) -> u64 {
        self.b.get(i).copied().unwrap_or(0)
    }

    /// `c_i` with `c_0 = 0`.
    pub fn c_at(&self, i: usize) -> u64 {
        if i == 0 {
            0
        } else {
            self.c[i - 1]
        }
    }

    /// `a_i = k - b_i - c_i`.
    pub fn a_at(&self, i: usize) -> u64 {
        self.valency() - self.b_at(i) - self.c_at(i)
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

impl FromStr for IntersectionArray {
    type Err = DrgError;

    fn from_str(s: &str) -> Result<Self, DrgError> {
        let err = || DrgError::ParseArray(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(err)?;
        let (bs, cs) = inner.split_once(';').ok_or_else(err)?;
        let parse = |part: &str| -> Result<Vec<u64>, DrgError> {
            part.split(',')
                .map(|x| x.trim().parse::<u64>().map_err(|_| err()))
                .collect()
        };
        IntersectionArray::new(parse(bs)?, parse(cs)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let a: IntersectionArray = " { 55, 54,2 ; 1,1, 54 } ".parse().unwrap();
        assert_eq!(a.to_string(), "{55,54,2;1,1,54}");
        assert_eq!(a.diameter(), 3);
        assert_eq!(a.a_at(3), 1);
        assert_eq!(a.a_at(1), 0);
    }

    #[test]
    fn rejects_malformed() {
        for s in ["55,54,2;1,1,54", "{55,54;1}", "{3;1}", "{3,2;2,1}", "{3,0;1,1}", "{3,x;1,1}", "{3,3;1,3}"] {
            assert!(s.parse::<IntersectionArray>().is_err(), "{s}");
        }
    }
}
