use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid parameters: {0}")]
pub struct ParamError(pub String);

/// Checks the torus-knot convention `gcd(p, q) = 1`, `|p| > q >= 2`.
pub fn validate_torus(p: i64, q: i64) -> Result<(), ParamError> {
    if q < 2 || p.abs() <= q {
        return Err(ParamError(format!("torus knot needs |p| > q >= 2, got (p, q) = ({p}, {q})")));
    }
    if p.gcd(&q) != 1 {
        return Err(ParamError(format!("p and q must be coprime, got ({p}, {q})")));
    }
    Ok(())
}

/// The four constructions, one per shape of `(q, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    #[serde(rename = "S_ODD_QGT2")]
    SOddQGt2,
    #[serde(rename = "S_ODD_Q2")]
    SOddQ2,
    #[serde(rename = "S_EVEN_GT2")]
    SEvenGt2,
    #[serde(rename = "S_EQ_2")]
    SEq2,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::SOddQGt2 => "S_ODD_QGT2",
            CaseTag::SOddQ2 => "S_ODD_Q2",
            CaseTag::SEvenGt2 => "S_EVEN_GT2",
            CaseTag::SEq2 => "S_EQ_2",
        }
    }

    /// L-degree of the constructed annihilator.
    pub fn l_degree(self) -> i64 {
        match self {
            CaseTag::SOddQGt2 => 5,
            CaseTag::SOddQ2 | CaseTag::SEvenGt2 => 4,
            CaseTag::SEq2 => 3,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The `(r, s)`-cable over the `(p, q)`-torus knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CablingParams {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub s: i64,
}

impl CablingParams {
    pub fn new(p: i64, q: i64, r: i64, s: i64) -> Result<Self, ParamError> {
        validate_torus(p, q)?;
        if s < 2 {
            return Err(ParamError(format!("cable needs s >= 2, got s = {s}")));
        }
        if r.gcd(&s) != 1 {
            return Err(ParamError(format!("r and s must be coprime, got ({r}, {s})")));
        }
        Ok(Self { p, q, r, s })
    }

    pub fn pqs(&self) -> i64 {
        self.p * self.q * self.s
    }

    /// False exactly when `r` lies strictly between 0 and `pqs`.
    pub fn theorem_applies(&self) -> bool {
        let pqs = self.pqs();
        if pqs > 0 {
            self.r <= 0 || self.r >= pqs
        } else {
            self.r >= 0 || self.r <= pqs
        }
    }

    pub fn case_tag(&self) -> CaseTag {
        if self.s == 2 {
            CaseTag::SEq2
        } else if self.s % 2 == 0 {
            CaseTag::SEvenGt2
        } else if self.q == 2 {
            CaseTag::SOddQ2
        } else {
            CaseTag::SOddQGt2
        }
    }
}

impl fmt::Display for CablingParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, q={}, r={}, s={})", self.p, self.q, self.r, self.s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(CablingParams::new(3, 2, 13, 2).is_ok());
        assert!(CablingParams::new(2, 3, 1, 2).is_err());
        assert!(CablingParams::new(6, 3, 1, 2).is_err());
        assert!(CablingParams::new(3, 2, 4, 2).is_err());
        assert!(CablingParams::new(3, 2, 1, 1).is_err());
    }

    #[test]
    fn theorem_range() {
        let ok = |p, q, r, s| CablingParams::new(p, q, r, s).unwrap().theorem_applies();
        assert!(ok(3, 2, 13, 2));
        assert!(ok(3, 2, -1, 2));
        assert!(!ok(3, 2, 5, 2));
        assert!(ok(-5, 3, 7, 2));
        assert!(!ok(-5, 3, -7, 2));
        assert!(ok(-5, 3, -31, 2));
    }

    #[test]
    fn dispatch() {
        let tag = |p, q, r, s| CablingParams::new(p, q, r, s).unwrap().case_tag();
        assert_eq!(tag(3, 2, 13, 2), CaseTag::SEq2);
        assert_eq!(tag(3, 2, 31, 3), CaseTag::SOddQ2);
        assert_eq!(tag(5, 3, 121, 4), CaseTag::SEvenGt2);
        assert_eq!(tag(5, 3, 76, 5), CaseTag::SOddQGt2);
    }
}
