//! Parameter grids: one `p q r s` tuple per line, `#` starts a comment.

use std::fmt::Write;

use crate::jones::CablingParams;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct GridError {
    pub line: usize,
    pub message: String,
}

pub fn parse_grid(text: &str) -> Result<Vec<CablingParams>, GridError> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| GridError { line: k + 1, message };
        let nums = line
            .split_whitespace()
            .map(|w| w.parse::<i64>().map_err(|e| err(format!("{w:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let [p, q, r, s] = nums[..] else {
            return Err(err(format!("expected 4 integers, got {}", nums.len())));
        };
        out.push(CablingParams::new(p, q, r, s).map_err(|e| err(e.to_string()))?);
    }
    Ok(out)
}

pub const DEFAULT_TORUS: [(i64, i64); 6] = [(3, 2), (5, 2), (5, 3), (7, 3), (-3, 2), (-5, 3)];
pub const DEFAULT_S: [i64; 4] = [2, 3, 4, 5];

/// Every torus knot and `s` above, with `r` in `{-1, -7, pqs + 1}`; for
/// negative `p` also `{1, 7, pqs - 1}` so both sides of `pqs` are covered.
pub fn default_grid() -> Vec<CablingParams> {
    let mut out = Vec::new();
    for (p, q) in DEFAULT_TORUS {
        for s in DEFAULT_S {
            let pqs = p * q * s;
            let mut rs = vec![-1, -7, pqs + 1];
            if p < 0 {
                rs.extend([1, 7, pqs - 1]);
            }
            out.extend(rs.into_iter().map(|r| CablingParams::new(p, q, r, s).expect("coprime by construction")));
        }
    }
    out
}

pub fn render_grid(grid: &[CablingParams]) -> String {
    let mut out = String::from("# p q r s\n");
    for g in grid {
        writeln!(out, "{} {} {} {}", g.p, g.q, g.r, g.s).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jones::CaseTag;

    #[test]
    fn parses_comments_and_blanks() {
        let g = parse_grid("# header\n3 2 13 2  # trefoil cable\n\n-5 3 -7 3\n").unwrap();
        assert_eq!(g, vec![CablingParams::new(3, 2, 13, 2).unwrap(), CablingParams::new(-5, 3, -7, 3).unwrap()]);
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(parse_grid("3 2 13 2\n3 2 x 2").unwrap_err().line, 2);
        assert_eq!(parse_grid("\n3 2 13").unwrap_err().line, 2);
        assert!(parse_grid("3 2 4 2").is_err());
    }

    #[test]
    fn default_grid_covers_all_cases() {
        let g = default_grid();
        assert_eq!(g.len(), 96);
        for tag in [CaseTag::SOddQGt2, CaseTag::SOddQ2, CaseTag::SEvenGt2, CaseTag::SEq2] {
            assert!(g.iter().any(|p| p.case_tag() == tag));
        }
        assert!(g.iter().any(|p| p.p < 0 && p.theorem_applies()));
        assert!(g.iter().any(|p| !p.theorem_applies()));
        assert_eq!(parse_grid(&render_grid(&g)).unwrap(), g);
    }
}
