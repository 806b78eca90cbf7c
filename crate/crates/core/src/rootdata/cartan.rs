use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::RootDataError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A Dynkin type such as `A3` or `E8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootDataError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 2,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { family, rank })
        } else {
            Err(RootDataError::InvalidType(format!("{family:?}{rank}")))
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// The type of the Langlands dual algebra.
    pub fn dual(&self) -> SimpleType {
        let family = match self.family {
            Family::B => Family::C,
            Family::C => Family::B,
            f => f,
        };
        SimpleType { family, rank: self.rank }
    }

    /// Every valid type of rank at most `max_rank`, in a fixed order.
    pub fn all_up_to(max_rank: usize) -> Vec<SimpleType> {
        let mut out = Vec::new();
        for family in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
            for rank in 1..=max_rank {
                if let Ok(t) = SimpleType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Cartan matrix `C_ij = ⟨α_i, α_j^∨⟩` in Bourbaki numbering.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C => {
                for i in 0..n - 1 {
                    link(i, i + 1);
                }
            }
            Family::D => {
                // chain 1..n-2, node n-2 joined to n-1 and n
                for i in 0..n.saturating_sub(3) {
                    link(i, i + 1);
                }
                if n >= 3 {
                    link(n - 3, n - 2);
                    link(n - 3, n - 1);
                }
            }
            Family::E => {
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            Family::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            Family::G => link(0, 1),
        }
        match self.family {
            // α_n short
            Family::B => c[n - 2][n - 1] = -2,
            Family::C => c[n - 1][n - 2] = -2,
            Family::F => c[1][2] = -2,
            // α_1 short
            Family::G => c[1][0] = -3,
            _ => {}
        }
        c
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = RootDataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(RootDataError::InvalidType(s.to_string())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| RootDataError::InvalidType(s.to_string()))?;
        SimpleType::new(fam, rank)
    }
}

/// Parses `A1`, `A1xA1`, `A1+B2`.
pub fn parse_algebra(s: &str) -> Result<Vec<SimpleType>, RootDataError> {
    s.split(['x', '+', '*', ','])
        .filter(|p| !p.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// Block-diagonal Cartan matrix of a semisimple algebra.
pub fn block_cartan(types: &[SimpleType]) -> Vec<Vec<i64>> {
    let r: usize = types.iter().map(|t| t.rank).sum();
    let mut c = vec![vec![0i64; r]; r];
    let mut off = 0;
    for t in types {
        let b = t.cartan_matrix();
        for i in 0..t.rank {
            for j in 0..t.rank {
                c[off + i][off + j] = b[i][j];
            }
        }
        off += t.rank;
    }
    c
}

/// Index ranges of the blocks in simple-root order.
pub fn block_ranges(types: &[SimpleType]) -> Vec<std::ops::Range<usize>> {
    let mut off = 0;
    types
        .iter()
        .map(|t| {
            let r = off..off + t.rank;
            off += t.rank;
            r
        })
        .collect()
}

pub fn algebra_label(types: &[SimpleType]) -> String {
    if types.is_empty() {
        return "0".into();
    }
    types.iter().map(ToString::to_string).collect::<Vec<_>>().join("x")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::{smith_normal_form, IntMatrix};
    use num_traits::ToPrimitive;

    fn det(t: SimpleType) -> i64 {
        IntMatrix::from_rows(&t.cartan_matrix()).det().to_i64().unwrap()
    }

    #[test]
    fn determinants_match_center_orders() {
        for n in 1..=8 {
            assert_eq!(det(SimpleType::new(Family::A, n).unwrap()), n as i64 + 1);
        }
        for n in 2..=8 {
            assert_eq!(det(SimpleType::new(Family::B, n).unwrap()), 2);
            assert_eq!(det(SimpleType::new(Family::C, n).unwrap()), 2);
            assert_eq!(det(SimpleType::new(Family::D, n).unwrap()), 4);
        }
        assert_eq!(det("E6".parse().unwrap()), 3);
        assert_eq!(det("E7".parse().unwrap()), 2);
        assert_eq!(det("E8".parse().unwrap()), 1);
        assert_eq!(det("F4".parse().unwrap()), 1);
        assert_eq!(det("G2".parse().unwrap()), 1);
    }

    #[test]
    fn b_and_c_are_transposes() {
        for n in 2..6 {
            let b = SimpleType::new(Family::B, n).unwrap().cartan_matrix();
            let c = SimpleType::new(Family::C, n).unwrap().cartan_matrix();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(b[i][j], c[j][i]);
                }
            }
        }
    }

    #[test]
    fn e8_cartan_is_unimodular() {
        let s = smith_normal_form(&IntMatrix::from_rows(&"E8".parse::<SimpleType>().unwrap().cartan_matrix()));
        assert!(s.diagonal().iter().all(|d| d == &1.into()));
    }

    #[test]
    fn rejects_invalid_types() {
        assert!("E5".parse::<SimpleType>().is_err());
        assert!("B1".parse::<SimpleType>().is_err());
        assert!("F3".parse::<SimpleType>().is_err());
        assert!("Q2".parse::<SimpleType>().is_err());
        assert_eq!(parse_algebra("A1xA1").unwrap().len(), 2);
    }

    #[test]
    fn low_rank_d() {
        assert_eq!(SimpleType::new(Family::D, 2).unwrap().cartan_matrix(), vec![vec![2, 0], vec![0, 2]]);
        let d3 = SimpleType::new(Family::D, 3).unwrap().cartan_matrix();
        assert_eq!(d3, vec![vec![2, -1, -1], vec![-1, 2, 0], vec![-1, 0, 2]]);
    }
}
