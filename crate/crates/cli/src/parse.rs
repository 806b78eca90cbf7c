//! Argument value formats: generator matrices, graded dimensions, coefficient groups.

use dualskel::zmod::{FinAbGroup, Phase, PhasePairing};

/// Rows separated by `;`, entries by `,` or whitespace: `"1,0;0,1"`. A JSON array of
/// arrays is accepted too. The empty string is the empty list.
pub fn matrix(s: &str) -> Result<Vec<Vec<u64>>, String> {
    let t = s.trim();
    if t.starts_with('[') {
        return serde_json::from_str(t).map_err(|e| format!("bad matrix {s:?}: {e}"));
    }
    t.split(';')
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .map(|r| {
            r.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<u64>().map_err(|e| format!("bad entry {x:?}: {e}")))
                .collect()
        })
        .collect()
}

/// `"m,n,count;..."` triples.
pub fn graded(s: &str) -> Result<Vec<(i64, i64, u64)>, String> {
    let mut out = Vec::new();
    for r in s.split(';').map(str::trim).filter(|r| !r.is_empty()) {
        let parts: Vec<&str> = r.split(',').map(str::trim).collect();
        let [m, n, c] = parts[..] else {
            return Err(format!("expected m,n,count in {r:?}"));
        };
        let bad = |x: &str| format!("bad number {x:?}");
        out.push((m.parse().map_err(|_| bad(m))?, n.parse().map_err(|_| bad(n))?, c.parse().map_err(|_| bad(c))?));
    }
    Ok(out)
}

/// `"Z/2 x Z/2"`, `"Z/4"` or `"Z/2xZ/3"`, with the pairing `diag(1/d_i)` on the
/// invariant factors.
pub fn coefficient(s: &str) -> Result<(FinAbGroup, PhasePairing), String> {
    let mut orders = Vec::new();
    for part in s.split(['x', '×', '*']).map(str::trim).filter(|p| !p.is_empty()) {
        let n = part
            .strip_prefix("Z/")
            .and_then(|n| n.trim().parse::<u64>().ok())
            .filter(|&n| n >= 2)
            .ok_or_else(|| format!("bad cyclic factor {part:?}"))?;
        orders.push(n);
    }
    if orders.is_empty() {
        return Err(format!("empty coefficient group {s:?}"));
    }
    let a = FinAbGroup::from_orders(&orders);
    let d: Vec<i64> = a.invariant_factors().iter().map(|x| x.try_into().expect("small order")).collect();
    let gram = (0..d.len()).map(|i| (0..d.len()).map(|j| if i == j { Phase::new(1, d[i]) } else { Phase::new(0, 1) }).collect()).collect();
    Ok((a.clone(), PhasePairing { left: a.clone(), right: a, gram }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices() {
        assert_eq!(matrix("1,0;0,1").unwrap(), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(matrix("[[1,1]]").unwrap(), vec![vec![1, 1]]);
        assert_eq!(matrix("").unwrap(), Vec::<Vec<u64>>::new());
        assert_eq!(matrix("1 2; 3 4").unwrap(), vec![vec![1, 2], vec![3, 4]]);
        assert!(matrix("1,a").is_err());
    }

    #[test]
    fn graded_triples() {
        assert_eq!(graded("1,0,2; -1,3,1").unwrap(), vec![(1, 0, 2), (-1, 3, 1)]);
        assert!(graded("1,2").is_err());
    }

    #[test]
    fn coefficients() {
        let (a, p) = coefficient("Z/2 x Z/2").unwrap();
        assert_eq!(a.order_u64(), 4);
        assert_eq!(p.gram.len(), 2);
        assert_eq!(coefficient("Z/2xZ/3").unwrap().0.order_u64(), 6);
        assert!(coefficient("Z/1").is_err());
        assert!(coefficient("Q").is_err());
    }
}
