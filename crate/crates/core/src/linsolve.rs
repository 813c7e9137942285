//! Gaussian elimination over a field.

use alloc::vec::Vec;

use crate::field::{Field, FieldElem};

/// Solves `A x = b` for a dense `rows x cols` matrix. Free variables are set to zero.
/// Returns `None` when the system is inconsistent.
pub fn solve(field: Field, a: &[Vec<FieldElem>], b: &[FieldElem], cols: usize) -> Option<Vec<FieldElem>> {
    let rows = a.len();
    let mut m: Vec<Vec<FieldElem>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.resize(cols, field.zero());
            row.push(bi.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for v in m[r].iter_mut() {
            *v = v.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..=cols {
                    let t = m[r][k].mul(&f);
                    m[i][k] = m[i][k].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = alloc::vec![field.zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_systems() {
        let f = Field::Q;
        let e = |n| f.from_i64(n);
        let a = alloc::vec![alloc::vec![e(1), e(1)], alloc::vec![e(1), e(-1)]];
        assert_eq!(solve(f, &a, &[e(3), e(1)], 2).unwrap(), alloc::vec![e(2), e(1)]);
        let a = alloc::vec![alloc::vec![e(0)]];
        assert!(solve(f, &a, &[e(1)], 1).is_none());
        assert_eq!(solve(f, &a, &[e(0)], 1).unwrap(), alloc::vec![e(0)]);
    }
}
