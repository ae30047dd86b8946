//! Subspaces of F_q^n as canonical reduced row-echelon bases, with
//! enumeration and exact rank computation.

use super::field::FiniteField;

/// A subspace given by its reduced row-echelon basis; the canonical form is
/// unique per subspace, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Vec<Vec<u8>>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Gauss-Jordan reduction; returns the nonzero rows in reduced row-echelon
/// form.
pub fn rref(ff: &FiniteField, mut rows: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(src) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, src);
        let inv = ff.inv(rows[pivot_row][col]);
        for c in col..ncols {
            rows[pivot_row][c] = ff.mul(rows[pivot_row][c], inv);
        }
        for r in 0..rows.len() {
            if r != pivot_row && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in col..ncols {
                    let sub = ff.mul(factor, rows[pivot_row][c]);
                    rows[r][c] = ff.sub(rows[r][c], sub);
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

pub fn rank(ff: &FiniteField, rows: Vec<Vec<u8>>) -> usize {
    rref(ff, rows).len()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for v in start..n {
            current.push(v);
            go(v + 1, n, k, current, out);
            current.pop();
        }
    }
    go(0, n, k, &mut current, &mut out);
    out
}

/// All `dim`-dimensional subspaces of F_q^ambient, each exactly once, in a
/// deterministic order: pivot-column sets ascending, free entries counting
/// up row-major.
pub fn enumerate_subspaces(ff: &FiniteField, ambient: usize, dim: usize) -> Vec<Subspace> {
    let q = ff.order() as u8;
    let mut out = Vec::new();
    if dim == 0 {
        out.push(Subspace { ambient, basis: Vec::new() });
        return out;
    }
    for pivots in combinations(ambient, dim) {
        // free positions: to the right of each pivot, excluding pivot columns
        let mut free = Vec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..ambient {
                if !pivots.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        let mut values = vec![0u8; free.len()];
        loop {
            let mut basis = vec![vec![0u8; ambient]; dim];
            for (r, &pc) in pivots.iter().enumerate() {
                basis[r][pc] = 1;
            }
            for (&(r, c), &v) in free.iter().zip(&values) {
                basis[r][c] = v;
            }
            out.push(Subspace { ambient, basis });
            // odometer
            let mut pos = values.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                if values[pos] + 1 < q {
                    values[pos] += 1;
                    for v in values[pos + 1..].iter_mut() {
                        *v = 0;
                    }
                    break;
                }
                if pos == 0 {
                    values.clear();
                    break;
                }
            }
            if values.is_empty() && !free.is_empty() {
                break;
            }
            if free.is_empty() {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q_binomial;
    use num::BigInt;

    #[test]
    fn subspace_counts_match_q_binomials() {
        for q in [2i64, 3] {
            let ff = FiniteField::new(q).unwrap();
            for n in 0..=4usize {
                for m in 0..=n {
                    let got = enumerate_subspaces(&ff, n, m).len();
                    assert_eq!(
                        BigInt::from(got),
                        q_binomial(n as i64, m as i64, q),
                        "q={q} n={n} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn enumerated_bases_are_canonical_and_distinct() {
        let ff = FiniteField::new(2).unwrap();
        let subs = enumerate_subspaces(&ff, 4, 2);
        for s in &subs {
            assert_eq!(rref(&ff, s.basis.clone()), s.basis);
        }
        for (a, s) in subs.iter().enumerate() {
            for t in subs.iter().skip(a + 1) {
                assert_ne!(s, t);
            }
        }
    }

    #[test]
    fn rank_and_rref() {
        let ff = FiniteField::new(3).unwrap();
        // second row is twice the first over F_3
        let rows = vec![vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]];
        assert_eq!(rank(&ff, rows), 2);
    }
}
