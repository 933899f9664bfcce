//! Exact integer and rational linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::geom::Q;

pub type IVec = Vec<BigInt>;
pub type IMat = Vec<Vec<BigInt>>;

pub fn bi(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Row Hermite form (integer row echelon with positive pivots, entries above
/// a pivot reduced into [0, pivot)). Returns the nonzero rows.
pub fn hnf_rows(mat: &[IVec]) -> IMat {
    let mut m: IMat = mat.to_vec();
    let rows = m.len();
    if rows == 0 {
        return m;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        // gcd the column below r into one pivot row
        loop {
            let mut idx: Vec<usize> = (r..rows).filter(|&i| !m[i][c].is_zero()).collect();
            if idx.len() <= 1 {
                break;
            }
            idx.sort_by(|&i, &j| m[i][c].abs().cmp(&m[j][c].abs()));
            let (small, big) = (idx[0], idx[1]);
            let f = m[big][c].div_floor(&m[small][c]);
            for k in 0..cols {
                let t = &m[big][k] - &f * &m[small][k];
                m[big][k] = t;
            }
        }
        let piv = match (r..rows).find(|&i| !m[i][c].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        m.swap(r, piv);
        if m[r][c].is_negative() {
            for k in 0..cols {
                m[r][k] = -m[r][k].clone();
            }
        }
        for i in 0..r {
            let f = m[i][c].div_floor(&m[r][c]);
            if !f.is_zero() {
                for k in 0..cols {
                    let t = &m[i][k] - &f * &m[r][k];
                    m[i][k] = t;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    m.truncate(r);
    m
}

/// Is `v` in the integer row-span of `rows`?
pub fn in_integer_row_span(rows: &[IVec], v: &[BigInt]) -> bool {
    let h = hnf_rows(rows);
    let mut w = v.to_vec();
    for row in &h {
        let c = match row.iter().position(|x| !x.is_zero()) {
            Some(c) => c,
            None => continue,
        };
        if w[c].is_zero() {
            continue;
        }
        let (quo, rem) = w[c].div_rem(&row[c]);
        if !rem.is_zero() {
            return false;
        }
        for k in 0..w.len() {
            let t = &w[k] - &quo * &row[k];
            w[k] = t;
        }
    }
    w.iter().all(|x| x.is_zero())
}

/// Canonical representative of `v` modulo the integer row-span of `rows`.
/// Two vectors are congruent iff their representatives are equal.
pub fn reduce_mod_row_span(rows: &[IVec], v: &[BigInt]) -> IVec {
    let h = hnf_rows(rows);
    let mut w = v.to_vec();
    for row in &h {
        let c = match row.iter().position(|x| !x.is_zero()) {
            Some(c) => c,
            None => continue,
        };
        let f = w[c].div_floor(&row[c]);
        if !f.is_zero() {
            for k in 0..w.len() {
                let t = &w[k] - &f * &row[k];
                w[k] = t;
            }
        }
    }
    w
}

/// Basis of the integer kernel {x : rows^T x = 0 ... } of the matrix whose
/// COLUMNS are `cols` (each of length m): all integer x with sum x_j cols_j = 0.
/// Returned rows are Hermite-reduced (canonical).
pub fn integer_kernel(cols: &[IVec]) -> IMat {
    let k = cols.len();
    if k == 0 {
        return vec![];
    }
    let m = cols[0].len();
    // rows of work matrix: [ I_k | cols_j^T ] for j in 0..k
    let mut work: IMat = Vec::with_capacity(k);
    for (j, col) in cols.iter().enumerate() {
        let mut row = vec![BigInt::zero(); k + m];
        row[j] = bi(1);
        for i in 0..m {
            row[k + i] = col[i].clone();
        }
        work.push(row);
    }
    // eliminate the right block by integer row ops
    let mut r = 0;
    for c in 0..m {
        let cc = k + c;
        loop {
            let mut idx: Vec<usize> = (r..k).filter(|&i| !work[i][cc].is_zero()).collect();
            if idx.len() <= 1 {
                break;
            }
            idx.sort_by(|&i, &j| work[i][cc].abs().cmp(&work[j][cc].abs()));
            let (small, big) = (idx[0], idx[1]);
            let f = work[big][cc].div_floor(&work[small][cc]);
            for t in 0..k + m {
                let v = &work[big][t] - &f * &work[small][t];
                work[big][t] = v;
            }
        }
        if let Some(p) = (r..k).find(|&i| !work[i][cc].is_zero()) {
            work.swap(r, p);
            r += 1;
            if r == k {
                break;
            }
        }
    }
    let kernel: IMat = work[r..]
        .iter()
        .map(|row| row[0..k].to_vec())
        .collect();
    hnf_rows(&kernel)
}

/// Rank of a rational matrix given by rows.
pub fn rational_rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let nr = m.len();
    if nr == 0 {
        return 0;
    }
    let nc = m[0].len();
    let mut r = 0;
    for c in 0..nc {
        let piv = match (r..nr).find(|&i| !m[i][c].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        m.swap(r, piv);
        let inv = m[r][c].recip();
        for k in c..nc {
            m[r][k] = &m[r][k] * &inv;
        }
        for i in 0..nr {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..nc {
                    let t = &m[i][k] - &f * &m[r][k];
                    m[i][k] = t;
                }
            }
        }
        r += 1;
        if r == nr {
            break;
        }
    }
    r
}

/// Is `v` in the rational row-span of `rows`?
pub fn in_rational_span(rows: &[Vec<Q>], v: &[Q]) -> bool {
    let base = rational_rank(rows);
    let mut aug = rows.to_vec();
    aug.push(v.to_vec());
    rational_rank(&aug) == base
}

/// Solve A X = B exactly for matrices over Q, where A has full column rank
/// and the system is consistent; returns None otherwise.
pub fn solve_exact(a: &[Vec<Q>], b: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    if n == 0 {
        return None;
    }
    let k = a[0].len();
    let w = b[0].len();
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|i| a[i].iter().cloned().chain(b[i].iter().cloned()).collect())
        .collect();
    let mut r = 0;
    for c in 0..k {
        let piv = (r..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(r, piv);
        let inv = m[r][c].recip();
        for t in 0..k + w {
            m[r][t] = &m[r][t] * &inv;
        }
        for i in 0..n {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for t in 0..k + w {
                    let v = &m[i][t] - &f * &m[r][t];
                    m[i][t] = v;
                }
            }
        }
        r += 1;
    }
    if r < k {
        return None;
    }
    // consistency: rows beyond rank must be zero everywhere
    for row in m.iter().skip(r) {
        if row.iter().any(|x| !x.is_zero()) {
            return None;
        }
    }
    let x: Vec<Vec<Q>> = (0..k).map(|i| m[i][k..].to_vec()).collect();
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn iv(v: &[i64]) -> IVec {
        v.iter().map(|&x| bi(x)).collect()
    }

    #[test]
    fn kernel_of_duplicated_columns() {
        let cols = vec![iv(&[1, 0, 1]), iv(&[0, 1, 1]), iv(&[1, 0, 1])];
        let ker = integer_kernel(&cols);
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0], iv(&[1, 0, -1]));
    }

    #[test]
    fn kernel_of_independent_columns_is_trivial() {
        let cols = vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[0, 0, 1])];
        assert!(integer_kernel(&cols).is_empty());
    }

    #[test]
    fn integer_span_membership() {
        let rows = vec![iv(&[2, 0]), iv(&[0, 3])];
        assert!(in_integer_row_span(&rows, &iv(&[4, -3])));
        assert!(!in_integer_row_span(&rows, &iv(&[1, 0])));
        assert!(!in_integer_row_span(&rows, &iv(&[0, 2])));
    }

    #[test]
    fn mod_span_representatives_agree() {
        let rows = vec![iv(&[1, -1, 1, -1])];
        let a = reduce_mod_row_span(&rows, &iv(&[1, 0, 0, 0]));
        let b = reduce_mod_row_span(&rows, &iv(&[0, 1, 1, 0]));
        // (1,0,0,0)-(0,1,1,0) = (1,-1,-1,0) is not a multiple of the row
        assert_ne!(a, b);
        let c = reduce_mod_row_span(&rows, &iv(&[2, -1, 1, -1]));
        let d = reduce_mod_row_span(&rows, &iv(&[1, 0, 0, 0]));
        assert_eq!(c, d);
    }

    #[test]
    fn exact_solve_round_trip() {
        let one = Q::one;
        let a = vec![
            vec![one(), Q::zero()],
            vec![Q::zero(), one()],
            vec![one(), one()],
        ];
        let b = vec![
            vec![Q::from_integer(bi(3))],
            vec![Q::from_integer(bi(5))],
            vec![Q::from_integer(bi(8))],
        ];
        let x = solve_exact(&a, &b).unwrap();
        assert_eq!(x[0][0], Q::from_integer(bi(3)));
        assert_eq!(x[1][0], Q::from_integer(bi(5)));
        let b_bad = vec![
            vec![Q::from_integer(bi(3))],
            vec![Q::from_integer(bi(5))],
            vec![Q::from_integer(bi(9))],
        ];
        assert!(solve_exact(&a, &b_bad).is_none());
    }
}
