use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged integer matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r][c]
    }

    pub fn data(&self) -> &[Vec<BigInt>] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (k, a) in self.data[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += a * &other.data[k][j];
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Positive invariant factors, each dividing the next.
    pub divisors: Vec<BigInt>,
    pub rank: usize,
}

/// Invariant factors by unimodular row and column operations, pivoting on
/// the entry of least absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut a = m.data.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = least_entry(&a, t..rows, t..cols) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            let mut leftover = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                let (head, tail) = a.split_at_mut(i);
                for (x, y) in tail[0][t..].iter_mut().zip(&head[t][t..]) {
                    *x -= &q * y;
                }
                leftover |= !a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for row in a[t..].iter_mut() {
                    let y = row[t].clone();
                    row[j] -= &q * y;
                }
                leftover |= !a[t][j].is_zero();
            }
            if !leftover {
                break;
            }
            // A remainder smaller than the pivot becomes the new pivot.
            let (i, j) = least_in_cross(&a, t, rows, cols);
            a.swap(t, i);
            for row in a.iter_mut() {
                row.swap(t, j);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            if g != diag[i] {
                let l = &diag[i] / &g * &diag[j];
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    SmithForm {
        rank: diag.len(),
        divisors: diag,
    }
}

fn least_entry(
    a: &[Vec<BigInt>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
                if a[i][j].abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn least_in_cross(a: &[Vec<BigInt>], t: usize, rows: usize, cols: usize) -> (usize, usize) {
    let mut best = (t, t);
    for i in t + 1..rows {
        if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
            best = (i, t);
        }
    }
    for j in t + 1..cols {
        if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
            best = (t, j);
        }
    }
    best
}

/// Rank over `Z/p`.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = m
        .data
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let (_, digits) = x.mod_floor(&pb).to_u64_digits();
                    digits.first().copied().unwrap_or(0)
                })
                .collect()
        })
        .collect();
    let mulmod = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let inv = |x: u64| {
        // Fermat: x^(p-2).
        let (mut base, mut e, mut acc) = (x, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..m.cols {
        let Some(piv) = (rank..m.rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let scale = inv(a[rank][c]);
        for x in a[rank].iter_mut() {
            *x = mulmod(*x, scale);
        }
        for r in 0..m.rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for j in 0..m.cols {
                    let sub = mulmod(f, a[rank][j]);
                    a[r][j] = ((a[r][j] as u128 + p as u128 - sub as u128) % p as u128) as u64;
                }
            }
        }
        rank += 1;
    }
    rank
}
