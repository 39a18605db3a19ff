//! Smith normal form over a Euclidean domain.

use crate::ring::euclid::Euclidean;

pub type Matrix<E> = Vec<Vec<E>>;

#[derive(Debug, Clone)]
pub struct Smith<E> {
    pub u: Matrix<E>,
    pub s: Matrix<E>,
    pub v: Matrix<E>,
}

impl<E: Clone> Smith<E> {
    pub fn diagonal(&self) -> Vec<E> {
        let k = self.s.len().min(self.s.first().map_or(0, |r| r.len()));
        (0..k).map(|i| self.s[i][i].clone()).collect()
    }
}

pub fn identity<D: Euclidean>(d: &D, n: usize) -> Matrix<D::E> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { d.one() } else { d.zero() }).collect())
        .collect()
}

pub fn mat_mul<D: Euclidean>(d: &D, a: &Matrix<D::E>, b: &Matrix<D::E>, inner: usize) -> Matrix<D::E> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(d.zero(), |acc, k| d.add(&acc, &d.mul(&row[k], &b[k][j])))
                })
                .collect()
        })
        .collect()
}

/// `U·A·V = S` with `S` diagonal, diagonal entries normalized and forming a
/// divisibility chain (zeros last). `a` is m×n; `U` is m×m, `V` is n×n.
pub fn smith_normal_form<D: Euclidean>(d: &D, a: &Matrix<D::E>, m: usize, n: usize) -> Smith<D::E> {
    let mut s: Matrix<D::E> = a.clone();
    let mut u = identity(d, m);
    let mut v = identity(d, n);

    // row_i += q·row_j on s and u
    let row_axpy = |s: &mut Matrix<D::E>, u: &mut Matrix<D::E>, i: usize, j: usize, q: &D::E| {
        for c in 0..n {
            let t = d.mul(q, &s[j][c]);
            s[i][c] = d.add(&s[i][c], &t);
        }
        for c in 0..m {
            let t = d.mul(q, &u[j][c]);
            u[i][c] = d.add(&u[i][c], &t);
        }
    };
    let col_axpy = |s: &mut Matrix<D::E>, v: &mut Matrix<D::E>, i: usize, j: usize, q: &D::E| {
        for r in 0..m {
            let t = d.mul(q, &s[r][j]);
            s[r][i] = d.add(&s[r][i], &t);
        }
        for r in 0..n {
            let t = d.mul(q, &v[r][j]);
            v[r][i] = d.add(&v[r][i], &t);
        }
    };

    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !d.is_zero(&s[i][j])
                        && best.is_none_or(|(bi, bj)| d.size(&s[i][j]) < d.size(&s[bi][bj]))
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            s.swap(pi, t);
            u.swap(pi, t);
            for row in s.iter_mut() {
                row.swap(pj, t);
            }
            for row in v.iter_mut() {
                row.swap(pj, t);
            }
            let mut clean = true;
            for i in t + 1..m {
                if d.is_zero(&s[i][t]) {
                    continue;
                }
                let (q, r) = d.div_rem(&s[i][t], &s[t][t]);
                row_axpy(&mut s, &mut u, i, t, &d.neg(&q));
                if !d.is_zero(&r) {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d.is_zero(&s[t][j]) {
                    continue;
                }
                let (q, r) = d.div_rem(&s[t][j], &s[t][t]);
                col_axpy(&mut s, &mut v, j, t, &d.neg(&q));
                if !d.is_zero(&r) {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the remaining block by the pivot
            let mut bad = None;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    if !d.divides(&s[t][t], &s[i][j]) {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => {
                    let one = d.one();
                    row_axpy(&mut s, &mut u, t, i, &one);
                }
                None => break,
            }
        }
        if t < m && t < n && !d.is_zero(&s[t][t]) {
            let (_, unit) = d.normalize(&s[t][t]);
            for c in 0..n {
                s[t][c] = d.mul(&unit, &s[t][c]);
            }
            for c in 0..m {
                u[t][c] = d.mul(&unit, &u[t][c]);
            }
        }
    }
    Smith { u, s, v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::euclid::Integers;
    use num_bigint::BigInt;

    fn zm(rows: &[&[i64]]) -> Matrix<BigInt> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn diag_2_3() {
        let s = smith_normal_form(&Integers, &zm(&[&[2, 0], &[0, 3]]), 2, 2);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn two_by_two_example() {
        let a = zm(&[&[4, 2], &[2, 2]]);
        let s = smith_normal_form(&Integers, &a, 2, 2);
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(2)]);
        let uav = mat_mul(&Integers, &mat_mul(&Integers, &s.u, &a, 2), &s.v, 2);
        assert_eq!(uav, s.s);
    }

    #[test]
    fn zero_matrix() {
        let s = smith_normal_form(&Integers, &zm(&[&[0, 0, 0], &[0, 0, 0]]), 2, 3);
        assert!(s.s.iter().flatten().all(|x| *x == BigInt::from(0)));
    }
}
