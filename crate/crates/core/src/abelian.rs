//! Quotients of finite abelian groups `⊕ Z/o_i` by a subgroup given by
//! integer generators. Everything is reduced modulo the exponent, which is
//! legitimate because the exponent kills the ambient group.

use num_integer::Integer;

#[derive(Debug, Clone)]
pub struct GroupQuotient {
    /// Orders of the cyclic factors of the quotient, all ≥ 2.
    pub orders: Vec<u64>,
    /// Row `t` maps ambient coordinates to quotient coordinate `t` (mod `orders[t]`).
    pub proj: Vec<Vec<u64>>,
    /// Column `t` is an ambient coordinate vector lifting quotient basis vector `t`.
    pub lift: Vec<Vec<u64>>,
    pub row_orders: Vec<u64>,
}

impl GroupQuotient {
    pub fn project(&self, x: &[u64]) -> Vec<u64> {
        self.proj
            .iter()
            .zip(&self.orders)
            .map(|(row, &d)| {
                let mut s: u128 = 0;
                for (a, b) in row.iter().zip(x) {
                    s = (s + (*a as u128) * (*b as u128)) % d as u128;
                }
                s as u64
            })
            .collect()
    }

    /// Ambient coordinates of the combination `Σ c_t lift_t`.
    pub fn lift_coords(&self, c: &[u64]) -> Vec<u64> {
        let mut out = vec![0u128; self.row_orders.len()];
        for (t, &ct) in c.iter().enumerate() {
            if ct == 0 {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                *o = (*o + ct as u128 * self.lift[t][i] as u128) % self.row_orders[i] as u128;
            }
        }
        out.into_iter().map(|v| v as u64).collect()
    }

    pub fn size(&self) -> Option<u64> {
        self.orders.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d))
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    // returns (g, x, y) with x a + y b = g >= 0; prefers (a,1,0) when a | b
    if a != 0 && b % a == 0 {
        return if a > 0 { (a, 1, 0) } else { (-a, -1, 0) };
    }
    let e = a.extended_gcd(&b);
    (e.gcd, e.x, e.y)
}

fn md(v: i128, e: i128) -> i128 {
    let r = v % e;
    if r < 0 {
        r + e
    } else {
        r
    }
}

/// Quotient of `⊕ Z/row_orders[i]` by the subgroup generated by `columns`.
pub fn quotient(row_orders: &[u64], columns: &[Vec<i64>]) -> GroupQuotient {
    let r = row_orders.len();
    let e: u64 = row_orders.iter().fold(1u64, |acc, &o| acc.lcm(&o.max(1)));
    let ei = e as i128;
    let mut cols: Vec<Vec<i128>> = Vec::new();
    for c in columns {
        let v: Vec<i128> = c.iter().map(|&x| md(x as i128, ei)).collect();
        if v.iter().any(|&x| x != 0) {
            cols.push(v);
        }
    }
    for (i, &o) in row_orders.iter().enumerate() {
        if (o as i128) % ei != 0 {
            let mut v = vec![0i128; r];
            v[i] = o as i128;
            cols.push(v);
        }
    }
    // a[i][j], row-major
    let c = cols.len();
    let mut a: Vec<Vec<i128>> = (0..r).map(|i| cols.iter().map(|col| col[i]).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..r).map(|i| (0..r).map(|j| (i == j) as i128).collect()).collect();
    let mut ui = u.clone();
    let mut diag = vec![0i128; r];

    for t in 0..r.min(c) {
        // pivot: smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize, i128)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &v) in row.iter().enumerate().skip(t) {
                if v != 0 && best.is_none_or(|b| v < b.2) {
                    best = Some((i, j, v));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        if pi != t {
            a.swap(pi, t);
            u.swap(pi, t);
            for row in ui.iter_mut() {
                row.swap(pi, t);
            }
        }
        if pj != t {
            for row in a.iter_mut() {
                row.swap(pj, t);
            }
        }
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                let b = a[i][t];
                if b == 0 {
                    continue;
                }
                let p = a[t][t];
                let (g, x, y) = ext_gcd(p, b);
                let (bg, pg) = (b / g, p / g);
                for j in t..c {
                    let (s, w) = (a[t][j], a[i][j]);
                    a[t][j] = md(x * s + y * w, ei);
                    a[i][j] = md(-bg * s + pg * w, ei);
                }
                for j in 0..r {
                    let (s, w) = (u[t][j], u[i][j]);
                    u[t][j] = md(x * s + y * w, ei);
                    u[i][j] = md(-bg * s + pg * w, ei);
                }
                for row in ui.iter_mut() {
                    let (s, w) = (row[t], row[i]);
                    row[t] = md(s * pg + w * bg, ei);
                    row[i] = md(-s * y + w * x, ei);
                }
            }
            for j in t + 1..c {
                let b = a[t][j];
                if b == 0 {
                    continue;
                }
                let p = a[t][t];
                let (g, x, y) = ext_gcd(p, b);
                let (bg, pg) = (b / g, p / g);
                for row in a.iter_mut().skip(t) {
                    let (s, w) = (row[t], row[j]);
                    row[t] = md(x * s + y * w, ei);
                    row[j] = md(-bg * s + pg * w, ei);
                }
                if (t + 1..r).any(|i| a[i][t] != 0) {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        diag[t] = a[t][t];
    }

    let mut orders = Vec::new();
    let mut proj = Vec::new();
    let mut lift = Vec::new();
    for t in 0..r {
        let d = if diag[t] == 0 { e } else { (diag[t] as u64).gcd(&e) };
        if d > 1 {
            orders.push(d);
            proj.push(u[t].iter().map(|&v| (v as u64) % d).collect());
            lift.push(
                (0..r)
                    .map(|i| (ui[i][t] as u64) % row_orders[i].max(1))
                    .collect(),
            );
        }
    }
    GroupQuotient { orders, proj, lift, row_orders: row_orders.to_vec() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enumerate(orders: &[u64]) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for &o in orders {
            out = out
                .into_iter()
                .flat_map(|v| (0..o).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                }))
                .collect();
        }
        out
    }

    // brute-force size of the quotient by enumerating the generated subgroup
    fn brute(orders: &[u64], cols: &[Vec<i64>]) -> u64 {
        use std::collections::BTreeSet;
        let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
        let zero = vec![0u64; orders.len()];
        seen.insert(zero.clone());
        let mut stack = vec![zero];
        while let Some(x) = stack.pop() {
            for c in cols {
                let y: Vec<u64> = x
                    .iter()
                    .zip(c)
                    .zip(orders)
                    .map(|((a, b), o)| ((*a as i64 + b).rem_euclid(*o as i64)) as u64)
                    .collect();
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        let total: u64 = orders.iter().product();
        total / seen.len() as u64
    }

    #[test]
    fn small_quotients_match_brute_force() {
        let cases: Vec<(Vec<u64>, Vec<Vec<i64>>)> = vec![
            (vec![12], vec![vec![4]]),
            (vec![12, 12], vec![vec![2, 4], vec![6, 0]]),
            (vec![4, 6], vec![vec![2, 3]]),
            (vec![8, 4, 2], vec![vec![2, 2, 1], vec![4, 0, 1]]),
            (vec![3, 3], vec![]),
            (vec![1, 5], vec![vec![0, 5]]),
        ];
        for (o, c) in cases {
            let q = quotient(&o, &c);
            assert_eq!(q.size().unwrap(), brute(&o, &c), "{o:?} {c:?}");
        }
    }

    #[test]
    fn projection_is_a_surjective_hom_killing_relations() {
        let o = vec![8, 12];
        let c = vec![vec![2, 6], vec![4, 4]];
        let q = quotient(&o, &c);
        for col in &c {
            let x: Vec<u64> = col.iter().zip(&o).map(|(a, b)| a.rem_euclid(*b as i64) as u64).collect();
            assert!(q.project(&x).iter().all(|&v| v == 0));
        }
        let mut images = std::collections::BTreeSet::new();
        for x in enumerate(&o) {
            images.insert(q.project(&x));
        }
        assert_eq!(images.len() as u64, q.size().unwrap());
        for t in 0..q.orders.len() {
            let mut unit = vec![0; q.orders.len()];
            unit[t] = 1;
            assert_eq!(q.project(&q.lift_coords(&unit)), unit);
        }
    }
}
