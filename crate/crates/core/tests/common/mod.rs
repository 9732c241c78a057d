//! Reference computations that share no code with the library: structure
//! constants are expanded into plain `BigRational` matrices with signs taken
//! from explicit permutation parity, and ranks come from textbook Gaussian
//! elimination.

#![allow(dead_code)]

use num::{BigRational, One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(n.into())
}

/// Parity of the permutation sorting `xs`, or None on a repeated entry.
pub fn sort_sign(xs: &[usize]) -> Option<i64> {
    let mut inversions = 0;
    for a in 0..xs.len() {
        for b in a + 1..xs.len() {
            if xs[a] == xs[b] {
                return None;
            }
            if xs[a] > xs[b] {
                inversions += 1;
            }
        }
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// All increasing k-subsets of 0..n in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Matrix of d : ∧^k → ∧^{k+1} for deᵗ = −Σ_{i<j} cᵗᵢⱼ eⁱ∧eʲ, where
/// `c[(i*n + j)*n + t]` is the full antisymmetric table.
pub fn ce_matrix(n: usize, c: &[Q], k: usize) -> Vec<Vec<Q>> {
    let src = subsets(n, k);
    let dst = subsets(n, k + 1);
    let mut m = vec![vec![Q::zero(); src.len()]; dst.len()];
    for (col, s) in src.iter().enumerate() {
        // d(e^{s0} ∧ … ∧ e^{s_{k-1}}) = Σ_p (−1)^p e^{s0} ∧ … ∧ d(e^{sp}) ∧ …
        for (p, &t) in s.iter().enumerate() {
            for i in 0..n {
                for j in i + 1..n {
                    let coeff = -c[(i * n + j) * n + t].clone();
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut word: Vec<usize> = s[..p].to_vec();
                    word.push(i);
                    word.push(j);
                    word.extend_from_slice(&s[p + 1..]);
                    let Some(sign) = sort_sign(&word) else { continue };
                    let mut sorted = word.clone();
                    sorted.sort_unstable();
                    let row = dst.iter().position(|x| *x == sorted).unwrap();
                    let parity = if p % 2 == 0 { 1 } else { -1 };
                    m[row][col] += coeff * q(sign * parity);
                }
            }
        }
    }
    m
}

pub fn rank(mut m: Vec<Vec<Q>>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// bₖ = dim ∧ᵏ − rank dₖ − rank dₖ₋₁.
pub fn betti(n: usize, c: &[Q]) -> Vec<usize> {
    let ranks: Vec<usize> = (0..n).map(|k| rank(ce_matrix(n, c, k))).collect();
    (0..=n)
        .map(|k| {
            let out = if k < n { ranks[k] } else { 0 };
            let inc = if k > 0 { ranks[k - 1] } else { 0 };
            binomial(n, k) - out - inc
        })
        .collect()
}

/// Full antisymmetric table from 0-based entries (i, j, k, c) with i < j.
pub fn table(n: usize, entries: &[(usize, usize, usize, i64)]) -> Vec<Q> {
    let mut c = vec![Q::zero(); n * n * n];
    for &(i, j, k, v) in entries {
        c[(i * n + j) * n + k] = q(v);
        c[(j * n + i) * n + k] = q(-v);
    }
    c
}

/// Jacobi identity by direct expansion of [[x,y],z] + cyclic on basis triples.
pub fn jacobi_holds(n: usize, c: &[Q]) -> bool {
    let br = |i: usize, j: usize, t: usize| c[(i * n + j) * n + t].clone();
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                for t in 0..n {
                    let mut s = Q::zero();
                    for u in 0..n {
                        s += br(a, b, u) * br(u, d, t) + br(b, d, u) * br(u, a, t) + br(d, a, u) * br(u, b, t);
                    }
                    if !s.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Rank over ℚ(i) with entries as (re, im) pairs.
pub fn complex_rank(mut m: Vec<Vec<(Q, Q)>>) -> usize {
    fn mul(a: &(Q, Q), b: &(Q, Q)) -> (Q, Q) {
        (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
    }
    fn inv(a: &(Q, Q)) -> (Q, Q) {
        let n = &a.0 * &a.0 + &a.1 * &a.1;
        (&a.0 / &n, -&a.1 / &n)
    }
    let is_zero = |a: &(Q, Q)| a.0.is_zero() && a.1.is_zero();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !is_zero(&m[i][c])) else { continue };
        m.swap(r, p);
        let pinv = inv(&m[r][c]);
        for i in r + 1..m.len() {
            if is_zero(&m[i][c]) {
                continue;
            }
            let f = mul(&m[i][c], &pinv);
            for j in 0..cols {
                let t = mul(&f, &m[r][j]);
                m[i][j] = (&m[i][j].0 - &t.0, &m[i][j].1 - &t.1);
            }
        }
        r += 1;
    }
    r
}

/// Positive-definiteness by brute force on the sign of vᵀSv over many
/// small integer vectors; only a necessary condition, used as a cross-check.
pub fn sampled_positive(s: &[Vec<Q>], samples: &[Vec<i64>]) -> bool {
    samples.iter().all(|v| {
        if v.iter().all(|x| *x == 0) {
            return true;
        }
        let mut acc = Q::zero();
        for (i, row) in s.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                acc += x * q(v[i] * v[j]);
            }
        }
        acc.is_positive()
    })
}

pub fn one() -> Q {
    Q::one()
}

pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let piv = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..2 * n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Structure constants in the basis e'ᵢ = Σₐ P[a][i] eₐ.
pub fn change_basis(n: usize, c: &[Q], p: &[Vec<Q>]) -> Option<Vec<Q>> {
    let pinv = inverse(p)?;
    let mut out = vec![Q::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for a in 0..n {
                for b in 0..n {
                    let pab = &p[a][i] * &p[b][j];
                    if pab.is_zero() {
                        continue;
                    }
                    for t in 0..n {
                        let ct = &c[(a * n + b) * n + t];
                        if ct.is_zero() {
                            continue;
                        }
                        for k in 0..n {
                            out[(i * n + j) * n + k] += &pab * ct * &pinv[k][t];
                        }
                    }
                }
            }
        }
    }
    Some(out)
}

/// Known Lie algebras as 0-based (name, dim, entries) with [eᵢ, eⱼ] = c·eₖ.
pub fn known_algebras() -> Vec<(&'static str, usize, Vec<(usize, usize, usize, i64)>)> {
    vec![
        ("ab3", 3, vec![]),
        ("heis3", 3, vec![(0, 1, 2, 1)]),
        ("so3", 3, vec![(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)]),
        ("r2", 2, vec![(0, 1, 1, 1)]),
        ("kt4", 4, vec![(0, 1, 2, 1)]),
        ("hyperell", 4, vec![(2, 0, 1, 1), (2, 1, 0, -1)]),
        ("filiform5", 5, vec![(0, 1, 2, 1), (0, 2, 3, 1), (0, 3, 4, 1), (1, 2, 4, 1)]),
        ("heis5", 5, vec![(0, 1, 4, 1), (2, 3, 4, 1)]),
    ]
}
