use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Row-style Hermite normal form `H = U·M` with `U` unimodular.
///
/// Nonzero rows come first, pivots are positive and strictly move right,
/// entries above a pivot lie in `[0, pivot)`.
#[derive(Debug, Clone)]
pub struct Hermite {
    pub form: IntMatrix,
    pub transform: IntMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

fn combine_rows(m: &mut IntMatrix, a: usize, b: usize, coeffs: [&BigInt; 4]) {
    // row_a <- p*row_a + q*row_b, row_b <- r*row_a + s*row_b
    let [p, q, r, s] = coeffs;
    for j in 0..m.cols() {
        let x = m[(a, j)].clone();
        let y = m[(b, j)].clone();
        m[(a, j)] = p * &x + q * &y;
        m[(b, j)] = r * &x + s * &y;
    }
}

fn add_multiple(m: &mut IntMatrix, target: usize, source: usize, c: &BigInt) {
    for j in 0..m.cols() {
        let v = &m[(source, j)] * c;
        m[(target, j)] -= v;
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for j in 0..m.cols() {
        let v = -m[(i, j)].clone();
        m[(i, j)] = v;
    }
}

pub fn hermite_normal_form(m: &IntMatrix) -> Hermite {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if h[(i, col)].is_zero() {
                continue;
            }
            if h[(r, col)].is_zero() {
                h.swap_rows(r, i);
                u.swap_rows(r, i);
                continue;
            }
            let a = h[(r, col)].clone();
            let b = h[(i, col)].clone();
            let e = a.extended_gcd(&b);
            // [x y; -b/g a/g] has determinant 1
            let bg = -(&b / &e.gcd);
            let ag = &a / &e.gcd;
            combine_rows(&mut h, r, i, [&e.x, &e.y, &bg, &ag]);
            combine_rows(&mut u, r, i, [&e.x, &e.y, &bg, &ag]);
        }
        if h[(r, col)].is_zero() {
            continue;
        }
        if h[(r, col)].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        let pivot = h[(r, col)].clone();
        for i in 0..r {
            let q = h[(i, col)].div_floor(&pivot);
            if !q.is_zero() {
                add_multiple(&mut h, i, r, &q);
                add_multiple(&mut u, i, r, &q);
            }
        }
        pivots.push(col);
        r += 1;
    }
    Hermite { form: h, transform: u, rank: r, pivots }
}

/// Z-basis of `{x : A x = 0}`, as rows of a matrix in Hermite normal form.
///
/// With `U·Aᵀ = H` and `U` unimodular, the rows of `U` whose image row in `H`
/// vanishes span exactly the kernel lattice.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let n = a.cols();
    if n == 0 {
        return Vec::new();
    }
    let hnf = hermite_normal_form(&a.transpose());
    let kernel_rows: Vec<Vec<BigInt>> =
        (hnf.rank..n).map(|i| hnf.transform.row(i).to_vec()).collect();
    if kernel_rows.is_empty() {
        return kernel_rows;
    }
    let basis = IntMatrix::from_big_rows(&kernel_rows).expect("uniform rows");
    let reduced = hermite_normal_form(&basis);
    (0..reduced.rank).map(|i| reduced.form.row(i).to_vec()).collect()
}

/// Nonzero Smith invariant factors `d_1 | d_2 | ...`, all positive.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[(i, j)].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[(i, t)].div_floor(&a[(t, t)]);
            if !q.is_zero() {
                add_multiple(&mut a, i, t, &q);
            }
            clean &= a[(i, t)].is_zero();
        }
        for j in t + 1..cols {
            let q = a[(t, j)].div_floor(&a[(t, t)]);
            if !q.is_zero() {
                for i in 0..rows {
                    let v = &a[(i, t)] * &q;
                    a[(i, j)] -= v;
                }
            }
            clean &= a[(t, j)].is_zero();
        }
        if !clean {
            continue;
        }
        // pivot must divide the rest of the block
        let p = a[(t, t)].clone();
        let bad = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !a[(i, j)].is_multiple_of(&p));
        if let Some((i, _)) = bad {
            let one = BigInt::one();
            for j in 0..cols {
                let v = &a[(i, j)] * &one;
                a[(t, j)] += v;
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    diag
}

/// Index `[Z^d : L]` of the lattice spanned by the rows, or `None` if they do
/// not span a full-rank sublattice.
pub fn sublattice_index(rows: &IntMatrix) -> Option<BigInt> {
    let inv = smith_invariants(rows);
    if inv.len() < rows.cols() {
        return None;
    }
    Some(inv.iter().product())
}
