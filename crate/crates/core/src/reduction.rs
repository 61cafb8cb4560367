//! Weight matrices of toric 3-Sasakian reductions.
//!
//! A `k x n` integer matrix `Ω` embeds `T^k` in `T^n ⊂ Sp(n)`. Nondegeneracy,
//! admissibility and reducedness are gcd conditions on its `k x k` minors,
//! and for `n = k + 2` the order of the torsion group in `H^4` is a weighted
//! spanning-tree count on the complete graph with `k + 2` vertices.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{combinations, integer_kernel, minor_determinants, IntMatrix, MinorTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMatrix {
    omega: IntMatrix,
    minors: MinorTable,
}

impl WeightMatrix {
    pub fn new(omega: IntMatrix) -> Result<Self> {
        let minors = minor_determinants(&omega)?;
        Ok(WeightMatrix { omega, minors })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    /// The `0 x n` matrix (no torus is divided out).
    pub fn empty(n: usize) -> Self {
        Self::new(IntMatrix::zeros(0, n)).expect("0 <= n")
    }

    /// `[I_k | a | b]`.
    pub fn normal_form_matrix(a: &[i64], b: &[i64]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch("a and b differ in length".into()));
        }
        let k = a.len();
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|i| {
                let mut r = vec![0; k + 2];
                r[i] = 1;
                r[k] = a[i];
                r[k + 1] = b[i];
                r
            })
            .collect();
        if k == 0 {
            return Ok(Self::empty(2));
        }
        Self::from_rows(&rows)
    }

    pub fn k(&self) -> usize {
        self.omega.rows()
    }

    pub fn n(&self) -> usize {
        self.omega.cols()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.omega
    }

    pub fn minors(&self) -> &MinorTable {
        &self.minors
    }

    /// `(a, b)` when `n = k + 2` and the left block is the identity.
    pub fn normal_form(&self) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
        let k = self.k();
        if self.n() != k + 2 {
            return None;
        }
        for i in 0..k {
            for j in 0..k {
                let want = if i == j { BigInt::one() } else { BigInt::zero() };
                if self.omega[(i, j)] != want {
                    return None;
                }
            }
        }
        Some((self.omega.column(k), self.omega.column(k + 1)))
    }

    /// `Δ_{p,q}`: the minor with columns `p` and `q` deleted (0-based).
    pub fn deleted_minor(&self, p: usize, q: usize) -> Option<&BigInt> {
        self.minors.deleted(&[p, q])
    }

    /// The k-th determinantal divisor `d`.
    pub fn determinantal_divisor(&self) -> BigInt {
        self.minors.gcd()
    }
}

pub fn is_nondegenerate(w: &WeightMatrix) -> bool {
    w.minors().values().all(|v| !v.is_zero())
}

fn require_nondegenerate(w: &WeightMatrix) -> Result<()> {
    if is_nondegenerate(w) {
        Ok(())
    } else {
        Err(Error::DegenerateWeights)
    }
}

/// Every `(k+1)`-subset of columns has the gcd of its `k`-subset minors
/// equal to `d`.
pub fn gcd_admissible(w: &WeightMatrix) -> Result<bool> {
    require_nondegenerate(w)?;
    let (k, n) = (w.k(), w.n());
    let d = w.determinantal_divisor();
    for seq in combinations(n, k + 1) {
        let g = (0..seq.len()).fold(BigInt::zero(), |g, t| {
            let mut sub = seq.clone();
            sub.remove(t);
            g.gcd(w.minors().retained(&sub).expect("k-subset"))
        });
        if g != d {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Normal-form criterion: all `a_i, b_i` nonzero, `gcd(a_i, b_i) = 1`, and no
/// two rows with `(a_i, b_i) = ±(a_j, b_j)`.
pub fn normal_form_admissible(a: &[BigInt], b: &[BigInt]) -> bool {
    let k = a.len();
    if a.iter().chain(b).any(Zero::is_zero) {
        return false;
    }
    if (0..k).any(|i| !a[i].gcd(&b[i]).is_one()) {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            if (a[i] == a[j] && b[i] == b[j]) || (a[i] == -&a[j] && b[i] == -&b[j]) {
                return false;
            }
        }
    }
    true
}

/// Admissibility; degenerate matrices are never admissible.
///
/// In normal form the two criteria are evaluated and must agree (the
/// normal-form exclusions are exactly the degenerate cases).
pub fn is_admissible(w: &WeightMatrix) -> bool {
    let general = gcd_admissible(w).unwrap_or(false);
    if let Some((a, b)) = w.normal_form() {
        let fast = normal_form_admissible(&a, &b);
        assert_eq!(general, fast, "gcd and normal-form admissibility disagree on {w:?}");
    }
    general
}

pub fn is_reduced(w: &WeightMatrix) -> Result<bool> {
    require_nondegenerate(w)?;
    Ok(w.determinantal_divisor().is_one())
}

/// Cayley's count `(k+2)^k` above which tree enumeration is refused.
pub const TREE_ENUMERATION_LIMIT: u64 = 5_000_000;

fn require_tree_shape(w: &WeightMatrix) -> Result<usize> {
    if w.n() != w.k() + 2 {
        return Err(Error::WrongShape { rows: w.k(), cols: w.n() });
    }
    Ok(w.n())
}

fn edge_weights(w: &WeightMatrix) -> Vec<(usize, usize, BigInt)> {
    let n = w.n();
    let mut edges = Vec::new();
    for s in 0..n {
        for t in s + 1..n {
            let weight = w.deleted_minor(s, t).expect("deleted pair").abs();
            edges.push((s, t, weight));
        }
    }
    edges
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// `|G_Ω|` as the sum over spanning trees of `K_{k+2}` of products of
/// `|Δ_{s,t}|`, by direct enumeration.
pub fn torsion_order(w: &WeightMatrix) -> Result<BigInt> {
    let n = require_tree_shape(w)?;
    let trees = (n as u64).checked_pow(n.saturating_sub(2) as u32).unwrap_or(u64::MAX);
    if trees > TREE_ENUMERATION_LIMIT {
        return Err(Error::TooLarge(format!("{trees} spanning trees")));
    }
    let edges = edge_weights(w);
    let mut total = BigInt::zero();
    let mut chosen = Vec::with_capacity(n - 1);
    enumerate_trees(&edges, n, 0, &mut chosen, &mut total);
    Ok(total)
}

fn enumerate_trees(
    edges: &[(usize, usize, BigInt)],
    n: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    total: &mut BigInt,
) {
    if chosen.len() == n - 1 {
        *total += chosen.iter().map(|&e| &edges[e].2).product::<BigInt>();
        return;
    }
    let need = n - 1 - chosen.len();
    for e in start..edges.len() {
        if edges.len() - e < need {
            break;
        }
        // reject the edge if it closes a cycle among the chosen ones
        let mut parent: Vec<usize> = (0..n).collect();
        for &c in chosen.iter() {
            let (a, b) = (find(&mut parent, edges[c].0), find(&mut parent, edges[c].1));
            parent[a] = b;
        }
        if find(&mut parent, edges[e].0) == find(&mut parent, edges[e].1) {
            continue;
        }
        chosen.push(e);
        enumerate_trees(edges, n, e + 1, chosen, total);
        chosen.pop();
    }
}

/// Same count by the weighted Matrix-Tree theorem: any principal cofactor of
/// the weighted Laplacian.
pub fn torsion_order_matrix_tree(w: &WeightMatrix) -> Result<BigInt> {
    let n = require_tree_shape(w)?;
    let mut lap = IntMatrix::zeros(n, n);
    for (s, t, weight) in edge_weights(w) {
        lap[(s, s)] += &weight;
        lap[(t, t)] += &weight;
        lap[(s, t)] -= &weight;
        lap[(t, s)] -= &weight;
    }
    let keep: Vec<usize> = (1..n).collect();
    lap.select_rows(&keep).select_columns(&keep).det()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyTable {
    /// `b_0, ..., b_7`.
    pub betti: [usize; 8],
    pub torsion_order: BigInt,
}

impl CohomologyTable {
    pub fn b2(&self) -> usize {
        self.betti[2]
    }
}

/// Integral cohomology of the 7-dimensional quotient of a reduced admissible
/// `k x (k+2)` weight matrix: free of rank `k` in degrees 2 and 5, torsion
/// `G_Ω` in degree 4.
pub fn cohomology_table(w: &WeightMatrix) -> Result<CohomologyTable> {
    require_tree_shape(w)?;
    if !is_admissible(w) || !is_reduced(w)? {
        return Err(Error::Inadmissible);
    }
    let k = w.k();
    let torsion = torsion_order_matrix_tree(w)?;
    if let Ok(enumerated) = torsion_order(w) {
        assert_eq!(enumerated, torsion, "tree enumeration and Matrix-Tree disagree");
    }
    Ok(CohomologyTable { betti: [1, 0, k, 0, 0, k, 0, 1], torsion_order: torsion })
}

/// Imaginary quaternion `x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImQuaternion {
    pub i: f64,
    pub j: f64,
    pub k: f64,
}

impl ImQuaternion {
    pub fn norm(&self) -> f64 {
        (self.i * self.i + self.j * self.j + self.k * self.k).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentResidual {
    /// One value per row of `Ω`.
    pub components: Vec<ImQuaternion>,
    /// `|z|² + |w|² - 1`.
    pub sphere_defect: f64,
}

impl MomentResidual {
    pub fn norm(&self) -> f64 {
        self.components.iter().map(|q| q.norm().powi(2)).sum::<f64>().sqrt()
    }
}

/// The hyperkähler moment map of `T^k` at `u_l = z_l + w_l j`:
/// `μ^r = i Σ a^r_l (|z_l|² - |w_l|²) + 2k Σ a^r_l w̄_l z_l`, where the
/// complex sum `c = p + q i` contributes `k c = p k + q j`.
pub fn moment_residual(w: &WeightMatrix, z: &[Complex64], wv: &[Complex64]) -> Result<MomentResidual> {
    let n = w.n();
    if z.len() != n || wv.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} and {} coordinates for {n} columns",
            z.len(),
            wv.len()
        )));
    }
    let mut components = Vec::with_capacity(w.k());
    for r in 0..w.k() {
        let mut real = 0.0;
        let mut c = Complex64::new(0.0, 0.0);
        for l in 0..n {
            let a = w.matrix()[(r, l)].to_f64().unwrap_or(f64::NAN);
            real += a * (z[l].norm_sqr() - wv[l].norm_sqr());
            c += wv[l].conj() * z[l] * a;
        }
        components.push(ImQuaternion { i: real, j: 2.0 * c.im, k: 2.0 * c.re });
    }
    let sphere: f64 = z.iter().chain(wv).map(Complex64::norm_sqr).sum();
    Ok(MomentResidual { components, sphere_defect: sphere - 1.0 })
}

/// Gale-dual map `Z^n → Z^{n-k}`: its rows are a Hermite-reduced basis of
/// `ker Ω`, and column `l` is the image of the `l`-th coordinate vector.
/// This is raw material only; it is not the isotropy data of the quotient.
pub fn quotient_map(w: &WeightMatrix) -> IntMatrix {
    let rows = integer_kernel(w.matrix());
    if rows.is_empty() {
        return IntMatrix::zeros(0, w.n());
    }
    IntMatrix::from_big_rows(&rows).expect("uniform rows")
}
