//! Small exact integer-matrix helpers: determinants, sums of principal
//! minors, and solvability of affine congruence systems. Dimensions here
//! are lattice ranks (n ≤ 16 or so), so everything is direct.

use nalgebra::DMatrix;

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
/// Exact for the small entries that appear in holonomy rotations.
pub fn det_i64(m: &DMatrix<i64>) -> i64 {
    let n = m.nrows();
    assert_eq!(n, m.ncols());
    if n == 0 {
        return 1;
    }
    let mut a: Vec<i128> = m.iter().map(|&v| v as i128).collect();
    // column-major storage from nalgebra; index (r,c) -> c*n + r
    let idx = |r: usize, c: usize| c * n + r;
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[idx(k, k)] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[idx(r, k)] != 0) else {
                return 0;
            };
            for c in 0..n {
                a.swap(idx(k, c), idx(p, c));
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[idx(k, k)] * a[idx(i, j)] - a[idx(i, k)] * a[idx(k, j)];
                a[idx(i, j)] = v / prev;
            }
            a[idx(i, k)] = 0;
        }
        prev = a[idx(k, k)];
    }
    (sign * a[idx(n - 1, n - 1)]) as i64
}

/// Trace of the induced action on the l-th exterior power: the sum of all
/// l×l principal minors (the elementary symmetric function of the
/// eigenvalues). `l = 0` gives 1, `l = n` gives the determinant.
pub fn exterior_trace(m: &DMatrix<i64>, l: usize) -> i64 {
    let n = m.nrows();
    if l > n {
        return 0;
    }
    if l == 0 {
        return 1;
    }
    let mut total = 0i64;
    for subset in subsets(n, l) {
        let sub = DMatrix::from_fn(l, l, |r, c| m[(subset[r], subset[c])]);
        total += det_i64(&sub);
    }
    total
}

/// All l-element subsets of {0,..,n-1} in lexicographic order.
pub fn subsets(n: usize, l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if l > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..l).collect();
    loop {
        out.push(cur.clone());
        // advance to next combination
        let mut i = l;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - l {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..l {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Binomial coefficient, small arguments only.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Decides whether the congruence `A·u ≡ t (mod ℤ^n)` has a real solution u.
///
/// Row-reduces A to integer echelon form (the row operations are unimodular
/// and are applied to t as well, so the solution set mod ℤ^n is preserved);
/// a vanished row then constrains the transformed right-hand side to be an
/// integer, while pivot rows are always solvable over the reals. Used for
/// the affine fixed-point test: a holonomy element (M, t) fixes a point iff
/// `(I−M)·u ≡ t` is solvable.
pub fn affine_congruence_solvable(a: &DMatrix<i64>, t: &[f64], tol: f64) -> bool {
    let n = a.nrows();
    let mut m: Vec<Vec<i128>> = (0..n)
        .map(|r| (0..n).map(|c| a[(r, c)] as i128).collect())
        .collect();
    let mut rhs: Vec<f64> = t.to_vec();

    let mut row = 0;
    for col in 0..n {
        if row == n {
            break;
        }
        let Some(p) = (row..n).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, p);
        rhs.swap(row, p);
        // gcd-eliminate the column below the pivot
        loop {
            let mut all_zero = true;
            for r in row + 1..n {
                if m[r][col] == 0 {
                    continue;
                }
                let q = m[r][col].div_euclid(m[row][col]);
                if q != 0 {
                    for c in 0..n {
                        m[r][c] -= q * m[row][c];
                    }
                    rhs[r] -= q as f64 * rhs[row];
                }
                if m[r][col] != 0 {
                    // nonzero remainder: it becomes the new, smaller pivot
                    m.swap(row, r);
                    rhs.swap(row, r);
                    all_zero = false;
                }
            }
            if all_zero {
                break;
            }
        }
        row += 1;
    }

    // rows that vanished entirely constrain rhs to integers
    for r in row..n {
        debug_assert!(m[r].iter().all(|&v| v == 0));
        let frac = (rhs[r] - rhs[r].round()).abs();
        if frac > tol {
            return false;
        }
    }
    true
}
