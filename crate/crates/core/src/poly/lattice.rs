//! Integer kernel of a single row `a`, i.e. the lattice `{u : a·u = 0}`.

fn dot(u: &[i128], v: &[i128]) -> i128 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Basis of `{u ∈ ℤ^n : Σ a_i u_i = 0}` (rank n−1 for nonzero `a`), size
/// reduced pairwise so entries stay small.
pub fn kernel_basis(a: &[i64]) -> Vec<Vec<i64>> {
    let n = a.len();
    // Column operations on (a | I): keep a·U current in `row`.
    let mut row: Vec<i128> = a.iter().map(|&x| x as i128).collect();
    let mut cols: Vec<Vec<i128>> = (0..n)
        .map(|i| {
            let mut e = vec![0i128; n];
            e[i] = 1;
            e
        })
        .collect();
    loop {
        let nz: Vec<usize> = (0..n).filter(|&i| row[i] != 0).collect();
        if nz.len() <= 1 {
            break;
        }
        let p = *nz.iter().min_by_key(|&&i| row[i].abs()).unwrap();
        for &i in &nz {
            if i != p {
                let q = row[i].div_euclid(row[p]);
                row[i] -= q * row[p];
                let cp = cols[p].clone();
                for (x, y) in cols[i].iter_mut().zip(&cp) {
                    *x -= q * y;
                }
            }
        }
    }
    let mut basis: Vec<Vec<i128>> = (0..n).filter(|&i| row[i] == 0).map(|i| cols[i].clone()).collect();
    size_reduce(&mut basis);
    basis.sort_by_key(|v| dot(v, v));
    basis.into_iter().map(|v| v.into_iter().map(|x| x as i64).collect()).collect()
}

/// Pairwise Gauss reduction until no vector can be shortened by an integer
/// multiple of another.
fn size_reduce(b: &mut [Vec<i128>]) {
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..b.len() {
            for j in 0..b.len() {
                if i == j {
                    continue;
                }
                let nj = dot(&b[j], &b[j]);
                if nj == 0 {
                    continue;
                }
                let d = dot(&b[i], &b[j]);
                // Nearest integer to d / nj.
                let k = (2 * d + nj).div_euclid(2 * nj);
                if k != 0 {
                    let bj = b[j].clone();
                    let cand: Vec<i128> = b[i].iter().zip(&bj).map(|(x, y)| x - k * y).collect();
                    if dot(&cand, &cand) < dot(&b[i], &b[i]) {
                        b[i] = cand;
                        changed = true;
                    }
                }
            }
        }
    }
}
