//! Integer kernels of small constraint matrices, for stabilizer sublattices.

/// Kernel of an integer matrix `rows x cols`, returned as `(rank, basis)`
/// where `rank` is the rank of the matrix and `basis` spans the kernel
/// sublattice of `Z^cols`.
///
/// Works by row-reducing the transpose against an identity block: row
/// operations over the integers (gcd elimination) keep everything exact,
/// and the identity rows paired with vanished transpose rows form a kernel
/// basis.
pub fn integer_kernel(matrix: &[Vec<i64>], cols: usize) -> (usize, Vec<Vec<i64>>) {
    let n = cols;
    // work[i] = (column i of `matrix`, i-th unit vector)
    let mut work: Vec<(Vec<i64>, Vec<i64>)> = (0..n)
        .map(|i| {
            let col: Vec<i64> = matrix.iter().map(|row| row[i]).collect();
            let mut unit = vec![0i64; n];
            unit[i] = 1;
            (col, unit)
        })
        .collect();
    let m = matrix.len();
    let mut rank = 0;
    for pivot_col in 0..m {
        // Eliminate entries below `rank` in position `pivot_col` by gcd steps.
        loop {
            let mut nonzero: Vec<usize> =
                (rank..n).filter(|&i| work[i].0[pivot_col] != 0).collect();
            if nonzero.is_empty() {
                break;
            }
            if nonzero.len() == 1 {
                work.swap(rank, nonzero[0]);
                rank += 1;
                break;
            }
            // Reduce the larger entry by the smaller.
            nonzero.sort_by_key(|&i| work[i].0[pivot_col].unsigned_abs());
            let (small, big) = (nonzero[0], nonzero[1]);
            let q = work[big].0[pivot_col] / work[small].0[pivot_col];
            let (src_col, src_unit) = (work[small].0.clone(), work[small].1.clone());
            let dst = &mut work[big];
            for (d, s) in dst.0.iter_mut().zip(&src_col) {
                *d -= q * s;
            }
            for (d, s) in dst.1.iter_mut().zip(&src_unit) {
                *d -= q * s;
            }
        }
    }
    let basis = work[rank..]
        .iter()
        .map(|(_, unit)| primitive(unit))
        .collect();
    (rank, basis)
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0u64, |g, &x| gcd(g, x.unsigned_abs())).max(1);
    let sign = match v.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => -1,
        _ => 1,
    };
    v.iter().map(|&x| sign * x / g as i64).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_kernel(matrix: &[Vec<i64>], cols: usize) {
        let (rank, basis) = integer_kernel(matrix, cols);
        assert_eq!(rank + basis.len(), cols);
        for v in &basis {
            for row in matrix {
                let dot: i64 = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert_eq!(dot, 0, "kernel vector {v:?} fails row {row:?}");
            }
            assert!(v.iter().any(|&x| x != 0));
        }
    }

    #[test]
    fn simple_kernels() {
        check_kernel(&[vec![1, -1, 0], vec![0, 1, -1]], 3);
        let (rank, basis) = integer_kernel(&[vec![1, -1, 0], vec![0, 1, -1]], 3);
        assert_eq!(rank, 2);
        assert_eq!(basis, vec![vec![1, 1, 1]]);

        let (rank, basis) = integer_kernel(&[], 2);
        assert_eq!(rank, 0);
        assert_eq!(basis.len(), 2);

        let (rank, basis) = integer_kernel(&[vec![2, 4]], 2);
        assert_eq!(rank, 1);
        assert_eq!(basis, vec![vec![2, -1]]);
    }

    #[test]
    fn redundant_rows_do_not_change_rank() {
        let m = vec![vec![1, 0, -1], vec![1, 0, -1], vec![2, 0, -2]];
        check_kernel(&m, 3);
        let (rank, _) = integer_kernel(&m, 3);
        assert_eq!(rank, 1);
    }
}
