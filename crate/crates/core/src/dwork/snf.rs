//! Smith normal form of small integer matrices.

/// Elementary divisors `d_1 | d_2 | ... ` of `m`, one per diagonal position
/// (`min(rows, cols)` entries), nonnegative, zeros last.
pub fn smith_normal_form(m: &[Vec<i64>]) -> Vec<i64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let size = rows.min(cols);

    for k in 0..size {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let Some((pi, pj)) = (k..rows)
                .flat_map(|i| (k..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs())
            else {
                return finish(&a, size);
            };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let pivot = a[k][k];
            let mut clean = true;
            for i in k + 1..rows {
                let f = a[i][k] / pivot;
                if f != 0 {
                    for j in k..cols {
                        a[i][j] -= f * a[k][j];
                    }
                }
                clean &= a[i][k] == 0;
            }
            for j in k + 1..cols {
                let f = a[k][j] / pivot;
                if f != 0 {
                    for row in a.iter_mut().skip(k) {
                        row[j] -= f * row[k];
                    }
                }
                clean &= a[k][j] == 0;
            }
            if !clean {
                continue;
            }
            // Enforce the divisor chain: fold a non-divisible row into row k.
            let bad = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| a[i][j] % pivot != 0));
            match bad {
                Some(i) => {
                    for j in k..cols {
                        a[k][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
    }
    finish(&a, size)
}

fn finish(a: &[Vec<i128>], size: usize) -> Vec<i64> {
    (0..size).map(|i| a[i][i].unsigned_abs() as i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn divides_chain(d: &[i64]) -> bool {
        d.windows(2).all(|w| match (w[0], w[1]) {
            (0, b) => b == 0,
            (a, b) => b % a == 0,
        })
    }

    #[test]
    fn dwork_sextic_matrix() {
        let m: Vec<Vec<i64>> = (0..6)
            .map(|i| (0..6).map(|j| if i == j { 5 } else { -1 }).collect())
            .collect();
        assert_eq!(smith_normal_form(&m), vec![1, 6, 6, 6, 6, 0]);
    }

    #[test]
    fn small_examples() {
        assert_eq!(smith_normal_form(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), vec![1, 1, 1]);
        assert_eq!(smith_normal_form(&[vec![2, 0], vec![0, 4]]), vec![2, 4]);
        assert_eq!(smith_normal_form(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(smith_normal_form(&[vec![0, 0], vec![0, 0]]), vec![0, 0]);
        assert_eq!(smith_normal_form(&[vec![6], vec![1]]), vec![1]);
        assert_eq!(smith_normal_form(&[vec![6, 0], vec![0, 6], vec![1, 1]]), vec![1, 6]);
        assert_eq!(smith_normal_form(&[]), Vec::<i64>::new());
    }

    #[test]
    fn determinant_and_chain() {
        // Invariant: product of divisors = |det| for square matrices.
        let m = vec![vec![4, 6, 2], vec![8, -2, 10], vec![6, 4, 14]];
        let d = smith_normal_form(&m);
        assert!(divides_chain(&d));
        let det: i64 = 4 * (-2 * 14 - 10 * 4) - 6 * (8 * 14 - 10 * 6) + 2 * (8 * 4 + 2 * 6);
        assert_eq!(d.iter().product::<i64>(), det.abs());
    }
}
