//! Integer linear algebra for weight lattices: kernels by unimodular
//! column operations and Hermite normal form of row bases.

/// Basis of `{ x in Z^n : rows * x = 0 }`.
pub fn integer_kernel(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i64>> = rows.to_vec();
    // columns of `u` track the column operations applied to `a`
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let col_op = |m: &mut Vec<Vec<i64>>, dst: usize, src: usize, factor: i64| {
        for row in m.iter_mut() {
            row[dst] -= factor * row[src];
        }
    };
    let swap = |m: &mut Vec<Vec<i64>>, x: usize, y: usize| {
        for row in m.iter_mut() {
            row.swap(x, y);
        }
    };
    let mut pivot = 0;
    for r in 0..a.len() {
        if pivot == n {
            break;
        }
        loop {
            // smallest nonzero entry in row r among columns >= pivot
            let best = (pivot..n)
                .filter(|&j| a[r][j] != 0)
                .min_by_key(|&j| a[r][j].abs());
            let Some(best) = best else { break };
            swap(&mut a, pivot, best);
            swap(&mut u, pivot, best);
            let mut done = true;
            for j in pivot + 1..n {
                if a[r][j] != 0 {
                    let q = a[r][j].div_euclid(a[r][pivot]);
                    col_op(&mut a, j, pivot, q);
                    col_op(&mut u, j, pivot, q);
                    if a[r][j] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
    }
    (pivot..n).map(|j| u.iter().map(|row| row[j]).collect()).collect()
}

/// Row Hermite normal form: echelon, positive pivots, entries above each
/// pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_rows(mut rows: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let Some(n) = rows.first().map(Vec::len) else {
        return rows;
    };
    let mut top = 0;
    for col in 0..n {
        if top == rows.len() {
            break;
        }
        loop {
            let best = (top..rows.len())
                .filter(|&i| rows[i][col] != 0)
                .min_by_key(|&i| rows[i][col].abs());
            let Some(best) = best else { break };
            rows.swap(top, best);
            let mut done = true;
            for i in top + 1..rows.len() {
                if rows[i][col] != 0 {
                    let q = rows[i][col].div_euclid(rows[top][col]);
                    let pivot = rows[top].clone();
                    rows[i].iter_mut().zip(&pivot).for_each(|(x, p)| *x -= q * p);
                    if rows[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[top][col] == 0 {
            continue;
        }
        if rows[top][col] < 0 {
            rows[top].iter_mut().for_each(|x| *x = -*x);
        }
        for i in 0..top {
            let q = rows[i][col].div_euclid(rows[top][col]);
            if q != 0 {
                let pivot = rows[top].clone();
                rows[i].iter_mut().zip(&pivot).for_each(|(x, p)| *x -= q * p);
            }
        }
        top += 1;
    }
    rows.truncate(top);
    rows
}
