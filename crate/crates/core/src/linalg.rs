//! Exact Gaussian elimination over a finite field.

use alloc::vec;
use alloc::vec::Vec;

use crate::gf::{FieldCtx, FieldElem};

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(ctx: &FieldCtx, rows: &mut [Vec<u32>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = ctx.inv_codes(rows[r][col]).expect("pivot is nonzero");
        for x in rows[r].iter_mut().take(ncols) {
            *x = ctx.mul_codes(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let factor = ctx.neg_codes(row[col]);
            for (x, &p) in row.iter_mut().zip(&pivot_row).take(ncols) {
                *x = ctx.add_codes(*x, ctx.mul_codes(factor, p));
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// A basis of `{v : M v = 0}`, one vector per free column, with a 1 in that
/// column.
pub(crate) fn kernel<'f>(
    ctx: &'f FieldCtx,
    matrix: &[Vec<FieldElem<'f>>],
    ncols: usize,
) -> Vec<Vec<FieldElem<'f>>> {
    let mut rows: Vec<Vec<u32>> = matrix
        .iter()
        .map(|row| row.iter().map(|e| e.encode()).collect())
        .collect();
    let pivots = rref(ctx, &mut rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u32; ncols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = ctx.neg_codes(rows[r][fc]);
            }
            v.into_iter()
                .map(|c| ctx.elem(c as u64).expect("reduced code"))
                .collect()
        })
        .collect()
}

pub(crate) fn rank(ctx: &FieldCtx, matrix: &[Vec<FieldElem<'_>>], ncols: usize) -> usize {
    let mut rows: Vec<Vec<u32>> = matrix
        .iter()
        .map(|row| row.iter().map(|e| e.encode()).collect())
        .collect();
    rref(ctx, &mut rows, ncols).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_small_system() {
        let f5 = FieldCtx::prime(5).unwrap();
        let e = |k| f5.from_int(k);
        // x + 2y + 3z = 0, y + z = 0
        let m = vec![vec![e(1), e(2), e(3)], vec![e(0), e(1), e(1)]];
        let k = kernel(&f5, &m, 3);
        assert_eq!(k.len(), 1);
        for row in &m {
            let dot = row
                .iter()
                .zip(&k[0])
                .fold(f5.zero(), |acc, (a, b)| acc + *a * *b);
            assert!(dot.is_zero());
        }
        assert_eq!(rank(&f5, &m, 3), 2);
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let f3 = FieldCtx::prime(3).unwrap();
        let m: Vec<Vec<_>> = (0..3)
            .map(|i| (0..3).map(|j| f3.from_int((i == j) as i64)).collect())
            .collect();
        assert!(kernel(&f3, &m, 3).is_empty());
    }
}
