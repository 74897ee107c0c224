//! Dense matrices over a finite field: reduced row echelon form, rank, and
//! right null space. Pivoting is deterministic (leftmost column, lowest row),
//! so every derived object is reproducible.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl FMatrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Self {
        FMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![FieldElement::zero(field); rows * cols],
        }
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        for row in &rows {
            if row.len() != ncols {
                return Err(Error::Range("ragged matrix rows".into()));
            }
            for e in row {
                if e.spec() != field {
                    return Err(Error::FieldMismatch(
                        "matrix entry from a different field".into(),
                    ));
                }
            }
        }
        Ok(FMatrix {
            field: field.clone(),
            rows: rows.len(),
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Reduced row echelon form and the pivot columns, in order.
    pub fn rref(&self) -> (FMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &(m.get(r, j) * &factor);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v : M v = 0}`, one vector per free
    /// column in ascending column order, each normalized so its free
    /// coordinate is 1.
    pub fn nullspace(&self) -> Vec<Vec<FieldElement>> {
        let (rr, pivots) = self.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![FieldElement::zero(&self.field); self.cols];
            v[free] = FieldElement::one(&self.field);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -rr.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::Range("vector length does not match columns".into()));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = FieldElement::zero(&self.field);
                for (c, x) in v.iter().enumerate() {
                    if !x.is_zero() && !self.get(r, c).is_zero() {
                        acc = &acc + &(self.get(r, c) * x);
                    }
                }
                acc
            })
            .collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn mat(fq: u64, rows: &[&[u64]]) -> FMatrix {
        let f = make_field(fq, 1).unwrap();
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&i| FieldElement::from_index(&f, i))
                    .collect::<Vec<_>>()
            })
            .collect();
        FMatrix::from_rows(&f, rows).unwrap()
    }

    #[test]
    fn rank_of_f4_matrix() {
        // The third row is the sum of the first two.
        let m = mat(2, &[&[1, 0, 2], &[0, 1, 3], &[1, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let full = mat(2, &[&[1, 0, 0], &[1, 1, 0], &[1, 1, 1]]);
        assert_eq!(full.rank(), 3);
    }

    #[test]
    fn rref_is_idempotent() {
        let m = mat(3, &[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 0, 1]]);
        let (rr, pivots) = m.rref();
        let (rr2, pivots2) = rr.rref();
        assert_eq!(rr, rr2);
        assert_eq!(pivots, pivots2);
    }

    #[test]
    fn nullspace_vectors_are_in_the_kernel() {
        let m = mat(2, &[&[1, 2, 3, 1], &[0, 1, 1, 2]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let out = m.apply(v).unwrap();
            assert!(out.iter().all(|e| e.is_zero()));
        }
        assert_eq!(m.rank() + ns.len(), m.ncols());
    }

    #[test]
    fn ragged_rows_rejected() {
        let f = make_field(2, 1).unwrap();
        let rows = vec![
            vec![FieldElement::zero(&f)],
            vec![FieldElement::zero(&f), FieldElement::zero(&f)],
        ];
        assert!(FMatrix::from_rows(&f, rows).is_err());
    }
}
