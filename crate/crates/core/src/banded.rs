//! Band-storage LU factorization with partial pivoting.
//!
//! The stencil systems assembled in this crate have bandwidth at most
//! `2*(m+1)` under lexicographic node ordering, so a band solver is the
//! direct oracle of choice: `O(n b^2)` instead of `O(n^3)`.

use crate::error::{Error, Result};

/// Compact band matrix: `a[i][j]` stores `A[i][i + j - m1]` for
/// `j = 0..m1+m2+1`, with `m1` sub- and `m2` superdiagonals.
pub struct BandedMatrix {
    pub n: usize,
    pub m1: usize,
    pub m2: usize,
    a: Vec<f64>,
}

impl BandedMatrix {
    pub fn zeros(n: usize, m1: usize, m2: usize) -> Self {
        Self { n, m1, m2, a: vec![0.0; n * (m1 + m2 + 1)] }
    }

    #[inline]
    fn mm(&self) -> usize {
        self.m1 + self.m2 + 1
    }

    pub fn set(&mut self, row: usize, col: usize, v: f64) {
        let j = col + self.m1 - row;
        let mm = self.mm();
        self.a[row * mm + j] = v;
    }

    /// LU-decompose in place (partial pivoting within the band).
    pub fn decompose(mut self) -> Result<BandedLU> {
        let (n, m1) = (self.n, self.m1);
        let mm = self.mm();
        let a = &mut self.a;
        let mut al = vec![0.0; n * m1];
        let mut indx = vec![0usize; n];

        // shift the first m1 rows left so column 0 holds the diagonal band start
        let mut l = m1;
        for i in 0..m1 {
            for j in (m1 - i)..mm {
                a[i * mm + j - l] = a[i * mm + j];
            }
            l -= 1;
            for j in (mm - l - 1)..mm {
                a[i * mm + j] = 0.0;
            }
        }

        l = m1;
        for k in 0..n {
            let mut dum = a[k * mm];
            let mut pivot_row = k;
            if l < n {
                l += 1;
            }
            for j in (k + 1)..l {
                if a[j * mm].abs() > dum.abs() {
                    dum = a[j * mm];
                    pivot_row = j;
                }
            }
            indx[k] = pivot_row;
            if dum == 0.0 {
                return Err(Error::Singular { col: k, pivot: dum });
            }
            if pivot_row != k {
                for j in 0..mm {
                    a.swap(k * mm + j, pivot_row * mm + j);
                }
            }
            for i in (k + 1)..l {
                let dum = a[i * mm] / a[k * mm];
                al[k * m1 + (i - k - 1)] = dum;
                for j in 1..mm {
                    a[i * mm + j - 1] = a[i * mm + j] - dum * a[k * mm + j];
                }
                a[i * mm + mm - 1] = 0.0;
            }
        }
        Ok(BandedLU { n, m1, mm, a: self.a, al, indx })
    }
}

pub struct BandedLU {
    n: usize,
    m1: usize,
    mm: usize,
    a: Vec<f64>,
    al: Vec<f64>,
    indx: Vec<usize>,
}

impl BandedLU {
    /// Solve `A x = b`; `b` is overwritten with the solution.
    pub fn solve(&self, b: &mut [f64]) {
        let (n, m1, mm) = (self.n, self.m1, self.mm);
        assert_eq!(b.len(), n);
        let mut l = m1;
        for k in 0..n {
            let i = self.indx[k];
            if i != k {
                b.swap(k, i);
            }
            if l < n {
                l += 1;
            }
            for i in (k + 1)..l {
                b[i] -= self.al[k * m1 + (i - k - 1)] * b[k];
            }
        }
        let mut l = 1;
        for i in (0..n).rev() {
            let mut dum = b[i];
            for k in 1..l {
                dum -= self.a[i * mm + k] * b[i + k];
            }
            b[i] = dum / self.a[i * mm];
            if l < mm {
                l += 1;
            }
        }
    }
}
