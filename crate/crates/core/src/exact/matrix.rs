use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use rug::Rational;

use super::poly::RatPoly;

/// Small dense row-major matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::new(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| Rational::from((i == j) as i32))
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn diagonal(entries: Vec<Rational>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| **a != 0)
                    .fold(Rational::new(), |acc, (a, b)| acc + Rational::from(a * b))
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(self.is_square());
        (0..e).fold(Self::identity(self.rows), |acc, _| &acc * self)
    }

    /// Determinant by fraction-free (Bareiss) elimination with row pivoting.
    pub fn det_bareiss(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rational::from(1);
        }
        let mut m = self.data.clone();
        let at = |i: usize, j: usize| i * n + j;
        let mut negate = false;
        let mut prev = Rational::from(1);
        for k in 0..n - 1 {
            if m[at(k, k)] == 0 {
                let Some(p) = (k + 1..n).find(|&i| m[at(i, k)] != 0) else {
                    return Rational::new();
                };
                for j in 0..n {
                    m.swap(at(k, j), at(p, j));
                }
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = Rational::from(&m[at(i, j)] * &m[at(k, k)])
                        - Rational::from(&m[at(i, k)] * &m[at(k, j)]);
                    m[at(i, j)] = v / &prev;
                }
            }
            prev = m[at(k, k)].clone();
        }
        let d = m[at(n - 1, n - 1)].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Determinant by Laplace expansion along the first row. Exponential cost;
    /// intended as an independent check for small orders.
    pub fn det_cofactor(&self) -> Rational {
        assert!(self.is_square());
        let n = self.rows;
        match n {
            0 => Rational::from(1),
            1 => self.data[0].clone(),
            _ => {
                let mut acc = Rational::new();
                for j in 0..n {
                    if self[(0, j)] == 0 {
                        continue;
                    }
                    let minor = self.minor(0, j);
                    let term = &self[(0, j)] * minor.det_cofactor() ;
                    if j % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                acc
            }
        }
    }

    /// Matrix with row `r` and column `c` removed.
    pub fn minor(&self, r: usize, c: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                data.push(self[(i, j)].clone());
            }
        }
        Self { rows: self.rows - 1, cols: self.cols - 1, data }
    }

    /// Characteristic polynomial `det(zI - A)` by the Faddeev–LeVerrier recursion.
    pub fn charpoly(&self) -> RatPoly {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![Rational::new(); n + 1];
        coeffs[n] = Rational::from(1);
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
            let mut next = self * &m;
            for i in 0..n {
                next[(i, i)] += &coeffs[n - k + 1];
            }
            m = next;
            let am = self * &m;
            let trace = (0..n).fold(Rational::new(), |acc, i| acc + &am[(i, i)]);
            coeffs[n - k] = -trace / k as u32;
        }
        RatPoly::from_coeffs(coeffs)
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if *a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    if rhs[(k, j)] != 0 {
                        out[(i, j)] += Rational::from(a * &rhs[(k, j)]);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
