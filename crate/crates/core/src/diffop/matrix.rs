//! Square matrices over a differential field.

use std::fmt;

use super::field::DiffField;
use crate::arith::fp::FpRatFn;
use crate::arith::RatFn;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<F> {
    n: usize,
    e: Vec<F>,
}

/// Matrices over Q(z).
pub type RatMat = Mat<RatFn>;
/// Matrices over F_p(z).
pub type FpMat = Mat<FpRatFn>;

impl<F: DiffField> Mat<F> {
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let n = rows.len();
        assert!(n >= 1, "empty matrix");
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Mat {
            n,
            e: rows.into_iter().flatten().collect(),
        }
    }

    /// The n x n zero matrix; `like` fixes the field (e.g. the prime).
    pub fn zero(n: usize, like: &F) -> Self {
        Mat {
            n,
            e: vec![like.zero_like(); n * n],
        }
    }

    pub fn identity(n: usize, like: &F) -> Self {
        let mut m = Self::zero(n, like);
        for i in 0..n {
            m.e[i * n + i] = like.one_like();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.e[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[F] {
        &self.e
    }

    pub fn rows(&self) -> Vec<Vec<F>> {
        self.e.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|x| x.is_zero())
    }

    pub fn map<G: DiffField>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat {
            n: self.n,
            e: self.e.iter().map(f).collect(),
        }
    }

    pub fn try_map<G: DiffField, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<Mat<G>, E> {
        Ok(Mat {
            n: self.n,
            e: self.e.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        Mat {
            n: self.n,
            e: self.e.iter().zip(&o.e).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        Mat {
            n: self.n,
            e: self.e.iter().zip(&o.e).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Mat {
            n: self.n,
            e: self.e.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut e = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.e[0].zero_like();
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                e.push(acc);
            }
        }
        Mat { n, e }
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(self.e[0].zero_like(), |acc, k| {
                    acc.add(&self.get(i, k).mul(&v[k]))
                })
            })
            .collect()
    }

    pub fn derivative(&self) -> Self {
        Mat {
            n: self.n,
            e: self.e.iter().map(|a| a.derivative()).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::identity(self.n, &self.e[0]);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}

impl<F: DiffField + fmt::Display> fmt::Display for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl FpMat {
    pub fn prime(&self) -> u64 {
        self.e[0].prime()
    }
}
