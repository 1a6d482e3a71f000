//! Exact rational scalars, vectors and the small amount of dense linear
//! algebra the root-datum code needs.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar. All quantities in this crate are small, so `i64`
/// numerators and denominators are ample; overflow panics in checked builds.
pub type Rat = Ratio<i64>;

/// Shorthand for an integral rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(n)
}

/// Shorthand for `n / d`.
pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

/// A vector of exact rationals in some ambient coordinate space.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QVector(pub Vec<Rat>);

impl QVector {
    pub fn zeros(dim: usize) -> Self {
        QVector(vec![Rat::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rat::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        QVector(xs.iter().map(|&x| int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Standard inner product.
    pub fn dot(&self, other: &QVector) -> Rat {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm2(&self) -> Rat {
        self.dot(self)
    }

    pub fn scale(&self, c: Rat) -> QVector {
        QVector(self.0.iter().map(|x| x * c).collect())
    }

    /// `self + c * other`, the workhorse of reflections.
    pub fn add_scaled(&self, c: Rat, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + c * b).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Ratio::is_integer)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.0.iter()
    }

    /// Concatenate blocks into one vector.
    pub fn concat(blocks: &[QVector]) -> QVector {
        QVector(blocks.iter().flat_map(|b| b.0.iter().copied()).collect())
    }
}

impl Index<usize> for QVector {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl IndexMut<usize> for QVector {
    fn index_mut(&mut self, i: usize) -> &mut Rat {
        &mut self.0[i]
    }
}

impl Add for &QVector {
    type Output = QVector;
    fn add(self, rhs: &QVector) -> QVector {
        QVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &QVector {
    type Output = QVector;
    fn sub(self, rhs: &QVector) -> QVector {
        QVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &QVector {
    type Output = QVector;
    fn neg(self) -> QVector {
        QVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Dense rational matrix stored by rows.
pub type QMatrix = Vec<Vec<Rat>>;

/// Solve the square system `a x = b`. Returns `None` if `a` is singular.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    assert_eq!(b.len(), n);
    let mut m: QMatrix = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in col..=n {
                    let delta = f * m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n]).collect())
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(a: &[Vec<Rat>]) -> Option<QMatrix> {
    let n = a.len();
    let cols: Option<Vec<Vec<Rat>>> = (0..n)
        .map(|j| {
            let e: Vec<Rat> = (0..n).map(|i| if i == j { Rat::one() } else { Rat::zero() }).collect();
            solve(a, &e)
        })
        .collect();
    let cols = cols?;
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect())
}

/// Determinant by fraction-exact elimination.
pub fn determinant(a: &[Vec<Rat>]) -> Rat {
    let n = a.len();
    let mut m: QMatrix = a.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        let p = m[col][col];
        det *= p;
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = m[r][col] / p;
                for c in col..n {
                    let delta = f * m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    det
}

/// Rank of a list of row vectors.
pub fn rank(rows: &[QVector]) -> usize {
    let Some(width) = rows.first().map(QVector::dim) else {
        return 0;
    };
    let mut m: QMatrix = rows.iter().map(|r| r.0.clone()).collect();
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let p = m[rank][col];
        for r in rank + 1..m.len() {
            if !m[r][col].is_zero() {
                let f = m[r][col] / p;
                for c in col..width {
                    let delta = f * m[rank][c];
                    m[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Least common multiple of the denominators.
pub fn common_denominator(xs: &[Rat]) -> i64 {
    xs.iter().fold(1, |acc, x| acc.lcm(x.denom()))
}

/// Scale a nonzero rational vector by a positive factor so that it becomes a
/// primitive integer vector. Returns `None` for the zero vector.
pub fn primitive_integer(xs: &[Rat]) -> Option<Vec<i64>> {
    if xs.iter().all(Zero::is_zero) {
        return None;
    }
    let d = common_denominator(xs);
    let ints: Vec<i64> = xs.iter().map(|x| (x * d).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, x| acc.gcd(x));
    Some(ints.into_iter().map(|x| x / g).collect())
}

/// Absolute value, spelled out for readability at call sites.
pub fn abs(x: Rat) -> Rat {
    x.abs()
}

/// Parse `"3"`, `"-1/2"` style rationals.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| Rat::new(n, d))
        }
        None => s.parse::<i64>().ok().map(int),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_small_system() {
        let a = vec![vec![int(2), int(-1)], vec![int(-1), int(2)]];
        let x = solve(&a, &[int(1), int(0)]).unwrap();
        assert_eq!(x, vec![frac(2, 3), frac(1, 3)]);
    }

    #[test]
    fn singular_system_is_rejected() {
        let a = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(solve(&a, &[int(1), int(1)]).is_none());
        assert_eq!(determinant(&a), int(0));
    }

    #[test]
    fn inverse_round_trip() {
        let a = vec![
            vec![int(2), int(-1), int(0)],
            vec![int(-1), int(2), int(-2)],
            vec![int(0), int(-1), int(2)],
        ];
        let inv = inverse(&a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: Rat = (0..3).map(|k| a[i][k] * inv[k][j]).sum();
                assert_eq!(s, if i == j { int(1) } else { int(0) });
            }
        }
        assert_eq!(determinant(&a), int(2));
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![
            QVector::from_ints(&[1, -1, 0]),
            QVector::from_ints(&[0, 1, -1]),
            QVector::from_ints(&[1, 0, -1]),
        ];
        assert_eq!(rank(&rows), 2);
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive_integer(&[frac(1, 2), frac(3, 2)]), Some(vec![1, 3]));
        assert_eq!(primitive_integer(&[int(-4), int(6)]), Some(vec![-2, 3]));
        assert_eq!(primitive_integer(&[int(0)]), None);
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rat(" -3/6 "), Some(frac(-1, 2)));
        assert_eq!(parse_rat("7"), Some(int(7)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
    }
}
