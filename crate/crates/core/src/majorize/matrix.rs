use serde::Serialize;

/// Dense row-major square matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        SquareMatrix { n, data: rows.concat() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n).map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.n];
        for i in 0..self.n {
            for (s, v) in sums.iter_mut().zip(self.row(i)) {
                *s += v;
            }
        }
        sums
    }

    pub fn min_entry(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Largest `|row sum − 1|` and `|column sum − 1|`.
    pub fn stochastic_deviation(&self) -> (f64, f64) {
        let dev = |v: Vec<f64>| v.into_iter().map(|s| (s - 1.0).abs()).fold(0.0, f64::max);
        (dev(self.row_sums()), dev(self.col_sums()))
    }

    /// Left-multiplies by the T-transform `λI + (1−λ)Q` where `Q` swaps
    /// coordinates `i` and `j`.
    pub(crate) fn apply_t_transform(&mut self, i: usize, j: usize, lambda: f64) {
        let n = self.n;
        for c in 0..n {
            let a = self.data[i * n + c];
            let b = self.data[j * n + c];
            self.data[i * n + c] = lambda * a + (1.0 - lambda) * b;
            self.data[j * n + c] = (1.0 - lambda) * a + lambda * b;
        }
    }
}

/// Nonnegative up to `-tol`, with every row and column summing to one within
/// `tol`.
pub fn is_doubly_stochastic(d: &SquareMatrix, tol: f64) -> bool {
    let (rows, cols) = d.stochastic_deviation();
    d.min_entry() >= -tol && rows <= tol && cols <= tol
}

/// Circulant matrix `C[i][j] = c[(i − j) mod n]` with `c` as its first
/// column.
pub fn circulant(first_column: &[f64]) -> SquareMatrix {
    let n = first_column.len();
    let mut m = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, first_column[(i + n - j) % n]);
        }
    }
    m
}

/// Full discrete convolution, length `a.len() + b.len() − 1`.
pub fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_doubly_stochastic() {
        assert!(is_doubly_stochastic(&SquareMatrix::identity(5), 1e-15));
    }

    #[test]
    fn circulant_of_probability_vector() {
        // y = (1/2, 1/4, 1/4) has N + 1 = 3 entries, so 2N = 4
        let c = circulant(&[0.5, 0.25, 0.25, 0.0]);
        assert!(is_doubly_stochastic(&c, 1e-15));
        // C (x, 0̄) reproduces the Toeplitz convolution y ∗ x
        let x = [0.6, 0.4];
        let z = c.mul_vec(&[0.6, 0.4, 0.0, 0.0]);
        let expected = convolve(&[0.5, 0.25, 0.25], &x);
        for (a, b) in z.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn t_transform_is_doubly_stochastic() {
        let mut t = SquareMatrix::identity(2);
        t.apply_t_transform(0, 1, 0.3);
        assert_eq!(t, SquareMatrix::from_rows(&[vec![0.3, 0.7], vec![0.7, 0.3]]));
        assert!(is_doubly_stochastic(&t, 1e-15));
    }

    #[test]
    fn negative_entries_rejected() {
        let m = SquareMatrix::from_rows(&[vec![1.5, -0.5], vec![-0.5, 1.5]]);
        assert!(!is_doubly_stochastic(&m, 1e-12));
    }
}
