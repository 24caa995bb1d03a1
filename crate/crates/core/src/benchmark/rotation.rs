use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

/// Dense orthogonal matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Rotation {
    dimension: usize,
    rows: Vec<f64>,
}

impl Rotation {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.rows[row * self.dimension + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.rows[row * self.dimension..(row + 1) * self.dimension]
    }

    /// `out = R x`.
    pub fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dimension);
        for (o, row) in out.iter_mut().zip(self.rows.chunks_exact(self.dimension)) {
            *o = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dimension];
        self.apply_into(x, &mut out);
        out
    }

    /// `max |R^T R - I|` over all entries.
    pub fn orthogonality_error(&self) -> f64 {
        let d = self.dimension;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in i..d {
                let dot: f64 = (0..d).map(|k| self.get(k, i) * self.get(k, j)).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// Orthogonal factor of the QR decomposition of a matrix of independent
/// standard normals, with column signs flipped so that `R` has a positive
/// diagonal. The normals are drawn row by row.
pub fn random_orthogonal<R: Rng + ?Sized>(dimension: usize, rng: &mut R) -> Rotation {
    assert!(dimension >= 1, "rotation dimension must be positive");
    let d = dimension;
    let draws: Vec<f64> = (0..d * d).map(|_| rng.sample(StandardNormal)).collect();
    let qr = DMatrix::from_row_slice(d, d, &draws).qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..d {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    let mut rows = Vec::with_capacity(d * d);
    for i in 0..d {
        rows.extend(q.row(i).iter().copied());
    }
    Rotation { dimension: d, rows }
}
