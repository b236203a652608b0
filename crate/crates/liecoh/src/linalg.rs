//! Exact linear algebra over Q(i): dense matrices, reduced row echelon form,
//! kernels, and a Subspace type whose representation is canonical (the RREF
//! basis), so subspace equality is plain syntactic equality.
//!
//! Maps are matrices acting on column vectors; subspaces are row spaces.
//! Zero-row and zero-column matrices are legal everywhere. Degree slices of
//! an exterior algebra can be empty, and the code paths that walk them must
//! not special-case that.

use crate::scalar::Scalar;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for j in 0..n {
            m[(j, j)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        let mut m = Matrix::zero(rows.len(), cols);
        for (r, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row");
            for (c, v) in row.into_iter().enumerate() {
                m[(r, c)] = v;
            }
        }
        m
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        (0..self.cols).map(|c| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(c, r)] = self[(r, c)].clone();
            }
        }
        m
    }

    pub fn conj(&self) -> Matrix {
        let mut m = self.clone();
        for v in m.data.iter_mut() {
            *v = v.conj();
        }
        m
    }

    pub fn conj_transpose(&self) -> Matrix {
        self.transpose().conj()
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let mut m = self.clone();
        for v in m.data.iter_mut() {
            *v = (&*v).mul(s);
        }
        m
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (v, w) in m.data.iter_mut().zip(other.data.iter()) {
            *v += w;
        }
        m
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut m = Matrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    let p = a.mul(b);
                    m[(r, c)] += &p;
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for c in 0..self.cols {
                    if !self[(r, c)].is_zero() && !v[c].is_zero() {
                        acc += &(&self[(r, c)]).mul(&v[c]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut m = Matrix::zero(self.rows + other.rows, self.cols);
        m.data[..self.rows * self.cols].clone_from_slice(&self.data);
        m.data[self.rows * self.cols..].clone_from_slice(&other.data);
        m
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zero(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..other.cols {
                m[(r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        m
    }

    /// Reduced row echelon form together with the pivot columns.
    /// Gauss-Jordan with exact division; the result is canonical for the
    /// row space.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0usize;
        for pc in 0..m.cols {
            if pr >= m.rows {
                break;
            }
            let Some(nz) = (pr..m.rows).find(|&r| !m[(r, pc)].is_zero()) else {
                continue;
            };
            if nz != pr {
                for c in 0..m.cols {
                    let tmp = m[(nz, c)].clone();
                    m[(nz, c)] = m[(pr, c)].clone();
                    m[(pr, c)] = tmp;
                }
            }
            let inv = m[(pr, pc)].inv();
            for c in pc..m.cols {
                m[(pr, c)] = (&m[(pr, c)]).mul(&inv);
            }
            for r in 0..m.rows {
                if r == pr || m[(r, pc)].is_zero() {
                    continue;
                }
                let f = m[(r, pc)].clone();
                for c in pc..m.cols {
                    let sub = (&f).mul(&m[(pr, c)]);
                    m[(r, c)] -= sub;
                }
            }
            pivots.push(pc);
            pr += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Determinant by fraction-carrying elimination.
    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for col in 0..n {
            let pivot = match (col..n).find(|&r| !m[(r, col)].is_zero()) {
                Some(p) => p,
                None => return Scalar::zero(),
            };
            if pivot != col {
                for c in 0..n {
                    let tmp = m[(pivot, c)].clone();
                    m[(pivot, c)] = m[(col, c)].clone();
                    m[(col, c)] = tmp;
                }
                det = -det;
            }
            let p = m[(col, col)].clone();
            det = det.mul(&p);
            let p_inv = p.inv();
            for r in col + 1..n {
                let factor = m[(r, col)].mul(&p_inv);
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let sub = factor.mul(&m[(col, c)]);
                    m[(r, c)] -= sub;
                }
            }
        }
        det
    }

    /// Leading principal minors, sizes 1..=n.
    pub fn leading_principal_minors(&self) -> Vec<Scalar> {
        assert_eq!(self.rows, self.cols);
        (1..=self.rows)
            .map(|k| {
                let mut sub = Matrix::zero(k, k);
                for r in 0..k {
                    for c in 0..k {
                        sub[(r, c)] = self[(r, c)].clone();
                    }
                }
                sub.determinant()
            })
            .collect()
    }

    /// Basis (as rows) of the right kernel {v : M v = 0}.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zero(free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            basis[(i, f)] = Scalar::one();
            for (prow, &pc) in pivots.iter().enumerate() {
                basis[(i, pc)] = -&r[(prow, f)];
            }
        }
        basis
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let aug = self.hstack(&Matrix::identity(self.rows));
        let (r, pivots) = aug.rref();
        if pivots.len() != self.rows || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = Matrix::zero(self.rows, self.rows);
        for i in 0..self.rows {
            for j in 0..self.rows {
                inv[(i, j)] = r[(i, self.rows + j)].clone();
            }
        }
        Some(inv)
    }

    /// One solution of M x = b with all free variables zero, if consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, b.len());
        let mut bm = Matrix::zero(self.rows, 1);
        for (r, v) in b.iter().enumerate() {
            bm[(r, 0)] = v.clone();
        }
        let aug = self.hstack(&bm);
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (prow, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(prow, self.cols)].clone();
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A linear subspace of Q(i)^ambient, stored as the RREF basis of its row
/// space with zero rows dropped. Two Subspace values are equal iff they are
/// the same subspace.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zero(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_matrix(Matrix::identity(ambient))
    }

    pub fn from_matrix(rows: Matrix) -> Self {
        let ambient = rows.cols;
        let (r, pivots) = rows.rref();
        let mut basis = Matrix::zero(pivots.len(), ambient);
        for i in 0..pivots.len() {
            for c in 0..ambient {
                basis[(i, c)] = r[(i, c)].clone();
            }
        }
        Subspace { ambient, basis, pivots }
    }

    pub fn from_vectors(vecs: &[Vec<Scalar>], ambient: usize) -> Self {
        Subspace::from_matrix(Matrix::from_rows(vecs.to_vec(), ambient))
    }

    pub fn span_of_matrix_rows(m: &Matrix) -> Self {
        Subspace::from_matrix(m.clone())
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis_matrix(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.basis.rows).map(|r| self.basis.row(r)).collect()
    }

    /// Canonical coset representative: v reduced against the basis rows.
    /// reduce(v) == 0 iff v lies in the subspace, and reduce(v) == reduce(w)
    /// iff v - w lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (row, &pc) in self.pivots.iter().enumerate() {
            if out[pc].is_zero() {
                continue;
            }
            let f = out[pc].clone();
            for c in 0..self.ambient {
                let sub = (&f).mul(&self.basis[(row, c)]);
                out[c] -= sub;
            }
        }
        out
    }

    pub fn contains_vec(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of v in the canonical (RREF) basis, or None when v lies
    /// outside. Since the basis has unit pivots, the coordinates are the
    /// pivot entries of v.
    pub fn coordinates_in(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains_vec(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// The vector with the given coordinates in the canonical basis.
    pub fn vector_from_coordinates(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![Scalar::zero(); self.ambient];
        for (i, c) in coords.iter().enumerate() {
            for j in 0..self.ambient {
                out[j] += &c.mul(&self.basis[(i, j)]);
            }
        }
        out
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient);
        (0..other.basis.rows).all(|r| self.contains_vec(&other.basis.row(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::from_matrix(self.basis.vstack(&other.basis))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        // w = x^T U = y^T V; solve U^T x - V^T y = 0.
        let ut = self.basis.transpose();
        let vt = other.basis.transpose().scale(&Scalar::from_int(-1));
        let k = ut.hstack(&vt).kernel();
        let mut vecs = Vec::new();
        for r in 0..k.rows {
            let x: Vec<Scalar> = (0..self.dim()).map(|c| k[(r, c)].clone()).collect();
            let mut w = vec![Scalar::zero(); self.ambient];
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for c in 0..self.ambient {
                    let add = xi.mul(&self.basis[(i, c)]);
                    w[c] += add;
                }
            }
            vecs.push(w);
        }
        Subspace::from_vectors(&vecs, self.ambient)
    }

    /// Rows spanning the annihilator {u : s . u = 0 for all s in self} under
    /// the plain (unconjugated) bilinear pairing.
    pub fn annihilator(&self) -> Matrix {
        self.basis.kernel()
    }

    /// Preimage of `self` under the map v -> M v.
    pub fn preimage(&self, m: &Matrix) -> Subspace {
        assert_eq!(self.ambient, m.rows);
        let ann = self.annihilator();
        Subspace::from_matrix(ann.mul(m).kernel())
    }

    /// Image {M v : v in self} as a subspace of the target.
    pub fn image(&self, m: &Matrix) -> Subspace {
        assert_eq!(self.ambient, m.cols);
        Subspace::from_matrix(self.basis.mul(&m.transpose()))
    }

    /// dim(self / sub); panics unless sub is contained in self.
    pub fn quotient_dim(&self, sub: &Subspace) -> usize {
        assert!(self.contains(sub), "quotient by a non-subspace");
        self.dim() - sub.dim()
    }

    pub fn conj(&self) -> Subspace {
        Subspace::from_matrix(self.basis.conj())
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of {})", self.dim(), self.ambient)?;
        if self.dim() > 0 {
            write!(f, " {:?}", self.basis)?;
        }
        Ok(())
    }
}

/// The real (rational) vectors contained in a complex subspace of C^N,
/// as a subspace with a real basis. Works over the reals by viewing C^N as
/// Q^(2N): the Q-span of {w, iw} for basis vectors w, intersected with the
/// locus where every imaginary coordinate vanishes.
pub fn real_points(s: &Subspace) -> Subspace {
    let n = s.ambient;
    let mut rows = Vec::new();
    for w in s.basis_vectors() {
        let mut re_row = vec![Scalar::zero(); 2 * n];
        let mut im_row = vec![Scalar::zero(); 2 * n];
        for (c, z) in w.iter().enumerate() {
            re_row[c] = Scalar::from_rat(z.re.clone());
            re_row[n + c] = Scalar::from_rat(z.im.clone());
            // i*z has real part -Im z and imaginary part Re z.
            im_row[c] = Scalar::from_rat(-z.im.clone());
            im_row[n + c] = Scalar::from_rat(z.re.clone());
        }
        rows.push(re_row);
        rows.push(im_row);
    }
    let doubled = Subspace::from_vectors(&rows, 2 * n);
    let mut real_axes = Vec::new();
    for c in 0..n {
        let mut v = vec![Scalar::zero(); 2 * n];
        v[c] = Scalar::one();
        real_axes.push(v);
    }
    let meet = doubled.intersect(&Subspace::from_vectors(&real_axes, 2 * n));
    let projected: Vec<Vec<Scalar>> = meet
        .basis_vectors()
        .into_iter()
        .map(|v| v[..n].to_vec())
        .collect();
    Subspace::from_vectors(&projected, n)
}

/// Kernel of a map as a Subspace of its source.
pub fn kernel_subspace(m: &Matrix) -> Subspace {
    Subspace::from_matrix(m.kernel())
}

/// Image (column space) of a map as a Subspace of its target.
pub fn image_subspace(m: &Matrix) -> Subspace {
    Subspace::from_matrix(m.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn rref_and_rank() {
        let m = Matrix::from_rows(
            vec![
                vec![s(1), s(2), s(3)],
                vec![s(2), s(4), s(6)],
                vec![s(0), s(1), s(1)],
            ],
            3,
        );
        assert_eq!(m.rank(), 2);
        let (r, p) = m.rref();
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r[(0, 2)], s(1));
        assert_eq!(r[(1, 2)], s(1));
    }

    #[test]
    fn kernel_solves() {
        let m = Matrix::from_rows(vec![vec![s(1), s(1), s(0)], vec![s(0), s(1), s(1)]], 3);
        let k = m.kernel();
        assert_eq!(k.rows, 1);
        for r in 0..k.rows {
            assert!(m.mul_vec(&k.row(r)).iter().all(|x| x.is_zero()));
        }
        let x = m.solve(&[s(3), s(2)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![s(3), s(2)]);
        let inconsistent = Matrix::from_rows(vec![vec![s(1), s(0)], vec![s(1), s(0)]], 2);
        assert!(inconsistent.solve(&[s(1), s(2)]).is_none());
    }

    #[test]
    fn empty_shapes() {
        let m = Matrix::zero(0, 4);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel().rows, 4);
        let z = Matrix::zero(3, 0);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel().rows, 0);
        assert_eq!(Subspace::zero(0).dim(), 0);
        assert_eq!(Subspace::full(0).dim(), 0);
    }

    #[test]
    fn subspace_lattice() {
        let u = Subspace::from_vectors(&[vec![s(1), s(0), s(0)], vec![s(0), s(1), s(0)]], 3);
        let v = Subspace::from_vectors(&[vec![s(0), s(1), s(1)]], 3);
        let both = u.sum(&v);
        assert_eq!(both.dim(), 3);
        let meet = u.intersect(&v);
        assert_eq!(meet.dim(), 0);
        let w = Subspace::from_vectors(&[vec![s(1), s(1), s(0)]], 3);
        assert!(u.contains(&w));
        assert_eq!(u.quotient_dim(&w), 1);
        assert_eq!(u.intersect(&u), u);
    }

    #[test]
    fn preimage_is_inverse_image() {
        // f(x,y,z) = (x+y, z).
        let m = Matrix::from_rows(vec![vec![s(1), s(1), s(0)], vec![s(0), s(0), s(1)]], 3);
        let target = Subspace::from_vectors(&[vec![s(1), s(0)]], 2);
        let pre = target.preimage(&m);
        assert_eq!(pre.dim(), 2);
        for b in pre.basis_vectors() {
            assert!(target.contains_vec(&m.mul_vec(&b)));
        }
    }

    #[test]
    fn coset_reduction_is_canonical() {
        let u = Subspace::from_vectors(&[vec![s(1), s(2), s(0)]], 3);
        let a = vec![s(3), s(6), s(1)];
        let b = vec![s(0), s(0), s(1)];
        assert_eq!(u.reduce(&a), u.reduce(&b));
        assert!(u.contains_vec(&[s(2), s(4), s(0)]));
    }
}
