//! The exterior algebra on a finite-dimensional vector space: monomials,
//! forms with exact coefficients, degree slices ordered lexicographically,
//! and graded operators stored as one matrix block per degree.
//!
//! Monomials are strictly increasing index sequences, 1-based. The basis of
//! the degree-k slice is the list of k-subsets of {1..n} in lexicographic
//! order, and vectorization always uses that order, so a coordinate index
//! means the same thing everywhere in the crate.

use crate::linalg::Matrix;
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as u128 / (j + 1) as u128;
    }
    acc as usize
}

/// Strictly increasing 1-based index sequence; the empty monomial is the
/// algebra unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub Vec<u8>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_valid(&self, n: usize) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
            && self.0.iter().all(|&i| 1 <= i && i as usize <= n)
    }

    /// Merge with sign, or None when an index repeats.
    pub fn wedge(&self, other: &Monomial) -> Option<(i32, Monomial)> {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let mut sign = 1i32;
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0usize, 0usize);
        while i < a.len() && j < b.len() {
            if a[i] == b[j] {
                return None;
            }
            if a[i] < b[j] {
                out.push(a[i]);
                i += 1;
            } else {
                // b[j] jumps over the a[i..] tail.
                if (a.len() - i) % 2 == 1 {
                    sign = -sign;
                }
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Some((sign, Monomial(out)))
    }

    /// Interior product with the basis vector of index `idx`: removes the
    /// index with sign (-1)^(position-1), or None when absent.
    pub fn contract(&self, idx: u8) -> Option<(i32, Monomial)> {
        let pos = self.0.iter().position(|&i| i == idx)?;
        let mut out = self.0.clone();
        out.remove(pos);
        let sign = if pos % 2 == 0 { 1 } else { -1 };
        Some((sign, Monomial(out)))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        write!(f, "e")?;
        if self.0.iter().all(|&i| i <= 9) {
            for i in &self.0 {
                write!(f, "{i}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
            write!(f, "{}", parts.join("."))
        }
    }
}

/// All degree-k monomials on n indices, lexicographic.
pub fn monomials(n: usize, k: usize) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(binomial(n, k));
    if k > n {
        return out;
    }
    let mut cur: Vec<u8> = (1..=k as u8).collect();
    loop {
        out.push(Monomial(cur.clone()));
        // Next k-subset in lex order.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < (n - (k - 1 - i)) as u8 {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Lexicographic rank of a degree-k monomial among the k-subsets of {1..n}.
pub fn monomial_index(m: &Monomial, n: usize) -> usize {
    let k = m.degree();
    let mut rank = 0usize;
    let mut prev = 0usize;
    for (j, &mj) in m.0.iter().enumerate() {
        for v in prev + 1..mj as usize {
            rank += binomial(n - v, k - j - 1);
        }
        prev = mj as usize;
    }
    rank
}

/// A form with exact coefficients; terms of mixed degree are allowed.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Form {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Form {
    pub fn zero() -> Self {
        Form { terms: BTreeMap::new() }
    }

    pub fn unit(c: Scalar) -> Self {
        Form::monomial(Monomial::unit(), c)
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Form { terms }
    }

    pub fn basis(indices: &[u8]) -> Self {
        let m = Monomial(indices.to_vec());
        debug_assert!(m.0.windows(2).all(|w| w[0] < w[1]));
        Form::monomial(m, Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            // Re-borrow to remove; find the key we just touched.
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Form) -> Form {
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Form {
        if s.is_zero() {
            return Form::zero();
        }
        let mut out = Form::zero();
        for (m, c) in self.terms.iter() {
            out.add_term(m.clone(), c.mul(s));
        }
        out
    }

    pub fn conj(&self) -> Form {
        let mut out = Form::zero();
        for (m, c) in self.terms.iter() {
            out.add_term(m.clone(), c.conj());
        }
        out
    }

    pub fn wedge(&self, other: &Form) -> Form {
        let mut out = Form::zero();
        for (m1, c1) in self.terms.iter() {
            for (m2, c2) in other.terms.iter() {
                if let Some((sign, m)) = m1.wedge(m2) {
                    let mut c = c1.mul(c2);
                    if sign < 0 {
                        c = -c;
                    }
                    out.add_term(m, c);
                }
            }
        }
        out
    }

    /// Interior product with basis vector `idx`.
    pub fn contract(&self, idx: u8) -> Form {
        let mut out = Form::zero();
        for (m, c) in self.terms.iter() {
            if let Some((sign, m2)) = m.contract(idx) {
                let mut c = c.clone();
                if sign < 0 {
                    c = -c;
                }
                out.add_term(m2, c);
            }
        }
        out
    }

    pub fn wedge_pow(&self, k: usize) -> Form {
        let mut out = Form::unit(Scalar::one());
        for _ in 0..k {
            out = out.wedge(self);
        }
        out
    }

    /// True when every term has the given degree (vacuously for zero).
    pub fn is_homogeneous(&self, k: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == k)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.terms.keys().map(|m| m.degree()).collect();
        ds.dedup();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// The degree-k part.
    pub fn homogeneous_part(&self, k: usize) -> Form {
        let mut out = Form::zero();
        for (m, c) in self.terms.iter() {
            if m.degree() == k {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Coordinates in the lex-ordered degree-k basis; panics on terms of a
    /// different degree.
    pub fn to_vec(&self, n: usize, k: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); binomial(n, k)];
        for (m, c) in self.terms.iter() {
            assert_eq!(m.degree(), k, "inhomogeneous form in to_vec");
            assert!(m.is_valid(n));
            v[monomial_index(m, n)] = c.clone();
        }
        v
    }

    pub fn from_vec(v: &[Scalar], n: usize, k: usize) -> Form {
        let basis = monomials(n, k);
        assert_eq!(v.len(), basis.len());
        let mut out = Form::zero();
        for (m, c) in basis.into_iter().zip(v.iter()) {
            out.add_term(m, c.clone());
        }
        out
    }

    /// Applies the algebra homomorphism determined by e^i -> images[i-1].
    pub fn substitute(&self, images: &[Form]) -> Form {
        let mut out = Form::zero();
        for (m, c) in self.terms.iter() {
            let mut acc = Form::unit(c.clone());
            for &i in m.0.iter() {
                acc = acc.wedge(&images[(i - 1) as usize]);
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        out
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter() {
            let cs = c.to_string();
            let (sign, mag) = if let Some(stripped) = cs.strip_prefix('-') {
                ("-", stripped.to_string())
            } else {
                ("+", cs)
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let needs_coeff = mag != "1" || m.degree() == 0;
            let wrap = mag.contains('+') || mag.contains('-') || mag.contains('i');
            if needs_coeff {
                if wrap && m.degree() > 0 {
                    write!(f, "({mag})*")?;
                } else if m.degree() > 0 {
                    write!(f, "{mag}*")?;
                } else {
                    write!(f, "{mag}")?;
                }
            }
            if m.degree() > 0 {
                write!(f, "{m:?}")?;
            }
        }
        Ok(())
    }
}

/// A degree-homogeneous linear operator on the exterior algebra of an
/// n-dimensional space, stored as one matrix per source degree. Block k maps
/// the degree-k slice to the degree-(k+shift) slice; out-of-range targets are
/// zero-dimensional.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMap {
    pub n: usize,
    pub shift: i64,
    blocks: Vec<Matrix>,
}

impl GradedMap {
    fn target_dim(n: usize, k: usize, shift: i64) -> usize {
        let t = k as i64 + shift;
        if t < 0 || t > n as i64 {
            0
        } else {
            binomial(n, t as usize)
        }
    }

    pub fn zero(n: usize, shift: i64) -> Self {
        let blocks = (0..=n)
            .map(|k| Matrix::zero(Self::target_dim(n, k, shift), binomial(n, k)))
            .collect();
        GradedMap { n, shift, blocks }
    }

    pub fn identity(n: usize) -> Self {
        let blocks = (0..=n).map(|k| Matrix::identity(binomial(n, k))).collect();
        GradedMap { n, shift: 0, blocks }
    }

    /// Builds the operator from its action on basis monomials. The closure
    /// must return a form homogeneous of degree k+shift (or zero).
    pub fn from_action(n: usize, shift: i64, mut f: impl FnMut(usize, &Monomial) -> Form) -> Self {
        let mut blocks = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let src = monomials(n, k);
            let tdim = Self::target_dim(n, k, shift);
            let mut block = Matrix::zero(tdim, src.len());
            let t = (k as i64 + shift).max(0) as usize;
            for (col, m) in src.iter().enumerate() {
                let img = f(k, m);
                if img.is_zero() {
                    continue;
                }
                assert!(
                    img.is_homogeneous(t) && tdim > 0,
                    "image has wrong degree: k={k} shift={} img={img:?}",
                    shift
                );
                for (v, row) in img.to_vec(n, t).into_iter().zip(0..) {
                    block[(row, col)] = v;
                }
            }
            blocks.push(block);
        }
        GradedMap { n, shift, blocks }
    }

    pub fn block(&self, k: usize) -> &Matrix {
        &self.blocks[k]
    }

    pub fn set_block(&mut self, k: usize, m: Matrix) {
        assert_eq!(m.cols, binomial(self.n, k));
        assert_eq!(m.rows, Self::target_dim(self.n, k, self.shift));
        self.blocks[k] = m;
    }

    pub fn apply(&self, form: &Form) -> Form {
        let mut out = Form::zero();
        for k in 0..=self.n {
            let part = form.homogeneous_part(k);
            if part.is_zero() {
                continue;
            }
            let t = k as i64 + self.shift;
            if t < 0 || t > self.n as i64 {
                continue;
            }
            let v = self.blocks[k].mul_vec(&part.to_vec(self.n, k));
            out = out.add(&Form::from_vec(&v, self.n, t as usize));
        }
        out
    }

    /// self . other (apply other first).
    pub fn compose(&self, other: &GradedMap) -> GradedMap {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let shift = self.shift + other.shift;
        let mut blocks = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mid = k as i64 + other.shift;
            let block = if (0..=n as i64).contains(&mid) {
                self.blocks[mid as usize].mul(&other.blocks[k])
            } else {
                Matrix::zero(Self::target_dim(n, k, shift), binomial(n, k))
            };
            // Normalize shape when the middle slice was out of range.
            blocks.push(block);
        }
        let mut out = GradedMap { n, shift, blocks };
        for k in 0..=n {
            let want_rows = Self::target_dim(n, k, shift);
            if out.blocks[k].rows != want_rows {
                out.blocks[k] = Matrix::zero(want_rows, binomial(n, k));
            }
        }
        out
    }

    pub fn add(&self, other: &GradedMap) -> GradedMap {
        assert_eq!(self.n, other.n);
        assert_eq!(self.shift, other.shift, "adding maps of different shift");
        let blocks = self
            .blocks
            .iter()
            .zip(other.blocks.iter())
            .map(|(a, b)| a.add(b))
            .collect();
        GradedMap { n: self.n, shift: self.shift, blocks }
    }

    pub fn sub(&self, other: &GradedMap) -> GradedMap {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> GradedMap {
        let blocks = self.blocks.iter().map(|b| b.scale(s)).collect();
        GradedMap { n: self.n, shift: self.shift, blocks }
    }

    /// Entrywise conjugation of every block (the operator conjugate, not the
    /// adjoint).
    pub fn conj(&self) -> GradedMap {
        let blocks = self.blocks.iter().map(|b| b.conj()).collect();
        GradedMap { n: self.n, shift: self.shift, blocks }
    }

    /// Adjoint when the monomial basis is declared orthonormal: conjugate
    /// transpose blockwise, with the shift reversed.
    pub fn adjoint(&self) -> GradedMap {
        let n = self.n;
        let shift = -self.shift;
        let mut out = GradedMap::zero(n, shift);
        for k in 0..=n {
            let t = k as i64 + self.shift;
            if t < 0 || t > n as i64 {
                continue;
            }
            out.blocks[t as usize] = self.blocks[k].conj_transpose();
        }
        out
    }

    /// AB - BA; panics unless the shifts allow a common shift.
    pub fn commutator(&self, other: &GradedMap) -> GradedMap {
        self.compose(other).sub(&other.compose(self))
    }

    /// AB + BA.
    pub fn anticommutator(&self, other: &GradedMap) -> GradedMap {
        self.compose(other).add(&other.compose(self))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    /// Per-degree scalar multiple: block k gets factor f(k).
    pub fn scale_by_degree(&self, f: impl Fn(usize) -> Scalar) -> GradedMap {
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(k, b)| b.scale(&f(k)))
            .collect();
        GradedMap { n: self.n, shift: self.shift, blocks }
    }
}

/// Matrix of the degree-k map induced by an algebra endomorphism with the
/// given images of e^1..e^n (each a 1-form, possibly in the same algebra).
pub fn induced_on_degree(images: &[Form], n: usize, k: usize) -> Matrix {
    let src = monomials(n, k);
    let mut m = Matrix::zero(binomial(n, k), src.len());
    for (col, mono) in src.iter().enumerate() {
        let img = Form::monomial(mono.clone(), Scalar::one()).substitute(images);
        for (mm, c) in img.terms() {
            m[(monomial_index(mm, n), col)] = c.clone();
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn wedge_signs() {
        let e1 = Form::basis(&[1]);
        let e2 = Form::basis(&[2]);
        let e12 = e1.wedge(&e2);
        assert_eq!(e12, Form::basis(&[1, 2]));
        assert_eq!(e2.wedge(&e1), e12.scale(&s(-1)));
        assert!(e1.wedge(&e1).is_zero());
        let e13 = Form::basis(&[1, 3]);
        let e24 = Form::basis(&[2, 4]);
        // e13 ^ e24 = -e1234 (indices 1,3,2,4 has one inversion).
        assert_eq!(e13.wedge(&e24), Form::basis(&[1, 2, 3, 4]).scale(&s(-1)));
    }

    #[test]
    fn monomial_rank_roundtrip() {
        for n in 0..=10usize {
            for k in 0..=n {
                let ms = monomials(n, k);
                assert_eq!(ms.len(), binomial(n, k));
                for (i, m) in ms.iter().enumerate() {
                    assert_eq!(monomial_index(m, n), i, "n={n} k={k} m={m:?}");
                }
                let mut sorted = ms.clone();
                sorted.sort();
                assert_eq!(sorted, ms, "lex order n={n} k={k}");
            }
        }
    }

    #[test]
    fn contraction_is_antiderivation() {
        // iota_1 (e12) = e2, iota_2 (e12) = -e1.
        let e12 = Form::basis(&[1, 2]);
        assert_eq!(e12.contract(1), Form::basis(&[2]));
        assert_eq!(e12.contract(2), Form::basis(&[1]).scale(&s(-1)));
        let e123 = Form::basis(&[1, 2, 3]);
        assert_eq!(e123.contract(2), Form::basis(&[1, 3]).scale(&s(-1)));
    }

    #[test]
    fn graded_map_roundtrip() {
        // d on the 3-dim Heisenberg coframe: de3 = e12.
        let n = 3;
        let d = GradedMap::from_action(n, 1, |_, m| {
            let mut out = Form::zero();
            for (pos, &i) in m.0.iter().enumerate() {
                if i == 3 {
                    let rest = Monomial(
                        m.0.iter().cloned().filter(|&j| j != 3).collect::<Vec<_>>(),
                    );
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    let de3 = Form::basis(&[1, 2]);
                    let term = de3.wedge(&Form::monomial(rest, Scalar::one()));
                    out = out.add(&term.scale(&s(sign)));
                }
            }
            out
        });
        assert!(d.compose(&d).is_zero());
        assert_eq!(d.apply(&Form::basis(&[3])), Form::basis(&[1, 2]));
        assert!(d.apply(&Form::basis(&[1, 3])).is_zero(), "e12 ^ e1 = 0");
    }

    #[test]
    fn substitution_is_ring_hom() {
        // e1 -> e1 + e2, e2 -> e2: (e1+e2)^e2 = e12.
        let images = vec![Form::basis(&[1]).add(&Form::basis(&[2])), Form::basis(&[2])];
        let f = Form::basis(&[1, 2]);
        assert_eq!(f.substitute(&images), Form::basis(&[1, 2]));
    }
}
