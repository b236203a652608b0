//! Rational polynomials, just enough for characteristic polynomials and
//! Sturm-chain real-root counting. Used by the completely-solvable flag,
//! which needs "does this ad operator have all-real eigenvalues" answered
//! exactly.

use crate::linalg::Matrix;
use crate::scalar::Rat;
use num::traits::sign::Signed;
use num::{One, Zero};

/// Coefficients in ascending degree; normalized so the leading coefficient
/// is nonzero (the zero polynomial has an empty vector).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly(pub Vec<Rat>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn from_coeffs(mut c: Vec<Rat>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of zero polynomial");
        self.0.len() - 1
    }

    pub fn leading(&self) -> &Rat {
        self.0.last().expect("leading of zero polynomial")
    }

    pub fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly::zero();
        }
        let c = self
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a * Rat::from_integer(k.into()))
            .collect();
        Poly::from_coeffs(c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::from_coeffs(c)
    }

    /// Euclidean remainder.
    pub fn rem(&self, div: &Poly) -> Poly {
        assert!(!div.is_zero(), "remainder by zero polynomial");
        let mut r = self.0.clone();
        let dd = div.degree();
        let lead = div.leading().clone();
        while r.len() > dd && !r.is_empty() {
            while r.last().map_or(false, |x| x.is_zero()) {
                r.pop();
            }
            if r.len() <= dd {
                break;
            }
            let k = r.len() - 1 - dd;
            let f = r.last().unwrap() / &lead;
            for (i, b) in div.0.iter().enumerate() {
                let sub = &f * b;
                r[k + i] -= sub;
            }
        }
        Poly::from_coeffs(r)
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        // Monic normalization makes the gcd canonical.
        let lead = a.leading().clone();
        Poly::from_coeffs(a.0.into_iter().map(|c| c / &lead).collect())
    }

    /// p / gcd(p, p'): same roots, all simple.
    pub fn squarefree_part(&self) -> Poly {
        assert!(!self.is_zero());
        let g = self.gcd(&self.derivative());
        if g.is_zero() || g.degree() == 0 {
            return self.clone();
        }
        self.div_exact(&g)
    }

    fn div_exact(&self, div: &Poly) -> Poly {
        let mut r = self.0.clone();
        let dd = div.degree();
        let lead = div.leading().clone();
        let mut q = vec![Rat::zero(); self.0.len().saturating_sub(dd)];
        while r.len() > dd {
            while r.last().map_or(false, |x| x.is_zero()) {
                r.pop();
            }
            if r.len() <= dd {
                break;
            }
            let k = r.len() - 1 - dd;
            let f = r.last().unwrap() / &lead;
            q[k] = f.clone();
            for (i, b) in div.0.iter().enumerate() {
                let sub = &f * b;
                r[k + i] -= sub;
            }
        }
        assert!(Poly::from_coeffs(r).is_zero(), "division was not exact");
        Poly::from_coeffs(q)
    }

    /// Number of distinct real roots, by Sturm's theorem on the squarefree
    /// part, evaluated at -inf and +inf via leading-coefficient signs.
    pub fn count_real_roots(&self) -> usize {
        let p = self.squarefree_part();
        if p.degree() == 0 {
            return 0;
        }
        let mut chain = vec![p.clone(), p.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            chain.push(Poly::from_coeffs(r.0.into_iter().map(|c| -c).collect()));
        }
        chain.pop();
        let sign_at_inf = |q: &Poly, at_minus: bool| -> i32 {
            if q.is_zero() {
                return 0;
            }
            let s = if q.leading().is_positive() { 1 } else { -1 };
            if at_minus && q.degree() % 2 == 1 {
                -s
            } else {
                s
            }
        };
        let variations = |at_minus: bool| -> usize {
            let signs: Vec<i32> = chain
                .iter()
                .map(|q| sign_at_inf(q, at_minus))
                .filter(|&s| s != 0)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        variations(true) - variations(false)
    }

    /// True when every complex root is real.
    pub fn splits_over_reals(&self) -> bool {
        let p = self.squarefree_part();
        if p.degree() == 0 {
            return true;
        }
        self.count_real_roots() == p.degree()
    }
}

/// Characteristic polynomial det(xI - M) of a real rational matrix, by the
/// Faddeev-LeVerrier recurrence.
pub fn char_poly(m: &Matrix) -> Poly {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    for r in 0..n {
        for c in 0..n {
            assert!(m[(r, c)].is_real(), "char_poly expects a real matrix");
        }
    }
    let trace = |x: &Matrix| -> Rat {
        let mut t = Rat::zero();
        for j in 0..x.rows {
            t += x[(j, j)].re.clone();
        }
        t
    };
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut mk = m.clone();
    for k in 1..=n {
        let ck = -trace(&mk) / Rat::from_integer(k.into());
        coeffs[n - k] = ck.clone();
        if k < n {
            let mut shifted = mk.clone();
            for j in 0..n {
                let mut d = shifted[(j, j)].clone();
                d.re += ck.clone();
                shifted[(j, j)] = d;
            }
            mk = m.mul(&shifted);
        }
    }
    Poly::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Scalar};

    fn poly(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat(c, 1)).collect())
    }

    #[test]
    fn real_root_counting() {
        // x^2 - 1: two real roots.
        assert_eq!(poly(&[-1, 0, 1]).count_real_roots(), 2);
        // x^2 + 1: none.
        assert_eq!(poly(&[1, 0, 1]).count_real_roots(), 0);
        assert!(!poly(&[1, 0, 1]).splits_over_reals());
        // (x-1)^2 (x+2): two distinct real roots, still splits.
        let p = poly(&[1, -2, 1]).mul(&poly(&[2, 1]));
        assert_eq!(p.count_real_roots(), 2);
        assert!(p.splits_over_reals());
        // x^3 - x: three.
        assert_eq!(poly(&[0, -1, 0, 1]).count_real_roots(), 3);
        // x (x^2+1): one real, does not split.
        assert!(!poly(&[0, 1, 0, 1]).splits_over_reals());
    }

    #[test]
    fn char_poly_of_rotation() {
        // [[0,-1],[1,0]] has x^2 + 1.
        let m = Matrix::from_rows(
            vec![
                vec![Scalar::zero(), Scalar::from_int(-1)],
                vec![Scalar::one(), Scalar::zero()],
            ],
            2,
        );
        assert_eq!(char_poly(&m), poly(&[1, 0, 1]));
        assert!(!char_poly(&m).splits_over_reals());
    }
}
