//! Harmonic theory on the invariant complex: adjoints with respect to a
//! positive metric, the de Rham, Dolbeault, Bott-Chern, and Aeppli
//! Laplacians, and the finite-dimensional Hodge isomorphisms identifying
//! their kernels with the corresponding cohomologies.
//!
//! A metric is a positive Hermitian Gram matrix per degree. The default
//! declares the monomial basis orthonormal; declaring any other coframe
//! orthonormal or rescaling whole degrees covers the general invariant
//! case. Kernels of the Laplacians are metric-independent in dimension,
//! never in position, and the Hodge isomorphisms hold for every metric;
//! both facts are asserted where they are used.

use crate::cohom::ComplexCohomology;
use crate::exterior::{binomial, induced_on_degree, Form, GradedMap, Monomial};
use crate::lie::LieAlgebra;
use crate::linalg::{image_subspace, kernel_subspace, Matrix, Subspace};
use crate::scalar::{Rat, Scalar};
use num::Zero;

/// Positive Hermitian inner products on every exterior degree.
#[derive(Clone, Debug)]
pub struct Metric {
    pub dim: usize,
    gram: Vec<Matrix>,
    gram_inv: Vec<Matrix>,
}

impl Metric {
    /// Monomial basis orthonormal in every degree.
    pub fn standard(dim: usize) -> Self {
        let gram: Vec<Matrix> = (0..=dim)
            .map(|k| Matrix::identity(binomial(dim, k)))
            .collect();
        Metric {
            dim,
            gram_inv: gram.clone(),
            gram,
        }
    }

    /// Declares the rows of `coframe` (a new coframe written in the current
    /// coordinates) orthonormal, together with all induced monomials. The
    /// Gram matrices are U^H U for the induced coordinate changes, positive
    /// definite by construction.
    pub fn from_coframe(coframe: &Matrix) -> Result<Self, String> {
        let dim = coframe.rows;
        if coframe.cols != dim {
            return Err("metric coframe must be square".to_string());
        }
        let inv = coframe
            .inverse()
            .ok_or_else(|| "metric coframe rows are dependent".to_string())?;
        // Old symbols in the new ones: e^j = sum_i inv[j][i] f^i.
        let mut images = Vec::with_capacity(dim);
        for j in 0..dim {
            let mut f = Form::zero();
            for i in 0..dim {
                f.add_term(Monomial(vec![(i + 1) as u8]), inv[(j, i)].clone());
            }
            images.push(f);
        }
        let mut gram = Vec::with_capacity(dim + 1);
        let mut gram_inv = Vec::with_capacity(dim + 1);
        for k in 0..=dim {
            let u = induced_on_degree(&images, dim, k);
            let g = u.conj_transpose().mul(&u);
            let gi = g
                .inverse()
                .expect("Gram matrix of an invertible change is invertible");
            gram.push(g);
            gram_inv.push(gi);
        }
        Ok(Metric {
            dim,
            gram,
            gram_inv,
        })
    }

    /// Multiplies the inner product of one degree by a positive weight.
    pub fn rescale_degree(mut self, k: usize, w: &Rat) -> Self {
        assert!(*w > Rat::zero(), "metric weights must be positive");
        let s = Scalar::from_rat(w.clone());
        let s_inv = s.inv();
        self.gram[k] = self.gram[k].scale(&s);
        self.gram_inv[k] = self.gram_inv[k].scale(&s_inv);
        self
    }

    pub fn gram(&self, k: usize) -> &Matrix {
        &self.gram[k]
    }

    pub fn gram_inv(&self, k: usize) -> &Matrix {
        &self.gram_inv[k]
    }

    pub fn inner(&self, k: usize, a: &[Scalar], b: &[Scalar]) -> Scalar {
        let ga = self.gram[k].mul_vec(a);
        let mut acc = Scalar::zero();
        for (x, y) in ga.iter().zip(b.iter()) {
            acc += &x.mul(&y.conj());
        }
        acc
    }
}

/// Adjoint of a graded operator with respect to a metric:
/// T* = G_src^-1 T^H G_tgt blockwise.
pub fn adjoint_wrt(op: &GradedMap, m: &Metric) -> GradedMap {
    assert_eq!(op.n, m.dim);
    let n = op.n;
    let mut out = GradedMap::zero(n, -op.shift);
    for k in 0..=n {
        let t = k as i64 + op.shift;
        if t < 0 || t > n as i64 {
            continue;
        }
        let t = t as usize;
        let blk = m
            .gram_inv(k)
            .mul(&op.block(k).conj_transpose())
            .mul(m.gram(t));
        out.set_block(t, blk);
    }
    out
}

/// T T* + T* T, a degree-preserving nonnegative operator.
pub fn laplacian(op: &GradedMap, m: &Metric) -> GradedMap {
    op.anticommutator(&adjoint_wrt(op, m))
}

pub fn is_self_adjoint(op: &GradedMap, m: &Metric) -> bool {
    adjoint_wrt(op, m).sub(op).is_zero()
}

/// Kernel of a sum of nonnegative terms: computed directly and asserted to
/// be the meet of the factor kernels (sum of squares vanishes only term by
/// term).
pub fn psd_sum_kernel(sum: &GradedMap, factors: &[&GradedMap], k: usize) -> Subspace {
    let lhs = kernel_subspace(sum.block(k));
    let mut rhs = Subspace::full(binomial(sum.n, k));
    for f in factors {
        rhs = rhs.intersect(&kernel_subspace(f.block(k)));
    }
    assert_eq!(lhs, rhs, "kernel of a nonnegative sum escaped its factors");
    lhs
}

/// De Rham harmonic forms: the Laplacian, its kernels, and the Hodge
/// isomorphism with de Rham cohomology, asserted degree by degree.
pub struct DeRhamHarmonic {
    pub laplacian: GradedMap,
    pub kernels: Vec<Subspace>,
    pub betti: Vec<usize>,
}

pub fn de_rham_harmonic(g: &LieAlgebra, m: &Metric) -> DeRhamHarmonic {
    assert_eq!(g.dim, m.dim);
    let d = g.differential();
    let d_star = adjoint_wrt(&d, m);
    let lap = laplacian(&d, m);
    assert!(is_self_adjoint(&lap, m));
    let betti = g.betti();
    let mut kernels = Vec::with_capacity(g.dim + 1);
    for k in 0..=g.dim {
        let ker = psd_sum_kernel(&lap, &[&d, &d_star], k);
        assert_eq!(
            ker.dim(),
            betti[k],
            "harmonic space differs from cohomology in degree {k}"
        );
        // Hodge decomposition: harmonic + exact + coexact fill the degree.
        let exact = if k == 0 {
            Subspace::zero(1)
        } else {
            image_subspace(d.block(k - 1))
        };
        let coexact = if k == g.dim {
            Subspace::zero(binomial(g.dim, k))
        } else {
            image_subspace(d_star.block(k + 1))
        };
        assert_eq!(
            ker.dim() + exact.dim() + coexact.dim(),
            binomial(g.dim, k),
            "Hodge decomposition dimension failure in degree {k}"
        );
        assert_eq!(ker.intersect(&exact).dim(), 0);
        assert_eq!(ker.intersect(&coexact).dim(), 0);
        assert_eq!(exact.intersect(&coexact).dim(), 0);
        kernels.push(ker);
    }
    DeRhamHarmonic {
        laplacian: lap,
        kernels,
        betti,
    }
}

/// The unique harmonic representative of a closed form's class.
pub fn harmonic_representative(
    g: &LieAlgebra,
    m: &Metric,
    f: &Form,
) -> Result<Form, String> {
    let degs = f.degrees();
    if degs.len() > 1 {
        return Err("form is not homogeneous".to_string());
    }
    let k = degs.first().copied().unwrap_or(0);
    let d = g.differential();
    let v = f.to_vec(g.dim, k);
    if !d.apply(f).is_zero() {
        return Err("form is not closed".to_string());
    }
    let lap = laplacian(&d, m);
    let harm = kernel_subspace(lap.block(k));
    let exact = if k == 0 {
        Subspace::zero(1)
    } else {
        image_subspace(d.block(k - 1))
    };
    let mut cols = harm.basis_vectors();
    cols.extend(exact.basis_vectors());
    let mat = Matrix::from_rows(cols, binomial(g.dim, k)).transpose();
    let sol = mat
        .solve(&v)
        .expect("closed forms decompose as harmonic plus exact");
    let mut h = vec![Scalar::zero(); v.len()];
    for (i, hv) in harm.basis_vectors().iter().enumerate() {
        for (j, entry) in hv.iter().enumerate() {
            h[j] += &sol[i].mul(entry);
        }
    }
    Ok(Form::from_vec(&h, g.dim, k))
}

/// Kernels of the four complex Laplacians per bidegree, each asserted to
/// match the corresponding cohomology. The metric lives on the phi-symbol
/// coordinates of the complexified complex and must respect the bigrading.
pub struct ComplexHarmonic {
    pub dolbeault: Vec<Vec<usize>>,
    pub conj_dolbeault: Vec<Vec<usize>>,
    pub bott_chern: Vec<Vec<usize>>,
    pub aeppli: Vec<Vec<usize>>,
}

pub fn complex_harmonic(cc: &ComplexCohomology, m: &Metric) -> Result<ComplexHarmonic, String> {
    let cs = &cc.cs;
    let dim = cs.dim();
    if m.dim != dim {
        return Err("metric dimension does not match the complex".to_string());
    }
    // The metric must not pair monomials of different bigrade, or the
    // Laplacians stop preserving the bigrading.
    for k in 0..=dim {
        let monos = crate::exterior::monomials(dim, k);
        let g = m.gram(k);
        for (r, mr) in monos.iter().enumerate() {
            for (c, mc) in monos.iter().enumerate() {
                if crate::complex::bigrade(mr, cs.n) != crate::complex::bigrade(mc, cs.n)
                    && !g[(r, c)].is_zero()
                {
                    return Err("metric does not respect the bigrading".to_string());
                }
            }
        }
    }

    let del = cs.del().clone();
    let delbar = cs.delbar().clone();
    let del_star = adjoint_wrt(&del, m);
    let delbar_star = adjoint_wrt(&delbar, m);
    let ddb = del.compose(&delbar);
    let ddb_star = adjoint_wrt(&ddb, m);

    let box_delbar = delbar.anticommutator(&delbar_star);
    let box_del = del.anticommutator(&del_star);

    // Bott-Chern Laplacian: fourth order in the mixed terms, kernel
    // ker del meet ker delbar meet ker (del delbar)*.
    let s = delbar_star.compose(&del);
    let s_star = adjoint_wrt(&s, m);
    let bc_lap = ddb
        .compose(&ddb_star)
        .add(&ddb_star.compose(&ddb))
        .add(&s.compose(&s_star))
        .add(&s_star.compose(&s))
        .add(&delbar_star.compose(&delbar))
        .add(&del_star.compose(&del));

    // Aeppli Laplacian: kernel ker del delbar meet ker del* meet ker delbar*.
    let r = delbar.compose(&del_star);
    let r_star = adjoint_wrt(&r, m);
    let ae_lap = del
        .compose(&del_star)
        .add(&delbar.compose(&delbar_star))
        .add(&ddb_star.compose(&ddb))
        .add(&ddb.compose(&ddb_star))
        .add(&r_star.compose(&r))
        .add(&r.compose(&r_star));

    for (lap, name) in [
        (&box_delbar, "Dolbeault"),
        (&box_del, "conjugate Dolbeault"),
        (&bc_lap, "Bott-Chern"),
        (&ae_lap, "Aeppli"),
    ] {
        assert!(is_self_adjoint(lap, m), "{name} Laplacian not self-adjoint");
    }
    for k in 0..=dim {
        psd_sum_kernel(&box_delbar, &[&delbar, &delbar_star], k);
        psd_sum_kernel(&bc_lap, &[&ddb, &ddb_star, &s, &s_star, &delbar, &del], k);
        psd_sum_kernel(&ae_lap, &[&del_star, &delbar_star, &ddb, &ddb_star, &r, &r_star], k);
    }

    let n = cs.n;
    let slice_kernel = |lap: &GradedMap, p: usize, q: usize| -> usize {
        kernel_subspace(&cs.block_between(lap, (p, q), (0, 0))).dim()
    };
    let mut out = ComplexHarmonic {
        dolbeault: vec![vec![0; n + 1]; n + 1],
        conj_dolbeault: vec![vec![0; n + 1]; n + 1],
        bott_chern: vec![vec![0; n + 1]; n + 1],
        aeppli: vec![vec![0; n + 1]; n + 1],
    };
    for p in 0..=n {
        for q in 0..=n {
            out.dolbeault[p][q] = slice_kernel(&box_delbar, p, q);
            out.conj_dolbeault[p][q] = slice_kernel(&box_del, p, q);
            out.bott_chern[p][q] = slice_kernel(&bc_lap, p, q);
            out.aeppli[p][q] = slice_kernel(&ae_lap, p, q);
            assert_eq!(
                out.dolbeault[p][q],
                cc.dolbeault(p, q).dim(),
                "Dolbeault harmonic mismatch at ({p},{q})"
            );
            assert_eq!(
                out.conj_dolbeault[p][q],
                cc.conj_dolbeault(p, q).dim(),
                "conjugate Dolbeault harmonic mismatch at ({p},{q})"
            );
            assert_eq!(
                out.bott_chern[p][q],
                cc.bott_chern(p, q).dim(),
                "Bott-Chern harmonic mismatch at ({p},{q})"
            );
            assert_eq!(
                out.aeppli[p][q],
                cc.aeppli(p, q).dim(),
                "Aeppli harmonic mismatch at ({p},{q})"
            );
        }
    }
    Ok(out)
}

/// Outcome of the Lefschetz-type property on 2-forms: wedging every
/// harmonic 2-form with omega^(n-2) must land on harmonic (2n-2)-forms.
pub struct LefschetzTypeReport {
    pub holds: bool,
    /// Harmonic 2-forms whose image fails to be harmonic, with the image.
    pub failures: Vec<(Form, Form)>,
}

/// Checks whether multiplication by omega^(n-2) carries harmonic 2-forms to
/// harmonic (2n-2)-forms for the given metric. Requires a compatible
/// almost-Kaehler pair (omega closed, nondegenerate, taming and
/// J-invariant).
pub fn lefschetz_type_check(
    cs: &crate::complex::ComplexStructure,
    omega: &Form,
    m: &Metric,
) -> Result<LefschetzTypeReport, String> {
    let g = &cs.real;
    let dim = g.dim;
    if dim < 4 {
        return Err("the Lefschetz-type check needs dimension at least 4".to_string());
    }
    let n = dim / 2;
    if !g.differential().apply(omega).is_zero() {
        return Err("omega is not closed".to_string());
    }
    if !crate::lizhang::is_compatible(cs, omega)? {
        return Err("omega is not compatible with J".to_string());
    }
    let power = omega.wedge_pow(n - 2);
    let lap = laplacian(&g.differential(), m);
    let harmonic2 = kernel_subspace(lap.block(2));
    let harmonic_top = kernel_subspace(lap.block(2 * n - 2));
    let mut failures = Vec::new();
    for v in harmonic2.basis_vectors() {
        let f = Form::from_vec(&v, dim, 2);
        let image = f.wedge(&power);
        if !harmonic_top.contains_vec(&image.to_vec(dim, 2 * n - 2)) {
            failures.push((f, image));
        }
    }
    Ok(LefschetzTypeReport {
        holds: failures.is_empty(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{ComplexStructure, CoframePresentation};
    use crate::lie::parse_salamon;
    use crate::scalar::rat;
    use std::collections::BTreeMap;

    fn no_params() -> BTreeMap<String, Scalar> {
        BTreeMap::new()
    }

    fn iwasawa_real() -> LieAlgebra {
        parse_salamon("(0,0,0,0,-13+24,-14-23)", &no_params()).unwrap()
    }

    #[test]
    fn de_rham_kernels_match_betti() {
        let g = iwasawa_real();
        let m = Metric::standard(6);
        let h = de_rham_harmonic(&g, &m);
        assert_eq!(h.betti, vec![1, 4, 8, 10, 8, 4, 1]);
        assert_eq!(
            h.kernels.iter().map(|k| k.dim()).collect::<Vec<_>>(),
            h.betti
        );
    }

    #[test]
    fn frame_metric_changes_kernels_not_dimensions() {
        let g = iwasawa_real();
        let m0 = Metric::standard(6);
        // A shear: declare e1+2e2, e2, ..., e6 orthonormal.
        let mut rows = Matrix::identity(6);
        rows[(0, 1)] = Scalar::from_int(2);
        let m1 = Metric::from_coframe(&rows).unwrap();
        let h0 = de_rham_harmonic(&g, &m0);
        let h1 = de_rham_harmonic(&g, &m1);
        for k in 0..=6 {
            assert_eq!(h0.kernels[k].dim(), h1.kernels[k].dim());
        }
        // The harmonic spaces themselves move. On the Heisenberg algebra
        // every 2-form is closed and d Lambda^1 = span e12, so the degree-2
        // harmonic space is the orthocomplement of e12: shearing e1 by e3
        // makes e23 non-orthogonal to e12 and moves it.
        let heis = parse_salamon("(0,0,12)", &no_params()).unwrap();
        let mut shear = Matrix::identity(3);
        shear[(0, 2)] = Scalar::from_int(2);
        let hm0 = de_rham_harmonic(&heis, &Metric::standard(3));
        let hm1 = de_rham_harmonic(&heis, &Metric::from_coframe(&shear).unwrap());
        assert_eq!(hm0.kernels[2].dim(), hm1.kernels[2].dim());
        assert_ne!(hm0.kernels[2], hm1.kernels[2]);
        // Degree rescaling changes no kernel at all.
        let m2 = Metric::standard(6)
            .rescale_degree(1, &rat(3, 1))
            .rescale_degree(2, &rat(1, 5));
        let h2 = de_rham_harmonic(&g, &m2);
        for k in 0..=6 {
            assert_eq!(h0.kernels[k], h2.kernels[k]);
        }
    }

    #[test]
    fn harmonic_representatives_are_canonical() {
        let g = iwasawa_real();
        let m = Metric::standard(6);
        let e1 = Form::basis(&[1]);
        let h = harmonic_representative(&g, &m, &e1).unwrap();
        assert_eq!(h, e1);
        // Cohomologous forms share one representative: [e12] against its
        // shift by d e5.
        let d = g.differential();
        let a = Form::basis(&[1, 2]);
        let b = a.add(&d.apply(&Form::basis(&[5])));
        let ha = harmonic_representative(&g, &m, &a).unwrap();
        let hb = harmonic_representative(&g, &m, &b).unwrap();
        assert_eq!(ha, hb);
    }

    #[test]
    fn complex_laplacian_kernels_match_tables() {
        let src = "complex 3\ndf1=0\ndf2=0\ndf3=-1*f1f2\n";
        let pres = CoframePresentation::parse(src, &no_params()).unwrap();
        let cc = crate::cohom::ComplexCohomology::new(
            ComplexStructure::from_coframe(&pres).unwrap(),
        )
        .unwrap();
        let m = Metric::standard(6);
        let h = complex_harmonic(&cc, &m).unwrap();
        assert_eq!(h.dolbeault[1][0], 3);
        assert_eq!(h.dolbeault[0][1], 2);
        assert_eq!(h.bott_chern[1][0], 2);
        assert_eq!(h.aeppli[1][0], 3);

        // A bigrade-respecting frame metric: scale phi1 and phibar1.
        let mut rows = Matrix::identity(6);
        rows[(0, 0)] = Scalar::from_int(2);
        rows[(3, 3)] = Scalar::from_int(2);
        let m2 = Metric::from_coframe(&rows).unwrap();
        let h2 = complex_harmonic(&cc, &m2).unwrap();
        assert_eq!(h.dolbeault, h2.dolbeault);
        assert_eq!(h.bott_chern, h2.bott_chern);

        // A metric mixing bigrades is refused.
        let mut bad = Matrix::identity(6);
        bad[(0, 3)] = Scalar::one();
        let m3 = Metric::from_coframe(&bad).unwrap();
        assert!(complex_harmonic(&cc, &m3).is_err());
    }

    #[test]
    fn lefschetz_type_on_the_torus() {
        // Flat torus: everything is harmonic, the check holds trivially.
        let src = "complex 2\ndf1=0\ndf2=0\n";
        let pres = CoframePresentation::parse(src, &no_params()).unwrap();
        let cs = ComplexStructure::from_coframe(&pres).unwrap();
        let omega = Form::basis(&[1, 2]).add(&Form::basis(&[3, 4]));
        let m = Metric::standard(4);
        let rep = lefschetz_type_check(&cs, &omega, &m).unwrap();
        assert!(rep.holds);
        // A non-closed or incompatible omega is refused.
        let bad = Form::basis(&[1, 2]);
        assert!(lefschetz_type_check(&cs, &bad, &m).is_err());
    }
}
