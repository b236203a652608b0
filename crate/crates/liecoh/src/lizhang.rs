//! Subgroups of de Rham cohomology cut out by bidegree type for an
//! (almost-)complex structure: H^S, the degree-2 plus and minus halves,
//! pure and full flags at every stage, and the taming and compatibility
//! predicates pairing a real 2-form with J.
//!
//! None of this needs integrability: only the bigrading of the complexified
//! exterior algebra enters. Real-coefficient subgroups live in the real
//! model over the rationals, complex-coefficient ones in the complexified
//! model over the Gaussian rationals.

use crate::cohom::{de_rham, Subquotient};
use crate::complex::ComplexStructure;
use crate::exterior::{binomial, Form};
use crate::linalg::{real_points, Matrix, Subspace};
use crate::scalar::Scalar;
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Field {
    Real,
    Complex,
}

fn validate_s(s: &[(usize, usize)], field: Field) -> Result<usize, String> {
    let (p0, q0) = *s.first().ok_or("empty bidegree set")?;
    let k = p0 + q0;
    for &(p, q) in s {
        if p + q != k {
            return Err(format!("bidegree ({p},{q}) does not have total degree {k}"));
        }
    }
    if field == Field::Real {
        for &(p, q) in s {
            if !s.contains(&(q, p)) {
                return Err(format!(
                    "real coefficients need a conjugation-closed set; ({q},{p}) is missing"
                ));
            }
        }
    }
    Ok(k)
}

/// Classes of degree k representable by forms of type in S.
pub struct TypeSubgroup {
    pub s: Vec<(usize, usize)>,
    pub degree: usize,
    pub field: Field,
    /// Coordinates in the canonical basis of the de Rham realization below.
    pub space: Subspace,
    /// The realization the coordinates refer to.
    pub cohomology: Subquotient,
}

impl TypeSubgroup {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// The classes as actual cocycles: canonical representatives in the
    /// model's coordinates (real or complexified, per the field).
    pub fn representatives(&self) -> Vec<Vec<Scalar>> {
        self.space
            .basis_vectors()
            .into_iter()
            .map(|c| self.cohomology.reps.vector_from_coordinates(&c))
            .collect()
    }
}

fn type_subgroup_in(
    cs: &ComplexStructure,
    h: &Subquotient,
    s: &[(usize, usize)],
    field: Field,
    k: usize,
) -> TypeSubgroup {
    let dim_k = binomial(cs.dim(), k);
    let mut span = Subspace::zero(dim_k);
    let mut seen: Vec<(usize, usize)> = Vec::new();
    for &(p, q) in s {
        if seen.contains(&(p, q)) {
            continue;
        }
        seen.push((p, q));
        if p > cs.n || q > cs.n {
            continue;
        }
        let slice = match field {
            Field::Real => cs.slice_in_e_coords(p, q),
            Field::Complex => {
                cs.embed_from_slice(&Subspace::full(cs.slice_dim(p, q)), p, q)
            }
        };
        span = span.sum(&slice);
    }
    if field == Field::Real {
        span = real_points(&span);
    }
    let zs = h.num.intersect(&span);
    let mut coords = Vec::new();
    for z in zs.basis_vectors() {
        let rep = h.den.reduce(&z);
        coords.push(
            h.reps
                .coordinates_in(&rep)
                .expect("canonical representative lies in the realization"),
        );
    }
    let space = Subspace::from_vectors(&coords, h.dim());
    TypeSubgroup {
        s: s.to_vec(),
        degree: k,
        field,
        space,
        cohomology: h.clone(),
    }
}

pub fn type_subgroup(
    cs: &ComplexStructure,
    s: &[(usize, usize)],
    field: Field,
) -> Result<TypeSubgroup, String> {
    let k = validate_s(s, field)?;
    let h = match field {
        Field::Real => de_rham(&cs.real, k),
        Field::Complex => de_rham(&cs.cplx, k),
    };
    Ok(type_subgroup_in(cs, &h, s, field, k))
}

/// Dimensions of the degree-2 halves: real classes of pure type (1,1), and
/// of type (2,0)+(0,2).
pub fn plus_minus(cs: &ComplexStructure) -> ((usize, Subspace), (usize, Subspace)) {
    let plus = type_subgroup(cs, &[(1, 1)], Field::Real).expect("valid by construction");
    let minus =
        type_subgroup(cs, &[(2, 0), (0, 2)], Field::Real).expect("valid by construction");
    ((plus.dim(), plus.space), (minus.dim(), minus.space))
}

/// Conjugation-closed blocks partitioning the antidiagonal p+q = k.
pub fn stage_blocks(n: usize, k: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for p in 0..=k.min(n) {
        let q = k - p;
        if q > n || p > q {
            continue;
        }
        if p == q {
            out.push(vec![(p, p)]);
        } else {
            out.push(vec![(p, q), (q, p)]);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct StageReport {
    pub k: usize,
    /// Block S-sets with their subgroup dimensions, in stage order.
    pub blocks: Vec<(Vec<(usize, usize)>, usize)>,
    pub betti: usize,
    pub pure: bool,
    pub full: bool,
    /// A nonzero class in the span of earlier blocks and one later block
    /// when the sum is not direct. Real cocycle in the model coordinates.
    pub non_pure_witness: Option<Form>,
    /// A class outside the total sum when it does not fill H^k.
    pub non_full_witness: Option<Form>,
}

#[derive(Clone, Debug)]
pub struct PureFullReport {
    pub stages: Vec<StageReport>,
}

/// Pure and full flags of the real type decomposition at each listed stage,
/// with verifying witnesses when a flag fails.
pub fn pure_full_report(cs: &ComplexStructure, stages: &[usize]) -> PureFullReport {
    let mut out = Vec::new();
    for &k in stages {
        assert!(k <= cs.dim(), "stage exceeds the top degree");
        let h = de_rham(&cs.real, k);
        let blocks = stage_blocks(cs.n, k);
        let subs: Vec<TypeSubgroup> = blocks
            .iter()
            .map(|s| type_subgroup_in(cs, &h, s, Field::Real, k))
            .collect();
        let b_k = h.dim();
        let mut total = Subspace::zero(b_k);
        let mut dims_sum = 0usize;
        let mut non_pure_witness = None;
        for sub in &subs {
            if non_pure_witness.is_none() {
                let meet = total.intersect(&sub.space);
                if meet.dim() > 0 {
                    let coords = meet.basis_vectors().remove(0);
                    let v = h.reps.vector_from_coordinates(&coords);
                    non_pure_witness = Some(Form::from_vec(&v, cs.dim(), k));
                }
            }
            total = total.sum(&sub.space);
            dims_sum += sub.dim();
        }
        let pure = total.dim() == dims_sum;
        assert_eq!(pure, non_pure_witness.is_none());
        let full = total.dim() == b_k;
        let non_full_witness = if full {
            None
        } else {
            (0..b_k).find_map(|i| {
                let mut unit = vec![Scalar::zero(); b_k];
                unit[i] = Scalar::one();
                if total.contains_vec(&unit) {
                    None
                } else {
                    let v = h.reps.vector_from_coordinates(&unit);
                    Some(Form::from_vec(&v, cs.dim(), k))
                }
            })
        };
        assert_eq!(full, non_full_witness.is_none());
        out.push(StageReport {
            k,
            blocks: blocks
                .iter()
                .cloned()
                .zip(subs.iter().map(|s| s.dim()))
                .collect(),
            betti: b_k,
            pure,
            full,
            non_pure_witness,
            non_full_witness,
        });
    }
    PureFullReport { stages: out }
}

/// The antisymmetric matrix of a real 2-form: W[i][j] = omega(e_i, e_j).
pub fn omega_matrix(omega: &Form, dim: usize) -> Result<Matrix, String> {
    if !omega.is_zero() && !omega.is_homogeneous(2) {
        return Err("omega must be a 2-form".to_string());
    }
    let mut w = Matrix::zero(dim, dim);
    for (m, c) in omega.terms() {
        if !c.is_real() {
            return Err("omega must have real coefficients".to_string());
        }
        let (i, j) = (m.0[0] as usize - 1, m.0[1] as usize - 1);
        if i >= dim || j >= dim {
            return Err("omega names a coframe index out of range".to_string());
        }
        w[(i, j)] = c.clone();
        w[(j, i)] = -c;
    }
    Ok(w)
}

/// The symmetric bilinear form x,y -> (omega(x,Jy) + omega(y,Jx))/2.
pub fn taming_form(cs: &ComplexStructure, omega: &Form) -> Result<Matrix, String> {
    let w = omega_matrix(omega, cs.dim())?;
    let b = w.mul(&cs.j_vectors());
    Ok(b.add(&b.transpose()).scale(&Scalar::from_ratio(1, 2)))
}

/// omega tames J: omega(v, Jv) > 0 away from zero, decided by leading
/// principal minors of the symmetrized form.
pub fn is_taming(cs: &ComplexStructure, omega: &Form) -> Result<bool, String> {
    use num::Zero;
    let sym = taming_form(cs, omega)?;
    Ok(sym.leading_principal_minors().iter().all(|m| {
        assert!(m.is_real());
        m.re > crate::scalar::Rat::zero()
    }))
}

/// omega is compatible with J: taming plus J-invariance.
pub fn is_compatible(cs: &ComplexStructure, omega: &Form) -> Result<bool, String> {
    let w = omega_matrix(omega, cs.dim())?;
    let jv = cs.j_vectors();
    let invariant = jv.transpose().mul(&w).mul(&jv) == w;
    Ok(invariant && is_taming(cs, omega)?)
}

/// Compatible and closed.
pub fn is_almost_kahler(cs: &ComplexStructure, omega: &Form) -> Result<bool, String> {
    let closed = cs.real.differential().apply(omega).is_zero();
    Ok(closed && is_compatible(cs, omega)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::CoframePresentation;
    use std::collections::BTreeMap;

    fn no_params() -> BTreeMap<String, Scalar> {
        BTreeMap::new()
    }

    fn torus2() -> ComplexStructure {
        let src = "complex 2\ndf1=0\ndf2=0\n";
        let pres = CoframePresentation::parse(src, &no_params()).unwrap();
        ComplexStructure::from_coframe(&pres).unwrap()
    }

    fn iwasawa() -> ComplexStructure {
        let src = "complex 3\ndf1=0\ndf2=0\ndf3=-1*f1f2\n";
        let pres = CoframePresentation::parse(src, &no_params()).unwrap();
        ComplexStructure::from_coframe(&pres).unwrap()
    }

    #[test]
    fn torus_decomposes_at_every_stage() {
        let cs = torus2();
        let report = pure_full_report(&cs, &[0, 1, 2, 3, 4]);
        for stage in &report.stages {
            assert!(stage.pure && stage.full, "stage {} failed", stage.k);
        }
        let ((hp, _), (hm, _)) = plus_minus(&cs);
        assert_eq!((hp, hm), (4, 2));
        // Complex-coefficient consistency: dim_C of the (1,1) subgroup
        // equals dim_R of the real one.
        let cplx = type_subgroup(&cs, &[(1, 1)], Field::Complex).unwrap();
        assert_eq!(cplx.dim(), hp);
    }

    #[test]
    fn iwasawa_degree_two_halves() {
        let cs = iwasawa();
        let plus = type_subgroup(&cs, &[(1, 1)], Field::Real).unwrap();
        let minus = type_subgroup(&cs, &[(2, 0), (0, 2)], Field::Real).unwrap();
        assert_eq!(plus.dim(), 4);
        assert_eq!(minus.dim(), 4);
        assert_eq!(plus.space.intersect(&minus.space).dim(), 0);
        assert_eq!(plus.space.sum(&minus.space).dim(), 8);
        let report = pure_full_report(&cs, &[2]);
        assert!(report.stages[0].pure && report.stages[0].full);
        // Complex-coefficient consistency at (1,1).
        let cplx = type_subgroup(&cs, &[(1, 1)], Field::Complex).unwrap();
        assert_eq!(cplx.dim(), plus.dim());
    }

    #[test]
    fn taming_and_compatibility() {
        let cs = torus2();
        let omega = Form::basis(&[1, 2]).add(&Form::basis(&[3, 4]));
        assert!(is_taming(&cs, &omega).unwrap());
        assert!(is_compatible(&cs, &omega).unwrap());
        assert!(is_almost_kahler(&cs, &omega).unwrap());
        let neg = omega.scale(&Scalar::from_int(-1));
        assert!(!is_taming(&cs, &neg).unwrap());
        let degenerate = Form::basis(&[1, 2]);
        assert!(!is_taming(&cs, &degenerate).unwrap());
        // A non-J-invariant taming form: add a shear that keeps positivity.
        let sheared = omega.add(&Form::basis(&[1, 3]).scale(&Scalar::from_ratio(1, 2)));
        assert!(is_taming(&cs, &sheared).unwrap());
        assert!(!is_compatible(&cs, &sheared).unwrap());
    }

    #[test]
    fn malformed_type_sets_are_rejected() {
        let cs = torus2();
        assert!(type_subgroup(&cs, &[(1, 1), (2, 0)], Field::Real).is_err());
        assert!(type_subgroup(&cs, &[(2, 0)], Field::Real).is_err());
        assert!(type_subgroup(&cs, &[(2, 0)], Field::Complex).is_ok());
        assert!(type_subgroup(&cs, &[], Field::Real).is_err());
    }
}
