//! Linear D-complex structures: an involution K of the algebra whose +1 and
//! -1 eigenspaces have equal dimension n. The dual coframe splits the same
//! way, the exterior algebra bigrades into wedge types (p,q), and K acts on
//! a type by the parity of q. Each de Rham group then carries an invariant
//! and an anti-invariant subgroup; purity means they meet trivially,
//! fullness that they span.
//!
//! Integrability asks each eigenspace to be a subalgebra, the Abelian
//! condition asks both to be abelian. Neither is needed for the subgroup
//! machinery itself.

use crate::cohom::{de_rham, Subquotient};
use crate::exterior::{binomial, Form, GradedMap};
use crate::lie::LieAlgebra;
use crate::linalg::{kernel_subspace, Matrix, Subspace};
use crate::scalar::Scalar;
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone)]
pub struct DComplexStructure {
    pub g: LieAlgebra,
    /// Half the algebra dimension; both eigenspaces have this dimension.
    pub n: usize,
    /// +1 eigenspace of K on vectors.
    pub plus: Subspace,
    /// -1 eigenspace of K on vectors.
    pub minus: Subspace,
    /// K on vectors, in the frame coordinates.
    pub k_vectors: Matrix,
    /// The induced involution on forms, degree by degree.
    pub k_forms: GradedMap,
    /// Both eigenspaces are subalgebras.
    pub integrable: bool,
    /// Both eigenspaces are abelian subalgebras.
    pub abelian: bool,
    plus_coframe: Vec<Form>,
    minus_coframe: Vec<Form>,
    /// slices[p][q] is the coordinate span of wedge type (p,q) inside the
    /// degree p+q slice.
    slices: Vec<Vec<Subspace>>,
}

impl DComplexStructure {
    /// Builds the involution fixing the span of `plus` and negating the span
    /// of `minus`. The two spans must be complementary halves.
    pub fn from_splitting(
        g: &LieAlgebra,
        plus: &[Vec<Scalar>],
        minus: &[Vec<Scalar>],
    ) -> Result<Self, String> {
        let dim = g.dim;
        if dim == 0 || dim % 2 != 0 {
            return Err(format!(
                "a D-complex structure needs a nonzero even-dimensional algebra, got dimension {dim}"
            ));
        }
        let n = dim / 2;
        if plus.len() != n || minus.len() != n {
            return Err(format!(
                "dimension mismatch: eigenspace bases must each have {n} vectors, got {} and {}",
                plus.len(),
                minus.len()
            ));
        }
        for v in plus.iter().chain(minus.iter()) {
            if v.len() != dim {
                return Err(format!(
                    "dimension mismatch: eigenvector has {} entries for a {dim}-dimensional algebra",
                    v.len()
                ));
            }
        }
        let plus_space = Subspace::from_vectors(plus, dim);
        let minus_space = Subspace::from_vectors(minus, dim);
        if plus_space.dim() != n || minus_space.dim() != n {
            return Err("dimension mismatch: an eigenspace basis is linearly dependent".into());
        }
        if plus_space.intersect(&minus_space).dim() != 0 {
            return Err("eigenspaces are not complementary".into());
        }

        let mut basis = plus_space.basis_vectors();
        basis.extend(minus_space.basis_vectors());
        let p = Matrix::from_rows(basis, dim).transpose();
        let mut d_signs = Matrix::identity(dim);
        for i in n..dim {
            d_signs[(i, i)] = -Scalar::one();
        }
        let p_inv = p.inverse().expect("complementary halves give an invertible frame");
        let k_vectors = p.mul(&d_signs).mul(&p_inv);
        assert_eq!(k_vectors.mul(&k_vectors), Matrix::identity(dim), "K is an involution");

        // Covectors pull back through K, so rows of the vector matrix are
        // the coframe images; the annihilator of each eigenspace is the
        // eigencoframe of the opposite sign.
        let images: Vec<Form> =
            (0..dim).map(|i| Form::from_vec(&k_vectors.row(i), dim, 1)).collect();
        let k_forms = GradedMap::from_action(dim, 0, |_, m| {
            Form::monomial(m.clone(), Scalar::one()).substitute(&images)
        });
        let row_forms = |m: &Matrix| -> Vec<Form> {
            (0..n).map(|r| Form::from_vec(&m.row(r), dim, 1)).collect()
        };
        let plus_coframe = row_forms(&minus_space.annihilator());
        let minus_coframe = row_forms(&plus_space.annihilator());

        let mut slices: Vec<Vec<Subspace>> = Vec::with_capacity(n + 1);
        for p in 0..=n {
            let mut row = Vec::with_capacity(n + 1);
            for q in 0..=n {
                let l = p + q;
                let mut vecs = Vec::new();
                for is in (0..n).combinations(p) {
                    let u = is
                        .iter()
                        .fold(Form::unit(Scalar::one()), |acc, &i| acc.wedge(&plus_coframe[i]));
                    for js in (0..n).combinations(q) {
                        let v = js.iter().fold(u.clone(), |acc, &j| {
                            acc.wedge(&minus_coframe[j])
                        });
                        vecs.push(v.to_vec(dim, l));
                    }
                }
                let sp = Subspace::from_vectors(&vecs, binomial(dim, l));
                assert_eq!(
                    sp.dim(),
                    binomial(n, p) * binomial(n, q),
                    "bigraded slice has the wrong dimension"
                );
                let sign = if q % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                for b in sp.basis_vectors() {
                    let w = Form::from_vec(&b, dim, l);
                    assert!(
                        k_forms.apply(&w).sub(&w.scale(&sign)).is_zero(),
                        "K must act on type ({p},{q}) by the parity of q"
                    );
                }
                row.push(sp);
            }
            slices.push(row);
        }

        let bp = g.bracket_span(&plus_space, &plus_space);
        let bm = g.bracket_span(&minus_space, &minus_space);
        let integrable = plus_space.contains(&bp) && minus_space.contains(&bm);
        let abelian = bp.is_zero() && bm.is_zero();

        let out = DComplexStructure {
            g: g.clone(),
            n,
            plus: plus_space,
            minus: minus_space,
            k_vectors,
            k_forms,
            integrable,
            abelian,
            plus_coframe,
            minus_coframe,
            slices,
        };
        for l in 0..=dim {
            let even = out.invariant_forms(l);
            let odd = out.anti_invariant_forms(l);
            assert_eq!(even.intersect(&odd).dim(), 0, "eigensplit is direct");
            assert_eq!(even.dim() + odd.dim(), binomial(dim, l), "eigensplit is exhaustive");
        }
        Ok(out)
    }

    /// Builds the axis-aligned involution described by one sign per frame
    /// vector, e.g. "(-++--+)". Parentheses, commas, and spaces are ignored.
    pub fn from_signs(g: &LieAlgebra, signs: &str) -> Result<Self, String> {
        let mut plus_idx = Vec::new();
        let mut minus_idx = Vec::new();
        let mut pos = 0usize;
        for ch in signs.chars() {
            match ch {
                '+' => {
                    plus_idx.push(pos);
                    pos += 1;
                }
                '-' | '\u{2212}' => {
                    minus_idx.push(pos);
                    pos += 1;
                }
                '(' | ')' | ',' | ' ' => {}
                other => {
                    return Err(format!("unexpected character {other:?} in sign pattern"))
                }
            }
        }
        if pos != g.dim {
            return Err(format!(
                "sign pattern names {pos} axes for a {}-dimensional algebra",
                g.dim
            ));
        }
        let unit = |i: usize| {
            let mut v = vec![Scalar::zero(); g.dim];
            v[i] = Scalar::one();
            v
        };
        let plus: Vec<Vec<Scalar>> = plus_idx.into_iter().map(unit).collect();
        let minus: Vec<Vec<Scalar>> = minus_idx.into_iter().map(unit).collect();
        Self::from_splitting(g, &plus, &minus)
    }

    pub fn dim(&self) -> usize {
        self.g.dim
    }

    /// Coframe of the +1 eigenspace: the annihilator of the -1 eigenspace.
    pub fn plus_coframe(&self) -> &[Form] {
        &self.plus_coframe
    }

    pub fn minus_coframe(&self) -> &[Form] {
        &self.minus_coframe
    }

    /// Coordinate span of wedge type (p,q) inside degree p+q.
    pub fn slice(&self, p: usize, q: usize) -> &Subspace {
        &self.slices[p][q]
    }

    /// The +1 eigenspace of K on degree-l forms: types with q even.
    pub fn invariant_forms(&self, l: usize) -> Subspace {
        self.eigen_forms(l, true)
    }

    /// The -1 eigenspace of K on degree-l forms: types with q odd.
    pub fn anti_invariant_forms(&self, l: usize) -> Subspace {
        self.eigen_forms(l, false)
    }

    fn eigen_forms(&self, l: usize, positive: bool) -> Subspace {
        let mut out = Subspace::zero(binomial(self.dim(), l));
        for p in 0..=self.n.min(l) {
            let q = l - p;
            if q > self.n {
                continue;
            }
            if (q % 2 == 0) == positive {
                out = out.sum(&self.slices[p][q]);
            }
        }
        out
    }

    /// Classes of degree l representable by K-invariant (positive) or
    /// K-anti-invariant cocycles.
    pub fn type_subgroup(&self, l: usize, positive: bool) -> KTypeSubgroup {
        let h = de_rham(&self.g, l);
        self.type_subgroup_in(&h, l, positive)
    }

    fn type_subgroup_in(&self, h: &Subquotient, l: usize, positive: bool) -> KTypeSubgroup {
        let span = self.eigen_forms(l, positive);
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
        KTypeSubgroup {
            degree: l,
            positive,
            dim_ambient: self.dim(),
            space,
            cohomology: h.clone(),
        }
    }

    /// Subgroup dimensions, purity and fullness flags, and failure
    /// witnesses at each requested stage.
    pub fn report(&self, stages: &[usize]) -> DcxReport {
        let mut out = Vec::new();
        for &l in stages {
            assert!(l <= self.dim(), "stage exceeds the top degree");
            let h = de_rham(&self.g, l);
            let plus = self.type_subgroup_in(&h, l, true);
            let minus = self.type_subgroup_in(&h, l, false);
            let b_l = h.dim();
            let meet = plus.space.intersect(&minus.space);
            let non_pure_witness = if meet.dim() == 0 {
                None
            } else {
                let coords = meet.basis_vectors().remove(0);
                let v = h.reps.vector_from_coordinates(&coords);
                Some(Form::from_vec(&v, self.dim(), l))
            };
            let total = plus.space.sum(&minus.space);
            let non_full_witness = if total.dim() == b_l {
                None
            } else {
                (0..b_l).find_map(|i| {
                    let mut unit = vec![Scalar::zero(); b_l];
                    unit[i] = Scalar::one();
                    if total.contains_vec(&unit) {
                        None
                    } else {
                        let v = h.reps.vector_from_coordinates(&unit);
                        Some(Form::from_vec(&v, self.dim(), l))
                    }
                })
            };
            let pure = non_pure_witness.is_none();
            let full = non_full_witness.is_none();
            out.push(DcxStage {
                l,
                h_plus: plus.dim(),
                h_minus: minus.dim(),
                betti: b_l,
                pure,
                full,
                non_pure_witness,
                non_full_witness,
            });
        }
        DcxReport { stages: out }
    }

    /// True when omega is a closed 2-form with nonzero top power that K
    /// sends to its negative.
    pub fn is_dkahler(&self, omega: &Form) -> bool {
        if omega.is_zero() || !omega.is_homogeneous(2) {
            return false;
        }
        let closed = self.g.differential().apply(omega).is_zero();
        let nondegenerate = !omega.wedge_pow(self.n).is_zero();
        let anti_invariant = self.k_forms.apply(omega).add(omega).is_zero();
        closed && nondegenerate && anti_invariant
    }

    /// True when every product of two closed anti-invariant 2-forms is zero.
    /// For n at least 2 this rules out any anti-invariant symplectic form:
    /// a square-zero 2-form has zero n-th power.
    pub fn closed_anti_invariant_squares_vanish(&self) -> bool {
        let closed = kernel_subspace(self.g.differential().block(2));
        let s = closed.intersect(&self.anti_invariant_forms(2));
        let forms: Vec<Form> = s
            .basis_vectors()
            .into_iter()
            .map(|v| Form::from_vec(&v, self.dim(), 2))
            .collect();
        for (i, a) in forms.iter().enumerate() {
            for b in &forms[i..] {
                if !a.wedge(b).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Nilpotency step of an eigenspace when it is a nilpotent subalgebra:
    /// the number of terms before its lower central series reaches zero.
    fn subalgebra_step(&self, h: &Subspace) -> Option<usize> {
        if !h.contains(&self.g.bracket_span(h, h)) {
            return None;
        }
        let mut current = h.clone();
        let mut s = 0usize;
        loop {
            if current.is_zero() {
                return Some(s);
            }
            let next = self.g.bracket_span(&current, h);
            if next.dim() == current.dim() {
                return None;
            }
            current = next;
            s += 1;
        }
    }

    /// Steps of the two eigenspaces; None when one is not a subalgebra or
    /// not nilpotent.
    pub fn steps(&self) -> (Option<usize>, Option<usize>) {
        (self.subalgebra_step(&self.plus), self.subalgebra_step(&self.minus))
    }

    /// Both eigenspaces bracket to zero against each other, which makes the
    /// algebra a direct product when K is integrable.
    pub fn eigenspaces_commute(&self) -> bool {
        self.g.bracket_span(&self.plus, &self.minus).is_zero()
    }

    /// Evaluates each structural implication on this instance and asserts
    /// it whenever its hypothesis holds. The converses are not asserted.
    pub fn structural_lemmas(&self) -> StructuralLemmas {
        let dim = self.dim();
        let n = self.n;
        let g = &self.g;
        let d = g.differential();
        let unimodular = g.is_unimodular();
        let nilpotent = g.is_nilpotent();
        let steps = self.steps();

        let top_degree_differential_vanishes = LemmaCheck {
            hypothesis: unimodular,
            conclusion: d.block(dim - 1).is_zero(),
        };
        let extreme_types_closed = LemmaCheck {
            hypothesis: unimodular && self.abelian,
            conclusion: [(n, 0usize), (0usize, n)].iter().all(|&(p, q)| {
                self.slices[p][q].basis_vectors().iter().all(|v| {
                    d.apply(&Form::from_vec(v, dim, n)).is_zero()
                })
            }),
        };
        let in_bounds = |s: Option<usize>| matches!(s, Some(v) if (1..n).contains(&v));
        let step_bounds = LemmaCheck {
            hypothesis: nilpotent && self.integrable && n >= 2,
            conclusion: in_bounds(steps.0) && in_bounds(steps.1),
        };

        let all_stages: Vec<usize> = (0..=dim).collect();
        let report = self.report(&all_stages);
        let pure_full_everywhere = report.stages.iter().all(|s| s.pure && s.full);
        let stage_two = &report.stages[2];

        let abelian_pure_two = LemmaCheck {
            hypothesis: self.abelian,
            conclusion: stage_two.pure,
        };
        let commuting_pure_full = LemmaCheck {
            hypothesis: self.integrable && self.eigenspaces_commute(),
            conclusion: pure_full_everywhere,
        };
        let four_dim_pure_full_two = LemmaCheck {
            hypothesis: dim == 4 && nilpotent && self.integrable,
            conclusion: stage_two.pure && stage_two.full,
        };

        let out = StructuralLemmas {
            unimodular,
            nilpotent,
            integrable: self.integrable,
            abelian: self.abelian,
            steps,
            top_degree_differential_vanishes,
            extreme_types_closed,
            step_bounds,
            abelian_pure_two,
            commuting_pure_full,
            four_dim_pure_full_two,
        };
        for (name, check) in out.checks() {
            assert!(check.holds(), "structural implication fails: {name}");
        }
        out
    }
}

/// Classes of one degree representable by cocycles of one K-eigenvalue.
pub struct KTypeSubgroup {
    pub degree: usize,
    pub positive: bool,
    dim_ambient: usize,
    /// Coordinates in the canonical basis of the realization below.
    pub space: Subspace,
    pub cohomology: Subquotient,
}

impl KTypeSubgroup {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// The classes as cocycles: canonical representatives in frame
    /// coordinates.
    pub fn representatives(&self) -> Vec<Vec<Scalar>> {
        self.space
            .basis_vectors()
            .into_iter()
            .map(|c| self.cohomology.reps.vector_from_coordinates(&c))
            .collect()
    }

    /// Class coordinates of a cocycle in the realization, or None when the
    /// form is not closed.
    pub fn class_coordinates(&self, cocycle: &Form) -> Option<Vec<Scalar>> {
        let v = cocycle.to_vec(self.dim_ambient, self.degree);
        if !self.cohomology.num.contains_vec(&v) {
            return None;
        }
        let rep = self.cohomology.den.reduce(&v);
        Some(
            self.cohomology
                .reps
                .coordinates_in(&rep)
                .expect("reduced representative lies in the realization"),
        )
    }

    /// Whether the class of a closed form lies in this subgroup.
    pub fn contains_class(&self, cocycle: &Form) -> bool {
        self.class_coordinates(cocycle)
            .map_or(false, |c| self.space.contains_vec(&c))
    }
}

#[derive(Clone, Debug)]
pub struct DcxStage {
    pub l: usize,
    pub h_plus: usize,
    pub h_minus: usize,
    pub betti: usize,
    pub pure: bool,
    pub full: bool,
    /// A nonzero class in both subgroups when the stage is not pure.
    pub non_pure_witness: Option<Form>,
    /// A class outside the sum when the stage is not full.
    pub non_full_witness: Option<Form>,
}

#[derive(Clone, Debug)]
pub struct DcxReport {
    pub stages: Vec<DcxStage>,
}

impl DcxReport {
    pub fn stage(&self, l: usize) -> &DcxStage {
        self.stages
            .iter()
            .find(|s| s.l == l)
            .expect("stage was requested in the report")
    }
}

#[derive(Clone, Copy, Debug)]
pub struct LemmaCheck {
    pub hypothesis: bool,
    pub conclusion: bool,
}

impl LemmaCheck {
    pub fn holds(&self) -> bool {
        !self.hypothesis || self.conclusion
    }
}

/// Instance record of the structural implications: unimodularity closes the
/// top differential; unimodular Abelian structures close the extreme types;
/// integrable structures on nilpotent algebras have eigenspace steps
/// strictly inside 1..n; Abelian structures are pure at stage 2; commuting
/// integrable splittings decompose every stage; integrable structures on
/// 4-dimensional nilpotent algebras decompose stage 2.
#[derive(Clone, Debug)]
pub struct StructuralLemmas {
    pub unimodular: bool,
    pub nilpotent: bool,
    pub integrable: bool,
    pub abelian: bool,
    pub steps: (Option<usize>, Option<usize>),
    pub top_degree_differential_vanishes: LemmaCheck,
    pub extreme_types_closed: LemmaCheck,
    pub step_bounds: LemmaCheck,
    pub abelian_pure_two: LemmaCheck,
    pub commuting_pure_full: LemmaCheck,
    pub four_dim_pure_full_two: LemmaCheck,
}

impl StructuralLemmas {
    pub fn checks(&self) -> Vec<(&'static str, LemmaCheck)> {
        vec![
            ("unimodular algebras close the top differential", self.top_degree_differential_vanishes),
            ("unimodular Abelian structures close the extreme types", self.extreme_types_closed),
            ("integrable nilpotent eigenspace steps stay inside 1..n", self.step_bounds),
            ("Abelian structures are pure at stage 2", self.abelian_pure_two),
            ("commuting integrable splittings decompose every stage", self.commuting_pure_full),
            ("integrable 4-dimensional nilpotent structures decompose stage 2", self.four_dim_pure_full_two),
        ]
    }
}

/// Draws rational changes of basis with entries in -3..=3 and keeps the
/// splittings spanned by the first and second halves of the rows whenever
/// they are complementary and integrable, until `count` are found. The seed
/// fixes the draw.
pub fn sample_integrable_splittings(
    g: &LieAlgebra,
    seed: u64,
    count: usize,
) -> Vec<DComplexStructure> {
    assert!(g.dim % 2 == 0, "sampling needs an even-dimensional algebra");
    let n = g.dim / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        assert!(
            attempts <= 2_000_000,
            "sampler exhausted its attempt budget at {} of {count} splittings",
            out.len()
        );
        let rows: Vec<Vec<Scalar>> = (0..g.dim)
            .map(|_| (0..g.dim).map(|_| Scalar::from_int(rng.gen_range(-3..=3))).collect())
            .collect();
        let plus = Subspace::from_vectors(&rows[..n], g.dim);
        let minus = Subspace::from_vectors(&rows[n..], g.dim);
        if plus.dim() != n || minus.dim() != n || plus.intersect(&minus).dim() != 0 {
            continue;
        }
        if !plus.contains(&g.bracket_span(&plus, &plus))
            || !minus.contains(&g.bracket_span(&minus, &minus))
        {
            continue;
        }
        let dc = DComplexStructure::from_splitting(g, &rows[..n], &rows[n..])
            .expect("complementary halves build");
        assert!(dc.integrable);
        out.push(dc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::parse_salamon;
    use std::collections::BTreeMap;

    fn no_params() -> BTreeMap<String, Scalar> {
        BTreeMap::new()
    }

    fn algebra(src: &str) -> LieAlgebra {
        parse_salamon(src, &no_params()).unwrap()
    }

    fn basis_vec(dim: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); dim];
        v[i - 1] = Scalar::one();
        v
    }

    fn combination(dim: usize, terms: &[(i64, usize)]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); dim];
        for &(c, i) in terms {
            v[i - 1] = Scalar::from_int(c);
        }
        v
    }

    fn two_form(pairs: &[[u8; 2]]) -> Form {
        let mut out = Form::zero();
        for p in pairs {
            out = out.add(&Form::basis(p));
        }
        out
    }

    fn build_err(g: &LieAlgebra, plus: &[Vec<Scalar>], minus: &[Vec<Scalar>]) -> String {
        match DComplexStructure::from_splitting(g, plus, minus) {
            Ok(_) => panic!("construction unexpectedly succeeded"),
            Err(e) => e,
        }
    }

    #[test]
    fn construction_rejects_bad_splittings() {
        let g = LieAlgebra::abelian(4);
        let e = |i| basis_vec(4, i);

        let err = build_err(&g, &[e(1)], &[e(2), e(3), e(4)]);
        assert!(err.contains("dimension mismatch"), "{err}");
        let err = build_err(&g, &[e(1), e(1)], &[e(3), e(4)]);
        assert!(err.contains("dimension mismatch"), "{err}");
        let err = build_err(&g, &[e(1), e(2)], &[e(2), e(3)]);
        assert!(err.contains("not complementary"), "{err}");

        let odd = LieAlgebra::abelian(3);
        let err = match DComplexStructure::from_signs(&odd, "+-+") {
            Ok(_) => panic!("construction unexpectedly succeeded"),
            Err(e) => e,
        };
        assert!(err.contains("even-dimensional"), "{err}");

        assert!(DComplexStructure::from_signs(&g, "+-").is_err());
        assert!(DComplexStructure::from_signs(&g, "+-x-").is_err());
        assert!(DComplexStructure::from_signs(&g, "(+-+-)").is_ok());
    }

    #[test]
    fn sign_pattern_matches_explicit_splitting() {
        let g = algebra("(0,0,12,0)");
        let from_signs = DComplexStructure::from_signs(&g, "(-++-)").unwrap();
        let explicit = DComplexStructure::from_splitting(
            &g,
            &[basis_vec(4, 2), basis_vec(4, 3)],
            &[basis_vec(4, 1), basis_vec(4, 4)],
        )
        .unwrap();
        assert_eq!(from_signs.k_vectors, explicit.k_vectors);
        let mut expected = Matrix::identity(4);
        expected[(0, 0)] = -Scalar::one();
        expected[(3, 3)] = -Scalar::one();
        assert_eq!(from_signs.k_vectors, expected);
    }

    // Structure equations (0,0,0,0,12,13) with the splitting that negates
    // e1, e4, e5: both eigenspaces are abelian, stage 2 is pure but one
    // class escapes the sum, and an anti-invariant symplectic form exists.
    #[test]
    fn abelian_splitting_separates_types() {
        let g = algebra("(0,0,0,0,12,13)");
        let k = DComplexStructure::from_signs(&g, "(-++--+)").unwrap();
        assert!(k.integrable && k.abelian);
        assert_eq!(k.steps(), (Some(1), Some(1)));

        let report = k.report(&[2]);
        let stage = report.stage(2);
        assert_eq!((stage.h_plus, stage.h_minus, stage.betti), (4, 4, 9));
        assert!(stage.pure && !stage.full);

        let plus = k.type_subgroup(2, true);
        let minus = k.type_subgroup(2, false);
        for pair in [[1u8, 4], [1, 5], [2, 3], [3, 6]] {
            assert!(plus.contains_class(&Form::basis(&pair)));
        }
        for pair in [[1u8, 6], [2, 4], [2, 5], [3, 4]] {
            assert!(minus.contains_class(&Form::basis(&pair)));
        }

        // The escaping class pairs the two mixed non-closed directions.
        let escape = two_form(&[[2, 6], [3, 5]]);
        assert!(g.differential().apply(&escape).is_zero());
        let coords = plus.class_coordinates(&escape).unwrap();
        assert!(!plus.cohomology.is_zero_class(&escape.to_vec(6, 2)));
        assert!(!plus.space.sum(&minus.space).contains_vec(&coords));

        let omega = two_form(&[[1, 6], [2, 5], [3, 4]]);
        assert!(k.is_dkahler(&omega));
        assert!(!k.closed_anti_invariant_squares_vanish());

        let lemmas = k.structural_lemmas();
        assert!(lemmas.extreme_types_closed.hypothesis);
        assert!(lemmas.extreme_types_closed.conclusion);
        assert!(lemmas.step_bounds.hypothesis && lemmas.step_bounds.conclusion);
    }

    // Structure equations (0,0,0,12,13+14,24) with alternating signs: both
    // eigenspaces are subalgebras with step 2, and one class is
    // representable on both sides, so stage 2 is not pure.
    #[test]
    fn non_abelian_splitting_mixes_types() {
        let g = algebra("(0,0,0,12,13+14,24)");
        let k = DComplexStructure::from_signs(&g, "(+-+-+-)").unwrap();
        assert!(k.integrable && !k.abelian);
        assert_eq!(k.steps(), (Some(2), Some(2)));

        let plus = k.type_subgroup(2, true);
        let minus = k.type_subgroup(2, false);
        let w = Form::basis(&[1, 3]);
        assert!(!plus.cohomology.is_zero_class(&w.to_vec(6, 2)));
        assert!(plus.contains_class(&w));
        assert!(minus.contains_class(&w));
        // The same class from the other side, up to an exact form.
        let w_other = Form::basis(&[1, 4]).scale(&Scalar::from_int(-1));
        assert_eq!(
            plus.class_coordinates(&w).unwrap(),
            plus.class_coordinates(&w_other).unwrap()
        );

        let report = k.report(&[2, 4]);
        assert!(!report.stage(2).pure);
        assert!(!report.stage(4).full);

        let omega = two_form(&[[1, 6], [2, 5], [3, 4]]);
        assert!(k.is_dkahler(&omega));
        k.structural_lemmas();
    }

    // Structure equations (0,0,12,0) with a tilted splitting that is not
    // closed under the bracket: neither pure nor full at stage 2.
    #[test]
    fn non_integrable_splitting_on_four_dims() {
        let g = algebra("(0,0,12,0)");
        let k = DComplexStructure::from_splitting(
            &g,
            &[basis_vec(4, 1), combination(4, &[(1, 4), (-1, 2)])],
            &[basis_vec(4, 2), basis_vec(4, 3)],
        )
        .unwrap();
        assert!(!k.integrable && !k.abelian);
        assert_eq!(k.steps(), (None, Some(1)));

        let report = k.report(&[2]);
        let stage = report.stage(2);
        assert_eq!((stage.h_plus, stage.h_minus, stage.betti), (1, 3, 4));
        assert!(!stage.pure && !stage.full);

        let plus = k.type_subgroup(2, true);
        let minus = k.type_subgroup(2, false);
        let w = Form::basis(&[1, 4]);
        assert!(!plus.cohomology.is_zero_class(&w.to_vec(4, 2)));
        assert!(plus.contains_class(&w));
        assert!(minus.contains_class(&w));
        let escape = Form::basis(&[2, 3]);
        let coords = plus.class_coordinates(&escape).unwrap();
        assert!(!plus.space.sum(&minus.space).contains_vec(&coords));

        let lemmas = k.structural_lemmas();
        assert!(!lemmas.four_dim_pure_full_two.hypothesis);
        assert!(!lemmas.step_bounds.hypothesis);
    }

    // Structure equations (0,0,0,13+34): not unimodular, so the top
    // differential does not vanish, and stage 2 is full but not pure.
    #[test]
    fn non_unimodular_algebra_is_full_not_pure() {
        let g = algebra("(0,0,0,13+34)");
        assert!(!g.is_unimodular());
        let k = DComplexStructure::from_signs(&g, "(++--)").unwrap();
        assert!(k.integrable && !k.abelian);
        assert_eq!(k.steps(), (Some(1), None));

        let report = k.report(&[2]);
        let stage = report.stage(2);
        assert_eq!((stage.h_plus, stage.h_minus, stage.betti), (2, 2, 3));
        assert!(!stage.pure && stage.full);

        let plus = k.type_subgroup(2, true);
        let minus = k.type_subgroup(2, false);
        let w = Form::basis(&[3, 4]);
        assert!(plus.contains_class(&w));
        assert!(minus.contains_class(&w));
        let w_other = Form::basis(&[1, 3]).scale(&Scalar::from_int(-1));
        assert_eq!(
            minus.class_coordinates(&w).unwrap(),
            minus.class_coordinates(&w_other).unwrap()
        );

        let lemmas = k.structural_lemmas();
        assert!(!lemmas.top_degree_differential_vanishes.hypothesis);
        assert!(!lemmas.top_degree_differential_vanishes.conclusion);
    }

    // Structure equations (0,0,23,-24): a solvable algebra carrying a line
    // of involutions. At the symmetric point the decomposition holds and an
    // anti-invariant symplectic form exists; tilting the -1 eigenspace
    // collapses the subgroups to a shared line and kills every candidate
    // symplectic square.
    #[test]
    fn solvable_family_degenerates_off_center() {
        let g = algebra("(0,0,23,-24)");
        assert!(g.is_unimodular() && g.is_completely_solvable() && !g.is_nilpotent());

        let k0 = DComplexStructure::from_signs(&g, "(-++-)").unwrap();
        assert!(k0.integrable && !k0.abelian);
        assert_eq!(k0.steps(), (None, Some(1)));
        let stage = k0.report(&[2]).stages.remove(0);
        assert_eq!((stage.h_plus, stage.h_minus, stage.betti), (0, 2, 2));
        assert!(stage.pure && stage.full);
        assert!(k0.is_dkahler(&two_form(&[[1, 2], [3, 4]])));
        assert!(!k0.closed_anti_invariant_squares_vanish());

        // Tilt by t = 1/2: the -1 eigenspace becomes span(e1, e4 + t e2).
        let mut tilted = basis_vec(4, 4);
        tilted[1] = Scalar::from_ratio(1, 2);
        let kt = DComplexStructure::from_splitting(
            &g,
            &[basis_vec(4, 2), basis_vec(4, 3)],
            &[basis_vec(4, 1), tilted],
        )
        .unwrap();
        assert!(kt.integrable && !kt.abelian);

        // K sends e4 to -e4 - 2t e2.
        let k_e4 = kt.k_vectors.mul_vec(&basis_vec(4, 4));
        assert_eq!(k_e4, combination(4, &[(-1, 2), (-1, 4)]));

        let stage = kt.report(&[2]).stages.remove(0);
        assert_eq!((stage.h_plus, stage.h_minus, stage.betti), (1, 1, 2));
        assert!(!stage.pure && !stage.full);
        let plus = kt.type_subgroup(2, true);
        let minus = kt.type_subgroup(2, false);
        let w = Form::basis(&[3, 4]);
        assert!(plus.contains_class(&w) && minus.contains_class(&w));

        assert!(kt.closed_anti_invariant_squares_vanish());
        assert!(!kt.is_dkahler(&two_form(&[[1, 2], [3, 4]])));
        kt.structural_lemmas();
    }

    // Structure equations (0,0,0,12,13,24) carry two lines of splittings.
    // The first loses purity strictly between its endpoints; the second
    // stays Abelian, hence pure, for every parameter, while its subgroup
    // dimensions jump.
    #[test]
    fn six_dim_families_sweep() {
        let g = algebra("(0,0,0,12,13,24)");
        let e = |i| basis_vec(6, i);
        let half = Scalar::from_ratio(1, 2);

        // First family: plus = span(e1, (1-t)e3 + t e4, e5).
        let family_a = |t: &Scalar| -> DComplexStructure {
            let s = Scalar::one() - t.clone();
            let mut mid_plus = vec![Scalar::zero(); 6];
            mid_plus[2] = s.clone();
            mid_plus[3] = t.clone();
            let mut mid_minus = vec![Scalar::zero(); 6];
            mid_minus[2] = t.clone();
            mid_minus[3] = -s;
            DComplexStructure::from_splitting(
                &g,
                &[e(1), mid_plus, e(5)],
                &[e(2), mid_minus, e(6)],
            )
            .unwrap()
        };

        let a0 = family_a(&Scalar::zero());
        assert_eq!(a0.k_vectors, DComplexStructure::from_signs(&g, "(+-+-+-)").unwrap().k_vectors);
        assert!(a0.integrable && !a0.abelian);
        let stage = a0.report(&[2]).stages.remove(0);
        assert_eq!((stage.h_plus, stage.h_minus), (3, 3));
        assert!(stage.pure && stage.full);
        let plus = a0.type_subgroup(2, true);
        for pair in [[1u8, 5], [2, 6], [3, 5]] {
            assert!(plus.contains_class(&Form::basis(&pair)));
        }

        let amid = family_a(&half);
        assert!(amid.integrable && !amid.abelian);
        let stage = amid.report(&[2]).stages.remove(0);
        assert_eq!((stage.h_plus, stage.h_minus), (4, 3));
        assert!(!stage.pure && !stage.full);
        let plus = amid.type_subgroup(2, true);
        let minus = amid.type_subgroup(2, false);
        for pair in [[1u8, 4], [1, 5], [2, 3], [2, 6]] {
            assert!(plus.contains_class(&Form::basis(&pair)));
        }
        assert!(minus.contains_class(&two_form(&[[2, 5], [3, 4]])));

        let a1 = family_a(&Scalar::one());
        assert!(a1.integrable && a1.abelian);
        let stage = a1.report(&[2]).stages.remove(0);
        assert_eq!((stage.h_plus, stage.h_minus), (4, 2));
        assert!(stage.pure && stage.full);
        a1.structural_lemmas();

        // Second family: plus = span(e1, e4, (1-t)e5 + t e6). Abelian for
        // every parameter.
        let family_b = |t: &Scalar| -> DComplexStructure {
            let s = Scalar::one() - t.clone();
            let mut tail_plus = vec![Scalar::zero(); 6];
            tail_plus[4] = s.clone();
            tail_plus[5] = t.clone();
            let mut tail_minus = vec![Scalar::zero(); 6];
            tail_minus[4] = t.clone();
            tail_minus[5] = -s;
            DComplexStructure::from_splitting(
                &g,
                &[e(1), e(4), tail_plus],
                &[e(2), e(3), tail_minus],
            )
            .unwrap()
        };

        let b0 = family_b(&Scalar::zero());
        assert!(b0.abelian);
        let stage = b0.report(&[2]).stages.remove(0);
        assert_eq!((stage.h_plus, stage.h_minus), (4, 2));
        assert!(stage.pure && stage.full);

        let bmid = family_b(&half);
        assert!(bmid.abelian);
        let stage = bmid.report(&[2]).stages.remove(0);
        assert_eq!((stage.h_plus, stage.h_minus), (2, 1));
        assert!(stage.pure && !stage.full);
        let plus = bmid.type_subgroup(2, true);
        let minus = bmid.type_subgroup(2, false);
        assert!(plus.contains_class(&Form::basis(&[1, 4])));
        assert!(plus.contains_class(&Form::basis(&[2, 3])));
        assert!(minus.contains_class(&two_form(&[[2, 5], [2, 6], [3, 4]])));
        // Three independent classes avoid the sum entirely.
        let total = plus.space.sum(&minus.space);
        let mut outside = Subspace::zero(stage.betti);
        for pair in [[1u8, 5], [3, 5], [2, 6]] {
            let c = plus.class_coordinates(&Form::basis(&pair)).unwrap();
            outside = outside.sum(&Subspace::from_vectors(&[c], stage.betti));
        }
        assert_eq!(outside.dim(), 3);
        assert_eq!(outside.intersect(&total).dim(), 0);
        bmid.structural_lemmas();

        let b1 = family_b(&Scalar::one());
        assert!(b1.abelian);
        let stage = b1.report(&[2]).stages.remove(0);
        assert_eq!((stage.h_plus, stage.h_minus), (3, 2));
        assert!(stage.pure && !stage.full);
        let plus = b1.type_subgroup(2, true);
        let minus = b1.type_subgroup(2, false);
        for pair in [[1u8, 4], [2, 3], [3, 5]] {
            assert!(plus.contains_class(&Form::basis(&pair)));
        }
        for pair in [[1u8, 5], [2, 6]] {
            assert!(minus.contains_class(&Form::basis(&pair)));
        }
        let escape = two_form(&[[2, 5], [3, 4]]);
        let coords = plus.class_coordinates(&escape).unwrap();
        assert!(!plus.space.sum(&minus.space).contains_vec(&coords));
    }

    // When the two eigenspaces bracket to zero the algebra is a product
    // and every stage decomposes.
    #[test]
    fn product_splittings_decompose_everywhere() {
        let g = algebra("(-23,0,0,-46,56,0)");
        assert!(g.is_unimodular() && g.is_completely_solvable());
        let k = DComplexStructure::from_signs(&g, "(+++---)").unwrap();
        assert!(k.integrable && !k.abelian);
        assert!(k.eigenspaces_commute());
        let all: Vec<usize> = (0..=6).collect();
        let report = k.report(&all);
        for stage in &report.stages {
            assert!(stage.pure && stage.full, "stage {} failed", stage.l);
        }
        let lemmas = k.structural_lemmas();
        assert!(lemmas.commuting_pure_full.hypothesis);

        let torus = LieAlgebra::abelian(4);
        let k = DComplexStructure::from_signs(&torus, "(+-+-)").unwrap();
        let stage = k.report(&[2]).stages.remove(0);
        assert_eq!((stage.h_plus, stage.h_minus, stage.betti), (2, 4, 6));
        assert!(stage.pure && stage.full);
        k.structural_lemmas();
    }

    // Every integrable splitting of a 4-dimensional nilpotent algebra is
    // Abelian and decomposes stage 2.
    #[test]
    fn random_integrable_splittings_decompose() {
        for src in ["(0,0,0,0)", "(0,0,0,12)", "(0,0,12,0)"] {
            let g = algebra(src);
            for k in sample_integrable_splittings(&g, 7, 40) {
                assert!(k.abelian, "integrable forces Abelian here");
                let stage = k.report(&[2]).stages.remove(0);
                assert!(stage.pure && stage.full, "stage 2 of {src} failed");
            }
        }
    }
}
