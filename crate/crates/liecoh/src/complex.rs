//! Almost-complex linear structures on even-dimensional Lie algebras and the
//! bigraded model they induce on the complexified Chevalley-Eilenberg
//! complex.
//!
//! The complexified degree-one slice is spanned by a complex coframe
//! phi^1..phi^n together with its conjugates. Internally the doubled symbol
//! set 1..2n stands for phi^1..phi^n, phibar^1..phibar^n, so a monomial's
//! bigrade (p,q) is just a count of low and high symbols. The differential
//! splits into four components with bigrade shifts (2,-1), (1,0), (0,1),
//! (-1,2); the middle two are del and delbar, and integrability is the
//! vanishing of the outer two, equivalently of the Nijenhuis tensor. All
//! three criteria are computed and cross-checked every time.
//!
//! Structures arrive three ways: a J matrix on the real coframe, an explicit
//! list of (1,0)-coframe rows, or a coframe presentation "complex n" with
//! d phi^j lines (conjugate equations are derived, never written). A coframe
//! presentation realifies via phi^j = e^(2j-1) + i e^(2j).

use crate::exterior::{binomial, induced_on_degree, monomials, Form, GradedMap, Monomial};
use crate::lie::{LieAlgebra, ParseError};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{parse_scalar, Scalar};
use std::collections::BTreeMap;

fn syntax<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Syntax(msg.into()))
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Substitution images realizing conjugation on the doubled symbols:
/// phi^a <-> phibar^a.
pub fn conj_swap_images(n: usize) -> Vec<Form> {
    let mut images = Vec::with_capacity(2 * n);
    for a in 1..=n {
        images.push(Form::basis(&[(n + a) as u8]));
    }
    for a in 1..=n {
        images.push(Form::basis(&[a as u8]));
    }
    images
}

/// Conjugate of a form on the doubled symbols: coefficients conjugated,
/// phi and phibar swapped (signs handled by the wedge reordering).
pub fn conj_phi_form(f: &Form, n: usize) -> Form {
    f.conj().substitute(&conj_swap_images(n))
}

pub fn bigrade(m: &Monomial, n: usize) -> (usize, usize) {
    let p = m.0.iter().filter(|&&i| (i as usize) <= n).count();
    (p, m.0.len() - p)
}

/// Display form "f1f2F3" for a doubled-symbol monomial.
pub fn phi_word(m: &Monomial, n: usize) -> String {
    if m.0.is_empty() {
        return "1".to_string();
    }
    let mut out = String::new();
    for &i in &m.0 {
        if (i as usize) <= n {
            out.push('f');
            out.push_str(&i.to_string());
        } else {
            out.push('F');
            out.push_str(&(i as usize - n).to_string());
        }
    }
    out
}

/// Structure equations for a complex coframe: d phi^j for j = 1..n, written
/// on the doubled symbols. Conjugate equations are implied.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoframePresentation {
    pub n: usize,
    pub d_phi: Vec<Form>,
}

impl CoframePresentation {
    pub fn new(n: usize, d_phi: Vec<Form>) -> Self {
        assert_eq!(d_phi.len(), n);
        for f in &d_phi {
            assert!(f.is_homogeneous(2));
            for (m, _) in f.terms() {
                assert!(m.is_valid(2 * n));
            }
        }
        CoframePresentation { n, d_phi }
    }

    /// The complexified CE complex on 2n symbols; conjugate lines derived.
    pub fn complexified(&self) -> LieAlgebra {
        let mut d_one = self.d_phi.clone();
        for a in 0..self.n {
            d_one.push(conj_phi_form(&self.d_phi[a], self.n));
        }
        LieAlgebra::new(2 * self.n, d_one)
    }

    /// Real structure equations under phi^j = e^(2j-1) + i e^(2j), plus the
    /// coframe rows in the new real coordinates.
    pub fn realify(&self) -> (LieAlgebra, Vec<Vec<Scalar>>) {
        let n = self.n;
        let mut images = vec![Form::zero(); 2 * n];
        for a in 1..=n {
            let re = Form::basis(&[(2 * a - 1) as u8]);
            let im = Form::basis(&[(2 * a) as u8]).scale(&Scalar::i());
            images[a - 1] = re.add(&im);
            images[n + a - 1] = re.sub(&im);
        }
        let half = Scalar::from_ratio(1, 2);
        let minus_half_i = Scalar::new(crate::scalar::rat(0, 1), crate::scalar::rat(-1, 2));
        let mut d_one = vec![Form::zero(); 2 * n];
        for a in 1..=n {
            let f = self.d_phi[a - 1].substitute(&images);
            let fc = f.conj();
            let re = f.add(&fc).scale(&half);
            let im = f.sub(&fc).scale(&minus_half_i);
            for (_, c) in re.terms() {
                assert!(c.is_real(), "realification produced a complex coefficient");
            }
            for (_, c) in im.terms() {
                assert!(c.is_real(), "realification produced a complex coefficient");
            }
            d_one[2 * a - 2] = re;
            d_one[2 * a - 1] = im;
        }
        let mut phi_rows = Vec::with_capacity(n);
        for a in 1..=n {
            let mut row = vec![Scalar::zero(); 2 * n];
            row[2 * a - 2] = Scalar::one();
            row[2 * a - 1] = Scalar::i();
            phi_rows.push(row);
        }
        (LieAlgebra::new(2 * n, d_one), phi_rows)
    }

    /// Parses the "complex n" header plus d phi^j lines. Only lowercase
    /// lines are accepted; conjugates are always derived.
    pub fn parse(src: &str, params: &BTreeMap<String, Scalar>) -> Result<Self, ParseError> {
        let mut lines = src
            .lines()
            .map(|l| l.chars().filter(|c| !c.is_whitespace()).collect::<String>())
            .filter(|l| !l.is_empty());
        let header = match lines.next() {
            Some(h) => h,
            None => return syntax("empty coframe presentation"),
        };
        let n: usize = match header.strip_prefix("complex") {
            Some(rest) => rest
                .parse()
                .map_err(|_| ParseError::Syntax(format!("bad header '{header}'")))?,
            None => return syntax(format!("expected 'complex n' header, got '{header}'")),
        };
        if n == 0 || n > 30 {
            return syntax("complex dimension out of range");
        }
        let mut d_phi: Vec<Option<Form>> = vec![None; n];
        for line in lines {
            let rest = match line.strip_prefix('d') {
                Some(r) => r,
                None => return syntax(format!("expected 'd f<j> = ...', got '{line}'")),
            };
            if rest.starts_with('F') {
                return syntax("conjugate structure equations are derived, not written");
            }
            let rest = match rest.strip_prefix('f') {
                Some(r) => r,
                None => return syntax(format!("expected 'd f<j> = ...', got '{line}'")),
            };
            let eq = rest
                .find('=')
                .ok_or_else(|| ParseError::Syntax(format!("missing '=' in '{line}'")))?;
            let j: usize = rest[..eq]
                .parse()
                .map_err(|_| ParseError::Syntax(format!("bad coframe index in '{line}'")))?;
            if j == 0 || j > n {
                return syntax(format!("coframe index {j} out of range 1..{n}"));
            }
            if d_phi[j - 1].is_some() {
                return syntax(format!("duplicate equation for f{j}"));
            }
            let rhs = &rest[eq + 1..];
            let form = if rhs == "0" {
                Form::zero()
            } else {
                parse_coframe_sum(rhs, n, params)?
            };
            d_phi[j - 1] = Some(form);
        }
        let mut out = Vec::with_capacity(n);
        for (j, f) in d_phi.into_iter().enumerate() {
            match f {
                Some(f) => out.push(f),
                None => return syntax(format!("missing equation for f{}", j + 1)),
            }
        }
        Ok(CoframePresentation::new(n, out))
    }
}

/// One unit "f3" or "F2" as a doubled symbol; advances the cursor.
fn parse_unit(s: &str, n: usize) -> Result<(u8, usize), ParseError> {
    let mut chars = s.chars();
    let kind = match chars.next() {
        Some('f') => 0usize,
        Some('F') => n,
        _ => return syntax(format!("expected coframe unit at '{s}'")),
    };
    let digits: String = s[1..].chars().take_while(|c| c.is_ascii_digit()).collect();
    if digits.is_empty() {
        return syntax(format!("expected index after unit letter in '{s}'"));
    }
    let idx: usize = digits.parse().map_err(|e| ParseError::Syntax(format!("{e}")))?;
    if idx == 0 || idx > n {
        return syntax(format!("coframe index {idx} out of range 1..{n}"));
    }
    Ok(((kind + idx) as u8, 1 + digits.len()))
}

/// A pair of units as a signed monomial; advances the cursor.
fn parse_cpair(s: &str, n: usize) -> Result<(Scalar, Monomial, usize), ParseError> {
    let (a, used_a) = parse_unit(s, n)?;
    let (b, used_b) = parse_unit(&s[used_a..], n)?;
    if a == b {
        return syntax(format!("repeated unit in pair at '{s}'"));
    }
    let (sign, m) = if a < b {
        (Scalar::one(), Monomial(vec![a, b]))
    } else {
        (Scalar::from_int(-1), Monomial(vec![b, a]))
    };
    Ok((sign, m, used_a + used_b))
}

fn parse_coframe_sum(
    rhs: &str,
    n: usize,
    params: &BTreeMap<String, Scalar>,
) -> Result<Form, ParseError> {
    let mut form = Form::zero();
    let mut rest = rhs;
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = Scalar::one();
        if let Some(r) = rest.strip_prefix('-') {
            sign = Scalar::from_int(-1);
            rest = r;
        } else if !first {
            match rest.strip_prefix('+') {
                Some(r) => rest = r,
                None => return syntax(format!("expected '+' or '-' at '{rest}'")),
            }
        }
        first = false;
        // Bare pair first: if a complete pair sits here and ends the term,
        // take it; otherwise look for "coefficient * pair".
        let bare = parse_cpair(rest, n).ok().filter(|(_, _, used)| {
            matches!(rest[*used..].chars().next(), None | Some('+') | Some('-'))
        });
        let (coeff, mono, used) = if let Some((psign, m, used)) = bare {
            (psign, m, used)
        } else {
            let star = rest
                .find('*')
                .ok_or_else(|| ParseError::Syntax(format!("cannot read term at '{rest}'")))?;
            let cand = &rest[..star];
            let coeff = if let Ok(c) = parse_scalar(cand) {
                c
            } else if is_ident(cand) {
                params
                    .get(cand)
                    .cloned()
                    .ok_or_else(|| ParseError::MissingParam(cand.to_string()))?
            } else {
                return syntax(format!("bad coefficient '{cand}'"));
            };
            let (psign, m, pair_used) = parse_cpair(&rest[star + 1..], n)?;
            (coeff.mul(&psign), m, star + 1 + pair_used)
        };
        form.add_term(mono, coeff.mul(&sign));
        rest = &rest[used..];
    }
    Ok(form)
}

/// The four bigrade components of the complexified differential, in shift
/// order (2,-1), (1,0), (0,1), (-1,2).
const COMPONENT_SHIFTS: [(i64, i64); 4] = [(2, -1), (1, 0), (0, 1), (-1, 2)];

/// An almost-complex structure on a real Lie algebra, with the complexified
/// bigraded complex precomputed in the phi-symbol basis.
#[derive(Clone)]
pub struct ComplexStructure {
    /// Complex dimension n; the real algebra has dimension 2n.
    pub n: usize,
    pub real: LieAlgebra,
    /// J on the real coframe: (J a)_coords = j_coframe . a_coords.
    pub j_coframe: Matrix,
    /// phi^a in real coordinates, a = 1..n.
    pub phi_rows: Vec<Vec<Scalar>>,
    /// CE complex of the complexification, on the doubled symbols.
    pub cplx: LieAlgebra,
    d: GradedMap,
    comp: Vec<GradedMap>,
    conv_e_to_phi: Vec<Matrix>,
    conv_phi_to_e: Vec<Matrix>,
}

impl ComplexStructure {
    /// From explicit (1,0)-coframe rows. Fails when the rows plus their
    /// conjugates do not form a coframe, or when the induced J is not real.
    pub fn from_frame(real: &LieAlgebra, phi_rows: Vec<Vec<Scalar>>) -> Result<Self, String> {
        let dim = real.dim;
        if dim % 2 != 0 {
            return Err("almost-complex structures need even dimension".to_string());
        }
        let n = dim / 2;
        if phi_rows.len() != n {
            return Err(format!("expected {n} coframe rows, got {}", phi_rows.len()));
        }
        let mut t = Matrix::zero(2 * n, 2 * n);
        for (a, row) in phi_rows.iter().enumerate() {
            if row.len() != dim {
                return Err("coframe row has wrong length".to_string());
            }
            for (j, v) in row.iter().enumerate() {
                t[(a, j)] = v.clone();
                t[(n + a, j)] = v.conj();
            }
        }
        let t_inv = t
            .inverse()
            .ok_or_else(|| "coframe rows and conjugates are dependent".to_string())?;
        // J in phi coordinates is diag(i,...,-i,...); transport through the
        // coordinate change on forms (coords transform by T^T).
        let mut diag = Matrix::zero(2 * n, 2 * n);
        for a in 0..n {
            diag[(a, a)] = Scalar::i();
            diag[(n + a, n + a)] = -Scalar::i();
        }
        let tt = t.transpose();
        let tt_inv = t_inv.transpose();
        let j_coframe = tt.mul(&diag).mul(&tt_inv);
        for r in 0..dim {
            for c in 0..dim {
                if !j_coframe[(r, c)].is_real() {
                    return Err("coframe does not induce a real J".to_string());
                }
            }
        }
        debug_assert!(j_coframe.mul(&j_coframe).add(&Matrix::identity(dim)).is_zero());

        // e^j written in phi symbols: column j of (T^T)^-1.
        let mut images_e_to_phi = Vec::with_capacity(dim);
        for j in 0..dim {
            let mut f = Form::zero();
            for a in 0..dim {
                f.add_term(Monomial(vec![(a + 1) as u8]), tt_inv[(a, j)].clone());
            }
            images_e_to_phi.push(f);
        }
        let mut images_phi_to_e = Vec::with_capacity(dim);
        for a in 0..dim {
            let mut f = Form::zero();
            for j in 0..dim {
                f.add_term(Monomial(vec![(j + 1) as u8]), t[(a, j)].clone());
            }
            images_phi_to_e.push(f);
        }

        // d phi_a = sum_j T[a][j] de^j, rewritten in phi symbols.
        let mut d_one = Vec::with_capacity(dim);
        for a in 0..dim {
            let mut de = Form::zero();
            for j in 1..=dim {
                let c = t[(a, j - 1)].clone();
                if !c.is_zero() {
                    de = de.add(&real.d_of_coframe(j).scale(&c));
                }
            }
            d_one.push(de.substitute(&images_e_to_phi));
        }
        for a in 0..n {
            let expect = conj_phi_form(&d_one[a], n);
            assert_eq!(d_one[n + a], expect, "conjugate equations out of sync");
        }
        let cplx = LieAlgebra::new(dim, d_one);
        let d = cplx.differential();

        // Split d into its four bigrade components; anything outside those
        // shifts would violate d's derivation property on a (1,0)/(0,1)
        // coframe, so its absence is asserted.
        let mut comp: Vec<GradedMap> = COMPONENT_SHIFTS
            .iter()
            .map(|_| GradedMap::zero(dim, 1))
            .collect();
        for k in 0..=dim {
            let src = monomials(dim, k);
            if k + 1 > dim {
                continue;
            }
            let tgt = monomials(dim, k + 1);
            let block = d.block(k);
            let mut pieces = vec![Matrix::zero(tgt.len(), src.len()); 4];
            for (col, ms) in src.iter().enumerate() {
                let (p, q) = bigrade(ms, n);
                for (row, mt) in tgt.iter().enumerate() {
                    let v = &block[(row, col)];
                    if v.is_zero() {
                        continue;
                    }
                    let (r, s) = bigrade(mt, n);
                    let shift = (r as i64 - p as i64, s as i64 - q as i64);
                    let idx = COMPONENT_SHIFTS
                        .iter()
                        .position(|&sh| sh == shift)
                        .expect("differential has a component outside the four shifts");
                    pieces[idx][(row, col)] = v.clone();
                }
            }
            for (i, piece) in pieces.into_iter().enumerate() {
                comp[i].set_block(k, piece);
            }
        }

        let conv_e_to_phi: Vec<Matrix> = (0..=dim)
            .map(|k| induced_on_degree(&images_e_to_phi, dim, k))
            .collect();
        let conv_phi_to_e: Vec<Matrix> = (0..=dim)
            .map(|k| induced_on_degree(&images_phi_to_e, dim, k))
            .collect();
        debug_assert_eq!(
            conv_e_to_phi[1].mul(&conv_phi_to_e[1]),
            Matrix::identity(dim)
        );

        Ok(ComplexStructure {
            n,
            real: real.clone(),
            j_coframe,
            phi_rows,
            cplx,
            d,
            comp,
            conv_e_to_phi,
            conv_phi_to_e,
        })
    }

    /// From a J matrix on the coframe; the (1,0)-coframe is the canonical
    /// (RREF) basis of the +i eigenspace.
    pub fn from_j(real: &LieAlgebra, j_coframe: &Matrix) -> Result<Self, String> {
        let dim = real.dim;
        if j_coframe.rows != dim || j_coframe.cols != dim {
            return Err("J matrix has wrong shape".to_string());
        }
        for r in 0..dim {
            for c in 0..dim {
                if !j_coframe[(r, c)].is_real() {
                    return Err("J must be a real matrix".to_string());
                }
            }
        }
        if !j_coframe.mul(j_coframe).add(&Matrix::identity(dim)).is_zero() {
            return Err("J^2 is not -1".to_string());
        }
        // Rows of (I - iJ)^T span the (1,0) forms; J(a - iJa) = i(a - iJa).
        let p = Matrix::identity(dim).sub(&j_coframe.scale(&Scalar::i()));
        let span = Subspace::from_matrix(p.transpose());
        if span.dim() != dim / 2 {
            return Err("the +i eigenspace of J has the wrong dimension".to_string());
        }
        let built = Self::from_frame(real, span.basis_vectors())?;
        // The derived J must reproduce the input.
        if &built.j_coframe != j_coframe {
            return Err("internal inconsistency deriving J from its eigenspace".to_string());
        }
        Ok(built)
    }

    /// From a coframe presentation: realify, then build on the canonical
    /// real basis. The complexified equations must reproduce the
    /// presentation exactly; this revalidates the realification convention
    /// on every use.
    pub fn from_coframe(pres: &CoframePresentation) -> Result<Self, String> {
        let (real, phi_rows) = pres.realify();
        let built = Self::from_frame(&real, phi_rows)?;
        assert_eq!(
            built.cplx, pres.complexified(),
            "realified model disagrees with the presentation"
        );
        Ok(built)
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn d(&self) -> &GradedMap {
        &self.d
    }

    /// Component with bigrade shift (2,-1).
    pub fn mu(&self) -> &GradedMap {
        &self.comp[0]
    }

    pub fn del(&self) -> &GradedMap {
        &self.comp[1]
    }

    pub fn delbar(&self) -> &GradedMap {
        &self.comp[2]
    }

    /// Component with bigrade shift (-1,2).
    pub fn mubar(&self) -> &GradedMap {
        &self.comp[3]
    }

    /// J on vectors (the transpose of the coframe action).
    pub fn j_vectors(&self) -> Matrix {
        self.j_coframe.transpose()
    }

    /// Nijenhuis tensor on a basis pair, 0-based.
    pub fn nijenhuis(&self, i: usize, j: usize) -> Vec<Scalar> {
        let dim = self.dim();
        let jv = self.j_vectors();
        let unit = |k: usize| {
            let mut v = vec![Scalar::zero(); dim];
            v[k] = Scalar::one();
            v
        };
        let jcol = |v: &[Scalar]| jv.mul_vec(v);
        let x = unit(i);
        let y = unit(j);
        let jx = jcol(&x);
        let jy = jcol(&y);
        let mut out = self.real.bracket_vec(&x, &y);
        let t2 = jcol(&self.real.bracket_vec(&jx, &y));
        let t3 = jcol(&self.real.bracket_vec(&x, &jy));
        let t4 = self.real.bracket_vec(&jx, &jy);
        for k in 0..dim {
            out[k] += &t2[k];
            out[k] += &t3[k];
            let sub = t4[k].clone();
            out[k] -= sub;
        }
        out
    }

    pub fn nijenhuis_vanishes(&self) -> bool {
        let dim = self.dim();
        (0..dim).all(|i| {
            (i + 1..dim).all(|j| self.nijenhuis(i, j).iter().all(|v| v.is_zero()))
        })
    }

    /// Integrability, with all three criteria compared: no (2,-1) component,
    /// no (-1,2) component, vanishing Nijenhuis tensor.
    pub fn is_integrable(&self) -> bool {
        let by_mu = self.mu().is_zero();
        let by_mubar = self.mubar().is_zero();
        let by_nij = self.nijenhuis_vanishes();
        assert_eq!(by_mu, by_mubar, "mu and mubar must vanish together");
        assert_eq!(by_mu, by_nij, "component and Nijenhuis criteria disagree");
        by_mu
    }

    /// The seven bigrade identities equivalent to d.d = 0.
    pub fn bidegree_identities_hold(&self) -> bool {
        let (mu, del, delbar, mubar) = (self.mu(), self.del(), self.delbar(), self.mubar());
        let eqs = vec![
            mu.compose(mu),
            mu.compose(del).add(&del.compose(mu)),
            mu.compose(delbar).add(&delbar.compose(mu)).add(&del.compose(del)),
            del.compose(delbar)
                .add(&delbar.compose(del))
                .add(&mu.compose(mubar))
                .add(&mubar.compose(mu)),
            mubar.compose(del).add(&del.compose(mubar)).add(&delbar.compose(delbar)),
            mubar.compose(delbar).add(&delbar.compose(mubar)),
            mubar.compose(mubar),
        ];
        eqs.iter().all(|e| e.is_zero())
    }

    /// Monomials of the (p,q) slice, in ambient lex order.
    pub fn slice_monomials(&self, p: usize, q: usize) -> Vec<Monomial> {
        monomials(self.dim(), p + q)
            .into_iter()
            .filter(|m| bigrade(m, self.n) == (p, q))
            .collect()
    }

    /// Positions of the (p,q) slice inside the full degree-(p+q) basis.
    pub fn slice_positions(&self, p: usize, q: usize) -> Vec<usize> {
        monomials(self.dim(), p + q)
            .iter()
            .enumerate()
            .filter(|(_, m)| bigrade(m, self.n) == (p, q))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn slice_dim(&self, p: usize, q: usize) -> usize {
        if p > self.n || q > self.n {
            0
        } else {
            binomial(self.n, p) * binomial(self.n, q)
        }
    }

    /// Restriction of a graded operator to a map between bigraded slices.
    /// The source slice is (p,q); the target slice is (p+dp, q+dq); entries
    /// of the operator leaving the target slice are ignored.
    pub fn block_between(
        &self,
        op: &GradedMap,
        (p, q): (usize, usize),
        (dp, dq): (i64, i64),
    ) -> Matrix {
        let k = p + q;
        let tp = p as i64 + dp;
        let tq = q as i64 + dq;
        let cols = self.slice_positions(p, q);
        if tp < 0 || tq < 0 || tp as usize > self.n || tq as usize > self.n {
            return Matrix::zero(0, cols.len());
        }
        let (tp, tq) = (tp as usize, tq as usize);
        let rows = self.slice_positions(tp, tq);
        let block = op.block(k);
        let mut out = Matrix::zero(rows.len(), cols.len());
        for (rr, &gr) in rows.iter().enumerate() {
            for (cc, &gc) in cols.iter().enumerate() {
                out[(rr, cc)] = block[(gr, gc)].clone();
            }
        }
        out
    }

    /// A subspace of the full degree-k coordinate space, cut down to the
    /// (p,q) slice coordinates: vectors supported on the slice, re-indexed.
    pub fn restrict_to_slice(&self, sub: &Subspace, p: usize, q: usize) -> Subspace {
        let k = p + q;
        let dim_k = binomial(self.dim(), k);
        assert_eq!(sub.ambient, dim_k);
        let pos = self.slice_positions(p, q);
        let mut axes = Vec::with_capacity(pos.len());
        for &i in &pos {
            let mut v = vec![Scalar::zero(); dim_k];
            v[i] = Scalar::one();
            axes.push(v);
        }
        let meet = sub.intersect(&Subspace::from_vectors(&axes, dim_k));
        let reduced: Vec<Vec<Scalar>> = meet
            .basis_vectors()
            .into_iter()
            .map(|v| pos.iter().map(|&i| v[i].clone()).collect())
            .collect();
        Subspace::from_vectors(&reduced, pos.len())
    }

    /// Slice coordinates embedded back into full degree-k coordinates.
    pub fn embed_from_slice(&self, sub: &Subspace, p: usize, q: usize) -> Subspace {
        let k = p + q;
        let dim_k = binomial(self.dim(), k);
        let pos = self.slice_positions(p, q);
        assert_eq!(sub.ambient, pos.len());
        let rows: Vec<Vec<Scalar>> = sub
            .basis_vectors()
            .into_iter()
            .map(|v| {
                let mut w = vec![Scalar::zero(); dim_k];
                for (j, &i) in pos.iter().enumerate() {
                    w[i] = v[j].clone();
                }
                w
            })
            .collect();
        Subspace::from_vectors(&rows, dim_k)
    }

    /// Change of coordinates on degree-k forms, e-monomials to phi-monomials.
    pub fn e_to_phi(&self, k: usize) -> &Matrix {
        &self.conv_e_to_phi[k]
    }

    pub fn phi_to_e(&self, k: usize) -> &Matrix {
        &self.conv_phi_to_e[k]
    }

    /// The (p,q) slice as a complex subspace in e-monomial coordinates.
    pub fn slice_in_e_coords(&self, p: usize, q: usize) -> Subspace {
        let k = p + q;
        let full = Subspace::full(self.slice_dim(p, q));
        let in_phi = self.embed_from_slice(&full, p, q);
        in_phi.image(self.phi_to_e(k))
    }

    /// A form given in e-coordinates, rewritten on the phi symbols.
    pub fn form_e_to_phi(&self, f: &Form) -> Form {
        let mut out = Form::zero();
        for k in 0..=self.dim() {
            let part = f.homogeneous_part(k);
            if part.is_zero() {
                continue;
            }
            let v = self.e_to_phi(k).mul_vec(&part.to_vec(self.dim(), k));
            out = out.add(&Form::from_vec(&v, self.dim(), k));
        }
        out
    }

    pub fn form_phi_to_e(&self, f: &Form) -> Form {
        let mut out = Form::zero();
        for k in 0..=self.dim() {
            let part = f.homogeneous_part(k);
            if part.is_zero() {
                continue;
            }
            let v = self.phi_to_e(k).mul_vec(&part.to_vec(self.dim(), k));
            out = out.add(&Form::from_vec(&v, self.dim(), k));
        }
        out
    }
}

/// Deformation parameters for the one-parameter-family analysis of the
/// classical 6-dimensional example: d f3 = s12 f1f2 + s11 f1F1 + s12b f1F2
/// + s21b f2F1 + s22b f2F2, with d f1 = d f2 = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationSigma {
    pub s12: Scalar,
    pub s11b: Scalar,
    pub s12b: Scalar,
    pub s21b: Scalar,
    pub s22b: Scalar,
}

impl DeformationSigma {
    pub fn classical() -> Self {
        DeformationSigma {
            s12: Scalar::from_int(-1),
            s11b: Scalar::zero(),
            s12b: Scalar::zero(),
            s21b: Scalar::zero(),
            s22b: Scalar::zero(),
        }
    }

    pub fn presentation(&self) -> CoframePresentation {
        let n = 3;
        let mut d3 = Form::zero();
        // Doubled symbols: f1,f2,f3 = 1,2,3; F1,F2,F3 = 4,5,6.
        d3.add_term(Monomial(vec![1, 2]), self.s12.clone());
        d3.add_term(Monomial(vec![1, 4]), self.s11b.clone());
        d3.add_term(Monomial(vec![1, 5]), self.s12b.clone());
        d3.add_term(Monomial(vec![2, 4]), self.s21b.clone());
        d3.add_term(Monomial(vec![2, 5]), self.s22b.clone());
        CoframePresentation::new(n, vec![Form::zero(), Form::zero(), d3])
    }

    /// Classification into (i)/(ii.a)/(ii.b)/(iii.a)/(iii.b) by the ranks of
    /// the two associated matrices; invariant under common rescaling.
    pub fn class(&self) -> DeformationClass {
        let zero = |s: &Scalar| s.is_zero();
        if zero(&self.s11b) && zero(&self.s12b) && zero(&self.s21b) && zero(&self.s22b) {
            return DeformationClass::I;
        }
        let r = Matrix::from_rows(
            vec![
                vec![-&self.s21b, self.s11b.clone()],
                vec![-&self.s22b, self.s12b.clone()],
            ],
            2,
        )
        .rank();
        let s = Matrix::from_rows(
            vec![
                vec![
                    self.s11b.conj(),
                    self.s22b.conj(),
                    self.s12b.conj(),
                    self.s21b.conj(),
                ],
                vec![
                    self.s11b.clone(),
                    self.s22b.clone(),
                    self.s21b.clone(),
                    self.s12b.clone(),
                ],
            ],
            4,
        )
        .rank();
        match (r, s) {
            (1, 1) => DeformationClass::IIa,
            (1, 2) => DeformationClass::IIb,
            (2, 1) => DeformationClass::IIIa,
            (2, 2) => DeformationClass::IIIb,
            _ => unreachable!("rank pair ({r},{s}) cannot occur"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeformationClass {
    I,
    IIa,
    IIb,
    IIIa,
    IIIb,
}

impl std::fmt::Display for DeformationClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            DeformationClass::I => "i",
            DeformationClass::IIa => "ii.a",
            DeformationClass::IIb => "ii.b",
            DeformationClass::IIIa => "iii.a",
            DeformationClass::IIIb => "iii.b",
        };
        write!(f, "{s}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::parse_salamon;

    fn no_params() -> BTreeMap<String, Scalar> {
        BTreeMap::new()
    }

    #[test]
    fn coframe_parse_and_realify() {
        let src = "complex 3\n d f1 = 0\n d f2 = 0\n d f3 = -1*f1f2\n";
        let pres = CoframePresentation::parse(src, &no_params()).unwrap();
        let (real, _) = pres.realify();
        // phi3 = e5 + i e6, d phi3 = -phi^12 gives de5 = -e13+e24,
        // de6 = -e14-e23.
        let expected = parse_salamon("(0,0,0,0,-13+24,-14-23)", &no_params()).unwrap();
        assert_eq!(real, expected);
        real.validate().unwrap();
    }

    #[test]
    fn coframe_roundtrip_through_frame() {
        let src = "complex 3\ndf1=0\ndf2=0\ndf3=-1*f1f2\n";
        let pres = CoframePresentation::parse(src, &no_params()).unwrap();
        let cs = ComplexStructure::from_coframe(&pres).unwrap();
        assert!(cs.is_integrable());
        assert!(cs.bidegree_identities_hold());
        // J is the canonical pairing on (2j-1, 2j).
        let a = cs.j_coframe.mul_vec(&Form::basis(&[1]).to_vec(6, 1));
        assert_eq!(Form::from_vec(&a, 6, 1), Form::basis(&[2]).scale(&Scalar::from_int(-1)));
    }

    #[test]
    fn nonintegrable_detected() {
        // On (0,0,0,12) the coframe phi1 = e1 + i e4, phi2 = e2 + i e3 gives
        // d phi1 = i e12 a nonzero (0,2)-part, so J is not integrable.
        let g = parse_salamon("(0,0,0,12)", &no_params()).unwrap();
        let i = Scalar::i();
        let one = Scalar::one();
        let zero = Scalar::zero;
        let rows = vec![
            vec![one.clone(), zero(), zero(), i.clone()],
            vec![zero(), one.clone(), i.clone(), zero()],
        ];
        let cs = ComplexStructure::from_frame(&g, rows).unwrap();
        assert!(!cs.is_integrable());
        assert!(cs.bidegree_identities_hold());
        assert!(!cs.mu().is_zero());

        // The same algebra carries an integrable J: phi1 = e1 + i e2,
        // phi2 = e3 + i e4.
        let rows2 = vec![
            vec![one.clone(), i.clone(), zero(), zero()],
            vec![zero(), zero(), one.clone(), i.clone()],
        ];
        let cs2 = ComplexStructure::from_frame(&g, rows2).unwrap();
        assert!(cs2.is_integrable());
    }

    #[test]
    fn from_j_matches_from_frame() {
        let g = parse_salamon("(0,0,0,0,-13+24,-14-23)", &no_params()).unwrap();
        // J e^(2j-1) = -e^(2j), J e^(2j) = e^(2j-1) on the coframe.
        let mut j = Matrix::zero(6, 6);
        for a in 0..3 {
            j[(2 * a + 1, 2 * a)] = Scalar::from_int(-1);
            j[(2 * a, 2 * a + 1)] = Scalar::one();
        }
        let cs = ComplexStructure::from_j(&g, &j).unwrap();
        assert!(cs.is_integrable());
        assert_eq!(cs.slice_dim(1, 1), 9);
        assert_eq!(cs.slice_monomials(2, 1).len(), 9);
        // d phi3 should have a single (2,0) term.
        let d3 = cs.cplx.d_of_coframe(3).clone();
        assert!(d3.is_homogeneous(2));
        let (p, q) = bigrade(d3.terms().next().unwrap().0, 3);
        assert_eq!((p, q), (2, 0));
    }

    #[test]
    fn deformation_classes() {
        use DeformationClass::*;
        let s = |v: [Scalar; 5]| DeformationSigma {
            s12: v[0].clone(),
            s11b: v[1].clone(),
            s12b: v[2].clone(),
            s21b: v[3].clone(),
            s22b: v[4].clone(),
        };
        let m1 = Scalar::from_int(-1);
        let one = Scalar::one();
        let zero = Scalar::zero;
        let i = Scalar::i();
        assert_eq!(s([m1.clone(), zero(), zero(), zero(), zero()]).class(), I);
        assert_eq!(s([m1.clone(), one.clone(), zero(), zero(), zero()]).class(), IIa);
        assert_eq!(s([m1.clone(), one.clone(), i.clone(), zero(), zero()]).class(), IIb);
        assert_eq!(s([m1.clone(), one.clone(), zero(), zero(), one.clone()]).class(), IIIa);
        assert_eq!(s([m1.clone(), one.clone(), zero(), zero(), i.clone()]).class(), IIIb);
        // Common rescaling does not change the class.
        let two = Scalar::from_int(2);
        assert_eq!(
            s([m1.mul(&two), one.mul(&two), zero(), zero(), i.mul(&two)]).class(),
            IIIb
        );
    }

    #[test]
    fn coframe_parser_rejects() {
        for bad in [
            "complex 2\ndf1=0\n",                    // missing f2
            "complex 2\ndf1=0\ndf2=0\ndf1=0\n",      // duplicate
            "complex 2\ndF1=0\ndf2=0\n",             // conjugate line
            "complex 2\ndf1=f1f1\ndf2=0\n",          // repeated unit
            "complex 2\ndf1=f1f3\ndf2=0\n",          // index range
            "complex 2\ndf1=2f1f2\ndf2=0\n",         // missing '*'
            "df1=0\n",                                // missing header
        ] {
            assert!(
                CoframePresentation::parse(bad, &no_params()).is_err(),
                "{bad}"
            );
        }
        // Gaussian coefficients and parameters parse.
        let mut params = no_params();
        params.insert("s".into(), Scalar::i());
        let src = "complex 2\ndf1=0\ndf2=1/2+1/3i*f1F1-s*f1F2\n";
        let pres = CoframePresentation::parse(src, &params).unwrap();
        let d2 = pres.d_phi[1].clone();
        assert_eq!(
            d2.coeff(&Monomial(vec![1, 3])),
            Scalar::new(crate::scalar::rat(1, 2), crate::scalar::rat(1, 3))
        );
        assert_eq!(d2.coeff(&Monomial(vec![1, 4])), -Scalar::i());
    }
}
