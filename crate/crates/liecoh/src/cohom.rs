//! Cohomology of the invariant complex: de Rham with canonical
//! representatives, the bigraded Dolbeault / Bott-Chern / Aeppli family with
//! the six auxiliary subquotients A-F, degeneration and inequality reports,
//! and Massey triple products with their indeterminacy.
//!
//! Every cohomology group is realized as a Subquotient: numerator and
//! denominator subspaces plus a canonical complement obtained by reducing
//! the numerator against the denominator's pivots. Class representatives
//! are therefore unique vectors, and "is this class zero" is membership in
//! the denominator.

use crate::complex::ComplexStructure;
use crate::exterior::{binomial, Form};
use crate::lie::LieAlgebra;
use crate::linalg::{image_subspace, kernel_subspace, Matrix, Subspace};
use crate::scalar::Scalar;
use serde::Serialize;

/// A subquotient num/den with a canonical transversal realization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient {
    pub ambient: usize,
    pub num: Subspace,
    pub den: Subspace,
    /// Canonical complement of den in num: the reduction of num against
    /// den's pivot rows. reps + den = num, reps being an actual subspace of
    /// the ambient, not an abstract quotient.
    pub reps: Subspace,
}

impl Subquotient {
    pub fn new(num: Subspace, den: Subspace) -> Self {
        assert_eq!(num.ambient, den.ambient);
        assert!(num.contains(&den), "denominator not contained in numerator");
        let reduced: Vec<Vec<Scalar>> = num
            .basis_vectors()
            .into_iter()
            .map(|v| den.reduce(&v))
            .collect();
        let reps = Subspace::from_vectors(&reduced, num.ambient);
        assert_eq!(reps.dim() + den.dim(), num.dim());
        Subquotient {
            ambient: num.ambient,
            num,
            den,
            reps,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    /// Canonical coset representative; the zero vector exactly for the zero
    /// class.
    pub fn class_rep(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert!(self.num.contains_vec(v), "vector is not in the numerator");
        self.den.reduce(v)
    }

    pub fn is_zero_class(&self, v: &[Scalar]) -> bool {
        self.class_rep(v).iter().all(|c| c.is_zero())
    }

    pub fn reps_vectors(&self) -> Vec<Vec<Scalar>> {
        self.reps.basis_vectors()
    }
}

/// De Rham cohomology in degree k, realized inside the cocycles.
pub fn de_rham(g: &LieAlgebra, k: usize) -> Subquotient {
    let d = g.differential();
    let z = kernel_subspace(d.block(k));
    let b = if k == 0 {
        Subspace::zero(1)
    } else {
        image_subspace(d.block(k - 1))
    };
    Subquotient::new(z, b)
}

pub fn betti_table(g: &LieAlgebra) -> Vec<usize> {
    let by_rank = g.betti();
    let by_realization: Vec<usize> = (0..=g.dim).map(|k| de_rham(g, k).dim()).collect();
    assert_eq!(by_rank, by_realization);
    by_rank
}

/// The six auxiliary bigraded subquotients sitting between Bott-Chern,
/// Dolbeault, and Aeppli.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Aux {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Aux {
    pub const ALL: [Aux; 6] = [Aux::A, Aux::B, Aux::C, Aux::D, Aux::E, Aux::F];

    pub fn letter(&self) -> char {
        match self {
            Aux::A => 'A',
            Aux::B => 'B',
            Aux::C => 'C',
            Aux::D => 'D',
            Aux::E => 'E',
            Aux::F => 'F',
        }
    }
}

/// Bigraded cohomology of an integrable complex structure. All groups are
/// computed in the (p,q)-slice coordinates of the phi-monomial basis.
pub struct ComplexCohomology {
    pub cs: ComplexStructure,
}

impl ComplexCohomology {
    pub fn new(cs: ComplexStructure) -> Result<Self, String> {
        if !cs.is_integrable() {
            return Err(
                "Dolbeault-type cohomologies are only defined for integrable structures"
                    .to_string(),
            );
        }
        Ok(ComplexCohomology { cs })
    }

    pub fn n(&self) -> usize {
        self.cs.n
    }

    /// del as a matrix (p,q) -> (p+1,q) in slice coordinates.
    pub fn del_from(&self, p: usize, q: usize) -> Matrix {
        self.cs.block_between(self.cs.del(), (p, q), (1, 0))
    }

    /// delbar as a matrix (p,q) -> (p,q+1) in slice coordinates.
    pub fn delbar_from(&self, p: usize, q: usize) -> Matrix {
        self.cs.block_between(self.cs.delbar(), (p, q), (0, 1))
    }

    /// del delbar as a matrix (p,q) -> (p+1,q+1).
    pub fn deldelbar_from(&self, p: usize, q: usize) -> Matrix {
        self.del_from(p, q + 1).mul(&self.delbar_from(p, q))
    }

    fn slice_zero(&self, p: usize, q: usize) -> Subspace {
        Subspace::zero(self.cs.slice_dim(p, q))
    }

    pub fn ker_del(&self, p: usize, q: usize) -> Subspace {
        kernel_subspace(&self.del_from(p, q))
    }

    pub fn ker_delbar(&self, p: usize, q: usize) -> Subspace {
        kernel_subspace(&self.delbar_from(p, q))
    }

    pub fn ker_deldelbar(&self, p: usize, q: usize) -> Subspace {
        kernel_subspace(&self.deldelbar_from(p, q))
    }

    pub fn im_del(&self, p: usize, q: usize) -> Subspace {
        match p.checked_sub(1) {
            Some(pm) => image_subspace(&self.del_from(pm, q)),
            None => self.slice_zero(p, q),
        }
    }

    pub fn im_delbar(&self, p: usize, q: usize) -> Subspace {
        match q.checked_sub(1) {
            Some(qm) => image_subspace(&self.delbar_from(p, qm)),
            None => self.slice_zero(p, q),
        }
    }

    pub fn im_deldelbar(&self, p: usize, q: usize) -> Subspace {
        match (p.checked_sub(1), q.checked_sub(1)) {
            (Some(pm), Some(qm)) => image_subspace(&self.deldelbar_from(pm, qm)),
            _ => self.slice_zero(p, q),
        }
    }

    /// Image of the full differential meeting the (p,q) slice, in slice
    /// coordinates.
    pub fn im_d_slice(&self, p: usize, q: usize) -> Subspace {
        let k = p + q;
        if k == 0 {
            return self.slice_zero(p, q);
        }
        let full = image_subspace(self.cs.d().block(k - 1));
        self.cs.restrict_to_slice(&full, p, q)
    }

    pub fn dolbeault(&self, p: usize, q: usize) -> Subquotient {
        Subquotient::new(self.ker_delbar(p, q), self.im_delbar(p, q))
    }

    pub fn conj_dolbeault(&self, p: usize, q: usize) -> Subquotient {
        Subquotient::new(self.ker_del(p, q), self.im_del(p, q))
    }

    pub fn bott_chern(&self, p: usize, q: usize) -> Subquotient {
        let num = self.ker_del(p, q).intersect(&self.ker_delbar(p, q));
        Subquotient::new(num, self.im_deldelbar(p, q))
    }

    pub fn aeppli(&self, p: usize, q: usize) -> Subquotient {
        let den = self.im_del(p, q).sum(&self.im_delbar(p, q));
        Subquotient::new(self.ker_deldelbar(p, q), den)
    }

    pub fn aux(&self, which: Aux, p: usize, q: usize) -> Subquotient {
        let kdb = || self.ker_delbar(p, q);
        let kd = || self.ker_del(p, q);
        let idb = || self.im_delbar(p, q);
        let id = || self.im_del(p, q);
        let iddb = || self.im_deldelbar(p, q);
        let kddb = || self.ker_deldelbar(p, q);
        match which {
            Aux::A => Subquotient::new(idb().intersect(&id()), iddb()),
            Aux::B => Subquotient::new(kdb().intersect(&id()), iddb()),
            Aux::C => Subquotient::new(kddb(), kdb().sum(&id())),
            Aux::D => Subquotient::new(idb().intersect(&kd()), iddb()),
            Aux::E => Subquotient::new(kddb(), kd().sum(&idb())),
            Aux::F => Subquotient::new(kddb(), kdb().sum(&kd())),
        }
    }

    fn table_of(&self, f: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
        let n = self.n();
        (0..=n).map(|p| (0..=n).map(|q| f(p, q)).collect()).collect()
    }

    pub fn hodge_table(&self) -> Vec<Vec<usize>> {
        self.table_of(|p, q| self.dolbeault(p, q).dim())
    }

    pub fn conj_hodge_table(&self) -> Vec<Vec<usize>> {
        self.table_of(|p, q| self.conj_dolbeault(p, q).dim())
    }

    pub fn bott_chern_table(&self) -> Vec<Vec<usize>> {
        self.table_of(|p, q| self.bott_chern(p, q).dim())
    }

    pub fn aeppli_table(&self) -> Vec<Vec<usize>> {
        self.table_of(|p, q| self.aeppli(p, q).dim())
    }

    pub fn aux_table(&self, which: Aux) -> Vec<Vec<usize>> {
        self.table_of(|p, q| self.aux(which, p, q).dim())
    }

    /// Betti numbers, computed on the real algebra and cross-checked against
    /// the complexified complex.
    pub fn betti(&self) -> Vec<usize> {
        let real = self.cs.real.betti();
        let cplx = self.cs.cplx.betti();
        assert_eq!(real, cplx, "complexification changed Betti numbers");
        real
    }

    /// De Rham class realization on the complexified complex (phi-monomial
    /// coordinates), for comparisons with the bigraded groups.
    pub fn de_rham_cplx(&self, k: usize) -> Subquotient {
        de_rham(&self.cs.cplx, k)
    }
}

fn slack(lhs: usize, rhs: usize, what: &str) -> usize {
    assert!(lhs >= rhs, "{what}: {lhs} < {rhs}");
    lhs - rhs
}

#[derive(Clone, Debug, Serialize)]
pub struct FrolicherDegreeRow {
    pub k: usize,
    /// Sum of Hodge numbers on the antidiagonal p+q=k.
    pub hodge_sum: usize,
    pub betti: usize,
    pub hodge_slack: usize,
    pub bc_aeppli_sum: usize,
    pub double_betti: usize,
    pub bc_aeppli_slack: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrolicherBidegreeRow {
    pub p: usize,
    pub q: usize,
    pub bott_chern: usize,
    pub aeppli: usize,
    pub dolbeault: usize,
    pub conj_dolbeault: usize,
    pub slack: usize,
}

/// Both inequalities of Froelicher type: per degree, Hodge sums against
/// Betti numbers and Bott-Chern plus Aeppli against twice the Betti number;
/// per bidegree, the four-term comparison. All slacks are nonnegative by
/// construction; a violation is a bug and panics.
#[derive(Clone, Debug, Serialize)]
pub struct FrolicherReport {
    pub degree_rows: Vec<FrolicherDegreeRow>,
    pub bidegree_rows: Vec<FrolicherBidegreeRow>,
}

impl FrolicherReport {
    pub fn compute(cc: &ComplexCohomology) -> Self {
        let n = cc.n();
        let betti = cc.betti();
        let hodge = cc.hodge_table();
        let conj_hodge = cc.conj_hodge_table();
        let bc = cc.bott_chern_table();
        let ae = cc.aeppli_table();
        let anti = |t: &Vec<Vec<usize>>, k: usize| -> usize {
            (0..=n)
                .filter(|&p| k >= p && k - p <= n)
                .map(|p| t[p][k - p])
                .sum()
        };
        let degree_rows = (0..=2 * n)
            .map(|k| {
                let hs = anti(&hodge, k);
                let bas = anti(&bc, k) + anti(&ae, k);
                FrolicherDegreeRow {
                    k,
                    hodge_sum: hs,
                    betti: betti[k],
                    hodge_slack: slack(hs, betti[k], "Hodge sum below Betti"),
                    bc_aeppli_sum: bas,
                    double_betti: 2 * betti[k],
                    bc_aeppli_slack: slack(bas, 2 * betti[k], "BC+Aeppli below 2 Betti"),
                }
            })
            .collect();
        let mut bidegree_rows = Vec::new();
        for p in 0..=n {
            for q in 0..=n {
                let lhs = bc[p][q] + ae[p][q];
                let rhs = hodge[p][q] + conj_hodge[p][q];
                bidegree_rows.push(FrolicherBidegreeRow {
                    p,
                    q,
                    bott_chern: bc[p][q],
                    aeppli: ae[p][q],
                    dolbeault: hodge[p][q],
                    conj_dolbeault: conj_hodge[p][q],
                    slack: slack(lhs, rhs, "BC+Aeppli below Dolbeault pair"),
                });
            }
        }
        FrolicherReport {
            degree_rows,
            bidegree_rows,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DelDelbarDegreeRow {
    pub k: usize,
    pub bc_aeppli_sum: usize,
    pub double_betti: usize,
}

/// The del-delbar property, decided two independent ways that must agree:
/// numerically (Bott-Chern plus Aeppli equals twice Betti in every degree)
/// and space by space (pure-bidegree d-exact forms with both partials zero
/// are del-delbar-exact).
#[derive(Clone, Debug, Serialize)]
pub struct DelDelbarReport {
    pub holds: bool,
    pub degree_rows: Vec<DelDelbarDegreeRow>,
    pub degree_failures: Vec<usize>,
    pub bidegree_failures: Vec<(usize, usize)>,
    /// Froelicher spectral sequence degenerates at the first page.
    pub e1_degenerates: bool,
}

impl DelDelbarReport {
    pub fn compute(cc: &ComplexCohomology) -> Self {
        let n = cc.n();
        let betti = cc.betti();
        let bc = cc.bott_chern_table();
        let ae = cc.aeppli_table();
        let hodge = cc.hodge_table();
        let anti = |t: &Vec<Vec<usize>>, k: usize| -> usize {
            (0..=n)
                .filter(|&p| k >= p && k - p <= n)
                .map(|p| t[p][k - p])
                .sum()
        };
        let mut degree_rows = Vec::new();
        let mut degree_failures = Vec::new();
        for k in 0..=2 * n {
            let sum = anti(&bc, k) + anti(&ae, k);
            degree_rows.push(DelDelbarDegreeRow {
                k,
                bc_aeppli_sum: sum,
                double_betti: 2 * betti[k],
            });
            if sum != 2 * betti[k] {
                degree_failures.push(k);
            }
        }
        let mut bidegree_failures = Vec::new();
        for p in 0..=n {
            for q in 0..=n {
                let closed = cc.ker_del(p, q).intersect(&cc.ker_delbar(p, q));
                let lhs = closed.intersect(&cc.im_d_slice(p, q));
                let rhs = cc.im_deldelbar(p, q);
                assert!(lhs.contains(&rhs), "del delbar image escaped its hull");
                if lhs != rhs {
                    bidegree_failures.push((p, q));
                }
            }
        }
        assert_eq!(
            degree_failures.is_empty(),
            bidegree_failures.is_empty(),
            "numeric and space-level del-delbar tests disagree"
        );
        let e1_degenerates = (0..=2 * n).all(|k| anti(&hodge, k) == betti[k]);
        let holds = degree_failures.is_empty();
        if holds {
            assert!(e1_degenerates, "del-delbar must force E1 degeneration");
        }
        DelDelbarReport {
            holds,
            degree_rows,
            degree_failures,
            bidegree_failures,
            e1_degenerates,
        }
    }
}

/// Dimension tables of the six auxiliary groups, with their exactness and
/// symmetry relations checked at construction. The duality relation between
/// A and F uses the pairing into the top degree and is asserted only for
/// unimodular algebras.
#[derive(Clone, Debug, Serialize)]
pub struct AuxReport {
    pub a: Vec<Vec<usize>>,
    pub b: Vec<Vec<usize>>,
    pub c: Vec<Vec<usize>>,
    pub d: Vec<Vec<usize>>,
    pub e: Vec<Vec<usize>>,
    pub f: Vec<Vec<usize>>,
    pub duality_checked: bool,
}

impl AuxReport {
    pub fn compute(cc: &ComplexCohomology) -> Self {
        let n = cc.n();
        let a = cc.aux_table(Aux::A);
        let b = cc.aux_table(Aux::B);
        let c = cc.aux_table(Aux::C);
        let d = cc.aux_table(Aux::D);
        let e = cc.aux_table(Aux::E);
        let f = cc.aux_table(Aux::F);
        let hodge = cc.hodge_table();
        let bc = cc.bott_chern_table();
        let ae = cc.aeppli_table();
        let at = |t: &Vec<Vec<usize>>, p: i64, q: i64| -> i64 {
            if p < 0 || q < 0 || p as usize > n || q as usize > n {
                0
            } else {
                t[p as usize][q as usize] as i64
            }
        };
        for p in 0..=n as i64 {
            for q in 0..=n as i64 {
                // The two five-term exact sequences.
                assert_eq!(
                    at(&a, p, q) - at(&b, p, q) + at(&hodge, p, q) - at(&ae, p, q)
                        + at(&c, p, q),
                    0,
                    "first auxiliary sequence not exact at ({p},{q})"
                );
                assert_eq!(
                    at(&d, p, q) - at(&bc, p, q) + at(&hodge, p, q) - at(&e, p, q)
                        + at(&f, p, q),
                    0,
                    "second auxiliary sequence not exact at ({p},{q})"
                );
                // Conjugation swaps the bidegree.
                assert_eq!(at(&a, p, q), at(&a, q, p));
                assert_eq!(at(&f, p, q), at(&f, q, p));
                assert_eq!(at(&d, p, q), at(&b, q, p));
                assert_eq!(at(&e, p, q), at(&c, q, p));
                // One partial shifts C to D and E to B.
                assert_eq!(at(&c, p, q), at(&d, p, q + 1));
                assert_eq!(at(&e, p, q), at(&b, p + 1, q));
            }
        }
        let duality_checked = cc.cs.real.is_unimodular();
        if duality_checked {
            for p in 0..=n as i64 {
                for q in 0..=n as i64 {
                    assert_eq!(
                        at(&a, p, q),
                        at(&f, n as i64 - q, n as i64 - p),
                        "A/F duality failed at ({p},{q})"
                    );
                }
            }
        }
        AuxReport {
            a,
            b,
            c,
            d,
            e,
            f,
            duality_checked,
        }
    }

    pub fn table(&self, which: Aux) -> &Vec<Vec<usize>> {
        match which {
            Aux::A => &self.a,
            Aux::B => &self.b,
            Aux::C => &self.c,
            Aux::D => &self.d,
            Aux::E => &self.e,
            Aux::F => &self.f,
        }
    }
}

/// A Massey triple product of de Rham classes. The primitives solve
/// d x = (-1)^|a| a b and d y = (-1)^|b| b c with free coordinates pinned to
/// zero, so reruns are reproducible; the value is
/// (-1)^|a| a y + (-1)^|x| x c, well defined modulo the two-sided
/// indeterminacy, which is carried as a subspace of the cocycles.
#[derive(Clone, Debug)]
pub struct MasseyTriple {
    pub degrees: (usize, usize, usize),
    pub defined: bool,
    /// Which product obstructed definedness, when one did.
    pub obstruction: Option<String>,
    pub x: Option<Form>,
    pub y: Option<Form>,
    pub value: Option<Form>,
    /// Canonical representative of the value modulo indeterminacy and
    /// boundaries; zero exactly when the product vanishes.
    pub reduced_value: Option<Form>,
    pub indeterminacy_dim: usize,
    pub nonzero: bool,
}

pub fn massey_triple(
    g: &LieAlgebra,
    a: &Form,
    b: &Form,
    c: &Form,
) -> Result<MasseyTriple, String> {
    let n = g.dim;
    let d = g.differential();
    let deg_of = |f: &Form, name: &str| -> Result<usize, String> {
        let degs = f.degrees();
        if degs.len() != 1 {
            return Err(format!("{name} is not homogeneous"));
        }
        Ok(degs[0])
    };
    let da = deg_of(a, "first factor")?;
    let db = deg_of(b, "second factor")?;
    let dc = deg_of(c, "third factor")?;
    for (f, name) in [(a, "first"), (b, "second"), (c, "third")] {
        if !d.apply(f).is_zero() {
            return Err(format!("{name} factor is not closed"));
        }
    }
    let m = da + db + dc - 1;
    if m > n {
        return Err("total degree exceeds the algebra dimension".to_string());
    }
    let sign = |k: usize| {
        if k % 2 == 0 {
            Scalar::one()
        } else {
            Scalar::from_int(-1)
        }
    };

    let mut out = MasseyTriple {
        degrees: (da, db, dc),
        defined: false,
        obstruction: None,
        x: None,
        y: None,
        value: None,
        reduced_value: None,
        indeterminacy_dim: 0,
        nonzero: false,
    };

    let ab = a.wedge(b).scale(&sign(da));
    let x = match d
        .block(da + db - 1)
        .solve(&ab.to_vec(n, da + db))
        .map(|v| Form::from_vec(&v, n, da + db - 1))
    {
        Some(x) => x,
        None => {
            out.obstruction = Some("the product of the first two classes is not zero".into());
            return Ok(out);
        }
    };
    let bc = b.wedge(c).scale(&sign(db));
    let y = match d
        .block(db + dc - 1)
        .solve(&bc.to_vec(n, db + dc))
        .map(|v| Form::from_vec(&v, n, db + dc - 1))
    {
        Some(y) => y,
        None => {
            out.obstruction = Some("the product of the last two classes is not zero".into());
            return Ok(out);
        }
    };
    let dx = da + db - 1;
    let value = a.wedge(&y).scale(&sign(da)).add(&x.wedge(c).scale(&sign(dx)));
    assert!(d.apply(&value).is_zero(), "Massey value is not closed");

    // Indeterminacy inside the cocycles: a Z + Z c + boundaries.
    let mut gens: Vec<Vec<Scalar>> = Vec::new();
    let z_right = kernel_subspace(d.block(db + dc - 1));
    for v in z_right.basis_vectors() {
        let z = Form::from_vec(&v, n, db + dc - 1);
        gens.push(a.wedge(&z).to_vec(n, m));
    }
    let z_left = kernel_subspace(d.block(da + db - 1));
    for v in z_left.basis_vectors() {
        let w = Form::from_vec(&v, n, da + db - 1);
        gens.push(w.wedge(c).to_vec(n, m));
    }
    let dim_m = binomial(n, m);
    let mut ind = Subspace::from_vectors(&gens, dim_m);
    if m >= 1 {
        ind = ind.sum(&image_subspace(d.block(m - 1)));
    }
    let value_vec = value.to_vec(n, m);
    let reduced = ind.reduce(&value_vec);
    out.defined = true;
    out.x = Some(x);
    out.y = Some(y);
    out.nonzero = reduced.iter().any(|s| !s.is_zero());
    out.value = Some(value);
    out.reduced_value = Some(Form::from_vec(&reduced, n, m));
    out.indeterminacy_dim = ind.dim();
    Ok(out)
}

/// All triple products of degree-one de Rham basis classes. The classes run
/// over the canonical realization of H^1; entries are (i,j,k) indices into
/// that basis plus the product.
pub fn massey_deg1_scan(g: &LieAlgebra) -> Vec<(usize, usize, usize, MasseyTriple)> {
    let h1 = de_rham(g, 1);
    let basis: Vec<Form> = h1
        .reps_vectors()
        .into_iter()
        .map(|v| Form::from_vec(&v, g.dim, 1))
        .collect();
    let mut out = Vec::new();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            for (k, c) in basis.iter().enumerate() {
                let t = massey_triple(g, a, b, c).expect("basis classes are closed");
                out.push((i, j, k, t));
            }
        }
    }
    out
}
